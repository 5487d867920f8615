//! Rules, Composition-Diamond reduction and bounded Gröbner-Shirshov checks.

mod ambiguity;
mod reduce;
mod rules;

pub use ambiguity::{
    composition, enumerate_irr, enumerate_irr_lie, find_ambiguities, is_gsb, Ambiguity,
    AmbiguityKind, Failure, Gluing, GsbReport,
};
pub use reduce::{
    is_reducible, lie_form_via_assoc, reduce, reduce_assoc, reduce_assoc_logged, reduce_lie,
    reduce_lie_to_zero, replay_log, LieForm, Mode, ReductionStep, Strategy,
};
pub use rules::{normalize_s_word, Lift, Match, Origin, Rewriter, Rule, RuleSet, RuleTag};
