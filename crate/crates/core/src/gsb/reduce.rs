use num::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::rules::{inverse, RuleTag, Rewriter};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::lyndon::{is_alsw, shirshov_bracket, special_bracket};
use crate::poly::{Coeff, Poly};
use crate::term::{Context, NaWord, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Assoc,
    Lie,
}

/// Which reducible monomial to rewrite next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeadingFirst,
    /// A uniformly random reducible monomial, seeded.
    RandomFirst(u64),
}

/// One elimination `p -= coeff · π|_{D^i(s)}`.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub tag: RuleTag,
    pub context: Context,
    pub coeff: Coeff,
}

/// A normal form in the Lie algebra: a combination of bracketed words,
/// leading term first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieForm {
    pub terms: Vec<(NaWord, Coeff)>,
}

impl LieForm {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Merges repeated brackets and orders terms by their underlying words,
    /// greatest first. A lift whose true leading word lies above its rewrite
    /// pattern can bring an emitted word back later in the loop.
    fn tidy(&mut self) {
        let mut merged: Vec<(Word, NaWord, Coeff)> = Vec::new();
        for (t, c) in self.terms.drain(..) {
            let w = t.underlying();
            match merged.iter_mut().find(|(u, _, _)| *u == w) {
                Some(e) => e.2 += c,
                None => merged.push((w, t, c)),
            }
        }
        merged.retain(|e| !e.2.is_zero());
        merged.sort_by(|a, b| b.0.cmp(&a.0));
        self.terms = merged.into_iter().map(|(_, t, c)| (t, c)).collect();
    }

    pub fn expand(&self, alg: &Algebra) -> Poly {
        let mut out = Poly::zero();
        for (t, c) in &self.terms {
            out.add_scaled(&alg.lie_expand(t), c);
        }
        out
    }
}

/// Associative normal form, eliminating the greatest reducible monomial first.
pub fn reduce_assoc(p: &Poly, rw: &dyn Rewriter) -> Poly {
    reduce_assoc_logged(p, rw, Strategy::LeadingFirst).0
}

/// Associative normal form with the chosen strategy, plus the elimination log.
pub fn reduce_assoc_logged(
    p: &Poly,
    rw: &dyn Rewriter,
    strategy: Strategy,
) -> (Poly, Vec<ReductionStep>) {
    let alg = rw.algebra();
    let mut log = Vec::new();
    match strategy {
        Strategy::LeadingFirst => {
            let mut rest = p.clone();
            let mut done = Poly::zero();
            while let Some((w, c)) = rest.leading().map(|(w, c)| (w.clone(), c.clone())) {
                match rw.find(&w) {
                    Some(m) => {
                        let k = &c * inverse(&m.lc);
                        let sub = alg.substitute_poly(&m.context, &m.lifted);
                        rest.add_scaled(&sub, &-k.clone());
                        log.push(ReductionStep {
                            tag: m.tag,
                            context: m.context,
                            coeff: k,
                        });
                    }
                    None => {
                        rest.remove(&w);
                        done.add_term(w, c);
                    }
                }
            }
            (done, log)
        }
        Strategy::RandomFirst(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut cur = p.clone();
            loop {
                let reducible: Vec<Word> =
                    cur.words().filter(|w| rw.find(w).is_some()).cloned().collect();
                let Some(w) = reducible.choose(&mut rng) else {
                    return (cur, log);
                };
                let m = rw.find(w).expect("checked reducible");
                let k = cur.coeff(w) * inverse(&m.lc);
                let sub = alg.substitute_poly(&m.context, &m.lifted);
                cur.add_scaled(&sub, &-k.clone());
                log.push(ReductionStep {
                    tag: m.tag,
                    context: m.context,
                    coeff: k,
                });
            }
        }
    }
}

/// `Σ coeff · π|_{D^i(s)}` over a log, recomputed from the unlifted rules.
pub fn replay_log(log: &[ReductionStep], rw: &dyn Rewriter) -> Poly {
    let alg = rw.algebra();
    let mut out = Poly::zero();
    for step in log {
        let lifted = alg.apply_d_pow(&rw.rule_poly(&step.tag), step.tag.lift);
        out.add_scaled(&alg.substitute_poly(&step.context, &lifted), &step.coeff);
    }
    out
}

/// Lie normal form: eliminates leading terms with special normal s-words
/// `[π|_{D^i(s)}]`, and emits `c·[w]` whenever the leading word `w` is irreducible.
pub fn reduce_lie(p: &Poly, rw: &dyn Rewriter) -> Result<LieForm> {
    reduce_lie_until(p, rw, false)
}

/// Like [`reduce_lie`] but stops at the first irreducible leading word; the
/// returned form then holds that single term. Used to certify compositions.
pub fn reduce_lie_to_zero(p: &Poly, rw: &dyn Rewriter) -> Result<LieForm> {
    reduce_lie_until(p, rw, true)
}

fn reduce_lie_until(p: &Poly, rw: &dyn Rewriter, stop_early: bool) -> Result<LieForm> {
    let alg = rw.algebra();
    let mut rest = p.clone();
    let mut out = LieForm::default();
    while let Some((w, c)) = rest.leading().map(|(w, c)| (w.clone(), c.clone())) {
        if !is_alsw(&w) {
            return Err(Error::NotLie(format!("{w:?}")));
        }
        match rw.find(&w) {
            Some(m) => {
                let sb = special_bracket(&m.context, &m.pattern)?;
                let sub = sb.expand(alg, &m.lifted);
                let k = sub.coeff(&w);
                if k.is_zero() {
                    return Err(Error::Precondition(format!(
                        "special bracketing lost the pattern in {w:?}"
                    )));
                }
                rest.add_scaled(&sub, &-(&c * inverse(&k)));
            }
            None => {
                let t = shirshov_bracket(&w)?;
                rest.add_scaled(&alg.lie_expand(&t), &-c.clone());
                out.terms.push((t, c));
                if stop_early {
                    return Ok(out);
                }
            }
        }
    }
    out.tidy();
    Ok(out)
}

/// The Lie normal form computed through the associative one: reduce, then
/// peel off `lc·[leading word]` and reduce again, until nothing is left.
pub fn lie_form_via_assoc(p: &Poly, rw: &dyn Rewriter) -> Result<LieForm> {
    let alg = rw.algebra();
    let mut rest = reduce_assoc(p, rw);
    let mut out = LieForm::default();
    while let Some((w, c)) = rest.leading().map(|(w, c)| (w.clone(), c.clone())) {
        if !is_alsw(&w) {
            return Err(Error::NotLie(format!("{w:?}")));
        }
        let t = shirshov_bracket(&w)?;
        rest.add_scaled(&alg.lie_expand(&t), &-c.clone());
        rest = reduce_assoc(&rest, rw);
        out.terms.push((t, c));
    }
    out.tidy();
    Ok(out)
}

/// Normal form as a polynomial: the associative normal form, or the
/// expansion of the Lie normal form.
pub fn reduce(p: &Poly, rw: &dyn Rewriter, mode: Mode) -> Result<Poly> {
    match mode {
        Mode::Assoc => Ok(reduce_assoc(p, rw)),
        Mode::Lie => Ok(reduce_lie(p, rw)?.expand(rw.algebra())),
    }
}

pub fn is_reducible(w: &Word, rw: &dyn Rewriter) -> bool {
    rw.find(w).is_some()
}
