use rayon::prelude::*;

use super::reduce::{reduce_assoc, reduce_lie_to_zero, Mode};
use super::rules::{inverse, Rewriter, RuleSet, RuleTag};
use crate::error::{Error, Result};
use crate::lyndon::{enumerate_alsw, enumerate_words, is_alsw, shirshov_bracket, special_bracket};
use crate::poly::Poly;
use crate::term::{Context, NaWord, Prime, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AmbiguityKind {
    Intersection,
    Inclusion,
}

/// How the two lifted leading words sit inside `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gluing {
    /// `w = \overline{D^i(f)}·a = b·\overline{D^j(g)}`.
    Intersection { a: Vec<Prime>, b: Vec<Prime> },
    /// `w = \overline{D^i(f)} = π|_{\overline{D^j(g)}}`.
    Inclusion { context: Context },
}

#[derive(Clone, Debug)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    /// Index into `RuleSet::lifts` for `D^i(f)`.
    pub left: usize,
    /// Index into `RuleSet::lifts` for `D^j(g)`.
    pub right: usize,
    pub w: Word,
    pub gluing: Gluing,
}

/// All intersection and inclusion ambiguities with `deg(w) <= max_degree`,
/// over every pair of lifts held by the rule set.
pub fn find_ambiguities(rs: &RuleSet, max_degree: u32) -> Vec<Ambiguity> {
    let mut out = Vec::new();
    for (ia, la) in rs.lifts().iter().enumerate() {
        if la.leading.degree() > max_degree {
            continue;
        }
        let a = la.leading.primes();
        // intersections: a proper suffix of A is a proper prefix of B
        for t in 1..a.len() {
            let suffix = &a[t..];
            for &ib in rs.lifts_starting_with(&a[t]) {
                let b = rs.lifts()[ib].leading.primes();
                if b.len() > suffix.len() && b.starts_with(suffix) {
                    let tail = &b[suffix.len()..];
                    let mut primes = a.to_vec();
                    primes.extend_from_slice(tail);
                    let w = Word::new(primes);
                    if w.degree() <= max_degree {
                        out.push(Ambiguity {
                            kind: AmbiguityKind::Intersection,
                            left: ia,
                            right: ib,
                            w,
                            gluing: Gluing::Intersection {
                                a: tail.to_vec(),
                                b: a[..t].to_vec(),
                            },
                        });
                    }
                }
            }
        }
        // inclusions: B occurs inside A through a plain hole
        for (context, ib) in rs.all_occurrences(&la.leading) {
            if ib == ia && context.is_trivial() {
                continue;
            }
            out.push(Ambiguity {
                kind: AmbiguityKind::Inclusion,
                left: ia,
                right: ib,
                w: la.leading.clone(),
                gluing: Gluing::Inclusion { context },
            });
        }
    }
    out
}

/// `(f,g)_w` in associative mode, `⟨f,g⟩_w` in Lie mode.
///
/// Lie-mode intersections need `w` to be Lyndon-Shirshov.
pub fn composition(rs: &RuleSet, amb: &Ambiguity, mode: Mode) -> Result<Poly> {
    let alg = rs.algebra();
    let lf = &rs.lifts()[amb.left];
    let lg = &rs.lifts()[amb.right];
    let (kf, kg) = (inverse(&lf.lc), inverse(&lg.lc));
    let (first, second) = match (&amb.gluing, mode) {
        (Gluing::Intersection { a, b }, Mode::Assoc) => {
            let a = Poly::monomial(Word::new(a.clone()));
            let b = Poly::monomial(Word::new(b.clone()));
            (alg.multiply(&lf.poly, &a), alg.multiply(&b, &lg.poly))
        }
        (Gluing::Intersection { a, b }, Mode::Lie) => {
            if !is_alsw(&amb.w) {
                return Err(Error::Precondition("ambiguity word is not an ALSW".into()));
            }
            let left = special_bracket(&Context::around(&[], a), &lf.leading)?;
            let right = special_bracket(&Context::around(b, &[]), &lg.leading)?;
            (left.expand(alg, &lf.poly), right.expand(alg, &lg.poly))
        }
        (Gluing::Inclusion { context }, Mode::Assoc) => {
            ((*lf.poly).clone(), alg.substitute_poly(context, &lg.poly))
        }
        (Gluing::Inclusion { context }, Mode::Lie) => {
            let inner = special_bracket(context, &lg.leading)?;
            ((*lf.poly).clone(), inner.expand(alg, &lg.poly))
        }
    };
    let mut out = first.scale(&kf);
    out.add_scaled(&second, &-kg);
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub left: RuleTag,
    pub right: RuleTag,
    pub kind: AmbiguityKind,
    pub w: Word,
    /// Nonzero remainder after reduction, or the reason it could not be formed.
    pub residue: std::result::Result<Poly, Error>,
}

/// Outcome of a bounded Gröbner-Shirshov check.
#[derive(Clone, Debug)]
pub struct GsbReport {
    pub mode: Mode,
    pub max_degree: u32,
    pub rules: usize,
    pub lifts: usize,
    pub ambiguities: usize,
    pub intersections: usize,
    pub inclusions: usize,
    /// Lie-mode intersections whose word is not Lyndon-Shirshov; no Lie
    /// composition is formed for them.
    pub skipped: usize,
    pub failures: Vec<Failure>,
}

impl GsbReport {
    /// Every composition reduced to zero ("certified"). A failure means "not
    /// certified", which is weaker than "not a Gröbner-Shirshov basis".
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Forms every composition up to `max_degree` and reduces it by the rule set.
pub fn is_gsb(rs: &RuleSet, max_degree: u32, mode: Mode) -> GsbReport {
    let ambs = find_ambiguities(rs, max_degree);
    let skip = |a: &Ambiguity| {
        mode == Mode::Lie && a.kind == AmbiguityKind::Intersection && !is_alsw(&a.w)
    };
    let failures: Vec<Failure> = ambs
        .par_iter()
        .filter(|a| !skip(a))
        .filter_map(|a| {
            let residue = composition(rs, a, mode).and_then(|c| match mode {
                Mode::Assoc => Ok(reduce_assoc(&c, rs)),
                Mode::Lie => reduce_lie_to_zero(&c, rs).map(|f| f.expand(rs.algebra())),
            });
            match residue {
                Ok(r) if r.is_zero() => None,
                other => Some(Failure {
                    left: rs.tag(a.left),
                    right: rs.tag(a.right),
                    kind: a.kind,
                    w: a.w.clone(),
                    residue: other,
                }),
            }
        })
        .collect();
    let intersections = ambs
        .iter()
        .filter(|a| a.kind == AmbiguityKind::Intersection)
        .count();
    GsbReport {
        mode,
        max_degree,
        rules: rs.rules().len(),
        lifts: rs.lifts().len(),
        ambiguities: ambs.len(),
        intersections,
        inclusions: ambs.len() - intersections,
        skipped: ambs.iter().filter(|a| skip(a)).count(),
        failures,
    }
}

/// Irreducible words of degree `<= max_degree`: all words in associative
/// mode, Lyndon-Shirshov words in Lie mode. Sorted by Deg-lex.
pub fn enumerate_irr(rs: &dyn Rewriter, max_degree: u32, mode: Mode) -> Vec<Word> {
    let alg = rs.algebra();
    let pool = match mode {
        Mode::Assoc => enumerate_words(alg, max_degree),
        Mode::Lie => enumerate_alsw(alg, max_degree),
    };
    pool.into_iter().filter(|w| rs.find(w).is_none()).collect()
}

/// The Lie-mode irreducible words in standard bracketing.
pub fn enumerate_irr_lie(rs: &dyn Rewriter, max_degree: u32) -> Result<Vec<NaWord>> {
    enumerate_irr(rs, max_degree, Mode::Lie)
        .iter()
        .map(shirshov_bracket)
        .collect()
}
