//! The free λ-differential Lie Rota-Baxter algebra: the rule system
//! `S = {f(u,v), g(w)}`, fast normal forms and the linear basis.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{operator_poly, Algebra};
use crate::error::{Error, Result};
use crate::gsb::{reduce_lie, LieForm, Match, Origin, Rewriter, Rule, RuleTag};
use crate::lyndon::{enumerate_alsw, enumerate_alsw_without_d_over_operators, shirshov_bracket};
use crate::poly::{Coeff, Poly};
use crate::term::{Alphabet, Context, Head, NaHead, NaPrime, NaWord, Prime, Word};

/// The Rota-Baxter operator is operator 0 of the alphabet.
const P: u32 = 0;

/// `P(t)` as a bracketed word.
pub fn p_of(t: NaWord) -> NaWord {
    NaWord::Leaf(NaPrime {
        d: 0,
        head: NaHead::Op(P, vec![t]),
    })
}

/// `D^k(t)` for a single-leaf bracketed word.
fn d_leaf(t: &NaWord, k: u32) -> Option<NaWord> {
    match t {
        NaWord::Leaf(p) => Some(NaWord::Leaf(NaPrime {
            d: p.d + k,
            head: p.head.clone(),
        })),
        NaWord::Bracket(..) => None,
    }
}

#[derive(Debug)]
pub struct DrblSystem {
    alg: Algebra,
    cache: Mutex<HashMap<(Origin, u32), Arc<Poly>>>,
}

impl Clone for DrblSystem {
    fn clone(&self) -> Self {
        DrblSystem::new(self.alg.clone()).expect("already validated")
    }
}

impl DrblSystem {
    /// The algebra must have exactly one operator, unary.
    pub fn new(alg: Algebra) -> Result<Self> {
        match alg.alphabet().operators() {
            [(_, 1)] => Ok(DrblSystem {
                alg,
                cache: Mutex::new(HashMap::new()),
            }),
            _ => Err(Error::InvalidAlphabet(
                "a Rota-Baxter system needs exactly one unary operator".into(),
            )),
        }
    }

    /// Generators `x1 > … > xn`, operator `P`.
    pub fn standard(n_generators: usize, lambda: Coeff) -> Self {
        Self::new(Algebra::new(Alphabet::standard(n_generators), lambda)).expect("standard alphabet")
    }

    pub fn lambda(&self) -> &Coeff {
        self.alg.lambda()
    }

    /// `g(u) = D(P([u])) - [u]`, expanded.
    pub fn g_rule(&self, u: &Word) -> Result<Rule> {
        let bu = self.alg.lie_expand(&shirshov_bracket(u)?);
        let mut poly = operator_poly(P, 1, std::slice::from_ref(&bu));
        poly.add_scaled(&bu, &-Coeff::one());
        Rule::new(poly, Origin::G(u.clone()))
    }

    /// `f(u,v) = [P([u])P([v])] - P([[u]P([v])]) - P([P([u])[v]]) - λP([[u][v]])`
    /// for `u >_Dl v`, expanded.
    pub fn f_rule(&self, u: &Word, v: &Word) -> Result<Rule> {
        if u <= v {
            return Err(Error::Precondition("f(u,v) needs u >_Dl v".into()));
        }
        let (bu, bv) = (shirshov_bracket(u)?, shirshov_bracket(v)?);
        let pu = p_of(bu.clone());
        let pv = p_of(bv.clone());
        let e = |t: NaWord| self.alg.lie_expand(&t);
        let mut poly = e(NaWord::bracket(pu.clone(), pv.clone()));
        poly = poly - e(p_of(NaWord::bracket(bu.clone(), pv)));
        poly = poly - e(p_of(NaWord::bracket(pu, bv.clone())));
        poly.add_scaled(&e(p_of(NaWord::bracket(bu, bv))), &-self.alg.lambda().clone());
        Rule::new(poly, Origin::F(u.clone(), v.clone()))
    }

    fn origin_poly(&self, origin: &Origin) -> Poly {
        let rule = match origin {
            Origin::G(u) => self.g_rule(u),
            Origin::F(u, v) => self.f_rule(u, v),
            Origin::Given(_) => panic!("not a DRBL rule"),
        };
        rule.expect("origin parameters are Lyndon-Shirshov").poly().clone()
    }

    /// `D^lift` of a rule, memoized.
    fn lifted(&self, origin: &Origin, lift: u32) -> Arc<Poly> {
        let key = (origin.clone(), lift);
        if let Some(p) = self.cache.lock().unwrap().get(&key) {
            return p.clone();
        }
        let p = Arc::new(self.alg.apply_d_pow(&self.origin_poly(origin), lift));
        self.cache.lock().unwrap().insert(key, p.clone());
        p
    }

    /// `S` restricted to leading words of degree `<= max_degree`.
    pub fn instantiate_rules(&self, max_degree: u32) -> Vec<Rule> {
        let mut out = self.s1_rules(max_degree);
        let params = enumerate_alsw(&self.alg, max_degree.saturating_sub(2));
        for u in &params {
            for v in &params {
                if u > v && u.degree() + v.degree() + 2 <= max_degree {
                    out.push(self.f_rule(u, v).expect("ALSW parameters"));
                }
            }
        }
        out
    }

    /// `S₁ = {g(u)}` restricted to leading words of degree `<= max_degree`.
    pub fn s1_rules(&self, max_degree: u32) -> Vec<Rule> {
        enumerate_alsw(&self.alg, max_degree.saturating_sub(2))
            .iter()
            .map(|u| self.g_rule(u).expect("ALSW parameter"))
            .collect()
    }

    /// Normal form of `p` modulo `S`, as a combination of basis elements.
    pub fn drbl_nf(&self, p: &Poly, max_degree: u32) -> Result<LieForm> {
        let degree = p.degree();
        if degree > max_degree {
            return Err(Error::DegreeOverflow {
                degree,
                bound: max_degree,
            });
        }
        reduce_lie(p, self)
    }

    pub fn drbl_nf_naword(&self, t: &NaWord, max_degree: u32) -> Result<LieForm> {
        self.drbl_nf(&self.alg.lie_expand(t), max_degree)
    }

    /// The basis elements of degree `1..=max_degree`, grouped by degree, each
    /// group in Deg-lex order.
    pub fn enumerate_basis(&self, max_degree: u32) -> Vec<(u32, Vec<NaWord>)> {
        let words: Vec<Word> = enumerate_alsw_without_d_over_operators(&self.alg, max_degree)
            .into_iter()
            .filter(|w| !has_descending_p_pair(w.primes()))
            .collect();
        (1..=max_degree)
            .into_par_iter()
            .map(|d| {
                let group = words
                    .iter()
                    .filter(|w| w.degree() == d)
                    .map(|w| shirshov_bracket(w).expect("ALSW"))
                    .collect();
                (d, group)
            })
            .collect()
    }

    /// Checks the three defining identities on random pairs of basis elements.
    pub fn verify_axioms(&self, samples: usize, max_degree: u32, seed: u64) -> AxiomReport {
        let basis: Vec<NaWord> = self
            .enumerate_basis(max_degree)
            .into_iter()
            .flat_map(|(_, g)| g)
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs: Vec<(NaWord, NaWord)> = (0..samples)
            .map(|_| {
                let a = basis.choose(&mut rng).expect("nonempty basis").clone();
                let b = basis.choose(&mut rng).expect("nonempty basis").clone();
                (a, b)
            })
            .collect();
        let bound = 2 * max_degree + 2;
        let failures = pairs
            .par_iter()
            .flat_map_iter(|(a, b)| {
                self.axioms(a, b)
                    .into_iter()
                    .filter_map(|(identity, poly)| match self.drbl_nf(&poly, bound) {
                        Ok(nf) if nf.is_zero() => None,
                        residue => Some(AxiomFailure {
                            identity,
                            a: a.clone(),
                            b: b.clone(),
                            residue,
                        }),
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        AxiomReport {
            checked: samples,
            failures,
        }
    }

    fn axioms(&self, a: &NaWord, b: &NaWord) -> Vec<(Identity, Poly)> {
        let e = |t: NaWord| self.alg.lie_expand(&t);
        let lambda = self.alg.lambda();
        let (pa, pb) = (p_of(a.clone()), p_of(b.clone()));

        let mut rb = e(NaWord::bracket(pa.clone(), pb.clone()));
        rb = rb - e(p_of(NaWord::bracket(a.clone(), pb)));
        rb = rb - e(p_of(NaWord::bracket(pa.clone(), b.clone())));
        rb.add_scaled(&e(p_of(NaWord::bracket(a.clone(), b.clone()))), &-lambda.clone());

        let (ea, eb) = (e(a.clone()), e(b.clone()));
        let (da, db) = (self.alg.apply_d(&ea), self.alg.apply_d(&eb));
        let mut leibniz = self.alg.apply_d(&self.alg.bracket(&ea, &eb));
        leibniz = leibniz - self.alg.bracket(&da, &eb);
        leibniz = leibniz - self.alg.bracket(&ea, &db);
        leibniz.add_scaled(&self.alg.bracket(&da, &db), &-lambda.clone());

        let section = self.alg.apply_d(&e(pa)) - ea;
        vec![
            (Identity::RotaBaxter, rb),
            (Identity::Leibniz, leibniz),
            (Identity::Section, section),
        ]
    }

    /// `D^j(P(u))` as a bracketed word, for building inputs.
    pub fn d_p(&self, u: &NaWord, j: u32) -> NaWord {
        d_leaf(&p_of(u.clone()), j).expect("leaf")
    }
}

/// Two P-headed primes side by side, the first with the greater argument,
/// anywhere in the word.
pub fn has_descending_p_pair(primes: &[Prime]) -> bool {
    let is_p = |p: &Prime| p.d_power() == 0 && matches!(p.head(), Head::Op(P, _));
    primes.windows(2).any(|w| is_p(&w[0]) && is_p(&w[1]) && w[0].args()[0] > w[1].args()[0])
        || primes
            .iter()
            .flat_map(|p| p.args())
            .any(|a| has_descending_p_pair(a.primes()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    RotaBaxter,
    Leibniz,
    Section,
}

#[derive(Clone, Debug)]
pub struct AxiomFailure {
    pub identity: Identity,
    pub a: NaWord,
    pub b: NaWord,
    pub residue: Result<LieForm>,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub checked: usize,
    pub failures: Vec<AxiomFailure>,
}

enum Hit {
    G(Word, u32),
    F(Word, Word),
}

// g-patterns anywhere first, then f-patterns.
fn find_hit(primes: &[Prime], want_g: bool) -> Option<(Context, Hit)> {
    for (k, p) in primes.iter().enumerate() {
        if let Head::Op(P, args) = p.head() {
            let u = &args[0];
            if want_g && p.d_power() >= 1 && crate::lyndon::is_alsw(u) {
                let ctx = Context::around(&primes[..k], &primes[k + 1..]);
                return Some((ctx, Hit::G(u.clone(), p.d_power())));
            }
            if !want_g && p.d_power() == 0 {
                if let Some(q) = primes.get(k + 1) {
                    if let (0, Head::Op(P, vargs)) = (q.d_power(), q.head()) {
                        let v = &vargs[0];
                        if u > v && crate::lyndon::is_alsw(u) && crate::lyndon::is_alsw(v) {
                            let ctx = Context::around(&primes[..k], &primes[k + 2..]);
                            return Some((ctx, Hit::F(u.clone(), v.clone())));
                        }
                    }
                }
            }
        }
    }
    for (k, p) in primes.iter().enumerate() {
        if let Head::Op(op, args) = p.head() {
            for (ai, arg) in args.iter().enumerate() {
                if let Some((c, hit)) = find_hit(arg.primes(), want_g) {
                    let c = c.nest(
                        &primes[..k],
                        p.d_power(),
                        *op,
                        &args[..ai],
                        &args[ai + 1..],
                        &primes[k + 1..],
                    );
                    return Some((c, hit));
                }
            }
        }
    }
    None
}

impl DrblSystem {
    /// The rewriting view of `S_1` alone: only `D^k(P(u))` with `k >= 1` is
    /// reducible.
    pub fn s1_view(&self) -> S1View<'_> {
        S1View(self)
    }

    fn fast_match(&self, w: &Word, with_f: bool) -> Option<Match> {
        let hit = find_hit(w.primes(), true);
        let (context, hit) = if with_f {
            hit.or_else(|| find_hit(w.primes(), false))?
        } else {
            hit?
        };
        let (origin, lift, pattern) = match hit {
            Hit::G(u, k) => {
                let pat = Prime::op(P, vec![u.clone()]).lift(k);
                (Origin::G(u), k - 1, Word::from(pat))
            }
            Hit::F(u, v) => {
                let pat = Word::new(vec![Prime::op(P, vec![u.clone()]), Prime::op(P, vec![v.clone()])]);
                (Origin::F(u, v), 0, pat)
            }
        };
        let lifted = self.lifted(&origin, lift);
        Some(Match {
            context,
            pattern,
            lifted,
            lc: Coeff::one(),
            tag: RuleTag {
                rule: 0,
                origin,
                lift,
            },
        })
    }

}

impl Rewriter for DrblSystem {
    fn algebra(&self) -> &Algebra {
        &self.alg
    }

    fn find(&self, w: &Word) -> Option<Match> {
        self.fast_match(w, true)
    }

    fn rule_poly(&self, tag: &RuleTag) -> Poly {
        self.origin_poly(&tag.origin)
    }
}

pub struct S1View<'a>(&'a DrblSystem);

impl Rewriter for S1View<'_> {
    fn algebra(&self) -> &Algebra {
        &self.0.alg
    }

    fn find(&self, w: &Word) -> Option<Match> {
        self.0.fast_match(w, false)
    }

    fn rule_poly(&self, tag: &RuleTag) -> Poly {
        self.0.origin_poly(&tag.origin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsb::RuleSet;
    use crate::poly::rat;

    fn x() -> Word {
        Word::gen(0)
    }
    fn y() -> Word {
        Word::gen(1)
    }
    fn pw(u: Word) -> Word {
        Word::from(Prime::op(P, vec![u]))
    }
    fn leaf(g: u32) -> NaWord {
        NaWord::gen(g)
    }

    #[test]
    fn rule_leading_words() {
        let s = DrblSystem::standard(2, rat(1));
        let g = s.g_rule(&x()).unwrap();
        assert_eq!(g.leading(), &Word::from(Prime::op(P, vec![x()]).lift(1)));
        let f = s.f_rule(&x(), &y()).unwrap();
        assert_eq!(f.leading(), &pw(x()).concat(&pw(y())));
        assert!(s.f_rule(&y(), &x()).is_err());
    }

    #[test]
    fn instantiation_counts() {
        let s = DrblSystem::standard(1, rat(1));
        assert_eq!(s.instantiate_rules(3).len(), 1);
        let rules = s.instantiate_rules(4);
        assert!(rules.iter().all(|r| matches!(r.origin(), Origin::G(_))));
        assert_eq!(rules.len(), 3);
        let s = DrblSystem::standard(2, rat(1));
        assert!(s
            .instantiate_rules(4)
            .iter()
            .any(|r| r.origin() == &Origin::F(x(), y())));
    }

    #[test]
    fn rb_example() {
        let s = DrblSystem::standard(2, rat(1));
        let t = NaWord::bracket(p_of(leaf(0)), p_of(leaf(1)));
        let nf = s.drbl_nf_naword(&t, 4).unwrap();
        let py = p_of(leaf(1));
        let expect = -&s.alg.lie_expand(&p_of(NaWord::bracket(py, leaf(0))))
            + s.alg.lie_expand(&p_of(NaWord::bracket(p_of(leaf(0)), leaf(1))))
            + s.alg.lie_expand(&p_of(NaWord::bracket(leaf(0), leaf(1))));
        assert_eq!(nf.terms.len(), 3);
        assert_eq!(nf.expand(&s.alg), expect);
    }

    #[test]
    fn section_relation() {
        let s = DrblSystem::standard(2, rat(2));
        for (_, group) in s.enumerate_basis(3) {
            for w in group {
                let p = s.alg.lie_expand(&s.d_p(&w, 1)) - s.alg.lie_expand(&w);
                assert!(s.drbl_nf(&p, 5).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn basis_small() {
        let s = DrblSystem::standard(1, rat(1));
        let counts: Vec<usize> = s.enumerate_basis(3).iter().map(|(_, g)| g.len()).collect();
        assert_eq!(counts, vec![1, 2, 5]);
    }

    #[test]
    fn basis_elements_are_fixed_points() {
        let s = DrblSystem::standard(2, rat(1));
        for (_, group) in s.enumerate_basis(4) {
            for t in group {
                let nf = s.drbl_nf_naword(&t, 4).unwrap();
                assert_eq!(nf.terms, vec![(t, rat(1))]);
            }
        }
    }

    #[test]
    fn fast_path_agrees_with_rule_set() {
        for lambda in [0, 1] {
            let s = DrblSystem::standard(2, rat(lambda));
            let rs = RuleSet::new(&s.alg, s.instantiate_rules(5), 5);
            for w in enumerate_alsw(&s.alg, 5) {
                assert_eq!(s.find(&w).is_some(), rs.find(&w).is_some(), "{w:?}");
            }
        }
    }

    #[test]
    fn axioms_hold() {
        for lambda in [0, 2] {
            let s = DrblSystem::standard(1, rat(lambda));
            let report = s.verify_axioms(10, 2, 7);
            assert!(report.failures.is_empty(), "{:?}", report.failures);
        }
    }
}
