use std::collections::HashMap;
use std::sync::Arc;

use num::{One, Zero};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::poly::{Coeff, Poly};
use crate::term::{Context, Head, Prime, Word};

/// Where a rule comes from: one of the two DRBL families, or a plain list entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    /// `g(u) = D(P([u])) - [u]`.
    G(Word),
    /// `f(u, v)`, the Rota-Baxter relation on `[u]`, `[v]`.
    F(Word, Word),
    Given(usize),
}

/// A monic polynomial `s ∈ S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    poly: Poly,
    origin: Origin,
}

impl Rule {
    /// Divides by the leading coefficient.
    pub fn new(poly: Poly, origin: Origin) -> Result<Self> {
        let lc = poly.leading().ok_or(Error::ZeroPolynomial)?.1.clone();
        let poly = if lc.is_one() { poly } else { poly.scale(&lc.recip()) };
        Ok(Rule { poly, origin })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn leading(&self) -> &Word {
        self.poly.leading_word().expect("rules are nonzero")
    }
}

/// Identifies `D^lift(s)` for a rule `s` of a rule source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleTag {
    pub rule: usize,
    pub origin: Origin,
    pub lift: u32,
}

/// An occurrence `w = π|_{\overline{D^i(s)}}` with a plain (D-free) hole.
#[derive(Clone, Debug)]
pub struct Match {
    pub context: Context,
    /// `\overline{D^i(s)}`.
    pub pattern: Word,
    /// `D^i(s)`.
    pub lifted: Arc<Poly>,
    /// `lc(D^i(s))`.
    pub lc: Coeff,
    pub tag: RuleTag,
}

/// Anything that can locate a reducible occurrence inside a word.
pub trait Rewriter: Sync {
    fn algebra(&self) -> &Algebra;

    /// Some occurrence of a lifted leading word in `w`, if `w` is reducible.
    fn find(&self, w: &Word) -> Option<Match>;

    /// The unlifted polynomial of the rule with this index.
    fn rule_poly(&self, tag: &RuleTag) -> Poly;
}

/// `D^i(s)` for one rule.
#[derive(Clone, Debug)]
pub struct Lift {
    pub rule: usize,
    pub lift: u32,
    pub poly: Arc<Poly>,
    pub leading: Word,
    pub lc: Coeff,
}

/// A finite list of rules with every lift whose leading word has degree at
/// most `max_degree`, indexed by the first prime of the leading word.
///
/// The leading degree of `D^i(s)` grows strictly with `i`, so lifting stops
/// at the first lift past the bound.
#[derive(Clone, Debug)]
pub struct RuleSet {
    alg: Algebra,
    rules: Vec<Rule>,
    lifts: Vec<Lift>,
    by_first: HashMap<Prime, Vec<usize>>,
    max_degree: u32,
}

impl RuleSet {
    pub fn new(alg: &Algebra, rules: Vec<Rule>, max_degree: u32) -> Self {
        let mut lifts = Vec::new();
        for (ri, rule) in rules.iter().enumerate() {
            let mut poly = rule.poly().clone();
            for i in 0.. {
                if i > 0 {
                    poly = alg.apply_d(&poly);
                }
                // The leading word of D^i(s) is taken from the expansion: for
                // λ ≠ 0 a lower term of s can overtake the lifted leading word.
                let (leading, lc) = alg.leading(&poly).expect("D^i(s) is nonzero");
                if leading.degree() > max_degree {
                    break;
                }
                lifts.push(Lift {
                    rule: ri,
                    lift: i,
                    poly: Arc::new(poly.clone()),
                    leading,
                    lc,
                });
            }
        }
        let mut by_first: HashMap<Prime, Vec<usize>> = HashMap::new();
        for (li, l) in lifts.iter().enumerate() {
            by_first.entry(l.leading.primes()[0].clone()).or_default().push(li);
        }
        RuleSet {
            alg: alg.clone(),
            rules,
            lifts,
            by_first,
            max_degree,
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn lifts(&self) -> &[Lift] {
        &self.lifts
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub(crate) fn lifts_starting_with(&self, p: &Prime) -> &[usize] {
        self.by_first.get(p).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn tag(&self, li: usize) -> RuleTag {
        let l = &self.lifts[li];
        RuleTag {
            rule: l.rule,
            origin: self.rules[l.rule].origin().clone(),
            lift: l.lift,
        }
    }

    fn make_match(&self, context: Context, li: usize) -> Match {
        let l = &self.lifts[li];
        Match {
            context,
            pattern: l.leading.clone(),
            lifted: l.poly.clone(),
            lc: l.lc.clone(),
            tag: self.tag(li),
        }
    }

    /// Every plain-hole occurrence of every lifted leading word in `w`.
    pub fn all_occurrences(&self, w: &Word) -> Vec<(Context, usize)> {
        let mut out = Vec::new();
        self.occurrences_in(w.primes(), &mut out, false);
        out
    }

    fn occurrences_in(&self, primes: &[Prime], out: &mut Vec<(Context, usize)>, first_only: bool) {
        for k in 0..primes.len() {
            for &li in self.lifts_starting_with(&primes[k]) {
                let pat = self.lifts[li].leading.primes();
                if primes[k..].starts_with(pat) {
                    out.push((Context::around(&primes[..k], &primes[k + pat.len()..]), li));
                    if first_only {
                        return;
                    }
                }
            }
        }
        for (k, here) in primes.iter().enumerate() {
            if let Head::Op(op, args) = here.head() {
                for (ai, arg) in args.iter().enumerate() {
                    let mut inner = Vec::new();
                    self.occurrences_in(arg.primes(), &mut inner, first_only);
                    for (c, li) in inner {
                        let c = c.nest(
                            &primes[..k],
                            here.d_power(),
                            *op,
                            &args[..ai],
                            &args[ai + 1..],
                            &primes[k + 1..],
                        );
                        out.push((c, li));
                        if first_only {
                            return;
                        }
                    }
                }
            }
        }
    }
}

impl Rewriter for RuleSet {
    fn algebra(&self) -> &Algebra {
        &self.alg
    }

    fn find(&self, w: &Word) -> Option<Match> {
        let mut out = Vec::with_capacity(1);
        self.occurrences_in(w.primes(), &mut out, true);
        out.pop().map(|(c, li)| self.make_match(c, li))
    }

    fn rule_poly(&self, tag: &RuleTag) -> Poly {
        self.rules[tag.rule].poly().clone()
    }
}

/// Rewrites `π|_s` as `π'|_{D^i(s)}` with `π'` free of D directly over the
/// hole; `i` is the number of D's absorbed. The result is a normal s-word.
pub fn normalize_s_word(ctx: &Context) -> (Context, u32) {
    let i = ctx.hole_d_power();
    (ctx.with_hole_d_power(0), i)
}

pub(crate) fn inverse(c: &Coeff) -> Coeff {
    debug_assert!(!c.is_zero());
    c.recip()
}
