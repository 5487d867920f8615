//! Differential Ω-words.
//!
//! A [`Word`] is a nonempty, strictly flattened sequence of [`Prime`]s. A
//! prime is `D^i(h)` where the head `h` is a generator or an operator applied
//! to argument words; the D-power is stored as a counter on the prime.
//!
//! `Ord` on [`Prime`] and [`Word`] is the Deg-lex order: words compare by
//! `(degree, breadth, primes...)`, and primes of equal degree compare by their
//! symbol tuple `(ω, args...)` where every operator ranks above `D`. Generators
//! and operators are ranked by declaration: the first declared is the greatest.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};

pub type GenId = u32;
pub type OpId = u32;

/// The ordered generator set X and the ordered operator set Ω.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    generators: Vec<String>,
    operators: Vec<(String, usize)>,
}

impl Alphabet {
    pub fn new(generators: Vec<String>, operators: Vec<(String, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for name in generators.iter().chain(operators.iter().map(|(n, _)| n)) {
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidAlphabet(format!("bad symbol name `{name}`")));
            }
            if !name.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
                return Err(Error::InvalidAlphabet(format!("`{name}` must start with a letter")));
            }
            if name == "D" {
                return Err(Error::InvalidAlphabet("`D` is reserved".into()));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{name}`")));
            }
        }
        if let Some((name, _)) = operators.iter().find(|(_, a)| *a == 0) {
            return Err(Error::InvalidAlphabet(format!("operator `{name}` has arity 0")));
        }
        Ok(Alphabet { generators, operators })
    }

    /// Generators `x1 > x2 > ... > xn` and one unary operator `P`.
    pub fn standard(n_generators: usize) -> Self {
        let gens = (1..=n_generators).map(|i| format!("x{i}")).collect();
        Alphabet::new(gens, vec![("P".to_string(), 1)]).expect("standard alphabet is valid")
    }

    /// Generators `x1 > ... > xn` without operators.
    pub fn generators_only(n_generators: usize) -> Self {
        let gens = (1..=n_generators).map(|i| format!("x{i}")).collect();
        Alphabet::new(gens, Vec::new()).expect("valid alphabet")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn operators(&self) -> &[(String, usize)] {
        &self.operators
    }

    pub fn generator_id(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g == name).map(|i| i as GenId)
    }

    pub fn operator_id(&self, name: &str) -> Option<OpId> {
        self.operators.iter().position(|(o, _)| o == name).map(|i| i as OpId)
    }

    pub fn generator_name(&self, id: GenId) -> &str {
        &self.generators[id as usize]
    }

    pub fn operator_name(&self, id: OpId) -> &str {
        &self.operators[id as usize].0
    }

    pub fn arity(&self, id: OpId) -> usize {
        self.operators[id as usize].1
    }

    /// Checks that every symbol of `w` belongs to this alphabet with the right arity.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.primes().iter().try_for_each(|p| self.check_prime(p))
    }

    pub fn check_prime(&self, p: &Prime) -> Result<()> {
        match p.head() {
            Head::Gen(g) if (*g as usize) < self.generators.len() => Ok(()),
            Head::Gen(g) => Err(Error::UnknownSymbol(format!("generator #{g}"))),
            Head::Op(o, args) => {
                let Some((name, arity)) = self.operators.get(*o as usize) else {
                    return Err(Error::UnknownSymbol(format!("operator #{o}")));
                };
                if args.len() != *arity {
                    return Err(Error::ArityMismatch {
                        name: name.clone(),
                        expected: *arity,
                        got: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_word(a))
            }
        }
    }
}

/// The head of a prime: a generator or an operator application.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Head {
    Gen(GenId),
    Op(OpId, Vec<Word>),
}

impl Head {
    fn degree(&self) -> u32 {
        match self {
            Head::Gen(_) => 1,
            Head::Op(_, args) => 1 + args.iter().map(Word::degree).sum::<u32>(),
        }
    }
}

/// `D^d(head)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Prime {
    d: u32,
    head: Head,
    degree: u32,
}

impl Prime {
    pub fn new(d: u32, head: Head) -> Self {
        let degree = d + head.degree();
        Prime { d, head, degree }
    }

    pub fn gen(g: GenId) -> Self {
        Prime::new(0, Head::Gen(g))
    }

    /// `ω(args)`; arity is checked by the algebra, not here.
    ///
    /// # Panics
    /// If `args` is empty.
    pub fn op(o: OpId, args: Vec<Word>) -> Self {
        assert!(!args.is_empty(), "operators have arity at least one");
        Prime::new(0, Head::Op(o, args))
    }

    pub fn d_power(&self) -> u32 {
        self.d
    }

    pub fn head(&self) -> &Head {
        &self.head
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `D^k` applied to this prime.
    pub fn lift(&self, k: u32) -> Prime {
        Prime {
            d: self.d + k,
            head: self.head.clone(),
            degree: self.degree + k,
        }
    }

    /// Operator arguments, empty for generator heads.
    pub fn args(&self) -> &[Word] {
        match &self.head {
            Head::Gen(_) => &[],
            Head::Op(_, args) => args,
        }
    }

    pub fn is_operator(&self) -> bool {
        matches!(self.head, Head::Op(..))
    }
}

// Compares (d_a, head_a) with (d_b, head_b) when both primes have equal degree.
fn cmp_equal_degree(da: u32, ha: &Head, db: u32, hb: &Head) -> Ordering {
    let k = da.min(db);
    let (da, db) = (da - k, db - k);
    match (da > 0, db > 0) {
        // D against an operator head: every operator ranks above D. A bare
        // generator has degree 1 and can never tie with a D-headed prime.
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (true, true) => unreachable!(),
        (false, false) => match (ha, hb) {
            (Head::Gen(a), Head::Gen(b)) => b.cmp(a),
            (Head::Op(oa, aa), Head::Op(ob, ab)) => ob.cmp(oa).then_with(|| aa.cmp(ab)),
            // unequal degrees; unreachable when degrees tie
            (Head::Gen(_), Head::Op(..)) => Ordering::Less,
            (Head::Op(..), Head::Gen(_)) => Ordering::Greater,
        },
    }
}

impl Ord for Prime {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| cmp_equal_degree(self.d, &self.head, other.d, &other.head))
    }
}

impl PartialOrd for Prime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A nonempty product of primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    primes: Vec<Prime>,
    degree: u32,
}

impl Word {
    /// # Panics
    /// If `primes` is empty; the term language has no empty word.
    pub fn new(primes: Vec<Prime>) -> Self {
        assert!(!primes.is_empty(), "words are nonempty");
        let degree = primes.iter().map(Prime::degree).sum();
        Word { primes, degree }
    }

    pub fn try_new(primes: Vec<Prime>) -> Option<Self> {
        (!primes.is_empty()).then(|| Word::new(primes))
    }

    pub fn gen(g: GenId) -> Self {
        Word::from(Prime::gen(g))
    }

    pub fn primes(&self) -> &[Prime] {
        &self.primes
    }

    pub fn into_primes(self) -> Vec<Prime> {
        self.primes
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn breadth(&self) -> usize {
        self.primes.len()
    }

    pub fn is_prime(&self) -> bool {
        self.primes.len() == 1
    }

    pub fn as_prime(&self) -> Option<&Prime> {
        match self.primes.as_slice() {
            [p] => Some(p),
            _ => None,
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut primes = Vec::with_capacity(self.primes.len() + other.primes.len());
        primes.extend_from_slice(&self.primes);
        primes.extend_from_slice(&other.primes);
        Word {
            primes,
            degree: self.degree + other.degree,
        }
    }

    /// `(deg, bre, u_1, ..., u_m)`.
    pub fn weight_tuple(&self) -> (u32, usize, &[Prime]) {
        (self.degree, self.primes.len(), &self.primes)
    }

    /// Every subword occurrence of `pattern`; see [`occurrences`].
    pub fn occurrences(&self, pattern: &Word) -> Vec<Context> {
        occurrences(self, pattern)
    }

    /// True when `pattern` occurs as a contiguous run of primes, at any depth.
    pub fn contains(&self, pattern: &Word) -> bool {
        contains_in(&self.primes, pattern.primes())
    }
}

fn contains_in(primes: &[Prime], pat: &[Prime]) -> bool {
    primes.windows(pat.len()).any(|w| w == pat)
        || primes
            .iter()
            .flat_map(|p| p.args())
            .any(|a| contains_in(a.primes(), pat))
}

impl From<Prime> for Word {
    fn from(p: Prime) -> Self {
        let degree = p.degree;
        Word {
            primes: vec![p],
            degree,
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.primes.len().cmp(&other.primes.len()))
            .then_with(|| self.primes.iter().cmp(other.primes.iter()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Deg-lex comparison; `Greater` means `u >_Dl v`.
pub fn deglex_cmp(u: &Word, v: &Word) -> Ordering {
    u.cmp(v)
}

/// The lex order on prime sequences used for Lyndon-Shirshov words: letters
/// compare by `≻` (Deg-lex on primes) and a proper prefix is greater than any
/// of its extensions, so the empty sequence is the greatest of all.
pub fn lex_cmp(u: &[Prime], v: &[Prime]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        match a.cmp(b) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    v.len().cmp(&u.len())
}

/// A bracketed (nonassociative) Ω-word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NaWord {
    Leaf(NaPrime),
    Bracket(Box<NaWord>, Box<NaWord>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NaPrime {
    pub d: u32,
    pub head: NaHead,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NaHead {
    Gen(GenId),
    Op(OpId, Vec<NaWord>),
}

impl NaWord {
    pub fn bracket(left: NaWord, right: NaWord) -> Self {
        NaWord::Bracket(Box::new(left), Box::new(right))
    }

    pub fn gen(g: GenId) -> Self {
        NaWord::Leaf(NaPrime {
            d: 0,
            head: NaHead::Gen(g),
        })
    }

    /// Forgets all bracket structure.
    pub fn underlying(&self) -> Word {
        let mut primes = Vec::new();
        self.collect_primes(&mut primes);
        Word::new(primes)
    }

    fn collect_primes(&self, out: &mut Vec<Prime>) {
        match self {
            NaWord::Leaf(p) => out.push(p.underlying()),
            NaWord::Bracket(l, r) => {
                l.collect_primes(out);
                r.collect_primes(out);
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.underlying().degree()
    }

    /// True when no pair structure occurs anywhere, operator arguments included.
    pub fn is_bracket_free(&self) -> bool {
        match self {
            NaWord::Bracket(..) => false,
            NaWord::Leaf(p) => match &p.head {
                NaHead::Gen(_) => true,
                NaHead::Op(_, args) => args.iter().all(NaWord::is_bracket_free),
            },
        }
    }
}

impl NaPrime {
    pub fn underlying(&self) -> Prime {
        let head = match &self.head {
            NaHead::Gen(g) => Head::Gen(*g),
            NaHead::Op(o, args) => Head::Op(*o, args.iter().map(NaWord::underlying).collect()),
        };
        Prime::new(self.d, head)
    }
}

/// A word with exactly one hole `⋆`.
///
/// The hole sits either at the top level, between `left` and `right`, or
/// inside one argument of an operator prime at that position. The hole itself
/// may be wrapped in `D^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    pub left: Vec<Prime>,
    pub slot: Slot,
    pub right: Vec<Prime>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    /// `D^d(⋆)`.
    Hole { d: u32 },
    /// `D^d(ω(before.., inner, after..))`.
    Inside {
        d: u32,
        op: OpId,
        before: Vec<Word>,
        inner: Box<Context>,
        after: Vec<Word>,
    },
}

impl Context {
    /// The bare hole `⋆`.
    pub fn hole() -> Self {
        Context {
            left: Vec::new(),
            slot: Slot::Hole { d: 0 },
            right: Vec::new(),
        }
    }

    /// `left · ⋆ · right`.
    pub fn around(left: &[Prime], right: &[Prime]) -> Self {
        Context {
            left: left.to_vec(),
            slot: Slot::Hole { d: 0 },
            right: right.to_vec(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.left.is_empty() && self.right.is_empty() && matches!(self.slot, Slot::Hole { d: 0 })
    }

    /// Number of D's wrapped directly around the hole.
    pub fn hole_d_power(&self) -> u32 {
        match &self.slot {
            Slot::Hole { d } => *d,
            Slot::Inside { inner, .. } => inner.hole_d_power(),
        }
    }

    /// A copy whose hole carries `D^d` instead.
    pub fn with_hole_d_power(&self, d: u32) -> Context {
        let slot = match &self.slot {
            Slot::Hole { .. } => Slot::Hole { d },
            Slot::Inside {
                d: od,
                op,
                before,
                inner,
                after,
            } => Slot::Inside {
                d: *od,
                op: *op,
                before: before.clone(),
                inner: Box::new(inner.with_hole_d_power(d)),
                after: after.clone(),
            },
        };
        Context {
            left: self.left.clone(),
            slot,
            right: self.right.clone(),
        }
    }

    /// Degree of everything but the hole's filler (the D's on the hole count).
    pub fn degree(&self) -> u32 {
        let outer: u32 = self.left.iter().chain(&self.right).map(Prime::degree).sum();
        outer
            + match &self.slot {
                Slot::Hole { d } => *d,
                Slot::Inside {
                    d,
                    before,
                    inner,
                    after,
                    ..
                } => {
                    d + 1
                        + before.iter().chain(after).map(Word::degree).sum::<u32>()
                        + inner.degree()
                }
            }
    }

    /// `π|_u`. A hole under `D^d` with `d > 0` accepts only a prime filler; a
    /// longer word there is a polynomial, see `Algebra::substitute_poly`.
    pub fn substitute(&self, u: &Word) -> Result<Word> {
        let mut primes = Vec::with_capacity(self.left.len() + u.breadth() + self.right.len());
        primes.extend_from_slice(&self.left);
        match &self.slot {
            Slot::Hole { d: 0 } => primes.extend_from_slice(u.primes()),
            Slot::Hole { d } => match u.as_prime() {
                Some(p) => primes.push(p.lift(*d)),
                None => {
                    return Err(Error::Precondition(
                        "a D-wrapped hole needs a prime filler".into(),
                    ))
                }
            },
            Slot::Inside {
                d,
                op,
                before,
                inner,
                after,
            } => {
                let mut args = before.clone();
                args.push(inner.substitute(u)?);
                args.extend_from_slice(after);
                primes.push(Prime::new(*d, Head::Op(*op, args)));
            }
        }
        primes.extend_from_slice(&self.right);
        Ok(Word::new(primes))
    }

    /// The same context nested as an argument: `left · D^d(ω(before, self, after)) · right`.
    pub fn nest(
        self,
        left: &[Prime],
        d: u32,
        op: OpId,
        before: &[Word],
        after: &[Word],
        right: &[Prime],
    ) -> Context {
        Context {
            left: left.to_vec(),
            slot: Slot::Inside {
                d,
                op,
                before: before.to_vec(),
                inner: Box::new(self),
                after: after.to_vec(),
            },
            right: right.to_vec(),
        }
    }
}

/// Every context `π` with `π|_p = w`.
///
/// `p` may match a contiguous run of primes at the top level or inside any
/// operator argument; a single-prime pattern `D^a(h)` also matches a prime
/// `D^b(h)` with `b > a`, through the context `D^{b-a}(⋆)`.
pub fn occurrences(w: &Word, p: &Word) -> Vec<Context> {
    let mut out = Vec::new();
    occurrences_in(w.primes(), p.primes(), &mut out);
    out
}

fn occurrences_in(primes: &[Prime], pat: &[Prime], out: &mut Vec<Context>) {
    let n = pat.len();
    for k in 0..primes.len() {
        if k + n <= primes.len() && primes[k..k + n] == *pat {
            out.push(Context::around(&primes[..k], &primes[k + n..]));
        }
        let here = &primes[k];
        if n == 1 && here.head == pat[0].head && here.d > pat[0].d {
            out.push(Context {
                left: primes[..k].to_vec(),
                slot: Slot::Hole {
                    d: here.d - pat[0].d,
                },
                right: primes[k + 1..].to_vec(),
            });
        }
        if let Head::Op(op, args) = &here.head {
            for (ai, arg) in args.iter().enumerate() {
                let mut inner = Vec::new();
                occurrences_in(arg.primes(), pat, &mut inner);
                out.extend(inner.into_iter().map(|c| {
                    c.nest(
                        &primes[..k],
                        here.d,
                        *op,
                        &args[..ai],
                        &args[ai + 1..],
                        &primes[k + 1..],
                    )
                }));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Prime {
        Prime::gen(0)
    }
    fn y() -> Prime {
        Prime::gen(1)
    }
    fn p(w: Word) -> Prime {
        Prime::op(0, vec![w])
    }
    fn w(ps: &[Prime]) -> Word {
        Word::new(ps.to_vec())
    }

    #[test]
    fn weight_tuples() {
        assert_eq!(Word::gen(0).weight_tuple(), (1, 1, &[x()][..]));
        let u = w(&[x().lift(2), y()]);
        assert_eq!((u.degree(), u.breadth()), (4, 2));
        let u = w(&[p(w(&[x(), y()]))]);
        assert_eq!((u.degree(), u.breadth()), (3, 1));
    }

    #[test]
    fn deglex_examples() {
        let xy = w(&[x(), y()]);
        let dx = w(&[x().lift(1)]);
        assert_eq!(deglex_cmp(&xy, &dx), Ordering::Greater);
        let px = w(&[p(Word::gen(0))]);
        assert_eq!(deglex_cmp(&px, &dx), Ordering::Greater);
        assert_eq!(deglex_cmp(&Word::gen(0), &Word::gen(0)), Ordering::Equal);
        // D^2(x) vs D(P(x))? degree 3 vs 3: (D, D(x)) vs (D, P(x)) -> P(x) wins
        let d2x = w(&[x().lift(2)]);
        let dpx = w(&[p(Word::gen(0)).lift(1)]);
        assert_eq!(deglex_cmp(&dpx, &d2x), Ordering::Greater);
        // P(D(x)) vs D(P(x)): P > D at the first symbol
        let pdx = w(&[p(dx.clone())]);
        assert_eq!(deglex_cmp(&pdx, &dpx), Ordering::Greater);
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_cmp(&[x()], &[x(), y()]), Ordering::Greater);
        assert_eq!(lex_cmp(&[x(), y()], &[y(), x()]), Ordering::Greater);
        assert_eq!(
            lex_cmp(&[x().lift(1), x()], &[x().lift(1), y()]),
            Ordering::Greater
        );
        assert_eq!(lex_cmp(&[], &[y()]), Ordering::Greater);
    }

    #[test]
    fn occurrence_examples() {
        let xyx = w(&[x(), y(), x()]);
        let occ = occurrences(&xyx, &Word::gen(0));
        assert_eq!(occ.len(), 2);
        assert_eq!(occ[0], Context::around(&[], &[y(), x()]));
        assert_eq!(occ[1], Context::around(&[x(), y()], &[]));

        let z = Prime::gen(2);
        let target = w(&[p(w(&[x(), y()])), z.clone()]);
        let occ = occurrences(&target, &w(&[x(), y()]));
        assert_eq!(occ.len(), 1);
        assert_eq!(
            occ[0],
            Context::hole().nest(&[], 0, 0, &[], &[], &[z])
        );
        assert!(occurrences(&Word::gen(0), &Word::gen(1)).is_empty());
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(Context::hole().substitute(&Word::gen(0)).unwrap(), Word::gen(0));
        let ctx = Context::hole().nest(&[], 0, 0, &[], &[], &[y()]);
        let u = w(&[x().lift(1), x()]);
        assert_eq!(ctx.substitute(&u).unwrap(), w(&[p(u.clone()), y()]));
        let d2 = Context::hole().with_hole_d_power(2);
        let px = Word::from(p(Word::gen(0)));
        assert_eq!(d2.substitute(&px).unwrap(), w(&[p(Word::gen(0)).lift(2)]));
        assert!(d2.substitute(&u).is_err());
    }

    #[test]
    fn d_wrapped_occurrence() {
        let target = w(&[p(Word::gen(0)).lift(2)]);
        let occ = occurrences(&target, &w(&[p(Word::gen(0))]));
        assert_eq!(occ, vec![Context::hole().with_hole_d_power(2)]);
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(vec!["x".into(), "x".into()], vec![]).is_err());
        assert!(Alphabet::new(vec!["x".into()], vec![("D".into(), 1)]).is_err());
        assert!(Alphabet::new(vec!["x".into()], vec![("x".into(), 1)]).is_err());
        assert!(Alphabet::new(vec!["x".into()], vec![("P".into(), 0)]).is_err());
        let a = Alphabet::standard(2);
        assert_eq!(a.generator_id("x2"), Some(1));
        assert_eq!(a.operator_id("P"), Some(0));
    }
}
