//! Lyndon-Shirshov words over graded prime alphabets.
//!
//! Letters are primes ordered by `≻` (Deg-lex on primes) and words compare by
//! [`lex_cmp`]. A word is Lyndon-Shirshov (ALSW) when it is strictly greater
//! than every proper rotation. The standard bracketing splits off the longest
//! proper Lyndon-Shirshov suffix.

use std::cmp::Ordering;
use std::collections::HashSet;

use num::One;

use crate::algebra::{operator_poly, Algebra};
use crate::error::{Error, Result};
use crate::poly::{Coeff, Poly};
use crate::term::{lex_cmp, Context, Head, NaHead, NaPrime, NaWord, OpId, Prime, Slot, Word};

/// True iff `w = ab >_lex ba` for every split into nonempty `a`, `b`.
pub fn is_alsw_letters(w: &[Prime]) -> bool {
    if w.is_empty() {
        return false;
    }
    let n = w.len();
    (1..n).all(|k| {
        // compare w with its rotation w[k..] w[..k] without allocating
        let rot = w[k..].iter().chain(&w[..k]);
        w.iter().cmp(rot) == Ordering::Greater
    })
}

pub fn is_alsw(u: &Word) -> bool {
    is_alsw_letters(u.primes())
}

/// True when `u` is an ALSW whose letters all have ALSW arguments, at every
/// nesting depth; these are the differential Lyndon-Shirshov Ω-words.
pub fn is_differential_alsw(u: &Word) -> bool {
    is_alsw(u) && u.primes().iter().all(|p| p.args().iter().all(is_differential_alsw))
}

/// Binary tree over letter positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Shape {
    Leaf(usize),
    Node(Box<Shape>, Box<Shape>, usize, usize),
}

impl Shape {
    fn span(&self) -> (usize, usize) {
        match self {
            Shape::Leaf(i) => (*i, i + 1),
            Shape::Node(_, _, s, e) => (*s, *e),
        }
    }
}

// Standard bracketing of an ALSW over atomic letters.
pub(crate) fn standard_shape(letters: &[Prime], offset: usize) -> Shape {
    if letters.len() == 1 {
        return Shape::Leaf(offset);
    }
    let split = (1..letters.len())
        .find(|&s| is_alsw_letters(&letters[s..]))
        .expect("the last letter is always Lyndon-Shirshov");
    Shape::Node(
        Box::new(standard_shape(&letters[..split], offset)),
        Box::new(standard_shape(&letters[split..], offset + split)),
        offset,
        offset + letters.len(),
    )
}

fn shape_to_naword(shape: &Shape, letters: &[NaWord]) -> NaWord {
    match shape {
        Shape::Leaf(i) => letters[*i].clone(),
        Shape::Node(l, r, _, _) => {
            NaWord::bracket(shape_to_naword(l, letters), shape_to_naword(r, letters))
        }
    }
}

/// `[u]` for a single letter: `D^i(ω([u_1], ..., [u_m]))`.
pub fn letter_bracket(p: &Prime) -> Result<NaWord> {
    let head = match p.head() {
        Head::Gen(g) => NaHead::Gen(*g),
        Head::Op(o, args) => NaHead::Op(
            *o,
            args.iter().map(shirshov_bracket).collect::<Result<_>>()?,
        ),
    };
    Ok(NaWord::Leaf(NaPrime {
        d: p.d_power(),
        head,
    }))
}

/// The Shirshov standard bracketing `[u]`.
pub fn shirshov_bracket(u: &Word) -> Result<NaWord> {
    if !is_alsw(u) {
        return Err(Error::NotLyndon(format!("{u:?}")));
    }
    let letters = u
        .primes()
        .iter()
        .map(letter_bracket)
        .collect::<Result<Vec<_>>>()?;
    Ok(shape_to_naword(&standard_shape(u.primes(), 0), &letters))
}

/// Chen-Fox-Lyndon factorization `w = c_1 c_2 ... c_m` into ALSWs with
/// `c_t ⪯_lex c_{t+1}`; returned as index ranges.
pub fn lyndon_factorization(w: &[Prime]) -> Vec<std::ops::Range<usize>> {
    // Duval's algorithm; the classical comparison `a < b` is `a ≻ b` here.
    let n = w.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && w[k] >= w[j] {
            if w[k] > w[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(i..i + j - k);
            i += j - k;
        }
    }
    out
}

/// All ALSWs of length exactly `n` over `letters` (every letter treated as
/// atomic), generated directly rather than by filtering.
pub fn lyndon_words_of_length(letters: &[Prime], n: usize) -> Vec<Vec<Prime>> {
    let mut sorted: Vec<Prime> = letters.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    sorted.dedup();
    let q = sorted.len();
    if q == 0 || n == 0 {
        return Vec::new();
    }
    // Fredricksen-Kessler-Maiorana over indices, index 0 = greatest letter
    let mut out = Vec::new();
    let mut w = vec![0usize];
    loop {
        if w.len() == n {
            out.push(w.iter().map(|&i| sorted[i].clone()).collect());
        }
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(q - 1)) {
            w.pop();
        }
        match w.last_mut() {
            None => break,
            Some(c) => *c += 1,
        }
    }
    out
}

/// ALSWs over a fixed letter set, grouped by degree `0..=max_degree`.
fn alsw_over(letters: &[Prime], max_degree: u32) -> Vec<Vec<Word>> {
    let n = max_degree as usize;
    let mut by_deg: Vec<Vec<Word>> = vec![Vec::new(); n + 1];
    for l in letters {
        if l.degree() as usize <= n {
            by_deg[l.degree() as usize].push(Word::from(l.clone()));
        }
    }
    for d in 2..=n {
        let mut seen: HashSet<Word> = by_deg[d].iter().cloned().collect();
        let mut fresh = Vec::new();
        for a in 1..d {
            for u in &by_deg[a] {
                for v in &by_deg[d - a] {
                    // u >_lex v with both ALSW implies uv is ALSW, and every
                    // ALSW of breadth >= 2 arises this way.
                    if lex_cmp(u.primes(), v.primes()) == Ordering::Greater {
                        let uv = u.concat(v);
                        if seen.insert(uv.clone()) {
                            fresh.push(uv);
                        }
                    }
                }
            }
        }
        by_deg[d].extend(fresh);
    }
    by_deg
}

// Δ(X ∪ Ω(args)) restricted to degree <= max_degree; `args` grouped by degree.
fn differential_letters(
    alg: &Algebra,
    args: &[Vec<Word>],
    max_degree: u32,
    d_over_operators: bool,
) -> Vec<Prime> {
    let mut out = Vec::new();
    for g in 0..alg.alphabet().generators().len() as u32 {
        for i in 0..max_degree {
            out.push(Prime::gen(g).lift(i));
        }
    }
    for (o, (_, arity)) in alg.alphabet().operators().iter().enumerate() {
        let mut heads = Vec::new();
        tuples(args, *arity, max_degree.saturating_sub(1), &mut Vec::new(), &mut heads);
        for a in heads {
            let base = Prime::op(o as OpId, a);
            let room = max_degree - base.degree();
            let lifts = if d_over_operators { room } else { 0 };
            for i in 0..=lifts {
                out.push(base.lift(i));
            }
        }
    }
    out
}

// All argument tuples of the given arity with total degree <= budget.
fn tuples(
    pool: &[Vec<Word>],
    arity: usize,
    budget: u32,
    cur: &mut Vec<Word>,
    out: &mut Vec<Vec<Word>>,
) {
    if cur.len() == arity {
        out.push(cur.clone());
        return;
    }
    let remaining_min = (arity - cur.len() - 1) as u32;
    for (deg, words) in pool.iter().enumerate() {
        let deg = deg as u32;
        if deg == 0 || deg + remaining_min > budget {
            continue;
        }
        for w in words {
            cur.push(w.clone());
            tuples(pool, arity, budget - deg, cur, out);
            cur.pop();
        }
    }
}

fn flatten_sorted(by_deg: Vec<Vec<Word>>) -> Vec<Word> {
    let mut all: Vec<Word> = by_deg.into_iter().flatten().collect();
    all.sort();
    all
}

/// Differential Lyndon-Shirshov Ω-words of degree `<= max_degree`, sorted by Deg-lex.
///
/// Built stratum by stratum: `Z_0 = Δ(X)`, `Z_n = Δ(X ∪ Ω(ALSW_{n-1}))`,
/// until a stratum adds nothing new within the degree bound.
pub fn enumerate_alsw(alg: &Algebra, max_degree: u32) -> Vec<Word> {
    enumerate_strata(alg, max_degree, None, true)
}

/// The words of stratum `depth` of [`enumerate_alsw`].
pub fn enumerate_alsw_stratum(alg: &Algebra, max_degree: u32, depth: usize) -> Vec<Word> {
    enumerate_strata(alg, max_degree, Some(depth), true)
}

/// Same stratification with `D` never applied over an operator: the letters
/// are `Δ(X) ∪ Ω(previous stratum)`.
pub fn enumerate_alsw_without_d_over_operators(alg: &Algebra, max_degree: u32) -> Vec<Word> {
    enumerate_strata(alg, max_degree, None, false)
}

fn enumerate_strata(
    alg: &Algebra,
    max_degree: u32,
    depth: Option<usize>,
    d_over_operators: bool,
) -> Vec<Word> {
    let mut prev: Vec<Vec<Word>> = vec![Vec::new(); max_degree as usize + 1];
    let mut count = usize::MAX;
    for stratum in 0.. {
        let letters = differential_letters(alg, &prev, max_degree, d_over_operators);
        let next = alsw_over(&letters, max_degree);
        let n: usize = next.iter().map(Vec::len).sum();
        let done = n == count || depth == Some(stratum);
        count = n;
        prev = next;
        if done {
            break;
        }
    }
    flatten_sorted(prev)
}

/// Every word of degree `<= max_degree` (no Lyndon condition), sorted by Deg-lex.
pub fn enumerate_words(alg: &Algebra, max_degree: u32) -> Vec<Word> {
    let n = max_degree as usize;
    let mut by_deg: Vec<Vec<Word>> = vec![Vec::new(); n + 1];
    let mut letters_by_deg: Vec<Vec<Prime>> = vec![Vec::new(); n + 1];
    for d in 1..=n {
        // letters of degree d use argument words of smaller degree only
        let letters = differential_letters(alg, &by_deg, d as u32, true);
        letters_by_deg[d] = letters.into_iter().filter(|l| l.degree() as usize == d).collect();
        let mut words: Vec<Word> = letters_by_deg[d].iter().cloned().map(Word::from).collect();
        for a in 1..d {
            for l in &letters_by_deg[a] {
                for rest in &by_deg[d - a] {
                    words.push(Word::from(l.clone()).concat(rest));
                }
            }
        }
        by_deg[d] = words;
    }
    flatten_sorted(by_deg)
}

/// A bracketing of `π|_v` in which the subword `v` is isolated as one slot.
///
/// Filling the slot with `[v]` gives the bracketing `[π|_v]_v`; filling it
/// with a Lie polynomial `f` with leading word `v` gives the special normal
/// `f`-word `[π|_f]_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialBracketing {
    Slot,
    Fixed(NaWord),
    Bracket(Box<SpecialBracketing>, Box<SpecialBracketing>),
    Op {
        d: u32,
        op: OpId,
        before: Vec<NaWord>,
        inner: Box<SpecialBracketing>,
        after: Vec<NaWord>,
    },
}

impl SpecialBracketing {
    pub fn to_naword(&self, fill: &NaWord) -> NaWord {
        match self {
            SpecialBracketing::Slot => fill.clone(),
            SpecialBracketing::Fixed(t) => t.clone(),
            SpecialBracketing::Bracket(l, r) => NaWord::bracket(l.to_naword(fill), r.to_naword(fill)),
            SpecialBracketing::Op {
                d,
                op,
                before,
                inner,
                after,
            } => {
                let mut args = before.clone();
                args.push(inner.to_naword(fill));
                args.extend(after.iter().cloned());
                NaWord::Leaf(NaPrime {
                    d: *d,
                    head: NaHead::Op(*op, args),
                })
            }
        }
    }

    /// The associative expansion with the slot replaced by `fill`.
    pub fn expand(&self, alg: &Algebra, fill: &Poly) -> Poly {
        match self {
            SpecialBracketing::Slot => fill.clone(),
            SpecialBracketing::Fixed(t) => alg.lie_expand(t),
            SpecialBracketing::Bracket(l, r) => {
                alg.bracket(&l.expand(alg, fill), &r.expand(alg, fill))
            }
            SpecialBracketing::Op {
                d,
                op,
                before,
                inner,
                after,
            } => {
                let mut args: Vec<Poly> = before.iter().map(|a| alg.lie_expand(a)).collect();
                args.push(inner.expand(alg, fill));
                args.extend(after.iter().map(|a| alg.lie_expand(a)));
                operator_poly(*op, *d, &args)
            }
        }
    }
}

/// Builds `[π|_v]_v`: the standard bracketing of `π|_v` with the smallest
/// bracket starting at `v` re-bracketed as `[...[[v][c_1]][c_2]...[c_m]]`,
/// `c = c_1...c_m` the Lyndon factorization of the tail of that bracket.
pub fn special_bracket(ctx: &Context, v: &Word) -> Result<SpecialBracketing> {
    if !is_alsw(v) {
        return Err(Error::Precondition("the isolated subword must be an ALSW".into()));
    }
    special_rec(ctx, v)
}

fn special_rec(ctx: &Context, v: &Word) -> Result<SpecialBracketing> {
    let whole = ctx.substitute(v)?;
    if ctx.hole_d_power() > 0 {
        return Err(Error::Precondition("the hole may not sit under D".into()));
    }
    let letters = whole.primes();
    if !is_alsw_letters(letters) {
        return Err(Error::Precondition("π|_v must be an ALSW".into()));
    }
    let shape = standard_shape(letters, 0);
    let start = ctx.left.len();
    let fixed = |i: usize| letter_bracket(&letters[i]).map(SpecialBracketing::Fixed);
    match &ctx.slot {
        Slot::Hole { .. } => {
            let end_v = start + v.breadth();
            let target = smallest_cover(&shape, start, end_v).ok_or_else(|| {
                Error::Precondition("no bracket starts at the isolated subword".into())
            })?;
            let (_, end) = target.span();
            let mut iso = SpecialBracketing::Slot;
            for r in lyndon_factorization(&letters[end_v..end]) {
                let r = (r.start + end_v)..(r.end + end_v);
                let c = Word::new(letters[r].to_vec());
                iso = SpecialBracketing::Bracket(
                    Box::new(iso),
                    Box::new(SpecialBracketing::Fixed(shirshov_bracket(&c)?)),
                );
            }
            rebuild(&shape, &mut |s| {
                if s == target {
                    Ok(Some(iso.clone()))
                } else {
                    Ok(None)
                }
            }, &fixed)
        }
        Slot::Inside {
            d,
            op,
            before,
            inner,
            after,
        } => {
            let leaf = SpecialBracketing::Op {
                d: *d,
                op: *op,
                before: before.iter().map(shirshov_bracket).collect::<Result<_>>()?,
                inner: Box::new(special_rec(inner, v)?),
                after: after.iter().map(shirshov_bracket).collect::<Result<_>>()?,
            };
            rebuild(&shape, &mut |s| {
                Ok(matches!(s, Shape::Leaf(i) if *i == start).then(|| leaf.clone()))
            }, &fixed)
        }
    }
}

fn smallest_cover(shape: &Shape, start: usize, end: usize) -> Option<&Shape> {
    let (s, e) = shape.span();
    if s > start || e < end {
        return None;
    }
    if let Shape::Node(l, r, _, _) = shape {
        if let Some(found) = smallest_cover(l, start, end).or_else(|| smallest_cover(r, start, end)) {
            return Some(found);
        }
    }
    (s == start).then_some(shape)
}

fn rebuild(
    shape: &Shape,
    replace: &mut dyn FnMut(&Shape) -> Result<Option<SpecialBracketing>>,
    fixed: &dyn Fn(usize) -> Result<SpecialBracketing>,
) -> Result<SpecialBracketing> {
    if let Some(r) = replace(shape)? {
        return Ok(r);
    }
    match shape {
        Shape::Leaf(i) => fixed(*i),
        Shape::Node(l, r, _, _) => Ok(SpecialBracketing::Bracket(
            Box::new(rebuild(l, replace, fixed)?),
            Box::new(rebuild(r, replace, fixed)?),
        )),
    }
}

/// `[π|_v]_v` together with its expansion, checked to lead with `π|_v`.
pub fn special_bracket_certified(
    alg: &Algebra,
    ctx: &Context,
    v: &Word,
) -> Result<(SpecialBracketing, Poly)> {
    let sb = special_bracket(ctx, v)?;
    let fill = alg.lie_expand(&shirshov_bracket(v)?);
    let expansion = sb.expand(alg, &fill);
    let whole = ctx.substitute(v)?;
    match expansion.leading() {
        Some((w, c)) if *w == whole && *c == Coeff::one() => Ok((sb, expansion)),
        _ => Err(Error::Precondition(
            "special bracketing does not lead with π|_v".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::term::Alphabet;

    fn x() -> Prime {
        Prime::gen(0)
    }
    fn y() -> Prime {
        Prime::gen(1)
    }
    fn z() -> Prime {
        Prime::gen(2)
    }
    fn w(ps: &[Prime]) -> Word {
        Word::new(ps.to_vec())
    }
    fn leaf(g: u32) -> NaWord {
        NaWord::gen(g)
    }
    fn p(u: Word) -> Prime {
        Prime::op(0, vec![u])
    }

    #[test]
    fn alsw_examples() {
        assert!(is_alsw(&w(&[x(), y()])));
        assert!(!is_alsw(&w(&[y(), x()])));
        assert!(!is_alsw(&w(&[x(), x()])));
        assert!(is_alsw(&w(&[x().lift(1), x()])));
        assert!(is_alsw(&w(&[x()])));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(shirshov_bracket(&w(&[x()])).unwrap(), leaf(0));
        assert_eq!(
            shirshov_bracket(&w(&[x(), x(), y()])).unwrap(),
            NaWord::bracket(leaf(0), NaWord::bracket(leaf(0), leaf(1)))
        );
        assert_eq!(
            shirshov_bracket(&w(&[x(), y(), z()])).unwrap(),
            NaWord::bracket(leaf(0), NaWord::bracket(leaf(1), leaf(2)))
        );
        assert!(matches!(
            shirshov_bracket(&w(&[y(), x()])),
            Err(Error::NotLyndon(_))
        ));
    }

    #[test]
    fn factorization_is_nondecreasing() {
        let letters = [y(), x(), y(), y(), x(), x(), y()];
        let parts = lyndon_factorization(&letters);
        let words: Vec<&[Prime]> = parts.iter().map(|r| &letters[r.clone()]).collect();
        assert_eq!(words.concat(), letters.to_vec());
        for part in &words {
            assert!(is_alsw_letters(part));
        }
        for pair in words.windows(2) {
            assert_ne!(lex_cmp(pair[0], pair[1]), Ordering::Greater);
        }
    }

    #[test]
    fn enumerate_small() {
        let alg = Algebra::new(Alphabet::standard(1), rat(0));
        let words = enumerate_alsw(&alg, 2);
        let expect = vec![w(&[x()]), w(&[x().lift(1)]), w(&[p(w(&[x()]))])];
        let mut expect_sorted = expect.clone();
        expect_sorted.sort();
        assert_eq!(words, expect_sorted);

        let deg3 = enumerate_alsw(&alg, 3);
        for must in [
            w(&[x().lift(2)]),
            w(&[p(w(&[x().lift(1)]))]),
            w(&[p(w(&[p(w(&[x()]))]))]),
            w(&[p(w(&[x()])).lift(1)]),
            w(&[x().lift(1), x()]),
            w(&[p(w(&[x()])), x()]),
        ] {
            assert!(deg3.contains(&must), "{must:?}");
        }
    }

    #[test]
    fn pure_two_letter_words() {
        let alg = Algebra::new(Alphabet::generators_only(2), rat(0));
        let two: Vec<Word> = enumerate_alsw(&alg, 2)
            .into_iter()
            .filter(|u| u.breadth() == 2 && u.primes().iter().all(|q| q.degree() == 1))
            .collect();
        assert_eq!(two, vec![w(&[x(), y()])]);
    }

    #[test]
    fn special_bracket_examples() {
        let alg = Algebra::new(Alphabet::standard(3), rat(1));
        // π = ⋆·y, v = x
        let ctx = Context::around(&[], &[y()]);
        let (sb, exp) = special_bracket_certified(&alg, &ctx, &w(&[x()])).unwrap();
        assert_eq!(sb.to_naword(&leaf(0)), NaWord::bracket(leaf(0), leaf(1)));
        assert_eq!(exp.len(), 2);

        // π = x·⋆·z, v = y
        let ctx = Context::around(&[x()], &[z()]);
        let (sb, exp) = special_bracket_certified(&alg, &ctx, &w(&[y()])).unwrap();
        assert_eq!(
            sb.to_naword(&leaf(1)),
            NaWord::bracket(leaf(0), NaWord::bracket(leaf(1), leaf(2)))
        );
        assert_eq!(exp.leading().unwrap().0, &w(&[x(), y(), z()]));

        // π = ⋆
        let v = w(&[x(), x(), y()]);
        let sb = special_bracket(&Context::hole(), &v).unwrap();
        assert_eq!(sb, SpecialBracketing::Slot);
    }

    #[test]
    fn fkm_matches_filter() {
        let letters = [x(), y(), z()];
        for n in 1..=6 {
            let direct = lyndon_words_of_length(&letters, n);
            let mut count = 0;
            let mut all = vec![Vec::<Prime>::new()];
            for _ in 0..n {
                all = all
                    .into_iter()
                    .flat_map(|pre| {
                        letters.iter().map(move |l| {
                            let mut v = pre.clone();
                            v.push(l.clone());
                            v
                        })
                    })
                    .collect();
            }
            for cand in &all {
                if is_alsw_letters(cand) {
                    count += 1;
                    assert!(direct.contains(cand));
                }
            }
            assert_eq!(direct.len(), count);
        }
    }
}
