//! Slow reference computations for the test suite. Nothing here calls the
//! reduction engine, the bracketing code or the Lyndon-Shirshov routines.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use num::{One, Zero};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::poly::{Coeff, Poly};
use crate::term::{NaPrime, NaWord, Prime, Word};

// Lex order used throughout: letters by `Prime` order, and a proper prefix is
// greater than any of its extensions.
fn lex(u: &[Prime], v: &[Prime]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        match a.cmp(b) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    v.len().cmp(&u.len())
}

/// `w = ab >_lex ba` for every split into nonempty `a`, `b`.
pub fn is_lyndon_by_rotations(w: &[Prime]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|k| {
        let rot: Vec<Prime> = w[k..].iter().chain(&w[..k]).cloned().collect();
        lex(w, &rot) == Ordering::Greater
    })
}

/// Length-`n` Lyndon-Shirshov words over `q` letters of equal degree, by
/// filtering all `q^n` words.
pub fn oracle_lyndon_count(q: u32, n: usize) -> usize {
    let letters: Vec<Prime> = (0..q).map(Prime::gen).collect();
    let mut count = 0;
    let mut idx = vec![0usize; n];
    loop {
        let w: Vec<Prime> = idx.iter().map(|&i| letters[i].clone()).collect();
        if is_lyndon_by_rotations(&w) {
            count += 1;
        }
        let mut k = n;
        loop {
            if k == 0 {
                return count;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < q as usize {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn all_bracketings(letters: &[Prime]) -> Vec<NaWord> {
    if letters.len() == 1 {
        return vec![leaf(&letters[0])];
    }
    let mut out = Vec::new();
    for k in 1..letters.len() {
        for l in all_bracketings(&letters[..k]) {
            for r in all_bracketings(&letters[k..]) {
                out.push(NaWord::bracket(l.clone(), r));
            }
        }
    }
    out
}

// Letters are treated as atoms; operator arguments are not bracketed.
fn leaf(p: &Prime) -> NaWord {
    let head = match p.head() {
        crate::term::Head::Gen(g) => crate::term::NaHead::Gen(*g),
        crate::term::Head::Op(o, args) => crate::term::NaHead::Op(
            *o,
            args.iter()
                .map(|a| {
                    let ps = a.primes();
                    if ps.len() == 1 {
                        leaf(&ps[0])
                    } else {
                        panic!("oracle bracketings need bracket-free arguments")
                    }
                })
                .collect(),
        ),
    };
    NaWord::Leaf(NaPrime { d: p.d_power(), head })
}

fn flat(t: &NaWord) -> Vec<Prime> {
    t.underlying().into_primes()
}

/// Conditions (a)-(c) of a nonassociative Lyndon-Shirshov word.
pub fn is_nlsw(t: &NaWord) -> bool {
    if !is_lyndon_by_rotations(&flat(t)) {
        return false;
    }
    match t {
        NaWord::Leaf(_) => true,
        NaWord::Bracket(v, w) => {
            if !is_nlsw(v) || !is_nlsw(w) {
                return false;
            }
            match &**v {
                NaWord::Bracket(_, v2) => lex(&flat(v2), &flat(w)) != Ordering::Greater,
                NaWord::Leaf(_) => true,
            }
        }
    }
}

/// The unique bracketing of `u` satisfying (a)-(c), found by trying all of them.
pub fn oracle_all_bracketings(u: &Word) -> Result<NaWord> {
    let found: Vec<NaWord> = all_bracketings(u.primes())
        .into_iter()
        .filter(is_nlsw)
        .collect();
    match found.len() {
        1 => Ok(found.into_iter().next().unwrap()),
        0 => Err(Error::NotLyndon(format!("{u:?}: no valid bracketing"))),
        n => Err(Error::Precondition(format!("{u:?}: {n} valid bracketings"))),
    }
}

/// `D` by the recursive product rule
/// `D(u·v) = D(u)·v + u·D(v) + λ·D(u)·D(v)`, peeling off the first prime.
pub fn oracle_apply_d(alg: &Algebra, p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (w, c) in p.iter() {
        out.add_scaled(&d_word(alg, w.primes()), c);
    }
    out
}

fn d_word(alg: &Algebra, primes: &[Prime]) -> Poly {
    let first = Poly::monomial(Word::from(primes[0].clone()));
    let d_first = Poly::monomial(Word::from(primes[0].lift(1)));
    if primes.len() == 1 {
        return d_first;
    }
    let rest = Poly::monomial(Word::new(primes[1..].to_vec()));
    let d_rest = d_word(alg, &primes[1..]);
    let mut out = alg.multiply(&d_first, &rest);
    out = out + alg.multiply(&first, &d_rest);
    out.add_scaled(&alg.multiply(&d_first, &d_rest), alg.lambda());
    out
}

/// Which operations generate the Lie algebra in [`oracle_quotient_dim`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub differential: bool,
    pub operators: bool,
    /// Refuse to hold more than this many basis vectors.
    pub max_rows: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            differential: true,
            operators: true,
            max_rows: 20_000,
        }
    }
}

// Row-echelon basis keyed by leading word.
struct Echelon {
    rows: BTreeMap<Word, Poly>,
    max_rows: usize,
}

impl Echelon {
    fn new(max_rows: usize) -> Self {
        Echelon {
            rows: BTreeMap::new(),
            max_rows,
        }
    }

    // Returns the reduced vector if it is new.
    fn insert(&mut self, mut p: Poly) -> Result<Option<Poly>> {
        while let Some((w, c)) = p.leading().map(|(w, c)| (w.clone(), c.clone())) {
            match self.rows.get(&w) {
                Some(row) => p.add_scaled(row, &-c),
                None => {
                    let p = p.scale(&c.recip());
                    if self.rows.len() >= self.max_rows {
                        return Err(Error::SizeOverflow(format!(
                            "more than {} basis vectors",
                            self.max_rows
                        )));
                    }
                    self.rows.insert(w, p.clone());
                    return Ok(Some(p));
                }
            }
        }
        Ok(None)
    }

    fn count_by_degree(&self, max_degree: u32) -> Vec<usize> {
        let mut out = vec![0; max_degree as usize];
        for w in self.rows.keys() {
            out[w.degree() as usize - 1] += 1;
        }
        out
    }
}

/// Per-degree dimensions `1..=max_degree` of the free (differential) Lie
/// Ω-algebra modulo the ideal generated by `rules`.
///
/// Let `F_n` be the span of Lie elements whose terms have degree `<= n`.
/// Pivots of a row-echelon basis are leading words, so counting pivots of
/// degree `k` in `F_n` and in `F_n ∩ I` gives the degree-`k` part of the
/// quotient.
///
/// The Lie algebra is graded, so `F_n` is closed from the generators under
/// `D`, the operators and brackets, one homogeneous component at a time.
/// `I` is not graded; `F_n ∩ I` is spanned by the elements built from a rule
/// by `D`, the operators and brackets with homogeneous Lie elements, each step
/// of which stays inside `F_n`. Those are generated without reduction.
/// This relies on `D` raising leading words monotonically on the rules; for
/// λ ≠ 0 that stops holding around degree 7, beyond the range this is used at.
pub fn oracle_quotient_dim(
    alg: &Algebra,
    rules: &[Poly],
    max_degree: u32,
    opts: OracleOptions,
) -> Result<Vec<usize>> {
    let ops: Vec<u32> = if opts.operators {
        let mut v = Vec::new();
        for (o, (name, arity)) in alg.alphabet().operators().iter().enumerate() {
            if *arity != 1 {
                return Err(Error::Precondition(format!("operator {name} is not unary")));
            }
            v.push(o as u32);
        }
        v
    } else {
        Vec::new()
    };
    let fits = |p: &Poly| !p.is_zero() && p.degree() <= max_degree;
    let unary = |p: &Poly| -> Vec<Poly> {
        let mut out = Vec::new();
        if opts.differential {
            out.push(oracle_apply_d(alg, p));
        }
        for &o in &ops {
            out.push(alg.apply_operator(o, std::slice::from_ref(p)).expect("unary"));
        }
        out
    };

    let mut span = Echelon::new(opts.max_rows);
    let mut queue: Vec<Poly> = (0..alg.alphabet().generators().len() as u32)
        .map(|g| Poly::monomial(Word::gen(g)))
        .filter(|p| fits(p))
        .collect();
    let mut basis: Vec<Poly> = Vec::new();
    while let Some(p) = queue.pop() {
        for part in homogeneous_parts(&p) {
            let Some(r) = span.insert(part)? else { continue };
            queue.extend(unary(&r).into_iter().filter(|q| fits(q)));
            for b in &basis {
                let q = alg.bracket(&r, b);
                if fits(&q) {
                    queue.push(q);
                }
            }
            basis.push(r);
        }
    }

    let mut ideal = Echelon::new(opts.max_rows);
    let mut seen = HashSet::new();
    let mut queue: Vec<Poly> = rules.iter().filter(|p| fits(p)).cloned().collect();
    while let Some(p) = queue.pop() {
        let lc = p.leading().expect("nonzero").1.recip();
        if !seen.insert(p.scale(&lc).iter().map(|(w, c)| (w.clone(), c.clone())).collect::<Vec<_>>()) {
            continue;
        }
        if seen.len() > opts.max_rows * 10 {
            return Err(Error::SizeOverflow(format!("more than {} ideal elements", seen.len())));
        }
        queue.extend(unary(&p).into_iter().filter(|q| fits(q)));
        for b in &basis {
            let q = alg.bracket(&p, b);
            if fits(&q) {
                queue.push(q);
            }
        }
        ideal.insert(p)?;
    }

    let v = span.count_by_degree(max_degree);
    let i = ideal.count_by_degree(max_degree);
    Ok(v.iter().zip(&i).map(|(a, b)| a - b).collect())
}

fn homogeneous_parts(p: &Poly) -> Vec<Poly> {
    let mut parts: BTreeMap<u32, Poly> = BTreeMap::new();
    for (w, c) in p.iter() {
        parts.entry(w.degree()).or_insert_with(Poly::zero).add_term(w.clone(), c.clone());
    }
    parts.into_values().collect()
}

/// `Σ_{d | n} μ(d) q^{n/d} / n`, the classical necklace count.
pub fn necklace_lyndon_count(q: u64, n: u64) -> u64 {
    let mobius = |mut m: u64| -> i64 {
        let mut result = 1;
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                m /= p;
                if m.is_multiple_of(p) {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if m > 1 {
            result = -result;
        }
        result
    };
    let total: i64 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(d) * q.pow((n / d) as u32) as i64)
        .sum();
    (total / n as i64) as u64
}

/// Coefficient-wise check that `p` is zero, for readable assertions.
pub fn is_zero(p: &Poly) -> bool {
    p.iter().all(|(_, c)| c.is_zero())
}

/// `λ^k`.
pub fn lambda_pow(alg: &Algebra, k: u32) -> Coeff {
    (0..k).fold(Coeff::one(), |acc, _| acc * alg.lambda())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::term::Alphabet;

    fn w(gs: &[u32]) -> Word {
        Word::new(gs.iter().map(|&g| Prime::gen(g)).collect())
    }

    #[test]
    fn lyndon_counts() {
        assert_eq!(oracle_lyndon_count(2, 1), 2);
        assert_eq!(oracle_lyndon_count(2, 5), 6);
        assert_eq!(oracle_lyndon_count(3, 3), 8);
        for q in 2..=3 {
            for n in 1..=6 {
                assert_eq!(oracle_lyndon_count(q, n) as u64, necklace_lyndon_count(q as u64, n as u64));
            }
        }
    }

    #[test]
    fn bracketing_examples() {
        let (x, y, z) = (NaWord::gen(0), NaWord::gen(1), NaWord::gen(2));
        assert_eq!(
            oracle_all_bracketings(&w(&[0, 1])).unwrap(),
            NaWord::bracket(x.clone(), y.clone())
        );
        assert_eq!(
            oracle_all_bracketings(&w(&[0, 0, 1])).unwrap(),
            NaWord::bracket(x.clone(), NaWord::bracket(x.clone(), y.clone()))
        );
        assert_eq!(
            oracle_all_bracketings(&w(&[0, 1, 2])).unwrap(),
            NaWord::bracket(x, NaWord::bracket(y, z))
        );
        assert!(oracle_all_bracketings(&w(&[1, 0])).is_err());
    }

    #[test]
    fn recursive_d_example() {
        let alg = Algebra::new(Alphabet::standard(3), rat(2));
        let got = oracle_apply_d(&alg, &w(&[0, 1, 2]).into());
        assert_eq!(got.len(), 7);
        let all = Word::new((0..3).map(|g| Prime::gen(g).lift(1)).collect());
        assert_eq!(got.coeff(&all), rat(4));
    }

    #[test]
    fn quotient_dim_examples() {
        let pure = OracleOptions {
            differential: false,
            operators: false,
            ..OracleOptions::default()
        };
        let alg = Algebra::new(Alphabet::generators_only(2), rat(0));
        assert_eq!(oracle_quotient_dim(&alg, &[], 2, pure).unwrap(), vec![2, 1]);
        assert_eq!(oracle_quotient_dim(&alg, &[], 5, pure).unwrap(), vec![2, 1, 2, 3, 6]);
    }

    #[test]
    fn drbl_quotient_dims() {
        let sys = crate::drbl::DrblSystem::standard(1, rat(1));
        let alg = Algebra::new(Alphabet::standard(1), rat(1));
        let rules: Vec<Poly> = sys.instantiate_rules(3).iter().map(|r| r.poly().clone()).collect();
        let dims = oracle_quotient_dim(&alg, &rules, 3, OracleOptions::default()).unwrap();
        assert_eq!(dims, vec![1, 2, 5]);
    }
}
