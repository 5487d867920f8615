//! Finite linear combinations of words with exact rational coefficients.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};

use crate::term::Word;

pub type Coeff = BigRational;

pub fn rat(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Terms are kept sorted by Deg-lex, so the leading term is the last entry.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Word, Coeff>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn monomial(w: Word) -> Self {
        Poly::term(w, Coeff::one())
    }

    pub fn term(w: Word, c: Coeff) -> Self {
        let mut p = Poly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading word and coefficient.
    pub fn leading(&self) -> Option<(&Word, &Coeff)> {
        self.terms.last_key_value()
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.last_key_value().map(|(w, _)| w)
    }

    pub fn coeff(&self, w: &Word) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Terms in ascending Deg-lex order.
    pub fn iter(&self) -> btree_map::Iter<'_, Word, Coeff> {
        self.terms.iter()
    }

    /// Terms from the leading one down.
    pub fn iter_desc(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter().rev()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    /// Largest degree among the monomials, 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        for (w, k) in &other.terms {
            self.add_term(w.clone(), k * c);
        }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    pub fn remove(&mut self, w: &Word) -> Option<Coeff> {
        self.terms.remove(w)
    }

    /// Applies `f` to every word, collecting like terms.
    pub fn map_words(&self, mut f: impl FnMut(&Word) -> Word) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }
}

impl From<Word> for Poly {
    fn from(w: Word) -> Self {
        Poly::monomial(w)
    }
}

impl FromIterator<(Word, Coeff)> for Poly {
    fn from_iter<I: IntoIterator<Item = (Word, Coeff)>>(iter: I) -> Self {
        let mut p = Poly::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Coeff::one());
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Coeff::one());
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Coeff::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_pruning() {
        let x = Word::gen(0);
        let mut p = Poly::monomial(x.clone());
        p.add_term(x.clone(), rat(-1));
        assert!(p.is_zero());
        let q = &Poly::monomial(x.clone()) - &Poly::monomial(x);
        assert_eq!(q, Poly::zero());
    }

    #[test]
    fn leading_is_greatest() {
        let p: Poly = [(Word::gen(1), rat(2)), (Word::gen(0), rat(3))].into_iter().collect();
        assert_eq!(p.leading(), Some((&Word::gen(0), &rat(3))));
    }
}
