//! The free λ-differential associative Ω-algebra: polynomial arithmetic,
//! operator application, the differential operator and Lie expansion.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coeff, Poly};
use crate::term::{Alphabet, Context, Head, NaHead, NaWord, OpId, Prime, Word};

/// An alphabet together with the weight λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    alphabet: Alphabet,
    lambda: Coeff,
}

impl Algebra {
    pub fn new(alphabet: Alphabet, lambda: Coeff) -> Self {
        Algebra { alphabet, lambda }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn lambda(&self) -> &Coeff {
        &self.lambda
    }

    pub fn weight_is_zero(&self) -> bool {
        self.lambda.is_zero()
    }

    pub fn multiply(&self, p: &Poly, q: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (u, a) in p.iter() {
            for (v, b) in q.iter() {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    /// `pq - qp`.
    pub fn bracket(&self, p: &Poly, q: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (u, a) in p.iter() {
            for (v, b) in q.iter() {
                let c = a * b;
                out.add_term(u.concat(v), c.clone());
                out.add_term(v.concat(u), -c);
            }
        }
        out
    }

    /// The multilinear extension of `ω`.
    pub fn apply_operator(&self, op: OpId, args: &[Poly]) -> Result<Poly> {
        let Some((name, arity)) = self.alphabet.operators().get(op as usize) else {
            return Err(Error::UnknownSymbol(format!("operator #{op}")));
        };
        if args.len() != *arity {
            return Err(Error::ArityMismatch {
                name: name.clone(),
                expected: *arity,
                got: args.len(),
            });
        }
        Ok(operator_poly(op, 0, args))
    }

    /// `D` extended linearly, through the closed-form subset expansion.
    pub fn apply_d(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in p.iter() {
            self.add_d_of_word(&mut out, w, c);
        }
        out
    }

    pub fn apply_d_word(&self, w: &Word) -> Poly {
        let mut out = Poly::zero();
        self.add_d_of_word(&mut out, w, &Coeff::one());
        out
    }

    // D(u_1...u_n) = Σ_{∅≠T} λ^{|T|-1} Π D^{[i∈T]}(u_i)
    fn add_d_of_word(&self, out: &mut Poly, w: &Word, c: &Coeff) {
        let primes = w.primes();
        let n = primes.len();
        if self.lambda.is_zero() || n == 1 {
            for k in 0..n {
                let mut ps = primes.to_vec();
                ps[k] = ps[k].lift(1);
                out.add_term(Word::new(ps), c.clone());
            }
            return;
        }
        assert!(n < 31, "word too wide for subset expansion");
        let mut powers = vec![c.clone()];
        for t in 1..n {
            let next = &powers[t - 1] * &self.lambda;
            powers.push(next);
        }
        for mask in 1u32..(1 << n) {
            let ps: Vec<Prime> = primes
                .iter()
                .enumerate()
                .map(|(k, p)| if mask >> k & 1 == 1 { p.lift(1) } else { p.clone() })
                .collect();
            let t = mask.count_ones() as usize;
            out.add_term(Word::new(ps), powers[t - 1].clone());
        }
    }

    pub fn apply_d_pow(&self, p: &Poly, i: u32) -> Poly {
        let mut q = p.clone();
        for _ in 0..i {
            q = self.apply_d(&q);
        }
        q
    }

    pub fn leading(&self, p: &Poly) -> Result<(Word, Coeff)> {
        p.leading()
            .map(|(w, c)| (w.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Leading word and coefficient of `D^i(u)` without expanding it.
    pub fn d_power_leading(&self, u: &Word, i: u32) -> (Word, Coeff) {
        if i == 0 {
            return (u.clone(), Coeff::one());
        }
        let primes = u.primes();
        if self.lambda.is_zero() {
            let mut ps = primes.to_vec();
            ps[0] = ps[0].lift(i);
            (Word::new(ps), Coeff::one())
        } else {
            let ps = primes.iter().map(|p| p.lift(i)).collect();
            let exp = (primes.len() as i32 - 1) * i as i32;
            (Word::new(ps), num::pow::pow(self.lambda.clone(), exp as usize))
        }
    }

    /// Expands every bracket `(ab)` into `ab - ba`.
    pub fn lie_expand(&self, t: &NaWord) -> Poly {
        match t {
            NaWord::Bracket(l, r) => self.bracket(&self.lie_expand(l), &self.lie_expand(r)),
            NaWord::Leaf(p) => match &p.head {
                NaHead::Gen(g) => Poly::monomial(Word::from(Prime::new(p.d, Head::Gen(*g)))),
                NaHead::Op(op, args) => {
                    let args: Vec<Poly> = args.iter().map(|a| self.lie_expand(a)).collect();
                    operator_poly(*op, p.d, &args)
                }
            },
        }
    }

    /// `π|_q` for a polynomial `q`; a hole under `D^d` applies `D^d` to `q` first.
    pub fn substitute_poly(&self, ctx: &Context, q: &Poly) -> Poly {
        let d = ctx.hole_d_power();
        if d > 0 {
            let lifted = self.apply_d_pow(q, d);
            return self.substitute_poly(&ctx.with_hole_d_power(0), &lifted);
        }
        q.map_words(|w| ctx.substitute(w).expect("plain hole accepts any word"))
    }
}

/// `D^d(ω(args))` for polynomial arguments, expanded multilinearly.
pub(crate) fn operator_poly(op: OpId, d: u32, args: &[Poly]) -> Poly {
    let mut partial: Vec<(Vec<Word>, Coeff)> = vec![(Vec::new(), Coeff::one())];
    for arg in args {
        let mut next = Vec::with_capacity(partial.len() * arg.len());
        for (ws, c) in &partial {
            for (w, k) in arg.iter() {
                let mut ws = ws.clone();
                ws.push(w.clone());
                next.push((ws, c * k));
            }
        }
        partial = next;
    }
    let mut out = Poly::zero();
    for (ws, c) in partial {
        out.add_term(Word::from(Prime::new(d, Head::Op(op, ws))), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn alg(lambda: i64) -> Algebra {
        Algebra::new(Alphabet::standard(3), rat(lambda))
    }
    fn x() -> Word {
        Word::gen(0)
    }
    fn y() -> Word {
        Word::gen(1)
    }
    fn z() -> Word {
        Word::gen(2)
    }
    fn mono(ps: &[Word]) -> Word {
        Word::new(ps.iter().flat_map(|w| w.primes().to_vec()).collect())
    }
    fn d(w: &Word, k: u32) -> Word {
        Word::from(w.as_prime().unwrap().lift(k))
    }
    fn p(w: Word) -> Word {
        Word::from(Prime::op(0, vec![w]))
    }

    #[test]
    fn multiply_examples() {
        let a = alg(0);
        assert_eq!(
            a.multiply(&x().into(), &y().into()),
            Poly::monomial(mono(&[x(), y()]))
        );
        let lhs = a.multiply(&(&Poly::from(x()) + &Poly::from(y())), &x().into());
        let rhs = &Poly::monomial(mono(&[x(), x()])) + &Poly::monomial(mono(&[y(), x()]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn operator_examples() {
        let a = alg(0);
        assert_eq!(a.apply_operator(0, &[x().into()]).unwrap(), Poly::monomial(p(x())));
        let arg: Poly = [(x(), rat(1)), (y(), rat(2))].into_iter().collect();
        let expect: Poly = [(p(x()), rat(1)), (p(y()), rat(2))].into_iter().collect();
        assert_eq!(a.apply_operator(0, &[arg]).unwrap(), expect);
        assert!(a.apply_operator(0, &[Poly::zero()]).unwrap().is_zero());
        assert!(matches!(
            a.apply_operator(0, &[x().into(), y().into()]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn d_examples() {
        let a = alg(3);
        let got = a.apply_d(&mono(&[x(), y()]).into());
        let expect: Poly = [
            (mono(&[d(&x(), 1), y()]), rat(1)),
            (mono(&[x(), d(&y(), 1)]), rat(1)),
            (mono(&[d(&x(), 1), d(&y(), 1)]), rat(3)),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, expect);
        assert_eq!(a.apply_d(&p(x()).into()), Poly::monomial(d(&p(x()), 1)));

        let a = alg(2);
        let got = a.apply_d(&mono(&[x(), y(), z()]).into());
        assert_eq!(got.len(), 7);
        assert_eq!(got.coeff(&mono(&[d(&x(), 1), y(), z()])), rat(1));
        assert_eq!(got.coeff(&mono(&[d(&x(), 1), y(), d(&z(), 1)])), rat(2));
        assert_eq!(got.coeff(&mono(&[d(&x(), 1), d(&y(), 1), d(&z(), 1)])), rat(4));
    }

    #[test]
    fn leading_examples() {
        let a = alg(0);
        let q = &Poly::from(x()) + &Poly::from(y());
        assert_eq!(a.leading(&q).unwrap(), (x(), rat(1)));
        let q = &Poly::from(mono(&[x(), y()])) - &Poly::from(mono(&[y(), x()]));
        assert_eq!(a.leading(&q).unwrap(), (mono(&[x(), y()]), rat(1)));
        let q: Poly = [(p(x()), rat(3)), (d(&x(), 1), rat(-5))].into_iter().collect();
        assert_eq!(a.leading(&q).unwrap(), (p(x()), rat(3)));
        assert_eq!(a.leading(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn d_power_leading_examples() {
        let xy = mono(&[x(), y()]);
        assert_eq!(
            alg(0).d_power_leading(&xy, 2),
            (mono(&[d(&x(), 2), y()]), rat(1))
        );
        assert_eq!(
            alg(2).d_power_leading(&xy, 1),
            (mono(&[d(&x(), 1), d(&y(), 1)]), rat(2))
        );
        assert_eq!(alg(5).d_power_leading(&xy, 0), (xy, rat(1)));
    }

    #[test]
    fn lie_expand_examples() {
        let a = alg(0);
        let xy = NaWord::bracket(NaWord::gen(0), NaWord::gen(1));
        let expect = &Poly::from(mono(&[x(), y()])) - &Poly::from(mono(&[y(), x()]));
        assert_eq!(a.lie_expand(&xy), expect);
        assert_eq!(a.lie_expand(&NaWord::gen(0)), Poly::from(x()));
        let xxy = NaWord::bracket(NaWord::gen(0), xy);
        let expect: Poly = [
            (mono(&[x(), x(), y()]), rat(1)),
            (mono(&[x(), y(), x()]), rat(-2)),
            (mono(&[y(), x(), x()]), rat(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(a.lie_expand(&xxy), expect);
    }

    #[test]
    fn substitute_poly_applies_hole_powers() {
        let a = alg(1);
        let ctx = Context::around(&[], &y().into_primes()).with_hole_d_power(1);
        let got = a.substitute_poly(&ctx, &mono(&[x(), z()]).into());
        let expect = a.multiply(&a.apply_d(&mono(&[x(), z()]).into()), &y().into());
        assert_eq!(got, expect);
    }
}
