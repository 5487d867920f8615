//! Term syntax and the `dlrb` command line.
//!
//! ```text
//! poly   := mono (("+" | "-") mono)*
//! mono   := [rat] factor ("*" factor)*
//! factor := prime | "[" naword naword "]"
//! prime  := "D^" nat "(" prime ")" | "D(" prime ")" | head
//! head   := ident | opname "(" poly ("," poly)* ")"
//! naword := prime | "[" naword naword "]"
//! rat    := int ["/" nat]
//! ```
//!
//! Whitespace between factors is an implicit product. A leading `-` is allowed.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num::{BigInt, One, Signed, Zero};
use serde_json::json;

use crate::algebra::{operator_poly, Algebra};
use crate::drbl::DrblSystem;
use crate::error::{Error, Result};
use crate::gsb::{is_gsb, reduce_assoc, LieForm, Mode, Rewriter, RuleSet};
use crate::lyndon::{enumerate_alsw, is_alsw, lyndon_words_of_length, shirshov_bracket};
use crate::oracle::{oracle_quotient_dim, OracleOptions};
use crate::poly::{Coeff, Poly};
use crate::term::{Alphabet, Head, NaHead, NaPrime, NaWord, Prime, Word};

/// A parsed expression: a single bracketed word, or a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Poly(Poly),
    Na(NaWord),
}

impl Term {
    pub fn to_poly(&self, alg: &Algebra) -> Poly {
        match self {
            Term::Poly(p) => p.clone(),
            Term::Na(t) => alg.lie_expand(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(s[start..i].parse().expect("digits"))));
        } else if "()[]+-*/^,".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax {
                pos: i,
                msg: format!("unexpected character `{}`", s[i..].chars().next().unwrap()),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Factor {
    Prime(u32, PHead),
    Bracket(Box<Factor>, Box<Factor>),
}

#[derive(Clone, Debug)]
enum PHead {
    Gen(u32),
    Op(u32, Vec<Sum>),
}

type Sum = Vec<(Coeff, Vec<Factor>)>;

struct TermParser<'a> {
    alphabet: &'a Alphabet,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a> TermParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn sum(&mut self) -> Result<Sum> {
        let mut out = Vec::new();
        let mut sign = if self.eat('-') { -Coeff::one() } else { Coeff::one() };
        loop {
            let (c, fs) = self.mono()?;
            out.push((sign * c, fs));
            sign = if self.eat('+') {
                Coeff::one()
            } else if self.eat('-') {
                -Coeff::one()
            } else {
                return Ok(out);
            };
        }
    }

    fn mono(&mut self) -> Result<(Coeff, Vec<Factor>)> {
        let mut c = Coeff::one();
        if let Some(Tok::Int(n)) = self.peek().cloned() {
            self.pos += 1;
            let mut d = BigInt::one();
            if self.eat('/') {
                match self.peek().cloned() {
                    Some(Tok::Int(m)) if !m.is_zero() => {
                        self.pos += 1;
                        d = m;
                    }
                    _ => return self.err("expected a nonzero denominator"),
                }
            }
            c = Coeff::new(n, d);
            if !self.starts_factor() {
                if c.is_zero() {
                    return Ok((c, Vec::new()));
                }
                return self.err("constant terms are not allowed");
            }
        }
        let mut fs = vec![self.factor()?];
        loop {
            if self.eat('*') || self.starts_factor() {
                fs.push(self.factor()?);
            } else {
                return Ok((c, fs));
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Sym('[')))
    }

    fn factor(&mut self) -> Result<Factor> {
        if self.eat('[') {
            let l = self.factor()?;
            let r = self.factor()?;
            self.expect(']')?;
            return Ok(Factor::Bracket(Box::new(l), Box::new(r)));
        }
        let (d, h) = self.prime()?;
        Ok(Factor::Prime(d, h))
    }

    fn prime(&mut self) -> Result<(u32, PHead)> {
        let start = self.here();
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return self.err("expected a symbol");
        };
        self.pos += 1;
        if name == "D" {
            let mut k = 1u32;
            if self.eat('^') {
                match self.peek().cloned() {
                    Some(Tok::Int(n)) => {
                        self.pos += 1;
                        k = u32::try_from(n).or_else(|_| self.err("exponent too large"))?;
                    }
                    _ => return self.err("expected an exponent"),
                }
            }
            self.expect('(')?;
            let (d, h) = self.prime()?;
            self.expect(')')?;
            return Ok((d + k, h));
        }
        if self.peek() == Some(&Tok::Sym('(')) {
            let Some(op) = self.alphabet.operator_id(&name) else {
                return Err(Error::UnknownSymbol(name));
            };
            self.pos += 1;
            let mut args = vec![self.sum()?];
            while self.eat(',') {
                args.push(self.sum()?);
            }
            self.expect(')')?;
            let expected = self.alphabet.arity(op);
            if args.len() != expected {
                return Err(Error::ArityMismatch {
                    name,
                    expected,
                    got: args.len(),
                });
            }
            return Ok((0, PHead::Op(op, args)));
        }
        match self.alphabet.generator_id(&name) {
            Some(g) => Ok((0, PHead::Gen(g))),
            None if self.alphabet.operator_id(&name).is_some() => Err(Error::Syntax {
                pos: start,
                msg: format!("operator `{name}` needs arguments"),
            }),
            None => Err(Error::UnknownSymbol(name)),
        }
    }
}

fn sum_to_poly(alg: &Algebra, s: &Sum) -> Poly {
    let mut out = Poly::zero();
    for (c, fs) in s {
        if fs.is_empty() {
            continue;
        }
        let mut p = factor_to_poly(alg, &fs[0]);
        for f in &fs[1..] {
            p = alg.multiply(&p, &factor_to_poly(alg, f));
        }
        out.add_scaled(&p, c);
    }
    out
}

fn factor_to_poly(alg: &Algebra, f: &Factor) -> Poly {
    match f {
        Factor::Bracket(l, r) => alg.bracket(&factor_to_poly(alg, l), &factor_to_poly(alg, r)),
        Factor::Prime(d, PHead::Gen(g)) => Poly::monomial(Word::from(Prime::gen(*g).lift(*d))),
        Factor::Prime(d, PHead::Op(o, args)) => {
            let args: Vec<Poly> = args.iter().map(|a| sum_to_poly(alg, a)).collect();
            operator_poly(*o, *d, &args)
        }
    }
}

fn factor_to_naword(f: &Factor) -> Option<NaWord> {
    match f {
        Factor::Bracket(l, r) => Some(NaWord::bracket(factor_to_naword(l)?, factor_to_naword(r)?)),
        Factor::Prime(d, PHead::Gen(g)) => Some(NaWord::Leaf(NaPrime {
            d: *d,
            head: NaHead::Gen(*g),
        })),
        Factor::Prime(d, PHead::Op(o, args)) => {
            let args = args
                .iter()
                .map(|a| match a.as_slice() {
                    [(c, fs)] if c.is_one() && fs.len() == 1 => factor_to_naword(&fs[0]),
                    _ => None,
                })
                .collect::<Option<Vec<_>>>()?;
            Some(NaWord::Leaf(NaPrime {
                d: *d,
                head: NaHead::Op(*o, args),
            }))
        }
    }
}

/// Parses an expression. A single factor with coefficient 1 that has a
/// bracket somewhere, and whose operator arguments are themselves bracketed
/// words, stays a bracketed word; anything else is expanded into a polynomial.
pub fn parse_term(alg: &Algebra, s: &str) -> Result<Term> {
    let toks = lex(s)?;
    let mut p = TermParser {
        alphabet: alg.alphabet(),
        toks,
        pos: 0,
        end: s.len(),
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let sum = p.sum()?;
    if p.peek().is_some() {
        return p.err("unexpected token");
    }
    if let [(c, fs)] = sum.as_slice() {
        if let ([f], true) = (fs.as_slice(), c.is_one()) {
            if let Some(t) = factor_to_naword(f) {
                if !t.is_bracket_free() {
                    return Ok(Term::Na(t));
                }
            }
        }
    }
    Ok(Term::Poly(sum_to_poly(alg, &sum)))
}

pub fn parse_poly(alg: &Algebra, s: &str) -> Result<Poly> {
    Ok(parse_term(alg, s)?.to_poly(alg))
}

/// Parses a single word with coefficient 1, such as `x1 D(x2) P(x1 x2)`.
pub fn parse_word(alg: &Algebra, s: &str) -> Result<Word> {
    let p = parse_poly(alg, s)?;
    match p.leading() {
        Some((w, c)) if p.len() == 1 && c.is_one() => Ok(w.clone()),
        _ => Err(Error::Syntax {
            pos: 0,
            msg: "expected a single word".into(),
        }),
    }
}

pub fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn wrap_d(d: u32, inner: String) -> String {
    match d {
        0 => inner,
        1 => format!("D({inner})"),
        _ => format!("D^{d}({inner})"),
    }
}

pub fn format_prime(a: &Alphabet, p: &Prime) -> String {
    let head = match p.head() {
        Head::Gen(g) => a.generator_name(*g).to_string(),
        Head::Op(o, args) => {
            let args: Vec<String> = args.iter().map(|w| format_word_sep(a, w, " ")).collect();
            format!("{}({})", a.operator_name(*o), args.join(", "))
        }
    };
    wrap_d(p.d_power(), head)
}

fn format_word_sep(a: &Alphabet, w: &Word, sep: &str) -> String {
    let parts: Vec<String> = w.primes().iter().map(|p| format_prime(a, p)).collect();
    parts.join(sep)
}

/// Top-level words join primes with ` * `.
pub fn format_word(a: &Alphabet, w: &Word) -> String {
    format_word_sep(a, w, " * ")
}

pub fn format_naword(a: &Alphabet, t: &NaWord) -> String {
    match t {
        NaWord::Bracket(l, r) => format!("[{} {}]", format_naword(a, l), format_naword(a, r)),
        NaWord::Leaf(p) => {
            let head = match &p.head {
                NaHead::Gen(g) => a.generator_name(*g).to_string(),
                NaHead::Op(o, args) => {
                    let args: Vec<String> = args.iter().map(|t| format_naword(a, t)).collect();
                    format!("{}({})", a.operator_name(*o), args.join(", "))
                }
            };
            wrap_d(p.d, head)
        }
    }
}

fn format_sum<'t>(terms: impl Iterator<Item = (String, &'t Coeff)>) -> String {
    let mut out = String::new();
    for (i, (body, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format_coeff(&abs));
            out.push(' ');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Leading term first.
pub fn format_poly(a: &Alphabet, p: &Poly) -> String {
    format_sum(p.iter_desc().map(|(w, c)| (format_word(a, w), c)))
}

pub fn format_lie(a: &Alphabet, f: &LieForm) -> String {
    format_sum(f.terms.iter().map(|(t, c)| (format_naword(a, t), c)))
}

pub fn format_term(a: &Alphabet, t: &Term) -> String {
    match t {
        Term::Poly(p) => format_poly(a, p),
        Term::Na(t) => format_naword(a, t),
    }
}

/// Parses `p/q`, `p`, or a negative of either.
pub fn parse_rational(s: &str) -> std::result::Result<Coeff, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| format!("not a rational: {s}"))?;
    let d: BigInt = d.trim().parse().map_err(|_| format!("not a rational: {s}"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Coeff::new(n, d))
}

/// Highest `k` with `xk` appearing in the text, at least 1.
fn infer_generators(expr: &str) -> usize {
    let mut n = 1;
    for tok in expr.split(|c: char| !c.is_ascii_alphanumeric() && c != '_') {
        if let Some(k) = tok.strip_prefix('x').and_then(|k| k.parse::<usize>().ok()) {
            n = n.max(k);
        }
    }
    n
}

#[derive(Parser, Debug)]
#[command(name = "dlrb", version, about = "Normal forms and bases in free differential Lie Rota-Baxter algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Lie,
    Assoc,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SystemArg {
    Drbl,
    S1,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Normal form of an expression modulo the Rota-Baxter system.
    Nf {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        lambda: Coeff,
        #[arg(long, value_enum, default_value = "lie")]
        mode: ModeArg,
        #[arg(long)]
        max_deg: u32,
        /// Number of generators; inferred from the expression by default.
        #[arg(long)]
        gens: Option<usize>,
        expr: String,
    },
    /// Linear basis of the free algebra, grouped by degree.
    Basis {
        #[arg(long)]
        gens: usize,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        lambda: Coeff,
        #[arg(long)]
        max_deg: u32,
        #[arg(long)]
        json: bool,
    },
    /// Lyndon-Shirshov words with their standard bracketing.
    Lyndon {
        #[arg(long)]
        gens: usize,
        #[arg(long)]
        max_deg: u32,
        /// Plain generators only, no D and no P.
        #[arg(long)]
        pure: bool,
    },
    /// Standard bracketing of a Lyndon-Shirshov word.
    Bracket {
        #[arg(long)]
        gens: Option<usize>,
        word: String,
    },
    /// Bounded Gröbner-Shirshov check; exits 1 if a composition is not certified.
    CheckGsb {
        #[arg(long, value_enum)]
        system: SystemArg,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        lambda: Coeff,
        #[arg(long)]
        max_deg: u32,
        #[arg(long, default_value_t = 2)]
        gens: usize,
        #[arg(long, value_enum, default_value = "lie")]
        mode: ModeArg,
    },
    /// Basis counts against a brute-force quotient dimension; exits 1 on mismatch.
    OracleDim {
        #[arg(long)]
        gens: usize,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        lambda: Coeff,
        #[arg(long)]
        max_deg: u32,
    },
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Lie => Mode::Lie,
            ModeArg::Assoc => Mode::Assoc,
        }
    }
}

fn check_gens(n: usize) -> Result<usize> {
    if n == 0 {
        Err(Error::Precondition("at least one generator is required".into()))
    } else {
        Ok(n)
    }
}

/// Runs the command line; returns the exit status. 0 is success, 1 a failed
/// check, 2 bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Precondition(format!("output: {e}"))
}

fn execute(cmd: Cmd, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Cmd::Nf {
            lambda,
            mode,
            max_deg,
            gens,
            expr,
        } => {
            let n = check_gens(gens.unwrap_or_else(|| infer_generators(&expr)))?;
            let sys = DrblSystem::standard(n, lambda);
            let alg = sys.algebra();
            let p = parse_term(alg, &expr)?.to_poly(alg);
            let text = match mode {
                ModeArg::Lie => format_lie(alg.alphabet(), &sys.drbl_nf(&p, max_deg)?),
                ModeArg::Assoc => {
                    let degree = p.degree();
                    if degree > max_deg {
                        return Err(Error::DegreeOverflow {
                            degree,
                            bound: max_deg,
                        });
                    }
                    format_poly(alg.alphabet(), &reduce_assoc(&p, &sys))
                }
            };
            writeln!(out, "{text}").map_err(io)?;
            Ok(0)
        }
        Cmd::Basis {
            gens,
            lambda,
            max_deg,
            json,
        } => {
            let sys = DrblSystem::standard(check_gens(gens)?, lambda);
            if json {
                let v = basis_json(&sys, max_deg);
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)?;
            } else {
                let a = sys.algebra().alphabet();
                for (d, group) in sys.enumerate_basis(max_deg) {
                    writeln!(out, "degree {d}: {}", group.len()).map_err(io)?;
                    for t in group {
                        writeln!(out, "  {}", format_naword(a, &t)).map_err(io)?;
                    }
                }
            }
            Ok(0)
        }
        Cmd::Lyndon {
            gens,
            max_deg,
            pure,
        } => {
            let alg = Algebra::new(Alphabet::standard(check_gens(gens)?), Coeff::zero());
            let words: Vec<Word> = if pure {
                let letters: Vec<Prime> = (0..gens as u32).map(Prime::gen).collect();
                (1..=max_deg as usize)
                    .flat_map(|n| {
                        let mut ws: Vec<Word> = lyndon_words_of_length(&letters, n)
                            .into_iter()
                            .map(Word::new)
                            .collect();
                        ws.sort();
                        ws
                    })
                    .collect()
            } else {
                enumerate_alsw(&alg, max_deg)
            };
            for w in words {
                let t = shirshov_bracket(&w)?;
                writeln!(
                    out,
                    "{}\t{}",
                    format_word(alg.alphabet(), &w),
                    format_naword(alg.alphabet(), &t)
                )
                .map_err(io)?;
            }
            Ok(0)
        }
        Cmd::Bracket { gens, word } => {
            let n = check_gens(gens.unwrap_or_else(|| infer_generators(&word)))?;
            let alg = Algebra::new(Alphabet::standard(n), Coeff::zero());
            let w = parse_word(&alg, &word)?;
            if !is_alsw(&w) {
                return Err(Error::NotLyndon(format_word(alg.alphabet(), &w)));
            }
            writeln!(out, "{}", format_naword(alg.alphabet(), &shirshov_bracket(&w)?)).map_err(io)?;
            Ok(0)
        }
        Cmd::CheckGsb {
            system,
            lambda,
            max_deg,
            gens,
            mode,
        } => {
            let sys = DrblSystem::standard(check_gens(gens)?, lambda);
            let rules = match system {
                SystemArg::Drbl => sys.instantiate_rules(max_deg),
                SystemArg::S1 => sys.s1_rules(max_deg),
            };
            let rs = RuleSet::new(sys.algebra(), rules, max_deg);
            let report = is_gsb(&rs, max_deg, mode.into());
            let a = sys.algebra().alphabet();
            writeln!(
                out,
                "rules {}, lifts {}, ambiguities {} ({} intersections, {} inclusions), skipped {}, failures {}",
                report.rules,
                report.lifts,
                report.ambiguities,
                report.intersections,
                report.inclusions,
                report.skipped,
                report.failures.len()
            )
            .map_err(io)?;
            for f in report.failures.iter().take(20) {
                let residue = match &f.residue {
                    Ok(p) => format_poly(a, p),
                    Err(e) => e.to_string(),
                };
                writeln!(out, "  {:?} at {}: {}", f.kind, format_word(a, &f.w), residue).map_err(io)?;
            }
            let pass = report.passed();
            writeln!(out, "{}", if pass { "pass" } else { "not certified" }).map_err(io)?;
            Ok(if pass { 0 } else { 1 })
        }
        Cmd::OracleDim {
            gens,
            lambda,
            max_deg,
        } => {
            let sys = DrblSystem::standard(check_gens(gens)?, lambda);
            let rules: Vec<Poly> = sys
                .instantiate_rules(max_deg)
                .iter()
                .map(|r| r.poly().clone())
                .collect();
            let dims = oracle_quotient_dim(sys.algebra(), &rules, max_deg, OracleOptions::default())?;
            let mut agree = true;
            for ((d, group), o) in sys.enumerate_basis(max_deg).iter().zip(&dims) {
                agree &= group.len() == *o;
                writeln!(out, "degree {d}: basis {}, oracle {o}", group.len()).map_err(io)?;
            }
            writeln!(out, "{}", if agree { "agree" } else { "disagree" }).map_err(io)?;
            Ok(if agree { 0 } else { 1 })
        }
    }
}

/// `{"lambda": "p/q", "degrees": [{"degree": n, "count": c, "elements": [...]}]}`.
pub fn basis_json(sys: &DrblSystem, max_degree: u32) -> serde_json::Value {
    let a = sys.algebra().alphabet();
    let degrees: Vec<serde_json::Value> = sys
        .enumerate_basis(max_degree)
        .into_iter()
        .map(|(d, group)| {
            let elements: Vec<String> = group.iter().map(|t| format_naword(a, t)).collect();
            json!({"degree": d, "count": elements.len(), "elements": elements})
        })
        .collect();
    json!({"lambda": format_coeff(sys.lambda()), "degrees": degrees})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn alg() -> Algebra {
        Algebra::new(Alphabet::standard(3), rat(1))
    }

    #[test]
    fn parse_examples() {
        let a = alg();
        let t = parse_term(&a, "D^2(x1)").unwrap();
        assert_eq!(t, Term::Poly(Word::from(Prime::gen(0).lift(2)).into()));
        let t = parse_term(&a, "P(x1 x2) * D(x1)").unwrap();
        let w = Word::new(vec![
            Prime::op(0, vec![Word::new(vec![Prime::gen(0), Prime::gen(1)])]),
            Prime::gen(0).lift(1),
        ]);
        assert_eq!(t, Term::Poly(w.into()));
        let t = parse_term(&a, "[x1 [x1 x2]]").unwrap();
        let x = NaWord::gen(0);
        assert_eq!(
            t,
            Term::Na(NaWord::bracket(x.clone(), NaWord::bracket(x, NaWord::gen(1))))
        );
        assert_eq!(parse_term(&a, "D^0(x1)").unwrap(), parse_term(&a, "x1").unwrap());
    }

    #[test]
    fn parse_errors() {
        let a = alg();
        assert!(matches!(parse_term(&a, "x1 +"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term(&a, "Q(x1)"), Err(Error::UnknownSymbol(_))));
        assert!(matches!(parse_term(&a, "x9"), Err(Error::UnknownSymbol(_))));
        assert!(matches!(parse_term(&a, "P(x1, x2)"), Err(Error::ArityMismatch { .. })));
        assert!(matches!(parse_term(&a, "x1 $"), Err(Error::Syntax { pos: 3, .. })));
    }

    #[test]
    fn format_examples() {
        let a = alg();
        let al = a.alphabet();
        assert_eq!(format_prime(al, &Prime::gen(0).lift(1)), "D(x1)");
        let w = Word::new(vec![
            Prime::op(0, vec![Word::new(vec![Prime::gen(0), Prime::gen(1)])]),
            Prime::gen(0),
        ]);
        assert_eq!(format_word(al, &w), "P(x1 x2) * x1");
        let p = Poly::term(Word::from(Prime::gen(0).lift(1)), ratio(-3, 2));
        assert_eq!(format_poly(al, &p), "-3/2 D(x1)");
        assert_eq!(format_poly(al, &Poly::zero()), "0");
    }

    #[test]
    fn round_trips() {
        let a = alg();
        for s in [
            "x1 - 2 x2 * x3",
            "-3/2 D(x1) + P(x1 x2)",
            "[P(x1) P(x2)]",
            "[[D^3(x1) x2] P([x1 x2])]",
            "P(x1 + 2 x2) * x3",
            "0",
        ] {
            let Ok(t) = parse_term(&a, s) else { continue };
            let text = format_term(a.alphabet(), &t);
            assert_eq!(parse_term(&a, &text).unwrap(), t, "{s} -> {text}");
        }
    }

    #[test]
    fn nf_command() {
        let mut out = Vec::new();
        let code = run(
            ["dlrb", "nf", "--lambda", "1", "--mode", "lie", "--max-deg", "4", "[P(x1) P(x2)]"],
            &mut out,
            &mut Vec::new(),
        );
        assert_eq!(code, 0);
        assert_eq!(
            String::from_utf8(out).unwrap().trim(),
            "P([P(x1) x2]) - P([P(x2) x1]) + P([x1 x2])"
        );
    }
}
