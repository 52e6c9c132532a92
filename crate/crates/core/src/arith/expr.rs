//! Scalar expressions: Gaussian-rational constants, symbols, field operations,
//! integer powers and formal roots.
//!
//! Text grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | base ('^' exponent)?
//! exponent := integer | '-' integer | '(' '-'? integer ')'
//! base   := integer | 'i' | symbol | '(' expr ')' | 'root(' integer ',' expr ')'
//! ```
//!
//! `i` is the imaginary unit, `t` is an ordinary symbol that the degeneration
//! code treats as the curve parameter.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bigfloat::{bits_for_digits, BigFloat, Complex};
use super::gauss::{GaussRational, Rational};
use super::poly::{Poly, Symbol};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ScalarExpr {
    Const(GaussRational),
    Sym(Symbol),
    Add(Box<ScalarExpr>, Box<ScalarExpr>),
    Sub(Box<ScalarExpr>, Box<ScalarExpr>),
    Mul(Box<ScalarExpr>, Box<ScalarExpr>),
    Div(Box<ScalarExpr>, Box<ScalarExpr>),
    Neg(Box<ScalarExpr>),
    Pow(Box<ScalarExpr>, i64),
    Root(u32, Box<ScalarExpr>),
}

/// How `is_zero` decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTest {
    Exact,
    /// Evaluate at the given assignment and compare against `10^(-digits/2)`.
    Numeric { digits: u32 },
}

use ScalarExpr as E;

impl ScalarExpr {
    pub fn int(n: i64) -> Self {
        E::Const(GaussRational::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        E::Const(GaussRational::from_ratio(n, d))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn sym(name: &str) -> Self {
        E::Sym(Symbol::new(name))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Parser::new(s).parse_all()
    }

    pub fn root(m: u32, e: ScalarExpr) -> Self {
        E::Root(m, Box::new(e))
    }

    pub fn powi(self, k: i64) -> Self {
        E::Pow(Box::new(self), k)
    }

    pub fn is_literal_zero(&self) -> bool {
        matches!(self, E::Const(c) if c.is_zero())
    }

    pub fn has_root(&self) -> bool {
        match self {
            E::Const(_) | E::Sym(_) => false,
            E::Add(a, b) | E::Sub(a, b) | E::Mul(a, b) | E::Div(a, b) => a.has_root() || b.has_root(),
            E::Neg(a) | E::Pow(a, _) => a.has_root(),
            E::Root(..) => true,
        }
    }

    pub fn contains_sym(&self, s: &Symbol) -> bool {
        match self {
            E::Const(_) => false,
            E::Sym(x) => x == s,
            E::Add(a, b) | E::Sub(a, b) | E::Mul(a, b) | E::Div(a, b) => a.contains_sym(s) || b.contains_sym(s),
            E::Neg(a) | E::Pow(a, _) | E::Root(_, a) => a.contains_sym(s),
        }
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Symbol> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut std::collections::BTreeSet<Symbol>) {
        match self {
            E::Const(_) => {}
            E::Sym(x) => {
                out.insert(x.clone());
            }
            E::Add(a, b) | E::Sub(a, b) | E::Mul(a, b) | E::Div(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            E::Neg(a) | E::Pow(a, _) | E::Root(_, a) => a.collect_symbols(out),
        }
    }

    /// The rational function denoted by a root-free expression. Roots of
    /// constants that are exact perfect powers are accepted.
    pub fn to_ratfunc(&self) -> Result<RatFunc> {
        match self.simp()? {
            Simp::Rat(r) => Ok(r),
            Simp::Expr(_) => Err(Error::RadicalNotAllowed),
        }
    }

    pub fn from_ratfunc(r: &RatFunc) -> Self {
        let n = poly_to_expr(r.numer());
        match r.denom().as_constant() {
            Some(d) if d.is_one() => n,
            _ => E::Div(Box::new(n), Box::new(poly_to_expr(r.denom()))),
        }
    }

    /// Canonical form: root-free subexpressions become reduced rational
    /// functions, `root(m, e)^(k·m)` becomes `e^k`, exact roots of perfect
    /// powers are taken.
    pub fn simplify(&self) -> Result<Self> {
        Ok(self.simp()?.into_expr())
    }

    fn simp(&self) -> Result<Simp> {
        Ok(match self {
            E::Const(c) => Simp::Rat(RatFunc::constant(c.clone())),
            E::Sym(s) if s.as_str() == "i" => Simp::Rat(RatFunc::constant(GaussRational::i())),
            E::Sym(s) => Simp::Rat(RatFunc::var(s.clone())),
            E::Add(a, b) => match (a.simp()?, b.simp()?) {
                (Simp::Rat(x), Simp::Rat(y)) => Simp::Rat(x.add(&y)),
                (x, y) if x.is_zero() => y,
                (x, y) if y.is_zero() => x,
                (x, y) => Simp::Expr(E::Add(Box::new(x.into_expr()), Box::new(y.into_expr()))),
            },
            E::Sub(a, b) => match (a.simp()?, b.simp()?) {
                (Simp::Rat(x), Simp::Rat(y)) => Simp::Rat(x.sub(&y)),
                (x, y) if y.is_zero() => x,
                (x, y) => {
                    let (x, y) = (x.into_expr(), y.into_expr());
                    if x == y {
                        Simp::Rat(RatFunc::zero())
                    } else {
                        Simp::Expr(E::Sub(Box::new(x), Box::new(y)))
                    }
                }
            },
            E::Mul(a, b) => match (a.simp()?, b.simp()?) {
                (Simp::Rat(x), Simp::Rat(y)) => Simp::Rat(x.mul(&y)),
                (x, _) | (_, x) if x.is_zero() => Simp::Rat(RatFunc::zero()),
                (x, y) if x.is_one() => y,
                (x, y) if y.is_one() => x,
                (x, y) => Simp::Expr(E::Mul(Box::new(x.into_expr()), Box::new(y.into_expr()))),
            },
            E::Div(a, b) => match (a.simp()?, b.simp()?) {
                (_, y) if y.is_zero() => return Err(Error::ZeroDenominator),
                (Simp::Rat(x), Simp::Rat(y)) => Simp::Rat(x.div(&y)?),
                (x, _) if x.is_zero() => Simp::Rat(RatFunc::zero()),
                (x, y) if y.is_one() => x,
                (x, y) => Simp::Expr(E::Div(Box::new(x.into_expr()), Box::new(y.into_expr()))),
            },
            E::Neg(a) => match a.simp()? {
                Simp::Rat(x) => Simp::Rat(x.neg()),
                Simp::Expr(x) => Simp::Expr(E::Neg(Box::new(x))),
            },
            E::Pow(a, k) => {
                if let E::Root(m, inner) = a.as_ref() {
                    let m = i64::from(*m);
                    if k % m == 0 {
                        return E::Pow(inner.clone(), k / m).simp();
                    }
                }
                match a.simp()? {
                    Simp::Rat(x) => Simp::Rat(x.pow(*k)?),
                    _ if *k == 0 => Simp::Rat(RatFunc::one()),
                    x if *k == 1 => x,
                    Simp::Expr(x) => Simp::Expr(E::Pow(Box::new(x), *k)),
                }
            }
            E::Root(m, a) => match a.simp()? {
                Simp::Rat(x) if *m == 1 => Simp::Rat(x),
                Simp::Rat(x) => {
                    if let Some(r) = x.as_constant().and_then(|c| if c.is_zero() { Some(c) } else { c.exact_root(*m) }) {
                        Simp::Rat(RatFunc::constant(r))
                    } else {
                        Simp::Expr(E::Root(*m, Box::new(E::from_ratfunc(&x))))
                    }
                }
                Simp::Expr(x) => Simp::Expr(E::Root(*m, Box::new(x))),
            },
        })
    }

    /// Exact substitution of sub-expressions for symbols.
    pub fn subs(&self, map: &BTreeMap<Symbol, ScalarExpr>) -> Self {
        match self {
            E::Const(_) => self.clone(),
            E::Sym(s) => map.get(s).cloned().unwrap_or_else(|| self.clone()),
            E::Add(a, b) => E::Add(Box::new(a.subs(map)), Box::new(b.subs(map))),
            E::Sub(a, b) => E::Sub(Box::new(a.subs(map)), Box::new(b.subs(map))),
            E::Mul(a, b) => E::Mul(Box::new(a.subs(map)), Box::new(b.subs(map))),
            E::Div(a, b) => E::Div(Box::new(a.subs(map)), Box::new(b.subs(map))),
            E::Neg(a) => E::Neg(Box::new(a.subs(map))),
            E::Pow(a, k) => E::Pow(Box::new(a.subs(map)), *k),
            E::Root(m, a) => E::Root(*m, Box::new(a.subs(map))),
        }
    }

    /// Zero test. Exact mode refuses radicals; numeric mode is heuristic.
    pub fn is_zero(&self, mode: ZeroTest, assign: &BTreeMap<Symbol, GaussRational>) -> Result<bool> {
        match mode {
            ZeroTest::Exact => match self.simp()? {
                Simp::Rat(r) => Ok(r.is_zero()),
                Simp::Expr(_) => Err(Error::RadicalZeroTest),
            },
            ZeroTest::Numeric { digits } => {
                let v = self.eval_gauss(assign, digits)?;
                let p = bits_for_digits(digits);
                let m = v.abs(p);
                Ok(m.is_zero() || m.log10_abs() <= -f64::from(digits) / 2.0)
            }
        }
    }

    /// Arbitrary-precision value at a complex assignment.
    pub fn eval(&self, assign: &BTreeMap<Symbol, Complex>, digits: u32) -> Result<Complex> {
        let ev = Evaluator { digits, prec: bits_for_digits(digits) + 16 };
        Ok(ev.run(self, &|s| assign.get(s).cloned().map(Value::Approx))?.into_complex(ev.prec))
    }

    /// Like [`eval`](Self::eval) but keeps exact values exact until a root
    /// forces an approximation.
    pub fn eval_gauss(&self, assign: &BTreeMap<Symbol, GaussRational>, digits: u32) -> Result<Complex> {
        let ev = Evaluator { digits, prec: bits_for_digits(digits) + 16 };
        Ok(ev.run(self, &|s| assign.get(s).cloned().map(Value::Exact))?.into_complex(ev.prec))
    }
}

enum Simp {
    Rat(RatFunc),
    Expr(ScalarExpr),
}

impl Simp {
    fn is_zero(&self) -> bool {
        matches!(self, Simp::Rat(r) if r.is_zero())
    }

    fn is_one(&self) -> bool {
        matches!(self, Simp::Rat(r) if r.is_one())
    }

    fn into_expr(self) -> ScalarExpr {
        match self {
            Simp::Rat(r) => E::from_ratfunc(&r),
            Simp::Expr(e) => e,
        }
    }
}

fn poly_to_expr(p: &Poly) -> ScalarExpr {
    let mut acc: Option<ScalarExpr> = None;
    for (m, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let mut mono: Option<ScalarExpr> = None;
        for (s, e) in m.factors() {
            let f = if *e == 1 { E::Sym(s.clone()) } else { E::Pow(Box::new(E::Sym(s.clone())), i64::from(*e)) };
            mono = Some(match mono {
                None => f,
                Some(x) => E::Mul(Box::new(x), Box::new(f)),
            });
        }
        if mono.is_none() && acc.is_none() {
            acc = Some(E::Const(c.clone()));
            continue;
        }
        let neg = c.is_real() && c.re < Rational::zero();
        let mag = if neg { -c } else { c.clone() };
        let term = match mono {
            None => E::Const(mag),
            Some(x) if mag.is_one() => x,
            Some(x) => E::Mul(Box::new(E::Const(mag)), Box::new(x)),
        };
        acc = Some(match (acc, neg) {
            (None, false) => term,
            (None, true) => E::Neg(Box::new(term)),
            (Some(a), false) => E::Add(Box::new(a), Box::new(term)),
            (Some(a), true) => E::Sub(Box::new(a), Box::new(term)),
        });
    }
    acc.unwrap_or_else(ScalarExpr::zero)
}

#[derive(Clone)]
enum Value {
    Exact(GaussRational),
    Approx(Complex),
}

impl Value {
    fn into_complex(self, prec: u64) -> Complex {
        match self {
            Value::Exact(g) => Complex::from_gauss(&g, prec),
            Value::Approx(c) => c,
        }
    }
}

struct Evaluator {
    digits: u32,
    prec: u64,
}

impl Evaluator {
    fn run(&self, e: &ScalarExpr, look: &dyn Fn(&Symbol) -> Option<Value>) -> Result<Value> {
        use Value::{Approx, Exact};
        let p = self.prec;
        Ok(match e {
            E::Const(c) => Exact(c.clone()),
            E::Sym(s) => match look(s) {
                Some(v) => v,
                None if s.as_str() == "i" => Exact(GaussRational::i()),
                None => return Err(Error::Unassigned(s.to_string())),
            },
            E::Add(a, b) => match (self.run(a, look)?, self.run(b, look)?) {
                (Exact(x), Exact(y)) => Exact(&x + &y),
                (x, y) => Approx(x.into_complex(p).add(&y.into_complex(p), p)),
            },
            E::Sub(a, b) => match (self.run(a, look)?, self.run(b, look)?) {
                (Exact(x), Exact(y)) => Exact(&x - &y),
                (x, y) => Approx(x.into_complex(p).sub(&y.into_complex(p), p)),
            },
            E::Mul(a, b) => match (self.run(a, look)?, self.run(b, look)?) {
                (Exact(x), Exact(y)) => Exact(&x * &y),
                (x, y) => Approx(x.into_complex(p).mul(&y.into_complex(p), p)),
            },
            E::Div(a, b) => match (self.run(a, look)?, self.run(b, look)?) {
                (_, Exact(y)) if y.is_zero() => return Err(Error::ZeroDenominator),
                (Exact(x), Exact(y)) => Exact(&x / &y),
                (x, y) => {
                    let y = y.into_complex(p);
                    if y.abs(p).below_decimal(f64::from(self.digits)) {
                        return Err(Error::NumericZeroDivision);
                    }
                    Approx(x.into_complex(p).div(&y, p))
                }
            },
            E::Neg(a) => match self.run(a, look)? {
                Exact(x) => Exact(-x),
                Approx(x) => Approx(x.neg()),
            },
            E::Pow(a, k) => match self.run(a, look)? {
                Exact(x) => Exact(x.pow(*k).ok_or(Error::ZeroDenominator)?),
                Approx(x) => {
                    if *k < 0 && x.abs(p).below_decimal(f64::from(self.digits)) {
                        return Err(Error::NumericZeroDivision);
                    }
                    Approx(x.powi(*k, p))
                }
            },
            E::Root(m, a) => match self.run(a, look)? {
                Exact(x) if x.is_zero() => Exact(x),
                Exact(x) => match x.exact_root(*m) {
                    Some(r) => Exact(r),
                    None => Approx(Complex::from_gauss(&x, p).nth_root(*m, p)),
                },
                Approx(x) => Approx(x.nth_root(*m, p)),
            },
        })
    }
}

// Display -----------------------------------------------------------------

const P_ADD: u8 = 1;
const P_MUL: u8 = 2;
const P_NEG: u8 = 3;
const P_ATOM: u8 = 5;

fn const_prec(c: &GaussRational) -> u8 {
    let s = c.to_string();
    if s.starts_with('(') || s == "i" {
        P_ATOM
    } else if s.starts_with('-') {
        P_NEG
    } else if s.contains('/') || s.contains('*') {
        P_MUL
    } else {
        P_ATOM
    }
}

impl ScalarExpr {
    fn prec(&self) -> u8 {
        match self {
            E::Const(c) => const_prec(c),
            E::Sym(_) | E::Root(..) => P_ATOM,
            E::Add(..) | E::Sub(..) => P_ADD,
            E::Mul(..) | E::Div(..) => P_MUL,
            E::Neg(_) => P_NEG,
            E::Pow(..) => 4,
        }
    }

    fn fmt_at(&self, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.fmt_at(0, f)?;
            return write!(f, ")");
        }
        match self {
            E::Const(c) => write!(f, "{c}"),
            E::Sym(s) => write!(f, "{s}"),
            E::Add(a, b) => {
                a.fmt_at(P_ADD, f)?;
                write!(f, " + ")?;
                b.fmt_at(P_ADD, f)
            }
            E::Sub(a, b) => {
                a.fmt_at(P_ADD, f)?;
                write!(f, " - ")?;
                b.fmt_at(P_MUL, f)
            }
            E::Mul(a, b) => {
                a.fmt_at(P_MUL, f)?;
                write!(f, "*")?;
                b.fmt_at(P_NEG, f)
            }
            E::Div(a, b) => {
                a.fmt_at(P_MUL, f)?;
                write!(f, "/")?;
                b.fmt_at(P_NEG, f)
            }
            E::Neg(a) => {
                write!(f, "-")?;
                a.fmt_at(P_NEG, f)
            }
            E::Pow(a, k) => {
                a.fmt_at(P_ATOM, f)?;
                if *k < 0 {
                    write!(f, "^({k})")
                } else {
                    write!(f, "^{k}")
                }
            }
            E::Root(m, a) => {
                write!(f, "root({m}, ")?;
                a.fmt_at(0, f)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(0, f)
    }
}

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for ScalarExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

// Parser ------------------------------------------------------------------

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
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

    fn parse_all(mut self) -> Result<ScalarExpr> {
        let e = self.expr()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = E::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = E::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ScalarExpr> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = E::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.eat('/') {
                acc = E::Div(Box::new(acc), Box::new(self.factor()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<ScalarExpr> {
        if self.eat('-') {
            return Ok(E::Neg(Box::new(self.factor()?)));
        }
        let b = self.base()?;
        if self.eat('^') {
            let k = self.exponent()?;
            return Ok(E::Pow(Box::new(b), k));
        }
        Ok(b)
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat('(') {
            let neg = self.eat('-');
            let k = self.integer()?;
            self.expect(')')?;
            return self.to_i64(k, neg);
        }
        let neg = self.eat('-');
        let k = self.integer()?;
        self.to_i64(k, neg)
    }

    fn to_i64(&self, k: BigInt, neg: bool) -> Result<i64> {
        let v: i64 = match i64::try_from(&k) {
            Ok(v) => v,
            Err(_) => return self.err("exponent out of range"),
        };
        Ok(if neg { -v } else { v })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.err("expected integer");
        }
        self.pos += len;
        Ok(rest[..len].parse().expect("digits"))
    }

    fn base(&mut self) -> Result<ScalarExpr> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(E::Const(GaussRational::real(Rational::from_integer(n))))
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                let rest = &self.src[start..];
                let len: usize = rest
                    .chars()
                    .take_while(|c| c.is_alphanumeric() || *c == '_')
                    .map(char::len_utf8)
                    .sum();
                self.pos += len;
                let name = &rest[..len];
                if name == "i" {
                    return Ok(E::Const(GaussRational::i()));
                }
                if name == "root" && self.peek() == Some('(') {
                    self.pos += 1;
                    let m = self.integer()?;
                    let m = match u32::try_from(&m) {
                        Ok(m) if m >= 1 => m,
                        _ => return self.err("root index must be a positive integer"),
                    };
                    self.expect(',')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    return Ok(E::Root(m, Box::new(e)));
                }
                Ok(E::Sym(Symbol::new(name)))
            }
            Some(c) => self.err(format!("unexpected character `{c}`")),
        }
    }
}

/// Convenience for tests and data tables: builds a symbol assignment.
pub fn assignment<'a>(pairs: impl IntoIterator<Item = (&'a str, GaussRational)>) -> BTreeMap<Symbol, GaussRational> {
    pairs.into_iter().map(|(k, v)| (Symbol::new(k), v)).collect()
}

pub fn complex_from_rational(r: &Rational, prec: u64) -> Complex {
    Complex::real(BigFloat::from_rational(r, prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ScalarExpr {
        ScalarExpr::parse(s).unwrap()
    }

    fn none() -> BTreeMap<Symbol, GaussRational> {
        BTreeMap::new()
    }

    #[test]
    fn simplify_rationals_and_i() {
        assert_eq!(p("1/2 + 1/3").simplify().unwrap(), ScalarExpr::ratio(5, 6));
        assert_eq!(p("i*i").simplify().unwrap(), ScalarExpr::int(-1));
        assert_eq!(p("(lambda^2 - lambda)/(lambda - 1)").simplify().unwrap(), p("lambda"));
    }

    #[test]
    fn simplify_rejects_zero_denominator() {
        assert!(matches!(p("1/(x - x)").simplify(), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn root_power_collapses() {
        assert_eq!(p("root(3, alpha + 1)^3").simplify().unwrap(), p("alpha + 1").simplify().unwrap());
        assert_eq!(p("root(3, 8)").simplify().unwrap(), ScalarExpr::int(2));
    }

    #[test]
    fn exact_zero_tests() {
        assert!(p("(lambda+1)*(lambda-1) - lambda^2 + 1").is_zero(ZeroTest::Exact, &none()).unwrap());
        assert!(!p("lambda - 1").is_zero(ZeroTest::Exact, &none()).unwrap());
        assert!(matches!(p("root(2, 2) - 1").is_zero(ZeroTest::Exact, &none()), Err(Error::RadicalZeroTest)));
    }

    #[test]
    fn numeric_zero_test_on_radicals() {
        let e = ScalarExpr::Sub(Box::new(p("root(2, 2)")), Box::new(p("root(2,2)")));
        assert!(e.is_zero(ZeroTest::Numeric { digits: 50 }, &none()).unwrap());
        assert!(!p("root(2, 2) - 1").is_zero(ZeroTest::Numeric { digits: 50 }, &none()).unwrap());
    }

    #[test]
    fn eval_examples() {
        let v = p("root(3, t/4)").eval_gauss(&assignment([("t", GaussRational::from_ratio(1, 2))]), 30).unwrap();
        assert_eq!(v, Complex::from_f64(0.5, 0.0));
        let v = p("i^2").eval_gauss(&none(), 30).unwrap();
        assert_eq!(v, Complex::from_f64(-1.0, 0.0));
        let v = p("(alpha-1)/(alpha+1)").eval_gauss(&assignment([("alpha", GaussRational::from_int(3))]), 30).unwrap();
        assert_eq!(v, Complex::from_f64(0.5, 0.0));
    }

    #[test]
    fn eval_errors() {
        assert!(matches!(p("x + 1").eval_gauss(&none(), 30), Err(Error::Unassigned(s)) if s == "x"));
        let e = p("1/(root(2, 2) - root(2, 2))");
        assert!(matches!(e.eval_gauss(&none(), 30), Err(Error::NumericZeroDivision)));
    }

    #[test]
    fn parse_errors_carry_position() {
        match ScalarExpr::parse("1 + * 2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(ScalarExpr::parse("(1 + 2").is_err());
        assert!(ScalarExpr::parse("root(0, 2)").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["-t^2*alpha/(alpha + 1)", "root(3, 2/(alpha + 1))^2", "t^(-3)", "(1/2+i)*x - 3/4", "-(a - b)"] {
            let e = p(s);
            assert_eq!(p(&e.to_string()), e, "{s} -> {e}");
        }
    }

    #[test]
    fn negative_exponent_forms() {
        assert_eq!(p("t^-2"), p("t^(-2)"));
        assert_eq!(p("t^-2*t^3").simplify().unwrap(), p("t"));
    }
}
