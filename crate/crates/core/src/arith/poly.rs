//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Monomials are ordered lexicographically with alphabetically smaller
//! symbols more significant. The leading term is the last map entry.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::gauss::GaussRational;

/// A named indeterminate (`alpha`, `lambda`, `t`, ...).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Exponent vector, sorted by symbol, zero exponents omitted.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(s, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree_in(&self, v: &Symbol) -> u32 {
        self.0.iter().find(|(s, _)| s == v).map_or(0, |(_, e)| *e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < o.0.len() {
            match (self.0.get(i), o.0.get(j)) {
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Equal => {
                        out.push((a.0.clone(), a.1 + b.1));
                        i += 1;
                        j += 1;
                    }
                    Ordering::Less => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push(b.clone());
                        j += 1;
                    }
                },
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = self.0.clone();
        for (s, e) in &o.0 {
            let pos = out.iter().position(|(x, _)| x == s)?;
            if out[pos].1 < *e {
                return None;
            }
            out[pos].1 -= e;
            if out[pos].1 == 0 {
                out.remove(pos);
            }
        }
        Some(Monomial(out))
    }

    /// Removes `v` from the monomial, returning its exponent.
    fn split_off(&self, v: &Symbol) -> (u32, Monomial) {
        let e = self.degree_in(v);
        let rest = self.0.iter().filter(|(s, _)| s != v).cloned().collect();
        (e, Monomial(rest))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((sa, ea)), Some((sb, eb))) => match sa.cmp(sb) {
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(s: Symbol) -> Self {
        Self::term(GaussRational::one(), Monomial::var(s, 1))
    }

    pub fn term(c: GaussRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<GaussRational> {
        if self.is_zero() {
            return Some(GaussRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &GaussRational)> {
        self.terms.iter().next_back()
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn contains_var(&self, v: &Symbol) -> bool {
        self.terms.keys().any(|m| m.degree_in(v) > 0)
    }

    pub fn degree_in(&self, v: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    /// Lowest power of `v` dividing the polynomial.
    pub fn order_in(&self, v: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).min().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let dc_inv = dc.inv()?;
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = r.leading() {
            let m = rm.div(dm)?;
            let c = rc * &dc_inv;
            r = r.sub(&d.mul_monomial(&m).scale(&c));
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Coefficients in `v`, index = degree.
    pub fn to_univariate(&self, v: &Symbol) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_univariate(v: &Symbol, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let vm = Monomial::var(v.clone(), e as u32);
            for (m, x) in &c.terms {
                out.add_term(m.mul(&vm), x.clone());
            }
        }
        out
    }

    /// Substitutes exact values for some variables.
    pub fn eval_partial(&self, assign: &BTreeMap<Symbol, GaussRational>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Vec::new();
            for (s, e) in &m.0 {
                match assign.get(s) {
                    Some(v) => coef = &coef * &v.pow(*e as i64).expect("nonnegative power"),
                    None => rest.push((s.clone(), *e)),
                }
            }
            out.add_term(Monomial(rest), coef);
        }
        out
    }

    /// Content with respect to `v`: gcd of the coefficients in `v`.
    pub fn content_in(&self, v: &Symbol) -> Poly {
        let mut g = Poly::zero();
        for c in self.to_univariate(v) {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_constant() && !g.is_zero() {
                return Poly::one();
            }
        }
        g
    }

    fn prem(&self, b: &Poly, v: &Symbol) -> Poly {
        let db = b.degree_in(v);
        let lb = b.to_univariate(v).pop().expect("nonzero divisor");
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.to_univariate(v).pop().expect("nonzero");
            let shift = Monomial::var(v.clone(), dr - db);
            r = r.mul(&lb).sub(&b.mul(&lr).mul_monomial(&shift));
        }
        r
    }
}

/// Monic gcd over `ℚ(i)[vars]`, computed by the recursive primitive
/// polynomial remainder sequence. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    let v = a.vars().union(&b.vars()).next().cloned().expect("nonconstant");
    if !a.contains_var(&v) {
        return gcd(a, &b.content_in(&v));
    }
    if !b.contains_var(&v) {
        return gcd(&a.content_in(&v), b);
    }
    let ca = a.content_in(&v);
    let cb = b.content_in(&v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    if coprime_by_specialization(&pa, &pb, &v) {
        return c.monic();
    }

    let (mut p, mut q) = if pa.degree_in(&v) >= pb.degree_in(&v) { (pa.monic(), pb.monic()) } else { (pb.monic(), pa.monic()) };
    let g = loop {
        let r = p.prem(&q, &v);
        if r.is_zero() {
            break q;
        }
        if r.degree_in(&v) == 0 {
            break Poly::one();
        }
        // Dividing out the scalar as well as the polynomial content keeps
        // coefficient growth in check.
        let cr = r.content_in(&v);
        p = q;
        q = r.div_exact(&cr).expect("content divides").monic();
    };
    let gc = g.content_in(&v);
    let g = g.div_exact(&gc).expect("content divides");
    c.mul(&g).monic()
}

/// Dense coefficients in `v` after substituting integers for every other
/// variable, or `None` if the leading coefficient vanishes there.
fn specialize(p: &Poly, v: &Symbol, at: &BTreeMap<Symbol, GaussRational>) -> Option<Vec<GaussRational>> {
    let coeffs: Vec<GaussRational> =
        p.to_univariate(v).iter().map(|c| c.eval_partial(at).as_constant().expect("all other variables assigned")).collect();
    (!coeffs.last()?.is_zero()).then_some(coeffs)
}

fn univariate_rem(a: &[GaussRational], b: &[GaussRational]) -> Vec<GaussRational> {
    let mut r = a.to_vec();
    let lb_inv = b.last().expect("nonzero").inv().expect("nonzero");
    while r.len() >= b.len() {
        let f = r.last().expect("nonempty") * &lb_inv;
        let shift = r.len() - b.len();
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&f * bc);
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Primitive `a` and `b` (in `v`) are coprime if some specialization of the
/// other variables that keeps both leading coefficients gives a constant gcd.
/// A `false` answer is inconclusive.
fn coprime_by_specialization(a: &Poly, b: &Poly, v: &Symbol) -> bool {
    let others: Vec<Symbol> = a.vars().union(&b.vars()).filter(|s| *s != v).cloned().collect();
    for attempt in 0..3i64 {
        let at: BTreeMap<Symbol, GaussRational> =
            others.iter().enumerate().map(|(i, s)| (s.clone(), GaussRational::from_int(3 + 7 * attempt + 2 * i as i64))).collect();
        let (Some(mut p), Some(mut q)) = (specialize(a, v, &at), specialize(b, v, &at)) else { continue };
        if p.len() < q.len() {
            std::mem::swap(&mut p, &mut q);
        }
        while q.len() > 1 {
            let r = univariate_rem(&p, &q);
            p = q;
            q = r;
        }
        return !q.is_empty();
    }
    false
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .0
                .iter()
                .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
                .collect();
            let mono = mono.join("*");
            let neg = c.is_real() && c.re < num_rational::BigRational::zero();
            let mag = if neg { -c } else { c.clone() };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(Symbol::new("x"))
    }
    fn y() -> Poly {
        Poly::var(Symbol::new("y"))
    }
    fn c(n: i64) -> Poly {
        Poly::constant(GaussRational::from_int(n))
    }

    #[test]
    fn lex_order_puts_earlier_symbols_first() {
        let xm = Monomial::var(Symbol::new("x"), 1);
        let ym = Monomial::var(Symbol::new("y"), 5);
        assert!(xm > ym);
        assert!(Monomial::var(Symbol::new("x"), 2) > xm);
        assert!(ym > Monomial::one());
    }

    #[test]
    fn exact_division() {
        let p = x().mul(&x()).sub(&y().mul(&y()));
        let q = x().add(&y());
        assert_eq!(p.div_exact(&q), Some(x().sub(&y())));
        assert_eq!(p.div_exact(&x()), None);
    }

    #[test]
    fn univariate_gcd() {
        let a = x().pow(2).sub(&c(1));
        let b = x().pow(2).sub(&x().scale(&GaussRational::from_int(2))).add(&c(1));
        assert_eq!(gcd(&a, &b), x().sub(&c(1)));
    }

    #[test]
    fn multivariate_gcd() {
        let common = x().mul(&y()).add(&c(3));
        let a = common.mul(&x().add(&y()));
        let b = common.mul(&x().sub(&y().pow(2)));
        assert_eq!(gcd(&a, &b), common.monic());
        assert_eq!(gcd(&x(), &y()), Poly::one());
    }

    #[test]
    fn gaussian_coefficients() {
        let i = Poly::constant(GaussRational::i());
        let a = x().mul(&x()).add(&c(1));
        let b = x().sub(&i);
        assert_eq!(gcd(&a, &b), b);
    }
}
