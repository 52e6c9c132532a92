//! Rational functions over `ℚ(i)` in canonical reduced form.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::gauss::GaussRational;
use super::poly::{gcd, Poly, Symbol};
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Equal functions
/// are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(c: GaussRational) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussRational::from_int(n))
    }

    pub fn var(s: Symbol) -> Self {
        RatFunc { num: Poly::var(s), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        Self::normalized(num, den)
    }

    /// Makes the denominator monic; `num/den` must already be in lowest terms.
    fn normalized(num: Poly, den: Poly) -> Self {
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one_poly() && self.num.is_one_poly()
    }

    pub fn as_constant(&self) -> Option<GaussRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(&n / &d)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn contains_var(&self, v: &Symbol) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Symbol> {
        let mut s = self.num.vars();
        s.extend(self.den.vars());
        s
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one_poly() && o.den.is_one_poly() {
            return Self::from_poly(self.num.add(&o.num));
        }
        // With g = gcd(d1, d2) only g can share factors with the new numerator.
        let g = gcd(&self.den, &o.den);
        let (d1, d2) = (self.den.div_exact(&g).expect("gcd divides"), o.den.div_exact(&g).expect("gcd divides"));
        let num = self.num.mul(&d2).add(&o.num.mul(&d1));
        if num.is_zero() {
            return Self::zero();
        }
        let h = gcd(&num, &g);
        let (num, g) = (num.div_exact(&h).expect("gcd divides"), g.div_exact(&h).expect("gcd divides"));
        Self::normalized(num, d1.mul(&d2).mul(&g))
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one_poly() && o.den.is_one_poly() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        // Both inputs are reduced, so cross-cancelling leaves a reduced result.
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let div = |p: &Poly, g: &Poly| p.div_exact(g).expect("gcd divides");
        let num = div(&self.num, &g1).mul(&div(&o.num, &g2));
        let den = div(&self.den, &g2).mul(&div(&o.den, &g1));
        Self::normalized(num, den)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<RatFunc> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(k.unsigned_abs()).map_err(|_| Error::Overflow("exponent"))?;
        Ok(RatFunc { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn scale(&self, c: &GaussRational) -> RatFunc {
        if c.is_zero() {
            return Self::zero();
        }
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Exact value at a full assignment; errors on a vanishing denominator.
    pub fn eval(&self, assign: &BTreeMap<Symbol, GaussRational>) -> Result<GaussRational> {
        let r = self.eval_partial(assign)?;
        r.as_constant().ok_or_else(|| {
            let missing = r.vars().into_iter().next().map(|s| s.to_string()).unwrap_or_default();
            Error::Unassigned(missing)
        })
    }

    /// Substitutes exact values for some of the variables.
    pub fn eval_partial(&self, assign: &BTreeMap<Symbol, GaussRational>) -> Result<RatFunc> {
        let n = self.num.eval_partial(assign);
        let d = self.den.eval_partial(assign);
        RatFunc::new(n, d)
    }

    /// Simultaneous substitution of rational functions for variables.
    pub fn subs(&self, map: &BTreeMap<Symbol, RatFunc>) -> Result<RatFunc> {
        let n = subs_poly(&self.num, map)?;
        let d = subs_poly(&self.den, map)?;
        n.div(&d)
    }

    /// Value at `v = 0` when the function has no pole there.
    pub fn at_zero(&self, v: &Symbol) -> Option<RatFunc> {
        let zero: BTreeMap<Symbol, GaussRational> = [(v.clone(), GaussRational::zero())].into();
        let d0 = self.den.eval_partial(&zero);
        if d0.is_zero() {
            return None;
        }
        Some(Self::reduce(self.num.eval_partial(&zero), d0))
    }
}

fn subs_poly(p: &Poly, map: &BTreeMap<Symbol, RatFunc>) -> Result<RatFunc> {
    let mut acc = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut t = RatFunc::constant(c.clone());
        for (s, e) in m.factors() {
            let f = match map.get(s) {
                Some(r) => r.pow(*e as i64)?,
                None => RatFunc::var(s.clone()).pow(*e as i64)?,
            };
            t = t.mul(&f);
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for Poly {
    fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> RatFunc {
        RatFunc::var(Symbol::new("lambda"))
    }

    #[test]
    fn cancellation_gives_canonical_form() {
        let num = l().mul(&l()).sub(&l());
        let r = num.div(&l().sub(&RatFunc::one())).unwrap();
        assert_eq!(r, l());
    }

    #[test]
    fn equal_functions_are_identical() {
        let a = RatFunc::one().div(&l().add(&RatFunc::one())).unwrap();
        let b = l().sub(&RatFunc::one()).div(&l().mul(&l()).sub(&RatFunc::one())).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(l().div(&l().sub(&l())), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn value_at_zero() {
        let t = Symbol::new("t");
        let tt = RatFunc::var(t.clone());
        let f = tt.add(&RatFunc::int(2)).div(&tt.add(&RatFunc::int(1))).unwrap();
        assert_eq!(f.at_zero(&t), Some(RatFunc::int(2)));
        let g = RatFunc::one().div(&tt).unwrap();
        assert_eq!(g.at_zero(&t), None);
    }
}
