//! Finite Puiseux sums `Σ c_k · t^(q_k)` with `t`-free coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::expr::ScalarExpr;
use super::gauss::Rational;
use super::poly::Symbol;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PuiseuxExpr {
    /// Sorted by exponent; no duplicate exponents, no exactly-zero coefficients.
    terms: Vec<(ScalarExpr, Rational)>,
}

impl PuiseuxExpr {
    pub fn zero() -> Self {
        PuiseuxExpr { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[(ScalarExpr, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_map(map: BTreeMap<Rational, ScalarExpr>) -> Result<Self> {
        let mut terms = Vec::new();
        for (q, c) in map {
            let c = c.simplify()?;
            if !c.is_literal_zero() {
                terms.push((c, q));
            }
        }
        Ok(PuiseuxExpr { terms })
    }

    fn single(c: ScalarExpr, q: Rational) -> Result<Self> {
        Self::from_map([(q, c)].into())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let mut map: BTreeMap<Rational, ScalarExpr> = BTreeMap::new();
        for (c, q) in self.terms.iter().chain(&o.terms) {
            let v = match map.remove(q) {
                Some(a) => ScalarExpr::Add(Box::new(a), Box::new(c.clone())),
                None => c.clone(),
            };
            map.insert(q.clone(), v);
        }
        Self::from_map(map)
    }

    pub fn neg(&self) -> Result<Self> {
        let map = self.terms.iter().map(|(c, q)| (q.clone(), ScalarExpr::Neg(Box::new(c.clone())))).collect();
        Self::from_map(map)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let mut acc = Self::zero();
        for (a, p) in &self.terms {
            let mut part = BTreeMap::new();
            for (b, q) in &o.terms {
                part.insert(p + q, ScalarExpr::Mul(Box::new(a.clone()), Box::new(b.clone())));
            }
            acc = acc.add(&Self::from_map(part)?)?;
        }
        Ok(acc)
    }

    fn as_monomial(&self) -> Option<(&ScalarExpr, &Rational)> {
        match self.terms.as_slice() {
            [(c, q)] => Some((c, q)),
            _ => None,
        }
    }

    /// Smallest exponent present, the order of vanishing at `t = 0`.
    pub fn order(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, q)| q)
    }

    /// `true` when every exponent is an integer and no coefficient has a root.
    pub fn is_laurent_rational(&self) -> bool {
        self.terms.iter().all(|(c, q)| q.is_integer() && !c.has_root())
    }
}

/// Normal form of `e` as a Puiseux sum in `t`.
pub fn puiseux_normalize(e: &ScalarExpr, t: &Symbol) -> Result<PuiseuxExpr> {
    use ScalarExpr as E;
    let not = |why: &str| Error::NotPuiseux(format!("{e}: {why}"));
    if !e.contains_sym(t) {
        return PuiseuxExpr::single(e.clone(), Rational::zero());
    }
    match e {
        E::Const(_) => unreachable!("constants are t-free"),
        E::Sym(_) => PuiseuxExpr::single(ScalarExpr::one(), Rational::one()),
        E::Add(a, b) => puiseux_normalize(a, t)?.add(&puiseux_normalize(b, t)?),
        E::Sub(a, b) => puiseux_normalize(a, t)?.add(&puiseux_normalize(b, t)?.neg()?),
        E::Neg(a) => puiseux_normalize(a, t)?.neg(),
        E::Mul(a, b) => puiseux_normalize(a, t)?.mul(&puiseux_normalize(b, t)?),
        E::Div(a, b) => {
            let den = puiseux_normalize(b, t)?;
            let (c, q) = den.as_monomial().ok_or_else(|| not("t appears non-monomially in a denominator"))?;
            let inv = PuiseuxExpr::single(ScalarExpr::Div(Box::new(ScalarExpr::one()), Box::new(c.clone())), -q)?;
            puiseux_normalize(a, t)?.mul(&inv)
        }
        E::Pow(a, k) => {
            let base = puiseux_normalize(a, t)?;
            if let Some((c, q)) = base.as_monomial() {
                return PuiseuxExpr::single(c.clone().powi(*k), q * Rational::from_integer(BigInt::from(*k)));
            }
            if *k < 0 {
                return Err(not("negative power of a sum involving t"));
            }
            let mut acc = PuiseuxExpr::single(ScalarExpr::one(), Rational::zero())?;
            for _ in 0..*k {
                acc = acc.mul(&base)?;
            }
            Ok(acc)
        }
        E::Root(m, a) => {
            let inner = puiseux_normalize(a, t)?;
            let (c, q) = inner.as_monomial().ok_or_else(|| not("root of a sum involving t"))?;
            PuiseuxExpr::single(ScalarExpr::root(*m, c.clone()), q / Rational::from_integer(BigInt::from(*m)))
        }
    }
}

impl fmt::Display for PuiseuxExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, q)| format!("({c})*t^({q})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gauss::rat;

    fn norm(s: &str) -> Vec<(String, Rational)> {
        let e = ScalarExpr::parse(s).unwrap();
        puiseux_normalize(&e, &Symbol::new("t")).unwrap().terms.into_iter().map(|(c, q)| (c.to_string(), q)).collect()
    }

    #[test]
    fn merges_and_sorts() {
        assert_eq!(norm("t^(-1)*t^2 + 3"), vec![("3".into(), rat(0, 1)), ("1".into(), rat(1, 1))]);
    }

    #[test]
    fn fractional_exponents_from_roots() {
        assert_eq!(norm("root(3, t^2)*root(3, t)"), vec![("1".into(), rat(1, 1))]);
        assert_eq!(norm("root(3, t/4)"), vec![("root(3, 1/4)".into(), rat(1, 3))]);
    }

    #[test]
    fn cancellation_drops_terms() {
        assert_eq!(norm("2*t^(-1) - 2*t^(-1) + t"), vec![("1".into(), rat(1, 1))]);
    }

    #[test]
    fn rejects_sums_in_denominators() {
        let e = ScalarExpr::parse("1/(t + 1)").unwrap();
        assert!(matches!(puiseux_normalize(&e, &Symbol::new("t")), Err(Error::NotPuiseux(_))));
    }

    #[test]
    fn laurent_detection() {
        let t = Symbol::new("t");
        let e = ScalarExpr::parse("alpha*t^2 - t^(-3)/(alpha+1)").unwrap();
        assert!(puiseux_normalize(&e, &t).unwrap().is_laurent_rational());
        let e = ScalarExpr::parse("root(3, 4*t^2)").unwrap();
        assert!(!puiseux_normalize(&e, &t).unwrap().is_laurent_rational());
    }
}
