//! Algebras given by structure constants `c_ij^k`, with identity checks,
//! annihilators, derived powers and derivations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::expr::ScalarExpr;
use crate::arith::gauss::GaussRational;
use crate::arith::poly::Symbol;
use crate::arith::ratfunc::RatFunc;
use crate::error::{Error, Result};
use crate::linalg;

pub type Assignment = BTreeMap<Symbol, GaussRational>;
pub type Vector = Vec<RatFunc>;

/// Reserved name of the degeneration parameter.
pub const T: &str = "t";

#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    dim: usize,
    params: Vec<Symbol>,
    constraints: Vec<RatFunc>,
    /// Dense, index `(i·n + j)·n + k`, zero-based.
    c: Vec<RatFunc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFlags {
    pub right_commutative: bool,
    pub left_symmetric: bool,
    pub novikov: bool,
    pub two_step: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedPowers {
    /// `[dim A, dim A², …]`, ending in 0 when nilpotent.
    pub dims: Vec<usize>,
    /// Smallest `m` with `A^m = 0`.
    pub nilpotency_index: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub dim_ann: usize,
    pub dims_derived: Vec<usize>,
    pub dim_der: usize,
    pub is_right_commutative: bool,
    pub is_left_symmetric: bool,
    pub is_two_step: bool,
    pub nilpotency_index: Option<usize>,
}

/// Serialized form; one-based indices and constants in the expression grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub constraints_nonzero: Vec<String>,
    #[serde(default)]
    pub products: Vec<ProductJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

impl Algebra {
    /// Builds an algebra from one-based `(i, j, k, c)` products. Repeated
    /// entries are summed.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        params: &[&str],
        constraints: &[&str],
        products: &[(usize, usize, usize, &str)],
    ) -> Result<Self> {
        let mut c = vec![RatFunc::zero(); dim * dim * dim];
        for &(i, j, k, e) in products {
            let v = ScalarExpr::parse(e)?.to_ratfunc()?;
            check_index(dim, i, j, k)?;
            let idx = ((i - 1) * dim + (j - 1)) * dim + (k - 1);
            c[idx] = c[idx].add(&v);
        }
        let constraints = constraints.iter().map(|s| ScalarExpr::parse(s)?.to_ratfunc()).collect::<Result<Vec<_>>>()?;
        Self::from_dense(name.into(), dim, params.iter().map(|p| Symbol::new(p)).collect(), constraints, c)
    }

    pub fn from_dense(
        name: String,
        dim: usize,
        params: Vec<Symbol>,
        constraints: Vec<RatFunc>,
        c: Vec<RatFunc>,
    ) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, found: c.len() });
        }
        let declared: BTreeSet<&Symbol> = params.iter().collect();
        if declared.iter().any(|p| p.as_str() == T || p.as_str() == "i") {
            return Err(Error::InvalidAlgebra(format!("`{T}` and `i` cannot be parameters")));
        }
        for x in c.iter().chain(&constraints) {
            if let Some(s) = x.vars().into_iter().find(|s| !declared.contains(s)) {
                return Err(Error::InvalidAlgebra(format!("{name}: undeclared symbol `{s}`")));
            }
        }
        Ok(Algebra { name, dim, params, constraints, c })
    }

    pub fn zero(dim: usize) -> Self {
        Algebra {
            name: format!("zero_{dim}"),
            dim,
            params: Vec::new(),
            constraints: Vec::new(),
            c: vec![RatFunc::zero(); dim * dim * dim],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &[Symbol] {
        &self.params
    }

    pub fn constraints(&self) -> &[RatFunc] {
        &self.constraints
    }

    /// Zero-based structure constant `c_ij^k`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &RatFunc {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn constants(&self) -> &[RatFunc] {
        &self.c
    }

    /// Coordinates of `e_i · e_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> Vector {
        let n = self.dim;
        self.c[(i * n + j) * n..(i * n + j + 1) * n].to_vec()
    }

    pub fn multiply(&self, x: &[RatFunc], y: &[RatFunc]) -> Result<Vector> {
        let n = self.dim;
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        let mut out = vec![RatFunc::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].mul(&y[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o = o.add(&xy.mul(c));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        (0..self.dim).map(|k| if k == i { RatFunc::one() } else { RatFunc::zero() }).collect()
    }

    /// `((e_i e_j) e_k, e_i (e_j e_k))` coordinates for every basis triple.
    fn triple_products(&self) -> Vec<(Vector, Vector)> {
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut left = vec![RatFunc::zero(); n];
                    let mut right = vec![RatFunc::zero(); n];
                    for l in 0..n {
                        let a = self.c(i, j, l);
                        let b = self.c(j, k, l);
                        for (m, (lv, rv)) in left.iter_mut().zip(right.iter_mut()).enumerate() {
                            if !a.is_zero() && !self.c(l, k, m).is_zero() {
                                *lv = lv.add(&a.mul(self.c(l, k, m)));
                            }
                            if !b.is_zero() && !self.c(i, l, m).is_zero() {
                                *rv = rv.add(&b.mul(self.c(i, l, m)));
                            }
                        }
                    }
                    out.push((left, right));
                }
            }
        }
        out
    }

    /// Identity flags decided exactly over the parameter field.
    pub fn check_identities(&self) -> IdentityFlags {
        let n = self.dim;
        let tp = self.triple_products();
        let at = |i: usize, j: usize, k: usize| &tp[(i * n + j) * n + k];
        let mut rc = true;
        let mut ls = true;
        let mut two = true;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (xy_z, x_yz) = at(i, j, k);
                    let (xz_y, _) = at(i, k, j);
                    let (yx_z, y_xz) = at(j, i, k);
                    for m in 0..n {
                        if xy_z[m] != xz_y[m] {
                            rc = false;
                        }
                        let l = xy_z[m].sub(&x_yz[m]);
                        let r = yx_z[m].sub(&y_xz[m]);
                        if l != r {
                            ls = false;
                        }
                        if !xy_z[m].is_zero() || !x_yz[m].is_zero() {
                            two = false;
                        }
                    }
                }
            }
        }
        IdentityFlags { right_commutative: rc, left_symmetric: ls, novikov: rc && ls, two_step: two }
    }

    /// Basis of `{x : x·A = A·x = 0}`.
    pub fn annihilator_basis(&self) -> Vec<Vector> {
        let n = self.dim;
        let mut rows = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.c(i, j, k).clone()).collect());
                rows.push((0..n).map(|i| self.c(j, i, k).clone()).collect());
            }
        }
        linalg::nullspace(&rows, n)
    }

    fn span_products(&self, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
        let mut out = Vec::new();
        for x in a {
            for y in b {
                let p = self.multiply(x, y).expect("dimensions match");
                if p.iter().any(|v| !v.is_zero()) {
                    out.push(p);
                }
            }
        }
        out
    }

    fn reduce_basis(&self, vs: Vec<Vector>) -> Vec<Vector> {
        let keep = linalg::independent_subset(&vs, self.dim);
        keep.into_iter().map(|i| vs[i].clone()).collect()
    }

    /// Dimensions of `A^k = Σ_{p+q=k} A^p A^q`.
    pub fn derived_powers(&self) -> DerivedPowers {
        let n = self.dim;
        let mut powers: Vec<Vec<Vector>> = vec![(0..n).map(|i| self.basis_vector(i)).collect()];
        let mut dims = vec![n];
        if n == 0 {
            return DerivedPowers { dims, nilpotency_index: Some(1) };
        }
        let cap = 2 * n + 2;
        while dims.len() < cap {
            let k = powers.len() + 1;
            let mut gens = Vec::new();
            for p in 1..k {
                gens.extend(self.span_products(&powers[p - 1], &powers[k - p - 1]));
            }
            let basis = self.reduce_basis(gens);
            let d = basis.len();
            dims.push(d);
            powers.push(basis);
            if d == 0 {
                let idx = dims.len();
                return DerivedPowers { dims, nilpotency_index: Some(idx) };
            }
        }
        DerivedPowers { dims, nilpotency_index: None }
    }

    /// Fails with `ConstraintViolated` if `at` makes a declared constraint vanish.
    pub fn check_constraints(&self, at: &Assignment) -> Result<()> {
        for c in &self.constraints {
            let v = c.eval_partial(at)?;
            if v.is_zero() {
                return Err(Error::ConstraintViolated(ScalarExpr::from_ratfunc(c).to_string()));
            }
        }
        Ok(())
    }

    /// Specializes the assigned parameters; unassigned ones stay generic.
    pub fn instantiate(&self, at: &Assignment) -> Result<Algebra> {
        self.check_constraints(at)?;
        let c = self.c.iter().map(|x| x.eval_partial(at)).collect::<Result<Vec<_>>>()?;
        let constraints = self
            .constraints
            .iter()
            .map(|x| x.eval_partial(at))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|x| x.as_constant().is_none())
            .collect();
        let params = self.params.iter().filter(|p| !at.contains_key(*p)).cloned().collect();
        Ok(Algebra { name: self.name.clone(), dim: self.dim, params, constraints, c })
    }

    /// Structure constants after substituting rational functions for
    /// parameters; the substitutes may involve `t`.
    pub fn constants_substituted(&self, map: &BTreeMap<Symbol, RatFunc>) -> Result<Vec<RatFunc>> {
        self.c.iter().map(|x| if x.vars().is_empty() { Ok(x.clone()) } else { x.subs(map) }).collect()
    }

    /// Replaces parameters by rational functions of new symbols, which become
    /// the parameters of the result. Unmapped parameters are kept.
    pub fn substitute_params(&self, map: &BTreeMap<Symbol, RatFunc>) -> Result<Algebra> {
        let c = self.constants_substituted(map)?;
        let mut constraints = Vec::new();
        for x in &self.constraints {
            let v = x.subs(map)?;
            if v.is_zero() {
                return Err(Error::ConstraintViolated(ScalarExpr::from_ratfunc(x).to_string()));
            }
            if v.as_constant().is_none() {
                constraints.push(v);
            }
        }
        let mut params: Vec<Symbol> = self.params.iter().filter(|p| !map.contains_key(*p)).cloned().collect();
        for s in map.values().flat_map(RatFunc::vars) {
            if !params.contains(&s) {
                params.push(s);
            }
        }
        Algebra::from_dense(self.name.clone(), self.dim, params, constraints, c)
    }

    /// `dim Der(A)`; generic in unassigned parameters.
    pub fn derivation_dim(&self, at: Option<&Assignment>) -> Result<usize> {
        let a = match at {
            Some(at) => self.instantiate(at)?,
            None => self.clone(),
        };
        let n = a.dim;
        // Unknown d_kl is column l*n + k: D(e_l) = Σ_k d_kl e_k.
        let var = |k: usize, l: usize| l * n + k;
        let mut rows = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut row = vec![RatFunc::zero(); n * n];
                    for l in 0..n {
                        let c = a.c(i, j, l);
                        if !c.is_zero() {
                            row[var(k, l)] = row[var(k, l)].add(c);
                        }
                        let c = a.c(l, j, k);
                        if !c.is_zero() {
                            row[var(l, i)] = row[var(l, i)].sub(c);
                        }
                        let c = a.c(i, l, k);
                        if !c.is_zero() {
                            row[var(l, j)] = row[var(l, j)].sub(c);
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        Ok(n * n - linalg::rank(&rows, n * n))
    }

    pub fn invariant_profile(&self, at: Option<&Assignment>) -> Result<InvariantProfile> {
        let a = match at {
            Some(at) => self.instantiate(at)?,
            None => self.clone(),
        };
        let flags = a.check_identities();
        let dp = a.derived_powers();
        Ok(InvariantProfile {
            dim_ann: a.annihilator_basis().len(),
            dims_derived: dp.dims,
            dim_der: a.derivation_dim(None)?,
            is_right_commutative: flags.right_commutative,
            is_left_symmetric: flags.left_symmetric,
            is_two_step: flags.two_step,
            nilpotency_index: dp.nilpotency_index,
        })
    }

    /// Structure constants in the basis `E_i = Σ_j b[i][j] e_j`, dense like
    /// [`constants`](Self::constants).
    pub fn constants_in_basis(c: &[RatFunc], n: usize, b: &[Vec<RatFunc>]) -> Result<Vec<RatFunc>> {
        if b.len() != n || b.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: b.len() });
        }
        let binv = linalg::inverse(b)?;
        let mut out = vec![RatFunc::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                // E_i · E_j in old coordinates.
                let mut v = vec![RatFunc::zero(); n];
                for p in 0..n {
                    if b[i][p].is_zero() {
                        continue;
                    }
                    for q in 0..n {
                        if b[j][q].is_zero() {
                            continue;
                        }
                        let w = b[i][p].mul(&b[j][q]);
                        for (r, vr) in v.iter_mut().enumerate() {
                            let cc = &c[(p * n + q) * n + r];
                            if !cc.is_zero() {
                                *vr = vr.add(&w.mul(cc));
                            }
                        }
                    }
                }
                // Row vector times B⁻¹.
                for k in 0..n {
                    let mut s = RatFunc::zero();
                    for r in 0..n {
                        if !v[r].is_zero() && !binv[r][k].is_zero() {
                            s = s.add(&v[r].mul(&binv[r][k]));
                        }
                    }
                    out[(i * n + j) * n + k] = s;
                }
            }
        }
        Ok(out)
    }

    pub fn in_basis(&self, b: &[Vec<RatFunc>]) -> Result<Algebra> {
        let c = Self::constants_in_basis(&self.c, self.dim, b)?;
        Ok(Algebra { c, ..self.clone() })
    }

    /// Same dimension and identical structure constants.
    pub fn same_constants(&self, o: &Algebra) -> bool {
        self.dim == o.dim && self.c == o.c
    }

    /// One-based nonzero products `(i, j, k, c)`.
    pub fn nonzero_products(&self) -> Vec<(usize, usize, usize, RatFunc)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        out.push((i + 1, j + 1, k + 1, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            name: self.name.clone(),
            dim: self.dim,
            params: self.params.iter().map(|p| p.to_string()).collect(),
            constraints_nonzero: self.constraints.iter().map(|c| ScalarExpr::from_ratfunc(c).to_string()).collect(),
            products: self
                .nonzero_products()
                .into_iter()
                .map(|(i, j, k, c)| ProductJson { i, j, k, c: ScalarExpr::from_ratfunc(&c).to_string() })
                .collect(),
        }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self> {
        let params: Vec<&str> = j.params.iter().map(String::as_str).collect();
        let cons: Vec<&str> = j.constraints_nonzero.iter().map(String::as_str).collect();
        let prods: Vec<(usize, usize, usize, &str)> = j.products.iter().map(|p| (p.i, p.j, p.k, p.c.as_str())).collect();
        Self::new(j.name.clone(), j.dim, &params, &cons, &prods)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    /// Multiplication table, e.g. `e1e1 = e2, e2e1 = lambda*e3`.
    pub fn table(&self) -> String {
        let n = self.dim;
        let mut parts = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = self.product_of_basis(i, j);
                if v.iter().all(RatFunc::is_zero) {
                    continue;
                }
                parts.push(format!("e{}e{} = {}", i + 1, j + 1, format_vector(&v)));
            }
        }
        if parts.is_empty() {
            "zero product".to_string()
        } else {
            parts.join(", ")
        }
    }
}

fn check_index(dim: usize, i: usize, j: usize, k: usize) -> Result<()> {
    for x in [i, j, k] {
        if x == 0 || x > dim {
            return Err(Error::InvalidAlgebra(format!("index {x} outside 1..={dim}")));
        }
    }
    Ok(())
}

/// `2*e1 - lambda*e3` style rendering.
pub fn format_vector(v: &[RatFunc]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = ScalarExpr::from_ratfunc(c);
        let s = e.to_string();
        let (neg, body) = match &e {
            ScalarExpr::Neg(inner) => (true, inner.to_string()),
            _ => (false, s.clone()),
        };
        let needs_paren = body.contains(" + ") || body.contains(" - ") || body.contains('/');
        let coeff = if body == "1" {
            String::new()
        } else if needs_paren {
            format!("({body})*")
        } else {
            format!("{body}*")
        };
        let term = format!("{coeff}e{}", k + 1);
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&term),
            (true, true) => out.push_str(&format!("-{term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
            (false, true) => out.push_str(&format!(" - {term}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.params.is_empty() {
            write!(f, "{}: {}", self.name, self.table())
        } else {
            let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, "{}({}): {}", self.name, ps.join(", "), self.table())
        }
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n3_02() -> Algebra {
        Algebra::new("N3_02", 3, &["lambda"], &[], &[(1, 1, 2, "1"), (1, 2, 3, "1"), (2, 1, 3, "lambda")]).unwrap()
    }

    #[test]
    fn multiply_basis_and_zero() {
        let a = n3_02();
        assert_eq!(a.multiply(&a.basis_vector(1), &a.basis_vector(0)).unwrap()[2], RatFunc::var(Symbol::new("lambda")));
        let z = vec![RatFunc::zero(); 3];
        assert_eq!(a.multiply(&z, &a.basis_vector(0)).unwrap(), z);
        assert!(matches!(a.multiply(&z[..2], &z), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn identities_and_powers() {
        let a = n3_02();
        let f = a.check_identities();
        assert!(f.novikov && !f.two_step);
        let dp = a.derived_powers();
        assert_eq!(dp.dims, vec![3, 2, 1, 0]);
        assert_eq!(dp.nilpotency_index, Some(4));
        let z = Algebra::zero(4);
        assert_eq!(z.derived_powers().dims, vec![4, 0]);
        assert_eq!(z.derived_powers().nilpotency_index, Some(2));
    }

    #[test]
    fn non_novikov_is_detected() {
        // e1e2 = e3 = -e2e1, e1e3 = e4: (e1e2)e1 = 0 but (e1e1)e2 = 0 and
        // e1(e2e1) = -e4, so left symmetry fails.
        let a = Algebra::new("x", 4, &[], &[], &[(1, 2, 3, "1"), (2, 1, 3, "-1"), (1, 3, 4, "1")]).unwrap();
        assert!(!a.check_identities().novikov);
    }

    #[test]
    fn annihilator_and_derivations_of_zero_algebra() {
        let z = Algebra::zero(4);
        assert_eq!(z.annihilator_basis().len(), 4);
        assert_eq!(z.derivation_dim(None).unwrap(), 16);
        let p = z.invariant_profile(None).unwrap();
        assert!(p.is_two_step && p.is_left_symmetric && p.is_right_commutative);
    }

    #[test]
    fn constraint_violation() {
        let a = Algebra::new("x", 3, &["lambda"], &["lambda"], &[(1, 1, 3, "lambda"), (2, 1, 3, "1")]).unwrap();
        let at: Assignment = [(Symbol::new("lambda"), GaussRational::from_int(0))].into();
        assert!(matches!(a.derivation_dim(Some(&at)), Err(Error::ConstraintViolated(_))));
    }

    #[test]
    fn json_round_trip() {
        let a = n3_02();
        let s = serde_json::to_string(&a.to_json()).unwrap();
        assert_eq!(Algebra::from_json_str(&s).unwrap(), a);
        assert!(Algebra::from_json_str(r#"{"name":"x","dim":2,"products":[{"i":1,"j":3,"k":1,"c":"1"}]}"#).is_err());
        assert!(Algebra::from_json_str(r#"{"name":"x","dim":2,"products":[{"i":1,"j":1,"k":2,"c":"mu"}]}"#).is_err());
    }

    #[test]
    fn scaling_basis_scales_constants() {
        let a = n3_02();
        let t = RatFunc::var(Symbol::new("t"));
        let b: Vec<Vec<RatFunc>> =
            (0..3).map(|i| (0..3).map(|j| if i == j { t.clone() } else { RatFunc::zero() }).collect()).collect();
        let c = Algebra::constants_in_basis(a.constants(), 3, &b).unwrap();
        for (x, y) in c.iter().zip(a.constants()) {
            assert_eq!(*x, y.mul(&t));
        }
    }

    #[test]
    fn table_rendering() {
        assert_eq!(n3_02().table(), "e1e1 = e2, e1e2 = e3, e2e1 = lambda*e3");
    }
}
