//! Second cohomology of an algebra with trivial coefficients, central
//! extensions and the action of automorphisms on cocycles.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Assignment, Vector};
use crate::arith::expr::ScalarExpr;
use crate::arith::gauss::GaussRational;
use crate::arith::poly::Symbol;
use crate::arith::ratfunc::RatFunc;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::sample;

/// Bilinear form `θ = Σ θ_ij Δ_ij`; `matrix[i][j]` is the coefficient of `Δ_ij`.
#[derive(Clone, PartialEq, Eq)]
pub struct Cocycle {
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub algebra: String,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub i: usize,
    pub j: usize,
    pub c: String,
}

impl Cocycle {
    pub fn zero(n: usize) -> Self {
        Cocycle { matrix: vec![vec![RatFunc::zero(); n]; n] }
    }

    /// `Δ_ij` with one-based indices.
    pub fn delta(n: usize, i: usize, j: usize) -> Self {
        let mut c = Self::zero(n);
        c.matrix[i - 1][j - 1] = RatFunc::one();
        c
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// Builds a form from one-based `(i, j, coefficient)` entries; repeats add up.
    pub fn from_entries(n: usize, entries: &[(usize, usize, &str)]) -> Result<Self> {
        let mut c = Self::zero(n);
        for &(i, j, e) in entries {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::DimensionMismatch { expected: n, found: i.max(j) });
            }
            let v = ScalarExpr::parse(e)?.to_ratfunc()?;
            c.matrix[i - 1][j - 1] = c.matrix[i - 1][j - 1].add(&v);
        }
        Ok(c)
    }

    /// Parses a linear combination such as `D12 + alpha*D33 - 2*Delta21`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let e = ScalarExpr::parse(s)?;
        let f = e.to_ratfunc()?;
        let mut deltas = BTreeMap::new();
        for sym in e.symbols() {
            if let Some((i, j)) = delta_indices(sym.as_str()) {
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(Error::DimensionMismatch { expected: n, found: i.max(j) });
                }
                deltas.insert(sym, (i, j));
            }
        }
        let subs_all = |val: Option<&Symbol>| -> Result<RatFunc> {
            let map: BTreeMap<Symbol, RatFunc> = deltas
                .keys()
                .map(|k| (k.clone(), if Some(k) == val { RatFunc::one() } else { RatFunc::zero() }))
                .collect();
            f.subs(&map)
        };
        let base = subs_all(None)?;
        if !base.is_zero() {
            return Err(Error::Parse { pos: 0, msg: "cocycle has a term without any Δ".into() });
        }
        let mut c = Self::zero(n);
        for (sym, (i, j)) in &deltas {
            let coeff = subs_all(Some(sym))?;
            // Linearity: doubling the Δ doubles the value.
            let map: BTreeMap<Symbol, RatFunc> = deltas
                .keys()
                .map(|k| (k.clone(), if k == sym { RatFunc::int(2) } else { RatFunc::zero() }))
                .collect();
            if f.subs(&map)? != coeff.scale(&GaussRational::from_int(2)) {
                return Err(Error::Parse { pos: 0, msg: format!("`{sym}` does not enter linearly") });
            }
            c.matrix[i - 1][j - 1] = c.matrix[i - 1][j - 1].add(&coeff);
        }
        Ok(c)
    }

    pub fn to_vector(&self) -> Vector {
        self.matrix.iter().flatten().cloned().collect()
    }

    pub fn from_vector(n: usize, v: &[RatFunc]) -> Self {
        Cocycle { matrix: v.chunks(n).map(<[RatFunc]>::to_vec).collect() }
    }

    pub fn add(&self, o: &Cocycle) -> Cocycle {
        let v: Vec<RatFunc> = self.to_vector().iter().zip(o.to_vector()).map(|(a, b)| a.add(&b)).collect();
        Self::from_vector(self.dim(), &v)
    }

    pub fn scale(&self, k: &RatFunc) -> Cocycle {
        let v: Vec<RatFunc> = self.to_vector().iter().map(|a| a.mul(k)).collect();
        Self::from_vector(self.dim(), &v)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(RatFunc::is_zero)
    }

    pub fn eval_partial(&self, at: &Assignment) -> Result<Cocycle> {
        let m = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|x| x.eval_partial(at)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Cocycle { matrix: m })
    }

    pub fn to_json(&self, algebra: &str) -> CocycleJson {
        let mut entries = Vec::new();
        for (i, r) in self.matrix.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    entries.push(EntryJson { i: i + 1, j: j + 1, c: ScalarExpr::from_ratfunc(x).to_string() });
                }
            }
        }
        CocycleJson { algebra: algebra.to_string(), entries }
    }

    pub fn from_json(n: usize, j: &CocycleJson) -> Result<Self> {
        let e: Vec<(usize, usize, &str)> = j.entries.iter().map(|e| (e.i, e.j, e.c.as_str())).collect();
        Self::from_entries(n, &e)
    }
}

fn delta_indices(name: &str) -> Option<(usize, usize)> {
    let digits = name.strip_prefix("Delta").or_else(|| name.strip_prefix('D'))?;
    let digits = digits.replace('_', "");
    let b = digits.as_bytes();
    if b.len() != 2 || !b.iter().all(u8::is_ascii_digit) {
        return None;
    }
    Some(((b[0] - b'0') as usize, (b[1] - b'0') as usize))
}

impl fmt::Display for Cocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, r) in self.matrix.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let d = format!("D{}{}", i + 1, j + 1);
                let e = ScalarExpr::from_ratfunc(x).to_string();
                parts.push(if e == "1" {
                    d
                } else if e.contains(' ') || e.contains('/') {
                    format!("({e})*{d}")
                } else {
                    format!("{e}*{d}")
                });
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for Cocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `Z²`, `B²` and lifts of an `H²` basis.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub z2: Vec<Cocycle>,
    pub b2: Vec<Cocycle>,
    pub h2: Vec<Cocycle>,
}

fn check_dim(a: &Algebra, c: &Cocycle) -> Result<()> {
    if c.dim() != a.dim() || c.matrix.iter().any(|r| r.len() != a.dim()) {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: c.dim() });
    }
    Ok(())
}

/// Rows of the linear system cutting out `Z²`; unknown `θ_ab` is column `a·n + b`.
fn cocycle_conditions(a: &Algebra) -> Vec<Vector> {
    let n = a.dim();
    let col = |p: usize, q: usize| p * n + q;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut r1 = vec![RatFunc::zero(); n * n];
                let mut r2 = vec![RatFunc::zero(); n * n];
                for l in 0..n {
                    let add = |row: &mut Vec<RatFunc>, idx: usize, c: &RatFunc, sign: bool| {
                        if !c.is_zero() {
                            row[idx] = if sign { row[idx].add(c) } else { row[idx].sub(c) };
                        }
                    };
                    // θ(e_i e_j, e_k) = θ(e_i e_k, e_j)
                    add(&mut r1, col(l, k), a.c(i, j, l), true);
                    add(&mut r1, col(l, j), a.c(i, k, l), false);
                    // θ(xy,z) − θ(x,yz) − θ(yx,z) + θ(y,xz) = 0
                    add(&mut r2, col(l, k), a.c(i, j, l), true);
                    add(&mut r2, col(i, l), a.c(j, k, l), false);
                    add(&mut r2, col(l, k), a.c(j, i, l), false);
                    add(&mut r2, col(j, l), a.c(i, k, l), true);
                }
                for r in [r1, r2] {
                    if r.iter().any(|x| !x.is_zero()) {
                        rows.push(r);
                    }
                }
            }
        }
    }
    rows
}

pub fn is_cocycle(a: &Algebra, theta: &Cocycle) -> Result<bool> {
    check_dim(a, theta)?;
    let v = theta.to_vector();
    Ok(cocycle_conditions(a).iter().all(|row| {
        row.iter().zip(&v).fold(RatFunc::zero(), |s, (x, y)| if x.is_zero() || y.is_zero() { s } else { s.add(&x.mul(y)) }).is_zero()
    }))
}

/// Coboundary slices `C^(k)_ij = c_ij^k`, all of them.
pub fn coboundary_slices(a: &Algebra) -> Vec<Cocycle> {
    let n = a.dim();
    (0..n)
        .map(|k| Cocycle { matrix: (0..n).map(|i| (0..n).map(|j| a.c(i, j, k).clone()).collect()).collect() })
        .collect()
}

pub fn cocycle_space(a: &Algebra) -> CocycleSpace {
    let n = a.dim();
    let z2v = linalg::nullspace(&cocycle_conditions(a), n * n);
    let slices: Vec<Vector> = coboundary_slices(a).iter().map(Cocycle::to_vector).collect();
    let b2v: Vec<Vector> = linalg::independent_subset(&slices, n * n).into_iter().map(|i| slices[i].clone()).collect();
    let mut stacked = b2v.clone();
    stacked.extend(z2v.iter().cloned());
    let h2v: Vec<Vector> = linalg::independent_subset(&stacked, n * n)
        .into_iter()
        .filter(|&i| i >= b2v.len())
        .map(|i| stacked[i].clone())
        .collect();
    let to_c = |vs: Vec<Vector>| vs.iter().map(|v| Cocycle::from_vector(n, v)).collect();
    CocycleSpace { z2: to_c(z2v), b2: to_c(b2v), h2: to_c(h2v) }
}

/// Basis of `∩ Ann(θ)`.
pub fn cocycle_annihilator(a: &Algebra, thetas: &[Cocycle]) -> Result<Vec<Vector>> {
    let n = a.dim();
    let mut rows = Vec::new();
    for th in thetas {
        check_dim(a, th)?;
        for b in 0..n {
            rows.push((0..n).map(|x| th.matrix[x][b].clone()).collect());
            rows.push((0..n).map(|x| th.matrix[b][x].clone()).collect());
        }
    }
    Ok(linalg::nullspace(&rows, n))
}

/// `Ann(θ_1) ∩ … ∩ Ann(θ_s) ∩ Ann(A) = 0`.
pub fn has_trivial_intersection(a: &Algebra, thetas: &[Cocycle]) -> Result<bool> {
    let ann_t = cocycle_annihilator(a, thetas)?;
    let ann_a = a.annihilator_basis();
    Ok(linalg::intersect(&ann_t, &ann_a, a.dim()).is_empty())
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub base: Algebra,
    pub cocycles: Vec<Cocycle>,
    pub result: Algebra,
}

/// `A_θ = A ⊕ V` with `[x, y] = xy + Σ θ_m(x, y) e_{n+m}`.
pub fn central_extension(a: &Algebra, thetas: &[Cocycle]) -> Result<Extension> {
    for th in thetas {
        if !is_cocycle(a, th)? {
            return Err(Error::NotCocycle);
        }
    }
    let n = a.dim();
    let m = n + thetas.len();
    let mut c = vec![RatFunc::zero(); m * m * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[(i * m + j) * m + k] = a.c(i, j, k).clone();
            }
            for (s, th) in thetas.iter().enumerate() {
                c[(i * m + j) * m + n + s] = th.matrix[i][j].clone();
            }
        }
    }
    let mut params = a.params().to_vec();
    for th in thetas {
        for s in th.matrix.iter().flatten().flat_map(RatFunc::vars) {
            if !params.contains(&s) {
                params.push(s);
            }
        }
    }
    let result = Algebra::from_dense(
        format!("{}_ext", a.name()),
        m,
        params,
        a.constraints().to_vec(),
        c,
    )?;
    Ok(Extension { base: a.clone(), cocycles: thetas.to_vec(), result })
}

#[derive(Clone, Debug)]
pub struct Split {
    pub quotient: Algebra,
    pub cocycles: Vec<Cocycle>,
    /// Rows are the new basis: chosen standard complement, then `W`.
    pub basis: Matrix,
    /// The input algebra rewritten in `basis`.
    pub relabeled: Algebra,
}

/// Splits off a subspace `W ⊆ Ann(A)`: `A ≅ (A/W)_θ`.
pub fn split_central_extension(a: &Algebra, w: &[Vector]) -> Result<Split> {
    let n = a.dim();
    let s = w.len();
    if s == 0 || w.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: w.first().map_or(0, Vec::len) });
    }
    if linalg::rank(w, n) != s {
        return Err(Error::InvalidAlgebra("subspace generators are dependent".into()));
    }
    for v in w {
        for j in 0..n {
            let e = a.basis_vector(j);
            if a.multiply(v, &e)?.iter().chain(a.multiply(&e, v)?.iter()).any(|x| !x.is_zero()) {
                return Err(Error::NotInAnnihilator);
            }
        }
    }
    let mut chosen: Vec<Vector> = Vec::new();
    for i in 0..n {
        if chosen.len() == n - s {
            break;
        }
        let e = a.basis_vector(i);
        let mut all: Vec<Vector> = chosen.clone();
        all.extend(w.iter().cloned());
        if !linalg::in_span(&all, &e) {
            chosen.push(e);
        }
    }
    let mut basis = chosen;
    basis.extend(w.iter().cloned());
    let relabeled = a.in_basis(&basis)?;
    let q = n - s;
    let mut qc = vec![RatFunc::zero(); q * q * q];
    let mut thetas = vec![Cocycle::zero(q); s];
    for i in 0..q {
        for j in 0..q {
            for k in 0..q {
                qc[(i * q + j) * q + k] = relabeled.c(i, j, k).clone();
            }
            for (m, th) in thetas.iter_mut().enumerate() {
                th.matrix[i][j] = relabeled.c(i, j, q + m).clone();
            }
        }
    }
    let quotient = Algebra::from_dense(
        format!("{}_quot", a.name()),
        q,
        a.params().to_vec(),
        a.constraints().to_vec(),
        qc,
    )?;
    Ok(Split { quotient, cocycles: thetas, basis, relabeled })
}

/// Splits along `w`, re-extends the quotient and maps back; true when the
/// original constants come out.
pub fn split_roundtrip(a: &Algebra, w: &[Vector]) -> Result<bool> {
    let sp = split_central_extension(a, w)?;
    let ext = central_extension(&sp.quotient, &sp.cocycles)?.result;
    if !ext.same_constants(&sp.relabeled) {
        return Ok(false);
    }
    let back = ext.in_basis(&linalg::inverse(&sp.basis)?)?;
    Ok(back.same_constants(a))
}

/// `φ(e_i)` is column `i` of `phi`.
pub fn is_automorphism(a: &Algebra, phi: &Matrix, at: Option<&Assignment>) -> Result<bool> {
    let (a, phi) = match at {
        Some(at) => (a.instantiate(at)?, eval_matrix(phi, at)?),
        None => (a.clone(), phi.clone()),
    };
    let n = a.dim();
    if phi.len() != n || phi.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: phi.len() });
    }
    linalg::inverse(&phi)?;
    let cols: Vec<Vector> = (0..n).map(|i| (0..n).map(|r| phi[r][i].clone()).collect()).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = a.multiply(&cols[i], &cols[j])?;
            let mut rhs = vec![RatFunc::zero(); n];
            for (k, col) in cols.iter().enumerate() {
                let c = a.c(i, j, k);
                if c.is_zero() {
                    continue;
                }
                for (r, x) in rhs.iter_mut().enumerate() {
                    *x = x.add(&c.mul(&col[r]));
                }
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn eval_matrix(m: &Matrix, at: &Assignment) -> Result<Matrix> {
    m.iter().map(|r| r.iter().map(|x| x.eval_partial(at)).collect()).collect()
}

/// `φᵀ θ φ`, i.e. `(φθ)(x, y) = θ(φx, φy)`.
pub fn act_on_cocycle(a: &Algebra, phi: &Matrix, theta: &Cocycle) -> Result<Cocycle> {
    check_dim(a, theta)?;
    if !is_automorphism(a, phi, None)? {
        return Err(Error::NotAutomorphism);
    }
    Ok(conjugate(phi, theta))
}

fn conjugate(phi: &Matrix, theta: &Cocycle) -> Cocycle {
    let m = linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(phi), &theta.matrix), phi);
    Cocycle { matrix: m }
}

/// Data for checking a stated `α ↦ α*` action.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionCase {
    pub id: String,
    pub base: String,
    /// Rows of the automorphism template; columns are images of basis vectors.
    pub template: Vec<Vec<String>>,
    /// Free entries of the template, sampled at random.
    pub vars: Vec<String>,
    /// Algebra parameters, sampled at random (nonzero unless listed in `param_allow_zero`).
    #[serde(default)]
    pub params: Vec<String>,
    /// `∇_k` as linear combinations of `D_ij`.
    pub nabla: Vec<String>,
    /// `α_k*` in terms of `a1, a2, …`, the template vars and params; compared
    /// with coordinates of `φᵀθφ` modulo `B²`.
    pub projected: Vec<String>,
    /// Displayed entries of `φᵀθφ`, compared with the raw matrix entries.
    #[serde(default)]
    pub raw_entries: Vec<EntryJson>,
    #[serde(default)]
    pub reading_note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionReport {
    pub id: String,
    pub samples: usize,
    pub template_is_automorphism: bool,
    pub projected_matches: bool,
    /// `None` when the case lists no displayed entries.
    pub raw_matches: Option<bool>,
    pub counterexample: Option<String>,
}

impl ActionReport {
    pub fn pass(&self) -> bool {
        self.template_is_automorphism && self.projected_matches && self.raw_matches.unwrap_or(true)
    }
}

pub fn parse_matrix(rows: &[Vec<String>]) -> Result<Matrix> {
    rows.iter().map(|r| r.iter().map(|s| ScalarExpr::parse(s)?.to_ratfunc()).collect()).collect()
}

/// Coordinates of `v` in the independent list `basis`, if it lies in the span.
fn coordinates(basis: &[Vector], v: &Vector) -> Option<Vec<RatFunc>> {
    let dim = v.len();
    let k = basis.len();
    let m: Vec<Vector> = (0..dim).map(|r| basis.iter().map(|b| b[r].clone()).chain([v[r].neg()]).collect()).collect();
    let ns = linalg::nullspace(&m, k + 1);
    let sol = ns.into_iter().find(|x| !x[k].is_zero())?;
    let s = sol[k].clone();
    Some(sol[..k].iter().map(|x| x.div(&s).expect("nonzero")).collect())
}

/// Checks the stated formulas against direct conjugation at random samples.
pub fn verify_action_formulas(a: &Algebra, case: &ActionCase, samples: usize, seed: u64) -> Result<ActionReport> {
    let n = a.dim();
    let template = parse_matrix(&case.template)?;
    let nabla: Vec<Cocycle> = case.nabla.iter().map(|s| Cocycle::parse(n, s)).collect::<Result<_>>()?;
    let r = nabla.len();
    let alphas: Vec<Symbol> = (1..=r).map(|k| Symbol::new(&format!("a{k}"))).collect();
    let projected: Vec<RatFunc> =
        case.projected.iter().map(|s| ScalarExpr::parse(s)?.to_ratfunc()).collect::<Result<_>>()?;
    if projected.len() != r {
        return Err(Error::DimensionMismatch { expected: r, found: projected.len() });
    }
    let raw: Vec<(usize, usize, RatFunc)> = case
        .raw_entries
        .iter()
        .map(|e| Ok((e.i, e.j, ScalarExpr::parse(&e.c)?.to_ratfunc()?)))
        .collect::<Result<_>>()?;

    let mut rng = sample::rng(seed);
    let mut report = ActionReport {
        id: case.id.clone(),
        samples: 0,
        template_is_automorphism: true,
        projected_matches: true,
        raw_matches: if raw.is_empty() { None } else { Some(true) },
        counterexample: None,
    };
    let mut attempts = 0;
    while report.samples < samples {
        attempts += 1;
        if attempts > samples * 20 {
            return Err(Error::Singular);
        }
        let mut at = Assignment::new();
        for v in case.vars.iter().chain(&case.params) {
            at.insert(Symbol::new(v), sample::random_rational(&mut rng));
        }
        for s in &alphas {
            at.insert(s.clone(), sample::random_rational(&mut rng));
        }
        let Ok(alg) = a.instantiate(&at) else { continue };
        let phi = eval_matrix(&template, &at)?;
        if linalg::inverse(&phi).is_err() {
            continue;
        }
        report.samples += 1;
        let describe = |what: &str| {
            let vals: Vec<String> = at.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("{what} at {}", vals.join(", "))
        };
        if !is_automorphism(&alg, &phi, None)? {
            report.template_is_automorphism = false;
            report.counterexample.get_or_insert_with(|| describe("template is not an automorphism"));
            continue;
        }
        let nab: Vec<Cocycle> = nabla.iter().map(|c| c.eval_partial(&at)).collect::<Result<_>>()?;
        let theta = nab.iter().zip(&alphas).fold(Cocycle::zero(n), |s, (c, al)| s.add(&c.scale(&RatFunc::constant(at[al].clone()))));
        let image = conjugate(&phi, &theta);

        let space = cocycle_space(&alg);
        let mut basis: Vec<Vector> = nab.iter().map(Cocycle::to_vector).collect();
        basis.extend(space.b2.iter().map(Cocycle::to_vector));
        match coordinates(&basis, &image.to_vector()) {
            Some(coords) => {
                for (k, f) in projected.iter().enumerate() {
                    if coords[k] != f.eval_partial(&at)? {
                        report.projected_matches = false;
                        report.counterexample.get_or_insert_with(|| describe(&format!("a{}* mismatch", k + 1)));
                    }
                }
            }
            None => {
                report.projected_matches = false;
                report.counterexample.get_or_insert_with(|| describe("image leaves span of ∇ and B²"));
            }
        }
        for (i, j, f) in &raw {
            if image.matrix[i - 1][j - 1] != f.eval_partial(&at)? {
                report.raw_matches = Some(false);
                report.counterexample.get_or_insert_with(|| describe(&format!("entry ({i},{j}) mismatch")));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n2s_01() -> Algebra {
        Algebra::new("N2s_01", 2, &[], &[], &[(1, 1, 2, "1")]).unwrap()
    }

    fn n3s_01() -> Algebra {
        Algebra::new("N3s_01", 3, &[], &[], &[(1, 1, 2, "1")]).unwrap()
    }

    #[test]
    fn cocycle_examples() {
        assert!(is_cocycle(&n2s_01(), &Cocycle::zero(2)).unwrap());
        assert!(!is_cocycle(&n2s_01(), &Cocycle::delta(2, 2, 2)).unwrap());
        assert!(is_cocycle(&n3s_01(), &Cocycle::parse(3, "D12 + D31").unwrap()).unwrap());
    }

    #[test]
    fn cocycle_space_dims() {
        let s = cocycle_space(&n2s_01());
        assert_eq!((s.z2.len(), s.b2.len(), s.h2.len()), (3, 1, 2));
        let s = cocycle_space(&Algebra::zero(2));
        assert_eq!((s.z2.len(), s.b2.len(), s.h2.len()), (4, 0, 4));
        let s = cocycle_space(&n3s_01());
        assert_eq!((s.z2.len(), s.b2.len(), s.h2.len()), (6, 1, 5));
    }

    #[test]
    fn annihilators_of_forms() {
        let a = n3s_01();
        let th = Cocycle::parse(3, "D12 + D31").unwrap();
        let ann = cocycle_annihilator(&a, std::slice::from_ref(&th)).unwrap();
        assert!(ann.is_empty());
        assert_eq!(cocycle_annihilator(&a, &[Cocycle::delta(3, 1, 2)]).unwrap().len(), 1);
        assert!(has_trivial_intersection(&a, &[th]).unwrap());
        assert!(!has_trivial_intersection(&Algebra::zero(2), &[Cocycle::delta(2, 1, 1)]).unwrap());
    }

    #[test]
    fn extension_and_split_round_trip() {
        let th = Cocycle::parse(3, "D12 + D31").unwrap();
        let ext = central_extension(&n3s_01(), std::slice::from_ref(&th)).unwrap().result;
        assert_eq!(ext.table(), "e1e1 = e2, e1e2 = e4, e3e1 = e4");
        let sp = split_central_extension(&ext, &[ext.basis_vector(3)]).unwrap();
        assert_eq!(sp.cocycles, vec![th]);
        assert!(sp.quotient.same_constants(&n3s_01()));
        let back = central_extension(&sp.quotient, &sp.cocycles).unwrap().result;
        assert!(back.same_constants(&sp.relabeled));
        assert!(matches!(central_extension(&n2s_01(), &[Cocycle::delta(2, 2, 2)]), Err(Error::NotCocycle)));
    }

    #[test]
    fn split_rejects_non_central_vectors() {
        let a = n2s_01();
        assert!(matches!(split_central_extension(&a, &[a.basis_vector(0)]), Err(Error::NotInAnnihilator)));
    }

    #[test]
    fn automorphisms_and_action() {
        let a = n3s_01();
        let phi = parse_matrix(&[
            vec!["1".into(), "0".into(), "0".into()],
            vec!["0".into(), "1".into(), "0".into()],
            vec!["0".into(), "0".into(), "2".into()],
        ])
        .unwrap();
        assert!(is_automorphism(&a, &phi, None).unwrap());
        let img = act_on_cocycle(&a, &phi, &Cocycle::delta(3, 3, 3)).unwrap();
        assert_eq!(img.matrix[2][2], RatFunc::int(4));
        let mut bad = phi.clone();
        bad[0][1] = RatFunc::one();
        assert!(!is_automorphism(&a, &bad, None).unwrap());
        assert!(matches!(act_on_cocycle(&a, &bad, &Cocycle::delta(3, 3, 3)), Err(Error::NotAutomorphism)));
    }

    #[test]
    fn parse_rejects_nonlinear_and_constant_terms() {
        assert!(Cocycle::parse(3, "D12*D12").is_err());
        assert!(Cocycle::parse(3, "D12 + 1").is_err());
        assert!(Cocycle::parse(2, "D13").is_err());
        assert_eq!(Cocycle::parse(2, "2*Delta12 - D21").unwrap().to_string(), "2*D12 + -1*D21");
    }
}
