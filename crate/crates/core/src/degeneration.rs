//! Degeneration witnesses: a basis `E_i^t = Σ a_i^j(t) e_j`, possibly with a
//! parametrized index, whose structure constants tend to those of the target
//! as `t → 0`.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::dot::Dot;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::Dfs;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Assignment, T};
use crate::arith::bigfloat::{bits_for_digits, BigFloat, Complex};
use crate::arith::expr::ScalarExpr;
use crate::arith::gauss::{GaussRational, Rational};
use crate::arith::poly::Symbol;
use crate::arith::ratfunc::RatFunc;
use crate::catalog::{format_assignment, Catalog};
use crate::error::{Error, Result};
use crate::linalg;
use crate::sample;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    #[default]
    Auto,
    Exact,
    Numeric,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    /// As printed in the degeneration table.
    #[default]
    Literal,
    /// A corrected reading of a printed row.
    Erratum,
    /// An alternative source family for a row that fails as printed.
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationWitness {
    pub id: String,
    #[serde(default)]
    pub row: Option<usize>,
    #[serde(default)]
    pub kind: WitnessKind,
    pub source: String,
    /// Parametrized index: source parameter → expression in `t` and free symbols.
    #[serde(default)]
    pub source_params: BTreeMap<String, String>,
    pub target: String,
    /// Target parameter → expression in free symbols, or `"free"`.
    #[serde(default)]
    pub target_params: BTreeMap<String, String>,
    /// Rows `E_i` in coordinates of `e_1..e_n`.
    pub basis: Vec<Vec<String>>,
    #[serde(default)]
    pub tier: Tier,
    /// Expressions in the free symbols that samples must keep nonzero.
    #[serde(default)]
    pub nonzero: Vec<String>,
    /// Fixed sample values for a single free symbol.
    #[serde(default)]
    pub samples: Vec<String>,
    #[serde(default)]
    pub note: Option<String>,
}

impl DegenerationWitness {
    pub fn is_proper(&self) -> bool {
        self.source != self.target || self.source_params != self.target_params
    }
}

struct Parsed {
    source: Algebra,
    target: Algebra,
    src_map: BTreeMap<Symbol, ScalarExpr>,
    tgt_map: BTreeMap<Symbol, ScalarExpr>,
    basis: Vec<Vec<ScalarExpr>>,
    free: Vec<Symbol>,
    nonzero: Vec<RatFunc>,
    t: Symbol,
}

fn parse_witness(cat: &Catalog, w: &DegenerationWitness) -> Result<Parsed> {
    let source = cat.entry(&w.source)?.algebra.clone();
    let target = cat.entry(&w.target)?.algebra.clone();
    let n = source.dim();
    if target.dim() != n || w.basis.len() != n || w.basis.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidWitness(format!("{}: dimensions of source, target and basis differ", w.id)));
    }
    let t = Symbol::new(T);
    let parse_map = |m: &BTreeMap<String, String>, alg: &Algebra| -> Result<BTreeMap<Symbol, ScalarExpr>> {
        let mut out = BTreeMap::new();
        for (k, v) in m {
            let s = Symbol::new(k);
            if !alg.params().contains(&s) {
                return Err(Error::InvalidWitness(format!("{}: {} has no parameter `{k}`", w.id, alg.name())));
            }
            let e = if v == "free" { ScalarExpr::Sym(s.clone()) } else { ScalarExpr::parse(v)? };
            out.insert(s, e);
        }
        Ok(out)
    };
    let src_map = parse_map(&w.source_params, &source)?;
    let tgt_map = parse_map(&w.target_params, &target)?;
    if tgt_map.values().any(|e| e.contains_sym(&t)) {
        return Err(Error::InvalidWitness(format!("{}: target parameters may not depend on t", w.id)));
    }
    let basis = w.basis.iter().map(|r| r.iter().map(|s| ScalarExpr::parse(s)).collect()).collect::<Result<Vec<Vec<_>>>>()?;
    let mut free = BTreeSet::new();
    for e in src_map.values().chain(tgt_map.values()).chain(basis.iter().flatten()) {
        free.extend(e.symbols());
    }
    for p in source.params().iter().filter(|p| !src_map.contains_key(*p)) {
        free.insert(p.clone());
    }
    for p in target.params().iter().filter(|p| !tgt_map.contains_key(*p)) {
        free.insert(p.clone());
    }
    free.remove(&t);
    let nonzero = w.nonzero.iter().map(|s| ScalarExpr::parse(s)?.to_ratfunc()).collect::<Result<Vec<_>>>()?;
    Ok(Parsed { source, target, src_map, tgt_map, basis, free: free.into_iter().collect(), nonzero, t })
}

impl Parsed {
    fn has_root(&self) -> bool {
        self.src_map.values().chain(self.tgt_map.values()).chain(self.basis.iter().flatten()).any(ScalarExpr::has_root)
    }

    fn rat_map(m: &BTreeMap<Symbol, ScalarExpr>) -> Result<BTreeMap<Symbol, RatFunc>> {
        m.iter().map(|(k, v)| Ok((k.clone(), v.to_ratfunc()?))).collect()
    }

    /// Constraints of both families expressed in the free symbols, where rational.
    fn family_constraints(&self) -> Vec<RatFunc> {
        let mut out = self.nonzero.clone();
        for (alg, map) in [(&self.source, &self.src_map), (&self.target, &self.tgt_map)] {
            let Ok(rm) = Self::rat_map(map) else { continue };
            for c in alg.constraints() {
                if let Ok(v) = c.subs(&rm) {
                    if !v.contains_var(&self.t) {
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    /// Parameter points: fixed samples, a single empty point, or random admissible values.
    fn sample_points(&self, w: &DegenerationWitness, count: usize, seed: u64) -> Result<Vec<Assignment>> {
        if !w.samples.is_empty() {
            let [sym] = self.free.as_slice() else {
                return Err(Error::InvalidWitness(format!("{}: fixed samples need exactly one free symbol", w.id)));
            };
            return w
                .samples
                .iter()
                .map(|s| {
                    let v = ScalarExpr::parse(s)?.to_ratfunc()?.as_constant().ok_or_else(|| {
                        Error::InvalidWitness(format!("{}: sample `{s}` is not a constant", w.id))
                    })?;
                    Ok([(sym.clone(), v)].into())
                })
                .collect();
        }
        if self.free.is_empty() {
            return Ok(vec![Assignment::new()]);
        }
        let cons = self.family_constraints();
        let mut rng = sample::rng(seed);
        Ok((0..count).map(|_| sample::admissible(&self.free, &cons, &mut rng)).collect())
    }
}

/// `c'_ij^k` with `E_i E_j = Σ_k c'_ij^k E_k`, over the rational-function field.
pub fn conjugate_constants(a: &Algebra, params: &BTreeMap<Symbol, RatFunc>, basis: &[Vec<RatFunc>]) -> Result<Vec<RatFunc>> {
    let c = a.constants_substituted(params)?;
    Algebra::constants_in_basis(&c, a.dim(), basis)
}

/// Numeric `c'_ij^k` from evaluated constants and basis.
pub fn conjugate_constants_numeric(c: &[Complex], basis: &[Vec<Complex>], digits: u32) -> Result<Vec<Complex>> {
    let n = basis.len();
    let prec = bits_for_digits(digits);
    let binv = linalg::inverse_complex(basis, prec, digits)?;
    let mut out = vec![Complex::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let mut v = vec![Complex::zero(); n];
            for p in 0..n {
                if basis[i][p].is_zero() {
                    continue;
                }
                for q in 0..n {
                    if basis[j][q].is_zero() {
                        continue;
                    }
                    let w = basis[i][p].mul(&basis[j][q], prec);
                    for (r, vr) in v.iter_mut().enumerate() {
                        let cc = &c[(p * n + q) * n + r];
                        if !cc.is_zero() {
                            *vr = vr.add(&w.mul(cc, prec), prec);
                        }
                    }
                }
            }
            for k in 0..n {
                let mut s = Complex::zero();
                for (r, vr) in v.iter().enumerate() {
                    if !vr.is_zero() && !binv[r][k].is_zero() {
                        s = s.add(&vr.mul(&binv[r][k], prec), prec);
                    }
                }
                out[(i * n + j) * n + k] = s;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    Match,
    /// Exact tier: `c'(t)` has a pole at `t = 0`.
    Pole,
    /// Exact tier: finite limit different from the target.
    Mismatch,
    /// Numeric tier: the residual grows along the schedule.
    Increasing,
    /// Numeric tier: residual above tolerance at the last `t`.
    AboveTolerance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryOutcome {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub status: EntryStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub row: Option<usize>,
    pub kind: WitnessKind,
    pub source: String,
    pub target: String,
    pub tier: Tier,
    pub pass: bool,
    /// Parameter points used; empty for generic exact verification.
    pub samples: Vec<String>,
    pub entries: Vec<EntryOutcome>,
    /// Largest residual at the last `t` (numeric tier).
    pub max_residual: Option<String>,
    /// Slope of `log residual` against `log t` over the last two `t` values.
    pub decay_exponent: Option<f64>,
    /// Numeric results are heuristic: they rest on finite-precision evaluation.
    pub heuristic: bool,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &EntryOutcome> {
        self.entries.iter().filter(|e| e.status != EntryStatus::Match)
    }
}

fn new_report(w: &DegenerationWitness, tier: Tier) -> VerificationReport {
    VerificationReport {
        id: w.id.clone(),
        row: w.row,
        kind: w.kind,
        source: w.source.clone(),
        target: w.target.clone(),
        tier,
        pass: false,
        samples: Vec::new(),
        entries: Vec::new(),
        max_residual: None,
        decay_exponent: None,
        heuristic: tier == Tier::Numeric,
        notes: w.note.iter().cloned().collect(),
    }
}

pub fn auto_tier(cat: &Catalog, w: &DegenerationWitness) -> Result<Tier> {
    let p = parse_witness(cat, w)?;
    Ok(if p.has_root() { Tier::Numeric } else { Tier::Exact })
}

/// Exact verification over `ℚ(i)(free symbols)(t)`, generic in the free symbols.
pub fn verify_exact(cat: &Catalog, w: &DegenerationWitness) -> Result<VerificationReport> {
    let p = parse_witness(cat, w)?;
    if p.has_root() {
        return Err(Error::TierMismatch(format!("{} contains radicals; use the numeric tier", w.id)));
    }
    let n = p.source.dim();
    let basis = p.basis.iter().map(|r| r.iter().map(ScalarExpr::to_ratfunc).collect()).collect::<Result<Vec<Vec<_>>>>()?;
    let cprime = conjugate_constants(&p.source, &Parsed::rat_map(&p.src_map)?, &basis)?;
    let target = p.target.constants_substituted(&Parsed::rat_map(&p.tgt_map)?)?;
    let mut report = new_report(w, Tier::Exact);
    for (idx, (c, tc)) in cprime.iter().zip(&target).enumerate() {
        let (i, j, k) = (idx / (n * n) + 1, idx / n % n + 1, idx % n + 1);
        let (status, detail) = match c.at_zero(&p.t) {
            None => (EntryStatus::Pole, Some(ScalarExpr::from_ratfunc(c).to_string())),
            Some(v) if &v == tc => (EntryStatus::Match, None),
            Some(v) => (
                EntryStatus::Mismatch,
                Some(format!("limit {} but target {}", ScalarExpr::from_ratfunc(&v), ScalarExpr::from_ratfunc(tc))),
            ),
        };
        report.entries.push(EntryOutcome { i, j, k, status, detail });
    }
    let pass = report.failures().next().is_none();
    report.pass = pass;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericOptions {
    /// Values of `t`, approaching 0.
    pub schedule: Vec<Rational>,
    pub digits: u32,
    pub samples: usize,
    pub seed: u64,
    /// Residual bound at the last `t`, as a power of ten.
    pub tolerance_exp: u32,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions { schedule: default_schedule(), digits: 120, samples: 3, seed: 0, tolerance_exp: 8 }
    }
}

/// `t_k = 10^(-6k)`, `k = 1..5`.
pub fn default_schedule() -> Vec<Rational> {
    use num_bigint::BigInt;
    (1..=5u32).map(|k| Rational::new(BigInt::from(1), BigInt::from(10).pow(6 * k))).collect()
}

fn sub_abs(a: &Complex, b: &Complex, prec: u64) -> BigFloat {
    a.sub(b, prec).abs(prec)
}

/// Evaluates `c'(t)` at increasing working precision until two rungs agree
/// to `digits` relative digits.
fn numeric_constants(
    src_c: &[(usize, ScalarExpr)],
    basis: &[Vec<ScalarExpr>],
    n: usize,
    at: &Assignment,
    digits: u32,
) -> Result<Vec<Complex>> {
    let eval = |w: u32| -> Result<Vec<Complex>> {
        let mut c = vec![Complex::zero(); n * n * n];
        for (idx, e) in src_c {
            c[*idx] = e.eval_gauss(at, w)?;
        }
        let b = basis.iter().map(|r| r.iter().map(|e| e.eval_gauss(at, w)).collect()).collect::<Result<Vec<Vec<_>>>>()?;
        conjugate_constants_numeric(&c, &b, w)
    };
    let cap = digits * 16;
    // A singular basis at working precision usually means cancellation; climb.
    let eval_or_climb = |w: &mut u32| -> Result<Vec<Complex>> {
        loop {
            match eval(*w) {
                Err(Error::Singular) if *w * 2 <= cap => *w *= 2,
                r => return r,
            }
        }
    };
    let mut w = digits + 40;
    let mut prev = eval_or_climb(&mut w)?;
    loop {
        let mut w2 = w * 2;
        let cur = eval_or_climb(&mut w2)?;
        let prec = bits_for_digits(w2);
        let agree = prev.iter().zip(&cur).all(|(a, b)| {
            let scale = b.abs(prec).log10_abs().max(0.0);
            sub_abs(a, b, prec).below_decimal(f64::from(digits) - scale)
        });
        if agree {
            return Ok(cur);
        }
        if w2 > cap {
            return Err(Error::Overflow("precision ladder"));
        }
        prev = cur;
        w = w2;
    }
}

/// Numeric verification along a schedule of `t` values at sampled parameters.
pub fn verify_numeric(cat: &Catalog, w: &DegenerationWitness, opts: &NumericOptions) -> Result<VerificationReport> {
    if opts.digits < 16 {
        return Err(Error::Usage("digits must be at least 16".into()));
    }
    if opts.schedule.is_empty() {
        return Err(Error::Usage("empty t schedule".into()));
    }
    let p = parse_witness(cat, w)?;
    let n = p.source.dim();
    let src_c: Vec<(usize, ScalarExpr)> = p
        .source
        .constants()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, ScalarExpr::from_ratfunc(c).subs(&p.src_map)))
        .collect();
    let tgt_c: Vec<ScalarExpr> = p.target.constants().iter().map(|c| ScalarExpr::from_ratfunc(c).subs(&p.tgt_map)).collect();
    let points = p.sample_points(w, opts.samples, opts.seed)?;
    let prec = bits_for_digits(opts.digits);
    let floor = f64::from(opts.digits) / 2.0;
    let tol = f64::from(opts.tolerance_exp);

    let mut report = new_report(w, Tier::Numeric);
    let mut status = vec![EntryStatus::Match; n * n * n];
    let mut detail: Vec<Option<String>> = vec![None; n * n * n];
    let mut max_last = BigFloat::zero();
    let mut max_prev = BigFloat::zero();
    for at in &points {
        report.samples.push(if at.is_empty() { "none".into() } else { format_assignment(at) });
        let target = tgt_c.iter().map(|e| e.eval_gauss(at, opts.digits)).collect::<Result<Vec<_>>>()?;
        let mut history: Vec<Vec<BigFloat>> = Vec::new();
        for tv in &opts.schedule {
            let mut full = at.clone();
            full.insert(p.t.clone(), GaussRational::real(tv.clone()));
            let c = numeric_constants(&src_c, &p.basis, n, &full, opts.digits)?;
            let res: Vec<BigFloat> = c
                .iter()
                .zip(&target)
                .map(|(a, b)| {
                    let r = sub_abs(a, b, prec);
                    if r.below_decimal(floor) {
                        BigFloat::zero()
                    } else {
                        r
                    }
                })
                .collect();
            history.push(res);
        }
        let last = history.len() - 1;
        for idx in 0..n * n * n {
            let increasing = history.windows(2).any(|h| h[1][idx].cmp_abs(&h[0][idx]).is_gt());
            let final_r = &history[last][idx];
            if increasing && status[idx] == EntryStatus::Match {
                status[idx] = EntryStatus::Increasing;
                detail[idx] = Some(format!("residuals {} at {}", residual_trail(&history, idx), format_assignment(at)));
            } else if !final_r.below_decimal(tol) && status[idx] == EntryStatus::Match {
                status[idx] = EntryStatus::AboveTolerance;
                detail[idx] = Some(format!("final residual {final_r} at {}", format_assignment(at)));
            }
            if final_r.cmp_abs(&max_last).is_gt() {
                max_last = final_r.clone();
            }
            if last > 0 && history[last - 1][idx].cmp_abs(&max_prev).is_gt() {
                max_prev = history[last - 1][idx].clone();
            }
        }
    }
    for (idx, (s, d)) in status.into_iter().zip(detail).enumerate() {
        report.entries.push(EntryOutcome { i: idx / (n * n) + 1, j: idx / n % n + 1, k: idx % n + 1, status: s, detail: d });
    }
    report.max_residual = Some(max_last.to_string());
    if opts.schedule.len() > 1 && !max_last.is_zero() && !max_prev.is_zero() {
        let k = opts.schedule.len();
        let lt = |r: &Rational| BigFloat::from_rational(r, 64).log10_abs();
        let dl = lt(&opts.schedule[k - 1]) - lt(&opts.schedule[k - 2]);
        report.decay_exponent = Some((max_last.log10_abs() - max_prev.log10_abs()) / dl);
    }
    if max_last.is_zero() {
        report.notes.push(format!("residuals vanish to {} digits", opts.digits / 2));
    }
    let pass = report.failures().next().is_none();
    report.pass = pass;
    Ok(report)
}

fn residual_trail(h: &[Vec<BigFloat>], idx: usize) -> String {
    h.iter().map(|r| r[idx].to_string()).collect::<Vec<_>>().join(" → ")
}

/// Dispatches on the witness tier (`auto` picks exact when no radicals occur).
pub fn verify(cat: &Catalog, w: &DegenerationWitness, opts: &NumericOptions) -> Result<VerificationReport> {
    let tier = match w.tier {
        Tier::Auto => auto_tier(cat, w)?,
        t => t,
    };
    match tier {
        Tier::Exact => verify_exact(cat, w),
        _ => verify_numeric(cat, w, opts),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessaryPoint {
    pub assignment: String,
    pub der_source: usize,
    pub der_target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessaryReport {
    pub id: String,
    pub source: String,
    pub target: String,
    /// Source and target coincide.
    pub skipped: bool,
    /// The source parameters move with `t`, so the source is a curve in its family.
    pub t_dependent: bool,
    pub points: Vec<NecessaryPoint>,
    /// `dim Der(source) < dim Der(target)` at every point.
    pub strict: bool,
    /// Same with one unit of slack per moving parameter: `dim Der(source) − 1 < dim Der(target)`.
    pub family_bound: bool,
}

/// The dim-Der condition for a witness, at its sample points.
pub fn check_necessary(cat: &Catalog, w: &DegenerationWitness, samples: usize, seed: u64) -> Result<NecessaryReport> {
    let p = parse_witness(cat, w)?;
    let mut rep = NecessaryReport {
        id: w.id.clone(),
        source: w.source.clone(),
        target: w.target.clone(),
        skipped: !w.is_proper(),
        t_dependent: p.src_map.values().any(|e| e.contains_sym(&p.t)),
        points: Vec::new(),
        strict: true,
        family_bound: true,
    };
    if rep.skipped {
        return Ok(rep);
    }
    let slack = p.src_map.values().filter(|e| e.contains_sym(&p.t)).count();
    for at in p.sample_points(w, samples, seed)? {
        let eval_map = |m: &BTreeMap<Symbol, ScalarExpr>| -> Result<Assignment> {
            let mut out = Assignment::new();
            for (k, e) in m {
                if e.contains_sym(&p.t) {
                    continue;
                }
                let v = e.to_ratfunc()?.eval(&at)?;
                out.insert(k.clone(), v);
            }
            Ok(out)
        };
        let mut src_at = eval_map(&p.src_map)?;
        let mut tgt_at = eval_map(&p.tgt_map)?;
        for (alg, a) in [(&p.source, &mut src_at), (&p.target, &mut tgt_at)] {
            for q in alg.params() {
                if let Some(v) = at.get(q) {
                    a.entry(q.clone()).or_insert_with(|| v.clone());
                }
            }
        }
        let ds = p.source.derivation_dim(Some(&src_at))?;
        let dt = p.target.derivation_dim(Some(&tgt_at))?;
        rep.strict &= ds < dt;
        rep.family_bound &= ds < dt + slack.min(1);
        rep.points.push(NecessaryPoint { assignment: format_assignment(&at), der_source: ds, der_target: dt });
    }
    Ok(rep)
}

/// The dim-Der condition between two named families at independent samples.
pub fn check_necessary_pair(cat: &Catalog, source: &str, target: &str, samples: usize, seed: u64) -> Result<NecessaryReport> {
    let s = cat.entry(source)?;
    let t = cat.entry(target)?;
    let mut rep = NecessaryReport {
        id: format!("{} -> {}", s.name, t.name),
        source: s.name.clone(),
        target: t.name.clone(),
        skipped: s.name == t.name,
        t_dependent: false,
        points: Vec::new(),
        strict: true,
        family_bound: true,
    };
    if rep.skipped {
        return Ok(rep);
    }
    let mut rng = sample::rng(seed);
    for _ in 0..samples.max(1) {
        let a = sample::admissible(s.family_params(), s.algebra.constraints(), &mut rng);
        let b = sample::admissible(t.family_params(), t.algebra.constraints(), &mut rng);
        let ds = s.algebra.derivation_dim(Some(&a))?;
        let dt = t.algebra.derivation_dim(Some(&b))?;
        rep.strict &= ds < dt;
        rep.family_bound &= ds < dt;
        let mut label = format_assignment(&a);
        if !b.is_empty() {
            label = format!("{label}; {}", format_assignment(&b));
        }
        rep.points.push(NecessaryPoint { assignment: label, der_source: ds, der_target: dt });
    }
    Ok(rep)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RowResult {
    pub witness: DegenerationWitness,
    pub report: VerificationReport,
    /// Numeric re-run of an exact-tier witness.
    pub cross_check: Option<VerificationReport>,
    pub necessary: NecessaryReport,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub numeric: NumericOptions,
    pub cross_validate: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { numeric: NumericOptions::default(), cross_validate: true }
    }
}

fn witness_seed(seed: u64, id: &str) -> u64 {
    id.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3))
}

pub fn run_witness(cat: &Catalog, w: &DegenerationWitness, opts: &RunOptions) -> Result<RowResult> {
    let seed = witness_seed(opts.numeric.seed, &w.id);
    let numeric = NumericOptions { seed, ..opts.numeric.clone() };
    let report = verify(cat, w, &numeric)?;
    let cross_check = if opts.cross_validate && report.tier == Tier::Exact && report.pass {
        Some(verify_numeric(cat, w, &numeric)?)
    } else {
        None
    };
    let necessary = check_necessary(cat, w, numeric.samples, seed)?;
    Ok(RowResult { witness: w.clone(), report, cross_check, necessary })
}

/// Runs witnesses in parallel; results keep the input order.
pub fn run_witnesses(cat: &Catalog, ws: &[DegenerationWitness], opts: &RunOptions) -> Result<Vec<RowResult>> {
    ws.par_iter().map(|w| run_witness(cat, w, opts)).collect::<Vec<_>>().into_iter().collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReachabilityReport {
    pub sources: Vec<String>,
    pub edges: Vec<Edge>,
    /// Every requested family with its reachability from the sources.
    pub reachable: BTreeMap<String, bool>,
    /// Verified proper witnesses ending in a source.
    pub into_sources: Vec<String>,
    pub dot: String,
}

impl ReachabilityReport {
    pub fn unreachable(&self) -> Vec<&str> {
        self.reachable.iter().filter(|(_, r)| !**r).map(|(k, _)| k.as_str()).collect()
    }
}

pub const SOURCES: [&str; 2] = ["N4_20", "N4_22"];

/// Family-level graph of verified witnesses and reachability from the sources.
pub fn build_reachability(verified: &[&DegenerationWitness], families: &[String], sources: &[&str]) -> ReachabilityReport {
    let mut g: DiGraph<String, String> = DiGraph::new();
    let mut nodes: BTreeMap<String, NodeIndex> = BTreeMap::new();
    let mut node = |g: &mut DiGraph<String, String>, name: &str| {
        *nodes.entry(name.to_string()).or_insert_with(|| g.add_node(name.to_string()))
    };
    for s in sources {
        node(&mut g, s);
    }
    for f in families {
        node(&mut g, f);
    }
    let mut edges = Vec::new();
    let mut into_sources = Vec::new();
    let mut seen = BTreeSet::new();
    for w in verified.iter().filter(|w| w.is_proper()) {
        if sources.contains(&w.target.as_str()) {
            into_sources.push(w.id.clone());
        }
        edges.push(Edge { from: w.source.clone(), to: w.target.clone(), witness: w.id.clone() });
        if w.source != w.target && seen.insert((w.source.clone(), w.target.clone())) {
            let (a, b) = (node(&mut g, &w.source), node(&mut g, &w.target));
            g.add_edge(a, b, w.id.clone());
        }
    }
    let mut hit = BTreeSet::new();
    let starts: Vec<NodeIndex> = sources.iter().map(|s| node(&mut g, s)).collect();
    for s in starts {
        let mut dfs = Dfs::new(&g, s);
        while let Some(v) = dfs.next(&g) {
            hit.insert(g[v].clone());
        }
    }
    let reachable = families.iter().map(|f| (f.clone(), hit.contains(f))).collect();
    ReachabilityReport {
        sources: sources.iter().map(|s| s.to_string()).collect(),
        edges,
        reachable,
        into_sources,
        dot: format!("{}", Dot::new(&g)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn witness(source: &str, target: &str, basis: &[&[&str]]) -> DegenerationWitness {
        DegenerationWitness {
            id: "test".into(),
            row: None,
            kind: WitnessKind::Literal,
            source: source.into(),
            source_params: BTreeMap::new(),
            target: target.into(),
            target_params: BTreeMap::new(),
            basis: basis.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
            tier: Tier::Auto,
            nonzero: Vec::new(),
            samples: Vec::new(),
            note: None,
        }
    }

    const ID4: &[&[&str]] = &[&["1", "0", "0", "0"], &["0", "1", "0", "0"], &["0", "0", "1", "0"], &["0", "0", "0", "1"]];

    #[test]
    fn identity_witness_passes_both_tiers() {
        let cat = builtin();
        let w = witness("N4_12", "N4_12", ID4);
        assert!(verify_exact(cat, &w).unwrap().pass);
        let r = verify_numeric(cat, &w, &NumericOptions { schedule: default_schedule()[..2].to_vec(), ..Default::default() }).unwrap();
        assert!(r.pass);
        assert!(check_necessary(cat, &w, 1, 0).unwrap().skipped);
    }

    #[test]
    fn wrong_target_fails_exactly() {
        let cat = builtin();
        let r = verify_exact(cat, &witness("N4_12", "N4_13", ID4)).unwrap();
        assert!(!r.pass);
        assert!(r.failures().all(|e| e.status == EntryStatus::Mismatch));
    }

    #[test]
    fn radicals_need_the_numeric_tier() {
        let cat = builtin();
        let mut w = witness("N4_12", "N4_12", ID4);
        w.basis[0][0] = "root(2, 2)".into();
        assert!(matches!(verify_exact(cat, &w), Err(Error::TierMismatch(_))));
        assert_eq!(auto_tier(cat, &w).unwrap(), Tier::Numeric);
    }

    #[test]
    fn scaled_basis_multiplies_constants() {
        let a = Algebra::new("x", 2, &[], &[], &[(1, 1, 2, "1"), (1, 2, 2, "3")]).unwrap();
        let t = RatFunc::var(Symbol::new("t"));
        let b = vec![vec![t.clone(), RatFunc::zero()], vec![RatFunc::zero(), t.clone()]];
        let c = conjugate_constants(&a, &BTreeMap::new(), &b).unwrap();
        for (x, y) in c.iter().zip(a.constants()) {
            assert_eq!(x, &y.mul(&t));
        }
    }

    #[test]
    fn reachability_over_no_edges() {
        let fam = vec!["N4_20".to_string(), "N4_22".to_string(), "N4_01".to_string()];
        let r = build_reachability(&[], &fam, &SOURCES);
        assert_eq!(r.unreachable(), ["N4_01"]);
        assert!(r.dot.starts_with("digraph"));
    }
}
