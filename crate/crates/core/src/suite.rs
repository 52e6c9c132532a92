//! The acceptance criteria as runnable checks over the built-in catalog.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::Assignment;
use crate::arith::expr::ScalarExpr;
use crate::arith::gauss::GaussRational;
use crate::catalog::{self, format_assignment, Catalog, Section};
use crate::cohomology;
use crate::degeneration::{self, DegenerationWitness, RowResult, RunOptions, WitnessKind, SOURCES};
use crate::error::Result;
use crate::sample;

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub number: u8,
    pub title: String,
    pub pass: bool,
    pub summary: String,
    pub details: Vec<String>,
    /// Kept out of serialized reports so that they stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Criterion {
    fn new(number: u8, title: &str, pass: bool, summary: String, details: Vec<String>, start: Instant) -> Self {
        Criterion { number, title: title.into(), pass, summary, details, elapsed: start.elapsed() }
    }
}

#[derive(Clone, Debug)]
#[derive(Default)]
pub struct SuiteOptions {
    pub seed: u64,
    pub run: RunOptions,
}


fn section_entries(cat: &Catalog, sections: &[Section]) -> Vec<catalog::CatalogEntry> {
    cat.entries().iter().filter(|e| sections.contains(&e.section)).cloned().collect()
}

pub fn identities(cat: &Catalog, seed: u64) -> Result<Criterion> {
    let start = Instant::now();
    let entries = section_entries(cat, &[Section::TableA, Section::Dim3, Section::TrivialFamilies]);
    let mut fails = Vec::new();
    for e in &entries {
        fails.extend(catalog::verify_entry(e, seed)?);
    }
    let n_table_a = entries.iter().filter(|e| e.section == Section::TableA).count();
    let summary = format!("{} entries ({n_table_a} in Table A), {} failures", entries.len(), fails.len());
    Ok(Criterion::new(1, "identities, nilpotency, purity", fails.is_empty() && n_table_a == 24, summary, fails, start))
}

pub fn golden(cat: &Catalog) -> Result<Criterion> {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut pass = cat.golden.len() == 7;
    for row in &cat.golden {
        let r = catalog::verify_golden(cat, row)?;
        pass &= r.pass();
        let (z, b, h) = r.dims;
        details.push(format!(
            "{}: Z²={z} B²={b} H²={h} {}",
            r.algebra,
            if r.pass() { "ok" } else { "MISMATCH" }
        ));
    }
    Ok(Criterion::new(2, "cohomology golden table", pass, format!("{} rows", cat.golden.len()), details, start))
}

pub fn extensions(cat: &Catalog, seed: u64) -> Result<Criterion> {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut failed = Vec::new();
    for w in &cat.extensions {
        let r = catalog::verify_extension(cat, w, seed)?;
        if !r.pass() {
            failed.push(r.id.clone());
            let what = if r.is_cocycle && r.matches_target && !r.trivial_intersection {
                "cocycle and target match, but Ann(θ) ∩ Ann(A) ≠ 0"
            } else {
                "failed"
            };
            details.push(format!("{} → {}: {what}", r.id, r.target));
        }
        for f in &r.flags {
            details.push(format!("{}: {f}", r.id));
        }
    }
    let mut actions_ok = true;
    for a in &cat.actions {
        let o = catalog::verify_action(cat, a, 5, seed)?;
        actions_ok &= o.as_expected();
        let raw = o.report.raw_matches.map_or("-".to_string(), |b| b.to_string());
        details.push(format!(
            "action {}: projected={} raw={raw} expected={}",
            a.case.id,
            o.report.projected_matches,
            if o.expect_pass { "pass" } else { "fail" }
        ));
    }
    let summary = format!(
        "{}/{} witnesses pass; action cases {}",
        cat.extensions.len() - failed.len(),
        cat.extensions.len(),
        if actions_ok { "as expected" } else { "NOT as expected" }
    );
    Ok(Criterion::new(3, "extension witnesses", failed.is_empty() && actions_ok, summary, details, start))
}

pub fn roundtrips(cat: &Catalog, seed: u64) -> Result<Criterion> {
    let start = Instant::now();
    let mut rng = sample::rng(seed);
    let mut fails = Vec::new();
    let mut checked = 0;
    for e in cat.entries().iter().filter(|e| e.section == Section::TableA) {
        let points: Vec<Assignment> = if e.family_params().is_empty() {
            vec![Assignment::new()]
        } else {
            (0..3).map(|_| sample::admissible(e.family_params(), e.algebra.constraints(), &mut rng)).collect()
        };
        for at in &points {
            let a = e.algebra.instantiate(at)?;
            for v in a.annihilator_basis() {
                checked += 1;
                if !cohomology::split_roundtrip(&a, std::slice::from_ref(&v))? {
                    fails.push(format!("{} at {}: line {}", e.name, format_assignment(at), crate::algebra::format_vector(&v)));
                }
            }
        }
    }
    let summary = format!("{checked} splits, {} failures", fails.len());
    Ok(Criterion::new(4, "split and re-extend roundtrip", fails.is_empty() && checked > 0, summary, fails, start))
}

pub fn derivations(cat: &Catalog, seed: u64) -> Result<Criterion> {
    let start = Instant::now();
    let mut rng = sample::rng(seed);
    let mut details = Vec::new();
    let mut pass = true;
    // The value 3 is claimed for N4_22 only off λ ∈ {0, 1}, where it jumps to 4.
    let excluded: [(&str, &[&str]); 2] = [("N4_20", &[]), ("N4_22", &["lambda", "lambda - 1"])];
    for (name, ex) in excluded {
        let e = cat.entry(name)?;
        let mut cons = e.algebra.constraints().to_vec();
        for x in ex {
            cons.push(ScalarExpr::parse(x)?.to_ratfunc()?);
        }
        let g = e.algebra.derivation_dim(None)?;
        let mut dims = vec![g];
        for _ in 0..5 {
            let at = sample::admissible(e.family_params(), &cons, &mut rng);
            dims.push(e.algebra.derivation_dim(Some(&at))?);
        }
        pass &= dims.iter().all(|&d| d == 3);
        let mut line = format!("{name}: generic {g}, samples {:?}", &dims[1..]);
        if !ex.is_empty() {
            let mut special = Vec::new();
            for v in [0, 1] {
                let at: Assignment = [(e.family_params()[0].clone(), GaussRational::from_int(v))].into();
                special.push(format!("{}={v}: {}", e.family_params()[0], e.algebra.derivation_dim(Some(&at))?));
            }
            line.push_str(&format!("; excluded {}", special.join(", ")));
        }
        details.push(line);
    }
    let z = cat.entry("zero_4")?.algebra.derivation_dim(None)?;
    pass &= z == 16;
    details.push(format!("zero_4: {z}"));
    Ok(Criterion::new(5, "derivation dimensions", pass, "dim Der of the two sources and zero_4".into(), details, start))
}

/// Verdict of one table row: the literal witness, plus any erratum or fallback.
#[derive(Clone, Debug, Serialize)]
pub struct RowVerdict {
    pub row: usize,
    pub literal: bool,
    pub alternatives: Vec<(String, WitnessKind, bool)>,
}

impl RowVerdict {
    /// Fallback sources are part of the protocol for their row; errata are not.
    pub fn verified(&self) -> bool {
        self.literal || self.alternatives.iter().any(|(_, k, p)| *k == WitnessKind::Fallback && *p)
    }
}

pub fn row_verdicts(results: &[RowResult]) -> Vec<RowVerdict> {
    let mut rows: BTreeMap<usize, RowVerdict> = BTreeMap::new();
    for r in results {
        let Some(row) = r.witness.row else { continue };
        let v = rows.entry(row).or_insert(RowVerdict { row, literal: false, alternatives: Vec::new() });
        match r.witness.kind {
            WitnessKind::Literal => v.literal = r.report.pass,
            k => v.alternatives.push((r.witness.id.clone(), k, r.report.pass)),
        }
    }
    rows.into_values().collect()
}

pub fn table_b(results: &[RowResult], start: Instant) -> Criterion {
    let verdicts = row_verdicts(results);
    let mut details = Vec::new();
    for r in results {
        let rep = &r.report;
        let mut line = format!("{} {:?} {} → {}: {}", rep.id, rep.tier, rep.source, rep.target, if rep.pass { "pass" } else { "FAIL" });
        if let Some(m) = &rep.max_residual {
            line.push_str(&format!(", max residual {m}"));
        }
        if let Some(d) = rep.decay_exponent {
            line.push_str(&format!(", decay t^{d:.3}"));
        }
        if let Some(c) = &r.cross_check {
            line.push_str(&format!(", numeric cross-check {}", if c.pass { "pass" } else { "FAIL" }));
        }
        if let Some(f) = rep.failures().next() {
            line.push_str(&format!(
                ", e{}e{}→e{} {:?} {}",
                f.i,
                f.j,
                f.k,
                f.status,
                f.detail.as_deref().unwrap_or("")
            ));
        }
        details.push(line);
    }
    let failing: Vec<String> = verdicts.iter().filter(|v| !v.verified()).map(|v| v.row.to_string()).collect();
    let corrected: Vec<String> = verdicts
        .iter()
        .filter(|v| !v.literal)
        .flat_map(|v| v.alternatives.iter().filter(|a| a.2).map(|a| a.0.clone()))
        .collect();
    let summary = format!(
        "{}/{} rows verified; failing rows [{}]; passing alternatives [{}]",
        verdicts.len() - failing.len(),
        verdicts.len(),
        failing.join(", "),
        corrected.join(", ")
    );
    let pass = verdicts.len() == 24 && failing.is_empty();
    Criterion::new(6, "degeneration witnesses", pass, summary, details, start)
}

/// The witness that stands for a row: the literal one, or a passing fallback.
fn row_witnesses(results: &[RowResult]) -> Vec<&RowResult> {
    let mut by_row: BTreeMap<usize, &RowResult> = BTreeMap::new();
    for r in results {
        let Some(row) = r.witness.row else { continue };
        match r.witness.kind {
            WitnessKind::Literal => {
                by_row.entry(row).or_insert(r);
            }
            WitnessKind::Fallback if r.report.pass => {
                by_row.insert(row, r);
            }
            _ => {}
        }
    }
    by_row.into_values().collect()
}

pub fn necessary(results: &[RowResult]) -> Criterion {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut strict_fail = Vec::new();
    let mut bound_ok = true;
    for r in row_witnesses(results) {
        let n = &r.necessary;
        if n.skipped {
            continue;
        }
        bound_ok &= n.family_bound;
        if !n.strict {
            strict_fail.push(n.id.clone());
            let pts: Vec<String> = n.points.iter().map(|p| format!("{} vs {}", p.der_source, p.der_target)).collect();
            details.push(format!(
                "{} {} → {}: dim Der {}{}",
                n.id,
                n.source,
                n.target,
                pts.join(", "),
                if n.t_dependent { " (source moves with t)" } else { "" }
            ));
        }
    }
    let summary = format!(
        "strict increase fails on [{}]; non-strict bound for moving sources {}",
        strict_fail.join(", "),
        if bound_ok { "holds" } else { "FAILS" }
    );
    Criterion::new(7, "dim Der necessary condition", strict_fail.is_empty(), summary, details, start)
}

pub fn reachability(cat: &Catalog, results: &[RowResult]) -> (Criterion, degeneration::ReachabilityReport) {
    let start = Instant::now();
    let verified: Vec<&DegenerationWitness> = results.iter().filter(|r| r.report.pass).map(|r| &r.witness).collect();
    let families: Vec<String> = cat
        .entries()
        .iter()
        .filter(|e| matches!(e.section, Section::TableA | Section::TrivialFamilies))
        .map(|e| e.name.clone())
        .collect();
    let rep = degeneration::build_reachability(&verified, &families, &SOURCES);
    let unreachable = rep.unreachable();
    let summary = format!(
        "{} families, unreachable [{}], verified witnesses into a source [{}]",
        families.len(),
        unreachable.join(", "),
        rep.into_sources.join(", ")
    );
    let pass = families.len() == 26 && unreachable.is_empty() && rep.into_sources.is_empty();
    (Criterion::new(8, "reachability from the two sources", pass, summary, Vec::new(), start), rep)
}

/// Runs every criterion in order.
pub fn run_all(cat: &Catalog, opts: &SuiteOptions) -> Result<Vec<Criterion>> {
    let mut out = vec![identities(cat, opts.seed)?, golden(cat)?, extensions(cat, opts.seed)?, roundtrips(cat, opts.seed)?];
    out.push(derivations(cat, opts.seed)?);
    let start = Instant::now();
    let mut run = opts.run.clone();
    run.numeric.seed = opts.seed;
    let results = degeneration::run_witnesses(cat, &cat.table_b, &run)?;
    out.push(table_b(&results, start));
    out.push(necessary(&results));
    out.push(reachability(cat, &results).0);
    Ok(out)
}
