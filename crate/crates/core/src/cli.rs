//! Command-line front end. [`run`] returns the process exit code:
//! 0 when every check passes, 1 on a verification failure, 2 on bad input.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use crate::algebra::{format_vector, Algebra};
use crate::arith::expr::ScalarExpr;
use crate::arith::gauss::Rational;
use crate::catalog::{self, Catalog, ListFilter, Section};
use crate::cohomology::{self, Cocycle, CocycleJson};
use crate::degeneration::{self, DegenerationWitness, NumericOptions, RowResult, RunOptions, Tier, SOURCES};
use crate::error::{Error, Result};
use crate::suite::{self, SuiteOptions};

pub const DEFAULT_DIGITS: u32 = 120;

#[derive(Parser, Debug)]
#[command(name = "novikov", version, about = "Nilpotent Novikov algebras: cohomology, central extensions, degenerations")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for parameter sampling; recorded in reports.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Extra algebras (JSON, algebra schema) added to the catalog.
    #[arg(long = "algebras", global = true)]
    pub algebras: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Browse the built-in algebras.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Identities, nilpotency, annihilator and invariant profile.
    Check {
        /// Catalog name or JSON file.
        target: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Z², B² and H² with bases.
    Cohomology {
        name: String,
        /// Compare with the bundled golden table.
        #[arg(long)]
        golden: bool,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Central extension by one or more cocycles.
    Extend {
        name: String,
        /// Cocycle expression (e.g. `D12 + 2*D21`) or JSON file; repeat for s > 1.
        #[arg(long, required = true)]
        cocycle: Vec<String>,
        /// Dimension of the extension; must match the number of cocycles.
        #[arg(long)]
        s: Option<usize>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Split along a subspace of the annihilator and re-extend.
    Split {
        name: String,
        /// Basis vectors spanning the subspace, e.g. `e4` or `e3,e4`.
        #[arg(long, value_delimiter = ',', required = true)]
        subspace: Vec<String>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Dimension of the derivation algebra.
    Derivations {
        name: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Degeneration witnesses.
    #[command(subcommand)]
    Degenerate(DegenerateCmd),
    /// Reachability over verified witnesses.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Acceptance suites.
    #[command(subcommand)]
    Report(ReportCmd),
}

#[derive(Args, Debug, Default)]
pub struct ParamArgs {
    /// Parameter assignment `k=expr`; repeatable.
    #[arg(long = "param", value_parser = parse_kv)]
    pub param: Vec<(String, String)>,
}

impl ParamArgs {
    fn map(&self) -> BTreeMap<String, String> {
        self.param.iter().cloned().collect()
    }
}

fn parse_kv(s: &str) -> std::result::Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected k=v, got `{s}`"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    List {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, value_parser = parse_section)]
        section: Option<Section>,
        /// Only pure (or, with `--pure false`, two-step) algebras.
        #[arg(long)]
        pure: Option<bool>,
        /// Include zero algebras and auxiliary entries.
        #[arg(long)]
        all: bool,
    },
    Show {
        name: String,
        #[command(flatten)]
        params: ParamArgs,
    },
}

fn parse_section(s: &str) -> std::result::Result<Section, String> {
    serde_json::from_value(json!(s)).map_err(|_| format!("unknown section `{s}`"))
}

#[derive(Subcommand, Debug)]
pub enum DegenerateCmd {
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Witness id, e.g. `B07` or `B24f`.
    #[arg(long, conflicts_with = "all", required_unless_present_any = ["all", "file"])]
    pub row: Option<String>,
    /// Every bundled witness, including corrected readings.
    #[arg(long)]
    pub all: bool,
    /// Witnesses from a JSON file (one object or an array).
    #[arg(long)]
    pub file: Option<String>,
    /// Working digits for the numeric tier (default: NOVIKOV_DIGITS or 120).
    #[arg(long)]
    pub digits: Option<u32>,
    /// Comma-separated values of t, e.g. `1e-6,1e-12` or `1/1000`.
    #[arg(long, value_delimiter = ',')]
    pub schedule: Option<Vec<String>>,
    /// Parameter samples for the numeric tier.
    #[arg(long, default_value_t = 3)]
    pub samples: usize,
    /// Force a tier.
    #[arg(long, value_enum)]
    pub tier: Option<TierArg>,
    /// Skip the numeric re-run of exact witnesses.
    #[arg(long)]
    pub no_cross_check: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TierArg {
    Exact,
    Numeric,
}

#[derive(Subcommand, Debug)]
pub enum GraphCmd {
    /// Which families the two sources reach, with a DOT rendering.
    Components {
        #[arg(long)]
        digits: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReportCmd {
    /// Every acceptance criterion.
    Full {
        #[arg(long)]
        digits: Option<u32>,
    },
}

/// Parses `argv` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn digits(flag: Option<u32>) -> Result<u32> {
    let d = match flag {
        Some(d) => d,
        None => match std::env::var("NOVIKOV_DIGITS") {
            Ok(s) => s.trim().parse().map_err(|_| Error::Usage(format!("NOVIKOV_DIGITS=`{s}` is not an integer")))?,
            Err(_) => DEFAULT_DIGITS,
        },
    };
    if d < 16 {
        return Err(Error::Usage(format!("digits must be at least 16, got {d}")));
    }
    Ok(d)
}

fn load_catalog(cli: &Cli) -> Result<Catalog> {
    let mut cat = catalog::builtin().clone();
    for path in &cli.algebras {
        cat.add_user_algebras(&std::fs::read_to_string(path)?)?;
    }
    Ok(cat)
}

fn emit<T: Serialize>(out: &mut dyn Write, fmt: Format, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    match fmt {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(value)?)?,
        Format::Text => write!(out, "{}", text())?,
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let mut cat = load_catalog(cli)?;
    let fmt = cli.format;
    match &cli.command {
        Command::Catalog(CatalogCmd::List { dim, section, pure, all }) => {
            let f = ListFilter { dim: *dim, section: *section, pure: *pure, all: *all };
            let rows: Vec<_> = cat
                .list(&f)
                .into_iter()
                .map(|e| json!({"name": e.name, "dim": e.algebra.dim(), "section": e.section, "params": e.algebra.params().iter().map(|p| p.to_string()).collect::<Vec<_>>(), "pure": e.purity_expected}))
                .collect();
            emit(out, fmt, &rows, || {
                cat.list(&f).iter().map(|e| format!("{:<10} {}  {}\n", e.name, e.algebra.dim(), e.algebra.table())).collect()
            })?;
            Ok(true)
        }
        Command::Catalog(CatalogCmd::Show { name, params }) => {
            let e = cat.entry(name)?;
            let a = cat.get_substituted(name, &params.map())?;
            let constraints: Vec<String> = a.constraints().iter().map(|c| ScalarExpr::from_ratfunc(c).to_string()).collect();
            let v = json!({"name": e.name, "section": e.section, "aliases": e.aliases, "algebra": a.to_json()});
            emit(out, fmt, &v, || {
                let mut s = format!("{} (dim {}, {:?})\n{}\n", e.name, a.dim(), e.section, a.table());
                if !a.params().is_empty() {
                    s.push_str(&format!("parameters: {}\n", join(a.params())));
                }
                if !constraints.is_empty() {
                    s.push_str(&format!("nonzero: {}\n", constraints.join(", ")));
                }
                if !e.aliases.is_empty() {
                    s.push_str(&format!("aliases: {}\n", e.aliases.join(", ")));
                }
                s
            })?;
            Ok(true)
        }
        Command::Check { target, params } => {
            let algebras: Vec<Algebra> = if Path::new(target).is_file() {
                let names = cat.add_user_algebras(&std::fs::read_to_string(target)?)?;
                names.iter().map(|n| cat.get_substituted(n, &params.map())).collect::<Result<_>>()?
            } else {
                vec![cat.get_substituted(target, &params.map())?]
            };
            let mut ok = true;
            let mut reports = Vec::new();
            for a in &algebras {
                let flags = a.check_identities();
                let profile = a.invariant_profile(None)?;
                ok &= flags.novikov && profile.nilpotency_index.is_some();
                let ann: Vec<String> = a.annihilator_basis().iter().map(|v| format_vector(v)).collect();
                reports.push((a.name().to_string(), flags, profile, ann));
            }
            let v: Vec<_> = reports
                .iter()
                .map(|(n, f, p, ann)| json!({"algebra": n, "identities": f, "profile": p, "annihilator": ann}))
                .collect();
            emit(out, fmt, &v, || {
                let mut s = String::new();
                for (n, f, p, ann) in &reports {
                    s.push_str(&format!("{n}\n"));
                    s.push_str(&format!("  right-commutative {}\n  left-symmetric {}\n  novikov {}\n  two-step {}\n", f.right_commutative, f.left_symmetric, f.novikov, f.two_step));
                    match p.nilpotency_index {
                        Some(m) => s.push_str(&format!("  nilpotent, A^{m} = 0\n")),
                        None => s.push_str("  not nilpotent\n"),
                    }
                    s.push_str(&format!("  derived dims {:?}\n  dim Ann {} [{}]\n  dim Der {}\n", p.dims_derived, p.dim_ann, ann.join("; "), p.dim_der));
                }
                s
            })?;
            Ok(ok)
        }
        Command::Cohomology { name, golden, params } => {
            let a = cat.get_substituted(name, &params.map())?;
            let space = cohomology::cocycle_space(&a);
            let show = |v: &[Cocycle]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
            let golden_rep = if *golden {
                let row = cat
                    .golden_row(name)
                    .ok_or_else(|| Error::Usage(format!("no golden row for `{name}`")))?;
                Some(catalog::verify_golden(&cat, row)?)
            } else {
                None
            };
            let ok = golden_rep.as_ref().is_none_or(|g| g.pass());
            let v = json!({
                "algebra": a.name(),
                "dims": {"z2": space.z2.len(), "b2": space.b2.len(), "h2": space.h2.len()},
                "z2": show(&space.z2), "b2": show(&space.b2), "h2": show(&space.h2),
                "golden": golden_rep,
            });
            emit(out, fmt, &v, || {
                let mut s = format!("{}: Z²={} B²={} H²={}\n", a.name(), space.z2.len(), space.b2.len(), space.h2.len());
                s.push_str(&format!("Z²: {}\nB²: {}\nH²: {}\n", show(&space.z2).join(" | "), show(&space.b2).join(" | "), show(&space.h2).join(" | ")));
                if let Some(g) = &golden_rep {
                    s.push_str(&format!(
                        "golden: expected Z²={} B²={} H²={}, Z² span {}, B² span {}, H² classes {} -> {}\n",
                        g.expected_dims.0,
                        g.expected_dims.1,
                        g.expected_dims.2,
                        eq(g.z2_equal),
                        eq(g.b2_equal),
                        if g.h2_complements { "complement B²" } else { "do NOT complement B²" },
                        if g.pass() { "pass" } else { "FAIL" }
                    ));
                }
                s
            })?;
            Ok(ok)
        }
        Command::Extend { name, cocycle, s, params } => {
            let a = cat.get_substituted(name, &params.map())?;
            let n = a.dim();
            let mut thetas = Vec::new();
            for c in cocycle {
                thetas.extend(read_cocycles(n, c)?);
            }
            if let Some(s) = s {
                if *s != thetas.len() {
                    return Err(Error::Usage(format!("--s {s} but {} cocycles given", thetas.len())));
                }
            }
            let ext = cohomology::central_extension(&a, &thetas)?.result;
            let trivial = cohomology::has_trivial_intersection(&a, &thetas)?;
            let flags = ext.check_identities();
            let profile = ext.invariant_profile(None)?;
            let candidates: Vec<&str> = cat
                .entries()
                .iter()
                .filter(|e| e.algebra.dim() == ext.dim())
                .filter(|e| e.algebra.invariant_profile(None).is_ok_and(|p| p == profile))
                .map(|e| e.name.as_str())
                .collect();
            let ok = flags.novikov;
            let v = json!({
                "base": a.name(), "cocycles": thetas.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                "extension": ext.to_json(), "identities": flags, "profile": profile,
                "trivial_intersection": trivial, "profile_matches": candidates,
            });
            emit(out, fmt, &v, || {
                format!(
                    "{} (dim {})\n{}\nnovikov {}, Ann(θ) ∩ Ann(A) = 0: {}\ndim Ann {}, dim Der {}, derived dims {:?}\nsame generic profile: {}\n",
                    ext.name(),
                    ext.dim(),
                    ext.table(),
                    flags.novikov,
                    trivial,
                    profile.dim_ann,
                    profile.dim_der,
                    profile.dims_derived,
                    if candidates.is_empty() { "none".to_string() } else { candidates.join(", ") }
                )
            })?;
            Ok(ok)
        }
        Command::Split { name, subspace, params } => {
            let a = cat.get_substituted(name, &params.map())?;
            let w = subspace.iter().map(|s| basis_label(s, a.dim())).collect::<Result<Vec<_>>>()?;
            let sp = cohomology::split_central_extension(&a, &w)?;
            let ok = cohomology::split_roundtrip(&a, &w)?;
            let cocycles: Vec<String> = sp.cocycles.iter().map(|c| c.to_string()).collect();
            let v = json!({"algebra": a.name(), "quotient": sp.quotient.to_json(), "cocycles": cocycles, "roundtrip": ok});
            emit(out, fmt, &v, || {
                format!(
                    "quotient (dim {}): {}\ncocycles: {}\nre-extension reproduces {}: {}\n",
                    sp.quotient.dim(),
                    sp.quotient.table(),
                    cocycles.join(" | "),
                    a.name(),
                    if ok { "yes" } else { "NO" }
                )
            })?;
            Ok(ok)
        }
        Command::Derivations { name, params } => {
            let a = cat.get_substituted(name, &params.map())?;
            let d = a.derivation_dim(None)?;
            emit(out, fmt, &json!({"algebra": a.name(), "dim_der": d}), || format!("{d}\n"))?;
            Ok(true)
        }
        Command::Degenerate(DegenerateCmd::Verify(args)) => {
            let opts = run_options(args, cli.seed)?;
            let mut ws: Vec<DegenerationWitness> = Vec::new();
            if let Some(path) = &args.file {
                ws.extend(read_witnesses(&std::fs::read_to_string(path)?)?);
            }
            if args.all {
                ws.extend(cat.table_b.iter().cloned());
            }
            if let Some(id) = &args.row {
                let w = cat.table_b_row(id).ok_or_else(|| Error::Usage(format!("no witness `{id}`")))?;
                ws.push(w.clone());
            }
            if let Some(t) = args.tier {
                for w in &mut ws {
                    w.tier = match t {
                        TierArg::Exact => Tier::Exact,
                        TierArg::Numeric => Tier::Numeric,
                    };
                }
            }
            let results = degeneration::run_witnesses(&cat, &ws, &opts)?;
            let ok = results.iter().all(|r| r.report.pass);
            let v = json!({"seed": cli.seed, "digits": opts.numeric.digits, "results": results});
            emit(out, fmt, &v, || results.iter().map(row_text).collect())?;
            Ok(ok)
        }
        Command::Graph(GraphCmd::Components { digits: d }) => {
            let opts = RunOptions { numeric: NumericOptions { digits: digits(*d)?, seed: cli.seed, ..Default::default() }, cross_validate: false };
            let results = degeneration::run_witnesses(&cat, &cat.table_b, &opts)?;
            let (crit, rep) = suite::reachability(&cat, &results);
            let v = json!({"seed": cli.seed, "pass": crit.pass, "report": rep});
            emit(out, fmt, &v, || {
                let mut s = format!("sources: {}\n", SOURCES.join(", "));
                for (f, r) in &rep.reachable {
                    s.push_str(&format!("  {f}: {}\n", if *r { "reached" } else { "NOT reached" }));
                }
                s.push_str(&format!(
                    "verified witnesses into a source: {}\n",
                    if rep.into_sources.is_empty() { "none".to_string() } else { rep.into_sources.join(", ") }
                ));
                s.push_str(&rep.dot);
                s
            })?;
            Ok(crit.pass)
        }
        Command::Report(ReportCmd::Full { digits: d }) => {
            let mut opts = SuiteOptions { seed: cli.seed, ..Default::default() };
            opts.run.numeric.digits = digits(*d)?;
            let criteria = suite::run_all(&cat, &opts)?;
            let ok = criteria.iter().all(|c| c.pass);
            let v = json!({"seed": cli.seed, "digits": opts.run.numeric.digits, "pass": ok, "criteria": criteria});
            emit(out, fmt, &v, || {
                let mut s = String::new();
                for c in &criteria {
                    s.push_str(&format!("criterion {} {}: {}: {}\n", c.number, if c.pass { "PASS" } else { "FAIL" }, c.title, c.summary));
                    if !c.pass {
                        for d in &c.details {
                            s.push_str(&format!("    {d}\n"));
                        }
                    }
                }
                s
            })?;
            Ok(ok)
        }
    }
}

fn eq(b: bool) -> &'static str {
    if b {
        "equal"
    } else {
        "DIFFERENT"
    }
}

fn join<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn basis_label(s: &str, n: usize) -> Result<Vec<crate::arith::ratfunc::RatFunc>> {
    let k: usize = s
        .trim()
        .strip_prefix('e')
        .and_then(|d| d.parse().ok())
        .filter(|k| (1..=n).contains(k))
        .ok_or_else(|| Error::Usage(format!("`{s}` is not a basis vector e1..e{n}")))?;
    let mut v = vec![crate::arith::ratfunc::RatFunc::zero(); n];
    v[k - 1] = crate::arith::ratfunc::RatFunc::one();
    Ok(v)
}

fn read_cocycles(n: usize, arg: &str) -> Result<Vec<Cocycle>> {
    if !Path::new(arg).is_file() {
        return Ok(vec![Cocycle::parse(n, arg)?]);
    }
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(arg)?)?;
    let list: Vec<CocycleJson> = match v {
        serde_json::Value::Array(_) => serde_json::from_value(v)?,
        _ => vec![serde_json::from_value(v)?],
    };
    list.iter().map(|j| Cocycle::from_json(n, j)).collect()
}

fn read_witnesses(s: &str) -> Result<Vec<DegenerationWitness>> {
    let v: serde_json::Value = serde_json::from_str(s)?;
    Ok(match v {
        serde_json::Value::Array(_) => serde_json::from_value(v)?,
        _ => vec![serde_json::from_value(v)?],
    })
}

/// `1e-6`, `2.5e-3`, `1/1000` or any constant expression.
pub fn parse_t_value(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Usage(format!("`{s}` is not a positive rational"));
    let r = if let Some((m, e)) = s.split_once(['e', 'E']) {
        let exp: i32 = e.parse().map_err(|_| bad())?;
        let (int, frac) = m.split_once('.').unwrap_or((m, ""));
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let shift = exp - frac.len() as i32;
        let ten = BigInt::from(10).pow(shift.unsigned_abs());
        if shift >= 0 {
            Rational::from_integer(digits * ten)
        } else {
            Rational::new(digits, ten)
        }
    } else {
        let g = ScalarExpr::parse(s)?.to_ratfunc()?.as_constant().ok_or_else(bad)?;
        if !num_traits::Zero::is_zero(&g.im) {
            return Err(bad());
        }
        g.re
    };
    if r <= Rational::from_integer(BigInt::from(0)) {
        return Err(bad());
    }
    Ok(r)
}

fn run_options(args: &VerifyArgs, seed: u64) -> Result<RunOptions> {
    let mut numeric = NumericOptions { digits: digits(args.digits)?, samples: args.samples, seed, ..Default::default() };
    if let Some(s) = &args.schedule {
        numeric.schedule = s.iter().map(|x| parse_t_value(x)).collect::<Result<_>>()?;
    }
    Ok(RunOptions { numeric, cross_validate: !args.no_cross_check })
}

fn row_text(r: &RowResult) -> String {
    let rep = &r.report;
    let mut s = format!(
        "{} [{:?} {:?}] {} → {}: {}\n",
        rep.id,
        rep.kind,
        rep.tier,
        rep.source,
        rep.target,
        if rep.pass { "pass" } else { "FAIL" }
    );
    if !rep.samples.is_empty() {
        s.push_str(&format!("  samples: {}\n", rep.samples.join("; ")));
    }
    if let Some(m) = &rep.max_residual {
        s.push_str(&format!("  max residual at last t: {m}"));
        if let Some(d) = rep.decay_exponent {
            s.push_str(&format!(", decay ~ t^{d:.3}"));
        }
        s.push_str(" (heuristic)\n");
    }
    for f in rep.failures() {
        s.push_str(&format!("  e{}e{} → e{}: {:?} {}\n", f.i, f.j, f.k, f.status, f.detail.as_deref().unwrap_or("")));
    }
    if let Some(c) = &r.cross_check {
        s.push_str(&format!("  numeric cross-check: {}\n", if c.pass { "pass" } else { "FAIL" }));
    }
    let n = &r.necessary;
    if !n.skipped {
        let pts: Vec<String> = n.points.iter().map(|p| format!("{} vs {}", p.der_source, p.der_target)).collect();
        s.push_str(&format!(
            "  dim Der {}: strict {}{}\n",
            pts.join(", "),
            if n.strict { "yes" } else { "no" },
            if n.t_dependent { ", source moves with t" } else { "" }
        ));
    }
    for note in &rep.notes {
        s.push_str(&format!("  note: {note}\n"));
    }
    s
}
