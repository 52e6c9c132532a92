//! Named algebras, extension witnesses, action cases, the cohomology golden
//! table and the degeneration witnesses, shipped as JSON.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraJson, Assignment, InvariantProfile};
use crate::arith::expr::ScalarExpr;
use crate::arith::poly::Symbol;
use crate::arith::ratfunc::RatFunc;
use crate::cohomology::{self, ActionCase, Cocycle};
use crate::degeneration::DegenerationWitness;
use crate::error::{Error, Result};
use crate::linalg;
use crate::sample;

const ALGEBRAS: &str = include_str!("../data/algebras.json");
const EXTENSIONS: &str = include_str!("../data/extensions.json");
const ACTIONS: &str = include_str!("../data/actions.json");
const GOLDEN: &str = include_str!("../data/golden.json");
const TABLE_B: &str = include_str!("../data/table_b.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    /// The classification in dimension 1: only the zero algebra.
    Dim1,
    /// Zero products in dimensions 2 and up.
    Zero,
    Dim2,
    Dim3,
    TableA,
    /// The two families of two-step algebras spanning the trivial components.
    TrivialFamilies,
    /// Used in the construction but not part of any list.
    Auxiliary,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct EntryJson {
    #[serde(flatten)]
    algebra: AlgebraJson,
    section: Section,
    #[serde(default)]
    aliases: Vec<String>,
    #[serde(default)]
    pure: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub section: Section,
    pub aliases: Vec<String>,
    pub purity_expected: bool,
    pub algebra: Algebra,
}

impl CatalogEntry {
    pub fn family_params(&self) -> &[Symbol] {
        self.algebra.params()
    }
}

/// A cocycle on a base algebra whose extension should be a named algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionWitness {
    pub id: String,
    pub base: String,
    #[serde(default)]
    pub base_params: BTreeMap<String, String>,
    /// One `D_ij` combination per extension dimension.
    pub cocycle: Vec<String>,
    #[serde(default)]
    pub representative: String,
    pub target: String,
    #[serde(default)]
    pub target_params: BTreeMap<String, String>,
    /// Symbols of the witness left free.
    #[serde(default)]
    pub free: Vec<String>,
    /// Constraints on the free symbols as stated alongside the representative.
    #[serde(default)]
    pub printed_constraints: Vec<String>,
    /// `E_i = e_{relabel[i]}` before comparing with the target.
    #[serde(default)]
    pub relabel: Option<Vec<usize>>,
    /// The extension is expected to have an annihilator component.
    #[serde(default)]
    pub split_expected: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoldenRow {
    pub algebra: String,
    pub z2: Vec<String>,
    pub b2: Vec<String>,
    pub h2: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    pub extensions: Vec<ExtensionWitness>,
    pub actions: Vec<ActionCaseEntry>,
    pub golden: Vec<GoldenRow>,
    pub table_b: Vec<DegenerationWitness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionCaseEntry {
    #[serde(flatten)]
    pub case: ActionCase,
    /// `false` for cases kept as negative controls.
    pub expect_pass: bool,
}

#[derive(Clone, Debug, Default)]
pub struct ListFilter {
    pub dim: Option<usize>,
    pub section: Option<Section>,
    pub pure: Option<bool>,
    /// Include zero algebras of dimension ≥ 2 and auxiliary entries.
    pub all: bool,
}

pub fn builtin() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| Catalog::load_builtin().expect("bundled catalog data is valid"))
}

fn entry_from_json(e: EntryJson) -> Result<CatalogEntry> {
    let algebra = Algebra::from_json(&e.algebra)?;
    Ok(CatalogEntry {
        name: e.algebra.name.clone(),
        section: e.section,
        aliases: e.aliases,
        purity_expected: e.pure.unwrap_or(!algebra.check_identities().two_step),
        algebra,
    })
}

impl Catalog {
    pub fn load_builtin() -> Result<Self> {
        let entries = serde_json::from_str::<Vec<EntryJson>>(ALGEBRAS)?
            .into_iter()
            .map(entry_from_json)
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalog {
            entries,
            extensions: serde_json::from_str(EXTENSIONS)?,
            actions: serde_json::from_str(ACTIONS)?,
            golden: serde_json::from_str(GOLDEN)?,
            table_b: serde_json::from_str(TABLE_B)?,
        })
    }

    /// Adds algebras from a JSON array (or single object) in the algebra schema.
    pub fn add_user_algebras(&mut self, json: &str) -> Result<Vec<String>> {
        let v: serde_json::Value = serde_json::from_str(json)?;
        let list: Vec<AlgebraJson> = match v {
            serde_json::Value::Array(_) => serde_json::from_value(v)?,
            _ => vec![serde_json::from_value(v)?],
        };
        let mut names = Vec::new();
        for j in list {
            if self.entries.iter().any(|e| e.name == j.name) {
                return Err(Error::InvalidAlgebra(format!("`{}` already in the catalog", j.name)));
            }
            let algebra = Algebra::from_json(&j)?;
            names.push(j.name.clone());
            self.entries.push(CatalogEntry {
                name: j.name,
                section: Section::Auxiliary,
                aliases: Vec::new(),
                purity_expected: !algebra.check_identities().two_step,
                algebra,
            });
        }
        Ok(names)
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// ASCII name for a name or alias; accepts a trailing `(…)` parameter
    /// suffix on aliases.
    pub fn canonical_name(&self, name: &str) -> Option<&str> {
        let name = name.trim();
        let find = |s: &str| {
            self.entries.iter().find(|e| e.name == s || e.aliases.iter().any(|a| a == s)).map(|e| e.name.as_str())
        };
        if let Some(n) = find(name) {
            return Some(n);
        }
        if let Some(base) = name.strip_suffix("(0)") {
            if let Some(n) = find(&format!("{base}_0")) {
                return Some(n);
            }
        }
        let base = name.split('(').next().unwrap_or(name);
        find(base)
    }

    pub fn entry(&self, name: &str) -> Result<&CatalogEntry> {
        let n = self.canonical_name(name).ok_or_else(|| Error::UnknownAlgebra(name.to_string()))?;
        Ok(self.entries.iter().find(|e| e.name == n).expect("canonical names exist"))
    }

    /// The named algebra with `params` substituted; unassigned parameters stay generic.
    pub fn get(&self, name: &str, params: &Assignment) -> Result<Algebra> {
        let e = self.entry(name)?;
        if let Some(p) = params.keys().find(|p| !e.algebra.params().contains(p)) {
            return Err(Error::Usage(format!("{} has no parameter `{p}`", e.name)));
        }
        e.algebra.instantiate(params)
    }

    /// The named algebra with parameters replaced by expressions.
    pub fn get_substituted(&self, name: &str, params: &BTreeMap<String, String>) -> Result<Algebra> {
        let e = self.entry(name)?;
        let map = parse_param_map(params)?;
        if let Some(p) = map.keys().find(|p| !e.algebra.params().contains(p)) {
            return Err(Error::Usage(format!("{} has no parameter `{p}`", e.name)));
        }
        e.algebra.substitute_params(&map)
    }

    pub fn list(&self, f: &ListFilter) -> Vec<&CatalogEntry> {
        self.entries
            .iter()
            .filter(|e| f.all || !matches!(e.section, Section::Zero | Section::Auxiliary))
            .filter(|e| f.dim.is_none_or(|d| e.algebra.dim() == d))
            .filter(|e| f.section.is_none_or(|s| e.section == s))
            .filter(|e| f.pure.is_none_or(|p| e.purity_expected == p))
            .collect()
    }

    pub fn golden_row(&self, name: &str) -> Option<&GoldenRow> {
        let n = self.canonical_name(name)?;
        self.golden.iter().find(|g| g.algebra == n)
    }

    /// Witness by id (`B07`, `b24f`) or bare row number (`7`).
    pub fn table_b_row(&self, id: &str) -> Option<&DegenerationWitness> {
        let id = match id.parse::<u32>() {
            Ok(n) => format!("B{n:02}"),
            Err(_) => id.to_string(),
        };
        self.table_b.iter().find(|w| w.id.eq_ignore_ascii_case(&id))
    }
}

pub fn parse_param_map(params: &BTreeMap<String, String>) -> Result<BTreeMap<Symbol, RatFunc>> {
    params.iter().map(|(k, v)| Ok((Symbol::new(k), ScalarExpr::parse(v)?.to_ratfunc()?))).collect()
}

fn parse_exprs(v: &[String]) -> Result<Vec<RatFunc>> {
    v.iter().map(|s| ScalarExpr::parse(s)?.to_ratfunc()).collect()
}

/// Failures of the per-entry invariants, generically and at 5 samples.
pub fn verify_entry(e: &CatalogEntry, seed: u64) -> Result<Vec<String>> {
    let mut fails = Vec::new();
    let mut rng = sample::rng(seed);
    let mut points: Vec<Option<Assignment>> = vec![None];
    if !e.family_params().is_empty() {
        for _ in 0..5 {
            points.push(Some(sample::admissible(e.family_params(), e.algebra.constraints(), &mut rng)));
        }
    }
    for at in &points {
        let a = match at {
            Some(at) => e.algebra.instantiate(at)?,
            None => e.algebra.clone(),
        };
        let label = match at {
            Some(at) => format!("{} at {}", e.name, format_assignment(at)),
            None => format!("{} (generic)", e.name),
        };
        let flags = a.check_identities();
        if !flags.novikov {
            fails.push(format!("{label}: not Novikov"));
        }
        if a.derived_powers().nilpotency_index.is_none() {
            fails.push(format!("{label}: not nilpotent"));
        }
        if flags.two_step == e.purity_expected {
            fails.push(format!("{label}: purity differs from the expected {}", e.purity_expected));
        }
        if a.dim() > 0 && a.annihilator_basis().is_empty() {
            fails.push(format!("{label}: trivial annihilator"));
        }
    }
    Ok(fails)
}

pub fn format_assignment(at: &Assignment) -> String {
    at.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub id: String,
    pub target: String,
    pub is_cocycle: bool,
    pub trivial_intersection: bool,
    pub matches_target: bool,
    pub annihilator_formula: bool,
    pub split_expected: bool,
    /// Parameter points checked besides the generic one.
    pub samples: usize,
    pub flags: Vec<String>,
    pub failures: Vec<String>,
}

impl ExtensionReport {
    pub fn pass(&self) -> bool {
        self.is_cocycle && self.trivial_intersection && self.matches_target && self.annihilator_formula
    }
}

/// Checks a witness generically in its free symbols and at 3 admissible samples.
pub fn verify_extension(cat: &Catalog, w: &ExtensionWitness, seed: u64) -> Result<ExtensionReport> {
    let base = cat.get_substituted(&w.base, &w.base_params)?;
    let n = base.dim();
    let thetas: Vec<Cocycle> = w.cocycle.iter().map(|s| Cocycle::parse(n, s)).collect::<Result<_>>()?;
    let target = cat.get_substituted(&w.target, &w.target_params)?;
    let free: Vec<Symbol> = w.free.iter().map(|s| Symbol::new(s)).collect();
    let printed = parse_exprs(&w.printed_constraints)?;
    let mut nonzero = printed.clone();
    nonzero.extend(base.constraints().iter().cloned());
    nonzero.extend(target.constraints().iter().cloned());

    let mut report = ExtensionReport {
        id: w.id.clone(),
        target: w.target.clone(),
        is_cocycle: true,
        trivial_intersection: true,
        matches_target: true,
        annihilator_formula: true,
        split_expected: w.split_expected,
        samples: 0,
        flags: Vec::new(),
        failures: Vec::new(),
    };
    for c in &printed {
        let carried = target.constraints().iter().any(|t| same_up_to_scalar(t, c));
        if !carried {
            report.flags.push(format!(
                "printed constraint {} ≠ 0 is not carried by {}",
                ScalarExpr::from_ratfunc(c),
                w.target
            ));
        }
    }

    let mut rng = sample::rng(seed);
    let mut points: Vec<Option<Assignment>> = vec![None];
    if !free.is_empty() {
        for _ in 0..3 {
            points.push(Some(sample::admissible(&free, &nonzero, &mut rng)));
        }
    }
    for at in &points {
        let (b, tg, th) = match at {
            Some(at) => (
                base.instantiate(at)?,
                target.instantiate(at)?,
                thetas.iter().map(|c| c.eval_partial(at)).collect::<Result<Vec<_>>>()?,
            ),
            None => (base.clone(), target.clone(), thetas.clone()),
        };
        let label = at.as_ref().map_or("generic".to_string(), format_assignment);
        for c in &th {
            if !cohomology::is_cocycle(&b, c)? {
                report.is_cocycle = false;
                report.failures.push(format!("{label}: {c} is not a cocycle"));
            }
        }
        if !report.is_cocycle {
            continue;
        }
        if !cohomology::has_trivial_intersection(&b, &th)? {
            report.trivial_intersection = false;
            report.failures.push(format!("{label}: Ann(θ) ∩ Ann(A) ≠ 0"));
        }
        let ext = cohomology::central_extension(&b, &th)?.result;
        let ann_t = cohomology::cocycle_annihilator(&b, &th)?;
        let inter = linalg::intersect(&ann_t, &b.annihilator_basis(), n).len();
        if ext.annihilator_basis().len() != inter + th.len() {
            report.annihilator_formula = false;
            report.failures.push(format!("{label}: annihilator dimension formula fails"));
        }
        let ext = match &w.relabel {
            Some(p) => ext.in_basis(&permutation_basis(p, ext.dim())?)?,
            None => ext,
        };
        if !ext.same_constants(&tg) {
            report.matches_target = false;
            report.failures.push(format!("{label}: extension is {} but {} is {}", ext.table(), w.target, tg.table()));
        }
        if at.is_some() {
            report.samples += 1;
        }
    }
    Ok(report)
}

fn same_up_to_scalar(a: &RatFunc, b: &RatFunc) -> bool {
    match a.div(b) {
        Ok(q) => q.as_constant().is_some(),
        Err(_) => false,
    }
}

/// Rows `E_i = e_{p[i]}` for a one-based permutation.
pub fn permutation_basis(p: &[usize], n: usize) -> Result<Vec<Vec<RatFunc>>> {
    if p.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: p.len() });
    }
    let mut seen = vec![false; n];
    let mut rows = Vec::with_capacity(n);
    for &k in p {
        if k == 0 || k > n || seen[k - 1] {
            return Err(Error::InvalidWitness(format!("{p:?} is not a permutation of 1..={n}")));
        }
        seen[k - 1] = true;
        rows.push((0..n).map(|j| if j + 1 == k { RatFunc::one() } else { RatFunc::zero() }).collect());
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenReport {
    pub algebra: String,
    /// Computed `(Z², B², H²)` dimensions.
    pub dims: (usize, usize, usize),
    pub expected_dims: (usize, usize, usize),
    pub z2_equal: bool,
    pub b2_equal: bool,
    /// Printed `H²` classes together with `B²` span `Z²`.
    pub h2_complements: bool,
}

impl GoldenReport {
    pub fn pass(&self) -> bool {
        self.dims == self.expected_dims && self.z2_equal && self.b2_equal && self.h2_complements
    }
}

pub fn verify_golden(cat: &Catalog, row: &GoldenRow) -> Result<GoldenReport> {
    let a = cat.get(&row.algebra, &Assignment::new())?;
    let n = a.dim();
    let parse = |v: &[String]| -> Result<Vec<Vec<RatFunc>>> { v.iter().map(|s| Ok(Cocycle::parse(n, s)?.to_vector())).collect() };
    let (z2, b2, h2) = (parse(&row.z2)?, parse(&row.b2)?, parse(&row.h2)?);
    let space = cohomology::cocycle_space(&a);
    let vecs = |v: &[Cocycle]| v.iter().map(Cocycle::to_vector).collect::<Vec<_>>();
    let (cz, cb) = (vecs(&space.z2), vecs(&space.b2));
    let nn = n * n;
    let mut bh = b2.clone();
    bh.extend(h2.iter().cloned());
    let ez = linalg::span_rank(&z2, nn);
    let eb = linalg::span_rank(&b2, nn);
    Ok(GoldenReport {
        algebra: row.algebra.clone(),
        dims: (space.z2.len(), space.b2.len(), space.h2.len()),
        expected_dims: (ez, eb, ez - eb),
        z2_equal: linalg::same_span(&cz, &z2, nn),
        b2_equal: linalg::same_span(&cb, &b2, nn),
        h2_complements: linalg::span_rank(&bh, nn) == ez && bh.len() == ez && linalg::same_span(&bh, &z2, nn),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionOutcome {
    pub report: cohomology::ActionReport,
    pub expect_pass: bool,
    pub reading_note: Option<String>,
}

impl ActionOutcome {
    pub fn as_expected(&self) -> bool {
        self.report.pass() == self.expect_pass
    }
}

pub fn verify_action(cat: &Catalog, a: &ActionCaseEntry, samples: usize, seed: u64) -> Result<ActionOutcome> {
    let base = cat.entry(&a.case.base)?.algebra.clone();
    Ok(ActionOutcome {
        report: cohomology::verify_action_formulas(&base, &a.case, samples, seed)?,
        expect_pass: a.expect_pass,
        reading_note: a.case.reading_note.clone(),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogReport {
    pub entries_checked: usize,
    pub invariant_failures: Vec<String>,
    pub extensions: Vec<ExtensionReport>,
    /// Groups of same-dimension entries whose invariant profiles agree at
    /// every sampled point.
    pub indistinguishable: Vec<Vec<String>>,
}

impl CatalogReport {
    pub fn pass(&self) -> bool {
        self.invariant_failures.is_empty() && self.extensions.iter().all(ExtensionReport::pass)
    }
}

pub fn verify_entries(cat: &Catalog, entries: &[CatalogEntry], seed: u64) -> Result<CatalogReport> {
    let mut invariant_failures = Vec::new();
    for e in entries {
        invariant_failures.extend(verify_entry(e, seed)?);
    }
    let extensions = cat.extensions.iter().map(|w| verify_extension(cat, w, seed)).collect::<Result<Vec<_>>>()?;

    let mut groups: BTreeMap<(usize, Vec<InvariantProfile>), Vec<String>> = BTreeMap::new();
    let mut rng = sample::rng(seed ^ 0x5eed);
    for e in entries {
        let mut profs = Vec::new();
        for _ in 0..3 {
            let at = sample::admissible(e.family_params(), e.algebra.constraints(), &mut rng);
            profs.push(e.algebra.invariant_profile(Some(&at))?);
        }
        groups.entry((e.algebra.dim(), profs)).or_default().push(e.name.clone());
    }
    let indistinguishable = groups.into_values().filter(|g| g.len() > 1).collect();
    Ok(CatalogReport { entries_checked: entries.len(), invariant_failures, extensions, indistinguishable })
}

pub fn verify_catalog(seed: u64) -> Result<CatalogReport> {
    let cat = builtin();
    verify_entries(cat, cat.entries(), seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::expr::assignment;
    use crate::arith::gauss::GaussRational;

    #[test]
    fn names_and_aliases() {
        let c = builtin();
        assert_eq!(c.canonical_name("N⁴₂₀"), Some("N4_20"));
        assert_eq!(c.canonical_name("N⁴₂₀(α)"), Some("N4_20"));
        assert_eq!(c.canonical_name("N³*₀₄(0)"), Some("N3s_04_0"));
        assert_eq!(c.canonical_name("N3s_04(0)"), Some("N3s_04_0"));
        assert_eq!(c.canonical_name("trivial_4"), Some("zero_4"));
        assert_eq!(c.canonical_name("𝔑₃(α)"), Some("Ntriv_3"));
        assert!(matches!(c.entry("N4_99"), Err(Error::UnknownAlgebra(_))));
    }

    #[test]
    fn get_substitutes_and_checks_constraints() {
        let c = builtin();
        let a = c.get("N4_02", &assignment([("lambda", GaussRational::from_int(3))])).unwrap();
        assert_eq!(a.table(), "e1e1 = e2, e1e2 = e3, e2e1 = 3*e3");
        let z = c.get("Ntriv_3", &assignment([("alpha", GaussRational::from_int(2))])).unwrap();
        assert_eq!(z.table(), "e1e1 = e4, e1e2 = 2*e4, e2e1 = -2*e4, e2e2 = e4, e3e3 = e4");
        let bad = c.get("N4_06", &assignment([("alpha", GaussRational::from_int(0))]));
        assert!(matches!(bad, Err(Error::ConstraintViolated(_))));
        assert!(c.get("zero_4", &Assignment::new()).unwrap().nonzero_products().is_empty());
    }

    #[test]
    fn list_counts() {
        let c = builtin();
        let f = |dim, section| c.list(&ListFilter { dim: Some(dim), section, ..Default::default() }).len();
        assert_eq!(f(4, Some(Section::TableA)), 24);
        assert_eq!(f(3, None), 6);
        let one: Vec<_> = c.list(&ListFilter { dim: Some(1), ..Default::default() }).iter().map(|e| e.name.clone()).collect();
        assert_eq!(one, ["zero_1"]);
    }

    #[test]
    fn permutation_rows() {
        assert!(permutation_basis(&[1, 1], 2).is_err());
        let p = permutation_basis(&[2, 1], 2).unwrap();
        assert!(p[0][1].is_one() && p[1][0].is_one());
    }

    #[test]
    fn corrupted_entry_is_reported() {
        let c = builtin();
        let mut e = c.entry("N4_12").unwrap().clone();
        e.algebra = Algebra::new("N4_12", 4, &[], &[], &[(1, 2, 3, "1"), (2, 3, 4, "1"), (3, 1, 1, "1")]).unwrap();
        assert!(!verify_entry(&e, 1).unwrap().is_empty());
    }
}
