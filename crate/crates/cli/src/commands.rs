use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::anyhow;
use nilspec::exactlin::ExtNat;
use nilspec::graph::{parse_graph, Graph, GraphError};
use nilspec::morphism::{AutomorphismFile, Endo, MorphismError};
use nilspec::nilgroup::Presentation;
use nilspec::oracle::{count_twisted_classes, FiniteQuotient, OracleError};
use nilspec::par::Strategy;
use nilspec::spectra::catalog::{catalog, default_search, CatalogEntry};
use nilspec::spectra::search::DEFAULT_BUDGET;
use nilspec::spectra::{
    classification_for, compute_spectrum_report, Classification, SearchError, SearchOptions,
    SpectrumForm, SpectrumReport,
};
use serde_json::json;

use crate::Format;

pub const VERIFY_FAILED: u8 = 1;
pub const PARSE: u8 = 2;
pub const RELATION: u8 = 3;
pub const NOT_AUTOMORPHISM: u8 = 4;
pub const RESOURCE: u8 = 5;

pub struct Context {
    pub format: Format,
    pub budget: Option<u64>,
}

impl Context {
    fn budget(&self) -> Option<u64> {
        Some(self.budget.unwrap_or(DEFAULT_BUDGET))
    }
}

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    fn new(code: u8, error: impl Into<anyhow::Error>) -> Self {
        Self {
            code,
            error: error.into(),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(PARSE, anyhow!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| {
        let msg = match e {
            GraphError::Parse { line, column, msg } if line > 0 => {
                format!("{}:{line}:{column}: {msg}", path.display())
            }
            other => format!("{}: {other}", path.display()),
        };
        Failure::new(PARSE, anyhow!(msg))
    })
}

fn load_endo(p: &Presentation, path: &Path) -> Result<Endo, Failure> {
    let file: AutomorphismFile = serde_json::from_str(&read(path)?).map_err(|e| {
        Failure::new(
            PARSE,
            anyhow!("{}:{}:{}: {e}", path.display(), e.line(), e.column()),
        )
    })?;
    file.into_endo(p).map_err(morphism_failure)
}

fn morphism_failure(e: MorphismError) -> Failure {
    let code = match e {
        MorphismError::RelationViolation(..) => RELATION,
        MorphismError::NotAutomorphism(_) => NOT_AUTOMORPHISM,
        _ => PARSE,
    };
    Failure::new(code, e)
}

fn search_failure(e: SearchError) -> Failure {
    let code = match e {
        SearchError::BoundTooSmall(_) => PARSE,
        _ => RESOURCE,
    };
    Failure::new(code, e)
}

fn json_line(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn set(vs: impl IntoIterator<Item = usize>) -> String {
    let items: Vec<String> = vs.into_iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn spectrum_text(c: &Classification) -> String {
    match c {
        Classification::ClosedForm { rendered, .. } => rendered.clone(),
        Classification::RInfinity { .. } => "{inf}".into(),
        Classification::SearchOnly => "unknown (search only)".into(),
    }
}

fn r_infinity_text(c: &Classification) -> String {
    match c {
        Classification::RInfinity { rule } => format!("yes ({rule})"),
        Classification::ClosedForm { form, .. } if *form == SpectrumForm::RInfinityOnly => {
            "yes".into()
        }
        Classification::ClosedForm { .. } => "no".into(),
        Classification::SearchOnly => "unknown".into(),
    }
}

pub fn analyze(ctx: &Context, path: &Path) -> CmdResult {
    let g = load_graph(path)?;
    let p = Presentation::new(g.clone());
    let join = g.join_decompose();
    let comps = g.connected_components();
    let filtration = g.degree_filtration();
    let class = classification_for(&g);
    if ctx.format == Format::Json {
        return Ok(Outcome::ok(json_line(&json!({
            "graph": g,
            "n": p.n(),
            "big_n": p.big_n(),
            "center_rank": p.center_rank(),
            "commutator_rank": p.gamma2_rank(),
            "degree_filtration": filtration,
            "join_decomposition": join,
            "components": comps,
            "classification": class,
        }))));
    }
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", p.n());
    let _ = writeln!(out, "edges: {}", g.edge_count());
    let _ = writeln!(out, "non-edges (N): {}", p.big_n());
    let _ = writeln!(out, "center rank: {}", p.center_rank());
    let _ = writeln!(out, "commutator rank: {}", p.gamma2_rank());
    let levels: Vec<String> = filtration
        .iter()
        .enumerate()
        .map(|(d, vs)| format!("V{}={}", d + 1, set(vs.iter().copied())))
        .collect();
    let _ = writeln!(out, "degree filtration: {}", levels.join(" "));
    let factors: Vec<String> = join.factors.iter().map(|f| set(f.clone())).collect();
    let _ = writeln!(
        out,
        "join decomposition: apex={} factors=[{}]",
        set(join.apex.clone()),
        factors.join(", ")
    );
    let parts: Vec<String> = comps.components.iter().map(|c| set(c.clone())).collect();
    let _ = writeln!(
        out,
        "components: isolated={} components=[{}]",
        set(comps.isolated.clone()),
        parts.join(", ")
    );
    let _ = writeln!(out, "R-infinity: {}", r_infinity_text(&class));
    let _ = writeln!(out, "spectrum: {}", spectrum_text(&class));
    Ok(Outcome::ok(out))
}

pub fn reid(ctx: &Context, graph: &Path, aut: &Path) -> CmdResult {
    let p = Presentation::new(load_graph(graph)?);
    let e = load_endo(&p, aut)?;
    let r = e.reidemeister_number().map_err(morphism_failure)?;
    Ok(Outcome::ok(match ctx.format {
        Format::Json => json_line(&r),
        Format::Text => format!("r1 = {}\nr2 = {}\nr = {}\n", r.r1, r.r2, r.r),
    }))
}

fn report_text(r: &SpectrumReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "classification: {}", spectrum_text(&r.classification));
    let _ = writeln!(out, "bound: {}", r.bound);
    let obs: Vec<String> = r.observed.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "observed: [{}]", obs.join(", "));
    for (v, m) in &r.witnesses {
        let _ = writeln!(
            out,
            "  {v}: {}",
            serde_json::to_string(m).expect("serializable")
        );
    }
    out
}

pub fn search(ctx: &Context, path: &Path, bound: Option<i64>) -> CmdResult {
    let g = load_graph(path)?;
    let report = match bound {
        Some(b) => {
            let opts = SearchOptions::new(b).with_budget(ctx.budget());
            compute_spectrum_report(&g, &opts).map_err(search_failure)?
        }
        None => {
            let (b, res) =
                default_search(&g, Strategy::default(), ctx.budget()).map_err(search_failure)?;
            SpectrumReport::from_search(&g, b, res)
        }
    };
    let stdout = match ctx.format {
        Format::Json => json_line(&report),
        Format::Text => report_text(&report),
    };
    let violations = report.violations();
    if !violations.is_empty() || !report.unsound_witnesses().is_empty() {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        eprintln!(
            "inconsistent report: values outside the form: [{}]",
            list.join(", ")
        );
        return Ok(Outcome {
            stdout,
            code: VERIFY_FAILED,
        });
    }
    Ok(Outcome::ok(stdout))
}

struct TableCheck {
    entry: CatalogEntry,
    report: SpectrumReport,
    violations: Vec<String>,
    missing: Vec<u64>,
    unsound: Vec<String>,
    decomposition_agrees: bool,
}

impl TableCheck {
    fn pass(&self) -> bool {
        self.violations.is_empty()
            && self.missing.is_empty()
            && self.unsound.is_empty()
            && self.decomposition_agrees
    }
}

fn check_entry(
    ctx: &Context,
    entry: CatalogEntry,
    bound: Option<i64>,
) -> Result<TableCheck, Failure> {
    let g = entry.graph();
    let report = match bound {
        Some(b) => compute_spectrum_report(&g, &SearchOptions::new(b).with_budget(ctx.budget()))
            .map_err(search_failure)?,
        None => {
            let (b, res) =
                default_search(&g, Strategy::default(), ctx.budget()).map_err(search_failure)?;
            SpectrumReport::from_search(&g, b, res)
        }
    };
    let violations = report
        .observed
        .iter()
        .filter(|v| {
            !entry
                .form
                .contains(&ExtNat::Finite((*v).clone()))
                .unwrap_or(false)
        })
        .map(|v| v.to_string())
        .collect();
    // expected witnesses are tied to the default bounds
    let missing = if bound.is_none() {
        entry
            .witnesses
            .iter()
            .copied()
            .filter(|&w| !report.witnesses.contains_key(&w.into()))
            .collect()
    } else {
        Vec::new()
    };
    let unsound = report
        .unsound_witnesses()
        .iter()
        .map(|v| v.to_string())
        .collect();
    let derived = report.classification.form();
    let decomposition_agrees =
        derived.is_some_and(|f| (1..=100).all(|v| f.contains_u64(v) == entry.form.contains_u64(v)));
    Ok(TableCheck {
        entry,
        report,
        violations,
        missing,
        unsound,
        decomposition_agrees,
    })
}

pub fn verify_tables(ctx: &Context, bound: Option<i64>) -> CmdResult {
    let mut checks = Vec::new();
    for entry in catalog() {
        checks.push(check_entry(ctx, entry, bound)?);
    }
    let all_pass = checks.iter().all(TableCheck::pass);
    let stdout = match ctx.format {
        Format::Json => {
            let classes: Vec<_> = checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.entry.name,
                        "graph": c.report.graph,
                        "form": c.entry.form.render(),
                        "bound": c.report.bound,
                        "observed": c.report.observed.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "violations": c.violations,
                        "missing_witnesses": c.missing,
                        "unsound_witnesses": c.unsound,
                        "decomposition_agrees": c.decomposition_agrees,
                        "pass": c.pass(),
                    })
                })
                .collect();
            json_line(&json!({
                "checked": checks.len(),
                "pass": all_pass,
                "classes": classes,
            }))
        }
        Format::Text => {
            let mut out = String::new();
            for c in &checks {
                let _ = writeln!(
                    out,
                    "{} {:<8} B={} observed={:<4} form={}",
                    if c.pass() { "PASS" } else { "FAIL" },
                    c.entry.name,
                    c.report.bound,
                    c.report.observed.len(),
                    c.entry.form.render()
                );
                if !c.violations.is_empty() {
                    let _ = writeln!(out, "    outside form: {}", c.violations.join(", "));
                }
                if !c.missing.is_empty() {
                    let _ = writeln!(out, "    missing witnesses: {:?}", c.missing);
                }
                if !c.unsound.is_empty() {
                    let _ = writeln!(out, "    unsound witnesses: {}", c.unsound.join(", "));
                }
                if !c.decomposition_agrees {
                    let _ = writeln!(out, "    decomposition disagrees with the table");
                }
            }
            let _ = writeln!(
                out,
                "{}, {} graph classes checked",
                if all_pass { "PASS" } else { "FAIL" },
                checks.len()
            );
            out
        }
    };
    Ok(Outcome {
        stdout,
        code: if all_pass { 0 } else { VERIFY_FAILED },
    })
}

pub fn oracle(ctx: &Context, graph: &Path, aut: &Path, modulus: u64) -> CmdResult {
    let p = Presentation::new(load_graph(graph)?);
    let e = load_endo(&p, aut)?;
    let r = e.reidemeister_number().map_err(morphism_failure)?;
    if r.r.is_infinite() {
        return Ok(Outcome::ok(match ctx.format {
            Format::Json => json_line(&json!({
                "modulus": modulus,
                "formula": r.r,
                "oracle": null,
                "agree": null,
            })),
            Format::Text => "formula=inf, oracle skipped\n".into(),
        }));
    }
    let q = FiniteQuotient::new(p, modulus).map_err(|e| match e {
        OracleError::TooLarge { .. } => Failure::new(RESOURCE, e),
        _ => Failure::new(PARSE, e),
    })?;
    let count = count_twisted_classes(&q, &e).map_err(|e| Failure::new(PARSE, e))?;
    let agree = r.r == ExtNat::from(count);
    let stdout = match ctx.format {
        Format::Json => json_line(&json!({
            "modulus": modulus,
            "formula": r.r,
            "oracle": count,
            "agree": agree,
        })),
        Format::Text => format!(
            "oracle={count} formula={} {}\n",
            r.r,
            if agree { "OK" } else { "MISMATCH" }
        ),
    };
    Ok(Outcome {
        stdout,
        code: if agree { 0 } else { VERIFY_FAILED },
    })
}
