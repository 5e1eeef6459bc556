//! Input parsing, command dispatch, and report emission for the
//! spectral sequence toolkit.
//!
//! One JSON document describes a job: a coefficient field, a simplicial
//! map given by generating simplices and a vertex assignment, a command,
//! and command options. Reports come as text tables and as JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use serde_json::{json, Value};

use leray_core::cosheaf::{cosheaf_map_ranks, leray_cosheaf, verify_page_two};
use leray_core::field::{Field, FieldSpec, PrimeField, Rationals};
use leray_core::levelset::{
    check_decomposition, homology_from_barcodes, leray_barcodes, zigzag_of, BarKind,
    LineTriangulation,
};
use leray_core::reeb::{reeb_compare, reeb_space};
use leray_core::spectral::{total_homology, verify_convergence, Page};
use leray_core::{Simplex, SimplicialComplex, SimplicialMap};

/// Which report a job asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Homology,
    Pages,
    Cosheaf,
    Levelset,
    Reeb,
    Verify,
}

impl Command {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "homology" => Command::Homology,
            "pages" => Command::Pages,
            "cosheaf" => Command::Cosheaf,
            "levelset" => Command::Levelset,
            "reeb" => Command::Reeb,
            "verify" => Command::Verify,
            other => bail!(
                "unknown command {other:?}: expected homology, pages, cosheaf, levelset, reeb, or verify"
            ),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Homology => "homology",
            Command::Pages => "pages",
            Command::Cosheaf => "cosheaf",
            Command::Levelset => "levelset",
            Command::Reeb => "reeb",
            Command::Verify => "verify",
        }
    }
}

/// Optional knobs of a job; command-line flags override document values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Page index for `pages`.
    pub r: Option<i64>,
    /// Homology degree filter.
    pub degree: Option<usize>,
    /// Fiber degree for `cosheaf` and `levelset`.
    pub q: Option<usize>,
}

/// A fully validated job: the map exists and is simplicial.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub field: FieldSpec,
    pub map: SimplicialMap,
    pub command: Command,
    pub options: Options,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    field: String,
    domain: ComplexDoc,
    codomain: ComplexDoc,
    vertex_map: BTreeMap<String, u32>,
    command: String,
    #[serde(default)]
    options: OptionsDoc,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    simplices: Vec<Vec<u32>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct OptionsDoc {
    r: Option<i64>,
    degree: Option<usize>,
    q: Option<usize>,
}

/// Parses and validates a JSON job document.
pub fn parse_input(text: &str) -> Result<JobSpec> {
    let doc: Document = serde_json::from_str(text).context("invalid job document")?;
    let field = FieldSpec::parse(&doc.field).with_context(|| format!("field {:?}", doc.field))?;
    let domain = SimplicialComplex::close_under_faces(&doc.domain.simplices)
        .context("domain complex")?;
    let codomain = SimplicialComplex::close_under_faces(&doc.codomain.simplices)
        .context("codomain complex")?;
    let mut vertex_map = BTreeMap::new();
    for (k, v) in &doc.vertex_map {
        let key: u32 = k.parse().with_context(|| format!("vertex_map key {k:?}"))?;
        vertex_map.insert(key, *v);
    }
    let map = SimplicialMap::new(domain, codomain, vertex_map).context("vertex_map")?;
    let command = Command::parse(&doc.command)?;
    let options = Options { r: doc.options.r, degree: doc.options.degree, q: doc.options.q };
    Ok(JobSpec { field, map, command, options })
}

fn complex_json(k: &SimplicialComplex) -> Value {
    let simplices: Vec<Vec<u32>> = k.all_simplices().map(|s| s.vertices().to_vec()).collect();
    json!({ "simplices": simplices })
}

/// The document a job round-trips to: parsing it again yields the same
/// field, map, command, and options.
pub fn to_document_json(job: &JobSpec) -> Value {
    let vm: BTreeMap<String, u32> =
        job.map.vertex_map().iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let mut options = serde_json::Map::new();
    if let Some(r) = job.options.r {
        options.insert("r".into(), json!(r));
    }
    if let Some(degree) = job.options.degree {
        options.insert("degree".into(), json!(degree));
    }
    if let Some(q) = job.options.q {
        options.insert("q".into(), json!(q));
    }
    json!({
        "field": job.field.to_string(),
        "domain": complex_json(job.map.domain()),
        "codomain": complex_json(job.map.codomain()),
        "vertex_map": vm,
        "command": job.command.name(),
        "options": Value::Object(options),
    })
}

/// A finished report: text table, JSON value, and whether every
/// requested check passed.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

/// Runs a job to a report. The exit status of the binary is derived
/// from `Report::ok`.
pub fn run(job: &JobSpec) -> Result<Report> {
    match job.field {
        FieldSpec::Prime(p) => run_typed(PrimeField::new(p)?, job),
        FieldSpec::Rationals => run_typed(Rationals, job),
    }
}

fn run_typed<F: Field>(field: F, job: &JobSpec) -> Result<Report> {
    match job.command {
        Command::Homology => report_homology(field, job),
        Command::Pages => report_pages(field, job),
        Command::Cosheaf => report_cosheaf(field, job),
        Command::Levelset => report_levelset(field, job),
        Command::Reeb => report_reeb(field, job),
        Command::Verify => report_verify(field, job),
    }
}

fn simplex_label(s: &Simplex) -> String {
    s.to_string()
}

fn report_homology<F: Field>(field: F, job: &JobSpec) -> Result<Report> {
    let dims = job.map.domain().homology_dims(field);
    let shown: Vec<(usize, usize)> = dims
        .iter()
        .enumerate()
        .filter(|(k, _)| job.options.degree.map_or(true, |d| *k == d))
        .map(|(k, &d)| (k, d))
        .collect();
    let mut text = format!("homology of the domain over {}\n", job.field);
    let _ = writeln!(text, "{:>2}  {:>4}", "k", "dim");
    for (k, d) in &shown {
        let _ = writeln!(text, "{k:>2}  {d:>4}");
    }
    let json = json!({
        "command": "homology",
        "field": job.field.to_string(),
        "homology": shown.iter().map(|(k, d)| json!({"k": k, "dim": d})).collect::<Vec<_>>(),
    });
    Ok(Report { text, json, ok: true })
}

fn report_pages<F: Field>(field: F, job: &JobSpec) -> Result<Report> {
    let r = job.options.r.unwrap_or(2);
    if r < 0 {
        bail!("page index must be nonnegative");
    }
    let page = Page::compute(field, &job.map, r);
    let m = job.map.codomain_dim();
    let mut text = format!("page r = {r} over {} (dim Y = {m})\n", job.field);
    let _ = writeln!(text, "{:>2}  {:>2}  {:>4}  {:>8}", "p", "q", "dim", "rank d^r");
    let mut entries = Vec::new();
    for (p, q) in page.support() {
        let dim = page.entry_dim(p, q);
        let rank = page.differential_at(p, q).map(|d| d.rank()).unwrap_or(0);
        let _ = writeln!(text, "{p:>2}  {q:>2}  {dim:>4}  {rank:>8}");
        entries.push(json!({"p": p, "q": q, "dim": dim, "rank": rank}));
    }
    let json = json!({
        "command": "pages",
        "field": job.field.to_string(),
        "r": r,
        "entries": entries,
    });
    Ok(Report { text, json, ok: true })
}

fn report_cosheaf<F: Field>(field: F, job: &JobSpec) -> Result<Report> {
    let q = job.options.q.unwrap_or(0);
    let leray = leray_cosheaf(field.clone(), &job.map, q)?;
    let mut text = format!("Leray cosheaf L_{q} over {}\n", job.field);
    let _ = writeln!(text, "stalk dimensions");
    let mut stalks = Vec::new();
    for tau in job.map.codomain().all_simplices() {
        let dim = leray.cosheaf.dim_at(tau);
        let _ = writeln!(text, "  {:<16} {dim}", simplex_label(tau));
        stalks.push(json!({"simplex": tau.vertices(), "dim": dim}));
    }
    let _ = writeln!(text, "extension map ranks");
    let mut maps = Vec::new();
    for ((tau, face), rank) in cosheaf_map_ranks(&leray.cosheaf) {
        let _ = writeln!(text, "  {:<16} -> {:<12} {rank}", simplex_label(&tau), simplex_label(&face));
        maps.push(json!({"from": tau.vertices(), "to": face.vertices(), "rank": rank}));
    }
    let _ = writeln!(text, "cosheaf homology");
    let mut homology = Vec::new();
    let top = job.map.codomain_dim().max(0) as usize;
    for p in 0..=top {
        let dim = leray.cosheaf.homology_dim(p);
        let _ = writeln!(text, "  H_{p}  {dim}");
        homology.push(json!({"p": p, "dim": dim}));
    }
    let json = json!({
        "command": "cosheaf",
        "field": job.field.to_string(),
        "q": q,
        "stalks": stalks,
        "maps": maps,
        "homology": homology,
    });
    Ok(Report { text, json, ok: true })
}

fn bar_kind_name(kind: BarKind) -> &'static str {
    match kind {
        BarKind::Closed => "closed",
        BarKind::ClosedOpen => "closed-open",
        BarKind::OpenClosed => "open-closed",
        BarKind::Open => "open",
    }
}

fn report_levelset<F: Field>(field: F, job: &JobSpec) -> Result<Report> {
    let barcodes = leray_barcodes(field, &job.map)?;
    let mut text = format!("level-set barcodes over {}\n", job.field);
    let _ = writeln!(text, "{:>2}  {:<10}  {:>4}", "q", "bar", "mult");
    let mut bars = Vec::new();
    for (q, barcode) in barcodes.iter().enumerate() {
        if job.options.q.is_some_and(|want| want != q) {
            continue;
        }
        for (bar, mult) in barcode.iter() {
            let _ = writeln!(text, "{q:>2}  {:<10}  {mult:>4}", bar.to_string());
            bars.push(json!({
                "q": q,
                "kind": bar_kind_name(bar.kind),
                "a": bar.a,
                "b": bar.b,
                "multiplicity": mult,
            }));
        }
    }
    let _ = writeln!(text, "homology read off the barcodes");
    let mut homology = Vec::new();
    for k in 0..barcodes.len() + 1 {
        if job.options.degree.is_some_and(|want| want != k) {
            continue;
        }
        let dim = homology_from_barcodes(&barcodes, k);
        if k < barcodes.len() || dim > 0 {
            let _ = writeln!(text, "  H_{k}  {dim}");
            homology.push(json!({"k": k, "dim": dim}));
        }
    }
    let json = json!({
        "command": "levelset",
        "field": job.field.to_string(),
        "bars": bars,
        "homology": homology,
    });
    Ok(Report { text, json, ok: true })
}

fn report_reeb<F: Field>(field: F, job: &JobSpec) -> Result<Report> {
    let reeb = reeb_space(&job.map)?;
    let report = reeb_compare(field, &job.map, &reeb);
    let check = report.check();
    let mut text = format!("Reeb space over {}\n", job.field);
    let _ = writeln!(text, "quotient complex: {} simplices", reeb.space().len());
    for sigma in reeb.space().all_simplices() {
        let _ = writeln!(text, "  {}", simplex_label(sigma));
    }
    let _ = writeln!(text, "homology comparison");
    let _ = writeln!(text, "{:>2}  {:>8}  {:>8}", "k", "X", "Reeb");
    let top = report.h_domain.len().max(report.h_reeb.len());
    for k in 0..top {
        let a = report.h_domain.get(k).copied().unwrap_or(0);
        let b = report.h_reeb.get(k).copied().unwrap_or(0);
        let _ = writeln!(text, "{k:>2}  {a:>8}  {b:>8}");
    }
    match &check {
        Ok(()) => {
            let _ = writeln!(text, "connectivity bounds hold");
        }
        Err(msg) => {
            let _ = writeln!(text, "FAIL: {msg}");
        }
    }
    let json = json!({
        "command": "reeb",
        "field": job.field.to_string(),
        "quotient": complex_json(reeb.space()),
        "homology_domain": report.h_domain,
        "homology_reeb": report.h_reeb,
        "ok": check.is_ok(),
    });
    Ok(Report { text, json, ok: check.is_ok() })
}

fn report_verify<F: Field>(field: F, job: &JobSpec) -> Result<Report> {
    let f = &job.map;
    let mut checks: Vec<(String, Result<(), String>)> = Vec::new();

    checks.push(("convergence and d^r circ d^r = 0".into(), verify_convergence(field.clone(), f)));

    // limit page reassembles the homology of the domain
    let reassembly = (|| -> Result<(), String> {
        let dim_x = f.domain().dim();
        for k in 0..=dim_x.max(0) {
            let (total, _) = total_homology(field.clone(), f, k);
            let oracle = f.domain().homology_dim(field.clone(), k as usize);
            if total != oracle {
                return Err(format!(
                    "degree {k}: limit page gives {total}, boundary oracle gives {oracle}"
                ));
            }
        }
        Ok(())
    })();
    checks.push(("limit page reassembles domain homology".into(), reassembly));

    // page two against cosheaf homology, with chain-level identifications
    let page_two = (|| -> Result<(), String> {
        let m = f.codomain_dim();
        let dim_x = f.domain().dim();
        for p in 0..=m.max(0) {
            for q in 0..=(dim_x - p).max(0) {
                verify_page_two(field.clone(), f, p, q)?;
            }
        }
        Ok(())
    })();
    checks.push(("page two is cosheaf homology".into(), page_two));

    // barcode pipeline, when the codomain is a segment
    if LineTriangulation::from_complex(f.codomain()).is_ok() {
        let barcode_check = (|| -> Result<(), String> {
            let line = LineTriangulation::from_complex(f.codomain()).map_err(|e| e.to_string())?;
            let barcodes = leray_barcodes(field.clone(), f).map_err(|e| e.to_string())?;
            for (q, barcode) in barcodes.iter().enumerate() {
                let leray = leray_cosheaf(field.clone(), f, q).map_err(|e| e.to_string())?;
                check_decomposition(&zigzag_of(&leray.cosheaf, &line), barcode)?;
            }
            for k in 0..=barcodes.len() {
                let from_bars = homology_from_barcodes(&barcodes, k);
                let oracle = f.domain().homology_dim(field.clone(), k);
                if from_bars != oracle {
                    return Err(format!(
                        "degree {k}: barcodes give {from_bars}, boundary oracle gives {oracle}"
                    ));
                }
            }
            Ok(())
        })();
        checks.push(("barcodes recover domain homology".into(), barcode_check));
    }

    // Reeb connectivity bounds
    let reeb_check = (|| -> Result<(), String> {
        let reeb = reeb_space(f).map_err(|e| e.to_string())?;
        reeb_compare(field.clone(), f, &reeb).check()
    })();
    checks.push(("Reeb space connectivity bounds".into(), reeb_check));

    let ok = checks.iter().all(|(_, r)| r.is_ok());
    let mut text = format!("verify over {}\n", job.field);
    let mut json_checks = Vec::new();
    for (name, result) in &checks {
        match result {
            Ok(()) => {
                let _ = writeln!(text, "ok    {name}");
                json_checks.push(json!({"name": name, "ok": true}));
            }
            Err(msg) => {
                let _ = writeln!(text, "FAIL  {name}: {msg}");
                json_checks.push(json!({"name": name, "ok": false, "detail": msg}));
            }
        }
    }
    let _ = writeln!(text, "{}", if ok { "all checks passed" } else { "some checks FAILED" });
    let json = json!({
        "command": "verify",
        "field": job.field.to_string(),
        "checks": json_checks,
        "ok": ok,
    });
    Ok(Report { text, json, ok })
}
