//! The subcommands. Each writes a human-readable report to `out` and returns
//! whether every check passed.

use std::io::Write;
use std::path::{Path, PathBuf};

use nlgate_core::algebra::{schmidt_rank, unitarity_residual, ComplexMatrix};
use nlgate_core::catalog::{self, Construction};
use nlgate_core::groups::{validate_factor_system, validate_group};
use nlgate_core::protocol::{information_absence_check, simulate, AbsenceReport, ProtocolTranscript};
use nlgate_core::reps::{span_dimension, validate_irrep_set, validate_projective_rep};
use nlgate_core::unitaries::{controlled_to_group, entangling_strength_estimate, DEFAULT_RESTARTS};
use nlgate_core::ValidationReport;
use serde::Serialize;

use crate::problem::{export_instance, to_matrices, to_matrix, Form, Problem, ProblemFile, ResultsSection, SCHEMA_VERSION};
use crate::CliError;

/// Tolerances and estimator settings after merging defaults, the file's
/// `options` section and command-line flags (flags win).
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub tolerance: f64,
    pub rank_tol: f64,
    pub seed: u64,
    pub restarts: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Self { tolerance: 1e-9, rank_tol: 1e-8, seed: 0, restarts: DEFAULT_RESTARTS }
    }
}

/// Command-line overrides; `None` leaves the file or default value in place.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub tolerance: Option<f64>,
    pub rank_tol: Option<f64>,
    pub seed: Option<u64>,
    pub restarts: Option<usize>,
}

impl Settings {
    pub fn resolve(file: Option<&ProblemFile>, cli: &Overrides) -> Self {
        let d = Settings::default();
        let o = file.and_then(|f| f.options.clone()).unwrap_or_default();
        Self {
            tolerance: cli.tolerance.or(o.tolerance).unwrap_or(d.tolerance),
            rank_tol: cli.rank_tol.or(o.rank_tol).unwrap_or(d.rank_tol),
            seed: cli.seed.or(o.seed).unwrap_or(d.seed),
            restarts: cli.restarts.or(o.restarts).unwrap_or(d.restarts),
        }
    }
}

/// Where a command's problem comes from.
#[derive(Clone, Debug)]
pub enum Source {
    File(PathBuf),
    Catalog { name: String, dim: Option<usize> },
}

impl Source {
    pub fn load(&self) -> Result<ProblemFile, CliError> {
        match self {
            Source::File(p) => ProblemFile::read(p),
            Source::Catalog { name, dim } => {
                let entry = catalog::lookup(name).map_err(|e| CliError::core("--catalog", e))?;
                let inst = entry.instance(*dim).map_err(|e| CliError::core("--dim", e))?;
                Ok(export_instance(entry.name, inst))
            }
        }
    }
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.display().to_string(), source }
}

fn stdout_err(source: std::io::Error) -> CliError {
    CliError::Io { path: "<stdout>".into(), source }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("reports always serialize");
    std::fs::write(path, text + "\n").map_err(io(path))
}

fn line(out: &mut dyn Write, ok: bool, name: &str, detail: impl std::fmt::Display) -> Result<(), CliError> {
    writeln!(out, "{} {name}: {detail}", if ok { "ok  " } else { "FAIL" }).map_err(stdout_err)
}

fn report_line(out: &mut dyn Write, name: &str, r: &ValidationReport) -> Result<bool, CliError> {
    let ok = r.is_valid();
    if ok {
        line(out, true, name, format_args!("worst residual {:.2e}", r.worst_residual))?;
    } else {
        line(out, false, name, r)?;
    }
    Ok(ok)
}

fn residual_line(out: &mut dyn Write, name: &str, residual: f64, tol: f64) -> Result<bool, CliError> {
    let ok = residual < tol;
    line(out, ok, name, format_args!("residual {residual:.2e} (tolerance {tol:.0e})"))?;
    Ok(ok)
}

/// Runs every structural check that applies to the problem.
pub fn validate(pf: ProblemFile, s: &Settings, out: &mut dyn Write) -> Result<bool, CliError> {
    let problem = Problem::from_file(pf)?;
    let mut ok = true;
    if let Some(g) = &problem.group {
        let r = validate_group(g);
        if !report_line(out, "group axioms", &r)? {
            // later checks multiply through the table
            return Ok(false);
        }
        if let Some(fs) = &problem.factors {
            ok &= report_line(out, "factor system", &validate_factor_system(g, fs))?;
        }
    }
    if let Some(set) = &problem.irreps {
        ok &= report_line(out, "irreps", &validate_irrep_set(set))?;
    }
    match &problem.form {
        Form::Group { rep, .. } => ok &= report_line(out, "representation U", &validate_projective_rep(rep))?,
        Form::Double { rep_a, rep_b, .. } | Form::RBlocks { rep_a, rep_b, .. } => {
            ok &= report_line(out, "representation U", &validate_projective_rep(rep_a))?;
            ok &= report_line(out, "representation V", &validate_projective_rep(rep_b))?;
        }
        Form::Controlled { .. } | Form::QBlocks { .. } => {}
    }
    if !ok {
        return Ok(false);
    }
    let c = match problem.construction() {
        Ok(c) => c,
        Err(CliError::Verification(m)) => {
            line(out, false, problem.form.section_name(), m)?;
            return Ok(false);
        }
        Err(e) => return Err(e),
    };
    ok &= form_checks(&c, s, out)?;
    if let Some(want) = problem.expected_rank() {
        let u = c.assembled().map_err(|e| CliError::core("assembly", e))?;
        let got = schmidt_rank(&u, c.d_a(), c.d_b(), s.rank_tol).map_err(|e| CliError::core("assembly", e))?;
        let good = got == want;
        line(out, good, "Schmidt rank", format_args!("{got} (expected {want})"))?;
        ok &= good;
    }
    writeln!(out, "{}", if ok { "valid" } else { "invalid" }).map_err(stdout_err)?;
    Ok(ok)
}

fn form_checks(c: &Construction, s: &Settings, out: &mut dyn Write) -> Result<bool, CliError> {
    let u = c.assembled().map_err(|e| CliError::core("assembly", e))?;
    let mut ok = true;
    match c {
        Construction::Group(g) => {
            ok &= residual_line(out, "W condition", g.w_condition(), s.tolerance)?;
            ok &= residual_line(out, "M unitarity", unitarity_residual(&g.m_operator()).unwrap_or(f64::INFINITY), s.tolerance)?;
        }
        Construction::Double(_) => {
            ok &= residual_line(out, "c condition", c.condition_residual(), s.tolerance)?;
        }
        Construction::Controlled(_) => line(out, true, "controlled form", "projectors and unitaries are consistent")?,
    }
    ok &= residual_line(out, "U unitarity", unitarity_residual(&u).unwrap_or(f64::INFINITY), s.tolerance)?;
    Ok(ok)
}

/// `(M, optional C, W family, span dimension)` for any construction.
fn synthesis_parts(c: &Construction) -> Result<(ComplexMatrix, Option<ComplexMatrix>, Vec<ComplexMatrix>, usize), CliError> {
    let err = |e| CliError::core("synthesis", e);
    Ok(match c {
        Construction::Group(g) => (g.m_operator(), None, g.w().matrices().to_vec(), span_dimension(g.rep())),
        Construction::Double(d) => (d.factorized_m(), Some(d.c_operator()), d.w_family().into_matrices(), span_dimension(d.rep_a())),
        Construction::Controlled(cu) => {
            let g = controlled_to_group(cu).map_err(err)?;
            (g.m_operator(), None, g.w().matrices().to_vec(), span_dimension(g.rep()))
        }
    })
}

/// Assembles the unitary and its protocol operators. With `json_out`, writes
/// the problem back with a `results` section.
pub fn synth(
    pf: ProblemFile,
    s: &Settings,
    strength: bool,
    json_out: Option<&Path>,
    out: &mut dyn Write,
) -> Result<bool, CliError> {
    let problem = Problem::from_file(pf)?;
    let c = problem.construction()?;
    let err = |e| CliError::core("synthesis", e);
    let u = c.assembled().map_err(err)?;
    let (m, cm, w, span) = synthesis_parts(&c)?;
    let rank = schmidt_rank(&u, c.d_a(), c.d_b(), s.rank_tol).map_err(err)?;
    let residual = unitarity_residual(&u).map_err(err)?;
    let condition = c.condition_residual();
    let e = if strength { Some(entangling_strength_estimate(&u, c.d_a(), c.d_b(), s.restarts, s.seed).map_err(err)?) } else { None };

    let w_out = |o: &mut dyn Write| -> std::io::Result<()> {
        if let Some(n) = &problem.file.name {
            writeln!(o, "entry: {n}")?;
        }
        writeln!(o, "form: {} (d_A = {}, d_B = {}, |G| = {})", c.kind(), c.d_a(), c.d_b(), c.group_order())?;
        writeln!(o, "Schmidt rank: {rank}")?;
        writeln!(o, "span dimension: {span}")?;
        writeln!(o, "unitarity residual: {residual:.2e}")?;
        writeln!(o, "condition residual: {condition:.2e}")?;
        writeln!(o, "M: {0}x{0}, unitarity residual {1:.2e}", m.rows(), unitarity_residual(&m).unwrap_or(f64::INFINITY))?;
        if let Some(cm) = &cm {
            writeln!(o, "C: {0}x{0}, unitarity residual {1:.2e}", cm.rows(), unitarity_residual(cm).unwrap_or(f64::INFINITY))?;
        }
        if let Some(e) = e {
            writeln!(o, "entangling strength (lower estimate): {e:.6} ebits, resource log2|G| = {:.6}", (c.group_order() as f64).log2())?;
        }
        Ok(())
    };
    w_out(out).map_err(stdout_err)?;

    let mut ok = residual < s.tolerance && condition < s.tolerance;
    if let Some(want) = problem.expected_rank() {
        let good = rank == want;
        writeln!(out, "expected Schmidt rank {want}: {}", if good { "match" } else { "MISMATCH" }).map_err(stdout_err)?;
        ok &= good;
    }
    if let Some(path) = json_out {
        let mut file = problem.file.clone();
        file.results = Some(ResultsSection {
            u: to_matrix(&u),
            m: to_matrix(&m),
            c: cm.as_ref().map(to_matrix),
            w: to_matrices(&w),
            schmidt_rank: rank,
            span_dimension: span,
            unitarity_residual: residual,
            condition_residual: condition,
            entangling_strength: e,
        });
        write_json(path, &file)?;
    }
    Ok(ok)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BranchRecord {
    outcome_a: usize,
    outcome_b: usize,
    residual: f64,
    phase: [f64; 2],
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TranscriptSummary {
    passed: bool,
    branch_count: usize,
    worst_residual: f64,
    probability_spread: f64,
    isometry_residual: f64,
    proportionality_residual: f64,
    completeness_residual: f64,
    target_unitarity_residual: f64,
    classical_bits: f64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TranscriptExport {
    version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    variant: String,
    group_order: usize,
    branches: Vec<BranchRecord>,
    summary: TranscriptSummary,
}

fn absence_passed(r: &AbsenceReport, tol: f64) -> bool {
    r.isometry_residual < tol && r.proportionality_residual < tol
}

/// Runs every measurement branch and reports whether the ancilla record is
/// independent of the input.
pub fn simulate_cmd(pf: ProblemFile, s: &Settings, json_out: Option<&Path>, out: &mut dyn Write) -> Result<bool, CliError> {
    let problem = Problem::from_file(pf)?;
    let c = problem.construction()?;
    let err = |e| CliError::core("simulation", e);
    let t: ProtocolTranscript = simulate(&c.protocol().map_err(err)?, None).map_err(err)?;
    let r = information_absence_check(&t);
    let passed = absence_passed(&r, s.tolerance);
    let n = t.group_order as f64;
    let w = |o: &mut dyn Write| -> std::io::Result<()> {
        if let Some(name) = &problem.file.name {
            writeln!(o, "entry: {name}")?;
        }
        writeln!(o, "protocol: {} (resource Schmidt rank {}, {} classical bits)", t.variant, t.group_order, 2.0 * n.log2())?;
        writeln!(o, "branches: {}", r.branch_count)?;
        writeln!(o, "worst Kraus residual: {:.2e}", r.worst_kraus_residual)?;
        writeln!(o, "branch probability spread: {:.2e}", r.probability_spread)?;
        writeln!(o, "isometry residual: {:.2e}", r.isometry_residual)?;
        writeln!(o, "proportionality residual: {:.2e}", r.proportionality_residual)?;
        writeln!(o, "completeness residual: {:.2e}", r.completeness_residual)?;
        writeln!(o, "target unitarity residual: {:.2e}", t.target_residual)?;
        writeln!(o, "information absence: {}", if passed { "PASS" } else { "FAIL" })
    };
    w(out).map_err(stdout_err)?;
    if let Some(path) = json_out {
        let export = TranscriptExport {
            version: SCHEMA_VERSION,
            name: problem.file.name.clone(),
            variant: t.variant.to_string(),
            group_order: t.group_order,
            branches: t
                .branches
                .iter()
                .map(|b| BranchRecord { outcome_a: b.outcome_a, outcome_b: b.outcome_b, residual: b.residual, phase: [b.phase.re, b.phase.im] })
                .collect(),
            summary: TranscriptSummary {
                passed,
                branch_count: r.branch_count,
                worst_residual: r.worst_kraus_residual,
                probability_spread: r.probability_spread,
                isometry_residual: r.isometry_residual,
                proportionality_residual: r.proportionality_residual,
                completeness_residual: r.completeness_residual,
                target_unitarity_residual: t.target_residual,
                classical_bits: 2.0 * n.log2(),
            },
        };
        write_json(path, &export)?;
    }
    Ok(passed)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ReportRow {
    name: String,
    d_a: usize,
    d_b: usize,
    group_order: usize,
    schmidt_rank: usize,
    expected_rank: usize,
    matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    entangling_strength: Option<f64>,
}

/// Recomputes the Schmidt rank of catalog entries (`"all"` or one name) and
/// compares each against its declared value.
pub fn report(which: &str, s: &Settings, strength: bool, json_out: Option<&Path>, out: &mut dyn Write) -> Result<bool, CliError> {
    let names: Vec<&str> = if which == "all" { catalog::list().to_vec() } else { vec![which] };
    let mut rows = Vec::new();
    for name in names {
        let entry = catalog::lookup(name).map_err(|e| CliError::core("--catalog", e))?;
        for inst in &entry.instances {
            let c = &inst.construction;
            let err = |e| CliError::core(name, e);
            let u = c.assembled().map_err(err)?;
            let rank = schmidt_rank(&u, c.d_a(), c.d_b(), s.rank_tol).map_err(err)?;
            let e = if strength { Some(entangling_strength_estimate(&u, c.d_a(), c.d_b(), s.restarts, s.seed).map_err(err)?) } else { None };
            rows.push(ReportRow {
                name: entry.name.to_string(),
                d_a: c.d_a(),
                d_b: c.d_b(),
                group_order: c.group_order(),
                schmidt_rank: rank,
                expected_rank: inst.expected_rank,
                matches: rank == inst.expected_rank,
                entangling_strength: e,
            });
        }
    }

    let w = |o: &mut dyn Write| -> std::io::Result<()> {
        let table: Vec<&ReportRow> = rows.iter().filter(|r| r.name.starts_with("s3-table1-row")).collect();
        if !table.is_empty() {
            writeln!(o, "S3 double-form coefficient rows")?;
            writeln!(o, "{:<16} {:>5} {:>5}  status", "row", "SR3", "SR4")?;
            let mut names: Vec<&str> = table.iter().map(|r| r.name.as_str()).collect();
            names.dedup();
            for n in names {
                let find = |d: usize| table.iter().find(|r| r.name == n && r.d_a == d);
                let cell = |r: Option<&&ReportRow>| r.map_or("-".to_string(), |r| r.schmidt_rank.to_string());
                let ok = table.iter().filter(|r| r.name == n).all(|r| r.matches);
                writeln!(o, "{:<16} {:>5} {:>5}  {}", n, cell(find(3)), cell(find(4)), if ok { "match" } else { "MISMATCH" })?;
            }
            writeln!(o)?;
        }
        let others: Vec<&ReportRow> = rows.iter().filter(|r| !r.name.starts_with("s3-table1-row")).collect();
        if !others.is_empty() {
            writeln!(o, "{:<16} {:>4} {:>4} {:>4} {:>5} {:>8}  status", "entry", "d_A", "d_B", "|G|", "rank", "expected")?;
            for r in others {
                write!(
                    o,
                    "{:<16} {:>4} {:>4} {:>4} {:>5} {:>8}  {}",
                    r.name,
                    r.d_a,
                    r.d_b,
                    r.group_order,
                    r.schmidt_rank,
                    r.expected_rank,
                    if r.matches { "match" } else { "MISMATCH" }
                )?;
                if let Some(e) = r.entangling_strength {
                    write!(o, "  strength {e:.4}")?;
                }
                writeln!(o)?;
            }
        }
        Ok(())
    };
    w(out).map_err(stdout_err)?;
    if let Some(path) = json_out {
        write_json(path, &rows)?;
    }
    Ok(rows.iter().all(|r| r.matches))
}

/// Writes a catalog entry as a problem file to `path`, or to `out`.
pub fn export(name: &str, dim: Option<usize>, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let pf = Source::Catalog { name: name.to_string(), dim }.load()?;
    match path {
        Some(p) => std::fs::write(p, pf.to_json() + "\n").map_err(io(p)),
        None => writeln!(out, "{}", pf.to_json()).map_err(stdout_err),
    }
}

pub fn list(out: &mut dyn Write) -> Result<(), CliError> {
    for name in catalog::list() {
        let e = catalog::lookup(name).map_err(|e| CliError::core(*name, e))?;
        let dims: Vec<String> = e.instances.iter().map(|i| format!("{}x{}", i.construction.d_a(), i.construction.d_b())).collect();
        writeln!(out, "{:<16} {:<10} {}", name, dims.join(","), e.summary).map_err(stdout_err)?;
    }
    Ok(())
}
