//! Command implementations: data-file resolution, the four subcommands,
//! and the mapping from outcomes to process exit codes.

use std::fmt;
use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use maxsub_core::matrixcheck::{
    embed, lie_normalizer_dim, verify_component_representative, verify_z2_witness,
};
use maxsub_core::normalizer::{maximal_subgroups, ClassicalGroup, GroupKind, MaximalSubgroupList};
use maxsub_core::primsub::{
    algebra_label, primitive_subalgebras, z2_invariance, AlgebraKind, ClassicalAlgebra,
    ExceptionFilter, ExceptionTable, PrimitiveList, SubalgebraDescriptor, Z2Status,
};
use rayon::prelude::*;

use crate::golden::{AlgebraTable, GroupTable};
use crate::model::{
    engine_algebra_rows, engine_group_rows, family_of, list_document, primitive_document,
    VerifyCheckRow, VerifyDocument, SCHEMA,
};
use crate::render::{
    diff_algebra_rows, diff_group_rows, render_list_text, render_primitive_text, DiffReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest ambient size the verify sweep accepts; the exact linear
/// algebra beyond this point takes long enough that a bigger sweep
/// should be a deliberate batch job, not a CLI invocation.
pub const VERIFY_N_CAP: usize = 24;

/// Errors that stop a command before it produces a report: bad arguments
/// or unreadable/unparseable data files. Both map to exit status 2,
/// keeping them distinct from a completed run that found differences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(m) => write!(f, "data error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Rendered output of one completed command plus its verdict.
#[derive(Clone, Debug)]
pub struct CmdOutcome {
    pub text: String,
    pub ok: bool,
}

impl CmdOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.ok {
            EXIT_OK
        } else {
            EXIT_FAILED
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Where the on-disk tables live. The base directory comes from the
/// `MAXSUB_DATA_DIR` environment variable (default `./data`); individual
/// files can be overridden by flags.
#[derive(Clone, Debug)]
pub struct DataPaths {
    pub data_dir: PathBuf,
    pub exceptions_override: Option<PathBuf>,
    pub golden_override: Option<PathBuf>,
}

impl DataPaths {
    pub fn new(
        data_dir: Option<PathBuf>,
        exceptions: Option<PathBuf>,
        golden: Option<PathBuf>,
    ) -> Self {
        DataPaths {
            data_dir: data_dir.unwrap_or_else(|| PathBuf::from("data")),
            exceptions_override: exceptions,
            golden_override: golden,
        }
    }

    pub fn golden_dir(&self) -> PathBuf {
        self.golden_override
            .clone()
            .unwrap_or_else(|| self.data_dir.join("golden"))
    }

    /// Loads the exception table. An explicitly given path must exist and
    /// parse; the default path may be absent, which downgrades the filter
    /// and leaves the simple candidate stream unfiltered.
    pub fn exception_filter(&self) -> Result<ExceptionFilter, CliError> {
        let (path, explicit) = match &self.exceptions_override {
            Some(p) => (p.clone(), true),
            None => (self.data_dir.join("exceptions").join("dynkin18.txt"), false),
        };
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if !explicit && e.kind() == ErrorKind::NotFound => {
                return Ok(ExceptionFilter::Absent);
            }
            Err(e) => {
                return Err(CliError::Data(format!(
                    "cannot read exception table {}: {e}",
                    path.display()
                )));
            }
        };
        match ExceptionTable::parse(&text) {
            Ok(t) => Ok(ExceptionFilter::Loaded(t)),
            Err(e) => Err(CliError::Data(format!("{}: {e}", path.display()))),
        }
    }
}

fn selected_kinds(choice: Option<GroupKind>) -> Vec<GroupKind> {
    match choice {
        Some(k) => vec![k],
        None => vec![GroupKind::SU, GroupKind::SO, GroupKind::Sp],
    }
}

fn algebra_kind(kind: GroupKind) -> AlgebraKind {
    match kind {
        GroupKind::SU => AlgebraKind::Su,
        GroupKind::SO => AlgebraKind::So,
        GroupKind::Sp => AlgebraKind::Sp,
    }
}

pub fn kind_slug(kind: GroupKind) -> &'static str {
    match kind {
        GroupKind::SU => "su",
        GroupKind::SO => "so",
        GroupKind::Sp => "sp",
    }
}

/// Ambient sizes of one classical family up to `n_max`, matching the
/// constructor bounds: SU from 2, SO from 5, Sp even from 4.
pub fn family_sizes(kind: GroupKind, n_max: usize) -> Vec<usize> {
    let (lo, step) = match kind {
        GroupKind::SU => (2, 1),
        GroupKind::SO => (5, 1),
        GroupKind::Sp => (4, 2),
    };
    (lo..=n_max).step_by(step).collect()
}

fn to_json<T: serde::Serialize>(doc: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(doc)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Data(format!("serialization failed: {e}")))
}

// ---------------------------------------------------------------------------
// list / primitive

pub fn cmd_list(
    choice: Option<GroupKind>,
    n: usize,
    format: Format,
    paths: &DataPaths,
) -> Result<CmdOutcome, CliError> {
    let filter = paths.exception_filter()?;
    let mut lists: Vec<MaximalSubgroupList> = Vec::new();
    for kind in selected_kinds(choice) {
        let g = match ClassicalGroup::new(kind, n) {
            Ok(g) => g,
            Err(e) => {
                if choice.is_some() {
                    return Err(CliError::Usage(e.to_string()));
                }
                continue;
            }
        };
        let list = maximal_subgroups(g, &filter).map_err(|e| CliError::Data(e.to_string()))?;
        lists.push(list);
    }
    if lists.is_empty() {
        return Err(CliError::Usage(format!(
            "no classical group has ambient size n = {n}"
        )));
    }
    let text = match format {
        Format::Text => render_list_text(&lists),
        Format::Json => to_json(&list_document(&lists))?,
    };
    Ok(CmdOutcome { text, ok: true })
}

pub fn cmd_primitive(
    choice: Option<GroupKind>,
    n: usize,
    format: Format,
    paths: &DataPaths,
) -> Result<CmdOutcome, CliError> {
    let filter = paths.exception_filter()?;
    let mut lists: Vec<PrimitiveList> = Vec::new();
    for kind in selected_kinds(choice) {
        let alg = match ClassicalAlgebra::new(algebra_kind(kind), n) {
            Ok(a) => a,
            Err(e) => {
                if choice.is_some() {
                    return Err(CliError::Usage(e.to_string()));
                }
                continue;
            }
        };
        lists.push(primitive_subalgebras(alg, &filter));
    }
    if lists.is_empty() {
        return Err(CliError::Usage(format!(
            "no classical algebra has ambient size n = {n}"
        )));
    }
    let text = match format {
        Format::Text => render_primitive_text(&lists),
        Format::Json => to_json(&primitive_document(&lists))?,
    };
    Ok(CmdOutcome { text, ok: true })
}

// ---------------------------------------------------------------------------
// verify

/// One verification check outcome.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub group: String,
    pub subalgebra: String,
    pub check: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// The matrix-level certificates for one candidate: the embedded basis is
/// self-normalizing, the claimed component representatives satisfy their
/// relations, and for even orthogonal ambients the orientation-reversing
/// witness search agrees with the combinatorial orientation rule.
fn descriptor_checks(g: ClassicalGroup, desc: &SubalgebraDescriptor) -> Vec<CheckResult> {
    let alg = g.algebra();
    let label = algebra_label(desc, alg);
    let make = |check: &'static str, pass: bool, detail: String| CheckResult {
        group: g.to_string(),
        subalgebra: label.clone(),
        check,
        pass,
        detail,
    };
    let mut out = Vec::new();
    match embed(desc, g) {
        Err(e) => out.push(make("embed", false, e.to_string())),
        Ok(mb) => {
            let nd = lie_normalizer_dim(&mb);
            let pass = nd == mb.dim();
            let detail = if pass {
                String::new()
            } else {
                format!("normalizer dim {nd}, subalgebra dim {}", mb.dim())
            };
            out.push(make("self_normalizing", pass, detail));
        }
    }
    match verify_component_representative(desc, g) {
        Ok(true) => out.push(make("component_representative", true, String::new())),
        Ok(false) => out.push(make(
            "component_representative",
            false,
            String::from("claimed representative fails its defining relations"),
        )),
        Err(e) => out.push(make("component_representative", false, e.to_string())),
    }
    if g.kind() == GroupKind::SO && g.n() % 2 == 0 {
        let expect = z2_invariance(desc, alg) == Z2Status::Z2Primitive;
        match verify_z2_witness(desc, g) {
            Ok(found) => {
                let pass = found == expect;
                let detail = if pass {
                    String::new()
                } else {
                    format!("witness search found={found}, combinatorial rule says {expect}")
                };
                out.push(make("z2_witness", pass, detail));
            }
            Err(e) => out.push(make("z2_witness", false, e.to_string())),
        }
    }
    out
}

/// Runs every check for every non-simple candidate of the selected
/// families up to `n_max`. Workers fan out per candidate up to `jobs`
/// threads (0 means the library default); results keep task order.
pub fn verify_checks(
    choice: Option<GroupKind>,
    n_max: usize,
    jobs: usize,
    filter: &ExceptionFilter,
) -> Result<Vec<CheckResult>, CliError> {
    let mut tasks: Vec<(ClassicalGroup, SubalgebraDescriptor)> = Vec::new();
    for kind in selected_kinds(choice) {
        for n in family_sizes(kind, n_max) {
            let g = ClassicalGroup::new(kind, n).expect("family_sizes stays in bounds");
            let list = primitive_subalgebras(g.algebra(), filter);
            for d in list.descriptors {
                if family_of(&d).is_some() {
                    tasks.push((g, d));
                }
            }
        }
    }
    let run = || {
        tasks
            .par_iter()
            .flat_map_iter(|(g, d)| descriptor_checks(*g, d))
            .collect::<Vec<_>>()
    };
    if jobs == 0 {
        return Ok(run());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Data(format!("cannot build worker pool: {e}")))?;
    Ok(pool.install(run))
}

fn render_verify_text(checks: &[CheckResult], failures: usize) -> String {
    let mut out = String::new();
    for c in checks {
        let status = if c.pass { "ok  " } else { "FAIL" };
        out.push_str(&format!(
            "{status} {} {} [{}]",
            c.group, c.subalgebra, c.check
        ));
        if !c.detail.is_empty() {
            out.push_str(&format!(": {}", c.detail));
        }
        out.push('\n');
    }
    if failures == 0 {
        out.push_str(&format!("verify: all {} checks passed\n", checks.len()));
    } else {
        out.push_str(&format!(
            "verify: {failures} of {} checks failed\n",
            checks.len()
        ));
    }
    out
}

pub fn cmd_verify(
    choice: Option<GroupKind>,
    n_max: usize,
    jobs: usize,
    format: Format,
    paths: &DataPaths,
) -> Result<CmdOutcome, CliError> {
    if n_max > VERIFY_N_CAP {
        return Err(CliError::Usage(format!(
            "verify sweep is capped at n = {VERIFY_N_CAP}, got {n_max}"
        )));
    }
    let filter = paths.exception_filter()?;
    let checks = verify_checks(choice, n_max, jobs, &filter)?;
    let failures = checks.iter().filter(|c| !c.pass).count();
    let text = match format {
        Format::Text => render_verify_text(&checks, failures),
        Format::Json => {
            let doc = VerifyDocument {
                schema: SCHEMA.to_string(),
                command: "verify".to_string(),
                checks: checks
                    .iter()
                    .map(|c| VerifyCheckRow {
                        group: c.group.clone(),
                        subalgebra: c.subalgebra.clone(),
                        check: c.check.to_string(),
                        pass: c.pass,
                        detail: c.detail.clone(),
                    })
                    .collect(),
                failures,
            };
            to_json(&doc)?
        }
    };
    Ok(CmdOutcome {
        text,
        ok: failures == 0,
    })
}

// ---------------------------------------------------------------------------
// golden tables

fn read_table_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| {
        CliError::Data(format!("cannot read golden table {}: {e}", path.display()))
    })
}

pub fn load_group_table(dir: &Path, kind: GroupKind) -> Result<GroupTable, CliError> {
    let path = dir.join(format!("{}_groups.txt", kind_slug(kind)));
    let text = read_table_file(&path)?;
    GroupTable::parse(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

pub fn load_algebra_table(dir: &Path, kind: GroupKind) -> Result<AlgebraTable, CliError> {
    let path = dir.join(format!("{}_algebras.txt", kind_slug(kind)));
    let text = read_table_file(&path)?;
    AlgebraTable::parse(&text, kind == GroupKind::SO)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// Stored vs computed subgroup tables for one family, across all sizes up
/// to `n_max`.
pub fn golden_groups_report(
    kind: GroupKind,
    n_max: usize,
    dir: &Path,
    filter: &ExceptionFilter,
) -> Result<DiffReport, CliError> {
    let table = load_group_table(dir, kind)?;
    let mut report = DiffReport::default();
    for n in family_sizes(kind, n_max) {
        let golden = table
            .instantiate(n)
            .map_err(|e| CliError::Data(format!("{}_groups at n = {n}: {e}", kind_slug(kind))))?;
        let g = ClassicalGroup::new(kind, n).expect("family_sizes stays in bounds");
        let list = maximal_subgroups(g, filter).map_err(|e| CliError::Data(e.to_string()))?;
        let engine = engine_group_rows(&list);
        report.extend(diff_group_rows(&format!("{g} groups"), &golden, &engine));
    }
    Ok(report)
}

/// Stored vs computed subalgebra tables for one family.
pub fn golden_algebras_report(
    kind: GroupKind,
    n_max: usize,
    dir: &Path,
    filter: &ExceptionFilter,
) -> Result<DiffReport, CliError> {
    let table = load_algebra_table(dir, kind)?;
    let mut report = DiffReport::default();
    for n in family_sizes(kind, n_max) {
        let golden = table.instantiate(n).map_err(|e| {
            CliError::Data(format!("{}_algebras at n = {n}: {e}", kind_slug(kind)))
        })?;
        let alg = ClassicalAlgebra::new(algebra_kind(kind), n).expect("sizes stay in bounds");
        let list = primitive_subalgebras(alg, filter);
        let engine = engine_algebra_rows(&list);
        report.extend(diff_algebra_rows(
            &format!("{alg} algebras"),
            &golden,
            &engine,
        ));
    }
    Ok(report)
}

pub fn cmd_golden_diff(
    choice: Option<GroupKind>,
    n_max: usize,
    paths: &DataPaths,
) -> Result<CmdOutcome, CliError> {
    let filter = paths.exception_filter()?;
    let dir = paths.golden_dir();
    let mut report = DiffReport::default();
    for kind in selected_kinds(choice) {
        report.extend(golden_groups_report(kind, n_max, &dir, &filter)?);
        report.extend(golden_algebras_report(kind, n_max, &dir, &filter)?);
    }
    let mut text = String::new();
    for line in &report.lines {
        text.push_str(line);
        text.push('\n');
    }
    if report.is_empty() {
        text.push_str(&format!(
            "golden tables match ({} rows checked)\n",
            report.rows_checked
        ));
    } else {
        text.push_str(&format!(
            "golden diff: {} divergences over {} table rows\n",
            report.lines.len(),
            report.rows_checked
        ));
    }
    Ok(CmdOutcome {
        text,
        ok: report.is_empty(),
    })
}
