//! Command implementations behind the `qbcr` binary.
//!
//! Each command renders a deterministic report: mass rows are sorted by
//! rendered proposition name and rationals are printed in lowest terms.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::batch::map_items;
use crate::decomposition::DecompositionContext;
use crate::error::Error;
use crate::lattice::Proposition;
use crate::mass::{Bba, Diagnostic, Qbba, QuasiNormStatus};
use crate::rules::{apply_rule, dempster_combine, Prior, Revised, Rule};
use crate::scenario::{Scenario, ScenarioError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_IMPOSSIBLE: i32 = 2;
pub const EXIT_CONFLICT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Tsv,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub format: Format,
    /// Append a six-place decimal column to rational masses.
    pub decimal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Condition,
    Decompose,
    Check,
}

/// A failed command: message for stderr plus process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        let code = e.lattice_error().map_or(EXIT_INVALID, exit_code);
        Failure { code, message: e.to_string() }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ImpossibleProblem => EXIT_IMPOSSIBLE,
        Error::TotalConflict => EXIT_CONFLICT,
        _ => EXIT_INVALID,
    }
}

/// Collected output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl From<Result<String, Failure>> for Outcome {
    fn from(r: Result<String, Failure>) -> Self {
        match r {
            Ok(stdout) => Outcome { stdout, stderr: String::new(), code: EXIT_OK },
            Err(f) => Outcome { stdout: String::new(), stderr: format!("error: {}\n", f.message), code: f.code },
        }
    }
}

/// `x` rounded half-to-even at six decimal places.
pub fn decimal6(x: &BigRational) -> String {
    let scale = BigInt::from(1_000_000);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let floor = scaled.floor();
    let frac = &scaled - &floor;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut units = floor.to_integer();
    if frac > half || (frac == half && units.is_odd()) {
        units += 1;
    }
    let (int, rem) = units.div_rem(&scale);
    let sign = if x.is_negative() && !units.is_zero() { "-" } else { "" };
    format!("{sign}{int}.{rem:06}")
}

fn rational(x: &BigRational) -> String {
    x.to_string()
}

struct Row {
    name: String,
    hex: String,
    value: String,
}

fn rows_sorted(mut rows: Vec<Row>) -> Vec<Row> {
    rows.sort_by(|a, b| a.name.cmp(&b.name).then_with(|| a.hex.cmp(&b.hex)));
    rows
}

fn bba_rows(m: &Bba, opts: Options) -> Vec<Row> {
    rows_sorted(
        m.focals()
            .map(|(p, v)| {
                let mut value = rational(v);
                if opts.decimal && opts.format == Format::Text {
                    let _ = write!(value, " ({})", decimal6(v));
                }
                Row { name: p.render(), hex: p.to_hex(), value }
            })
            .collect(),
    )
}

fn qbba_rows(qm: &Qbba) -> Vec<Row> {
    rows_sorted(
        qm.focals()
            .map(|(p, l)| Row { name: p.render(), hex: p.to_hex(), value: l.to_string() })
            .collect(),
    )
}

fn write_rows(out: &mut String, rows: &[Row], format: Format) {
    for row in rows {
        match format {
            Format::Text => {
                let _ = writeln!(out, "{} = {}", row.name, row.value);
            }
            Format::Tsv => {
                let _ = writeln!(out, "{}\t{}\t{}", row.hex, row.name, row.value);
            }
        }
    }
}

fn quasi_norm_line(status: QuasiNormStatus, max: u32) -> String {
    let raw = status.raw_index_sum;
    if status.exact {
        format!("quasi-normalized: exact ({raw}/{max})")
    } else if status.clamped_ok {
        format!("quasi-normalized: clamped (raw {raw}/{max})")
    } else {
        format!("quasi-normalized: no (raw {raw}/{max})")
    }
}

fn write_diagnostics(out: &mut String, notes: &[Diagnostic]) {
    for note in notes {
        let _ = writeln!(out, "{note}");
    }
}

fn prior_diagnostics(prior: &Prior) -> Result<Vec<Diagnostic>, Failure> {
    Ok(match prior {
        Prior::Quantitative(m) => m.validate()?,
        Prior::Qualitative(qm) => qm.validate()?,
    })
}

fn event_context(s: &Scenario) -> Result<DecompositionContext, Failure> {
    let cond = s
        .condition
        .as_ref()
        .ok_or_else(|| Failure { code: EXIT_INVALID, message: "scenario has no `condition:`".into() })?;
    Ok(DecompositionContext::from_expression(&s.model, &cond.expression)?)
}

fn class_rows(s: &Scenario, ctx: &DecompositionContext) -> Result<Vec<Row>, Failure> {
    let focals: Vec<Proposition> = s.prior.focal_propositions();
    let mut rows = Vec::with_capacity(focals.len());
    for p in focals {
        let class = ctx.classify(&p)?;
        rows.push(Row { name: p.render(), hex: p.to_hex(), value: class.to_string() });
    }
    Ok(rows_sorted(rows))
}

/// `condition`: applies the scenario's rule to its prior.
pub fn condition_report(s: &Scenario, opts: Options) -> Result<String, Failure> {
    let rule = s
        .rule
        .ok_or_else(|| Failure { code: EXIT_INVALID, message: "scenario has no `rule:`".into() })?;
    let ctx = event_context(s)?;
    let mut notes = prior_diagnostics(&s.prior)?;
    let event = ctx.event();
    let revised = apply_rule(rule, &s.prior, event)?;

    let mut out = String::new();
    if opts.format == Format::Tsv {
        match &revised {
            Revised::Quantitative(m) => write_rows(&mut out, &bba_rows(m, opts), Format::Tsv),
            Revised::Qualitative(r) => write_rows(&mut out, &qbba_rows(&r.qm), Format::Tsv),
        }
        return Ok(out);
    }

    let _ = writeln!(out, "rule: {rule}");
    let source = s.condition.as_ref().map_or("", |c| c.expression.source.trim());
    let rendered = event.render();
    if source == rendered {
        let _ = writeln!(out, "condition: {source}");
    } else {
        let _ = writeln!(out, "condition: {source} = {rendered}");
    }
    let _ = writeln!(out, "conditioned masses:");
    match &revised {
        Revised::Quantitative(m) => {
            write_rows(&mut out, &bba_rows(m, opts), Format::Text);
            let _ = writeln!(out, "sum: {}", rational(&m.total()));
            if rule == Rule::Scr {
                if let Prior::Quantitative(prior) = &s.prior {
                    let (_, k) = dempster_combine(prior, &Bba::point(event)?)?;
                    let _ = writeln!(out, "conflict K = {}", rational(&k));
                }
            }
        }
        Revised::Qualitative(r) => {
            write_rows(&mut out, &qbba_rows(&r.qm), Format::Text);
            let max = r.qm.scale().max_index();
            let _ = writeln!(out, "{}", quasi_norm_line(r.qm.quasi_norm_status(), max));
            notes.extend(r.diagnostics.iter().cloned());
        }
    }
    let _ = writeln!(out, "prior focal classes:");
    for row in class_rows(s, &ctx)? {
        let _ = writeln!(out, "{}: {}", row.name, row.value);
    }
    write_diagnostics(&mut out, &notes);
    Ok(out)
}

/// `decompose`: D1/D2/D3 class of every prior focal element.
pub fn decompose_report(s: &Scenario, opts: Options) -> Result<String, Failure> {
    let ctx = event_context(s)?;
    let rows = class_rows(s, &ctx)?;
    let mut out = String::new();
    match opts.format {
        Format::Text => {
            let _ = writeln!(out, "condition: {} ({} mode)", ctx.event().render(), ctx.mode());
            for row in rows {
                let _ = writeln!(out, "{}: {}", row.name, row.value);
            }
        }
        Format::Tsv => write_rows(&mut out, &rows, Format::Tsv),
    }
    Ok(out)
}

/// `check`: validation and quasi-normalization of the prior.
pub fn check_report(s: &Scenario, opts: Options) -> Result<String, Failure> {
    let notes = prior_diagnostics(&s.prior)?;
    let rows = match &s.prior {
        Prior::Quantitative(m) => bba_rows(m, opts),
        Prior::Qualitative(qm) => qbba_rows(qm),
    };
    let mut out = String::new();
    if opts.format == Format::Tsv {
        write_rows(&mut out, &rows, Format::Tsv);
        return Ok(out);
    }
    let _ = writeln!(out, "prior:");
    write_rows(&mut out, &rows, Format::Text);
    match &s.prior {
        Prior::Quantitative(m) => {
            let _ = writeln!(out, "status: valid (sum {})", rational(&m.total()));
        }
        Prior::Qualitative(qm) => {
            let status = qm.quasi_norm_status();
            let max = qm.scale().max_index();
            let raw = status.raw_index_sum;
            let line = if status.exact {
                format!("status: exact quasi-normalized (raw index sum {raw}/{max})")
            } else if status.clamped_ok {
                format!("status: quasi-normalized after clamping (raw index sum {raw}/{max})")
            } else {
                format!("status: not quasi-normalized (raw index sum {raw}/{max})")
            };
            let _ = writeln!(out, "{line}");
        }
    }
    write_diagnostics(&mut out, &notes);
    Ok(out)
}

/// `combine`: Dempster's rule on two quantitative assignments.
pub fn combine_report(a: &Scenario, b: &Scenario, opts: Options) -> Result<String, Failure> {
    let (Prior::Quantitative(m1), Prior::Quantitative(m2)) = (&a.prior, &b.prior) else {
        return Err(Failure { code: EXIT_INVALID, message: "combine needs two quantitative (mass:) files".into() });
    };
    m1.validate()?;
    m2.validate()?;
    let (combined, k) = dempster_combine(m1, m2)?;
    let mut out = String::new();
    match opts.format {
        Format::Text => {
            let _ = writeln!(out, "combined masses:");
            write_rows(&mut out, &bba_rows(&combined, opts), Format::Text);
            let _ = writeln!(out, "conflict K = {}", rational(&k));
        }
        Format::Tsv => {
            write_rows(&mut out, &bba_rows(&combined, opts), Format::Tsv);
            let _ = writeln!(out, "#K\t{}", rational(&k));
        }
    }
    Ok(out)
}

pub fn run_command(command: Command, path: &Path, opts: Options) -> Outcome {
    let result = Scenario::load(path).map_err(Failure::from).and_then(|s| match command {
        Command::Condition => condition_report(&s, opts),
        Command::Decompose => decompose_report(&s, opts),
        Command::Check => check_report(&s, opts),
    });
    result.into()
}

pub fn run_combine(first: &Path, second: &Path, opts: Options) -> Outcome {
    let result = (|| {
        let a = Scenario::load(first)?;
        let b = Scenario::load(second)?;
        combine_report(&a, &b, opts)
    })();
    result.into()
}

/// Scenario files (`*.scn`) directly inside `dir`, sorted by name.
pub fn scenario_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "scn"))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs `command` on every scenario in `dir`; each file is independent.
/// The exit code is the largest of the per-file codes.
pub fn run_all(command: Command, dir: &Path, opts: Options) -> Outcome {
    let files = match scenario_files(dir) {
        Ok(f) => f,
        Err(e) => {
            return Outcome {
                stderr: format!("error: {}: {e}\n", dir.display()),
                code: EXIT_INVALID,
                ..Outcome::default()
            }
        }
    };
    let outcomes = map_items(&files, |path| run_command(command, path, opts));
    let mut all = Outcome::default();
    for (path, outcome) in files.iter().zip(outcomes) {
        let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into());
        let _ = writeln!(all.stdout, "== {name} ==");
        all.stdout.push_str(&outcome.stdout);
        if !outcome.stderr.is_empty() {
            let _ = write!(all.stderr, "{name}: {}", outcome.stderr);
            let _ = write!(all.stdout, "{}", outcome.stderr);
        }
        all.code = all.code.max(outcome.code);
    }
    all
}
