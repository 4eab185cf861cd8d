//! Line-oriented scenario files.
//!
//! ```text
//! # three declared-empty intersections, prudent rule
//! frame: A B C D
//! labels: 6
//! mode: hyper
//! model: empty: A&C, A&D, B&C
//! qmass:
//!   A = L1
//!   C = L1
//!   D = L4
//! condition: A|B
//! rule: qbcr1
//! ```
//!
//! `model:` is `free`, `shafer` or `empty:` followed by expressions
//! (comma separated, may continue on the following lines). Quantitative
//! blocks use `mass:` with rational (`13/40`) or decimal (`0.325`) values.

use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use num::{BigInt, BigRational, Zero};
use thiserror::Error;

use crate::error::Error;
use crate::label::{LabelScale, RawLabel};
use crate::lattice::{Expression, Frame, Mode, Model, Proposition};
use crate::mass::{Bba, Qbba};
use crate::rules::{Prior, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    Lattice {
        line: usize,
        #[source]
        source: Error,
    },
    #[error("{0}")]
    Invalid(String),
}

impl ScenarioError {
    /// Underlying lattice/rule error, if any.
    pub fn lattice_error(&self) -> Option<&Error> {
        match self {
            ScenarioError::Lattice { source, .. } => Some(source),
            _ => None,
        }
    }
}

type Result<T> = std::result::Result<T, ScenarioError>;

fn parse_err(line: usize, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Parse { line, message: message.into() }
}

fn at(line: usize) -> impl Fn(Error) -> ScenarioError {
    move |source| ScenarioError::Lattice { line, source }
}

/// A prior entry as written in the file.
#[derive(Debug, Clone)]
pub struct MassEntry {
    pub line: usize,
    pub expression: Expression,
    pub proposition: Proposition,
}

#[derive(Debug, Clone)]
pub struct ConditionSpec {
    pub line: usize,
    pub expression: Expression,
    pub event: Proposition,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub model: Arc<Model>,
    pub scale: Option<LabelScale>,
    pub prior: Prior,
    pub entries: Vec<MassEntry>,
    pub condition: Option<ConditionSpec>,
    pub rule: Option<Rule>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    None,
    ModelEmpty,
    QMass,
    Mass,
}

#[derive(Default)]
struct Raw {
    frame: Option<(usize, String)>,
    labels: Option<(usize, String)>,
    mode: Option<(usize, String)>,
    model: Option<(usize, String)>,
    empty_decls: Vec<(usize, String)>,
    qmass: Option<usize>,
    mass: Option<usize>,
    values: Vec<(usize, String, String)>,
    condition: Option<(usize, String)>,
    rule: Option<(usize, String)>,
}

fn set(slot: &mut Option<(usize, String)>, line: usize, key: &str, value: &str) -> Result<()> {
    if let Some((first, _)) = slot {
        return Err(parse_err(line, format!("duplicate `{key}:` (first given on line {first})")));
    }
    *slot = Some((line, value.trim().to_string()));
    Ok(())
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split([',', ';']).map(str::trim).filter(|s| !s.is_empty())
}

fn lex(text: &str) -> Result<Raw> {
    let mut raw = Raw::default();
    let mut block = Block::None;
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        let content = full.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some((key, rest)) = content.split_once(':') {
            let key = key.trim();
            block = Block::None;
            match key {
                "frame" => set(&mut raw.frame, line, key, rest)?,
                "labels" => set(&mut raw.labels, line, key, rest)?,
                "mode" => set(&mut raw.mode, line, key, rest)?,
                "condition" => set(&mut raw.condition, line, key, rest)?,
                "rule" => set(&mut raw.rule, line, key, rest)?,
                "model" => {
                    set(&mut raw.model, line, key, rest)?;
                    let rest = rest.trim();
                    if let Some(decls) = rest.strip_prefix("empty") {
                        let decls = decls
                            .trim_start()
                            .strip_prefix(':')
                            .ok_or_else(|| parse_err(line, "expected `empty:` followed by expressions"))?;
                        raw.empty_decls.extend(split_list(decls).map(|d| (line, d.to_string())));
                        block = Block::ModelEmpty;
                    }
                }
                "qmass" | "mass" => {
                    let (slot, next) = if key == "qmass" {
                        (&mut raw.qmass, Block::QMass)
                    } else {
                        (&mut raw.mass, Block::Mass)
                    };
                    if let Some(first) = slot {
                        return Err(parse_err(line, format!("duplicate `{key}:` (first given on line {first})")));
                    }
                    *slot = Some(line);
                    block = next;
                    if !rest.trim().is_empty() {
                        raw.values.push(mass_line(line, rest)?);
                    }
                }
                other => return Err(parse_err(line, format!("unknown key `{other}`"))),
            }
            continue;
        }
        match block {
            Block::ModelEmpty => raw.empty_decls.extend(split_list(content).map(|d| (line, d.to_string()))),
            Block::QMass | Block::Mass => raw.values.push(mass_line(line, content)?),
            Block::None => return Err(parse_err(line, format!("unexpected line `{content}`"))),
        }
    }
    Ok(raw)
}

fn mass_line(line: usize, text: &str) -> Result<(usize, String, String)> {
    let (expr, value) = text
        .split_once('=')
        .ok_or_else(|| parse_err(line, "expected `<expression> = <value>`"))?;
    if expr.trim().is_empty() || value.trim().is_empty() {
        return Err(parse_err(line, "expected `<expression> = <value>`"));
    }
    Ok((line, expr.trim().to_string(), value.trim().to_string()))
}

/// Parses a nonnegative rational written as `p/q`, a decimal or an integer.
pub fn parse_rational(text: &str) -> std::result::Result<BigRational, String> {
    let text = text.trim();
    let bad = || format!("invalid mass value `{text}`");
    let value = if let Some((n, d)) = text.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(format!("zero denominator in `{text}`"));
        }
        BigRational::new(n, d)
    } else {
        let (int, frac) = text.split_once('.').unwrap_or((text, ""));
        let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if (int.is_empty() && frac.is_empty()) || !digits_ok(int) || !digits_ok(frac) {
            return Err(bad());
        }
        let numer = BigInt::from_str(&format!("{int}{frac}")).map_err(|_| bad())?;
        let denom = num::pow(BigInt::from(10), frac.len());
        BigRational::new(numer, denom)
    };
    if value < BigRational::zero() {
        return Err(format!("negative mass `{text}`"));
    }
    Ok(value)
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw = lex(text)?;

        let (frame_line, frame_text) = raw.frame.ok_or_else(|| ScenarioError::Invalid("missing `frame:`".into()))?;
        let frame = Frame::new(split_list(&frame_text.replace(char::is_whitespace, ",")).map(String::from))
            .map_err(at(frame_line))?;

        let mode = match &raw.mode {
            None => Mode::Hyper,
            Some((_, m)) if m == "hyper" => Mode::Hyper,
            Some((_, m)) if m == "super" => Mode::Super,
            Some((line, m)) => return Err(parse_err(*line, format!("unknown mode `{m}` (expected hyper or super)"))),
        };

        let model = match &raw.model {
            None => Model::free(frame, mode).map_err(at(frame_line))?,
            Some((line, m)) if m == "free" => Model::free(frame, mode).map_err(at(*line))?,
            Some((line, m)) if m == "shafer" => Model::shafer(frame, mode).map_err(at(*line))?,
            Some((line, m)) if m.starts_with("empty") => {
                // parse each declaration separately for precise line numbers
                let free = Model::free(frame.clone(), mode).map_err(at(*line))?;
                for (decl_line, decl) in &raw.empty_decls {
                    free.parse(decl).map_err(at(*decl_line))?;
                }
                let decls: Vec<&str> = raw.empty_decls.iter().map(|(_, d)| d.as_str()).collect();
                Model::with_empty_expressions(frame, mode, &decls).map_err(at(*line))?
            }
            Some((line, m)) => {
                return Err(parse_err(*line, format!("unknown model `{m}` (expected free, shafer or empty: ...)")))
            }
        };

        let scale = match &raw.labels {
            None => None,
            Some((line, text)) => {
                let max: u32 = text
                    .parse()
                    .map_err(|_| parse_err(*line, format!("invalid label count `{text}`")))?;
                Some(LabelScale::new(max).map_err(at(*line))?)
            }
        };

        let (prior, entries) = match (raw.qmass, raw.mass) {
            (Some(_), Some(_)) => {
                return Err(ScenarioError::Invalid("both `qmass:` and `mass:` given; expected exactly one".into()))
            }
            (None, None) => return Err(ScenarioError::Invalid("missing `qmass:` or `mass:` section".into())),
            (Some(qline), None) => {
                let scale = scale.ok_or_else(|| parse_err(qline, "`qmass:` requires `labels:`"))?;
                let mut qm = Qbba::new(&model, scale);
                let mut entries = Vec::new();
                for (line, expr, value) in &raw.values {
                    let entry = entry(&model, *line, expr)?;
                    let raw_label: RawLabel = value.parse().map_err(at(*line))?;
                    let label = scale.label(raw_label.0).map_err(at(*line))?;
                    qm.insert(entry.proposition.clone(), label).map_err(at(*line))?;
                    entries.push(entry);
                }
                (Prior::Qualitative(qm), entries)
            }
            (None, Some(_)) => {
                let mut m = Bba::new(&model);
                let mut entries = Vec::new();
                for (line, expr, value) in &raw.values {
                    let entry = entry(&model, *line, expr)?;
                    let mass = parse_rational(value).map_err(|msg| parse_err(*line, msg))?;
                    m.insert(entry.proposition.clone(), mass).map_err(at(*line))?;
                    entries.push(entry);
                }
                (Prior::Quantitative(m), entries)
            }
        };

        let condition = match &raw.condition {
            None => None,
            Some((line, text)) => {
                let expression = model.expression(text).map_err(at(*line))?;
                let event = model.canonicalize(&expression).map_err(at(*line))?;
                if event.is_empty() {
                    return Err(ScenarioError::Lattice { line: *line, source: Error::ImpossibleProblem });
                }
                Some(ConditionSpec { line: *line, expression, event })
            }
        };

        let rule = match &raw.rule {
            None => None,
            Some((line, text)) => {
                let rule: Rule = text.parse().map_err(|msg: String| parse_err(*line, msg))?;
                let qualitative = matches!(prior, Prior::Qualitative(_));
                if rule.is_qualitative() != qualitative {
                    let kind = if qualitative { "qualitative (qmass)" } else { "quantitative (mass)" };
                    return Err(parse_err(*line, format!("rule {rule} does not apply to a {kind} prior")));
                }
                Some(rule)
            }
        };

        Ok(Scenario { model, scale, prior, entries, condition, rule })
    }
}

fn entry(model: &Arc<Model>, line: usize, text: &str) -> Result<MassEntry> {
    let expression = model.expression(text).map_err(at(line))?;
    let proposition = model.canonicalize(&expression).map_err(at(line))?;
    Ok(MassEntry { line, expression, proposition })
}

#[cfg(test)]
mod tests {
    use super::*;

    const HYBRID: &str = "\
# three declared-empty intersections
frame: A B C D
labels: 6
model: empty: A&C, A&D,
       B&C
qmass:
  A = L1
  C = L1   # comment
  D = L4
condition: A|B
rule: qbcr1
";

    #[test]
    fn parses_hybrid_scenario() {
        let s = Scenario::parse(HYBRID).unwrap();
        assert_eq!(s.model.frame().len(), 4);
        assert!(s.model.parse("B&C").unwrap().is_empty());
        assert_eq!(s.rule, Some(Rule::Qbcr1));
        assert_eq!(s.entries.len(), 3);
        assert_eq!(s.condition.unwrap().event.render(), "A|B");
        match s.prior {
            Prior::Qualitative(qm) => assert_eq!(qm.raw_index_sum(), 6),
            _ => panic!(),
        }
    }

    #[test]
    fn rationals() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("13/40").unwrap(), r(13, 40));
        assert_eq!(parse_rational("0.325").unwrap(), r(13, 40));
        assert_eq!(parse_rational("1").unwrap(), r(1, 1));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("-0.5").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn empty_condition_is_impossible() {
        let text = HYBRID.replace("condition: A|B", "condition: A&C");
        let err = Scenario::parse(&text).unwrap_err();
        assert_eq!(err, ScenarioError::Lattice { line: 10, source: Error::ImpossibleProblem });
        assert!(err.to_string().contains("conditioning event is empty under model"));
    }

    #[test]
    fn errors_have_lines() {
        let text = HYBRID.replace("D = L4", "D = L9");
        assert!(matches!(Scenario::parse(&text), Err(ScenarioError::Lattice { line: 9, .. })));
        let text = HYBRID.replace("  C = L1", "  A&C = L1");
        assert_eq!(
            Scenario::parse(&text).unwrap_err(),
            ScenarioError::Lattice { line: 8, source: Error::EmptyProposition }
        );
        let text = HYBRID.replace("rule: qbcr1", "rule: bcr17");
        assert!(matches!(Scenario::parse(&text), Err(ScenarioError::Parse { line: 11, .. })));
        let text = HYBRID.replace("frame: A B C D", "frame: A B C D\nframe: A");
        assert!(matches!(Scenario::parse(&text), Err(ScenarioError::Parse { line: 3, .. })));
        let text = HYBRID.replace("qmass:", "qmass:\nmass:");
        assert!(Scenario::parse(&text).is_err());
        let text = HYBRID.replace("A|B", "A |");
        assert!(matches!(
            Scenario::parse(&text),
            Err(ScenarioError::Lattice { line: 10, source: Error::Syntax { offset: 3, .. } })
        ));
    }

    #[test]
    fn hyper_mode_rejects_complement_tokens() {
        let text = HYBRID.replace("condition: A|B", "condition: !D");
        assert!(matches!(
            Scenario::parse(&text),
            Err(ScenarioError::Lattice { source: Error::ComplementInHyperMode { .. }, .. })
        ));
    }

    #[test]
    fn quantitative_scenario() {
        let text = "frame: t1 t2 t3\nmodel: shafer\nmass:\n t1 = 0.5\n t2|t3 = 1/2\ncondition: t2|t3\nrule: bcr17\n";
        let s = Scenario::parse(text).unwrap();
        assert!(matches!(s.prior, Prior::Quantitative(_)));
        assert_eq!(s.scale, None);
    }
}
