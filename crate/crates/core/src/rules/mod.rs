//! Belief revision given an event `A` known to be true.
//!
//! Quantitative: [`scr_condition`] (Dempster with a point mass on `A`) and
//! [`bcr17_condition`]. Qualitative: [`qbcr1_condition`] and
//! [`qbcr2_condition`]. Every rule confines the revised mass to subsets of
//! `A`.

mod bcr17;
mod dempster;
mod qbcr;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use bcr17::bcr17_condition;
pub use dempster::{dempster_combine, scr_condition};
pub use qbcr::{
    qbcr1_condition, qbcr1_trace, qbcr2_condition, qbcr2_trace, QualitativeRevision, Transfer,
    TransferKind,
};

use crate::error::{Error, Result};
use crate::lattice::{Model, Proposition};
use crate::mass::{Bba, Qbba};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Scr,
    Bcr17,
    Qbcr1,
    Qbcr2,
}

impl Rule {
    pub fn is_qualitative(self) -> bool {
        matches!(self, Rule::Qbcr1 | Rule::Qbcr2)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Scr => "scr",
            Rule::Bcr17 => "bcr17",
            Rule::Qbcr1 => "qbcr1",
            Rule::Qbcr2 => "qbcr2",
        })
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "scr" => Ok(Rule::Scr),
            "bcr17" => Ok(Rule::Bcr17),
            "qbcr1" => Ok(Rule::Qbcr1),
            "qbcr2" => Ok(Rule::Qbcr2),
            other => Err(format!("unknown rule `{other}` (expected scr, bcr17, qbcr1 or qbcr2)")),
        }
    }
}

/// A prior assignment of either kind.
#[derive(Debug, Clone)]
pub enum Prior {
    Quantitative(Bba),
    Qualitative(Qbba),
}

impl Prior {
    pub fn model(&self) -> &Arc<Model> {
        match self {
            Prior::Quantitative(m) => m.model(),
            Prior::Qualitative(qm) => qm.model(),
        }
    }

    /// Focal elements in region-set order.
    pub fn focal_propositions(&self) -> Vec<Proposition> {
        match self {
            Prior::Quantitative(m) => m.focals().map(|(p, _)| p.clone()).collect(),
            Prior::Qualitative(qm) => qm.focals().map(|(p, _)| p.clone()).collect(),
        }
    }
}

/// Output of [`apply_rule`].
#[derive(Debug, Clone)]
pub enum Revised {
    Quantitative(Bba),
    Qualitative(QualitativeRevision),
}

/// Error returned when the rule kind does not match the prior kind.
fn kind_mismatch(rule: Rule) -> Error {
    let wanted = if rule.is_qualitative() { "qualitative" } else { "quantitative" };
    Error::InvalidMass(format!("rule {rule} needs a {wanted} prior"))
}

/// Applies `rule` to `prior` given `event`.
pub fn apply_rule(rule: Rule, prior: &Prior, event: &Proposition) -> Result<Revised> {
    match (rule, prior) {
        (Rule::Scr, Prior::Quantitative(m)) => scr_condition(m, event).map(Revised::Quantitative),
        (Rule::Bcr17, Prior::Quantitative(m)) => bcr17_condition(m, event).map(Revised::Quantitative),
        (Rule::Qbcr1, Prior::Qualitative(qm)) => qbcr1_trace(qm, event).map(Revised::Qualitative),
        (Rule::Qbcr2, Prior::Qualitative(qm)) => qbcr2_trace(qm, event).map(Revised::Qualitative),
        (rule, _) => Err(kind_mismatch(rule)),
    }
}

fn check_event(model: &Arc<Model>, event: &Proposition) -> Result<()> {
    if !model.same_as(event.model()) {
        return Err(Error::ModelMismatch);
    }
    if event.is_empty() {
        return Err(Error::ImpossibleProblem);
    }
    Ok(())
}
