use super::check_event;
use crate::error::Result;
use crate::label::Label;
use crate::lattice::Proposition;
use crate::mass::{Diagnostic, Qbba};

/// How a prior focal element's label reached its destination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferKind {
    /// The focal element is already a part of `A`.
    Kept,
    /// Moved to `Y ∩ A`, the largest part of `A` inside `Y`.
    Intersection,
    /// One of `shares` floor-divided portions sent to each focal part of `A`.
    Split { shares: u32 },
    /// Moved to `A` as a whole.
    Event,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub from: Proposition,
    pub to: Proposition,
    pub label: Label,
    pub kind: TransferKind,
}

/// A revised qualitative assignment with the transfers that built it.
#[derive(Debug, Clone)]
pub struct QualitativeRevision {
    pub qm: Qbba,
    pub transfers: Vec<Transfer>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Fallback {
    Event,
    UniformSplit,
}

/// Prudent rule: mass outside `A` goes to `Y ∩ A`, or to `A` when `Y`
/// misses `A` entirely.
pub fn qbcr1_condition(qm: &Qbba, event: &Proposition) -> Result<Qbba> {
    qbcr1_trace(qm, event).map(|r| r.qm)
}

/// Uniform rule: like [`qbcr1_condition`], but mass of focal elements
/// disjoint from `A` is split evenly (floor division) among the prior focal
/// parts of `A`, falling back to `A` when there are none.
pub fn qbcr2_condition(qm: &Qbba, event: &Proposition) -> Result<Qbba> {
    qbcr2_trace(qm, event).map(|r| r.qm)
}

pub fn qbcr1_trace(qm: &Qbba, event: &Proposition) -> Result<QualitativeRevision> {
    revise(qm, event, Fallback::Event)
}

pub fn qbcr2_trace(qm: &Qbba, event: &Proposition) -> Result<QualitativeRevision> {
    revise(qm, event, Fallback::UniformSplit)
}

fn revise(qm: &Qbba, event: &Proposition, fallback: Fallback) -> Result<QualitativeRevision> {
    check_event(qm.model(), event)?;
    let a = event.regions();

    // focal parts of A in the prior, before any transfer
    let focal_parts: Vec<Proposition> = qm
        .focals()
        .filter(|(z, _)| z.regions().is_subset(a))
        .map(|(z, _)| z.clone())
        .collect();
    let q_f = focal_parts.len() as u32;

    let mut out = Qbba::new(qm.model(), qm.scale());
    let mut transfers = Vec::new();
    let mut diagnostics = Vec::new();
    let mut split_used = false;

    for (y, label) in qm.focals() {
        let mut send = |to: Proposition, label: Label, kind: TransferKind| -> Result<()> {
            out.add(to.clone(), label)?;
            transfers.push(Transfer { from: y.clone(), to, label, kind });
            Ok(())
        };
        if y.regions().is_subset(a) {
            send(y.clone(), label, TransferKind::Kept)?;
            continue;
        }
        let meet = y.intersect(event)?;
        if !meet.is_empty() {
            send(meet, label, TransferKind::Intersection)?;
        } else if fallback == Fallback::UniformSplit && q_f > 0 {
            split_used = true;
            let share = label.div_scalar(q_f)?;
            for z in &focal_parts {
                send(z.clone(), share, TransferKind::Split { shares: q_f })?;
            }
        } else {
            send(event.clone(), label, TransferKind::Event)?;
        }
    }

    if split_used && focal_parts.contains(event) {
        diagnostics.push(Diagnostic::SplitIncludesEvent);
    }
    let input_sum = qm.raw_index_sum();
    let output_sum = out.raw_index_sum();
    if output_sum < input_sum {
        diagnostics.push(Diagnostic::Leakage { input_index_sum: input_sum, output_index_sum: output_sum });
    }
    Ok(QualitativeRevision { qm: out, transfers, diagnostics })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::error::Error;
    use crate::label::LabelScale;
    use crate::lattice::{Frame, Mode, Model};

    fn abcd() -> Frame {
        Frame::new(["A", "B", "C", "D"]).unwrap()
    }

    fn qbba(m: &Arc<Model>, entries: &[(&str, u32)]) -> Qbba {
        let scale = LabelScale::new(6).unwrap();
        Qbba::from_pairs(m, scale, entries.iter().map(|(e, i)| (m.parse(e).unwrap(), scale.label(*i).unwrap())))
            .unwrap()
    }

    fn hybrid_model() -> Arc<Model> {
        Model::with_empty_expressions(abcd(), Mode::Hyper, &["A&C", "A&D", "B&C"]).unwrap()
    }

    fn overlapping_d() -> Arc<Model> {
        Model::with_empty_expressions(abcd(), Mode::Super, &["A&D&!B&!C", "A&C&D&!B"]).unwrap()
    }

    fn detached_d() -> Arc<Model> {
        Model::with_empty_expressions(abcd(), Mode::Super, &["D&(A|B|C)"]).unwrap()
    }

    #[test]
    fn both_rules_on_hybrid_model() {
        let m = hybrid_model();
        let prior = qbba(&m, &[("A", 1), ("C", 1), ("D", 4)]);
        let a = m.parse("A|B").unwrap();
        let r1 = qbcr1_condition(&prior, &a).unwrap();
        assert_eq!(r1, qbba(&m, &[("B&D", 4), ("A|B", 1), ("A", 1)]));
        let r2 = qbcr2_condition(&prior, &a).unwrap();
        assert_eq!(r2, qbba(&m, &[("B&D", 4), ("A", 2)]));
        assert!(r1.quasi_norm_status().exact && r2.quasi_norm_status().exact);
    }

    #[test]
    fn prior_with_complemented_focal() {
        let m = overlapping_d();
        let prior = qbba(&m, &[("A", 1), ("C", 1), ("D", 2), ("C|D", 1), ("C&!D", 1)]);
        let a = m.parse("!D").unwrap();
        let r1 = qbcr1_condition(&prior, &a).unwrap();
        assert_eq!(r1, qbba(&m, &[("A&!D", 1), ("C&!D", 3), ("!D", 2)]));
        let r2 = qbcr2_condition(&prior, &a).unwrap();
        assert_eq!(r2, qbba(&m, &[("A&!D", 1), ("C&!D", 5)]));
    }

    #[test]
    fn uniform_split_between_parts() {
        let m = detached_d();
        let prior = qbba(&m, &[("A", 1), ("C", 3), ("D", 2)]);
        let a = m.parse("!(D)").unwrap();
        let trace = qbcr2_trace(&prior, &a).unwrap();
        assert_eq!(trace.qm, qbba(&m, &[("A", 2), ("C", 4)]));
        assert!(trace.diagnostics.is_empty());
        let splits = trace.transfers.iter().filter(|t| t.kind == TransferKind::Split { shares: 2 }).count();
        assert_eq!(splits, 2);
    }

    #[test]
    fn split_among_parts_disjoint_from_d() {
        // A and C entirely outside D, B straddling it: q_F = 2
        let m = Model::with_empty_expressions(abcd(), Mode::Super, &["A&D", "C&D"]).unwrap();
        let prior = qbba(&m, &[("A", 1), ("C", 1), ("D", 4)]);
        let a = m.parse("!D").unwrap();
        assert_eq!(qbcr2_condition(&prior, &a).unwrap(), qbba(&m, &[("A&!D", 3), ("C&!D", 3)]));
        assert_eq!(qbcr1_condition(&prior, &a).unwrap(), qbba(&m, &[("A", 1), ("C", 1), ("!D", 4)]));
    }

    #[test]
    fn leakage_is_reported() {
        let m = detached_d();
        let prior = qbba(&m, &[("A", 1), ("B", 1), ("C", 1), ("D", 3)]);
        let trace = qbcr2_trace(&prior, &m.parse("!D").unwrap()).unwrap();
        assert_eq!(trace.qm, qbba(&m, &[("A", 2), ("B", 2), ("C", 2)]));
        assert!(trace.diagnostics.is_empty());

        let prior = qbba(&m, &[("A", 1), ("C", 1), ("D", 3)]);
        let trace = qbcr2_trace(&prior, &m.parse("!D").unwrap()).unwrap();
        assert_eq!(trace.qm, qbba(&m, &[("A", 2), ("C", 2)]));
        assert_eq!(
            trace.diagnostics,
            vec![Diagnostic::Leakage { input_index_sum: 5, output_index_sum: 4 }]
        );
    }

    #[test]
    fn split_to_event_is_flagged() {
        let m = detached_d();
        let prior = qbba(&m, &[("A|B|C", 2), ("D", 4)]);
        let trace = qbcr2_trace(&prior, &m.parse("!D").unwrap()).unwrap();
        assert_eq!(trace.qm, qbba(&m, &[("A|B|C", 6)]));
        assert_eq!(trace.diagnostics, vec![Diagnostic::SplitIncludesEvent]);
    }

    #[test]
    fn full_event_is_identity() {
        let m = hybrid_model();
        let prior = qbba(&m, &[("A", 1), ("C", 1), ("D", 4)]);
        assert_eq!(qbcr1_condition(&prior, &m.full()).unwrap(), prior);
        assert_eq!(qbcr2_condition(&prior, &m.full()).unwrap(), prior);
    }

    #[test]
    fn impossible_event() {
        let m = hybrid_model();
        let prior = qbba(&m, &[("A", 6)]);
        assert_eq!(
            qbcr1_condition(&prior, &m.parse("A&C").unwrap()).unwrap_err(),
            Error::ImpossibleProblem
        );
        assert_eq!(
            qbcr2_condition(&prior, &m.empty_proposition()).unwrap_err(),
            Error::ImpossibleProblem
        );
    }
}
