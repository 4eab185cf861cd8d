//! Quantitative (`m`) and qualitative (`qm`) belief assignments.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::label::{label_sum, Label, LabelScale};
use crate::lattice::{Model, Proposition};

/// Non-fatal findings reported alongside validation and rule results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// Label indices do not add up to `L_max`.
    NotQuasiNormalized { raw_index_sum: u64, max_index: u32 },
    /// The saturated sum is `L_max` but the indices overshoot it.
    ClampedQuasiNormalization { raw_index_sum: u64, max_index: u32 },
    /// Several entries denote the same proposition and were accumulated.
    MergedEntries { proposition: String },
    /// Floor division lost part of the redistributed qualitative mass.
    Leakage { input_index_sum: u64, output_index_sum: u64 },
    /// A uniform split also credited the conditioning event itself.
    SplitIncludesEvent,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NotQuasiNormalized { raw_index_sum, max_index } => {
                write!(f, "warning: not quasi-normalized (raw index sum {raw_index_sum}/{max_index})")
            }
            Diagnostic::ClampedQuasiNormalization { raw_index_sum, max_index } => write!(
                f,
                "warning: quasi-normalized only after clamping (raw index sum {raw_index_sum}/{max_index})"
            ),
            Diagnostic::MergedEntries { proposition } => {
                write!(f, "note: entries denoting {proposition} were accumulated")
            }
            Diagnostic::Leakage { input_index_sum, output_index_sum } => write!(
                f,
                "note: floor division leaked {} label steps ({input_index_sum} -> {output_index_sum})",
                input_index_sum - output_index_sum
            ),
            Diagnostic::SplitIncludesEvent => {
                write!(f, "note: the conditioning event is a focal element and received a uniform share")
            }
        }
    }
}

/// Basic belief assignment with exact rational masses.
#[derive(Debug, Clone)]
pub struct Bba {
    model: Arc<Model>,
    masses: BTreeMap<Proposition, BigRational>,
    merged: Vec<Proposition>,
}

impl Bba {
    pub fn new(model: &Arc<Model>) -> Self {
        Self { model: Arc::clone(model), masses: BTreeMap::new(), merged: Vec::new() }
    }

    /// All mass on `p`.
    pub fn point(p: &Proposition) -> Result<Self> {
        let mut m = Self::new(p.model());
        m.insert(p.clone(), BigRational::one())?;
        Ok(m)
    }

    pub fn from_pairs<I>(model: &Arc<Model>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Proposition, BigRational)>,
    {
        let mut m = Self::new(model);
        for (p, v) in pairs {
            m.insert(p, v)?;
        }
        Ok(m)
    }

    /// Adds `mass` to `p`, accumulating repeated propositions.
    pub fn insert(&mut self, p: Proposition, mass: BigRational) -> Result<()> {
        if !self.model.same_as(p.model()) {
            return Err(Error::ModelMismatch);
        }
        if p.is_empty() {
            return Err(Error::EmptyProposition);
        }
        if mass.is_negative() {
            return Err(Error::InvalidMass(format!("negative mass {mass} on {p}")));
        }
        self.add(p, mass);
        Ok(())
    }

    pub(crate) fn add(&mut self, p: Proposition, mass: BigRational) {
        if mass.is_zero() {
            return;
        }
        match self.masses.get_mut(&p) {
            Some(existing) => {
                *existing += mass;
                if !self.merged.contains(&p) {
                    self.merged.push(p);
                }
            }
            None => {
                self.masses.insert(p, mass);
            }
        }
    }

    pub fn model(&self) -> &Arc<Model> {
        &self.model
    }

    pub fn get(&self, p: &Proposition) -> BigRational {
        self.masses.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Focal elements (nonzero mass) in region-set order.
    pub fn focals(&self) -> impl Iterator<Item = (&Proposition, &BigRational)> {
        self.masses.iter()
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn total(&self) -> BigRational {
        self.masses.values().fold(BigRational::zero(), |acc, v| acc + v)
    }

    /// Checks the masses sum to exactly one over a nonempty support.
    pub fn validate(&self) -> Result<Vec<Diagnostic>> {
        if self.masses.is_empty() {
            return Err(Error::InvalidMass("no focal element".into()));
        }
        let total = self.total();
        if !total.is_one() {
            return Err(Error::InvalidMass(format!("masses sum to {total}, expected 1")));
        }
        Ok(self.merge_notes())
    }

    fn merge_notes(&self) -> Vec<Diagnostic> {
        self.merged
            .iter()
            .map(|p| Diagnostic::MergedEntries { proposition: p.render() })
            .collect()
    }
}

impl PartialEq for Bba {
    fn eq(&self, other: &Self) -> bool {
        self.model.same_as(&other.model) && self.masses == other.masses
    }
}

/// Quasi-normalization of a qualitative assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuasiNormStatus {
    pub clamped_sum: Label,
    pub raw_index_sum: u64,
    /// Raw index sum equals the maximal index.
    pub exact: bool,
    /// Saturated sum equals `L_max`.
    pub clamped_ok: bool,
}

/// Qualitative basic belief assignment; unlisted propositions carry `L_0`.
#[derive(Debug, Clone)]
pub struct Qbba {
    model: Arc<Model>,
    scale: LabelScale,
    labels: BTreeMap<Proposition, Label>,
    merged: Vec<Proposition>,
}

impl Qbba {
    pub fn new(model: &Arc<Model>, scale: LabelScale) -> Self {
        Self { model: Arc::clone(model), scale, labels: BTreeMap::new(), merged: Vec::new() }
    }

    pub fn from_pairs<I>(model: &Arc<Model>, scale: LabelScale, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Proposition, Label)>,
    {
        let mut qm = Self::new(model, scale);
        for (p, l) in pairs {
            qm.insert(p, l)?;
        }
        Ok(qm)
    }

    /// Adds `label` to `p` with saturating label addition.
    pub fn insert(&mut self, p: Proposition, label: Label) -> Result<()> {
        if !self.model.same_as(p.model()) {
            return Err(Error::ModelMismatch);
        }
        if label.scale() != self.scale {
            return Err(Error::ScaleMismatch {
                left: self.scale.max_index(),
                right: label.scale().max_index(),
            });
        }
        if p.is_empty() {
            return Err(Error::EmptyProposition);
        }
        if self.labels.contains_key(&p) && !label.is_min() && !self.merged.contains(&p) {
            self.merged.push(p.clone());
        }
        self.add(p, label)
    }

    pub(crate) fn add(&mut self, p: Proposition, label: Label) -> Result<()> {
        if label.is_min() {
            return Ok(());
        }
        let slot = self.labels.entry(p).or_insert_with(|| label.scale().min());
        *slot = slot.add(label)?;
        Ok(())
    }

    pub fn model(&self) -> &Arc<Model> {
        &self.model
    }

    pub fn scale(&self) -> LabelScale {
        self.scale
    }

    pub fn get(&self, p: &Proposition) -> Label {
        self.labels.get(p).copied().unwrap_or_else(|| self.scale.min())
    }

    /// Focal elements (non-`L_0`) in region-set order.
    pub fn focals(&self) -> impl Iterator<Item = (&Proposition, Label)> {
        self.labels.iter().map(|(p, &l)| (p, l))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn raw_index_sum(&self) -> u64 {
        self.labels.values().map(|l| u64::from(l.index())).sum()
    }

    pub fn quasi_norm_status(&self) -> QuasiNormStatus {
        let sum = label_sum(std::iter::once(self.scale.min()).chain(self.labels.values().copied()))
            .expect("nonempty by construction");
        let max = self.scale.max_index();
        QuasiNormStatus {
            clamped_sum: sum.label,
            raw_index_sum: sum.raw_index_sum,
            exact: sum.raw_index_sum == u64::from(max),
            clamped_ok: sum.label.index() == max,
        }
    }

    /// Requires a nonempty support; quasi-normalization problems are
    /// reported as warnings.
    pub fn validate(&self) -> Result<Vec<Diagnostic>> {
        if self.labels.is_empty() {
            return Err(Error::InvalidMass("no qualitative focal element".into()));
        }
        let mut notes: Vec<Diagnostic> = self
            .merged
            .iter()
            .map(|p| Diagnostic::MergedEntries { proposition: p.render() })
            .collect();
        notes.extend(self.quasi_norm_diagnostic());
        Ok(notes)
    }

    pub(crate) fn quasi_norm_diagnostic(&self) -> Option<Diagnostic> {
        let status = self.quasi_norm_status();
        let max_index = self.scale.max_index();
        if status.exact {
            None
        } else if status.clamped_ok {
            Some(Diagnostic::ClampedQuasiNormalization { raw_index_sum: status.raw_index_sum, max_index })
        } else {
            Some(Diagnostic::NotQuasiNormalized { raw_index_sum: status.raw_index_sum, max_index })
        }
    }
}

impl PartialEq for Qbba {
    fn eq(&self, other: &Self) -> bool {
        self.model.same_as(&other.model) && self.scale == other.scale && self.labels == other.labels
    }
}

pub fn validate_bba(m: &Bba) -> Result<Vec<Diagnostic>> {
    m.validate()
}

pub fn validate_qbba(qm: &Qbba) -> Result<Vec<Diagnostic>> {
    qm.validate()
}

pub fn quasi_norm_status(qm: &Qbba) -> QuasiNormStatus {
    qm.quasi_norm_status()
}
