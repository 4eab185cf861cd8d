//! Ordered linguistic labels `L_0 ≺ L_1 ≺ … ≺ L_max` and their arithmetic.
//!
//! Addition saturates at `L_max`, multiplication takes the minimum, and
//! division by a positive integer floors the index. Every operation checks
//! that its operands live on the same scale.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::BigRational;

use crate::error::{Error, Result};

/// A label vocabulary `L_0..=L_max`, identified by its maximal index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelScale {
    max_index: u32,
}

impl LabelScale {
    pub fn new(max_index: u32) -> Result<Self> {
        if max_index < 1 {
            return Err(Error::InvalidScale(max_index));
        }
        Ok(Self { max_index })
    }

    pub fn max_index(self) -> u32 {
        self.max_index
    }

    pub fn label(self, index: u32) -> Result<Label> {
        if index > self.max_index {
            return Err(Error::LabelOutOfRange { index, max: self.max_index });
        }
        Ok(Label { index, scale: self })
    }

    pub fn min(self) -> Label {
        Label { index: 0, scale: self }
    }

    pub fn max(self) -> Label {
        Label { index: self.max_index, scale: self }
    }

    /// All labels of the scale in increasing order.
    pub fn labels(self) -> impl Iterator<Item = Label> {
        (0..=self.max_index).map(move |index| Label { index, scale: self })
    }

    /// Parses `L<k>` against this scale.
    pub fn parse_label(self, text: &str) -> Result<Label> {
        let raw: RawLabel = text.parse()?;
        self.label(raw.0)
    }
}

/// A value `L_i` on a [`LabelScale`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Label {
    index: u32,
    scale: LabelScale,
}

impl Label {
    pub fn index(self) -> u32 {
        self.index
    }

    pub fn scale(self) -> LabelScale {
        self.scale
    }

    pub fn is_min(self) -> bool {
        self.index == 0
    }

    fn same_scale(self, other: Label) -> Result<LabelScale> {
        if self.scale != other.scale {
            return Err(Error::ScaleMismatch {
                left: self.scale.max_index,
                right: other.scale.max_index,
            });
        }
        Ok(self.scale)
    }

    /// `L_i + L_j = L_{min(i+j, max)}`.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Label) -> Result<Label> {
        let scale = self.same_scale(other)?;
        let index = (self.index + other.index).min(scale.max_index);
        Ok(Label { index, scale })
    }

    /// `L_i × L_j = L_{min(i,j)}`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Label) -> Result<Label> {
        let scale = self.same_scale(other)?;
        Ok(Label { index: self.index.min(other.index), scale })
    }

    /// `L_i / j = L_{⌊i/j⌋}`.
    pub fn div_scalar(self, divisor: u32) -> Result<Label> {
        if divisor == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Label { index: self.index / divisor, scale: self.scale })
    }

    /// Equidistant embedding into `[0, 1]`: `L_i ↦ i / max`.
    pub fn to_unit(self) -> BigRational {
        BigRational::new(self.index.into(), self.scale.max_index.into())
    }

    /// Total order `≺`; `None` across scales.
    pub fn compare(self, other: Label) -> Option<Ordering> {
        (self.scale == other.scale).then(|| self.index.cmp(&other.index))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(*other)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.index)
    }
}

/// Result of [`label_sum`]: the saturated label together with the plain
/// integer sum of the indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelSum {
    pub label: Label,
    pub raw_index_sum: u64,
}

/// Clamped left fold of [`Label::add`] over a nonempty sequence.
pub fn label_sum<I>(values: I) -> Result<LabelSum>
where
    I: IntoIterator<Item = Label>,
{
    let mut iter = values.into_iter();
    let first = iter.next().ok_or(Error::EmptyInput("label sum of no labels"))?;
    let mut raw = u64::from(first.index);
    let mut acc = first;
    for label in iter {
        acc = acc.add(label)?;
        raw += u64::from(label.index);
    }
    Ok(LabelSum { label: acc, raw_index_sum: raw })
}

/// A scale-free `L<k>` token as written in scenario files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawLabel(pub u32);

impl FromStr for RawLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let digits = s
            .strip_prefix("L_")
            .or_else(|| s.strip_prefix('L'))
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| Error::Syntax {
                offset: 0,
                message: format!("expected a label of the form L<k>, got `{s}`"),
            })?;
        digits.parse().map(RawLabel).map_err(|_| Error::Syntax {
            offset: 0,
            message: format!("label index out of range in `{s}`"),
        })
    }
}
