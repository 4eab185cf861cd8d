//! Belief revision over hybrid frames of discernment.
//!
//! Propositions are canonicalized to sets of Venn regions under an integrity
//! model, so syntactically different expressions denoting the same set
//! compare equal. Quantitative assignments hold exact rationals; qualitative
//! ones hold linguistic labels `L0..Lmax`.
//!
//! ```
//! use qbcr::{Frame, LabelScale, Mode, Model, Qbba, qbcr1_condition};
//!
//! let frame = Frame::new(["A", "B", "C", "D"]).unwrap();
//! let model = Model::with_empty_expressions(frame, Mode::Hyper, &["A&C", "A&D", "B&C"]).unwrap();
//! let scale = LabelScale::new(6).unwrap();
//! let prior = Qbba::from_pairs(&model, scale, [
//!     (model.parse("A").unwrap(), scale.label(1).unwrap()),
//!     (model.parse("C").unwrap(), scale.label(1).unwrap()),
//!     (model.parse("D").unwrap(), scale.label(4).unwrap()),
//! ]).unwrap();
//! let revised = qbcr1_condition(&prior, &model.parse("A|B").unwrap()).unwrap();
//! assert_eq!(revised.get(&model.parse("B&D").unwrap()).to_string(), "L4");
//! ```

pub mod batch;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod label;
pub mod lattice;
pub mod mass;
pub mod rules;
pub mod scenario;

pub use decomposition::{decompose, DecompositionClass, DecompositionContext};
pub use error::{Error, Result};
pub use label::{label_sum, Label, LabelScale, LabelSum};
pub use lattice::{Expression, Frame, Mode, Model, Proposition, RegionSet};
pub use mass::{Bba, Diagnostic, Qbba, QuasiNormStatus};
pub use rules::{
    apply_rule, bcr17_condition, dempster_combine, qbcr1_condition, qbcr1_trace, qbcr2_condition, qbcr2_trace,
    scr_condition, Prior, QualitativeRevision, Revised, Rule, Transfer, TransferKind,
};
pub use scenario::Scenario;
