//! Frames, hybrid models and propositions as canonical sets of Venn regions.
//!
//! A proposition is stored as the set of nonempty minterms it covers. Two
//! propositions built from different expressions compare equal exactly when
//! they cover the same regions under the model.

mod expr;
mod regions;
mod render;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use expr::{parse_expression, Expression, Node};
pub use regions::RegionSet;

use crate::error::{Error, Result};

/// Largest frame the region representation accepts.
pub const MAX_ATOMS: usize = 16;
/// Largest frame on which whole-lattice enumeration is allowed.
pub const MAX_ENUMERATION_ATOMS: usize = 6;

/// An ordered list of distinct atom names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    atoms: Vec<String>,
}

impl Frame {
    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() || atoms.len() > MAX_ATOMS {
            return Err(Error::InvalidFrame(format!(
                "expected between 1 and {MAX_ATOMS} atoms, got {}",
                atoms.len()
            )));
        }
        for (i, name) in atoms.iter().enumerate() {
            let mut chars = name.chars();
            let valid = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidFrame(format!("invalid atom name `{name}`")));
            }
            if atoms[..i].contains(name) {
                return Err(Error::InvalidFrame(format!("duplicate atom `{name}`")));
            }
        }
        Ok(Self { atoms })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    /// Bitmask with one bit per atom.
    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.atoms.len()) - 1) as u32
    }
}

/// Which proposition space the model works in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Hyper-power set: atoms closed under `∪` and `∩`.
    Hyper,
    /// Super-power set: complement is also available.
    Super,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Hyper => "hyper",
            Mode::Super => "super",
        })
    }
}

/// A frame plus its integrity constraints: the minterms known to be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    frame: Frame,
    mode: Mode,
    empty: RegionSet,
    universe: RegionSet,
    atom_regions: Vec<RegionSet>,
}

impl Model {
    /// Builds a model from an explicit set of empty minterms.
    pub fn new(frame: Frame, mode: Mode, empty: RegionSet) -> Result<Arc<Self>> {
        let n = frame.len();
        let all = RegionSet::all(n);
        if !empty.is_subset(&all) {
            return Err(Error::InvalidModel("empty minterm outside the frame".into()));
        }
        let universe = all.difference(&empty);
        if universe.is_empty() {
            return Err(Error::InvalidModel("every minterm is empty: the frame itself is empty".into()));
        }
        let atom_regions = (0..n)
            .map(|i| RegionSet::supersets_of(n, 1 << i).intersection(&universe))
            .collect();
        Ok(Arc::new(Self { frame, mode, empty, universe, atom_regions }))
    }

    /// Free DSm model: no constraints.
    pub fn free(frame: Frame, mode: Mode) -> Result<Arc<Self>> {
        let n = frame.len();
        Self::new(frame, mode, RegionSet::empty(n))
    }

    /// Shafer's model: atoms pairwise exclusive.
    pub fn shafer(frame: Frame, mode: Mode) -> Result<Arc<Self>> {
        let n = frame.len();
        let mut empty = RegionSet::empty(n);
        for m in 1..(1usize << n) {
            if m.count_ones() >= 2 {
                empty.insert(m);
            }
        }
        Self::new(frame, mode, empty)
    }

    /// Hybrid model from a list of expressions declared empty. Each is
    /// evaluated without constraints and all its minterms are marked empty.
    pub fn with_empty_expressions<S: AsRef<str>>(
        frame: Frame,
        mode: Mode,
        declarations: &[S],
    ) -> Result<Arc<Self>> {
        let free = Self::free(frame.clone(), mode)?;
        let mut empty = RegionSet::empty(frame.len());
        for decl in declarations {
            let expr = parse_expression(decl.as_ref(), &frame)?;
            let prop = free.canonicalize(&expr)?;
            empty = empty.union(prop.regions());
        }
        Self::new(frame, mode, empty)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn atom_count(&self) -> usize {
        self.frame.len()
    }

    /// Minterms declared empty.
    pub fn empty_minterms(&self) -> &RegionSet {
        &self.empty
    }

    /// All minterms that remain nonempty.
    pub fn universe(&self) -> &RegionSet {
        &self.universe
    }

    pub fn atom_regions(&self, index: usize) -> &RegionSet {
        &self.atom_regions[index]
    }

    /// Region set of the intersection of the atoms in `mask` (`mask != 0`).
    pub fn intersection_regions(&self, mask: u32) -> RegionSet {
        RegionSet::supersets_of(self.atom_count(), mask as usize).intersection(&self.universe)
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }

    pub fn proposition(self: &Arc<Self>, regions: RegionSet) -> Proposition {
        let regions = regions.intersection(&self.universe);
        Proposition { regions, model: Arc::clone(self) }
    }

    pub fn empty_proposition(self: &Arc<Self>) -> Proposition {
        self.proposition(RegionSet::empty(self.atom_count()))
    }

    /// The whole frame: every nonempty minterm.
    pub fn full(self: &Arc<Self>) -> Proposition {
        self.proposition(self.universe.clone())
    }

    pub fn atom(self: &Arc<Self>, name: &str) -> Result<Proposition> {
        let index = self
            .frame
            .index_of(name)
            .ok_or_else(|| Error::UnknownAtom { name: name.to_string(), offset: 0 })?;
        Ok(self.proposition(self.atom_regions[index].clone()))
    }

    pub fn expression(&self, text: &str) -> Result<Expression> {
        parse_expression(text, &self.frame)
    }

    /// Parses and canonicalizes in one step.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Proposition> {
        let expr = self.expression(text)?;
        self.canonicalize(&expr)
    }

    /// Evaluates an expression to its canonical region set under the model.
    pub fn canonicalize(self: &Arc<Self>, expr: &Expression) -> Result<Proposition> {
        if self.mode == Mode::Hyper {
            if let Some(offset) = expr.root.first_complement() {
                return Err(Error::ComplementInHyperMode { offset });
            }
        }
        let regions = self.evaluate(&expr.root);
        Ok(Proposition { regions, model: Arc::clone(self) })
    }

    fn evaluate(&self, node: &Node) -> RegionSet {
        match node {
            Node::Atom { index, .. } => self.atom_regions[*index].clone(),
            Node::Union(a, b) => self.evaluate(a).union(&self.evaluate(b)),
            Node::Intersection(a, b) => self.evaluate(a).intersection(&self.evaluate(b)),
            Node::Complement { inner, .. } => self.universe.difference(&self.evaluate(inner)),
        }
    }
}

/// A canonical proposition: the nonempty Venn regions it covers.
///
/// Equality, ordering and hashing look at the region set only; comparing
/// propositions from different models is meaningless.
#[derive(Clone)]
pub struct Proposition {
    regions: RegionSet,
    model: Arc<Model>,
}

impl Proposition {
    pub fn regions(&self) -> &RegionSet {
        &self.regions
    }

    pub fn model(&self) -> &Arc<Model> {
        &self.model
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    fn check(&self, other: &Proposition) -> Result<()> {
        if self.model.same_as(&other.model) {
            Ok(())
        } else {
            Err(Error::ModelMismatch)
        }
    }

    fn with(&self, regions: RegionSet) -> Proposition {
        Proposition { regions, model: Arc::clone(&self.model) }
    }

    pub fn union(&self, other: &Proposition) -> Result<Proposition> {
        self.check(other)?;
        Ok(self.with(self.regions.union(&other.regions)))
    }

    pub fn intersect(&self, other: &Proposition) -> Result<Proposition> {
        self.check(other)?;
        Ok(self.with(self.regions.intersection(&other.regions)))
    }

    /// Complement relative to the whole frame. Super mode only.
    pub fn complement(&self) -> Result<Proposition> {
        if self.model.mode != Mode::Super {
            return Err(Error::ComplementInHyperMode { offset: 0 });
        }
        Ok(self.with(self.model.universe.difference(&self.regions)))
    }

    /// Non-strict inclusion.
    pub fn is_subset(&self, other: &Proposition) -> Result<bool> {
        self.check(other)?;
        Ok(self.regions.is_subset(&other.regions))
    }

    pub fn is_disjoint(&self, other: &Proposition) -> Result<bool> {
        self.check(other)?;
        Ok(self.regions.is_disjoint(&other.regions))
    }

    /// Bitmask hex of the region set, as printed in TSV reports.
    pub fn to_hex(&self) -> String {
        self.regions.to_hex(self.model.atom_count())
    }
}

impl PartialEq for Proposition {
    fn eq(&self, other: &Self) -> bool {
        self.regions == other.regions
    }
}

impl Eq for Proposition {}

impl Hash for Proposition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.regions.hash(state);
    }
}

impl PartialOrd for Proposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Proposition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.regions.cmp(&other.regions)
    }
}

impl fmt::Debug for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Proposition({})", self.render())
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
