//! Partition of the nonempty propositions into the classes `D1`, `D2`, `D3`
//! induced by a conditioning event `A`.
//!
//! `D1` holds the nonempty parts of `A`. In hyper-power set mode `D2` holds
//! the propositions generated by the atoms outside `s(A)` under `∪` and `∩`;
//! in super-power set mode it holds the nonempty parts of the complement of
//! `A`. `D3` is everything else.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Expression, Mode, Model, Proposition, RegionSet};

/// Most generator atoms accepted by [`enumerate_closure`].
pub const MAX_CLOSURE_GENERATORS: usize = 5;
/// Most nonempty minterms for super-power set enumeration.
pub const MAX_SUPER_ENUMERATION_REGIONS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecompositionClass {
    D1,
    D2,
    D3,
}

impl fmt::Display for DecompositionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecompositionClass::D1 => "D1",
            DecompositionClass::D2 => "D2",
            DecompositionClass::D3 => "D3",
        })
    }
}

/// A nonempty conditioning event and the atoms `s(A)` it is written with.
#[derive(Debug, Clone)]
pub struct DecompositionContext {
    event: Proposition,
    event_atoms: u32,
}

impl DecompositionContext {
    /// `event_atoms` is the bitmask of atoms composing the event's formula.
    pub fn new(event: Proposition, event_atoms: u32) -> Result<Self> {
        if event.is_empty() {
            return Err(Error::ImpossibleProblem);
        }
        let event_atoms = event_atoms & event.model().frame().full_mask();
        Ok(Self { event, event_atoms })
    }

    /// `s(A)` is taken from the syntax of `expr`.
    pub fn from_expression(model: &Arc<Model>, expr: &Expression) -> Result<Self> {
        let event = model.canonicalize(expr)?;
        Self::new(event, expr.atom_mask())
    }

    /// `s(A)` is taken from the rendered positive form of the event, or
    /// from the atoms touching its regions when no positive form exists.
    pub fn from_proposition(event: Proposition) -> Result<Self> {
        let atoms = match event.positive_cover() {
            Some(cover) => cover.iter().fold(0, |acc, m| acc | m),
            None => event.regions().iter().fold(0, |acc, m| acc | m as u32),
        };
        Self::new(event, atoms)
    }

    pub fn event(&self) -> &Proposition {
        &self.event
    }

    pub fn event_atoms(&self) -> u32 {
        self.event_atoms
    }

    pub fn mode(&self) -> Mode {
        self.event.model().mode()
    }

    pub fn classify(&self, y: &Proposition) -> Result<DecompositionClass> {
        if !self.event.model().same_as(y.model()) {
            return Err(Error::ModelMismatch);
        }
        if y.is_empty() {
            return Err(Error::EmptyProposition);
        }
        Ok(self.classify_regions(y.regions()))
    }

    /// Classification of a nonempty canonical region set.
    pub fn classify_regions(&self, y: &RegionSet) -> DecompositionClass {
        let a = self.event.regions();
        if y.is_subset(a) {
            return DecompositionClass::D1;
        }
        let in_d2 = match self.mode() {
            Mode::Super => y.is_disjoint(a),
            Mode::Hyper => self.generated_outside_event(y),
        };
        if in_d2 {
            DecompositionClass::D2
        } else {
            DecompositionClass::D3
        }
    }

    /// Whether `y` is a `∪`/`∩` combination of the atoms outside `s(A)`.
    ///
    /// Every such combination is a union of intersections of those atoms,
    /// so the smallest generated superset of `y` is the union, over the
    /// regions of `y`, of the intersection of the outside atoms containing
    /// each region. `y` is generated iff that superset equals `y`.
    fn generated_outside_event(&self, y: &RegionSet) -> bool {
        let model = self.event.model();
        let outside = model.frame().full_mask() & !self.event_atoms;
        let mut hull = RegionSet::empty(model.atom_count());
        let mut seen = HashSet::new();
        for region in y.iter() {
            let t = region as u32 & outside;
            if t == 0 {
                return false;
            }
            if seen.insert(t) {
                hull = hull.union(&model.intersection_regions(t));
            }
        }
        &hull == y
    }
}

/// Classifies each focal element.
pub fn decompose<'a, I>(focals: I, ctx: &DecompositionContext) -> Result<Vec<(Proposition, DecompositionClass)>>
where
    I: IntoIterator<Item = &'a Proposition>,
{
    focals
        .into_iter()
        .map(|y| ctx.classify(y).map(|class| (y.clone(), class)))
        .collect()
}

/// Fixpoint closure of the given atoms under pairwise `∪` and `∩`, with the
/// empty proposition removed. Sorted by region set.
pub fn enumerate_closure(atom_mask: u32, model: &Arc<Model>) -> Result<Vec<Proposition>> {
    let generators = atom_mask.count_ones() as usize;
    if generators > MAX_CLOSURE_GENERATORS {
        return Err(Error::Capacity { got: generators, limit: MAX_CLOSURE_GENERATORS });
    }
    let n = model.atom_count();
    let mut members: Vec<RegionSet> = Vec::new();
    let mut seen: HashSet<RegionSet> = HashSet::new();
    let mut pending: Vec<RegionSet> = (0..n)
        .filter(|i| atom_mask & (1 << i) != 0)
        .map(|i| model.atom_regions(i).clone())
        .collect();
    while let Some(next) = pending.pop() {
        if next.is_empty() || !seen.insert(next.clone()) {
            continue;
        }
        for other in &members {
            for combined in [next.union(other), next.intersection(other)] {
                if !combined.is_empty() && !seen.contains(&combined) {
                    pending.push(combined);
                }
            }
        }
        members.push(next);
    }
    members.sort();
    Ok(members.into_iter().map(|r| model.proposition(r)).collect())
}

/// Every nonempty proposition of the model's lattice: the `∪`/`∩` closure of
/// all atoms in hyper mode, every nonempty set of regions in super mode.
pub fn enumerate_lattice(model: &Arc<Model>) -> Result<Vec<Proposition>> {
    match model.mode() {
        Mode::Hyper => enumerate_closure(model.frame().full_mask(), model),
        Mode::Super => {
            let regions: Vec<usize> = model.universe().iter().collect();
            if regions.len() > MAX_SUPER_ENUMERATION_REGIONS {
                return Err(Error::Capacity {
                    got: regions.len(),
                    limit: MAX_SUPER_ENUMERATION_REGIONS,
                });
            }
            let n = model.atom_count();
            let mut out: Vec<Proposition> = (1u32..(1 << regions.len()))
                .map(|pick| {
                    let mut set = RegionSet::empty(n);
                    for (bit, &r) in regions.iter().enumerate() {
                        if pick & (1 << bit) != 0 {
                            set.insert(r);
                        }
                    }
                    model.proposition(set)
                })
                .collect();
            out.sort();
            Ok(out)
        }
    }
}
