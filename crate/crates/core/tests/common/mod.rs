//! Brute-force oracles and random scenario generators shared by the
//! integration test targets.
//!
//! The oracles work on raw region sets over a fully enumerated lattice and
//! transcribe the rule definitions term by term. They only share the bitset
//! type with the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::{BigRational, One, Zero};
use qbcr::{Frame, Mode, Model, RegionSet};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Regions = RegionSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    D1,
    D2,
    D3,
}

pub fn frame(n: usize) -> Frame {
    const NAMES: [&str; 6] = ["A", "B", "C", "D", "E", "F"];
    Frame::new(NAMES[..n].iter().copied()).unwrap()
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Regions of atom `i` under the model, computed from the universe.
pub fn atom(model: &Model, i: usize) -> Regions {
    let mut out = RegionSet::empty(model.atom_count());
    for m in model.universe().iter() {
        if m & (1 << i) != 0 {
            out.insert(m);
        }
    }
    out
}

/// Literal fixpoint: repeatedly add pairwise unions and intersections until
/// nothing new appears. Empty sets are dropped.
pub fn closure(model: &Model, atoms: u32) -> BTreeSet<Regions> {
    let mut set: BTreeSet<Regions> = (0..model.atom_count())
        .filter(|i| atoms & (1 << i) != 0)
        .map(|i| atom(model, i))
        .filter(|r| !r.is_empty())
        .collect();
    loop {
        let items: Vec<Regions> = set.iter().cloned().collect();
        let mut grew = false;
        for x in &items {
            for y in &items {
                for z in [x.union(y), x.intersection(y)] {
                    if !z.is_empty() && set.insert(z) {
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

/// Every nonempty proposition: the closure of all atoms in hyper mode, every
/// nonempty subset of the universe in super mode.
pub fn lattice(model: &Model) -> Vec<Regions> {
    match model.mode() {
        Mode::Hyper => closure(model, model.frame().full_mask()).into_iter().collect(),
        Mode::Super => {
            let regions: Vec<usize> = model.universe().iter().collect();
            assert!(regions.len() <= 12, "super lattice too large to enumerate");
            (1u32..(1 << regions.len()))
                .map(|pick| {
                    let mut set = RegionSet::empty(model.atom_count());
                    for (bit, &r) in regions.iter().enumerate() {
                        if pick & (1 << bit) != 0 {
                            set.insert(r);
                        }
                    }
                    set
                })
                .collect()
        }
    }
}

/// Smallest atom set (fewest atoms, then lowest mask) whose closure contains
/// `a`; used as `s(A)` for events given only as region sets.
pub fn generating_atoms(model: &Model, a: &Regions) -> u32 {
    let n = model.atom_count();
    let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
        .into_iter()
        .find(|&m| closure(model, m).contains(a))
        .unwrap_or_else(|| model.frame().full_mask())
}

/// Decomposition by definition: D1 are the parts of `A`; D2 the elements
/// generated by atoms outside `s(A)` (hyper) or the parts of the complement
/// of `A` (super); D3 the rest. Parts of `A` take precedence.
pub fn classify(model: &Model, a: &Regions, s_a: u32, y: &Regions) -> Class {
    if y.is_subset(a) {
        return Class::D1;
    }
    let d2 = match model.mode() {
        Mode::Super => y.is_subset(&model.universe().difference(a)),
        Mode::Hyper => {
            let outside = model.frame().full_mask() & !s_a;
            outside != 0 && closure(model, outside).contains(y)
        }
    };
    if d2 {
        Class::D2
    } else {
        Class::D3
    }
}

fn parts_inside<'a>(lattice: &'a [Regions], a: &'a Regions, w: &'a Regions) -> impl Iterator<Item = &'a Regions> {
    lattice.iter().filter(move |z| z.is_subset(a) && z.is_subset(w))
}

/// Maximal elements (by inclusion) of the parts of `A` contained in `w`.
fn largest_inside(lattice: &[Regions], a: &Regions, w: &Regions) -> Vec<Regions> {
    let inside: Vec<&Regions> = parts_inside(lattice, a, w).collect();
    inside
        .iter()
        .filter(|z| !inside.iter().any(|o| o != *z && z.is_subset(o)))
        .map(|z| (*z).clone())
        .collect()
}

fn mass_of<V: Clone>(prior: &BTreeMap<Regions, V>, x: &Regions, zero: V) -> V {
    prior.get(x).cloned().unwrap_or(zero)
}

/// Proportional conditioning, transcribed over the whole lattice.
pub fn bcr17(lattice: &[Regions], prior: &BTreeMap<Regions, BigRational>, a: &Regions) -> BTreeMap<Regions, BigRational> {
    let zero = BigRational::zero();
    let m = |x: &Regions| mass_of(prior, x, BigRational::zero());
    let d1: Vec<&Regions> = lattice.iter().filter(|x| x.is_subset(a)).collect();
    let outside: Vec<&Regions> = lattice.iter().filter(|x| !x.is_subset(a)).collect();
    let d1_total: BigRational = d1.iter().map(|x| m(x)).sum();
    let mut out = BTreeMap::new();
    if d1_total.is_zero() {
        out.insert(a.clone(), BigRational::one());
        return out;
    }
    let s = |w: &Regions| -> BigRational { d1.iter().filter(|y| y.is_subset(w)).map(|y| m(y)).sum() };
    let pool: BigRational = outside.iter().filter(|z| z.is_disjoint(a)).map(|z| m(z)).sum();
    let s_d1 = (&d1_total + pool) / &d1_total;
    for x in &d1 {
        let mut bracket = s_d1.clone();
        let mut extra = zero.clone();
        for w in &outside {
            if !x.is_subset(w) {
                continue;
            }
            let s_w = s(w);
            if !s_w.is_zero() {
                bracket += m(w) / s_w;
            } else {
                let largest = largest_inside(lattice, a, w);
                if largest.contains(x) {
                    extra += m(w) / BigRational::from_integer((largest.len() as i64).into());
                }
            }
        }
        let value = m(x) * bracket + extra;
        if !value.is_zero() {
            out.insert((*x).clone(), value);
        }
    }
    out
}

/// Shafer conditioning by definition: combine with the point mass on `A`.
pub fn scr(prior: &BTreeMap<Regions, BigRational>, a: &Regions) -> Option<BTreeMap<Regions, BigRational>> {
    let mut out: BTreeMap<Regions, BigRational> = BTreeMap::new();
    let mut kept = BigRational::zero();
    for (y, v) in prior {
        let meet = y.intersection(a);
        if !meet.is_empty() {
            kept += v;
            *out.entry(meet).or_insert_with(BigRational::zero) += v;
        }
    }
    if kept.is_zero() {
        return None;
    }
    Some(out.into_iter().map(|(k, v)| (k, v / &kept)).collect())
}

/// Bayesian conditioning of a prior on singletons.
pub fn bayes(prior: &BTreeMap<Regions, BigRational>, a: &Regions) -> BTreeMap<Regions, BigRational> {
    let total: BigRational = prior.iter().filter(|(y, _)| y.is_subset(a)).map(|(_, v)| v.clone()).sum();
    prior
        .iter()
        .filter(|(y, _)| y.is_subset(a))
        .map(|(y, v)| (y.clone(), v / &total))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qualitative {
    Prudent,
    Uniform,
}

/// Qualitative conditioning over the whole lattice, labels as indices with
/// saturating addition at `max` and floor division.
pub fn qbcr(
    lattice: &[Regions],
    prior: &BTreeMap<Regions, u32>,
    a: &Regions,
    max: u32,
    rule: Qualitative,
) -> BTreeMap<Regions, u32> {
    let qm = |x: &Regions| mass_of(prior, x, 0);
    let d1: Vec<&Regions> = lattice.iter().filter(|x| x.is_subset(a)).collect();
    let outside: Vec<&Regions> = lattice.iter().filter(|x| !x.is_subset(a)).collect();
    let q_f = d1.iter().filter(|z| qm(z) != 0).count() as u32;
    // focal elements with no part of A inside
    let stranded: Vec<&&Regions> = outside
        .iter()
        .filter(|y| parts_inside(lattice, a, y).next().is_none())
        .collect();
    let mut out = BTreeMap::new();
    for x in &d1 {
        let mut sum = qm(x);
        for y in &outside {
            let largest = largest_inside(lattice, a, y);
            assert!(largest.len() <= 1, "the largest part of A inside Y is unique");
            if largest.first() == Some(*x) {
                sum += qm(y);
            }
        }
        let fallback: u32 = stranded.iter().map(|y| qm(y)).sum();
        match rule {
            Qualitative::Uniform if q_f > 0 => {
                if qm(x) != 0 {
                    sum += stranded.iter().map(|y| qm(y) / q_f).sum::<u32>();
                }
            }
            _ => {
                if *x == a {
                    sum += fallback;
                }
            }
        }
        let label = sum.min(max);
        if label != 0 {
            out.insert((*x).clone(), label);
        }
    }
    out
}

/// Model with each nonempty minterm declared empty with probability `p`,
/// always keeping at least one region.
pub fn random_model(rng: &mut impl Rng, n: usize, mode: Mode, p: f64) -> Arc<Model> {
    loop {
        let mut empty = RegionSet::empty(n);
        for m in 1..(1usize << n) {
            if rng.gen_bool(p) {
                empty.insert(m);
            }
        }
        if let Ok(model) = Model::new(frame(n), mode, empty) {
            return model;
        }
    }
}

/// Random expression over the frame; complements only in super mode.
pub fn random_expression(rng: &mut impl Rng, model: &Model, depth: u32) -> String {
    let atoms = model.frame().atoms();
    if depth == 0 || rng.gen_bool(0.35) {
        let name = atoms.choose(rng).unwrap().clone();
        return if model.mode() == Mode::Super && rng.gen_bool(0.2) { format!("!{name}") } else { name };
    }
    let left = random_expression(rng, model, depth - 1);
    let right = random_expression(rng, model, depth - 1);
    let op = if rng.gen_bool(0.5) { "|" } else { "&" };
    let joined = format!("({left}{op}{right})");
    if model.mode() == Mode::Super && rng.gen_bool(0.15) {
        format!("!{joined}")
    } else {
        joined
    }
}

/// A random nonempty lattice element with its source expression.
pub fn random_proposition(rng: &mut impl Rng, model: &Arc<Model>) -> (String, qbcr::Proposition) {
    loop {
        let text = random_expression(rng, model, 3);
        let p = model.parse(&text).unwrap();
        if !p.is_empty() {
            return (text, p);
        }
    }
}

/// Up to `k` distinct focal elements drawn from `pool`.
pub fn pick_focals(rng: &mut impl Rng, pool: &[Regions], k: usize) -> Vec<Regions> {
    let distinct: Vec<Regions> = pool.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut chosen: Vec<Regions> = distinct.choose_multiple(rng, k.min(distinct.len())).cloned().collect();
    chosen.sort();
    chosen
}

/// Random positive rational masses summing to exactly 1.
pub fn random_masses(rng: &mut impl Rng, focals: &[Regions]) -> BTreeMap<Regions, BigRational> {
    let weights: Vec<i64> = focals.iter().map(|_| rng.gen_range(1..=20)).collect();
    let total: i64 = weights.iter().sum();
    focals.iter().cloned().zip(weights).map(|(f, w)| (f, rational(w, total))).collect()
}

/// Random positive label indices summing to exactly `max` (needs at least
/// as many units as focal elements; extra focals are dropped).
pub fn random_labels_exact(rng: &mut impl Rng, focals: &[Regions], max: u32) -> BTreeMap<Regions, u32> {
    let k = focals.len().min(max as usize).max(1);
    let mut cuts: Vec<u32> = (1..max).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<u32> = cuts.into_iter().take(k - 1).collect();
    cuts.sort();
    let mut out = BTreeMap::new();
    let mut prev = 0;
    for (f, cut) in focals.iter().zip(cuts.into_iter().chain([max])) {
        out.insert(f.clone(), cut - prev);
        prev = cut;
    }
    out
}

/// Random positive label indices with total at most `max`.
pub fn random_labels_bounded(rng: &mut impl Rng, focals: &[Regions], max: u32) -> BTreeMap<Regions, u32> {
    let budget = rng.gen_range(focals.len().min(max as usize) as u32..=max);
    let mut out = random_labels_exact(rng, focals, budget.max(1));
    out.retain(|_, v| *v > 0);
    out
}
