use super::{Mode, Proposition, RegionSet};

/// Upper bound on cover combinations tried before falling back to greedy.
const EXACT_COVER_BUDGET: usize = 200_000;

/// Literal terms (atoms and negated atoms) are only searched up to this many
/// atoms; beyond it the fallback is full minterms.
const MAX_LITERAL_ATOMS: usize = 8;

/// A conjunction of atoms (`pos`) and negated atoms (`neg`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Cube {
    pos: u32,
    neg: u32,
}

impl Cube {
    fn literals(self) -> u32 {
        self.pos.count_ones() + self.neg.count_ones()
    }

    /// Sort key: literal count, then (atom index, negated) in frame order.
    fn key(self) -> (u32, Vec<(u32, bool)>) {
        let lits = (0..32)
            .filter(|i| (self.pos | self.neg) & (1 << i) != 0)
            .map(|i| (i, self.neg & (1 << i) != 0))
            .collect();
        (self.literals(), lits)
    }
}

#[derive(Debug, Clone)]
struct Candidate {
    cube: Cube,
    regions: RegionSet,
}

impl Proposition {
    /// Deterministic textual form that parses back to the same proposition.
    ///
    /// Prefers a union of atom intersections with the fewest terms, then the
    /// fewest atoms. In super mode, sets with no complement-free cover use
    /// terms with negated atoms (`A&!D`). The empty proposition is `∅`.
    pub fn render(&self) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        let cover = self
            .positive_cover()
            .map(|masks| masks.into_iter().map(|pos| Cube { pos, neg: 0 }).collect())
            .or_else(|| self.literal_cover())
            .unwrap_or_else(|| self.minterm_cover());
        let atoms = self.model.frame().atoms();
        cover
            .into_iter()
            .map(|cube| {
                cube.key()
                    .1
                    .into_iter()
                    .map(|(i, negated)| {
                        let name = &atoms[i as usize];
                        if negated { format!("!{name}") } else { name.clone() }
                    })
                    .collect::<Vec<_>>()
                    .join("&")
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Atom bitmasks of the terms in the rendered positive form, if any.
    pub fn positive_cover(&self) -> Option<Vec<u32>> {
        let n = self.model.atom_count();
        let cubes = (1..(1u32 << n)).map(|pos| Cube { pos, neg: 0 });
        self.cover_from(cubes).map(|c| c.into_iter().map(|cube| cube.pos).collect())
    }

    fn literal_cover(&self) -> Option<Vec<Cube>> {
        let n = self.model.atom_count();
        if self.model.mode() != Mode::Super || n > MAX_LITERAL_ATOMS {
            return None;
        }
        let cubes = (0..3u32.pow(n as u32)).map(|code| {
            let (mut pos, mut neg, mut rest) = (0, 0, code);
            for i in 0..n {
                match rest % 3 {
                    1 => pos |= 1 << i,
                    2 => neg |= 1 << i,
                    _ => {}
                }
                rest /= 3;
            }
            Cube { pos, neg }
        });
        self.cover_from(cubes.filter(|c| c.pos | c.neg != 0))
    }

    fn minterm_cover(&self) -> Vec<Cube> {
        let full = self.model.frame().full_mask();
        self.regions
            .iter()
            .map(|m| Cube { pos: m as u32, neg: full & !(m as u32) })
            .collect()
    }

    fn cube_regions(&self, cube: Cube) -> RegionSet {
        let n = self.model.atom_count();
        let mut out = RegionSet::empty(n);
        for m in self.model.universe().iter() {
            let m = m as u32;
            if m & cube.pos == cube.pos && m & cube.neg == 0 {
                out.insert(m as usize);
            }
        }
        out
    }

    /// Minimum cover of this proposition by maximal cubes drawn from `cubes`.
    fn cover_from(&self, cubes: impl Iterator<Item = Cube>) -> Option<Vec<Cube>> {
        let n = self.model.atom_count();
        let target = &self.regions;
        let mut candidates: Vec<Candidate> = cubes
            .filter_map(|cube| {
                let regions = if cube.neg == 0 {
                    self.model.intersection_regions(cube.pos)
                } else {
                    self.cube_regions(cube)
                };
                (!regions.is_empty() && regions.is_subset(target)).then_some(Candidate { cube, regions })
            })
            .collect();
        candidates.sort_by_key(|c| (c.cube.neg.count_ones(), c.cube.key()));
        // equal region sets: keep the first (fewest negations, then literals)
        let mut unique: Vec<Candidate> = Vec::new();
        for c in candidates {
            if !unique.iter().any(|u| u.regions == c.regions) {
                unique.push(c);
            }
        }
        let covered = unique.iter().fold(RegionSet::empty(n), |acc, c| acc.union(&c.regions));
        if &covered != target {
            return None;
        }
        let maximal: Vec<Candidate> = unique
            .iter()
            .filter(|c| !unique.iter().any(|o| o.regions != c.regions && c.regions.is_subset(&o.regions)))
            .cloned()
            .collect();

        let mut cover = exact_cover(&maximal, target, n).unwrap_or_else(|| greedy_cover(&maximal, target, n));
        cover.sort_by_key(|c| c.key());
        Some(cover)
    }
}

type CoverCost = (u32, u32, Vec<(u32, Vec<(u32, bool)>)>);

fn cost(cubes: &[Cube]) -> CoverCost {
    let literals = cubes.iter().map(|c| c.literals()).sum();
    let negations = cubes.iter().map(|c| c.neg.count_ones()).sum();
    let mut keys: Vec<_> = cubes.iter().map(|c| c.key()).collect();
    keys.sort();
    (literals, negations, keys)
}

/// Smallest cover by `k`-combinations, then fewest literals, then fewest
/// negations, then frame order. `None` when the search budget runs out.
fn exact_cover(candidates: &[Candidate], target: &RegionSet, n: usize) -> Option<Vec<Cube>> {
    let mut budget = EXACT_COVER_BUDGET;
    for k in 1..=candidates.len() {
        let mut best: Option<(CoverCost, Vec<Cube>)> = None;
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let union = idx
                .iter()
                .fold(RegionSet::empty(n), |acc, &i| acc.union(&candidates[i].regions));
            if &union == target {
                let cubes: Vec<Cube> = idx.iter().map(|&i| candidates[i].cube).collect();
                let c = cost(&cubes);
                if best.as_ref().is_none_or(|(b, _)| c < *b) {
                    best = Some((c, cubes));
                }
            }
            if !next_combination(&mut idx, candidates.len()) {
                break;
            }
        }
        if let Some((_, cubes)) = best {
            return Some(cubes);
        }
    }
    None
}

fn next_combination(idx: &mut [usize], len: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < len - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn greedy_cover(candidates: &[Candidate], target: &RegionSet, n: usize) -> Vec<Cube> {
    let mut covered = RegionSet::empty(n);
    let mut chosen = Vec::new();
    while &covered != target {
        // candidates are in preference order; max_by_key keeps the last max
        let best = candidates
            .iter()
            .rev()
            .max_by_key(|c| c.regions.difference(&covered).len())
            .expect("union of candidates equals target");
        covered = covered.union(&best.regions);
        chosen.push(best.cube);
    }
    chosen
}

#[cfg(test)]
mod tests {
    use crate::lattice::{Frame, Mode, Model};

    #[test]
    fn renders_minimal_positive_forms() {
        let frame = Frame::new(["A", "B", "C", "D"]).unwrap();
        let m = Model::with_empty_expressions(frame, Mode::Hyper, &["A&C", "A&D", "B&C"]).unwrap();
        assert_eq!(m.parse("D&(A|B)").unwrap().render(), "B&D");
        assert_eq!(m.parse("B|A").unwrap().render(), "A|B");
        assert_eq!(m.empty_proposition().render(), "∅");
        assert_eq!(m.parse("(A&B)|(B&D)|A").unwrap().render(), "A|B&D");
    }

    #[test]
    fn full_frame_without_constraints() {
        let m = Model::free(Frame::new(["A", "B"]).unwrap(), Mode::Hyper).unwrap();
        assert_eq!(m.full().render(), "A|B");
        assert_eq!(m.parse("A&B").unwrap().render(), "A&B");
    }

    #[test]
    fn negated_literals_in_super_mode() {
        let m = Model::free(Frame::new(["A", "B"]).unwrap(), Mode::Super).unwrap();
        // the frame is exhaustive, so outside B means inside A
        assert_eq!(m.parse("A&!B").unwrap().render(), "!B");
        let p = m.parse("!(A&B)").unwrap();
        assert_eq!(p.render(), "!A|!B");
        assert_eq!(m.parse(&p.render()).unwrap(), p);
        let m = Model::free(Frame::new(["A", "B", "C"]).unwrap(), Mode::Super).unwrap();
        assert_eq!(m.parse("A&!B").unwrap().render(), "A&!B");
    }

    #[test]
    fn positive_form_preferred_over_complement() {
        let frame = Frame::new(["A", "B", "C", "D"]).unwrap();
        let m = Model::with_empty_expressions(frame.clone(), Mode::Super, &["D&(A|B|C)"]).unwrap();
        assert_eq!(m.parse("!D").unwrap().render(), "A|B|C");
        assert_eq!(m.parse("C&!D").unwrap().render(), "C");
        let m = Model::with_empty_expressions(frame, Mode::Super, &["A&D&!B&!C", "A&C&D&!B"]).unwrap();
        assert_eq!(m.parse("!D").unwrap().render(), "!D");
        assert_eq!(m.parse("A&!D").unwrap().render(), "A&!D");
        assert_eq!(m.parse("C&!D").unwrap().render(), "C&!D");
    }

    #[test]
    fn greedy_tie_breaking_prefers_frame_order() {
        use super::{greedy_cover, Candidate, Cube};
        use crate::lattice::RegionSet;
        let m = Model::free(Frame::new(["A", "B"]).unwrap(), Mode::Hyper).unwrap();
        let cands: Vec<Candidate> = [0b01u32, 0b10]
            .iter()
            .map(|&pos| Candidate { cube: Cube { pos, neg: 0 }, regions: m.intersection_regions(pos) })
            .collect();
        let target = RegionSet::all(2);
        let picked: Vec<u32> = greedy_cover(&cands, &target, 2).iter().map(|c| c.pos).collect();
        assert_eq!(picked, vec![0b01, 0b10]);
    }
}
