use std::fmt;

/// A set of Venn regions (minterms) over a frame of `n` atoms.
///
/// A minterm is identified by the bitmask of the atoms containing it, so
/// region `m` lives at bit `m`. Bit 0 (outside every atom) is never set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegionSet {
    words: Vec<u64>,
}

impl RegionSet {
    pub fn empty(atom_count: usize) -> Self {
        let bits = 1usize << atom_count;
        Self { words: vec![0; bits.div_ceil(64)] }
    }

    /// Every minterm of a frame with `atom_count` atoms.
    pub fn all(atom_count: usize) -> Self {
        let mut set = Self::empty(atom_count);
        for m in 1..(1usize << atom_count) {
            set.insert(m);
        }
        set
    }

    /// Minterms containing every atom of `mask` (the unconstrained
    /// intersection of those atoms).
    pub fn supersets_of(atom_count: usize, mask: usize) -> Self {
        let mut set = Self::empty(atom_count);
        let full = (1usize << atom_count) - 1;
        let free = full & !mask;
        // enumerate submasks of `free`
        let mut sub = free;
        loop {
            let m = mask | sub;
            if m != 0 {
                set.insert(m);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        set
    }

    pub fn insert(&mut self, minterm: usize) {
        self.words[minterm / 64] |= 1 << (minterm % 64);
    }

    pub fn contains(&self, minterm: usize) -> bool {
        self.words
            .get(minterm / 64)
            .is_some_and(|w| w & (1 << (minterm % 64)) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.words.len(), other.words.len());
        Self {
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    /// Minterm identifiers in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + bit)
            })
        })
    }

    /// Fixed-width lowercase hexadecimal of the whole bitmask, most
    /// significant digit first.
    pub fn to_hex(&self, atom_count: usize) -> String {
        let digits = ((1usize << atom_count) / 4).max(1);
        let mut out = String::with_capacity(digits + 2);
        out.push_str("0x");
        for d in (0..digits).rev() {
            let word = self.words[d * 4 / 64];
            let nibble = (word >> ((d * 4) % 64)) & 0xf;
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }
}

impl fmt::Debug for RegionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|m| format!("{m:b}"))).finish()
    }
}
