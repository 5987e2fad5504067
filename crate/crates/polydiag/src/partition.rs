//! Ordered set partitions: the faces of the permutahedron `P_n`.
//!
//! A face `A_1|···|A_p` is a sequence of disjoint nonempty blocks covering
//! `{1..n}`; its dimension is `n - p`. Blocks are bitmasks and are always
//! printed with elements ascending (`12|3|45`), one canonical form per face.
//! Blocks are indexed left-to-right as positions `1..p` throughout.

use std::fmt;
use std::str::FromStr;

use crate::perm::{weak_leq, Permutation, MAX_N};
use crate::{Error, Result};

/// A nonempty subset of `{1..n}` as a bitmask (bit `v-1` means value `v`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block(pub u16);

impl Block {
    pub fn from_elements<I: IntoIterator<Item = u8>>(elems: I) -> Self {
        let mut mask = 0u16;
        for v in elems {
            mask |= 1 << (v - 1);
        }
        Block(mask)
    }

    pub fn empty() -> Self {
        Block(0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, v: u8) -> bool {
        self.0 & (1 << (v - 1)) != 0
    }

    pub fn min_elem(self) -> u8 {
        debug_assert!(self.0 != 0);
        self.0.trailing_zeros() as u8 + 1
    }

    pub fn max_elem(self) -> u8 {
        debug_assert!(self.0 != 0);
        15 - self.0.leading_zeros() as u8 + 1
    }

    pub fn union(self, other: Block) -> Block {
        Block(self.0 | other.0)
    }

    pub fn difference(self, other: Block) -> Block {
        Block(self.0 & !other.0)
    }

    pub fn intersect(self, other: Block) -> Block {
        Block(self.0 & other.0)
    }

    pub fn is_subset(self, other: Block) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements ascending.
    pub fn iter(self) -> impl Iterator<Item = u8> {
        (1..=16u8).filter(move |&v| self.contains(v))
    }

    /// Mask of values strictly greater than `v`.
    pub fn above(v: u8) -> Block {
        Block(!((1u32 << v) - 1) as u16)
    }

    /// All submasks of `self`, including the empty one.
    pub fn subsets(self) -> impl Iterator<Item = Block> {
        let m = self.0;
        let mut sub = m;
        let mut exhausted = false;
        std::iter::from_fn(move || {
            if exhausted {
                return None;
            }
            let out = Block(sub);
            if sub == 0 {
                exhausted = true;
            } else {
                sub = (sub - 1) & m;
            }
            Some(out)
        })
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// An ordered set partition of `{1..n}`; a face of `P_n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedPartition {
    n: u8,
    blocks: Vec<Block>,
}

impl OrderedPartition {
    pub fn new(n: u8, blocks: Vec<Block>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::Notation(format!("n={n} out of range 1..={MAX_N}")));
        }
        let full: u32 = (1u32 << n) - 1;
        let mut seen = 0u32;
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Notation("empty block".into()));
            }
            if seen & b.0 as u32 != 0 {
                return Err(Error::Notation("blocks are not disjoint".into()));
            }
            seen |= b.0 as u32;
        }
        if seen != full {
            return Err(Error::Notation(format!("blocks do not cover 1..={n}")));
        }
        Ok(OrderedPartition { n, blocks })
    }

    pub fn from_elements(n: u8, blocks: &[Vec<u8>]) -> Result<Self> {
        Self::new(
            n,
            blocks
                .iter()
                .map(|b| Block::from_elements(b.iter().copied()))
                .collect(),
        )
    }

    /// The top cell `12…n`.
    pub fn top(n: u8) -> Self {
        OrderedPartition {
            n,
            blocks: vec![Block((1u32 << n) as u16 - 1)],
        }
    }

    /// The vertex with all-singleton blocks in the order of `σ`.
    pub fn singletons(sigma: &Permutation) -> Self {
        OrderedPartition {
            n: sigma.n(),
            blocks: sigma.word().iter().map(|&v| Block(1 << (v - 1))).collect(),
        }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn num_blocks(&self) -> u8 {
        self.blocks.len() as u8
    }

    pub fn dim(&self) -> u8 {
        self.n - self.num_blocks()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// 1-based block position of `v`.
    pub fn level_of(&self, v: u8) -> u8 {
        for (i, b) in self.blocks.iter().enumerate() {
            if b.contains(v) {
                return i as u8 + 1;
            }
        }
        unreachable!("value {v} not in partition")
    }

    pub fn is_vertex(&self) -> bool {
        self.blocks.len() == self.n as usize
    }

    pub fn as_permutation(&self) -> Option<Permutation> {
        if !self.is_vertex() {
            return None;
        }
        Some(Permutation::new(self.blocks.iter().map(|b| b.min_elem()).collect()).unwrap())
    }

    /// The weak-order minimal vertex: each block listed ascending.
    pub fn min_vertex(&self) -> Permutation {
        let mut word = Vec::with_capacity(self.n as usize);
        for b in &self.blocks {
            word.extend(b.iter());
        }
        Permutation::new(word).unwrap()
    }

    /// The weak-order maximal vertex: each block listed descending.
    pub fn max_vertex(&self) -> Permutation {
        let mut word = Vec::with_capacity(self.n as usize);
        for b in &self.blocks {
            let mut elems: Vec<u8> = b.iter().collect();
            elems.reverse();
            word.extend(elems);
        }
        Permutation::new(word).unwrap()
    }

    /// `(min, max)` in the weak order.
    pub fn extreme_vertices(&self) -> (Permutation, Permutation) {
        (self.min_vertex(), self.max_vertex())
    }

    /// All vertices of the face: block-wise orderings, `Π |A_j|!` of them.
    pub fn vertices(&self) -> Vec<Permutation> {
        use itertools::Itertools;
        let per_block: Vec<Vec<Vec<u8>>> = self
            .blocks
            .iter()
            .map(|b| {
                let elems: Vec<u8> = b.iter().collect();
                let k = elems.len();
                elems.into_iter().permutations(k).collect()
            })
            .collect();
        per_block
            .into_iter()
            .multi_cartesian_product()
            .map(|parts| Permutation::new(parts.concat()).unwrap())
            .collect()
    }

    /// A partition is degenerate when some block holds `x < z` straddling a
    /// value `y` of a strictly later block. Vertices are never degenerate.
    pub fn is_degenerate(&self) -> bool {
        let p = self.blocks.len();
        let mut later = Block::empty();
        for j in (0..p).rev() {
            let b = self.blocks[j];
            if b.len() >= 2 && !later.is_empty() {
                // values strictly between min(b) and max(b)
                let lo = b.min_elem();
                let hi = b.max_elem();
                let between = Block(((1u32 << (hi - 1)) - 1) as u16 & !((1u32 << lo) - 1) as u16);
                if !later.intersect(between).is_empty() {
                    return true;
                }
            }
            later = later.union(b);
        }
        false
    }

    /// Mod-2 cellular boundary: every ordered split of one block.
    pub fn boundary(&self) -> Vec<OrderedPartition> {
        let mut out = Vec::new();
        for (j, &b) in self.blocks.iter().enumerate() {
            if b.len() < 2 {
                continue;
            }
            for first in b.subsets() {
                if first.is_empty() || first == b {
                    continue;
                }
                let second = b.difference(first);
                let mut blocks = Vec::with_capacity(self.blocks.len() + 1);
                blocks.extend_from_slice(&self.blocks[..j]);
                blocks.push(first);
                blocks.push(second);
                blocks.extend_from_slice(&self.blocks[j + 1..]);
                out.push(OrderedPartition { n: self.n, blocks });
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Is `self` a face of `other`? True iff every block of `other` is the
    /// union of a consecutive run of blocks of `self`.
    pub fn is_face_of(&self, other: &OrderedPartition) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut i = 0;
        for &big in &other.blocks {
            let mut acc = Block::empty();
            while acc != big {
                if i >= self.blocks.len() || !self.blocks[i].is_subset(big) {
                    return false;
                }
                acc = acc.union(self.blocks[i]);
                i += 1;
            }
        }
        i == self.blocks.len()
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comma = self.n > 9;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            for (t, v) in b.iter().enumerate() {
                if comma && t > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for OrderedPartition {
    type Err = Error;

    /// Blocks separated by `|`; elements are single digits, or
    /// comma-separated for values above 9. `n` is inferred from the content.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Notation("empty partition".into()));
        }
        let mut blocks = Vec::new();
        let mut count = 0u8;
        for tok in s.split('|') {
            let tok = tok.trim();
            let elems: Vec<u8> = if tok.contains(',') {
                tok.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u8>()
                            .map_err(|_| Error::Notation(format!("bad value {t:?}")))
                    })
                    .collect::<Result<_>>()?
            } else {
                tok.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .filter(|&d| d >= 1)
                            .map(|d| d as u8)
                            .ok_or_else(|| Error::Notation(format!("bad digit {c:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            count += elems.len() as u8;
            blocks.push(elems);
        }
        OrderedPartition::from_elements(count, &blocks)
    }
}

/// Face order on `P_n`: `e ≤ f` iff there is an oriented edge-path from
/// `max e` to `min f`, i.e. `weak_leq(max e, min f)`.
pub fn face_leq_p(e: &OrderedPartition, f: &OrderedPartition) -> Result<bool> {
    if e.n() != f.n() {
        return Err(Error::SizeMismatch {
            left: e.n(),
            right: f.n(),
        });
    }
    weak_leq(&e.max_vertex(), &f.min_vertex())
}

/// Lazy enumeration of the surjections `{1..n} -> {1..p}`, i.e. the ordered
/// partitions with exactly `p` blocks, in lexicographic level-vector order.
struct SurjectionIter {
    n: usize,
    p: u8,
    levels: Vec<u8>,
    counts: [u16; MAX_N as usize + 1],
    distinct: u8,
    state: IterState,
}

enum IterState {
    Fresh,
    Running,
    Done,
}

impl SurjectionIter {
    fn new(n: u8, p: u8) -> Self {
        SurjectionIter {
            n: n as usize,
            p,
            levels: vec![0; n as usize],
            counts: [0; MAX_N as usize + 1],
            distinct: 0,
            state: IterState::Fresh,
        }
    }

    fn feasible(&self, pos: usize, v: u8) -> bool {
        let new_distinct = self.distinct + u8::from(self.counts[v as usize] == 0);
        let missing = self.p - new_distinct;
        (missing as usize) < self.n - pos
    }

    fn set(&mut self, pos: usize, v: u8) {
        self.levels[pos] = v;
        if self.counts[v as usize] == 0 {
            self.distinct += 1;
        }
        self.counts[v as usize] += 1;
    }

    fn unset(&mut self, pos: usize) {
        let v = self.levels[pos];
        self.counts[v as usize] -= 1;
        if self.counts[v as usize] == 0 {
            self.distinct -= 1;
        }
    }

    /// Fill positions `from..n` with the smallest feasible values.
    fn fill_min(&mut self, from: usize) {
        for pos in from..self.n {
            let mut chosen = 0;
            for v in 1..=self.p {
                if self.feasible(pos, v) {
                    chosen = v;
                    break;
                }
            }
            debug_assert!(chosen > 0);
            self.set(pos, chosen);
        }
    }

    fn advance(&mut self) -> bool {
        match self.state {
            IterState::Done => false,
            IterState::Fresh => {
                self.state = IterState::Running;
                if self.p as usize > self.n {
                    self.state = IterState::Done;
                    return false;
                }
                self.fill_min(0);
                true
            }
            IterState::Running => {
                let mut pos = self.n;
                while pos > 0 {
                    pos -= 1;
                    let cur = self.levels[pos];
                    self.unset(pos);
                    let mut found = 0;
                    for v in (cur + 1)..=self.p {
                        if self.feasible(pos, v) {
                            found = v;
                            break;
                        }
                    }
                    if found > 0 {
                        self.set(pos, found);
                        self.fill_min(pos + 1);
                        return true;
                    }
                }
                self.state = IterState::Done;
                false
            }
        }
    }

    fn current(&self) -> OrderedPartition {
        let mut blocks = vec![Block::empty(); self.p as usize];
        for (i, &v) in self.levels.iter().enumerate() {
            blocks[v as usize - 1].0 |= 1 << i;
        }
        OrderedPartition {
            n: self.n as u8,
            blocks,
        }
    }
}

impl Iterator for SurjectionIter {
    type Item = OrderedPartition;

    fn next(&mut self) -> Option<OrderedPartition> {
        if self.advance() {
            Some(self.current())
        } else {
            None
        }
    }
}

/// All faces of `P_n`, lazily, top cell first (by ascending block count).
pub fn faces(n: u8) -> impl Iterator<Item = OrderedPartition> {
    (1..=n).flat_map(move |p| SurjectionIter::new(n, p))
}

/// The faces of dimension `dim` (block count `n - dim`), lazily.
pub fn faces_with_dim(n: u8, dim: u8) -> Result<impl Iterator<Item = OrderedPartition>> {
    if dim > n - 1 {
        return Err(Error::DimOutOfRange { n, dim });
    }
    Ok(SurjectionIter::new(n, n - dim))
}
