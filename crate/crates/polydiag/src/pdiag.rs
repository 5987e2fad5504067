//! Strong complementary pairs, step matrices, shift actions, and the
//! permutahedron diagonal `Δ_P`.
//!
//! For a vertex `σ` of `P_n`, reading the word left-to-right and
//! right-to-left cuts it into maximal decreasing runs; the two run
//! partitions form the strong complementary pair `a_σ × b_σ` with
//! `max a_σ = σ = min b_σ`. Right shifts act on the first factor, left
//! shifts on the second, and the union of all shift images over all `σ`
//! is `Δ_P` of the top cell.
//!
//! Shift positions are always 1-based, counted left-to-right in the
//! printed partition. A right shift at position `j` moves an admissible
//! set from block `j` into block `j+1`; a left shift at position `j`
//! moves one from block `j` into block `j-1`. Left-shift stage sequences
//! are recorded as `N = (N_1, …, N_{q-1})` where `N_i` acts at print
//! position `q - i + 1`, so `N_1` drains the rightmost block first.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::partition::{Block, OrderedPartition};
use crate::perm::Permutation;
use crate::{Error, Result};

/// Maximal decreasing runs of a word, read in both directions.
#[derive(Clone, Debug)]
pub struct RunDecomposition {
    /// Runs of the word read left-to-right, in word order.
    pub left: Vec<Block>,
    /// Runs of the word read right-to-left, listed left-to-right as they
    /// sit in the word (these are the maximal increasing runs of the word).
    pub right: Vec<Block>,
}

impl RunDecomposition {
    pub fn of(sigma: &Permutation) -> Self {
        let w = sigma.word();
        let mut left = Vec::new();
        let mut cur = Block(1 << (w[0] - 1));
        for pair in w.windows(2) {
            if pair[1] < pair[0] {
                cur = cur.union(Block(1 << (pair[1] - 1)));
            } else {
                left.push(cur);
                cur = Block(1 << (pair[1] - 1));
            }
        }
        left.push(cur);

        let mut right = Vec::new();
        let mut cur = Block(1 << (w[0] - 1));
        for pair in w.windows(2) {
            if pair[1] > pair[0] {
                cur = cur.union(Block(1 << (pair[1] - 1)));
            } else {
                right.push(cur);
                cur = Block(1 << (pair[1] - 1));
            }
        }
        right.push(cur);

        RunDecomposition { left, right }
    }
}

/// `a_σ`: the left-to-right decreasing-run partition; `max a_σ = σ`.
pub fn left_run_cell(sigma: &Permutation) -> OrderedPartition {
    OrderedPartition::new(sigma.n(), RunDecomposition::of(sigma).left).unwrap()
}

/// `b_σ`: the increasing-run partition; `min b_σ = σ`.
pub fn right_run_cell(sigma: &Permutation) -> OrderedPartition {
    OrderedPartition::new(sigma.n(), RunDecomposition::of(sigma).right).unwrap()
}

/// Which polytope a diagonal lives on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Polytope {
    P,
    K,
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polytope::P => write!(f, "P"),
            Polytope::K => write!(f, "K"),
        }
    }
}

/// A stage sequence of shift sets. Stage `i` holds the set moved at that
/// stage; empty sets are legal stages.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ShiftSequence(pub Vec<Block>);

impl ShiftSequence {
    pub fn empty(stages: usize) -> Self {
        ShiftSequence(vec![Block::empty(); stages])
    }

    /// The sequence with trailing empty stages removed.
    pub fn trimmed(&self) -> Vec<Block> {
        let mut v = self.0.clone();
        while v.last().is_some_and(|b| b.is_empty()) {
            v.pop();
        }
        v
    }

    pub fn from_elements(stages: &[&[u8]]) -> Self {
        ShiftSequence(
            stages
                .iter()
                .map(|s| Block::from_elements(s.iter().copied()))
                .collect(),
        )
    }
}

impl fmt::Display for ShiftSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.trimmed().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b:?}")?;
        }
        write!(f, ")")
    }
}

/// One component of `Δ_P` with its provenance `(σ, M, N)`:
/// `alpha = R_M(a_σ)` and `beta = L_N(b_σ)`.
#[derive(Clone, Debug)]
pub struct ComplementaryPair {
    pub alpha: OrderedPartition,
    pub beta: OrderedPartition,
    pub sigma: Permutation,
    pub m: ShiftSequence,
    pub n_moves: ShiftSequence,
}

impl fmt::Display for ComplementaryPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} × {}", self.alpha, self.beta)
    }
}

/// The strong complementary pair of `σ`, with empty shift provenance.
pub fn scp(sigma: &Permutation) -> ComplementaryPair {
    let alpha = left_run_cell(sigma);
    let beta = right_run_cell(sigma);
    let m = ShiftSequence::empty(alpha.num_blocks() as usize - 1);
    let n_moves = ShiftSequence::empty(beta.num_blocks() as usize - 1);
    ComplementaryPair {
        alpha,
        beta,
        sigma: sigma.clone(),
        m,
        n_moves,
    }
}

/// Right-shift action: move `M ⊆ A_j \ {min A_j}` with `min M > max A_{j+1}`
/// from block `j` into block `j+1`. `M = ∅` is the identity.
pub fn right_shift(a: &OrderedPartition, j: u8, m: Block) -> Result<OrderedPartition> {
    let p = a.num_blocks();
    if j < 1 || j >= p {
        return Err(Error::RejectedMove {
            position: j,
            reason: format!("position must satisfy 1 ≤ j < p = {p}"),
        });
    }
    if m.is_empty() {
        return Ok(a.clone());
    }
    let src = a.blocks()[j as usize - 1];
    let dst = a.blocks()[j as usize];
    if !m.is_subset(src.difference(Block(1 << (src.min_elem() - 1)))) {
        return Err(Error::RejectedMove {
            position: j,
            reason: format!("{m:?} is not a subset of block {j} minus its minimum"),
        });
    }
    if m.min_elem() <= dst.max_elem() {
        return Err(Error::RejectedMove {
            position: j,
            reason: format!(
                "min {m:?} = {} does not exceed max of block {} = {}",
                m.min_elem(),
                j + 1,
                dst.max_elem()
            ),
        });
    }
    let mut blocks = a.blocks().to_vec();
    blocks[j as usize - 1] = src.difference(m);
    blocks[j as usize] = dst.union(m);
    OrderedPartition::new(a.n(), blocks)
}

/// Left-shift action: move `N ⊆ A_j \ {min A_j}` with `min N > max A_{j-1}`
/// from block `j` into block `j-1`. `N = ∅` is the identity.
pub fn left_shift(a: &OrderedPartition, j: u8, nset: Block) -> Result<OrderedPartition> {
    let p = a.num_blocks();
    if j < 2 || j > p {
        return Err(Error::RejectedMove {
            position: j,
            reason: format!("position must satisfy 2 ≤ j ≤ p = {p}"),
        });
    }
    if nset.is_empty() {
        return Ok(a.clone());
    }
    let src = a.blocks()[j as usize - 1];
    let dst = a.blocks()[j as usize - 2];
    if !nset.is_subset(src.difference(Block(1 << (src.min_elem() - 1)))) {
        return Err(Error::RejectedMove {
            position: j,
            reason: format!("{nset:?} is not a subset of block {j} minus its minimum"),
        });
    }
    if nset.min_elem() <= dst.max_elem() {
        return Err(Error::RejectedMove {
            position: j,
            reason: format!(
                "min {nset:?} = {} does not exceed max of block {} = {}",
                nset.min_elem(),
                j - 1,
                dst.max_elem()
            ),
        });
    }
    let mut blocks = a.blocks().to_vec();
    blocks[j as usize - 1] = src.difference(nset);
    blocks[j as usize - 2] = dst.union(nset);
    OrderedPartition::new(a.n(), blocks)
}

/// Eligible move set at print position `pos` of `cur` for a rightward move
/// into `pos+1` (`dir = +1`) or leftward into `pos-1` (`dir = -1`).
fn eligible(cur: &[Block], pos: usize, dir: i8) -> Block {
    let src = cur[pos];
    let dst = cur[(pos as i8 + dir) as usize];
    src.difference(Block(1 << (src.min_elem() - 1)))
        .intersect(Block::above(dst.max_elem()))
}

/// All right-shift images `R_M(a)`, sweeping positions `1..p-1` and choosing
/// each stage's set from the current (already shifted) block content.
pub(crate) fn right_sweep(a: &OrderedPartition) -> Vec<(OrderedPartition, ShiftSequence)> {
    let p = a.blocks().len();
    let mut out = Vec::new();
    let mut stages: Vec<Block> = Vec::new();
    fn rec(
        cur: &mut Vec<Block>,
        stage: usize,
        n: u8,
        stages: &mut Vec<Block>,
        out: &mut Vec<(OrderedPartition, ShiftSequence)>,
    ) {
        let p = cur.len();
        if stage + 1 >= p {
            out.push((
                OrderedPartition::new(n, cur.clone()).unwrap(),
                ShiftSequence(stages.clone()),
            ));
            return;
        }
        let elig = eligible(cur, stage, 1);
        for m in elig.subsets() {
            let (src, dst) = (cur[stage], cur[stage + 1]);
            cur[stage] = src.difference(m);
            cur[stage + 1] = dst.union(m);
            stages.push(m);
            rec(cur, stage + 1, n, stages, out);
            stages.pop();
            cur[stage] = src;
            cur[stage + 1] = dst;
        }
    }
    let mut cur = a.blocks().to_vec();
    if p == 1 {
        return vec![(a.clone(), ShiftSequence(Vec::new()))];
    }
    rec(&mut cur, 0, a.n(), &mut stages, &mut out);
    out
}

/// All left-shift images `L_N(b)`, sweeping print positions `q` down to `2`.
/// Stage `i` of the returned sequences acts at print position `q - i + 1`.
pub(crate) fn left_sweep(b: &OrderedPartition) -> Vec<(OrderedPartition, ShiftSequence)> {
    let q = b.blocks().len();
    let mut out = Vec::new();
    let mut stages: Vec<Block> = Vec::new();
    fn rec(
        cur: &mut Vec<Block>,
        pos: usize, // 0-based print index of the source block
        n: u8,
        stages: &mut Vec<Block>,
        out: &mut Vec<(OrderedPartition, ShiftSequence)>,
    ) {
        if pos == 0 {
            out.push((
                OrderedPartition::new(n, cur.clone()).unwrap(),
                ShiftSequence(stages.clone()),
            ));
            return;
        }
        let elig = eligible(cur, pos, -1);
        for m in elig.subsets() {
            let (src, dst) = (cur[pos], cur[pos - 1]);
            cur[pos] = src.difference(m);
            cur[pos - 1] = dst.union(m);
            stages.push(m);
            rec(cur, pos - 1, n, stages, out);
            stages.pop();
            cur[pos] = src;
            cur[pos - 1] = dst;
        }
    }
    let mut cur = b.blocks().to_vec();
    if q == 1 {
        return vec![(b.clone(), ShiftSequence(Vec::new()))];
    }
    rec(&mut cur, q - 1, b.n(), &mut stages, &mut out);
    out
}

/// The full set `A_σ × B_σ` of complementary pairs generated from the SCP of
/// `σ` by admissible right-shift and left-shift stage sequences.
pub fn enumerate_cps(sigma: &Permutation) -> Vec<ComplementaryPair> {
    let base = scp(sigma);
    let lefts = right_sweep(&base.alpha);
    let rights = left_sweep(&base.beta);
    let mut out = Vec::with_capacity(lefts.len() * rights.len());
    for (alpha, m) in &lefts {
        for (beta, n_moves) in &rights {
            out.push(ComplementaryPair {
                alpha: alpha.clone(),
                beta: beta.clone(),
                sigma: sigma.clone(),
                m: m.clone(),
                n_moves: n_moves.clone(),
            });
        }
    }
    out.sort_by(|x, y| (&x.alpha, &x.beta).cmp(&(&y.alpha, &y.beta)));
    out
}

/// A set of diagonal components with a canonical total order, so that
/// serialization is deterministic. Mod-2 semantics: no multiplicities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagonalSet<T> {
    pub polytope: Polytope,
    pub n: u8,
    components: Vec<(T, T)>,
}

impl<T: Ord + Clone> DiagonalSet<T> {
    pub fn from_pairs(polytope: Polytope, n: u8, mut pairs: Vec<(T, T)>) -> Self {
        pairs.sort();
        pairs.dedup();
        DiagonalSet {
            polytope,
            n,
            components: pairs,
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains(&self, pair: &(T, T)) -> bool {
        self.components.binary_search(pair).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(T, T)> {
        self.components.iter()
    }

    pub fn components(&self) -> &[(T, T)] {
        &self.components
    }

    /// Components of `self` absent from `other`, in canonical order.
    pub fn difference(&self, other: &DiagonalSet<T>) -> Vec<(T, T)> {
        self.components
            .iter()
            .filter(|p| !other.contains(p))
            .cloned()
            .collect()
    }
}

/// `Δ_P` of the top cell of `P_n`: the union over all `σ ∈ S_n` of
/// `A_σ × B_σ`, deduplicated.
pub fn delta_p_top(n: u8) -> DiagonalSet<OrderedPartition> {
    let sigmas: Vec<Permutation> = Permutation::all(n).collect();
    let pairs: Vec<(OrderedPartition, OrderedPartition)> = sigmas
        .par_iter()
        .flat_map_iter(|sigma| {
            enumerate_cps(sigma)
                .into_iter()
                .map(|cp| (cp.alpha, cp.beta))
        })
        .collect();
    DiagonalSet::from_pairs(Polytope::P, n, pairs)
}

/// Comultiplicative extension of `Δ_P` to an arbitrary face: each block is
/// relabeled to `{1..|A_i|}`, gets its own top-cell diagonal, and the
/// per-block components are concatenated in every combination.
pub fn delta_p_face(a: &OrderedPartition) -> DiagonalSet<OrderedPartition> {
    let factors: Vec<Vec<(Vec<Block>, Vec<Block>)>> = a
        .blocks()
        .iter()
        .map(|b| {
            let elems: Vec<u8> = b.iter().collect();
            let m = elems.len() as u8;
            delta_p_top(m)
                .iter()
                .map(|(x, y)| (relabel(x, &elems), relabel(y, &elems)))
                .collect()
        })
        .collect();

    let mut pairs = Vec::new();
    let mut choice = vec![0usize; factors.len()];
    loop {
        let mut alpha = Vec::new();
        let mut beta = Vec::new();
        for (f, &c) in factors.iter().zip(&choice) {
            alpha.extend_from_slice(&f[c].0);
            beta.extend_from_slice(&f[c].1);
        }
        pairs.push((
            OrderedPartition::new(a.n(), alpha).unwrap(),
            OrderedPartition::new(a.n(), beta).unwrap(),
        ));
        // odometer over component choices
        let mut i = 0;
        loop {
            if i == factors.len() {
                return DiagonalSet::from_pairs(Polytope::P, a.n(), pairs);
            }
            choice[i] += 1;
            if choice[i] < factors[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Map blocks of a partition of `{1..m}` through `i ↦ elems[i-1]`.
fn relabel(x: &OrderedPartition, elems: &[u8]) -> Vec<Block> {
    x.blocks()
        .iter()
        .map(|b| Block::from_elements(b.iter().map(|v| elems[v as usize - 1])))
        .collect()
}

/// The `q × p` step matrix of `σ`: rows are the increasing runs (row 1 is
/// the rightmost run), columns the decreasing runs, and the entry at
/// `(i, j)` is the unique element of their intersection, or 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StepMatrix {
    pub rows: u8,
    pub cols: u8,
    entries: Vec<u8>, // row-major; 0 = empty
}

impl StepMatrix {
    pub fn of(sigma: &Permutation) -> StepMatrix {
        let rd = RunDecomposition::of(sigma);
        let p = rd.left.len();
        let q = rd.right.len();
        let mut entries = vec![0u8; p * q];
        // right runs listed left-to-right in the word are →σ_q, …, →σ_1;
        // row i (1-based, top) is →σ_i.
        for (rev_i, rblock) in rd.right.iter().enumerate() {
            let i = q - 1 - rev_i;
            for (j, lblock) in rd.left.iter().enumerate() {
                let inter = rblock.intersect(*lblock);
                if !inter.is_empty() {
                    debug_assert_eq!(inter.len(), 1);
                    entries[i * p + j] = inter.min_elem();
                }
            }
        }
        StepMatrix {
            rows: q as u8,
            cols: p as u8,
            entries,
        }
    }

    pub fn entry(&self, i: u8, j: u8) -> u8 {
        self.entries[(i as usize - 1) * self.cols as usize + (j as usize - 1)]
    }

    pub fn row_values(&self, i: u8) -> Block {
        let mut b = Block::empty();
        for j in 1..=self.cols {
            let v = self.entry(i, j);
            if v > 0 {
                b = b.union(Block(1 << (v - 1)));
            }
        }
        b
    }

    pub fn col_values(&self, j: u8) -> Block {
        let mut b = Block::empty();
        for i in 1..=self.rows {
            let v = self.entry(i, j);
            if v > 0 {
                b = b.union(Block(1 << (v - 1)));
            }
        }
        b
    }

    /// The step property: positive entries in each row and each column are
    /// contiguous and increasing (left-to-right, top-to-bottom).
    pub fn is_step(&self) -> bool {
        let line_ok = |vals: Vec<u8>| {
            let pos: Vec<(usize, u8)> = vals
                .iter()
                .copied()
                .enumerate()
                .filter(|&(_, v)| v > 0)
                .collect();
            if pos.is_empty() {
                return false;
            }
            let contiguous = pos.last().unwrap().0 - pos[0].0 + 1 == pos.len();
            let increasing = pos.windows(2).all(|w| w[0].1 < w[1].1);
            contiguous && increasing
        };
        (1..=self.rows).all(|i| line_ok((1..=self.cols).map(|j| self.entry(i, j)).collect()))
            && (1..=self.cols).all(|j| line_ok((1..=self.rows).map(|i| self.entry(i, j)).collect()))
    }

    /// Matrix form of the right-shift action: move the values `m` from
    /// column `j` to column `j+1`, each staying in its row.
    pub fn right_shift(&self, j: u8, m: Block) -> Result<StepMatrix> {
        self.shift_line(false, j, m)
    }

    /// Matrix form of the left-shift (down-shift) action: move the values
    /// `nset` from row `i` to row `i+1`, each staying in its column.
    pub fn down_shift(&self, i: u8, nset: Block) -> Result<StepMatrix> {
        self.shift_line(true, i, nset)
    }

    fn shift_line(&self, by_row: bool, idx: u8, m: Block) -> Result<StepMatrix> {
        let limit = if by_row { self.rows } else { self.cols };
        if idx < 1 || idx >= limit {
            return Err(Error::RejectedMove {
                position: idx,
                reason: format!("line index must satisfy 1 ≤ i < {limit}"),
            });
        }
        let line = if by_row {
            self.row_values(idx)
        } else {
            self.col_values(idx)
        };
        let next = if by_row {
            self.row_values(idx + 1)
        } else {
            self.col_values(idx + 1)
        };
        if m.is_empty() {
            return Ok(self.clone());
        }
        if !m.is_subset(line.difference(Block(1 << (line.min_elem() - 1)))) {
            return Err(Error::RejectedMove {
                position: idx,
                reason: format!("{m:?} is not a subset of the line minus its minimum"),
            });
        }
        if m.min_elem() <= next.max_elem() {
            return Err(Error::RejectedMove {
                position: idx,
                reason: format!("min {m:?} does not exceed the next line's max"),
            });
        }
        let mut out = self.clone();
        let p = self.cols as usize;
        for v in m.iter() {
            if by_row {
                for j in 0..p {
                    if out.entries[(idx as usize - 1) * p + j] == v {
                        out.entries[(idx as usize - 1) * p + j] = 0;
                        out.entries[idx as usize * p + j] = v;
                    }
                }
            } else {
                for i in 0..self.rows as usize {
                    if out.entries[i * p + (idx as usize - 1)] == v {
                        out.entries[i * p + (idx as usize - 1)] = 0;
                        out.entries[i * p + idx as usize] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Read the complementary pair off the matrix: columns give the first
    /// factor, rows (bottom row first) the second.
    pub fn to_pair(&self, n: u8) -> (OrderedPartition, OrderedPartition) {
        let alpha: Vec<Block> = (1..=self.cols).map(|j| self.col_values(j)).collect();
        let beta: Vec<Block> = (1..=self.rows).rev().map(|i| self.row_values(i)).collect();
        (
            OrderedPartition::new(n, alpha).unwrap(),
            OrderedPartition::new(n, beta).unwrap(),
        )
    }
}

impl fmt::Display for StepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.rows {
            if i > 1 {
                writeln!(f)?;
            }
            for j in 1..=self.cols {
                if j > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn op(s: &str) -> OrderedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn scp_examples() {
        let cp = scp(&p("2|1|3|5|4"));
        assert_eq!(cp.alpha, op("12|3|45"));
        assert_eq!(cp.beta, op("2|135|4"));
        let cp = scp(&p("1|2|3"));
        assert_eq!((cp.alpha, cp.beta), (op("1|2|3"), op("123")));
        let cp = scp(&p("3|2|1"));
        assert_eq!((cp.alpha, cp.beta), (op("123"), op("3|2|1")));
    }

    #[test]
    fn scp_extremes_and_counts() {
        for n in 1..=6u8 {
            for sigma in Permutation::all(n) {
                let cp = scp(&sigma);
                let pq = cp.alpha.num_blocks() + cp.beta.num_blocks();
                assert_eq!(pq, n + 1, "p + q = n + 1 at {sigma}");
                assert_eq!(cp.alpha.max_vertex(), sigma);
                assert_eq!(cp.beta.min_vertex(), sigma);
            }
        }
    }

    #[test]
    fn step_matrix_examples() {
        let m = StepMatrix::of(&p("2|1|3|5|4"));
        assert_eq!(m.to_string(), "0 0 4\n1 3 5\n2 0 0");
        let m = StepMatrix::of(&p("1|2"));
        assert_eq!(m.to_string(), "1 2");
        let m = StepMatrix::of(&p("2|1"));
        assert_eq!(m.to_string(), "1\n2");
    }

    #[test]
    fn step_property_small() {
        for n in 1..=7u8 {
            for sigma in Permutation::all(n) {
                assert!(StepMatrix::of(&sigma).is_step(), "not a step matrix: {sigma}");
            }
        }
    }

    #[test]
    fn shift_examples() {
        assert_eq!(
            right_shift(&op("124|3"), 1, Block::from_elements([4])).unwrap(),
            op("12|34")
        );
        assert_eq!(
            right_shift(&op("134|2"), 1, Block::from_elements([3, 4])).unwrap(),
            op("1|234")
        );
        assert_eq!(right_shift(&op("12|34"), 1, Block::empty()).unwrap(), op("12|34"));

        assert_eq!(
            left_shift(&op("2|135|4"), 2, Block::from_elements([5])).unwrap(),
            op("25|13|4")
        );
        assert_eq!(
            left_shift(&op("4|2|13"), 3, Block::from_elements([3])).unwrap(),
            op("4|23|1")
        );
        assert_eq!(left_shift(&op("1|234"), 2, Block::empty()).unwrap(), op("1|234"));
    }

    #[test]
    fn shift_rejections() {
        // may not move a block's minimum
        assert!(right_shift(&op("12|34"), 1, Block::from_elements([1])).is_err());
        // min of the moved set must clear the target block's max
        assert!(right_shift(&op("13|24"), 1, Block::from_elements([3])).is_err());
        assert!(left_shift(&op("3|12"), 2, Block::from_elements([2])).is_err());
        // position range
        assert!(right_shift(&op("12|34"), 2, Block::from_elements([4])).is_err());
        assert!(left_shift(&op("12|34"), 1, Block::from_elements([4])).is_err());
    }

    #[test]
    fn enumerate_cps_examples() {
        let set: Vec<(String, String)> = enumerate_cps(&p("2|1|3"))
            .iter()
            .map(|cp| (cp.alpha.to_string(), cp.beta.to_string()))
            .collect();
        assert_eq!(
            set,
            vec![
                ("12|3".into(), "2|13".into()),
                ("12|3".into(), "23|1".into())
            ]
        );

        let set: Vec<(String, String)> = enumerate_cps(&p("3|1|2"))
            .iter()
            .map(|cp| (cp.alpha.to_string(), cp.beta.to_string()))
            .collect();
        assert_eq!(
            set,
            vec![
                ("1|23".into(), "3|12".into()),
                ("13|2".into(), "3|12".into())
            ]
        );

        let set = enumerate_cps(&p("1|2|3"));
        assert_eq!(set.len(), 1);
        assert_eq!((set[0].alpha.clone(), set[0].beta.clone()), (op("1|2|3"), op("123")));
    }

    #[test]
    fn delta_p_small() {
        let d1 = delta_p_top(1);
        assert_eq!(d1.len(), 1);
        let d2 = delta_p_top(2);
        assert_eq!(
            d2.components().to_vec(),
            vec![(op("1|2"), op("12")), (op("12"), op("2|1"))]
        );
        let d3 = delta_p_top(3);
        assert_eq!(d3.len(), 8);
        for (a, b) in [
            ("1|2|3", "123"),
            ("1|23", "13|2"),
            ("12|3", "2|13"),
            ("12|3", "23|1"),
            ("2|13", "23|1"),
            ("13|2", "3|12"),
            ("1|23", "3|12"),
            ("123", "3|2|1"),
        ] {
            assert!(d3.contains(&(op(a), op(b))), "missing {a} × {b}");
        }
    }

    #[test]
    fn delta_p_face_examples() {
        let d = delta_p_face(&op("12|3"));
        assert_eq!(
            d.components().to_vec(),
            vec![
                (op("1|2|3"), op("12|3")),
                (op("12|3"), op("2|1|3")),
            ]
        );
        let v = op("2|1|3");
        let dv = delta_p_face(&v);
        assert_eq!(dv.components().to_vec(), vec![(v.clone(), v.clone())]);
        assert_eq!(delta_p_face(&op("123")), delta_p_top(3));
    }

    #[test]
    fn components_have_complementary_dimension() {
        for n in 1..=5u8 {
            for (a, b) in delta_p_top(n).iter() {
                assert_eq!(a.dim() + b.dim(), n - 1);
            }
        }
    }

    #[test]
    fn matching_property() {
        use crate::partition::face_leq_p;
        for n in 1..=5u8 {
            for (a, b) in delta_p_top(n).iter() {
                assert!(face_leq_p(a, b).unwrap(), "{a} × {b} is not matched");
            }
        }
    }

    #[test]
    fn matrix_actions_mirror_partition_actions() {
        // Example continuation: the down-shift of 5 on the SCP matrix.
        let m = StepMatrix::of(&p("2|1|3|5|4"));
        let shifted = m.down_shift(2, Block::from_elements([5])).unwrap();
        assert_eq!(shifted.to_string(), "0 0 4\n1 3 0\n2 0 5");
        let (alpha, beta) = shifted.to_pair(5);
        assert_eq!(alpha, op("12|3|45"));
        assert_eq!(beta, op("25|13|4"));
    }

    #[test]
    fn matrix_route_generates_same_cps() {
        // Generate CPs by matrix moves alone and compare with the partition
        // route, exhaustively for small n.
        use std::collections::BTreeSet;
        for n in 1..=5u8 {
            let mut matrix_set: BTreeSet<(OrderedPartition, OrderedPartition)> = BTreeSet::new();
            for sigma in Permutation::all(n) {
                let base = StepMatrix::of(&sigma);
                // sweep columns ascending, then rows ascending, mirroring the
                // stage structure of the partition sweeps
                let mut after_cols = vec![base.clone()];
                for j in 1..base.cols {
                    let mut next = Vec::new();
                    for mtx in &after_cols {
                        let line = mtx.col_values(j);
                        let nextline = mtx.col_values(j + 1);
                        let elig = line
                            .difference(Block(1 << (line.min_elem() - 1)))
                            .intersect(Block::above(nextline.max_elem()));
                        for sub in elig.subsets() {
                            next.push(mtx.right_shift(j, sub).unwrap());
                        }
                    }
                    after_cols = next;
                }
                for mtx in &after_cols {
                    let mut after_rows = vec![mtx.clone()];
                    for i in 1..base.rows {
                        let mut next = Vec::new();
                        for m2 in &after_rows {
                            let line = m2.row_values(i);
                            let nextline = m2.row_values(i + 1);
                            let elig = line
                                .difference(Block(1 << (line.min_elem() - 1)))
                                .intersect(Block::above(nextline.max_elem()));
                            for sub in elig.subsets() {
                                next.push(m2.down_shift(i, sub).unwrap());
                            }
                        }
                        after_rows = next;
                    }
                    for m2 in after_rows {
                        matrix_set.insert(m2.to_pair(n));
                    }
                }
            }
            let partition_set: BTreeSet<_> = delta_p_top(n).iter().cloned().collect();
            assert_eq!(matrix_set, partition_set, "n={n}");
        }
    }
}
