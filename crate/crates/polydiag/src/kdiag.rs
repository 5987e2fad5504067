//! The two associahedron diagonals and the machinery relating them.
//!
//! `delta_k_su` pushes the non-degenerate components of `Δ_P` through the
//! Tonks projection. `delta_k_magical` never looks at a shift: it pairs
//! faces of complementary dimension that are comparable in the Tamari
//! order. The two code paths share nothing beyond the basic types, so
//! [`verify_agreement`] is a genuine cross-check of the identity between
//! them, and [`mp_to_cp`] reconstructs, for any matching pair, the unique
//! complementary pair projecting onto it.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::kface::{is_associahedral_vertex, tamari_leq, tree_of, KFace};
use crate::partition::{Block, OrderedPartition};
use crate::pdiag::{
    delta_p_top, left_run_cell, left_shift, right_run_cell, right_shift,
    ComplementaryPair, DiagonalSet, Polytope, ShiftSequence,
};
use crate::perm::{weak_leq, Permutation};
use crate::tree::Tree;
use crate::{Error, Result, SCHEMA_VERSION};

/// `Δ_K` of the top cell of `K_{n+1}` by the shift route: the
/// non-degenerate components of `Δ_P(P_n)` pushed through the projection.
pub fn delta_k_su(n: u8) -> DiagonalSet<Tree> {
    let pairs: Vec<(Tree, Tree)> = delta_p_top(n)
        .components()
        .par_iter()
        .filter(|(a, b)| !a.is_degenerate() && !b.is_degenerate())
        .map(|(a, b)| (tree_of(a), tree_of(b)))
        .collect();
    DiagonalSet::from_pairs(Polytope::K, n, pairs)
}

/// `Δ'_K` of the top cell of `K_{n+1}` by the order route: all pairs of
/// faces with complementary dimensions comparable under the Tamari order.
pub fn delta_k_magical(n: u8) -> DiagonalSet<Tree> {
    let faces = crate::kface::enumerate_faces_k(n, None).unwrap();
    let mut by_dim: Vec<Vec<&KFace>> = vec![Vec::new(); n as usize];
    for f in &faces {
        by_dim[f.dim() as usize].push(f);
    }
    let dims: Vec<u8> = (0..n).collect();
    let pairs: Vec<(Tree, Tree)> = dims
        .par_iter()
        .flat_map_iter(|&k1| {
            let k2 = n - 1 - k1;
            let mut out = Vec::new();
            for f in &by_dim[k1 as usize] {
                let max_inv = f.max_vertex.inversion_set();
                for g in &by_dim[k2 as usize] {
                    let min_inv = g.min_vertex.inversion_set();
                    // cheap pretest before the subset test
                    if max_inv.len() > min_inv.len() {
                        continue;
                    }
                    if max_inv.is_subset(&min_inv) {
                        out.push((f.tree.clone(), g.tree.clone()));
                    }
                }
            }
            out
        })
        .collect();
    DiagonalSet::from_pairs(Polytope::K, n, pairs)
}

/// Comultiplicative extension of `Δ_K` to an arbitrary face: the product of
/// the top-cell diagonals of the internal nodes, grafted back into the
/// face's shape. Internal nodes are visited in pre-order.
pub fn delta_k_face(f: &KFace) -> DiagonalSet<Tree> {
    fn arities(t: &Tree, out: &mut Vec<u8>) {
        if let Tree::Node(cs) = t {
            out.push(cs.len() as u8);
            for c in cs {
                arities(c, out);
            }
        }
    }
    let mut node_arities = Vec::new();
    arities(&f.tree, &mut node_arities);

    let factors: Vec<Vec<(Tree, Tree)>> = node_arities
        .iter()
        .map(|&a| delta_k_su(a - 1).components().to_vec())
        .collect();

    // substitute component trees at the internal nodes, pre-order
    fn graft(t: &Tree, picks: &[&Tree], idx: &mut usize) -> Tree {
        match t {
            Tree::Leaf => Tree::Leaf,
            Tree::Node(cs) => {
                let shape = picks[*idx].clone();
                *idx += 1;
                let rebuilt: Vec<Tree> = cs.iter().map(|c| graft(c, picks, idx)).collect();
                let mut feed = rebuilt.into_iter();
                substitute_leaves(&shape, &mut feed)
            }
        }
    }
    fn substitute_leaves(shape: &Tree, feed: &mut impl Iterator<Item = Tree>) -> Tree {
        match shape {
            Tree::Leaf => feed.next().expect("arity matches leaf count"),
            Tree::Node(cs) => {
                Tree::Node(cs.iter().map(|c| substitute_leaves(c, feed)).collect())
            }
        }
    }

    let mut pairs = Vec::new();
    let mut choice = vec![0usize; factors.len()];
    loop {
        let alpha_picks: Vec<&Tree> = factors
            .iter()
            .zip(&choice)
            .map(|(f, &c)| &f[c].0)
            .collect();
        let beta_picks: Vec<&Tree> = factors
            .iter()
            .zip(&choice)
            .map(|(f, &c)| &f[c].1)
            .collect();
        let mut i = 0;
        let alpha = graft(&f.tree, &alpha_picks, &mut i);
        let mut i = 0;
        let beta = graft(&f.tree, &beta_picks, &mut i);
        pairs.push((alpha, beta));

        let mut i = 0;
        loop {
            if i == factors.len() {
                return DiagonalSet::from_pairs(Polytope::K, f.n, pairs);
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

/// The right-shift sequence taking the maximal subdivision cell of a face
/// to its minimal one. Stage `j` is forced: everything in block `j` that
/// does not belong there in the destination moves right.
pub fn rshift_path(src: &OrderedPartition, dst: &OrderedPartition) -> Result<ShiftSequence> {
    if src.n() != dst.n() {
        return Err(Error::SizeMismatch {
            left: src.n(),
            right: dst.n(),
        });
    }
    if src.num_blocks() != dst.num_blocks() {
        return Err(Error::Structural(format!(
            "{src} and {dst} do not have the same block count"
        )));
    }
    let p = src.num_blocks();
    let mut cur = src.clone();
    let mut moves = Vec::with_capacity(p as usize - 1);
    for j in 1..p {
        let m = cur.blocks()[j as usize - 1].difference(dst.blocks()[j as usize - 1]);
        cur = right_shift(&cur, j, m).map_err(|e| {
            Error::Structural(format!("{src} and {dst} are not in one fiber: {e}"))
        })?;
        moves.push(m);
    }
    if cur != *dst {
        return Err(Error::Structural(format!(
            "{src} and {dst} are not in one fiber"
        )));
    }
    Ok(ShiftSequence(moves))
}

/// The left-shift sequence taking the increasing-run cell `a` of an
/// associahedral vertex to a non-degenerate cell `b` above it, assembled
/// from a chain of weak-order covers of the minimal vertices.
///
/// The chain adds, one adjacent transposition at a time, inversions of
/// `min b` to `min a`; whenever the increasing-run cell of the current word
/// returns to `q` blocks, it must differ from the previous such cell by one
/// element sliding one block leftward. Grouping those slides by source
/// position yields `N` with `L_N(a) = b`.
pub fn lshift_path(a: &OrderedPartition, b: &OrderedPartition) -> Result<ShiftSequence> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let q = a.num_blocks();
    let start = a.min_vertex();
    if right_run_cell(&start) != *a || !is_associahedral_vertex(&start) {
        return Err(Error::Structural(format!(
            "{a} is not the increasing-run cell of an associahedral vertex"
        )));
    }
    if b.is_degenerate() {
        return Err(Error::Structural(format!("{b} is degenerate")));
    }
    if b.num_blocks() != q {
        return Err(Error::Structural(format!(
            "{a} and {b} do not have the same block count"
        )));
    }
    let target = b.min_vertex();
    if !weak_leq(&start, &target)? {
        return Err(Error::Structural(format!(
            "min {a} is not below min {b} in the weak order"
        )));
    }

    if start == target {
        return Ok(ShiftSequence::empty(q as usize - 1));
    }

    let minima: Vec<u8> = a.blocks().iter().map(|bl| bl.min_elem()).collect();
    let tpos = target.positions();

    // depth-first search over increasing adjacent swaps toward `target`
    struct Search<'s> {
        target: Permutation,
        tpos: [u8; crate::perm::MAX_N as usize + 1],
        q: u8,
        minima: &'s [u8],
    }

    impl Search<'_> {
        /// Try to extend the chain; `moves` collects (source print position,
        /// element) for each single slide between consecutive q-block cells.
        fn dfs(
            &self,
            word: &mut Vec<u8>,
            prev_cell: &OrderedPartition,
            last_pos: u8,
            moves: &mut Vec<(u8, u8)>,
        ) -> bool {
            if word.as_slice() == self.target.word() {
                return true;
            }
            for i in 0..word.len() - 1 {
                let (x, y) = (word[i], word[i + 1]);
                if x > y {
                    continue;
                }
                // the swap must create an inversion of the target
                if self.tpos[y as usize] > self.tpos[x as usize] {
                    continue;
                }
                word.swap(i, i + 1);
                let v = Permutation::new(word.clone()).unwrap();
                let cell = right_run_cell(&v);
                let blocks = cell.num_blocks();
                let ok = if blocks == self.q {
                    let mins: Vec<u8> = cell.blocks().iter().map(|bl| bl.min_elem()).collect();
                    if mins == self.minima {
                        if let Some((from, elem)) = single_slide(prev_cell, &cell) {
                            if from <= last_pos {
                                moves.push((from, elem));
                                let done = self.dfs(word, &cell, from, moves);
                                if done {
                                    return true;
                                }
                                moves.pop();
                            }
                        }
                        false
                    } else {
                        false
                    }
                } else if blocks == self.q + 1 {
                    self.dfs(word, prev_cell, last_pos, moves)
                } else {
                    false
                };
                word.swap(i, i + 1);
                if ok {
                    return true;
                }
            }
            false
        }
    }

    /// Detect that `next` is `prev` with exactly one element slid one block
    /// to the left; returns (1-based source position, element).
    fn single_slide(prev: &OrderedPartition, next: &OrderedPartition) -> Option<(u8, u8)> {
        let mut from = None;
        for (j, (x, y)) in prev.blocks().iter().zip(next.blocks()).enumerate() {
            if x == y {
                continue;
            }
            match from {
                None => {
                    // first difference must gain an element from the right
                    let gained = y.difference(*x);
                    if gained.len() != 1 || !x.is_subset(*y) {
                        return None;
                    }
                    from = Some((j as u8 + 2, gained.min_elem()));
                }
                Some((pos, elem)) => {
                    if j as u8 + 1 != pos {
                        return None;
                    }
                    let lost = x.difference(*y);
                    if lost.len() != 1 || lost.min_elem() != elem || !y.is_subset(*x) {
                        return None;
                    }
                    return verify_rest(prev, next, j + 1).then_some((pos, elem));
                }
            }
        }
        None
    }

    fn verify_rest(prev: &OrderedPartition, next: &OrderedPartition, from: usize) -> bool {
        prev.blocks()[from..] == next.blocks()[from..]
    }

    let search = Search {
        target: target.clone(),
        tpos,
        q,
        minima: &minima,
    };
    let mut word = start.word().to_vec();
    let mut moves: Vec<(u8, u8)> = Vec::new();
    if !search.dfs(&mut word, a, q, &mut moves) {
        return Err(Error::Structural(format!(
            "no left-shift chain from {a} to {b}"
        )));
    }

    // group slides by source print position t; stage index is q - t + 1
    let mut stages = vec![Block::empty(); q as usize - 1];
    for (from, elem) in moves {
        let stage = (q - from) as usize; // 0-based stage index
        stages[stage] = stages[stage].union(Block(1 << (elem - 1)));
    }
    let seq = ShiftSequence(stages);

    // replay to confirm admissibility stage by stage
    let mut cur = a.clone();
    for (i, m) in seq.0.iter().enumerate() {
        let pos = q - i as u8; // print position of stage i+1
        cur = left_shift(&cur, pos, *m)?;
    }
    if cur != *b {
        return Err(Error::Structural(format!(
            "assembled left-shift sequence misses {b}"
        )));
    }
    Ok(seq)
}

/// A validated matching pair: faces of complementary dimension with
/// `F ≤ G` in the Tamari order.
#[derive(Clone, Debug)]
pub struct MatchingPair {
    pub f: KFace,
    pub g: KFace,
}

impl MatchingPair {
    pub fn new(f: KFace, g: KFace) -> Result<MatchingPair> {
        if f.n != g.n {
            return Err(Error::SizeMismatch {
                left: f.n,
                right: g.n,
            });
        }
        if f.dim() + g.dim() != f.n - 1 {
            return Err(Error::NotMatchingPair(format!(
                "dimensions {} + {} ≠ {}",
                f.dim(),
                g.dim(),
                f.n - 1
            )));
        }
        if !tamari_leq(&f, &g)? {
            return Err(Error::NotMatchingPair(format!(
                "{} is not below {} in the Tamari order",
                f.tree, g.tree
            )));
        }
        Ok(MatchingPair { f, g })
    }

    pub fn to_cp(&self) -> Result<ComplementaryPair> {
        mp_to_cp(&self.f, &self.g)
    }
}

/// Translate a matching pair into the complementary pair projecting onto
/// it: `σ = max F` gives the SCP `F_max × β`; right shifts take `F_max`
/// down to `F_min` and left shifts take `β` up to `G_min`.
pub fn mp_to_cp(f: &KFace, g: &KFace) -> Result<ComplementaryPair> {
    if f.n != g.n {
        return Err(Error::SizeMismatch {
            left: f.n,
            right: g.n,
        });
    }
    let n = f.n;
    if f.dim() + g.dim() != n - 1 {
        return Err(Error::NotMatchingPair(format!(
            "dimensions {} + {} ≠ {}",
            f.dim(),
            g.dim(),
            n - 1
        )));
    }
    if !tamari_leq(f, g)? {
        return Err(Error::NotMatchingPair(format!(
            "{} is not below {} in the Tamari order",
            f.tree, g.tree
        )));
    }

    let sigma = f.max_vertex.clone();
    let f_max = left_run_cell(&sigma);
    let m = rshift_path(&f_max, &f.min_cell)?;
    let beta = right_run_cell(&sigma);
    let n_moves = lshift_path(&beta, &g.min_cell)?;

    debug_assert_eq!(tree_of(&f.min_cell), f.tree);
    debug_assert_eq!(tree_of(&g.min_cell), g.tree);
    Ok(ComplementaryPair {
        alpha: f.min_cell.clone(),
        beta: g.min_cell.clone(),
        sigma,
        m,
        n_moves,
    })
}

/// Certificate that the two diagonal formulas agree at one size.
#[derive(Clone, Debug, Serialize)]
pub struct AgreementCertificate {
    pub schema_version: u32,
    pub n: u8,
    pub su_count: usize,
    pub magical_count: usize,
    pub equal: bool,
    pub preimage_unique: bool,
    /// Components of the order-route diagonal absent from the shift route.
    pub missing: Vec<String>,
    /// Components of the shift route absent from the order route.
    pub extra: Vec<String>,
    /// Matching pairs that fail to round-trip through `mp_to_cp`.
    pub roundtrip_failures: Vec<String>,
    pub runtime_ms: u128,
}

impl AgreementCertificate {
    pub fn ok(&self) -> bool {
        self.equal && self.preimage_unique && self.roundtrip_failures.is_empty()
    }
}

/// Compute both diagonals independently, compare them as sets, check that
/// distinct non-degenerate complementary pairs project to distinct matching
/// pairs, and round-trip every matching pair through [`mp_to_cp`].
pub fn verify_agreement(n: u8) -> AgreementCertificate {
    let started = Instant::now();

    let dp = delta_p_top(n);
    let nondeg: Vec<&(OrderedPartition, OrderedPartition)> = dp
        .components()
        .iter()
        .filter(|(a, b)| !a.is_degenerate() && !b.is_degenerate())
        .collect();
    let nondeg_set: BTreeSet<(OrderedPartition, OrderedPartition)> =
        nondeg.iter().map(|p| (*p).clone()).collect();
    let su = DiagonalSet::from_pairs(
        Polytope::K,
        n,
        nondeg.iter().map(|(a, b)| (tree_of(a), tree_of(b))).collect(),
    );
    let magical = delta_k_magical(n);

    let fmt = |(a, b): &(Tree, Tree)| format!("{a} × {b}");
    let missing: Vec<String> = magical.difference(&su).iter().map(fmt).collect();
    let extra: Vec<String> = su.difference(&magical).iter().map(fmt).collect();

    let mut roundtrip_failures: Vec<String> = magical
        .components()
        .par_iter()
        .filter_map(|(ft, gt)| {
            let f = KFace::new(ft.clone(), n).unwrap();
            let g = KFace::new(gt.clone(), n).unwrap();
            match mp_to_cp(&f, &g) {
                Ok(cp) => {
                    let back_ok =
                        tree_of(&cp.alpha) == *ft && tree_of(&cp.beta) == *gt;
                    let known = nondeg_set.contains(&(cp.alpha.clone(), cp.beta.clone()));
                    if back_ok && known {
                        None
                    } else {
                        Some(format!("{ft} × {gt} → {} × {}", cp.alpha, cp.beta))
                    }
                }
                Err(e) => Some(format!("{ft} × {gt}: {e}")),
            }
        })
        .collect();
    roundtrip_failures.sort();

    AgreementCertificate {
        schema_version: SCHEMA_VERSION,
        n,
        su_count: su.len(),
        magical_count: magical.len(),
        equal: missing.is_empty() && extra.is_empty(),
        preimage_unique: nondeg_set.len() == su.len(),
        missing,
        extra,
        roundtrip_failures,
        runtime_ms: started.elapsed().as_millis(),
    }
}

/// Count the complementary pairs whose both factors are non-degenerate.
pub fn nondegenerate_cp_count(n: u8) -> usize {
    delta_p_top(n)
        .components()
        .iter()
        .filter(|(a, b)| !a.is_degenerate() && !b.is_degenerate())
        .count()
}
