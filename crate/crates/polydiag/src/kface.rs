//! The Tonks projection, associahedral faces of `P_n`, fibers, and the
//! Tamari order.
//!
//! A partition `a` determines a level for each gap of the leaf row
//! (`gap i` separates leaves `i` and `i+1` and has the level of `i`, the
//! 1-based index of the block containing it). The Tonks projection forgets
//! levels: the root of `tree_of(a)` cuts the leaf interval at every gap of
//! maximal level, recursing on the subintervals. Non-degenerate partitions
//! are exactly the ones whose dimension survives.
//!
//! Conversely every face `F` of `K_{n+1}` has a distinguished minimal
//! subdivision cell `F_min`: assign block positions to the internal nodes of
//! the tree in right-to-left post-order (descendants before ancestors,
//! right siblings first), each node contributing its gap set as a block.
//! The same construction on the left/right comb refinements of `F` yields
//! the minimal and maximal vertices of `F`, which drive the Tamari order.

use std::collections::BTreeMap;

use crate::partition::{faces_with_dim, Block, OrderedPartition};
use crate::pdiag::{left_sweep, right_run_cell};
use crate::perm::{weak_leq, Permutation};
use crate::tree::Tree;
use crate::{Error, Result};

/// The Tonks projection on faces: forget the level structure.
pub fn tree_of(a: &OrderedPartition) -> Tree {
    let n = a.n();
    let levels: Vec<u8> = (1..=n).map(|v| a.level_of(v)).collect();
    build(&levels, 1, n)
}

/// Build the subtree over gaps `lo..=hi` (gap indices are 1-based).
fn build(levels: &[u8], lo: u8, hi: u8) -> Tree {
    if lo > hi {
        return Tree::Leaf;
    }
    let m = (lo..=hi).map(|g| levels[g as usize - 1]).max().unwrap();
    let mut children = Vec::new();
    let mut start = lo;
    for g in lo..=hi {
        if levels[g as usize - 1] == m {
            children.push(build(levels, start, g - 1));
            start = g + 1;
        }
    }
    children.push(build(levels, start, hi));
    Tree::Node(children)
}

/// The Tonks projection on vertices: a binary tree with `n+1` leaves.
pub fn theta_vertex(v: &Permutation) -> Tree {
    tree_of(&OrderedPartition::singletons(v))
}

/// The gap sets of the internal nodes of `t`, in right-to-left post-order.
fn rl_post_gap_blocks(t: &Tree) -> Vec<Block> {
    fn walk(t: &Tree, leaf_start: u8, out: &mut Vec<Block>) -> u8 {
        match t {
            Tree::Leaf => 1,
            Tree::Node(cs) => {
                let mut widths = Vec::with_capacity(cs.len());
                let mut w = 0;
                for c in cs {
                    widths.push((c, leaf_start + w));
                    w += c.leaf_count();
                }
                for (c, start) in widths.iter().rev() {
                    walk(c, *start, out);
                }
                // gap index = last leaf under the child; bit v-1 encodes v
                let mut gaps = Block::empty();
                let mut acc = leaf_start;
                for c in &cs[..cs.len() - 1] {
                    acc += c.leaf_count();
                    let gap = acc - 1;
                    gaps = gaps.union(Block(1 << (gap - 1)));
                }
                out.push(gaps);
                w
            }
        }
    }
    let mut out = Vec::new();
    walk(t, 1, &mut out);
    out
}

/// The minimal subdivision cell of the face `t` of `K_{n+1}`.
pub fn min_cell_of_tree(t: &Tree) -> OrderedPartition {
    let n = t.leaf_count() - 1;
    OrderedPartition::new(n, rl_post_gap_blocks(t)).unwrap()
}

/// The minimal vertex of the face `t`: the left-comb refinement, leveled.
pub fn min_vertex_of_tree(t: &Tree) -> Permutation {
    min_cell_of_tree(&t.binarize_left()).as_permutation().unwrap()
}

/// The maximal vertex of the face `t`: the right-comb refinement, leveled.
pub fn max_vertex_of_tree(t: &Tree) -> Permutation {
    min_cell_of_tree(&t.binarize_right()).as_permutation().unwrap()
}

/// A face of `K_{n+1}` with its cached subdivision data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KFace {
    pub tree: Tree,
    pub n: u8,
    /// The minimal subdivision cell; non-degenerate, `tree_of` maps it back.
    pub min_cell: OrderedPartition,
    pub min_vertex: Permutation,
    pub max_vertex: Permutation,
}

impl KFace {
    pub fn new(tree: Tree, n: u8) -> Result<KFace> {
        if tree.leaf_count() != n + 1 {
            return Err(Error::SizeMismatch {
                left: tree.leaf_count() - 1,
                right: n,
            });
        }
        let min_cell = min_cell_of_tree(&tree);
        debug_assert_eq!(tree_of(&min_cell), tree);
        debug_assert!(!min_cell.is_degenerate());
        let min_vertex = min_vertex_of_tree(&tree);
        let max_vertex = max_vertex_of_tree(&tree);
        Ok(KFace {
            tree,
            n,
            min_cell,
            min_vertex,
            max_vertex,
        })
    }

    pub fn dim(&self) -> u8 {
        self.tree.dim()
    }

    /// The maximal subdivision cell: the fiber member whose maximal vertex
    /// is the face's maximal vertex.
    pub fn max_cell(&self) -> OrderedPartition {
        fiber(self).max
    }
}

/// All faces of `K_{n+1}` (optionally of one dimension), sorted by tree.
pub fn enumerate_faces_k(n: u8, dim: Option<u8>) -> Result<Vec<KFace>> {
    if let Some(d) = dim {
        if d > n - 1 {
            return Err(Error::DimOutOfRange { n, dim: d });
        }
    }
    Ok(Tree::enumerate(n + 1)
        .into_iter()
        .filter(|t| dim.is_none_or(|d| t.dim() == d))
        .map(|t| KFace::new(t, n).unwrap())
        .collect())
}

/// The fiber of an associahedral face: its subdivision cells, with the
/// minimal and maximal members.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub members: Vec<OrderedPartition>,
    pub min: OrderedPartition,
    pub max: OrderedPartition,
}

/// Subdivision cells of `f`.
///
/// For positive dimension these are the left-shift images of `min_cell`
/// that are degenerate and still carry `f.tree` as a face of their
/// projection, plus `min_cell` itself. For dimension 0 the fiber is the
/// full `θ`-preimage of the vertex, whose weak-order extremes are reported.
pub fn fiber(f: &KFace) -> Fiber {
    if f.dim() == 0 {
        let mut members: Vec<OrderedPartition> = Permutation::all(f.n)
            .filter(|v| theta_vertex(v) == f.tree)
            .map(|v| OrderedPartition::singletons(&v))
            .collect();
        members.sort();
        let min = members
            .iter()
            .find(|u| {
                let inv = u.min_vertex().inversion_set();
                members
                    .iter()
                    .all(|w| inv.is_subset(&w.min_vertex().inversion_set()))
            })
            .expect("theta fiber has a weak-order minimum")
            .clone();
        let max = members
            .iter()
            .find(|u| {
                let inv = u.min_vertex().inversion_set();
                members
                    .iter()
                    .all(|w| w.min_vertex().inversion_set().is_subset(&inv))
            })
            .expect("theta fiber has a weak-order maximum")
            .clone();
        return Fiber { members, min, max };
    }

    let spans = f.tree.spans();
    let mut members: Vec<OrderedPartition> = left_sweep(&f.min_cell)
        .into_iter()
        .map(|(u, _)| u)
        .filter(|u| {
            *u == f.min_cell
                || (u.is_degenerate() && spans.is_subset(&tree_of(u).spans()))
        })
        .collect();
    members.sort();
    members.dedup();

    let max = members
        .iter()
        .max_by(|a, b| {
            a.max_vertex()
                .inversion_count()
                .cmp(&b.max_vertex().inversion_count())
        })
        .unwrap()
        .clone();
    debug_assert!(members.iter().all(|u| {
        u.max_vertex()
            .inversion_set()
            .is_subset(&max.max_vertex().inversion_set())
    }));
    Fiber {
        min: f.min_cell.clone(),
        max,
        members,
    }
}

/// A vertex of `P_n` is associahedral exactly when its increasing-run cell
/// is non-degenerate; these are the vertices of `K_{n+1}`.
pub fn is_associahedral_vertex(v: &Permutation) -> bool {
    !right_run_cell(v).is_degenerate()
}

/// Tamari (induced face) order on `K_{n+1}`: `F ≤ G` iff there is an
/// oriented edge-path from the maximal vertex of `F` to the minimal vertex
/// of `G`, i.e. `weak_leq(max_vertex F, min_vertex G)`.
pub fn tamari_leq(f: &KFace, g: &KFace) -> Result<bool> {
    if f.n != g.n {
        return Err(Error::SizeMismatch {
            left: f.n,
            right: g.n,
        });
    }
    weak_leq(&f.max_vertex, &g.min_vertex)
}

/// Group the non-degenerate cells of each dimension by their projection;
/// used by tests to cross-check `min_cell_of_tree`.
pub fn nondegenerate_cells_by_tree(n: u8, dim: u8) -> BTreeMap<Tree, Vec<OrderedPartition>> {
    let mut map: BTreeMap<Tree, Vec<OrderedPartition>> = BTreeMap::new();
    for a in faces_with_dim(n, dim).unwrap() {
        if !a.is_degenerate() {
            map.entry(tree_of(&a)).or_default().push(a);
        }
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> OrderedPartition {
        s.parse().unwrap()
    }

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    fn pm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn tree_of_examples() {
        assert_eq!(tree_of(&op("12|34")), t("(ooo)oo"));
        assert_eq!(tree_of(&op("4|23|1")), t("o(oo(oo))"));
        assert_eq!(tree_of(&op("1234")), Tree::corolla(5));
        assert_eq!(tree_of(&op("1|234")), t("(oo)ooo"));
        assert_eq!(tree_of(&op("13|24")), t("(oo)(oo)o"));
    }

    #[test]
    fn theta_vertex_examples() {
        assert_eq!(theta_vertex(&pm("1|2|3")), t("((oo)o)o"));
        assert_eq!(theta_vertex(&pm("1|3|2")), t("(oo)(oo)"));
        assert_eq!(theta_vertex(&pm("3|1|2")), t("(oo)(oo)"));
        assert_eq!(theta_vertex(&pm("3|2|1")), t("o(o(oo))"));
    }

    #[test]
    fn projection_is_dimension_preserving_iff_nondegenerate() {
        use crate::partition::faces;
        for n in 1..=6u8 {
            for a in faces(n) {
                let tr = tree_of(&a);
                assert!(tr.dim() <= a.dim(), "projection raised dimension at {a}");
                assert_eq!(
                    tr.dim() == a.dim(),
                    !a.is_degenerate(),
                    "degeneracy mismatch at {a}"
                );
            }
        }
    }

    #[test]
    fn min_cells_of_k5_facets() {
        let faces = enumerate_faces_k(4, Some(2)).unwrap();
        assert_eq!(faces.len(), 9);
        let labels: Vec<String> = faces.iter().map(|f| f.min_cell.to_string()).collect();
        for want in [
            "4|123", "123|4", "12|34", "34|12", "2|134", "3|124", "234|1", "23|14", "1|234",
        ] {
            assert!(labels.contains(&want.to_string()), "missing label {want}");
        }
    }

    #[test]
    fn min_cell_is_a_nondegenerate_preimage_with_extreme_vertices() {
        // min_cell projects back onto its tree, is non-degenerate, and its
        // own extreme vertices are the face's comb vertices.
        for n in 2..=6u8 {
            for dim in 1..n {
                for (tree, cells) in nondegenerate_cells_by_tree(n, dim) {
                    let picked = min_cell_of_tree(&tree);
                    assert!(cells.contains(&picked), "picked cell not in θ-class");
                    assert_eq!(picked.min_vertex(), min_vertex_of_tree(&tree));
                    assert!(is_associahedral_vertex(&picked.min_vertex()));
                }
            }
        }
    }

    #[test]
    fn fiber_of_facet_example() {
        let f = KFace::new(t("(oo)ooo"), 4).unwrap();
        assert_eq!(f.min_cell, op("1|234"));
        let fib = fiber(&f);
        let got: Vec<String> = fib.members.iter().map(|u| u.to_string()).collect();
        assert_eq!(got, vec!["1|234", "13|24", "14|23", "134|2"]);
        assert_eq!(fib.min, op("1|234"));
        assert_eq!(fib.max, op("134|2"));
    }

    #[test]
    fn fiber_excludes_foreign_cells() {
        let f = KFace::new(t("o(oo)oo"), 4).unwrap();
        assert_eq!(f.min_cell, op("2|134"));
        let fib = fiber(&f);
        let got: Vec<String> = fib.members.iter().map(|u| u.to_string()).collect();
        assert_eq!(got, vec!["2|134", "24|13"]);
        // the square facet is its own fiber
        let f = KFace::new(t("o(ooo)o"), 4).unwrap();
        assert_eq!(f.min_cell, op("23|14"));
        assert_eq!(fiber(&f).members, vec![op("23|14")]);
        assert_eq!(fiber(&f).max, op("23|14"));
    }

    #[test]
    fn fiber_of_edge_with_singleton() {
        let f = KFace::new(t("(ooo)oo"), 4).unwrap();
        let fib = fiber(&f);
        assert_eq!(fib.members, vec![op("12|34"), op("124|3")]);
        assert_eq!(fib.max, op("124|3"));
    }

    #[test]
    fn fiber_at_dimension_zero() {
        let f = KFace::new(t("(oo)(oo)"), 3).unwrap();
        let fib = fiber(&f);
        assert_eq!(fib.members, vec![op("1|3|2"), op("3|1|2")]);
        assert_eq!(fib.min, op("1|3|2"));
        assert_eq!(fib.max, op("3|1|2"));
        // the face's own extreme vertices are the associahedral one
        assert_eq!(f.min_vertex, pm("3|1|2"));
        assert_eq!(f.max_vertex, pm("3|1|2"));
    }

    #[test]
    fn fibers_partition_the_facets() {
        use std::collections::BTreeSet;
        for n in 3..=6u8 {
            let mut seen: BTreeSet<OrderedPartition> = BTreeSet::new();
            let mut total = 0usize;
            for f in enumerate_faces_k(n, Some(n - 2)).unwrap() {
                for u in fiber(&f).members {
                    assert!(seen.insert(u), "facet fiber overlap at n={n}");
                    total += 1;
                }
            }
            assert_eq!(total, (1usize << n) - 2, "n={n}");
        }
    }

    #[test]
    fn fibers_are_disjoint_all_dims() {
        use std::collections::BTreeSet;
        for n in 2..=6u8 {
            for dim in 1..n {
                let mut seen: BTreeSet<OrderedPartition> = BTreeSet::new();
                for f in enumerate_faces_k(n, Some(dim)).unwrap() {
                    for u in fiber(&f).members {
                        assert!(seen.insert(u), "fiber overlap at n={n} dim={dim}");
                    }
                }
            }
        }
    }

    #[test]
    fn fiber_members_degenerate_except_min() {
        for n in 2..=6u8 {
            for f in enumerate_faces_k(n, None).unwrap() {
                if f.dim() == 0 {
                    continue;
                }
                for u in fiber(&f).members {
                    if u == f.min_cell {
                        assert!(!u.is_degenerate());
                    } else {
                        assert!(u.is_degenerate(), "n={n}: {u}");
                    }
                }
            }
        }
    }

    #[test]
    fn associahedral_vertex_examples() {
        assert!(is_associahedral_vertex(&pm("4|2|1|3")));
        assert!(is_associahedral_vertex(&pm("5|3|1|2|4|6")));
        assert!(!is_associahedral_vertex(&pm("1|3|2")));
    }

    #[test]
    fn associahedral_vertices_are_counted_by_catalan() {
        let catalan = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430];
        for n in 1..=7u8 {
            let count = Permutation::all(n)
                .filter(is_associahedral_vertex)
                .count() as u64;
            assert_eq!(count, catalan[n as usize], "n={n}");
        }
    }

    #[test]
    fn run_minima_decrease_at_associahedral_vertices() {
        for n in 1..=6u8 {
            for v in Permutation::all(n) {
                if !is_associahedral_vertex(&v) {
                    continue;
                }
                let cell = right_run_cell(&v);
                let minima: Vec<u8> = cell.blocks().iter().map(|b| b.min_elem()).collect();
                assert!(
                    minima.windows(2).all(|w| w[0] > w[1]),
                    "run minima not decreasing at {v}"
                );
            }
        }
    }

    #[test]
    fn tamari_examples() {
        let f = KFace::new(t("(ooo)oo"), 4).unwrap();
        let g = KFace::new(t("o(oo(oo))"), 4).unwrap();
        assert!(tamari_leq(&f, &g).unwrap());
        let top = KFace::new(Tree::corolla(5), 4).unwrap();
        assert!(!tamari_leq(&top, &top).unwrap());
        let bottom = KFace::new(t("(((oo)o)o)o"), 4).unwrap();
        assert!(tamari_leq(&bottom, &top).unwrap());
    }

    #[test]
    fn tamari_restricts_to_rotation_closure_on_binary_trees() {
        use std::collections::{BTreeMap, BTreeSet, VecDeque};

        // single increasing rotation: ((A B) C) -> (A (B C)) at any node
        fn rotations(t: &Tree) -> Vec<Tree> {
            let mut out = Vec::new();
            if let Tree::Node(cs) = t {
                if let Tree::Node(left) = &cs[0] {
                    out.push(Tree::Node(vec![
                        left[0].clone(),
                        Tree::Node(vec![left[1].clone(), cs[1].clone()]),
                    ]));
                }
                for (i, c) in cs.iter().enumerate() {
                    for r in rotations(c) {
                        let mut cs2 = cs.clone();
                        cs2[i] = r;
                        out.push(Tree::Node(cs2));
                    }
                }
            }
            out
        }

        for n in 2..=5u8 {
            let verts = enumerate_faces_k(n, Some(0)).unwrap();
            // reflexivity and antisymmetry
            for a in &verts {
                assert!(tamari_leq(a, a).unwrap());
            }
            // rotation closure oracle
            let mut reach: BTreeMap<Tree, BTreeSet<Tree>> = BTreeMap::new();
            for a in &verts {
                let mut seen = BTreeSet::new();
                let mut queue = VecDeque::from([a.tree.clone()]);
                while let Some(x) = queue.pop_front() {
                    if seen.insert(x.clone()) {
                        queue.extend(rotations(&x));
                    }
                }
                reach.insert(a.tree.clone(), seen);
            }
            for a in &verts {
                for b in &verts {
                    assert_eq!(
                        tamari_leq(a, b).unwrap(),
                        reach[&a.tree].contains(&b.tree),
                        "n={n}: {} vs {}",
                        a.tree,
                        b.tree
                    );
                }
            }
        }
    }

    #[test]
    fn projection_is_cellular() {
        use crate::partition::faces;
        for n in 2..=5u8 {
            for a in faces(n) {
                let ta = tree_of(&a);
                for u in a.boundary() {
                    assert!(
                        tree_of(&u).is_face_of(&ta) || tree_of(&u) == ta,
                        "θ not cellular at {a} / {u}"
                    );
                }
            }
        }
    }

    #[test]
    fn face_counts() {
        assert_eq!(enumerate_faces_k(3, Some(0)).unwrap().len(), 5);
        assert_eq!(enumerate_faces_k(4, Some(2)).unwrap().len(), 9);
        assert_eq!(enumerate_faces_k(2, None).unwrap().len(), 3);
    }

    #[test]
    fn fiber_extremes_carry_the_face_extremes() {
        for n in 2..=6u8 {
            for f in enumerate_faces_k(n, None).unwrap() {
                if f.dim() == 0 {
                    continue;
                }
                let fib = fiber(&f);
                assert_eq!(f.max_cell(), fib.max, "n={n} tree {}", f.tree);
                assert_eq!(f.max_vertex, fib.max.max_vertex(), "n={n} tree {}", f.tree);
                assert_eq!(f.min_vertex, fib.min.min_vertex(), "n={n} tree {}", f.tree);
            }
        }
    }

    #[test]
    fn theorem_shape_of_max_cell_on_matching_first_components() {
        // where F occurs as the first factor of a matching pair, its maximal
        // subdivision cell is the decreasing-run cell of its maximal vertex
        use crate::pdiag::left_run_cell;
        for n in 2..=5u8 {
            let faces = enumerate_faces_k(n, None).unwrap();
            for f in &faces {
                let partner_exists = faces.iter().any(|g| {
                    f.dim() + g.dim() == n - 1 && tamari_leq(f, g).unwrap()
                });
                if partner_exists && f.dim() > 0 {
                    assert_eq!(
                        f.max_cell(),
                        left_run_cell(&f.max_vertex),
                        "n={n} tree {}",
                        f.tree
                    );
                }
            }
        }
    }
}
