//! The dyadic realization of `P_n` as a subdivision of the cube `I^{n-1}`.
//!
//! Every face gets an axis-aligned box with exact dyadic endpoints built by
//! the product recursion: coordinate `k-1` records where element `k` sits.
//! Writing `a` for the face with element `n` removed and `a_j` for the
//! number of elements in the last `j` blocks of `a`, element `n` merged
//! into the block `j`-th from the right contributes the side
//! `[1 - 1/2^{a_{j-1}}, 1 - 1/2^{a_j}]`, and `n` alone as a block
//! contributes the single point between the adjacent intervals (0 when
//! last, 1 when first). No floating point is used anywhere.

use std::fmt;

use serde::Serialize;

use crate::partition::{faces_with_dim, Block, OrderedPartition};
use crate::pdiag::{enumerate_cps, scp};
use crate::perm::Permutation;
use crate::Result;

/// An exact dyadic rational `num / 2^k`, kept normalized.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Dyadic {
    num: u64,
    k: u8,
}

impl Dyadic {
    pub fn new(num: u64, k: u8) -> Dyadic {
        let mut d = Dyadic { num, k };
        d.normalize();
        d
    }

    pub fn zero() -> Dyadic {
        Dyadic { num: 0, k: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { num: 1, k: 0 }
    }

    /// `1 - 1/2^e`.
    pub fn one_minus_half_pow(e: u32) -> Dyadic {
        if e == 0 {
            return Dyadic::zero();
        }
        Dyadic::new((1u64 << e) - 1, e as u8)
    }

    fn normalize(&mut self) {
        while self.k > 0 && self.num.is_multiple_of(2) {
            self.num /= 2;
            self.k -= 1;
        }
    }

    fn raised(self, k: u8) -> u64 {
        self.num << (k - self.k)
    }
}

impl std::ops::Sub for Dyadic {
    type Output = Dyadic;

    fn sub(self, other: Dyadic) -> Dyadic {
        let k = self.k.max(other.k);
        Dyadic::new(self.raised(k) - other.raised(k), k)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let k = self.k.max(other.k);
        self.raised(k).cmp(&other.raised(k))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.k)
        }
    }
}

/// A closed interval with dyadic endpoints; possibly a single point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn point(x: Dyadic) -> Interval {
        Interval { lo: x, hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn length(&self) -> Dyadic {
        self.hi - self.lo
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Interiors overlap (for equal-dimension disjointness checks).
    fn overlaps_openly(&self, other: &Interval) -> bool {
        if self.is_point() || other.is_point() {
            // a point side counts as overlapping only when equal and both points
            self.lo == other.lo && self.is_point() && other.is_point()
        } else {
            self.lo < other.hi && other.lo < self.hi
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

/// A product of dyadic intervals inside `I^{n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DyBox {
    pub sides: Vec<Interval>,
}

impl DyBox {
    pub fn dim(&self) -> u8 {
        self.sides.iter().filter(|s| !s.is_point()).count() as u8
    }

    pub fn contains(&self, other: &DyBox) -> bool {
        self.sides.len() == other.sides.len()
            && self
                .sides
                .iter()
                .zip(&other.sides)
                .all(|(a, b)| a.contains(b))
    }

    pub fn min_corner(&self) -> Vec<Dyadic> {
        self.sides.iter().map(|s| s.lo).collect()
    }

    pub fn max_corner(&self) -> Vec<Dyadic> {
        self.sides.iter().map(|s| s.hi).collect()
    }

    /// Volume in the box's own dimension as `(numerator, log2 denominator)`.
    pub fn volume(&self) -> (u128, u32) {
        let mut num: u128 = 1;
        let mut den = 0u32;
        for s in &self.sides {
            if s.is_point() {
                continue;
            }
            let len = s.length();
            num *= len.num as u128;
            den += len.k as u32;
        }
        (num, den)
    }

    /// Interiors intersect, comparing same-dimension boxes side by side.
    pub fn overlaps_openly(&self, other: &DyBox) -> bool {
        self.sides
            .iter()
            .zip(&other.sides)
            .all(|(a, b)| a.overlaps_openly(b))
    }
}

impl fmt::Display for DyBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sides.is_empty() {
            return write!(f, "·");
        }
        for (i, s) in self.sides.iter().enumerate() {
            if i > 0 {
                write!(f, "×")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The box assigned to a face by the recursive construction.
pub fn box_of_face(a: &OrderedPartition) -> DyBox {
    let n = a.n();
    if n == 1 {
        return DyBox { sides: Vec::new() };
    }
    // peel element n
    let pos = a.level_of(n); // 1-based block position of n
    let alone = a.blocks()[pos as usize - 1].len() == 1;
    let reduced_blocks: Vec<Block> = a
        .blocks()
        .iter()
        .enumerate()
        .filter_map(|(i, b)| {
            let nb = if i as u8 + 1 == pos {
                b.difference(Block(1 << (n - 1)))
            } else {
                *b
            };
            (!nb.is_empty()).then_some(nb)
        })
        .collect();
    let reduced = OrderedPartition::new(n - 1, reduced_blocks).unwrap();
    let p = reduced.num_blocks();

    // a_j = number of elements in the last j blocks of the reduced face
    let suffix_count = |j: u8| -> u32 {
        reduced.blocks()[(p - j) as usize..]
            .iter()
            .map(|b| b.len())
            .sum()
    };

    let side = if alone {
        // j blocks of the reduced partition lie after the singleton n
        let j = a.num_blocks() - pos;
        let x = if j == p {
            Dyadic::one()
        } else {
            Dyadic::one_minus_half_pow(suffix_count(j))
        };
        Interval::point(x)
    } else {
        let j = p - pos + 1;
        let lo = Dyadic::one_minus_half_pow(suffix_count(j - 1));
        let hi = if j == p {
            Dyadic::one()
        } else {
            Dyadic::one_minus_half_pow(suffix_count(j))
        };
        Interval { lo, hi }
    };

    let mut b = box_of_face(&reduced);
    b.sides.push(side);
    b
}

/// The point of a vertex.
pub fn vertex_point(v: &Permutation) -> Vec<Dyadic> {
    box_of_face(&OrderedPartition::singletons(v)).min_corner()
}

/// Geometric test: the vertex lies at a corner of `I^{n-1}`.
pub fn is_cubical_vertex(v: &Permutation) -> bool {
    vertex_point(v)
        .iter()
        .all(|x| *x == Dyadic::zero() || *x == Dyadic::one())
}

/// Recursive rule: cubical vertices are generated from the vertex of `P_1`
/// by prepending or appending the largest value.
pub fn is_cubical_vertex_recursive(v: &Permutation) -> bool {
    let w = v.word();
    let n = v.n();
    if n == 1 {
        return true;
    }
    if w[0] != n && w[n as usize - 1] != n {
        return false;
    }
    let shorter: Vec<u8> = w.iter().copied().filter(|&x| x != n).collect();
    is_cubical_vertex_recursive(&Permutation::new(shorter).unwrap())
}

/// A pair of subdivision cubes anchored at a vertex: the first's max corner
/// and the second's min corner both sit at the anchor, and `k1 + k2` is the
/// ambient dimension.
#[derive(Clone, Debug)]
pub struct SubdivisionCubePair {
    pub first: Vec<OrderedPartition>,
    pub second: Vec<OrderedPartition>,
    pub k1: u8,
    pub k2: u8,
    pub anchor: Permutation,
}

impl SubdivisionCubePair {
    pub fn first_region(&self) -> DyBox {
        union_box(&self.first).expect("first component is a box")
    }

    pub fn second_region(&self) -> DyBox {
        union_box(&self.second).expect("second component is a box")
    }
}

impl fmt::Display for SubdivisionCubePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_set = |cells: &[OrderedPartition]| {
            let mut parts: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
            parts.sort();
            format!("{{{}}}", parts.join(", "))
        };
        write!(f, "({}, {})", fmt_set(&self.first), fmt_set(&self.second))
    }
}

/// The bounding box of the cells, or `None` when their union is not exactly
/// a box (checked by exact volume: same-dimension cells tile a box iff they
/// are pairwise openly disjoint and their volumes add up).
pub fn union_box(cells: &[OrderedPartition]) -> Option<DyBox> {
    let boxes: Vec<DyBox> = cells.iter().map(box_of_face).collect();
    let k = boxes[0].dim();
    if boxes.iter().any(|b| b.dim() != k) {
        return None;
    }
    let mut sides = boxes[0].sides.clone();
    for b in &boxes[1..] {
        for (s, t) in sides.iter_mut().zip(&b.sides) {
            s.lo = s.lo.min(t.lo);
            s.hi = s.hi.max(t.hi);
        }
    }
    let hull = DyBox { sides };
    if hull.dim() != k {
        return None;
    }
    for (i, a) in boxes.iter().enumerate() {
        for b in &boxes[i + 1..] {
            if a.overlaps_openly(b) {
                return None;
            }
        }
    }
    let (hn, hd) = hull.volume();
    let mut total: (u128, u32) = (0, 0);
    for b in &boxes {
        let (n1, d1) = b.volume();
        let d = total.1.max(d1);
        total = ((total.0 << (d - total.1)) + (n1 << (d - d1)), d);
    }
    let d = total.1.max(hd);
    if (total.0 << (d - total.1)) == (hn << (d - hd)) {
        Some(hull)
    } else {
        None
    }
}

/// The maximal pair at `σ`: the union of the first components of
/// `A_σ × B_σ` against the union of the second components.
pub fn maximal_pair_scp(sigma: &Permutation) -> SubdivisionCubePair {
    let cps = enumerate_cps(sigma);
    let mut first: Vec<OrderedPartition> = cps.iter().map(|cp| cp.alpha.clone()).collect();
    let mut second: Vec<OrderedPartition> = cps.iter().map(|cp| cp.beta.clone()).collect();
    first.sort();
    first.dedup();
    second.sort();
    second.dedup();
    let base = scp(sigma);
    let k1 = base.alpha.dim();
    let k2 = base.beta.dim();
    let pair = SubdivisionCubePair {
        first,
        second,
        k1,
        k2,
        anchor: sigma.clone(),
    };
    let pt = vertex_point(sigma);
    let r1 = pair.first_region();
    let r2 = pair.second_region();
    assert_eq!(r1.max_corner(), pt, "first region must end at the anchor");
    assert_eq!(r2.min_corner(), pt, "second region must start at the anchor");
    pair
}

/// Exhaustive geometric oracle: all pairs of subdivision cubes of the top
/// cell anchored at `v`. Exponential in `n`; intended for `n ≤ 5`.
pub fn enumerate_pairs_at(v: &Permutation) -> Vec<SubdivisionCubePair> {
    let n = v.n();
    let pt = vertex_point(v);
    let dims = n as usize - 1;

    // every endpoint the realization can produce
    let mut cuts: Vec<Dyadic> = (0..n as u32).map(Dyadic::one_minus_half_pow).collect();
    cuts.push(Dyadic::one());
    cuts.sort();
    cuts.dedup();

    let faces_by_dim: Vec<Vec<(OrderedPartition, DyBox)>> = (0..n)
        .map(|d| {
            faces_with_dim(n, d)
                .unwrap()
                .map(|a| {
                    let b = box_of_face(&a);
                    (a, b)
                })
                .collect()
        })
        .collect();

    // anchored boxes on one side, keyed by dimension
    let candidate_boxes = |toward_min: bool| -> Vec<(DyBox, Vec<OrderedPartition>)> {
        let mut per_axis: Vec<Vec<Interval>> = Vec::with_capacity(dims);
        for &x in pt.iter().take(dims) {
            let mut axis = vec![Interval::point(x)];
            for c in &cuts {
                if toward_min && *c < x {
                    axis.push(Interval { lo: *c, hi: x });
                } else if !toward_min && *c > x {
                    axis.push(Interval { lo: x, hi: *c });
                }
            }
            per_axis.push(axis);
        }
        let mut out = Vec::new();
        let mut choice = vec![0usize; dims];
        'outer: loop {
            let sides: Vec<Interval> = (0..dims).map(|d| per_axis[d][choice[d]]).collect();
            let candidate = DyBox { sides };
            let k = candidate.dim();
            let mut members: Vec<OrderedPartition> = faces_by_dim[k as usize]
                .iter()
                .filter(|(_, b)| candidate.contains(b))
                .map(|(a, _)| a.clone())
                .collect();
            members.sort();
            if !members.is_empty() {
                if let Some(hull) = union_box(&members) {
                    if hull == candidate {
                        out.push((candidate, members));
                    }
                }
            }
            let mut i = 0;
            loop {
                if i == dims {
                    break 'outer;
                }
                choice[i] += 1;
                if choice[i] < per_axis[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
        out
    };

    let firsts = candidate_boxes(true);
    let seconds = candidate_boxes(false);
    let mut pairs = Vec::new();
    for (b1, m1) in &firsts {
        for (b2, m2) in &seconds {
            if b1.dim() + b2.dim() == dims as u8 {
                pairs.push(SubdivisionCubePair {
                    first: m1.clone(),
                    second: m2.clone(),
                    k1: b1.dim(),
                    k2: b2.dim(),
                    anchor: v.clone(),
                });
            }
        }
    }
    pairs
}

/// One named check with its outcome.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub n: u8,
    pub check: String,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

/// Outcome of the geometric validation of the realization.
#[derive(Clone, Debug, Serialize)]
pub struct TilingReport {
    pub n: u8,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

/// Validate the realization of `P_n` inside `I^{n-1}`:
///
/// 1. vertex points are pairwise distinct;
/// 2. every face box has the face's dimension, with the extreme vertices at
///    its min/max corners and every vertex point inside it;
/// 3. the facet boxes tile the cube boundary — on each of the `2(n-1)` cube
///    facets they have pairwise disjoint interiors and dyadic volumes
///    summing to exactly 1;
/// 4. box containment coincides with the face relation (checked for
///    `n ≤ 5`, quadratic in the face count).
pub fn verify_tiling(n: u8) -> Result<TilingReport> {
    use crate::partition::faces;

    let mut checks: Vec<CheckResult> = Vec::new();
    let add = |check: &str, witnesses: Vec<String>, checks: &mut Vec<CheckResult>| {
        checks.push(CheckResult {
            n,
            check: check.to_string(),
            pass: witnesses.is_empty(),
            witnesses,
        });
    };

    // 1. injectivity of vertex points
    let mut seen: std::collections::BTreeMap<Vec<Dyadic>, Permutation> =
        std::collections::BTreeMap::new();
    let mut bad = Vec::new();
    for v in Permutation::all(n) {
        let pt = vertex_point(&v);
        if let Some(prev) = seen.insert(pt, v.clone()) {
            bad.push(format!("{prev} and {v} share a point"));
        }
    }
    add("vertex points are distinct", bad, &mut checks);

    // 2. box shape and extremes
    let mut bad = Vec::new();
    let all: Vec<OrderedPartition> = faces(n).collect();
    for a in &all {
        let b = box_of_face(a);
        if b.dim() != a.dim() {
            bad.push(format!("box of {a} has dimension {}", b.dim()));
            continue;
        }
        if b.min_corner() != vertex_point(&a.min_vertex())
            || b.max_corner() != vertex_point(&a.max_vertex())
        {
            bad.push(format!("extreme vertices of {a} miss the box corners"));
        }
        for v in a.vertices() {
            let pt = vertex_point(&v);
            let inside = b
                .sides
                .iter()
                .zip(&pt)
                .all(|(s, x)| s.lo <= *x && *x <= s.hi);
            if !inside {
                bad.push(format!("vertex {v} of {a} escapes its box"));
            }
        }
    }
    add("face boxes carry their faces", bad, &mut checks);

    // 3. facets tile the cube boundary
    let mut bad = Vec::new();
    if n >= 2 {
        let facets: Vec<(OrderedPartition, DyBox)> = faces_with_dim(n, n - 2)
            .unwrap()
            .map(|a| {
                let b = box_of_face(&a);
                (a, b)
            })
            .collect();
        for axis in 0..(n - 1) as usize {
            for side in [Dyadic::zero(), Dyadic::one()] {
                let on_wall: Vec<&(OrderedPartition, DyBox)> = facets
                    .iter()
                    .filter(|(_, b)| b.sides[axis] == Interval::point(side))
                    .collect();
                let mut total: (u128, u32) = (0, 0);
                for (_, b) in &on_wall {
                    let (v, d) = b.volume();
                    let dd = total.1.max(d);
                    total = ((total.0 << (dd - total.1)) + (v << (dd - d)), dd);
                }
                if total.0 != 1u128 << total.1 {
                    bad.push(format!("wall x{axis}={side} has facet volume ≠ 1"));
                }
                for (i, (a1, b1)) in on_wall.iter().enumerate() {
                    for (a2, b2) in &on_wall[i + 1..] {
                        if b1.overlaps_openly(b2) {
                            bad.push(format!("facets {a1} and {a2} overlap"));
                        }
                    }
                }
            }
        }
        // every facet lies on some wall
        for (a, b) in &facets {
            let on_boundary = (0..(n - 1) as usize).any(|axis| {
                b.sides[axis] == Interval::point(Dyadic::zero())
                    || b.sides[axis] == Interval::point(Dyadic::one())
            });
            if !on_boundary {
                bad.push(format!("facet {a} is interior"));
            }
        }
    }
    add("facet boxes tile the boundary", bad, &mut checks);

    // 4. box containment = face relation (quadratic; skip above n = 5)
    let mut bad = Vec::new();
    if n <= 5 {
        let boxed: Vec<(&OrderedPartition, DyBox)> =
            all.iter().map(|a| (a, box_of_face(a))).collect();
        for (a, ba) in &boxed {
            for (b, bb) in &boxed {
                let geo = bb.contains(ba);
                let comb = a.is_face_of(b);
                if geo != comb {
                    bad.push(format!(
                        "{a} ⊆ {b}: geometric {geo} vs combinatorial {comb}"
                    ));
                }
            }
        }
    }
    add("box containment is the face relation", bad, &mut checks);

    let pass = checks.iter().all(|c| c.pass);
    Ok(TilingReport { n, pass, checks })
}
