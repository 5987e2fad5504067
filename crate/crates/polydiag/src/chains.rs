//! Mod-2 chain-level checks.
//!
//! A cellular diagonal must satisfy `∂Δ = (∂⊗1 + 1⊗∂)Δ` with `∂∂ = 0`;
//! over GF(2) a chain is a plain set of cells and addition is symmetric
//! difference, so both sides are computed as xor-sets and compared.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::kdiag::{delta_k_face, delta_k_su};
use crate::kface::KFace;
use crate::partition::OrderedPartition;
use crate::pdiag::{delta_p_face, delta_p_top, Polytope};
use crate::tree::Tree;
use crate::Result;

fn xor<T: Ord>(set: &mut BTreeSet<T>, x: T) {
    if !set.remove(&x) {
        set.insert(x);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainMapReport {
    pub polytope: Polytope,
    pub n: u8,
    pub boundary_squares_to_zero: bool,
    pub chain_map_holds: bool,
    /// Sample offending tensors, as strings, when a check fails.
    pub offenders: Vec<String>,
}

impl ChainMapReport {
    pub fn pass(&self) -> bool {
        self.boundary_squares_to_zero && self.chain_map_holds
    }
}

/// Check `∂Δ(top) = (∂⊗1 + 1⊗∂)Δ(top)` over GF(2), where `Δ` of a proper
/// face is the comultiplicative extension, plus `∂∂ = 0` on every face.
pub fn chain_map_check(polytope: Polytope, n: u8) -> Result<ChainMapReport> {
    match polytope {
        Polytope::P => Ok(chain_map_p(n)),
        Polytope::K => Ok(chain_map_k(n)),
    }
}

fn chain_map_p(n: u8) -> ChainMapReport {
    use crate::partition::faces;

    let mut dd_zero = true;
    for a in faces(n) {
        if a.dim() < 2 {
            continue;
        }
        let mut acc: BTreeSet<OrderedPartition> = BTreeSet::new();
        for f in a.boundary() {
            for g in f.boundary() {
                xor(&mut acc, g);
            }
        }
        if !acc.is_empty() {
            dd_zero = false;
        }
    }

    let top = OrderedPartition::top(n);
    let mut lhs: BTreeSet<(OrderedPartition, OrderedPartition)> = BTreeSet::new();
    for facet in top.boundary() {
        for comp in delta_p_face(&facet).iter() {
            xor(&mut lhs, comp.clone());
        }
    }
    let mut rhs: BTreeSet<(OrderedPartition, OrderedPartition)> = BTreeSet::new();
    for (alpha, beta) in delta_p_top(n).iter() {
        for a in alpha.boundary() {
            xor(&mut rhs, (a, beta.clone()));
        }
        for b in beta.boundary() {
            xor(&mut rhs, (alpha.clone(), b));
        }
    }
    let offenders: Vec<String> = lhs
        .symmetric_difference(&rhs)
        .take(10)
        .map(|(a, b)| format!("{a} ⊗ {b}"))
        .collect();
    ChainMapReport {
        polytope: Polytope::P,
        n,
        boundary_squares_to_zero: dd_zero,
        chain_map_holds: offenders.is_empty(),
        offenders,
    }
}

fn chain_map_k(n: u8) -> ChainMapReport {
    let mut dd_zero = true;
    for t in Tree::enumerate(n + 1) {
        if t.dim() < 2 {
            continue;
        }
        let mut acc: BTreeSet<Tree> = BTreeSet::new();
        for f in t.boundary() {
            for g in f.boundary() {
                xor(&mut acc, g);
            }
        }
        if !acc.is_empty() {
            dd_zero = false;
        }
    }

    let top = Tree::corolla(n + 1);
    let mut lhs: BTreeSet<(Tree, Tree)> = BTreeSet::new();
    for facet in top.boundary() {
        let face = KFace::new(facet, n).unwrap();
        for comp in delta_k_face(&face).iter() {
            xor(&mut lhs, comp.clone());
        }
    }
    let mut rhs: BTreeSet<(Tree, Tree)> = BTreeSet::new();
    for (alpha, beta) in delta_k_su(n).iter() {
        for a in alpha.boundary() {
            xor(&mut rhs, (a, beta.clone()));
        }
        for b in beta.boundary() {
            xor(&mut rhs, (alpha.clone(), b));
        }
    }
    let offenders: Vec<String> = lhs
        .symmetric_difference(&rhs)
        .take(10)
        .map(|(a, b)| format!("{a} ⊗ {b}"))
        .collect();
    ChainMapReport {
        polytope: Polytope::K,
        n,
        boundary_squares_to_zero: dd_zero,
        chain_map_holds: offenders.is_empty(),
        offenders,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_and_pentagon() {
        let r = chain_map_check(Polytope::P, 3).unwrap();
        assert!(r.pass(), "{r:?}");
        let r = chain_map_check(Polytope::K, 3).unwrap();
        assert!(r.pass(), "{r:?}");
    }

    #[test]
    fn dimension_four() {
        assert!(chain_map_check(Polytope::P, 4).unwrap().pass());
        assert!(chain_map_check(Polytope::K, 4).unwrap().pass());
    }
}
