//! Python bindings for the exact diagonal computations.
//!
//! The API is string-based: permutations as `"2|1|3|5|4"` or `"21354"`,
//! partitions as `"12|3|45"`, trees as `"(ooo)oo"`. Build the module with
//! `cargo build -p polydiag-py --release` and load the produced cdylib as
//! `polydiag_py` (see `python/smoke_test.py` at the repository root).

// the #[pyfunction] expansion trips this lint on its own conversions
#![allow(clippy::useless_conversion)]

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use polydiag::kface::KFace;
use polydiag::partition::OrderedPartition;
use polydiag::perm::Permutation;
use polydiag::tree::Tree;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_perm(s: &str) -> PyResult<Permutation> {
    s.parse().map_err(err)
}

fn parse_partition(s: &str) -> PyResult<OrderedPartition> {
    s.parse().map_err(err)
}

fn parse_face(s: &str) -> PyResult<KFace> {
    let tree: Tree = s.parse().map_err(err)?;
    let n = tree.leaf_count() - 1;
    KFace::new(tree, n).map_err(err)
}

/// Inversion set of a permutation, as a list of pairs.
#[pyfunction]
fn inversion_set(sigma: &str) -> PyResult<Vec<(u8, u8)>> {
    Ok(parse_perm(sigma)?.inversion_set().pairs())
}

/// Weak-order comparison of two permutations.
#[pyfunction]
fn weak_leq(u: &str, v: &str) -> PyResult<bool> {
    polydiag::perm::weak_leq(&parse_perm(u)?, &parse_perm(v)?).map_err(err)
}

/// Is the partition degenerate (its projection drops dimension)?
#[pyfunction]
fn is_degenerate(a: &str) -> PyResult<bool> {
    Ok(parse_partition(a)?.is_degenerate())
}

/// The strong complementary pair of a permutation, as two partitions.
#[pyfunction]
fn scp(sigma: &str) -> PyResult<(String, String)> {
    let cp = polydiag::pdiag::scp(&parse_perm(sigma)?);
    Ok((cp.alpha.to_string(), cp.beta.to_string()))
}

/// The step matrix of a permutation, as rows of integers (0 = empty).
#[pyfunction]
fn step_matrix(sigma: &str) -> PyResult<Vec<Vec<u8>>> {
    let m = polydiag::pdiag::StepMatrix::of(&parse_perm(sigma)?);
    Ok((1..=m.rows)
        .map(|i| (1..=m.cols).map(|j| m.entry(i, j)).collect())
        .collect())
}

/// Right-shift action on a partition: move `elems` from block `j` to `j+1`.
#[pyfunction]
fn right_shift(a: &str, j: u8, elems: Vec<u8>) -> PyResult<String> {
    let a = parse_partition(a)?;
    let m = polydiag::partition::Block::from_elements(elems);
    Ok(polydiag::pdiag::right_shift(&a, j, m).map_err(err)?.to_string())
}

/// Left-shift action on a partition: move `elems` from block `j` to `j-1`.
#[pyfunction]
fn left_shift(a: &str, j: u8, elems: Vec<u8>) -> PyResult<String> {
    let a = parse_partition(a)?;
    let m = polydiag::partition::Block::from_elements(elems);
    Ok(polydiag::pdiag::left_shift(&a, j, m).map_err(err)?.to_string())
}

/// All faces of P_n (as partitions) or K_n (as trees).
#[pyfunction]
#[pyo3(signature = (polytope, n, dim=None))]
fn faces(polytope: &str, n: u8, dim: Option<u8>) -> PyResult<Vec<String>> {
    match polytope {
        "P" | "p" => Ok(match dim {
            Some(d) => polydiag::partition::faces_with_dim(n, d)
                .map_err(err)?
                .map(|a| a.to_string())
                .collect(),
            None => polydiag::partition::faces(n).map(|a| a.to_string()).collect(),
        }),
        "K" | "k" => {
            if n < 2 {
                return Err(PyValueError::new_err("K_n needs n >= 2"));
            }
            Ok(polydiag::kface::enumerate_faces_k(n - 1, dim)
                .map_err(err)?
                .into_iter()
                .map(|f| f.tree.to_string())
                .collect())
        }
        other => Err(PyValueError::new_err(format!("unknown polytope {other:?}"))),
    }
}

/// The diagonal of the top cell of P_n, as pairs of partitions.
#[pyfunction]
fn delta_p(n: u8) -> PyResult<Vec<(String, String)>> {
    if n == 0 || n > 9 {
        return Err(PyValueError::new_err("n must be in 1..=9"));
    }
    Ok(polydiag::pdiag::delta_p_top(n)
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect())
}

/// The diagonal of the top cell of K_n, as pairs of trees.
/// `formula` is `"su"` (shift route) or `"magical"` (Tamari route).
#[pyfunction]
#[pyo3(signature = (n, formula="su"))]
fn delta_k(n: u8, formula: &str) -> PyResult<Vec<(String, String)>> {
    if !(2..=9).contains(&n) {
        return Err(PyValueError::new_err("n must be in 2..=9"));
    }
    let set = match formula {
        "su" => polydiag::kdiag::delta_k_su(n - 1),
        "magical" => polydiag::kdiag::delta_k_magical(n - 1),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown formula {other:?} (expected \"su\" or \"magical\")"
            )))
        }
    };
    Ok(set
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect())
}

/// Project a partition to its planar rooted tree.
#[pyfunction]
fn tonks(a: &str) -> PyResult<String> {
    Ok(polydiag::kface::tree_of(&parse_partition(a)?).to_string())
}

/// Tamari (face order) comparison of two associahedron faces.
#[pyfunction]
fn tamari_leq(f: &str, g: &str) -> PyResult<bool> {
    polydiag::kface::tamari_leq(&parse_face(f)?, &parse_face(g)?).map_err(err)
}

/// Is the permutation an associahedral vertex of its permutahedron?
#[pyfunction]
fn is_associahedral_vertex(v: &str) -> PyResult<bool> {
    Ok(polydiag::kface::is_associahedral_vertex(&parse_perm(v)?))
}

/// The subdivision cells of an associahedron face, with its extremes.
#[pyfunction]
fn fiber(py: Python<'_>, tree: &str) -> PyResult<PyObject> {
    let face = parse_face(tree)?;
    let fib = polydiag::kface::fiber(&face);
    let d = PyDict::new_bound(py);
    d.set_item(
        "members",
        fib.members.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
    )?;
    d.set_item("min", fib.min.to_string())?;
    d.set_item("max", fib.max.to_string())?;
    Ok(d.into())
}

/// Translate a matching pair into its complementary pair. Returns a dict
/// with `alpha`, `beta`, `sigma`, `m`, `n` (stage sequences as lists).
#[pyfunction]
fn mp_to_cp(py: Python<'_>, f: &str, g: &str) -> PyResult<PyObject> {
    let cp = polydiag::kdiag::mp_to_cp(&parse_face(f)?, &parse_face(g)?).map_err(err)?;
    let d = PyDict::new_bound(py);
    d.set_item("alpha", cp.alpha.to_string())?;
    d.set_item("beta", cp.beta.to_string())?;
    d.set_item("sigma", cp.sigma.to_string())?;
    let stages = |s: &polydiag::pdiag::ShiftSequence| -> Vec<Vec<u8>> {
        s.0.iter().map(|b| b.iter().collect()).collect()
    };
    d.set_item("m", stages(&cp.m))?;
    d.set_item("n", stages(&cp.n_moves))?;
    Ok(d.into())
}

/// Verify that the two diagonal formulas agree on K_{n+1}; returns the
/// certificate as a dict (parsed from its JSON form).
#[pyfunction]
fn verify_agreement(py: Python<'_>, n: u8) -> PyResult<PyObject> {
    if n == 0 || n > 9 {
        return Err(PyValueError::new_err("n must be in 1..=9"));
    }
    let cert = polydiag::kdiag::verify_agreement(n);
    let json = serde_json::to_string(&cert).map_err(err)?;
    let loads = py.import_bound("json")?.getattr("loads")?;
    Ok(loads.call1((json,))?.into())
}

#[pymodule]
fn polydiag_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(inversion_set, m)?)?;
    m.add_function(wrap_pyfunction!(weak_leq, m)?)?;
    m.add_function(wrap_pyfunction!(is_degenerate, m)?)?;
    m.add_function(wrap_pyfunction!(scp, m)?)?;
    m.add_function(wrap_pyfunction!(step_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(right_shift, m)?)?;
    m.add_function(wrap_pyfunction!(left_shift, m)?)?;
    m.add_function(wrap_pyfunction!(faces, m)?)?;
    m.add_function(wrap_pyfunction!(delta_p, m)?)?;
    m.add_function(wrap_pyfunction!(delta_k, m)?)?;
    m.add_function(wrap_pyfunction!(tonks, m)?)?;
    m.add_function(wrap_pyfunction!(tamari_leq, m)?)?;
    m.add_function(wrap_pyfunction!(is_associahedral_vertex, m)?)?;
    m.add_function(wrap_pyfunction!(fiber, m)?)?;
    m.add_function(wrap_pyfunction!(mp_to_cp, m)?)?;
    m.add_function(wrap_pyfunction!(verify_agreement, m)?)?;
    Ok(())
}
