//! Small worked instances used in tests, examples and the CLI self-checks.

use std::collections::BTreeMap;

use crate::decomposition::{from_atoms, PreDecomposition, TernaryTree};
use crate::metric::{distance_matrix_from_points, DistanceMatrix, PointCloud};
use crate::subset::Subset;

const SEVEN_POINTS: [(&str, f64, f64); 7] = [
    ("a", 0.0, 7.0),
    ("b", 2.0, 7.0),
    ("c", 2.0, 2.0),
    ("d", 2.0, 1.0),
    ("e", 5.0, 1.0),
    ("f", 5.0, 0.0),
    ("g", 7.0, 0.0),
];

/// Seven points in the plane whose single-linkage merges happen at 1, 2, 3, 5.
pub fn seven_point_cloud() -> PointCloud {
    PointCloud::new(
        SEVEN_POINTS.iter().map(|p| p.0.to_string()).collect(),
        SEVEN_POINTS.iter().map(|p| vec![p.1, p.2]).collect(),
    )
    .expect("fixture is valid")
}

pub fn seven_point_matrix() -> DistanceMatrix {
    distance_matrix_from_points(&seven_point_cloud()).expect("fixture is valid")
}

/// The points 1, 2, -1, -2 on the real line, in that index order.
pub fn line4_matrix() -> DistanceMatrix {
    let xs = [1.0f64, 2.0, -1.0, -2.0];
    let rows = xs.iter().map(|a| xs.iter().map(|b| (a - b).abs()).collect()).collect();
    DistanceMatrix::new(xs.iter().map(|x| format!("{x}")).collect(), rows).expect("fixture is valid")
}

fn seven_labels() -> Vec<String> {
    SEVEN_POINTS.iter().map(|p| p.0.to_string()).collect()
}

fn named(labels: &str) -> Subset {
    labels.bytes().map(|c| (c - b'a') as usize).collect()
}

/// A valid but inexact pre-decomposition of the seven points.
///
/// Inner node 0 joins inner nodes 1, 2, 3. Node 1 holds leaves `{b,c}` and
/// `{a}`, node 2 holds `{g}` and `{e,f}`, node 3 holds `{c,d}` and `{e,f,g}`.
pub fn seven_point_pre_decomposition() -> (PreDecomposition, Vec<String>) {
    let edges = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)];
    let tree = TernaryTree::from_edges(10, &edges).expect("fixture tree");
    let half = BTreeMap::from([
        ((0, 1), named("ab")),
        ((0, 2), named("efg")),
        ((0, 3), named("cdef")),
        ((1, 4), named("bc")),
        ((1, 5), named("a")),
        ((2, 6), named("g")),
        ((2, 7), named("ef")),
        ((3, 8), named("cd")),
        ((3, 9), named("efg")),
    ]);
    let pd = PreDecomposition::from_one_direction(7, tree, &half).expect("fixture gammas");
    (pd, seven_labels())
}

/// An exact decomposition of the seven points with atoms
/// `{a}, {b}, {c,d}, {e,f}, {g}`.
pub fn seven_point_decomposition() -> (PreDecomposition, Vec<String>) {
    let edges = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7)];
    let tree = TernaryTree::from_edges(8, &edges).expect("fixture tree");
    let atoms = BTreeMap::from([
        (3, named("cd")),
        (4, named("b")),
        (5, named("a")),
        (6, named("g")),
        (7, named("ef")),
    ]);
    let d = from_atoms(7, tree, &atoms).expect("fixture atoms");
    (d.into_pre(), seven_labels())
}
