//! Exhaustive checks relating linkage rules to connectivity functions.

use super::dendogram::Partition;
use super::single_linkage::{linkage_eval, LinkageKind};
use crate::connectivity::{
    find_violation, AverageLinkage, MaxLinkage, MinLinkage, Property, SetFunction, VertexConnectivity,
    WeightedGraph,
};
use crate::error::{ensure_cap, Result};
use crate::metric::DistanceMatrix;
use crate::subset::Subset;

/// Largest universe for partition enumeration.
pub const PARTITION_CAP: usize = 10;

/// Relative tolerance for the average-linkage identity.
pub const AVERAGE_REL_TOL: f64 = 1e-12;

/// Calls `visit` on every partition of `{0..n}`, via restricted growth strings.
pub fn for_each_partition(n: usize, mut visit: impl FnMut(&Partition)) -> Result<()> {
    ensure_cap("partition enumeration", n, PARTITION_CAP)?;
    if n == 0 {
        visit(&Partition::from_classes(Vec::new()));
        return Ok(());
    }
    let mut label = vec![0usize; n];
    loop {
        let k = label.iter().max().unwrap() + 1;
        let mut blocks = vec![Subset::EMPTY; k];
        for (i, &l) in label.iter().enumerate() {
            blocks[l].insert(i);
        }
        visit(&Partition::from_classes(blocks));
        // Next restricted growth string.
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(());
            }
            let prefix_max = *label[..i].iter().max().unwrap();
            if label[i] <= prefix_max {
                label[i] += 1;
                for l in &mut label[i + 1..] {
                    *l = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

pub fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

fn linkage(kind: LinkageKind, m: &DistanceMatrix, a: Subset, b: Subset) -> f64 {
    linkage_eval(kind, m, a, b).expect("blocks are disjoint and non-empty")
}

fn min_pairwise(kind: LinkageKind, m: &DistanceMatrix, p: &Partition) -> f64 {
    let b = p.blocks();
    (0..b.len())
        .flat_map(|i| (i + 1..b.len()).map(move |j| (i, j)))
        .map(|(i, j)| linkage(kind, m, b[i], b[j]))
        .fold(f64::INFINITY, f64::min)
}

fn min_radius<F: SetFunction>(f: &F, p: &Partition) -> f64 {
    p.blocks().iter().map(|&x| f.radius(x)).fold(f64::INFINITY, f64::min)
}

/// First partition and block where single linkage against the complement
/// differs from the minimum over the other blocks, or where the minimum
/// pairwise single linkage differs from `-ln max mind(X)`. Exact comparison.
pub fn sl_partition_identity(m: &DistanceMatrix) -> Result<Option<(Partition, Option<Subset>)>> {
    let n = m.n();
    let f = MaxLinkage::new(m.clone());
    let mut failure = None;
    for_each_partition(n, |p| {
        if failure.is_some() || p.len() < 2 {
            return;
        }
        for &x in p.blocks() {
            let whole = linkage(LinkageKind::Single, m, x, x.complement(n));
            let parts = p
                .blocks()
                .iter()
                .filter(|&&y| y != x)
                .map(|&y| linkage(LinkageKind::Single, m, x, y))
                .fold(f64::INFINITY, f64::min);
            if whole != parts {
                failure = Some((p.clone(), Some(x)));
                return;
            }
        }
        if min_pairwise(LinkageKind::Single, m, p) != min_radius(&f, p) {
            failure = Some((p.clone(), None));
        }
    })?;
    Ok(failure)
}

/// First partition where the minimum pairwise complete linkage differs from
/// `-ln max kappa_dist(X)`.
pub fn cl_mismatch(m: &DistanceMatrix) -> Result<Option<(Partition, f64, f64)>> {
    let f = MinLinkage::new(m.clone());
    let mut found = None;
    for_each_partition(m.n(), |p| {
        if found.is_some() || p.len() < 2 {
            return;
        }
        let lhs = min_pairwise(LinkageKind::Complete, m, p);
        let rhs = min_radius(&f, p);
        if lhs != rhs {
            found = Some((p.clone(), lhs, rhs));
        }
    })?;
    Ok(found)
}

/// First partition and block where average linkage against the complement
/// is not the size-weighted mean over the other blocks.
pub fn al_identity(m: &DistanceMatrix) -> Result<Option<(Partition, Subset)>> {
    let n = m.n();
    let mut failure = None;
    for_each_partition(n, |p| {
        if failure.is_some() || p.len() < 2 {
            return;
        }
        for &x in p.blocks() {
            let whole = linkage(LinkageKind::Average, m, x, x.complement(n));
            let (num, den) = p.blocks().iter().filter(|&&y| y != x).fold((0.0, 0.0), |(a, b), &y| {
                let w = y.len() as f64;
                (a + w * linkage(LinkageKind::Average, m, x, y), b + w)
            });
            let mean = num / den;
            if (whole - mean).abs() > AVERAGE_REL_TOL * whole.abs().max(mean.abs()) {
                failure = Some((p.clone(), x));
                return;
            }
        }
    })?;
    Ok(failure)
}

/// First violation of `property` by the average linkage function over the
/// given instances: `(instance index, X, Y)`.
pub fn phi_violation(property: Property, instances: &[DistanceMatrix]) -> Result<Option<(usize, Subset, Subset)>> {
    for (i, m) in instances.iter().enumerate() {
        if let Some((x, y)) = find_violation(property, &AverageLinkage::new(m.clone()))? {
            return Ok(Some((i, x, y)));
        }
    }
    Ok(None)
}

/// Calls `visit(vertex_count, edges)` for simple graphs with `1..=max_edges`
/// edges and no isolated vertices. Edge lists are strictly increasing and
/// vertices are numbered in order of first appearance; every isomorphism
/// class occurs at least once (take a breadth-first numbering).
pub fn for_each_small_graph(max_edges: usize, mut visit: impl FnMut(usize, &[(usize, usize)])) {
    let mut edges = Vec::new();
    extend_graph(max_edges, 0, &mut edges, &mut visit);
}

fn extend_graph(
    max_edges: usize,
    vertices: usize,
    edges: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(usize, &[(usize, usize)]),
) {
    if !edges.is_empty() {
        visit(vertices, edges);
    }
    if edges.len() == max_edges {
        return;
    }
    let last = edges.last().copied();
    for u in 0..=vertices {
        for v in u + 1..=vertices.max(u) + 1 {
            if last.is_some_and(|l| (u, v) <= l) {
                continue;
            }
            let grown = vertices.max(v + 1);
            // New vertices must appear in order: u first, then v.
            if u == vertices && v != vertices + 1 {
                continue;
            }
            edges.push((u, v));
            extend_graph(max_edges, grown, edges, visit);
            edges.pop();
        }
    }
}

/// Outcome of the vertex-connectivity checks on small graphs.
#[derive(Clone, Debug, PartialEq)]
pub struct NuReport {
    pub graphs_checked: usize,
    /// A graph on which vertex connectivity is not submodular.
    pub submodular_failure: Option<(Vec<(usize, usize)>, Subset, Subset)>,
    /// The first graph found on which it is not maximum-submodular.
    pub max_submodular_violation: Option<(Vec<(usize, usize)>, Subset, Subset)>,
}

/// Sweeps all unit-weight simple graphs with at most `max_edges` edges.
pub fn nu_report(max_edges: usize) -> Result<NuReport> {
    let mut report = NuReport {
        graphs_checked: 0,
        submodular_failure: None,
        max_submodular_violation: None,
    };
    let mut error = None;
    for_each_small_graph(max_edges, |count, edges| {
        if error.is_some() {
            return;
        }
        let g = match WeightedGraph::unit(count, edges.to_vec()) {
            Ok(g) => g,
            Err(e) => {
                error = Some(e);
                return;
            }
        };
        let nu = VertexConnectivity::new(g);
        report.graphs_checked += 1;
        if report.submodular_failure.is_none() {
            if let Ok(Some((x, y))) = find_violation(Property::Submodular, &nu) {
                report.submodular_failure = Some((edges.to_vec(), x, y));
            }
        }
        if report.max_submodular_violation.is_none() {
            if let Ok(Some((x, y))) = find_violation(Property::MaxSubmodular, &nu) {
                report.max_submodular_violation = Some((edges.to_vec(), x, y));
            }
        }
    });
    match error {
        Some(e) => Err(e),
        None => Ok(report),
    }
}
