use super::dendogram::{validate_dendogram, Dendogram, Partition};
use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, Ultrametric};
use crate::subset::Subset;
use crate::union_find::UnionFind;

/// Agglomerative linkage rules between disjoint clusters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkageKind {
    /// Minimum cross distance.
    Single,
    /// Maximum cross distance.
    Complete,
    /// Mean cross distance.
    Average,
}

pub fn linkage_eval(kind: LinkageKind, m: &DistanceMatrix, a: Subset, b: Subset) -> Result<f64> {
    let full = Subset::full(m.n());
    if a.is_empty() || b.is_empty() {
        return Err(Error::OutOfRange("linkage needs non-empty clusters".into()));
    }
    if !a.is_disjoint(b) {
        return Err(Error::OutOfRange(format!("clusters {a:?} and {b:?} overlap")));
    }
    if !a.union(b).is_subset_of(full) {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            actual: 64 - a.union(b).bits().leading_zeros() as usize,
        });
    }
    let cross = a.iter().flat_map(|i| b.iter().map(move |j| m.get(i, j)));
    Ok(match kind {
        LinkageKind::Single => cross.fold(f64::INFINITY, f64::min),
        LinkageKind::Complete => cross.fold(f64::NEG_INFINITY, f64::max),
        LinkageKind::Average => cross.sum::<f64>() / (a.len() * b.len()) as f64,
    })
}

/// Single-linkage dendogram with exact tie detection.
pub fn single_linkage(m: &DistanceMatrix) -> Dendogram {
    single_linkage_with_tolerance(m, 0.0)
}

/// Single-linkage dendogram. At each step `R` is the smallest distance
/// between different clusters, and all pairs within `R + tie_eps` are joined
/// with chain closure; the step is recorded at `R`.
pub fn single_linkage_with_tolerance(m: &DistanceMatrix, tie_eps: f64) -> Dendogram {
    let n = m.n();
    let mut pairs: Vec<(f64, usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (m.get(i, j), i, j))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut uf = UnionFind::new(n);
    let mut radii = vec![0.0];
    let mut partitions = vec![Partition::singletons(n)];
    let mut clusters = n;
    let mut next = 0;
    while clusters > 1 {
        while uf.find(pairs[next].1) == uf.find(pairs[next].2) {
            next += 1;
        }
        let r = pairs[next].0;
        while next < pairs.len() && pairs[next].0 <= r + tie_eps {
            let (_, i, j) = pairs[next];
            if uf.union(i, j) {
                clusters -= 1;
            }
            next += 1;
        }
        radii.push(r);
        partitions.push(Partition::from_classes(uf.classes()));
    }
    Dendogram::from_parts(m.labels().to_vec(), radii, partitions)
}

/// `u(x, y)` = the first radius at which `x` and `y` share a block.
pub fn psi(d: &Dendogram) -> Result<Ultrametric> {
    let report = validate_dendogram(d);
    if !report.passed() {
        return Err(Error::InvalidDendogram(report.failures().join("; ")));
    }
    let n = d.n();
    let mut rows = vec![vec![0.0; n]; n];
    for x in 0..n {
        for y in x + 1..n {
            let r = d
                .steps()
                .find(|(_, p)| p.block_of(x).is_some_and(|b| b.contains(y)))
                .map(|(r, _)| r)
                .expect("final partition is {U}");
            rows[x][y] = r;
            rows[y][x] = r;
        }
    }
    Ultrametric::new(DistanceMatrix::new(d.labels().to_vec(), rows)?)
}

/// The dendogram whose blocks at `r` are the classes of `u <= r`.
pub fn psi_inverse(u: &Ultrametric) -> Dendogram {
    let n = u.n();
    let mut radii = vec![0.0];
    let mut partitions = vec![Partition::singletons(n)];
    for r in u.distinct_distances() {
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            for y in x + 1..n {
                if u.get(x, y) <= r {
                    uf.union(x, y);
                }
            }
        }
        radii.push(r);
        partitions.push(Partition::from_classes(uf.classes()));
    }
    Dendogram::from_parts(u.labels().to_vec(), radii, partitions)
}

/// Bottleneck distance: the least, over all paths from `x` to `y`, of the
/// largest step. Computed as the maximum edge on the minimum spanning tree path.
pub fn minimax_ultrametric(m: &DistanceMatrix) -> Ultrametric {
    let n = m.n();
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    if n > 0 {
        let mut in_tree = vec![false; n];
        let mut best = vec![(f64::INFINITY, 0usize); n];
        in_tree[0] = true;
        for v in 1..n {
            best[v] = (m.get(0, v), 0);
        }
        for _ in 1..n {
            let v = (0..n)
                .filter(|&v| !in_tree[v])
                .min_by(|&a, &b| best[a].0.total_cmp(&best[b].0).then(a.cmp(&b)))
                .expect("vertex left");
            in_tree[v] = true;
            let (w, p) = best[v];
            adj[v].push((p, w));
            adj[p].push((v, w));
            for x in 0..n {
                if !in_tree[x] && m.get(v, x) < best[x].0 {
                    best[x] = (m.get(v, x), v);
                }
            }
        }
    }
    let mut rows = vec![vec![0.0; n]; n];
    for (s, row) in rows.iter_mut().enumerate() {
        let mut stack = vec![(s, usize::MAX, 0.0f64)];
        while let Some((v, parent, top)) = stack.pop() {
            row[v] = top;
            for &(w, d) in &adj[v] {
                if w != parent {
                    stack.push((w, v, top.max(d)));
                }
            }
        }
    }
    let matrix = DistanceMatrix::new(m.labels().to_vec(), rows).expect("bottleneck distances form a metric");
    Ultrametric::new(matrix).expect("bottleneck distances form an ultrametric")
}
