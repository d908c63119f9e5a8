//! Seeded random instances for property checks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clustering::{psi_inverse, Dendogram};
use crate::decomposition::{from_atoms, PreDecomposition, TernaryTree};
use crate::metric::{DistanceMatrix, PointCloud, Ultrametric};
use crate::subset::Subset;

/// Deterministic generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// `n` points with coordinates uniform in `[0, 10)^dim`.
pub fn random_points<R: Rng>(rng: &mut R, n: usize, dim: usize) -> PointCloud {
    let coords = (0..n).map(|_| (0..dim).map(|_| rng.gen_range(0.0..10.0)).collect()).collect();
    PointCloud::new(labels(n), coords).expect("random coordinates are finite")
}

fn closure(mut d: Vec<Vec<f64>>) -> DistanceMatrix {
    let n = d.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    DistanceMatrix::new(labels(n), d).expect("shortest-path closure is a metric")
}

/// Shortest-path metric of a complete graph with weights uniform in `[1, 10)`.
pub fn random_metric<R: Rng>(rng: &mut R, n: usize) -> DistanceMatrix {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = rng.gen_range(1.0..10.0);
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    closure(d)
}

/// Shortest-path metric with integer weights in `1..=max_weight`, so that
/// ties between distances are common.
pub fn random_integer_metric<R: Rng>(rng: &mut R, n: usize, max_weight: u32) -> DistanceMatrix {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = f64::from(rng.gen_range(1..=max_weight));
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    closure(d)
}

/// An ultrametric built by merging random clusters at non-decreasing
/// heights; roughly a third of the merges reuse the previous height.
pub fn random_ultrametric<R: Rng>(rng: &mut R, n: usize) -> Ultrametric {
    let mut clusters: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut d = vec![vec![0.0; n]; n];
    let mut h = 0.0;
    while clusters.len() > 1 {
        if h == 0.0 || !rng.gen_bool(0.3) {
            h += f64::from(rng.gen_range(1..=4u32)) * 0.5;
        }
        let i = rng.gen_range(0..clusters.len());
        let a = clusters.swap_remove(i);
        let j = rng.gen_range(0..clusters.len());
        for &x in &a {
            for &y in &clusters[j] {
                d[x][y] = h;
                d[y][x] = h;
            }
        }
        clusters[j].extend(a);
    }
    let m = DistanceMatrix::new(labels(n), d).expect("merge heights form a metric");
    Ultrametric::new(m).expect("merge heights form an ultrametric")
}

pub fn random_dendogram<R: Rng>(rng: &mut R, n: usize) -> Dendogram {
    psi_inverse(&random_ultrametric(rng, n))
}

/// A random ternary tree with `leaves >= 2` leaves, grown by subdividing
/// random edges.
pub fn random_ternary_tree<R: Rng>(rng: &mut R, leaves: usize) -> TernaryTree {
    let mut edges = vec![(0usize, 1usize)];
    let mut count = 2;
    for _ in 2..leaves {
        let i = rng.gen_range(0..edges.len());
        let (a, b) = edges[i];
        let (w, l) = (count, count + 1);
        count += 2;
        edges[i] = (a, w);
        edges.push((w, b));
        edges.push((w, l));
    }
    TernaryTree::from_edges(count, &edges).expect("subdivision keeps a ternary tree")
}

/// A valid pre-decomposition of `{0..n}`, usually inexact.
///
/// Points are spread over the leaves of a random tree, the induced
/// decomposition is built, and then random points are added to edge sets
/// wherever the cover condition at the far end still holds.
pub fn random_pre_decomposition<R: Rng>(rng: &mut R, n: usize) -> PreDecomposition {
    let leaves = rng.gen_range(2..=n.max(2) + 1);
    let tree = random_ternary_tree(rng, leaves);
    let leaf_ids = tree.leaves();
    let mut atoms: BTreeMap<usize, Subset> = leaf_ids.iter().map(|&l| (l, Subset::EMPTY)).collect();
    for x in 0..n {
        let l = *leaf_ids.choose(rng).expect("at least two leaves");
        atoms.get_mut(&l).expect("leaf").insert(x);
    }
    let mut pd = from_atoms(n, tree.clone(), &atoms).expect("atoms partition").into_pre();
    let directed = tree.directed_edges();
    for _ in 0..2 * directed.len() {
        let &(s, t) = directed.choose(rng).expect("edges exist");
        let x = rng.gen_range(0..n.max(1));
        if n == 0 || pd.gamma(s, t).contains(x) {
            continue;
        }
        let elsewhere = tree
            .neighbors(t)
            .iter()
            .any(|&w| w != s && pd.gamma(t, w).contains(x));
        if tree.is_leaf(t) || elsewhere {
            let mut grown = pd.gamma(s, t);
            grown.insert(x);
            pd.set_gamma(s, t, grown);
        }
    }
    pd
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustering::validate_dendogram;
    use crate::decomposition::validate_pre_decomposition;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_metric(&mut rng(7), 6), random_metric(&mut rng(7), 6));
        assert_ne!(random_metric(&mut rng(7), 6), random_metric(&mut rng(8), 6));
    }

    #[test]
    fn random_pre_decompositions_are_valid() {
        let mut r = rng(1);
        let mut inexact = 0;
        for _ in 0..200 {
            let n = r.gen_range(1..=10);
            let pd = random_pre_decomposition(&mut r, n);
            let rep = validate_pre_decomposition(&pd);
            assert!(rep.valid(), "{rep:?}");
            if !rep.inexact_nodes.is_empty() {
                inexact += 1;
            }
        }
        assert!(inexact > 50);
    }

    #[test]
    fn random_dendograms_are_valid() {
        let mut r = rng(2);
        for n in 1..=9 {
            assert!(validate_dendogram(&random_dendogram(&mut r, n)).passed());
        }
    }
}
