use std::collections::BTreeMap;

use super::pre::{from_atoms, Decomposition};
use super::tree::TernaryTree;
use crate::connectivity::{radius_to_order, radius_table, SetFunction};
use crate::error::{ensure_cap, Error, Result};
use crate::subset::Subset;

/// Largest universe for exhaustive branch-width.
pub const BRANCH_WIDTH_CAP: usize = 8;

/// Calls `visit` with the edge list of every ternary tree whose leaves are
/// `0..n`, internal vertices numbered from `n`. Trees are grown by attaching
/// leaf `k` to the middle of each existing edge in turn.
pub(crate) fn for_each_leaf_labelled_tree(n: usize, mut visit: impl FnMut(&[(usize, usize)])) {
    match n {
        0 | 1 => {}
        2 => visit(&[(0, 1)]),
        _ => {
            let mut edges = vec![(0, n), (1, n), (2, n)];
            grow(3, n, &mut edges, &mut visit);
        }
    }
}

fn grow(k: usize, n: usize, edges: &mut Vec<(usize, usize)>, visit: &mut impl FnMut(&[(usize, usize)])) {
    if k == n {
        visit(edges);
        return;
    }
    let w = n + k - 2;
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        edges[i] = (a, w);
        edges.push((w, b));
        edges.push((w, k));
        grow(k + 1, n, edges, visit);
        edges.pop();
        edges.pop();
        edges[i] = (a, b);
    }
}

/// `(2n-5)!!`, the number of leaf-labelled ternary trees with `n >= 3` leaves.
pub(crate) fn tree_count(n: usize) -> usize {
    match n {
        0 | 1 => 0,
        2 => 1,
        _ => (1..=2 * n - 5).step_by(2).product(),
    }
}

/// Leaf set below each non-root vertex when rooted at leaf 0.
fn splits(n: usize, edges: &[(usize, usize)]) -> Vec<Subset> {
    let count = edges.len() + 1;
    let mut adj = vec![Vec::new(); count];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut order = Vec::with_capacity(count);
    let mut parent = vec![usize::MAX; count];
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &adj[v] {
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut below = vec![Subset::EMPTY; count];
    let mut out = Vec::with_capacity(count - 1);
    for &v in order.iter().rev() {
        if v < n {
            below[v].insert(v);
        }
        if v != 0 {
            let p = parent[v];
            below[p] = below[p].union(below[v]);
            out.push(below[v]);
        }
    }
    out
}

/// Exhaustive branch-width on the distance axis, with a witness.
///
/// Returns the largest achievable minimum edge radius over all complete
/// decompositions, and the first tree in enumeration order attaining it.
pub fn branch_width_exact_radius<F: SetFunction + ?Sized>(f: &F) -> Result<(f64, Decomposition)> {
    let n = f.size();
    ensure_cap("branch_width_exact", n, BRANCH_WIDTH_CAP)?;
    if n < 2 {
        return Err(Error::OutOfRange(format!("branch width needs at least two points, got {n}")));
    }
    let table = radius_table(f)?;
    let full = Subset::full(n);
    let mut best: Option<(f64, Vec<(usize, usize)>)> = None;
    let mut seen = 0usize;
    for_each_leaf_labelled_tree(n, |edges| {
        seen += 1;
        let w = splits(n, edges)
            .into_iter()
            .map(|s| table[s.bits() as usize].min(table[s.complement(n).bits() as usize]))
            .fold(f64::INFINITY, f64::min);
        if best.as_ref().map_or(true, |(b, _)| w > *b) {
            best = Some((w, edges.to_vec()));
        }
    });
    assert_eq!(seen, tree_count(n), "tree enumeration is incomplete");
    let (w, edges) = best.expect("at least one tree");
    let tree = TernaryTree::from_edges(edges.len() + 1, &edges)?;
    let atoms: BTreeMap<usize, Subset> = (0..n).map(|i| (i, Subset::singleton(i))).collect();
    debug_assert_eq!(atoms.values().fold(Subset::EMPTY, |a, &b| a.union(b)), full);
    Ok((w, from_atoms(n, tree, &atoms)?))
}

/// Exhaustive branch-width `min over complete decompositions of max f(edge)`.
pub fn branch_width_exact<F: SetFunction + ?Sized>(f: &F) -> Result<(f64, Decomposition)> {
    let (r, d) = branch_width_exact_radius(f)?;
    Ok((radius_to_order(r), d))
}
