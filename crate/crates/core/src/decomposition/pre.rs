use std::collections::BTreeMap;

use super::tree::TernaryTree;
use crate::connectivity::SetFunction;
use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_UNIVERSE};

/// A ternary tree with a subset of `U` on every directed edge.
///
/// `gamma(s, t)` is the part of the universe the edge "points to" when
/// walking from `s` towards `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct PreDecomposition {
    n: usize,
    tree: TernaryTree,
    gamma: BTreeMap<(usize, usize), Subset>,
}

impl PreDecomposition {
    /// Requires a value on both orientations of every edge; the
    /// pre-decomposition conditions themselves are checked by
    /// [`validate_pre_decomposition`].
    pub fn new(n: usize, tree: TernaryTree, gamma: BTreeMap<(usize, usize), Subset>) -> Result<Self> {
        if n > MAX_UNIVERSE {
            return Err(Error::SizeCap {
                operation: "pre-decomposition",
                n,
                cap: MAX_UNIVERSE,
            });
        }
        for e in tree.directed_edges() {
            match gamma.get(&e) {
                None => return Err(Error::Malformed(format!("no subset on directed edge {e:?}"))),
                Some(s) if !s.is_subset_of(Subset::full(n)) => {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        actual: 64 - s.bits().leading_zeros() as usize,
                    })
                }
                _ => {}
            }
        }
        if gamma.len() != 2 * tree.edges().len() {
            return Err(Error::Malformed("subset given on a pair that is not an edge".into()));
        }
        Ok(PreDecomposition { n, tree, gamma })
    }

    /// Takes one orientation per edge and derives the other as the complement.
    pub fn from_one_direction(n: usize, tree: TernaryTree, half: &BTreeMap<(usize, usize), Subset>) -> Result<Self> {
        let mut gamma = BTreeMap::new();
        for (&(s, t), &x) in half {
            gamma.insert((s, t), x);
            gamma.entry((t, s)).or_insert_with(|| x.complement(n));
        }
        PreDecomposition::new(n, tree, gamma)
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn tree(&self) -> &TernaryTree {
        &self.tree
    }

    pub fn gamma(&self, s: usize, t: usize) -> Subset {
        self.gamma[&(s, t)]
    }

    pub fn gamma_map(&self) -> &BTreeMap<(usize, usize), Subset> {
        &self.gamma
    }

    pub(crate) fn set_gamma(&mut self, s: usize, t: usize, x: Subset) {
        self.gamma.insert((s, t), x);
        self.gamma.insert((t, s), x.complement(self.n));
    }

    /// `(leaf, atom)` for every leaf, by leaf index.
    pub fn atoms(&self) -> Vec<(usize, Subset)> {
        self.tree
            .leaves()
            .into_iter()
            .map(|l| (l, self.gamma(self.tree.neighbors(l)[0], l)))
            .collect()
    }

    pub fn atom(&self, leaf: usize) -> Subset {
        self.gamma(self.tree.neighbors(leaf)[0], leaf)
    }

    /// Whether the outgoing sets at an internal node are pairwise disjoint.
    pub fn is_exact_at(&self, s: usize) -> bool {
        let out: Vec<Subset> = self.tree.neighbors(s).iter().map(|&u| self.gamma(s, u)).collect();
        (0..out.len()).all(|i| (i + 1..out.len()).all(|j| out[i].is_disjoint(out[j])))
    }
}

/// Result of checking the pre-decomposition conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionReport {
    /// Edges `(t, u)`, `t < u`, with `gamma(t,u)` not the complement of `gamma(u,t)`.
    pub complement_violations: Vec<(usize, usize)>,
    /// Internal nodes whose outgoing sets do not cover `U`.
    pub cover_violations: Vec<usize>,
    pub exact_nodes: Vec<usize>,
    pub inexact_nodes: Vec<usize>,
    pub complete: bool,
    pub atoms: Vec<(usize, Subset)>,
}

impl DecompositionReport {
    pub fn valid(&self) -> bool {
        self.complement_violations.is_empty() && self.cover_violations.is_empty()
    }

    pub fn is_decomposition(&self) -> bool {
        self.valid() && self.inexact_nodes.is_empty()
    }

    pub fn is_branch_decomposition(&self) -> bool {
        self.is_decomposition() && self.complete
    }
}

pub fn validate_pre_decomposition(pd: &PreDecomposition) -> DecompositionReport {
    let n = pd.n;
    let tree = &pd.tree;
    let complement_violations = tree
        .edges()
        .into_iter()
        .filter(|&(t, u)| pd.gamma(t, u) != pd.gamma(u, t).complement(n))
        .collect();
    let internal = tree.internal_nodes();
    let cover_violations = internal
        .iter()
        .copied()
        .filter(|&s| {
            tree.neighbors(s)
                .iter()
                .fold(Subset::EMPTY, |acc, &u| acc.union(pd.gamma(s, u)))
                != Subset::full(n)
        })
        .collect();
    let (exact_nodes, inexact_nodes) = internal.into_iter().partition(|&s| pd.is_exact_at(s));
    let atoms = pd.atoms();
    let complete = atoms.iter().all(|(_, a)| a.len() == 1);
    DecompositionReport {
        complement_violations,
        cover_violations,
        exact_nodes,
        inexact_nodes,
        complete,
        atoms,
    }
}

/// A pre-decomposition that is exact at every internal node.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition(PreDecomposition);

impl Decomposition {
    pub fn new(pd: PreDecomposition) -> Result<Self> {
        let report = validate_pre_decomposition(&pd);
        if !report.valid() {
            return Err(Error::Malformed(format!(
                "not a pre-decomposition: complement fails on {:?}, cover fails at {:?}",
                report.complement_violations, report.cover_violations
            )));
        }
        if !report.inexact_nodes.is_empty() {
            return Err(Error::Malformed(format!(
                "not exact at nodes {:?}",
                report.inexact_nodes
            )));
        }
        Ok(Decomposition(pd))
    }

    pub fn as_pre(&self) -> &PreDecomposition {
        &self.0
    }

    pub fn into_pre(self) -> PreDecomposition {
        self.0
    }

    pub fn is_complete(&self) -> bool {
        self.0.atoms().iter().all(|(_, a)| a.len() == 1)
    }

    /// Removes leaves with empty atoms, splicing out their neighbors.
    ///
    /// Returns the pruned decomposition and, for every old vertex, its new
    /// index (or `None` if it was removed). A two-vertex tree is left as is.
    pub fn prune_empty_leaves(&self) -> (Decomposition, Vec<Option<usize>>) {
        let n = self.0.n;
        let count = self.0.tree.vertex_count();
        let mut alive = vec![true; count];
        let mut adj: Vec<Vec<usize>> = (0..count).map(|v| self.0.tree.neighbors(v).to_vec()).collect();
        let mut gamma = self.0.gamma.clone();
        loop {
            let live = alive.iter().filter(|&&a| a).count();
            if live <= 2 {
                break;
            }
            let Some(leaf) = (0..count).find(|&v| alive[v] && adj[v].len() == 1 && gamma[&(adj[v][0], v)].is_empty())
            else {
                break;
            };
            let s = adj[leaf][0];
            let others: Vec<usize> = adj[s].iter().copied().filter(|&w| w != leaf).collect();
            let (u1, u2) = (others[0], others[1]);
            let to_u1 = gamma[&(s, u1)];
            let to_u2 = gamma[&(s, u2)];
            for (a, b) in [(s, leaf), (leaf, s), (s, u1), (u1, s), (s, u2), (u2, s)] {
                gamma.remove(&(a, b));
            }
            gamma.insert((u1, u2), to_u2);
            gamma.insert((u2, u1), to_u1);
            for w in [u1, u2] {
                let other = if w == u1 { u2 } else { u1 };
                for x in adj[w].iter_mut() {
                    if *x == s {
                        *x = other;
                    }
                }
            }
            alive[leaf] = false;
            alive[s] = false;
            adj[leaf].clear();
            adj[s].clear();
        }
        let mut map = vec![None; count];
        let mut next = 0;
        for v in 0..count {
            if alive[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let edges: Vec<(usize, usize)> = (0..count)
            .filter(|&v| alive[v])
            .flat_map(|u| adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .map(|(u, v)| (map[u].unwrap(), map[v].unwrap()))
            .collect();
        let tree = TernaryTree::from_edges(next, &edges).expect("pruning keeps a ternary tree");
        let gamma = gamma
            .into_iter()
            .map(|((a, b), x)| ((map[a].unwrap(), map[b].unwrap()), x))
            .collect();
        let pd = PreDecomposition { n, tree, gamma };
        (Decomposition(pd), map)
    }
}

/// A complete decomposition: every atom is a singleton.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchDecomposition(Decomposition);

impl BranchDecomposition {
    pub fn new(d: Decomposition) -> Result<Self> {
        if !d.is_complete() {
            return Err(Error::Malformed("decomposition has a non-singleton atom".into()));
        }
        Ok(BranchDecomposition(d))
    }

    pub fn as_decomposition(&self) -> &Decomposition {
        &self.0
    }
}

/// Maximum of `f` over all directed edge sets.
pub fn width<F: SetFunction + ?Sized>(pd: &PreDecomposition, f: &F) -> Result<f64> {
    check_size(pd, f)?;
    Ok(pd.gamma.values().map(|&x| f.eval(x)).fold(0.0, f64::max))
}

/// [`width`] on the distance axis: the minimum radius over edge sets.
pub fn width_radius<F: SetFunction + ?Sized>(pd: &PreDecomposition, f: &F) -> Result<f64> {
    check_size(pd, f)?;
    Ok(pd.gamma.values().map(|&x| f.radius(x)).fold(f64::INFINITY, f64::min))
}

fn check_size<F: SetFunction + ?Sized>(pd: &PreDecomposition, f: &F) -> Result<()> {
    if f.size() != pd.n {
        return Err(Error::DimensionMismatch {
            expected: pd.n,
            actual: f.size(),
        });
    }
    Ok(())
}

/// Builds the decomposition whose edge sets are unions of the atoms beyond
/// each edge. Atoms must be pairwise disjoint and cover `{0..n}`; empty atoms
/// are allowed.
pub fn from_atoms(n: usize, tree: TernaryTree, leaf_atoms: &BTreeMap<usize, Subset>) -> Result<Decomposition> {
    let leaves = tree.leaves();
    if leaf_atoms.keys().copied().collect::<Vec<_>>() != leaves {
        return Err(Error::Malformed(format!(
            "atoms given for {:?}, tree leaves are {leaves:?}",
            leaf_atoms.keys().collect::<Vec<_>>()
        )));
    }
    let mut seen = Subset::EMPTY;
    for (&leaf, &a) in leaf_atoms {
        if !a.is_disjoint(seen) {
            return Err(Error::Malformed(format!("atom at leaf {leaf} overlaps another atom")));
        }
        seen = seen.union(a);
    }
    if seen != Subset::full(n) {
        return Err(Error::Malformed("atoms do not cover the universe".into()));
    }
    let mut gamma = BTreeMap::new();
    for (s, t) in tree.directed_edges() {
        let x = tree
            .side(s, t)
            .into_iter()
            .filter_map(|v| leaf_atoms.get(&v))
            .fold(Subset::EMPTY, |acc, &a| acc.union(a));
        gamma.insert((s, t), x);
    }
    Decomposition::new(PreDecomposition::new(n, tree, gamma)?)
}
