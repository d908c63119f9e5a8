use std::collections::VecDeque;

use super::pre::{validate_pre_decomposition, Decomposition, PreDecomposition};
use crate::connectivity::SetFunction;
use crate::error::{Error, Result};
use crate::subset::Subset;

/// Makes a valid pre-decomposition exact without increasing its width.
///
/// Nodes are visited breadth-first from the lowest-indexed leaf, neighbors in
/// index order. At node `s` reached from `t`, the outgoing sets towards the two
/// successors are first stripped of `gamma'(s,t)` and then made disjoint by
/// removing the second from the first. The tree and its vertex numbering are
/// kept; use [`Decomposition::prune_empty_leaves`] to drop empty atoms.
///
/// Each update is checked against the max-submodular bound; a violation is
/// reported as [`Error::NotMaximumSubmodular`] with the offending pair.
pub fn exactness_transform<F: SetFunction + ?Sized>(pd: &PreDecomposition, f: &F) -> Result<Decomposition> {
    if f.size() != pd.universe_size() {
        return Err(Error::DimensionMismatch {
            expected: pd.universe_size(),
            actual: f.size(),
        });
    }
    let report = validate_pre_decomposition(pd);
    if !report.valid() {
        return Err(Error::Malformed(format!(
            "not a pre-decomposition: complement fails on {:?}, cover fails at {:?}",
            report.complement_violations, report.cover_violations
        )));
    }
    let n = pd.universe_size();
    let tree = pd.tree().clone();
    let mut out = pd.clone();
    let Some(&start) = tree.leaves().first() else {
        return Decomposition::new(out);
    };
    let mut queue = VecDeque::new();
    let mut visited = vec![false; tree.vertex_count()];
    visited[start] = true;
    for &u in tree.neighbors(start) {
        visited[u] = true;
        queue.push_back((u, start));
    }
    while let Some((s, t)) = queue.pop_front() {
        let succ: Vec<usize> = tree.neighbors(s).iter().copied().filter(|&u| u != t).collect();
        for &u in &succ {
            if !visited[u] {
                visited[u] = true;
                queue.push_back((u, s));
            }
        }
        if succ.len() != 2 {
            continue;
        }
        let x = out.gamma(s, t);
        let mut y = [out.gamma(s, succ[0]), out.gamma(s, succ[1])];
        if !x.is_disjoint(y[0].union(y[1])) {
            for yi in &mut y {
                let next = yi.difference(x);
                guard(f, *yi, x.complement(n), next)?;
                *yi = next;
            }
        }
        if !y[0].is_disjoint(y[1]) {
            let next = y[0].difference(y[1]);
            guard(f, y[0], y[1].complement(n), next)?;
            y[0] = next;
        }
        out.set_gamma(s, succ[0], y[0]);
        out.set_gamma(s, succ[1], y[1]);
    }
    Decomposition::new(out)
}

/// Checks `f(a ∩ b) <= max(f(a), f(b))` on the distance axis.
fn guard<F: SetFunction + ?Sized>(f: &F, a: Subset, b: Subset, meet: Subset) -> Result<()> {
    if f.radius(meet) < f.radius(a).min(f.radius(b)) {
        return Err(Error::NotMaximumSubmodular { x: a, y: b });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{MaxLinkage, Tabulated};
    use crate::decomposition::{width_radius, TernaryTree};
    use crate::fixtures;
    use std::collections::BTreeMap;

    #[test]
    fn seven_point_transform() {
        let (pd, _) = fixtures::seven_point_pre_decomposition();
        let f = MaxLinkage::new(fixtures::seven_point_matrix());
        let d = exactness_transform(&pd, &f).unwrap();
        let report = validate_pre_decomposition(d.as_pre());
        assert!(report.is_decomposition());
        assert!(width_radius(d.as_pre(), &f).unwrap() >= width_radius(&pd, &f).unwrap());
        let again = exactness_transform(d.as_pre(), &f).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn transform_reports_max_submodular_violation() {
        let tree = TernaryTree::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let half = BTreeMap::from([
            ((0, 1), Subset::from_indices([0, 1])),
            ((0, 2), Subset::from_indices([1, 2])),
            ((0, 3), Subset::from_indices([3])),
        ]);
        let pd = PreDecomposition::from_one_direction(4, tree, &half).unwrap();
        // Removing {0,1} from {1,2} leaves {2}, which is made expensive.
        let vals: Vec<f64> = (0..16u64)
            .map(|b| match b {
                0 | 15 => 0.0,
                4 | 11 => 0.9,
                _ => 0.1,
            })
            .collect();
        let f = Tabulated::new(4, vals).unwrap();
        let err = exactness_transform(&pd, &f).unwrap_err();
        assert_eq!(
            err,
            Error::NotMaximumSubmodular {
                x: Subset::from_indices([1, 2]),
                y: Subset::from_indices([2, 3]),
            }
        );
    }
}
