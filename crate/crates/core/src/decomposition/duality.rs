use std::collections::{BTreeMap, HashMap};

use super::branch_width::branch_width_exact_radius;
use super::exactness::exactness_transform;
use super::pre::{validate_pre_decomposition, width_radius, Decomposition, PreDecomposition};
use super::tree::TernaryTree;
use crate::connectivity::{radius_table, radius_to_order, SeparationTable, SetFunction};
use crate::error::{ensure_cap, Error, Result};
use crate::subset::Subset;
use crate::tangle::{enumerate_tangles, tangle_number_radius, TangleDescriptor};

/// Largest universe for the constructive duality procedure.
pub const CONSTRUCT_CAP: usize = 10;

/// A family of subsets of `{0..n}` closed under taking subsets, stored by its
/// maximal members. Every singleton must belong to it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsetFamily {
    n: usize,
    maximal: Vec<Subset>,
}

impl SubsetFamily {
    /// The downward closure of `generators`.
    pub fn new<I: IntoIterator<Item = Subset>>(n: usize, generators: I) -> Result<Self> {
        let full = Subset::full(n);
        let mut gens: Vec<Subset> = generators.into_iter().collect();
        if let Some(g) = gens.iter().find(|g| !g.is_subset_of(full)) {
            return Err(Error::InvalidFamily(format!("generator {g:?} outside a universe of size {n}")));
        }
        gens.sort_by_key(|g| std::cmp::Reverse(g.len()));
        let mut maximal: Vec<Subset> = Vec::new();
        for g in gens {
            if !maximal.iter().any(|m| g.is_subset_of(*m)) {
                maximal.push(g);
            }
        }
        maximal.sort();
        let covered = maximal.iter().fold(Subset::EMPTY, |a, &m| a.union(m));
        if let Some(i) = full.difference(covered).first() {
            return Err(Error::InvalidFamily(format!("singleton {{{i}}} is missing")));
        }
        Ok(SubsetFamily { n, maximal })
    }

    /// The family of all sets of size at most one.
    pub fn singletons(n: usize) -> Self {
        SubsetFamily {
            n,
            maximal: (0..n).map(Subset::singleton).collect(),
        }
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn maximal(&self) -> &[Subset] {
        &self.maximal
    }

    pub fn contains(&self, x: Subset) -> bool {
        self.maximal.iter().any(|&m| x.is_subset_of(m))
    }

    /// `self ∪ 2^x`.
    pub fn with_powerset(&self, x: Subset) -> Self {
        let mut maximal: Vec<Subset> = self.maximal.iter().copied().filter(|m| !m.is_subset_of(x)).collect();
        if !maximal.iter().any(|&m| x.is_subset_of(m)) {
            maximal.push(x);
        }
        maximal.sort();
        SubsetFamily { n: self.n, maximal }
    }
}

/// Either a decomposition over the family of width below the threshold, or
/// a tangle of that order avoiding the family.
#[derive(Clone, Debug, PartialEq)]
pub enum DualityOutcome {
    Decomposition(Decomposition),
    Tangle(TangleDescriptor),
}

#[derive(Clone)]
enum Found {
    Decomposition(PreDecomposition),
    Tangle(Vec<Subset>),
}

struct Builder<'a, F: SetFunction + ?Sized> {
    f: &'a F,
    n: usize,
    table: Vec<f64>,
    r: f64,
    memo: HashMap<Vec<Subset>, Found>,
}

impl<F: SetFunction + ?Sized> Builder<'_, F> {
    fn small(&self, x: Subset) -> bool {
        self.table[x.bits() as usize] > self.r
    }

    fn solve(&mut self, fam: &SubsetFamily) -> Result<Found> {
        if let Some(found) = self.memo.get(&fam.maximal) {
            return Ok(found.clone());
        }
        let n = self.n;
        let candidate = Subset::all(n)
            .filter(|&x| self.small(x) && !fam.contains(x) && !fam.contains(x.complement(n)))
            .min_by_key(|x| (x.len(), x.bits()));
        let found = match candidate {
            None => self.base(fam)?,
            Some(x) => self.step(fam, x)?,
        };
        let found = match found {
            Found::Decomposition(pd) => {
                let d = exactness_transform(&pd, self.f)?;
                Found::Decomposition(d.prune_empty_leaves().0.into_pre())
            }
            t => t,
        };
        self.memo.insert(fam.maximal.clone(), found.clone());
        Ok(found)
    }

    fn base(&self, fam: &SubsetFamily) -> Result<Found> {
        let n = self.n;
        let size = 1usize << n;
        let mut member = vec![false; size];
        let mut ys = Vec::new();
        for x in Subset::all(n) {
            if self.small(x) && fam.contains(x) {
                let y = x.complement(n);
                member[y.bits() as usize] = true;
                ys.push(y);
            }
        }
        ys.sort();
        let mut has_sub = member.clone();
        for i in 0..n {
            for m in 0..size {
                if m >> i & 1 == 1 && has_sub[m ^ (1 << i)] {
                    has_sub[m] = true;
                }
            }
        }
        for (i, &a) in ys.iter().enumerate() {
            for &b in &ys[i..] {
                let rest = a.intersection(b).complement(n);
                if has_sub[rest.bits() as usize] {
                    let c = *ys.iter().find(|c| c.is_subset_of(rest)).expect("member below rest");
                    let tree = TernaryTree::from_edges(4, &[(0, 1), (0, 2), (0, 3)])?;
                    let half = BTreeMap::from([
                        ((0, 1), a.complement(n)),
                        ((0, 2), b.complement(n)),
                        ((0, 3), c.complement(n)),
                    ]);
                    return Ok(Found::Decomposition(PreDecomposition::from_one_direction(n, tree, &half)?));
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| member[1 << x]) {
            let tree = TernaryTree::from_edges(2, &[(0, 1)])?;
            let half = BTreeMap::from([((0, 1), Subset::singleton(x))]);
            return Ok(Found::Decomposition(PreDecomposition::from_one_direction(n, tree, &half)?));
        }
        Ok(Found::Tangle(ys))
    }

    fn step(&mut self, fam: &SubsetFamily, x: Subset) -> Result<Found> {
        let n = self.n;
        let t1 = match self.solve(&fam.with_powerset(x))? {
            Found::Decomposition(pd) => pd,
            t => return Ok(t),
        };
        if t1.atoms().iter().all(|&(_, a)| fam.contains(a)) {
            return Ok(Found::Decomposition(t1));
        }
        let t2 = match self.solve(&fam.with_powerset(x.complement(n)))? {
            Found::Decomposition(pd) => pd,
            t => return Ok(t),
        };
        if t2.atoms().iter().all(|&(_, a)| fam.contains(a)) {
            return Ok(Found::Decomposition(t2));
        }
        Ok(Found::Decomposition(splice(&t1, &t2, x, fam)?))
    }
}

/// Replaces every leaf of `t2` whose atom is outside `fam` by a copy of `t1`
/// hanging off the edge that carries `x`.
fn splice(t1: &PreDecomposition, t2: &PreDecomposition, x: Subset, fam: &SubsetFamily) -> Result<PreDecomposition> {
    let n = t1.universe_size();
    let bad1: Vec<usize> = t1.atoms().into_iter().filter(|&(_, a)| !fam.contains(a)).map(|(l, _)| l).collect();
    let l1 = match bad1.as_slice() {
        [l] if t1.atom(*l) == x => *l,
        _ => {
            return Err(Error::Hypothesis(format!(
                "expected exactly one leaf with atom {x:?} outside the family, found leaves {bad1:?}"
            )))
        }
    };
    let s1 = t1.tree().neighbors(l1)[0];
    let bad2: Vec<usize> = t2.atoms().into_iter().filter(|&(_, a)| !fam.contains(a)).map(|(l, _)| l).collect();

    let mut id2 = vec![usize::MAX; t2.tree().vertex_count()];
    let mut next = 0;
    for v in 0..t2.tree().vertex_count() {
        if !bad2.contains(&v) {
            id2[v] = next;
            next += 1;
        }
    }
    let mut edges = Vec::new();
    let mut gamma = BTreeMap::new();
    for (a, b) in t2.tree().directed_edges() {
        if id2[a] != usize::MAX && id2[b] != usize::MAX {
            gamma.insert((id2[a], id2[b]), t2.gamma(a, b));
            if a < b {
                edges.push((id2[a], id2[b]));
            }
        }
    }
    for &l2 in &bad2 {
        let s2 = t2.tree().neighbors(l2)[0];
        let mut id1 = vec![usize::MAX; t1.tree().vertex_count()];
        for v in 0..t1.tree().vertex_count() {
            if v != l1 {
                id1[v] = next;
                next += 1;
            }
        }
        for (a, b) in t1.tree().directed_edges() {
            if a != l1 && b != l1 {
                gamma.insert((id1[a], id1[b]), t1.gamma(a, b));
                if a < b {
                    edges.push((id1[a], id1[b]));
                }
            }
        }
        edges.push((id2[s2], id1[s1]));
        gamma.insert((id1[s1], id2[s2]), x);
        gamma.insert((id2[s2], id1[s1]), x.complement(n));
    }
    let tree = TernaryTree::from_edges(next, &edges)?;
    PreDecomposition::new(n, tree, gamma)
}

/// Constructs either a decomposition of `U` over `fam` whose every edge set
/// has radius above `r`, or a tangle of order `exp(-r)` avoiding `fam`.
///
/// `f` must be symmetric and maximum-submodular; the latter is enforced
/// while making intermediate decompositions exact.
pub fn construct_decomposition_over<F: SetFunction + ?Sized>(
    f: &F,
    fam: &SubsetFamily,
    r: f64,
) -> Result<DualityOutcome> {
    let n = f.size();
    ensure_cap("construct_decomposition_over", n, CONSTRUCT_CAP)?;
    if fam.universe_size() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: fam.universe_size(),
        });
    }
    if r.is_nan() {
        return Err(Error::OutOfRange("threshold radius is NaN".into()));
    }
    let mut builder = Builder {
        f,
        n,
        table: radius_table(f)?,
        r,
        memo: HashMap::new(),
    };
    match builder.solve(fam)? {
        Found::Decomposition(pd) => {
            let report = validate_pre_decomposition(&pd);
            if !report.is_decomposition() || !report.atoms.iter().all(|&(_, a)| fam.contains(a)) {
                return Err(Error::Hypothesis("constructed tree is not a decomposition over the family".into()));
            }
            if width_radius(&pd, f)? <= r {
                return Err(Error::Hypothesis("constructed decomposition is too wide; is f symmetric?".into()));
            }
            Ok(DualityOutcome::Decomposition(Decomposition::new(pd)?))
        }
        Found::Tangle(family) => {
            let table = SeparationTable::compute(f)?;
            let (_, comps) = table.components_at_radius(r);
            let meet = family.iter().fold(Subset::full(n), |a, &y| a.intersection(y));
            let core = comps
                .into_iter()
                .find(|c| c.len() >= 2 && c.is_subset_of(meet))
                .ok_or_else(|| Error::Hypothesis("tangle has no threshold component as core".into()))?;
            let t = TangleDescriptor::new(r, core);
            let mut induced = t.family(f)?;
            induced.sort();
            if induced != family {
                return Err(Error::Hypothesis("tangle is not induced by its core".into()));
            }
            Ok(DualityOutcome::Tangle(t))
        }
    }
}

/// Tangle number against exhaustive branch-width.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityReport {
    pub tangle_number: f64,
    pub branch_width: f64,
    pub tangle_radius: f64,
    pub branch_width_radius: f64,
    /// Compared exactly on the distance axis.
    pub equal: bool,
    /// A tangle of maximum order.
    pub tangle: TangleDescriptor,
    /// A branch decomposition of minimum width.
    pub decomposition: Decomposition,
}

/// Computes both sides of the duality for `2 <= n <= 8`.
pub fn verify_duality<F: SetFunction + ?Sized>(f: &F) -> Result<DualityReport> {
    let tn = tangle_number_radius(f)?;
    let (bw, decomposition) = branch_width_exact_radius(f)?;
    let tangle = enumerate_tangles(f)?
        .at_radius(tn)
        .first()
        .map(|e| TangleDescriptor::new(tn, e.core))
        .ok_or_else(|| Error::Hypothesis("no tangle at the tangle number".into()))?;
    Ok(DualityReport {
        tangle_number: radius_to_order(tn),
        branch_width: radius_to_order(bw),
        tangle_radius: tn,
        branch_width_radius: bw,
        equal: tn == bw,
        tangle,
        decomposition,
    })
}
