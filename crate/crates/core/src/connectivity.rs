//! Set functions on `2^U` and their structural properties.
//!
//! Values live on two axes. The *order* axis is the function value `k`; the
//! *distance* axis is `r = -ln k`. The map is strictly order-reversing, so
//! `f(X) < k` is the same statement as `radius(X) > r`. Functions built from
//! a metric compute radii directly from distances, which keeps tie detection
//! exact; everything else goes through `-ln`.

use std::fmt;

use crate::error::{ensure_cap, Error, Result};
use crate::metric::DistanceMatrix;
use crate::subset::{Subset, MAX_UNIVERSE};
use crate::union_find::UnionFind;

/// Cap for sweeps over all `2^n` subsets.
pub const EXHAUSTIVE_CAP: usize = 24;
/// Cap for sweeps over all `4^n` pairs of subsets.
pub const PAIR_SWEEP_CAP: usize = 13;
/// Relative slack when comparing sums in the submodular inequality.
pub const SUM_REL_TOL: f64 = 1e-12;

/// `k -> -ln k`, with `0 -> +inf`.
#[inline]
pub fn order_to_radius(k: f64) -> f64 {
    if k <= 0.0 {
        f64::INFINITY
    } else {
        -k.ln()
    }
}

/// `r -> exp(-r)`, with `+inf -> 0`.
#[inline]
pub fn radius_to_order(r: f64) -> f64 {
    (-r).exp()
}

/// A real-valued function on the subsets of `{0, .., size-1}`.
pub trait SetFunction {
    fn size(&self) -> usize;

    fn eval(&self, x: Subset) -> f64;

    /// The value on the distance axis, `-ln eval(x)`.
    fn radius(&self, x: Subset) -> f64 {
        order_to_radius(self.eval(x))
    }
}

impl<F: SetFunction + ?Sized> SetFunction for &F {
    fn size(&self) -> usize {
        (**self).size()
    }
    fn eval(&self, x: Subset) -> f64 {
        (**self).eval(x)
    }
    fn radius(&self, x: Subset) -> f64 {
        (**self).radius(x)
    }
}

fn cross_pairs(x: Subset, n: usize) -> impl Iterator<Item = (usize, usize)> {
    let xc = x.complement(n);
    x.iter().flat_map(move |i| xc.iter().map(move |j| (i, j)))
}

/// The maximum linkage function: `exp(-min cross distance)` between a set
/// and its complement, `0` on `∅` and `U`.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxLinkage {
    m: DistanceMatrix,
}

impl MaxLinkage {
    pub fn new(m: DistanceMatrix) -> Self {
        MaxLinkage { m }
    }

    pub fn matrix(&self) -> &DistanceMatrix {
        &self.m
    }
}

impl SetFunction for MaxLinkage {
    fn size(&self) -> usize {
        self.m.n()
    }

    fn eval(&self, x: Subset) -> f64 {
        radius_to_order(self.radius(x))
    }

    fn radius(&self, x: Subset) -> f64 {
        cross_pairs(x, self.m.n())
            .map(|(i, j)| self.m.get(i, j))
            .fold(f64::INFINITY, f64::min)
    }
}

/// `exp(-max cross distance)`, the set function paired with complete linkage.
#[derive(Clone, Debug, PartialEq)]
pub struct MinLinkage {
    m: DistanceMatrix,
}

impl MinLinkage {
    pub fn new(m: DistanceMatrix) -> Self {
        MinLinkage { m }
    }
}

impl SetFunction for MinLinkage {
    fn size(&self) -> usize {
        self.m.n()
    }

    fn eval(&self, x: Subset) -> f64 {
        radius_to_order(self.radius(x))
    }

    fn radius(&self, x: Subset) -> f64 {
        if x.is_trivial(self.m.n()) {
            return f64::INFINITY;
        }
        cross_pairs(x, self.m.n())
            .map(|(i, j)| self.m.get(i, j))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Mean of `exp(-d(x,y))` over cross pairs, paired with average linkage.
#[derive(Clone, Debug, PartialEq)]
pub struct AverageLinkage {
    m: DistanceMatrix,
}

impl AverageLinkage {
    pub fn new(m: DistanceMatrix) -> Self {
        AverageLinkage { m }
    }
}

impl SetFunction for AverageLinkage {
    fn size(&self) -> usize {
        self.m.n()
    }

    fn eval(&self, x: Subset) -> f64 {
        let n = self.m.n();
        if x.is_trivial(n) {
            return 0.0;
        }
        let x = if x.contains(0) { x } else { x.complement(n) };
        let total: f64 = cross_pairs(x, n).map(|(i, j)| (-self.m.get(i, j)).exp()).sum();
        total / (x.len() * (n - x.len())) as f64
    }
}

/// Undirected graph with vertex weights; the universe of [`VertexConnectivity`]
/// is its edge list.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub weights: Vec<f64>,
}

impl WeightedGraph {
    /// Graph on vertices `0..vertex_count` with unit weights.
    pub fn unit(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        WeightedGraph::new(
            (0..vertex_count).map(|v| v.to_string()).collect(),
            edges,
            vec![1.0; vertex_count],
        )
    }

    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != vertices.len() {
            return Err(Error::Malformed(format!(
                "{} weights for {} vertices",
                weights.len(),
                vertices.len()
            )));
        }
        if edges.len() > MAX_UNIVERSE {
            return Err(Error::SizeCap {
                operation: "vertex connectivity",
                n: edges.len(),
                cap: MAX_UNIVERSE,
            });
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices.len() || v >= vertices.len()) {
            return Err(Error::Malformed(format!("edge ({u},{v}) references a missing vertex")));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Malformed("vertex weights must be finite and non-negative".into()));
        }
        Ok(WeightedGraph {
            vertices,
            edges,
            weights,
        })
    }

    /// Label of edge `e` as `u-v`.
    pub fn edge_label(&self, e: usize) -> String {
        let (u, v) = self.edges[e];
        format!("{}-{}", self.vertices[u], self.vertices[v])
    }
}

/// Weighted vertex connectivity: total weight of vertices incident to an edge
/// in `X` and an edge outside `X`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexConnectivity {
    g: WeightedGraph,
    /// Edge indices incident to each vertex.
    incidence: Vec<Subset>,
}

impl VertexConnectivity {
    pub fn new(g: WeightedGraph) -> Self {
        let mut incidence = vec![Subset::EMPTY; g.vertices.len()];
        for (e, &(u, v)) in g.edges.iter().enumerate() {
            incidence[u].insert(e);
            incidence[v].insert(e);
        }
        VertexConnectivity { g, incidence }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.g
    }

    /// Vertices incident to both `X` and its complement.
    pub fn boundary(&self, x: Subset) -> Vec<usize> {
        let xc = x.complement(self.g.edges.len());
        (0..self.g.vertices.len())
            .filter(|&v| !self.incidence[v].is_disjoint(x) && !self.incidence[v].is_disjoint(xc))
            .collect()
    }
}

impl SetFunction for VertexConnectivity {
    fn size(&self) -> usize {
        self.g.edges.len()
    }

    fn eval(&self, x: Subset) -> f64 {
        self.boundary(x).into_iter().map(|v| self.g.weights[v]).sum()
    }
}

/// A set function given by its full value table, indexed by bit pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct Tabulated {
    n: usize,
    values: Vec<f64>,
}

impl Tabulated {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        ensure_cap("tabulated function", n, EXHAUSTIVE_CAP)?;
        if values.len() != 1usize << n {
            return Err(Error::Malformed(format!(
                "table for n={n} needs {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Malformed(format!("non-finite table value at index {i}")));
        }
        Ok(Tabulated { n, values })
    }

    /// Materializes any set function.
    pub fn from_fn<F: SetFunction>(f: &F) -> Result<Self> {
        let n = f.size();
        ensure_cap("tabulation", n, EXHAUSTIVE_CAP)?;
        Ok(Tabulated {
            n,
            values: Subset::all(n).map(|x| f.eval(x)).collect(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, x: Subset) -> Result<f64> {
        self.values
            .get(x.bits() as usize)
            .copied()
            .filter(|_| x.bits() >> self.n == 0)
            .ok_or_else(|| Error::OutOfRange(format!("subset {x:?} outside a universe of size {}", self.n)))
    }
}

impl SetFunction for Tabulated {
    fn size(&self) -> usize {
        self.n
    }

    fn eval(&self, x: Subset) -> f64 {
        self.values[x.bits() as usize]
    }
}

/// The named connectivity functions.
#[derive(Clone, Debug, PartialEq)]
pub enum BuiltinKind {
    MaxLinkage(MaxLinkage),
    MinLinkage(MinLinkage),
    AverageLinkage(AverageLinkage),
    VertexConnectivity(VertexConnectivity),
    Tabulated(Tabulated),
}

impl BuiltinKind {
    pub fn name(&self) -> &'static str {
        match self {
            BuiltinKind::MaxLinkage(_) => "mind",
            BuiltinKind::MinLinkage(_) => "kappa-dist",
            BuiltinKind::AverageLinkage(_) => "phi-dist",
            BuiltinKind::VertexConnectivity(_) => "nu",
            BuiltinKind::Tabulated(_) => "tabulated",
        }
    }

    fn inner(&self) -> &dyn SetFunction {
        match self {
            BuiltinKind::MaxLinkage(f) => f,
            BuiltinKind::MinLinkage(f) => f,
            BuiltinKind::AverageLinkage(f) => f,
            BuiltinKind::VertexConnectivity(f) => f,
            BuiltinKind::Tabulated(f) => f,
        }
    }
}

impl SetFunction for BuiltinKind {
    fn size(&self) -> usize {
        self.inner().size()
    }
    fn eval(&self, x: Subset) -> f64 {
        self.inner().eval(x)
    }
    fn radius(&self, x: Subset) -> f64 {
        self.inner().radius(x)
    }
}

fn check_subset(n: usize, x: Subset) -> Result<()> {
    if n < 64 && x.bits() >> n != 0 {
        Err(Error::DimensionMismatch {
            expected: n,
            actual: 64 - x.bits().leading_zeros() as usize,
        })
    } else {
        Ok(())
    }
}

/// The maximum linkage function of `m` at `x`.
pub fn eval_mind(m: &DistanceMatrix, x: Subset) -> Result<f64> {
    check_subset(m.n(), x)?;
    let r = MaxLinkage { m: m.clone() }.radius(x);
    Ok(radius_to_order(r))
}

/// Evaluates a builtin function, checking that `x` lies in its universe.
pub fn eval_builtin(kind: &BuiltinKind, x: Subset) -> Result<f64> {
    check_subset(kind.size(), x)?;
    match kind {
        BuiltinKind::Tabulated(t) => t.get(x),
        other => Ok(other.eval(x)),
    }
}

/// Value table of `f` on the distance axis.
pub fn radius_table<F: SetFunction + ?Sized>(f: &F) -> Result<Vec<f64>> {
    let n = f.size();
    ensure_cap("exhaustive sweep", n, EXHAUSTIVE_CAP)?;
    Ok(Subset::all(n).map(|x| f.radius(x)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub enum AxiomViolation {
    /// `f(∅) != 0`.
    Normalized { value: f64 },
    /// `f(X) != f(X̄)`.
    Symmetric { x: Subset },
    /// Negative or non-finite value.
    Range { x: Subset, value: f64 },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Normalized { value } => write!(f, "normalized: f(∅) = {value}"),
            AxiomViolation::Symmetric { x } => write!(f, "symmetric: f({x:?}) != f(complement)"),
            AxiomViolation::Range { x, value } => write!(f, "range: f({x:?}) = {value}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks normalization, symmetry and the value range over all subsets.
/// Symmetry violations are listed once per complementary pair.
pub fn check_axioms<F: SetFunction + ?Sized>(f: &F) -> Result<AxiomReport> {
    let n = f.size();
    ensure_cap("check_axioms", n, EXHAUSTIVE_CAP)?;
    let mut violations = Vec::new();
    let empty = f.eval(Subset::EMPTY);
    if empty != 0.0 {
        violations.push(AxiomViolation::Normalized { value: empty });
    }
    for x in Subset::all(n) {
        let v = f.eval(x);
        if !v.is_finite() || v < 0.0 {
            violations.push(AxiomViolation::Range { x, value: v });
        }
        let xc = x.complement(n);
        if x < xc && v != f.eval(xc) {
            violations.push(AxiomViolation::Symmetric { x });
        }
    }
    Ok(AxiomReport { violations })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    /// `f(X) + f(Y) >= f(X∩Y) + f(X∪Y)`.
    Submodular,
    /// `max(f(X), f(Y)) >= max(f(X∩Y), f(X∪Y))`.
    MaxSubmodular,
}

impl Property {
    pub fn holds(self, fx: f64, fy: f64, fcap: f64, fcup: f64) -> bool {
        match self {
            Property::Submodular => {
                let rhs = fcap + fcup;
                fx + fy >= rhs - SUM_REL_TOL * rhs.abs().max(1.0)
            }
            Property::MaxSubmodular => fx.max(fy) >= fcap.max(fcup),
        }
    }
}

/// First pair `(X, Y)`, `X < Y` in bit order, at which `property` fails.
pub fn find_violation<F: SetFunction + ?Sized>(property: Property, f: &F) -> Result<Option<(Subset, Subset)>> {
    let n = f.size();
    ensure_cap("find_violation", n, PAIR_SWEEP_CAP)?;
    let table: Vec<f64> = Subset::all(n).map(|x| f.eval(x)).collect();
    Ok(find_violation_in_table(property, &table))
}

pub(crate) fn find_violation_in_table(property: Property, table: &[f64]) -> Option<(Subset, Subset)> {
    let size = table.len() as u64;
    for x in 0..size {
        for y in x + 1..size {
            // Comparable pairs satisfy both inequalities with equality.
            if x & y == x || x & y == y {
                continue;
            }
            let (i, u) = ((x & y) as usize, (x | y) as usize);
            if !property.holds(table[x as usize], table[y as usize], table[i], table[u]) {
                return Some((Subset(x), Subset(y)));
            }
        }
    }
    None
}

/// Minimum separation of every ordered pair on the distance axis:
/// `sep[u][v] = max { radius(X) : u ∈ X, v ∉ X }`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparationTable {
    n: usize,
    sep: Vec<f64>,
}

impl SeparationTable {
    pub fn compute<F: SetFunction + ?Sized>(f: &F) -> Result<Self> {
        let n = f.size();
        ensure_cap("min_separation", n, EXHAUSTIVE_CAP)?;
        let mut sep = vec![f64::NEG_INFINITY; n * n];
        for x in Subset::all(n) {
            if x.is_trivial(n) {
                continue;
            }
            let r = f.radius(x);
            let xc = x.complement(n);
            for u in x.iter() {
                for v in xc.iter() {
                    let s = &mut sep[u * n + v];
                    if r > *s {
                        *s = r;
                    }
                }
            }
        }
        Ok(SeparationTable { n, sep })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Separation radius of `u` from `v`; `-ln` of the minimum of `f` over
    /// sets containing `u` and not `v`.
    pub fn radius(&self, u: usize, v: usize) -> f64 {
        self.sep[u * self.n + v]
    }

    pub fn order(&self, u: usize, v: usize) -> f64 {
        radius_to_order(self.radius(u, v))
    }

    /// Distinct finite separation radii of unordered pairs, ascending.
    pub fn critical_radii(&self) -> Vec<f64> {
        let mut v: Vec<f64> = (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |w| (u, w)))
            .map(|(u, w)| self.radius(u, w).max(self.radius(w, u)))
            .filter(|r| r.is_finite())
            .collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    /// Components of the graph with edges `{u,v}` whose separation radius is
    /// at most `r`, i.e. whose minimum separation is at least `exp(-r)`.
    pub fn components_at_radius(&self, r: f64) -> (Vec<(usize, usize)>, Vec<Subset>) {
        self.components_by(|u, v| self.radius(u, v) <= r && self.radius(v, u) <= r)
    }

    /// As [`components_at_radius`](Self::components_at_radius) but compared on
    /// the order axis.
    pub fn components_at_order(&self, k: f64) -> (Vec<(usize, usize)>, Vec<Subset>) {
        self.components_by(|u, v| self.order(u, v) >= k && self.order(v, u) >= k)
    }

    fn components_by(&self, edge: impl Fn(usize, usize) -> bool) -> (Vec<(usize, usize)>, Vec<Subset>) {
        let mut uf = UnionFind::new(self.n);
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if edge(u, v) {
                    edges.push((u, v));
                    uf.union(u, v);
                }
            }
        }
        (edges, uf.classes())
    }
}

/// `min { f(X) : u ∈ X, v ∉ X }`.
pub fn min_separation<F: SetFunction + ?Sized>(f: &F, u: usize, v: usize) -> Result<f64> {
    Ok(radius_to_order(separation_radius(f, u, v)?))
}

/// [`min_separation`] on the distance axis.
pub fn separation_radius<F: SetFunction + ?Sized>(f: &F, u: usize, v: usize) -> Result<f64> {
    let n = f.size();
    if u == v {
        return Err(Error::OutOfRange(format!("min_separation needs distinct points, got {u} twice")));
    }
    if u >= n || v >= n {
        return Err(Error::OutOfRange(format!("point index out of range for n={n}")));
    }
    ensure_cap("min_separation", n, EXHAUSTIVE_CAP)?;
    let rest = Subset::full(n).difference(Subset::from_indices([u, v]));
    Ok(rest
        .subsets()
        .map(|s| f.radius(s.union(Subset::singleton(u))))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// The graph on `U` joining `u, v` when their minimum separation is at least
/// the threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub components: Vec<Subset>,
}

/// Threshold graph at order `k >= 0`.
pub fn threshold_graph<F: SetFunction + ?Sized>(f: &F, k: f64) -> Result<ThresholdGraph> {
    if !(k >= 0.0) {
        return Err(Error::OutOfRange(format!("threshold must be non-negative, got {k}")));
    }
    let table = SeparationTable::compute(f)?;
    let (edges, components) = table.components_at_order(k);
    Ok(ThresholdGraph {
        n: f.size(),
        edges,
        components,
    })
}

/// Threshold graph at distance `r`, i.e. order `exp(-r)`.
pub fn threshold_graph_at_radius<F: SetFunction + ?Sized>(f: &F, r: f64) -> Result<ThresholdGraph> {
    let table = SeparationTable::compute(f)?;
    let (edges, components) = table.components_at_radius(r);
    Ok(ThresholdGraph {
        n: f.size(),
        edges,
        components,
    })
}

/// Minimal zero sets of a normalized symmetric `f`: the finest partition
/// whose blocks all have value zero. Strictly positive functions give `{U}`.
pub fn canonical_zero_partition<F: SetFunction + ?Sized>(f: &F) -> Result<Vec<Subset>> {
    let n = f.size();
    ensure_cap("canonical_zero_partition", n, EXHAUSTIVE_CAP)?;
    let mut block = vec![Subset::full(n); n];
    for x in Subset::all(n) {
        if f.eval(x) != 0.0 {
            continue;
        }
        for i in x.iter() {
            block[i] = block[i].intersection(x);
        }
    }
    let mut blocks: Vec<Subset> = block;
    blocks.sort();
    blocks.dedup();
    blocks.sort_by_key(|b| b.first());
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const E: f64 = std::f64::consts::E;

    fn l4() -> MaxLinkage {
        MaxLinkage::new(fixtures::line4_matrix())
    }

    #[test]
    fn mind_on_the_line() {
        let f = l4();
        assert_eq!(f.eval(Subset::from_indices([0, 1])), (-2f64).exp());
        assert_eq!(f.eval(Subset::EMPTY), 0.0);
        assert_eq!(f.eval(Subset::full(4)), 0.0);
        assert_eq!(
            eval_mind(&fixtures::line4_matrix(), Subset::from_indices([0, 1])).unwrap(),
            E.powi(-2)
        );
    }

    #[test]
    fn mind_on_seven_points() {
        let m = fixtures::seven_point_matrix();
        let ab = Subset::from_indices([0, 1]);
        assert_eq!(eval_mind(&m, ab).unwrap(), (-5f64).exp());
        assert!(eval_mind(&m, Subset::singleton(7)).is_err());
    }

    #[test]
    fn builtin_values() {
        let m = fixtures::line4_matrix();
        let x = Subset::from_indices([0, 1]);
        let kd = BuiltinKind::MinLinkage(MinLinkage::new(m.clone()));
        assert_eq!(eval_builtin(&kd, x).unwrap(), (-4f64).exp());
        let phi = BuiltinKind::AverageLinkage(AverageLinkage::new(m.clone()));
        assert_eq!(eval_builtin(&phi, Subset::full(4)).unwrap(), 0.0);
        // e^{-2}, e^{-3}, e^{-3}, e^{-4} over the four cross pairs.
        let expect = ((-2f64).exp() + 2.0 * (-3f64).exp() + (-4f64).exp()) / 4.0;
        assert!((eval_builtin(&phi, x).unwrap() - expect).abs() < 1e-15);

        let p3 = WeightedGraph::unit(3, vec![(0, 1), (1, 2)]).unwrap();
        let nu = BuiltinKind::VertexConnectivity(VertexConnectivity::new(p3));
        assert_eq!(eval_builtin(&nu, Subset::singleton(0)).unwrap(), 1.0);
        assert_eq!(eval_builtin(&nu, Subset::EMPTY).unwrap(), 0.0);
        assert!(eval_builtin(&nu, Subset::singleton(2)).is_err());
    }

    #[test]
    fn weighted_boundary() {
        let g = WeightedGraph::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![(0, 1), (1, 2), (2, 3)],
            vec![1.0, 2.5, 4.0, 1.0],
        )
        .unwrap();
        let nu = VertexConnectivity::new(g);
        assert_eq!(nu.boundary(Subset::from_indices([0, 2])), vec![1, 2]);
        assert_eq!(nu.eval(Subset::from_indices([0, 2])), 6.5);
    }

    #[test]
    fn tabulated_lookup_checks_range() {
        let t = Tabulated::new(2, vec![0.0, 0.5, 0.5, 0.0]).unwrap();
        assert_eq!(t.get(Subset::singleton(1)).unwrap(), 0.5);
        assert!(t.get(Subset::singleton(2)).is_err());
        assert!(Tabulated::new(2, vec![0.0; 3]).is_err());
    }

    #[test]
    fn axioms() {
        let f = MaxLinkage::new(fixtures::seven_point_matrix());
        assert!(check_axioms(&f).unwrap().passed());
        let phi = AverageLinkage::new(fixtures::line4_matrix());
        assert!(check_axioms(&phi).unwrap().passed());
        let t = Tabulated::new(1, vec![1.0, 1.0]).unwrap();
        assert_eq!(
            check_axioms(&t).unwrap().violations,
            vec![AxiomViolation::Normalized { value: 1.0 }]
        );
        let asym = Tabulated::new(2, vec![0.0, 0.3, 0.4, 0.0]).unwrap();
        assert_eq!(
            check_axioms(&asym).unwrap().violations,
            vec![AxiomViolation::Symmetric { x: Subset(1) }]
        );
    }

    #[test]
    fn mind_is_not_submodular_on_the_line() {
        let (x, y) = find_violation(Property::Submodular, &l4()).unwrap().unwrap();
        assert_eq!(x, Subset::from_indices([0, 1]));
        assert_eq!(y, Subset::from_indices([0, 2]));
        let f = l4();
        let e1 = (-1f64).exp();
        assert_eq!(f.eval(y), e1);
        assert_eq!(f.eval(x.intersection(y)), e1);
        assert_eq!(f.eval(x.union(y)), e1);
        assert!(f.eval(x) + f.eval(y) < 2.0 * e1);
    }

    #[test]
    fn mind_is_max_submodular_on_the_line() {
        assert_eq!(find_violation(Property::MaxSubmodular, &l4()).unwrap(), None);
    }

    #[test]
    fn nu_is_not_max_submodular_on_a_path() {
        let p4 = WeightedGraph::unit(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let nu = VertexConnectivity::new(p4);
        assert!(find_violation(Property::MaxSubmodular, &nu).unwrap().is_some());
        assert_eq!(find_violation(Property::Submodular, &nu).unwrap(), None);
    }

    #[test]
    fn pair_sweep_cap() {
        let t = Tabulated::new(14, vec![0.0; 1 << 14]).unwrap();
        assert!(matches!(
            find_violation(Property::MaxSubmodular, &t),
            Err(Error::SizeCap { cap: PAIR_SWEEP_CAP, .. })
        ));
    }

    #[test]
    fn separations_on_the_line() {
        let f = l4();
        assert_eq!(min_separation(&f, 0, 1).unwrap(), (-1f64).exp());
        // Separated by X = {1, 2}, not by the direct distance 4.
        assert_eq!(min_separation(&f, 1, 3).unwrap(), (-2f64).exp());
        assert_eq!(separation_radius(&f, 1, 3).unwrap(), 2.0);
        assert!(min_separation(&f, 2, 2).is_err());
        let table = SeparationTable::compute(&f).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    assert_eq!(table.radius(u, v), separation_radius(&f, u, v).unwrap());
                }
            }
        }
        assert_eq!(table.critical_radii(), vec![1.0, 2.0]);
    }

    #[test]
    fn two_point_separation_is_the_singleton_value() {
        let m = DistanceMatrix::from_rows(vec![vec![0.0, 3.0], vec![3.0, 0.0]]).unwrap();
        let f = MaxLinkage::new(m);
        assert_eq!(min_separation(&f, 0, 1).unwrap(), f.eval(Subset::singleton(0)));
    }

    #[test]
    fn threshold_graphs_on_the_line() {
        let f = l4();
        let e1 = (-1f64).exp();
        let g = threshold_graph(&f, e1).unwrap();
        assert_eq!(g.edges, vec![(0, 1), (2, 3)]);
        assert_eq!(g.components, vec![Subset::from_indices([0, 1]), Subset::from_indices([2, 3])]);
        let g0 = threshold_graph(&f, 0.0).unwrap();
        assert_eq!(g0.edges.len(), 6);
        assert_eq!(g0.components, vec![Subset::full(4)]);
        let above = threshold_graph(&f, e1.next_up()).unwrap();
        assert!(above.edges.is_empty());
        assert_eq!(above.components.len(), 4);
        assert!(threshold_graph(&f, -1.0).is_err());
        assert_eq!(threshold_graph_at_radius(&f, 1.0).unwrap(), g);
    }

    #[test]
    fn zero_partition_of_positive_functions_is_trivial() {
        let f = MaxLinkage::new(fixtures::seven_point_matrix());
        assert_eq!(canonical_zero_partition(&f).unwrap(), vec![Subset::full(7)]);
        let one = DistanceMatrix::from_rows(vec![vec![0.0]]).unwrap();
        assert_eq!(canonical_zero_partition(&MaxLinkage::new(one)).unwrap(), vec![Subset::full(1)]);
    }

    #[test]
    fn zero_partition_of_a_disjoint_maximum() {
        // max of two independent line functions on {0,1,2} and {3,4}.
        let left = MaxLinkage::new(
            DistanceMatrix::from_rows(vec![
                vec![0.0, 1.0, 3.0],
                vec![1.0, 0.0, 2.0],
                vec![3.0, 2.0, 0.0],
            ])
            .unwrap(),
        );
        let right = MaxLinkage::new(DistanceMatrix::from_rows(vec![vec![0.0, 1.5], vec![1.5, 0.0]]).unwrap());
        let values = Subset::all(5)
            .map(|x| {
                let l = Subset(x.bits() & 0b111);
                let r = Subset(x.bits() >> 3);
                left.eval(l).max(right.eval(r))
            })
            .collect();
        let f = Tabulated::new(5, values).unwrap();
        let blocks = canonical_zero_partition(&f).unwrap();
        assert_eq!(blocks, vec![Subset(0b00111), Subset(0b11000)]);
        for x in Subset::all(5) {
            let via_blocks = blocks.iter().map(|&b| f.eval(x.intersection(b))).fold(0.0, f64::max);
            assert_eq!(f.eval(x), via_blocks);
        }
    }
}
