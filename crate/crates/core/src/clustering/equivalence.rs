use super::dendogram::{validate_dendogram, Dendogram};
use super::single_linkage::{psi, psi_inverse, single_linkage};
use crate::connectivity::{
    check_axioms, find_violation, radius_to_order, MaxLinkage, Property, SeparationTable, SetFunction,
    PAIR_SWEEP_CAP,
};
use crate::error::{ensure_cap, Error, Result};
use crate::metric::{ultrametric_check, DistanceMatrix, Ultrametric};
use crate::subset::Subset;
use crate::tangle::{enumerate_tangles, verify_tangle, TangleCatalog, TangleDescriptor, TANGLE_VERIFY_CAP};

/// Largest universe whose dendogram function is tabulated.
pub const KAPPA_TABLE_CAP: usize = 20;

/// Largest universe accepted by [`dendogram_from_kappa`].
pub const KAPPA_INVERSE_CAP: usize = 16;

/// The maximum linkage function of the ultrametric of a dendogram.
///
/// The radius of `X` is the first merge radius at which some block meets both
/// `X` and its complement.
#[derive(Clone, Debug, PartialEq)]
pub struct DendogramKappa {
    n: usize,
    /// Newly formed blocks with their merge radius, in merge order.
    merges: Vec<(f64, Subset)>,
    table: Option<Vec<f64>>,
}

impl DendogramKappa {
    fn radius_uncached(&self, x: Subset) -> f64 {
        let xc = x.complement(self.n);
        self.merges
            .iter()
            .find(|(_, b)| !b.is_disjoint(x) && !b.is_disjoint(xc))
            .map_or(f64::INFINITY, |&(r, _)| r)
    }

    pub fn is_tabulated(&self) -> bool {
        self.table.is_some()
    }
}

impl SetFunction for DendogramKappa {
    fn size(&self) -> usize {
        self.n
    }

    fn eval(&self, x: Subset) -> f64 {
        radius_to_order(self.radius(x))
    }

    fn radius(&self, x: Subset) -> f64 {
        match &self.table {
            Some(t) => t[x.bits() as usize],
            None => self.radius_uncached(x),
        }
    }
}

/// `mind` over `psi(d)`, tabulated up to [`KAPPA_TABLE_CAP`] points.
pub fn kappa_from_dendogram(d: &Dendogram) -> Result<DendogramKappa> {
    let report = validate_dendogram(d);
    if !report.passed() {
        return Err(Error::InvalidDendogram(report.failures().join("; ")));
    }
    let n = d.n();
    let mut merges = Vec::new();
    for i in 1..d.radii().len() {
        for &b in d.partitions()[i].blocks() {
            if !d.partitions()[i - 1].blocks().contains(&b) {
                merges.push((d.radii()[i], b));
            }
        }
    }
    let mut kappa = DendogramKappa {
        n,
        merges,
        table: None,
    };
    if n <= KAPPA_TABLE_CAP {
        kappa.table = Some(Subset::all(n).map(|x| kappa.radius_uncached(x)).collect());
    }
    Ok(kappa)
}

/// `u(x, y) = -ln min_separation(f, x, y)`.
pub fn separation_ultrametric<F: SetFunction + ?Sized>(f: &F, labels: Vec<String>) -> Result<DistanceMatrix> {
    let n = f.size();
    let table = SeparationTable::compute(f)?;
    let rows = (0..n)
        .map(|x| (0..n).map(|y| if x == y { 0.0 } else { table.radius(x, y) }).collect())
        .collect();
    DistanceMatrix::new(labels, rows)
}

fn not_max_submodular<F: SetFunction + ?Sized>(f: &F, detail: String) -> Error {
    if f.size() <= PAIR_SWEEP_CAP {
        if let Ok(Some((x, y))) = find_violation(Property::MaxSubmodular, f) {
            return Error::NotMaximumSubmodular { x, y };
        }
    }
    Error::Hypothesis(format!("{detail}; the function is not maximum-submodular"))
}

/// Recovers the dendogram of a maximum-submodular connectivity function
/// with range `[0,1)` that is positive on every non-trivial set.
pub fn dendogram_from_kappa<F: SetFunction + ?Sized>(f: &F) -> Result<Dendogram> {
    dendogram_from_kappa_labelled(f, (0..f.size()).map(|i| i.to_string()).collect())
}

/// [`dendogram_from_kappa`] with point labels.
pub fn dendogram_from_kappa_labelled<F: SetFunction + ?Sized>(f: &F, labels: Vec<String>) -> Result<Dendogram> {
    let n = f.size();
    ensure_cap("dendogram_from_kappa", n, KAPPA_INVERSE_CAP)?;
    if labels.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: labels.len(),
        });
    }
    let axioms = check_axioms(f)?;
    if let Some(v) = axioms.violations.first() {
        return Err(Error::Hypothesis(format!("not a connectivity function: {v}")));
    }
    for x in Subset::all(n) {
        if x.is_trivial(n) {
            continue;
        }
        let r = f.radius(x);
        if !(r > 0.0) {
            return Err(Error::Hypothesis(format!(
                "requires range [0,1): f({x:?}) = {}",
                f.eval(x)
            )));
        }
        if !r.is_finite() {
            return Err(Error::Hypothesis(format!(
                "requires f > 0 on non-trivial sets: f({x:?}) = 0"
            )));
        }
    }
    let u = separation_ultrametric(f, labels)?;
    if let Some((x, y, z)) = ultrametric_check(&u) {
        return Err(not_max_submodular(
            f,
            format!("separation distances fail the strong triangle inequality at ({x},{y},{z})"),
        ));
    }
    let mind = MaxLinkage::new(u.clone());
    if let Some(x) = Subset::all(n).find(|&x| mind.radius(x) != f.radius(x)) {
        return Err(not_max_submodular(
            f,
            format!("maximum linkage of the separation distances differs at {x:?}"),
        ));
    }
    Ok(psi_inverse(&Ultrametric::new(u)?))
}

/// A non-singleton block of a dendogram with the radii `[r_lo, r_hi)` over
/// which it persists.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockLifetime {
    pub block: Subset,
    pub r_lo: f64,
    pub r_hi: f64,
}

/// Comparison of single-linkage blocks with the tangles of `mind`.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrespondenceReport {
    pub blocks: Vec<BlockLifetime>,
    pub catalog: TangleCatalog,
    /// Blocks and catalog entries agree exactly, intervals included.
    pub coincide: bool,
    /// Failed checks on individual blocks or tangles.
    pub failures: Vec<String>,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.coincide && self.failures.is_empty()
    }
}

fn block_lifetimes(d: &Dendogram) -> Vec<BlockLifetime> {
    let steps: Vec<_> = d.steps().collect();
    let mut out = Vec::new();
    for (i, &(r, p)) in steps.iter().enumerate() {
        for &b in p.blocks() {
            if b.len() < 2 || (i > 0 && steps[i - 1].1.blocks().contains(&b)) {
                continue;
            }
            let r_hi = steps[i + 1..]
                .iter()
                .find(|(_, q)| !q.blocks().contains(&b))
                .map_or(f64::INFINITY, |&(s, _)| s);
            out.push(BlockLifetime { block: b, r_lo: r, r_hi });
        }
    }
    out.sort_by(|a, b| a.r_lo.total_cmp(&b.r_lo).then(a.block.cmp(&b.block)));
    out
}

/// Checks both directions of the block/tangle correspondence for `mind` on `m`:
/// every non-singleton block is the core of a tangle at each end of its
/// lifetime, and every tangle's core is the block containing it at its order.
pub fn block_tangle_correspondence(m: &DistanceMatrix) -> Result<CorrespondenceReport> {
    let n = m.n();
    ensure_cap("block_tangle_correspondence", n, TANGLE_VERIFY_CAP)?;
    let f = MaxLinkage::new(m.clone());
    let d = single_linkage(m);
    let catalog = enumerate_tangles(&f)?;
    let blocks = block_lifetimes(&d);
    let coincide = blocks.len() == catalog.entries.len()
        && blocks
            .iter()
            .zip(&catalog.entries)
            .all(|(b, e)| b.block == e.core && b.r_lo == e.r_lo && b.r_hi == e.r_hi);
    let mut failures = Vec::new();
    for b in &blocks {
        let mut ends = vec![b.r_lo];
        if b.r_hi.is_finite() {
            ends.push(b.r_hi.next_down());
        }
        for r in ends {
            let report = verify_tangle(&f, &TangleDescriptor::new(r, b.block))?;
            if !report.passed() {
                failures.push(format!("block {:?} at r={r}: {report}", b.block));
            }
        }
    }
    for e in &catalog.entries {
        let block = d.evaluate(e.r_lo)?.block_of(e.core.first().expect("core is non-empty"));
        if block != Some(e.core) {
            failures.push(format!(
                "tangle core {:?} at r={} is not a block (found {block:?})",
                e.core, e.r_lo
            ));
        }
    }
    // The ultrametric view gives the same blocks.
    let u = psi(&d)?;
    if single_linkage(&u) != d {
        failures.push("single linkage of the ultrametric differs".into());
    }
    Ok(CorrespondenceReport {
        blocks,
        catalog,
        coincide,
        failures,
    })
}
