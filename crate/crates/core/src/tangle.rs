//! Tangles of maximum-submodular connectivity functions.
//!
//! A tangle of such a function is determined by its order and a *core*: a
//! component of the threshold graph at that order that every member
//! contains. Tangles are therefore stored as `(radius, core)` pairs and the
//! explicit family `{X : f(X) < exp(-radius), core ⊆ X}` is only built for
//! verification.

use std::collections::BTreeMap;
use std::fmt;

use crate::connectivity::{
    find_violation, radius_to_order, order_to_radius, Property, SeparationTable, SetFunction, EXHAUSTIVE_CAP,
    PAIR_SWEEP_CAP,
};
use crate::error::{ensure_cap, Error, Result};
use crate::subset::Subset;

/// Cap for materializing and verifying a tangle family.
pub const TANGLE_VERIFY_CAP: usize = 8;

/// A tangle given by its order on the distance axis and its core.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangleDescriptor {
    /// Order `k = exp(-radius)`.
    pub radius: f64,
    pub core: Subset,
}

impl TangleDescriptor {
    pub fn new(radius: f64, core: Subset) -> Self {
        TangleDescriptor { radius, core }
    }

    pub fn at_order(k: f64, core: Subset) -> Self {
        TangleDescriptor {
            radius: order_to_radius(k),
            core,
        }
    }

    pub fn order(&self) -> f64 {
        radius_to_order(self.radius)
    }

    /// `f(X) < k` and `core ⊆ X`.
    pub fn contains<F: SetFunction + ?Sized>(&self, f: &F, x: Subset) -> bool {
        self.core.is_subset_of(x) && f.radius(x) > self.radius
    }

    /// The induced family, in increasing bit order.
    pub fn family<F: SetFunction + ?Sized>(&self, f: &F) -> Result<Vec<Subset>> {
        let n = f.size();
        ensure_cap("tangle family", n, EXHAUSTIVE_CAP)?;
        let rest = self.core.complement(n);
        Ok(rest
            .subsets()
            .map(|s| s.union(self.core))
            .filter(|&x| f.radius(x) > self.radius)
            .collect())
    }
}

/// `tangle_contains` as a free function.
pub fn tangle_contains<F: SetFunction + ?Sized>(t: &TangleDescriptor, f: &F, x: Subset) -> bool {
    t.contains(f, x)
}

/// Outcome of checking the tangle axioms on an explicit family.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TangleReport {
    /// Members with `f(X) >= k`.
    pub t0: Vec<Subset>,
    /// Small sets `X` with neither `X` nor its complement in the family.
    pub t1: Vec<Subset>,
    /// A triple of members with empty intersection.
    pub t2: Option<(Subset, Subset, Subset)>,
    /// Elements whose singleton is a member.
    pub t3: Vec<usize>,
}

impl TangleReport {
    pub fn passed(&self) -> bool {
        self.t0.is_empty() && self.t1.is_empty() && self.t2.is_none() && self.t3.is_empty()
    }
}

impl fmt::Display for TangleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "tangle axioms hold");
        }
        if !self.t0.is_empty() {
            writeln!(f, "T.0 fails at {:?}", self.t0)?;
        }
        if !self.t1.is_empty() {
            writeln!(f, "T.1 fails at {:?}", self.t1)?;
        }
        if let Some((a, b, c)) = self.t2 {
            writeln!(f, "T.2 fails at {a:?} ∩ {b:?} ∩ {c:?} = ∅")?;
        }
        if !self.t3.is_empty() {
            writeln!(f, "T.3 fails at singletons of {:?}", self.t3)?;
        }
        Ok(())
    }
}

/// Checks the tangle axioms for `family` at order `exp(-radius)`.
pub fn check_tangle_family<F: SetFunction + ?Sized>(f: &F, radius: f64, family: &[Subset]) -> Result<TangleReport> {
    let n = f.size();
    ensure_cap("tangle verification", n, TANGLE_VERIFY_CAP)?;
    let size = 1usize << n;
    let mut member = vec![false; size];
    for &x in family {
        if x.bits() as usize >= size {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: 64 - x.bits().leading_zeros() as usize,
            });
        }
        member[x.bits() as usize] = true;
    }
    let mut report = TangleReport::default();
    report.t0 = family.iter().copied().filter(|&x| f.radius(x) <= radius).collect();
    for x in Subset::all(n) {
        if f.radius(x) > radius && !member[x.bits() as usize] && !member[x.complement(n).bits() as usize] {
            report.t1.push(x);
        }
    }
    // has_sub[m]: some member is a subset of m.
    let mut has_sub = member.clone();
    for i in 0..n {
        for m in 0..size {
            if m >> i & 1 == 1 && has_sub[m ^ (1 << i)] {
                has_sub[m] = true;
            }
        }
    }
    let mut members: Vec<Subset> = family.to_vec();
    members.sort();
    members.dedup();
    'outer: for (i, &a) in members.iter().enumerate() {
        for &b in &members[i..] {
            let rest = a.intersection(b).complement(n);
            if has_sub[rest.bits() as usize] {
                let c = members.iter().copied().find(|c| c.is_subset_of(rest)).expect("member exists");
                report.t2 = Some((a, b, c));
                break 'outer;
            }
        }
    }
    report.t3 = (0..n).filter(|&i| member[1 << i]).collect();
    Ok(report)
}

/// Materializes the family of `t` and checks all tangle axioms.
pub fn verify_tangle<F: SetFunction + ?Sized>(f: &F, t: &TangleDescriptor) -> Result<TangleReport> {
    ensure_cap("verify_tangle", f.size(), TANGLE_VERIFY_CAP)?;
    let family = t.family(f)?;
    check_tangle_family(f, t.radius, &family)
}

/// A core together with the distance interval `[r_lo, r_hi)` over which it
/// is a component of the threshold graph. On the order axis this is
/// `(exp(-r_hi), exp(-r_lo)]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatalogEntry {
    pub core: Subset,
    pub r_lo: f64,
    /// `+inf` when the core never merges.
    pub r_hi: f64,
}

impl CatalogEntry {
    pub fn k_hi(&self) -> f64 {
        radius_to_order(self.r_lo)
    }

    pub fn k_lo(&self) -> f64 {
        radius_to_order(self.r_hi)
    }

    pub fn contains_radius(&self, r: f64) -> bool {
        self.r_lo <= r && r < self.r_hi
    }

    /// The tangle at the strongest order of the interval.
    pub fn birth(&self) -> TangleDescriptor {
        TangleDescriptor::new(self.r_lo, self.core)
    }
}

/// All tangles of positive order, sorted by `(r_lo, core)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TangleCatalog {
    pub entries: Vec<CatalogEntry>,
}

impl TangleCatalog {
    /// Entries alive at distance `r`.
    pub fn at_radius(&self, r: f64) -> Vec<CatalogEntry> {
        self.entries.iter().copied().filter(|e| e.contains_radius(r)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn require_max_submodular<F: SetFunction + ?Sized>(f: &F) -> Result<()> {
    if f.size() <= PAIR_SWEEP_CAP {
        if let Some((x, y)) = find_violation(Property::MaxSubmodular, f)? {
            return Err(Error::NotMaximumSubmodular { x, y });
        }
    }
    Ok(())
}

/// Enumerates every tangle of positive order of a maximum-submodular `f`.
///
/// Maximum-submodularity is checked by a pair sweep when `n` is within
/// [`PAIR_SWEEP_CAP`] and assumed above it.
pub fn enumerate_tangles<F: SetFunction + ?Sized>(f: &F) -> Result<TangleCatalog> {
    ensure_cap("enumerate_tangles", f.size(), EXHAUSTIVE_CAP)?;
    require_max_submodular(f)?;
    let table = SeparationTable::compute(f)?;
    Ok(catalog_from_separations(&table))
}

pub(crate) fn catalog_from_separations(table: &SeparationTable) -> TangleCatalog {
    let mut open: BTreeMap<Subset, f64> = BTreeMap::new();
    let mut entries = Vec::new();
    for r in table.critical_radii() {
        let (_, comps) = table.components_at_radius(r);
        let alive: Vec<Subset> = comps.into_iter().filter(|c| c.len() >= 2).collect();
        let dead: Vec<Subset> = open.keys().copied().filter(|c| !alive.contains(c)).collect();
        for core in dead {
            let r_lo = open.remove(&core).expect("open core");
            entries.push(CatalogEntry { core, r_lo, r_hi: r });
        }
        for core in alive {
            open.entry(core).or_insert(r);
        }
    }
    entries.extend(open.into_iter().map(|(core, r_lo)| CatalogEntry {
        core,
        r_lo,
        r_hi: f64::INFINITY,
    }));
    entries.sort_by(|a, b| a.r_lo.total_cmp(&b.r_lo).then(a.core.cmp(&b.core)));
    TangleCatalog { entries }
}

/// Largest order of a tangle; `0` when `n <= 1`.
pub fn tangle_number<F: SetFunction + ?Sized>(f: &F) -> Result<f64> {
    Ok(radius_to_order(tangle_number_radius(f)?))
}

/// [`tangle_number`] on the distance axis; `+inf` when `n <= 1`.
pub fn tangle_number_radius<F: SetFunction + ?Sized>(f: &F) -> Result<f64> {
    ensure_cap("tangle_number", f.size(), EXHAUSTIVE_CAP)?;
    require_max_submodular(f)?;
    let table = SeparationTable::compute(f)?;
    Ok(separation_minimum(&table))
}

pub(crate) fn separation_minimum(table: &SeparationTable) -> f64 {
    let n = table.n();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .map(|(u, v)| table.radius(u, v).max(table.radius(v, u)))
        .fold(f64::INFINITY, f64::min)
}
