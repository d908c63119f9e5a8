use std::fmt;

use crate::error::{Error, Result};
use crate::subset::Subset;

/// A partition of `{0..n}`, blocks sorted by least element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Subset>,
}

impl Partition {
    pub fn new(n: usize, mut blocks: Vec<Subset>) -> Result<Self> {
        let mut seen = Subset::EMPTY;
        for &b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidDendogram("empty block".into()));
            }
            if !b.is_disjoint(seen) {
                return Err(Error::InvalidDendogram(format!("block {b:?} overlaps another block")));
            }
            seen = seen.union(b);
        }
        if seen != Subset::full(n) {
            return Err(Error::InvalidDendogram(format!(
                "blocks cover {seen:?}, not the universe of size {n}"
            )));
        }
        blocks.sort_by_key(|b| b.first());
        Ok(Partition { blocks })
    }

    /// Blocks are assumed disjoint, non-empty and covering.
    pub(crate) fn from_classes(mut blocks: Vec<Subset>) -> Self {
        blocks.sort_by_key(|b| b.first());
        Partition { blocks }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(Subset::singleton).collect(),
        }
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks.iter().all(|b| coarser.blocks.iter().any(|c| b.is_subset_of(*c)))
    }

    pub fn block_of(&self, x: usize) -> Option<Subset> {
        self.blocks.iter().copied().find(|b| b.contains(x))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.blocks).finish()
    }
}

/// A right-continuous step function from radii to partitions: `theta(r)` is
/// the partition of the last step whose radius is at most `r`.
#[derive(Clone, Debug)]
pub struct Dendogram {
    labels: Vec<String>,
    radii: Vec<f64>,
    partitions: Vec<Partition>,
}

/// Equality of radii and partitions; labels are not compared.
impl PartialEq for Dendogram {
    fn eq(&self, other: &Self) -> bool {
        self.radii == other.radii && self.partitions == other.partitions
    }
}

impl Dendogram {
    /// Checks shape only; see [`validate_dendogram`] for the dendogram conditions.
    pub fn new(labels: Vec<String>, radii: Vec<f64>, partitions: Vec<Partition>) -> Result<Self> {
        if radii.is_empty() || radii.len() != partitions.len() {
            return Err(Error::InvalidDendogram(format!(
                "{} radii for {} partitions",
                radii.len(),
                partitions.len()
            )));
        }
        let n = labels.len();
        if let Some(p) = partitions
            .iter()
            .find(|p| p.blocks.iter().fold(Subset::EMPTY, |a, &b| a.union(b)) != Subset::full(n))
        {
            return Err(Error::InvalidDendogram(format!("partition {p:?} does not cover {n} points")));
        }
        if let Some(r) = radii.iter().find(|r| !r.is_finite()) {
            return Err(Error::InvalidDendogram(format!("non-finite radius {r}")));
        }
        Ok(Dendogram {
            labels,
            radii,
            partitions,
        })
    }

    pub(crate) fn from_parts(labels: Vec<String>, radii: Vec<f64>, partitions: Vec<Partition>) -> Self {
        Dendogram {
            labels,
            radii,
            partitions,
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.labels.len() {
            return Err(Error::DimensionMismatch {
                expected: self.labels.len(),
                actual: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// `(radius, partition)` pairs in order.
    pub fn steps(&self) -> impl Iterator<Item = (f64, &Partition)> {
        self.radii.iter().copied().zip(self.partitions.iter())
    }

    /// `theta(r)`.
    pub fn evaluate(&self, r: f64) -> Result<&Partition> {
        if !(r >= 0.0) {
            return Err(Error::OutOfRange(format!("dendogram radius must be non-negative, got {r}")));
        }
        let i = self.radii.partition_point(|&ri| ri <= r);
        Ok(&self.partitions[i.saturating_sub(1)])
    }
}

pub fn dendogram_evaluate(d: &Dendogram, r: f64) -> Result<Partition> {
    d.evaluate(r).cloned()
}

/// Outcome of checking the dendogram conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct DendogramReport {
    /// The first step is at radius 0 with all singletons.
    pub starts_with_singletons: bool,
    /// The last step is the single block `U`.
    pub ends_with_universe: bool,
    /// Steps `i` whose partition does not refine step `i + 1`.
    pub refinement_failures: Vec<usize>,
    /// Steps `i` with `R_i >= R_(i+1)` or an unchanged partition.
    pub strictness_failures: Vec<usize>,
    /// Right-continuity; implied by the step representation.
    pub right_continuous: bool,
}

impl DendogramReport {
    pub fn passed(&self) -> bool {
        self.starts_with_singletons
            && self.ends_with_universe
            && self.refinement_failures.is_empty()
            && self.strictness_failures.is_empty()
            && self.right_continuous
    }

    /// Human-readable names of the failed conditions.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.starts_with_singletons {
            out.push("condition (1): theta(0) is not all singletons".to_string());
        }
        if !self.ends_with_universe {
            out.push("condition (2): final partition is not {U}".to_string());
        }
        for i in &self.refinement_failures {
            out.push(format!("condition (3) refinement: step {i} does not refine step {}", i + 1));
        }
        for i in &self.strictness_failures {
            out.push(format!("strictness: step {i} to {} is not a strict merge", i + 1));
        }
        out
    }
}

pub fn validate_dendogram(d: &Dendogram) -> DendogramReport {
    let n = d.n();
    let m = d.radii.len();
    let refinement_failures = (0..m - 1)
        .filter(|&i| !d.partitions[i].refines(&d.partitions[i + 1]))
        .collect();
    let strictness_failures = (0..m - 1)
        .filter(|&i| !(d.radii[i] < d.radii[i + 1]) || d.partitions[i] == d.partitions[i + 1])
        .collect();
    DendogramReport {
        starts_with_singletons: d.radii[0] == 0.0 && d.partitions[0] == Partition::singletons(n),
        ends_with_universe: d.partitions[m - 1].blocks == [Subset::full(n)],
        refinement_failures,
        strictness_failures,
        right_continuous: true,
    }
}
