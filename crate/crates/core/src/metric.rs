//! Finite metric and ultrametric spaces.

use std::collections::HashSet;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Relative slack allowed in the triangle inequality. Euclidean distances of
/// collinear points can overshoot `d(x,y) + d(y,z)` by a rounding step.
pub const TRIANGLE_REL_TOL: f64 = 1e-12;

/// Labeled points with coordinates of a common dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    labels: Vec<String>,
    coords: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn new(labels: Vec<String>, coords: Vec<Vec<f64>>) -> Result<Self> {
        if labels.len() != coords.len() {
            return Err(Error::Malformed(format!(
                "{} labels for {} coordinate rows",
                labels.len(),
                coords.len()
            )));
        }
        check_distinct_labels(&labels)?;
        if let Some(first) = coords.first() {
            let dim = first.len();
            for (label, row) in labels.iter().zip(&coords) {
                if row.len() != dim {
                    return Err(Error::Malformed(format!(
                        "point {label} has dimension {}, expected {dim}",
                        row.len()
                    )));
                }
                if row.iter().any(|c| !c.is_finite()) {
                    return Err(Error::Malformed(format!("point {label} has a non-finite coordinate")));
                }
            }
        }
        Ok(PointCloud { labels, coords })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coords(&self) -> &[Vec<f64>] {
        &self.coords
    }
}

fn check_distinct_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::Malformed(format!("duplicate label {l:?}")));
        }
    }
    Ok(())
}

/// A validated finite metric: zero diagonal, symmetric, strictly positive
/// off the diagonal, triangle inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    d: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds a matrix from rows, rejecting anything `validate_metric` flags.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let report = validate_metric(&labels, &rows)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidMetric(format!(
                "{v} ({} violation(s) in total)",
                report.violations.len()
            )));
        }
        let d = rows.into_iter().flatten().collect();
        Ok(DistanceMatrix { labels, d })
    }

    /// Builds a matrix from rows with generated labels `0..n`.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let labels = (0..rows.len()).map(|i| i.to_string()).collect();
        DistanceMatrix::new(labels, rows)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n() + j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.d.chunks(self.n().max(1)).map(|r| r.to_vec()).collect()
    }

    /// Distinct off-diagonal values in increasing order.
    pub fn distinct_distances(&self) -> Vec<f64> {
        let n = self.n();
        let mut v: Vec<f64> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    /// Restriction to the points in `keep`, in increasing index order.
    pub fn restrict(&self, keep: &[usize]) -> DistanceMatrix {
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let d = keep
            .iter()
            .flat_map(|&i| keep.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        DistanceMatrix { labels, d }
    }
}

/// Euclidean distance matrix of a point cloud.
pub fn distance_matrix_from_points(cloud: &PointCloud) -> Result<DistanceMatrix> {
    let n = cloud.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let dist = cloud.coords[i]
                .iter()
                .zip(&cloud.coords[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            if dist == 0.0 {
                return Err(Error::DuplicatePoints(
                    cloud.labels[i].clone(),
                    cloud.labels[j].clone(),
                ));
            }
            d[i * n + j] = dist;
            d[j * n + i] = dist;
        }
    }
    let m = DistanceMatrix {
        labels: cloud.labels.clone(),
        d,
    };
    debug_assert!(validate_metric(&m.labels, &m.rows()).map(|r| r.is_valid()).unwrap_or(false));
    Ok(m)
}

/// One failed metric axiom with its witness.
#[derive(Clone, Debug, PartialEq)]
pub enum MetricViolation {
    /// `d(i,i) != 0`.
    Diagonal { i: usize },
    /// `d(i,j) != d(j,i)`.
    Symmetry { i: usize, j: usize },
    /// `d(i,j) <= 0` for `i != j`.
    Positivity { i: usize, j: usize },
    /// `d(x,z) > d(x,y) + d(y,z)`.
    Triangle { x: usize, y: usize, z: usize },
}

impl MetricViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            MetricViolation::Diagonal { .. } => "diagonal",
            MetricViolation::Symmetry { .. } => "symmetry",
            MetricViolation::Positivity { .. } => "positivity",
            MetricViolation::Triangle { .. } => "triangle",
        }
    }
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MetricViolation::Diagonal { i } => write!(f, "diagonal at ({i},{i})"),
            MetricViolation::Symmetry { i, j } => write!(f, "symmetry at ({i},{j})"),
            MetricViolation::Positivity { i, j } => write!(f, "positivity at ({i},{j})"),
            MetricViolation::Triangle { x, y, z } => write!(f, "triangle at ({x},{y},{z})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MetricReport {
    pub violations: Vec<MetricViolation>,
}

impl MetricReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every metric axiom on a candidate matrix and lists all violations
/// in lexicographic witness order. Structural problems (non-square,
/// non-finite, label count, duplicate labels) are errors rather than
/// violations.
pub fn validate_metric(labels: &[String], rows: &[Vec<f64>]) -> Result<MetricReport> {
    let n = rows.len();
    if labels.len() != n {
        return Err(Error::Malformed(format!("{} labels for {n} rows", labels.len())));
    }
    check_distinct_labels(labels)?;
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Malformed(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|v| !v.is_finite()) {
            return Err(Error::Malformed(format!("non-finite entry at ({i},{j})")));
        }
    }
    let d = |i: usize, j: usize| rows[i][j];
    let mut violations = Vec::new();
    for i in 0..n {
        if d(i, i) != 0.0 {
            violations.push(MetricViolation::Diagonal { i });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if d(i, j) != d(j, i) {
                violations.push(MetricViolation::Symmetry { i, j });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if d(i, j) <= 0.0 || d(j, i) <= 0.0 {
                violations.push(MetricViolation::Positivity { i, j });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in x + 1..n {
                if y == x || y == z {
                    continue;
                }
                let bound = d(x, y) + d(y, z);
                if d(x, z) > bound + bound.abs() * TRIANGLE_REL_TOL {
                    violations.push(MetricViolation::Triangle { x, y, z });
                }
            }
        }
    }
    Ok(MetricReport { violations })
}

/// Lexicographically least ordered triple `(x, y, z)` of distinct points with
/// `max(u(x,y), u(y,z)) < u(x,z)`, or `None` if the strong triangle
/// inequality holds everywhere.
pub fn ultrametric_check(m: &DistanceMatrix) -> Option<(usize, usize, usize)> {
    let n = m.n();
    for x in 0..n {
        for y in 0..n {
            if y == x {
                continue;
            }
            for z in 0..n {
                if z == x || z == y {
                    continue;
                }
                if !strong_triangle_holds(m, x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// `max(u(x,y), u(y,z)) >= u(x,z)`.
pub fn strong_triangle_holds(m: &DistanceMatrix, x: usize, y: usize, z: usize) -> bool {
    m.get(x, y).max(m.get(y, z)) >= m.get(x, z)
}

/// A distance matrix that satisfies the strong triangle inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct Ultrametric(DistanceMatrix);

impl Ultrametric {
    pub fn new(m: DistanceMatrix) -> Result<Self> {
        match ultrametric_check(&m) {
            None => Ok(Ultrametric(m)),
            Some((x, y, z)) => Err(Error::NotUltrametric(x, y, z)),
        }
    }

    pub fn into_matrix(self) -> DistanceMatrix {
        self.0
    }
}

impl Deref for Ultrametric {
    type Target = DistanceMatrix;

    fn deref(&self) -> &DistanceMatrix {
        &self.0
    }
}
