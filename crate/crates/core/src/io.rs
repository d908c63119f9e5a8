//! Text formats: points and matrix CSV, dendogram, catalog, tabulated
//! function, pre-decomposition and graph JSON, and Newick export.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::clustering::{Dendogram, Partition};
use crate::connectivity::{Tabulated, WeightedGraph};
use crate::decomposition::{PreDecomposition, TernaryTree};
use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, PointCloud};
use crate::subset::Subset;
use crate::tangle::TangleCatalog;

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn parse_real(field: &str, line: usize) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| malformed(format!("line {line}: `{}` is not a number", field.trim())))
}

fn csv_records(text: &str) -> Result<Vec<Vec<String>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| malformed(format!("csv: {e}")))?;
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        out.push(rec.iter().map(str::to_string).collect());
    }
    Ok(out)
}

/// `label,x1,..,xd` per line; a first line whose coordinates are not numbers
/// is taken as a header.
pub fn read_points_csv(text: &str) -> Result<PointCloud> {
    let mut records = csv_records(text)?;
    if records
        .first()
        .is_some_and(|r| r.len() > 1 && r[1].parse::<f64>().is_err())
    {
        records.remove(0);
    }
    let mut labels = Vec::new();
    let mut coords = Vec::new();
    for (i, r) in records.iter().enumerate() {
        if r.len() < 2 {
            return Err(malformed(format!("line {}: expected a label and coordinates", i + 1)));
        }
        labels.push(r[0].clone());
        coords.push(r[1..].iter().map(|f| parse_real(f, i + 1)).collect::<Result<Vec<_>>>()?);
    }
    PointCloud::new(labels, coords)
}

/// Header `label,<labels>` followed by one `label,<n reals>` row per point.
/// Returns labels and rows without checking the metric axioms.
pub fn read_matrix_csv_raw(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let records = csv_records(text)?;
    let (header, rows) = records.split_first().ok_or_else(|| malformed("empty matrix file"))?;
    let labels: Vec<String> = header[1..].to_vec();
    if rows.len() != labels.len() {
        return Err(malformed(format!("{} header labels but {} rows", labels.len(), rows.len())));
    }
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if r[0] != labels[i] {
            return Err(malformed(format!("row {} is labelled `{}`, header says `{}`", i + 1, r[0], labels[i])));
        }
        if r.len() != labels.len() + 1 {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                actual: r.len() - 1,
            });
        }
        out.push(r[1..].iter().map(|f| parse_real(f, i + 2)).collect::<Result<Vec<_>>>()?);
    }
    Ok((labels, out))
}

pub fn read_matrix_csv(text: &str) -> Result<DistanceMatrix> {
    let (labels, rows) = read_matrix_csv_raw(text)?;
    DistanceMatrix::new(labels, rows)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) || s.starts_with('#') || s != s.trim() {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Values are written with the shortest representation that reads back exactly.
pub fn write_matrix_csv(m: &DistanceMatrix) -> String {
    let mut out = String::from("label");
    for l in m.labels() {
        write!(out, ",{}", csv_field(l)).unwrap();
    }
    out.push('\n');
    for i in 0..m.n() {
        out.push_str(&csv_field(m.label(i)));
        for j in 0..m.n() {
            write!(out, ",{}", m.get(i, j)).unwrap();
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
struct DendogramJson {
    labels: Vec<String>,
    steps: Vec<StepJson>,
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    r: f64,
    blocks: Vec<Vec<String>>,
}

fn names(x: Subset, labels: &[String]) -> Vec<String> {
    x.iter().map(|i| labels[i].clone()).collect()
}

fn label_index(labels: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(malformed(format!("duplicate label `{l}`")));
        }
    }
    Ok(index)
}

fn subset_of(names: &[String], index: &HashMap<&str, usize>) -> Result<Subset> {
    names
        .iter()
        .map(|l| {
            index
                .get(l.as_str())
                .copied()
                .ok_or_else(|| malformed(format!("unknown label `{l}`")))
        })
        .collect()
}

fn to_pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn write_dendogram_json(d: &Dendogram) -> String {
    let doc = DendogramJson {
        labels: d.labels().to_vec(),
        steps: d
            .steps()
            .map(|(r, p)| StepJson {
                r,
                blocks: p.blocks().iter().map(|&b| names(b, d.labels())).collect(),
            })
            .collect(),
    };
    to_pretty(&doc)
}

/// Parses a dendogram; the dendogram conditions are not checked here.
pub fn read_dendogram_json(text: &str) -> Result<Dendogram> {
    let doc: DendogramJson = serde_json::from_str(text).map_err(|e| malformed(format!("dendogram json: {e}")))?;
    let index = label_index(&doc.labels)?;
    let n = doc.labels.len();
    let mut radii = Vec::new();
    let mut partitions = Vec::new();
    for s in &doc.steps {
        let blocks = s
            .blocks
            .iter()
            .map(|b| subset_of(b, &index))
            .collect::<Result<Vec<_>>>()?;
        radii.push(s.r);
        partitions.push(Partition::new(n, blocks)?);
    }
    Dendogram::new(doc.labels, radii, partitions)
}

fn real_or_inf(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!("inf")
    }
}

/// Catalog entries with their distance interval `[r_lo, r_hi)` and the
/// matching order interval `(k_lo, k_hi]`; an open upper end is `"inf"`.
pub fn write_catalog_json(c: &TangleCatalog, labels: &[String]) -> String {
    let entries: Vec<Value> = c
        .entries
        .iter()
        .map(|e| {
            json!({
                "core": names(e.core, labels),
                "r_lo": e.r_lo,
                "r_hi": real_or_inf(e.r_hi),
                "k_hi": e.k_hi(),
                "k_lo": e.k_lo(),
            })
        })
        .collect();
    to_pretty(&json!({ "labels": labels, "entries": entries }))
}

#[derive(Serialize, Deserialize)]
struct TabulatedJson {
    n: usize,
    values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

/// `{"n", "values", "labels"?}` with `values` indexed by bit pattern.
pub fn read_tabulated_json(text: &str) -> Result<(Tabulated, Vec<String>)> {
    let doc: TabulatedJson = serde_json::from_str(text).map_err(|e| malformed(format!("tabulated json: {e}")))?;
    let labels = doc.labels.unwrap_or_else(|| (0..doc.n).map(|i| i.to_string()).collect());
    if labels.len() != doc.n {
        return Err(Error::DimensionMismatch {
            expected: doc.n,
            actual: labels.len(),
        });
    }
    label_index(&labels)?;
    Ok((Tabulated::new(doc.n, doc.values)?, labels))
}

pub fn write_tabulated_json(t: &Tabulated, labels: &[String]) -> String {
    to_pretty(&TabulatedJson {
        n: labels.len(),
        values: t.values().to_vec(),
        labels: Some(labels.to_vec()),
    })
}

#[derive(Serialize, Deserialize)]
struct PreDecompositionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    vertices: Vec<Value>,
    edges: Vec<(Value, Value)>,
    gamma: BTreeMap<String, Vec<String>>,
}

fn id_string(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(malformed(format!("vertex id {other} is neither a string nor a number"))),
    }
}

/// A pre-decomposition as read from JSON, with the names it was given.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedPreDecomposition {
    pub pre: PreDecomposition,
    pub labels: Vec<String>,
    pub vertex_ids: Vec<String>,
}

/// Reads `{"vertices", "edges", "gamma": {"s->t": [labels]}}`. A side given
/// in one direction only gets its complement on the other. Point labels come
/// from the optional `"labels"` field or from `labels`.
pub fn read_pre_decomposition_json(text: &str, labels: Option<&[String]>) -> Result<NamedPreDecomposition> {
    let doc: PreDecompositionJson =
        serde_json::from_str(text).map_err(|e| malformed(format!("pre-decomposition json: {e}")))?;
    let labels: Vec<String> = match (doc.labels, labels) {
        (Some(own), Some(given)) if own != given => {
            return Err(malformed("labels in the file differ from the data labels"))
        }
        (Some(own), _) => own,
        (None, Some(given)) => given.to_vec(),
        (None, None) => return Err(malformed("pre-decomposition needs point labels")),
    };
    let index = label_index(&labels)?;
    let n = labels.len();
    let ids = doc.vertices.iter().map(id_string).collect::<Result<Vec<_>>>()?;
    let vertex = label_index(&ids)?;
    let lookup = |s: &str| {
        vertex
            .get(s.trim())
            .copied()
            .ok_or_else(|| malformed(format!("unknown vertex `{s}`")))
    };
    let edges = doc
        .edges
        .iter()
        .map(|(a, b)| Ok((lookup(&id_string(a)?)?, lookup(&id_string(b)?)?)))
        .collect::<Result<Vec<_>>>()?;
    let tree = TernaryTree::from_edges(ids.len(), &edges)?;
    let mut given = BTreeMap::new();
    for (key, members) in &doc.gamma {
        let (s, t) = key
            .split_once("->")
            .ok_or_else(|| malformed(format!("gamma key `{key}` is not of the form s->t")))?;
        let (s, t) = (lookup(s)?, lookup(t)?);
        if !tree.neighbors(s).contains(&t) {
            return Err(malformed(format!("gamma key `{key}` is not an edge")));
        }
        given.insert((s, t), subset_of(members, &index)?);
    }
    let mut gamma = given.clone();
    for (&(s, t), &x) in &given {
        gamma.entry((t, s)).or_insert_with(|| x.complement(n));
    }
    Ok(NamedPreDecomposition {
        pre: PreDecomposition::new(n, tree, gamma)?,
        labels,
        vertex_ids: ids,
    })
}

/// Writes one orientation `u->v` (`u < v`) per edge.
pub fn write_pre_decomposition_json(pd: &PreDecomposition, labels: &[String]) -> String {
    let tree = pd.tree();
    let edges = tree.edges();
    let gamma: BTreeMap<String, Vec<String>> = edges
        .iter()
        .map(|&(u, v)| (format!("{u}->{v}"), names(pd.gamma(u, v), labels)))
        .collect();
    to_pretty(&json!({
        "labels": labels,
        "vertices": (0..tree.vertex_count()).collect::<Vec<_>>(),
        "edges": edges,
        "gamma": gamma,
    }))
}

#[derive(Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    #[serde(default)]
    weights: Option<Vec<f64>>,
}

/// `{"vertices": [..], "edges": [[u, v], ..], "weights"?: [..]}`.
pub fn read_graph_json(text: &str) -> Result<WeightedGraph> {
    let doc: GraphJson = serde_json::from_str(text).map_err(|e| malformed(format!("graph json: {e}")))?;
    let index = label_index(&doc.vertices)?;
    let edges = doc
        .edges
        .iter()
        .map(|(a, b)| {
            let get = |l: &String| {
                index
                    .get(l.as_str())
                    .copied()
                    .ok_or_else(|| malformed(format!("unknown vertex `{l}`")))
            };
            Ok((get(a)?, get(b)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let weights = doc.weights.unwrap_or_else(|| vec![1.0; doc.vertices.len()]);
    WeightedGraph::new(doc.vertices, edges, weights)
}

fn newick_label(s: &str) -> String {
    if s.is_empty() || s.contains(|c: char| c.is_whitespace() || "()[]:;,'".contains(c)) {
        format!("'{}'", s.replace('\'', "''"))
    } else {
        s.to_string()
    }
}

/// Newick rendering of the merge tree. Internal nodes carry `[r=<radius>]`
/// and every branch length is the height difference to its parent.
pub fn write_newick(d: &Dendogram) -> String {
    let steps: Vec<(f64, &Partition)> = d.steps().collect();
    let labels = d.labels();
    if labels.is_empty() {
        return ";\n".to_string();
    }
    // The node for block `b` formed at step `i`.
    fn render(b: Subset, i: usize, parent_r: Option<f64>, steps: &[(f64, &Partition)], labels: &[String], out: &mut String) {
        let r = steps[i].0;
        if b.len() == 1 {
            out.push_str(&newick_label(&labels[b.first().unwrap()]));
        } else {
            out.push('(');
            let prev = steps[i - 1].1;
            let children: Vec<Subset> = prev.blocks().iter().copied().filter(|c| c.is_subset_of(b)).collect();
            for (k, &c) in children.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                let born = (0..i).rev().find(|&j| j == 0 || !steps[j - 1].1.blocks().contains(&c)).unwrap();
                render(c, born, Some(r), steps, labels, out);
            }
            write!(out, ")[r={r}]").unwrap();
        }
        if let Some(p) = parent_r {
            write!(out, ":{}", p - r).unwrap();
        }
    }
    let last = steps.len() - 1;
    let root = steps[last].1.blocks()[0];
    let born = (0..=last).rev().find(|&j| j == 0 || !steps[j - 1].1.blocks().contains(&root)).unwrap();
    let mut out = String::new();
    render(root, born, None, &steps, labels, &mut out);
    out.push_str(";\n");
    out
}
