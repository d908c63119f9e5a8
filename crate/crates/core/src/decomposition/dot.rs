use std::fmt::Write;

use super::pre::PreDecomposition;
use crate::connectivity::SetFunction;
use crate::subset::Subset;

fn names(x: Subset, labels: &[String]) -> String {
    x.iter().map(|i| labels[i].as_str()).collect::<Vec<_>>().join(",")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering. Leaves show their atoms; every edge `u -- v` with
/// `u < v` shows `gamma(u,v)` and, when `f` is given, its value.
pub fn to_dot(pd: &PreDecomposition, labels: &[String], f: Option<&dyn SetFunction>) -> String {
    let tree = pd.tree();
    let mut out = String::from("graph decomposition {\n");
    for v in 0..tree.vertex_count() {
        if tree.is_leaf(v) {
            let atom = names(pd.atom(v), labels);
            writeln!(out, "  {v} [shape=box, label=\"{}\"];", escape(&format!("{{{atom}}}"))).unwrap();
        } else {
            writeln!(out, "  {v} [shape=point, label=\"\"];").unwrap();
        }
    }
    for (u, v) in tree.edges() {
        let x = pd.gamma(u, v);
        let mut label = format!("γ={{{}}}", names(x, labels));
        if let Some(f) = f {
            write!(label, " κ={}", f.eval(x)).unwrap();
        }
        writeln!(out, "  {u} -- {v} [label=\"{}\"];", escape(&label)).unwrap();
    }
    out.push_str("}\n");
    out
}
