//! Structure graphs of modules: one node per basis element, one edge per
//! arrow action landing on a basis element.

use std::collections::BTreeSet;

use noloop_core::module::RightModule;
use noloop_core::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub arrow: String,
    pub coefficient: Scalar,
    /// Set when the action has several terms; each term gets its own edge.
    pub partial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureGraph {
    pub name: String,
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
}

impl StructureGraph {
    /// Nodes follow the module basis order and edges are sorted, so the
    /// output depends only on the module.
    pub fn of_module(name: &str, m: &RightModule) -> Self {
        let a = m.algebra();
        let q = a.quiver();
        let mut edges = Vec::new();
        for from in 0..m.dim() {
            let u = m.unit(from);
            for (i, arrow) in q.arrows().iter().enumerate() {
                let image = m.act(&u, i);
                let terms: Vec<(usize, &Scalar)> = image.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                let partial = terms.len() > 1;
                for (to, c) in terms {
                    edges.push(Edge { from, to, arrow: arrow.name.clone(), coefficient: c.clone(), partial });
                }
            }
        }
        edges.sort_by(|x, y| (x.from, x.to, &x.arrow).cmp(&(y.from, y.to, &y.arrow)));
        StructureGraph { name: name.to_string(), nodes: m.labels().to_vec(), edges }
    }

    /// `(source label, target label, arrow)` triples, for comparisons that
    /// ignore node numbering and scalars.
    pub fn labelled_edges(&self) -> BTreeSet<(String, String, String)> {
        self.edges
            .iter()
            .map(|e| (self.nodes[e.from].clone(), self.nodes[e.to].clone(), e.arrow.clone()))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph \"{}\" {{\n  rankdir=TB;\n  node [shape=plaintext];\n", escape(&self.name));
        for (i, n) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", escape(n)));
        }
        for e in &self.edges {
            let label = if e.coefficient.is_one() {
                e.arrow.clone()
            } else {
                format!("{} ({})", e.arrow, e.coefficient)
            };
            let style = if e.partial { ", style=dashed" } else { "" };
            out.push_str(&format!("  n{} -> n{} [label=\"{}\"{style}];\n", e.from, e.to, escape(&label)));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
