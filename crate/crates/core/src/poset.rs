//! Downsets of the covering order on isomorphism classes of codes.
//!
//! Starting from reduced seed codes, [`downset`] applies a covering map at
//! every neuron of each class representative, canonicalizes the images, and
//! keeps one node per canonical label. Every edge carries the covering
//! neuron and whether that step is a matrix factorization; the trunk count
//! drops by exactly one along each edge, so the walk terminates on its own.
//! [`export_dot`] renders the graph with one rank per trunk count, and the
//! graph serializes to the JSON shape the command-line tool emits.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::io::Write;
use std::path::Path;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::code::Code;
use crate::covering;
use crate::error::{Error, Result};

/// One isomorphism class in a downset, annotated with its bigrading.
#[derive(Clone)]
pub struct PosetNode {
    /// Number of distinct nonempty trunks.
    pub t: usize,
    /// Trunk count minus word count.
    pub d: usize,
    /// Width of the reduced representative.
    pub lambda: usize,
    /// Canonical representative of the class, already reduced.
    pub representative: Code,
}

/// One covering relation between two classes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PosetEdge {
    pub from: String,
    pub to: String,
    /// Covering neuron, in the parent representative's frame.
    pub neuron: usize,
    /// Whether this covering step is a matrix factorization.
    pub bmf: bool,
}

/// A downward-closed piece of the covering order.
pub struct PosetGraph {
    pub nodes: BTreeMap<String, PosetNode>,
    pub edges: BTreeSet<PosetEdge>,
    /// Set when the node limit cut the walk short.
    pub truncated: bool,
    /// Largest width change `lambda(child) - lambda(parent)` over all edges.
    pub max_width_increase: Option<isize>,
}

#[derive(Serialize)]
struct NodeRecord<'a> {
    label: &'a str,
    t: usize,
    d: usize,
    lambda: usize,
}

impl Serialize for PosetGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let nodes: Vec<NodeRecord> = self
            .nodes
            .iter()
            .map(|(label, node)| NodeRecord {
                label,
                t: node.t,
                d: node.d,
                lambda: node.lambda,
            })
            .collect();
        let edges: Vec<&PosetEdge> = self.edges.iter().collect();
        let mut state = serializer.serialize_struct("PosetGraph", 4)?;
        state.serialize_field("nodes", &nodes)?;
        state.serialize_field("edges", &edges)?;
        state.serialize_field("truncated", &self.truncated)?;
        state.serialize_field("max_width_increase", &self.max_width_increase)?;
        state.end()
    }
}

fn class_node(code: &Code) -> (String, PosetNode) {
    let label = code.label_string();
    let representative = Code::from_matrix(&code.canonical_label());
    debug_assert!(representative.is_reduced());
    let t = representative.trunk_count();
    let d = covering::defect(&representative);
    let lambda = representative.n();
    (
        label,
        PosetNode {
            t,
            d,
            lambda,
            representative,
        },
    )
}

/// Walks the covering order downward from `seeds`, one node per isomorphism
/// class, stopping new-node creation at `limit` (existing nodes still
/// collect their edges; the result is flagged truncated).
pub fn downset(seeds: &[Code], limit: usize) -> Result<PosetGraph> {
    for seed in seeds {
        if !seed.is_reduced() {
            return Err(Error::domain(
                "downsets are generated from reduced seeds; reduce the code first".to_string(),
            ));
        }
    }
    let mut nodes: BTreeMap<String, PosetNode> = BTreeMap::new();
    let mut edges: BTreeSet<PosetEdge> = BTreeSet::new();
    let mut truncated = false;
    let mut queue: VecDeque<String> = VecDeque::new();

    for seed in seeds {
        let (label, node) = class_node(seed);
        if nodes.len() >= limit && !nodes.contains_key(&label) {
            truncated = true;
            continue;
        }
        if nodes.insert(label.clone(), node).is_none() {
            queue.push_back(label);
        }
    }

    while let Some(label) = queue.pop_front() {
        let parent = nodes[&label].representative.clone();
        for i in 1..=parent.n() {
            let step = covering::covering_map(&parent, i)?;
            let (child_label, child_node) = class_node(&step.image);
            if !nodes.contains_key(&child_label) {
                if nodes.len() >= limit {
                    truncated = true;
                    continue;
                }
                nodes.insert(child_label.clone(), child_node);
                queue.push_back(child_label.clone());
            }
            edges.insert(PosetEdge {
                from: label.clone(),
                to: child_label,
                neuron: i,
                bmf: step.is_bmf_step,
            });
        }
    }

    let max_width_increase = edges
        .iter()
        .map(|e| nodes[&e.to].lambda as isize - nodes[&e.from].lambda as isize)
        .max();
    Ok(PosetGraph {
        nodes,
        edges,
        truncated,
        max_width_increase,
    })
}

/// DOT text for the graph: one box per class labeled with its bigrading,
/// classes of equal trunk count on the same rank, solid edges for
/// factorization steps and dashed edges otherwise.
pub fn dot_string(graph: &PosetGraph) -> String {
    let mut out = String::new();
    out.push_str("digraph covering_downset {\n");
    out.push_str("  rankdir=TB;\n");
    out.push_str("  node [shape=box, fontsize=10];\n");
    for (label, node) in &graph.nodes {
        out.push_str(&format!(
            "  \"{label}\" [label=\"{label}\\nt={}, d={}, \u{3bb}={}\"];\n",
            node.t, node.d, node.lambda
        ));
    }
    let mut ranks: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for (label, node) in &graph.nodes {
        ranks.entry(node.t).or_default().push(label);
    }
    for (_, members) in ranks.iter().rev() {
        out.push_str("  { rank=same;");
        for label in members {
            out.push_str(&format!(" \"{label}\";"));
        }
        out.push_str(" }\n");
    }
    for edge in &graph.edges {
        let style = if edge.bmf { "solid" } else { "dashed" };
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [style={style}, label=\"{}\"];\n",
            edge.from, edge.to, edge.neuron
        ));
    }
    out.push_str("}\n");
    out
}

/// Writes [`dot_string`] to `path`.
pub fn export_dot(graph: &PosetGraph, path: &Path) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(dot_string(graph).as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{code_on, enumerate_reduced_codes};

    #[test]
    fn point_seed_is_a_single_node() {
        let seed = code_on(0, &[&[]]);
        let graph = downset(&[seed], 100).unwrap();
        assert_eq!(graph.nodes.len(), 1);
        assert!(graph.edges.is_empty());
        assert!(!graph.truncated);
        assert_eq!(graph.max_width_increase, None);
        let dot = dot_string(&graph);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches(" -> ").count(), 0);
    }

    #[test]
    fn meet_closed_seed_has_no_factorization_edges() {
        let cube = code_on(2, &[&[], &[1], &[2], &[1, 2]]);
        let graph = downset(&[cube.clone()], 100).unwrap();
        let cube_label = cube.label_string();
        let out_edges: Vec<&PosetEdge> =
            graph.edges.iter().filter(|e| e.from == cube_label).collect();
        assert_eq!(out_edges.len(), 2, "one edge per neuron, same child class");
        assert_eq!(out_edges[0].to, out_edges[1].to);
        assert!(out_edges.iter().all(|e| !e.bmf));
    }

    #[test]
    fn edges_step_down_one_trunk_at_a_time() {
        let seeds = enumerate_reduced_codes(2).unwrap();
        let graph = downset(&seeds, 10_000).unwrap();
        assert!(!graph.truncated);
        for edge in &graph.edges {
            let parent = &graph.nodes[&edge.from];
            let child = &graph.nodes[&edge.to];
            assert_eq!(child.t + 1, parent.t);
            assert!(parent.d >= child.d);
            let drop = parent.d - child.d;
            assert!(drop <= 1);
            if edge.bmf {
                assert_eq!(drop, 1, "a factorization step always drops the defect");
            }
        }
    }

    #[test]
    fn node_limit_truncates_and_flags() {
        let seeds = enumerate_reduced_codes(2).unwrap();
        let full = downset(&seeds, 10_000).unwrap();
        assert!(full.nodes.len() > 2);
        let cut = downset(&seeds, 2).unwrap();
        assert!(cut.truncated);
        assert_eq!(cut.nodes.len(), 2);
    }

    #[test]
    fn dot_lists_every_node_once() {
        let seeds = enumerate_reduced_codes(2).unwrap();
        let graph = downset(&seeds, 10_000).unwrap();
        let dot = dot_string(&graph);
        assert_eq!(dot.matches(" [label=").count(), graph.nodes.len());
        assert_eq!(dot.matches(" -> ").count(), graph.edges.len());
        let path = std::env::temp_dir().join(format!("downset-{}.dot", std::process::id()));
        export_dot(&graph, &path).unwrap();
        let read_back = std::fs::read_to_string(&path).unwrap();
        assert_eq!(read_back, dot);
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn unreduced_seeds_are_rejected() {
        let seed = code_on(3, &[&[], &[1], &[2], &[1, 2, 3]]);
        assert!(downset(&[seed], 100).is_err());
    }
}
