//! Graphviz export of a skeleton.
//!
//! The root is drawn filled. Query points inside an edge become small
//! auxiliary nodes that split the drawn edge; the stored skeleton is not
//! touched. Query points at vertices are marked on the vertex itself.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::rational::{format_rational, Q};
use crate::tree::{EdgeId, Point, TreeSkeleton};

pub fn to_dot(skeleton: &TreeSkeleton, queries: &[Point]) -> String {
    let mut marked = vec![false; skeleton.vertex_count()];
    let mut on_edge: BTreeMap<EdgeId, Vec<Q>> = BTreeMap::new();
    for q in queries {
        match *q {
            Point::Vertex(v) => marked[v.index()] = true,
            Point::Edge { edge, offset } => on_edge.entry(edge).or_default().push(offset),
        }
    }

    let mut out = String::from("graph tree {\n  node [shape=circle];\n");
    for v in skeleton.vertices() {
        let mut attrs = Vec::new();
        if v == skeleton.root() {
            attrs.push("style=filled, fillcolor=gold, penwidth=2".to_string());
        }
        if marked[v.index()] {
            attrs.push("color=red, xlabel=\"query\"".to_string());
        }
        let _ = if attrs.is_empty() {
            writeln!(out, "  \"{}\";", skeleton.name(v))
        } else {
            writeln!(out, "  \"{}\" [{}];", skeleton.name(v), attrs.join(", "))
        };
    }
    for id in skeleton.edge_ids() {
        let e = skeleton.edge(id);
        let mut offsets = on_edge.remove(&id).unwrap_or_default();
        offsets.sort();
        offsets.dedup();
        let mut prev_name = format!("\"{}\"", skeleton.name(e.lower));
        let mut prev_offset = Q::from_integer(0);
        for offset in offsets {
            let p = Point::Edge { edge: id, offset };
            let name = format!("\"{}\"", skeleton.display_point(&p));
            let _ = writeln!(
                out,
                "  {name} [shape=point, width=0.08, color=red, xlabel={name}];"
            );
            let _ = writeln!(
                out,
                "  {prev_name} -- {name} [label=\"{}\"];",
                format_rational(&(offset - prev_offset))
            );
            prev_name = name;
            prev_offset = offset;
        }
        let _ = writeln!(
            out,
            "  {prev_name} -- \"{}\" [label=\"{}\"];",
            skeleton.name(e.upper),
            format_rational(&(e.length - prev_offset))
        );
    }
    out.push_str("}\n");
    out
}
