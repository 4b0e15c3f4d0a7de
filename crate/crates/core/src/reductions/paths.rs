//! Hamiltonian path and cycle reductions.

use super::embed_plus;
use crate::error::{Error, Result};
use crate::model::Element;
use crate::problems::{Digraph, Graph, Instance, Namer, Payload, ProblemId};

fn digraph(inst: &Instance) -> Result<&Digraph> {
    match &inst.payload {
        Payload::DiPath { graph, .. } | Payload::DiCycle { graph } => Ok(graph),
        _ => Err(Error::Internal(format!(
            "{} instance has no digraph payload",
            inst.kind
        ))),
    }
}

fn ugraph(inst: &Instance) -> Result<&Graph> {
    match &inst.payload {
        Payload::UPath { graph, .. } | Payload::UCycle { graph } => Ok(graph),
        _ => Err(Error::Internal(format!("{} instance has no graph payload", inst.kind))),
    }
}

/// v becomes (v_in, v, v_out) at 3v, 3v+1, 3v+2; arc (u,v) becomes {u_out, v_in}.
fn split(d: &Digraph) -> Graph {
    let mut namer = Namer::new(&d.vertices);
    let mut g = Graph::default();
    for v in &d.vertices {
        g.add_vertex(namer.fresh(format!("{v}_in")));
        g.add_vertex(v.clone());
        g.add_vertex(namer.fresh(format!("{v}_out")));
    }
    for v in 0..d.n() as u32 {
        g.add_edge(3 * v, 3 * v + 1);
        g.add_edge(3 * v + 1, 3 * v + 2);
    }
    for &(a, b) in &d.arcs {
        g.add_edge(3 * a + 2, 3 * b);
    }
    g
}

pub(crate) fn dhc_to_uhc(src: &Instance) -> Result<Instance> {
    Instance::new(
        ProblemId::UHC,
        Payload::UCycle {
            graph: split(digraph(src)?),
        },
    )
}

pub(crate) fn dhp_to_uhp(src: &Instance) -> Result<Instance> {
    let (s, t) = match &src.payload {
        Payload::DiPath { s, t, .. } => (*s, *t),
        _ => return Err(Error::Internal("DHP instance has no path payload".into())),
    };
    Instance::new(
        ProblemId::UHP,
        Payload::UPath {
            graph: split(digraph(src)?),
            s: 3 * s,
            t: 3 * t + 2,
        },
    )
}

pub(crate) fn embed_split(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    Ok(digraph(src)?
        .arcs
        .iter()
        .map(|&(a, b)| Element::edge(3 * a + 2, 3 * b))
        .collect())
}

/// Every internal edge lies on every Hamiltonian cycle or path.
pub(crate) fn lift_split(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let n = digraph(src)?.n() as u32;
    let internal: Vec<Element> = (0..n)
        .flat_map(|v| [Element::edge(3 * v, 3 * v + 1), Element::edge(3 * v + 1, 3 * v + 2)])
        .collect();
    embed_plus(embed_split, src, tgt, s, &internal)
}

/// Complete graph on `n` vertices, edges in lexicographic order, weight 0 where `zero` holds.
fn complete(vertices: Vec<String>, zero: impl Fn(u32, u32) -> bool) -> (Graph, Vec<u64>) {
    let n = vertices.len() as u32;
    let mut g = Graph {
        vertices,
        edges: Vec::new(),
    };
    let mut w = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            g.add_edge(a, b);
            w.push(if zero(a, b) { 0 } else { 1 });
        }
    }
    (g, w)
}

pub(crate) fn uhc_to_tsp(src: &Instance) -> Result<Instance> {
    let g = ugraph(src)?;
    let m = g.matrix();
    let (graph, weights) = complete(g.vertices.clone(), |a, b| m[a as usize][b as usize]);
    Instance::new(ProblemId::TSP, Payload::Tsp { graph, weights, k: 0 })
}

pub(crate) fn embed_edges_same(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    Ok(ugraph(src)?.edges.iter().map(|&(a, b)| Element::edge(a, b)).collect())
}

pub(crate) fn lift_embed_edges(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    embed_plus(embed_edges_same, src, tgt, s, &[])
}

fn endpoints(src: &Instance) -> Result<(u32, u32)> {
    match &src.payload {
        Payload::UPath { s, t, .. } => Ok((*s, *t)),
        _ => Err(Error::Internal("UHP instance has no path payload".into())),
    }
}

fn with_new_vertex(g: &Graph) -> Vec<String> {
    let mut namer = Namer::new(&g.vertices);
    let mut v = g.vertices.clone();
    v.push(namer.fresh("v_new"));
    v
}

pub(crate) fn uhp_to_uhc(src: &Instance) -> Result<Instance> {
    let g = ugraph(src)?;
    let (s, t) = endpoints(src)?;
    let mut graph = Graph {
        vertices: with_new_vertex(g),
        edges: g.edges.clone(),
    };
    let x = g.n() as u32;
    graph.add_edge(s, x);
    graph.add_edge(t, x);
    Instance::new(ProblemId::UHC, Payload::UCycle { graph })
}

pub(crate) fn uhp_to_tsp(src: &Instance) -> Result<Instance> {
    let g = ugraph(src)?;
    let (s, t) = endpoints(src)?;
    let m = g.matrix();
    let x = g.n() as u32;
    let (graph, weights) = complete(with_new_vertex(g), |a, b| {
        if b == x {
            a == s || a == t
        } else {
            m[a as usize][b as usize]
        }
    });
    Instance::new(ProblemId::TSP, Payload::Tsp { graph, weights, k: 0 })
}

/// The two edges at v_new close the path into a cycle.
pub(crate) fn lift_with_new_vertex(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let x = ugraph(src)?.n() as u32;
    let (a, b) = endpoints(src)?;
    embed_plus(
        embed_edges_same,
        src,
        tgt,
        s,
        &[Element::edge(a, x), Element::edge(b, x)],
    )
}
