//! Reductions between the graph cardinality problems and their set, facility
//! and directed relatives.

use super::embed_plus;
use crate::error::{Error, Result};
use crate::model::Element;
use crate::problems::{Digraph, FacilityData, Graph, Instance, Namer, Payload, ProblemId, SetSystem};

fn graph_k(inst: &Instance) -> Result<(&Graph, u64)> {
    match &inst.payload {
        Payload::Graph { graph, k } => Ok((graph, *k)),
        _ => Err(Error::Internal(format!("{} instance has no graph payload", inst.kind))),
    }
}

/// Rejects k > |V|, which has no solutions and would make gadget sizes depend on k's value.
fn bounded_k(g: &Graph, k: u64) -> Result<usize> {
    if k > g.n() as u64 {
        return Err(Error::UnsupportedShape(format!(
            "k = {k} exceeds the {} vertices",
            g.n()
        )));
    }
    Ok(k as usize)
}

fn edge_name(g: &Graph, (a, b): (u32, u32)) -> String {
    format!("{{{},{}}}", g.vertices[a as usize], g.vertices[b as usize])
}

fn graph_instance(kind: ProblemId, graph: Graph, k: u64) -> Result<Instance> {
    Instance::new(kind, Payload::Graph { graph, k })
}

pub(crate) fn embed_vertices_same(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    Ok((0..graph_k(src)?.0.n() as u32).map(Element::Vertex).collect())
}

pub(crate) fn lift_vertices_same(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    embed_plus(embed_vertices_same, src, tgt, s, &[])
}

// ---- MVC to MDS and the threshold demonstration ----

/// Hub with `pendants` leaves joined to every isolated vertex, plus `per_edge`
/// common neighbours for each edge.
fn domination_gadget(g: &Graph, pendants: usize, per_edge: usize, hub: bool) -> Graph {
    let mut namer = Namer::new(&g.vertices);
    let mut out = Graph {
        vertices: g.vertices.clone(),
        edges: g.edges.clone(),
    };
    if hub {
        let adj = g.adjacency();
        let h = out.add_vertex(namer.fresh("v_iso"));
        for (v, nb) in adj.iter().enumerate() {
            if nb.is_empty() {
                out.add_edge(v as u32, h);
            }
        }
        for i in 1..=pendants {
            let p = out.add_vertex(namer.fresh(format!("p{i}")));
            out.add_edge(h, p);
        }
    }
    for &(a, b) in &g.edges {
        for i in 1..=per_edge {
            let name = format!("{}{}_{i}", g.vertices[a as usize], g.vertices[b as usize]);
            let w = out.add_vertex(namer.fresh(name));
            out.add_edge(a, w);
            out.add_edge(b, w);
        }
    }
    out
}

pub(crate) fn mvc_to_mds(src: &Instance) -> Result<Instance> {
    let (g, k) = graph_k(src)?;
    let kk = bounded_k(g, k)?;
    graph_instance(ProblemId::MDS, domination_gadget(g, kk + 2, g.n() + 1, true), k + 1)
}

/// The hub is the first vertex after the source ones.
pub(crate) fn lift_mvc_to_mds(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let hub = Element::Vertex(graph_k(src)?.0.n() as u32);
    embed_plus(embed_vertices_same, src, tgt, s, &[hub])
}

/// Threshold-semantics variant with k+1 subdivisions and no optimality assumption.
pub(crate) fn vc_to_ds_demo(src: &Instance) -> Result<Instance> {
    let (g, k) = graph_k(src)?;
    let kk = bounded_k(g, k)?;
    let isolated = g.adjacency().iter().any(|nb| nb.is_empty());
    let gadget = domination_gadget(g, kk + 2, kk + 1, isolated);
    graph_instance(ProblemId::DS, gadget, if isolated { k + 1 } else { k })
}

// ---- MVC to set, facility and directed problems ----

pub(crate) fn mvc_to_sc(src: &Instance) -> Result<Instance> {
    let (g, k) = graph_k(src)?;
    let adj_edges: Vec<Vec<u32>> = (0..g.n() as u32)
        .map(|v| {
            g.edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == v || b == v)
                .map(|(i, _)| i as u32)
                .collect()
        })
        .collect();
    let system = SetSystem {
        elements: g.edges.iter().map(|&e| edge_name(g, e)).collect(),
        sets: adj_edges,
    };
    Instance::new(ProblemId::SC, Payload::Sets { system, k, exact: true })
}

pub(crate) fn embed_vertex_to_set(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    Ok((0..graph_k(src)?.0.n() as u32).map(Element::SetIdx).collect())
}

pub(crate) fn lift_vertex_to_set(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    embed_plus(embed_vertex_to_set, src, tgt, s, &[])
}

pub(crate) fn mvc_to_hs(src: &Instance) -> Result<Instance> {
    let (g, k) = graph_k(src)?;
    let system = SetSystem {
        elements: g.vertices.clone(),
        sets: g.edges.iter().map(|&(a, b)| vec![a, b]).collect(),
    };
    Instance::new(ProblemId::HS, Payload::Sets { system, k, exact: true })
}

pub(crate) fn embed_vertex_to_obj(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    Ok((0..graph_k(src)?.0.n() as u32).map(Element::Obj).collect())
}

pub(crate) fn lift_vertex_to_obj(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    embed_plus(embed_vertex_to_obj, src, tgt, s, &[])
}

pub(crate) fn mvc_to_fvs(src: &Instance) -> Result<Instance> {
    let (g, k) = graph_k(src)?;
    let mut d = Digraph {
        vertices: g.vertices.clone(),
        arcs: Vec::new(),
    };
    for &(a, b) in &g.edges {
        d.add_arc(a, b);
        d.add_arc(b, a);
    }
    Instance::new(ProblemId::FVS, Payload::Digraph { graph: d, k })
}

pub(crate) fn mvc_to_fas(src: &Instance) -> Result<Instance> {
    let (g, k) = graph_k(src)?;
    let mut namer = Namer::default();
    let mut d = Digraph::default();
    for v in &g.vertices {
        let v0 = d.add_vertex(namer.fresh(format!("{v}_0")));
        let v1 = d.add_vertex(namer.fresh(format!("{v}_1")));
        d.add_arc(v0, v1);
    }
    let paths = g.n() + 1;
    for &(u, v) in &g.edges {
        let (nu, nv) = (&g.vertices[u as usize], &g.vertices[v as usize]);
        for (from, to, label) in [(u, v, format!("{nu}{nv}")), (v, u, format!("{nv}{nu}"))] {
            for i in 1..=paths {
                let w = d.add_vertex(namer.fresh(format!("{label}_{i}")));
                d.add_arc(2 * from + 1, w);
                d.add_arc(w, 2 * to);
            }
        }
    }
    Instance::new(ProblemId::FAS, Payload::Digraph { graph: d, k })
}

pub(crate) fn embed_fas(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    Ok((0..graph_k(src)?.0.n() as u32)
        .map(|v| Element::Arc(2 * v, 2 * v + 1))
        .collect())
}

pub(crate) fn lift_fas(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    embed_plus(embed_fas, src, tgt, s, &[])
}

/// Clients are edges; serving from an endpoint is free, anything else costs |V|+1.
fn facility_data(g: &Graph, open_cost: bool) -> FacilityData {
    let far = g.n() as u64 + 1;
    FacilityData {
        facilities: g.vertices.clone(),
        clients: g.edges.iter().map(|&e| edge_name(g, e)).collect(),
        open_cost: if open_cost { vec![1; g.n()] } else { Vec::new() },
        service: g
            .edges
            .iter()
            .map(|&(a, b)| {
                (0..g.n() as u32)
                    .map(|f| if f == a || f == b { 0 } else { far })
                    .collect()
            })
            .collect(),
    }
}

pub(crate) fn mvc_to_ufl(src: &Instance) -> Result<Instance> {
    let (g, k) = graph_k(src)?;
    Instance::new(
        ProblemId::UFL,
        Payload::Facility {
            data: facility_data(g, true),
            p: None,
            k,
        },
    )
}

pub(crate) fn mvc_to_pcen(src: &Instance) -> Result<Instance> {
    let (g, k) = graph_k(src)?;
    Instance::new(
        ProblemId::PCEN,
        Payload::Facility {
            data: facility_data(g, false),
            p: Some(k),
            k: 0,
        },
    )
}

pub(crate) fn mvc_to_pmed(src: &Instance) -> Result<Instance> {
    let (g, k) = graph_k(src)?;
    Instance::new(
        ProblemId::PMED,
        Payload::Facility {
            data: facility_data(g, false),
            p: Some(k),
            k: 0,
        },
    )
}

pub(crate) fn embed_facility(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    Ok((0..graph_k(src)?.0.n() as u32).map(Element::Facility).collect())
}

pub(crate) fn lift_facility(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    embed_plus(embed_facility, src, tgt, s, &[])
}

pub(crate) fn mvc_to_vcv(src: &Instance) -> Result<Instance> {
    let (g, k) = graph_k(src)?;
    let mut namer = Namer::new(&g.vertices);
    let mut graph = g.clone();
    let fixed = graph.add_vertex(namer.fresh("v_all"));
    Instance::new(ProblemId::VCV, Payload::Vcv { graph, k: k + 1, fixed })
}

pub(crate) fn lift_mvc_to_vcv(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let fixed = Element::Vertex(graph_k(src)?.0.n() as u32);
    embed_plus(embed_vertices_same, src, tgt, s, &[fixed])
}

// ---- MIS, clique and packing ----

pub(crate) fn mis_to_mvc(src: &Instance) -> Result<Instance> {
    let (g, k) = graph_k(src)?;
    let kk = bounded_k(g, k)?;
    graph_instance(ProblemId::MVC, g.clone(), (g.n() - kk) as u64)
}

pub(crate) fn cq_to_mvc(src: &Instance) -> Result<Instance> {
    let (g, k) = graph_k(src)?;
    let kk = bounded_k(g, k)?;
    graph_instance(ProblemId::MVC, g.complement(), (g.n() - kk) as u64)
}

/// V \ S, in either direction.
pub(crate) fn complement_vertices(src: &Instance, _tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let n = graph_k(src)?.0.n() as u32;
    Ok((0..n).map(Element::Vertex).filter(|v| !s.contains(v)).collect())
}

/// MIS to CQ and CQ to MIS: complement graph, same k.
pub(crate) fn complement_same_k(src: &Instance) -> Result<Instance> {
    let (g, k) = graph_k(src)?;
    let kind = if src.kind == ProblemId::MIS {
        ProblemId::CQ
    } else {
        ProblemId::MIS
    };
    graph_instance(kind, g.complement(), k)
}

pub(crate) fn mis_to_sp(src: &Instance) -> Result<Instance> {
    let (g, k) = graph_k(src)?;
    let n = g.n() as u32;
    let mut elements = g.vertices.clone();
    elements.extend(g.edges.iter().map(|&e| edge_name(g, e)));
    let sets = (0..n)
        .map(|v| {
            let mut s = vec![v];
            s.extend(
                g.edges
                    .iter()
                    .enumerate()
                    .filter(|(_, &(a, b))| a == v || b == v)
                    .map(|(i, _)| n + i as u32),
            );
            s
        })
        .collect();
    Instance::new(
        ProblemId::SP,
        Payload::Sets {
            system: SetSystem { elements, sets },
            k,
            exact: true,
        },
    )
}

pub(crate) fn sp_to_mis(src: &Instance) -> Result<Instance> {
    let (system, k) = match &src.payload {
        Payload::Sets { system, k, .. } => (system, *k),
        _ => return Err(Error::Internal("SP instance has no set payload".into())),
    };
    let mut g = Graph::default();
    for i in 0..system.sets.len() {
        g.add_vertex(format!("S{}", i + 1));
    }
    for a in 0..system.sets.len() {
        for b in a + 1..system.sets.len() {
            if system.sets[a].iter().any(|e| system.sets[b].contains(e)) {
                g.add_edge(a as u32, b as u32);
            }
        }
    }
    graph_instance(ProblemId::MIS, g, k)
}

pub(crate) fn embed_set_to_vertex(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    match &src.payload {
        Payload::Sets { system, .. } => Ok((0..system.sets.len() as u32).map(Element::Vertex).collect()),
        _ => Err(Error::Internal("SP instance has no set payload".into())),
    }
}

pub(crate) fn lift_set_to_vertex(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    embed_plus(embed_set_to_vertex, src, tgt, s, &[])
}
