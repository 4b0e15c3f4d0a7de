//! JSON documents (schema v1) for instances, solution sets and reports, plus
//! DIMACS CNF import.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Deserialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::SolutionSet;
use crate::problems::{
    Cnf, Digraph, FacilityData, Graph, Instance, Lit, Matching, Meta, Payload, ProblemId, SetSystem,
};
use crate::verifier::{PartitionCertificate, VerificationReport};

pub const SCHEMA_VERSION: u64 = 1;

/// Largest integer a JSON number carries exactly; bigger values become strings.
const MAX_SAFE: u64 = 1 << 53;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum BigRepr {
    Num(u64),
    Str(String),
}

impl BigRepr {
    fn value(&self, path: &str) -> Result<BigUint> {
        match self {
            BigRepr::Num(n) => Ok(BigUint::from(*n)),
            BigRepr::Str(s) => s
                .parse()
                .map_err(|_| Error::validation(path, format!("{s:?} is not a non-negative integer"))),
        }
    }
}

fn big_json(x: &BigUint) -> Value {
    match u64::try_from(x) {
        Ok(n) if n <= MAX_SAFE => json!(n),
        _ => json!(x.to_string()),
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    version: Option<u64>,
    #[serde(rename = "problem")]
    _problem: String,
    name: Option<String>,
    note: Option<String>,
    variables: Option<Vec<String>>,
    clauses: Option<Vec<Vec<i64>>>,
    vertices: Option<Vec<String>>,
    edges: Option<Vec<Vec<String>>>,
    arcs: Option<Vec<Vec<String>>>,
    k: Option<u64>,
    fixed: Option<String>,
    s: Option<String>,
    t: Option<String>,
    weights: Option<Vec<BigRepr>>,
    terminals: Option<Vec<String>>,
    elements: Option<Vec<String>>,
    sets: Option<Vec<Vec<String>>>,
    exact: Option<bool>,
    facilities: Option<Vec<String>>,
    clients: Option<Vec<String>>,
    open_cost: Option<Vec<u64>>,
    service_cost: Option<Vec<Vec<u64>>>,
    p: Option<u64>,
    numbers: Option<Vec<BigRepr>>,
    target: Option<BigRepr>,
    prices: Option<Vec<BigRepr>>,
    min_profit: Option<BigRepr>,
    max_weight: Option<BigRepr>,
    jobs: Option<Vec<BigRepr>>,
    deadline: Option<BigRepr>,
    x: Option<Vec<String>>,
    y: Option<Vec<String>>,
    z: Option<Vec<String>>,
    triples: Option<Vec<Vec<String>>>,
    singletons: Option<Vec<String>>,
    binding: Option<Vec<u32>>,
}

/// Required and optional payload fields per kind.
fn fields(kind: ProblemId) -> (&'static [&'static str], &'static [&'static str]) {
    use ProblemId::*;
    match kind {
        SAT | TSAT | ESAT | OSAT => (&["clauses"], &["variables"]),
        VC | MVC | DS | MDS | MIS | CQ => (&["vertices", "edges", "k"], &[]),
        VCV => (&["vertices", "edges", "k", "fixed"], &[]),
        FVS | FAS => (&["vertices", "arcs", "k"], &[]),
        SC | HS | SP => (&["elements", "sets", "k"], &["exact"]),
        UFL => (&["facilities", "clients", "open_cost", "service_cost", "k"], &[]),
        PCEN | PMED => (&["facilities", "clients", "service_cost", "p", "k"], &[]),
        DHP => (&["vertices", "arcs", "s", "t"], &[]),
        DHC => (&["vertices", "arcs"], &[]),
        UHP => (&["vertices", "edges", "s", "t"], &[]),
        UHC => (&["vertices", "edges"], &[]),
        TSP => (&["vertices", "edges", "weights", "k"], &[]),
        STT => (&["vertices", "edges", "weights", "terminals", "k"], &[]),
        SS => (&["numbers", "target"], &[]),
        KS => (&["prices", "weights", "min_profit", "max_weight"], &[]),
        P => (&["numbers"], &[]),
        TMS => (&["jobs", "deadline"], &[]),
        ODM => (&["x", "y", "z", "triples", "singletons"], &["binding"]),
        DM => (&["x", "y", "z", "triples"], &[]),
    }
}

const COMMON: [&str; 4] = ["version", "problem", "name", "note"];

fn need<'a, T>(v: &'a Option<T>, field: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::Schema {
        path: field.to_string(),
        msg: "missing field".into(),
    })
}

/// Name-to-index lookup with validation paths.
struct Names<'a> {
    what: &'a str,
    index: HashMap<&'a str, u32>,
}

impl<'a> Names<'a> {
    fn new(what: &'a str, names: &'a [String]) -> Names<'a> {
        Names {
            what,
            index: names.iter().enumerate().map(|(i, n)| (n.as_str(), i as u32)).collect(),
        }
    }

    fn get(&self, path: &str, name: &str) -> Result<u32> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::validation(path, format!("unknown {} {name:?}", self.what)))
    }
}

fn pairs(path: &str, list: &[Vec<String>], names: &Names) -> Result<Vec<(u32, u32)>> {
    list.iter()
        .enumerate()
        .map(|(i, e)| {
            let p = format!("{path}[{i}]");
            if e.len() != 2 {
                return Err(Error::validation(
                    &p,
                    format!("expected 2 endpoints, found {}", e.len()),
                ));
            }
            Ok((names.get(&p, &e[0])?, names.get(&p, &e[1])?))
        })
        .collect()
}

fn bigs(path: &str, v: &[BigRepr]) -> Result<Vec<BigUint>> {
    v.iter()
        .enumerate()
        .map(|(i, b)| b.value(&format!("{path}[{i}]")))
        .collect()
}

fn small(path: &str, v: &[BigRepr]) -> Result<Vec<u64>> {
    bigs(path, v)?
        .iter()
        .enumerate()
        .map(|(i, b)| u64::try_from(b).map_err(|_| Error::validation(format!("{path}[{i}]"), "weight too large")))
        .collect()
}

fn undirected(d: &Doc) -> Result<Graph> {
    let vertices = need(&d.vertices, "vertices")?.clone();
    let names = Names::new("vertex", &vertices);
    let edges = pairs("edges", need(&d.edges, "edges")?, &names)?;
    let mut g = Graph {
        vertices: vertices.clone(),
        edges: Vec::new(),
    };
    for (i, &(a, b)) in edges.iter().enumerate() {
        if a == b {
            return Err(Error::validation(format!("edges[{i}]"), "self-loop"));
        }
        g.add_edge(a, b);
    }
    Ok(g)
}

fn directed(d: &Doc) -> Result<Digraph> {
    let vertices = need(&d.vertices, "vertices")?.clone();
    let names = Names::new("vertex", &vertices);
    let arcs = pairs("arcs", need(&d.arcs, "arcs")?, &names)?;
    Ok(Digraph { vertices, arcs })
}

fn vertex(d: &Doc, field: &str, v: &Option<String>) -> Result<u32> {
    let vertices = need(&d.vertices, "vertices")?;
    Names::new("vertex", vertices).get(field, need(v, field)?)
}

/// Parses a JSON instance document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: Value = serde_json::from_str(text).map_err(|e| Error::Schema {
        path: format!("line {}", e.line()),
        msg: e.to_string(),
    })?;
    instance_from_value(&raw)
}

pub fn instance_from_value(raw: &Value) -> Result<Instance> {
    let obj = raw.as_object().ok_or_else(|| Error::Schema {
        path: String::new(),
        msg: "expected a JSON object".into(),
    })?;
    let problem = obj
        .get("problem")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Schema {
            path: "problem".into(),
            msg: "missing or not a string".into(),
        })?;
    let kind: ProblemId = problem.parse().map_err(|_| Error::Schema {
        path: "problem".into(),
        msg: format!("unknown problem {problem:?}"),
    })?;
    let (required, optional) = fields(kind);
    for key in obj.keys() {
        let k = key.as_str();
        if !COMMON.contains(&k) && !required.contains(&k) && !optional.contains(&k) {
            return Err(Error::Schema {
                path: key.clone(),
                msg: format!("field not allowed for {}", kind.as_str()),
            });
        }
    }
    for r in required {
        if !obj.contains_key(*r) {
            return Err(Error::Schema {
                path: r.to_string(),
                msg: "missing field".into(),
            });
        }
    }
    let doc: Doc = serde_path_to_error::deserialize(raw).map_err(|e| Error::Schema {
        path: e.path().to_string(),
        msg: e.inner().to_string(),
    })?;
    if let Some(v) = doc.version {
        if v != SCHEMA_VERSION {
            return Err(Error::Schema {
                path: "version".into(),
                msg: format!("unsupported version {v}"),
            });
        }
    }
    let payload = payload(kind, &doc)?;
    let inst = Instance {
        kind,
        payload,
        meta: Meta {
            name: doc.name.clone(),
            note: doc.note.clone(),
        },
    };
    inst.validate()?;
    Ok(inst)
}

fn payload(kind: ProblemId, d: &Doc) -> Result<Payload> {
    use ProblemId::*;
    Ok(match kind {
        SAT | TSAT | ESAT | OSAT => {
            let clauses = need(&d.clauses, "clauses")?;
            let max = clauses.iter().flatten().map(|l| l.unsigned_abs()).max().unwrap_or(0) as usize;
            let vars = match &d.variables {
                Some(v) => v.clone(),
                None => (1..=max).map(|i| format!("x{i}")).collect(),
            };
            let mut out = Vec::with_capacity(clauses.len());
            for (i, c) in clauses.iter().enumerate() {
                let mut cl = Vec::with_capacity(c.len());
                for (j, &x) in c.iter().enumerate() {
                    let path = format!("clauses[{i}][{j}]");
                    let l = Lit::from_signed(x).ok_or_else(|| Error::validation(&path, "literal 0"))?;
                    if l.var as usize >= vars.len() {
                        return Err(Error::validation(&path, format!("variable {} not declared", l.var + 1)));
                    }
                    cl.push(l);
                }
                out.push(cl);
            }
            Payload::Cnf(Cnf { vars, clauses: out })
        }
        VC | MVC | DS | MDS | MIS | CQ => Payload::Graph {
            graph: undirected(d)?,
            k: *need(&d.k, "k")?,
        },
        VCV => Payload::Vcv {
            graph: undirected(d)?,
            k: *need(&d.k, "k")?,
            fixed: vertex(d, "fixed", &d.fixed)?,
        },
        FVS | FAS => Payload::Digraph {
            graph: directed(d)?,
            k: *need(&d.k, "k")?,
        },
        SC | HS | SP => {
            let elements = need(&d.elements, "elements")?.clone();
            let names = Names::new("element", &elements);
            let sets = need(&d.sets, "sets")?
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    s.iter()
                        .map(|e| names.get(&format!("sets[{i}]"), e))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Payload::Sets {
                system: SetSystem { elements, sets },
                k: *need(&d.k, "k")?,
                exact: d.exact.unwrap_or(kind == SP),
            }
        }
        UFL | PCEN | PMED => Payload::Facility {
            data: FacilityData {
                facilities: need(&d.facilities, "facilities")?.clone(),
                clients: need(&d.clients, "clients")?.clone(),
                open_cost: d.open_cost.clone().unwrap_or_default(),
                service: need(&d.service_cost, "service_cost")?.clone(),
            },
            p: d.p,
            k: *need(&d.k, "k")?,
        },
        DHP => Payload::DiPath {
            graph: directed(d)?,
            s: vertex(d, "s", &d.s)?,
            t: vertex(d, "t", &d.t)?,
        },
        DHC => Payload::DiCycle { graph: directed(d)? },
        UHP => Payload::UPath {
            graph: undirected(d)?,
            s: vertex(d, "s", &d.s)?,
            t: vertex(d, "t", &d.t)?,
        },
        UHC => Payload::UCycle { graph: undirected(d)? },
        TSP => Payload::Tsp {
            graph: undirected(d)?,
            weights: small("weights", need(&d.weights, "weights")?)?,
            k: *need(&d.k, "k")?,
        },
        STT => {
            let terminals = need(&d.terminals, "terminals")?
                .iter()
                .enumerate()
                .map(|(i, t)| vertex(d, &format!("terminals[{i}]"), &Some(t.clone())))
                .collect::<Result<Vec<_>>>()?;
            Payload::Steiner {
                graph: undirected(d)?,
                weights: small("weights", need(&d.weights, "weights")?)?,
                terminals,
                k: *need(&d.k, "k")?,
            }
        }
        SS => Payload::SubsetSum {
            numbers: bigs("numbers", need(&d.numbers, "numbers")?)?,
            target: need(&d.target, "target")?.value("target")?,
        },
        KS => Payload::Knapsack {
            prices: bigs("prices", need(&d.prices, "prices")?)?,
            weights: bigs("weights", need(&d.weights, "weights")?)?,
            min_profit: need(&d.min_profit, "min_profit")?.value("min_profit")?,
            max_weight: need(&d.max_weight, "max_weight")?.value("max_weight")?,
        },
        P => Payload::Partition {
            numbers: bigs("numbers", need(&d.numbers, "numbers")?)?,
        },
        TMS => Payload::Scheduling {
            jobs: bigs("jobs", need(&d.jobs, "jobs")?)?,
            deadline: need(&d.deadline, "deadline")?.value("deadline")?,
        },
        ODM | DM => {
            let x = need(&d.x, "x")?.clone();
            let y = need(&d.y, "y")?.clone();
            let z = need(&d.z, "z")?.clone();
            let (nx, ny, nz) = (
                Names::new("x element", &x),
                Names::new("y element", &y),
                Names::new("z element", &z),
            );
            let triples = need(&d.triples, "triples")?
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let p = format!("triples[{i}]");
                    if t.len() != 3 {
                        return Err(Error::validation(&p, format!("expected 3 entries, found {}", t.len())));
                    }
                    Ok((nx.get(&p, &t[0])?, ny.get(&p, &t[1])?, nz.get(&p, &t[2])?))
                })
                .collect::<Result<Vec<_>>>()?;
            let m = Matching {
                x: x.clone(),
                y,
                z,
                triples,
            };
            if kind == DM {
                Payload::Dm { m }
            } else {
                let singletons = need(&d.singletons, "singletons")?
                    .iter()
                    .enumerate()
                    .map(|(i, s)| nx.get(&format!("singletons[{i}]"), s))
                    .collect::<Result<Vec<_>>>()?;
                Payload::Odm {
                    m,
                    singletons,
                    binding: d.binding.clone().unwrap_or_default(),
                }
            }
        }
    })
}

fn names_of(names: &[String], idx: impl IntoIterator<Item = u32>) -> Vec<String> {
    idx.into_iter().map(|i| names[i as usize].clone()).collect()
}

fn pair_names(names: &[String], list: &[(u32, u32)]) -> Value {
    json!(list
        .iter()
        .map(|&(a, b)| [names[a as usize].clone(), names[b as usize].clone()])
        .collect::<Vec<_>>())
}

/// Canonical JSON value of an instance; keys come out sorted.
pub fn instance_to_value(inst: &Instance) -> Value {
    let mut m = Map::new();
    m.insert("version".into(), json!(SCHEMA_VERSION));
    m.insert("problem".into(), json!(inst.kind.as_str()));
    if let Some(n) = &inst.meta.name {
        m.insert("name".into(), json!(n));
    }
    if let Some(n) = &inst.meta.note {
        m.insert("note".into(), json!(n));
    }
    let mut put = |k: &str, v: Value| {
        m.insert(k.to_string(), v);
    };
    match &inst.payload {
        Payload::Cnf(c) => {
            put("variables", json!(c.vars));
            put(
                "clauses",
                json!(c
                    .clauses
                    .iter()
                    .map(|cl| cl.iter().map(|l| l.to_signed()).collect::<Vec<_>>())
                    .collect::<Vec<_>>()),
            );
        }
        Payload::Graph { graph, k } => {
            put("vertices", json!(graph.vertices));
            put("edges", pair_names(&graph.vertices, &graph.edges));
            put("k", json!(k));
        }
        Payload::Vcv { graph, k, fixed } => {
            put("vertices", json!(graph.vertices));
            put("edges", pair_names(&graph.vertices, &graph.edges));
            put("k", json!(k));
            put("fixed", json!(graph.vertices[*fixed as usize]));
        }
        Payload::Digraph { graph, k } => {
            put("vertices", json!(graph.vertices));
            put("arcs", pair_names(&graph.vertices, &graph.arcs));
            put("k", json!(k));
        }
        Payload::Sets { system, k, exact } => {
            put("elements", json!(system.elements));
            put(
                "sets",
                json!(system
                    .sets
                    .iter()
                    .map(|s| names_of(&system.elements, s.iter().copied()))
                    .collect::<Vec<_>>()),
            );
            put("k", json!(k));
            put("exact", json!(exact));
        }
        Payload::Facility { data, p, k } => {
            put("facilities", json!(data.facilities));
            put("clients", json!(data.clients));
            if inst.kind == ProblemId::UFL {
                put("open_cost", json!(data.open_cost));
            }
            put("service_cost", json!(data.service));
            if let Some(p) = p {
                put("p", json!(p));
            }
            put("k", json!(k));
        }
        Payload::DiPath { graph, s, t } => {
            put("vertices", json!(graph.vertices));
            put("arcs", pair_names(&graph.vertices, &graph.arcs));
            put("s", json!(graph.vertices[*s as usize]));
            put("t", json!(graph.vertices[*t as usize]));
        }
        Payload::DiCycle { graph } => {
            put("vertices", json!(graph.vertices));
            put("arcs", pair_names(&graph.vertices, &graph.arcs));
        }
        Payload::UPath { graph, s, t } => {
            put("vertices", json!(graph.vertices));
            put("edges", pair_names(&graph.vertices, &graph.edges));
            put("s", json!(graph.vertices[*s as usize]));
            put("t", json!(graph.vertices[*t as usize]));
        }
        Payload::UCycle { graph } => {
            put("vertices", json!(graph.vertices));
            put("edges", pair_names(&graph.vertices, &graph.edges));
        }
        Payload::Tsp { graph, weights, k } => {
            put("vertices", json!(graph.vertices));
            put("edges", pair_names(&graph.vertices, &graph.edges));
            put("weights", json!(weights));
            put("k", json!(k));
        }
        Payload::Steiner {
            graph,
            weights,
            terminals,
            k,
        } => {
            put("vertices", json!(graph.vertices));
            put("edges", pair_names(&graph.vertices, &graph.edges));
            put("weights", json!(weights));
            put("terminals", json!(names_of(&graph.vertices, terminals.iter().copied())));
            put("k", json!(k));
        }
        Payload::SubsetSum { numbers, target } => {
            put("numbers", Value::Array(numbers.iter().map(big_json).collect()));
            put("target", big_json(target));
        }
        Payload::Knapsack {
            prices,
            weights,
            min_profit,
            max_weight,
        } => {
            put("prices", Value::Array(prices.iter().map(big_json).collect()));
            put("weights", Value::Array(weights.iter().map(big_json).collect()));
            put("min_profit", big_json(min_profit));
            put("max_weight", big_json(max_weight));
        }
        Payload::Partition { numbers } => put("numbers", Value::Array(numbers.iter().map(big_json).collect())),
        Payload::Scheduling { jobs, deadline } => {
            put("jobs", Value::Array(jobs.iter().map(big_json).collect()));
            put("deadline", big_json(deadline));
        }
        Payload::Odm { m, singletons, binding } => {
            matching_fields(&mut put, m);
            put("singletons", json!(names_of(&m.x, singletons.iter().copied())));
            if !binding.is_empty() {
                put("binding", json!(binding));
            }
        }
        Payload::Dm { m } => matching_fields(&mut put, m),
    }
    Value::Object(m)
}

fn matching_fields(put: &mut impl FnMut(&str, Value), m: &Matching) {
    put("x", json!(m.x));
    put("y", json!(m.y));
    put("z", json!(m.z));
    put(
        "triples",
        json!(m
            .triples
            .iter()
            .map(|&(x, y, z)| [
                m.x[x as usize].clone(),
                m.y[y as usize].clone(),
                m.z[z as usize].clone()
            ])
            .collect::<Vec<_>>()),
    );
}

/// Pretty canonical document with a trailing newline.
pub fn serialize_instance(inst: &Instance) -> String {
    pretty(&instance_to_value(inst))
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// SHA-256 of the compact canonical instance document, in hex.
pub fn fingerprint(inst: &Instance) -> String {
    let compact = serde_json::to_string(&instance_to_value(inst)).expect("JSON values always serialize");
    hex::encode(Sha256::digest(compact.as_bytes()))
}

/// Reads DIMACS CNF text into a SAT instance with variables x1..xV.
pub fn import_dimacs_cnf(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut last_line = 0;
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        last_line = ln;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(Error::Parse {
                    line: ln,
                    msg: "second problem line".into(),
                });
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            let bad = || Error::Parse {
                line: ln,
                msg: "expected \"p cnf <variables> <clauses>\"".into(),
            };
            if parts.len() != 3 || parts[0] != "cnf" {
                return Err(bad());
            }
            let v = parts[1].parse().map_err(|_| bad())?;
            let c = parts[2].parse().map_err(|_| bad())?;
            header = Some((v, c));
            continue;
        }
        let (nv, _) = header.ok_or_else(|| Error::Parse {
            line: ln,
            msg: "clause before the problem line".into(),
        })?;
        for tok in line.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| Error::Parse {
                line: ln,
                msg: format!("bad literal {tok:?}"),
            })?;
            match Lit::from_signed(x) {
                None => clauses.push(std::mem::take(&mut current)),
                Some(l) => {
                    if l.var as usize >= nv {
                        return Err(Error::Parse {
                            line: ln,
                            msg: format!("variable {} exceeds the declared {nv}", l.var + 1),
                        });
                    }
                    // repeated literals are harmless in DIMACS; keep one copy
                    if !current.contains(&l) {
                        current.push(l);
                    }
                }
            }
        }
    }
    let (nv, nc) = header.ok_or_else(|| Error::Parse {
        line: last_line,
        msg: "missing problem line".into(),
    })?;
    if !current.is_empty() {
        return Err(Error::Parse {
            line: last_line,
            msg: "last clause is not terminated by 0".into(),
        });
    }
    if clauses.len() != nc {
        return Err(Error::Parse {
            line: last_line,
            msg: format!("header declares {nc} clauses, found {}", clauses.len()),
        });
    }
    Instance::cnf(ProblemId::SAT, (1..=nv).map(|i| format!("x{i}")).collect(), clauses)
}

/// Solution-set document: count, completeness and element-name lists.
pub fn solutions_to_value(inst: &Instance, set: &SolutionSet, all: bool) -> Result<Value> {
    let u = inst.universe()?;
    let mut m = Map::new();
    m.insert("problem".into(), json!(inst.kind.as_str()));
    m.insert("count".into(), json!(set.len()));
    m.insert("complete".into(), json!(set.complete));
    m.insert("nodes".into(), json!(set.nodes));
    if all {
        let sols: Vec<Vec<String>> = set
            .iter()
            .map(|s| u.members(s).iter().map(|e| inst.element_name(e)).collect())
            .collect();
        m.insert("solutions".into(), json!(sols));
    }
    Ok(Value::Object(m))
}

fn name_list(names: &[String], s: &crate::model::Solution) -> Vec<String> {
    s.ones().map(|i| names[i].clone()).collect()
}

fn partition_value(p: &PartitionCertificate) -> Value {
    let t = &p.target_elements;
    let links: Vec<Value> = p
        .link_map
        .iter()
        .map(|(s, l)| json!({ "source": name_list(&p.source_elements, s), "link": name_list(t, l) }))
        .collect();
    json!({
        "s_rep": name_list(t, &p.s_rep),
        "s_all": name_list(t, &p.s_all),
        "s_nev": name_list(t, &p.s_nev),
        "s_link": name_list(t, &p.s_link),
        "link_map": links,
        "valid": p.valid,
        "vacuous": p.vacuous,
        "failure_reason": p.failure_reason,
    })
}

/// Stable report document; wall time is left out so reruns are byte-identical.
pub fn report_to_value(r: &VerificationReport) -> Value {
    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .map(|w| json!({ "property": w.property, "side": w.side, "note": w.note, "elements": w.elements }))
        .collect();
    json!({
        "reduction": r.reduction_id,
        "fingerprint": r.fingerprint,
        "claims": { "ssp": r.claims.ssp, "spr": r.claims.spr },
        "ssp": r.ssp_holds,
        "spr": r.spr_holds,
        "ssp_reason": r.ssp_reason,
        "spr_reason": r.spr_reason,
        "counts": [r.source_count, r.target_count],
        "claims_matched": !r.mismatch(),
        "vacuous": r.vacuous(),
        "partition": r.partition.as_ref().map(partition_value),
        "witnesses": witnesses,
        "nodes": r.nodes,
    })
}

pub fn serialize_report(r: &VerificationReport) -> String {
    pretty(&report_to_value(r))
}
