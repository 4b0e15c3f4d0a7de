//! Problem kinds: payload schemas, structural validation, canonical universes,
//! verifiers, enumerators, optimum finders and random generators.

mod enumerate;
mod generate;
mod search;
mod verify;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Element, Universe};

pub use enumerate::{brute_force_solutions, enumerate_solutions, enumerate_with_limit, minimum_cardinality};
pub use generate::{generate_instance, SizeParams};
pub use verify::verify_solution;

macro_rules! problem_ids {
    ($($id:ident => $s:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum ProblemId { $($id),* }

        impl ProblemId {
            pub const ALL: &'static [ProblemId] = &[$(ProblemId::$id),*];

            /// Lower-case identifier used in documents and on the command line.
            pub fn as_str(&self) -> &'static str {
                match self { $(ProblemId::$id => $s),* }
            }

            pub fn label(&self) -> &'static str {
                match self { $(ProblemId::$id => stringify!($id)),* }
            }
        }
    };
}

problem_ids! {
    SAT => "sat", TSAT => "tsat", ESAT => "esat", OSAT => "osat",
    VC => "vc", MVC => "mvc", DS => "ds", MDS => "mds", MIS => "mis", CQ => "cq",
    SP => "sp", SC => "sc", HS => "hs", FVS => "fvs", FAS => "fas",
    UFL => "ufl", PCEN => "pcen", PMED => "pmed", VCV => "vcv",
    DHP => "dhp", DHC => "dhc", UHP => "uhp", UHC => "uhc", TSP => "tsp", STT => "stt",
    SS => "ss", KS => "ks", P => "p", TMS => "tms", ODM => "odm", DM => "dm",
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let low = s.to_ascii_lowercase();
        ProblemId::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == low)
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

impl ProblemId {
    /// Kinds whose instances carry an optimal-cardinality `k`.
    pub fn is_cardinality(&self) -> bool {
        use ProblemId::*;
        matches!(self, MVC | MDS | MIS | CQ | FVS | FAS | VCV)
    }

    /// Kinds where the optimum is a maximum rather than a minimum.
    pub fn is_maximization(&self) -> bool {
        matches!(self, ProblemId::MIS | ProblemId::CQ)
    }
}

/// A literal: variable index plus polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: u32,
    pub neg: bool,
}

impl Lit {
    pub fn pos(var: u32) -> Lit {
        Lit { var, neg: false }
    }

    pub fn neg(var: u32) -> Lit {
        Lit { var, neg: true }
    }

    pub fn negated(self) -> Lit {
        Lit {
            var: self.var,
            neg: !self.neg,
        }
    }

    /// Universe position: both polarities of each variable, positive first.
    pub fn index(self) -> usize {
        2 * self.var as usize + self.neg as usize
    }

    pub fn element(self) -> Element {
        Element::lit(self.var, self.neg)
    }

    /// DIMACS-style signed 1-based encoding.
    pub fn to_signed(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.neg {
            -v
        } else {
            v
        }
    }

    pub fn from_signed(x: i64) -> Option<Lit> {
        if x == 0 {
            return None;
        }
        let var = (x.unsigned_abs() - 1) as u32;
        Some(Lit { var, neg: x < 0 })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub vars: Vec<String>,
    pub clauses: Vec<Vec<Lit>>,
}

impl Cnf {
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }
}

/// Simple undirected graph; edges keep declaration order with sorted endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    pub vertices: Vec<String>,
    pub edges: Vec<(u32, u32)>,
}

impl Graph {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> u32 {
        self.vertices.push(name.into());
        (self.vertices.len() - 1) as u32
    }

    pub fn add_edge(&mut self, a: u32, b: u32) {
        self.edges.push(if a <= b { (a, b) } else { (b, a) });
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n()];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        adj
    }

    /// Adjacency matrix as rows of booleans.
    pub fn matrix(&self) -> Vec<Vec<bool>> {
        let n = self.n();
        let mut m = vec![vec![false; n]; n];
        for &(a, b) in &self.edges {
            m[a as usize][b as usize] = true;
            m[b as usize][a as usize] = true;
        }
        m
    }

    /// Complement graph on the same vertex list, edges in lexicographic order.
    pub fn complement(&self) -> Graph {
        let m = self.matrix();
        let mut g = Graph {
            vertices: self.vertices.clone(),
            edges: Vec::new(),
        };
        for (a, row) in m.iter().enumerate() {
            for (b, &adjacent) in row.iter().enumerate().skip(a + 1) {
                if !adjacent {
                    g.edges.push((a as u32, b as u32));
                }
            }
        }
        g
    }

    pub fn edge_index(&self, a: u32, b: u32) -> Option<usize> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.edges.iter().position(|&e| e == key)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Digraph {
    pub vertices: Vec<String>,
    pub arcs: Vec<(u32, u32)>,
}

impl Digraph {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> u32 {
        self.vertices.push(name.into());
        (self.vertices.len() - 1) as u32
    }

    pub fn add_arc(&mut self, a: u32, b: u32) {
        self.arcs.push((a, b));
    }
}

/// Ground elements and a family of subsets of them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SetSystem {
    pub elements: Vec<String>,
    pub sets: Vec<Vec<u32>>,
}

/// Facilities, clients, optional opening costs and a client-by-facility cost matrix.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FacilityData {
    pub facilities: Vec<String>,
    pub clients: Vec<String>,
    pub open_cost: Vec<u64>,
    pub service: Vec<Vec<u64>>,
}

/// Three-sided ground sets with triples given by (x, y, z) indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
    pub triples: Vec<(u32, u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    /// SAT, TSAT, ESAT, OSAT.
    Cnf(Cnf),
    /// VC, MVC, DS, MDS, MIS, CQ.
    Graph {
        graph: Graph,
        k: u64,
    },
    Vcv {
        graph: Graph,
        k: u64,
        fixed: u32,
    },
    /// FVS, FAS.
    Digraph {
        graph: Digraph,
        k: u64,
    },
    /// SC and SP choose sets; HS chooses ground elements. SP is always exact.
    Sets {
        system: SetSystem,
        k: u64,
        exact: bool,
    },
    /// UFL uses opening costs and no `p`; PCEN and PMED carry `p`.
    Facility {
        data: FacilityData,
        p: Option<u64>,
        k: u64,
    },
    DiPath {
        graph: Digraph,
        s: u32,
        t: u32,
    },
    DiCycle {
        graph: Digraph,
    },
    UPath {
        graph: Graph,
        s: u32,
        t: u32,
    },
    UCycle {
        graph: Graph,
    },
    Tsp {
        graph: Graph,
        weights: Vec<u64>,
        k: u64,
    },
    Steiner {
        graph: Graph,
        weights: Vec<u64>,
        terminals: Vec<u32>,
        k: u64,
    },
    SubsetSum {
        numbers: Vec<BigUint>,
        target: BigUint,
    },
    Knapsack {
        prices: Vec<BigUint>,
        weights: Vec<BigUint>,
        min_profit: BigUint,
        max_weight: BigUint,
    },
    Partition {
        numbers: Vec<BigUint>,
    },
    Scheduling {
        jobs: Vec<BigUint>,
        deadline: BigUint,
    },
    /// Singletons are X indices; `binding[i]` is the triple index bound to singleton i.
    Odm {
        m: Matching,
        singletons: Vec<u32>,
        binding: Vec<u32>,
    },
    Dm {
        m: Matching,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Meta {
    pub name: Option<String>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub kind: ProblemId,
    pub payload: Payload,
    pub meta: Meta,
}

fn payload_fits(kind: ProblemId, p: &Payload) -> bool {
    use ProblemId::*;
    match p {
        Payload::Cnf(_) => matches!(kind, SAT | TSAT | ESAT | OSAT),
        Payload::Graph { .. } => matches!(kind, VC | MVC | DS | MDS | MIS | CQ),
        Payload::Vcv { .. } => kind == VCV,
        Payload::Digraph { .. } => matches!(kind, FVS | FAS),
        Payload::Sets { .. } => matches!(kind, SC | HS | SP),
        Payload::Facility { .. } => matches!(kind, UFL | PCEN | PMED),
        Payload::DiPath { .. } => kind == DHP,
        Payload::DiCycle { .. } => kind == DHC,
        Payload::UPath { .. } => kind == UHP,
        Payload::UCycle { .. } => kind == UHC,
        Payload::Tsp { .. } => kind == TSP,
        Payload::Steiner { .. } => kind == STT,
        Payload::SubsetSum { .. } => kind == SS,
        Payload::Knapsack { .. } => kind == KS,
        Payload::Partition { .. } => kind == P,
        Payload::Scheduling { .. } => kind == TMS,
        Payload::Odm { .. } => kind == ODM,
        Payload::Dm { .. } => kind == DM,
    }
}

impl Instance {
    /// Builds and validates an instance.
    pub fn new(kind: ProblemId, payload: Payload) -> Result<Instance> {
        let inst = Instance {
            kind,
            payload,
            meta: Meta::default(),
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Instance {
        self.meta.name = Some(name.into());
        self
    }

    pub fn cnf(kind: ProblemId, vars: Vec<String>, clauses: Vec<Vec<Lit>>) -> Result<Instance> {
        Instance::new(kind, Payload::Cnf(Cnf { vars, clauses }))
    }

    /// CNF with variables named x1..xn and DIMACS-style signed clauses.
    pub fn cnf_signed(kind: ProblemId, n: usize, clauses: &[&[i64]]) -> Result<Instance> {
        let vars = (1..=n).map(|i| format!("x{i}")).collect();
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&x| Lit::from_signed(x).ok_or_else(|| Error::invalid("literal 0")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Instance::cnf(kind, vars, clauses)
    }

    /// Graph instance from vertex names and name pairs.
    pub fn graph_named(kind: ProblemId, vertices: &[&str], edges: &[(&str, &str)], k: u64) -> Result<Instance> {
        let graph = named_graph(vertices, edges)?;
        Instance::new(kind, Payload::Graph { graph, k })
    }

    pub fn numbers(kind: ProblemId, nums: &[u64], target: Option<u64>) -> Result<Instance> {
        let numbers: Vec<BigUint> = nums.iter().map(|&x| BigUint::from(x)).collect();
        match kind {
            ProblemId::SS => Instance::new(
                kind,
                Payload::SubsetSum {
                    numbers,
                    target: BigUint::from(target.unwrap_or(0)),
                },
            ),
            ProblemId::P => Instance::new(kind, Payload::Partition { numbers }),
            ProblemId::TMS => Instance::new(
                kind,
                Payload::Scheduling {
                    jobs: numbers,
                    deadline: BigUint::from(target.unwrap_or(0)),
                },
            ),
            other => Err(Error::invalid(format!("{other} is not a number-list problem"))),
        }
    }

    pub fn cnf_payload(&self) -> Option<&Cnf> {
        match &self.payload {
            Payload::Cnf(c) => Some(c),
            _ => None,
        }
    }

    /// Threshold or cardinality parameter, when the kind carries one.
    pub fn k(&self) -> Option<u64> {
        match &self.payload {
            Payload::Graph { k, .. }
            | Payload::Vcv { k, .. }
            | Payload::Digraph { k, .. }
            | Payload::Sets { k, .. }
            | Payload::Facility { k, .. }
            | Payload::Tsp { k, .. }
            | Payload::Steiner { k, .. } => Some(*k),
            _ => None,
        }
    }

    /// Copy with the threshold or cardinality parameter replaced.
    pub fn with_k(&self, new_k: u64) -> Instance {
        let mut c = self.clone();
        match &mut c.payload {
            Payload::Graph { k, .. }
            | Payload::Vcv { k, .. }
            | Payload::Digraph { k, .. }
            | Payload::Sets { k, .. }
            | Payload::Facility { k, .. }
            | Payload::Tsp { k, .. }
            | Payload::Steiner { k, .. } => *k = new_k,
            _ => {}
        }
        c
    }

    pub fn validate(&self) -> Result<()> {
        if !payload_fits(self.kind, &self.payload) {
            return Err(Error::invalid(format!(
                "payload shape does not match problem {}",
                self.kind
            )));
        }
        match &self.payload {
            Payload::Cnf(c) => validate_cnf(self.kind, c),
            Payload::Graph { graph, .. } => validate_graph(graph),
            Payload::Vcv { graph, fixed, .. } => {
                validate_graph(graph)?;
                check_index("fixed", *fixed, graph.n())
            }
            Payload::Digraph { graph, .. } => validate_digraph(graph),
            Payload::Sets { system, exact, .. } => {
                validate_names("elements", &system.elements)?;
                for (i, s) in system.sets.iter().enumerate() {
                    let mut seen = HashSet::new();
                    for &e in s {
                        check_index(&format!("sets[{i}]"), e, system.elements.len())?;
                        if !seen.insert(e) {
                            return Err(Error::validation(format!("sets[{i}]"), "duplicate element"));
                        }
                    }
                }
                if self.kind == ProblemId::SP && !exact {
                    return Err(Error::validation("exact", "set packing is always exact"));
                }
                Ok(())
            }
            Payload::Facility { data, p, .. } => {
                validate_names("facilities", &data.facilities)?;
                validate_names("clients", &data.clients)?;
                let nf = data.facilities.len();
                if data.service.len() != data.clients.len() {
                    return Err(Error::validation("service_cost", "one row per client required"));
                }
                for (i, row) in data.service.iter().enumerate() {
                    if row.len() != nf {
                        return Err(Error::validation(
                            format!("service_cost[{i}]"),
                            "one entry per facility required",
                        ));
                    }
                }
                match self.kind {
                    ProblemId::UFL => {
                        if data.open_cost.len() != nf {
                            return Err(Error::validation("open_cost", "one entry per facility required"));
                        }
                        if p.is_some() {
                            return Err(Error::validation("p", "not used by facility location"));
                        }
                    }
                    _ => {
                        if !data.open_cost.is_empty() {
                            return Err(Error::validation("open_cost", "not used by this problem"));
                        }
                        if p.is_none() {
                            return Err(Error::validation("p", "missing"));
                        }
                    }
                }
                Ok(())
            }
            Payload::DiPath { graph, s, t } => {
                validate_digraph(graph)?;
                check_index("s", *s, graph.n())?;
                check_index("t", *t, graph.n())?;
                if s == t {
                    return Err(Error::validation("t", "s and t must differ"));
                }
                Ok(())
            }
            Payload::DiCycle { graph } => validate_digraph(graph),
            Payload::UPath { graph, s, t } => {
                validate_graph(graph)?;
                check_index("s", *s, graph.n())?;
                check_index("t", *t, graph.n())?;
                if s == t {
                    return Err(Error::validation("t", "s and t must differ"));
                }
                Ok(())
            }
            Payload::UCycle { graph } => validate_graph(graph),
            Payload::Tsp { graph, weights, .. } => {
                validate_graph(graph)?;
                if weights.len() != graph.edges.len() {
                    return Err(Error::validation("weights", "one weight per edge required"));
                }
                Ok(())
            }
            Payload::Steiner {
                graph,
                weights,
                terminals,
                ..
            } => {
                validate_graph(graph)?;
                if weights.len() != graph.edges.len() {
                    return Err(Error::validation("weights", "one weight per edge required"));
                }
                if terminals.is_empty() {
                    return Err(Error::validation("terminals", "at least one terminal required"));
                }
                let mut seen = HashSet::new();
                for (i, &t) in terminals.iter().enumerate() {
                    check_index(&format!("terminals[{i}]"), t, graph.n())?;
                    if !seen.insert(t) {
                        return Err(Error::validation(format!("terminals[{i}]"), "duplicate terminal"));
                    }
                }
                Ok(())
            }
            Payload::SubsetSum { .. } => Ok(()),
            Payload::Knapsack { prices, weights, .. } => {
                if prices.len() != weights.len() {
                    return Err(Error::validation("objects", "price and weight counts differ"));
                }
                Ok(())
            }
            Payload::Partition { numbers } => {
                if numbers.is_empty() {
                    return Err(Error::validation("numbers", "at least one number required"));
                }
                Ok(())
            }
            Payload::Scheduling { jobs, .. } => {
                if jobs.is_empty() {
                    return Err(Error::validation("jobs", "at least one job required"));
                }
                Ok(())
            }
            Payload::Odm { m, singletons, binding } => {
                validate_matching(m)?;
                let mut seen = HashSet::new();
                for (i, &s) in singletons.iter().enumerate() {
                    check_index(&format!("singletons[{i}]"), s, m.x.len())?;
                    if !seen.insert(s) {
                        return Err(Error::validation(format!("singletons[{i}]"), "duplicate singleton"));
                    }
                }
                if !binding.is_empty() {
                    if binding.len() != singletons.len() {
                        return Err(Error::validation("binding", "one triple per singleton required"));
                    }
                    for (i, &b) in binding.iter().enumerate() {
                        check_index(&format!("binding[{i}]"), b, m.triples.len())?;
                    }
                }
                Ok(())
            }
            Payload::Dm { m } => validate_matching(m),
        }
    }

    /// The deterministic ordered universe of the instance.
    pub fn universe(&self) -> Result<Universe> {
        self.validate()?;
        Universe::new(self.universe_elements())
    }

    fn universe_elements(&self) -> Vec<Element> {
        use ProblemId::*;
        match &self.payload {
            Payload::Cnf(c) => (0..c.num_vars() as u32)
                .flat_map(|v| [Element::lit(v, false), Element::lit(v, true)])
                .collect(),
            Payload::Graph { graph, .. } | Payload::Vcv { graph, .. } => {
                (0..graph.n() as u32).map(Element::Vertex).collect()
            }
            Payload::Digraph { graph, .. } => match self.kind {
                FVS => (0..graph.n() as u32).map(Element::Vertex).collect(),
                _ => graph.arcs.iter().map(|&(a, b)| Element::Arc(a, b)).collect(),
            },
            Payload::Sets { system, .. } => match self.kind {
                HS => (0..system.elements.len() as u32).map(Element::Obj).collect(),
                _ => (0..system.sets.len() as u32).map(Element::SetIdx).collect(),
            },
            Payload::Facility { data, .. } => (0..data.facilities.len() as u32).map(Element::Facility).collect(),
            Payload::DiPath { graph, .. } | Payload::DiCycle { graph } => {
                graph.arcs.iter().map(|&(a, b)| Element::Arc(a, b)).collect()
            }
            Payload::UPath { graph, .. }
            | Payload::UCycle { graph }
            | Payload::Tsp { graph, .. }
            | Payload::Steiner { graph, .. } => graph.edges.iter().map(|&(a, b)| Element::edge(a, b)).collect(),
            Payload::SubsetSum { numbers, .. } | Payload::Partition { numbers } => {
                (0..numbers.len() as u32).map(Element::Num).collect()
            }
            Payload::Knapsack { prices, .. } => (0..prices.len() as u32).map(Element::Obj).collect(),
            Payload::Scheduling { jobs, .. } => (0..jobs.len() as u32).map(Element::Job).collect(),
            Payload::Odm { m, singletons, .. } => m
                .triples
                .iter()
                .map(|&(x, y, z)| Element::Triple(x, y, z))
                .chain(singletons.iter().map(|&s| Element::Singleton(s)))
                .collect(),
            Payload::Dm { m } => m.triples.iter().map(|&(x, y, z)| Element::Triple(x, y, z)).collect(),
        }
    }

    /// Human-readable name of a universe element.
    pub fn element_name(&self, e: &Element) -> String {
        match (&self.payload, e) {
            (Payload::Cnf(c), Element::Lit { var, neg }) => {
                let base = c
                    .vars
                    .get(*var as usize)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", var + 1));
                if *neg {
                    format!("~{base}")
                } else {
                    base
                }
            }
            (_, Element::Vertex(v)) => self.vertex_name(*v),
            (_, Element::Edge(a, b)) => format!("{{{},{}}}", self.vertex_name(*a), self.vertex_name(*b)),
            (_, Element::Arc(a, b)) => format!("({},{})", self.vertex_name(*a), self.vertex_name(*b)),
            (Payload::SubsetSum { numbers, .. } | Payload::Partition { numbers }, Element::Num(i)) => {
                numbers.get(*i as usize).map(|x| x.to_string()).unwrap_or_default()
            }
            (Payload::Knapsack { prices, weights, .. }, Element::Obj(i)) => {
                let i = *i as usize;
                match (prices.get(i), weights.get(i)) {
                    (Some(p), Some(w)) => format!("({p},{w})"),
                    _ => format!("o{}", i + 1),
                }
            }
            (Payload::Sets { system, .. }, Element::Obj(i)) => {
                system.elements.get(*i as usize).cloned().unwrap_or_default()
            }
            (Payload::Scheduling { jobs, .. }, Element::Job(i)) => {
                jobs.get(*i as usize).map(|x| x.to_string()).unwrap_or_default()
            }
            (Payload::Odm { m, .. } | Payload::Dm { m }, Element::Triple(x, y, z)) => format!(
                "({},{},{})",
                m.x.get(*x as usize).map(String::as_str).unwrap_or("?"),
                m.y.get(*y as usize).map(String::as_str).unwrap_or("?"),
                m.z.get(*z as usize).map(String::as_str).unwrap_or("?")
            ),
            (Payload::Odm { m, .. }, Element::Singleton(x)) => {
                format!("[{}]", m.x.get(*x as usize).map(String::as_str).unwrap_or("?"))
            }
            (Payload::Facility { data, .. }, Element::Facility(f)) => {
                data.facilities.get(*f as usize).cloned().unwrap_or_default()
            }
            (_, Element::SetIdx(i)) => format!("S{}", i + 1),
            (_, other) => format!("{other:?}"),
        }
    }

    fn vertex_name(&self, v: u32) -> String {
        let names: Option<&Vec<String>> = match &self.payload {
            Payload::Graph { graph, .. }
            | Payload::Vcv { graph, .. }
            | Payload::UPath { graph, .. }
            | Payload::UCycle { graph }
            | Payload::Tsp { graph, .. }
            | Payload::Steiner { graph, .. } => Some(&graph.vertices),
            Payload::Digraph { graph, .. } | Payload::DiPath { graph, .. } | Payload::DiCycle { graph } => {
                Some(&graph.vertices)
            }
            _ => None,
        };
        names
            .and_then(|n| n.get(v as usize).cloned())
            .unwrap_or_else(|| format!("v{v}"))
    }
}

/// Builds a graph from vertex names and name pairs.
pub fn named_graph(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Graph> {
    let mut g = Graph {
        vertices: vertices.iter().map(|s| s.to_string()).collect(),
        edges: Vec::new(),
    };
    for (i, (a, b)) in edges.iter().enumerate() {
        let ia = vertices
            .iter()
            .position(|v| v == a)
            .ok_or_else(|| Error::validation(format!("edges[{i}]"), format!("unknown vertex {a}")))?;
        let ib = vertices
            .iter()
            .position(|v| v == b)
            .ok_or_else(|| Error::validation(format!("edges[{i}]"), format!("unknown vertex {b}")))?;
        g.add_edge(ia as u32, ib as u32);
    }
    Ok(g)
}

fn check_index(path: &str, i: u32, n: usize) -> Result<()> {
    if (i as usize) < n {
        Ok(())
    } else {
        Err(Error::validation(path, format!("index {i} out of range (size {n})")))
    }
}

fn validate_names(path: &str, names: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for (i, n) in names.iter().enumerate() {
        if n.is_empty() {
            return Err(Error::validation(format!("{path}[{i}]"), "empty name"));
        }
        if !seen.insert(n.as_str()) {
            return Err(Error::validation(format!("{path}[{i}]"), format!("duplicate name {n}")));
        }
    }
    Ok(())
}

fn validate_cnf(kind: ProblemId, c: &Cnf) -> Result<()> {
    validate_names("variables", &c.vars)?;
    for (i, clause) in c.clauses.iter().enumerate() {
        let path = format!("clauses[{i}]");
        let mut seen = HashSet::new();
        let mut vars = HashSet::new();
        for l in clause {
            check_index(&path, l.var, c.num_vars())?;
            if !seen.insert(*l) {
                return Err(Error::validation(&path, "duplicate literal"));
            }
            vars.insert(l.var);
        }
        match kind {
            ProblemId::TSAT if clause.len() > 3 => {
                return Err(Error::validation(&path, "3SAT clauses have at most 3 literals"));
            }
            ProblemId::ESAT if clause.len() != 3 || vars.len() != 3 => {
                return Err(Error::validation(
                    &path,
                    "exact 3SAT clauses have 3 literals over distinct variables",
                ));
            }
            _ => {}
        }
    }
    Ok(())
}

fn validate_graph(g: &Graph) -> Result<()> {
    validate_names("vertices", &g.vertices)?;
    let mut seen = HashSet::new();
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        let path = format!("edges[{i}]");
        check_index(&path, a, g.n())?;
        check_index(&path, b, g.n())?;
        if a == b {
            return Err(Error::validation(&path, "self-loop"));
        }
        if a > b {
            return Err(Error::validation(&path, "endpoints not canonical"));
        }
        if !seen.insert((a, b)) {
            return Err(Error::validation(&path, "parallel edge"));
        }
    }
    Ok(())
}

fn validate_digraph(g: &Digraph) -> Result<()> {
    validate_names("vertices", &g.vertices)?;
    let mut seen = HashSet::new();
    for (i, &(a, b)) in g.arcs.iter().enumerate() {
        let path = format!("arcs[{i}]");
        check_index(&path, a, g.n())?;
        check_index(&path, b, g.n())?;
        if a == b {
            return Err(Error::validation(&path, "self-loop"));
        }
        if !seen.insert((a, b)) {
            return Err(Error::validation(&path, "parallel arc"));
        }
    }
    Ok(())
}

fn validate_matching(m: &Matching) -> Result<()> {
    validate_names("x", &m.x)?;
    validate_names("y", &m.y)?;
    validate_names("z", &m.z)?;
    let mut seen = HashSet::new();
    for (i, &(x, y, z)) in m.triples.iter().enumerate() {
        let path = format!("triples[{i}]");
        check_index(&path, x, m.x.len())?;
        check_index(&path, y, m.y.len())?;
        check_index(&path, z, m.z.len())?;
        if !seen.insert((x, y, z)) {
            return Err(Error::validation(&path, "duplicate triple"));
        }
    }
    Ok(())
}

/// Public wrapper matching the operation name used across the crate.
pub fn canonical_universe(inst: &Instance) -> Result<Universe> {
    inst.universe()
}

/// Allocates names that do not collide with ones already in use.
#[derive(Debug, Default, Clone)]
pub struct Namer {
    used: HashSet<String>,
}

impl Namer {
    pub fn new<'a, I: IntoIterator<Item = &'a String>>(existing: I) -> Namer {
        Namer {
            used: existing.into_iter().cloned().collect(),
        }
    }

    pub fn fresh(&mut self, base: impl Into<String>) -> String {
        let mut name = base.into();
        while self.used.contains(&name) {
            name.push('\'');
        }
        self.used.insert(name.clone());
        name
    }

    pub fn reserve(&mut self, name: &str) {
        self.used.insert(name.to_string());
    }
}
