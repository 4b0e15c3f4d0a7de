//! Seeded random instance generators.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_solutions, enumerate_with_limit, minimum_cardinality};
use super::verify::universe_size;
use super::{Cnf, Digraph, FacilityData, Graph, Instance, Lit, Matching, Payload, ProblemId, SetSystem};
use crate::error::{Error, Result};
use crate::model::Budget;

const RETRIES: usize = 32;

/// Size knobs shared by all generators. Each kind reads the ones it needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SizeParams {
    /// Variable count for CNF kinds.
    pub vars: usize,
    pub clauses: usize,
    /// Longest clause for SAT and 3SAT.
    pub clause_len: usize,
    pub vertices: usize,
    pub density: f64,
    /// Item count: numbers, objects, sets, facilities, extra triples.
    pub items: usize,
    pub max_number: u64,
    pub max_universe: usize,
}

impl Default for SizeParams {
    fn default() -> Self {
        SizeParams {
            vars: 4,
            clauses: 3,
            clause_len: 3,
            vertices: 5,
            density: 0.5,
            items: 5,
            max_number: 20,
            max_universe: 64,
        }
    }
}

impl SizeParams {
    /// Parses `key=value` pairs separated by commas, starting from the defaults.
    pub fn parse(spec: &str) -> Result<SizeParams> {
        let mut p = SizeParams::default();
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::validation("params", format!("expected key=value, got {part}")))?;
            let bad = || Error::validation(format!("params.{key}"), format!("bad value {value}"));
            let int = || value.trim().parse::<usize>().map_err(|_| bad());
            match key.trim() {
                "vars" => p.vars = int()?,
                "clauses" => p.clauses = int()?,
                "clause_len" => p.clause_len = int()?,
                "vertices" => p.vertices = int()?,
                "density" => p.density = value.trim().parse().map_err(|_| bad())?,
                "items" => p.items = int()?,
                "max_number" => p.max_number = value.trim().parse().map_err(|_| bad())?,
                "max_universe" => p.max_universe = int()?,
                other => return Err(Error::validation(format!("params.{other}"), "unknown knob")),
            }
        }
        p.check()?;
        Ok(p)
    }

    pub fn check(&self) -> Result<()> {
        let positive = [
            ("vars", self.vars),
            ("clauses", self.clauses),
            ("clause_len", self.clause_len),
            ("vertices", self.vertices),
            ("items", self.items),
            ("max_number", self.max_number as usize),
            ("max_universe", self.max_universe),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(Error::validation(format!("params.{name}"), "must be positive"));
            }
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return Err(Error::validation("params.density", "must lie in (0, 1]"));
        }
        Ok(())
    }
}

/// Draws a structurally valid instance; deterministic in `(params, seed)`.
/// Cardinality kinds get `k` set to the optimum of the drawn structure.
pub fn generate_instance(id: ProblemId, params: &SizeParams, seed: u64) -> Result<Instance> {
    params.check().map_err(|e| Error::GenerationFailed(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..RETRIES {
        match draw(id, params, &mut rng) {
            Ok(inst) if universe_size(&inst) <= params.max_universe => return Ok(inst),
            Ok(inst) => {
                last = Some(format!(
                    "universe of {} exceeds max_universe {}",
                    universe_size(&inst),
                    params.max_universe
                ))
            }
            Err(Error::GenerationFailed(m)) => last = Some(m),
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationFailed(
        last.unwrap_or_else(|| "no draw succeeded".into()),
    ))
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph {
        vertices: names("v", n),
        edges: Vec::new(),
    };
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if rng.gen_bool(p) {
                g.edges.push((a, b));
            }
        }
    }
    g
}

fn random_digraph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Digraph {
    let mut g = Digraph {
        vertices: names("v", n),
        arcs: Vec::new(),
    };
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            if a != b && rng.gen_bool(p) {
                g.arcs.push((a, b));
            }
        }
    }
    g
}

fn random_clause(n: usize, len: usize, rng: &mut ChaCha8Rng) -> Vec<Lit> {
    let mut vars: Vec<u32> = (0..n as u32).collect();
    vars.shuffle(rng);
    vars.truncate(len);
    vars.into_iter()
        .map(|v| Lit {
            var: v,
            neg: rng.gen_bool(0.5),
        })
        .collect()
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn fail(msg: impl Into<String>) -> Error {
    Error::GenerationFailed(msg.into())
}

fn optimum(inst: Instance) -> Result<Instance> {
    let k = minimum_cardinality(inst.kind, &inst, &mut Budget::default()).map_err(|e| fail(e.to_string()))?;
    Ok(inst.with_k(k))
}

/// Inserts a random Hamiltonian order's consecutive pairs as edges or arcs.
fn planted_order(n: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(rng);
    order
}

fn ensure_edge(g: &mut Graph, a: u32, b: u32) {
    if g.edge_index(a, b).is_none() {
        g.add_edge(a, b);
    }
}

fn ensure_arc(g: &mut Digraph, a: u32, b: u32) {
    if !g.arcs.contains(&(a, b)) {
        g.add_arc(a, b);
    }
}

fn draw(id: ProblemId, p: &SizeParams, rng: &mut ChaCha8Rng) -> Result<Instance> {
    use ProblemId::*;
    let n = p.vertices;
    match id {
        SAT | TSAT | ESAT | OSAT => {
            let nv = p.vars;
            let max_len = match id {
                SAT => p.clause_len,
                TSAT => p.clause_len.min(3),
                _ => 3,
            };
            if matches!(id, ESAT | OSAT) && nv < 3 {
                return Err(fail("exact clauses need at least 3 variables"));
            }
            let clauses = (0..p.clauses)
                .map(|_| {
                    let len = if matches!(id, ESAT | OSAT) {
                        3
                    } else {
                        rng.gen_range(1..=max_len.min(nv))
                    };
                    random_clause(nv, len, rng)
                })
                .collect();
            Instance::new(
                id,
                Payload::Cnf(Cnf {
                    vars: names("x", nv),
                    clauses,
                }),
            )
        }
        VC | DS => {
            let graph = random_graph(n, p.density, rng);
            let k = rng.gen_range(1..=n) as u64;
            Instance::new(id, Payload::Graph { graph, k })
        }
        MVC | MDS | MIS | CQ => {
            let graph = random_graph(n, p.density, rng);
            optimum(Instance::new(id, Payload::Graph { graph, k: 0 })?)
        }
        VCV => {
            let graph = random_graph(n, p.density, rng);
            let fixed = rng.gen_range(0..n) as u32;
            optimum(Instance::new(id, Payload::Vcv { graph, k: 0, fixed })?)
        }
        FVS | FAS => {
            let graph = random_digraph(n, p.density / 2.0, rng);
            optimum(Instance::new(id, Payload::Digraph { graph, k: 0 })?)
        }
        SC | HS | SP => {
            let ground = n;
            let mut sets = Vec::new();
            for _ in 0..p.items {
                let mut s: Vec<u32> = (0..ground as u32).filter(|_| rng.gen_bool(p.density)).collect();
                if s.is_empty() {
                    s.push(rng.gen_range(0..ground) as u32);
                }
                sets.push(s);
            }
            let system = SetSystem {
                elements: names("e", ground),
                sets,
            };
            let (k, exact) = match id {
                SP => (rng.gen_range(1..=2.min(p.items)) as u64, true),
                SC => (rng.gen_range(1..=p.items) as u64, false),
                _ => (rng.gen_range(1..=ground) as u64, false),
            };
            Instance::new(id, Payload::Sets { system, k, exact })
        }
        UFL | PCEN | PMED => {
            let nf = p.items.min(10);
            let data = FacilityData {
                facilities: names("f", nf),
                clients: names("c", n),
                open_cost: if id == UFL {
                    (0..nf).map(|_| rng.gen_range(0..=p.max_number)).collect()
                } else {
                    Vec::new()
                },
                service: (0..n)
                    .map(|_| (0..nf).map(|_| rng.gen_range(0..=p.max_number)).collect())
                    .collect(),
            };
            let pp = if id == UFL {
                None
            } else {
                Some(rng.gen_range(1..=nf) as u64)
            };
            // set k to the optimum plus a little slack so solution sets are small but nonempty
            let probe = Instance::new(
                id,
                Payload::Facility {
                    data,
                    p: pp,
                    k: u64::MAX / 4,
                },
            )?;
            let best = facility_optimum(&probe)?;
            let slack = rng.gen_range(0..=p.max_number / 4);
            Ok(probe.with_k(best + slack))
        }
        DHP | DHC => {
            if n < 2 {
                return Err(fail("need at least 2 vertices"));
            }
            let mut graph = random_digraph(n, p.density / 2.0, rng);
            let order = planted_order(n, rng);
            let plant = rng.gen_bool(0.75);
            if plant {
                for w in order.windows(2) {
                    ensure_arc(&mut graph, w[0], w[1]);
                }
                if id == DHC {
                    ensure_arc(&mut graph, order[n - 1], order[0]);
                }
            }
            if id == DHP {
                let (s, t) = (order[0], order[n - 1]);
                Instance::new(id, Payload::DiPath { graph, s, t })
            } else {
                Instance::new(id, Payload::DiCycle { graph })
            }
        }
        UHP | UHC => {
            if n < 3 {
                return Err(fail("need at least 3 vertices"));
            }
            let mut graph = random_graph(n, p.density / 2.0, rng);
            let order = planted_order(n, rng);
            if rng.gen_bool(0.75) {
                for w in order.windows(2) {
                    ensure_edge(&mut graph, w[0], w[1]);
                }
                if id == UHC {
                    ensure_edge(&mut graph, order[n - 1], order[0]);
                }
            }
            if id == UHP {
                let (s, t) = (order[0], order[n - 1]);
                Instance::new(id, Payload::UPath { graph, s, t })
            } else {
                Instance::new(id, Payload::UCycle { graph })
            }
        }
        TSP => {
            if n < 3 {
                return Err(fail("need at least 3 vertices"));
            }
            let mut graph = random_graph(n, p.density, rng);
            let order = planted_order(n, rng);
            for i in 0..n {
                ensure_edge(&mut graph, order[i], order[(i + 1) % n]);
            }
            let weights: Vec<u64> = graph.edges.iter().map(|_| rng.gen_range(1..=p.max_number)).collect();
            let probe = Instance::new(
                id,
                Payload::Tsp {
                    graph,
                    weights,
                    k: u64::MAX / 4,
                },
            )?;
            let best = min_weight(&probe)?;
            Ok(probe.with_k(best))
        }
        STT => {
            let graph = random_graph(n, p.density, rng);
            let weights: Vec<u64> = graph.edges.iter().map(|_| rng.gen_range(1..=p.max_number)).collect();
            let mut vs: Vec<u32> = (0..n as u32).collect();
            vs.shuffle(rng);
            vs.truncate(rng.gen_range(1..=3.min(n)));
            let probe = Instance::new(
                id,
                Payload::Steiner {
                    graph,
                    weights,
                    terminals: vs,
                    k: u64::MAX / 4,
                },
            )?;
            let best = min_weight(&probe)?;
            Ok(probe.with_k(best))
        }
        SS => {
            let numbers: Vec<BigUint> = (0..p.items).map(|_| big(rng.gen_range(1..=p.max_number))).collect();
            let target = if rng.gen_bool(0.75) {
                numbers.iter().filter(|_| rng.gen_bool(0.5)).sum()
            } else {
                big(rng.gen_range(0..=p.max_number * p.items as u64 / 2))
            };
            Instance::new(id, Payload::SubsetSum { numbers, target })
        }
        KS => {
            let prices: Vec<BigUint> = (0..p.items).map(|_| big(rng.gen_range(1..=p.max_number))).collect();
            let weights: Vec<BigUint> = (0..p.items).map(|_| big(rng.gen_range(1..=p.max_number))).collect();
            let total_w: BigUint = weights.iter().sum();
            let max_weight = total_w / 2u32;
            let pick: Vec<bool> = (0..p.items).map(|_| rng.gen_bool(0.4)).collect();
            let min_profit = prices.iter().zip(&pick).filter(|(_, &b)| b).map(|(x, _)| x).sum();
            Instance::new(
                id,
                Payload::Knapsack {
                    prices,
                    weights,
                    min_profit,
                    max_weight,
                },
            )
        }
        P => {
            let numbers: Vec<BigUint> = (0..p.items).map(|_| big(rng.gen_range(1..=p.max_number))).collect();
            Instance::new(id, Payload::Partition { numbers })
        }
        TMS => {
            let jobs: Vec<BigUint> = (0..p.items).map(|_| big(rng.gen_range(1..=p.max_number))).collect();
            let total: BigUint = jobs.iter().sum();
            let deadline = (total + 1u32) / 2u32 + big(rng.gen_range(0..=2));
            Instance::new(id, Payload::Scheduling { jobs, deadline })
        }
        DM | ODM => {
            let q = n.max(1);
            // ODM: X is larger than Y and Z; the surplus is covered by singletons
            let extra_x = if id == ODM { rng.gen_range(0..=q.min(3)) } else { 0 };
            let m_x = q + extra_x;
            let mut triples = Vec::new();
            if rng.gen_bool(0.75) {
                let mut xs: Vec<u32> = (0..m_x as u32).collect();
                let mut ys: Vec<u32> = (0..q as u32).collect();
                let mut zs: Vec<u32> = (0..q as u32).collect();
                xs.shuffle(rng);
                ys.shuffle(rng);
                zs.shuffle(rng);
                for i in 0..q {
                    triples.push((xs[i], ys[i], zs[i]));
                }
            }
            for _ in 0..p.items {
                let t = (
                    rng.gen_range(0..m_x) as u32,
                    rng.gen_range(0..q) as u32,
                    rng.gen_range(0..q) as u32,
                );
                if !triples.contains(&t) {
                    triples.push(t);
                }
            }
            let m = Matching {
                x: names("x", m_x),
                y: names("y", q),
                z: names("z", q),
                triples,
            };
            if id == DM {
                return Instance::new(id, Payload::Dm { m });
            }
            let singletons: Vec<u32> = (0..m_x as u32).filter(|_| rng.gen_bool(0.5)).collect();
            let inst = Instance::new(
                id,
                Payload::Odm {
                    m,
                    singletons,
                    binding: Vec::new(),
                },
            )?;
            singletons_bind(&inst)?;
            Ok(inst)
        }
    }
}

/// Rejects ODM draws where one choice of singletons admits several matchings;
/// the binding the construction promises would not exist.
fn singletons_bind(inst: &Instance) -> Result<()> {
    let Payload::Odm { m, .. } = &inst.payload else {
        return Err(Error::Internal("odm payload expected".into()));
    };
    let nt = m.triples.len();
    let sols = enumerate_solutions(ProblemId::ODM, inst, &mut Budget::new(1_000_000))
        .map_err(|e| fail(format!("binding check: {e}")))?;
    let mut seen = std::collections::BTreeSet::new();
    for s in sols.iter() {
        let chosen: Vec<usize> = s.ones().filter(|&i| i >= nt).collect();
        if !seen.insert(chosen) {
            return Err(fail("a singleton choice admits two matchings"));
        }
    }
    Ok(())
}

fn facility_optimum(inst: &Instance) -> Result<u64> {
    let Payload::Facility { data, p, .. } = &inst.payload else {
        return Err(Error::Internal("facility payload expected".into()));
    };
    let nf = data.facilities.len();
    let mut best: Option<u128> = None;
    for mask in 1u32..(1u32 << nf) {
        let open: Vec<usize> = (0..nf).filter(|i| mask >> i & 1 == 1).collect();
        if p.is_some_and(|p| open.len() as u64 != p) {
            continue;
        }
        let nearest = data
            .service
            .iter()
            .map(|row| open.iter().map(|&f| row[f]).min().unwrap_or(0) as u128);
        let cost = match inst.kind {
            ProblemId::UFL => open.iter().map(|&f| data.open_cost[f] as u128).sum::<u128>() + nearest.sum::<u128>(),
            ProblemId::PCEN => nearest.max().unwrap_or(0),
            _ => nearest.sum::<u128>(),
        };
        best = Some(best.map_or(cost, |b| b.min(cost)));
    }
    best.map(|b| b as u64)
        .ok_or_else(|| fail("no feasible facility subset"))
}

/// Least weight bound admitting a solution, by enumerating under a loose bound.
fn min_weight(inst: &Instance) -> Result<u64> {
    let mut budget = Budget::default();
    let set = enumerate_solutions(inst.kind, inst, &mut budget).map_err(|e| fail(e.to_string()))?;
    let weights = match &inst.payload {
        Payload::Tsp { weights, .. } | Payload::Steiner { weights, .. } => weights,
        _ => return Err(Error::Internal("weighted payload expected".into())),
    };
    let best = set
        .iter()
        .map(|s| s.ones().map(|i| weights[i]).sum::<u64>())
        .min()
        .ok_or_else(|| fail("no feasible structure drawn"))?;
    // sanity: the optimum must be attainable under the tightened bound
    let tight = inst.with_k(best);
    if enumerate_with_limit(tight.kind, &tight, &mut budget, 1)?.is_empty() {
        return Err(Error::Internal("optimum not attainable".into()));
    }
    Ok(best)
}
