//! The reduction map: problems as nodes, registered reductions as edges,
//! plus transitive chains and DOT/JSON export.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::problems::ProblemId;
use crate::reductions::{find, registry, Claims, Reduction, ReductionDef};

/// Chains longer than this are never returned.
pub const MAX_CHAIN: usize = 6;

/// Properties a chain must carry; `false` means "don't care".
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Require {
    pub ssp: bool,
    pub spr: bool,
}

impl Require {
    pub const NONE: Require = Require { ssp: false, spr: false };
    pub const BOTH: Require = Require { ssp: true, spr: true };

    pub fn accepts(self, c: Claims) -> bool {
        (!self.ssp || c.ssp) && (!self.spr || c.spr)
    }
}

impl std::str::FromStr for Require {
    type Err = Error;

    /// Comma-separated subset of `ssp,spr`; empty means no requirement.
    fn from_str(s: &str) -> Result<Require> {
        let mut r = Require::NONE;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.to_ascii_lowercase().as_str() {
                "ssp" => r.ssp = true,
                "spr" => r.spr = true,
                other => return Err(Error::validation("require", format!("unknown property {other:?}"))),
            }
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionGraph {
    pub nodes: BTreeSet<ProblemId>,
    /// Registry order.
    pub edges: Vec<&'static ReductionDef>,
}

/// A composed chain with the ids it was built from.
#[derive(Debug, Clone)]
pub struct DerivedEdge {
    pub source: ProblemId,
    pub target: ProblemId,
    pub chain: Vec<&'static str>,
    pub claims: Claims,
}

impl DerivedEdge {
    pub fn reduction(&self) -> Result<Reduction> {
        Reduction::by_id(&self.chain.join("+"))
    }
}

impl Default for ReductionGraph {
    fn default() -> Self {
        ReductionGraph::full()
    }
}

impl ReductionGraph {
    /// Every problem kind and every registered reduction.
    pub fn full() -> ReductionGraph {
        ReductionGraph {
            nodes: ProblemId::ALL.iter().copied().collect(),
            edges: registry().iter().collect(),
        }
    }

    /// Graph over the given edges; nodes are their endpoints.
    pub fn from_edges(edges: Vec<&'static ReductionDef>) -> ReductionGraph {
        let nodes = edges.iter().flat_map(|d| [d.source, d.target]).collect();
        ReductionGraph { nodes, edges }
    }

    /// Keeps the edges whose claims satisfy `require`, with all nodes retained.
    pub fn filtered(&self, require: Require) -> ReductionGraph {
        ReductionGraph {
            nodes: self.nodes.clone(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|d| require.accepts(d.claims))
                .collect(),
        }
    }

    /// All acyclic chains from `source` to `target` of 1..=MAX_CHAIN steps whose
    /// conjoined claims satisfy `require`, shortest first, then by ids.
    pub fn transitive_paths(
        &self,
        source: ProblemId,
        target: ProblemId,
        require: Require,
        include_demos: bool,
    ) -> Vec<Vec<&'static ReductionDef>> {
        let mut out = Vec::new();
        let mut chain = Vec::new();
        let mut visited = BTreeSet::from([source]);
        self.walk(
            source,
            target,
            require,
            include_demos,
            &mut visited,
            &mut chain,
            &mut out,
        );
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| ids(a).cmp(&ids(b))));
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        at: ProblemId,
        target: ProblemId,
        require: Require,
        include_demos: bool,
        visited: &mut BTreeSet<ProblemId>,
        chain: &mut Vec<&'static ReductionDef>,
        out: &mut Vec<Vec<&'static ReductionDef>>,
    ) {
        if chain.len() == MAX_CHAIN {
            return;
        }
        for &d in &self.edges {
            if d.source != at || (d.demo && !include_demos) || !require.accepts(d.claims) {
                continue;
            }
            // claims are conjunctive, so pruning per edge is exact
            if d.target == target {
                chain.push(d);
                out.push(chain.clone());
                chain.pop();
            } else if visited.insert(d.target) {
                chain.push(d);
                self.walk(d.target, target, require, include_demos, visited, chain, out);
                chain.pop();
                visited.remove(&d.target);
            }
        }
    }

    /// Shortest composed chain (two or more steps) for every ordered pair that
    /// has no direct edge satisfying `require`.
    pub fn derived_edges(&self, require: Require) -> Vec<DerivedEdge> {
        let mut out = Vec::new();
        for &s in &self.nodes {
            for &t in &self.nodes {
                if s == t {
                    continue;
                }
                let direct = self
                    .edges
                    .iter()
                    .any(|d| d.source == s && d.target == t && !d.demo && require.accepts(d.claims));
                if direct {
                    continue;
                }
                if let Some(best) = self.transitive_paths(s, t, require, false).into_iter().next() {
                    out.push(DerivedEdge {
                        source: s,
                        target: t,
                        claims: conjoin(&best),
                        chain: best.iter().map(|d| d.id).collect(),
                    });
                }
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph compendium {\n  rankdir=LR;\n  node [shape=box];\n");
        for n in &self.nodes {
            let _ = writeln!(s, "  \"{}\" [label=\"{}\"];", n.as_str(), n.label());
        }
        for d in &self.edges {
            let mut attrs = format!("label=\"{}\", style={}", d.id, edge_style(d.claims));
            if d.demo {
                attrs.push_str(", color=red");
            }
            let _ = writeln!(s, "  \"{}\" -> \"{}\" [{attrs}];", d.source.as_str(), d.target.as_str());
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> Value {
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .map(|n| json!({ "id": n.as_str(), "label": n.label() }))
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|d| {
                json!({
                    "id": d.id,
                    "source": d.source.as_str(),
                    "target": d.target.as_str(),
                    "claims": { "ssp": d.claims.ssp, "spr": d.claims.spr },
                    "demo": d.demo,
                    "style": edge_style(d.claims),
                })
            })
            .collect();
        json!({ "nodes": nodes, "edges": edges })
    }

    /// Rebuilds a graph from [`ReductionGraph::to_json`] output. Edge ids must
    /// be registered and agree with the registry on endpoints and claims.
    pub fn from_json(v: &Value) -> Result<ReductionGraph> {
        let field = |v: &Value, path: String| -> Result<String> {
            v.as_str().map(str::to_string).ok_or(Error::Schema {
                path,
                msg: "expected a string".into(),
            })
        };
        let list = |key: &str| -> Result<Vec<Value>> {
            v.get(key).and_then(Value::as_array).cloned().ok_or(Error::Schema {
                path: key.to_string(),
                msg: "expected an array".into(),
            })
        };
        let mut nodes = BTreeSet::new();
        for (i, n) in list("nodes")?.iter().enumerate() {
            let id = field(&n["id"], format!("nodes[{i}].id"))?;
            nodes.insert(id.parse::<ProblemId>()?);
        }
        let mut edges = Vec::new();
        for (i, e) in list("edges")?.iter().enumerate() {
            let d = find(&field(&e["id"], format!("edges[{i}].id"))?)?;
            let src: ProblemId = field(&e["source"], format!("edges[{i}].source"))?.parse()?;
            let tgt: ProblemId = field(&e["target"], format!("edges[{i}].target"))?.parse()?;
            let claims = Claims {
                ssp: e["claims"]["ssp"].as_bool().unwrap_or(false),
                spr: e["claims"]["spr"].as_bool().unwrap_or(false),
            };
            if src != d.source || tgt != d.target || claims != d.claims {
                return Err(Error::validation(
                    format!("edges[{i}]"),
                    format!("disagrees with registered {}", d.id),
                ));
            }
            if !nodes.contains(&src) || !nodes.contains(&tgt) {
                return Err(Error::validation(format!("edges[{i}]"), "endpoint not among the nodes"));
            }
            edges.push(d);
        }
        Ok(ReductionGraph { nodes, edges })
    }

    /// Outgoing edge count per node, for summaries.
    pub fn out_degrees(&self) -> BTreeMap<ProblemId, usize> {
        let mut m: BTreeMap<ProblemId, usize> = self.nodes.iter().map(|&n| (n, 0)).collect();
        for d in &self.edges {
            *m.entry(d.source).or_default() += 1;
        }
        m
    }
}

/// solid: ssp and spr; dotted: ssp only; dashed: spr only.
pub fn edge_style(c: Claims) -> &'static str {
    match (c.ssp, c.spr) {
        (true, true) => "solid",
        (true, false) => "dotted",
        (false, true) => "dashed",
        (false, false) => "invis",
    }
}

pub fn conjoin(chain: &[&ReductionDef]) -> Claims {
    chain.iter().fold(crate::reductions::YES_YES, |acc, d| Claims {
        ssp: acc.ssp && d.claims.ssp,
        spr: acc.spr && d.claims.spr,
    })
}

fn ids(chain: &[&ReductionDef]) -> Vec<&'static str> {
    chain.iter().map(|d| d.id).collect()
}

/// Chain ids joined with ", " as printed by `graph --path`.
pub fn format_chain(chain: &[&ReductionDef]) -> String {
    ids(chain).join(", ")
}

/// Materializes a chain as a composed reduction.
pub fn materialize(chain: &[&'static ReductionDef]) -> Result<Reduction> {
    let mut it = chain.iter();
    let first = it.next().ok_or_else(|| Error::invalid("empty chain"))?;
    it.try_fold(Reduction::from(*first), |acc, d| acc.compose(&Reduction::from(*d)))
}
