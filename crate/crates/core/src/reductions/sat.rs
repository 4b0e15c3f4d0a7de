//! Reductions out of SAT, 3SAT, exact 3SAT and 1-in-3SAT, plus ODM to DM.

use std::collections::HashMap;

use num_bigint::BigUint;

use super::{embed_members, CnfBuilder};
use crate::error::{Error, Result};
use crate::model::Element;
use crate::problems::{Cnf, Digraph, Graph, Instance, Lit, Matching, Namer, Payload, ProblemId};

fn cnf(inst: &Instance) -> Result<&Cnf> {
    inst.cnf_payload()
        .ok_or_else(|| Error::Internal(format!("{} instance has no CNF payload", inst.kind)))
}

/// Truth values read off a literal-set solution: a variable is true when its positive literal is in.
fn values(n: usize, s: &[Element]) -> Vec<bool> {
    let mut v = vec![false; n];
    for e in s {
        if let Element::Lit { var, neg: false } = e {
            if let Some(x) = v.get_mut(*var as usize) {
                *x = true;
            }
        }
    }
    v
}

fn holds(v: &[bool], l: Lit) -> bool {
    v[l.var as usize] != l.neg
}

fn assignment(v: &[bool]) -> Vec<Element> {
    v.iter().enumerate().map(|(i, &b)| Element::lit(i as u32, !b)).collect()
}

fn require_three(c: &Cnf) -> Result<()> {
    match c.clauses.iter().position(|cl| cl.len() != 3) {
        Some(i) => Err(Error::UnsupportedShape(format!(
            "clause {} does not have 3 literals",
            i + 1
        ))),
        None => Ok(()),
    }
}

/// Source literals keep their variable indices in CNF targets.
pub(crate) fn embed_same_literals(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    Ok(src.universe()?.elements().to_vec())
}

// ---- SAT to 3SAT ----

fn split_clauses(src: &Instance, guards: bool) -> Result<Instance> {
    let c = cnf(src)?;
    let mut b = CnfBuilder::new(c);
    for (j, cl) in c.clauses.iter().enumerate() {
        let n = cl.len();
        if n <= 3 {
            b.clause(cl.clone());
            continue;
        }
        let h: Vec<u32> = (1..=n - 3).map(|i| b.helper(&format!("h{}^{i}", j + 1))).collect();
        b.clause(vec![cl[0], cl[1], Lit::pos(h[0])]);
        for i in 1..n - 3 {
            b.clause(vec![Lit::neg(h[i - 1]), cl[i + 1], Lit::pos(h[i])]);
        }
        b.clause(vec![Lit::neg(h[n - 4]), cl[n - 2], cl[n - 1]]);
        if guards {
            // a true residual literal forces the helper on
            for (i, &hi) in h.iter().enumerate() {
                for &l in &cl[i + 2..] {
                    b.clause(vec![l.negated(), Lit::pos(hi)]);
                }
            }
        }
    }
    b.finish(ProblemId::TSAT)
}

pub(crate) fn sat_to_tsat_naive(src: &Instance) -> Result<Instance> {
    split_clauses(src, false)
}

pub(crate) fn sat_to_tsat(src: &Instance) -> Result<Instance> {
    split_clauses(src, true)
}

/// Helper h_i of a split clause equals the disjunction of the literals after it.
pub(crate) fn lift_sat_to_tsat(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let c = cnf(src)?;
    let mut v = values(c.num_vars(), s);
    for cl in &c.clauses {
        for i in 0..cl.len().saturating_sub(3) {
            let on = cl[i + 2..].iter().any(|&l| holds(&v, l));
            v.push(on);
        }
    }
    debug_assert_eq!(v.len(), cnf(tgt)?.num_vars());
    Ok(assignment(&v))
}

// ---- 3SAT to exact 3SAT ----

pub(crate) fn tsat_to_esat(src: &Instance) -> Result<Instance> {
    let c = cnf(src)?;
    let mut b = CnfBuilder::new(c);
    let h = [b.helper("h1"), b.helper("h2"), b.helper("h3")];
    for cl in &c.clauses {
        let mut vars: Vec<u32> = cl.iter().map(|l| l.var).collect();
        vars.sort_unstable();
        vars.dedup();
        if vars.len() < cl.len() {
            // contains x and ~x: always satisfied
            continue;
        }
        let mut out = cl.clone();
        for &hi in &h[..3 - cl.len()] {
            out.push(Lit::neg(hi));
        }
        b.clause(out);
    }
    for pattern in (1..8u32).rev() {
        b.clause(
            (0..3)
                .map(|i| Lit {
                    var: h[i],
                    neg: pattern & (4 >> i) == 0,
                })
                .collect(),
        );
    }
    b.finish(ProblemId::ESAT)
}

pub(crate) fn lift_tsat_to_esat(src: &Instance, _tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let mut v = values(cnf(src)?.num_vars(), s);
    v.extend([true; 3]);
    Ok(assignment(&v))
}

// ---- exact 3SAT to 1-in-3SAT ----

/// Helper order within a clause block: z1..z3, h1..h3, g1..g3.
fn osat_gadget(c: [Lit; 3], w: &[u32; 9]) -> [[Lit; 3]; 7] {
    let p = |i: usize| Lit::pos(w[i]);
    let (z1, z2, z3, h1, h2, h3, g1, g2, g3) = (p(0), p(1), p(2), p(3), p(4), p(5), p(6), p(7), p(8));
    [
        [c[0].negated(), z1, h1],
        [c[1].negated(), z2, h2],
        [c[2].negated(), z3, h3],
        [z1, z2, z3],
        [z1, h2, g1],
        [z2, h3, g2],
        [z1, h3, g3],
    ]
}

pub(crate) fn esat_to_osat(src: &Instance) -> Result<Instance> {
    let c = cnf(src)?;
    let mut b = CnfBuilder::new(c);
    for (j, cl) in c.clauses.iter().enumerate() {
        let mut w = [0u32; 9];
        for (i, base) in ["z1", "z2", "z3", "h1", "h2", "h3", "g1", "g2", "g3"]
            .iter()
            .enumerate()
        {
            w[i] = b.helper(&format!("{base}^{}", j + 1));
        }
        for g in osat_gadget([cl[0], cl[1], cl[2]], &w) {
            b.clause(g.to_vec());
        }
    }
    b.finish(ProblemId::OSAT)
}

/// Per clause, the unique helper assignment making every gadget clause 1-in-3.
pub(crate) fn lift_esat_to_osat(src: &Instance, _tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let c = cnf(src)?;
    let n = c.num_vars();
    let mut v = values(n, s);
    for (j, cl) in c.clauses.iter().enumerate() {
        let base = (n + 9 * j) as u32;
        let w: [u32; 9] = std::array::from_fn(|i| base + i as u32);
        let gadget = osat_gadget([cl[0], cl[1], cl[2]], &w);
        let mut found = None;
        for mask in 0u32..512 {
            let val = |l: Lit| {
                if (l.var as usize) < n {
                    holds(&v, l)
                } else {
                    (mask >> (l.var - base) & 1 == 1) != l.neg
                }
            };
            if gadget.iter().all(|g| g.iter().filter(|&&l| val(l)).count() == 1) {
                if found.is_some() {
                    return Err(Error::Internal(format!(
                        "clause {} admits two helper assignments",
                        j + 1
                    )));
                }
                found = Some(mask);
            }
        }
        let mask = found.ok_or_else(|| Error::NotASolution(format!("clause {} is not satisfied", j + 1)))?;
        v.extend((0..9).map(|i| mask >> i & 1 == 1));
    }
    Ok(assignment(&v))
}

// ---- clause-triangle graphs ----

/// Literal vertices (2 per variable) then one vertex per clause position.
fn triangle_graph(c: &Cnf, join_negation: bool) -> Graph {
    let mut namer = Namer::default();
    let mut g = Graph::default();
    for v in &c.vars {
        let a = g.add_vertex(namer.fresh(v.clone()));
        let b = g.add_vertex(namer.fresh(format!("~{v}")));
        g.add_edge(a, b);
    }
    let base = g.n() as u32;
    for (j, cl) in c.clauses.iter().enumerate() {
        for p in 0..cl.len() {
            g.add_vertex(namer.fresh(format!("c{}^{}", j + 1, p + 1)));
        }
    }
    let mut next = base;
    for cl in &c.clauses {
        let len = cl.len() as u32;
        for p in 0..len {
            for q in p + 1..len {
                g.add_edge(next + p, next + q);
            }
        }
        for (p, &l) in cl.iter().enumerate() {
            let target = if join_negation { l.negated() } else { l };
            g.add_edge(next + p as u32, target.index() as u32);
        }
        next += len;
    }
    g
}

fn mis_instance(c: &Cnf) -> Result<Instance> {
    let k = (c.num_vars() + c.clauses.len()) as u64;
    Instance::new(
        ProblemId::MIS,
        Payload::Graph {
            graph: triangle_graph(c, true),
            k,
        },
    )
}

fn mvc_instance(c: &Cnf) -> Result<Instance> {
    let k = (c.num_vars() + 2 * c.clauses.len()) as u64;
    Instance::new(
        ProblemId::MVC,
        Payload::Graph {
            graph: triangle_graph(c, false),
            k,
        },
    )
}

pub(crate) fn esat_to_mis(src: &Instance) -> Result<Instance> {
    mis_instance(cnf(src)?)
}

pub(crate) fn esat_to_mvc(src: &Instance) -> Result<Instance> {
    mvc_instance(cnf(src)?)
}

pub(crate) fn osat_to_mis(src: &Instance) -> Result<Instance> {
    let c = cnf(src)?;
    require_three(c)?;
    mis_instance(c)
}

pub(crate) fn osat_to_mvc(src: &Instance) -> Result<Instance> {
    let c = cnf(src)?;
    require_three(c)?;
    mvc_instance(c)
}

pub(crate) fn embed_literal_vertices(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    let n = cnf(src)?.num_vars() as u32;
    Ok((0..2 * n).map(Element::Vertex).collect())
}

/// Literal vertices of S plus the clause vertices whose literal is true (MIS) or false (MVC).
fn lift_triangle(src: &Instance, s: &[Element], want_true: bool) -> Result<Vec<Element>> {
    let c = cnf(src)?;
    let v = values(c.num_vars(), s);
    let mut out: Vec<Element> = s
        .iter()
        .filter_map(|e| match e {
            Element::Lit { var, neg } => Some(Element::Vertex(2 * var + *neg as u32)),
            _ => None,
        })
        .collect();
    let mut next = 2 * c.num_vars() as u32;
    for cl in &c.clauses {
        for &l in cl {
            if holds(&v, l) == want_true {
                out.push(Element::Vertex(next));
            }
            next += 1;
        }
    }
    Ok(out)
}

pub(crate) fn lift_osat_to_mis(src: &Instance, _tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    lift_triangle(src, s, true)
}

pub(crate) fn lift_osat_to_mvc(src: &Instance, _tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    lift_triangle(src, s, false)
}

// ---- exact 3SAT to dominating set ----

pub(crate) fn esat_to_mds(src: &Instance) -> Result<Instance> {
    let c = cnf(src)?;
    let mut namer = Namer::default();
    let mut g = Graph::default();
    for v in &c.vars {
        let l = g.add_vertex(namer.fresh(v.clone()));
        let nl = g.add_vertex(namer.fresh(format!("~{v}")));
        let x1 = g.add_vertex(namer.fresh(format!("{v}^1")));
        let x2 = g.add_vertex(namer.fresh(format!("{v}^2")));
        g.add_edge(l, nl);
        for x in [x1, x2] {
            g.add_edge(l, x);
            g.add_edge(nl, x);
        }
    }
    for (j, cl) in c.clauses.iter().enumerate() {
        let cv = g.add_vertex(namer.fresh(format!("C{}", j + 1)));
        for &l in cl {
            g.add_edge(4 * l.var + l.neg as u32, cv);
        }
    }
    Instance::new(
        ProblemId::MDS,
        Payload::Graph {
            graph: g,
            k: c.num_vars() as u64,
        },
    )
}

pub(crate) fn embed_mds(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    let n = cnf(src)?.num_vars() as u32;
    Ok((0..n)
        .flat_map(|i| [Element::Vertex(4 * i), Element::Vertex(4 * i + 1)])
        .collect())
}

pub(crate) fn lift_esat_to_mds(src: &Instance, tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    embed_members(&embed_mds(src, tgt)?, &src.universe()?, s)
}

// ---- exact 3SAT to clique ----

/// Largest target the labelled-assignment construction will build.
const CQ_VERTEX_LIMIT: usize = 1 << 16;

/// Assignments as masks with variable 1 as the most significant bit.
fn satisfying_labels(c: &Cnf, cl: &[Lit]) -> Vec<u64> {
    let n = c.num_vars();
    (0..1u64 << n)
        .filter(|&m| cl.iter().any(|l| (m >> (n - 1 - l.var as usize) & 1 == 1) != l.neg))
        .collect()
}

fn cq_labels(c: &Cnf) -> Result<Vec<Vec<u64>>> {
    let n = c.num_vars();
    let m = c.clauses.len();
    if m == 0 {
        return Err(Error::UnsupportedShape(
            "the clique construction needs at least one clause".into(),
        ));
    }
    if n > 24 || (7usize << (n - 3)) * m > CQ_VERTEX_LIMIT {
        return Err(Error::UnsupportedShape(format!(
            "{n} variables and {m} clauses give more than {CQ_VERTEX_LIMIT} clique vertices"
        )));
    }
    Ok(c.clauses.iter().map(|cl| satisfying_labels(c, cl)).collect())
}

pub(crate) fn esat_to_cq(src: &Instance) -> Result<Instance> {
    let c = cnf(src)?;
    let n = c.num_vars();
    let labels = cq_labels(c)?;
    let mut g = Graph::default();
    let mut owner = Vec::new();
    for (j, ls) in labels.iter().enumerate() {
        for &m in ls {
            let bits: String = (0..n)
                .map(|i| if m >> (n - 1 - i) & 1 == 1 { '1' } else { '0' })
                .collect();
            g.add_vertex(format!("C{}:{bits}", j + 1));
            owner.push((j, m));
        }
    }
    for a in 0..owner.len() {
        for b in a + 1..owner.len() {
            if owner[a].0 != owner[b].0 && owner[a].1 == owner[b].1 {
                g.add_edge(a as u32, b as u32);
            }
        }
    }
    Instance::new(
        ProblemId::CQ,
        Payload::Graph {
            graph: g,
            k: c.clauses.len() as u64,
        },
    )
}

pub(crate) fn lift_esat_to_cq(src: &Instance, _tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let c = cnf(src)?;
    let n = c.num_vars();
    let v = values(n, s);
    let mask = v.iter().fold(0u64, |acc, &b| acc << 1 | b as u64);
    let mut out = Vec::new();
    let mut base = 0usize;
    for ls in cq_labels(c)? {
        let i = ls
            .binary_search(&mask)
            .map_err(|_| Error::NotASolution("assignment falsifies a clause".into()))?;
        out.push(Element::Vertex((base + i) as u32));
        base += ls.len();
    }
    Ok(out)
}

/// Any clique of size |C| carries one label; read it off the first vertex.
pub(crate) fn unlift_esat_to_cq(src: &Instance, _tgt: &Instance, t: &[Element]) -> Result<Vec<Element>> {
    let c = cnf(src)?;
    let n = c.num_vars();
    let first = match t.first() {
        Some(Element::Vertex(v)) => *v as usize,
        _ => return Err(Error::NotASolution("empty clique".into())),
    };
    let mut base = 0usize;
    for ls in cq_labels(c)? {
        if first < base + ls.len() {
            let m = ls[first - base];
            let v: Vec<bool> = (0..n).map(|i| m >> (n - 1 - i) & 1 == 1).collect();
            return Ok(assignment(&v));
        }
        base += ls.len();
    }
    Err(Error::ElementNotInUniverse(format!("vertex {first}")))
}

// ---- exact 3SAT to subset sum ----

pub(crate) fn esat_to_ss(src: &Instance) -> Result<Instance> {
    let c = cnf(src)?;
    let n = c.num_vars();
    let m = c.clauses.len();
    let bit = |p: usize| BigUint::from(1u8) << p;
    let var_bit = |i: usize| bit(3 * m + n - 1 - i);
    let block = |j: usize| 3 * (m - 1 - j);
    let mut numbers = Vec::with_capacity(2 * n + 2 * m);
    for i in 0..n {
        for neg in [false, true] {
            let mut a = var_bit(i);
            for (j, cl) in c.clauses.iter().enumerate() {
                if cl.contains(&Lit { var: i as u32, neg }) {
                    a += bit(block(j));
                }
            }
            numbers.push(a);
        }
    }
    for j in 0..m {
        numbers.push(bit(block(j)));
        numbers.push(bit(block(j) + 1));
    }
    let target = (0..n).map(var_bit).sum::<BigUint>() + (0..m).map(|j| bit(block(j) + 2)).sum::<BigUint>();
    Instance::new(ProblemId::SS, Payload::SubsetSum { numbers, target })
}

pub(crate) fn embed_ss(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    let n = cnf(src)?.num_vars() as u32;
    Ok((0..2 * n).map(Element::Num).collect())
}

/// Slack per clause tops the block up to 4: three true literals take 1, two take 2, one takes both.
pub(crate) fn lift_esat_to_ss(src: &Instance, _tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let c = cnf(src)?;
    let n = c.num_vars();
    let v = values(n, s);
    let mut out: Vec<Element> = assignment(&v)
        .into_iter()
        .map(|e| match e {
            Element::Lit { var, neg } => Element::Num(2 * var + neg as u32),
            other => other,
        })
        .collect();
    for (j, cl) in c.clauses.iter().enumerate() {
        let base = (2 * n + 2 * j) as u32;
        match cl.iter().filter(|&&l| holds(&v, l)).count() {
            3 => out.push(Element::Num(base)),
            2 => out.push(Element::Num(base + 1)),
            1 => out.extend([Element::Num(base), Element::Num(base + 1)]),
            _ => return Err(Error::NotASolution(format!("clause {} is not satisfied", j + 1))),
        }
    }
    Ok(out)
}

// ---- exact 3SAT to directed Hamiltonian path and cycle ----

struct DhpLayout {
    n: usize,
    m: usize,
    len: usize,
}

impl DhpLayout {
    fn new(c: &Cnf) -> Result<DhpLayout> {
        if c.num_vars() == 0 {
            return Err(Error::UnsupportedShape(
                "the Hamiltonian path construction needs a variable".into(),
            ));
        }
        Ok(DhpLayout {
            n: c.num_vars(),
            m: c.clauses.len(),
            len: 4 * c.clauses.len().max(1),
        })
    }

    fn s(&self) -> u32 {
        0
    }

    /// Position p is 1-based along the variable path.
    fn x(&self, i: usize, p: usize) -> u32 {
        (1 + i * self.len + p - 1) as u32
    }

    fn t(&self) -> u32 {
        (1 + self.n * self.len) as u32
    }

    fn c(&self, j: usize, q: usize) -> u32 {
        (2 + self.n * self.len + 3 * j + q) as u32
    }

    /// Entry and exit positions of literal `l` in clause j (0-based).
    fn detour(&self, j: usize, l: Lit) -> (usize, usize) {
        let (a, b) = (4 * (j + 1) - 2, 4 * (j + 1) - 1);
        if l.neg {
            (b, a)
        } else {
            (a, b)
        }
    }
}

fn dhp_graph(c: &Cnf, lay: &DhpLayout) -> Digraph {
    let mut namer = Namer::default();
    let mut g = Digraph::default();
    g.add_vertex(namer.fresh("s"));
    for v in &c.vars {
        for p in 1..=lay.len {
            g.add_vertex(namer.fresh(format!("{v}^{p}")));
        }
    }
    g.add_vertex(namer.fresh("t"));
    for j in 0..lay.m {
        for q in 1..=3 {
            g.add_vertex(namer.fresh(format!("c{}^{q}", j + 1)));
        }
    }
    let mut removed = std::collections::HashSet::new();
    for (j, cl) in c.clauses.iter().enumerate() {
        for &l in cl {
            let (a, b) = lay.detour(j, l);
            removed.insert((lay.x(l.var as usize, a), lay.x(l.var as usize, b)));
        }
    }
    for i in 0..lay.n {
        for p in 1..lay.len {
            for arc in [(lay.x(i, p), lay.x(i, p + 1)), (lay.x(i, p + 1), lay.x(i, p))] {
                if !removed.contains(&arc) {
                    g.add_arc(arc.0, arc.1);
                }
            }
        }
    }
    let last = lay.len;
    g.add_arc(lay.s(), lay.x(0, 1));
    g.add_arc(lay.s(), lay.x(0, last));
    for i in 0..lay.n - 1 {
        for (p, q) in [(1, 1), (last, last), (1, last), (last, 1)] {
            g.add_arc(lay.x(i, p), lay.x(i + 1, q));
        }
    }
    g.add_arc(lay.x(lay.n - 1, 1), lay.t());
    g.add_arc(lay.x(lay.n - 1, last), lay.t());
    for j in 0..lay.m {
        for q in 0..3 {
            g.add_arc(lay.c(j, q), lay.c(j, (q + 1) % 3));
        }
    }
    for (j, cl) in c.clauses.iter().enumerate() {
        for (p, &l) in cl.iter().enumerate() {
            let (a, b) = lay.detour(j, l);
            let i = l.var as usize;
            g.add_arc(lay.x(i, a), lay.c(j, p));
            for q in 0..3 {
                g.add_arc(lay.c(j, q), lay.x(i, b));
            }
        }
    }
    g
}

pub(crate) fn esat_to_dhp(src: &Instance) -> Result<Instance> {
    let c = cnf(src)?;
    let lay = DhpLayout::new(c)?;
    let graph = dhp_graph(c, &lay);
    Instance::new(
        ProblemId::DHP,
        Payload::DiPath {
            graph,
            s: lay.s(),
            t: lay.t(),
        },
    )
}

pub(crate) fn esat_to_dhc(src: &Instance) -> Result<Instance> {
    let c = cnf(src)?;
    let lay = DhpLayout::new(c)?;
    let mut graph = dhp_graph(c, &lay);
    graph.add_arc(lay.t(), lay.s());
    Instance::new(ProblemId::DHC, Payload::DiCycle { graph })
}

/// A true variable walks its path left to right, so its first arc is (x^1, x^2).
pub(crate) fn embed_dhp(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    let c = cnf(src)?;
    let lay = DhpLayout::new(c)?;
    Ok((0..lay.n)
        .flat_map(|i| {
            [
                Element::Arc(lay.x(i, 1), lay.x(i, 2)),
                Element::Arc(lay.x(i, 2), lay.x(i, 1)),
            ]
        })
        .collect())
}

/// Vertex sequence of the lifted path from s to t.
fn dhp_walk(c: &Cnf, lay: &DhpLayout, v: &[bool]) -> Result<Vec<u32>> {
    // clause segments hang off the entry position of each true literal
    let mut detours: HashMap<(usize, usize), Vec<u32>> = HashMap::new();
    for (j, cl) in c.clauses.iter().enumerate() {
        let truth: Vec<bool> = cl.iter().map(|&l| holds(v, l)).collect();
        if !truth.iter().any(|&b| b) {
            return Err(Error::NotASolution(format!("clause {} is not satisfied", j + 1)));
        }
        for p in 0..3 {
            if !truth[p] {
                continue;
            }
            let mut seg = vec![lay.c(j, p)];
            let mut q = (p + 1) % 3;
            while !truth[q] {
                seg.push(lay.c(j, q));
                q = (q + 1) % 3;
            }
            let (a, _) = lay.detour(j, cl[p]);
            detours.insert((cl[p].var as usize, a), seg);
        }
    }
    let mut walk = vec![lay.s()];
    for (i, &val) in v.iter().enumerate() {
        let order: Vec<usize> = if val {
            (1..=lay.len).collect()
        } else {
            (1..=lay.len).rev().collect()
        };
        for p in order {
            walk.push(lay.x(i, p));
            if let Some(seg) = detours.get(&(i, p)) {
                walk.extend_from_slice(seg);
            }
        }
    }
    walk.push(lay.t());
    Ok(walk)
}

fn walk_arcs(walk: &[u32]) -> Vec<Element> {
    walk.windows(2).map(|w| Element::Arc(w[0], w[1])).collect()
}

pub(crate) fn lift_esat_to_dhp(src: &Instance, _tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let c = cnf(src)?;
    let lay = DhpLayout::new(c)?;
    Ok(walk_arcs(&dhp_walk(c, &lay, &values(c.num_vars(), s))?))
}

pub(crate) fn lift_esat_to_dhc(src: &Instance, _tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let c = cnf(src)?;
    let lay = DhpLayout::new(c)?;
    let mut arcs = walk_arcs(&dhp_walk(c, &lay, &values(c.num_vars(), s))?);
    arcs.push(Element::Arc(lay.t(), lay.s()));
    Ok(arcs)
}

// ---- 1-in-3SAT to Steiner tree ----

/// Vertex indices: s = 0, then (l_i, ~l_i, v_i) per variable with v_n = t,
/// then per clause its terminal followed by the literal paths.
struct SttLayout {
    n: usize,
}

impl SttLayout {
    fn v(&self, i: usize) -> u32 {
        if i == 0 {
            0
        } else {
            (3 * i) as u32
        }
    }

    fn lit(&self, l: Lit) -> u32 {
        (3 * l.var as usize + 1 + l.neg as usize) as u32
    }

    fn clause_base(&self, j: usize) -> u32 {
        (3 * self.n + 1 + j * (1 + 3 * 2 * self.n)) as u32
    }

    /// Path vertex r (0-based) of position p in clause j.
    fn path(&self, j: usize, p: usize, r: usize) -> u32 {
        self.clause_base(j) + 1 + (p * 2 * self.n + r) as u32
    }
}

pub(crate) fn osat_to_stt(src: &Instance) -> Result<Instance> {
    let c = cnf(src)?;
    require_three(c)?;
    let n = c.num_vars();
    if n == 0 {
        return Err(Error::UnsupportedShape(
            "the Steiner tree construction needs a variable".into(),
        ));
    }
    let lay = SttLayout { n };
    let mut namer = Namer::default();
    let mut g = Graph::default();
    g.add_vertex(namer.fresh("s"));
    for (i, v) in c.vars.iter().enumerate() {
        g.add_vertex(namer.fresh(v.clone()));
        g.add_vertex(namer.fresh(format!("~{v}")));
        let name = if i + 1 == n {
            "t".to_string()
        } else {
            format!("v{}", i + 1)
        };
        g.add_vertex(namer.fresh(name));
    }
    let mut terminals = vec![lay.v(0), lay.v(n)];
    for j in 0..c.clauses.len() {
        terminals.push(g.add_vertex(namer.fresh(format!("C{}", j + 1))));
        for p in 0..3 {
            for r in 0..2 * n {
                g.add_vertex(namer.fresh(format!("c{}.{}^{}", j + 1, p + 1, r + 1)));
            }
        }
    }
    for i in 0..n {
        for neg in [false, true] {
            let l = lay.lit(Lit { var: i as u32, neg });
            g.add_edge(lay.v(i), l);
            g.add_edge(l, lay.v(i + 1));
        }
    }
    for (j, cl) in c.clauses.iter().enumerate() {
        for (p, &l) in cl.iter().enumerate() {
            g.add_edge(lay.lit(l), lay.path(j, p, 0));
            for r in 1..2 * n {
                g.add_edge(lay.path(j, p, r - 1), lay.path(j, p, r));
            }
            g.add_edge(lay.path(j, p, 2 * n - 1), lay.clause_base(j));
        }
    }
    let weights = vec![1; g.edges.len()];
    let k = (2 * n + c.clauses.len() * (2 * n + 1)) as u64;
    Instance::new(
        ProblemId::STT,
        Payload::Steiner {
            graph: g,
            weights,
            terminals,
            k,
        },
    )
}

pub(crate) fn embed_stt(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    let lay = SttLayout {
        n: cnf(src)?.num_vars(),
    };
    Ok((0..lay.n as u32)
        .flat_map(|i| [Lit::pos(i), Lit::neg(i)])
        .map(|l| Element::edge(lay.v(l.var as usize), lay.lit(l)))
        .collect())
}

/// Chain through the true literals plus the path of each clause's true literal.
pub(crate) fn lift_osat_to_stt(src: &Instance, _tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let c = cnf(src)?;
    let n = c.num_vars();
    let lay = SttLayout { n };
    let v = values(n, s);
    let mut out = Vec::new();
    for (i, &val) in v.iter().enumerate() {
        let l = lay.lit(Lit {
            var: i as u32,
            neg: !val,
        });
        out.push(Element::edge(lay.v(i), l));
        out.push(Element::edge(l, lay.v(i + 1)));
    }
    for (j, cl) in c.clauses.iter().enumerate() {
        let p = cl
            .iter()
            .position(|&l| holds(&v, l))
            .ok_or_else(|| Error::NotASolution(format!("clause {} is not satisfied", j + 1)))?;
        out.push(Element::edge(lay.lit(cl[p]), lay.path(j, p, 0)));
        for r in 1..2 * n {
            out.push(Element::edge(lay.path(j, p, r - 1), lay.path(j, p, r)));
        }
        out.push(Element::edge(lay.path(j, p, 2 * n - 1), lay.clause_base(j)));
    }
    Ok(out)
}

// ---- 1-in-3SAT to one-sided 3D matching ----

/// Index bookkeeping for the wheel construction.
struct OdmLayout {
    /// Copies per variable; at least 1 so unused variables still get a wheel.
    copies: Vec<usize>,
    /// Occurrence index (1-based) of each clause literal.
    occ: Vec<Vec<usize>>,
    /// Variables no clause mentions.
    unused: Vec<bool>,
    x_base: Vec<usize>,
    y_base: Vec<usize>,
    wheel_base: Vec<usize>,
}

impl OdmLayout {
    fn new(c: &Cnf) -> OdmLayout {
        let n = c.num_vars();
        let mut count = vec![0usize; n];
        let occ: Vec<Vec<usize>> = c
            .clauses
            .iter()
            .map(|cl| {
                cl.iter()
                    .map(|l| {
                        count[l.var as usize] += 1;
                        count[l.var as usize]
                    })
                    .collect()
            })
            .collect();
        let unused: Vec<bool> = count.iter().map(|&k| k == 0).collect();
        let copies: Vec<usize> = count.iter().map(|&k| k.max(1)).collect();
        let mut x_base = Vec::with_capacity(n);
        let mut y_base = Vec::with_capacity(n);
        let mut wheel_base = Vec::with_capacity(n);
        let (mut x, mut y) = (0, 0);
        for &o in &copies {
            x_base.push(x);
            y_base.push(y);
            wheel_base.push(2 * y);
            x += 2 * o;
            y += o;
        }
        OdmLayout {
            copies,
            occ,
            unused,
            x_base,
            y_base,
            wheel_base,
        }
    }

    fn copy(&self, l: Lit, k: usize) -> u32 {
        let i = l.var as usize;
        (self.x_base[i] + if l.neg { self.copies[i] } else { 0 } + k - 1) as u32
    }

    fn a(&self, i: usize, k: usize) -> u32 {
        (self.y_base[i] + k - 1) as u32
    }

    /// b^0 wraps to b^o.
    fn b(&self, i: usize, k: usize) -> u32 {
        let k = if k == 0 { self.copies[i] } else { k };
        (self.y_base[i] + k - 1) as u32
    }

    fn total_y(&self) -> usize {
        self.copies.iter().sum()
    }

    /// The wheel triple holding copy k of literal l.
    fn wheel(&self, l: Lit, k: usize) -> (u32, u32, u32) {
        let i = l.var as usize;
        if l.neg {
            (self.copy(l, k), self.a(i, k), self.b(i, k - 1))
        } else {
            (self.copy(l, k), self.a(i, k), self.b(i, k))
        }
    }

    fn clause_triple(&self, c: &Cnf, j: usize, p: usize) -> (u32, u32, u32) {
        let yz = (self.total_y() + j) as u32;
        (self.copy(c.clauses[j][p], self.occ[j][p]), yz, yz)
    }

    /// Singleton X elements in universe order.
    fn singletons(&self, c: &Cnf) -> Vec<u32> {
        let mut out = Vec::new();
        for (j, cl) in c.clauses.iter().enumerate() {
            for (p, &l) in cl.iter().enumerate() {
                out.push(self.copy(l.negated(), self.occ[j][p]));
            }
        }
        for (i, &u) in self.unused.iter().enumerate() {
            if u {
                out.push(self.copy(Lit::pos(i as u32), 1));
                out.push(self.copy(Lit::neg(i as u32), 1));
            }
        }
        out
    }
}

pub(crate) fn osat_to_odm(src: &Instance) -> Result<Instance> {
    let c = cnf(src)?;
    let lay = OdmLayout::new(c);
    let mut namer = Namer::default();
    let mut m = Matching::default();
    for (i, v) in c.vars.iter().enumerate() {
        for neg in [false, true] {
            for k in 1..=lay.copies[i] {
                let sign = if neg { "~" } else { "" };
                m.x.push(namer.fresh(format!("{sign}{v}^{k}")));
            }
        }
    }
    for (i, v) in c.vars.iter().enumerate() {
        for k in 1..=lay.copies[i] {
            m.y.push(namer.fresh(format!("a_{v}^{k}")));
            m.z.push(namer.fresh(format!("b_{v}^{k}")));
        }
    }
    for j in 0..c.clauses.len() {
        m.y.push(namer.fresh(format!("c{}y", j + 1)));
        m.z.push(namer.fresh(format!("c{}z", j + 1)));
    }
    for i in 0..c.num_vars() {
        for k in 1..=lay.copies[i] {
            m.triples.push(lay.wheel(Lit::pos(i as u32), k));
            m.triples.push(lay.wheel(Lit::neg(i as u32), k));
        }
    }
    for (j, cl) in c.clauses.iter().enumerate() {
        for p in 0..cl.len() {
            m.triples.push(lay.clause_triple(c, j, p));
        }
    }
    let singletons = lay.singletons(c);
    // each singleton is bound to the wheel triple of its complementary copy
    let binding = singletons
        .iter()
        .map(|&x| {
            let i = lay.x_base.partition_point(|&b| b <= x as usize) - 1;
            let off = x as usize - lay.x_base[i];
            let (neg, k) = (off >= lay.copies[i], off % lay.copies[i] + 1);
            let other = Lit {
                var: i as u32,
                neg: !neg,
            };
            (lay.wheel_base[i] + 2 * (k - 1) + other.neg as usize) as u32
        })
        .collect();
    Instance::new(ProblemId::ODM, Payload::Odm { m, singletons, binding })
}

/// A literal maps to the clause triple of its first occurrence, or to the
/// wheel triple chosen exactly when it is true if it never occurs.
pub(crate) fn embed_odm(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    let c = cnf(src)?;
    let lay = OdmLayout::new(c);
    let mut first: HashMap<Lit, (usize, usize)> = HashMap::new();
    for (j, cl) in c.clauses.iter().enumerate() {
        for (p, &l) in cl.iter().enumerate() {
            first.entry(l).or_insert((j, p));
        }
    }
    let mut out = Vec::new();
    for i in 0..c.num_vars() as u32 {
        for l in [Lit::pos(i), Lit::neg(i)] {
            let (x, y, z) = match first.get(&l) {
                Some(&(j, p)) => lay.clause_triple(c, j, p),
                None => lay.wheel(l.negated(), 1),
            };
            out.push(Element::Triple(x, y, z));
        }
    }
    Ok(out)
}

pub(crate) fn lift_osat_to_odm(src: &Instance, _tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let c = cnf(src)?;
    let lay = OdmLayout::new(c);
    let v = values(c.num_vars(), s);
    let mut out = Vec::new();
    for (i, &val) in v.iter().enumerate() {
        // the false literal's copies go into the wheel
        let f = Lit {
            var: i as u32,
            neg: val,
        };
        for k in 1..=lay.copies[i] {
            let (x, y, z) = lay.wheel(f, k);
            out.push(Element::Triple(x, y, z));
        }
    }
    for (j, cl) in c.clauses.iter().enumerate() {
        for (p, &l) in cl.iter().enumerate() {
            if holds(&v, l) {
                let (x, y, z) = lay.clause_triple(c, j, p);
                out.push(Element::Triple(x, y, z));
            }
        }
    }
    for x in lay.singletons(c) {
        let i = lay.x_base.partition_point(|&b| b <= x as usize) - 1;
        let neg = x as usize - lay.x_base[i] >= lay.copies[i];
        if holds(&v, Lit { var: i as u32, neg }) {
            out.push(Element::Singleton(x));
        }
    }
    Ok(out)
}

// ---- one-sided 3D matching to 3D matching ----

fn odm_parts(inst: &Instance) -> Result<(&Matching, &[u32])> {
    match &inst.payload {
        Payload::Odm { m, singletons, .. } => Ok((m, singletons)),
        _ => Err(Error::Internal("expected an ODM payload".into())),
    }
}

/// Rotations of (x, y, z): X' = X1+Y2+Z3, Y' = X3+Y1+Z2, Z' = X2+Y3+Z1.
fn rotations(m: &Matching, (x, y, z): (u32, u32, u32)) -> [Element; 3] {
    let (nx, ny) = (m.x.len() as u32, m.y.len() as u32);
    let (x, y, z) = (x, nx + y, nx + ny + z);
    [
        Element::Triple(x, y, z),
        Element::Triple(y, z, x),
        Element::Triple(z, x, y),
    ]
}

pub(crate) fn odm_to_dm(src: &Instance) -> Result<Instance> {
    let (m, singletons) = odm_parts(src)?;
    fn copy(names: &[String], c: u32) -> impl Iterator<Item = String> + '_ {
        names.iter().map(move |s| format!("{s}_{c}"))
    }
    let mut out = Matching {
        x: copy(&m.x, 1).chain(copy(&m.y, 2)).chain(copy(&m.z, 3)).collect(),
        y: copy(&m.x, 3).chain(copy(&m.y, 1)).chain(copy(&m.z, 2)).collect(),
        z: copy(&m.x, 2).chain(copy(&m.y, 3)).chain(copy(&m.z, 1)).collect(),
        triples: Vec::new(),
    };
    for &t in &m.triples {
        for r in rotations(m, t) {
            if let Element::Triple(a, b, c) = r {
                out.triples.push((a, b, c));
            }
        }
    }
    for &x in singletons {
        out.triples.push((x, x, x));
    }
    Instance::new(ProblemId::DM, Payload::Dm { m: out })
}

pub(crate) fn embed_dm(src: &Instance, _tgt: &Instance) -> Result<Vec<Element>> {
    let (m, singletons) = odm_parts(src)?;
    Ok(m.triples
        .iter()
        .map(|&t| rotations(m, t)[0])
        .chain(singletons.iter().map(|&x| Element::Triple(x, x, x)))
        .collect())
}

pub(crate) fn lift_odm_to_dm(src: &Instance, _tgt: &Instance, s: &[Element]) -> Result<Vec<Element>> {
    let (m, _) = odm_parts(src)?;
    let mut out = Vec::new();
    for e in s {
        match *e {
            Element::Triple(x, y, z) => out.extend(rotations(m, (x, y, z))),
            Element::Singleton(x) => out.push(Element::Triple(x, x, x)),
            other => return Err(Error::ElementNotInUniverse(format!("{other:?}"))),
        }
    }
    Ok(out)
}
