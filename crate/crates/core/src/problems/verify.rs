//! Per-kind solution checks. Every check is polynomial in the instance size.

use num_bigint::BigUint;

use super::{Cnf, Digraph, Graph, Instance, Payload, ProblemId};
use crate::error::{Error, Result};
use crate::model::Solution;

/// True iff `candidate` is a solution of `inst` under the kind's semantics.
pub fn verify_solution(id: ProblemId, inst: &Instance, candidate: &Solution) -> Result<bool> {
    if id != inst.kind {
        return Err(Error::KindMismatch {
            expected: id,
            found: inst.kind,
        });
    }
    let n = universe_size(inst);
    if candidate.universe_len() != n {
        return Err(Error::UniverseMismatch(format!(
            "candidate over {} elements, universe has {n}",
            candidate.universe_len()
        )));
    }
    Ok(check(inst, candidate))
}

pub(crate) fn universe_size(inst: &Instance) -> usize {
    match &inst.payload {
        Payload::Cnf(c) => 2 * c.num_vars(),
        Payload::Graph { graph, .. } | Payload::Vcv { graph, .. } => graph.n(),
        Payload::Digraph { graph, .. } => match inst.kind {
            ProblemId::FVS => graph.n(),
            _ => graph.arcs.len(),
        },
        Payload::Sets { system, .. } => match inst.kind {
            ProblemId::HS => system.elements.len(),
            _ => system.sets.len(),
        },
        Payload::Facility { data, .. } => data.facilities.len(),
        Payload::DiPath { graph, .. } | Payload::DiCycle { graph } => graph.arcs.len(),
        Payload::UPath { graph, .. }
        | Payload::UCycle { graph }
        | Payload::Tsp { graph, .. }
        | Payload::Steiner { graph, .. } => graph.edges.len(),
        Payload::SubsetSum { numbers, .. } | Payload::Partition { numbers } => numbers.len(),
        Payload::Knapsack { prices, .. } => prices.len(),
        Payload::Scheduling { jobs, .. } => jobs.len(),
        Payload::Odm { m, singletons, .. } => m.triples.len() + singletons.len(),
        Payload::Dm { m } => m.triples.len(),
    }
}

/// Unchecked verification; the candidate must already match the universe size.
pub(crate) fn check(inst: &Instance, s: &Solution) -> bool {
    use ProblemId::*;
    let size = s.len() as u64;
    match &inst.payload {
        Payload::Cnf(c) => check_cnf(c, s, inst.kind == OSAT),
        Payload::Graph { graph, k } => match inst.kind {
            VC => size <= *k && is_cover(graph, s),
            MVC => size == *k && is_cover(graph, s),
            DS => size <= *k && is_dominating(graph, s),
            MDS => size == *k && is_dominating(graph, s),
            MIS => size == *k && is_independent(graph, s),
            CQ => size == *k && is_clique(graph, s),
            _ => false,
        },
        Payload::Vcv { graph, k, fixed } => size == *k && s.contains(*fixed as usize) && is_cover(graph, s),
        Payload::Digraph { graph, k } => {
            if size != *k {
                return false;
            }
            match inst.kind {
                FVS => is_acyclic(graph, |v| !s.contains(v), |_| true),
                _ => is_acyclic(graph, |_| true, |a| !s.contains(a)),
            }
        }
        Payload::Sets { system, k, exact } => {
            let size_ok = if *exact { size == *k } else { size <= *k };
            if !size_ok {
                return false;
            }
            match inst.kind {
                SC => {
                    let mut covered = vec![false; system.elements.len()];
                    for i in s.ones() {
                        for &e in &system.sets[i] {
                            covered[e as usize] = true;
                        }
                    }
                    covered.into_iter().all(|c| c)
                }
                HS => system
                    .sets
                    .iter()
                    .all(|set| set.iter().any(|&e| s.contains(e as usize))),
                SP => {
                    let mut used = vec![false; system.elements.len()];
                    for i in s.ones() {
                        for &e in &system.sets[i] {
                            if std::mem::replace(&mut used[e as usize], true) {
                                return false;
                            }
                        }
                    }
                    true
                }
                _ => false,
            }
        }
        Payload::Facility { data, p, k } => {
            if let Some(p) = p {
                if size != *p {
                    return false;
                }
            }
            let open: Vec<usize> = s.ones().collect();
            if open.is_empty() && !data.clients.is_empty() {
                return false;
            }
            let nearest = data
                .service
                .iter()
                .map(|row| open.iter().map(|&f| row[f]).min().unwrap_or(0) as u128);
            match inst.kind {
                UFL => {
                    let opening: u128 = open.iter().map(|&f| data.open_cost[f] as u128).sum();
                    opening + nearest.sum::<u128>() <= *k as u128
                }
                PCEN => nearest.max().unwrap_or(0) <= *k as u128,
                PMED => nearest.sum::<u128>() <= *k as u128,
                _ => false,
            }
        }
        Payload::DiPath { graph, s: src, t } => is_di_ham_path(graph, s, *src, *t),
        Payload::DiCycle { graph } => is_di_ham_cycle(graph, s),
        Payload::UPath { graph, s: src, t } => is_u_ham_path(graph, s, *src, *t),
        Payload::UCycle { graph } => is_u_ham_cycle(graph, s),
        Payload::Tsp { graph, weights, k } => {
            is_u_ham_cycle(graph, s) && s.ones().map(|i| weights[i] as u128).sum::<u128>() <= *k as u128
        }
        Payload::Steiner {
            graph,
            weights,
            terminals,
            k,
        } => s.ones().map(|i| weights[i] as u128).sum::<u128>() <= *k as u128 && is_steiner_tree(graph, s, terminals),
        Payload::SubsetSum { numbers, target } => &sum_of(numbers, s) == target,
        Payload::Knapsack {
            prices,
            weights,
            min_profit,
            max_weight,
        } => &sum_of(weights, s) <= max_weight && &sum_of(prices, s) >= min_profit,
        Payload::Partition { numbers } => {
            let total: BigUint = numbers.iter().sum();
            s.contains(numbers.len() - 1) && sum_of(numbers, s) * 2u32 == total
        }
        Payload::Scheduling { jobs, deadline } => {
            let total: BigUint = jobs.iter().sum();
            let first = sum_of(jobs, s);
            s.contains(jobs.len() - 1) && &first <= deadline && &(total - &first) <= deadline
        }
        Payload::Odm { m, singletons, .. } => {
            let nt = m.triples.len();
            let mut cx = vec![0u32; m.x.len()];
            let mut cy = vec![0u32; m.y.len()];
            let mut cz = vec![0u32; m.z.len()];
            for i in s.ones() {
                if i < nt {
                    let (x, y, z) = m.triples[i];
                    cx[x as usize] += 1;
                    cy[y as usize] += 1;
                    cz[z as usize] += 1;
                } else {
                    cx[singletons[i - nt] as usize] += 1;
                }
            }
            cx.iter().chain(&cy).chain(&cz).all(|&c| c == 1)
        }
        Payload::Dm { m } => {
            let mut cx = vec![0u32; m.x.len()];
            let mut cy = vec![0u32; m.y.len()];
            let mut cz = vec![0u32; m.z.len()];
            for i in s.ones() {
                let (x, y, z) = m.triples[i];
                cx[x as usize] += 1;
                cy[y as usize] += 1;
                cz[z as usize] += 1;
            }
            cx.iter().chain(&cy).chain(&cz).all(|&c| c == 1)
        }
    }
}

fn sum_of(nums: &[BigUint], s: &Solution) -> BigUint {
    s.ones().map(|i| &nums[i]).sum()
}

fn check_cnf(c: &Cnf, s: &Solution, exactly_one: bool) -> bool {
    for v in 0..c.num_vars() {
        if s.contains(2 * v) == s.contains(2 * v + 1) {
            return false;
        }
    }
    c.clauses.iter().all(|cl| {
        let t = cl.iter().filter(|l| s.contains(l.index())).count();
        if exactly_one {
            t == 1
        } else {
            t >= 1
        }
    })
}

fn is_cover(g: &Graph, s: &Solution) -> bool {
    g.edges
        .iter()
        .all(|&(a, b)| s.contains(a as usize) || s.contains(b as usize))
}

fn is_dominating(g: &Graph, s: &Solution) -> bool {
    let mut dom: Vec<bool> = (0..g.n()).map(|v| s.contains(v)).collect();
    for &(a, b) in &g.edges {
        if s.contains(a as usize) {
            dom[b as usize] = true;
        }
        if s.contains(b as usize) {
            dom[a as usize] = true;
        }
    }
    dom.into_iter().all(|d| d)
}

fn is_independent(g: &Graph, s: &Solution) -> bool {
    g.edges
        .iter()
        .all(|&(a, b)| !(s.contains(a as usize) && s.contains(b as usize)))
}

fn is_clique(g: &Graph, s: &Solution) -> bool {
    let m = g.matrix();
    let vs: Vec<usize> = s.ones().collect();
    vs.iter()
        .enumerate()
        .all(|(i, &a)| vs[i + 1..].iter().all(|&b| m[a][b]))
}

/// Acyclicity of the subgraph induced by kept vertices and kept arcs (Kahn's algorithm).
pub(crate) fn is_acyclic(g: &Digraph, keep_v: impl Fn(usize) -> bool, keep_a: impl Fn(usize) -> bool) -> bool {
    let n = g.n();
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(a, b)) in g.arcs.iter().enumerate() {
        let (a, b) = (a as usize, b as usize);
        if keep_a(i) && keep_v(a) && keep_v(b) {
            out[a].push(b);
            indeg[b] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| keep_v(v) && indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == (0..n).filter(|&v| keep_v(v)).count()
}

/// Follows successor links from `start`, returning the visit order if it is a simple walk.
fn walk(next: &[Option<usize>], start: usize, limit: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut seen = vec![false; next.len()];
    seen[start] = true;
    let mut cur = start;
    while let Some(nx) = next[cur] {
        if seen[nx] || order.len() > limit {
            break;
        }
        seen[nx] = true;
        order.push(nx);
        cur = nx;
    }
    order
}

fn di_succ(g: &Digraph, s: &Solution) -> Option<(Vec<Option<usize>>, Vec<usize>)> {
    let n = g.n();
    let mut next = vec![None; n];
    let mut indeg = vec![0usize; n];
    for i in s.ones() {
        let (a, b) = g.arcs[i];
        if next[a as usize].is_some() {
            return None;
        }
        next[a as usize] = Some(b as usize);
        indeg[b as usize] += 1;
    }
    if indeg.iter().any(|&d| d > 1) {
        return None;
    }
    Some((next, indeg))
}

fn is_di_ham_path(g: &Digraph, s: &Solution, src: u32, t: u32) -> bool {
    let n = g.n();
    if s.len() + 1 != n {
        return false;
    }
    let Some((next, indeg)) = di_succ(g, s) else {
        return false;
    };
    if indeg[src as usize] != 0 || next[t as usize].is_some() {
        return false;
    }
    let order = walk(&next, src as usize, n);
    order.len() == n && *order.last().unwrap() == t as usize
}

fn is_di_ham_cycle(g: &Digraph, s: &Solution) -> bool {
    let n = g.n();
    if n < 2 || s.len() != n {
        return false;
    }
    let Some((next, _)) = di_succ(g, s) else {
        return false;
    };
    let order = walk(&next, 0, n);
    order.len() == n && next[*order.last().unwrap()] == Some(0)
}

fn u_adj(g: &Graph, s: &Solution) -> Option<Vec<Vec<usize>>> {
    let mut adj = vec![Vec::new(); g.n()];
    for i in s.ones() {
        let (a, b) = g.edges[i];
        adj[a as usize].push(b as usize);
        adj[b as usize].push(a as usize);
        if adj[a as usize].len() > 2 || adj[b as usize].len() > 2 {
            return None;
        }
    }
    Some(adj)
}

/// Walks a degree-at-most-2 edge set from `start`; returns the number of vertices reached.
fn u_walk(adj: &[Vec<usize>], start: usize) -> (usize, usize) {
    let mut prev = usize::MAX;
    let mut cur = start;
    let mut count = 1;
    loop {
        let nx = adj[cur].iter().copied().find(|&w| w != prev);
        match nx {
            Some(w) if w != start && count <= adj.len() => {
                prev = cur;
                cur = w;
                count += 1;
            }
            _ => return (count, cur),
        }
    }
}

fn is_u_ham_path(g: &Graph, s: &Solution, src: u32, t: u32) -> bool {
    let n = g.n();
    if s.len() + 1 != n {
        return false;
    }
    let Some(adj) = u_adj(g, s) else {
        return false;
    };
    if adj[src as usize].len() != 1 || adj[t as usize].len() != 1 {
        return false;
    }
    let (count, end) = u_walk(&adj, src as usize);
    count == n && end == t as usize
}

fn is_u_ham_cycle(g: &Graph, s: &Solution) -> bool {
    let n = g.n();
    if n < 3 || s.len() != n {
        return false;
    }
    let Some(adj) = u_adj(g, s) else {
        return false;
    };
    if adj.iter().any(|a| a.len() != 2) {
        return false;
    }
    u_walk(&adj, 0).0 == n
}

fn is_steiner_tree(g: &Graph, s: &Solution, terminals: &[u32]) -> bool {
    if s.is_empty() {
        return terminals.len() <= 1;
    }
    // Union-find over the chosen edges: a forest with one component spanning the terminals.
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let nx = p[c];
            p[c] = r;
            c = nx;
        }
        r
    }
    let mut touched = vec![false; n];
    for i in s.ones() {
        let (a, b) = g.edges[i];
        let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
        touched[a as usize] = true;
        touched[b as usize] = true;
    }
    let root = find(&mut parent, g.edges[s.ones().next().unwrap()].0 as usize);
    if (0..n).any(|v| touched[v] && find(&mut parent, v) != root) {
        return false;
    }
    terminals
        .iter()
        .all(|&t| touched[t as usize] && find(&mut parent, t as usize) == root)
}
