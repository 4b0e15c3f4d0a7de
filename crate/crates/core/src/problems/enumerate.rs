use num_bigint::BigUint;

use super::search::{self, Ctx, NumberBounds, IN};
use super::verify::{check, universe_size};
use super::{Instance, Payload, ProblemId};
use crate::error::{Error, Result};
use crate::model::{Budget, Solution, SolutionSet};

/// Largest universe the generic 2^|U| filter accepts.
pub const BRUTE_FORCE_LIMIT: usize = 26;

/// Complete solution set via the kind's pruned backtracking engine.
pub fn enumerate_solutions(id: ProblemId, inst: &Instance, budget: &mut Budget) -> Result<SolutionSet> {
    enumerate_with_limit(id, inst, budget, usize::MAX)
}

/// Like [`enumerate_solutions`] but stops after `limit` solutions; the result is
/// marked incomplete when the limit cut the search short.
pub fn enumerate_with_limit(id: ProblemId, inst: &Instance, budget: &mut Budget, limit: usize) -> Result<SolutionSet> {
    if id != inst.kind {
        return Err(Error::KindMismatch {
            expected: id,
            found: inst.kind,
        });
    }
    inst.validate()?;
    let n = universe_size(inst);
    let start = budget.used();
    let accept = |s: &Solution| check(inst, s);
    let mut ctx = Ctx::new(budget, n, limit);
    run(inst, &mut ctx, &accept)?;
    let stopped = ctx.done() && limit != usize::MAX;
    let out = std::mem::take(&mut ctx.out);
    let nodes = budget.used() - start;
    Ok(SolutionSet {
        universe_len: n,
        solutions: out,
        complete: !stopped,
        nodes,
    })
}

/// Generic oracle: filters all 2^|U| subsets through the verifier.
pub fn brute_force_solutions(id: ProblemId, inst: &Instance, budget: &mut Budget) -> Result<SolutionSet> {
    if id != inst.kind {
        return Err(Error::KindMismatch {
            expected: id,
            found: inst.kind,
        });
    }
    inst.validate()?;
    let n = universe_size(inst);
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::UnsupportedShape(format!(
            "universe of {n} elements exceeds the brute-force limit {BRUTE_FORCE_LIMIT}"
        )));
    }
    let start = budget.used();
    let mut set = SolutionSet::new(n);
    for mask in 0u64..(1u64 << n) {
        budget.tick()?;
        let s = Solution::from_mask(n, mask);
        if check(inst, &s) {
            set.insert(s);
        }
    }
    set.nodes = budget.used() - start;
    Ok(set)
}

fn run(inst: &Instance, ctx: &mut Ctx, accept: search::Accept) -> Result<()> {
    use ProblemId::*;
    let n = ctx.n;
    match &inst.payload {
        Payload::Cnf(c) => search::cnf_search(c, inst.kind == OSAT, ctx, accept),
        Payload::Graph { graph, k } => {
            let kraw = *k;
            let k = clamp(kraw, n);
            match inst.kind {
                VC | MVC => {
                    let lo = if inst.kind == MVC { k } else { 0 };
                    let unhit = |st: &[u8]| {
                        graph
                            .edges
                            .iter()
                            .find(|&&(a, b)| st[a as usize] != IN && st[b as usize] != IN)
                            .map(|&(a, b)| vec![a as usize, b as usize])
                    };
                    if k_exceeds(kraw, n) && inst.kind == MVC {
                        return Ok(());
                    }
                    search::hitting_search(n, lo, k, &[], &unhit, ctx, accept)
                }
                DS | MDS => {
                    if k_exceeds(kraw, n) && inst.kind == MDS {
                        return Ok(());
                    }
                    let lo = if inst.kind == MDS { k } else { 0 };
                    let adj = graph.adjacency();
                    let unhit = |st: &[u8]| {
                        (0..n)
                            .find(|&v| st[v] != IN && adj[v].iter().all(|&w| st[w as usize] != IN))
                            .map(|v| {
                                let mut c = vec![v];
                                c.extend(adj[v].iter().map(|&w| w as usize));
                                c.sort_unstable();
                                c
                            })
                    };
                    search::hitting_search(n, lo, k, &[], &unhit, ctx, accept)
                }
                MIS | CQ => {
                    if k_exceeds(kraw, n) {
                        return Ok(());
                    }
                    let m = graph.matrix();
                    let compat: Vec<Vec<bool>> = (0..n)
                        .map(|a| {
                            (0..n)
                                .map(|b| if inst.kind == MIS { !m[a][b] } else { m[a][b] })
                                .collect()
                        })
                        .collect();
                    search::compat_search(&compat, k, ctx, accept)
                }
                _ => Ok(()),
            }
        }
        Payload::Vcv { graph, k, fixed } => {
            if k_exceeds(*k, n) {
                return Ok(());
            }
            let k = *k as usize;
            let unhit = |st: &[u8]| {
                graph
                    .edges
                    .iter()
                    .find(|&&(a, b)| st[a as usize] != IN && st[b as usize] != IN)
                    .map(|&(a, b)| vec![a as usize, b as usize])
            };
            search::hitting_search(n, k, k, &[*fixed as usize], &unhit, ctx, accept)
        }
        Payload::Digraph { graph, k } => {
            if k_exceeds(*k, n) {
                return Ok(());
            }
            let k = *k as usize;
            match inst.kind {
                FVS => {
                    let unhit = |st: &[u8]| search::find_cycle(graph, &|v| st[v] != IN, &|_| true).map(|(vs, _)| vs);
                    search::hitting_search(n, k, k, &[], &unhit, ctx, accept)
                }
                _ => {
                    let unhit =
                        |st: &[u8]| search::find_cycle(graph, &|_| true, &|a| st[a] != IN).map(|(_, arcs)| arcs);
                    search::hitting_search(n, k, k, &[], &unhit, ctx, accept)
                }
            }
        }
        Payload::Sets { system, k, exact } => {
            if *exact && k_exceeds(*k, n) {
                return Ok(());
            }
            let hi = clamp(*k, n);
            let lo = if *exact { hi } else { 0 };
            match inst.kind {
                SC => {
                    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); system.elements.len()];
                    for (si, s) in system.sets.iter().enumerate() {
                        for &e in s {
                            containing[e as usize].push(si);
                        }
                    }
                    let unhit = |st: &[u8]| {
                        containing
                            .iter()
                            .find(|sets| sets.iter().all(|&s| st[s] != IN))
                            .cloned()
                    };
                    search::hitting_search(n, lo, hi, &[], &unhit, ctx, accept)
                }
                HS => {
                    let unhit = |st: &[u8]| {
                        system
                            .sets
                            .iter()
                            .find(|set| set.iter().all(|&e| st[e as usize] != IN))
                            .map(|set| set.iter().map(|&e| e as usize).collect())
                    };
                    search::hitting_search(n, lo, hi, &[], &unhit, ctx, accept)
                }
                _ => {
                    let compat: Vec<Vec<bool>> = system
                        .sets
                        .iter()
                        .map(|a| system.sets.iter().map(|b| a.iter().all(|e| !b.contains(e))).collect())
                        .collect();
                    search::compat_search(&compat, hi, ctx, accept)
                }
            }
        }
        Payload::Facility { data, p, k } => {
            let (lo, hi) = match p {
                Some(p) => {
                    if k_exceeds(*p, n) {
                        return Ok(());
                    }
                    (*p as usize, *p as usize)
                }
                None => (0, n),
            };
            let kk = *k as u128;
            let prune =
                |pick: &[usize]| inst.kind == UFL && pick.iter().map(|&f| data.open_cost[f] as u128).sum::<u128>() > kk;
            search::bounded_subsets(n, lo, hi, &prune, ctx, accept)
        }
        Payload::DiPath { graph, s, t } => search::di_hamiltonian(graph, *s as usize, Some(*t as usize), ctx, accept),
        Payload::DiCycle { graph } => search::di_hamiltonian(graph, 0, None, ctx, accept),
        Payload::UPath { graph, s, t } => {
            search::u_hamiltonian(graph, *s as usize, Some(*t as usize), None, ctx, accept)
        }
        Payload::UCycle { graph } => search::u_hamiltonian(graph, 0, None, None, ctx, accept),
        Payload::Tsp { graph, weights, k } => {
            search::u_hamiltonian(graph, 0, None, Some((weights.as_slice(), *k)), ctx, accept)
        }
        Payload::Steiner {
            graph,
            weights,
            terminals,
            k,
        } => search::steiner_search(graph, weights, terminals, *k, ctx, accept),
        Payload::SubsetSum { numbers, target } => search::number_search(
            &NumberBounds {
                a: numbers,
                a_max: target.clone(),
                b: numbers,
                b_min: target.clone(),
                force_last: false,
            },
            ctx,
            accept,
        ),
        Payload::Knapsack {
            prices,
            weights,
            min_profit,
            max_weight,
        } => search::number_search(
            &NumberBounds {
                a: weights,
                a_max: max_weight.clone(),
                b: prices,
                b_min: min_profit.clone(),
                force_last: false,
            },
            ctx,
            accept,
        ),
        Payload::Partition { numbers } => {
            let total: BigUint = numbers.iter().sum();
            if total.bit(0) {
                return Ok(());
            }
            let half = total >> 1u32;
            search::number_search(
                &NumberBounds {
                    a: numbers,
                    a_max: half.clone(),
                    b: numbers,
                    b_min: half,
                    force_last: true,
                },
                ctx,
                accept,
            )
        }
        Payload::Scheduling { jobs, deadline } => {
            let total: BigUint = jobs.iter().sum();
            let b_min = if &total > deadline {
                &total - deadline
            } else {
                BigUint::default()
            };
            search::number_search(
                &NumberBounds {
                    a: jobs,
                    a_max: deadline.clone(),
                    b: jobs,
                    b_min,
                    force_last: true,
                },
                ctx,
                accept,
            )
        }
        Payload::Odm { m, singletons, .. } => {
            let (nx, ny) = (m.x.len(), m.y.len());
            let mut options: Vec<Vec<usize>> = m
                .triples
                .iter()
                .map(|&(x, y, z)| vec![x as usize, nx + y as usize, nx + ny + z as usize])
                .collect();
            options.extend(singletons.iter().map(|&x| vec![x as usize]));
            search::exact_cover(nx + ny + m.z.len(), &options, ctx, accept)
        }
        Payload::Dm { m } => {
            let (nx, ny) = (m.x.len(), m.y.len());
            let options: Vec<Vec<usize>> = m
                .triples
                .iter()
                .map(|&(x, y, z)| vec![x as usize, nx + y as usize, nx + ny + z as usize])
                .collect();
            search::exact_cover(nx + ny + m.z.len(), &options, ctx, accept)
        }
    }
}

fn k_exceeds(k: u64, n: usize) -> bool {
    k > n as u64
}

fn clamp(k: u64, n: usize) -> usize {
    k.min(n as u64) as usize
}

/// Optimal cardinality: the least k (or greatest, for MIS and CQ) admitting a
/// solution, found by exhaustive search.
pub fn minimum_cardinality(id: ProblemId, inst: &Instance, budget: &mut Budget) -> Result<u64> {
    if !id.is_cardinality() {
        return Err(Error::UnsupportedShape(format!("{id} has no cardinality parameter")));
    }
    if id != inst.kind {
        return Err(Error::KindMismatch {
            expected: id,
            found: inst.kind,
        });
    }
    let n = universe_size(inst) as u64;
    let feasible = |k: u64, budget: &mut Budget| -> Result<bool> {
        let probe = inst.with_k(k);
        Ok(!enumerate_with_limit(id, &probe, budget, 1)?.is_empty())
    };
    if id.is_maximization() {
        for k in (0..=n).rev() {
            if feasible(k, budget)? {
                return Ok(k);
            }
        }
    } else {
        for k in 0..=n {
            if feasible(k, budget)? {
                return Ok(k);
            }
        }
    }
    Err(Error::NoSolution)
}
