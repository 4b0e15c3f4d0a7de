//! Backtracking engines shared by the per-kind enumerators.
//!
//! Every engine calls `accept` (the kind's verifier) before emitting, so
//! pruning only has to be sound, never exact.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::{Cnf, Digraph, Graph};
use crate::error::Result;
use crate::model::{Budget, Solution};

pub(crate) struct Ctx<'b> {
    pub budget: &'b mut Budget,
    pub out: BTreeSet<Solution>,
    pub stop: usize,
    pub n: usize,
}

impl<'b> Ctx<'b> {
    pub fn new(budget: &'b mut Budget, n: usize, stop: usize) -> Ctx<'b> {
        Ctx {
            budget,
            out: BTreeSet::new(),
            stop,
            n,
        }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.budget.tick()
    }

    pub fn done(&self) -> bool {
        self.out.len() >= self.stop
    }

    pub fn offer(&mut self, s: Solution, accept: &dyn Fn(&Solution) -> bool) {
        if accept(&s) {
            self.out.insert(s);
        }
    }

    fn offer_indices(&mut self, idx: &[usize], accept: &dyn Fn(&Solution) -> bool) {
        let s = Solution::from_indices(self.n, idx.iter().copied());
        self.offer(s, accept);
    }
}

pub(crate) type Accept<'a> = &'a dyn Fn(&Solution) -> bool;

// ---------------------------------------------------------------------------
// Assignments

/// Backtracking over variables in order, tracking per-clause true and assigned counts.
pub(crate) fn cnf_search(c: &Cnf, exactly_one: bool, ctx: &mut Ctx, accept: Accept) -> Result<()> {
    let n = c.num_vars();
    let mut occ: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (ci, cl) in c.clauses.iter().enumerate() {
        for l in cl {
            occ[l.var as usize].push((ci, l.neg));
        }
    }
    if c.clauses.iter().any(|cl| cl.is_empty()) {
        return Ok(());
    }
    let mut st = CnfState {
        occ,
        len: c.clauses.iter().map(|c| c.len()).collect(),
        truec: vec![0; c.clauses.len()],
        assigned: vec![0; c.clauses.len()],
        val: vec![false; n],
        exactly_one,
    };
    st.rec(0, ctx, accept)
}

struct CnfState {
    occ: Vec<Vec<(usize, bool)>>,
    len: Vec<usize>,
    truec: Vec<usize>,
    assigned: Vec<usize>,
    val: Vec<bool>,
    exactly_one: bool,
}

impl CnfState {
    fn rec(&mut self, v: usize, ctx: &mut Ctx, accept: Accept) -> Result<()> {
        ctx.tick()?;
        if ctx.done() {
            return Ok(());
        }
        if v == self.val.len() {
            let idx: Vec<usize> = (0..v).map(|i| 2 * i + (!self.val[i]) as usize).collect();
            ctx.offer_indices(&idx, accept);
            return Ok(());
        }
        for value in [true, false] {
            self.val[v] = value;
            let mut ok = true;
            for &(ci, neg) in &self.occ[v] {
                self.assigned[ci] += 1;
                if value != neg {
                    self.truec[ci] += 1;
                }
                if (self.exactly_one && self.truec[ci] > 1)
                    || (self.assigned[ci] == self.len[ci] && self.truec[ci] == 0)
                {
                    ok = false;
                }
            }
            if ok {
                self.rec(v + 1, ctx, accept)?;
            }
            for &(ci, neg) in &self.occ[v] {
                self.assigned[ci] -= 1;
                if value != neg {
                    self.truec[ci] -= 1;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Hitting-style problems

pub(crate) const UNDECIDED: u8 = 0;
pub(crate) const IN: u8 = 1;
pub(crate) const OUT: u8 = 2;

/// Branches on the first constraint not yet hit by chosen elements.
///
/// `unhit` returns the element list of some constraint with no chosen member,
/// or `None` when every constraint is hit. Branch i takes candidate i and
/// rejects the candidates before it, so leaves are disjoint.
pub(crate) fn hitting_search(
    n: usize,
    lo: usize,
    hi: usize,
    forced: &[usize],
    unhit: &dyn Fn(&[u8]) -> Option<Vec<usize>>,
    ctx: &mut Ctx,
    accept: Accept,
) -> Result<()> {
    let mut state = vec![UNDECIDED; n];
    for &f in forced {
        state[f] = IN;
    }
    let count = forced.len();
    hit_rec(&mut state, count, lo, hi, unhit, ctx, accept)
}

#[allow(clippy::too_many_arguments)]
fn hit_rec(
    state: &mut Vec<u8>,
    count: usize,
    lo: usize,
    hi: usize,
    unhit: &dyn Fn(&[u8]) -> Option<Vec<usize>>,
    ctx: &mut Ctx,
    accept: Accept,
) -> Result<()> {
    ctx.tick()?;
    if count > hi || ctx.done() {
        return Ok(());
    }
    match unhit(state) {
        Some(cons) => {
            let cands: Vec<usize> = cons.into_iter().filter(|&e| state[e] == UNDECIDED).collect();
            if count == hi {
                return Ok(());
            }
            for (i, &c) in cands.iter().enumerate() {
                state[c] = IN;
                hit_rec(state, count + 1, lo, hi, unhit, ctx, accept)?;
                state[c] = OUT;
                if i + 1 == cands.len() {
                    break;
                }
            }
            for &c in &cands {
                state[c] = UNDECIDED;
            }
            Ok(())
        }
        None => {
            let chosen: Vec<usize> = (0..state.len()).filter(|&i| state[i] == IN).collect();
            let free: Vec<usize> = (0..state.len()).filter(|&i| state[i] == UNDECIDED).collect();
            let rmin = lo.saturating_sub(count);
            let rmax = (hi - count).min(free.len());
            for r in rmin..=rmax {
                let mut pick = Vec::with_capacity(r);
                combos(&free, r, 0, &mut pick, &mut |extra| {
                    ctx.tick()?;
                    if !ctx.done() {
                        let s = Solution::from_indices(ctx.n, chosen.iter().chain(extra.iter()).copied());
                        ctx.offer(s, accept);
                    }
                    Ok(())
                })?;
            }
            Ok(())
        }
    }
}

/// Calls `f` on every r-combination of `items` in lexicographic order.
pub(crate) fn combos(
    items: &[usize],
    r: usize,
    start: usize,
    pick: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if pick.len() == r {
        return f(pick);
    }
    let need = r - pick.len();
    for i in start..items.len() {
        if items.len() - i < need {
            break;
        }
        pick.push(items[i]);
        combos(items, r, i + 1, pick, f)?;
        pick.pop();
    }
    Ok(())
}

/// Vertices of some directed cycle avoiding removed vertices and arcs, as
/// (vertex list, arc index list).
pub(crate) fn find_cycle(
    g: &Digraph,
    vertex_ok: &dyn Fn(usize) -> bool,
    arc_ok: &dyn Fn(usize) -> bool,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(a, b)) in g.arcs.iter().enumerate() {
        let (a, b) = (a as usize, b as usize);
        if arc_ok(i) && vertex_ok(a) && vertex_ok(b) {
            out[a].push((b, i));
        }
    }
    // 0 white, 1 on stack, 2 done
    let mut color = vec![0u8; n];
    let mut parent_arc = vec![usize::MAX; n];
    for root in 0..n {
        if color[root] != 0 || !vertex_ok(root) {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        color[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < out[v].len() {
                let (w, ai) = out[v][*next];
                *next += 1;
                if color[w] == 0 {
                    color[w] = 1;
                    parent_arc[w] = ai;
                    stack.push((w, 0));
                } else if color[w] == 1 {
                    // back arc v -> w closes a cycle along the stack
                    let mut verts = vec![w];
                    let mut arcs = vec![ai];
                    let pos = stack.iter().position(|&(x, _)| x == w).unwrap();
                    for &(x, _) in &stack[pos + 1..] {
                        verts.push(x);
                        arcs.push(parent_arc[x]);
                    }
                    return Some((verts, arcs));
                }
            } else {
                color[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Fixed-size pairwise-compatible subsets (MIS, CQ, SP)

pub(crate) fn compat_search(compat: &[Vec<bool>], k: usize, ctx: &mut Ctx, accept: Accept) -> Result<()> {
    let mut pick = Vec::with_capacity(k);
    compat_rec(compat, k, 0, &mut pick, ctx, accept)
}

fn compat_rec(
    compat: &[Vec<bool>],
    k: usize,
    start: usize,
    pick: &mut Vec<usize>,
    ctx: &mut Ctx,
    accept: Accept,
) -> Result<()> {
    ctx.tick()?;
    if ctx.done() {
        return Ok(());
    }
    if pick.len() == k {
        ctx.offer_indices(pick, accept);
        return Ok(());
    }
    let n = compat.len();
    for i in start..n {
        if n - i < k - pick.len() {
            break;
        }
        if pick.iter().all(|&p| compat[p][i]) {
            pick.push(i);
            compat_rec(compat, k, i + 1, pick, ctx, accept)?;
            pick.pop();
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Subsets with size bounds and a monotone prune (facility problems)

pub(crate) fn bounded_subsets(
    n: usize,
    lo: usize,
    hi: usize,
    prune: &dyn Fn(&[usize]) -> bool,
    ctx: &mut Ctx,
    accept: Accept,
) -> Result<()> {
    let mut pick = Vec::new();
    subset_rec(n, lo, hi, 0, &mut pick, prune, ctx, accept)
}

#[allow(clippy::too_many_arguments)]
fn subset_rec(
    n: usize,
    lo: usize,
    hi: usize,
    i: usize,
    pick: &mut Vec<usize>,
    prune: &dyn Fn(&[usize]) -> bool,
    ctx: &mut Ctx,
    accept: Accept,
) -> Result<()> {
    ctx.tick()?;
    if ctx.done() || pick.len() > hi || pick.len() + (n - i) < lo || prune(pick) {
        return Ok(());
    }
    if i == n {
        ctx.offer_indices(pick, accept);
        return Ok(());
    }
    pick.push(i);
    subset_rec(n, lo, hi, i + 1, pick, prune, ctx, accept)?;
    pick.pop();
    subset_rec(n, lo, hi, i + 1, pick, prune, ctx, accept)
}

// ---------------------------------------------------------------------------
// Number problems: sum_a <= a_max and sum_b >= b_min

pub(crate) struct NumberBounds<'a> {
    pub a: &'a [BigUint],
    pub a_max: BigUint,
    pub b: &'a [BigUint],
    pub b_min: BigUint,
    pub force_last: bool,
}

pub(crate) fn number_search(nb: &NumberBounds, ctx: &mut Ctx, accept: Accept) -> Result<()> {
    let n = nb.a.len();
    let mut suffix_b = vec![BigUint::default(); n + 1];
    for i in (0..n).rev() {
        suffix_b[i] = &suffix_b[i + 1] + &nb.b[i];
    }
    let mut pick = Vec::new();
    if nb.force_last {
        if n == 0 {
            return Ok(());
        }
        pick.push(n - 1);
        let sa = nb.a[n - 1].clone();
        let sb = nb.b[n - 1].clone();
        // the last item is fixed; search over the rest
        return num_rec(nb, &suffix_b, n - 1, 0, sa, sb, &mut pick, ctx, accept);
    }
    num_rec(
        nb,
        &suffix_b,
        n,
        0,
        BigUint::default(),
        BigUint::default(),
        &mut pick,
        ctx,
        accept,
    )
}

#[allow(clippy::too_many_arguments)]
fn num_rec(
    nb: &NumberBounds,
    suffix_b: &[BigUint],
    end: usize,
    i: usize,
    sa: BigUint,
    sb: BigUint,
    pick: &mut Vec<usize>,
    ctx: &mut Ctx,
    accept: Accept,
) -> Result<()> {
    ctx.tick()?;
    if ctx.done() || sa > nb.a_max {
        return Ok(());
    }
    // suffix_b covers [i, n); with a forced last item that item is already in sb
    let rest = &suffix_b[i] - &suffix_b[end];
    if &sb + rest < nb.b_min {
        return Ok(());
    }
    if i == end {
        let mut idx = pick.clone();
        idx.sort_unstable();
        ctx.offer_indices(&idx, accept);
        return Ok(());
    }
    pick.push(i);
    num_rec(
        nb,
        suffix_b,
        end,
        i + 1,
        &sa + &nb.a[i],
        &sb + &nb.b[i],
        pick,
        ctx,
        accept,
    )?;
    pick.pop();
    num_rec(nb, suffix_b, end, i + 1, sa, sb, pick, ctx, accept)
}

// ---------------------------------------------------------------------------
// Exact cover (ODM, DM)

/// Enumerates exact covers of `items` points by `options`, branching on the
/// uncovered item with the fewest live options.
pub(crate) fn exact_cover(items: usize, options: &[Vec<usize>], ctx: &mut Ctx, accept: Accept) -> Result<()> {
    let mut by_item: Vec<Vec<usize>> = vec![Vec::new(); items];
    for (oi, o) in options.iter().enumerate() {
        for &it in o {
            by_item[it].push(oi);
        }
    }
    let mut covered = vec![false; items];
    let mut pick = Vec::new();
    cover_rec(options, &by_item, &mut covered, &mut pick, ctx, accept)
}

fn cover_rec(
    options: &[Vec<usize>],
    by_item: &[Vec<usize>],
    covered: &mut Vec<bool>,
    pick: &mut Vec<usize>,
    ctx: &mut Ctx,
    accept: Accept,
) -> Result<()> {
    ctx.tick()?;
    if ctx.done() {
        return Ok(());
    }
    let live = |o: usize, covered: &[bool]| options[o].iter().all(|&it| !covered[it]);
    let mut best: Option<(usize, usize)> = None;
    for it in 0..covered.len() {
        if covered[it] {
            continue;
        }
        let cnt = by_item[it].iter().filter(|&&o| live(o, covered)).count();
        if best.is_none_or(|(_, c)| cnt < c) {
            best = Some((it, cnt));
            if cnt == 0 {
                break;
            }
        }
    }
    let Some((item, cnt)) = best else {
        let mut idx = pick.clone();
        idx.sort_unstable();
        ctx.offer_indices(&idx, accept);
        return Ok(());
    };
    if cnt == 0 {
        return Ok(());
    }
    for &o in &by_item[item] {
        if !live(o, covered) {
            continue;
        }
        for &it in &options[o] {
            covered[it] = true;
        }
        pick.push(o);
        cover_rec(options, by_item, covered, pick, ctx, accept)?;
        pick.pop();
        for &it in &options[o] {
            covered[it] = false;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Hamiltonian paths and cycles

/// Directed Hamiltonian path from `s` to `t`, or cycle through vertex 0 when `t` is None.
pub(crate) fn di_hamiltonian(g: &Digraph, s: usize, t: Option<usize>, ctx: &mut Ctx, accept: Accept) -> Result<()> {
    let n = g.n();
    if n == 0 {
        return Ok(());
    }
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut inn: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(a, b)) in g.arcs.iter().enumerate() {
        out[a as usize].push((b as usize, i));
        inn[b as usize].push(a as usize);
    }
    let mut h = DiHam {
        out,
        inn,
        visited: vec![false; n],
        arcs: Vec::with_capacity(n),
        s,
        t,
    };
    h.visited[s] = true;
    h.rec(s, 1, ctx, accept)
}

struct DiHam {
    out: Vec<Vec<(usize, usize)>>,
    inn: Vec<Vec<usize>>,
    visited: Vec<bool>,
    arcs: Vec<usize>,
    s: usize,
    t: Option<usize>,
}

impl DiHam {
    fn rec(&mut self, cur: usize, count: usize, ctx: &mut Ctx, accept: Accept) -> Result<()> {
        ctx.tick()?;
        if ctx.done() {
            return Ok(());
        }
        let n = self.visited.len();
        if count == n {
            match self.t {
                Some(t) => {
                    if cur == t {
                        let a = self.arcs.clone();
                        ctx.offer_indices(&sorted(a), accept);
                    }
                }
                None => {
                    if let Some(&(_, ai)) = self.out[cur].iter().find(|&&(w, _)| w == self.s) {
                        let mut a = self.arcs.clone();
                        a.push(ai);
                        ctx.offer_indices(&sorted(a), accept);
                    }
                }
            }
            return Ok(());
        }
        if Some(cur) == self.t {
            return Ok(());
        }
        // every unvisited vertex still needs a live predecessor and successor
        for w in 0..n {
            if self.visited[w] {
                continue;
            }
            let has_in = self.inn[w].iter().any(|&p| p == cur || !self.visited[p]);
            let has_out = Some(w) == self.t
                || self.out[w]
                    .iter()
                    .any(|&(x, _)| !self.visited[x] || (self.t.is_none() && x == self.s));
            if !has_in || !has_out {
                return Ok(());
            }
        }
        for j in 0..self.out[cur].len() {
            let (w, ai) = self.out[cur][j];
            if self.visited[w] {
                continue;
            }
            self.visited[w] = true;
            self.arcs.push(ai);
            self.rec(w, count + 1, ctx, accept)?;
            self.arcs.pop();
            self.visited[w] = false;
        }
        Ok(())
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Undirected Hamiltonian path from `s` to `t`, or cycle through vertex 0 when
/// `t` is None. Optional weights with an upper bound prune by partial weight.
pub(crate) fn u_hamiltonian(
    g: &Graph,
    s: usize,
    t: Option<usize>,
    weights: Option<(&[u64], u64)>,
    ctx: &mut Ctx,
    accept: Accept,
) -> Result<()> {
    let n = g.n();
    if n == 0 {
        return Ok(());
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        adj[a as usize].push((b as usize, i));
        adj[b as usize].push((a as usize, i));
    }
    let mut h = UHam {
        adj,
        visited: vec![false; n],
        edges: Vec::with_capacity(n),
        order: vec![s],
        s,
        t,
        weights,
    };
    h.visited[s] = true;
    h.rec(s, 0, ctx, accept)
}

struct UHam<'w> {
    adj: Vec<Vec<(usize, usize)>>,
    visited: Vec<bool>,
    edges: Vec<usize>,
    order: Vec<usize>,
    s: usize,
    t: Option<usize>,
    weights: Option<(&'w [u64], u64)>,
}

impl UHam<'_> {
    fn weight(&self, e: usize) -> u128 {
        self.weights.map_or(0, |(w, _)| w[e] as u128)
    }

    fn over(&self, total: u128) -> bool {
        self.weights.is_some_and(|(_, k)| total > k as u128)
    }

    fn rec(&mut self, cur: usize, total: u128, ctx: &mut Ctx, accept: Accept) -> Result<()> {
        ctx.tick()?;
        if ctx.done() || self.over(total) {
            return Ok(());
        }
        let n = self.visited.len();
        if self.order.len() == n {
            match self.t {
                Some(t) => {
                    if cur == t {
                        let e = self.edges.clone();
                        ctx.offer_indices(&sorted(e), accept);
                    }
                }
                None => {
                    // each cycle is found in both directions; keep one
                    if n >= 3 && self.order[1] < self.order[n - 1] {
                        if let Some(&(_, ei)) = self.adj[cur].iter().find(|&&(w, _)| w == self.s) {
                            if !self.over(total + self.weight(ei)) {
                                let mut e = self.edges.clone();
                                e.push(ei);
                                ctx.offer_indices(&sorted(e), accept);
                            }
                        }
                    }
                }
            }
            return Ok(());
        }
        if Some(cur) == self.t {
            return Ok(());
        }
        // degree-2 pruning: interior vertices need two live neighbours, the end one
        for w in 0..n {
            if self.visited[w] {
                continue;
            }
            let live = self.adj[w]
                .iter()
                .filter(|&&(x, _)| !self.visited[x] || x == cur || (self.t.is_none() && x == self.s))
                .count();
            let need = if Some(w) == self.t { 1 } else { 2 };
            if live < need {
                return Ok(());
            }
        }
        for j in 0..self.adj[cur].len() {
            let (w, ei) = self.adj[cur][j];
            if self.visited[w] {
                continue;
            }
            self.visited[w] = true;
            self.edges.push(ei);
            self.order.push(w);
            let nt = total + self.weight(ei);
            self.rec(w, nt, ctx, accept)?;
            self.order.pop();
            self.edges.pop();
            self.visited[w] = false;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Steiner trees

/// Enumerates trees grown from the first terminal: the lowest-index frontier
/// edge is either taken or banned, so every subtree through the root is reached
/// exactly once. Prunes on weight and on shortest-path distance to unreached
/// terminals.
pub(crate) fn steiner_search(
    g: &Graph,
    weights: &[u64],
    terminals: &[u32],
    k: u64,
    ctx: &mut Ctx,
    accept: Accept,
) -> Result<()> {
    let n = g.n();
    let dist = all_pairs(g, weights);
    let root = terminals[0] as usize;
    let mut st = SteinerState {
        g,
        weights,
        terminals: terminals.iter().map(|&t| t as usize).collect(),
        k: k as u128,
        dist,
        in_tree: vec![false; n],
        tree_vertices: vec![root],
        banned: vec![false; g.edges.len()],
        chosen: Vec::new(),
    };
    st.in_tree[root] = true;
    st.rec(0, ctx, accept)
}

fn all_pairs(g: &Graph, weights: &[u64]) -> Vec<Vec<u128>> {
    let n = g.n();
    let inf = u128::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        let (a, b) = (a as usize, b as usize);
        let w = weights[i] as u128;
        if w < d[a][b] {
            d[a][b] = w;
            d[b][a] = w;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][m] + d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

struct SteinerState<'a> {
    g: &'a Graph,
    weights: &'a [u64],
    terminals: Vec<usize>,
    k: u128,
    dist: Vec<Vec<u128>>,
    in_tree: Vec<bool>,
    tree_vertices: Vec<usize>,
    banned: Vec<bool>,
    chosen: Vec<usize>,
}

impl SteinerState<'_> {
    fn rec(&mut self, total: u128, ctx: &mut Ctx, accept: Accept) -> Result<()> {
        ctx.tick()?;
        if ctx.done() || total > self.k {
            return Ok(());
        }
        for &t in &self.terminals {
            if !self.in_tree[t] {
                let lb = self
                    .tree_vertices
                    .iter()
                    .map(|&v| self.dist[v][t])
                    .min()
                    .unwrap_or(u128::MAX);
                if total.saturating_add(lb) > self.k {
                    return Ok(());
                }
            }
        }
        let frontier = self
            .g
            .edges
            .iter()
            .enumerate()
            .position(|(i, &(a, b))| !self.banned[i] && (self.in_tree[a as usize] != self.in_tree[b as usize]));
        let Some(e) = frontier else {
            let c = self.chosen.clone();
            ctx.offer_indices(&sorted(c), accept);
            return Ok(());
        };
        let (a, b) = self.g.edges[e];
        let new_v = if self.in_tree[a as usize] { b } else { a } as usize;
        // take the edge
        self.in_tree[new_v] = true;
        self.tree_vertices.push(new_v);
        self.chosen.push(e);
        self.rec(total + self.weights[e] as u128, ctx, accept)?;
        self.chosen.pop();
        self.tree_vertices.pop();
        self.in_tree[new_v] = false;
        // ban it
        self.banned[e] = true;
        self.rec(total, ctx, accept)?;
        self.banned[e] = false;
        Ok(())
    }
}
