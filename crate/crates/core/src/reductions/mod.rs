//! Executable reductions: instance transform, element embedding, solution
//! lifting and its inverse, plus the claimed SSP/SPR flags.

mod cnf;
mod graphs;
mod numbers;
mod paths;
mod sat;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Element, Solution, Universe};
use crate::problems::{verify_solution, Instance, ProblemId};

pub(crate) use cnf::CnfBuilder;

/// Claimed properties of a reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Claims {
    pub ssp: bool,
    pub spr: bool,
}

pub const YES_YES: Claims = Claims { ssp: true, spr: true };
pub const SSP_ONLY: Claims = Claims { ssp: true, spr: false };
pub const SPR_ONLY: Claims = Claims { ssp: false, spr: true };

pub type TransformFn = fn(&Instance) -> Result<Instance>;
/// Images of every source universe element, in universe order.
pub type EmbedFn = fn(&Instance, &Instance) -> Result<Vec<Element>>;
/// Maps a solution given as its member elements.
pub type MapFn = fn(&Instance, &Instance, &[Element]) -> Result<Vec<Element>>;

/// One registered reduction.
pub struct ReductionDef {
    pub id: &'static str,
    pub source: ProblemId,
    pub target: ProblemId,
    pub claims: Claims,
    /// One-line description of the construction.
    pub summary: &'static str,
    /// Negative demonstrations, excluded from path search by default.
    pub demo: bool,
    /// Constant c with |U'| <= c * size^3; `None` when the target grows exponentially.
    pub growth: Option<u64>,
    pub(crate) transform: TransformFn,
    pub(crate) embed: Option<EmbedFn>,
    pub(crate) lift: Option<MapFn>,
    pub(crate) unlift: Option<MapFn>,
}

impl std::fmt::Debug for ReductionDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ReductionDef")
            .field("id", &self.id)
            .field("source", &self.source)
            .field("target", &self.target)
            .field("claims", &self.claims)
            .finish()
    }
}

impl PartialEq for ReductionDef {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for ReductionDef {}

macro_rules! def {
    ($id:literal, $src:ident => $tgt:ident, $claims:expr, $summary:literal,
     transform: $t:expr, embed: $e:expr, lift: $l:expr, unlift: $u:expr $(, growth: $g:expr)? $(, demo: $d:expr)?) => {
        ReductionDef {
            id: $id,
            source: ProblemId::$src,
            target: ProblemId::$tgt,
            claims: $claims,
            summary: $summary,
            demo: false $(|| $d)?,
            growth: def!(@growth $($g)?),
            transform: $t,
            embed: $e,
            lift: $l,
            unlift: $u,
        }
    };
    (@growth) => { Some(8) };
    (@growth $g:expr) => { $g };
}

static REGISTRY: [ReductionDef; 40] = [
    def!("sat_to_tsat_naive", SAT => TSAT, SSP_ONLY,
        "split long clauses recursively on a fresh helper, no guard clauses",
        transform: sat::sat_to_tsat_naive, embed: Some(sat::embed_same_literals), lift: None, unlift: None),
    def!("sat_to_tsat", SAT => TSAT, YES_YES,
        "split long clauses on fresh helpers and add guards forcing each helper to the residual clause value",
        transform: sat::sat_to_tsat, embed: Some(sat::embed_same_literals), lift: Some(sat::lift_sat_to_tsat), unlift: None),
    def!("tsat_to_esat", TSAT => ESAT, YES_YES,
        "pad short clauses with negated helpers h1..h3 and add seven clauses forcing all helpers true",
        transform: sat::tsat_to_esat, embed: Some(sat::embed_same_literals), lift: Some(sat::lift_tsat_to_esat), unlift: None),
    def!("esat_to_osat", ESAT => OSAT, YES_YES,
        "replace every clause by seven 1-in-3 clauses over nine fresh helpers z, h, g",
        transform: sat::esat_to_osat, embed: Some(sat::embed_same_literals), lift: Some(sat::lift_esat_to_osat), unlift: None),
    def!("esat_to_mis", ESAT => MIS, SSP_ONLY,
        "literal-pair edges plus one triangle per clause joined to the negated literals, k = |L2| + |C|",
        transform: sat::esat_to_mis, embed: Some(sat::embed_literal_vertices), lift: None, unlift: None),
    def!("esat_to_mvc", ESAT => MVC, SSP_ONLY,
        "literal-pair edges plus one triangle per clause joined to the literals themselves, k = |L2| + 2|C|",
        transform: sat::esat_to_mvc, embed: Some(sat::embed_literal_vertices), lift: None, unlift: None),
    def!("esat_to_mds", ESAT => MDS, YES_YES,
        "literal pair with two private neighbours per variable, one vertex per clause, k = |L2|",
        transform: sat::esat_to_mds, embed: Some(sat::embed_mds), lift: Some(sat::lift_esat_to_mds), unlift: None),
    def!("esat_to_cq", ESAT => CQ, SPR_ONLY,
        "one vertex per clause-satisfying total assignment, edges between equal labels, k = |C|",
        transform: sat::esat_to_cq, embed: None, lift: Some(sat::lift_esat_to_cq), unlift: Some(sat::unlift_esat_to_cq),
        growth: None),
    def!("esat_to_ss", ESAT => SS, YES_YES,
        "base-2 digit encoding: one digit per variable and a 3-digit block per clause, M = 1..1(100)..(100)",
        transform: sat::esat_to_ss, embed: Some(sat::embed_ss), lift: Some(sat::lift_esat_to_ss), unlift: None),
    def!("esat_to_dhp", ESAT => DHP, YES_YES,
        "variable paths of 4|C| vertices traversed left or right, one directed clause triangle per clause",
        transform: sat::esat_to_dhp, embed: Some(sat::embed_dhp), lift: Some(sat::lift_esat_to_dhp), unlift: None),
    def!("esat_to_dhc", ESAT => DHC, YES_YES,
        "the Hamiltonian path construction closed by an arc from t to s",
        transform: sat::esat_to_dhc, embed: Some(sat::embed_dhp), lift: Some(sat::lift_esat_to_dhc), unlift: None),
    def!("osat_to_stt", OSAT => STT, YES_YES,
        "diamond chain from s to t plus a path of |L|+1 unit edges from each clause literal to its clause terminal",
        transform: sat::osat_to_stt, embed: Some(sat::embed_stt), lift: Some(sat::lift_osat_to_stt), unlift: None),
    def!("osat_to_mvc", OSAT => MVC, YES_YES,
        "the clause-triangle vertex cover gadget on a 1-in-3 source",
        transform: sat::osat_to_mvc, embed: Some(sat::embed_literal_vertices), lift: Some(sat::lift_osat_to_mvc), unlift: None),
    def!("osat_to_mis", OSAT => MIS, YES_YES,
        "the clause-triangle independent set gadget on a 1-in-3 source",
        transform: sat::osat_to_mis, embed: Some(sat::embed_literal_vertices), lift: Some(sat::lift_osat_to_mis), unlift: None),
    def!("osat_to_odm", OSAT => ODM, YES_YES,
        "one alternating wheel of triples per variable, two elements per clause, complementary copies as singletons",
        transform: sat::osat_to_odm, embed: Some(sat::embed_odm), lift: Some(sat::lift_osat_to_odm), unlift: None),
    def!("odm_to_dm", ODM => DM, YES_YES,
        "three labelled copies with rotated triples and one triple per singleton across its copies",
        transform: sat::odm_to_dm, embed: Some(sat::embed_dm), lift: Some(sat::lift_odm_to_dm), unlift: None),
    def!("ss_to_ks", SS => KS, YES_YES,
        "each number becomes an object with equal price and weight, P = W = M",
        transform: numbers::ss_to_ks, embed: Some(numbers::embed_ss_to_ks), lift: Some(numbers::lift_ss_to_ks), unlift: None),
    def!("ss_to_p", SS => P, YES_YES,
        "append M+1 and a last number total+1-M",
        transform: numbers::ss_to_p, embed: Some(numbers::embed_ss_to_p), lift: Some(numbers::lift_ss_to_p), unlift: None),
    def!("p_to_tms", P => TMS, YES_YES,
        "numbers become jobs with deadline half the total",
        transform: numbers::p_to_tms, embed: Some(numbers::embed_p_to_tms), lift: Some(numbers::lift_p_to_tms), unlift: None),
    def!("mvc_to_mds", MVC => MDS, YES_YES,
        "hub v_iso with k+2 pendants joined to isolated vertices, |V|+1 common neighbours per edge, k' = k+1",
        transform: graphs::mvc_to_mds, embed: Some(graphs::embed_vertices_same), lift: Some(graphs::lift_mvc_to_mds), unlift: None),
    def!("mvc_to_sc", MVC => SC, YES_YES,
        "each vertex becomes the set of its incident edge indices, exactly k sets",
        transform: graphs::mvc_to_sc, embed: Some(graphs::embed_vertex_to_set), lift: Some(graphs::lift_vertex_to_set), unlift: None),
    def!("mvc_to_hs", MVC => HS, YES_YES,
        "each edge becomes the pair of its endpoint indices, exactly k elements",
        transform: graphs::mvc_to_hs, embed: Some(graphs::embed_vertex_to_obj), lift: Some(graphs::lift_vertex_to_obj), unlift: None),
    def!("mvc_to_fvs", MVC => FVS, YES_YES,
        "each edge becomes a directed 2-cycle",
        transform: graphs::mvc_to_fvs, embed: Some(graphs::embed_vertices_same), lift: Some(graphs::lift_vertices_same), unlift: None),
    def!("mvc_to_fas", MVC => FAS, YES_YES,
        "each vertex becomes an arc (v0,v1); |V|+1 two-arc paths from u1 to v0 and from v1 to u0 per edge",
        transform: graphs::mvc_to_fas, embed: Some(graphs::embed_fas), lift: Some(graphs::lift_fas), unlift: None),
    def!("mvc_to_ufl", MVC => UFL, YES_YES,
        "clients are edges, facilities are vertices, opening cost 1, service cost 0 or |V|+1",
        transform: graphs::mvc_to_ufl, embed: Some(graphs::embed_facility), lift: Some(graphs::lift_facility), unlift: None),
    def!("mvc_to_pcen", MVC => PCEN, YES_YES,
        "the facility cost matrix with p = k and radius 0",
        transform: graphs::mvc_to_pcen, embed: Some(graphs::embed_facility), lift: Some(graphs::lift_facility), unlift: None),
    def!("mvc_to_pmed", MVC => PMED, YES_YES,
        "the facility cost matrix with p = k and total cost 0",
        transform: graphs::mvc_to_pmed, embed: Some(graphs::embed_facility), lift: Some(graphs::lift_facility), unlift: None),
    def!("mvc_to_vcv", MVC => VCV, YES_YES,
        "add an isolated fixed vertex v_all, k' = k+1",
        transform: graphs::mvc_to_vcv, embed: Some(graphs::embed_vertices_same), lift: Some(graphs::lift_mvc_to_vcv), unlift: None),
    def!("mis_to_mvc", MIS => MVC, SPR_ONLY,
        "same graph, k' = |V| - k, solutions complemented",
        transform: graphs::mis_to_mvc, embed: None, lift: Some(graphs::complement_vertices), unlift: Some(graphs::complement_vertices)),
    def!("mis_to_cq", MIS => CQ, YES_YES,
        "complement graph",
        transform: graphs::complement_same_k, embed: Some(graphs::embed_vertices_same), lift: Some(graphs::lift_vertices_same), unlift: None),
    def!("mis_to_sp", MIS => SP, YES_YES,
        "each vertex becomes the set of itself and its incident edges",
        transform: graphs::mis_to_sp, embed: Some(graphs::embed_vertex_to_set), lift: Some(graphs::lift_vertex_to_set), unlift: None),
    def!("sp_to_mis", SP => MIS, YES_YES,
        "each set becomes a vertex, overlapping sets are adjacent",
        transform: graphs::sp_to_mis, embed: Some(graphs::embed_set_to_vertex), lift: Some(graphs::lift_set_to_vertex), unlift: None),
    def!("cq_to_mis", CQ => MIS, YES_YES,
        "complement graph",
        transform: graphs::complement_same_k, embed: Some(graphs::embed_vertices_same), lift: Some(graphs::lift_vertices_same), unlift: None),
    def!("cq_to_mvc", CQ => MVC, SPR_ONLY,
        "complement graph, k' = |V| - k, solutions complemented",
        transform: graphs::cq_to_mvc, embed: None, lift: Some(graphs::complement_vertices), unlift: Some(graphs::complement_vertices)),
    def!("dhc_to_uhc", DHC => UHC, YES_YES,
        "each vertex becomes v_in - v - v_out, each arc (u,v) the edge {u_out, v_in}",
        transform: paths::dhc_to_uhc, embed: Some(paths::embed_split), lift: Some(paths::lift_split), unlift: None),
    def!("dhp_to_uhp", DHP => UHP, YES_YES,
        "the same vertex split, endpoints s_in and t_out",
        transform: paths::dhp_to_uhp, embed: Some(paths::embed_split), lift: Some(paths::lift_split), unlift: None),
    def!("uhc_to_tsp", UHC => TSP, YES_YES,
        "complete graph, weight 0 on original edges and 1 elsewhere, k = 0",
        transform: paths::uhc_to_tsp, embed: Some(paths::embed_edges_same), lift: Some(paths::lift_embed_edges), unlift: None),
    def!("uhp_to_uhc", UHP => UHC, YES_YES,
        "add v_new adjacent to s and t",
        transform: paths::uhp_to_uhc, embed: Some(paths::embed_edges_same), lift: Some(paths::lift_with_new_vertex), unlift: None),
    def!("uhp_to_tsp", UHP => TSP, YES_YES,
        "complete graph on V plus v_new, weight 0 on original edges and on {v_new,s}, {v_new,t}, k = 0",
        transform: paths::uhp_to_tsp, embed: Some(paths::embed_edges_same), lift: Some(paths::lift_with_new_vertex), unlift: None),
    def!("vc_to_ds_demo", VC => DS, SSP_ONLY,
        "k+1 common neighbours per edge under threshold semantics, hub for isolated vertices",
        transform: graphs::vc_to_ds_demo, embed: Some(graphs::embed_vertices_same), lift: None, unlift: None,
        demo: true),
];

/// All registered reductions in registry order.
pub fn registry() -> &'static [ReductionDef] {
    &REGISTRY
}

pub fn find(id: &str) -> Result<&'static ReductionDef> {
    REGISTRY
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownReduction(id.to_string()))
}

/// Filter for [`list_reductions`]; `None` fields match anything.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Filter {
    pub source: Option<ProblemId>,
    pub target: Option<ProblemId>,
    pub ssp: Option<bool>,
    pub spr: Option<bool>,
}

pub fn list_reductions(filter: &Filter) -> Vec<&'static ReductionDef> {
    REGISTRY
        .iter()
        .filter(|r| filter.source.is_none_or(|s| r.source == s))
        .filter(|r| filter.target.is_none_or(|t| r.target == t))
        .filter(|r| filter.ssp.is_none_or(|b| r.claims.ssp == b))
        .filter(|r| filter.spr.is_none_or(|b| r.claims.spr == b))
        .collect()
}

/// A registered reduction or a chain of them.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    steps: Vec<&'static ReductionDef>,
}

impl From<&'static ReductionDef> for Reduction {
    fn from(d: &'static ReductionDef) -> Self {
        Reduction { steps: vec![d] }
    }
}

impl Reduction {
    /// Looks up an id; `a+b+c` names a composition.
    pub fn by_id(id: &str) -> Result<Reduction> {
        let mut parts = id.split('+');
        let first = find(parts.next().unwrap_or_default())?;
        let mut r = Reduction::from(first);
        for p in parts {
            r = r.compose(&Reduction::from(find(p)?))?;
        }
        Ok(r)
    }

    /// Chains `self` then `next`; the target of `self` must be the source of `next`.
    pub fn compose(&self, next: &Reduction) -> Result<Reduction> {
        if self.target() != next.source() {
            return Err(Error::KindMismatch {
                expected: self.target(),
                found: next.source(),
            });
        }
        let mut steps = self.steps.clone();
        steps.extend(next.steps.iter().copied());
        Ok(Reduction { steps })
    }

    pub fn steps(&self) -> &[&'static ReductionDef] {
        &self.steps
    }

    pub fn id(&self) -> String {
        self.steps.iter().map(|s| s.id).collect::<Vec<_>>().join("+")
    }

    pub fn source(&self) -> ProblemId {
        self.steps[0].source
    }

    pub fn target(&self) -> ProblemId {
        self.steps[self.steps.len() - 1].target
    }

    /// A chain has a property when every step claims it.
    pub fn claims(&self) -> Claims {
        Claims {
            ssp: self.steps.iter().all(|s| s.claims.ssp),
            spr: self.steps.iter().all(|s| s.claims.spr),
        }
    }

    pub fn is_demo(&self) -> bool {
        self.steps.iter().any(|s| s.demo)
    }

    pub fn has_embedding(&self) -> bool {
        self.steps.iter().all(|s| s.embed.is_some())
    }

    pub fn has_lift(&self) -> bool {
        self.steps.iter().all(|s| s.lift.is_some())
    }

    pub fn apply(&self, inst: &Instance) -> Result<Instance> {
        let mut cur = inst.clone();
        for s in &self.steps {
            cur = apply_step(s, &cur)?;
        }
        Ok(cur)
    }

    /// Applies the transform and prepares embedding and lifting for this instance.
    pub fn instantiate(&self, inst: &Instance) -> Result<Applied> {
        let mut stages = Vec::with_capacity(self.steps.len());
        let mut cur = inst.clone();
        for &def in &self.steps {
            let target = apply_step(def, &cur)?;
            let su = cur.universe()?;
            let tu = target.universe()?;
            let images = match def.embed {
                Some(e) => Some(positions(&tu, &e(&cur, &target)?, su.len(), def.id)?),
                None => None,
            };
            stages.push(Stage {
                def,
                source: cur,
                target: target.clone(),
                su,
                tu,
                images,
            });
            cur = target;
        }
        Ok(Applied { id: self.id(), stages })
    }
}

fn apply_step(def: &ReductionDef, inst: &Instance) -> Result<Instance> {
    if inst.kind != def.source {
        return Err(Error::KindMismatch {
            expected: def.source,
            found: inst.kind,
        });
    }
    inst.validate()?;
    let out = (def.transform)(inst)?;
    debug_assert_eq!(out.kind, def.target);
    out.validate()?;
    Ok(out)
}

fn positions(tu: &Universe, images: &[Element], n: usize, id: &str) -> Result<Vec<usize>> {
    if images.len() != n {
        return Err(Error::Internal(format!(
            "{id}: {} images for {n} source elements",
            images.len()
        )));
    }
    images
        .iter()
        .map(|e| {
            tu.position(e)
                .ok_or_else(|| Error::Internal(format!("{id}: image {e:?} outside the target universe")))
        })
        .collect()
}

struct Stage {
    def: &'static ReductionDef,
    source: Instance,
    target: Instance,
    su: Universe,
    tu: Universe,
    images: Option<Vec<usize>>,
}

impl Stage {
    fn lift(&self, s: &Solution) -> Result<Solution> {
        let f = self.def.lift.ok_or_else(|| Error::NoLifting(self.def.id.to_string()))?;
        let out = f(&self.source, &self.target, &self.su.members(s))?;
        self.tu.solution_of(&out)
    }

    fn unlift(&self, t: &Solution) -> Result<Solution> {
        if let Some(f) = self.def.unlift {
            let out = f(&self.source, &self.target, &self.tu.members(t))?;
            return self.su.solution_of(&out);
        }
        if self.def.lift.is_none() {
            return Err(Error::NoLifting(self.def.id.to_string()));
        }
        // the inverse of a Theorem-1 lift is the preimage of the representatives
        let images = self
            .images
            .as_ref()
            .ok_or_else(|| Error::NoEmbedding(self.def.id.to_string()))?;
        Ok(Solution::from_indices(
            self.su.len(),
            images
                .iter()
                .enumerate()
                .filter(|(_, &p)| t.contains(p))
                .map(|(i, _)| i),
        ))
    }
}

/// A reduction applied to one source instance.
pub struct Applied {
    id: String,
    stages: Vec<Stage>,
}

impl Applied {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn source(&self) -> &Instance {
        &self.stages[0].source
    }

    pub fn target(&self) -> &Instance {
        &self.stages[self.stages.len() - 1].target
    }

    pub fn source_universe(&self) -> &Universe {
        &self.stages[0].su
    }

    pub fn target_universe(&self) -> &Universe {
        &self.stages[self.stages.len() - 1].tu
    }

    /// Intermediate instances, source first and target last.
    pub fn instances(&self) -> Vec<&Instance> {
        let mut v: Vec<&Instance> = self.stages.iter().map(|s| &s.source).collect();
        v.push(self.target());
        v
    }

    /// Target positions of every source element, composed across steps.
    pub fn images(&self) -> Result<Vec<usize>> {
        let mut cur: Vec<usize> = (0..self.source_universe().len()).collect();
        for st in &self.stages {
            let img = st
                .images
                .as_ref()
                .ok_or_else(|| Error::NoEmbedding(st.def.id.to_string()))?;
            cur = cur.into_iter().map(|i| img[i]).collect();
        }
        Ok(cur)
    }

    pub fn has_lift(&self) -> bool {
        self.stages.iter().all(|s| s.def.lift.is_some())
    }

    pub fn embed_element(&self, e: &Element) -> Result<Element> {
        let i = self
            .source_universe()
            .position(e)
            .ok_or_else(|| Error::ElementNotInUniverse(format!("{e:?}")))?;
        Ok(self.target_universe().get(self.images()?[i]))
    }

    /// Image of a whole subset under the embedding.
    pub fn embed_set(&self, s: &Solution) -> Result<Solution> {
        let img = self.images()?;
        Ok(Solution::from_indices(
            self.target_universe().len(),
            s.ones().map(|i| img[i]),
        ))
    }

    /// Lifts without checking that `s` is a source solution.
    pub fn lift_unchecked(&self, s: &Solution) -> Result<Solution> {
        let mut cur = s.clone();
        for st in &self.stages {
            cur = st.lift(&cur)?;
        }
        Ok(cur)
    }

    pub fn lift(&self, s: &Solution) -> Result<Solution> {
        if !self.has_lift() {
            return Err(Error::NoLifting(self.id.clone()));
        }
        let src = self.source();
        if !verify_solution(src.kind, src, s)? {
            return Err(Error::NotASolution(format!("{:?} is not a {} solution", s, src.kind)));
        }
        self.lift_unchecked(s)
    }

    pub fn unlift_unchecked(&self, t: &Solution) -> Result<Solution> {
        let mut cur = t.clone();
        for st in self.stages.iter().rev() {
            cur = st.unlift(&cur)?;
        }
        Ok(cur)
    }

    pub fn unlift(&self, t: &Solution) -> Result<Solution> {
        let tgt = self.target();
        if !verify_solution(tgt.kind, tgt, t)? {
            return Err(Error::NotASolution(format!("{:?} is not a {} solution", t, tgt.kind)));
        }
        self.unlift_unchecked(t)
    }
}

/// Target instance of `red` on `inst`.
pub fn apply_reduction(red: &Reduction, inst: &Instance) -> Result<Instance> {
    red.apply(inst)
}

pub fn embed_element(red: &Reduction, inst: &Instance, e: &Element) -> Result<Element> {
    if !red.has_embedding() {
        return Err(Error::NoEmbedding(red.id()));
    }
    red.instantiate(inst)?.embed_element(e)
}

pub fn lift_solution(red: &Reduction, inst: &Instance, s: &Solution) -> Result<Solution> {
    if !red.has_lift() {
        return Err(Error::NoLifting(red.id()));
    }
    red.instantiate(inst)?.lift(s)
}

pub fn unlift_solution(red: &Reduction, inst: &Instance, t: &Solution) -> Result<Solution> {
    if !red.has_lift() {
        return Err(Error::NoLifting(red.id()));
    }
    red.instantiate(inst)?.unlift(t)
}

/// Shared helper: the target-universe elements of a source solution under an embedding.
pub(crate) fn embed_members(images: &[Element], su: &Universe, s: &[Element]) -> Result<Vec<Element>> {
    s.iter()
        .map(|e| {
            su.position(e)
                .map(|i| images[i])
                .ok_or_else(|| Error::ElementNotInUniverse(format!("{e:?}")))
        })
        .collect()
}

/// Lift of the Theorem-1 shape with no linked part: embed(S) plus fixed extras.
pub(crate) fn embed_plus(
    embed: EmbedFn,
    src: &Instance,
    tgt: &Instance,
    s: &[Element],
    extra: &[Element],
) -> Result<Vec<Element>> {
    let images = embed(src, tgt)?;
    let su = src.universe()?;
    let mut out = embed_members(&images, &su, s)?;
    out.extend_from_slice(extra);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique() {
        let mut ids: Vec<&str> = REGISTRY.iter().map(|r| r.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 40);
    }

    #[test]
    fn filters() {
        assert_eq!(list_reductions(&Filter::default()).len(), 40);
        let mvc = list_reductions(&Filter {
            source: Some(ProblemId::MVC),
            ..Filter::default()
        });
        assert_eq!(mvc.len(), 9);
        let no_spr: Vec<&str> = list_reductions(&Filter {
            spr: Some(false),
            ..Filter::default()
        })
        .iter()
        .map(|r| r.id)
        .collect();
        assert_eq!(
            no_spr,
            ["sat_to_tsat_naive", "esat_to_mis", "esat_to_mvc", "vc_to_ds_demo"]
        );
    }
}
