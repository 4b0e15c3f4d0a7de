//! Extensional checks of the SSP property, parsimony and the Theorem-1
//! partition on concrete instances.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formats::fingerprint;
use crate::model::{Budget, Element, Solution, SolutionSet};
use crate::problems::{enumerate_solutions, generate_instance, verify_solution, Instance, SizeParams};
use crate::reductions::{Applied, Claims, Reduction};

/// Most witnesses kept per failed property.
pub const MAX_WITNESSES: usize = 3;

/// A solution illustrating a failure, with its element names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Which property the witness refutes.
    pub property: &'static str,
    /// "source" or "target" universe.
    pub side: &'static str,
    pub note: String,
    pub elements: Vec<String>,
}

/// The split of the target universe into representatives, always-in,
/// never-in and linked elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCertificate {
    pub s_rep: Solution,
    pub s_all: Solution,
    pub s_nev: Solution,
    pub s_link: Solution,
    /// Source solution to the linked part of its target solution.
    pub link_map: BTreeMap<Solution, Solution>,
    pub valid: bool,
    /// Both solution sets are empty, so the partition is unconstrained.
    pub vacuous: bool,
    pub failure_reason: Option<String>,
    /// Names of the source and target universe elements, by position.
    pub source_elements: Vec<String>,
    pub target_elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub reduction_id: String,
    pub fingerprint: String,
    pub claims: Claims,
    pub source_count: usize,
    pub target_count: usize,
    pub ssp_holds: bool,
    pub spr_holds: bool,
    pub ssp_reason: Option<String>,
    pub spr_reason: Option<String>,
    pub partition: Option<PartitionCertificate>,
    pub witnesses: Vec<Witness>,
    pub nodes: u64,
    /// Wall time; not part of the serialized report.
    pub elapsed: Duration,
}

impl VerificationReport {
    /// A claimed property failed on this instance. A property holding
    /// despite a "no" claim is not a contradiction on a single instance.
    pub fn mismatch(&self) -> bool {
        (self.claims.ssp && !self.ssp_holds) || (self.claims.spr && !self.spr_holds)
    }

    pub fn vacuous(&self) -> bool {
        self.source_count == 0 && self.target_count == 0
    }
}

/// Both solution sets of an applied reduction.
pub struct Enumerated {
    pub applied: Applied,
    pub source: SolutionSet,
    pub target: SolutionSet,
}

impl Enumerated {
    pub fn new(red: &Reduction, inst: &Instance, budget: &mut Budget) -> Result<Enumerated> {
        let applied = red.instantiate(inst)?;
        let source = enumerate_solutions(inst.kind, inst, budget)?;
        let tgt = applied.target();
        let target = enumerate_solutions(tgt.kind, tgt, budget)?;
        Ok(Enumerated {
            applied,
            source,
            target,
        })
    }

    fn source_names(&self, s: &Solution) -> Vec<String> {
        let u = self.applied.source_universe();
        u.members(s)
            .iter()
            .map(|e| self.applied.source().element_name(e))
            .collect()
    }

    fn target_names(&self, s: &Solution) -> Vec<String> {
        let u = self.applied.target_universe();
        u.members(s)
            .iter()
            .map(|e| self.applied.target().element_name(e))
            .collect()
    }

    /// {f(S)} against {S' ∩ f(U)}.
    pub fn ssp(&self) -> (bool, Option<String>, Vec<Witness>) {
        let images = match self.applied.images() {
            Ok(i) => i,
            Err(Error::NoEmbedding(_)) => return (false, Some("no registered f_I".into()), Vec::new()),
            Err(e) => return (false, Some(e.to_string()), Vec::new()),
        };
        let distinct: BTreeSet<usize> = images.iter().copied().collect();
        if distinct.len() != images.len() {
            return (false, Some("embedding is not injective".into()), Vec::new());
        }
        let m = self.applied.target_universe().len();
        let image_set = Solution::from_indices(m, images.iter().copied());
        let lhs: BTreeSet<Solution> = self
            .source
            .iter()
            .map(|s| Solution::from_indices(m, s.ones().map(|i| images[i])))
            .collect();
        let rhs: BTreeSet<Solution> = self.target.iter().map(|t| t.intersection(&image_set)).collect();
        if lhs == rhs {
            return (true, None, Vec::new());
        }
        let mut w = Vec::new();
        for s in lhs.difference(&rhs).take(MAX_WITNESSES) {
            w.push(Witness {
                property: "ssp",
                side: "target",
                note: "image of a source solution matches no target solution".into(),
                elements: self.target_names(s),
            });
        }
        for s in rhs.difference(&lhs).take(MAX_WITNESSES) {
            w.push(Witness {
                property: "ssp",
                side: "target",
                note: "restriction of a target solution is no source image".into(),
                elements: self.target_names(s),
            });
        }
        (false, Some("image sets differ".into()), w)
    }

    /// Counts, plus the lift as a bijection when one is registered.
    pub fn spr(&self) -> (bool, Option<String>, Vec<Witness>) {
        let (ns, nt) = (self.source.len(), self.target.len());
        let mut w = Vec::new();
        if !self.applied.has_lift() {
            if ns == nt {
                return (true, None, w);
            }
            self.fibre_witnesses(&mut w);
            return (false, Some(format!("counts differ: {ns} source, {nt} target")), w);
        }
        let mut hit = BTreeSet::new();
        for s in self.source.iter() {
            let lifted = match self.applied.lift_unchecked(s) {
                Ok(t) => t,
                Err(e) => {
                    w.push(self.source_witness(s, format!("lift failed: {e}")));
                    return (false, Some("lift failed".into()), w);
                }
            };
            if !self.target.contains(&lifted) {
                w.push(self.source_witness(s, "lift is not a target solution".into()));
            } else if !hit.insert(lifted.clone()) {
                w.push(self.source_witness(s, "lift collides with another source solution".into()));
            } else if self.applied.unlift_unchecked(&lifted).ok().as_ref() != Some(s) {
                w.push(self.source_witness(s, "unlift does not invert the lift".into()));
            }
            if w.len() >= MAX_WITNESSES {
                break;
            }
        }
        if !w.is_empty() {
            return (false, Some("lift is not a bijection".into()), w);
        }
        if hit.len() != nt {
            for t in self.target.iter().filter(|t| !hit.contains(*t)).take(MAX_WITNESSES) {
                w.push(Witness {
                    property: "spr",
                    side: "target",
                    note: "target solution not reached by the lift".into(),
                    elements: self.target_names(t),
                });
            }
            return (false, Some(format!("counts differ: {ns} source, {nt} target")), w);
        }
        (true, None, w)
    }

    fn source_witness(&self, s: &Solution, note: String) -> Witness {
        Witness {
            property: "spr",
            side: "source",
            note,
            elements: self.source_names(s),
        }
    }

    /// Without a lift, report the target solutions sharing the image of the
    /// first source solution whose fibre is not a singleton.
    fn fibre_witnesses(&self, w: &mut Vec<Witness>) {
        let Ok(images) = self.applied.images() else {
            return;
        };
        let m = self.applied.target_universe().len();
        let image_set = Solution::from_indices(m, images.iter().copied());
        let mut fibres: BTreeMap<Solution, Vec<&Solution>> = BTreeMap::new();
        for t in self.target.iter() {
            fibres.entry(t.intersection(&image_set)).or_default().push(t);
        }
        for s in self.source.iter() {
            let img = Solution::from_indices(m, s.ones().map(|i| images[i]));
            let fibre = fibres.get(&img).map(Vec::as_slice).unwrap_or_default();
            if fibre.len() == 1 {
                continue;
            }
            let label = self.source_names(s).join(",");
            if fibre.is_empty() {
                w.push(self.source_witness(s, "no target solution restricts to its image".into()));
            }
            for t in fibre.iter().take(MAX_WITNESSES) {
                w.push(Witness {
                    property: "spr",
                    side: "target",
                    note: format!("one of {} target solutions extending {{{label}}}", fibre.len()),
                    elements: self.target_names(t),
                });
            }
            return;
        }
    }

    /// Theorem-1 partition of the target universe.
    pub fn partition(&self) -> Result<PartitionCertificate> {
        let images = self.applied.images()?;
        let m = self.applied.target_universe().len();
        let s_rep = Solution::from_indices(m, images.iter().copied());
        let mut inter = Solution::full(m);
        let mut union = Solution::empty(m);
        for t in self.target.iter() {
            inter = inter.intersection(t);
            union = union.union(t);
        }
        if self.target.is_empty() {
            inter = Solution::empty(m);
        }
        let s_all = inter.difference(&s_rep);
        let s_nev = union.union(&s_rep).complement();
        let s_link = s_rep.union(&s_all).union(&s_nev).complement();
        let mut cert = PartitionCertificate {
            s_rep: s_rep.clone(),
            s_all,
            s_nev,
            s_link: s_link.clone(),
            link_map: BTreeMap::new(),
            valid: true,
            vacuous: false,
            failure_reason: None,
            source_elements: self.source_names(&Solution::full(self.applied.source_universe().len())),
            target_elements: self.target_names(&Solution::full(m)),
        };
        if self.source.is_empty() && self.target.is_empty() {
            cert.vacuous = true;
            return Ok(cert);
        }
        let mut position = vec![usize::MAX; m];
        for (i, &p) in images.iter().enumerate() {
            position[p] = i;
        }
        let n = self.applied.source_universe().len();
        for t in self.target.iter() {
            let pre = Solution::from_indices(n, t.intersection(&s_rep).ones().map(|p| position[p]));
            if !self.source.contains(&pre) {
                cert.fail("a representative part is not a source solution");
                return Ok(cert);
            }
            if cert.link_map.insert(pre, t.intersection(&s_link)).is_some() {
                cert.fail("two target solutions share a representative part");
                return Ok(cert);
            }
        }
        if cert.link_map.len() != self.source.len() {
            cert.fail("some source solution has no target counterpart");
        }
        Ok(cert)
    }
}

impl PartitionCertificate {
    fn fail(&mut self, reason: &str) {
        self.valid = false;
        self.failure_reason = Some(reason.to_string());
    }

    /// Target solution rebuilt from a source solution's images, S_all and its linked part.
    pub fn reconstruct(&self, images: &[usize], source: &Solution) -> Option<Solution> {
        let link = self.link_map.get(source)?;
        let rep = Solution::from_indices(self.s_rep.universe_len(), source.ones().map(|i| images[i]));
        Some(rep.union(&self.s_all).union(link))
    }
}

pub fn check_ssp(red: &Reduction, inst: &Instance, budget: &mut Budget) -> Result<(bool, Vec<Witness>)> {
    if !red.has_embedding() {
        return Err(Error::NoEmbedding(red.id()));
    }
    let e = Enumerated::new(red, inst, budget)?;
    let (ok, _, w) = e.ssp();
    Ok((ok, w))
}

pub fn check_parsimonious(red: &Reduction, inst: &Instance, budget: &mut Budget) -> Result<(bool, usize, usize)> {
    let e = Enumerated::new(red, inst, budget)?;
    let (ok, _, _) = e.spr();
    Ok((ok, e.source.len(), e.target.len()))
}

pub fn classify_partition(red: &Reduction, inst: &Instance, budget: &mut Budget) -> Result<PartitionCertificate> {
    if !red.has_embedding() {
        return Err(Error::NoEmbedding(red.id()));
    }
    Enumerated::new(red, inst, budget)?.partition()
}

/// Runs every applicable check on one instance.
pub fn full_report(red: &Reduction, inst: &Instance, budget: &mut Budget) -> Result<VerificationReport> {
    let start = Instant::now();
    let used = budget.used();
    let e = Enumerated::new(red, inst, budget)?;
    let (ssp_holds, ssp_reason, mut witnesses) = e.ssp();
    let (spr_holds, spr_reason, w) = e.spr();
    witnesses.extend(w);
    let partition = if red.has_embedding() {
        Some(e.partition()?)
    } else {
        None
    };
    Ok(VerificationReport {
        reduction_id: red.id(),
        fingerprint: fingerprint(inst),
        claims: red.claims(),
        source_count: e.source.len(),
        target_count: e.target.len(),
        ssp_holds,
        spr_holds,
        ssp_reason,
        spr_reason,
        partition,
        witnesses,
        nodes: budget.used() - used,
        elapsed: start.elapsed(),
    })
}

/// Property targeted by [`search_counterexample`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Ssp,
    Spr,
    Partition,
}

impl std::str::FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Property> {
        match s.to_ascii_lowercase().as_str() {
            "ssp" => Ok(Property::Ssp),
            "spr" => Ok(Property::Spr),
            "partition" => Ok(Property::Partition),
            other => Err(Error::invalid(format!("unknown property {other}"))),
        }
    }
}

impl Property {
    pub fn fails(self, r: &VerificationReport) -> bool {
        match self {
            Property::Ssp => !r.ssp_holds,
            Property::Spr => !r.spr_holds,
            Property::Partition => r.partition.as_ref().is_none_or(|p| !p.valid),
        }
    }
}

/// Result of one seeded trial.
#[derive(Debug, Clone)]
pub enum Trial {
    Checked(Box<(Instance, VerificationReport)>),
    /// The generator gave up or the transform rejected the shape.
    Skipped(String),
    BudgetExceeded {
        nodes: u64,
    },
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// First failing trial by index, if any.
    pub found: Option<(usize, Instance, VerificationReport)>,
    pub trials: Vec<Trial>,
}

impl SearchOutcome {
    pub fn checked(&self) -> usize {
        self.trials.iter().filter(|t| matches!(t, Trial::Checked(_))).count()
    }

    pub fn budget_exceeded(&self) -> usize {
        self.trials
            .iter()
            .filter(|t| matches!(t, Trial::BudgetExceeded { .. }))
            .count()
    }
}

/// One seeded trial: generate a source instance, then report on it.
pub fn run_trial(red: &Reduction, params: &SizeParams, seed: u64, limit: u64) -> Trial {
    let inst = match generate_instance(red.source(), params, seed) {
        Ok(i) => i,
        Err(e) => return Trial::Skipped(e.to_string()),
    };
    let mut budget = Budget::new(limit);
    match full_report(red, &inst, &mut budget) {
        Ok(r) => Trial::Checked(Box::new((inst, r))),
        Err(Error::BudgetExceeded { nodes }) => Trial::BudgetExceeded { nodes },
        Err(e @ (Error::UnsupportedShape(_) | Error::GenerationFailed(_))) => Trial::Skipped(e.to_string()),
        Err(e) => Trial::Skipped(format!("error: {e}")),
    }
}

/// Runs `trials` seeded trials (seed, seed+1, ...) concurrently, each with its
/// own budget of `limit` nodes, and returns the first failure by trial index.
pub fn search_counterexample(
    red: &Reduction,
    property: Property,
    params: &SizeParams,
    trials: usize,
    seed: u64,
    limit: u64,
) -> Result<SearchOutcome> {
    params.check()?;
    if property == Property::Ssp && !red.has_embedding() {
        // without f_I the property fails on any instance
        let inst = generate_instance(red.source(), params, seed)?;
        let report = full_report(red, &inst, &mut Budget::new(limit))?;
        return Ok(SearchOutcome {
            found: Some((0, inst.clone(), report.clone())),
            trials: vec![Trial::Checked(Box::new((inst, report)))],
        });
    }
    let results: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|i| run_trial(red, params, seed.wrapping_add(i as u64), limit))
        .collect();
    let found = results.iter().enumerate().find_map(|(i, t)| match t {
        Trial::Checked(b) if property.fails(&b.1) => Some((i, b.0.clone(), b.1.clone())),
        _ => None,
    });
    Ok(SearchOutcome { found, trials: results })
}

/// Target solutions rebuilt from a valid certificate all pass the verifier.
pub fn certificate_sound(e: &Enumerated, cert: &PartitionCertificate) -> Result<bool> {
    if !cert.valid {
        return Ok(false);
    }
    let images = e.applied.images()?;
    let tgt = e.applied.target();
    for s in e.source.iter() {
        let Some(t) = cert.reconstruct(&images, s) else {
            return Ok(false);
        };
        if !verify_solution(tgt.kind, tgt, &t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Element names of a solution in an instance.
pub fn names(inst: &Instance, s: &Solution) -> Result<Vec<String>> {
    let u = inst.universe()?;
    Ok(u.members(s).iter().map(|e: &Element| inst.element_name(e)).collect())
}
