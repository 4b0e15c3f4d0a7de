#![allow(dead_code)]

use std::collections::BTreeSet;

use sspforge::model::{Budget, Element, Solution};
use sspforge::problems::{enumerate_solutions, Instance};
use sspforge::reductions::Reduction;
use sspforge::verifier::{full_report, VerificationReport};

pub fn red(id: &str) -> Reduction {
    Reduction::by_id(id).unwrap()
}

/// Clauses as sets of literal names, e.g. {"x1", "~h1"}.
pub fn clause_names(inst: &Instance) -> BTreeSet<BTreeSet<String>> {
    let c = inst.cnf_payload().unwrap();
    c.clauses
        .iter()
        .map(|cl| cl.iter().map(|l| inst.element_name(&l.element())).collect())
        .collect()
}

pub fn names(inst: &Instance, s: &Solution) -> BTreeSet<String> {
    let u = inst.universe().unwrap();
    u.members(s).iter().map(|e| inst.element_name(e)).collect()
}

pub fn name_set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

pub fn solutions(inst: &Instance) -> Vec<Solution> {
    enumerate_solutions(inst.kind, inst, &mut Budget::default())
        .unwrap()
        .iter()
        .cloned()
        .collect()
}

pub fn solution_of(inst: &Instance, elems: &[Element]) -> Solution {
    inst.universe().unwrap().solution_of(elems).unwrap()
}

pub fn report(id: &str, inst: &Instance) -> VerificationReport {
    full_report(&red(id), inst, &mut Budget::default()).unwrap()
}
