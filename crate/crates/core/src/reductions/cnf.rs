use std::collections::HashSet;

use crate::error::Result;
use crate::problems::{Cnf, Instance, Lit, Namer, ProblemId};

/// Accumulates a target CNF: source variables first, fresh helpers after,
/// clauses deduplicated as literal sets.
pub(crate) struct CnfBuilder {
    vars: Vec<String>,
    namer: Namer,
    clauses: Vec<Vec<Lit>>,
    seen: HashSet<Vec<Lit>>,
}

impl CnfBuilder {
    pub fn new(src: &Cnf) -> CnfBuilder {
        CnfBuilder {
            vars: src.vars.clone(),
            namer: Namer::new(&src.vars),
            clauses: Vec::new(),
            seen: HashSet::new(),
        }
    }

    pub fn helper(&mut self, base: &str) -> u32 {
        let name = self.namer.fresh(base);
        self.vars.push(name);
        (self.vars.len() - 1) as u32
    }

    pub fn clause(&mut self, c: Vec<Lit>) {
        let mut key = c.clone();
        key.sort_unstable();
        if self.seen.insert(key) {
            self.clauses.push(c);
        }
    }

    pub fn finish(self, kind: ProblemId) -> Result<Instance> {
        Instance::cnf(kind, self.vars, self.clauses)
    }
}
