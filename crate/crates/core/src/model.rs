//! Universal data model: universe elements, solutions as bitmasks, solution sets.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A tagged universe atom.
///
/// Indices refer to the owning instance's payload (vertex index, number index,
/// triple index and so on). Edges keep their endpoints sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Lit { var: u32, neg: bool },
    Vertex(u32),
    Edge(u32, u32),
    Arc(u32, u32),
    Num(u32),
    Obj(u32),
    Triple(u32, u32, u32),
    Singleton(u32),
    SetIdx(u32),
    Facility(u32),
    Job(u32),
}

impl Element {
    /// Edge constructor that canonicalizes endpoint order.
    pub fn edge(a: u32, b: u32) -> Element {
        if a <= b {
            Element::Edge(a, b)
        } else {
            Element::Edge(b, a)
        }
    }

    pub fn lit(var: u32, neg: bool) -> Element {
        Element::Lit { var, neg }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Element::Lit { .. } => "Lit",
            Element::Vertex(_) => "Vertex",
            Element::Edge(..) => "Edge",
            Element::Arc(..) => "Arc",
            Element::Num(_) => "Num",
            Element::Obj(_) => "Obj",
            Element::Triple(..) => "Triple",
            Element::Singleton(_) => "Singleton",
            Element::SetIdx(_) => "SetIdx",
            Element::Facility(_) => "Facility",
            Element::Job(_) => "Job",
        }
    }
}

/// Ordered, duplicate-free list of elements with a reverse index.
#[derive(Debug, Clone)]
pub struct Universe {
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Universe {}

impl Universe {
    pub fn new(elements: Vec<Element>) -> Result<Universe> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(*e, i).is_some() {
                return Err(Error::InvalidInstance(format!("duplicate universe element {e:?}")));
            }
        }
        Ok(Universe { elements, index })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> Element {
        self.elements[i]
    }

    pub fn position(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index.contains_key(e)
    }

    /// Builds a solution from elements, failing on anything outside the universe.
    pub fn solution_of<'a, I>(&self, elems: I) -> Result<Solution>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        let mut s = Solution::empty(self.len());
        for e in elems {
            let i = self
                .position(e)
                .ok_or_else(|| Error::ElementNotInUniverse(format!("{e:?}")))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn members(&self, s: &Solution) -> Vec<Element> {
        s.ones().map(|i| self.elements[i]).collect()
    }
}

/// A subset of a universe, stored as a bitmask over universe positions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    bits: FixedBitSet,
}

impl Solution {
    pub fn empty(universe_len: usize) -> Solution {
        Solution {
            bits: FixedBitSet::with_capacity(universe_len),
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe_len: usize, idx: I) -> Solution {
        let mut s = Solution::empty(universe_len);
        for i in idx {
            s.insert(i);
        }
        s
    }

    /// Low bits of a `u64`, for small universes in tests.
    pub fn from_mask(universe_len: usize, mask: u64) -> Solution {
        Solution::from_indices(universe_len, (0..universe_len.min(64)).filter(|i| mask >> i & 1 == 1))
    }

    pub fn universe_len(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.bits.set(i, false);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn intersection(&self, other: &Solution) -> Solution {
        let mut b = self.bits.clone();
        b.intersect_with(&other.bits);
        Solution { bits: b }
    }

    pub fn union(&self, other: &Solution) -> Solution {
        let mut b = self.bits.clone();
        b.union_with(&other.bits);
        Solution { bits: b }
    }

    pub fn difference(&self, other: &Solution) -> Solution {
        let mut b = self.bits.clone();
        b.difference_with(&other.bits);
        Solution { bits: b }
    }

    pub fn is_subset(&self, other: &Solution) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Solution) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    /// Complement within the universe.
    pub fn complement(&self) -> Solution {
        let mut b = self.bits.clone();
        b.toggle_range(..);
        Solution { bits: b }
    }

    pub fn full(universe_len: usize) -> Solution {
        Solution::empty(universe_len).complement()
    }
}

impl Ord for Solution {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits
            .ones()
            .cmp(other.bits.ones())
            .then(self.bits.len().cmp(&other.bits.len()))
    }
}

impl PartialOrd for Solution {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

/// Duplicate-free collection of solutions over one universe.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub universe_len: usize,
    pub solutions: BTreeSet<Solution>,
    /// True when produced by exhaustive enumeration.
    pub complete: bool,
    /// Search nodes spent producing the set.
    pub nodes: u64,
}

impl SolutionSet {
    pub fn new(universe_len: usize) -> SolutionSet {
        SolutionSet {
            universe_len,
            solutions: BTreeSet::new(),
            complete: true,
            nodes: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn contains(&self, s: &Solution) -> bool {
        self.solutions.contains(s)
    }

    pub fn insert(&mut self, s: Solution) -> bool {
        self.solutions.insert(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Solution> {
        self.solutions.iter()
    }
}

/// Set-of-sets equality of two complete solution sets over the same universe.
pub fn solution_equal_sets(a: &SolutionSet, b: &SolutionSet) -> Result<bool> {
    if a.universe_len != b.universe_len {
        return Err(Error::UniverseMismatch(format!(
            "universe sizes {} and {}",
            a.universe_len, b.universe_len
        )));
    }
    Ok(a.solutions == b.solutions)
}

/// Node counter for enumeration. Counting nodes rather than time keeps runs reproducible.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub const DEFAULT: u64 = 50_000_000;

    pub fn new(limit: u64) -> Budget {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Budget {
        Budget::new(u64::MAX)
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { nodes: self.used })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// A fresh budget with the same limit.
    pub fn fresh(&self) -> Budget {
        Budget::new(self.limit)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Budget::DEFAULT)
    }
}
