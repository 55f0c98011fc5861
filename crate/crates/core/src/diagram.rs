//! Finite diagrams of linear orders.
//!
//! A [`FiniteDiagram`] is always a strict total order and is stored as its
//! ascending element sequence. A [`FactSet`] is the raw set of basic facts
//! (`E x`, `x < y`), which need not describe a linear order.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::name::ElementName;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinearityViolation {
    #[error("duplicate element {0}")]
    Duplicate(ElementName),
    #[error("fact mentions undeclared element {0}")]
    UnknownElement(ElementName),
    #[error("{0} < {0}")]
    Reflexive(ElementName),
    #[error("both {0} < {1} and {1} < {0}")]
    Asymmetry(ElementName, ElementName),
    #[error("{0} < {1} < {2} but not {0} < {2}")]
    Intransitive(ElementName, ElementName, ElementName),
    #[error("{0} and {1} are incomparable")]
    Incomparable(ElementName, ElementName),
    #[error("order facts contain a cycle through {0}")]
    Cycle(ElementName),
}

#[derive(Debug, Clone, Default)]
pub struct FiniteDiagram {
    order: Vec<ElementName>,
    index: BTreeMap<ElementName, usize>,
}

impl PartialEq for FiniteDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for FiniteDiagram {}

impl FiniteDiagram {
    pub fn empty() -> FiniteDiagram {
        FiniteDiagram::default()
    }

    /// Builds a diagram from its ascending element sequence.
    pub fn from_order(order: Vec<ElementName>) -> Result<FiniteDiagram, LinearityViolation> {
        let mut index = BTreeMap::new();
        for (i, x) in order.iter().enumerate() {
            if index.insert(x.clone(), i).is_some() {
                return Err(LinearityViolation::Duplicate(x.clone()));
            }
        }
        Ok(FiniteDiagram { order, index })
    }

    pub fn from_atoms(
        atoms: impl IntoIterator<Item = u64>,
    ) -> Result<FiniteDiagram, LinearityViolation> {
        FiniteDiagram::from_order(atoms.into_iter().map(ElementName::Atom).collect())
    }

    /// Recovers a diagram from order facts whose transitive closure is total,
    /// e.g. only the covering pairs. Fails unless the closure is a strict total order.
    pub fn from_order_facts(
        elements: &[ElementName],
        less: &[(ElementName, ElementName)],
    ) -> Result<FiniteDiagram, LinearityViolation> {
        let mut id = BTreeMap::new();
        for (i, x) in elements.iter().enumerate() {
            if id.insert(x, i).is_some() {
                return Err(LinearityViolation::Duplicate(x.clone()));
            }
        }
        let n = elements.len();
        let mut succ: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        let mut indegree = alloc::vec![0usize; n];
        for (x, y) in less {
            let xi = *id
                .get(x)
                .ok_or_else(|| LinearityViolation::UnknownElement(x.clone()))?;
            let yi = *id
                .get(y)
                .ok_or_else(|| LinearityViolation::UnknownElement(y.clone()))?;
            if xi == yi {
                return Err(LinearityViolation::Reflexive(x.clone()));
            }
            succ[xi].push(yi);
            indegree[yi] += 1;
        }
        let mut sources: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(next) = sources.pop() {
            if let Some(&other) = sources.last() {
                return Err(LinearityViolation::Incomparable(
                    elements[other].clone(),
                    elements[next].clone(),
                ));
            }
            order.push(elements[next].clone());
            for &y in &succ[next] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    sources.push(y);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n)
                .find(|&i| indegree[i] > 0)
                .expect("remaining element");
            return Err(LinearityViolation::Cycle(elements[stuck].clone()));
        }
        FiniteDiagram::from_order(order)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Elements in ascending order.
    pub fn elements(&self) -> &[ElementName] {
        &self.order
    }

    pub fn into_elements(self) -> Vec<ElementName> {
        self.order
    }

    pub fn position(&self, x: &ElementName) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &ElementName) -> bool {
        self.index.contains_key(x)
    }

    /// `Some(x < y)` when both are present.
    pub fn less(&self, x: &ElementName, y: &ElementName) -> Option<bool> {
        Some(self.position(x)? < self.position(y)?)
    }

    /// Number of elements strictly between `x` and `y`.
    pub fn interval_size(&self, x: &ElementName, y: &ElementName) -> Option<usize> {
        let (a, b) = (self.position(x)?, self.position(y)?);
        Some(a.abs_diff(b).saturating_sub(1))
    }

    /// Fact-set inclusion: every element of `self` is in `other`, in the same relative order.
    pub fn is_subdiagram_of(&self, other: &FiniteDiagram) -> bool {
        self.first_inclusion_failure(other).is_none()
    }

    /// The first element of `self` that is missing from `other` or out of order there.
    pub fn first_inclusion_failure(&self, other: &FiniteDiagram) -> Option<&ElementName> {
        let mut last = None;
        for x in &self.order {
            match other.position(x) {
                Some(p) if last.is_none_or(|l| l < p) => last = Some(p),
                _ => return Some(x),
            }
        }
        None
    }

    /// Induced suborder on the elements satisfying `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&ElementName) -> bool) -> FiniteDiagram {
        let order: Vec<ElementName> = self.order.iter().filter(|x| keep(x)).cloned().collect();
        FiniteDiagram::from_order(order).expect("suborder of a diagram")
    }

    /// All basic facts: declared elements and every `x < y`.
    pub fn to_facts(&self) -> FactSet {
        let mut facts = FactSet::default();
        facts.elements.extend(self.order.iter().cloned());
        for (i, x) in self.order.iter().enumerate() {
            for y in &self.order[i + 1..] {
                facts.less.insert((x.clone(), y.clone()));
            }
        }
        facts
    }

    /// Checks the structural invariant: distinct elements, consistent index.
    pub fn validate(&self) -> Result<(), LinearityViolation> {
        if self.index.len() != self.order.len() {
            let mut seen = BTreeSet::new();
            for x in &self.order {
                if !seen.insert(x) {
                    return Err(LinearityViolation::Duplicate(x.clone()));
                }
            }
        }
        for (i, x) in self.order.iter().enumerate() {
            if self.index.get(x) != Some(&i) {
                return Err(LinearityViolation::Duplicate(x.clone()));
            }
        }
        Ok(())
    }
}

/// Raw basic facts about a finite structure in the language `{<}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactSet {
    pub elements: BTreeSet<ElementName>,
    pub less: BTreeSet<(ElementName, ElementName)>,
}

impl FactSet {
    pub fn is_subset_of(&self, other: &FactSet) -> bool {
        self.elements.is_subset(&other.elements) && self.less.is_subset(&other.less)
    }

    pub fn lt(&self, x: &ElementName, y: &ElementName) -> bool {
        self.less.contains(&(x.clone(), y.clone()))
    }
}

/// Passes iff the facts describe a strict total order on the declared elements.
pub fn check_linear(facts: &FactSet) -> Result<(), LinearityViolation> {
    for (x, y) in &facts.less {
        for z in [x, y] {
            if !facts.elements.contains(z) {
                return Err(LinearityViolation::UnknownElement(z.clone()));
            }
        }
        if x == y {
            return Err(LinearityViolation::Reflexive(x.clone()));
        }
        if facts.lt(y, x) {
            return Err(LinearityViolation::Asymmetry(x.clone(), y.clone()));
        }
    }
    let elements: Vec<&ElementName> = facts.elements.iter().collect();
    for (i, x) in elements.iter().enumerate() {
        for y in &elements[i + 1..] {
            if !facts.lt(x, y) && !facts.lt(y, x) {
                return Err(LinearityViolation::Incomparable((*x).clone(), (*y).clone()));
            }
        }
    }
    let mut successors: BTreeMap<&ElementName, Vec<&ElementName>> = BTreeMap::new();
    for (x, y) in &facts.less {
        successors.entry(x).or_default().push(y);
    }
    for (x, ys) in &successors {
        for y in ys {
            for z in successors.get(y).map(Vec::as_slice).unwrap_or_default() {
                if !facts.lt(x, z) {
                    return Err(LinearityViolation::Intransitive(
                        (*x).clone(),
                        (*y).clone(),
                        (*z).clone(),
                    ));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(n: u64) -> ElementName {
        ElementName::Atom(n)
    }

    #[test]
    fn linear_verdicts() {
        let chain = FiniteDiagram::from_atoms([0, 1, 2]).unwrap().to_facts();
        assert_eq!(check_linear(&chain), Ok(()));

        let mut missing = chain.clone();
        missing.less.remove(&(atom(0), atom(2)));
        assert!(check_linear(&missing).is_err());

        let mut cycle = FactSet::default();
        cycle.elements.extend([atom(0), atom(1), atom(2)]);
        cycle
            .less
            .extend([(atom(0), atom(1)), (atom(1), atom(2)), (atom(2), atom(0))]);
        assert!(check_linear(&cycle).is_err());
    }

    #[test]
    fn covering_facts_recover_order() {
        let els = [atom(5), atom(1), atom(3)];
        let d = FiniteDiagram::from_order_facts(&els, &[(atom(3), atom(5)), (atom(1), atom(3))])
            .unwrap();
        assert_eq!(d.elements(), &[atom(1), atom(3), atom(5)]);
        let err = FiniteDiagram::from_order_facts(&els, &[(atom(1), atom(3))]).unwrap_err();
        assert!(matches!(err, LinearityViolation::Incomparable(..)));
        let err = FiniteDiagram::from_order_facts(&els, &[(atom(1), atom(3)), (atom(3), atom(1))])
            .unwrap_err();
        assert!(matches!(
            err,
            LinearityViolation::Cycle(_) | LinearityViolation::Incomparable(..)
        ));
    }

    #[test]
    fn inclusion() {
        let small = FiniteDiagram::from_atoms([2, 0]).unwrap();
        let big = FiniteDiagram::from_atoms([2, 1, 0]).unwrap();
        let wrong = FiniteDiagram::from_atoms([0, 1, 2]).unwrap();
        assert!(small.is_subdiagram_of(&big));
        assert!(!small.is_subdiagram_of(&wrong));
        assert!(FiniteDiagram::empty().is_subdiagram_of(&small));
        assert_eq!(big.interval_size(&atom(2), &atom(0)), Some(1));
    }
}
