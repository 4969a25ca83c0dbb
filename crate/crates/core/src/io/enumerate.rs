//! Enumeration of topoframes: all labelled topologies on a small powerset,
//! or all subframes of complemented elements of a given lattice.

use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{Element, Lattice, LatticeError};
use crate::topoframe::{validate_topoframe, Topoframe};

/// Default bound on powerset enumeration.
pub const DEFAULT_MAX_POINTS: usize = 4;
/// Default bound on the complemented elements searched in a general lattice.
pub const DEFAULT_MAX_COMPLEMENTED: usize = 20;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("{what} is {requested}, above the bound {max}")]
    BoundExceeded { what: &'static str, requested: usize, max: usize },
    #[error("the one-element lattice carries no topoframe")]
    Trivial,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub topoframe: Arc<Topoframe>,
}

/// All `τ ⊆ candidates` containing ⊥ and ⊤ and closed under binary meets
/// and joins, in a fixed depth-first order.
fn closed_families(l: &Lattice, candidates: &[Element]) -> Vec<Vec<Element>> {
    struct Search<'a> {
        l: &'a Lattice,
        candidates: &'a [Element],
        state: Vec<Option<bool>>,
        /// Elements forced in by the meet or join of two chosen ones.
        required: Vec<u32>,
        chosen: Vec<Element>,
        out: Vec<Vec<Element>>,
    }

    impl Search<'_> {
        fn go(&mut self, i: usize) {
            if i == self.candidates.len() {
                self.out.push(self.chosen.clone());
                return;
            }
            let x = self.candidates[i];
            let (lo, hi) = (self.l.bottom(), self.l.top());
            if self.required[x.index()] == 0 && x != lo && x != hi {
                self.state[x.index()] = Some(false);
                self.go(i + 1);
                self.state[x.index()] = None;
            }
            if let Some(forced) = self.include(x) {
                self.go(i + 1);
                self.undo(x, &forced);
            }
            self.state[x.index()] = None;
        }

        fn include(&mut self, x: Element) -> Option<Vec<Element>> {
            let mut forced: Vec<Element> = Vec::new();
            for &y in &self.chosen {
                for z in [self.l.wedge(x, y), self.l.vee(x, y)] {
                    match self.state[z.index()] {
                        Some(true) => {}
                        Some(false) => {
                            for &f in &forced {
                                self.required[f.index()] -= 1;
                            }
                            return None;
                        }
                        None => {
                            self.required[z.index()] += 1;
                            forced.push(z);
                        }
                    }
                }
            }
            self.state[x.index()] = Some(true);
            self.chosen.push(x);
            Some(forced)
        }

        fn undo(&mut self, x: Element, forced: &[Element]) {
            self.chosen.pop();
            self.state[x.index()] = None;
            for &f in forced {
                self.required[f.index()] -= 1;
            }
        }
    }

    let mut sorted = candidates.to_vec();
    sorted.sort();
    let mut search = Search {
        l,
        candidates: &sorted,
        state: vec![None; l.size()],
        required: vec![0; l.size()],
        chosen: Vec::new(),
        out: Vec::new(),
    };
    // Meets and joins of candidates must stay among the candidates.
    for x in l.elements() {
        if !sorted.contains(&x) {
            search.state[x.index()] = Some(false);
        }
    }
    search.go(0);
    search.out
}

fn instances(lattice: Arc<Lattice>, families: Vec<Vec<Element>>, prefix: &str) -> Vec<Instance> {
    let width = families.len().to_string().len().max(3);
    families
        .into_iter()
        .enumerate()
        .map(|(i, tau)| Instance {
            id: format!("{prefix}-{i:0width$}"),
            topoframe: validate_topoframe(lattice.clone(), &tau).expect("enumerated families are subframes"),
        })
        .collect()
}

/// Every labelled topology on `points` points. `max_points` guards
/// against accidental blow-up; pass [`DEFAULT_MAX_POINTS`] normally.
pub fn enumerate_topoframes(points: usize, max_points: usize) -> Result<Vec<Instance>, EnumerationError> {
    if points > max_points {
        return Err(EnumerationError::BoundExceeded { what: "point count", requested: points, max: max_points });
    }
    if points == 0 {
        return Err(EnumerationError::Trivial);
    }
    let lattice = Arc::new(Lattice::powerset(points)?);
    let all: Vec<Element> = lattice.elements().collect();
    let families = closed_families(&lattice, &all);
    Ok(instances(lattice, families, &format!("powerset{points}")))
}

/// Every subframe of the complemented elements of `lattice`.
pub fn enumerate_subframes(lattice: Arc<Lattice>, max_complemented: usize) -> Result<Vec<Instance>, EnumerationError> {
    if lattice.size() == 1 {
        return Err(EnumerationError::Trivial);
    }
    let complemented = lattice.complemented_elements();
    if complemented.len() > max_complemented {
        return Err(EnumerationError::BoundExceeded {
            what: "number of complemented elements",
            requested: complemented.len(),
            max: max_complemented,
        });
    }
    let families = closed_families(&lattice, &complemented);
    Ok(instances(lattice, families, "subframe"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Poset;

    #[test]
    fn labelled_topology_counts() {
        let counts: Vec<usize> = (1..=3).map(|n| enumerate_topoframes(n, 4).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 4, 29]);
        assert_eq!(enumerate_topoframes(0, 4).unwrap_err(), EnumerationError::Trivial);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(enumerate_topoframes(5, 4), Err(EnumerationError::BoundExceeded { .. })));
    }

    #[test]
    fn subframes_of_a_non_boolean_lattice() {
        // Downsets of `1 < 3, 2 < 3`: only ⊥ and ⊤ are complemented.
        let l = Arc::new(Lattice::birkhoff(&Poset::new(3, &[(0, 2), (1, 2)]).unwrap()).unwrap());
        let subs = enumerate_subframes(l.clone(), DEFAULT_MAX_COMPLEMENTED).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].topoframe.opens().len(), 2);

        let b = Arc::new(Lattice::powerset(2).unwrap());
        assert_eq!(enumerate_subframes(b, DEFAULT_MAX_COMPLEMENTED).unwrap().len(), 4);
    }

    #[test]
    fn ids_are_ordered() {
        let ids: Vec<String> = enumerate_topoframes(2, 4).unwrap().into_iter().map(|i| i.id).collect();
        assert_eq!(ids, vec!["powerset2-000", "powerset2-001", "powerset2-002", "powerset2-003"]);
    }
}
