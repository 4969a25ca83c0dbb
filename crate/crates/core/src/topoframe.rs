//! Topoframes: a finite frame with a designated subframe of complemented
//! "open" elements, and the operators that live on it.

use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{Element, Lattice, LatticeError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TopoframeError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("not a subframe: {0}")]
    NotSubframe(SubframeFailure),
    #[error("open element `{0}` is not complemented")]
    NotComplemented(String),
    /// Its function ring would be the zero ring.
    #[error("the one-element lattice carries no topoframe")]
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubframeFailure {
    MissingBottom,
    MissingTop,
    Meet(String, String),
    Join(String, String),
}

impl std::fmt::Display for SubframeFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubframeFailure::MissingBottom => f.write_str("bottom is not open"),
            SubframeFailure::MissingTop => f.write_str("top is not open"),
            SubframeFailure::Meet(a, b) => write!(f, "meet of `{a}` and `{b}` is not open"),
            SubframeFailure::Join(a, b) => write!(f, "join of `{a}` and `{b}` is not open"),
        }
    }
}

/// Which frame an extremal-disconnectedness test runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameView {
    /// The ambient lattice with its own pseudocomplement.
    Whole,
    /// The open elements, with `a ↦ a →τ ⊥` as pseudocomplement.
    Opens,
}

/// The Boolean algebra of clopen elements and its atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClopenAlgebra {
    carrier: Vec<Element>,
    atoms: Vec<Element>,
}

impl ClopenAlgebra {
    pub fn elements(&self) -> &[Element] {
        &self.carrier
    }

    pub fn atoms(&self) -> &[Element] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn contains(&self, e: Element) -> bool {
        self.carrier.binary_search(&e).is_ok()
    }
}

#[derive(Debug)]
pub struct Topoframe {
    lattice: Arc<Lattice>,
    open: Vec<bool>,
    closed: Vec<bool>,
    opens: Vec<Element>,
    clopen: ClopenAlgebra,
}

/// Validates `tau` as a subframe of complemented elements of `lattice`.
pub fn validate_topoframe(lattice: Arc<Lattice>, tau: &[Element]) -> Result<Arc<Topoframe>, TopoframeError> {
    let n = lattice.size();
    if n == 1 {
        return Err(TopoframeError::Trivial);
    }
    let mut open = vec![false; n];
    for &t in tau {
        if !lattice.owns(t) {
            return Err(LatticeError::MixedLattices.into());
        }
        open[t.index()] = true;
    }
    if !open[lattice.bottom().index()] {
        return Err(TopoframeError::NotSubframe(SubframeFailure::MissingBottom));
    }
    if !open[lattice.top().index()] {
        return Err(TopoframeError::NotSubframe(SubframeFailure::MissingTop));
    }
    let opens: Vec<Element> = lattice.elements().filter(|e| open[e.index()]).collect();
    for &a in &opens {
        if !lattice.complemented(a) {
            return Err(TopoframeError::NotComplemented(lattice.label(a).to_string()));
        }
    }
    for (i, &a) in opens.iter().enumerate() {
        for &b in &opens[i + 1..] {
            let names = || (lattice.label(a).to_string(), lattice.label(b).to_string());
            if !open[lattice.wedge(a, b).index()] {
                let (x, y) = names();
                return Err(TopoframeError::NotSubframe(SubframeFailure::Meet(x, y)));
            }
            if !open[lattice.vee(a, b).index()] {
                let (x, y) = names();
                return Err(TopoframeError::NotSubframe(SubframeFailure::Join(x, y)));
            }
        }
    }
    let mut closed = vec![false; n];
    for &a in &opens {
        closed[lattice.star(a).index()] = true;
    }
    let carrier: Vec<Element> = opens
        .iter()
        .copied()
        .filter(|&a| open[lattice.star(a).index()])
        .collect();
    let bot = lattice.bottom();
    let atoms = carrier
        .iter()
        .copied()
        .filter(|&a| {
            a != bot && carrier.iter().all(|&c| c == bot || c == a || !lattice.le(c, a))
        })
        .collect();
    Ok(Arc::new(Topoframe {
        lattice,
        open,
        closed,
        opens,
        clopen: ClopenAlgebra { carrier, atoms },
    }))
}

impl Topoframe {
    /// All complemented elements open. For a Boolean lattice this is the discrete topoframe.
    ///
    /// Panics on the one-element lattice.
    pub fn discrete(lattice: Arc<Lattice>) -> Arc<Topoframe> {
        let tau = lattice.complemented_elements();
        validate_topoframe(lattice, &tau).expect("complemented elements form a subframe")
    }

    /// Only ⊥ and ⊤ open. Panics on the one-element lattice.
    pub fn indiscrete(lattice: Arc<Lattice>) -> Arc<Topoframe> {
        let tau = [lattice.bottom(), lattice.top()];
        validate_topoframe(lattice, &tau).expect("{⊥, ⊤} is a subframe")
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn opens(&self) -> &[Element] {
        &self.opens
    }

    pub fn is_open(&self, e: Element) -> bool {
        self.lattice.owns(e) && self.open[e.index()]
    }

    pub fn is_closed(&self, e: Element) -> bool {
        self.lattice.owns(e) && self.closed[e.index()]
    }

    pub fn closed_elements(&self) -> Vec<Element> {
        self.lattice.elements().filter(|e| self.closed[e.index()]).collect()
    }

    pub fn clopen_algebra(&self) -> &ClopenAlgebra {
        &self.clopen
    }

    /// Same lattice and same open elements.
    pub fn same_space(&self, other: &Topoframe) -> bool {
        std::ptr::eq(self, other) || (self.lattice.id() == other.lattice.id() && self.open == other.open)
    }

    /// Smallest closed element above `p`.
    pub fn closure(&self, p: Element) -> Element {
        let l = &self.lattice;
        l.inf(self.closed_elements().into_iter().filter(|&x| l.le(p, x)))
    }

    /// Largest open element below `p`.
    pub fn interior(&self, p: Element) -> Element {
        let l = &self.lattice;
        l.sup(self.opens.iter().copied().filter(|&x| l.le(x, p)))
    }

    /// `a →τ b`: join of the opens `x` with `a ∧ x ≤ b`.
    pub fn semi_heyting(&self, a: Element, b: Element) -> Element {
        let l = &self.lattice;
        l.sup(self.opens.iter().copied().filter(|&x| l.le(l.wedge(a, x), b)))
    }

    /// `a →τ ⊥`.
    pub fn bot_arrow(&self, a: Element) -> Element {
        self.semi_heyting(a, self.lattice.bottom())
    }

    /// An element where the extremal-disconnectedness identity fails.
    pub fn ed_frame_counterexample(&self, view: FrameView) -> Option<Element> {
        match view {
            FrameView::Whole => self.lattice.extremally_disconnected_counterexample(),
            FrameView::Opens => {
                let top = self.lattice.top();
                self.opens.iter().copied().find(|&a| {
                    let na = self.bot_arrow(a);
                    self.lattice.vee(na, self.bot_arrow(na)) != top
                })
            }
        }
    }

    pub fn is_ed_frame(&self, view: FrameView) -> bool {
        self.ed_frame_counterexample(view).is_none()
    }

    /// An open element whose closure is not open, with that closure.
    pub fn ed_topoframe_counterexample(&self) -> Option<(Element, Element)> {
        self.opens
            .iter()
            .map(|&a| (a, self.closure(a)))
            .find(|&(_, c)| !self.is_open(c))
    }

    pub fn is_ed_topoframe(&self) -> bool {
        self.ed_topoframe_counterexample().is_none()
    }

    /// The zero elements `z(f)`. Every function is a clopen partition of ⊤,
    /// so each `z(f)` is the complement of a clopen and each clopen complement
    /// is `z` of a characteristic function; the set is `{b′ : b ∈ B}`.
    pub fn zero_part(&self) -> Vec<Element> {
        let mut z: Vec<Element> = self
            .clopen
            .carrier
            .iter()
            .map(|&b| self.lattice.star(b))
            .collect();
        z.sort();
        z.dedup();
        z
    }

    /// The cozero elements; at finite scale these are the clopens.
    pub fn cozero_elements(&self) -> &[Element] {
        &self.clopen.carrier
    }

    /// A zero element that is not open.
    pub fn p_topoframe_counterexample(&self) -> Option<Element> {
        self.zero_part().into_iter().find(|&z| !self.is_open(z))
    }

    pub fn is_p_topoframe(&self) -> bool {
        self.p_topoframe_counterexample().is_none()
    }

    /// An open element that is not the join of the cozero elements below it,
    /// together with that join.
    pub fn completely_regular_counterexample(&self) -> Option<(Element, Element)> {
        let l = &self.lattice;
        self.opens
            .iter()
            .map(|&a| {
                let below = self.cozero_elements().iter().copied().filter(|&b| l.le(b, a));
                (a, l.sup(below))
            })
            .find(|&(a, j)| a != j)
    }

    pub fn is_completely_regular(&self) -> bool {
        self.completely_regular_counterexample().is_none()
    }

    /// Clopen atoms below `b`.
    pub fn atoms_below(&self, b: Element) -> Vec<Element> {
        self.clopen
            .atoms
            .iter()
            .copied()
            .filter(|&a| self.lattice.le(a, b))
            .collect()
    }
}
