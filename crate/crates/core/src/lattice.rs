//! Finite distributive lattices (finite frames).
//!
//! A [`Lattice`] is built once, validated, and then frozen: the order matrix,
//! meet/join tables and pseudocomplements are all precomputed so that every
//! operation afterwards is a table lookup. Elements are small copyable
//! handles tagged with the identity of the lattice that issued them.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use thiserror::Error;

static NEXT_LATTICE_ID: AtomicU32 = AtomicU32::new(1);

/// Identity of a constructed lattice. Clones share the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeId(u32);

impl LatticeId {
    fn fresh() -> Self {
        LatticeId(NEXT_LATTICE_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// Handle to an element of one particular [`Lattice`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    lattice: LatticeId,
    index: u32,
}

impl Element {
    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn lattice_id(self) -> LatticeId {
        self.lattice
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Meet,
    Join,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Meet => f.write_str("meet"),
            Bound::Join => f.write_str("join"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("element label `{0}` appears more than once")]
    DuplicateLabel(String),
    #[error("order pair ({0}, {1}) refers to an element out of range")]
    IndexOutOfRange(usize, usize),
    #[error("order is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("order is not antisymmetric: `{0}` <= `{1}` <= `{0}`")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("not a lattice: `{a}` and `{b}` have no {missing}")]
    NotALattice { a: String, b: String, missing: Bound },
    #[error("not distributive: a = `{a}`, b = `{b}`, c = `{c}` gives a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)")]
    NotDistributive { a: String, b: String, c: String },
    #[error("operands belong to different lattices")]
    MixedLattices,
    #[error("`{0}` is not complemented")]
    ComplementRequested(String),
    #[error("cover ({0}, {1}) refers to a node outside the poset")]
    CoverOutOfRange(usize, usize),
    #[error("cover relation has a cycle through node {0}")]
    CyclicCovers(usize),
    #[error("posets with more than {max} nodes are not supported (got {size})")]
    PosetTooLarge { size: usize, max: usize },
}

/// How a lattice came to be; used to print it back in document form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    /// Powerset of `{1, …, points}`.
    Powerset { points: usize },
    /// Downsets of a poset.
    Downsets(Poset),
    /// Explicit elements with the Hasse diagram recovered from the order.
    Explicit { covers: Vec<(usize, usize)> },
}

/// A finite poset given by cover pairs `(lower, upper)`, nodes `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    size: usize,
    covers: Vec<(usize, usize)>,
    leq: Vec<bool>,
}

impl Poset {
    pub const MAX_NODES: usize = 64;

    pub fn new(size: usize, covers: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        let mut cleaned = Vec::with_capacity(covers.len());
        for &(lo, hi) in covers {
            if lo >= size || hi >= size {
                return Err(LatticeError::CoverOutOfRange(lo, hi));
            }
            if lo == hi {
                return Err(LatticeError::CyclicCovers(lo));
            }
            if !cleaned.contains(&(lo, hi)) {
                cleaned.push((lo, hi));
            }
            leq[lo * size + hi] = true;
        }
        // Warshall closure.
        for k in 0..size {
            for i in 0..size {
                if leq[i * size + k] {
                    for j in 0..size {
                        if leq[k * size + j] {
                            leq[i * size + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..size {
            for j in 0..size {
                if i != j && leq[i * size + j] && leq[j * size + i] {
                    return Err(LatticeError::CyclicCovers(i));
                }
            }
        }
        Ok(Poset {
            size,
            covers: cleaned,
            leq,
        })
    }

    pub fn antichain(size: usize) -> Self {
        Poset::new(size, &[]).expect("antichain is a poset")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    /// Every downset, as a bitmask over nodes.
    pub fn downsets(&self) -> Result<Vec<u64>, LatticeError> {
        if self.size > Self::MAX_NODES {
            return Err(LatticeError::PosetTooLarge {
                size: self.size,
                max: Self::MAX_NODES,
            });
        }
        // Nodes in a linear extension; a node may join only if everything below it has.
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&v| (0..self.size).filter(|&u| self.leq(u, v)).count());
        let below: Vec<u64> = (0..self.size)
            .map(|v| {
                (0..self.size)
                    .filter(|&u| u != v && self.leq(u, v))
                    .fold(0u64, |m, u| m | (1 << u))
            })
            .collect();
        let mut out = Vec::new();
        fn walk(pos: usize, mask: u64, order: &[usize], below: &[u64], out: &mut Vec<u64>) {
            if pos == order.len() {
                out.push(mask);
                return;
            }
            let v = order[pos];
            walk(pos + 1, mask, order, below, out);
            if below[v] & !mask == 0 {
                walk(pos + 1, mask | (1 << v), order, below, out);
            }
        }
        walk(0, 0, &order, &below, &mut out);
        Ok(out)
    }
}

/// A validated finite distributive lattice.
#[derive(Clone)]
pub struct Lattice {
    id: LatticeId,
    labels: Vec<String>,
    by_label: HashMap<String, u32>,
    leq: Vec<bool>,
    meet: Vec<u32>,
    join: Vec<u32>,
    pseudo: Vec<u32>,
    bottom: u32,
    top: u32,
    origin: Origin,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("id", &self.id)
            .field("elements", &self.labels)
            .finish()
    }
}

fn set_label(mask: u64) -> String {
    let items: Vec<String> = (0..64)
        .filter(|i| mask & (1u64 << i) != 0)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

impl Lattice {
    /// Builds a lattice from labelled elements and the full order relation
    /// given as index pairs `(lower, upper)`.
    pub fn build_from_order<S: AsRef<str>>(
        elements: &[S],
        leq_pairs: &[(usize, usize)],
    ) -> Result<Self, LatticeError> {
        let n = elements.len();
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut leq = vec![false; n * n];
        for &(a, b) in leq_pairs {
            if a >= n || b >= n {
                return Err(LatticeError::IndexOutOfRange(a, b));
            }
            leq[a * n + b] = true;
        }
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(LatticeError::NotReflexive(labels[i].clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(LatticeError::NotAntisymmetric(
                        labels[i].clone(),
                        labels[j].clone(),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !leq[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j * n + k] && !leq[i * n + k] {
                        return Err(LatticeError::NotTransitive(
                            labels[i].clone(),
                            labels[j].clone(),
                            labels[k].clone(),
                        ));
                    }
                }
            }
        }
        let covers = hasse(n, &leq);
        Self::from_matrix(labels, leq, Origin::Explicit { covers })
    }

    /// The lattice of downsets of `poset`, ordered by inclusion.
    pub fn birkhoff(poset: &Poset) -> Result<Self, LatticeError> {
        Self::from_downsets(poset, Origin::Downsets(poset.clone()))
    }

    /// The Boolean lattice of all subsets of `{1, …, points}`.
    pub fn powerset(points: usize) -> Result<Self, LatticeError> {
        Self::from_downsets(&Poset::antichain(points), Origin::Powerset { points })
    }

    fn from_downsets(poset: &Poset, origin: Origin) -> Result<Self, LatticeError> {
        let mut sets = poset.downsets()?;
        sets.sort_by_key(|&m| (m.count_ones(), std::cmp::Reverse(m.reverse_bits())));
        let n = sets.len();
        let index: HashMap<u64, u32> = sets
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i as u32))
            .collect();
        let mut leq = vec![false; n * n];
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for (i, &a) in sets.iter().enumerate() {
            for (j, &b) in sets.iter().enumerate() {
                leq[i * n + j] = a & !b == 0;
                meet[i * n + j] = index[&(a & b)];
                join[i * n + j] = index[&(a | b)];
            }
        }
        let labels = sets.iter().map(|&m| set_label(m)).collect();
        Self::assemble(labels, leq, meet, join, origin)
    }

    fn from_matrix(labels: Vec<String>, leq: Vec<bool>, origin: Origin) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let glb = extremal_bound(n, &leq, a, b, true).ok_or_else(|| {
                    LatticeError::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        missing: Bound::Meet,
                    }
                })?;
                let lub = extremal_bound(n, &leq, a, b, false).ok_or_else(|| {
                    LatticeError::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        missing: Bound::Join,
                    }
                })?;
                meet[a * n + b] = glb as u32;
                meet[b * n + a] = glb as u32;
                join[a * n + b] = lub as u32;
                join[b * n + a] = lub as u32;
            }
        }
        Self::assemble(labels, leq, meet, join, origin)
    }

    fn assemble(
        labels: Vec<String>,
        leq: Vec<bool>,
        meet: Vec<u32>,
        join: Vec<u32>,
        origin: Origin,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut by_label = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if by_label.insert(l.clone(), i as u32).is_some() {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        let bottom = (0..n).find(|&i| (0..n).all(|j| leq[i * n + j])).expect("finite lattice has a bottom") as u32;
        let top = (0..n).find(|&i| (0..n).all(|j| leq[j * n + i])).expect("finite lattice has a top") as u32;

        for a in 0..n {
            for b in 0..n {
                let bc = join[b * n..][..n].to_vec();
                let ab = meet[a * n + b] as usize;
                for c in 0..n {
                    let lhs = meet[a * n + bc[c] as usize];
                    let rhs = join[ab * n + meet[a * n + c] as usize];
                    if lhs != rhs {
                        return Err(LatticeError::NotDistributive {
                            a: labels[a].clone(),
                            b: labels[b].clone(),
                            c: labels[c].clone(),
                        });
                    }
                }
            }
        }

        let pseudo = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&x| meet[a * n + x] == bottom)
                    .fold(bottom, |acc, x| join[acc as usize * n + x])
            })
            .collect();

        Ok(Lattice {
            id: LatticeId::fresh(),
            labels,
            by_label,
            leq,
            meet,
            join,
            pseudo,
            bottom,
            top,
            origin,
        })
    }

    pub fn id(&self) -> LatticeId {
        self.id
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    fn handle(&self, index: usize) -> Element {
        Element {
            lattice: self.id,
            index: index as u32,
        }
    }

    pub fn element(&self, index: usize) -> Option<Element> {
        (index < self.size()).then(|| self.handle(index))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size()).map(move |i| self.handle(i))
    }

    pub fn bottom(&self) -> Element {
        self.handle(self.bottom as usize)
    }

    pub fn top(&self) -> Element {
        self.handle(self.top as usize)
    }

    pub fn owns(&self, e: Element) -> bool {
        e.lattice == self.id && e.index() < self.size()
    }

    fn check(&self, e: Element) -> Result<Element, LatticeError> {
        if self.owns(e) {
            Ok(e)
        } else {
            Err(LatticeError::MixedLattices)
        }
    }

    pub fn label(&self, e: Element) -> &str {
        debug_assert!(self.owns(e));
        &self.labels[e.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<Element> {
        self.by_label.get(label).map(|&i| self.handle(i as usize))
    }

    /// Looks up an element written in document syntax. Set labels are
    /// normalised first, so `{2, 1}` finds `{1,2}`.
    pub fn parse_element(&self, token: &str) -> Option<Element> {
        let token = token.trim();
        if let Some(inner) = token.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            let mut items = Vec::new();
            for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                items.push(part.parse::<u64>().ok()?);
            }
            items.sort_unstable();
            items.dedup();
            let canonical = format!(
                "{{{}}}",
                items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
            );
            self.element_by_label(&canonical)
        } else {
            self.element_by_label(token)
        }
    }

    pub fn leq(&self, a: Element, b: Element) -> Result<bool, LatticeError> {
        Ok(self.le(self.check(a)?, self.check(b)?))
    }

    pub fn meet(&self, a: Element, b: Element) -> Result<Element, LatticeError> {
        Ok(self.wedge(self.check(a)?, self.check(b)?))
    }

    pub fn join(&self, a: Element, b: Element) -> Result<Element, LatticeError> {
        Ok(self.vee(self.check(a)?, self.check(b)?))
    }

    /// Join of a finite family; the empty join is ⊥.
    pub fn big_join<I: IntoIterator<Item = Element>>(&self, items: I) -> Result<Element, LatticeError> {
        items
            .into_iter()
            .try_fold(self.bottom(), |acc, e| Ok(self.vee(acc, self.check(e)?)))
    }

    /// Meet of a finite family; the empty meet is ⊤.
    pub fn big_meet<I: IntoIterator<Item = Element>>(&self, items: I) -> Result<Element, LatticeError> {
        items
            .into_iter()
            .try_fold(self.top(), |acc, e| Ok(self.wedge(acc, self.check(e)?)))
    }

    pub fn pseudocomplement(&self, a: Element) -> Result<Element, LatticeError> {
        Ok(self.star(self.check(a)?))
    }

    pub fn is_complemented(&self, a: Element) -> Result<bool, LatticeError> {
        Ok(self.complemented(self.check(a)?))
    }

    pub fn complement_of(&self, a: Element) -> Result<Element, LatticeError> {
        let a = self.check(a)?;
        if self.complemented(a) {
            Ok(self.star(a))
        } else {
            Err(LatticeError::ComplementRequested(self.label(a).to_string()))
        }
    }

    // Unchecked operations for crate-internal use; operands must come from `self`.

    pub(crate) fn le(&self, a: Element, b: Element) -> bool {
        debug_assert!(self.owns(a) && self.owns(b));
        self.leq[a.index() * self.size() + b.index()]
    }

    pub(crate) fn wedge(&self, a: Element, b: Element) -> Element {
        debug_assert!(self.owns(a) && self.owns(b));
        self.handle(self.meet[a.index() * self.size() + b.index()] as usize)
    }

    pub(crate) fn vee(&self, a: Element, b: Element) -> Element {
        debug_assert!(self.owns(a) && self.owns(b));
        self.handle(self.join[a.index() * self.size() + b.index()] as usize)
    }

    pub(crate) fn star(&self, a: Element) -> Element {
        debug_assert!(self.owns(a));
        self.handle(self.pseudo[a.index()] as usize)
    }

    pub(crate) fn complemented(&self, a: Element) -> bool {
        self.vee(a, self.star(a)) == self.top()
    }

    pub(crate) fn sup<I: IntoIterator<Item = Element>>(&self, items: I) -> Element {
        items.into_iter().fold(self.bottom(), |acc, e| self.vee(acc, e))
    }

    pub(crate) fn inf<I: IntoIterator<Item = Element>>(&self, items: I) -> Element {
        items.into_iter().fold(self.top(), |acc, e| self.wedge(acc, e))
    }

    pub fn complemented_elements(&self) -> Vec<Element> {
        self.elements().filter(|&a| self.complemented(a)).collect()
    }

    pub fn is_boolean(&self) -> bool {
        self.elements().all(|a| self.complemented(a))
    }

    /// Elements covered by `a`.
    pub fn lower_covers(&self, a: Element) -> Vec<Element> {
        let below: Vec<Element> = self
            .elements()
            .filter(|&x| x != a && self.le(x, a))
            .collect();
        below
            .iter()
            .copied()
            .filter(|&x| !below.iter().any(|&y| y != x && self.le(x, y)))
            .collect()
    }

    /// Minimal non-bottom elements.
    pub fn atoms(&self) -> Vec<Element> {
        let bot = self.bottom();
        self.elements()
            .filter(|&a| a != bot && self.lower_covers(a) == [bot])
            .collect()
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<Element> {
        self.elements()
            .filter(|&a| self.lower_covers(a).len() == 1)
            .collect()
    }

    /// The join-irreducibles with their induced order, as a poset, together
    /// with the element backing each node.
    pub fn join_irreducible_poset(&self) -> (Poset, Vec<Element>) {
        let ji = self.join_irreducibles();
        let mut covers = Vec::new();
        for (i, &a) in ji.iter().enumerate() {
            for (j, &b) in ji.iter().enumerate() {
                if i != j && self.le(a, b) {
                    covers.push((i, j));
                }
            }
        }
        let poset = Poset::new(ji.len(), &covers).expect("order on join-irreducibles is acyclic");
        (poset, ji)
    }

    /// An element violating `a* ∨ a** = ⊤`, if any.
    pub fn extremally_disconnected_counterexample(&self) -> Option<Element> {
        self.elements()
            .find(|&a| self.vee(self.star(a), self.star(self.star(a))) != self.top())
    }

    pub fn is_extremally_disconnected(&self) -> bool {
        self.extremally_disconnected_counterexample().is_none()
    }

    /// Same labels and the same order.
    pub fn same_structure(&self, other: &Lattice) -> bool {
        self.labels == other.labels && self.leq == other.leq
    }
}

fn hasse(n: usize, leq: &[bool]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || !leq[a * n + b] {
                continue;
            }
            let between = (0..n).any(|c| c != a && c != b && leq[a * n + c] && leq[c * n + b]);
            if !between {
                covers.push((a, b));
            }
        }
    }
    covers
}

/// Greatest lower bound (`lower = true`) or least upper bound of `a`, `b`.
fn extremal_bound(n: usize, leq: &[bool], a: usize, b: usize, lower: bool) -> Option<usize> {
    let rel = |x: usize, y: usize| if lower { leq[x * n + y] } else { leq[y * n + x] };
    let bounds: Vec<usize> = (0..n).filter(|&x| rel(x, a) && rel(x, b)).collect();
    bounds
        .iter()
        .copied()
        .find(|&m| bounds.iter().all(|&x| rel(x, m)))
}
