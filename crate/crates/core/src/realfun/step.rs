use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{RealFunError, Rational, SetDescriptor};
use crate::lattice::Element;
use crate::topoframe::Topoframe;

/// One value of a step function together with the element it is taken on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub value: Rational,
    pub carrier: Element,
}

/// A real-continuous function on a finite topoframe, in canonical form:
/// a partition of ⊤ into nonzero open carriers labelled by distinct
/// rationals, sorted by value.
///
/// Over a finite lattice the singleton values `f({r})` of a frame map out of
/// the powerset of the reals are pairwise disjoint and join to ⊤, so only
/// finitely many are nonzero; this representation is therefore complete.
/// Every `f(]p,q[)` is a join of carriers, so asking each carrier to be open
/// is the same as continuity. Each carrier then has the join of the others
/// as an open complement, so carriers are clopen.
#[derive(Clone)]
pub struct StepFunction {
    space: Arc<Topoframe>,
    pieces: Vec<Piece>,
}

/// Binary operations of the lattice-ordered ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
    Min,
    Max,
}

impl RingOp {
    fn apply(self, a: &Rational, b: &Rational) -> Rational {
        match self {
            RingOp::Add => a + b,
            RingOp::Mul => a * b,
            RingOp::Min => a.min(b).clone(),
            RingOp::Max => a.max(b).clone(),
        }
    }
}

/// Unit, zero divisor, or zero.
#[derive(Debug, Clone, PartialEq)]
pub enum Divisibility {
    Zero,
    Unit { inverse: StepFunction },
    ZeroDivisor { witness: StepFunction },
}

impl StepFunction {
    /// Validates arbitrary `(value, carrier)` pairs and canonicalises them.
    /// Equal values are merged; ⊥ carriers are dropped.
    pub fn new<I>(space: &Arc<Topoframe>, pieces: I) -> Result<Self, RealFunError>
    where
        I: IntoIterator<Item = (Rational, Element)>,
    {
        let l = space.lattice();
        let raw: Vec<(Rational, Element)> = pieces.into_iter().collect();
        for (_, c) in &raw {
            if !l.owns(*c) {
                return Err(RealFunError::ForeignElement);
            }
        }
        let raw: Vec<(Rational, Element)> = raw.into_iter().filter(|(_, c)| *c != l.bottom()).collect();
        for (i, (_, a)) in raw.iter().enumerate() {
            if !space.is_open(*a) {
                return Err(RealFunError::CarrierNotOpen(l.label(*a).to_string()));
            }
            for (_, b) in &raw[i + 1..] {
                if l.wedge(*a, *b) != l.bottom() {
                    return Err(RealFunError::OverlappingCarriers(
                        l.label(*a).to_string(),
                        l.label(*b).to_string(),
                    ));
                }
            }
        }
        let cover = l.sup(raw.iter().map(|(_, c)| *c));
        if cover != l.top() {
            return Err(RealFunError::NotCovering(l.label(cover).to_string()));
        }
        Ok(Self::canonical(space.clone(), raw))
    }

    /// Assumes the pieces already form an open partition of ⊤ up to ⊥ parts
    /// and repeated values.
    pub(crate) fn canonical(space: Arc<Topoframe>, mut raw: Vec<(Rational, Element)>) -> Self {
        let l = space.lattice().clone();
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut pieces: Vec<Piece> = Vec::with_capacity(raw.len());
        for (value, carrier) in raw {
            if carrier == l.bottom() {
                continue;
            }
            match pieces.last_mut() {
                Some(last) if last.value == value => last.carrier = l.vee(last.carrier, carrier),
                _ => pieces.push(Piece { value, carrier }),
            }
        }
        debug_assert_eq!(l.sup(pieces.iter().map(|p| p.carrier)), l.top());
        StepFunction { space, pieces }
    }

    /// The constant function `r`.
    pub fn constant(space: &Arc<Topoframe>, r: Rational) -> Self {
        let top = space.lattice().top();
        Self::canonical(space.clone(), vec![(r, top)])
    }

    pub fn zero(space: &Arc<Topoframe>) -> Self {
        Self::constant(space, Rational::zero())
    }

    pub fn one(space: &Arc<Topoframe>) -> Self {
        Self::constant(space, Rational::one())
    }

    /// The function taking `values[i]` on the `i`-th clopen atom.
    pub fn from_atom_values(space: &Arc<Topoframe>, values: &[Rational]) -> Result<Self, RealFunError> {
        let atoms = space.clopen_algebra().atoms();
        if atoms.len() != values.len() {
            return Err(RealFunError::PreconditionFailed(format!(
                "expected {} atom values, got {}",
                atoms.len(),
                values.len()
            )));
        }
        let raw = values.iter().cloned().zip(atoms.iter().copied()).collect();
        Ok(Self::canonical(space.clone(), raw))
    }

    pub fn space(&self) -> &Arc<Topoframe> {
        &self.space
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    fn same_space(&self, other: &StepFunction) -> Result<(), RealFunError> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space.same_space(&other.space) {
            Ok(())
        } else {
            Err(RealFunError::MixedTopoframes)
        }
    }

    /// `f(X)`: the join of the carriers whose value lies in `X`.
    pub fn evaluate(&self, x: &SetDescriptor) -> Element {
        let l = self.space.lattice();
        l.sup(self.pieces.iter().filter(|p| x.contains(&p.value)).map(|p| p.carrier))
    }

    /// `f({r})`
    pub fn at(&self, r: &Rational) -> Element {
        self.pieces
            .iter()
            .find(|p| &p.value == r)
            .map_or(self.space.lattice().bottom(), |p| p.carrier)
    }

    /// The value taken on each clopen atom.
    pub fn atom_values(&self) -> Vec<Rational> {
        let l = self.space.lattice();
        self.space
            .clopen_algebra()
            .atoms()
            .iter()
            .map(|&a| {
                self.pieces
                    .iter()
                    .find(|p| l.le(a, p.carrier))
                    .expect("carriers partition the clopen atoms")
                    .value
                    .clone()
            })
            .collect()
    }

    fn map_values(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        let raw = self.pieces.iter().map(|p| (f(&p.value), p.carrier)).collect();
        Self::canonical(self.space.clone(), raw)
    }

    /// `(f ⋄ g)({r}) = ⋁ { f({y}) ∧ g({w}) : y ⋄ w = r }`.
    pub fn ring_op(&self, other: &StepFunction, op: RingOp) -> Result<Self, RealFunError> {
        self.same_space(other)?;
        let l = self.space.lattice();
        let mut raw = Vec::with_capacity(self.pieces.len() * other.pieces.len());
        for p in &self.pieces {
            for q in &other.pieces {
                let c = l.wedge(p.carrier, q.carrier);
                if c != l.bottom() {
                    raw.push((op.apply(&p.value, &q.value), c));
                }
            }
        }
        Ok(Self::canonical(self.space.clone(), raw))
    }

    pub fn add(&self, other: &StepFunction) -> Result<Self, RealFunError> {
        self.ring_op(other, RingOp::Add)
    }

    pub fn mul(&self, other: &StepFunction) -> Result<Self, RealFunError> {
        self.ring_op(other, RingOp::Mul)
    }

    pub fn min(&self, other: &StepFunction) -> Result<Self, RealFunError> {
        self.ring_op(other, RingOp::Min)
    }

    pub fn max(&self, other: &StepFunction) -> Result<Self, RealFunError> {
        self.ring_op(other, RingOp::Max)
    }

    pub fn sub(&self, other: &StepFunction) -> Result<Self, RealFunError> {
        self.add(&other.negate())
    }

    /// `(-f)(X) = f(-X)`
    pub fn negate(&self) -> Self {
        self.map_values(|v| -v)
    }

    pub fn abs(&self) -> Self {
        self.map_values(|v| v.abs())
    }

    pub fn scalar(&self, r: &Rational) -> Self {
        self.map_values(|v| v * r)
    }

    pub fn pow(&self, n: u32) -> Self {
        self.map_values(|v| num_traits::pow(v.clone(), n as usize))
    }

    pub fn square(&self) -> Self {
        self.pow(2)
    }

    /// `z(f) = f({0})`
    pub fn zero_of(&self) -> Element {
        self.at(&Rational::zero())
    }

    /// `coz(f) = f(ℝ ∖ {0})`
    pub fn coz_of(&self) -> Element {
        let l = self.space.lattice();
        l.sup(self.pieces.iter().filter(|p| !p.value.is_zero()).map(|p| p.carrier))
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].value.is_one()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.pieces.iter().all(|p| !p.value.is_negative())
    }

    pub fn is_unit(&self) -> bool {
        self.zero_of() == self.space.lattice().bottom()
    }

    pub fn inverse(&self) -> Option<Self> {
        self.is_unit().then(|| self.map_values(|v| v.recip()))
    }

    /// Units carry their inverse; nonzero nonunits carry `f_{z(f)}`, a nonzero
    /// function whose product with `self` is zero.
    pub fn divisibility(&self) -> Divisibility {
        if self.is_zero() {
            return Divisibility::Zero;
        }
        if let Some(inverse) = self.inverse() {
            return Divisibility::Unit { inverse };
        }
        let witness = super::characteristic(&self.space, self.zero_of())
            .expect("zero elements of a step function are clopen");
        debug_assert!(!witness.is_zero());
        debug_assert!(self.mul(&witness).unwrap().is_zero());
        Divisibility::ZeroDivisor { witness }
    }

    /// Samples `f(]p,q[) ∈ τ` for every pair of the given cut points.
    pub fn continuity_cross_check(&self, cuts: &[Rational]) -> bool {
        cuts.iter().all(|p| {
            cuts.iter()
                .filter(|q| *q > p)
                .all(|q| self.space.is_open(self.evaluate(&SetDescriptor::open_interval(p.clone(), q.clone()))))
        })
    }

    /// Cut points around every value: the values themselves and points
    /// strictly between and beyond them.
    pub fn cut_points(&self) -> Vec<Rational> {
        let vals: Vec<&Rational> = self.pieces.iter().map(|p| &p.value).collect();
        let mut cuts = Vec::new();
        let one = Rational::one();
        if let (Some(first), Some(last)) = (vals.first(), vals.last()) {
            cuts.push(*first - &one);
            cuts.push(*last + &one);
        }
        for w in vals.windows(2) {
            cuts.push((w[0] + w[1]) / Rational::from_integer(2.into()));
        }
        cuts.extend(vals.iter().map(|v| (*v).clone()));
        cuts.sort();
        cuts
    }

    /// Canonical literal: `v1@SET ; v2@SET ; …` in ascending value order.
    pub fn to_literal(&self) -> String {
        let l = self.space.lattice();
        self.pieces
            .iter()
            .map(|p| format!("{}@{}", p.value, l.label(p.carrier)))
            .collect::<Vec<_>>()
            .join(" ; ")
    }
}

impl PartialEq for StepFunction {
    fn eq(&self, other: &Self) -> bool {
        self.same_space(other).is_ok() && self.pieces == other.pieces
    }
}

impl Eq for StepFunction {}

impl fmt::Debug for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StepFunction[{}]", self.to_literal())
    }
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}
