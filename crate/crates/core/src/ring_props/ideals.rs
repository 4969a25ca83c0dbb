//! Ideals of the ring. Every ideal is `I_b = {f : coz f ≤ b}` for a clopen `b`,
//! generated by `f_b`.

use std::sync::Arc;

use super::RingError;
use crate::lattice::Element;
use crate::realfun::{characteristic, quasi_inverse, StepFunction};
use crate::topoframe::Topoframe;

#[derive(Clone, Debug)]
pub struct IdealHandle {
    space: Arc<Topoframe>,
    b: Element,
}

impl PartialEq for IdealHandle {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_space(&other.space) && self.b == other.b
    }
}

impl Eq for IdealHandle {}

impl IdealHandle {
    pub fn new(space: &Arc<Topoframe>, b: Element) -> Result<Self, RingError> {
        characteristic(space, b)?;
        Ok(IdealHandle { space: space.clone(), b })
    }

    pub fn space(&self) -> &Arc<Topoframe> {
        &self.space
    }

    /// The clopen `b` with the ideal equal to `I_b`.
    pub fn element(&self) -> Element {
        self.b
    }

    pub fn label(&self) -> &str {
        self.space.lattice().label(self.b)
    }

    pub fn generator(&self) -> StepFunction {
        characteristic(&self.space, self.b).expect("ideal element is clopen")
    }

    pub fn contains(&self, f: &StepFunction) -> bool {
        f.space().same_space(&self.space) && self.space.lattice().le(f.coz_of(), self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.b == self.space.lattice().bottom()
    }

    pub fn is_proper(&self) -> bool {
        self.b != self.space.lattice().top()
    }

    pub fn le(&self, other: &IdealHandle) -> bool {
        self.space.lattice().le(self.b, other.b)
    }
}

fn same_space(space: &Arc<Topoframe>, fs: &[StepFunction]) -> Result<(), RingError> {
    if fs.iter().all(|f| f.space().same_space(space)) {
        Ok(())
    } else {
        Err(RingError::MixedTopoframes)
    }
}

/// The ideal generated by `gens`. Checks `f_i = f_i·f_b` and
/// `f_b = q·Σf_i²` with `q` the quasi-inverse of the sum of squares.
pub fn ideal_of(space: &Arc<Topoframe>, gens: &[StepFunction]) -> Result<IdealHandle, RingError> {
    same_space(space, gens)?;
    let l = space.lattice();
    let b = l.sup(gens.iter().map(StepFunction::coz_of));
    let ideal = IdealHandle::new(space, b)?;
    let fb = ideal.generator();
    let mut squares = StepFunction::zero(space);
    for f in gens {
        if f.mul(&fb)? != *f {
            return Err(RingError::VerificationFailed(format!(
                "{} is not absorbed by the generator of {}",
                f.to_literal(),
                l.label(b)
            )));
        }
        squares = squares.add(&f.square())?;
    }
    if quasi_inverse(&squares).mul(&squares)? != fb {
        return Err(RingError::VerificationFailed(format!(
            "generator of {} is not reached from the sum of squares",
            l.label(b)
        )));
    }
    Ok(ideal)
}

/// `Ann(S) = I_b` with `b` the largest clopen disjoint from every `coz f`.
pub fn annihilator(space: &Arc<Topoframe>, set: &[StepFunction]) -> Result<IdealHandle, RingError> {
    same_space(space, set)?;
    let l = space.lattice();
    let s = l.sup(set.iter().map(StepFunction::coz_of));
    let clopens = space.clopen_algebra().elements();
    let b = l.sup(clopens.iter().copied().filter(|&c| l.wedge(c, s) == l.bottom()));
    let ideal = IdealHandle::new(space, b)?;
    let fb = ideal.generator();
    for f in set {
        if !fb.mul(f)?.is_zero() {
            return Err(RingError::VerificationFailed(format!(
                "annihilator generator does not kill {}",
                f.to_literal()
            )));
        }
    }
    for &c in clopens {
        if l.le(c, b) {
            continue;
        }
        let fc = characteristic(space, c)?;
        let mut kills_all = true;
        for f in set {
            kills_all &= fc.mul(f)?.is_zero();
        }
        if kills_all {
            return Err(RingError::VerificationFailed(format!(
                "annihilator misses the generator of {}",
                l.label(c)
            )));
        }
    }
    Ok(ideal)
}

/// A nonzero ideal meeting `ideal` in zero, if any.
pub fn essential_counterexample(ideal: &IdealHandle) -> Option<IdealHandle> {
    disjoint_below(ideal, ideal.space.lattice().top())
}

fn disjoint_below(ideal: &IdealHandle, top: Element) -> Option<IdealHandle> {
    let space = &ideal.space;
    let l = space.lattice();
    let d = space
        .clopen_algebra()
        .elements()
        .iter()
        .copied()
        .find(|&d| d != l.bottom() && l.le(d, top) && l.wedge(d, ideal.b) == l.bottom())?;
    let witness = IdealHandle::new(space, d).expect("clopen");
    debug_assert!(ideal.generator().mul(&witness.generator()).unwrap().is_zero());
    Some(witness)
}

pub fn is_essential(ideal: &IdealHandle) -> bool {
    essential_counterexample(ideal).is_none()
}

/// `ideal ⊆ ambient` with every nonzero subideal of `ambient` meeting `ideal`.
pub fn is_essential_in(ideal: &IdealHandle, ambient: &IdealHandle) -> bool {
    ideal.space.same_space(&ambient.space) && ideal.le(ambient) && disjoint_below(ideal, ambient.b).is_none()
}

/// No strictly larger ideal contains `ideal` essentially.
pub fn is_closed_ideal(ideal: &IdealHandle) -> bool {
    let space = &ideal.space;
    let l = space.lattice();
    space.clopen_algebra().elements().iter().all(|&c| {
        c == ideal.b
            || !l.le(ideal.b, c)
            || !is_essential_in(ideal, &IdealHandle { space: space.clone(), b: c })
    })
}

/// The complementary ideal: `I_b ⊕ I_{b′} = R`, checked on generators.
pub fn summand_complement(ideal: &IdealHandle) -> Option<IdealHandle> {
    let space = &ideal.space;
    let other = IdealHandle::new(space, space.lattice().star(ideal.b)).ok()?;
    let (e, f) = (ideal.generator(), other.generator());
    let sum_is_one = e.add(&f).ok()?.is_one();
    let product_is_zero = e.mul(&f).ok()?.is_zero();
    (sum_is_one && product_is_zero).then_some(other)
}

pub fn is_summand(ideal: &IdealHandle) -> bool {
    summand_complement(ideal).is_some()
}
