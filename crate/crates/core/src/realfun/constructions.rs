//! Explicit elements of the ring: characteristic functions, quasi-inverses,
//! separating elements.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::{RealFunError, Rational, StepFunction};
use crate::lattice::Element;
use crate::topoframe::{FrameView, Topoframe};

/// `f_a`: value 1 on `a`, 0 on `a′`. Requires `a` clopen.
pub fn characteristic(space: &Arc<Topoframe>, a: Element) -> Result<StepFunction, RealFunError> {
    let l = space.lattice();
    if !l.owns(a) {
        return Err(RealFunError::ForeignElement);
    }
    if !space.clopen_algebra().contains(a) {
        return Err(RealFunError::NotClopen(l.label(a).to_string()));
    }
    Ok(StepFunction::canonical(
        space.clone(),
        vec![(Rational::one(), a), (Rational::zero(), l.star(a))],
    ))
}

fn family_space(space: &Arc<Topoframe>, family: &[StepFunction]) -> Result<(), RealFunError> {
    if family.iter().all(|f| f.space().same_space(space)) {
        Ok(())
    } else {
        Err(RealFunError::MixedTopoframes)
    }
}

/// Outcome of the absorption identities `f·f_aⁿ = f`, `f·f_{a′}ⁿ = 0` for a
/// family with `a = ⋁ coz f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsorbReport {
    pub a: Element,
    /// `(⋁ coz f)′ = ⋀ z(f)`
    pub complement_is_meet_of_zeros: bool,
    /// Per member and exponent `n ∈ {1, 2, 3}`: `(f·f_aⁿ = f, f·f_{a′}ⁿ = 0)`.
    pub members: Vec<[(bool, bool); 3]>,
}

impl AbsorbReport {
    pub fn holds(&self) -> bool {
        self.complement_is_meet_of_zeros
            && self.members.iter().all(|m| m.iter().all(|&(x, y)| x && y))
    }
}

pub fn absorb_laws(space: &Arc<Topoframe>, family: &[StepFunction]) -> Result<AbsorbReport, RealFunError> {
    family_space(space, family)?;
    let l = space.lattice();
    let a = l.sup(family.iter().map(StepFunction::coz_of));
    let zeros = l.inf(family.iter().map(StepFunction::zero_of));
    let fa = characteristic(space, a)?;
    let fa_c = characteristic(space, l.star(a))?;
    let mut members = Vec::with_capacity(family.len());
    for f in family {
        let mut row = [(false, false); 3];
        for (i, n) in (1..=3u32).enumerate() {
            let keep = f.mul(&fa.pow(n))? == *f;
            let kill = f.mul(&fa_c.pow(n))?.is_zero();
            row[i] = (keep, kill);
        }
        members.push(row);
    }
    Ok(AbsorbReport {
        a,
        complement_is_meet_of_zeros: l.star(a) == zeros,
        members,
    })
}

/// `g` with `g({x}) = f({1/x})` for `x ≠ 0` and `g({0}) = z(f)`.
pub fn quasi_inverse(f: &StepFunction) -> StepFunction {
    let raw = f
        .pieces()
        .iter()
        .map(|p| {
            let v = if p.value.is_zero() { Rational::zero() } else { p.value.recip() };
            (v, p.carrier)
        })
        .collect();
    StepFunction::canonical(f.space().clone(), raw)
}

/// For an idempotent `e`, the clopen `coz(e)` with `e = f_{coz(e)}`.
pub fn idempotent_normal_form(e: &StepFunction) -> Result<Element, RealFunError> {
    if e.mul(e)? != *e {
        return Err(RealFunError::NotIdempotent(e.to_literal()));
    }
    let b = e.coz_of();
    let values_ok = e.pieces().iter().all(|p| p.value.is_zero() || p.value.is_one());
    let fb = characteristic(e.space(), b)?;
    if !values_ok || fb != *e {
        return Err(RealFunError::VerificationFailed(format!(
            "idempotent {} is not the characteristic function of its cozero",
            e.to_literal()
        )));
    }
    Ok(b)
}

/// From `a = x·a²`: `b = a·x²`, the unit `u = 1 + b − a·b` and the
/// idempotent `e = a·u`.
pub fn unit_and_idempotent_from_regular(
    a: &StepFunction,
    x: &StepFunction,
) -> Result<(StepFunction, StepFunction), RealFunError> {
    if x.mul(&a.square())? != *a {
        return Err(RealFunError::PreconditionFailed(format!(
            "{} is not a quasi-inverse of {}",
            x.to_literal(),
            a.to_literal()
        )));
    }
    let space = a.space();
    let b = a.mul(&x.square())?;
    let u = StepFunction::one(space).add(&b)?.sub(&a.mul(&b)?)?;
    let e = a.mul(&u)?;
    if !u.is_unit() || e.mul(&e)? != e {
        return Err(RealFunError::VerificationFailed(format!(
            "u = {} or e = {} has the wrong shape",
            u.to_literal(),
            e.to_literal()
        )));
    }
    Ok((u, e))
}

fn dedup(list: &[StepFunction]) -> Vec<&StepFunction> {
    let mut out: Vec<&StepFunction> = Vec::with_capacity(list.len());
    for f in list {
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

/// Checks that `S ∪ T` is orthogonal with `S` and `T` disjoint. A function
/// listed in both sides is compared with itself, so a shared nonzero member
/// is reported.
pub fn check_orthogonal(s: &[StepFunction], t: &[StepFunction]) -> Result<(), RealFunError> {
    let all: Vec<&StepFunction> = dedup(s).into_iter().chain(dedup(t)).collect();
    for (i, f) in all.iter().enumerate() {
        for g in &all[i + 1..] {
            if !f.mul(g)?.is_zero() {
                return Err(RealFunError::NotOrthogonal(f.to_literal(), g.to_literal()));
            }
        }
    }
    Ok(())
}

fn separator_parts(s: &[StepFunction]) -> Vec<(Rational, Element)> {
    let mut parts: Vec<(Rational, Element)> = Vec::new();
    for f in dedup(s) {
        for p in f.pieces() {
            if !p.value.is_zero() {
                parts.push((p.value.clone(), p.carrier));
            }
        }
    }
    parts
}

/// `h` with carriers `⋁_{f∈S} f({v})` on each nonzero `v` and `s′` on 0,
/// where `s = ⋁_{f∈S} coz f`. Separates `S` from `T`: `h·g = 0` on `T` and
/// `h·f = f²` on `S`.
pub fn separating_element(
    space: &Arc<Topoframe>,
    s: &[StepFunction],
    t: &[StepFunction],
) -> Result<StepFunction, RealFunError> {
    family_space(space, s)?;
    family_space(space, t)?;
    check_orthogonal(s, t)?;
    let l = space.lattice();
    let mut raw = separator_parts(s);
    let cover = l.sup(raw.iter().map(|(_, c)| *c));
    raw.push((Rational::zero(), l.star(cover)));
    Ok(StepFunction::canonical(space.clone(), raw))
}

/// Variant for an extremally disconnected ambient frame: carriers are
/// double pseudocomplements `(⋁_{f∈S} f({v}))**` and the zero carrier is `s*`.
pub fn separating_element_ed(
    space: &Arc<Topoframe>,
    s: &[StepFunction],
    t: &[StepFunction],
) -> Result<StepFunction, RealFunError> {
    if let Some(w) = space.ed_frame_counterexample(FrameView::Whole) {
        return Err(RealFunError::EdHypothesisFailed(space.lattice().label(w).to_string()));
    }
    if let Some(z) = space.p_topoframe_counterexample() {
        return Err(RealFunError::PreconditionFailed(format!(
            "zero element {} is not open",
            space.lattice().label(z)
        )));
    }
    family_space(space, s)?;
    family_space(space, t)?;
    check_orthogonal(s, t)?;
    let l = space.lattice();
    let parts = separator_parts(s);
    let mut values: Vec<Rational> = parts.iter().map(|(v, _)| v.clone()).collect();
    values.sort();
    values.dedup();
    let mut raw: Vec<(Rational, Element)> = values
        .into_iter()
        .map(|v| {
            let c = l.sup(parts.iter().filter(|(w, _)| *w == v).map(|(_, c)| *c));
            (v, l.star(l.star(c)))
        })
        .collect();
    let cover = l.sup(parts.iter().map(|(_, c)| *c));
    raw.push((Rational::zero(), l.star(cover)));
    StepFunction::new(space, raw)
}

/// The characteristic function of `⋁ coz f_n`.
pub fn countable_coz_join(space: &Arc<Topoframe>, family: &[StepFunction]) -> Result<StepFunction, RealFunError> {
    family_space(space, family)?;
    let l = space.lattice();
    characteristic(space, l.sup(family.iter().map(StepFunction::coz_of)))
}
