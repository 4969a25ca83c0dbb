//! Property flags with machine-checkable witnesses.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ideals::{annihilator, ideal_of, is_closed_ideal, is_essential, is_essential_in, summand_complement, IdealHandle};
use crate::lattice::Element;
use crate::realfun::{characteristic, check_orthogonal, StepFunction};
use crate::topoframe::{FrameView, Topoframe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum View {
    /// The ambient frame `L`, negation `a*`.
    Whole,
    /// The frame of opens, negation `a^⊥`.
    Opens,
}

impl From<View> for FrameView {
    fn from(v: View) -> Self {
        match v {
            View::Whole => FrameView::Whole,
            View::Opens => FrameView::Opens,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealPair {
    pub ideal: String,
    pub partner: String,
}

/// Elements are lattice labels and functions are literals, so a witness can
/// be re-checked against a freshly parsed document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    ZeroPartOpen { zero_elements: Vec<String> },
    ZeroNotOpen { element: String },
    EdHolds { view: View, checked: usize },
    EdFailure { view: View, element: String, negation: String, double_negation: String },
    ClosuresOpen { checked: usize },
    ClosureNotOpen { element: String, closure: String },
    JoinsOfCozeros { checked: usize },
    NotJoinOfCozeros { element: String, cozero_join: String },
    QuasiInverse { function: String, quasi_inverse: String, unit: String, idempotent: String },
    NotRegular { function: String, candidate: String },
    /// Each proper ideal `I_b` (by `b`) with a nonzero function killing it.
    Annihilators { pairs: Vec<IdealPair> },
    EssentialProperIdeal { generators: Vec<String>, ideal: String },
    IdempotentAnnihilator { set: Vec<String>, idempotent: String },
    AnnihilatorMismatch { set: Vec<String>, idempotent: String, probe: String },
    /// Closed ideals with their complementary summands.
    ClosedSummands { pairs: Vec<IdealPair> },
    ClosedNotSummand { ideal: String },
    /// Nonzero ideals with the idempotent they are essential under.
    EssentialHulls { pairs: Vec<IdealPair> },
    NoEssentialHull { ideal: String },
    Separator { s: Vec<String>, t: Vec<String>, separator: String, families: usize },
    SeparationFailure { s: Vec<String>, t: Vec<String>, candidate: String },
    PrincipalIdeals { elements: Vec<String>, chains: usize },
    ContinuityFailure { element: String, chain: Vec<String> },
    MissingSupremum { idempotents: Vec<String> },
    NotRegularRing,
    Internal { message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub value: bool,
    /// Holds for every finite topoframe, so the flag does not discriminate.
    pub forced_at_finite_scale: bool,
    /// Number of individual identities checked.
    pub checked: usize,
    pub witness: Witness,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Flag {
    pub(crate) fn new(value: bool, forced: bool, checked: usize, witness: Witness) -> Self {
        Flag { value, forced_at_finite_scale: forced, checked, witness, note: None }
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub elements: usize,
    pub opens: usize,
    pub clopens: Vec<String>,
    pub clopen_atoms: Vec<String>,
    pub p_topoframe: Flag,
    pub ed_frame: Flag,
    pub tau_ed: Flag,
    pub ed_topoframe: Flag,
    pub completely_regular: Flag,
    pub regular: Flag,
    pub aleph0_kasch: Flag,
    pub baer: Flag,
    pub pp: Flag,
    pub cs: Flag,
    pub essential_in_idempotent: Flag,
    pub aleph0_selfinjective: Flag,
    pub selfinjective: Flag,
    pub continuous_regular: Flag,
    pub complete_regular: Flag,
}

impl PropertyReport {
    pub fn flags(&self) -> [(&'static str, &Flag); 15] {
        [
            ("p-topoframe", &self.p_topoframe),
            ("ed-frame", &self.ed_frame),
            ("tau-ed", &self.tau_ed),
            ("ed-topoframe", &self.ed_topoframe),
            ("completely-regular", &self.completely_regular),
            ("regular", &self.regular),
            ("aleph0-kasch", &self.aleph0_kasch),
            ("baer", &self.baer),
            ("pp", &self.pp),
            ("cs", &self.cs),
            ("essential-in-idempotent", &self.essential_in_idempotent),
            ("aleph0-selfinjective", &self.aleph0_selfinjective),
            ("selfinjective", &self.selfinjective),
            ("continuous-regular", &self.continuous_regular),
            ("complete-regular", &self.complete_regular),
        ]
    }
}

fn element(tf: &Topoframe, label: &str) -> Result<Element, String> {
    tf.lattice()
        .parse_element(label)
        .ok_or_else(|| format!("`{label}` is not an element"))
}

fn function(tf: &Arc<Topoframe>, literal: &str) -> Result<StepFunction, String> {
    StepFunction::from_literal(tf, literal).map_err(|e| format!("`{literal}`: {e}"))
}

fn functions(tf: &Arc<Topoframe>, literals: &[String]) -> Result<Vec<StepFunction>, String> {
    literals.iter().map(|l| function(tf, l)).collect()
}

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn mul(f: &StepFunction, g: &StepFunction) -> Result<StepFunction, String> {
    f.mul(g).map_err(|e| e.to_string())
}

fn idempotent(tf: &Arc<Topoframe>, literal: &str) -> Result<(StepFunction, Element), String> {
    let e = function(tf, literal)?;
    let b = crate::realfun::idempotent_normal_form(&e).map_err(|e| e.to_string())?;
    Ok((e, b))
}

fn kills_all(g: &StepFunction, set: &[StepFunction]) -> Result<bool, String> {
    for f in set {
        if !mul(g, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn negations(tf: &Topoframe, view: View, a: Element) -> (Element, Element) {
    match view {
        View::Whole => {
            let l = tf.lattice();
            let n = l.pseudocomplement(a).expect("own element");
            (n, l.pseudocomplement(n).expect("own element"))
        }
        View::Opens => {
            let n = tf.bot_arrow(a);
            (n, tf.bot_arrow(n))
        }
    }
}

/// Re-derives the identity a witness claims.
pub fn verify_witness(tf: &Arc<Topoframe>, witness: &Witness) -> Result<(), String> {
    let l = tf.lattice();
    match witness {
        Witness::ZeroPartOpen { zero_elements } => {
            let mut listed = zero_elements.iter().map(|z| element(tf, z)).collect::<Result<Vec<_>, _>>()?;
            listed.sort();
            ensure(listed == tf.zero_part(), || "listed zero elements differ from the zero part".into())?;
            for z in listed {
                ensure(tf.is_open(z), || format!("{} is not open", l.label(z)))?;
                let f = characteristic(tf, l.complement_of(z).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                ensure(f.zero_of() == z, || format!("{} is not a zero element", l.label(z)))?;
            }
            Ok(())
        }
        Witness::ZeroNotOpen { element: z } => {
            let z = element(tf, z)?;
            ensure(tf.zero_part().contains(&z), || "not a zero element".into())?;
            ensure(!tf.is_open(z), || "zero element is open".into())
        }
        Witness::EdHolds { view, .. } => ensure(tf.ed_frame_counterexample((*view).into()).is_none(), || {
            "extremal disconnectedness fails".into()
        }),
        Witness::EdFailure { view, element: a, negation, double_negation } => {
            let a = element(tf, a)?;
            if *view == View::Opens {
                ensure(tf.is_open(a), || "element is not open".into())?;
            }
            let (n, nn) = negations(tf, *view, a);
            ensure(l.label(n) == negation && l.label(nn) == double_negation, || {
                format!("negations are {} and {}", l.label(n), l.label(nn))
            })?;
            ensure(l.join(n, nn).unwrap() != l.top(), || "negations join to ⊤".into())
        }
        Witness::ClosuresOpen { .. } => {
            ensure(tf.is_ed_topoframe(), || "some closure of an open is not open".into())
        }
        Witness::ClosureNotOpen { element: a, closure } => {
            let a = element(tf, a)?;
            let c = element(tf, closure)?;
            ensure(tf.is_open(a), || "element is not open".into())?;
            ensure(tf.closure(a) == c, || format!("closure is {}", l.label(tf.closure(a))))?;
            ensure(!tf.is_open(c), || "closure is open".into())
        }
        Witness::JoinsOfCozeros { .. } => {
            ensure(tf.is_completely_regular(), || "some open is not a join of cozeros".into())
        }
        Witness::NotJoinOfCozeros { element: a, cozero_join } => {
            let a = element(tf, a)?;
            let j = element(tf, cozero_join)?;
            ensure(tf.is_open(a), || "element is not open".into())?;
            let below = tf.cozero_elements().iter().copied().filter(|&b| l.leq(b, a).unwrap());
            ensure(l.big_join(below).unwrap() == j, || "cozero join differs".into())?;
            ensure(j != a, || "open equals its cozero join".into())
        }
        Witness::QuasiInverse { function: f, quasi_inverse, unit, idempotent: e } => {
            let f = function(tf, f)?;
            let g = function(tf, quasi_inverse)?;
            let u = function(tf, unit)?;
            let e = function(tf, e)?;
            ensure(mul(&g, &f.square())? == f, || "f ≠ g·f²".into())?;
            let b = mul(&f, &g.square())?;
            let expected_u = StepFunction::one(tf)
                .add(&b)
                .and_then(|x| x.sub(&mul(&f, &b).unwrap()))
                .map_err(|e| e.to_string())?;
            ensure(u == expected_u && u.is_unit(), || "unit does not match 1 + b − f·b".into())?;
            ensure(mul(&f, &u)? == e && mul(&e, &e)? == e, || "e ≠ f·u or e not idempotent".into())
        }
        Witness::NotRegular { function: f, candidate } => {
            let f = function(tf, f)?;
            let g = function(tf, candidate)?;
            ensure(mul(&g, &f.square())? != f, || "candidate is a quasi-inverse".into())
        }
        Witness::Annihilators { pairs } => {
            let mut seen = Vec::new();
            for p in pairs {
                let b = element(tf, &p.ideal)?;
                let ideal = IdealHandle::new(tf, b).map_err(|e| e.to_string())?;
                ensure(ideal.is_proper(), || format!("{} is not proper", p.ideal))?;
                let g = function(tf, &p.partner)?;
                ensure(!g.is_zero(), || "annihilator witness is zero".into())?;
                ensure(mul(&g, &ideal.generator())?.is_zero(), || {
                    format!("{} does not kill I_{}", p.partner, p.ideal)
                })?;
                seen.push(b);
            }
            seen.sort();
            let mut proper: Vec<Element> =
                tf.clopen_algebra().elements().iter().copied().filter(|&b| b != l.top()).collect();
            proper.sort();
            ensure(seen == proper, || "not every proper ideal is listed".into())
        }
        Witness::EssentialProperIdeal { generators, ideal } => {
            let gens = functions(tf, generators)?;
            let i = ideal_of(tf, &gens).map_err(|e| e.to_string())?;
            ensure(i.label() == ideal, || format!("generated ideal is I_{}", i.label()))?;
            ensure(i.is_proper() && is_essential(&i), || "ideal is not proper and essential".into())
        }
        Witness::IdempotentAnnihilator { set, idempotent: e } => {
            let set = functions(tf, set)?;
            let (e, b) = idempotent(tf, e)?;
            ensure(annihilator(tf, &set).map_err(|e| e.to_string())?.element() == b, || {
                "annihilator differs".into()
            })?;
            for &c in tf.clopen_algebra().elements() {
                let fc = characteristic(tf, c).unwrap();
                ensure(kills_all(&fc, &set)? == (mul(&fc, &e)? == fc), || {
                    format!("idempotent {} disagrees with the annihilator", l.label(c))
                })?;
            }
            Ok(())
        }
        Witness::AnnihilatorMismatch { set, idempotent: e, probe } => {
            let set = functions(tf, set)?;
            let (e, _) = idempotent(tf, e)?;
            let g = function(tf, probe)?;
            ensure(kills_all(&g, &set)? != (mul(&g, &e)? == g), || "probe agrees".into())
        }
        Witness::ClosedSummands { pairs } => {
            for p in pairs {
                let i = IdealHandle::new(tf, element(tf, &p.ideal)?).map_err(|e| e.to_string())?;
                let c = element(tf, &p.partner)?;
                ensure(is_closed_ideal(&i), || format!("I_{} is not closed", p.ideal))?;
                ensure(summand_complement(&i).map(|s| s.element()) == Some(c), || {
                    format!("I_{} is not complementary to I_{}", p.partner, p.ideal)
                })?;
            }
            Ok(())
        }
        Witness::ClosedNotSummand { ideal } => {
            let i = IdealHandle::new(tf, element(tf, ideal)?).map_err(|e| e.to_string())?;
            ensure(is_closed_ideal(&i) && summand_complement(&i).is_none(), || "ideal is a summand".into())
        }
        Witness::EssentialHulls { pairs } => {
            for p in pairs {
                let i = IdealHandle::new(tf, element(tf, &p.ideal)?).map_err(|e| e.to_string())?;
                let (_, c) = idempotent(tf, &p.partner)?;
                let hull = IdealHandle::new(tf, c).map_err(|e| e.to_string())?;
                ensure(!i.is_zero() && is_essential_in(&i, &hull), || {
                    format!("I_{} is not essential under {}", p.ideal, p.partner)
                })?;
            }
            Ok(())
        }
        Witness::NoEssentialHull { ideal } => {
            let i = IdealHandle::new(tf, element(tf, ideal)?).map_err(|e| e.to_string())?;
            let found = tf
                .clopen_algebra()
                .elements()
                .iter()
                .any(|&c| is_essential_in(&i, &IdealHandle::new(tf, c).unwrap()));
            ensure(!found, || "an idempotent hull exists".into())
        }
        Witness::Separator { s, t, separator, .. } => {
            let (s, t) = (functions(tf, s)?, functions(tf, t)?);
            let h = function(tf, separator)?;
            check_orthogonal(&s, &t).map_err(|e| e.to_string())?;
            ensure(separates(&h, &s, &t)?, || "separation contract fails".into())
        }
        Witness::SeparationFailure { s, t, candidate } => {
            let (s, t) = (functions(tf, s)?, functions(tf, t)?);
            let h = function(tf, candidate)?;
            check_orthogonal(&s, &t).map_err(|e| e.to_string())?;
            ensure(!separates(&h, &s, &t)?, || "candidate separates".into())
        }
        Witness::PrincipalIdeals { elements, .. } => {
            let mut listed = elements.iter().map(|e| element(tf, e)).collect::<Result<Vec<_>, _>>()?;
            listed.sort();
            ensure(listed == tf.clopen_algebra().elements(), || "principal ideals differ from B".into())
        }
        Witness::ContinuityFailure { element: a, chain } => {
            let a = element(tf, a)?;
            let chain = chain.iter().map(|c| element(tf, c)).collect::<Result<Vec<_>, _>>()?;
            let lhs = l.meet(a, l.big_join(chain.iter().copied()).unwrap()).unwrap();
            let rhs = l.big_join(chain.iter().map(|&c| l.meet(a, c).unwrap())).unwrap();
            ensure(lhs != rhs, || "identity holds on this chain".into())
        }
        Witness::MissingSupremum { idempotents } => {
            let es = idempotents
                .iter()
                .map(|e| idempotent(tf, e).map(|(_, b)| b))
                .collect::<Result<Vec<_>, _>>()?;
            let sup = l.big_join(es.iter().copied()).unwrap();
            ensure(!tf.clopen_algebra().contains(sup), || "supremum exists".into())
        }
        Witness::NotRegularRing => Err("flag depends on regularity, which is reported separately".into()),
        Witness::Internal { message } => Err(format!("internal failure: {message}")),
    }
}

/// `h·g = 0` on `T` and `h·f = f²` on `S`.
pub(crate) fn separates(h: &StepFunction, s: &[StepFunction], t: &[StepFunction]) -> Result<bool, String> {
    for g in t {
        if !mul(h, g)?.is_zero() {
            return Ok(false);
        }
    }
    for f in s {
        if mul(h, f)? != f.square() {
            return Ok(false);
        }
    }
    Ok(true)
}
