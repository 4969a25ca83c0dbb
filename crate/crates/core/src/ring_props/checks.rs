//! Property checkers. Each returns a [`Flag`] whose witness re-verifies
//! through [`verify_witness`](super::verify_witness).

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::ideals::{
    annihilator, essential_counterexample, ideal_of, is_closed_ideal, is_essential_in, summand_complement,
    IdealHandle,
};
use super::report::{separates, Flag, IdealPair, PropertyReport, View, Witness};
use crate::lattice::{Element, Lattice};
use crate::realfun::sampling::{exhaustive_over_pool, value_pool, FunctionSampler};
use crate::realfun::{
    characteristic, idempotent_normal_form, quasi_inverse, separating_element, separating_element_ed,
    unit_and_idempotent_from_regular, Divisibility, StepFunction,
};
use crate::topoframe::{FrameView, Topoframe};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub seed: u64,
    /// Random functions added to the pool-exhaustive ones.
    pub random_functions: usize,
    /// Largest pool-exhaustive function family that is used in full.
    pub exhaustive_limit: usize,
    /// Random generator lists and annihilated subsets.
    pub subset_samples: usize,
    /// Value assignments per orthogonal carrier pattern.
    pub value_trials: usize,
    /// Carrier patterns before switching to random patterns.
    pub family_cap: usize,
    pub chain_cap: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0x7f1a_b00c,
            random_functions: 24,
            exhaustive_limit: 64,
            subset_samples: 32,
            value_trials: 2,
            family_cap: 512,
            chain_cap: 4096,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CardinalMode {
    /// Countable orthogonal families.
    FiniteAsAleph0,
    /// Orthogonal families of any size.
    Full,
}

/// Functions the checkers quantify over.
pub struct Samples {
    pub functions: Vec<StepFunction>,
    /// `f_c` for every clopen `c`, in the order of the clopen algebra.
    pub idempotents: Vec<StepFunction>,
}

impl Samples {
    pub fn new(tf: &Arc<Topoframe>, config: &CheckConfig) -> Self {
        let mut functions = exhaustive_over_pool(tf, &value_pool(), config.exhaustive_limit).unwrap_or_default();
        let mut sampler = FunctionSampler::new(tf, config.seed);
        functions.extend(sampler.functions(config.random_functions));
        let idempotents = tf
            .clopen_algebra()
            .elements()
            .iter()
            .map(|&c| characteristic(tf, c).expect("clopen"))
            .collect();
        Samples { functions, idempotents }
    }

    fn all(&self) -> impl Iterator<Item = &StepFunction> {
        self.functions.iter().chain(&self.idempotents)
    }
}

fn literals(fs: &[StepFunction]) -> Vec<String> {
    fs.iter().map(StepFunction::to_literal).collect()
}

fn label(tf: &Topoframe, e: Element) -> String {
    tf.lattice().label(e).to_string()
}

fn internal(err: impl ToString) -> Witness {
    Witness::Internal { message: err.to_string() }
}

macro_rules! try_flag {
    ($e:expr, $forced:expr, $checked:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return Flag::new(false, $forced, $checked, internal(err)),
        }
    };
}

/// A nonzero nonunit when there is one, else a nonzero function, for more
/// telling witnesses.
fn representative<'a>(fs: impl Iterator<Item = &'a StepFunction>) -> Option<&'a StepFunction> {
    let mut fallback: Option<&StepFunction> = None;
    for f in fs {
        if !f.is_zero() && !f.is_unit() {
            return Some(f);
        }
        if fallback.is_none_or(|g| g.is_zero() && !f.is_zero()) {
            fallback = Some(f);
        }
    }
    fallback
}

pub fn topoframe_flags(tf: &Arc<Topoframe>) -> [Flag; 5] {
    let zero_part = tf.zero_part();
    let p = match tf.p_topoframe_counterexample() {
        None => Flag::new(
            true,
            true,
            zero_part.len(),
            Witness::ZeroPartOpen { zero_elements: zero_part.iter().map(|&z| label(tf, z)).collect() },
        ),
        Some(z) => Flag::new(false, true, zero_part.len(), Witness::ZeroNotOpen { element: label(tf, z) }),
    };
    let ed = |view: View| {
        let checked = match view {
            View::Whole => tf.lattice().size(),
            View::Opens => tf.opens().len(),
        };
        match tf.ed_frame_counterexample(view.into()) {
            None => Flag::new(true, false, checked, Witness::EdHolds { view, checked }),
            Some(a) => {
                let (n, nn) = match view {
                    View::Whole => {
                        let l = tf.lattice();
                        let n = l.pseudocomplement(a).unwrap();
                        (n, l.pseudocomplement(n).unwrap())
                    }
                    View::Opens => (tf.bot_arrow(a), tf.bot_arrow(tf.bot_arrow(a))),
                };
                Flag::new(
                    false,
                    false,
                    checked,
                    Witness::EdFailure {
                        view,
                        element: label(tf, a),
                        negation: label(tf, n),
                        double_negation: label(tf, nn),
                    },
                )
            }
        }
    };
    let opens = tf.opens().len();
    let ed_topoframe = match tf.ed_topoframe_counterexample() {
        None => Flag::new(true, false, opens, Witness::ClosuresOpen { checked: opens }),
        Some((a, c)) => Flag::new(
            false,
            false,
            opens,
            Witness::ClosureNotOpen { element: label(tf, a), closure: label(tf, c) },
        ),
    };
    let cr = match tf.completely_regular_counterexample() {
        None => Flag::new(true, false, opens, Witness::JoinsOfCozeros { checked: opens }),
        Some((a, j)) => Flag::new(
            false,
            false,
            opens,
            Witness::NotJoinOfCozeros { element: label(tf, a), cozero_join: label(tf, j) },
        ),
    };
    [p, ed(View::Whole), ed(View::Opens), ed_topoframe, cr]
}

/// Quasi-inverses for every sample, with the unit and idempotent built from
/// each and the zero element checked open.
pub fn check_regular(tf: &Arc<Topoframe>, samples: &Samples) -> Flag {
    let mut checked = 0;
    for f in samples.all() {
        let g = quasi_inverse(f);
        let reached = try_flag!(g.mul(&f.square()), true, checked);
        if reached != *f {
            return Flag::new(
                false,
                true,
                checked,
                Witness::NotRegular { function: f.to_literal(), candidate: g.to_literal() },
            );
        }
        let (_, e) = try_flag!(unit_and_idempotent_from_regular(f, &g), true, checked);
        let b = try_flag!(idempotent_normal_form(&e), true, checked);
        if b != f.coz_of() || !tf.is_open(f.zero_of()) {
            return Flag::new(
                false,
                true,
                checked,
                internal(format!("idempotent of {} has cozero {}", f.to_literal(), label(tf, b))),
            );
        }
        checked += 1;
    }
    let f = representative(samples.all()).expect("samples include the idempotents");
    let g = quasi_inverse(f);
    let (u, e) = unit_and_idempotent_from_regular(f, &g).expect("checked above");
    Flag::new(
        true,
        true,
        checked,
        Witness::QuasiInverse {
            function: f.to_literal(),
            quasi_inverse: g.to_literal(),
            unit: u.to_literal(),
            idempotent: e.to_literal(),
        },
    )
}

fn random_subset(rng: &mut impl Rng, pool: &[StepFunction], max: usize) -> Vec<StepFunction> {
    let n = rng.gen_range(1..=max.min(pool.len()).max(1));
    pool.choose_multiple(rng, n).cloned().collect()
}

/// Every proper finitely generated ideal has a nonzero annihilator.
///
/// Covers the principal ideals `I_b`, sampled generator lists through the
/// sum of squares, the zerodivisor content of proper ideals, and disjoint
/// ideals for principal ideals of nonunits.
pub fn check_kasch(tf: &Arc<Topoframe>, samples: &Samples, config: &CheckConfig) -> Flag {
    let l = tf.lattice();
    let mut checked = 0;
    let mut pairs = Vec::new();
    for &b in tf.clopen_algebra().elements() {
        if b == l.top() {
            continue;
        }
        let ideal = try_flag!(IdealHandle::new(tf, b), true, checked);
        let g = try_flag!(characteristic(tf, l.star(b)), true, checked);
        let ann = try_flag!(annihilator(tf, &[ideal.generator()]), true, checked);
        let kills = try_flag!(g.mul(&ideal.generator()), true, checked).is_zero();
        if g.is_zero() || !kills || ann.generator() != g {
            return Flag::new(
                false,
                true,
                checked,
                Witness::EssentialProperIdeal { generators: vec![ideal.generator().to_literal()], ideal: label(tf, b) },
            );
        }
        for h in &samples.functions {
            let inside = try_flag!(h.mul(&ideal.generator()), true, checked);
            if inside.is_unit() {
                return Flag::new(false, true, checked, internal(format!("unit {} in I_{}", inside, label(tf, b))));
            }
        }
        pairs.push(IdealPair { ideal: label(tf, b), partner: g.to_literal() });
        checked += 1;
    }

    let mut rng = FunctionSampler::new(tf, config.seed ^ 0x4b41_5343).rng().clone();
    let mut lists: Vec<Vec<StepFunction>> = samples.functions.iter().map(|f| vec![f.clone()]).collect();
    for _ in 0..config.subset_samples {
        lists.push(random_subset(&mut rng, &samples.functions, 3));
    }
    for gens in &lists {
        let ideal = try_flag!(ideal_of(tf, gens), true, checked);
        if !ideal.is_proper() {
            continue;
        }
        let mut squares = StepFunction::zero(tf);
        for f in gens {
            squares = try_flag!(squares.add(&f.square()), true, checked);
        }
        let g = match squares.divisibility() {
            Divisibility::Zero => StepFunction::one(tf),
            Divisibility::ZeroDivisor { witness } => witness,
            Divisibility::Unit { .. } => {
                return Flag::new(false, true, checked, internal("sum of squares of a proper ideal is a unit"))
            }
        };
        let mut kills = !g.is_zero();
        for f in gens {
            kills &= try_flag!(g.mul(f), true, checked).is_zero();
        }
        if !kills || essential_counterexample(&ideal).is_none() {
            return Flag::new(
                false,
                true,
                checked,
                Witness::EssentialProperIdeal { generators: literals(gens), ideal: ideal.label().to_string() },
            );
        }
        checked += 1;
    }

    // Principal ideals of nonunits miss `I_{z(f)}`; units are exactly the
    // non-zerodivisors.
    for f in &samples.functions {
        match f.divisibility() {
            Divisibility::Unit { inverse } => {
                if !try_flag!(f.mul(&inverse), true, checked).is_one() {
                    return Flag::new(false, true, checked, internal(format!("bad inverse for {f}")));
                }
            }
            Divisibility::Zero => {}
            Divisibility::ZeroDivisor { witness } => {
                let z = try_flag!(characteristic(tf, f.zero_of()), true, checked);
                let product = try_flag!(f.mul(&z), true, checked);
                if witness != z || z.is_zero() || !product.is_zero() {
                    return Flag::new(
                        false,
                        true,
                        checked,
                        Witness::EssentialProperIdeal {
                            generators: vec![f.to_literal()],
                            ideal: label(tf, f.coz_of()),
                        },
                    );
                }
            }
        }
        checked += 1;
    }
    Flag::new(true, true, checked, Witness::Annihilators { pairs })
}

/// Checks `Ann(set) = e·R` against every probe: `g` kills the set iff `g·e = g`.
fn annihilator_matches(
    tf: &Arc<Topoframe>,
    set: &[StepFunction],
    probes: &[&StepFunction],
) -> Result<Result<StepFunction, Witness>, String> {
    let ann = annihilator(tf, set).map_err(|e| e.to_string())?;
    let e = ann.generator();
    for g in probes {
        let mut kills = true;
        for f in set {
            kills &= g.mul(f).map_err(|e| e.to_string())?.is_zero();
        }
        let absorbed = g.mul(&e).map_err(|e| e.to_string())? == **g;
        if kills != absorbed {
            return Ok(Err(Witness::AnnihilatorMismatch {
                set: literals(set),
                idempotent: e.to_literal(),
                probe: g.to_literal(),
            }));
        }
    }
    Ok(Ok(e))
}

/// Annihilators of single elements are generated by `f_c`, `c` the largest
/// clopen under `z(f)`.
pub fn check_pp(tf: &Arc<Topoframe>, samples: &Samples) -> Flag {
    let l = tf.lattice();
    let probes: Vec<&StepFunction> = samples.all().collect();
    let mut checked = 0;
    for f in samples.all() {
        let set = [f.clone()];
        let e = match try_flag!(annihilator_matches(tf, &set, &probes), true, checked) {
            Ok(e) => e,
            Err(w) => return Flag::new(false, true, checked, w),
        };
        let expected = l.sup(
            tf.clopen_algebra()
                .elements()
                .iter()
                .copied()
                .filter(|&c| l.le(c, f.zero_of())),
        );
        if e.coz_of() != expected {
            return Flag::new(false, true, checked, internal(format!("annihilator of {f} is not under z(f)")));
        }
        checked += 1;
    }
    let f = representative(samples.all()).expect("nonempty");
    let e = annihilator(tf, std::slice::from_ref(f)).expect("checked").generator();
    Flag::new(
        true,
        true,
        checked,
        Witness::IdempotentAnnihilator { set: vec![f.to_literal()], idempotent: e.to_literal() },
    )
}

/// Annihilators of subsets: every subset of the atom idempotents, the empty
/// set, and random subsets of samples and idempotents.
pub fn check_baer(tf: &Arc<Topoframe>, samples: &Samples, config: &CheckConfig) -> Flag {
    let atoms: Vec<StepFunction> = tf
        .clopen_algebra()
        .atoms()
        .iter()
        .map(|&a| characteristic(tf, a).expect("clopen"))
        .collect();
    let mut sets: Vec<Vec<StepFunction>> = vec![Vec::new()];
    if atoms.len() <= 6 {
        for mask in 1u32..(1 << atoms.len()) {
            sets.push(
                atoms
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, f)| f.clone())
                    .collect(),
            );
        }
    }
    let mut rng = FunctionSampler::new(tf, config.seed ^ 0x4241_4552).rng().clone();
    for _ in 0..config.subset_samples {
        sets.push(random_subset(&mut rng, &samples.functions, 4));
        sets.push(random_subset(&mut rng, &samples.idempotents, 3));
    }
    let probes: Vec<&StepFunction> = samples.all().collect();
    let mut checked = 0;
    let mut best: Option<(Vec<StepFunction>, StepFunction)> = None;
    for set in sets {
        let e = match try_flag!(annihilator_matches(tf, &set, &probes), true, checked) {
            Ok(e) => e,
            Err(w) => return Flag::new(false, true, checked, w),
        };
        checked += 1;
        // Prefer a small set of several elements with a nonzero annihilator.
        let telling = (2..=3).contains(&set.len()) && !e.is_zero();
        if best.is_none() || telling && best.as_ref().is_some_and(|(s, _)| s.len() < 2) {
            best = Some((set, e));
        }
    }
    let (set, e) = best.expect("the empty set is always checked");
    Flag::new(
        true,
        true,
        checked,
        Witness::IdempotentAnnihilator { set: literals(&set), idempotent: e.to_literal() },
    )
}

/// Returns the CS flag and the flag for "every nonzero ideal is essential in
/// an idempotent-generated ideal".
pub fn check_cs(tf: &Arc<Topoframe>) -> (Flag, Flag) {
    let l = tf.lattice();
    let mut closed_pairs = Vec::new();
    let mut hull_pairs = Vec::new();
    let mut cs_failure = None;
    let mut hull_failure = None;
    for &b in tf.clopen_algebra().elements() {
        let ideal = IdealHandle::new(tf, b).expect("clopen");
        if is_closed_ideal(&ideal) {
            match summand_complement(&ideal) {
                Some(c) => closed_pairs.push(IdealPair { ideal: label(tf, b), partner: c.label().to_string() }),
                None => {
                    cs_failure.get_or_insert(Witness::ClosedNotSummand { ideal: label(tf, b) });
                }
            }
        }
        if ideal.is_zero() {
            continue;
        }
        // Ann(I_b) = f_c·R and I_b is essential in (1 − f_c)·R.
        let ann = annihilator(tf, &[ideal.generator()]).expect("clopen generator");
        let hull_el = l.star(ann.element());
        let hull = IdealHandle::new(tf, hull_el).expect("complement of a clopen");
        if is_essential_in(&ideal, &hull) {
            let e = StepFunction::one(tf).sub(&ann.generator()).expect("same space");
            hull_pairs.push(IdealPair { ideal: label(tf, b), partner: e.to_literal() });
        } else {
            hull_failure.get_or_insert(Witness::NoEssentialHull { ideal: label(tf, b) });
        }
    }
    let n = tf.clopen_algebra().len();
    let cs = match cs_failure {
        None => Flag::new(true, true, n, Witness::ClosedSummands { pairs: closed_pairs }),
        Some(w) => Flag::new(false, true, n, w),
    };
    let hulls = match hull_failure {
        None => Flag::new(true, true, n, Witness::EssentialHulls { pairs: hull_pairs }),
        Some(w) => Flag::new(false, true, n, w),
    };
    (cs, hulls)
}

/// Orthogonal carrier patterns: each atom unused (`None`) or in a block,
/// each block assigned to `S` (`true`) or `T`.
fn carrier_patterns(atoms: usize, cap: usize, rng: &mut impl Rng) -> Vec<(Vec<Option<usize>>, Vec<bool>)> {
    fn grow(i: usize, atoms: usize, blocks: usize, cur: &mut Vec<Option<usize>>, out: &mut Vec<(Vec<Option<usize>>, usize)>, cap: usize) -> bool {
        if i == atoms {
            out.push((cur.clone(), blocks));
            return out.len() <= cap;
        }
        for choice in 0..=blocks + 1 {
            let (assign, next) = match choice {
                0 => (None, blocks),
                c if c == blocks + 1 => (Some(blocks), blocks + 1),
                c => (Some(c - 1), blocks),
            };
            cur.push(assign);
            let more = grow(i + 1, atoms, next, cur, out, cap);
            cur.pop();
            if !more {
                return false;
            }
        }
        true
    }
    let mut shapes = Vec::new();
    let mut out = Vec::new();
    if grow(0, atoms, 0, &mut Vec::new(), &mut shapes, cap) {
        for (shape, blocks) in shapes {
            for mask in 0u32..(1 << blocks) {
                out.push((shape.clone(), (0..blocks).map(|j| mask >> j & 1 == 1).collect()));
            }
        }
    }
    if out.len() > cap || out.is_empty() && atoms > 0 {
        out.clear();
        for _ in 0..cap {
            let blocks = rng.gen_range(1..=atoms.min(8));
            let shape = (0..atoms)
                .map(|_| if rng.gen_bool(0.2) { None } else { Some(rng.gen_range(0..blocks)) })
                .collect();
            let sides = (0..blocks).map(|_| rng.gen_bool(0.5)).collect();
            out.push((shape, sides));
        }
    }
    out
}

/// Regular plus a verified separating element for every orthogonal pair of
/// families. Every orthogonal family here is finite, so both modes run the
/// same enumeration.
pub fn check_selfinjective(
    tf: &Arc<Topoframe>,
    mode: CardinalMode,
    regular: bool,
    config: &CheckConfig,
) -> Flag {
    let note = match mode {
        CardinalMode::FiniteAsAleph0 => "countable families; coincides with the full criterion on a finite lattice",
        CardinalMode::Full => "families of any size; coincides with the countable criterion on a finite lattice",
    };
    if !regular {
        return Flag::new(false, true, 0, Witness::NotRegularRing).with_note(note);
    }
    let l = tf.lattice();
    let atoms = tf.clopen_algebra().atoms().to_vec();
    let mut sampler = FunctionSampler::new(tf, config.seed ^ 0x5345_5041);
    let patterns = carrier_patterns(atoms.len(), config.family_cap, sampler.rng());
    let boolean = l.is_boolean();
    let ed = tf.is_ed_frame(FrameView::Whole);
    let mut checked = 0;
    let mut best: Option<(Vec<StepFunction>, Vec<StepFunction>, StepFunction)> = None;
    for (shape, sides) in &patterns {
        for _ in 0..config.value_trials {
            let mut s = Vec::new();
            let mut t = Vec::new();
            for (j, &in_s) in sides.iter().enumerate() {
                let support: Vec<bool> = shape.iter().map(|&a| a == Some(j)).collect();
                if !support.iter().any(|&x| x) {
                    continue;
                }
                let f = sampler.supported_on(&support);
                if in_s {
                    s.push(f);
                } else {
                    t.push(f);
                }
            }
            let h = try_flag!(separating_element(tf, &s, &t), true, checked);
            let ok = try_flag!(separates(&h, &s, &t), true, checked);
            if !ok {
                return Flag::new(
                    false,
                    true,
                    checked,
                    Witness::SeparationFailure { s: literals(&s), t: literals(&t), candidate: h.to_literal() },
                )
                .with_note(note);
            }
            if ed {
                let h_ed = try_flag!(separating_element_ed(tf, &s, &t), true, checked);
                let ed_ok = try_flag!(separates(&h_ed, &s, &t), true, checked);
                if !ed_ok || boolean && h_ed != h {
                    return Flag::new(
                        false,
                        true,
                        checked,
                        Witness::SeparationFailure { s: literals(&s), t: literals(&t), candidate: h_ed.to_literal() },
                    )
                    .with_note(note);
                }
            }
            checked += 1;
            let size = (s.len() + t.len(), !s.is_empty());
            if best.as_ref().is_none_or(|(bs, bt, _)| size > (bs.len() + bt.len(), !bs.is_empty())) {
                best = Some((s, t, h));
            }
        }
    }
    let (s, t, h) = best.unwrap_or_else(|| {
        (Vec::new(), Vec::new(), separating_element(tf, &[], &[]).expect("empty families"))
    });
    Flag::new(
        true,
        true,
        checked,
        Witness::Separator { s: literals(&s), t: literals(&t), separator: h.to_literal(), families: checked },
    )
    .with_note(note)
}

fn chains(lattice: &Lattice, cap: usize) -> Vec<Vec<Element>> {
    fn extend(l: &Lattice, cur: &mut Vec<Element>, out: &mut Vec<Vec<Element>>, cap: usize) {
        if out.len() >= cap {
            return;
        }
        out.push(cur.clone());
        let last = *cur.last().unwrap();
        for e in l.elements() {
            if e != last && l.le(last, e) {
                cur.push(e);
                extend(l, cur, out, cap);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for e in lattice.elements() {
        extend(lattice, &mut vec![e], &mut out, cap);
    }
    out
}

/// Returns the continuous-regular and complete-regular flags. The principal
/// ideals are ordered by inclusion and rebuilt as a lattice in their own right.
pub fn check_continuity_completeness(tf: &Arc<Topoframe>, regular: bool, config: &CheckConfig) -> (Flag, Flag) {
    let l = tf.lattice();
    let clopens = tf.clopen_algebra().elements().to_vec();
    let labels: Vec<String> = clopens.iter().map(|&c| label(tf, c)).collect();
    let mut order = Vec::new();
    for (i, &a) in clopens.iter().enumerate() {
        for (j, &b) in clopens.iter().enumerate() {
            if l.le(a, b) {
                order.push((i, j));
            }
        }
    }
    let principal = match Lattice::build_from_order(&labels, &order) {
        Ok(p) => p,
        Err(e) => {
            let f = Flag::new(false, true, 0, internal(format!("principal ideals: {e}")));
            return (f.clone(), f);
        }
    };
    let to_l = |e: Element| clopens[e.index()];

    let mut checked = 0;
    let mut continuity_failure = None;
    for chain in chains(&principal, config.chain_cap) {
        let top = principal.sup(chain.iter().copied());
        for a in principal.elements() {
            let lhs = principal.wedge(a, top);
            let rhs = principal.sup(chain.iter().map(|&c| principal.wedge(a, c)));
            let ambient = l.wedge(to_l(a), l.sup(chain.iter().map(|&c| to_l(c))));
            if lhs != rhs || to_l(lhs) != ambient {
                continuity_failure = Some(Witness::ContinuityFailure {
                    element: principal.label(a).to_string(),
                    chain: chain.iter().map(|&c| principal.label(c).to_string()).collect(),
                });
                break;
            }
            checked += 1;
        }
        if continuity_failure.is_some() {
            break;
        }
    }

    // Every set of idempotents, orthogonal or not, has its supremum f_{⋁ coz}.
    let mut sup_failure = None;
    let atoms = tf.clopen_algebra().atoms();
    if atoms.len() <= 12 {
        for mask in 0u32..(1 << atoms.len()) {
            let chosen: Vec<Element> =
                atoms.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a).collect();
            let sup = l.sup(chosen.iter().copied());
            if !tf.clopen_algebra().contains(sup) {
                sup_failure = Some(Witness::MissingSupremum { idempotents: chosen.iter().map(|&a| characteristic(tf, a).unwrap().to_literal()).collect() });
                break;
            }
        }
    }

    let witness = Witness::PrincipalIdeals { elements: labels.clone(), chains: checked };
    let continuous = match (regular, continuity_failure) {
        (false, _) => Flag::new(false, true, checked, Witness::NotRegularRing),
        (true, Some(w)) => Flag::new(false, true, checked, w),
        (true, None) => Flag::new(true, true, checked, witness.clone()),
    };
    let complete = match (regular, sup_failure) {
        (false, _) => Flag::new(false, true, labels.len(), Witness::NotRegularRing),
        (true, Some(w)) => Flag::new(false, true, labels.len(), w),
        (true, None) => Flag::new(true, true, labels.len(), witness),
    };
    (continuous, complete)
}

pub fn property_report(tf: &Arc<Topoframe>, config: &CheckConfig) -> PropertyReport {
    let samples = Samples::new(tf, config);
    let [p_topoframe, ed_frame, tau_ed, ed_topoframe, completely_regular] = topoframe_flags(tf);
    let regular = check_regular(tf, &samples);
    let aleph0_kasch = check_kasch(tf, &samples, config);
    let baer = check_baer(tf, &samples, config);
    let pp = check_pp(tf, &samples);
    let (cs, essential_in_idempotent) = check_cs(tf);
    let aleph0_selfinjective = check_selfinjective(tf, CardinalMode::FiniteAsAleph0, regular.value, config);
    let selfinjective = check_selfinjective(tf, CardinalMode::Full, regular.value, config);
    let (continuous_regular, complete_regular) = check_continuity_completeness(tf, regular.value, config);
    let l = tf.lattice();
    PropertyReport {
        elements: l.size(),
        opens: tf.opens().len(),
        clopens: tf.clopen_algebra().elements().iter().map(|&c| label(tf, c)).collect(),
        clopen_atoms: tf.clopen_algebra().atoms().iter().map(|&c| label(tf, c)).collect(),
        p_topoframe,
        ed_frame,
        tau_ed,
        ed_topoframe,
        completely_regular,
        regular,
        aleph0_kasch,
        baer,
        pp,
        cs,
        essential_in_idempotent,
        aleph0_selfinjective,
        selfinjective,
        continuous_regular,
        complete_regular,
    }
}
