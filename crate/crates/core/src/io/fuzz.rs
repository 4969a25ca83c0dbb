//! Random documents and a randomized invariant suite over one topoframe.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::document::{function_literal, print_topoframe};
use super::enumerate::{enumerate_subframes, enumerate_topoframes, DEFAULT_MAX_COMPLEMENTED};
use crate::lattice::{Lattice, Poset};
use crate::realfun::sampling::FunctionSampler;
use crate::realfun::{characteristic, Rational, SetDescriptor, StepFunction};
use crate::topoframe::Topoframe;

/// Environment variable holding the default fuzz seed.
pub const SEED_VAR: &str = "TFLAB_SEED";
pub const DEFAULT_SEED: u64 = 20_260_101;

pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

fn random_poset(rng: &mut ChaCha8Rng, max_nodes: usize) -> Poset {
    let k = rng.gen_range(1..=max_nodes);
    let mut covers = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            if rng.gen_bool(0.3) {
                covers.push((a, b));
            }
        }
    }
    Poset::new(k, &covers).expect("upward pairs are acyclic")
}

/// The same order with elements `e1 … eK`, as a `lattice` document builds it.
fn explicit_copy(l: &Lattice) -> Lattice {
    let labels: Vec<String> = (1..=l.size()).map(|i| format!("e{i}")).collect();
    let mut pairs = Vec::new();
    for a in l.elements() {
        for b in l.elements() {
            if l.leq(a, b).unwrap() {
                pairs.push((a.index(), b.index()));
            }
        }
    }
    Lattice::build_from_order(&labels, &pairs).expect("copy of a lattice")
}

/// A valid document: a random carrier, a random topology on it and up to
/// three named functions.
pub fn random_document(rng: &mut ChaCha8Rng) -> String {
    let tf: Arc<Topoframe> = match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(1..=3);
            let all = enumerate_topoframes(n, 3).expect("within bound");
            all.choose(rng).unwrap().topoframe.clone()
        }
        kind => {
            // Posets are nonempty, so the lattice has at least two elements.
            let poset = random_poset(rng, 4);
            let mut l = Lattice::birkhoff(&poset).expect("small poset");
            if kind == 2 {
                l = explicit_copy(&l);
            }
            let subs = enumerate_subframes(Arc::new(l), DEFAULT_MAX_COMPLEMENTED).expect("small lattice");
            subs.choose(rng).unwrap().topoframe.clone()
        }
    };
    let mut sampler = FunctionSampler::new(&tf, rng.gen());
    let functions: Vec<(String, StepFunction)> =
        (0..rng.gen_range(0..=3)).map(|i| (format!("f{i}"), sampler.function())).collect();
    let mut text = String::new();
    if rng.gen_bool(0.3) {
        text.push_str("# generated\n");
    }
    text.push_str(&print_topoframe(&tf, &functions));
    text
}

pub fn fuzz_corpus(seed: u64, count: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_document(&mut rng)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantOutcome {
    pub name: &'static str,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

struct Suite {
    outcomes: Vec<InvariantOutcome>,
}

impl Suite {
    fn record(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let slot = match self.outcomes.iter_mut().position(|o| o.name == name) {
            Some(i) => &mut self.outcomes[i],
            None => {
                self.outcomes.push(InvariantOutcome { name, checked: 0, failure: None });
                self.outcomes.last_mut().unwrap()
            }
        };
        slot.checked += 1;
        if !ok && slot.failure.is_none() {
            slot.failure = Some(detail());
        }
    }
}

fn random_descriptor(rng: &mut ChaCha8Rng, values: &[Rational]) -> SetDescriptor {
    let pick = |rng: &mut ChaCha8Rng| -> Rational {
        if !values.is_empty() && rng.gen_bool(0.6) {
            values.choose(rng).unwrap().clone()
        } else {
            Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=3).into())
        }
    };
    let atom = |rng: &mut ChaCha8Rng| match rng.gen_range(0..4) {
        0 => SetDescriptor::point(pick(rng)),
        1 => {
            let (a, b) = (pick(rng), pick(rng));
            SetDescriptor::open_interval(a.clone().min(b.clone()), a.max(b))
        }
        2 => SetDescriptor::nonzero(),
        _ => SetDescriptor::Points(vec![pick(rng), pick(rng)]),
    };
    let first = atom(rng);
    match rng.gen_range(0..4) {
        0 => first,
        1 => first.union(atom(rng)),
        2 => first.intersect(atom(rng)),
        _ => first.complement(),
    }
}

/// Runs every law on `count` random triples, mixed with `extra`.
pub fn invariant_suite(
    tf: &Arc<Topoframe>,
    extra: &[StepFunction],
    seed: u64,
    count: usize,
) -> Vec<InvariantOutcome> {
    let l = tf.lattice();
    let mut sampler = FunctionSampler::new(tf, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let clopens = tf.clopen_algebra().elements().to_vec();
    let mut suite = Suite { outcomes: Vec::new() };
    let pick = |sampler: &mut FunctionSampler, rng: &mut ChaCha8Rng| {
        if !extra.is_empty() && rng.gen_bool(0.3) {
            extra.choose(rng).unwrap().clone()
        } else {
            sampler.function()
        }
    };
    for _ in 0..count {
        let f = pick(&mut sampler, &mut rng);
        let g = pick(&mut sampler, &mut rng);
        let h = pick(&mut sampler, &mut rng);
        let show = || format!("f = {f}, g = {g}");
        let (zf, zg) = (f.zero_of(), g.zero_of());

        suite.record(
            "zero-of-negation-abs-powers",
            zf == f.negate().zero_of() && zf == f.abs().zero_of() && zf == f.pow(2).zero_of() && zf == f.pow(3).zero_of(),
            show,
        );
        suite.record("zero-of-product-is-join", f.mul(&g).unwrap().zero_of() == l.vee(zf, zg), show);
        suite.record("zero-of-sum-above-meet", l.le(l.wedge(zf, zg), f.add(&g).unwrap().zero_of()), show);
        let (pf, pg) = (f.abs(), g.abs());
        suite.record(
            "zero-of-nonnegative-sum-is-meet",
            pf.add(&pg).unwrap().zero_of() == l.wedge(pf.zero_of(), pg.zero_of()),
            show,
        );
        suite.record("zero-top-iff-zero", (zf == l.top()) == f.is_zero(), show);
        suite.record("zero-bottom-iff-unit", (zf == l.bottom()) == f.is_unit(), show);
        suite.record(
            "cozero-is-open-complement",
            tf.is_open(f.coz_of()) && l.star(f.coz_of()) == zf && l.vee(zf, f.coz_of()) == l.top(),
            show,
        );

        let ring_ok = f.add(&g).unwrap() == g.add(&f).unwrap()
            && f.mul(&g).unwrap() == g.mul(&f).unwrap()
            && f.add(&g).unwrap().add(&h).unwrap() == f.add(&g.add(&h).unwrap()).unwrap()
            && f.mul(&g).unwrap().mul(&h).unwrap() == f.mul(&g.mul(&h).unwrap()).unwrap()
            && f.mul(&g.add(&h).unwrap()).unwrap() == f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
            && f.add(&StepFunction::zero(tf)).unwrap() == f
            && f.mul(&StepFunction::one(tf)).unwrap() == f
            && f.add(&f.negate()).unwrap().is_zero();
        suite.record("ring-axioms", ring_ok, show);
        suite.record("reduced", !f.square().is_zero() || f.is_zero(), show);
        suite.record(
            "max-plus-min-is-sum",
            f.max(&g).unwrap().add(&f.min(&g).unwrap()).unwrap() == f.add(&g).unwrap(),
            show,
        );

        let (vf, vg) = (f.atom_values(), g.atom_values());
        let sum: Vec<Rational> = vf.iter().zip(&vg).map(|(a, b)| a + b).collect();
        let prod: Vec<Rational> = vf.iter().zip(&vg).map(|(a, b)| a * b).collect();
        suite.record(
            "atom-evaluation-homomorphism",
            f.add(&g).unwrap().atom_values() == sum
                && f.mul(&g).unwrap().atom_values() == prod
                && StepFunction::from_atom_values(tf, &vf).unwrap() == f,
            show,
        );

        suite.record(
            "literal-round-trip",
            StepFunction::from_literal(tf, &f.to_literal()).as_ref() == Ok(&f) && !function_literal(&f).is_empty(),
            show,
        );

        let mut values: Vec<Rational> = f.pieces().iter().chain(g.pieces()).map(|p| p.value.clone()).collect();
        values.sort();
        values.dedup();
        let pointwise = values.iter().all(|r| f.at(r) == g.at(r));
        suite.record("equality-by-singletons", pointwise == (f == g), show);

        if let Some(&a) = clopens.choose(&mut rng) {
            let fa = characteristic(tf, a).unwrap();
            let x = random_descriptor(&mut rng, &values);
            let lhs = f.mul(&fa).unwrap().evaluate(&x);
            let fx = f.evaluate(&x);
            let rhs = if x.contains(&Rational::from_integer(0.into())) {
                l.vee(l.star(a), fx)
            } else {
                l.wedge(a, fx)
            };
            suite.record("characteristic-product-pointwise", lhs == rhs, || format!("f = {f}, a = {}, X = {x}", l.label(a)));
        }
    }
    suite.outcomes
}
