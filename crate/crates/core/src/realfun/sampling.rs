//! Seeded generation of ring elements over a topoframe.

use std::sync::Arc;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Rational, StepFunction};
use crate::topoframe::Topoframe;

/// Small fixed values that exercise zero, units and sign changes.
pub fn value_pool() -> Vec<Rational> {
    [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 3), (3, 2)]
        .iter()
        .map(|&(n, d)| Rational::new(n.into(), d.into()))
        .collect()
}

/// Every function whose atom values lie in `pool`, when there are at most
/// `limit` of them.
pub fn exhaustive_over_pool(space: &Arc<Topoframe>, pool: &[Rational], limit: usize) -> Option<Vec<StepFunction>> {
    let k = space.clopen_algebra().atoms().len();
    let total = pool.len().checked_pow(k as u32)?;
    if total > limit {
        return None;
    }
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; k];
    loop {
        let values: Vec<Rational> = digits.iter().map(|&d| pool[d].clone()).collect();
        out.push(StepFunction::from_atom_values(space, &values).expect("one value per atom"));
        let mut i = 0;
        loop {
            if i == k {
                return Some(out);
            }
            digits[i] += 1;
            if digits[i] < pool.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

pub struct FunctionSampler {
    space: Arc<Topoframe>,
    rng: ChaCha8Rng,
    pool: Vec<Rational>,
}

impl FunctionSampler {
    pub fn new(space: &Arc<Topoframe>, seed: u64) -> Self {
        FunctionSampler {
            space: space.clone(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: value_pool(),
        }
    }

    pub fn space(&self) -> &Arc<Topoframe> {
        &self.space
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A pool value half of the time, otherwise a random small rational.
    pub fn value(&mut self) -> Rational {
        if self.rng.gen_bool(0.5) {
            self.pool.choose(&mut self.rng).unwrap().clone()
        } else {
            let n: i64 = self.rng.gen_range(-9..=9);
            let d: i64 = self.rng.gen_range(1..=7);
            Rational::new(n.into(), d.into())
        }
    }

    pub fn nonzero_value(&mut self) -> Rational {
        loop {
            let v = self.value();
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// Sometimes reuses one value across atoms so that merged pieces appear.
    pub fn function(&mut self) -> StepFunction {
        let k = self.space.clopen_algebra().atoms().len();
        let shared = self.value();
        let values: Vec<Rational> = (0..k)
            .map(|_| if self.rng.gen_bool(0.25) { shared.clone() } else { self.value() })
            .collect();
        StepFunction::from_atom_values(&self.space, &values).expect("one value per atom")
    }

    pub fn nonnegative_function(&mut self) -> StepFunction {
        self.function().abs()
    }

    /// A function vanishing outside the atoms flagged in `support`, nonzero on them.
    pub fn supported_on(&mut self, support: &[bool]) -> StepFunction {
        let values: Vec<Rational> = support
            .iter()
            .map(|&on| if on { self.nonzero_value() } else { Rational::zero() })
            .collect();
        StepFunction::from_atom_values(&self.space, &values).expect("one value per atom")
    }

    pub fn functions(&mut self, count: usize) -> Vec<StepFunction> {
        (0..count).map(|_| self.function()).collect()
    }
}
