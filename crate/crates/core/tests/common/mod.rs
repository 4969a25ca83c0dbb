//! Independent oracles shared by the integration tests. Everything here
//! works on bitmask sets and rational vectors and only touches the library
//! to build inputs or read results back.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tflab::io::enumerate::{enumerate_subframes, DEFAULT_MAX_COMPLEMENTED};
use tflab::lattice::{Element, Lattice, Poset};
use tflab::realfun::{rational, Rational, StepFunction};
use tflab::topoframe::{validate_topoframe, Topoframe};

pub const FIX_B2: &str = "space powerset 2\ntau {} {1} {2} {1,2}\nfn f = 2@{1} ; 0@{2}\nfn g = 3@{1} ; 5@{2}\n";
pub const FIX_S3: &str = "space powerset 3\ntau {} {1} {2} {1,2} {1,2,3}\n";
pub const FIX_C: &str = "space powerset 2\ntau {} {1,2}\nfn u = 7/2@{1,2}\n";

/// `{1,3}` → `0b101`.
pub fn mask_of(label: &str) -> u64 {
    let inner = label.trim().trim_start_matches('{').trim_end_matches('}');
    inner
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| 1u64 << (s.trim().parse::<u32>().expect("numeric point") - 1))
        .fold(0, |a, b| a | b)
}

pub fn label_of(mask: u64) -> String {
    let points: Vec<String> = (0..64).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", points.join(","))
}

/// Every family of subsets of `{1..n}` containing ∅ and the whole set and
/// closed under union and intersection, by filtering all candidate families.
pub fn brute_topologies(n: usize) -> Vec<Vec<u64>> {
    let full = (1u64 << n) - 1;
    let middle: Vec<u64> = (1..full).collect();
    let mut out = Vec::new();
    for choice in 0u64..1 << middle.len() {
        let mut fam: Vec<u64> = vec![0, full];
        fam.extend(middle.iter().enumerate().filter(|(i, _)| choice >> i & 1 == 1).map(|(_, &m)| m));
        let set: BTreeSet<u64> = fam.iter().copied().collect();
        if fam.iter().all(|a| fam.iter().all(|b| set.contains(&(a | b)) && set.contains(&(a & b)))) {
            out.push(set.into_iter().collect());
        }
    }
    out
}

/// Transitive closures of every set of upward pairs on `k` nodes, up to
/// equality of the order (each poset has a linear extension, so every
/// isomorphism type appears).
pub fn brute_posets(k: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for choice in 0u64..1 << pairs.len() {
        let mut rel: BTreeSet<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| choice >> i & 1 == 1).map(|(_, &p)| p).collect();
        loop {
            let extra: Vec<(usize, usize)> = rel
                .iter()
                .flat_map(|&(a, b)| rel.iter().filter(move |&&(c, _)| c == b).map(move |&(_, d)| (a, d)))
                .filter(|p| !rel.contains(p))
                .collect();
            if extra.is_empty() {
                break;
            }
            rel.extend(extra);
        }
        let v: Vec<(usize, usize)> = rel.into_iter().collect();
        if seen.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

/// Downsets of the order `rel` on `k` nodes, where `(a, b)` means `a < b`.
pub fn brute_downsets(k: usize, rel: &[(usize, usize)]) -> Vec<u64> {
    (0u64..1 << k)
        .filter(|&m| rel.iter().all(|&(a, b)| m >> b & 1 == 0 || m >> a & 1 == 1))
        .collect()
}

/// A topoframe together with its set-level description.
#[derive(Debug)]
pub struct Space {
    pub name: String,
    pub tf: Arc<Topoframe>,
    pub full: u64,
    /// Every element of the ambient lattice.
    pub elements: Vec<u64>,
    pub opens: Vec<u64>,
    /// Opens with an open complement.
    pub clopens: Vec<u64>,
    pub atoms: Vec<u64>,
}

impl Space {
    pub fn new(name: impl Into<String>, tf: Arc<Topoframe>) -> Self {
        let l = tf.lattice();
        let elements: Vec<u64> = l.labels().iter().map(|s| mask_of(s)).collect();
        let full = elements.iter().fold(0, |a, b| a | b);
        let opens: Vec<u64> = tf.opens().iter().map(|&e| mask_of(l.label(e))).collect();
        let clopens: Vec<u64> =
            opens.iter().copied().filter(|&o| opens.iter().any(|&c| c & o == 0 && c | o == full)).collect();
        let atoms = clopens
            .iter()
            .copied()
            .filter(|&a| a != 0 && clopens.iter().all(|&c| c == 0 || c == a || c & a != c))
            .collect();
        Space { name: name.into(), tf, full, elements, opens, clopens, atoms }
    }

    pub fn from_masks(n: usize, opens: &[u64]) -> Self {
        let l = Arc::new(Lattice::powerset(n).unwrap());
        let tau: Vec<Element> = opens.iter().map(|&m| l.parse_element(&label_of(m)).unwrap()).collect();
        let tf = validate_topoframe(l, &tau).unwrap();
        Space::new(format!("powerset{n}:{}", opens.iter().map(|&m| label_of(m)).collect::<Vec<_>>().join(" ")), tf)
    }

    pub fn elem(&self, mask: u64) -> Element {
        self.tf.lattice().parse_element(&label_of(mask)).unwrap_or_else(|| panic!("no element {}", label_of(mask)))
    }

    pub fn mask(&self, e: Element) -> u64 {
        mask_of(self.tf.lattice().label(e))
    }

    pub fn is_open(&self, m: u64) -> bool {
        self.opens.contains(&m)
    }

    /// The function with value `values[i]` on `atoms[i]`, built from pieces.
    pub fn build(&self, values: &[Rational]) -> StepFunction {
        let mut by_value: BTreeMap<Rational, u64> = BTreeMap::new();
        for (v, &a) in values.iter().zip(&self.atoms) {
            *by_value.entry(v.clone()).or_default() |= a;
        }
        StepFunction::new(&self.tf, by_value.into_iter().map(|(v, m)| (v, self.elem(m)))).unwrap()
    }

    /// Value of `f` on each atom, read from its pieces.
    pub fn phi(&self, f: &StepFunction) -> Vec<Rational> {
        self.atoms
            .iter()
            .map(|&a| {
                let hits: Vec<&Rational> =
                    f.pieces().iter().filter(|p| a & !self.mask(p.carrier) == 0).map(|p| &p.value).collect();
                assert_eq!(hits.len(), 1, "atom {} lies in one carrier of {f}", label_of(a));
                hits[0].clone()
            })
            .collect()
    }

    /// Join of the atoms where `values` vanish.
    pub fn zero_mask(&self, values: &[Rational]) -> u64 {
        values.iter().zip(&self.atoms).filter(|(v, _)| v.is_zero()).fold(0, |m, (_, &a)| m | a)
    }

    pub fn random_values(&self, rng: &mut ChaCha8Rng) -> Vec<Rational> {
        self.atoms.iter().map(|_| small_rational(rng)).collect()
    }
}

/// Mostly small integers and halves, with zero and repeats common.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    if rng.gen_bool(0.25) {
        return Rational::zero();
    }
    rational(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = rational(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        if !r.is_zero() {
            return r;
        }
    }
}

/// Small non-Boolean carriers: subframes of downset lattices.
pub fn downset_spaces() -> Vec<Space> {
    let posets: [(&str, usize, &[(usize, usize)]); 4] = [
        ("chain2", 2, &[(0, 1)]),
        ("vee", 3, &[(0, 2), (1, 2)]),
        ("chain-plus-point", 3, &[(0, 1)]),
        ("two-chains", 4, &[(0, 1), (2, 3)]),
    ];
    let mut out = Vec::new();
    for (name, k, covers) in posets {
        let l = Arc::new(Lattice::birkhoff(&Poset::new(k, covers).unwrap()).unwrap());
        for inst in enumerate_subframes(l, DEFAULT_MAX_COMPLEMENTED).unwrap() {
            out.push(Space::new(format!("{name}-{}", inst.id), inst.topoframe));
        }
    }
    out
}

/// Every topology on up to `max_points` points plus the downset spaces.
pub fn all_spaces(max_points: usize) -> Vec<Space> {
    let mut out = Vec::new();
    for n in 1..=max_points {
        for fam in brute_topologies(n) {
            out.push(Space::from_masks(n, &fam));
        }
    }
    out.extend(downset_spaces());
    out
}
