//! Seeded random inputs for property checks.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::mazur::WeightedComposition;
use crate::space::{gauge_norm, CocycleVector, Element, SparseVector, StepFunction};
use crate::word::{alphabet, Word};
use crate::young::YoungFunction;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Modulus spread over several decades, with a random phase when `complex`.
pub fn scalar(rng: &mut impl Rng, complex: bool) -> Complex64 {
    let m = rng.gen_range(0.05..10.0) * 10f64.powf(rng.gen_range(-1.5..1.5));
    if complex {
        Complex64::from_polar(m, rng.gen_range(0.0..std::f64::consts::TAU))
    } else if rng.gen_bool(0.5) {
        Complex64::new(m, 0.0)
    } else {
        Complex64::new(-m, 0.0)
    }
}

pub fn nonzero_complex(rng: &mut impl Rng) -> Complex64 {
    scalar(rng, true)
}

/// Support of size `1..=max_support` inside `0..64`.
pub fn sparse(rng: &mut impl Rng, max_support: usize) -> SparseVector<u64> {
    let n = rng.gen_range(1..=max_support);
    let mut idx: Vec<u64> = (0..64).collect();
    idx.shuffle(rng);
    let complex = rng.gen_bool(0.5);
    SparseVector::from_entries(idx[..n].iter().map(|&i| (i, scalar(rng, complex))))
}

/// Up to `max_pieces` pieces with random breakpoints in `[0, 1]`.
pub fn step(rng: &mut impl Rng, max_pieces: usize) -> StepFunction {
    let n = rng.gen_range(1..=max_pieces);
    let mut cuts: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.01..0.99)).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut breakpoints = vec![0.0];
    breakpoints.extend(cuts);
    breakpoints.push(1.0);
    let complex = rng.gen_bool(0.5);
    let values = (0..breakpoints.len() - 1).map(|_| scalar(rng, complex)).collect();
    StepFunction::new(breakpoints, values).expect("sorted breakpoints")
}

/// A sparse vector or a step function with equal probability.
pub fn element(rng: &mut impl Rng) -> Element {
    if rng.gen_bool(0.5) {
        Element::Sparse(sparse(rng, 8))
    } else {
        Element::Step(step(rng, 8))
    }
}

/// `f` rescaled so that `‖f‖_(Φ)` is uniform in `[1/2, 3/2]`.
pub fn in_annulus(rng: &mut impl Rng, phi: &YoungFunction, f: Element) -> Element {
    let target = rng.gen_range(0.5..=1.5);
    let n = gauge_norm(phi, &f);
    f.scale(Complex64::new(target / n, 0.0))
}

/// Random reduced word of length `0..=max_len`.
pub fn word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Word {
    let letters = alphabet(rank);
    let n = rng.gen_range(0..=max_len);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x = *letters.choose(rng).expect("non-empty alphabet");
        if out.last() != Some(&-x) {
            out.push(x);
        }
    }
    Word::reduce(out)
}

/// Random permutation of `0..n` with unimodular weights.
pub fn weighted_composition(rng: &mut impl Rng, n: usize, complex: bool) -> WeightedComposition {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let weights = (0..n)
        .map(|_| {
            if complex {
                Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
            } else if rng.gen_bool(0.5) {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(-1.0, 0.0)
            }
        })
        .collect();
    WeightedComposition::new(perm, weights).expect("random permutation")
}

/// Small nested vector with outer and inner supports near the identity.
pub fn cocycle_vector(rng: &mut impl Rng, rank: usize, entries: usize) -> CocycleVector {
    CocycleVector::from_entries((0..entries).map(|_| {
        let outer = word(rng, rank, 6);
        let inner = SparseVector::from_entries((0..rng.gen_range(1..=3)).map(|_| (word(rng, rank, 6), scalar(rng, true))));
        (outer, inner)
    }))
}
