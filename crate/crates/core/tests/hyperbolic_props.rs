use orlicz_core::hyperbolic::{
    cocycle, cocycle_norm, finiteness_bound, h_map, mineyev_f, properness_bound, HyperbolicData,
};
use orlicz_core::space::{gauge_norm, nested_gauge_norm};
use orlicz_core::word::{alphabet, gromov_product};
use orlicz_core::{fuzz, Word, YoungFunction};
use rand::seq::SliceRandom;
use rand::Rng;

fn spaces() -> (YoungFunction, YoungFunction, HyperbolicData) {
    let (phi, psi) = (YoungFunction::Power(2.0), YoungFunction::Power(4.0));
    let data = HyperbolicData::new(&phi, 2, 1).unwrap();
    (phi, psi, data)
}

/// `g` of length exactly `n`.
fn word_of_len(rng: &mut impl Rng, n: usize) -> Word {
    loop {
        let w = fuzz::word(rng, 2, n);
        if w.len() == n {
            return w;
        }
    }
}

/// A vertex at distance exactly `t` from the geodesic `[e, g]`, hanging off
/// the spine vertex `g[..k]`.
fn off_spine(rng: &mut impl Rng, g: &Word, k: usize, t: usize) -> Word {
    let letters = alphabet(2);
    let mut w = g.prefix(k);
    while w.len() < k + t {
        let x = *letters.choose(rng).unwrap();
        let back = w.letters().last() == Some(&-x);
        let along = w.len() == k && g.letters().get(k) == Some(&x);
        if !back && !along {
            w = w.push(x);
        }
    }
    w
}

#[test]
fn support_is_the_radius_neighbourhood() {
    let (phi, _, data) = spaces();
    let e = Word::identity();
    let mut rng = fuzz::rng(1);
    for _ in 0..500 {
        let g = fuzz::word(&mut rng, 2, 30);
        let k = rng.gen_range(0..=g.len());
        let t = rng.gen_range(data.radius + 1..data.radius + 15);
        let gamma = off_spine(&mut rng, &g, k, t);
        assert_eq!(h_map(&phi, &data, &gamma, &g), h_map(&phi, &data, &gamma, &e), "g = {g}, gamma = {gamma}");
    }
    for len in [0, 1, 4, 13] {
        let g = word_of_len(&mut rng, len);
        let b = cocycle(&phi, &YoungFunction::Power(4.0), &data, &g).unwrap();
        for (gamma, _) in b.iter() {
            let k = gamma.common_prefix_len(&g);
            assert!(gamma.len() - k <= data.radius);
        }
    }
}

#[test]
fn mineyev_contraction() {
    let (_, _, data) = spaces();
    let mut rng = fuzz::rng(2);
    for _ in 0..10_000 {
        let b = fuzz::word(&mut rng, 2, 30);
        let a = fuzz::word(&mut rng, 2, 30);
        let a2 = fuzz::word(&mut rng, 2, 30);
        let lhs = mineyev_f(&data, &b, &a).l1_distance(&mineyev_f(&data, &b, &a2));
        let rhs = data.l * data.lambda.powf(gromov_product(&a, &a2, &b));
        assert!(lhs <= rhs, "b = {b}, a = {a}, a' = {a2}: {lhs} > {rhs}");
    }
}

#[test]
fn far_spine_entries_have_unit_norm() {
    let (phi, _, data) = spaces();
    let e = Word::identity();
    let mut rng = fuzz::rng(3);
    for _ in 0..40 {
        let n = rng.gen_range(25..60);
        let g = word_of_len(&mut rng, n);
        for k in data.radius..=n - data.radius {
            let gamma = g.prefix(k);
            let diff = h_map(&phi, &data, &gamma, &g).sub(&h_map(&phi, &data, &gamma, &e));
            assert!(gauge_norm(&phi, &diff) >= 1.0 - 1e-12, "g = {g}, k = {k}");
        }
    }
}

#[test]
fn proper_beyond_hundred() {
    let (phi, psi, data) = spaces();
    let mut rng = fuzz::rng(4);
    for _ in 0..3 {
        let n = rng.gen_range(101..=110);
        let g = word_of_len(&mut rng, n);
        let r = cocycle_norm(&phi, &psi, &data, &g).unwrap();
        let bound = properness_bound(&psi, &data, n).unwrap();
        assert!(r.norm >= bound, "|g| = {n}: {} < {bound}", r.norm);
        assert!(r.ok);
    }
    let ray = word_of_len(&mut rng, 116);
    let norms: Vec<f64> = [104, 108, 112, 116]
        .iter()
        .map(|&n| cocycle_norm(&phi, &psi, &data, &ray.prefix(n)).unwrap().norm)
        .collect();
    assert!(norms.windows(2).all(|w| w[0] < w[1]), "{norms:?}");
}

#[test]
fn norms_stay_below_the_finiteness_bound() {
    let (phi, psi, data) = spaces();
    let mut rng = fuzz::rng(5);
    for n in 0..=40 {
        let g = word_of_len(&mut rng, n);
        let r = cocycle_norm(&phi, &psi, &data, &g).unwrap();
        assert!(r.norm <= finiteness_bound(&psi, &data, n).unwrap(), "|g| = {n}");
        if n <= 8 {
            let direct = nested_gauge_norm(&psi, &phi, &cocycle(&phi, &psi, &data, &g).unwrap());
            assert!((direct - r.norm).abs() <= 1e-12 * direct.max(1.0), "|g| = {n}: {direct} vs {}", r.norm);
        }
    }
}
