use num_complex::Complex64;
use orlicz_core::fuzz;
use orlicz_core::mazur::{
    conjugate_isometry, holder_certificate, holder_check, mazur_map, HolderCase, WeightedComposition,
};
use orlicz_core::space::{gauge_norm, Element, SparseVector};
use orlicz_core::verify::{catalog_n_functions, holder_pairs};
use orlicz_core::YoungFunction;
use proptest::prelude::*;

fn l2(f: &SparseVector<u64>) -> f64 {
    gauge_norm(&YoungFunction::Power(2.0), f)
}

fn distance(f: &Element, g: &Element) -> f64 {
    gauge_norm(&YoungFunction::Power(2.0), &f.sub(g).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unit_sphere_round_trip(seed in any::<u64>(), i in 0usize..4, j in 0usize..4) {
        let cat = catalog_n_functions();
        let (phi, psi) = (&cat[i], &cat[j]);
        let mut rng = fuzz::rng(seed);
        let raw = fuzz::element(&mut rng);
        let f = raw.scale(Complex64::new(1.0 / gauge_norm(phi, &raw), 0.0));
        let g = mazur_map(phi, psi, &f).unwrap();
        prop_assert!((gauge_norm(psi, &g) - 1.0).abs() <= 1e-9);
        let back = mazur_map(psi, phi, &g).unwrap();
        prop_assert!(distance(&back, &f) <= 1e-9 * gauge_norm(&YoungFunction::Power(2.0), &f).max(1.0));
    }

    #[test]
    fn conjugation_is_linear_and_isometric(seed in any::<u64>(), i in 0usize..4) {
        let phi = &catalog_non_exact(i);
        let mut rng = fuzz::rng(seed);
        let u = fuzz::weighted_composition(&mut rng, 64, true);
        let f = fuzz::sparse(&mut rng, 8);
        let g = fuzz::sparse(&mut rng, 8);
        let c = fuzz::nonzero_complex(&mut rng);
        let tf = conjugate_isometry(phi, &u, &f).unwrap();
        let tg = conjugate_isometry(phi, &u, &g).unwrap();
        let scale = l2(&f).max(l2(&g)).max(1.0);
        let sum = conjugate_isometry(phi, &u, &f.add(&g)).unwrap();
        prop_assert!(l2(&sum.sub(&tf.add(&tg))) <= 1e-10 * scale);
        let scaled = conjugate_isometry(phi, &u, &f.scale(c)).unwrap();
        prop_assert!(l2(&scaled.sub(&tf.scale(c))) <= 1e-10 * scale * c.norm().max(1.0));
        prop_assert!((l2(&tf) - l2(&f)).abs() <= 1e-10 * scale);
    }

    #[test]
    fn conjugation_is_a_homomorphism(seed in any::<u64>(), i in 0usize..4) {
        let phi = &catalog_non_exact(i);
        let mut rng = fuzz::rng(seed);
        let u = fuzz::weighted_composition(&mut rng, 64, true);
        let v = fuzz::weighted_composition(&mut rng, 64, true);
        let f = fuzz::sparse(&mut rng, 8);
        let composed = conjugate_isometry(phi, &u.compose(&v), &f).unwrap();
        let stepwise = conjugate_isometry(phi, &u, &conjugate_isometry(phi, &v, &f).unwrap()).unwrap();
        prop_assert!(l2(&composed.sub(&stepwise)) <= 1e-10 * l2(&f).max(1.0));
    }
}

fn catalog_non_exact(i: usize) -> YoungFunction {
    catalog_n_functions()[i].clone()
}

fn annulus_pair(rng: &mut impl rand::Rng, phi: &YoungFunction) -> (Element, Element) {
    let (a, b) = if rng.gen_bool(0.5) {
        (Element::Sparse(fuzz::sparse(rng, 6)), Element::Sparse(fuzz::sparse(rng, 6)))
    } else {
        (Element::Step(fuzz::step(rng, 6)), Element::Step(fuzz::step(rng, 6)))
    };
    let f = fuzz::in_annulus(rng, phi, a);
    let h = fuzz::in_annulus(rng, phi, b);
    (f, h)
}

#[test]
fn holder_bound_for_cases_two_and_three() {
    let mut checked = 0;
    for (k, (name, phi, psi)) in holder_pairs().into_iter().enumerate() {
        let cert = holder_certificate(&phi, &psi).unwrap();
        if cert.case == HolderCase::Case1 {
            continue;
        }
        checked += 1;
        let mut rng = fuzz::rng(900 + k as u64);
        for _ in 0..1000 {
            let (f, h) = annulus_pair(&mut rng, &phi);
            let rec = holder_check(&phi, &psi, &cert, &f, &h).unwrap();
            assert!(rec.lhs <= rec.rhs + 1e-9, "{name}: {} > {}", rec.lhs, rec.rhs);
        }
    }
    assert!(checked >= 2);
}

#[test]
fn case_one_constant_has_counterexamples() {
    let (phi, psi) = (YoungFunction::Power(2.0), YoungFunction::Power(4.0));
    let cert = holder_certificate(&phi, &psi).unwrap();
    assert_eq!(cert.case, HolderCase::Case1);
    let mut rng = fuzz::rng(77);
    let violated = (0..200).any(|_| {
        let (f, h) = annulus_pair(&mut rng, &phi);
        !holder_check(&phi, &psi, &cert, &f, &h).unwrap().ok
    });
    assert!(violated);
}

#[test]
fn identity_composition_conjugates_to_identity() {
    let f = fuzz::sparse(&mut fuzz::rng(3), 8);
    let id = WeightedComposition::identity(64);
    let out = conjugate_isometry(&YoungFunction::Power(3.0), &id, &f).unwrap();
    assert!(l2(&out.sub(&f)) <= 1e-12 * l2(&f));
}
