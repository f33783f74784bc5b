use num_complex::Complex64;
use orlicz_core::space::{
    gauge_norm, modular_at, nested_gauge_norm, orlicz_norm, CocycleVector, Element, SparseVector, StepFunction,
};
use orlicz_core::young::interpolate;
use orlicz_core::{Word, YoungFunction};
use proptest::prelude::*;

fn entries() -> impl Strategy<Value = Vec<(u64, f64, f64)>> {
    prop::collection::vec((0u64..40, -50.0f64..50.0, -50.0f64..50.0), 1..8)
}

fn sparse() -> impl Strategy<Value = SparseVector<u64>> {
    entries().prop_map(|e| SparseVector::from_entries(e.into_iter().map(|(i, re, im)| (i, Complex64::new(re, im)))))
        .prop_filter("non-zero", |v| !v.is_empty())
}

fn step() -> impl Strategy<Value = StepFunction> {
    prop::collection::vec((0.01f64..1.0, -20.0f64..20.0), 1..6).prop_map(|pieces| {
        let total: f64 = pieces.iter().map(|p| p.0).sum();
        let mut bps = vec![0.0];
        let mut acc = 0.0;
        for (w, _) in &pieces {
            acc += w / total;
            bps.push(acc);
        }
        *bps.last_mut().unwrap() = 1.0;
        StepFunction::new(bps, pieces.iter().map(|p| Complex64::new(p.1, 0.0)).collect()).unwrap()
    })
}

fn element() -> impl Strategy<Value = Element> {
    prop_oneof![sparse().prop_map(Element::Sparse), step().prop_map(Element::Step)]
        .prop_filter("non-zero", |f| !f.is_zero())
}

fn catalog() -> impl Strategy<Value = YoungFunction> {
    prop_oneof![
        Just(YoungFunction::Power(1.5)),
        Just(YoungFunction::Power(3.0)),
        Just(YoungFunction::ScaledPower(4.0)),
        Just(interpolate(&YoungFunction::Power(6.0), 0.5).unwrap()),
    ]
}

fn p_norm(p: f64, f: &SparseVector<u64>) -> f64 {
    f.iter().map(|(_, z)| z.norm().powf(p)).sum::<f64>().powf(1.0 / p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauge_below_orlicz_below_twice_gauge(phi in catalog(), f in element()) {
        let g = gauge_norm(&phi, &f);
        let o = orlicz_norm(&phi, &f).unwrap();
        prop_assert!(g <= o + 1e-9 * g.max(1.0));
        prop_assert!(o <= 2.0 * g + 1e-9 * g.max(1.0));
    }

    #[test]
    fn norm_axioms(phi in catalog(), f in element(), g in element(), c in -5.0f64..5.0) {
        let n = |x: &Element| gauge_norm(&phi, x);
        let scaled = f.scale(Complex64::new(c, 0.0));
        prop_assert!((n(&scaled) - c.abs() * n(&f)).abs() <= 1e-10 * n(&f).max(1.0));
        if let Ok(sum) = f.add(&g) {
            prop_assert!(n(&sum) <= (n(&f) + n(&g)) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn power_gauge_is_p_norm(p in 1.0f64..8.0, f in sparse()) {
        let want = p_norm(p, &f);
        prop_assert!((gauge_norm(&YoungFunction::Power(p), &f) - want).abs() <= 1e-10 * want.max(1.0));
    }

    #[test]
    fn bisection_certificate(phi in catalog(), f in element()) {
        let b = gauge_norm(&phi, &f);
        prop_assert!(modular_at(&phi, &f, b) <= 1.0);
        prop_assert!(modular_at(&phi, &f, b * (1.0 - 1e-10)) > 1.0);
    }

    #[test]
    fn nested_power_norm_is_mixed_norm(
        q in 1.0f64..6.0,
        p in 1.0f64..6.0,
        rows in prop::collection::vec(prop::collection::vec(0.1f64..10.0, 1..4), 1..5),
    ) {
        let xi = CocycleVector::from_entries(rows.iter().enumerate().map(|(i, row)| {
            let inner = SparseVector::from_real(row.iter().enumerate().map(|(j, &v)| (Word::power(2, j), v)));
            (Word::power(1, i), inner)
        }));
        let want = rows
            .iter()
            .map(|row| row.iter().map(|v| v.powf(p)).sum::<f64>().powf(q / p))
            .sum::<f64>()
            .powf(1.0 / q);
        let got = nested_gauge_norm(&YoungFunction::Power(q), &YoungFunction::Power(p), &xi);
        prop_assert!((got - want).abs() <= 1e-10 * want.max(1.0));
    }
}

#[test]
fn norm_file_example() {
    let f = orlicz_core::io::parse_element(r#"{"kind":"sparse","entries":[[1,3,0],[2,4,0]]}"#).unwrap();
    let phi = YoungFunction::Power(2.0);
    assert!((gauge_norm(&phi, &f) - 5.0).abs() < 1e-12);
    assert!((orlicz_norm(&phi, &f).unwrap() - 10.0).abs() < 1e-6);
}
