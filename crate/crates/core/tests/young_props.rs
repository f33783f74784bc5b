use orlicz_core::solve::log_grid;
use orlicz_core::young::{
    check_delta2, check_nabla2, interpolate, interpolated_exponent, Regime, DIAGNOSTIC_GRID_POINTS,
};
use orlicz_core::YoungFunction;
use proptest::prelude::*;

fn close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs()).max(1e-300)
}

fn n_function() -> impl Strategy<Value = YoungFunction> {
    prop_oneof![
        (1.1f64..8.0).prop_map(YoungFunction::Power),
        (1.1f64..8.0).prop_map(YoungFunction::ScaledPower),
        ((1.5f64..8.0), (0.1f64..=1.0)).prop_map(|(p, s)| interpolate(&YoungFunction::Power(p), s).unwrap()),
    ]
}

fn any_young() -> impl Strategy<Value = YoungFunction> {
    prop_oneof![
        n_function(),
        Just(YoungFunction::Linear),
        Just(YoungFunction::IndicatorBand),
        (0.1f64..3.0, 0.1f64..3.0, 0.5f64..5.0).prop_map(|(b, m0, dm)| {
            YoungFunction::pwl(vec![0.0, b], vec![m0, m0 + dm]).unwrap()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn young_fenchel(phi in any_young(), s in 1e-4f64..1e4, t in 1e-4f64..1e4) {
        let a = phi.eval(t).unwrap();
        let b = phi.conjugate().eval(s).unwrap();
        if a.is_finite() && b.is_finite() {
            prop_assert!(s * t <= (a + b) * (1.0 + 1e-9) + 1e-300, "{phi}: s={s} t={t}");
        }
    }

    #[test]
    fn krasnoselskii(phi in n_function(), t in 1e-4f64..1e4) {
        let v = phi.eval(t).unwrap();
        let lhs = phi.conjugate().eval(v / t).unwrap();
        prop_assert!(lhs <= v * (1.0 + 1e-9), "{phi}: t={t}");
    }

    #[test]
    fn biconjugation(phi in any_young(), i in 0usize..DIAGNOSTIC_GRID_POINTS) {
        let t = log_grid(1e-6, 1e6, DIAGNOSTIC_GRID_POINTS)[i];
        let back = phi.conjugate().conjugate();
        let (a, b) = (phi.eval(t).unwrap(), back.eval(t).unwrap());
        if a.is_finite() {
            prop_assert!(close(a, b, 1e-9) || (a - b).abs() <= 1e-12, "{phi}: {a} vs {b} at t={t}");
        } else {
            prop_assert!(b.is_infinite());
        }
    }

    #[test]
    fn power_passes_both_conditions(p in 1.2f64..10.0) {
        for r in [Regime::Function, Regime::Sequence] {
            prop_assert!(check_delta2(&YoungFunction::Power(p), r).unwrap().passes);
            prop_assert!(check_nabla2(&YoungFunction::Power(p), r).unwrap().passes);
        }
    }

    #[test]
    fn interpolated_power_is_a_power(p in 1.2f64..10.0, s in 0.05f64..=1.0, t in 1e-5f64..1e5) {
        let phi = interpolate(&YoungFunction::Power(p), s).unwrap();
        let want = t.powf(interpolated_exponent(p, s));
        prop_assert!(close(phi.eval(t).unwrap(), want, 1e-9));
    }

    #[test]
    fn spec_strings_round_trip(phi in any_young()) {
        let back: YoungFunction = phi.to_string().parse().unwrap();
        for t in [0.01, 0.7, 3.0, 50.0] {
            let (a, b) = (phi.eval(t).unwrap(), back.eval(t).unwrap());
            prop_assert!(a == b || close(a, b, 1e-12));
        }
    }
}

#[test]
fn linear_and_indicator_are_dual() {
    assert_eq!(YoungFunction::Linear.conjugate(), YoungFunction::IndicatorBand);
    assert_eq!(YoungFunction::IndicatorBand.conjugate(), YoungFunction::Linear);
    assert!(!check_nabla2(&YoungFunction::Linear, Regime::Function).unwrap().passes);
    assert!(!check_delta2(&YoungFunction::IndicatorBand, Regime::Function).unwrap().passes);
}
