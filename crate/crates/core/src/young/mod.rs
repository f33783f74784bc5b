//! Young functions: a closed catalog with evaluation, inversion, Legendre
//! conjugation, growth diagnostics and Rao–Ren interpolation.

mod growth;
mod pwl;
mod spec;

pub use growth::{
    check_delta2, check_delta2_at, check_nabla2, check_nabla2_at, k_class_indices, GrowthReport,
    KClassIndices, Regime, DIAGNOSTIC_GRID_POINTS,
};
pub use pwl::PiecewiseLinear;

use crate::error::{domain, Error, Result};
use crate::solve::{log_bracket, log_grid};

/// Factors within this distance of 1 collapse out of a `ScaledBy` wrapper.
const UNIT_FACTOR_TOL: f64 = 1e-12;

/// A convex `Φ: [0, ∞) → [0, ∞]` with `Φ(0) = 0` and `Φ(t) → ∞`.
#[derive(Debug, Clone, PartialEq)]
pub enum YoungFunction {
    /// `t^p`, `p > 1`.
    Power(f64),
    /// `t^p / p`, `p > 1`.
    ScaledPower(f64),
    /// `t`.
    Linear,
    /// `0` on `[0, 1]`, `+∞` beyond.
    IndicatorBand,
    PiecewiseLinear(PiecewiseLinear),
    /// The function whose inverse is `(Φ⁻¹(t))^{1-s} t^{s/2}`.
    Interpolated { base: Box<YoungFunction>, s: f64 },
    /// `factor · inner(t)`.
    ScaledBy {
        factor: f64,
        inner: Box<YoungFunction>,
    },
}

impl YoungFunction {
    pub fn power(p: f64) -> Result<Self> {
        check_exponent(p)?;
        Ok(Self::Power(p))
    }

    pub fn scaled_power(p: f64) -> Result<Self> {
        check_exponent(p)?;
        Ok(Self::ScaledPower(p))
    }

    pub fn pwl(breakpoints: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        PiecewiseLinear::new(breakpoints, slopes).map(Self::PiecewiseLinear)
    }

    pub fn scaled_by(factor: f64, inner: YoungFunction) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return domain(format!("scale factor must be positive and finite, got {factor}"));
        }
        inner.validate()?;
        Ok(Self::ScaledBy {
            factor,
            inner: Box::new(inner),
        })
    }

    /// Checks the parameters of every nested variant.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Power(p) | Self::ScaledPower(p) => check_exponent(*p),
            Self::Linear | Self::IndicatorBand | Self::PiecewiseLinear(_) => Ok(()),
            Self::Interpolated { base, s } => {
                check_interpolation_parameter(*s)?;
                base.validate()?;
                if !base.is_invertible() {
                    return Err(unsupported(base, "interpolation"));
                }
                Ok(())
            }
            Self::ScaledBy { factor, inner } => {
                if !(factor.is_finite() && *factor > 0.0) {
                    return domain("scale factor must be positive and finite");
                }
                inner.validate()
            }
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            Self::Power(_) => "power",
            Self::ScaledPower(_) => "scaled-power",
            Self::Linear => "linear",
            Self::IndicatorBand => "indicator",
            Self::PiecewiseLinear(_) => "pwl",
            Self::Interpolated { .. } => "interp",
            Self::ScaledBy { .. } => "scaled",
        }
    }

    /// `Φ(t)`; `+∞` is a legitimate result.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 {
            return domain(format!("Young functions are defined on [0, inf), got t = {t}"));
        }
        Ok(self.value(t))
    }

    /// Unchecked evaluation for internal hot loops; `t` must be non-negative.
    pub(crate) fn value(&self, t: f64) -> f64 {
        match self {
            Self::Power(p) => t.powf(*p),
            Self::ScaledPower(p) => t.powf(*p) / p,
            Self::Linear => t,
            Self::IndicatorBand => {
                if t <= 1.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            Self::PiecewiseLinear(f) => f.eval(t),
            Self::ScaledBy { factor, inner } => factor * inner.value(t),
            Self::Interpolated { base, s } => interpolated_value(base, *s, t),
        }
    }

    /// Right derivative `Φ'(t)`.
    pub fn derivative(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 {
            return domain(format!("derivative needs t >= 0, got {t}"));
        }
        Ok(self.slope(t))
    }

    pub(crate) fn slope(&self, t: f64) -> f64 {
        match self {
            Self::Power(p) => p * t.powf(p - 1.0),
            Self::ScaledPower(p) => t.powf(p - 1.0),
            Self::Linear => 1.0,
            Self::IndicatorBand => {
                if t < 1.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            Self::PiecewiseLinear(f) => f.derivative(t),
            Self::ScaledBy { factor, inner } => factor * inner.slope(t),
            Self::Interpolated { base, s } => {
                if t == 0.0 {
                    // Φ_(s) is an N-function whenever s > 0.
                    return 0.0;
                }
                let y = interpolated_value(base, *s, t);
                let x = base.inverse_value(y);
                let dx = 1.0 / base.slope(x);
                // d/dy of x^{1-s} y^{s/2}
                let dinv = (1.0 - s) * x.powf(-s) * dx * y.powf(s / 2.0)
                    + (s / 2.0) * x.powf(1.0 - s) * y.powf(s / 2.0 - 1.0);
                1.0 / dinv
            }
        }
    }

    /// True when `Φ` is finite and strictly increasing on `[0, ∞)`, so that
    /// `Φ⁻¹` is an honest inverse.
    pub fn is_invertible(&self) -> bool {
        match self {
            Self::Power(_) | Self::ScaledPower(_) | Self::Linear => true,
            Self::IndicatorBand => false,
            Self::PiecewiseLinear(f) => f.is_strictly_increasing(),
            Self::Interpolated { base, .. } => base.is_invertible(),
            Self::ScaledBy { inner, .. } => inner.is_invertible(),
        }
    }

    /// Analytic N-function classification of the catalog.
    pub fn is_n_function(&self) -> bool {
        match self {
            Self::Power(_) | Self::ScaledPower(_) => true,
            Self::Linear | Self::IndicatorBand | Self::PiecewiseLinear(_) => false,
            // (Φ⁻¹)^{1-s} t^{s/2} is o(t^{1-s/2}) near 0 for any invertible base.
            Self::Interpolated { base, .. } => base.is_invertible(),
            Self::ScaledBy { inner, .. } => inner.is_n_function(),
        }
    }

    /// `Φ⁻¹(y)`: closed form for every invertible variant.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if y.is_nan() || y < 0.0 {
            return domain(format!("inverse needs y >= 0, got {y}"));
        }
        if !self.is_invertible() {
            return Err(unsupported(self, "inverse"));
        }
        Ok(self.inverse_value(y))
    }

    pub(crate) fn inverse_value(&self, y: f64) -> f64 {
        match self {
            Self::Power(p) => y.powf(1.0 / p),
            Self::ScaledPower(p) => (p * y).powf(1.0 / p),
            Self::Linear => y,
            Self::IndicatorBand => f64::NAN,
            Self::PiecewiseLinear(f) => f.inverse(y),
            Self::ScaledBy { factor, inner } => inner.inverse_value(y / factor),
            Self::Interpolated { base, s } => {
                if y == 0.0 {
                    0.0
                } else {
                    base.inverse_value(y).powf(1.0 - s) * y.powf(s / 2.0)
                }
            }
        }
    }

    /// The complementary function `Φ*(s) = sup_t (st − Φ(t))`.
    pub fn conjugate(&self) -> YoungFunction {
        match self {
            Self::Power(p) => scaled_power_conjugate(1.0, *p),
            Self::ScaledPower(p) => Self::ScaledPower(p / (p - 1.0)),
            Self::Linear => Self::IndicatorBand,
            Self::IndicatorBand => Self::Linear,
            Self::PiecewiseLinear(f) => Self::from_pwl(f.conjugate()),
            Self::Interpolated { .. } => Self::PiecewiseLinear(self.grid_interpolant().conjugate()),
            Self::ScaledBy { factor, inner } => scaled_conjugate(*factor, inner, self),
        }
    }

    /// Catalog form of a piecewise-linear function, recognizing the two
    /// named piecewise-linear members.
    fn from_pwl(f: PiecewiseLinear) -> YoungFunction {
        if f.breakpoints() == [0.0] && f.slopes() == [1.0] {
            Self::Linear
        } else if f.breakpoints() == [0.0, 1.0] && f.slopes() == [0.0, f64::INFINITY] {
            Self::IndicatorBand
        } else {
            Self::PiecewiseLinear(f)
        }
    }

    fn as_pwl(&self) -> Option<PiecewiseLinear> {
        match self {
            Self::Linear => Some(PiecewiseLinear::new(vec![0.0], vec![1.0]).unwrap()),
            Self::IndicatorBand => {
                Some(PiecewiseLinear::new(vec![0.0, 1.0], vec![0.0, f64::INFINITY]).unwrap())
            }
            Self::PiecewiseLinear(f) => Some(f.clone()),
            _ => None,
        }
    }

    /// Secant interpolant on the refined conjugation grid.
    fn grid_interpolant(&self) -> PiecewiseLinear {
        let nodes = conjugation_grid();
        let values: Vec<f64> = nodes.iter().map(|&t| self.value(t)).collect();
        PiecewiseLinear::interpolant(&nodes, &values)
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        domain(format!("power exponent must satisfy 1 < p < inf, got {p}"))
    }
}

fn check_interpolation_parameter(s: f64) -> Result<()> {
    if s > 0.0 && s <= 1.0 {
        Ok(())
    } else {
        domain(format!("interpolation parameter must lie in (0, 1], got {s}"))
    }
}

pub(crate) fn unsupported(phi: &YoungFunction, operation: &'static str) -> Error {
    Error::UnsupportedVariant {
        variant: phi.to_string(),
        operation,
    }
}

/// `(c · t^q)* = c(q−1)(cq)^{−q'} s^{q'}` with `1/q + 1/q' = 1`.
fn scaled_power_conjugate(c: f64, q: f64) -> YoungFunction {
    let q_dual = q / (q - 1.0);
    let factor = c * (q - 1.0) * (c * q).powf(-q_dual);
    if (factor - 1.0).abs() <= UNIT_FACTOR_TOL {
        YoungFunction::Power(q_dual)
    } else {
        YoungFunction::ScaledBy {
            factor,
            inner: Box::new(YoungFunction::Power(q_dual)),
        }
    }
}

fn scaled_conjugate(c: f64, inner: &YoungFunction, whole: &YoungFunction) -> YoungFunction {
    match inner {
        YoungFunction::Power(q) => scaled_power_conjugate(c, *q),
        YoungFunction::ScaledPower(q) => scaled_power_conjugate(c / q, *q),
        YoungFunction::ScaledBy { factor, inner } => scaled_conjugate(c * factor, inner, whole),
        YoungFunction::Interpolated { .. } => {
            YoungFunction::PiecewiseLinear(whole.grid_interpolant().conjugate())
        }
        other => {
            let f = other.as_pwl().expect("remaining variants are piecewise linear");
            YoungFunction::from_pwl(f.scaled(c).conjugate())
        }
    }
}

/// Diagnostic grid refined eightfold, so every diagnostic point is a node.
pub(crate) fn conjugation_grid() -> Vec<f64> {
    let base = log_grid(1e-6, 1e6, DIAGNOSTIC_GRID_POINTS);
    let refine = 8;
    let mut nodes = Vec::with_capacity((base.len() - 1) * refine + 1);
    for w in base.windows(2) {
        let ratio = w[1] / w[0];
        nodes.push(w[0]);
        for j in 1..refine {
            nodes.push(w[0] * ratio.powf(j as f64 / refine as f64));
        }
    }
    nodes.push(*base.last().unwrap());
    nodes
}

fn interpolated_value(base: &YoungFunction, s: f64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    if t.is_infinite() {
        return f64::INFINITY;
    }
    let target = t.ln();
    let h = |y: f64| {
        let x = base.inverse_value(y);
        (1.0 - s) * x.ln() + 0.5 * s * y.ln() - target
    };
    match log_bracket(h) {
        Ok(br) => (br.lo * br.hi).sqrt(),
        Err(_) => f64::NAN,
    }
}

/// Rao–Ren interpolation `Φ_(s)` between `Φ` and the quadratic.
pub fn interpolate(phi: &YoungFunction, s: f64) -> Result<YoungFunction> {
    check_interpolation_parameter(s)?;
    phi.validate()?;
    if !phi.is_invertible() {
        return Err(unsupported(phi, "interpolation"));
    }
    Ok(YoungFunction::Interpolated {
        base: Box::new(phi.clone()),
        s,
    })
}

/// Exponent of `interpolate(Power(p), s)`: `1 / ((1−s)/p + s/2)`.
pub fn interpolated_exponent(p: f64, s: f64) -> f64 {
    1.0 / ((1.0 - s) / p + s / 2.0)
}

/// Displacement-to-norm ratio `2Φ⁻¹(2)/Φ⁻¹(1/ε)` of the Connes–Weiss
/// vectors when `μ(gE △ E) = ε`.
pub fn almost_invariance_bound(phi: &YoungFunction, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 1.0) {
        return domain(format!("symmetric-difference measure must lie in (0, 1], got {eps}"));
    }
    Ok(2.0 * phi.inverse(2.0)? / phi.inverse(1.0 / eps)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rtol: f64) -> bool {
        (a - b).abs() <= rtol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(YoungFunction::Power(2.0).eval(3.0).unwrap(), 9.0);
        assert_eq!(YoungFunction::ScaledPower(4.0).eval(1.0).unwrap(), 0.25);
        assert_eq!(YoungFunction::IndicatorBand.eval(0.5).unwrap(), 0.0);
        assert_eq!(YoungFunction::IndicatorBand.eval(2.0).unwrap(), f64::INFINITY);
        assert!(matches!(YoungFunction::Linear.eval(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(YoungFunction::Power(2.0).inverse(4.0).unwrap(), 2.0);
        assert_eq!(YoungFunction::Power(2.0).inverse(0.0).unwrap(), 0.0);
        // t^3/3 = 9  =>  t = 27^(1/3) = 3
        let t = YoungFunction::ScaledPower(3.0).inverse(9.0).unwrap();
        assert!(close(t, 3.0, 1e-12));
        assert!(matches!(
            YoungFunction::IndicatorBand.inverse(1.0),
            Err(Error::UnsupportedVariant { .. })
        ));
    }

    #[test]
    fn inverse_meets_tolerance_contract() {
        let fs = [
            YoungFunction::Power(6.0),
            YoungFunction::ScaledPower(1.5),
            YoungFunction::scaled_by(3.0, YoungFunction::Power(2.5)).unwrap(),
            interpolate(&YoungFunction::Power(6.0), 0.3).unwrap(),
        ];
        for f in &fs {
            for y in [1e-9, 0.3, 1.0, 42.0, 1e7] {
                let t = f.inverse(y).unwrap();
                let back = f.eval(t).unwrap();
                assert!((back - y).abs() <= 1e-12 * y.max(1.0), "{f}: {y} -> {back}");
            }
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(YoungFunction::ScaledPower(2.0).conjugate(), YoungFunction::ScaledPower(2.0));
        assert_eq!(YoungFunction::ScaledPower(3.0).conjugate(), YoungFunction::ScaledPower(1.5));
        assert_eq!(YoungFunction::Linear.conjugate(), YoungFunction::IndicatorBand);
        assert_eq!(YoungFunction::IndicatorBand.conjugate(), YoungFunction::Linear);
    }

    #[test]
    fn power_conjugate_closed_form() {
        // (t^p)* = (p-1)(s/p)^{p/(p-1)}
        for p in [1.5, 2.0, 3.0, 4.0] {
            let conj = YoungFunction::Power(p).conjugate();
            let q = p / (p - 1.0);
            for s in [0.1, 1.0, 2.5, 10.0] {
                let expected = (p - 1.0) * (s / p).powf(q);
                assert!(close(conj.eval(s).unwrap(), expected, 1e-13));
            }
        }
    }

    #[test]
    fn power_biconjugate_collapses() {
        let back = YoungFunction::Power(3.0).conjugate().conjugate();
        assert_eq!(back, YoungFunction::Power(3.0));
    }

    #[test]
    fn scaled_linear_conjugate_is_band_indicator() {
        let f = YoungFunction::scaled_by(2.0, YoungFunction::Linear).unwrap();
        let g = f.conjugate();
        assert_eq!(g.eval(2.0).unwrap(), 0.0);
        assert_eq!(g.eval(2.5).unwrap(), f64::INFINITY);
    }

    #[test]
    fn interpolated_power_has_closed_form() {
        let f = interpolate(&YoungFunction::Power(6.0), 0.5).unwrap();
        assert_eq!(interpolated_exponent(6.0, 0.5), 3.0);
        assert!(close(f.eval(2.0).unwrap(), 8.0, 1e-12));
        let sq = interpolate(&YoungFunction::Power(2.0), 1.0).unwrap();
        for t in [0.01, 0.7, 3.0, 100.0] {
            assert!(close(sq.eval(t).unwrap(), t * t, 1e-12));
        }
        assert!(matches!(
            interpolate(&YoungFunction::Power(2.0), 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            interpolate(&YoungFunction::Power(2.0), 1.5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn interpolated_slope_matches_power_rule() {
        let f = interpolate(&YoungFunction::Power(6.0), 0.5).unwrap();
        for t in [0.2, 1.0, 4.0] {
            assert!(close(f.derivative(t).unwrap(), 3.0 * t * t, 1e-9));
        }
    }

    #[test]
    fn almost_invariance_examples() {
        let b = almost_invariance_bound(&YoungFunction::Power(2.0), 0.5).unwrap();
        assert!(close(b, 2.0, 1e-14));
        let b = almost_invariance_bound(&YoungFunction::ScaledPower(2.0), 0.5).unwrap();
        assert!(close(b, 2.0, 1e-14));
        let mut prev = f64::INFINITY;
        for k in 1..30 {
            let eps = 0.5f64.powi(k);
            let b = almost_invariance_bound(&YoungFunction::Power(2.0), eps).unwrap();
            assert!(b < prev);
            prev = b;
        }
        assert!(prev < 1e-3);
        assert!(almost_invariance_bound(&YoungFunction::Power(2.0), 0.0).is_err());
    }

    #[test]
    fn n_function_flags() {
        assert!(YoungFunction::Power(1.2).is_n_function());
        assert!(!YoungFunction::Linear.is_n_function());
        assert!(!YoungFunction::IndicatorBand.is_n_function());
        assert!(YoungFunction::Power(2.0).conjugate().is_n_function());
    }
}
