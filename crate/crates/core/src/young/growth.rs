use serde::{Deserialize, Serialize};

use super::YoungFunction;
use crate::error::{Error, Result};
use crate::solve::log_grid;

/// Points on every diagnostic grid.
pub const DIAGNOSTIC_GRID_POINTS: usize = 512;
const DECADES: f64 = 1e6;
/// Candidate `c` for the ∇2 search: powers of two in `(1, 64]`.
const NABLA2_CANDIDATES: [f64; 6] = [2.0, 4.0, 8.0, 16.0, 32.0, 64.0];
/// Relative slack the ∇2 inequality must clear at every grid point.
const NABLA2_MARGIN: f64 = 1e-9;
const EVIDENCE_STRIDE: usize = 51;
const MAX_ADJUST_ROUNDS: usize = 10;

/// Which end of the axis a growth condition is checked on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `Ω = [0, 1]`: large arguments, `t >= t₀`.
    Function,
    /// `Ω = ℕ`: small arguments, `t <= t₀`.
    Sequence,
}

impl Regime {
    pub fn grid(self, t0: f64) -> Vec<f64> {
        match self {
            Regime::Function => log_grid(t0, DECADES * t0, DIAGNOSTIC_GRID_POINTS),
            Regime::Sequence => log_grid(t0 / DECADES, t0, DIAGNOSTIC_GRID_POINTS),
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "function" => Ok(Regime::Function),
            "sequence" => Ok(Regime::Sequence),
            other => Err(Error::Parse(format!(
                "unknown regime `{other}` (expected `function` or `sequence`)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub passes: bool,
    /// `K` for Δ2, `c` for ∇2; infinite when the check fails.
    pub constant: f64,
    pub threshold: f64,
    pub regime: Regime,
    /// Thinned `(t, ratio)` samples from the grid.
    pub evidence: Vec<(f64, f64)>,
}

fn thin(samples: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let last = samples.len().saturating_sub(1);
    samples
        .into_iter()
        .enumerate()
        .filter(|(i, _)| i % EVIDENCE_STRIDE == 0 || *i == last)
        .map(|(_, s)| s)
        .collect()
}

fn values_on(phi: &YoungFunction, grid: &[f64]) -> Result<Vec<f64>> {
    let values: Vec<f64> = grid.iter().map(|&t| phi.value(t)).collect();
    if values.iter().all(|&v| v == 0.0) {
        return Err(Error::Degenerate(format!(
            "{phi} vanishes on the whole diagnostic grid"
        )));
    }
    Ok(values)
}

pub fn check_delta2(phi: &YoungFunction, regime: Regime) -> Result<GrowthReport> {
    check_delta2_at(phi, regime, 1.0)
}

/// Sup of `Φ(2t)/Φ(t)` over the regime grid anchored at `t0`.
pub fn check_delta2_at(phi: &YoungFunction, regime: Regime, t0: f64) -> Result<GrowthReport> {
    let grid = regime.grid(t0);
    let values = values_on(phi, &grid)?;
    let mut sup: f64 = 0.0;
    let mut evidence = Vec::with_capacity(grid.len());
    for (&t, &v) in grid.iter().zip(&values) {
        let w = phi.value(2.0 * t);
        let ratio = if v == 0.0 && w == 0.0 {
            1.0
        } else if v.is_infinite() || v == 0.0 {
            f64::INFINITY
        } else {
            w / v
        };
        sup = sup.max(ratio);
        evidence.push((t, ratio));
    }
    Ok(GrowthReport {
        passes: sup.is_finite(),
        constant: sup,
        threshold: t0,
        regime,
        evidence: thin(evidence),
    })
}

pub fn check_nabla2(phi: &YoungFunction, regime: Regime) -> Result<GrowthReport> {
    check_nabla2_at(phi, regime, 1.0)
}

/// Smallest power of two `c ∈ (1, 64]` with `2cΦ(t) ≤ Φ(ct)` on the grid.
pub fn check_nabla2_at(phi: &YoungFunction, regime: Regime, t0: f64) -> Result<GrowthReport> {
    let grid = regime.grid(t0);
    let values = values_on(phi, &grid)?;
    let holds = |c: f64| {
        grid.iter()
            .zip(&values)
            .all(|(&t, &v)| 2.0 * c * v * (1.0 + NABLA2_MARGIN) <= phi.value(c * t))
    };
    let found = NABLA2_CANDIDATES.iter().copied().find(|&c| holds(c));
    let c_shown = found.unwrap_or(*NABLA2_CANDIDATES.last().unwrap());
    let evidence = grid
        .iter()
        .zip(&values)
        .map(|(&t, &v)| (t, phi.value(c_shown * t) / v))
        .collect();
    Ok(GrowthReport {
        passes: found.is_some(),
        constant: found.unwrap_or(f64::INFINITY),
        threshold: t0,
        regime,
        evidence: thin(evidence),
    })
}

/// Grid estimate of the class `K(α, β)` exponents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KClassIndices {
    pub alpha: f64,
    pub beta: f64,
}

/// Min and max log-slope of `Φ` over adjacent points of the standard grid,
/// widened until both monotonicity checks pass.
pub fn k_class_indices(phi: &YoungFunction) -> Result<KClassIndices> {
    let grid = log_grid(1.0 / DECADES, DECADES, DIAGNOSTIC_GRID_POINTS);
    let logs: Vec<(f64, f64)> = grid
        .iter()
        .map(|&t| (t.ln(), phi.value(t).ln()))
        .collect();
    if logs.iter().any(|(_, lv)| !lv.is_finite()) {
        return Err(Error::NotInClass(format!(
            "{phi} is not finite and positive on the diagnostic grid"
        )));
    }
    let slopes: Vec<f64> = logs
        .windows(2)
        .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
        .collect();
    let mut alpha = slopes.iter().copied().fold(f64::INFINITY, f64::min);
    let mut beta = slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    // log(Φ(t)/t^e) must be non-decreasing for e = α and non-increasing for e = β.
    let worst = |e: f64, sign: f64| -> f64 {
        logs.windows(2)
            .map(|w| sign * ((w[0].1 - e * w[0].0) - (w[1].1 - e * w[1].0)))
            .fold(0.0, f64::max)
    };
    for _ in 0..MAX_ADJUST_ROUNDS {
        let down = worst(alpha, 1.0);
        let up = worst(beta, -1.0);
        if down == 0.0 && up == 0.0 {
            if !(alpha > 0.0) {
                return Err(Error::NotInClass(format!(
                    "{phi} has non-positive lower index {alpha}"
                )));
            }
            return Ok(KClassIndices { alpha, beta });
        }
        // A violation `d` on a step of log-width `h` needs the exponent moved by `d/h`.
        let h = (grid[1] / grid[0]).ln();
        let bump = |d: f64, e: f64| (d / h).max(e.abs() * f64::EPSILON);
        if down > 0.0 {
            alpha -= bump(down, alpha);
        }
        if up > 0.0 {
            beta += bump(up, beta);
        }
    }
    Err(Error::NotInClass(format!(
        "monotonicity of {phi} unverifiable within {MAX_ADJUST_ROUNDS} rounds"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::young::interpolate;

    #[test]
    fn delta2_examples() {
        let r = check_delta2(&YoungFunction::Power(3.0), Regime::Function).unwrap();
        assert!(r.passes);
        assert!((r.constant - 8.0).abs() < 1e-12);
        let r = check_delta2(&YoungFunction::IndicatorBand, Regime::Function).unwrap();
        assert!(!r.passes);
        let r = check_delta2(&YoungFunction::Linear, Regime::Sequence).unwrap();
        assert!(r.passes);
        assert_eq!(r.constant, 2.0);
    }

    #[test]
    fn nabla2_examples() {
        let r = check_nabla2(&YoungFunction::Power(2.0), Regime::Function).unwrap();
        assert!(r.passes);
        assert_eq!(r.constant, 4.0);
        assert!(!check_nabla2(&YoungFunction::Linear, Regime::Function).unwrap().passes);
        assert!(check_nabla2(&YoungFunction::Power(1.5), Regime::Function).unwrap().passes);
    }

    #[test]
    fn flat_function_is_degenerate() {
        let f = YoungFunction::pwl(vec![1.0], vec![1.0]).unwrap();
        assert!(matches!(
            check_delta2(&f, Regime::Sequence),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn report_serializes_with_named_regime() {
        let r = check_delta2(&YoungFunction::Power(2.0), Regime::Sequence).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["regime"], "sequence");
        assert_eq!(json["passes"], true);
        assert!(json["evidence"].as_array().unwrap().len() > 2);
    }

    #[test]
    fn k_class_examples() {
        let k = k_class_indices(&YoungFunction::Power(4.0)).unwrap();
        assert!((k.alpha - 4.0).abs() < 1e-9 && (k.beta - 4.0).abs() < 1e-9);
        let k = k_class_indices(&YoungFunction::ScaledPower(2.0)).unwrap();
        assert!((k.alpha - 2.0).abs() < 1e-9 && (k.beta - 2.0).abs() < 1e-9);
        let f = interpolate(&YoungFunction::Power(6.0), 1.0).unwrap();
        let k = k_class_indices(&f).unwrap();
        assert!((k.alpha - 2.0).abs() < 1e-9 && (k.beta - 2.0).abs() < 1e-9);
        assert!(k_class_indices(&YoungFunction::IndicatorBand).is_err());
    }
}
