use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::modulus::norm;
use crate::error::{domain, Error, Result};
use crate::young::YoungFunction;

/// `x ↦ Ax + t` on `ℝ^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    pub linear: Vec<Vec<f64>>,
    pub translation: Vec<f64>,
}

impl AffineMap {
    pub fn identity(dim: usize) -> Self {
        let linear = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self {
            linear,
            translation: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply_linear(&self, x: &[f64]) -> Vec<f64> {
        self.linear
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.apply_linear(x)
            .iter()
            .zip(&self.translation)
            .map(|(a, t)| a + t)
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let n = self.dim();
        let linear = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.linear[i][k] * other.linear[k][j]).sum())
                    .collect()
            })
            .collect();
        AffineMap {
            linear,
            translation: self.apply(&other.translation),
        }
    }

    fn transpose_apply(&self, y: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|j| (0..n).map(|i| self.linear[i][j] * y[i]).sum())
            .collect()
    }
}

/// A finite group acting by affine maps, with its multiplication table.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineAction {
    pub elements: Vec<AffineMap>,
    /// `table[g][h]` is the index of `gh`.
    pub table: Vec<Vec<usize>>,
}

impl AffineAction {
    pub fn trivial(dim: usize) -> Self {
        Self {
            elements: vec![AffineMap::identity(dim)],
            table: vec![vec![0]],
        }
    }

    /// The cyclic group generated by `generator`, which must have order `n`.
    pub fn cyclic(generator: AffineMap, n: usize) -> Result<Self> {
        if n == 0 {
            return domain("cyclic group order must be positive");
        }
        let dim = generator.dim();
        let mut elements = vec![AffineMap::identity(dim)];
        for k in 1..n {
            elements.push(generator.compose(&elements[k - 1]));
        }
        let wrap = generator.compose(&elements[n - 1]);
        let id = AffineMap::identity(dim);
        let err = wrap
            .linear
            .iter()
            .flatten()
            .zip(id.linear.iter().flatten())
            .chain(wrap.translation.iter().zip(&id.translation))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if err > 1e-12 {
            return domain(format!("generator does not have order {n} (defect {err:e})"));
        }
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Ok(Self { elements, table })
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    /// Largest deviation from `α(g)α(h)x = α(gh)x` over random `x`.
    pub fn action_law_defect(&self, samples: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let x: Vec<f64> = (0..self.dim()).map(|_| rng.gen_range(-3.0..3.0)).collect();
            for (g, row) in self.table.iter().enumerate() {
                for (h, &gh) in row.iter().enumerate() {
                    let lhs = self.elements[g].apply(&self.elements[h].apply(&x));
                    let rhs = self.elements[gh].apply(&x);
                    for (a, b) in lhs.iter().zip(&rhs) {
                        worst = worst.max((a - b).abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest relative change of the gauge norm under a linear part.
    pub fn isometry_defect(&self, phi: &YoungFunction, samples: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let x: Vec<f64> = (0..self.dim()).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let n = norm(phi, &x);
            for g in &self.elements {
                worst = worst.max((norm(phi, &g.apply_linear(&x)) - n).abs() / n.max(1.0));
            }
        }
        worst
    }

    /// `max_g ‖α(g)x − x‖` and the maximizing element.
    pub fn displacement(&self, phi: &YoungFunction, x: &[f64]) -> (f64, usize) {
        let mut best = (0.0, 0);
        for (i, g) in self.elements.iter().enumerate() {
            let d: Vec<f64> = g.apply(x).iter().zip(x).map(|(a, b)| a - b).collect();
            let n = norm(phi, &d);
            if n > best.0 {
                best = (n, i);
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointResult {
    pub point: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    /// Best displacement so far after each iteration, starting at `x0`.
    pub halving_trace: Vec<f64>,
    pub converged: bool,
}

const STAGNATION_WINDOW: usize = 10_000;
pub const MAX_ITERATIONS: usize = 10_000;

/// Gradient of the gauge norm at `y ≠ 0`.
fn gauge_gradient(phi: &YoungFunction, y: &[f64], n: f64) -> Vec<f64> {
    let denom: f64 = y
        .iter()
        .map(|v| phi.slope(v.abs() / n) * v.abs() / n)
        .sum();
    y.iter()
        .map(|v| phi.slope(v.abs() / n) * v.signum() / denom)
        .collect()
}

/// Polyak subgradient descent on `x ↦ max_g ‖α(g)x − x‖` with target value 0.
///
/// Returns `NoConvergence` when the best residual has not reached `tol` and
/// has stopped improving for `STAGNATION_WINDOW` iterations.
pub fn fixed_point_search(
    phi: &YoungFunction,
    action: &AffineAction,
    x0: &[f64],
    tol: f64,
) -> Result<FixedPointResult> {
    run_search(phi, action, x0, tol).and_then(|r| {
        if r.converged {
            Ok(r)
        } else {
            Err(Error::NoConvergence {
                iterations: r.iterations,
                residual: r.residual,
            })
        }
    })
}

/// As [`fixed_point_search`], returning the best point even without convergence.
pub fn run_search(
    phi: &YoungFunction,
    action: &AffineAction,
    x0: &[f64],
    tol: f64,
) -> Result<FixedPointResult> {
    if x0.len() != action.dim() {
        return domain("start point has the wrong dimension");
    }
    let mut x = x0.to_vec();
    let (mut fx, mut g) = action.displacement(phi, &x);
    let mut best = (fx, x.clone());
    let mut trace = vec![fx];
    let mut since_improvement = 0;
    let mut iterations = 0;
    while best.0 > tol && iterations < MAX_ITERATIONS && since_improvement < STAGNATION_WINDOW {
        let map = &action.elements[g];
        let y: Vec<f64> = map.apply(&x).iter().zip(&x).map(|(a, b)| a - b).collect();
        let grad_y = gauge_gradient(phi, &y, fx);
        // ∇_x ‖(A − I)x + t‖ = (A − I)ᵀ ∇_y.
        let at = map.transpose_apply(&grad_y);
        let grad: Vec<f64> = at.iter().zip(&grad_y).map(|(a, b)| a - b).collect();
        let gg: f64 = grad.iter().map(|v| v * v).sum();
        if !(gg > 0.0) {
            break;
        }
        let step = fx / gg;
        for (xi, gi) in x.iter_mut().zip(&grad) {
            *xi -= step * gi;
        }
        iterations += 1;
        (fx, g) = action.displacement(phi, &x);
        if fx < best.0 {
            best = (fx, x.clone());
            since_improvement = 0;
        } else {
            since_improvement += 1;
        }
        trace.push(best.0);
    }
    Ok(FixedPointResult {
        converged: best.0 <= tol,
        point: best.1,
        residual: best.0,
        iterations,
        halving_trace: trace,
    })
}

/// A named fixed-point problem.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: &'static str,
    pub phi: YoungFunction,
    pub action: AffineAction,
    pub x0: Vec<f64>,
}

pub const SCENARIOS: [&str; 3] = ["c4-rotation", "c2-swap", "trivial"];

/// Translation of the `c4-rotation` generator.
pub const C4_TRANSLATION: [f64; 4] = [1.0, 2.0, -1.0, 0.5];
/// Offset `c` of the `c2-swap` translation `(c, −c)`.
pub const C2_OFFSET: f64 = 1.5;

/// `c4-rotation`: quarter turns in the planes `(x1, x2)` and `(x3, x4)` of
/// `ℓ²_4` followed by a translation. `c2-swap`: the coordinate swap on `ℓ⁴_2`
/// with translation `(c, −c)`. `trivial`: the one-element group on `ℓ²_2`.
pub fn scenario(name: &str) -> Result<Scenario> {
    match name {
        "c4-rotation" => {
            let linear = vec![
                vec![0.0, -1.0, 0.0, 0.0],
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0, -1.0],
                vec![0.0, 0.0, 1.0, 0.0],
            ];
            let gen = AffineMap {
                linear,
                translation: C4_TRANSLATION.to_vec(),
            };
            Ok(Scenario {
                name: "c4-rotation",
                phi: YoungFunction::Power(2.0),
                action: AffineAction::cyclic(gen, 4)?,
                x0: vec![0.0; 4],
            })
        }
        "c2-swap" => {
            let gen = AffineMap {
                linear: vec![vec![0.0, 1.0], vec![1.0, 0.0]],
                translation: vec![C2_OFFSET, -C2_OFFSET],
            };
            Ok(Scenario {
                name: "c2-swap",
                phi: YoungFunction::Power(4.0),
                action: AffineAction::cyclic(gen, 2)?,
                x0: vec![0.0; 2],
            })
        }
        "trivial" => Ok(Scenario {
            name: "trivial",
            phi: YoungFunction::Power(2.0),
            action: AffineAction::trivial(2),
            x0: vec![0.3, -0.7],
        }),
        other => Err(Error::Parse(format!(
            "unknown scenario `{other}` (expected one of {})",
            SCENARIOS.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenarios_are_isometric_actions() {
        for name in SCENARIOS {
            let s = scenario(name).unwrap();
            assert!(s.action.action_law_defect(20, 1) < 1e-10, "{name}");
            assert!(s.action.isometry_defect(&s.phi, 20, 1) < 1e-10, "{name}");
        }
    }

    #[test]
    fn diagonal_translation_is_not_an_action() {
        let gen = AffineMap {
            linear: vec![vec![0.0, 1.0], vec![1.0, 0.0]],
            translation: vec![1.0, 1.0],
        };
        assert!(AffineAction::cyclic(gen, 2).is_err());
    }

    #[test]
    fn trivial_group_returns_start() {
        let s = scenario("trivial").unwrap();
        let r = fixed_point_search(&s.phi, &s.action, &s.x0, 1e-9).unwrap();
        assert_eq!(r.point, s.x0);
        assert_eq!((r.residual, r.iterations), (0.0, 0));
    }

    #[test]
    fn c2_swap_lands_on_fixed_line() {
        let s = scenario("c2-swap").unwrap();
        let r = fixed_point_search(&s.phi, &s.action, &s.x0, 1e-10).unwrap();
        assert!((r.point[0] - r.point[1] - C2_OFFSET).abs() < 1e-8);
        assert!(r.halving_trace.windows(2).all(|w| w[1] <= w[0]));
    }
}
