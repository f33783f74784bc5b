use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::space::gauge_norm_of_masses;
use crate::young::{interpolate, YoungFunction};

/// Independent RNG streams per sampling chunk, so results do not depend on
/// the thread count.
const CHUNKS: usize = 32;
/// Best sampled candidates handed to local refinement.
const REFINE_CANDIDATES: usize = 4;

/// Gauge norm of a real vector.
pub fn norm(phi: &YoungFunction, x: &[f64]) -> f64 {
    let masses: Vec<(f64, f64)> = x.iter().map(|v| (1.0, v.abs())).collect();
    gauge_norm_of_masses(phi, &masses)
}

fn scaled(x: &[f64], c: f64) -> Vec<f64> {
    x.iter().map(|v| v * c).collect()
}

fn lin(a: f64, x: &[f64], b: f64, y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

fn normalize(phi: &YoungFunction, x: &[f64]) -> Option<Vec<f64>> {
    let n = norm(phi, x);
    if n > 0.0 && n.is_finite() {
        Some(scaled(x, 1.0 / n))
    } else {
        None
    }
}

/// `δ_{L^p}(ε) = 1 − (1 − (ε/2)^p)^{1/p}`.
pub fn lp_modulus(p: f64, eps: f64) -> Result<f64> {
    if !(p >= 2.0 && p.is_finite()) {
        return domain(format!("Clarkson's formula needs p >= 2, got {p}"));
    }
    if !(eps > 0.0 && eps <= 2.0) {
        return domain(format!("eps must lie in (0, 2], got {eps}"));
    }
    Ok(1.0 - (1.0 - (eps / 2.0).powf(p)).powf(1.0 / p))
}

/// The pair `u = (s, t)`, `v = (s, −t)` with `t = ε/2`, `s = (1 − t^p)^{1/p}`
/// on the unit sphere of `ℓ^p_2`.
pub fn extremal_pair(p: f64, eps: f64) -> (Vec<f64>, Vec<f64>) {
    let t = eps / 2.0;
    let s = (1.0 - t.powf(p)).max(0.0).powf(1.0 / p);
    (vec![s, t], vec![s, -t])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModulusEstimate {
    /// `ε` for convexity, `τ` for smoothness.
    pub epsilon: f64,
    pub value: f64,
    pub witness: (Vec<f64>, Vec<f64>),
    pub samples: usize,
}

fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64 + 1);
    rng
}

fn random_direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

fn check_dims(dim: usize, samples: usize) -> Result<()> {
    if dim < 2 {
        return domain("moduli are estimated in dimension >= 2");
    }
    if samples == 0 {
        return domain("sample budget must be positive");
    }
    Ok(())
}

/// Runs `draw` over `samples` seeds split into fixed chunks, keeping the
/// `REFINE_CANDIDATES` lowest scores. Ties resolve by chunk order.
fn best_of<T, F>(samples: usize, seed: u64, draw: F) -> Vec<(f64, T)>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> Option<(f64, T)> + Sync,
{
    let per = samples.div_ceil(CHUNKS);
    let parts: Vec<Vec<(f64, T)>> = (0..CHUNKS)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let n = per.min(samples.saturating_sub(c * per));
            let mut best: Vec<(f64, T)> = Vec::new();
            for _ in 0..n {
                if let Some((score, item)) = draw(&mut rng) {
                    keep_best(&mut best, score, item);
                }
            }
            best
        })
        .collect();
    let mut best = Vec::new();
    for part in parts {
        for (score, item) in part {
            keep_best(&mut best, score, item);
        }
    }
    best
}

fn keep_best<T>(best: &mut Vec<(f64, T)>, score: f64, item: T) {
    if !score.is_finite() {
        return;
    }
    let pos = best.partition_point(|(s, _)| *s <= score);
    if pos < REFINE_CANDIDATES {
        best.insert(pos, (score, item));
        best.truncate(REFINE_CANDIDATES);
    }
}

/// Point `v` on the unit sphere along the arc from `u` towards `-u` through
/// `w`, with `‖u − v‖ >= ε` and the gap as small as the root finder gets it.
fn sphere_crossing(phi: &YoungFunction, u: &[f64], w: &[f64], eps: f64) -> Option<Vec<f64>> {
    if eps >= 2.0 {
        return Some(scaled(u, -1.0));
    }
    let v_at = |theta: f64| normalize(phi, &lin(theta.cos(), u, theta.sin(), w));
    let gap = |v: &[f64]| norm(phi, &lin(1.0, u, -1.0, v)) - eps;
    // Illinois iteration on the arc angle; `hi` always stays feasible.
    let (mut lo, mut hi) = (0.0f64, std::f64::consts::PI);
    let (mut g_lo, mut g_hi) = (-eps, 2.0 - eps);
    let mut v_hi = scaled(u, -1.0);
    let mut gap_hi = g_hi;
    let mut side = 0i8;
    for _ in 0..200 {
        if hi - lo <= 1e-14 || gap_hi <= 1e-15 {
            break;
        }
        let mut theta = hi - g_hi * (hi - lo) / (g_hi - g_lo);
        if !(theta > lo && theta < hi) {
            theta = 0.5 * (lo + hi);
        }
        let v = v_at(theta)?;
        let g = gap(&v);
        if g >= 0.0 {
            hi = theta;
            g_hi = g;
            gap_hi = g;
            v_hi = v;
            if side == 1 {
                g_lo *= 0.5;
            }
            side = 1;
        } else {
            lo = theta;
            g_lo = g;
            if side == -1 {
                g_hi *= 0.5;
            }
            side = -1;
        }
    }
    Some(v_hi)
}

fn midpoint_depth(phi: &YoungFunction, u: &[f64], v: &[f64]) -> f64 {
    1.0 - norm(phi, &lin(0.5, u, 0.5, v))
}

/// Evaluation budget of one local refinement.
const DESCENT_BUDGET: usize = 4000;
/// Improvements smaller than this are treated as evaluation noise.
const DESCENT_NOISE: f64 = 1e-15;

/// Coordinate descent on the concatenated raw parameters, halving the step
/// whenever a full sweep makes no progress. `tidy` rescales accepted points,
/// which keeps scale-invariant objectives from drifting.
fn coordinate_descent<F, T>(x0: Vec<f64>, f: F, tidy: T, step0: f64, min_step: f64) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> Option<f64>,
    T: Fn(&mut Vec<f64>),
{
    let mut x = x0;
    tidy(&mut x);
    let mut fx = f(&x).unwrap_or(f64::INFINITY);
    let mut step = step0;
    let mut evals = 1;
    while step > min_step && evals < DESCENT_BUDGET {
        let mut improved = false;
        for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                let mut y = x.clone();
                y[i] += dir * step;
                tidy(&mut y);
                evals += 1;
                if let Some(fy) = f(&y) {
                    if fy < fx - DESCENT_NOISE {
                        x = y;
                        fx = fy;
                        improved = true;
                        break;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, fx)
}

/// Rescales each half of a parameter vector to unit Euclidean length.
fn unit_halves(dim: usize) -> impl Fn(&mut Vec<f64>) {
    move |x: &mut Vec<f64>| {
        for part in [0..dim, dim..2 * dim] {
            let n: f64 = x[part.clone()].iter().map(|v| v * v).sum::<f64>().sqrt();
            if n > 0.0 {
                x[part].iter_mut().for_each(|v| *v /= n);
            }
        }
    }
}

/// Upper estimate of `δ(ε) = inf{1 − ‖(u+v)/2‖ : ‖u‖ = ‖v‖ = 1, ‖u − v‖ >= ε}`
/// on the `dim`-dimensional real space.
pub fn convexity_modulus_estimate(
    phi: &YoungFunction,
    dim: usize,
    eps: f64,
    samples: usize,
    seed: u64,
) -> Result<ModulusEstimate> {
    check_dims(dim, samples)?;
    if !(eps > 0.0 && eps <= 2.0) {
        return domain(format!("eps must lie in (0, 2], got {eps}"));
    }
    // Rejection sampling of independent points on the sphere.
    let best = best_of(samples, seed, |rng| {
        let u = normalize(phi, &random_direction(rng, dim))?;
        let v = normalize(phi, &random_direction(rng, dim))?;
        if norm(phi, &lin(1.0, &u, -1.0, &v)) < eps {
            return None;
        }
        Some((midpoint_depth(phi, &u, &v), (u, v)))
    });
    // The arc construction always yields feasible pairs, so seed refinement
    // from it as well; this keeps tight constraints (eps near 2) searchable.
    let mut result: Option<ModulusEstimate> = best.first().map(|(value, (u, v))| ModulusEstimate {
        epsilon: eps,
        value: *value,
        witness: (u.clone(), v.clone()),
        samples,
    });
    let mut starts: Vec<(Vec<f64>, Vec<f64>)> = best.into_iter().map(|(_, p)| p).collect();
    let mut rng = chunk_rng(seed, CHUNKS);
    for _ in 0..REFINE_CANDIDATES {
        starts.push((random_direction(&mut rng, dim), random_direction(&mut rng, dim)));
    }

    let objective = |x: &[f64]| -> Option<f64> {
        let u = normalize(phi, &x[..dim])?;
        let v = sphere_crossing(phi, &u, &x[dim..], eps)?;
        Some(midpoint_depth(phi, &u, &v))
    };
    for (u0, w0) in starts {
        let x0: Vec<f64> = u0.iter().chain(&w0).copied().collect();
        let (x, _) = coordinate_descent(x0, objective, unit_halves(dim), 0.25, 1e-9);
        let Some(u) = normalize(phi, &x[..dim]) else { continue };
        let Some(v) = sphere_crossing(phi, &u, &x[dim..], eps) else { continue };
        let value = midpoint_depth(phi, &u, &v);
        if result.as_ref().map_or(true, |r| value < r.value) {
            result = Some(ModulusEstimate {
                epsilon: eps,
                value,
                witness: (u, v),
                samples,
            });
        }
    }
    result.ok_or_else(|| Error::SearchExhausted(format!("no feasible pair found for eps = {eps}")))
}

/// Smallest midpoint depth over `samples` random feasible pairs, without
/// refinement. A draw closer than `eps` is pushed out along the arc from
/// `u` through `v` until it is feasible.
pub fn sampled_convexity_floor(
    phi: &YoungFunction,
    dim: usize,
    eps: f64,
    samples: usize,
    seed: u64,
) -> Result<ModulusEstimate> {
    check_dims(dim, samples)?;
    if !(eps > 0.0 && eps <= 2.0) {
        return domain(format!("eps must lie in (0, 2], got {eps}"));
    }
    let best = best_of(samples, seed, |rng| {
        let u = normalize(phi, &random_direction(rng, dim))?;
        let mut v = normalize(phi, &random_direction(rng, dim))?;
        if norm(phi, &lin(1.0, &u, -1.0, &v)) < eps {
            v = sphere_crossing(phi, &u, &v, eps)?;
        }
        Some((midpoint_depth(phi, &u, &v), (u, v)))
    });
    best.into_iter()
        .next()
        .map(|(value, witness)| ModulusEstimate {
            epsilon: eps,
            value,
            witness,
            samples,
        })
        .ok_or_else(|| Error::SearchExhausted(format!("no feasible pair drawn for eps = {eps}")))
}

/// Convexity estimates on an `eps` grid, made monotone by reusing witnesses:
/// a pair feasible for a larger `eps` is feasible for every smaller one.
pub fn convexity_curve(
    phi: &YoungFunction,
    dim: usize,
    eps_grid: &[f64],
    samples: usize,
    seed: u64,
) -> Result<Vec<ModulusEstimate>> {
    let mut out = eps_grid
        .iter()
        .map(|&e| convexity_modulus_estimate(phi, dim, e, samples, seed))
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..out.len()).collect();
    order.sort_by(|&a, &b| eps_grid[b].total_cmp(&eps_grid[a]));
    for k in 1..order.len() {
        let (larger, smaller) = (order[k - 1], order[k]);
        if out[larger].value < out[smaller].value {
            out[smaller] = ModulusEstimate {
                epsilon: eps_grid[smaller],
                ..out[larger].clone()
            };
        }
    }
    Ok(out)
}

/// Which extremum the smoothness modulus takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Sup,
    Inf,
}

fn smoothness_value(phi: &YoungFunction, u: &[f64], v: &[f64]) -> f64 {
    0.5 * (norm(phi, &lin(1.0, u, 1.0, v)) + norm(phi, &lin(1.0, u, -1.0, v))) - 1.0
}

/// `ρ(τ)`: extremum of `(‖u+v‖ + ‖u−v‖)/2 − 1` over `‖u‖ = 1`, `‖v‖ = τ`.
pub fn smoothness_modulus_estimate(
    phi: &YoungFunction,
    dim: usize,
    tau: f64,
    samples: usize,
    seed: u64,
    extremum: Extremum,
) -> Result<ModulusEstimate> {
    check_dims(dim, samples)?;
    if !(tau > 0.0 && tau.is_finite()) {
        return domain(format!("tau must be positive, got {tau}"));
    }
    let sgn = match extremum {
        Extremum::Sup => -1.0,
        Extremum::Inf => 1.0,
    };
    let place = |x: &[f64]| -> Option<(Vec<f64>, Vec<f64>)> {
        let u = normalize(phi, &x[..dim])?;
        let v = scaled(&normalize(phi, &x[dim..])?, tau);
        Some((u, v))
    };
    let best = best_of(samples, seed, |rng| {
        let x = random_direction(rng, 2 * dim);
        let (u, v) = place(&x)?;
        Some((sgn * smoothness_value(phi, &u, &v), x))
    });
    let objective = |x: &[f64]| place(x).map(|(u, v)| sgn * smoothness_value(phi, &u, &v));
    let mut result: Option<ModulusEstimate> = None;
    for (_, x0) in best {
        let (x, _) = coordinate_descent(x0, objective, unit_halves(dim), 0.25, 1e-9);
        let Some((u, v)) = place(&x) else { continue };
        let value = smoothness_value(phi, &u, &v);
        if result.as_ref().map_or(true, |r| sgn * value < sgn * r.value) {
            result = Some(ModulusEstimate {
                epsilon: tau,
                value,
                witness: (u, v),
                samples,
            });
        }
    }
    result.ok_or_else(|| Error::SearchExhausted(format!("no admissible pair found for tau = {tau}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RaoRenRecord {
    pub estimate: f64,
    pub bound: f64,
    pub ok: bool,
}

/// Sampled modulus of `ℓ^{Φ_(s)}_dim` against `δ_{L^{2/s}}(ε)`.
pub fn rao_ren_check(
    base: &YoungFunction,
    s: f64,
    eps: f64,
    dim: usize,
    samples: usize,
    seed: u64,
) -> Result<RaoRenRecord> {
    let phi = interpolate(base, s)?;
    let estimate = convexity_modulus_estimate(&phi, dim, eps, samples, seed)?.value;
    let bound = lp_modulus(2.0 / s, eps)?;
    Ok(RaoRenRecord {
        estimate,
        bound,
        ok: estimate >= bound - 1e-6,
    })
}

/// Re-evaluates a convexity witness: feasibility and recorded value.
pub fn convexity_witness_error(phi: &YoungFunction, est: &ModulusEstimate) -> f64 {
    let (u, v) = &est.witness;
    let on_sphere = (norm(phi, u) - 1.0).abs().max((norm(phi, v) - 1.0).abs());
    let infeasible = (est.epsilon - norm(phi, &lin(1.0, u, -1.0, v))).max(0.0);
    let value = (midpoint_depth(phi, u, v) - est.value).abs();
    on_sphere.max(infeasible).max(value)
}
