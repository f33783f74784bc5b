//! Proper affine isometric action of a free group on `ℓ^Ψ(Γ, ℓ^Φ(Γ))`.
//!
//! The Cayley graph of a free group is a tree, so geodesics are unique and
//! Mineyev's convex combination `f(b, a)` is a single Dirac mass.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::space::{gauge_norm_of_masses, nested_gauge_norm_from_inner, CocycleVector, SparseVector};
use crate::word::{Letter, Word};
use crate::young::YoungFunction;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperbolicData {
    pub rank: usize,
    pub delta: usize,
    pub radius: usize,
    pub lambda: f64,
    #[serde(rename = "L")]
    pub l: f64,
    pub v: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub p: u32,
    /// `|B(x, radius)|`.
    pub ball: f64,
}

impl HyperbolicData {
    pub fn new(phi: &YoungFunction, rank: usize, delta: usize) -> Result<Self> {
        if !(2..=26).contains(&rank) {
            return domain(format!("rank must be in 2..=26, got {rank}"));
        }
        if delta == 0 {
            return domain("delta must be a positive integer");
        }
        if !phi.is_n_function() {
            return Err(Error::Precondition(format!("{phi} is not an N-function")));
        }
        let radius = 10 * delta;
        let (l, lambda) = contraction_constants(delta);
        let v = (2 * rank + 1) as f64;
        let ball = ball_size(rank, radius);
        let y = 1.0 / ball;
        let c = 4.0 * l / (phi.inverse_value(y) * phi.conjugate().inverse_value(y));
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::Degenerate(format!("contraction constant C = {c} for {phi}")));
        }
        Ok(Self {
            rank,
            delta,
            radius,
            lambda,
            l,
            v,
            c,
            p: choose_p(lambda, v),
            ball,
        })
    }
}

/// `|B(r)| = (k(2k−1)^r − 1)/(k − 1)` in a free group of rank `k`.
pub fn ball_size(rank: usize, r: usize) -> f64 {
    let k = rank as f64;
    (k * (2.0 * k - 1.0).powi(r as i32) - 1.0) / (k - 1.0)
}

/// `(L, λ) = (2^{10δ+1}, 1/2)`.
pub fn contraction_constants(delta: usize) -> (f64, f64) {
    (2f64.powi(10 * delta as i32 + 1), 0.5)
}

/// Smallest `p ≥ 2` with `λ^p·v < 1/2`.
pub fn choose_p(lambda: f64, v: f64) -> u32 {
    assert!(lambda > 0.0 && lambda < 1.0 && v > 0.0);
    let mut p = 2;
    while lambda.powi(p as i32) * v >= 0.5 {
        p += 1;
    }
    p
}

/// Finitely supported probability measure on Γ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexCombination {
    pub weights: BTreeMap<Word, f64>,
}

impl ConvexCombination {
    pub fn dirac(w: Word) -> Self {
        Self {
            weights: BTreeMap::from([(w, 1.0)]),
        }
    }

    pub fn total(&self) -> f64 {
        self.weights.values().sum()
    }

    pub fn translate(&self, g: &Word) -> Self {
        Self {
            weights: self.weights.iter().map(|(w, &c)| (g.mul(w), c)).collect(),
        }
    }

    /// `‖self − other‖₁`.
    pub fn l1_distance(&self, other: &Self) -> f64 {
        let mut diff: BTreeMap<&Word, f64> = BTreeMap::new();
        for (w, c) in &self.weights {
            *diff.entry(w).or_default() += c;
        }
        for (w, c) in &other.weights {
            *diff.entry(w).or_default() -= c;
        }
        diff.values().map(|c| c.abs()).sum()
    }

    pub fn to_sparse(&self) -> SparseVector<Word> {
        SparseVector::from_real(self.weights.iter().map(|(w, &c)| (w.clone(), c)))
    }
}

/// The vertex `radius` steps from `b` toward `a`, or `a` itself when it is
/// closer. Always a prefix of `b` or of `a`.
fn mineyev_vertex<'a>(b: &'a [Letter], a: &'a [Letter], radius: usize) -> &'a [Letter] {
    let c = b.iter().zip(a).take_while(|(x, y)| x == y).count();
    let up = b.len() - c;
    if up + a.len() - c <= radius {
        a
    } else if radius <= up {
        &b[..b.len() - radius]
    } else {
        &a[..c + radius - up]
    }
}

pub fn mineyev_f(data: &HyperbolicData, b: &Word, a: &Word) -> ConvexCombination {
    let v = mineyev_vertex(b.letters(), a.letters(), data.radius);
    ConvexCombination::dirac(Word::reduce(v.iter().copied()))
}

/// Entry of `h = f/‖f‖_(Φ)` on a Dirac mass, i.e. `Φ⁻¹(1)` computed as a
/// gauge norm.
fn dirac_scale(phi: &YoungFunction) -> f64 {
    1.0 / gauge_norm_of_masses(phi, &[(1.0, 1.0)])
}

pub fn h_map(phi: &YoungFunction, data: &HyperbolicData, b: &Word, a: &Word) -> SparseVector<Word> {
    let f = mineyev_f(data, b, a).to_sparse();
    let n = crate::space::gauge_norm(phi, &f);
    f.scale(Complex64::new(1.0 / n, 0.0))
}

/// Smallest `D` with `Ψ(t) ≤ D·t^p` on `(0, t0]`, estimated on a log grid.
/// Fails when `Ψ(t)/t^p` still grows toward zero.
pub fn growth_constant(psi: &YoungFunction, p: u32, t0: f64) -> Result<f64> {
    let grid = crate::solve::log_grid(t0 * 1e-8, t0, 257);
    let ratios: Vec<f64> = grid.iter().map(|&t| psi.value(t) / t.powi(p as i32)).collect();
    if ratios.iter().any(|r| !r.is_finite()) || ratios[0] > ratios[1] * (1.0 + 1e-9) {
        return Err(Error::Precondition(format!(
            "{psi} is not bounded by D·t^{p} near 0"
        )));
    }
    Ok(ratios.iter().copied().fold(0.0, f64::max))
}

/// Depth-first walk over `{γ : d(γ, [e, g]) ≤ radius}` for the spine vertex
/// `g[..k]`, calling `visit(γ, depth)`.
fn walk_spine_vertex<F: FnMut(&[Letter], usize)>(rank: usize, radius: usize, g: &[Letter], k: usize, mut visit: F) {
    let letters = crate::word::alphabet(rank);
    let mut buf: Vec<Letter> = g[..k].to_vec();
    visit(&buf, 0);
    let next = g.get(k).copied();
    // One frame per depth: index of the next letter to try.
    let mut stack: Vec<usize> = vec![0];
    while !stack.is_empty() {
        let depth = stack.len();
        let i = stack.last_mut().unwrap();
        if *i == letters.len() || depth > radius {
            stack.pop();
            if !stack.is_empty() {
                buf.pop();
            }
            continue;
        }
        let x = letters[*i];
        *i += 1;
        if buf.last() == Some(&-x) || (depth == 1 && Some(x) == next) {
            continue;
        }
        buf.push(x);
        visit(&buf, depth);
        stack.push(0);
    }
}

/// `b(g) = π(g)η − η`, fully materialized.
pub fn cocycle(phi: &YoungFunction, psi: &YoungFunction, data: &HyperbolicData, g: &Word) -> Result<CocycleVector> {
    growth_constant(psi, data.p, 1.0)?;
    let scale = Complex64::new(dirac_scale(phi), 0.0);
    let gl = g.letters();
    let mut entries = BTreeMap::new();
    for k in 0..=gl.len() {
        walk_spine_vertex(data.rank, data.radius, gl, k, |gamma, _| {
            let x = mineyev_vertex(gamma, gl, data.radius);
            let y = mineyev_vertex(gamma, &[], data.radius);
            if x != y {
                let w = |s: &[Letter]| Word::reduce(s.iter().copied());
                let v = SparseVector::from_entries([(w(x), scale), (w(y), -scale)]);
                entries.insert(w(gamma), v);
            }
        });
    }
    Ok(CocycleVector::from_map(entries))
}

/// `α(g)ξ = π(g)ξ + b(g)`.
pub fn apply_action(
    phi: &YoungFunction,
    psi: &YoungFunction,
    data: &HyperbolicData,
    g: &Word,
    xi: &CocycleVector,
) -> Result<CocycleVector> {
    Ok(xi.translate(g).add(&cocycle(phi, psi, data, g)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CocycleReport {
    pub word: Word,
    pub dist: usize,
    pub support_size: u64,
    /// Number of vertices enumerated before filtering.
    pub visited: u64,
    pub norm: f64,
    /// Properness lower bound, absent when `dist ≤ 100δ`.
    pub bound: Option<f64>,
    /// Finiteness upper bound.
    pub upper: f64,
    pub ok: bool,
}

/// `‖b(g)‖_(ΨΦ)` without materializing `b(g)`: the support is streamed spine
/// vertex by spine vertex and only inner norms are kept.
pub fn cocycle_norm(phi: &YoungFunction, psi: &YoungFunction, data: &HyperbolicData, g: &Word) -> Result<CocycleReport> {
    growth_constant(psi, data.p, 1.0)?;
    let scale = dirac_scale(phi);
    let gl = g.letters();
    let parts: Vec<(u64, BTreeMap<u64, f64>)> = (0..=gl.len())
        .into_par_iter()
        .map(|k| {
            let mut visited = 0u64;
            let mut counts: BTreeMap<u64, f64> = BTreeMap::new();
            let mut memo: HashMap<[u64; 2], f64> = HashMap::new();
            walk_spine_vertex(data.rank, data.radius, gl, k, |gamma, _| {
                visited += 1;
                let x = mineyev_vertex(gamma, gl, data.radius);
                let y = mineyev_vertex(gamma, &[], data.radius);
                if x != y {
                    // Entry scale·(δ_x − δ_y): two equal moduli.
                    let key = [scale.to_bits(), scale.to_bits()];
                    let n = *memo
                        .entry(key)
                        .or_insert_with(|| gauge_norm_of_masses(phi, &[(1.0, scale), (1.0, scale)]));
                    *counts.entry(n.to_bits()).or_default() += 1.0;
                }
            });
            (visited, counts)
        })
        .collect();
    let mut visited = 0;
    let mut counts: BTreeMap<u64, f64> = BTreeMap::new();
    for (v, c) in parts {
        visited += v;
        for (bits, n) in c {
            *counts.entry(bits).or_default() += n;
        }
    }
    let inner: Vec<(f64, f64)> = counts.iter().map(|(&b, &n)| (n, f64::from_bits(b))).collect();
    let support_size = counts.values().sum::<f64>() as u64;
    let norm = nested_gauge_norm_from_inner(psi, &inner);
    let dist = g.len();
    let bound = properness_bound(psi, data, dist).ok();
    let upper = finiteness_bound(psi, data, dist)?;
    let ok = norm.is_finite() && bound.map_or(true, |b| norm >= b - 1e-9) && norm <= upper;
    Ok(CocycleReport {
        word: g.clone(),
        dist,
        support_size,
        visited,
        norm,
        bound,
        upper,
        ok,
    })
}

/// `1/Ψ⁻¹(1/(dist − 100δ))`.
pub fn properness_bound(psi: &YoungFunction, data: &HyperbolicData, dist: usize) -> Result<f64> {
    let floor = 100 * data.delta;
    if dist <= floor {
        return domain(format!("properness bound needs dist > {floor}, got {dist}"));
    }
    let inv = psi.inverse(1.0 / (dist - floor) as f64)?;
    Ok(1.0 / inv)
}

/// `max{c₀(g), (2D)^{1/p}·C·λ^{−d}}` with `t₀ = 1`.
pub fn finiteness_bound(psi: &YoungFunction, data: &HyperbolicData, dist: usize) -> Result<f64> {
    let t0 = 1.0;
    let d_const = growth_constant(psi, data.p, t0)?;
    let m = data.c * data.lambda.powi(-(dist as i32));
    // n₀ = min{n : Cλ^{n−d} ≤ t₀}.
    let mut n0 = ((t0 / data.c).ln() / data.lambda.ln() + dist as f64).ceil().max(0.0) as i32;
    while n0 > 0 && data.c * data.lambda.powi(n0 - 1 - dist as i32) <= t0 {
        n0 -= 1;
    }
    while data.c * data.lambda.powi(n0 - dist as i32) > t0 {
        n0 += 1;
    }
    let c0 = if n0 == 0 {
        1.0
    } else {
        let y = 0.5 / (n0 as f64 * data.v.powi(n0));
        (m / psi.inverse(y)?).max(1.0)
    };
    Ok(c0.max((2.0 * d_const).powf(1.0 / data.p as f64) * m))
}

fn mul_into(out: &mut Vec<Letter>, a: &[Letter], b: &[Letter]) {
    let mut cancel = 0;
    while cancel < a.len() && cancel < b.len() && a[a.len() - 1 - cancel] == -b[cancel] {
        cancel += 1;
    }
    out.clear();
    out.extend_from_slice(&a[..a.len() - cancel]);
    out.extend_from_slice(&b[cancel..]);
}

/// Vertices of the subtree spanned by `e`, `g` and `gh`.
fn hull(g: &Word, h: &Word) -> Vec<Word> {
    let gh = g.mul(h);
    let mut out: Vec<Word> = (0..=g.len()).map(|i| g.prefix(i)).collect();
    out.extend((0..=gh.len()).map(|i| gh.prefix(i)));
    out.extend((0..=h.len()).map(|i| g.mul(&h.prefix(i))));
    out.sort();
    out.dedup();
    out
}

/// Largest entry of `b(gh) − π(g)b(h) − b(g)`.
///
/// Off the hull of `{e, g, gh}` every entry of all three cocycles depends
/// only on the nearest hull point and the distance to it, and vanishes at
/// distance `≥ radius`, so one representative per (hull point, distance)
/// suffices.
pub fn cocycle_identity_defect(phi: &YoungFunction, data: &HyperbolicData, g: &Word, h: &Word) -> f64 {
    let scale = dirac_scale(phi);
    let gh = g.mul(h);
    let g_inv = g.inverse();
    let vertices = hull(g, h);
    let letters = crate::word::alphabet(data.rank);
    let (mut gamma, mut pre, mut t1, mut t2) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut worst: f64 = 0.0;
    for p in &vertices {
        let pl = p.letters();
        let out = letters.iter().copied().find(|&x| {
            pl.last() != Some(&-x) && vertices.binary_search(&p.push(x)).is_err()
        });
        for t in 0..=data.radius {
            gamma.clear();
            gamma.extend_from_slice(pl);
            if t > 0 {
                match out {
                    Some(x) => gamma.extend(std::iter::repeat(x).take(t)),
                    None => break,
                }
            }
            mul_into(&mut pre, g_inv.letters(), &gamma);
            let r = data.radius;
            let e: &[Letter] = &[];
            mul_into(&mut t1, g.letters(), mineyev_vertex(&pre, h.letters(), r));
            mul_into(&mut t2, g.letters(), mineyev_vertex(&pre, e, r));
            let terms: [(&[Letter], f64); 6] = [
                (mineyev_vertex(&gamma, gh.letters(), r), 1.0),
                (mineyev_vertex(&gamma, e, r), -1.0),
                (&t1, -1.0),
                (&t2, 1.0),
                (mineyev_vertex(&gamma, g.letters(), r), -1.0),
                (mineyev_vertex(&gamma, e, r), 1.0),
            ];
            let mut sums: Vec<(&[Letter], f64)> = Vec::with_capacity(6);
            for (w, c) in terms {
                match sums.iter_mut().find(|(u, _)| *u == w) {
                    Some(s) => s.1 += c * scale,
                    None => sums.push((w, c * scale)),
                }
            }
            worst = sums.iter().fold(worst, |m, (_, c)| m.max(c.abs()));
        }
    }
    worst
}
