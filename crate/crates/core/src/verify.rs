//! The acceptance checks, shared by the test suite and `orlicz verify-all`.
//!
//! Every check is seeded; a report carries the first violating witness.

use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::fuzz;
use crate::geometry::{
    extremal_pair, fixed_point_search, lp_modulus, norm, rao_ren_check, sampled_convexity_floor, scenario,
    C4_TRANSLATION,
};
use crate::hyperbolic::{
    apply_action, choose_p, cocycle, cocycle_identity_defect, cocycle_norm, HyperbolicData,
};
use crate::mazur::{
    certificate_from, composite_indices, conjugate_isometry, conjugate_isometry_closed_form, holder_check,
    sandwich_with, scalar_bound, HolderCase,
};
use crate::space::{gauge_norm, nested_gauge_norm, orlicz_norm, Element, OrliczElement, SparseVector};
use crate::word::{ball, Word};
use crate::young::{check_delta2, check_nabla2, interpolate, KClassIndices, Regime, YoungFunction};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    /// First violation, if any.
    pub witness: Option<String>,
    /// A recorded discrepancy that does not fail the check.
    pub finding: Option<String>,
    pub seconds: f64,
    pub budget_seconds: f64,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!(
            "[{status}] criterion {:<3} {} ({:.2}s / {}s): {}",
            self.id, self.title, self.seconds, self.budget_seconds, self.detail
        );
        if let Some(w) = &self.witness {
            s.push_str(&format!(" | witness: {w}"));
        }
        if let Some(f) = &self.finding {
            s.push_str(&format!(" | FINDING: {f}"));
        }
        s
    }
}

/// Outcome of a check body before timing is attached.
struct Outcome {
    passed: bool,
    detail: String,
    witness: Option<String>,
    finding: Option<String>,
}

impl Outcome {
    fn new(passed: bool, detail: String, witness: Option<String>) -> Self {
        Self {
            passed,
            detail,
            witness,
            finding: None,
        }
    }
}

fn timed(id: &str, title: &str, budget: f64, body: impl FnOnce() -> Result<Outcome>) -> CriterionReport {
    let start = Instant::now();
    let out = body().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}"), None));
    let seconds = start.elapsed().as_secs_f64();
    let in_time = seconds < budget;
    let detail = if in_time {
        out.detail
    } else {
        format!("{} (over the {budget}s budget)", out.detail)
    };
    CriterionReport {
        id: id.into(),
        title: title.into(),
        passed: out.passed && in_time,
        detail,
        witness: out.witness,
        finding: out.finding,
        seconds,
        budget_seconds: budget,
    }
}

/// Tracks the worst value of a check and the first failure.
struct Tally {
    count: usize,
    failures: usize,
    worst: f64,
    witness: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            count: 0,
            failures: 0,
            worst: 0.0,
            witness: None,
        }
    }

    fn record(&mut self, excess: f64, ok: bool, witness: impl FnOnce() -> String) {
        self.count += 1;
        if excess.is_nan() || excess > self.worst {
            self.worst = excess;
        }
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    fn ok(&self) -> bool {
        self.failures == 0 && self.count > 0
    }
}

fn describe(f: &Element) -> String {
    crate::io::element_json(f).to_string()
}

/// Closed-form `(Σ w·|f|^p)^{1/p}`.
pub fn p_norm<E: OrliczElement + ?Sized>(p: f64, f: &E) -> f64 {
    f.masses().iter().map(|(w, m)| w * m.powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Catalog N-functions used by the sandwich and conjugation checks.
pub fn catalog_n_functions() -> Vec<YoungFunction> {
    vec![
        YoungFunction::Power(1.5),
        YoungFunction::Power(3.0),
        YoungFunction::ScaledPower(4.0),
        interpolate(&YoungFunction::Power(6.0), 0.5).expect("valid interpolation"),
    ]
}

/// `r > 0` with `Σ Φ*(r·d_i) = 1`, by bisection on `ln r`.
fn dual_radius(conj: &YoungFunction, d: &[f64]) -> f64 {
    let g = |r: f64| d.iter().map(|x| conj.value(r * x)).sum::<f64>();
    let (mut lo, mut hi) = (-40.0f64, 40.0f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if g(mid.exp()) > 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo.exp()
}

/// `sup{Σ m_i s_i : Σ Φ*(s_i) ≤ 1}` for at most three moduli, by a grid
/// search over directions `(w₁, w₂, 1 − w₁ − w₂)` with repeated zooming.
pub fn brute_force_dual_sup(conj: &YoungFunction, m: &[f64]) -> f64 {
    let value = |d: &[f64]| dual_radius(conj, d) * d.iter().zip(m).map(|(x, y)| x * y).sum::<f64>();
    if m.len() == 1 {
        return value(&[1.0]);
    }
    let two = m.len() == 2;
    let n = 33;
    let (mut c1, mut c2, mut w) = (0.5, 0.5, 0.5);
    let mut best = f64::NEG_INFINITY;
    for _ in 0..26 {
        let mut arg = (c1, c2);
        for i in 0..n {
            let a = (c1 - w + 2.0 * w * i as f64 / (n - 1) as f64).clamp(0.0, 1.0);
            for j in 0..if two { 1 } else { n } {
                let d = if two {
                    vec![a, 1.0 - a]
                } else {
                    let b = (c2 - w + 2.0 * w * j as f64 / (n - 1) as f64).clamp(0.0, 1.0 - a);
                    vec![a, b, 1.0 - a - b]
                };
                let v = value(&d);
                if v > best {
                    best = v;
                    arg = (d[0], d[1]);
                }
            }
        }
        (c1, c2) = arg;
        w /= 3.0;
    }
    best
}

pub fn criterion_1(seed: u64) -> CriterionReport {
    timed("1", "gauge norm against closed-form p-norms", 5.0, || {
        let mut rng = fuzz::rng(seed ^ 0x01);
        let mut t = Tally::new();
        for k in 0..1000 {
            let f = if k % 2 == 0 {
                Element::Sparse(fuzz::sparse(&mut rng, 10))
            } else {
                Element::Step(fuzz::step(&mut rng, 10))
            };
            for p in [1.5, 2.0, 3.0, 4.0] {
                let got = gauge_norm(&YoungFunction::Power(p), &f);
                let want = p_norm(p, &f);
                let err = (got - want).abs() / want.max(1.0);
                t.record(err, err <= 1e-10, || format!("p = {p}, f = {}, gauge {got}, p-norm {want}", describe(&f)));
            }
        }
        Ok(Outcome::new(
            t.ok(),
            format!("{} comparisons, worst scaled error {:.2e} (tol 1e-10)", t.count, t.worst),
            t.witness,
        ))
    })
}

pub fn criterion_2(seed: u64) -> CriterionReport {
    timed("2", "gauge/Orlicz sandwich and dual supremum", 30.0, || {
        let mut rng = fuzz::rng(seed ^ 0x02);
        let mut sandwich = Tally::new();
        let fns = catalog_n_functions();
        for _ in 0..1000 {
            let f = fuzz::element(&mut rng);
            for phi in &fns {
                let g = gauge_norm(phi, &f);
                let o = orlicz_norm(phi, &f)?;
                let tol = 1e-9 * g.max(1.0);
                let excess = (g - o).max(o - 2.0 * g);
                sandwich.record(excess / g.max(1.0), excess <= tol, || {
                    format!("{phi}: gauge {g}, orlicz {o}, f = {}", describe(&f))
                });
            }
        }
        // Dual supremum where the conjugate is an exact closed form.
        let mut dual = Tally::new();
        for phi in &fns[..3] {
            let conj = phi.conjugate();
            for _ in 0..30 {
                let f = fuzz::sparse(&mut rng, 3);
                let m: Vec<f64> = f.iter().map(|(_, z)| z.norm()).collect();
                let o = orlicz_norm(phi, &f)?;
                let brute = brute_force_dual_sup(&conj, &m);
                let err = (o - brute).abs() / brute.max(1.0);
                dual.record(err, err <= 1e-6, || format!("{phi}: moduli {m:?}, orlicz {o}, dual sup {brute}"));
            }
        }
        Ok(Outcome::new(
            sandwich.ok() && dual.ok(),
            format!(
                "{} sandwich checks (worst excess {:.2e}); {} dual-sup checks (worst error {:.2e}, tol 1e-6)",
                sandwich.count, sandwich.worst, dual.count, dual.worst
            ),
            sandwich.witness.or(dual.witness),
        ))
    })
}

pub fn criterion_3(_seed: u64) -> CriterionReport {
    timed("3", "conjugation calculus", 2.0, || {
        let mut exact = Tally::new();
        for p in [1.25, 1.5, 2.0, 3.0, 4.0, 6.0] {
            let q = p / (p - 1.0);
            let c = YoungFunction::ScaledPower(p).conjugate();
            let excess = (1.0 / p + 1.0 / q - 1.0).abs();
            exact.record(excess, c == YoungFunction::ScaledPower(q), || {
                format!("conjugate(scaled-power:{p}) = {c}, expected scaled-power:{q}")
            });
        }
        let grid = Regime::Function.grid(1e-6);
        let mut fenchel = Tally::new();
        let mut kras = Tally::new();
        for phi in catalog_n_functions() {
            let conj = phi.conjugate();
            let pv: Vec<f64> = grid.iter().map(|&t| phi.value(t)).collect();
            let cv: Vec<f64> = grid.iter().map(|&s| conj.value(s)).collect();
            for (i, &t) in grid.iter().enumerate() {
                for (j, &s) in grid.iter().enumerate() {
                    let rhs = pv[i] + cv[j];
                    let excess = (s * t - rhs) / rhs.max(1e-300);
                    fenchel.record(excess, excess <= 1e-9, || format!("{phi}: s = {s}, t = {t}, st = {}, Φ+Φ* = {rhs}", s * t));
                }
                let lhs = conj.value(pv[i] / t);
                let excess = (lhs - pv[i]) / pv[i].max(1e-300);
                kras.record(excess, excess <= 1e-9, || format!("{phi}: t = {t}, Φ*(Φ(t)/t) = {lhs}, Φ(t) = {}", pv[i]));
            }
        }
        Ok(Outcome::new(
            exact.ok() && fenchel.ok() && kras.ok(),
            format!(
                "{} exact conjugates; Young–Fenchel on {} pairs (worst rel. excess {:.2e}); Krasnoselskii on {} points (worst {:.2e})",
                exact.count, fenchel.count, fenchel.worst, kras.count, kras.worst
            ),
            exact.witness.or(fenchel.witness).or(kras.witness),
        ))
    })
}

pub fn criterion_4(_seed: u64) -> CriterionReport {
    timed("4", "Δ2/∇2 classification table", 2.0, || {
        let mut rows = Vec::new();
        for p in [1.2, 1.5, 2.0, 3.0, 6.0] {
            for r in [Regime::Function, Regime::Sequence] {
                rows.push((YoungFunction::Power(p), r, Some(true), Some(true)));
            }
        }
        for r in [Regime::Function, Regime::Sequence] {
            rows.push((YoungFunction::Linear, r, Some(true), Some(false)));
        }
        rows.push((YoungFunction::IndicatorBand, Regime::Function, Some(false), None));
        let mut t = Tally::new();
        for (phi, regime, d2, n2) in rows {
            if let Some(want) = d2 {
                let got = check_delta2(&phi, regime)?.passes;
                t.record(0.0, got == want, || format!("Δ2 of {phi} ({regime:?}) = {got}, expected {want}"));
            }
            if let Some(want) = n2 {
                let got = check_nabla2(&phi, regime)?.passes;
                t.record(0.0, got == want, || format!("∇2 of {phi} ({regime:?}) = {got}, expected {want}"));
            }
        }
        Ok(Outcome::new(t.ok(), format!("{} verdicts, {} mismatches", t.count, t.failures), t.witness))
    })
}

pub fn criterion_5(seed: u64) -> CriterionReport {
    timed("5", "scalar inequality, both branches", 10.0, || {
        let mut rng = fuzz::rng(seed ^ 0x05);
        let mut t = Tally::new();
        for e in [0.5, 2.0, 1.5] {
            let idx = KClassIndices { alpha: e, beta: e };
            let phi = |x: f64| x.powf(e);
            for _ in 0..100_000 {
                let (a, b) = (fuzz::nonzero_complex(&mut rng), fuzz::nonzero_complex(&mut rng));
                let r = scalar_bound(idx, phi, a, b)?;
                let excess = (r.lhs - r.rhs) / r.rhs.max(1.0);
                t.record(excess, r.ok, || format!("φ = t^{e}, a = {a}, b = {b}, lhs {} > rhs {}", r.lhs, r.rhs));
            }
        }
        Ok(Outcome::new(
            t.ok(),
            format!("{} pairs over t^0.5, t^2, t^1.5; worst scaled excess {:.2e}", t.count, t.worst),
            t.witness,
        ))
    })
}

/// The Hölder pairs checked under criterion 6: label, Φ, Ψ.
pub fn holder_pairs() -> Vec<(&'static str, YoungFunction, YoungFunction)> {
    let p = YoungFunction::Power;
    vec![
        ("(power:2, power:4)", p(2.0), p(4.0)),
        ("(power:4, power:2)", p(4.0), p(2.0)),
        (
            "(power:2, interp:power:6,s=0.5)",
            p(2.0),
            interpolate(&p(6.0), 0.5).expect("valid"),
        ),
        (
            "(power:2, interp:pwl:[0,1];[1,100],s=0.5)",
            p(2.0),
            interpolate(&YoungFunction::pwl(vec![0.0, 1.0], vec![1.0, 100.0]).expect("valid"), 0.5).expect("valid"),
        ),
    ]
}

pub fn criterion_6(seed: u64) -> CriterionReport {
    timed("6", "Mazur sandwich (6a) and Hölder certificates (6b)", 60.0, || {
        let mut rng = fuzz::rng(seed ^ 0x06);
        let (phi, psi) = (YoungFunction::Power(3.0), YoungFunction::Power(2.0));
        let ci = composite_indices(&phi, &psi)?;
        let mut sandwich = Tally::new();
        for _ in 0..1000 {
            let f = fuzz::element(&mut rng);
            let r = sandwich_with(&phi, &psi, &ci, &f)?;
            let excess = (r.lower - r.value).max(r.value - r.upper);
            sandwich.record(excess, r.ok, || format!("f = {}, {r:?}", describe(&f)));
        }
        let mut notes = Vec::new();
        let mut case1_gaps = Vec::new();
        let mut proved_ok = true;
        let mut witness = sandwich.witness.clone();
        for (label, phi, psi) in holder_pairs() {
            let ci = composite_indices(&phi, &psi)?;
            let cert = certificate_from(ci.alpha, ci.beta);
            let mut t = Tally::new();
            for _ in 0..1000 {
                let raw = Element::Sparse(fuzz::sparse(&mut rng, 6));
                let f = fuzz::in_annulus(&mut rng, &phi, raw);
                let raw = Element::Sparse(fuzz::sparse(&mut rng, 6));
                let h = fuzz::in_annulus(&mut rng, &phi, raw);
                let r = holder_check(&phi, &psi, &cert, &f, &h)?;
                t.record(r.lhs / r.rhs, r.ok, || {
                    format!("{label}: f = {}, h = {}, lhs {} > rhs {}", describe(&f), describe(&h), r.lhs, r.rhs)
                });
            }
            notes.push(format!(
                "{label} {:?} exp {:.4} const {:.4}: {}/{} violations, max lhs/rhs {:.3}",
                cert.case, cert.exponent, cert.constant, t.failures, t.count, t.worst
            ));
            if !t.ok() {
                if cert.case == HolderCase::Case1 {
                    case1_gaps.push(format!("{label}: {}", t.witness.clone().unwrap_or_default()));
                } else {
                    proved_ok = false;
                    witness = witness.or(t.witness.clone());
                }
            }
        }
        let mut out = Outcome::new(
            sandwich.ok() && proved_ok,
            format!(
                "6a: {} sandwich checks, {} violations; 6b: {}",
                sandwich.count,
                sandwich.failures,
                notes.join("; ")
            ),
            witness,
        );
        if !case1_gaps.is_empty() {
            out.finding = Some(format!(
                "Case 1 constant 1/8 is violated ({})",
                case1_gaps.join("; ")
            ));
        }
        Ok(out)
    })
}

pub fn criterion_7(seed: u64) -> CriterionReport {
    timed("7", "conjugated isometries of ℓ^Φ", 10.0, || {
        let mut rng = fuzz::rng(seed ^ 0x07);
        let mut t = Tally::new();
        let err = |a: &SparseVector<u64>, b: &SparseVector<u64>| {
            a.max_abs_diff(b) / a.max_modulus().max(b.max_modulus()).max(1.0)
        };
        for _ in 0..100 {
            let p = rng.gen_range(1.2..6.0);
            let phi = if rng.gen_bool(0.5) {
                YoungFunction::Power(p)
            } else {
                YoungFunction::ScaledPower(p)
            };
            let n = rng.gen_range(2..=12);
            let complex = rng.gen_bool(0.5);
            let u = fuzz::weighted_composition(&mut rng, n, complex);
            let n2 = rng.gen_range(2..=12);
            let u2 = fuzz::weighted_composition(&mut rng, n2, complex);
            let (f, g) = (fuzz::sparse(&mut rng, 8), fuzz::sparse(&mut rng, 8));
            let c = fuzz::scalar(&mut rng, complex);
            let v = |x: &SparseVector<u64>| conjugate_isometry(&phi, &u, x);
            let (vf, vg) = (v(&f)?, v(&g)?);
            let checks = [
                ("additive", err(&v(&f.add(&g))?, &vf.add(&vg))),
                ("homogeneous", err(&v(&f.scale(c))?, &vf.scale(c))),
                ("closed form", err(&vf, &conjugate_isometry_closed_form(&u, &f))),
                (
                    "ℓ²-isometric",
                    (p_norm(2.0, &vf) - p_norm(2.0, &f)).abs() / p_norm(2.0, &f).max(1.0),
                ),
                (
                    "homomorphism",
                    err(
                        &conjugate_isometry(&phi, &u.compose(&u2), &f)?,
                        &conjugate_isometry(&phi, &u, &conjugate_isometry(&phi, &u2, &f)?)?,
                    ),
                ),
                ("composition", err(&u.compose(&u2).apply(&f), &u.apply(&u2.apply(&f)))),
            ];
            for (name, e) in checks {
                t.record(e, e <= 1e-10, || format!("{name} fails for {phi}, window {n}: error {e:.3e}"));
            }
        }
        Ok(Outcome::new(
            t.ok(),
            format!("{} checks on 100 weighted compositions, worst error {:.2e} (tol 1e-10)", t.count, t.worst),
            t.witness,
        ))
    })
}

pub fn criterion_8(seed: u64) -> CriterionReport {
    timed("8", "Clarkson modulus of ℓ^p_2", 30.0, || {
        let mut attain = Tally::new();
        let mut floor = Tally::new();
        for p in [2.0, 4.0] {
            let phi = YoungFunction::Power(p);
            for eps in [0.5, 1.0, 2f64.sqrt(), 2.0] {
                let bound = lp_modulus(p, eps)?;
                let (u, v) = extremal_pair(p, eps);
                let mid: Vec<f64> = u.iter().zip(&v).map(|(a, b)| 0.5 * (a + b)).collect();
                let diff: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a - b).collect();
                let e = [
                    (norm(&phi, &u) - 1.0).abs(),
                    (norm(&phi, &v) - 1.0).abs(),
                    (norm(&phi, &diff) - eps).abs(),
                    (1.0 - norm(&phi, &mid) - bound).abs(),
                ]
                .into_iter()
                .fold(0.0, f64::max);
                attain.record(e, e <= 1e-9, || format!("p = {p}, eps = {eps}: extremal pair off by {e:.3e}"));
                let est = sampled_convexity_floor(&phi, 2, eps, 100_000, seed)?;
                let gap = bound - est.value;
                floor.record(gap, gap <= 1e-6, || {
                    format!("p = {p}, eps = {eps}: sampled depth {} below {bound}, pair {:?}", est.value, est.witness)
                });
            }
        }
        Ok(Outcome::new(
            attain.ok() && floor.ok(),
            format!(
                "extremal pairs worst error {:.2e} (tol 1e-9); 8 × 1e5 sampled pairs, worst shortfall {:.2e} (tol 1e-6)",
                attain.worst, floor.worst
            ),
            attain.witness.or(floor.witness),
        ))
    })
}

pub fn criterion_9(seed: u64) -> CriterionReport {
    timed("9", "interpolated spaces against δ_{L^{2/s}}", 60.0, || {
        let mut t = Tally::new();
        let mut rows = Vec::new();
        for s in [0.5, 0.8, 1.0] {
            for eps in [0.5, 1.0] {
                let r = rao_ren_check(&YoungFunction::Power(6.0), s, eps, 2, 2000, seed)?;
                rows.push(format!("s={s} eps={eps}: {:.6} vs {:.6}", r.estimate, r.bound));
                t.record(r.bound - r.estimate, r.ok, || format!("s = {s}, eps = {eps}: {r:?}"));
            }
        }
        Ok(Outcome::new(t.ok(), rows.join("; "), t.witness))
    })
}

pub fn criterion_10(_seed: u64) -> CriterionReport {
    timed("10", "fixed point of the C4 action", 5.0, || {
        let sc = scenario("c4-rotation")?;
        let r = fixed_point_search(&sc.phi, &sc.action, &sc.x0, 1e-9)?;
        let tau = C4_TRANSLATION;
        // (I − r)x = τ for a quarter turn in each plane.
        let oracle = [
            (tau[0] - tau[1]) / 2.0,
            (tau[0] + tau[1]) / 2.0,
            (tau[2] - tau[3]) / 2.0,
            (tau[2] + tau[3]) / 2.0,
        ];
        let dist = r
            .point
            .iter()
            .zip(oracle)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let monotone = r.halving_trace.windows(2).all(|w| w[1] <= w[0]);
        let ok = dist <= 1e-6 && r.iterations < 10_000 && monotone;
        let witness = (!ok).then(|| format!("point {:?}, oracle {oracle:?}, monotone {monotone}", r.point));
        Ok(Outcome::new(
            ok,
            format!(
                "{} iterations, residual {:.2e}, distance to oracle {:.2e}, trace non-increasing: {monotone}",
                r.iterations, r.residual, dist
            ),
            witness,
        ))
    })
}

pub fn criterion_11(seed: u64) -> CriterionReport {
    timed("11", "cocycle algebra on F2", 60.0, || {
        let (phi, psi) = (YoungFunction::Power(2.0), YoungFunction::Power(4.0));
        let data = HyperbolicData::new(&phi, 2, 1)?;
        let trivial = cocycle(&phi, &psi, &data, &Word::identity())?.is_empty();
        let words = ball(2, 5);
        let mut identity = Tally::new();
        for g in &words {
            for h in &words {
                let d = cocycle_identity_defect(&phi, &data, g, h);
                identity.record(d, d <= 1e-9, || format!("b({g}·{h}) ≠ π({g})b({h}) + b({g}): defect {d}"));
            }
        }
        let mut rng = fuzz::rng(seed ^ 0x0b);
        let mut direct = Tally::new();
        for _ in 0..3 {
            let (g, h) = (fuzz::word(&mut rng, 2, 4), fuzz::word(&mut rng, 2, 4));
            let xi = fuzz::cocycle_vector(&mut rng, 2, 6);
            let zeta = fuzz::cocycle_vector(&mut rng, 2, 6);
            let lhs = cocycle(&phi, &psi, &data, &g.mul(&h))?;
            let rhs = cocycle(&phi, &psi, &data, &h)?.translate(&g).add(&cocycle(&phi, &psi, &data, &g)?);
            let d = lhs.max_abs_diff(&rhs);
            direct.record(d, d <= 1e-9, || format!("materialized identity fails at ({g}, {h}): {d}"));
            let left = apply_action(&phi, &psi, &data, &g, &apply_action(&phi, &psi, &data, &h, &xi)?)?;
            let right = apply_action(&phi, &psi, &data, &g.mul(&h), &xi)?;
            let d = left.max_abs_diff(&right);
            direct.record(d, d <= 1e-9, || format!("α({g})α({h})ξ ≠ α({g}{h})ξ: {d}"));
            let moved = apply_action(&phi, &psi, &data, &g, &xi)?.sub(&apply_action(&phi, &psi, &data, &g, &zeta)?);
            let d = (nested_gauge_norm(&psi, &phi, &moved) - nested_gauge_norm(&psi, &phi, &xi.sub(&zeta))).abs();
            direct.record(d, d <= 1e-9, || format!("α({g}) is not isometric: {d}"));
        }
        Ok(Outcome::new(
            trivial && identity.ok() && direct.ok(),
            format!(
                "b(e) = 0: {trivial}; identity on {} pairs (worst {:.1e}); {} materialized checks (worst {:.1e})",
                identity.count, identity.worst, direct.count, direct.worst
            ),
            identity.witness.or(direct.witness),
        ))
    })
}

pub fn criterion_12(_seed: u64) -> CriterionReport {
    timed("12", "properness of the F2 action", 120.0, || {
        let (phi, psi) = (YoungFunction::Power(2.0), YoungFunction::Power(4.0));
        let data = HyperbolicData::new(&phi, 2, 1)?;
        let p_ok = choose_p(0.5, 5.0) == 4 && data.p == 4;
        let mut t = Tally::new();
        let mut norms = Vec::new();
        let mut rows = Vec::new();
        for d in [104, 108, 112, 116] {
            let g = Word::power(1, d);
            let r = cocycle_norm(&phi, &psi, &data, &g)?;
            let lower = ((d - 100) as f64).powf(0.25);
            let ok = r.norm >= lower - 1e-9 && r.norm <= r.upper && r.ok;
            t.record(lower - r.norm, ok, || format!("d = {d}: {r:?}"));
            rows.push(format!("d={d}: ‖b‖ = {:.4} ≥ {:.4}, support {}", r.norm, lower, r.support_size));
            norms.push(r.norm);
        }
        let increasing = norms.windows(2).all(|w| w[1] > w[0]);
        Ok(Outcome::new(
            p_ok && t.ok() && increasing,
            format!("p = {}; {}; strictly increasing: {increasing}", data.p, rows.join("; ")),
            t.witness,
        ))
    })
}

pub type Runner = fn(u64) -> CriterionReport;

pub const CRITERIA: [Runner; 12] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
    criterion_12,
];

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|run| run(seed)).collect()
}
