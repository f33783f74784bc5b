//! Elements of `ℓ^Φ` and `L^Φ([0,1])` and their norms.

mod nested;
mod sparse;
mod step;

pub use nested::{nested_gauge_norm, nested_gauge_norm_from_inner, CocycleVector};
pub use sparse::{sign, SparseVector};
pub use step::StepFunction;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::solve::{golden_min, log_bracket};
use crate::young::{check_delta2, unsupported, Regime, YoungFunction};

/// Anything whose modular `Σ w·Φ(|f|/b)` is a finite weighted sum.
pub trait OrliczElement {
    /// `(weight, modulus)` pairs: counting weight 1 for sequences, interval
    /// length for step functions.
    fn masses(&self) -> Vec<(f64, f64)>;

    /// Where a Δ2 condition has to hold for this kind of element.
    fn regime(&self) -> Regime;
}

impl<I: Ord + Clone> OrliczElement for SparseVector<I> {
    fn masses(&self) -> Vec<(f64, f64)> {
        self.iter().map(|(_, z)| (1.0, z.norm())).collect()
    }

    fn regime(&self) -> Regime {
        Regime::Sequence
    }
}

impl OrliczElement for StepFunction {
    fn masses(&self) -> Vec<(f64, f64)> {
        self.lengths()
            .zip(self.values())
            .map(|(l, z)| (l, z.norm()))
            .filter(|(_, m)| *m > 0.0)
            .collect()
    }

    fn regime(&self) -> Regime {
        Regime::Function
    }
}

/// A vector of either shape, as read from a file.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Sparse(SparseVector<u64>),
    Step(StepFunction),
}

impl OrliczElement for Element {
    fn masses(&self) -> Vec<(f64, f64)> {
        match self {
            Element::Sparse(v) => v.masses(),
            Element::Step(v) => v.masses(),
        }
    }

    fn regime(&self) -> Regime {
        match self {
            Element::Sparse(_) => Regime::Sequence,
            Element::Step(_) => Regime::Function,
        }
    }
}

impl Element {
    pub fn kind(&self) -> &'static str {
        match self {
            Element::Sparse(_) => "sparse",
            Element::Step(_) => "step",
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Sparse(v) => v.is_empty(),
            Element::Step(v) => v.is_zero(),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Element::Sparse(v) => v.is_real(),
            Element::Step(v) => v.is_real(),
        }
    }

    pub fn map_moduli<G: Fn(f64) -> f64>(&self, g: G) -> Element {
        match self {
            Element::Sparse(v) => Element::Sparse(v.map_moduli(g)),
            Element::Step(v) => Element::Step(v.map_moduli(g)),
        }
    }

    pub fn scale(&self, c: Complex64) -> Element {
        match self {
            Element::Sparse(v) => Element::Sparse(v.scale(c)),
            Element::Step(v) => Element::Step(v.scale(c)),
        }
    }

    fn same_kind<'a>(&'a self, other: &'a Element) -> Result<()> {
        if self.kind() == other.kind() {
            Ok(())
        } else {
            domain(format!(
                "cannot combine a {} vector with a {} vector",
                self.kind(),
                other.kind()
            ))
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_kind(other)?;
        Ok(match (self, other) {
            (Element::Sparse(a), Element::Sparse(b)) => Element::Sparse(a.add(b)),
            (Element::Step(a), Element::Step(b)) => Element::Step(a.add(b)),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.same_kind(other)?;
        Ok(match (self, other) {
            (Element::Sparse(a), Element::Sparse(b)) => Element::Sparse(a.sub(b)),
            (Element::Step(a), Element::Step(b)) => Element::Step(a.sub(b)),
            _ => unreachable!(),
        })
    }

    /// `Σ |f ψ|` or `∫ |f ψ| dμ`.
    pub fn pairing(&self, other: &Element) -> Result<f64> {
        self.same_kind(other)?;
        Ok(match (self, other) {
            (Element::Sparse(a), Element::Sparse(b)) => a.pairing(b),
            (Element::Step(a), Element::Step(b)) => a.pairing(b),
            _ => unreachable!(),
        })
    }
}

const PAR_CHUNK: usize = 1 << 14;

/// `Σ w·Φ(m·x)`, summed in fixed-size chunks so the result does not depend
/// on the number of threads.
fn modular(phi: &YoungFunction, masses: &[(f64, f64)], x: f64) -> f64 {
    let chunk = |c: &[(f64, f64)]| -> f64 { c.iter().map(|&(w, m)| w * phi.value(m * x)).sum() };
    if masses.len() <= PAR_CHUNK {
        chunk(masses)
    } else {
        let parts: Vec<f64> = masses.par_chunks(PAR_CHUNK).map(chunk).collect();
        parts.iter().sum()
    }
}

/// Largest modulus carrying positive weight.
fn peak(masses: &[(f64, f64)]) -> f64 {
    masses
        .iter()
        .filter(|(w, _)| *w > 0.0)
        .map(|(_, m)| *m)
        .fold(0.0, f64::max)
}

/// Gauge norm of a weighted list of moduli.
pub fn gauge_norm_of_masses(phi: &YoungFunction, masses: &[(f64, f64)]) -> f64 {
    let top = peak(masses);
    if top == 0.0 {
        return 0.0;
    }
    if *phi == YoungFunction::IndicatorBand {
        return top;
    }
    // Search b = top·x; G(b) ≤ 1 iff −ln G ≥ 0.
    let h = |x: f64| -modular(phi, masses, 1.0 / (top * x)).ln();
    match log_bracket(h) {
        Ok(br) => top * br.hi,
        Err(_) => f64::NAN,
    }
}

/// `inf{b > 0 : Σ/∫ Φ(|f|/b) dμ ≤ 1}`.
pub fn gauge_norm<E: OrliczElement + ?Sized>(phi: &YoungFunction, f: &E) -> f64 {
    gauge_norm_of_masses(phi, &f.masses())
}

/// `Σ/∫ Φ(|f|/b) dμ`.
pub fn modular_at<E: OrliczElement + ?Sized>(phi: &YoungFunction, f: &E, b: f64) -> f64 {
    modular(phi, &f.masses(), 1.0 / b)
}

/// Search range of the Amemiya multiplier, relative to `1/max|f|`.
const AMEMIYA_LOG_RANGE: (f64, f64) = (1e-8, 1e8);
const AMEMIYA_TOL: f64 = 1e-10;

/// Orlicz norm through the Amemiya formula `inf_k (1 + Σ Φ(k|f|))/k`.
pub fn orlicz_norm<E: OrliczElement + ?Sized>(phi: &YoungFunction, f: &E) -> Result<f64> {
    orlicz_norm_of_masses(phi, &f.masses())
}

pub fn orlicz_norm_of_masses(phi: &YoungFunction, masses: &[(f64, f64)]) -> Result<f64> {
    match phi {
        YoungFunction::IndicatorBand => return Err(unsupported(phi, "orlicz_norm")),
        YoungFunction::ScaledBy { inner, .. } if **inner == YoungFunction::IndicatorBand => {
            return Err(unsupported(phi, "orlicz_norm"))
        }
        _ => {}
    }
    let top = peak(masses);
    if top == 0.0 {
        return Ok(0.0);
    }
    if *phi == YoungFunction::Linear {
        // The infimum is approached as k → ∞.
        return Ok(masses.iter().map(|(w, m)| w * m).sum());
    }
    // k = κ/top, so A(k) = top·(1 + Σ w Φ(κ m/top))/κ.
    let amemiya = |u: f64| {
        let kappa = u.exp();
        (1.0 + modular(phi, masses, kappa / top)) / kappa
    };
    let (lo, hi) = AMEMIYA_LOG_RANGE;
    let (_, value) = golden_min(amemiya, lo.ln(), hi.ln(), AMEMIYA_TOL);
    Ok(top * value)
}

/// `Σ/∫ Φ(|f|/‖f‖_(Φ)) dμ − 1`; requires `Φ ∈ Δ2` in the element's regime.
pub fn normalization_residual<E: OrliczElement + ?Sized>(phi: &YoungFunction, f: &E) -> Result<f64> {
    let masses = f.masses();
    if peak(&masses) == 0.0 {
        return Err(Error::Degenerate("normalization of the zero vector".into()));
    }
    let report = check_delta2(phi, f.regime())?;
    if !report.passes {
        return Err(Error::Precondition(format!(
            "{phi} fails the Δ2 condition in the {:?} regime",
            f.regime()
        )));
    }
    let b = gauge_norm_of_masses(phi, &masses);
    Ok(modular(phi, &masses, 1.0 / b) - 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolderRecord {
    pub pairing: f64,
    pub bound: f64,
    pub ok: bool,
}

/// `Σ|fψ| ≤ 2‖f‖_(Φ)‖ψ‖_(Φ*)`.
pub fn holder_bound(phi: &YoungFunction, f: &Element, psi: &Element) -> Result<HolderRecord> {
    let pairing = f.pairing(psi)?;
    let conj = phi.conjugate();
    let bound = 2.0 * gauge_norm(phi, f) * gauge_norm(&conj, psi);
    Ok(HolderRecord {
        pairing,
        bound,
        ok: pairing <= bound + 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn gauge_examples() {
        let f = SparseVector::from_real([(1u64, 3.0), (2, 4.0)]);
        assert!(close(gauge_norm(&YoungFunction::Power(2.0), &f), 5.0, 1e-12));
        let d = SparseVector::from_real([(1u64, 1.0)]);
        assert!(close(
            gauge_norm(&YoungFunction::ScaledPower(2.0), &d),
            0.5f64.sqrt(),
            1e-12
        ));
        assert_eq!(gauge_norm(&YoungFunction::Power(3.0), &SparseVector::<u64>::new()), 0.0);
        let s = StepFunction::new(vec![0.0, 0.5, 1.0], vec![r(7.0), r(2.0)]).unwrap();
        assert_eq!(gauge_norm(&YoungFunction::IndicatorBand, &s), 7.0);
    }

    #[test]
    fn orlicz_examples() {
        let phi = YoungFunction::Power(2.0);
        let d = SparseVector::from_real([(1u64, 1.0)]);
        assert!(close(orlicz_norm(&phi, &d).unwrap(), 2.0, 1e-12));
        let f = SparseVector::from_real([(1u64, 3.0), (2, 4.0)]);
        assert!(close(orlicz_norm(&phi, &f).unwrap(), 10.0, 1e-12));
        assert_eq!(orlicz_norm(&phi, &SparseVector::<u64>::new()).unwrap(), 0.0);
        assert!(matches!(
            orlicz_norm(&YoungFunction::IndicatorBand, &f),
            Err(Error::UnsupportedVariant { .. })
        ));
    }

    #[test]
    fn normalization_examples() {
        let f = SparseVector::from_real([(1u64, 3.0), (2, 4.0)]);
        assert!(normalization_residual(&YoungFunction::Power(2.0), &f).unwrap().abs() < 1e-10);
        let d = SparseVector::from_real([(1u64, 1.0)]);
        assert!(normalization_residual(&YoungFunction::Power(4.0), &d).unwrap().abs() < 1e-10);
        assert!(normalization_residual(&YoungFunction::IndicatorBand, &d).is_err());
        assert!(matches!(
            normalization_residual(&YoungFunction::Power(2.0), &SparseVector::<u64>::new()),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn holder_examples() {
        let phi = YoungFunction::Power(2.0);
        let d = Element::Sparse(SparseVector::from_real([(1u64, 1.0)]));
        let rec = holder_bound(&phi, &d, &d).unwrap();
        assert_eq!(rec.pairing, 1.0);
        assert!(rec.ok);
        let zero = Element::Sparse(SparseVector::new());
        let rec = holder_bound(&phi, &d, &zero).unwrap();
        assert_eq!((rec.pairing, rec.bound, rec.ok), (0.0, 0.0, true));
        let step = Element::Step(StepFunction::constant(r(1.0)));
        assert!(matches!(holder_bound(&phi, &d, &step), Err(Error::Domain(_))));
    }
}
