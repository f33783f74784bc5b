//! The generalized Mazur map `f ↦ Ψ⁻¹(Φ(|f|))·sign(f)`, its scalar and norm
//! inequalities, Hölder certificates, and conjugation of weighted
//! composition operators on `ℓ²`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::space::{gauge_norm, sign, Element, SparseVector};
use crate::young::{k_class_indices, unsupported, KClassIndices, YoungFunction};

const TOL: f64 = 1e-9;
/// Composite exponents this close to 1 are treated as exactly 1.
const BOUNDARY_SNAP: f64 = 1e-9;

fn check_pair(phi: &YoungFunction, psi: &YoungFunction) -> Result<()> {
    if !psi.is_invertible() {
        return Err(unsupported(psi, "mazur_map"));
    }
    if !phi.is_invertible() {
        return Err(unsupported(phi, "mazur_map"));
    }
    Ok(())
}

/// `t ↦ Ψ⁻¹(Φ(t))`.
pub fn mazur_scalar(phi: &YoungFunction, psi: &YoungFunction, t: f64) -> f64 {
    psi.inverse_value(phi.value(t))
}

pub fn mazur_map(phi: &YoungFunction, psi: &YoungFunction, f: &Element) -> Result<Element> {
    check_pair(phi, psi)?;
    Ok(f.map_moduli(|t| mazur_scalar(phi, psi, t)))
}

pub fn mazur_map_sparse<I: Ord + Clone>(
    phi: &YoungFunction,
    psi: &YoungFunction,
    f: &SparseVector<I>,
) -> Result<SparseVector<I>> {
    check_pair(phi, psi)?;
    Ok(f.map_moduli(|t| mazur_scalar(phi, psi, t)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalarRecord {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// The two-branch scalar inequality for `φ ∈ K(α, β)` at non-zero `a, b`.
pub fn scalar_bound<F: Fn(f64) -> f64>(
    indices: KClassIndices,
    varphi: F,
    a: Complex64,
    b: Complex64,
) -> Result<ScalarRecord> {
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return domain("the scalar inequality needs a, b != 0");
    }
    let lhs = (sign(a) * varphi(a.norm()) - sign(b) * varphi(b.norm())).norm();
    let d = (a - b).norm();
    let w = a.norm() + b.norm();
    let beta = indices.beta;
    let rhs = if beta <= 1.0 {
        varphi(d) + 4.0 * d / w * varphi(w)
    } else {
        (2.0 * beta + 4.0) * d / w * varphi(w)
    };
    Ok(ScalarRecord {
        lhs,
        rhs,
        ok: lhs <= rhs + TOL,
    })
}

/// Class exponents of `Φ`, `Ψ` and the composite `α = p_Φ/q_Ψ`, `β = q_Φ/p_Ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompositeIndices {
    pub phi: KClassIndices,
    pub psi: KClassIndices,
    pub alpha: f64,
    pub beta: f64,
}

pub fn composite_indices(phi: &YoungFunction, psi: &YoungFunction) -> Result<CompositeIndices> {
    let kp = k_class_indices(phi)?;
    let kq = k_class_indices(psi)?;
    Ok(CompositeIndices {
        phi: kp,
        psi: kq,
        alpha: kp.alpha / kq.beta,
        beta: kp.beta / kq.alpha,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichRecord {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub ok: bool,
}

/// `min(‖f‖^α, ‖f‖^β) ≤ ‖φ_{ΦΨ}(f)‖_(Ψ) ≤ max(‖f‖^α, ‖f‖^β)`.
pub fn sandwich_check(phi: &YoungFunction, psi: &YoungFunction, f: &Element) -> Result<SandwichRecord> {
    let ci = composite_indices(phi, psi)?;
    sandwich_with(phi, psi, &ci, f)
}

/// As [`sandwich_check`] with precomputed exponents.
pub fn sandwich_with(
    phi: &YoungFunction,
    psi: &YoungFunction,
    ci: &CompositeIndices,
    f: &Element,
) -> Result<SandwichRecord> {
    if f.is_zero() {
        return Ok(SandwichRecord {
            lower: 0.0,
            value: 0.0,
            upper: 0.0,
            ok: true,
        });
    }
    let n = gauge_norm(phi, f);
    let value = gauge_norm(psi, &mazur_map(phi, psi, f)?);
    let (x, y) = (n.powf(ci.alpha), n.powf(ci.beta));
    let (lower, upper) = (x.min(y), x.max(y));
    Ok(SandwichRecord {
        lower,
        value,
        upper,
        ok: lower - TOL <= value && value <= upper + TOL,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HolderCase {
    /// `α ≤ β ≤ 1`.
    Case1,
    /// `1 ≤ α ≤ β`.
    Case2,
    /// `α < 1 < β`.
    Case3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolderCertificate {
    pub case: HolderCase,
    pub exponent: f64,
    pub constant: f64,
    pub alpha: f64,
    pub beta: f64,
}

fn snap(x: f64) -> f64 {
    if (x - 1.0).abs() <= BOUNDARY_SNAP {
        1.0
    } else {
        x
    }
}

/// Hölder exponent and constant of the Mazur map on `½ ≤ ‖f‖_(Φ) ≤ 3/2`.
pub fn certificate_from(alpha: f64, beta: f64) -> HolderCertificate {
    let (alpha, beta) = (snap(alpha), snap(beta));
    let (case, exponent, constant) = if alpha >= 1.0 {
        (HolderCase::Case2, 1.0, 3f64.powf(beta) * (2.0 * beta + 4.0))
    } else if beta > 1.0 {
        (
            HolderCase::Case3,
            alpha,
            3f64.powf(beta - alpha + 1.0) * (2.0 * beta + 4.0),
        )
    } else {
        (HolderCase::Case1, alpha, 1.0 / 8.0)
    };
    HolderCertificate {
        case,
        exponent,
        constant,
        alpha,
        beta,
    }
}

pub fn holder_certificate(phi: &YoungFunction, psi: &YoungFunction) -> Result<HolderCertificate> {
    let ci = composite_indices(phi, psi)?;
    Ok(certificate_from(ci.alpha, ci.beta))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolderRecord {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// `‖φ(f) − φ(h)‖_(Ψ) ≤ constant·‖f − h‖_(Φ)^exponent` for one pair.
pub fn holder_check(
    phi: &YoungFunction,
    psi: &YoungFunction,
    cert: &HolderCertificate,
    f: &Element,
    h: &Element,
) -> Result<HolderRecord> {
    let lhs = gauge_norm(psi, &mazur_map(phi, psi, f)?.sub(&mazur_map(phi, psi, h)?)?);
    let rhs = cert.constant * gauge_norm(phi, &f.sub(h)?).powf(cert.exponent);
    Ok(HolderRecord {
        lhs,
        rhs,
        ok: lhs <= rhs + TOL,
    })
}

/// `(Uf)(x) = h(x) f(T(x))` on `ℓ(ℕ)`, with `T` a permutation of the window
/// `0..n` and the identity outside it.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedComposition {
    perm: Vec<usize>,
    inv: Vec<usize>,
    weights: Vec<Complex64>,
}

impl WeightedComposition {
    pub fn new(perm: Vec<usize>, weights: Vec<Complex64>) -> Result<Self> {
        let n = perm.len();
        if weights.len() != n {
            return domain("permutation and weights must cover the same window");
        }
        let mut inv = vec![usize::MAX; n];
        for (x, &t) in perm.iter().enumerate() {
            if t >= n || inv[t] != usize::MAX {
                return domain("window map is not a bijection");
            }
            inv[t] = x;
        }
        if weights.iter().any(|z| (z.norm() - 1.0).abs() > 1e-12) {
            return domain("weights must be unimodular");
        }
        Ok(Self { perm, inv, weights })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            inv: (0..n).collect(),
            weights: vec![Complex64::new(1.0, 0.0); n],
        }
    }

    pub fn window(&self) -> usize {
        self.perm.len()
    }

    pub fn map(&self, x: u64) -> u64 {
        match usize::try_from(x) {
            Ok(i) if i < self.perm.len() => self.perm[i] as u64,
            _ => x,
        }
    }

    fn preimage(&self, y: u64) -> u64 {
        match usize::try_from(y) {
            Ok(i) if i < self.inv.len() => self.inv[i] as u64,
            _ => y,
        }
    }

    pub fn weight(&self, x: u64) -> Complex64 {
        match usize::try_from(x) {
            Ok(i) if i < self.weights.len() => self.weights[i],
            _ => Complex64::new(1.0, 0.0),
        }
    }

    pub fn apply(&self, f: &SparseVector<u64>) -> SparseVector<u64> {
        SparseVector::from_entries(f.iter().map(|(y, z)| {
            let x = self.preimage(*y);
            (x, self.weight(x) * z)
        }))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &WeightedComposition) -> WeightedComposition {
        let n = self.window().max(other.window());
        let perm: Vec<usize> = (0..n as u64).map(|x| other.map(self.map(x)) as usize).collect();
        let weights = (0..n as u64)
            .map(|x| self.weight(x) * other.weight(self.map(x)))
            .collect();
        WeightedComposition::new(perm, weights).expect("composition of bijections")
    }
}

/// `φ_{Φ,t²} ∘ U ∘ φ_{t²,Φ}` evaluated by composing the three maps.
pub fn conjugate_isometry(
    phi: &YoungFunction,
    u: &WeightedComposition,
    f: &SparseVector<u64>,
) -> Result<SparseVector<u64>> {
    let square = YoungFunction::Power(2.0);
    let into_phi = mazur_map_sparse(&square, phi, f)?;
    let moved = u.apply(&into_phi);
    mazur_map_sparse(phi, &square, &moved)
}

/// `x ↦ sign(h(x))·f(T(x))`.
pub fn conjugate_isometry_closed_form(u: &WeightedComposition, f: &SparseVector<u64>) -> SparseVector<u64> {
    SparseVector::from_entries(f.iter().map(|(y, z)| {
        let x = u.preimage(*y);
        (x, sign(u.weight(x)) * z)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mazur_examples() {
        let f = Element::Sparse(SparseVector::dirac(1, c(0.0, 3.0)));
        let g = mazur_map(&YoungFunction::Power(4.0), &YoungFunction::Power(2.0), &f).unwrap();
        let Element::Sparse(g) = g else { panic!() };
        assert!((g.get(&1) - c(0.0, 9.0)).norm() < 1e-12);
        assert!(matches!(
            mazur_map(&YoungFunction::Power(2.0), &YoungFunction::IndicatorBand, &f),
            Err(Error::UnsupportedVariant { .. })
        ));
    }

    #[test]
    fn scalar_examples() {
        let half = KClassIndices { alpha: 0.5, beta: 0.5 };
        let r = scalar_bound(half, f64::sqrt, c(4.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-15);
        assert!((r.rhs - (3f64.sqrt() + 2.4 * 5f64.sqrt())).abs() < 1e-12);
        assert!(r.ok);
        let two = KClassIndices { alpha: 2.0, beta: 2.0 };
        let r = scalar_bound(two, |t| t * t, c(2.0, 0.0), c(-2.0, 0.0)).unwrap();
        assert_eq!((r.lhs, r.rhs), (8.0, 128.0));
        assert!(scalar_bound(two, |t| t * t, c(0.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn certificate_examples() {
        let p = |x| YoungFunction::Power(x);
        let c2 = holder_certificate(&p(4.0), &p(2.0)).unwrap();
        assert_eq!(c2.case, HolderCase::Case2);
        assert!((c2.constant - 72.0).abs() < 1e-9);
        let c1 = holder_certificate(&p(2.0), &p(4.0)).unwrap();
        assert_eq!(c1.case, HolderCase::Case1);
        assert!((c1.exponent - 0.5).abs() < 1e-12);
        assert_eq!(c1.constant, 0.125);
        let tie = holder_certificate(&p(2.0), &p(2.0)).unwrap();
        assert_eq!((tie.case, tie.exponent, tie.constant), (HolderCase::Case2, 1.0, 18.0));
        assert_eq!(certificate_from(0.5, 1.5).case, HolderCase::Case3);
    }

    #[test]
    fn sandwich_example() {
        let f = Element::Sparse(SparseVector::from_real([(1, 2.0)]));
        let r = sandwich_check(&YoungFunction::Power(4.0), &YoungFunction::Power(2.0), &f).unwrap();
        assert!((r.value - 4.0).abs() < 1e-12 && (r.lower - 4.0).abs() < 1e-9);
        assert!(r.ok);
    }

    #[test]
    fn conjugation_examples() {
        let phi = YoungFunction::Power(4.0);
        let f = SparseVector::from_real([(1, 3.0), (2, 4.0)]);
        let id = WeightedComposition::identity(4);
        let g = conjugate_isometry(&phi, &id, &f).unwrap();
        assert!(g.max_abs_diff(&f) < 1e-12);
        let swap = WeightedComposition::new(vec![0, 2, 1], vec![c(1.0, 0.0); 3]).unwrap();
        let g = conjugate_isometry(&phi, &swap, &f).unwrap();
        assert!(g.max_abs_diff(&SparseVector::from_real([(1, 4.0), (2, 3.0)])) < 1e-12);
        let rot = WeightedComposition::new(vec![0, 1], vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let g = conjugate_isometry(&phi, &rot, &SparseVector::from_real([(1, 5.0)])).unwrap();
        assert!((g.get(&1) - c(0.0, 5.0)).norm() < 1e-12);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(WeightedComposition::new(vec![0, 0], vec![c(1.0, 0.0); 2]).is_err());
        assert!(WeightedComposition::new(vec![0, 1], vec![c(2.0, 0.0); 2]).is_err());
    }
}
