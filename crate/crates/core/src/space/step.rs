use num_complex::Complex64;

use super::sparse::sign;
use crate::error::{domain, Result};

/// Step function on `[0, 1]`: value `values[i]` on `(b_i, b_{i+1}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<Complex64>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if breakpoints.len() < 2 || values.len() + 1 != breakpoints.len() {
            return domain("step function needs n+1 breakpoints for n values");
        }
        if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != 1.0 {
            return domain("step function breakpoints must start at 0 and end at 1");
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return domain("step function breakpoints must be strictly increasing");
        }
        if values.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return domain("step function values must be finite");
        }
        Ok(Self {
            breakpoints,
            values,
        })
    }

    pub fn constant(z: Complex64) -> Self {
        Self {
            breakpoints: vec![0.0, 1.0],
            values: vec![z],
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn lengths(&self) -> impl Iterator<Item = f64> + '_ {
        self.breakpoints.windows(2).map(|w| w[1] - w[0])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|z| z.im == 0.0)
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Pointwise combination on the common refinement of both partitions.
    pub fn zip_with<F: Fn(Complex64, Complex64) -> Complex64>(&self, other: &Self, f: F) -> Self {
        let mut bps = vec![0.0];
        let mut vals = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.values.len() && j < other.values.len() {
            let (ri, rj) = (self.breakpoints[i + 1], other.breakpoints[j + 1]);
            vals.push(f(self.values[i], other.values[j]));
            bps.push(ri.min(rj));
            if ri <= rj {
                i += 1;
            }
            if rj <= ri {
                j += 1;
            }
        }
        Self {
            breakpoints: bps,
            values: vals,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|z| z * c).collect(),
        }
    }

    pub fn map_moduli<G: Fn(f64) -> f64>(&self, g: G) -> Self {
        Self {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|z| sign(*z) * g(z.norm())).collect(),
        }
    }

    /// `∫ |f g| dμ`.
    pub fn pairing(&self, other: &Self) -> f64 {
        let prod = self.zip_with(other, |a, b| a * b);
        prod.lengths().zip(&prod.values).map(|(l, z)| l * z.norm()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn validates_partition() {
        assert!(StepFunction::new(vec![0.0, 0.5, 1.0], vec![r(1.0), r(2.0)]).is_ok());
        assert!(StepFunction::new(vec![0.0, 0.5], vec![r(1.0)]).is_err());
        assert!(StepFunction::new(vec![0.0, 0.5, 0.5, 1.0], vec![r(1.0); 3]).is_err());
        assert!(StepFunction::new(vec![0.0, 1.0], vec![r(1.0), r(2.0)]).is_err());
    }

    #[test]
    fn refinement_arithmetic() {
        let f = StepFunction::new(vec![0.0, 0.5, 1.0], vec![r(1.0), r(2.0)]).unwrap();
        let g = StepFunction::new(vec![0.0, 0.25, 1.0], vec![r(4.0), r(8.0)]).unwrap();
        let s = f.add(&g);
        assert_eq!(s.breakpoints(), &[0.0, 0.25, 0.5, 1.0]);
        assert_eq!(s.values(), &[r(5.0), r(9.0), r(10.0)]);
        assert_eq!(f.pairing(&g), 0.25 * 4.0 + 0.25 * 8.0 + 0.5 * 16.0);
    }
}
