use std::collections::BTreeMap;

use super::{gauge_norm, gauge_norm_of_masses, SparseVector};
use crate::word::Word;
use crate::young::YoungFunction;

/// Finitely supported `ξ : Γ → ℓ^Φ(Γ)`; zero inner vectors are not stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CocycleVector {
    entries: BTreeMap<Word, SparseVector<Word>>,
}

impl CocycleVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn from_map(entries: BTreeMap<Word, SparseVector<Word>>) -> Self {
        Self { entries }
    }

    /// Sums inner vectors sharing an outer index.
    pub fn from_entries<T: IntoIterator<Item = (Word, SparseVector<Word>)>>(entries: T) -> Self {
        let mut out = Self::new();
        for (w, v) in entries {
            out.add_at(w, &v);
        }
        out
    }

    /// `ξ(w) += v`.
    pub fn add_at(&mut self, w: Word, v: &SparseVector<Word>) {
        if v.is_empty() {
            return;
        }
        match self.entries.get_mut(&w) {
            Some(cur) => {
                let sum = cur.add(v);
                if sum.is_empty() {
                    self.entries.remove(&w);
                } else {
                    *cur = sum;
                }
            }
            None => {
                self.entries.insert(w, v.clone());
            }
        }
    }

    pub fn get(&self, w: &Word) -> Option<&SparseVector<Word>> {
        self.entries.get(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &SparseVector<Word>)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, v) in &other.entries {
            out.add_at(w.clone(), v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, v) in &other.entries {
            out.add_at(w.clone(), &v.scale((-1.0).into()));
        }
        out
    }

    /// Left translation in both layers: `(π(g)ξ)(γ) = g·ξ(g⁻¹γ)`.
    pub fn translate(&self, g: &Word) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|(w, v)| (g.mul(w), v.reindex(|x| g.mul(x))))
                .collect(),
        }
    }

    /// Largest entrywise modulus of `self − other` over both layers.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other)
            .entries
            .values()
            .map(|v| v.max_modulus())
            .fold(0.0, f64::max)
    }
}

/// `‖ξ‖_(ΨΦ) = inf{b > 0 : Σ_γ Ψ(‖ξ(γ)‖_(Φ)/b) ≤ 1}`.
pub fn nested_gauge_norm(psi: &YoungFunction, phi: &YoungFunction, xi: &CocycleVector) -> f64 {
    let inner: Vec<f64> = xi.entries.values().map(|v| gauge_norm(phi, v)).collect();
    nested_gauge_norm_from_inner(psi, &group_equal(inner))
}

/// Outer gauge norm from `(multiplicity, inner norm)` pairs.
pub fn nested_gauge_norm_from_inner(psi: &YoungFunction, inner: &[(f64, f64)]) -> f64 {
    gauge_norm_of_masses(psi, inner)
}

/// Collapses repeated values into `(count, value)` pairs.
pub(crate) fn group_equal(mut values: Vec<f64>) -> Vec<(f64, f64)> {
    values.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, f64)> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some(last) if last.1 == v => last.0 += 1.0,
            _ => out.push((1.0, v)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::reduce;
    use num_complex::Complex64;

    fn w(s: &str) -> Word {
        reduce(s).unwrap()
    }

    #[test]
    fn nested_examples() {
        let (psi, phi) = (YoungFunction::Power(4.0), YoungFunction::Power(2.0));
        let one = Complex64::new(1.0, 0.0);
        let xi = CocycleVector::from_entries([
            (w("a"), SparseVector::dirac(w("b"), one)),
            (w("B"), SparseVector::dirac(w(""), one)),
        ]);
        let n = nested_gauge_norm(&psi, &phi, &xi);
        assert!((n - 2f64.powf(0.25)).abs() < 1e-12);
        assert_eq!(nested_gauge_norm(&psi, &phi, &CocycleVector::new()), 0.0);
        let single = CocycleVector::from_entries([(
            w(""),
            SparseVector::from_real([(w("a"), 3.0), (w("b"), 4.0)]),
        )]);
        assert!((nested_gauge_norm(&psi, &phi, &single) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn translation_is_a_left_action() {
        let xi = CocycleVector::from_entries([(w("ab"), SparseVector::from_real([(w("A"), 2.0)]))]);
        let (g, h) = (w("Ba"), w("bb"));
        let lhs = xi.translate(&h).translate(&g);
        let rhs = xi.translate(&g.mul(&h));
        assert_eq!(lhs, rhs);
        assert!(xi.sub(&xi).is_empty());
    }
}
