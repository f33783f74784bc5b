use num_complex::Complex64;

/// Finitely supported vector, entries sorted by index, zeros never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector<I> {
    entries: Vec<(I, Complex64)>,
}

impl<I> Default for SparseVector<I> {
    fn default() -> Self {
        Self {
            entries: Vec::new(),
        }
    }
}

/// Phase `z/|z|`, with `sign(0) = 0`.
pub fn sign(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        z / r
    }
}

fn is_zero(z: Complex64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

impl<I: Ord + Clone> SparseVector<I> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sums repeated indices and drops zeros.
    pub fn from_entries<T: IntoIterator<Item = (I, Complex64)>>(entries: T) -> Self {
        let mut v: Vec<(I, Complex64)> = entries.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(I, Complex64)> = Vec::with_capacity(v.len());
        for (i, z) in v {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += z,
                _ => out.push((i, z)),
            }
        }
        out.retain(|(_, z)| !is_zero(*z));
        Self { entries: out }
    }

    pub fn from_real<T: IntoIterator<Item = (I, f64)>>(entries: T) -> Self {
        Self::from_entries(entries.into_iter().map(|(i, x)| (i, Complex64::new(x, 0.0))))
    }

    pub fn dirac(i: I, z: Complex64) -> Self {
        Self::from_entries([(i, z)])
    }

    /// Already sorted, duplicate-free entries; zeros are still dropped.
    pub(crate) fn from_sorted(mut entries: Vec<(I, Complex64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        entries.retain(|(_, z)| !is_zero(*z));
        Self { entries }
    }

    pub fn get(&self, i: &I) -> Complex64 {
        match self.entries.binary_search_by(|e| e.0.cmp(i)) {
            Ok(k) => self.entries[k].1,
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(I, Complex64)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(I, Complex64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|(_, z)| z.im == 0.0)
    }

    pub fn max_modulus(&self) -> f64 {
        self.entries.iter().map(|(_, z)| z.norm()).fold(0.0, f64::max)
    }

    fn merge(&self, other: &Self, sign_other: f64) -> Self {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take = if i == a.len() {
                std::cmp::Ordering::Greater
            } else if j == b.len() {
                std::cmp::Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match take {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0.clone(), b[j].1 * sign_other));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1 * sign_other));
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::from_sorted(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, -1.0)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_sorted(self.entries.iter().map(|(i, z)| (i.clone(), z * c)).collect())
    }

    /// Replaces each modulus `|z|` by `g(|z|)`, keeping the phase.
    pub fn map_moduli<G: Fn(f64) -> f64>(&self, g: G) -> Self {
        Self::from_sorted(
            self.entries
                .iter()
                .map(|(i, z)| (i.clone(), sign(*z) * g(z.norm())))
                .collect(),
        )
    }

    /// Moves every entry to a new index; `f` must be injective on the support.
    pub fn reindex<F: Fn(&I) -> I>(&self, f: F) -> Self {
        Self::from_entries(self.entries.iter().map(|(i, z)| (f(i), *z)))
    }

    /// `Σ |f_i g_i|`.
    pub fn pairing(&self, other: &Self) -> f64 {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut sum = 0.0;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    sum += (a[i].1 * b[j].1).norm();
                    i += 1;
                    j += 1;
                }
            }
        }
        sum
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_modulus()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn construction_merges_and_drops_zeros() {
        let v = SparseVector::from_entries([(3u64, c(1.0, 0.0)), (1, c(2.0, 0.0)), (3, c(-1.0, 0.0))]);
        assert_eq!(v.len(), 1);
        assert_eq!(v.get(&1), c(2.0, 0.0));
        assert_eq!(v.get(&3), c(0.0, 0.0));
    }

    #[test]
    fn arithmetic() {
        let a = SparseVector::from_real([(1u64, 1.0), (2, 2.0)]);
        let b = SparseVector::from_real([(2u64, 2.0), (5, 1.0)]);
        let s = a.add(&b);
        assert_eq!(s.get(&2), c(4.0, 0.0));
        let d = a.sub(&a);
        assert!(d.is_empty());
        assert_eq!(a.pairing(&b), 4.0);
        let i = a.scale(c(0.0, 1.0));
        assert_eq!(i.get(&1), c(0.0, 1.0));
    }

    #[test]
    fn phase_is_kept_by_modulus_maps() {
        let v = SparseVector::dirac(1u64, c(0.0, 3.0));
        let w = v.map_moduli(|t| t * t);
        assert_eq!(w.get(&1), c(0.0, 9.0));
        assert_eq!(sign(c(0.0, 0.0)), c(0.0, 0.0));
    }
}
