use crate::error::{domain, Result};

/// Convex piecewise-linear Young function.
///
/// Kinks `0 = k_0 < k_1 < ... < k_{n-1}` with slope `m_i` on `[k_i, k_{i+1}]`
/// (the last slope extends to infinity). A slope of `+inf` means the function
/// is `+inf` strictly beyond its kink, which is how indicator-type functions
/// and conjugates of functions with bounded slope are represented.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    kinks: Vec<f64>,
    slopes: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseLinear {
    /// Builds the function from breakpoints and slopes. A first breakpoint
    /// above zero means the function vanishes on `[0, t_0]`.
    pub fn new(breakpoints: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != slopes.len() {
            return domain("pwl needs matching, non-empty breakpoint and slope lists");
        }
        if breakpoints.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return domain("pwl breakpoints must be finite and non-negative");
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return domain("pwl breakpoints must be strictly increasing");
        }
        if slopes.iter().any(|m| m.is_nan() || *m < 0.0) {
            return domain("pwl slopes must be non-negative");
        }
        if slopes.windows(2).any(|w| w[0] > w[1]) {
            return domain("pwl slopes must be non-decreasing (convexity)");
        }
        let mut kinks = breakpoints;
        let mut slopes = slopes;
        if kinks[0] > 0.0 {
            kinks.insert(0, 0.0);
            slopes.insert(0, 0.0);
        }
        // Pieces after an infinite slope are unreachable.
        if let Some(first_inf) = slopes.iter().position(|m| m.is_infinite()) {
            kinks.truncate(first_inf + 1);
            slopes.truncate(first_inf + 1);
        }
        if *slopes.last().unwrap() <= 0.0 {
            return domain("pwl must grow without bound (last slope must be positive)");
        }
        Ok(Self::from_parts(kinks, slopes))
    }

    fn from_parts(kinks: Vec<f64>, slopes: Vec<f64>) -> Self {
        let mut values = Vec::with_capacity(kinks.len());
        values.push(0.0);
        for i in 1..kinks.len() {
            values.push(values[i - 1] + slopes[i - 1] * (kinks[i] - kinks[i - 1]));
        }
        Self {
            kinks,
            slopes,
            values,
        }
    }

    /// Secant interpolant of a convex function through `0` and `nodes`.
    /// The last secant slope continues past the final node.
    pub(crate) fn interpolant(nodes: &[f64], values: &[f64]) -> Self {
        let mut kinks = vec![0.0];
        let mut slopes = Vec::with_capacity(nodes.len());
        let mut prev_t = 0.0;
        let mut prev_v = 0.0;
        let mut max_slope: f64 = 0.0;
        for (&t, &v) in nodes.iter().zip(values) {
            let m = ((v - prev_v) / (t - prev_t)).max(max_slope);
            max_slope = m;
            slopes.push(m);
            kinks.push(t);
            prev_t = t;
            prev_v = v;
        }
        slopes.push(max_slope);
        Self::from_parts(kinks, slopes)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.kinks
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    fn piece(&self, t: f64) -> usize {
        self.kinks.partition_point(|&k| k <= t).saturating_sub(1)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let i = self.piece(t);
        let dt = t - self.kinks[i];
        if dt == 0.0 {
            return self.values[i];
        }
        let m = self.slopes[i];
        if m.is_infinite() {
            f64::INFINITY
        } else {
            self.values[i] + m * dt
        }
    }

    /// Right derivative.
    pub fn derivative(&self, t: f64) -> f64 {
        self.slopes[self.piece(t)]
    }

    /// Smallest `t` with `eval(t) >= y`.
    pub fn inverse(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        let i = self.values.partition_point(|&v| v < y);
        // values[i-1] < y <= values[i] (or y beyond the last kink).
        let j = i - 1;
        let m = self.slopes[j];
        if m.is_infinite() {
            return self.kinks[j];
        }
        let t = self.kinks[j] + (y - self.values[j]) / m;
        if i < self.kinks.len() {
            t.min(self.kinks[i])
        } else {
            t
        }
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.slopes.iter().all(|m| *m > 0.0 && m.is_finite())
    }

    /// Multiplies the function by `c > 0`.
    pub(crate) fn scaled(&self, c: f64) -> Self {
        let slopes = self.slopes.iter().map(|m| m * c).collect();
        Self::from_parts(self.kinks.clone(), slopes)
    }

    /// Exact Legendre transform: slopes become breakpoints and vice versa.
    pub fn conjugate(&self) -> Self {
        let n = self.kinks.len();
        let mut kinks = vec![0.0];
        let mut slopes = vec![self.kinks[0]];
        for i in 0..n {
            let m = self.slopes[i];
            if m.is_infinite() {
                break;
            }
            kinks.push(m);
            slopes.push(if i + 1 < n { self.kinks[i + 1] } else { f64::INFINITY });
        }
        // Drop zero-width pieces, keeping the later slope.
        let mut out_k: Vec<f64> = Vec::with_capacity(kinks.len());
        let mut out_m: Vec<f64> = Vec::with_capacity(kinks.len());
        for (k, m) in kinks.into_iter().zip(slopes) {
            if let Some(last) = out_k.last() {
                if *last >= k {
                    *out_m.last_mut().unwrap() = m;
                    continue;
                }
            }
            out_k.push(k);
            out_m.push(m);
        }
        Self::from_parts(out_k, out_m)
    }
}
