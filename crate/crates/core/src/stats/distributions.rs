//! Tail probabilities for the F, chi-square and studentized range
//! distributions.

use statrs::distribution::{ChiSquared, ContinuousCDF, FisherSnedecor};
use statrs::function::erf::erfc;
use statrs::function::gamma::ln_gamma;

/// Upper tail `P(F > f)` for `F(df1, df2)`.
pub fn f_sf(f: f64, df1: f64, df2: f64) -> f64 {
    if f.is_infinite() {
        return 0.0;
    }
    if f <= 0.0 {
        return 1.0;
    }
    FisherSnedecor::new(df1, df2)
        .map(|d| d.sf(f).clamp(0.0, 1.0))
        .unwrap_or(f64::NAN)
}

/// Upper tail `P(X > x)` for chi-square with `df` degrees of freedom.
pub fn chi2_sf(x: f64, df: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    ChiSquared::new(df)
        .map(|d| d.sf(x).clamp(0.0, 1.0))
        .unwrap_or(f64::NAN)
}

fn phi(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

fn simpson<F: FnMut(f64) -> f64>(lo: f64, hi: f64, n: usize, mut f: F) -> f64 {
    let n = n + n % 2;
    let h = (hi - lo) / n as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..n {
        let x = lo + i as f64 * h;
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    acc * h / 3.0
}

const Z_LIMIT: f64 = 8.5;
const INNER_STEPS: usize = 320;
const OUTER_STEPS: usize = 600;

/// Simpson nodes over `[-Z_LIMIT, Z_LIMIT]` with the parts of the
/// normal-range integrand that do not depend on the range `w`.
struct RangeGrid {
    z: Vec<f64>,
    /// Simpson weight × standard normal density at each node.
    weight: Vec<f64>,
    phi: Vec<f64>,
}

impl RangeGrid {
    fn new() -> Self {
        let h = 2.0 * Z_LIMIT / INNER_STEPS as f64;
        let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
        let mut g = RangeGrid { z: Vec::new(), weight: Vec::new(), phi: Vec::new() };
        for i in 0..=INNER_STEPS {
            let z = -Z_LIMIT + i as f64 * h;
            let simpson_w = if i == 0 || i == INNER_STEPS { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            g.z.push(z);
            g.weight.push(simpson_w * h / 3.0 * norm * (-0.5 * z * z).exp());
            g.phi.push(phi(z));
        }
        g
    }

    /// `P(range < w)` for `k` independent standard normals.
    fn cdf(&self, w: f64, k: usize) -> f64 {
        if w <= 0.0 {
            return 0.0;
        }
        let km1 = (k - 1) as i32;
        let mut v = 0.0;
        for i in 0..self.z.len() {
            if self.weight[i] == 0.0 {
                continue;
            }
            let d = (self.phi[i] - phi(self.z[i] - w)).max(0.0);
            v += self.weight[i] * d.powi(km1);
        }
        (k as f64 * v).clamp(0.0, 1.0)
    }
}

/// CDF of the studentized range `Q(k, df)`.
///
/// Integrates the normal-range CDF against the density of `s = sqrt(χ²_df / df)`
/// with composite Simpson rules. For `df > 25_000` the scale is treated as
/// known and the normal-range CDF is returned directly.
pub fn ptukey(q: f64, k: usize, df: f64) -> f64 {
    assert!(k >= 2, "studentized range needs at least two groups");
    if q <= 0.0 {
        return 0.0;
    }
    if !q.is_finite() {
        return 1.0;
    }
    let grid = RangeGrid::new();
    if df > 25_000.0 {
        return grid.cdf(q, k);
    }
    let half = df / 2.0;
    let log_c = half * df.ln() - ln_gamma(half) - (half - 1.0) * std::f64::consts::LN_2;
    let spread = 12.0 / (2.0 * df).sqrt();
    let lo = (1.0 - spread).max(0.0);
    let hi = 1.0 + spread * if df < 3.0 { 1.5 } else { 1.0 };
    let v = simpson(lo, hi, OUTER_STEPS, |s| {
        if s <= 0.0 {
            // density at 0 is finite only for df <= 1
            return if df <= 1.0 { log_c.exp() * grid.cdf(0.0, k) } else { 0.0 };
        }
        let log_f = log_c + (df - 1.0) * s.ln() - half * s * s;
        log_f.exp() * grid.cdf(q * s, k)
    });
    v.clamp(0.0, 1.0)
}

/// Upper tail of the studentized range.
pub fn ptukey_sf(q: f64, k: usize, df: f64) -> f64 {
    (1.0 - ptukey(q, k, df)).clamp(0.0, 1.0)
}
