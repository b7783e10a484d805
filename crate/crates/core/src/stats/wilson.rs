use super::{Result, StatsError};

pub const DEFAULT_Z: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilsonInterval {
    pub lo: f64,
    pub hi: f64,
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, n: u64, z: f64) -> Result<WilsonInterval> {
    if n == 0 {
        return Err(StatsError::InvalidInput("n must be >= 1".into()));
    }
    if successes > n {
        return Err(StatsError::InvalidInput(format!("{successes} successes out of {n}")));
    }
    if !(z.is_finite() && z > 0.0) {
        return Err(StatsError::InvalidInput("z must be positive".into()));
    }
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let centre = (p + z2 / (2.0 * nf)) / denom;
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;

    let lo = if successes == 0 { 0.0 } else { (centre - half).clamp(0.0, p) };
    let hi = if successes == n { 1.0 } else { (centre + half).clamp(p, 1.0) };
    Ok(WilsonInterval { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundaries() {
        assert_eq!(wilson_interval(0, 10, DEFAULT_Z).unwrap().lo, 0.0);
        assert_eq!(wilson_interval(10, 10, DEFAULT_Z).unwrap().hi, 1.0);
        assert!(wilson_interval(0, 0, DEFAULT_Z).is_err());
        assert!(wilson_interval(3, 2, DEFAULT_Z).is_err());
    }

    #[test]
    fn closed_form_84_of_100() {
        // centre = (0.84 + 0.019208) / 1.038416, half = 1.96 * sqrt(0.001344 + 0.0000960400) / 1.038416
        let w = wilson_interval(84, 100, 1.96).unwrap();
        let denom = 1.0 + 1.96f64.powi(2) / 100.0;
        let centre = (0.84 + 1.96f64.powi(2) / 200.0) / denom;
        let half = 1.96 * (0.84 * 0.16 / 100.0 + 1.96f64.powi(2) / 40_000.0).sqrt() / denom;
        assert!((w.lo - (centre - half)).abs() < 1e-15);
        assert!((w.hi - (centre + half)).abs() < 1e-15);
        assert!((w.lo - 0.7557956).abs() < 1e-6, "{w:?}");
        assert!((w.hi - 0.8990480).abs() < 1e-6);
    }
}
