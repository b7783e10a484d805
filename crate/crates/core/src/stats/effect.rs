use std::fmt;

use super::{mean, sum_sq_dev, Result, StatsError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Magnitude {
    Negligible,
    Small,
    Medium,
    Large,
}

impl Magnitude {
    /// Conventional bands on `|d|`: 0.2, 0.5, 0.8.
    pub fn for_d(d: f64) -> Self {
        let a = d.abs();
        if a < 0.2 {
            Magnitude::Negligible
        } else if a < 0.5 {
            Magnitude::Small
        } else if a < 0.8 {
            Magnitude::Medium
        } else {
            Magnitude::Large
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Magnitude::Negligible => "negligible",
            Magnitude::Small => "small",
            Magnitude::Medium => "medium",
            Magnitude::Large => "large",
        }
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectSize {
    pub d: f64,
    pub magnitude: Magnitude,
}

/// Cohen's d with the pooled standard deviation.
pub fn cohens_d(a: &[f64], b: &[f64]) -> Result<EffectSize> {
    if a.len() < 2 || b.len() < 2 {
        return Err(StatsError::InvalidInput(
            "each sample needs at least two observations".into(),
        ));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(StatsError::InvalidInput("non-finite observation".into()));
    }
    let dof = (a.len() + b.len() - 2) as f64;
    let pooled = ((sum_sq_dev(a) + sum_sq_dev(b)) / dof).sqrt();
    if pooled == 0.0 {
        return Err(StatsError::DegenerateData("pooled standard deviation is 0".into()));
    }
    let d = (mean(a) - mean(b)) / pooled;
    Ok(EffectSize { d, magnitude: Magnitude::for_d(d) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_computed_pooled_sd() {
        let e = cohens_d(&[2.0, 4.0], &[0.0, 2.0]).unwrap();
        assert!((e.d - 2.0 / 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(e.magnitude, Magnitude::Large);
    }

    #[test]
    fn identical_samples() {
        let e = cohens_d(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(e.d, 0.0);
        assert_eq!(e.magnitude, Magnitude::Negligible);
    }

    #[test]
    fn antisymmetric() {
        let a = [1.0, 4.0, 2.5];
        let b = [0.5, 1.0, 2.0, 1.5];
        assert_eq!(cohens_d(&a, &b).unwrap().d, -cohens_d(&b, &a).unwrap().d);
    }

    #[test]
    fn bands() {
        assert_eq!(Magnitude::for_d(-0.19), Magnitude::Negligible);
        assert_eq!(Magnitude::for_d(0.2), Magnitude::Small);
        assert_eq!(Magnitude::for_d(0.79), Magnitude::Medium);
        assert_eq!(Magnitude::for_d(-0.8), Magnitude::Large);
    }

    #[test]
    fn zero_pooled_sd() {
        assert!(matches!(
            cohens_d(&[1.0, 1.0], &[2.0, 2.0]),
            Err(StatsError::DegenerateData(_))
        ));
    }
}
