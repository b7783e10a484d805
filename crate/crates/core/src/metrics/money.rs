use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

const NANOS_PER_DOLLAR: i128 = 1_000_000_000;
const NANOS_PER_CENT: i128 = 10_000_000;

/// US dollars held as an exact count of nano-dollars.
///
/// Per-token prices are fractions of a cent, so sums are kept exact and
/// only rounded to cents for display and export.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Usd(i128);

impl Usd {
    pub const ZERO: Usd = Usd(0);

    pub const fn from_nanos(nanos: i128) -> Self {
        Usd(nanos)
    }

    pub const fn from_cents(cents: i64) -> Self {
        Usd(cents as i128 * NANOS_PER_CENT)
    }

    /// Nearest nano-dollar to `dollars`.
    pub fn from_dollars(dollars: f64) -> Self {
        Usd((dollars * NANOS_PER_DOLLAR as f64).round() as i128)
    }

    pub const fn nanos(self) -> i128 {
        self.0
    }

    /// `count` items at `unit_price` dollars each. The price is first
    /// rounded to the nano-dollar, then multiplied exactly.
    pub fn times(unit_price: f64, count: u64) -> Self {
        Usd(Usd::from_dollars(unit_price).0 * i128::from(count))
    }

    /// Rounded to whole cents, half away from zero.
    pub fn cents(self) -> i128 {
        let q = self.0 / NANOS_PER_CENT;
        let r = self.0 % NANOS_PER_CENT;
        if 2 * r.abs() >= NANOS_PER_CENT {
            q + self.0.signum()
        } else {
            q
        }
    }

    /// Cent-rounded value as a float, for tables.
    pub fn to_dollars(self) -> f64 {
        self.cents() as f64 / 100.0
    }

    /// Unrounded value as a float, for ratios.
    pub fn to_f64(self) -> f64 {
        self.0 as f64 / NANOS_PER_DOLLAR as f64
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }
}

impl Add for Usd {
    type Output = Usd;
    fn add(self, rhs: Usd) -> Usd {
        Usd(self.0 + rhs.0)
    }
}

impl Sub for Usd {
    type Output = Usd;
    fn sub(self, rhs: Usd) -> Usd {
        Usd(self.0 - rhs.0)
    }
}

impl Sum for Usd {
    fn sum<I: Iterator<Item = Usd>>(iter: I) -> Usd {
        iter.fold(Usd::ZERO, Add::add)
    }
}

impl fmt::Display for Usd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.cents();
        let sign = if c < 0 { "-" } else { "" };
        write!(f, "{sign}${}.{:02}", c.abs() / 100, c.abs() % 100)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_prices_sum_exactly() {
        // 0.1 + 0.2 style drift must not appear
        let a = Usd::times(0.00002, 100_000);
        let b = Usd::times(0.01, 500);
        let c = Usd::times(5.0, 10);
        assert_eq!(a + b + c, Usd::from_cents(5700));
    }

    #[test]
    fn cent_rounding_is_half_away_from_zero() {
        assert_eq!(Usd::from_nanos(5_000_000).cents(), 1);
        assert_eq!(Usd::from_nanos(4_999_999).cents(), 0);
        assert_eq!(Usd::from_nanos(-5_000_000).cents(), -1);
        assert_eq!(Usd::from_dollars(392.404).to_dollars(), 392.40);
    }

    #[test]
    fn display() {
        assert_eq!(Usd::from_cents(1_440_000).to_string(), "$14400.00");
        assert_eq!(Usd::from_cents(-5).to_string(), "-$0.05");
    }
}
