use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of ℚ/ℤ, stored as a reduced fraction `num/den` with
/// `0 ≤ num < den`.
///
/// Phases `e^{2πi x}` are always carried in this additive form; conversion
/// to floating point happens only for display.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    num: i64,
    den: i64,
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, den: 1 };

    /// `num/den mod 1`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let num = num.mod_floor(&den);
        let g = num.gcd(&den).max(1);
        Phase {
            num: (num / g) as i64,
            den: (den / g) as i64,
        }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Order of the element in ℚ/ℤ.
    pub fn order(&self) -> i64 {
        self.den
    }

    pub fn times(&self, n: i64) -> Self {
        Self::from_i128(self.num as i128 * n as i128, self.den as i128)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        let l = (self.den as i128).lcm(&(rhs.den as i128));
        let a = self.num as i128 * (l / self.den as i128);
        let b = rhs.num as i128 * (l / rhs.den as i128);
        Phase::from_i128(a + b, l)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::from_i128(-(self.num as i128), self.den as i128)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl std::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ZERO, Add::add)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({}/{})", self.num, self.den)
    }
}

impl FromStr for Phase {
    type Err = Error;

    /// Accepts `a/b` or a bare integer (which is `0` in ℚ/ℤ).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::invalid(format!("not a rational number: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(Error::invalid(format!("zero denominator in {s:?}")));
                }
                Ok(Phase::new(n, d))
            }
            None => {
                let n: i64 = s.parse().map_err(|_| bad())?;
                Ok(Phase::new(n, 1))
            }
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduction_and_display() {
        assert_eq!(Phase::new(-1, 4).to_string(), "3/4");
        assert_eq!(Phase::new(6, 4).to_string(), "1/2");
        assert_eq!(Phase::new(5, 5), Phase::ZERO);
        assert_eq!(Phase::new(1, -3).to_string(), "2/3");
    }

    #[test]
    fn parsing() {
        assert_eq!("1/4".parse::<Phase>().unwrap(), Phase::new(1, 4));
        assert_eq!("-1/2".parse::<Phase>().unwrap(), Phase::new(1, 2));
        assert_eq!("7".parse::<Phase>().unwrap(), Phase::ZERO);
        assert!("1/0".parse::<Phase>().is_err());
        assert!("x".parse::<Phase>().is_err());
    }

    proptest! {
        #[test]
        fn group_laws(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30) {
            let x = Phase::new(a, b);
            let y = Phase::new(c, d);
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x + y - y, x);
            prop_assert_eq!(x + (-x), Phase::ZERO);
            prop_assert!(x.numer() >= 0 && x.numer() < x.denom());
            prop_assert_eq!(x.times(x.order()), Phase::ZERO);
        }
    }
}
