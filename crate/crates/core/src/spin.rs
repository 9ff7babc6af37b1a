use crate::error::{Error, Result};
use std::fmt;

/// A spin magnitude s >= 1/2, stored exactly as the integer 2s so that
/// half-integer bookkeeping never touches floating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinMagnitude {
    twice_s: u32,
}

impl SpinMagnitude {
    /// Spin 1/2.
    pub const HALF: SpinMagnitude = SpinMagnitude { twice_s: 1 };
    /// Spin 1.
    pub const ONE: SpinMagnitude = SpinMagnitude { twice_s: 2 };

    pub fn from_twice_s(twice_s: u32) -> Result<Self> {
        if twice_s == 0 {
            return Err(Error::InvalidSpin(twice_s));
        }
        Ok(Self { twice_s })
    }

    pub fn twice_s(self) -> u32 {
        self.twice_s
    }

    /// s as a float.
    pub fn value(self) -> f64 {
        f64::from(self.twice_s) / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.twice_s.is_multiple_of(2)
    }

    /// Level count 2s + 1 of the lone spin.
    pub fn multiplicity(self) -> usize {
        self.twice_s as usize + 1
    }

    /// Level count 2(2s + 1) of the spin-1/2 x spin-s pair.
    pub fn coupled_levels(self) -> usize {
        2 * self.multiplicity()
    }
}

impl fmt::Display for SpinMagnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_s.is_multiple_of(2) {
            write!(f, "{}", self.twice_s / 2)
        } else {
            write!(f, "{}/2", self.twice_s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero() {
        assert!(SpinMagnitude::from_twice_s(0).is_err());
    }

    #[test]
    fn level_counts() {
        let s = SpinMagnitude::from_twice_s(3).unwrap(); // s = 3/2
        assert_eq!(s.multiplicity(), 4);
        assert_eq!(s.coupled_levels(), 8);
        assert!(!s.is_integer());
        assert_eq!(s.to_string(), "3/2");
        assert_eq!(SpinMagnitude::ONE.to_string(), "1");
    }
}
