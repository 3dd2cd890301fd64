//! The `RO(C_2)` grading lattice.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A virtual `RO(C_2)` degree `c + s*sigma`: `c` copies of the trivial
/// representation and `s` copies of the sign representation.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize,
)]
pub struct RoC2 {
    /// Multiplicity of the trivial representation.
    pub triv: i64,
    /// Multiplicity of the sign representation.
    pub sign: i64,
}

impl RoC2 {
    pub const ZERO: RoC2 = RoC2 { triv: 0, sign: 0 };

    pub fn new(triv: i64, sign: i64) -> Self {
        RoC2 { triv, sign }
    }

    /// `i * rho_2`, the `i`-fold regular representation of `C_2`.
    pub fn rho(i: i64) -> Self {
        RoC2 { triv: i, sign: i }
    }

    /// `i * rho_2 + 1`.
    pub fn rho_plus_one(i: i64) -> Self {
        RoC2 {
            triv: i + 1,
            sign: i,
        }
    }

    /// Underlying (non-equivariant) dimension.
    pub fn dim(self) -> i64 {
        self.triv + self.sign
    }

    /// Dimension of the `C_2`-fixed part.
    pub fn fixed_dim(self) -> i64 {
        self.triv
    }
}

impl Add for RoC2 {
    type Output = RoC2;
    fn add(self, rhs: RoC2) -> RoC2 {
        RoC2::new(self.triv + rhs.triv, self.sign + rhs.sign)
    }
}

impl AddAssign for RoC2 {
    fn add_assign(&mut self, rhs: RoC2) {
        self.triv += rhs.triv;
        self.sign += rhs.sign;
    }
}

impl Sub for RoC2 {
    type Output = RoC2;
    fn sub(self, rhs: RoC2) -> RoC2 {
        RoC2::new(self.triv - rhs.triv, self.sign - rhs.sign)
    }
}

impl Neg for RoC2 {
    type Output = RoC2;
    fn neg(self) -> RoC2 {
        RoC2::new(-self.triv, -self.sign)
    }
}

impl Mul<i64> for RoC2 {
    type Output = RoC2;
    fn mul(self, rhs: i64) -> RoC2 {
        RoC2::new(self.triv * rhs, self.sign * rhs)
    }
}

impl Sum for RoC2 {
    fn sum<I: Iterator<Item = RoC2>>(iter: I) -> RoC2 {
        iter.fold(RoC2::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for RoC2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.triv, self.sign) {
            (0, 0) => write!(f, "0"),
            (c, 0) => write!(f, "{c}"),
            (0, s) => write!(f, "{s}s"),
            (c, s) if s < 0 => write!(f, "{c}{s}s"),
            (c, s) => write!(f, "{c}+{s}s"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_conventions() {
        assert_eq!(RoC2::rho(3), RoC2::new(3, 3));
        assert_eq!(RoC2::rho_plus_one(2), RoC2::new(3, 2));
        assert_eq!(RoC2::rho_plus_one(2).dim(), 5);
        assert_eq!(RoC2::rho_plus_one(2).fixed_dim(), 3);
    }

    #[test]
    fn arithmetic() {
        let a = RoC2::new(2, 1);
        let b = RoC2::new(-1, 4);
        assert_eq!(a + b, RoC2::new(1, 5));
        assert_eq!(a - b, RoC2::new(3, -3));
        assert_eq!(a * 2, RoC2::new(4, 2));
        assert_eq!(-a, RoC2::new(-2, -1));
    }

    #[test]
    fn display() {
        assert_eq!(RoC2::ZERO.to_string(), "0");
        assert_eq!(RoC2::new(4, 2).to_string(), "4+2s");
        assert_eq!(RoC2::new(0, -1).to_string(), "-1s");
    }
}
