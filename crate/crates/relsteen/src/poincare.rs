//! Truncated integer power series for Poincare-series bookkeeping.

use std::ops::{Add, Mul};

/// A power series truncated above a fixed degree cutoff, with nonnegative
/// integer coefficients. `coeffs[d]` is the coefficient of `t^d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    coeffs: Vec<u64>,
}

impl Series {
    pub fn zero(cutoff: usize) -> Self {
        Series {
            coeffs: vec![0; cutoff + 1],
        }
    }

    pub fn one(cutoff: usize) -> Self {
        let mut s = Series::zero(cutoff);
        s.coeffs[0] = 1;
        s
    }

    /// Highest tracked degree.
    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> u64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn add_term(&mut self, d: usize, c: u64) {
        if d < self.coeffs.len() {
            self.coeffs[d] += c;
        }
    }

    /// Multiply by `1 + t^k`.
    pub fn mul_one_plus(&self, k: usize) -> Series {
        let mut out = self.clone();
        if k == 0 {
            for c in out.coeffs.iter_mut() {
                *c *= 2;
            }
            return out;
        }
        for d in (k..out.coeffs.len()).rev() {
            out.coeffs[d] += self.coeffs[d - k];
        }
        out
    }

    /// Multiply by `1 / (1 - t^k)`, the geometric series in `t^k`.
    pub fn mul_geometric(&self, k: usize) -> Series {
        assert!(k >= 1, "geometric factor needs a positive degree");
        let mut out = self.clone();
        for d in k..out.coeffs.len() {
            out.coeffs[d] += out.coeffs[d - k];
        }
        out
    }

    pub fn pow(&self, e: u64) -> Series {
        let mut out = Series::one(self.cutoff());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        assert_eq!(self.cutoff(), rhs.cutoff(), "cutoff mismatch");
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        assert_eq!(self.cutoff(), rhs.cutoff(), "cutoff mismatch");
        let mut out = Series::zero(self.cutoff());
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().take(out.coeffs.len() - i).enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_powers() {
        // (1 + t^3)^2 = 1 + 2 t^3 + t^6
        let s = Series::one(6).mul_one_plus(3).pow(2);
        assert_eq!(s.coeffs(), &[1, 0, 0, 2, 0, 0, 1]);
    }

    #[test]
    fn geometric_is_all_ones() {
        let s = Series::one(5).mul_geometric(1);
        assert_eq!(s.coeffs(), &[1, 1, 1, 1, 1, 1]);
        let s = Series::one(6).mul_geometric(2);
        assert_eq!(s.coeffs(), &[1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn euler_identity_small() {
        // prod (1 + t^i) = prod 1/(1 - t^{2j-1}) up to degree 12
        let cutoff = 12;
        let mut lhs = Series::one(cutoff);
        for i in 1..=cutoff {
            lhs = lhs.mul_one_plus(i);
        }
        let mut rhs = Series::one(cutoff);
        let mut j = 1;
        while j <= cutoff {
            rhs = rhs.mul_geometric(j);
            j += 2;
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mul_matches_one_plus_shortcut() {
        let mut b = Series::one(8);
        b.add_term(2, 1);
        let mut c = Series::one(8);
        c.add_term(3, 1);
        assert_eq!(&b * &c, Series::one(8).mul_one_plus(2).mul_one_plus(3));
    }
}
