//! Exact arithmetic in the real representation rings of cyclic 2-groups.
//!
//! The real irreducibles of `C_{2^k}` are the trivial representation, the
//! sign representation `sigma` (for `k >= 1`), and the two-dimensional
//! rotation representations `lambda_j` for `1 <= j <= 2^{k-1} - 1`, where a
//! chosen generator acts by rotation through `2 pi j / 2^k`. A [`RealRep`]
//! is a virtual representation: an integer multiplicity for each irreducible,
//! kept in a canonical form so that equality is syntactic.
//!
//! Induction, restriction, and fixed-point dimensions are computed by
//! transporting a representation to its complex character-multiplicity
//! vector, where all three operations are index bookkeeping on residues
//! modulo the group orders. Everything stays in integer arithmetic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("C_2^{sub} is not contained in C_2^{sup}")]
    Containment { sub: u32, sup: u32 },
}

/// The subgroup `C_{2^k}` of an ambient cyclic 2-group, recorded by its
/// exponent `k`. Containment is the total order on exponents.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgroup(u32);

impl Subgroup {
    pub const TRIVIAL: Subgroup = Subgroup(0);

    pub fn new(exp: u32) -> Self {
        assert!(exp < 63, "subgroup exponent {exp} out of range");
        Subgroup(exp)
    }

    /// Exponent `k` of `C_{2^k}`.
    pub fn exp(self) -> u32 {
        self.0
    }

    pub fn order(self) -> u64 {
        1 << self.0
    }

    pub fn contains(self, other: Subgroup) -> bool {
        other.0 <= self.0
    }

    /// Index `[larger : self]`.
    pub fn index_in(self, larger: Subgroup) -> Result<u64, RepError> {
        if !larger.contains(self) {
            return Err(RepError::Containment {
                sub: self.0,
                sup: larger.0,
            });
        }
        Ok(1 << (larger.0 - self.0))
    }

    pub fn intersect(self, other: Subgroup) -> Subgroup {
        Subgroup(self.0.min(other.0))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.order())
    }
}

/// A virtual real representation of `C_{2^k}`, in canonical form.
///
/// The `lambda` vector always has length `max(2^{k-1} - 1, 0)`; rotation
/// indices outside `1..=2^{k-1}-1` are folded at construction time using
/// `lambda_0 = 2 * trivial`, `lambda_{2^{k-1}} = 2 * sigma`, and
/// `lambda_{2^k - j} = lambda_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RealRep {
    level: Subgroup,
    triv: i64,
    sign: i64,
    lambda: Vec<i64>,
}

fn lambda_len(level: Subgroup) -> usize {
    if level.exp() == 0 {
        0
    } else {
        (1usize << (level.exp() - 1)) - 1
    }
}

impl RealRep {
    pub fn zero(level: Subgroup) -> Self {
        RealRep {
            level,
            triv: 0,
            sign: 0,
            lambda: vec![0; lambda_len(level)],
        }
    }

    pub fn trivial(level: Subgroup, mult: i64) -> Self {
        let mut v = RealRep::zero(level);
        v.triv = mult;
        v
    }

    /// `mult` copies of the sign representation. Panics at level `C_1`,
    /// which has no sign representation.
    pub fn sign(level: Subgroup, mult: i64) -> Self {
        assert!(level.exp() >= 1, "C_1 has no sign representation");
        let mut v = RealRep::zero(level);
        v.sign = mult;
        v
    }

    /// `mult` copies of the rotation representation `lambda_index`, folded
    /// into canonical form. Any integer index is accepted.
    pub fn lambda(level: Subgroup, index: u64, mult: i64) -> Self {
        let mut v = RealRep::zero(level);
        v.add_lambda(index, mult);
        v
    }

    /// The regular representation `rho` of `C_{2^k}`.
    pub fn regular(level: Subgroup) -> Self {
        let mut v = RealRep::zero(level);
        v.triv = 1;
        if level.exp() >= 1 {
            v.sign = 1;
        }
        for m in v.lambda.iter_mut() {
            *m = 1;
        }
        v
    }

    /// `mult * rho_2` at level `C_2`.
    pub fn rho2(mult: i64) -> Self {
        let mut v = RealRep::zero(Subgroup::new(1));
        v.triv = mult;
        v.sign = mult;
        v
    }

    /// `i * rho_2 + 1` at level `C_2`, the degree of the suspended generator
    /// classes.
    pub fn rho2_plus_one(i: i64) -> Self {
        let mut v = RealRep::rho2(i);
        v.triv += 1;
        v
    }

    fn add_lambda(&mut self, index: u64, mult: i64) {
        let order = self.level.order();
        let idx = index % order;
        if idx == 0 {
            self.triv += 2 * mult;
        } else if 2 * idx == order {
            self.sign += 2 * mult;
        } else {
            let j = idx.min(order - idx) as usize;
            self.lambda[j - 1] += mult;
        }
    }

    pub fn level(&self) -> Subgroup {
        self.level
    }

    pub fn triv_mult(&self) -> i64 {
        self.triv
    }

    pub fn sign_mult(&self) -> i64 {
        self.sign
    }

    /// Multiplicity of `lambda_j` (canonical index, `1 <= j <= 2^{k-1}-1`).
    pub fn lambda_mult(&self, j: usize) -> i64 {
        self.lambda.get(j - 1).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> i64 {
        self.triv + self.sign + 2 * self.lambda.iter().sum::<i64>()
    }

    pub fn is_zero(&self) -> bool {
        self.triv == 0 && self.sign == 0 && self.lambda.iter().all(|&m| m == 0)
    }

    /// Multiplicity vector of the complexification over the complex
    /// characters `chi_0, ..., chi_{2^k - 1}` of `C_{2^k}`, where `chi_i`
    /// sends the generator to `exp(2 pi i sqrt(-1) / 2^k)^i`.
    pub fn to_complex(&self) -> Vec<i64> {
        let order = self.level.order() as usize;
        let mut c = vec![0i64; order];
        c[0] += self.triv;
        if self.level.exp() >= 1 {
            c[order / 2] += self.sign;
        }
        for (j0, &m) in self.lambda.iter().enumerate() {
            let j = j0 + 1;
            c[j] += m;
            c[order - j] += m;
        }
        c
    }

    /// Inverse of [`RealRep::to_complex`]. The vector must be symmetric
    /// under negation of the index, which holds for anything produced by
    /// induction or restriction of real representations.
    pub fn from_complex(level: Subgroup, mults: &[i64]) -> Self {
        let order = level.order() as usize;
        assert_eq!(mults.len(), order, "character vector length mismatch");
        for i in 1..order {
            debug_assert_eq!(mults[i], mults[order - i], "asymmetric character vector");
        }
        let mut v = RealRep::zero(level);
        v.triv = mults[0];
        if level.exp() >= 1 {
            v.sign = mults[order / 2];
        }
        let lam = lambda_len(level);
        v.lambda.copy_from_slice(&mults[1..1 + lam]);
        v
    }

    /// Character-theoretic induction up to `to >= level`. Linear in the
    /// representation; multiplies dimensions by the index.
    pub fn induce(&self, to: Subgroup) -> Result<RealRep, RepError> {
        if !to.contains(self.level) {
            return Err(RepError::Containment {
                sub: self.level.exp(),
                sup: to.exp(),
            });
        }
        let small = self.to_complex();
        let big_order = to.order() as usize;
        let mut big = vec![0i64; big_order];
        for (l, slot) in big.iter_mut().enumerate() {
            *slot = small[l % small.len()];
        }
        Ok(RealRep::from_complex(to, &big))
    }

    /// Character restriction down to `to <= level`. Preserves dimension.
    pub fn restrict(&self, to: Subgroup) -> Result<RealRep, RepError> {
        if !self.level.contains(to) {
            return Err(RepError::Containment {
                sub: to.exp(),
                sup: self.level.exp(),
            });
        }
        let big = self.to_complex();
        let small_order = to.order() as usize;
        let mut small = vec![0i64; small_order];
        for (i, &m) in big.iter().enumerate() {
            small[i % small_order] += m;
        }
        Ok(RealRep::from_complex(to, &small))
    }

    /// Dimension of the subspace fixed by `at <= level`: the multiplicity of
    /// the trivial character in the restriction. Additive in the
    /// representation.
    pub fn fixed_dim(&self, at: Subgroup) -> Result<i64, RepError> {
        Ok(self.restrict(at)?.triv)
    }
}

impl Add for RealRep {
    type Output = RealRep;
    fn add(self, rhs: RealRep) -> RealRep {
        assert_eq!(self.level, rhs.level, "representation levels differ");
        RealRep {
            level: self.level,
            triv: self.triv + rhs.triv,
            sign: self.sign + rhs.sign,
            lambda: self
                .lambda
                .iter()
                .zip(&rhs.lambda)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for RealRep {
    type Output = RealRep;
    fn sub(self, rhs: RealRep) -> RealRep {
        self + (-rhs)
    }
}

impl Neg for RealRep {
    type Output = RealRep;
    fn neg(mut self) -> RealRep {
        self.triv = -self.triv;
        self.sign = -self.sign;
        for m in self.lambda.iter_mut() {
            *m = -*m;
        }
        self
    }
}

impl Mul<i64> for RealRep {
    type Output = RealRep;
    fn mul(mut self, rhs: i64) -> RealRep {
        self.triv *= rhs;
        self.sign *= rhs;
        for m in self.lambda.iter_mut() {
            *m *= rhs;
        }
        self
    }
}

impl fmt::Display for RealRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        if self.triv != 0 {
            terms.push(self.triv.to_string());
        }
        match self.sign {
            0 => {}
            1 => terms.push("s".to_string()),
            -1 => terms.push("-s".to_string()),
            m => terms.push(format!("{m}s")),
        }
        for (j0, &m) in self.lambda.iter().enumerate() {
            let j = j0 + 1;
            match m {
                0 => {}
                1 => terms.push(format!("l{j}")),
                -1 => terms.push(format!("-l{j}")),
                m => terms.push(format!("{m}l{j}")),
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            if t.starts_with('-') {
                out.push_str(t);
            } else {
                out.push('+');
                out.push_str(t);
            }
        }
        write!(f, "{out}")
    }
}

/// The degree of an induced sphere `G_+ smash_H S^V`: a representation `V`
/// remembered together with the subgroup `H = V.level()` it lives over.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InducedDegree {
    rep: RealRep,
}

impl InducedDegree {
    pub fn new(rep: RealRep) -> Self {
        InducedDegree { rep }
    }

    /// The subgroup the degree is induced from.
    pub fn level(&self) -> Subgroup {
        self.rep.level()
    }

    pub fn rep(&self) -> &RealRep {
        &self.rep
    }

    /// Underlying dimension of the cell.
    pub fn dim(&self) -> i64 {
        self.rep.dim()
    }

    /// Fixed-point cell dimension at `at <= level()`.
    pub fn fixed_dim(&self, at: Subgroup) -> Result<i64, RepError> {
        self.rep.fixed_dim(at)
    }
}

impl fmt::Display for InducedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.level(), self.rep)
    }
}
