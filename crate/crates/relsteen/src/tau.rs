//! The square-free tau-monomial algebra and the geometric fixed-point
//! consistency checks.
//!
//! Monomials are products of an Euler-class power `a_sigma^e`, a square-free
//! set of exterior-looking classes `tau_i`, and polynomial classes `xi_i`.
//! Multiplication rewrites every square through the carry relation
//! `tau_i^2 = a_sigma * tau_{i+1}`: the tau-sets add like binary numbers,
//! and every carry emits one factor of `a_sigma`.
//!
//! Degrees follow the conventions `|tau_i| = (2^i - 1) rho_2 + 1`,
//! `|xi_i| = (2^i - 1) rho_2`, and `|a_sigma| = -sigma`.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::grading::RoC2;
use crate::poincare::Series;
use crate::reps::{RealRep, Subgroup};
use crate::splitting::Summand;

/// A monomial `a_sigma^e * tau_S * xi^alpha`. Tau indices are the set bits
/// of `tau_bits` (supported up to index 127, far beyond desk scale).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TauMonomial {
    a_sigma: u32,
    tau_bits: u128,
    /// Exponents of `xi_1, xi_2, ...`, trailing zeros trimmed.
    xi: Vec<u32>,
}

impl TauMonomial {
    pub fn one() -> Self {
        TauMonomial::default()
    }

    pub fn tau(index: u32) -> Self {
        assert!(index < 128, "tau index out of supported range");
        TauMonomial {
            tau_bits: 1 << index,
            ..Default::default()
        }
    }

    pub fn xi(index: u32, exp: u32) -> Self {
        assert!(index >= 1, "xi indices start at 1");
        let mut xi = vec![0; index as usize];
        xi[index as usize - 1] = exp;
        let mut m = TauMonomial {
            xi,
            ..Default::default()
        };
        m.trim();
        m
    }

    pub fn a_sigma(exp: u32) -> Self {
        TauMonomial {
            a_sigma: exp,
            ..Default::default()
        }
    }

    pub fn a_sigma_exp(&self) -> u32 {
        self.a_sigma
    }

    /// Sorted tau indices.
    pub fn tau_indices(&self) -> Vec<u32> {
        (0..128).filter(|&i| self.tau_bits >> i & 1 == 1).collect()
    }

    pub fn xi_exponents(&self) -> &[u32] {
        &self.xi
    }

    fn trim(&mut self) {
        while self.xi.last() == Some(&0) {
            self.xi.pop();
        }
    }

    /// Whether all tau indices are at least `floor`.
    pub fn respects_floor(&self, floor: u32) -> bool {
        floor == 0 || self.tau_bits.trailing_zeros() >= floor || self.tau_bits == 0
    }
}

impl fmt::Display for TauMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.a_sigma {
            0 => {}
            1 => parts.push("a".to_string()),
            e => parts.push(format!("a^{e}")),
        }
        for i in self.tau_indices() {
            parts.push(format!("t{i}"));
        }
        for (i0, &e) in self.xi.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", i0 + 1)),
                e => parts.push(format!("x{}^{e}", i0 + 1)),
            }
        }
        if parts.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&parts.join("*"))
    }
}

impl Serialize for TauMonomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("asigma", &self.a_sigma)?;
        map.serialize_entry("tau", &self.tau_indices())?;
        let xi: std::collections::BTreeMap<u32, u32> = self
            .xi
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i0, &e)| (i0 as u32 + 1, e))
            .collect();
        map.serialize_entry("xi", &xi)?;
        map.end()
    }
}

/// Product with carries. `index_floor` selects the family in play (0 for
/// the mod-2 family, 1 for the integral one) and is only a validity check
/// on the inputs; carries may propagate to arbitrarily high indices.
pub fn tau_multiply(x: &TauMonomial, y: &TauMonomial, index_floor: u32) -> TauMonomial {
    assert!(
        index_floor <= 1,
        "index floor selects tau_0 or tau_1 family"
    );
    debug_assert!(x.respects_floor(index_floor) && y.respects_floor(index_floor));

    let tau_bits = x
        .tau_bits
        .checked_add(y.tau_bits)
        .expect("tau index overflow");
    let carries = x.tau_bits.count_ones() + y.tau_bits.count_ones() - tau_bits.count_ones();

    let mut xi = vec![0u32; x.xi.len().max(y.xi.len())];
    for (i, slot) in xi.iter_mut().enumerate() {
        *slot = x.xi.get(i).copied().unwrap_or(0) + y.xi.get(i).copied().unwrap_or(0);
    }
    let mut out = TauMonomial {
        a_sigma: x.a_sigma + y.a_sigma + carries,
        tau_bits,
        xi,
    };
    out.trim();
    out
}

/// The `RO(C_2)` degree of a monomial. Indices must stay below 62 so the
/// degree coordinates fit in 64 bits.
pub fn degree_of(m: &TauMonomial) -> RoC2 {
    let mut deg = RoC2::new(0, -(m.a_sigma as i64));
    let mut bits = m.tau_bits;
    while bits != 0 {
        let i = bits.trailing_zeros();
        assert!(i < 62, "tau index too large for degree bookkeeping");
        bits &= bits - 1;
        deg += RoC2::new(1 << i, (1i64 << i) - 1);
    }
    for (i0, &e) in m.xi.iter().enumerate() {
        assert!(i0 < 61, "xi index too large for degree bookkeeping");
        deg += RoC2::rho((1i64 << (i0 + 1)) - 1) * e as i64;
    }
    deg
}

/// Degree consistency of the squaring relations, at two levels:
///
/// * in the representation ring of the ambient group,
///   `2 * Ind(i rho_2 + 1) = Ind((2i+1) rho_2 + 1) - Ind(sigma)`;
/// * at `C_2`, `2 |tau_i| = |a_sigma tau_{i+1}|`.
pub fn relation_degree_check(ambient: u32, i_max: u64) -> bool {
    let g = Subgroup::new(ambient);
    let ind = |v: RealRep| v.induce(g).expect("C_2 is contained in the ambient group");
    for i in 1..=i_max {
        let lhs = ind(RealRep::rho2_plus_one(i as i64)) * 2;
        let rhs =
            ind(RealRep::rho2_plus_one(2 * i as i64 + 1)) - ind(RealRep::sign(Subgroup::new(1), 1));
        if lhs != rhs {
            return false;
        }
    }
    for i in 1..=i_max.min(60) {
        let tau = TauMonomial::tau(i as u32);
        let square = tau_multiply(&tau, &tau, 1);
        let expected = tau_multiply(&TauMonomial::a_sigma(1), &TauMonomial::tau(i as u32 + 1), 1);
        if square != expected || degree_of(&square) != degree_of(&tau) * 2 {
            return false;
        }
    }
    true
}

/// Geometric fixed-point degree of a basis summand: `None` for induced
/// summands (proper stabilizer), otherwise the fixed-point dimension of its
/// degree.
pub fn gfp_summand(s: &Summand) -> Option<i64> {
    if s.stab.exp() < s.seq.ambient() {
        return None;
    }
    Some(
        s.deg
            .fixed_dim(s.stab)
            .expect("degree lives at the stabilizer level"),
    )
}

/// The Poincare-series identity for the geometric fixed points: the
/// exterior description `prod_{i >= 2} (1 + t^i)` agrees with the
/// polynomial description `(1 - t^2)^{-1} prod_{odd j >= 3} (1 - t^j)^{-1}`
/// coefficientwise up to `cutoff`.
pub fn gfp_poincare_check(cutoff: usize) -> bool {
    assert!(cutoff <= 64, "cutoff limited to desk scale");
    let mut lhs = Series::one(cutoff);
    for i in 2..=cutoff {
        lhs = lhs.mul_one_plus(i);
    }
    let mut rhs = Series::one(cutoff).mul_geometric(2);
    let mut j = 3;
    while j <= cutoff {
        rhs = rhs.mul_geometric(j);
        j += 2;
    }
    lhs == rhs
}

/// Degree of the image of the `i`-th fixed-point algebra generator in the
/// unoriented bordism ring: absent when `i` is odd or one less than a power
/// of two, otherwise `i`.
pub fn phi_of_a_map(i: u64) -> Option<u64> {
    assert!(i >= 1);
    if (i + 1).is_power_of_two() || i % 2 == 1 {
        None
    } else {
        Some(i)
    }
}
