//! `C_2`-equivariant functions `G -> {a, b}` and finitely supported
//! sequences of them.
//!
//! A `C_2`-equivariant map from `G = C_{2^n}` to a two-point set with
//! trivial action is constant on `C_2`-cosets, so an [`EqFn`] is stored as a
//! word of length `2^{n-1}` over `{a, b}`, position `j` holding the value on
//! the coset `g^j C_2`. The `G`-action is cyclic rotation of the word, and
//! every function is stabilized at least by `C_2`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::reps::{InducedDegree, RealRep, Subgroup};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EqFnError {
    #[error("group exponent n={0} out of supported range 1..=6")]
    ExponentRange(u32),
    #[error("invalid function word {0:?}: expected a power-of-two length over {{a, b}}")]
    InvalidWord(String),
    #[error("sequence entry at ambient n={entry} does not match sequence ambient n={seq}")]
    AmbientMismatch { entry: u32, seq: u32 },
}

pub const MAX_EXPONENT: u32 = 6;

fn check_exponent(n: u32) -> Result<(), EqFnError> {
    if (1..=MAX_EXPONENT).contains(&n) {
        Ok(())
    } else {
        Err(EqFnError::ExponentRange(n))
    }
}

/// A `C_2`-equivariant function `C_{2^n} -> {a, b}`, as a bitmask on the
/// cosets `G/C_2`. Bit `j` set means the value at `g^j C_2` is `a`.
///
/// The word length is `2^{n-1}`, never zero, so there is no `is_empty`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct EqFn {
    n: u32,
    bits: u32,
}

impl EqFn {
    pub fn from_bits(n: u32, bits: u32) -> Result<Self, EqFnError> {
        check_exponent(n)?;
        Ok(EqFn {
            n,
            bits: bits & Self::mask_for(n),
        })
    }

    pub fn constant_a(n: u32) -> Result<Self, EqFnError> {
        EqFn::from_bits(n, u32::MAX)
    }

    pub fn constant_b(n: u32) -> Result<Self, EqFnError> {
        EqFn::from_bits(n, 0)
    }

    fn mask_for(n: u32) -> u32 {
        let len = 1u32 << (n - 1);
        if len == 32 {
            u32::MAX
        } else {
            (1 << len) - 1
        }
    }

    /// Ambient exponent `n`.
    pub fn ambient(&self) -> u32 {
        self.n
    }

    /// Word length `2^{n-1}`, always at least one.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u32 {
        1 << (self.n - 1)
    }

    pub fn value_is_a(&self, pos: u32) -> bool {
        (self.bits >> pos) & 1 == 1
    }

    /// Number of `a`-positions in the word.
    pub fn a_count(&self) -> u32 {
        self.bits.count_ones()
    }

    /// `|f^{-1}(a)|` as a subset of the group: twice the `a`-positions.
    pub fn preimage_a(&self) -> u64 {
        2 * self.a_count() as u64
    }

    pub fn is_constant_b(&self) -> bool {
        self.bits == 0
    }

    pub fn is_constant_a(&self) -> bool {
        self.bits == Self::mask_for(self.n)
    }

    /// Rotate the word: the generator of `G` shifts positions by one.
    pub fn rotate(&self, r: u32) -> EqFn {
        let len = self.len();
        let r = r % len;
        if r == 0 {
            return *self;
        }
        let bits = ((self.bits << r) | (self.bits >> (len - r))) & Self::mask_for(self.n);
        EqFn { n: self.n, bits }
    }

    /// The largest subgroup `C_{2^k}` fixing the function under rotation.
    /// Contains `C_2` for every function.
    pub fn stabilizer(&self) -> Subgroup {
        let mut p = 1u32;
        while self.rotate(p) != *self {
            p *= 2;
        }
        Subgroup::new(self.n - p.trailing_zeros())
    }

    pub fn orbit_size(&self) -> u64 {
        1 << (self.n - self.stabilizer().exp())
    }

    /// Lexicographically minimal rotation, with `a < b`.
    pub fn canonical(&self) -> EqFn {
        (0..self.len())
            .map(|r| self.rotate(r))
            .min_by(|x, y| x.word_cmp(y))
            .expect("nonempty rotation set")
    }

    fn word_cmp(&self, other: &EqFn) -> Ordering {
        debug_assert_eq!(self.n, other.n);
        for pos in 0..self.len() {
            // 'a' sorts before 'b'
            let (sa, oa) = (self.value_is_a(pos), other.value_is_a(pos));
            match (sa, oa) {
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                _ => {}
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for EqFn {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EqFn {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.word_cmp(other))
    }
}

impl fmt::Display for EqFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pos in 0..self.len() {
            f.write_str(if self.value_is_a(pos) { "a" } else { "b" })?;
        }
        Ok(())
    }
}

impl FromStr for EqFn {
    type Err = EqFnError;

    fn from_str(s: &str) -> Result<Self, EqFnError> {
        let len = s.len() as u32;
        if !len.is_power_of_two() || len > 32 {
            return Err(EqFnError::InvalidWord(s.to_string()));
        }
        let n = len.trailing_zeros() + 1;
        let mut bits = 0u32;
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                'a' => bits |= 1 << pos,
                'b' => {}
                _ => return Err(EqFnError::InvalidWord(s.to_string())),
            }
        }
        EqFn::from_bits(n, bits)
    }
}

impl Serialize for EqFn {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for EqFn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// All `2^{2^{n-1}}` equivariant functions, each exactly once, in word
/// order.
pub fn enumerate_eqfns(n: u32) -> Result<Vec<EqFn>, EqFnError> {
    check_exponent(n)?;
    let len = 1u64 << (n - 1);
    let total = 1u64 << len;
    let mut out = Vec::with_capacity(total as usize);
    for bits in 0..total {
        out.push(EqFn::from_bits(n, bits as u32)?);
    }
    out.sort();
    Ok(out)
}

/// One rotation orbit of equivariant functions: canonical representative,
/// stabilizer, and orbit size. `orbit_size * |stabilizer| = 2^n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub rep: EqFn,
    pub stab: Subgroup,
    pub size: u64,
}

/// All rotation orbits for ambient exponent `n`, sorted by representative.
pub fn orbits(n: u32) -> Result<Vec<OrbitRecord>, EqFnError> {
    check_exponent(n)?;
    let len = 1u64 << (n - 1);
    let total = 1u64 << len;
    let mut out = Vec::new();
    for bits in 0..total {
        let f = EqFn::from_bits(n, bits as u32)?;
        if f.canonical() == f {
            out.push(OrbitRecord {
                rep: f,
                stab: f.stabilizer(),
                size: f.orbit_size(),
            });
        }
    }
    out.sort_by_key(|rec| rec.rep);
    Ok(out)
}

/// Degree `||f_i||` of the summand attached to a single function at
/// generator degree `gen_degree`: the induced representation
/// `(|f^{-1}(a)| / |H_f|) * Ind_{C_2}^{H_f}(gen_degree * rho_2 + 1)`.
///
/// A constant-`b` function yields the zero representation at the full
/// stabilizer level.
pub fn degree_single(f: &EqFn, gen_degree: u64) -> InducedDegree {
    let stab = f.stabilizer();
    let pre = f.preimage_a();
    debug_assert_eq!(pre % stab.order(), 0, "a-preimage is a free stabilizer set");
    let mult = (pre / stab.order()) as i64;
    let v = RealRep::rho2_plus_one(gen_degree as i64)
        .induce(stab)
        .expect("stabilizer contains C_2");
    InducedDegree::new(v * mult)
}

/// A finitely supported sequence of equivariant functions; entries beyond
/// the stored ones are implicitly the constant function at `b`, and trailing
/// constant-`b` entries are trimmed off.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EqFnSeq {
    n: u32,
    entries: Vec<EqFn>,
}

impl EqFnSeq {
    pub fn new(n: u32, mut entries: Vec<EqFn>) -> Result<Self, EqFnError> {
        check_exponent(n)?;
        for e in &entries {
            if e.ambient() != n {
                return Err(EqFnError::AmbientMismatch {
                    entry: e.ambient(),
                    seq: n,
                });
            }
        }
        while entries.last().is_some_and(EqFn::is_constant_b) {
            entries.pop();
        }
        Ok(EqFnSeq { n, entries })
    }

    pub fn empty(n: u32) -> Result<Self, EqFnError> {
        EqFnSeq::new(n, Vec::new())
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    /// Number of materialized entries (after trailing-`b` trimming).
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[EqFn] {
        &self.entries
    }

    /// Entry at 1-based slot `i`; slots beyond the stored list are the
    /// constant function at `b`.
    pub fn entry(&self, slot: usize) -> EqFn {
        assert!(slot >= 1, "slots are 1-based");
        self.entries
            .get(slot - 1)
            .copied()
            .unwrap_or_else(|| EqFn::constant_b(self.n).expect("validated ambient"))
    }

    /// Simultaneous rotation of all entries.
    pub fn rotate(&self, r: u32) -> EqFnSeq {
        EqFnSeq {
            n: self.n,
            entries: self.entries.iter().map(|f| f.rotate(r)).collect(),
        }
    }

    /// Lexicographically minimal simultaneous rotation.
    pub fn canonical(&self) -> EqFnSeq {
        let len = 1u32 << (self.n - 1);
        (0..len)
            .map(|r| self.rotate(r))
            .min()
            .expect("nonempty rotation set")
    }

    /// Intersection of the entry stabilizers; the empty sequence is fixed by
    /// all of `G`.
    pub fn stabilizer(&self) -> Subgroup {
        self.entries
            .iter()
            .map(EqFn::stabilizer)
            .fold(Subgroup::new(self.n), Subgroup::intersect)
    }

    pub fn orbit_size(&self) -> u64 {
        1 << (self.n - self.stabilizer().exp())
    }

    /// Degree `||f||` with a custom generator-degree list: the sum over
    /// non-constant entries of `Res` applied to each single-entry degree,
    /// all restricted to the common stabilizer.
    pub fn degree_with(&self, degree_of_slot: impl Fn(usize) -> u64) -> InducedDegree {
        let stab = self.stabilizer();
        let mut total = RealRep::zero(stab);
        for (idx, f) in self.entries.iter().enumerate() {
            if f.is_constant_b() {
                continue;
            }
            let single = degree_single(f, degree_of_slot(idx + 1));
            let res = single
                .rep()
                .restrict(stab)
                .expect("common stabilizer is contained in each entry stabilizer");
            total = total + res;
        }
        InducedDegree::new(total)
    }

    /// Degree `||f||` with the default generator-degree list `d_i = i`.
    pub fn degree(&self) -> InducedDegree {
        self.degree_with(|i| i as u64)
    }
}

impl fmt::Display for EqFnSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("()");
        }
        let words: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", words.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(word: &str) -> EqFn {
        word.parse().unwrap()
    }

    fn seq(n: u32, words: &[&str]) -> EqFnSeq {
        EqFnSeq::new(n, words.iter().map(|w| f(w)).collect()).unwrap()
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_eqfns(1).unwrap().len(), 2);
        assert_eq!(enumerate_eqfns(2).unwrap().len(), 4);
        assert_eq!(enumerate_eqfns(3).unwrap().len(), 16);
        assert_eq!(enumerate_eqfns(0), Err(EqFnError::ExponentRange(0)));
        assert_eq!(enumerate_eqfns(7), Err(EqFnError::ExponentRange(7)));
    }

    #[test]
    fn words_round_trip() {
        for word in ["a", "b", "ab", "aabb", "abababab"] {
            assert_eq!(f(word).to_string(), word);
        }
        assert!("abc".parse::<EqFn>().is_err());
        assert!("aba".parse::<EqFn>().is_err());
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(f("aa").stabilizer(), Subgroup::new(2));
        assert_eq!(f("ab").stabilizer(), Subgroup::new(1));
        assert_eq!(f("abab").stabilizer(), Subgroup::new(2));
        assert_eq!(f("aabb").stabilizer(), Subgroup::new(1));
        assert_eq!(f("a").stabilizer(), Subgroup::new(1));
        assert_eq!(f("bbbb").stabilizer(), Subgroup::new(3));
    }

    #[test]
    fn stabilizer_matches_brute_force_action_check() {
        for n in 1..=4u32 {
            for g in enumerate_eqfns(n).unwrap() {
                // largest k such that the generator of C_{2^k}, which rotates
                // the word by 2^{n-k}, fixes it
                let mut best = 0;
                for k in 0..=n {
                    let r = (1u64 << (n - k)) % g.len() as u64;
                    if g.rotate(r as u32) == g {
                        best = best.max(k);
                    }
                }
                assert_eq!(g.stabilizer().exp(), best, "word {g}");
                assert_eq!(g.orbit_size() * g.stabilizer().order(), 1 << n);
            }
        }
    }

    #[test]
    fn orbit_counts_match_necklace_formula() {
        // (1/L) sum_{d | L} phi(d) 2^{L/d}
        fn necklaces(l: u64) -> u64 {
            let phi = |mut m: u64| {
                let mut result = m;
                let mut p = 2;
                while p * p <= m {
                    if m.is_multiple_of(p) {
                        while m.is_multiple_of(p) {
                            m /= p;
                        }
                        result -= result / p;
                    }
                    p += 1;
                }
                if m > 1 {
                    result -= result / m;
                }
                result
            };
            let mut sum = 0;
            let mut d = 1;
            while d <= l {
                if l.is_multiple_of(d) {
                    sum += phi(d) * (1u64 << (l / d));
                }
                d += 1;
            }
            sum / l
        }

        let expected = [2u64, 3, 6, 36];
        for n in 1..=4u32 {
            let orbs = orbits(n).unwrap();
            assert_eq!(orbs.len() as u64, expected[n as usize - 1]);
            assert_eq!(orbs.len() as u64, necklaces(1 << (n - 1)));
            let total: u64 = orbs.iter().map(|o| o.size).sum();
            assert_eq!(total, 1 << (1u64 << (n - 1)));
        }
    }

    #[test]
    fn orbit_examples() {
        let orbs = orbits(1).unwrap();
        assert_eq!(orbs.len(), 2);
        assert!(orbs.iter().all(|o| o.stab == Subgroup::new(1)));

        let orbs = orbits(2).unwrap();
        let summary: Vec<(String, u32, u64)> = orbs
            .iter()
            .map(|o| (o.rep.to_string(), o.stab.exp(), o.size))
            .collect();
        assert_eq!(
            summary,
            vec![
                ("aa".to_string(), 2, 1),
                ("ab".to_string(), 1, 2),
                ("bb".to_string(), 2, 1),
            ]
        );
    }

    #[test]
    fn degree_single_examples() {
        let d = degree_single(&f("ab"), 1);
        assert_eq!(d.level(), Subgroup::new(1));
        assert_eq!(d.rep(), &RealRep::rho2_plus_one(1));
        assert_eq!(d.dim(), 3);

        let d = degree_single(&f("aa"), 1);
        assert_eq!(d.level(), Subgroup::new(2));
        assert_eq!(
            d.rep(),
            &RealRep::rho2_plus_one(1).induce(Subgroup::new(2)).unwrap()
        );
        assert_eq!(d.dim(), 6);

        let d = degree_single(&f("aabb"), 2);
        assert_eq!(d.level(), Subgroup::new(1));
        assert_eq!(d.rep(), &(RealRep::rho2_plus_one(2) * 2));
        assert_eq!(d.dim(), 10);
    }

    #[test]
    fn degree_single_dim_formula_exhaustive() {
        // dim ||f_i|| = (|f^{-1}(a)| / 2) * (2i + 1), independent of the level
        for n in 1..=4u32 {
            for g in enumerate_eqfns(n).unwrap() {
                for i in 1..=8u64 {
                    let d = degree_single(&g, i);
                    assert_eq!(
                        d.dim() as u64,
                        g.a_count() as u64 * (2 * i + 1),
                        "word {g}, i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn degree_and_stabilizer_constant_on_orbits() {
        for n in 1..=3u32 {
            for g in enumerate_eqfns(n).unwrap() {
                for i in 1..=3u64 {
                    let d = degree_single(&g, i);
                    for r in 0..g.len() {
                        let rot = g.rotate(r);
                        assert_eq!(rot.stabilizer(), g.stabilizer());
                        assert_eq!(degree_single(&rot, i), d);
                    }
                }
            }
        }
    }

    #[test]
    fn seq_trimming_and_entry_access() {
        let s = seq(2, &["ab", "bb", "bb"]);
        assert_eq!(s.len(), 1);
        assert_eq!(s.entry(1), f("ab"));
        assert_eq!(s.entry(5), f("bb"));

        let s = seq(2, &["bb", "aa"]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.entry(1), f("bb"));
    }

    #[test]
    fn seq_stabilizers() {
        assert_eq!(seq(2, &["ab"]).stabilizer(), Subgroup::new(1));
        assert_eq!(seq(3, &["abab", "aabb"]).stabilizer(), Subgroup::new(1));
        assert_eq!(seq(2, &[]).stabilizer(), Subgroup::new(2));
    }

    #[test]
    fn seq_degree_examples() {
        let d = seq(2, &["ab"]).degree();
        assert_eq!(d.level(), Subgroup::new(1));
        assert_eq!(d.rep(), &RealRep::rho2_plus_one(1));
        assert_eq!(d.dim(), 3);

        // (aa, ab): restriction of the induced part plus the slot-2 part
        let d = seq(2, &["aa", "ab"]).degree();
        assert_eq!(d.level(), Subgroup::new(1));
        let expected = RealRep::rho2_plus_one(1)
            .induce(Subgroup::new(2))
            .unwrap()
            .restrict(Subgroup::new(1))
            .unwrap()
            + RealRep::rho2_plus_one(2);
        assert_eq!(d.rep(), &expected);
        assert_eq!(d.dim(), 11);

        // (bb, aa): only slot 2 contributes, at the full group level
        let d = seq(2, &["bb", "aa"]).degree();
        assert_eq!(d.level(), Subgroup::new(2));
        assert_eq!(
            d.rep(),
            &RealRep::rho2_plus_one(2).induce(Subgroup::new(2)).unwrap()
        );
        assert_eq!(d.dim(), 10);

        // empty sequence: zero at the full group level
        let d = seq(2, &[]).degree();
        assert_eq!(d.level(), Subgroup::new(2));
        assert!(d.rep().is_zero());
    }

    #[test]
    fn seq_degree_additive_in_dims() {
        for n in 1..=3u32 {
            let fns = enumerate_eqfns(n).unwrap();
            for g1 in &fns {
                for g2 in &fns {
                    let s = EqFnSeq::new(n, vec![*g1, *g2]).unwrap();
                    let expected: i64 = (1..=s.len())
                        .map(|slot| degree_single(&s.entry(slot), slot as u64).dim())
                        .sum();
                    assert_eq!(s.degree().dim(), expected);
                }
            }
        }
    }

    #[test]
    fn seq_canonical_is_orbit_invariant() {
        for n in 2..=3u32 {
            let fns = enumerate_eqfns(n).unwrap();
            for g1 in &fns {
                for g2 in &fns {
                    let s = EqFnSeq::new(n, vec![*g1, *g2]).unwrap();
                    let canon = s.canonical();
                    for r in 0..(1u32 << (n - 1)) {
                        assert_eq!(s.rotate(r).canonical(), canon);
                        assert_eq!(s.rotate(r).stabilizer(), s.stabilizer());
                        assert_eq!(s.rotate(r).degree(), s.degree());
                    }
                }
            }
        }
    }

    #[test]
    fn json_forms() {
        let rec = OrbitRecord {
            rep: f("ab"),
            stab: Subgroup::new(1),
            size: 2,
        };
        let json = serde_json::to_value(&rec).unwrap();
        assert_eq!(json, serde_json::json!({"rep": "ab", "stab": 1, "size": 2}));
        let back: OrbitRecord = serde_json::from_value(json).unwrap();
        assert_eq!(back, rec);
    }
}
