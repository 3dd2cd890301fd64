//! Koszul homology over `GF(2)` for the Hurewicz map.
//!
//! The complex is the exterior algebra on classes `e_1, ..., e_N` tensored
//! with the polynomial algebra on `m_1, ..., m_N`, with differential
//! `d(e_i) = hurewicz(i)` extended as a derivation. Both `e_i` and `m_i` sit
//! in internal degree `i * rho_2`; `e_i` has homological degree one. The
//! differential preserves the internal `RO(C_2)` degree and drops the
//! homological degree by one, so each bidegree block is an independent
//! `GF(2)` linear-algebra problem.
//!
//! The standard Hurewicz map sends `e_i` to `m_i` except when `i` is one
//! less than a power of two, where it vanishes; those indices are exactly
//! the ones whose exterior and polynomial classes survive to homology.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::Mat2;
use crate::grading::RoC2;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KoszulError {
    #[error("bidegree ({degree}, s={s}) holds {count} monomials, above the limit {limit}")]
    BlockTooLarge {
        degree: RoC2,
        s: u32,
        count: usize,
        limit: usize,
    },
}

/// Default cap on the number of monomials in a single bidegree block.
pub const DEFAULT_BLOCK_LIMIT: usize = 1_000_000;

/// The generator data of the complex: degrees of the polynomial classes and
/// the Hurewicz images of the exterior classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PolyGenerators {
    hurewicz: HurewiczMap,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HurewiczMap {
    /// `e_i -> m_i`, except zero when `i = 2^k - 1`.
    Standard,
    /// `e_i -> m_i` for every `i`; the full regular sequence, whose homology
    /// is the ground field.
    FullRegular,
}

impl PolyGenerators {
    pub fn standard() -> Self {
        PolyGenerators {
            hurewicz: HurewiczMap::Standard,
        }
    }

    pub fn full_regular() -> Self {
        PolyGenerators {
            hurewicz: HurewiczMap::FullRegular,
        }
    }

    /// Internal degree of the exterior class `e_i`.
    pub fn e_degree(&self, i: usize) -> RoC2 {
        RoC2::rho(i as i64)
    }

    /// Internal degree of the polynomial class `m_i`.
    pub fn m_degree(&self, i: usize) -> RoC2 {
        RoC2::rho(i as i64)
    }

    /// The image of `e_i` under the differential: `Some(i)` for `m_i`, or
    /// `None` for zero.
    pub fn hurewicz_image(&self, i: usize) -> Option<usize> {
        match self.hurewicz {
            HurewiczMap::Standard if (i as u64 + 1).is_power_of_two() => None,
            _ => Some(i),
        }
    }
}

/// A basis monomial `e_S * m^alpha`: a square-free exterior subset and a
/// polynomial multi-exponent, both over generator indices `1..=N`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    /// Sorted exterior indices.
    pub ext: Vec<usize>,
    /// Polynomial exponents, slot `i` at position `i - 1`, trailing zeros
    /// trimmed.
    pub poly: Vec<u32>,
}

impl Monomial {
    /// Weight in `rho_2` units: the internal degree is `weight * rho_2`.
    pub fn weight(&self) -> u64 {
        let e: u64 = self.ext.iter().map(|&i| i as u64).sum();
        let p: u64 = self
            .poly
            .iter()
            .enumerate()
            .map(|(i0, &a)| (i0 as u64 + 1) * a as u64)
            .sum();
        e + p
    }

    fn times_m(&self, i: usize) -> Monomial {
        let mut poly = self.poly.clone();
        if poly.len() < i {
            poly.resize(i, 0);
        }
        poly[i - 1] += 1;
        Monomial {
            ext: self.ext.clone(),
            poly,
        }
    }

    fn without_e(&self, i: usize) -> Monomial {
        Monomial {
            ext: self.ext.iter().copied().filter(|&j| j != i).collect(),
            poly: self.poly.clone(),
        }
    }
}

/// Bigraded ranks: `(internal RO(C_2) degree, homological degree) -> rank`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BigradedRanks(pub BTreeMap<(RoC2, u32), u64>);

impl BigradedRanks {
    pub fn rank(&self, degree: RoC2, s: u32) -> u64 {
        self.0.get(&(degree, s)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// Rows in the canonical reporting order.
    pub fn rows(&self) -> Vec<RankRow> {
        self.0
            .iter()
            .map(|(&(degree, s), &rank)| RankRow {
                c: degree.triv,
                sigma: degree.sign,
                s,
                rank,
            })
            .collect()
    }
}

/// One reported rank: internal degree coordinates, homological degree, rank.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RankRow {
    pub c: i64,
    pub sigma: i64,
    pub s: u32,
    pub rank: u64,
}

/// The truncated Koszul complex: bases for every bidegree of underlying
/// internal dimension at most the cutoff.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    gens: PolyGenerators,
    bases: BTreeMap<(RoC2, u32), Vec<Monomial>>,
}

/// Build the truncation with the default block-size guard.
pub fn build_complex(
    gens: PolyGenerators,
    n_gens: usize,
    dim_cutoff: u64,
) -> Result<KoszulComplex, KoszulError> {
    build_complex_with_limit(gens, n_gens, dim_cutoff, DEFAULT_BLOCK_LIMIT)
}

/// Build the truncation, refusing any bidegree block with more monomials
/// than `block_limit`.
pub fn build_complex_with_limit(
    gens: PolyGenerators,
    n_gens: usize,
    dim_cutoff: u64,
    block_limit: usize,
) -> Result<KoszulComplex, KoszulError> {
    let max_weight = dim_cutoff / 2;

    // polynomial exponent vectors by weight
    let mut polys_by_weight: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max_weight as usize + 1];
    let mut exps = vec![0u32; n_gens];
    fn gen_polys(slot: usize, weight_left: u64, exps: &mut Vec<u32>, out: &mut [Vec<Vec<u32>>]) {
        if slot == exps.len() {
            let used = out.len() as u64 - 1 - weight_left;
            let mut v = exps.clone();
            while v.last() == Some(&0) {
                v.pop();
            }
            out[used as usize].push(v);
            return;
        }
        let step = slot as u64 + 1;
        let mut e = 0u32;
        loop {
            let cost = e as u64 * step;
            if cost > weight_left {
                break;
            }
            exps[slot] = e;
            gen_polys(slot + 1, weight_left - cost, exps, out);
            e += 1;
        }
        exps[slot] = 0;
    }
    gen_polys(0, max_weight, &mut exps, &mut polys_by_weight);

    // exterior subsets by (weight, size)
    let mut exts: Vec<(Vec<usize>, u64)> = Vec::new();
    let mut subset = Vec::new();
    fn gen_exts(
        next: usize,
        n_gens: usize,
        weight_left: u64,
        subset: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, u64)>,
    ) {
        let used: u64 = subset.iter().map(|&i| i as u64).sum();
        out.push((subset.clone(), used));
        for i in next..=n_gens {
            if i as u64 > weight_left {
                break;
            }
            subset.push(i);
            gen_exts(i + 1, n_gens, weight_left - i as u64, subset, out);
            subset.pop();
        }
    }
    gen_exts(1, n_gens, max_weight, &mut subset, &mut exts);

    let mut bases: BTreeMap<(RoC2, u32), Vec<Monomial>> = BTreeMap::new();
    for (ext, ext_weight) in &exts {
        let s = ext.len() as u32;
        for w in 0..=(max_weight - ext_weight) {
            let degree = RoC2::rho((ext_weight + w) as i64);
            for poly in &polys_by_weight[w as usize] {
                let entry = bases.entry((degree, s)).or_default();
                entry.push(Monomial {
                    ext: ext.clone(),
                    poly: poly.clone(),
                });
                if entry.len() > block_limit {
                    return Err(KoszulError::BlockTooLarge {
                        degree,
                        s,
                        count: entry.len(),
                        limit: block_limit,
                    });
                }
            }
        }
    }
    for block in bases.values_mut() {
        block.sort();
    }
    Ok(KoszulComplex { gens, bases })
}

impl KoszulComplex {
    pub fn bidegrees(&self) -> impl Iterator<Item = (RoC2, u32)> + '_ {
        self.bases.keys().copied()
    }

    pub fn basis(&self, degree: RoC2, s: u32) -> &[Monomial] {
        self.bases.get(&(degree, s)).map_or(&[], |b| b.as_slice())
    }

    /// The differential matrix from `(degree, s)` to `(degree, s - 1)`:
    /// rows index the target basis, columns the source.
    pub fn differential(&self, degree: RoC2, s: u32) -> Mat2 {
        let source = self.basis(degree, s);
        let target = if s == 0 {
            &[]
        } else {
            self.basis(degree, s - 1)
        };
        let mut mat = Mat2::zeros(target.len(), source.len());
        for (col, mono) in source.iter().enumerate() {
            for &i in &mono.ext {
                let Some(m) = self.gens.hurewicz_image(i) else {
                    continue;
                };
                let image = mono.without_e(i).times_m(m);
                let row = target
                    .binary_search(&image)
                    .expect("differential preserves the truncation");
                mat.set(row, col, true);
            }
        }
        mat
    }

    /// Verify `d . d = 0` on every bidegree of the truncation.
    pub fn d_squared_is_zero(&self) -> bool {
        self.bases.keys().all(|&(degree, s)| {
            if s < 2 {
                return true;
            }
            let d_s = self.differential(degree, s);
            let d_prev = self.differential(degree, s - 1);
            d_prev.mul(&d_s).is_zero()
        })
    }

    /// Homology ranks per bidegree: `dim ker - dim im` computed from the
    /// ranks of the adjacent differentials.
    pub fn homology_ranks(&self) -> BigradedRanks {
        let mut d_ranks: BTreeMap<(RoC2, u32), usize> = BTreeMap::new();
        for &(degree, s) in self.bases.keys() {
            if s >= 1 && self.bases.contains_key(&(degree, s - 1)) {
                d_ranks.insert((degree, s), self.differential(degree, s).rank());
            }
        }
        let mut ranks = BTreeMap::new();
        for (&(degree, s), block) in &self.bases {
            let out_rank = d_ranks.get(&(degree, s)).copied().unwrap_or(0);
            let in_rank = d_ranks.get(&(degree, s + 1)).copied().unwrap_or(0);
            let h = block.len() - out_rank - in_rank;
            if h > 0 {
                ranks.insert((degree, s), h as u64);
            }
        }
        BigradedRanks(ranks)
    }

    /// Per internal degree, the alternating sums of chain ranks and homology
    /// ranks must agree.
    pub fn euler_consistent(&self, homology: &BigradedRanks) -> bool {
        let mut chain: BTreeMap<RoC2, i64> = BTreeMap::new();
        for (&(degree, s), block) in &self.bases {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            *chain.entry(degree).or_insert(0) += sign * block.len() as i64;
        }
        let mut hom: BTreeMap<RoC2, i64> = BTreeMap::new();
        for (&(degree, s), &r) in &homology.0 {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            *hom.entry(degree).or_insert(0) += sign * r as i64;
        }
        chain
            .keys()
            .chain(hom.keys())
            .all(|d| chain.get(d).copied().unwrap_or(0) == hom.get(d).copied().unwrap_or(0))
    }
}

/// The closed-form answer: the polynomial algebra on the `m_j` with
/// `j = 2^k - 1` tensored with the exterior algebra on the matching `e_j`,
/// truncated at the dimension cutoff.
pub fn expected_ranks(n_gens: usize, dim_cutoff: u64) -> BigradedRanks {
    let survivors: Vec<usize> = (1..)
        .map(|k| (1usize << k) - 1)
        .take_while(|&j| j <= n_gens)
        .collect();
    let max_weight = dim_cutoff / 2;

    let mut ranks: BTreeMap<(RoC2, u32), u64> = BTreeMap::new();
    // iterate over exterior subsets of the survivors and polynomial
    // exponents on the survivors
    let subsets = 1usize << survivors.len();
    for mask in 0..subsets {
        let ext_weight: u64 = survivors
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &j)| j as u64)
            .sum();
        if ext_weight > max_weight {
            continue;
        }
        let s = (mask as u32).count_ones();
        let mut stack = vec![(0usize, 0u64)];
        while let Some((slot, weight)) = stack.pop() {
            if slot == survivors.len() {
                let degree = RoC2::rho((ext_weight + weight) as i64);
                *ranks.entry((degree, s)).or_insert(0) += 1;
                continue;
            }
            let step = survivors[slot] as u64;
            let mut used = 0;
            while ext_weight + weight + used <= max_weight {
                stack.push((slot + 1, weight + used));
                used += step;
            }
        }
    }
    BigradedRanks(ranks)
}
