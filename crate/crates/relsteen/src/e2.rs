//! Assembly of the spectral-sequence `E_2`-basis for the `C_2` case and the
//! rank-level collapse check against the Koszul answer.
//!
//! The `E_2`-term is a free module with basis the products of a square-free
//! tau-monomial (the fiber contribution, filtration weight zero) and a
//! polynomial monomial in the base classes, whose filtration weight is the
//! underlying dimension of the monomial. Freeness reduces every comparison
//! to counting basis elements per `RO(C_2)` degree.

use std::collections::BTreeMap;

use crate::grading::RoC2;
use crate::koszul;
use crate::splitting::{basis_up_to, GeneratorProfile, SplitError, Summand};

/// One basis element: square-free tau part, polynomial exponents over the
/// profile's slots, total `RO(C_2)` degree, and filtration weight.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct E2Element {
    /// Tau indices as set bits.
    pub tau_bits: u128,
    /// Exponents of the polynomial generators, slot `i` at position
    /// `i - 1`, trailing zeros trimmed.
    pub m_exps: Vec<u32>,
    pub degree: RoC2,
    pub weight: u64,
}

impl E2Element {
    pub fn dim(&self) -> u64 {
        self.degree.dim() as u64
    }

    pub fn tau_indices(&self) -> Vec<u32> {
        (0..128).filter(|&i| self.tau_bits >> i & 1 == 1).collect()
    }

    /// Human-readable label; polynomial generators print as `m{i}` for the
    /// full list and `xi{i}` for the sparse one.
    pub fn label(&self, profile: &GeneratorProfile) -> String {
        let poly_name = match profile.degrees {
            crate::splitting::DegreeList::Bp => "xi",
            _ => "m",
        };
        let mut parts = Vec::new();
        for (i0, &e) in self.m_exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("{poly_name}{}", i0 + 1)),
                e => parts.push(format!("{poly_name}{}^{e}", i0 + 1)),
            }
        }
        for i in self.tau_indices() {
            parts.push(format!("tau{i}"));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// The `E_2` basis below a dimension cutoff, sorted by dimension, weight,
/// and monomial.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct E2Basis {
    pub entries: Vec<E2Element>,
}

impl E2Basis {
    /// Basis-element counts per `RO(C_2)` degree.
    pub fn counts_by_degree(&self) -> BTreeMap<RoC2, u64> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.degree).or_insert(0) += 1;
        }
        out
    }

    /// Counts per `(degree, weight)` cell of the chart.
    pub fn counts_by_cell(&self) -> BTreeMap<(RoC2, u64), u64> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry((e.degree, e.weight)).or_insert(0) += 1;
        }
        out
    }
}

/// Filtration weight of a polynomial monomial: the underlying dimension
/// `sum 2 d_i e_i` over the profile's generator degrees.
pub fn slice_weight(profile: &GeneratorProfile, m_exps: &[u32]) -> u64 {
    m_exps
        .iter()
        .enumerate()
        .map(|(i0, &e)| {
            let d = profile
                .degree(i0 + 1)
                .expect("exponent slots must carry degrees");
            2 * d * e as u64
        })
        .sum()
}

/// Degree of the tau-monomial with the given index set.
fn tau_degree(tau_bits: u128) -> RoC2 {
    let mut deg = RoC2::ZERO;
    let mut bits = tau_bits;
    while bits != 0 {
        let i = bits.trailing_zeros();
        bits &= bits - 1;
        deg += RoC2::new(1 << i, (1i64 << i) - 1);
    }
    deg
}

/// Every product of a square-free tau-monomial with indices at least
/// `tau_floor` and a polynomial monomial over the profile, of underlying
/// dimension at most `dim_cutoff`.
pub fn e2_basis(profile: &GeneratorProfile, tau_floor: u32, dim_cutoff: u64) -> E2Basis {
    // tau indices with dim 2^{i+1} - 1 <= cutoff
    let tau_indices: Vec<u32> = (tau_floor..)
        .take_while(|&i| (1u64 << (i + 1)) - 1 <= dim_cutoff)
        .collect();
    let mut tau_sets: Vec<(u128, u64)> = Vec::new();
    let subsets = 1usize << tau_indices.len();
    for mask in 0..subsets {
        let mut bits = 0u128;
        let mut dim = 0u64;
        for (b, &i) in tau_indices.iter().enumerate() {
            if mask >> b & 1 == 1 {
                bits |= 1 << i;
                dim += (1 << (i + 1)) - 1;
            }
        }
        if dim <= dim_cutoff {
            tau_sets.push((bits, dim));
        }
    }

    // polynomial slots with dim 2 d_i <= cutoff
    let slots: Vec<(usize, u64)> = {
        let mut out = Vec::new();
        let mut slot = 1;
        while let Some(d) = profile.degree(slot) {
            if 2 * d <= dim_cutoff {
                out.push((slot, d));
                slot += 1;
            } else {
                break;
            }
        }
        out
    };

    let mut entries = Vec::new();
    for &(tau_bits, tau_dim) in &tau_sets {
        let budget = dim_cutoff - tau_dim;
        let mut exps = vec![0u32; slots.last().map_or(0, |s| s.0)];
        fn assign(
            pos: usize,
            slots: &[(usize, u64)],
            budget: u64,
            exps: &mut Vec<u32>,
            tau_bits: u128,
            profile: &GeneratorProfile,
            entries: &mut Vec<E2Element>,
        ) {
            if pos == slots.len() {
                let mut m_exps = exps.clone();
                while m_exps.last() == Some(&0) {
                    m_exps.pop();
                }
                let weight = slice_weight(profile, &m_exps);
                let mut degree = tau_degree(tau_bits);
                for (i0, &e) in m_exps.iter().enumerate() {
                    let d = profile.degree(i0 + 1).expect("slot materialized");
                    degree += RoC2::rho(d as i64) * e as i64;
                }
                entries.push(E2Element {
                    tau_bits,
                    m_exps,
                    degree,
                    weight,
                });
                return;
            }
            let (slot, d) = slots[pos];
            let mut e = 0u32;
            loop {
                let cost = 2 * d * e as u64;
                if cost > budget {
                    break;
                }
                exps[slot - 1] = e;
                assign(
                    pos + 1,
                    slots,
                    budget - cost,
                    exps,
                    tau_bits,
                    profile,
                    entries,
                );
                e += 1;
            }
            exps[slot - 1] = 0;
        }
        assign(
            0,
            &slots,
            budget,
            &mut exps,
            tau_bits,
            profile,
            &mut entries,
        );
    }
    entries.sort_by(|x, y| {
        (x.dim(), x.weight, &x.m_exps, x.tau_bits).cmp(&(y.dim(), y.weight, &y.m_exps, y.tau_bits))
    });
    E2Basis { entries }
}

/// Rank-level collapse: the `E_2` basis over the sparse generator list with
/// `tau_floor = 1` must match, in every `RO(C_2)` degree up to the cutoff,
/// the Koszul homology ranks collapsed by the homology-suspension
/// convention (homological degree adds one trivial coordinate).
pub fn collapse_check(dim_cutoff: u64) -> bool {
    let basis = e2_basis(&GeneratorProfile::bp(), 1, dim_cutoff);
    let left = basis.counts_by_degree();

    let n_gens = (dim_cutoff / 2).max(1) as usize;
    let expected = koszul::expected_ranks(n_gens, dim_cutoff);
    let mut right: BTreeMap<RoC2, u64> = BTreeMap::new();
    for (&(degree, s), &rank) in &expected.0 {
        let collapsed = degree + RoC2::new(s as i64, 0);
        if collapsed.dim() as u64 <= dim_cutoff {
            *right.entry(collapsed).or_insert(0) += rank;
        }
    }
    left == right
}

/// Why a differential on a tau class is ruled out.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Exclusion {
    /// Lowest case: the only candidate targets are multiples of the first
    /// polynomial generator, which the vanishing Hurewicz image kills.
    PolynomialTargetsOnly,
    /// Inductive case: the square of the previous tau class is
    /// `a_sigma`-divisible while every candidate target is
    /// `a_sigma`-torsion free.
    SigmaTorsionFreeTargets,
}

impl Exclusion {
    pub fn describe(self) -> &'static str {
        match self {
            Exclusion::PolynomialTargetsOnly => "polynomial-generator targets only (base case)",
            Exclusion::SigmaTorsionFreeTargets => {
                "targets are a_sigma-torsion free (inductive step)"
            }
        }
    }
}

/// The audit record for one tau class: candidate differential targets
/// (positive-weight basis elements one dimension below) and the argument
/// that rules them out.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleAudit {
    pub tau_index: u32,
    pub dim: u64,
    pub targets: Vec<E2Element>,
    pub exclusion: Exclusion,
}

/// Audit of the permanent-cycle argument for every tau class below the
/// cutoff. Differentials raise filtration by at least two and drop the
/// total degree by one, so the candidate targets of `tau_i` are the basis
/// elements of weight at least two in dimension `dim(tau_i) - 1`.
pub fn permanent_cycle_report(dim_cutoff: u64) -> Vec<CycleAudit> {
    let basis = e2_basis(&GeneratorProfile::bp(), 1, dim_cutoff);
    let mut out = Vec::new();
    let mut i = 1u32;
    loop {
        let dim = (1u64 << (i + 1)) - 1;
        if dim > dim_cutoff {
            break;
        }
        let targets: Vec<E2Element> = basis
            .entries
            .iter()
            .filter(|e| e.weight >= 2 && e.dim() == dim - 1)
            .cloned()
            .collect();
        let exclusion = if i == 1 {
            Exclusion::PolynomialTargetsOnly
        } else {
            Exclusion::SigmaTorsionFreeTargets
        };
        out.push(CycleAudit {
            tau_index: i,
            dim,
            targets,
            exclusion,
        });
        i += 1;
    }
    out
}

/// The general basis enumerator: pairs of a relative summand and a
/// polynomial monomial over the same generator list, with the total
/// underlying dimension bounded by the cutoff.
pub fn general_basis(
    n: u32,
    profile: &GeneratorProfile,
    dim_cutoff: u64,
) -> Result<Vec<(Summand, Vec<u32>, u64)>, SplitError> {
    let summands = basis_up_to(n, profile, dim_cutoff)?;
    let slots: Vec<(usize, u64)> = {
        let mut out = Vec::new();
        let mut slot = 1;
        while let Some(d) = profile.degree(slot) {
            if 2 * d <= dim_cutoff {
                out.push((slot, d));
                slot += 1;
            } else {
                break;
            }
        }
        out
    };
    let mut out = Vec::new();
    for s in summands {
        let budget = dim_cutoff - s.dim;
        let mut exps = vec![0u32; slots.last().map_or(0, |x| x.0)];
        fn assign(
            pos: usize,
            slots: &[(usize, u64)],
            budget: u64,
            exps: &mut Vec<u32>,
            summand: &Summand,
            out: &mut Vec<(Summand, Vec<u32>, u64)>,
        ) {
            if pos == slots.len() {
                let mut m_exps = exps.clone();
                while m_exps.last() == Some(&0) {
                    m_exps.pop();
                }
                let weight: u64 = m_exps
                    .iter()
                    .enumerate()
                    .map(|(i0, &e)| {
                        2 * e as u64
                            * slots
                                .iter()
                                .find(|(s, _)| *s == i0 + 1)
                                .map(|(_, d)| *d)
                                .unwrap_or(0)
                    })
                    .sum();
                out.push((summand.clone(), m_exps, weight));
                return;
            }
            let (slot, d) = slots[pos];
            let mut e = 0u32;
            loop {
                let cost = 2 * d * e as u64;
                if cost > budget {
                    break;
                }
                exps[slot - 1] = e;
                assign(pos + 1, slots, budget - cost, exps, summand, out);
                e += 1;
            }
            exps[slot - 1] = 0;
        }
        assign(0, &slots, budget, &mut exps, &s, &mut out);
    }
    out.sort_by(|x, y| (x.0.dim + x.2, &x.0.seq, &x.1).cmp(&(y.0.dim + y.2, &y.0.seq, &y.1)));
    Ok(out)
}
