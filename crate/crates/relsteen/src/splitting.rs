//! Wedge decomposition of the relative smash square into induced
//! representation spheres.
//!
//! Each basis summand is an induced sphere `G_+ smash_{H_f} S^{||f||}`
//! indexed by a rotation orbit of sequences of equivariant functions. This
//! module enumerates the summands below a dimension cutoff, groups them into
//! cell tables, and checks the enumeration against independent
//! Poincare-series oracles.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::eqfn::{orbits, EqFn, EqFnError, EqFnSeq};
use crate::poincare::Series;
use crate::reps::{InducedDegree, RealRep, Subgroup};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SplitError {
    #[error(transparent)]
    EqFn(#[from] EqFnError),
    #[error("group exponent n={0} out of supported range 1..=4")]
    ExponentRange(u32),
    #[error("generator degrees must be strictly positive")]
    NonPositiveDegree,
}

fn check_split_exponent(n: u32) -> Result<(), SplitError> {
    if (1..=4).contains(&n) {
        Ok(())
    } else {
        Err(SplitError::ExponentRange(n))
    }
}

/// The generator-degree list `i -> d_i` for the sequence slots.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DegreeList {
    /// `d_i = i`.
    Mu,
    /// `d_i = 2^i - 1`.
    Bp,
    /// Explicit finite list, 1-based.
    Custom(Vec<u64>),
}

/// Which generator family the basis is built over, how far the slot list
/// extends, and whether the extra degree-one exterior class of the mod-2
/// variant is included.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorProfile {
    pub degrees: DegreeList,
    /// Highest slot index materialized; `None` means every slot whose
    /// minimal contribution fits under the dimension cutoff.
    pub max_index: Option<usize>,
    /// Doubles the basis by the degree-one exterior class.
    pub mod2: bool,
}

impl GeneratorProfile {
    pub fn mu() -> Self {
        GeneratorProfile {
            degrees: DegreeList::Mu,
            max_index: None,
            mod2: false,
        }
    }

    pub fn bp() -> Self {
        GeneratorProfile {
            degrees: DegreeList::Bp,
            max_index: None,
            mod2: false,
        }
    }

    pub fn custom(degrees: Vec<u64>) -> Result<Self, SplitError> {
        if degrees.contains(&0) {
            return Err(SplitError::NonPositiveDegree);
        }
        Ok(GeneratorProfile {
            degrees: DegreeList::Custom(degrees),
            max_index: None,
            mod2: false,
        })
    }

    pub fn with_mod2(mut self, mod2: bool) -> Self {
        self.mod2 = mod2;
        self
    }

    pub fn truncated(mut self, max_index: usize) -> Self {
        self.max_index = Some(max_index);
        self
    }

    /// Degree `d_i` of slot `i` (1-based); `None` past the end of the list.
    pub fn degree(&self, slot: usize) -> Option<u64> {
        if slot == 0 {
            return None;
        }
        if self.max_index.is_some_and(|m| slot > m) {
            return None;
        }
        match &self.degrees {
            DegreeList::Mu => Some(slot as u64),
            DegreeList::Bp => Some((1u64 << slot) - 1),
            DegreeList::Custom(ds) => ds.get(slot - 1).copied(),
        }
    }

    /// Slots whose minimal nonzero contribution `2 d_i + 1` fits under the
    /// cutoff, with their degrees.
    pub fn slots_within(&self, dim_cutoff: u64) -> Vec<(usize, u64)> {
        let mut out = Vec::new();
        let monotone = !matches!(self.degrees, DegreeList::Custom(_));
        let mut slot = 1;
        loop {
            match self.degree(slot) {
                None => break,
                Some(d) => {
                    // a non-constant entry contributes at least 2d + 1
                    if 2 * d < dim_cutoff {
                        out.push((slot, d));
                    } else if monotone {
                        break;
                    }
                }
            }
            slot += 1;
        }
        out
    }
}

/// One wedge summand `G_+ smash_{H_f} S^{||f||}` of the basis: the orbit
/// of sequences it came from, its stabilizer level, degree, orbit size, and
/// underlying dimension. `tau0` marks the partner summand contributed by
/// the degree-one exterior class in the mod-2 variant.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Summand {
    #[serde(serialize_with = "ser_seq")]
    pub seq: EqFnSeq,
    pub stab: Subgroup,
    pub deg: InducedDegree,
    pub orbit: u64,
    pub dim: u64,
    #[serde(skip_serializing_if = "is_false")]
    pub tau0: bool,
}

fn is_false(b: &bool) -> bool {
    !b
}

fn ser_seq<S: serde::Serializer>(seq: &EqFnSeq, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut list = s.serialize_seq(Some(seq.len()))?;
    for e in seq.entries() {
        list.serialize_element(&e.to_string())?;
    }
    list.end()
}

fn summand_from_seq(seq: EqFnSeq, degree_of_slot: impl Fn(usize) -> u64, tau0: bool) -> Summand {
    let stab = seq.stabilizer();
    let mut deg = seq.degree_with(degree_of_slot);
    if tau0 {
        deg = InducedDegree::new(deg.rep().clone() + RealRep::trivial(stab, 1));
    }
    let dim = deg.dim() as u64;
    let orbit = seq.orbit_size();
    Summand {
        seq,
        stab,
        deg,
        orbit,
        dim,
        tau0,
    }
}

fn sort_canonically(summands: &mut [Summand]) {
    summands.sort_by(|x, y| {
        (x.dim, x.seq.len(), &x.seq, x.tau0).cmp(&(y.dim, y.seq.len(), &y.seq, y.tau0))
    });
}

/// The summands of a single norm factor at generator degree `gen_degree`:
/// one per rotation orbit of functions, the constant-`b` orbit giving the
/// unit summand.
pub fn norm_summands(n: u32, gen_degree: u64) -> Result<Vec<Summand>, SplitError> {
    check_split_exponent(n)?;
    let mut out = Vec::new();
    for orbit in orbits(n)? {
        let seq = if orbit.rep.is_constant_b() {
            EqFnSeq::empty(n)?
        } else {
            EqFnSeq::new(n, vec![orbit.rep])?
        };
        out.push(summand_from_seq(seq, |_| gen_degree, false));
    }
    sort_canonically(&mut out);
    Ok(out)
}

/// All basis summands of underlying dimension at most `dim_cutoff`.
///
/// With `profile.mod2` set, every summand appears a second time multiplied
/// by the degree-one exterior class, shifting its degree by one trivial
/// coordinate; the partner is kept only if it still fits under the cutoff.
pub fn basis_up_to(
    n: u32,
    profile: &GeneratorProfile,
    dim_cutoff: u64,
) -> Result<Vec<Summand>, SplitError> {
    check_split_exponent(n)?;
    let slots = profile.slots_within(dim_cutoff);
    let word_count = 1u32 << (1 << (n - 1));

    // every assignment of words to the available slots within the budget
    let mut canonical: BTreeSet<EqFnSeq> = BTreeSet::new();
    let mut stack: Vec<EqFn> = Vec::new();
    fn assign(
        n: u32,
        slots: &[(usize, u64)],
        word_count: u32,
        budget: u64,
        pos: usize,
        stack: &mut Vec<EqFn>,
        canonical: &mut BTreeSet<EqFnSeq>,
    ) -> Result<(), SplitError> {
        if pos == slots.len() {
            let mut entries = vec![EqFn::constant_b(n)?; slots.last().map_or(0, |s| s.0)];
            for (word, &(slot, _)) in stack.iter().zip(slots) {
                entries[slot - 1] = *word;
            }
            canonical.insert(EqFnSeq::new(n, entries)?.canonical());
            return Ok(());
        }
        let (_, d) = slots[pos];
        for bits in 0..word_count {
            let word = EqFn::from_bits(n, bits)?;
            let cost = word.a_count() as u64 * (2 * d + 1);
            if cost > budget {
                continue;
            }
            stack.push(word);
            assign(
                n,
                slots,
                word_count,
                budget - cost,
                pos + 1,
                stack,
                canonical,
            )?;
            stack.pop();
        }
        Ok(())
    }
    assign(
        n,
        &slots,
        word_count,
        dim_cutoff,
        0,
        &mut stack,
        &mut canonical,
    )?;

    let degree_of_slot = |slot: usize| {
        profile
            .degree(slot)
            .expect("every materialized slot has a degree")
    };
    let mut out = Vec::new();
    for seq in canonical {
        let summand = summand_from_seq(seq.clone(), degree_of_slot, false);
        debug_assert!(summand.dim <= dim_cutoff);
        if profile.mod2 {
            let partner = summand_from_seq(seq, degree_of_slot, true);
            if partner.dim <= dim_cutoff {
                out.push(partner);
            }
        }
        out.push(summand);
    }
    sort_canonically(&mut out);
    Ok(out)
}

/// A row of the cell table: summands grouped by underlying dimension, the
/// level they are induced from, and the fixed-point cell dimensions at each
/// subgroup of that level.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct CellRow {
    pub dim: u64,
    pub stab: Subgroup,
    pub fixed_dims: Vec<i64>,
    pub count: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct CellTable {
    pub rows: Vec<CellRow>,
}

/// Group summands by `(dim, level, fixed-dimension vector)`. Fixed
/// dimensions are reported at the subgroups of the stabilizer only; levels
/// above carry no fixed-point data beyond the "induced from" tag.
pub fn cell_table(summands: &[Summand]) -> CellTable {
    let mut counts: std::collections::BTreeMap<(u64, Subgroup, Vec<i64>), u64> =
        std::collections::BTreeMap::new();
    for s in summands {
        let fixed: Vec<i64> = (0..=s.stab.exp())
            .map(|k| {
                s.deg
                    .fixed_dim(Subgroup::new(k))
                    .expect("subgroups of the level are contained in it")
            })
            .collect();
        *counts.entry((s.dim, s.stab, fixed)).or_insert(0) += 1;
    }
    CellTable {
        rows: counts
            .into_iter()
            .map(|((dim, stab, fixed_dims), count)| CellRow {
                dim,
                stab,
                fixed_dims,
                count,
            })
            .collect(),
    }
}

/// Orbit-weighted dimension generating function `sum orbit * t^dim`.
pub fn basis_series(summands: &[Summand], cutoff: usize) -> Series {
    let mut s = Series::zero(cutoff);
    for summand in summands {
        s.add_term(summand.dim as usize, summand.orbit);
    }
    s
}

/// Checks the distributive-law expansion of one norm factor: summing
/// `orbit_size * t^dim` over the summands must reproduce
/// `(1 + t^{2i+1})^{2^{n-1}}`.
pub fn tensor_expansion_check(n: u32, gen_degree: u64) -> Result<bool, SplitError> {
    let summands = norm_summands(n, gen_degree)?;
    let cosets = 1u64 << (n - 1);
    let cutoff = (cosets * (2 * gen_degree + 1)) as usize;
    let lhs = basis_series(&summands, cutoff);
    let rhs = Series::one(cutoff)
        .mul_one_plus((2 * gen_degree + 1) as usize)
        .pow(cosets);
    Ok(lhs == rhs)
}

/// Independent product oracle for the multi-generator basis series:
/// `prod_i (1 + t^{2 d_i + 1})^{2^{n-1}}` over the slots of the profile,
/// times `(1 + t)` when the mod-2 class is included.
pub fn product_series_oracle(n: u32, profile: &GeneratorProfile, cutoff: usize) -> Series {
    let cosets = 1u64 << (n - 1);
    let mut s = Series::one(cutoff);
    for (_, d) in profile.slots_within(cutoff as u64) {
        for _ in 0..cosets {
            s = s.mul_one_plus((2 * d + 1) as usize);
        }
    }
    if profile.mod2 {
        s = s.mul_one_plus(1);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile_mu() -> GeneratorProfile {
        GeneratorProfile::mu()
    }

    #[test]
    fn norm_summands_c4() {
        let summands = norm_summands(2, 1).unwrap();
        assert_eq!(summands.len(), 3);

        // unit summand from the constant-b orbit
        assert_eq!(summands[0].dim, 0);
        assert_eq!(summands[0].stab, Subgroup::new(2));
        assert!(summands[0].deg.rep().is_zero());
        assert_eq!(summands[0].orbit, 1);

        // induced summand from the orbit of "ab"
        assert_eq!(summands[1].dim, 3);
        assert_eq!(summands[1].stab, Subgroup::new(1));
        assert_eq!(summands[1].deg.rep(), &RealRep::rho2_plus_one(1));
        assert_eq!(summands[1].orbit, 2);

        // fixed summand from the constant-a orbit
        assert_eq!(summands[2].dim, 6);
        assert_eq!(summands[2].stab, Subgroup::new(2));
        assert_eq!(
            summands[2].deg.rep(),
            &RealRep::rho2_plus_one(1).induce(Subgroup::new(2)).unwrap()
        );
        assert_eq!(summands[2].orbit, 1);
    }

    #[test]
    fn norm_summands_c2_and_c8() {
        let summands = norm_summands(1, 1).unwrap();
        assert_eq!(summands.len(), 2);
        let dims: Vec<u64> = summands.iter().map(|s| s.dim).collect();
        assert_eq!(dims, vec![0, 3]);

        let summands = norm_summands(3, 1).unwrap();
        let dims: Vec<u64> = summands.iter().map(|s| s.dim).collect();
        assert_eq!(dims, vec![0, 3, 6, 6, 9, 12]);

        assert_eq!(norm_summands(9, 1), Err(SplitError::ExponentRange(9)));
    }

    #[test]
    fn tensor_expansion_examples() {
        // 1 + 2t^3 + t^6 = (1 + t^3)^2
        assert!(tensor_expansion_check(2, 1).unwrap());
        assert!(tensor_expansion_check(3, 1).unwrap());
        assert!(tensor_expansion_check(1, 4).unwrap());
    }

    #[test]
    fn tensor_expansion_full_grid() {
        for n in 1..=4 {
            for i in 1..=6 {
                assert!(tensor_expansion_check(n, i).unwrap(), "n={n}, i={i}");
            }
        }
    }

    #[test]
    fn basis_small_cutoffs() {
        // n=1, MU list, cutoff 3: the unit and the slot-1 class
        let basis = basis_up_to(1, &profile_mu(), 3).unwrap();
        let dims: Vec<u64> = basis.iter().map(|s| s.dim).collect();
        assert_eq!(dims, vec![0, 3]);

        // n=2, MU list, cutoff 3: the fixed summand of dimension 6 is cut
        let basis = basis_up_to(2, &profile_mu(), 3).unwrap();
        let summary: Vec<(u64, u64)> = basis.iter().map(|s| (s.dim, s.orbit)).collect();
        assert_eq!(summary, vec![(0, 1), (3, 2)]);

        // cutoff 0: just the unit, for every n and profile
        for n in 1..=4 {
            let basis = basis_up_to(n, &profile_mu(), 0).unwrap();
            assert_eq!(basis.len(), 1);
            assert!(basis[0].seq.is_empty());
            let basis = basis_up_to(n, &GeneratorProfile::bp().with_mod2(true), 0).unwrap();
            assert_eq!(basis.len(), 1);
        }
    }

    #[test]
    fn basis_series_matches_product_oracle() {
        for n in 1..=3u32 {
            let profile = profile_mu().truncated(3);
            let cutoff = 24;
            let basis = basis_up_to(n, &profile, cutoff as u64).unwrap();
            let series = basis_series(&basis, cutoff);
            let oracle = product_series_oracle(n, &profile, cutoff);
            assert_eq!(series, oracle, "n={n}");
        }
    }

    #[test]
    fn fixed_sublist_is_exterior() {
        // summands with full stabilizer form an exterior algebra on the
        // norms: series prod_i (1 + t^{2^{n-1} (2 d_i + 1)})
        for n in 2..=3u32 {
            let profile = profile_mu().truncated(3);
            let cutoff = 24usize;
            let basis = basis_up_to(n, &profile, cutoff as u64).unwrap();
            let fixed: Vec<&Summand> = basis.iter().filter(|s| s.stab.exp() == n).collect();
            let mut series = Series::zero(cutoff);
            for s in &fixed {
                series.add_term(s.dim as usize, s.orbit);
            }
            let mut oracle = Series::one(cutoff);
            for (_, d) in profile.slots_within(cutoff as u64) {
                let dim = (1u64 << (n - 1)) * (2 * d + 1);
                if dim as usize <= cutoff {
                    oracle = oracle.mul_one_plus(dim as usize);
                }
            }
            assert_eq!(series, oracle, "n={n}");
        }
    }

    #[test]
    fn summand_degree_restricts_to_single_degrees() {
        for n in 2..=3u32 {
            let basis = basis_up_to(n, &profile_mu(), 12).unwrap();
            for s in &basis {
                // rebuild the degree slotwise: restrict each single-entry
                // degree to the common stabilizer and add them up
                let mut rebuilt = RealRep::zero(s.stab);
                for slot in 1..=s.seq.len() {
                    let single = crate::eqfn::degree_single(&s.seq.entry(slot), slot as u64);
                    rebuilt = rebuilt + single.rep().restrict(s.stab).unwrap();
                }
                if s.tau0 {
                    rebuilt = rebuilt + RealRep::trivial(s.stab, 1);
                }
                assert_eq!(s.deg.rep(), &rebuilt);
                assert_eq!(s.dim as i64, rebuilt.dim());
            }
        }
    }

    #[test]
    fn cell_table_c4_norm() {
        let table = cell_table(&norm_summands(2, 1).unwrap());
        assert_eq!(table.rows.len(), 3);

        assert_eq!(table.rows[0].dim, 0);
        assert_eq!(table.rows[0].stab, Subgroup::new(2));
        assert_eq!(table.rows[0].fixed_dims, vec![0, 0, 0]);

        assert_eq!(table.rows[1].dim, 3);
        assert_eq!(table.rows[1].stab, Subgroup::new(1));
        assert_eq!(table.rows[1].fixed_dims, vec![3, 2]);

        // Ind(rho_2 + 1) has fixed dims 6, 4, 2 at C1, C2, C4
        assert_eq!(table.rows[2].dim, 6);
        assert_eq!(table.rows[2].stab, Subgroup::new(2));
        assert_eq!(table.rows[2].fixed_dims, vec![6, 4, 2]);

        assert_eq!(cell_table(&[]), CellTable::default());
    }

    #[test]
    fn bp_mod2_dims() {
        let profile = GeneratorProfile::bp().with_mod2(true);
        let basis = basis_up_to(1, &profile, 10).unwrap();
        let dims: Vec<u64> = basis.iter().map(|s| s.dim).collect();
        // BP degrees 1, 3, 7 give dims 0, 3, 7, 10; the exterior class
        // doubles each by +1 within the cutoff
        assert_eq!(dims, vec![0, 1, 3, 4, 7, 8, 10]);
        let table = cell_table(&basis);
        let table_dims: Vec<u64> = table.rows.iter().map(|r| r.dim).collect();
        assert_eq!(table_dims, vec![0, 1, 3, 4, 7, 8, 10]);
    }

    #[test]
    fn mod2_partner_bookkeeping() {
        let profile = GeneratorProfile::bp().with_mod2(true);
        let basis = basis_up_to(1, &profile, 4).unwrap();
        let tau0_dims: Vec<u64> = basis.iter().filter(|s| s.tau0).map(|s| s.dim).collect();
        assert_eq!(tau0_dims, vec![1, 4]);
        for s in basis.iter().filter(|s| s.tau0) {
            assert_eq!(s.dim as i64, s.seq.degree_with(|i| (1 << i) - 1).dim() + 1);
        }
    }

    #[test]
    fn summand_json_schema() {
        let summands = norm_summands(2, 1).unwrap();
        let json = serde_json::to_value(&summands[1]).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "seq": ["ab"],
                "stab": 1,
                "deg": {"level": 1, "triv": 2, "sign": 1, "lambda": []},
                "orbit": 2,
                "dim": 3,
            })
        );
    }
}
