//! Aggregated cross-module consistency checks, rendered as a deterministic
//! report.

use std::fmt::Write as _;

use crate::e2;
use crate::eqfn::orbits;
use crate::koszul::{build_complex, expected_ranks, PolyGenerators};
use crate::splitting::{
    basis_series, basis_up_to, product_series_oracle, tensor_expansion_check, GeneratorProfile,
};
use crate::tau::{gfp_poincare_check, relation_degree_check, tau_multiply, TauMonomial};

/// One line of the verification report.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckLine {
    pub check: &'static str,
    pub params: String,
    pub pass: bool,
}

impl CheckLine {
    fn new(check: &'static str, params: impl Into<String>, pass: bool) -> Self {
        CheckLine {
            check,
            params: params.into(),
            pass,
        }
    }
}

/// Options shared by the named checks.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOpts {
    /// Largest ambient exponent exercised by the group-indexed checks.
    pub max_n: u32,
    /// Degree cutoff for the fixed-point series identity.
    pub cutoff: usize,
}

impl Default for VerifyOpts {
    fn default() -> Self {
        VerifyOpts {
            max_n: 3,
            cutoff: 30,
        }
    }
}

pub const CHECK_NAMES: &[&str] = &[
    "orbits", "tensor", "basis", "relation", "gfp", "tau", "tor", "collapse",
];

/// Run one named check; `None` for an unknown name.
pub fn run_named(name: &str, opts: &VerifyOpts) -> Option<Vec<CheckLine>> {
    let lines = match name {
        "orbits" => check_orbits(opts),
        "tensor" => check_tensor(opts),
        "basis" => check_basis(opts),
        "relation" => check_relation(opts),
        "gfp" => check_gfp(opts),
        "tau" => check_tau(),
        "tor" => check_tor(),
        "collapse" => check_collapse(),
        _ => return None,
    };
    Some(lines)
}

/// Run every named check in order.
pub fn run_all(opts: &VerifyOpts) -> Vec<CheckLine> {
    CHECK_NAMES
        .iter()
        .flat_map(|name| run_named(name, opts).expect("listed names are known"))
        .collect()
}

/// Fixed-width text table, one line per check, with a summary line.
pub fn render(lines: &[CheckLine]) -> String {
    let mut out = String::new();
    let width = lines
        .iter()
        .map(|l| l.check.len() + l.params.len() + 1)
        .max()
        .unwrap_or(8)
        .max(8);
    for line in lines {
        let label = format!("{} {}", line.check, line.params);
        let status = if line.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{label:<width$}  {status}");
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    let _ = writeln!(out, "{passed}/{} checks passed", lines.len());
    out
}

pub fn all_passed(lines: &[CheckLine]) -> bool {
    lines.iter().all(|l| l.pass)
}

fn check_orbits(opts: &VerifyOpts) -> Vec<CheckLine> {
    // counts must agree with the necklace formula (1/L) sum phi(d) 2^{L/d}
    fn necklaces(l: u64) -> u64 {
        fn phi(mut m: u64) -> u64 {
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
        }
        let mut sum = 0;
        for d in 1..=l {
            if l.is_multiple_of(d) {
                sum += phi(d) * (1u64 << (l / d));
            }
        }
        sum / l
    }

    (1..=opts.max_n.min(4))
        .map(|n| {
            let orbs = match orbits(n) {
                Ok(o) => o,
                Err(_) => return CheckLine::new("orbits", format!("n={n}"), false),
            };
            let l = 1u64 << (n - 1);
            let total: u64 = orbs.iter().map(|o| o.size).sum();
            let stab_orbit = orbs.iter().all(|o| o.size * o.stab.order() == 1 << n);
            let pass = orbs.len() as u64 == necklaces(l) && total == 1 << l && stab_orbit;
            CheckLine::new("orbits", format!("n={n} count={}", orbs.len()), pass)
        })
        .collect()
}

fn check_tensor(opts: &VerifyOpts) -> Vec<CheckLine> {
    let mut out = Vec::new();
    for n in 1..=opts.max_n.min(4) {
        let pass = (1..=6).all(|i| tensor_expansion_check(n, i).unwrap_or(false));
        out.push(CheckLine::new("tensor", format!("n={n} i<=6"), pass));
    }
    out
}

fn check_basis(opts: &VerifyOpts) -> Vec<CheckLine> {
    let cutoff = 24;
    let mut out = Vec::new();
    for n in 1..=opts.max_n.min(3) {
        let profile = GeneratorProfile::mu().truncated(3);
        let pass = match basis_up_to(n, &profile, cutoff as u64) {
            Ok(basis) => basis_series(&basis, cutoff) == product_series_oracle(n, &profile, cutoff),
            Err(_) => false,
        };
        out.push(CheckLine::new(
            "basis",
            format!("n={n} slots<=3 dim<={cutoff}"),
            pass,
        ));
    }
    out
}

fn check_relation(opts: &VerifyOpts) -> Vec<CheckLine> {
    (1..=opts.max_n.min(4))
        .map(|n| {
            CheckLine::new(
                "relation",
                format!("n={n} i<=16"),
                relation_degree_check(n, 16),
            )
        })
        .collect()
}

fn check_gfp(opts: &VerifyOpts) -> Vec<CheckLine> {
    vec![CheckLine::new(
        "gfp",
        format!("cutoff={}", opts.cutoff),
        gfp_poincare_check(opts.cutoff),
    )]
}

/// Exhaustive commutativity and associativity of the carry product over
/// square-free tau-sets with indices `1..=6` and `a_sigma` exponents
/// `0..=3`.
pub fn tau_laws_exhaustive() -> bool {
    let mut monomials = Vec::new();
    for mask in 0u128..(1 << 6) {
        for a in 0..=3 {
            let mut m = TauMonomial::one();
            for i in 1..=6 {
                if mask >> (i - 1) & 1 == 1 {
                    m = tau_multiply(&m, &TauMonomial::tau(i), 1);
                }
            }
            monomials.push(tau_multiply(&m, &TauMonomial::a_sigma(a), 1));
        }
    }
    let n = monomials.len();
    // pairwise product table; commutativity falls out while filling it
    let mut table = Vec::with_capacity(n * n);
    for x in &monomials {
        for y in &monomials {
            table.push(tau_multiply(x, y, 1));
        }
    }
    let comm = (0..n).all(|i| (i..n).all(|j| table[i * n + j] == table[j * n + i]));
    let assoc = (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                tau_multiply(&table[i * n + j], &monomials[k], 1)
                    == tau_multiply(&monomials[i], &table[j * n + k], 1)
            })
        })
    });
    comm && assoc
}

fn check_tau() -> Vec<CheckLine> {
    vec![CheckLine::new(
        "tau",
        "indices<=6 a_sigma<=3",
        tau_laws_exhaustive(),
    )]
}

fn check_tor() -> Vec<CheckLine> {
    let mut out = Vec::new();
    for n_gens in 1..=7usize {
        let pass = match build_complex(PolyGenerators::standard(), n_gens, 16) {
            Ok(cx) => {
                let ranks = cx.homology_ranks();
                cx.d_squared_is_zero()
                    && cx.euler_consistent(&ranks)
                    && ranks == expected_ranks(n_gens, 16)
            }
            Err(_) => false,
        };
        out.push(CheckLine::new("tor", format!("N={n_gens} dim<=16"), pass));
    }
    out
}

fn check_collapse() -> Vec<CheckLine> {
    vec![CheckLine::new(
        "collapse",
        "dim<=16",
        e2::collapse_check(16),
    )]
}
