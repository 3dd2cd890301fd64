//! Command-line entry point: configuration, subcommand dispatch, and table
//! emitters.
//!
//! Exit codes: 0 for success (all checks PASS), 1 for a failed check, 2 for
//! usage or configuration errors. Option precedence is flags, then the
//! `--config` key-value file, then built-in defaults. Identical
//! configurations produce byte-identical output.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::e2::{self, E2Basis};
use crate::koszul::{build_complex, expected_ranks, BigradedRanks, PolyGenerators};
use crate::splitting::{
    basis_series, basis_up_to, cell_table, norm_summands, product_series_oracle,
    tensor_expansion_check, CellTable, GeneratorProfile, Summand,
};
use crate::verify::{self, VerifyOpts};

#[derive(Parser, Debug)]
#[command(
    name = "relsteen",
    version,
    about = "Additive bases, Koszul homology, and E2 charts for cyclic 2-groups",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Output format: tsv or json (svg additionally for e2 charts).
    #[arg(long, global = true)]
    format: Option<String>,
    /// Write the table to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Flat `key = value` configuration file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Accepted for compatibility; every run is deterministic and seedless.
    #[arg(long, global = true)]
    seedless: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Wedge summands of a single norm factor.
    Decompose {
        /// Ambient exponent n of the group C_{2^n} (1..=4).
        #[arg(long)]
        n: Option<u32>,
        /// Generator degree of the norm factor.
        #[arg(long = "gen-index")]
        gen_index: Option<u64>,
    },
    /// Additive basis below a dimension cutoff, grouped into a cell table.
    Basis {
        /// Ambient exponent n of the group C_{2^n} (1..=4).
        #[arg(long)]
        n: Option<u32>,
        /// Generator list: mu (d_i = i) or bp (d_i = 2^i - 1).
        #[arg(long)]
        profile: Option<String>,
        /// Include the extra degree-one exterior class.
        #[arg(long)]
        mod2: bool,
        /// Dimension cutoff.
        #[arg(long)]
        dim: Option<u64>,
        /// Also verify the enumeration against the product-series oracle.
        #[arg(long)]
        check: bool,
    },
    /// Bigraded Koszul homology ranks.
    Tor {
        /// Number of generators.
        #[arg(long = "N")]
        n_gens: Option<usize>,
        /// Underlying internal dimension cutoff.
        #[arg(long)]
        dim: Option<u64>,
        /// Compare the computed ranks against the closed form.
        #[arg(long)]
        compare: bool,
    },
    /// Spectral-sequence E2 chart for the C_2 case.
    E2 {
        /// Underlying dimension cutoff.
        #[arg(long)]
        dim: Option<u64>,
        /// Compare E2 ranks against the Koszul answer per degree.
        #[arg(long = "collapse-check")]
        collapse_check: bool,
        /// Print the permanent-cycle audit instead of the chart.
        #[arg(long)]
        audit: bool,
    },
    /// Run the cross-module consistency checks.
    Verify {
        /// Run every check.
        #[arg(long)]
        all: bool,
        /// Run a single named check.
        #[arg(long)]
        only: Option<String>,
        /// Largest ambient exponent for the group-indexed checks.
        #[arg(long = "max-n")]
        max_n: Option<u32>,
        /// Degree cutoff for the series identities.
        #[arg(long)]
        cutoff: Option<usize>,
    },
}

/// Errors that terminate with a usage exit code.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// Flat `key = value` file, `#` for comments.
fn load_config(path: &PathBuf) -> Result<BTreeMap<String, String>, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(usage(format!(
                "config line {} is not `key = value`: {line:?}",
                lineno + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Flag value, falling back to the config file, then to the default.
fn pick<T: FromStr + Clone>(
    flag: Option<T>,
    config: &BTreeMap<String, String>,
    key: &str,
    default: Option<T>,
) -> Result<T, UsageError> {
    if let Some(v) = flag {
        return Ok(v);
    }
    if let Some(raw) = config.get(key) {
        return raw
            .parse()
            .map_err(|_| usage(format!("config key {key} has invalid value {raw:?}")));
    }
    default.ok_or_else(|| usage(format!("missing required option --{key}")))
}

fn pick_flag(flag: bool, config: &BTreeMap<String, String>, key: &str) -> Result<bool, UsageError> {
    if flag {
        return Ok(true);
    }
    match config.get(key).map(String::as_str) {
        None => Ok(false),
        Some("true") | Some("1") => Ok(true),
        Some("false") | Some("0") => Ok(false),
        Some(other) => Err(usage(format!(
            "config key {key} has invalid value {other:?}"
        ))),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Format {
    Tsv,
    Json,
    Svg,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), UsageError> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version and 2 for usage errors
            e.exit();
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, UsageError> {
    let config = match &cli.common.config {
        Some(path) => load_config(path)?,
        None => BTreeMap::new(),
    };
    let format: Format = pick(
        cli.common
            .format
            .as_deref()
            .map(Format::from_str)
            .transpose()
            .map_err(usage)?,
        &config,
        "format",
        Some(Format::Tsv),
    )?;
    let out = cli
        .common
        .out
        .clone()
        .or_else(|| config.get("out").map(PathBuf::from));

    if format == Format::Svg && !matches!(cli.command, Command::E2 { .. }) {
        return Err(usage("svg output is only available for e2 charts"));
    }

    match cli.command {
        Command::Decompose { n, gen_index } => {
            let n = pick(n, &config, "n", None)?;
            let gen_index = pick(gen_index, &config, "gen-index", Some(1))?;
            if !(1..=4).contains(&n) {
                return Err(usage("n out of range"));
            }
            let summands = norm_summands(n, gen_index).map_err(|e| usage(e.to_string()))?;
            let text = match format {
                Format::Json => summand_json(&summands)?,
                _ => summand_tsv(&summands),
            };
            emit(&text, &out)?;
            Ok(0)
        }
        Command::Basis {
            n,
            profile,
            mod2,
            dim,
            check,
        } => {
            let n = pick(n, &config, "n", None)?;
            let dim = pick(dim, &config, "dim", None)?;
            let profile_name: String = pick(profile, &config, "profile", Some("mu".into()))?;
            let mod2 = pick_flag(mod2, &config, "mod2")?;
            let check = pick_flag(check, &config, "check")?;
            if !(1..=4).contains(&n) {
                return Err(usage("n out of range"));
            }
            let profile = profile_by_name(&profile_name)?.with_mod2(mod2);
            let summands = basis_up_to(n, &profile, dim).map_err(|e| usage(e.to_string()))?;
            let text = match format {
                Format::Json => summand_json(&summands)?,
                _ => cell_table_tsv(&cell_table(&summands)),
            };
            emit(&text, &out)?;
            if check {
                let series_ok = {
                    let cutoff = dim as usize;
                    basis_series(&summands, cutoff) == product_series_oracle(n, &profile, cutoff)
                };
                let tensor_ok = profile
                    .slots_within(dim)
                    .iter()
                    .all(|&(_, d)| tensor_expansion_check(n, d).unwrap_or(false));
                if series_ok && tensor_ok {
                    println!("check: PASS");
                } else {
                    println!("check: FAIL");
                    return Ok(1);
                }
            }
            Ok(0)
        }
        Command::Tor {
            n_gens,
            dim,
            compare,
        } => {
            let n_gens = pick(n_gens, &config, "N", None)?;
            let dim = pick(dim, &config, "dim", None)?;
            let compare = pick_flag(compare, &config, "compare")?;
            let cx = build_complex(PolyGenerators::standard(), n_gens, dim)
                .map_err(|e| usage(e.to_string()))?;
            let ranks = cx.homology_ranks();
            let text = match format {
                Format::Json => ranks_json(&ranks)?,
                _ => ranks_tsv(&ranks),
            };
            emit(&text, &out)?;
            if compare {
                let ok = cx.d_squared_is_zero()
                    && cx.euler_consistent(&ranks)
                    && ranks == expected_ranks(n_gens, dim);
                if ok {
                    println!("compare: PASS");
                } else {
                    println!("compare: FAIL");
                    return Ok(1);
                }
            }
            Ok(0)
        }
        Command::E2 {
            dim,
            collapse_check,
            audit,
        } => {
            let dim = pick(dim, &config, "dim", None)?;
            let collapse = pick_flag(collapse_check, &config, "collapse-check")?;
            let audit = pick_flag(audit, &config, "audit")?;
            let profile = GeneratorProfile::bp();
            let basis = e2::e2_basis(&profile, 1, dim);
            let text = if audit {
                audit_text(dim, &profile)
            } else {
                match format {
                    Format::Json => e2_json(&basis)?,
                    Format::Svg => e2_svg(&basis),
                    Format::Tsv => e2_tsv(&basis),
                }
            };
            emit(&text, &out)?;
            if collapse {
                if e2::collapse_check(dim) {
                    println!("collapse-check: PASS");
                } else {
                    println!("collapse-check: FAIL");
                    return Ok(1);
                }
            }
            Ok(0)
        }
        Command::Verify {
            all,
            only,
            max_n,
            cutoff,
        } => {
            let all = pick_flag(all, &config, "all")?;
            let only: Option<String> = match only {
                Some(o) => Some(o),
                None => config.get("only").cloned(),
            };
            let opts = VerifyOpts {
                max_n: pick(max_n, &config, "max-n", Some(3))?,
                cutoff: pick(cutoff, &config, "cutoff", Some(30))?,
            };
            let lines = match (all, only) {
                (true, None) => verify::run_all(&opts),
                (false, Some(name)) => verify::run_named(&name, &opts).ok_or_else(|| {
                    usage(format!(
                        "unknown check {name:?}; available: {}",
                        verify::CHECK_NAMES.join(", ")
                    ))
                })?,
                (true, Some(_)) => {
                    return Err(usage("--all and --only are mutually exclusive"));
                }
                (false, None) => {
                    return Err(usage("select checks with --all or --only NAME"));
                }
            };
            emit(&verify::render(&lines), &out)?;
            Ok(if verify::all_passed(&lines) { 0 } else { 1 })
        }
    }
}

fn profile_by_name(name: &str) -> Result<GeneratorProfile, UsageError> {
    match name {
        "mu" => Ok(GeneratorProfile::mu()),
        "bp" => Ok(GeneratorProfile::bp()),
        other => Err(usage(format!(
            "unknown profile {other:?} (expected mu or bp)"
        ))),
    }
}

fn summand_tsv(summands: &[Summand]) -> String {
    let mut out = String::from("seq\tstab\torbit\tdim\tdeg\n");
    for s in summands {
        let tau0 = if s.tau0 { "*t0" } else { "" };
        let _ = writeln!(
            out,
            "{}{tau0}\t{}\t{}\t{}\t{}",
            s.seq,
            s.stab.exp(),
            s.orbit,
            s.dim,
            s.deg
        );
    }
    out
}

fn summand_json(summands: &[Summand]) -> Result<String, UsageError> {
    serde_json::to_string_pretty(summands)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| usage(format!("serialization failed: {e}")))
}

fn cell_table_tsv(table: &CellTable) -> String {
    let mut out = String::from("dim\tstab\tfixed_dims\tcount\n");
    for row in &table.rows {
        let fixed: Vec<String> = row.fixed_dims.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}",
            row.dim,
            row.stab.exp(),
            fixed.join(","),
            row.count
        );
    }
    out
}

fn ranks_tsv(ranks: &BigradedRanks) -> String {
    let mut out = String::from("c\tsigma\ts\trank\n");
    for row in ranks.rows() {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", row.c, row.sigma, row.s, row.rank);
    }
    out
}

fn ranks_json(ranks: &BigradedRanks) -> Result<String, UsageError> {
    serde_json::to_string_pretty(&ranks.rows())
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| usage(format!("serialization failed: {e}")))
}

fn e2_cells(basis: &E2Basis) -> Vec<(i64, i64, u64, u64)> {
    basis
        .counts_by_cell()
        .into_iter()
        .map(|((deg, w), count)| (deg.triv, deg.sign, w, count))
        .collect()
}

fn e2_tsv(basis: &E2Basis) -> String {
    let mut out = String::from("c\tsigma\tweight\tcount\n");
    for (c, sigma, w, count) in e2_cells(basis) {
        let _ = writeln!(out, "{c}\t{sigma}\t{w}\t{count}");
    }
    out
}

fn e2_json(basis: &E2Basis) -> Result<String, UsageError> {
    let rows: Vec<serde_json::Value> = e2_cells(basis)
        .into_iter()
        .map(|(c, sigma, w, count)| {
            serde_json::json!({"c": c, "sigma": sigma, "weight": w, "count": count})
        })
        .collect();
    serde_json::to_string_pretty(&rows)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| usage(format!("serialization failed: {e}")))
}

/// Dot chart of total degree (x) against filtration weight (y).
fn e2_svg(basis: &E2Basis) -> String {
    let cells = e2_cells(basis);
    let max_dim = cells.iter().map(|&(c, s, _, _)| c + s).max().unwrap_or(0);
    let max_w = cells.iter().map(|&(_, _, w, _)| w).max().unwrap_or(0) as i64;
    let cell_px = 24i64;
    let margin = 32i64;
    let width = margin * 2 + cell_px * (max_dim + 1);
    let height = margin * 2 + cell_px * (max_w + 1);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(
        out,
        "  <rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>"
    );
    for d in 0..=max_dim {
        let x = margin + d * cell_px;
        let _ = writeln!(
            out,
            "  <text x=\"{x}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{d}</text>",
            height - margin / 2
        );
    }
    for w in 0..=max_w {
        let y = height - margin - w * cell_px;
        let _ = writeln!(
            out,
            "  <text x=\"{}\" y=\"{y}\" font-size=\"10\" text-anchor=\"middle\">{w}</text>",
            margin / 2
        );
    }
    // aggregate per (total degree, weight); sigma-coordinate folded in
    let mut by_cell: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for (c, sigma, w, count) in cells {
        *by_cell.entry((c + sigma, w as i64)).or_insert(0) += count;
    }
    for ((dim, w), count) in by_cell {
        let x = margin + dim * cell_px;
        let y = height - margin - w * cell_px;
        let _ = writeln!(
            out,
            "  <circle cx=\"{x}\" cy=\"{y}\" r=\"4\" fill=\"black\"/>"
        );
        if count > 1 {
            let _ = writeln!(
                out,
                "  <text x=\"{}\" y=\"{}\" font-size=\"9\">{count}</text>",
                x + 5,
                y - 5
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn audit_text(dim: u64, profile: &GeneratorProfile) -> String {
    let mut out = String::from("tau\tdim\ttargets\texclusion\n");
    for audit in e2::permanent_cycle_report(dim) {
        let targets: Vec<String> = audit.targets.iter().map(|t| t.label(profile)).collect();
        let targets = if targets.is_empty() {
            "-".to_string()
        } else {
            targets.join(",")
        };
        let _ = writeln!(
            out,
            "tau{}\t{}\t{}\t{}",
            audit.tau_index,
            audit.dim,
            targets,
            audit.exclusion.describe()
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_parsing() {
        assert_eq!("tsv".parse::<Format>().unwrap(), Format::Tsv);
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("csv".parse::<Format>().is_err());
    }

    #[test]
    fn config_parsing() {
        let dir = std::env::temp_dir().join("relsteen-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        std::fs::write(&path, "# comment\nn = 2\nformat = json\n\nmod2 = true\n").unwrap();
        let map = load_config(&path).unwrap();
        assert_eq!(map.get("n").map(String::as_str), Some("2"));
        assert_eq!(map.get("format").map(String::as_str), Some("json"));
        assert_eq!(
            pick(None::<u32>, &map, "n", Some(9)).unwrap(),
            2,
            "config beats default"
        );
        assert_eq!(
            pick(Some(4u32), &map, "n", None).unwrap(),
            4,
            "flag beats config"
        );
        assert!(pick_flag(false, &map, "mod2").unwrap());
        assert!(!pick_flag(false, &map, "check").unwrap());

        std::fs::write(&path, "broken line\n").unwrap();
        assert!(load_config(&path).is_err());
    }

    #[test]
    fn decompose_runs() {
        let code = run(["relsteen", "decompose", "--n", "2", "--gen-index", "1"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn summand_table_shape() {
        let summands = norm_summands(2, 1).unwrap();
        let tsv = summand_tsv(&summands);
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines.len(), 4, "header plus three rows");
        assert_eq!(lines[0], "seq\tstab\torbit\tdim\tdeg");
        assert!(lines[1].starts_with("()\t2\t1\t0"));
    }
}
