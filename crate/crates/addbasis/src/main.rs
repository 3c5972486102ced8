//! Command-line entry point: solve, construct, verify, gen, probe, sweep.
//!
//! Exit codes: 0 success/covered, 1 verified-false, 2 input error,
//! 3 configuration/guard error, 4 resource budget exhausted.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use addbasis::constructions::{
    dyadic_size_bound, dyadic_two_basis, higher_order_nonneg_basis, higher_order_size_bound,
    round_to_integer_basis,
};
use addbasis::error::Error;
use addbasis::instances::{
    gen_power_family, gen_random_rational_basis, gen_random_signed_integer_basis,
};
use addbasis::rational::Rational;
use addbasis::report::RunReport;
use addbasis::solver::{default_ground_set, min_basis, BasisInstance};
use addbasis::sumset::{is_k_basis, k_sum_membership, ElementSet};
use addbasis::vector_model::{check_vector_cover, conjecture1_probe, lemma2_counterexample_check, VectorFamily};

const EXIT_OK: i32 = 0;
const EXIT_FALSE: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_CONFIG: i32 = 3;
const EXIT_BUDGET: i32 = 4;

#[derive(Parser)]
#[command(name = "addbasis", version, about = "Exact additive k-basis toolkit")]
struct Cli {
    /// Worker threads (all computations are deterministic regardless).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Seed for generators and sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the run report as JSON to this path (default: stdout).
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,

    /// Write sweep rows as CSV to this path.
    #[arg(long, global = true)]
    csv_out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact minimum-basis search over a finite ground set.
    Solve {
        /// BasisInstance JSON, e.g. {"k":2,"domain":"N","A":["0","8"]}
        #[arg(long)]
        input: PathBuf,
        /// Half-width of the integer window, as a multiple of max|A|.
        #[arg(long, default_value_t = 2)]
        window_multiplier: u32,
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// Run one of the constructive upper bounds.
    Construct {
        #[arg(value_enum)]
        which: Construction,
        /// ElementSet JSON: array of scalar strings.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Also emit one SumCertificate per covered target.
        #[arg(long)]
        emit_certificates: bool,
    },
    /// Check A ⊆ kB and report failing elements.
    Verify {
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        targets: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Generate instance families.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Verifiers and probes for the vector model.
    Probe {
        #[command(subcommand)]
        probe: ProbeKind,
    },
    /// Generate/construct/verify across a parameter grid, with bound ratios.
    Sweep {
        #[arg(long, value_enum)]
        family: SweepFamily,
        /// Comma-separated n values, e.g. 4,8,16
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// Comma-separated k values (ignored for dyadic, which is k = 2).
        #[arg(long, value_delimiter = ',', default_value = "2")]
        k: Vec<u32>,
        /// Guard: maximum number of grid cells.
        #[arg(long, default_value_t = 256)]
        cell_cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    /// Floor/ceiling rounding of a rational basis.
    Round,
    /// Dyadic 2-basis for a signed integer basis.
    Dyadic,
    /// Higher-order non-negative basis via the AP recursion.
    Higher,
}

#[derive(Subcommand)]
enum GenFamily {
    /// C = {±base^r} and A = (C+C) ∩ ℕ.
    PowerFamily {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        base: u32,
    },
    /// n distinct rationals from a bounded grid.
    RandomBasis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        denom: u32,
        #[arg(long)]
        mag: u32,
    },
    /// n distinct magnitudes with random sign patterns.
    RandomSigned {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mag: u32,
    },
}

#[derive(Subcommand)]
enum ProbeKind {
    /// Verify the k-fold covering condition for a VectorFamily JSON file.
    VectorCover {
        #[arg(long)]
        input: PathBuf,
    },
    /// Grid search for a small covering family.
    Conjecture1 {
        #[arg(long)]
        n: usize,
        /// Sizes s0,s1 of the two parts.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        coord_bound: u32,
        #[arg(long, default_value_t = 1)]
        denom_bound: u32,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Fixed regression: the three-systems counterexample over ℤ².
    Lemma2,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFamily {
    Dyadic,
    Higher,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    };
    std::process::exit(code);
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<(T, Vec<u8>), Error> {
    let bytes = fs::read(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let value = serde_json::from_slice(&bytes)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok((value, bytes))
}

fn emit(cli: &Cli, report: &RunReport) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(report)
        .map_err(|e| Error::InvalidInput(format!("serialize report: {e}")))?;
    match &cli.json_out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn command_echo() -> Vec<String> {
    std::env::args().collect()
}

fn run(cli: &Cli) -> Result<i32, Error> {
    if cli.threads == 0 {
        eprintln!("error: --threads must be >= 1");
        return Ok(EXIT_CONFIG);
    }
    let mut report = RunReport::new(command_echo());
    match &cli.command {
        Command::Solve {
            input,
            window_multiplier,
            node_budget,
        } => {
            let (instance, bytes): (BasisInstance, _) = read_json(input)?;
            report.digest_input(&bytes);
            let started = Instant::now();
            let ground = default_ground_set(&instance, *window_multiplier)?;
            let result = min_basis(&instance, &ground, *node_budget)?;
            report
                .timings_ms
                .insert("solve".into(), started.elapsed().as_millis());
            report.results = serde_json::to_value(&result).expect("serializable");
            emit(cli, &report)?;
            Ok(EXIT_OK)
        }
        Command::Construct {
            which,
            input,
            k,
            emit_certificates,
        } => {
            let (basis, bytes): (ElementSet, _) = read_json(input)?;
            report.digest_input(&bytes);
            let started = Instant::now();
            let (output, targets) = match which {
                Construction::Round => {
                    let out = round_to_integer_basis(&basis);
                    let targets = basis.k_fold_sumset(*k)?.filter(Rational::is_integer);
                    (out, targets)
                }
                Construction::Dyadic => {
                    let out = dyadic_two_basis(&basis)?;
                    let targets = basis.k_fold_sumset(2)?.filter(|v| !v.is_negative());
                    (out, targets)
                }
                Construction::Higher => {
                    let out = higher_order_nonneg_basis(&basis, *k)?;
                    let targets = basis
                        .signed_closure()
                        .k_fold_sumset(*k)?
                        .filter(|v| !v.is_negative());
                    (out, targets)
                }
            };
            let k_eff = match which {
                Construction::Dyadic => 2,
                _ => *k,
            };
            let (covered, map) = is_k_basis(&output, &targets, k_eff)?;
            report
                .timings_ms
                .insert("construct".into(), started.elapsed().as_millis());
            let mut results = json!({
                "basis": output,
                "size": output.len(),
                "covered": covered,
            });
            if *emit_certificates {
                let certs: BTreeMap<String, _> = map
                    .iter()
                    .map(|(t, c)| (t.to_string(), c.clone()))
                    .collect();
                results["certificates"] = serde_json::to_value(certs).expect("serializable");
            }
            let bound = match which {
                Construction::Round => Some(("round_2n", 2.0 * basis.len() as f64)),
                Construction::Dyadic => {
                    let n = ElementSet::new(basis.iter().map(Rational::abs)).len();
                    (n >= 2).then(|| ("dyadic_3n_2nlog2n", dyadic_size_bound(n)))
                }
                Construction::Higher => Some((
                    "higher_2n3klog2k",
                    higher_order_size_bound(basis.len(), *k),
                )),
            };
            if let Some((name, b)) = bound {
                if b > 0.0 {
                    report
                        .bound_ratios
                        .insert(name.into(), output.len() as f64 / b);
                }
            }
            report.results = results;
            emit(cli, &report)?;
            Ok(if covered { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Verify { basis, targets, k } => {
            let (b, b_bytes): (ElementSet, _) = read_json(basis)?;
            let (a, a_bytes): (ElementSet, _) = read_json(targets)?;
            let mut digest_input = b_bytes;
            digest_input.extend_from_slice(&a_bytes);
            report.digest_input(&digest_input);
            let started = Instant::now();
            let (covered, map) = is_k_basis(&b, &a, *k)?;
            report
                .timings_ms
                .insert("verify".into(), started.elapsed().as_millis());
            let failing: Vec<String> = map
                .iter()
                .filter(|(_, c)| c.is_none())
                .map(|(t, _)| t.to_string())
                .collect();
            let certs: BTreeMap<String, _> = map
                .iter()
                .filter_map(|(t, c)| c.clone().map(|c| (t.to_string(), c)))
                .collect();
            report.results = json!({
                "covered": covered,
                "failing": failing,
                "certificates": certs,
            });
            emit(cli, &report)?;
            Ok(if covered { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Gen { family } => {
            let results = match family {
                GenFamily::PowerFamily { n, base } => {
                    let (c, a) = gen_power_family(*n, *base)?;
                    let instance = BasisInstance {
                        a,
                        k: 2,
                        domain: addbasis::solver::Domain::NaturalNumbers,
                    };
                    json!({
                        "witness": c,
                        "instance": instance,
                    })
                }
                GenFamily::RandomBasis { n, denom, mag } => {
                    let b = gen_random_rational_basis(*n, *denom, *mag, cli.seed)?;
                    json!({ "basis": b, "seed": cli.seed })
                }
                GenFamily::RandomSigned { n, mag } => {
                    let b = gen_random_signed_integer_basis(*n, *mag, cli.seed)?;
                    json!({ "basis": b, "seed": cli.seed })
                }
            };
            report.results = results;
            emit(cli, &report)?;
            Ok(EXIT_OK)
        }
        Command::Probe { probe } => match probe {
            ProbeKind::VectorCover { input } => {
                let (family, bytes): (VectorFamily, _) = read_json(input)?;
                report.digest_input(&bytes);
                let (covered, map) = check_vector_cover(&family)?;
                let failing: Vec<String> = map
                    .iter()
                    .filter(|(_, w)| w.is_none())
                    .map(|(t, _)| format!("{t:?}"))
                    .collect();
                report.results = json!({ "covered": covered, "failing": failing });
                emit(cli, &report)?;
                Ok(if covered { EXIT_OK } else { EXIT_FALSE })
            }
            ProbeKind::Conjecture1 {
                n,
                sizes,
                coord_bound,
                denom_bound,
                budget,
            } => {
                if sizes.len() != 2 {
                    eprintln!("error: --sizes wants exactly two values, e.g. 2,2");
                    return Ok(EXIT_CONFIG);
                }
                let outcome =
                    conjecture1_probe(*n, (sizes[0], sizes[1]), *coord_bound, *denom_bound, *budget)?;
                let exhausted = outcome.budget_exhausted;
                report.results = serde_json::to_value(&outcome).expect("serializable");
                emit(cli, &report)?;
                Ok(if exhausted { EXIT_BUDGET } else { EXIT_OK })
            }
            ProbeKind::Lemma2 => {
                let ok = lemma2_counterexample_check();
                report.results = json!({ "holds": ok });
                emit(cli, &report)?;
                Ok(if ok { EXIT_OK } else { EXIT_FALSE })
            }
        },
        Command::Sweep {
            family,
            n,
            k,
            cell_cap,
        } => {
            let ks: Vec<u32> = match family {
                SweepFamily::Dyadic => vec![2],
                SweepFamily::Higher => k.clone(),
            };
            let cells = n.len() * ks.len();
            if cells == 0 {
                eprintln!("error: empty sweep grid");
                return Ok(EXIT_CONFIG);
            }
            if cells > *cell_cap {
                eprintln!("error: sweep grid of {cells} cells exceeds cap {cell_cap}");
                return Ok(EXIT_CONFIG);
            }
            let mut rows = Vec::new();
            for (idx, &nv) in n.iter().enumerate() {
                for &kv in &ks {
                    let row = sweep_cell(*family, nv, kv, cli.seed.wrapping_add(idx as u64))?;
                    rows.push(row);
                }
            }
            if let Some(path) = &cli.csv_out {
                let mut csv = String::from("family,n,k,construction,size,paper_bound,ratio,covered,millis\n");
                for r in &rows {
                    csv.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{}\n",
                        r.family, r.n, r.k, r.construction, r.size, r.paper_bound, r.ratio,
                        r.covered, r.millis
                    ));
                }
                fs::write(path, csv).map_err(|e| {
                    Error::InvalidInput(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            let all_covered = rows.iter().all(|r| r.covered);
            report.results = serde_json::to_value(&rows).expect("serializable");
            emit(cli, &report)?;
            Ok(if all_covered { EXIT_OK } else { EXIT_FALSE })
        }
    }
}

#[derive(serde::Serialize)]
struct SweepRow {
    family: String,
    n: usize,
    k: u32,
    construction: String,
    size: usize,
    paper_bound: f64,
    ratio: f64,
    covered: bool,
    millis: u128,
}

fn sweep_cell(family: SweepFamily, n: usize, k: u32, seed: u64) -> Result<SweepRow, Error> {
    let started = Instant::now();
    match family {
        SweepFamily::Dyadic => {
            let b = gen_random_signed_integer_basis(n, (10 * n).max(10) as u32, seed)?;
            let plus = dyadic_two_basis(&b)?;
            let targets = b.k_fold_sumset(2)?.filter(|v| !v.is_negative());
            let covered = targets
                .iter()
                .all(|t| matches!(k_sum_membership(t, &plus, 2), Ok(Some(_))));
            let mags = ElementSet::new(b.iter().map(Rational::abs)).len();
            let bound = dyadic_size_bound(mags);
            Ok(SweepRow {
                family: "dyadic".into(),
                n,
                k: 2,
                construction: "dyadic_two_basis".into(),
                size: plus.len(),
                paper_bound: bound,
                ratio: plus.len() as f64 / bound,
                covered,
                millis: started.elapsed().as_millis(),
            })
        }
        SweepFamily::Higher => {
            let raw = gen_random_rational_basis(n, 6, 4, seed)?;
            let b = ElementSet::new(raw.iter().map(Rational::abs)).filter(|v| !v.is_zero());
            let b = if b.is_empty() {
                ElementSet::new([Rational::one()])
            } else {
                b
            };
            let x = higher_order_nonneg_basis(&b, k)?;
            let targets = b
                .signed_closure()
                .k_fold_sumset(k)?
                .filter(|v| !v.is_negative());
            let covered = targets
                .iter()
                .all(|t| matches!(k_sum_membership(t, &x, k), Ok(Some(_))));
            let bound = higher_order_size_bound(b.len(), k);
            Ok(SweepRow {
                family: "higher".into(),
                n: b.len(),
                k,
                construction: "higher_order_nonneg_basis".into(),
                size: x.len(),
                paper_bound: bound,
                ratio: x.len() as f64 / bound,
                covered,
                millis: started.elapsed().as_millis(),
            })
        }
    }
}
