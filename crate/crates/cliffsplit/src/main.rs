//! Thin command-line front end over the library. Exit codes: 0 on
//! success (`split-check`: the extension splits; `report`: all rows agree),
//! 3 when a single-group split check returns does-not-split, 2 on errors.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use cliffsplit::bichar::tambara_check;
use cliffsplit::clifford::{odd_section, Section, VerificationMode};
use cliffsplit::cyclic_two::{constraint_report, parity_constraint_check};
use cliffsplit::double::{enumerate_sp, DoubleSpace, SpBudget};
use cliffsplit::error::Error;
use cliffsplit::group::parse_group_spec;
use cliffsplit::obstruction::{
    check_cocycle_identity, obstruction_cocycle, split_check, OracleChoice, SplitOptions,
};
use cliffsplit::report::{run_roster, section_digest, section_json, RosterConfig, RunReport};
use cliffsplit::weyl::check_weyl_relations;

#[derive(Parser)]
#[command(
    name = "cliffsplit",
    about = "Exact splitting analysis for Clifford extensions of finite abelian groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Wall-clock budget per computation, in milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Worker threads for roster runs.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for sampled triple checks.
    #[arg(long, global = true, default_value_t = 0xC11F)]
    seed: u64,
}

#[derive(Copy, Clone, ValueEnum)]
enum OracleArg {
    Both,
    Coboundary,
    Complement,
}

impl From<OracleArg> for OracleChoice {
    fn from(o: OracleArg) -> OracleChoice {
        match o {
            OracleArg::Both => OracleChoice::Both,
            OracleArg::Coboundary => OracleChoice::Coboundary,
            OracleArg::Complement => OracleChoice::Complement,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the Clifford extension of a group splits.
    SplitCheck {
        groupspec: String,
        #[arg(long, value_enum, default_value_t = OracleArg::Both)]
        oracle: OracleArg,
    },
    /// Compute the obstruction cocycle of the particular section.
    Obstruction {
        groupspec: String,
        /// Dump the full table (pairs indexed by Sp rank, values as
        /// V-coordinates) as JSON.
        #[arg(long)]
        dump: bool,
    },
    /// Enumerate the symplectic group of the double.
    SpEnumerate {
        groupspec: String,
        /// Print the matrices.
        #[arg(long)]
        matrices: bool,
    },
    /// Build and verify the odd splitting section.
    OddSection { groupspec: String },
    /// Generator-lift constraint sets for a cyclic 2-group.
    CyclicConstraints { n: i64 },
    /// Verify exactness of the bicharacter sequence by enumeration.
    TambaraCheck { groupspec: String },
    /// Numeric Weyl-matrix cross-check of the beta/omega tables.
    WeylVerify { groupspec: String },
    /// Run the full reproduction roster.
    Report {
        /// Key-value config file (roster, budgets, seed, oracle).
        #[arg(long)]
        config: Option<std::path::PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let deadline = cli
        .budget_ms
        .map(|ms| Instant::now() + Duration::from_millis(ms));
    match &cli.cmd {
        Cmd::SplitCheck { groupspec, oracle } => {
            let group = parse_group_spec(groupspec)?;
            let opts = SplitOptions {
                oracle: (*oracle).into(),
                seed: cli.seed,
                deadline,
                ..SplitOptions::default()
            };
            let start = Instant::now();
            let v = split_check(&group, &opts)?;
            let elapsed = start.elapsed().as_millis() as u64;
            if cli.json {
                let record = serde_json::json!({
                    "group": group.to_string(),
                    "splits": v.splits,
                    "oracles": {
                        "coboundary": v.oracles.coboundary,
                        "complement": v.oracles.complement,
                        "agree": v.oracles.agree(),
                    },
                    "witness_digest": v.witness.as_ref().map(section_digest),
                    "timings": { "total_ms": elapsed },
                    "theorem_prediction": v.theorem_prediction,
                    "agreement": v.agreement(),
                });
                println!("{}", serde_json::to_string_pretty(&record).unwrap());
            } else {
                println!("{}: |V| = {}, |Sp| = {}", group, v.v_size, v.sp_order);
                println!(
                    "verdict: {}",
                    if v.splits { "SPLITS" } else { "DOES NOT SPLIT" }
                );
                if let Some(c) = v.oracles.coboundary {
                    println!(
                        "coboundary oracle: {}",
                        if c { "solvable" } else { "not solvable" }
                    );
                }
                if let Some(c) = v.oracles.complement {
                    println!(
                        "complement oracle: {}",
                        if c { "complement found" } else { "search exhausted" }
                    );
                }
                if let Some(rep) = v.witness_report {
                    println!(
                        "witness verified: {} pairs, {} defects ({:?})",
                        rep.pairs_checked, rep.defects, rep.mode
                    );
                }
                println!(
                    "prediction (4 does not divide |A|): {} — {}",
                    if v.theorem_prediction {
                        "splits"
                    } else {
                        "does not split"
                    },
                    if v.agreement() {
                        "agreement"
                    } else {
                        "DISCREPANCY"
                    }
                );
                println!("elapsed: {elapsed} ms");
            }
            if !v.agreement() {
                return Ok(ExitCode::from(2));
            }
            Ok(if v.splits {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Cmd::Obstruction { groupspec, dump } => {
            let group = parse_group_spec(groupspec)?;
            let space = Arc::new(DoubleSpace::new(group.clone()));
            let sp = Arc::new(enumerate_sp(&space, &SpBudget::default())?);
            let sec = Section::particular(&sp)?;
            let o = obstruction_cocycle(&sec)?;
            let ident = check_cocycle_identity(&o, cli.seed);
            if *dump || cli.json {
                let len = sp.len() as u32;
                let mut pairs = Vec::new();
                for i in 0..len {
                    for j in 0..len {
                        let coords = space.coords_of(o.entry(i, j));
                        if *dump || coords.iter().any(|&c| c != 0) {
                            pairs.push(serde_json::json!([i, j, coords]));
                        }
                    }
                }
                let record = serde_json::json!({
                    "group": group.to_string(),
                    "sp_order": sp.len(),
                    "zero": o.is_zero(),
                    "cocycle_identity": {
                        "triples": ident.triples_checked,
                        "sampled": ident.sampled,
                        "failures": ident.failures,
                    },
                    "entries": pairs,
                });
                println!("{}", serde_json::to_string_pretty(&record).unwrap());
            } else {
                println!(
                    "{}: |Sp| = {}, obstruction {}",
                    group,
                    sp.len(),
                    if o.is_zero() {
                        "identically zero"
                    } else {
                        "nonzero"
                    }
                );
                println!(
                    "cocycle identity: {} triples ({}), {} failures",
                    ident.triples_checked,
                    if ident.sampled { "sampled" } else { "exhaustive" },
                    ident.failures
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::SpEnumerate { groupspec, matrices } => {
            let group = parse_group_spec(groupspec)?;
            let space = Arc::new(DoubleSpace::new(group.clone()));
            let sp = enumerate_sp(&space, &SpBudget::default())?;
            if cli.json {
                let mats: Vec<Vec<i64>> =
                    sp.maps().iter().map(|m| m.entries().to_vec()).collect();
                let record = serde_json::json!({
                    "group": group.to_string(),
                    "moduli": space.moduli(),
                    "order": sp.len(),
                    "matrices": mats,
                });
                println!("{}", serde_json::to_string(&record).unwrap());
            } else {
                println!("{}: |Sp(V)| = {}", group, sp.len());
                if *matrices {
                    for m in sp.maps() {
                        println!("{:?}", m.entries());
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::OddSection { groupspec } => {
            let group = parse_group_spec(groupspec)?;
            let space = Arc::new(DoubleSpace::new(group.clone()));
            let sp = Arc::new(enumerate_sp(&space, &SpBudget::default())?);
            let sec = odd_section(&sp)?;
            let rep = sec.verify_homomorphism(VerificationMode::Auto);
            if cli.json {
                let mut record = section_json(&sec);
                record["group"] = serde_json::json!(group.to_string());
                record["pairs_checked"] = serde_json::json!(rep.pairs_checked);
                record["defects"] = serde_json::json!(rep.defects);
                println!("{}", serde_json::to_string(&record).unwrap());
            } else {
                println!(
                    "{}: odd section over |Sp| = {}; {} pairs checked, {} defects",
                    group,
                    sp.len(),
                    rep.pairs_checked,
                    rep.defects
                );
            }
            Ok(if rep.is_homomorphism() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Cmd::CyclicConstraints { n } => {
            let rep = constraint_report(*n)?;
            let parity = parity_constraint_check(*n)?;
            if cli.json {
                let record = serde_json::json!({
                    "n": rep.n,
                    "parity_set": rep.parity_set,
                    "modular_set": rep.modular_set,
                    "intersection": rep.intersection,
                    "closed_form_matches": parity.closed_form_matches,
                    "pairs_checked": parity.pairs_checked,
                });
                println!("{}", serde_json::to_string_pretty(&record).unwrap());
            } else {
                println!("N = {}", rep.n);
                println!("t^N = I      forces x in {:?}", rep.parity_set);
                println!("(st)^3 = s^2 forces x in {:?}", rep.modular_set);
                println!("intersection: {:?}", rep.intersection);
                println!(
                    "brute-force cross-check: {} (x, y) pairs, closed form {}",
                    parity.pairs_checked,
                    if parity.closed_form_matches {
                        "matches"
                    } else {
                        "FAILS"
                    }
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::TambaraCheck { groupspec } => {
            let group = parse_group_spec(groupspec)?;
            let space = Arc::new(DoubleSpace::new(group.clone()));
            let rep = tambara_check(&space, 1 << 20)?;
            if cli.json {
                let record = serde_json::json!({
                    "group": group.to_string(),
                    "bil": rep.bil_count,
                    "sym": rep.sym_count,
                    "alt": rep.alt_count,
                    "exact": rep.exact(),
                });
                println!("{}", serde_json::to_string_pretty(&record).unwrap());
            } else {
                println!(
                    "{}: |Bil| = {}, |Sym| = {}, |Alt| = {}, exact: {}",
                    group,
                    rep.bil_count,
                    rep.sym_count,
                    rep.alt_count,
                    rep.exact()
                );
            }
            Ok(if rep.exact() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Cmd::WeylVerify { groupspec } => {
            let group = parse_group_spec(groupspec)?;
            let space = Arc::new(DoubleSpace::new(group.clone()));
            let rep = check_weyl_relations(&space)?;
            if cli.json {
                let record = serde_json::json!({
                    "group": group.to_string(),
                    "pairs": rep.pairs_checked,
                    "worst_product_deviation": rep.worst_product_deviation,
                    "worst_commutation_deviation": rep.worst_commutation_deviation,
                    "passes": rep.passes(),
                });
                println!("{}", serde_json::to_string_pretty(&record).unwrap());
            } else {
                println!(
                    "{}: {} pairs, worst product deviation {:.3e}, worst commutation deviation {:.3e}",
                    group,
                    rep.pairs_checked,
                    rep.worst_product_deviation,
                    rep.worst_commutation_deviation
                );
            }
            Ok(if rep.passes() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Cmd::Report { config } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        Error::validation(format!("cannot read {}: {e}", path.display()))
                    })?;
                    RosterConfig::parse(&text)?
                }
                None => RosterConfig::default(),
            };
            if let Some(ms) = cli.budget_ms {
                cfg.budget_ms = Some(ms);
            }
            if let Some(w) = cli.workers {
                cfg.workers = Some(w);
            }
            cfg.seed = cli.seed;
            let report: RunReport = run_roster(&cfg)?;
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.table());
            }
            Ok(ExitCode::from(report.exit_code() as u8))
        }
    }
}
