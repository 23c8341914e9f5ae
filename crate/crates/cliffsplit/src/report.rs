//! Roster reproduction runs: `split_check` over a list of groups plus the
//! exactness, numeric, and generator-constraint sweeps, assembled into a
//! JSON-serializable report. Every row carries the computed verdict next
//! to the divisibility prediction so a mismatch is impossible to miss.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bichar::tambara_check;
use crate::clifford::{Section, VerificationMode};
use crate::cyclic_two::{constraint_report, parity_constraint_check, residual_character};
use crate::double::DoubleSpace;
use crate::error::{Error, Result};
use crate::group::parse_group_spec;
use crate::obstruction::{split_check, OracleChoice, SplitOptions};
use crate::weyl::check_weyl_relations;

pub const FORMAT_VERSION: u32 = 1;

pub const DEFAULT_ROSTER: [&str; 11] = [
    "Z2", "Z3", "Z4", "Z5", "Z6", "Z8", "Z9", "Z12", "Z2xZ2", "Z2xZ4", "Z3xZ3",
];

/// Run configuration, readable from a simple `key = value` text file.
#[derive(Clone, Debug, PartialEq)]
pub struct RosterConfig {
    pub roster: Vec<String>,
    pub budget_ms: Option<u64>,
    pub workers: Option<usize>,
    pub seed: u64,
    pub oracle: OracleChoice,
}

impl Default for RosterConfig {
    fn default() -> Self {
        RosterConfig {
            roster: DEFAULT_ROSTER.iter().map(|s| s.to_string()).collect(),
            budget_ms: None,
            workers: None,
            seed: 0xC11F,
            oracle: OracleChoice::Both,
        }
    }
}

impl RosterConfig {
    /// Parses `key = value` lines; `#` starts a comment. Keys: `roster`
    /// (comma-separated group specs), `budget_ms`, `workers`, `seed`,
    /// `oracle` (`both`/`coboundary`/`complement`).
    pub fn parse(text: &str) -> Result<RosterConfig> {
        let mut cfg = RosterConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                offset: lineno,
                msg: format!("expected 'key = value', got '{line}'"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "roster" => {
                    cfg.roster = value
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect();
                }
                "budget_ms" => {
                    cfg.budget_ms = Some(value.parse().map_err(|_| Error::Parse {
                        offset: lineno,
                        msg: format!("invalid budget_ms '{value}'"),
                    })?);
                }
                "workers" => {
                    cfg.workers = Some(value.parse().map_err(|_| Error::Parse {
                        offset: lineno,
                        msg: format!("invalid workers '{value}'"),
                    })?);
                }
                "seed" => {
                    cfg.seed = value.parse().map_err(|_| Error::Parse {
                        offset: lineno,
                        msg: format!("invalid seed '{value}'"),
                    })?;
                }
                "oracle" => {
                    cfg.oracle = match value {
                        "both" => OracleChoice::Both,
                        "coboundary" => OracleChoice::Coboundary,
                        "complement" => OracleChoice::Complement,
                        other => {
                            return Err(Error::Parse {
                                offset: lineno,
                                msg: format!("unknown oracle '{other}'"),
                            })
                        }
                    };
                }
                other => {
                    return Err(Error::Parse {
                        offset: lineno,
                        msg: format!("unknown key '{other}'"),
                    })
                }
            }
        }
        Ok(cfg)
    }
}

/// One roster row; `verdict` is `splits`, `does-not-split`, or `error`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RosterRow {
    pub group: String,
    pub v_size: u64,
    pub sp_order: Option<u64>,
    pub verdict: String,
    pub theorem_prediction: bool,
    pub agreement: Option<bool>,
    /// Loud flag: computed verdict contradicts the prediction.
    pub discrepancy: bool,
    pub oracle_coboundary: Option<bool>,
    pub oracle_complement: Option<bool>,
    pub oracles_agree: Option<bool>,
    pub witness_digest: Option<String>,
    pub witness_pairs_checked: Option<u64>,
    pub witness_defects: Option<u64>,
    pub witness_mode: Option<String>,
    pub cocycle_triples_checked: Option<u64>,
    pub cocycle_sampled: Option<bool>,
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

/// A named auxiliary check (exactness, numeric, constraint sweeps).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuxCheck {
    pub name: String,
    pub target: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub format_version: u32,
    pub rows: Vec<RosterRow>,
    pub aux_checks: Vec<AuxCheck>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<RunReport> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            offset: 0,
            msg: format!("invalid report JSON: {e}"),
        })
    }

    /// 0 when every row agrees with the prediction and none errored,
    /// otherwise 2.
    pub fn exit_code(&self) -> i32 {
        let bad = self
            .rows
            .iter()
            .any(|r| r.error.is_some() || r.discrepancy)
            || self.aux_checks.iter().any(|c| !c.passed);
        if bad {
            2
        } else {
            0
        }
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<8} {:>6} {:>8} {:<16} {:>7} {:>6}  {}\n",
            "group", "|V|", "|Sp|", "verdict", "predict", "agree", "ms"
        ));
        for r in &self.rows {
            let sp = r
                .sp_order
                .map_or_else(|| "-".to_string(), |s| s.to_string());
            let agree = match (r.discrepancy, &r.error) {
                (_, Some(_)) => "error",
                (true, _) => "NO!",
                (false, _) => "yes",
            };
            out.push_str(&format!(
                "{:<8} {:>6} {:>8} {:<16} {:>7} {:>6}  {}\n",
                r.group,
                r.v_size,
                sp,
                r.verdict,
                if r.theorem_prediction { "splits" } else { "no" },
                agree,
                r.elapsed_ms
            ));
        }
        for c in &self.aux_checks {
            out.push_str(&format!(
                "aux {:<24} {:<8} {:>6}  {}\n",
                c.name,
                c.target,
                if c.passed { "pass" } else { "FAIL" },
                c.detail
            ));
        }
        out
    }
}

/// Canonical SHA-256 digest of a section (matrices and phase tables).
pub fn section_digest(sec: &Section) -> String {
    let mut hasher = Sha256::new();
    for l in sec.lifts() {
        for &e in l.map().entries() {
            hasher.update(e.to_le_bytes());
        }
        for p in l.lam().table() {
            hasher.update(p.num().to_le_bytes());
            hasher.update(p.den().to_le_bytes());
        }
    }
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// JSON value for a section: one record per symplectic map.
pub fn section_json(sec: &Section) -> serde_json::Value {
    let moduli = sec.space().moduli().to_vec();
    let records: Vec<serde_json::Value> = sec
        .lifts()
        .iter()
        .map(|l| {
            serde_json::json!({
                "matrix": l.map().entries(),
                "phase_table": l
                    .lam()
                    .table()
                    .iter()
                    .map(|p| vec![p.num(), p.den()])
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::json!({ "moduli": moduli, "lifts": records })
}

fn split_options(cfg: &RosterConfig) -> SplitOptions {
    SplitOptions {
        oracle: cfg.oracle,
        seed: cfg.seed,
        deadline: cfg.budget_ms.map(|ms| Instant::now() + Duration::from_millis(ms)),
        ..SplitOptions::default()
    }
}

fn run_row(spec: &str, cfg: &RosterConfig) -> RosterRow {
    let start = Instant::now();
    let group = match parse_group_spec(spec) {
        Ok(g) => g,
        Err(e) => {
            return RosterRow {
                group: spec.to_string(),
                v_size: 0,
                sp_order: None,
                verdict: "error".to_string(),
                theorem_prediction: false,
                agreement: None,
                discrepancy: false,
                oracle_coboundary: None,
                oracle_complement: None,
                oracles_agree: None,
                witness_digest: None,
                witness_pairs_checked: None,
                witness_defects: None,
                witness_mode: None,
                cocycle_triples_checked: None,
                cocycle_sampled: None,
                error: Some(e.to_string()),
                elapsed_ms: start.elapsed().as_millis() as u64,
            }
        }
    };
    let opts = split_options(cfg);
    match split_check(&group, &opts) {
        Ok(v) => RosterRow {
            group: spec.to_string(),
            v_size: v.v_size,
            sp_order: Some(v.sp_order),
            verdict: if v.splits {
                "splits".to_string()
            } else {
                "does-not-split".to_string()
            },
            theorem_prediction: v.theorem_prediction,
            agreement: Some(v.agreement()),
            discrepancy: !v.agreement(),
            oracle_coboundary: v.oracles.coboundary,
            oracle_complement: v.oracles.complement,
            oracles_agree: v.oracles.agree(),
            witness_digest: v.witness.as_ref().map(section_digest),
            witness_pairs_checked: v.witness_report.map(|r| r.pairs_checked),
            witness_defects: v.witness_report.map(|r| r.defects),
            witness_mode: v.witness_report.map(|r| match r.mode {
                VerificationMode::Pairwise => "pairwise".to_string(),
                VerificationMode::Closure => "closure".to_string(),
                VerificationMode::Auto => "auto".to_string(),
            }),
            cocycle_triples_checked: v.identity_report.map(|r| r.triples_checked),
            cocycle_sampled: v.identity_report.map(|r| r.sampled),
            error: None,
            elapsed_ms: start.elapsed().as_millis() as u64,
        },
        Err(e) => RosterRow {
            group: spec.to_string(),
            v_size: group.size() * group.size(),
            sp_order: None,
            verdict: "error".to_string(),
            theorem_prediction: group.size() % 4 != 0,
            agreement: None,
            discrepancy: false,
            oracle_coboundary: None,
            oracle_complement: None,
            oracles_agree: None,
            witness_digest: None,
            witness_pairs_checked: None,
            witness_defects: None,
            witness_mode: None,
            cocycle_triples_checked: None,
            cocycle_sampled: None,
            error: Some(e.to_string()),
            elapsed_ms: start.elapsed().as_millis() as u64,
        },
    }
}

fn aux_checks(seed: u64) -> Vec<AuxCheck> {
    let mut out = Vec::new();
    for spec in ["Z2", "Z3"] {
        let g = parse_group_spec(spec).expect("valid spec");
        let space = Arc::new(DoubleSpace::new(g));
        match tambara_check(&space, 1 << 20) {
            Ok(rep) => out.push(AuxCheck {
                name: "tambara-exactness".to_string(),
                target: spec.to_string(),
                passed: rep.exact(),
                detail: format!(
                    "|Bil|={} |Sym|={} |Alt|={}",
                    rep.bil_count, rep.sym_count, rep.alt_count
                ),
            }),
            Err(e) => out.push(AuxCheck {
                name: "tambara-exactness".to_string(),
                target: spec.to_string(),
                passed: false,
                detail: e.to_string(),
            }),
        }
    }
    for spec in ["Z2", "Z3", "Z4", "Z2xZ2"] {
        let g = parse_group_spec(spec).expect("valid spec");
        let space = Arc::new(DoubleSpace::new(g));
        match check_weyl_relations(&space) {
            Ok(rep) => out.push(AuxCheck {
                name: "weyl-relations".to_string(),
                target: spec.to_string(),
                passed: rep.passes(),
                detail: format!(
                    "worst product {:.2e}, worst commutation {:.2e}",
                    rep.worst_product_deviation, rep.worst_commutation_deviation
                ),
            }),
            Err(e) => out.push(AuxCheck {
                name: "weyl-relations".to_string(),
                target: spec.to_string(),
                passed: false,
                detail: e.to_string(),
            }),
        }
    }
    for n in [2i64, 4, 8] {
        match parity_constraint_check(n) {
            Ok(rep) => out.push(AuxCheck {
                name: "parity-constraint".to_string(),
                target: format!("N={n}"),
                passed: rep.holds(),
                detail: format!("{} (x, y) pairs", rep.pairs_checked),
            }),
            Err(e) => out.push(AuxCheck {
                name: "parity-constraint".to_string(),
                target: format!("N={n}"),
                passed: false,
                detail: e.to_string(),
            }),
        }
    }
    // residual character: exhaustive at N = 4, seeded sample at N = 8
    {
        let mut ok = true;
        let mut count = 0u64;
        'outer: for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    for w in 0..4 {
                        count += 1;
                        if residual_character(4, x, y, z, w).is_err() {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        out.push(AuxCheck {
            name: "residual-character".to_string(),
            target: "N=4".to_string(),
            passed: ok,
            detail: format!("{count} tuples, closed form == direct product"),
        });
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut ok8 = true;
        for _ in 0..256 {
            let (x, y, z, w) = (
                rng.gen_range(0..8),
                rng.gen_range(0..8),
                rng.gen_range(0..8),
                rng.gen_range(0..8),
            );
            if residual_character(8, x, y, z, w).is_err() {
                ok8 = false;
                break;
            }
        }
        out.push(AuxCheck {
            name: "residual-character".to_string(),
            target: "N=8".to_string(),
            passed: ok8,
            detail: "256 seeded tuples".to_string(),
        });
    }
    for n in [2i64, 4, 8] {
        match constraint_report(n) {
            Ok(rep) => {
                let expected_nonempty = n == 2;
                out.push(AuxCheck {
                    name: "constraint-intersection".to_string(),
                    target: format!("N={n}"),
                    passed: rep.intersection.is_empty() != expected_nonempty,
                    detail: format!(
                        "parity {:?} ∩ modular {:?} = {:?}",
                        rep.parity_set, rep.modular_set, rep.intersection
                    ),
                });
            }
            Err(e) => out.push(AuxCheck {
                name: "constraint-intersection".to_string(),
                target: format!("N={n}"),
                passed: false,
                detail: e.to_string(),
            }),
        }
    }
    out
}

/// Runs the configured roster. Rows run concurrently up to the configured
/// worker count; output order is the roster order regardless of schedule.
pub fn run_roster(cfg: &RosterConfig) -> Result<RunReport> {
    let rows = match cfg.workers {
        Some(workers) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers.max(1))
                .build()
                .map_err(|e| Error::internal(format!("thread pool: {e}")))?;
            pool.install(|| {
                cfg.roster
                    .par_iter()
                    .map(|spec| run_row(spec, cfg))
                    .collect::<Vec<_>>()
            })
        }
        None => cfg
            .roster
            .par_iter()
            .map(|spec| run_row(spec, cfg))
            .collect(),
    };
    Ok(RunReport {
        format_version: FORMAT_VERSION,
        rows,
        aux_checks: aux_checks(cfg.seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let cfg = RosterConfig::parse(
            "# a comment\nroster = Z2, Z3\nbudget_ms = 5000\nseed = 7\nworkers = 2\noracle = coboundary\n",
        )
        .unwrap();
        assert_eq!(cfg.roster, vec!["Z2", "Z3"]);
        assert_eq!(cfg.budget_ms, Some(5000));
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.workers, Some(2));
        assert_eq!(cfg.oracle, OracleChoice::Coboundary);
        assert!(RosterConfig::parse("nonsense\n").is_err());
        assert!(RosterConfig::parse("mystery = 3\n").is_err());
        assert_eq!(RosterConfig::parse("").unwrap(), RosterConfig::default());
    }

    #[test]
    fn empty_roster_gives_empty_report() {
        let cfg = RosterConfig {
            roster: vec![],
            ..RosterConfig::default()
        };
        let rep = run_roster(&cfg).unwrap();
        assert!(rep.rows.is_empty());
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn report_json_round_trip() {
        let cfg = RosterConfig {
            roster: vec!["Z2".to_string(), "Z0".to_string()],
            ..RosterConfig::default()
        };
        let rep = run_roster(&cfg).unwrap();
        assert_eq!(rep.rows.len(), 2);
        assert!(rep.rows[1].error.is_some());
        let parsed = RunReport::from_json(&rep.to_json()).unwrap();
        assert_eq!(parsed, rep);
        // an error row forces exit code 2, others still complete
        assert_eq!(rep.exit_code(), 2);
        assert_eq!(rep.rows[0].verdict, "splits");
    }

    #[test]
    fn oversized_group_flagged_but_run_continues() {
        let cfg = RosterConfig {
            roster: vec!["Z64".to_string(), "Z3".to_string()],
            ..RosterConfig::default()
        };
        let rep = run_roster(&cfg).unwrap();
        assert!(rep.rows[0].error.as_deref().unwrap_or("").contains("budget"));
        assert_eq!(rep.rows[1].verdict, "splits");
    }
}
