use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::json;

use wpslab_core::exec::Execution;
use wpslab_core::families::{self, FamilyError};
use wpslab_core::polyseq::{poly_sequence, sylvester, verify_identities};
use wpslab_core::precision::FixedDecimal;
use wpslab_core::search::{self, Objective, SearchConfig, SearchResult, SearchStats};
use wpslab_core::wps::{
    hypersurface_well_formed, quasi_smooth_cycle, quasi_smooth_general, section_counts,
    volume_limit_estimate, volume_of_twist, wps_well_formed, Verdict, VolumeTarget,
};
use wpslab_core::{Degree, Hypersurface, MembershipGuard, WeightSystem};

use crate::args::{Cli, Command, MethodArg, ObjectiveArg, WeightList};
use crate::document::{
    CertificateDocument, HilbertReport, IdentitiesReport, PolyReport, RatioReport, Results,
    SylvesterReport, VerifyReport,
};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    Usage = 2,
    Undecided = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub document: CertificateDocument,
    pub status: Status,
}

/// A parameter problem found after argument parsing; exits with status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn usage(e: impl ToString) -> UsageError {
    UsageError(e.to_string())
}

/// Digits after the point in the hilbert estimate.
pub const ESTIMATE_DIGITS: u32 = 20;

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn hypersurface(weights: &WeightList, degree: &BigInt) -> Result<Hypersurface, UsageError> {
    let ambient = WeightSystem::new(weights.0.clone()).map_err(usage)?;
    Hypersurface::new(ambient, degree.clone()).map_err(usage)
}

fn guard(max: u64) -> Result<MembershipGuard, UsageError> {
    MembershipGuard::new(max).ok_or_else(|| usage("guard must be at least 1"))
}

/// `d / prod a_i` when `K_X = O_X(+1)` or `O_X(-1)`.
fn unit_volume(h: &Hypersurface) -> Option<BigRational> {
    h.canonical_degree()
        .abs()
        .is_one()
        .then(|| volume_of_twist(VolumeTarget::Hypersurface(h), &BigInt::one()))
}

pub fn run(cli: &Cli, command_line: String) -> Result<Outcome, UsageError> {
    let start = Instant::now();
    let (inputs, results, status) = match &cli.command {
        Command::Sylvester { count } => {
            let terms = (0..*count as usize).map(sylvester).collect();
            (json!({ "count": count }), Results::Sylvester(SylvesterReport { terms }), Status::Ok)
        }
        Command::Poly { kind, index, at } => {
            let p = poly_sequence(*kind, *index as usize);
            let degree = match p.degree() {
                Degree::Finite(d) => Some(d),
                Degree::MinusInfinity => None,
            };
            let report = PolyReport {
                kind: *kind,
                index: *index as usize,
                degree,
                coefficients: p.coeffs().to_vec(),
                display: p.to_string(),
                at: at.clone(),
                value: at.as_ref().map(|y| p.eval(y)),
            };
            let inputs = json!({ "kind": kind, "index": index, "at": at.as_ref().map(|y| y.to_string()) });
            (inputs, Results::Poly(report), Status::Ok)
        }
        Command::Construct { family, r, n, guard: g } => {
            let member = families::construct(*family, *r, *n).map_err(|e| match e {
                FamilyError::Invariant(_) => UsageError(format!("internal error: {e}")),
                _ => usage(e),
            })?;
            let cert = families::verify_member(&member, guard(*g)?);
            let status = if cert.is_valid() { Status::Ok } else { Status::Failed };
            let inputs = json!({ "family": family.tag(), "r": r, "n": n, "guard": g });
            (inputs, Results::Family(Box::new(cert)), status)
        }
        Command::Verify {
            weights,
            degree,
            method,
            r,
            guard: g,
        } => {
            let h = hypersurface(weights, degree)?;
            let ambient_well_formed = wps_well_formed(h.ambient());
            let hypersurface_ok = hypersurface_well_formed(&h).unwrap_or(false);
            let quasi_smooth = match method {
                MethodArg::General => quasi_smooth_general(&h, guard(*g)?).map_err(usage)?,
                MethodArg::Cycle => {
                    let r = r.ok_or_else(|| usage("--method cycle needs -r/--r"))?;
                    quasi_smooth_cycle(&h, r).map_err(usage)?
                }
            };
            let status = match quasi_smooth.verdict {
                Verdict::QuasiSmooth => Status::Ok,
                Verdict::NotQuasiSmooth => Status::Failed,
                Verdict::Undecided => Status::Undecided,
            };
            let inputs = json!({
                "weights": strings(&weights.0),
                "degree": degree.to_string(),
                "method": match method { MethodArg::General => "general", MethodArg::Cycle => "cycle" },
                "r": r,
                "guard": g,
            });
            let report = VerifyReport {
                canonical_degree: h.canonical_degree(),
                volume: unit_volume(&h),
                hypersurface: h,
                ambient_well_formed,
                hypersurface_well_formed: hypersurface_ok,
                quasi_smooth,
            };
            (inputs, Results::Verify(Box::new(report)), status)
        }
        Command::Hilbert { weights, degree, max_m } => {
            let h = hypersurface(weights, degree)?;
            let counts = section_counts(&h, *max_m).map_err(usage)?;
            let estimate = (h.canonical_degree().is_one() && *max_m >= 1)
                .then(|| volume_limit_estimate(&h, *max_m))
                .transpose()
                .map_err(usage)?;
            let estimate_decimal = estimate
                .as_ref()
                .map(|e| FixedDecimal::from_rational(e, ESTIMATE_DIGITS).to_string());
            let inputs = json!({ "weights": strings(&weights.0), "degree": degree.to_string(), "max_m": max_m });
            let report = HilbertReport {
                volume: unit_volume(&h),
                hypersurface: h,
                counts,
                estimate,
                estimate_decimal,
                precision: ESTIMATE_DIGITS,
            };
            (inputs, Results::Hilbert(report), Status::Ok)
        }
        Command::Search {
            dim,
            max_weight,
            canonical,
            objective,
            top_k,
            shard_index,
            shard_count,
            workers,
            guard: g,
            verbose: _,
        } => {
            let objective = match objective {
                ObjectiveArg::MinVolume => Objective::MinVolume,
                ObjectiveArg::MaxBottomWeight => Objective::MaxBottomWeight,
            };
            let mut config = SearchConfig::new(*dim, *max_weight, *canonical, objective)
                .with_top_k(*top_k)
                .with_shard(*shard_index, *shard_count);
            config.membership_guard = guard(*g)?;
            config.validate().map_err(usage)?;
            if *workers == 0 {
                return Err(usage("--workers must be at least 1"));
            }
            let result = if *workers > 1 && *shard_count == 1 {
                run_sharded(&config, *workers)
            } else {
                search::run_search(&config).map_err(usage)?
            };
            let inputs = json!({ "config": config, "workers": workers });
            (inputs, Results::Search(Box::new(result)), Status::Ok)
        }
        Command::Ratio { r, n } => {
            let ratio = families::log_volume_ratio(*r, *n).map_err(usage)?;
            let member = families::construct(families::FamilyKind::GeneralType, *r, *n).map_err(usage)?;
            let report = RatioReport {
                r: *r,
                n: *n,
                ratio_decimal: ratio.value.to_string(),
                precision: ratio.value.digits,
                volume: families::volume_closed_form(&member),
                pair_volume: families::kollar_pair_volume(*n).map_err(usage)?,
            };
            (json!({ "r": r, "n": n }), Results::Ratio(report), Status::Ok)
        }
        Command::Identities { max_index } => {
            let records = verify_identities(*max_index as usize);
            let all_hold = records.iter().all(|r| r.holds);
            let report = IdentitiesReport {
                max_index: *max_index as usize,
                all_hold,
                records,
            };
            let status = if all_hold { Status::Ok } else { Status::Failed };
            (json!({ "max_index": max_index }), Results::Identities(report), status)
        }
    };
    Ok(Outcome {
        document: CertificateDocument::new(command_line, inputs, results, start.elapsed()),
        status,
    })
}

/// Runs `workers` hash shards on their own threads and merges them.
fn run_sharded(config: &SearchConfig, workers: u32) -> SearchResult {
    let parts: Vec<SearchResult> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|i| {
                let c = config.clone().with_shard(i, workers);
                s.spawn(move || search::run_search_with(&c, Execution::Sequential).expect("validated config"))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("shard worker panicked")).collect()
    });
    let stats = parts
        .iter()
        .map(|p| p.stats.clone())
        .fold(SearchStats::default(), SearchStats::merge);
    SearchResult {
        config: config.clone(),
        hits: search::merge_results(config, &parts),
        stats,
    }
}
