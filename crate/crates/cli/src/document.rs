//! The JSON certificate document written by every subcommand.

use std::time::Duration;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use wpslab_core::families::FamilyCertificate;
use wpslab_core::polyseq::{IdentityRecord, PolySequenceKind};
use wpslab_core::search::SearchResult;
use wpslab_core::serde_big;
use wpslab_core::wps::QuasiSmoothCertificate;
use wpslab_core::Hypersurface;

pub const SCHEMA_VERSION: &str = "wpslab/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub command: String,
    pub inputs: serde_json::Value,
    pub results: Results,
    pub timing: Duration,
}

impl CertificateDocument {
    pub fn new(command: String, inputs: serde_json::Value, results: Results, timing: Duration) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command,
            inputs,
            results,
            timing,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Parses a document, rejecting unknown fields and other schema versions.
    pub fn from_json(s: &str) -> Result<Self, String> {
        let doc: Self = serde_json::from_str(s).map_err(|e| e.to_string())?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(format!("unsupported schema version {:?}", doc.schema_version));
        }
        Ok(doc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Results {
    Sylvester(SylvesterReport),
    Poly(PolyReport),
    Family(Box<FamilyCertificate>),
    Verify(Box<VerifyReport>),
    Hilbert(HilbertReport),
    Search(Box<SearchResult>),
    Ratio(RatioReport),
    Identities(IdentitiesReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SylvesterReport {
    #[serde(with = "serde_big::int_vec")]
    pub terms: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyReport {
    pub kind: PolySequenceKind,
    pub index: usize,
    pub degree: Option<usize>,
    /// Constant term first.
    #[serde(with = "serde_big::int_vec")]
    pub coefficients: Vec<BigInt>,
    pub display: String,
    #[serde(with = "serde_big::opt_int")]
    pub at: Option<BigInt>,
    #[serde(with = "serde_big::opt_int")]
    pub value: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyReport {
    pub hypersurface: Hypersurface,
    pub ambient_well_formed: bool,
    pub hypersurface_well_formed: bool,
    #[serde(with = "serde_big::int")]
    pub canonical_degree: BigInt,
    pub quasi_smooth: QuasiSmoothCertificate,
    /// `d / prod a_i`, reported when the canonical degree is +1 or -1.
    #[serde(with = "serde_big::opt_rational")]
    pub volume: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertReport {
    pub hypersurface: Hypersurface,
    /// `h^0(O_X(m))` for `m = 0..=max_m`.
    #[serde(with = "serde_big::int_vec")]
    pub counts: Vec<BigInt>,
    /// `h^0(m K_X) n! / m^n` at `m = max_m`, when `K_X = O_X(1)` and `max_m >= 1`.
    #[serde(with = "serde_big::opt_rational")]
    pub estimate: Option<BigRational>,
    pub estimate_decimal: Option<String>,
    /// Fractional digits in `estimate_decimal`.
    pub precision: u32,
    #[serde(with = "serde_big::opt_rational")]
    pub volume: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatioReport {
    pub r: usize,
    pub n: usize,
    pub ratio_decimal: String,
    /// Fractional digits in `ratio_decimal`.
    pub precision: u32,
    #[serde(with = "serde_big::rational")]
    pub volume: BigRational,
    #[serde(with = "serde_big::rational")]
    pub pair_volume: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentitiesReport {
    pub max_index: usize,
    pub all_hold: bool,
    pub records: Vec<IdentityRecord>,
}
