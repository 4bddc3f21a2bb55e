//! Exact arithmetic toolkit for hypersurfaces in weighted projective space:
//! the polynomial sequences behind the extremal families, quasi-smoothness
//! and well-formedness certificates, Hilbert-series section counts, family
//! constructors and a small exhaustive search.

pub mod exec;
pub mod families;
pub mod poly;
pub mod polyseq;
pub mod precision;
pub mod search;
pub mod serde_big;
pub mod wps;

pub use exec::Execution;
pub use poly::{Degree, IntPoly};
pub use polyseq::{
    eval_sequence, poly_sequence, sylvester, sylvester_product, verify_identities,
    verify_identities_with, Identity, IdentityRecord, PolySequenceKind,
};
pub use wps::{Hypersurface, MembershipGuard, WeightSystem, WpsError};
pub use families::{
    construct, kollar_pair_volume, log_volume_ratio, verify_member, FamilyCertificate,
    FamilyError, FamilyKind, FamilyMember,
};
pub use search::{run_search, run_search_with, Objective, SearchConfig, SearchHit, SearchResult};
