use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;

use wpslab_core::search::ObjectiveValue;
use wpslab_core::wps::{QuasiSmoothCertificate, Verdict};

use crate::document::{CertificateDocument, Results};

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::QuasiSmooth => "quasi-smooth",
        Verdict::NotQuasiSmooth => "not quasi-smooth",
        Verdict::Undecided => "undecided",
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn rational(v: &Option<BigRational>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn quasi_smooth_line(out: &mut String, label: &str, c: &QuasiSmoothCertificate) {
    let _ = write!(out, "{label}: {}", verdict(c.verdict));
    if let Some(s) = c.failing_subset() {
        let _ = write!(out, " (subset {:?}: {:?})", s.subset, s.branch);
    }
    out.push('\n');
}

fn degree_line(out: &mut String, k: &BigInt) {
    let _ = writeln!(out, "K_X = O_X({k})");
}

/// Plain-text rendering of a document.
pub fn text(doc: &CertificateDocument, verbose: bool) -> String {
    let mut out = String::new();
    match &doc.results {
        Results::Sylvester(s) => {
            for (i, c) in s.terms.iter().enumerate() {
                let _ = writeln!(out, "c_{i} = {c}");
            }
        }
        Results::Poly(p) => {
            let _ = writeln!(out, "{}_{}(y) = {}", p.kind, p.index, p.display);
            if let (Some(at), Some(v)) = (&p.at, &p.value) {
                let _ = writeln!(out, "{}_{}({at}) = {v}", p.kind, p.index);
            }
        }
        Results::Family(c) => {
            let m = &c.member;
            let _ = writeln!(out, "{} family, r = {}, n = {}", m.kind, m.r, m.n);
            let _ = writeln!(out, "{m}");
            let _ = writeln!(out, "y = {}, x = {}", m.y, m.x);
            degree_line(&mut out, &c.canonical_degree);
            let _ = writeln!(out, "well-formed: {}", yes_no(c.well_formedness));
            quasi_smooth_line(&mut out, "quasi-smooth (cycle)", &c.quasi_smooth);
            if let Some(g) = &c.general_cross_check {
                quasi_smooth_line(&mut out, "quasi-smooth (subsets)", g);
            }
            let _ = writeln!(out, "volume: {}", rational(&c.volume));
            let _ = writeln!(out, "bottom weight: {}", c.bottom_weight);
            for check in c.identity_checks.iter().chain(&c.bound_checks) {
                let _ = writeln!(out, "  [{}] {}", if check.holds { "ok" } else { "FAIL" }, check.name);
            }
            let _ = writeln!(out, "valid: {}", yes_no(c.valid));
        }
        Results::Verify(v) => {
            let _ = writeln!(out, "{}", v.hypersurface);
            let _ = writeln!(out, "ambient well-formed: {}", yes_no(v.ambient_well_formed));
            let _ = writeln!(out, "hypersurface well-formed: {}", yes_no(v.hypersurface_well_formed));
            degree_line(&mut out, &v.canonical_degree);
            quasi_smooth_line(&mut out, "verdict", &v.quasi_smooth);
            if v.volume.is_some() {
                let _ = writeln!(out, "volume: {}", rational(&v.volume));
            }
        }
        Results::Hilbert(h) => {
            let _ = writeln!(out, "{}", h.hypersurface);
            for (m, c) in h.counts.iter().enumerate() {
                let _ = writeln!(out, "h0(O_X({m})) = {c}");
            }
            if let Some(e) = &h.estimate_decimal {
                let _ = writeln!(out, "estimate: {e}");
            }
            if h.volume.is_some() {
                let _ = writeln!(out, "volume: {}", rational(&h.volume));
            }
        }
        Results::Search(r) => {
            for hit in &r.hits {
                let value = match &hit.objective {
                    ObjectiveValue::Volume(v) => format!("volume {v}"),
                    ObjectiveValue::BottomWeight(b) => format!("bottom weight {b}"),
                };
                let _ = writeln!(out, "#{} {}  {value}", hit.rank, hit.hypersurface);
            }
            if r.hits.is_empty() {
                out.push_str("no hypersurfaces found\n");
            }
            if verbose {
                let s = &r.stats;
                let _ = writeln!(out, "enumerated: {}", s.enumerated);
                let _ = writeln!(out, "in shard: {}", s.in_shard);
                let _ = writeln!(out, "pruned by objective: {}", s.pruned_by_objective);
                let _ = writeln!(out, "ambient not well-formed: {}", s.ambient_not_well_formed);
                let _ = writeln!(out, "hypersurface not well-formed: {}", s.hypersurface_not_well_formed);
                let _ = writeln!(out, "not quasi-smooth: {}", s.not_quasi_smooth);
                let _ = writeln!(out, "undecided: {}", s.undecided);
                let _ = writeln!(out, "accepted: {}", s.accepted);
            }
        }
        Results::Ratio(r) => {
            let _ = writeln!(out, "r = {}, n = {}", r.r, r.n);
            let _ = writeln!(out, "volume: {}", r.volume);
            let _ = writeln!(out, "pair volume: {}", r.pair_volume);
            let _ = writeln!(out, "ratio: {}", r.ratio_decimal);
        }
        Results::Identities(r) => {
            for rec in &r.records {
                let _ = writeln!(
                    out,
                    "{} at {}: {}",
                    rec.identity,
                    rec.index,
                    if rec.holds { "ok" } else { "FAIL" }
                );
            }
            let _ = writeln!(out, "all hold: {}", yes_no(r.all_hold));
        }
    }
    out
}
