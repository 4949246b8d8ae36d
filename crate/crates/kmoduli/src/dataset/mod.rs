//! The shipped regression dataset: destabilizing certificates, weight-zero
//! limits, discriminant and singularity inventories, S-invariant tables,
//! Zariski decomposition tables, wall problems, and toric checks.
//!
//! Every case carries a `source` label resolving in the bundled sources
//! registry (resources/sources.json), which maps labels to one-line
//! descriptions of where each encoded fact comes from.

pub mod gitcases;
pub mod quartics;
pub mod stables;
pub mod toricchecks;
pub mod ztables;

use std::collections::BTreeMap;

use once_cell::sync::Lazy;

use crate::kvol::WallProblem;
use crate::poly::parse_mpoly;
use crate::rat::{rat, ratq};
use crate::ratfn::RatFn;

/// The bundled registry of source labels.
pub static SOURCES: Lazy<BTreeMap<String, String>> = Lazy::new(|| {
    let raw = include_str!("../../resources/sources.json");
    serde_json::from_str(raw).expect("sources registry parses")
});

/// True when the label occurs verbatim in the bundled registry; per-region
/// table labels carry a trailing region suffix over their registered stem.
pub fn source_registered(label: &str) -> bool {
    if SOURCES.contains_key(label) {
        return true;
    }
    label
        .rsplit_once('-')
        .map(|(stem, _)| SOURCES.contains_key(stem))
        .unwrap_or(false)
}

/// The two wall problems: the main wall cubic from the blow-up over the
/// non-normal surface, and the local threshold cubic from the fibration flag.
pub struct WallCase {
    pub id: String,
    pub source: String,
    pub problem: WallProblem,
    /// Monic associate of the expected defining polynomial.
    pub defining: crate::poly::MPoly,
    /// Approximation the refined midpoint must hit.
    pub approx: f64,
    pub tolerance: f64,
}

pub fn wall_cases() -> Vec<WallCase> {
    let c = |src: &str| parse_mpoly(src, &["c"]).expect("c polynomial");
    vec![
        WallCase {
            id: "wall-main".into(),
            source: "wall-cubic-main".into(),
            problem: WallProblem {
                log_discrepancy: c("2 - 2*c"),
                s: RatFn::parse("-14*c^3 + 62*c^2 - 91*c + 44", "3*(3 - 2*c)^2", "c").unwrap(),
                window: (rat(0), ratq(1, 2)),
            },
            defining: c("10*c^3 - 34*c^2 + 35*c - 10"),
            approx: 0.47233,
            tolerance: 1e-5,
        },
        WallCase {
            id: "wall-main-other-side".into(),
            source: "wall-cubic-other-side".into(),
            problem: WallProblem {
                log_discrepancy: c("1"),
                s: RatFn::parse("-10*c^3 + 46*c^2 - 71*c + 37", "3*(3 - 2*c)^2", "c").unwrap(),
                window: (rat(0), ratq(1, 2)),
            },
            defining: c("10*c^3 - 34*c^2 + 35*c - 10"),
            approx: 0.47233,
            tolerance: 1e-5,
        },
        WallCase {
            id: "wall-local-threshold".into(),
            source: "wall-cubic-local".into(),
            problem: WallProblem {
                log_discrepancy: c("1"),
                s: RatFn::parse("-14*c^3 + 58*c^2 - 80*c + 37", "3*(3 - 2*c)^2", "c").unwrap(),
                window: (ratq(8, 25), ratq(17, 50)),
            },
            defining: c("7*c^3 - 23*c^2 + 22*c - 5"),
            approx: 0.3293,
            tolerance: 1e-4,
        },
        WallCase {
            id: "wall-local-threshold-node".into(),
            source: "wall-cubic-local-node".into(),
            problem: WallProblem {
                log_discrepancy: c("2"),
                s: RatFn::parse("-2*(14*c^3 - 58*c^2 + 80*c - 37)", "3*(3 - 2*c)^2", "c")
                    .unwrap(),
                window: (ratq(8, 25), ratq(17, 50)),
            },
            defining: c("7*c^3 - 23*c^2 + 22*c - 5"),
            approx: 0.3293,
            tolerance: 1e-4,
        },
    ]
}
