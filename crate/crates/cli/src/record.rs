//! The JSON record printed by `compute`.

use serde::{Deserialize, Serialize};

use normone::resolutions::NormOneReport;
use normone::Verdict;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Field order is the output order; every key is always present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub group: String,
    /// Generators in cycle notation, comma separated.
    pub subgroup: String,
    pub j_rank: usize,
    pub flasque_rank: usize,
    /// Invariant factors of `H^1(G, M)` in divisibility order.
    pub h1: Vec<String>,
    pub verdict: String,
    pub ms: u64,
    pub version: String,
}

pub const KEYS: [&str; 8] = ["group", "subgroup", "j_rank", "flasque_rank", "h1", "verdict", "ms", "version"];

impl ResultRecord {
    pub fn new(group: &str, subgroup: &str, report: &NormOneReport, ms: u64) -> ResultRecord {
        ResultRecord {
            group: group.to_string(),
            subgroup: subgroup.to_string(),
            j_rank: report.j_rank,
            flasque_rank: report.flasque_rank,
            h1: report.invariant.torsion_strings(),
            verdict: Verdict::from_invariant(report.invariant.clone()).to_string(),
            ms,
            version: VERSION.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}
