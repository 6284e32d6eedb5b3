use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::format_rational;
use crate::invariants::SurfaceInvariants;

/// Column order of the sweep CSV. Stable across releases.
pub const CSV_HEADER: [&str; 13] = [
    "d", "D", "ideal", "norm", "index", "theta", "neat", "c2", "tt", "c1sq", "chi_holo", "ratio",
    "verdict",
];

/// One serialized surface. Exact rationals and big integers are strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub d: u64,
    #[serde(rename = "D")]
    pub disc: i64,
    pub ideal: String,
    pub norm: u64,
    pub index: String,
    pub theta: u64,
    pub neat: String,
    pub c2: String,
    pub tt: String,
    pub c1sq: String,
    pub chi_holo: String,
    pub ratio: f64,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<BTreeMap<u32, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vanishing_assumed: Option<bool>,
}

impl OutputRecord {
    pub fn from_invariants(inv: &SurfaceInvariants) -> Self {
        OutputRecord {
            d: inv.field.d(),
            disc: inv.field.disc(),
            ideal: inv.ideal.to_string(),
            norm: inv.norm,
            index: inv.index.to_string(),
            theta: inv.theta,
            neat: inv.neat.to_string(),
            c2: format_rational(&inv.c2),
            tt: format_rational(&inv.tt),
            c1sq: format_rational(&inv.c1sq),
            chi_holo: format_rational(&inv.chi_holo),
            ratio: inv.ratio,
            verdict: inv.verdict.to_string(),
            dims: None,
            vanishing_assumed: None,
        }
    }

    pub fn with_dims(mut self, dims: BTreeMap<u32, BigUint>) -> Self {
        self.dims = Some(dims.into_iter().map(|(k, v)| (k, v.to_string())).collect());
        self.vanishing_assumed = Some(true);
        self
    }

    pub fn csv_row(&self) -> [String; 13] {
        [
            self.d.to_string(),
            self.disc.to_string(),
            self.ideal.clone(),
            self.norm.to_string(),
            self.index.clone(),
            self.theta.to_string(),
            self.neat.clone(),
            self.c2.clone(),
            self.tt.clone(),
            self.c1sq.clone(),
            self.chi_holo.clone(),
            self.ratio.to_string(),
            self.verdict.clone(),
        ]
    }
}
