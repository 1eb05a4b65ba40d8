//! Report structures emitted as JSON (schema version 1) and CSV. Every
//! numeric claim carries a provenance tag.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// Where a numeric value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the source material for the model geometry.
    Paper,
    /// Immediate from the definition.
    Trivial,
    /// Established by an independent oracle (quadrature, closed form, ...).
    Derived,
    /// Computed by this toolkit.
    Computed,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct TaggedValue {
    pub value: f64,
    pub provenance: Provenance,
}

impl TaggedValue {
    pub fn new(value: f64, provenance: Provenance) -> Self {
        TaggedValue { value, provenance }
    }
}

/// One verified claim: candidate value, reference, tolerance, verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub claim: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub provenance: Provenance,
}

impl Claim {
    pub fn check(
        claim: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        provenance: Provenance,
    ) -> Self {
        Claim {
            claim: claim.into(),
            lhs,
            rhs,
            tolerance,
            pass: (lhs - rhs).abs() <= tolerance,
            provenance,
        }
    }
}

/// Top-level JSON report wrapper.
#[derive(Clone, Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub schema: u32,
    pub kind: String,
    pub metric: Option<String>,
    pub seed: u64,
    pub body: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(kind: impl Into<String>, metric: Option<String>, seed: u64, body: T) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            kind: kind.into(),
            metric,
            seed,
            body,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Write rows as CSV with the given header.
pub fn csv_table(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.12e}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
