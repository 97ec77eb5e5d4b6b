use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

/// One checked coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub sigma: String,
    pub beta: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Cell {
    pub fn new(sigma: impl Into<String>, beta: impl Into<String>, status: Status, witness: Option<String>) -> Self {
        Cell { sigma: sigma.into(), beta: beta.into(), status, witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub preset: String,
    pub degree_bound: i64,
    pub cells: Vec<Cell>,
    pub runtime_ms: u128,
}

impl VerificationReport {
    pub(crate) fn new(identity: &str, preset: &str, degree_bound: i64, cells: Vec<Cell>, start: Instant) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            preset: preset.to_string(),
            degree_bound,
            cells,
            runtime_ms: start.elapsed().as_millis(),
        }
    }

    /// A report whose only cell records why the identity could not be checked.
    pub(crate) fn unsupported(identity: &str, preset: &str, degree_bound: i64, reason: String, start: Instant) -> Self {
        let cell = Cell::new("*", "*", Status::Unsupported, Some(reason));
        Self::new(identity, preset, degree_bound, vec![cell], start)
    }

    /// `Fail` if any cell failed, else `Unsupported` if any cell was
    /// unsupported, else `Pass`.
    pub fn status(&self) -> Status {
        if self.cells.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.cells.iter().any(|c| c.status == Status::Unsupported) {
            Status::Unsupported
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn count(&self, s: Status) -> usize {
        self.cells.iter().filter(|c| c.status == s).count()
    }

    /// The per-cell statuses, for comparing runs.
    pub fn statuses(&self) -> Vec<Status> {
        self.cells.iter().map(|c| c.status).collect()
    }

    /// The report with the timing zeroed, so that runs can be compared byte for byte.
    pub fn without_timing(&self) -> Self {
        VerificationReport { runtime_ms: 0, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
