//! Machine-readable verdicts produced by the verification entry points.

use serde::Serialize;

/// Outcome of a single named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified claim: an identifier, pass/fail, a short human-readable
/// explanation, and the sampling parameters that were in effect.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub check_id: String,
    pub status: Status,
    pub detail: String,
    pub samples: u64,
    pub seed: u64,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// An ordered collection of verdicts. Order is meaningful: it is the order
/// checks were declared in, so serialized reports are stable byte-for-byte.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    /// Record one check outcome.
    pub fn push(
        &mut self,
        check_id: impl Into<String>,
        ok: bool,
        detail: impl Into<String>,
        samples: u64,
        seed: u64,
    ) {
        self.verdicts.push(Verdict {
            check_id: check_id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            samples,
            seed,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(Verdict::passed)
    }

    /// Append every verdict of `other`, preserving its internal order.
    pub fn merge(&mut self, other: Report) {
        self.verdicts.extend(other.verdicts);
    }

    /// Restore a canonical order after merging reports that were produced
    /// concurrently.
    pub fn sort_by_check_id(&mut self) {
        self.verdicts.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    }
}
