//! Outcome of a verification.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::kernel::Expr;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Verified,
    VerifiedWithAssumptions,
    Failed,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::VerifiedWithAssumptions => "verified-with-assumptions",
            Status::Failed => "failed",
        }
    }

    pub fn is_ok(self) -> bool {
        self != Status::Failed
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub claim_id: String,
    pub status: Status,
    /// Canonical residual; zero unless the check failed.
    pub residual: Expr,
    /// Named residual parts, e.g. one Euler-operator residual per variable.
    pub components: Vec<(String, Expr)>,
    /// Expressions assumed nonvanishing.
    pub assumptions: Vec<Expr>,
    /// Filled in by callers that have a clock.
    pub elapsed_ms: Option<u64>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Status follows from the residual and the assumptions.
    pub fn from_residual(claim_id: impl Into<String>, residual: Expr, assumptions: &[Expr]) -> Self {
        let status = if !residual.is_zero() {
            Status::Failed
        } else if assumptions.is_empty() {
            Status::Verified
        } else {
            Status::VerifiedWithAssumptions
        };
        VerificationReport {
            claim_id: claim_id.into(),
            status,
            residual: residual.normalize(),
            components: Vec::new(),
            assumptions: assumptions.to_vec(),
            elapsed_ms: None,
            notes: Vec::new(),
        }
    }

    /// Verified iff every component vanishes; the first nonzero component
    /// becomes the residual.
    pub fn from_components(
        claim_id: impl Into<String>,
        components: Vec<(String, Expr)>,
        assumptions: &[Expr],
    ) -> Self {
        let residual = components
            .iter()
            .map(|(_, e)| e)
            .find(|e| !e.is_zero())
            .cloned()
            .unwrap_or_else(Expr::zero);
        let mut r = Self::from_residual(claim_id, residual, assumptions);
        r.components = components.into_iter().map(|(n, e)| (n, e.normalize())).collect();
        r
    }

    /// A failed report that carries no residual, e.g. for an error.
    pub fn failure(claim_id: impl Into<String>, note: impl Into<String>) -> Self {
        VerificationReport {
            claim_id: claim_id.into(),
            status: Status::Failed,
            residual: Expr::zero(),
            components: Vec::new(),
            assumptions: Vec::new(),
            elapsed_ms: None,
            notes: alloc::vec![note.into()],
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Inverts the outcome for negative controls: a control passes when the
    /// underlying check fails.
    pub fn expect_failure(self, claim_id: impl Into<String>) -> Self {
        let failed = self.status == Status::Failed;
        let mut r = VerificationReport {
            claim_id: claim_id.into(),
            status: if failed { Status::Verified } else { Status::Failed },
            residual: Expr::zero(),
            components: Vec::new(),
            assumptions: Vec::new(),
            elapsed_ms: self.elapsed_ms,
            notes: self.notes,
        };
        let terms = self.residual.numer().len();
        r.notes.push(if failed {
            alloc::format!("control check failed as expected ({terms} residual terms)")
        } else {
            String::from("control check unexpectedly passed")
        });
        r
    }

    pub fn is_ok(&self) -> bool {
        self.status.is_ok()
    }
}
