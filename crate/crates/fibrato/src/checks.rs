use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Verified,
    Violated,
    OutOfScope,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Verified => "verified",
            CheckStatus::Violated => "violated",
            CheckStatus::OutOfScope => "out-of-scope",
        })
    }
}

/// One condition of an admissibility checklist.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub condition: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    pub fn new(condition: &str, status: CheckStatus, detail: impl Into<String>) -> Self {
        Check { condition: condition.to_string(), status, detail: detail.into() }
    }
}

/// Overall verdict: violated if anything is, verified only if everything is.
pub fn conjunction(checks: &[Check]) -> CheckStatus {
    if checks.iter().any(|c| c.status == CheckStatus::Violated) {
        CheckStatus::Violated
    } else if checks.iter().all(|c| c.status == CheckStatus::Verified) {
        CheckStatus::Verified
    } else {
        CheckStatus::OutOfScope
    }
}
