//! Claim-check lines shared by transcripts and the artifact verifier.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One checked claim, rendered as `CHECK <claim> : OK` or `: FAIL`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub claim: String,
    pub ok: bool,
}

impl Check {
    pub fn new(claim: impl Into<String>, ok: bool) -> Self {
        Check {
            claim: claim.into(),
            ok,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CHECK {} : {}",
            self.claim,
            if self.ok { "OK" } else { "FAIL" }
        )
    }
}

/// First failing check, if any.
pub fn first_failure(checks: &[Check]) -> Option<&Check> {
    checks.iter().find(|c| !c.ok)
}

pub fn render(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        s.push_str(&c.to_string());
        s.push('\n');
    }
    s
}
