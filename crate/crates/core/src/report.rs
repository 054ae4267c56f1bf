//! Uniform JSON envelope for sampled verification checks.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::digits::Prime;
use crate::num::Nat;

/// One failed sample: which inputs, and the digit index where the check broke.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub inputs: String,
    pub index: usize,
}

/// Outcome of running a check over a sample set.
///
/// Serializes as
/// `{"check": <name>, "p": …, "samples": k, "violations": [{"inputs": …, "index": …}]}`.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub p: Value,
    pub samples: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn new<N: Nat>(
        check: &str,
        prime: &Prime<N>,
        samples: usize,
        violations: Vec<Violation>,
    ) -> Self {
        let p = prime
            .value()
            .to_u64()
            .map(Value::from)
            .unwrap_or_else(|| Value::String(prime.to_string()));
        CheckReport { check: check.to_string(), p, samples, violations }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serialization cannot fail")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} samples at p = {}, {} violation(s)",
            self.check,
            self.samples,
            self.p,
            self.violations.len()
        )?;
        if let Some(first) = self.violations.first() {
            write!(f, "; first at index {} for inputs {}", first.index, first.inputs)?;
        }
        Ok(())
    }
}
