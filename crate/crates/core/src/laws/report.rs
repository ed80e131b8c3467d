use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Inputs a verdict depends on.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportInputs {
    /// Hex prefix of the SHA-256 of the canonical presentation.
    pub algebra: String,
    pub elements: Vec<String>,
    /// `[N, J]`.
    pub caps: [usize; 2],
    pub seed: Option<u64>,
}

/// Concrete evidence against a law: what was compared, where, and the two
/// values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub what: String,
    /// Homological/internal degrees or a coefficient position.
    pub position: Vec<usize>,
    pub expected: Value,
    pub found: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    VerifiedToCaps,
    Refuted { witness: Witness },
    Inapplicable { reason: String },
}

impl Outcome {
    pub fn is_verified(&self) -> bool {
        matches!(self, Outcome::VerifiedToCaps)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Outcome::Refuted { .. })
    }

    pub fn inapplicable(reason: impl Into<String>) -> Self {
        Outcome::Inapplicable { reason: reason.into() }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::VerifiedToCaps => "verified_to_caps",
            Outcome::Refuted { .. } => "refuted",
            Outcome::Inapplicable { .. } => "inapplicable",
        }
    }
}

/// One law checked on one input.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub law: String,
    pub inputs: ReportInputs,
    pub outcome: Outcome,
    /// Series, Betti slices and flags backing the verdict.
    pub payload: Map<String, Value>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(law: &str, inputs: ReportInputs) -> Self {
        VerificationReport {
            law: law.into(),
            inputs,
            outcome: Outcome::VerifiedToCaps,
            payload: Map::new(),
            notes: Vec::new(),
        }
    }

    pub fn put(&mut self, key: &str, v: impl Serialize) {
        self.payload
            .insert(key.into(), serde_json::to_value(v).expect("payload serializes"));
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Records the first refutation; later ones are dropped.
    pub fn refute(&mut self, w: Witness) {
        if !self.outcome.is_refuted() {
            self.outcome = Outcome::Refuted { witness: w };
        }
    }

    pub fn inapplicable(mut self, reason: impl Into<String>) -> Self {
        self.outcome = Outcome::inapplicable(reason);
        self
    }

    /// Replaces a pending "verified" with a withheld verdict. Refutations
    /// stand: they were observed within complete rows.
    pub fn withhold(&mut self, reason: impl Into<String>) {
        if self.outcome.is_verified() {
            self.outcome = Outcome::inapplicable(reason);
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

/// First 16 hex digits of the SHA-256 of `text`.
pub fn text_hash(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    hex::encode(&digest[..8])
}

pub(crate) fn witness(what: &str, position: Vec<usize>, expected: impl Serialize, found: impl Serialize) -> Witness {
    Witness {
        what: what.into(),
        position,
        expected: serde_json::to_value(expected).expect("serializes"),
        found: serde_json::to_value(found).expect("serializes"),
    }
}
