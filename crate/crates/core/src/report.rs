use serde::{Deserialize, Serialize};

/// Outcome of one verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub pass: bool,
    pub witness: String,
}

impl Report {
    pub fn pass(id: &str, witness: impl Into<String>) -> Self {
        Report {
            id: id.to_string(),
            pass: true,
            witness: witness.into(),
        }
    }

    pub fn fail(id: &str, witness: impl Into<String>) -> Self {
        Report {
            id: id.to_string(),
            pass: false,
            witness: witness.into(),
        }
    }

    /// Folds a list of named sub-checks into one report; the witness names the
    /// first failure, if any.
    pub fn from_parts(id: &str, parts: Vec<(String, Result<(), String>)>) -> Self {
        let total = parts.len();
        match parts
            .into_iter()
            .find_map(|(name, r)| r.err().map(|e| (name, e)))
        {
            Some((name, e)) => Report::fail(id, format!("{name}: {e}")),
            None => Report::pass(id, format!("{total} sub-checks hold")),
        }
    }
}
