//! Machine-readable run reports emitted by the CLI.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Self-contained record of one CLI invocation: re-running the echoed
/// command on the digested input reproduces the `results` field byte for
/// byte. Timings are informational and excluded from that contract.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    pub results: serde_json::Value,
    pub timings_ms: BTreeMap<String, u128>,
    pub bound_ratios: BTreeMap<String, f64>,
    pub version: String,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            command,
            input_digest: None,
            results: serde_json::Value::Null,
            timings_ms: BTreeMap::new(),
            bound_ratios: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn digest_input(&mut self, bytes: &[u8]) {
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        self.input_digest = Some(format!("{:x}", hasher.finalize()));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        let mut r1 = RunReport::new(vec!["verify".into()]);
        let mut r2 = RunReport::new(vec!["verify".into()]);
        r1.digest_input(b"payload");
        r2.digest_input(b"payload");
        assert_eq!(r1.input_digest, r2.input_digest);
        r2.digest_input(b"other");
        assert_ne!(r1.input_digest, r2.input_digest);
    }
}
