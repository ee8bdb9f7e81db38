use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const REPORT_FORMAT: &str = "kbhom-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub role: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(role: &str, bytes: &[u8]) -> Self {
        Self {
            role: role.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// A command's result with enough context to reproduce it. File paths are
/// deliberately absent: inputs are identified by content digest so that
/// equal inputs give byte-identical reports.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format: &'static str,
    pub engine_version: &'static str,
    pub command: String,
    pub options: BTreeMap<String, Value>,
    pub inputs: Vec<InputDigest>,
    pub metadata: BTreeMap<String, Value>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            format: REPORT_FORMAT,
            engine_version: kbhom_core::ENGINE_VERSION,
            command: command.to_string(),
            options: BTreeMap::new(),
            inputs: Vec::new(),
            metadata: BTreeMap::new(),
            result: Value::Null,
            timestamp: None,
        }
    }

    pub fn option(&mut self, key: &str, v: impl Into<Value>) {
        self.options.insert(key.to_string(), v.into());
    }

    pub fn meta(&mut self, key: &str, v: impl Into<Value>) {
        self.metadata.insert(key.to_string(), v.into());
    }

    pub fn stamp(&mut self) {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        self.timestamp = Some(now);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_sha256_hex() {
        let d = InputDigest::of("x", b"abc");
        assert_eq!(d.sha256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn timestamp_only_when_stamped() {
        let mut r = Report::new("zoo");
        r.option("list", true);
        assert!(!r.to_json().contains("timestamp"));
        r.stamp();
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(v["timestamp"].as_u64().unwrap() > 0);
        assert_eq!(v["options"]["list"], true);
        assert!(r.to_json().ends_with("}\n"));
    }
}
