use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use liesc::Error;

pub const TOOL_VERSION: &str = concat!("liesc ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Serialize)]
pub struct Envelope {
    pub tool_version: &'static str,
    pub input_digest: String,
    pub command: String,
    pub result: Value,
    pub timing: Timing,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

impl Envelope {
    pub fn new(input: &[u8], command: &str, result: Value, elapsed: Duration) -> Envelope {
        Envelope {
            tool_version: TOOL_VERSION,
            input_digest: digest(input),
            command: command.to_string(),
            result,
            timing: Timing {
                elapsed_ms: elapsed.as_secs_f64() * 1e3,
            },
        }
    }

    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn error_record(err: &Error) -> String {
    json!({ "error": err.kind(), "message": err.to_string() }).to_string()
}
