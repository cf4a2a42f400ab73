use std::time::Instant;

use num_rational::Ratio;
use serde::Serialize;
use serde_json::Value;

pub const REPORT_VERSION: u32 = 1;

/// Exact fraction with a 6-decimal rendering for reading.
#[derive(Debug, Clone, Serialize)]
pub struct Frac {
    pub exact: String,
    pub decimal: f64,
}

macro_rules! frac_from {
    ($($t:ty),*) => {$(
        impl From<Ratio<$t>> for Frac {
            fn from(r: Ratio<$t>) -> Self {
                Frac {
                    exact: format!("{}/{}", r.numer(), r.denom()),
                    decimal: round6(*r.numer() as f64 / *r.denom() as f64),
                }
            }
        }
    )*};
}

frac_from!(u64, i64);

pub fn round6(x: f64) -> f64 {
    format!("{x:.6}").parse().expect("formatted float")
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub report_v: u32,
    /// Arguments after the program name.
    pub command: Vec<String>,
    pub seed: Option<u64>,
    pub inputs: Value,
    pub outputs: Value,
    pub elapsed_ms: u128,
}

pub struct Recorder {
    started: Instant,
    command: Vec<String>,
}

impl Recorder {
    pub fn start(command: Vec<String>) -> Self {
        Recorder {
            started: Instant::now(),
            command,
        }
    }

    pub fn finish(self, seed: Option<u64>, inputs: Value, outputs: Value) -> RunReport {
        RunReport {
            report_v: REPORT_VERSION,
            command: self.command,
            seed,
            inputs,
            outputs,
            elapsed_ms: self.started.elapsed().as_millis(),
        }
    }

    pub fn command_line(&self) -> String {
        std::iter::once("rado-lab".to_string())
            .chain(self.command.iter().cloned())
            .collect::<Vec<_>>()
            .join(" ")
    }
}
