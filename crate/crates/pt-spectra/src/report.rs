//! Output plumbing for the CLI: deterministic number formatting, the run
//! manifest attached to every output file, and file naming.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::parse::RunConfig;

/// 32-bit FNV-1a, used to tag output file names with the coefficient vector.
pub fn fnv1a32(s: &str) -> u32 {
    let mut h: u32 = 0x811c9dc5;
    for b in s.as_bytes() {
        h ^= *b as u32;
        h = h.wrapping_mul(0x0100_0193);
    }
    h
}

/// Canonical 17-significant-digit decimal form; `.` separator, `e` exponent.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Everything needed to reproduce an output file.
#[derive(Debug, Clone)]
pub struct Manifest {
    pub command: String,
    pub m: usize,
    pub a: Vec<String>,
    pub config: Vec<(String, String)>,
    pub version: String,
    pub timestamp: u64,
}

impl Manifest {
    pub fn new(command: &str, m: usize, a: &[Complex64], cfg: &RunConfig) -> Self {
        let timestamp = std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or_else(|| {
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0)
            });
        let config = vec![
            ("abs_tol".into(), fmt17(cfg.quad.abs_tol)),
            ("rel_tol".into(), fmt17(cfg.quad.rel_tol)),
            ("tail_cut".into(), fmt17(cfg.quad.tail_cut)),
            (
                "max_subdivisions".into(),
                cfg.quad.max_subdivisions.to_string(),
            ),
            ("start_radius".into(), fmt17(cfg.shoot.start_radius)),
            ("ode_rel_tol".into(), fmt17(cfg.shoot.ode_rel_tol)),
            ("ode_abs_tol".into(), fmt17(cfg.shoot.ode_abs_tol)),
            ("newton_tol".into(), fmt17(cfg.shoot.newton_tol)),
            (
                "newton_max_iter".into(),
                cfg.shoot.newton_max_iter.to_string(),
            ),
            ("deflation_radius".into(), fmt17(cfg.shoot.deflation_radius)),
            ("reality_tol".into(), fmt17(cfg.shoot.reality_tol)),
        ];
        Self {
            command: command.to_string(),
            m,
            a: a.iter()
                .map(|z| format!("{}{}i", fmt17(z.re), format!("{:+.16e}", z.im)))
                .collect(),
            config,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
        }
    }

    /// The `<command>_m<m>_<hash(a)>` file stem.
    pub fn file_stem(&self) -> String {
        let joined = self.a.join(",");
        format!("{}_m{}_{:08x}", self.command, self.m, fnv1a32(&joined))
    }

    /// CSV preamble: `#`-prefixed comment lines.
    pub fn csv_header(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# command: {}\n", self.command));
        out.push_str(&format!("# m: {}\n", self.m));
        out.push_str(&format!("# a: {}\n", self.a.join(",")));
        for (k, v) in &self.config {
            out.push_str(&format!("# config {k}={v}\n"));
        }
        out.push_str(&format!("# version: {}\n", self.version));
        out.push_str(&format!("# timestamp: {}\n", self.timestamp));
        out
    }

    pub fn json_value(&self) -> Value {
        json!({
            "command": self.command,
            "m": self.m,
            "a": self.a,
            "config": self.config.iter().cloned().collect::<std::collections::BTreeMap<_,_>>(),
            "version": self.version,
            "timestamp": self.timestamp,
        })
    }
}
