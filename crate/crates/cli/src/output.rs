//! Command output: `key = value` lines on stdout, optional key/value CSV.

use std::fmt::Display;
use std::io::Write;
use std::path::Path;

/// Formats `x` with 10 significant digits, switching to exponent form outside
/// `[1e-5, 1e10)`.
pub fn sig10(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..10).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

/// Shortest representation that parses back to the same `f64`.
pub fn exact(x: f64) -> String {
    if x != 0.0 && x.is_finite() && !(1e-5..1e16).contains(&x.abs()) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[derive(Debug, Clone)]
pub enum Value {
    Real(f64),
    Int(i64),
    Text(String),
}

impl Value {
    fn display(&self) -> String {
        match self {
            Value::Real(x) => sig10(*x),
            Value::Int(n) => n.to_string(),
            Value::Text(s) => s.clone(),
        }
    }

    /// Full round-trip precision for CSV.
    fn exact(&self) -> String {
        match self {
            Value::Real(x) => exact(*x),
            Value::Int(n) => n.to_string(),
            Value::Text(s) => s.clone(),
        }
    }
}

/// Everything a command reports.
#[derive(Debug, Clone)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub results: Vec<(String, Value)>,
    pub timing_ms: f64,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord { command: command.into(), inputs: Vec::new(), results: Vec::new(), timing_ms: 0.0 }
    }

    pub fn input(&mut self, key: &str, value: impl Display) {
        self.inputs.push((key.into(), value.to_string()));
    }

    pub fn real(&mut self, key: &str, value: f64) {
        self.results.push((key.into(), Value::Real(value)));
    }

    /// A value and its error estimate, as `key` and `key_error`.
    pub fn estimate(&mut self, key: &str, value: f64, error: f64) {
        self.real(key, value);
        self.real(&format!("{key}_error"), error);
    }

    pub fn int(&mut self, key: &str, value: i64) {
        self.results.push((key.into(), Value::Int(value)));
    }

    pub fn text(&mut self, key: &str, value: impl Into<String>) {
        self.results.push((key.into(), Value::Text(value.into())));
    }

    pub fn write_human<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "command = {}", self.command)?;
        for (k, v) in &self.inputs {
            writeln!(out, "{k} = {v}")?;
        }
        for (k, v) in &self.results {
            writeln!(out, "{k} = {}", v.display())?;
        }
        Ok(())
    }

    pub fn write_csv(&self, path: &Path) -> csv::Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["key", "value"])?;
        w.write_record(["command", self.command.as_str()])?;
        for (k, v) in &self.inputs {
            w.write_record([k, v])?;
        }
        for (k, v) in &self.results {
            w.write_record([k.clone(), v.exact()])?;
        }
        w.flush()?;
        Ok(())
    }
}
