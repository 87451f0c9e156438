use std::io::Write;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "bound", content = "limit", rename_all = "snake_case")]
pub enum Bound {
    Below(f64),
    Above(f64),
    /// Recorded, not asserted.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    #[serde(flatten)]
    pub bound: Bound,
    pub passed: bool,
}

impl Check {
    pub fn below(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound: Bound::Below(limit),
            passed: value < limit,
        }
    }

    pub fn above(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound: Bound::Above(limit),
            passed: value > limit,
        }
    }

    pub fn info(name: impl Into<String>, value: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound: Bound::Info,
            passed: true,
        }
    }

    pub fn summary(&self) -> String {
        match self.bound {
            Bound::Below(l) => format!("{} {}: {:e} < {:e}", status(self.passed), self.name, self.value, l),
            Bound::Above(l) => format!("{} {}: {:e} > {:e}", status(self.passed), self.name, self.value, l),
            Bound::Info => format!("INFO {}: {:e}", self.name, self.value),
        }
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

/// A CSV table; cells are preformatted.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// Seventeen significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    /// Command-specific JSON fields, merged into the top-level document.
    pub data: Map<String, Value>,
    /// CSV rows; falls back to the check table when absent.
    pub table: Option<Table>,
}

impl Outcome {
    pub fn new(checks: Vec<Check>) -> Self {
        Self {
            checks,
            ..Self::default()
        }
    }

    pub fn insert(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable report"),
        );
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn check_table(&self) -> Table {
        Table {
            header: vec!["name", "value", "bound", "limit", "passed"],
            rows: self
                .checks
                .iter()
                .map(|c| {
                    let (bound, limit) = match c.bound {
                        Bound::Below(l) => ("below", fmt_f64(l)),
                        Bound::Above(l) => ("above", fmt_f64(l)),
                        Bound::Info => ("info", String::new()),
                    };
                    vec![
                        c.name.clone(),
                        fmt_f64(c.value),
                        bound.into(),
                        limit,
                        c.passed.to_string(),
                    ]
                })
                .collect(),
        }
    }

    pub fn to_json(&self, cfg: &RunConfig) -> Value {
        let mut doc = json!({
            "schema_version": SCHEMA_VERSION,
            "command": cfg.command.name(),
            "rng_algorithm": pwave_core::sampling::RNG_ALGORITHM,
            "seed": cfg.seed,
            "config": cfg,
            "passed": self.failed() == 0,
            "checks": self.checks,
        });
        let obj = doc.as_object_mut().expect("object literal");
        for (k, v) in &self.data {
            obj.insert(k.clone(), v.clone());
        }
        doc
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let table = self.table.clone().unwrap_or_else(|| self.check_table());
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let wrap = |e: csv::Error| CliError::Config(format!("csv: {e}"));
        w.write_record(&table.header).map_err(wrap)?;
        for row in &table.rows {
            w.write_record(row).map_err(wrap)?;
        }
        w.into_inner().map_err(|e| CliError::Config(format!("csv: {e}")))
    }

    pub fn render(&self, cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
        match cfg.format {
            Format::Json => {
                let mut bytes = serde_json::to_vec_pretty(&self.to_json(cfg)).expect("json value");
                bytes.push(b'\n');
                Ok(bytes)
            }
            Format::Csv => self.to_csv(),
        }
    }

    /// Writes the document to the output path, or to standard output when
    /// none is set, and prints one summary line per check (to standard
    /// error in the latter case).
    pub fn emit(&self, cfg: &RunConfig) -> Result<(), CliError> {
        let bytes = self.render(cfg)?;
        let lines: Vec<String> = self.checks.iter().map(Check::summary).collect();
        match &cfg.output {
            Some(path) => {
                std::fs::write(path, &bytes).map_err(|e| CliError::io(path, e))?;
                for l in &lines {
                    println!("{l}");
                }
            }
            None => {
                for l in &lines {
                    eprintln!("{l}");
                }
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(&bytes)
                    .and_then(|_| lock.flush())
                    .map_err(|e| CliError::io(std::path::Path::new("<stdout>"), e))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(0.0), "0.0000000000000000e0");
        assert_eq!(fmt_f64(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn check_bounds() {
        assert!(Check::below("a", 1e-13, 1e-12).passed);
        assert!(!Check::below("a", f64::NAN, 1e-12).passed);
        assert!(Check::above("b", 0.5, 0.1).passed);
        assert!(Check::info("c", 2.0).passed);
    }

    #[test]
    fn csv_uses_lf() {
        let mut o = Outcome::default();
        o.checks.push(Check::below("x", 0.5, 1.0));
        let text = String::from_utf8(o.to_csv().unwrap()).unwrap();
        assert!(!text.contains('\r'));
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("name,value,bound,limit,passed\n"));
    }
}
