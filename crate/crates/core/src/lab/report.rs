use std::io::Write;

use serde::Serialize;

use super::setup::MeanSe;
use crate::error::Result;

/// One line of the tabular report. Aggregate lines leave `rep` and `seed`
/// empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub experiment: String,
    pub n: usize,
    pub rep: Option<usize>,
    pub seed: Option<u64>,
    pub gap: Option<f64>,
    pub arc: Option<f64>,
    pub bound_name: String,
    pub bound_value: f64,
    pub pass: Option<bool>,
}

/// A bound value together with the inequality it stands for.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedBound {
    pub name: String,
    pub value: f64,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Flags {
    /// Every Θ̂ⁿ was fully enumerated.
    pub exact_theta_hat: bool,
    /// Every covering number and 2-cover was solved exactly.
    pub exact_covers: bool,
    /// Some Θ̂ⁿ was focal, so only the trivial bound applied to it.
    pub focal_seen: bool,
}

/// Point of the ARC scaling series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioPoint {
    pub n: usize,
    pub arc: MeanSe,
    /// `arc / sqrt(ln n / n)`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub experiment: String,
    pub learner: String,
    pub n: usize,
    pub delta: f64,
    pub reps: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<MeanSe>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arc: Option<MeanSe>,
    pub bounds: Vec<NamedBound>,
    pub checks: Vec<Check>,
    pub flags: Flags,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<RatioPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope_estimate: Option<f64>,
    pub rows: Vec<ReportRow>,
}

impl BoundReport {
    pub(crate) fn new(experiment: &str, learner: String, n: usize, delta: f64, reps: usize, seed: u64) -> Self {
        Self {
            experiment: experiment.into(),
            learner,
            n,
            delta,
            reps,
            seed,
            gap: None,
            arc: None,
            bounds: Vec::new(),
            checks: Vec::new(),
            flags: Flags {
                exact_theta_hat: true,
                exact_covers: true,
                focal_seen: false,
            },
            series: Vec::new(),
            slope_estimate: None,
            rows: Vec::new(),
        }
    }

    /// True when every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn bound(&self, name: &str) -> Option<f64> {
        self.bounds.iter().find(|b| b.name == name).map(|b| b.value)
    }

    pub(crate) fn add_check(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail,
        });
    }

    pub(crate) fn add_bound(&mut self, name: &str, value: f64, statement: &str) {
        self.bounds.push(NamedBound {
            name: name.into(),
            value,
            statement: statement.into(),
        });
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for r in &self.rows {
            out.serialize(r)?;
        }
        if self.rows.is_empty() {
            out.write_record(["experiment", "n", "rep", "seed", "gap", "arc", "bound_name", "bound_value", "pass"])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut w, self)?;
        writeln!(w)?;
        Ok(())
    }
}
