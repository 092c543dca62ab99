use serde::{Deserialize, Serialize};

/// Behaviour of a refinement sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    FiniteTrend,
    Growth,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Relative change across the last doubling below which the sequence
    /// counts as stabilized.
    pub stabilize: f64,
    /// Relative increase per doubling above which it counts as growing.
    pub growth: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { stabilize: 0.01, growth: 0.25 }
    }
}

impl Thresholds {
    /// Classify values taken at successive doublings of a resolution
    /// parameter, judged on the last step.
    pub fn classify(&self, values: &[f64]) -> Trend {
        let n = values.len();
        if n < 2 {
            return Trend::Inconclusive;
        }
        let (prev, last) = (values[n - 2], values[n - 1]);
        if last.is_infinite() && last > 0.0 {
            return Trend::Growth;
        }
        if !(prev.is_finite() && last.is_finite()) {
            return Trend::Inconclusive;
        }
        if prev == 0.0 {
            return if last == 0.0 { Trend::FiniteTrend } else { Trend::Inconclusive };
        }
        let ratio = last / prev;
        if (ratio - 1.0).abs() < self.stabilize {
            Trend::FiniteTrend
        } else if ratio >= 1.0 + self.growth {
            Trend::Growth
        } else {
            Trend::Inconclusive
        }
    }

    /// Ratio of the last value to the one before.
    pub fn last_ratio(values: &[f64]) -> Option<f64> {
        let n = values.len();
        (n >= 2 && values[n - 2] != 0.0).then(|| values[n - 1] / values[n - 2])
    }
}
