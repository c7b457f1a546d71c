use std::fmt;
use std::str::FromStr;

use landscape_core::goe::linspace;

/// A parameter sweep `start:stop:steps` (inclusive, evenly spaced) or a
/// single value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Sweep {
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            vec![self.start]
        } else {
            linspace(self.start, self.stop, self.steps)
        }
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| format!("not a number: {p:?}"));
        let sweep = match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                Sweep { start: v, stop: v, steps: 1 }
            }
            [a, b, n] => {
                let steps = n.trim().parse::<usize>().map_err(|_| format!("steps must be a positive integer, got {n:?}"))?;
                Sweep { start: num(a)?, stop: num(b)?, steps }
            }
            _ => return Err(format!("expected start:stop:steps or a single value, got {s:?}")),
        };
        if !sweep.start.is_finite() || !sweep.stop.is_finite() {
            return Err("sweep bounds must be finite".into());
        }
        if sweep.steps == 0 {
            return Err("a sweep needs at least one step".into());
        }
        if sweep.stop < sweep.start {
            return Err(format!("sweep bounds out of order: {} > {}", sweep.start, sweep.stop));
        }
        if sweep.steps == 1 && sweep.stop != sweep.start {
            return Err("a one-step sweep needs start = stop".into());
        }
        Ok(sweep)
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps == 1 {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}:{}:{}", self.start, self.stop, self.steps)
        }
    }
}
