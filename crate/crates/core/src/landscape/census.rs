use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_multistart, enumerate_p2, CensusResult, StationaryPoint};
use super::instance::sample_instance;
use crate::error::{Error, Result};
use crate::goe::McEstimate;
use crate::numerics::rng::RandomStream;
use crate::sphere::PSpinSpec;

/// Accepted-instance fraction below which the averages are flagged.
pub const MIN_ACCEPT_RATE: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnumerationOptions {
    /// Newton starts per instance (p ≥ 3).
    pub n_starts: usize,
    /// Points closer than this in |x − y|/√N are merged.
    pub dedup_tol: f64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self { n_starts: 1000, dedup_tol: 1e-6 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalCounts {
    /// Over accepted (saturated and Morse-certified) instances.
    pub mean_stationary: McEstimate,
    pub mean_minima: McEstimate,
    pub n_instances: usize,
    pub n_accepted: usize,
    pub n_unsaturated: usize,
    /// Saturated instances whose Morse sum is wrong.
    pub n_uncertified: usize,
    pub min_separation: f64,
    pub unreliable: bool,
    /// Census of every instance, accepted or not, in instance order.
    pub censuses: Vec<CensusResult>,
}

impl EmpiricalCounts {
    pub fn accept_rate(&self) -> f64 {
        self.n_accepted as f64 / self.n_instances as f64
    }
}

fn unsaturated_census(msg: String) -> CensusResult {
    CensusResult {
        n_stationary: 0,
        n_minima: 0,
        morse_sum: 0,
        saturated: false,
        min_separation: f64::INFINITY,
        warnings: vec![msg],
    }
}

/// Sample `n_instances` instances (instance i uses the substream
/// `stream.child(i)`) and average their stationary-point and minima counts.
/// p = 2 is enumerated exactly, larger p by multistart Newton.
pub fn empirical_counts(
    spec: &PSpinSpec,
    n_instances: usize,
    stream: &RandomStream,
    opts: &EnumerationOptions,
) -> Result<EmpiricalCounts> {
    if n_instances == 0 {
        return Err(Error::Domain("empirical_counts needs at least one instance".into()));
    }
    let censuses = (0..n_instances)
        .into_par_iter()
        .map(|i| {
            let s = stream.child(i as u64);
            let inst = sample_instance(spec, &s.child(0))?;
            let r = if spec.p == 2 {
                enumerate_p2(&inst)
            } else {
                enumerate_multistart(&inst, opts.n_starts, opts.dedup_tol, &s.child(1))
            };
            match r {
                Ok((c, _)) => Ok(c),
                Err(Error::Enumeration(m)) => Ok(unsaturated_census(m)),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let n = spec.n;
    let accepted: Vec<&CensusResult> = censuses.iter().filter(|c| c.saturated && c.certified(n)).collect();
    let stat: Vec<f64> = accepted.iter().map(|c| c.n_stationary as f64).collect();
    let mins: Vec<f64> = accepted.iter().map(|c| c.n_minima as f64).collect();
    let n_unsaturated = censuses.iter().filter(|c| !c.saturated).count();
    let n_uncertified = censuses.iter().filter(|c| c.saturated && !c.certified(n)).count();
    let min_separation = accepted.iter().map(|c| c.min_separation).fold(f64::INFINITY, f64::min);
    let n_accepted = accepted.len();
    Ok(EmpiricalCounts {
        mean_stationary: McEstimate::from_samples(&stat),
        mean_minima: McEstimate::from_samples(&mins),
        n_instances,
        n_accepted,
        n_unsaturated,
        n_uncertified,
        min_separation,
        unreliable: (n_accepted as f64) < MIN_ACCEPT_RATE * n_instances as f64,
        censuses,
    })
}

pub const CENSUS_CSV_HEADER: &str = "instance_id,n_stationary,n_minima,morse_sum,saturated";

pub fn write_census_csv<W: Write>(censuses: &[CensusResult], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{CENSUS_CSV_HEADER}")?;
    for (i, c) in censuses.iter().enumerate() {
        writeln!(w, "{i},{},{},{},{}", c.n_stationary, c.n_minima, c.morse_sum, c.saturated)?;
    }
    Ok(())
}

pub fn write_points_json<W: Write>(points: &[StationaryPoint], w: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(w, points).map_err(std::io::Error::other)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goe::DensitySource;
    use crate::sphere::count_stationary_exact;

    #[test]
    fn p2_zero_field_is_exactly_2n() {
        for n in [3, 6, 9] {
            let spec = PSpinSpec::new(2, 1.0, 0.0, n).unwrap();
            let e = empirical_counts(&spec, 30, &RandomStream::new(1, 0), &EnumerationOptions::default()).unwrap();
            assert_eq!(e.mean_stationary.mean, 2.0 * n as f64);
            assert_eq!(e.mean_stationary.stderr, 0.0);
            assert_eq!(e.mean_minima.mean, 2.0);
            assert_eq!(e.n_accepted, 30);
        }
    }

    #[test]
    fn p2_against_kac_rice() {
        let spec = PSpinSpec::with_b(2, 1.0, -0.2, 6).unwrap();
        let e = empirical_counts(&spec, 4000, &RandomStream::new(2, 0), &EnumerationOptions::default()).unwrap();
        let kr = count_stationary_exact(6, -0.2, &DensitySource::Exact).unwrap();
        let z = (e.mean_stationary.mean - kr.linear()).abs() / e.mean_stationary.stderr.hypot(kr.stderr());
        assert!(z < 3.0, "{:?} vs {}", e.mean_stationary, kr.linear());
    }

    #[test]
    fn census_csv_and_json() {
        let spec = PSpinSpec::new(2, 1.0, 0.5, 4).unwrap();
        let e = empirical_counts(&spec, 3, &RandomStream::new(3, 0), &EnumerationOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_census_csv(&e.censuses, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("instance_id,n_stationary,n_minima,morse_sum,saturated\n0,"));
        assert_eq!(s.lines().count(), 4);
        let inst = sample_instance(&spec, &RandomStream::new(3, 0)).unwrap();
        let (_, pts) = enumerate_p2(&inst).unwrap();
        let mut buf = Vec::new();
        write_points_json(&pts, &mut buf).unwrap();
        let back: Vec<StationaryPoint> = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back.len(), pts.len());
    }

    #[test]
    fn deterministic_across_runs() {
        let spec = PSpinSpec::new(3, 1.0, 0.0, 4).unwrap();
        let opts = EnumerationOptions { n_starts: 300, dedup_tol: 1e-6 };
        let a = empirical_counts(&spec, 8, &RandomStream::new(9, 0), &opts).unwrap();
        let b = empirical_counts(&spec, 8, &RandomStream::new(9, 0), &opts).unwrap();
        assert_eq!(a, b);
    }
}
