//! Sampled spherical p-spin Hamiltonians and direct enumeration of their
//! stationary points on |x|² = N.

mod census;
mod enumerate;
mod instance;

pub use census::{empirical_counts, write_census_csv, write_points_json, EmpiricalCounts, EnumerationOptions, CENSUS_CSV_HEADER};
pub use enumerate::{enumerate_multistart, enumerate_p2, tangential_index, CensusResult, StationaryPoint};
pub use instance::{sample_instance, Evaluation, PSpinInstance, MAX_N_P2, MAX_N_P3};

/// Euler characteristic of the (N−1)-sphere, 1 + (−1)^{N−1}.
pub fn euler_characteristic(n: usize) -> i64 {
    if n % 2 == 1 {
        2
    } else {
        0
    }
}
