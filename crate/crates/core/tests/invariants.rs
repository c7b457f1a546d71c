use std::sync::OnceLock;

use landscape_core::goe::density_exact;
use landscape_core::parabolic::{crossover_edge_parab, ln_crossover_minima_parab};
use landscape_core::sphere::{
    crossover_edge_stationary, gamma_of, kappa_of, ln_crossover_bulk_stationary, ln_crossover_edge_minima,
};
use landscape_core::{CountReport, LogValue, Method, Regime, Tw1Evaluator};
use proptest::prelude::*;

fn tw() -> &'static Tw1Evaluator {
    static TW: OnceLock<Tw1Evaluator> = OnceLock::new();
    TW.get_or_init(|| Tw1Evaluator::new().unwrap())
}

proptest! {
    #[test]
    fn exact_density_even_and_nonnegative(half in 1usize..=10, t in -6.0f64..6.0) {
        let n = 2 * half;
        let a = density_exact(n, t).unwrap();
        prop_assert!(a >= 0.0);
        prop_assert!((a - density_exact(n, -t).unwrap()).abs() <= 1e-12 * (1.0 + a));
    }

    #[test]
    fn tw_distribution_monotone(z in -7.5f64..7.5, dz in 0.0f64..2.0) {
        let t = tw();
        let (f, g) = (t.f1(z), t.f1(z + dz));
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!(g >= f - 1e-12);
        prop_assert!(t.f1_prime(z) >= -1e-12);
    }

    #[test]
    fn edge_minima_decreasing(k in -4.0f64..4.0, dk in 0.05f64..2.0) {
        let a = ln_crossover_edge_minima(tw(), k).unwrap();
        let b = ln_crossover_edge_minima(tw(), k + dk).unwrap();
        prop_assert!(b < a);
        prop_assert!(b > -1e-9);
    }

    #[test]
    fn parabolic_minima_is_sphere_at_twice_delta(d in -2.0f64..2.0) {
        let p = ln_crossover_minima_parab(tw(), d).unwrap();
        let s = ln_crossover_edge_minima(tw(), 2.0 * d).unwrap();
        prop_assert!((p - s).abs() < 1e-10);
    }

    #[test]
    fn bulk_stationary_decreasing(g in -5.0f64..5.0, dg in 0.1f64..2.0) {
        let a = ln_crossover_bulk_stationary(g).unwrap();
        let b = ln_crossover_bulk_stationary(g + dg).unwrap();
        prop_assert!(b < a);
    }

    #[test]
    fn scaled_variables(n in 1usize..100_000, b in -1.0f64..1.0) {
        let nf = n as f64;
        prop_assert!((kappa_of(n, b) + 2.0 * nf.cbrt() * b).abs() <= 1e-12 * (1.0 + nf));
        prop_assert!((gamma_of(n, b) + nf * b).abs() <= 1e-12 * (1.0 + nf));
    }

    #[test]
    fn report_linear_matches_log(ln in -50.0f64..800.0, err in 0.0f64..0.5) {
        let r = CountReport::from_log(LogValue::new(ln, err), Method::McOracle, Regime::Bulk);
        prop_assert_eq!(r.linear(), ln.exp());
        prop_assert_eq!(r.value.is_none(), r.log_scaled);
        if let Some(v) = r.value {
            prop_assert_eq!(v, ln.exp());
        }
        prop_assert_eq!(r.csv_row(0.0).split(',').count(), CountReport::CSV_HEADER.split(',').count());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn parabolic_edge_is_half_sphere_edge(k in 0.2f64..6.0) {
        let p = crossover_edge_parab(k).unwrap();
        let s = crossover_edge_stationary(k).unwrap();
        prop_assert!((p - 0.5 * s).abs() <= 1e-10 * s);
        prop_assert!(s > 2.0 - 1e-9);
    }
}
