//! Adaptive Gauss-Kronrod quadrature and Gauss-Legendre rules.
//!
//! Infinite ranges are mapped to (0, 1]: [a, ∞) uses x = a + s(1 - t)/t and
//! (-∞, b] uses x = b - s(1 - t)/t, where s is [`QuadratureSpec::map_scale`].
//! The full line is split at zero into two half-lines.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_208_931_723,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// Tolerances and limits for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Length scale s of the rational map used for infinite ranges.
    pub map_scale: f64,
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self { abs_tol, rel_tol, max_subdivisions: 2000, map_scale: 1.0 }
    }

    pub fn with_map_scale(mut self, s: f64) -> Self {
        self.map_scale = s;
        self
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return domain("quadrature tolerances must be positive");
        }
        if !(self.map_scale > 0.0) {
            return domain("map_scale must be positive");
        }
        Ok(())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::new(1e-12, 1e-10)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Finite(f64, f64),
    /// [a, ∞)
    UpperHalf(f64),
    /// (-∞, b]
    LowerHalf(f64),
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err_est: f64,
    pub subdivisions: usize,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then(other.a.total_cmp(&self.a))
    }
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[10] * fc;
    let mut g = 0.0;
    for i in 0..10 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive G10/K21 over [a, b] with initial breakpoints.
fn adaptive<F: Fn(f64) -> f64>(f: &F, points: &[f64], spec: &QuadratureSpec) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        let (v, e) = gk21(f, w[0], w[1]);
        heap.push(Segment { a: w[0], b: w[1], value: v, err: e });
    }
    let mut n = heap.len();
    loop {
        let (total, err) = heap.iter().fold((0.0, 0.0), |(s, e), seg| (s + seg.value, e + seg.err));
        if !total.is_finite() {
            return domain("integrand produced a non-finite value");
        }
        let tol = spec.abs_tol.max(spec.rel_tol * total.abs());
        if err <= tol {
            return Ok(QuadResult { value: total, err_est: err, subdivisions: n });
        }
        if n >= spec.max_subdivisions {
            return Err(Error::QuadratureNoConvergence { partial: total, err_est: err, subdivisions: n });
        }
        let worst = heap.pop().expect("nonempty");
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            // interval can no longer be split in floating point
            return Err(Error::QuadratureNoConvergence { partial: total, err_est: err, subdivisions: n });
        }
        let (v1, e1) = gk21(f, worst.a, m);
        let (v2, e2) = gk21(f, m, worst.b);
        heap.push(Segment { a: worst.a, b: m, value: v1, err: e1 });
        heap.push(Segment { a: m, b: worst.b, value: v2, err: e2 });
        n += 1;
    }
}

/// Adaptive quadrature of `f` over `domain`.
///
/// On non-convergence the error carries the partial value and its error
/// estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: F, domain: Domain, spec: &QuadratureSpec) -> Result<QuadResult> {
    integrate_dyn(&f, domain, spec)
}

fn integrate_dyn(f: &dyn Fn(f64) -> f64, domain: Domain, spec: &QuadratureSpec) -> Result<QuadResult> {
    spec.validate()?;
    let s = spec.map_scale;
    match domain {
        Domain::Finite(a, b) => {
            if a == b {
                return Ok(QuadResult { value: 0.0, err_est: 0.0, subdivisions: 0 });
            }
            if b < a {
                let r = adaptive(&f, &[b, a], spec)?;
                return Ok(QuadResult { value: -r.value, ..r });
            }
            adaptive(&f, &[a, b], spec)
        }
        Domain::UpperHalf(a) => {
            let g = |t: f64| {
                let x = a + s * (1.0 - t) / t;
                let v = f(x);
                if v == 0.0 { 0.0 } else { v * s / (t * t) }
            };
            adaptive(&g, &[0.0, 0.5, 1.0], spec)
        }
        Domain::LowerHalf(b) => {
            let g = |t: f64| {
                let x = b - s * (1.0 - t) / t;
                let v = f(x);
                if v == 0.0 { 0.0 } else { v * s / (t * t) }
            };
            adaptive(&g, &[0.0, 0.5, 1.0], spec)
        }
        Domain::Full => {
            let half = QuadratureSpec { abs_tol: 0.5 * spec.abs_tol, ..*spec };
            let up = integrate_dyn(f, Domain::UpperHalf(0.0), &half);
            let lo = integrate_dyn(f, Domain::LowerHalf(0.0), &half);
            match (up, lo) {
                (Ok(u), Ok(l)) => Ok(QuadResult {
                    value: u.value + l.value,
                    err_est: u.err_est + l.err_est,
                    subdivisions: u.subdivisions + l.subdivisions,
                }),
                (Err(e), _) | (_, Err(e)) => Err(e),
            }
        }
    }
}

/// Adaptive quadrature over [a, b] split at the given interior breakpoints.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    spec.validate()?;
    let mut pts = vec![a];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    pts.extend(inner);
    pts.push(b);
    adaptive(&f, &pts, spec)
}

/// Value of a finite-range integral, accepting the partial value on
/// non-convergence. For internal use on smooth integrands where the partial
/// value is known to be adequate.
pub(crate) fn integrate_finite_partial<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> f64 {
    match integrate(f, Domain::Finite(a, b), spec) {
        Ok(r) => r.value,
        Err(Error::QuadratureNoConvergence { partial, .. }) => partial,
        Err(_) => f64::NAN,
    }
}

/// Result of [`ln_integrate`]: ln ∫ e^{g} and a relative error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LnQuadResult {
    pub ln_value: f64,
    pub rel_err: f64,
    /// The integration range actually used.
    pub range: (f64, f64),
}

/// ln ∫ e^{g(x)} dx over the real line for a log-integrand `g` that is
/// negligible outside a bounded region.
///
/// `g` is scanned on a grid of spacing `step` over [lo, hi] to locate its
/// maximum M; the range is then widened in both directions until g has
/// fallen `drop` nats below M (a relative truncation of about e^{-drop}; M
/// is updated if the widening finds larger values),
/// and e^{g − M} is integrated adaptively with breakpoints at `breaks`.
pub fn ln_integrate<G: Fn(f64) -> f64>(
    g: G,
    lo: f64,
    hi: f64,
    step: f64,
    drop: f64,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<LnQuadResult> {
    if !(hi > lo) || !(step > 0.0) || !(drop > 0.0) {
        return domain("ln_integrate needs lo < hi, step > 0, drop > 0");
    }
    let n = ((hi - lo) / step).ceil() as usize;
    let mut m = f64::NEG_INFINITY;
    for i in 0..=n {
        let v = g(lo + i as f64 * step);
        if v.is_nan() {
            return domain(format!("ln_integrate: log-integrand is NaN at {}", lo + i as f64 * step));
        }
        m = m.max(v);
    }
    if m == f64::NEG_INFINITY || m == f64::INFINITY {
        return domain("ln_integrate: log-integrand has no finite maximum on the scan grid");
    }
    const MAX_EXTEND: usize = 100_000;
    let mut a = lo;
    let mut k = 0;
    loop {
        let v = g(a);
        m = m.max(v);
        if !(v > m - drop) {
            break;
        }
        a -= step;
        k += 1;
        if k > MAX_EXTEND {
            return domain("ln_integrate: left tail does not decay");
        }
    }
    let mut b = hi;
    k = 0;
    loop {
        let v = g(b);
        m = m.max(v);
        if !(v > m - drop) {
            break;
        }
        b += step;
        k += 1;
        if k > MAX_EXTEND {
            return domain("ln_integrate: right tail does not decay");
        }
    }
    let r = integrate_with_breaks(|x| (g(x) - m).exp(), a, b, breaks, spec)?;
    Ok(LnQuadResult { ln_value: m + r.value.ln(), rel_err: r.err_est / r.value + (-drop).exp(), range: (a, b) })
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::special::airy_ai;
    use std::f64::consts::PI;

    #[test]
    fn ln_integrate_huge_gaussian() {
        // ∫ e^{1000 - (x-3)²/2} = e^{1000} √(2π)
        let r = ln_integrate(|x| 1000.0 - 0.5 * (x - 3.0) * (x - 3.0), -1.0, 1.0, 0.25, 40.0, &[], &QuadratureSpec::default()).unwrap();
        assert!((r.ln_value - 1000.0 - (2.0 * PI).sqrt().ln()).abs() < 1e-10);
        assert!(r.range.1 > 11.0);
    }

    #[test]
    fn linear_on_unit_interval() {
        let r = integrate(|x| x, Domain::Finite(0.0, 1.0), &QuadratureSpec::default()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn gaussian_full_line() {
        let r = integrate(|x| (-0.5 * x * x).exp(), Domain::Full, &QuadratureSpec::new(1e-13, 1e-12)).unwrap();
        assert!((r.value - (2.0 * PI).sqrt()).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn airy_exponential_moment() {
        // ∫ Ai(ζ) e^{ζ/2} dζ = e^{1/24}
        let r = integrate(
            |z| if z > 100.0 { 0.0 } else { airy_ai(z) * (0.5 * z).exp() },
            Domain::Full,
            &QuadratureSpec::new(1e-12, 1e-11).with_map_scale(4.0).with_max_subdivisions(20_000),
        )
        .unwrap();
        assert!((r.value - (1.0f64 / 24.0).exp()).abs() < 1e-6, "{}", r.value);
    }

    #[test]
    fn half_lines_and_reversed() {
        let spec = QuadratureSpec::new(1e-14, 1e-13);
        let r = integrate(|x| (-x).exp(), Domain::UpperHalf(1.0), &spec).unwrap();
        assert!((r.value - (-1.0f64).exp()).abs() < 1e-13);
        let r = integrate(|x| x.exp(), Domain::LowerHalf(0.0), &spec).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13);
        let r = integrate(|x| x * x, Domain::Finite(1.0, 0.0), &spec).unwrap();
        assert!((r.value + 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn non_convergence_reports_partial() {
        let spec = QuadratureSpec::new(1e-15, 1e-15).with_max_subdivisions(3);
        match integrate(|x| (1.0 / x).sin(), Domain::Finite(1e-4, 1.0), &spec) {
            Err(Error::QuadratureNoConvergence { partial, .. }) => assert!(partial.is_finite()),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_tolerances() {
        let spec = QuadratureSpec::new(0.0, 1e-3);
        assert!(integrate(|x| x, Domain::Finite(0.0, 1.0), &spec).is_err());
    }

    #[test]
    fn deterministic() {
        let f = |x: f64| (3.0 * x).sin() * (-x * x).exp();
        let spec = QuadratureSpec::default();
        let a = integrate(f, Domain::Full, &spec).unwrap();
        let b = integrate(f, Domain::Full, &spec).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn breaks_handle_kinks() {
        let r = integrate_with_breaks(|x: f64| x.abs(), -1.0, 2.0, &[0.0], &QuadratureSpec::default()).unwrap();
        assert!((r.value - 2.5).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_exact_for_polynomials() {
        let (x, w) = gauss_legendre(12);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(22)).sum();
        assert!((s - 2.0 / 23.0).abs() < 1e-14);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
    }
}
