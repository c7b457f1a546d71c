use std::f64::consts::{PI, SQRT_2};

use landscape_core::goe::{
    check_goe5, density_asymptotic, density_edge, density_exact, density_exact_general, mc_density, DensityCurve,
    GoeEnsembleSpec, Provenance,
};
use landscape_core::landscape::{empirical_counts, enumerate_p2, sample_instance, EnumerationOptions};
use landscape_core::numerics::quad::{integrate, integrate_with_breaks, Domain, QuadratureSpec};
use landscape_core::numerics::special::airy_ai;
use landscape_core::parabolic::{
    asymptotic_minima_parab, asymptotic_parab, count_minima_parab, count_stationary_parab, crossover_edge_parab,
    crossover_minima_parab_report, delta_of, figure2_table, laplace_minima_parab_report, ln_crossover_bulk_parab_tol,
    ln_crossover_minima_parab, regime_parab,
};
use landscape_core::sphere::{
    asymptotic_count_minima, asymptotic_count_stationary, count_minima_exact, count_stationary_exact,
    crossover_bulk_stationary, crossover_edge_stationary, gamma_of, kappa_of, ln_crossover_bulk_stationary,
    ln_crossover_edge_minima, ln_g_exact, ln_g_minima_exact, regime_of,
};
use landscape_core::{
    CountReport, DensitySource, Error, LogValue, Method, PSpinSpec, ParabolicSpec, RandomStream, Regime,
    Tw1Evaluator,
};

use crate::table::{Cell, Table};
use crate::{
    Cli, CliError, Cmd, CountModel, CrossoverArgs, DensityArgs, DensityKind, Figure2Args, MethodSel, Model,
    Outcome, ParabolicArgs, Side, SphereArgs, Suite, Target, TargetSel, TwTableArgs, VerifyArgs,
};

const DEFAULT_SAMPLES: usize = 20_000;
const DEFAULT_Z: f64 = 3.0;

type Res<T> = std::result::Result<T, CliError>;

impl Outcome {
    fn new(table: Table) -> Self {
        Self { table, params: Vec::new(), warnings: Vec::new(), unreliable: false, failed: false }
    }

    fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.push((k.to_string(), v.to_string()));
        self
    }
}

fn args_err<T>(m: impl Into<String>) -> Res<T> {
    Err(CliError::Args(m.into()))
}

fn samples(cli: &Cli) -> usize {
    cli.common.samples.unwrap_or(DEFAULT_SAMPLES)
}

fn stream(cli: &Cli, tag: u64) -> RandomStream {
    RandomStream::new(cli.common.seed, tag)
}

fn tw() -> Res<Tw1Evaluator> {
    Ok(Tw1Evaluator::new()?)
}

pub fn dispatch(cli: &Cli) -> Res<Outcome> {
    if cli.common.samples == Some(0) {
        return args_err("--samples must be at least 1");
    }
    match &cli.cmd {
        Cmd::Density(a) => density(cli, a),
        Cmd::TwTable(a) => tw_table(a),
        Cmd::Count(CountModel::Sphere(a)) => count_sphere(cli, a),
        Cmd::Count(CountModel::Parabolic(a)) => count_parabolic(cli, a),
        Cmd::Crossover(a) => crossover(cli, a),
        Cmd::Figure2(a) => figure2(a),
        Cmd::Verify(a) => verify(cli, a),
        Cmd::Selfcheck => selfcheck(),
    }
}

fn density(cli: &Cli, a: &DensityArgs) -> Res<Outcome> {
    let kind = format!("{:?}", a.kind).to_lowercase();
    let mut params = vec![("command".to_string(), "density".to_string()), ("kind".to_string(), kind)];
    let mut warnings = Vec::new();
    let curve = if a.kind == DensityKind::Edge {
        let grid = a.grid.unwrap_or("-8:4:121".parse().unwrap());
        params.push(("grid".into(), grid.to_string()));
        DensityCurve::from_fn(grid.points(), Provenance::Edge, |z| Ok(density_edge(z)))?
    } else {
        let Some(n) = a.n else {
            return args_err(format!("density --kind {} needs --N", params[1].1));
        };
        let var = a.a.unwrap_or(1.0 / n as f64);
        // √(aN) maps the standardized spectrum [−√2, √2] onto this ensemble
        let s = (var * n as f64).sqrt();
        let grid = a.grid.unwrap_or(landscape_core_grid(s));
        params.extend([("N".into(), n.to_string()), ("a".into(), var.to_string()), ("grid".into(), grid.to_string())]);
        match a.kind {
            DensityKind::Exact => DensityCurve::from_fn(grid.points(), Provenance::Exact, |t| density_exact_general(n, var, t))?,
            DensityKind::Asymptotic => {
                let mut ts = Vec::new();
                let mut vs = Vec::new();
                for t in grid.points() {
                    match density_asymptotic(n, t / s) {
                        Ok(v) => {
                            ts.push(t);
                            vs.push(v / s);
                        }
                        Err(Error::RegimeBoundary(m)) => warnings.push(format!("skipped t = {t}: {m}")),
                        Err(e) => return Err(e.into()),
                    }
                }
                DensityCurve::new(ts, vs, None, Provenance::Asymptotic)?
            }
            DensityKind::Mc => {
                if grid.steps < 2 {
                    return args_err("density --kind mc needs a grid lo:hi:bins with at least 2 bins");
                }
                let ns = samples(cli);
                params.push(("samples".into(), ns.to_string()));
                let spec = GoeEnsembleSpec::new(n, var)?;
                mc_density(&spec, grid.start, grid.stop, grid.steps, ns, &stream(cli, 0))?
            }
            DensityKind::Edge => unreachable!(),
        }
    };
    let mut t = Table::new(&["t", "value", "stderr", "provenance"]);
    for i in 0..curve.values.len() {
        let se = curve.stderr.as_ref().map_or(0.0, |s| s[i]);
        t.push(vec![curve.abscissae[i].into(), curve.values[i].into(), se.into(), curve.provenance.to_string().into()]);
    }
    let mut o = Outcome::new(t);
    o.params = params;
    o.warnings = warnings;
    Ok(o)
}

fn landscape_core_grid(s: f64) -> crate::Sweep {
    let r = 2.0 * s;
    crate::Sweep { start: -r, stop: r, steps: 81 }
}

fn tw_table(a: &TwTableArgs) -> Res<Outcome> {
    let e = tw()?;
    let grid = match a.grid {
        Some(g) => g.points(),
        None => {
            let mut g = e.table.grid.clone();
            g.reverse();
            g
        }
    };
    let mut t = Table::new(&["zeta", "q", "F1", "F1_prime"]);
    for z in &grid {
        t.push(vec![(*z).into(), e.q(*z).into(), e.f1(*z).into(), e.f1_prime(*z).into()]);
    }
    let o = Outcome::new(t).param("command", "tw-table");
    Ok(match a.grid {
        Some(g) => o.param("grid", g),
        None => o.param("grid", "table"),
    })
}

const COUNT_COLUMNS: &[&str] = &["target", "route", "param", "value", "log_value", "method", "regime", "err"];

fn count_row(target: &str, route: &str, param: f64, r: &CountReport) -> Vec<Cell> {
    vec![
        target.into(),
        route.into(),
        param.into(),
        r.value.into(),
        r.log_value.into(),
        r.method.to_string().into(),
        r.regime.to_string().into(),
        r.err.into(),
    ]
}

/// Collects rows of a side-by-side count, turning per-method failures into
/// warnings unless both the method and the target were requested explicitly.
struct Counts {
    table: Table,
    warnings: Vec<String>,
    unreliable: bool,
    explicit: bool,
}

impl Counts {
    fn new(explicit: bool) -> Self {
        Self { table: Table::new(COUNT_COLUMNS), warnings: Vec::new(), unreliable: false, explicit }
    }

    fn add(&mut self, target: &str, label: &str, param: f64, r: landscape_core::Result<CountReport>) -> Res<()> {
        match r {
            Ok(r) => {
                for w in &r.warnings {
                    self.warnings.push(format!("{target} {label}: {w}"));
                }
                if r.unreliable {
                    self.unreliable = true;
                    self.warnings.push(format!("{target} {label}: Monte-Carlo estimate flagged unreliable (relative error {:.3})", r.err));
                }
                self.table.push(count_row(target, label, param, &r));
                Ok(())
            }
            Err(e) if !self.explicit => {
                self.warnings.push(format!("{target} {label}: skipped ({e})"));
                Ok(())
            }
            Err(e) => Err(e.into()),
        }
    }

    fn finish(self, params: Vec<(String, String)>) -> Outcome {
        Outcome { table: self.table, params, warnings: self.warnings, unreliable: self.unreliable, failed: false }
    }
}

fn wants(sel: MethodSel, m: MethodSel) -> bool {
    sel == MethodSel::All || sel == m
}

fn targets(t: TargetSel) -> Vec<Target> {
    match t {
        TargetSel::Both => vec![Target::Stationary, Target::Minima],
        TargetSel::Stationary => vec![Target::Stationary],
        TargetSel::Minima => vec![Target::Minima],
    }
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::Stationary => "stationary",
        Target::Minima => "minima",
    }
}

fn crossover_report(ln: f64, regime: Regime) -> CountReport {
    CountReport::from_log(LogValue::exact(ln), Method::Crossover, regime)
}

fn count_sphere(cli: &Cli, a: &SphereArgs) -> Res<Outcome> {
    let model_group = a.p.is_some() || a.j.is_some() || a.sigma.is_some();
    let (b, mut params) = match (a.b, model_group) {
        (Some(_), true) => return args_err("give either --B or the model group --p/--J/--sigma, not both"),
        (None, false) => return args_err("count sphere needs --B or --p with --J and --sigma"),
        (Some(b), false) => (b, vec![("B".to_string(), b.to_string())]),
        (None, true) => {
            let (Some(p), Some(j), Some(sigma)) = (a.p, a.j, a.sigma) else {
                return args_err("the model group needs all of --p, --J and --sigma");
            };
            let spec = PSpinSpec::new(p, j, sigma, a.n)?;
            let b = spec.b_param()?;
            (b, vec![("p".into(), p.to_string()), ("J".into(), j.to_string()), ("sigma".into(), sigma.to_string()), ("B".into(), b.to_string())])
        }
    };
    let n = a.n;
    params.insert(0, ("command".into(), "count-sphere".into()));
    params.extend([("N".into(), n.to_string()), ("method".into(), format!("{:?}", a.method).to_lowercase())]);
    let ns = samples(cli);
    if wants(a.method, MethodSel::Mc) {
        params.push(("samples".into(), ns.to_string()));
    }
    let mut c = Counts::new(a.method != MethodSel::All && a.target != TargetSel::Both);
    let tw = if wants(a.method, MethodSel::Crossover) && a.target != TargetSel::Stationary { Some(tw()?) } else { None };
    for (ti, target) in targets(a.target).into_iter().enumerate() {
        let name = target_name(target);
        let minima = target == Target::Minima;
        if wants(a.method, MethodSel::Exact) {
            let r = if minima { count_minima_exact(n, b, &DensitySource::Exact) } else { count_stationary_exact(n, b, &DensitySource::Exact) };
            c.add(name, "exact", b, r)?;
        }
        if wants(a.method, MethodSel::Mc) {
            let src = DensitySource::Mc { n_samples: ns, stream: stream(cli, ti as u64) };
            let r = if minima { count_minima_exact(n, b, &src) } else { count_stationary_exact(n, b, &src) };
            c.add(name, "mc", b, r)?;
        }
        if wants(a.method, MethodSel::Asymptotic) {
            let r = if minima { asymptotic_count_minima(b, n) } else { asymptotic_count_stationary(b, n) };
            c.add(name, "asymptotic", b, r)?;
        }
        if wants(a.method, MethodSel::Crossover) {
            let regime = regime_of(n, b);
            if minima {
                let r = ln_crossover_edge_minima(tw.as_ref().unwrap(), kappa_of(n, b)).map(|l| crossover_report(l, regime));
                c.add(name, "edge crossover", b, r)?;
            } else {
                let r = ln_crossover_bulk_stationary(gamma_of(n, b)).map(|l| crossover_report((2.0 * n as f64).ln() + l, regime));
                c.add(name, "bulk crossover", b, r)?;
                let r = crossover_edge_stationary(kappa_of(n, b)).map(|v| crossover_report(v.ln(), regime));
                c.add(name, "edge crossover", b, r)?;
            }
        }
    }
    Ok(c.finish(params))
}

fn count_parabolic(cli: &Cli, a: &ParabolicArgs) -> Res<Outcome> {
    let model_group = a.mu.is_some() || a.f2d0.is_some();
    let (m, mut params) = match (a.m, model_group) {
        (Some(_), true) => return args_err("give either --m or the model group --mu/--f2d0, not both"),
        (None, false) => return args_err("count parabolic needs --m or --mu with --f2d0"),
        (Some(m), false) => (m, vec![("m".to_string(), m.to_string())]),
        (None, true) => {
            let (Some(mu), Some(f)) = (a.mu, a.f2d0) else {
                return args_err("the model group needs both --mu and --f2d0");
            };
            let m = ParabolicSpec::new(mu, f, a.n)?.m();
            (m, vec![("mu".into(), mu.to_string()), ("f2d0".into(), f.to_string()), ("m".into(), m.to_string())])
        }
    };
    let n = a.n;
    params.insert(0, ("command".into(), "count-parabolic".into()));
    params.extend([("N".into(), n.to_string()), ("method".into(), format!("{:?}", a.method).to_lowercase())]);
    let ns = samples(cli);
    if wants(a.method, MethodSel::Mc) {
        params.push(("samples".into(), ns.to_string()));
    }
    let mut c = Counts::new(a.method != MethodSel::All && a.target != TargetSel::Both);
    let tw = if wants(a.method, MethodSel::Crossover) && a.target != TargetSel::Stationary { Some(tw()?) } else { None };
    let nf = n as f64;
    for (ti, target) in targets(a.target).into_iter().enumerate() {
        let name = target_name(target);
        let minima = target == Target::Minima;
        if wants(a.method, MethodSel::Exact) {
            let r = if minima { count_minima_parab(m, n, &DensitySource::Exact) } else { count_stationary_parab(m, n, &DensitySource::Exact) };
            c.add(name, "exact", m, r)?;
        }
        if wants(a.method, MethodSel::Mc) {
            let src = DensitySource::Mc { n_samples: ns, stream: stream(cli, ti as u64) };
            let r = if minima { count_minima_parab(m, n, &src) } else { count_stationary_parab(m, n, &src) };
            c.add(name, "mc", m, r)?;
        }
        if wants(a.method, MethodSel::Asymptotic) {
            let r = if minima { asymptotic_minima_parab(m, n) } else { asymptotic_parab(m, n) };
            c.add(name, "asymptotic", m, r)?;
        }
        if wants(a.method, MethodSel::Crossover) {
            let regime = regime_parab(n, m);
            if minima {
                let t = tw.as_ref().unwrap();
                c.add(name, "edge crossover", m, crossover_minima_parab_report(t, m, n))?;
                c.add(name, "laplace", m, laplace_minima_parab_report(t, m, n))?;
            } else {
                let gamma = (m - 1.0) * nf.sqrt();
                let tol = cli.common.tol.unwrap_or(1e-12);
                let r = ln_crossover_bulk_parab_tol(gamma, tol).map(|l| crossover_report(0.25 * nf.ln() + l, regime));
                c.add(name, "bulk crossover", m, r)?;
                let kappa = 2.0 * delta_of(n, m);
                let r = crossover_edge_parab(kappa).map(|v| crossover_report(v.ln(), regime));
                c.add(name, "edge crossover", m, r)?;
            }
        }
    }
    Ok(c.finish(params))
}

fn crossover(cli: &Cli, a: &CrossoverArgs) -> Res<Outcome> {
    let given: Vec<(&str, crate::Sweep)> = [("kappa", a.kappa), ("gamma", a.gamma), ("delta", a.delta)]
        .into_iter()
        .filter_map(|(k, s)| s.map(|s| (k, s)))
        .collect();
    let [(var, sweep)] = given.as_slice() else {
        return args_err("crossover needs exactly one of --kappa, --gamma, --delta");
    };
    let expected = match (a.model, a.side, a.target) {
        (_, Side::Bulk, Target::Minima) => return args_err("there is no bulk crossover for minima; use --side edge"),
        (Model::Parabolic, Side::Edge, Target::Minima) => "delta",
        (_, Side::Edge, _) => "kappa",
        (_, Side::Bulk, Target::Stationary) => "gamma",
    };
    if *var != expected {
        return args_err(format!("this crossover is swept over --{expected}, not --{var}"));
    }
    let fig1 = a.side == Side::Edge && a.target == Target::Stationary;
    let mut cols = vec!["param", "value", "log_value", "method", "regime", "err"];
    if fig1 {
        cols.push("small_kappa_asymptote");
    }
    let mut t = Table::new(&cols);
    let mut warnings = Vec::new();
    let regime = if a.side == Side::Edge { Regime::Edge } else { Regime::Bulk };
    let tw = if a.target == Target::Minima { Some(tw()?) } else { None };
    let tol = cli.common.tol.unwrap_or(1e-12);
    for x in sweep.points() {
        let ln = match (a.model, a.side, a.target) {
            (Model::Sphere, Side::Edge, Target::Stationary) => crossover_edge_stationary(x).map(f64::ln),
            (Model::Parabolic, Side::Edge, Target::Stationary) => crossover_edge_parab(x).map(f64::ln),
            (Model::Sphere, Side::Edge, Target::Minima) => ln_crossover_edge_minima(tw.as_ref().unwrap(), x),
            (Model::Parabolic, Side::Edge, Target::Minima) => ln_crossover_minima_parab(tw.as_ref().unwrap(), x),
            (Model::Sphere, Side::Bulk, _) => ln_crossover_bulk_stationary(x),
            (Model::Parabolic, Side::Bulk, _) => ln_crossover_bulk_parab_tol(x, tol),
        };
        let ln = match ln {
            Ok(l) => l,
            Err(e @ Error::Domain(_)) => {
                warnings.push(format!("skipped {var} = {x}: {e}"));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let r = crossover_report(ln, regime);
        let mut row = vec![x.into(), r.value.into(), ln.into(), r.method.to_string().into(), regime.to_string().into(), 0.0.into()];
        if fig1 {
            let c = if a.model == Model::Sphere { 4.0 * SQRT_2 } else { 2.0 * SQRT_2 };
            row.push((c / (PI.sqrt() * x.powf(1.5))).into());
        }
        t.push(row);
    }
    let mut o = Outcome::new(t)
        .param("command", "crossover")
        .param("model", format!("{:?}", a.model).to_lowercase())
        .param("side", format!("{:?}", a.side).to_lowercase())
        .param("target", target_name(a.target))
        .param(var, sweep);
    if a.model == Model::Parabolic && a.side == Side::Bulk {
        o = o.param("tol", tol);
    }
    o.warnings = warnings;
    Ok(o)
}

fn figure2(a: &Figure2Args) -> Res<Outcome> {
    let rows = figure2_table(&tw()?, a.n, &a.m.points())?;
    let mut t = Table::new(&["m", "branch", "log_count", "in_window"]);
    for r in rows {
        t.push(vec![r.m.into(), r.branch.label().into(), r.log_count.into(), r.in_window.into()]);
    }
    Ok(Outcome::new(t).param("command", "figure2").param("N", a.n).param("m", a.m))
}

const CHECK_COLUMNS: &[&str] = &["check", "value", "reference", "stderr", "z", "pass"];
const IDENTITY_COLUMNS: &[&str] = &["check", "value", "reference", "tol", "err_over_tol", "pass"];

struct Checks {
    table: Table,
    failed: bool,
    unreliable: bool,
    z_max: f64,
}

impl Checks {
    fn new(columns: &[&'static str], z_max: f64) -> Self {
        Self { table: Table::new(columns), failed: false, unreliable: false, z_max }
    }

    /// A Monte-Carlo value against a reference with its own error.
    fn z(&mut self, name: &str, value: f64, se: f64, reference: f64, ref_se: f64) {
        let comb = se.hypot(ref_se);
        let z = if value == reference { 0.0 } else { (value - reference).abs() / comb };
        let pass = z < self.z_max;
        self.failed |= !pass;
        self.table.push(vec![name.into(), value.into(), reference.into(), comb.into(), z.into(), pass.into()]);
    }

    /// An exact identity with an absolute tolerance. In a verify table the
    /// stderr column then holds tol and z holds |value − reference| / tol.
    fn exact(&mut self, name: &str, value: f64, reference: f64, tol: f64) {
        let r = (value - reference).abs() / tol;
        let pass = r < 1.0;
        self.failed |= !pass;
        self.table.push(vec![name.into(), value.into(), reference.into(), tol.into(), r.into(), pass.into()]);
    }
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Res<Outcome> {
    let ns = samples(cli);
    let z_max = cli.common.tol.unwrap_or(DEFAULT_Z);
    let mut c = Checks::new(CHECK_COLUMNS, z_max);
    if a.suite != Suite::Landscape {
        let (l, _) = check_goe5(2, 1.0, 0.0, ns, &stream(cli, 10))?;
        c.z("goe5 n=2 t=0 vs sqrt(2/pi)", l.mean, l.stderr, (2.0 / PI).sqrt(), 0.0);
        for (i, t) in [0.0, 0.6, 1.2].into_iter().enumerate() {
            let (l, r) = check_goe5(4, 0.25, t, ns, &stream(cli, 11 + i as u64))?;
            c.z(&format!("goe5 n=4 t={t}"), l.mean, l.stderr, r, 0.0);
        }
        let h = mc_density(&GoeEnsembleSpec::standardized(2)?, -2.0, 2.0, 8, ns, &stream(cli, 15))?;
        let spec = QuadratureSpec::new(1e-13, 1e-12);
        for k in 0..8 {
            let lo = -2.0 + 0.5 * k as f64;
            let exact = integrate(|t| density_exact(2, t).unwrap_or(f64::NAN), Domain::Finite(lo, lo + 0.5), &spec)?.value / 0.5;
            c.z(&format!("density n=2 bin [{lo},{}]", lo + 0.5), h.values[k], h.stderr.as_ref().unwrap()[k], exact, 0.0);
        }
        let b = -0.2;
        let ex = count_stationary_exact(6, b, &DensitySource::Exact)?;
        let mc = count_stationary_exact(6, b, &DensitySource::Mc { n_samples: ns, stream: stream(cli, 16) })?;
        c.unreliable |= mc.unreliable;
        c.z("stationary N=6 B=-0.2 mc vs exact", mc.linear(), mc.stderr(), ex.linear(), 0.0);
        let ex = count_minima_exact(3, 0.4, &DensitySource::Exact)?;
        let mc = count_minima_exact(3, 0.4, &DensitySource::Mc { n_samples: ns, stream: stream(cli, 17) })?;
        c.unreliable |= mc.unreliable;
        c.z("minima N=3 B=0.4 mc vs exact", mc.linear(), mc.stderr(), ex.linear(), 0.0);
    }
    if a.suite != Suite::Goe {
        let opts = EnumerationOptions::default();
        let e = empirical_counts(&PSpinSpec::new(2, 1.0, 0.0, 6)?, 100, &stream(cli, 20), &opts)?;
        let off = e.censuses.iter().filter(|x| x.n_stationary != 12 || x.n_minima != 2 || x.morse_sum != 0).count();
        c.exact("p=2 h=0 N=6 instances off 12/2/0", off as f64, 0.0, 0.5);
        let n_inst = (ns / 4).max(100);
        let e = empirical_counts(&PSpinSpec::with_b(2, 1.0, -0.2, 6)?, n_inst, &stream(cli, 21), &opts)?;
        let kr = count_stationary_exact(6, -0.2, &DensitySource::Exact)?;
        c.z("p=2 N=6 B=-0.2 enumeration vs Kac-Rice", e.mean_stationary.mean, e.mean_stationary.stderr, kr.linear(), 0.0);
        let spec = PSpinSpec::new(3, 1.0, 0.0, 5)?;
        let e = empirical_counts(&spec, (ns / 100).max(50), &stream(cli, 22), &opts)?;
        c.unreliable |= e.unreliable;
        let kr = count_stationary_exact(5, spec.b_param()?, &DensitySource::Mc { n_samples: ns, stream: stream(cli, 23) })?;
        c.z("p=3 N=5 multistart vs Kac-Rice", e.mean_stationary.mean, e.mean_stationary.stderr, kr.linear(), kr.stderr());
        let kr = count_minima_exact(5, spec.b_param()?, &DensitySource::Mc { n_samples: ns, stream: stream(cli, 24) })?;
        c.z("p=3 N=5 minima vs Kac-Rice", e.mean_minima.mean, e.mean_minima.stderr, kr.linear(), kr.stderr());
    }
    let o = Outcome {
        table: c.table,
        params: vec![
            ("command".into(), "verify".into()),
            ("suite".into(), format!("{:?}", a.suite).to_lowercase()),
            ("samples".into(), ns.to_string()),
            ("tol".into(), z_max.to_string()),
        ],
        warnings: Vec::new(),
        unreliable: c.unreliable,
        failed: c.failed,
    };
    Ok(o)
}

fn selfcheck() -> Res<Outcome> {
    let mut c = Checks::new(IDENTITY_COLUMNS, DEFAULT_Z);
    c.exact("G(0) N=4", ln_g_exact(4, 0.0)?.ln.exp(), 0.5, 1e-6);
    c.exact("minima functional at B=0, N=2", ln_g_minima_exact(2, 0.0)?.ln.exp(), 1.0, 1e-6);
    for n in [2, 4, 6, 8] {
        let v = count_stationary_exact(n, 0.0, &DensitySource::Exact)?.linear();
        c.exact(&format!("stationary count B=0 N={n}"), v, 2.0 * n as f64, 1e-6 * n as f64);
    }
    let v = count_minima_exact(2, 0.0, &DensitySource::Exact)?.linear();
    c.exact("minima count B=0 N=2", v, 2.0, 1e-6);
    c.exact("bulk crossover at 0", crossover_bulk_stationary(0.0)?, 1.0, 1e-12);
    let t = tw()?;
    c.exact("edge minima crossover at 0", ln_crossover_edge_minima(&t, 0.0)?.exp(), 2.0, 1e-3);
    for k in [0.5, 2.0] {
        let p = crossover_edge_parab(k)?;
        let s = crossover_edge_stationary(k)?;
        c.exact(&format!("parabolic edge = half sphere edge, kappa={k}"), p, 0.5 * s, 1e-10 * s);
    }
    for d in [-0.5, 0.5] {
        let p = ln_crossover_minima_parab(&t, d)?;
        let s = ln_crossover_edge_minima(&t, 2.0 * d)?;
        c.exact(&format!("parabolic minima delta={d} = sphere kappa={}", 2.0 * d), p, s, 1e-10);
    }
    let spec = QuadratureSpec::new(1e-13, 1e-12);
    for n in [2, 10, 20] {
        let r = integrate(|x| density_exact(n, x).unwrap_or(f64::NAN), Domain::Full, &spec)?.value;
        c.exact(&format!("density normalization N={n}"), r, 1.0, 1e-6);
    }
    let breaks: Vec<f64> = (-59..40).map(f64::from).collect();
    let m = integrate_with_breaks(|z| airy_ai(z) * (0.5 * z).exp(), -60.0, 40.0, &breaks, &spec)?.value;
    c.exact("Airy exponential moment kappa=1", m, (1.0f64 / 24.0).exp(), 1e-6);
    let inst = sample_instance(&PSpinSpec::new(2, 1.0, 0.0, 5)?, &RandomStream::new(1, 0))?;
    let (census, _) = enumerate_p2(&inst)?;
    c.exact("p=2 zero field N=5 stationary points", census.n_stationary as f64, 10.0, 0.5);
    c.exact("p=2 zero field N=5 minima", census.n_minima as f64, 2.0, 0.5);
    c.exact("p=2 zero field N=5 Morse sum", census.morse_sum as f64, 2.0, 0.5);
    let o = Outcome {
        table: c.table,
        params: vec![("command".into(), "selfcheck".into())],
        warnings: Vec::new(),
        unreliable: false,
        failed: c.failed,
    };
    Ok(o)
}
