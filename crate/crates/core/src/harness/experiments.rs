//! The experiment commands. Each returns an [`ExperimentReport`] whose CSV
//! tables depend only on the configuration (including the master seed).

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use nalgebra::DMatrix;

use super::config::{ExperimentConfig, KappaMode, Method};
use super::replicate::{run_replications, ReplicationOutcome};
use super::table::Table;
use crate::bootstrap::{residual_bootstrap, weighted_bootstrap_from_fit, BootstrapResult};
use crate::error::{GarchError, Result};
use crate::garch::{check_identifiability, simulate, GarchSpec, InnovationDistribution, SamplePath};
use crate::inference::{bootstrap_interval, chi_square_quantile, confidence_ellipse, sae, CoverageRecord};
use crate::qmle::{asymptotic_covariance, estimate_j, estimate_kurtosis, fit_qmle, JEstimate};
use crate::rng::derive_seed;
use crate::stats::covariance;

/// Version string recorded in report metadata. A revision can be appended at
/// build time through `GARCH_BOOT_REVISION`.
pub fn version() -> String {
    match option_env!("GARCH_BOOT_REVISION") {
        Some(rev) => format!("{} {}-{}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"), rev),
        None => format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
    }
}

/// Output of one experiment command.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub kind: &'static str,
    pub tables: Vec<Table>,
    /// Human-readable text, when the command produces one.
    pub summary: Option<String>,
    pub config_echo: String,
    pub version: String,
    pub wall_time: Duration,
}

impl ExperimentReport {
    fn new(kind: &'static str, cfg: &ExperimentConfig, started: Instant, tables: Vec<Table>) -> Self {
        Self { kind, tables, summary: None, config_echo: cfg.echo(), version: version(), wall_time: started.elapsed() }
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    /// Metadata block. Kept out of the CSV files so that those stay byte-identical across runs.
    pub fn metadata(&self) -> String {
        format!(
            "# experiment: {}\n# version: {}\n# wall_time_seconds: {:.3}\n{}",
            self.kind,
            self.version,
            self.wall_time.as_secs_f64(),
            self.config_echo
        )
    }

    /// Write every table as `<name>.csv`, the summary as `<kind>_summary.txt`
    /// and the metadata as `<kind>_meta.txt` under `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut paths = Vec::new();
        for t in &self.tables {
            paths.push(t.write_file(dir)?);
        }
        if let Some(s) = &self.summary {
            let p = dir.join(format!("{}_summary.txt", self.kind));
            std::fs::write(&p, s)?;
            paths.push(p);
        }
        let p = dir.join(format!("{}_meta.txt", self.kind));
        std::fs::write(&p, self.metadata())?;
        paths.push(p);
        Ok(paths)
    }
}

fn oracle_kappa(dist: &InnovationDistribution) -> Result<f64> {
    let k = dist.kurtosis();
    if k.is_finite() {
        Ok(k)
    } else {
        Err(GarchError::InvalidArgument(format!("innovation law {dist} has no finite fourth moment")))
    }
}

fn reference_j(cfg: &ExperimentConfig) -> Result<JEstimate> {
    estimate_j(&cfg.model()?, &cfg.dist, cfg.sim_len, derive_seed(cfg.master_seed, 0, "reference"))
}

/// `(kappa - 1) J^-1` at the true parameter, with `kappa` from the innovation law.
pub fn reference_covariance(cfg: &ExperimentConfig) -> Result<DMatrix<f64>> {
    asymptotic_covariance(&reference_j(cfg)?, oracle_kappa(&cfg.dist)?)
}

fn accounting_table(name: &str) -> Table {
    Table::new(name, &["n", "method", "reps", "failures", "requested"])
}

fn push_accounting<T>(t: &mut Table, n: usize, method: &str, out: &ReplicationOutcome<T>) {
    t.push(vec![n.into(), method.into(), out.records.len().into(), out.failures.len().into(), out.requested.into()]);
}

/// Simulated path with columns `t,x,h`.
pub fn cmd_simulate(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let started = Instant::now();
    let path = simulate(&cfg.model()?, &cfg.dist, cfg.n, cfg.burn_in, cfg.master_seed)?;
    let h = path.true_variances().expect("simulated paths carry their variances");
    let mut t = Table::new("simulate", &["t", "x", "h"]);
    for (i, (x, h)) in path.values().iter().zip(h).enumerate() {
        t.push(vec![(i + 1).into(), (*x).into(), (*h).into()]);
    }
    Ok(ExperimentReport::new("simulate", cfg, started, vec![t]))
}

/// Fit the model orders of `cfg` to `input`, or to a path simulated from the
/// configured truth when no input is given.
///
/// Standard errors are `sqrt((kappa_hat - 1) J^-1_ii / n)` with `J` simulated at
/// the estimate under the configured innovation law.
pub fn cmd_fit(cfg: &ExperimentConfig, input: Option<&SamplePath>) -> Result<ExperimentReport> {
    cfg.validate()?;
    let started = Instant::now();
    let simulated;
    let sample = match input {
        Some(s) => s,
        None => {
            simulated = simulate(&cfg.model()?, &cfg.dist, cfg.n, cfg.burn_in, cfg.master_seed)?;
            &simulated
        }
    };
    let n = sample.len();
    let fit = fit_qmle(sample, cfg.order()?, &cfg.fit)?;
    let kappa = estimate_kurtosis(&fit.residuals)?;
    let names = fit.theta_hat.param_names();
    let mut notes = Vec::new();
    let se: Vec<f64> = if !fit.theta_hat.is_second_order_stationary() {
        notes.push(format!(
            "estimate has persistence {:.4} >= 1; standard errors unavailable",
            fit.theta_hat.persistence()
        ));
        vec![f64::NAN; names.len()]
    } else {
        let j = estimate_j(&fit.theta_hat, &cfg.dist, cfg.sim_len, derive_seed(cfg.master_seed, 0, "fit-j"))?;
        match asymptotic_covariance(&j, kappa) {
            Ok(v) => (0..names.len()).map(|i| (v[(i, i)] / n as f64).sqrt()).collect(),
            Err(e) => {
                notes.push(format!("standard errors unavailable: {e}"));
                vec![f64::NAN; names.len()]
            }
        }
    };

    let mut table = Table::new("fit", &["param", "estimate", "std_error"]);
    for ((name, est), s) in names.iter().zip(fit.params()).zip(&se) {
        table.push(vec![name.as_str().into(), est.into(), (*s).into()]);
    }

    let ident = check_identifiability(&fit.theta_hat);
    let mut s = String::new();
    s.push_str(&format!("observations: {n}\n"));
    s.push_str(&format!("model: {}\n", fit.theta_hat));
    for ((name, est), se) in names.iter().zip(fit.params()).zip(&se) {
        s.push_str(&format!("  {name:<8} {est:>14.6}  (se {se:.6})\n"));
    }
    s.push_str(&format!("kappa_hat: {kappa:.4}\n"));
    s.push_str(&format!("quasi log-likelihood objective: {:.8}\n", fit.neg_loglik));
    s.push_str(&format!(
        "converged: {} after {} iterations (start {})\n",
        fit.converged, fit.iterations, fit.best_start
    ));
    if fit.boundary_flag {
        s.push_str("estimate lies on the boundary of the parameter box\n");
    }
    s.push_str(&format!("identifiable: {}\n", ident.passes()));
    for note in notes {
        s.push_str(&note);
        s.push('\n');
    }

    let mut report = ExperimentReport::new("fit", cfg, started, vec![table]);
    report.summary = Some(s);
    Ok(report)
}

/// `(kappa - 1) J^-1` for ARCH(1) over the `omega_grid x alpha_grid` grid.
///
/// Every grid point uses the same innovation stream, so differences across the
/// grid are not blurred by simulation noise.
pub fn cmd_contour(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let started = Instant::now();
    let kappa = oracle_kappa(&cfg.dist)?;
    let grid: Vec<(f64, f64)> =
        cfg.omega_grid.iter().flat_map(|&w| cfg.alpha_grid.iter().map(move |&a| (w, a))).collect();
    let seed = derive_seed(cfg.master_seed, 0, "contour");
    let out = run_replications("contour", cfg.master_seed, grid.len(), cfg.threads, |i, _| {
        let (w, a) = grid[i];
        let j = estimate_j(&GarchSpec::arch1(w, a)?, &cfg.dist, cfg.sim_len, seed)?;
        asymptotic_covariance(&j, kappa)
    })?;
    if let Some((i, msg)) = out.failures.first() {
        let (w, a) = grid[*i];
        return Err(GarchError::InvalidArgument(format!("grid point ({w}, {a}): {msg}")));
    }
    let mut t = Table::new("contour", &["omega0", "alpha0", "var_omega", "cov", "var_alpha"]);
    for (i, v) in &out.records {
        let (w, a) = grid[*i];
        t.push(vec![w.into(), a.into(), v[(0, 0)].into(), v[(0, 1)].into(), v[(1, 1)].into()]);
    }
    Ok(ExperimentReport::new("contour", cfg, started, vec![t]))
}

/// Elementwise ratio of `n cov(estimates)` to `(kappa - 1) J^-1` for each
/// sample size and method. Bootstrap methods pool all replicates of all samples.
pub fn cmd_convergence(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let started = Instant::now();
    let (model, order) = (cfg.model()?, cfg.order()?);
    let reference = reference_covariance(cfg)?;
    let names = model.param_names();
    let d = names.len();
    let mut table = Table::new("convergence", &["n", "method", "elem", "ratio"]);
    let mut acct = accounting_table("convergence_accounting");
    for &n in &cfg.sizes {
        let label = format!("convergence-n{n}");
        for &method in &cfg.methods {
            let out = run_replications(&label, cfg.master_seed, cfg.reps, cfg.threads, |_, seed| {
                let x = simulate(&model, &cfg.dist, n, cfg.burn_in, seed)?;
                let fit = fit_qmle(&x, order, &cfg.fit)?;
                Ok(match method {
                    Method::Qmle => vec![fit.params()],
                    Method::Wb => {
                        let s = derive_seed(seed, 1, "wb");
                        weighted_bootstrap_from_fit(&x, &fit, cfg.scheme, cfg.boot, &cfg.fit, s)?.replicates
                    }
                    Method::Rb => {
                        residual_bootstrap(&x, &fit, cfg.boot, &cfg.fit, derive_seed(seed, 2, "rb"))?.replicates
                    }
                })
            })?;
            let pooled: Vec<Vec<f64>> = out.values().flatten().cloned().collect();
            let cov = (pooled.len() >= 2).then(|| covariance(&pooled));
            for i in 0..d {
                for j in i..d {
                    let ratio = cov.as_ref().map_or(f64::NAN, |c| n as f64 * c[(i, j)] / reference[(i, j)]);
                    let elem = format!("{}_{}", names[i], names[j]);
                    table.push(vec![n.into(), method.to_string().into(), elem.into(), ratio.into()]);
                }
            }
            push_accounting(&mut acct, n, &method.to_string(), &out);
        }
    }
    Ok(ExperimentReport::new("convergence", cfg, started, vec![table, acct]))
}

/// Sum of absolute estimation errors per replication, for every innovation
/// law in `dists` and size in `sizes`. Fits that stop at the iteration cap are
/// still recorded.
pub fn cmd_sae(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let started = Instant::now();
    let (model, order) = (cfg.model()?, cfg.order()?);
    let theta0 = model.params();
    let mut table = Table::new("sae", &["dist", "n", "rep", "sae"]);
    let mut acct = Table::new("sae_accounting", &["dist", "n", "reps", "failures", "requested"]);
    for dist in &cfg.dists {
        for &n in &cfg.sizes {
            let label = format!("sae-{dist}-n{n}");
            let out = run_replications(&label, cfg.master_seed, cfg.reps, cfg.threads, |_, seed| {
                let x = simulate(&model, dist, n, cfg.burn_in, seed)?;
                Ok(sae(&fit_qmle(&x, order, &cfg.fit)?.params(), &theta0))
            })?;
            for (r, v) in &out.records {
                table.push(vec![dist.to_string().into(), n.into(), (*r).into(), (*v).into()]);
            }
            acct.push(vec![
                dist.to_string().into(),
                n.into(),
                out.records.len().into(),
                out.failures.len().into(),
                out.requested.into(),
            ]);
        }
    }
    Ok(ExperimentReport::new("sae", cfg, started, vec![table, acct]))
}

/// Interval classifications (`[level][param]`) and set memberships (`[ellipse level]`)
/// of one method on one sample.
#[derive(Debug, Clone)]
struct Hits {
    intervals: Vec<Vec<CoverageRecord>>,
    sets: Vec<bool>,
}

fn coverage_label(m: Method) -> &'static str {
    match m {
        Method::Qmle => "empirical",
        Method::Wb => "wb",
        Method::Rb => "rb",
    }
}

fn bootstrap_hits(cfg: &ExperimentConfig, res: &BootstrapResult, theta0: &[f64], n: usize) -> Result<Hits> {
    if res.unreliable() {
        log::warn!("{}: {} of {} replicates failed", res.method, res.failures, res.requested);
    }
    let center = res.base_fit.params();
    let intervals = cfg
        .levels
        .iter()
        .map(|&l| {
            (0..theta0.len())
                .map(|i| Ok(bootstrap_interval(res, i, l, cfg.interval_method, cfg.quantile_rule)?.classify(theta0[i])))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    // Replicates spread around the estimate by `spread_factor` times the
    // estimator's own covariance.
    let shape = covariance(&res.replicates) * (n as f64 / res.spread_factor);
    let sets = cfg
        .ellipse_levels
        .iter()
        .map(|&l| Ok(confidence_ellipse(&center, &shape, n, l)?.contains(theta0)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Hits { intervals, sets })
}

fn limiting_hits(cfg: &ExperimentConfig, center: &[f64], v: &DMatrix<f64>, theta0: &[f64], n: usize) -> Result<Hits> {
    let intervals = cfg
        .levels
        .iter()
        .map(|&l| {
            let z = chi_square_quantile(1.0, l)?.sqrt();
            Ok((0..theta0.len())
                .map(|i| {
                    let half = z * (v[(i, i)] / n as f64).sqrt();
                    let below = theta0[i] < center[i] - half;
                    let above = theta0[i] > center[i] + half;
                    CoverageRecord { parameter_index: i, below, inside: !(below || above), above }
                })
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    let sets = cfg
        .ellipse_levels
        .iter()
        .map(|&l| Ok(confidence_ellipse(center, v, n, l)?.contains(theta0)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Hits { intervals, sets })
}

/// Coverage of the true parameter by per-parameter intervals and by joint
/// confidence ellipses.
///
/// Methods: `wb` and `rb` build intervals and ellipses from their replicates;
/// `qmle` (reported as `empirical`) uses the limiting law
/// `N(theta_hat, (kappa - 1) J^-1 / n)` with `J` at the truth.
/// A sample whose base fit fails counts as a failure for every method; a
/// failing bootstrap counts only against its own method.
pub fn cmd_coverage(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let started = Instant::now();
    let (model, order) = (cfg.model()?, cfg.order()?);
    let theta0 = model.params();
    let names = model.param_names();
    let limiting = if cfg.methods.contains(&Method::Qmle) {
        let j = reference_j(cfg)?;
        let v = match cfg.kappa_mode {
            KappaMode::Oracle => Some(asymptotic_covariance(&j, oracle_kappa(&cfg.dist)?)?),
            KappaMode::Data => None,
        };
        Some((j, v))
    } else {
        None
    };

    let mut intervals = Table::new(
        "coverage_intervals",
        &[
            "method",
            "n",
            "param",
            "level",
            "below",
            "inside",
            "above",
            "reps",
            "failures",
            "pct_below",
            "pct_inside",
            "pct_above",
        ],
    );
    let mut sets = Table::new("coverage_sets", &["method", "n", "level", "inside", "reps", "failures", "pct_inside"]);

    for &n in &cfg.sizes {
        let label = format!("coverage-n{n}");
        let out = run_replications(&label, cfg.master_seed, cfg.reps, cfg.threads, |_, seed| {
            let x = simulate(&model, &cfg.dist, n, cfg.burn_in, seed)?;
            let fit = fit_qmle(&x, order, &cfg.fit)?;
            if !fit.converged {
                return Err(GarchError::NotConverged { iterations: fit.iterations });
            }
            let per_method = cfg.methods.iter().map(|&m| {
                let hits = match m {
                    Method::Qmle => {
                        let (j, v) = limiting.as_ref().expect("limiting law prepared for qmle");
                        match v {
                            Some(v) => limiting_hits(cfg, &fit.params(), v, &theta0, n),
                            None => estimate_kurtosis(&fit.residuals)
                                .and_then(|k| asymptotic_covariance(j, k))
                                .and_then(|v| limiting_hits(cfg, &fit.params(), &v, &theta0, n)),
                        }
                    }
                    Method::Wb => weighted_bootstrap_from_fit(
                        &x,
                        &fit,
                        cfg.scheme,
                        cfg.boot,
                        &cfg.fit,
                        derive_seed(seed, 1, "wb"),
                    )
                    .and_then(|r| bootstrap_hits(cfg, &r, &theta0, n)),
                    Method::Rb => residual_bootstrap(&x, &fit, cfg.boot, &cfg.fit, derive_seed(seed, 2, "rb"))
                        .and_then(|r| bootstrap_hits(cfg, &r, &theta0, n)),
                };
                hits.map_err(|e| log::warn!("{} failed on one sample: {e}", coverage_label(m))).ok()
            });
            Ok(per_method.collect::<Vec<Option<Hits>>>())
        })?;

        for (k, &m) in cfg.methods.iter().enumerate() {
            let hits: Vec<&Hits> = out.values().filter_map(|v| v[k].as_ref()).collect();
            let reps = hits.len();
            let failures = cfg.reps - reps;
            let pct = |c: usize| if reps == 0 { f64::NAN } else { 100.0 * c as f64 / reps as f64 };
            for (li, &level) in cfg.levels.iter().enumerate() {
                for (i, name) in names.iter().enumerate() {
                    let (mut b, mut ins, mut a) = (0, 0, 0);
                    for h in &hits {
                        let r = &h.intervals[li][i];
                        b += r.below as usize;
                        ins += r.inside as usize;
                        a += r.above as usize;
                    }
                    intervals.push(vec![
                        coverage_label(m).into(),
                        n.into(),
                        name.as_str().into(),
                        level.into(),
                        b.into(),
                        ins.into(),
                        a.into(),
                        reps.into(),
                        failures.into(),
                        pct(b).into(),
                        pct(ins).into(),
                        pct(a).into(),
                    ]);
                }
            }
            for (li, &level) in cfg.ellipse_levels.iter().enumerate() {
                let ins = hits.iter().filter(|h| h.sets[li]).count();
                sets.push(vec![
                    coverage_label(m).into(),
                    n.into(),
                    level.into(),
                    ins.into(),
                    reps.into(),
                    failures.into(),
                    pct(ins).into(),
                ]);
            }
        }
    }
    Ok(ExperimentReport::new("coverage", cfg, started, vec![intervals, sets]))
}
