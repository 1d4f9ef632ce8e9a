//! Experiment configuration.
//!
//! The file format is flat `key = value` text, one setting per line; `#`
//! starts a comment and blank lines are ignored. Lists are comma separated.
//! Settings are applied in order: built-in defaults, then the file, then any
//! command-line overrides, each later source replacing earlier values.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::bootstrap::WeightScheme;
use crate::error::{GarchError, Result};
use crate::garch::{GarchSpec, InnovationDistribution, DEFAULT_BURN_IN};
use crate::inference::{IntervalMethod, QuantileRule};
use crate::qmle::{FitConfig, Order};

/// Estimation route compared in convergence and coverage experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Plain QMLE across Monte-Carlo samples.
    Qmle,
    /// Weighted bootstrap.
    Wb,
    /// Residual bootstrap.
    Rb,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Qmle => "qmle",
            Self::Wb => "wb",
            Self::Rb => "rb",
        })
    }
}

impl FromStr for Method {
    type Err = GarchError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "qmle" | "empirical" => Ok(Self::Qmle),
            "wb" | "weighted" => Ok(Self::Wb),
            "rb" | "residual" => Ok(Self::Rb),
            other => Err(GarchError::InvalidArgument(format!("unknown method '{other}'"))),
        }
    }
}

/// Source of the innovation fourth moment used by the confidence machinery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KappaMode {
    /// From the known innovation law.
    #[default]
    Oracle,
    /// Estimated from the fitted residuals.
    Data,
}

impl FromStr for KappaMode {
    type Err = GarchError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "oracle" => Ok(Self::Oracle),
            "data" | "residuals" => Ok(Self::Data),
            other => Err(GarchError::InvalidArgument(format!("unknown kappa mode '{other}'"))),
        }
    }
}

impl fmt::Display for KappaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Oracle => "oracle",
            Self::Data => "data",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub omega: f64,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub dist: InnovationDistribution,
    /// Sample size.
    pub n: usize,
    pub burn_in: usize,
    /// Monte-Carlo samples `R`.
    pub reps: usize,
    /// Bootstrap replicates `B` per sample.
    pub boot: usize,
    /// Simulation length `N` for the information-matrix estimate.
    pub sim_len: usize,
    pub scheme: WeightScheme,
    pub methods: Vec<Method>,
    pub interval_method: IntervalMethod,
    /// Endpoint rule for bootstrap intervals in the coverage experiment.
    pub quantile_rule: QuantileRule,
    pub levels: Vec<f64>,
    pub ellipse_levels: Vec<f64>,
    pub kappa_mode: KappaMode,
    pub master_seed: u64,
    pub threads: Option<usize>,
    pub output_dir: PathBuf,
    /// Sample sizes for the convergence and SAE experiments.
    pub sizes: Vec<usize>,
    /// Innovation laws for the SAE experiment.
    pub dists: Vec<InnovationDistribution>,
    pub omega_grid: Vec<f64>,
    pub alpha_grid: Vec<f64>,
    pub fit: FitConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            omega: 1.0,
            alpha: vec![0.5],
            beta: Vec::new(),
            dist: InnovationDistribution::Gaussian,
            n: 1000,
            burn_in: DEFAULT_BURN_IN,
            reps: 1000,
            boot: 100,
            sim_len: 1_000_000,
            scheme: WeightScheme::Multinomial,
            methods: vec![Method::Wb, Method::Rb],
            interval_method: IntervalMethod::Percentile,
            quantile_rule: QuantileRule::PlottingPosition,
            levels: vec![0.95],
            ellipse_levels: vec![0.95, 0.99],
            kappa_mode: KappaMode::Oracle,
            master_seed: 1,
            threads: None,
            output_dir: PathBuf::from("."),
            sizes: vec![100, 200, 500, 1000, 2000, 5000],
            dists: vec![
                InnovationDistribution::Gaussian,
                InnovationDistribution::StudentT { df: 5.0 },
                InnovationDistribution::StudentT { df: 3.0 },
            ],
            omega_grid: vec![0.5, 1.0, 1.5, 2.0],
            alpha_grid: vec![0.1, 0.3, 0.5, 0.7],
            fit: FitConfig::default(),
        }
    }
}

fn parse_one<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| GarchError::InvalidArgument(format!("bad value '{value}' for '{key}'")))
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| parse_one(key, s)).collect()
}

impl ExperimentConfig {
    /// Read a configuration file on top of the defaults.
    pub fn from_file(path: &Path) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_text(&std::fs::read_to_string(path)?)?;
        Ok(cfg)
    }

    /// Apply every `key = value` line of `text`.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| GarchError::Parse {
                line: i + 1,
                message: format!("expected 'key = value', got '{line}'"),
            })?;
            self.set(key.trim(), value.trim())
                .map_err(|e| GarchError::Parse { line: i + 1, message: e.to_string() })?;
        }
        Ok(())
    }

    /// Apply a `key=value` override.
    pub fn apply_assignment(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| GarchError::InvalidArgument(format!("expected KEY=VALUE, got '{assignment}'")))?;
        self.set(key.trim(), value.trim())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "omega" => self.omega = parse_one(key, value)?,
            "alpha" => self.alpha = parse_list(key, value)?,
            "beta" => self.beta = parse_list(key, value)?,
            "dist" => self.dist = value.parse()?,
            "n" => self.n = parse_one(key, value)?,
            "burn_in" => self.burn_in = parse_one(key, value)?,
            "reps" | "R" => self.reps = parse_one(key, value)?,
            "boot" | "B" => self.boot = parse_one(key, value)?,
            "sim_len" | "N" => self.sim_len = parse_one(key, value)?,
            "scheme" => self.scheme = value.parse()?,
            "methods" | "method" => self.methods = parse_list(key, value)?,
            "interval" => self.interval_method = value.parse()?,
            "quantile" => self.quantile_rule = value.parse()?,
            "levels" | "level" => self.levels = parse_list(key, value)?,
            "ellipse_levels" => self.ellipse_levels = parse_list(key, value)?,
            "kappa" => self.kappa_mode = value.parse()?,
            "seed" | "master_seed" => self.master_seed = parse_one(key, value)?,
            "threads" => self.threads = Some(parse_one(key, value)?),
            "out" | "output_dir" => self.output_dir = PathBuf::from(value),
            "sizes" => self.sizes = parse_list(key, value)?,
            "dists" => self.dists = parse_list(key, value)?,
            "omega_grid" => self.omega_grid = parse_list(key, value)?,
            "alpha_grid" => self.alpha_grid = parse_list(key, value)?,
            _ => {
                if !self.fit.set(key, value)? {
                    return Err(GarchError::InvalidArgument(format!("unknown configuration key '{key}'")));
                }
            }
        }
        Ok(())
    }

    /// The true model.
    pub fn model(&self) -> Result<GarchSpec> {
        GarchSpec::new(self.omega, self.alpha.clone(), self.beta.clone())
    }

    pub fn order(&self) -> Result<Order> {
        Order::new(self.beta.len(), self.alpha.len())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(GarchError::InvalidArgument(m));
        self.model()?;
        self.order()?;
        self.fit.validate()?;
        if self.n == 0 || self.reps == 0 || self.sim_len == 0 {
            return bad("n, reps and sim_len must be positive".into());
        }
        if self.boot < 2 {
            return bad(format!("boot must be at least 2, got {}", self.boot));
        }
        if self.threads == Some(0) {
            return bad("threads must be positive".into());
        }
        if let Some(l) = self.levels.iter().chain(&self.ellipse_levels).find(|l| !(**l > 0.0 && **l < 1.0)) {
            return bad(format!("confidence levels must lie in (0, 1), got {l}"));
        }
        if self.sizes.iter().any(|&s| s == 0) {
            return bad("sample sizes must be positive".into());
        }
        Ok(())
    }

    /// `key = value` lines reproducing this configuration.
    pub fn echo(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let join = |v: Vec<String>| v.join(",");
        let mut s = String::new();
        let mut line = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(&v);
            s.push('\n');
        };
        line("omega", self.omega.to_string());
        line("alpha", list(&self.alpha));
        line("beta", list(&self.beta));
        line("dist", self.dist.to_string());
        line("n", self.n.to_string());
        line("burn_in", self.burn_in.to_string());
        line("reps", self.reps.to_string());
        line("boot", self.boot.to_string());
        line("sim_len", self.sim_len.to_string());
        line("scheme", self.scheme.to_string());
        line("methods", join(self.methods.iter().map(|m| m.to_string()).collect()));
        line("interval", self.interval_method.to_string());
        line("quantile", self.quantile_rule.to_string());
        line("levels", list(&self.levels));
        line("ellipse_levels", list(&self.ellipse_levels));
        line("kappa", self.kappa_mode.to_string());
        line("seed", self.master_seed.to_string());
        if let Some(t) = self.threads {
            line("threads", t.to_string());
        }
        line("out", self.output_dir.display().to_string());
        line("sizes", join(self.sizes.iter().map(|x| x.to_string()).collect()));
        line("dists", join(self.dists.iter().map(|d| d.to_string()).collect()));
        line("omega_grid", list(&self.omega_grid));
        line("alpha_grid", list(&self.alpha_grid));
        line("omega_min", self.fit.omega_min.to_string());
        line("omega_max_factor", self.fit.omega_max_factor.to_string());
        line("coef_max", self.fit.coef_max.to_string());
        line("starts", self.fit.starts.to_string());
        line("max_iterations", self.fit.max_iterations.to_string());
        line("ftol", self.fit.ftol.to_string());
        line("xtol", self.fit.xtol.to_string());
        line("fit_seed", self.fit.seed.to_string());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_text_overrides_defaults() {
        let mut c = ExperimentConfig::default();
        c.apply_text(
            "# ARCH(1) truth\nomega = 2\nalpha = 0.3\n\nR = 50 # samples\nB=20\ndist = t5\nmethods = wb\nstarts = 3\nsizes = 100, 200\n",
        )
        .unwrap();
        assert_eq!(c.omega, 2.0);
        assert_eq!(c.reps, 50);
        assert_eq!(c.boot, 20);
        assert_eq!(c.dist, InnovationDistribution::StudentT { df: 5.0 });
        assert_eq!(c.methods, vec![Method::Wb]);
        assert_eq!(c.fit.starts, 3);
        assert_eq!(c.sizes, vec![100, 200]);
        c.validate().unwrap();
    }

    #[test]
    fn errors_carry_line_numbers() {
        let mut c = ExperimentConfig::default();
        match c.apply_text("n = 10\nbogus = 1\n") {
            Err(GarchError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(c.apply_text("just words"), Err(GarchError::Parse { line: 1, .. })));
        assert!(c.apply_assignment("n=abc").is_err());
    }

    #[test]
    fn echo_round_trips() {
        let mut c = ExperimentConfig::default();
        c.apply_text("alpha = 0.2, 0.1\nbeta = 0.5\nthreads = 3\nlevels = 0.9, 0.95\nquantile = type7\n").unwrap();
        let mut d = ExperimentConfig::default();
        d.apply_text(&c.echo()).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn validation() {
        let mut c = ExperimentConfig::default();
        c.boot = 1;
        assert!(c.validate().is_err());
        let mut c = ExperimentConfig::default();
        c.levels = vec![1.0];
        assert!(c.validate().is_err());
        let mut c = ExperimentConfig::default();
        c.omega = -1.0;
        assert!(c.validate().is_err());
    }
}
