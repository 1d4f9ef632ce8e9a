//! Derivative-free Nelder-Mead minimization on a box.
//!
//! Trial points are projected onto the box before evaluation, so every
//! evaluated point (and the returned minimizer) is feasible. The best vertex
//! never gets worse, hence the result is never worse than the start.

use crate::error::{GarchError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(GarchError::LengthMismatch { expected: lower.len(), got: upper.len() });
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l <= u)) {
            return Err(GarchError::InvalidArgument("every lower bound must not exceed its upper bound".into()));
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn project(&self, x: &mut [f64]) {
        for ((xi, l), u) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *xi = xi.clamp(*l, *u);
        }
    }

    /// True when any coordinate lies within `tol` of its bound.
    pub fn on_boundary(&self, x: &[f64], tol: f64) -> bool {
        x.iter().zip(&self.lower).zip(&self.upper).any(|((xi, l), u)| (xi - l).abs() <= tol || (u - xi).abs() <= tol)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadOptions {
    pub max_iterations: usize,
    /// Stop when `f_worst - f_best` falls below this...
    pub ftol: f64,
    /// ...and every vertex is within this (sup-norm) distance of the best one.
    pub xtol: f64,
    /// Initial edge length relative to `|x0_i|`.
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self { max_iterations: 2000, ftol: 1e-10, xtol: 1e-8, initial_step: 0.1 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

pub fn nelder_mead<F>(mut f: F, x0: &[f64], bounds: &Bounds, opts: &NelderMeadOptions) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let d = x0.len();
    assert_eq!(d, bounds.dim(), "start point and bounds differ in dimension");
    assert!(d > 0, "nothing to minimize");
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut start = x0.to_vec();
    bounds.project(&mut start);
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
    simplex.push(start.clone());
    for i in 0..d {
        let (l, u) = (bounds.lower[i], bounds.upper[i]);
        let mut step =
            if start[i].abs() > 1e-3 { opts.initial_step * start[i].abs() } else { 0.1 * opts.initial_step * (u - l) };
        if start[i] + step > u {
            step = -step;
        }
        let mut v = start.clone();
        v[i] += step;
        bounds.project(&mut v);
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| eval(v)).collect();

    let mut order: Vec<usize> = (0..=d).collect();
    let mut centroid = vec![0.0; d];
    let mut trial = vec![0.0; d];
    let mut trial2 = vec![0.0; d];
    let mut iterations = 0;
    let mut converged = false;

    loop {
        // Stable sort keeps the earlier vertex first on ties.
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let best = order[0];
        let worst = order[d];
        let spread = values[worst] - values[best];
        let diameter = simplex
            .iter()
            .map(|v| v.iter().zip(&simplex[best]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread.abs() < opts.ftol && diameter < opts.xtol {
            converged = true;
            break;
        }
        if iterations >= opts.max_iterations {
            break;
        }
        iterations += 1;

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for &k in &order[..d] {
            for (c, v) in centroid.iter_mut().zip(&simplex[k]) {
                *c += v;
            }
        }
        centroid.iter_mut().for_each(|c| *c /= d as f64);

        let second_worst = values[order[d - 1]];
        let f_best = values[best];
        let f_worst = values[worst];

        for i in 0..d {
            trial[i] = centroid[i] + REFLECT * (centroid[i] - simplex[worst][i]);
        }
        bounds.project(&mut trial);
        let f_reflect = eval(&trial);

        if f_reflect < f_best {
            for i in 0..d {
                trial2[i] = centroid[i] + EXPAND * (trial[i] - centroid[i]);
            }
            bounds.project(&mut trial2);
            let f_expand = eval(&trial2);
            if f_expand < f_reflect {
                simplex[worst].copy_from_slice(&trial2);
                values[worst] = f_expand;
            } else {
                simplex[worst].copy_from_slice(&trial);
                values[worst] = f_reflect;
            }
            continue;
        }
        if f_reflect < second_worst {
            simplex[worst].copy_from_slice(&trial);
            values[worst] = f_reflect;
            continue;
        }
        // Contraction: outside if the reflection improved on the worst vertex, inside otherwise.
        let outside = f_reflect < f_worst;
        for i in 0..d {
            trial2[i] = if outside {
                centroid[i] + CONTRACT * (trial[i] - centroid[i])
            } else {
                centroid[i] + CONTRACT * (simplex[worst][i] - centroid[i])
            };
        }
        bounds.project(&mut trial2);
        let f_contract = eval(&trial2);
        if f_contract < f_reflect.min(f_worst) {
            simplex[worst].copy_from_slice(&trial2);
            values[worst] = f_contract;
            continue;
        }
        let anchor = simplex[best].clone();
        for &k in &order[1..] {
            for i in 0..d {
                simplex[k][i] = anchor[i] + SHRINK * (simplex[k][i] - anchor[i]);
            }
            bounds.project(&mut simplex[k]);
            values[k] = eval(&simplex[k]);
        }
    }

    let best = order[0];
    Minimum { x: simplex[best].clone(), value: values[best], iterations, evaluations, converged }
}
