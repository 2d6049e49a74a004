//! Derivative-free minimizers: SPSA and Nelder-Mead.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimizerKind {
    Spsa,
    Simplex,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SpsaGains {
    pub a: f64,
    pub c: f64,
    pub big_a: f64,
    pub alpha: f64,
    pub gamma: f64,
}

impl Default for SpsaGains {
    fn default() -> Self {
        Self {
            a: 0.1,
            c: 0.1,
            big_a: 10.0,
            alpha: 0.602,
            gamma: 0.101,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    pub kind: OptimizerKind,
    pub max_iterations: usize,
    /// Hartree. SPSA: minimum improvement of the best value over the
    /// window; simplex: spread of the vertex values.
    pub convergence_threshold: f64,
    pub seed: u64,
    pub spsa: SpsaGains,
    /// Iterations over which SPSA progress is measured.
    pub spsa_window: usize,
    /// Edge length of the initial simplex.
    pub simplex_step: f64,
    /// Largest allowed distance (max norm) from the best vertex to any other
    /// at termination. Stops symmetric simplices straddling a minimum from
    /// passing the value-spread test early.
    pub simplex_xtol: f64,
    /// Half-width of the uniform jitter added to the start point (0 = none).
    pub initial_jitter: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            kind: OptimizerKind::Simplex,
            max_iterations: 1000,
            convergence_threshold: 1e-4,
            seed: 0,
            spsa: SpsaGains::default(),
            spsa_window: 20,
            simplex_step: 0.1,
            simplex_xtol: 1e-4,
            initial_jitter: 0.0,
        }
    }
}

impl OptimizerConfig {
    pub fn spsa() -> Self {
        Self {
            kind: OptimizerKind::Spsa,
            max_iterations: 500,
            ..Self::default()
        }
    }

    pub fn simplex() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be at least 1".into()));
        }
        if !(self.convergence_threshold > 0.0) {
            return Err(Error::Config("convergence_threshold must be positive".into()));
        }
        let g = &self.spsa;
        if !(g.a > 0.0 && g.c > 0.0 && g.big_a >= 0.0 && g.alpha > 0.0 && g.gamma > 0.0) {
            return Err(Error::Config("SPSA gains must be positive".into()));
        }
        if self.spsa_window == 0 || !(self.simplex_step > 0.0) || !(self.simplex_xtol > 0.0) || self.initial_jitter < 0.0 {
            return Err(Error::Config("window, step and jitter must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationReason {
    Converged,
    MaxIterations,
    NoParameters,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeResult {
    pub final_energy: f64,
    pub final_parameters: Vec<f64>,
    /// One entry per iteration.
    pub energy_trace: Vec<f64>,
    pub n_function_evaluations: usize,
    pub converged: bool,
    pub termination_reason: TerminationReason,
}

impl VqeResult {
    /// Running minimum of the trace.
    pub fn best_trace(&self) -> Vec<f64> {
        let mut best = f64::INFINITY;
        self.energy_trace
            .iter()
            .map(|&e| {
                best = best.min(e);
                best
            })
            .collect()
    }

    /// Σ |E_{k+1} − E_k| over the trace.
    pub fn total_variation(&self) -> f64 {
        self.energy_trace.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }
}

struct Counted<'a, F> {
    f: &'a mut F,
    evaluations: usize,
    trace: Vec<f64>,
}

impl<F: FnMut(&[f64]) -> Result<f64>> Counted<'_, F> {
    fn eval(&mut self, x: &[f64], iteration: usize) -> Result<f64> {
        self.evaluations += 1;
        let v = (self.f)(x)?;
        if !v.is_finite() {
            return Err(Error::Diverged {
                iteration,
                trace: self.trace.clone(),
            });
        }
        Ok(v)
    }
}

fn jittered_start(theta0: &[f64], config: &OptimizerConfig, rng: &mut ChaCha8Rng) -> Vec<f64> {
    theta0
        .iter()
        .map(|&t| {
            if config.initial_jitter > 0.0 {
                t + rng.gen_range(-config.initial_jitter..=config.initial_jitter)
            } else {
                t
            }
        })
        .collect()
}

fn no_parameters<F: FnMut(&[f64]) -> Result<f64>>(objective: &mut F) -> Result<VqeResult> {
    let e = objective(&[])?;
    if !e.is_finite() {
        return Err(Error::Diverged { iteration: 0, trace: vec![] });
    }
    Ok(VqeResult {
        final_energy: e,
        final_parameters: vec![],
        energy_trace: vec![e],
        n_function_evaluations: 1,
        converged: true,
        termination_reason: TerminationReason::NoParameters,
    })
}

/// Simultaneous-perturbation stochastic approximation with gains
/// a_k = a/(A+k+1)^α and c_k = c/(k+1)^γ and Rademacher perturbations.
/// The trace records the objective at each new iterate.
pub fn spsa_minimize<F>(mut objective: F, theta0: &[f64], config: &OptimizerConfig) -> Result<VqeResult>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    config.validate()?;
    if theta0.is_empty() {
        return no_parameters(&mut objective);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut theta = jittered_start(theta0, config, &mut rng);
    let d = theta.len();
    let g = config.spsa;
    let mut f = Counted { f: &mut objective, evaluations: 0, trace: Vec::new() };
    let mut best = (f64::INFINITY, theta.clone());
    let mut best_history: Vec<f64> = Vec::new();
    let mut reason = TerminationReason::MaxIterations;

    for k in 0..config.max_iterations {
        let ak = g.a / (g.big_a + k as f64 + 1.0).powf(g.alpha);
        let ck = g.c / (k as f64 + 1.0).powf(g.gamma);
        let delta: Vec<f64> = (0..d).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect();
        let plus: Vec<f64> = theta.iter().zip(&delta).map(|(t, s)| t + ck * s).collect();
        let minus: Vec<f64> = theta.iter().zip(&delta).map(|(t, s)| t - ck * s).collect();
        let diff = f.eval(&plus, k)? - f.eval(&minus, k)?;
        for (t, s) in theta.iter_mut().zip(&delta) {
            *t -= ak * diff / (2.0 * ck * s);
        }
        let e = f.eval(&theta, k)?;
        f.trace.push(e);
        if e < best.0 {
            best = (e, theta.clone());
        }
        best_history.push(best.0);
        let w = config.spsa_window;
        if best_history.len() > w {
            let then = best_history[best_history.len() - 1 - w];
            if then - best.0 < config.convergence_threshold {
                reason = TerminationReason::Converged;
                break;
            }
        }
    }
    Ok(VqeResult {
        final_energy: best.0,
        final_parameters: best.1,
        energy_trace: f.trace,
        n_function_evaluations: f.evaluations,
        converged: reason == TerminationReason::Converged,
        termination_reason: reason,
    })
}

/// Nelder-Mead with reflection 1, expansion 2, contraction 0.5 and shrink
/// 0.5. Stops when the spread of vertex values drops below the threshold and
/// the simplex is smaller than `simplex_xtol`.
/// The trace records the best vertex value after each iteration.
pub fn simplex_minimize<F>(mut objective: F, theta0: &[f64], config: &OptimizerConfig) -> Result<VqeResult>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    config.validate()?;
    if theta0.is_empty() {
        return no_parameters(&mut objective);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let start = jittered_start(theta0, config, &mut rng);
    let d = start.len();
    let mut f = Counted { f: &mut objective, evaluations: 0, trace: Vec::new() };

    let mut vertices: Vec<(f64, Vec<f64>)> = Vec::with_capacity(d + 1);
    vertices.push((f.eval(&start, 0)?, start.clone()));
    for i in 0..d {
        let mut x = start.clone();
        x[i] += config.simplex_step;
        vertices.push((f.eval(&x, 0)?, x));
    }

    let point = |c: &[f64], w: &[f64], t: f64| -> Vec<f64> { c.iter().zip(w).map(|(c, w)| c + t * (w - c)).collect() };
    let mut reason = TerminationReason::MaxIterations;
    for k in 0..config.max_iterations {
        vertices.sort_by(|a, b| a.0.total_cmp(&b.0));
        let centroid: Vec<f64> = (0..d)
            .map(|j| vertices[..d].iter().map(|v| v.1[j]).sum::<f64>() / d as f64)
            .collect();
        let (worst_f, worst) = vertices[d].clone();
        let best_f = vertices[0].0;
        let second_worst_f = vertices[d - 1].0;

        let xr = point(&centroid, &worst, -REFLECT);
        let fr = f.eval(&xr, k)?;
        if fr < best_f {
            let xe = point(&centroid, &worst, -EXPAND);
            let fe = f.eval(&xe, k)?;
            vertices[d] = if fe < fr { (fe, xe) } else { (fr, xr) };
        } else if fr < second_worst_f {
            vertices[d] = (fr, xr);
        } else {
            let (xc, fc) = if fr < worst_f {
                let xc = point(&centroid, &xr, CONTRACT);
                let fc = f.eval(&xc, k)?;
                (xc, fc)
            } else {
                let xc = point(&centroid, &worst, CONTRACT);
                let fc = f.eval(&xc, k)?;
                (xc, fc)
            };
            if fc < fr.min(worst_f) {
                vertices[d] = (fc, xc);
            } else {
                let best = vertices[0].1.clone();
                for v in vertices.iter_mut().skip(1) {
                    let x = point(&best, &v.1, SHRINK);
                    *v = (f.eval(&x, k)?, x);
                }
            }
        }
        vertices.sort_by(|a, b| a.0.total_cmp(&b.0));
        f.trace.push(vertices[0].0);
        let size = vertices[1..]
            .iter()
            .flat_map(|v| v.1.iter().zip(&vertices[0].1).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if vertices[d].0 - vertices[0].0 < config.convergence_threshold && size < config.simplex_xtol {
            reason = TerminationReason::Converged;
            break;
        }
    }
    vertices.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (final_energy, final_parameters) = vertices.swap_remove(0);
    Ok(VqeResult {
        final_energy,
        final_parameters,
        energy_trace: f.trace,
        n_function_evaluations: f.evaluations,
        converged: reason == TerminationReason::Converged,
        termination_reason: reason,
    })
}

pub fn minimize<F>(objective: F, theta0: &[f64], config: &OptimizerConfig) -> Result<VqeResult>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    match config.kind {
        OptimizerKind::Spsa => spsa_minimize(objective, theta0, config),
        OptimizerKind::Simplex => simplex_minimize(objective, theta0, config),
    }
}
