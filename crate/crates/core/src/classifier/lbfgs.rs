//! Limited-memory BFGS with a strong-Wolfe line search.
//!
//! The search direction comes from the standard two-loop recursion over the
//! last `m` correction pairs `(s_k, y_k)`, scaled by `γ = sᵀy / yᵀy`. Pairs
//! with insufficient curvature are dropped. The line search brackets a step
//! satisfying the strong Wolfe conditions and refines it by safeguarded cubic
//! interpolation.

use std::collections::VecDeque;

use crate::error::{Error, Result};

const C1: f64 = 1e-4;
const C2: f64 = 0.9;
const MAX_LINE_EVALS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LbfgsOptions {
    pub history_size: usize,
    pub max_iterations: usize,
    /// Stop once `‖∇f‖_∞` falls to this value.
    pub gradient_tolerance: f64,
}

impl Default for LbfgsOptions {
    fn default() -> Self {
        Self {
            history_size: 10,
            max_iterations: 1000,
            gradient_tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LbfgsReport {
    pub x: Vec<f64>,
    pub value: f64,
    pub gradient_inf_norm: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Objective after each accepted step, starting with the initial value.
    pub trace: Vec<f64>,
}

struct Point {
    alpha: f64,
    value: f64,
    slope: f64,
    x: Vec<f64>,
    grad: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn inf_norm(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Minimizes `objective`, which returns `(f(x), ∇f(x))`.
pub fn minimize<F>(mut objective: F, x0: Vec<f64>, opts: &LbfgsOptions) -> Result<LbfgsReport>
where
    F: FnMut(&[f64]) -> Result<(f64, Vec<f64>)>,
{
    if opts.history_size == 0 {
        return Err(Error::InvalidArgument("L-BFGS history size must be >= 1".into()));
    }
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64]| -> Result<(f64, Vec<f64>)> {
        evaluations += 1;
        let (f, g) = objective(x)?;
        if !f.is_finite() || g.iter().any(|v| !v.is_finite()) {
            return Err(Error::Training(format!(
                "non-finite objective or gradient at evaluation {evaluations}"
            )));
        }
        Ok((f, g))
    };

    let mut x = x0;
    let (mut value, mut grad) = eval(&x)?;
    let mut trace = vec![value];
    let mut pairs: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::with_capacity(opts.history_size);
    let mut iterations = 0;
    let mut converged = inf_norm(&grad) <= opts.gradient_tolerance;

    while !converged && iterations < opts.max_iterations {
        let mut dir = two_loop(&grad, &pairs);
        let mut slope = dot(&dir, &grad);
        if !(slope < 0.0) {
            pairs.clear();
            dir = grad.iter().map(|g| -g).collect();
            slope = dot(&dir, &grad);
        }
        let first_step = if pairs.is_empty() {
            (1.0 / inf_norm(&grad)).min(1.0)
        } else {
            1.0
        };

        let start = Point {
            alpha: 0.0,
            value,
            slope,
            x: x.clone(),
            grad: grad.clone(),
        };
        let step = {
            let mut probe = |alpha: f64| -> Result<Point> {
                let xn: Vec<f64> = x.iter().zip(&dir).map(|(a, d)| a + alpha * d).collect();
                let (f, g) = eval(&xn)?;
                Ok(Point {
                    alpha,
                    value: f,
                    slope: dot(&g, &dir),
                    x: xn,
                    grad: g,
                })
            };
            strong_wolfe(&mut probe, start, first_step)?
        };
        let Some(next) = step else {
            if pairs.is_empty() {
                // steepest descent made no progress: at the precision floor
                break;
            }
            pairs.clear();
            continue;
        };

        let s: Vec<f64> = next.x.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = next.grad.iter().zip(&grad).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-10 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
            if pairs.len() == opts.history_size {
                pairs.pop_front();
            }
            pairs.push_back((s, y, 1.0 / sy));
        }
        x = next.x;
        value = next.value;
        grad = next.grad;
        trace.push(value);
        iterations += 1;
        converged = inf_norm(&grad) <= opts.gradient_tolerance;
    }

    Ok(LbfgsReport {
        gradient_inf_norm: inf_norm(&grad),
        x,
        value,
        iterations,
        evaluations,
        converged,
        trace,
    })
}

fn two_loop(grad: &[f64], pairs: &VecDeque<(Vec<f64>, Vec<f64>, f64)>) -> Vec<f64> {
    let mut q: Vec<f64> = grad.to_vec();
    let mut alphas = Vec::with_capacity(pairs.len());
    for (s, y, rho) in pairs.iter().rev() {
        let a = rho * dot(s, &q);
        q.iter_mut().zip(y).for_each(|(qi, yi)| *qi -= a * yi);
        alphas.push(a);
    }
    if let Some((s, y, _)) = pairs.back() {
        let gamma = dot(s, y) / dot(y, y);
        q.iter_mut().for_each(|v| *v *= gamma);
    }
    for ((s, y, rho), a) in pairs.iter().zip(alphas.into_iter().rev()) {
        let b = rho * dot(y, &q);
        q.iter_mut().zip(s).for_each(|(qi, si)| *qi += (a - b) * si);
    }
    q.iter_mut().for_each(|v| *v = -*v);
    q
}

/// Minimizer of the cubic interpolating values and slopes at `a` and `b`,
/// or `None` when it is not well defined.
fn cubic_min(a: &Point, b: &Point) -> Option<f64> {
    let d1 = a.slope + b.slope - 3.0 * (a.value - b.value) / (a.alpha - b.alpha);
    let disc = d1 * d1 - a.slope * b.slope;
    if disc < 0.0 {
        return None;
    }
    let d2 = (b.alpha - a.alpha).signum() * disc.sqrt();
    let t = b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / (b.slope - a.slope + 2.0 * d2);
    t.is_finite().then_some(t)
}

/// Returns a strong-Wolfe point, or the best sufficient-decrease point found,
/// or `None` when no step decreased the objective.
fn strong_wolfe<P>(probe: &mut P, start: Point, first_step: f64) -> Result<Option<Point>>
where
    P: FnMut(f64) -> Result<Point>,
{
    let f0 = start.value;
    let g0 = start.slope;
    let armijo = |p: &Point| p.value <= f0 + C1 * p.alpha * g0;
    let curvature = |p: &Point| p.slope.abs() <= -C2 * g0;

    let mut prev = start;
    let mut alpha = first_step;
    let mut evals = 0;
    let (mut lo, mut hi) = loop {
        let cur = probe(alpha)?;
        evals += 1;
        if !armijo(&cur) || (prev.alpha > 0.0 && cur.value >= prev.value) {
            break (prev, cur);
        }
        if curvature(&cur) {
            return Ok(Some(cur));
        }
        if cur.slope >= 0.0 {
            break (cur, prev);
        }
        if evals >= MAX_LINE_EVALS {
            return Ok(Some(cur));
        }
        alpha = cur.alpha * 2.0;
        prev = cur;
    };

    while evals < MAX_LINE_EVALS {
        let (left, right) = if lo.alpha < hi.alpha {
            (lo.alpha, hi.alpha)
        } else {
            (hi.alpha, lo.alpha)
        };
        let width = right - left;
        if width <= f64::EPSILON * right.max(1e-300) {
            break;
        }
        let guard = 0.1 * width;
        let trial = match cubic_min(&lo, &hi) {
            Some(t) if t > left + guard && t < right - guard => t,
            _ => 0.5 * (left + right),
        };
        let cur = probe(trial)?;
        evals += 1;
        if !armijo(&cur) || cur.value >= lo.value {
            hi = cur;
        } else {
            if curvature(&cur) {
                return Ok(Some(cur));
            }
            if cur.slope * (hi.alpha - lo.alpha) >= 0.0 {
                hi = lo;
            }
            lo = cur;
        }
    }
    Ok((lo.alpha > 0.0 && lo.value < f0).then_some(lo))
}
