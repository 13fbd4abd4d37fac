//! Globally adaptive Gauss–Legendre quadrature for complex integrands.
//!
//! Each panel carries a 15-point Gauss–Legendre value and an error estimate
//! (coarse rule against its bisection); the panel with the worst estimate is
//! split until the summed estimate meets the tolerance or the panel budget
//! runs out. Known interior breakpoints (kinks, jumps) can be supplied up
//! front so panels never straddle them.

use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gauss–Legendre order per panel.
const GL_ORDER: usize = 15;

/// Budget knobs for the adaptive engine.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    /// Hard cap on live panels before giving up.
    pub max_panels: usize,
    /// Uniform panels laid over the interval before adaptivity starts.
    pub initial_panels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            max_panels: 50_000,
            initial_panels: 8,
        }
    }
}

/// Value, summed error estimate, and the panel count that achieved them.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOutcome {
    pub value: Complex64,
    pub error_estimate: f64,
    pub panels: usize,
}

/// Nodes and weights on [-1, 1], generated once by Newton iteration on the
/// Legendre polynomial.
fn gl_rule() -> &'static [(f64, f64); GL_ORDER] {
    use std::sync::OnceLock;
    static RULE: OnceLock<[(f64, f64); GL_ORDER]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut rule = [(0.0, 0.0); GL_ORDER];
        for (i, slot) in rule.iter_mut().enumerate() {
            // Chebyshev-flavored initial guess, then Newton.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let step = p / dp;
                x -= step;
                if step.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            *slot = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        rule
    })
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

fn gl_panel(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> Complex64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, w) in gl_rule() {
        acc += f(mid + half * x) * w;
    }
    acc * half
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    /// Bisected value (the better of the two estimates).
    value: Complex64,
    err: f64,
}

impl Panel {
    fn evaluate(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> Panel {
        let coarse = gl_panel(f, a, b);
        let mid = 0.5 * (a + b);
        let fine = gl_panel(f, a, mid) + gl_panel(f, mid, b);
        Panel {
            a,
            b,
            value: fine,
            err: (coarse - fine).norm(),
        }
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Integrates `f` over `[a, b]` to estimated absolute error `tol`.
///
/// `breakpoints` inside the interval become panel boundaries immediately, so
/// adaptivity is spent on genuine surprises rather than known seams.
pub fn integrate_complex(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
    opts: &QuadratureOptions,
) -> Result<QuadratureOutcome> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Precondition(
            "quadrature tolerance must be positive".into(),
        ));
    }
    if !a.is_finite() || !b.is_finite() || b <= a {
        return Err(Error::Precondition(
            "integration interval must have positive width".into(),
        ));
    }

    let mut bounds: Vec<f64> = Vec::with_capacity(opts.initial_panels + breakpoints.len() + 2);
    let initial = opts.initial_panels.clamp(1, opts.max_panels.max(1));
    for i in 0..=initial {
        bounds.push(a + (b - a) * i as f64 / initial as f64);
    }
    bounds.extend(breakpoints.iter().copied().filter(|&x| x > a && x < b));
    bounds.sort_by(f64::total_cmp);
    bounds.dedup();

    let mut heap = BinaryHeap::new();
    let mut total_err = 0.0;
    for w in bounds.windows(2) {
        let panel = Panel::evaluate(f, w[0], w[1]);
        total_err += panel.err;
        heap.push(panel);
    }

    while total_err > tol {
        if heap.len() >= opts.max_panels {
            return Err(Error::QuadratureBudgetExceeded {
                achieved: total_err,
                tol,
            });
        }
        let worst = heap.pop().expect("heap holds at least the initial panels");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel narrower than the float grid; its estimate cannot improve.
            return Err(Error::QuadratureBudgetExceeded {
                achieved: total_err,
                tol,
            });
        }
        total_err -= worst.err;
        let left = Panel::evaluate(f, worst.a, mid);
        let right = Panel::evaluate(f, mid, worst.b);
        total_err += left.err + right.err;
        heap.push(left);
        heap.push(right);
    }

    // Summing in interval order keeps the result independent of heap layout.
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let count = panels.len();
    let mut value = Complex64::new(0.0, 0.0);
    let mut error_estimate = 0.0;
    for p in &panels {
        value += p.value;
        error_estimate += p.err;
    }
    Ok(QuadratureOutcome {
        value,
        error_estimate,
        panels: count,
    })
}

/// Real-valued convenience wrapper.
pub fn integrate_real(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
    opts: &QuadratureOptions,
) -> Result<(f64, f64)> {
    let outcome = integrate_complex(&|x| Complex64::new(f(x), 0.0), a, b, breakpoints, tol, opts)?;
    Ok((outcome.value.re, outcome.error_estimate))
}
