//! Iteration of the fractional-order system and asymptotic orbit detection.
//!
//! The direct form evaluates, with k from [`kernel_table`],
//!
//! ```text
//! x(t+1) = x(0) + sum_{j=0}^{t} k_{t-j} * (f(x(j)) - x(j))
//! ```
//!
//! summed in ascending j, full history, O(T^2). The split form carries the
//! even/odd subsequences p(t) = x(2t), q(t) = x(2t+1) through their own pair
//! of recurrences (the same sum regrouped by parity, with the cross term
//! f(p(t+1)) - p(t+1) inside q(t+1)).

use crate::kernel::{kernel_table, FractionalOrder};
use crate::maps::{EvalError, MapSpec, Parity};
use crate::write_f64;
use thiserror::Error;

/// Any state beyond this magnitude is declared divergent and the run stops.
pub const OVERFLOW_GUARD: f64 = 1e12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimulatorError {
    #[error("invalid simulation input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Map(#[from] EvalError),
}

/// A simulated orbit x(0..T). When the overflow guard trips or f produces a
/// non-finite value, `divergence` holds the offending index and the state
/// sequence is truncated there.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub alpha: FractionalOrder,
    pub states: Vec<f64>,
    pub divergence: Option<usize>,
}

impl Trajectory {
    /// CSV rendering with header `t,x`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x\n");
        for (t, x) in self.states.iter().enumerate() {
            out.push_str(&t.to_string());
            out.push(',');
            out.push_str(&write_f64(*x));
            out.push('\n');
        }
        out
    }
}

/// Even/odd split of an orbit: `p[t] = x(2t)`, `q[t] = x(2t+1)`.
#[derive(Debug, Clone)]
pub struct SplitTrajectory {
    pub alpha: FractionalOrder,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub divergence: Option<usize>,
}

impl SplitTrajectory {
    /// Recombines the subsequences into x(0..T).
    pub fn interleave(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.p.len() + self.q.len());
        for i in 0..self.p.len() {
            out.push(self.p[i]);
            if i < self.q.len() {
                out.push(self.q[i]);
            }
        }
        out
    }

    /// CSV rendering with header `t,p,q`; on an odd total length the final
    /// row has an empty q cell.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,p,q\n");
        for i in 0..self.p.len() {
            out.push_str(&i.to_string());
            out.push(',');
            out.push_str(&write_f64(self.p[i]));
            out.push(',');
            if i < self.q.len() {
                out.push_str(&write_f64(self.q[i]));
            }
            out.push('\n');
        }
        out
    }
}

fn check_inputs(x0: f64, steps: usize) -> Result<(), SimulatorError> {
    if !x0.is_finite() {
        return Err(SimulatorError::InvalidInput(format!(
            "x0 must be finite, got {x0}"
        )));
    }
    if steps == 0 {
        return Err(SimulatorError::InvalidInput(
            "steps must be at least 1".to_string(),
        ));
    }
    Ok(())
}

/// Guard outcome for a freshly computed state: `Ok(true)` means keep going.
fn admissible(x: f64) -> (bool, bool) {
    // (push it, continue)
    if !x.is_finite() {
        (false, false)
    } else if x.abs() > OVERFLOW_GUARD {
        (true, false)
    } else {
        (true, true)
    }
}

/// Full-history evaluation of the direct form. For `alpha = 1` the kernel is
/// identically 1 and the sum telescopes to the classical iteration; that case
/// runs as literally `x(t+1) = f(x(t))` so the reduction is bit-exact.
pub fn iterate_direct(
    map: &MapSpec,
    x0: f64,
    alpha: FractionalOrder,
    steps: usize,
) -> Result<Trajectory, SimulatorError> {
    check_inputs(x0, steps)?;
    let mut states = Vec::with_capacity(steps + 1);
    states.push(x0);
    let mut divergence = None;

    if alpha.is_classical() {
        let mut x = x0;
        for t in 0..steps {
            x = map.eval(x, Parity::of(t))?;
            let (push, go) = admissible(x);
            if push {
                states.push(x);
            }
            if !go {
                divergence = Some(t + 1);
                break;
            }
        }
        return Ok(Trajectory {
            alpha,
            states,
            divergence,
        });
    }

    let kernel = kernel_table(alpha, steps.saturating_sub(1));
    let k = kernel.coeffs();
    // deviations g(j) = f(x(j)) - x(j), evaluated once per state
    let mut g = Vec::with_capacity(steps);
    g.push(map.eval(x0, Parity::Even)? - x0);
    for t in 0..steps {
        let mut acc = x0;
        for (j, gj) in g.iter().enumerate() {
            acc += k[t - j] * gj;
        }
        let (push, go) = admissible(acc);
        if push {
            states.push(acc);
        }
        if !go {
            divergence = Some(t + 1);
            break;
        }
        if t + 1 < steps {
            g.push(map.eval(acc, Parity::of(t + 1))? - acc);
        }
    }
    Ok(Trajectory {
        alpha,
        states,
        divergence,
    })
}

/// Evaluates the even/odd split recurrences exactly as written. Produces the
/// same index range as [`iterate_direct`]: states 0..=steps distributed over
/// the two subsequences.
pub fn iterate_split(
    map: &MapSpec,
    x0: f64,
    alpha: FractionalOrder,
    steps: usize,
) -> Result<SplitTrajectory, SimulatorError> {
    check_inputs(x0, steps)?;
    let kernel = kernel_table(alpha, steps + 1);
    let k = kernel.coeffs();

    let mut p = vec![x0];
    let mut q = Vec::new();
    let mut gp = vec![map.eval(x0, Parity::Even)? - x0];
    let mut gq: Vec<f64> = Vec::new();
    let mut divergence = None;

    // q(0) = x(1) = x(0) + k_0 (f(x(0)) - x(0))
    if steps >= 1 {
        let q0 = x0 + k[0] * gp[0];
        let (push, go) = admissible(q0);
        if push {
            q.push(q0);
        }
        if !go {
            return Ok(SplitTrajectory {
                alpha,
                p,
                q,
                divergence: Some(1),
            });
        }
        gq.push(map.eval(q0, Parity::Odd)? - q0);
    }

    let mut t = 0usize;
    'outer: while 2 * t + 2 <= steps {
        // p(t+1) = x(0) + sum_k k_{2t+1-2k} gp(k) + sum_k k_{2t-2k} gq(k)
        let mut acc = x0;
        for (i, v) in gp.iter().enumerate() {
            acc += k[2 * t + 1 - 2 * i] * v;
        }
        for (i, v) in gq.iter().enumerate() {
            acc += k[2 * t - 2 * i] * v;
        }
        let (push, go) = admissible(acc);
        if push {
            p.push(acc);
        }
        if !go {
            divergence = Some(2 * t + 2);
            break 'outer;
        }
        gp.push(map.eval(acc, Parity::Even)? - acc);

        if 2 * t + 3 <= steps {
            // q(t+1) = x(0) + sum_k k_{2t+2-2k} gp(k) + (f(p(t+1)) - p(t+1))
            //          + sum_k k_{2t+1-2k} gq(k)
            let mut acc2 = x0;
            for (i, v) in gp[..gp.len() - 1].iter().enumerate() {
                acc2 += k[2 * t + 2 - 2 * i] * v;
            }
            acc2 += gp[gp.len() - 1];
            for (i, v) in gq.iter().enumerate() {
                acc2 += k[2 * t + 1 - 2 * i] * v;
            }
            let (push, go) = admissible(acc2);
            if push {
                q.push(acc2);
            }
            if !go {
                divergence = Some(2 * t + 3);
                break 'outer;
            }
            gq.push(map.eval(acc2, Parity::Odd)? - acc2);
        }
        t += 1;
    }

    Ok(SplitTrajectory {
        alpha,
        p,
        q,
        divergence,
    })
}

/// Tail classification of a simulated orbit.
#[derive(Debug, Clone, PartialEq)]
pub enum OrbitClass {
    /// Both parity tails settled onto the same value.
    FixedPoint { value: f64 },
    /// The parity tails settled onto two distinct values; `u > v`.
    PeriodTwo { u: f64, v: f64 },
    Divergent { index: usize },
    Undetermined,
}

/// Classifies the last `2*tail` states: each parity subsequence must have
/// spread below `tol` to count as settled; the tails are a period-2 orbit
/// when their means differ by more than `tol`, a fixed point otherwise.
pub fn classify_trajectory(traj: &Trajectory, tail: usize, tol: f64) -> OrbitClass {
    if let Some(index) = traj.divergence {
        return OrbitClass::Divergent { index };
    }
    assert!(tail >= 1, "tail must be at least 1");
    assert!(
        2 * tail < traj.states.len(),
        "tail ({}) must be shorter than half the trajectory ({})",
        tail,
        traj.states.len()
    );
    let n = traj.states.len();
    let window = &traj.states[n - 2 * tail..];
    let base = n - 2 * tail;
    let mut stats = [(f64::INFINITY, f64::NEG_INFINITY, 0.0f64, 0usize); 2];
    for (i, x) in window.iter().enumerate() {
        let s = &mut stats[(base + i) % 2];
        s.0 = s.0.min(*x);
        s.1 = s.1.max(*x);
        s.2 += x;
        s.3 += 1;
    }
    let spread = |s: &(f64, f64, f64, usize)| s.1 - s.0;
    let mean = |s: &(f64, f64, f64, usize)| s.2 / s.3 as f64;
    if spread(&stats[0]) >= tol || spread(&stats[1]) >= tol {
        return OrbitClass::Undetermined;
    }
    let (m_even, m_odd) = (mean(&stats[0]), mean(&stats[1]));
    if (m_even - m_odd).abs() > tol {
        OrbitClass::PeriodTwo {
            u: m_even.max(m_odd),
            v: m_even.min(m_odd),
        }
    } else {
        OrbitClass::FixedPoint {
            value: 0.5 * (m_even + m_odd),
        }
    }
}

/// Period-2 detector: `Some((u, v))` with `u > v` when the tail settled onto
/// two distinct values, `None` for fixed points, divergence, or an unsettled
/// tail.
pub fn detect_asymptotic_period2(
    traj: &Trajectory,
    tail: usize,
    tol: f64,
) -> Option<(f64, f64)> {
    match classify_trajectory(traj, tail, tol) {
        OrbitClass::PeriodTwo { u, v } => Some((u, v)),
        _ => None,
    }
}
