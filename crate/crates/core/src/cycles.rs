//! Asymptotic period-2 limit cycles of nonlinear fractional maps.
//!
//! No fractional map of order alpha < 1 has an exact period-2 orbit; the
//! asymptotic cycle values (u, v) instead satisfy
//!
//! ```text
//! f(u) = u + 2^(alpha-1) (v - u)
//! f(v) = v + 2^(alpha-1) (u - v)
//! ```
//!
//! which reduce to f(u) = v, f(v) = u at alpha = 1. A solution is a stable
//! limit cycle exactly when the pair (a, b) = (f'(u), f'(v)) lies inside the
//! stability region of the linearized two-periodic system.

use crate::kernel::FractionalOrder;
use crate::maps::{EvalError, MapSpec, Parity};
use crate::region::{build_region, RegionError, StabilityRegion};
use crate::simulator::{detect_asymptotic_period2, iterate_direct};
use crate::write_f64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CycleError {
    #[error("newton iteration did not converge within {0} steps")]
    NoConvergence(usize),
    #[error("converged to a degenerate root u = v = {0} (a fixed point, not a cycle)")]
    DegenerateRoot(f64),
    #[error("no real period-2 cycle: {0}")]
    NoRealCycle(String),
    #[error("singular jacobian in newton step")]
    SingularJacobian,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("map family does not support this operation: {0}")]
    UnsupportedFamily(String),
    #[error("no parameter window found")]
    WindowNotFound,
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Map(#[from] EvalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleVerdict {
    Stable,
    Unstable,
    /// u = v within 1e-8: a fixed point masquerading as a cycle.
    Degenerate,
}

impl CycleVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            CycleVerdict::Stable => "stable",
            CycleVerdict::Unstable => "unstable",
            CycleVerdict::Degenerate => "degenerate",
        }
    }
}

/// A solved asymptotic period-2 cycle, reported with u > v. The residuals of
/// the cycle conditions at (u, v) are below 1e-10 by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodTwoCycle {
    pub u: f64,
    pub v: f64,
    /// a = f'(u)
    pub a: f64,
    /// b = f'(v)
    pub b: f64,
    pub alpha: FractionalOrder,
    pub verdict: CycleVerdict,
}

const DEGENERACY_EPS: f64 = 1e-8;

/// Residuals of the two cycle conditions at (u, v).
pub fn cycle_residual(
    map: &MapSpec,
    u: f64,
    v: f64,
    alpha: FractionalOrder,
) -> Result<(f64, f64), EvalError> {
    let h = 2f64.powf(alpha.value() - 1.0);
    let fu = map.eval(u, Parity::Even)?;
    let fv = map.eval(v, Parity::Odd)?;
    Ok((fu - u - h * (v - u), fv - v - h * (u - v)))
}

fn classify_pair(
    map: &MapSpec,
    u: f64,
    v: f64,
    alpha: FractionalOrder,
    region: &StabilityRegion,
) -> Result<PeriodTwoCycle, CycleError> {
    let (u, v) = if u >= v { (u, v) } else { (v, u) };
    let a = map.eval_with_derivative(u, Parity::Even)?.derivative;
    let b = map.eval_with_derivative(v, Parity::Odd)?.derivative;
    let verdict = if (u - v).abs() < DEGENERACY_EPS {
        CycleVerdict::Degenerate
    } else if region.contains(a, b) {
        CycleVerdict::Stable
    } else {
        CycleVerdict::Unstable
    };
    Ok(PeriodTwoCycle {
        u,
        v,
        a,
        b,
        alpha,
        verdict,
    })
}

const NEWTON_MAX_ITER: usize = 100;

/// Damped Newton iteration on the cycle-condition residuals. Rejects
/// degenerate roots (u = v within 1e-8). Region membership fills the verdict.
pub fn solve_period2(
    map: &MapSpec,
    alpha: FractionalOrder,
    guess: (f64, f64),
) -> Result<PeriodTwoCycle, CycleError> {
    let region = build_region(alpha, 512)?;
    solve_period2_in(map, alpha, guess, &region)
}

/// As [`solve_period2`], but reusing a prebuilt region (for scans).
pub fn solve_period2_in(
    map: &MapSpec,
    alpha: FractionalOrder,
    guess: (f64, f64),
    region: &StabilityRegion,
) -> Result<PeriodTwoCycle, CycleError> {
    let (u, v) = newton_cycle_root(map, alpha, guess)?;
    if (u - v).abs() < DEGENERACY_EPS {
        return Err(CycleError::DegenerateRoot(0.5 * (u + v)));
    }
    classify_pair(map, u, v, alpha, region)
}

/// Newton core: returns the raw root without degeneracy filtering.
fn newton_cycle_root(
    map: &MapSpec,
    alpha: FractionalOrder,
    guess: (f64, f64),
) -> Result<(f64, f64), CycleError> {
    if !guess.0.is_finite() || !guess.1.is_finite() {
        return Err(CycleError::InvalidParameter(
            "guess must be finite".to_string(),
        ));
    }
    let h = 2f64.powf(alpha.value() - 1.0);
    let (mut u, mut v) = guess;
    let norm = |r: (f64, f64)| r.0.hypot(r.1);
    let mut r = cycle_residual(map, u, v, alpha)?;
    for _ in 0..NEWTON_MAX_ITER {
        if norm(r) < 1e-12 {
            return Ok((u, v));
        }
        let ju = map.eval_with_derivative(u, Parity::Even)?.derivative - 1.0 + h;
        let jv = map.eval_with_derivative(v, Parity::Odd)?.derivative - 1.0 + h;
        // J = [[ju, -h], [-h, jv]]
        let det = ju * jv - h * h;
        if det == 0.0 || !det.is_finite() {
            return Err(CycleError::SingularJacobian);
        }
        let du = (r.0 * jv + r.1 * h) / det;
        let dv = (ju * r.1 + h * r.0) / det;
        if du.hypot(dv) < 1e-14 {
            return Ok((u, v));
        }
        // backtracking damping on the residual norm
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let (nu, nv) = (u - lambda * du, v - lambda * dv);
            match cycle_residual(map, nu, nv, alpha) {
                Ok(nr) if nr.0.is_finite() && nr.1.is_finite() && norm(nr) < norm(r) => {
                    u = nu;
                    v = nv;
                    r = nr;
                    accepted = true;
                    break;
                }
                _ => lambda *= 0.5,
            }
        }
        if !accepted {
            return Err(CycleError::NoConvergence(NEWTON_MAX_ITER));
        }
    }
    if norm(r) < 1e-12 {
        Ok((u, v))
    } else {
        Err(CycleError::NoConvergence(NEWTON_MAX_ITER))
    }
}

/// Closed-form cycle of the logistic family: real for lambda outside
/// [1 - 2^alpha, 1 + 2^alpha], with the paper's window opening at
/// lambda = 1 + 2^alpha. Returns u >= v; equal at the double root.
pub fn logistic_cycle_closed_form(
    lambda: f64,
    alpha: FractionalOrder,
) -> Result<(f64, f64), CycleError> {
    if lambda == 0.0 {
        return Err(CycleError::InvalidParameter("lambda must be nonzero".into()));
    }
    let p = 2f64.powf(alpha.value());
    let radicand = (lambda - (1.0 - p)) * (lambda - (1.0 + p));
    if radicand < 0.0 {
        return Err(CycleError::NoRealCycle(format!(
            "logistic cycle requires lambda > {} (or lambda < {}), got {lambda}",
            1.0 + p,
            1.0 - p
        )));
    }
    let root = radicand.sqrt();
    let u = ((p - 1.0) + lambda + root) / (2.0 * lambda);
    let v = ((p - 1.0) + lambda - root) / (2.0 * lambda);
    Ok(if u >= v { (u, v) } else { (v, u) })
}

/// Closed-form cycles of the cubic family f(x) = beta x (6 - x^2), beta < 0:
/// the symmetric pair (u0, -u0) and the asymmetric pair (u1, v1) with its
/// mirror (-u1, -v1). Branches with negative radicands are omitted; each
/// returned pair is normalized to u > v.
pub fn cubic_cycle_closed_form(beta: f64, alpha: FractionalOrder) -> Vec<(f64, f64)> {
    assert!(beta < 0.0, "cubic cycle closed form requires beta < 0");
    let al = alpha.value();
    let p = 2f64.powf(al);
    let mut out = Vec::new();

    let u0_sq = (6.0 * beta + p - 1.0) / beta;
    if u0_sq >= 0.0 {
        let u0 = u0_sq.sqrt();
        out.push((u0, -u0));
    }

    let z_rad = 4.0 - 2f64.powf(2.0 + al) - 3.0 * 4f64.powf(al)
        + 24.0 * (p - 2.0) * beta
        + 144.0 * beta * beta;
    if z_rad >= 0.0 {
        let z = -z_rad.sqrt() / beta;
        let u1_sq = 12.0 + (p - 2.0) / beta - z;
        if u1_sq >= 0.0 {
            let u1 = 0.5 * u1_sq.sqrt();
            let v1 = 2f64.powf(-1.0 - al) * u1 * ((p - 2.0) * beta + (12.0 + z) * beta * beta)
                / beta;
            let pair = if u1 >= v1 { (u1, v1) } else { (v1, u1) };
            out.push(pair);
            let mirror = if -v1 >= -u1 { (-v1, -u1) } else { (-u1, -v1) };
            out.push(mirror);
        }
    }
    out
}

/// The locus families of the paper's examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocusFamily {
    /// L1: logistic cycle locus (a straight line, a + b = 2(1 - 2^alpha)).
    Logistic,
    /// L2: cubic symmetric branch (u0, -u0); locus on the diagonal a = b.
    CubicSymmetric,
    /// L3: cubic asymmetric branch (u1, v1).
    CubicAsymmetric,
    /// L4: gauss map locus, solved numerically.
    Gauss,
}

impl LocusFamily {
    pub fn label(self) -> &'static str {
        match self {
            LocusFamily::Logistic => "L1",
            LocusFamily::CubicSymmetric => "L2",
            LocusFamily::CubicAsymmetric => "L3",
            LocusFamily::Gauss => "L4",
        }
    }

    fn map_at(self, param: f64) -> MapSpec {
        match self {
            LocusFamily::Logistic => MapSpec::logistic(param),
            LocusFamily::CubicSymmetric | LocusFamily::CubicAsymmetric => {
                MapSpec::cubic(param)
            }
            LocusFamily::Gauss => MapSpec::gauss(param),
        }
    }
}

/// One solved point of a locus; `cycle` is `None` where no real
/// (non-degenerate) cycle exists at that parameter.
#[derive(Debug, Clone, Copy)]
pub struct LocusPoint {
    pub parameter: f64,
    pub cycle: Option<PeriodTwoCycle>,
}

/// The curve (a, b) = (f'(u), f'(v)) traced by a cycle branch over a
/// parameter grid.
#[derive(Debug, Clone)]
pub struct ParametricLocus {
    pub family: LocusFamily,
    pub points: Vec<LocusPoint>,
}

impl ParametricLocus {
    /// CSV rendering with header `param,u,v,a,b,inside`; parameters without
    /// a cycle keep their row with empty cells (the recorded gap).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("param,u,v,a,b,inside\n");
        for p in &self.points {
            out.push_str(&write_f64(p.parameter));
            match &p.cycle {
                Some(c) => {
                    for v in [c.u, c.v, c.a, c.b] {
                        out.push(',');
                        out.push_str(&write_f64(v));
                    }
                    out.push(',');
                    out.push_str(if c.verdict == CycleVerdict::Stable {
                        "true"
                    } else {
                        "false"
                    });
                }
                None => out.push_str(",,,,,"),
            }
            out.push('\n');
        }
        out
    }
}

fn closed_form_pair(
    family: LocusFamily,
    param: f64,
    alpha: FractionalOrder,
) -> Option<(f64, f64)> {
    match family {
        LocusFamily::Logistic => logistic_cycle_closed_form(param, alpha).ok(),
        LocusFamily::CubicSymmetric => {
            if param >= 0.0 {
                return None;
            }
            let p = 2f64.powf(alpha.value());
            let u0_sq = (6.0 * param + p - 1.0) / param;
            (u0_sq >= 0.0).then(|| {
                let u0 = u0_sq.sqrt();
                (u0, -u0)
            })
        }
        LocusFamily::CubicAsymmetric => {
            if param >= 0.0 {
                return None;
            }
            cubic_cycle_closed_form(param, alpha)
                .into_iter()
                .nth(if (6.0 * param + 2f64.powf(alpha.value()) - 1.0) / param >= 0.0 {
                    1
                } else {
                    0
                })
        }
        LocusFamily::Gauss => None,
    }
}

/// Solves a gauss-map cycle at one parameter. Seeds tried in order: the
/// continuation seed, a long simulation tail, and small-amplitude splittings
/// around the map's fixed point (the branch that carries the cycle near the
/// upper window edge detaches from the fixed point).
fn solve_gauss_point(
    map: &MapSpec,
    alpha: FractionalOrder,
    seed: Option<(f64, f64)>,
) -> Option<(f64, f64)> {
    let try_newton = |g: (f64, f64)| -> Option<(f64, f64)> {
        match newton_cycle_root(map, alpha, g) {
            Ok((u, v)) if (u - v).abs() >= DEGENERACY_EPS => {
                Some(if u >= v { (u, v) } else { (v, u) })
            }
            _ => None,
        }
    };
    if let Some(g) = seed {
        if let Some(root) = try_newton(g) {
            return Some(root);
        }
    }
    if let Ok(traj) = iterate_direct(map, 0.2, alpha, 1200) {
        if traj.divergence.is_none() {
            if let Some(pair) = detect_asymptotic_period2(&traj, 60, 5e-3) {
                if let Some(root) = try_newton(pair) {
                    return Some(root);
                }
            }
        }
    }
    if let Some(x_star) = map_fixed_point(map) {
        for d in [0.1, 0.25, 0.5] {
            if let Some(root) = try_newton((x_star + d, x_star - d)) {
                return Some(root);
            }
        }
    }
    None
}

/// 1-d Newton for a fixed point f(x) = x, tried from a few starts.
fn map_fixed_point(map: &MapSpec) -> Option<f64> {
    for start in [0.2, 0.6, 1.0, -0.5] {
        let mut x = start;
        for _ in 0..60 {
            let d = match map.eval_with_derivative(x, Parity::Even) {
                Ok(d) => d,
                Err(_) => break,
            };
            let denom = d.derivative - 1.0;
            if denom == 0.0 || !denom.is_finite() {
                break;
            }
            let step = (d.value - x) / denom;
            x -= step;
            if step.abs() < 1e-13 {
                if x.is_finite() {
                    return Some(x);
                }
                break;
            }
        }
    }
    None
}

/// Traces the locus of a cycle branch over `grid`. Closed forms are used for
/// the logistic and cubic branches; the gauss branch is solved by Newton
/// continuation along the grid.
pub fn locus(
    family: LocusFamily,
    alpha: FractionalOrder,
    grid: &[f64],
) -> Result<ParametricLocus, CycleError> {
    let region = build_region(alpha, 512)?;
    locus_in(family, alpha, grid, &region)
}

/// As [`locus`], reusing a prebuilt region.
pub fn locus_in(
    family: LocusFamily,
    alpha: FractionalOrder,
    grid: &[f64],
    region: &StabilityRegion,
) -> Result<ParametricLocus, CycleError> {
    let mut points = Vec::with_capacity(grid.len());
    let mut seed: Option<(f64, f64)> = None;
    for &param in grid {
        let map = family.map_at(param);
        let pair = match family {
            LocusFamily::Gauss => {
                let root = solve_gauss_point(&map, alpha, seed);
                seed = root.or(seed);
                root
            }
            _ => closed_form_pair(family, param, alpha),
        };
        let cycle = match pair {
            Some((u, v)) if (u - v).abs() >= DEGENERACY_EPS => {
                Some(classify_pair(&map, u, v, alpha, region)?)
            }
            _ => None,
        };
        points.push(LocusPoint { parameter: param, cycle });
    }
    Ok(ParametricLocus {
        family,
        points,
    })
}

/// The three cubic thresholds: `beta1 = (1 - 2^alpha)/6` (upper window edge),
/// `beta0 = (2 - 3*2^alpha)/12` (where the symmetric branch exits the
/// region), and the numerically determined `beta2` (lower window edge, the
/// L3/Gamma2 crossing).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicThresholds {
    pub beta0: f64,
    pub beta1: f64,
    pub beta2: f64,
}

pub fn cubic_thresholds(alpha: FractionalOrder) -> Result<CubicThresholds, CycleError> {
    let region = build_region(alpha, 512)?;
    cubic_thresholds_in(alpha, &region)
}

fn cubic_thresholds_in(
    alpha: FractionalOrder,
    region: &StabilityRegion,
) -> Result<CubicThresholds, CycleError> {
    let p = 2f64.powf(alpha.value());
    let beta1 = (1.0 - p) / 6.0;
    let beta0 = (2.0 - 3.0 * p) / 12.0;

    // beta2: where the asymmetric branch's (a, b) leaves the region, found
    // by bisection on membership along decreasing beta from beta0.
    let inside_at = |beta: f64| -> bool {
        closed_form_pair(LocusFamily::CubicAsymmetric, beta, alpha)
            .map(|(u, v)| {
                let map = MapSpec::cubic(beta);
                let a = map
                    .eval_with_derivative(u, Parity::Even)
                    .map(|d| d.derivative)
                    .unwrap_or(f64::NAN);
                let b = map
                    .eval_with_derivative(v, Parity::Odd)
                    .map(|d| d.derivative)
                    .unwrap_or(f64::NAN);
                region.contains(a, b)
            })
            .unwrap_or(false)
    };

    let step = 1e-3;
    let mut hi = beta0 - step; // inside end of the bracket
    if !inside_at(hi) {
        // the branch opens slightly below beta0; walk down to find it
        let mut found = false;
        for _ in 0..200 {
            hi -= step;
            if inside_at(hi) {
                found = true;
                break;
            }
        }
        if !found {
            return Err(CycleError::WindowNotFound);
        }
    }
    let mut lo = hi;
    let mut found = false;
    for _ in 0..2000 {
        lo -= step;
        if !inside_at(lo) {
            found = true;
            break;
        }
        hi = lo;
    }
    if !found {
        return Err(CycleError::WindowNotFound);
    }
    // lo outside, hi inside; bisect to 1e-6
    for _ in 0..60 {
        if hi - lo < 1e-6 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if inside_at(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(CubicThresholds {
        beta0,
        beta1,
        beta2: 0.5 * (lo + hi),
    })
}

/// The map families with a parameter window operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapFamily {
    Logistic,
    Cubic,
    Gauss,
}

/// Parameter interval on which a stable period-2 limit cycle exists:
/// closed forms for the logistic family, closed form + numeric lower edge
/// for the cubic family, and a numeric membership scan with bisection
/// refinement for the gauss family.
pub fn parameter_window(
    family: MapFamily,
    alpha: FractionalOrder,
) -> Result<(f64, f64), CycleError> {
    if alpha.is_classical() {
        return Err(RegionError::ClassicalOrder.into());
    }
    let al = alpha.value();
    match family {
        MapFamily::Logistic => {
            let lo = 1.0 + 2f64.powf(al);
            let hi = 1.0
                + (2f64.powf(al) + 2f64.powf(1.0 + 2.0 * al)
                    - 2f64.powf(1.0 + 1.5 * al) * (al * PI_4).sin())
                .sqrt();
            Ok((lo, hi))
        }
        MapFamily::Cubic => {
            let t = cubic_thresholds(alpha)?;
            Ok((t.beta2, t.beta1))
        }
        MapFamily::Gauss => gauss_window(alpha),
    }
}

const PI_4: f64 = std::f64::consts::FRAC_PI_4;

/// Stable-cycle predicate for the gauss map at one parameter, using Newton
/// continuation from `seed` (with simulation fallback) plus membership.
fn gauss_stable_at(
    beta: f64,
    alpha: FractionalOrder,
    region: &StabilityRegion,
    seed: Option<(f64, f64)>,
) -> Option<(f64, f64)> {
    let map = MapSpec::gauss(beta);
    let root = solve_gauss_point(&map, alpha, seed)?;
    let cycle = classify_pair(&map, root.0, root.1, alpha, region).ok()?;
    (cycle.verdict == CycleVerdict::Stable).then_some(root)
}

fn gauss_window(alpha: FractionalOrder) -> Result<(f64, f64), CycleError> {
    let region = build_region(alpha, 512)?;
    let step = 0.01;
    let grid: Vec<f64> = (0..=120).map(|i| -0.3 + step * i as f64).collect();

    // first pass: longest run of parameters with a stable cycle
    let mut seed = None;
    let mut flags = Vec::with_capacity(grid.len());
    for &b in &grid {
        let got = gauss_stable_at(b, alpha, &region, seed);
        seed = got.or(seed);
        flags.push(got.is_some());
    }
    let mut best: Option<(usize, usize)> = None;
    let mut run_start = None;
    for (i, &f) in flags.iter().enumerate() {
        match (f, run_start) {
            (true, None) => run_start = Some(i),
            (false, Some(s)) => {
                if best.map_or(true, |(bs, be)| i - s > be - bs) {
                    best = Some((s, i - 1));
                }
                run_start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = run_start {
        if best.map_or(true, |(bs, be)| grid.len() - s > be - bs + 1) {
            best = Some((s, grid.len() - 1));
        }
    }
    let (s, e) = best.ok_or(CycleError::WindowNotFound)?;

    // bisection refinement at both edges, reseeding from the interior
    let refine = |mut out_param: f64, mut in_param: f64, seed: (f64, f64)| -> f64 {
        let mut seed = seed;
        for _ in 0..30 {
            if (out_param - in_param).abs() < 1e-4 {
                break;
            }
            let mid = 0.5 * (out_param + in_param);
            match gauss_stable_at(mid, alpha, &region, Some(seed)) {
                Some(root) => {
                    in_param = mid;
                    seed = root;
                }
                None => out_param = mid,
            }
        }
        0.5 * (out_param + in_param)
    };

    let seed_lo = gauss_stable_at(grid[s], alpha, &region, None)
        .ok_or(CycleError::WindowNotFound)?;
    let seed_hi = gauss_stable_at(grid[e], alpha, &region, None)
        .ok_or(CycleError::WindowNotFound)?;
    let lo = if s == 0 {
        grid[s]
    } else {
        refine(grid[s - 1], grid[s], seed_lo)
    };
    let hi = if e == grid.len() - 1 {
        grid[e]
    } else {
        refine(grid[e + 1], grid[e], seed_hi)
    };
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(a: f64) -> FractionalOrder {
        FractionalOrder::new(a).unwrap()
    }

    #[test]
    fn logistic_closed_form_spec_values() {
        let (u, v) = logistic_cycle_closed_form(2.8, order(0.4)).unwrap();
        assert!((u - 0.775679).abs() < 1e-6, "u = {u}");
        assert!((v - 0.338431).abs() < 1e-6, "v = {v}");
        // defining property
        let (r1, r2) = cycle_residual(&MapSpec::logistic(2.8), u, v, order(0.4)).unwrap();
        assert!(r1.abs() < 1e-12 && r2.abs() < 1e-12);
    }

    #[test]
    fn logistic_closed_form_edges() {
        let alpha = order(0.4);
        let double = 1.0 + 2f64.powf(0.4);
        let (u, v) = logistic_cycle_closed_form(double, alpha).unwrap();
        assert_eq!(u, v, "double root at the window edge");
        assert!(matches!(
            logistic_cycle_closed_form(2.0, alpha),
            Err(CycleError::NoRealCycle(_))
        ));
        assert!(logistic_cycle_closed_form(0.0, alpha).is_err());
    }

    #[test]
    fn classical_residuals_reduce() {
        // alpha = 1: r1 = f(u) - v, r2 = f(v) - u
        let map = MapSpec::logistic(3.2);
        let alpha = order(1.0);
        let (u, v) = (0.8, 0.5);
        let (r1, r2) = cycle_residual(&map, u, v, alpha).unwrap();
        let fu = map.eval(u, Parity::Even).unwrap();
        let fv = map.eval(v, Parity::Odd).unwrap();
        assert!((r1 - (fu - v)).abs() < 1e-15);
        assert!((r2 - (fv - u)).abs() < 1e-15);
    }

    #[test]
    fn fixed_point_is_residual_root() {
        // u = v = fixed point of the logistic map: f(x*) = x*
        let map = MapSpec::logistic(2.0);
        let x_star = 0.5;
        let (r1, r2) = cycle_residual(&map, x_star, x_star, order(0.4)).unwrap();
        assert_eq!((r1, r2), (0.0, 0.0));
    }

    #[test]
    fn newton_matches_logistic_closed_form() {
        let alpha = order(0.4);
        let map = MapSpec::logistic(2.8);
        let cycle = solve_period2(&map, alpha, (0.8, 0.3)).unwrap();
        let (u, v) = logistic_cycle_closed_form(2.8, alpha).unwrap();
        assert!((cycle.u - u).abs() < 1e-9);
        assert!((cycle.v - v).abs() < 1e-9);
        assert_eq!(cycle.verdict, CycleVerdict::Stable);
    }

    #[test]
    fn newton_rejects_degenerate_root() {
        let alpha = order(0.4);
        let map = MapSpec::logistic(2.0);
        let err = solve_period2(&map, alpha, (0.51, 0.49)).unwrap_err();
        assert!(
            matches!(err, CycleError::DegenerateRoot(_)),
            "got {err:?}"
        );
    }

    #[test]
    fn cubic_closed_forms_match_paper_values() {
        let alpha = order(0.7);
        let cycles = cubic_cycle_closed_form(-0.20, alpha);
        assert!(cycles
            .iter()
            .any(|&(u, v)| (u - 1.696312).abs() < 1e-5 && (v + 1.696312).abs() < 1e-5));
        let cycles = cubic_cycle_closed_form(-0.26, alpha);
        assert!(
            cycles
                .iter()
                .any(|&(u, v)| (u - 1.45647).abs() < 1e-5 && (v + 2.14495).abs() < 1e-5),
            "cycles = {cycles:?}"
        );
        // coexistence at beta = -0.24: both asymmetric pairs real
        let cycles = cubic_cycle_closed_form(-0.24, alpha);
        assert!(cycles.len() == 3, "cycles = {cycles:?}");
        // every returned pair satisfies the cycle conditions
        for &(u, v) in &cycles {
            let (r1, r2) =
                cycle_residual(&MapSpec::cubic(-0.24), u, v, alpha).unwrap();
            assert!(r1.abs() < 1e-10 && r2.abs() < 1e-10);
        }
    }

    #[test]
    fn cubic_asymmetric_branch_absent_in_symmetric_range() {
        let alpha = order(0.7);
        let cycles = cubic_cycle_closed_form(-0.20, alpha);
        assert_eq!(cycles.len(), 1, "only the symmetric pair at beta=-0.20");
    }

    #[test]
    fn cubic_locus_l2_on_diagonal_line() {
        // a0 = b0 = -12 beta - 3 (2^alpha - 1) along the symmetric branch
        let alpha = order(0.7);
        let grid: Vec<f64> = (0..30).map(|i| -0.23 + 0.004 * i as f64).collect();
        let locus = locus(LocusFamily::CubicSymmetric, alpha, &grid).unwrap();
        for p in &locus.points {
            if let Some(c) = p.cycle {
                let want = -12.0 * p.parameter - 3.0 * (2f64.powf(0.7) - 1.0);
                assert!((c.a - want).abs() < 1e-9, "a = {} want {want}", c.a);
                assert!((c.b - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn cubic_asymmetric_locus_satisfies_l3_identity() {
        // 4(a^2+b^2) + (9*2^alpha - 18)(a+b) + 10ab + 18 - 9*2^(1+alpha) = 0
        let alpha = order(0.7);
        let al = 0.7;
        let grid = [-0.26, -0.25, -0.245];
        let locus = locus(LocusFamily::CubicAsymmetric, alpha, &grid).unwrap();
        for p in &locus.points {
            let c = p.cycle.expect("asymmetric branch exists here");
            let (a, b) = (c.a, c.b);
            let res = 4.0 * (a * a + b * b)
                + (9.0 * 2f64.powf(al) - 18.0) * (a + b)
                + 10.0 * a * b
                + 18.0
                - 9.0 * 2f64.powf(1.0 + al);
            assert!(res.abs() < 1e-9, "L3 residual {res}");
        }
    }

    #[test]
    fn logistic_locus_is_a_line() {
        let alpha = order(0.4);
        let grid: Vec<f64> = (0..40).map(|i| 2.32 + 0.02 * i as f64).collect();
        let locus = locus(LocusFamily::Logistic, alpha, &grid).unwrap();
        let want = 2.0 * (1.0 - 2f64.powf(0.4));
        for p in &locus.points {
            if let Some(c) = p.cycle {
                assert!((c.a + c.b - want).abs() < 1e-9, "a+b = {}", c.a + c.b);
            }
        }
    }

    #[test]
    fn logistic_window_closed_form() {
        let (lo, hi) = parameter_window(MapFamily::Logistic, order(0.4)).unwrap();
        assert!((lo - 2.31951).abs() < 1e-4, "lo = {lo}");
        assert!((hi - 2.96595).abs() < 1e-4, "hi = {hi}");
    }

    #[test]
    fn cubic_thresholds_match_paper() {
        let t = cubic_thresholds(order(0.7)).unwrap();
        assert!((t.beta0 + 0.23946).abs() < 1e-5, "beta0 = {}", t.beta0);
        assert!((t.beta1 + 0.104084).abs() < 1e-5, "beta1 = {}", t.beta1);
        assert!((t.beta2 + 0.277584).abs() < 1e-4, "beta2 = {}", t.beta2);
    }

    #[test]
    fn eq18_and_eq20_identities_at_root() {
        let alpha = order(0.4);
        let map = MapSpec::logistic(2.8);
        let cycle = solve_period2(&map, alpha, (0.8, 0.3)).unwrap();
        let (u, v) = (cycle.u, cycle.v);
        let fu = map.eval(u, Parity::Even).unwrap();
        let fv = map.eval(v, Parity::Odd).unwrap();
        // u - v = -[(f(u)-u) - (f(v)-v)] 2^-alpha
        let lhs = u - v;
        let rhs = -((fu - u) - (fv - v)) * 2f64.powf(-0.4);
        assert!((lhs - rhs).abs() < 1e-10);
        // u + v = f(u) + f(v)
        assert!((u + v - (fu + fv)).abs() < 1e-10);
    }

    #[test]
    fn window_edges_are_sharp_logistic() {
        let alpha = order(0.4);
        let region = build_region(alpha, 512).unwrap();
        let (lo, hi) = parameter_window(MapFamily::Logistic, alpha).unwrap();
        let eps = 1e-3;
        let stable_at = |lambda: f64| -> Option<bool> {
            let (u, v) = logistic_cycle_closed_form(lambda, alpha).ok()?;
            if (u - v).abs() < DEGENERACY_EPS {
                return None;
            }
            let map = MapSpec::logistic(lambda);
            let c = classify_pair(&map, u, v, alpha, &region).unwrap();
            Some(c.verdict == CycleVerdict::Stable)
        };
        assert_eq!(stable_at(lo + eps), Some(true));
        assert_eq!(stable_at(hi - eps), Some(true));
        assert_ne!(stable_at(lo - eps), Some(true));
        assert_ne!(stable_at(hi + eps), Some(true));
    }
}
