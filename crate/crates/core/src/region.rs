//! Stability region of the two-periodic linear fractional map in the
//! (a, b)-plane.
//!
//! The boundary consists of three curve families obtained by pushing the
//! characteristic roots onto the unit circle:
//!
//! * `Gamma1` (t = 0): `(a - c1)(b - c1) = 4^(alpha-1)` with
//!   `c1 = 1 - 2^(alpha-1)`,
//! * `Gamma2` (t = pi): `(a - c2)(b - c2) = -2^alpha cos^2(alpha pi / 4)`
//!   with `c2 = 1 - 2^(alpha/2) sin(alpha pi / 4)`,
//! * `Gamma3` (t in (0, 2pi)): a trigonometric parametric arc.
//!
//! For 0 < alpha < 1 the curves intersect pairwise; the region inside all
//! three is bounded and is assembled here as an explicit polygon: the Gamma1
//! arc through (1, 1), two Gamma2 tongue arcs, and the Gamma3 arc closing
//! through the third quadrant. The Gamma3 parametrization is degenerate at
//! t = pi (both branches of a 0/0 limit, one per side; the limits are the
//! Gamma2/Gamma3 corner points) and at t -> 0 / 2pi, where it approaches the
//! diagonal point (1 - 2^alpha, 1 - 2^alpha) at the slow rate
//! t^((1-alpha)/2); the assembly treats both limits as explicit vertices.

use crate::kernel::FractionalOrder;
use crate::maps::MapSpec;
use crate::simulator::iterate_direct;
use crate::write_f64;
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegionError {
    #[error("the boundary curves do not intersect for alpha = 1; the region requires 0 < alpha < 1")]
    ClassicalOrder,
    #[error("gamma1 is undefined at its asymptote a = {0}")]
    Gamma1Asymptote(f64),
    #[error("gamma2 is undefined at its asymptote a = {0}")]
    Gamma2Asymptote(f64),
    #[error("gamma3 parameter t = {t} is degenerate: {reason}")]
    DegenerateParameter { t: f64, reason: String },
    #[error("gamma3 parameter t = {0} outside [0, 2pi]")]
    ParameterOutOfRange(f64),
    #[error("characteristic function has a branch-point singularity at z = 1")]
    CharEqSingularAtOne,
    #[error("characteristic function requires z != 0")]
    CharEqZero,
    #[error("need at least 16 samples per arc, got {0}")]
    TooFewSamples(usize),
}

/// Half-width of the guard band around the hyperbola asymptotes; queries
/// closer than this are reported as undefined rather than returning huge
/// values of no geometric meaning.
const ASYMPTOTE_BAND: f64 = 1e-6;

/// Half-width of the band around t = pi inside which gamma3 evaluates to the
/// corner-point closed forms (the raw formula is 0/0 there).
const GAMMA3_PI_BAND: f64 = 1e-5;

fn c1(alpha: f64) -> f64 {
    1.0 - 2f64.powf(alpha - 1.0)
}

fn c2(alpha: f64) -> f64 {
    1.0 - 2f64.powf(alpha / 2.0) * (alpha * PI / 4.0).sin()
}

/// b-coordinate of the Gamma1 boundary at abscissa `a`:
/// `(a - c1)(b - c1) = 4^(alpha-1)`.
pub fn gamma1(alpha: FractionalOrder, a: f64) -> Result<f64, RegionError> {
    let al = alpha.value();
    let c = c1(al);
    if (a - c).abs() <= ASYMPTOTE_BAND {
        return Err(RegionError::Gamma1Asymptote(c));
    }
    Ok(c + 4f64.powf(al - 1.0) / (a - c))
}

/// b-coordinate of the Gamma2 boundary at abscissa `a`:
/// `(a - c2)(b - c2) = -2^alpha cos^2(alpha pi / 4)`.
pub fn gamma2(alpha: FractionalOrder, a: f64) -> Result<f64, RegionError> {
    let al = alpha.value();
    let c = c2(al);
    if (a - c).abs() <= ASYMPTOTE_BAND {
        return Err(RegionError::Gamma2Asymptote(c));
    }
    let rhs = -2f64.powf(al) * (al * PI / 4.0).cos().powi(2);
    Ok(c + rhs / (a - c))
}

/// The two Gamma1/Gamma2 intersection points and the two Gamma2/Gamma3
/// intersection points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Corners {
    /// Gamma1/Gamma2 corner above the diagonal (first quadrant, b1 > a1).
    pub p1: (f64, f64),
    /// Its mirror image below the diagonal.
    pub p2: (f64, f64),
    /// Gamma2/Gamma3 corner (a3 < 0 < b3).
    pub p3: (f64, f64),
    /// Its mirror image (b3, a3).
    pub p4: (f64, f64),
}

/// Closed forms of the four boundary-curve intersection points.
/// Fails for alpha = 1, where Gamma1 and Gamma2 do not intersect.
pub fn curve_intersections(alpha: FractionalOrder) -> Result<Corners, RegionError> {
    let al = alpha.value();
    if alpha.is_classical() {
        return Err(RegionError::ClassicalOrder);
    }
    let s = (al * PI / 4.0).sin();
    let co = (al * PI / 4.0).cos();
    let root = (2f64.powf(al) + 4f64.powf(al) - 2f64.powf(1.0 + 1.5 * al) * s).sqrt();

    let a1 = (2f64.powf(1.0 + al / 2.0) - 2.0 * s - root) / (2f64.powf(al / 2.0) - 2.0 * s);
    let b1 = (2f64.powf(1.0 + al / 2.0) - 2f64.powf(1.0 + al) * s
        - (2.0 - 2f64.powf(al)) * root)
        / (2f64.powf(1.0 + al / 2.0) + 2f64.powf(1.5 * al)
            - 2f64.powf(1.0 + al) * s
            - 2.0 * root);
    let a2 = (2f64.powf(1.0 + al / 2.0) - 2.0 * s + root) / (2f64.powf(al / 2.0) - 2.0 * s);
    let b2 = (2f64.powf(1.0 + al / 2.0) - 2f64.powf(1.0 + al) * s
        + (2.0 - 2f64.powf(al)) * root)
        / (2f64.powf(1.0 + al / 2.0) + 2f64.powf(1.5 * al) - 2f64.powf(1.0 + al) * s
            + 2.0 * root);

    let den = al * co + (al - 2.0) * s;
    let sq = (2.0 * (2.0 - 2.0 * al + al * al) * co * co).sqrt();
    let a3 = 1.0 + 2f64.powf(al / 2.0) * (2.0 - al + sq) / den;
    let b3 = 1.0 + 2f64.powf(al / 2.0) * (2.0 - al - sq) / den;

    Ok(Corners {
        p1: (a1, b1),
        p2: (a2, b2),
        p3: (a3, b3),
        p4: (b3, a3),
    })
}

/// The point (a(t), b(t)) of the parametric boundary Gamma3, t in [0, 2pi].
///
/// Conventions at the degenerate parameters: t = 0 and t = 2pi return
/// (1, 1) (the factor sin^alpha(t/2) kills both branch numerators), and the
/// band around t = pi returns the Gamma2/Gamma3 corner closed forms, which
/// are the one-sided limits there.
pub fn gamma3(alpha: FractionalOrder, t: f64) -> Result<(f64, f64), RegionError> {
    let al = alpha.value();
    if !(0.0..=2.0 * PI).contains(&t) {
        return Err(RegionError::ParameterOutOfRange(t));
    }
    if t == 0.0 || t == 2.0 * PI {
        return Ok((1.0, 1.0));
    }
    if (t - PI).abs() <= GAMMA3_PI_BAND {
        let corners = curve_intersections(alpha)?;
        // limits: t -> pi- gives (b3, a3), t -> pi+ gives (a3, b3)
        return Ok(if t <= PI { corners.p4 } else { corners.p3 });
    }

    let s1 = (t / 2.0).sin().powf(al);
    let s2 = (t + al * (PI - t) / 2.0).sin();
    let s3 = (t / 4.0).sin().powf(al);
    let s4 = (t * (al - 2.0) / 4.0).sin();
    let s5 = (t / 4.0).cos().powf(al);
    let s6 = (((al - 2.0) * t - 2.0 * al * PI) / 4.0).sin();

    let den = s5 * s4 - s3 * s6;
    if den == 0.0 {
        return Err(RegionError::DegenerateParameter {
            t,
            reason: "denominator s5*s4 - s3*s6 vanishes".to_string(),
        });
    }
    // The radicand factors as s1 * bracket with both factors of size
    // ~ t^alpha near t -> 0; taking square roots separately avoids the
    // underflow of their product at extreme parameters.
    let mut bracket = 2f64.powf(al) * (-s3 * s4 + s5 * s6) * den + s1 * s2 * s2;
    if bracket < 0.0 {
        if bracket > -1e-10 {
            bracket = 0.0;
        } else {
            return Err(RegionError::DegenerateParameter {
                t,
                reason: format!("negative radicand factor {bracket}"),
            });
        }
    }
    let sq = s1.sqrt() * bracket.sqrt();
    Ok((1.0 + (-s1 * s2 + sq) / den, 1.0 - (s1 * s2 + sq) / den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveLabel {
    Gamma1,
    Gamma2,
    Gamma3,
}

impl CurveLabel {
    pub fn csv_code(self) -> &'static str {
        match self {
            CurveLabel::Gamma1 => "G1",
            CurveLabel::Gamma2 => "G2",
            CurveLabel::Gamma3 => "G3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample {
    /// Curve parameter: the abscissa a for Gamma1/Gamma2, the angle t for Gamma3.
    pub param: f64,
    pub a: f64,
    pub b: f64,
}

/// One sampled boundary arc.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    pub label: CurveLabel,
    pub samples: Vec<BoundarySample>,
    pub param_range: (f64, f64),
}

impl BoundaryCurve {
    fn push_csv(&self, out: &mut String) {
        for s in &self.samples {
            out.push_str(self.label.csv_code());
            out.push(',');
            out.push_str(&write_f64(s.param));
            out.push(',');
            out.push_str(&write_f64(s.a));
            out.push(',');
            out.push_str(&write_f64(s.b));
            out.push('\n');
        }
    }
}

/// The assembled stable region: a simple closed polygon in the (a, b)-plane,
/// symmetric about the diagonal, with the four corner points and an interior
/// anchor.
#[derive(Debug, Clone)]
pub struct StabilityRegion {
    alpha: FractionalOrder,
    polygon: Vec<(f64, f64)>,
    anchor: (f64, f64),
    corners: Corners,
    curves: Vec<BoundaryCurve>,
}

impl StabilityRegion {
    pub fn alpha(&self) -> FractionalOrder {
        self.alpha
    }

    /// Polygon vertices in counterclockwise order; the closing edge from the
    /// last vertex back to the first is implicit.
    pub fn polygon(&self) -> &[(f64, f64)] {
        &self.polygon
    }

    pub fn anchor(&self) -> (f64, f64) {
        self.anchor
    }

    pub fn corners(&self) -> Corners {
        self.corners
    }

    pub fn curves(&self) -> &[BoundaryCurve] {
        &self.curves
    }

    /// Even-odd (crossing count) membership test. Points within 1e-9 of the
    /// polygon boundary are classified as outside: marginal stability is not
    /// asymptotic stability.
    pub fn contains(&self, a: f64, b: f64) -> bool {
        let poly = &self.polygon;
        let n = poly.len();
        let mut inside = false;
        let mut dist2_min = f64::INFINITY;
        for i in 0..n {
            let (x1, y1) = poly[i];
            let (x2, y2) = poly[(i + 1) % n];
            // crossing test on the horizontal ray toward +a
            if (y1 > b) != (y2 > b) {
                let x_cross = x1 + (b - y1) * (x2 - x1) / (y2 - y1);
                if a < x_cross {
                    inside = !inside;
                }
            }
            dist2_min = dist2_min.min(segment_dist2(a, b, x1, y1, x2, y2));
        }
        inside && dist2_min > 1e-18
    }

    /// Polygon CSV with header `a,b`, vertices in order.
    pub fn polygon_csv(&self) -> String {
        let mut out = String::from("a,b\n");
        for (a, b) in &self.polygon {
            out.push_str(&write_f64(*a));
            out.push(',');
            out.push_str(&write_f64(*b));
            out.push('\n');
        }
        out
    }

    /// Boundary CSV with header `curve,param,a,b` over all four arcs.
    pub fn boundary_csv(&self) -> String {
        let mut out = String::from("curve,param,a,b\n");
        for c in &self.curves {
            c.push_csv(&mut out);
        }
        out
    }

    /// O(n^2) simple-polygon check: no two non-adjacent edges intersect.
    pub fn is_simple(&self) -> bool {
        let poly = &self.polygon;
        let n = poly.len();
        for i in 0..n {
            let e1 = (poly[i], poly[(i + 1) % n]);
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue; // shares the closing vertex
                }
                let e2 = (poly[j], poly[(j + 1) % n]);
                if segments_cross(e1, e2) {
                    return false;
                }
            }
        }
        true
    }
}

fn segment_dist2(px: f64, py: f64, x1: f64, y1: f64, x2: f64, y2: f64) -> f64 {
    let (dx, dy) = (x2 - x1, y2 - y1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((px - x1) * dx + (py - y1) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (x1 + t * dx, y1 + t * dy);
    (px - cx) * (px - cx) + (py - cy) * (py - cy)
}

fn orient(p: (f64, f64), q: (f64, f64), r: (f64, f64)) -> f64 {
    (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
}

fn segments_cross(e1: ((f64, f64), (f64, f64)), e2: ((f64, f64), (f64, f64))) -> bool {
    let (p1, p2) = e1;
    let (p3, p4) = e2;
    // bounding-box reject
    if p1.0.max(p2.0) < p3.0.min(p4.0)
        || p3.0.max(p4.0) < p1.0.min(p2.0)
        || p1.1.max(p2.1) < p3.1.min(p4.1)
        || p3.1.max(p4.1) < p1.1.min(p2.1)
    {
        return false;
    }
    let d1 = orient(p3, p4, p1);
    let d2 = orient(p3, p4, p2);
    let d3 = orient(p1, p2, p3);
    let d4 = orient(p1, p2, p4);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Grid of `n` points on [lo, hi] inclusive with Chebyshev-extrema spacing
/// (clustered at both endpoints).
fn chebyshev_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    (0..n)
        .map(|i| {
            let theta = PI * (1.0 - i as f64 / (n - 1) as f64);
            mid + half * theta.cos()
        })
        .collect()
}

/// Assembles the closed stable-region polygon from the four boundary arcs.
///
/// The lower half of the polygon is the exact coordinate-swapped mirror of
/// the upper half, so membership is symmetric about a = b by construction.
pub fn build_region(
    alpha: FractionalOrder,
    samples_per_arc: usize,
) -> Result<StabilityRegion, RegionError> {
    if alpha.is_classical() {
        return Err(RegionError::ClassicalOrder);
    }
    if samples_per_arc < 16 {
        return Err(RegionError::TooFewSamples(samples_per_arc));
    }
    let al = alpha.value();
    let corners = curve_intersections(alpha)?;
    let p1 = corners.p1;
    let p2 = (corners.p1.1, corners.p1.0); // exact mirror for polygon symmetry
    let p3 = corners.p3;
    let p4 = (corners.p3.1, corners.p3.0);
    let diag = (1.0 - 2f64.powf(al), 1.0 - 2f64.powf(al));

    // Gamma1 upper half: a in (a1, 1), through the fixed boundary point (1,1).
    let n_half = samples_per_arc / 2;
    let mut g1_upper = Vec::with_capacity(n_half);
    let mut g1_curve = Vec::new();
    g1_curve.push(BoundarySample {
        param: p1.0,
        a: p1.0,
        b: p1.1,
    });
    for a in chebyshev_grid(p1.0, 1.0, n_half + 2).into_iter().skip(1) {
        if a >= 1.0 {
            break;
        }
        let b = gamma1(alpha, a)?;
        g1_upper.push((a, b));
        g1_curve.push(BoundarySample { param: a, a, b });
    }
    g1_curve.push(BoundarySample {
        param: 1.0,
        a: 1.0,
        b: 1.0,
    });
    for &(a, b) in g1_upper.iter().rev() {
        g1_curve.push(BoundarySample {
            param: b,
            a: b,
            b: a,
        });
    }
    g1_curve.push(BoundarySample {
        param: p2.0,
        a: p2.0,
        b: p2.1,
    });

    // Gamma2 upper tongue: a in (a3, a1), endpoints handled as exact corners.
    let mut g2_upper = Vec::with_capacity(samples_per_arc);
    for a in chebyshev_grid(p3.0, p1.0, samples_per_arc + 2)
        .into_iter()
        .skip(1)
        .take(samples_per_arc)
    {
        g2_upper.push((a, gamma2(alpha, a)?));
    }

    // Gamma3 lower half: t in (0, pi), from the corner p4 toward the
    // diagonal point. The curve approaches the diagonal at the rate
    // h = t^((1-alpha)/2), so the tail of the budget is spaced uniformly in
    // h (t = t_sw * s^(2/(1-alpha))) rather than in t. The upper half is the
    // coordinate-swapped mirror (gamma3(2pi - t) = swap(gamma3(t)); 2pi - t
    // itself is not representable for tiny t, so the mirror is taken in
    // coordinates).
    let n3 = samples_per_arc / 2;
    let n3_tail = (n3 / 2).max(8);
    let n3_main = n3 - n3_tail;
    let t_sw = 0.3f64;
    let wrap_exponent = 2.0 / (1.0 - al);
    let mut g3_ts: Vec<f64> = chebyshev_grid(PI - 1e-3, t_sw, n3_main);
    g3_ts.extend((1..n3_tail).filter_map(|j| {
        let s = 1.0 - j as f64 / n3_tail as f64;
        let t = t_sw * s.powf(wrap_exponent);
        (t >= 1e-300).then_some(t)
    }));
    let mut g3_lower = Vec::with_capacity(g3_ts.len());
    let mut kept_ts = Vec::with_capacity(g3_ts.len());
    for &t in &g3_ts {
        let (a, b) = gamma3(alpha, t)?;
        // samples within 1e-6 of the diagonal vertex carry only numerical
        // noise (the radicand has fully cancelled); the explicit diagonal
        // vertex closes the arc instead
        let tol = 1e-6 * diag.0.abs().max(1.0);
        if (a - diag.0).abs().max((b - diag.1).abs()) <= tol {
            continue;
        }
        g3_lower.push((a, b));
        kept_ts.push(t);
    }
    let g3_ts = kept_ts;

    // assemble: p1 -> Gamma1 -> p2 -> Gamma2 mirror -> p4 -> Gamma3 lower
    //           -> diag -> Gamma3 mirror reversed -> p3 -> Gamma2 -> (close)
    let mut polygon: Vec<(f64, f64)> = Vec::new();
    polygon.push(p1);
    polygon.extend(g1_upper.iter().map(|&(a, b)| (a, b)));
    polygon.push((1.0, 1.0));
    polygon.extend(g1_upper.iter().rev().map(|&(a, b)| (b, a)));
    polygon.push(p2);
    polygon.extend(g2_upper.iter().rev().map(|&(a, b)| (b, a)));
    polygon.push(p4);
    polygon.extend(g3_lower.iter().map(|&(a, b)| (a, b)));
    polygon.push(diag);
    polygon.extend(g3_lower.iter().rev().map(|&(a, b)| (b, a)));
    polygon.push(p3);
    polygon.extend(g2_upper.iter().map(|&(a, b)| (a, b)));

    dedupe_consecutive(&mut polygon);
    if signed_area(&polygon) < 0.0 {
        polygon.reverse();
    }

    // Anchor: midpoint of the diagonal chord between the region's two
    // diagonal boundary crossings (1 - 2^alpha, .) and (1, 1); this is
    // (c1, c1) and lies strictly inside for every alpha in (0, 1).
    let anchor = (c1(al), c1(al));

    let curves = vec![
        BoundaryCurve {
            label: CurveLabel::Gamma1,
            samples: g1_curve,
            param_range: (p1.0, p2.0),
        },
        BoundaryCurve {
            label: CurveLabel::Gamma2,
            samples: std::iter::once(BoundarySample {
                param: p3.0,
                a: p3.0,
                b: p3.1,
            })
            .chain(g2_upper.iter().map(|&(a, b)| BoundarySample { param: a, a, b }))
            .chain(std::iter::once(BoundarySample {
                param: p1.0,
                a: p1.0,
                b: p1.1,
            }))
            .collect(),
            param_range: (p3.0, p1.0),
        },
        BoundaryCurve {
            label: CurveLabel::Gamma2,
            samples: std::iter::once(BoundarySample {
                param: p2.0,
                a: p2.0,
                b: p2.1,
            })
            .chain(
                g2_upper
                    .iter()
                    .rev()
                    .map(|&(a, b)| BoundarySample { param: b, a: b, b: a }),
            )
            .chain(std::iter::once(BoundarySample {
                param: p4.0,
                a: p4.0,
                b: p4.1,
            }))
            .collect(),
            param_range: (p2.0, p4.0),
        },
        BoundaryCurve {
            label: CurveLabel::Gamma3,
            samples: {
                let mut v: Vec<BoundarySample> = Vec::new();
                for (&t, &(a, b)) in g3_ts.iter().zip(&g3_lower) {
                    v.push(BoundarySample { param: t, a, b });
                }
                // mirrored half sits at parameter 2pi - t (the param column
                // saturates at 2pi for t below one ulp; the points are exact)
                for (&t, &(a, b)) in g3_ts.iter().zip(&g3_lower).rev() {
                    v.push(BoundarySample {
                        param: 2.0 * PI - t,
                        a: b,
                        b: a,
                    });
                }
                v
            },
            param_range: (0.0, 2.0 * PI),
        },
    ];

    let region = StabilityRegion {
        alpha,
        polygon,
        anchor,
        corners,
        curves,
    };
    debug_assert!(region.contains(anchor.0, anchor.1));
    Ok(region)
}

fn dedupe_consecutive(polygon: &mut Vec<(f64, f64)>) {
    polygon.dedup_by(|a, b| {
        let scale = a.0.abs().max(a.1.abs()).max(1.0);
        (a.0 - b.0).abs() <= 1e-13 * scale && (a.1 - b.1).abs() <= 1e-13 * scale
    });
    if polygon.len() > 1 {
        let first = polygon[0];
        let last = *polygon.last().unwrap();
        let scale = first.0.abs().max(first.1.abs()).max(1.0);
        if (first.0 - last.0).abs() <= 1e-13 * scale
            && (first.1 - last.1).abs() <= 1e-13 * scale
        {
            polygon.pop();
        }
    }
}

fn signed_area(polygon: &[(f64, f64)]) -> f64 {
    let n = polygon.len();
    let mut acc = 0.0;
    for i in 0..n {
        let (x1, y1) = polygon[i];
        let (x2, y2) = polygon[(i + 1) % n];
        acc += x1 * y2 - x2 * y1;
    }
    0.5 * acc
}

/// The characteristic function of the even/odd split system,
///
/// ```text
/// chi(z) = -z (z-1)^alpha
///          - (a + b - 2)/2 * z^((1+alpha)/2) * [ (sqrt(z)-1)^alpha - (sqrt(z)+1)^alpha ]
///          + (a-1)(b-1) z^alpha
/// ```
///
/// with principal branches throughout. The zero solution is asymptotically
/// stable iff every root lies strictly inside the unit circle; the boundary
/// curves are exactly the (a, b) for which a root sits on the circle.
pub fn char_eq(
    z: Complex64,
    a: f64,
    b: f64,
    alpha: FractionalOrder,
) -> Result<Complex64, RegionError> {
    let al = alpha.value();
    if z == Complex64::new(0.0, 0.0) {
        return Err(RegionError::CharEqZero);
    }
    if z == Complex64::new(1.0, 0.0) {
        return Err(RegionError::CharEqSingularAtOne);
    }
    let sqrt_z = z.sqrt();
    let one = Complex64::new(1.0, 0.0);
    let term1 = -z * (z - one).powf(al);
    let bracket = (sqrt_z - one).powf(al) - (sqrt_z + one).powf(al);
    let term2 = -0.5 * (a + b - 2.0) * z.powf((1.0 + al) / 2.0) * bracket;
    let term3 = (a - 1.0) * (b - 1.0) * z.powf(al);
    Ok(term1 + term2 + term3)
}

/// Independent stability oracle for a point (a, b): simulate the
/// two-periodic linear map from x0 = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimVerdict {
    Stable,
    Unstable,
    Inconclusive,
}

/// Simulates the linear two-periodic map from x0 = 1 for `steps` steps:
/// `Stable` if |x(T)| < tol, `Unstable` if the overflow guard trips,
/// `Inconclusive` otherwise. Note the interior decay is algebraic
/// (|x(t)| ~ C t^-alpha), so `tol` must be chosen with the horizon in mind.
pub fn classify_by_simulation(
    a: f64,
    b: f64,
    alpha: FractionalOrder,
    steps: usize,
    tol: f64,
) -> SimVerdict {
    assert!(steps >= 500, "classify_by_simulation requires steps >= 500");
    let map = MapSpec::linear_two_periodic(a, b);
    let traj = iterate_direct(&map, 1.0, alpha, steps)
        .expect("linear map evaluation cannot fail");
    if traj.divergence.is_some() {
        SimVerdict::Unstable
    } else if traj.states[steps].abs() < tol {
        SimVerdict::Stable
    } else {
        SimVerdict::Inconclusive
    }
}
