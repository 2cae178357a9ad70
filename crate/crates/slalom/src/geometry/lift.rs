//! Lift of the drawn divide into the unit sphere of the tangent bundle of
//! the plane.
//!
//! Over an interior curve point `x` with unit tangent `t`, the unit sphere
//! `|x|^2 + |u|^2 = 1` of R^4 meets the tangent line of the curve in the two
//! points `(x, +r t)` and `(x, -r t)` with `r = sqrt(1 - |x|^2)`; over the
//! two boundary points (`|x| = 1`) the tangential fiber degenerates to the
//! single point `(x, 0)`. Walking the positive branch forward and the
//! negative branch backward therefore stitches one closed curve through the
//! two boundary points: the knot of the divide. A double point of the
//! divide, where two strands share `x` with transversal tangents, lifts to
//! four distinct points, so the closed curve is embedded.
//!
//! The curve is emitted as a closed polygon (first and last vertex bitwise
//! equal) together with a 3-space image under stereographic projection.
//! The projection pole is picked deterministically as the best of a fixed
//! candidate set, maximizing the distance to the curve so that the image
//! stays bounded and well conditioned.

use std::f64::consts::PI;

use super::layout::{unit_tangent, DivideImmersion};
use super::numeric::{dist4, dot2, dot4, norm4, scl4, sub4, P2, P3, P4};
use super::{GeometryError, GeometryResult, Scrambler};

/// Minimum samples per cubic segment accepted by the lift.
const SAMPLES_FLOOR: usize = 8;
/// Maximum allowed deviation of any emitted vertex from the unit sphere.
const SPHERE_TOLERANCE: f64 = 1e-9;
/// Fixed candidate count for the stereographic pole search.
const POLE_CANDIDATES: usize = 64;
/// Fixed seed for the pole candidates; the image is the same for every
/// caller, so exports and diagrams agree on the 3-space picture.
const POLE_SEED: u64 = 0x0b5e_55ed_0c1e_a7e5;

/// The knot of a divide: a closed polygon on the unit sphere of R^4, plus
/// its stereographic image in R^3.
pub struct KnotCurve {
    points: Vec<P4>,
    image: Vec<P3>,
}

impl KnotCurve {
    /// Polygon vertices `(x, u)` on the unit 3-sphere; the first and last
    /// entries are bitwise equal (closed curve).
    pub fn points(&self) -> &[[f64; 4]] {
        &self.points
    }

    /// Stereographic image of [`Self::points`], same length, same closure.
    pub fn image3(&self) -> &[[f64; 3]] {
        &self.image
    }

    /// Number of polygon vertices, counting the closing duplicate.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest deviation `| |x|^2 + |u|^2 - 1 |` over all vertices.
    pub fn max_sphere_residual(&self) -> f64 {
        self.points
            .iter()
            .map(|&p| (dot4(p, p) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Builds a curve directly from sphere points; test scaffolding for the
    /// projection stage.
    #[cfg(test)]
    pub(super) fn synthetic(points: Vec<P4>) -> KnotCurve {
        let image = stereographic_image(&points);
        KnotCurve { points, image }
    }
}

/// Lifts the immersed divide to its knot, resampling every cubic segment at
/// `samples_per_segment` points. With `n` curve samples the polygon has
/// `2n - 1` vertices: both branches share the two boundary points and the
/// first vertex is repeated to close the cycle.
pub fn tangent_lift(
    imm: &DivideImmersion,
    samples_per_segment: usize,
) -> GeometryResult<KnotCurve> {
    if samples_per_segment < SAMPLES_FLOOR {
        return Err(GeometryError::BadConfig(format!(
            "samples per segment must be at least {SAMPLES_FLOOR}, got {samples_per_segment}"
        )));
    }

    let segments = imm.segments();
    let mut curve: Vec<(P2, P2)> = Vec::with_capacity(segments.len() * samples_per_segment + 1);
    for (index, seg) in segments.iter().enumerate() {
        let first = index == 0;
        let last = index == segments.len() - 1;
        for j in 0..samples_per_segment {
            // The chord height vanishes like the square root of the
            // parameter at the curve's two boundary points, so uniform
            // parameter steps would open a fan of sharply turning chords
            // there. Cosine spacing toward those ends keeps the lifted
            // edge lengths even through the funnels; everywhere else
            // uniform steps avoid degenerate micro-edges at the joints.
            let x = j as f64 / samples_per_segment as f64;
            let t = match (first, last) {
                (true, true) => 0.5 - 0.5 * (PI * x).cos(),
                (true, false) => 1.0 - (0.5 * PI * x).cos(),
                (false, true) => (0.5 * PI * x).sin(),
                (false, false) => x,
            };
            curve.push((seg.eval(t), unit_tangent(seg, t)));
        }
    }
    let last = segments.last().expect("an immersion has segments");
    curve.push((last.eval(1.0), unit_tangent(last, 1.0)));

    let n = curve.len();
    let mut points: Vec<P4> = Vec::with_capacity(2 * n - 1);
    let boundary = |x: P2| [x[0], x[1], 0.0, 0.0];
    points.push(boundary(curve[0].0));
    for &(x, t) in &curve[1..n - 1] {
        points.push(lift_point(x, t, 1.0));
    }
    points.push(boundary(curve[n - 1].0));
    for &(x, t) in curve[1..n - 1].iter().rev() {
        points.push(lift_point(x, t, -1.0));
    }
    points.push(points[0]);

    if points.first() != points.last() {
        return Err(GeometryError::OpenPolygon);
    }
    let residual = points
        .iter()
        .map(|&p| (dot4(p, p) - 1.0).abs())
        .fold(0.0, f64::max);
    if residual > SPHERE_TOLERANCE {
        return Err(GeometryError::SphereResidual {
            residual,
            tolerance: SPHERE_TOLERANCE,
        });
    }

    let image = stereographic_image(&points);
    Ok(KnotCurve { points, image })
}

/// One branch point of the lift over `x`: `u = side * sqrt(1 - |x|^2) * t`.
/// The square root argument is clamped at zero so roundoff at points close
/// to the boundary circle cannot produce NaN.
fn lift_point(x: P2, tangent: P2, side: f64) -> P4 {
    let r = (1.0 - dot2(x, x)).max(0.0).sqrt();
    [
        x[0],
        x[1],
        side * r * tangent[0],
        side * r * tangent[1],
    ]
}

/// Stereographic projection of the polygon from a pole far from the curve.
/// The pole is rotated to the distinguished axis by expressing every point
/// in an orthonormal basis completing the pole; the image coordinate is
/// `(p . b_i) / (1 - p . pole)`.
fn stereographic_image(points: &[P4]) -> Vec<P3> {
    let pole = pick_pole(points);
    let mut basis: Vec<P4> = vec![pole];
    for k in 0..4 {
        let mut e = [0.0; 4];
        e[k] = 1.0;
        for &b in &basis {
            e = sub4(e, scl4(b, dot4(e, b)));
        }
        let n = norm4(e);
        if n > 1e-6 {
            basis.push(scl4(e, 1.0 / n));
        }
        if basis.len() == 4 {
            break;
        }
    }
    let (b1, b2, b3) = (basis[1], basis[2], basis[3]);
    points
        .iter()
        .map(|&p| {
            let w = 1.0 - dot4(p, pole);
            [dot4(p, b1) / w, dot4(p, b2) / w, dot4(p, b3) / w]
        })
        .collect()
}

/// Best of a fixed set of unit 4-vectors, by distance to the curve.
fn pick_pole(points: &[P4]) -> P4 {
    let mut rng = Scrambler::new(POLE_SEED);
    let mut best = [1.0, 0.0, 0.0, 0.0];
    let mut best_gap = f64::NEG_INFINITY;
    for _ in 0..POLE_CANDIDATES {
        let candidate = loop {
            let v: P4 = std::array::from_fn(|_| 2.0 * rng.next_f64() - 1.0);
            let n = norm4(v);
            if (1e-3..=1.0).contains(&n) {
                break scl4(v, 1.0 / n);
            }
        };
        let gap = points
            .iter()
            .map(|&p| dist4(p, candidate))
            .fold(f64::INFINITY, f64::min);
        if gap > best_gap {
            best_gap = gap;
            best = candidate;
        }
    }
    best
}
