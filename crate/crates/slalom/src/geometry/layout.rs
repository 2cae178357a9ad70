//! Drawing the slalom curve of a divide inside the unit disk.
//!
//! The tree is drawn tidily: leaves at evenly spaced abscissae, internal
//! vertices above the mean of their children, depth mapped linearly to
//! height, the whole picture fitted into a band strictly inside the unit
//! circle. The curve then follows the contour walk at a clearance `c` from
//! the edges: along every passage it runs parallel to the edge on the entry
//! side, swaps sides through the edge midpoint inside a short window, and at
//! the far vertex wraps around on a circular arc to the start of the next
//! passage (counterclockwise exactly when the passage entered on the left,
//! which reproduces the walk's choice of next edge). Both passages of an
//! edge interpolate the midpoint exactly, so the double point sits at the
//! midpoint bitwise and the crossing angle is `2*atan(1/2)` independent of
//! the clearance. The two loose ends near the root are extended radially to
//! the unit circle, which makes them orthogonal to it.
//!
//! Construction and verification are kept separate: after building the
//! spline, the divide axioms are re-checked numerically on the sampled
//! polyline. Endpoints must lie on the circle with everything else strictly
//! inside; the ends must meet the circle transversally; apart from one
//! contact cluster per edge midpoint the strands must stay apart; each
//! cluster must be crossed by exactly the two passages of its edge, at a
//! healthy angle to each other and to the edge; the curve may meet a tree
//! edge only at its midpoint; every vertex must keep its distance from the
//! curve; and the counterclockwise order of the four strand stubs at every
//! double point must equal the combinatorial rotation of that crossing.
//! Together with the face census of the combinatorial divide (one region per
//! vertex, certified by Euler's formula), the checks guarantee that the
//! drawing realizes the divide: same crossings, same local rotations, same
//! boundary attachment, no extra intersections — hence the same regions.

use super::numeric::{
    add2, cross2, dist2, dot2, left_normal2, norm2, normalize2, point_segment_distance2, scl2,
    segment_closest2, sub2, SegmentGrid, P2,
};
use super::{DivideAxiom, GeometryError, GeometryResult, LayoutConfig};
use crate::divide::{SlalomDivide, Stub};
use crate::tree::Tree;
use std::collections::BTreeSet;

/// Distance from a vertex to the start of the straight rail along an edge,
/// as a fraction of the local scale. Also the wrap-arc radius up to the
/// clearance offset.
const ALONG_GAP_FRACTION: f64 = 0.30;
/// Half-width of the side-swap window around an edge midpoint, in units of
/// the clearance; the value 2 makes every crossing angle `2*atan(1/2)`.
const SWAP_HALF_WIDTH_FACTOR: f64 = 2.0;
/// Upper bound on the clearance fraction keeping the swap window strictly
/// between the rail starts of the shortest edge.
const CLEARANCE_HARD_CAP: f64 = 0.095;
/// Wrap arcs reach `atan(c/d)` into the angular sector between adjacent
/// edge germs; the clearance is capped so that stays inside the sector.
const GERM_ANGLE_SAFETY: f64 = 0.8;
/// Maximum angular step between consecutive wrap-arc knots.
const WRAP_STEP_DEGREES: f64 = 15.0;
/// Distance below which two strand samples count as the same point.
const TOUCH_TOLERANCE: f64 = 1e-9;
/// Maximum distance from a contact cluster to the edge midpoint it claims.
const CLUSTER_TOLERANCE: f64 = 1e-6;

/// One sample of the immersed curve.
#[derive(Debug, Clone, Copy)]
pub struct ImmersionSample {
    pub point: [f64; 2],
    /// Unit tangent of the parametrization at `point`.
    pub tangent: [f64; 2],
    /// Index into the divide's tour of the passage this sample belongs to;
    /// `None` on the two boundary tails.
    pub passage: Option<usize>,
}

/// Cubic Bezier piece of the curve, control points in order.
#[derive(Debug, Clone, Copy)]
pub struct CubicSegment {
    pub p0: [f64; 2],
    pub p1: [f64; 2],
    pub p2: [f64; 2],
    pub p3: [f64; 2],
}

impl CubicSegment {
    pub fn eval(&self, t: f64) -> [f64; 2] {
        let u = 1.0 - t;
        let w0 = u * u * u;
        let w1 = 3.0 * u * u * t;
        let w2 = 3.0 * u * t * t;
        let w3 = t * t * t;
        [
            w0 * self.p0[0] + w1 * self.p1[0] + w2 * self.p2[0] + w3 * self.p3[0],
            w0 * self.p0[1] + w1 * self.p1[1] + w2 * self.p2[1] + w3 * self.p3[1],
        ]
    }

    pub fn derivative(&self, t: f64) -> [f64; 2] {
        let u = 1.0 - t;
        let w0 = 3.0 * u * u;
        let w1 = 6.0 * u * t;
        let w2 = 3.0 * t * t;
        [
            w0 * (self.p1[0] - self.p0[0]) + w1 * (self.p2[0] - self.p1[0]) + w2 * (self.p3[0] - self.p2[0]),
            w0 * (self.p1[1] - self.p0[1]) + w1 * (self.p2[1] - self.p1[1]) + w2 * (self.p3[1] - self.p2[1]),
        ]
    }
}

/// A verified double point of the drawn curve.
#[derive(Debug, Clone, Copy)]
pub struct CrossingRecord {
    /// Child vertex naming the tree edge this double point sits on.
    pub edge_child: usize,
    /// The double point: exactly the midpoint of the edge.
    pub point: [f64; 2],
    pub down_passage: usize,
    pub up_passage: usize,
    /// Sample indices at which each strand passes through `point` exactly.
    pub down_sample: usize,
    pub up_sample: usize,
    /// Angle between the two strands in degrees.
    pub angle_degrees: f64,
}

/// The drawn divide: tree layout, curve spline, sampled polyline with unit
/// tangents, and the verified double points.
pub struct DivideImmersion {
    vertex_positions: Vec<[f64; 2]>,
    segments: Vec<CubicSegment>,
    samples: Vec<ImmersionSample>,
    crossings: Vec<CrossingRecord>,
    local_scale: f64,
    clearance: f64,
}

impl DivideImmersion {
    /// Position of each tree vertex, indexed by vertex.
    pub fn vertex_positions(&self) -> &[[f64; 2]] {
        &self.vertex_positions
    }

    /// The curve as consecutive cubic Bezier segments, endpoints to the
    /// boundary circle.
    pub fn segments(&self) -> &[CubicSegment] {
        &self.segments
    }

    /// Polyline samples along the whole curve, first and last on the circle.
    pub fn samples(&self) -> &[ImmersionSample] {
        &self.samples
    }

    /// One verified double point per tree edge, in edge order.
    pub fn crossings(&self) -> &[CrossingRecord] {
        &self.crossings
    }

    /// Smallest feature distance of the tree layout.
    pub fn local_scale(&self) -> f64 {
        self.local_scale
    }

    /// Offset of the curve rails from the tree edges.
    pub fn clearance(&self) -> f64 {
        self.clearance
    }
}

/// Geometry of one passage: travel frame and the nine spline knots (rail
/// start, guard, guard, swap entry, midpoint, swap exit, guard, guard, rail
/// end). The guard knots sit on the rails a small step inside each rail end;
/// they make four consecutive spline knots collinear along every rail, which
/// pins the interpolant to the straight rail. Without them the tangent at
/// the far end of a long rail chord is contaminated by the short, sharply
/// turning chord that follows (swap or wrap), and the resulting lateral bow
/// can exceed the rail separation when the clearance is small.
struct Frame {
    end_vertex: usize,
    u: P2,
    q: [P2; 9],
}

/// Draws the slalom curve of `divide` in the unit disk and verifies the
/// divide axioms numerically on the result.
pub fn layout_immersion(divide: &SlalomDivide, cfg: &LayoutConfig) -> GeometryResult<DivideImmersion> {
    cfg.validate()?;
    let tree = divide.tree();
    let positions = tidy_positions(tree, cfg);
    let local_scale = smallest_feature(tree, &positions);
    let along = ALONG_GAP_FRACTION * local_scale;
    let clearance = pick_clearance(tree, &positions, cfg, local_scale, along);
    let swap = SWAP_HALF_WIDTH_FACTOR * clearance;
    let midpoints: Vec<P2> = tree
        .edges()
        .iter()
        .map(|&(p, c)| scl2(add2(positions[p], positions[c]), 0.5))
        .collect();

    let frames: Vec<Frame> = divide
        .tour()
        .iter()
        .map(|p| {
            let (from, to) = if p.downward {
                (tree.parent(p.edge_child).unwrap(), p.edge_child)
            } else {
                (p.edge_child, tree.parent(p.edge_child).unwrap())
            };
            let a = positions[from];
            let b = positions[to];
            let u = normalize2(sub2(b, a));
            let nrm = left_normal2(u);
            let s = if p.enters_left { 1.0 } else { -1.0 };
            let m = midpoints[p.edge_child - 1];
            let side = scl2(nrm, s * clearance);
            let rail_start = add2(add2(a, scl2(u, along)), side);
            let swap_in = add2(sub2(m, scl2(u, swap)), side);
            let swap_out = sub2(add2(m, scl2(u, swap)), side);
            let rail_end = sub2(sub2(b, scl2(u, along)), side);
            let rail_len = dist2(rail_start, swap_in);
            let guard = scl2(u, (rail_len / 4.0).min(clearance / 2.0));
            Frame {
                end_vertex: to,
                u,
                q: [
                    rail_start,
                    add2(rail_start, guard),
                    sub2(swap_in, guard),
                    swap_in,
                    m,
                    swap_out,
                    add2(swap_out, guard),
                    sub2(rail_end, guard),
                    rail_end,
                ],
            }
        })
        .collect();

    // Knot sequence: tail end on the circle, then per passage the nine rail
    // knots followed by the wrap arc to the next passage, then the other
    // tail end. Each knot remembers its passage for later bookkeeping.
    let mut knots: Vec<(P2, Option<usize>)> = Vec::new();
    let mut m_knots = vec![0usize; frames.len()];
    knots.push((normalize2(frames[0].q[0]), None));
    for (k, f) in frames.iter().enumerate() {
        for (i, &q) in f.q.iter().enumerate() {
            if i == 4 {
                m_knots[k] = knots.len();
            }
            knots.push((q, Some(k)));
        }
        if k + 1 < frames.len() {
            let center = positions[f.end_vertex];
            let ccw = divide.tour()[k].enters_left;
            for w in wrap_points(center, f.q[8], frames[k + 1].q[0], ccw) {
                knots.push((w, Some(k)));
            }
        }
    }
    knots.push((normalize2(frames[frames.len() - 1].q[8]), None));

    let segments = catmull_rom_segments(&knots);
    let samples = sample_segments(&segments, &knots, cfg.samples_per_segment);

    let crossings = crossing_records(divide, &frames, &m_knots, &midpoints, &samples, cfg);
    let imm = DivideImmersion {
        vertex_positions: positions,
        segments,
        samples,
        crossings,
        local_scale,
        clearance,
    };
    verify_immersion(divide, cfg, &imm, &frames, &midpoints)?;
    Ok(imm)
}

/// Tidy layout: children keep their code order left to right, leaves get
/// consecutive slots, internal vertices sit over the mean of their children.
/// The root (which has exactly one child) is centered, the picture scaled
/// into the configured band.
fn tidy_positions(tree: &Tree, cfg: &LayoutConfig) -> Vec<P2> {
    let n = tree.vertex_count();
    let mut x = vec![0.0f64; n];
    let mut next_slot = 0usize;
    fn place(tree: &Tree, v: usize, x: &mut [f64], next_slot: &mut usize) {
        let kids = tree.children(v);
        if kids.is_empty() {
            x[v] = *next_slot as f64;
            *next_slot += 1;
            return;
        }
        for &c in kids {
            place(tree, c, x, next_slot);
        }
        x[v] = kids.iter().map(|&c| x[c]).sum::<f64>() / kids.len() as f64;
    }
    place(tree, 0, &mut x, &mut next_slot);

    let center = x[0];
    for xv in x.iter_mut() {
        *xv -= center;
    }
    let extent = x.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    if extent > 0.0 {
        let s = cfg.tree_half_width / extent;
        for xv in x.iter_mut() {
            *xv *= s;
        }
    }

    let max_depth = (0..n).map(|v| tree.depth(v)).max().unwrap().max(1);
    (0..n)
        .map(|v| {
            let y = cfg.tree_bottom
                + tree.depth(v) as f64 * (cfg.tree_top - cfg.tree_bottom) / max_depth as f64;
            [x[v], y]
        })
        .collect()
}

/// Smallest feature distance: edge lengths, vertex-pair distances, and
/// vertex-to-nonincident-edge distances. Everything the curve must thread
/// between scales with this.
fn smallest_feature(tree: &Tree, positions: &[P2]) -> f64 {
    let mut scale = f64::INFINITY;
    let edges = tree.edges();
    for &(p, c) in &edges {
        scale = scale.min(dist2(positions[p], positions[c]));
    }
    for v in 0..positions.len() {
        for w in v + 1..positions.len() {
            scale = scale.min(dist2(positions[v], positions[w]));
        }
        for &(p, c) in &edges {
            if p != v && c != v {
                scale = scale.min(point_segment_distance2(positions[v], positions[p], positions[c]));
            }
        }
    }
    scale
}

/// Clearance of the rails from the edges: the configured fraction of the
/// local scale, capped so the swap window fits inside the shortest edge and
/// wrap arcs stay inside the narrowest angular sector at a vertex.
fn pick_clearance(
    tree: &Tree,
    positions: &[P2],
    cfg: &LayoutConfig,
    local_scale: f64,
    along: f64,
) -> f64 {
    let mut c = cfg.clearance_fraction.min(CLEARANCE_HARD_CAP) * local_scale;
    let mut min_germ = f64::INFINITY;
    for v in 0..tree.vertex_count() {
        let mut germs: Vec<P2> = Vec::new();
        if let Some(p) = tree.parent(v) {
            germs.push(normalize2(sub2(positions[p], positions[v])));
        }
        for &k in tree.children(v) {
            germs.push(normalize2(sub2(positions[k], positions[v])));
        }
        for i in 0..germs.len() {
            for j in i + 1..germs.len() {
                let angle = dot2(germs[i], germs[j]).clamp(-1.0, 1.0).acos();
                min_germ = min_germ.min(angle);
            }
        }
    }
    if min_germ.is_finite() {
        c = c.min(GERM_ANGLE_SAFETY * along * (min_germ / 2.0).tan());
    }
    c
}

/// Circular-arc knots around `center` from just after `from` to just before
/// `to`, sweeping counterclockwise or clockwise, one knot per at most 15
/// degrees; radius interpolates between the two end radii.
fn wrap_points(center: P2, from: P2, to: P2, ccw: bool) -> Vec<P2> {
    let rel_from = sub2(from, center);
    let rel_to = sub2(to, center);
    let r1 = norm2(rel_from);
    let r2 = norm2(rel_to);
    let a1 = rel_from[1].atan2(rel_from[0]);
    let a2 = rel_to[1].atan2(rel_to[0]);
    let tau = std::f64::consts::TAU;
    let mut sweep = a2 - a1;
    if ccw {
        while sweep <= 1e-12 {
            sweep += tau;
        }
    } else {
        while sweep >= -1e-12 {
            sweep -= tau;
        }
    }
    let step = WRAP_STEP_DEGREES.to_radians();
    let steps = (sweep.abs() / step).ceil().max(1.0) as usize;
    (1..steps)
        .map(|k| {
            let t = k as f64 / steps as f64;
            let ang = a1 + sweep * t;
            let r = r1 + (r2 - r1) * t;
            add2(center, [r * ang.cos(), r * ang.sin()])
        })
        .collect()
}

/// Catmull-Rom spline through the knots as cubic Bezier segments, with
/// centripetal parametrization and one-sided end tangents.
///
/// Centripetal weights matter here: knot spacing is deliberately uneven
/// (short straight rails between long swap chords and wrap arcs), and a
/// uniform parametrization develops local loops at such transitions, which
/// would show up as spurious self-contacts. With the centripetal choice the
/// curve cannot loop inside a segment. The one-sided end tangents keep the
/// terminal pieces along their chords, so the boundary tails stay radial.
/// At an edge midpoint the two flanking knots are symmetric, so the tangent
/// there is exactly the swap-chord direction whatever the parametrization.
fn catmull_rom_segments(knots: &[(P2, Option<usize>)]) -> Vec<CubicSegment> {
    let m = knots.len();
    let pts: Vec<P2> = knots.iter().map(|k| k.0).collect();
    // Centripetal knot interval: square root of the chord length.
    let interval = |a: P2, b: P2| dist2(a, b).sqrt().max(1e-12);
    let mut out = Vec::with_capacity(m - 1);
    for i in 0..m - 1 {
        let p1 = pts[i];
        let p2 = pts[i + 1];
        let d12 = interval(p1, p2);
        let tangent = |near: P2, far: P2, d_far: f64, toward: P2, d_near: f64| -> P2 {
            // Barry-Goldman tangent at `near`, rescaled to the unit-parameter
            // segment between the two middle points.
            let a = scl2(sub2(near, far), 1.0 / d_far);
            let b = scl2(sub2(toward, far), 1.0 / (d_far + d_near));
            let c = scl2(sub2(toward, near), 1.0 / d_near);
            scl2(add2(sub2(a, b), c), d_near)
        };
        let m1 = if i == 0 {
            sub2(p2, p1)
        } else {
            let p0 = pts[i - 1];
            tangent(p1, p0, interval(p0, p1), p2, d12)
        };
        let m2 = if i + 2 >= m {
            sub2(p2, p1)
        } else {
            let p3 = pts[i + 2];
            // Mirror image of the start tangent: swap the roles of the ends.
            let a = scl2(sub2(p2, p1), 1.0 / d12);
            let d23 = interval(p2, p3);
            let b = scl2(sub2(p3, p1), 1.0 / (d12 + d23));
            let c = scl2(sub2(p3, p2), 1.0 / d23);
            scl2(add2(sub2(a, b), c), d12)
        };
        out.push(CubicSegment {
            p0: p1,
            p1: add2(p1, scl2(m1, 1.0 / 3.0)),
            p2: sub2(p2, scl2(m2, 1.0 / 3.0)),
            p3: p2,
        });
    }
    out
}

/// Uniform samples along each segment (the shared knot belongs to the later
/// segment, so knots are sampled bitwise exactly), plus the final endpoint.
fn sample_segments(
    segments: &[CubicSegment],
    knots: &[(P2, Option<usize>)],
    per_segment: usize,
) -> Vec<ImmersionSample> {
    let mut samples = Vec::with_capacity(segments.len() * per_segment + 1);
    for (i, seg) in segments.iter().enumerate() {
        for j in 0..per_segment {
            let t = j as f64 / per_segment as f64;
            samples.push(ImmersionSample {
                point: seg.eval(t),
                tangent: unit_tangent(seg, t),
                passage: knots[i].1,
            });
        }
    }
    let last = segments.last().unwrap();
    samples.push(ImmersionSample {
        point: last.eval(1.0),
        tangent: unit_tangent(last, 1.0),
        passage: knots[knots.len() - 1].1,
    });
    samples
}

pub(super) fn unit_tangent(seg: &CubicSegment, t: f64) -> P2 {
    let d = seg.derivative(t);
    let n = norm2(d);
    if n > 1e-12 {
        scl2(d, 1.0 / n)
    } else {
        normalize2(sub2(seg.p3, seg.p0))
    }
}

/// One record per edge: which passages cross where, with the measured angle.
fn crossing_records(
    divide: &SlalomDivide,
    frames: &[Frame],
    m_knots: &[usize],
    midpoints: &[P2],
    samples: &[ImmersionSample],
    cfg: &LayoutConfig,
) -> Vec<CrossingRecord> {
    let tour = divide.tour();
    (1..=frames.len() / 2)
        .map(|v| {
            let down = tour
                .iter()
                .position(|p| p.edge_child == v && p.downward)
                .expect("every edge has a downward passage");
            let up = tour
                .iter()
                .position(|p| p.edge_child == v && !p.downward)
                .expect("every edge has an upward passage");
            let down_sample = m_knots[down] * cfg.samples_per_segment;
            let up_sample = m_knots[up] * cfg.samples_per_segment;
            let cos = dot2(samples[down_sample].tangent, samples[up_sample].tangent)
                .abs()
                .clamp(0.0, 1.0);
            CrossingRecord {
                edge_child: v,
                point: midpoints[v - 1],
                down_passage: down,
                up_passage: up,
                down_sample,
                up_sample,
                angle_degrees: cos.acos().to_degrees(),
            }
        })
        .collect()
}

fn violation(axiom: DivideAxiom, at: P2, detail: String) -> GeometryError {
    GeometryError::AxiomViolation {
        axiom,
        x: at[0],
        y: at[1],
        detail,
    }
}

/// Numerically re-checks the divide axioms on the sampled curve; see the
/// module documentation for what each check certifies.
fn verify_immersion(
    divide: &SlalomDivide,
    cfg: &LayoutConfig,
    imm: &DivideImmersion,
    frames: &[Frame],
    midpoints: &[P2],
) -> GeometryResult<()> {
    let samples = &imm.samples;
    let n_samples = samples.len();
    let tol = cfg.sphere_tolerance;
    let min_angle = cfg.min_crossing_angle_degrees;

    // Endpoints on the circle, everything else strictly inside.
    for end in [0, n_samples - 1] {
        let r = norm2(samples[end].point);
        if (r - 1.0).abs() > tol {
            return Err(violation(
                DivideAxiom::EndpointsOnBoundary,
                samples[end].point,
                format!("curve end at radius {r:.12}, expected 1"),
            ));
        }
    }
    for s in &samples[1..n_samples - 1] {
        if norm2(s.point) >= 1.0 - tol {
            return Err(violation(
                DivideAxiom::EndpointsOnBoundary,
                s.point,
                "interior sample reaches the boundary circle".into(),
            ));
        }
    }

    // The ends must cut the circle transversally: angle between the end
    // tangent and the circle's tangent line (radial construction gives 90).
    for end in [0, n_samples - 1] {
        let radial = normalize2(samples[end].point);
        let angle = dot2(samples[end].tangent, radial)
            .abs()
            .clamp(0.0, 1.0)
            .asin()
            .to_degrees();
        if angle < min_angle {
            return Err(violation(
                DivideAxiom::TransversalToBoundary,
                samples[end].point,
                format!("end meets the circle at {angle:.3} degrees"),
            ));
        }
    }

    // Proximity sweep over all non-adjacent polyline segments: contacts must
    // be double points at edge midpoints, everything else keeps a minimum
    // separation.
    let segs: Vec<(P2, P2)> = samples
        .windows(2)
        .map(|w| (w[0].point, w[1].point))
        .collect();
    let grid = SegmentGrid::new(&segs, cfg.min_separation);
    let mut cluster_passages: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); midpoints.len()];
    for (i, j) in grid.candidate_pairs() {
        let (i, j) = (i as usize, j as usize);
        if j - i <= 1 {
            continue;
        }
        let (d, at, _) = segment_closest2(segs[i].0, segs[i].1, segs[j].0, segs[j].1);
        if d > TOUCH_TOLERANCE {
            if d < cfg.min_separation {
                return Err(violation(
                    DivideAxiom::TransversalCrossings,
                    at,
                    format!("strands pass within {d:.3e} without crossing"),
                ));
            }
            continue;
        }
        let (edge, md) = midpoints
            .iter()
            .enumerate()
            .map(|(e, &mp)| (e, dist2(at, mp)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if md > CLUSTER_TOLERANCE {
            return Err(violation(
                DivideAxiom::TransversalCrossings,
                at,
                format!(
                    "self-contact away from every edge midpoint \
                     (segments {i}/{j}, passages {:?}/{:?})",
                    samples[i].passage, samples[j].passage
                ),
            ));
        }
        for seg in [i, j] {
            match samples[seg].passage {
                Some(p) => {
                    cluster_passages[edge].insert(p);
                }
                None => {
                    return Err(violation(
                        DivideAxiom::TransversalCrossings,
                        at,
                        "boundary tail touches the curve".into(),
                    ));
                }
            }
        }
    }
    for rec in &imm.crossings {
        let expected: BTreeSet<usize> = [rec.down_passage, rec.up_passage].into();
        let got = &cluster_passages[rec.edge_child - 1];
        if *got != expected {
            return Err(violation(
                DivideAxiom::CrossingPerEdge,
                rec.point,
                format!(
                    "edge {} crossed by passages {:?}, expected {:?}",
                    rec.edge_child, got, expected
                ),
            ));
        }
        if rec.angle_degrees < min_angle {
            return Err(violation(
                DivideAxiom::TransversalCrossings,
                rec.point,
                format!("crossing angle {:.3} degrees", rec.angle_degrees),
            ));
        }
        // Both strands must also be transversal to the edge they cross.
        let edge_dir = frames[rec.down_passage].u;
        for s in [rec.down_sample, rec.up_sample] {
            let angle = cross2(samples[s].tangent, edge_dir)
                .abs()
                .clamp(0.0, 1.0)
                .asin()
                .to_degrees();
            if angle < min_angle {
                return Err(violation(
                    DivideAxiom::CrossingPerEdge,
                    rec.point,
                    format!("strand meets its edge at {angle:.3} degrees"),
                ));
            }
        }
    }

    // The curve may meet a tree edge only at that edge's midpoint.
    let tree = divide.tree();
    let positions = &imm.vertex_positions;
    for (e, &(p, c)) in tree.edges().iter().enumerate() {
        let (a, b) = (positions[p], positions[c]);
        for seg in &segs {
            let (d, at, _) = segment_closest2(seg.0, seg.1, a, b);
            if d <= TOUCH_TOLERANCE {
                if dist2(at, midpoints[e]) > CLUSTER_TOLERANCE {
                    return Err(violation(
                        DivideAxiom::CrossingPerEdge,
                        at,
                        format!("curve meets edge {} away from its midpoint", e + 1),
                    ));
                }
            } else if d < cfg.min_separation {
                return Err(violation(
                    DivideAxiom::CrossingPerEdge,
                    at,
                    format!("curve grazes edge {} at distance {d:.3e}", e + 1),
                ));
            }
        }
    }

    // Vertices stay clear of the curve, and the geometric stub order at
    // every double point matches the combinatorial rotation, so the face
    // structure of the drawing is the face structure of the divide.
    for (v, &pos) in positions.iter().enumerate() {
        for seg in &segs {
            let d = point_segment_distance2(pos, seg.0, seg.1);
            if d < 0.5 * imm.clearance {
                return Err(violation(
                    DivideAxiom::RegionPerVertex,
                    pos,
                    format!("vertex {v} within {d:.3e} of the curve"),
                ));
            }
        }
    }
    for rec in &imm.crossings {
        let m = rec.point;
        let fd = &frames[rec.down_passage];
        let fu = &frames[rec.up_passage];
        let mut stubs = [
            (Stub::DIn, sub2(fd.q[3], m)),
            (Stub::DOut, sub2(fd.q[5], m)),
            (Stub::UIn, sub2(fu.q[3], m)),
            (Stub::UOut, sub2(fu.q[5], m)),
        ];
        stubs.sort_by(|a, b| a.1[1].atan2(a.1[0]).total_cmp(&b.1[1].atan2(b.1[0])));
        let geometric: Vec<Stub> = stubs.iter().map(|&(s, _)| s).collect();
        let combinatorial = divide.crossings()[rec.edge_child - 1].rotation();
        let matched = (0..4).any(|shift| {
            (0..4).all(|i| geometric[(i + shift) % 4] == combinatorial[i])
        });
        if !matched {
            return Err(violation(
                DivideAxiom::RegionPerVertex,
                m,
                format!(
                    "stub rotation at crossing {} is {:?}, expected {:?}",
                    rec.edge_child, geometric, combinatorial
                ),
            ));
        }
    }

    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divide::build_divide;
    use crate::tree::{enumerate_trees, CayleyCode, Tree};
    use std::str::FromStr;

    fn immersion(code: &str) -> DivideImmersion {
        let tree = Tree::from_code(&CayleyCode::from_str(code).unwrap());
        layout_immersion(&build_divide(&tree), &LayoutConfig::default()).unwrap()
    }

    #[test]
    fn trefoil_layout_hits_the_midpoint_exactly() {
        let imm = immersion("[0]");
        assert_eq!(imm.crossings().len(), 1);
        let rec = imm.crossings()[0];
        let mid = scl2(
            add2(imm.vertex_positions()[0], imm.vertex_positions()[1]),
            0.5,
        );
        assert_eq!(rec.point, mid);
        assert_eq!(imm.samples()[rec.down_sample].point, mid);
        assert_eq!(imm.samples()[rec.up_sample].point, mid);
        // The swap-window proportions fix the crossing angle at 2*atan(1/2).
        let expected = 2.0 * 0.5f64.atan().to_degrees();
        assert!((rec.angle_degrees - expected).abs() < 1e-6);
    }

    #[test]
    fn endpoints_sit_on_the_circle_with_radial_tangents() {
        let imm = immersion("[0,1,1,2]");
        let first = imm.samples().first().unwrap();
        let last = imm.samples().last().unwrap();
        for s in [first, last] {
            assert!((norm2(s.point) - 1.0).abs() < 1e-12);
            let radial = normalize2(s.point);
            assert!(dot2(s.tangent, radial).abs() > 1.0 - 1e-9);
        }
        // Tails flank the root edge: one end west, one east of it.
        assert!(first.point[0] < 0.0 && last.point[0] > 0.0);
    }

    #[test]
    fn one_crossing_per_edge_for_named_trees() {
        for (code, edges) in [
            ("[0]", 1),
            ("[0,1]", 2),
            ("[0,1,1]", 3),
            ("[0,1,1,1]", 4),
            ("[0,1,1,2]", 4),
            ("[0,1,2,2]", 4),
            ("[0,1,1,2,4]", 5),
        ] {
            let imm = immersion(code);
            assert_eq!(imm.crossings().len(), edges, "{code}");
            for (e, rec) in imm.crossings().iter().enumerate() {
                assert_eq!(rec.edge_child, e + 1);
            }
        }
    }

    #[test]
    fn every_small_tree_lays_out_cleanly() {
        for code in enumerate_trees(8) {
            let tree = Tree::from_code(&code);
            let divide = build_divide(&tree);
            let imm = layout_immersion(&divide, &LayoutConfig::default())
                .unwrap_or_else(|e| panic!("{code}: {e}"));
            assert_eq!(imm.crossings().len(), tree.edge_count());
        }
    }

    #[test]
    fn samples_have_unit_tangents_and_stay_in_the_disk() {
        let imm = immersion("[0,1,2,2]");
        for s in imm.samples() {
            assert!((norm2(s.tangent) - 1.0).abs() < 1e-9);
            assert!(norm2(s.point) <= 1.0 + 1e-12);
        }
        let interior = &imm.samples()[1..imm.samples().len() - 1];
        assert!(interior.iter().all(|s| norm2(s.point) < 1.0));
    }

    #[test]
    fn layout_is_deterministic() {
        let a = immersion("[0,1,1,2]");
        let b = immersion("[0,1,1,2]");
        assert_eq!(a.samples().len(), b.samples().len());
        for (x, y) in a.samples().iter().zip(b.samples()) {
            assert_eq!(x.point, y.point);
            assert_eq!(x.tangent, y.tangent);
        }
    }

    #[test]
    fn passage_provenance_covers_the_tour() {
        let imm = immersion("[0,1]");
        let seen: std::collections::BTreeSet<usize> =
            imm.samples().iter().filter_map(|s| s.passage).collect();
        assert_eq!(seen, (0..4).collect());
        assert_eq!(imm.samples().first().unwrap().passage, None);
        assert_eq!(imm.samples().last().unwrap().passage, None);
    }

    #[test]
    fn config_validation_rejects_nonsense() {
        let mut cfg = LayoutConfig::default();
        cfg.samples_per_segment = 2;
        assert!(matches!(
            LayoutConfig::validate(&cfg),
            Err(GeometryError::BadConfig(_))
        ));
        let mut cfg = LayoutConfig::default();
        cfg.tree_bottom = 0.9;
        assert!(LayoutConfig::validate(&cfg).is_err());
        let mut cfg = LayoutConfig::default();
        cfg.clearance_fraction = -1.0;
        assert!(LayoutConfig::validate(&cfg).is_err());
    }
}
