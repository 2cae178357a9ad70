//! Fixed-dimension vector helpers and a uniform grid for segment proximity
//! queries. Everything works on plain `[f64; N]` arrays; the grid reports
//! candidate pairs in sorted order so callers stay deterministic even though
//! the buckets live in a hash map.

use std::collections::HashMap;

pub(super) type P2 = [f64; 2];

pub(super) fn add2(a: P2, b: P2) -> P2 {
    [a[0] + b[0], a[1] + b[1]]
}

pub(super) fn sub2(a: P2, b: P2) -> P2 {
    [a[0] - b[0], a[1] - b[1]]
}

pub(super) fn scl2(a: P2, s: f64) -> P2 {
    [a[0] * s, a[1] * s]
}

pub(super) fn dot2(a: P2, b: P2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub(super) fn cross2(a: P2, b: P2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub(super) fn norm2(a: P2) -> f64 {
    dot2(a, a).sqrt()
}

pub(super) fn dist2(a: P2, b: P2) -> f64 {
    norm2(sub2(a, b))
}

pub(super) fn normalize2(a: P2) -> P2 {
    let n = norm2(a);
    debug_assert!(n > 0.0, "normalizing the zero vector");
    scl2(a, 1.0 / n)
}

/// Left-hand normal: the direction 90 degrees counterclockwise from `a`.
pub(super) fn left_normal2(a: P2) -> P2 {
    [-a[1], a[0]]
}

pub(super) type P3 = [f64; 3];
pub(super) type P4 = [f64; 4];

pub(super) fn dot3(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(super) fn add3(a: P3, b: P3) -> P3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub(super) fn scl3(a: P3, s: f64) -> P3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub(super) fn norm3(a: P3) -> f64 {
    dot3(a, a).sqrt()
}

pub(super) fn normalize3(a: P3) -> P3 {
    let n = norm3(a);
    debug_assert!(n > 0.0, "normalizing the zero vector");
    scl3(a, 1.0 / n)
}

pub(super) fn cross3(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(super) fn dot4(a: P4, b: P4) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

pub(super) fn sub4(a: P4, b: P4) -> P4 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

pub(super) fn scl4(a: P4, s: f64) -> P4 {
    [a[0] * s, a[1] * s, a[2] * s, a[3] * s]
}

pub(super) fn norm4(a: P4) -> f64 {
    dot4(a, a).sqrt()
}

pub(super) fn dist4(a: P4, b: P4) -> f64 {
    norm4(sub4(a, b))
}

/// Distance from point `p` to the segment `a..b`.
pub(super) fn point_segment_distance2(p: P2, a: P2, b: P2) -> f64 {
    let ab = sub2(b, a);
    let len2 = dot2(ab, ab);
    if len2 <= 0.0 {
        return dist2(p, a);
    }
    let t = (dot2(sub2(p, a), ab) / len2).clamp(0.0, 1.0);
    dist2(p, add2(a, scl2(ab, t)))
}

/// Closest approach of two segments: distance and the realizing points.
///
/// Clamped quadratic minimization (the standard two-segment case split);
/// exact enough for the tolerances used here, and symmetric in the inputs
/// up to roundoff.
pub(super) fn segment_closest2(p1: P2, q1: P2, p2: P2, q2: P2) -> (f64, P2, P2) {
    let d1 = sub2(q1, p1);
    let d2 = sub2(q2, p2);
    let r = sub2(p1, p2);
    let a = dot2(d1, d1);
    let e = dot2(d2, d2);
    let f = dot2(d2, r);
    let tiny = 1e-30;
    let (s, t);
    if a <= tiny && e <= tiny {
        s = 0.0;
        t = 0.0;
    } else if a <= tiny {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = dot2(d1, r);
        if e <= tiny {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = dot2(d1, d2);
            let denom = a * e - b * b;
            let s0 = if denom > tiny {
                ((b * f - c * e) / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t = 0.0;
                s = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t = 1.0;
                s = ((b - c) / a).clamp(0.0, 1.0);
            } else {
                t = t0;
                s = s0;
            }
        }
    }
    let c1 = add2(p1, scl2(d1, s));
    let c2 = add2(p2, scl2(d2, t));
    (dist2(c1, c2), c1, c2)
}

/// Uniform grid over 2D segments. Each segment's bounding box, padded by
/// the query distance, is registered in every cell it overlaps, so any two
/// segments closer than the padding share at least one cell.
pub(super) struct SegmentGrid {
    buckets: HashMap<(i64, i64), Vec<u32>>,
}

impl SegmentGrid {
    pub(super) fn new(segments: &[(P2, P2)], pad: f64) -> SegmentGrid {
        let max_len = segments
            .iter()
            .map(|&(a, b)| dist2(a, b))
            .fold(0.0_f64, f64::max);
        let cell = (2.0 * max_len.max(pad)).max(1e-9);
        let mut buckets: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
        for (idx, &(a, b)) in segments.iter().enumerate() {
            let lo_x = ((a[0].min(b[0]) - pad) / cell).floor() as i64;
            let hi_x = ((a[0].max(b[0]) + pad) / cell).floor() as i64;
            let lo_y = ((a[1].min(b[1]) - pad) / cell).floor() as i64;
            let hi_y = ((a[1].max(b[1]) + pad) / cell).floor() as i64;
            for ix in lo_x..=hi_x {
                for iy in lo_y..=hi_y {
                    buckets.entry((ix, iy)).or_default().push(idx as u32);
                }
            }
        }
        SegmentGrid { buckets }
    }

    /// All index pairs `(i, j)` with `i < j` that share a cell, sorted and
    /// deduplicated.
    pub(super) fn candidate_pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for bucket in self.buckets.values() {
            for (k, &i) in bucket.iter().enumerate() {
                for &j in &bucket[k + 1..] {
                    out.push((i.min(j), i.max(j)));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    #[cfg(test)]
    pub(super) fn cell_size(&self) -> f64 {
        self.cell
    }
}
