//! Dynkin diagrams of rooted planar trees.
//!
//! The diagram of a tree `B` is obtained by subdividing every edge of `B`
//! with a new vertex and then deleting the root together with its half of
//! the subdivided root edge. A tree on `n + 1` vertices therefore yields a
//! bicolored tree on `2n` vertices: `n` "new" vertices (one per edge of `B`,
//! these record the crossings of the slalom curve) and `n` "old" vertices
//! (the non-root vertices of `B`, recording the interior regions). Every
//! edge joins a new vertex to an old one.
//!
//! The diagram's shape decides the geometry of the knot attached to `B`:
//! only the even paths `A(2k)` and the exceptional shapes `E6`, `E8` give
//! torus knots, everything else is hyperbolic.

use crate::matrix::IntMatrix;
use crate::tree::Tree;
use num_bigint::BigInt;
use num_traits::One;

/// Recognized diagram shapes. `n` counts vertices for `A`/`D`; affine shapes
/// follow the standard extended-diagram conventions (`AffineD(n)` has `n + 1`
/// vertices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeClass {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    AffineD(usize),
    AffineE6,
    AffineE7,
    AffineE8,
    Wild,
}

impl ShapeClass {
    /// True for the finite Coxeter shapes `A`, `D`, `E6`, `E7`, `E8`.
    pub fn is_finite_coxeter(&self) -> bool {
        matches!(
            self,
            ShapeClass::A(_) | ShapeClass::D(_) | ShapeClass::E6 | ShapeClass::E7 | ShapeClass::E8
        )
    }

    pub fn is_affine(&self) -> bool {
        matches!(
            self,
            ShapeClass::AffineD(_)
                | ShapeClass::AffineE6
                | ShapeClass::AffineE7
                | ShapeClass::AffineE8
        )
    }
}

impl std::fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ShapeClass::A(n) => write!(f, "A{n}"),
            ShapeClass::D(n) => write!(f, "D{n}"),
            ShapeClass::E6 => write!(f, "E6"),
            ShapeClass::E7 => write!(f, "E7"),
            ShapeClass::E8 => write!(f, "E8"),
            ShapeClass::AffineD(n) => write!(f, "affine D{n}"),
            ShapeClass::AffineE6 => write!(f, "affine E6"),
            ShapeClass::AffineE7 => write!(f, "affine E7"),
            ShapeClass::AffineE8 => write!(f, "affine E8"),
            ShapeClass::Wild => write!(f, "wild"),
        }
    }
}

/// Outcome of the torus-or-hyperbolic dichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hyperbolicity {
    Hyperbolic,
    /// The knot is the `(p, q)` torus knot, hence not hyperbolic.
    TorusKnot { p: usize, q: usize },
}

impl Hyperbolicity {
    pub fn is_hyperbolic(&self) -> bool {
        matches!(self, Hyperbolicity::Hyperbolic)
    }
}

/// Bicolored tree on the subdivision vertices. Indices `0..new_count` are the
/// new (edge-subdividing) vertices, the rest are old vertices of the source
/// tree; the distinguished root of the diagram is new vertex 0 (the midpoint
/// of the deleted root edge).
#[derive(Debug, Clone)]
pub struct DynkinTree {
    adjacency: Vec<Vec<usize>>,
    new_count: usize,
}

impl DynkinTree {
    /// Builds a diagram directly from adjacency lists; used by shape tests
    /// and by callers that already have a bicolored tree.
    pub fn from_adjacency(adjacency: Vec<Vec<usize>>, new_count: usize) -> Self {
        let mut adjacency = adjacency;
        for list in &mut adjacency {
            list.sort_unstable();
        }
        DynkinTree {
            adjacency,
            new_count,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of new (edge) vertices; they occupy indices `0..new_count`.
    pub fn new_count(&self) -> usize {
        self.new_count
    }

    pub fn is_new(&self, v: usize) -> bool {
        v < self.new_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges as `(new, old)` pairs, sorted by new index.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.new_count {
            for &w in &self.adjacency[v] {
                out.push((v, w));
            }
        }
        out
    }

    /// 0/1 adjacency matrix in the bicolored (new first) vertex order.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut m = IntMatrix::zeros(n);
        for v in 0..n {
            for &w in &self.adjacency[v] {
                m.set(v, w, BigInt::one());
            }
        }
        m
    }
}

/// Index of the new vertex subdividing the edge below `child` (edges are
/// named by their lower endpoint, `child >= 1`).
pub fn new_index(child: usize) -> usize {
    child - 1
}

/// Diagram index of old vertex `v` of a source tree with `edge_count` edges.
pub fn old_index(v: usize, edge_count: usize) -> usize {
    edge_count + v - 1
}

/// Subdivides every edge of `tree` and removes the root: new vertex `v - 1`
/// sits on the edge from `parent(v)` to `v`; old vertices keep their labels
/// shifted behind the new block. The root edge's new vertex survives as the
/// diagram root (index 0) with the root's half-edge deleted.
pub fn dynkin_of(tree: &Tree) -> DynkinTree {
    let n = tree.edge_count();
    let mut adjacency = vec![Vec::new(); 2 * n];
    let mut connect = |a: usize, b: usize| {
        adjacency[a].push(b);
        adjacency[b].push(a);
    };
    for v in 1..=n {
        connect(new_index(v), old_index(v, n));
        let p = tree.parent(v).unwrap();
        if p != 0 {
            connect(new_index(v), old_index(p, n));
        }
    }
    DynkinTree::from_adjacency(adjacency, n)
}

/// Walks away from `start` along the path leaving `branch`; returns the edge
/// length if the walk ends at a leaf, or `None` when it runs into another
/// vertex of degree >= 3.
fn leg_length(delta: &DynkinTree, branch: usize, start: usize) -> Option<usize> {
    let mut prev = branch;
    let mut cur = start;
    let mut len = 1;
    loop {
        match delta.degree(cur) {
            1 => return Some(len),
            2 => {
                let next = *delta
                    .neighbors(cur)
                    .iter()
                    .find(|&&w| w != prev)
                    .unwrap();
                prev = cur;
                cur = next;
                len += 1;
            }
            _ => return None,
        }
    }
}

/// Recognizes the classical and affine shapes from degrees and leg lengths;
/// anything else is `Wild`. Works on the unlabeled tree only.
pub fn classify_shape(delta: &DynkinTree) -> ShapeClass {
    let n = delta.vertex_count();
    if n == 0 {
        return ShapeClass::Wild;
    }
    if n == 1 {
        return ShapeClass::A(1);
    }
    let branches: Vec<usize> = (0..n).filter(|&v| delta.degree(v) >= 3).collect();
    match branches.len() {
        0 => ShapeClass::A(n),
        1 => {
            let b = branches[0];
            let mut legs: Vec<usize> = Vec::new();
            for &s in delta.neighbors(b) {
                match leg_length(delta, b, s) {
                    Some(l) => legs.push(l),
                    None => return ShapeClass::Wild,
                }
            }
            legs.sort_unstable();
            match legs.as_slice() {
                [1, 1, 1, 1] => ShapeClass::AffineD(4),
                [1, 1, k] => ShapeClass::D(k + 3),
                [1, 2, 2] => ShapeClass::E6,
                [1, 2, 3] => ShapeClass::E7,
                [1, 2, 4] => ShapeClass::E8,
                [2, 2, 2] => ShapeClass::AffineE6,
                [1, 3, 3] => ShapeClass::AffineE7,
                [1, 2, 5] => ShapeClass::AffineE8,
                _ => ShapeClass::Wild,
            }
        }
        2 => {
            // Affine D(n), n >= 5: two trivalent vertices joined by a path,
            // each carrying two pendant leaves.
            let ok = branches.iter().all(|&b| {
                delta.degree(b) == 3
                    && delta
                        .neighbors(b)
                        .iter()
                        .filter(|&&s| leg_length(delta, b, s) == Some(1))
                        .count()
                        >= 2
            });
            if ok {
                ShapeClass::AffineD(n - 1)
            } else {
                ShapeClass::Wild
            }
        }
        _ => ShapeClass::Wild,
    }
}

/// Torus-or-hyperbolic dichotomy: the knot of a slalom curve fails to be
/// hyperbolic exactly when the diagram is `A(2k)`, `E6` or `E8`, and in
/// those cases it is the torus knot `(2, 2k+1)`, `(3, 4)` or `(3, 5)`.
pub fn hyperbolicity_verdict(delta: &DynkinTree) -> Hyperbolicity {
    match classify_shape(delta) {
        ShapeClass::A(n) if n % 2 == 0 => Hyperbolicity::TorusKnot { p: 2, q: n + 1 },
        ShapeClass::E6 => Hyperbolicity::TorusKnot { p: 3, q: 4 },
        ShapeClass::E8 => Hyperbolicity::TorusKnot { p: 3, q: 5 },
        _ => Hyperbolicity::Hyperbolic,
    }
}
