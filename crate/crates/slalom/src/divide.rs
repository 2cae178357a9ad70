//! The combinatorial slalom divide of a rooted planar tree.
//!
//! The slalom curve follows the contour of the tree at a small offset,
//! switching sides once in the middle of every edge traversal. Each edge is
//! traversed twice (down into the subtree and back up), the two strands
//! switch sides in the same window, and since they run in opposite
//! directions they cross exactly once: one transversal double point per
//! edge, in the interior of the edge.
//!
//! Everything here is exact combinatorics. The walk itself is a state
//! machine on (directed edge, relative side); the relative side flips at
//! every midpoint and is preserved while wrapping around a vertex, which
//! also selects the next edge: hugging the tree on the right continues to
//! the rotationally next edge, on the left to the previous one. From the
//! walk we recover the cyclic order of the four curve stubs at every
//! crossing; those rotations define a planar map whose faces are traced
//! combinatorially and then identified: one interior region per non-root
//! vertex, the region between the curve's two boundary tails (holding the
//! root), and one vertex-free region along the rest of the boundary circle.
//! The face count `crossings + 3` (including the face outside the circle)
//! certifies, via Euler's formula, that the recorded rotations really are
//! planar.

use crate::dynkin::DynkinTree;
use crate::tree::Tree;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DivideError {
    #[error("gamma graph has an odd circuit; the divide structure upstream is corrupt")]
    OddCircuit,
    #[error("fiber surface has {found} boundary components, expected 1")]
    BoundaryComponents { found: usize },
}

pub type DivideResult<T> = Result<T, DivideError>;

/// Relative side of the travel direction; `Left` means the curve runs on
/// the left of the tree edge it accompanies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// One traversal of a tree edge by the curve. Edges are named by their
/// child vertex; `downward` runs parent to child.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Passage {
    pub edge_child: usize,
    pub downward: bool,
    /// Side (relative to the travel direction) on which the strand enters
    /// the edge; it leaves on the other side.
    pub enters_left: bool,
}

/// The four curve stubs at a crossing, named by strand and direction:
/// the downward strand enters from the parent side (`DIn`) and exits on the
/// child side (`DOut`); the upward strand mirrors it (`UIn` child side,
/// `UOut` parent side).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stub {
    DIn,
    DOut,
    UIn,
    UOut,
}

/// A crossing of the divide, one per tree edge, sitting in the interior of
/// that edge.
#[derive(Debug, Clone, Copy)]
pub struct Crossing {
    pub edge_child: usize,
    /// Whether the downward strand enters the edge on its left. This is the
    /// crossing's chirality: it fixes the counterclockwise order of stubs.
    pub enters_left: bool,
}

impl Crossing {
    /// Counterclockwise cyclic order of the four stubs, starting from the
    /// slot conventionally numbered 0. Derived from the offset picture with
    /// the edge pointing from parent (south) to child (north).
    pub fn rotation(&self) -> [Stub; 4] {
        if self.enters_left {
            // Down-strand: SW in, NE out; up-strand: NW in, SE out.
            [Stub::UOut, Stub::DOut, Stub::UIn, Stub::DIn]
        } else {
            // Mirror image: SE in, NW out; NE in, SW out.
            [Stub::DIn, Stub::UIn, Stub::DOut, Stub::UOut]
        }
    }

    pub fn slot_of(&self, stub: Stub) -> usize {
        self.rotation().iter().position(|&s| s == stub).unwrap()
    }
}

/// Identifies a stub as (crossing index, rotation slot). Crossing `e - 1`
/// sits on the edge whose child is `e`.
pub type StubRef = (usize, usize);

/// One step of a closed walk on the gamma graph, expressed in divide terms:
/// an arc between two crossings, or a square side cutting a corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaStep {
    /// Inter-crossing arc of the curve, from an exit stub to an entry stub.
    Arc { from: StubRef, to: StubRef },
    /// Square side at `crossing` from `from_slot` to `to_slot` (adjacent
    /// slots in the rotation).
    Side {
        crossing: usize,
        from_slot: usize,
        to_slot: usize,
    },
}

/// Planar map with explicit rotations; dart `2k` / `2k+1` are the two
/// directions of edge `k`, and `head(d)` is the vertex the dart points to.
struct Map {
    head: Vec<usize>,
    rotation: Vec<Vec<usize>>, // outgoing darts, counterclockwise
}

impl Map {
    fn new(vertices: usize) -> Map {
        Map {
            head: Vec::new(),
            rotation: vec![Vec::new(); vertices],
        }
    }

    /// Allocates the dart pair of an edge; rotations are filled separately.
    fn add_edge(&mut self, u: usize, v: usize) -> (usize, usize) {
        let d = self.head.len();
        self.head.push(v);
        self.head.push(u);
        (d, d + 1)
    }

    fn rev(d: usize) -> usize {
        d ^ 1
    }

    fn tail(&self, d: usize) -> usize {
        self.head[Map::rev(d)]
    }

    /// Dart following `d` along the face on its left: the clockwise-next
    /// outgoing dart after `rev(d)` at the head vertex.
    fn face_next(&self, d: usize) -> usize {
        let v = self.head[d];
        let rot = &self.rotation[v];
        let i = rot
            .iter()
            .position(|&x| x == Map::rev(d))
            .expect("dart missing from rotation");
        rot[(i + rot.len() - 1) % rot.len()]
    }

    /// All faces as dart cycles; every dart lies on exactly one face.
    fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.head.len()];
        let mut out = Vec::new();
        for start in 0..self.head.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                cycle.push(d);
                d = self.face_next(d);
            }
            out.push(cycle);
        }
        out
    }
}

/// The combinatorial slalom divide: crossings with their rotations, the
/// passage sequence of the curve, and the regions of the disk.
pub struct SlalomDivide {
    tree: Tree,
    tour: Vec<Passage>,
    crossings: Vec<Crossing>,
    map: Map,
    faces: Vec<Vec<usize>>,
    /// `region_face[v - 1]` is the face holding vertex `v`.
    region_face: Vec<usize>,
    root_region_face: usize,
    empty_region_face: usize,
}

/// Builds the divide of a tree. The tree type guarantees at least one edge
/// (a divide needs an edge to cross), so this cannot fail on valid input;
/// internal consistency is enforced by assertions.
pub fn build_divide(tree: &Tree) -> SlalomDivide {
    let n = tree.edge_count();
    let tour = contour_tour(tree);
    debug_assert_eq!(tour.len(), 2 * n);

    // Chirality of each crossing comes from its downward passage.
    let mut enters_left = vec![None; n];
    for p in &tour {
        if p.downward {
            enters_left[p.edge_child - 1] = Some(p.enters_left);
        }
    }
    let crossings: Vec<Crossing> = (0..n)
        .map(|i| Crossing {
            edge_child: i + 1,
            enters_left: enters_left[i].expect("every edge is traversed downward"),
        })
        .collect();
    // The walk starts on the left of the root edge; the root crossing's
    // tail corners sit south, flanking the root.
    assert!(crossings[0].enters_left);

    // Map vertices: crossings 0..n, then the curve endpoints P1, P2.
    let p1 = n;
    let p2 = n + 1;
    let mut map = Map::new(n + 2);
    let mut stub_dart: Vec<[Option<usize>; 4]> = vec![[None; 4]; n];

    let stub_ref = |p: &Passage, entering: bool| -> StubRef {
        let c = &crossings[p.edge_child - 1];
        let stub = match (p.downward, entering) {
            (true, true) => Stub::DIn,
            (true, false) => Stub::DOut,
            (false, true) => Stub::UIn,
            (false, false) => Stub::UOut,
        };
        (p.edge_child - 1, c.slot_of(stub))
    };

    // Tail from P1 into the first passage.
    let first = stub_ref(&tour[0], true);
    let (tail1_out, tail1_in) = map.add_edge(p1, first.0);
    stub_dart[first.0][first.1] = Some(tail1_in);
    // Arcs between consecutive passages.
    for k in 0..tour.len() - 1 {
        let from = stub_ref(&tour[k], false);
        let to = stub_ref(&tour[k + 1], true);
        let (d_from, d_to) = map.add_edge(from.0, to.0);
        stub_dart[from.0][from.1] = Some(d_from);
        stub_dart[to.0][to.1] = Some(d_to);
    }
    // Tail from the last passage out to P2.
    let last = stub_ref(&tour[tour.len() - 1], false);
    let (tail2_out, _) = map.add_edge(last.0, p2);
    stub_dart[last.0][last.1] = Some(tail2_out);
    // Boundary circle: the short arc passes the root between the tails,
    // the long arc closes up around the rest of the disk.
    let (short_12, short_21) = map.add_edge(p1, p2);
    let (long_12, long_21) = map.add_edge(p1, p2);

    // Rotations. Crossings list their stubs' outgoing darts in rotation
    // order; the tail stubs' outgoing darts are the reversed tail darts.
    let mut stub_out = stub_dart.clone();
    stub_out[first.0][first.1] = Some(Map::rev(tail1_in));
    for c in 0..n {
        map.rotation[c] = (0..4)
            .map(|s| {
                let d = stub_out[c][s].expect("every stub carries an arc");
                if map.tail(d) == c {
                    d
                } else {
                    Map::rev(d)
                }
            })
            .collect();
    }
    // P1 sits on the circle west of the root: counterclockwise it sees the
    // short arc (east), its tail (into the disk), then the long arc (west).
    map.rotation[p1] = vec![short_12, tail1_out, long_12];
    // P2 mirrors it east of the root.
    map.rotation[p2] = vec![long_21, Map::rev(tail2_out), short_21];

    let faces = map.faces();
    // Euler certificate of planarity: V - E + F = 2 forces F = n + 3.
    assert_eq!(faces.len(), n + 3, "rotation system is not planar");
    let mut face_of = vec![usize::MAX; map.head.len()];
    for (f, cycle) in faces.iter().enumerate() {
        for &d in cycle {
            face_of[d] = f;
        }
    }

    // The region holding vertex v lies in the corner between the two
    // child-side stubs of its edge's crossing: it is on the left of the
    // incoming arc at the crossing's northwest stub.
    let mut region_face = Vec::with_capacity(n);
    for v in 1..=n {
        let c = &crossings[v - 1];
        let nw = if c.enters_left { Stub::UIn } else { Stub::DOut };
        let slot = c.slot_of(nw);
        // The arc dart arriving at a stub is the reversal of the outgoing
        // dart recorded there (this also holds for loop arcs at leaves).
        let incoming = Map::rev(map.rotation[v - 1][slot]);
        region_face.push(face_of[incoming]);
    }
    // Root region: the corner between the two tails, seen on the left of
    // the dart running from P2 back into the root crossing.
    let root_region_face = face_of[Map::rev(tail2_out)];
    // Vertex-free boundary region: left of the long circle arc from P2.
    let empty_region_face = face_of[long_21];
    // Outside the circle: left of the short arc from P2 to P1.
    let outer_face = face_of[short_21];

    let mut distinct: Vec<usize> = region_face.clone();
    distinct.extend([root_region_face, empty_region_face, outer_face]);
    distinct.sort_unstable();
    distinct.dedup();
    assert_eq!(distinct.len(), n + 3, "regions are not pairwise distinct");

    SlalomDivide {
        tree: tree.clone(),
        tour,
        crossings,
        map,
        faces,
        region_face,
        root_region_face,
        empty_region_face,
    }
}

/// The contour walk: a deterministic state machine on (directed edge,
/// entry side). Traversing an edge flips the relative side at the
/// midpoint; wrapping around a vertex keeps it and picks the next edge
/// (right side: rotationally next, left side: previous). The walk starts
/// on the left of the root edge and ends when it returns to the root.
fn contour_tour(tree: &Tree) -> Vec<Passage> {
    // Counterclockwise rotation at each vertex, with edges drawn upward
    // and children laid out left to right: parent first, then children
    // from rightmost to leftmost.
    let rotation = |v: usize| -> Vec<usize> {
        let mut rot = Vec::new();
        if let Some(p) = tree.parent(v) {
            rot.push(p);
        }
        rot.extend(tree.children(v).iter().rev());
        rot
    };

    let mut tour = Vec::with_capacity(2 * tree.edge_count());
    let mut from = 0usize;
    let mut to = 1usize;
    let mut enter = Side::Left;
    loop {
        tour.push(Passage {
            edge_child: from.max(to),
            downward: to > from,
            enters_left: enter == Side::Left,
        });
        let exit = enter.flip();
        if to == 0 {
            break;
        }
        let rot = rotation(to);
        let i = rot.iter().position(|&w| w == from).unwrap();
        let next = match exit {
            Side::Right => rot[(i + 1) % rot.len()],
            Side::Left => rot[(i + rot.len() - 1) % rot.len()],
        };
        from = to;
        to = next;
        enter = exit;
    }
    tour
}

impl SlalomDivide {
    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    /// Passages of the curve in order, two per edge.
    pub fn tour(&self) -> &[Passage] {
        &self.tour
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn interior_region_count(&self) -> usize {
        self.region_face.len()
    }

    /// Inter-crossing arcs of the curve in passage order, as stub pairs.
    pub fn arcs(&self) -> Vec<(StubRef, StubRef)> {
        let mut out = Vec::new();
        for k in 0..self.tour.len() - 1 {
            let from = self.passage_stub(k, false);
            let to = self.passage_stub(k + 1, true);
            out.push((from, to));
        }
        out
    }

    fn passage_stub(&self, k: usize, entering: bool) -> StubRef {
        let p = &self.tour[k];
        let c = &self.crossings[p.edge_child - 1];
        let stub = match (p.downward, entering) {
            (true, true) => Stub::DIn,
            (true, false) => Stub::DOut,
            (false, true) => Stub::UIn,
            (false, false) => Stub::UOut,
        };
        (p.edge_child - 1, c.slot_of(stub))
    }

    /// The gamma-graph walk around the region of vertex `v`: alternating
    /// arcs and square sides, read from the region's face cycle.
    pub fn region_walk(&self, v: usize) -> Vec<GammaStep> {
        let face = &self.faces[self.region_face[v - 1]];
        let mut steps = Vec::new();
        let len = face.len();
        for (idx, &d) in face.iter().enumerate() {
            let from_c = self.map.tail(d);
            let to_c = self.map.head[d];
            let from_slot = self.slot_of_dart(from_c, d);
            let to_slot = self.slot_of_dart(to_c, Map::rev(d));
            steps.push(GammaStep::Arc {
                from: (from_c, from_slot),
                to: (to_c, to_slot),
            });
            // Corner between this dart and the next: the face continues
            // clockwise-adjacent from the arrival stub.
            let d_next = face[(idx + 1) % len];
            let exit_slot = self.slot_of_dart(to_c, d_next);
            debug_assert_eq!(exit_slot, (to_slot + 3) % 4, "corner is not adjacent");
            steps.push(GammaStep::Side {
                crossing: to_c,
                from_slot: to_slot,
                to_slot: exit_slot,
            });
        }
        steps
    }

    fn slot_of_dart(&self, crossing: usize, dart: usize) -> usize {
        let rot = &self.map.rotation[crossing];
        rot.iter()
            .position(|&x| x == dart)
            .expect("dart not outgoing at this crossing")
    }

    /// Dart cycles of the two boundary regions (root side, vertex-free
    /// side), for callers that want the cyclic boundary order.
    pub fn boundary_region_faces(&self) -> [&[usize]; 2] {
        [
            &self.faces[self.root_region_face],
            &self.faces[self.empty_region_face],
        ]
    }

    /// Face count including the outer face; `crossings + 3` certifies the
    /// planarity of the construction.
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// True if the face holding vertex `v`'s region touches the given
    /// crossing (used by incidence-connectivity checks).
    pub fn region_touches(&self, v: usize, crossing: usize) -> bool {
        self.faces[self.region_face[v - 1]]
            .iter()
            .any(|&d| self.map.head[d] == crossing || self.map.tail(d) == crossing)
    }
}

/// Unknotting number of the slalom knot: the crossing count of the divide.
pub fn gordian_number(divide: &SlalomDivide) -> usize {
    divide.crossing_count()
}

/// Conway-sphere data: every edge of the tree carries a decomposing
/// sphere, and the spheres that survive to the Bonahon–Siebenmann
/// decomposition are those at edges with an endpoint of valency at least 3
/// or an endpoint at the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    /// All tree edges, as (parent, child) pairs.
    pub conway_edges: Vec<(usize, usize)>,
    /// The decomposition subset of `conway_edges`.
    pub bs_edges: Vec<(usize, usize)>,
    /// Connected components of the tree after cutting the `bs_edges`,
    /// as sorted vertex lists.
    pub pieces: Vec<Vec<usize>>,
}

pub fn conway_decomposition(tree: &Tree) -> DecompositionReport {
    let conway_edges = tree.edges();
    let bs_edges: Vec<(usize, usize)> = conway_edges
        .iter()
        .copied()
        .filter(|&(p, v)| p == 0 || tree.valency(p) >= 3 || tree.valency(v) >= 3)
        .collect();
    // Cut the bs edges and collect components of what remains.
    let n = tree.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for &(p, v) in &conway_edges {
        if !bs_edges.contains(&(p, v)) {
            adj[p].push(v);
            adj[v].push(p);
        }
    }
    let mut seen = vec![false; n];
    let mut pieces = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        pieces.push(comp);
    }
    DecompositionReport {
        conway_edges,
        bs_edges,
        pieces,
    }
}

/// The arborescent (Montesinos-style) presentation: the Dynkin diagram as
/// a planar tree with weight 2 at every vertex, serialized with nested
/// parentheses. For the diagram of `[0,1,2,2]` this is the notation behind
/// the Montesinos knot M(1,(3,1),(3,1),(4,1)); the identification itself is
/// recorded in this comment rather than computed.
pub fn arborescent_notation(delta: &DynkinTree) -> String {
    fn serialize(delta: &DynkinTree, v: usize, parent: Option<usize>, out: &mut String) {
        out.push_str("(2");
        for &w in delta.neighbors(v) {
            if Some(w) != parent {
                out.push(' ');
                serialize(delta, w, Some(v), out);
            }
        }
        out.push(')');
    }
    let mut out = String::new();
    serialize(delta, 0, None, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::dynkin_of;
    use crate::tree::{enumerate_trees, CayleyCode};
    use std::str::FromStr;

    fn divide(code: &str) -> SlalomDivide {
        build_divide(&Tree::from_code(&CayleyCode::from_str(code).unwrap()))
    }

    fn tree(code: &str) -> Tree {
        Tree::from_code(&CayleyCode::from_str(code).unwrap())
    }

    #[test]
    fn trefoil_tour_by_hand() {
        let d = divide("[0]");
        assert_eq!(
            d.tour(),
            &[
                Passage { edge_child: 1, downward: true, enters_left: true },
                Passage { edge_child: 1, downward: false, enters_left: false },
            ]
        );
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.interior_region_count(), 1);
        assert_eq!(d.face_count(), 4);
        // One arc: the loop around the leaf, from the down-exit stub to the
        // up-entry stub of the single crossing.
        let arcs = d.arcs();
        assert_eq!(arcs.len(), 1);
        let c = &d.crossings()[0];
        assert_eq!(arcs[0], ((0, c.slot_of(Stub::DOut)), (0, c.slot_of(Stub::UIn))));
    }

    #[test]
    fn passage_sides_alternate_and_edges_pair_up() {
        for code in enumerate_trees(9) {
            let t = Tree::from_code(&code);
            let d = build_divide(&t);
            let tour = d.tour();
            assert_eq!(tour.len(), 2 * t.edge_count(), "{code}");
            for (k, p) in tour.iter().enumerate() {
                assert_eq!(p.enters_left, k % 2 == 0, "{code}: sides alternate");
            }
            // Each edge appears exactly once per direction, and the two
            // passages enter on opposite relative sides.
            for e in 1..=t.edge_count() {
                let ps: Vec<&Passage> =
                    tour.iter().filter(|p| p.edge_child == e).collect();
                assert_eq!(ps.len(), 2, "{code}: edge {e}");
                assert_ne!(ps[0].downward, ps[1].downward, "{code}: edge {e}");
                assert_ne!(ps[0].enters_left, ps[1].enters_left, "{code}: edge {e}");
            }
        }
    }

    #[test]
    fn deeper_children_are_visited_in_mirrored_order() {
        // At odd depth the walk arrives on the right and sweeps children
        // right to left; at even depth left to right.
        let d = divide("[0,1,1]");
        let downward: Vec<usize> = d
            .tour()
            .iter()
            .filter(|p| p.downward)
            .map(|p| p.edge_child)
            .collect();
        // Children 2, 3 of vertex 1 (depth 1): rightmost (3) first.
        assert_eq!(downward, vec![1, 3, 2]);

        let d = divide("[0,1,2,2]");
        let downward: Vec<usize> = d
            .tour()
            .iter()
            .filter(|p| p.downward)
            .map(|p| p.edge_child)
            .collect();
        // Vertex 2 sits at depth 2: its children 3, 4 go left to right.
        assert_eq!(downward, vec![1, 2, 3, 4]);
    }

    #[test]
    fn counts_match_named_examples() {
        for (code, crossings) in [("[0,1,1,1]", 4), ("[0,1]", 2), ("[0,1,1,2,4]", 5)] {
            let d = divide(code);
            // The [0,1] row: 2 edges -> 2 crossings; the other rows repeat
            // the edge-count identity on the named trees.
            assert_eq!(d.crossing_count(), crossings.max(code.matches(',').count() + 1));
            assert_eq!(d.interior_region_count(), d.crossing_count());
        }
        // Interior regions + crossings = vertex count of the Dynkin diagram.
        for code in ["[0]", "[0,1,1,1]", "[0,1,2,2]", "[0,1,1,2,4]"] {
            let d = divide(code);
            let delta = dynkin_of(&tree(code));
            assert_eq!(
                d.interior_region_count() + d.crossing_count(),
                delta.vertex_count()
            );
        }
    }

    #[test]
    fn every_tree_yields_a_planar_divide_with_distinct_regions() {
        for code in enumerate_trees(9) {
            let t = Tree::from_code(&code);
            // build_divide asserts planarity (face count) and region
            // distinctness internally.
            let d = build_divide(&t);
            assert_eq!(d.face_count(), t.edge_count() + 3, "{code}");
        }
    }

    #[test]
    fn region_crossing_incidence_is_connected() {
        for code in enumerate_trees(8) {
            let t = Tree::from_code(&code);
            let d = build_divide(&t);
            let n = d.crossing_count();
            // Union-find over crossings, merged through shared regions.
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut Vec<usize>, x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            for v in 1..=n {
                let touching: Vec<usize> =
                    (0..n).filter(|&c| d.region_touches(v, c)).collect();
                assert!(!touching.is_empty(), "{code}: empty region boundary");
                for w in &touching[1..] {
                    let (a, b) = (find(&mut parent, touching[0]), find(&mut parent, *w));
                    parent[a] = b;
                }
            }
            let root = find(&mut parent, 0);
            for c in 1..n {
                assert_eq!(find(&mut parent, c), root, "{code}: incidence disconnected");
            }
        }
    }

    #[test]
    fn region_walks_alternate_arcs_and_sides() {
        for code in ["[0]", "[0,1]", "[0,1,1,1]", "[0,1,2,2]", "[0,1,1,2,4]"] {
            let d = divide(code);
            for v in 1..=d.crossing_count() {
                let walk = d.region_walk(v);
                assert!(walk.len() >= 2, "{code} v{v}");
                assert_eq!(walk.len() % 2, 0, "{code} v{v}");
                for (i, step) in walk.iter().enumerate() {
                    match step {
                        GammaStep::Arc { .. } => assert_eq!(i % 2, 0, "{code} v{v}"),
                        GammaStep::Side { .. } => assert_eq!(i % 2, 1, "{code} v{v}"),
                    }
                }
            }
        }
    }

    #[test]
    fn trefoil_region_walk_is_the_loop_plus_one_corner() {
        let d = divide("[0]");
        let walk = d.region_walk(1);
        assert_eq!(walk.len(), 2);
        let c = &d.crossings()[0];
        assert_eq!(
            walk[0],
            GammaStep::Arc {
                from: (0, c.slot_of(Stub::DOut)),
                to: (0, c.slot_of(Stub::UIn))
            }
        );
        // The corner cut at the crossing joins the arrival stub (UIn) to
        // its clockwise neighbour (DOut), closing around the leaf vertex.
        assert_eq!(
            walk[1],
            GammaStep::Side {
                crossing: 0,
                from_slot: c.slot_of(Stub::UIn),
                to_slot: c.slot_of(Stub::DOut)
            }
        );
    }

    #[test]
    fn gordian_numbers_of_named_knots() {
        assert_eq!(gordian_number(&divide("[0,1,1,1]")), 4);
        assert_eq!(gordian_number(&divide("[0,1,2,2]")), 4);
        assert_eq!(gordian_number(&divide("[0]")), 1);
    }

    #[test]
    fn decomposition_edge_rule() {
        let r = conway_decomposition(&tree("[0,1,2,2]"));
        assert_eq!(r.conway_edges, vec![(0, 1), (1, 2), (2, 3), (2, 4)]);
        assert_eq!(r.bs_edges, vec![(0, 1), (1, 2), (2, 3), (2, 4)]);

        // Rooted path: only the root edge fires.
        let r = conway_decomposition(&tree("[0,1,2,3]"));
        assert_eq!(r.bs_edges, vec![(0, 1)]);
        assert_eq!(r.pieces, vec![vec![0], vec![1, 2, 3, 4]]);

        // Valency-4 center: all edges fire.
        let r = conway_decomposition(&tree("[0,1,1,1]"));
        assert_eq!(r.bs_edges.len(), 4);
        assert_eq!(r.pieces.len(), 5);
    }

    #[test]
    fn bs_edges_ignore_child_order() {
        // Two embeddings of the same abstract tree.
        let a = conway_decomposition(&tree("[0,1,1,2]"));
        let b = conway_decomposition(&tree("[0,1,1,3]"));
        assert_eq!(a.bs_edges.len(), b.bs_edges.len());
        let vals = |t: &Tree, edges: &[(usize, usize)]| -> Vec<(usize, usize)> {
            let mut v: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(p, c)| (t.valency(p), t.valency(c)))
                .collect();
            v.sort_unstable();
            v
        };
        assert_eq!(
            vals(&tree("[0,1,1,2]"), &a.bs_edges),
            vals(&tree("[0,1,1,3]"), &b.bs_edges)
        );
    }

    #[test]
    fn arborescent_strings() {
        assert_eq!(arborescent_notation(&dynkin_of(&tree("[0]"))), "(2 (2))");
        // E8 diagram: 8 vertices, all weight 2.
        let s = arborescent_notation(&dynkin_of(&tree("[0,1,1,2]")));
        assert_eq!(s.matches('2').count(), 8);
        assert_eq!(s.matches('(').count(), 8);
        // Diagram of [0,1,2,2]: 8 vertices (Montesinos M(1,(3,1),(3,1),(4,1))).
        let s = arborescent_notation(&dynkin_of(&tree("[0,1,2,2]")));
        assert_eq!(s.matches('(').count(), 8);
    }
}
