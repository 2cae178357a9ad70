//! The square graph Γ of a divide, its ribbon thickening, and the
//! monodromy twist word.
//!
//! Replacing every crossing of the divide by a small square yields a graph
//! Γ embedded in the disk: four corner vertices per crossing, the four
//! square sides, and the arcs of the curve between crossings. The two
//! corners where the curve leaves for the boundary circle keep no arc, so
//! Γ is trivalent except at those two corners of the root square.
//!
//! Γ is bipartite, and a proper 2-coloring assigns each vertex a flag
//! telling whether its cyclic edge order agrees or disagrees with the
//! plane's orientation. Thickening Γ with those rotations (reversed at
//! disagreeing vertices) produces an orientable ribbon surface with one
//! boundary component: the fiber of the knot's fibration, of genus equal
//! to the crossing number.
//!
//! Every square and every interior region walk is a circuit of Γ. These
//! circuits are the vanishing cycles: the monodromy is the product of the
//! Dehn twists along them, squares first, then regions. Their intersection
//! numbers are computed honestly on the ribbon surface — strands passing
//! through an edge are laid out in parallel lanes, so all crossings happen
//! inside vertex disks, where two chords cross exactly when their
//! endpoints interleave around the disk boundary.

use crate::divide::{DivideError, DivideResult, GammaStep, SlalomDivide};
use crate::dynkin::DynkinTree;
use crate::matrix::IntMatrix;
use num_bigint::BigInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaEdgeKind {
    /// A side of a crossing square.
    Side,
    /// An arc of the divide between two crossings.
    Arc,
}

/// Edge of Γ between two corner vertices (vertex `4c + s` is slot `s` of
/// crossing `c`).
#[derive(Debug, Clone, Copy)]
pub struct GammaEdge {
    pub a: usize,
    pub b: usize,
    pub kind: GammaEdgeKind,
}

/// The square graph of a divide, with its planar rotation system and the
/// orientation flags of the thickening.
pub struct GammaGraph {
    crossing_count: usize,
    edges: Vec<GammaEdge>,
    /// Counterclockwise cyclic order of edge ids at each vertex.
    rotation: Vec<Vec<usize>>,
    /// Whether the thickened disk at this vertex keeps the plane's
    /// orientation; flags alternate along every edge.
    agree: Vec<bool>,
    /// Arc edge attached at each corner, `None` at the two tail corners.
    arc_at: Vec<[Option<usize>; 4]>,
}

pub fn gamma_graph(divide: &SlalomDivide) -> DivideResult<GammaGraph> {
    let c = divide.crossing_count();
    let stub = |cr: usize, slot: usize| 4 * cr + slot;

    // Square sides first: edge 4*cr + k joins slots k and k+1 of crossing
    // cr, so side ids mirror vertex ids.
    let mut edges: Vec<GammaEdge> = Vec::with_capacity(6 * c - 1);
    for cr in 0..c {
        for k in 0..4 {
            edges.push(GammaEdge {
                a: stub(cr, k),
                b: stub(cr, (k + 1) % 4),
                kind: GammaEdgeKind::Side,
            });
        }
    }
    let mut arc_at: Vec<[Option<usize>; 4]> = vec![[None; 4]; c];
    for (from, to) in divide.arcs() {
        let id = edges.len();
        edges.push(GammaEdge {
            a: stub(from.0, from.1),
            b: stub(to.0, to.1),
            kind: GammaEdgeKind::Arc,
        });
        arc_at[from.0][from.1] = Some(id);
        arc_at[to.0][to.1] = Some(id);
    }

    // Counterclockwise rotation at a corner: the arc points away from the
    // square, then the side to the next slot, then the side to the
    // previous slot.
    let mut rotation = vec![Vec::new(); 4 * c];
    for cr in 0..c {
        for k in 0..4 {
            let v = stub(cr, k);
            if let Some(a) = arc_at[cr][k] {
                rotation[v].push(a);
            }
            rotation[v].push(4 * cr + k);
            rotation[v].push(4 * cr + (k + 3) % 4);
        }
    }

    // Orientation flags: a proper 2-coloring, anchored at corner 0. An odd
    // circuit would make the thickening non-orientable.
    let mut adj = vec![Vec::new(); 4 * c];
    for (id, e) in edges.iter().enumerate() {
        adj[e.a].push((e.b, id));
        adj[e.b].push((e.a, id));
    }
    let mut agree: Vec<Option<bool>> = vec![None; 4 * c];
    agree[0] = Some(true);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let f = agree[v].unwrap();
        for &(w, _) in &adj[v] {
            match agree[w] {
                None => {
                    agree[w] = Some(!f);
                    queue.push_back(w);
                }
                Some(g) if g == f => return Err(DivideError::OddCircuit),
                Some(_) => {}
            }
        }
    }
    let agree: Vec<bool> = agree
        .into_iter()
        .map(|f| f.expect("gamma graph is connected"))
        .collect();

    Ok(GammaGraph {
        crossing_count: c,
        edges,
        rotation,
        agree,
        arc_at,
    })
}

impl GammaGraph {
    pub fn vertex_count(&self) -> usize {
        4 * self.crossing_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_count
    }

    /// Cycle rank of Γ; equals twice the crossing count.
    pub fn first_betti(&self) -> usize {
        self.edge_count() - self.vertex_count() + 1
    }

    pub fn edges(&self) -> &[GammaEdge] {
        &self.edges
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn agrees(&self, v: usize) -> bool {
        self.agree[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Rotations of the abstract oriented thickening: the planar order,
    /// reversed wherever the flag disagrees.
    fn surface_rotation(&self) -> Vec<Vec<usize>> {
        self.rotation
            .iter()
            .zip(&self.agree)
            .map(|(rot, &ok)| {
                if ok {
                    rot.clone()
                } else {
                    rot.iter().rev().copied().collect()
                }
            })
            .collect()
    }
}

/// The thickened Γ: an orientable ribbon surface whose interior is the
/// fiber of the knot's fibration.
pub struct FiberSurface {
    /// Cyclic edge order per vertex on the oriented surface.
    surface_rotation: Vec<Vec<usize>>,
    pub first_betti: usize,
    pub boundary_components: usize,
    pub genus: usize,
}

impl FiberSurface {
    /// The ribbon structure: cyclic edge order per Γ-vertex on the
    /// oriented thickening.
    pub fn surface_rotation(&self) -> &[Vec<usize>] {
        &self.surface_rotation
    }
}

pub fn fiber_surface(gamma: &GammaGraph) -> DivideResult<FiberSurface> {
    let rho = gamma.surface_rotation();
    // Boundary walk of the ribbon surface: arriving at a vertex along an
    // edge, the boundary continues along the next edge of the rotation.
    // Darts 2e / 2e+1 are edge e traversed a->b / b->a.
    let dart_count = 2 * gamma.edge_count();
    let next = |d: usize| -> usize {
        let e = d / 2;
        let v = if d % 2 == 0 {
            gamma.edges()[e].b
        } else {
            gamma.edges()[e].a
        };
        let rot = &rho[v];
        let i = rot.iter().position(|&x| x == e).expect("edge missing");
        let e2 = rot[(i + 1) % rot.len()];
        if gamma.edges()[e2].a == v {
            2 * e2
        } else {
            2 * e2 + 1
        }
    };
    let mut seen = vec![false; dart_count];
    let mut components = 0;
    for start in 0..dart_count {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = next(d);
        }
    }
    if components != 1 {
        return Err(DivideError::BoundaryComponents { found: components });
    }
    let first_betti = gamma.edge_count() - gamma.vertex_count() + 1;
    Ok(FiberSurface {
        surface_rotation: rho,
        first_betti,
        boundary_components: components,
        genus: (first_betti + 1 - components) / 2,
    })
}

/// Directed traversal of a Γ-edge by a circuit.
#[derive(Debug, Clone, Copy)]
struct Step {
    edge: usize,
    from: usize,
    to: usize,
}

/// The monodromy as an ordered product of Dehn twists along the square and
/// region circuits of Γ, labeled by the Dynkin-diagram vertices they
/// realize (`s{v}` for the square on the edge to vertex `v`, `r{v}` for
/// the region around vertex `v`).
pub struct TwistWord {
    labels: Vec<String>,
    pairing: IntMatrix,
    intersection_edges: Vec<(usize, usize)>,
}

pub fn monodromy_word(divide: &SlalomDivide) -> DivideResult<TwistWord> {
    let gamma = gamma_graph(divide)?;
    let rho = gamma.surface_rotation();
    let n = divide.crossing_count();

    let mut circuits: Vec<Vec<Step>> = Vec::with_capacity(2 * n);
    let mut labels = Vec::with_capacity(2 * n);
    // Squares in edge order: circuit k twists the diagram's new vertex k.
    for cr in 0..n {
        circuits.push(
            (0..4)
                .map(|k| Step {
                    edge: 4 * cr + k,
                    from: 4 * cr + k,
                    to: 4 * cr + (k + 1) % 4,
                })
                .collect(),
        );
        labels.push(format!("s{}", cr + 1));
    }
    // Regions in vertex order: circuit n + v - 1 twists old vertex v.
    for v in 1..=n {
        circuits.push(region_circuit(divide, &gamma, v));
        labels.push(format!("r{v}"));
    }
    for steps in &circuits {
        for (i, st) in steps.iter().enumerate() {
            debug_assert_eq!(st.to, steps[(i + 1) % steps.len()].from);
        }
    }

    let pairing = pairing_matrix(&circuits, &gamma, &rho);
    let size = pairing.size();
    let mut intersection_edges = Vec::new();
    for i in 0..size {
        for j in i + 1..size {
            if pairing.get(i, j).magnitude() == &1u32.into() {
                intersection_edges.push((i, j));
            }
        }
    }
    Ok(TwistWord {
        labels,
        pairing,
        intersection_edges,
    })
}

/// Converts the divide's region walk into Γ steps.
fn region_circuit(divide: &SlalomDivide, gamma: &GammaGraph, v: usize) -> Vec<Step> {
    divide
        .region_walk(v)
        .into_iter()
        .map(|step| match step {
            GammaStep::Arc { from, to } => Step {
                edge: gamma.arc_at[from.0][from.1].expect("arc exists at exit stub"),
                from: 4 * from.0 + from.1,
                to: 4 * to.0 + to.1,
            },
            GammaStep::Side {
                crossing,
                from_slot,
                to_slot,
            } => {
                // Side k joins slots k and k+1.
                let k = if to_slot == (from_slot + 1) % 4 {
                    from_slot
                } else {
                    to_slot
                };
                Step {
                    edge: 4 * crossing + k,
                    from: 4 * crossing + from_slot,
                    to: 4 * crossing + to_slot,
                }
            }
        })
        .collect()
}

/// Signed intersection numbers of the circuits on the ribbon surface.
///
/// All strands through one edge run in parallel lanes: the strand of rank
/// `r` (among `m`, ordered by circuit and step) sits at lane `r` at the
/// edge's first endpoint and at lane `m−1−r` at the second, which is the
/// orientation-compatible flat gluing. Crossings then occur only inside
/// vertex disks: each passage of a circuit is a chord between boundary
/// positions, two chords cross when their endpoints interleave, and the
/// sign is `+1` when the partner's entry point lies on the left lobe.
fn pairing_matrix(circuits: &[Vec<Step>], gamma: &GammaGraph, rho: &[Vec<usize>]) -> IntMatrix {
    let ecount = gamma.edge_count();
    let mut passages: Vec<Vec<(usize, usize)>> = vec![Vec::new(); ecount];
    for (ci, steps) in circuits.iter().enumerate() {
        for (si, st) in steps.iter().enumerate() {
            passages[st.edge].push((ci, si));
        }
    }
    for list in &mut passages {
        list.sort_unstable();
    }
    let rank = |edge: usize, key: (usize, usize)| -> usize {
        passages[edge].binary_search(&key).expect("passage recorded")
    };

    // Boundary positions of each vertex disk: edge ends in rotation order,
    // lanes within each end.
    let vcount = gamma.vertex_count();
    let mut base: Vec<Vec<usize>> = Vec::with_capacity(vcount);
    let mut disk_size = Vec::with_capacity(vcount);
    for v in 0..vcount {
        let mut offsets = Vec::with_capacity(rho[v].len());
        let mut total = 0;
        for &e in &rho[v] {
            offsets.push(total);
            total += passages[e].len();
        }
        base.push(offsets);
        disk_size.push(total);
    }
    let position = |v: usize, edge: usize, r: usize| -> usize {
        let t = rho[v].iter().position(|&x| x == edge).unwrap();
        let m = passages[edge].len();
        let local = if gamma.edges()[edge].a == v { r } else { m - 1 - r };
        base[v][t] + local
    };

    // Chords (circuit, entry position, exit position) per vertex disk.
    let mut chords: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); vcount];
    for (ci, steps) in circuits.iter().enumerate() {
        for (si, st) in steps.iter().enumerate() {
            let v = st.to;
            let st2 = &steps[(si + 1) % steps.len()];
            let p = position(v, st.edge, rank(st.edge, (ci, si)));
            let q = position(v, st2.edge, rank(st2.edge, (ci, (si + 1) % steps.len())));
            chords[v].push((ci, p, q));
        }
    }

    let size = circuits.len();
    let mut grid = vec![vec![0i64; size]; size];
    for (v, list) in chords.iter().enumerate() {
        let disk = disk_size[v];
        for (x, &(ci, p, q)) in list.iter().enumerate() {
            for &(cj, r, s) in &list[x + 1..] {
                if ci == cj {
                    continue;
                }
                let turn = |a: usize| (a + disk - p) % disk;
                let (q1, r1, s1) = (turn(q), turn(r), turn(s));
                let sign = match (r1 < q1, s1 < q1) {
                    (true, false) => 1,
                    (false, true) => -1,
                    _ => 0,
                };
                grid[ci][cj] += sign;
                grid[cj][ci] -= sign;
            }
        }
    }
    let rows = grid
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    IntMatrix::from_rows(rows)
}

impl TwistWord {
    pub fn generator_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Signed intersection matrix of the core curves, rows and columns in
    /// word order (which is the diagram's bicolored vertex order).
    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    /// Pairs of generators whose curves meet (once); the intersection
    /// graph, in the diagram's vertex numbering.
    pub fn intersection_edges(&self) -> &[(usize, usize)] {
        &self.intersection_edges
    }

    /// The homological monodromy: the product of the twist transvections
    /// `x -> x + <x, c_i> c_i` in word order.
    pub fn transvection_product(&self) -> IntMatrix {
        let n = self.pairing.size();
        let mut prod = IntMatrix::identity(n);
        for i in 0..n {
            let mut t = IntMatrix::identity(n);
            for c in 0..n {
                let v = self.pairing.get(i, c).clone();
                let cur = t.get(i, c).clone();
                t.set(i, c, cur + v);
            }
            prod = prod.mul(&t);
        }
        prod
    }

    /// The intersection graph as a diagram tree, for shape comparisons.
    pub fn intersection_diagram(&self, crossing_count: usize) -> DynkinTree {
        let mut adjacency = vec![Vec::new(); self.generator_count()];
        for &(i, j) in &self.intersection_edges {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        DynkinTree::from_adjacency(adjacency, crossing_count)
    }
}

/// The two complexity counts of the monodromy presentation: `a` twist
/// generators and `b` pairwise intersection points, against the lower
/// bound `4·genus − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexityReport {
    pub a: usize,
    pub b: usize,
    pub a_plus_b: usize,
    pub four_delta_minus_one: usize,
}

pub fn complexity_report(word: &TwistWord, fiber: &FiberSurface) -> ComplexityReport {
    let a = word.generator_count();
    let b = word.intersection_edges().len();
    ComplexityReport {
        a,
        b,
        a_plus_b: a + b,
        four_delta_minus_one: 4 * fiber.genus - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{char_poly_skew_coxeter, skew_form};
    use crate::divide::build_divide;
    use crate::dynkin::dynkin_of;
    use crate::tree::{enumerate_trees, CayleyCode, Tree};
    use std::str::FromStr;

    fn divide(code: &str) -> SlalomDivide {
        build_divide(&Tree::from_code(&CayleyCode::from_str(code).unwrap()))
    }

    fn delta(code: &str) -> DynkinTree {
        dynkin_of(&Tree::from_code(&CayleyCode::from_str(code).unwrap()))
    }

    #[test]
    fn trefoil_gamma_by_hand() {
        let g = gamma_graph(&divide("[0]")).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 5); // four sides and the leaf loop arc
        assert_eq!(g.first_betti(), 2);
        // The two tail corners of the root square are bivalent; the two
        // corners carrying the loop arc are trivalent.
        let degrees: Vec<usize> = (0..4).map(|v| g.degree(v)).collect();
        assert_eq!(degrees.iter().filter(|&&d| d == 2).count(), 2);
        assert_eq!(degrees.iter().filter(|&&d| d == 3).count(), 2);
    }

    #[test]
    fn gamma_counts_for_named_trees() {
        for (code, vertices, betti) in [
            ("[0]", 4, 2),
            ("[0,1]", 8, 4),
            ("[0,1,1,1]", 16, 8),
            ("[0,1,2,2]", 16, 8),
            ("[0,1,1,2,4]", 20, 10),
        ] {
            let g = gamma_graph(&divide(code)).unwrap();
            assert_eq!(g.vertex_count(), vertices, "{code}");
            assert_eq!(g.first_betti(), betti, "{code}");
            assert_eq!(g.edge_count(), 6 * g.crossing_count() - 1, "{code}");
        }
    }

    #[test]
    fn gamma_is_bipartite_with_alternating_flags() {
        for code in enumerate_trees(9) {
            let g = gamma_graph(&build_divide(&Tree::from_code(&code))).unwrap();
            for e in g.edges() {
                assert_ne!(g.agrees(e.a), g.agrees(e.b), "{code}: flag must flip");
            }
            // Exactly two bivalent corners, both on the root square and
            // adjacent in its rotation; every other corner is trivalent.
            let bivalent: Vec<usize> = (0..g.vertex_count())
                .filter(|&v| g.degree(v) == 2)
                .collect();
            assert_eq!(bivalent.len(), 2, "{code}");
            assert!(bivalent.iter().all(|&v| v < 4), "{code}: on root square");
            assert!(
                (0..g.vertex_count()).all(|v| g.degree(v) == 2 || g.degree(v) == 3),
                "{code}"
            );
        }
    }

    #[test]
    fn fiber_invariants_for_named_trees() {
        for (code, betti, genus) in [
            ("[0]", 2, 1),
            ("[0,1]", 4, 2),
            ("[0,1,2,2]", 8, 4),
            ("[0,1,1,2,4]", 10, 5),
        ] {
            let f = fiber_surface(&gamma_graph(&divide(code)).unwrap()).unwrap();
            assert_eq!(f.first_betti, betti, "{code}");
            assert_eq!(f.boundary_components, 1, "{code}");
            assert_eq!(f.genus, genus, "{code}");
        }
    }

    #[test]
    fn fiber_is_a_knot_fiber_for_every_tree() {
        for code in enumerate_trees(9) {
            let tree = Tree::from_code(&code);
            let f = fiber_surface(&gamma_graph(&build_divide(&tree)).unwrap()).unwrap();
            assert_eq!(f.boundary_components, 1, "{code}");
            assert_eq!(f.first_betti, dynkin_of(&tree).vertex_count(), "{code}");
            assert_eq!(f.genus, tree.edge_count(), "{code}");
        }
    }

    #[test]
    fn word_labels_follow_bicolored_order() {
        let w = monodromy_word(&divide("[0]")).unwrap();
        assert_eq!(w.labels(), ["s1", "r1"]);
        let w = monodromy_word(&divide("[0,1,1,2]")).unwrap();
        assert_eq!(w.generator_count(), 8);
        assert_eq!(
            w.labels(),
            ["s1", "s2", "s3", "s4", "r1", "r2", "r3", "r4"]
        );
    }

    #[test]
    fn generator_count_is_twice_the_edge_count() {
        for code in enumerate_trees(8) {
            let tree = Tree::from_code(&code);
            let w = monodromy_word(&build_divide(&tree)).unwrap();
            assert_eq!(
                w.generator_count(),
                2 * tree.vertex_count() - 2,
                "{code}"
            );
        }
    }

    #[test]
    fn intersection_graph_is_the_dynkin_diagram() {
        for code in enumerate_trees(8) {
            let tree = Tree::from_code(&code);
            let w = monodromy_word(&build_divide(&tree)).unwrap();
            let d = dynkin_of(&tree);
            assert_eq!(w.intersection_edges(), d.edges().as_slice(), "{code}");
        }
    }

    #[test]
    fn pairing_is_skew_with_unit_entries() {
        for code in enumerate_trees(8) {
            let tree = Tree::from_code(&code);
            let w = monodromy_word(&build_divide(&tree)).unwrap();
            let p = w.pairing();
            let a = dynkin_of(&tree).adjacency_matrix();
            let n = p.size();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(-p.get(i, j), p.get(j, i).clone(), "{code}");
                    assert_eq!(
                        BigInt::from(p.get(i, j).magnitude().clone()),
                        a.get(i, j).clone(),
                        "{code} ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn pairing_equals_the_diagram_skew_form() {
        for code in enumerate_trees(8) {
            let tree = Tree::from_code(&code);
            let w = monodromy_word(&build_divide(&tree)).unwrap();
            let s = skew_form(&dynkin_of(&tree));
            assert_eq!(w.pairing(), &s, "{code}");
        }
    }

    #[test]
    fn twist_product_realizes_the_skew_coxeter_element() {
        for code in enumerate_trees(7) {
            let tree = Tree::from_code(&code);
            let w = monodromy_word(&build_divide(&tree)).unwrap();
            let product_char = w.transvection_product().char_poly();
            assert_eq!(
                product_char,
                char_poly_skew_coxeter(&dynkin_of(&tree)),
                "{code}"
            );
        }
    }

    #[test]
    fn intersection_diagram_reproduces_the_shape() {
        let w = monodromy_word(&divide("[0,1,1,2]")).unwrap();
        let d = w.intersection_diagram(4);
        assert_eq!(
            crate::dynkin::classify_shape(&d),
            crate::dynkin::classify_shape(&delta("[0,1,1,2]"))
        );
    }

    #[test]
    fn complexity_meets_the_lower_bound_exactly() {
        let d = divide("[0]");
        let w = monodromy_word(&d).unwrap();
        let f = fiber_surface(&gamma_graph(&d).unwrap()).unwrap();
        let r = complexity_report(&w, &f);
        assert_eq!((r.a, r.b, r.a_plus_b, r.four_delta_minus_one), (2, 1, 3, 3));

        let d = divide("[0,1,1,2,4]");
        let w = monodromy_word(&d).unwrap();
        let f = fiber_surface(&gamma_graph(&d).unwrap()).unwrap();
        let r = complexity_report(&w, &f);
        assert_eq!(
            (r.a, r.b, r.a_plus_b, r.four_delta_minus_one),
            (10, 9, 19, 19)
        );

        for code in enumerate_trees(8) {
            let d = build_divide(&Tree::from_code(&code));
            let w = monodromy_word(&d).unwrap();
            let f = fiber_surface(&gamma_graph(&d).unwrap()).unwrap();
            let r = complexity_report(&w, &f);
            assert_eq!(r.a_plus_b, r.four_delta_minus_one, "{code}");
        }
    }
}
