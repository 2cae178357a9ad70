//! Coxeter and skew-Coxeter elements of a Dynkin diagram.
//!
//! The diagram's vertices index a basis of vanishing cycles. Two bilinear
//! forms live on that lattice: the symmetric intersection form `Q` with
//! `-2` on the diagonal and `1` between neighbours, and the skew form `S`
//! which is `+1` from a new vertex to an adjacent old one. Each vertex
//! contributes a reflection `R_i = I + e_i q_i^T` (for `Q`) and a
//! transvection `T_i = I + e_i s_i^T` (for `S`); the Coxeter element `C`
//! and skew-Coxeter element `sC` are the products over all vertices in the
//! bicolored order (new vertices first). In that order `sC = -C`, and `sC`
//! is conjugate to the homological monodromy of the fibered knot, so
//! `det(tI - sC)` is its Alexander polynomial.
//!
//! Matrices act on columns throughout, and products apply right factor
//! first, so `C = R_0 · R_1 · ... · R_{n-1}`.

use crate::dynkin::{classify_shape, hyperbolicity_verdict, DynkinTree, Hyperbolicity, ShapeClass};
use crate::matrix::IntMatrix;
use crate::poly::IntPoly;
use crate::roots::{dominant_eigenvalue, SpectralReport};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Symmetric intersection form: `-2` on the diagonal, `1` across each edge.
pub fn quadratic_form(delta: &DynkinTree) -> IntMatrix {
    let n = delta.vertex_count();
    let mut q = IntMatrix::zeros(n);
    for i in 0..n {
        q.set(i, i, BigInt::from(-2));
        for &j in delta.neighbors(i) {
            q.set(i, j, BigInt::one());
        }
    }
    q
}

/// Skew intersection form: `+1` from new to adjacent old vertex, `-1` back.
pub fn skew_form(delta: &DynkinTree) -> IntMatrix {
    let n = delta.vertex_count();
    let mut s = IntMatrix::zeros(n);
    for (a, b) in delta.edges() {
        s.set(a, b, BigInt::one());
        s.set(b, a, BigInt::from(-1));
    }
    s
}

/// `I + e_i q_i^T`: the reflection in the `i`-th vanishing cycle. It is an
/// involution and preserves `Q`.
pub fn reflection(delta: &DynkinTree, i: usize) -> IntMatrix {
    add_outer_row(&quadratic_form(delta), i)
}

/// `I + e_i s_i^T`: the transvection in the `i`-th vanishing cycle for the
/// skew form (the homological Dehn twist).
pub fn transvection(delta: &DynkinTree, i: usize) -> IntMatrix {
    add_outer_row(&skew_form(delta), i)
}

/// `I + e_i * (row i of form)`.
fn add_outer_row(form: &IntMatrix, i: usize) -> IntMatrix {
    let n = form.size();
    let mut m = IntMatrix::identity(n);
    for c in 0..n {
        let v = form.get(i, c).clone();
        let cur = m.get(i, c).clone();
        m.set(i, c, cur + v);
    }
    m
}

/// Product of all reflections in the bicolored vertex order.
pub fn coxeter_element(delta: &DynkinTree) -> IntMatrix {
    ordered_product(delta, quadratic_form(delta))
}

/// Product of all transvections in the bicolored vertex order; equals `-C`.
pub fn skew_coxeter_element(delta: &DynkinTree) -> IntMatrix {
    ordered_product(delta, skew_form(delta))
}

fn ordered_product(delta: &DynkinTree, form: IntMatrix) -> IntMatrix {
    let n = delta.vertex_count();
    let mut prod = IntMatrix::identity(n);
    for i in 0..n {
        prod = prod.mul(&add_outer_row(&form, i));
    }
    prod
}

/// Incidence block `B` of the bicolored diagram: `B[i][j] = 1` iff new
/// vertex `i` is adjacent to old vertex `j`. For diagrams of trees this is
/// square, lower triangular with unit diagonal, hence unimodular.
pub fn incidence_block(delta: &DynkinTree) -> IntMatrix {
    let m = delta.new_count();
    let o = delta.vertex_count() - m;
    assert_eq!(m, o, "incidence block needs equal colour classes");
    let mut b = IntMatrix::zeros(m);
    for (a, w) in delta.edges() {
        b.set(a, w - m, BigInt::one());
    }
    b
}

/// Characteristic polynomial of the Coxeter element, computed through the
/// block structure instead of the full `2m x 2m` matrix: with `G = B B^T`,
///
/// `det(tI - C) = det((t+1)^2 I - t G)`
///
/// which expands as `sum_k a_k (t+1)^{2k} t^{m-k}` over the coefficients
/// `a_k` of `det(yI - G)`. This keeps the exact computation at half the
/// dimension, which matters when sweeping thousands of trees.
pub fn char_poly_coxeter(delta: &DynkinTree) -> IntPoly {
    let b = incidence_block(delta);
    let g = b.mul(&b.transpose());
    let psi = g.char_poly();
    let m = g.size();
    let t_plus_1 = IntPoly::from_i64(&[1, 1]);
    let mut sq = vec![IntPoly::one()];
    for k in 1..=m {
        sq.push(sq[k - 1].mul(&t_plus_1).mul(&t_plus_1));
    }
    let mut acc = IntPoly::zero();
    for k in 0..=m {
        let a_k = psi.coeff(k);
        if a_k == BigInt::from(0) {
            continue;
        }
        let term = sq[k].scale(&a_k).shift(m - k);
        acc = acc.add(&term);
    }
    acc
}

/// Characteristic polynomial of the skew-Coxeter element. Since `sC = -C`
/// in even dimension, this is `char_C(-t)`; it equals the Alexander
/// polynomial of the knot and is palindromic up to sign.
pub fn char_poly_skew_coxeter(delta: &DynkinTree) -> IntPoly {
    char_poly_coxeter(delta).compose_neg()
}

/// Shape, eigenvalue data and the torus-or-hyperbolic verdict side by side,
/// with the consistency of the two roads made explicit: the dominating
/// eigenvalue exists exactly when the shape is neither finite nor affine.
#[derive(Debug, Clone)]
pub struct SpectralVerdict {
    pub shape: ShapeClass,
    pub lambda: SpectralReport,
    pub verdict: Hyperbolicity,
    pub consistent: bool,
}

pub fn spectral_verdict(delta: &DynkinTree, tolerance: &BigRational) -> SpectralVerdict {
    let shape = classify_shape(delta);
    let verdict = hyperbolicity_verdict(delta);
    let lambda = dominant_eigenvalue(&char_poly_coxeter(delta), tolerance);
    let tame = shape.is_finite_coxeter() || shape.is_affine();
    let consistent = match &lambda.enclosure {
        Some((lo, _)) => {
            !tame && lambda.multiplicity_one && lambda.dominating && lo >= &BigRational::one()
        }
        None => tame,
    };
    SpectralVerdict {
        shape,
        lambda,
        verdict,
        consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::dynkin_of;
    use crate::roots::default_tolerance;
    use crate::tree::{enumerate_trees, CayleyCode, Tree};
    use std::str::FromStr;

    fn delta(code: &str) -> DynkinTree {
        dynkin_of(&Tree::from_code(&CayleyCode::from_str(code).unwrap()))
    }

    /// Alexander polynomial of the (p, q) torus knot from the cyclotomic
    /// quotient (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)); the standard
    /// closed form, used here as an oracle independent of any matrix work.
    fn torus_alexander(p: usize, q: usize) -> IntPoly {
        fn t_pow_minus_1(k: usize) -> IntPoly {
            let mut c = vec![0i64; k + 1];
            c[0] = -1;
            c[k] = 1;
            IntPoly::from_i64(&c)
        }
        t_pow_minus_1(p * q)
            .mul(&t_pow_minus_1(1))
            .div_exact(&t_pow_minus_1(p))
            .div_exact(&t_pow_minus_1(q))
    }

    #[test]
    fn smallest_diagram_matrices_by_hand() {
        let d = delta("[0]"); // the A2 diagram
        assert_eq!(quadratic_form(&d), IntMatrix::from_i64(&[&[-2, 1], &[1, -2]]));
        assert_eq!(skew_form(&d), IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]));
        assert_eq!(reflection(&d, 0), IntMatrix::from_i64(&[&[-1, 1], &[0, 1]]));
        assert_eq!(reflection(&d, 1), IntMatrix::from_i64(&[&[1, 0], &[1, -1]]));
        let c = coxeter_element(&d);
        assert_eq!(c, IntMatrix::from_i64(&[&[0, -1], &[1, -1]]));
        assert_eq!(c.trace(), BigInt::from(-1));
        assert!(c.mul(&c).mul(&c).is_identity()); // Coxeter number 3
        assert_eq!(
            skew_coxeter_element(&d),
            IntMatrix::from_i64(&[&[0, 1], &[-1, 1]])
        );
    }

    #[test]
    fn incidence_block_is_unimodular_lower_triangular() {
        for code in enumerate_trees(9) {
            let d = dynkin_of(&Tree::from_code(&code));
            let b = incidence_block(&d);
            let m = b.size();
            for i in 0..m {
                assert_eq!(b.get(i, i), &BigInt::one(), "{code}: diagonal");
                for j in i + 1..m {
                    assert_eq!(b.get(i, j), &BigInt::from(0), "{code}: upper part");
                }
            }
        }
    }

    #[test]
    fn block_char_poly_matches_direct_computation() {
        for code in enumerate_trees(8) {
            let d = dynkin_of(&Tree::from_code(&code));
            assert_eq!(
                char_poly_coxeter(&d),
                coxeter_element(&d).char_poly(),
                "{code}"
            );
        }
    }

    #[test]
    fn algebraic_identities_on_small_trees() {
        for code in enumerate_trees(7) {
            let d = dynkin_of(&Tree::from_code(&code));
            let n = d.vertex_count();
            let q = quadratic_form(&d);
            let s = skew_form(&d);
            let c = coxeter_element(&d);
            let sc = skew_coxeter_element(&d);
            assert_eq!(sc, c.neg(), "{code}: sC = -C");
            assert_eq!(c.transpose().mul(&q).mul(&c), q, "{code}: C preserves Q");
            assert_eq!(sc.transpose().mul(&s).mul(&sc), s, "{code}: sC preserves S");
            for i in 0..n {
                let r = reflection(&d, i);
                assert!(r.mul(&r).is_identity(), "{code}: R_{i}^2 = I");
            }
            assert!(
                char_poly_skew_coxeter(&d).is_palindromic_up_to_sign(),
                "{code}: palindromic Alexander"
            );
        }
    }

    #[test]
    fn torus_knot_alexander_polynomials() {
        // A2 -> (2,3), A4 -> (2,5), E6 -> (3,4), E8 -> (3,5).
        let cases = [
            ("[0]", 2, 3),
            ("[0,1]", 2, 5),
            ("[0,1,1]", 3, 4),
            ("[0,1,1,2]", 3, 5),
        ];
        for (code, p, q) in cases {
            assert_eq!(
                char_poly_skew_coxeter(&delta(code)),
                torus_alexander(p, q),
                "{code}"
            );
        }
        // Frozen expansions, to make the expected values visible:
        assert_eq!(
            char_poly_skew_coxeter(&delta("[0]")),
            IntPoly::from_i64(&[1, -1, 1])
        );
        assert_eq!(
            char_poly_skew_coxeter(&delta("[0,1,1,2]")),
            IntPoly::from_i64(&[1, -1, 0, 1, -1, 1, 0, -1, 1])
        );
        // ... while the plain Coxeter element has the positive companion:
        assert_eq!(
            char_poly_coxeter(&delta("[0,1,1,2]")),
            IntPoly::from_i64(&[1, 1, 0, -1, -1, -1, 0, 1, 1])
        );
    }

    #[test]
    fn lehmer_polynomial_appears_for_the_ten_vertex_diagram() {
        // Δ of [0,1,1,2,4] is the rank-10 hyperbolic diagram; its Coxeter
        // element realizes Lehmer's polynomial.
        let cp = char_poly_coxeter(&delta("[0,1,1,2,4]"));
        assert_eq!(
            cp,
            IntPoly::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
        );
        let verdict = spectral_verdict(&delta("[0,1,1,2,4]"), &default_tolerance());
        assert_eq!(verdict.shape, ShapeClass::Wild);
        assert!(verdict.consistent);
        let lam = verdict.lambda.lambda_f64().unwrap();
        assert!((lam - 1.176_280_818_259_91).abs() < 1e-8);
    }

    #[test]
    fn spectral_verdicts_are_consistent_on_named_trees() {
        let tol = default_tolerance();
        let v = spectral_verdict(&delta("[0,1,1,2]"), &tol);
        assert_eq!(v.shape, ShapeClass::E8);
        assert!(v.lambda.enclosure.is_none());
        assert!(!v.verdict.is_hyperbolic());
        assert!(v.consistent);

        let v = spectral_verdict(&delta("[0,1,1,1]"), &tol);
        assert_eq!(v.shape, ShapeClass::Wild);
        assert!(v.verdict.is_hyperbolic());
        let lam = v.lambda.lambda_f64().expect("wild shape has an eigenvalue");
        assert!(lam > 1.0);
        assert!(v.consistent);
    }

    #[test]
    fn enclosure_width_honours_tolerance() {
        let tol = BigRational::new(BigInt::one(), BigInt::from(10u64.pow(12)));
        let v = spectral_verdict(&delta("[0,1,1,1]"), &tol);
        let (lo, hi) = v.lambda.enclosure.unwrap();
        assert!(&hi - &lo <= tol);
    }
}
