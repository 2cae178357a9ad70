//! Dense square matrices over the integers.
//!
//! Matrices act on column vectors: the entry at `(r, c)` is the coefficient
//! of basis vector `r` in the image of basis vector `c`. Sizes stay small
//! (a few dozen rows), so the representation is a plain dense grid of
//! arbitrary-precision integers and the characteristic polynomial uses the
//! division-free Berkowitz scheme, which is exact over Z.

use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Square matrix with `BigInt` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            rows: vec![vec![BigInt::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        for row in &rows {
            assert_eq!(row.len(), n, "matrix must be square");
        }
        IntMatrix { n, rows }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.rows[r][c] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                t.rows[c][r] = self.rows[r][c].clone();
            }
        }
        t
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for r in 0..self.n {
            for c in 0..self.n {
                out.rows[r][c] += &other.rows[r][c];
            }
        }
        out
    }

    pub fn neg(&self) -> IntMatrix {
        let mut out = self.clone();
        for r in 0..self.n {
            for c in 0..self.n {
                out.rows[r][c] = -&self.rows[r][c];
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let mut out = IntMatrix::zeros(self.n);
        for r in 0..self.n {
            for k in 0..self.n {
                let a = &self.rows[r][k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..self.n {
                    let b = &other.rows[k][c];
                    if !b.is_zero() {
                        out.rows[r][c] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|r| {
                let mut acc = BigInt::zero();
                for c in 0..self.n {
                    if !self.rows[r][c].is_zero() && !v[c].is_zero() {
                        acc += &self.rows[r][c] * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.rows[i][i].clone()).sum()
    }

    /// Characteristic polynomial `det(tI - A)`, monic, constant term first.
    ///
    /// Berkowitz's method: for each leading principal minor the coefficient
    /// vector is obtained from the previous one by a lower-triangular
    /// Toeplitz multiplication built out of the Krylov products
    /// `row · A^k · col`. No divisions are performed, so the computation is
    /// exact for integer entries.
    pub fn char_poly(&self) -> IntPoly {
        let n = self.n;
        if n == 0 {
            return IntPoly::one();
        }
        // c holds the leading-first coefficients of char(A_r) as r grows.
        let mut c: Vec<BigInt> = vec![BigInt::one(), -self.rows[0][0].clone()];
        for r in 2..=n {
            // Krylov sequence q_k = R · M^k · C for the (r-1) x (r-1) block M,
            // row R = A[r-1][0..r-1], column C = A[0..r-1][r-1].
            let m = r - 1;
            let col: Vec<BigInt> = (0..m).map(|i| self.rows[i][m].clone()).collect();
            let row: Vec<BigInt> = (0..m).map(|j| self.rows[m][j].clone()).collect();
            let mut krylov = Vec::with_capacity(m);
            let mut v = col;
            for _ in 0..m {
                let q: BigInt = row
                    .iter()
                    .zip(v.iter())
                    .map(|(a, b)| a * b)
                    .sum();
                krylov.push(q);
                // v <- M v
                let mut next = vec![BigInt::zero(); m];
                for i in 0..m {
                    for j in 0..m {
                        if !self.rows[i][j].is_zero() && !v[j].is_zero() {
                            next[i] += &self.rows[i][j] * &v[j];
                        }
                    }
                }
                v = next;
            }
            // First column of the (r+1) x r Toeplitz factor.
            let mut t = Vec::with_capacity(r + 1);
            t.push(BigInt::one());
            t.push(-self.rows[m][m].clone());
            for q in krylov.iter().take(r - 1) {
                t.push(-q.clone());
            }
            let mut next_c = vec![BigInt::zero(); r + 1];
            for (i, ti) in t.iter().enumerate() {
                if ti.is_zero() {
                    continue;
                }
                for (j, cj) in c.iter().enumerate() {
                    if i + j <= r {
                        next_c[i + j] += ti * cj;
                    }
                }
            }
            c = next_c;
        }
        c.reverse();
        IntPoly::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_and_multiplication() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let i = IntMatrix::identity(2);
        assert_eq!(a.mul(&i), a);
        assert_eq!(i.mul(&a), a);
        assert!(i.is_identity());
        let b = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            a.mul(&b),
            IntMatrix::from_i64(&[&[2, 1], &[4, 3]])
        );
    }

    #[test]
    fn transpose_involution() {
        let a = IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn char_poly_of_diagonal_matrix() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        // (t-2)(t-3) = t^2 - 5t + 6
        assert_eq!(a.char_poly(), IntPoly::from_i64(&[6, -5, 1]));
    }

    #[test]
    fn char_poly_of_companion_matrix() {
        // Companion of t^3 - 2t - 5 (column convention).
        let a = IntMatrix::from_i64(&[&[0, 0, 5], &[1, 0, 2], &[0, 1, 0]]);
        assert_eq!(a.char_poly(), IntPoly::from_i64(&[-5, -2, 0, 1]));
    }

    #[test]
    fn char_poly_constant_term_is_det() {
        // det = -2 for this matrix; char constant term = (-1)^n det.
        let a = IntMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.char_poly(), IntPoly::from_i64(&[-2, -5, 1]));
    }

    /// Cofactor-expansion reference determinant of `tI - A` for small sizes.
    fn char_poly_reference(a: &IntMatrix) -> IntPoly {
        let n = a.size();
        let mut m: Vec<Vec<IntPoly>> = vec![vec![IntPoly::zero(); n]; n];
        for r in 0..n {
            for c in 0..n {
                let mut e = IntPoly::new(vec![-a.get(r, c).clone()]);
                if r == c {
                    e = e.add(&IntPoly::from_i64(&[0, 1]));
                }
                m[r][c] = e;
            }
        }
        det_poly_cofactor(&m)
    }

    fn det_poly_cofactor(m: &[Vec<IntPoly>]) -> IntPoly {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut det = IntPoly::zero();
        for c in 0..n {
            if m[0][c].is_zero() {
                continue;
            }
            let minor: Vec<Vec<IntPoly>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&cc| cc != c)
                        .map(|cc| m[r][cc].clone())
                        .collect()
                })
                .collect();
            let term = m[0][c].mul(&det_poly_cofactor(&minor));
            det = if c % 2 == 0 { det.add(&term) } else { det.sub(&term) };
        }
        det
    }

    proptest! {
        #[test]
        fn berkowitz_matches_cofactor_expansion(
            entries in proptest::collection::vec(-4i64..5, 16)
        ) {
            for n in 1..=4usize {
                let rows: Vec<Vec<BigInt>> = (0..n)
                    .map(|r| (0..n).map(|c| BigInt::from(entries[r * 4 + c])).collect())
                    .collect();
                let a = IntMatrix::from_rows(rows);
                prop_assert_eq!(a.char_poly(), char_poly_reference(&a));
            }
        }

        #[test]
        fn trace_matches_char_poly_subleading(
            entries in proptest::collection::vec(-5i64..6, 9)
        ) {
            let rows: Vec<Vec<BigInt>> = (0..3)
                .map(|r| (0..3).map(|c| BigInt::from(entries[r * 3 + c])).collect())
                .collect();
            let a = IntMatrix::from_rows(rows);
            let cp = a.char_poly();
            prop_assert_eq!(cp.coeff(2), -a.trace());
        }
    }
}
