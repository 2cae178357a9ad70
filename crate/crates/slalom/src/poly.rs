//! Exact integer polynomials in one variable.
//!
//! Coefficients are arbitrary-precision integers stored constant term first,
//! which is also the order used by every serialized report. All arithmetic is
//! exact; division is only offered where the remainder is provably zero and
//! panics otherwise, so a silent precision loss cannot occur.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Polynomial over the integers, constant coefficient first.
///
/// The zero polynomial is represented by an empty coefficient vector; all
/// constructors strip trailing zero coefficients so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from constant-first coefficients.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Convenience constructor from machine integers, constant first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::from_i64(&[1])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Constant-first coefficient slice (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Exact quotient; panics if `other` does not divide `self` over Z[t].
    ///
    /// Used where divisibility is a structural fact (cyclotomic quotients,
    /// square-free parts, fraction-free elimination pivots), so a nonzero
    /// remainder is a logic error worth stopping on.
    pub fn div_exact(&self, other: &IntPoly) -> IntPoly {
        let (q, r) = self.div_rem(other);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Euclidean division by a polynomial whose leading coefficient divides
    /// every intermediate leading term (panics otherwise). Exposed through
    /// `div_exact`; kept separate so gcd code can inspect the remainder.
    fn div_rem(&self, other: &IntPoly) -> (IntPoly, IntPoly) {
        let d = other.degree().expect("division by the zero polynomial");
        let lead = other.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let top = rem.last().unwrap().clone();
            if top.is_zero() {
                rem.pop();
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&top, &lead);
            assert!(r.is_zero(), "leading coefficient does not divide");
            for (i, c) in other.coeffs.iter().enumerate() {
                let idx = k + i;
                let sub = c * &q;
                rem[idx] -= sub;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            quot[k] = q;
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Evaluates at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluates at a rational point exactly.
    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of the value at a rational point, without building the value's
    /// full fraction: evaluates `denom^deg * p(num/denom)` over the integers.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let p = x.numer();
        let q = x.denom();
        let mut acc = BigInt::zero();
        let mut qk = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qk;
            qk *= q;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Content: positive gcd of the coefficients (zero polynomial -> 0).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::Integer::gcd(&g, c);
        }
        g
    }

    /// Primitive part with the sign of the leading coefficient preserved.
    pub fn primitive(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Reverses the coefficients: `t^deg * p(1/t)`.
    pub fn reversed(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::new(coeffs)
    }

    /// True if `p(t) = ± t^deg · p(1/t)` (palindromic up to sign).
    pub fn is_palindromic_up_to_sign(&self) -> bool {
        let r = self.reversed();
        r == *self || r == self.neg()
    }

    /// Substitutes `t -> -t`.
    pub fn compose_neg(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Normalizes a polynomial defined up to a unit `± t^k`: strips the power
    /// of `t` dividing it and makes the leading coefficient positive. This is
    /// the canonical representative used when comparing Alexander polynomials
    /// from independent pipelines.
    pub fn alexander_normal_form(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let low = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let mut coeffs: Vec<BigInt> = self.coeffs[low..].to_vec();
        if coeffs.last().unwrap().is_negative() {
            for c in &mut coeffs {
                *c = -&*c;
            }
        }
        IntPoly::new(coeffs)
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return positive_lead(b);
        }
        while !b.is_zero() {
            let r = pseudo_rem(&a, &b).primitive();
            a = b;
            b = r;
        }
        positive_lead(a)
    }

    /// Square-free part `p / gcd(p, p')`, primitive, positive leading term.
    pub fn square_free_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return positive_lead(self.primitive());
        }
        positive_lead(self.primitive().div_exact_pseudo(&g))
    }

    /// Exact division that first clears denominators pseudo-style: divides
    /// primitive parts, valid when `other` divides `self` up to content.
    fn div_exact_pseudo(&self, other: &IntPoly) -> IntPoly {
        // self and other primitive, other | self in Q[t]; by Gauss's lemma the
        // quotient is integral up to a unit, so scale self by lc(other)^k.
        let d = self.degree().unwrap() - other.degree().unwrap();
        let lc = other.leading().unwrap();
        let scaled = self.scale(&lc.pow((d + 1) as u32));
        scaled.div_rem(other).0.primitive()
    }
}

fn positive_lead(p: IntPoly) -> IntPoly {
    match p.leading() {
        Some(l) if l.is_negative() => p.neg(),
        _ => p,
    }
}

/// Pseudo-remainder adjusted so that its sign equals the sign of the true
/// Euclidean remainder (the multiplier `lc(b)^(δ+1)` may be negative, which
/// would otherwise corrupt Sturm sign sequences).
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let da = a.degree().expect("pseudo_rem of zero");
    let db = b.degree().expect("pseudo_rem by zero");
    assert!(da >= db);
    let delta = (da - db) as u32;
    let c = b.leading().unwrap().pow(delta + 1);
    let scaled = a.scale(&c);
    let (_, r) = scaled.div_rem(b);
    if c.is_negative() {
        r.neg()
    } else {
        r
    }
}

/// Sturm chain of a square-free polynomial (primitive parts, sign-safe).
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let p0 = p.primitive();
        let p1 = p0.derivative().primitive();
        let mut chain = vec![p0, p1];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() || chain[n - 1].degree().is_none() {
                break;
            }
            if chain[n - 1].degree() == Some(0) {
                break;
            }
            let r = pseudo_rem(&chain[n - 2], &chain[n - 1]).primitive().neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    /// Number of sign changes of the chain at `x`.
    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    ///
    /// Requires the underlying polynomial to be square-free and nonzero at
    /// `a` and `b` for the textbook guarantee; with a root exactly at `b` the
    /// count still includes it because the first chain entry vanishes there.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        assert!(a < b, "empty interval");
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Determinant of a square matrix of integer polynomials by fraction-free
/// (Bareiss) elimination; every division is exact in Z[t].
pub fn poly_matrix_det(mat: &[Vec<IntPoly>]) -> IntPoly {
    let n = mat.len();
    if n == 0 {
        return IntPoly::one();
    }
    for row in mat {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
    }
    let mut m: Vec<Vec<IntPoly>> = mat.to_vec();
    let mut prev = IntPoly::one();
    let mut sign = 1i32;
    for k in 0..n {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return IntPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev);
            }
            m[i][k] = IntPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64(cs)
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 2, 3]); // 3t^2 + 2t + 1
        let b = p(&[-1, 1]); // t - 1
        assert_eq!(a.add(&b), p(&[0, 3, 3]));
        assert_eq!(a.mul(&b), p(&[-1, -1, -1, 3]));
        assert_eq!(a.mul(&b).div_exact(&b), a);
        assert_eq!(a.degree(), Some(2));
        assert!(IntPoly::zero().is_zero());
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        assert_eq!(p(&[1, 0, 0]), p(&[1]));
        assert_eq!(p(&[0, 0]), IntPoly::zero());
        assert_eq!(p(&[1, 1]).sub(&p(&[0, 1])), p(&[1]));
    }

    #[test]
    fn evaluation_and_sign() {
        let q = p(&[1, -1, 1]); // t^2 - t + 1
        assert_eq!(q.eval_int(&BigInt::from(-1)), BigInt::from(3));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(q.sign_at(&half), 1);
        let r = p(&[-2, 0, 1]); // t^2 - 2
        assert_eq!(r.sign_at(&BigRational::from_integer(BigInt::from(1))), -1);
        assert_eq!(r.sign_at(&BigRational::from_integer(BigInt::from(2))), 1);
    }

    #[test]
    fn derivative_and_gcd() {
        let q = p(&[-1, 1]); // t - 1
        let sq = q.mul(&q).mul(&p(&[1, 1])); // (t-1)^2 (t+1)
        let g = sq.gcd(&sq.derivative());
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(sq.square_free_part(), p(&[-1, 0, 1])); // (t-1)(t+1)
    }

    #[test]
    fn alexander_normal_form_strips_units() {
        let q = p(&[0, 0, -1, 1, -1]); // -t^2(t^2 - t + 1)
        assert_eq!(q.alexander_normal_form(), p(&[1, -1, 1]));
        assert_eq!(p(&[1, -1, 1]).alexander_normal_form(), p(&[1, -1, 1]));
    }

    #[test]
    fn palindrome_detection() {
        assert!(p(&[1, -1, 1]).is_palindromic_up_to_sign());
        assert!(p(&[1, 0, -1]).is_palindromic_up_to_sign()); // anti
        assert!(!p(&[1, 2, 3]).is_palindromic_up_to_sign());
    }

    #[test]
    fn sturm_counts_roots_of_known_product() {
        // (t-1)(t-2)(t+3), roots 1, 2, -3
        let q = p(&[-1, 1]).mul(&p(&[-2, 1])).mul(&p(&[3, 1]));
        let chain = SturmChain::new(&q);
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        assert_eq!(chain.count_roots(&r(0), &r(3)), 2);
        assert_eq!(chain.count_roots(&r(-4), &r(0)), 1);
        assert_eq!(chain.count_roots(&r(-4), &r(3)), 3);
        assert_eq!(chain.count_roots(&r(5), &r(9)), 0);
        // half-open: root at the right endpoint is counted, at the left not
        assert_eq!(chain.count_roots(&r(0), &r(1)), 1);
        assert_eq!(chain.count_roots(&r(1), &r(2)), 1);
    }

    #[test]
    fn bareiss_determinant_matches_cofactors() {
        let m = vec![
            vec![p(&[0, 1]), p(&[1]), p(&[0])],
            vec![p(&[-1]), p(&[0, 1]), p(&[1])],
            vec![p(&[0]), p(&[-1]), p(&[0, 1])],
        ];
        // det = t^3 + 2t (companion-like tridiagonal)
        assert_eq!(poly_matrix_det(&m), p(&[0, 2, 0, 1]));
        let singular = vec![
            vec![p(&[1]), p(&[2])],
            vec![p(&[2]), p(&[4])],
        ];
        assert_eq!(poly_matrix_det(&singular), IntPoly::zero());
    }

    #[test]
    fn bareiss_handles_zero_pivot_with_row_swap() {
        let m = vec![
            vec![p(&[0]), p(&[1])],
            vec![p(&[1]), p(&[0])],
        ];
        assert_eq!(poly_matrix_det(&m), p(&[-1]));
    }

    proptest! {
        #[test]
        fn mul_div_roundtrip(a in proptest::collection::vec(-6i64..6, 1..6),
                             b in proptest::collection::vec(-6i64..6, 1..6)) {
            let pa = IntPoly::from_i64(&a);
            let pb = IntPoly::from_i64(&b);
            prop_assume!(!pb.is_zero());
            let prod = pa.mul(&pb);
            prop_assert_eq!(prod.div_exact(&pb), pa);
        }

        #[test]
        fn sturm_vs_factored_roots(roots in proptest::collection::vec(-8i64..8, 1..6)) {
            let mut q = IntPoly::one();
            for &r in &roots {
                q = q.mul(&IntPoly::from_i64(&[-r, 1]));
            }
            let chain = SturmChain::new(&q.square_free_part());
            let lo = BigRational::from_integer(BigInt::from(-9));
            let hi = BigRational::from_integer(BigInt::from(9));
            let mut distinct: Vec<i64> = roots.clone();
            distinct.sort_unstable();
            distinct.dedup();
            prop_assert_eq!(chain.count_roots(&lo, &hi), distinct.len());
        }
    }
}
