//! Exact isolation of the dominating eigenvalue.
//!
//! The input is an integer characteristic polynomial; the question is
//! whether it has a real root strictly greater than 1, and if so, where.
//! Existence and localization are decided exactly with Sturm chains and
//! rational bisection, so the verdict "no root above 1" is a proof, not a
//! numeric judgement. Only the strict-modulus-dominance check over the
//! remaining complex roots is delegated to floating point (Durand–Kerner),
//! which is plenty for the comfortable margins these polynomials have.

use crate::poly::{IntPoly, SturmChain};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Result of hunting for the dominating eigenvalue of a characteristic
/// polynomial: the largest real root above 1, enclosed in a rational
/// interval of the requested width.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    /// `lo <= λ <= hi` with `hi - lo` at most the requested tolerance;
    /// `None` when the polynomial has no real root above 1.
    pub enclosure: Option<(BigRational, BigRational)>,
    /// The root is simple (checked exactly against the gcd with the
    /// derivative). Vacuously true when there is no root.
    pub multiplicity_one: bool,
    /// Every other complex root has strictly smaller modulus (floating-point
    /// check). False when there is no root.
    pub dominating: bool,
}

impl SpectralReport {
    pub fn lambda_f64(&self) -> Option<f64> {
        self.enclosure.as_ref().map(|(lo, hi)| {
            let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
            mid.to_f64().unwrap()
        })
    }

    /// Lower bound for the monodromy entropy: `ln λ`.
    pub fn entropy(&self) -> Option<f64> {
        self.lambda_f64().map(f64::ln)
    }
}

/// Default enclosure width: 1e-9.
pub fn default_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64))
}

/// Cauchy root bound `1 + max |a_i| / |a_n|` as an integer.
fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lead = p.leading().expect("bound of the zero polynomial").abs();
    let max = p
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    // ceil(max/lead) + 1 over-approximates 1 + max/lead.
    let q = num_integer::Integer::div_ceil(&max, &lead);
    BigRational::from_integer(q + BigInt::one())
}

/// Isolates the largest real root `> 1` of `p` to the given interval width.
///
/// The bisection works on the square-free part, so clustered sign behaviour
/// near multiple roots cannot stall it; the multiplicity answer comes from
/// the gcd factor afterwards.
pub fn dominant_eigenvalue(p: &IntPoly, tolerance: &BigRational) -> SpectralReport {
    assert!(tolerance > &BigRational::zero(), "tolerance must be positive");
    let none = SpectralReport {
        enclosure: None,
        multiplicity_one: true,
        dominating: false,
    };
    if p.degree().map_or(true, |d| d == 0) {
        return none;
    }
    let sf = p.square_free_part();
    let chain = SturmChain::new(&sf);
    let one = BigRational::one();
    let bound = cauchy_bound(&sf).max(BigRational::from_integer(BigInt::from(2)));
    if chain.count_roots(&one, &bound) == 0 {
        return none;
    }

    let two = BigRational::from_integer(BigInt::from(2));
    let mut lo = one.clone();
    let mut hi = bound;
    let mut exact = false;
    // Keep the subinterval holding the largest root: split and prefer the
    // upper half whenever it still contains a root.
    loop {
        if &hi - &lo <= *tolerance && chain.count_roots(&lo, &hi) == 1 {
            break;
        }
        let mid = (&lo + &hi) / &two;
        if sf.sign_at(&mid) == 0 {
            // Landed on the root exactly; unless a larger one remains above.
            if chain.count_roots(&mid, &hi) > 0 {
                lo = mid;
            } else {
                lo = mid.clone();
                hi = mid;
                exact = true;
                break;
            }
        } else if chain.count_roots(&mid, &hi) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // Simplicity: the root is multiple iff it also annihilates gcd(p, p').
    let g = p.primitive().gcd(&p.derivative());
    let multiplicity_one = if g.degree().map_or(true, |d| d == 0) {
        true
    } else if exact {
        g.sign_at(&lo) != 0
    } else {
        SturmChain::new(&g.square_free_part()).count_roots(&lo, &hi) == 0
    };

    let lambda = ((&lo + &hi) / &two).to_f64().unwrap();
    let dominating = strictly_dominates(&sf, lambda);

    SpectralReport {
        enclosure: Some((lo, hi)),
        multiplicity_one,
        dominating,
    }
}

/// Floating-point check that `lambda` strictly exceeds the modulus of every
/// other root of `sf`.
fn strictly_dominates(sf: &IntPoly, lambda: f64) -> bool {
    let roots = durand_kerner(sf);
    let mut best = usize::MAX;
    let mut best_dist = f64::INFINITY;
    for (i, z) in roots.iter().enumerate() {
        let d = (z.0 - lambda).hypot(z.1);
        if d < best_dist {
            best_dist = d;
            best = i;
        }
    }
    roots
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != best)
        .all(|(_, z)| z.0.hypot(z.1) < lambda - 1e-7)
}

/// All complex roots of an integer polynomial by Durand–Kerner iteration.
/// Degrees here are tiny (a few dozen), so the plain simultaneous iteration
/// with the standard spiral start is accurate and fast.
fn durand_kerner(p: &IntPoly) -> Vec<(f64, f64)> {
    let coeffs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().expect("coefficient out of f64 range"))
        .collect();
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();

    let eval = |z: (f64, f64)| -> (f64, f64) {
        let mut acc = (0.0f64, 0.0f64);
        for &c in monic.iter().rev() {
            acc = (acc.0 * z.0 - acc.1 * z.1 + c, acc.0 * z.1 + acc.1 * z.0);
        }
        acc
    };

    let mut zs: Vec<(f64, f64)> = Vec::with_capacity(n);
    let (mut re, mut im) = (1.0f64, 0.0f64);
    for _ in 0..n {
        let (r2, i2) = (re * 0.4 - im * 0.9, re * 0.9 + im * 0.4);
        re = r2;
        im = i2;
        zs.push((re, im));
    }

    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let zi = zs[i];
            let mut denom = (1.0f64, 0.0f64);
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = (zi.0 - zs[j].0, zi.1 - zs[j].1);
                denom = (denom.0 * d.0 - denom.1 * d.1, denom.0 * d.1 + denom.1 * d.0);
            }
            let v = eval(zi);
            let mag2 = denom.0 * denom.0 + denom.1 * denom.1;
            if mag2 == 0.0 {
                continue;
            }
            let q = (
                (v.0 * denom.0 + v.1 * denom.1) / mag2,
                (v.1 * denom.0 - v.0 * denom.1) / mag2,
            );
            zs[i] = (zi.0 - q.0, zi.1 - q.1);
            moved = moved.max(q.0.hypot(q.1));
        }
        if moved < 1e-13 {
            break;
        }
    }
    zs
}

/// Renders a rational as a fixed-point decimal with `digits` fractional
/// digits, rounding toward the stated direction so enclosures stay valid.
pub fn decimal_string(x: &BigRational, digits: usize, round_up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = x * BigRational::from_integer(scale.clone());
    let n = if round_up {
        num_integer::Integer::div_ceil(scaled.numer(), scaled.denom())
    } else {
        num_integer::Integer::div_floor(scaled.numer(), scaled.denom())
    };
    let neg = n.is_negative();
    let mut mag = n.abs().to_string();
    if mag.len() <= digits {
        mag = format!("{}{}", "0".repeat(digits + 1 - mag.len()), mag);
    }
    let split = mag.len() - digits;
    let (int, frac) = mag.split_at(split);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}
