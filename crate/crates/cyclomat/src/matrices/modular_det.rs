//! Multimodular exact determinants over Q(zeta_m).
//!
//! The determinant of an integral matrix over Z[zeta_m] is recovered from
//! its images modulo machine primes l = 1 (mod m): Phi_m splits completely
//! mod such l, so evaluating every entry at each of the phi(m) roots turns
//! one cyclotomic determinant into phi(m) determinants over F_l (word
//! arithmetic, first-nonzero pivoting). Lagrange interpolation over the
//! roots gives the coordinate vector mod l, and CRT over enough primes
//! recovers the integer coordinates exactly.
//!
//! "Enough" is deterministic: coordinates are bounded by the Hadamard bound
//! on every archimedean embedding times the operator norm of the
//! coordinate-extraction map (max ell-1 norm of the Lagrange coefficients of
//! the primitive roots, computed once per conductor at high precision and
//! padded generously).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

use crate::arith;
use crate::cyclotomic::complex::roots_of_unity_table;
use crate::cyclotomic::{cyclotomic_polynomial, CycNum};

/// Modular image of one determinant problem: matrix entries as coordinate
/// vectors, all integral.
pub(crate) struct IntegralMatrix {
    pub dim: usize,
    pub conductor: u64,
    pub phi: usize,
    /// dim*dim entries, each phi coordinates.
    pub coords: Vec<Vec<BigInt>>,
    /// The determinant of the original matrix is det(coords)/scale^dim.
    pub scale: BigInt,
}

/// Bits needed for the coordinates of the determinant, from the Hadamard
/// bound over each embedding (entry modulus <= ell-1 norm of coordinates)
/// and the conductor's coordinate-extraction norm.
fn coordinate_bound_bits(mat: &IntegralMatrix) -> u64 {
    let dim = mat.dim as f64;
    let max_l1: f64 = mat
        .coords
        .iter()
        .map(|c| c.iter().map(|x| big_abs_f64(x)).sum::<f64>())
        .fold(1.0, f64::max);
    // |det|_sigma <= (E sqrt(dim))^dim for every embedding sigma
    let hadamard_bits = dim * (max_l1.log2() + 0.5 * dim.log2()).max(0.0);
    hadamard_bits.ceil() as u64 + kappa_bits(mat.conductor) + 64
}

fn big_abs_f64(x: &BigInt) -> f64 {
    let v = x.to_f64().unwrap_or(f64::INFINITY).abs();
    if v < 1.0 {
        1.0
    } else {
        v
    }
}

/// log2 of the coordinate-extraction operator norm for conductor m, i.e.
/// of max_i sum_t |coeff_i(L_t)| over the Lagrange basis of the primitive
/// m-th roots of unity. Cached; padded by 10 bits against rounding.
fn kappa_bits(m: u64) -> u64 {
    static CACHE: Mutex<Option<HashMap<u64, u64>>> = Mutex::new(None);
    if let Some(v) = CACHE.lock().unwrap().as_ref().and_then(|c| c.get(&m)) {
        return *v;
    }
    let prec = 128;
    let phi_poly = cyclotomic_polynomial(m).expect("valid conductor");
    let phi = phi_poly.len() - 1;
    let roots = roots_of_unity_table(m, prec);
    let points: Vec<_> = (0..m).filter(|t| arith::gcd(*t, m) == 1).collect();
    debug_assert_eq!(points.len(), phi);
    // column sums of |coeff_i(L_t)|
    let mut col_sums = vec![0.0f64; phi];
    for &t in &points {
        let w = &roots[t as usize];
        // synthetic division of Phi_m by (x - w): quotient coefficients
        let mut quot = vec![crate::ComplexApprox::zero(prec); phi];
        let mut carry = crate::ComplexApprox::zero(prec);
        for i in (0..phi).rev() {
            let c = crate::ComplexApprox::from_real(
                crate::cyclotomic::complex::BigFloat::from_bigint(&phi_poly[i + 1], prec),
            );
            carry = carry.mul(w).add(&c);
            quot[i] = carry.clone();
        }
        // denominator Phi'(w) = quotient evaluated at w
        let mut denom = crate::ComplexApprox::zero(prec);
        for c in quot.iter().rev() {
            denom = denom.mul(w).add(c);
        }
        for (i, c) in quot.iter().enumerate() {
            col_sums[i] += c.div(&denom).abs().to_f64();
        }
    }
    let kappa = col_sums.iter().cloned().fold(1.0f64, f64::max);
    let bits = kappa.log2().max(0.0).ceil() as u64 + 10;
    CACHE.lock().unwrap().get_or_insert_with(HashMap::new).insert(m, bits);
    bits
}

/// Deterministic ascending sequence of primes l = 1 (mod m) above 2^61.
fn prime_sequence(m: u64, count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let start = (1u64 << 61) / m * m + 1;
    let mut cand = start;
    while primes.len() < count {
        cand += m;
        if arith::is_prime_u64(cand) {
            primes.push(cand);
        }
    }
    primes
}

/// An element of order exactly m in F_l^x (requires m | l-1).
fn element_of_order(m: u64, l: u64) -> u64 {
    debug_assert_eq!((l - 1) % m, 0);
    if m == 1 {
        return 1;
    }
    let cofactor = (l - 1) / m;
    let factors = arith::factorize(m);
    let mut a = 2u64;
    loop {
        let w = arith::mod_pow(a, cofactor, l);
        if w != 1 && factors.iter().all(|&(p, _)| arith::mod_pow(w, m / p, l) != 1) {
            return w;
        }
        a += 1;
    }
}

/// Determinant over F_l with first-nonzero pivoting.
fn det_mod(dim: usize, a: &mut [u64], l: u64) -> u64 {
    let mut det = 1u64;
    let mut negate = false;
    for col in 0..dim {
        let pivot_row = match (col..dim).find(|&r| a[r * dim + col] != 0) {
            Some(r) => r,
            None => return 0,
        };
        if pivot_row != col {
            for j in 0..dim {
                a.swap(pivot_row * dim + j, col * dim + j);
            }
            negate = !negate;
        }
        let pivot = a[col * dim + col];
        det = arith::mul_mod(det, pivot, l);
        let inv = arith::mod_pow(pivot, l - 2, l);
        for row in col + 1..dim {
            let lead = a[row * dim + col];
            if lead == 0 {
                continue;
            }
            let factor = arith::mul_mod(lead, inv, l);
            for j in col..dim {
                let t = arith::mul_mod(factor, a[col * dim + j], l);
                let idx = row * dim + j;
                a[idx] = (a[idx] + l - t) % l;
            }
        }
    }
    if negate {
        (l - det) % l
    } else {
        det
    }
}

/// Lagrange interpolation through (points[t], values[t]) mod l; returns the
/// coefficient vector of the unique polynomial of degree < phi.
fn interpolate_mod(points: &[u64], values: &[u64], l: u64) -> Vec<u64> {
    let phi = points.len();
    // master polynomial prod (x - w_t)
    let mut master = vec![0u64; phi + 1];
    master[0] = 1;
    let mut deg = 0usize;
    for &w in points {
        // multiply by (x - w)
        for i in (0..=deg).rev() {
            let c = master[i];
            master[i + 1] = (master[i + 1] + c) % l;
            master[i] = arith::mul_mod(c, l - w % l, l) % l;
        }
        deg += 1;
    }
    let mut acc = vec![0u64; phi];
    let mut quot = vec![0u64; phi];
    for (t, &w) in points.iter().enumerate() {
        // synthetic division master / (x - w)
        let mut carry = 0u64;
        for i in (0..phi).rev() {
            carry = (arith::mul_mod(carry, w, l) + master[i + 1]) % l;
            quot[i] = carry;
        }
        // denominator = quot(w)
        let mut denom = 0u64;
        for &c in quot.iter().rev() {
            denom = (arith::mul_mod(denom, w, l) + c) % l;
        }
        let scale = arith::mul_mod(values[t], arith::mod_pow(denom, l - 2, l), l);
        if scale != 0 {
            for i in 0..phi {
                acc[i] = (acc[i] + arith::mul_mod(scale, quot[i], l)) % l;
            }
        }
    }
    acc
}

/// Exact determinant of an integral cyclotomic matrix by CRT over machine
/// primes; the result divides out `scale^dim` afterwards.
pub(crate) fn det_multimodular(mat: &IntegralMatrix) -> CycNum {
    let dim = mat.dim;
    let m = mat.conductor;
    let phi = mat.phi;
    let bound_bits = coordinate_bound_bits(mat);
    let count = (bound_bits / 60 + 2) as usize;
    let primes = prime_sequence(m.max(1), count);

    // residue vectors per prime
    let mut residues: Vec<Vec<u64>> = Vec::with_capacity(primes.len());
    for &l in &primes {
        let w = element_of_order(m, l);
        let points: Vec<u64> = (0..m)
            .filter(|t| arith::gcd(*t, m) == 1)
            .map(|t| arith::mod_pow(w, t, l))
            .collect();
        debug_assert_eq!(points.len(), phi);
        // coordinates of each entry reduced mod l
        let big_l = BigInt::from(l);
        let entry_coords: Vec<Vec<u64>> = mat
            .coords
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| x.mod_floor(&big_l).to_u64().expect("residue fits"))
                    .collect()
            })
            .collect();
        let mut values = vec![0u64; phi];
        let mut work = vec![0u64; dim * dim];
        for (root_idx, &pt) in points.iter().enumerate() {
            for (e, coords) in entry_coords.iter().enumerate() {
                // Horner at the root
                let mut acc = 0u64;
                for &c in coords.iter().rev() {
                    acc = (arith::mul_mod(acc, pt, l) + c) % l;
                }
                work[e] = acc;
            }
            values[root_idx] = det_mod(dim, &mut work, l);
        }
        residues.push(interpolate_mod(&points, &values, l));
    }

    // CRT per coordinate, symmetric lift
    let mut modulus = BigInt::one();
    for &l in &primes {
        modulus *= BigInt::from(l);
    }
    let half = &modulus >> 1;
    let mut coords = Vec::with_capacity(phi);
    for i in 0..phi {
        let mut x = BigInt::zero();
        let mut acc_mod = BigInt::one();
        for (k, &l) in primes.iter().enumerate() {
            let lb = BigInt::from(l);
            // x += acc_mod * ((r_k - x) / acc_mod mod l)
            let cur = x.mod_floor(&lb).to_u64().expect("fits");
            let diff = (residues[k][i] + l - cur) % l;
            let inv = arith::mod_pow(
                acc_mod.mod_floor(&lb).to_u64().expect("fits"),
                l - 2,
                l,
            );
            let t = arith::mul_mod(diff, inv, l);
            x += &acc_mod * BigInt::from(t);
            acc_mod *= lb;
        }
        if x > half {
            x -= &modulus;
        }
        coords.push(x);
    }

    let den = (&mat.scale).pow(dim as u32);
    CycNum::from_integer_coords(m, coords, den).expect("valid conductor")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_sequence_is_deterministic_and_congruent() {
        let a = prime_sequence(66, 4);
        let b = prime_sequence(66, 4);
        assert_eq!(a, b);
        for &l in &a {
            assert!(arith::is_prime_u64(l));
            assert_eq!(l % 66, 1);
            assert!(l > 1 << 61);
        }
    }

    #[test]
    fn order_elements() {
        let l = prime_sequence(12, 1)[0];
        let w = element_of_order(12, l);
        assert_eq!(arith::mod_pow(w, 12, l), 1);
        for d in [1u64, 2, 3, 4, 6] {
            assert_ne!(arith::mod_pow(w, d, l), 1);
        }
    }

    #[test]
    fn interpolation_round_trip() {
        let l = prime_sequence(8, 1)[0];
        // polynomial 3 + 2x + x^3 at 4 points
        let w = element_of_order(8, l);
        let points: Vec<u64> = [1u64, 3, 5, 7].iter().map(|&t| arith::mod_pow(w, t, l)).collect();
        let eval = |x: u64| -> u64 {
            let x2 = arith::mul_mod(x, x, l);
            let x3 = arith::mul_mod(x2, x, l);
            (3 + arith::mul_mod(2, x, l) + x3) % l
        };
        let values: Vec<u64> = points.iter().map(|&x| eval(x)).collect();
        let coeffs = interpolate_mod(&points, &values, l);
        assert_eq!(coeffs, vec![3, 2, 0, 1]);
    }

    #[test]
    fn small_field_determinant() {
        let l = 1_000_000_007u64;
        // [[1, 2], [3, 4]] -> -2
        let mut a = vec![1u64, 2, 3, 4];
        assert_eq!(det_mod(2, &mut a, l), l - 2);
        // singular
        let mut b = vec![1u64, 2, 2, 4];
        assert_eq!(det_mod(2, &mut b, l), 0);
    }
}
