//! Multiplicative characters and the sums built from them: Gauss sums,
//! Jacobi sums, Greene binomial coefficients and the Gaussian
//! hypergeometric function 2F1 over F_q.
//!
//! The character group of F_q^x is realized through the fixed generator: chi
//! sends the generator to zeta_{q-1}, and chi^r covers the whole group as r
//! runs mod q-1. Every character vanishes at 0, including the trivial one.
//!
//! Jacobi sums, binomials and 2F1 values are exact elements of Q(zeta_{q-1}).
//! Gauss sums need zeta_p as well, so they default to the numeric backend;
//! an exact variant at conductor lcm(p, q-1) is available below a conductor
//! bound.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;
use crate::cyclotomic::complex::{roots_of_unity_table, ComplexApprox};
use crate::cyclotomic::CycNum;
use crate::finite_field::{FieldElement, FiniteField};
use crate::{Error, Result};

/// Default cap on phi(lcm(p, q-1)) for exact Gauss sums.
pub const GAUSS_EXACT_PHI_BOUND: u64 = 2000;

/// The multiplicative character chi^r of a fixed field, where
/// chi(generator) = zeta_{q-1}.
#[derive(Debug, Clone, Copy)]
pub struct Character<'f> {
    field: &'f FiniteField,
    r: u64,
}

impl<'f> Character<'f> {
    pub fn new(field: &'f FiniteField, r: i64) -> Self {
        Character { field, r: arith::norm_exp(r, field.q() - 1) }
    }

    /// Exponent in [0, q-2].
    pub fn exponent(&self) -> u64 {
        self.r
    }

    pub fn is_trivial(&self) -> bool {
        self.r == 0
    }

    /// Whether this is the quadratic character phi = chi^((q-1)/2).
    pub fn is_quadratic(&self) -> bool {
        self.r == (self.field.q() - 1) / 2
    }

    /// Multiplicative order in the character group.
    pub fn order(&self) -> u64 {
        let q1 = self.field.q() - 1;
        q1 / arith::gcd(self.r, q1)
    }

    pub fn value(&self, x: &FieldElement) -> CycNum {
        char_value(self.field, self.r as i64, x)
    }
}

/// chi^r(x) as an exact element of Q(zeta_{q-1}); zero when x = 0.
pub fn char_value(field: &FiniteField, r: i64, x: &FieldElement) -> CycNum {
    let m = field.q() - 1;
    if x.is_zero() {
        return CycNum::zero(m).expect("valid conductor");
    }
    let a = field.dlog(x).expect("nonzero element");
    let r = arith::norm_exp(r, m);
    let e = (r as u128 * a as u128 % m as u128) as i64;
    CycNum::zeta_pow(m, e).expect("valid conductor")
}

/// chi^r(-1) as a sign: -1 lies at discrete log (q-1)/2, so this is (-1)^r.
pub fn char_sign_at_minus_one(field: &FiniteField, r: i64) -> i64 {
    let r = arith::norm_exp(r, field.q() - 1);
    if r % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Jacobi sum J_q(chi^a, chi^b) = sum over x of chi^a(x) chi^b(1-x), exact
/// in Q(zeta_{q-1}) by direct summation.
pub fn jacobi_sum(field: &FiniteField, a: i64, b: i64) -> CycNum {
    let q1 = field.q() - 1;
    let a = arith::norm_exp(a, q1);
    let b = arith::norm_exp(b, q1);
    let mut counts = vec![0i64; q1 as usize];
    let one = field.one();
    for x in field.elements() {
        if x.is_zero() || x == one {
            continue;
        }
        let dx = field.dlog(&x).expect("nonzero");
        let d1x = field.dlog(&field.sub(&one, &x)).expect("nonzero");
        let e = ((a as u128 * dx as u128 + b as u128 * d1x as u128) % q1 as u128) as usize;
        counts[e] += 1;
    }
    CycNum::from_exponent_counts(q1, &counts).expect("valid conductor")
}

/// Gauss sum G_q(chi^r) at the given precision (numeric backend).
pub fn gauss_sum(field: &FiniteField, r: i64, precision: u32) -> ComplexApprox {
    let q1 = field.q() - 1;
    let r = arith::norm_exp(r, q1);
    let zq = roots_of_unity_table(q1, precision);
    let zp = roots_of_unity_table(field.p(), precision);
    let traces = field.trace_table();
    let mut acc = ComplexApprox::zero(precision);
    for a in 0..q1 {
        let x = field.generator_power(a as i64);
        let e = (r as u128 * a as u128 % q1 as u128) as usize;
        let t = traces[field.encode(&x) as usize] as usize;
        acc = acc.add(&zq[e].mul(&zp[t]));
    }
    acc
}

/// All Gauss sums G_q(chi^t), t in [0, q-2], sharing the root tables.
pub fn gauss_sum_table(field: &FiniteField, precision: u32) -> Vec<ComplexApprox> {
    let q1 = field.q() - 1;
    let zq = roots_of_unity_table(q1, precision);
    let zp = roots_of_unity_table(field.p(), precision);
    let traces = field.trace_table();
    let mut terms = Vec::with_capacity(q1 as usize);
    for a in 0..q1 {
        let x = field.generator_power(a as i64);
        terms.push(zp[traces[field.encode(&x) as usize] as usize].clone());
    }
    (0..q1)
        .map(|t| {
            let mut acc = ComplexApprox::zero(precision);
            for (a, term) in terms.iter().enumerate() {
                let e = (t as u128 * a as u128 % q1 as u128) as usize;
                acc = acc.add(&zq[e].mul(term));
            }
            acc
        })
        .collect()
}

/// Exact Gauss sum in Q(zeta_L), L = lcm(p, q-1), gated by a cap on phi(L).
pub fn gauss_sum_exact(field: &FiniteField, r: i64, phi_bound: u64) -> Result<CycNum> {
    let q1 = field.q() - 1;
    let p = field.p();
    let conductor = arith::lcm(p, q1);
    let phi = arith::euler_phi(conductor);
    if phi > phi_bound {
        return Err(Error::Capacity(format!(
            "phi({conductor}) = {phi} exceeds the exact Gauss-sum bound {phi_bound}"
        )));
    }
    let r = arith::norm_exp(r, q1);
    let step_q = conductor / q1;
    let step_p = conductor / p;
    let traces = field.trace_table();
    let mut counts = vec![0i64; conductor as usize];
    for a in 0..q1 {
        let x = field.generator_power(a as i64);
        let t = traces[field.encode(&x) as usize];
        let e = ((r as u128 * a as u128 % q1 as u128) * step_q as u128
            + t as u128 * step_p as u128)
            % conductor as u128;
        counts[e as usize] += 1;
    }
    CycNum::from_exponent_counts(conductor, &counts)
}

/// Greene's binomial coefficient (chi^a over chi^b) = chi^b(-1)/q *
/// J_q(chi^a, chi^(-b)), exact with rational coordinates.
pub fn greene_binomial(field: &FiniteField, a: i64, b: i64) -> CycNum {
    let q1 = field.q() - 1;
    let b_norm = arith::norm_exp(b, q1);
    let j = jacobi_sum(field, a, -(b_norm as i64));
    let sign = if b_norm % 2 == 0 { 1 } else { -1 };
    j.scale(&BigRational::new(sign.into(), (field.q() as i64).into()))
}

/// The Gaussian hypergeometric function 2F1(A, B; C | lambda) over F_q with
/// A = chi^a, B = chi^b, C = chi^c: the character average
/// (q/(q-1)) * sum over chi' of (A chi' over chi')(B chi' over C chi') chi'(lambda).
pub fn hyp2f1(field: &FiniteField, a: i64, b: i64, c: i64, lambda: &FieldElement) -> CycNum {
    let q1 = field.q() - 1;
    let m = q1;
    if lambda.is_zero() {
        return CycNum::zero(m).expect("valid conductor");
    }
    let dl = field.dlog(lambda).expect("nonzero");
    let mut acc = CycNum::zero(m).expect("valid conductor");
    for t in 0..q1 as i64 {
        let first = greene_binomial(field, a + t, t);
        if first.is_zero() {
            continue;
        }
        let second = greene_binomial(field, b + t, c + t);
        if second.is_zero() {
            continue;
        }
        let e = (t as u128 * dl as u128 % m as u128) as i64;
        let chi_lambda = CycNum::zeta_pow(m, e).expect("valid conductor");
        let term =
            first.mul(&second).expect("same conductor").mul(&chi_lambda).expect("same conductor");
        acc = acc.add(&term).expect("same conductor");
    }
    acc.scale(&BigRational::new((field.q() as i64).into(), (q1 as i64).into()))
}

/// Indicator of the nonzero fourth powers, computed both as the character
/// average (1/4)(eps + chi^((q-1)/4) + phi + chi^(3(q-1)/4))(x) and by
/// membership in D_4; the two must agree.
pub fn fourth_power_indicator(field: &FiniteField, x: &FieldElement) -> Result<BigRational> {
    let q1 = field.q() - 1;
    if q1 % 4 != 0 {
        return Err(Error::InvalidParameter(format!("4 does not divide q-1 = {q1}")));
    }
    let quarter = (q1 / 4) as i64;
    let mut acc = CycNum::zero(q1).expect("valid conductor");
    for j in 0..4 {
        acc = acc.add(&char_value(field, j * quarter, x)).expect("same conductor");
    }
    let avg = acc.scale(&BigRational::new(1.into(), 4.into()));
    let value = avg
        .as_rational()
        .expect("average over the coset indicator group is rational");

    let by_membership = if x.is_zero() {
        BigRational::zero()
    } else if field.dlog(x).expect("nonzero") % 4 == 0 {
        BigRational::one()
    } else {
        BigRational::zero()
    };
    assert_eq!(value, by_membership, "indicator routes disagree");
    Ok(value)
}
