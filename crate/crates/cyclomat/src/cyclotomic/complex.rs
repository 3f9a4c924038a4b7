//! Fixed-point real and complex arithmetic at a configurable bit precision.
//!
//! A value is stored as an arbitrary-precision mantissa scaled by 2^-prec.
//! This is all the numeric backend needs: field operations, square roots and
//! roots of unity (computed by Newton iteration on z^m - 1 from an f64 seed),
//! with enough headroom at 192 bits that a 1e-6 relative tolerance is never
//! in doubt for desk-scale products.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

/// A real number `mant / 2^prec`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), prec }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        BigFloat { mant: BigInt::from(v) << prec, prec }
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        BigFloat { mant: v.clone() << prec, prec }
    }

    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        BigFloat { mant: (r.numer().clone() << prec) / r.denom(), prec }
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        let r = BigRational::from_float(v).expect("finite float");
        Self::from_ratio(&r, prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.prec, other.prec, "mixed precisions");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        BigFloat { mant: &self.mant + &other.mant, prec: self.prec }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        BigFloat { mant: &self.mant - &other.mant, prec: self.prec }
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, prec: self.prec }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        BigFloat { mant: (&self.mant * &other.mant) >> self.prec, prec: self.prec }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.check(other);
        assert!(!other.mant.is_zero(), "fixed-point division by zero");
        BigFloat { mant: (&self.mant << self.prec) / &other.mant, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), prec: self.prec }
    }

    /// Square root of a nonnegative value (integer square root of the scaled
    /// mantissa; error below one ulp).
    pub fn sqrt(&self) -> Self {
        assert!(!self.mant.is_negative(), "sqrt of negative value");
        BigFloat { mant: (&self.mant << self.prec).sqrt(), prec: self.prec }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn cmp_value(&self, other: &Self) -> std::cmp::Ordering {
        self.check(other);
        self.mant.cmp(&other.mant)
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        let mant = if prec >= self.prec {
            &self.mant << (prec - self.prec)
        } else {
            &self.mant >> (self.prec - prec)
        };
        BigFloat { mant, prec }
    }

    pub fn to_f64(&self) -> f64 {
        self.mant.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(self.prec as i32))
    }

    /// Decimal rendering with `digits` fractional digits (default scaled to
    /// the binary precision when `None`).
    pub fn to_decimal_string(&self, digits: Option<usize>) -> String {
        let digits = digits.unwrap_or((self.prec as f64 * 0.30103) as usize);
        let scale = BigInt::from(10).pow(digits as u32);
        let scaled = (&self.mant * &scale) >> self.prec;
        let neg = scaled.is_negative();
        let s = scaled.abs().to_string();
        let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits - s.len() + 1), s) } else { s };
        let (int_part, frac_part) = s.split_at(s.len() - digits);
        format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_part)
    }
}

/// A complex number with fixed-point real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexApprox {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl ComplexApprox {
    pub fn zero(prec: u32) -> Self {
        ComplexApprox { re: BigFloat::zero(prec), im: BigFloat::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, 0, prec)
    }

    pub fn i(prec: u32) -> Self {
        Self::from_i64(0, 1, prec)
    }

    pub fn from_i64(re: i64, im: i64, prec: u32) -> Self {
        ComplexApprox { re: BigFloat::from_i64(re, prec), im: BigFloat::from_i64(im, prec) }
    }

    pub fn from_real(re: BigFloat) -> Self {
        let prec = re.precision();
        ComplexApprox { re, im: BigFloat::zero(prec) }
    }

    pub fn precision(&self) -> u32 {
        self.re.precision()
    }

    pub fn add(&self, other: &Self) -> Self {
        ComplexApprox { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ComplexApprox { re: self.re.sub(&other.re), im: self.im.sub(&other.im) }
    }

    pub fn neg(&self) -> Self {
        ComplexApprox { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        ComplexApprox { re, im }
    }

    pub fn div(&self, other: &Self) -> Self {
        let d = other.norm_sqr();
        let re = self.re.mul(&other.re).add(&self.im.mul(&other.im)).div(&d);
        let im = self.im.mul(&other.re).sub(&self.re.mul(&other.im)).div(&d);
        ComplexApprox { re, im }
    }

    pub fn conj(&self) -> Self {
        ComplexApprox { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    pub fn powu(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.precision());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn scale_i64(&self, v: i64) -> Self {
        let f = BigFloat::from_i64(v, self.precision());
        ComplexApprox { re: self.re.mul(&f), im: self.im.mul(&f) }
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        ComplexApprox { re: self.re.with_precision(prec), im: self.im.with_precision(prec) }
    }

    pub fn dist(&self, other: &Self) -> BigFloat {
        self.sub(other).abs()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// Relative closeness test: |a - b| <= tol * max(|a|, |b|), with an absolute
/// fallback when both magnitudes are below tol.
pub fn approx_eq(a: &ComplexApprox, b: &ComplexApprox, tol: f64) -> bool {
    let d = a.dist(b).to_f64();
    let m = a.abs().to_f64().max(b.abs().to_f64());
    if m <= tol {
        d <= tol
    } else {
        d <= tol * m
    }
}

/// Relative error as an f64, for report rendering.
pub fn rel_error(a: &ComplexApprox, b: &ComplexApprox) -> f64 {
    let d = a.dist(b).to_f64();
    let m = a.abs().to_f64().max(b.abs().to_f64());
    if m == 0.0 {
        d
    } else {
        d / m
    }
}

static ROOT_CACHE: Mutex<Option<HashMap<(u64, u32), ComplexApprox>>> = Mutex::new(None);

/// The primitive m-th root of unity e^(2 pi i / m) at the given precision.
pub fn primitive_root_of_unity(m: u64, prec: u32) -> ComplexApprox {
    assert!(m >= 1);
    match m {
        1 => return ComplexApprox::one(prec),
        2 => return ComplexApprox::from_i64(-1, 0, prec),
        4 => return ComplexApprox::i(prec),
        _ => {}
    }
    {
        let cache = ROOT_CACHE.lock().unwrap();
        if let Some(map) = cache.as_ref() {
            if let Some(z) = map.get(&(m, prec)) {
                return z.clone();
            }
        }
    }
    let z = newton_root_of_unity(m, prec);
    let mut cache = ROOT_CACHE.lock().unwrap();
    cache.get_or_insert_with(HashMap::new).insert((m, prec), z.clone());
    z
}

/// All m powers 1, zeta, ..., zeta^(m-1) of the primitive m-th root.
pub fn roots_of_unity_table(m: u64, prec: u32) -> Vec<ComplexApprox> {
    let zeta = primitive_root_of_unity(m, prec);
    let mut out = Vec::with_capacity(m as usize);
    let mut cur = ComplexApprox::one(prec);
    for _ in 0..m {
        out.push(cur.clone());
        cur = cur.mul(&zeta);
    }
    out
}

fn newton_root_of_unity(m: u64, prec: u32) -> ComplexApprox {
    let wp = prec + 32;
    let theta = 2.0 * std::f64::consts::PI / m as f64;
    let mut z = ComplexApprox {
        re: BigFloat::from_f64(theta.cos(), wp),
        im: BigFloat::from_f64(theta.sin(), wp),
    };
    let one = ComplexApprox::one(wp);
    // 53 seed bits double each step; a couple extra runs absorb rounding.
    let iters = ((wp as f64 / 50.0).log2().ceil() as u32).max(1) + 2;
    for _ in 0..iters {
        let w = z.powu(m - 1); // z^(m-1)
        let t = z.mul(&w).sub(&one); // z^m - 1
        let denom = w.scale_i64(m as i64);
        z = z.sub(&t.div(&denom));
    }
    debug_assert!(
        z.norm_sqr().sub(&BigFloat::from_i64(1, wp)).abs().to_f64() < 2f64.powi(-(prec as i32) + 8)
    );
    z.with_precision(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_fixed_point_ops() {
        let prec = 128;
        let a = BigFloat::from_i64(3, prec);
        let b = BigFloat::from_i64(4, prec);
        assert_eq!(a.add(&b), BigFloat::from_i64(7, prec));
        assert_eq!(a.mul(&b), BigFloat::from_i64(12, prec));
        let half = BigFloat::from_i64(1, prec).div(&BigFloat::from_i64(2, prec));
        assert!((half.to_f64() - 0.5).abs() < 1e-15);
        // sqrt(2)^2 = 2 to ~prec bits
        let s = BigFloat::from_i64(2, prec).sqrt();
        let err = s.mul(&s).sub(&BigFloat::from_i64(2, prec)).abs().to_f64();
        assert!(err < 2f64.powi(-100), "err = {err:e}");
    }

    #[test]
    fn decimal_rendering() {
        let prec = 64;
        let v = BigFloat::from_i64(-5, prec).div(&BigFloat::from_i64(4, prec));
        assert!(v.to_decimal_string(Some(4)).starts_with("-1.2500"));
        let z = BigFloat::from_i64(0, prec);
        assert_eq!(z.to_decimal_string(Some(2)), "0.00");
    }

    #[test]
    fn roots_of_unity_satisfy_equation() {
        for m in [1u64, 2, 3, 4, 5, 6, 7, 12, 30, 66, 198] {
            let z = primitive_root_of_unity(m, 192);
            let pow = z.powu(m);
            let err = pow.dist(&ComplexApprox::one(192)).to_f64();
            assert!(err < 2f64.powi(-150), "m = {m}, err = {err:e}");
            // the angle is 2 pi / m, not some other root
            let (re, im) = z.to_f64_pair();
            let theta = 2.0 * std::f64::consts::PI / m as f64;
            assert!((re - theta.cos()).abs() < 1e-12, "m = {m}");
            assert!((im - theta.sin()).abs() < 1e-12, "m = {m}");
        }
    }

    #[test]
    fn complex_division_roundtrip() {
        let a = ComplexApprox::from_i64(3, -7, 160);
        let b = ComplexApprox::from_i64(-2, 5, 160);
        let q = a.div(&b);
        let back = q.mul(&b);
        assert!(back.dist(&a).to_f64() < 2f64.powi(-120));
    }

    #[test]
    fn root_table_consistency() {
        let table = roots_of_unity_table(12, 96);
        // zeta^3 = i for m = 12
        assert!(table[3].dist(&ComplexApprox::i(96)).to_f64() < 1e-20);
        // zeta^6 = -1
        assert!(table[6].dist(&ComplexApprox::from_i64(-1, 0, 96)).to_f64() < 1e-20);
    }
}
