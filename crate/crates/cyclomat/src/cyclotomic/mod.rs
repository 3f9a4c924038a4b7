//! Exact arithmetic in the cyclotomic fields Q(zeta_m).
//!
//! A value is a polynomial in zeta_m of degree < phi(m), i.e. an element of
//! Q[x]/Phi_m(x) in the power basis. Internally the phi(m) rational
//! coordinates share one positive denominator with the content reduced, so
//! equality is plain coordinate comparison and the frequent all-integer case
//! (character sums are sums of roots of unity) never touches gcd-heavy
//! per-coordinate rationals.
//!
//! Conductors are never lifted implicitly: mixing two conductors is an
//! error, and [`CycNum::lift_to`] is the explicit lifting map
//! zeta_m -> zeta_{m'}^{m'/m}.

pub mod complex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith;
use crate::finite_field::{FieldElement, FiniteField};
use crate::{Error, Result};
use complex::{primitive_root_of_unity, BigFloat, ComplexApprox};

/// Monomial reduction tables are precomputed only below this conductor.
const ZETA_TABLE_LIMIT: u64 = 1024;

/// Shared per-conductor data: Phi_m and the reduction of x^phi.
#[derive(Debug)]
pub struct CycContext {
    m: u64,
    phi: usize,
    phi_poly: Vec<BigInt>,
    /// Coordinates of x^phi in the power basis (x^phi = -(lower terms)).
    red_row: Vec<BigInt>,
    /// Coordinates of x^e for e in [0, m), built on demand for small m.
    zeta_pows: OnceLock<Vec<Vec<BigInt>>>,
}

static CONTEXTS: Mutex<Option<HashMap<u64, Arc<CycContext>>>> = Mutex::new(None);

impl CycContext {
    pub fn get(m: u64) -> Result<Arc<CycContext>> {
        if m < 1 {
            return Err(Error::InvalidParameter("conductor must be >= 1".into()));
        }
        {
            let cache = CONTEXTS.lock().unwrap();
            if let Some(map) = cache.as_ref() {
                if let Some(ctx) = map.get(&m) {
                    return Ok(ctx.clone());
                }
            }
        }
        let phi_poly = cyclotomic_polynomial(m)?;
        let phi = phi_poly.len() - 1;
        let red_row: Vec<BigInt> = phi_poly[..phi].iter().map(|c| -c).collect();
        let ctx = Arc::new(CycContext { m, phi, phi_poly, red_row, zeta_pows: OnceLock::new() });
        let mut cache = CONTEXTS.lock().unwrap();
        Ok(cache.get_or_insert_with(HashMap::new).entry(m).or_insert(ctx).clone())
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn phi_poly(&self) -> &[BigInt] {
        &self.phi_poly
    }

    /// Coordinates of x^e mod Phi_m for 0 <= e < m.
    fn zeta_power_coords(&self, e: u64) -> Vec<BigInt> {
        debug_assert!(e < self.m);
        if (e as usize) < self.phi {
            let mut v = vec![BigInt::zero(); self.phi];
            v[e as usize] = BigInt::one();
            return v;
        }
        if self.m <= ZETA_TABLE_LIMIT {
            return self.zeta_table()[e as usize].clone();
        }
        // rare large-conductor path: reduce x^e by repeated shifts
        let mut acc = vec![BigInt::zero(); self.phi];
        acc[self.phi - 1] = BigInt::one();
        for _ in 0..(e - (self.phi as u64 - 1)) {
            shift_reduce(&mut acc, &self.red_row);
        }
        acc
    }

    fn zeta_table(&self) -> &Vec<Vec<BigInt>> {
        self.zeta_pows.get_or_init(|| {
            let mut rows = Vec::with_capacity(self.m as usize);
            let mut cur = vec![BigInt::zero(); self.phi];
            cur[0] = BigInt::one();
            for _ in 0..self.m {
                rows.push(cur.clone());
                shift_reduce(&mut cur, &self.red_row);
            }
            rows
        })
    }
}

/// Multiplies a reduced coordinate vector by x, reducing the overflow term
/// through x^phi = red_row.
fn shift_reduce(acc: &mut [BigInt], red_row: &[BigInt]) {
    let phi = acc.len();
    let top = std::mem::take(&mut acc[phi - 1]);
    for i in (1..phi).rev() {
        acc[i] = std::mem::take(&mut acc[i - 1]);
    }
    acc[0] = BigInt::zero();
    if !top.is_zero() {
        for (a, r) in acc.iter_mut().zip(red_row) {
            if !r.is_zero() {
                *a += &top * r;
            }
        }
    }
}

/// An exact element of Q(zeta_m): `num[i]/den` are the coordinates with
/// respect to 1, zeta, ..., zeta^(phi(m)-1).
#[derive(Debug, Clone)]
pub struct CycNum {
    ctx: Arc<CycContext>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.m == other.ctx.m && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycNum {}

impl CycNum {
    fn raw(ctx: Arc<CycContext>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut v = CycNum { ctx, num, den };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        debug_assert!(!self.den.is_zero());
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in self.num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    return;
                }
            }
        }
        for c in self.num.iter_mut() {
            *c /= &g;
        }
        self.den /= &g;
    }

    pub fn zero(m: u64) -> Result<Self> {
        let ctx = CycContext::get(m)?;
        let phi = ctx.phi;
        Ok(CycNum { ctx, num: vec![BigInt::zero(); phi], den: BigInt::one() })
    }

    pub fn one(m: u64) -> Result<Self> {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: u64, v: i64) -> Result<Self> {
        let ctx = CycContext::get(m)?;
        let mut num = vec![BigInt::zero(); ctx.phi];
        num[0] = BigInt::from(v);
        Ok(CycNum { ctx, num, den: BigInt::one() })
    }

    pub fn from_rational(m: u64, v: BigRational) -> Result<Self> {
        let ctx = CycContext::get(m)?;
        let mut num = vec![BigInt::zero(); ctx.phi];
        num[0] = v.numer().clone();
        Ok(CycNum::raw(ctx, num, v.denom().clone()))
    }

    /// zeta_m raised to a (signed) exponent.
    pub fn zeta_pow(m: u64, e: i64) -> Result<Self> {
        let ctx = CycContext::get(m)?;
        let e = arith::norm_exp(e, m);
        let num = ctx.zeta_power_coords(e);
        Ok(CycNum { ctx, num, den: BigInt::one() })
    }

    /// Assembles `sum_e counts[e] * zeta_m^e` from one coefficient per
    /// exponent class (the natural output shape of a character sum).
    pub fn from_exponent_counts(m: u64, counts: &[i64]) -> Result<Self> {
        let ctx = CycContext::get(m)?;
        if counts.len() != m as usize {
            return Err(Error::InvalidParameter("need one count per exponent".into()));
        }
        let phi = ctx.phi;
        let mut acc = vec![BigInt::zero(); phi];
        for e in (0..counts.len()).rev() {
            shift_reduce(&mut acc, &ctx.red_row);
            if counts[e] != 0 {
                acc[0] += counts[e];
            }
        }
        Ok(CycNum { ctx, num: acc, den: BigInt::one() })
    }

    /// Builds a value directly from integer coordinates over a common
    /// denominator (normalized on construction).
    pub fn from_integer_coords(m: u64, coords: Vec<BigInt>, den: BigInt) -> Result<Self> {
        let ctx = CycContext::get(m)?;
        if coords.len() != ctx.phi {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates for conductor {m}",
                ctx.phi
            )));
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(CycNum::raw(ctx, coords, den))
    }

    pub fn conductor(&self) -> u64 {
        self.ctx.m
    }

    /// Coordinates as reduced rationals (the public representation).
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    /// Integer numerator coordinates over the common denominator.
    pub fn numerator_coords(&self) -> &[BigInt] {
        &self.num
    }

    /// The common (positive) denominator.
    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    /// Some(r) when the value lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    fn check_conductor(&self, other: &Self) -> Result<()> {
        if self.ctx.m != other.ctx.m {
            return Err(Error::ConductorMismatch(self.ctx.m, other.ctx.m));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        let (num, den) = if self.den == other.den {
            (self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect(), self.den.clone())
        } else {
            let g = self.den.gcd(&other.den);
            let la = &other.den / &g;
            let lb = &self.den / &g;
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a * &la + b * &lb)
                .collect();
            (num, &self.den * &la)
        };
        Ok(CycNum::raw(self.ctx.clone(), num, den))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycNum {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        let phi = self.ctx.phi;
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        // long division by the monic Phi_m, top down
        for j in (phi..2 * phi - 1).rev() {
            let t = std::mem::take(&mut conv[j]);
            if !t.is_zero() {
                for (i, r) in self.ctx.red_row.iter().enumerate() {
                    if !r.is_zero() {
                        conv[j - phi + i] += &t * r;
                    }
                }
            }
        }
        conv.truncate(phi);
        Ok(CycNum::raw(self.ctx.clone(), conv, &self.den * &other.den))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * s.numer()).collect();
        CycNum::raw(self.ctx.clone(), num, &self.den * s.denom())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycNum::one(self.ctx.m).expect("context exists");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same conductor");
            }
            base = base.mul(&base).expect("same conductor");
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_m (a field inverse: Phi_m is irreducible over Q).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let den = BigRational::from_integer(self.den.clone());
        let a: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::from_integer(c.clone()) / &den)
            .collect();
        let phi: Vec<BigRational> =
            self.ctx.phi_poly.iter().map(|c| BigRational::from_integer(c.clone())).collect();

        // extended gcd tracking only the cofactor of `a`
        let mut r0 = phi;
        let mut r1 = trim(a);
        let mut t0: Vec<BigRational> = vec![];
        let mut t1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, rem) = poly_divmod(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = t2;
        }
        debug_assert_eq!(r0.len(), 1, "Phi_m irreducible: gcd must be a unit");
        let c = &r0[0];
        let mut coords = vec![BigRational::zero(); self.ctx.phi];
        for (i, t) in t0.iter().enumerate() {
            coords[i] = t / c;
        }
        Ok(Self::from_rational_coords(self.ctx.clone(), &coords))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    fn from_rational_coords(ctx: Arc<CycContext>, coords: &[BigRational]) -> Self {
        let mut den = BigInt::one();
        for c in coords {
            den = den.lcm(c.denom());
        }
        let num = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        CycNum::raw(ctx, num, den)
    }

    /// Explicit conductor lifting zeta_m -> zeta_{m2}^{m2/m}.
    pub fn lift_to(&self, m2: u64) -> Result<Self> {
        if m2 % self.ctx.m != 0 {
            return Err(Error::InvalidParameter(format!(
                "cannot lift conductor {} into {}",
                self.ctx.m, m2
            )));
        }
        let step = m2 / self.ctx.m;
        let ctx2 = CycContext::get(m2)?;
        let mut num = vec![BigInt::zero(); ctx2.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coords = ctx2.zeta_power_coords(i as u64 * step % m2);
            for (acc, t) in num.iter_mut().zip(&coords) {
                if !t.is_zero() {
                    *acc += c * t;
                }
            }
        }
        Ok(CycNum::raw(ctx2, num, self.den.clone()))
    }

    /// Embedding into C sending zeta_m to e^(2 pi i / m).
    pub fn embed(&self, precision: u32) -> ComplexApprox {
        let prec = precision.max(53);
        let zeta = primitive_root_of_unity(self.ctx.m, prec);
        let mut acc = ComplexApprox::zero(prec);
        for c in self.num.iter().rev() {
            acc = acc.mul(&zeta);
            if !c.is_zero() {
                acc = acc.add(&ComplexApprox::from_real(BigFloat::from_bigint(c, prec)));
            }
        }
        let den = ComplexApprox::from_real(BigFloat::from_bigint(&self.den, prec));
        acc.div(&den)
    }

    /// Reduction onto F_q modulo the prime fixed by zeta_{q-1} -> generator:
    /// evaluates the representing polynomial at generator^((q-1)/m).
    ///
    /// Requires integral coordinates and a conductor dividing q-1.
    pub fn reduce_mod_prime(&self, field: &FiniteField) -> Result<FieldElement> {
        if !self.is_integral() {
            return Err(Error::NonIntegral(format!(
                "denominator {} is not 1",
                self.den
            )));
        }
        let q1 = field.q() - 1;
        if q1 % self.ctx.m != 0 {
            return Err(Error::InvalidParameter(format!(
                "conductor {} does not divide q-1 = {q1}",
                self.ctx.m
            )));
        }
        let g = field.generator_power((q1 / self.ctx.m) as i64);
        let p = BigInt::from(field.p());
        let mut acc = field.zero();
        for c in self.num.iter().rev() {
            acc = field.mul(&acc, &g);
            let r = c.mod_floor(&p);
            let r64 = i64::try_from(&r).expect("residue fits i64");
            acc = field.add(&acc, &field.from_int(r64));
        }
        Ok(acc)
    }
}

impl std::fmt::Display for CycNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z^{i}")?;
            } else {
                write!(f, "{c}*z^{i}")?;
            }
        }
        if self.den.is_one() {
            write!(f, " [z = zeta_{}]", self.ctx.m)
        } else {
            write!(f, " over {} [z = zeta_{}]", self.den, self.ctx.m)
        }
    }
}

/// The m-th cyclotomic polynomial, monic with integer coefficients, low
/// degree first, computed by iterated exact division of x^m - 1.
pub fn cyclotomic_polynomial(m: u64) -> Result<Vec<BigInt>> {
    if m < 1 {
        return Err(Error::InvalidParameter("conductor must be >= 1".into()));
    }
    static PHI_CACHE: Mutex<Option<HashMap<u64, Vec<BigInt>>>> = Mutex::new(None);
    if let Some(cached) = PHI_CACHE.lock().unwrap().as_ref().and_then(|c| c.get(&m)) {
        return Ok(cached.clone());
    }
    let mut f = vec![BigInt::zero(); m as usize + 1];
    f[0] = BigInt::from(-1);
    f[m as usize] = BigInt::one();
    for d in arith::divisors(m) {
        if d < m {
            let phi_d = cyclotomic_polynomial(d)?;
            f = poly_div_exact_int(&f, &phi_d);
        }
    }
    PHI_CACHE.lock().unwrap().get_or_insert_with(HashMap::new).insert(m, f.clone());
    Ok(f)
}

/// Exact division of integer polynomials with monic divisor.
fn poly_div_exact_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one(), "divisor must be monic");
    let mut rem = a.to_vec();
    let da = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for j in (0..=da - db).rev() {
        let c = std::mem::take(&mut rem[j + db]);
        if c.is_zero() {
            continue;
        }
        for i in 0..db {
            rem[j + i] -= &c * &b[i];
        }
        quot[j] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "division must be exact");
    quot
}

// --- small rational-polynomial helpers for the extended gcd ---

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for j in (0..quot.len()).rev() {
        let c = &rem[j + db] / lead;
        if c.is_zero() {
            continue;
        }
        for i in 0..=db {
            let t = &c * &b[i];
            rem[j + i] -= t;
        }
        quot[j] = c;
    }
    (trim(quot), trim(rem))
}
