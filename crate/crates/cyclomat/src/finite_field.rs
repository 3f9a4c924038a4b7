//! Explicit models of the finite fields F_{p^n} for odd p.
//!
//! A field is represented as F_p[x]/(f) for a deterministically chosen monic
//! irreducible f of degree n, together with a fixed generator of the
//! multiplicative group and a full discrete-log table. Elements are
//! coefficient vectors with respect to the power basis, fully reduced, so
//! equality is coordinate-wise.

use std::sync::OnceLock;

use crate::arith;
use crate::{Error, Result};

/// An element of some [`FiniteField`], as a length-n coefficient vector over
/// F_p (low degree first). Always fully reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// A concrete model of F_{p^n} with q = p^n elements.
#[derive(Debug)]
pub struct FiniteField {
    p: u64,
    n: u32,
    q: u64,
    /// Monic irreducible modulus, length n+1, low degree first.
    modulus: Vec<u64>,
    generator: FieldElement,
    /// Encoding of the generator's a-th power, for a in [0, q-2].
    powers: Vec<u64>,
    /// Discrete log by element encoding; `DLOG_NONE` marks the zero element.
    dlog: Vec<u64>,
    traces: OnceLock<Vec<u64>>,
}

const DLOG_NONE: u64 = u64::MAX;

impl FiniteField {
    /// Constructs F_{p^n} with the canonical modulus and generator.
    ///
    /// The modulus is the lexicographically smallest monic irreducible of
    /// degree n (non-leading coefficients compared low-degree-first), and the
    /// generator is the element of multiplicative order q-1 with smallest
    /// base-p integer encoding. Repeated calls agree bit-for-bit.
    pub fn new(p: u64, n: u32) -> Result<Self> {
        Self::validate_params(p, n)?;
        let modulus = first_irreducible(p, n);
        Self::from_modulus(p, n, modulus, None)
    }

    /// Constructs F_{p^n} from an explicit modulus and (optionally) an
    /// explicit generator. Both are validated.
    pub fn with_params(p: u64, n: u32, modulus: Vec<u64>, generator: Option<Vec<u64>>) -> Result<Self> {
        Self::validate_params(p, n)?;
        if modulus.len() != n as usize + 1 || modulus[n as usize] != 1 {
            return Err(Error::InvalidParameter(
                "modulus must be monic of degree n".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter("modulus coefficient out of range".into()));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::InvalidParameter("modulus is reducible".into()));
        }
        Self::from_modulus(p, n, modulus, generator)
    }

    fn validate_params(p: u64, n: u32) -> Result<()> {
        if p == 2 {
            return Err(Error::InvalidParameter("characteristic must be odd".into()));
        }
        if !arith::is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if n < 1 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let q = p.checked_pow(n).filter(|&q| q <= 1 << 40);
        if q.is_none() {
            return Err(Error::Capacity(format!("q = {p}^{n} too large")));
        }
        Ok(())
    }

    fn from_modulus(p: u64, n: u32, modulus: Vec<u64>, generator: Option<Vec<u64>>) -> Result<Self> {
        let q = p.pow(n);
        let mut field = FiniteField {
            p,
            n,
            q,
            modulus,
            generator: FieldElement { coeffs: vec![0; n as usize] },
            powers: Vec::new(),
            dlog: Vec::new(),
            traces: OnceLock::new(),
        };
        let gen = match generator {
            Some(coeffs) => {
                let g = field.element(coeffs)?;
                if !field.has_full_order(&g) {
                    return Err(Error::InvalidParameter(
                        "given generator does not have order q-1".into(),
                    ));
                }
                g
            }
            None => field.find_generator(),
        };
        field.generator = gen;
        field.build_log_tables();
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.n as usize] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let mut coeffs = vec![0; self.n as usize];
        coeffs[0] = v.rem_euclid(self.p as i64) as u64;
        FieldElement { coeffs }
    }

    /// Builds an element from explicit coordinates (length n, entries < p).
    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        if coeffs.len() != self.n as usize {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates, got {}",
                self.n,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameter("coordinate out of range".into()));
        }
        Ok(FieldElement { coeffs })
    }

    /// Base-p integer encoding of an element (coordinate i weighted by p^i).
    pub fn encode(&self, x: &FieldElement) -> u64 {
        let mut acc = 0u64;
        for &c in x.coeffs.iter().rev() {
            acc = acc * self.p + c;
        }
        acc
    }

    pub fn decode(&self, mut enc: u64) -> FieldElement {
        let mut coeffs = vec![0; self.n as usize];
        for c in coeffs.iter_mut() {
            *c = enc % self.p;
            enc /= self.p;
        }
        debug_assert_eq!(enc, 0);
        FieldElement { coeffs }
    }

    /// Iterates over all q elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|e| self.decode(e))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement { coeffs: poly_mul_mod(self.p, &self.modulus, &a.coeffs, &b.coeffs) }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Discrete logarithm with respect to the fixed generator.
    pub fn dlog(&self, x: &FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::Domain("dlog of zero".into()));
        }
        Ok(self.dlog[self.encode(x) as usize])
    }

    /// The generator raised to an arbitrary (signed) exponent.
    pub fn generator_power(&self, a: i64) -> FieldElement {
        let e = arith::norm_exp(a, self.q - 1);
        self.decode(self.powers[e as usize])
    }

    /// Trace to the prime subfield: Tr(x) = sum of x^(p^j), as a residue mod p.
    pub fn trace(&self, x: &FieldElement) -> u64 {
        let mut acc = x.clone();
        let mut frob = x.clone();
        for _ in 1..self.n {
            frob = self.pow(&frob, self.p);
            acc = self.add(&acc, &frob);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0), "trace not in F_p");
        acc.coeffs[0]
    }

    /// Trace of every element, indexed by encoding. Built once on demand.
    pub fn trace_table(&self) -> &[u64] {
        self.traces.get_or_init(|| (0..self.q).map(|e| self.trace(&self.decode(e))).collect())
    }

    /// Whether x lies in the prime subfield F_p.
    pub fn in_prime_subfield(&self, x: &FieldElement) -> bool {
        x.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The nonzero k-th powers D_k, ordered as generator^(k*i) for
    /// i = 1, ..., (q-1)/k. Contains 1 (as the last entry).
    ///
    /// The boundary k = q-1 is rejected except for k in {1, 2, 4}, the
    /// square/fourth-power enumerations that degenerate at q = 3 and q = 5.
    pub fn power_residues(&self, k: u64) -> Result<Vec<FieldElement>> {
        let q1 = self.q - 1;
        if k == 0 || q1 % k != 0 {
            return Err(Error::InvalidParameter(format!("k = {k} does not divide q-1 = {q1}")));
        }
        if k >= q1 && !matches!(k, 1 | 2 | 4) {
            return Err(Error::InvalidParameter(format!("k = {k} out of range for q = {}", self.q)));
        }
        let count = q1 / k;
        Ok((1..=count).map(|i| self.decode(self.powers[(k * i % q1) as usize])).collect())
    }

    fn has_full_order(&self, g: &FieldElement) -> bool {
        if g.is_zero() {
            return false;
        }
        let q1 = self.q - 1;
        if self.pow(g, q1) != self.one() {
            return false;
        }
        arith::factorize(q1).iter().all(|&(l, _)| self.pow(g, q1 / l) != self.one())
    }

    fn find_generator(&self) -> FieldElement {
        for enc in 2..self.q {
            let cand = self.decode(enc);
            if self.has_full_order(&cand) {
                return cand;
            }
        }
        unreachable!("F_q^x is cyclic, a generator exists");
    }

    fn build_log_tables(&mut self) {
        let q1 = (self.q - 1) as usize;
        let mut powers = Vec::with_capacity(q1);
        let mut dlog = vec![DLOG_NONE; self.q as usize];
        let mut cur = self.one();
        for a in 0..q1 {
            let enc = self.encode(&cur);
            powers.push(enc);
            dlog[enc as usize] = a as u64;
            cur = self.mul(&cur, &self.generator);
        }
        debug_assert_eq!(cur, self.one(), "generator order is not q-1");
        self.powers = powers;
        self.dlog = dlog;
    }
}

/// Schoolbook product of two reduced coefficient vectors, reduced mod the
/// monic modulus and mod p.
fn poly_mul_mod(p: u64, modulus: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len();
    if n == 1 {
        return vec![a[0] * b[0] % p];
    }
    let mut prod = vec![0u128; 2 * n - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] += (ai * bj) as u128;
        }
    }
    let mut v: Vec<u64> = prod.into_iter().map(|c| (c % p as u128) as u64).collect();
    for j in (n..2 * n - 1).rev() {
        let c = v[j];
        if c != 0 {
            for i in 0..n {
                let m = modulus[i];
                if m != 0 {
                    v[j - n + i] = (v[j - n + i] + c * (p - m)) % p;
                }
            }
            v[j] = 0;
        }
    }
    v.truncate(n);
    v
}

/// Degree of a coefficient vector, or None for the zero polynomial.
fn poly_degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

/// Remainder of a mod b over F_p (b nonzero).
fn poly_rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = poly_degree(b).expect("division by zero polynomial");
    let lead_inv = arith::mod_inv(b[db], p);
    let mut r = a.to_vec();
    while let Some(dr) = poly_degree(&r) {
        if dr < db {
            break;
        }
        let factor = r[dr] * lead_inv % p;
        for i in 0..=db {
            let sub = factor * b[i] % p;
            r[dr - db + i] = (r[dr - db + i] + p - sub) % p;
        }
    }
    r
}

fn poly_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while poly_degree(&b).is_some() {
        let r = poly_rem(p, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// x^(p^reps) mod f, starting from base (a reduced vector of length deg f).
fn frobenius_power(p: u64, f: &[u64], start: &[u64], reps: u32) -> Vec<u64> {
    let n = f.len() - 1;
    let mut cur = start.to_vec();
    for _ in 0..reps {
        // cur <- cur^p mod f by square and multiply
        let mut acc = vec![0u64; n];
        acc[0] = 1;
        let mut base = cur.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mul_mod(p, f, &acc, &base);
            }
            base = poly_mul_mod(p, f, &base, &base);
            e >>= 1;
        }
        cur = acc;
    }
    cur
}

/// Irreducibility over F_p by the x^(p^d) gcd test.
fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    let mut x = vec![0u64; n];
    x[1] = 1;
    // x^(p^n) must equal x mod f
    let xqn = frobenius_power(p, f, &x, n as u32);
    if xqn != x {
        return false;
    }
    // no roots in proper subextensions: gcd(x^(p^(n/l)) - x, f) = 1
    for (l, _) in arith::factorize(n as u64) {
        let d = n as u32 / l as u32;
        let mut g = frobenius_power(p, f, &x, d);
        g[1] = (g[1] + p - 1) % p;
        let gcd = poly_gcd(p, f, &g);
        if poly_degree(&gcd) != Some(0) {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree n over F_p,
/// non-leading coefficients compared low-degree-first as integers.
fn first_irreducible(p: u64, n: u32) -> Vec<u64> {
    let n = n as usize;
    let total = p.pow(n as u32);
    for t in 0..total {
        // digit for x^0 varies slowest: low-degree-first lexicographic order
        let mut f = vec![0u64; n + 1];
        let mut rem = t;
        for i in (0..n).rev() {
            f[i] = rem % p;
            rem /= p;
        }
        f[n] = 1;
        if is_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FiniteField::new(2, 3), Err(Error::InvalidParameter(_))));
        assert!(matches!(FiniteField::new(6, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(FiniteField::new(7, 0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn f7_generator_is_three() {
        // Oracle: brute-force order check over F_7 picks 3 as the first
        // primitive root (2 has order 3).
        let mut first = None;
        for g in 2..7u64 {
            let mut seen = std::collections::HashSet::new();
            let mut x = 1u64;
            for _ in 0..6 {
                x = x * g % 7;
                seen.insert(x);
            }
            if seen.len() == 6 {
                first = Some(g);
                break;
            }
        }
        assert_eq!(first, Some(3));

        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.encode(f.generator()), 3);
    }

    #[test]
    fn f9_modulus_is_lex_first_irreducible() {
        // Oracle: enumerate monic quadratics over F_3 in low-degree-first
        // lexicographic order and keep the first with no root.
        let mut expect = None;
        'outer: for c0 in 0..3u64 {
            for c1 in 0..3u64 {
                let has_root = (0..3u64).any(|x| (x * x + c1 * x + c0) % 3 == 0);
                if !has_root {
                    expect = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        assert_eq!(expect, Some(vec![1, 0, 1])); // x^2 + 1

        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn dlog_basics() {
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.dlog(&f.one()).unwrap(), 0);
        assert_eq!(f.dlog(f.generator()).unwrap(), 1);
        assert!(matches!(f.dlog(&f.zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn dlog_is_a_homomorphism() {
        for (p, n) in [(7u64, 1u32), (3, 2), (5, 2), (11, 1)] {
            let f = FiniteField::new(p, n).unwrap();
            let q1 = f.q() - 1;
            for a in 1..f.q() {
                for b in 1..f.q() {
                    let x = f.decode(a);
                    let y = f.decode(b);
                    let lhs = f.dlog(&f.mul(&x, &y)).unwrap();
                    let rhs = (f.dlog(&x).unwrap() + f.dlog(&y).unwrap()) % q1;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn dlog_table_is_a_bijection() {
        let f = FiniteField::new(3, 3).unwrap();
        let mut seen = vec![false; (f.q() - 1) as usize];
        for x in f.elements().skip(1) {
            let a = f.dlog(&x).unwrap();
            assert!(!seen[a as usize]);
            seen[a as usize] = true;
            assert_eq!(f.generator_power(a as i64), x);
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn trace_identity_on_prime_field() {
        let f = FiniteField::new(13, 1).unwrap();
        for x in f.elements() {
            assert_eq!(f.trace(&x), x.coeffs()[0]);
        }
    }

    #[test]
    fn trace_of_t_in_f9_is_zero() {
        // F_9 = F_3[t]/(t^2+1): Tr(t) = t + t^3 = t - t = 0.
        let f = FiniteField::new(3, 2).unwrap();
        let t = f.element(vec![0, 1]).unwrap();
        assert_eq!(f.trace(&t), 0);
    }

    #[test]
    fn trace_is_linear_and_onto() {
        for (p, n) in [(3u64, 4u32), (5, 2), (7, 2), (3, 2)] {
            let f = FiniteField::new(p, n).unwrap();
            let mut hit = vec![false; p as usize];
            for x in f.elements() {
                hit[f.trace(&x) as usize] = true;
            }
            assert!(hit.iter().all(|&h| h), "trace not onto for q={}", f.q());
            // linearity on all pairs for the smaller fields
            if f.q() <= 81 {
                for a in 0..f.q() {
                    for b in 0..f.q() {
                        let x = f.decode(a);
                        let y = f.decode(b);
                        let lhs = f.trace(&f.add(&x, &y));
                        let rhs = (f.trace(&x) + f.trace(&y)) % p;
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn squares_of_f7() {
        // Oracle: square every element of F_7^x.
        let mut squares: Vec<u64> = (1..7u64).map(|x| x * x % 7).collect();
        squares.sort_unstable();
        squares.dedup();
        assert_eq!(squares, vec![1, 2, 4]);

        let f = FiniteField::new(7, 1).unwrap();
        let d2 = f.power_residues(2).unwrap();
        let encs: Vec<u64> = d2.iter().map(|x| f.encode(x)).collect();
        // gamma = 3: 3^2 = 2, 3^4 = 4, 3^6 = 1
        assert_eq!(encs, vec![2, 4, 1]);
    }

    #[test]
    fn fourth_powers_of_f13() {
        let f = FiniteField::new(13, 1).unwrap();
        let d4 = f.power_residues(4).unwrap();
        assert_eq!(d4.len(), 3);
        // Oracle: brute-force fourth powers in F_13.
        let mut brute: Vec<u64> = (1..13u64).map(|x| x * x % 13 * x % 13 * x % 13).collect();
        brute.sort_unstable();
        brute.dedup();
        let mut got: Vec<u64> = d4.iter().map(|x| f.encode(x)).collect();
        got.sort_unstable();
        assert_eq!(got, brute);
    }

    #[test]
    fn power_residue_parameter_errors() {
        let f = FiniteField::new(7, 1).unwrap();
        assert!(f.power_residues(6).is_err()); // k = q-1
        assert!(f.power_residues(4).is_err()); // does not divide q-1
        assert!(f.power_residues(1).is_ok());
        assert!(f.power_residues(2).is_ok());
    }

    #[test]
    fn product_of_squares_sign() {
        // prod of all nonzero squares = (-1)^((q+1)/2), and
        // x^((q-1)/2) - 1 factors as prod (x - s) over squares s.
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81] {
            let (p, n) = arith::prime_power(q).unwrap();
            let f = FiniteField::new(p, n).unwrap();
            let squares = f.power_residues(2).unwrap();
            let mut prod = f.one();
            for s in &squares {
                prod = f.mul(&prod, s);
            }
            let expect = if (q + 1) / 2 % 2 == 0 { f.one() } else { f.from_int(-1) };
            assert_eq!(prod, expect, "q = {q}");

            // coefficient comparison: expand prod (x - s_j)
            let mut poly = vec![f.one()]; // coefficients, low degree first
            for s in &squares {
                let mut next = vec![f.zero(); poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] = f.add(&next[i + 1], c);
                    let t = f.mul(c, s);
                    next[i] = f.sub(&next[i], &t);
                }
                poly = next;
            }
            let half = ((q - 1) / 2) as usize;
            for (i, c) in poly.iter().enumerate() {
                let expect = if i == 0 {
                    f.from_int(-1)
                } else if i == half {
                    f.one()
                } else {
                    f.zero()
                };
                assert_eq!(c, &expect, "q = {q}, coefficient {i}");
            }
        }
    }

    #[test]
    fn minus_one_membership_in_dk() {
        for q in [7u64, 9, 13, 25, 27, 49] {
            let (p, n) = arith::prime_power(q).unwrap();
            let f = FiniteField::new(p, n).unwrap();
            let minus_one = f.from_int(-1);
            for k in arith::divisors(q - 1) {
                if k == 1 || k >= q - 1 {
                    continue;
                }
                let dk = f.power_residues(k).unwrap();
                let member = dk.contains(&minus_one);
                assert_eq!(member, (q - 1) / k % 2 == 0, "q = {q}, k = {k}");
            }
        }
    }

    #[test]
    fn model_with_alternate_modulus() {
        // x^2 + x + 2 is irreducible over F_3; the model must still work.
        let f = FiniteField::with_params(3, 2, vec![2, 1, 1], None).unwrap();
        assert_eq!(f.q(), 9);
        for x in f.elements().skip(1) {
            assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        }
        // reducible modulus rejected
        assert!(FiniteField::with_params(3, 2, vec![0, 0, 1], None).is_err());
    }
}
