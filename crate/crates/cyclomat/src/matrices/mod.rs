//! The cyclotomic matrices under study and their determinants.
//!
//! `B`, `M`, `N` and the Carlitz matrix live over Q(zeta_m) (entries are
//! sums of character values); `T` lives over F_q. Exact determinants are
//! computed multimodularly (see `modular_det`): per-prime Gaussian
//! elimination with the pivot chosen as the first nonzero entry in column
//! order, CRT-combined under a deterministic coordinate bound. A direct
//! rational-arithmetic elimination over Q[x]/Phi_m is kept as
//! [`det_exact_gaussian`] and cross-checked in tests; it computes the same
//! values but its mid-elimination entries carry norm-sized denominators,
//! which is prohibitive at the larger conductors. Singularity detection is
//! exact in both: a dead pivot column yields determinant 0, never a
//! threshold.

mod modular_det;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::arith;
use crate::char_sums::{char_value, gauss_sum, jacobi_sum};
use crate::cyclotomic::complex::{approx_eq, ComplexApprox};
use crate::cyclotomic::CycNum;
use crate::finite_field::{FieldElement, FiniteField};
use crate::report::{Backend, ReportBuilder, VerificationReport};
use crate::{Error, Result};

/// A square matrix over Q(zeta_m), all entries at one conductor.
#[derive(Debug, Clone)]
pub struct CycMatrix {
    dim: usize,
    conductor: u64,
    entries: Vec<CycNum>,
}

impl CycMatrix {
    pub fn new(dim: usize, entries: Vec<CycNum>) -> Result<Self> {
        if dim < 1 || entries.len() != dim * dim {
            return Err(Error::InvalidParameter("entry count must be dim^2".into()));
        }
        let conductor = entries[0].conductor();
        if entries.iter().any(|e| e.conductor() != conductor) {
            return Err(Error::InvalidParameter("mixed conductors in matrix".into()));
        }
        Ok(CycMatrix { dim, conductor, entries })
    }

    pub fn identity(dim: usize, conductor: u64) -> Result<Self> {
        let zero = CycNum::zero(conductor)?;
        let one = CycNum::one(conductor)?;
        let mut entries = vec![zero; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = one.clone();
        }
        CycMatrix::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.entries
    }

    /// Matrix-vector product (exact).
    pub fn mul_vector(&self, v: &[CycNum]) -> Result<Vec<CycNum>> {
        if v.len() != self.dim {
            return Err(Error::InvalidParameter("vector length mismatch".into()));
        }
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut acc = CycNum::zero(self.conductor)?;
            for j in 0..self.dim {
                acc = acc.add(&self.get(i, j).mul(&v[j])?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Embeds every entry into C at the given precision.
    pub fn embed(&self, precision: u32) -> Vec<ComplexApprox> {
        self.entries.iter().map(|e| e.embed(precision)).collect()
    }
}

/// A square matrix over one finite field.
#[derive(Debug, Clone)]
pub struct FieldMatrix {
    dim: usize,
    entries: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn new(dim: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if dim < 1 || entries.len() != dim * dim {
            return Err(Error::InvalidParameter("entry count must be dim^2".into()));
        }
        Ok(FieldMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }
}

/// Validates the D_k parameter for the matrix families: k must divide q-1,
/// with 1 < k < q-1; the boundary k = q-1 is admitted only for the
/// degenerate square/fourth-power cases k = 2 (q = 3) and k = 4 (q = 5).
fn check_k(field: &FiniteField, k: u64) -> Result<()> {
    let q1 = field.q() - 1;
    if k <= 1 || q1 % k != 0 || (k >= q1 && !matches!(k, 2 | 4)) {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must be a divisor of q-1 = {q1} with 1 < k < q-1"
        )));
    }
    Ok(())
}

fn check_r(field: &FiniteField, r: i64) -> Result<u64> {
    let q1 = field.q() - 1;
    let r_norm = arith::norm_exp(r, q1);
    if r_norm == 0 {
        return Err(Error::InvalidParameter(
            "exponent r must not be divisible by q-1".into(),
        ));
    }
    Ok(r_norm)
}

/// B_{q,k}(chi^r): entry (i,j) = chi^r(a_i + a_j) + chi^r(a_i - a_j) over
/// the k-th power residues a_1, ..., a_{(q-1)/k} in canonical order.
pub fn build_b(field: &FiniteField, k: u64, r: i64) -> Result<CycMatrix> {
    check_k(field, k)?;
    let r = check_r(field, r)? as i64;
    let residues = field.power_residues(k)?;
    let dim = residues.len();
    let mut entries = Vec::with_capacity(dim * dim);
    for ai in &residues {
        for aj in &residues {
            let s = char_value(field, r, &field.add(ai, aj));
            let d = char_value(field, r, &field.sub(ai, aj));
            entries.push(s.add(&d)?);
        }
    }
    CycMatrix::new(dim, entries)
}

/// T_{q,k}(r): entry (i,j) = (a_i + a_j)^(q-1-r) + (a_i - a_j)^(q-1-r) over
/// F_q, with 0 raised to the positive exponent giving 0.
pub fn build_t(field: &FiniteField, k: u64, r: i64) -> Result<FieldMatrix> {
    check_k(field, k)?;
    let r = check_r(field, r)?;
    let e = field.q() - 1 - r;
    let residues = field.power_residues(k)?;
    let dim = residues.len();
    let mut entries = Vec::with_capacity(dim * dim);
    for ai in &residues {
        for aj in &residues {
            let s = field.pow(&field.add(ai, aj), e);
            let d = field.pow(&field.sub(ai, aj), e);
            entries.push(field.add(&s, &d));
        }
    }
    FieldMatrix::new(dim, entries)
}

/// M_q(chi^r): entry (i,j) = chi^r(1 + s_j/s_i) + chi^r(1 - s_j/s_i) over
/// the nonzero squares. Satisfies det B_{q,2} = (-1)^((q+1)r/2) det M.
pub fn build_m(field: &FiniteField, r: i64) -> Result<CycMatrix> {
    let r = check_r(field, r)? as i64;
    let residues = field.power_residues(2)?;
    build_ratio_matrix(field, r, &residues)
}

/// N_q(chi^r): the fourth-power analogue of M, defined for q = 5 (mod 8).
/// Satisfies det B_{q,4} = det N.
pub fn build_n(field: &FiniteField, r: i64) -> Result<CycMatrix> {
    if field.q() % 8 != 5 {
        return Err(Error::InvalidParameter(format!(
            "N matrix needs q = 5 (mod 8), got q = {}",
            field.q()
        )));
    }
    let r = check_r(field, r)? as i64;
    let residues = field.power_residues(4)?;
    build_ratio_matrix(field, r, &residues)
}

fn build_ratio_matrix(
    field: &FiniteField,
    r: i64,
    residues: &[FieldElement],
) -> Result<CycMatrix> {
    let dim = residues.len();
    let one = field.one();
    let mut entries = Vec::with_capacity(dim * dim);
    for ai in residues {
        let ai_inv = field.inv(ai)?;
        for aj in residues {
            let ratio = field.mul(aj, &ai_inv);
            let s = char_value(field, r, &field.add(&one, &ratio));
            let d = char_value(field, r, &field.sub(&one, &ratio));
            entries.push(s.add(&d)?);
        }
    }
    CycMatrix::new(dim, entries)
}

/// Carlitz's matrix C_p = [psi(j - i)] for a nontrivial character psi of a
/// prime field, with psi = chi^psi_exponent.
pub fn build_carlitz(field: &FiniteField, psi_exponent: i64) -> Result<CycMatrix> {
    if field.n() != 1 {
        return Err(Error::InvalidParameter("Carlitz matrix needs a prime field".into()));
    }
    let e = arith::norm_exp(psi_exponent, field.q() - 1);
    if e == 0 {
        return Err(Error::InvalidParameter("psi must be nontrivial".into()));
    }
    let p = field.p();
    let dim = (p - 1) as usize;
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 1..p {
        for j in 1..p {
            let diff = field.sub(&field.from_int(j as i64), &field.from_int(i as i64));
            entries.push(char_value(field, e as i64, &diff));
        }
    }
    CycMatrix::new(dim, entries)
}

/// Exact determinant over Q(zeta_m). Singular matrices return exactly 0.
///
/// The computation clears denominators, runs the multimodular engine on the
/// integral matrix, and scales back.
pub fn det_exact(mat: &CycMatrix) -> CycNum {
    if mat.dim == 1 {
        return mat.entries[0].clone();
    }
    let mut scale = BigInt::one();
    for e in &mat.entries {
        scale = scale.lcm(e.denominator());
    }
    let coords: Vec<Vec<BigInt>> = mat
        .entries
        .iter()
        .map(|e| {
            let mult = &scale / e.denominator();
            e.numerator_coords().iter().map(|c| c * &mult).collect()
        })
        .collect();
    let phi = arith::euler_phi(mat.conductor) as usize;
    let integral = modular_det::IntegralMatrix {
        dim: mat.dim,
        conductor: mat.conductor,
        phi,
        coords,
        scale,
    };
    modular_det::det_multimodular(&integral)
}

/// Exact determinant by straight Gaussian elimination in Q[x]/Phi_m with the
/// first nonzero pivot in column order. Same values as [`det_exact`]; kept
/// as an independent route for cross-checks (slow at high conductors).
pub fn det_exact_gaussian(mat: &CycMatrix) -> CycNum {
    let dim = mat.dim;
    let m = mat.conductor;
    let mut a = mat.entries.clone();
    let mut det = CycNum::one(m).expect("valid conductor");
    let mut negate = false;
    for col in 0..dim {
        let pivot_row = match (col..dim).find(|&row| !a[row * dim + col].is_zero()) {
            Some(row) => row,
            None => return CycNum::zero(m).expect("valid conductor"),
        };
        if pivot_row != col {
            for j in 0..dim {
                a.swap(pivot_row * dim + j, col * dim + j);
            }
            negate = !negate;
        }
        let pivot = a[col * dim + col].clone();
        det = det.mul(&pivot).expect("same conductor");
        let pivot_inv = pivot.inv().expect("pivot is nonzero");
        for row in col + 1..dim {
            if a[row * dim + col].is_zero() {
                continue;
            }
            let factor = a[row * dim + col].mul(&pivot_inv).expect("same conductor");
            for j in col + 1..dim {
                if a[col * dim + j].is_zero() {
                    continue;
                }
                let t = factor.mul(&a[col * dim + j]).expect("same conductor");
                a[row * dim + j] = a[row * dim + j].sub(&t).expect("same conductor");
            }
        }
    }
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Determinant over F_q by Gaussian elimination.
pub fn det_field(field: &FiniteField, mat: &FieldMatrix) -> FieldElement {
    let dim = mat.dim;
    let mut a = mat.entries.clone();
    let mut det = field.one();
    let mut negate = false;
    for col in 0..dim {
        let pivot_row = match (col..dim).find(|&row| !a[row * dim + col].is_zero()) {
            Some(row) => row,
            None => return field.zero(),
        };
        if pivot_row != col {
            for j in 0..dim {
                a.swap(pivot_row * dim + j, col * dim + j);
            }
            negate = !negate;
        }
        let pivot = a[col * dim + col].clone();
        det = field.mul(&det, &pivot);
        let pivot_inv = field.inv(&pivot).expect("pivot is nonzero");
        for row in col + 1..dim {
            if a[row * dim + col].is_zero() {
                continue;
            }
            let factor = field.mul(&a[row * dim + col], &pivot_inv);
            for j in col + 1..dim {
                let t = field.mul(&factor, &a[col * dim + j]);
                a[row * dim + j] = field.sub(&a[row * dim + j], &t);
            }
        }
    }
    if negate {
        field.neg(&det)
    } else {
        det
    }
}

/// Floating determinant of a complex matrix (row-major, dim^2 entries) with
/// partial pivoting on the largest modulus.
pub fn det_complex(dim: usize, entries: &[ComplexApprox], precision: u32) -> ComplexApprox {
    assert_eq!(entries.len(), dim * dim);
    let mut a = entries.to_vec();
    let mut det = ComplexApprox::one(precision);
    let mut negate = false;
    for col in 0..dim {
        let pivot_row = (col..dim)
            .max_by(|&r1, &r2| {
                a[r1 * dim + col]
                    .norm_sqr()
                    .cmp_value(&a[r2 * dim + col].norm_sqr())
            })
            .expect("nonempty range");
        if a[pivot_row * dim + col].norm_sqr().is_zero() {
            return ComplexApprox::zero(precision);
        }
        if pivot_row != col {
            for j in 0..dim {
                a.swap(pivot_row * dim + j, col * dim + j);
            }
            negate = !negate;
        }
        let pivot = a[col * dim + col].clone();
        det = det.mul(&pivot);
        for row in col + 1..dim {
            let factor = a[row * dim + col].div(&pivot);
            for j in col + 1..dim {
                let t = factor.mul(&a[col * dim + j]);
                a[row * dim + j] = a[row * dim + j].sub(&t);
            }
        }
    }
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Which eigenvector family to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenVariant {
    /// Squares matrix M_q(chi^r), q = 3 (mod 4).
    M,
    /// Fourth-powers matrix N_q(chi^r), q = 5 (mod 8).
    N,
}

/// Verifies the explicit eigenpair structure of M or N exactly: the matrix
/// times v_k (entries chi^k(a_i)) equals lambda_k v_k with lambda_k the
/// appropriate Jacobi sum, the v_k are independent (a nonzero character
/// Vandermonde determinant), and the eigenvalue product equals the
/// determinant.
pub fn eigen_structure_check(
    field: &FiniteField,
    r: i64,
    variant: EigenVariant,
) -> Result<VerificationReport> {
    let q = field.q();
    let q1 = q - 1;
    let (mat, residues) = match variant {
        EigenVariant::M => {
            if q % 4 != 3 {
                return Err(Error::InvalidParameter(format!(
                    "variant M needs q = 3 (mod 4), got q = {q}"
                )));
            }
            (build_m(field, r)?, field.power_residues(2)?)
        }
        EigenVariant::N => {
            if q % 8 != 5 {
                return Err(Error::InvalidParameter(format!(
                    "variant N needs q = 5 (mod 8), got q = {q}"
                )));
            }
            (build_n(field, r)?, field.power_residues(4)?)
        }
    };
    let dim = residues.len();
    let r_norm = check_r(field, r)?;
    let builder = ReportBuilder::new(
        match variant {
            EigenVariant::M => "eigen.m",
            EigenVariant::N => "eigen.n",
        },
        Backend::Exact,
    )
    .param("q", q)
    .param("p", field.p())
    .param("n", field.n())
    .param("r", r_norm);

    let mut all_ok = true;
    let mut product = CycNum::one(q1)?;
    for k in 1..=dim as i64 {
        let v: Vec<CycNum> = residues.iter().map(|s| char_value(field, k, s)).collect();
        let lambda = eigenvalue(field, r_norm as i64, k, variant, q1)?;
        let mv = mat.mul_vector(&v)?;
        for (mv_i, v_i) in mv.iter().zip(&v) {
            if *mv_i != lambda.mul(v_i)? {
                all_ok = false;
            }
        }
        product = product.mul(&lambda)?;
    }

    // independence: det [chi^i(a_j)] != 0
    let mut char_entries = Vec::with_capacity(dim * dim);
    for i in 1..=dim as i64 {
        for s in &residues {
            char_entries.push(char_value(field, i, s));
        }
    }
    let vandermonde = det_exact(&CycMatrix::new(dim, char_entries)?);
    if vandermonde.is_zero() {
        all_ok = false;
    }

    // eigenvalue product equals the determinant
    let det = det_exact(&mat);
    if det != product {
        all_ok = false;
    }

    Ok(builder.finish(all_ok, format!("det = {det}"), format!("eigenvalue product = {product}")))
}

fn eigenvalue(
    field: &FiniteField,
    r: i64,
    k: i64,
    variant: EigenVariant,
    q1: u64,
) -> Result<CycNum> {
    let half = (q1 / 2) as i64;
    match variant {
        EigenVariant::M => {
            if k % 2 == 0 {
                Ok(jacobi_sum(field, r, k))
            } else {
                Ok(jacobi_sum(field, r, k + half))
            }
        }
        EigenVariant::N => {
            let quarter = (q1 / 4) as i64;
            let (e1, e2) = if k % 2 == 1 {
                (quarter + k, 3 * quarter + k)
            } else {
                (k, k + half)
            };
            let sum = jacobi_sum(field, r, e1).add(&jacobi_sum(field, r, e2))?;
            Ok(sum.scale(&BigRational::new(1.into(), 2.into())))
        }
    }
}

/// Verifies Carlitz's determinant value det(C_p) = (-1)^t G_p(psi)^(p-1)/p
/// numerically, together with the characteristic polynomial
/// det(xI - C_p) = (x^f - G^f)^(t-1) (x^f - G^f/p) sampled at small x.
pub fn verify_carlitz(
    field: &FiniteField,
    psi_exponent: i64,
    precision: u32,
    tolerance: f64,
) -> Result<VerificationReport> {
    let mat = build_carlitz(field, psi_exponent)?;
    let p = field.p();
    let e = arith::norm_exp(psi_exponent, p - 1);
    let f_ord = (p - 1) / arith::gcd(e, p - 1);
    let t = (p - 1) / f_ord;
    let builder = ReportBuilder::new("carlitz", Backend::Numeric)
        .param("p", p)
        .param("n", 1)
        .param("psi", e)
        .param("order", f_ord);

    let embedded = mat.embed(precision);
    let det = det_complex(mat.dim(), &embedded, precision);
    let g = gauss_sum(field, e as i64, precision);
    let sign = if t % 2 == 0 { 1 } else { -1 };
    let closed = g
        .powu(p - 1)
        .div(&ComplexApprox::from_i64(p as i64, 0, precision))
        .scale_i64(sign);
    let mut ok = approx_eq(&det, &closed, tolerance);

    // characteristic polynomial spot checks at x in {0, +-1, +-2}
    let gf = g.powu(f_ord);
    let gf_over_p = gf.div(&ComplexApprox::from_i64(p as i64, 0, precision));
    for x in [0i64, 1, -1, 2, -2] {
        let dim = mat.dim();
        let mut shifted = embedded.iter().map(|z| z.neg()).collect::<Vec<_>>();
        for i in 0..dim {
            let idx = i * dim + i;
            shifted[idx] = shifted[idx].add(&ComplexApprox::from_i64(x, 0, precision));
        }
        let lhs = det_complex(dim, &shifted, precision);
        let xf = ComplexApprox::from_i64(x, 0, precision).powu(f_ord);
        let rhs = xf.sub(&gf).powu(t - 1).mul(&xf.sub(&gf_over_p));
        if !approx_eq(&lhs, &rhs, tolerance) {
            ok = false;
        }
    }

    let (dre, dim_) = (det.to_f64_pair().0, det.to_f64_pair().1);
    let (cre, cim) = closed.to_f64_pair();
    Ok(builder.finish(
        ok,
        format!("det C_p = {dre:.9} + {dim_:.9}i"),
        format!("(-1)^t G^(p-1)/p = {cre:.9} + {cim:.9}i"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::char_sums::char_sign_at_minus_one;
    use num_traits::One;

    fn field(q: u64) -> FiniteField {
        let (p, n) = arith::prime_power(q).unwrap();
        FiniteField::new(p, n).unwrap()
    }

    #[test]
    fn b_matrix_shape_and_diagonal() {
        let f = field(7);
        for r in 1..=5i64 {
            let b = build_b(&f, 2, r).unwrap();
            assert_eq!(b.dim(), 3);
            assert_eq!(b.conductor(), 6);
            let squares = f.power_residues(2).unwrap();
            for (i, s) in squares.iter().enumerate() {
                // chi^r(a_i - a_i) = chi^r(0) = 0, so the diagonal is chi^r(2 a_i)
                let expect = char_value(&f, r, &f.add(s, s));
                assert_eq!(b.get(i, i), &expect);
            }
        }
    }

    #[test]
    fn b_matrix_duplicate_columns_when_minus_one_is_a_residue() {
        // q = 9, k = 2: (q-1)/k = 4 is even, so -1 is a square and columns pair up
        let f = field(9);
        let b = build_b(&f, 2, 1).unwrap();
        let dim = b.dim();
        let mut found = false;
        'outer: for j1 in 0..dim {
            for j2 in j1 + 1..dim {
                if (0..dim).all(|i| b.get(i, j1) == b.get(i, j2)) {
                    found = true;
                    break 'outer;
                }
            }
        }
        assert!(found, "expected a duplicated column pair");
    }

    #[test]
    fn b_matrix_parameter_checks() {
        let f = field(13);
        assert!(build_b(&f, 5, 1).is_err()); // 5 does not divide 12
        assert!(build_b(&f, 12, 1).is_err()); // k = q-1 (and k != 4)
        assert!(build_b(&f, 4, 0).is_err()); // trivial character
        let b = build_b(&f, 4, 1).unwrap(); // 3x3 over Q(zeta_12)
        assert_eq!(b.dim(), 3);
        assert_eq!(b.conductor(), 12);
        // q = 5 boundary: k = 4 = q-1 builds the 1x1 matrix
        let f5 = field(5);
        let b5 = build_b(&f5, 4, 1).unwrap();
        assert_eq!(b5.dim(), 1);
    }

    #[test]
    fn t_matrix_shape_and_diagonal() {
        let f = field(7);
        let t = build_t(&f, 2, 1).unwrap();
        assert_eq!(t.dim(), 3);
        let squares = f.power_residues(2).unwrap();
        for (i, s) in squares.iter().enumerate() {
            let expect = f.pow(&f.add(s, s), 7 - 1 - 1);
            assert_eq!(t.get(i, i), &expect);
        }
    }

    #[test]
    fn t_matrix_duplicate_columns_for_q_1_mod_4() {
        let f = field(13);
        let t = build_t(&f, 2, 1).unwrap();
        let dim = t.dim();
        let mut found = false;
        'outer: for j1 in 0..dim {
            for j2 in j1 + 1..dim {
                if (0..dim).all(|i| t.get(i, j1) == t.get(i, j2)) {
                    found = true;
                    break 'outer;
                }
            }
        }
        assert!(found);
        assert!(det_field(&f, &t).is_zero());
    }

    #[test]
    fn det_exact_basics() {
        let id = CycMatrix::identity(4, 12).unwrap();
        assert_eq!(det_exact(&id), CycNum::one(12).unwrap());

        // two equal columns -> exactly 0
        let z = |e: i64| CycNum::zeta_pow(12, e).unwrap();
        let m = CycMatrix::new(2, vec![z(1), z(1), z(5), z(5)]).unwrap();
        assert!(det_exact(&m).is_zero());

        // diag(zeta, zeta^-1) -> 1
        let zero = CycNum::zero(12).unwrap();
        let m = CycMatrix::new(2, vec![z(1), zero.clone(), zero, z(11)]).unwrap();
        assert_eq!(det_exact(&m), CycNum::one(12).unwrap());
    }

    #[test]
    fn det_exact_matches_cofactor_oracle() {
        use rand::prelude::*;
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for trial in 0..40 {
            let m = *[3u64, 4, 6, 8, 12].choose(&mut rng).unwrap();
            let dim = rng.random_range(1..=4usize);
            let entries: Vec<CycNum> = (0..dim * dim)
                .map(|_| {
                    let counts: Vec<i64> =
                        (0..m).map(|_| rng.random_range(-2..=2i64)).collect();
                    CycNum::from_exponent_counts(m, &counts).unwrap()
                })
                .collect();
            let mat = CycMatrix::new(dim, entries).unwrap();
            assert_eq!(det_exact(&mat), cofactor_det(&mat), "trial {trial}");
        }
    }

    #[test]
    fn modular_and_gaussian_routes_agree() {
        // integral entries at several conductors and dimensions
        for (q, k, r) in [(7u64, 2u64, 1i64), (11, 2, 3), (13, 4, 2), (9, 2, 1), (19, 2, 4)] {
            let f = field(q);
            let b = build_b(&f, k, r).unwrap();
            assert_eq!(det_exact(&b), det_exact_gaussian(&b), "B q={q} k={k} r={r}");
        }
        // rational entries (denominator clearing path)
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(1.into(), 3.into());
        let z = |e: i64| CycNum::zeta_pow(12, e).unwrap();
        let m = CycMatrix::new(
            2,
            vec![z(1).scale(&half), z(2), z(7).scale(&third), z(3).scale(&half)],
        )
        .unwrap();
        assert_eq!(det_exact(&m), det_exact_gaussian(&m));
    }

    fn cofactor_det(mat: &CycMatrix) -> CycNum {
        let dim = mat.dim();
        if dim == 1 {
            return mat.get(0, 0).clone();
        }
        let mut acc = CycNum::zero(mat.conductor()).unwrap();
        for j in 0..dim {
            if mat.get(0, j).is_zero() {
                continue;
            }
            let minor_entries: Vec<CycNum> = (1..dim)
                .flat_map(|i| {
                    (0..dim).filter(|&jj| jj != j).map(move |jj| mat.get(i, jj).clone())
                })
                .collect();
            let minor = CycMatrix::new(dim - 1, minor_entries).unwrap();
            let mut term = mat.get(0, j).mul(&cofactor_det(&minor)).unwrap();
            if j % 2 == 1 {
                term = term.neg();
            }
            acc = acc.add(&term).unwrap();
        }
        acc
    }

    #[test]
    fn det_field_two_by_two_oracle() {
        use rand::prelude::*;
        let f = field(27);
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..50 {
            let entries: Vec<FieldElement> =
                (0..4).map(|_| f.decode(rng.random_range(0..27))).collect();
            let m = FieldMatrix::new(2, entries.clone()).unwrap();
            let ad = f.mul(&entries[0], &entries[3]);
            let bc = f.mul(&entries[1], &entries[2]);
            assert_eq!(det_field(&f, &m), f.sub(&ad, &bc));
        }
        let id = FieldMatrix::new(
            3,
            vec![
                f.one(),
                f.zero(),
                f.zero(),
                f.zero(),
                f.one(),
                f.zero(),
                f.zero(),
                f.zero(),
                f.one(),
            ],
        )
        .unwrap();
        assert_eq!(det_field(&f, &id), f.one());
    }

    #[test]
    fn b_and_m_determinant_relation() {
        // det B_{q,2}(chi^r) = (-1)^((q+1)r/2) det M_q(chi^r), all odd prime
        // powers q <= 31, all r
        for q in [3u64, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31] {
            let f = field(q);
            for r in 1..(q - 1) as i64 {
                let db = det_exact(&build_b(&f, 2, r).unwrap());
                let dm = det_exact(&build_m(&f, r).unwrap());
                let exponent = (q + 1) / 2 * arith::norm_exp(r, q - 1);
                let expect = if exponent % 2 == 0 { dm.clone() } else { dm.neg() };
                assert_eq!(db, expect, "q = {q}, r = {r}");
            }
        }
    }

    #[test]
    fn b_and_n_determinant_relation() {
        // prod of fourth powers is 1 for q = 5 (mod 8), so det B_{q,4} = det N
        for q in [5u64, 13, 29] {
            let f = field(q);
            for r in 1..(q - 1) as i64 {
                let db = det_exact(&build_b(&f, 4, r).unwrap());
                let dn = det_exact(&build_n(&f, r).unwrap());
                assert_eq!(db, dn, "q = {q}, r = {r}");
            }
        }
    }

    #[test]
    fn m_matrix_first_row_when_s1_not_one() {
        // row i with s_i = 1 reads chi^r(1 + s_j) + chi^r(1 - s_j)
        let f = field(7);
        let m = build_m(&f, 1).unwrap();
        let squares = f.power_residues(2).unwrap();
        let row = squares.iter().position(|s| *s == f.one()).unwrap();
        for (j, s) in squares.iter().enumerate() {
            let expect = char_value(&f, 1, &f.add(&f.one(), s))
                .add(&char_value(&f, 1, &f.sub(&f.one(), s)))
                .unwrap();
            assert_eq!(m.get(row, j), &expect);
        }
    }

    #[test]
    fn model_independence_of_b_determinants() {
        // Two models of F_9; carry the generator across the isomorphism and
        // the determinants must agree exactly.
        let f1 = FiniteField::new(3, 2).unwrap(); // modulus x^2 + 1
        let f2_plain = FiniteField::with_params(3, 2, vec![2, 1, 1], None).unwrap();
        // find a root of x^2 + 1 in the second model
        let theta = f2_plain
            .elements()
            .find(|x| {
                let sq = f2_plain.mul(x, x);
                f2_plain.add(&sq, &f2_plain.one()).is_zero()
            })
            .unwrap();
        // iso: a + b t -> a + b theta maps f1's generator across
        let g1 = f1.generator().coeffs().to_vec();
        let image = f2_plain.add(
            &f2_plain.from_int(g1[0] as i64),
            &f2_plain.mul(&f2_plain.from_int(g1[1] as i64), &theta),
        );
        let f2 =
            FiniteField::with_params(3, 2, vec![2, 1, 1], Some(image.coeffs().to_vec())).unwrap();
        for r in 1..8i64 {
            let d1 = det_exact(&build_b(&f1, 2, r).unwrap());
            let d2 = det_exact(&build_b(&f2, 2, r).unwrap());
            assert_eq!(d1, d2, "r = {r}");
        }
    }

    #[test]
    fn embedded_determinant_matches_floating_determinant() {
        let prec = 192;
        for (q, r) in [(7u64, 1i64), (11, 3), (19, 2)] {
            let f = field(q);
            let b = build_b(&f, 2, r).unwrap();
            let exact = det_exact(&b).embed(prec);
            let float = det_complex(b.dim(), &b.embed(prec), prec);
            assert!(
                approx_eq(&exact, &float, 1e-6),
                "q = {q}, r = {r}: {:?} vs {:?}",
                exact.to_f64_pair(),
                float.to_f64_pair()
            );
        }
    }

    #[test]
    fn eigen_structure_m_variant() {
        for q in [7u64, 11, 19] {
            let f = field(q);
            for r in 1..(q - 1) as i64 {
                let report = eigen_structure_check(&f, r, EigenVariant::M).unwrap();
                assert!(report.passed(), "q = {q}, r = {r}");
            }
        }
        // wrong congruence class is a parameter error
        let f13 = field(13);
        assert!(eigen_structure_check(&f13, 1, EigenVariant::M).is_err());
    }

    #[test]
    fn eigen_structure_n_variant() {
        for q in [5u64, 13] {
            let f = field(q);
            for r in 1..(q - 1) as i64 {
                let report = eigen_structure_check(&f, r, EigenVariant::N).unwrap();
                assert!(report.passed(), "q = {q}, r = {r}");
            }
        }
        let f7 = field(7);
        assert!(eigen_structure_check(&f7, 1, EigenVariant::N).is_err());
    }

    #[test]
    fn carlitz_diagonal_is_zero() {
        let f = field(5);
        let c = build_carlitz(&f, 2).unwrap();
        for i in 0..c.dim() {
            assert!(c.get(i, i).is_zero());
        }
        assert!(build_carlitz(&f, 0).is_err());
        let f9 = field(9);
        assert!(build_carlitz(&f9, 1).is_err());
    }

    #[test]
    fn carlitz_quadratic_determinants() {
        // det C_5(phi) = G_5(phi)^4/5 = 25/5 = 5, det C_7(phi) = -(-7)^3/7 = 49
        let f5 = field(5);
        let c5 = build_carlitz(&f5, 2).unwrap();
        let d5 = det_complex(c5.dim(), &c5.embed(192), 192);
        let (re, im) = d5.to_f64_pair();
        assert!((re - 5.0).abs() < 1e-20 && im.abs() < 1e-20, "got {re} + {im}i");

        let f7 = field(7);
        let c7 = build_carlitz(&f7, 3).unwrap();
        let d7 = det_complex(c7.dim(), &c7.embed(192), 192);
        let (re, im) = d7.to_f64_pair();
        assert!((re - 49.0).abs() < 1e-20 && im.abs() < 1e-20, "got {re} + {im}i");

        // and through the verifier
        assert!(verify_carlitz(&f5, 2, 192, 1e-6).unwrap().passed());
        assert!(verify_carlitz(&f7, 3, 192, 1e-6).unwrap().passed());
    }

    #[test]
    fn sign_helper_consistency() {
        let f = field(7);
        assert_eq!(char_sign_at_minus_one(&f, 2), 1);
        assert_eq!(char_sign_at_minus_one(&f, 3), -1);
        let one = CycNum::one(6).unwrap();
        assert!(one.as_rational().unwrap().is_one());
    }
}
