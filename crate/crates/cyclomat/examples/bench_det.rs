use cyclomat::finite_field::FiniteField;
use cyclomat::matrices::{build_b, det_exact};
use cyclomat::char_sums::jacobi_sum;
use std::time::Instant;

fn main() {
    // q = 67: criterion 1 worst case
    let f = FiniteField::new(67, 1).unwrap();
    let t0 = Instant::now();
    let b = build_b(&f, 2, 1).unwrap();
    let t_build = t0.elapsed();
    let t0 = Instant::now();
    let d = det_exact(&b);
    let t_det = t0.elapsed();
    let t0 = Instant::now();
    let mut prod = cyclomat::CycNum::one(66).unwrap();
    for k in 0..=32i64 {
        prod = prod.mul(&jacobi_sum(&f, 1, 2 * k)).unwrap();
    }
    let t_jac = t0.elapsed();
    println!("q=67 r=1: build {:?}, det {:?}, jacobi-product {:?}, equal: {}", t_build, t_det, t_jac, d == prod);

    // q = 81, k = 2: criterion 3 worst case (singular)
    let f81 = FiniteField::new(3, 4).unwrap();
    let t0 = Instant::now();
    let b81 = build_b(&f81, 2, 1).unwrap();
    let d81 = det_exact(&b81);
    println!("q=81 k=2 r=1: det (should be 0) {:?} -> zero: {}", t0.elapsed(), d81.is_zero());

    // q = 59 second-worst for criterion 1
    let f59 = FiniteField::new(59, 1).unwrap();
    let t0 = Instant::now();
    let b59 = build_b(&f59, 2, 2).unwrap();
    let d59 = det_exact(&b59);
    println!("q=59 r=2: det {:?} nonzero: {}", t0.elapsed(), !d59.is_zero());
}
