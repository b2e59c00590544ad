use num_bigint::BigInt;
use num_traits::One;

use super::intpoly::IntPoly;

/// Euler totient by trial division; n stays tiny here.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The n-th cyclotomic polynomial, by dividing x^n - 1 by all lower
/// cyclotomic factors.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1);
    let mut num = IntPoly::monomial(BigInt::one(), n as usize).sub(&IntPoly::one());
    for d in 1..n {
        if n % d == 0 {
            num = num.div_exact(&cyclotomic(d)).expect("cyclotomic division is exact");
        }
    }
    num
}

/// All cyclotomic polynomials of degree <= d, each exactly once, ascending
/// by index. phi(n) >= sqrt(n/2) caps the search at n <= 2 d^2.
pub fn cyclotomic_list(d: usize) -> Vec<IntPoly> {
    assert!(d >= 1);
    let limit = 2 * (d as u64) * (d as u64);
    let mut out = Vec::new();
    for n in 1..=limit {
        if totient(n) as usize <= d {
            out.push(cyclotomic(n));
        }
    }
    out
}

/// Indices n with phi(n) <= d, ascending; handy for tests and reports.
pub fn cyclotomic_indices(d: usize) -> Vec<u64> {
    let limit = 2 * (d as u64) * (d as u64);
    (1..=limit).filter(|&n| totient(n) as usize <= d).collect()
}
