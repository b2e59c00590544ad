use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::Result;
use crate::polyfact::IntPoly;

/// Characteristic polynomial det(xI - M), monic, exact integer
/// coefficients, computed by the Faddeev-LeVerrier recurrence. The only
/// divisions are by step counts and are exact over Z.
pub fn char_poly(m: &IntMatrix) -> Result<IntPoly> {
    m.require_square()?;
    let n = m.rows();
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // M_1 = M, c_{n-1} = -tr M_1, M_{k+1} = M (M_k + c_{n-k} I)
    let mut mk = m.clone();
    for k in 1..=n {
        let tr: BigInt = (0..n).map(|i| mk[(i, i)].clone()).sum();
        let (c, r) = (-tr).div_rem(&BigInt::from(k as u64));
        assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
        coeffs[n - k] = c.clone();
        if k < n {
            let mut shifted = mk;
            for i in 0..n {
                shifted[(i, i)] += &c;
            }
            mk = m.mul(&shifted);
        }
    }
    Ok(IntPoly::new(coeffs))
}
