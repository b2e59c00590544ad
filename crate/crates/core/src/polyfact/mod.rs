//! Exact factorization and certificate predicates for monic integer
//! polynomials of small degree.

mod cyclotomic;
mod factor;
mod intpoly;
pub mod modp;

pub use cyclotomic::{cyclotomic, cyclotomic_indices, cyclotomic_list, totient};
pub use factor::Factorization;
pub use intpoly::IntPoly;

use crate::error::{Error, Result};

/// Degree cap for the factorization routines; the artifact never needs
/// more than 2g - 2 <= 10.
pub const MAX_FACTOR_DEGREE: usize = 12;

/// Complete factorization over Z into a content constant and primitive
/// irreducible factors with multiplicities.
pub fn factor_over_z(q: &IntPoly) -> Result<Factorization> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if q.degree() > MAX_FACTOR_DEGREE {
        return Err(Error::DegreeTooLarge { degree: q.degree(), bound: MAX_FACTOR_DEGREE });
    }
    Ok(factor::factorize(q))
}

/// True iff the monic polynomial q is irreducible over Q. Exact and
/// deterministic.
pub fn is_irreducible_q(q: &IntPoly) -> Result<bool> {
    if q.is_zero() || !q.is_monic() {
        return Err(Error::NonMonic);
    }
    if q.degree() == 0 {
        return Err(Error::NonMonic);
    }
    Ok(factor::irreducible_monic(q))
}

/// True iff some cyclotomic polynomial of degree <= deg q divides q, i.e.
/// iff any matrix with characteristic polynomial q has a root of unity as
/// an eigenvalue.
pub fn has_root_of_unity_factor(q: &IntPoly) -> Result<bool> {
    if q.is_zero() || !q.is_monic() || q.degree() == 0 {
        return Err(Error::NonMonic);
    }
    let d = q.degree();
    Ok(cyclotomic_list(d).iter().any(|phi| phi.divides(q)))
}

/// Coefficient palindrome test for monic even-degree polynomials:
/// x^(2k) q(1/x) = q(x).
pub fn is_reciprocal(q: &IntPoly) -> Result<bool> {
    if q.is_zero() || !q.is_monic() {
        return Err(Error::NonMonic);
    }
    let d = q.degree();
    if d % 2 != 0 {
        return Err(Error::OddDegree(d));
    }
    let c = q.coeffs();
    Ok((0..=d).all(|i| c[i] == c[d - i]))
}

/// gcd over Z[x]; exposed for tests and for callers that need squarefree
/// checks.
pub fn gcd_z(a: &IntPoly, b: &IntPoly) -> IntPoly {
    factor::gcd_z(a, b)
}
