use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer polynomial, constant term first. Canonical form never has
/// trailing zero coefficients; the zero polynomial is the empty list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// Monomial c * x^k.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of the zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        static ZERO: std::sync::OnceLock<BigInt> = std::sync::OnceLock::new();
        self.coeffs.get(k).unwrap_or_else(|| ZERO.get_or_init(BigInt::zero))
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.leading().is_one()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Exact division; returns `None` when `self` is not a multiple of
    /// `divisor` over the integers.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dn = divisor.degree();
        let lead = divisor.leading();
        let qdeg = self.degree() - dn;
        let mut q = vec![BigInt::zero(); qdeg + 1];
        for k in (0..=qdeg).rev() {
            let top = rem[k + dn].clone();
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            q[k] = c.clone();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let t = &c * d;
                rem[k + i] -= t;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        other.div_exact(self).is_some()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// p(-x), with sign pattern on odd coefficients.
    pub fn compose_neg(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part with positive leading coefficient, and the matching
    /// content constant so that `content * primitive = self`.
    pub fn primitive(&self) -> (BigInt, IntPoly) {
        if self.is_zero() {
            return (BigInt::zero(), IntPoly::zero());
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        let prim = IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect());
        (c, prim)
    }

    /// Square of the Euclidean norm of the coefficient vector.
    pub fn norm2_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

impl std::fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 => {
                    if a.is_one() {
                        write!(f, "x")?
                    } else {
                        write!(f, "{a}*x")?
                    }
                }
                _ => {
                    if a.is_one() {
                        write!(f, "x^{i}")?
                    } else {
                        write!(f, "{a}*x^{i}")?
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        let p = IntPoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coeffs().len(), 2);
    }

    #[test]
    fn arithmetic_roundtrip() {
        let p = IntPoly::from_i64(&[1, -3, 1]);
        let q = IntPoly::from_i64(&[-1, 1]);
        let prod = p.mul(&q);
        assert_eq!(prod.div_exact(&q), Some(p.clone()));
        assert_eq!(prod.div_exact(&p), Some(q.clone()));
        assert_eq!(prod.div_exact(&IntPoly::from_i64(&[7, 1])), None);
    }

    #[test]
    fn eval_and_derivative() {
        let p = IntPoly::from_i64(&[6, -5, 1]); // (x-2)(x-3)
        assert_eq!(p.eval(&BigInt::from(2)), BigInt::zero());
        assert_eq!(p.eval(&BigInt::from(4)), BigInt::from(2));
        assert_eq!(p.derivative(), IntPoly::from_i64(&[-5, 2]));
    }

    #[test]
    fn primitive_part() {
        let p = IntPoly::from_i64(&[-6, 0, -9]);
        let (c, prim) = p.primitive();
        assert_eq!(c, BigInt::from(-3));
        assert_eq!(prim, IntPoly::from_i64(&[2, 0, 3]));
        assert_eq!(prim.scale(&c), p);
    }
}
