//! Polynomial arithmetic over F_p for small odd primes. Used for the
//! degree-pattern sieve and as the modular stage of factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::intpoly::IntPoly;

/// Monic-friendly dense polynomial over F_p, constant term first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyP {
    pub p: u64,
    pub c: Vec<u64>, // trimmed, values in [0, p)
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl PolyP {
    pub fn new(p: u64, c: Vec<u64>) -> Self {
        PolyP { p, c: trim(c.into_iter().map(|x| x % p).collect()) }
    }

    pub fn zero(p: u64) -> Self {
        PolyP { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        PolyP { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        PolyP { p, c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero());
        self.c.len() - 1
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    fn mul_mod(p: u64, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn inv_mod(p: u64, a: u64) -> u64 {
        // extended Euclid; p prime, a != 0
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (p as i128, a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        assert_eq!(r, 1, "not invertible");
        t.rem_euclid(p as i128) as u64
    }

    pub fn add(&self, other: &PolyP) -> PolyP {
        let p = self.p;
        let n = self.c.len().max(other.c.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = other.c.get(i).copied().unwrap_or(0);
            out[i] = (a + b) % p;
        }
        PolyP::new(p, out)
    }

    pub fn sub(&self, other: &PolyP) -> PolyP {
        let p = self.p;
        let n = self.c.len().max(other.c.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = other.c.get(i).copied().unwrap_or(0);
            out[i] = (a + p - b) % p;
        }
        PolyP::new(p, out)
    }

    pub fn mul(&self, other: &PolyP) -> PolyP {
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return PolyP::zero(p);
        }
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = (out[i + j] + Self::mul_mod(p, a, b)) % p;
            }
        }
        PolyP::new(p, out)
    }

    pub fn scale(&self, k: u64) -> PolyP {
        let p = self.p;
        PolyP::new(p, self.c.iter().map(|&a| Self::mul_mod(p, a, k % p)).collect())
    }

    /// Make monic by dividing by the leading coefficient.
    pub fn monic(&self) -> PolyP {
        if self.is_zero() {
            return self.clone();
        }
        let inv = Self::inv_mod(self.p, *self.c.last().unwrap());
        self.scale(inv)
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, d: &PolyP) -> (PolyP, PolyP) {
        assert!(!d.is_zero());
        let p = self.p;
        if self.is_zero() || self.c.len() < d.c.len() {
            return (PolyP::zero(p), self.clone());
        }
        let mut rem = self.c.clone();
        let dn = d.c.len() - 1;
        let lead_inv = Self::inv_mod(p, *d.c.last().unwrap());
        let qdeg = rem.len() - 1 - dn;
        let mut q = vec![0u64; qdeg + 1];
        for k in (0..=qdeg).rev() {
            let top = rem[k + dn] % p;
            if top == 0 {
                continue;
            }
            let coef = Self::mul_mod(p, top, lead_inv);
            q[k] = coef;
            for (i, &dc) in d.c.iter().enumerate() {
                let t = Self::mul_mod(p, coef, dc);
                rem[k + i] = (rem[k + i] + p - t) % p;
            }
        }
        (PolyP::new(p, q), PolyP::new(p, rem))
    }

    pub fn rem(&self, d: &PolyP) -> PolyP {
        self.div_rem(d).1
    }

    pub fn gcd(&self, other: &PolyP) -> PolyP {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*other = g, g monic.
    pub fn xgcd(&self, other: &PolyP) -> (PolyP, PolyP, PolyP) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (PolyP::one(p), PolyP::zero(p));
        let (mut t0, mut t1) = (PolyP::zero(p), PolyP::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let ns = s0.sub(&q.mul(&s1));
            let nt = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = ns;
            t0 = t1;
            t1 = nt;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead = *r0.c.last().unwrap();
        let inv = Self::inv_mod(p, lead);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> PolyP {
        let p = self.p;
        if self.c.len() <= 1 {
            return PolyP::zero(p);
        }
        PolyP::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| Self::mul_mod(p, a, (i as u64) % p))
                .collect(),
        )
    }

    /// self^e mod m.
    pub fn pow_mod(&self, mut e: u128, m: &PolyP) -> PolyP {
        let mut base = self.rem(m);
        let mut acc = PolyP::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for &c in self.c.iter().rev() {
            acc = (Self::mul_mod(p, acc, x) + c) % p;
        }
        acc
    }
}

/// Reduce an integer polynomial mod p.
pub fn reduce_mod_p(q: &IntPoly, p: u64) -> PolyP {
    let pb = BigInt::from(p);
    let c = q
        .coeffs()
        .iter()
        .map(|a| {
            let mut r = a.mod_floor(&pb);
            if r.is_negative() {
                r += &pb;
            }
            r.to_u64().unwrap()
        })
        .collect();
    PolyP::new(p, c)
}

/// Distinct-degree factorization of a squarefree monic f: returns
/// (degree d, product of all irreducible factors of degree d) pairs.
pub fn distinct_degree(f: &PolyP) -> Vec<(usize, PolyP)> {
    let p = f.p;
    let mut f = f.monic();
    let mut out = Vec::new();
    let mut h = PolyP::x(p); // x^(p^i) mod f, starting at i=0
    let mut d = 0usize;
    while !f.is_one() && f.degree() >= 1 {
        d += 1;
        if 2 * d > f.degree() {
            // remainder is irreducible
            out.push((f.degree(), f.clone()));
            break;
        }
        h = h.pow_mod(p as u128, &f);
        let g = h.sub(&PolyP::x(p)).gcd(&f);
        if !g.is_one() && !g.is_zero() {
            out.push((d, g.clone()));
            f = f.div_rem(&g).0.monic();
            h = h.rem(&f);
        }
    }
    out
}

/// Degree multiset of the irreducible factors of a squarefree monic f.
pub fn degree_pattern(f: &PolyP) -> Vec<usize> {
    let mut pattern = Vec::new();
    for (d, prod) in distinct_degree(f) {
        let count = prod.degree() / d;
        for _ in 0..count {
            pattern.push(d);
        }
    }
    pattern.sort_unstable();
    pattern
}

/// Complete factorization of a squarefree monic f into monic irreducibles,
/// deterministic: equal-degree splitting sweeps shifts in a fixed order.
pub fn factor_squarefree(f: &PolyP) -> Vec<PolyP> {
    let mut out = Vec::new();
    for (d, prod) in distinct_degree(f) {
        equal_degree(&prod, d, &mut out);
    }
    out.sort_by(|a, b| (a.degree(), &a.c).cmp(&(b.degree(), &b.c)));
    out
}

fn equal_degree(f: &PolyP, d: usize, out: &mut Vec<PolyP>) {
    let p = f.p;
    if f.degree() == d {
        out.push(f.monic());
        return;
    }
    assert!(p % 2 == 1, "equal-degree splitting requires an odd prime");
    let e = ((p as u128).pow(d as u32) - 1) / 2;
    let mut c = 0u64;
    loop {
        // deterministic sweep over shifts x + c
        let base = PolyP::new(p, vec![c % p, 1]);
        let w = base.pow_mod(e, f).sub(&PolyP::one(p));
        let g = w.gcd(f);
        if !g.is_zero() && !g.is_one() && g.degree() < f.degree() {
            let h = f.div_rem(&g).0.monic();
            equal_degree(&g, d, out);
            equal_degree(&h, d, out);
            return;
        }
        c += 1;
        assert!(c < 4 * p, "equal-degree splitting failed to find a splitter");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_divrem() {
        let p = 7;
        let a = PolyP::new(p, vec![6, 0, 1]); // x^2 + 6 = x^2 - 1
        let b = PolyP::new(p, vec![6, 1]); // x - 1
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, PolyP::new(p, vec![1, 1]));
        assert_eq!(a.gcd(&b), b.monic());
    }

    #[test]
    fn distinct_degree_quartic() {
        // x^4 + 1 mod 3 factors as two irreducible quadratics
        let f = PolyP::new(3, vec![1, 0, 0, 0, 1]);
        let pattern = degree_pattern(&f);
        assert_eq!(pattern, vec![2, 2]);
        let factors = factor_squarefree(&f);
        assert_eq!(factors.len(), 2);
        let prod = factors[0].mul(&factors[1]);
        assert_eq!(prod.monic(), f.monic());
    }

    #[test]
    fn splits_linear_factors() {
        // (x-1)(x-2)(x-3) mod 11
        let p = 11;
        let f = PolyP::new(p, vec![p - 6, 11, p - 6, 1]);
        let factors = factor_squarefree(&f);
        assert_eq!(factors.len(), 3);
        for g in &factors {
            assert_eq!(g.degree(), 1);
        }
    }
}
