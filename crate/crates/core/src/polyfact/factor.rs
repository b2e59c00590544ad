//! Exact factorization of integer polynomials of small degree.
//!
//! Pipeline: content and power-of-x stripping, Yun squarefree split, a
//! mod-p degree-pattern sieve that certifies most irreducible inputs
//! outright, then monic Hensel lifting with subset recombination for the
//! rest. Every found factor is confirmed by exact trial division, so the
//! result carries no error probability.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::intpoly::IntPoly;
use super::modp::{degree_pattern, factor_squarefree, reduce_mod_p, PolyP};

/// Primes used by the sieve and the modular stage. Odd, small, plenty.
const PRIMES: [u64; 30] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127,
];

const SIEVE_PRIMES: usize = 15;

/// Complete factorization of a nonzero integer polynomial: a content
/// constant and primitive irreducible factors with multiplicities, factors
/// sorted, product exactly equal to the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    pub fn product(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

pub(super) fn factorize(q: &IntPoly) -> Factorization {
    assert!(!q.is_zero(), "cannot factor the zero polynomial");
    let (content, prim) = q.primitive();
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    if prim.degree() == 0 {
        return Factorization { content, factors };
    }
    // strip powers of x
    let xpow = prim.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    let mut rest = prim;
    if xpow > 0 {
        rest = rest.div_exact(&IntPoly::monomial(BigInt::one(), xpow)).unwrap();
        factors.push((IntPoly::x(), xpow as u32));
    }
    if rest.degree() >= 1 {
        for (part, mult) in yun_squarefree(&rest) {
            if part.degree() == 0 {
                continue;
            }
            for f in factor_squarefree_primitive(&part) {
                factors.push((f, mult));
            }
        }
    }
    merge_factors(&mut factors);
    let fact = Factorization { content, factors };
    assert_eq!(fact.product(), *q, "factor product must reproduce the input");
    fact
}

fn merge_factors(factors: &mut Vec<(IntPoly, u32)>) {
    factors.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs()))
    });
    let mut merged: Vec<(IntPoly, u32)> = Vec::new();
    for (f, m) in factors.drain(..) {
        if let Some(last) = merged.last_mut() {
            if last.0 == f {
                last.1 += m;
                continue;
            }
        }
        merged.push((f, m));
    }
    *factors = merged;
}

/// gcd in Z[x] via a primitive pseudo-remainder sequence.
pub(super) fn gcd_z(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive().1;
    }
    if b.is_zero() {
        return a.primitive().1;
    }
    let (mut f, mut g) = if a.degree() >= b.degree() {
        (a.primitive().1, b.primitive().1)
    } else {
        (b.primitive().1, a.primitive().1)
    };
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g);
        f = g;
        g = if r.is_zero() { IntPoly::zero() } else { r.primitive().1 };
    }
    f.primitive().1
}

/// lc(g)^(deg f - deg g + 1) * f  mod  g, by repeated elimination.
fn pseudo_rem(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let mut r = f.clone();
    let dg = g.degree();
    let lg = g.leading().clone();
    while !r.is_zero() && r.degree() >= dg {
        let dr = r.degree();
        let lr = r.leading().clone();
        // r = lg * r - lr * x^(dr-dg) * g
        r = r.scale(&lg).sub(&g.mul(&IntPoly::monomial(lr, dr - dg)));
    }
    r
}

/// Yun's squarefree decomposition: returns (squarefree part, multiplicity)
/// pairs with product of parts^mult equal to the input (primitive).
fn yun_squarefree(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    let fd = f.derivative();
    let g = gcd_z(f, &fd);
    if g.degree() == 0 {
        return vec![(f.clone(), 1)];
    }
    let mut out = Vec::new();
    let mut c = f.div_exact(&g).expect("gcd divides");
    let mut d = fd.div_exact(&g).expect("gcd divides derivative").sub(&c.derivative());
    let mut i = 1u32;
    loop {
        let u = gcd_z(&c, &d);
        if u.degree() >= 1 {
            out.push((u.clone(), i));
        }
        c = c.div_exact(&u).expect("u divides c");
        if c.degree() == 0 {
            break;
        }
        d = d.div_exact(&u).expect("u divides d").sub(&c.derivative());
        i += 1;
    }
    out
}

/// Primes where f stays squarefree with the same degree, usable for both
/// the sieve and lifting.
fn usable_primes(f: &IntPoly, max: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for &p in PRIMES.iter() {
        if (f.leading() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_mod_p(f, p);
        if fp.is_zero() || fp.degree() != f.degree() {
            continue;
        }
        let der = fp.derivative();
        if der.is_zero() {
            continue;
        }
        if fp.gcd(&der).is_one() {
            out.push(p);
            if out.len() == max {
                break;
            }
        }
    }
    out
}

/// Subset sums of a degree multiset, as a bitmask over 0..=n.
fn subset_sums(pattern: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in pattern {
        for s in (0..=n.saturating_sub(d)).rev() {
            if reach[s] {
                reach[s + d] = true;
            }
        }
    }
    reach
}

/// Degrees a proper rational factor could have, after intersecting the
/// mod-p patterns. Empty means irreducible.
fn feasible_degrees(f: &IntPoly, primes: &[u64]) -> Vec<usize> {
    let n = f.degree();
    let mut feasible = vec![true; n + 1];
    for &p in primes {
        let pattern = degree_pattern(&reduce_mod_p(f, p));
        let reach = subset_sums(&pattern, n);
        for d in 0..=n {
            feasible[d] &= reach[d];
        }
    }
    (1..n).filter(|&d| feasible[d]).collect()
}

/// Factor a primitive squarefree polynomial of degree >= 1 into primitive
/// irreducibles over Z.
fn factor_squarefree_primitive(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree();
    if n == 1 {
        return vec![f.clone()];
    }
    let primes = usable_primes(f, SIEVE_PRIMES);
    assert!(!primes.is_empty(), "no usable prime for a squarefree integer polynomial");
    let feasible = feasible_degrees(f, &primes);
    if feasible.is_empty() {
        return vec![f.clone()];
    }
    // Monicize: g(y) = lc^(n-1) f(y/lc) is monic; factors map back.
    let lc = f.leading().clone();
    if lc.is_one() {
        return zassenhaus_monic(f, &primes, &feasible);
    }
    let g = monicize(f, &lc);
    let gfactors = zassenhaus_monic(&g, &usable_primes(&g, SIEVE_PRIMES), &feasible_degrees(&g, &usable_primes(&g, SIEVE_PRIMES)));
    let mut out: Vec<IntPoly> = gfactors
        .iter()
        .map(|gf| {
            // undo y = lc * x and strip content
            let mapped = IntPoly::new(
                gf.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * lc.pow(i as u32))
                    .collect(),
            );
            mapped.primitive().1
        })
        .collect();
    // Exactness guard: the mapped factors must multiply to f up to content.
    let mut prod = IntPoly::one();
    for h in &out {
        prod = prod.mul(h);
    }
    let (_, prodp) = prod.primitive();
    let (_, fp) = f.primitive();
    assert_eq!(prodp, fp, "monicization mapping must preserve the factorization");
    out.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    out
}

fn monicize(f: &IntPoly, lc: &BigInt) -> IntPoly {
    let n = f.degree();
    // coefficient of y^i is c_i * lc^(n-1-i)
    IntPoly::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == n {
                    BigInt::one()
                } else {
                    c * lc.pow((n - 1 - i) as u32)
                }
            })
            .collect(),
    )
}

/// Coefficient bound for monic divisors of degree <= half of deg(f):
/// every root has modulus <= 1 + max|c_i| (Cauchy, monic), so a degree-d
/// monic divisor has coefficients bounded by C(d, k) * rho^k.
fn divisor_bound(f: &IntPoly) -> BigInt {
    let rho = BigInt::one() + f.max_abs_coeff();
    let half = f.degree() / 2;
    let mut best = BigInt::one();
    let mut binom = BigInt::one();
    let mut rho_pow = BigInt::one();
    for k in 0..=half {
        if k > 0 {
            binom = binom * BigInt::from((half - k + 1) as u64) / BigInt::from(k as u64);
            rho_pow *= &rho;
        }
        let cand = &binom * &rho_pow;
        if cand > best {
            best = cand;
        }
    }
    best
}

/// Zassenhaus factorization for monic squarefree f with known feasible
/// proper-factor degrees (nonempty).
fn zassenhaus_monic(f: &IntPoly, primes: &[u64], feasible: &[usize]) -> Vec<IntPoly> {
    if feasible.is_empty() {
        return vec![f.clone()];
    }
    // The modular stage prefers the prime with the fewest factors.
    let p = *primes
        .iter()
        .min_by_key(|&&p| degree_pattern(&reduce_mod_p(f, p)).len())
        .expect("nonempty prime list");
    let modular = factor_squarefree(&reduce_mod_p(f, p));
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let bound = divisor_bound(f);
    let target: BigInt = BigInt::from(2) * &bound + 1;
    let lifted = hensel_lift(f, &modular, p, &target);
    let pk = &lifted.modulus;

    let mut remaining = f.clone();
    let mut live: Vec<IntPoly> = lifted.factors;
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= live.len() {
        // subsets of the live modular factors, cardinality = size
        let idx: Vec<usize> = (0..live.len()).collect();
        for combo in combinations(&idx, size) {
            let deg: usize = combo.iter().map(|&i| live[i].degree()).sum();
            if deg > remaining.degree() / 2 {
                continue;
            }
            if !feasible.contains(&deg) && deg != remaining.degree() {
                continue;
            }
            let mut cand = IntPoly::one();
            for &i in &combo {
                cand = mul_mod(&cand, &live[i], pk);
            }
            let cand = symmetric(&cand, pk);
            if let Some(quot) = remaining.div_exact(&cand) {
                out.push(cand);
                remaining = quot;
                let keep: Vec<IntPoly> = live
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                live = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if remaining.degree() >= 1 {
        out.push(remaining);
    }
    out.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

struct Lifted {
    factors: Vec<IntPoly>,
    modulus: BigInt,
}

/// Coefficient-wise reduction into the symmetric range (-m/2, m/2].
fn symmetric(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let mut r = c.mod_floor(m);
                if r > half {
                    r -= m;
                }
                r
            })
            .collect(),
    )
}

fn mul_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(a.mul(b).coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Multifactor linear Hensel lifting of a monic squarefree factorization
/// mod p until the modulus exceeds `target`.
fn hensel_lift(f: &IntPoly, modular: &[PolyP], p: u64, target: &BigInt) -> Lifted {
    let pb = BigInt::from(p);
    // Bezout basis: d_i = (prod_{j != i} g_j)^-1 mod g_i over F_p.
    let mut bezout: Vec<PolyP> = Vec::with_capacity(modular.len());
    for (i, gi) in modular.iter().enumerate() {
        let mut m = PolyP::one(p);
        for (j, gj) in modular.iter().enumerate() {
            if j != i {
                m = m.mul(gj).rem(gi);
            }
        }
        let (g, s, _) = m.xgcd(gi);
        assert!(g.is_one(), "modular factors must be pairwise coprime");
        bezout.push(s.rem(gi));
    }
    let mut lifts: Vec<IntPoly> = modular.iter().map(|g| polyp_to_int(g)).collect();
    let mut modulus = pb.clone();
    while modulus <= *target {
        // error in f - prod(lifts), divided by current modulus, mod p
        let mut prod = IntPoly::one();
        for l in &lifts {
            prod = prod.mul(l);
        }
        let err = f.sub(&prod);
        let err_scaled = IntPoly::new(
            err.coeffs()
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(&modulus);
                    assert!(r.is_zero(), "lift invariant broken");
                    q
                })
                .collect(),
        );
        let err_p = reduce_mod_p(&err_scaled, p);
        for (i, gi) in modular.iter().enumerate() {
            let delta = err_p.mul(&bezout[i]).rem(gi);
            if delta.is_zero() {
                continue;
            }
            let delta_int = polyp_to_int(&delta);
            lifts[i] = lifts[i].add(&delta_int.scale(&modulus));
        }
        modulus *= &pb;
        // keep coefficients reduced mod the new modulus
        for l in lifts.iter_mut() {
            *l = IntPoly::new(l.coeffs().iter().map(|c| c.mod_floor(&modulus)).collect());
        }
    }
    Lifted { factors: lifts, modulus }
}

fn polyp_to_int(g: &PolyP) -> IntPoly {
    IntPoly::new(g.c.iter().map(|&c| BigInt::from(c)).collect())
}

/// Irreducibility over Q for monic polynomials: the sieve early-accepts,
/// otherwise the factoring pipeline decides.
pub(super) fn irreducible_monic(q: &IntPoly) -> bool {
    let n = q.degree();
    if n == 1 {
        return true;
    }
    if q.coeff(0).is_zero() {
        return false; // x divides
    }
    let (_, prim) = q.primitive();
    // squarefree test: gcd(q, q') must be constant
    if gcd_z(&prim, &prim.derivative()).degree() >= 1 {
        return false;
    }
    let primes = usable_primes(&prim, SIEVE_PRIMES);
    assert!(!primes.is_empty(), "squarefree polynomial must have a usable prime");
    let feasible = feasible_degrees(&prim, &primes);
    if feasible.is_empty() {
        return true;
    }
    let factors = zassenhaus_monic(&prim, &primes, &feasible);
    factors.len() == 1
}
