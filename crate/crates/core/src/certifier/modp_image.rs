//! Finite-image probe: order of the subgroup of PSp(2k, Z/q) generated by
//! the catalog's Prym images on one cover, by breadth-first closure.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::Certifier;
use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::surface::CoverSpec;

/// Canonical mod-q bytes of +-M (lexicographically smaller of the two).
fn reduce_pm(m: &IntMatrix, q: u64) -> Vec<u8> {
    let qb = BigInt::from(q);
    let n = m.rows();
    let mut a: Vec<u8> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            a.push(m[(i, j)].mod_floor(&qb).to_u8().expect("q fits in u8"));
        }
    }
    canonical_pm(a, q as u8)
}

fn canonical_pm(a: Vec<u8>, q: u8) -> Vec<u8> {
    let neg: Vec<u8> = a.iter().map(|&x| (q - x) % q).collect();
    if neg < a {
        neg
    } else {
        a
    }
}

fn mul_mod(x: &[u8], y: &[u8], n: usize, q: u64) -> Vec<u8> {
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        for k in 0..n {
            let a = x[n * i + k] as u64;
            if a == 0 {
                continue;
            }
            for j in 0..n {
                out[n * i + j] = ((out[n * i + j] as u64 + a * y[n * k + j] as u64) % q) as u8;
            }
        }
    }
    canonical_pm(out, q as u8)
}

/// Order of the subgroup of PSp(2g-2, Z/q) generated by the mod-q
/// reductions of the given matrices. Deterministic; errors out past the
/// bound instead of grinding on.
pub fn psp_closure_order(gens: &[&IntMatrix], dim: usize, q: u64, bound: usize) -> Result<usize> {
    assert!(q >= 2 && q < 256);
    let id = reduce_pm(&IntMatrix::identity(dim), q);
    let reps: Vec<Vec<u8>> = gens.iter().map(|m| reduce_pm(m, q)).collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in &reps {
            let y = mul_mod(&x, g, dim, q);
            if seen.insert(y.clone()) {
                if seen.len() > bound {
                    return Err(Error::Explosion(bound));
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen.len())
}

/// Order of the image of the catalog's Torelli generators on one cover.
pub fn modp_image_order(
    certifier: &Certifier,
    cover: &CoverSpec,
    q: u64,
    bound: usize,
) -> Result<usize> {
    let ci = certifier
        .covers()
        .iter()
        .position(|h| h.cover == *cover)
        .ok_or_else(|| Error::Config(format!("unknown cover {}", cover.alpha_string())))?;
    let names = certifier.catalog().names();
    let mats: Vec<IntMatrix> = names
        .iter()
        .map(|n| Ok(certifier.word_prym(&[n.as_str()], ci)?.rep().clone()))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&IntMatrix> = mats.iter().collect();
    psp_closure_order(&refs, 2 * certifier.genus() - 2, q, bound)
}

/// Symmetric transvection generating set of Sp(2k, Z): transvections along
/// e_i, f_i and e_i + e_(i+1), f_i + f_(i+1), plus inverses. Coordinates
/// pair as (e_1, f_1, e_2, f_2, ...) with <e_i, f_i> = 1.
pub fn standard_transvection_generators(k: usize) -> Vec<IntMatrix> {
    assert!(k >= 1);
    let n = 2 * k;
    let mut dirs: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut v = vec![0i64; n];
        v[i] = 1;
        dirs.push(v);
    }
    for i in 0..k.saturating_sub(1) {
        let mut v = vec![0i64; n];
        v[2 * i] = 1;
        v[2 * (i + 1)] = 1;
        dirs.push(v);
        let mut v = vec![0i64; n];
        v[2 * i + 1] = 1;
        v[2 * (i + 1) + 1] = 1;
        dirs.push(v);
    }
    let pair = |u: &[i64], v: &[i64]| -> i64 {
        (0..k).map(|i| u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i]).sum()
    };
    let mut out = Vec::new();
    for d in &dirs {
        for sign in [1i64, -1] {
            let m = IntMatrix::from_fn(n, n, |r, c| {
                let mut basis = vec![0i64; n];
                basis[c] = 1;
                let coef = sign * pair(d, &basis);
                BigInt::from(if r == c { 1 } else { 0 } + coef * d[r])
            });
            out.push(m);
        }
    }
    out
}
