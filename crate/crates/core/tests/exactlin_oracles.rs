//! Independent oracles for the exact linear algebra layer.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use prym_core::exactlin::{char_poly, saturated_kernel, smith_normal_form, IntMatrix};
use prym_core::polyfact::IntPoly;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

fn rand_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, span: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| {
        let w = (2 * span + 1) as u64;
        BigInt::from((rng.next_u64() % w) as i64 - span)
    })
}

/// det(xI - M) by literal cofactor expansion over polynomial entries.
fn charpoly_cofactor(m: &IntMatrix) -> IntPoly {
    let n = m.rows();
    let entries: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -m[(i, j)].clone();
                    if i == j {
                        IntPoly::new(vec![c, BigInt::one()])
                    } else {
                        IntPoly::constant(c)
                    }
                })
                .collect()
        })
        .collect();
    poly_det(&entries)
}

fn poly_det(a: &[Vec<IntPoly>]) -> IntPoly {
    let n = a.len();
    if n == 0 {
        return IntPoly::one();
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut acc = IntPoly::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<IntPoly>> = (1..n)
            .map(|i| (0..n).filter(|&c| c != j).map(|c| a[i][c].clone()).collect())
            .collect();
        let term = a[0][j].mul(&poly_det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

#[test]
fn charpoly_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::from_seed([11u8; 32]);
    for dim in 1..=4usize {
        for _ in 0..60 {
            let m = rand_matrix(&mut rng, dim, dim, 2);
            assert_eq!(char_poly(&m).unwrap(), charpoly_cofactor(&m), "{m:?}");
        }
    }
}

#[test]
fn snf_reconstruction_randomized() {
    let mut rng = ChaCha8Rng::from_seed([12u8; 32]);
    for _ in 0..120 {
        let rows = 1 + (rng.next_u64() % 5) as usize;
        let cols = 1 + (rng.next_u64() % 5) as usize;
        let m = rand_matrix(&mut rng, rows, cols, 10);
        let s = smith_normal_form(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.det().abs(), BigInt::one());
        assert_eq!(s.v.det().abs(), BigInt::one());
        let k = rows.min(cols);
        for i in 0..k {
            assert!(!s.d[(i, i)].is_negative());
            if i + 1 < k && !s.d[(i + 1, i + 1)].is_zero() {
                assert!((&s.d[(i + 1, i + 1)] % &s.d[(i, i)]).is_zero());
            }
        }
    }
}

#[test]
fn snf_is_deterministic() {
    let m = IntMatrix::from_i64(3, 4, &[6, 10, 15, 3, 0, 4, 9, 12, 2, 2, 2, 2]);
    let a = smith_normal_form(&m);
    let b = smith_normal_form(&m);
    assert_eq!(a.d, b.d);
    assert_eq!(a.u, b.u);
    assert_eq!(a.v, b.v);
}

#[test]
fn kernel_vectors_annihilate_and_extend_to_basis() {
    let mut rng = ChaCha8Rng::from_seed([13u8; 32]);
    for _ in 0..80 {
        let rows = 1 + (rng.next_u64() % 4) as usize;
        let cols = 2 + (rng.next_u64() % 4) as usize;
        let m = rand_matrix(&mut rng, rows, cols, 6);
        let basis = saturated_kernel(&m);
        for v in &basis {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        if basis.is_empty() {
            continue;
        }
        // a saturated basis extends to a basis of Z^cols: all invariant
        // factors of the stacked matrix are 1
        let stack = IntMatrix::from_fn(basis.len(), cols, |i, j| basis[i][j].clone());
        let s = smith_normal_form(&stack);
        let factors = s.invariant_factors();
        assert_eq!(factors.len(), basis.len());
        assert!(factors.iter().all(|f| f.is_one()), "{factors:?}");
    }
}

#[test]
fn unimodular_charpoly_constant_term() {
    // random products of elementary matrices have det +-1, and the
    // constant coefficient of their characteristic polynomial is +-det
    let mut rng = ChaCha8Rng::from_seed([14u8; 32]);
    for _ in 0..40 {
        let n = 2 + (rng.next_u64() % 3) as usize;
        let mut m = IntMatrix::identity(n);
        for _ in 0..12 {
            let i = (rng.next_u64() % n as u64) as usize;
            let j = (rng.next_u64() % n as u64) as usize;
            if i == j {
                continue;
            }
            let mut e = IntMatrix::identity(n);
            e[(i, j)] = BigInt::from((rng.next_u64() % 5) as i64 - 2);
            m = m.mul(&e);
        }
        assert_eq!(m.det().abs(), BigInt::one());
        let cp = char_poly(&m).unwrap();
        assert_eq!(cp.coeff(0).abs(), BigInt::one());
    }
}
