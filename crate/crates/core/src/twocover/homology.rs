use num_bigint::BigInt;
use num_traits::Zero;

use super::schreier::{schreier_data, SchreierRewriter};
use crate::exactlin::{saturated_kernel, smith_normal_form, unimodular_inverse, IntMatrix, LatticeSolver};
use crate::freegrp::{EndoMap, Word};
use crate::surface::{CoverSpec, SurfacePresentation};

/// Integral homology of the double cover, presented on the free
/// abelianization of the Schreier generators modulo the two rewritten
/// relators, with the covering projection, deck action and the Prym
/// kernel all in fixed coordinates.
///
/// Ranks are forced: H_1 of the cover is Z^(4g-2) and the kernel of the
/// projection has rank 2g-2. Construction asserts every structural
/// invariant and panics on violation; none of them can fail without a
/// bug somewhere upstream.
pub struct CoverHomology {
    pub cover: CoverSpec,
    sd: SchreierRewriter,
    /// ambient rank 4g-1
    ambient: usize,
    /// quotient rank 4g-2
    rank: usize,
    /// rows 1.. of U: ambient -> quotient coordinates
    proj: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    /// 2g x (4g-2): induced covering projection on homology
    p_star: IntMatrix,
    /// (4g-2) x (4g-2): deck involution on homology
    tau_star: IntMatrix,
    /// (4g-2) x (2g-2): columns form the saturated kernel basis of p_star
    kp: IntMatrix,
    kp_solver: LatticeSolver,
}

impl CoverHomology {
    pub fn new(p: &CoverSpec) -> Self {
        Self::with_rewriter(p, schreier_data(p))
    }

    pub fn with_rewriter(p: &CoverSpec, sd: SchreierRewriter) -> Self {
        let genus = p.genus();
        let surface = SurfacePresentation::new(genus);
        let ambient = sd.generator_count();
        let rank = ambient - 1;

        // the two relators of the index-2 subgroup presentation
        let r = surface.relator();
        let t = Word::generator(sd.transversal_letter());
        let r_conj = r.conjugate_by(&t);
        let rho1 = ab_schreier(&sd, &r);
        let rho2 = ab_schreier(&sd, &r_conj);
        let rel = IntMatrix::from_columns(ambient, vec![rho1, rho2]);

        // quotient must be free of rank 4g-2: one invariant factor, = 1
        let snf = smith_normal_form(&rel);
        assert_eq!(snf.rank(), 1, "relator lattice of a cover must have rank 1");
        assert_eq!(
            snf.d[(0, 0)],
            BigInt::from(1),
            "cover homology must be torsion-free"
        );
        let u = snf.u;
        let u_inv = unimodular_inverse(&u);
        let proj = u.block(1, ambient, 0, ambient);
        let sect = u_inv.block(0, ambient, 1, ambient);
        // sect is only needed during construction

        // covering projection on homology
        let base_cols: Vec<Vec<BigInt>> = sd
            .generator_words()
            .iter()
            .map(|g| g.abelianization(2 * genus))
            .collect();
        let p_amb = IntMatrix::from_columns(2 * genus, base_cols);
        assert!(p_amb.mul(&rel).is_zero(), "relators must die in the base homology");
        let p_star = p_amb.mul(&sect);

        // deck involution: conjugation by the transversal letter
        let tau_cols: Vec<Vec<BigInt>> = sd
            .generator_words()
            .iter()
            .map(|g| {
                let conj = g.conjugate_by(&t);
                ab_schreier(&sd, &conj)
            })
            .collect();
        let tau_amb = IntMatrix::from_columns(ambient, tau_cols);
        let tau_star = induce(&u, &u_inv, &tau_amb, "deck involution");
        assert!(tau_star.mul(&tau_star).is_identity(), "deck action must square to 1");
        assert_eq!(p_star.mul(&tau_star), p_star, "projection must absorb the deck action");

        // Prym kernel: saturated kernel of p_star, rank 2g-2
        let kp_basis = saturated_kernel(&p_star);
        assert_eq!(kp_basis.len(), 2 * genus - 2, "Prym kernel must have rank 2g-2");
        let kp = IntMatrix::from_columns(rank, kp_basis);
        let kp_solver = LatticeSolver::new(&kp);

        // tau acts as -1 on the kernel
        for j in 0..kp.cols() {
            let image = tau_star.mul_vec(&kp.column(j));
            let coords = kp_solver.solve(&image).expect("kernel is deck-invariant");
            for (i, c) in coords.iter().enumerate() {
                let want = if i == j { BigInt::from(-1) } else { BigInt::zero() };
                assert_eq!(*c, want, "deck action must be -1 on the Prym kernel");
            }
        }

        CoverHomology {
            cover: *p,
            sd,
            ambient,
            rank,
            proj,
            u,
            u_inv,
            p_star,
            tau_star,
            kp,
            kp_solver,
        }
    }

    pub fn rewriter(&self) -> &SchreierRewriter {
        &self.sd
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kp_rank(&self) -> usize {
        self.kp.cols()
    }

    pub fn p_star(&self) -> &IntMatrix {
        &self.p_star
    }

    pub fn tau_star(&self) -> &IntMatrix {
        &self.tau_star
    }

    pub fn kp_basis(&self) -> &IntMatrix {
        &self.kp
    }

    /// Action of a sigma-preserving endomorphism on the cover homology.
    pub fn induced_action(&self, endo: &EndoMap) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self
            .sd
            .generator_words()
            .iter()
            .map(|g| {
                let img = endo.apply(g).expect("rank matches the surface group");
                ab_schreier(&self.sd, &img)
            })
            .collect();
        let amb = IntMatrix::from_columns(self.ambient, cols);
        induce(&self.u, &self.u_inv, &amb, "mapping class action")
    }

    /// Restriction of a quotient endomorphism to the Prym kernel, in the
    /// kernel basis.
    pub fn restrict_to_kp(&self, action: &IntMatrix) -> IntMatrix {
        let k = self.kp.cols();
        let mut cols = Vec::with_capacity(k);
        for j in 0..k {
            let image = action.mul_vec(&self.kp.column(j));
            let coords = self
                .kp_solver
                .solve(&image)
                .expect("action must preserve the Prym kernel");
            cols.push(coords);
        }
        IntMatrix::from_columns(k, cols)
    }

    pub fn projection(&self) -> &IntMatrix {
        &self.proj
    }
}

/// Abelianization of a word over the Schreier alphabet after rewriting.
fn ab_schreier(sd: &SchreierRewriter, w: &Word) -> Vec<BigInt> {
    sd.rewrite(w)
        .expect("word must have even sigma")
        .abelianization(sd.generator_count())
}

/// Push an ambient endomorphism that preserves the relator lattice to the
/// quotient coordinates.
fn induce(u: &IntMatrix, u_inv: &IntMatrix, amb: &IntMatrix, what: &str) -> IntMatrix {
    let n = amb.rows();
    let w = u.mul(amb).mul(u_inv);
    for i in 1..n {
        assert!(
            w[(i, 0)].is_zero(),
            "{what} must preserve the relator lattice"
        );
    }
    w.block(1, n, 1, n)
}
