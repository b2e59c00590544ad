//! The closed genus-g surface model: relator, mapping-class validation,
//! symplectic homology action, Torelli tests, double covers and mod-2
//! lift predicates.

mod covers;
mod dehn;
mod splitting;
mod validate;

pub use covers::{enumerate_covers, CoverSpec};
pub use dehn::{dehn_reduce, equal_in_surface_group, equal_up_to_inner, inner_conjugator, is_trivial_in_surface_group};
pub use splitting::{separating_lifts_predicate, witness_cover_for_splitting, Splitting};
pub use validate::{validate_catalog, CatalogReport};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::freegrp::{EndoMap, Word};

/// Standard presentation data for the closed orientable genus-g surface:
/// alphabet a_1 b_1 ... a_g b_g, relator the product of commutators, and
/// the symplectic intersection form with <a_i, b_i> = +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePresentation {
    pub genus: usize,
}

impl SurfacePresentation {
    pub fn new(genus: usize) -> Self {
        assert!(genus >= 2, "the tools here need genus at least 2");
        SurfacePresentation { genus }
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    /// [a_1, b_1] [a_2, b_2] ... [a_g, b_g]
    pub fn relator(&self) -> Word {
        let mut letters = Vec::with_capacity(4 * self.genus);
        for i in 0..self.genus {
            let a = (2 * i + 1) as i32;
            let b = (2 * i + 2) as i32;
            letters.extend_from_slice(&[a, b, -a, -b]);
        }
        Word::new(letters)
    }

    /// The intersection form J on Z^2g in the (a_1, b_1, ..) coordinates.
    pub fn symplectic_form(&self) -> IntMatrix {
        let n = self.rank();
        let mut j = IntMatrix::zero(n, n);
        for i in 0..self.genus {
            j[(2 * i, 2 * i + 1)] = BigInt::one();
            j[(2 * i + 1, 2 * i)] = -BigInt::one();
        }
        j
    }

    /// <u, v> under the intersection form.
    pub fn pairing(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for i in 0..self.genus {
            acc += &u[2 * i] * &v[2 * i + 1] - &u[2 * i + 1] * &v[2 * i];
        }
        acc
    }

    /// Homology transvection along the class c: v -> v + <c, v> c.
    pub fn transvection(&self, c: &[BigInt]) -> IntMatrix {
        let n = self.rank();
        assert_eq!(c.len(), n);
        let j = self.symplectic_form();
        let mut t = IntMatrix::identity(n);
        for col in 0..n {
            // <c, e_col> = (c^T J)_col
            let mut coef = BigInt::zero();
            for k in 0..n {
                coef += &c[k] * &j[(k, col)];
            }
            if coef.is_zero() {
                continue;
            }
            for row in 0..n {
                let t_add = &coef * &c[row];
                t[(row, col)] += t_add;
            }
        }
        t
    }
}

/// How a mapping class sits relative to the Torelli group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum TorelliLevel {
    /// Acts as the identity on integer homology.
    #[serde(rename = "FULL_TORELLI")]
    FullTorelli,
    /// Identity mod 2 but not over Z; still lifts to every double cover.
    #[serde(rename = "MOD2_ONLY")]
    Mod2Only,
    /// Acts nontrivially mod 2.
    #[serde(rename = "NONE")]
    None,
}

/// A validated orientation-preserving mapping class: the endomorphism
/// preserves the relator up to cyclic rotation with exponent +1, and the
/// homology action is symplectic.
#[derive(Clone, Debug)]
pub struct MappingClass {
    pub endo: EndoMap,
    pub homology: IntMatrix,
}

impl MappingClass {
    pub fn torelli_level(&self) -> TorelliLevel {
        torelli_level_of(&self.homology)
    }
}

pub fn torelli_level_of(homology: &IntMatrix) -> TorelliLevel {
    if homology.is_identity() {
        TorelliLevel::FullTorelli
    } else if homology.is_identity_mod(2) {
        TorelliLevel::Mod2Only
    } else {
        TorelliLevel::None
    }
}

/// Checks that an endomorphism defines an orientation-preserving mapping
/// class and returns it with its homology action.
pub fn validate_mapping_class(surface: &SurfacePresentation, f: &EndoMap) -> Result<MappingClass> {
    if f.rank() != surface.rank() {
        return Err(Error::RankMismatch { expected: surface.rank(), got: f.rank() });
    }
    let r = surface.relator();
    let image = f.apply(&r)?.cyclic_reduce();
    if !image.is_cyclic_rotation_of(&r) {
        if image.is_cyclic_rotation_of(&r.inverse()) {
            return Err(Error::OrientationReversing);
        }
        return Err(Error::RelatorNotPreserved);
    }
    let homology = f.abelianized_matrix();
    let j = surface.symplectic_form();
    if homology.transpose().mul(&j).mul(&homology) != j {
        // a relator-preserving endomorphism always acts symplectically,
        // so reaching this means a bug upstream
        return Err(Error::NonSymplectic);
    }
    Ok(MappingClass { endo: f.clone(), homology })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegrp::GeneratorCatalog;

    fn surface() -> SurfacePresentation {
        SurfacePresentation::new(3)
    }

    fn w(text: &str) -> Word {
        Word::parse(text, 3).unwrap()
    }

    #[test]
    fn relator_abelianizes_to_zero() {
        let s = surface();
        let r = s.relator();
        assert!(r.abelianization(6).iter().all(|x| x.is_zero()));
        assert_eq!(r.len(), 12);
    }

    #[test]
    fn form_is_antisymmetric_unimodular() {
        let s = surface();
        let j = s.symplectic_form();
        assert_eq!(j.transpose(), j.neg());
        assert_eq!(j.det(), BigInt::one());
    }

    #[test]
    fn identity_is_full_torelli() {
        let s = surface();
        let mc = validate_mapping_class(&s, &EndoMap::identity(6)).unwrap();
        assert!(mc.homology.is_identity());
        assert_eq!(mc.torelli_level(), TorelliLevel::FullTorelli);
    }

    #[test]
    fn twist_about_a1_matches_transvection() {
        let s = surface();
        let mut images: Vec<Word> = (1..=6).map(Word::generator).collect();
        images[1] = w("b1 a1");
        let f = EndoMap::new(images);
        let mc = validate_mapping_class(&s, &f).unwrap();
        let c: Vec<BigInt> = vec![1, 0, 0, 0, 0, 0].into_iter().map(BigInt::from).collect();
        assert_eq!(mc.homology, s.transvection(&c));
        assert_eq!(mc.torelli_level(), TorelliLevel::None);
    }

    #[test]
    fn bad_endo_rejected() {
        let s = surface();
        let mut images: Vec<Word> = (1..=6).map(Word::generator).collect();
        images[0] = w("a1 a1");
        let f = EndoMap::new(images);
        assert!(matches!(
            validate_mapping_class(&s, &f),
            Err(Error::RelatorNotPreserved)
        ));
    }

    #[test]
    fn orientation_reversal_detected() {
        // swap handles 1 and 3 and swap a with b within each handle:
        // the relator maps exactly to its inverse
        let s = surface();
        let images = vec![w("b3"), w("a3"), w("b2"), w("a2"), w("b1"), w("a1")];
        let f = EndoMap::new(images);
        assert!(matches!(
            validate_mapping_class(&s, &f),
            Err(Error::OrientationReversing)
        ));
    }

    #[test]
    fn handle_rotation_is_a_mapping_class() {
        let s = surface();
        let images = vec![w("a2"), w("b2"), w("a3"), w("b3"), w("a1"), w("b1")];
        let f = EndoMap::new(images);
        let mc = validate_mapping_class(&s, &f).unwrap();
        assert_eq!(mc.torelli_level(), TorelliLevel::None);
    }

    #[test]
    fn inner_automorphisms_are_torelli() {
        let s = surface();
        let f = EndoMap::inner(6, &w("a1 b2 A3"));
        let mc = validate_mapping_class(&s, &f).unwrap();
        assert_eq!(mc.torelli_level(), TorelliLevel::FullTorelli);
    }

    #[test]
    fn separating_twist_is_full_torelli() {
        // conjugation of handle-1 generators by [a1, b1]
        let s = surface();
        let c = w("a1 b1 A1 B1");
        let mut images: Vec<Word> = (1..=6).map(Word::generator).collect();
        images[0] = w("a1").conjugate_by(&c);
        images[1] = w("b1").conjugate_by(&c);
        let f = EndoMap::new(images);
        let mc = validate_mapping_class(&s, &f).unwrap();
        assert_eq!(mc.torelli_level(), TorelliLevel::FullTorelli);
    }

    #[test]
    fn catalog_compose_respects_validation() {
        // composite of validated classes is validated
        let s = surface();
        let mut cat = GeneratorCatalog::new(3);
        let mut images: Vec<Word> = (1..=6).map(Word::generator).collect();
        images[1] = w("b1 a1");
        cat.push(crate::freegrp::CatalogEntry {
            name: "ta1".into(),
            endo: EndoMap::new(images),
            inverse: None,
            curve: None,
        })
        .unwrap();
        let composite = cat.compose(&["ta1", "ta1"]).unwrap();
        assert!(validate_mapping_class(&s, &composite).is_ok());
    }
}
