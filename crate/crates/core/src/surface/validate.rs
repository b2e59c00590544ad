use num_traits::Zero;

use super::{torelli_level_of, validate_mapping_class, SurfacePresentation, TorelliLevel};
use crate::error::{Error, Result};
use crate::freegrp::{validate_inverse_pair, GeneratorCatalog};

/// Per-entry findings from the catalog validation suite.
#[derive(Clone, Debug)]
pub struct CatalogReport {
    pub genus: usize,
    pub warnings: Vec<String>,
    /// (name, torelli level) in catalog order.
    pub levels: Vec<(String, TorelliLevel)>,
}

impl CatalogReport {
    pub fn all_torelli(&self) -> bool {
        self.levels.iter().all(|(_, l)| *l == TorelliLevel::FullTorelli)
    }

    pub fn all_mod2_torelli(&self) -> bool {
        self.levels.iter().all(|(_, l)| *l != TorelliLevel::None)
    }
}

/// Runs the full validation suite over a catalog: every entry must define
/// an orientation-preserving mapping class, declared inverses must compose
/// to the identity, and declared curve classes must match the homology
/// transvection. Genus 2 passes with a warning.
pub fn validate_catalog(catalog: &GeneratorCatalog) -> Result<CatalogReport> {
    if catalog.genus < 2 {
        return Err(Error::Catalog("genus must be at least 2".into()));
    }
    let surface = SurfacePresentation::new(catalog.genus);
    let mut warnings = Vec::new();
    if catalog.genus == 2 {
        warnings.push(
            "genus 2: the Torelli group is not finitely generated; catalog walks sample a proper subgroup"
                .to_string(),
        );
    }
    let mut levels = Vec::new();
    for entry in catalog.entries() {
        let mc = validate_mapping_class(&surface, &entry.endo).map_err(|e| {
            Error::Catalog(format!("generator `{}` rejected: {e}", entry.name))
        })?;
        let inv_name = entry.inverse.as_ref().ok_or_else(|| {
            Error::Catalog(format!("generator `{}` has no declared inverse", entry.name))
        })?;
        let inv = catalog
            .get(inv_name)
            .ok_or_else(|| Error::Catalog(format!("inverse `{inv_name}` of `{}` missing", entry.name)))?;
        if !validate_inverse_pair(&entry.endo, &inv.endo) {
            return Err(Error::Catalog(format!(
                "`{}` and `{inv_name}` do not compose to the identity",
                entry.name
            )));
        }
        if let Some(curve) = &entry.curve {
            let expected = surface.transvection(curve);
            if mc.homology != expected {
                // a null-homologous curve declares the identity transvection
                let zero_curve = curve.iter().all(|c| c.is_zero());
                let hint = if zero_curve { " (separating: expected identity)" } else { "" };
                return Err(Error::Catalog(format!(
                    "`{}` homology does not match the declared curve transvection{hint}",
                    entry.name
                )));
            }
        }
        levels.push((entry.name.clone(), torelli_level_of(&mc.homology)));
    }
    Ok(CatalogReport { genus: catalog.genus, warnings, levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegrp::{CatalogEntry, EndoMap, Word};
    use num_bigint::BigInt;

    fn w(text: &str) -> Word {
        Word::parse(text, 3).unwrap()
    }

    fn twist_entry(name: &str, inv: &str, image_b1: &str, curve: Option<Vec<i64>>) -> CatalogEntry {
        let mut images: Vec<Word> = (1..=6).map(Word::generator).collect();
        images[1] = w(image_b1);
        CatalogEntry {
            name: name.into(),
            endo: EndoMap::new(images),
            inverse: Some(inv.into()),
            curve: curve.map(|c| c.into_iter().map(BigInt::from).collect()),
        }
    }

    #[test]
    fn valid_twist_catalog() {
        let mut cat = GeneratorCatalog::new(3);
        cat.push(twist_entry("t", "t_inv", "b1 a1", Some(vec![1, 0, 0, 0, 0, 0]))).unwrap();
        // the inverse twist is not itself a positive transvection, so it
        // declares no curve
        cat.push(twist_entry("t_inv", "t", "b1 A1", None)).unwrap();
        let report = validate_catalog(&cat).unwrap();
        assert!(report.warnings.is_empty());
        assert_eq!(report.levels[0].1, TorelliLevel::None);
        assert!(!report.all_torelli());
    }

    #[test]
    fn wrong_curve_class_rejected() {
        let mut cat = GeneratorCatalog::new(3);
        // declares curve b1 but the twist is along a1
        cat.push(twist_entry("t", "t_inv", "b1 a1", Some(vec![0, 1, 0, 0, 0, 0]))).unwrap();
        cat.push(twist_entry("t_inv", "t", "b1 A1", None)).unwrap();
        assert!(validate_catalog(&cat).is_err());
    }

    #[test]
    fn missing_inverse_rejected() {
        let mut cat = GeneratorCatalog::new(3);
        cat.push(twist_entry("t", "ghost", "b1 a1", None)).unwrap();
        assert!(validate_catalog(&cat).is_err());
    }
}
