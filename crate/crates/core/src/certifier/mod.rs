//! Aggregates per-cover evidence into pseudo-Anosov certificates.
//!
//! The verdict is one-sided: a CERTIFIED verdict is a theorem about the
//! word, INCONCLUSIVE claims nothing.

mod modp_image;

pub use modp_image::{modp_image_order, standard_transvection_generators};

use std::collections::HashMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::freegrp::GeneratorCatalog;
use crate::polyfact::{has_root_of_unity_factor, is_irreducible_q, IntPoly};
use crate::surface::{torelli_level_of, validate_mapping_class, SurfacePresentation, TorelliLevel};
use crate::twocover::{invariant_line_check, prym_action, CoverTable, PrymMatrix};

/// Per-cover certificate evidence.
#[derive(Clone, Debug)]
pub struct CoverEvidence {
    pub alpha: String,
    pub charpoly: IntPoly,
    pub irreducible: bool,
    pub root_of_unity: bool,
    pub invariant_line: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CertifiedPaIrreducible,
    CertifiedPaNoRou,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::CertifiedPaIrreducible => "CERTIFIED_PA_IRREDUCIBLE",
            Verdict::CertifiedPaNoRou => "CERTIFIED_PA_NO_ROU",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }

    pub fn certified(&self) -> bool {
        !matches!(self, Verdict::Inconclusive)
    }
}

/// Which certificate a walk counts as success.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateTier {
    /// irreducible characteristic polynomial on every cover
    IrreducibleOnly,
    /// either certificate
    Either,
}

#[derive(Clone, Debug)]
pub struct CertReport {
    pub word: Vec<String>,
    pub genus: usize,
    pub level: TorelliLevel,
    pub covers: Vec<CoverEvidence>,
    pub verdict: Verdict,
    pub witnesses: Vec<String>,
}

impl CertReport {
    /// JSON with stable key order for golden tests.
    pub fn to_json(&self) -> Value {
        let mut root = Map::new();
        root.insert("word".into(), json!(self.word));
        root.insert("genus".into(), json!(self.genus));
        root.insert("level".into(), serde_json::to_value(self.level).expect("level"));
        let covers: Vec<Value> = self
            .covers
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("alpha".into(), json!(c.alpha));
                m.insert(
                    "charpoly".into(),
                    Value::Array(c.charpoly.coeffs().iter().map(|x| bigint_json(x)).collect()),
                );
                m.insert("irreducible".into(), json!(c.irreducible));
                m.insert("root_of_unity".into(), json!(c.root_of_unity));
                m.insert("invariant_line".into(), json!(c.invariant_line));
                Value::Object(m)
            })
            .collect();
        root.insert("covers".into(), Value::Array(covers));
        root.insert("verdict".into(), json!(self.verdict.as_str()));
        root.insert("witnesses".into(), json!(self.witnesses));
        Value::Object(root)
    }
}

/// Arbitrary-precision integers as bare JSON numbers.
fn bigint_json(x: &num_bigint::BigInt) -> Value {
    let n: serde_json::Number = x.to_string().parse().expect("integer literal");
    Value::Number(n)
}

/// Certification engine: catalog-validated mapping classes with their
/// per-cover Prym matrices, cached once and shared read-only afterwards.
pub struct Certifier {
    surface: SurfacePresentation,
    catalog: GeneratorCatalog,
    covers: CoverTable,
    /// per catalog entry: homology matrix and Prym matrix per cover
    letters: HashMap<String, LetterData>,
}

struct LetterData {
    homology: IntMatrix,
    prym: Vec<PrymMatrix>,
}

impl Certifier {
    /// Validates the catalog and precomputes every letter's action on
    /// every cover. Every entry must act trivially on mod-2 homology.
    pub fn new(catalog: GeneratorCatalog) -> Result<Self> {
        let report = crate::surface::validate_catalog(&catalog)?;
        if !report.all_mod2_torelli() {
            return Err(Error::NotInScope);
        }
        let surface = SurfacePresentation::new(catalog.genus);
        let covers = CoverTable::new(catalog.genus);
        let mut letters = HashMap::new();
        for entry in catalog.entries() {
            let mc = validate_mapping_class(&surface, &entry.endo)?;
            let prym: Vec<PrymMatrix> = covers
                .iter()
                .map(|h| prym_action(h, &mc))
                .collect::<Result<_>>()?;
            letters.insert(entry.name.clone(), LetterData { homology: mc.homology, prym });
        }
        Ok(Certifier { surface, catalog, covers, letters })
    }

    pub fn genus(&self) -> usize {
        self.catalog.genus
    }

    pub fn catalog(&self) -> &GeneratorCatalog {
        &self.catalog
    }

    pub fn covers(&self) -> &CoverTable {
        &self.covers
    }

    pub fn surface(&self) -> &SurfacePresentation {
        &self.surface
    }

    fn letter(&self, name: &str) -> Result<&LetterData> {
        let entry = self.catalog.resolve(name)?;
        Ok(&self.letters[&entry.name])
    }

    /// Composite homology matrix of a word (leftmost applied first).
    pub fn word_homology(&self, word: &[impl AsRef<str>]) -> Result<IntMatrix> {
        let mut acc = IntMatrix::identity(2 * self.genus());
        for n in word {
            acc = self.letter(n.as_ref())?.homology.mul(&acc);
        }
        Ok(acc)
    }

    /// Composite Prym matrix of a word on cover index `ci`.
    pub fn word_prym(&self, word: &[impl AsRef<str>], ci: usize) -> Result<PrymMatrix> {
        let dim = 2 * self.genus() - 2;
        let mut acc = PrymMatrix::canonical(IntMatrix::identity(dim));
        for n in word {
            acc = self.letter(n.as_ref())?.prym[ci].mul(&acc);
        }
        Ok(acc)
    }

    /// Full certificate report for a word over catalog names.
    pub fn certify(&self, word: &[impl AsRef<str>]) -> Result<CertReport> {
        let homology = self.word_homology(word)?;
        let level = torelli_level_of(&homology);
        if level == TorelliLevel::None {
            return Err(Error::NotInScope);
        }
        let mut covers = Vec::with_capacity(self.covers.len());
        for ci in 0..self.covers.len() {
            let pm = self.word_prym(word, ci)?;
            let charpoly = pm.char_poly();
            let irreducible = is_irreducible_q(&charpoly)?;
            let root_of_unity = has_root_of_unity_factor(&charpoly)?;
            let invariant_line = invariant_line_check(&pm);
            covers.push(CoverEvidence {
                alpha: self.covers.get(ci).cover.alpha_string(),
                charpoly,
                irreducible,
                root_of_unity,
                invariant_line,
            });
        }
        let all_irreducible = covers.iter().all(|c| c.irreducible);
        let any_rou = covers.iter().any(|c| c.root_of_unity);
        let verdict = if all_irreducible {
            Verdict::CertifiedPaIrreducible
        } else if !any_rou {
            Verdict::CertifiedPaNoRou
        } else {
            Verdict::Inconclusive
        };
        let witnesses = if verdict == Verdict::Inconclusive {
            covers
                .iter()
                .filter(|c| !c.irreducible && (c.root_of_unity || c.invariant_line))
                .map(|c| c.alpha.clone())
                .collect()
        } else {
            Vec::new()
        };
        Ok(CertReport {
            word: word.iter().map(|n| n.as_ref().to_string()).collect(),
            genus: self.genus(),
            level,
            covers,
            verdict,
            witnesses,
        })
    }

    /// Walk-grade pass/fail: does the word earn the given certificate?
    /// Scans covers in a fixed order with early exit; the outcome matches
    /// `certify` exactly.
    pub fn certified_at_tier(&self, word: &[impl AsRef<str>], tier: CertificateTier) -> Result<bool> {
        let homology = self.word_homology(word)?;
        if torelli_level_of(&homology) == TorelliLevel::None {
            return Err(Error::NotInScope);
        }
        match tier {
            CertificateTier::IrreducibleOnly => {
                for ci in 0..self.covers.len() {
                    let cp = self.word_prym(word, ci)?.char_poly();
                    if !is_irreducible_q(&cp)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            CertificateTier::Either => {
                let mut all_irreducible = true;
                for ci in 0..self.covers.len() {
                    let cp = self.word_prym(word, ci)?.char_poly();
                    if is_irreducible_q(&cp)? {
                        continue;
                    }
                    all_irreducible = false;
                    if has_root_of_unity_factor(&cp)? {
                        return Ok(false);
                    }
                }
                let _ = all_irreducible;
                Ok(true)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defaults::default_torelli_catalog;
    use crate::polyfact::IntPoly;
    use std::sync::OnceLock;

    fn engine() -> &'static Certifier {
        static CELL: OnceLock<Certifier> = OnceLock::new();
        CELL.get_or_init(|| Certifier::new(default_torelli_catalog()).unwrap())
    }

    #[test]
    fn empty_word_is_inconclusive_identity() {
        let report = engine().certify(&Vec::<String>::new()).unwrap();
        assert_eq!(report.level, TorelliLevel::FullTorelli);
        assert_eq!(report.verdict, Verdict::Inconclusive);
        for c in &report.covers {
            assert_eq!(c.charpoly, IntPoly::from_i64(&[1, -4, 6, -4, 1]));
            assert!(c.invariant_line);
            assert!(c.root_of_unity);
            assert!(!c.irreducible);
        }
        assert_eq!(report.covers.len(), 63);
    }

    #[test]
    fn single_separating_twist_inconclusive_with_lines() {
        let report = engine().certify(&["sep1"]).unwrap();
        assert_eq!(report.verdict, Verdict::Inconclusive);
        assert!(report.covers.iter().all(|c| c.invariant_line));
        assert!(!report.witnesses.is_empty());
    }

    #[test]
    fn inverse_suffix_resolves() {
        let a = engine().certify(&["sep1", "sep1^-1"]).unwrap();
        assert_eq!(a.verdict, Verdict::Inconclusive);
        let b = engine().certify(&["sep1", "sep1_inv"]).unwrap();
        // same evidence; only the echoed word differs
        assert_eq!(a.to_json()["covers"], b.to_json()["covers"]);
        assert_eq!(a.to_json()["verdict"], b.to_json()["verdict"]);
    }

    #[test]
    fn tier_agrees_with_certify() {
        let words: Vec<Vec<&str>> = vec![
            vec![],
            vec!["sep1"],
            vec!["bp1", "sep2v1", "bp2_inv", "sep1v3"],
            vec!["sep1v7", "bp3", "sep23", "bp1_inv", "sep12v2", "bp2"],
        ];
        for w in words {
            let report = engine().certify(&w).unwrap();
            let irr = engine().certified_at_tier(&w, CertificateTier::IrreducibleOnly).unwrap();
            let either = engine().certified_at_tier(&w, CertificateTier::Either).unwrap();
            assert_eq!(irr, report.verdict == Verdict::CertifiedPaIrreducible, "{w:?}");
            assert_eq!(either, report.verdict.certified(), "{w:?}");
        }
    }

    #[test]
    fn reports_are_sign_robust() {
        // flipping the sign of any representative collapses back to the
        // same canonical class, so reports cannot depend on sign choices
        let engine = engine();
        let word = ["sep1v3", "bp2", "sep23_inv"];
        for ci in (0..engine.covers().len()).step_by(13) {
            let pm = engine.word_prym(&word, ci).unwrap();
            let flipped = crate::twocover::PrymMatrix::canonical(pm.rep().neg());
            assert!(flipped.same_class(&pm));
        }
        let a = engine.certify(&word).unwrap().to_json();
        let b = engine.certify(&word).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn json_shape_is_stable() {
        let report = engine().certify(&["sep1"]).unwrap();
        let v = report.to_json();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["word", "genus", "level", "covers", "verdict", "witnesses"]);
        let c0 = &v["covers"][0];
        let ckeys: Vec<&String> = c0.as_object().unwrap().keys().collect();
        assert_eq!(
            ckeys,
            ["alpha", "charpoly", "irreducible", "root_of_unity", "invariant_line"]
        );
    }
}
