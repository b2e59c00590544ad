//! Built-in genus-3 catalogs.
//!
//! The base twist formulas act on one or two generators; the connector
//! twist between adjacent handles was found by machine search against
//! exact relator preservation and the declared transvection, and every
//! derived generator below is re-validated on construction. Separating
//! twists are conjugations by the bounding word of a handle block;
//! conjugating them through auxiliary twist words yields separating
//! curves in many positions, enough that on every double cover the
//! reductions of the catalog generate the full symplectic group mod 3.
//! Bounding-pair maps come out of the three-chain relation: the chain
//! (b1, a1, connector) has a neighborhood bounded by two disjoint
//! homologous curves, one of them isotopic to the a2 curve, so dividing
//! the chain-power relation by the a2 twist leaves the twist difference
//! of the pair.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::Result;
use crate::freegrp::{CatalogEntry, EndoMap, GeneratorCatalog, Word};
use crate::surface::{validate_catalog, Splitting};

const GENUS: usize = 3;
const RANK: usize = 6;

fn w(text: &str) -> Word {
    Word::parse(text, GENUS).expect("builtin word")
}

fn endo(changes: &[(usize, Word)]) -> EndoMap {
    let mut images: Vec<Word> = (1..=RANK).map(Word::generator).collect();
    for (slot, img) in changes {
        images[*slot - 1] = img.clone();
    }
    EndoMap::new(images)
}

fn ai(i: usize) -> usize {
    2 * i - 1
}

fn bi(i: usize) -> usize {
    2 * i
}

/// Auxiliary twists by name: ta_i, tb_i, connectors d12/d23/d31, the
/// handle rotation rho, and all inverses ("_inv").
fn aux_map() -> HashMap<String, EndoMap> {
    let mut m = HashMap::new();
    for i in 1..=3usize {
        m.insert(
            format!("ta{i}"),
            endo(&[(bi(i), Word::generator(bi(i)).concat(&Word::generator(ai(i))))]),
        );
        m.insert(
            format!("ta{i}_inv"),
            endo(&[(bi(i), Word::generator(bi(i)).concat(&Word::generator(ai(i)).inverse()))]),
        );
        m.insert(
            format!("tb{i}"),
            endo(&[(ai(i), Word::generator(ai(i)).concat(&Word::generator(bi(i)).inverse()))]),
        );
        m.insert(
            format!("tb{i}_inv"),
            endo(&[(ai(i), Word::generator(ai(i)).concat(&Word::generator(bi(i))))]),
        );
    }
    // connector between handles 1 and 2, crossing a1 and b2 once each,
    // homology class a2 - b1 (machine-derived; see module docs)
    let d12 = endo(&[
        (ai(1), w("B1 a2 a3 b3 A3 B3 a1")),
        (bi(2), w("a3 b3 A3 B3 B1 a2 b2")),
    ]);
    let d12_inv = endo(&[
        (ai(1), w("b3 a3 B3 A3 A2 b1 a1")),
        (bi(2), w("A2 b1 b3 a3 B3 A3 b2")),
    ]);
    let rho = EndoMap::new(vec![w("a2"), w("b2"), w("a3"), w("b3"), w("a1"), w("b1")]);
    let rho_inv = EndoMap::new(vec![w("a3"), w("b3"), w("a1"), w("b1"), w("a2"), w("b2")]);
    let conj = |f: &EndoMap, g: &EndoMap, gi: &EndoMap| -> EndoMap {
        g.compose(f).expect("rank").compose(gi).expect("rank")
    };
    let d23 = conj(&d12, &rho, &rho_inv);
    let d23_inv = conj(&d12_inv, &rho, &rho_inv);
    let d31 = conj(&d23, &rho, &rho_inv);
    let d31_inv = conj(&d23_inv, &rho, &rho_inv);
    m.insert("d12".into(), d12);
    m.insert("d12_inv".into(), d12_inv);
    m.insert("d23".into(), d23);
    m.insert("d23_inv".into(), d23_inv);
    m.insert("d31".into(), d31);
    m.insert("d31_inv".into(), d31_inv);
    m.insert("rho".into(), rho);
    m.insert("rho_inv".into(), rho_inv);
    m
}

fn handle_boundary(lo: usize, hi: usize) -> Word {
    let mut out = Word::empty();
    for i in lo..=hi {
        let a = Word::generator(ai(i));
        let b = Word::generator(bi(i));
        out = out.concat(&a.concat(&b).concat(&a.inverse()).concat(&b.inverse()));
    }
    out
}

fn sep_twist(lo: usize, hi: usize, inverse: bool) -> EndoMap {
    let c = handle_boundary(lo, hi);
    let c = if inverse { c.inverse() } else { c };
    let mut changes = Vec::new();
    for i in lo..=hi {
        for slot in [ai(i), bi(i)] {
            changes.push((slot, Word::generator(slot).conjugate_by(&c)));
        }
    }
    endo(&changes)
}

fn compose_pow(step: &EndoMap, k: usize) -> EndoMap {
    let mut acc = EndoMap::identity(RANK);
    for _ in 0..k {
        acc = step.compose(&acc).expect("rank");
    }
    acc
}

/// Bounding-pair map and its inverse from the three-chain relation.
fn bounding_pair(aux: &HashMap<String, EndoMap>) -> (EndoMap, EndoMap) {
    let g = |n: &str| aux.get(n).expect("aux name").clone();
    let step = g("tb1").compose(&g("ta1")).expect("rank").compose(&g("d12")).expect("rank");
    let e = compose_pow(&step, 4);
    let step_inv = g("d12_inv")
        .compose(&g("ta1_inv"))
        .expect("rank")
        .compose(&g("tb1_inv"))
        .expect("rank");
    let e_inv = compose_pow(&step_inv, 4);
    let bp = g("ta2").compose(&e_inv).expect("rank").compose(&g("ta2")).expect("rank");
    let bp_inv = g("ta2_inv").compose(&e).expect("rank").compose(&g("ta2_inv")).expect("rank");
    (bp, bp_inv)
}

/// Separating-twist variants: (base block, conjugator word over the
/// auxiliary twists, leftmost applied first). The first eleven make every
/// cover reachable; the rest push the mod-3 image on each cover to the
/// full symplectic group and speed up walk mixing.
type ConjWord = &'static [&'static str];

const SEP_BASES: [(&str, (usize, usize)); 5] = [
    ("sep1", (1, 1)),
    ("sep2", (2, 2)),
    ("sep3", (3, 3)),
    ("sep12", (1, 2)),
    ("sep23", (2, 3)),
];

const SEP_VARIANTS: [(&str, ConjWord); 41] = [
    ("sep1", &["d12"]),
    ("sep1", &["d31"]),
    ("sep2", &["d23"]),
    ("sep2", &["d12"]),
    ("sep3", &["d31"]),
    ("sep3", &["d23"]),
    // mod-3 completion of the per-cover images
    ("sep1", &["d31_inv", "ta3", "d12_inv"]),
    ("sep1", &["d12", "d23"]),
    ("sep1", &["d31", "d23"]),
    ("sep1", &["d12", "d31"]),
    ("sep1", &["d12", "d31_inv", "tb2_inv"]),
    ("sep1", &["d12", "ta1"]),
    ("sep1", &["d12", "tb2"]),
    // deeper conjugates for walk mixing
    ("sep1", &["tb1", "tb3", "tb3", "d12"]),
    ("sep12", &["d31", "d31", "tb1", "ta3"]),
    ("sep1", &["tb2", "tb2", "d12", "d23"]),
    ("sep12", &["d31", "d23", "ta1", "d12"]),
    ("sep1", &["d12", "d23", "d23", "tb2"]),
    ("sep12", &["ta1", "ta2", "d23", "tb2"]),
    ("sep1", &["tb2", "d12", "tb3", "tb2"]),
    ("sep12", &["tb2", "d12", "tb1", "d23"]),
    ("sep1", &["ta3", "d23", "ta3", "tb2"]),
    ("sep2", &["ta3", "d31", "d12", "tb1_inv", "ta2"]),
    ("sep3", &["tb3_inv", "d12_inv", "d31_inv", "tb1", "tb3", "d12_inv"]),
    ("sep12", &["d31_inv", "tb2_inv", "d12", "tb3_inv"]),
    ("sep23", &["ta1", "d23_inv", "d12", "ta1_inv", "d12"]),
    ("sep1", &["d23", "d31_inv", "tb1", "d12_inv", "d12_inv", "d31"]),
    ("sep2", &["tb3", "d31_inv", "ta3", "d12_inv"]),
    ("sep3", &["d31", "tb1_inv", "ta1", "ta3", "tb2"]),
    ("sep12", &["d12_inv", "tb3_inv", "d23", "d23_inv", "d23_inv", "tb3_inv"]),
    ("sep23", &["tb1", "ta2_inv", "tb1", "d12"]),
    ("sep1", &["tb2_inv", "d31_inv", "tb1", "tb1", "ta1"]),
    ("sep2", &["tb2_inv", "d31_inv", "d12_inv", "ta3_inv", "d31", "ta2_inv"]),
    ("sep3", &["d23", "d12_inv", "tb2", "ta3"]),
    ("sep12", &["d12", "d31", "d23_inv", "ta3_inv", "d31"]),
    ("sep23", &["tb3", "tb2", "ta3", "tb3_inv", "d31_inv", "tb1"]),
    ("sep1", &["d31_inv", "ta3_inv", "d31", "ta3_inv"]),
    ("sep2", &["tb2_inv", "ta2", "d23", "tb1_inv", "tb3_inv"]),
    ("sep3", &["ta1", "tb3", "d12", "tb3", "d12", "d23_inv"]),
    ("sep12", &["ta3_inv", "d31", "ta3", "d12_inv"]),
    ("sep23", &["ta1_inv", "d31_inv", "tb3", "tb2_inv", "d31"]),
];

const BP_VARIANTS: [(usize, ConjWord); 23] = [
    (0, &["d12"]),
    (1, &["d23"]),
    (2, &["d31"]),
    (0, &["d12", "d23"]),
    (1, &["d23", "d31"]),
    (2, &["d31", "d12"]),
    (0, &["d12", "d31"]),
    (1, &["d23", "d12"]),
    (2, &["d31", "d23"]),
    (0, &["d12", "ta1"]),
    (1, &["d23", "tb2"]),
    (2, &["d31", "ta3"]),
    (0, &["tb2", "ta3", "ta1", "ta2"]),
    (1, &["d12", "d31", "ta3", "d31"]),
    (0, &["ta2", "d31", "ta3", "d31"]),
    (1, &["tb3", "tb1", "ta2", "ta2"]),
    (0, &["ta1", "tb2", "d12", "d12"]),
    (1, &["ta3", "ta2", "tb3", "ta3"]),
    (0, &["d23", "tb3", "tb2", "d12"]),
    (1, &["ta3", "ta2", "d12", "d23"]),
    (0, &["ta3_inv", "tb3", "tb2_inv", "d31_inv", "d12", "ta3"]),
    (1, &["ta2_inv", "tb1_inv", "tb2_inv", "tb2_inv"]),
    (2, &["d12_inv", "d23", "tb3", "ta2", "tb3"]),
];

fn conjugator(aux: &HashMap<String, EndoMap>, word: ConjWord) -> (EndoMap, EndoMap) {
    let mut g = EndoMap::identity(RANK);
    for n in word {
        g = aux[*n].compose(&g).expect("rank");
    }
    let mut gi = EndoMap::identity(RANK);
    for n in word.iter().rev() {
        let inv = match n.strip_suffix("_inv") {
            Some(base) => base.to_string(),
            None => format!("{n}_inv"),
        };
        gi = aux[&inv].compose(&gi).expect("rank");
    }
    debug_assert!(crate::freegrp::validate_inverse_pair(&g, &gi));
    (g, gi)
}

fn zero_curve() -> Vec<BigInt> {
    vec![BigInt::from(0); RANK]
}

fn push_pair(
    cat: &mut GeneratorCatalog,
    name: &str,
    f: EndoMap,
    f_inv: EndoMap,
    curve: Option<Vec<BigInt>>,
) -> Result<()> {
    let inv_name = format!("{name}_inv");
    cat.push(CatalogEntry {
        name: name.to_string(),
        endo: f,
        inverse: Some(inv_name.clone()),
        curve,
    })?;
    cat.push(CatalogEntry { name: inv_name, endo: f_inv, inverse: Some(name.to_string()), curve: None })?;
    Ok(())
}

fn block_splitting(lo: usize, hi: usize) -> Splitting {
    let v1: Vec<u64> = (lo..=hi).flat_map(|i| [ai(i), bi(i)]).map(|s| 1u64 << (s - 1)).collect();
    let v2: Vec<u64> = (1..=GENUS)
        .filter(|i| *i < lo || *i > hi)
        .flat_map(|i| [ai(i), bi(i)])
        .map(|s| 1u64 << (s - 1))
        .collect();
    Splitting::new(GENUS, v1, v2).expect("handle block splitting")
}

fn mod2_columns(m: &crate::exactlin::IntMatrix) -> Vec<u64> {
    (0..m.cols())
        .map(|j| {
            let mut mask = 0u64;
            for (i, e) in m.column(j).iter().enumerate() {
                if !e.mod_floor(&BigInt::from(2)).is_zero() {
                    mask |= 1 << i;
                }
            }
            mask
        })
        .collect()
}

fn build(sep_only: bool) -> (GeneratorCatalog, Vec<(String, Splitting)>) {
    let aux = aux_map();
    let mut cat = GeneratorCatalog::new(GENUS);
    let mut splittings = Vec::new();

    let base_block: HashMap<&str, (usize, usize)> = SEP_BASES.iter().copied().collect();
    for (name, (lo, hi)) in SEP_BASES {
        push_pair(&mut cat, name, sep_twist(lo, hi, false), sep_twist(lo, hi, true), Some(zero_curve()))
            .expect("builtin");
        splittings.push((name.to_string(), block_splitting(lo, hi)));
    }
    let mut counters: HashMap<&str, usize> = HashMap::new();
    for (base, word) in SEP_VARIANTS {
        let k = counters.entry(base).or_insert(0);
        *k += 1;
        let name = format!("{base}v{k}");
        let (lo, hi) = base_block[base];
        let (g, gi) = conjugator(&aux, word);
        let f = g.compose(&sep_twist(lo, hi, false)).expect("rank").compose(&gi).expect("rank");
        let f_inv = g.compose(&sep_twist(lo, hi, true)).expect("rank").compose(&gi).expect("rank");
        push_pair(&mut cat, &name, f, f_inv, Some(zero_curve())).expect("builtin");
        let split = block_splitting(lo, hi).transform(&mod2_columns(&g.abelianized_matrix()));
        split.validate().expect("transformed splitting stays valid");
        splittings.push((name, split));
    }

    if !sep_only {
        let (bp1, bp1_inv) = bounding_pair(&aux);
        let rot = |g: &EndoMap| {
            aux["rho"].compose(g).expect("rank").compose(&aux["rho_inv"]).expect("rank")
        };
        let bp2 = rot(&bp1);
        let bp2_inv = rot(&bp1_inv);
        let bp3 = rot(&bp2);
        let bp3_inv = rot(&bp2_inv);
        let bps = [(bp1, bp1_inv), (bp2, bp2_inv), (bp3, bp3_inv)];
        for (i, (f, fi)) in bps.iter().enumerate() {
            push_pair(&mut cat, &format!("bp{}", i + 1), f.clone(), fi.clone(), None).expect("builtin");
        }
        let mut k = 0usize;
        for (b, word) in BP_VARIANTS {
            k += 1;
            let (g, gi) = conjugator(&aux, word);
            let f = g.compose(&bps[b].0).expect("rank").compose(&gi).expect("rank");
            let fi = g.compose(&bps[b].1).expect("rank").compose(&gi).expect("rank");
            push_pair(&mut cat, &format!("bp{}v{k}", b + 1), f, fi, None).expect("builtin");
        }
    }

    let report = validate_catalog(&cat).expect("builtin catalog must validate");
    assert!(report.all_torelli(), "builtin catalog must be Torelli");
    (cat, splittings)
}

fn cached_full() -> &'static (GeneratorCatalog, Vec<(String, Splitting)>) {
    static CACHE: std::sync::OnceLock<(GeneratorCatalog, Vec<(String, Splitting)>)> =
        std::sync::OnceLock::new();
    CACHE.get_or_init(|| build(false))
}

fn cached_sep() -> &'static (GeneratorCatalog, Vec<(String, Splitting)>) {
    static CACHE: std::sync::OnceLock<(GeneratorCatalog, Vec<(String, Splitting)>)> =
        std::sync::OnceLock::new();
    CACHE.get_or_init(|| build(true))
}

/// The default genus-3 Torelli catalog: separating twists about handle
/// boundaries and their twist-conjugated relatives, plus bounding-pair
/// maps, with all formal inverses. On every double cover the mod-3
/// reductions of the images generate the full symplectic group.
pub fn default_torelli_catalog() -> GeneratorCatalog {
    cached_full().0.clone()
}

/// Separating twists only (generators of the twist subgroup K).
pub fn default_sep_catalog() -> GeneratorCatalog {
    cached_sep().0.clone()
}

/// Splittings induced by each separating twist in the default catalog.
pub fn default_sep_splittings() -> Vec<(String, Splitting)> {
    cached_sep().1.clone()
}

/// The designated separating twist for lift-dichotomy checks.
pub fn default_separating_twist() -> (String, Splitting) {
    ("sep1".to_string(), Splitting::handles(GENUS, 1))
}

/// Auxiliary (non-Torelli) twists for relation tests: twists along the
/// a_i and b_i curves, the three connectors, the handle rotation.
pub fn default_aux_catalog() -> GeneratorCatalog {
    let aux = aux_map();
    let mut cat = GeneratorCatalog::new(GENUS);
    let curve = |slot: usize| {
        let mut c = zero_curve();
        c[slot - 1] = BigInt::from(1);
        Some(c)
    };
    for i in 1..=3usize {
        push_pair(&mut cat, &format!("ta{i}"), aux[&format!("ta{i}")].clone(), aux[&format!("ta{i}_inv")].clone(), curve(ai(i)))
            .expect("builtin");
        push_pair(&mut cat, &format!("tb{i}"), aux[&format!("tb{i}")].clone(), aux[&format!("tb{i}_inv")].clone(), curve(bi(i)))
            .expect("builtin");
    }
    for (k, name) in ["d12", "d23", "d31"].iter().enumerate() {
        let nxt = (k + 1) % 3;
        let mut c = zero_curve();
        c[ai(nxt + 1) - 1] = BigInt::from(1);
        c[bi(k + 1) - 1] = BigInt::from(-1);
        push_pair(&mut cat, name, aux[*name].clone(), aux[&format!("{name}_inv")].clone(), Some(c))
            .expect("builtin");
    }
    push_pair(&mut cat, "rho", aux["rho"].clone(), aux["rho_inv"].clone(), None).expect("builtin");
    validate_catalog(&cat).expect("builtin aux catalog must validate");
    cat
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{SurfacePresentation, TorelliLevel};

    #[test]
    fn torelli_catalog_validates() {
        let cat = default_torelli_catalog();
        assert_eq!(cat.entries().len(), 2 * (5 + 41 + 3 + 23));
        assert!(cat.is_symmetric());
        let report = validate_catalog(&cat).unwrap();
        assert!(report.all_torelli());
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn sep_catalog_is_sep_only_and_torelli() {
        let cat = default_sep_catalog();
        assert_eq!(cat.entries().len(), 2 * (5 + 41));
        assert!(cat.names().iter().all(|n| n.starts_with("sep")));
        let report = validate_catalog(&cat).unwrap();
        assert!(report.all_torelli());
    }

    #[test]
    fn aux_catalog_validates_with_curves() {
        let cat = default_aux_catalog();
        let report = validate_catalog(&cat).unwrap();
        for (name, level) in &report.levels {
            if name != "rho" && name != "rho_inv" {
                assert_eq!(*level, TorelliLevel::None, "{name}");
            }
        }
    }

    #[test]
    fn bp_fixes_its_curve() {
        let cat = default_torelli_catalog();
        let bp = &cat.get("bp1").unwrap().endo;
        let a2 = Word::generator(ai(2));
        let img = bp.apply(&a2).unwrap().cyclic_reduce();
        assert_eq!(img, a2, "bp1 must fix the a2 curve up to conjugacy");
        assert!(crate::surface::inner_conjugator(GENUS, bp).is_none());
    }

    #[test]
    fn sep_splittings_cover_every_cover() {
        let splits = default_sep_splittings();
        for p in crate::surface::enumerate_covers(GENUS) {
            let hit = splits
                .iter()
                .any(|(_, s)| !crate::surface::separating_lifts_predicate(&p, s).unwrap());
            assert!(hit, "cover {} has no nonseparating-lift witness", p.alpha_string());
        }
    }

    #[test]
    fn catalog_file_round_trip() {
        let cat = default_torelli_catalog();
        let text = cat.serialize();
        let parsed = GeneratorCatalog::parse(&text).unwrap();
        assert_eq!(parsed.serialize(), text);
    }

    #[test]
    fn surface_relator_preserved_by_all_entries() {
        let s = SurfacePresentation::new(GENUS);
        let r = s.relator();
        let cat = default_torelli_catalog();
        for e in cat.entries() {
            let img = e.endo.apply(&r).unwrap().cyclic_reduce();
            assert!(img.is_cyclic_rotation_of(&r), "{}", e.name);
        }
    }
}
