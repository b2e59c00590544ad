//! Word problem for the standard genus-g surface presentation (g >= 2).
//!
//! The presentation satisfies the classical small-cancellation condition,
//! so greedy shortening works: any freely reduced word equal to 1 contains
//! more than half of some cyclic rotation of the relator or its inverse,
//! and replacing that run by the inverse of the complement shortens it.

use super::SurfacePresentation;
use crate::freegrp::{EndoMap, Word};

fn rotations_of(letters: &[i32]) -> Vec<Vec<i32>> {
    let n = letters.len();
    (0..n)
        .map(|s| (0..n).map(|i| letters[(s + i) % n]).collect())
        .collect()
}

struct DehnTable {
    genus: usize,
    // all rotations of r and r^-1
    rotations: Vec<Vec<i32>>,
}

impl DehnTable {
    fn new(genus: usize) -> Self {
        let r = SurfacePresentation::new(genus).relator();
        let mut rotations = rotations_of(r.letters());
        rotations.extend(rotations_of(r.inverse().letters()));
        DehnTable { genus, rotations }
    }

    /// One shortening pass: find a run of length > half the relator that
    /// matches the head of some rotation and substitute the complement.
    fn shorten_once(&self, w: &Word) -> Option<Word> {
        let relator_len = 4 * self.genus;
        let need = 2 * self.genus + 1;
        let letters = w.letters();
        if letters.len() < need {
            return None;
        }
        for start in 0..=letters.len() - need {
            for rot in &self.rotations {
                let mut m = 0;
                while m < relator_len && start + m < letters.len() && letters[start + m] == rot[m] {
                    m += 1;
                }
                if m >= need {
                    // rot[0..m] = (rot[m..])^-1 in the group
                    let mut new_letters: Vec<i32> = Vec::with_capacity(letters.len());
                    new_letters.extend_from_slice(&letters[..start]);
                    new_letters.extend(rot[m..].iter().rev().map(|&l| -l));
                    new_letters.extend_from_slice(&letters[start + m..]);
                    return Some(Word::new(new_letters));
                }
            }
        }
        None
    }

    fn reduce(&self, w: &Word) -> Word {
        let mut cur = w.clone();
        while let Some(next) = self.shorten_once(&cur) {
            cur = next;
        }
        cur
    }
}

/// Fully Dehn-reduced representative (freely reduced, no long relator run).
pub fn dehn_reduce(genus: usize, w: &Word) -> Word {
    DehnTable::new(genus).reduce(w)
}

/// Decides w = 1 in the surface group.
pub fn is_trivial_in_surface_group(genus: usize, w: &Word) -> bool {
    dehn_reduce(genus, w).is_empty()
}

/// Decides u = v in the surface group.
pub fn equal_in_surface_group(genus: usize, u: &Word, v: &Word) -> bool {
    is_trivial_in_surface_group(genus, &u.concat(&v.inverse()))
}

/// Searches for a conjugator w with K = (x -> w x w^-1) as an automorphism
/// of the surface group. Returns the witness, or None when K is visibly
/// not inner. The candidate comes from cyclically reducing the image of
/// the first generator; powers of that generator absorb the peel ambiguity.
pub fn inner_conjugator(genus: usize, k: &EndoMap) -> Option<Word> {
    let rank = 2 * genus;
    assert_eq!(k.rank(), rank);
    if k.is_identity() {
        return Some(Word::empty());
    }
    let table = DehnTable::new(genus);
    let y1 = table.reduce(k.image_of(1));
    // peel y1 = c z c^-1 with z cyclically reduced
    let letters = y1.letters();
    let mut lo = 0usize;
    let mut hi = letters.len();
    while hi > lo + 1 && letters[lo] == -letters[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    let core = Word::new(letters[lo..hi].to_vec());
    if core.letters() != [1] {
        return None;
    }
    let c = Word::new(letters[..lo].to_vec());
    let x1 = Word::generator(1);
    let radius = 2 + k.max_image_len() as i64;
    for m in -radius..=radius {
        let cand = c.concat(&x1.pow(m));
        let ok = (1..=rank).all(|j| {
            let target = Word::generator(j).conjugate_by(&cand);
            equal_in_surface_group(genus, k.image_of(j), &target)
        });
        if ok {
            return Some(cand);
        }
    }
    None
}

/// f and g agree up to an inner automorphism of the surface group.
pub fn equal_up_to_inner(genus: usize, f: &EndoMap, g: &EndoMap, g_inverse: &EndoMap) -> bool {
    let k = f.compose(g_inverse).expect("equal ranks");
    debug_assert!(g.compose(g_inverse).expect("equal ranks").is_identity());
    inner_conjugator(genus, &k).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text, 3).unwrap()
    }

    #[test]
    fn relator_is_trivial() {
        let r = SurfacePresentation::new(3).relator();
        assert!(is_trivial_in_surface_group(3, &r));
        assert!(is_trivial_in_surface_group(3, &r.inverse()));
        assert!(is_trivial_in_surface_group(3, &r.conjugate_by(&w("a2 B3"))));
        let rr = r.concat(&r.conjugate_by(&w("b1")));
        assert!(is_trivial_in_surface_group(3, &rr));
    }

    #[test]
    fn generators_are_not_trivial() {
        assert!(!is_trivial_in_surface_group(3, &w("a1")));
        assert!(!is_trivial_in_surface_group(3, &w("a1 b1 A1 B1")));
        assert!(!equal_in_surface_group(3, &w("a1"), &w("b1")));
    }

    #[test]
    fn relator_padding_equality() {
        let r = SurfacePresentation::new(3).relator();
        let u = w("a1 b2").concat(&r).concat(&w("A3"));
        let v = w("a1 b2 A3");
        assert!(equal_in_surface_group(3, &u, &v));
    }

    #[test]
    fn finds_inner_conjugator() {
        let h = w("a1 b2 A1");
        let k = EndoMap::inner(6, &h);
        let c = inner_conjugator(3, &k).unwrap();
        for j in 1..=6 {
            assert!(equal_in_surface_group(
                3,
                &Word::generator(j).conjugate_by(&c),
                &Word::generator(j).conjugate_by(&h)
            ));
        }
    }

    #[test]
    fn rejects_non_inner() {
        // twist along a1 is not inner
        let mut images: Vec<Word> = (1..=6).map(Word::generator).collect();
        images[1] = w("b1 a1");
        let f = EndoMap::new(images);
        assert!(inner_conjugator(3, &f).is_none());
    }

    #[test]
    fn inner_with_relator_noise() {
        // conjugation data hidden behind a relator insertion
        let r = SurfacePresentation::new(3).relator();
        let h = w("b3 a1");
        let mut images = Vec::new();
        for j in 1..=6 {
            let img = Word::generator(j).conjugate_by(&h);
            // splice a conjugated relator into the middle
            let noisy = img.concat(&r.conjugate_by(&w("a2")));
            images.push(noisy);
        }
        let k = EndoMap::new(images);
        assert!(inner_conjugator(3, &k).is_some());
    }
}
