use crate::error::{Error, Result};
use crate::freegrp::Word;

/// One of the 2^(2g) - 1 connected double covers, encoded by the nonzero
/// mod-2 class alpha with sigma = <alpha, .> mod 2.
///
/// Bits of `alpha` follow the coordinate order a_1 b_1 ... a_g b_g
/// (bit 0 = a_1). The enumeration reads alpha as a big-endian counter,
/// so cover t has bit i equal to bit (2g-1-i) of t.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoverSpec {
    genus: usize,
    alpha: u64,
}

impl CoverSpec {
    pub fn new(genus: usize, alpha: u64) -> Self {
        assert!(genus >= 2 && 2 * genus <= 63);
        assert!(alpha != 0, "alpha must be a nonzero mod-2 class");
        assert!(alpha < (1u64 << (2 * genus)));
        CoverSpec { genus, alpha }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn alpha_mask(&self) -> u64 {
        self.alpha
    }

    /// J * alpha mod 2: swap the (a_i, b_i) bit pair in each handle.
    /// sigma(v) = parity(popcount(j_alpha & v)).
    pub fn j_alpha_mask(&self) -> u64 {
        let mut out = 0u64;
        for i in 0..self.genus {
            let a = (self.alpha >> (2 * i)) & 1;
            let b = (self.alpha >> (2 * i + 1)) & 1;
            out |= b << (2 * i);
            out |= a << (2 * i + 1);
        }
        out
    }

    /// sigma of a single generator (1-based index).
    pub fn sigma_generator(&self, k: usize) -> u8 {
        debug_assert!(k >= 1 && k <= 2 * self.genus);
        ((self.j_alpha_mask() >> (k - 1)) & 1) as u8
    }

    /// sigma of a mod-2 homology class given as a bitmask.
    pub fn sigma_class(&self, v: u64) -> u8 {
        ((self.j_alpha_mask() & v).count_ones() % 2) as u8
    }

    /// sigma of a word: <alpha, abelianization mod 2>.
    pub fn sigma_word(&self, w: &Word) -> u8 {
        self.sigma_class(w.abelianization_mod2(2 * self.genus))
    }

    /// Bit-string form, coordinate a_1 first: e.g. "001011" at genus 3.
    pub fn alpha_string(&self) -> String {
        (0..2 * self.genus)
            .map(|i| if (self.alpha >> i) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn parse_alpha(genus: usize, s: &str) -> Result<CoverSpec> {
        if s.len() != 2 * genus || !s.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::Config(format!(
                "cover string `{s}` must be {} bits of 0/1",
                2 * genus
            )));
        }
        let mut alpha = 0u64;
        for (i, c) in s.chars().enumerate() {
            if c == '1' {
                alpha |= 1 << i;
            }
        }
        if alpha == 0 {
            return Err(Error::Config("cover string must be nonzero".into()));
        }
        Ok(CoverSpec::new(genus, alpha))
    }
}

impl std::fmt::Debug for CoverSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CoverSpec({})", self.alpha_string())
    }
}

/// All 2^(2g) - 1 double covers in deterministic big-endian counter order.
pub fn enumerate_covers(genus: usize) -> Vec<CoverSpec> {
    assert!(genus >= 2);
    let n = 2 * genus;
    (1u64..(1 << n))
        .map(|t| {
            let mut alpha = 0u64;
            for i in 0..n {
                if (t >> (n - 1 - i)) & 1 == 1 {
                    alpha |= 1 << i;
                }
            }
            CoverSpec::new(genus, alpha)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        assert_eq!(enumerate_covers(3).len(), 63);
        assert_eq!(enumerate_covers(2).len(), 15);
    }

    #[test]
    fn alphas_distinct_and_nonzero() {
        let covers = enumerate_covers(3);
        let set: HashSet<u64> = covers.iter().map(|c| c.alpha_mask()).collect();
        assert_eq!(set.len(), 63);
        assert!(!set.contains(&0));
    }

    #[test]
    fn sigma_standard_example() {
        // alpha = class of a1; sigma(b1) = <a1, b1> = 1
        let p = CoverSpec::new(3, 0b000001);
        assert_eq!(p.sigma_generator(2), 1); // b1
        assert_eq!(p.sigma_generator(1), 0); // a1
        assert_eq!(p.sigma_generator(3), 0); // a2
    }

    #[test]
    fn sigma_kills_relator_and_is_additive() {
        let r = crate::surface::SurfacePresentation::new(3).relator();
        for p in enumerate_covers(3) {
            assert_eq!(p.sigma_word(&r), 0);
        }
        let p = CoverSpec::new(3, 0b010110);
        let u = Word::parse("a1 B2 a3 a3", 3).unwrap();
        let v = Word::parse("b3 A1 b1", 3).unwrap();
        assert_eq!(
            p.sigma_word(&u.concat(&v)),
            (p.sigma_word(&u) + p.sigma_word(&v)) % 2
        );
    }

    #[test]
    fn alpha_string_round_trip() {
        for p in enumerate_covers(2) {
            let s = p.alpha_string();
            assert_eq!(CoverSpec::parse_alpha(2, &s).unwrap(), p);
        }
        // big-endian counter: t = 1 sets the last coordinate (b_g)
        let first = enumerate_covers(3)[0];
        assert_eq!(first.alpha_string(), "000001");
    }
}
