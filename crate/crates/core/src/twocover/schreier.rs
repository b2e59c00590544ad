use crate::error::{Error, Result};
use crate::freegrp::Word;
use crate::surface::CoverSpec;

/// Reidemeister-Schreier data for an index-2 subgroup of a free group,
/// given by a sigma value per generator. The transversal is {1, t} for a
/// chosen letter t with sigma(t) = 1; the subgroup generators are
/// u s rep(us)^-1 over cosets u and letters s, minus the trivial one.
#[derive(Clone, Debug)]
pub struct SchreierRewriter {
    rank: usize,
    sigma: Vec<u8>,
    transversal: usize,
    /// generator index per (coset, letter), 1-based; None = trivial pair
    table: Vec<Vec<Option<usize>>>,
    /// base-group words of the subgroup generators, 1-based via index-1
    generators: Vec<Word>,
}

impl SchreierRewriter {
    pub fn new(rank: usize, sigma: Vec<u8>, transversal: usize) -> Self {
        assert_eq!(sigma.len(), rank);
        assert!(transversal >= 1 && transversal <= rank);
        assert_eq!(sigma[transversal - 1], 1, "transversal letter needs sigma = 1");
        let t = transversal;
        let tw = Word::generator(t);
        let mut table = vec![vec![None; rank]; 2];
        let mut generators = Vec::new();
        for coset in 0..2usize {
            for s in 1..=rank {
                if coset == 0 && s == t {
                    continue; // 1 * t * t^-1 is trivial
                }
                let u = if coset == 0 { Word::empty() } else { tw.clone() };
                let us_sigma = (coset as u8 + sigma[s - 1]) % 2;
                let rep = if us_sigma == 0 { Word::empty() } else { tw.clone() };
                let gen = u.concat(&Word::generator(s)).concat(&rep.inverse());
                generators.push(gen);
                table[coset][s - 1] = Some(generators.len());
            }
        }
        SchreierRewriter { rank, sigma, transversal, table, generators }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn transversal_letter(&self) -> usize {
        self.transversal
    }

    /// Number of subgroup generators: 2*rank - 1.
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_words(&self) -> &[Word] {
        &self.generators
    }

    pub fn sigma_letter(&self, s: usize) -> u8 {
        self.sigma[s - 1]
    }

    pub fn sigma_word(&self, w: &Word) -> u8 {
        let mut acc = 0u8;
        for &l in w.letters() {
            acc ^= self.sigma[(l.unsigned_abs() - 1) as usize];
        }
        acc
    }

    /// Rewrites a sigma-even word of the base group as a word over the
    /// Schreier generators (letters index into `generator_words`).
    pub fn rewrite(&self, w: &Word) -> Result<Word> {
        if self.sigma_word(w) != 0 {
            return Err(Error::OddWord);
        }
        let mut out: Vec<i32> = Vec::with_capacity(w.len());
        let mut coset = 0usize;
        for &l in w.letters() {
            let s = l.unsigned_abs() as usize;
            let sig = self.sigma[s - 1] as usize;
            if l > 0 {
                if let Some(idx) = self.table[coset][s - 1] {
                    push_reduced(&mut out, idx as i32);
                }
                coset ^= sig;
            } else {
                coset ^= sig;
                if let Some(idx) = self.table[coset][s - 1] {
                    push_reduced(&mut out, -(idx as i32));
                }
            }
        }
        debug_assert_eq!(coset, 0);
        Ok(Word::new(out))
    }
}

fn push_reduced(out: &mut Vec<i32>, l: i32) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// Schreier data for a surface double cover: sigma comes from pairing
/// with alpha, the transversal is the first sigma-odd alphabet letter.
pub fn schreier_data(p: &CoverSpec) -> SchreierRewriter {
    let rank = 2 * p.genus();
    let sigma: Vec<u8> = (1..=rank).map(|k| p.sigma_generator(k)).collect();
    let t = (1..=rank)
        .find(|&k| sigma[k - 1] == 1)
        .expect("a nonzero functional is odd on some generator");
    SchreierRewriter::new(rank, sigma, t)
}

/// Same cover, different transversal letter; used by metamorphic tests.
pub fn schreier_data_with_transversal(p: &CoverSpec, t: usize) -> SchreierRewriter {
    let rank = 2 * p.genus();
    let sigma: Vec<u8> = (1..=rank).map(|k| p.sigma_generator(k)).collect();
    SchreierRewriter::new(rank, sigma, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Rank-2 toy F(x, y) with sigma(x) = 1, sigma(y) = 0.
    fn toy() -> SchreierRewriter {
        SchreierRewriter::new(2, vec![1, 0], 1)
    }

    #[test]
    fn toy_generators() {
        let sd = toy();
        assert_eq!(sd.generator_count(), 3);
        let words: Vec<String> = sd.generator_words().iter().map(|w| format!("{w:?}")).collect();
        // y, x^2, x y x^-1 as a set
        assert!(words.contains(&"b1".to_string()));
        assert!(words.contains(&"a1 a1".to_string()));
        assert!(words.contains(&"a1 b1 A1".to_string()));
        for g in sd.generator_words() {
            assert_eq!(sd.sigma_word(g), 0);
        }
    }

    #[test]
    fn toy_rewrites() {
        let sd = toy();
        let gens = sd.generator_words();
        // find indices of y and x y x^-1
        let idx = |text: &str| {
            gens.iter().position(|g| format!("{g:?}") == text).unwrap() as i32 + 1
        };
        let g_y = idx("b1");
        let g_xyx = idx("a1 b1 A1");
        let g_xx = idx("a1 a1");

        let w = Word::parse("a1 b1 A1 b1", 1).unwrap(); // x y x^-1 y
        let rw = sd.rewrite(&w).unwrap();
        assert_eq!(rw.letters(), &[g_xyx, g_y]);

        let w = Word::parse("a1 a1", 1).unwrap();
        assert_eq!(sd.rewrite(&w).unwrap().letters(), &[g_xx]);

        let w = Word::parse("a1", 1).unwrap();
        assert!(matches!(sd.rewrite(&w), Err(Error::OddWord)));
    }

    #[test]
    fn genus3_counts() {
        for p in crate::surface::enumerate_covers(3) {
            let sd = schreier_data(&p);
            assert_eq!(sd.generator_count(), 11);
            for g in sd.generator_words() {
                assert_eq!(p.sigma_word(g), 0);
            }
        }
    }

    #[test]
    fn rewrite_round_trips_membership() {
        // rewriting then substituting the generator words reproduces the
        // original element of the subgroup
        let p = CoverSpec::new(3, 0b010011);
        let sd = schreier_data(&p);
        let w = Word::parse("a1 b2 A1 b2 a3 a3 B2 B2", 3).unwrap();
        assert_eq!(sd.sigma_word(&w), 0);
        let rw = sd.rewrite(&w).unwrap();
        let mut back = Word::empty();
        for &l in rw.letters() {
            let g = &sd.generator_words()[(l.unsigned_abs() - 1) as usize];
            back = back.concat(&if l > 0 { g.clone() } else { g.inverse() });
        }
        assert_eq!(back, w);
    }
}
