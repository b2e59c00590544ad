use num_bigint::BigInt;

use super::word::Word;
use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;

/// Endomorphism of the rank-2g free group, given by generator images.
/// Whether it is an automorphism is checked elsewhere, not assumed.
#[derive(Clone, PartialEq, Eq)]
pub struct EndoMap {
    rank: usize,
    images: Vec<Word>,
}

impl EndoMap {
    pub fn new(images: Vec<Word>) -> Self {
        EndoMap { rank: images.len(), images }
    }

    pub fn identity(rank: usize) -> Self {
        EndoMap { rank, images: (1..=rank).map(Word::generator).collect() }
    }

    /// Inner automorphism x -> w x w^-1.
    pub fn inner(rank: usize, w: &Word) -> Self {
        EndoMap {
            rank,
            images: (1..=rank).map(|k| Word::generator(k).conjugate_by(w)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image_of(&self, k: usize) -> &Word {
        &self.images[k - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.letters() == [(i + 1) as i32])
    }

    /// Applies the endomorphism to a word; the image comes back reduced.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out: Vec<i32> = Vec::with_capacity(w.len() * 4);
        for &l in w.letters() {
            let k = l.unsigned_abs() as usize;
            if k > self.rank {
                return Err(Error::RankMismatch { expected: self.rank, got: k });
            }
            let img = &self.images[k - 1];
            if l > 0 {
                for &m in img.letters() {
                    push_reduced(&mut out, m);
                }
            } else {
                for &m in img.letters().iter().rev() {
                    push_reduced(&mut out, -m);
                }
            }
        }
        Ok(Word::new(out))
    }

    /// Composition self . other (apply `other` first).
    pub fn compose(&self, other: &EndoMap) -> Result<EndoMap> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: other.rank });
        }
        let images = other
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(EndoMap { rank: self.rank, images })
    }

    /// Abelianized action: column j is the exponent vector of the image of
    /// generator j+1.
    pub fn abelianized_matrix(&self) -> IntMatrix {
        let n = self.rank;
        let cols: Vec<Vec<BigInt>> = self.images.iter().map(|w| w.abelianization(n)).collect();
        IntMatrix::from_columns(n, cols)
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(|w| w.len()).max().unwrap_or(0)
    }
}

fn push_reduced(out: &mut Vec<i32>, l: i32) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// True iff f . g and g . f both fix every generator.
pub fn validate_inverse_pair(f: &EndoMap, g: &EndoMap) -> bool {
    if f.rank() != g.rank() {
        return false;
    }
    match (f.compose(g), g.compose(f)) {
        (Ok(a), Ok(b)) => a.is_identity() && b.is_identity(),
        _ => false,
    }
}

impl std::fmt::Debug for EndoMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "EndoMap rank {} {{", self.rank)?;
        for (i, w) in self.images.iter().enumerate() {
            writeln!(f, "  {} -> {:?}", super::word::token_of((i + 1) as i32), w)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text, 3).unwrap()
    }

    /// b1 -> b1 a1, everything else fixed (twist along a1).
    fn twist_a1() -> EndoMap {
        let mut images: Vec<Word> = (1..=6).map(Word::generator).collect();
        images[1] = w("b1 a1");
        EndoMap::new(images)
    }

    fn twist_a1_inv() -> EndoMap {
        let mut images: Vec<Word> = (1..=6).map(Word::generator).collect();
        images[1] = w("b1 A1");
        EndoMap::new(images)
    }

    #[test]
    fn identity_application() {
        let id = EndoMap::identity(6);
        let word = w("a1 B2 a3");
        assert_eq!(id.apply(&word).unwrap(), word);
    }

    #[test]
    fn substitution_reduces() {
        // f: a1 -> a1 b1 applied to a1 B1 gives a1
        let mut images: Vec<Word> = (1..=6).map(Word::generator).collect();
        images[0] = w("a1 b1");
        let f = EndoMap::new(images);
        assert_eq!(f.apply(&w("a1 B1")).unwrap(), w("a1"));
    }

    #[test]
    fn homomorphism_law() {
        let f = twist_a1();
        let u = w("a1 b1 A2");
        let v = w("b2 a3 B1");
        let uv = u.concat(&v);
        assert_eq!(
            f.apply(&uv).unwrap(),
            f.apply(&u).unwrap().concat(&f.apply(&v).unwrap())
        );
    }

    #[test]
    fn composition_law() {
        let f = twist_a1();
        let g = EndoMap::inner(6, &w("a2 b1"));
        let fg = f.compose(&g).unwrap();
        let word = w("a1 b1 a2 b2");
        assert_eq!(
            fg.apply(&word).unwrap(),
            f.apply(&g.apply(&word).unwrap()).unwrap()
        );
    }

    #[test]
    fn inverse_pair() {
        assert!(validate_inverse_pair(&EndoMap::identity(6), &EndoMap::identity(6)));
        assert!(validate_inverse_pair(&twist_a1(), &twist_a1_inv()));
        assert!(!validate_inverse_pair(&twist_a1(), &twist_a1()));
    }

    #[test]
    fn rank_mismatch_rejected() {
        let f = EndoMap::identity(4);
        assert!(f.apply(&w("a3")).is_err());
    }

    #[test]
    fn abelianized_action() {
        let f = twist_a1();
        let m = f.abelianized_matrix();
        // column of b1 is a1 + b1
        assert_eq!(m[(0, 1)], BigInt::from(1));
        assert_eq!(m[(1, 1)], BigInt::from(1));
        // consistency on a random word
        let word = w("a1 b1 b1 A2 b3");
        let lhs = f.apply(&word).unwrap().abelianization(6);
        let rhs = m.mul_vec(&word.abelianization(6));
        assert_eq!(lhs, rhs);
    }
}
