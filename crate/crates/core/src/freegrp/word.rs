use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Freely reduced word over the surface-group alphabet. Letters are
/// nonzero i32: +k is generator k (1-based), -k its inverse. For genus g
/// the alphabet is a_1 b_1 ... a_g b_g with a_i = 2i-1 and b_i = 2i.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: vec![] }
    }

    /// Builds a word, freely reducing adjacent inverse pairs.
    pub fn new(letters: Vec<i32>) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for l in letters {
            assert!(l != 0, "letters are nonzero signed generator indices");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn generator(k: usize) -> Self {
        Word { letters: vec![k as i32] }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.letters);
        v.extend_from_slice(&other.letters);
        Word::new(v)
    }

    pub fn conjugate_by(&self, w: &Word) -> Word {
        w.concat(self).concat(&w.inverse())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Cyclically reduced form: also strips matching first/last letters.
    pub fn cyclic_reduce(&self) -> Word {
        let mut v = self.letters.clone();
        let mut start = 0usize;
        let mut end = v.len();
        while end > start + 1 && v[start] == -v[end - 1] {
            start += 1;
            end -= 1;
        }
        v.truncate(end);
        v.drain(..start);
        Word { letters: v }
    }

    /// True when `self` and `other` agree up to cyclic rotation, letterwise.
    pub fn is_cyclic_rotation_of(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        let n = self.len();
        (0..n).any(|s| (0..n).all(|i| self.letters[(s + i) % n] == other.letters[i]))
    }

    /// Exponent-sum vector of length `rank`; additive under concatenation.
    pub fn abelianization(&self, rank: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); rank];
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize;
            assert!(k >= 1 && k <= rank, "letter {l} outside rank-{rank} alphabet");
            if l > 0 {
                v[k - 1] += 1;
            } else {
                v[k - 1] -= 1;
            }
        }
        v
    }

    /// Exponent-sum vector mod 2, as a bitmask over generators.
    pub fn abelianization_mod2(&self, rank: usize) -> u64 {
        assert!(rank <= 64);
        let mut m = 0u64;
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize;
            assert!(k >= 1 && k <= rank, "letter {l} outside rank-{rank} alphabet");
            m ^= 1 << (k - 1);
        }
        m
    }

    /// Parses whitespace-separated tokens like `a1 B2 a3`. Uppercase means
    /// inverse. Indices are 1-based and must stay within the genus.
    pub fn parse(text: &str, genus: usize) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            letters.push(parse_token(tok, genus)?);
        }
        Ok(Word::new(letters))
    }

    /// Canonical token string; inverse of `parse` on reduced words.
    pub fn display(&self) -> String {
        self.letters.iter().map(|&l| token_of(l)).collect::<Vec<_>>().join(" ")
    }
}

pub fn parse_token(tok: &str, genus: usize) -> Result<i32> {
    let bad = || Error::Catalog(format!("bad word token `{tok}`"));
    let mut chars = tok.chars();
    let c = chars.next().ok_or_else(bad)?;
    let idx: usize = chars.as_str().parse().map_err(|_| bad())?;
    if idx < 1 || idx > genus {
        return Err(Error::Catalog(format!(
            "token `{tok}` index out of range for genus {genus}"
        )));
    }
    let base = match c.to_ascii_lowercase() {
        'a' => 2 * idx - 1,
        'b' => 2 * idx,
        _ => return Err(bad()),
    };
    Ok(if c.is_ascii_uppercase() { -(base as i32) } else { base as i32 })
}

pub fn token_of(l: i32) -> String {
    let k = l.unsigned_abs() as usize;
    let idx = k.div_ceil(2);
    let c = if k % 2 == 1 { 'a' } else { 'b' };
    let c = if l < 0 { c.to_ascii_uppercase() } else { c };
    format!("{c}{idx}")
}

impl std::fmt::Debug for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.display())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text, 3).unwrap()
    }

    #[test]
    fn free_reduction() {
        assert_eq!(w("a1 A1 b1"), w("b1"));
        assert_eq!(w("a1 b1 B1 A1"), Word::empty());
        assert_eq!(Word::parse("", 3).unwrap(), Word::empty());
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(w("a1 b1 A1").cyclic_reduce(), w("b1"));
        assert_eq!(w("a1 b1 A1 B1").cyclic_reduce(), w("a1 b1 A1 B1"));
        assert_eq!(Word::empty().cyclic_reduce(), Word::empty());
    }

    #[test]
    fn reduction_idempotent_and_shorter() {
        let raw = vec![1, 2, -2, -1, 3, -3, 5, 6];
        let r = Word::new(raw.clone());
        assert!(r.len() <= raw.len());
        assert_eq!(Word::new(r.letters().to_vec()), r);
    }

    #[test]
    fn rotations() {
        let r = w("a1 b1 A1 B1");
        assert!(w("b1 A1 B1 a1").is_cyclic_rotation_of(&r));
        assert!(!w("b1 A1 B1 A1").is_cyclic_rotation_of(&r));
        assert!(!w("a1 b1").is_cyclic_rotation_of(&r));
    }

    #[test]
    fn abelianization_examples() {
        let comm = w("a1 b1 A1 B1");
        assert!(comm.abelianization(6).iter().all(|x| x.is_zero()));
        let sq = w("a1 a1");
        let v = sq.abelianization(6);
        assert_eq!(v[0], BigInt::from(2));
        assert!(v[1..].iter().all(|x| x.is_zero()));
        assert_eq!(comm.abelianization_mod2(6), 0);
        assert_eq!(w("a1 b2").abelianization_mod2(6), 0b1001);
    }

    #[test]
    fn tokens_round_trip() {
        let word = w("a1 B2 A3 b1");
        assert_eq!(Word::parse(&word.display(), 3).unwrap(), word);
        assert!(Word::parse("c1", 3).is_err());
        assert!(Word::parse("a4", 3).is_err());
        assert!(Word::parse("a0", 3).is_err());
    }
}
