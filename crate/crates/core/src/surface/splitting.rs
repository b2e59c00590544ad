use super::covers::{enumerate_covers, CoverSpec};
use crate::error::{Error, Result};

/// A separating-curve splitting of mod-2 homology: two subspaces with
/// V1 + V2 = (Z/2)^2g, orthogonal under the mod-2 intersection form.
/// Basis vectors are bitmasks in the a_1 b_1 ... coordinate order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub genus: usize,
    pub v1: Vec<u64>,
    pub v2: Vec<u64>,
}

fn pair_swap(v: u64, genus: usize) -> u64 {
    let mut out = 0u64;
    for i in 0..genus {
        let a = (v >> (2 * i)) & 1;
        let b = (v >> (2 * i + 1)) & 1;
        out |= b << (2 * i);
        out |= a << (2 * i + 1);
    }
    out
}

/// Mod-2 intersection pairing of two classes.
pub fn pairing_mod2(u: u64, v: u64, genus: usize) -> u8 {
    ((pair_swap(u, genus) & v).count_ones() % 2) as u8
}

fn rank_mod2(vectors: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new(); // one vector per leading bit
    for &v in vectors {
        let mut x = v;
        while x != 0 {
            let lead = 63 - x.leading_zeros();
            match basis.iter().find(|&&b| 63 - b.leading_zeros() == lead) {
                Some(&b) => x ^= b,
                None => {
                    basis.push(x);
                    break;
                }
            }
        }
    }
    basis.len()
}

impl Splitting {
    pub fn new(genus: usize, v1: Vec<u64>, v2: Vec<u64>) -> Result<Splitting> {
        let s = Splitting { genus, v1, v2 };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let n = 2 * self.genus;
        let all: Vec<u64> = self.v1.iter().chain(&self.v2).copied().collect();
        if all.iter().any(|&v| v >= (1u64 << n)) {
            return Err(Error::InvalidSplitting("vector outside the coordinate range".into()));
        }
        if self.v1.len() + self.v2.len() != n
            || rank_mod2(&self.v1) != self.v1.len()
            || rank_mod2(&self.v2) != self.v2.len()
            || rank_mod2(&all) != n
        {
            return Err(Error::InvalidSplitting(
                "V1 and V2 must be independent and span (Z/2)^2g".into(),
            ));
        }
        for &u in &self.v1 {
            for &v in &self.v2 {
                if pairing_mod2(u, v, self.genus) != 0 {
                    return Err(Error::InvalidSplitting(
                        "V1 and V2 must be orthogonal under the mod-2 form".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The standard handle splitting: V1 spanned by the first `h` handles.
    pub fn handles(genus: usize, h: usize) -> Splitting {
        assert!(h >= 1 && h < genus);
        let v1 = (0..2 * h).map(|i| 1u64 << i).collect();
        let v2 = (2 * h..2 * genus).map(|i| 1u64 << i).collect();
        Splitting::new(genus, v1, v2).expect("handle splitting is valid")
    }

    /// JSON form: two lists of mod-2 basis vectors, each a 0/1 array in
    /// the a_1 b_1 ... coordinate order.
    pub fn to_json(&self) -> serde_json::Value {
        let side = |v: &[u64]| -> serde_json::Value {
            serde_json::Value::Array(
                v.iter()
                    .map(|&mask| {
                        serde_json::Value::Array(
                            (0..2 * self.genus)
                                .map(|i| serde_json::Value::from((mask >> i) & 1))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        };
        let mut m = serde_json::Map::new();
        m.insert("v1".into(), side(&self.v1));
        m.insert("v2".into(), side(&self.v2));
        serde_json::Value::Object(m)
    }

    pub fn from_json(genus: usize, v: &serde_json::Value) -> Result<Splitting> {
        let side = |key: &str| -> Result<Vec<u64>> {
            let arr = v
                .get(key)
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::InvalidSplitting(format!("missing `{key}` list")))?;
            arr.iter()
                .map(|row| {
                    let bits = row
                        .as_array()
                        .ok_or_else(|| Error::InvalidSplitting("vector must be a 0/1 array".into()))?;
                    if bits.len() != 2 * genus {
                        return Err(Error::InvalidSplitting(format!(
                            "vector must have {} bits",
                            2 * genus
                        )));
                    }
                    let mut mask = 0u64;
                    for (i, b) in bits.iter().enumerate() {
                        match b.as_u64() {
                            Some(0) => {}
                            Some(1) => mask |= 1 << i,
                            _ => {
                                return Err(Error::InvalidSplitting(
                                    "vector entries must be 0 or 1".into(),
                                ))
                            }
                        }
                    }
                    Ok(mask)
                })
                .collect()
        };
        Splitting::new(genus, side("v1")?, side("v2")?)
    }

    /// Image splitting under a mod-2 homology matrix given column masks.
    pub fn transform(&self, columns: &[u64]) -> Splitting {
        let map = |v: &u64| -> u64 {
            let mut out = 0u64;
            for (i, &col) in columns.iter().enumerate() {
                if (v >> i) & 1 == 1 {
                    out ^= col;
                }
            }
            out
        };
        Splitting {
            genus: self.genus,
            v1: self.v1.iter().map(map).collect(),
            v2: self.v2.iter().map(map).collect(),
        }
    }
}

/// Lemma-style lift test: the lifts of the separating curve inducing this
/// splitting are separating in the cover iff sigma vanishes on V1 or V2
/// (the kernel of sigma is the image of the cover's mod-2 homology).
pub fn separating_lifts_predicate(p: &CoverSpec, s: &Splitting) -> Result<bool> {
    s.validate()?;
    let dies_on = |side: &[u64]| side.iter().all(|&v| p.sigma_class(v) == 0);
    Ok(dies_on(&s.v1) || dies_on(&s.v2))
}

/// First cover in enumeration order whose lifts of the given separating
/// curve are nonseparating. Existence is a theorem, so absence panics.
pub fn witness_cover_for_splitting(s: &Splitting) -> Result<CoverSpec> {
    s.validate()?;
    for p in enumerate_covers(s.genus) {
        if !separating_lifts_predicate(&p, s)? {
            return Ok(p);
        }
    }
    panic!("every separating splitting admits a cover with nonseparating lifts");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn handle_splitting_valid() {
        let s = Splitting::handles(3, 1);
        assert_eq!(s.v1.len(), 2);
        assert_eq!(s.v2.len(), 4);
        assert!(s.validate().is_ok());
    }

    #[test]
    fn invalid_splittings_rejected() {
        // overlapping spans
        assert!(Splitting::new(2, vec![1, 2], vec![3, 8]).is_err());
        // non-orthogonal: a1 in V1, b1 in V2 pair to 1
        assert!(Splitting::new(2, vec![0b0001, 0b0100], vec![0b0010, 0b1000]).is_err());
        // wrong total dimension
        assert!(Splitting::new(2, vec![1], vec![4, 8]).is_err());
    }

    #[test]
    fn predicate_two_sides() {
        let s = Splitting::handles(3, 1);
        // alpha = a1: sigma kills handles 2,3 entirely -> lifts separate
        let p = CoverSpec::new(3, 0b000001);
        assert!(separating_lifts_predicate(&p, &s).unwrap());
        // alpha = a1 + a2: sigma is nonzero on both sides
        let p = CoverSpec::new(3, 0b000101);
        assert!(!separating_lifts_predicate(&p, &s).unwrap());
    }

    #[test]
    fn genus2_direct_example() {
        // standard genus-2 handle split, alpha = a1-coordinate vector:
        // sigma(b1) = 1 on V1 and sigma dies on V2, so lifts separate
        let s = Splitting::handles(2, 1);
        let p = CoverSpec::new(2, 0b0001);
        assert!(separating_lifts_predicate(&p, &s).unwrap());
    }

    #[test]
    fn witness_exists_for_every_splitting() {
        for h in 1..3 {
            let s = Splitting::handles(3, h);
            let w = witness_cover_for_splitting(&s).unwrap();
            assert!(!separating_lifts_predicate(&w, &s).unwrap());
        }
    }

    #[test]
    fn json_round_trip() {
        let s = Splitting::handles(3, 2);
        let v = s.to_json();
        assert_eq!(Splitting::from_json(3, &v).unwrap(), s);
        let text = r#"{"v1": [[1,0,0,0,0,0],[0,1,0,0,0,0]],
                       "v2": [[0,0,1,0,0,0],[0,0,0,1,0,0],[0,0,0,0,1,0],[0,0,0,0,0,1]]}"#;
        let parsed = Splitting::from_json(3, &serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(parsed, Splitting::handles(3, 1));
        // invalid: non-orthogonal sides
        let bad = r#"{"v1": [[1,0,0,0],[0,0,1,0]], "v2": [[0,1,0,0],[0,0,0,1]]}"#;
        assert!(Splitting::from_json(2, &serde_json::from_str(bad).unwrap()).is_err());
    }

    #[test]
    fn witness_is_first_in_order() {
        // independent scan in test code
        let s = Splitting::handles(3, 1);
        let covers = enumerate_covers(3);
        let expect = covers
            .iter()
            .find(|p| {
                let on_v1 = s.v1.iter().any(|&v| p.sigma_class(v) == 1);
                let on_v2 = s.v2.iter().any(|&v| p.sigma_class(v) == 1);
                on_v1 && on_v2
            })
            .copied()
            .unwrap();
        assert_eq!(witness_cover_for_splitting(&s).unwrap(), expect);
    }
}
