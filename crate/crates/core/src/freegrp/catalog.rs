use std::collections::HashMap;

use num_bigint::BigInt;

use super::endo::EndoMap;
use super::word::{parse_token, token_of, Word};
use crate::error::{Error, Result};

/// Named generator with its endomorphism, declared formal inverse and an
/// optional declared curve homology class (for twist generators).
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub endo: EndoMap,
    pub inverse: Option<String>,
    pub curve: Option<Vec<BigInt>>,
}

/// Catalog of named mapping-class generators for one surface.
#[derive(Clone, Debug, Default)]
pub struct GeneratorCatalog {
    pub genus: usize,
    entries: Vec<CatalogEntry>,
    index: HashMap<String, usize>,
}

impl GeneratorCatalog {
    pub fn new(genus: usize) -> Self {
        GeneratorCatalog { genus, entries: vec![], index: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn push(&mut self, entry: CatalogEntry) -> Result<()> {
        if entry.endo.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: entry.endo.rank() });
        }
        if self.index.contains_key(&entry.name) {
            return Err(Error::Catalog(format!("duplicate generator name `{}`", entry.name)));
        }
        if let Some(c) = &entry.curve {
            if c.len() != self.rank() {
                return Err(Error::Catalog(format!(
                    "curve vector for `{}` must have length {}",
                    entry.name,
                    self.rank()
                )));
            }
        }
        self.index.insert(entry.name.clone(), self.entries.len());
        self.entries.push(entry);
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    /// Resolves a name, or `base^-1` through the declared inverse of base.
    pub fn resolve(&self, name: &str) -> Result<&CatalogEntry> {
        if let Some(e) = self.get(name) {
            return Ok(e);
        }
        if let Some(base) = name.strip_suffix("^-1") {
            if let Some(e) = self.get(base) {
                let inv = e
                    .inverse
                    .as_ref()
                    .ok_or_else(|| Error::Catalog(format!("`{base}` has no declared inverse")))?;
                return self
                    .get(inv)
                    .ok_or_else(|| Error::UnknownName(inv.clone()));
            }
        }
        Err(Error::UnknownName(name.to_string()))
    }

    /// True when every entry's declared inverse is present in the catalog.
    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|e| {
            e.inverse
                .as_ref()
                .map(|inv| self.index.contains_key(inv))
                .unwrap_or(false)
        })
    }

    /// Composite endomorphism of a sequence of names, leftmost applied
    /// first; the empty sequence gives the identity.
    pub fn compose(&self, names: &[impl AsRef<str>]) -> Result<EndoMap> {
        let mut acc = EndoMap::identity(self.rank());
        for n in names {
            let entry = self.resolve(n.as_ref())?;
            acc = entry.endo.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Canonical text form; `parse` inverts it exactly.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("genus {}\n", self.genus));
        for e in &self.entries {
            out.push_str(&format!("gen {}", e.name));
            if let Some(inv) = &e.inverse {
                out.push_str(&format!(" inverse {inv}"));
            }
            if let Some(c) = &e.curve {
                out.push_str(" curve");
                for x in c {
                    out.push_str(&format!(" {x}"));
                }
            }
            out.push('\n');
            for k in 1..=self.rank() {
                let img = e.endo.image_of(k);
                if img.is_empty() {
                    out.push_str(&format!("image {} =\n", token_of(k as i32)));
                } else {
                    out.push_str(&format!("image {} = {}\n", token_of(k as i32), img.display()));
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<GeneratorCatalog> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Catalog("empty catalog".into()))?;
        let genus: usize = header
            .strip_prefix("genus ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Catalog("first line must be `genus <g>`".into()))?;
        if genus < 2 {
            return Err(Error::Catalog("genus must be at least 2".into()));
        }
        let mut cat = GeneratorCatalog::new(genus);
        let rank = cat.rank();
        let mut lines = lines.peekable();
        while let Some(line) = lines.next() {
            let rest = line
                .strip_prefix("gen ")
                .ok_or_else(|| Error::Catalog(format!("expected `gen <name>`, got `{line}`")))?;
            let mut toks = rest.split_whitespace();
            let name = toks
                .next()
                .ok_or_else(|| Error::Catalog("missing generator name".into()))?
                .to_string();
            let mut inverse = None;
            let mut curve = None;
            while let Some(t) = toks.next() {
                match t {
                    "inverse" => {
                        let v = toks
                            .next()
                            .ok_or_else(|| Error::Catalog("missing inverse name".into()))?;
                        inverse = Some(v.to_string());
                    }
                    "curve" => {
                        let mut c = Vec::with_capacity(rank);
                        for _ in 0..rank {
                            let v = toks.next().ok_or_else(|| {
                                Error::Catalog(format!("curve vector for `{name}` needs {rank} entries"))
                            })?;
                            c.push(v.parse::<BigInt>().map_err(|_| {
                                Error::Catalog(format!("bad curve entry `{v}`"))
                            })?);
                        }
                        curve = Some(c);
                    }
                    other => {
                        return Err(Error::Catalog(format!("unexpected token `{other}` in gen line")));
                    }
                }
            }
            let mut images = vec![Word::empty(); rank];
            let mut seen = vec![false; rank];
            for _ in 0..rank {
                let img_line = lines
                    .next()
                    .ok_or_else(|| Error::Catalog(format!("`{name}` needs {rank} image lines")))?;
                let rest = img_line
                    .strip_prefix("image ")
                    .ok_or_else(|| Error::Catalog(format!("expected `image`, got `{img_line}`")))?;
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| Error::Catalog(format!("missing `=` in `{img_line}`")))?;
                let gen_tok = lhs.trim();
                let l = parse_token(gen_tok, genus)?;
                if l < 0 {
                    return Err(Error::Catalog(format!("image lhs `{gen_tok}` must be a generator")));
                }
                let k = l as usize;
                if seen[k - 1] {
                    return Err(Error::Catalog(format!("duplicate image for `{gen_tok}`")));
                }
                seen[k - 1] = true;
                images[k - 1] = Word::parse(rhs, genus)?;
            }
            cat.push(CatalogEntry { name, endo: EndoMap::new(images), inverse, curve })?;
        }
        Ok(cat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> GeneratorCatalog {
        let mut cat = GeneratorCatalog::new(2);
        let mut images: Vec<Word> = (1..=4).map(Word::generator).collect();
        images[1] = Word::parse("b1 a1", 2).unwrap();
        let t = EndoMap::new(images);
        let mut inv_images: Vec<Word> = (1..=4).map(Word::generator).collect();
        inv_images[1] = Word::parse("b1 A1", 2).unwrap();
        let tinv = EndoMap::new(inv_images);
        cat.push(CatalogEntry {
            name: "t".into(),
            endo: t,
            inverse: Some("t_inv".into()),
            curve: Some(vec![1.into(), 0.into(), 0.into(), 0.into()]),
        })
        .unwrap();
        cat.push(CatalogEntry {
            name: "t_inv".into(),
            endo: tinv,
            inverse: Some("t".into()),
            curve: Some(vec![1.into(), 0.into(), 0.into(), 0.into()]),
        })
        .unwrap();
        cat
    }

    #[test]
    fn compose_rules() {
        let cat = sample();
        assert!(cat.compose(&Vec::<String>::new()).unwrap().is_identity());
        assert!(cat.compose(&["t", "t_inv"]).unwrap().is_identity());
        assert!(cat.compose(&["t", "t^-1"]).unwrap().is_identity());
        let tt = cat.compose(&["t", "t"]).unwrap();
        let t = &cat.get("t").unwrap().endo;
        let expect = t.compose(t).unwrap();
        assert_eq!(tt, expect);
        assert!(matches!(cat.compose(&["nope"]), Err(Error::UnknownName(_))));
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let cat = sample();
        let text = cat.serialize();
        let parsed = GeneratorCatalog::parse(&text).unwrap();
        assert_eq!(parsed.serialize(), text);
        assert_eq!(parsed.genus, 2);
        assert!(parsed.is_symmetric());
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# a catalog\n\ngenus 2\n# entry\ngen e inverse e\nimage a1 = a1\nimage b1 = b1\nimage a2 = a2\nimage b2 = b2\n";
        let cat = GeneratorCatalog::parse(text).unwrap();
        assert_eq!(cat.names(), vec!["e".to_string()]);
        assert!(cat.get("e").unwrap().endo.is_identity());
    }
}
