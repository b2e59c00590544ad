//! Words and endomorphisms of the rank-2g free group, plus named
//! generator catalogs with a plain-text serialization.

mod catalog;
mod endo;
mod word;

pub use catalog::{CatalogEntry, GeneratorCatalog};
pub use endo::{validate_inverse_pair, EndoMap};
pub use word::{parse_token, token_of, Word};
