//! Homology of index-2 covers: Reidemeister-Schreier rewriting, the deck
//! action, the Prym kernel and the induced matrix representation of
//! mapping classes, defined up to a global sign.

mod homology;
mod prym;
mod schreier;

pub use homology::CoverHomology;
pub use prym::{cover_fragment_json, invariant_line_check, prym_action, prym_action_raw, PrymMatrix};
pub use schreier::{schreier_data, schreier_data_with_transversal, SchreierRewriter};

use crate::surface::{enumerate_covers, CoverSpec};

/// Cover homology for every double cover of the genus, built once and
/// then shared read-only.
pub struct CoverTable {
    covers: Vec<CoverHomology>,
}

impl CoverTable {
    pub fn new(genus: usize) -> Self {
        CoverTable { covers: enumerate_covers(genus).iter().map(CoverHomology::new).collect() }
    }

    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CoverHomology> {
        self.covers.iter()
    }

    pub fn get(&self, i: usize) -> &CoverHomology {
        &self.covers[i]
    }

    pub fn find(&self, p: &CoverSpec) -> Option<&CoverHomology> {
        self.covers.iter().find(|h| h.cover == *p)
    }
}
