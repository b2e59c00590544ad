//! Certifies elements of the Torelli group of a closed genus-g surface as
//! pseudo-Anosov from the homology of its 2^(2g)-1 double covers, and
//! measures how fast certificate failures die off under random walks.
//!
//! All group theory and linear algebra is exact; floating point appears
//! only in the statistics layer.

pub mod certifier;
pub mod defaults;
pub mod error;
pub mod exactlin;
pub mod freegrp;
pub mod surface;
pub mod twocover;
pub mod walklab;
pub mod polyfact;

pub use error::{Error, Result};
