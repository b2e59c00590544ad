use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::homology::CoverHomology;
use crate::error::{Error, Result};
use crate::exactlin::{fixed_line_report, IntMatrix};
use crate::polyfact::IntPoly;
use crate::surface::{MappingClass, TorelliLevel};

/// Element of the Prym image modulo global sign, stored through a
/// canonical representative: determinant +1 (automatic in even dimension)
/// and first nonzero entry in row-major order positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrymMatrix {
    rep: IntMatrix,
}

impl PrymMatrix {
    /// Canonicalizes a raw restricted action. The dimension 2g-2 is even,
    /// so both signs share the determinant, which must be +1.
    pub fn canonical(raw: IntMatrix) -> PrymMatrix {
        assert!(raw.is_square());
        assert_eq!(raw.rows() % 2, 0, "Prym representatives live in even dimension");
        assert_eq!(raw.det(), BigInt::one(), "Prym representative must be unimodular");
        let n = raw.rows();
        let mut rep = raw;
        'scan: for i in 0..n {
            for j in 0..n {
                let e = &rep[(i, j)];
                if e.is_zero() {
                    continue;
                }
                if e.is_negative() {
                    rep = rep.neg();
                }
                break 'scan;
            }
        }
        PrymMatrix { rep }
    }

    pub fn rep(&self) -> &IntMatrix {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.rows()
    }

    pub fn is_identity_up_to_sign(&self) -> bool {
        self.rep.is_identity()
    }

    pub fn char_poly(&self) -> IntPoly {
        crate::exactlin::char_poly(&self.rep).expect("square by construction")
    }

    /// Equality as elements modulo sign (canonical representatives agree).
    pub fn same_class(&self, other: &PrymMatrix) -> bool {
        self.rep == other.rep
    }

    /// Product in the sign-quotient: multiply representatives, then
    /// re-canonicalize.
    pub fn mul(&self, other: &PrymMatrix) -> PrymMatrix {
        PrymMatrix::canonical(self.rep.mul(&other.rep))
    }
}

/// True iff the class fixes a line in Z^(2g-2): an eigenvalue +1 or -1 of
/// either representative. The +1 ranks of M and -M swap with the -1 ranks,
/// so one report answers for both signs.
pub fn invariant_line_check(pm: &PrymMatrix) -> bool {
    fixed_line_report(pm.rep()).expect("square").has_line()
}

/// Per-cover JSON fragment: alpha bit-string, Prym rank, the canonical
/// matrix rows and the characteristic polynomial coefficients (ascending),
/// all as exact JSON integers.
pub fn cover_fragment_json(h: &CoverHomology, pm: &PrymMatrix) -> serde_json::Value {
    let int = |x: &BigInt| -> serde_json::Value {
        serde_json::Value::Number(x.to_string().parse().expect("integer literal"))
    };
    let mut m = serde_json::Map::new();
    m.insert("alpha".into(), serde_json::Value::from(h.cover.alpha_string()));
    m.insert("kp_rank".into(), serde_json::Value::from(h.kp_rank()));
    let rows: Vec<serde_json::Value> = (0..pm.dim())
        .map(|i| {
            serde_json::Value::Array((0..pm.dim()).map(|j| int(&pm.rep()[(i, j)])).collect())
        })
        .collect();
    m.insert("matrix".into(), serde_json::Value::Array(rows));
    m.insert(
        "charpoly".into(),
        serde_json::Value::Array(pm.char_poly().coeffs().iter().map(int).collect()),
    );
    serde_json::Value::Object(m)
}

/// The Prym action of a mapping class on this cover, canonical sign.
/// Requires the class to act trivially on mod-2 homology so that the
/// endomorphism restricts to the cover subgroup.
pub fn prym_action(h: &CoverHomology, m: &MappingClass) -> Result<PrymMatrix> {
    if m.torelli_level() == TorelliLevel::None {
        return Err(Error::NotLiftable);
    }
    let action = h.induced_action(&m.endo);
    debug_assert_eq!(
        h.p_star().mul(&action),
        m.homology.mul(h.p_star()),
        "projection must intertwine the cover action with the base action"
    );
    Ok(PrymMatrix::canonical(h.restrict_to_kp(&action)))
}

/// Raw (un-canonicalized) restriction, for sign-robustness tests.
pub fn prym_action_raw(h: &CoverHomology, m: &MappingClass) -> Result<IntMatrix> {
    if m.torelli_level() == TorelliLevel::None {
        return Err(Error::NotLiftable);
    }
    Ok(h.restrict_to_kp(&h.induced_action(&m.endo)))
}
