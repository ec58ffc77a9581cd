use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::Result;
use crate::lattice::{shadow, CharCovector, Form};
use crate::ledger::ManifoldClass;
use crate::linalg::Rational;

/// Outcome of testing a form against the bound `s_bar <= delta(Y)` and
/// `|det| <= |Tors H_1(Y)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FillingVerdict {
    pub admissible: bool,
    #[serde(serialize_with = "serialize_opt_covector", skip_serializing_if = "Option::is_none")]
    pub violating_covector: Option<CharCovector>,
    /// `delta(Y) - s_bar`; absent for forms that are not semidefinite.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub margin: Option<Rational>,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub s_bar: Option<Rational>,
    #[serde(with = "crate::doc::serde_bigint")]
    pub det: BigInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

fn serialize_opt_covector<S: serde::Serializer>(
    c: &Option<CharCovector>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match c {
        Some(c) => crate::doc::serialize_covector(c, s),
        None => s.serialize_none(),
    }
}

fn serialize_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => crate::linalg::serde_rational::serialize(r, s),
        None => s.serialize_none(),
    }
}

/// Checks whether `f` can be the intersection form of a negative
/// semidefinite filling of `m`. The radical of `f` is discarded first.
pub fn check_filling(m: &ManifoldClass, f: &Form) -> Result<FillingVerdict> {
    let sig = f.signature();
    if sig.plus > 0 {
        return Ok(FillingVerdict {
            admissible: false,
            violating_covector: None,
            margin: None,
            s_bar: None,
            det: f.nondegenerate_part().determinant(),
            reason: Some("not semidefinite".into()),
        });
    }
    let core = f.nondegenerate_part();
    let det = core.determinant();
    let sh = shadow(&core)?;
    let delta = m.delta();
    let margin = &delta - &sh.s_bar;
    let bound_ok = !margin.is_negative();
    let det_ok = det.abs() <= m.torsion_order;
    let reason = match (bound_ok, det_ok) {
        (true, true) => None,
        (false, _) => Some(format!("s_bar = {} exceeds delta = {}", sh.s_bar, delta)),
        (true, false) => Some(format!("|det| = {} exceeds torsion order {}", det.abs(), m.torsion_order)),
    };
    Ok(FillingVerdict {
        admissible: bound_ok && det_ok,
        violating_covector: if bound_ok { None } else { Some(sh.witness) },
        margin: Some(margin),
        s_bar: Some(sh.s_bar),
        det,
        reason,
    })
}
