use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::lattice::form::dual_pairing_with;
use crate::lattice::reduce::lll_gram;
use crate::lattice::{CharCovector, Enumerator, Form};
use crate::linalg::{rat_int, unimodular_inverse, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShadowStats {
    #[serde(with = "crate::linalg::serde_rational")]
    pub s: Rational,
    #[serde(with = "crate::linalg::serde_rational")]
    pub s_bar: Rational,
    #[serde(serialize_with = "crate::doc::serialize_covector")]
    pub witness: CharCovector,
}

/// `s = min |kappa^2|` over characteristic covectors of a negative-definite
/// form, with `s_bar = n - s`.
///
/// Writing `kappa = c + 2y` with `c` the base covector and `y` in the dual
/// lattice, `|kappa^2| = 4 (y + c/2)^T P^{-1} (y + c/2)` where `P = -gram`,
/// so this is a closest-vector search for `-c/2` in the dual lattice.
pub fn shadow(f: &Form) -> Result<ShadowStats> {
    f.ensure_negative_definite()?;
    let n = f.rank();
    let base = f.char_base();
    if n == 0 {
        return Ok(ShadowStats { s: Rational::zero(), s_bar: Rational::zero(), witness: base });
    }
    let inv_neg = f.negate().inverse()?;
    let (a_red, t) = lll_gram(&inv_neg);
    let t_inv = unimodular_inverse(&t)?;
    let tinv_c = t_inv.mul_vec(&base.coords)?;
    let center: Vec<Rational> = tinv_c.iter().map(|x| -Rational::new(x.clone(), BigInt::from(2))).collect();
    let four = rat_int(4);
    let scaled: Vec<Vec<Rational>> = a_red.iter().map(|r| r.iter().map(|x| x * &four).collect()).collect();
    let e = Enumerator::new(&scaled)?;

    let start = dual_pairing_with(&inv_neg, &base.coords, &base.coords);
    let mut best = start.clone();
    let mut hits: Vec<Vec<BigInt>> = Vec::new();
    e.visit(&center, start, &mut |z, v| {
        if *v < best {
            best = v.clone();
            hits.clear();
        }
        if *v == best {
            hits.push(z.to_vec());
        }
        Some(best.clone())
    });
    let two = BigInt::from(2);
    let witness = hits
        .iter()
        .map(|z| {
            let y = t.mul_vec(z).expect("dimensions agree");
            base.coords.iter().zip(&y).map(|(c, yi)| c + &two * yi).collect::<Vec<BigInt>>()
        })
        .min()
        .expect("the base covector is always a candidate");
    let s = best;
    Ok(ShadowStats { s_bar: rat_int(n as i64) - &s, s, witness: CharCovector { coords: witness } })
}
