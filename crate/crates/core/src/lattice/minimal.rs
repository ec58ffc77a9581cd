use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::lattice::{short_vectors, Form};
use crate::linalg::{integer_kernel, IntMatrix};

/// Splits `f = <-1>^m + f_0` with `f_0` free of norm `-1` vectors.
///
/// A norm `-1` vector `v` always splits off: `L = Z v + v^perp`.
pub fn minimal_part(f: &Form) -> Result<(usize, Form)> {
    f.ensure_negative_definite()?;
    let mut m = 0;
    let mut cur = f.clone();
    loop {
        let shells = short_vectors(&cur, &BigInt::one())?;
        let Some(v) = shells.into_iter().next().and_then(|s| s.representatives.into_iter().next()) else {
            return Ok((m, cur));
        };
        let n = cur.rank();
        let row = cur.covector_of(&v)?;
        let perp = integer_kernel(&IntMatrix::from_rows_with_cols(vec![row], n)?);
        cur = cur.change_basis(&perp)?;
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{is_isometric, standard};

    #[test]
    fn examples() {
        let (m, f0) = minimal_part(&Form::cube(-1, 3)).unwrap();
        assert_eq!((m, f0.rank()), (3, 0));
        let e8 = standard::e8_form();
        assert_eq!(minimal_part(&e8).unwrap(), (0, e8.clone()));
        let (m, f0) = minimal_part(&e8.direct_sum(&Form::cube(-1, 1))).unwrap();
        assert_eq!(m, 1);
        assert!(is_isometric(&f0, &e8).unwrap().is_some());
    }

    #[test]
    fn hidden_unit_vector() {
        // <-1> + <-2> in a skewed basis: (1, 0) and (1, 1)
        let f = Form::from_i64(&[&[-1, -1], &[-1, -3]]).unwrap();
        let (m, f0) = minimal_part(&f).unwrap();
        assert_eq!(m, 1);
        assert_eq!(f0, Form::from_i64(&[&[-2]]).unwrap());
    }
}
