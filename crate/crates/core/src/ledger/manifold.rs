use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    #[serde(rename = "paper-table")]
    Table,
    Sum,
    User,
}

/// Correction-term data of a closed oriented 3-manifold: `ud` for `Y` and
/// `ud_rev` for `-Y`, each the maximum over torsion spin^c structures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldClass {
    pub name: String,
    pub b1: u64,
    #[serde(rename = "torsion", with = "crate::doc::serde_bigint")]
    pub torsion_order: BigInt,
    #[serde(with = "crate::linalg::serde_rational")]
    pub ud: Rational,
    #[serde(with = "crate::linalg::serde_rational")]
    pub ud_rev: Rational,
    #[serde(default = "user")]
    pub provenance: Provenance,
}

fn user() -> Provenance {
    Provenance::User
}

impl ManifoldClass {
    pub fn new(
        name: impl Into<String>,
        b1: u64,
        torsion_order: BigInt,
        ud: Rational,
        ud_rev: Rational,
    ) -> Result<Self> {
        if torsion_order < BigInt::one() {
            return Err(Error::Precondition("torsion order must be positive".into()));
        }
        Ok(ManifoldClass { name: name.into(), b1, torsion_order, ud, ud_rev, provenance: Provenance::User })
    }

    /// `4 ud + 2 b1`.
    pub fn delta(&self) -> Rational {
        rat(4, 1) * &self.ud + rat(2 * self.b1 as i64, 1)
    }

    /// `delta(-Y)`.
    pub fn delta_rev(&self) -> Rational {
        self.reverse().delta()
    }

    pub fn reverse(&self) -> ManifoldClass {
        let name = match self.name.strip_prefix('-') {
            Some(rest) => rest.to_string(),
            None => format!("-{}", self.name),
        };
        ManifoldClass { name, ud: self.ud_rev.clone(), ud_rev: self.ud.clone(), ..self.clone() }
    }

    fn validate(&self) -> Result<()> {
        if self.torsion_order < BigInt::one() {
            return Err(Error::Precondition("torsion order must be positive".into()));
        }
        Ok(())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let m: ManifoldClass = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }
}

impl fmt::Display for ManifoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (b1 {}, torsion {}, ud {}, ud_rev {})",
            self.name, self.b1, self.torsion_order, self.ud, self.ud_rev
        )
    }
}

fn table(name: String, b1: u64, ud: Rational, ud_rev: Rational) -> ManifoldClass {
    ManifoldClass { name, b1, torsion_order: BigInt::one(), ud, ud_rev, provenance: Provenance::Table }
}

/// Built-in entries. `name` is one of `S3`, `S1xS2`, `T3`, `poincare` (or
/// `P`), or `sigma` with `params = [g]`; `SigmagxS1` such as `Sigma2xS1`
/// is also accepted without parameters. Matching ignores case.
///
/// For `Sigma_g x S^1`, `ud = +1/2` when `g` is odd and `-1/2` when `g` is
/// even, so that `delta = 8 ceil(g/2)`, `T^3 = Sigma_1 x S^1` has `+1/2` and
/// `S^1 x S^2 = Sigma_0 x S^1` has `-1/2`.
pub fn builtin(name: &str, params: &[i64]) -> Result<ManifoldClass> {
    let lower = name.trim().to_ascii_lowercase();
    let no_params = |m: ManifoldClass| {
        if params.is_empty() {
            Ok(m)
        } else {
            Err(Error::Precondition(format!("{name} takes no parameters")))
        }
    };
    match lower.as_str() {
        "s3" => no_params(table("S3".into(), 0, Rational::zero(), Rational::zero())),
        "s1xs2" => no_params(table("S1xS2".into(), 1, rat(-1, 2), rat(-1, 2))),
        "t3" => no_params(table("T3".into(), 3, rat(1, 2), rat(1, 2))),
        "p" | "poincare" => no_params(table("poincare".into(), 0, rat(-2, 1), rat(2, 1))),
        "sigma" => match params {
            [g] if *g >= 0 => Ok(surface_times_circle(*g as u64)),
            _ => Err(Error::Precondition("sigma needs one parameter g >= 0".into())),
        },
        _ => {
            let g = lower
                .strip_prefix("sigma")
                .and_then(|r| r.strip_suffix("xs1"))
                .map(|r| r.trim_start_matches('_'))
                .and_then(|r| r.parse::<u64>().ok());
            match g {
                Some(g) => no_params(surface_times_circle(g)),
                None => Err(Error::UnknownManifold(name.to_string())),
            }
        }
    }
}

pub fn surface_times_circle(g: u64) -> ManifoldClass {
    let ud = if g % 2 == 1 { rat(1, 2) } else { rat(-1, 2) };
    table(format!("Sigma{g}xS1"), 2 * g + 1, ud.clone(), ud)
}

/// `ud`, `ud_rev` and `b1` add; torsion orders multiply. The empty sum is
/// `S^3`.
pub fn connected_sum(parts: &[ManifoldClass]) -> ManifoldClass {
    if parts.is_empty() {
        return builtin("S3", &[]).expect("built-in");
    }
    let name = parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join("#");
    ManifoldClass {
        name,
        b1: parts.iter().map(|p| p.b1).sum(),
        torsion_order: parts.iter().map(|p| &p.torsion_order).product(),
        ud: parts.iter().map(|p| &p.ud).sum(),
        ud_rev: parts.iter().map(|p| &p.ud_rev).sum(),
        provenance: Provenance::Sum,
    }
}

pub fn reverse(m: &ManifoldClass) -> ManifoldClass {
    m.reverse()
}

pub fn delta(m: &ManifoldClass) -> Rational {
    m.delta()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(name: &str) -> ManifoldClass {
        builtin(name, &[]).unwrap()
    }

    #[test]
    fn table_values() {
        assert_eq!(b("T3").delta(), rat(8, 1));
        assert_eq!(b("S3").delta(), rat(0, 1));
        assert_eq!(b("S1xS2").delta(), rat(0, 1));
        assert_eq!(b("poincare").delta(), rat(-8, 1));
        assert_eq!(b("Sigma2xS1").ud, rat(-1, 2));
        assert_eq!(builtin("sigma", &[2]).unwrap(), b("Sigma2xS1"));
        assert_eq!(b("sigma1xs1").ud, b("T3").ud);
        assert_eq!(builtin("K3", &[]).unwrap_err().kind(), "unknown_manifold");
        assert!(builtin("T3", &[1]).is_err());
    }

    #[test]
    fn surface_deltas() {
        let want = [0, 8, 8, 16, 16, 24, 24];
        for (g, w) in want.iter().enumerate() {
            assert_eq!(surface_times_circle(g as u64).delta(), rat(*w, 1));
        }
    }

    #[test]
    fn sums_and_reversal() {
        let p = b("P");
        let three = connected_sum(&[p.clone(), p.clone(), p.clone()]);
        assert_eq!(three.ud, rat(-6, 1));
        let s = connected_sum(&[b("T3"), b("S1xS2")]);
        assert_eq!((s.ud.clone(), s.b1, s.delta()), (rat(0, 1), 4, rat(8, 1)));
        assert_eq!(connected_sum(&[]), b("S3"));
        assert_eq!(p.reverse().ud, rat(2, 1));
        assert_eq!(p.reverse().reverse(), p);
        let t = b("T3");
        assert_eq!((t.reverse().ud, t.reverse().ud_rev), (t.ud.clone(), t.ud_rev.clone()));
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(b("poincare")).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"name": "poincare", "b1": 0, "torsion": 1, "ud": "-2", "ud_rev": "2", "provenance": "paper-table"})
        );
        assert_eq!(ManifoldClass::from_json(&v).unwrap(), b("poincare"));
        let bad = serde_json::json!({"name": "x", "b1": 0, "torsion": 0, "ud": "0", "ud_rev": "0"});
        assert!(ManifoldClass::from_json(&bad).is_err());
    }
}
