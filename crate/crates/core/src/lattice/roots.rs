use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::lattice::enumerate::short_vectors_pos;
use crate::lattice::Form;
use crate::linalg::{rank, IntMatrix};

/// Nonzero vectors of one norm; each representative stands for the pair `±v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormShell {
    pub norm: BigInt,
    pub representatives: Vec<Vec<BigInt>>,
}

impl NormShell {
    /// Number of vectors counting both signs.
    pub fn count(&self) -> usize {
        2 * self.representatives.len()
    }
}

fn leading_positive(v: &[BigInt]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_positive)
}

/// All `v != 0` with `|S(v, v)| <= max_abs_norm`, grouped by norm (closest
/// to zero first). Representatives have positive leading coordinate and are
/// sorted lexicographically.
pub fn short_vectors(f: &Form, max_abs_norm: &BigInt) -> Result<Vec<NormShell>> {
    f.ensure_negative_definite()?;
    let all = short_vectors_pos(&f.gram().neg(), max_abs_norm)?;
    let mut shells: Vec<NormShell> = Vec::new();
    for (v, n) in all {
        if !leading_positive(&v) {
            continue;
        }
        let norm = -n;
        match shells.last_mut() {
            Some(s) if s.norm == norm => s.representatives.push(v),
            _ => shells.push(NormShell { norm, representatives: vec![v] }),
        }
    }
    Ok(shells)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RootFamily {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RootComponent {
    pub family: RootFamily,
    pub rank: usize,
}

impl RootComponent {
    pub fn root_count(&self) -> usize {
        let k = self.rank;
        match self.family {
            RootFamily::A => k * k + k,
            RootFamily::D => 2 * k * k - 2 * k,
            RootFamily::E => match k {
                6 => 72,
                7 => 126,
                _ => 240,
            },
        }
    }

    /// Irreducible simply-laced type with the given rank and root count.
    /// `D3` and `D2` never occur: they coincide with `A3` and `A1 + A1`.
    pub fn identify(rank: usize, roots: usize) -> Option<Self> {
        let candidates = [
            RootComponent { family: RootFamily::A, rank },
            RootComponent { family: RootFamily::D, rank },
            RootComponent { family: RootFamily::E, rank },
        ];
        candidates.into_iter().find(|c| {
            let valid = match c.family {
                RootFamily::A => rank >= 1,
                RootFamily::D => rank >= 4,
                RootFamily::E => (6..=8).contains(&rank),
            };
            valid && c.root_count() == roots
        })
    }
}

impl fmt::Display for RootComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            RootFamily::A => "A",
            RootFamily::D => "D",
            RootFamily::E => "E",
        };
        write!(f, "{fam}{}", self.rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSystemId {
    pub components: Vec<RootComponent>,
    pub root_count: usize,
    pub spans_full_rank: bool,
}

impl RootSystemId {
    /// `"D12"`, `"A1+A1"`, or `"0"` for an empty root system.
    pub fn label(&self) -> String {
        if self.components.is_empty() {
            return "0".into();
        }
        self.components.iter().map(ToString::to_string).collect::<Vec<_>>().join("+")
    }
}

/// Root system of the norm `-2` vectors of a negative-definite form.
pub fn root_system(f: &Form) -> Result<RootSystemId> {
    let shells = short_vectors(f, &BigInt::from(2))?;
    let reps: Vec<Vec<BigInt>> =
        shells.into_iter().filter(|s| s.norm == BigInt::from(-2)).flat_map(|s| s.representatives).collect();
    let m = reps.len();
    let covs: Vec<Vec<BigInt>> = reps.iter().map(|r| f.covector_of(r).expect("dimensions agree")).collect();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..m {
        for j in i + 1..m {
            let ip: BigInt = covs[i].iter().zip(&reps[j]).map(|(a, b)| a * b).sum();
            if !ip.is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..m {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let n = f.rank();
    let mut components = Vec::new();
    for members in groups.values() {
        let cols: Vec<Vec<BigInt>> = members.iter().map(|&i| reps[i].clone()).collect();
        let k = rank(&IntMatrix::from_columns(n, &cols)?);
        let c = RootComponent::identify(k, 2 * members.len()).ok_or_else(|| {
            crate::Error::Inconsistency(format!("root component of rank {k} with {} roots", 2 * members.len()))
        })?;
        components.push(c);
    }
    components.sort();
    let span = if m == 0 { 0 } else { rank(&IntMatrix::from_columns(n, &reps)?) };
    Ok(RootSystemId { components, root_count: 2 * m, spans_full_rank: span == n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard;

    #[test]
    fn small_examples() {
        let shells = short_vectors(&Form::cube(-1, 2), &BigInt::from(1)).unwrap();
        assert_eq!(shells.len(), 1);
        assert_eq!(shells[0].count(), 4);
        assert!(short_vectors(&Form::from_i64(&[&[-2]]).unwrap(), &BigInt::from(1)).unwrap().is_empty());

        let a1 = root_system(&Form::from_i64(&[&[-2]]).unwrap()).unwrap();
        assert_eq!(a1.label(), "A1");
        assert_eq!(a1.root_count, 2);
    }

    #[test]
    fn e8_and_gamma12() {
        let e8 = root_system(&standard::e8_form()).unwrap();
        assert_eq!(e8.label(), "E8");
        assert_eq!(e8.root_count, 240);
        assert!(e8.spans_full_rank);

        let g12 = root_system(&standard::gamma_form(12).unwrap()).unwrap();
        assert_eq!(g12.label(), "D12");
        assert_eq!(g12.root_count, 264);
    }

    #[test]
    fn aliases_resolve_to_a() {
        assert_eq!(root_system(&standard::d_form(3)).unwrap().label(), "A3");
        assert_eq!(root_system(&standard::d_form(2)).unwrap().label(), "A1+A1");
        let d4a2 = standard::d_form(4).direct_sum(&standard::a_form(2));
        let id = root_system(&d4a2).unwrap();
        assert_eq!(id.label(), "A2+D4");
        assert_eq!(id.root_count, 24 + 6);
    }

    #[test]
    fn root_count_table() {
        for (fam, k, n) in
            [(RootFamily::A, 3, 12), (RootFamily::D, 5, 40), (RootFamily::E, 6, 72), (RootFamily::E, 7, 126)]
        {
            assert_eq!(RootComponent { family: fam, rank: k }.root_count(), n);
        }
    }
}
