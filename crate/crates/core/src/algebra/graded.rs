//! Graded rank vectors with symbolic towers, and the degree bookkeeping of
//! connected sums with copies of `S^1 x S^2`.

use std::collections::BTreeMap;

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TowerKind {
    /// `F[U, U^-1]`
    Tinf,
    /// `F[U, U^-1] / F[U]`
    Tplus,
}

impl TowerKind {
    pub fn name(self) -> &'static str {
        match self {
            TowerKind::Tinf => "Tinf",
            TowerKind::Tplus => "Tplus",
        }
    }
}

/// Finite ranks by degree plus infinite towers keyed by kind and bottom
/// degree, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedRankVector {
    ranks: BTreeMap<Rational, u64>,
    towers: BTreeMap<(TowerKind, Rational), u64>,
}

fn check_degree(d: &Rational) -> Result<()> {
    if !(d * rat(4, 1)).is_integer() {
        return Err(Error::Precondition(format!("degree {} is not in (1/4)Z", format_rational(d))));
    }
    Ok(())
}

impl GradedRankVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_rank(&mut self, degree: Rational, rank: u64) -> Result<()> {
        check_degree(&degree)?;
        if rank > 0 {
            *self.ranks.entry(degree).or_insert(0) += rank;
        }
        Ok(())
    }

    pub fn add_tower(&mut self, kind: TowerKind, bottom: Rational, multiplicity: u64) -> Result<()> {
        check_degree(&bottom)?;
        if multiplicity > 0 {
            *self.towers.entry((kind, bottom)).or_insert(0) += multiplicity;
        }
        Ok(())
    }

    pub fn tower(kind: TowerKind, bottom: Rational) -> Result<Self> {
        let mut g = Self::new();
        g.add_tower(kind, bottom, 1)?;
        Ok(g)
    }

    pub fn ranks(&self) -> &BTreeMap<Rational, u64> {
        &self.ranks
    }

    pub fn towers(&self) -> impl Iterator<Item = (TowerKind, &Rational, u64)> {
        self.towers.iter().map(|((k, b), &m)| (*k, b, m))
    }

    pub fn rank_at(&self, d: &Rational) -> u64 {
        self.ranks.get(d).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty() && self.towers.is_empty()
    }

    /// Lowest degree carrying a finite rank or a tower bottom.
    pub fn min_degree(&self) -> Option<Rational> {
        let a = self.ranks.keys().next();
        let b = self.towers.keys().map(|(_, d)| d).min();
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y).clone()),
            (x, y) => x.or(y).cloned(),
        }
    }

    pub fn shift(&self, by: &Rational) -> Result<Self> {
        let mut out = Self::new();
        for (d, &r) in &self.ranks {
            out.add_rank(d + by, r)?;
        }
        for ((k, b), &m) in &self.towers {
            out.add_tower(*k, b + by, m)?;
        }
        Ok(out)
    }

    pub fn merge(&mut self, o: &Self) {
        self.merge_scaled(o, 1);
    }

    /// Adds `k` copies of `o`.
    pub fn merge_scaled(&mut self, o: &Self, k: u64) {
        if k == 0 {
            return;
        }
        for (d, &r) in &o.ranks {
            *self.ranks.entry(d.clone()).or_insert(0) += r * k;
        }
        for (key, &m) in &o.towers {
            *self.towers.entry(key.clone()).or_insert(0) += m * k;
        }
    }

    /// Ranks of the truncation to degrees `<= top`; a tower with bottom `b`
    /// contributes one in each degree `b, b + 2, ...`.
    pub fn truncated(&self, top: &Rational) -> BTreeMap<Rational, u64> {
        let mut out: BTreeMap<Rational, u64> =
            self.ranks.iter().filter(|(d, _)| *d <= top).map(|(d, &r)| (d.clone(), r)).collect();
        for ((_, b), &m) in &self.towers {
            let mut d = b.clone();
            while &d <= top {
                *out.entry(d.clone()).or_insert(0) += m;
                d += rat(2, 1);
            }
        }
        out
    }

    pub fn to_entries(&self) -> Vec<GradedEntry> {
        let mut v: Vec<GradedEntry> =
            self.ranks.iter().map(|(d, &r)| GradedEntry::Rank { degree: format_rational(d), rank: r }).collect();
        v.extend(self.towers.iter().map(|((k, b), &m)| GradedEntry::Tower {
            tower: k.name().to_string(),
            bottom: format_rational(b),
            rank: m,
        }));
        v
    }

    pub fn from_entries(entries: &[GradedEntry]) -> Result<Self> {
        let mut g = Self::new();
        for e in entries {
            match e {
                GradedEntry::Rank { degree, rank } => g.add_rank(parse_rational(degree)?, *rank)?,
                GradedEntry::Tower { tower, bottom, rank } => {
                    let kind = match tower.as_str() {
                        "Tinf" => TowerKind::Tinf,
                        "Tplus" => TowerKind::Tplus,
                        other => return Err(Error::Parse(format!("unknown tower '{other}'"))),
                    };
                    g.add_tower(kind, parse_rational(bottom)?, *rank)?;
                }
            }
        }
        Ok(g)
    }
}

/// JSON entry: `{"degree", "rank"}` or `{"tower", "bottom", "rank"}`, where a
/// tower's rank is its multiplicity (default 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GradedEntry {
    Tower {
        tower: String,
        bottom: String,
        #[serde(default = "one")]
        rank: u64,
    },
    Rank {
        degree: String,
        rank: u64,
    },
}

fn one() -> u64 {
    1
}

impl Serialize for GradedRankVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_entries().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedRankVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<GradedEntry>::deserialize(d)?;
        Self::from_entries(&entries).map_err(serde::de::Error::custom)
    }
}

/// Tensor with `Lambda^* H_2` of `#^n S^1 x S^2`: the summand of exterior
/// degree `i` has multiplicity `C(n, i)` and sits `n/2 - i` lower.
pub fn kunneth_s1s2(g: &GradedRankVector, n: u32) -> Result<GradedRankVector> {
    let mut out = GradedRankVector::new();
    let half = rat(i64::from(n), 2);
    for i in 0..=n {
        let mult: u64 = binomial(u64::from(n), u64::from(i));
        let shift = &half - rat(i64::from(i), 1);
        let shifted = g.shift(&(-shift))?;
        out.merge_scaled(&shifted, mult);
    }
    Ok(out)
}
