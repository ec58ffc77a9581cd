//! Even negative-definite forms that pass the filling test, up to isometry.
//!
//! Every lattice has a basis in Hermite-Korkine-Zolotarev position: each
//! Gram-Schmidt vector `b_i*` is a shortest vector of the projection of the
//! lattice orthogonal to `b_1, ..., b_{i-1}`. The search enumerates integral
//! Gram matrices satisfying the necessary conditions this implies:
//!
//! * size reduction, `|mu_ij| <= 1/2`;
//! * `B_i^m <= gamma_m^m * det(pi_i L)` with `m = n - i`, using exact
//!   Hermite constants for `m <= 8`;
//! * `B_j <= |pi_j(b_i)|^2` for `j < i`;
//! * even diagonal and `det <= t`.
//!
//! Signs are fixed by making the first nonzero entry left of the diagonal
//! in each row positive.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::reduce::reduce_int;
use crate::lattice::{Form, IsometryTarget};
use crate::ledger::{check_filling, ManifoldClass};
use crate::linalg::{ceil_rational, floor_rational, rat, IntMatrix, Rational};

pub const DEFAULT_MAX_RANK: usize = 8;

#[derive(Debug, Clone)]
pub struct CandidateSet {
    pub forms: Vec<Form>,
    /// Largest rank searched.
    pub searched_rank: Option<usize>,
    /// Set when `floor(delta)` exceeds the rank cap, so the list may be
    /// incomplete.
    pub truncated: bool,
}

/// `gamma_m^m`, exact for `m <= 8`, and `(1 + m/4)^m` above.
fn hermite_power(m: usize) -> Rational {
    const EXACT: [(i64, i64); 9] = [(1, 1), (1, 1), (4, 3), (2, 1), (4, 1), (8, 1), (64, 3), (64, 1), (256, 1)];
    if m < EXACT.len() {
        let (p, q) = EXACT[m];
        return rat(p, q);
    }
    let base = rat(1, 1) + rat(m as i64, 4);
    (0..m).fold(rat(1, 1), |acc, _| acc * &base)
}

fn pow(x: &Rational, m: usize) -> Rational {
    (0..m).fold(rat(1, 1), |acc, _| acc * x)
}

struct Search {
    n: usize,
    t: Rational,
    g: Vec<Vec<i64>>,
    mu: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    prod: Vec<Rational>,
    found: Vec<Vec<Vec<i64>>>,
    nodes: u64,
}

impl Search {
    fn new(n: usize, t: &BigInt) -> Self {
        Search {
            n,
            t: Rational::from_integer(t.clone()),
            g: vec![vec![0; n]; n],
            mu: vec![vec![Rational::zero(); n]; n],
            b: vec![Rational::zero(); n],
            prod: vec![Rational::one(); n + 1],
            found: Vec::new(),
            nodes: 0,
        }
    }

    fn row(&mut self, i: usize) {
        self.nodes += 1;
        if i == self.n {
            let mut full = self.g.clone();
            for r in 0..self.n {
                for c in r + 1..self.n {
                    full[r][c] = full[c][r];
                }
            }
            self.found.push(full);
            return;
        }
        self.offdiag(i, 0, true);
    }

    fn offdiag(&mut self, i: usize, j: usize, zero_so_far: bool) {
        if j == i {
            self.diag(i);
            return;
        }
        let mut s = Rational::zero();
        for k in 0..j {
            s += &self.mu[i][k] * &self.mu[j][k] * &self.b[k];
        }
        let half = &self.b[j] / rat(2, 1);
        let mut lo = ceil_rational(&(&s - &half));
        let hi = floor_rational(&(&s + &half));
        if zero_so_far && lo.is_negative() {
            lo = BigInt::zero();
        }
        let (Some(lo), Some(hi)) = (lo.to_i64(), hi.to_i64()) else { return };
        for x in lo..=hi {
            self.g[i][j] = x;
            self.mu[i][j] = (Rational::from_integer(BigInt::from(x)) - &s) / &self.b[j];
            self.offdiag(i, j + 1, zero_so_far && x == 0);
        }
        self.g[i][j] = 0;
    }

    fn diag(&mut self, i: usize) {
        let m = self.n - i;
        // sigma = |b_i|^2 - B_i; tail[j] = |pi_j(b_i)|^2 - B_i
        let mut tail = vec![Rational::zero(); i + 1];
        for j in (0..i).rev() {
            tail[j] = &tail[j + 1] + &self.mu[i][j] * &self.mu[i][j] * &self.b[j];
        }
        let sigma = tail[0].clone();
        let cap = hermite_power(m) * &self.t / &self.prod[i];
        let mut a_min = BigInt::from(2);
        for j in 0..i {
            // B_j <= B_i + tail[j], with B_i = a - sigma
            let need = ceil_rational(&(&self.b[j] - &tail[j] + &sigma));
            if need > a_min {
                a_min = need;
            }
        }
        if a_min.clone() % 2u8 != BigInt::zero() {
            a_min += 1;
        }
        let Some(mut a) = a_min.to_i64() else { return };
        loop {
            let bi = Rational::from_integer(BigInt::from(a)) - &sigma;
            if bi.is_positive() {
                if pow(&bi, m) > cap {
                    break;
                }
                self.g[i][i] = a;
                self.b[i] = bi.clone();
                self.prod[i + 1] = &self.prod[i] * &bi;
                self.row(i + 1);
            }
            a += 2;
        }
        self.g[i][i] = 0;
    }
}

/// Integral positive-definite even Gram matrices of rank `n` and
/// determinant at most `t` that satisfy the reduction conditions above.
pub fn reduced_even_grams(n: usize, t: &BigInt) -> (Vec<Vec<Vec<i64>>>, u64) {
    let mut s = Search::new(n, t);
    s.row(0);
    (s.found, s.nodes)
}

fn thread_pool() -> Option<rayon::ThreadPool> {
    let n: usize = std::env::var("FILLIFORM_THREADS").ok()?.parse().ok()?;
    rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().ok()
}

struct Rep {
    form: Form,
    det: BigInt,
    target: Option<IsometryTarget>,
}

impl Rep {
    /// Whether the positive-definite reduced Gram `p` describes this class.
    fn matches(&mut self, p: &IntMatrix, det: &BigInt) -> Result<bool> {
        if *det != self.det || p.rows() != self.form.rank() {
            return Ok(false);
        }
        let need = (0..p.rows()).map(|i| p[(i, i)].clone()).max().unwrap_or_else(BigInt::zero);
        if self.target.as_ref().is_none_or(|t| *t.max_norm() < need) {
            self.target = Some(IsometryTarget::new(self.form.gram().neg(), need)?);
        }
        Ok(self.target.as_ref().expect("just built").embed_basis(p)?.is_some())
    }
}

/// Representatives of the isometry classes among negative-definite `forms`,
/// in input order.
pub fn dedupe_isometric(forms: Vec<Form>) -> Result<Vec<Form>> {
    for f in &forms {
        f.ensure_negative_definite()?;
    }
    let reduced: Vec<IntMatrix> = forms.par_iter().map(|f| reduce_int(&f.gram().neg()).0).collect();
    dedupe_reduced(forms, &reduced)
}

/// As [`dedupe_isometric`], with `reduced[i]` a reduced positive Gram
/// matrix of `forms[i]` whose basis starts with short vectors.
fn dedupe_reduced(forms: Vec<Form>, reduced: &[IntMatrix]) -> Result<Vec<Form>> {
    let mut reps: Vec<Rep> = Vec::new();
    for (f, p) in forms.into_iter().zip(reduced) {
        let det = f.determinant();
        let mut seen = false;
        for r in reps.iter_mut() {
            if r.matches(p, &det)? {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(Rep { form: f, det, target: None });
        }
    }
    Ok(reps.into_iter().map(|r| r.form).collect())
}

/// Even negative-definite forms, up to isometry, admissible as fillings
/// of `m`, searched up to rank `min(floor(delta), max_rank)`.
pub fn enumerate_even_candidates(m: &ManifoldClass, max_rank: usize) -> Result<CandidateSet> {
    match thread_pool() {
        Some(pool) => pool.install(|| enumerate_inner(m, max_rank)),
        None => enumerate_inner(m, max_rank),
    }
}

fn enumerate_inner(m: &ManifoldClass, max_rank: usize) -> Result<CandidateSet> {
    let delta = m.delta();
    if delta.is_negative() {
        return Ok(CandidateSet { forms: Vec::new(), searched_rank: None, truncated: false });
    }
    let top = floor_rational(&delta).to_usize().ok_or(Error::Overflow("rank bound"))?;
    let limit = top.min(max_rank);
    let mut forms = Vec::new();
    for n in 0..=limit {
        let (grams, nodes) = reduced_even_grams(n, &m.torsion_order);
        let distinct: BTreeSet<Vec<Vec<i64>>> = grams.into_iter().collect();
        log::info!("rank {n}: {} reduced Gram matrices after {nodes} search nodes", distinct.len());
        let positive: Vec<IntMatrix> = distinct
            .iter()
            .map(|g| {
                let rows: Vec<&[i64]> = g.iter().map(Vec::as_slice).collect();
                IntMatrix::from_i64(&rows)
            })
            .collect();
        let cands: Vec<Form> = positive.iter().map(|p| Form::new(p.neg())).collect::<Result<_>>()?;
        let reps = dedupe_reduced(cands, &positive)?;
        log::info!("rank {n}: {} isometry classes", reps.len());
        for f in reps {
            if check_filling(m, &f)?.admissible {
                forms.push(f);
            }
        }
    }
    Ok(CandidateSet { forms, searched_rank: Some(limit), truncated: top > max_rank })
}
