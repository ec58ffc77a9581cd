//! Laurent polynomials `Q[t, t^-1]` and Smith forms over them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational};

/// `sum_i coeffs[i] t^(val + i)`; no leading or trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    val: i64,
    coeffs: Vec<Rational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Laurent::new(0, vec![c])
    }

    /// `c t^k`.
    pub fn monomial(c: Rational, k: i64) -> Self {
        Laurent::new(k, vec![c])
    }

    pub fn t() -> Self {
        Laurent::monomial(Rational::one(), 1)
    }

    pub fn new(val: i64, coeffs: Vec<Rational>) -> Self {
        let mut p = Laurent { val, coeffs };
        p.trim();
        p
    }

    /// Polynomial from integer coefficients of `1, t, t^2, ...`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Laurent::new(0, coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.val = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Units are the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Euclidean norm: highest minus lowest exponent.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if x.is_zero() && self.val < 0 {
            return Err(Error::Precondition("negative power of t at t = 0".into()));
        }
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        Ok(acc * pow_rational(x, self.val))
    }

    /// Associate that is monic with zero valuation (zero stays zero).
    pub fn normalized(&self) -> Laurent {
        match self.leading() {
            None => Laurent::zero(),
            Some(lc) => {
                let inv = lc.recip();
                Laurent::new(0, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// The unit `u` with `u * self = self.normalized()`.
    pub fn normalizing_unit(&self) -> Laurent {
        match self.leading() {
            None => Laurent::one(),
            Some(lc) => Laurent::monomial(lc.recip(), -self.val),
        }
    }

    pub fn inverse_unit(&self) -> Result<Laurent> {
        if !self.is_unit() {
            return Err(Error::Precondition(format!("{self} is not a unit")));
        }
        Ok(Laurent::monomial(self.coeffs[0].recip(), -self.val))
    }

    pub fn pow(&self, e: u32) -> Laurent {
        (0..e).fold(Laurent::one(), |acc, _| &acc * self)
    }

    /// `(q, r)` with `self = q * b + r` and `span(r) < span(b)`.
    pub fn div_rem(&self, b: &Laurent) -> Result<(Laurent, Laurent)> {
        if b.is_zero() {
            return Err(Error::Precondition("division by zero".into()));
        }
        if self.is_zero() {
            return Ok((Laurent::zero(), Laurent::zero()));
        }
        // divide the zero-valuation parts as polynomials
        let mut rem = self.coeffs.clone();
        let bc = &b.coeffs;
        let db = bc.len() - 1;
        let lb = bc[db].clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(db).max(1)];
        while rem.len() > db && !rem.is_empty() {
            let k = rem.len() - 1 - db;
            let c = rem.last().expect("nonempty") / &lb;
            for (i, bi) in bc.iter().enumerate() {
                let v = &c * bi;
                rem[k + i] -= v;
            }
            quot[k] = c;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        let q = Laurent::new(self.val - b.val, quot);
        let r = Laurent::new(self.val, rem);
        Ok((q, r))
    }

    pub fn parse(s: &str) -> Result<Laurent> {
        let mut p = Parser { s: s.as_bytes(), pos: 0, src: s };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

fn pow_rational(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    (0..e.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.val.min(o.val);
        let hi = (self.val + self.coeffs.len() as i64).max(o.val + o.coeffs.len() as i64);
        let mut c = vec![Rational::zero(); (hi - lo) as usize];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[(self.val - lo) as usize + i] += x;
        }
        for (i, x) in o.coeffs.iter().enumerate() {
            c[(o.val - lo) as usize + i] += x;
        }
        Laurent::new(lo, c)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        self + &(-o)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Laurent::new(self.val + o.val, c)
    }
}

impl fmt::Display for Laurent {
    /// Highest power first, e.g. `t^2 - 2*t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.val + i as i64;
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coeff = format_rational(&a);
            match (e, a.is_one()) {
                (0, _) => write!(f, "{coeff}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{coeff}*t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{coeff}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

/// `expr := term (('+'|'-') term)*`, `term := factor ('*'? factor)*`,
/// `factor := atom ('^' int)?`, `atom := rational | 't' | '(' expr ')'`,
/// with an optional leading sign on terms.
struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in '{}'", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Laurent> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Laurent> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c == b't' || c == b'(' || c.is_ascii_digit() => acc = &acc * &self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Laurent> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let e: i64 = self.src[start..self.pos].parse().map_err(|_| self.err("bad exponent"))?;
        if e >= 0 {
            Ok(base.pow(e as u32))
        } else {
            Ok(base.inverse_unit()?.pow(e.unsigned_abs() as u32))
        }
    }

    fn atom(&mut self) -> Result<Laurent> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(Laurent::t())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit() || *c == b'/') {
                    self.pos += 1;
                }
                Ok(Laurent::constant(parse_rational(&self.src[start..self.pos])?))
            }
            _ => Err(self.err("expected a number, 't' or '('")),
        }
    }
}

/// Dense matrix of Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Laurent>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix { rows, cols, data: vec![Laurent::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Laurent::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Laurent>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged Laurent matrix".into()));
        }
        Ok(LaurentMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn parse_rows(rows: &[Vec<&str>]) -> Result<Self> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|s| Laurent::parse(s)).collect::<Result<_>>()).collect::<Result<_>>()?,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Laurent) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension("Laurent matrix product".into()));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Laurent::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * o.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Entrywise evaluation at `t = x`.
    pub fn eval(&self, x: &Rational) -> Result<Vec<Vec<Rational>>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).eval(x)).collect()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: &Laurent) {
        for j in 0..self.cols {
            let v = k * self.get(src, j);
            let cur = self.get(dst, j) + &v;
            self.set(dst, j, cur);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &Laurent) {
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            let cur = self.get(i, dst) + &v;
            self.set(i, dst, cur);
        }
    }

    fn scale_row(&mut self, i: usize, k: &Laurent) {
        for j in 0..self.cols {
            let v = k * self.get(i, j);
            self.set(i, j, v);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSnf {
    /// Normalized invariant factors, each dividing the next, zeros last.
    pub d: Vec<Laurent>,
    pub u: LaurentMatrix,
    pub v: LaurentMatrix,
}

pub fn laurent_snf(m: &LaurentMatrix) -> Result<LaurentSnf> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = LaurentMatrix::identity(rows);
    let mut v = LaurentMatrix::identity(cols);
    let steps = rows.min(cols);
    for t in 0..steps {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a.get(i, j).is_zero())
            .min_by_key(|&(i, j)| a.get(i, j).span());
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = a.get(i, t).div_rem(a.get(t, t))?;
                let nq = -&q;
                a.add_row(i, t, &nq);
                u.add_row(i, t, &nq);
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = a.get(t, j).div_rem(a.get(t, t))?;
                let nq = -&q;
                a.add_col(j, t, &nq);
                v.add_col(j, t, &nq);
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let cand = (t + 1..rows)
                    .map(|i| (i, t))
                    .chain((t + 1..cols).map(|j| (t, j)))
                    .filter(|&(i, j)| !a.get(i, j).is_zero())
                    .min_by_key(|&(i, j)| a.get(i, j).span());
                if let Some((i, j)) = cand {
                    if a.get(i, j).span() < a.get(t, t).span() {
                        if i != t {
                            a.swap_rows(t, i);
                            u.swap_rows(t, i);
                        } else {
                            a.swap_cols(t, j);
                            v.swap_cols(t, j);
                        }
                    }
                }
                continue;
            }
            let p = a.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !divides(&p, a.get(i, j))));
            match offender {
                Some(i) => {
                    let one = Laurent::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        let unit = a.get(t, t).normalizing_unit();
        a.scale_row(t, &unit);
        u.scale_row(t, &unit);
    }
    let d = (0..steps).map(|i| a.get(i, i).clone()).collect();
    Ok(LaurentSnf { d, u, v })
}

/// Whether `a | b`.
pub fn divides(a: &Laurent, b: &Laurent) -> bool {
    if a.is_zero() {
        return b.is_zero();
    }
    b.div_rem(a).map(|(_, r)| r.is_zero()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn one_minus_t() -> Laurent {
        Laurent::from_ints(&[1, -1])
    }

    #[test]
    fn arithmetic_and_display() {
        let p = one_minus_t();
        assert_eq!(p.to_string(), "-t + 1");
        assert_eq!(p.normalized().to_string(), "t - 1");
        assert_eq!((&p * &p).to_string(), "t^2 - 2*t + 1");
        assert_eq!(Laurent::parse("(1-t)^2").unwrap(), &p * &p);
        assert_eq!(Laurent::parse("t^-1 + 2/3 t").unwrap(), Laurent::new(-1, vec![rat(1, 1), rat(0, 1), rat(2, 3)]));
        assert_eq!(Laurent::parse("2 - t").unwrap().eval(&rat(1, 1)).unwrap(), rat(1, 1));
        assert!(Laurent::parse("1 +").is_err());
        assert!(Laurent::parse("(1-t)^-1").is_err());
    }

    #[test]
    fn division() {
        let a = Laurent::parse("t^3 - 1").unwrap();
        let b = Laurent::parse("t - 1").unwrap();
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, Laurent::parse("t^2 + t + 1").unwrap());
        let c = Laurent::parse("t^-2 + 3").unwrap();
        let (q, r) = c.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, c);
        assert!(r.span() < b.span());
    }

    fn check(m: &LaurentMatrix) -> LaurentSnf {
        let s = laurent_snf(m).unwrap();
        let prod = s.u.mul(m).unwrap().mul(&s.v).unwrap();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let want = if i == j && i < s.d.len() { s.d[i].clone() } else { Laurent::zero() };
                assert_eq!(prod.get(i, j), &want);
            }
        }
        for w in s.d.windows(2) {
            assert!(divides(&w[0], &w[1]));
        }
        s
    }

    #[test]
    fn snf_examples() {
        let p = one_minus_t();
        let s = check(&LaurentMatrix::from_rows(vec![vec![p.clone()]]).unwrap());
        assert_eq!(s.d, vec![p.normalized()]);
        let s = check(
            &LaurentMatrix::from_rows(vec![vec![Laurent::one(), Laurent::zero()], vec![Laurent::zero(), p.clone()]])
                .unwrap(),
        );
        assert_eq!(s.d, vec![Laurent::one(), p.normalized()]);
        let pp = &p * &p;
        let s = check(
            &LaurentMatrix::from_rows(vec![vec![p.clone(), p.clone()], vec![Laurent::zero(), pp.clone()]]).unwrap(),
        );
        assert_eq!(s.d, vec![p.normalized(), pp.normalized()]);
        // coprime diagonal needs the divisibility fix
        let q = Laurent::parse("t + 1").unwrap();
        let s = check(
            &LaurentMatrix::from_rows(vec![vec![p.clone(), Laurent::zero()], vec![Laurent::zero(), q.clone()]])
                .unwrap(),
        );
        assert_eq!(s.d, vec![Laurent::one(), (&p * &q).normalized()]);
    }
}
