//! The Chow ring of the Grassmannian `G(k,n)` in the Schubert basis.
//!
//! A class is a rational combination of Schubert cycles `sigma_lambda`, with
//! `lambda` inside the `(k+1) x (n-k)` box. Multiplication by a special class
//! `sigma_i` is the Pieri rule; general products expand the right factor by
//! the Giambelli determinant in special classes and apply Pieri repeatedly.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{is_nonneg_integer, parse_rational, Field, Rationals};
use crate::poly::permutation_sign;

/// A partition, weakly decreasing with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameters(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        self.0.len() <= rows && self.0.iter().all(|&p| p <= cols)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// The Grassmannian `G(k,n)` of projective `k`-planes in `P^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grassmannian {
    pub k: usize,
    pub n: usize,
}

impl Grassmannian {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::InvalidParameters(format!("G({k},{n}) needs k < n")));
        }
        Ok(Grassmannian { k, n })
    }
    pub fn box_rows(&self) -> usize {
        self.k + 1
    }
    pub fn box_cols(&self) -> usize {
        self.n - self.k
    }
    pub fn dim(&self) -> usize {
        (self.k + 1) * (self.n - self.k)
    }

    /// All partitions fitting the box, in graded lexicographic order.
    pub fn box_partitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition::new(cur.clone()).expect("decreasing by construction"));
            if cur.len() == rows {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        rec(self.box_rows(), self.box_cols(), &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.cmp(a)));
        out
    }
}

/// A rational combination of Schubert classes on one Grassmannian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    grass: Grassmannian,
    terms: BTreeMap<Partition, BigRational>,
}

impl ChowClass {
    pub fn zero(grass: Grassmannian) -> Self {
        ChowClass { grass, terms: BTreeMap::new() }
    }

    pub fn one(grass: Grassmannian) -> Self {
        Self::schubert(grass, Partition::empty()).expect("empty partition fits")
    }

    pub fn schubert(grass: Grassmannian, lambda: Partition) -> Result<Self> {
        let mut c = Self::zero(grass);
        c.add_term(lambda, BigRational::one())?;
        Ok(c)
    }

    /// The special class `sigma_i = c_i(Q)`.
    pub fn special(grass: Grassmannian, i: usize) -> Result<Self> {
        if i > grass.box_cols() {
            return Err(Error::DegreeOutOfRange { degree: i, max: grass.box_cols() });
        }
        Self::schubert(grass, Partition::new(vec![i])?)
    }

    /// Total Chern class `c(Q) = 1 + sigma_1 + ... + sigma_{n-k}`.
    pub fn chern_q(grass: Grassmannian) -> Self {
        let mut c = Self::zero(grass);
        for i in 0..=grass.box_cols() {
            c.add_term(Partition::new(vec![i]).expect("single part"), BigRational::one())
                .expect("special partitions fit");
        }
        c
    }

    pub fn grassmannian(&self) -> Grassmannian {
        self.grass
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> BigRational {
        self.terms.get(lambda).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, lambda: Partition, c: BigRational) -> Result<()> {
        if !lambda.fits(self.grass.box_rows(), self.grass.box_cols()) {
            return Err(Error::InvalidParameters(format!(
                "{lambda} does not fit the {}x{} box of G({},{})",
                self.grass.box_rows(),
                self.grass.box_cols(),
                self.grass.k,
                self.grass.n
            )));
        }
        self.add_in_box(lambda, c);
        Ok(())
    }

    fn add_in_box(&mut self, lambda: Partition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(lambda).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_in_box(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.grass);
        for (l, x) in &self.terms {
            out.add_in_box(l.clone(), x * c);
        }
        out
    }

    /// Homogeneous component of codimension `d`.
    pub fn component(&self, d: usize) -> Self {
        ChowClass {
            grass: self.grass,
            terms: self.terms.iter().filter(|(l, _)| l.size() == d).map(|(l, c)| (l.clone(), c.clone())).collect(),
        }
    }

    pub fn truncate_above(&self, d: usize) -> Self {
        ChowClass {
            grass: self.grass,
            terms: self.terms.iter().filter(|(l, _)| l.size() <= d).map(|(l, c)| (l.clone(), c.clone())).collect(),
        }
    }

    /// `Some(d)` when every term has codimension `d`; the zero class has none.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Partition::size);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn has_nonneg_integer_coeffs(&self) -> bool {
        self.terms.values().all(is_nonneg_integer)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.grass != other.grass {
            return Err(Error::InvalidParameters(format!(
                "classes live on G({},{}) and G({},{})",
                self.grass.k, self.grass.n, other.grass.k, other.grass.n
            )));
        }
        Ok(())
    }

    /// Terms in graded order: by codimension, then reverse-lexicographic partition.
    pub fn sorted_terms(&self) -> Vec<(Partition, BigRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(l, c)| (l.clone(), c.clone())).collect();
        v.sort_by(|(a, _), (b, _)| a.size().cmp(&b.size()).then_with(|| b.cmp(a)));
        v
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(l, c)| json!({"partition": l.parts(), "coeff": Rationals.elem_to_string(&c)}))
                .collect(),
        )
    }

    pub fn from_json(grass: Grassmannian, v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Schema("class must be a JSON list".into()))?;
        let mut c = Self::zero(grass);
        for t in arr {
            let parts = t
                .get("partition")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Schema("term needs a \"partition\" list".into()))?
                .iter()
                .map(|x| x.as_u64().map(|u| u as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Schema("partition parts must be nonnegative integers".into()))?;
            let coeff = match t.get("coeff") {
                Some(Value::String(s)) => parse_rational(s)?,
                Some(Value::Number(n)) => Rationals.from_i64(
                    n.as_i64().ok_or_else(|| Error::Schema("coeff must be an integer or \"p/q\"".into()))?,
                ),
                _ => return Err(Error::Schema("term needs a \"coeff\"".into())),
            };
            c.add_term(Partition::new(parts)?, coeff)?;
        }
        Ok(c)
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(l, c)| {
                let name = if l.is_empty() { "1".to_string() } else { format!("s{l}") };
                if c.is_one() {
                    name
                } else {
                    format!("{}*{name}", Rationals.elem_to_string(&c))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// All `mu` with `mu / lambda` a horizontal strip of size `i` inside the box.
fn horizontal_strips(lambda: &Partition, i: usize, rows: usize, cols: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    fn rec(
        lambda: &Partition,
        row: usize,
        left: usize,
        rows: usize,
        cols: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if row == rows {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("interlacing keeps order"));
            }
            return;
        }
        let lo = lambda.part(row);
        // mu_row may not pass the previous row of lambda (strip condition) or the box
        let hi = if row == 0 { cols } else { lambda.part(row - 1) }.min(cols);
        if lo > hi {
            return;
        }
        for m in lo..=hi.min(lo + left) {
            cur.push(m);
            rec(lambda, row + 1, left - (m - lo), rows, cols, cur, out);
            cur.pop();
        }
    }
    rec(lambda, 0, i, rows, cols, &mut Vec::new(), &mut out);
    out
}

/// Pieri rule: `c * sigma_i`, dropping partitions that leave the box.
pub fn pieri(c: &ChowClass, i: usize) -> Result<ChowClass> {
    let g = c.grass;
    if i > g.box_cols() {
        return Err(Error::DegreeOutOfRange { degree: i, max: g.box_cols() });
    }
    Ok(pieri_unchecked(c, i))
}

/// Like [`pieri`], but `sigma_i` with `i > n-k` acts as zero (it lies in the
/// ideal that cuts the ring down to the box).
fn pieri_unchecked(c: &ChowClass, i: usize) -> ChowClass {
    let g = c.grass;
    let mut out = ChowClass::zero(g);
    if i > g.box_cols() {
        return out;
    }
    for (lambda, coeff) in &c.terms {
        for mu in horizontal_strips(lambda, i, g.box_rows(), g.box_cols()) {
            out.add_in_box(mu, coeff.clone());
        }
    }
    out
}

/// Giambelli: `sigma_mu = det(sigma_{mu_i - i + j})` as a signed list of
/// special-class index sequences.
pub fn giambelli_expansion(mu: &Partition) -> Vec<(i64, Vec<usize>)> {
    let l = mu.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..l).collect();
    fn rec(mu: &Partition, perm: &mut Vec<usize>, k: usize, out: &mut Vec<(i64, Vec<usize>)>) {
        if k == perm.len() {
            let mut idx = Vec::with_capacity(perm.len());
            for (i, &j) in perm.iter().enumerate() {
                let e = mu.part(i) as i64 - i as i64 + j as i64;
                if e < 0 {
                    return;
                }
                if e > 0 {
                    idx.push(e as usize);
                }
            }
            out.push((permutation_sign(perm), idx));
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(mu, perm, k + 1, out);
            perm.swap(k, i);
        }
    }
    rec(mu, &mut perm, 0, &mut out);
    out
}

/// Ring product in the Chow ring, truncated to the box.
pub fn multiply(a: &ChowClass, b: &ChowClass) -> Result<ChowClass> {
    a.check_same(b)?;
    let mut out = ChowClass::zero(a.grass);
    for (mu, cb) in &b.terms {
        for (sign, seq) in giambelli_expansion(mu) {
            let mut cur = a.clone();
            for &i in &seq {
                cur = pieri_unchecked(&cur, i);
                if cur.is_zero() {
                    break;
                }
            }
            let factor = cb * BigRational::from_integer(sign.into());
            out = out.add(&cur.scale(&factor))?;
        }
    }
    Ok(out)
}

pub fn power(a: &ChowClass, e: usize) -> Result<ChowClass> {
    let mut acc = ChowClass::one(a.grass);
    for _ in 0..e {
        acc = multiply(&acc, a)?;
    }
    Ok(acc)
}

/// Expected rank of a Steiner bundle of type `(s,t)` on `G(k,n)`: `t - s(k+1)`.
pub fn bundle_rank(k: usize, s: usize, t: usize) -> i64 {
    t as i64 - (s * (k + 1)) as i64
}

/// Degree-`(r+1)` part of `c(Q)^s` with `r = t - s(k+1)`: the class of the
/// locus where a generic map `S (x) U -> T (x) O` fails to be injective.
pub fn porteous_class(k: usize, n: usize, s: usize, t: usize) -> Result<ChowClass> {
    let g = Grassmannian::new(k, n)?;
    let r = bundle_rank(k, s, t);
    if r < 0 {
        return Err(Error::InvalidParameters(format!(
            "t = {t} < s(k+1) = {}: negative rank",
            s * (k + 1)
        )));
    }
    let target = r as usize + 1;
    if target > g.dim() {
        return Ok(ChowClass::zero(g));
    }
    let mut c = ChowClass::one(g);
    for _ in 0..s {
        let mut next = ChowClass::zero(g);
        for i in 0..=g.box_cols().min(target) {
            next = next.add(&pieri_unchecked(&c, i))?;
        }
        c = next.truncate_above(target);
    }
    Ok(c.component(target))
}

/// Lower bound on the rank of a Steiner bundle of type `(s, *)` on `G(k,n)`:
/// `min((k+1)(n-k), (n-k) s)`.
pub fn rank_bound(k: usize, n: usize, s: usize) -> Result<usize> {
    if k >= n {
        return Err(Error::InvalidParameters(format!("G({k},{n}) needs k < n")));
    }
    if s == 0 {
        return Err(Error::InvalidParameters("s must be at least 1".into()));
    }
    Ok(((k + 1) * (n - k)).min((n - k) * s))
}
