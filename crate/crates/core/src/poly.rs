//! Sparse multivariate polynomials over an exact field.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grassmann::combinations;
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<F: Field> {
    field: F,
    nvars: usize,
    /// exponent vector -> nonzero coefficient
    terms: BTreeMap<Vec<u32>, F::Elem>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        Polynomial { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(field: F, coeffs: &[F::Elem]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(field, n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(field: F, nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, F::Elem)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            debug_assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F::Elem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn add_term(&mut self, exp: Vec<u32>, c: F::Elem) {
        let f = &self.field;
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(old) => {
                let s = f.add(old, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&exp);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), self.field.mul(x, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, f.mul(c1, c2));
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term = f.mul(&term, x);
                }
            }
            acc = f.add(&acc, &term);
        }
        acc
    }

    /// Restriction of the coefficient map to another field.
    pub fn map_coeffs<G: Field>(&self, target: G, mut conv: impl FnMut(&F::Elem) -> Option<G::Elem>) -> Option<Polynomial<G>> {
        let mut out = Polynomial::zero(target, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), conv(c)?);
        }
        Some(out)
    }
}

/// Determinant of a square matrix of polynomials by Leibniz expansion.
pub fn determinant<F: Field>(field: &F, nvars: usize, m: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    let n = m.len();
    let mut total = Polynomial::zero(field.clone(), nvars);
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p, sign| {
        let mut term = Polynomial::constant(field.clone(), nvars, field.from_i64(sign));
        for (i, &j) in p.iter().enumerate() {
            if m[i][j].is_zero() {
                return;
            }
            term = term.mul(&m[i][j]);
        }
        total = total.add(&term);
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize], i64)) {
    if k == p.len() {
        visit(p, permutation_sign(p));
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, visit);
        p.swap(k, i);
    }
}

pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Matrix of linear forms `sum_b x_b * coeff[b]`, given one coefficient matrix per variable.
pub fn linear_matrix<F: Field>(field: &F, per_var: &[Matrix<F>]) -> Vec<Vec<Polynomial<F>>> {
    let nvars = per_var.len();
    let (r, c) = per_var.first().map_or((0, 0), |m| (m.rows(), m.cols()));
    (0..r)
        .map(|i| {
            (0..c)
                .map(|j| {
                    let coeffs: Vec<F::Elem> = per_var.iter().map(|m| m.get(i, j).clone()).collect();
                    let p = Polynomial::linear(field.clone(), &coeffs);
                    debug_assert_eq!(p.nvars(), nvars);
                    p
                })
                .collect()
        })
        .collect()
}

/// The distinct nonzero `size x size` minors of the linear matrix
/// `sum_b x_b * per_var[b]`, refusing to expand more than `budget` of them.
pub fn linear_minors<F: Field>(field: &F, per_var: &[Matrix<F>], size: usize, budget: u128) -> Result<Vec<Polynomial<F>>> {
    let nvars = per_var.len();
    let (r, c) = per_var.first().map_or((0, 0), |m| (m.rows(), m.cols()));
    let row_sets = combinations(r, size);
    let col_sets = combinations(c, size);
    let needed = row_sets.len() as u128 * col_sets.len() as u128;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, cap: budget });
    }
    let m = linear_matrix(field, per_var);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for rows in &row_sets {
        for cols in &col_sets {
            let sub: Vec<Vec<Polynomial<F>>> =
                rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect();
            let d = determinant(field, nvars, &sub);
            if d.is_zero() {
                continue;
            }
            let key: Vec<(Vec<u32>, F::Elem)> = d.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
            if seen.insert(key) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                    .collect();
                let cs = self.field.elem_to_string(c);
                if mono.is_empty() {
                    cs
                } else if self.field.is_one(c) {
                    mono.join("*")
                } else {
                    format!("{cs}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rationals};

    #[test]
    fn determinant_of_linear_two_by_two() {
        let q = Rationals;
        let x = Polynomial::linear(q, &[rat(1, 1), rat(0, 1)]);
        let y = Polynomial::linear(q, &[rat(0, 1), rat(1, 1)]);
        // det [[x, y], [y, x]] = x^2 - y^2
        let d = determinant(&q, 2, &[vec![x.clone(), y.clone()], vec![y.clone(), x.clone()]]);
        assert_eq!(d.evaluate(&[rat(3, 1), rat(2, 1)]), rat(5, 1));
        assert!(d.is_homogeneous());
        assert_eq!(d.total_degree(), Some(2));
    }

    #[test]
    fn cancellation_removes_terms() {
        let q = Rationals;
        let x = Polynomial::linear(q, &[rat(1, 1)]);
        assert!(x.add(&x.scale(&rat(-1, 1))).is_zero());
    }
}
