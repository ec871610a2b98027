//! Points of Grassmannians over `F_p`, enumerated by Schubert (echelon) cells.

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{Matrix, Subspace};

/// Default cap on the number of points any single enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 2_000_000;

/// Number of `m`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, m: usize, q: u64) -> u128 {
    if m > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..m {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// All `m`-dimensional subspaces of `F_p^n`, one per echelon cell assignment.
///
/// Cells are visited in lexicographic order of pivot sets, and within a cell
/// free entries count up like an odometer (last position fastest), so the
/// output order is deterministic.
pub fn subspaces(f: PrimeField, n: usize, m: usize, budget: u128) -> Result<Vec<Subspace<PrimeField>>> {
    let needed = gaussian_binomial(n, m, f.p());
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, cap: budget });
    }
    let mut out = Vec::with_capacity(needed as usize);
    for pivots in combinations(n, m) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| ((c + 1)..n).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
            .collect();
        let mut base = Matrix::zeros(f, m, n);
        for (i, &c) in pivots.iter().enumerate() {
            base.set(i, c, 1);
        }
        let mut digits = vec![0u64; free.len()];
        loop {
            let mut mat = base.clone();
            for (&(i, j), &d) in free.iter().zip(&digits) {
                mat.set(i, j, d);
            }
            out.push(Subspace::from_matrix(mat));
            if !odometer_step(&mut digits, f.p()) {
                break;
            }
        }
    }
    Ok(out)
}

/// Points of `P^{n-1}(F_p)` as normalized vectors of length `n`.
pub fn projective_points(f: PrimeField, n: usize, budget: u128) -> Result<Vec<Vec<u64>>> {
    Ok(subspaces(f, n, 1, budget)?
        .into_iter()
        .map(|s| s.basis_vec(0).to_vec())
        .collect())
}

/// Advances a base-`p` counter; returns false after wrapping to all zeros.
fn odometer_step(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// All increasing `m`-subsets of `0..n`, lexicographically.
pub fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..m).rev().find(|&i| idx[i] < n - m + i) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Uniformly random `m`-dimensional subspace of `F^n`, by rejection of
/// rank-deficient random matrices.
pub fn random_subspace<F: Field, R: rand::Rng>(
    f: &F,
    n: usize,
    m: usize,
    rng: &mut R,
    mut sample: impl FnMut(&mut R) -> F::Elem,
) -> Subspace<F> {
    assert!(m <= n, "subspace dimension exceeds ambient");
    loop {
        let data = (0..n * m).map(|_| sample(rng)).collect();
        let mat = Matrix::new(f.clone(), m, n, data).expect("sized data");
        if mat.rank() == m {
            return Subspace::from_matrix(mat);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn gaussian_binomial_small_values() {
        assert_eq!(gaussian_binomial(3, 1, 7), 57);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(4, 2, 5), 806);
        assert_eq!(gaussian_binomial(3, 0, 5), 1);
        assert_eq!(gaussian_binomial(2, 3, 5), 0);
    }

    #[test]
    fn enumeration_matches_gaussian_binomial_and_is_duplicate_free() {
        for p in [2, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for n in 1..=4 {
                for m in 0..=n {
                    let all = subspaces(f, n, m, DEFAULT_BUDGET).unwrap();
                    assert_eq!(all.len() as u128, gaussian_binomial(n, m, p), "G({m},{n}) over F_{p}");
                    let set: HashSet<_> = all.iter().cloned().collect();
                    assert_eq!(set.len(), all.len());
                    assert!(all.iter().all(|s| s.dim() == m));
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = PrimeField::new(5).unwrap();
        assert!(matches!(
            subspaces(f, 4, 2, 100),
            Err(Error::BudgetExceeded { needed: 806, cap: 100 })
        ));
    }

    #[test]
    fn combinations_in_lex_order() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
