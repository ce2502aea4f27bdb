use alloc::vec::Vec;

use num_traits::Zero;

use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    Inconsistent,
    /// Consistent, with the given number of free variables.
    Underdetermined(usize),
}

/// Solves `rows * x = rhs` exactly by Gauss-Jordan elimination. Any number of
/// equations is accepted; every row must have `unknowns` entries.
pub fn solve_linear(rows: &[Vec<Rational>], rhs: &[Rational], unknowns: usize) -> LinearSolution {
    assert_eq!(rows.len(), rhs.len(), "row count mismatch");
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), unknowns, "row width mismatch");
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(found) = (pivot_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, found);
        let inv = m[pivot_row][col].recip();
        for entry in m[pivot_row].iter_mut() {
            *entry *= &inv;
        }
        let pivot = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (entry, p) in row.iter_mut().zip(&pivot) {
                    *entry -= &factor * p;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[unknowns].is_zero()) {
        return LinearSolution::Inconsistent;
    }
    if pivots.len() < unknowns {
        return LinearSolution::Underdetermined(unknowns - pivots.len());
    }
    LinearSolution::Unique(m.into_iter().take(unknowns).map(|mut r| r.pop().unwrap()).collect())
}
