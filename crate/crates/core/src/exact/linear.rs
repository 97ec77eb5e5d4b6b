//! Dense linear algebra over `Q` by fraction-exact Gaussian elimination.

use num_traits::{One, Zero};

use super::Rat;

pub type Matrix = Vec<Vec<Rat>>;

/// Row echelon form in place; returns the pivot columns.
fn echelon(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rat>]) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut a = m.to_vec();
    echelon(&mut a, ncols).len()
}

/// Some solution of `a x = b`, with free variables set to zero, or `None`.
pub fn solve_rational(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.len(), b.len());
    let ncols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug[row][ncols].clone();
    }
    Some(x)
}

/// Determinant of a square matrix.
pub fn determinant(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else { return Rat::zero() };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            let pivot_row = a[col].clone();
            for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                *x -= &f * y;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rank_and_determinant() {
        let a = m(&[&[1, 1, 0, -2], &[0, 0, 1, 1]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(determinant(&m(&[&[0, -2], &[1, 1]])), rat(2));
    }

    #[test]
    fn solves_consistent_and_rejects_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve_rational(&a, &[rat(3), rat(1)]).unwrap(), vec![rat(2), rat(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(solve_rational(&b, &[rat(1), rat(3)]).is_none());
    }
}
