//! Fraction-free (Bareiss) elimination over Z, used for null spaces and
//! affine solution sets of small rational systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact_arith::Rational;

/// Dense rational matrix stored row-major.
pub type Matrix = Vec<Vec<Rational>>;

/// Row echelon form with integer entries, produced by Bareiss elimination.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    /// Pivot column of each of the leading `pivots.len()` rows.
    pub pivots: Vec<usize>,
}

/// Scales each row by the lcm of its denominators.
pub(crate) fn clear_denominators(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Bareiss elimination; pivots are searched only among the first
/// `pivot_cols` columns (the rest ride along, e.g. a right-hand side).
pub(crate) fn bareiss(mut a: Vec<Vec<BigInt>>, pivot_cols: usize) -> Echelon {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols.min(n) {
        if r == m {
            break;
        }
        let Some(i) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, i);
        for i in r + 1..m {
            for k in c + 1..n {
                let v = &a[r][c] * &a[i][k] - &a[i][c] * &a[r][k];
                // Exact: every entry is a minor of the original matrix.
                a[i][k] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: a, pivots }
}

impl Echelon {
    /// Back substitution with the free variables set to `free_values`
    /// (indexed by column, entries at pivot columns ignored) and right-hand
    /// side taken from column `rhs_col` if given.
    pub fn back_substitute(
        &self,
        ncols: usize,
        free_values: &[Rational],
        rhs_col: Option<usize>,
    ) -> Vec<Rational> {
        let mut x: Vec<Rational> = free_values.to_vec();
        x.resize(ncols, Rational::zero());
        for (r, &c) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[r];
            let mut acc = match rhs_col {
                Some(j) => Rational::from_integer(row[j].clone()),
                None => Rational::zero(),
            };
            for k in c + 1..ncols {
                if !row[k].is_zero() && !x[k].is_zero() {
                    acc -= &x[k] * Rational::from_integer(row[k].clone());
                }
            }
            x[c] = acc / Rational::from_integer(row[c].clone());
        }
        x
    }

    pub fn free_columns(&self, ncols: usize) -> Vec<usize> {
        (0..ncols).filter(|c| !self.pivots.contains(c)).collect()
    }
}
