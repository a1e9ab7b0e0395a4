//! Exact solution of square rational linear systems.
//!
//! Each row is scaled to integers by the lcm of its denominators, then the
//! integer system goes through fraction-free (Bareiss) elimination with the
//! largest-magnitude entry as pivot. Every division in the elimination is
//! exact, so intermediate entries stay bounded by minors of the input.
//! Back substitution produces the rational solution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Solves `matrix * x = rhs` exactly.
pub fn solve_linear(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>> {
    let n = matrix.len();
    if rhs.len() != n || matrix.iter().any(|row| row.len() != n) {
        return Err(Error::NonSquareSystem {
            rows: n,
            cols: matrix.first().map_or(0, Vec::len),
            rhs: rhs.len(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    // augmented integer rows [a_0 .. a_{n-1} | b]
    let mut rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| integer_row(row.iter().chain(std::iter::once(b))))
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !rows[i][k].is_zero())
            .max_by(|&i, &j| rows[i][k].abs().cmp(&rows[j][k].abs()).then(j.cmp(&i)))
            .ok_or(Error::SingularSystem)?;
        rows.swap(k, pivot);

        let (upper, lower) = rows.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..=n {
                let num = &row[j] * &pivot_row[k] - &factor * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero());
                row[j] = num / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = rows[k][k].clone();
    }

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(rows[i][n].clone());
        for j in i + 1..n {
            if !rows[i][j].is_zero() {
                acc -= Rational::from_integer(rows[i][j].clone()) * &x[j];
            }
        }
        x[i] = acc / Rational::from_integer(rows[i][i].clone());
    }
    Ok(x)
}

fn integer_row<'a>(entries: impl Iterator<Item = &'a Rational> + Clone) -> Vec<BigInt> {
    let scale = entries
        .clone()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    entries
        .map(|r| r.numer() * (&scale / r.denom()))
        .collect()
}
