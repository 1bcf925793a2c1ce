//! Smith normal form over the integers.
//!
//! Elimination runs on `i64` with checked arithmetic and restarts on
//! `BigInt` when an intermediate overflows, so results are always exact.
//! The pivot is the smallest nonzero entry by absolute value in the
//! remaining block; quotients are rounded to nearest to keep the
//! transformation matrices small.

use num_bigint::BigInt;

use super::matrix::{Coeff, Matrix};
use crate::error::{Error, Result};

/// `left * a * right = diagonal` with `left`, `right` unimodular and the
/// diagonal entries `d_1 | d_2 | ... | d_rank` positive.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Matrix<i64>,
    pub left: Matrix<i64>,
    pub left_inv: Matrix<i64>,
    pub right: Matrix<i64>,
    pub right_inv: Matrix<i64>,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | ... | d_rank`.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.diagonal[(i, i)]).collect()
    }

    /// Checks `a = left_inv * diagonal * right_inv` and that the
    /// transformation pairs are mutually inverse.
    pub fn verify(&self, a: &Matrix<i64>) -> bool {
        let widen = |m: &Matrix<i64>| Matrix::<BigInt>::from_i64(m);
        let (l, li, r, ri, d) = (
            widen(&self.left),
            widen(&self.left_inv),
            widen(&self.right),
            widen(&self.right_inv),
            widen(&self.diagonal),
        );
        li.mul(&d).mul(&ri) == widen(a)
            && l.mul(&li) == Matrix::identity(a.rows())
            && r.mul(&ri) == Matrix::identity(a.cols())
            && (1..self.rank).all(|i| self.diagonal[(i, i)] % self.diagonal[(i - 1, i - 1)] == 0)
    }
}

pub fn smith_normal_form(a: &Matrix<i64>) -> Result<SmithForm> {
    let out = match Elimination::<i64>::run(a.clone()) {
        Some(e) => e.finish_i64(),
        None => {
            log::debug!("i64 overflow in SNF of {}x{} matrix, retrying with BigInt", a.rows(), a.cols());
            Elimination::<BigInt>::run(Matrix::from_i64(a)).expect("BigInt elimination cannot overflow").finish_i64()
        }
    }?;
    debug_assert!(out.verify(a), "Smith normal form failed its factorization check");
    Ok(out)
}

struct Elimination<T> {
    a: Matrix<T>,
    left: Matrix<T>,
    left_inv: Matrix<T>,
    right: Matrix<T>,
    right_inv: Matrix<T>,
    rank: usize,
}

/// Nearest-integer quotient `round(x / y)`.
fn round_quotient<T: Coeff>(x: &T, y: &T) -> T {
    let q = x.div_floor(y);
    let r = x.clone() - q.clone() * y.clone();
    let two = T::one() + T::one();
    if r.abs() * two > y.abs() {
        q + T::one()
    } else {
        q
    }
}

impl<T: Coeff> Elimination<T> {
    fn run(a: Matrix<T>) -> Option<Self> {
        let (n, m) = (a.rows(), a.cols());
        let mut e = Elimination {
            a,
            left: Matrix::identity(n),
            left_inv: Matrix::identity(n),
            right: Matrix::identity(m),
            right_inv: Matrix::identity(m),
            rank: 0,
        };
        e.reduce()?;
        Some(e)
    }

    // row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &T) -> Option<()> {
        for j in 0..self.a.cols() {
            let v = self.a[(dst, j)].checked_add(&c.checked_mul(&self.a[(src, j)])?)?;
            self.a[(dst, j)] = v;
        }
        for j in 0..self.left.cols() {
            let v = self.left[(dst, j)].checked_add(&c.checked_mul(&self.left[(src, j)])?)?;
            self.left[(dst, j)] = v;
        }
        // left_inv: column src -= c * column dst
        for i in 0..self.left_inv.rows() {
            let v = self.left_inv[(i, src)].checked_sub(&c.checked_mul(&self.left_inv[(i, dst)])?)?;
            self.left_inv[(i, src)] = v;
        }
        Some(())
    }

    // col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &T) -> Option<()> {
        for i in 0..self.a.rows() {
            let v = self.a[(i, dst)].checked_add(&c.checked_mul(&self.a[(i, src)])?)?;
            self.a[(i, dst)] = v;
        }
        for i in 0..self.right.rows() {
            let v = self.right[(i, dst)].checked_add(&c.checked_mul(&self.right[(i, src)])?)?;
            self.right[(i, dst)] = v;
        }
        // right_inv: row src -= c * row dst
        for j in 0..self.right_inv.cols() {
            let v = self.right_inv[(src, j)].checked_sub(&c.checked_mul(&self.right_inv[(dst, j)])?)?;
            self.right_inv[(src, j)] = v;
        }
        Some(())
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.left.swap_rows(x, y);
        self.left_inv.swap_cols(x, y);
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.right.swap_cols(x, y);
        self.right_inv.swap_rows(x, y);
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.a.cols() {
            self.a[(r, j)] = -self.a[(r, j)].clone();
        }
        for j in 0..self.left.cols() {
            self.left[(r, j)] = -self.left[(r, j)].clone();
        }
        for i in 0..self.left_inv.rows() {
            self.left_inv[(i, r)] = -self.left_inv[(i, r)].clone();
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if self.a[b].abs() <= v.abs() => {}
                    _ => {
                        best = Some((i, j));
                        if v.abs().is_one() {
                            return best;
                        }
                    }
                }
            }
        }
        best
    }

    fn reduce(&mut self) -> Option<()> {
        let n = self.a.rows().min(self.a.cols());
        for t in 0..n {
            let Some((pi, pj)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                // Clear column t below the pivot.
                let mut dirty = false;
                for i in t + 1..self.a.rows() {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = round_quotient(&self.a[(i, t)], &self.a[(t, t)]);
                    self.add_row(i, t, &(-q))?;
                    if !self.a[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    let i = (t + 1..self.a.rows())
                        .filter(|&i| !self.a[(i, t)].is_zero())
                        .min_by_key(|&i| self.a[(i, t)].abs())?;
                    self.swap_rows(t, i);
                    continue;
                }
                // Clear row t right of the pivot.
                for j in t + 1..self.a.cols() {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = round_quotient(&self.a[(t, j)], &self.a[(t, t)]);
                    self.add_col(j, t, &(-q))?;
                    if !self.a[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    let j = (t + 1..self.a.cols())
                        .filter(|&j| !self.a[(t, j)].is_zero())
                        .min_by_key(|&j| self.a[(t, j)].abs())?;
                    self.swap_cols(t, j);
                    continue;
                }
                // Divisibility: pull a non-multiple into row t and repeat.
                let p = self.a[(t, t)].clone();
                let bad = (t + 1..self.a.rows())
                    .find(|&i| (t + 1..self.a.cols()).any(|j| !self.a[(i, j)].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &T::one())?,
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            self.rank = t + 1;
        }
        Some(())
    }

    fn finish_i64(self) -> Result<SmithForm> {
        let conv = |m: &Matrix<T>| m.to_i64().ok_or(Error::CoefficientOverflow);
        Ok(SmithForm {
            diagonal: conv(&self.a)?,
            left: conv(&self.left)?,
            left_inv: conv(&self.left_inv)?,
            right: conv(&self.right)?,
            right_inv: conv(&self.right_inv)?,
            rank: self.rank,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Matrix<i64> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_rows(r, c, rows.iter().map(|x| x.to_vec()).collect())
    }

    #[test]
    fn identity_is_fixed() {
        let s = smith_normal_form(&Matrix::identity(3)).unwrap();
        assert_eq!(s.diagonal, Matrix::identity(3));
        assert_eq!(s.invariant_factors(), vec![1, 1, 1]);
    }

    #[test]
    fn two_by_two_example() {
        // det = -8 and the gcd of the entries is 2, so diag(2, 4).
        let a = mat(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.invariant_factors(), vec![2, 4]);
        assert!(s.verify(&a));
    }

    #[test]
    fn zero_and_empty_matrices() {
        let s = smith_normal_form(&Matrix::zeros(2, 3)).unwrap();
        assert_eq!(s.rank, 0);
        assert!(s.diagonal.is_zero());
        let s = smith_normal_form(&Matrix::zeros(0, 4)).unwrap();
        assert_eq!(s.rank, 0);
        assert_eq!(s.right.rows(), 4);
        let s = smith_normal_form(&Matrix::zeros(3, 0)).unwrap();
        assert_eq!(s.left.rows(), 3);
    }

    #[test]
    fn divisibility_chain_is_enforced() {
        // diag(2, 3) is not in normal form; the result must be diag(1, 6).
        let a = mat(&[&[2, 0], &[0, 3]]);
        assert_eq!(smith_normal_form(&a).unwrap().invariant_factors(), vec![1, 6]);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let a = mat(&[&[big, big - 1], &[big - 1, big - 3]]);
        let s = smith_normal_form(&a).unwrap();
        assert!(s.verify(&a));
        // det = big*(big-3) - (big-1)^2 = -big - 1
        let d = s.invariant_factors();
        assert_eq!(d[0], 1);
        assert_eq!(d[1] as i128, (big as i128) + 1);
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn factorization_holds(rows in 0usize..6, cols in 0usize..6, seed in prop::collection::vec(-4i64..5, 36)) {
            let entries: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
            let a = Matrix::from_rows(rows, cols, entries);
            let s = smith_normal_form(&a).unwrap();
            prop_assert!(s.verify(&a));
            for i in 0..rows {
                for j in 0..cols {
                    if i != j || i >= s.rank {
                        prop_assert_eq!(s.diagonal[(i, j)], 0);
                    } else {
                        prop_assert!(s.diagonal[(i, j)] > 0);
                    }
                }
            }
        }
    }
}
