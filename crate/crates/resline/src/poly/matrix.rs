//! Rectangular matrices of polynomials and exact determinants by
//! memoized cofactor expansion.

use std::collections::HashMap;

use super::multipoly::{Alphabet, MultiPoly};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

#[derive(Clone, Debug)]
pub struct PolyMatrix<C: ExactScalar> {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly<C>>,
}

impl<C: ExactScalar> PolyMatrix<C> {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> MultiPoly<C>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &MultiPoly<C> {
        &self.entries[r * self.cols + c]
    }

    /// New matrix with column `col` removed.
    pub fn delete_col(&self, col: usize) -> PolyMatrix<C> {
        assert!(col < self.cols);
        PolyMatrix::from_fn(self.rows, self.cols - 1, |r, c| {
            self.at(r, if c < col { c } else { c + 1 }).clone()
        })
    }

    /// New matrix with an extra row on top.
    pub fn with_top_row(&self, row: Vec<MultiPoly<C>>) -> PolyMatrix<C> {
        assert_eq!(row.len(), self.cols);
        PolyMatrix::from_fn(self.rows + 1, self.cols, |r, c| {
            if r == 0 {
                row[c].clone()
            } else {
                self.at(r - 1, c).clone()
            }
        })
    }

    fn alphabet(&self) -> Alphabet {
        self.entries
            .iter()
            .find(|e| e.max_var().is_some())
            .map(|e| e.alphabet())
            .unwrap_or_default()
    }

    /// Exact determinant by cofactor expansion. Rows are consumed in
    /// order of increasing term count (sparsest first) and minors over
    /// column subsets are memoized.
    pub fn det(&self) -> Result<MultiPoly<C>> {
        if self.rows != self.cols {
            return Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let alphabet = self.alphabet();
        if n == 0 {
            return Ok(MultiPoly::constant_in(C::one(), alphabet));
        }
        assert!(n <= 31, "cofactor expansion limited to 31x31");

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&r| (0..n).map(|c| self.at(r, c).nterms()).sum::<usize>());
        let sign = permutation_sign(&order);

        let mut memo: HashMap<u32, MultiPoly<C>> = HashMap::new();
        let full: u32 = (1 << n) - 1;
        let det = self.minor(&order, full, &mut memo, alphabet);
        Ok(if sign < 0 { -det } else { det })
    }

    fn minor(
        &self,
        order: &[usize],
        colmask: u32,
        memo: &mut HashMap<u32, MultiPoly<C>>,
        alphabet: Alphabet,
    ) -> MultiPoly<C> {
        if colmask == 0 {
            return MultiPoly::constant_in(C::one(), alphabet);
        }
        if let Some(hit) = memo.get(&colmask) {
            return hit.clone();
        }
        let depth = self.rows - colmask.count_ones() as usize;
        let row = order[depth];
        let mut acc = MultiPoly::zero_in(alphabet);
        let mut position = 0;
        for col in 0..self.cols {
            if colmask & (1 << col) == 0 {
                continue;
            }
            let entry = self.at(row, col);
            if !num::Zero::is_zero(entry) {
                let sub = self.minor(order, colmask & !(1 << col), memo, alphabet);
                let term = entry.mul_ref(&sub);
                acc = if position % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                };
            }
            position += 1;
        }
        memo.insert(colmask, acc.clone());
        acc
    }
}

fn permutation_sign(perm: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}
