//! Exact solution of sparse square linear systems over [`Scalar`].
//!
//! The system is split into the connected components of its row/column
//! incidence graph; each component is solved densely by fraction-free
//! (Bareiss) elimination followed by back-substitution.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse vector: `(index, value)` pairs with nonzero values.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Solves `A x = b` for every right-hand side in `rhs`.
///
/// `columns[j]` holds the nonzero entries `(row, value)` of column `j` of the
/// `n x n` matrix `A`. Fails with [`Error::Singular`] when `A` is singular.
pub fn solve(n: usize, columns: &[SparseVec], rhs: &[SparseVec]) -> Result<Vec<SparseVec>> {
    assert_eq!(columns.len(), n, "matrix must be square");
    let mut uf = UnionFind::new(2 * n);
    for (j, col) in columns.iter().enumerate() {
        for (r, v) in col {
            assert!(*r < n, "row index out of range");
            if !v.is_zero() {
                uf.union(*r, n + j);
            }
        }
    }
    let mut comp_rows: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut comp_cols: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    for r in 0..n {
        comp_rows[uf.find(r)].push(r);
    }
    for c in 0..n {
        comp_cols[uf.find(n + c)].push(c);
    }

    let mut solutions: Vec<SparseVec> = vec![Vec::new(); rhs.len()];
    let mut row_pos = vec![usize::MAX; n];
    for root in 0..2 * n {
        let rows = &comp_rows[root];
        let cols = &comp_cols[root];
        if rows.is_empty() && cols.is_empty() {
            continue;
        }
        if rows.len() != cols.len() {
            return Err(Error::Singular);
        }
        let m = rows.len();
        for (k, &r) in rows.iter().enumerate() {
            row_pos[r] = k;
        }
        let mut a = vec![vec![Scalar::zero(); m]; m];
        for (lc, &c) in cols.iter().enumerate() {
            for (r, v) in &columns[c] {
                a[row_pos[*r]][lc] = v.clone();
            }
        }
        let mut b = vec![vec![Scalar::zero(); rhs.len()]; m];
        for (s, vec) in rhs.iter().enumerate() {
            for (r, v) in vec {
                if uf.find(*r) == root {
                    b[row_pos[*r]][s] = v.clone();
                }
            }
        }
        let x = bareiss_solve(a, b)?;
        for (lc, &c) in cols.iter().enumerate() {
            for (s, sol) in solutions.iter_mut().enumerate() {
                if !x[lc][s].is_zero() {
                    sol.push((c, x[lc][s].clone()));
                }
            }
        }
    }
    for sol in &mut solutions {
        sol.sort_by_key(|(i, _)| *i);
    }
    Ok(solutions)
}

/// Dense fraction-free elimination; `b` is `m x k` (one column per system).
fn bareiss_solve(mut a: Vec<Vec<Scalar>>, mut b: Vec<Vec<Scalar>>) -> Result<Vec<Vec<Scalar>>> {
    let m = a.len();
    clear_denominators(&mut a, &mut b);
    let mut prev = Scalar::one();
    for k in 0..m {
        let pivot = (k..m)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].numerator().num_terms())
            .ok_or(Error::Singular)?;
        a.swap(k, pivot);
        b.swap(k, pivot);
        let (top, rest) = a.split_at_mut(k + 1);
        let (btop, brest) = b.split_at_mut(k + 1);
        let prow = &top[k];
        let pb = &btop[k];
        let p = &prow[k];
        for (row, brow) in rest.iter_mut().zip(brest.iter_mut()) {
            let f = row[k].clone();
            for j in k + 1..m {
                let v = &(p * &row[j]) - &(&f * &prow[j]);
                row[j] = v.checked_div(&prev)?;
            }
            for (j, cell) in brow.iter_mut().enumerate() {
                let v = &(p * &*cell) - &(&f * &pb[j]);
                *cell = v.checked_div(&prev)?;
            }
            row[k] = Scalar::zero();
        }
        prev = p.clone();
    }
    let ncols = b.first().map_or(0, |r| r.len());
    let mut x = vec![vec![Scalar::zero(); ncols]; m];
    for k in (0..m).rev() {
        for s in 0..ncols {
            let mut acc = b[k][s].clone();
            for j in k + 1..m {
                if !a[k][j].is_zero() && !x[j][s].is_zero() {
                    acc = &acc - &(&a[k][j] * &x[j][s]);
                }
            }
            x[k][s] = acc.checked_div(&a[k][k])?;
        }
    }
    Ok(x)
}

/// Scales each row so every entry is a Laurent polynomial.
fn clear_denominators(a: &mut [Vec<Scalar>], b: &mut [Vec<Scalar>]) {
    for (row, brow) in a.iter_mut().zip(b.iter_mut()) {
        let mut factor = Scalar::one();
        for v in row.iter().chain(brow.iter()) {
            if !v.is_laurent() {
                let d = Scalar::from_poly(v.denominator().clone());
                if !(&factor * v).is_laurent() {
                    factor = &factor * &d;
                }
            }
        }
        if !factor.is_one() {
            for v in row.iter_mut().chain(brow.iter_mut()) {
                *v = &*v * &factor;
            }
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn s(t: &str) -> Scalar {
        parse_scalar(t, &["a"]).unwrap()
    }

    fn dense_cols(m: &[&[&str]]) -> Vec<SparseVec> {
        let n = m.len();
        (0..n)
            .map(|j| {
                (0..n)
                    .filter_map(|i| {
                        let v = s(m[i][j]);
                        (!v.is_zero()).then_some((i, v))
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn two_by_two_symbolic() {
        // [[a, 1], [1, a^-1 + 1]] x = [1, 0]
        let cols = dense_cols(&[&["a", "1"], &["1", "a^-1 + 1"]]);
        let x = solve(2, &cols, &[vec![(0, Scalar::one())]]).unwrap();
        // det = a; x0 = (a^-1 + 1)/a, x1 = -1/a
        let get = |i: usize| {
            x[0].iter()
                .find(|(k, _)| *k == i)
                .map(|(_, v)| v.clone())
                .unwrap_or_default()
        };
        assert_eq!(get(0), s("a^-2 + a^-1"));
        assert_eq!(get(1), s("-a^-1"));
    }

    #[test]
    fn singular_detected() {
        let cols = dense_cols(&[&["a", "a^2"], &["1", "a"]]);
        assert_eq!(solve(2, &cols, &[vec![(0, Scalar::one())]]), Err(Error::Singular));
        let zero_col = vec![vec![(0, Scalar::one())], vec![]];
        assert_eq!(solve(2, &zero_col, &[]), Err(Error::Singular));
    }

    #[test]
    fn block_diagonal_components() {
        let cols = dense_cols(&[&["2", "0", "0"], &["0", "a", "1"], &["0", "1", "1"]]);
        let x = solve(3, &cols, &[vec![(0, Scalar::one()), (2, Scalar::one())]]).unwrap();
        // second block: [[a,1],[1,1]] y = [0,1] → y = (-1/(a-1), a/(a-1))
        assert_eq!(x[0][0], (0, Scalar::ratio(1, 2)));
        let y1 = &x[0][1].1;
        let y2 = &x[0][2].1;
        assert_eq!(&(&s("a") * y1) + y2, Scalar::zero());
        assert_eq!(y1 + y2, Scalar::one());
    }
}
