//! Dense exact linear algebra: reduced row echelon form, rank, kernels and solves.
//!
//! Elimination always pivots on the first nonzero entry, scanning rows top-down,
//! so every result (in particular every kernel basis) is reproducible.
//! Over the rationals the forward pass is fraction-free (Bareiss) on integer rows
//! with exact division, followed by a back-substitution restricted to the free
//! columns.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::Field;

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    nrows: usize,
    ncols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix { nrows, ncols, data: vec![F::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `ncols`.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<F>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged row");
            data.extend(row);
        }
        Matrix { nrows, ncols, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(ncols, rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[F]> {
        (0..self.nrows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.nrows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.ncols {
            self.data.swap(a * self.ncols + j, b * self.ncols + j);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch");
        let mut out = Self::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a.clone() * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.ncols, v.len(), "dimension mismatch");
        self.rows()
            .map(|row| {
                row.iter().zip(v).fold(F::zero(), |acc, (a, b)| if a.is_zero() { acc } else { acc + a.clone() * b })
            })
            .collect()
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.ncols, other.ncols, "dimension mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { nrows: self.nrows + other.nrows, ncols: self.ncols, data }
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix<F> {
        Self::from_rows(self.ncols, rows.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.nrows && j < self.ncols);
        &self.data[i * self.ncols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.nrows && j < self.ncols);
        &mut self.data[i * self.ncols + j]
    }
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            let row: Vec<String> = (0..self.ncols).map(|j| self.data[i * self.ncols + j].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of row reduction.
#[derive(Clone, PartialEq, Eq)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// The unique reduced row echelon form of `m`.
pub fn rref<F: Field>(m: &Matrix<F>) -> Rref<F> {
    let mut r = m.clone();
    let pivots = F::row_reduce(&mut r);
    Rref { matrix: r, pivots }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).rank()
}

/// Basis of the right nullspace, one vector per column of the result.
///
/// Free variables are set to 1 one at a time in ascending column order.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let Rref { matrix: r, pivots } = rref(m);
    let n = m.ncols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut k = Matrix::zeros(n, free.len());
    for (col, &fj) in free.iter().enumerate() {
        k[(fj, col)] = F::one();
        for (row, &pc) in pivots.iter().enumerate() {
            k[(pc, col)] = -r[(row, fj)].clone();
        }
    }
    k
}

/// Nonzero rows of the reduced row echelon form of `m`: the canonical basis of its row space.
pub fn row_space<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let Rref { matrix, pivots } = rref(m);
    matrix.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
}

/// Coordinates `c` with `m * c = b`, or `None` when the system is inconsistent.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(m.nrows(), b.len(), "right-hand side has wrong length");
    let n = m.ncols();
    let mut aug = Matrix::zeros(m.nrows(), n + 1);
    for i in 0..m.nrows() {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let Rref { matrix: r, pivots } = rref(&aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[(row, n)].clone();
    }
    Some(x)
}

/// Determinant of a square scalar matrix.
pub fn determinant<F: Field>(m: &Matrix<F>) -> F {
    assert_eq!(m.nrows(), m.ncols(), "determinant of a non-square matrix");
    let mut a = m.clone();
    let n = a.nrows();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap_rows(p, c);
            det = -det;
        }
        let pivot = a[(c, c)].clone();
        let pinv = pivot.inv().expect("nonzero pivot");
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone() * &pinv;
            for j in c..n {
                let v = factor.clone() * &a[(c, j)];
                a[(i, j)] -= v;
            }
        }
        det *= pivot;
    }
    det
}

/// Plain Gauss-Jordan elimination; returns pivot columns.
pub fn gauss_jordan<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let (nrows, ncols) = (m.nrows(), m.ncols());
    let mut pivots = Vec::new();
    let mut prow = 0;
    for c in 0..ncols {
        if prow == nrows {
            break;
        }
        let Some(p) = (prow..nrows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(p, prow);
        let inv = m[(prow, c)].inv().expect("nonzero pivot");
        for j in c..ncols {
            let v = m[(prow, j)].clone() * &inv;
            m[(prow, j)] = v;
        }
        for i in 0..nrows {
            if i == prow || m[(i, c)].is_zero() {
                continue;
            }
            let factor = m[(i, c)].clone();
            for j in c..ncols {
                if m[(prow, j)].is_zero() {
                    continue;
                }
                let v = factor.clone() * &m[(prow, j)];
                m[(i, j)] -= v;
            }
        }
        pivots.push(c);
        prow += 1;
    }
    pivots
}

/// Reduced row echelon form over the rationals via fraction-free elimination.
///
/// Rows are scaled to integers, reduced to echelon form by Bareiss elimination
/// (every division is exact), and the pivot block is then solved against the
/// free columns. The result is identical to [`gauss_jordan`].
pub fn fraction_free_rref(m: &mut Matrix<BigRational>) -> Vec<usize> {
    let (nrows, ncols) = (m.nrows(), m.ncols());
    let mut a: Vec<Vec<BigInt>> = m.rows().map(integer_row).collect();

    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut prow = 0;
    for c in 0..ncols {
        if prow == nrows {
            break;
        }
        let Some(p) = (prow..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, prow);
        let (head, tail) = a.split_at_mut(prow + 1);
        let pivot_row = &head[prow];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            if factor.is_zero() {
                if row[c + 1..].iter().all(Zero::is_zero) {
                    continue;
                }
                for v in row[c + 1..].iter_mut() {
                    if !v.is_zero() {
                        *v = exact_div(&(&*v * &pivot), &prev);
                    }
                }
            } else {
                for (v, pv) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                    let t = &*v * &pivot - &factor * pv;
                    *v = exact_div(&t, &prev);
                }
            }
        }
        prev = pivot;
        pivots.push(c);
        prow += 1;
    }

    // Back-substitution on the free columns only; pivot columns become unit vectors.
    let rank = pivots.len();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..ncols).filter(|&j| !is_pivot[j]).collect();
    let mut out = Matrix::zeros(nrows, ncols);
    for k in (0..rank).rev() {
        let pc = pivots[k];
        let pivot = BigRational::from_integer(a[k][pc].clone());
        out[(k, pc)] = BigRational::one();
        for &fj in free.iter().filter(|&&fj| fj > pc) {
            let mut acc = BigRational::from_integer(a[k][fj].clone());
            for l in k + 1..rank {
                let plc = pivots[l];
                if plc > fj {
                    break;
                }
                let coef = &a[k][plc];
                if coef.is_zero() || out[(l, fj)].is_zero() {
                    continue;
                }
                acc -= out[(l, fj)].clone() * BigRational::from_integer(coef.clone());
            }
            out[(k, fj)] = acc / &pivot;
        }
    }
    *m = out;
    pivots
}

fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
}

fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "Bareiss division must be exact");
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fp, Rational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;
    type F = Fp<{ crate::algebra::DEFAULT_PRIME }>;

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    fn random_rational_matrix(rng: &mut ChaCha8Rng, n: usize, m: usize, rank_cap: Option<usize>) -> Matrix<Q> {
        let entry = |rng: &mut ChaCha8Rng| {
            let num: i64 = rng.random_range(-9..=9);
            let den: i64 = rng.random_range(1..=5);
            Q::new(num.into(), den.into())
        };
        match rank_cap {
            None => Matrix::from_rows(m, (0..n).map(|_| (0..m).map(|_| entry(rng)).collect()).collect()),
            Some(k) => {
                let left = Matrix::from_rows(k, (0..n).map(|_| (0..k).map(|_| entry(rng)).collect()).collect());
                let right = Matrix::from_rows(m, (0..k).map(|_| (0..m).map(|_| entry(rng)).collect()).collect());
                left.mul(&right)
            }
        }
    }

    #[test]
    fn rref_of_identity_and_zero() {
        let id = Matrix::<Q>::identity(3);
        let r = rref(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank(), 3);

        let z = Matrix::<Q>::zeros(2, 5);
        let r = rref(&z);
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_of_proportional_rows() {
        let m = Matrix::<Q>::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let r = rref(&m);
        assert_eq!(r.matrix, Matrix::from_i64_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::<Q>::identity(3)).ncols(), 0);
        let z = Matrix::<Q>::zeros(2, 3);
        assert_eq!(kernel_basis(&z), Matrix::identity(3));
        let m = Matrix::<Q>::from_i64_rows(&[&[1, 1, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k, Matrix::from_i64_rows(&[&[-1, 0], &[1, 0], &[0, 1]]));
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), q(-1), q(7)];
        assert_eq!(solve(&Matrix::identity(3), &b), Some(b.clone()));
        assert_eq!(solve(&Matrix::<Q>::zeros(3, 2), &b), None);
        let m = Matrix::<Q>::from_i64_rows(&[&[1, 1], &[1, -1], &[2, 0]]);
        assert_eq!(solve(&m, &[q(3), q(1), q(4)]), Some(vec![q(2), q(1)]));
        assert_eq!(solve(&m, &[q(3), q(1), q(5)]), None);
    }

    #[test]
    fn fraction_free_matches_naive_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..40 {
            let cap = match trial % 4 {
                0 => None,
                1 => Some(3),
                2 => Some(6),
                _ => Some(1),
            };
            let (n, m) = if trial % 3 == 0 { (8, 8) } else { (7, 10) };
            let a = random_rational_matrix(&mut rng, n, m, cap);
            let mut naive = a.clone();
            let naive_piv = gauss_jordan(&mut naive);
            let mut ff = a.clone();
            let ff_piv = fraction_free_rref(&mut ff);
            assert_eq!(naive_piv, ff_piv);
            assert_eq!(naive, ff);
        }
    }

    #[test]
    fn random_fp_matrix_has_full_rank_like_over_q() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rows: Vec<Vec<i64>> = (0..6).map(|_| (0..8).map(|_| rng.random_range(-1000..=1000)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let over_q = rank(&Matrix::<Q>::from_i64_rows(&refs));
        let over_p = rank(&Matrix::<F>::from_i64_rows(&refs));
        assert_eq!(over_q, 6);
        assert_eq!(over_p, over_q);
    }

    #[test]
    fn determinant_matches_known_values() {
        let m = Matrix::<Q>::from_i64_rows(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(determinant(&m), q(6));
        let s = Matrix::<Q>::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(determinant(&s), q(0));
        let p = Matrix::<Q>::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&p), q(-1));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
            (1usize..6, 1usize..7).prop_flat_map(|(n, m)| (Just(n), Just(m), proptest::collection::vec(-4i64..=4, n * m)))
        }

        fn build<T: Field>(n: usize, m: usize, v: &[i64]) -> Matrix<T> {
            Matrix::from_rows(m, (0..n).map(|i| v[i * m..(i + 1) * m].iter().map(|&x| T::from_i64(x)).collect()).collect())
        }

        proptest! {
            #[test]
            fn rref_is_idempotent((n, m, v) in small_matrix()) {
                let a: Matrix<Q> = build(n, m, &v);
                let once = rref(&a).matrix;
                prop_assert_eq!(rref(&once).matrix, once);
            }

            #[test]
            fn rank_is_transpose_invariant((n, m, v) in small_matrix()) {
                let a: Matrix<Q> = build(n, m, &v);
                prop_assert_eq!(rank(&a), rank(&a.transpose()));
                let b: Matrix<F> = build(n, m, &v);
                prop_assert_eq!(rank(&b), rank(&b.transpose()));
            }

            #[test]
            fn kernel_vectors_are_annihilated((n, m, v) in small_matrix()) {
                let a: Matrix<Q> = build(n, m, &v);
                let k = kernel_basis(&a);
                prop_assert_eq!(k.ncols(), m - rank(&a));
                prop_assert!(a.mul(&k).is_zero());
            }
        }
    }
}
