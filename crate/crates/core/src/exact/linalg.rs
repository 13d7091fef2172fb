//! Dense exact linear algebra over ℚ(i).

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<GaussianRational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, x: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &x[j]).sum())
            .collect()
    }

    /// `y^T A` for a row vector `y`.
    pub fn left_mul_vec(&self, y: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(y.len(), self.rows);
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| &y[i] * self.get(i, j)).sum())
            .collect()
    }

    /// Reduced row echelon form of `self`, together with the invertible row
    /// operations `E` such that `E · self = R`.
    pub fn rref_with_transform(&self) -> Rref {
        let mut r = self.clone();
        let mut e = Matrix::identity(self.rows);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !r.get(i, col).is_zero()) else {
                continue;
            };
            r.swap_rows(row, p);
            e.swap_rows(row, p);
            let inv = r.get(row, col).inv().expect("nonzero pivot");
            r.scale_row(row, &inv);
            e.scale_row(row, &inv);
            for i in 0..self.rows {
                if i != row && !r.get(i, col).is_zero() {
                    let factor = r.get(i, col).clone();
                    r.sub_row_multiple(i, row, &factor);
                    e.sub_row_multiple(i, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            reduced: r,
            transform: e,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref_with_transform().pivots.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, k: &GaussianRational) {
        for j in 0..self.cols {
            let v = self.get(i, j) * k;
            self.set(i, j, v);
        }
    }

    /// row_i -= k · row_src
    fn sub_row_multiple(&mut self, i: usize, src: usize, k: &GaussianRational) {
        for j in 0..self.cols {
            if self.get(src, j).is_zero() {
                continue;
            }
            let v = self.get(i, j) - &(self.get(src, j) * k);
            self.set(i, j, v);
        }
    }
}

#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub transform: Matrix,
    pub pivots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `A x = v` for the stored `x`.
    InImage(Vec<GaussianRational>),
    /// A covector `y` with `y^T A = 0` and `y · v ≠ 0`.
    NotInImage(Vec<GaussianRational>),
}

impl Membership {
    pub fn is_in_image(&self) -> bool {
        matches!(self, Membership::InImage(_))
    }
}

/// Decides whether `v` lies in the column space of `a`, returning either a
/// preimage or a separating functional.
pub fn image_membership(a: &Matrix, v: &[GaussianRational]) -> Membership {
    assert_eq!(v.len(), a.rows(), "vector length must match row count");
    let rref = a.rref_with_transform();
    let ev = rref.transform.mul_vec(v);
    let rank = rref.pivots.len();
    if let Some(k) = (rank..a.rows()).find(|&k| !ev[k].is_zero()) {
        let y = (0..a.rows()).map(|j| rref.transform.get(k, j).clone()).collect();
        return Membership::NotInImage(y);
    }
    let mut x = vec![GaussianRational::zero(); a.cols()];
    for (row, &col) in rref.pivots.iter().enumerate() {
        x[col] = ev[row].clone();
    }
    Membership::InImage(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    fn col(v: &[i64]) -> Vec<GaussianRational> {
        v.iter().map(|&x| g(x)).collect()
    }

    #[test]
    fn zero_vector_is_in_image() {
        let a = Matrix::from_columns(3, &[col(&[1, 2, 3])]);
        assert_eq!(image_membership(&a, &col(&[0, 0, 0])), Membership::InImage(col(&[0])));
    }

    #[test]
    fn identity_contains_everything() {
        let a = Matrix::identity(3);
        let v = col(&[4, -1, 7]);
        match image_membership(&a, &v) {
            Membership::InImage(x) => assert_eq!(a.mul_vec(&x), v),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn coordinate_separation() {
        let a = Matrix::from_columns(3, &[col(&[0, 1, 0]), col(&[0, 0, 1])]);
        assert_eq!(
            image_membership(&a, &col(&[1, 0, 0])),
            Membership::NotInImage(col(&[1, 0, 0]))
        );
    }

    #[test]
    fn empty_domain_matrix() {
        let a = Matrix::zeros(1, 0);
        assert!(!image_membership(&a, &col(&[5])).is_in_image());
        assert!(image_membership(&a, &col(&[0])).is_in_image());
        assert_eq!(a.rank(), 0);
    }

    #[test]
    fn witness_separates() {
        let i = GaussianRational::i();
        let a = Matrix::from_columns(
            3,
            &[
                vec![g(1), i.clone(), g(0)],
                vec![g(2), &i * &g(2), g(0)],
                vec![g(0), g(1), g(1)],
            ],
        );
        let v = vec![g(1), g(0), g(0)];
        match image_membership(&a, &v) {
            Membership::NotInImage(y) => {
                assert!(a.left_mul_vec(&y).iter().all(|z| z.is_zero()));
                let pairing: GaussianRational = y.iter().zip(&v).map(|(a, b)| a * b).sum();
                assert!(!pairing.is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(a.rank(), 2);
    }
}
