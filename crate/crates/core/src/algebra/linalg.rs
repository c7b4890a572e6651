//! Dense matrices over exact rings and Gaussian elimination.

use alloc::vec::Vec;

use crate::algebra::field::{Field, Ring};
use crate::algebra::series::QSeries;
use crate::Error;

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Ring> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: alloc::vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx].add_assign(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Ring, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Mat<G>, E> {
        let mut data = Vec::with_capacity(self.data.len());
        for a in &self.data {
            data.push(f(a)?);
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc.add_assign(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }
}

/// Size measure steering pivot choice toward simple entries.
pub trait Complexity {
    fn complexity(&self) -> usize;
}

impl Complexity for crate::algebra::Q {
    fn complexity(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl Complexity for crate::algebra::RatFunc {
    fn complexity(&self) -> usize {
        self.num().len() + self.den().len()
    }
}

/// Solves `A X = B` for square nonsingular `A` over a field.
pub fn solve<F: Field + Complexity>(a: &Mat<F>, b: &Mat<F>) -> Result<Mat<F>, Error> {
    let n = a.rows;
    assert_eq!(n, a.cols);
    assert_eq!(n, b.rows);
    let m = b.cols;
    let mut aug: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut row: Vec<F> = (0..n).map(|j| a.get(i, j).clone()).collect();
            row.extend((0..m).map(|j| b.get(i, j).clone()));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !aug[r][col].is_zero())
            .min_by_key(|&r| aug[r][col].complexity())
            .ok_or(Error::Singular)?;
        aug.swap(col, piv);
        let inv = aug[col][col].inv().ok_or(Error::Singular)?;
        let prow: Vec<F> = aug[col].iter().map(|x| x.mul(&inv)).collect();
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let f = aug[r][col].clone();
            for c in col..n + m {
                if prow[c].is_zero() {
                    continue;
                }
                let v = aug[r][c].sub(&f.mul(&prow[c]));
                aug[r][c] = v;
            }
        }
        aug[col] = prow;
    }
    Ok(Mat::from_fn(n, m, |i, j| aug[i][n + j].clone()))
}

pub fn inverse<F: Field + Complexity>(a: &Mat<F>) -> Result<Mat<F>, Error> {
    solve(a, &Mat::identity(a.rows))
}

/// Solves `A X = B` over truncated Laurent series, pivoting on lowest valuation.
///
/// Exact entries are first cut to `work_trunc`; the precision of the result is
/// whatever survives the divisions and is reported by each entry's truncation.
pub fn solve_series<F: Field + Complexity>(
    a: &Mat<QSeries<F>>,
    b: &Mat<QSeries<F>>,
    work_trunc: i64,
) -> Result<Mat<QSeries<F>>, Error> {
    let n = a.rows;
    assert_eq!(n, a.cols);
    assert_eq!(n, b.rows);
    let m = b.cols;
    let cut = |s: &QSeries<F>| {
        if s.is_exact() {
            s.with_truncation(work_trunc)
        } else {
            s.clone()
        }
    };
    let mut aug: Vec<Vec<QSeries<F>>> = (0..n)
        .map(|i| {
            let mut row: Vec<QSeries<F>> = (0..n).map(|j| cut(a.get(i, j))).collect();
            row.extend((0..m).map(|j| cut(b.get(i, j))));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !aug[r][col].is_zero())
            .min_by_key(|&r| {
                let s = &aug[r][col];
                (s.valuation(), s.leading().map(|c| c.complexity()).unwrap_or(0))
            })
            .ok_or(Error::Singular)?;
        aug.swap(col, piv);
        let inv = aug[col][col].inv()?;
        let prow: Vec<QSeries<F>> = aug[col].iter().map(|x| x.mul(&inv)).collect();
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let f = aug[r][col].clone();
            for c in col..n + m {
                let v = aug[r][c].sub(&f.mul(&prow[c]));
                aug[r][c] = v;
            }
        }
        aug[col] = prow;
    }
    Ok(Mat::from_fn(n, m, |i, j| aug[i][n + j].clone()))
}
