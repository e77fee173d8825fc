//! Dense matrices over a finite field with exact Gaussian elimination.

use std::fmt;

use crate::ff::{embed, Fe, Field, FieldExt};
use crate::error::Result;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    a: Vec<Fe>,
}

impl Mat {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            a: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Fe>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let a: Vec<Fe> = rows.into_iter().flatten().collect();
        assert_eq!(a.len(), r * c, "ragged rows");
        Mat {
            field: field.clone(),
            rows: r,
            cols: c,
            a,
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Fe>(field: &Field, rows: usize, cols: usize, mut f: F) -> Mat {
        let mut a = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                a.push(f(i, j));
            }
        }
        Mat {
            field: field.clone(),
            rows,
            cols,
            a,
        }
    }

    pub fn diag(field: &Field, d: &[Fe]) -> Mat {
        let mut m = Mat::zeros(field, d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Fe {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        self.a[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Fe] {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Mat::zeros(&self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let y = o.get(k, j);
                    if !y.is_zero() {
                        let idx = i * o.cols + j;
                        out.a[idx] = &out.a[idx] + &(x * y);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (x, y) in self.row(i).iter().zip(v) {
                    acc += &(x * y);
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, s: &Fe) -> Mat {
        self.map(|x| x * s)
    }

    pub fn map<F: Fn(&Fe) -> Fe>(&self, f: F) -> Mat {
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(f).collect(),
        }
    }

    /// Entrywise image under `x -> x^(p^j)`.
    pub fn twist(&self, j: usize) -> Mat {
        self.map(|x| x.frobenius_n(j))
    }

    pub fn embed(&self, dst: &Field) -> Result<Mat> {
        let a = self.a.iter().map(|x| embed(x, dst)).collect::<Result<Vec<_>>>()?;
        Ok(Mat {
            field: dst.clone(),
            rows: self.rows,
            cols: self.cols,
            a,
        })
    }

    pub fn pow(&self, mut e: u128) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut r = Mat::identity(&self.field, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.a.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    /// Basis of the right kernel `{v : A v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let mut m = self.clone();
        let pivots = m.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, f);
                }
                v
            })
            .collect()
    }

    /// Unique solution of `A x = b`, or `None` when inconsistent or
    /// underdetermined.
    pub fn solve(&self, b: &[Fe]) -> Option<Vec<Fe>> {
        let mut aug = Mat::from_fn(&self.field, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.echelon();
        if pivots.contains(&self.cols) || pivots.len() < self.cols {
            return None;
        }
        Some((0..self.cols).map(|r| aug.get(r, self.cols).clone()).collect())
    }

    pub fn inverse(&self) -> Option<Mat> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut aug = Mat::from_fn(&self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let pivots = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(&self.field, n, n, |i, j| aug.get(i, n + j).clone()))
    }

    pub fn det(&self) -> Fe {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return self.field.zero();
            };
            if piv != c {
                for j in 0..n {
                    m.a.swap(piv * n + j, c * n + j);
                }
                det = -det;
            }
            let p = m.get(c, c).clone();
            det = &det * &p;
            let inv = p.inv().unwrap();
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn trace(&self) -> Fe {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    /// Row-major entries as JSON.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| serde_json::Value::Array(self.row(i).iter().map(|x| x.to_json()).collect()))
                .collect(),
        )
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::build_field;

    fn m(f: &Field, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            f,
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let f = build_field(5, 1).unwrap();
        let a = m(&f, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_and_det() {
        let f = build_field(7, 1).unwrap();
        let a = m(&f, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(&f, 3));
        // 2*(12-1) - 1*(4-0) = 18 = 4 mod 7
        assert_eq!(a.det().as_prime(), Some(4));
        let sing = m(&f, &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(sing.det().is_zero());
    }

    #[test]
    fn solve_unique() {
        let f = build_field(11, 1).unwrap();
        let a = m(&f, &[&[1, 1], &[1, 10]]);
        let b = vec![f.from_u64(3), f.from_u64(1)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn zero_matrix_rank() {
        let f = build_field(2, 1).unwrap();
        assert_eq!(Mat::zeros(&f, 4, 4).rank(), 0);
    }
}
