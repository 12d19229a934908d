//! Exact rational vectors and dense matrices, sized for rank <= 8 root data.

use crate::rat::{rat_str, Rat};
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Vector with exact rational entries in ambient coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatVec(pub Vec<Rat>);

impl RatVec {
    pub fn zeros(n: usize) -> Self {
        RatVec(vec![Rat::zero(); n])
    }

    pub fn from_i64(v: &[i64]) -> Self {
        RatVec(v.iter().map(|&x| crate::rat::rat_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &RatVec) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot: dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |acc, x| acc + x)
    }

    pub fn norm_sq(&self) -> Rat {
        self.dot(self)
    }

    pub fn scale(&self, c: &Rat) -> RatVec {
        RatVec(self.0.iter().map(|x| x * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn coords_str(&self) -> String {
        self.0.iter().map(rat_str).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords_str())
    }
}

impl Add for &RatVec {
    type Output = RatVec;
    fn add(self, rhs: &RatVec) -> RatVec {
        assert_eq!(self.dim(), rhs.dim());
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RatVec {
    type Output = RatVec;
    fn sub(self, rhs: &RatVec) -> RatVec {
        assert_eq!(self.dim(), rhs.dim());
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec(self.0.iter().map(|x| -x).collect())
    }
}

/// Dense rational matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMat {
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RatMat { nrows, ncols, data: vec![Rat::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: &[RatVec]) -> Self {
        assert!(!rows.is_empty());
        let ncols = rows[0].dim();
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.dim(), ncols);
            for j in 0..ncols {
                m[(i, j)] = r.0[j].clone();
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> RatVec {
        RatVec(self.data[i * self.ncols..(i + 1) * self.ncols].to_vec())
    }

    pub fn col(&self, j: usize) -> RatVec {
        RatVec((0..self.nrows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.ncols, other.nrows);
        let mut m = RatMat::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let prod = a * &other[(k, j)];
                    m[(i, j)] = &m[(i, j)] + &prod;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &RatVec) -> RatVec {
        assert_eq!(self.ncols, v.dim());
        RatVec(
            (0..self.nrows)
                .map(|i| {
                    (0..self.ncols)
                        .map(|j| &self[(i, j)] * &v.0[j])
                        .fold(Rat::zero(), |acc, x| acc + x)
                })
                .collect(),
        )
    }

    /// Row echelon form by exact Gaussian elimination; returns (echelon, pivots, det-like sign ignored).
    fn echelon(&self) -> (RatMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.ncols {
            if r == m.nrows {
                break;
            }
            let Some(p) = (r..m.nrows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.ncols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.nrows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.ncols {
                        let sub = &f * &m[(r, j)];
                        m[(i, j)] = &m[(i, j)] - &sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.ncols {
            self.data.swap(a * self.ncols + j, b * self.ncols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Solves `A x = b`; requires full column rank. `None` if inconsistent.
    pub fn solve(&self, b: &RatVec) -> Option<RatVec> {
        assert_eq!(self.nrows, b.dim());
        let mut aug = RatMat::zeros(self.nrows, self.ncols + 1);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.ncols)] = b.0[i].clone();
        }
        let (e, pivots) = aug.echelon();
        if pivots.contains(&self.ncols) {
            return None; // inconsistent
        }
        if pivots.len() != self.ncols {
            return None; // underdetermined; callers only solve full-column-rank systems
        }
        let mut x = RatVec::zeros(self.ncols);
        for (r, &c) in pivots.iter().enumerate() {
            x.0[c] = e[(r, self.ncols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut aug = RatMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let (e, pivots) = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = RatMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = e[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].recip();
            for i in (c + 1)..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let sub = &f * &m[(c, j)];
                    m[(i, j)] = &m[(i, j)] - &sub;
                }
            }
        }
        det
    }

    /// Leading principal minor of order `k` (1-based count of rows/cols).
    pub fn leading_minor(&self, k: usize) -> Rat {
        let mut sub = RatMat::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                sub[(i, j)] = self[(i, j)].clone();
            }
        }
        sub.det()
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.ncols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.ncols + j]
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

use num_traits::One;
