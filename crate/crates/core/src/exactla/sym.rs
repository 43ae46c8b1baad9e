//! Symmetric matrices indexed by an ordered label list.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::mat::Mat;
use super::rat::{format_rat, half, Rat};
use crate::error::Error;

/// Ordered, duplicate-free label list shared between matrices of one space.
pub type Labels = Arc<Vec<String>>;

pub fn labels<I, S>(items: I) -> Result<Labels, Error>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let v: Vec<String> = items.into_iter().map(Into::into).collect();
    for (i, a) in v.iter().enumerate() {
        if v[..i].contains(a) {
            return Err(Error::DuplicateLabel(a.clone()));
        }
    }
    Ok(Arc::new(v))
}

/// Labels `"1"..="n"`.
pub fn numeric_labels(n: usize) -> Labels {
    Arc::new((1..=n).map(|i| i.to_string()).collect())
}

pub fn same_labels(a: &Labels, b: &Labels) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Number of upper-triangle coordinates of an `n x n` symmetric matrix.
pub fn sym_dim(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Exactly symmetric rational matrix with upper-triangle storage.
#[derive(Clone)]
pub struct SymMat {
    labels: Labels,
    n: usize,
    // row-major upper triangle: (0,0),(0,1),..,(0,n-1),(1,1),..
    upper: Vec<Rat>,
}

#[inline]
fn upper_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

impl SymMat {
    pub fn zeros(labels: Labels) -> Self {
        let n = labels.len();
        SymMat {
            labels,
            n,
            upper: vec![Rat::zero(); sym_dim(n)],
        }
    }

    pub fn identity(labels: Labels) -> Self {
        let mut m = Self::zeros(labels);
        for i in 0..m.n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Convert a square matrix that is already exactly symmetric.
    pub fn from_mat(labels: Labels, m: &Mat) -> Result<Self, Error> {
        if !m.is_square() {
            return Err(Error::NonSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m.rows() != labels.len() {
            return Err(Error::Dimension(format!(
                "{} labels for a {}x{} matrix",
                labels.len(),
                m.rows(),
                m.cols()
            )));
        }
        let mut s = Self::zeros(labels);
        for i in 0..s.n {
            for j in i..s.n {
                if m[(i, j)] != m[(j, i)] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
                s.set(i, j, m[(i, j)].clone());
            }
        }
        Ok(s)
    }

    /// Rebuild from upper-triangle coordinates as produced by [`SymMat::coords`].
    pub fn from_coords(labels: Labels, coords: Vec<Rat>) -> Self {
        let n = labels.len();
        assert_eq!(coords.len(), sym_dim(n));
        SymMat {
            labels,
            n,
            upper: coords,
        }
    }

    /// `x y^T + y x^T` halved, i.e. the symmetrization of the outer product.
    pub fn sym_outer(labels: Labels, x: &[Rat], y: &[Rat]) -> Self {
        let n = labels.len();
        assert!(x.len() == n && y.len() == n);
        let mut s = Self::zeros(labels);
        let h = half();
        for i in 0..n {
            for j in i..n {
                let v = &x[i] * &y[j] + &x[j] * &y[i];
                if !v.is_zero() {
                    s.set(i, j, v * &h);
                }
            }
        }
        s
    }

    /// The dyad `x x^T`.
    pub fn dyad(labels: Labels, x: &[Rat]) -> Self {
        let n = labels.len();
        assert_eq!(x.len(), n);
        let mut s = Self::zeros(labels);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in i..n {
                s.set(i, j, &x[i] * &x[j]);
            }
        }
        s
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.upper[upper_index(self.n, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        let k = upper_index(self.n, i, j);
        self.upper[k] = v;
    }

    /// Upper-triangle coordinate vector; a linear isomorphism `Sym^n -> Q^{n(n+1)/2}`.
    pub fn coords(&self) -> &[Rat] {
        &self.upper
    }

    /// Coefficients `f` such that `<self, Y> = f . coords(Y)` for every `Y`.
    pub fn frobenius_functional(&self) -> Vec<Rat> {
        let mut f = Vec::with_capacity(self.upper.len());
        for i in 0..self.n {
            for j in i..self.n {
                let v = self.get(i, j);
                f.push(if i == j || v.is_zero() {
                    v.clone()
                } else {
                    v + v
                });
            }
        }
        f
    }

    pub fn to_mat(&self) -> Mat {
        let mut m = Mat::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn check_same_space(&self, other: &SymMat) -> Result<(), Error> {
        if same_labels(&self.labels, &other.labels) {
            Ok(())
        } else {
            Err(Error::LabelMismatch)
        }
    }

    /// Frobenius inner product `trace(A^T B)`.
    pub fn frobenius(&self, other: &SymMat) -> Result<Rat, Error> {
        self.check_same_space(other)?;
        let mut acc = Rat::zero();
        for i in 0..self.n {
            for j in i..self.n {
                let (a, b) = (self.get(i, j), other.get(i, j));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let p = a * b;
                if i == j {
                    acc += p;
                } else {
                    acc += &p + &p;
                }
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Rat {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn diag(&self) -> Vec<Rat> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn add(&self, other: &SymMat) -> Result<SymMat, Error> {
        self.check_same_space(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &SymMat) -> Result<SymMat, Error> {
        self.check_same_space(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, k: &Rat) -> SymMat {
        SymMat {
            labels: self.labels.clone(),
            n: self.n,
            upper: self.upper.iter().map(|v| v * k).collect(),
        }
    }

    /// `self += k * other` without a label check (callers share a space).
    pub(crate) fn add_scaled(&mut self, k: &Rat, other: &SymMat) {
        if k.is_zero() {
            return;
        }
        for (a, b) in self.upper.iter_mut().zip(&other.upper) {
            if !b.is_zero() {
                *a += k * b;
            }
        }
    }

    fn zip_with(&self, other: &SymMat, f: impl Fn(&Rat, &Rat) -> Rat) -> SymMat {
        SymMat {
            labels: self.labels.clone(),
            n: self.n,
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .filter(|&j| !v[j].is_zero())
                    .map(|j| self.get(i, j) * &v[j])
                    .sum()
            })
            .collect()
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        self.to_mat().rank()
    }

    /// Same matrix entries, relabelled into another (equal-size) space.
    pub fn with_labels(&self, labels: Labels) -> Result<SymMat, Error> {
        if labels.len() != self.n {
            return Err(Error::Dimension("label count mismatch".into()));
        }
        Ok(SymMat {
            labels,
            n: self.n,
            upper: self.upper.clone(),
        })
    }

    /// Principal submatrix on the given index list (labels follow).
    pub fn principal(&self, idx: &[usize]) -> SymMat {
        let labels = Arc::new(idx.iter().map(|&i| self.labels[i].clone()).collect());
        let mut s = SymMat::zeros(labels);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a) {
                s.set(a, b, self.get(i, j).clone());
            }
        }
        s
    }

    /// Full row-major entry grid.
    pub fn rows(&self) -> Vec<Vec<Rat>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }
}

impl PartialEq for SymMat {
    fn eq(&self, other: &Self) -> bool {
        same_labels(&self.labels, &other.labels) && self.upper == other.upper
    }
}

impl Eq for SymMat {}

impl fmt::Debug for SymMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(format_rat).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "SymMat{:?}[{}]", self.labels, rows.join(", "))
    }
}

/// `(M + M^T) / 2`.
pub fn symmetrize(labels: Labels, m: &Mat) -> Result<SymMat, Error> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() != labels.len() {
        return Err(Error::Dimension("label count mismatch".into()));
    }
    let mut s = SymMat::zeros(labels);
    let h = half();
    for i in 0..m.rows() {
        for j in i..m.rows() {
            if i == j {
                s.set(i, i, m[(i, i)].clone());
            } else {
                s.set(i, j, (&m[(i, j)] + &m[(j, i)]) * &h);
            }
        }
    }
    Ok(s)
}

/// `L X L^T`, for a nonsingular conformal `L`.
pub fn congruence(l: &Mat, x: &SymMat) -> Result<SymMat, Error> {
    if !l.is_square() {
        return Err(Error::NonSquare {
            rows: l.rows(),
            cols: l.cols(),
        });
    }
    if l.rows() != x.n() {
        return Err(Error::Dimension(format!(
            "{}x{} congruence on order-{} matrix",
            l.rows(),
            l.cols(),
            x.n()
        )));
    }
    if !l.is_nonsingular() {
        return Err(Error::Singular);
    }
    Ok(congruence_unchecked(l, x))
}

/// `L X L^T` without the nonsingularity check.
pub(crate) fn congruence_unchecked(l: &Mat, x: &SymMat) -> SymMat {
    let lx = l.mul(&x.to_mat()).expect("conformal");
    let n = x.n();
    let mut out = SymMat::zeros(x.labels().clone());
    for i in 0..n {
        for j in i..n {
            let mut acc = Rat::zero();
            for k in 0..n {
                let (a, b) = (&lx[(i, k)], &l[(j, k)]);
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            out.set(i, j, acc);
        }
    }
    out
}
