//! Exact positive-semidefiniteness by symmetric pivoted LDL^T.
//!
//! At each step the pivot is the first strictly positive diagonal entry of
//! the remaining Schur complement, in label order. A negative diagonal entry
//! certifies indefiniteness. When every remaining diagonal entry is zero the
//! matrix is PSD iff the remaining block is zero.

use num_traits::{Signed, Zero};

use super::rat::Rat;
use super::sym::SymMat;

/// Outcome of the elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ldlt {
    pub psd: bool,
    /// Positive pivots taken, in order.
    pub pivots: Vec<Rat>,
    /// Pivot positions (indices into the label list).
    pub order: Vec<usize>,
}

impl Ldlt {
    /// Rank, meaningful only when `psd` holds.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn ldlt(x: &SymMat) -> Ldlt {
    let n = x.n();
    let mut a = x.rows();
    let mut active: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    let mut order = Vec::new();
    loop {
        if active.iter().any(|&i| a[i][i].is_negative()) {
            return Ldlt {
                psd: false,
                pivots,
                order,
            };
        }
        let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) else {
            let rest_zero = active
                .iter()
                .all(|&i| active.iter().all(|&j| a[i][j].is_zero()));
            return Ldlt {
                psd: rest_zero,
                pivots,
                order,
            };
        };
        let p = active.remove(pos);
        let d = a[p][p].clone();
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &active {
                if a[p][j].is_zero() {
                    continue;
                }
                let delta = &f * &a[p][j];
                a[i][j] -= delta;
            }
        }
        pivots.push(d);
        order.push(p);
    }
}

pub fn is_psd(x: &SymMat) -> bool {
    ldlt(x).psd
}

/// Positive definite: PSD with a full set of strictly positive pivots.
pub fn is_pd(x: &SymMat) -> bool {
    let f = ldlt(x);
    f.psd && f.rank() == x.n()
}
