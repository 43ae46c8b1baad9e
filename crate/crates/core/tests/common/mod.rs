//! Test-side oracles, written against plain `Vec<Vec<Rat>>` so they share no
//! code with the library's elimination routines.
#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use spectravert::exactla::{rat, Labels, Rat, SymMat};
use spectravert::graphs::Graph;
use spectravert::spectra::{FamilyKind, FamilySpec};
use spectravert::vertices::Split;

pub type Dense = Vec<Vec<Rat>>;

pub fn dense(x: &SymMat) -> Dense {
    let n = x.n();
    (0..n).map(|i| (0..n).map(|j| x.get(i, j).clone()).collect()).collect()
}

pub fn det(mut a: Dense) -> Rat {
    let n = a.len();
    let mut d = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        let piv = a[col][col].clone();
        d *= &piv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &piv;
            for k in col..n {
                let t = &f * &a[col][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

pub fn rank(mut a: Dense) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in 0..rows {
            if i != r && !a[i][col].is_zero() {
                let f = &a[i][col] / &a[r][col];
                for k in col..cols {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// PSD iff every principal minor is nonnegative.
pub fn psd_by_minors(a: &Dense) -> bool {
    let n = a.len();
    (1u32..1 << n).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let sub = idx.iter().map(|&i| idx.iter().map(|&j| a[i][j].clone()).collect()).collect();
        !det(sub).is_negative()
    })
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold(Rat::zero(), |s, k| s + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn small_rat(rng: &mut ChaCha8Rng, span: i64) -> Rat {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=3))
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize, span: i64) -> Vec<Rat> {
    (0..n).map(|_| small_rat(rng, span)).collect()
}

/// `Σ_k v_k v_k^T` over `r` random vectors; rank at most `r`.
pub fn random_psd(rng: &mut ChaCha8Rng, labels: Labels, r: usize) -> SymMat {
    let n = labels.len();
    let mut x = SymMat::zeros(labels.clone());
    for _ in 0..r {
        let v = random_vec(rng, n, 3);
        x = x.add(&SymMat::dyad(labels.clone(), &v)).unwrap();
    }
    x
}

/// Every family spec on `g`; split families get each of the three splits.
pub fn specs_on(g: &Graph) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for kind in FamilyKind::ALL {
        if kind == FamilyKind::Theta3 && g.n() == 0 {
            continue;
        }
        if kind.takes_split() {
            for s in Split::ALL {
                out.push(s.spec(kind, g).unwrap());
            }
        } else {
            out.push(FamilySpec::on_graph(kind, g).unwrap());
        }
    }
    out
}

pub fn coords_key(x: &SymMat) -> Vec<Rat> {
    x.coords().to_vec()
}
