//! Float search over an affine pencil `G(u) = G_0 + Σ u_j G_j`, maximizing the
//! smallest eigenvalue, followed by rationalization and exact verification.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactla::rat::{rationalize, to_f64};
use crate::exactla::{is_psd, Rat, SymMat};

pub const MAX_ITERATIONS: usize = 500;
pub const PRECISION_LADDER: [i32; 3] = [20, 40, 60];
pub const SEARCH_SEED: u64 = 0x5eed_c0de;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchTrace {
    pub iterations: usize,
    /// Exact lower bound on the smallest eigenvalue at the best point found.
    #[serde(with = "crate::exactla::rat::serde_rat_opt")]
    pub best_lower_bound: Option<Rat>,
    /// Float estimate, approximate.
    pub approximate_min_eig: f64,
}

pub(crate) struct Pencil {
    pub base: SymMat,
    pub dirs: Vec<SymMat>,
}

fn to_float(m: &SymMat) -> DMatrix<f64> {
    let n = m.n();
    DMatrix::from_fn(n, n, |i, j| to_f64(m.get(i, j)))
}

impl Pencil {
    pub fn eval(&self, u: &[Rat]) -> SymMat {
        let mut g = self.base.clone();
        for (uj, d) in u.iter().zip(&self.dirs) {
            if !uj.is_zero() {
                g.add_scaled(uj, d);
            }
        }
        g
    }
}

struct FloatPencil {
    base: DMatrix<f64>,
    dirs: Vec<DMatrix<f64>>,
}

impl FloatPencil {
    fn eval(&self, u: &DVector<f64>) -> DMatrix<f64> {
        let mut g = self.base.clone();
        for (j, d) in self.dirs.iter().enumerate() {
            g += d * u[j];
        }
        g
    }

    /// Smallest eigenvalue and a soft-min supergradient.
    fn value_and_grad(&self, u: &DVector<f64>) -> (f64, DVector<f64>) {
        let eig = SymmetricEigen::new(self.eval(u));
        let lam = &eig.eigenvalues;
        let min = lam.iter().cloned().fold(f64::INFINITY, f64::min);
        let spread = lam.iter().map(|l| (l - min).abs()).fold(0.0, f64::max);
        let tau = 1e-3 * spread.max(1e-9);
        let weights: Vec<f64> = lam.iter().map(|l| (-(l - min) / tau).exp()).collect();
        let total: f64 = weights.iter().sum();
        let mut grad = DVector::zeros(self.dirs.len());
        for (k, w) in weights.iter().enumerate() {
            let w = w / total;
            if w < 1e-12 {
                continue;
            }
            let v = eig.eigenvectors.column(k);
            for (j, d) in self.dirs.iter().enumerate() {
                grad[j] += w * (v.transpose() * d * v)[(0, 0)];
            }
        }
        (min, grad)
    }

    fn value(&self, u: &DVector<f64>) -> f64 {
        SymmetricEigen::new(self.eval(u))
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }
}

fn min_eig_exact(g: &SymMat) -> f64 {
    if g.n() == 0 {
        return f64::INFINITY;
    }
    SymmetricEigen::new(to_float(g))
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// Largest "nice" rational `t` just below the float estimate with
/// `G - t I` exactly PSD, if one is found.
fn certified_lower_bound(g: &SymMat, approx: f64) -> Option<Rat> {
    if g.n() == 0 || !approx.is_finite() {
        return None;
    }
    for k in [6, 3, 1] {
        let t = approx - approx.abs().max(1.0) * 10f64.powi(-k);
        let t = rationalize(t, 10f64.powi(-(k + 2)) * approx.abs().max(1.0))?;
        let shifted = g.sub(&SymMat::identity(g.labels().clone()).scale(&t)).ok()?;
        if is_psd(&shifted) {
            return Some(t);
        }
    }
    None
}

/// Try the exact seeds, then ascend from the first seed. `verify` is called on
/// exact parameter vectors and returns a certificate on success.
pub(crate) fn search<T>(
    pencil: &Pencil,
    exact_seeds: &[Vec<Rat>],
    mut verify: impl FnMut(&[Rat]) -> Option<T>,
) -> (Option<T>, SearchTrace) {
    let d = pencil.dirs.len();
    let mut trace = SearchTrace {
        iterations: 0,
        best_lower_bound: None,
        approximate_min_eig: f64::NEG_INFINITY,
    };
    let mut best_exact: Option<SymMat> = None;
    for s in exact_seeds {
        if let Some(cert) = verify(s) {
            let g = pencil.eval(s);
            trace.approximate_min_eig = min_eig_exact(&g);
            trace.best_lower_bound = certified_lower_bound(&g, trace.approximate_min_eig);
            return (Some(cert), trace);
        }
    }
    if d == 0 {
        let g = pencil.eval(&[]);
        trace.approximate_min_eig = min_eig_exact(&g);
        trace.best_lower_bound = certified_lower_bound(&g, trace.approximate_min_eig);
        return (None, trace);
    }

    let fp = FloatPencil {
        base: to_float(&pencil.base),
        dirs: pencil.dirs.iter().map(to_float).collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    let start = exact_seeds.first().cloned().unwrap_or_else(|| vec![Rat::zero(); d]);
    let mut u = DVector::from_iterator(d, start.iter().map(to_f64));
    let (mut f, mut grad) = fp.value_and_grad(&u);
    let mut step = 1.0;
    let mut best_f = f;
    let mut best_u = u.clone();
    let mut last_attempt = f64::NEG_INFINITY;

    let mut try_round = |u: &DVector<f64>, f: f64, trace: &mut SearchTrace| -> Option<T> {
        for bits in PRECISION_LADDER {
            let tol = 2f64.powi(-bits);
            let q: Option<Vec<Rat>> = u.iter().map(|&x| rationalize(x, tol)).collect();
            let Some(q) = q else { continue };
            if let Some(cert) = verify(&q) {
                let g = pencil.eval(&q);
                trace.approximate_min_eig = f;
                trace.best_lower_bound = certified_lower_bound(&g, min_eig_exact(&g));
                return Some(cert);
            }
        }
        None
    };

    for it in 0..MAX_ITERATIONS {
        trace.iterations = it + 1;
        if f > 0.0 && f > 2.0 * last_attempt.max(0.0) {
            last_attempt = f;
            if let Some(cert) = try_round(&u, f, &mut trace) {
                return (Some(cert), trace);
            }
        }
        let gnorm = grad.norm();
        let dir = if gnorm > 1e-12 {
            &grad / gnorm
        } else {
            let r = DVector::from_fn(d, |_, _| rng.gen::<f64>() - 0.5);
            let rn = r.norm().max(1e-12);
            r / rn
        };
        let mut accepted = false;
        let mut s = step;
        for _ in 0..30 {
            let cand = &u + &dir * s;
            let fc = fp.value(&cand);
            if fc > f {
                u = cand;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if accepted {
            step = s * 2.0;
        } else {
            step = (step * 0.25).max(1e-12);
            let jitter = DVector::from_fn(d, |_, _| (rng.gen::<f64>() - 0.5) * step);
            u += jitter;
        }
        let (nf, ng) = fp.value_and_grad(&u);
        f = nf;
        grad = ng;
        if f > best_f {
            best_f = f;
            best_u = u.clone();
        }
    }
    if best_f > 0.0 {
        if let Some(cert) = try_round(&best_u, best_f, &mut trace) {
            return (Some(cert), trace);
        }
    }
    trace.approximate_min_eig = best_f;
    let q: Option<Vec<Rat>> = best_u.iter().map(|&x| rationalize(x, 2f64.powi(-20))).collect();
    if let Some(q) = q {
        let g = pencil.eval(&q);
        best_exact = Some(g);
    }
    if let Some(g) = best_exact {
        trace.best_lower_bound = certified_lower_bound(&g, min_eig_exact(&g));
    }
    (None, trace)
}
