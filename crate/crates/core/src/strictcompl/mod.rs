//! Strict complementarity certificates, relative-interior membership in the
//! normal cone, and polar membership, all verified exactly.
//!
//! Searches are semi-decisions: a float ascent proposes parameters, which are
//! rationalized and then checked in exact arithmetic. Failure to find a
//! certificate says nothing about membership.

mod search;

use num_traits::{Signed, Zero};
use serde::Serialize;

pub use search::{SearchTrace, MAX_ITERATIONS, PRECISION_LADDER, SEARCH_SEED};
use search::{search, Pencil};

use crate::error::Error;
use crate::exactla::rat::serde_rat_vec;
use crate::exactla::{is_psd, numeric_labels, rat, Mat, Rat, SymMat};
use crate::graphs::Graph;
use crate::normalcone::in_relint_conjugate_face;
use crate::spectra::json::{matrix_to_json, MatrixJson};
use crate::spectra::{laplacian, Spectrahedron};

/// `S` lies in the relative interior of the conjugate face of `X`
/// (`S` PSD, `X S = 0`, `rank S = nullity X`), for feasible `X`.
pub fn check_pair(c: &Spectrahedron, x: &SymMat, s: &SymMat) -> Result<bool, Error> {
    c.require_feasible(x)?;
    c.check_point_space(s)?;
    let ok = in_relint_conjugate_face(x, s)?;
    if ok {
        debug_assert!(s.to_mat().mul(&x.to_mat()).map(|m| m.is_zero()).unwrap_or(false));
    }
    Ok(ok)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictComplCertificate {
    pub x: SymMat,
    pub s: SymMat,
    pub y: Vec<Rat>,
    pub rank_x: usize,
    pub rank_s: usize,
    pub verified: bool,
}

#[derive(Serialize)]
struct CertificateJson {
    #[serde(rename = "X")]
    x: MatrixJson,
    #[serde(rename = "S")]
    s: MatrixJson,
    #[serde(with = "serde_rat_vec")]
    y: Vec<Rat>,
    rank_x: usize,
    rank_s: usize,
    verified: bool,
}

impl StrictComplCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CertificateJson {
            x: matrix_to_json(&self.x),
            s: matrix_to_json(&self.s),
            y: self.y.clone(),
            rank_x: self.rank_x,
            rank_s: self.rank_s,
            verified: self.verified,
        })
        .expect("serializable")
    }
}

/// Independent re-check of a certificate: `X` feasible, `S` PSD, `X S = 0`,
/// ranks complementary and, with an objective, `S = A*(y) - c`.
pub fn verify_certificate(
    c: &Spectrahedron,
    objective: Option<&SymMat>,
    cert: &StrictComplCertificate,
) -> Result<bool, Error> {
    if !c.is_feasible(&cert.x)? || !is_psd(&cert.s) {
        return Ok(false);
    }
    c.check_point_space(&cert.s)?;
    let xs = cert.x.to_mat().mul(&cert.s.to_mat())?;
    let sx = cert.s.to_mat().mul(&cert.x.to_mat())?;
    if !xs.is_zero() || !sx.is_zero() {
        return Ok(false);
    }
    let (rx, rs) = (cert.x.rank(), cert.s.rank());
    if rx != cert.rank_x || rs != cert.rank_s || rx + rs != c.n() {
        return Ok(false);
    }
    if let Some(obj) = objective {
        if cert.y.len() != c.eq.len() || c.adjoint_eq(&cert.y).sub(obj)? != cert.s {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelintStatus {
    CertifiedYes(Box<StrictComplCertificate>),
    NoCertificateFound,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelintVerdict {
    pub status: RelintStatus,
    pub search_trace: SearchTrace,
}

impl RelintVerdict {
    pub fn certificate(&self) -> Option<&StrictComplCertificate> {
        match &self.status {
            RelintStatus::CertifiedYes(c) => Some(c),
            RelintStatus::NoCertificateFound => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = match &self.status {
            RelintStatus::CertifiedYes(cert) => {
                serde_json::json!({ "status": "certified", "certificate": cert.to_json() })
            }
            RelintStatus::NoCertificateFound => serde_json::json!({ "status": "no_certificate_found" }),
        };
        v["search_trace"] = serde_json::to_value(&self.search_trace).expect("serializable");
        v
    }
}

/// Columns of an `n x k` matrix.
fn columns_mat(n: usize, cols: &[Vec<Rat>]) -> Mat {
    Mat::from_columns(n, cols)
}

/// `N^T S N` for `N` with the given columns.
fn compress(cols: &[Vec<Rat>], s: &SymMat) -> SymMat {
    let k = cols.len();
    let sn: Vec<Vec<Rat>> = cols.iter().map(|b| s.mul_vec(b)).collect();
    let mut out = SymMat::zeros(numeric_labels(k));
    for i in 0..k {
        for j in i..k {
            let v = cols[i]
                .iter()
                .zip(&sn[j])
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rat::zero(), |acc, (a, b)| acc + a * b);
            out.set(i, j, v);
        }
    }
    out
}

/// Block-diagonal `A ⊕ Diag(d)`.
fn block_diag(a: &SymMat, d: &[Rat]) -> SymMat {
    let n = a.n();
    let mut out = SymMat::zeros(numeric_labels(n + d.len()));
    for i in 0..n {
        for j in i..n {
            out.set(i, j, a.get(i, j).clone());
        }
    }
    for (k, v) in d.iter().enumerate() {
        out.set(n + k, n + k, v.clone());
    }
    out
}

fn axpy(base: &[Rat], dirs: &[Vec<Rat>], u: &[Rat]) -> Vec<Rat> {
    let mut y = base.to_vec();
    for (uj, k) in u.iter().zip(dirs) {
        if uj.is_zero() {
            continue;
        }
        for (yi, ki) in y.iter_mut().zip(k) {
            *yi += uj * ki;
        }
    }
    y
}

/// Particular solution and kernel basis of a linear system.
type Solution = (Vec<Rat>, Vec<Vec<Rat>>);

/// Solve `S(v) R = 0` for `S(v) = Σ v_k M_k - target` and range columns `R`.
fn solve_range_system(
    mats: &[&SymMat],
    target: &SymMat,
    range: &[Vec<Rat>],
) -> Result<Option<Solution>, Error> {
    let n = target.n();
    let m = mats.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for r in range {
        let images: Vec<Vec<Rat>> = mats.iter().map(|a| a.mul_vec(r)).collect();
        let tr = target.mul_vec(r);
        for i in 0..n {
            rows.push((0..m).map(|k| images[k][i].clone()).collect::<Vec<_>>());
            rhs.push(tr[i].clone());
        }
    }
    if rows.is_empty() {
        let kernel = (0..m).map(|k| crate::spectra::unit(m, k)).collect();
        return Ok(Some((vec![Rat::zero(); m], kernel)));
    }
    if m == 0 {
        return Ok(if rhs.iter().all(Zero::is_zero) {
            Some((vec![], vec![]))
        } else {
            None
        });
    }
    let a = Mat::from_rows(rows)?;
    Ok(a.solve(&rhs).map(|(p, k)| (p, k.into_vectors())))
}

fn combination(mats: &[&SymMat], v: &[Rat], target: &SymMat) -> SymMat {
    let mut s = target.scale(&rat(-1, 1));
    for (vk, a) in v.iter().zip(mats) {
        if !vk.is_zero() {
            s.add_scaled(vk, a);
        }
    }
    s
}

/// Look for `y` with `S = A*(y) - c` in the relative interior of the
/// conjugate face of `X`, which certifies `c ∈ relint N(C; X)`.
pub fn relint_membership(c: &Spectrahedron, x: &SymMat, objective: &SymMat) -> Result<RelintVerdict, Error> {
    if !c.is_equality_only() {
        return Err(Error::InequalitiesUnsupported);
    }
    c.check_slater()?;
    c.require_feasible(x)?;
    c.check_point_space(objective)?;
    let xm = x.to_mat();
    let range = xm.column_space().into_vectors();
    let (_, nullb) = xm.rank_nullspace();
    let null = nullb.into_vectors();
    let mats: Vec<&SymMat> = c.eq.iter().map(|k| &k.a).collect();

    let Some((y0, kernel)) = solve_range_system(&mats, objective, &range)? else {
        return Ok(RelintVerdict {
            status: RelintStatus::NoCertificateFound,
            search_trace: SearchTrace {
                iterations: 0,
                best_lower_bound: None,
                approximate_min_eig: f64::NEG_INFINITY,
            },
        });
    };
    let pencil = Pencil {
        base: compress(&null, &combination(&mats, &y0, objective)),
        dirs: kernel
            .iter()
            .map(|k| compress(&null, &c.adjoint_eq(k)))
            .collect(),
    };
    let verify = |u: &[Rat]| -> Option<StrictComplCertificate> {
        let y = axpy(&y0, &kernel, u);
        let s = combination(&mats, &y, objective);
        if !check_pair(c, x, &s).ok()? {
            return None;
        }
        let cert = StrictComplCertificate {
            rank_x: x.rank(),
            rank_s: s.rank(),
            x: x.clone(),
            s,
            y,
            verified: true,
        };
        verify_certificate(c, Some(objective), &cert)
            .ok()?
            .then_some(cert)
    };
    let (found, search_trace) = search(&pencil, &[vec![Rat::zero(); kernel.len()]], verify);
    Ok(RelintVerdict {
        status: match found {
            Some(cert) => RelintStatus::CertifiedYes(Box::new(cert)),
            None => RelintStatus::NoCertificateFound,
        },
        search_trace,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolarVerdict {
    /// `A*(y) - c` is PSD and `<x0, A*(y)> <= 1`.
    CertifiedMember { y: Vec<Rat>, slack: SymMat },
    NoCertificateFound,
}

impl PolarVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            PolarVerdict::CertifiedMember { y, slack } => serde_json::json!({
                "status": "certified_member",
                "y": y.iter().map(crate::exactla::format_rat).collect::<Vec<_>>(),
                "slack": matrix_to_json(slack),
            }),
            PolarVerdict::NoCertificateFound => serde_json::json!({ "status": "no_certificate_found" }),
        }
    }
}

/// Certify `c` in the polar of `C` by finding `y` with `A*(y) - c` PSD and
/// `<x0, A*(y)> <= 1`, where `A(x0) = a`.
pub fn polar_membership(
    c: &Spectrahedron,
    objective: &SymMat,
    x0: &SymMat,
) -> Result<(PolarVerdict, SearchTrace), Error> {
    if !c.is_equality_only() {
        return Err(Error::InequalitiesUnsupported);
    }
    c.check_slater()?;
    c.check_point_space(objective)?;
    if c.apply_eq(x0)? != c.eq_rhs() {
        return Err(Error::Infeasible("x0 does not satisfy the equalities".into()));
    }
    let m = c.eq.len();
    let mats: Vec<&SymMat> = c.eq.iter().map(|k| &k.a).collect();
    let ax0: Vec<Rat> = mats.iter().map(|a| a.frobenius(x0)).collect::<Result<_, _>>()?;

    let mut seeds = vec![vec![Rat::zero(); m]];
    if m > 0 {
        let cols: Vec<Vec<Rat>> = mats.iter().map(|a| a.coords().to_vec()).collect();
        let sys = columns_mat(objective.coords().len(), &cols);
        if let Some((p, _)) = sys.solve(objective.coords()) {
            seeds.push(p);
        }
    }
    let pencil = Pencil {
        base: block_diag(&objective.scale(&rat(-1, 1)), &[rat(1, 1)]),
        dirs: (0..m)
            .map(|k| block_diag(mats[k], &[-ax0[k].clone()]))
            .collect(),
    };
    let verify = |y: &[Rat]| -> Option<(Vec<Rat>, SymMat)> {
        let slack = combination(&mats, y, objective);
        let val = y.iter().zip(&ax0).fold(Rat::zero(), |acc, (a, b)| acc + a * b);
        (val <= rat(1, 1) && is_psd(&slack)).then(|| (y.to_vec(), slack))
    };
    let (found, trace) = search(&pencil, &seeds, verify);
    Ok((
        match found {
            Some((y, slack)) => PolarVerdict::CertifiedMember { y, slack },
            None => PolarVerdict::NoCertificateFound,
        },
        trace,
    ))
}

/// `Y = A*(z) + B_P*(w) - S` with `w >= 0` on the active inequalities and `S`
/// in the conjugate face of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalDecomposition {
    pub z: Vec<Rat>,
    pub active: Vec<usize>,
    pub w: Vec<Rat>,
    pub s: SymMat,
}

/// Search for a normal-cone decomposition of `y` at `X`.
pub fn normal_cone_certificate(
    c: &Spectrahedron,
    x: &SymMat,
    y: &SymMat,
) -> Result<Option<NormalDecomposition>, Error> {
    c.require_feasible(x)?;
    c.check_point_space(y)?;
    let active = c.active_ineq(x)?;
    let xm = x.to_mat();
    let range = xm.column_space().into_vectors();
    let null = xm.rank_nullspace().1.into_vectors();
    let mats: Vec<&SymMat> = c
        .eq
        .iter()
        .map(|k| &k.a)
        .chain(active.iter().map(|&i| &c.ineq[i].a))
        .collect();
    let m = c.eq.len();
    let Some((v0, kernel)) = solve_range_system(&mats, y, &range)? else {
        return Ok(None);
    };
    let w_part = |v: &[Rat]| v[m..].to_vec();
    let pencil = Pencil {
        base: block_diag(&compress(&null, &combination(&mats, &v0, y)), &w_part(&v0)),
        dirs: kernel
            .iter()
            .map(|k| {
                let zero = SymMat::zeros(y.labels().clone());
                block_diag(&compress(&null, &combination(&mats, k, &zero)), &w_part(k))
            })
            .collect(),
    };
    let verify = |u: &[Rat]| -> Option<NormalDecomposition> {
        let v = axpy(&v0, &kernel, u);
        if v[m..].iter().any(Signed::is_negative) {
            return None;
        }
        let s = combination(&mats, &v, y);
        if !is_psd(&s) || !xm.mul(&s.to_mat()).ok()?.is_zero() {
            return None;
        }
        Some(NormalDecomposition {
            z: v[..m].to_vec(),
            active: active.clone(),
            w: v[m..].to_vec(),
            s,
        })
    };
    Ok(search(&pencil, &[vec![Rat::zero(); kernel.len()]], verify).0)
}

/// `y` lies in the exposed face `{y ∈ N(C; X) : <y, X> = 1}` of the polar,
/// as far as a normal-cone certificate can be found.
pub fn polar_face_contains(c: &Spectrahedron, x: &SymMat, y: &SymMat) -> Result<bool, Error> {
    c.require_feasible(x)?;
    if y.frobenius(x)? != rat(1, 1) {
        return Ok(false);
    }
    Ok(normal_cone_certificate(c, x, y)?.is_some())
}

/// `L_G(w) / 4`, the MaxCut objective over the elliptope.
pub fn maxcut_objective(g: &Graph, weights: &[Rat]) -> Result<SymMat, Error> {
    let l = laplacian(g, weights)?;
    let obj = l.scale(&rat(1, 4));
    debug_assert!(is_psd(&obj));
    Ok(obj)
}
