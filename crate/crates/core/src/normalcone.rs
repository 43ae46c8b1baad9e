//! Normal cones of spectrahedra at feasible points.
//!
//! Two independent routes compute `dim N(C; X)`:
//!
//! * direct: the span of the generators `{A_i} ∪ {B_i : i active} ∪ {b b^T : b ∈ Null(X)}`.
//!   The normal cone is `Im(A*) + cone{B_i active} - cone{b b^T}`; it contains
//!   the subspace `Im(A*)` and each summand contains 0, so its dimension is
//!   the dimension of the span of all generators.
//! * formula: `dim Sym^n - dim(Null(A) ∩ Null(P∘B) ∩ span{Ŝ(X u v^T)})`,
//!   where `P` keeps the active inequalities.

use num_traits::Zero;
use serde::Serialize;

use crate::error::Error;
use crate::exactla::{is_psd, one, span_dim, sym_dim, tri, Mat, Rat, SubspaceBasis, SymMat};
use crate::spectra::{unit, Spectrahedron};

/// The face `PSD ∩ {X}^⊥` of the PSD cone, spanned by `b b^T` for `b ∈ Null(X)`.
#[derive(Clone, Debug)]
pub struct ConjugateFace {
    pub point: SymMat,
    pub nullbasis: SubspaceBasis,
    /// `Ŝ(b_i b_j^T)` for `i <= j` over the null basis.
    pub span_basis: Vec<SymMat>,
    pub dim: usize,
}

pub fn conjugate_face(x: &SymMat) -> Result<ConjugateFace, Error> {
    if !is_psd(x) {
        return Err(Error::NotPsd);
    }
    let (_, nullbasis) = x.to_mat().rank_nullspace();
    let b = nullbasis.vectors();
    let mut span_basis = Vec::with_capacity(tri(b.len()));
    for i in 0..b.len() {
        for j in i..b.len() {
            span_basis.push(SymMat::sym_outer(x.labels().clone(), &b[i], &b[j]));
        }
    }
    let formula = tri(nullbasis.dim());
    let span = span_dim(&coords_of(&span_basis))?;
    if span != formula {
        return Err(Error::FaceDimension { formula, span });
    }
    Ok(ConjugateFace {
        point: x.clone(),
        nullbasis,
        span_basis,
        dim: formula,
    })
}

fn coords_of(ms: &[SymMat]) -> Vec<Vec<Rat>> {
    ms.iter().map(|m| m.coords().to_vec()).collect()
}

/// `S` lies in the relative interior of the conjugate face of `X`:
/// `S` PSD, `X S = 0` and `rank S = nullity X`.
pub fn in_relint_conjugate_face(x: &SymMat, s: &SymMat) -> Result<bool, Error> {
    x.check_same_space(s)?;
    if !is_psd(s) {
        return Ok(false);
    }
    let xm = x.to_mat();
    if !xm.mul(&s.to_mat())?.is_zero() {
        return Ok(false);
    }
    Ok(s.rank() == x.n() - xm.rank())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalConeReport {
    pub ambient_dim: usize,
    pub active: Vec<usize>,
    pub nullity: usize,
    pub dim_direct: usize,
    pub dim_formula: usize,
    pub is_vertex: bool,
}

fn preconditions(c: &Spectrahedron, x: &SymMat) -> Result<Vec<usize>, Error> {
    c.check_slater()?;
    c.require_feasible(x)?;
    c.active_ineq(x)
}

fn direct(c: &Spectrahedron, x: &SymMat, active: &[usize]) -> Result<usize, Error> {
    let face = conjugate_face(x)?;
    let mut gens: Vec<Vec<Rat>> = c.eq.iter().map(|k| k.a.coords().to_vec()).collect();
    gens.extend(active.iter().map(|&i| c.ineq[i].a.coords().to_vec()));
    gens.extend(coords_of(&face.span_basis));
    span_dim(&gens)
}

fn formula(c: &Spectrahedron, x: &SymMat, active: &[usize]) -> Result<usize, Error> {
    let n = c.n();
    // Null(A) ∩ Null(P∘B) is the kernel of these functionals on coordinates.
    let rows: Vec<Vec<Rat>> = c
        .eq
        .iter()
        .map(|k| &k.a)
        .chain(active.iter().map(|&i| &c.ineq[i].a))
        .map(SymMat::frobenius_functional)
        .collect();
    let mut kernel_gens = Vec::new();
    let xm = x.to_mat();
    for i in 0..n {
        let xi = xm.mul_vec(&unit(n, i));
        for j in 0..n {
            kernel_gens.push(SymMat::sym_outer(x.labels().clone(), &xi, &unit(n, j)).coords().to_vec());
        }
    }
    let w = SubspaceBasis::span(sym_dim(n), &kernel_gens)?;
    let inter = if rows.is_empty() {
        w
    } else {
        let (_, kernel) = Mat::from_rows(rows)?.rank_nullspace();
        crate::exactla::subspace_intersection(&[kernel, w])?
    };
    Ok(sym_dim(n) - inter.dim())
}

pub fn normal_cone_dim_direct(c: &Spectrahedron, x: &SymMat) -> Result<usize, Error> {
    let active = preconditions(c, x)?;
    direct(c, x, &active)
}

pub fn normal_cone_dim_formula(c: &Spectrahedron, x: &SymMat) -> Result<usize, Error> {
    let active = preconditions(c, x)?;
    formula(c, x, &active)
}

/// Full-dimensionality test; both routes are computed and must agree.
pub fn is_vertex(c: &Spectrahedron, x: &SymMat) -> Result<NormalConeReport, Error> {
    let active = preconditions(c, x)?;
    let dim_direct = direct(c, x, &active)?;
    let dim_formula = formula(c, x, &active)?;
    if dim_direct != dim_formula {
        return Err(Error::RouteDisagreement {
            direct: dim_direct,
            formula: dim_formula,
        });
    }
    let ambient_dim = sym_dim(c.n());
    Ok(NormalConeReport {
        ambient_dim,
        active,
        nullity: c.n() - x.rank(),
        dim_direct,
        dim_formula,
        is_vertex: dim_direct == ambient_dim,
    })
}

/// Vertex test at `x x^T`: the vectors `A_i x` and `B_i x` (active `i`) span `Q^n`.
pub fn rank_one_vertex_test(c: &Spectrahedron, x: &[Rat]) -> Result<bool, Error> {
    if x.len() != c.n() {
        return Err(Error::Dimension(format!("vector of length {} for order {}", x.len(), c.n())));
    }
    if x.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let xx = SymMat::dyad(c.labels().clone(), x);
    let active = preconditions(c, &xx)?;
    let rows: Vec<Vec<Rat>> = c
        .eq
        .iter()
        .map(|k| &k.a)
        .chain(active.iter().map(|&i| &c.ineq[i].a))
        .map(|a| a.mul_vec(x))
        .collect();
    Ok(!rows.is_empty() && Mat::from_rows(rows)?.rank() == c.n())
}

/// A hypothesis of the modular-rank formula that fails for an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "hypothesis", rename_all = "snake_case")]
pub enum ModularRankFailure {
    HasInequalities,
    ZeroRhs { index: usize },
    RankNotAdditive { rank_of_sum: usize, sum_of_ranks: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModularRank {
    Value(usize),
    NotApplicable(ModularRankFailure),
}

/// `dim Im(A*) + binom(nullity + 1, 2)`, valid for equality-only `C` with
/// all right-hand sides nonzero and `rank(Σ A_i) = Σ rank(A_i)`.
pub fn modular_rank_dim(c: &Spectrahedron, x: &SymMat) -> Result<ModularRank, Error> {
    c.check_slater()?;
    c.require_feasible(x)?;
    if !c.is_equality_only() {
        return Ok(ModularRank::NotApplicable(ModularRankFailure::HasInequalities));
    }
    if let Some(index) = c.eq.iter().position(|k| k.rhs.is_zero()) {
        return Ok(ModularRank::NotApplicable(ModularRankFailure::ZeroRhs { index }));
    }
    let ones = vec![one(); c.eq.len()];
    let rank_of_sum = c.adjoint_eq(&ones).rank();
    let sum_of_ranks = c.eq.iter().map(|k| k.a.rank()).sum();
    if rank_of_sum != sum_of_ranks {
        return Ok(ModularRank::NotApplicable(ModularRankFailure::RankNotAdditive {
            rank_of_sum,
            sum_of_ranks,
        }));
    }
    let im = span_dim(&coords_of(&c.eq.iter().map(|k| k.a.clone()).collect::<Vec<_>>()))?;
    Ok(ModularRank::Value(im + tri(c.n() - x.rank())))
}

/// Check a rank-bound certificate `h_0, h_1..h_k` (`1 <= k <= n-1`, linearly
/// independent, every `Ŝ(h_0 h_i^T)` annihilated by the equality map) and
/// return the bound `n - k`. Each supplied vertex must respect the bound.
pub fn verify_rank_bound_certificate(
    c: &Spectrahedron,
    h: &[Vec<Rat>],
    vertices: &[SymMat],
) -> Result<usize, Error> {
    let n = c.n();
    if !c.is_equality_only() {
        return Err(Error::InequalitiesUnsupported);
    }
    c.check_slater()?;
    if h.len() < 2 || h.len() > n {
        return Err(Error::InvalidCertificate(format!(
            "need h_0 plus 1..={} vectors, got {} in total",
            n.saturating_sub(1),
            h.len()
        )));
    }
    if h.iter().any(|v| v.len() != n) {
        return Err(Error::InvalidCertificate("vector length differs from order".into()));
    }
    if Mat::from_rows(h.to_vec())?.rank() != h.len() {
        return Err(Error::InvalidCertificate("vectors are linearly dependent".into()));
    }
    for (i, hi) in h.iter().enumerate().skip(1) {
        let m = SymMat::sym_outer(c.labels().clone(), &h[0], hi);
        if c.apply_eq(&m)?.iter().any(|v| !v.is_zero()) {
            return Err(Error::InvalidCertificate(format!(
                "Ŝ(h_0 h_{i}^T) is not in the kernel of the equality map"
            )));
        }
    }
    let bound = n - (h.len() - 1);
    for (i, v) in vertices.iter().enumerate() {
        c.check_point_space(v)?;
        let r = v.rank();
        if r > bound {
            return Err(Error::InvalidCertificate(format!(
                "vertex {i} has rank {r} above the bound {bound}"
            )));
        }
    }
    Ok(bound)
}
