use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::{Constraint, Spectrahedron, ROOT};
use crate::error::Error;
use crate::exactla::sym::congruence_unchecked;
use crate::exactla::{half, int, is_psd, Labels, Mat, Rat, SymMat};
use crate::graphs::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformName {
    Flip,
    SignToIncid,
    Custom,
}

impl fmt::Display for TransformName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformName::Flip => "flip",
            TransformName::SignToIncid => "sign-to-incid",
            TransformName::Custom => "custom",
        })
    }
}

/// Nonsingular `L` acting by `X -> L X L^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceTransform {
    pub l: Mat,
    pub name: TransformName,
    pub labels: Labels,
}

impl CongruenceTransform {
    pub fn custom(l: Mat, labels: Labels) -> Result<Self, Error> {
        if !l.is_square() {
            return Err(Error::NonSquare {
                rows: l.rows(),
                cols: l.cols(),
            });
        }
        if l.rows() != labels.len() {
            return Err(Error::Dimension("transform size differs from label count".into()));
        }
        if !l.is_nonsingular() {
            return Err(Error::Singular);
        }
        Ok(CongruenceTransform {
            l,
            name: TransformName::Custom,
            labels,
        })
    }

    pub fn identity(labels: Labels) -> Self {
        CongruenceTransform {
            l: Mat::identity(labels.len()),
            name: TransformName::Custom,
            labels,
        }
    }

    /// `L X L^T`.
    pub fn apply(&self, x: &SymMat) -> Result<SymMat, Error> {
        if x.labels() != &self.labels {
            return Err(Error::LabelMismatch);
        }
        Ok(congruence_unchecked(&self.l, x))
    }
}

/// The flip `M̂` or sign-to-incidence `Σ` matrix on `0 ∪ V`.
pub fn transform_matrix(name: TransformName, v: &Labels) -> Result<CongruenceTransform, Error> {
    if v.iter().any(|l| l == ROOT) {
        return Err(Error::RootClash(ROOT.into()));
    }
    let n = v.len() + 1;
    let mut l = Mat::zeros(n, n);
    match name {
        TransformName::Flip => {
            l[(0, 0)] = int(1);
            for i in 1..n {
                l[(i, 0)] = int(1);
                l[(i, i)] = int(-1);
            }
        }
        TransformName::SignToIncid => {
            l[(0, 0)] = int(1);
            for i in 1..n {
                l[(i, 0)] = half();
                l[(i, i)] = half();
            }
        }
        TransformName::Custom => {
            return Err(Error::InvalidSpec("custom transforms need an explicit matrix".into()))
        }
    }
    let labels = Arc::new(std::iter::once(ROOT.to_string()).chain(v.iter().cloned()).collect());
    Ok(CongruenceTransform { l, name, labels })
}

/// Image of `C` under `X -> L X L^T`: constraint matrices map by
/// `A -> L^{-T} A L^{-1}`, right-hand sides stay, the witness maps by `L`.
pub fn pushforward(c: &Spectrahedron, t: &CongruenceTransform) -> Result<Spectrahedron, Error> {
    if c.labels() != &t.labels {
        return Err(Error::LabelMismatch);
    }
    let inv_t = t.l.inverse()?.transpose();
    let map = |k: &Constraint| Constraint::new(congruence_unchecked(&inv_t, &k.a), k.rhs.clone());
    Spectrahedron::new(
        c.labels().clone(),
        c.eq.iter().map(map).collect(),
        c.ineq.iter().map(map).collect(),
        c.slater.as_ref().map(|s| congruence_unchecked(&t.l, s)),
        c.family.as_ref().map(|f| format!("{}({f})", t.name)),
    )
}

/// `Σ_{ij ∈ E} w_ij (e_i - e_j)(e_i - e_j)^T`, with weights listed in edge order.
pub fn laplacian(g: &Graph, weights: &[Rat]) -> Result<SymMat, Error> {
    if weights.len() != g.edges().len() {
        return Err(Error::Dimension(format!(
            "{} weights for {} edges",
            weights.len(),
            g.edges().len()
        )));
    }
    let mut l = SymMat::zeros(g.vertices().clone());
    for (&(i, j), w) in g.edges().iter().zip(weights) {
        if w.is_negative() {
            return Err(Error::NegativeWeight(format!("{} {}", g.label(i), g.label(j))));
        }
        if w.is_zero() {
            continue;
        }
        l.set(i, i, l.get(i, i) + w);
        l.set(j, j, l.get(j, j) + w);
        l.set(i, j, l.get(i, j) - w);
    }
    debug_assert!(is_psd(&l));
    Ok(l)
}

pub fn unit_laplacian(g: &Graph) -> SymMat {
    laplacian(g, &vec![int(1); g.edges().len()]).expect("unit weights")
}
