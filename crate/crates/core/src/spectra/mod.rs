//! Spectrahedra `{X PSD : <A_i, X> = a_i, <B_i, X> <= b_i}` and the
//! combinatorial families built from graphs.

mod family;
pub mod json;
mod transform;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::exactla::{is_pd, is_psd, Labels, Rat, SymMat};

pub use family::{build, rank_one_point, sign_vector, Candidate, FamilyKind, FamilySpec, ROOT};
pub use transform::{laplacian, pushforward, transform_matrix, unit_laplacian, CongruenceTransform, TransformName};

/// One linear constraint `<a, X> (= or <=) rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub a: SymMat,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(a: SymMat, rhs: Rat) -> Self {
        Constraint { a, rhs }
    }

    /// `<a, X>`.
    pub fn eval(&self, x: &SymMat) -> Result<Rat, Error> {
        self.a.frobenius(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrahedron {
    labels: Labels,
    pub eq: Vec<Constraint>,
    /// Normalized to sense `<=`.
    pub ineq: Vec<Constraint>,
    pub slater: Option<SymMat>,
    pub family: Option<String>,
}

impl Spectrahedron {
    /// Checks that every constraint lives on `labels`; the Slater witness is
    /// validated separately by [`Spectrahedron::check_slater`].
    pub fn new(
        labels: Labels,
        eq: Vec<Constraint>,
        ineq: Vec<Constraint>,
        slater: Option<SymMat>,
        family: Option<String>,
    ) -> Result<Self, Error> {
        let c = Spectrahedron {
            labels,
            eq,
            ineq,
            slater,
            family,
        };
        for k in c.eq.iter().chain(&c.ineq) {
            c.check_point_space(&k.a)?;
        }
        if let Some(s) = &c.slater {
            c.check_point_space(s)?;
        }
        Ok(c)
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn is_equality_only(&self) -> bool {
        self.ineq.is_empty()
    }

    pub fn check_point_space(&self, x: &SymMat) -> Result<(), Error> {
        if x.labels() == &self.labels {
            Ok(())
        } else {
            Err(Error::LabelMismatch)
        }
    }

    /// First violated linear constraint, if any.
    fn linear_violation(&self, x: &SymMat) -> Result<Option<String>, Error> {
        self.check_point_space(x)?;
        for (i, k) in self.eq.iter().enumerate() {
            if k.eval(x)? != k.rhs {
                return Ok(Some(format!("equality {i} violated")));
            }
        }
        for (i, k) in self.ineq.iter().enumerate() {
            if k.eval(x)? > k.rhs {
                return Ok(Some(format!("inequality {i} violated")));
            }
        }
        Ok(None)
    }

    /// Exact membership test.
    pub fn is_feasible(&self, x: &SymMat) -> Result<bool, Error> {
        Ok(self.linear_violation(x)?.is_none() && is_psd(x))
    }

    /// `Ok(())` if `x` is feasible, otherwise an `Infeasible` error saying why.
    pub fn require_feasible(&self, x: &SymMat) -> Result<(), Error> {
        if let Some(why) = self.linear_violation(x)? {
            return Err(Error::Infeasible(why));
        }
        if !is_psd(x) {
            return Err(Error::Infeasible("not positive semidefinite".into()));
        }
        Ok(())
    }

    /// Indices of inequalities tight at `x`.
    pub fn active_ineq(&self, x: &SymMat) -> Result<Vec<usize>, Error> {
        let mut out = Vec::new();
        for (i, k) in self.ineq.iter().enumerate() {
            if k.eval(x)? == k.rhs {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// The stored witness, after checking it is positive definite and feasible.
    pub fn check_slater(&self) -> Result<&SymMat, Error> {
        let s = self.slater.as_ref().ok_or(Error::MissingSlater)?;
        if let Some(why) = self.linear_violation(s)? {
            return Err(Error::InvalidSlater(why));
        }
        if !is_pd(s) {
            return Err(Error::InvalidSlater("not positive definite".into()));
        }
        Ok(s)
    }

    /// `A*(y) = sum y_i A_i` over the equality constraints.
    pub fn adjoint_eq(&self, y: &[Rat]) -> SymMat {
        assert_eq!(y.len(), self.eq.len());
        let mut out = SymMat::zeros(self.labels.clone());
        for (yi, k) in y.iter().zip(&self.eq) {
            if !yi.is_zero() {
                out.add_scaled(yi, &k.a);
            }
        }
        out
    }

    /// `A(X)` over the equality constraints.
    pub fn apply_eq(&self, x: &SymMat) -> Result<Vec<Rat>, Error> {
        self.eq.iter().map(|k| k.eval(x)).collect()
    }

    pub fn eq_rhs(&self) -> Vec<Rat> {
        self.eq.iter().map(|k| k.rhs.clone()).collect()
    }
}

/// `{X̂ on 0 ∪ labels : X̂[labels] ∈ C}`: every constraint acts on the
/// non-root block only. The witness becomes `1 ⊕ slater`.
pub fn smash_lift(c: &Spectrahedron) -> Result<Spectrahedron, Error> {
    if c.labels().iter().any(|l| l == ROOT) {
        return Err(Error::RootClash(ROOT.into()));
    }
    let labels: Labels = std::sync::Arc::new(
        std::iter::once(ROOT.to_string())
            .chain(c.labels().iter().cloned())
            .collect(),
    );
    let embed = |m: &SymMat| {
        let mut out = SymMat::zeros(labels.clone());
        for i in 0..m.n() {
            for j in i..m.n() {
                out.set(i + 1, j + 1, m.get(i, j).clone());
            }
        }
        out
    };
    let lift = |v: &[Constraint]| v.iter().map(|k| Constraint::new(embed(&k.a), k.rhs.clone())).collect();
    let slater = c.slater.as_ref().map(|s| {
        let mut w = embed(s);
        w.set(0, 0, Rat::one());
        w
    });
    Spectrahedron::new(
        labels.clone(),
        lift(&c.eq),
        lift(&c.ineq),
        slater,
        c.family.as_ref().map(|f| format!("smash({f})")),
    )
}

/// `e_i` in `Q^n`.
pub fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}
