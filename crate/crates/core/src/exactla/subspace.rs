use num_traits::Zero;

use super::mat::Mat;
use super::rat::Rat;
use crate::error::Error;

/// A linearly independent list of rational vectors in `Q^ambient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient: usize,
    vectors: Vec<Vec<Rat>>,
}

impl SubspaceBasis {
    /// Wrap vectors already known to be independent (e.g. nullspace output).
    pub(crate) fn from_independent(ambient: usize, vectors: Vec<Vec<Rat>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        SubspaceBasis { ambient, vectors }
    }

    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            vectors: Vec::new(),
        }
    }

    /// Basis of the linear span of arbitrary vectors (duplicates and zeros
    /// allowed).
    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Result<Self, Error> {
        check_ambient(ambient, vectors)?;
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let (r, pivots) = Mat::from_rows(vectors.to_vec())?.rref();
        Ok(SubspaceBasis {
            ambient,
            vectors: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        })
    }

    /// The whole space `Q^ambient`.
    pub fn full(ambient: usize) -> Self {
        let m = Mat::identity(ambient);
        SubspaceBasis {
            ambient,
            vectors: (0..ambient).map(|i| m.row(i).to_vec()).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Rat>] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<Vec<Rat>> {
        self.vectors
    }

    /// Orthogonal complement under the standard dot product.
    pub fn complement(&self) -> SubspaceBasis {
        if self.vectors.is_empty() {
            return Self::full(self.ambient);
        }
        let m = Mat::from_rows(self.vectors.clone()).expect("uniform length");
        m.rank_nullspace().1
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.vectors.clone();
        rows.push(v.to_vec());
        Mat::from_rows(rows).expect("uniform length").rank() == self.vectors.len()
    }
}

fn check_ambient(ambient: usize, vectors: &[Vec<Rat>]) -> Result<(), Error> {
    match vectors.iter().find(|v| v.len() != ambient) {
        Some(v) => Err(Error::Dimension(format!(
            "vector of length {} in ambient space of dimension {ambient}",
            v.len()
        ))),
        None => Ok(()),
    }
}

/// Exact dimension of the linear span of `vectors`.
pub fn span_dim(vectors: &[Vec<Rat>]) -> Result<usize, Error> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    check_ambient(first.len(), vectors)?;
    Ok(Mat::from_rows(vectors.to_vec())?.rank())
}

/// Basis of the intersection of the given subspaces, computed as the
/// nullspace of the stacked complements.
pub fn subspace_intersection(bases: &[SubspaceBasis]) -> Result<SubspaceBasis, Error> {
    let Some(first) = bases.first() else {
        return Err(Error::Dimension("empty intersection list".into()));
    };
    let d = first.ambient;
    if let Some(b) = bases.iter().find(|b| b.ambient != d) {
        return Err(Error::Dimension(format!(
            "ambient mismatch: {d} vs {}",
            b.ambient
        )));
    }
    let constraints: Vec<Vec<Rat>> = bases
        .iter()
        .flat_map(|b| b.complement().into_vectors())
        .collect();
    if constraints.is_empty() {
        return Ok(SubspaceBasis::full(d));
    }
    Ok(Mat::from_rows(constraints)?.rank_nullspace().1)
}
