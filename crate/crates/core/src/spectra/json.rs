//! Exact JSON forms of matrices, points and spectrahedra. Rationals are
//! always strings (`"p/q"` or `"p"`).

use serde::{Deserialize, Serialize};

use super::{Constraint, Spectrahedron};
use crate::error::Error;
use crate::exactla::rat::serde_rat;
use crate::exactla::{format_rat, labels, parse_rat, Labels, Mat, Rat, SymMat};

pub type MatrixJson = Vec<Vec<String>>;

pub fn matrix_to_json(x: &SymMat) -> MatrixJson {
    x.rows()
        .iter()
        .map(|r| r.iter().map(format_rat).collect())
        .collect()
}

/// Parse a full square grid; it must be exactly symmetric and match the labels.
pub fn matrix_from_json(labels: Labels, rows: &MatrixJson) -> Result<SymMat, Error> {
    let n = labels.len();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!(
            "expected a {n}x{n} matrix matching the labels"
        )));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<Vec<Rat>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    SymMat::from_mat(labels, &Mat::from_rows(parsed)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintJson {
    #[serde(rename = "A")]
    a: MatrixJson,
    #[serde(with = "serde_rat")]
    rhs: Rat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrahedronJson {
    labels: Vec<String>,
    eq: Vec<ConstraintJson>,
    #[serde(default)]
    ineq: Vec<ConstraintJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    slater: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<String>,
}

/// A point `X` on a label set.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointJson {
    labels: Vec<String>,
    #[serde(rename = "X")]
    x: MatrixJson,
}

impl Spectrahedron {
    pub fn to_json(&self) -> serde_json::Value {
        let cons = |v: &[Constraint]| {
            v.iter()
                .map(|k| ConstraintJson {
                    a: matrix_to_json(&k.a),
                    rhs: k.rhs.clone(),
                })
                .collect()
        };
        let j = SpectrahedronJson {
            labels: self.labels().to_vec(),
            eq: cons(&self.eq),
            ineq: cons(&self.ineq),
            slater: self.slater.as_ref().map(matrix_to_json),
            family: self.family.clone(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    /// Parse and validate shapes and symmetry. A present Slater witness is
    /// checked to be positive definite and feasible.
    pub fn from_json_str(text: &str) -> Result<Self, Error> {
        let j: SpectrahedronJson = serde_json::from_str(text)?;
        let labels = labels(j.labels)?;
        let cons = |v: Vec<ConstraintJson>| {
            v.into_iter()
                .map(|k| Ok(Constraint::new(matrix_from_json(labels.clone(), &k.a)?, k.rhs)))
                .collect::<Result<Vec<_>, Error>>()
        };
        let eq = cons(j.eq)?;
        let ineq = cons(j.ineq)?;
        let slater = j
            .slater
            .map(|s| matrix_from_json(labels.clone(), &s))
            .transpose()?;
        let c = Spectrahedron::new(labels, eq, ineq, slater, j.family)?;
        if c.slater.is_some() {
            c.check_slater()?;
        }
        Ok(c)
    }
}

pub fn point_to_json(x: &SymMat) -> serde_json::Value {
    serde_json::to_value(PointJson {
        labels: x.labels().to_vec(),
        x: matrix_to_json(x),
    })
    .expect("serializable")
}

/// Parse `{"labels": [...], "X": [[...]]}`.
pub fn point_from_json_str(text: &str) -> Result<SymMat, Error> {
    let j: PointJson = serde_json::from_str(text)?;
    matrix_from_json(labels(j.labels)?, &j.x)
}
