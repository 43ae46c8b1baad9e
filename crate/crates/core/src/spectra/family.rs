use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::transform::{pushforward, transform_matrix, CongruenceTransform, TransformName};
use super::{unit, Constraint, Spectrahedron};
use crate::error::Error;
use crate::exactla::{int, rat, Labels, Rat, SymMat};
use crate::graphs::{Edge, Graph};

/// The distinguished root label adjoined by lifted families.
pub const ROOT: &str = "0";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    Elliptope,
    ElliptopeP,
    ElliptopePp,
    Bq,
    BqP,
    BqPp,
    LiftedTh,
    LiftedThP,
    LiftedThPlus,
    LiftedThGeneral,
    KgVc,
    KgVcP,
    Theta3,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 13] = [
        FamilyKind::Elliptope,
        FamilyKind::ElliptopeP,
        FamilyKind::ElliptopePp,
        FamilyKind::Bq,
        FamilyKind::BqP,
        FamilyKind::BqPp,
        FamilyKind::LiftedTh,
        FamilyKind::LiftedThP,
        FamilyKind::LiftedThPlus,
        FamilyKind::LiftedThGeneral,
        FamilyKind::KgVc,
        FamilyKind::KgVcP,
        FamilyKind::Theta3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Elliptope => "elliptope",
            FamilyKind::ElliptopeP => "elliptope-p",
            FamilyKind::ElliptopePp => "elliptope-pp",
            FamilyKind::Bq => "bq",
            FamilyKind::BqP => "bq-p",
            FamilyKind::BqPp => "bq-pp",
            FamilyKind::LiftedTh => "lifted-th",
            FamilyKind::LiftedThP => "lifted-th-p",
            FamilyKind::LiftedThPlus => "lifted-th-plus",
            FamilyKind::LiftedThGeneral => "lifted-th-general",
            FamilyKind::KgVc => "kg-vc",
            FamilyKind::KgVcP => "kg-vc-p",
            FamilyKind::Theta3 => "theta3",
        }
    }

    /// Uses the root label `0` in addition to the vertex labels.
    pub fn is_lifted(self) -> bool {
        !matches!(self, FamilyKind::Elliptope | FamilyKind::Theta3)
    }

    /// Depends on the edge set (as opposed to only the vertex labels).
    pub fn uses_edges(self) -> bool {
        matches!(
            self,
            FamilyKind::LiftedTh
                | FamilyKind::LiftedThP
                | FamilyKind::LiftedThPlus
                | FamilyKind::LiftedThGeneral
                | FamilyKind::KgVc
                | FamilyKind::KgVcP
                | FamilyKind::Theta3
        )
    }

    /// Takes an explicit `(E+, E-)` split.
    pub fn takes_split(self) -> bool {
        matches!(self, FamilyKind::LiftedThGeneral | FamilyKind::Theta3)
    }

    fn is_sign_family(self) -> bool {
        matches!(
            self,
            FamilyKind::Elliptope
                | FamilyKind::ElliptopeP
                | FamilyKind::ElliptopePp
                | FamilyKind::KgVc
                | FamilyKind::KgVcP
        )
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family {s:?}")))
    }
}

/// A family together with its combinatorial data.
///
/// `graph` is the graph the family is defined from; for split families it is
/// `H = (V, E+ ∪ E-)`. `e_plus`/`e_minus` hold the sign constraints actually
/// imposed (meaningful for lifted theta bodies and theta3 only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub graph: Graph,
    pub e_plus: BTreeSet<Edge>,
    pub e_minus: BTreeSet<Edge>,
}

fn all_pairs(n: usize) -> BTreeSet<Edge> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

impl FamilySpec {
    /// Family defined by a graph. Vertex-set-only families ignore the edges;
    /// `theta3` defaults to `E- = E`, `E+ = ∅`.
    pub fn on_graph(kind: FamilyKind, graph: &Graph) -> Result<Self, Error> {
        let e = graph.edges().clone();
        let n = graph.n();
        let (e_plus, e_minus, graph) = match kind {
            FamilyKind::LiftedThGeneral => {
                return Err(Error::InvalidSpec(
                    "lifted-th-general needs an explicit E+/E- split".into(),
                ))
            }
            FamilyKind::LiftedTh | FamilyKind::KgVc => (e.clone(), e, graph.clone()),
            FamilyKind::LiftedThP | FamilyKind::KgVcP => (all_pairs(n), e, graph.clone()),
            FamilyKind::LiftedThPlus | FamilyKind::Theta3 => (BTreeSet::new(), e, graph.clone()),
            _ => (
                BTreeSet::new(),
                BTreeSet::new(),
                Graph::empty(graph.vertices().clone()),
            ),
        };
        let spec = FamilySpec {
            kind,
            graph,
            e_plus,
            e_minus,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Vertex-set-only family on the given labels.
    pub fn on_labels(kind: FamilyKind, vertices: Labels) -> Result<Self, Error> {
        if kind.uses_edges() {
            return Err(Error::InvalidSpec(format!("{kind} needs a graph")));
        }
        Self::on_graph(kind, &Graph::empty(vertices))
    }

    /// Vertex-set-only family on labels `1..=n`.
    pub fn on_n(kind: FamilyKind, n: usize) -> Result<Self, Error> {
        Self::on_labels(kind, crate::exactla::numeric_labels(n))
    }

    /// Lifted theta body or theta3 with an explicit sign split.
    pub fn with_split(
        kind: FamilyKind,
        vertices: Labels,
        e_plus: BTreeSet<Edge>,
        e_minus: BTreeSet<Edge>,
    ) -> Result<Self, Error> {
        if !kind.takes_split() {
            return Err(Error::InvalidSpec(format!("{kind} takes no E+/E- split")));
        }
        let graph = Graph::new(vertices, e_plus.iter().chain(&e_minus).copied())?;
        let spec = FamilySpec {
            kind,
            graph,
            e_plus,
            e_minus,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn vertices(&self) -> &Labels {
        self.graph.vertices()
    }

    /// Number of vertex labels (excluding the root).
    pub fn n_vertices(&self) -> usize {
        self.graph.n()
    }

    pub fn validate(&self) -> Result<(), Error> {
        let n = self.graph.n();
        for &(i, j) in self.e_plus.iter().chain(&self.e_minus) {
            if i >= j || j >= n {
                return Err(Error::InvalidSpec(format!("bad edge ({i}, {j})")));
            }
        }
        if self.kind.is_lifted() && self.graph.index_of(ROOT).is_some() {
            return Err(Error::RootClash(ROOT.into()));
        }
        if self.kind == FamilyKind::Theta3 && n == 0 {
            return Err(Error::InvalidSpec("theta3 needs at least one vertex".into()));
        }
        Ok(())
    }

    /// Label space of the spectrahedron.
    pub fn space(&self) -> Labels {
        if self.kind.is_lifted() {
            lift_labels(self.vertices())
        } else {
            self.vertices().clone()
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pairs = |s: &BTreeSet<Edge>| -> Vec<[String; 2]> {
            s.iter()
                .map(|&(i, j)| [self.graph.label(i).to_string(), self.graph.label(j).to_string()])
                .collect()
        };
        let mut v = serde_json::json!({
            "kind": self.kind.name(),
            "vertices": self.vertices().as_slice(),
            "edges": pairs(self.graph.edges()),
        });
        if self.kind.takes_split() {
            v["e_plus"] = serde_json::json!(pairs(&self.e_plus));
            v["e_minus"] = serde_json::json!(pairs(&self.e_minus));
        }
        v
    }
}

fn lift_labels(v: &Labels) -> Labels {
    Arc::new(std::iter::once(ROOT.to_string()).chain(v.iter().cloned()).collect())
}

fn sym_outer(labels: &Labels, x: &[Rat], y: &[Rat]) -> SymMat {
    SymMat::sym_outer(labels.clone(), x, y)
}

fn basis_outer(labels: &Labels, i: usize, j: usize) -> SymMat {
    let n = labels.len();
    sym_outer(labels, &unit(n, i), &unit(n, j))
}

/// `e_0 + s e_i` in the lifted space.
fn root_plus(n: usize, i: usize, s: i64) -> Vec<Rat> {
    let mut v = unit(n, 0);
    v[i] = int(s);
    v
}

fn neg(m: SymMat) -> SymMat {
    m.scale(&int(-1))
}

/// `N̂(X) = 1 ⊕ 0` on a lifted space with `|V| = labels.len() - 1`.
fn boolean_quadric_eqs(labels: &Labels) -> Vec<Constraint> {
    let n = labels.len();
    let mut eqs = vec![Constraint::new(basis_outer(labels, 0, 0), Rat::one())];
    for i in 1..n {
        let mut d = unit(n, i);
        d[0] = int(-1);
        eqs.push(Constraint::new(sym_outer(labels, &unit(n, i), &d), Rat::zero()));
    }
    eqs
}

/// `X00 = 1`, `X0i = Xii = α`, zero elsewhere, `α = 1 / (2|V|)`.
fn lifted_slater(labels: &Labels) -> SymMat {
    let n = labels.len();
    let mut s = SymMat::zeros(labels.clone());
    s.set(0, 0, Rat::one());
    if n > 1 {
        let alpha = rat(1, 2 * (n as i64 - 1));
        for i in 1..n {
            s.set(0, i, alpha.clone());
            s.set(i, i, alpha.clone());
        }
    }
    s
}

/// Sign constraints `X_ij >= 0` on `E+`, `X_ij <= 0` on `E-`; pairs in both
/// become `X_ij = 0`. Indices are vertex indices shifted by `offset`.
fn sign_constraints(
    labels: &Labels,
    offset: usize,
    e_plus: &BTreeSet<Edge>,
    e_minus: &BTreeSet<Edge>,
) -> (Vec<Constraint>, Vec<Constraint>) {
    let m = |&(i, j): &Edge| basis_outer(labels, i + offset, j + offset);
    let eq = e_plus
        .intersection(e_minus)
        .map(|e| Constraint::new(m(e), Rat::zero()))
        .collect();
    let mut ineq: Vec<Constraint> = e_plus
        .difference(e_minus)
        .map(|e| Constraint::new(neg(m(e)), Rat::zero()))
        .collect();
    ineq.extend(
        e_minus
            .difference(e_plus)
            .map(|e| Constraint::new(m(e), Rat::zero())),
    );
    (eq, ineq)
}

fn diag_eqs(labels: &Labels) -> Vec<Constraint> {
    (0..labels.len())
        .map(|i| Constraint::new(basis_outer(labels, i, i), Rat::one()))
        .collect()
}

/// `<Ŝ((e0 + s ei)(e0 + s ej)^T), X> >= 0` for all vertex pairs, stored negated.
fn pair_ineqs(labels: &Labels, s: i64) -> Vec<Constraint> {
    let n = labels.len();
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 1..n {
            let m = sym_outer(labels, &root_plus(n, i, s), &root_plus(n, j, s));
            out.push(Constraint::new(neg(m), Rat::zero()));
        }
    }
    out
}

fn kg_transform(v: &Labels) -> Result<CongruenceTransform, Error> {
    let flip = transform_matrix(TransformName::Flip, v)?;
    let sigma = transform_matrix(TransformName::SignToIncid, v)?;
    let l = sigma.l.inverse()?.mul(&flip.l)?;
    CongruenceTransform::custom(l, flip.labels.clone())
}

/// Build the spectrahedron of a family.
pub fn build(spec: &FamilySpec) -> Result<Spectrahedron, Error> {
    spec.validate()?;
    let labels = spec.space();
    let tag = Some(spec.kind.name().to_string());
    let mk = |eq, ineq, slater| Spectrahedron::new(labels.clone(), eq, ineq, Some(slater), tag.clone());
    let identity = || SymMat::identity(labels.clone());
    match spec.kind {
        FamilyKind::Elliptope => mk(diag_eqs(&labels), vec![], identity()),
        FamilyKind::ElliptopeP => mk(diag_eqs(&labels), pair_ineqs(&labels, 1), identity()),
        FamilyKind::ElliptopePp => mk(diag_eqs(&labels), pair_ineqs(&labels, -1), identity()),
        FamilyKind::Bq => mk(boolean_quadric_eqs(&labels), vec![], lifted_slater(&labels)),
        FamilyKind::BqP => {
            let n = labels.len();
            let ineq = (1..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| Constraint::new(neg(basis_outer(&labels, i, j)), Rat::zero()))
                .collect();
            mk(boolean_quadric_eqs(&labels), ineq, lifted_slater(&labels))
        }
        FamilyKind::BqPp => mk(
            boolean_quadric_eqs(&labels),
            pair_ineqs(&labels, -1),
            lifted_slater(&labels),
        ),
        FamilyKind::LiftedTh
        | FamilyKind::LiftedThP
        | FamilyKind::LiftedThPlus
        | FamilyKind::LiftedThGeneral => {
            let mut eq = boolean_quadric_eqs(&labels);
            let (e, ineq) = sign_constraints(&labels, 1, &spec.e_plus, &spec.e_minus);
            eq.extend(e);
            mk(eq, ineq, lifted_slater(&labels))
        }
        FamilyKind::KgVc | FamilyKind::KgVcP => {
            let base_kind = if spec.kind == FamilyKind::KgVc {
                FamilyKind::LiftedTh
            } else {
                FamilyKind::LiftedThP
            };
            let base = build(&FamilySpec {
                kind: base_kind,
                ..spec.clone()
            })?;
            let mut c = pushforward(&base, &kg_transform(spec.vertices())?)?;
            c.family = tag.clone();
            Ok(c)
        }
        FamilyKind::Theta3 => {
            let n = labels.len();
            let (mut eq, ineq) = sign_constraints(&labels, 0, &spec.e_plus, &spec.e_minus);
            eq.insert(0, Constraint::new(identity(), Rat::one()));
            mk(eq, ineq, identity().scale(&rat(1, n as i64)))
        }
    }
}

/// Combinatorial index of a rank-one candidate point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Candidate {
    /// Vertex subset, ascending indices.
    Subset(Vec<usize>),
    /// `±1` vector over the vertex labels.
    Signs(Vec<i8>),
    /// Basis index `k`, for `e_k e_k^T`.
    Index(usize),
}

impl Candidate {
    /// Human-readable form using vertex labels.
    pub fn describe(&self, vertices: &Labels) -> serde_json::Value {
        match self {
            Candidate::Subset(s) => {
                serde_json::json!({ "subset": s.iter().map(|&i| vertices[i].clone()).collect::<Vec<_>>() })
            }
            Candidate::Signs(x) => serde_json::json!({
                "signs": x.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect::<String>()
            }),
            Candidate::Index(k) => serde_json::json!({ "index": vertices[*k].clone() }),
        }
    }
}

/// `x_S = χ_S - χ_{V\S}`.
pub fn sign_vector(n: usize, subset: &[usize]) -> Vec<i8> {
    let mut x = vec![-1i8; n];
    for &i in subset {
        x[i] = 1;
    }
    x
}

fn check_subset(n: usize, s: &[usize]) -> Result<(), Error> {
    if s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&i| i >= n) {
        return Err(Error::MalformedCandidate(format!(
            "subset {s:?} is not an ascending list of indices below {n}"
        )));
    }
    Ok(())
}

/// The family's rank-one point for a candidate: `(1 ⊕ χ_S)(1 ⊕ χ_S)^T` for
/// theta and BQ bodies, `(1 ⊕ x)(1 ⊕ x)^T` for lifted sign families, `x x^T`
/// for the plain elliptope and `e_k e_k^T` for theta3.
pub fn rank_one_point(spec: &FamilySpec, cand: &Candidate) -> Result<SymMat, Error> {
    let n = spec.n_vertices();
    let labels = spec.space();
    let signs = match cand {
        Candidate::Signs(x) => {
            if x.len() != n || x.iter().any(|&s| s != 1 && s != -1) {
                return Err(Error::MalformedCandidate(format!(
                    "expected {n} signs of ±1, got {x:?}"
                )));
            }
            Some(x.clone())
        }
        Candidate::Subset(s) => {
            check_subset(n, s)?;
            None
        }
        Candidate::Index(k) => {
            if *k >= n {
                return Err(Error::MalformedCandidate(format!("index {k} out of range")));
            }
            None
        }
    };
    let vec: Vec<Rat> = match (spec.kind, cand) {
        (FamilyKind::Theta3, Candidate::Index(k)) => unit(n, *k),
        (FamilyKind::Theta3, _) => {
            return Err(Error::MalformedCandidate("theta3 takes a basis index".into()))
        }
        (_, Candidate::Index(_)) => {
            return Err(Error::MalformedCandidate(format!(
                "{} takes a subset or sign vector",
                spec.kind
            )))
        }
        (kind, _) if kind.is_sign_family() => {
            let x = match (signs, cand) {
                (Some(x), _) => x,
                (None, Candidate::Subset(s)) => sign_vector(n, s),
                _ => unreachable!(),
            };
            let body = x.iter().map(|&s| int(s as i64));
            if kind == FamilyKind::Elliptope {
                body.collect()
            } else {
                std::iter::once(Rat::one()).chain(body).collect()
            }
        }
        (kind, Candidate::Subset(s)) => {
            let mut v = vec![Rat::zero(); n + 1];
            v[0] = Rat::one();
            for &i in s {
                v[i + 1] = Rat::one();
            }
            debug_assert!(kind.is_lifted());
            v
        }
        (kind, Candidate::Signs(_)) => {
            return Err(Error::MalformedCandidate(format!("{kind} takes a subset")))
        }
    };
    Ok(SymMat::dyad(labels, &vec))
}
