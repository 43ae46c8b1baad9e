//! Vertex catalogs of the graph families and the exhaustive suite runner.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::exactla::{half, Rat, SymMat};
use crate::graphs::{all_labeled_graphs, mask_to_set, sample_labeled_graphs, Edge, Graph, DEFAULT_GATE};
use crate::normalcone::{is_vertex, rank_one_vertex_test, NormalConeReport};
use crate::spectra::{build, json::matrix_to_json, rank_one_point, Candidate, FamilyKind, FamilySpec, Spectrahedron};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub candidate: Candidate,
    pub matrix: SymMat,
    pub report: NormalConeReport,
}

#[derive(Clone, Debug)]
pub struct VertexCatalog {
    pub family: FamilySpec,
    pub vertices: Vec<CatalogEntry>,
    pub theorem_prediction: Vec<Candidate>,
    pub matches: bool,
}

impl VertexCatalog {
    pub fn to_json(&self) -> serde_json::Value {
        let labels = self.family.vertices();
        serde_json::json!({
            "family": self.family.to_json(),
            "vertices": self.vertices.iter().map(|e| serde_json::json!({
                "candidate": e.candidate.describe(labels),
                "X": matrix_to_json(&e.matrix),
                "report": e.report,
            })).collect::<Vec<_>>(),
            "theorem_prediction": self.theorem_prediction.iter().map(|c| c.describe(labels)).collect::<Vec<_>>(),
            "match": self.matches,
        })
    }
}

fn all_subsets(n: usize) -> Vec<Candidate> {
    let mut v: Vec<Vec<usize>> = (0u64..1 << n).map(|m| mask_to_set(m, n)).collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v.into_iter().map(Candidate::Subset).collect()
}

/// Sign vectors in lexicographic order with `+` first; `fix_first` keeps
/// only those starting with `+`.
fn sign_vectors(n: usize, fix_first: bool) -> Vec<Candidate> {
    let free = if fix_first { n.saturating_sub(1) } else { n };
    (0u64..1 << free)
        .map(|m| {
            let mut x: Vec<i8> = (0..free)
                .rev()
                .map(|b| if m >> b & 1 == 0 { 1 } else { -1 })
                .collect();
            if fix_first && n > 0 {
                x.insert(0, 1);
            }
            Candidate::Signs(x)
        })
        .collect()
}

/// Rank-one candidates of a family, in a fixed order.
pub fn candidates(spec: &FamilySpec) -> Vec<Candidate> {
    let n = spec.n_vertices();
    match spec.kind {
        FamilyKind::Elliptope => sign_vectors(n, true),
        FamilyKind::ElliptopeP | FamilyKind::ElliptopePp => sign_vectors(n, false),
        FamilyKind::Theta3 => (0..n).map(Candidate::Index).collect(),
        _ => all_subsets(n),
    }
}

/// The combinatorial vertex set the theorems predict.
pub fn theorem_prediction(spec: &FamilySpec, gate: usize) -> Result<Vec<Candidate>, Error> {
    let n = spec.n_vertices();
    let g = &spec.graph;
    Ok(match spec.kind {
        FamilyKind::Elliptope | FamilyKind::ElliptopeP | FamilyKind::ElliptopePp => candidates(spec),
        FamilyKind::Bq | FamilyKind::BqP | FamilyKind::BqPp => all_subsets(n),
        FamilyKind::LiftedTh
        | FamilyKind::LiftedThP
        | FamilyKind::LiftedThPlus
        | FamilyKind::LiftedThGeneral => {
            let minus = Graph::new(g.vertices().clone(), spec.e_minus.iter().copied())?;
            minus
                .enumerate_stable_sets_gated(gate)?
                .into_iter()
                .map(Candidate::Subset)
                .collect()
        }
        FamilyKind::KgVc | FamilyKind::KgVcP => g
            .enumerate_vertex_covers_gated(gate)?
            .into_iter()
            .map(Candidate::Subset)
            .collect(),
        FamilyKind::Theta3 => g
            .degree_profile()
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d + 1 == n)
            .map(|(k, _)| Candidate::Index(k))
            .collect(),
    })
}

fn leading_vector(x: &SymMat) -> Vec<Rat> {
    // column k of v v^T over X_kk is v / v_k; the span test ignores scale
    let k = (0..x.n())
        .find(|&i| !num_traits::Zero::is_zero(x.get(i, i)))
        .expect("nonzero dyad");
    (0..x.n()).map(|i| x.get(i, k) / x.get(k, k)).collect()
}

/// Candidates passing the rank-one vertex test, checked against the theorem's
/// prediction. Each found vertex also carries the full two-route report.
pub fn enumerate_vertices(spec: &FamilySpec) -> Result<VertexCatalog, Error> {
    enumerate_vertices_gated(spec, DEFAULT_GATE)
}

pub fn enumerate_vertices_gated(spec: &FamilySpec, gate: usize) -> Result<VertexCatalog, Error> {
    let n = spec.n_vertices();
    if n > gate {
        return Err(Error::GateExceeded { n, gate });
    }
    let c = build(spec)?;
    let mut vertices = Vec::new();
    for cand in candidates(spec) {
        let x = rank_one_point(spec, &cand)?;
        if !c.is_feasible(&x)? {
            continue;
        }
        if !rank_one_vertex_test(&c, &leading_vector(&x))? {
            continue;
        }
        let report = is_vertex(&c, &x)?;
        vertices.push(CatalogEntry {
            candidate: cand,
            matrix: x,
            report,
        });
    }
    let theorem_prediction = theorem_prediction(spec, gate)?;
    let predicted = theorem_prediction
        .iter()
        .map(|p| rank_one_point(spec, p))
        .collect::<Result<Vec<_>, _>>()?;
    let matches = predicted.len() == vertices.len()
        && predicted.iter().all(|p| vertices.iter().any(|v| &v.matrix == p))
        && vertices
            .iter()
            .all(|v| v.report.is_vertex && v.matrix.rank() == 1);
    Ok(VertexCatalog {
        family: spec.clone(),
        vertices,
        theorem_prediction,
        matches,
    })
}

/// Midpoints of every pair of catalogued vertices, then the Slater witness,
/// each with its normal-cone report. Empty when there are fewer than two
/// vertices (the set is then a single point).
pub fn negative_witnesses(c: &Spectrahedron, catalog: &VertexCatalog) -> Result<Vec<(SymMat, NormalConeReport)>, Error> {
    let h = half();
    let v = &catalog.vertices;
    let mut out = Vec::new();
    if v.len() < 2 {
        return Ok(out);
    }
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let mid = v[i].matrix.add(&v[j].matrix)?.scale(&h);
            let r = is_vertex(c, &mid)?;
            out.push((mid, r));
        }
    }
    let w = c.check_slater()?.clone();
    let r = is_vertex(c, &w)?;
    out.push((w, r));
    Ok(out)
}

/// Every negative witness is feasible, has rank at least 2 (or is the
/// witness) and is reported as a non-vertex.
pub fn negatives_rejected(witnesses: &[(SymMat, NormalConeReport)]) -> bool {
    let last = witnesses.len().saturating_sub(1);
    witnesses
        .iter()
        .enumerate()
        .all(|(k, (x, r))| !r.is_vertex && (k == last || x.rank() >= 2))
}

/// Sign split used for split families in the suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Split {
    /// `E+ = ∅`, `E- = E`.
    Minus,
    /// `E+ = E`, `E- = ∅`.
    Plus,
    /// `E+ = complement of E`, `E- = E`.
    ComplementPlus,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Minus, Split::Plus, Split::ComplementPlus];

    pub fn apply(self, g: &Graph) -> (BTreeSet<Edge>, BTreeSet<Edge>) {
        let e = g.edges().clone();
        match self {
            Split::Minus => (BTreeSet::new(), e),
            Split::Plus => (e, BTreeSet::new()),
            Split::ComplementPlus => (g.complement().edges().clone(), e),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Split::Minus => "minus",
            Split::Plus => "plus",
            Split::ComplementPlus => "complement-plus",
        }
    }

    pub fn parse(s: &str) -> Result<Split, Error> {
        Split::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown split {s:?}")))
    }

    pub fn spec(self, kind: FamilyKind, g: &Graph) -> Result<FamilySpec, Error> {
        let (p, m) = self.apply(g);
        FamilySpec::with_split(kind, g.vertices().clone(), p, m)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Exhaustive sweep up to this many vertices; sampled above.
    pub exhaustive_max: usize,
    pub sample_count: usize,
    pub seed: u64,
    /// Worker count; `None` uses the logical core count.
    pub threads: Option<usize>,
    pub gate: usize,
    pub check_negatives: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            exhaustive_max: 4,
            sample_count: 50,
            seed: 20_240_601,
            threads: None,
            gate: DEFAULT_GATE,
            check_negatives: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SuiteGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SuiteCell {
    pub graph: SuiteGraph,
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<Split>,
    pub predicted: usize,
    pub found: usize,
    #[serde(rename = "match")]
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negatives_rejected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SuiteCell {
    pub fn failed(&self) -> bool {
        !self.matches || self.negatives_rejected == Some(false) || self.error.is_some()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub cells: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub cells: Vec<SuiteCell>,
    pub summary: SuiteSummary,
}

/// Graphs swept for order `n`.
pub fn suite_graphs(n: usize, opts: &SuiteOptions) -> Vec<Graph> {
    if n <= opts.exhaustive_max {
        all_labeled_graphs(n).collect()
    } else {
        sample_labeled_graphs(n, opts.sample_count, opts.seed.wrapping_add(n as u64))
    }
}

fn run_cell(spec: &FamilySpec, split: Option<Split>, opts: &SuiteOptions) -> SuiteCell {
    let g = &spec.graph;
    let mut cell = SuiteCell {
        graph: SuiteGraph {
            vertices: g.vertices().to_vec(),
            edges: g.edge_labels(),
        },
        family: spec.kind.name().to_string(),
        split,
        predicted: 0,
        found: 0,
        matches: false,
        negatives_rejected: None,
        error: None,
    };
    let result = (|| -> Result<(), Error> {
        let cat = enumerate_vertices_gated(spec, opts.gate)?;
        cell.predicted = cat.theorem_prediction.len();
        cell.found = cat.vertices.len();
        cell.matches = cat.matches;
        if opts.check_negatives && cat.vertices.len() >= 2 {
            let c = build(spec)?;
            cell.negatives_rejected = Some(negatives_rejected(&negative_witnesses(&c, &cat)?));
        }
        Ok(())
    })();
    if let Err(e) = result {
        cell.error = Some(e.to_string());
    }
    cell
}

/// Check every requested family on every swept graph of order `1..=n_max`.
/// Families that ignore edges get one cell per order; split families get one
/// cell per [`Split`].
pub fn verify_suite(n_max: usize, families: &[FamilyKind], opts: &SuiteOptions) -> Result<SuiteReport, Error> {
    let mut jobs: Vec<(FamilySpec, Option<Split>)> = Vec::new();
    for n in 1..=n_max {
        let graphs = suite_graphs(n, opts);
        for &kind in families {
            if !kind.uses_edges() {
                jobs.push((FamilySpec::on_n(kind, n)?, None));
                continue;
            }
            for g in &graphs {
                if kind.takes_split() {
                    for s in Split::ALL {
                        jobs.push((s.spec(kind, g)?, Some(s)));
                    }
                } else {
                    jobs.push((FamilySpec::on_graph(kind, g)?, None));
                }
            }
        }
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = opts.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?;
    let mut cells: Vec<SuiteCell> = pool.install(|| {
        jobs.par_iter()
            .map(|(spec, split)| run_cell(spec, *split, opts))
            .collect()
    });
    cells.sort();
    let failures = cells.iter().filter(|c| c.failed()).count();
    Ok(SuiteReport {
        summary: SuiteSummary {
            cells: cells.len(),
            failures,
        },
        cells,
    })
}
