//! Graphs, parsers and exhaustive enumerators.
//!
//! Vertex labels are opaque strings kept in first-appearance order. Edges are
//! stored as index pairs `(i, j)` with `i < j`.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::exactla::sym::{labels as make_labels, Labels};

pub const DEFAULT_GATE: usize = 20;

/// Unordered vertex pair, `0 <= .0 < .1 < n`.
pub type Edge = (usize, usize);

/// Vertex subset as ascending index list.
pub type VertexSet = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Labels,
    edges: BTreeSet<Edge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub msg: String,
}

fn norm(i: usize, j: usize) -> Edge {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl Graph {
    /// Graph on the given labels with no edges.
    pub fn empty(vertices: Labels) -> Self {
        Graph {
            vertices,
            edges: BTreeSet::new(),
        }
    }

    /// Graph on labels `1..=n` with no edges.
    pub fn empty_n(n: usize) -> Self {
        Self::empty(crate::exactla::numeric_labels(n))
    }

    pub fn new(vertices: Labels, edges: impl IntoIterator<Item = Edge>) -> Result<Self, Error> {
        let n = vertices.len();
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == j {
                return Err(Error::Loop {
                    line: 0,
                    label: vertices.get(i).cloned().unwrap_or_default(),
                });
            }
            if i >= n || j >= n {
                return Err(Error::InvalidSpec(format!("edge ({i}, {j}) out of range")));
            }
            set.insert(norm(i, j));
        }
        Ok(Graph {
            vertices,
            edges: set,
        })
    }

    /// Graph on labels `1..=n` from 1-based index pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, Error> {
        Self::new(
            crate::exactla::numeric_labels(n),
            pairs.iter().map(|&(a, b)| (a.wrapping_sub(1), b.wrapping_sub(1))),
        )
    }

    pub fn complete(n: usize) -> Self {
        Self::empty_n(n).complement()
    }

    /// Path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Self {
        Self::new(
            crate::exactla::numeric_labels(n),
            (1..n).map(|i| (i - 1, i)),
        )
        .expect("valid path")
    }

    pub fn vertices(&self) -> &Labels {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&norm(i, j))
    }

    pub fn label(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    /// All pairs of `binom(V, 2)` not in `E`.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|e| !self.edges.contains(e))
            .collect();
        Graph {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    pub fn degree_profile(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n()];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    fn check_gate(&self, gate: usize) -> Result<(), Error> {
        if self.n() > gate {
            Err(Error::GateExceeded { n: self.n(), gate })
        } else {
            Ok(())
        }
    }

    fn is_stable_mask(&self, mask: u64) -> bool {
        self.edges
            .iter()
            .all(|&(i, j)| mask >> i & 1 == 0 || mask >> j & 1 == 0)
    }

    /// All stable sets, including the empty set, ordered by size and then
    /// lexicographically.
    pub fn enumerate_stable_sets(&self) -> Result<Vec<VertexSet>, Error> {
        self.enumerate_stable_sets_gated(DEFAULT_GATE)
    }

    pub fn enumerate_stable_sets_gated(&self, gate: usize) -> Result<Vec<VertexSet>, Error> {
        self.check_gate(gate)?;
        Ok(self.subsets_where(|m| self.is_stable_mask(m)))
    }

    /// All vertex covers (sets meeting every edge), same ordering.
    pub fn enumerate_vertex_covers(&self) -> Result<Vec<VertexSet>, Error> {
        self.enumerate_vertex_covers_gated(DEFAULT_GATE)
    }

    pub fn enumerate_vertex_covers_gated(&self, gate: usize) -> Result<Vec<VertexSet>, Error> {
        self.check_gate(gate)?;
        Ok(self.subsets_where(|m| {
            self.edges
                .iter()
                .all(|&(i, j)| m >> i & 1 == 1 || m >> j & 1 == 1)
        }))
    }

    fn subsets_where(&self, keep: impl Fn(u64) -> bool) -> Vec<VertexSet> {
        let n = self.n();
        let mut out: Vec<VertexSet> = (0u64..1 << n)
            .filter(|&m| keep(m))
            .map(|m| mask_to_set(m, n))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn is_stable(&self, s: &[usize]) -> bool {
        self.is_stable_mask(set_to_mask(s))
    }

    pub fn is_vertex_cover(&self, s: &[usize]) -> bool {
        let m = set_to_mask(s);
        self.edges
            .iter()
            .all(|&(i, j)| m >> i & 1 == 1 || m >> j & 1 == 1)
    }

    /// Edge list as label pairs.
    pub fn edge_labels(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|&(i, j)| (self.vertices[i].clone(), self.vertices[j].clone()))
            .collect()
    }

    /// Edge-list text accepted by [`parse_graph`]: every vertex on its own
    /// line, then the edges, so a reparse keeps the vertex order.
    pub fn to_edgelist(&self) -> String {
        let mut out = String::new();
        for v in self.vertices.iter() {
            out.push_str(v);
            out.push('\n');
        }
        for (a, b) in self.edge_labels() {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

pub fn mask_to_set(mask: u64, n: usize) -> VertexSet {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn set_to_mask(s: &[usize]) -> u64 {
    s.iter().fold(0u64, |m, &i| m | 1 << i)
}

/// Parse a graph from text. Returns the graph and any non-fatal warnings
/// (duplicate edges are dropped with a warning).
///
/// Edge lists hold one edge per line as two whitespace-separated labels; a
/// line with a single label declares an isolated vertex. `#` starts a
/// comment. DIMACS input has a `p edge n m` header followed by `e u v` lines
/// with 1-based endpoints; `c` lines are comments.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<(Graph, Vec<ParseWarning>), Error> {
    match format {
        GraphFormat::EdgeList => parse_edgelist(text),
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}

fn parse_edgelist(text: &str) -> Result<(Graph, Vec<ParseWarning>), Error> {
    let mut names: Vec<String> = Vec::new();
    let mut edges = BTreeSet::new();
    let mut warnings = Vec::new();
    let index = |names: &mut Vec<String>, l: &str| {
        names.iter().position(|v| v == l).unwrap_or_else(|| {
            names.push(l.to_string());
            names.len() - 1
        })
    };
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            [v] => {
                index(&mut names, v);
            }
            [a, b] => {
                if a == b {
                    return Err(Error::Loop {
                        line: line_no,
                        label: a.to_string(),
                    });
                }
                let i = index(&mut names, a);
                let j = index(&mut names, b);
                if !edges.insert(norm(i, j)) {
                    warnings.push(ParseWarning {
                        line: line_no,
                        msg: format!("duplicate edge {a} {b} ignored"),
                    });
                }
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected two labels, found {}", toks.len()),
                })
            }
        }
    }
    Ok((
        Graph {
            vertices: Arc::new(names),
            edges,
        },
        warnings,
    ))
}

/// Largest vertex count accepted from a DIMACS header.
pub const MAX_DIMACS_VERTICES: usize = 1 << 20;

fn parse_dimacs(text: &str) -> Result<(Graph, Vec<ParseWarning>), Error> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = BTreeSet::new();
    let mut warnings = Vec::new();
    let mut header_line = 0;
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let perr = |msg: String| Error::Parse { line: line_no, msg };
        match toks.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(perr("second problem line".into()));
                }
                let [_, kind, n, m] = toks.as_slice() else {
                    return Err(perr("expected `p edge n m`".into()));
                };
                if *kind != "edge" && *kind != "col" {
                    return Err(perr(format!("unsupported problem kind {kind:?}")));
                }
                let n: usize = n.parse().map_err(|_| perr(format!("bad vertex count {n:?}")))?;
                let m: usize = m.parse().map_err(|_| perr(format!("bad edge count {m:?}")))?;
                if n > MAX_DIMACS_VERTICES {
                    return Err(perr(format!("{n} vertices exceeds the limit of {MAX_DIMACS_VERTICES}")));
                }
                header = Some((n, m));
                header_line = line_no;
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return Err(perr("edge line before problem line".into()));
                };
                let [_, u, v] = toks.as_slice() else {
                    return Err(perr("expected `e u v`".into()));
                };
                let parse_end = |s: &str| -> Result<usize, Error> {
                    let k: usize = s.parse().map_err(|_| perr(format!("bad vertex {s:?}")))?;
                    if k == 0 || k > n {
                        return Err(perr(format!("vertex {k} outside 1..={n}")));
                    }
                    Ok(k - 1)
                };
                let (i, j) = (parse_end(u)?, parse_end(v)?);
                if i == j {
                    return Err(Error::Loop {
                        line: line_no,
                        label: (i + 1).to_string(),
                    });
                }
                if !edges.insert(norm(i, j)) {
                    warnings.push(ParseWarning {
                        line: line_no,
                        msg: format!("duplicate edge {u} {v} ignored"),
                    });
                }
            }
            Some(other) => return Err(perr(format!("unknown line type {other:?}"))),
        }
    }
    let Some((n, m)) = header else {
        return Err(Error::Parse {
            line: 0,
            msg: "missing `p edge n m` line".into(),
        });
    };
    if m != edges.len() {
        warnings.push(ParseWarning {
            line: header_line,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Ok((
        Graph {
            vertices: crate::exactla::numeric_labels(n),
            edges,
        },
        warnings,
    ))
}

/// Every labeled graph on `1..=n`, in edge-bitmask order.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<Edge> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    assert!(pairs.len() < 63, "too many vertex pairs to enumerate");
    let labels = crate::exactla::numeric_labels(n);
    (0u64..1 << pairs.len()).map(move |mask| Graph {
        vertices: labels.clone(),
        edges: pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect(),
    })
}

/// `count` labeled graphs on `1..=n` drawn uniformly (each pair an edge with
/// probability 1/2) from a seeded generator. Distinct draws are not enforced.
pub fn sample_labeled_graphs(n: usize, count: usize, seed: u64) -> Vec<Graph> {
    (0..count as u64)
        .map(|k| erdos_renyi(n, 0.5, seed.wrapping_add(k)))
        .collect()
}

/// Seeded G(n, p) on labels `1..=n`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen::<f64>() < p)
        .collect::<Vec<_>>();
    Graph::new(crate::exactla::numeric_labels(n), edges).expect("valid random graph")
}

/// Graph from label list and label-pair edges.
pub fn graph_from_labels(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Graph, Error> {
    let labels = make_labels(vertices.iter().copied())?;
    let idx = |l: &str| {
        labels
            .iter()
            .position(|v| v == l)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown vertex {l:?}")))
    };
    let pairs = edges
        .iter()
        .map(|&(a, b)| Ok((idx(a)?, idx(b)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    Graph::new(labels, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        parse_graph("1 2\n2 3", GraphFormat::EdgeList).unwrap().0
    }

    #[test]
    fn parse_examples() {
        let g = p3();
        assert_eq!(g.vertices().as_slice(), ["1", "2", "3"]);
        assert_eq!(g.edges().iter().copied().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);

        let (k3, w) = parse_graph("p edge 3 3\ne 1 2\ne 1 3\ne 2 3", GraphFormat::Dimacs).unwrap();
        assert!(w.is_empty());
        assert_eq!(k3, Graph::complete(3));

        assert!(matches!(
            parse_graph("1 1", GraphFormat::EdgeList),
            Err(Error::Loop { line: 1, .. })
        ));
    }

    #[test]
    fn parse_edge_cases() {
        let (g, w) = parse_graph("# c\nb a\na b # again\n\nz\n", GraphFormat::EdgeList).unwrap();
        assert_eq!(g.vertices().as_slice(), ["b", "a", "z"]);
        assert_eq!(g.edges().len(), 1);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].line, 3);
        assert!(parse_graph("1 2 3", GraphFormat::EdgeList).is_err());
        assert!(parse_graph("e 1 2", GraphFormat::Dimacs).is_err());
        assert!(parse_graph("p edge 2 1\ne 1 3", GraphFormat::Dimacs).is_err());
        assert!(parse_graph("p edge 2 1\ne 2 2", GraphFormat::Dimacs).is_err());
        assert!(parse_graph("c nothing", GraphFormat::Dimacs).is_err());
        let (g, w) = parse_graph("c hi\np edge 4 2\ne 1 2\ne 2 1\n", GraphFormat::Dimacs).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges().len(), 1);
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn complement_examples() {
        assert!(Graph::complete(3).complement().edges().is_empty());
        assert_eq!(Graph::empty_n(2).complement(), Graph::complete(2));
        let p4 = Graph::path(4);
        assert_eq!(p4.complement().complement(), p4);
    }

    #[test]
    fn stable_sets_and_covers() {
        let g = p3();
        let s = g.enumerate_stable_sets().unwrap();
        assert_eq!(s, vec![vec![], vec![0], vec![1], vec![2], vec![0, 2]]);
        assert_eq!(Graph::complete(2).enumerate_stable_sets().unwrap().len(), 3);
        assert_eq!(Graph::empty_n(3).enumerate_stable_sets().unwrap().len(), 8);

        let c = Graph::complete(2).enumerate_vertex_covers().unwrap();
        assert_eq!(c, vec![vec![0], vec![1], vec![0, 1]]);
        assert_eq!(Graph::empty_n(2).enumerate_vertex_covers().unwrap().len(), 4);
        assert_eq!(g.enumerate_vertex_covers().unwrap().len(), 5);

        let big = Graph::empty_n(21);
        assert!(matches!(
            big.enumerate_stable_sets(),
            Err(Error::GateExceeded { n: 21, gate: 20 })
        ));
        assert!(Graph::empty_n(3).enumerate_stable_sets_gated(2).is_err());
    }

    #[test]
    fn degrees() {
        assert_eq!(Graph::complete(3).degree_profile(), vec![2, 2, 2]);
        assert_eq!(p3().degree_profile(), vec![1, 2, 1]);
        assert_eq!(Graph::empty_n(4).degree_profile(), vec![0; 4]);
    }

    #[test]
    fn covers_are_complements_of_stable_sets() {
        for g in all_labeled_graphs(4) {
            let n = g.n();
            let stable = g.enumerate_stable_sets().unwrap();
            let mut from_stable: Vec<VertexSet> = stable
                .iter()
                .map(|s| (0..n).filter(|i| !s.contains(i)).collect())
                .collect();
            from_stable.sort();
            let mut covers = g.enumerate_vertex_covers().unwrap();
            covers.sort();
            assert_eq!(covers, from_stable);
        }
    }

    #[test]
    fn stable_sets_are_cliques_of_complement() {
        for n in 1..=6 {
            let graphs: Vec<Graph> = if n <= 5 {
                all_labeled_graphs(n).collect()
            } else {
                sample_labeled_graphs(n, 40, 7)
            };
            for g in graphs {
                let h = g.complement();
                let cliques: Vec<VertexSet> = (0u64..1 << n)
                    .map(|m| mask_to_set(m, n))
                    .filter(|s| {
                        s.iter()
                            .enumerate()
                            .all(|(a, &i)| s[a + 1..].iter().all(|&j| h.has_edge(i, j)))
                    })
                    .collect::<Vec<_>>();
                let mut cliques = cliques;
                cliques.sort();
                let mut stable = g.enumerate_stable_sets().unwrap();
                stable.sort();
                assert_eq!(stable, cliques);
            }
        }
    }

    #[test]
    fn labeled_graph_counts() {
        assert_eq!(all_labeled_graphs(4).count(), 64);
        assert_eq!(all_labeled_graphs(1).count(), 1);
        let a = sample_labeled_graphs(5, 10, 1);
        let b = sample_labeled_graphs(5, 10, 1);
        assert_eq!(a, b);
    }

    #[test]
    fn edgelist_round_trip() {
        let g = graph_from_labels(&["x", "y", "z", "w"], &[("x", "z")]).unwrap();
        let (h, _) = parse_graph(&g.to_edgelist(), GraphFormat::EdgeList).unwrap();
        assert_eq!(h.n(), 4);
        assert_eq!(h.edges().len(), 1);
    }
}
