//! Non-commutation graphs over Hamiltonian terms, their colorings, and the
//! resulting measurement groupings.
//!
//! Vertex i is term i. An edge joins two terms whose commutator (under the
//! chosen [`CommutationMode`]) does not vanish, so a proper coloring is
//! exactly a partition into commuting groups: the fewer colors, the fewer
//! measurement runs.

use crate::pauli::{CommutationMode, Hamiltonian};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

/// Largest vertex count accepted when parsing graph files.
pub const MAX_PARSED_VERTICES: usize = 65_536;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n_vertices} vertices")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("coloring covers {coloring} vertices but the graph has {graph}")]
    SizeMismatch { coloring: usize, graph: usize },
    #[error("terms {i} and {j} share group {group} but do not commute")]
    NonCommutingPair { group: usize, i: usize, j: usize },
}

/// Undirected simple graph with a fixed vertex count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n_vertices: usize) -> Self {
        Graph {
            n_vertices,
            edges: BTreeSet::new(),
        }
    }

    /// Adds the undirected edge `{u, v}`; duplicates are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for vertex in [u, v] {
            if vertex >= self.n_vertices {
                return Err(GraphError::VertexOutOfRange {
                    vertex,
                    n_vertices: self.n_vertices,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(low, high)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n_vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Text export: `# vertices <n>` header then one `u v` line per edge.
    pub fn render(&self) -> String {
        let mut out = format!("# vertices {}\n", self.n_vertices);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Parse failure for the graph text format, with 1-based position.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct GraphParseError {
    pub line: usize,
    pub column: usize,
    pub kind: GraphParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphParseErrorKind {
    #[error("expected a `# vertices <count>` header before any edges")]
    MissingHeader,
    #[error("invalid vertex count `{0}`")]
    InvalidCount(String),
    #[error("vertex count {0} exceeds the parser cap of {MAX_PARSED_VERTICES}")]
    CountTooLarge(usize),
    #[error("expected `<u> <v>`, found `{0}`")]
    InvalidEdge(String),
    #[error("invalid vertex index `{0}`")]
    InvalidVertex(String),
    #[error("vertex {vertex} out of range for {n_vertices} vertices")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
}

/// Parses the graph text format written by [`Graph::render`]: a
/// `# vertices <n>` header (the first non-blank line), then one `u v` edge
/// per line. Later `#` lines are comments.
pub fn parse_graph(text: &str) -> Result<Graph, GraphParseError> {
    let err = |line: usize, column: usize, kind: GraphParseErrorKind| GraphParseError {
        line,
        column,
        kind,
    };
    let mut graph: Option<Graph> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        match &mut graph {
            None => {
                let Some(rest) = trimmed.strip_prefix("# vertices") else {
                    return Err(err(line_no, 1, GraphParseErrorKind::MissingHeader));
                };
                let count_token = rest.trim();
                let column =
                    1 + raw.len() - raw.trim_start().len() + (trimmed.len() - count_token.len());
                let n: usize = count_token.parse().map_err(|_| {
                    err(
                        line_no,
                        column,
                        GraphParseErrorKind::InvalidCount(count_token.to_string()),
                    )
                })?;
                if n > MAX_PARSED_VERTICES {
                    return Err(err(line_no, column, GraphParseErrorKind::CountTooLarge(n)));
                }
                graph = Some(Graph::new(n));
            }
            Some(g) => {
                if trimmed.starts_with('#') {
                    continue;
                }
                let content = match raw.find('#') {
                    Some(pos) => &raw[..pos],
                    None => raw,
                };
                let tokens: Vec<&str> = content.split_whitespace().collect();
                if tokens.len() != 2 {
                    return Err(err(
                        line_no,
                        1,
                        GraphParseErrorKind::InvalidEdge(content.trim().to_string()),
                    ));
                }
                let mut pair = [0usize; 2];
                for (slot, token) in pair.iter_mut().zip(&tokens) {
                    *slot = token.parse().map_err(|_| {
                        err(
                            line_no,
                            1,
                            GraphParseErrorKind::InvalidVertex(token.to_string()),
                        )
                    })?;
                }
                g.add_edge(pair[0], pair[1]).map_err(|e| match e {
                    GraphError::VertexOutOfRange { vertex, n_vertices } => err(
                        line_no,
                        1,
                        GraphParseErrorKind::VertexOutOfRange { vertex, n_vertices },
                    ),
                    GraphError::SelfLoop(v) => err(line_no, 1, GraphParseErrorKind::SelfLoop(v)),
                    other => unreachable!("add_edge returned {other:?}"),
                })?;
            }
        }
    }
    graph.ok_or_else(|| err(1, 1, GraphParseErrorKind::MissingHeader))
}

/// Builds the graph whose edges join term pairs that fail the mode's
/// commutation predicate.
pub fn build_noncommutation_graph(h: &Hamiltonian, mode: CommutationMode) -> Graph {
    let mut g = Graph::new(h.len());
    for i in 0..h.len() {
        for j in i + 1..h.len() {
            let commutes = mode
                .commutes(h.terms()[i].string(), h.terms()[j].string())
                .expect("terms share a qubit count");
            if !commutes {
                g.add_edge(i, j).expect("i < j < n");
            }
        }
    }
    g
}

/// An assignment of one color per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    color_of: Vec<usize>,
    n_colors: usize,
}

impl Coloring {
    /// Wraps raw color assignments; `n_colors` becomes `max + 1` (0 if empty).
    pub fn from_assignments(color_of: Vec<usize>) -> Self {
        let n_colors = color_of.iter().max().map_or(0, |&m| m + 1);
        Coloring { color_of, n_colors }
    }

    pub fn color_of(&self) -> &[usize] {
        &self.color_of
    }

    pub fn n_colors(&self) -> usize {
        self.n_colors
    }

    pub fn len(&self) -> usize {
        self.color_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.color_of.is_empty()
    }

    /// Renumbers colors 0..k-1 in order of first use along the vertex order,
    /// squeezing out unused color indices.
    pub fn compacted(&self) -> Coloring {
        let mut remap: Vec<Option<usize>> = vec![None; self.n_colors];
        let mut next = 0;
        let color_of = self
            .color_of
            .iter()
            .map(|&c| {
                *remap[c].get_or_insert_with(|| {
                    let id = next;
                    next += 1;
                    id
                })
            })
            .collect();
        Coloring {
            color_of,
            n_colors: next,
        }
    }
}

/// Greedy vertex orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GreedyStrategy {
    /// Highest degree first; ties broken by ascending vertex index.
    LargestFirst,
}

/// Greedy coloring: visit vertices in the strategy's order, give each the
/// smallest color absent among its already-colored neighbors. The result is
/// compacted and always proper.
pub fn greedy_coloring(g: &Graph, strategy: GreedyStrategy) -> Coloring {
    let n = g.n_vertices();
    let adj = g.adjacency();
    let order: Vec<usize> = match strategy {
        GreedyStrategy::LargestFirst => {
            let mut vertices: Vec<usize> = (0..n).collect();
            vertices.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
            vertices
        }
    };
    let mut color_of = vec![usize::MAX; n];
    for &v in &order {
        let mut used = vec![false; adj[v].len() + 1];
        for &w in &adj[v] {
            let c = color_of[w];
            if c < used.len() {
                used[c] = true;
            }
        }
        color_of[v] = used.iter().position(|&u| !u).expect("a free color exists");
    }
    Coloring::from_assignments(color_of).compacted()
}

/// Default node budget for [`exhaustive_chromatic`]; generous for graphs up
/// to a few dozen vertices.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Result of the exact chromatic search.
#[derive(Debug, Clone, PartialEq)]
pub enum ChromaticOutcome {
    /// A proper coloring with the minimum color count `<= max_colors`.
    Optimal { coloring: Coloring },
    /// Complete search proved no proper coloring with `max_colors` exists.
    NoSolution { max_colors: usize },
    /// The node budget ran out before the search completed; no claim is made.
    BudgetExhausted { node_budget: u64 },
}

/// Exact minimum coloring by backtracking, trying k = 1, 2, ... up to
/// `max_colors`. Vertices are assigned in largest-first order; a vertex may
/// only open one new color beyond those already used (symmetry pruning).
/// Every tentative assignment counts against `node_budget`; exhausting it
/// yields [`ChromaticOutcome::BudgetExhausted`], never a wrong answer.
pub fn exhaustive_chromatic(g: &Graph, max_colors: usize, node_budget: u64) -> ChromaticOutcome {
    let n = g.n_vertices();
    if n == 0 {
        return ChromaticOutcome::Optimal {
            coloring: Coloring::from_assignments(Vec::new()),
        };
    }
    let adj = g.adjacency();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut nodes_left = node_budget;
    for k in 1..=max_colors {
        let mut color_of = vec![usize::MAX; n];
        match try_color(&order, &adj, &mut color_of, 0, k, &mut nodes_left) {
            SearchResult::Found => {
                return ChromaticOutcome::Optimal {
                    coloring: Coloring::from_assignments(color_of).compacted(),
                };
            }
            SearchResult::Infeasible => continue,
            SearchResult::OutOfBudget => {
                return ChromaticOutcome::BudgetExhausted { node_budget };
            }
        }
    }
    ChromaticOutcome::NoSolution { max_colors }
}

enum SearchResult {
    Found,
    Infeasible,
    OutOfBudget,
}

fn try_color(
    order: &[usize],
    adj: &[Vec<usize>],
    color_of: &mut [usize],
    depth: usize,
    k: usize,
    nodes_left: &mut u64,
) -> SearchResult {
    let Some(&v) = order.get(depth) else {
        return SearchResult::Found;
    };
    let max_used = order[..depth]
        .iter()
        .map(|&w| color_of[w] + 1)
        .max()
        .unwrap_or(0);
    let candidate_limit = k.min(max_used + 1);
    for color in 0..candidate_limit {
        if *nodes_left == 0 {
            return SearchResult::OutOfBudget;
        }
        *nodes_left -= 1;
        if adj[v].iter().any(|&w| color_of[w] == color) {
            continue;
        }
        color_of[v] = color;
        match try_color(order, adj, color_of, depth + 1, k, nodes_left) {
            SearchResult::Infeasible => {}
            found_or_exhausted => return found_or_exhausted,
        }
        color_of[v] = usize::MAX;
    }
    SearchResult::Infeasible
}

/// True iff every edge has differently colored endpoints. Size mismatch
/// between coloring and graph is an error, not `false`.
pub fn validate_coloring(g: &Graph, coloring: &Coloring) -> Result<bool, GraphError> {
    if coloring.len() != g.n_vertices() {
        return Err(GraphError::SizeMismatch {
            coloring: coloring.len(),
            graph: g.n_vertices(),
        });
    }
    Ok(g.edges()
        .all(|(u, v)| coloring.color_of()[u] != coloring.color_of()[v]))
}

/// A partition of term indices into commuting groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grouping {
    mode: CommutationMode,
    groups: Vec<Vec<usize>>,
}

impl Grouping {
    /// Wraps an existing partition without checking it; consumers such as
    /// the grouped estimator re-validate coverage and commutation.
    pub fn from_groups(mode: CommutationMode, groups: Vec<Vec<usize>>) -> Self {
        Grouping { mode, groups }
    }

    /// One group per term, in term order. Trivially valid under any mode.
    pub fn singletons(n_terms: usize, mode: CommutationMode) -> Self {
        Grouping {
            mode,
            groups: (0..n_terms).map(|i| vec![i]).collect(),
        }
    }

    pub fn mode(&self) -> CommutationMode {
        self.mode
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn n_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn n_terms(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }
}

/// Converts a proper coloring of the non-commutation graph into a grouping,
/// one group per used color in first-use order. Pairwise commutation inside
/// every group is re-verified by direct predicate calls; the coloring itself
/// is not trusted.
pub fn grouping_from_coloring(
    h: &Hamiltonian,
    coloring: &Coloring,
    mode: CommutationMode,
) -> Result<Grouping, GraphError> {
    if coloring.len() != h.len() {
        return Err(GraphError::SizeMismatch {
            coloring: coloring.len(),
            graph: h.len(),
        });
    }
    let compact = coloring.compacted();
    let mut groups = vec![Vec::new(); compact.n_colors()];
    for (term, &color) in compact.color_of().iter().enumerate() {
        groups[color].push(term);
    }
    for (group_id, group) in groups.iter().enumerate() {
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[a + 1..] {
                let commutes = mode
                    .commutes(h.terms()[i].string(), h.terms()[j].string())
                    .expect("terms share a qubit count");
                if !commutes {
                    return Err(GraphError::NonCommutingPair {
                        group: group_id,
                        i,
                        j,
                    });
                }
            }
        }
    }
    Ok(Grouping { mode, groups })
}
