//! Graphs, complete edge-colored graphs, and the text formats they are read from.
//!
//! Graph text: the first significant line holds the vertex count `n`, every
//! following line one `u v` edge (0-indexed). Colored text uses `u v c` lines,
//! one per unordered pair, with an integer color id `c`. Blank lines and lines
//! starting with `#` are skipped.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{GraphError, ParseError};
use crate::family::{ClassLabel, WeightedMatrixFamily};

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

/// Largest vertex count accepted by [`enumerate_graphs`].
pub const MAX_ENUMERATION_VERTICES: usize = 8;

/// Simple loopless graph on vertices `0..n`, adjacency stored as one bitmask per row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

/// Coarse shape of a graph with respect to the `n - 2` representation question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Complete,
    Independent,
    Mixed,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if !(1..=MAX_VERTICES).contains(&n) {
            return Err(GraphError::VertexCount { n, min: 1, max: MAX_VERTICES });
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Ok(Self::empty(n)?.complement())
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph whose edges are the set bits of `mask`, pairs taken in lexicographic
    /// order `(0,1), (0,2), .., (0,n-1), (1,2), ..`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for (bit, (u, v)) in pairs(n).enumerate() {
            if bit < 64 && mask >> bit & 1 == 1 {
                g.set(u, v, true);
            }
        }
        Ok(g)
    }

    /// Inverse of [`Graph::from_mask`]; only meaningful while `C(n,2) <= 64`.
    pub fn mask(&self) -> u64 {
        pairs(self.n)
            .enumerate()
            .take(64)
            .filter(|&(_, (u, v))| self.has_edge(u, v))
            .fold(0, |m, (bit, _)| m | 1 << bit)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for vertex in [u, v] {
            if vertex >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        self.set(u, v, true);
        Ok(())
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        if on {
            self.rows[u] |= 1 << v;
            self.rows[v] |= 1 << u;
        } else {
            self.rows[u] &= !(1 << v);
            self.rows[v] &= !(1 << u);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        pairs(self.n).filter(|&(u, v)| self.has_edge(u, v)).collect()
    }

    pub fn complement(&self) -> Graph {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| !r & full & !(1 << i))
            .collect();
        Graph { n: self.n, rows }
    }

    /// A single vertex has no pairs at all; it is reported as `Independent`.
    pub fn classify(&self) -> GraphClass {
        let edges = self.edge_count();
        if edges == 0 {
            GraphClass::Independent
        } else if edges == self.n * (self.n - 1) / 2 {
            GraphClass::Complete
        } else {
            GraphClass::Mixed
        }
    }

    /// Lexicographically smallest triple that is neither a triangle nor an
    /// anti-triangle, tagged as H (two edges) or K (one edge).
    pub fn find_mixed_triple(&self) -> Option<MixedTriple> {
        triples(self.n).find_map(|(u, v, w)| {
            let edges = [self.has_edge(u, v), self.has_edge(u, w), self.has_edge(v, w)]
                .iter()
                .filter(|&&e| e)
                .count();
            let pattern = match edges {
                2 => TriplePattern::H,
                1 => TriplePattern::K,
                _ => return None,
            };
            Some(MixedTriple { vertices: (u, v, w), pattern })
        })
    }

    /// Edge and non-edge indicator classes, in that order, empty classes dropped.
    pub fn color_partition(&self) -> WeightedMatrixFamily {
        WeightedMatrixFamily::from_classifier(self.n, &[ClassLabel::Edge, ClassLabel::NonEdge], |u, v| {
            usize::from(!self.has_edge(u, v))
        })
    }

    /// Canonical text form accepted by [`parse_graph`].
    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Complete graph whose unordered pairs carry integer color ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredCompleteGraph {
    n: usize,
    color: Vec<i64>,
    palette: Vec<i64>,
}

impl ColoredCompleteGraph {
    /// Builds the graph from a color function on pairs `u < v`.
    pub fn from_fn(n: usize, mut color: impl FnMut(usize, usize) -> i64) -> Result<Self, GraphError> {
        if !(2..=MAX_VERTICES).contains(&n) {
            return Err(GraphError::VertexCount { n, min: 2, max: MAX_VERTICES });
        }
        let mut table = vec![0; n * n];
        let mut palette = BTreeSet::new();
        for (u, v) in pairs(n) {
            let c = color(u, v);
            table[u * n + v] = c;
            table[v * n + u] = c;
            palette.insert(c);
        }
        Ok(ColoredCompleteGraph { n, color: table, palette: palette.into_iter().collect() })
    }

    /// Builds the graph from a full `n x n` color table; the diagonal is ignored.
    pub fn from_table(table: &[Vec<i64>]) -> Result<Self, GraphError> {
        let n = table.len();
        for (u, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GraphError::VertexOutOfRange { vertex: row.len().saturating_sub(1), n });
            }
            for v in u + 1..n {
                if table[v][u] != row[v] {
                    return Err(GraphError::AsymmetricColor { u, v, first: row[v], second: table[v][u] });
                }
            }
        }
        Self::from_fn(n, |u, v| table[u][v])
    }

    /// Plain graph seen as a two-colored complete graph: edges get color 1, non-edges 0.
    pub fn from_graph(g: &Graph) -> Result<Self, GraphError> {
        Self::from_fn(g.n(), |u, v| i64::from(g.has_edge(u, v)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color(&self, u: usize, v: usize) -> i64 {
        self.color[u * self.n + v]
    }

    /// Distinct colors in ascending order.
    pub fn palette(&self) -> &[i64] {
        &self.palette
    }

    pub fn color_count(&self) -> usize {
        self.palette.len()
    }

    /// Lexicographically smallest triple whose three pairs are not all one color.
    pub fn find_mixed_triple(&self) -> Option<MixedTriple> {
        triples(self.n).find_map(|(u, v, w)| {
            let colors = [self.color(u, v), self.color(u, w), self.color(v, w)];
            if colors[0] == colors[1] && colors[1] == colors[2] {
                return None;
            }
            let repeated = if colors[0] == colors[1] || colors[0] == colors[2] {
                Some(colors[0])
            } else if colors[1] == colors[2] {
                Some(colors[1])
            } else {
                None
            };
            Some(MixedTriple { vertices: (u, v, w), pattern: TriplePattern::Colored { colors, repeated } })
        })
    }

    /// One indicator class per palette color, in palette order.
    pub fn color_partition(&self) -> WeightedMatrixFamily {
        let labels: Vec<_> = self.palette.iter().map(|&c| ClassLabel::Color(c)).collect();
        WeightedMatrixFamily::from_classifier(self.n, &labels, |u, v| {
            self.palette.binary_search(&self.color(u, v)).expect("color is in palette")
        })
    }

    /// Canonical text form accepted by [`parse_colored`].
    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in pairs(self.n) {
            let _ = writeln!(out, "{u} {v} {}", self.color(u, v));
        }
        out
    }
}

/// Color/status pattern of a mixed triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriplePattern {
    /// Two edges and one non-edge.
    H,
    /// One edge and two non-edges.
    K,
    /// Colors of the pairs `(u,v)`, `(u,w)`, `(v,w)`, and the color that occurs
    /// twice, if any.
    Colored { colors: [i64; 3], repeated: Option<i64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MixedTriple {
    pub vertices: (usize, usize, usize),
    pub pattern: TriplePattern,
}

impl MixedTriple {
    /// The three pairs in the order `(u,v)`, `(u,w)`, `(v,w)`.
    pub fn pairs(&self) -> [(usize, usize); 3] {
        let (u, v, w) = self.vertices;
        [(u, v), (u, w), (v, w)]
    }
}

/// Either kind of input the representation pipeline accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Graph(Graph),
    Colored(ColoredCompleteGraph),
}

impl Source {
    pub fn n(&self) -> usize {
        match self {
            Source::Graph(g) => g.n(),
            Source::Colored(c) => c.n(),
        }
    }

    pub fn color_partition(&self) -> WeightedMatrixFamily {
        match self {
            Source::Graph(g) => g.color_partition(),
            Source::Colored(c) => c.color_partition(),
        }
    }

    pub fn find_mixed_triple(&self) -> Option<MixedTriple> {
        match self {
            Source::Graph(g) => g.find_mixed_triple(),
            Source::Colored(c) => c.find_mixed_triple(),
        }
    }

    /// True when the input uses at least two distance classes, i.e. it is a
    /// mixed graph or a colored graph with two or more colors.
    pub fn has_two_classes(&self) -> bool {
        match self {
            Source::Graph(g) => g.classify() == GraphClass::Mixed,
            Source::Colored(c) => c.color_count() >= 2,
        }
    }
}

impl From<Graph> for Source {
    fn from(g: Graph) -> Self {
        Source::Graph(g)
    }
}

impl From<ColoredCompleteGraph> for Source {
    fn from(c: ColoredCompleteGraph) -> Self {
        Source::Colored(c)
    }
}

/// Unordered pairs `u < v` of `0..n` in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).flat_map(move |v| (v + 1..n).map(move |w| (u, v, w))))
}

/// Every labeled graph on `n` vertices, in increasing pair-mask order.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, GraphError> {
    if !(1..=MAX_ENUMERATION_VERTICES).contains(&n) {
        return Err(GraphError::VertexCount { n, min: 1, max: MAX_ENUMERATION_VERTICES });
    }
    let bits = n * (n - 1) / 2;
    Ok((0..1u64 << bits).map(move |mask| Graph::from_mask(n, mask).expect("n checked above")))
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }
}

impl<'a> Iterator for Lines<'a> {
    type Item = (usize, Vec<&'a str>);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, line) in self.inner.by_ref() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Some((i + 1, line.split_ascii_whitespace().collect()));
        }
        None
    }
}

fn int<T: std::str::FromStr>(line: usize, token: &str) -> Result<T, ParseError> {
    token.parse().map_err(|_| ParseError::NotAnInteger { line, token: token.to_string() })
}

fn fields<'a>(line: usize, tokens: &[&'a str], expected: usize) -> Result<(), ParseError> {
    if tokens.len() != expected {
        return Err(ParseError::FieldCount { line, expected, found: tokens.len() });
    }
    Ok(())
}

fn header(lines: &mut Lines<'_>) -> Result<usize, ParseError> {
    let (line, tokens) = lines.next().ok_or(ParseError::Empty)?;
    fields(line, &tokens, 1)?;
    int(line, tokens[0])
}

fn check_pair(line: usize, n: usize, u: usize, v: usize) -> Result<(), ParseError> {
    for vertex in [u, v] {
        if vertex >= n {
            return Err(ParseError::Invalid { line, source: GraphError::VertexOutOfRange { vertex, n } });
        }
    }
    if u == v {
        return Err(ParseError::Invalid { line, source: GraphError::SelfLoop { vertex: u } });
    }
    Ok(())
}

/// Parses the edge-list format. Repeated edges are accepted.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = Lines::new(text);
    let n = header(&mut lines)?;
    let mut g = Graph::empty(n).map_err(|source| ParseError::Invalid { line: 1, source })?;
    for (line, tokens) in lines {
        fields(line, &tokens, 2)?;
        let (u, v) = (int(line, tokens[0])?, int(line, tokens[1])?);
        check_pair(line, n, u, v)?;
        g.set(u, v, true);
    }
    Ok(g)
}

/// Parses the colored format; every unordered pair must be listed, and a pair
/// listed twice must carry the same color both times.
pub fn parse_colored(text: &str) -> Result<ColoredCompleteGraph, ParseError> {
    let mut lines = Lines::new(text);
    let n = header(&mut lines)?;
    if !(2..=MAX_VERTICES).contains(&n) {
        return Err(ParseError::Invalid {
            line: 1,
            source: GraphError::VertexCount { n, min: 2, max: MAX_VERTICES },
        });
    }
    let mut table: Vec<Option<i64>> = vec![None; n * n];
    for (line, tokens) in lines {
        fields(line, &tokens, 3)?;
        let (u, v): (usize, usize) = (int(line, tokens[0])?, int(line, tokens[1])?);
        let color: i64 = int(line, tokens[2])?;
        check_pair(line, n, u, v)?;
        let (a, b) = (u.min(v), u.max(v));
        match table[a * n + b] {
            Some(previous) if previous != color => {
                return Err(ParseError::ConflictingPair { line, u: a, v: b, previous, color });
            }
            _ => table[a * n + b] = Some(color),
        }
    }
    if let Some((u, v)) = pairs(n).find(|&(u, v)| table[u * n + v].is_none()) {
        return Err(ParseError::MissingPair { u, v });
    }
    Ok(ColoredCompleteGraph::from_fn(n, |u, v| table[u * n + v].expect("all pairs checked"))
        .expect("n checked above"))
}
