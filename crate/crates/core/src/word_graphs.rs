//! Subsequence containment and the pattern graphs it induces.
//!
//! `D_n(w)` is the set of length-`n` vectors containing the word `w` as a
//! scattered subsequence. Three graph families are built on it:
//!
//! * `HatH(n)`: vertices are the vectors with first coordinate 0, edges the
//!   pairs whose sum contains `101`.
//! * `H(m)`: all of `F_2^m`, edges the pairs whose sum contains `101`.
//! * `J(m)`: all of `F_2^m`, edges the pairs whose sum contains `111`
//!   (equivalently, pairs at Hamming distance at least 3).
//!
//! Dropping the leading 0 (`theta`) maps `HatH(n+1)` isomorphically onto
//! `H(n)`; the prefix-sum transform `T` maps `J(n)` isomorphically onto
//! `H(n)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::BinaryWord;
use crate::Budget;

/// A nonempty finite word over `{0, 1}`, used as a subsequence pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern(Vec<u8>);

impl Pattern {
    pub fn new(letters: &[u8]) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Parse("empty pattern".into()));
        }
        if letters.iter().any(|&b| b > 1) {
            return Err(Error::Parse("pattern letters must be bits".into()));
        }
        Ok(Pattern(letters.to_vec()))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters: Vec<u8> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("invalid pattern letter {other:?}"))),
            })
            .collect::<Result<_>>()?;
        Pattern::new(&letters)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// True iff `x` contains `w` as a scattered subsequence: indices
/// `i_1 < ... < i_k` with `x_{i_j} = w_j`. Greedy left-to-right scan; taking
/// the earliest match at each letter is safe because only existence matters.
pub fn contains_subsequence(x: &BinaryWord, w: &Pattern) -> bool {
    let mut letters = w.letters().iter();
    let mut next = letters.next();
    for b in x.bits() {
        match next {
            Some(&l) if l == b => next = letters.next(),
            Some(_) => {}
            None => return true,
        }
    }
    next.is_none()
}

/// Membership in `D_n(w)`; errors if `x` does not have length `n`.
pub fn in_d(n: usize, w: &Pattern, x: &BinaryWord) -> Result<bool> {
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            got: x.len(),
            expected: n,
        });
    }
    Ok(contains_subsequence(x, w))
}

/// `101` containment on a raw code: true iff the code has more than one run
/// of ones (a one, a later zero, a later one).
#[inline]
pub(crate) fn contains_101_code(code: u32) -> bool {
    if code == 0 {
        return false;
    }
    let s = code >> code.trailing_zeros();
    s & (s + 1) != 0
}

/// `111` containment on a raw code: at least three ones.
#[inline]
pub(crate) fn contains_111_code(code: u32) -> bool {
    code.count_ones() >= 3
}

/// Which of the three pattern-graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// Vertices with first coordinate 0; sum contains `101`.
    HatH,
    /// All vectors; sum contains `101`.
    H,
    /// All vectors; sum contains `111`.
    J,
}

/// One of `HatH(n)`, `H(m)`, `J(m)`, with adjacency given implicitly by the
/// subsequence predicate on vector sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImplicitGraphSpec {
    kind: GraphKind,
    dim: usize,
}

impl ImplicitGraphSpec {
    pub fn new(kind: GraphKind, dim: usize) -> Result<Self> {
        if dim < 1 || dim > crate::word::MAX_LEN {
            return Err(Error::Parse(format!(
                "graph dimension {dim} out of range 1..={}",
                crate::word::MAX_LEN
            )));
        }
        Ok(ImplicitGraphSpec { kind, dim })
    }

    pub fn hat_h(n: usize) -> Result<Self> {
        Self::new(GraphKind::HatH, n)
    }

    pub fn h(m: usize) -> Result<Self> {
        Self::new(GraphKind::H, m)
    }

    pub fn j(m: usize) -> Result<Self> {
        Self::new(GraphKind::J, m)
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Vector length of the vertices.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> u64 {
        match self.kind {
            GraphKind::HatH => 1u64 << (self.dim - 1),
            GraphKind::H | GraphKind::J => 1u64 << self.dim,
        }
    }

    /// The pattern the vertex sum must contain for adjacency.
    pub fn pattern(&self) -> Pattern {
        match self.kind {
            GraphKind::HatH | GraphKind::H => Pattern::new(&[1, 0, 1]).unwrap(),
            GraphKind::J => Pattern::new(&[1, 1, 1]).unwrap(),
        }
    }

    pub fn contains_vertex(&self, x: &BinaryWord) -> bool {
        x.len() == self.dim
            && match self.kind {
                GraphKind::HatH => x.bit(1) == 0,
                GraphKind::H | GraphKind::J => true,
            }
    }

    /// All vertices in ascending canonical-code order.
    pub fn vertices(&self) -> impl Iterator<Item = BinaryWord> + '_ {
        let dim = self.dim;
        (0..self.vertex_count()).map(move |c| BinaryWord::from_code(dim, c as u32))
    }

    /// Adjacency: distinct vertices whose coordinate-wise sum contains the
    /// family pattern.
    pub fn adjacent(&self, x: &BinaryWord, y: &BinaryWord) -> Result<bool> {
        if !self.contains_vertex(x) {
            return Err(Error::NotInVertexSet(*x));
        }
        if !self.contains_vertex(y) {
            return Err(Error::NotInVertexSet(*y));
        }
        if x == y {
            return Ok(false);
        }
        let sum = x.xor(y)?;
        Ok(contains_subsequence(&sum, &self.pattern()))
    }

    fn adjacent_codes(&self, delta_adjacent: &[bool], a: u32, b: u32) -> bool {
        a != b && delta_adjacent[(a ^ b) as usize]
    }

    /// Precomputed adjacency-by-sum table: adjacency depends only on `x + y`.
    fn delta_table(&self) -> Vec<bool> {
        let count = self.vertex_count() as usize;
        let mut table = vec![false; count.max(2)];
        let predicate: fn(u32) -> bool = match self.kind {
            GraphKind::HatH | GraphKind::H => contains_101_code,
            GraphKind::J => contains_111_code,
        };
        // For HatH both endpoints have first coordinate 0, so sums range over
        // the same code set as the vertices.
        for (delta, slot) in table.iter_mut().enumerate() {
            *slot = predicate(delta as u32);
        }
        table
    }
}

impl FromStr for ImplicitGraphSpec {
    type Err = Error;

    /// Parses `"HatH:8"`, `"H:6"`, `"J:7"`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, dim) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("graph spec {s:?} is not KIND:DIM")))?;
        let dim: usize = dim
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension in graph spec {s:?}")))?;
        let kind = match kind {
            "HatH" | "hath" | "Hhat" => GraphKind::HatH,
            "H" | "h" => GraphKind::H,
            "J" | "j" => GraphKind::J,
            other => return Err(Error::Parse(format!("unknown graph kind {other:?}"))),
        };
        Self::new(kind, dim)
    }
}

impl fmt::Display for ImplicitGraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            GraphKind::HatH => "HatH",
            GraphKind::H => "H",
            GraphKind::J => "J",
        };
        write!(f, "{kind}:{}", self.dim)
    }
}

/// Drops the first coordinate of a vector whose first coordinate is 0.
///
/// This is a linear bijection onto `F_2^(n-1)` and a graph isomorphism
/// `HatH(n) -> H(n-1)`.
pub fn theta(x: &BinaryWord) -> Result<BinaryWord> {
    if x.len() < 2 {
        return Err(Error::DimensionMismatch {
            got: x.len(),
            expected: 2,
        });
    }
    if x.bit(1) != 0 {
        return Err(Error::Parse(format!(
            "theta requires first coordinate 0, got {x}"
        )));
    }
    Ok(BinaryWord::from_code(x.len() - 1, x.code()))
}

/// The prefix-sum transform `T`: coordinate `k` of the output is
/// `x_1 + ... + x_k` over `F_2`. A linear bijection and a graph isomorphism
/// `J(n) -> H(n)`.
pub fn prefix_sum_t(x: &BinaryWord) -> BinaryWord {
    let n = x.len();
    let mut code = x.code();
    let mut shift = 1;
    while shift < n {
        code ^= code >> shift;
        shift <<= 1;
    }
    BinaryWord::from_code(n, code)
}

/// Inverse of [`prefix_sum_t`]: the difference map
/// `y -> (y_1, y_1 + y_2, y_2 + y_3, ...)`.
pub fn prefix_sum_t_inverse(y: &BinaryWord) -> BinaryWord {
    BinaryWord::from_code(y.len(), y.code() ^ (y.code() >> 1))
}

/// A materialized graph: packed adjacency rows over canonical vertex labels.
#[derive(Debug, Clone)]
pub struct ExplicitGraph {
    label_width: usize,
    labels: Vec<u32>,
    row_words: usize,
    adj: Vec<u64>,
}

impl ExplicitGraph {
    /// An edgeless graph on the given labels (strictly ascending codes).
    pub fn new(label_width: usize, labels: Vec<u32>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGraph(
                "vertex labels must be strictly ascending".into(),
            ));
        }
        let n = labels.len();
        let row_words = n.div_ceil(64);
        Ok(ExplicitGraph {
            label_width,
            labels,
            row_words,
            adj: vec![0u64; n * row_words],
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Vector length of the vertex labels.
    pub fn label_width(&self) -> usize {
        self.label_width
    }

    pub fn label(&self, idx: usize) -> BinaryWord {
        BinaryWord::from_code(self.label_width, self.labels[idx])
    }

    pub fn labels(&self) -> impl Iterator<Item = BinaryWord> + '_ {
        (0..self.vertex_count()).map(move |i| self.label(i))
    }

    pub fn index_of(&self, label: &BinaryWord) -> Result<usize> {
        if label.len() != self.label_width {
            return Err(Error::UnknownVertex(label.to_string()));
        }
        self.labels
            .binary_search(&label.code())
            .map_err(|_| Error::UnknownVertex(label.to_string()))
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "no self-loops");
        assert!(a < self.vertex_count() && b < self.vertex_count());
        self.adj[a * self.row_words + (b >> 6)] |= 1u64 << (b & 63);
        self.adj[b * self.row_words + (a >> 6)] |= 1u64 << (a & 63);
    }

    #[inline]
    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        (self.adj[a * self.row_words + (b >> 6)] >> (b & 63)) & 1 == 1
    }

    /// Packed adjacency row of vertex `idx`.
    pub fn row(&self, idx: usize) -> &[u64] {
        &self.adj[idx * self.row_words..(idx + 1) * self.row_words]
    }

    pub fn row_words(&self) -> usize {
        self.row_words
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.row(idx).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges as index pairs `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.vertex_count() {
            for b in (a + 1)..self.vertex_count() {
                if self.is_adjacent(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Text export: one `u v` line per edge, bitstring labels.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (a, b) in self.edges() {
            out.push_str(&format!("{} {}\n", self.label(a), self.label(b)));
        }
        out
    }

    /// Parses the edge-list format: `u v` per line for an edge, a single
    /// token for an isolated vertex, `#` comments and blank lines ignored.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut width: Option<usize> = None;
        let mut labels: Vec<u32> = Vec::new();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parse_word = |tok: &str| -> Result<u32> {
                let w: BinaryWord = tok.parse()?;
                match width {
                    None => width = Some(w.len()),
                    Some(expected) if expected != w.len() => {
                        return Err(Error::Parse(format!(
                            "line {}: label {tok:?} has width {}, expected {expected}",
                            lineno + 1,
                            w.len()
                        )))
                    }
                    _ => {}
                }
                Ok(w.code())
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                [v] => labels.push(parse_word(v)?),
                [u, v] => {
                    let (u, v) = (parse_word(u)?, parse_word(v)?);
                    if u == v {
                        return Err(Error::Parse(format!("line {}: self-loop", lineno + 1)));
                    }
                    labels.push(u);
                    labels.push(v);
                    edges.push((u, v));
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected one or two labels",
                        lineno + 1
                    )))
                }
            }
        }
        let width = width.ok_or_else(|| Error::Parse("empty edge list".into()))?;
        labels.sort_unstable();
        labels.dedup();
        let mut graph = ExplicitGraph::new(width, labels)?;
        for (u, v) in edges {
            let a = graph.labels.binary_search(&u).expect("label present");
            let b = graph.labels.binary_search(&v).expect("label present");
            graph.add_edge(a, b);
        }
        Ok(graph)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph g {\n");
        for (a, b) in self.edges() {
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", self.label(a), self.label(b)));
        }
        out.push_str("}\n");
        out
    }
}

/// Materializes an implicit graph so every pair query is a bit lookup.
///
/// The result agrees with [`ImplicitGraphSpec::adjacent`] on every pair.
pub fn materialize(spec: &ImplicitGraphSpec, budget: &Budget) -> Result<ExplicitGraph> {
    budget.check_dim("materialize", spec.dim(), crate::MATERIALIZE_DIM_CAP)?;
    let count = spec.vertex_count() as usize;
    let labels: Vec<u32> = (0..count as u32).collect();
    let mut graph = ExplicitGraph::new(spec.dim(), labels)?;
    let delta = spec.delta_table();
    for a in 0..count {
        for b in (a + 1)..count {
            if spec.adjacent_codes(&delta, a as u32, b as u32) {
                graph.add_edge(a, b);
            }
        }
    }
    Ok(graph)
}
