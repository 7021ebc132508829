//! Sequential dynamical systems: base graphs, vertex functions, update
//! orders, and the SDS map obtained by updating vertices one at a time.
//!
//! A system state is a [`BinaryWord`] of length `n`. Updating vertex `v_i`
//! rewrites coordinate `i` to `f_{v_i}(X(v_i))`, where `X(v_i)` lists the
//! states of `v_i` and its neighbors in ascending vertex order with `v_i` in
//! its own index position. Composing the local updates in permutation order
//! gives the SDS map `F`; stopping after `k` updates gives the intermediate
//! map `G_k`.

mod io;
mod phase;

pub use io::SdsFile;
pub use phase::{fixed_points, phase_space, two_cycle_count, ExportFormat, PhaseSpace};

use crate::error::{Error, Result};
use crate::word::BinaryWord;

/// Simple undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    complete: bool,
}

impl BaseGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 || n > crate::word::MAX_LEN {
            return Err(Error::InvalidGraph(format!(
                "vertex count {n} out of range 1..={}",
                crate::word::MAX_LEN
            )));
        }
        let mut normalized: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a < 1 || a > n || b < 1 || b > n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a},{b}) references a vertex outside 1..={n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if normalized.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in &normalized {
            neighbors[a - 1].push(b);
            neighbors[b - 1].push(a);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        let complete = normalized.len() == n * (n - 1) / 2;
        Ok(BaseGraph {
            n,
            edges: normalized,
            neighbors,
            complete,
        })
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for a in 1..=n {
            for b in (a + 1)..=n {
                edges.push((a, b));
            }
        }
        Self::new(n, &edges).expect("complete graph is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Degree of vertex `v` (1-based).
    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.neighbors[v - 1].len())
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> Result<&[usize]> {
        self.check_vertex(v)?;
        Ok(&self.neighbors[v - 1])
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < 1 || v > self.n {
            return Err(Error::VertexOutOfRange {
                index: v,
                n: self.n,
            });
        }
        Ok(())
    }
}

/// Truth table of a vertex function `f: F_2^arity -> F_2`.
///
/// Entry `idx` holds the value on the argument tuple whose canonical encoding
/// is `idx` (first argument most significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexFunction {
    arity: usize,
    table: Vec<u64>,
}

impl VertexFunction {
    /// Builds from explicit table bits, `bits[idx]` = value at input `idx`.
    pub fn from_bits(arity: usize, bits: &[u8]) -> Result<Self> {
        if arity == 0 || arity > crate::word::MAX_LEN {
            return Err(Error::Parse(format!("arity {arity} out of range")));
        }
        let len = 1usize << arity;
        if bits.len() != len {
            return Err(Error::Parse(format!(
                "truth table has {} entries, expected 2^{arity} = {len}",
                bits.len()
            )));
        }
        let mut table = vec![0u64; len.div_ceil(64)];
        for (idx, &b) in bits.iter().enumerate() {
            if b > 1 {
                return Err(Error::Parse(format!("table entry {idx} is not a bit")));
            }
            table[idx >> 6] |= u64::from(b) << (idx & 63);
        }
        Ok(VertexFunction { arity, table })
    }

    /// Builds from a `0/1` string of length `2^arity` (arity inferred).
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let len = s.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::Parse(format!(
                "truth table string length {len} is not a power of two >= 2"
            )));
        }
        let arity = len.trailing_zeros() as usize;
        let bits: Vec<u8> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!(
                    "invalid character {other:?} in truth table"
                ))),
            })
            .collect::<Result<_>>()?;
        Self::from_bits(arity, &bits)
    }

    /// Tabulates `f` over all `2^arity` argument tuples.
    pub fn tabulate(arity: usize, f: impl Fn(&[u8]) -> u8) -> Self {
        assert!(arity >= 1 && arity <= crate::word::MAX_LEN);
        let len = 1usize << arity;
        let mut bits = vec![0u8; len];
        let mut args = vec![0u8; arity];
        for (idx, slot) in bits.iter_mut().enumerate() {
            for (pos, a) in args.iter_mut().enumerate() {
                *a = ((idx >> (arity - 1 - pos)) & 1) as u8;
            }
            *slot = f(&args) & 1;
        }
        Self::from_bits(arity, &bits).expect("tabulated table is well-formed")
    }

    pub fn constant(arity: usize, value: u8) -> Self {
        Self::tabulate(arity, |_| value)
    }

    /// Projection onto argument position `pos` (1-based).
    pub fn projection(arity: usize, pos: usize) -> Self {
        assert!(pos >= 1 && pos <= arity);
        Self::tabulate(arity, |args| args[pos - 1])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Value on the argument tuple with canonical encoding `idx`.
    #[inline]
    pub fn eval(&self, idx: usize) -> u8 {
        debug_assert!(idx < 1usize << self.arity);
        ((self.table[idx >> 6] >> (idx & 63)) & 1) as u8
    }

    pub fn eval_tuple(&self, args: &[u8]) -> Result<u8> {
        if args.len() != self.arity {
            return Err(Error::DimensionMismatch {
                got: args.len(),
                expected: self.arity,
            });
        }
        let mut idx = 0usize;
        for &a in args {
            idx = (idx << 1) | usize::from(a & 1);
        }
        Ok(self.eval(idx))
    }

    pub fn table_bitstring(&self) -> String {
        (0..1usize << self.arity)
            .map(|idx| if self.eval(idx) == 1 { '1' } else { '0' })
            .collect()
    }

    pub(crate) fn table_words(&self) -> &[u64] {
        &self.table
    }
}

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateOrder(Vec<usize>);

impl UpdateOrder {
    pub fn new(pi: Vec<usize>) -> Result<Self> {
        let n = pi.len();
        if n == 0 {
            return Err(Error::InvalidOrder("empty order".into()));
        }
        let mut seen = vec![false; n];
        for &v in &pi {
            if v < 1 || v > n {
                return Err(Error::InvalidOrder(format!(
                    "entry {v} out of range 1..={n}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidOrder(format!("entry {v} repeated")));
            }
            seen[v - 1] = true;
        }
        Ok(UpdateOrder(pi))
    }

    pub fn identity(n: usize) -> Self {
        UpdateOrder((1..=n).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// A full SDS: base graph, one vertex function per vertex, update order.
#[derive(Debug, Clone)]
pub struct SdsDefinition {
    graph: BaseGraph,
    functions: Vec<VertexFunction>,
    order: UpdateOrder,
    /// Vertices of each profile `X(v_i)`: neighbors plus self, ascending.
    profiles: Vec<Vec<usize>>,
}

impl SdsDefinition {
    pub fn new(
        graph: BaseGraph,
        functions: Vec<VertexFunction>,
        order: UpdateOrder,
    ) -> Result<Self> {
        let n = graph.n();
        if functions.len() != n {
            return Err(Error::InvalidGraph(format!(
                "{} vertex functions for {n} vertices",
                functions.len()
            )));
        }
        if order.len() != n {
            return Err(Error::InvalidOrder(format!(
                "order has length {}, graph has {n} vertices",
                order.len()
            )));
        }
        let mut profiles = Vec::with_capacity(n);
        for v in 1..=n {
            let expected = graph.degree(v)? + 1;
            let got = functions[v - 1].arity();
            if got != expected {
                return Err(Error::ArityMismatch {
                    vertex: v,
                    arity: got,
                    expected,
                });
            }
            let mut profile = graph.neighbors(v)?.to_vec();
            let insert_at = profile.partition_point(|&u| u < v);
            profile.insert(insert_at, v);
            profiles.push(profile);
        }
        Ok(SdsDefinition {
            graph,
            functions,
            order,
            profiles,
        })
    }

    /// SDS over the complete graph `K_n` with the same function at every
    /// vertex.
    pub fn complete_uniform(n: usize, f: VertexFunction, order: UpdateOrder) -> Result<Self> {
        if f.arity() != n {
            return Err(Error::ArityMismatch {
                vertex: 1,
                arity: f.arity(),
                expected: n,
            });
        }
        let functions = vec![f; n];
        Self::new(BaseGraph::complete(n), functions, order)
    }

    pub fn graph(&self) -> &BaseGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn functions(&self) -> &[VertexFunction] {
        &self.functions
    }

    pub fn order(&self) -> &UpdateOrder {
        &self.order
    }

    /// True for `[K_n, f, pi]`: complete base graph, all functions equal.
    pub fn is_uniform_complete(&self) -> bool {
        self.graph.is_complete() && self.functions.iter().all(|f| f == &self.functions[0])
    }

    fn check_state(&self, state: &BinaryWord) -> Result<()> {
        if state.len() != self.n() {
            return Err(Error::DimensionMismatch {
                got: state.len(),
                expected: self.n(),
            });
        }
        Ok(())
    }

    /// `X(v_i)`: the states of `v_i` and its neighbors, ascending vertex
    /// order, with `v_i`'s own state in its index position.
    pub fn neighbor_profile(&self, state: &BinaryWord, i: usize) -> Result<Vec<u8>> {
        self.check_state(state)?;
        self.graph.check_vertex(i)?;
        Ok(self.profiles[i - 1]
            .iter()
            .map(|&v| state.bit(v))
            .collect())
    }

    #[inline]
    fn profile_index(&self, code: u32, i: usize) -> usize {
        if self.graph.complete {
            return code as usize;
        }
        let n = self.n();
        let mut idx = 0usize;
        for &v in &self.profiles[i - 1] {
            idx = (idx << 1) | ((code >> (n - v)) & 1) as usize;
        }
        idx
    }

    /// One local update on raw state codes; coordinate `i` becomes
    /// `f_{v_i}(X(v_i))`.
    #[inline]
    pub(crate) fn local_update_code(&self, code: u32, i: usize) -> u32 {
        let val = self.functions[i - 1].eval(self.profile_index(code, i));
        let pos = self.n() - i;
        (code & !(1u32 << pos)) | (u32::from(val) << pos)
    }

    #[inline]
    pub(crate) fn sds_map_code(&self, mut code: u32) -> u32 {
        for &v in self.order.as_slice() {
            code = self.local_update_code(code, v);
        }
        code
    }

    /// The local update map `L_{v_i}`.
    pub fn local_update(&self, state: &BinaryWord, i: usize) -> Result<BinaryWord> {
        self.check_state(state)?;
        self.graph.check_vertex(i)?;
        Ok(BinaryWord::from_code(
            self.n(),
            self.local_update_code(state.code(), i),
        ))
    }

    /// The intermediate map `G_k`: the first `k` local updates in order.
    /// `G_0` is the identity.
    pub fn intermediate_map(&self, state: &BinaryWord, k: usize) -> Result<BinaryWord> {
        self.check_state(state)?;
        if k > self.n() {
            return Err(Error::StepOutOfRange { k, n: self.n() });
        }
        let mut code = state.code();
        for &v in &self.order.as_slice()[..k] {
            code = self.local_update_code(code, v);
        }
        Ok(BinaryWord::from_code(self.n(), code))
    }

    /// The SDS map `F = G_n`: one full system update.
    pub fn sds_map(&self, state: &BinaryWord) -> Result<BinaryWord> {
        self.check_state(state)?;
        Ok(BinaryWord::from_code(self.n(), self.sds_map_code(state.code())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 4-vertex demo SDS used throughout the crate: edges
    /// {1,2},{1,3},{1,4},{3,4}, order 2413, polynomial vertex functions.
    pub(crate) fn demo_sds() -> SdsDefinition {
        let graph = BaseGraph::new(4, &[(1, 2), (1, 3), (1, 4), (3, 4)]).unwrap();
        let f1 = VertexFunction::tabulate(4, |x| (x[0] & x[2]) ^ x[1] ^ x[3]);
        let f2 = VertexFunction::tabulate(2, |x| (x[0] & x[1]) ^ 1);
        let f3 = VertexFunction::tabulate(3, |x| x[0] ^ x[1] ^ x[2]);
        let f4 = VertexFunction::tabulate(3, |x| (x[0] & x[1]) ^ x[2]);
        SdsDefinition::new(
            graph,
            vec![f1, f2, f3, f4],
            UpdateOrder::new(vec![2, 4, 1, 3]).unwrap(),
        )
        .unwrap()
    }

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn profile_orders_neighbors_with_self_in_index_position() {
        // v3 adjacent to v1, v4, v6: X(v3) = (q1, q3, q4, q6)
        let graph = BaseGraph::new(6, &[(1, 3), (3, 4), (3, 6)]).unwrap();
        let mut functions = vec![
            VertexFunction::projection(2, 2), // v1: deg 1
            VertexFunction::projection(1, 1), // v2: isolated
            VertexFunction::projection(4, 1), // v3: deg 3
            VertexFunction::projection(2, 2), // v4
            VertexFunction::projection(1, 1), // v5: isolated
            VertexFunction::projection(2, 2), // v6
        ];
        functions[2] = VertexFunction::projection(4, 1);
        let sds = SdsDefinition::new(graph, functions, UpdateOrder::identity(6)).unwrap();
        let state = w("110101");
        assert_eq!(
            sds.neighbor_profile(&state, 3).unwrap(),
            vec![state.bit(1), state.bit(3), state.bit(4), state.bit(6)]
        );
        // isolated vertex: X(v2) = (q2)
        assert_eq!(sds.neighbor_profile(&state, 2).unwrap(), vec![state.bit(2)]);
    }

    #[test]
    fn complete_graph_profile_is_the_system_state() {
        let n = 5;
        let sds = SdsDefinition::complete_uniform(
            n,
            VertexFunction::constant(n, 0),
            UpdateOrder::identity(n),
        )
        .unwrap();
        let state = w("10110");
        let profile = sds.neighbor_profile(&state, 3).unwrap();
        assert_eq!(profile, state.bits().collect::<Vec<_>>());
    }

    #[test]
    fn demo_local_update_matches_printed_value() {
        let sds = demo_sds();
        assert_eq!(sds.local_update(&w("0001"), 2).unwrap(), w("0101"));
    }

    #[test]
    fn demo_intermediate_and_full_map() {
        let sds = demo_sds();
        let start = w("0001");
        assert_eq!(sds.intermediate_map(&start, 0).unwrap(), start);
        assert_eq!(sds.intermediate_map(&start, 1).unwrap(), w("0101"));
        assert_eq!(sds.intermediate_map(&start, 2).unwrap(), w("0101"));
        assert_eq!(sds.intermediate_map(&start, 3).unwrap(), w("0101"));
        assert_eq!(sds.intermediate_map(&start, 4).unwrap(), w("0111"));
        assert_eq!(sds.sds_map(&start).unwrap(), w("0111"));
        assert!(sds.intermediate_map(&start, 5).is_err());
    }

    #[test]
    fn demo_two_cycle_pair() {
        let sds = demo_sds();
        assert_eq!(sds.sds_map(&w("0111")).unwrap(), w("0101"));
        assert_eq!(sds.sds_map(&w("0101")).unwrap(), w("0111"));
    }

    #[test]
    fn projection_functions_give_identity_map() {
        let graph = BaseGraph::complete(4);
        let functions: Vec<_> = (1..=4)
            .map(|v| {
                // own state sits at index position v in X(v) over K_n
                VertexFunction::projection(4, v)
            })
            .collect();
        let sds = SdsDefinition::new(graph, functions, UpdateOrder::identity(4)).unwrap();
        for code in 0..16 {
            let s = BinaryWord::from_code(4, code);
            assert_eq!(sds.sds_map(&s).unwrap(), s);
        }
    }

    #[test]
    fn constant_zero_forces_coordinate() {
        let sds = SdsDefinition::complete_uniform(
            3,
            VertexFunction::constant(3, 0),
            UpdateOrder::identity(3),
        )
        .unwrap();
        for code in 0..8 {
            let s = BinaryWord::from_code(3, code);
            assert_eq!(sds.local_update(&s, 2).unwrap(), s.with_bit(2, 0));
        }
    }

    #[test]
    fn successive_intermediates_differ_only_at_updated_vertex() {
        let sds = demo_sds();
        for code in 0..16 {
            let s = BinaryWord::from_code(4, code);
            for k in 1..=4 {
                let prev = sds.intermediate_map(&s, k - 1).unwrap();
                let next = sds.intermediate_map(&s, k).unwrap();
                let diff = prev.xor(&next).unwrap();
                let updated = sds.order().as_slice()[k - 1];
                assert!(diff.weight() <= 1);
                if diff.weight() == 1 {
                    assert_eq!(diff.bit(updated), 1);
                }
            }
        }
    }

    #[test]
    fn arity_mismatch_rejected() {
        let graph = BaseGraph::new(3, &[(1, 2)]).unwrap();
        let functions = vec![
            VertexFunction::constant(2, 0),
            VertexFunction::constant(2, 0),
            VertexFunction::constant(2, 0), // v3 is isolated, needs arity 1
        ];
        let err = SdsDefinition::new(graph, functions, UpdateOrder::identity(3));
        assert!(matches!(err, Err(Error::ArityMismatch { vertex: 3, .. })));
    }

    #[test]
    fn order_must_be_permutation() {
        assert!(UpdateOrder::new(vec![1, 1, 2]).is_err());
        assert!(UpdateOrder::new(vec![0, 1]).is_err());
        assert!(UpdateOrder::new(vec![2, 4, 1, 3]).is_ok());
        assert!(UpdateOrder::identity(4).is_identity());
    }

    #[test]
    fn graph_validation() {
        assert!(BaseGraph::new(3, &[(1, 1)]).is_err());
        assert!(BaseGraph::new(3, &[(1, 2), (2, 1)]).is_err());
        assert!(BaseGraph::new(3, &[(1, 4)]).is_err());
        let g = BaseGraph::new(4, &[(1, 2), (1, 3), (1, 4), (3, 4)]).unwrap();
        assert_eq!(g.degree(1).unwrap(), 3);
        assert_eq!(g.degree(2).unwrap(), 1);
        assert!(!g.is_complete());
        assert!(BaseGraph::complete(5).is_complete());
    }
}
