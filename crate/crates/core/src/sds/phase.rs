//! Phase-space enumeration and the cycle census.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::sds::SdsDefinition;
use crate::word::BinaryWord;
use crate::Budget;

/// The functional digraph of an SDS map on all `2^n` states.
#[derive(Debug, Clone)]
pub struct PhaseSpace {
    n: usize,
    successor: Vec<u32>,
    census: BTreeMap<u64, u64>,
    cycles: Vec<Vec<u32>>,
}

/// Output format for phase-space export.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl PhaseSpace {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn state_count(&self) -> usize {
        self.successor.len()
    }

    /// Successor of a raw state code.
    pub fn successor(&self, code: u32) -> u32 {
        self.successor[code as usize]
    }

    pub fn successor_state(&self, state: &BinaryWord) -> Result<BinaryWord> {
        if state.len() != self.n {
            return Err(Error::DimensionMismatch {
                got: state.len(),
                expected: self.n,
            });
        }
        Ok(BinaryWord::from_code(self.n, self.successor(state.code())))
    }

    /// Cycle length -> number of cycles of that length.
    pub fn census(&self) -> &BTreeMap<u64, u64> {
        &self.census
    }

    /// Cycles as state-code sequences, each starting at its minimum code,
    /// listed in ascending order of that minimum.
    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    pub fn cycle_states(&self, idx: usize) -> Vec<BinaryWord> {
        self.cycles[idx]
            .iter()
            .map(|&c| BinaryWord::from_code(self.n, c))
            .collect()
    }

    pub fn cycle_count(&self, length: u64) -> u64 {
        self.census.get(&length).copied().unwrap_or(0)
    }

    pub fn periodic_state_count(&self) -> u64 {
        self.census.iter().map(|(len, count)| len * count).sum()
    }

    fn label(&self, code: u32) -> String {
        BinaryWord::from_code(self.n, code).to_string()
    }

    /// DOT digraph with bitstring node labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph phase_space {\n");
        for (code, &succ) in self.successor.iter().enumerate() {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\";\n",
                self.label(code as u32),
                self.label(succ)
            ));
        }
        out.push_str("}\n");
        out
    }

    /// JSON export: `{n, edges: [[from, to]], census: {length: count}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<serde_json::Value> = self
            .successor
            .iter()
            .enumerate()
            .map(|(code, &succ)| json!([self.label(code as u32), self.label(succ)]))
            .collect();
        json!({
            "n": self.n,
            "edges": edges,
            "census": self.census,
        })
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => self.to_dot(),
            ExportFormat::Json => {
                let mut s = serde_json::to_string(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

fn check_enumeration_budget(n: usize, budget: &Budget) -> Result<()> {
    budget.check_dim("phase-space enumeration", n, crate::PHASE_SPACE_DIM_CAP)
}

fn successor_table(sds: &SdsDefinition) -> Vec<u32> {
    let size = 1usize << sds.n();
    // Parallel fill is bit-identical to sequential: each entry depends only
    // on its own index.
    if sds.n() >= 18 {
        (0..size as u32)
            .into_par_iter()
            .map(|code| sds.sds_map_code(code))
            .collect()
    } else {
        (0..size as u32).map(|code| sds.sds_map_code(code)).collect()
    }
}

/// Enumerates all `2^n` states and their cycles.
pub fn phase_space(sds: &SdsDefinition, budget: &Budget) -> Result<PhaseSpace> {
    let n = sds.n();
    check_enumeration_budget(n, budget)?;
    let successor = successor_table(sds);
    let size = successor.len();

    // Functional-graph cycle detection: walk unvisited states marking the
    // current path; hitting the path again closes a new cycle.
    let mut color = vec![0u8; size]; // 0 new, 1 on path, 2 done
    let mut pos_on_path = vec![0u32; size];
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut path: Vec<u32> = Vec::new();
    for start in 0..size {
        if color[start] != 0 {
            continue;
        }
        path.clear();
        let mut x = start as u32;
        while color[x as usize] == 0 {
            color[x as usize] = 1;
            pos_on_path[x as usize] = path.len() as u32;
            path.push(x);
            x = successor[x as usize];
        }
        if color[x as usize] == 1 {
            let pos = pos_on_path[x as usize] as usize;
            cycles.push(path[pos..].to_vec());
        }
        for &p in &path {
            color[p as usize] = 2;
        }
    }

    // Rotate each cycle to start at its minimum code; order cycles by that.
    for cycle in &mut cycles {
        let min_pos = cycle
            .iter()
            .enumerate()
            .min_by_key(|&(_, &c)| c)
            .map(|(i, _)| i)
            .unwrap_or(0);
        cycle.rotate_left(min_pos);
    }
    cycles.sort_by_key(|c| c[0]);

    let mut census: BTreeMap<u64, u64> = BTreeMap::new();
    for cycle in &cycles {
        *census.entry(cycle.len() as u64).or_insert(0) += 1;
    }

    Ok(PhaseSpace {
        n,
        successor,
        census,
        cycles,
    })
}

/// Number of 2-cycles in the phase space.
///
/// For `[K_n, f, id]` this takes the fast path: every 2-cycle contains
/// exactly one state with first coordinate 0, and that state satisfies
/// `F(x) = inv(x)` and `F(inv(x)) = x`. Other systems count states with
/// `F(F(x)) = x`, `F(x) != x` and halve.
pub fn two_cycle_count(sds: &SdsDefinition, budget: &Budget) -> Result<u64> {
    let n = sds.n();
    check_enumeration_budget(n, budget)?;
    if sds.is_uniform_complete() && sds.order().is_identity() {
        return Ok(two_cycle_count_uniform_identity(
            n,
            sds.functions()[0].table_words(),
        ));
    }
    let size = 1u64 << n;
    let mut count = 0u64;
    for code in 0..size {
        let fx = sds.sds_map_code(code as u32);
        if fx != code as u32 && sds.sds_map_code(fx) == code as u32 {
            count += 1;
        }
    }
    Ok(count / 2)
}

/// Applies `F = [K_n, f, id]` to a raw state code, `f` given as packed table
/// bits.
#[inline]
pub(crate) fn apply_uniform_identity(n: usize, table: &[u64], mut code: u32) -> u32 {
    for i in 1..=n {
        let idx = code as usize;
        let val = (table[idx >> 6] >> (idx & 63)) & 1;
        let pos = (n - i) as u32;
        code = (code & !(1u32 << pos)) | ((val as u32) << pos);
    }
    code
}

pub(crate) fn two_cycle_count_uniform_identity(n: usize, table: &[u64]) -> u64 {
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let half = 1u64 << (n - 1);
    let mut count = 0u64;
    for code in 0..half {
        let x = code as u32;
        let fx = apply_uniform_identity(n, table, x);
        if fx == x ^ full && apply_uniform_identity(n, table, fx) == x {
            count += 1;
        }
    }
    count
}

/// All states with `F(x) = x`, ascending by canonical code.
pub fn fixed_points(sds: &SdsDefinition, budget: &Budget) -> Result<Vec<BinaryWord>> {
    let n = sds.n();
    check_enumeration_budget(n, budget)?;
    let size = 1u64 << n;
    let mut out = Vec::new();
    for code in 0..size {
        if sds.sds_map_code(code as u32) == code as u32 {
            out.push(BinaryWord::from_code(n, code as u32));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sds::tests::demo_sds;
    use crate::sds::{SdsDefinition, UpdateOrder, VertexFunction};

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn demo_phase_space_has_a_single_two_cycle() {
        let ps = phase_space(&demo_sds(), &Budget::unlimited()).unwrap();
        assert_eq!(ps.state_count(), 16);
        assert_eq!(ps.cycle_count(2), 1);
        let two_cycle = ps
            .cycles()
            .iter()
            .find(|c| c.len() == 2)
            .expect("one 2-cycle");
        let states: Vec<String> = two_cycle
            .iter()
            .map(|&c| BinaryWord::from_code(4, c).to_string())
            .collect();
        assert_eq!(states, vec!["0101", "0111"]);
    }

    #[test]
    fn successor_is_total_and_census_counts_periodic_states() {
        let ps = phase_space(&demo_sds(), &Budget::unlimited()).unwrap();
        assert_eq!(ps.successor.len(), 16); // one out-edge per state
        let periodic: u64 = ps.cycles().iter().map(|c| c.len() as u64).sum();
        assert_eq!(ps.periodic_state_count(), periodic);
    }

    #[test]
    fn constant_zero_on_complete_graph_has_one_fixed_point() {
        let sds = SdsDefinition::complete_uniform(
            4,
            VertexFunction::constant(4, 0),
            UpdateOrder::identity(4),
        )
        .unwrap();
        let ps = phase_space(&sds, &Budget::unlimited()).unwrap();
        assert_eq!(ps.census().len(), 1);
        assert_eq!(ps.cycle_count(1), 1);
        assert_eq!(ps.cycles()[0], vec![0]);
        assert_eq!(
            fixed_points(&sds, &Budget::unlimited()).unwrap(),
            vec![w("0000")]
        );
    }

    #[test]
    fn two_cycle_count_matches_census_on_demo() {
        let sds = demo_sds();
        let ps = phase_space(&sds, &Budget::unlimited()).unwrap();
        assert_eq!(
            two_cycle_count(&sds, &Budget::unlimited()).unwrap(),
            ps.cycle_count(2)
        );
        assert_eq!(two_cycle_count(&sds, &Budget::unlimited()).unwrap(), 1);
    }

    #[test]
    fn n2_complement_of_second_coordinate_has_one_two_cycle() {
        // f(x1, x2) = complement of x2; cycle 00 <-> 11
        let f = VertexFunction::tabulate(2, |x| x[1] ^ 1);
        let sds = SdsDefinition::complete_uniform(2, f, UpdateOrder::identity(2)).unwrap();
        assert_eq!(two_cycle_count(&sds, &Budget::unlimited()).unwrap(), 1);
        assert_eq!(sds.sds_map(&w("00")).unwrap(), w("11"));
        assert_eq!(sds.sds_map(&w("11")).unwrap(), w("00"));
    }

    #[test]
    fn identity_projections_have_no_two_cycles() {
        let functions: Vec<_> = (1..=4).map(|v| VertexFunction::projection(4, v)).collect();
        let sds = SdsDefinition::new(
            crate::sds::BaseGraph::complete(4),
            functions,
            UpdateOrder::identity(4),
        )
        .unwrap();
        assert_eq!(two_cycle_count(&sds, &Budget::unlimited()).unwrap(), 0);
        let ps = phase_space(&sds, &Budget::unlimited()).unwrap();
        assert_eq!(ps.cycle_count(1), 16);
    }

    #[test]
    fn fast_and_general_two_cycle_paths_agree() {
        // Same uniform system, once with identity order (fast path), once
        // via the general census.
        for table in [0x6A2Du16, 0x1234, 0xF00F, 0x0001] {
            let bits: Vec<u8> = (0..16).map(|i| ((table >> i) & 1) as u8).collect();
            let f = VertexFunction::from_bits(4, &bits).unwrap();
            let sds =
                SdsDefinition::complete_uniform(4, f, UpdateOrder::identity(4)).unwrap();
            let fast = two_cycle_count(&sds, &Budget::unlimited()).unwrap();
            let census = phase_space(&sds, &Budget::unlimited())
                .unwrap()
                .cycle_count(2);
            assert_eq!(fast, census);
        }
    }

    #[test]
    fn majority_fixed_points_are_constant() {
        let f = VertexFunction::tabulate(3, |x| {
            if x.iter().map(|&b| b as u32).sum::<u32>() >= 2 {
                1
            } else {
                0
            }
        });
        let sds = SdsDefinition::complete_uniform(3, f, UpdateOrder::identity(3)).unwrap();
        assert_eq!(
            fixed_points(&sds, &Budget::unlimited()).unwrap(),
            vec![w("000"), w("111")]
        );
    }

    #[test]
    fn constant_one_fixes_only_all_ones() {
        let sds = SdsDefinition::complete_uniform(
            3,
            VertexFunction::constant(3, 1),
            UpdateOrder::identity(3),
        )
        .unwrap();
        assert_eq!(
            fixed_points(&sds, &Budget::unlimited()).unwrap(),
            vec![w("111")]
        );
    }

    #[test]
    fn demo_fixed_points_match_enumeration() {
        let sds = demo_sds();
        let fixed = fixed_points(&sds, &Budget::unlimited()).unwrap();
        for code in 0..16 {
            let s = BinaryWord::from_code(4, code);
            let is_fixed = sds.sds_map(&s).unwrap() == s;
            assert_eq!(fixed.contains(&s), is_fixed);
        }
    }

    #[test]
    fn budget_cap_is_enforced() {
        let n = 25;
        let sds = SdsDefinition::complete_uniform(
            n,
            VertexFunction::constant(n, 0),
            UpdateOrder::identity(n),
        )
        .unwrap();
        assert!(matches!(
            phase_space(&sds, &Budget::unlimited()),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn export_emits_sixteen_nodes_and_edges() {
        let ps = phase_space(&demo_sds(), &Budget::unlimited()).unwrap();
        let dot = ps.to_dot();
        assert_eq!(dot.matches(" -> ").count(), 16);
        assert!(dot.contains("\"0001\" -> \"0111\""));
        let value = ps.to_json();
        assert_eq!(value["n"], 4);
        assert_eq!(value["edges"].as_array().unwrap().len(), 16);
        assert_eq!(value["census"]["2"], 1);
    }

    #[test]
    fn export_labels_are_concatenated_bits() {
        let ps = phase_space(&demo_sds(), &Budget::unlimited()).unwrap();
        assert_eq!(ps.label(0b1011), "1011");
    }
}
