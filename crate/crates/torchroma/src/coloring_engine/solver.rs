//! Exact chromatic search by saturation-ordered backtracking.
//!
//! The solver is the ground truth the constructive strategies are measured
//! against. It works on the underlying simple graph of a multigraph
//! (parallel edges impose the same constraint once) and refuses loops.

use super::{verify_coloring, Coloring, SolveBudget, Strategy};
use crate::torus_graph::TorusGraph;
use crate::Error;
use std::time::Instant;

/// Outcome of a bounded exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    /// A verified proper coloring with at most the requested number of colors.
    Found(Coloring),
    /// Exhaustive proof that no such coloring exists.
    ProvenNone,
    /// The node or time budget ran out before either answer was reached.
    BudgetExceeded,
}

struct Searcher {
    adj: Vec<Vec<u32>>,
    color: Vec<u8>,
    /// neighbor_count[v][c]: how many neighbors of v currently wear color c.
    neighbor_count: Vec<[u16; 8]>,
    /// Bitmask of colors present in v's neighborhood (bit c-1 for color c).
    sat: Vec<u8>,
}

impl Searcher {
    fn assign(&mut self, v: u32, c: u8) {
        self.color[v as usize] = c;
        let bit = 1u8 << (c - 1);
        let row = std::mem::take(&mut self.adj[v as usize]);
        for &w in &row {
            let cnt = &mut self.neighbor_count[w as usize][c as usize];
            *cnt += 1;
            if *cnt == 1 {
                self.sat[w as usize] |= bit;
            }
        }
        self.adj[v as usize] = row;
    }

    fn unassign(&mut self, v: u32, c: u8) {
        self.color[v as usize] = 0;
        let bit = 1u8 << (c - 1);
        let row = std::mem::take(&mut self.adj[v as usize]);
        for &w in &row {
            let cnt = &mut self.neighbor_count[w as usize][c as usize];
            *cnt -= 1;
            if *cnt == 0 {
                self.sat[w as usize] &= !bit;
            }
        }
        self.adj[v as usize] = row;
    }

    /// Most saturated uncolored vertex, ties broken by degree then by index.
    fn pick(&self) -> Option<u32> {
        let mut best: Option<(u32, usize, u32)> = None;
        for v in 0..self.color.len() {
            if self.color[v] != 0 {
                continue;
            }
            let sat = self.sat[v].count_ones();
            let deg = self.adj[v].len();
            let improves = match best {
                None => true,
                Some((bs, bd, _)) => sat > bs || (sat == bs && deg > bd),
            };
            if improves {
                best = Some((sat, deg, v as u32));
            }
        }
        best.map(|(_, _, v)| v)
    }
}

fn deduped_adjacency(g: &TorusGraph) -> Result<Vec<Vec<u32>>, Error> {
    let mut adj = Vec::with_capacity(g.vertex_count());
    for u in 0..g.vertex_count() {
        let mut row: Vec<u32> = g.adjacency(u).to_vec();
        row.sort_unstable();
        row.dedup();
        if row.binary_search(&(u as u32)).is_ok() {
            return Err(Error::HasLoops);
        }
        adj.push(row);
    }
    Ok(adj)
}

/// Size of a greedily grown clique, a cheap lower bound on the chromatic
/// number used to skip hopeless color counts.
fn clique_lower_bound(adj: &[Vec<u32>]) -> u8 {
    let mut best = if adj.is_empty() { 0 } else { 1 };
    for u in 0..adj.len() as u32 {
        let mut clique = vec![u];
        for &w in &adj[u as usize] {
            if clique
                .iter()
                .all(|&x| adj[x as usize].binary_search(&w).is_ok())
            {
                clique.push(w);
            }
        }
        best = best.max(clique.len());
    }
    best.min(7) as u8
}

/// Searches for a proper coloring of `g` with at most `k` colors.
///
/// Complete within the budget: `Found` carries a verified certificate,
/// `ProvenNone` means the whole (symmetry-reduced) tree was exhausted.
/// Symmetry is broken by introducing new colors in ascending order, so the
/// first vertex always receives color 1.
pub fn solve_exact(g: &TorusGraph, k: u8, budget: &SolveBudget) -> Result<SolveResult, Error> {
    let adj = deduped_adjacency(g)?;
    let n = adj.len();
    if k == 0 {
        return Ok(SolveResult::ProvenNone);
    }
    // Degrees are at most 6, so 7 colors always suffice and larger requests
    // never change the answer.
    let k_eff = k.min(7);

    let mut s = Searcher {
        adj,
        color: vec![0; n],
        neighbor_count: vec![[0; 8]; n],
        sat: vec![0; n],
    };

    struct Frame {
        v: u32,
        tried: u8,
        saved_max: u8,
    }

    let mut stack: Vec<Frame> = Vec::with_capacity(n);
    let mut max_used: u8 = 0;
    let mut nodes: u64 = 0;
    let started = Instant::now();

    let first = s.pick().expect("graphs have at least one vertex");
    stack.push(Frame {
        v: first,
        tried: 0,
        saved_max: 0,
    });

    loop {
        let (v, tried, saved_max) = {
            let f = stack.last().expect("loop keeps the stack nonempty");
            (f.v, f.tried, f.saved_max)
        };
        debug_assert_eq!(max_used, saved_max);

        let limit = (max_used + 1).min(k_eff);
        let mut chosen = 0u8;
        for c in tried + 1..=limit {
            if s.sat[v as usize] & (1 << (c - 1)) == 0 {
                chosen = c;
                break;
            }
        }

        if chosen == 0 {
            stack.pop();
            match stack.last() {
                None => return Ok(SolveResult::ProvenNone),
                Some(f) => {
                    let (pv, pc, pmax) = (f.v, f.tried, f.saved_max);
                    s.unassign(pv, pc);
                    max_used = pmax;
                }
            }
            continue;
        }

        nodes += 1;
        if nodes > budget.node_limit {
            return Ok(SolveResult::BudgetExceeded);
        }
        if nodes % 1024 == 0 && started.elapsed() > budget.time_limit {
            return Ok(SolveResult::BudgetExceeded);
        }

        s.assign(v, chosen);
        {
            let f = stack.last_mut().unwrap();
            f.tried = chosen;
        }
        max_used = max_used.max(chosen);

        if stack.len() == n {
            let coloring = Coloring::new(g.params(), s.color.clone(), max_used, Strategy::ExactSearch)?;
            return match verify_coloring(g, &coloring)? {
                true => Ok(SolveResult::Found(coloring)),
                false => Err(Error::BadColoring(
                    "search produced an improper coloring".into(),
                )),
            };
        }

        let next = s.pick().expect("uncolored vertices remain");
        stack.push(Frame {
            v: next,
            tried: 0,
            saved_max: max_used,
        });
    }
}

/// The exact chromatic number of `g`, found by trying 3 up through 7 colors.
///
/// Loop-free torus triangulations always contain a triangle and are
/// 7-colorable by greed on degree 6, so the answer lies in 3..=7.
pub fn chromatic_number_exact(g: &TorusGraph, budget: &SolveBudget) -> Result<u8, Error> {
    let adj = deduped_adjacency(g)?;
    let start = clique_lower_bound(&adj).max(3);
    for k in start..=7 {
        match solve_exact(g, k, budget)? {
            SolveResult::Found(c) => return Ok(c.k),
            SolveResult::ProvenNone => continue,
            SolveResult::BudgetExceeded => return Err(Error::BudgetExceeded),
        }
    }
    Err(Error::StrategyFailed(
        "no coloring with 7 colors found, which cannot happen for a loop-free triangulation"
            .into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring_engine::distinct_colors;
    use crate::torus_graph::TorusParams;
    use proptest::prelude::*;

    fn graph(r: i64, s: i64, t: i64) -> TorusGraph {
        TorusGraph::build(TorusParams::new(r, s, t).unwrap())
    }

    fn default_budget() -> SolveBudget {
        SolveBudget::default()
    }

    #[test]
    fn complete_graph_on_seven_needs_seven_colors() {
        let g = graph(1, 7, 2);
        assert_eq!(
            solve_exact(&g, 6, &default_budget()).unwrap(),
            SolveResult::ProvenNone
        );
        match solve_exact(&g, 7, &default_budget()).unwrap() {
            SolveResult::Found(c) => {
                assert_eq!(c.k, 7);
                assert_eq!(verify_coloring(&g, &c), Ok(true));
            }
            other => panic!("expected a 7-coloring, got {other:?}"),
        }
    }

    #[test]
    fn fifteen_vertex_five_chromatic_witness() {
        let g = graph(3, 5, 3);
        assert_eq!(
            solve_exact(&g, 4, &default_budget()).unwrap(),
            SolveResult::ProvenNone
        );
        match solve_exact(&g, 5, &default_budget()).unwrap() {
            SolveResult::Found(c) => assert_eq!(verify_coloring(&g, &c), Ok(true)),
            other => panic!("expected a 5-coloring, got {other:?}"),
        }
    }

    #[test]
    fn three_colorable_case_found_directly() {
        let g = graph(3, 3, 0);
        match solve_exact(&g, 3, &default_budget()).unwrap() {
            SolveResult::Found(c) => {
                assert_eq!(c.k, 3);
                assert_eq!(verify_coloring(&g, &c), Ok(true));
            }
            other => panic!("expected a 3-coloring, got {other:?}"),
        }
    }

    #[test]
    fn chromatic_number_examples() {
        assert_eq!(
            chromatic_number_exact(&graph(1, 11, 2), &default_budget()).unwrap(),
            6
        );
        assert_eq!(
            chromatic_number_exact(&graph(2, 6, 0), &default_budget()).unwrap(),
            4
        );
        // Parallel edges do not change the answer.
        assert_eq!(
            chromatic_number_exact(&graph(1, 9, 1), &default_budget()).unwrap(),
            3
        );
    }

    #[test]
    fn loops_are_rejected() {
        let g = graph(1, 3, 0);
        assert!(matches!(
            solve_exact(&g, 4, &default_budget()),
            Err(Error::HasLoops)
        ));
        assert!(matches!(
            chromatic_number_exact(&g, &default_budget()),
            Err(Error::HasLoops)
        ));
    }

    #[test]
    fn tiny_node_budget_reports_exhaustion() {
        let g = graph(1, 11, 2);
        let budget = SolveBudget {
            node_limit: 1,
            time_limit: std::time::Duration::from_secs(300),
        };
        assert_eq!(
            solve_exact(&g, 4, &budget).unwrap(),
            SolveResult::BudgetExceeded
        );
    }

    #[test]
    fn proven_none_is_monotone_downward() {
        // No 4-coloring of T(3,5,3) exists, so no 3-coloring can either.
        let g = graph(3, 5, 3);
        assert_eq!(
            solve_exact(&g, 3, &default_budget()).unwrap(),
            SolveResult::ProvenNone
        );
    }

    #[test]
    fn zero_colors_never_suffice() {
        let g = graph(2, 2, 0);
        assert_eq!(
            solve_exact(&g, 0, &default_budget()).unwrap(),
            SolveResult::ProvenNone
        );
    }

    #[test]
    fn clique_bound_sees_complete_graphs() {
        let adj7 = deduped_adjacency(&graph(1, 7, 2)).unwrap();
        assert_eq!(clique_lower_bound(&adj7), 7);
        let adj6 = deduped_adjacency(&graph(2, 3, 1)).unwrap();
        assert_eq!(clique_lower_bound(&adj6), 6);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn found_colorings_verify_and_use_ascending_colors(r in 1i64..=4, s in 2i64..=6, t in 0i64..=5) {
            prop_assume!(t < s);
            let params = TorusParams::new(r, s, t).unwrap();
            prop_assume!(!crate::lattice_canon::edge_kinds(params).has_loops);
            let g = TorusGraph::build(params);
            match solve_exact(&g, 7, &default_budget()).unwrap() {
                SolveResult::Found(c) => {
                    prop_assert_eq!(verify_coloring(&g, &c), Ok(true));
                    // Ascending introduction means every color up to k appears.
                    prop_assert_eq!(distinct_colors(&c.assignment), c.k);
                    prop_assert!(c.k <= 7);
                }
                other => return Err(TestCaseError::fail(format!("expected Found, got {other:?}"))),
            }
        }
    }
}
