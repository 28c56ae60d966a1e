//! Search-free colorings of the unshifted grids `T(p, q, 0)`.
//!
//! These grids are the tiles every tiling strategy repeats, so producing
//! them without search is what makes the constructive route scale. The
//! dispatch below covers the parameter space with closed-form patterns
//! where divisibility allows, and with transfer routines elsewhere: a
//! column is encoded as a state and a proper coloring of the whole torus
//! is exactly a closed walk in the column-compatibility digraph.

use super::{assignment_is_proper, max_color, Coloring, SolveBudget, Strategy};
use crate::coloring_engine::solver::{solve_exact, SolveResult};
use crate::torus_graph::{TorusGraph, TorusParams};
use crate::Error;

/// Directed graph on small state sets, adjacency kept as a bit matrix.
pub(crate) struct BitGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitGraph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub(crate) fn add_edge(&mut self, u: usize, w: usize) {
        self.rows[u * self.words + w / 64] |= 1u64 << (w % 64);
    }

    pub(crate) fn has_edge(&self, u: usize, w: usize) -> bool {
        self.rows[u * self.words + w / 64] & (1u64 << (w % 64)) != 0
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }
}

fn iter_bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(wi, &word)| {
        let mut bits = word;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

/// Boolean matrix product: c[i][t] = OR over j in a[i] of b[j][t].
fn mat_mul(n: usize, words: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut c = vec![0u64; n * words];
    for i in 0..n {
        let crow = &mut c[i * words..(i + 1) * words];
        for j in iter_bits(&a[i * words..(i + 1) * words]) {
            let brow = &b[j * words..(j + 1) * words];
            for (ct, &bt) in crow.iter_mut().zip(brow) {
                *ct |= bt;
            }
        }
    }
    c
}

/// Boolean power of the adjacency matrix by squaring.
fn mat_power(g: &BitGraph, exp: u64) -> Vec<u64> {
    debug_assert!(exp >= 1);
    let mut result: Option<Vec<u64>> = None;
    let mut base = g.rows.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => mat_mul(g.n, g.words, &r, &base),
            });
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(g.n, g.words, &base, &base);
        }
    }
    result.expect("exponent is at least one")
}

/// Vertices that lie on a closed walk of exactly `len` edges.
fn diagonal_of_power(g: &BitGraph, len: u64) -> Vec<usize> {
    let m = mat_power(g, len);
    (0..g.n)
        .filter(|&v| m[v * g.words + v / 64] & (1u64 << (v % 64)) != 0)
        .collect()
}

/// Reconstructs a closed walk of `len` edges through `v`, as the sequence
/// of the first `len` states (position `len` equals position 0).
fn reconstruct(g: &BitGraph, v: usize, len: usize) -> Option<Vec<u32>> {
    let mut layers: Vec<Vec<u64>> = Vec::with_capacity(len + 1);
    let mut cur = vec![0u64; g.words];
    cur[v / 64] |= 1u64 << (v % 64);
    layers.push(cur.clone());
    for _ in 0..len {
        let mut next = vec![0u64; g.words];
        for u in iter_bits(&cur) {
            for (nt, &rt) in next.iter_mut().zip(g.row(u)) {
                *nt |= rt;
            }
        }
        layers.push(next.clone());
        cur = next;
    }
    if layers[len][v / 64] & (1u64 << (v % 64)) == 0 {
        return None;
    }
    let mut walk = vec![0u32; len];
    let mut target = v;
    for k in (0..len).rev() {
        let u = iter_bits(&layers[k]).find(|&u| g.has_edge(u, target))?;
        walk[k] = u as u32;
        target = u;
    }
    Some(walk)
}

/// A closed walk with exactly `len` edges, if one exists.
///
/// Short walks are settled exactly by matrix powers. Long walks are
/// composed from two short cycles of coprime lengths through a common
/// state: any length beyond their Frobenius bound (at most 19 for lengths
/// up to 6) is a nonnegative combination of the two.
pub(crate) fn closed_walk(g: &BitGraph, len: u64) -> Option<Vec<u32>> {
    if len == 0 || g.n == 0 {
        return None;
    }
    if len <= 64 {
        let v = *diagonal_of_power(g, len).first()?;
        return reconstruct(g, v, len as usize);
    }

    let mut on_cycle: Vec<Vec<usize>> = Vec::new();
    for l in 2..=6u64 {
        on_cycle.push(diagonal_of_power(g, l));
    }
    let lengths = |v: usize| -> Vec<u64> {
        (2..=6u64)
            .filter(|&l| on_cycle[(l - 2) as usize].contains(&v))
            .collect()
    };

    for v in 0..g.n {
        let ls = lengths(v);
        // A single cycle length dividing the walk length suffices.
        for &l in &ls {
            if len % l == 0 {
                let cyc = reconstruct(g, v, l as usize)?;
                let mut walk = Vec::with_capacity(len as usize);
                for _ in 0..len / l {
                    walk.extend_from_slice(&cyc);
                }
                return Some(walk);
            }
        }
        // Otherwise combine two coprime cycle lengths.
        for (ai, &l1) in ls.iter().enumerate() {
            for &l2 in &ls[ai + 1..] {
                if crate::util::gcd(l1, l2) != 1 {
                    continue;
                }
                let b = (0..l1).find(|&b| b * l2 <= len && (len - b * l2) % l1 == 0);
                let Some(b) = b else { continue };
                let a = (len - b * l2) / l1;
                let c1 = reconstruct(g, v, l1 as usize)?;
                let c2 = reconstruct(g, v, l2 as usize)?;
                let mut walk = Vec::with_capacity(len as usize);
                for _ in 0..a {
                    walk.extend_from_slice(&c1);
                }
                for _ in 0..b {
                    walk.extend_from_slice(&c2);
                }
                return Some(walk);
            }
        }
    }
    None
}

/// Diagonal 3-coloring, proper whenever 3 divides both dimensions.
fn diag3(p: usize, q: usize) -> Vec<u8> {
    let mut out = vec![0u8; p * q];
    for i in 0..p {
        for j in 0..q {
            out[i * q + j] = ((j + 2 * i) % 3 + 1) as u8;
        }
    }
    out
}

/// Parity 4-coloring, proper whenever both dimensions are even.
fn parity(p: usize, q: usize) -> Vec<u8> {
    let mut out = vec![0u8; p * q];
    for i in 0..p {
        for j in 0..q {
            out[i * q + j] = (2 * (i % 2) + j % 2 + 1) as u8;
        }
    }
    out
}

/// Per-column offsets stepping by 2 or 3 (mod 4), summing to 0 (mod 4).
///
/// Steps of 2 or 3 keep horizontal and diagonal neighbors apart on a
/// mod-4 ramp. The 2-steps are spread out so that, where the count
/// allows, no two are cyclically adjacent; that extra spacing makes the
/// transposed ramp's columns usable as seeds for the column-shift
/// construction.
pub(crate) fn ramp_deltas(count: usize) -> Vec<u8> {
    debug_assert!(count >= 3);
    let target = (2 * count) % 4;
    let b = (0..=count)
        .rev()
        .find(|b| b % 4 == target)
        .expect("any four consecutive values cover every residue");
    let twos = count - b;
    let mut deltas = vec![3u8; count];
    for k in 0..twos {
        deltas[k * count / twos] = 2;
    }
    deltas
}

/// Ramp coloring for 4 | q: column i colors row j as (j + e_i) mod 4.
fn ramp_cols(p: usize, q: usize) -> Vec<u8> {
    debug_assert_eq!(q % 4, 0);
    let deltas = ramp_deltas(p);
    let mut out = vec![0u8; p * q];
    let mut e = 0usize;
    for i in 0..p {
        for j in 0..q {
            out[i * q + j] = ((j + e) % 4 + 1) as u8;
        }
        e = (e + deltas[i] as usize) % 4;
    }
    out
}

/// Reindexes an assignment of T(a, b, 0) as one of T(b, a, 0).
///
/// Swapping the two coordinates maps the adjacency rules of one grid onto
/// the other, so properness carries over.
fn transposed(src: &[u8], a: usize, b: usize) -> Vec<u8> {
    let mut out = vec![0u8; a * b];
    for i in 0..b {
        for j in 0..a {
            out[i * a + j] = src[j * b + i];
        }
    }
    out
}

/// All proper 4-colorings of the cycle on `q` vertices, plus the
/// compatibility digraph between adjacent columns of T(*, q, 0).
pub(crate) fn column_digraph(q: usize) -> (Vec<Vec<u8>>, BitGraph) {
    let mut states: Vec<Vec<u8>> = Vec::new();
    let mut cur = vec![0u8; q];
    fn gen(cur: &mut Vec<u8>, pos: usize, q: usize, states: &mut Vec<Vec<u8>>) {
        if pos == q {
            if cur[q - 1] != cur[0] {
                states.push(cur.clone());
            }
            return;
        }
        for c in 1..=4u8 {
            if pos > 0 && cur[pos - 1] == c {
                continue;
            }
            cur[pos] = c;
            gen(cur, pos + 1, q, states);
        }
    }
    gen(&mut cur, 0, q, &mut states);

    let mut g = BitGraph::new(states.len());
    for (ui, u) in states.iter().enumerate() {
        for (wi, w) in states.iter().enumerate() {
            let ok = (0..q).all(|j| w[j] != u[j] && w[j] != u[(j + 1) % q]);
            if ok {
                g.add_edge(ui, wi);
            }
        }
    }
    (states, g)
}

/// Transfer coloring with the row cycle as state: complete for any column
/// count once the cycle length is fixed.
fn col_dp(len: u64, q: usize) -> Option<Vec<u8>> {
    let (states, g) = column_digraph(q);
    let walk = closed_walk(&g, len)?;
    let mut out = vec![0u8; len as usize * q];
    for (i, &st) in walk.iter().enumerate() {
        out[i * q..(i + 1) * q].copy_from_slice(&states[st as usize]);
    }
    Some(out)
}

/// Column states for the ramp-plus-band construction: a mod-4 ramp offset
/// `e` on the bottom `H = q - 3` rows and an explicit triple `y` on the top
/// three. Only `H mod 4` enters the constraints. Colors are 0-based here.
pub(crate) fn band_digraph(h_mod: usize) -> (Vec<(u8, [u8; 3])>, BitGraph) {
    let top_ramp = |e: usize| (h_mod + 3 + e) % 4;
    let mut states: Vec<(u8, [u8; 3])> = Vec::new();
    for e in 0..4usize {
        for y0 in 0..4u8 {
            for y1 in 0..4u8 {
                for y2 in 0..4u8 {
                    if y0 == y1 || y1 == y2 {
                        continue;
                    }
                    // Vertical contacts inside one column: ramp top below
                    // the band, band top wrapping to the ramp bottom.
                    if y0 as usize == top_ramp(e) || y2 as usize == e {
                        continue;
                    }
                    states.push((e as u8, [y0, y1, y2]));
                }
            }
        }
    }
    let mut g = BitGraph::new(states.len());
    for (ui, &(e, y)) in states.iter().enumerate() {
        for (wi, &(e2, y2)) in states.iter().enumerate() {
            let delta = (4 + e2 - e) % 4;
            if delta != 2 && delta != 3 {
                continue;
            }
            if (0..3).any(|m| y2[m] == y[m]) {
                continue;
            }
            if y2[0] == y[1] || y2[1] == y[2] {
                continue;
            }
            if y[0] as usize == top_ramp(e2 as usize) {
                continue;
            }
            if y2[2] == e {
                continue;
            }
            g.add_edge(ui, wi);
        }
    }
    (states, g)
}

/// Ramp-plus-band transfer coloring for p, q >= 7.
fn band_dp(p: u64, q: u64) -> Option<Vec<u8>> {
    let h = (q - 3) as usize;
    let (states, g) = band_digraph(h % 4);
    let walk = closed_walk(&g, p)?;
    let q = q as usize;
    let mut out = vec![0u8; p as usize * q];
    for (i, &st) in walk.iter().enumerate() {
        let (e, y) = states[st as usize];
        for j in 0..h {
            out[i * q + j] = ((j + e as usize) % 4 + 1) as u8;
        }
        for m in 0..3 {
            out[i * q + h + m] = y[m] + 1;
        }
    }
    Some(out)
}

/// A search-free proper coloring of T(p, q, 0) with at most 4 colors, or
/// `None` for the few dimension pairs the constructions do not reach.
pub(crate) fn grid_unshifted(p: u64, q: u64) -> Option<Vec<u8>> {
    if p < 3 || q < 3 {
        return None;
    }
    let (pu, qu) = (p as usize, q as usize);
    if p % 3 == 0 && q % 3 == 0 {
        return Some(diag3(pu, qu));
    }
    if p % 2 == 0 && q % 2 == 0 {
        return Some(parity(pu, qu));
    }
    if q % 4 == 0 {
        return Some(ramp_cols(pu, qu));
    }
    if p % 4 == 0 {
        return Some(transposed(&ramp_cols(qu, pu), qu, pu));
    }
    if q <= 6 || p <= 6 {
        return if q <= p {
            col_dp(p, qu)
        } else {
            col_dp(q, pu).map(|a| transposed(&a, qu, pu))
        };
    }
    band_dp(p, q).or_else(|| band_dp(q, p).map(|a| transposed(&a, qu, pu)))
}

/// A verified proper coloring of the unshifted grid T(p, q, 0) with at
/// most 4 colors, constructed without search where possible and completed
/// by the exact solver on small grids otherwise.
pub fn color_unshifted(p: i64, q: i64) -> Result<Coloring, Error> {
    if p < 3 || q < 3 {
        return Err(Error::OutOfDomain("the unshifted grid needs p, q >= 3"));
    }
    let params = TorusParams::new(p, q, 0)?;
    if let Some(assignment) = grid_unshifted(p as u64, q as u64) {
        if !assignment_is_proper(params, &assignment) {
            return Err(Error::BadColoring(
                "unshifted construction produced an improper coloring".into(),
            ));
        }
        let k = max_color(&assignment);
        return Coloring::new(params, assignment, k, Strategy::UnshiftedGrid);
    }
    if params.n() > 4096 {
        return Err(Error::StrategyFailed(
            "construction failed and the grid is too large for exact search".into(),
        ));
    }
    let g = TorusGraph::build(params);
    match solve_exact(&g, 4, &SolveBudget::default())? {
        SolveResult::Found(c) => Ok(c),
        SolveResult::ProvenNone => Err(Error::StrategyFailed(
            "no 4-coloring of this grid exists".into(),
        )),
        SolveResult::BudgetExceeded => Err(Error::BudgetExceeded),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring_engine::verify_coloring;

    fn proper_on_grid(p: u64, q: u64, assignment: &[u8]) -> bool {
        let params = TorusParams::new(p as i64, q as i64, 0).unwrap();
        assignment_is_proper(params, assignment)
    }

    #[test]
    fn closed_walk_on_a_plain_cycle() {
        // 0 -> 1 -> 2 -> 0 and nothing else.
        let mut g = BitGraph::new(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 0);
        assert_eq!(closed_walk(&g, 3), Some(vec![0, 1, 2]));
        assert_eq!(closed_walk(&g, 4), None);
        assert_eq!(closed_walk(&g, 65), None);
        let w = closed_walk(&g, 66).unwrap();
        assert_eq!(w.len(), 66);
        for i in 0..66 {
            assert!(g.has_edge(w[i] as usize, w[(i + 1) % 66] as usize));
        }
    }

    #[test]
    fn closed_walk_composes_coprime_cycles() {
        // A 2-cycle and a 3-cycle sharing vertex 0.
        let mut g = BitGraph::new(4);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        g.add_edge(0, 2);
        g.add_edge(2, 3);
        g.add_edge(3, 0);
        for len in [65u64, 100, 127, 1001] {
            let w = closed_walk(&g, len).expect("2 and 3 are coprime");
            assert_eq!(w.len() as u64, len);
            for i in 0..w.len() {
                assert!(g.has_edge(w[i] as usize, w[(i + 1) % w.len()] as usize));
            }
        }
    }

    #[test]
    fn column_digraph_state_counts() {
        assert_eq!(column_digraph(3).0.len(), 24);
        assert_eq!(column_digraph(5).0.len(), 240);
        assert_eq!(column_digraph(6).0.len(), 732);
    }

    #[test]
    fn column_digraphs_have_coprime_cycles_through_one_state() {
        // Long transfer walks are stitched from short coprime cycles, so
        // freeze their existence for every cycle length the dispatch uses.
        for q in [3usize, 5, 6] {
            let (_, g) = column_digraph(q);
            let found = (0..g.n).any(|v| {
                let ls: Vec<u64> = (2..=6u64)
                    .filter(|&l| {
                        let d = diagonal_of_power(&g, l);
                        d.contains(&v)
                    })
                    .collect();
                ls.iter().any(|&l1| {
                    ls.iter()
                        .any(|&l2| l1 < l2 && crate::util::gcd(l1, l2) == 1)
                })
            });
            assert!(found, "no coprime cycle pair for q = {q}");
        }
    }

    #[test]
    fn band_digraphs_have_coprime_cycles_through_one_state() {
        for h_mod in 0..4usize {
            let (_, g) = band_digraph(h_mod);
            let found = (0..g.n).any(|v| {
                let ls: Vec<u64> = (2..=6u64)
                    .filter(|&l| diagonal_of_power(&g, l).contains(&v))
                    .collect();
                ls.iter().any(|&l1| {
                    ls.iter()
                        .any(|&l2| l1 < l2 && crate::util::gcd(l1, l2) == 1)
                })
            });
            assert!(found, "no coprime cycle pair for H mod 4 = {h_mod}");
        }
    }

    #[test]
    fn ramp_deltas_step_and_balance() {
        for count in 3..=40usize {
            let d = ramp_deltas(count);
            assert_eq!(d.len(), count);
            assert!(d.iter().all(|&x| x == 2 || x == 3));
            let sum: usize = d.iter().map(|&x| x as usize).sum();
            assert_eq!(sum % 4, 0, "count {count}");
            let twos = d.iter().filter(|&&x| x == 2).count();
            if twos * 2 <= count {
                let adjacent = (0..count).any(|i| d[i] == 2 && d[(i + 1) % count] == 2);
                assert!(!adjacent, "count {count} has adjacent 2-steps");
            }
        }
    }

    #[test]
    fn grid_construction_covers_small_dimensions() {
        let mut unreached = Vec::new();
        for p in 3..=20u64 {
            for q in 3..=20u64 {
                match grid_unshifted(p, q) {
                    Some(a) => {
                        assert!(proper_on_grid(p, q, &a), "improper at ({p}, {q})");
                        assert!(max_color(&a) <= 4, "too many colors at ({p}, {q})");
                    }
                    None => unreached.push((p, q)),
                }
            }
        }
        assert!(
            unreached.is_empty(),
            "construction gaps at {unreached:?}"
        );
    }

    #[test]
    fn unshifted_examples() {
        for (p, q) in [(3i64, 3i64), (4, 4), (5, 5)] {
            let c = color_unshifted(p, q).unwrap();
            let g = TorusGraph::build(c.params);
            assert_eq!(verify_coloring(&g, &c), Ok(true));
            assert!(c.k <= 4);
        }
    }

    #[test]
    fn unshifted_rejects_thin_grids() {
        assert!(matches!(
            color_unshifted(2, 5),
            Err(Error::OutOfDomain(_))
        ));
        assert!(matches!(
            color_unshifted(5, 1),
            Err(Error::OutOfDomain(_))
        ));
    }
}
