//! Constructive coloring strategies and the cascade that orders them.
//!
//! Each strategy builds an assignment from structure rather than search,
//! then passes it through the streaming edge check before handing it out.
//! Strategies that apply to one parameterization of a graph are extended
//! to its whole isomorphism class by scanning the twelve lattice views.

use super::solver::{solve_exact, SolveResult};
use super::unshifted::grid_unshifted;
use super::{
    assignment_is_proper, distinct_colors, max_color, Coloring, SolveBudget, Strategy,
};
use crate::chroma_oracle::{classify, is_three_chromatic, Verdict};
use crate::lattice_canon::{
    edge_kinds, lattice_views, normal_circuit_lengths, reduce_point, row_mul, LatticeView,
};
use crate::torus_graph::{TorusGraph, TorusParams};
use crate::util::gcd;
use crate::Error;

/// Carries a coloring of an isomorphic view back to `p` through the view's
/// coordinate map. Properness is preserved because the map is an
/// isomorphism, but callers re-check the result anyway.
fn pull_back(p: TorusParams, view: &LatticeView, view_colors: &[u8]) -> Vec<u8> {
    let s2 = view.params.s() as usize;
    let mut out = vec![0u8; p.n() as usize];
    for (idx, v) in p.vertices().enumerate() {
        let w = row_mul([(v.i - 1) as i64, (v.j - 1) as i64], view.matrix);
        let (iv, jv) = reduce_point(view.params, w[0], w[1]);
        out[idx] = view_colors[iv as usize * s2 + jv as usize];
    }
    out
}

fn checked(p: TorusParams, assignment: Vec<u8>, strategy: Strategy) -> Option<Coloring> {
    if !assignment_is_proper(p, &assignment) {
        return None;
    }
    let k = max_color(&assignment);
    Coloring::new(p, assignment, k, strategy).ok()
}

/// The diagonal pattern `(j - i) mod 3`, the certificate for every
/// 3-chromatic case: it is proper exactly when `s` and `r - t` are both
/// divisible by 3.
pub fn color_three_pattern(p: TorusParams) -> Result<Coloring, Error> {
    if !is_three_chromatic(p)? {
        return Err(Error::StrategyFailed(
            "the divisibility conditions for the 3-color pattern do not hold".into(),
        ));
    }
    let mut assignment = vec![0u8; p.n() as usize];
    for (idx, v) in p.vertices().enumerate() {
        assignment[idx] = ((v.j as i64 - v.i as i64).rem_euclid(3) + 1) as u8;
    }
    checked(p, assignment, Strategy::ThreePattern).ok_or_else(|| {
        Error::BadColoring("the 3-color pattern failed its edge check".into())
    })
}

fn stage_three_pattern(p: TorusParams) -> Option<Coloring> {
    color_three_pattern(p).ok()
}

/// Two-column coloring for views with r = 2 and even s: one column
/// alternates {1, 2}, the other {3, 4}. The wrap shift never matters
/// because the two columns use disjoint color sets.
fn stage_two_column(p: TorusParams) -> Option<Coloring> {
    for view in lattice_views(p) {
        if view.params.r() != 2 || view.params.s() % 2 != 0 {
            continue;
        }
        let s2 = view.params.s() as usize;
        let mut va = vec![0u8; 2 * s2];
        for j in 0..s2 {
            va[j] = 1 + (j % 2) as u8;
            va[s2 + j] = 3 + (j % 2) as u8;
        }
        if let Some(c) = checked(p, pull_back(p, &view, &va), Strategy::TwoColumn) {
            return Some(c);
        }
    }
    None
}

fn t1s2_assignment(s: u64) -> Vec<u8> {
    if s % 4 == 0 {
        return (0..s).map(|j| (j % 4 + 1) as u8).collect();
    }
    if s == 7 {
        return (1..=7).collect();
    }
    if s == 11 {
        return vec![1, 2, 3, 4, 5, 1, 2, 3, 4, 5, 6];
    }
    let v = s % 4;
    let u = (s - 5 * v) / 4;
    let mut out = Vec::with_capacity(s as usize);
    for _ in 0..u {
        out.extend_from_slice(&[1, 2, 3, 4]);
    }
    for _ in 0..v {
        out.extend_from_slice(&[1, 2, 3, 4, 5]);
    }
    out
}

/// Block patterns for the circulant family T(1, s, 2), s >= 7.
///
/// Multiples of 4 take the plain ramp with 4 colors; most other lengths
/// decompose into blocks of 1234 and 12345 with 5 colors; s = 11 needs a
/// sixth color and s = 7 is the complete graph on seven vertices.
pub fn color_t1s2(s: i64) -> Result<Coloring, Error> {
    if s < 7 {
        return Err(Error::OutOfDomain("the block patterns need s >= 7"));
    }
    let params = TorusParams::new(1, s, 2)?;
    let assignment = t1s2_assignment(s as u64);
    checked(params, assignment, Strategy::T1s2)
        .ok_or_else(|| Error::BadColoring("a block pattern failed its edge check".into()))
}

fn stage_t1s2(p: TorusParams) -> Option<Coloring> {
    for view in lattice_views(p) {
        if view.params.r() != 1 || view.params.t() != 2 || view.params.s() < 7 {
            continue;
        }
        let va = t1s2_assignment(view.params.s() as u64);
        if let Some(c) = checked(p, pull_back(p, &view, &va), Strategy::T1s2) {
            return Some(c);
        }
    }
    None
}

/// Repeats a coloring of the tile T(r, m, 0) down the rows: position
/// `(i, j)` takes the tile color at `(i, j mod m)`.
fn tile_assignment(r: usize, s: usize, m: usize, tile: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; r * s];
    for i in 0..r {
        for j in 0..s {
            out[i * s + j] = tile[i * m + j % m];
        }
    }
    out
}

fn tiled_view(p: TorusParams, view: &LatticeView, strategy: Strategy) -> Option<Coloring> {
    let (r2, s2, t2) = (
        view.params.r() as u64,
        view.params.s() as u64,
        view.params.t() as u64,
    );
    if r2 < 3 {
        return None;
    }
    let m = gcd(s2, t2);
    if m < 3 {
        return None;
    }
    let tile = grid_unshifted(r2, m)?;
    let va = tile_assignment(r2 as usize, s2 as usize, m as usize, &tile);
    checked(p, pull_back(p, view, &va), strategy)
}

/// Vertical tiling: when `m = gcd(s, t) >= 3`, a coloring of the tile
/// T(r, m, 0) repeated down the rows stays proper, because the row period
/// divides both `s` and the wrap shift `t`.
pub fn color_by_vertical_tiling(p: TorusParams) -> Result<Coloring, Error> {
    if !edge_kinds(p).is_simple {
        return Err(Error::NotSimple);
    }
    if p.r() < 3 {
        return Err(Error::StrategyFailed("vertical tiling needs r >= 3".into()));
    }
    let m = gcd(p.s() as u64, p.t() as u64);
    if m < 3 {
        return Err(Error::StrategyFailed(
            "vertical tiling needs gcd(s, t) >= 3".into(),
        ));
    }
    if normal_circuit_lengths(p).a != p.s() as u64 {
        return Err(Error::StrategyFailed(
            "vertical tiling applies when s realizes the longest normal circuit".into(),
        ));
    }
    let tile = grid_unshifted(p.r() as u64, m).ok_or_else(|| {
        Error::StrategyFailed(format!("no search-free tile for T({}, {m}, 0)", p.r()))
    })?;
    let va = tile_assignment(p.r() as usize, p.s() as usize, m as usize, &tile);
    checked(p, va, Strategy::VerticalTiling)
        .ok_or_else(|| Error::BadColoring("a tiled assignment failed its edge check".into()))
}

fn stage_vertical_tiling(p: TorusParams) -> Option<Coloring> {
    lattice_views(p)
        .iter()
        .find_map(|view| tiled_view(p, view, Strategy::VerticalTiling))
}

/// Tiling after reparameterization: views whose short direction realizes
/// the minimal normal circuit expose a gcd large enough to tile.
pub fn color_by_reparam_tiling(p: TorusParams) -> Result<Coloring, Error> {
    let lengths = normal_circuit_lengths(p);
    let n = p.n();
    if n / lengths.b < 3 {
        return Err(Error::StrategyFailed(
            "reparameterized tiling needs n/c >= n/b >= 3".into(),
        ));
    }
    for view in lattice_views(p) {
        if view.params.s() as u64 != lengths.c {
            continue;
        }
        if let Some(c) = tiled_view(p, &view, Strategy::ReparamTiling) {
            return Ok(c);
        }
    }
    Err(Error::StrategyFailed(
        "no reparameterized view admitted a tiling".into(),
    ))
}

fn stage_reparam_tiling(p: TorusParams) -> Option<Coloring> {
    color_by_reparam_tiling(p).ok()
}

/// Proper on the row cycle at distances one and two; such a column can be
/// copied sideways with shifts of one or two rows without conflicts.
fn distance2_proper(col: &[u8]) -> bool {
    let s = col.len();
    (0..s).all(|j| col[j] != col[(j + 1) % s] && col[j] != col[(j + 2) % s])
}

fn block_column(block: &[u8], s: usize, col: usize) -> &[u8] {
    &block[col * s..(col + 1) * s]
}

/// Assembles a block of `y` unshifted columns plus `extra` columns that
/// repeat the block's first column shifted by `step` more rows each time.
fn assemble_shifted(
    block: &[u8],
    y: usize,
    s: usize,
    rot: usize,
    extra: usize,
    step: i64,
) -> Vec<u8> {
    let r = y + extra;
    let mut out = vec![0u8; r * s];
    for i in 0..y {
        let src = block_column(block, s, (rot + i) % y);
        out[i * s..(i + 1) * s].copy_from_slice(src);
    }
    let seed = block_column(block, s, rot);
    for m in 0..extra {
        for j in 0..s {
            let shifted = (j as i64 + step * m as i64).rem_euclid(s as i64) as usize;
            out[(y + m) * s + j] = seed[shifted];
        }
    }
    out
}

fn column_shift_variants(p: TorusParams) -> Option<Coloring> {
    let (r, s, t) = (p.r() as u64, p.s() as u64, p.t() as u64);

    if t == 0 {
        let a = grid_unshifted(r, s)?;
        return checked(p, a, Strategy::ColumnShifts);
    }

    let mut attempts: Vec<(u64, u64, i64)> = Vec::new();
    // Upward shifts: t extra columns, each one row lower than the last.
    if r > t && r - t >= 3 {
        attempts.push((r - t, t, -1));
    }
    // Downward shifts by two: k extra columns with 2k + t = 0 (mod s).
    if let Some(k) = (1..=s).find(|k| (2 * k + t) % s == 0) {
        if r > k && r - k >= 3 {
            attempts.push((r - k, k, 2));
        }
    }

    for (y, extra, step) in attempts {
        let Some(block) = grid_unshifted(y, s) else {
            continue;
        };
        for rot in 0..y as usize {
            let seed = block_column(&block, s as usize, rot);
            if !distance2_proper(seed) {
                continue;
            }
            let a = assemble_shifted(&block, y as usize, s as usize, rot, extra as usize, step);
            if let Some(c) = checked(p, a, Strategy::ColumnShifts) {
                return Some(c);
            }
        }
    }
    None
}

/// Column-shift construction: an unshifted block of `r - t` (or `r - k`)
/// columns is completed by shifted copies of one of its columns. The seed
/// column must be proper on the row cycle at distances one and two; every
/// rotation of the block is offered as a seed.
pub fn color_by_column_shifts(p: TorusParams) -> Result<Coloring, Error> {
    if !edge_kinds(p).is_simple {
        return Err(Error::NotSimple);
    }
    let (r, s, t) = (p.r() as i64, p.s() as i64, p.t() as i64);
    if r < 3 || s < 3 {
        return Err(Error::StrategyFailed(
            "column shifts need r >= 3 and s >= 3".into(),
        ));
    }
    if r == 5 || s == 5 {
        return Err(Error::StrategyFailed(
            "column shifts exclude dimension 5, which admits no spaced seed".into(),
        ));
    }
    if !(r >= t + 3 || r > s - (t + 1) / 2) {
        return Err(Error::StrategyFailed(
            "the unshifted block would be thinner than 3 columns".into(),
        ));
    }
    column_shift_variants(p).ok_or_else(|| {
        Error::StrategyFailed("no seed column produced a proper assembly".into())
    })
}

fn stage_column_shifts(p: TorusParams) -> Option<Coloring> {
    color_by_column_shifts(p).ok()
}

/// A verified coloring with exactly the chromatic number of colors.
///
/// Strategies run in a fixed order from cheapest to most general; each
/// result must pass the edge check and use exactly the classified number
/// of colors. The exact solver is the final stage and the only one that
/// can exhaust the budget.
pub fn best_coloring(p: TorusParams, budget: &SolveBudget) -> Result<(u8, Coloring), Error> {
    let k = match classify(p).verdict {
        Verdict::Loops => return Err(Error::HasLoops),
        Verdict::Chromatic(k) => k,
    };

    let stages: [fn(TorusParams) -> Option<Coloring>; 6] = [
        stage_three_pattern,
        stage_two_column,
        stage_t1s2,
        stage_vertical_tiling,
        stage_reparam_tiling,
        stage_column_shifts,
    ];
    for stage in stages {
        if let Some(c) = stage(p) {
            if distinct_colors(&c.assignment) == k && assignment_is_proper(p, &c.assignment) {
                return Ok((k, c));
            }
        }
    }

    if p.n() > 2_000_000 {
        return Err(Error::StrategyFailed(
            "no construction applied and the graph is too large for exact search".into(),
        ));
    }
    let g = TorusGraph::build(p);
    match solve_exact(&g, k, budget)? {
        SolveResult::Found(c) => {
            if c.k != k {
                return Err(Error::StrategyFailed(format!(
                    "search used {} colors where the rule table says {k}",
                    c.k
                )));
            }
            Ok((k, c))
        }
        SolveResult::ProvenNone => Err(Error::StrategyFailed(format!(
            "exhaustive search found no {k}-coloring, contradicting the rule table"
        ))),
        SolveResult::BudgetExceeded => Err(Error::BudgetExceeded),
    }
}
