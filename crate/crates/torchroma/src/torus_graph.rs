//! Construction of the toroidal grid triangulations `T(r, s, t)` and
//! inspection of their edge structure.
//!
//! `T(r, s, t)` has vertex set `{(i, j) : 1 <= i <= r, 1 <= j <= s}`,
//! arranged as `r` columns of `s` vertices. Row arithmetic is cyclic mod `s`.
//! Every vertex has six incident edge endpoints: two vertical (within the
//! column), two horizontal (one per adjacent column), and two diagonal.
//! Crossing from the last column back to the first shifts rows down by `t`,
//! which is what twists the torus. Degenerate parameters produce loops and
//! parallel edges; adjacency is kept as a true multiset throughout.

use crate::Error;
use std::fmt;

/// The parameter triple `(r, s, t)` of a triangulation, validated so that
/// `r >= 1`, `s >= 1`, and `0 <= t < s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusParams {
    r: u32,
    s: u32,
    t: u32,
}

impl TorusParams {
    pub fn new(r: i64, s: i64, t: i64) -> Result<Self, Error> {
        let max = u32::MAX as i64;
        if r >= 1 && s >= 1 && (0..s).contains(&t) && r <= max && s <= max {
            Ok(TorusParams {
                r: r as u32,
                s: s as u32,
                t: t as u32,
            })
        } else {
            Err(Error::InvalidParams { r, s, t })
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Number of vertices, `n = r * s`.
    pub fn n(&self) -> u64 {
        self.r as u64 * self.s as u64
    }

    /// Zero-based storage index of a vertex: `(i - 1) * s + (j - 1)`.
    pub fn index_of(&self, v: Vertex) -> Result<usize, Error> {
        if (1..=self.r).contains(&v.i) && (1..=self.s).contains(&v.j) {
            Ok((v.i as usize - 1) * self.s as usize + (v.j as usize - 1))
        } else {
            Err(Error::VertexOutOfRange {
                i: v.i as i64,
                j: v.j as i64,
                r: self.r,
                s: self.s,
            })
        }
    }

    /// The vertex stored at a zero-based index (inverse of [`index_of`](Self::index_of)).
    pub fn vertex_at(&self, idx: usize) -> Vertex {
        let s = self.s as usize;
        Vertex {
            i: (idx / s) as u32 + 1,
            j: (idx % s) as u32 + 1,
        }
    }

    /// One-based id used by the export formats: `(i - 1) * s + j`.
    pub fn id_of(&self, v: Vertex) -> Result<u64, Error> {
        Ok(self.index_of(v)? as u64 + 1)
    }

    /// Iterates all vertices in storage order (columns outer, rows inner).
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        let (r, s) = (self.r, self.s);
        (1..=r).flat_map(move |i| (1..=s).map(move |j| Vertex { i, j }))
    }
}

impl fmt::Display for TorusParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({}, {}, {})", self.r, self.s, self.t)
    }
}

/// A vertex `(i, j)`: column `i` in `1..=r`, row `j` in `1..=s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub i: u32,
    pub j: u32,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// The six neighbors of `v`, unsorted, directly from the defining rules.
/// Loops show up as `v` itself (twice per loop).
pub(crate) fn raw_neighbors(p: TorusParams, v: Vertex) -> [Vertex; 6] {
    let (r, s, t) = (p.r as i64, p.s as i64, p.t as i64);
    let (i, j) = (v.i as i64, v.j as i64);
    let vx = |ii: i64, jj: i64| Vertex {
        i: ii as u32,
        j: ((jj - 1).rem_euclid(s) + 1) as u32,
    };
    if r == 1 {
        // Single column: horizontal and diagonal edges wrap straight back
        // into the column, offset by t and t + 1.
        [
            vx(1, j + 1),
            vx(1, j - 1),
            vx(1, j + t),
            vx(1, j - t),
            vx(1, j + t + 1),
            vx(1, j - t - 1),
        ]
    } else if i == 1 {
        [
            vx(1, j + 1),
            vx(1, j - 1),
            vx(2, j),
            vx(2, j - 1),
            vx(r, j + t + 1),
            vx(r, j + t),
        ]
    } else if i == r {
        [
            vx(r, j + 1),
            vx(r, j - 1),
            vx(r - 1, j + 1),
            vx(r - 1, j),
            vx(1, j - t),
            vx(1, j - t - 1),
        ]
    } else {
        [
            vx(i, j + 1),
            vx(i, j - 1),
            vx(i + 1, j),
            vx(i - 1, j),
            vx(i + 1, j - 1),
            vx(i - 1, j + 1),
        ]
    }
}

/// The 6-element adjacency multiset of `v` in `T(params)`, sorted.
pub fn neighbors(params: TorusParams, v: Vertex) -> Result<Vec<Vertex>, Error> {
    params.index_of(v)?;
    let mut out = raw_neighbors(params, v).to_vec();
    out.sort_unstable();
    Ok(out)
}

/// A materialized triangulation: one sorted multiset of neighbor indices per
/// vertex. Freshly built graphs always have exactly six endpoints per vertex;
/// [`underlying_simple_graph`](TorusGraph::underlying_simple_graph) returns a
/// graph in the same representation with duplicates removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusGraph {
    params: TorusParams,
    adj: Vec<Vec<u32>>,
}

impl TorusGraph {
    /// Materializes `T(r, s, t)`. Memory is proportional to `6n`.
    pub fn build(params: TorusParams) -> TorusGraph {
        let n = params.n() as usize;
        let mut adj = Vec::with_capacity(n);
        for v in params.vertices() {
            let mut row: Vec<u32> = raw_neighbors(params, v)
                .iter()
                .map(|w| params.index_of(*w).expect("neighbor is in range") as u32)
                .collect();
            row.sort_unstable();
            adj.push(row);
        }
        TorusGraph { params, adj }
    }

    pub fn params(&self) -> TorusParams {
        self.params
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Sorted multiset of neighbor indices of the vertex at storage index
    /// `idx`. A loop contributes the vertex's own index twice.
    pub fn adjacency(&self, idx: usize) -> &[u32] {
        &self.adj[idx]
    }

    /// Every edge once as an index pair `(min, max)`, sorted, with parallel
    /// edges repeated and loops appearing once per loop as `(v, v)`.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.adj.len() * 3);
        for (u, row) in self.adj.iter().enumerate() {
            let u = u as u32;
            let mut loop_endpoints = 0usize;
            for &w in row {
                match w.cmp(&u) {
                    std::cmp::Ordering::Greater => out.push((u, w)),
                    std::cmp::Ordering::Equal => loop_endpoints += 1,
                    std::cmp::Ordering::Less => {}
                }
            }
            debug_assert!(loop_endpoints % 2 == 0, "loop endpoints come in pairs");
            for _ in 0..loop_endpoints / 2 {
                out.push((u, u));
            }
        }
        out.sort_unstable();
        out
    }

    /// Inspects the built adjacency (no arithmetic shortcuts): loops,
    /// parallel pairs, and whether the graph is simple.
    pub fn classify_edges(&self) -> EdgeReport {
        let p = self.params;
        let mut loop_vertices = Vec::new();
        let mut parallel_pairs = Vec::new();
        for (u, row) in self.adj.iter().enumerate() {
            let uu = u as u32;
            if row.iter().any(|&w| w == uu) {
                loop_vertices.push(p.vertex_at(u));
            }
            let mut k = 0;
            while k < row.len() {
                let w = row[k];
                let mut mult = 1;
                while k + mult < row.len() && row[k + mult] == w {
                    mult += 1;
                }
                if w > uu && mult >= 2 {
                    parallel_pairs.push((p.vertex_at(u), p.vertex_at(w as usize)));
                }
                k += mult;
            }
        }
        let has_loops = !loop_vertices.is_empty();
        let has_parallel_edges = !parallel_pairs.is_empty();
        EdgeReport {
            has_loops,
            has_parallel_edges,
            is_simple: !has_loops && !has_parallel_edges,
            loop_vertices,
            parallel_pairs,
        }
    }

    /// The simple graph on the same vertices: each adjacent pair joined once.
    /// Chromatic questions about loopless multigraphs reduce to this graph.
    /// Loops have no simple counterpart, so they are rejected.
    pub fn underlying_simple_graph(&self) -> Result<TorusGraph, Error> {
        let mut adj = Vec::with_capacity(self.adj.len());
        for (u, row) in self.adj.iter().enumerate() {
            if row.iter().any(|&w| w as usize == u) {
                return Err(Error::HasLoops);
            }
            let mut dedup = row.clone();
            dedup.dedup();
            adj.push(dedup);
        }
        Ok(TorusGraph {
            params: self.params,
            adj,
        })
    }
}

/// What the edge multiset looks like.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeReport {
    pub has_loops: bool,
    pub has_parallel_edges: bool,
    pub is_simple: bool,
    /// Vertices carrying at least one loop, sorted.
    pub loop_vertices: Vec<Vertex>,
    /// Distinct vertex pairs joined by two or more edges, sorted.
    pub parallel_pairs: Vec<(Vertex, Vertex)>,
}
