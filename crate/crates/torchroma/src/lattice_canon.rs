//! The integer-lattice model behind the triangulations.
//!
//! `T(r, s, t)` is the quotient of the plane triangular lattice by the
//! sublattice generated by the row vectors `(r, t)` and `(0, s)`: points are
//! `(column, row)` pairs, the six neighbor steps are `(0, ±1)`, `(±1, 0)`,
//! and `±(1, -1)`, and two points joined by a sublattice vector are the same
//! vertex. Everything here follows from that model:
//!
//! * circuit lengths in the three step directions,
//! * the 12 unimodular maps preserving the step set, which generate all
//!   parameter triples describing the same graph,
//! * Hermite normal form to read a unique `(r, s, t)` back off a sublattice,
//! * canonical forms, isomorphism testing, reparameterization, and
//!   enumeration of isomorphism classes by order,
//! * loop and parallel-edge detection by pure lattice arithmetic.

use crate::torus_graph::{TorusParams, Vertex};
use crate::util::gcd;
use crate::Error;
use std::fmt;

/// A 2x2 integer matrix whose rows generate a sublattice of the plane.
/// Also used for the symmetry maps themselves (acting on row vectors from
/// the right).
pub type LatticeBasis = [[i64; 2]; 2];

const IDENTITY: LatticeBasis = [[1, 0], [0, 1]];

/// Order-6 rotation of the step set: vertical to horizontal to diagonal to
/// reversed vertical.
const ROT: LatticeBasis = [[1, -1], [1, 0]];

/// Reflection swapping the vertical and horizontal steps (and reversing the
/// diagonal one).
const FLIP: LatticeBasis = [[0, 1], [1, 0]];

/// The six neighbor steps of the triangular lattice.
pub(crate) const STEPS: [[i64; 2]; 6] = [[0, 1], [0, -1], [1, 0], [-1, 0], [1, -1], [-1, 1]];

fn mat_mul(a: LatticeBasis, b: LatticeBasis) -> LatticeBasis {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

pub(crate) fn row_mul(v: [i64; 2], m: LatticeBasis) -> [i64; 2] {
    [
        v[0] * m[0][0] + v[1] * m[1][0],
        v[0] * m[0][1] + v[1] * m[1][1],
    ]
}

fn det(b: LatticeBasis) -> i64 {
    b[0][0] * b[1][1] - b[0][1] * b[1][0]
}

/// The defining basis of `T(r, s, t)`: rows `(r, t)` and `(0, s)`.
pub fn basis_of(p: TorusParams) -> LatticeBasis {
    [[p.r() as i64, p.t() as i64], [0, p.s() as i64]]
}

/// The three normal-circuit lengths sorted descending (`a >= b >= c`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalLengths {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl NormalLengths {
    pub fn as_array(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }
}

impl fmt::Display for NormalLengths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// The three step directions a normal circuit can follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Vertical,
    Horizontal,
    Diagonal,
}

/// Circuit lengths in the fixed order (vertical, horizontal, diagonal):
/// `s`, `n/gcd(s, t)`, `n/gcd(s, r+t)`.
pub fn direction_lengths(p: TorusParams) -> [u64; 3] {
    let n = p.n();
    let (r, s, t) = (p.r() as u64, p.s() as u64, p.t() as u64);
    [s, n / gcd(s, t), n / gcd(s, r + t)]
}

/// The normal-circuit lengths of `T(p)`, sorted descending.
pub fn normal_circuit_lengths(p: TorusParams) -> NormalLengths {
    let mut l = direction_lengths(p);
    l.sort_unstable_by(|x, y| y.cmp(x));
    NormalLengths {
        a: l[0],
        b: l[1],
        c: l[2],
    }
}

fn step(p: TorusParams, v: Vertex, d: Direction) -> Vertex {
    let (r, s, t) = (p.r(), p.s() as i64, p.t() as i64);
    let wrap = |j: i64| Vertex {
        i: 0,
        j: ((j - 1).rem_euclid(s) + 1) as u32,
    };
    let j = v.j as i64;
    match d {
        Direction::Vertical => Vertex {
            i: v.i,
            ..wrap(j + 1)
        },
        Direction::Horizontal => {
            if v.i < r {
                Vertex { i: v.i + 1, j: v.j }
            } else {
                Vertex { i: 1, ..wrap(j - t) }
            }
        }
        Direction::Diagonal => {
            if v.i < r {
                Vertex {
                    i: v.i + 1,
                    ..wrap(j - 1)
                }
            } else {
                Vertex {
                    i: 1,
                    ..wrap(j - t - 1)
                }
            }
        }
    }
}

fn walk_length(p: TorusParams, d: Direction) -> u64 {
    let start = Vertex { i: 1, j: 1 };
    let mut v = step(p, start, d);
    let mut len = 1u64;
    while v != start {
        v = step(p, v, d);
        len += 1;
    }
    len
}

/// Circuit lengths in the fixed order (vertical, horizontal, diagonal),
/// measured by walking the adjacency rules from `(1, 1)` until the walk
/// closes. Runs in time proportional to the circuit lengths; exists to
/// cross-check [`direction_lengths`].
pub fn walk_lengths(p: TorusParams) -> [u64; 3] {
    [
        Direction::Vertical,
        Direction::Horizontal,
        Direction::Diagonal,
    ]
    .map(|d| walk_length(p, d))
}

/// The 12 unimodular matrices that permute the neighbor-step set: the six
/// powers of the order-6 rotation and their compositions with a reflection.
/// This group is exactly the stabilizer of the step set, so acting on a
/// sublattice basis by any member yields an isomorphic triangulation.
pub fn symmetry_group() -> [LatticeBasis; 12] {
    let mut out = [IDENTITY; 12];
    let mut m = IDENTITY;
    for k in 0..6 {
        out[k] = m;
        out[k + 6] = mat_mul(m, FLIP);
        m = mat_mul(m, ROT);
    }
    out
}

/// The images of a sublattice basis under the 12 symmetries. Each generates
/// a triangulation isomorphic to the input's.
pub fn symmetry_images(basis: LatticeBasis) -> [LatticeBasis; 12] {
    symmetry_group().map(|m| mat_mul(basis, m))
}

/// Reads the unique parameter triple `(r, s, t)` with `r*s = |det|` and
/// `0 <= t < s` off a nonsingular basis by row reduction (Hermite normal
/// form). Row operations preserve the generated sublattice.
pub fn hnf_params(basis: LatticeBasis) -> Result<TorusParams, Error> {
    if det(basis) == 0 {
        return Err(Error::SingularBasis);
    }
    let [mut u, mut v] = basis;
    while v[0] != 0 {
        let q = u[0] / v[0];
        u = [u[0] - q * v[0], u[1] - q * v[1]];
        std::mem::swap(&mut u, &mut v);
    }
    if u[0] < 0 {
        u = [-u[0], -u[1]];
    }
    let s = v[1].abs();
    TorusParams::new(u[0], s, u[1].rem_euclid(s))
}

/// The least parameter triple describing the same triangulation, minimizing
/// `(r, t)` lexicographically over the 12 symmetry images. All images share
/// `n = r*s`, so the derived `(r, s, t)` ordering coincides with `(r, t)`.
/// Idempotent, and constant on each symmetry orbit.
pub fn canonical_form(p: TorusParams) -> TorusParams {
    symmetry_images(basis_of(p))
        .iter()
        .map(|&b| hnf_params(b).expect("symmetry images keep the determinant nonzero"))
        .min()
        .expect("the group has twelve elements")
}

/// Whether two parameter triples describe isomorphic triangulations.
pub fn are_isomorphic(p1: TorusParams, p2: TorusParams) -> bool {
    canonical_form(p1) == canonical_form(p2)
}

/// An equivalent parameter triple in which the chosen circuit direction
/// becomes the vertical one, so `s'` is that circuit's length and
/// `r' = n/s'`. The matrix is chosen so the requested direction's step maps
/// to a vertical step; the new vertical circuit length is then the order of
/// the old step in the quotient.
pub fn reparameterize(p: TorusParams, direction: Direction) -> TorusParams {
    let m = match direction {
        Direction::Vertical => IDENTITY,
        Direction::Horizontal => FLIP,
        Direction::Diagonal => ROT,
    };
    hnf_params(mat_mul(basis_of(p), m)).expect("unimodular image keeps the determinant")
}

/// All isomorphism classes of triangulations with exactly `n` vertices, as
/// sorted canonical forms. Every `T(r, s, t)` with `r*s = n` reduces to one
/// of these.
pub fn enumerate_order(n: u64) -> Vec<TorusParams> {
    let mut classes = std::collections::BTreeSet::new();
    for r in 1..=n {
        if n % r != 0 {
            continue;
        }
        let s = n / r;
        for t in 0..s {
            let p = TorusParams::new(r as i64, s as i64, t as i64)
                .expect("divisor triples are valid parameters");
            classes.insert(canonical_form(p));
        }
    }
    classes.into_iter().collect()
}

/// Loop and parallel-edge presence, decided arithmetically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeKinds {
    pub has_loops: bool,
    pub has_parallel_edges: bool,
    pub is_simple: bool,
}

/// Whether `(x, y)` lies in the sublattice generated by `(r, t)` and `(0, s)`.
pub(crate) fn in_lattice(p: TorusParams, x: i64, y: i64) -> bool {
    let (r, s, t) = (p.r() as i64, p.s() as i64, p.t() as i64);
    x.rem_euclid(r) == 0 && (y - (x / r) * t).rem_euclid(s) == 0
}

/// Detects loops and parallel edges without materializing the graph, in
/// constant time. A step is a loop exactly when it lies in the sublattice;
/// two distinct steps land on the same neighbor (a parallel edge) exactly
/// when their difference lies in the sublattice while the steps themselves
/// do not. Agrees with `TorusGraph::classify_edges` on the built graph.
pub fn edge_kinds(p: TorusParams) -> EdgeKinds {
    let is_loop = |w: [i64; 2]| in_lattice(p, w[0], w[1]);
    let has_loops = STEPS.iter().any(|&w| is_loop(w));
    let mut has_parallel_edges = false;
    for (k, &u) in STEPS.iter().enumerate() {
        for &v in &STEPS[k + 1..] {
            if !is_loop(u) && in_lattice(p, u[0] - v[0], u[1] - v[1]) {
                has_parallel_edges = true;
            }
        }
    }
    EdgeKinds {
        has_loops,
        has_parallel_edges,
        is_simple: !has_loops && !has_parallel_edges,
    }
}

/// Reduces an arbitrary lattice point to its representative in the
/// fundamental domain: 0-based `(column, row)` with `column < r`, `row < s`.
pub(crate) fn reduce_point(p: TorusParams, x: i64, y: i64) -> (u32, u32) {
    let (r, s, t) = (p.r() as i64, p.s() as i64, p.t() as i64);
    let i = x.rem_euclid(r);
    let k = (x - i) / r;
    let j = (y - k * t).rem_euclid(s);
    (i as u32, j as u32)
}

/// One symmetry image of a triangulation: the transforming matrix together
/// with the parameters of the transformed sublattice. Mapping a 0-based
/// vertex `(i, j)` of the original through `(i, j) * matrix` and reducing
/// with [`reduce_point`] lands on the corresponding vertex of `params`; the
/// map preserves adjacency with multiplicity.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LatticeView {
    pub matrix: LatticeBasis,
    pub params: TorusParams,
}

/// The 12 views of `p`, one per symmetry (duplicated parameter triples are
/// kept; callers scan them all).
pub(crate) fn lattice_views(p: TorusParams) -> Vec<LatticeView> {
    symmetry_group()
        .iter()
        .map(|&m| LatticeView {
            matrix: m,
            params: hnf_params(mat_mul(basis_of(p), m)).expect("unimodular image"),
        })
        .collect()
}
