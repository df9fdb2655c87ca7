//! Dense small-scale linear programming.
//!
//! Everything here is correctness-first: a two-phase tableau simplex with
//! Bland's rule (anti-cycling) for problems with at most a few dozen rows,
//! an independent 2D vertex-enumeration oracle used to cross-check the
//! simplex, and Legendre–Fenchel conjugates of max-affine functions via the
//! dual LP. Infeasible and unbounded outcomes are first-class values of
//! [`ExtReal`], matching the convention that the support function of the
//! empty set is `-inf`.

use std::fmt;

/// Pivot tolerance for the dense simplex.
const EPS: f64 = 1e-9;
/// Iteration cap; Bland's rule terminates, so hitting this is a bug.
const MAX_ITERS: usize = 100_000;

/// A value in `R ∪ {-inf, +inf}`.
///
/// `NegInf` encodes empty-set support / infeasibility, `PosInf` encodes
/// unboundedness. `Finite` never holds a NaN.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn finite(v: f64) -> Self {
        assert!(v.is_finite(), "ExtReal::finite called with {v}");
        ExtReal::Finite(v)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn as_f64(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Multiply by a strictly positive scalar (the infinities are absorbing).
    pub fn scale_pos(self, lambda: f64) -> Self {
        assert!(lambda > 0.0, "scale_pos needs lambda > 0, got {lambda}");
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(lambda * v),
            other => other,
        }
    }

    pub fn neg(self) -> Self {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::Finite(v) => ExtReal::Finite(-v),
        }
    }

    /// Same infinity class, or finite values within `tol` of each other.
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => (a - b).abs() <= tol,
            (a, b) => a == b,
        }
    }

    fn rank(self) -> i8 {
        match self {
            ExtReal::NegInf => -1,
            ExtReal::Finite(_) => 0,
            ExtReal::PosInf => 1,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.partial_cmp(b),
            (a, b) => a.rank().partial_cmp(&b.rank()),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => write!(f, "-inf"),
            ExtReal::PosInf => write!(f, "inf"),
            ExtReal::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl serde::Serialize for ExtReal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => serializer.serialize_f64(*v),
            ExtReal::NegInf => serializer.serialize_str("-inf"),
            ExtReal::PosInf => serializer.serialize_str("inf"),
        }
    }
}

/// H-form polyhedron `{x : <a_i, x> <= b_i for all i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyhedron {
    dim: usize,
    rows: Vec<(Vec<f64>, f64)>,
}

impl Polyhedron {
    pub fn new(dim: usize) -> Self {
        Polyhedron { dim, rows: Vec::new() }
    }

    pub fn with_rows(dim: usize, rows: Vec<(Vec<f64>, f64)>) -> Self {
        for (a, b) in &rows {
            assert_eq!(a.len(), dim, "constraint row dimension mismatch");
            assert!(a.iter().all(|v| v.is_finite()) && b.is_finite(), "NaN/inf in constraint");
        }
        Polyhedron { dim, rows }
    }

    /// The canonical explicitly-empty polyhedron: `0·x <= -1`.
    pub fn empty_marker(dim: usize) -> Self {
        Polyhedron { dim, rows: vec![(vec![0.0; dim], -1.0)] }
    }

    pub fn push(&mut self, a: Vec<f64>, b: f64) {
        assert_eq!(a.len(), self.dim);
        assert!(a.iter().all(|v| v.is_finite()) && b.is_finite());
        self.rows.push((a, b));
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[(Vec<f64>, f64)] {
        &self.rows
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        assert_eq!(x.len(), self.dim);
        self.rows.iter().all(|(a, b)| dot(a, x) <= *b + tol)
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// ---------------------------------------------------------------------------
// Two-phase simplex on standard form: min c·y  s.t.  Ay = b, y >= 0.
// ---------------------------------------------------------------------------

enum Standard {
    Optimal { y: Vec<f64> },
    Unbounded,
    Infeasible,
}

/// Dense tableau simplex with Bland's rule. Rows are pre-scaled so b >= 0.
fn solve_standard(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Standard {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    // Tableau layout: n structural + m artificial columns + rhs.
    let cols = n + m;
    let mut t = vec![vec![0.0; cols + 1]; m];
    for i in 0..m {
        let flip = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = flip * a[i][j];
        }
        t[i][n + i] = 1.0;
        t[i][cols] = flip * b[i];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: minimize the sum of artificials. The objective row stores
    // the negated reduced costs c_B B^-1 A - c, so basic columns sit at 0
    // and the rhs cell tracks the current objective value.
    let mut obj = vec![0.0; cols + 1];
    for i in 0..m {
        for j in 0..=cols {
            obj[j] += t[i][j];
        }
    }
    for i in 0..m {
        obj[n + i] -= 1.0;
    }
    if !run_simplex(&mut t, &mut obj, &mut basis, cols, None) {
        unreachable!("phase 1 is bounded below by 0");
    }
    if obj[cols] > 1e-10 {
        return Standard::Infeasible;
    }
    // Pivot remaining artificials out of the basis where possible.
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| t[i][j].abs() > EPS) {
                pivot(&mut t, &mut obj, &mut basis, i, j, cols);
            }
            // A row that cannot be pivoted is redundant; its artificial stays
            // basic at level zero and never re-enters (blocked below).
        }
    }

    // Phase 2: true objective, artificial columns barred from entering.
    let mut obj2 = vec![0.0; cols + 1];
    for j in 0..n {
        obj2[j] = -c[j];
    }
    for i in 0..m {
        if basis[i] < n {
            let f = obj2[basis[i]];
            if f.abs() > 0.0 {
                for j in 0..=cols {
                    obj2[j] -= f * t[i][j];
                }
            }
        }
    }
    if !run_simplex(&mut t, &mut obj2, &mut basis, cols, Some(n)) {
        return Standard::Unbounded;
    }

    let mut y = vec![0.0; n];
    for i in 0..m {
        if basis[i] < n {
            y[basis[i]] = t[i][cols];
        }
    }
    Standard::Optimal { y }
}

/// Bland's rule iteration. `bar_from` blocks columns >= it from entering.
/// Returns false when the problem is unbounded.
fn run_simplex(
    t: &mut [Vec<f64>],
    obj: &mut [f64],
    basis: &mut [usize],
    cols: usize,
    bar_from: Option<usize>,
) -> bool {
    let limit = bar_from.unwrap_or(cols);
    for _ in 0..MAX_ITERS {
        // Entering: smallest index with a negative reduced cost. The
        // objective row stores -(reduced cost), so look for positive entries.
        let enter = (0..limit).find(|&j| obj[j] > EPS);
        let enter = match enter {
            Some(j) => j,
            None => return true,
        };
        // Leaving: minimum ratio, ties broken by smallest basic variable.
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for (i, row) in t.iter().enumerate() {
            if row[enter] > EPS {
                let ratio = row[cols] / row[enter];
                if ratio < best - EPS
                    || (ratio < best + EPS && leave.map_or(true, |l| basis[i] < basis[l]))
                {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let leave = match leave {
            Some(i) => i,
            None => return false,
        };
        pivot(t, obj, basis, leave, enter, cols);
    }
    panic!("simplex iteration cap exceeded");
}

fn pivot(t: &mut [Vec<f64>], obj: &mut [f64], basis: &mut [usize], r: usize, c: usize, cols: usize) {
    let p = t[r][c];
    for j in 0..=cols {
        t[r][j] /= p;
    }
    t[r][c] = 1.0;
    for i in 0..t.len() {
        if i != r {
            let f = t[i][c];
            if f != 0.0 {
                for j in 0..=cols {
                    t[i][j] -= f * t[r][j];
                }
                t[i][c] = 0.0;
            }
        }
    }
    let f = obj[c];
    if f != 0.0 {
        for j in 0..=cols {
            obj[j] -= f * t[r][j];
        }
        obj[c] = 0.0;
    }
    basis[r] = c;
}

// ---------------------------------------------------------------------------
// Support functions over H-form polyhedra.
// ---------------------------------------------------------------------------

/// `sup { <obj, x> : x in p }` together with a maximizer when finite.
///
/// Free variables are split as `x = u - v`; each row gets a slack. The value
/// is recomputed as a fresh dot product with the recovered point, so the
/// reported optimum is a clean function of the optimal vertex.
pub fn lp_support_point(p: &Polyhedron, obj: &[f64]) -> (ExtReal, Option<Vec<f64>>) {
    assert_eq!(obj.len(), p.dim(), "objective dimension mismatch");
    let m = p.rows().len();
    let d = p.dim();
    // Quick reject for zero rows with a negative bound (explicit empty
    // markers and constant-piece level constraints).
    for (a, b) in p.rows() {
        if a.iter().all(|v| v.abs() <= EPS) && *b < -1e-12 {
            return (ExtReal::NegInf, None);
        }
    }
    if m == 0 {
        // Whole space.
        return if obj.iter().all(|v| v.abs() <= EPS) {
            (ExtReal::Finite(0.0), Some(vec![0.0; d]))
        } else {
            (ExtReal::PosInf, None)
        };
    }

    let n = 2 * d + m;
    let mut c = vec![0.0; n];
    for j in 0..d {
        c[j] = -obj[j]; // maximize obj == minimize -obj
        c[d + j] = obj[j];
    }
    let mut a = vec![vec![0.0; n]; m];
    let mut b = vec![0.0; m];
    for (i, (row, rhs)) in p.rows().iter().enumerate() {
        for j in 0..d {
            a[i][j] = row[j];
            a[i][d + j] = -row[j];
        }
        a[i][2 * d + i] = 1.0;
        b[i] = *rhs;
    }
    match solve_standard(&c, &a, &b) {
        Standard::Infeasible => (ExtReal::NegInf, None),
        Standard::Unbounded => (ExtReal::PosInf, None),
        Standard::Optimal { y } => {
            let x: Vec<f64> = (0..d).map(|j| y[j] - y[d + j]).collect();
            (ExtReal::Finite(dot(obj, &x)), Some(x))
        }
    }
}

/// Support function of `p` in direction `obj`: `-inf` iff `p` is empty,
/// `+inf` iff the LP is unbounded in that direction.
pub fn lp_support(p: &Polyhedron, obj: &[f64]) -> ExtReal {
    lp_support_point(p, obj).0
}

/// Phase-one feasibility test.
pub fn lp_is_empty(p: &Polyhedron) -> bool {
    lp_support(p, &vec![0.0; p.dim()]) == ExtReal::NegInf
}

/// `inf { <obj, x> : x in p }`, i.e. `-sup` along the negated direction.
pub fn lp_minimize(p: &Polyhedron, obj: &[f64]) -> ExtReal {
    let neg: Vec<f64> = obj.iter().map(|v| -v).collect();
    lp_support(p, &neg).neg()
}

// ---------------------------------------------------------------------------
// Independent 2D oracle: vertex and recession-ray enumeration.
// ---------------------------------------------------------------------------

/// Basic feasible points and extreme recession directions of a 2D polyhedron.
#[derive(Clone, Debug, Default)]
pub struct VertexEnum2D {
    pub vertices: Vec<[f64; 2]>,
    pub rays: Vec<[f64; 2]>,
}

/// Enumerate all feasible pairwise constraint intersections plus extreme
/// recession rays. Intended as a cross-oracle for [`lp_support`] at `dim 2`.
pub fn vertex_enum_2d(p: &Polyhedron) -> VertexEnum2D {
    assert_eq!(p.dim(), 2, "vertex_enum_2d needs a 2D polyhedron");
    let rows = p.rows();
    let mut out = VertexEnum2D::default();

    for i in 0..rows.len() {
        for j in (i + 1)..rows.len() {
            let (a1, b1) = (&rows[i].0, rows[i].1);
            let (a2, b2) = (&rows[j].0, rows[j].1);
            let det = a1[0] * a2[1] - a1[1] * a2[0];
            if det.abs() <= EPS {
                continue;
            }
            let x = (b1 * a2[1] - b2 * a1[1]) / det;
            let y = (a1[0] * b2 - a2[0] * b1) / det;
            if p.contains(&[x, y], 1e-7) {
                out.vertices.push([x, y]);
            }
        }
    }

    // Recession cone {r : Ar <= 0}; its extreme rays are perpendicular to
    // active normals.
    let mut candidates: Vec<[f64; 2]> = Vec::new();
    for (a, _) in rows {
        let norm = (a[0] * a[0] + a[1] * a[1]).sqrt();
        if norm <= EPS {
            continue;
        }
        candidates.push([a[1] / norm, -a[0] / norm]);
        candidates.push([-a[1] / norm, a[0] / norm]);
    }
    for r in candidates {
        if rows.iter().all(|(a, _)| dot(a, &r) <= 1e-9) {
            if !out.rays.iter().any(|s| (s[0] - r[0]).abs() <= 1e-9 && (s[1] - r[1]).abs() <= 1e-9) {
                out.rays.push(r);
            }
        }
    }
    out
}

/// Support value derived from vertex enumeration alone (no simplex).
///
/// Rank-deficient constraint matrices (all normals parallel, or no rows) are
/// reduced to an interval problem along the common normal; otherwise a
/// feasible polyhedron has a vertex and the optimum is a vertex maximum
/// unless a recession ray improves without bound.
pub fn support_from_vertices(p: &Polyhedron, obj: &[f64]) -> ExtReal {
    assert_eq!(p.dim(), 2);
    assert_eq!(obj.len(), 2);
    let rows: Vec<(Vec<f64>, f64)> = p
        .rows()
        .iter()
        .filter(|(a, _)| a.iter().any(|v| v.abs() > EPS))
        .cloned()
        .collect();
    for (a, b) in p.rows() {
        if a.iter().all(|v| v.abs() <= EPS) && *b < -EPS {
            return ExtReal::NegInf;
        }
    }

    // Rank of the normal matrix.
    let full_rank = rows.iter().enumerate().any(|(i, (a1, _))| {
        rows.iter()
            .skip(i + 1)
            .any(|(a2, _)| (a1[0] * a2[1] - a1[1] * a2[0]).abs() > EPS)
    });

    if !full_rank {
        // All normals parallel (or none): 1D problem along a unit normal u.
        let u = match rows.first() {
            None => {
                // Whole plane.
                return if obj[0].abs() <= EPS && obj[1].abs() <= EPS {
                    ExtReal::Finite(0.0)
                } else {
                    ExtReal::PosInf
                };
            }
            Some((a, _)) => {
                let n = (a[0] * a[0] + a[1] * a[1]).sqrt();
                [a[0] / n, a[1] / n]
            }
        };
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for (a, b) in &rows {
            let s = dot(a, &u); // a = s*u with |s| = |a|
            if s > 0.0 {
                hi = hi.min(b / s);
            } else {
                lo = lo.max(b / s);
            }
        }
        if lo > hi + EPS {
            return ExtReal::NegInf;
        }
        let perp = [-u[1], u[0]];
        if dot(obj, &perp).abs() > EPS {
            return ExtReal::PosInf;
        }
        let c = dot(obj, &u);
        if c.abs() <= EPS {
            return ExtReal::Finite(0.0);
        }
        let t = if c > 0.0 { hi } else { lo };
        if t.is_infinite() {
            return ExtReal::PosInf;
        }
        return ExtReal::Finite(c * t);
    }

    let ve = vertex_enum_2d(p);
    if ve.vertices.is_empty() {
        // Full-rank normals and no feasible basic point: empty.
        return ExtReal::NegInf;
    }
    if ve.rays.iter().any(|r| dot(obj, r) > 1e-9) {
        return ExtReal::PosInf;
    }
    let best = ve
        .vertices
        .iter()
        .map(|v| dot(obj, v))
        .fold(f64::NEG_INFINITY, f64::max);
    ExtReal::Finite(best)
}

// ---------------------------------------------------------------------------
// Max-affine functions and their conjugates.
// ---------------------------------------------------------------------------

/// `g(x) = max_j <a_j, x> + b_j`, finite everywhere, convex piecewise-linear.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxAffine {
    pieces: Vec<(Vec<f64>, f64)>,
}

impl MaxAffine {
    pub fn new(pieces: Vec<(Vec<f64>, f64)>) -> Self {
        assert!(!pieces.is_empty(), "MaxAffine needs at least one piece");
        let d = pieces[0].0.len();
        for (a, b) in &pieces {
            assert_eq!(a.len(), d);
            assert!(a.iter().all(|v| v.is_finite()) && b.is_finite());
        }
        MaxAffine { pieces }
    }

    /// 1D helper: pieces given as (slope, intercept).
    pub fn new_1d(pieces: &[(f64, f64)]) -> Self {
        MaxAffine::new(pieces.iter().map(|&(a, b)| (vec![a], b)).collect())
    }

    pub fn dim(&self) -> usize {
        self.pieces[0].0.len()
    }

    pub fn pieces(&self) -> &[(Vec<f64>, f64)] {
        &self.pieces
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim());
        self.pieces
            .iter()
            .map(|(a, b)| dot(a, x) + b)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Pointwise sum, expanded over all piece pairs (stays max-affine).
    pub fn add(&self, other: &MaxAffine) -> MaxAffine {
        assert_eq!(self.dim(), other.dim());
        let mut pieces = Vec::with_capacity(self.pieces.len() * other.pieces.len());
        for (a1, b1) in &self.pieces {
            for (a2, b2) in &other.pieces {
                let a: Vec<f64> = a1.iter().zip(a2).map(|(x, y)| x + y).collect();
                pieces.push((a, b1 + b2));
            }
        }
        MaxAffine::new(pieces)
    }

    pub fn scale(&self, lambda: f64) -> MaxAffine {
        assert!(lambda >= 0.0);
        MaxAffine::new(
            self.pieces
                .iter()
                .map(|(a, b)| (a.iter().map(|v| lambda * v).collect(), lambda * b))
                .collect(),
        )
    }

    /// Convex conjugate `g*(y) = sup_x { <y, x> - g(x) }`.
    ///
    /// Solved as the dual LP `min sum lambda_j (-b_j)` subject to
    /// `sum lambda_j a_j = y`, `sum lambda_j = 1`, `lambda >= 0`; the value is
    /// `+inf` exactly when `y` lies outside the convex hull of the slopes.
    pub fn conjugate(&self, y: &[f64]) -> ExtReal {
        assert_eq!(y.len(), self.dim());
        let d = self.dim();
        let k = self.pieces.len();
        let c: Vec<f64> = self.pieces.iter().map(|(_, b)| -b).collect();
        let mut a = vec![vec![0.0; k]; d + 1];
        let mut rhs = vec![0.0; d + 1];
        for (j, (slope, _)) in self.pieces.iter().enumerate() {
            for i in 0..d {
                a[i][j] = slope[i];
            }
            a[d][j] = 1.0;
        }
        rhs[..d].copy_from_slice(y);
        rhs[d] = 1.0;
        match solve_standard(&c, &a, &rhs) {
            Standard::Infeasible => ExtReal::PosInf,
            // The feasible set is a simplex slice, so the dual is never
            // unbounded; keep a conservative mapping for safety.
            Standard::Unbounded => ExtReal::NegInf,
            Standard::Optimal { y: lam } => {
                let v: f64 = lam.iter().zip(&c).map(|(l, cj)| l * cj).sum();
                ExtReal::Finite(v)
            }
        }
    }

    /// Epigraph `{(x, t) : g(x) <= t}` as a polyhedron in `dim + 1` variables.
    /// Used by tests as a second route to the conjugate.
    pub fn epigraph(&self) -> Polyhedron {
        let d = self.dim();
        let mut p = Polyhedron::new(d + 1);
        for (a, b) in &self.pieces {
            let mut row = a.clone();
            row.push(-1.0);
            p.push(row, -b);
        }
        p
    }
}

/// Free-function form of [`MaxAffine::conjugate`].
pub fn maxaffine_conjugate(g: &MaxAffine, y: &[f64]) -> ExtReal {
    g.conjugate(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn interval(lo: f64, hi: f64) -> Polyhedron {
        Polyhedron::with_rows(1, vec![(vec![1.0], hi), (vec![-1.0], -lo)])
    }

    #[test]
    fn support_unit_interval() {
        let p = interval(0.0, 1.0);
        assert_eq!(lp_support(&p, &[1.0]), ExtReal::Finite(1.0));
        assert_eq!(lp_support(&p, &[-1.0]), ExtReal::Finite(0.0));
    }

    #[test]
    fn support_halfline_unbounded() {
        let p = Polyhedron::with_rows(1, vec![(vec![-1.0], 0.0)]); // x >= 0
        assert_eq!(lp_support(&p, &[1.0]), ExtReal::PosInf);
        assert_eq!(lp_support(&p, &[-1.0]), ExtReal::Finite(0.0));
    }

    #[test]
    fn support_empty_is_neg_inf() {
        // x <= -1 and -x <= 0.
        let p = Polyhedron::with_rows(1, vec![(vec![1.0], -1.0), (vec![-1.0], 0.0)]);
        assert_eq!(lp_support(&p, &[1.0]), ExtReal::NegInf);
        assert!(lp_is_empty(&p));
        assert!(!lp_is_empty(&interval(0.0, 1.0)));
    }

    #[test]
    fn unit_square_vertices() {
        let p = Polyhedron::with_rows(
            2,
            vec![
                (vec![1.0, 0.0], 1.0),
                (vec![-1.0, 0.0], 0.0),
                (vec![0.0, 1.0], 1.0),
                (vec![0.0, -1.0], 0.0),
            ],
        );
        let ve = vertex_enum_2d(&p);
        assert_eq!(ve.vertices.len(), 4);
        assert!(ve.rays.is_empty());
    }

    #[test]
    fn quadrant_vertex_and_rays() {
        let p = Polyhedron::with_rows(2, vec![(vec![-1.0, 0.0], 0.0), (vec![0.0, -1.0], 0.0)]);
        let ve = vertex_enum_2d(&p);
        assert_eq!(ve.vertices.len(), 1);
        assert!(ve.vertices[0][0].abs() < 1e-12 && ve.vertices[0][1].abs() < 1e-12);
        assert_eq!(ve.rays.len(), 2);
        assert_eq!(support_from_vertices(&p, &[1.0, 0.0]), ExtReal::PosInf);
        assert_eq!(support_from_vertices(&p, &[-1.0, -1.0]), ExtReal::Finite(0.0));
    }

    #[test]
    fn conjugate_vee() {
        // g = max(-x, 2x): slopes hull [-1, 2], intercepts 0.
        let g = MaxAffine::new_1d(&[(-1.0, 0.0), (2.0, 0.0)]);
        assert_eq!(g.conjugate(&[1.0]), ExtReal::Finite(0.0));
        assert_eq!(g.conjugate(&[3.0]), ExtReal::PosInf);
        assert_eq!(g.conjugate(&[-1.0]), ExtReal::Finite(0.0));
        assert_eq!(g.conjugate(&[-1.5]), ExtReal::PosInf);
    }

    #[test]
    fn conjugate_abs_and_affine() {
        let abs = MaxAffine::new_1d(&[(1.0, 0.0), (-1.0, 0.0)]);
        for y in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            assert_eq!(abs.conjugate(&[y]), ExtReal::Finite(0.0), "y = {y}");
        }
        assert_eq!(abs.conjugate(&[1.5]), ExtReal::PosInf);

        let affine = MaxAffine::new_1d(&[(1.0, 1.0)]); // x + 1
        assert_eq!(affine.conjugate(&[1.0]), ExtReal::Finite(-1.0));
        assert_eq!(affine.conjugate(&[0.9]), ExtReal::PosInf);
    }

    #[test]
    fn conjugate_matches_epigraph_support() {
        // Second algebraic route: g*(y) = sup over epi g of <(y, -1), (x, t)>.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let k = rng.gen_range(1..=4);
            let pieces: Vec<(f64, f64)> = (0..k)
                .map(|_| (rng.gen_range(-4..=4) as f64, rng.gen_range(-3..=3) as f64))
                .collect();
            let g = MaxAffine::new_1d(&pieces);
            let y = rng.gen_range(-5..=5) as f64;
            let via_dual = g.conjugate(&[y]);
            let via_epi = lp_support(&g.epigraph(), &[y, -1.0]);
            assert!(
                via_dual.approx_eq(via_epi, 1e-7),
                "g = {pieces:?}, y = {y}: dual {via_dual} vs epi {via_epi}"
            );
        }
    }

    #[test]
    fn support_positively_homogeneous_and_convex_in_direction() {
        let p = Polyhedron::with_rows(
            2,
            vec![
                (vec![1.0, 0.0], 2.0),
                (vec![0.0, 1.0], 3.0),
                (vec![-1.0, -1.0], 0.0),
            ],
        );
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let w = [rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64];
            for lam in [0.5, 2.0, 4.0] {
                let scaled = [lam * w[0], lam * w[1]];
                let a = lp_support(&p, &scaled);
                let b = lp_support(&p, &w).scale_pos(lam);
                assert!(a.approx_eq(b, 1e-9), "homogeneity at {w:?} lambda {lam}");
            }
            let u = [rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64];
            let mid = [(w[0] + u[0]) / 2.0, (w[1] + u[1]) / 2.0];
            let (sm, sw, su) = (lp_support(&p, &mid), lp_support(&p, &w), lp_support(&p, &u));
            if let (ExtReal::Finite(m), ExtReal::Finite(a), ExtReal::Finite(b)) = (sm, sw, su) {
                assert!(m <= (a + b) / 2.0 + 1e-9, "midpoint convexity at {w:?}, {u:?}");
            }
        }
    }

    #[test]
    fn random_polyhedra_cross_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for case in 0..300 {
            let m = rng.gen_range(1..=6);
            let rows: Vec<(Vec<f64>, f64)> = (0..m)
                .map(|_| {
                    (
                        vec![rng.gen_range(-4..=4) as f64, rng.gen_range(-4..=4) as f64],
                        rng.gen_range(-5..=5) as f64,
                    )
                })
                .collect();
            let p = Polyhedron::with_rows(2, rows);
            let w = [rng.gen_range(-4..=4) as f64, rng.gen_range(-4..=4) as f64];
            let a = lp_support(&p, &w);
            let b = support_from_vertices(&p, &w);
            assert!(a.approx_eq(b, 1e-7), "case {case}: simplex {a} vs vertices {b} on {p:?} w={w:?}");
        }
    }

    #[test]
    fn fenchel_young_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let k = rng.gen_range(1..=5);
            let pieces: Vec<(f64, f64)> = (0..k)
                .map(|_| (rng.gen_range(-4..=4) as f64, rng.gen_range(-3..=3) as f64))
                .collect();
            let g = MaxAffine::new_1d(&pieces);
            let x = rng.gen_range(-50..=50) as f64 / 10.0;
            let y = rng.gen_range(-40..=40) as f64 / 10.0;
            if let ExtReal::Finite(gy) = g.conjugate(&[y]) {
                assert!(y * x <= g.eval(&[x]) + gy + 1e-9);
            }
        }
    }
}
