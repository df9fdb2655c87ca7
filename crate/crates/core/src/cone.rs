//! Polyhedral ordering cones and the vector preorders they induce.
//!
//! A cone is kept in both V-form (generators) and H-form (normals); the
//! H-form is the source of truth for membership, the V-form for sampling.
//! Strict relations come in two flavours: `z > 0` via `K \ (-K)` and via the
//! topological interior of `K`. Direction grids discretize the polar cone
//! for all scalarized computations downstream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linprog::dot;

#[derive(Debug, Error, PartialEq)]
pub enum ConeError {
    #[error("cone dimension {0} not supported (must be 1..=3)")]
    BadDimension(usize),
    #[error("cone has no H-form constraints")]
    NoNormals,
    #[error("V-form and H-form disagree: {0}")]
    FormMismatch(String),
    #[error("cone degenerates to a linear subspace (strict part empty)")]
    DegenerateCone,
    #[error("interior of the cone is empty")]
    EmptyInterior,
    #[error("polar cone spans more than a half-space; no angular sweep exists")]
    PolarNotPointed,
    #[error("direction grid needs at least {0} directions in dimension {1}")]
    GridTooSmall(usize, usize),
}

/// Strict-relation flavour: `K \ (-K)` or the interior of `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrictMode {
    HatK,
    Interior,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeKind {
    Axis,
    General,
}

/// Polyhedral ordering cone `K = {z : <g_i, z> >= 0 for all normals g_i}`.
#[derive(Clone, Debug)]
pub struct PolyCone {
    dim: usize,
    generators: Vec<Vec<f64>>,
    normals: Vec<Vec<f64>>,
    kind: ConeKind,
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

fn unit(v: &[f64]) -> Vec<f64> {
    let n = norm(v);
    assert!(n > 0.0);
    v.iter().map(|x| x / n).collect()
}

fn cross3(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Rank of a small row set, by Gaussian elimination with partial pivoting.
fn rank(rows: &[Vec<f64>], dim: usize, tol: f64) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let mut r = 0;
    for col in 0..dim {
        let piv = (r..m.len()).max_by(|&i, &j| {
            m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap()
        });
        let piv = match piv {
            Some(i) if m[i][col].abs() > tol => i,
            _ => continue,
        };
        m.swap(r, piv);
        for i in (r + 1)..m.len() {
            let f = m[i][col] / m[r][col];
            for c in col..dim {
                m[i][c] -= f * m[r][c];
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

impl PolyCone {
    /// The axis cone `R^n_+`.
    pub fn axis(dim: usize) -> Self {
        assert!((1..=3).contains(&dim), "axis cone dimension must be 1..=3");
        let mut generators = Vec::new();
        for i in 0..dim {
            let mut e = vec![0.0; dim];
            e[i] = 1.0;
            generators.push(e);
        }
        PolyCone { dim, generators: generators.clone(), normals: generators, kind: ConeKind::Axis }
    }

    /// Build a cone from H-form normals, deriving a positively spanning
    /// V-form. Supported for `dim <= 3`; the cone must not be a linear
    /// subspace.
    pub fn from_normals(normals: Vec<Vec<f64>>) -> Result<Self, ConeError> {
        if normals.is_empty() {
            return Err(ConeError::NoNormals);
        }
        let dim = normals[0].len();
        if !(1..=3).contains(&dim) {
            return Err(ConeError::BadDimension(dim));
        }
        for g in &normals {
            if g.len() != dim || norm(g) <= 1e-12 {
                return Err(ConeError::FormMismatch("zero or ill-sized normal".into()));
            }
        }
        let generators = derive_generators(&normals, dim)?;
        let cone = PolyCone { dim, generators, normals, kind: ConeKind::General };
        if !cone.hat_nonempty() {
            return Err(ConeError::DegenerateCone);
        }
        cone.cross_check(64)?;
        Ok(cone)
    }

    /// Build a cone from both forms, cross-checking them on the generators
    /// and on sampled rays.
    pub fn from_generators_and_normals(
        generators: Vec<Vec<f64>>,
        normals: Vec<Vec<f64>>,
    ) -> Result<Self, ConeError> {
        if normals.is_empty() {
            return Err(ConeError::NoNormals);
        }
        let dim = normals[0].len();
        if !(1..=3).contains(&dim) {
            return Err(ConeError::BadDimension(dim));
        }
        let cone = PolyCone { dim, generators, normals, kind: ConeKind::General };
        cone.cross_check(64)?;
        Ok(cone)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> ConeKind {
        self.kind
    }

    pub fn generators(&self) -> &[Vec<f64>] {
        &self.generators
    }

    pub fn normals(&self) -> &[Vec<f64>] {
        &self.normals
    }

    /// Every generator must satisfy every H-constraint, and sampled positive
    /// combinations of generators must stay inside the H-form cone.
    fn cross_check(&self, samples: usize) -> Result<(), ConeError> {
        for g in &self.generators {
            if !self.contains(g, 1e-9) {
                return Err(ConeError::FormMismatch(format!(
                    "generator {g:?} violates an H-form constraint"
                )));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..samples {
            let mut z = vec![0.0; self.dim];
            for g in &self.generators {
                let w: f64 = rng.gen_range(0.0..1.0);
                for (zi, gi) in z.iter_mut().zip(g) {
                    *zi += w * gi;
                }
            }
            if !self.contains(&z, 1e-9) {
                return Err(ConeError::FormMismatch(format!(
                    "sampled ray {z:?} of the V-form leaves the H-form cone"
                )));
            }
        }
        Ok(())
    }

    /// `z in K` up to `tol`, i.e. `<g_i, z> >= -tol` for all normals.
    pub fn contains(&self, z: &[f64], tol: f64) -> bool {
        assert_eq!(z.len(), self.dim, "cone membership dimension mismatch");
        self.normals.iter().all(|g| dot(g, z) >= -tol)
    }

    /// Strict membership `z > 0` in the chosen mode.
    pub fn contains_strict(&self, z: &[f64], mode: StrictMode, tol: f64) -> Result<bool, ConeError> {
        assert_eq!(z.len(), self.dim);
        match mode {
            StrictMode::HatK => {
                let neg: Vec<f64> = z.iter().map(|v| -v).collect();
                Ok(self.contains(z, tol) && !self.contains(&neg, tol))
            }
            StrictMode::Interior => {
                if !self.interior_nonempty() {
                    return Err(ConeError::EmptyInterior);
                }
                Ok(self.normals.iter().all(|g| dot(g, z) > tol))
            }
        }
    }

    /// Vector preorder: `a <= b` iff `b - a in K`.
    pub fn leq(&self, a: &[f64], b: &[f64], tol: f64) -> bool {
        let d: Vec<f64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
        self.contains(&d, tol)
    }

    /// `K` is pointed iff its normals span the whole space.
    pub fn is_pointed(&self) -> bool {
        rank(&self.normals, self.dim, 1e-9) == self.dim
    }

    /// The strict part `K \ (-K)` is non-empty iff `K` is not a subspace,
    /// i.e. some generator fails membership after negation.
    pub fn hat_nonempty(&self) -> bool {
        self.generators.iter().any(|g| {
            let neg: Vec<f64> = g.iter().map(|v| -v).collect();
            !self.contains(&neg, 1e-9)
        })
    }

    /// A point of `int(K)` when the interior is non-empty.
    ///
    /// The sum of the V-form generators is interior exactly when the cone is
    /// full-dimensional, which avoids an LP here.
    pub fn interior_point(&self) -> Option<Vec<f64>> {
        let mut z = vec![0.0; self.dim];
        for g in &self.generators {
            let u = unit(g);
            for (zi, gi) in z.iter_mut().zip(&u) {
                *zi += gi;
            }
        }
        if self.normals.iter().all(|g| dot(g, &z) > 1e-9 * norm(g)) {
            Some(z)
        } else {
            None
        }
    }

    pub fn interior_nonempty(&self) -> bool {
        self.interior_point().is_some()
    }

    /// Polar-cone membership: `<d, v> >= -tol` for every V-form generator.
    pub fn polar_contains(&self, d: &[f64], tol: f64) -> bool {
        assert_eq!(d.len(), self.dim);
        self.generators.iter().all(|g| dot(d, g) >= -tol * (1.0 + norm(g)))
    }

    /// Discretize the polar cone into `count` unit directions including all
    /// of its extreme rays. In dimension 2 this is an angular sweep between
    /// the extreme rays.
    pub fn polar_grid(&self, count: usize) -> Result<DirectionGrid, ConeError> {
        let needed = if self.dim == 1 { 1 } else { 2 };
        if count < needed {
            return Err(ConeError::GridTooSmall(needed, self.dim));
        }
        // The polar of a polyhedral cone in H-form is generated by the
        // normals themselves.
        let dirs = match self.dim {
            1 => {
                let s = self.normals[0][0].signum();
                if self.normals.iter().any(|g| g[0].signum() != s) {
                    return Err(ConeError::PolarNotPointed); // K = {0}
                }
                vec![vec![s]]
            }
            2 => {
                let angles: Vec<f64> = self
                    .normals
                    .iter()
                    .map(|g| g[1].atan2(g[0]))
                    .collect();
                let (start, extent) = angular_hull(&angles)?;
                let mut dirs = Vec::with_capacity(count);
                if extent <= 1e-12 {
                    dirs.push(vec![start.cos(), start.sin()]);
                } else {
                    for k in 0..count {
                        let th = start + extent * (k as f64) / ((count - 1) as f64);
                        dirs.push(vec![th.cos(), th.sin()]);
                    }
                }
                dirs
            }
            3 => {
                // All normals are candidate extreme rays; fill the interior
                // with normalized pairwise/triple mixtures.
                let mut dirs: Vec<Vec<f64>> = self.normals.iter().map(|g| unit(g)).collect();
                let base = dirs.clone();
                'outer: for level in 1..=3usize {
                    for i in 0..base.len() {
                        for j in i..base.len() {
                            if dirs.len() >= count {
                                break 'outer;
                            }
                            let mix: Vec<f64> = base[i]
                                .iter()
                                .zip(&base[j])
                                .map(|(a, b)| a + b * (level as f64))
                                .collect();
                            if norm(&mix) > 1e-12 {
                                dirs.push(unit(&mix));
                            }
                        }
                    }
                }
                dirs
            }
            d => return Err(ConeError::BadDimension(d)),
        };
        DirectionGrid::new(self, dirs, true, 1e-9)
    }

    /// Sampled check that the strict relation admits common lower bounds:
    /// for random `k1, k2 > 0` a `k3 > 0` with `k1 - k3 > 0` and
    /// `k2 - k3 > 0` is constructed (componentwise min for axis cones, a
    /// shrinking-scale search otherwise).
    pub fn properly_preordered_check(
        &self,
        mode: StrictMode,
        samples: usize,
        seed: u64,
    ) -> PreorderReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0;
        for _ in 0..samples {
            let k1 = self.sample_strict(&mut rng, mode);
            let k2 = self.sample_strict(&mut rng, mode);
            let (k1, k2) = match (k1, k2) {
                (Some(a), Some(b)) => (a, b),
                _ => continue,
            };
            checked += 1;
            if self.find_common_lower(&k1, &k2, mode).is_none() {
                return PreorderReport { holds: false, checked, witness: Some((k1, k2)) };
            }
        }
        PreorderReport { holds: true, checked, witness: None }
    }

    fn sample_strict(&self, rng: &mut ChaCha8Rng, mode: StrictMode) -> Option<Vec<f64>> {
        for _ in 0..64 {
            let mut z = vec![0.0; self.dim];
            for g in &self.generators {
                let w: f64 = rng.gen_range(0.1..1.0);
                let u = unit(g);
                for (zi, gi) in z.iter_mut().zip(&u) {
                    *zi += w * gi;
                }
            }
            if self.contains_strict(&z, mode, 0.0).unwrap_or(false) {
                return Some(z);
            }
        }
        None
    }

    fn find_common_lower(&self, k1: &[f64], k2: &[f64], mode: StrictMode) -> Option<Vec<f64>> {
        let ok = |k3: &[f64]| {
            let d1: Vec<f64> = k1.iter().zip(k3).map(|(a, b)| a - b).collect();
            let d2: Vec<f64> = k2.iter().zip(k3).map(|(a, b)| a - b).collect();
            self.contains_strict(k3, mode, 0.0).unwrap_or(false)
                && self.contains_strict(&d1, mode, 0.0).unwrap_or(false)
                && self.contains_strict(&d2, mode, 0.0).unwrap_or(false)
        };
        if self.kind == ConeKind::Axis {
            let m: Vec<f64> = k1.iter().zip(k2).map(|(a, b)| a.min(*b) / 2.0).collect();
            if ok(&m) {
                return Some(m);
            }
        }
        let mid: Vec<f64> = k1.iter().zip(k2).map(|(a, b)| (a + b) / 2.0).collect();
        for base in [&mid, &k1.to_vec(), &k2.to_vec()] {
            let mut eps = 0.5;
            for _ in 0..24 {
                let cand: Vec<f64> = base.iter().map(|v| v * eps).collect();
                if ok(&cand) {
                    return Some(cand);
                }
                eps /= 2.0;
            }
        }
        None
    }
}

/// Smallest arc `[start, start + extent]` containing all angles, `extent <= pi`.
fn angular_hull(angles: &[f64]) -> Result<(f64, f64), ConeError> {
    use std::f64::consts::PI;
    let mut sorted: Vec<f64> = angles.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sorted.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    if sorted.len() == 1 {
        return Ok((sorted[0], 0.0));
    }
    let n = sorted.len();
    let mut best_gap = -1.0;
    let mut start = sorted[0];
    for i in 0..n {
        let next = if i + 1 == n { sorted[0] + 2.0 * PI } else { sorted[i + 1] };
        let gap = next - sorted[i];
        if gap > best_gap {
            best_gap = gap;
            start = if i + 1 == n { sorted[0] } else { sorted[i + 1] };
        }
    }
    let extent = 2.0 * PI - best_gap;
    if extent > PI + 1e-9 {
        return Err(ConeError::PolarNotPointed);
    }
    Ok((start, extent))
}

/// Result of [`PolyCone::properly_preordered_check`].
#[derive(Clone, Debug)]
pub struct PreorderReport {
    pub holds: bool,
    pub checked: usize,
    pub witness: Option<(Vec<f64>, Vec<f64>)>,
}

/// Finite set of unit directions in the polar cone `K°`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirectionGrid {
    dim: usize,
    directions: Vec<Vec<f64>>,
    includes_extreme_rays: bool,
}

impl DirectionGrid {
    /// Angular deduplication resolution (radians).
    pub const ANGULAR_RESOLUTION: f64 = 1e-9;

    pub fn new(
        cone: &PolyCone,
        directions: Vec<Vec<f64>>,
        includes_extreme_rays: bool,
        tol: f64,
    ) -> Result<Self, ConeError> {
        let dim = cone.dim();
        let mut dirs: Vec<Vec<f64>> = Vec::new();
        for d in directions {
            if d.len() != dim || norm(&d) <= 1e-12 {
                return Err(ConeError::FormMismatch("bad grid direction".into()));
            }
            let u = unit(&d);
            if !cone.polar_contains(&u, tol) {
                return Err(ConeError::FormMismatch(format!(
                    "direction {u:?} lies outside the polar cone"
                )));
            }
            let dup = dirs
                .iter()
                .any(|e| dot(e, &u) >= 1.0 - Self::ANGULAR_RESOLUTION);
            if !dup {
                dirs.push(u);
            }
        }
        if dirs.is_empty() {
            return Err(ConeError::GridTooSmall(1, dim));
        }
        Ok(DirectionGrid { dim, directions: dirs, includes_extreme_rays })
    }

    /// Grid from raw unit directions without a cone check (used when the
    /// grid itself defines the geometry, e.g. in tests and parsers that
    /// validate separately).
    pub fn from_unit_directions(dim: usize, directions: Vec<Vec<f64>>) -> Self {
        let dirs: Vec<Vec<f64>> = directions
            .iter()
            .map(|d| {
                assert_eq!(d.len(), dim);
                unit(d)
            })
            .collect();
        assert!(!dirs.is_empty());
        DirectionGrid { dim, directions: dirs, includes_extreme_rays: false }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn directions(&self) -> &[Vec<f64>] {
        &self.directions
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn includes_extreme_rays(&self) -> bool {
        self.includes_extreme_rays
    }
}

/// Cone description as it appears in problem files.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConeSpec {
    Axis { dim: usize },
    Hform { normals: Vec<Vec<f64>> },
}

impl ConeSpec {
    pub fn build(&self) -> Result<PolyCone, ConeError> {
        match self {
            ConeSpec::Axis { dim } => {
                if !(1..=3).contains(dim) {
                    return Err(ConeError::BadDimension(*dim));
                }
                Ok(PolyCone::axis(*dim))
            }
            ConeSpec::Hform { normals } => PolyCone::from_normals(normals.clone()),
        }
    }
}

/// Positively spanning generators from H-form normals (dim <= 3).
fn derive_generators(normals: &[Vec<f64>], dim: usize) -> Result<Vec<Vec<f64>>, ConeError> {
    let feasible = |z: &[f64]| normals.iter().all(|g| dot(g, z) >= -1e-9);
    let mut cands: Vec<Vec<f64>> = Vec::new();
    match dim {
        1 => {
            cands.push(vec![1.0]);
            cands.push(vec![-1.0]);
        }
        2 => {
            for g in normals {
                let u = unit(g);
                cands.push(vec![u[1], -u[0]]);
                cands.push(vec![-u[1], u[0]]);
                cands.push(u);
            }
        }
        3 => {
            for i in 0..normals.len() {
                for j in (i + 1)..normals.len() {
                    let c = cross3(&normals[i], &normals[j]);
                    if norm(&c) > 1e-12 {
                        cands.push(unit(&c));
                        cands.push(unit(&c).iter().map(|v| -v).collect());
                    }
                }
                cands.push(unit(&normals[i]));
            }
            if normals.len() == 1 {
                // Half-space: span the boundary plane.
                let g = unit(&normals[0]);
                let e = if g[0].abs() < 0.9 { vec![1.0, 0.0, 0.0] } else { vec![0.0, 1.0, 0.0] };
                let u = unit(&cross3(&g, &e));
                let w = unit(&cross3(&g, &u));
                for v in [&u, &w] {
                    cands.push(v.clone());
                    cands.push(v.iter().map(|x| -x).collect());
                }
            }
        }
        d => return Err(ConeError::BadDimension(d)),
    }
    let mut gens: Vec<Vec<f64>> = Vec::new();
    for c in cands {
        if feasible(&c) && !gens.iter().any(|g| dot(g, &c) >= 1.0 - 1e-12) {
            gens.push(c);
        }
    }
    if gens.is_empty() {
        return Err(ConeError::DegenerateCone);
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_membership() {
        let k = PolyCone::axis(2);
        assert!(k.contains(&[1.0, 0.0], 0.0));
        assert!(!k.contains(&[-1.0, 0.0], 0.0));
    }

    #[test]
    fn hform_membership() {
        // K = {z : z2 >= |z1|}, normals (1,1) and (-1,1).
        let k = PolyCone::from_normals(vec![vec![1.0, 1.0], vec![-1.0, 1.0]]).unwrap();
        assert!(k.contains(&[1.0, 2.0], 0.0));
        assert!(!k.contains(&[2.0, 1.0], 0.0));
        assert!(k.is_pointed());
        assert!(k.interior_nonempty());
    }

    #[test]
    fn strict_modes_on_axis() {
        let k = PolyCone::axis(2);
        assert!(!k.contains_strict(&[0.0, 0.0], StrictMode::HatK, 0.0).unwrap());
        assert!(k.contains_strict(&[1.0, 0.0], StrictMode::HatK, 0.0).unwrap());
        assert!(!k.contains_strict(&[1.0, 0.0], StrictMode::Interior, 0.0).unwrap());
        assert!(k.contains_strict(&[1.0, 1.0], StrictMode::Interior, 0.0).unwrap());
    }

    #[test]
    fn strict_implications_sampled() {
        use rand::{Rng, SeedableRng};
        let k = PolyCone::axis(2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let z = vec![rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64];
            let interior = k.contains_strict(&z, StrictMode::Interior, 0.0).unwrap();
            let hat = k.contains_strict(&z, StrictMode::HatK, 0.0).unwrap();
            if interior {
                assert!(hat, "int(K) must lie in K \\ (-K): {z:?}");
            }
            if hat {
                assert!(k.contains(&z, 0.0));
            }
        }
    }

    #[test]
    fn order_compatibility_exact_on_integer_data() {
        use rand::{Rng, SeedableRng};
        let k = PolyCone::from_normals(vec![vec![1.0, 1.0], vec![-1.0, 1.0]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let z = vec![rng.gen_range(-4..=4) as f64, rng.gen_range(-4..=4) as f64];
            let w = vec![rng.gen_range(-4..=4) as f64, rng.gen_range(-4..=4) as f64];
            let u = vec![rng.gen_range(-4..=4) as f64, rng.gen_range(-4..=4) as f64];
            for lam in [0.5, 1.0, 2.0, 4.0] {
                let zs: Vec<f64> = z.iter().zip(&u).map(|(a, b)| lam * a + b).collect();
                let ws: Vec<f64> = w.iter().zip(&u).map(|(a, b)| lam * a + b).collect();
                assert_eq!(k.leq(&z, &w, 0.0), k.leq(&zs, &ws, 0.0));
            }
        }
    }

    #[test]
    fn polar_grid_1d() {
        let k = PolyCone::axis(1);
        let g = k.polar_grid(1).unwrap();
        assert_eq!(g.directions(), &[vec![1.0]]);
    }

    #[test]
    fn polar_grid_axis_sweep() {
        let k = PolyCone::axis(2);
        let g = k.polar_grid(3).unwrap();
        let d = g.directions();
        assert_eq!(d.len(), 3);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((d[0][0] - 1.0).abs() < 1e-12 && d[0][1].abs() < 1e-12);
        assert!((d[1][0] - s).abs() < 1e-12 && (d[1][1] - s).abs() < 1e-12);
        assert!(d[2][0].abs() < 1e-12 && (d[2][1] - 1.0).abs() < 1e-12);
        assert!(g.includes_extreme_rays());
    }

    #[test]
    fn polar_grid_lorentz_like() {
        let k = PolyCone::from_normals(vec![vec![1.0, 1.0], vec![-1.0, 1.0]]).unwrap();
        let g = k.polar_grid(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let d = g.directions();
        assert_eq!(d.len(), 2);
        assert!((d[0][0] - s).abs() < 1e-9 && (d[0][1] - s).abs() < 1e-9);
        assert!((d[1][0] + s).abs() < 1e-9 && (d[1][1] - s).abs() < 1e-9);
    }

    #[test]
    fn polar_grid_directions_stay_in_polar() {
        for k in [
            PolyCone::axis(2),
            PolyCone::from_normals(vec![vec![1.0, 1.0], vec![-1.0, 1.0]]).unwrap(),
            PolyCone::axis(3),
        ] {
            let g = k.polar_grid(7).unwrap();
            for d in g.directions() {
                for gen in k.generators() {
                    assert!(dot(d, gen) >= -1e-12 * (1.0 + norm(gen)), "{d:?} vs {gen:?}");
                }
            }
        }
    }

    #[test]
    fn properly_preordered_axis() {
        let k1 = PolyCone::axis(1);
        let r = k1.properly_preordered_check(StrictMode::HatK, 50, 0);
        assert!(r.holds, "{:?}", r.witness);

        let k2 = PolyCone::axis(2);
        let r = k2.properly_preordered_check(StrictMode::HatK, 50, 1);
        assert!(r.holds, "{:?}", r.witness);
        let r = k2.properly_preordered_check(StrictMode::Interior, 50, 2);
        assert!(r.holds, "{:?}", r.witness);
    }

    #[test]
    fn cone_spec_roundtrip() {
        let spec: ConeSpec = serde_json::from_str(r#"{"kind": "axis", "dim": 2}"#).unwrap();
        let k = spec.build().unwrap();
        assert_eq!(k.kind(), ConeKind::Axis);
        let spec: ConeSpec =
            serde_json::from_str(r#"{"kind": "hform", "normals": [[1,1],[-1,1]]}"#).unwrap();
        let k = spec.build().unwrap();
        assert_eq!(k.dim(), 2);
    }
}
