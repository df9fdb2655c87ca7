//! Closed convex monotone upper sets in `R^n`, represented as finite
//! intersections of lower half-spaces over a shared direction grid in the
//! polar cone.
//!
//! With every direction `d` in the polar cone, `{z : <d, z> >= c}` is
//! closed, convex and monotone, so the represented sets live in the closed
//! convex monotone class by construction. All set algebra is pointwise on
//! the per-direction lower bounds: suprema (intersections) are exact in this
//! representation, infima are the tightest grid-representable outer set of
//! the closed convex hull of the union — that approximation contract is the
//! module's.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cone::{DirectionGrid, PolyCone, StrictMode};
use crate::linprog::{self, dot, ExtReal, Polyhedron};

#[derive(Debug, Error, PartialEq)]
pub enum SuppError {
    #[error("direction grids differ")]
    GridMismatch,
    #[error("negative scale factor {0}")]
    NegativeScale(f64),
    #[error("canonicalization supports dimension <= 2, got {0}")]
    TightenUnsupported(usize),
    #[error("lower bound +inf is not representable; use the empty flag")]
    BadBound,
}

/// `A = ∩_d {z : <d, z> >= phi(d)}` over the grid directions, or the empty
/// set when flagged. A bound of `-inf` makes the constraint vacuous; all
/// bounds `-inf` is the whole space.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportedUpperSet {
    grid: DirectionGrid,
    phi: Vec<ExtReal>,
    empty: bool,
}

impl SupportedUpperSet {
    pub fn from_bounds(grid: DirectionGrid, phi: Vec<f64>) -> Self {
        assert_eq!(phi.len(), grid.len(), "one bound per direction");
        let phi = phi.into_iter().map(ExtReal::finite).collect();
        SupportedUpperSet { grid, phi, empty: false }
    }

    pub fn from_ext_bounds(grid: DirectionGrid, phi: Vec<ExtReal>) -> Result<Self, SuppError> {
        assert_eq!(phi.len(), grid.len());
        if phi.iter().any(|v| *v == ExtReal::PosInf) {
            return Err(SuppError::BadBound);
        }
        Ok(SupportedUpperSet { grid, phi, empty: false })
    }

    pub fn empty(grid: DirectionGrid) -> Self {
        let phi = vec![ExtReal::NegInf; grid.len()];
        SupportedUpperSet { grid, phi, empty: true }
    }

    pub fn whole_space(grid: DirectionGrid) -> Self {
        let phi = vec![ExtReal::NegInf; grid.len()];
        SupportedUpperSet { grid, phi, empty: false }
    }

    /// The grid's outer representation of the cone itself: all bounds zero.
    pub fn cone_outer(grid: DirectionGrid) -> Self {
        let phi = vec![ExtReal::Finite(0.0); grid.len()];
        SupportedUpperSet { grid, phi, empty: false }
    }

    pub fn grid(&self) -> &DirectionGrid {
        &self.grid
    }

    pub fn bounds(&self) -> &[ExtReal] {
        &self.phi
    }

    pub fn is_empty_set(&self) -> bool {
        self.empty
    }

    pub fn is_whole_space(&self) -> bool {
        !self.empty && self.phi.iter().all(|v| *v == ExtReal::NegInf)
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    fn same_grid(&self, other: &Self) -> Result<(), SuppError> {
        if self.grid != other.grid {
            return Err(SuppError::GridMismatch);
        }
        Ok(())
    }

    pub fn contains(&self, z: &[f64], tol: f64) -> bool {
        assert_eq!(z.len(), self.dim());
        if self.empty {
            return false;
        }
        self.grid.directions().iter().zip(&self.phi).all(|(d, c)| match c {
            ExtReal::NegInf => true,
            ExtReal::Finite(c) => dot(d, z) >= c - tol,
            ExtReal::PosInf => false,
        })
    }

    /// Lattice order `A <= B` (reverse inclusion): `B` empty, or `A`
    /// non-empty with every bound of `A` below the corresponding bound of
    /// `B`. On canonical representations this is exactly `A ⊇ B`.
    pub fn leq(&self, other: &Self, tol: f64) -> Result<bool, SuppError> {
        self.same_grid(other)?;
        if other.empty {
            return Ok(true);
        }
        if self.empty {
            return Ok(false);
        }
        Ok(self.phi.iter().zip(&other.phi).all(|(a, b)| match (a, b) {
            (ExtReal::NegInf, _) => true,
            (ExtReal::Finite(_), ExtReal::NegInf) => false,
            (ExtReal::Finite(x), ExtReal::Finite(y)) => *x <= *y + tol,
            (ExtReal::PosInf, _) | (_, ExtReal::PosInf) => unreachable!("PosInf bound"),
        }))
    }

    /// Infimum (outer hull of the union): pointwise minimum of the bounds;
    /// the empty set is neutral.
    pub fn inf(family: &[&Self]) -> Result<Self, SuppError> {
        let first = family.first().expect("inf of empty family");
        for s in family {
            first.same_grid(s)?;
        }
        let live: Vec<&&Self> = family.iter().filter(|s| !s.empty).collect();
        if live.is_empty() {
            return Ok(Self::empty(first.grid.clone()));
        }
        let mut phi = live[0].phi.clone();
        for s in live.iter().skip(1) {
            for (acc, v) in phi.iter_mut().zip(&s.phi) {
                *acc = match (*acc, *v) {
                    (ExtReal::NegInf, _) | (_, ExtReal::NegInf) => ExtReal::NegInf,
                    (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a.min(b)),
                    _ => unreachable!("PosInf bound"),
                };
            }
        }
        Ok(SupportedUpperSet { grid: first.grid.clone(), phi, empty: false })
    }

    /// Supremum (intersection): pointwise maximum of the bounds; the empty
    /// set absorbs. Exact for H-form representations.
    pub fn sup(family: &[&Self]) -> Result<Self, SuppError> {
        let first = family.first().expect("sup of empty family");
        for s in family {
            first.same_grid(s)?;
        }
        if family.iter().any(|s| s.empty) {
            return Ok(Self::empty(first.grid.clone()));
        }
        let mut phi = first.phi.clone();
        for s in family.iter().skip(1) {
            for (acc, v) in phi.iter_mut().zip(&s.phi) {
                *acc = match (*acc, *v) {
                    (ExtReal::NegInf, b) => b,
                    (a, ExtReal::NegInf) => a,
                    (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a.max(b)),
                    _ => unreachable!("PosInf bound"),
                };
            }
        }
        Ok(SupportedUpperSet { grid: first.grid.clone(), phi, empty: false })
    }

    /// Minkowski sum: lower supports add, `-inf` absorbs, the empty set
    /// absorbs everything.
    pub fn minkowski(&self, other: &Self) -> Result<Self, SuppError> {
        self.same_grid(other)?;
        if self.empty || other.empty {
            return Ok(Self::empty(self.grid.clone()));
        }
        let phi = self
            .phi
            .iter()
            .zip(&other.phi)
            .map(|(a, b)| match (a, b) {
                (ExtReal::NegInf, _) | (_, ExtReal::NegInf) => ExtReal::NegInf,
                (ExtReal::Finite(x), ExtReal::Finite(y)) => ExtReal::Finite(x + y),
                _ => unreachable!("PosInf bound"),
            })
            .collect();
        Ok(SupportedUpperSet { grid: self.grid.clone(), phi, empty: false })
    }

    /// Scalar multiple for `lambda >= 0`, with `0 * A` the cone regardless
    /// of `A` (including the empty set).
    pub fn scale(&self, lambda: f64) -> Result<Self, SuppError> {
        if lambda < 0.0 {
            return Err(SuppError::NegativeScale(lambda));
        }
        if lambda == 0.0 {
            return Ok(Self::cone_outer(self.grid.clone()));
        }
        if self.empty {
            return Ok(self.clone());
        }
        let phi = self.phi.iter().map(|v| v.scale_pos(lambda)).collect();
        Ok(SupportedUpperSet { grid: self.grid.clone(), phi, empty: false })
    }

    /// H-form polyhedron `{z : <d, z> >= phi(d)}` (finite bounds only).
    pub fn to_polyhedron(&self) -> Polyhedron {
        if self.empty {
            return Polyhedron::empty_marker(self.dim());
        }
        let mut p = Polyhedron::new(self.dim());
        for (d, c) in self.grid.directions().iter().zip(&self.phi) {
            if let ExtReal::Finite(c) = c {
                p.push(d.iter().map(|v| -v).collect(), -c);
            }
        }
        p
    }

    /// Canonical form: each bound replaced by the exact infimum of `<d, z>`
    /// over the set, computed by LP; hidden emptiness is detected.
    pub fn tighten(&self) -> Result<Self, SuppError> {
        if self.dim() > 2 {
            return Err(SuppError::TightenUnsupported(self.dim()));
        }
        if self.empty {
            return Ok(self.clone());
        }
        let p = self.to_polyhedron();
        if linprog::lp_is_empty(&p) {
            return Ok(Self::empty(self.grid.clone()));
        }
        let phi = self
            .grid
            .directions()
            .iter()
            .map(|d| linprog::lp_minimize(&p, d))
            .collect();
        Ok(SupportedUpperSet { grid: self.grid.clone(), phi, empty: false })
    }
}

/// `S(z*, s) = {z : s <= <z*, z>}`, the half-space that substitutes for
/// scalar subtraction in the set-valued conjugate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HalfSpaceS {
    pub direction: Vec<f64>,
    pub threshold: f64,
}

impl HalfSpaceS {
    pub fn new(direction: Vec<f64>, threshold: f64) -> Self {
        HalfSpaceS { direction, threshold }
    }

    pub fn contains(&self, z: &[f64], tol: f64) -> bool {
        dot(&self.direction, z) >= self.threshold - tol
    }
}

/// Sampled membership in the monotone closure: `z` belongs iff every probe
/// `z + eps * k` along sampled rays of the chosen strict cone is a member.
/// A semi-decision used in tests; rays include the cone generators for the
/// `K \ (-K)` mode and stay strictly interior for the interior mode.
pub fn bullet_sampled(
    member: &dyn Fn(&[f64]) -> bool,
    z: &[f64],
    cone: &PolyCone,
    mode: StrictMode,
    eps_list: &[f64],
    ray_samples: usize,
) -> bool {
    let rays = strict_rays(cone, mode, ray_samples);
    for k in &rays {
        for &eps in eps_list {
            let probe: Vec<f64> = z.iter().zip(k).map(|(a, b)| a + eps * b).collect();
            if !member(&probe) {
                return false;
            }
        }
    }
    true
}

/// Deterministic rays in the strict cone: generators plus interior mixtures
/// for the hat mode, strictly interior mixtures only for the interior mode.
pub fn strict_rays(cone: &PolyCone, mode: StrictMode, samples: usize) -> Vec<Vec<f64>> {
    let gens = cone.generators();
    let mut rays: Vec<Vec<f64>> = Vec::new();
    if mode == StrictMode::HatK {
        for g in gens {
            if cone.contains_strict(g, StrictMode::HatK, 0.0).unwrap_or(false) {
                rays.push(g.clone());
            }
        }
    }
    // Interior mixtures: sweep convex combinations of generator pairs with
    // weights bounded away from the boundary.
    let n = samples.max(2);
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            for t in 1..n {
                let w = t as f64 / n as f64;
                let mix: Vec<f64> = gens[i]
                    .iter()
                    .zip(&gens[j])
                    .map(|(a, b)| (1.0 - w) * a + w * b)
                    .collect();
                if cone.contains_strict(&mix, mode, 0.0).unwrap_or(false) {
                    rays.push(mix);
                }
            }
        }
    }
    if gens.len() == 1 {
        rays.push(gens[0].clone());
    }
    if mode == StrictMode::Interior {
        if let Some(k0) = cone.interior_point() {
            rays.push(k0);
        }
        rays.retain(|r| cone.contains_strict(r, StrictMode::Interior, 0.0).unwrap_or(false));
    }
    rays
}

// --- JSON form: {"grid": [[...]], "phi": [...]} or {"empty": true, ...} ---

#[derive(Serialize, Deserialize)]
struct UpperSetJson {
    grid: Vec<Vec<f64>>,
    #[serde(default)]
    phi: Vec<serde_json::Value>,
    #[serde(default)]
    empty: bool,
}

impl Serialize for SupportedUpperSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let phi = self
            .phi
            .iter()
            .map(|v| match v {
                ExtReal::Finite(x) => serde_json::json!(x),
                ExtReal::NegInf => serde_json::json!("-inf"),
                ExtReal::PosInf => serde_json::json!("inf"),
            })
            .collect();
        UpperSetJson {
            grid: self.grid.directions().to_vec(),
            phi,
            empty: self.empty,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SupportedUpperSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = UpperSetJson::deserialize(deserializer)?;
        if raw.grid.is_empty() {
            return Err(D::Error::custom("upper_set.grid must be non-empty"));
        }
        let dim = raw.grid[0].len();
        let grid = DirectionGrid::from_unit_directions(dim, raw.grid);
        if raw.empty {
            return Ok(SupportedUpperSet::empty(grid));
        }
        if raw.phi.len() != grid.len() {
            return Err(D::Error::custom("upper_set.phi length must match grid"));
        }
        let mut phi = Vec::with_capacity(raw.phi.len());
        for v in raw.phi {
            let e = match v {
                serde_json::Value::Number(n) => {
                    ExtReal::finite(n.as_f64().ok_or_else(|| D::Error::custom("bad phi"))?)
                }
                serde_json::Value::String(s) if s == "-inf" => ExtReal::NegInf,
                other => return Err(D::Error::custom(format!("bad phi entry {other}"))),
            };
            phi.push(e);
        }
        SupportedUpperSet::from_ext_bounds(grid, phi).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::PolyCone;

    fn axis_grid() -> DirectionGrid {
        DirectionGrid::from_unit_directions(2, vec![vec![1.0, 0.0], vec![0.0, 1.0]])
    }

    fn boxset(x: f64, y: f64) -> SupportedUpperSet {
        SupportedUpperSet::from_bounds(axis_grid(), vec![x, y])
    }

    #[test]
    fn membership_examples() {
        let a = boxset(1.0, 2.0);
        assert!(a.contains(&[1.0, 2.0], 0.0));
        assert!(!a.contains(&[0.9, 3.0], 0.0));
        let s = SupportedUpperSet::from_ext_bounds(
            axis_grid(),
            vec![ExtReal::NegInf, ExtReal::Finite(0.0)],
        )
        .unwrap();
        assert!(s.contains(&[-100.0, 0.0], 0.0));
    }

    #[test]
    fn order_examples() {
        let cone = SupportedUpperSet::cone_outer(axis_grid());
        let a = boxset(1.0, 2.0);
        assert!(cone.leq(&a, 0.0).unwrap());
        assert!(!a.leq(&cone, 0.0).unwrap());
        let empty = SupportedUpperSet::empty(axis_grid());
        assert!(a.leq(&empty, 0.0).unwrap());
        assert!(a.leq(&a, 0.0).unwrap());
    }

    #[test]
    fn inf_sup_examples() {
        let a = boxset(1.0, 2.0);
        let b = boxset(2.0, 0.0);
        let s = SupportedUpperSet::sup(&[&a, &b]).unwrap();
        assert_eq!(s.bounds(), &[ExtReal::Finite(2.0), ExtReal::Finite(2.0)]);
        let empty = SupportedUpperSet::empty(axis_grid());
        assert_eq!(SupportedUpperSet::inf(&[&a, &empty]).unwrap(), a);
        assert!(SupportedUpperSet::sup(&[&a, &empty]).unwrap().is_empty_set());
        assert_eq!(SupportedUpperSet::inf(&[&a, &a]).unwrap(), a);
    }

    #[test]
    fn minkowski_and_scale() {
        let a = boxset(1.0, 2.0);
        let b = boxset(0.0, 1.0);
        let sum = a.minkowski(&b).unwrap();
        assert_eq!(sum.bounds(), &[ExtReal::Finite(1.0), ExtReal::Finite(3.0)]);

        let empty = SupportedUpperSet::empty(axis_grid());
        assert!(a.minkowski(&empty).unwrap().is_empty_set());
        let zero_empty = empty.scale(0.0).unwrap();
        assert_eq!(zero_empty, SupportedUpperSet::cone_outer(axis_grid()));
        assert_eq!(a.scale(1.0).unwrap(), a);
        assert!(a.scale(-1.0).is_err());
    }

    #[test]
    fn lattice_identities() {
        let a = boxset(1.0, 2.0);
        let b = boxset(-1.0, 4.0);
        let c = boxset(0.5, 0.5);
        let sup_ab = SupportedUpperSet::sup(&[&a, &b]).unwrap();
        let inf_ab = SupportedUpperSet::inf(&[&a, &b]).unwrap();
        assert_eq!(SupportedUpperSet::sup(&[&a, &inf_ab]).unwrap(), a);
        assert_eq!(SupportedUpperSet::inf(&[&a, &sup_ab]).unwrap(), a);
        let s1 = SupportedUpperSet::sup(&[&sup_ab, &c]).unwrap();
        let bc = SupportedUpperSet::sup(&[&b, &c]).unwrap();
        let s2 = SupportedUpperSet::sup(&[&a, &bc]).unwrap();
        assert_eq!(s1, s2);

        // Empty is the greatest element, all-bounds -inf the least.
        let empty = SupportedUpperSet::empty(axis_grid());
        let all = SupportedUpperSet::whole_space(axis_grid());
        assert!(a.leq(&empty, 0.0).unwrap());
        assert!(all.leq(&a, 0.0).unwrap());
        assert!(all.is_whole_space());
    }

    #[test]
    fn order_implies_membership() {
        let a = boxset(0.0, 0.0);
        let b = boxset(1.0, 2.0);
        assert!(a.leq(&b, 0.0).unwrap());
        for z in [[1.0, 2.0], [3.0, 2.5], [1.5, 9.0]] {
            assert!(b.contains(&z, 0.0) && a.contains(&z, 0.0));
        }
    }

    #[test]
    fn tighten_quadrant() {
        let grid = DirectionGrid::from_unit_directions(
            2,
            vec![
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2],
            ],
        );
        let raw = SupportedUpperSet::from_bounds(grid.clone(), vec![0.0, 0.0, -5.0]);
        let tight = raw.tighten().unwrap();
        assert!(tight.bounds()[2].approx_eq(ExtReal::Finite(0.0), 1e-9));
        let again = tight.tighten().unwrap();
        for (a, b) in tight.bounds().iter().zip(again.bounds()) {
            assert!(a.approx_eq(*b, 1e-9));
        }

        // Inconsistent rows are detected as hidden emptiness.
        let grid2 = DirectionGrid::from_unit_directions(1, vec![vec![1.0], vec![-1.0]]);
        let bad = SupportedUpperSet::from_bounds(grid2, vec![1.0, 0.0]); // z >= 1 and z <= 0
        assert!(bad.tighten().unwrap().is_empty_set());
    }

    #[test]
    fn minkowski_membership_sampled() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let a = boxset(rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64);
            let b = boxset(rng.gen_range(-3..=3) as f64, rng.gen_range(-3..=3) as f64);
            let sum = a.minkowski(&b).unwrap();
            for _ in 0..20 {
                let pa = [
                    a.bounds()[0].as_f64().unwrap() + rng.gen_range(0.0..2.0),
                    a.bounds()[1].as_f64().unwrap() + rng.gen_range(0.0..2.0),
                ];
                let pb = [
                    b.bounds()[0].as_f64().unwrap() + rng.gen_range(0.0..2.0),
                    b.bounds()[1].as_f64().unwrap() + rng.gen_range(0.0..2.0),
                ];
                assert!(a.contains(&pa, 1e-9) && b.contains(&pb, 1e-9));
                assert!(sum.contains(&[pa[0] + pb[0], pa[1] + pb[1]], 1e-9));
            }
        }
    }

    #[test]
    fn bullet_sampled_two_strict_cones() {
        let k = PolyCone::axis(2);
        let eps = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
        // Open quadrant translate A = (1, inf) x (2, inf).
        let member = |z: &[f64]| z[0] > 1.0 && z[1] > 2.0;
        let corner = [1.0, 2.0];
        assert!(!bullet_sampled(&member, &corner, &k, StrictMode::HatK, &eps, 6));
        assert!(bullet_sampled(&member, &corner, &k, StrictMode::Interior, &eps, 6));

        // A closed half-plane keeps its boundary under interior probes.
        let half = |z: &[f64]| z[0] + z[1] >= 1.0;
        assert!(bullet_sampled(&half, &[0.5, 0.5], &k, StrictMode::Interior, &eps, 6));
        assert!(!bullet_sampled(&half, &[0.4, 0.5], &k, StrictMode::Interior, &eps, 6));
    }

    #[test]
    fn json_roundtrip() {
        let a = boxset(1.0, 2.0);
        let s = serde_json::to_string(&a).unwrap();
        let back: SupportedUpperSet = serde_json::from_str(&s).unwrap();
        assert_eq!(a, back);

        let parsed: SupportedUpperSet =
            serde_json::from_str(r#"{"grid": [[1,0],[0,1]], "phi": [1, 2]}"#).unwrap();
        assert!(parsed.contains(&[1.0, 2.0], 0.0));
        let e: SupportedUpperSet =
            serde_json::from_str(r#"{"grid": [[1,0],[0,1]], "empty": true}"#).unwrap();
        assert!(e.is_empty_set());
    }
}
