//! Set-valued functions `F : R^m -> G(R^n, K)` stored scalarization-first:
//! one scalar function `g_d` per direction `d` of a polar-cone grid, with
//! `F(x) = {z : <d, z> >= g_d(x) for all d}`. Values are closed, convex and
//! monotone by construction; convex mode (all `g_d` max-affine) makes every
//! level set an H-form polyhedron.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{DirectionGrid, PolyCone};
use crate::linprog::{dot, ExtReal, MaxAffine, Polyhedron};
use crate::suppset::SupportedUpperSet;

#[derive(Debug, Error, PartialEq)]
pub enum SetFnError {
    #[error("model needs one scalar function per grid direction")]
    LengthMismatch,
    #[error("direction {0:?} lies outside the polar cone")]
    DirectionOutsidePolar(Vec<f64>),
    #[error("scalar function dimension {got} does not match domain dimension {want}")]
    DomainDimension { got: usize, want: usize },
    #[error("operation requires convex mode (all directions max-affine)")]
    NotConvexMode,
    #[error("operation requires a one-dimensional domain")]
    NotOneDimensional,
    #[error("piecewise-linear function is not quasiconvex (a negative slope follows a positive one)")]
    NotQuasiconvex,
    #[error("breakpoints must be strictly increasing")]
    BadBreakpoints,
}

/// Piecewise-linear quasiconvex function of one variable: nonincreasing up
/// to a valley, nondecreasing after it. Between breakpoints the function is
/// affine; beyond the first/last breakpoint it continues with the end
/// slopes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pwl1D {
    xs: Vec<f64>,
    ys: Vec<f64>,
    left_slope: f64,
    right_slope: f64,
}

impl Pwl1D {
    pub fn new(
        xs: Vec<f64>,
        ys: Vec<f64>,
        left_slope: f64,
        right_slope: f64,
    ) -> Result<Self, SetFnError> {
        if xs.is_empty() || xs.len() != ys.len() {
            return Err(SetFnError::BadBreakpoints);
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SetFnError::BadBreakpoints);
        }
        let f = Pwl1D { xs, ys, left_slope, right_slope };
        let slopes = f.slope_sequence();
        let mut seen_positive = false;
        for s in &slopes {
            if *s > 0.0 {
                seen_positive = true;
            } else if *s < 0.0 && seen_positive {
                return Err(SetFnError::NotQuasiconvex);
            }
        }
        Ok(f)
    }

    fn slope_sequence(&self) -> Vec<f64> {
        let mut slopes = vec![self.left_slope];
        for i in 0..self.xs.len() - 1 {
            slopes.push((self.ys[i + 1] - self.ys[i]) / (self.xs[i + 1] - self.xs[i]));
        }
        slopes.push(self.right_slope);
        slopes
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0] + self.left_slope * (x - self.xs[0]);
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1] + self.right_slope * (x - self.xs[n - 1]);
        }
        let i = self.xs.partition_point(|t| *t <= x) - 1;
        let t = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        self.ys[i] + t * (self.ys[i + 1] - self.ys[i])
    }

    /// Level set `{x : f(x) <= c}` as an interval (endpoints may be
    /// infinite); `None` when the level is below the minimum.
    ///
    /// Each affine segment contributes a clipped sub-interval; by
    /// quasiconvexity their union is one interval, so the envelope of the
    /// non-empty pieces is exact.
    pub fn level_interval(&self, c: f64) -> Option<(ExtReal, ExtReal)> {
        let n = self.xs.len();
        let mut lo: Option<ExtReal> = None;
        let mut hi: Option<ExtReal> = None;
        let mut take = |seg: Option<(ExtReal, ExtReal)>| {
            if let Some((a, b)) = seg {
                lo = Some(match lo {
                    None => a,
                    Some(cur) => {
                        if a < cur {
                            a
                        } else {
                            cur
                        }
                    }
                });
                hi = Some(match hi {
                    None => b,
                    Some(cur) => {
                        if b > cur {
                            b
                        } else {
                            cur
                        }
                    }
                });
            }
        };
        // Left extension, interior segments, right extension.
        take(affine_level(
            self.left_slope,
            self.ys[0] - self.left_slope * self.xs[0],
            c,
            ExtReal::NegInf,
            ExtReal::Finite(self.xs[0]),
        ));
        for i in 0..n - 1 {
            let a = (self.ys[i + 1] - self.ys[i]) / (self.xs[i + 1] - self.xs[i]);
            let b = self.ys[i] - a * self.xs[i];
            take(affine_level(
                a,
                b,
                c,
                ExtReal::Finite(self.xs[i]),
                ExtReal::Finite(self.xs[i + 1]),
            ));
        }
        take(affine_level(
            self.right_slope,
            self.ys[n - 1] - self.right_slope * self.xs[n - 1],
            c,
            ExtReal::Finite(self.xs[n - 1]),
            ExtReal::PosInf,
        ));
        match (lo, hi) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        }
    }
}

/// Scalarization of one grid direction.
#[derive(Clone, Debug, PartialEq)]
pub enum DirectionFn {
    MaxAffine(MaxAffine),
    Pwl1D(Pwl1D),
}

impl DirectionFn {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            DirectionFn::MaxAffine(g) => g.eval(x),
            DirectionFn::Pwl1D(g) => {
                assert_eq!(x.len(), 1);
                g.eval(x[0])
            }
        }
    }

    fn dim(&self) -> usize {
        match self {
            DirectionFn::MaxAffine(g) => g.dim(),
            DirectionFn::Pwl1D(_) => 1,
        }
    }
}

/// Scalarization-first model of a set-valued function.
#[derive(Clone, Debug)]
pub struct SetValuedFn {
    dim_x: usize,
    cone: PolyCone,
    grid: DirectionGrid,
    gs: Vec<DirectionFn>,
}

impl SetValuedFn {
    pub fn new(cone: PolyCone, grid: DirectionGrid, gs: Vec<DirectionFn>) -> Result<Self, SetFnError> {
        if gs.len() != grid.len() {
            return Err(SetFnError::LengthMismatch);
        }
        for d in grid.directions() {
            if !cone.polar_contains(d, 1e-9) {
                return Err(SetFnError::DirectionOutsidePolar(d.clone()));
            }
        }
        let dim_x = gs[0].dim();
        for g in &gs {
            if g.dim() != dim_x {
                return Err(SetFnError::DomainDimension { got: g.dim(), want: dim_x });
            }
        }
        Ok(SetValuedFn { dim_x, cone, grid, gs })
    }

    pub fn dim_x(&self) -> usize {
        self.dim_x
    }

    pub fn dim_z(&self) -> usize {
        self.grid.dim()
    }

    pub fn cone(&self) -> &PolyCone {
        &self.cone
    }

    pub fn grid(&self) -> &DirectionGrid {
        &self.grid
    }

    pub fn direction_fns(&self) -> &[DirectionFn] {
        &self.gs
    }

    pub fn is_convex_mode(&self) -> bool {
        self.gs.iter().all(|g| matches!(g, DirectionFn::MaxAffine(_)))
    }

    /// Evaluate to the supported upper set with bounds `g_d(x)`.
    pub fn eval(&self, x: &[f64]) -> SupportedUpperSet {
        assert_eq!(x.len(), self.dim_x);
        let phi: Vec<f64> = self.gs.iter().map(|g| g.eval(x)).collect();
        SupportedUpperSet::from_bounds(self.grid.clone(), phi)
    }

    /// Direct membership `z in F(x)`.
    pub fn contains(&self, x: &[f64], z: &[f64], tol: f64) -> bool {
        assert_eq!(z.len(), self.dim_z());
        self.grid
            .directions()
            .iter()
            .zip(&self.gs)
            .all(|(d, g)| dot(d, z) >= g.eval(x) - tol)
    }

    /// Level set `{x : F(x) <= z}` as an H-form polyhedron: one row per
    /// affine piece per direction. Convex mode only.
    pub fn level_set(&self, z: &[f64]) -> Result<Polyhedron, SetFnError> {
        assert_eq!(z.len(), self.dim_z());
        let mut p = Polyhedron::new(self.dim_x);
        for (d, g) in self.grid.directions().iter().zip(&self.gs) {
            let ma = match g {
                DirectionFn::MaxAffine(ma) => ma,
                DirectionFn::Pwl1D(_) => return Err(SetFnError::NotConvexMode),
            };
            let rhs = dot(d, z);
            for (a, b) in ma.pieces() {
                p.push(a.clone(), rhs - b);
            }
        }
        Ok(p)
    }

    /// Level set as an interval, for one-dimensional domains (covers the
    /// quasiconvex general mode). `None` is the empty level set.
    pub fn level_interval(&self, z: &[f64]) -> Result<Option<(ExtReal, ExtReal)>, SetFnError> {
        if self.dim_x != 1 {
            return Err(SetFnError::NotOneDimensional);
        }
        assert_eq!(z.len(), self.dim_z());
        let mut lo = ExtReal::NegInf;
        let mut hi = ExtReal::PosInf;
        for (d, g) in self.grid.directions().iter().zip(&self.gs) {
            let c = dot(d, z);
            let seg = match g {
                DirectionFn::Pwl1D(p) => p.level_interval(c),
                DirectionFn::MaxAffine(ma) => maxaffine_level_interval_1d(ma, c),
            };
            let (a, b) = match seg {
                None => return Ok(None),
                Some(seg) => seg,
            };
            if a > lo {
                lo = a;
            }
            if b < hi {
                hi = b;
            }
        }
        if let (ExtReal::Finite(a), ExtReal::Finite(b)) = (lo, hi) {
            if a > b {
                return Ok(None);
            }
        }
        Ok(Some((lo, hi)))
    }

    /// All distinct slope vectors across the model's affine pieces; the
    /// natural seed for dual grids that make reconstructions exact.
    pub fn active_slopes(&self) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for g in &self.gs {
            match g {
                DirectionFn::MaxAffine(ma) => {
                    for (a, _) in ma.pieces() {
                        if !out.contains(a) {
                            out.push(a.clone());
                        }
                    }
                }
                DirectionFn::Pwl1D(p) => {
                    for s in p.slope_sequence() {
                        let v = vec![s];
                        if !out.contains(&v) {
                            out.push(v);
                        }
                    }
                }
            }
        }
        out
    }
}

/// `{x in [d0, d1] : a x + b <= c}`, `None` when empty.
fn affine_level(
    a: f64,
    b: f64,
    c: f64,
    d0: ExtReal,
    d1: ExtReal,
) -> Option<(ExtReal, ExtReal)> {
    let (lo, hi) = if a == 0.0 {
        if b <= c {
            (d0, d1)
        } else {
            return None;
        }
    } else {
        let t = ExtReal::Finite((c - b) / a);
        if a > 0.0 {
            (d0, if t < d1 { t } else { d1 })
        } else {
            (if t > d0 { t } else { d0 }, d1)
        }
    };
    if let (ExtReal::Finite(x), ExtReal::Finite(y)) = (lo, hi) {
        if x > y {
            return None;
        }
    }
    Some((lo, hi))
}

/// `{x : max_j a_j x + b_j <= c}` for a 1D max-affine function.
fn maxaffine_level_interval_1d(g: &MaxAffine, c: f64) -> Option<(ExtReal, ExtReal)> {
    assert_eq!(g.dim(), 1);
    let mut lo = ExtReal::NegInf;
    let mut hi = ExtReal::PosInf;
    for (a, b) in g.pieces() {
        let a = a[0];
        if a == 0.0 {
            if *b > c {
                return None;
            }
        } else if a > 0.0 {
            let t = ExtReal::Finite((c - b) / a);
            if t < hi {
                hi = t;
            }
        } else {
            let t = ExtReal::Finite((c - b) / a);
            if t > lo {
                lo = t;
            }
        }
    }
    if let (ExtReal::Finite(a), ExtReal::Finite(b)) = (lo, hi) {
        if a > b {
            return None;
        }
    }
    Some((lo, hi))
}

// ---------------------------------------------------------------------------
// Sampled property checks.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Increasing,
    Quasiconvex,
    Convex,
    Quasiconcave,
    Concave,
}

pub const LAMBDAS: [f64; 3] = [0.25, 0.5, 0.75];

/// Seeded sampler specification: uniform pairs in a box.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleSpec {
    pub seed: u64,
    pub pairs: usize,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl SampleSpec {
    pub fn cube(seed: u64, pairs: usize, dim: usize, lo: f64, hi: f64) -> Self {
        SampleSpec { seed, pairs, lo: vec![lo; dim], hi: vec![hi; dim] }
    }

    pub fn sample_pairs(&self) -> Vec<(Vec<f64>, Vec<f64>)> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.seed);
        let dim = self.lo.len();
        (0..self.pairs)
            .map(|_| {
                let mut p = || -> Vec<f64> {
                    (0..dim).map(|i| rng.gen_range(self.lo[i]..=self.hi[i])).collect()
                };
                (p(), p())
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyViolation {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub lambda: f64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub property: Property,
    pub checked: usize,
    pub violations: Vec<PropertyViolation>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check a lattice property on explicit pairs with the standard mixing
/// weights, via the set algebra on evaluated images.
pub fn check_property_pairs(
    f: &SetValuedFn,
    property: Property,
    pairs: &[(Vec<f64>, Vec<f64>)],
    tol: f64,
) -> CheckReport {
    let mut checked = 0;
    let mut violations = Vec::new();
    for (x, y) in pairs {
        let fx = f.eval(x);
        let fy = f.eval(y);
        match property {
            Property::Increasing => {
                checked += 1;
                // Orient the pair along the domain cone when possible.
                let (lo, hivec) = if x.iter().zip(y).all(|(a, b)| a <= b) {
                    (x, y)
                } else if y.iter().zip(x).all(|(a, b)| a <= b) {
                    (y, x)
                } else {
                    continue;
                };
                let flo = f.eval(lo);
                let fhi = f.eval(hivec);
                if !flo.leq(&fhi, tol).unwrap() {
                    violations.push(PropertyViolation {
                        x: lo.clone(),
                        y: hivec.clone(),
                        lambda: 1.0,
                        detail: "F(x) <= F(y) fails for x <= y".into(),
                    });
                }
            }
            _ => {
                for &lam in &LAMBDAS {
                    checked += 1;
                    let mid: Vec<f64> =
                        x.iter().zip(y).map(|(a, b)| lam * a + (1.0 - lam) * b).collect();
                    let fmid = f.eval(&mid);
                    let ok = match property {
                        Property::Quasiconvex => {
                            let sup = SupportedUpperSet::sup(&[&fx, &fy]).unwrap();
                            fmid.leq(&sup, tol).unwrap()
                        }
                        Property::Convex => {
                            let comb = fx
                                .scale(lam)
                                .unwrap()
                                .minkowski(&fy.scale(1.0 - lam).unwrap())
                                .unwrap();
                            fmid.leq(&comb, tol).unwrap()
                        }
                        Property::Quasiconcave => {
                            let inf = SupportedUpperSet::inf(&[&fx, &fy]).unwrap();
                            inf.leq(&fmid, tol).unwrap()
                        }
                        Property::Concave => {
                            let comb = fx
                                .scale(lam)
                                .unwrap()
                                .minkowski(&fy.scale(1.0 - lam).unwrap())
                                .unwrap();
                            comb.leq(&fmid, tol).unwrap()
                        }
                        Property::Increasing => unreachable!(),
                    };
                    if !ok {
                        violations.push(PropertyViolation {
                            x: x.clone(),
                            y: y.clone(),
                            lambda: lam,
                            detail: format!("{property:?} inequality fails"),
                        });
                    }
                }
            }
        }
    }
    CheckReport { property, checked, violations }
}

/// Sampled property check; for quasiconvexity the level-set characterization
/// (members of a level set stay in it under mixing) is cross-checked too.
pub fn check_property(
    f: &SetValuedFn,
    property: Property,
    spec: &SampleSpec,
    tol: f64,
) -> CheckReport {
    let pairs = spec.sample_pairs();
    let mut report = check_property_pairs(f, property, &pairs, tol);
    if property == Property::Quasiconvex {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(spec.seed ^ 0x9d);
        for (x, y) in &pairs {
            let z: Vec<f64> = (0..f.dim_z()).map(|_| rng.gen_range(-6.0..6.0)).collect();
            if f.contains(x, &z, tol) && f.contains(y, &z, tol) {
                for &lam in &LAMBDAS {
                    report.checked += 1;
                    let mid: Vec<f64> =
                        x.iter().zip(y).map(|(a, b)| lam * a + (1.0 - lam) * b).collect();
                    if !f.contains(&mid, &z, tol) {
                        report.violations.push(PropertyViolation {
                            x: x.clone(),
                            y: y.clone(),
                            lambda: lam,
                            detail: format!("level set at {z:?} not convex"),
                        });
                    }
                }
            }
        }
    }
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct InverseReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl InverseReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Inverse-consistency suite for increasing convex-mode models: the level
/// set / graph flip identity, monotonicity of level sets along the cone, and
/// the convexity transfer between the epigraph and the flipped hypograph.
pub fn inverse_consistency(f: &SetValuedFn, spec: &SampleSpec, tol: f64) -> InverseReport {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(spec.seed);
    let mut checked = 0;
    let mut violations = Vec::new();
    let n = f.dim_z();
    for _ in 0..spec.pairs {
        let x: Vec<f64> = (0..f.dim_x())
            .map(|i| rng.gen_range(spec.lo[i]..=spec.hi[i]))
            .collect();
        let z: Vec<f64> = (0..n).map(|_| rng.gen_range(-6.0..6.0)).collect();

        // Graph flip: x in level(z) iff z in F(x). Exact: both sides are
        // the same inequalities.
        checked += 1;
        let level = f.level_set(&z).expect("inverse consistency needs convex mode");
        let lhs = level.contains(&x, tol);
        let rhs = f.eval(&x).contains(&z, tol);
        if lhs != rhs {
            violations.push(format!("graph flip differs at x={x:?} z={z:?}"));
        }

        // Level-set monotonicity: z <= z2 gives level(z) ⊆ level(z2),
        // sampled by membership of x.
        checked += 1;
        let k: Vec<f64> = {
            let gens = f.cone().generators();
            let g = &gens[rng.gen_range(0..gens.len())];
            let s: f64 = rng.gen_range(0.0..2.0);
            g.iter().map(|v| v * s).collect()
        };
        let z2: Vec<f64> = z.iter().zip(&k).map(|(a, b)| a + b).collect();
        let level2 = f.level_set(&z2).unwrap();
        if level.contains(&x, tol) && !level2.contains(&x, tol) {
            violations.push(format!("level sets not nested at z={z:?} -> {z2:?}"));
        }

        // Lower-cone monotonicity of a level set: members stay members when
        // moved down the domain cone.
        checked += 1;
        if level.contains(&x, tol) {
            let cgen = {
                // The domain cone is the componentwise order here.
                let mut c = vec![0.0; f.dim_x()];
                let i = rng.gen_range(0..f.dim_x());
                c[i] = rng.gen_range(0.0..2.0);
                c
            };
            let down: Vec<f64> = x.iter().zip(&cgen).map(|(a, b)| a - b).collect();
            if !level.contains(&down, tol) {
                violations.push(format!("level set not lower-monotone at x={x:?} z={z:?}"));
            }
        }

        // Epigraph/hypograph flip: identical constraint sets.
        checked += 1;
        let epi = f.contains(&x, &z, tol);
        let hypo_flip = level.contains(&x, tol);
        if epi != hypo_flip {
            violations.push(format!("epi/hypo flip differs at x={x:?} z={z:?}"));
        }
    }
    InverseReport { checked, violations }
}

/// JSON model description: `{"directions": [[...]], "g": [{"maxaffine":
/// [[[slope...], intercept], ...]} | {"pwl1d": {...}}, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FnSpec {
    pub directions: Vec<Vec<f64>>,
    pub g: Vec<DirectionFnSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionFnSpec {
    MaxAffine(Vec<(Vec<f64>, f64)>),
    Pwl1D { xs: Vec<f64>, ys: Vec<f64>, left_slope: f64, right_slope: f64 },
}

impl FnSpec {
    pub fn build(&self, cone: &PolyCone) -> Result<SetValuedFn, SetFnError> {
        if self.directions.is_empty() {
            return Err(SetFnError::LengthMismatch);
        }
        let grid = DirectionGrid::from_unit_directions(cone.dim(), self.directions.clone());
        let gs = self
            .g
            .iter()
            .map(|spec| match spec {
                DirectionFnSpec::MaxAffine(pieces) => {
                    Ok(DirectionFn::MaxAffine(MaxAffine::new(pieces.clone())))
                }
                DirectionFnSpec::Pwl1D { xs, ys, left_slope, right_slope } => Ok(
                    DirectionFn::Pwl1D(Pwl1D::new(xs.clone(), ys.clone(), *left_slope, *right_slope)?),
                ),
            })
            .collect::<Result<Vec<_>, SetFnError>>()?;
        SetValuedFn::new(cone.clone(), grid, gs)
    }
}

/// The scalar hinge model `F(x) = [max(x, 0), inf)`.
pub fn relu_model() -> SetValuedFn {
    let cone = PolyCone::axis(1);
    let grid = cone.polar_grid(1).unwrap();
    SetValuedFn::new(
        cone,
        grid,
        vec![DirectionFn::MaxAffine(MaxAffine::new_1d(&[(1.0, 0.0), (0.0, 0.0)]))],
    )
    .unwrap()
}

/// The scalar vee model `F(x) = [max(-x, 2x), inf)`.
pub fn vee_model() -> SetValuedFn {
    let cone = PolyCone::axis(1);
    let grid = cone.polar_grid(1).unwrap();
    SetValuedFn::new(
        cone,
        grid,
        vec![DirectionFn::MaxAffine(MaxAffine::new_1d(&[(-1.0, 0.0), (2.0, 0.0)]))],
    )
    .unwrap()
}

/// Quasiconvex but not convex: `x -> min(|x|, 1 + |x| / 2)`.
pub fn quasiconvex_1d_model() -> SetValuedFn {
    let cone = PolyCone::axis(1);
    let grid = cone.polar_grid(1).unwrap();
    let pwl = Pwl1D::new(vec![-2.0, 0.0, 2.0], vec![2.0, 0.0, 2.0], -0.5, 0.5).unwrap();
    SetValuedFn::new(cone, grid, vec![DirectionFn::Pwl1D(pwl)]).unwrap()
}
