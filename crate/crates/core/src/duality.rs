//! Dual representations of set-valued quasiconvex and convex functions:
//! minimal penalty values from support functions of level sets, the induced
//! maximal-risk membership oracle, reconstruction of the function from its
//! dual data, the conjugate route through half-space thresholds, and the
//! comparison and structural checks around them.
//!
//! Right-continuous values are produced by a two-point probe along a fixed
//! interior direction, anchored at the direct value: on piecewise-linear
//! data the probes extrapolate the active linear piece exactly, the anchor
//! detects jumps, and probe class disagreement flags a breakpoint hit.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::linprog::{self, dot, ExtReal};
use crate::setfun::{SetFnError, SetValuedFn};
use crate::suppset::HalfSpaceS;

#[derive(Debug, Error)]
pub enum DualityError {
    #[error("right-probe disagreement at z = {z:?}, x* = {x_star:?}: {v1} vs {v2}")]
    NonConvergence { z: Vec<f64>, x_star: Vec<f64>, v1: ExtReal, v2: ExtReal },
    #[error("degenerate model: a direction scalarization is identically +inf")]
    DegenerateModel,
    #[error(transparent)]
    Model(#[from] SetFnError),
}

/// Probe schedule for right- and left-continuous versions: two offsets along
/// a fixed interior direction, plus the agreement tolerance.
#[derive(Clone, Debug, Serialize)]
pub struct EpsSchedule {
    pub eps: [f64; 2],
    pub k0: Vec<f64>,
    pub agree_tol: f64,
}

impl EpsSchedule {
    /// Defaults: offsets `1e-3`, `1e-6` along `(1, ..., 1)/sqrt(n)`.
    pub fn default_for_dim(dim_z: usize) -> Self {
        let s = 1.0 / (dim_z as f64).sqrt();
        EpsSchedule { eps: [1e-3, 1e-6], k0: vec![s; dim_z], agree_tol: 1e-6 }
    }

    pub fn with_eps(mut self, eps: [f64; 2]) -> Self {
        assert!(eps[0] > eps[1] && eps[1] > 0.0);
        self.eps = eps;
        self
    }
}

/// A probed one-sided value: `near_boundary` is set when the direct value at
/// the anchor point disagrees with the probe limit, i.e. the anchor sits on
/// or within one probe step of a breakpoint.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AlphaValue {
    pub value: ExtReal,
    pub near_boundary: bool,
}

type CacheKey = (Vec<u64>, Vec<u64>);

/// Penalty values `alpha(x*, z)` for one model: support functions of level
/// sets with the right-continuous probe applied in `z`. The memo cache is
/// the only mutable state; entries are deterministic, so last-write-wins
/// fills are safe.
pub struct PenaltyTable {
    f: SetValuedFn,
    schedule: EpsSchedule,
    tol: f64,
    sigma_cache: Mutex<HashMap<CacheKey, ExtReal>>,
}

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

impl PenaltyTable {
    pub fn new(f: SetValuedFn, schedule: EpsSchedule, tol: f64) -> Self {
        assert_eq!(schedule.k0.len(), f.dim_z());
        PenaltyTable { f, schedule, tol, sigma_cache: Mutex::new(HashMap::new()) }
    }

    pub fn with_defaults(f: SetValuedFn) -> Self {
        let schedule = EpsSchedule::default_for_dim(f.dim_z());
        PenaltyTable::new(f, schedule, crate::DEFAULT_TOL)
    }

    pub fn model(&self) -> &SetValuedFn {
        &self.f
    }

    pub fn schedule(&self) -> &EpsSchedule {
        &self.schedule
    }

    /// Support value of the level set at `z` in direction `x*`; `-inf` iff
    /// the level set is empty.
    ///
    /// The direction is scale-normalized before the LP and the value scaled
    /// back, so positive multiples of `x*` share one optimization; together
    /// with the value being a fresh dot product at the optimal vertex this
    /// makes positive homogeneity exact on rational dual vectors.
    pub fn sigma(&self, z: &[f64], x_star: &[f64]) -> ExtReal {
        let gamma = x_star.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if gamma == 0.0 || gamma == 1.0 {
            return self.sigma_raw(z, x_star);
        }
        let unit: Vec<f64> = x_star.iter().map(|v| v / gamma).collect();
        self.sigma_raw(z, &unit).scale_pos(gamma)
    }

    fn sigma_raw(&self, z: &[f64], x_star: &[f64]) -> ExtReal {
        let key = (bits(z), bits(x_star));
        if let Some(v) = self.sigma_cache.lock().unwrap().get(&key) {
            return *v;
        }
        let v = if self.f.is_convex_mode() {
            let level = self.f.level_set(z).expect("convex mode");
            linprog::lp_support(&level, x_star)
        } else {
            let interval = self.f.level_interval(z).expect("general mode needs 1D domain");
            interval_support(interval, x_star[0])
        };
        self.sigma_cache.lock().unwrap().insert(key, v);
        v
    }

    fn probe_point(&self, z: &[f64], eps: f64) -> Vec<f64> {
        z.iter().zip(&self.schedule.k0).map(|(a, k)| a + eps * k).collect()
    }

    /// Right-continuous penalty value `inf over z' > z` of `sigma(z')`,
    /// probed at `z + eps k0` and anchored at `sigma(z)`.
    pub fn alpha(&self, z: &[f64], x_star: &[f64]) -> Result<AlphaValue, DualityError> {
        let v0 = self.sigma(z, x_star);
        let v1 = self.sigma(&self.probe_point(z, self.schedule.eps[0]), x_star);
        let v2 = self.sigma(&self.probe_point(z, self.schedule.eps[1]), x_star);
        self.one_sided(z, x_star, v0, v1, v2)
    }

    /// Left-continuous penalty value through the full right-probed pipeline:
    /// `sup over z' < z` of `alpha(x*, z')`, probed from below.
    pub fn alpha_minus_via_alpha(&self, z: &[f64], x_star: &[f64]) -> Result<AlphaValue, DualityError> {
        let v0 = self.alpha(z, x_star)?.value;
        let v1 = self.alpha(&self.probe_point(z, -self.schedule.eps[0]), x_star)?.value;
        let v2 = self.alpha(&self.probe_point(z, -self.schedule.eps[1]), x_star)?.value;
        self.one_sided(z, x_star, v0, v1, v2)
    }

    /// Left-continuous penalty value through the union of strictly smaller
    /// level sets: `sup over z' < z` of `sigma(z')`, probed from below.
    /// Independent of the right-probe path above.
    pub fn alpha_minus_via_union(&self, z: &[f64], x_star: &[f64]) -> Result<AlphaValue, DualityError> {
        let v0 = self.sigma(z, x_star);
        let v1 = self.sigma(&self.probe_point(z, -self.schedule.eps[0]), x_star);
        let v2 = self.sigma(&self.probe_point(z, -self.schedule.eps[1]), x_star);
        self.one_sided(z, x_star, v0, v1, v2)
    }

    fn one_sided(
        &self,
        z: &[f64],
        x_star: &[f64],
        v0: ExtReal,
        v1: ExtReal,
        v2: ExtReal,
    ) -> Result<AlphaValue, DualityError> {
        match (v1, v2) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => {
                let [e1, e2] = self.schedule.eps;
                let extrap = b + (b - a) * (e2 / (e1 - e2));
                if let ExtReal::Finite(direct) = v0 {
                    if (extrap - direct).abs() <= self.schedule.agree_tol * (1.0 + direct.abs()) {
                        // Consistent with one linear piece through the
                        // anchor: the one-sided limit is the direct value.
                        return Ok(AlphaValue { value: v0, near_boundary: false });
                    }
                }
                Ok(AlphaValue { value: ExtReal::Finite(extrap), near_boundary: true })
            }
            (a, b) if a == b => {
                let near = match v0 {
                    ExtReal::Finite(_) => true,
                    inf => inf != a,
                };
                Ok(AlphaValue { value: a, near_boundary: near })
            }
            (v1, v2) => Err(DualityError::NonConvergence {
                z: z.to_vec(),
                x_star: x_star.to_vec(),
                v1,
                v2,
            }),
        }
    }

    /// Risk membership `z in R(x*, s)`: `s <= alpha(x*, z)`, with `+inf`
    /// accepting every level and `-inf` rejecting every level.
    pub fn risk_contains(&self, x_star: &[f64], s: f64, z: &[f64]) -> Result<bool, DualityError> {
        let a = self.alpha(z, x_star)?;
        Ok(match a.value {
            ExtReal::PosInf => true,
            ExtReal::NegInf => false,
            ExtReal::Finite(v) => s <= v + self.tol,
        })
    }

    /// Strict-dominance witness `R^+(x*, s) < z`, probed one step down the
    /// interior direction.
    pub fn strict_witness(&self, x_star: &[f64], s: f64, z: &[f64]) -> Result<bool, DualityError> {
        let down = self.probe_point(z, -self.schedule.eps[0]);
        let a = self.alpha(&down, x_star)?;
        Ok(match a.value {
            ExtReal::PosInf => true,
            ExtReal::NegInf => false,
            ExtReal::Finite(v) => s < v,
        })
    }
}

/// `sup { x* t : t in [lo, hi] }` for an interval level set; `-inf` if
/// empty.
fn interval_support(interval: Option<(ExtReal, ExtReal)>, x_star: f64) -> ExtReal {
    let (lo, hi) = match interval {
        None => return ExtReal::NegInf,
        Some(seg) => seg,
    };
    if x_star == 0.0 {
        return ExtReal::Finite(0.0);
    }
    if x_star > 0.0 {
        match hi {
            ExtReal::PosInf => ExtReal::PosInf,
            ExtReal::Finite(h) => ExtReal::Finite(x_star * h),
            ExtReal::NegInf => unreachable!("interval with hi = -inf"),
        }
    } else {
        match lo {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::Finite(l) => ExtReal::Finite(x_star * l),
            ExtReal::PosInf => unreachable!("interval with lo = +inf"),
        }
    }
}

/// Membership in the grid outer approximation of the reconstruction
/// `sup over x* of R(x*, <x*, x>)`: the point passes every dual direction's
/// risk test. Contains the true image for any grid and shrinks as the grid
/// refines.
pub fn qc_reconstruct_contains(
    table: &PenaltyTable,
    dual_grid: &[Vec<f64>],
    x: &[f64],
    z: &[f64],
) -> Result<bool, DualityError> {
    assert!(!dual_grid.is_empty(), "dual grid must be non-empty");
    for x_star in dual_grid {
        let s = dot(x_star, x);
        if !table.risk_contains(x_star, s, z)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `chi*(x*, -d)`: the convex conjugate of the direction scalarization
/// `g_d` at `x*`. Convex mode only.
pub fn chi_star(f: &SetValuedFn, x_star: &[f64], d_index: usize) -> Result<ExtReal, DualityError> {
    use crate::setfun::DirectionFn;
    match &f.direction_fns()[d_index] {
        DirectionFn::MaxAffine(g) => Ok(g.conjugate(x_star)),
        DirectionFn::Pwl1D(_) => Err(SetFnError::NotConvexMode.into()),
    }
}

/// Threshold of the conjugate half-space in direction `d`: the set is
/// `{z : <d, z> >= c}` with `c = -chi*(x*, -d)`. A `-inf` threshold is the
/// whole space (the conjugate degenerates on that dual pair); `+inf` is the
/// empty set, which only happens for a degenerate model.
pub fn fm_conjugate(f: &SetValuedFn, x_star: &[f64], d_index: usize) -> Result<ExtReal, DualityError> {
    Ok(chi_star(f, x_star, d_index)?.neg())
}

/// The conjugate set for one dual pair.
#[derive(Clone, Debug, PartialEq)]
pub enum FmSet {
    WholeSpace,
    Empty,
    Half(HalfSpaceS),
}

pub fn fm_halfspace(f: &SetValuedFn, x_star: &[f64], d_index: usize) -> Result<FmSet, DualityError> {
    let c = fm_conjugate(f, x_star, d_index)?;
    Ok(match c {
        ExtReal::NegInf => FmSet::WholeSpace,
        ExtReal::PosInf => FmSet::Empty,
        ExtReal::Finite(c) => {
            FmSet::Half(HalfSpaceS::new(f.grid().directions()[d_index].clone(), c))
        }
    })
}

/// Membership in the conjugate-route risk set `R~(x*, s)`: for every grid
/// direction `d`, `<d, z> >= s - chi*(x*, -d)`. Pairs with `chi* = +inf`
/// contribute the whole space and drop out; `chi* = -inf` rejects everything
/// and is flagged as a degenerate model.
pub fn fm_risk_contains(
    f: &SetValuedFn,
    x_star: &[f64],
    s: f64,
    z: &[f64],
    tol: f64,
) -> Result<bool, DualityError> {
    for (d_index, d) in f.grid().directions().iter().enumerate() {
        match chi_star(f, x_star, d_index)? {
            ExtReal::PosInf => continue,
            ExtReal::NegInf => return Err(DualityError::DegenerateModel),
            ExtReal::Finite(v) => {
                if dot(d, z) < s - v - tol {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Membership in the conjugate-route reconstruction
/// `sup over x*, d of { conjugate set + S(d, <x*, x>) }`.
pub fn fm_reconstruct_contains(
    f: &SetValuedFn,
    dual_grid: &[Vec<f64>],
    x: &[f64],
    z: &[f64],
    tol: f64,
) -> Result<bool, DualityError> {
    assert!(!dual_grid.is_empty(), "dual grid must be non-empty");
    for x_star in dual_grid {
        let s = dot(x_star, x);
        if !fm_risk_contains(f, x_star, s, z, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Comparisons and structural condition checks.
// ---------------------------------------------------------------------------

/// One sampled risk-membership query.
#[derive(Clone, Debug, Serialize)]
pub struct RiskSample {
    pub x_star: Vec<f64>,
    pub s: f64,
    pub z: Vec<f64>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CompareReport {
    pub checked: usize,
    pub violations: Vec<RiskSample>,
    pub errors: Vec<String>,
}

impl CompareReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.errors.is_empty()
    }
}

/// Verify `R_a <= R_b` on samples: every sample accepted by `R_b` must be
/// accepted by `R_a` (the first oracle's sets contain the second's).
pub fn maximality_compare(
    r_a: &mut dyn FnMut(&RiskSample) -> Result<bool, DualityError>,
    r_b: &mut dyn FnMut(&RiskSample) -> Result<bool, DualityError>,
    samples: &[RiskSample],
) -> CompareReport {
    let mut report = CompareReport::default();
    for sample in samples {
        report.checked += 1;
        match (r_a(sample), r_b(sample)) {
            (Ok(a), Ok(b)) => {
                if b && !a {
                    report.violations.push(sample.clone());
                }
            }
            (Err(e), _) | (_, Err(e)) => report.errors.push(e.to_string()),
        }
    }
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionsConfig {
    pub seed: u64,
    pub samples: usize,
    pub lambdas: Vec<f64>,
    pub radii: Vec<f64>,
    pub x_star_box: f64,
    pub z_box: f64,
    pub s_box: f64,
    /// Qualification margin for strict-dominance witnesses; perturbation
    /// stability is only asserted for witnesses at least this deep.
    pub witness_margin: f64,
}

impl ConditionsConfig {
    pub fn default_with_seed(seed: u64) -> Self {
        ConditionsConfig {
            seed,
            samples: 100,
            lambdas: vec![1.0 / 3.0, 0.5, 2.0, 5.0],
            radii: vec![1e-3, 1e-5],
            x_star_box: 2.0,
            z_box: 4.0,
            s_box: 3.0,
            witness_margin: 0.05,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ConditionsReport {
    pub homogeneity_checked: usize,
    pub homogeneity_violations: Vec<String>,
    pub quasiconcavity_checked: usize,
    pub quasiconcavity_violations: Vec<String>,
    pub openness_witnesses: usize,
    pub openness_violations: Vec<String>,
    pub range_checked: usize,
    pub range_violations: Vec<String>,
    pub errors: Vec<String>,
}

impl ConditionsReport {
    pub fn passed(&self) -> bool {
        self.homogeneity_violations.is_empty()
            && self.quasiconcavity_violations.is_empty()
            && self.openness_violations.is_empty()
            && self.range_violations.is_empty()
            && self.errors.is_empty()
    }
}

/// Structural conditions of the maximal-risk oracle: exact positive
/// homogeneity `R(l x*, s) = R(x*, s / l)`, joint quasiconcavity through
/// midpoints of rejected pairs, perturbation stability of strict-dominance
/// witnesses, and invariance of the attainable-level set across dual
/// directions.
pub fn maximal_conditions_check(table: &PenaltyTable, cfg: &ConditionsConfig) -> ConditionsReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = ConditionsReport::default();
    let m = table.model().dim_x();
    let n = table.model().dim_z();
    let rand_vec = |rng: &mut ChaCha8Rng, dim: usize, half: f64| -> Vec<f64> {
        (0..dim).map(|_| rng.gen_range(-half..=half)).collect()
    };
    // Homogeneity is asserted bit-exactly, so its dual vectors come from the
    // integer lattice (the class the shipped dual grids live in).
    let rand_int_vec = |rng: &mut ChaCha8Rng, dim: usize| -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2i32..=2) as f64).collect();
            if v.iter().any(|c| *c != 0.0) {
                return v;
            }
        }
    };

    for _ in 0..cfg.samples {
        let x_star = rand_int_vec(&mut rng, m);
        let z = rand_vec(&mut rng, n, cfg.z_box);
        let s: f64 = rng.gen_range(-cfg.s_box..=cfg.s_box);

        // Homogeneity: exact in both the membership and the value.
        for &lam in &cfg.lambdas {
            report.homogeneity_checked += 1;
            let scaled: Vec<f64> = x_star.iter().map(|v| lam * v).collect();
            let lhs = table.alpha(&z, &scaled);
            let rhs = table.alpha(&z, &x_star);
            match (lhs, rhs) {
                (Ok(a), Ok(b)) => {
                    if a.value != b.value.scale_pos(lam) {
                        report.homogeneity_violations.push(format!(
                            "alpha({lam} x*, z) = {} but {lam} alpha(x*, z) = {} at x*={x_star:?} z={z:?}",
                            a.value,
                            b.value.scale_pos(lam)
                        ));
                    }
                    let mem_l = table.risk_contains(&scaled, s, &z);
                    let mem_r = table.risk_contains(&x_star, s / lam, &z);
                    if let (Ok(ml), Ok(mr)) = (mem_l, mem_r) {
                        if ml != mr {
                            report.homogeneity_violations.push(format!(
                                "membership differs for lambda {lam} at x*={x_star:?} s={s} z={z:?}"
                            ));
                        }
                    }
                }
                (Err(e), _) | (_, Err(e)) => report.errors.push(e.to_string()),
            }
        }

        // Joint quasiconcavity: rejected pairs stay rejected on the segment.
        let x2 = rand_vec(&mut rng, m, cfg.x_star_box);
        let s2: f64 = rng.gen_range(-cfg.s_box..=cfg.s_box);
        let rej1 = table.risk_contains(&x_star, s, &z);
        let rej2 = table.risk_contains(&x2, s2, &z);
        if let (Ok(false), Ok(false)) = (rej1, rej2) {
            for lam in [0.25, 0.5, 0.75] {
                report.quasiconcavity_checked += 1;
                let xm: Vec<f64> =
                    x_star.iter().zip(&x2).map(|(a, b)| lam * a + (1.0 - lam) * b).collect();
                let sm = lam * s + (1.0 - lam) * s2;
                match table.risk_contains(&xm, sm, &z) {
                    Ok(true) => report.quasiconcavity_violations.push(format!(
                        "midpoint accepted: x1={x_star:?} s1={s} x2={x2:?} s2={s2} z={z:?} lam={lam}"
                    )),
                    Ok(false) => {}
                    Err(e) => report.errors.push(e.to_string()),
                }
            }
        }

        // Openness surrogate: qualified strict-dominance witnesses survive
        // perturbations of x* at every radius.
        let witness = deep_witness(table, &x_star, s, &z, cfg.witness_margin);
        if let Ok(true) = witness {
            report.openness_witnesses += 1;
            for &radius in &cfg.radii {
                for i in 0..m {
                    for sign in [-1.0, 1.0] {
                        let mut pert = x_star.clone();
                        pert[i] += sign * radius;
                        match table.strict_witness(&pert, s, &z) {
                            Ok(true) => {}
                            Ok(false) => report.openness_violations.push(format!(
                                "witness lost at radius {radius}: x*={x_star:?} s={s} z={z:?}"
                            )),
                            Err(e) => report.errors.push(e.to_string()),
                        }
                    }
                }
            }
        }

        // Range invariance: whether any level is attainable at z does not
        // depend on x*.
        report.range_checked += 1;
        let mut flags = Vec::new();
        for probe in [x_star.clone(), x2.clone(), vec![1.0; m], vec![-1.0; m]] {
            match table.alpha(&z, &probe) {
                Ok(a) => flags.push(a.value != ExtReal::NegInf),
                Err(e) => report.errors.push(e.to_string()),
            }
        }
        if flags.windows(2).any(|w| w[0] != w[1]) {
            report.range_violations.push(format!("attainability differs across x* at z={z:?}"));
        }
    }
    report
}

fn deep_witness(
    table: &PenaltyTable,
    x_star: &[f64],
    s: f64,
    z: &[f64],
    margin: f64,
) -> Result<bool, DualityError> {
    let down = table.probe_point(z, -table.schedule.eps[0]);
    let a = table.alpha(&down, x_star)?;
    Ok(match a.value {
        ExtReal::PosInf => true,
        ExtReal::NegInf => false,
        ExtReal::Finite(v) => s < v - margin,
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RouteReport {
    pub agreed: usize,
    pub skipped_near_boundary: usize,
    pub disagreements: Vec<String>,
}

impl RouteReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Uniqueness surrogate: the left-continuous penalty computed through the
/// right-probed pipeline must agree with the one computed directly from the
/// union of strictly smaller level sets. Samples whose probes straddle a
/// breakpoint are counted as skipped, not failed.
pub fn two_route_alpha_check(
    table: &PenaltyTable,
    seed: u64,
    samples: usize,
    tol: f64,
) -> RouteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RouteReport::default();
    let m = table.model().dim_x();
    let n = table.model().dim_z();
    for _ in 0..samples {
        let x_star: Vec<f64> = (0..m).map(|_| rng.gen_range(-2.0..=2.0)).collect();
        let z: Vec<f64> = (0..n).map(|_| rng.gen_range(-4.0..=4.0)).collect();
        let a = table.alpha_minus_via_alpha(&z, &x_star);
        let b = table.alpha_minus_via_union(&z, &x_star);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                if a.near_boundary || b.near_boundary {
                    report.skipped_near_boundary += 1;
                } else if a.value.approx_eq(b.value, tol * (1.0 + mag(b.value))) {
                    report.agreed += 1;
                } else {
                    report.disagreements.push(format!(
                        "routes differ at x*={x_star:?} z={z:?}: {} vs {}",
                        a.value, b.value
                    ));
                }
            }
            _ => report.skipped_near_boundary += 1,
        }
    }
    report
}

fn mag(v: ExtReal) -> f64 {
    v.as_f64().map(f64::abs).unwrap_or(0.0)
}

// ---------------------------------------------------------------------------
// Dual grids.
// ---------------------------------------------------------------------------

/// Deterministic sweep of dual directions: alternating-sign magnitudes in
/// one dimension, a full-circle sweep in two.
pub fn dual_grid_sweep(dim_x: usize, count: usize) -> Vec<Vec<f64>> {
    assert!(count >= 1);
    match dim_x {
        1 => (0..count)
            .map(|i| {
                let mag = 0.25 + 1.75 * (i / 2) as f64 / ((count / 2).max(1) as f64);
                vec![if i % 2 == 0 { mag } else { -mag }]
            })
            .collect(),
        2 => (0..count)
            .map(|i| {
                let th = 2.0 * std::f64::consts::PI * (i as f64) / (count as f64);
                vec![th.cos(), th.sin()]
            })
            .collect(),
        d => panic!("dual sweep unsupported in dimension {d}"),
    }
}

/// Sweep plus every active slope of the model, deduplicated; slope inclusion
/// is what makes the reconstructions exact on matched grids.
pub fn dual_grid_auto(f: &SetValuedFn, sweep_count: usize) -> Vec<Vec<f64>> {
    let mut grid = f.active_slopes();
    for d in dual_grid_sweep(f.dim_x(), sweep_count) {
        if !grid.iter().any(|g| {
            g.len() == d.len() && g.iter().zip(&d).all(|(a, b)| (a - b).abs() <= 1e-12)
        }) {
            grid.push(d);
        }
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfun::{quasiconvex_1d_model, relu_model, vee_model};

    fn vee_table() -> PenaltyTable {
        PenaltyTable::with_defaults(vee_model())
    }

    fn relu_table() -> PenaltyTable {
        PenaltyTable::with_defaults(relu_model())
    }

    #[test]
    fn sigma_examples() {
        let vee = vee_table();
        assert_eq!(vee.sigma(&[4.0], &[1.0]), ExtReal::Finite(2.0));
        assert_eq!(vee.sigma(&[4.0], &[-1.0]), ExtReal::Finite(4.0));

        let relu = relu_table();
        assert_eq!(relu.sigma(&[-1.0], &[1.0]), ExtReal::NegInf);
        assert_eq!(relu.sigma(&[-1.0], &[-1.0]), ExtReal::NegInf);
        assert_eq!(relu.sigma(&[0.5], &[-1.0]), ExtReal::PosInf);
    }

    #[test]
    fn alpha_equals_sigma_on_continuous_data() {
        let vee = vee_table();
        for z in [0.0, 0.1, 1.0, 2.5, 4.0] {
            for xs in [-2.0, -1.0, 0.5, 1.0, 2.0] {
                let a = vee.alpha(&[z], &[xs]).unwrap();
                assert!(!a.near_boundary, "z={z} x*={xs}");
                assert_eq!(a.value, vee.sigma(&[z], &[xs]), "z={z} x*={xs}");
            }
        }
    }

    #[test]
    fn alpha_relu_boundary_semantics() {
        let relu = relu_table();
        // alpha(-1, z) = +inf for z >= 0, -inf for z < 0.
        assert_eq!(relu.alpha(&[0.0], &[-1.0]).unwrap().value, ExtReal::PosInf);
        assert_eq!(relu.alpha(&[2.0], &[-1.0]).unwrap().value, ExtReal::PosInf);
        assert_eq!(relu.alpha(&[-0.5], &[-1.0]).unwrap().value, ExtReal::NegInf);
        // Just below the breakpoint both probes land past it: the value is
        // the probe class with a near-boundary warning.
        let near = relu.alpha(&[-1e-9], &[-1.0]).unwrap();
        assert_eq!(near.value, ExtReal::PosInf);
        assert!(near.near_boundary);
        // Probes straddling the breakpoint signal non-convergence.
        let straddle = relu.alpha(&[-1e-4], &[-1.0]);
        assert!(matches!(straddle, Err(DualityError::NonConvergence { .. })));
    }

    #[test]
    fn risk_membership_examples() {
        let relu = relu_table();
        assert!(relu.risk_contains(&[-1.0], 1000.0, &[0.5]).unwrap());
        assert!(!relu.risk_contains(&[-1.0], 0.0, &[-0.5]).unwrap());

        // Vee: z in R(1, s) iff z >= 2 s (for z >= 0), plus z >= 0.
        let vee = vee_table();
        for (s, z, expect) in [(1.0, 2.0, true), (1.0, 1.9, false), (-3.0, 0.0, true)] {
            assert_eq!(vee.risk_contains(&[1.0], s, &[z]).unwrap(), expect, "s={s} z={z}");
        }
    }

    #[test]
    fn qc_reconstruction_exact_on_vee() {
        let vee = vee_table();
        let grid = vec![vec![-1.0], vec![1.0], vec![2.0]];
        for i in -20..=20 {
            let x = i as f64 / 4.0;
            for j in -20..=20 {
                let z = j as f64 / 4.0;
                let direct = vee.model().contains(&[x], &[z], 1e-9);
                let rec = qc_reconstruct_contains(&vee, &grid, &[x], &[z]).unwrap();
                assert_eq!(direct, rec, "x={x} z={z}");
            }
        }
    }

    #[test]
    fn coarse_grid_gives_outer_set() {
        let vee = vee_table();
        let coarse = vec![vec![0.0]];
        for i in -10..=10 {
            let x = i as f64 / 2.0;
            for j in -10..=10 {
                let z = j as f64 / 2.0;
                if vee.model().contains(&[x], &[z], 0.0) {
                    assert!(qc_reconstruct_contains(&vee, &coarse, &[x], &[z]).unwrap());
                }
            }
        }
    }

    #[test]
    fn chi_star_examples() {
        let vee = vee_model();
        // sup_x { x - max(-x, 2x) } = 0 at x = 0.
        assert_eq!(chi_star(&vee, &[1.0], 0).unwrap(), ExtReal::Finite(0.0));
        assert_eq!(fm_conjugate(&vee, &[1.0], 0).unwrap(), ExtReal::Finite(0.0));
        match fm_halfspace(&vee, &[1.0], 0).unwrap() {
            FmSet::Half(h) => {
                assert!(h.contains(&[0.0], 0.0));
                assert!(!h.contains(&[-0.1], 0.0));
            }
            other => panic!("expected half-space, got {other:?}"),
        }

        let relu = relu_model();
        // x* = -1: sup_x { -x - max(x, 0) } = +inf, whole-space conjugate set.
        assert_eq!(chi_star(&relu, &[-1.0], 0).unwrap(), ExtReal::PosInf);
        assert_eq!(fm_halfspace(&relu, &[-1.0], 0).unwrap(), FmSet::WholeSpace);
        // Conjugate at the origin is minus the infimum of g.
        assert_eq!(chi_star(&relu, &[0.0], 0).unwrap(), ExtReal::Finite(0.0));
    }

    #[test]
    fn fm_reconstruction_matches_direct_on_vee() {
        let vee = vee_model();
        let grid = vec![vec![-1.0], vec![1.0], vec![2.0]];
        for i in -20..=20 {
            let x = i as f64 / 4.0;
            for j in -20..=20 {
                let z = j as f64 / 4.0;
                let direct = vee.contains(&[x], &[z], 1e-9);
                let rec = fm_reconstruct_contains(&vee, &grid, &[x], &[z], 1e-9).unwrap();
                assert_eq!(direct, rec, "x={x} z={z}");
            }
        }
    }

    #[test]
    fn relu_fm_risk_accepts_everything_at_minus_one() {
        let relu = relu_model();
        for s in [-10.0, 0.0, 7.0] {
            for z in [-5.0, 0.0, 5.0] {
                assert!(fm_risk_contains(&relu, &[-1.0], s, &[z], 1e-9).unwrap());
            }
        }
    }

    #[test]
    fn maximality_relu_fm_below_maximal() {
        let relu_t = relu_table();
        let relu_f = relu_model();
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let samples: Vec<RiskSample> = (0..200)
            .map(|_| RiskSample {
                x_star: vec![-1.0],
                s: rng.gen_range(-4.0..=4.0),
                z: vec![rng.gen_range(-4.0..=4.0)],
            })
            .collect();
        let mut fm = |q: &RiskSample| fm_risk_contains(&relu_f, &q.x_star, q.s, &q.z, 1e-9);
        let mut qc = |q: &RiskSample| relu_t.risk_contains(&q.x_star, q.s, &q.z);
        let report = maximality_compare(&mut fm, &mut qc, &samples);
        assert!(report.passed(), "{:?}", report.violations.first());
        // And the conjugate route is strictly smaller somewhere.
        assert!(fm_risk_contains(&relu_f, &[-1.0], 0.0, &[-1.0], 1e-9).unwrap());
        assert!(!relu_t.risk_contains(&[-1.0], 0.0, &[-1.0]).unwrap());
    }

    #[test]
    fn conditions_suite_on_vee() {
        let vee = vee_table();
        let cfg = ConditionsConfig::default_with_seed(5);
        let report = maximal_conditions_check(&vee, &cfg);
        assert!(
            report.passed(),
            "hom={:?} qc={:?} open={:?} range={:?} err={:?}",
            report.homogeneity_violations.first(),
            report.quasiconcavity_violations.first(),
            report.openness_violations.first(),
            report.range_violations.first(),
            report.errors.first()
        );
        assert!(report.openness_witnesses > 0);
    }

    #[test]
    fn two_routes_agree_on_models() {
        for table in [vee_table(), relu_table(), PenaltyTable::with_defaults(quasiconvex_1d_model())]
        {
            let report = two_route_alpha_check(&table, 11, 200, 1e-6);
            assert!(report.passed(), "{:?}", report.disagreements.first());
            assert!(report.agreed > report.skipped_near_boundary);
        }
    }

    #[test]
    fn qc_route_on_quasiconvex_model() {
        let table = PenaltyTable::with_defaults(quasiconvex_1d_model());
        let grid = dual_grid_sweep(1, 41);
        let mut agree = 0;
        let mut total = 0;
        for i in 0..=40 {
            let x = -5.0 + i as f64 * 0.25;
            for j in 0..=40 {
                let z = -5.0 + j as f64 * 0.25;
                total += 1;
                let direct = table.model().contains(&[x], &[z], 1e-9);
                let rec = qc_reconstruct_contains(&table, &grid, &[x], &[z]).unwrap();
                if direct == rec {
                    agree += 1;
                }
                if direct {
                    assert!(rec, "outer approximation lost a member at x={x} z={z}");
                }
            }
        }
        assert!(agree * 100 >= total * 99, "agreement {agree}/{total}");
    }

    #[test]
    fn dual_grid_auto_contains_slopes() {
        let grid = dual_grid_auto(&vee_model(), 8);
        assert!(grid.contains(&vec![-1.0]) && grid.contains(&vec![2.0]));
        assert!(grid.len() >= 8);
    }
}
