//! Exact brute-force universe: monotone subsets of `Z^n` under the axis
//! cone `Z^n_+`, and increasing set-valued functions on integer boxes.
//!
//! Sets are stored by their minimal-generator antichain, so every operation
//! is exact integer arithmetic. Lower (`-K`-monotone) sets are stored with
//! coordinates negated, which turns all algebra into the upper-set case.
//!
//! The one-step version operators and the monotone closure are the lattice
//! analogues of their continuum counterparts. The integer order has covering
//! pairs (no point strictly between `x` and `x + e_i`), so identities whose
//! proofs pass through an intermediate point are checked in the quantified
//! form that the lattice actually satisfies; `lattice_check` lists them law
//! by law.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DiscreteError {
    #[error("orientation mismatch")]
    OrientationMismatch,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("domain box side must be at least 3 to take a version")]
    BoxTooSmall,
}

/// Orientation of a monotone set: an upper set (`A + K = A`) or a lower set
/// (`A - K = A`, stored with coordinates negated).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Orientation {
    Upper,
    Lower,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Upper => Orientation::Lower,
            Orientation::Lower => Orientation::Upper,
        }
    }
}

/// Monotone subset of `Z^n` represented by a minimal-generator antichain.
///
/// The empty generator list is the empty set; the full space has no
/// representation here (callers that need it must track it separately).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GridMonotoneSet {
    dim: usize,
    orientation: Orientation,
    /// Generators of the stored (upper-sense) set, canonical: antichain,
    /// lexicographically sorted.
    gens: Vec<Vec<i64>>,
}

fn dominates(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

fn canonical_antichain(mut gens: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    gens.sort();
    gens.dedup();
    let mut keep: Vec<Vec<i64>> = Vec::with_capacity(gens.len());
    for g in gens {
        if !keep.iter().any(|h| dominates(&g, h)) {
            keep.retain(|h| !dominates(h, &g));
            keep.push(g);
        }
    }
    keep.sort();
    keep
}

impl GridMonotoneSet {
    /// Upper set generated by `points`: the union of `p + Z^n_+`.
    pub fn upper(dim: usize, points: Vec<Vec<i64>>) -> Self {
        for p in &points {
            assert_eq!(p.len(), dim);
        }
        GridMonotoneSet { dim, orientation: Orientation::Upper, gens: canonical_antichain(points) }
    }

    /// Lower set generated by `points`: the union of `p - Z^n_+`.
    pub fn lower(dim: usize, points: Vec<Vec<i64>>) -> Self {
        let negated = points
            .into_iter()
            .map(|p| {
                assert_eq!(p.len(), dim);
                p.into_iter().map(|v| -v).collect()
            })
            .collect();
        GridMonotoneSet { dim, orientation: Orientation::Lower, gens: canonical_antichain(negated) }
    }

    pub fn empty(dim: usize, orientation: Orientation) -> Self {
        GridMonotoneSet { dim, orientation, gens: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generators in user coordinates (minimal points for upper sets,
    /// maximal points for lower sets).
    pub fn generators(&self) -> Vec<Vec<i64>> {
        match self.orientation {
            Orientation::Upper => self.gens.clone(),
            Orientation::Lower => {
                self.gens.iter().map(|g| g.iter().map(|v| -v).collect()).collect()
            }
        }
    }

    fn stored(&self) -> &[Vec<i64>] {
        &self.gens
    }

    fn from_stored(dim: usize, orientation: Orientation, gens: Vec<Vec<i64>>) -> Self {
        GridMonotoneSet { dim, orientation, gens: canonical_antichain(gens) }
    }

    fn to_stored_point(&self, z: &[i64]) -> Vec<i64> {
        match self.orientation {
            Orientation::Upper => z.to_vec(),
            Orientation::Lower => z.iter().map(|v| -v).collect(),
        }
    }

    /// Membership: the point dominates some generator.
    pub fn contains(&self, z: &[i64]) -> bool {
        assert_eq!(z.len(), self.dim);
        let p = self.to_stored_point(z);
        self.gens.iter().any(|g| dominates(&p, g))
    }

    /// Lattice order of the orientation: for upper sets `A <= B` iff
    /// `A ⊇ B`, for lower sets `A <= B` iff `A ⊆ B`.
    pub fn order_leq(&self, other: &GridMonotoneSet) -> Result<bool, DiscreteError> {
        if self.orientation != other.orientation {
            return Err(DiscreteError::OrientationMismatch);
        }
        if self.dim != other.dim {
            return Err(DiscreteError::DimensionMismatch);
        }
        let (container, contained) = match self.orientation {
            Orientation::Upper => (self, other),
            Orientation::Lower => (other, self),
        };
        Ok(contained
            .stored()
            .iter()
            .all(|g| container.gens.iter().any(|h| dominates(g, h))))
    }

    fn storage_union(dim: usize, orientation: Orientation, family: &[&GridMonotoneSet]) -> Self {
        let mut gens = Vec::new();
        for s in family {
            gens.extend_from_slice(s.stored());
        }
        Self::from_stored(dim, orientation, gens)
    }

    fn storage_intersection(
        dim: usize,
        orientation: Orientation,
        family: &[&GridMonotoneSet],
    ) -> Self {
        let mut acc: Option<Vec<Vec<i64>>> = None;
        for s in family {
            acc = Some(match acc {
                None => s.stored().to_vec(),
                Some(cur) => {
                    // Pairwise componentwise maxima generate the
                    // intersection of generated upper sets exactly.
                    let mut next = Vec::with_capacity(cur.len() * s.stored().len());
                    for a in &cur {
                        for b in s.stored() {
                            let m: Vec<i64> =
                                a.iter().zip(b).map(|(x, y)| (*x).max(*y)).collect();
                            next.push(m);
                        }
                    }
                    canonical_antichain(next)
                }
            });
        }
        Self::from_stored(dim, orientation, acc.unwrap_or_default())
    }

    /// Infimum in the monotone-set lattice: union for upper sets,
    /// intersection for lower sets.
    pub fn inf(family: &[&GridMonotoneSet]) -> Result<GridMonotoneSet, DiscreteError> {
        let first = family.first().expect("inf of an empty family");
        check_family(family)?;
        Ok(match first.orientation {
            Orientation::Upper => Self::storage_union(first.dim, first.orientation, family),
            Orientation::Lower => Self::storage_intersection(first.dim, first.orientation, family),
        })
    }

    /// Supremum in the monotone-set lattice: intersection for upper sets,
    /// union for lower sets.
    pub fn sup(family: &[&GridMonotoneSet]) -> Result<GridMonotoneSet, DiscreteError> {
        let first = family.first().expect("sup of an empty family");
        check_family(family)?;
        Ok(match first.orientation {
            Orientation::Upper => Self::storage_intersection(first.dim, first.orientation, family),
            Orientation::Lower => Self::storage_union(first.dim, first.orientation, family),
        })
    }

    /// Monotone closure: the smallest closure-stable monotone superset.
    ///
    /// For a generated upper set this is the principal set at the
    /// componentwise meet of the generators. Iterating the one-step corner
    /// fill `∩_i (A - e_i)` until it stabilizes yields exactly this set; a
    /// single pass is not idempotent on staircases with steps deeper than
    /// one. The empty set is fixed.
    pub fn bullet(&self) -> GridMonotoneSet {
        if self.gens.is_empty() {
            return self.clone();
        }
        let mut meet = self.gens[0].clone();
        for g in &self.gens[1..] {
            for (m, v) in meet.iter_mut().zip(g) {
                *m = (*m).min(*v);
            }
        }
        GridMonotoneSet { dim: self.dim, orientation: self.orientation, gens: vec![meet] }
    }

    /// One corner-fill pass `∩_i (A - e_i)` for upper sets. Exposed so tests
    /// can compare the closure against its defining iteration.
    pub fn bullet_step(&self) -> GridMonotoneSet {
        assert_eq!(self.orientation, Orientation::Upper);
        if self.gens.is_empty() {
            return self.clone();
        }
        let shifts: Vec<GridMonotoneSet> = (0..self.dim)
            .map(|i| {
                let gens = self
                    .gens
                    .iter()
                    .map(|g| {
                        let mut h = g.clone();
                        h[i] -= 1;
                        h
                    })
                    .collect();
                Self::from_stored(self.dim, self.orientation, gens)
            })
            .collect();
        let refs: Vec<&GridMonotoneSet> = shifts.iter().collect();
        Self::storage_intersection(self.dim, self.orientation, &refs)
    }

    /// Whether corner filling has already stabilized.
    pub fn is_bullet_closed(&self) -> bool {
        self.gens.len() <= 1
    }

    /// Translate the set by an integer vector.
    pub fn translate(&self, delta: &[i64]) -> GridMonotoneSet {
        assert_eq!(delta.len(), self.dim);
        let d: Vec<i64> = match self.orientation {
            Orientation::Upper => delta.to_vec(),
            Orientation::Lower => delta.iter().map(|v| -v).collect(),
        };
        let gens = self
            .gens
            .iter()
            .map(|g| g.iter().zip(&d).map(|(a, b)| a + b).collect())
            .collect();
        GridMonotoneSet { dim: self.dim, orientation: self.orientation, gens }
    }
}

fn check_family(family: &[&GridMonotoneSet]) -> Result<(), DiscreteError> {
    let first = family[0];
    for s in family {
        if s.orientation != first.orientation {
            return Err(DiscreteError::OrientationMismatch);
        }
        if s.dim != first.dim {
            return Err(DiscreteError::DimensionMismatch);
        }
    }
    Ok(())
}

/// Inclusive integer box `[lo, hi]^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl GridBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        assert_eq!(lo.len(), hi.len());
        assert!(lo.iter().zip(&hi).all(|(a, b)| a <= b), "empty box");
        GridBox { lo, hi }
    }

    pub fn cube(dim: usize, lo: i64, hi: i64) -> Self {
        GridBox::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.len() == self.dim()
            && p.iter().zip(&self.lo).all(|(v, l)| v >= l)
            && p.iter().zip(&self.hi).all(|(v, h)| v <= h)
    }

    pub fn volume(&self) -> usize {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l + 1) as usize)
            .product()
    }

    /// Lexicographic point iteration.
    pub fn points(&self) -> GridBoxIter {
        GridBoxIter { boxx: self.clone(), cur: Some(self.lo.clone()) }
    }

    pub fn shrink_lo(&self) -> Result<GridBox, DiscreteError> {
        if self.lo.iter().zip(&self.hi).any(|(l, h)| h - l + 1 < 3) {
            return Err(DiscreteError::BoxTooSmall);
        }
        Ok(GridBox::new(self.lo.iter().map(|v| v + 1).collect(), self.hi.clone()))
    }

    pub fn shrink_hi(&self) -> Result<GridBox, DiscreteError> {
        if self.lo.iter().zip(&self.hi).any(|(l, h)| h - l + 1 < 3) {
            return Err(DiscreteError::BoxTooSmall);
        }
        Ok(GridBox::new(self.lo.clone(), self.hi.iter().map(|v| v - 1).collect()))
    }

    fn index_of(&self, p: &[i64]) -> usize {
        debug_assert!(self.contains(p));
        let mut idx = 0usize;
        for ((v, l), h) in p.iter().zip(&self.lo).zip(&self.hi) {
            let side = (h - l + 1) as usize;
            idx = idx * side + (v - l) as usize;
        }
        idx
    }
}

pub struct GridBoxIter {
    boxx: GridBox,
    cur: Option<Vec<i64>>,
}

impl Iterator for GridBoxIter {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let cur = self.cur.take()?;
        let mut next = cur.clone();
        for i in (0..next.len()).rev() {
            if next[i] < self.boxx.hi[i] {
                next[i] += 1;
                self.cur = Some(next);
                return Some(cur);
            }
            next[i] = self.boxx.lo[i];
        }
        Some(cur)
    }
}

/// Set-valued function on an integer box, one monotone set per grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSetFunction {
    domain: GridBox,
    value_dim: usize,
    orientation: Orientation,
    values: Vec<GridMonotoneSet>,
}

impl GridSetFunction {
    pub fn build(
        domain: GridBox,
        value_dim: usize,
        orientation: Orientation,
        mut f: impl FnMut(&[i64]) -> GridMonotoneSet,
    ) -> Self {
        let mut values = Vec::with_capacity(domain.volume());
        for p in domain.points() {
            let v = f(&p);
            assert_eq!(v.dim(), value_dim);
            assert_eq!(v.orientation(), orientation);
            values.push(v);
        }
        GridSetFunction { domain, value_dim, orientation, values }
    }

    pub fn domain(&self) -> &GridBox {
        &self.domain
    }

    pub fn value_dim(&self) -> usize {
        self.value_dim
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn value(&self, x: &[i64]) -> &GridMonotoneSet {
        &self.values[self.domain.index_of(x)]
    }

    /// `x <= y` implies `F(x) <= F(y)` in the value lattice; checked along
    /// the unit edges of the box.
    pub fn is_increasing(&self) -> bool {
        for x in self.domain.points() {
            for i in 0..self.domain.dim() {
                let mut y = x.clone();
                y[i] += 1;
                if self.domain.contains(&y)
                    && !self.value(&x).order_leq(self.value(&y)).unwrap()
                {
                    return false;
                }
            }
        }
        true
    }

    /// Left-continuous version: supremum over the strictly smaller grid
    /// points, evaluated through the maximal one-step-down neighbours. The
    /// domain shrinks by one at the lower boundary.
    pub fn left_version(&self) -> Result<GridSetFunction, DiscreteError> {
        let dom = self.domain.shrink_lo()?;
        let dim = self.domain.dim();
        Ok(GridSetFunction::build(dom, self.value_dim, self.orientation, |x| {
            let nbrs: Vec<&GridMonotoneSet> = (0..dim)
                .map(|i| {
                    let mut y = x.to_vec();
                    y[i] -= 1;
                    self.value(&y)
                })
                .collect();
            GridMonotoneSet::sup(&nbrs).unwrap()
        }))
    }

    /// Right-continuous version: infimum over the strictly larger grid
    /// points through the minimal one-step-up neighbours, closed back into
    /// the monotone-closed class for upper-set values. The domain shrinks by
    /// one at the upper boundary.
    pub fn right_version(&self) -> Result<GridSetFunction, DiscreteError> {
        let dom = self.domain.shrink_hi()?;
        let dim = self.domain.dim();
        Ok(GridSetFunction::build(dom, self.value_dim, self.orientation, |x| {
            let nbrs: Vec<&GridMonotoneSet> = (0..dim)
                .map(|i| {
                    let mut y = x.to_vec();
                    y[i] += 1;
                    self.value(&y)
                })
                .collect();
            let inf = GridMonotoneSet::inf(&nbrs).unwrap();
            match self.orientation {
                Orientation::Upper => inf.bullet(),
                Orientation::Lower => inf,
            }
        }))
    }

    /// Inverse function `z -> {x : z in F(x)}` over a target box, with the
    /// value orientation flipped. Values are truncated to the domain box:
    /// the generators are the extremal in-box preimage points.
    pub fn inverse(&self, target: &GridBox) -> GridSetFunction {
        assert_eq!(target.dim(), self.value_dim);
        let flipped = self.orientation.flip();
        let dom_dim = self.domain.dim();
        GridSetFunction::build(target.clone(), dom_dim, flipped, |z| {
            let hits: Vec<Vec<i64>> = self
                .domain
                .points()
                .filter(|x| self.value(x).contains(z))
                .collect();
            match flipped {
                Orientation::Upper => GridMonotoneSet::upper(dom_dim, hits),
                Orientation::Lower => GridMonotoneSet::lower(dom_dim, hits),
            }
        })
    }

    /// Pointwise lattice order on the common part of the domains.
    pub fn pointwise_leq(&self, other: &GridSetFunction) -> Result<bool, DiscreteError> {
        for x in self.domain.points() {
            if other.domain.contains(&x) && !self.value(&x).order_leq(other.value(&x))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

// ---------------------------------------------------------------------------
// Seeded random instances.
// ---------------------------------------------------------------------------

fn random_point(rng: &mut ChaCha8Rng, lo: i64, hi: i64, dim: usize) -> Vec<i64> {
    (0..dim).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// Random monotone upper set with generators inside `[lo, hi]^dim`.
pub fn random_monotone_set(rng: &mut ChaCha8Rng, dim: usize, lo: i64, hi: i64) -> GridMonotoneSet {
    let count = rng.gen_range(0..=4);
    let gens = (0..count).map(|_| random_point(rng, lo, hi, dim)).collect();
    GridMonotoneSet::upper(dim, gens)
}

/// Deterministic-per-seed increasing function built by cumulative unioning
/// of random generator sets along the reversed domain order. Value
/// generators stay inside `[vlo, vhi]^value_dim`; `density = 0` yields the
/// constant empty function.
pub fn random_increasing(
    seed: u64,
    domain: &GridBox,
    value_dim: usize,
    vlo: i64,
    vhi: i64,
    density: f64,
) -> GridSetFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec<i64>> = domain.points().collect();
    let mut values: Vec<Option<GridMonotoneSet>> = vec![None; pts.len()];
    for x in pts.iter().rev() {
        let mut gens: Vec<Vec<i64>> = Vec::new();
        if density > 0.0 && rng.gen_bool(density) {
            for _ in 0..rng.gen_range(1..=2) {
                gens.push(random_point(&mut rng, vlo, vhi, value_dim));
            }
        }
        let mut fam: Vec<GridMonotoneSet> = vec![GridMonotoneSet::upper(value_dim, gens)];
        for i in 0..domain.dim() {
            let mut y = x.clone();
            y[i] += 1;
            if domain.contains(&y) {
                fam.push(values[domain.index_of(&y)].clone().unwrap());
            }
        }
        let refs: Vec<&GridMonotoneSet> = fam.iter().collect();
        values[domain.index_of(x)] = Some(GridMonotoneSet::inf(&refs).unwrap());
    }
    GridSetFunction {
        domain: domain.clone(),
        value_dim,
        orientation: Orientation::Upper,
        values: values.into_iter().map(Option::unwrap).collect(),
    }
}

/// Increasing function whose values are monotone-closed (single-generator)
/// sets: a componentwise nondecreasing point map.
pub fn random_filter_valued(
    seed: u64,
    domain: &GridBox,
    value_dim: usize,
    vlo: i64,
    vhi: i64,
    density: f64,
) -> GridSetFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    point_map_function(domain, value_dim, |_x, preds| {
        let mut base = vec![vlo; value_dim];
        for p in preds {
            for (b, v) in base.iter_mut().zip(p) {
                *b = (*b).max(*v);
            }
        }
        if density > 0.0 && rng.gen_bool(density) {
            for b in base.iter_mut() {
                *b = (*b + rng.gen_range(0..=2)).min(vhi);
            }
        }
        base
    })
}

/// Monotone-closed-valued function that is additionally left-continuous in
/// the one-step sense: at every point whose full set of down-neighbours lies
/// in the box, the value is forced to the supremum of those neighbours, so
/// the left version agrees with the function on the shrunken box.
pub fn random_left_continuous(
    seed: u64,
    domain: &GridBox,
    value_dim: usize,
    vlo: i64,
    vhi: i64,
    density: f64,
) -> GridSetFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = domain.lo().to_vec();
    point_map_function(domain, value_dim, |x, preds| {
        let interior = x.iter().zip(&lo).all(|(v, l)| v > l);
        let mut base = vec![vlo; value_dim];
        for p in preds {
            for (b, v) in base.iter_mut().zip(p) {
                *b = (*b).max(*v);
            }
        }
        if !interior && density > 0.0 && rng.gen_bool(density) {
            for b in base.iter_mut() {
                *b = (*b + rng.gen_range(0..=2)).min(vhi);
            }
        }
        base
    })
}

fn point_map_function(
    domain: &GridBox,
    value_dim: usize,
    mut f: impl FnMut(&[i64], &[Vec<i64>]) -> Vec<i64>,
) -> GridSetFunction {
    // Points are visited in lexicographic order, matching index_of.
    let mut points_done: Vec<Vec<i64>> = Vec::with_capacity(domain.volume());
    let mut values: Vec<GridMonotoneSet> = Vec::with_capacity(domain.volume());
    for x in domain.points() {
        let mut preds: Vec<Vec<i64>> = Vec::new();
        for i in 0..domain.dim() {
            let mut y = x.clone();
            y[i] -= 1;
            if domain.contains(&y) {
                preds.push(points_done[domain.index_of(&y)].clone());
            }
        }
        let v = f(&x, &preds);
        points_done.push(v.clone());
        values.push(GridMonotoneSet::upper(value_dim, vec![v]));
    }
    GridSetFunction {
        domain: domain.clone(),
        value_dim,
        orientation: Orientation::Upper,
        values,
    }
}

// ---------------------------------------------------------------------------
// Randomized identity suite.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct LatticeCheckConfig {
    pub seed: u64,
    pub instances: usize,
    pub dim_x: usize,
    pub dim_z: usize,
    pub box_side: i64,
    pub density: f64,
}

impl LatticeCheckConfig {
    pub fn new(seed: u64, instances: usize, dim_x: usize, dim_z: usize, box_side: i64) -> Self {
        assert!(box_side >= 3, "lattice checks need box side >= 3");
        LatticeCheckConfig { seed, instances, dim_x, dim_z, box_side, density: 0.55 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeViolation {
    pub law: String,
    pub instance: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeCheckReport {
    pub config: LatticeCheckConfig,
    pub checks: usize,
    pub violations: Vec<LatticeViolation>,
}

impl LatticeCheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exact identity suite over seeded random instances: monotone-closure laws,
/// complete-lattice laws of the monotone and monotone-closed sets, one-step
/// version-operator relations, the inversion round trip with its order
/// transposition, and domination transposition for function pairs.
///
/// Quantifier notes (the integer order has covering pairs):
/// - `version-separation` is checked for pairs with a strict intermediate
///   point, which is the hypothesis its proof actually uses;
/// - the version sandwich is checked as the two-sided bound
///   `F^- <= (F^+)^- <= F` (and dually), the equality form needs a dense
///   order;
/// - the strict transposition `c2` is an equivalence for one-dimensional
///   domains and an implication otherwise;
/// - right-continuity of the inverse is exact for value dimension >= 2.
pub fn lattice_check(cfg: &LatticeCheckConfig) -> LatticeCheckReport {
    let mut checks = 0usize;
    let mut violations: Vec<LatticeViolation> = Vec::new();
    let side = cfg.box_side;
    let (m, n) = (cfg.dim_x, cfg.dim_z);
    let xbox = GridBox::cube(m, 0, side - 1);
    let zbox = GridBox::cube(n, -1, side);

    for inst in 0..cfg.instances {
        let iseed = cfg.seed.wrapping_add((inst as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut rng = ChaCha8Rng::seed_from_u64(iseed);
        let fail = |law: &str, detail: String, violations: &mut Vec<LatticeViolation>| {
            violations.push(LatticeViolation { law: law.to_string(), instance: inst, detail });
        };

        // --- set-level laws ---
        let a = random_monotone_set(&mut rng, n, 0, side - 1);
        let b = random_monotone_set(&mut rng, n, 0, side - 1);
        let c = random_monotone_set(&mut rng, n, 0, side - 1);

        checks += 1;
        if !a.bullet().order_leq(&a).unwrap() {
            fail("closure-extensive", format!("{a:?}"), &mut violations);
        }
        checks += 1;
        if a.bullet().bullet() != a.bullet() {
            fail("closure-idempotent", format!("{a:?}"), &mut violations);
        }
        checks += 1;
        {
            // a' = a ∪ b is below a in the lattice order.
            let a2 = GridMonotoneSet::inf(&[&a, &b]).unwrap();
            if !a2.bullet().order_leq(&a.bullet()).unwrap() {
                fail("closure-monotone", format!("{a:?} {b:?}"), &mut violations);
            }
        }
        checks += 1;
        {
            let lhs = GridMonotoneSet::sup(&[&a, &b, &c]).unwrap().bullet();
            let fam = [a.bullet(), b.bullet(), c.bullet()];
            let rhs = GridMonotoneSet::sup(&[&fam[0], &fam[1], &fam[2]]).unwrap();
            if lhs != rhs {
                fail("closure-sup-commute", format!("{a:?} {b:?} {c:?}"), &mut violations);
            }
        }
        checks += 1;
        {
            // Infimum inside the monotone-closed class: close the union and
            // confirm it is the greatest closed lower bound.
            let (p, q) = (a.bullet(), b.bullet());
            let inf_k = GridMonotoneSet::inf(&[&p, &q]).unwrap().bullet();
            let mut ok = inf_k.is_bullet_closed()
                && inf_k.order_leq(&p).unwrap()
                && inf_k.order_leq(&q).unwrap();
            let d = c.bullet();
            if ok && d.order_leq(&p).unwrap() && d.order_leq(&q).unwrap() {
                ok = d.order_leq(&inf_k).unwrap();
            }
            if !ok {
                fail("closed-lattice-inf", format!("{p:?} {q:?}"), &mut violations);
            }
        }
        checks += 1;
        {
            let sup_ab = GridMonotoneSet::sup(&[&a, &b]).unwrap();
            let inf_ab = GridMonotoneSet::inf(&[&a, &b]).unwrap();
            let absorb1 = GridMonotoneSet::sup(&[&a, &inf_ab]).unwrap();
            let absorb2 = GridMonotoneSet::inf(&[&a, &sup_ab]).unwrap();
            let s1 = GridMonotoneSet::sup(&[&sup_ab, &c]).unwrap();
            let bc = GridMonotoneSet::sup(&[&b, &c]).unwrap();
            let s2 = GridMonotoneSet::sup(&[&a, &bc]).unwrap();
            if absorb1 != a || absorb2 != a || s1 != s2 {
                fail("lattice-laws", format!("{a:?} {b:?} {c:?}"), &mut violations);
            }
        }

        // --- inversion laws for general increasing functions ---
        let f = random_increasing(iseed ^ 0xf00d, &xbox, n, 0, side - 1, cfg.density);
        checks += 1;
        if !f.is_increasing() {
            fail("instance-increasing", format!("seed {iseed}"), &mut violations);
        }
        let g = f.inverse(&zbox);
        checks += 1;
        {
            let mut ok = true;
            'c1: for x in xbox.points() {
                for z in zbox.points() {
                    if f.value(&x).contains(&z) != g.value(&z).contains(&x) {
                        ok = false;
                        break 'c1;
                    }
                }
            }
            if !ok {
                fail("inverse-transpose", format!("seed {iseed}"), &mut violations);
            }
        }
        checks += 1;
        if !g.is_increasing() {
            fail("inverse-increasing", format!("seed {iseed}"), &mut violations);
        }
        checks += 1;
        if g.inverse(&xbox) != f {
            fail("inverse-roundtrip", format!("seed {iseed}"), &mut violations);
        }
        checks += 1;
        {
            // Shrink values by a fixed intersection; domination transposes.
            let t = random_monotone_set(&mut rng, n, 0, side - 1);
            let f2 = GridSetFunction::build(xbox.clone(), n, Orientation::Upper, |x| {
                GridMonotoneSet::sup(&[f.value(x), &t]).unwrap()
            });
            let g2 = f2.inverse(&zbox);
            let mut ok = f.pointwise_leq(&f2).unwrap();
            for z in zbox.points() {
                ok = ok && g2.value(&z).order_leq(g.value(&z)).unwrap();
            }
            // And the equivalence on an unrelated pair.
            let f3 = random_increasing(iseed ^ 0xbeef, &xbox, n, 0, side - 1, cfg.density);
            let g3 = f3.inverse(&zbox);
            let lhs = f.pointwise_leq(&f3).unwrap();
            let rhs = zbox
                .points()
                .all(|z| g3.value(&z).order_leq(g.value(&z)).unwrap());
            if !ok || lhs != rhs {
                fail("domination-transpose", format!("seed {iseed}"), &mut violations);
            }
        }

        // --- version-operator laws for monotone-closed-valued functions ---
        let fk = random_filter_valued(iseed ^ 0xabcd, &xbox, n, 0, side - 1, cfg.density);
        let left = fk.left_version().unwrap();
        let right = fk.right_version().unwrap();
        checks += 1;
        if !(left.pointwise_leq(&fk).unwrap() && fk.pointwise_leq(&right).unwrap()) {
            fail("version-bounds", format!("seed {iseed}"), &mut violations);
        }
        checks += 1;
        {
            let lr = right.left_version().unwrap();
            let rl = left.right_version().unwrap();
            let mut ok = true;
            for x in lr.domain().points() {
                ok = ok
                    && left.value(&x).order_leq(lr.value(&x)).unwrap()
                    && lr.value(&x).order_leq(fk.value(&x)).unwrap();
            }
            for x in rl.domain().points() {
                ok = ok
                    && fk.value(&x).order_leq(rl.value(&x)).unwrap()
                    && rl.value(&x).order_leq(right.value(&x)).unwrap();
            }
            if !ok {
                fail("version-sandwich", format!("seed {iseed}"), &mut violations);
            }
        }
        checks += 1;
        {
            // F^+(x) <= F^-(y) whenever some point lies strictly between.
            let mut ok = true;
            'sep: for x in right.domain().points() {
                for y in left.domain().points() {
                    let diff: Vec<i64> = y.iter().zip(&x).map(|(a, b)| a - b).collect();
                    let nonneg = diff.iter().all(|v| *v >= 0);
                    let total: i64 = diff.iter().sum();
                    let has_intermediate = nonneg && total >= 2;
                    if has_intermediate
                        && !right.value(&x).order_leq(left.value(&y)).unwrap()
                    {
                        ok = false;
                        break 'sep;
                    }
                }
            }
            if !ok {
                fail("version-separation", format!("seed {iseed}"), &mut violations);
            }
        }

        // --- inversion of left-continuous monotone-closed-valued functions ---
        let flc = random_left_continuous(iseed ^ 0x1234, &xbox, n, 0, side - 1, cfg.density);
        let glc = flc.inverse(&zbox);
        checks += 1;
        if glc.inverse(&xbox) != flc {
            fail("onetoone-roundtrip", format!("seed {iseed}"), &mut violations);
        }
        checks += 1;
        if n >= 2 {
            // Right-continuity of the inverse is exact for principal values
            // when the value dimension is at least two.
            let gp = glc.right_version().unwrap();
            let mut ok = true;
            for z in gp.domain().points() {
                ok = ok && gp.value(&z) == glc.value(&z);
            }
            if !ok {
                fail("onetoone-right-continuous", format!("seed {iseed}"), &mut violations);
            }
        }
        checks += 1;
        if m == 1 {
            let mut ok = true;
            for z in zbox.points() {
                ok = ok && glc.value(&z).is_bullet_closed();
            }
            if !ok {
                fail("onetoone-closed-values", format!("seed {iseed}"), &mut violations);
            }
        }
        checks += 1;
        {
            // Strict transposition at one step: F^+(x) < z iff x < G^-(z)
            // (equivalence for m = 1, implication from right to left above).
            let rk = flc.right_version().unwrap();
            let gl = glc.left_version().unwrap();
            let mut ok = true;
            'c2: for x in rk.domain().points() {
                for z in gl.domain().points() {
                    let lhs = (0..n).any(|j| {
                        let mut zz = z.clone();
                        zz[j] -= 1;
                        rk.value(&x).contains(&zz)
                    });
                    let rhs = (0..m).any(|i| {
                        let mut xx = x.clone();
                        xx[i] += 1;
                        gl.value(&z).contains(&xx)
                    });
                    let bad = if m == 1 { lhs != rhs } else { rhs && !lhs };
                    if bad {
                        ok = false;
                        break 'c2;
                    }
                }
            }
            if !ok {
                fail("strict-transpose", format!("seed {iseed}"), &mut violations);
            }
        }
    }

    LatticeCheckReport { config: cfg.clone(), checks, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(dim: usize, gens: &[&[i64]]) -> GridMonotoneSet {
        GridMonotoneSet::upper(dim, gens.iter().map(|g| g.to_vec()).collect())
    }

    #[test]
    fn membership() {
        let a = up(2, &[&[1, 1]]);
        assert!(a.contains(&[2, 1]));
        assert!(!a.contains(&[0, 5]));
        let b = up(2, &[&[0, 1], &[1, 0]]);
        assert!(!b.contains(&[0, 0]));
    }

    #[test]
    fn order() {
        let origin = up(2, &[&[0, 0]]);
        let shifted = up(2, &[&[1, 1]]);
        assert!(origin.order_leq(&shifted).unwrap());
        assert!(!shifted.order_leq(&origin).unwrap());
        let stair = up(2, &[&[0, 1], &[1, 0]]);
        assert!(stair.order_leq(&shifted).unwrap());
        assert!(stair.order_leq(&stair).unwrap());
    }

    #[test]
    fn inf_sup_examples() {
        let a = up(2, &[&[0, 1]]);
        let b = up(2, &[&[1, 0]]);
        let sup = GridMonotoneSet::sup(&[&a, &b]).unwrap();
        assert_eq!(sup, up(2, &[&[1, 1]]));
        let inf = GridMonotoneSet::inf(&[&a, &b]).unwrap();
        assert_eq!(inf, up(2, &[&[0, 1], &[1, 0]]));
        assert_eq!(GridMonotoneSet::sup(&[&a, &a]).unwrap(), a);
    }

    /// Brute-force intersection over the generator envelope.
    fn intersection_oracle(sets: &[&GridMonotoneSet]) -> GridMonotoneSet {
        let dim = sets[0].dim();
        let mut lo = vec![i64::MAX; dim];
        let mut hi = vec![i64::MIN; dim];
        for s in sets {
            for g in s.generators() {
                for i in 0..dim {
                    lo[i] = lo[i].min(g[i]);
                    hi[i] = hi[i].max(g[i]);
                }
            }
        }
        if lo[0] == i64::MAX {
            return GridMonotoneSet::empty(dim, Orientation::Upper);
        }
        let envelope = GridBox::new(lo, hi.iter().map(|v| v + 1).collect());
        let pts: Vec<Vec<i64>> = envelope
            .points()
            .filter(|p| sets.iter().all(|s| s.contains(p)))
            .collect();
        GridMonotoneSet::upper(dim, pts)
    }

    #[test]
    fn intersection_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let a = random_monotone_set(&mut rng, 2, -3, 3);
            let b = random_monotone_set(&mut rng, 2, -3, 3);
            let fast = GridMonotoneSet::sup(&[&a, &b]).unwrap();
            if a.is_empty() || b.is_empty() {
                assert!(fast.is_empty());
            } else {
                let slow = intersection_oracle(&[&a, &b]);
                assert_eq!(fast, slow, "a={a:?} b={b:?}");
            }
        }
    }

    #[test]
    fn bullet_examples() {
        assert_eq!(up(2, &[&[1, 1]]).bullet(), up(2, &[&[1, 1]]));
        assert_eq!(up(2, &[&[0, 1], &[1, 0]]).bullet(), up(2, &[&[0, 0]]));
        let empty = GridMonotoneSet::empty(2, Orientation::Upper);
        assert_eq!(empty.bullet(), empty);
        // Deeper steps still collapse to the corner.
        assert_eq!(up(2, &[&[0, 2], &[1, 0]]).bullet(), up(2, &[&[0, 0]]));
    }

    #[test]
    fn bullet_is_stabilized_corner_fill() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let a = random_monotone_set(&mut rng, 2, -3, 3);
            let mut cur = a.clone();
            for _ in 0..64 {
                let next = cur.bullet_step();
                if next == cur {
                    break;
                }
                cur = next;
            }
            assert_eq!(cur, a.bullet(), "closure of {a:?}");
        }
    }

    #[test]
    fn versions_of_step_function() {
        // F(x) = {z >= 1} for x >= 0, {z >= 0} for x < 0.
        let dom = GridBox::cube(1, -3, 3);
        let f = GridSetFunction::build(dom, 1, Orientation::Upper, |x| {
            if x[0] >= 0 {
                up(1, &[&[1]])
            } else {
                up(1, &[&[0]])
            }
        });
        assert!(f.is_increasing());
        let left = f.left_version().unwrap();
        assert_eq!(left.value(&[0]), &up(1, &[&[0]]));
        let right = f.right_version().unwrap();
        assert_eq!(right.value(&[-1]), &up(1, &[&[1]]));
    }

    #[test]
    fn versions_of_constant_function() {
        let dom = GridBox::cube(2, 0, 3);
        let c = up(1, &[&[2]]);
        let f = GridSetFunction::build(dom, 1, Orientation::Upper, |_| c.clone());
        let left = f.left_version().unwrap();
        let right = f.right_version().unwrap();
        for x in left.domain().points() {
            assert_eq!(left.value(&x), &c);
        }
        for x in right.domain().points() {
            assert_eq!(right.value(&x), &c);
        }
    }

    #[test]
    fn inverse_of_identity_like() {
        // F(x) = {z >= x} over a 1D box; the inverse is {x <= z}.
        let dom = GridBox::cube(1, -2, 2);
        let f = GridSetFunction::build(dom.clone(), 1, Orientation::Upper, |x| up(1, &[&[x[0]]]));
        let g = f.inverse(&GridBox::cube(1, -2, 2));
        assert_eq!(g.orientation(), Orientation::Lower);
        for z in -2..=2i64 {
            for x in -2..=2i64 {
                assert_eq!(g.value(&[z]).contains(&[x]), x <= z, "x={x} z={z}");
            }
        }
        let back = g.inverse(&dom);
        assert_eq!(back, f);
    }

    #[test]
    fn double_inverse_roundtrip_random() {
        for seed in 0..30 {
            let dom = GridBox::cube(2, 0, 3);
            let zbox = GridBox::cube(1, -2, 4);
            let f = random_increasing(seed, &dom, 1, -2, 4, 0.5);
            assert!(f.is_increasing(), "seed {seed}");
            let g = f.inverse(&zbox);
            let back = g.inverse(&dom);
            assert_eq!(back, f, "seed {seed}");
        }
    }

    #[test]
    fn random_instance_contract() {
        let dom = GridBox::cube(2, 0, 4);
        let a = random_increasing(0, &dom, 2, 0, 5, 0.6);
        let b = random_increasing(0, &dom, 2, 0, 5, 0.6);
        assert_eq!(a, b, "per-seed determinism");
        let c = random_increasing(1, &dom, 2, 0, 5, 0.6);
        assert_ne!(a, c);

        let empty = random_increasing(7, &dom, 2, 0, 5, 0.0);
        for x in dom.points() {
            assert!(empty.value(&x).is_empty());
        }

        for seed in 0..200 {
            assert!(random_increasing(seed, &dom, 2, 0, 5, 0.5).is_increasing());
            assert!(random_filter_valued(seed, &dom, 2, 0, 5, 0.5).is_increasing());
        }
    }

    #[test]
    fn left_continuous_construction_is_left_continuous() {
        for seed in 0..50 {
            let dom = GridBox::cube(2, 0, 4);
            let f = random_left_continuous(seed, &dom, 2, 0, 6, 0.7);
            assert!(f.is_increasing());
            let left = f.left_version().unwrap();
            for x in left.domain().points() {
                assert_eq!(left.value(&x), f.value(&x), "seed {seed} at {x:?}");
            }
        }
    }

    #[test]
    fn lattice_check_smoke() {
        for (m, n) in [(1usize, 1usize), (1, 2), (2, 2)] {
            let cfg = LatticeCheckConfig::new(0, 25, m, n, 5);
            let report = lattice_check(&cfg);
            assert!(
                report.passed(),
                "(dim_x={m}, dim_z={n}): {:?}",
                report.violations.first()
            );
        }
    }
}
