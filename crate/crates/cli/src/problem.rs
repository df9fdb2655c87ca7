//! Problem-file schema: cone, model, boxes, dual grid, sampling knobs.
//! Validation reports schema errors with JSON-pointer paths.

use serde::{Deserialize, Serialize};
use setdual_core::cone::{ConeSpec, PolyCone};
use setdual_core::duality::{dual_grid_auto, dual_grid_sweep, EpsSchedule, PenaltyTable};
use setdual_core::setfun::{FnSpec, SetValuedFn};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub cone: ConeSpec,
    #[serde(rename = "F")]
    pub f: FnSpec,
    pub domain_box: Vec<[f64; 2]>,
    #[serde(default)]
    pub z_box: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub dual_grid: Option<DualGridSpec>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub eps_schedule: Option<[f64; 2]>,
}

fn default_seed() -> u64 {
    0
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DualGridSpec {
    Auto {
        #[serde(default = "default_sweep")]
        sweep: usize,
    },
    Sweep { count: usize },
    Explicit { points: Vec<Vec<f64>> },
}

fn default_sweep() -> usize {
    8
}

/// A parsed and validated problem: the built model plus resolved defaults.
pub struct Problem {
    pub spec: ProblemSpec,
    pub cone: PolyCone,
    pub f: SetValuedFn,
    pub dual_grid: Vec<Vec<f64>>,
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub eps: [f64; 2],
}

#[derive(Debug)]
pub struct SchemaErrors(pub Vec<String>);

impl std::fmt::Display for SchemaErrors {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for e in &self.0 {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for SchemaErrors {}

pub fn parse_problem(path: &std::path::Path) -> anyhow::Result<Problem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    let spec: ProblemSpec = serde_json::from_str(&text)
        .map_err(|e| anyhow::anyhow!("{}: invalid JSON: {e}", path.display()))?;
    build_problem(spec).map_err(anyhow::Error::from)
}

pub fn build_problem(spec: ProblemSpec) -> Result<Problem, SchemaErrors> {
    let mut errors: Vec<String> = Vec::new();

    let cone = match spec.cone.build() {
        Ok(c) => Some(c),
        Err(e) => {
            errors.push(format!("/cone: {e}"));
            None
        }
    };

    if let Some(cone) = &cone {
        for (i, d) in spec.f.directions.iter().enumerate() {
            if d.len() != cone.dim() {
                errors.push(format!(
                    "/F/directions/{i}: expected dimension {}, found {}",
                    cone.dim(),
                    d.len()
                ));
            }
        }
    }
    if spec.f.g.len() != spec.f.directions.len() {
        errors.push(format!(
            "/F/g: expected {} entries matching /F/directions, found {}",
            spec.f.directions.len(),
            spec.f.g.len()
        ));
    }

    let f = match (&cone, errors.is_empty()) {
        (Some(cone), true) => match spec.f.build(cone) {
            Ok(f) => Some(f),
            Err(e) => {
                errors.push(format!("/F: {e}"));
                None
            }
        },
        _ => None,
    };

    if let Some(f) = &f {
        if spec.domain_box.len() != f.dim_x() {
            errors.push(format!(
                "/domain_box: expected {} intervals for the domain, found {}",
                f.dim_x(),
                spec.domain_box.len()
            ));
        }
        if let Some(zb) = &spec.z_box {
            if zb.len() != f.dim_z() {
                errors.push(format!(
                    "/z_box: expected {} intervals, found {}",
                    f.dim_z(),
                    zb.len()
                ));
            }
        }
        if let Some(DualGridSpec::Explicit { points }) = &spec.dual_grid {
            for (i, p) in points.iter().enumerate() {
                if p.len() != f.dim_x() {
                    errors.push(format!(
                        "/dual_grid/points/{i}: expected dimension {}, found {}",
                        f.dim_x(),
                        p.len()
                    ));
                }
            }
            if points.is_empty() {
                errors.push("/dual_grid/points: must be non-empty".into());
            }
        }
    }
    for (i, [lo, hi]) in spec.domain_box.iter().enumerate() {
        if lo >= hi {
            errors.push(format!("/domain_box/{i}: empty interval [{lo}, {hi}]"));
        }
    }
    if let Some([e1, e2]) = spec.eps_schedule {
        if !(e1 > e2 && e2 > 0.0) {
            errors.push("/eps_schedule: expected [e1, e2] with e1 > e2 > 0".into());
        }
    }

    if !errors.is_empty() {
        return Err(SchemaErrors(errors));
    }
    let (cone, f) = (cone.unwrap(), f.unwrap());
    let dual_grid = match &spec.dual_grid {
        None | Some(DualGridSpec::Auto { .. }) => {
            let sweep = match &spec.dual_grid {
                Some(DualGridSpec::Auto { sweep }) => *sweep,
                _ => default_sweep(),
            };
            dual_grid_auto(&f, sweep)
        }
        Some(DualGridSpec::Sweep { count }) => dual_grid_sweep(f.dim_x(), *count),
        Some(DualGridSpec::Explicit { points }) => points.clone(),
    };
    Ok(Problem {
        seed: spec.seed,
        samples: spec.samples.unwrap_or(500),
        tol: spec.tol.unwrap_or(setdual_core::DEFAULT_TOL),
        eps: spec.eps_schedule.unwrap_or([1e-3, 1e-6]),
        spec,
        cone,
        f,
        dual_grid,
    })
}

impl Problem {
    pub fn z_box(&self) -> Vec<[f64; 2]> {
        self.spec
            .z_box
            .clone()
            .unwrap_or_else(|| vec![[-5.0, 5.0]; self.f.dim_z()])
    }

    pub fn penalty_table(&self) -> PenaltyTable {
        let schedule = EpsSchedule::default_for_dim(self.f.dim_z()).with_eps(self.eps);
        PenaltyTable::new(self.f.clone(), schedule, self.tol)
    }

    /// The dual grid contains every active slope of the model; this is the
    /// configuration in which the reconstructions are exact.
    pub fn grid_covers_slopes(&self) -> bool {
        self.f.active_slopes().iter().all(|s| {
            self.dual_grid.iter().any(|g| {
                g.len() == s.len() && g.iter().zip(s).all(|(a, b)| (a - b).abs() <= 1e-12)
            })
        })
    }
}
