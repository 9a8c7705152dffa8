//! Time integration, benchmark setup, error norms and convergence studies.

mod cases;
mod convergence;
mod diagnostics;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

pub use cases::{init_case, Case, CaseGeometry, CircularHump, PartialDamGeometry, PlanarDam};
pub use convergence::{convergence_study, fitted_order, pairwise_order, ConvergenceRow};
pub use diagnostics::{froude_field, DiagnosticRecord, Diagnostics};

use crate::bc::{BoundaryKind, BoundarySpec};
use crate::error::{ConfigError, RunError, SolverError};
use crate::fv::Scheme;
use crate::fvc::{Interpolation, PredictorConfig};
use crate::geometry::Vec2;
use crate::io::{DiagnosticsWriter, OutputFrame};
use crate::mesh::{Mesh, SplitPattern};
use crate::roe::RoeConfig;
use crate::swe::{compute_time_step, ConservedField, PhysParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    Fvc,
    Roe,
}

impl FromStr for SchemeKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fvc" => Ok(Self::Fvc),
            "roe" => Ok(Self::Roe),
            o => Err(format!("unknown scheme `{o}`")),
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Fvc => "fvc",
            Self::Roe => "roe",
        })
    }
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scheme: SchemeKind,
    pub cfl: f64,
    pub alpha: f64,
    pub g: f64,
    pub f_c: f64,
    /// Defaults to the case's end time.
    pub t_end: Option<f64>,
    pub case: Case,
    /// Mesh file (Gmsh `.msh` or raw text); the case's generated mesh otherwise.
    pub mesh: Option<PathBuf>,
    pub resolution: Option<(usize, usize)>,
    pub split: Option<SplitPattern>,
    /// Defaults to wall for the dam breaks in a closed basin or channel,
    /// transmissive otherwise.
    pub boundary: Option<BoundaryKind>,
    pub boundary_tags: BTreeMap<i32, BoundaryKind>,
    pub interpolation: Interpolation,
    /// Harten threshold for the Roe flux; `1e-6 sqrt(g h_max)` when unset.
    pub entropy_fix: Option<f64>,
    pub geometry: CaseGeometry,
    pub output_dir: Option<PathBuf>,
    pub output_interval: Option<f64>,
    pub output_times: Vec<f64>,
    pub max_steps: Option<usize>,
}

impl RunConfig {
    pub fn new(case: Case) -> Self {
        Self {
            scheme: SchemeKind::Fvc,
            cfl: 0.8,
            alpha: 1.2,
            g: 9.81,
            f_c: 0.0,
            t_end: None,
            case,
            mesh: None,
            resolution: None,
            split: None,
            boundary: None,
            boundary_tags: BTreeMap::new(),
            interpolation: Interpolation::CentroidSegment,
            entropy_fix: None,
            geometry: CaseGeometry::default(),
            output_dir: None,
            output_interval: None,
            output_times: Vec::new(),
            max_steps: None,
        }
    }

    pub fn t_end(&self) -> f64 {
        self.t_end.unwrap_or_else(|| self.case.default_t_end())
    }

    pub fn params(&self) -> PhysParams {
        PhysParams { g: self.g, f_c: self.f_c }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(ConfigError::Invalid(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        if !(self.alpha > 0.0) {
            return Err(ConfigError::Invalid(format!("alpha must be positive, got {}", self.alpha)));
        }
        if !(self.t_end() > 0.0) {
            return Err(ConfigError::Invalid(format!("t_end must be positive, got {}", self.t_end())));
        }
        if !(self.g >= 0.0) || !self.f_c.is_finite() {
            return Err(ConfigError::Invalid("g must be non-negative and f_c finite".into()));
        }
        if let Some(dt) = self.output_interval {
            if !(dt > 0.0) {
                return Err(ConfigError::Invalid("output_interval must be positive".into()));
            }
        }
        if self.case == Case::FromFile && self.mesh.is_none() {
            return Err(ConfigError::Missing("mesh"));
        }
        Ok(())
    }

    pub fn boundary_spec(&self) -> BoundarySpec {
        let default = self.boundary.unwrap_or(match self.case {
            Case::AccuracyDam | Case::PartialDam => BoundaryKind::Wall,
            _ => BoundaryKind::Transmissive,
        });
        BoundarySpec {
            default,
            by_tag: self.boundary_tags.clone(),
            by_edge: BTreeMap::new(),
        }
    }

    pub fn scheme_for(&self, field: &ConservedField) -> Scheme {
        match self.scheme {
            SchemeKind::Fvc => Scheme::Fvc(PredictorConfig {
                alpha: self.alpha,
                interpolation: self.interpolation,
            }),
            SchemeKind::Roe => Scheme::Roe(match self.entropy_fix {
                Some(d) => RoeConfig { entropy_fix_delta: d },
                None => {
                    let h_max = field.cells.iter().map(|w| w.h).fold(0.0, f64::max);
                    RoeConfig::for_scale(self.g, h_max)
                }
            }),
        }
    }

    pub fn build_mesh(&self) -> Result<Mesh, RunError> {
        Ok(match &self.mesh {
            Some(path) => crate::io::load_mesh(path)?,
            None => self.case.default_mesh(&self.geometry, self.resolution, self.split)?,
        })
    }

    /// Output instants strictly inside `(0, t_end]`, sorted, including `t_end`
    /// when any output is requested.
    pub fn output_instants(&self) -> Vec<f64> {
        let t_end = self.t_end();
        let mut out: Vec<f64> = self
            .output_times
            .iter()
            .copied()
            .filter(|&t| t > 0.0 && t <= t_end)
            .collect();
        if let Some(dt) = self.output_interval {
            let mut k = 1usize;
            loop {
                let t = dt * k as f64;
                if t >= t_end * (1.0 - 1e-12) {
                    break;
                }
                out.push(t);
                k += 1;
            }
        }
        if self.output_dir.is_some() {
            out.push(t_end);
        }
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * t_end);
        out
    }
}

/// A mesh, its current field and the scheme advancing it.
pub struct Simulation {
    pub mesh: Mesh,
    pub field: ConservedField,
    pub params: PhysParams,
    pub scheme: Scheme,
    pub bc: BoundarySpec,
    pub cfl: f64,
    pub alpha: f64,
    pub steps: usize,
}

impl Simulation {
    pub fn new(config: &RunConfig, mesh: Mesh, field: ConservedField) -> Result<Self, SolverError> {
        field.check(&mesh)?;
        Ok(Self {
            scheme: config.scheme_for(&field),
            bc: config.boundary_spec(),
            params: config.params(),
            cfl: config.cfl,
            alpha: config.alpha,
            mesh,
            field,
            steps: 0,
        })
    }

    /// Sets up the configured case on the configured mesh.
    pub fn from_config(config: &RunConfig) -> Result<Self, RunError> {
        config.validate()?;
        let mesh = config.build_mesh()?;
        let field = init_case(config.case, &mesh, &config.geometry)?;
        Ok(Self::new(config, mesh, field)?)
    }

    pub fn time(&self) -> f64 {
        self.field.time
    }

    /// Stable step for the current state.
    pub fn stable_dt(&self) -> Result<f64, SolverError> {
        compute_time_step(&self.mesh, &self.field, self.cfl, self.alpha, self.params.g)
    }

    /// Advances one stable step, shortened to land exactly on `target`.
    /// Returns the step size taken.
    pub fn step_towards(&mut self, target: f64) -> Result<f64, RunError> {
        let wrap = |step, time| move |source| RunError::Step { step, time, source };
        let t = self.field.time;
        let mut dt = self.stable_dt().map_err(wrap(self.steps + 1, t))?;
        let land = t + dt >= target - 1e-12 * target.abs().max(1.0);
        if land {
            dt = target - t;
        }
        let mut next = self
            .scheme
            .step(&self.mesh, &self.field, self.params, &self.bc, dt)
            .map_err(wrap(self.steps + 1, t))?;
        if land {
            next.time = target;
        }
        self.field = next;
        self.steps += 1;
        Ok(dt)
    }

    /// Takes `n` unclipped stable steps.
    pub fn advance_steps(&mut self, n: usize) -> Result<(), RunError> {
        for _ in 0..n {
            self.step_towards(f64::INFINITY)?;
        }
        Ok(())
    }

    /// Runs until `t_end`, recording diagnostics after every step.
    pub fn run_until(&mut self, t_end: f64, diagnostics: &mut Diagnostics) -> Result<(), RunError> {
        while self.field.time < t_end {
            let dt = self.step_towards(t_end)?;
            diagnostics.record(self.steps, dt, &self.mesh, &self.field, self.params);
        }
        Ok(())
    }
}

/// Runs a complete simulation, writing frames and diagnostics when an output
/// directory is configured.
pub fn run(config: &RunConfig) -> Result<(ConservedField, Diagnostics), RunError> {
    let mut sim = Simulation::from_config(config)?;
    let diags = run_simulation(config, &mut sim)?;
    Ok((sim.field, diags))
}

/// Drives `sim` to the configured end time, honouring output instants.
pub fn run_simulation(config: &RunConfig, sim: &mut Simulation) -> Result<Diagnostics, RunError> {
    let t_end = config.t_end();
    let mut diags = Diagnostics::default();
    diags.record(sim.steps, 0.0, &sim.mesh, &sim.field, sim.params);

    let mut writer = match &config.output_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|source| crate::error::OutputError::Io {
                path: dir.clone(),
                source,
            })?;
            let mut w = DiagnosticsWriter::create(dir.join("diagnostics.csv"))?;
            w.write(diags.records.last().expect("initial record"))?;
            write_frame(config, sim, 0)?;
            Some(w)
        }
        None => None,
    };

    let mut frame = 1;
    let instants = config.output_instants();
    let mut targets = instants.iter().copied().peekable();
    while sim.time() < t_end {
        if let Some(max) = config.max_steps {
            if sim.steps >= max {
                break;
            }
        }
        while targets.peek().is_some_and(|&t| t <= sim.time()) {
            targets.next();
        }
        let target = targets.peek().copied().unwrap_or(t_end).min(t_end);
        let dt = sim.step_towards(target)?;
        diags.record(sim.steps, dt, &sim.mesh, &sim.field, sim.params);
        if let Some(w) = writer.as_mut() {
            w.write(diags.records.last().expect("just recorded"))?;
            if sim.time() == target && instants.contains(&target) {
                write_frame(config, sim, frame)?;
                frame += 1;
            }
        }
    }
    Ok(diags)
}

fn write_frame(config: &RunConfig, sim: &Simulation, index: usize) -> Result<(), RunError> {
    let dir = config.output_dir.as_ref().expect("output directory");
    let frame = OutputFrame::from_field(&sim.field, sim.params);
    crate::io::write_vtk(&sim.mesh, &frame, dir.join(format!("frame_{index:04}.vtk")))?;
    Ok(())
}

/// `sum |T_i| |h_i - h(t, x_i)| / sum |T_i| |h(t, x_i)|` over cell centroids.
pub fn l1_relative_error(
    mesh: &Mesh,
    computed: &ConservedField,
    exact: impl Fn(Vec2, f64) -> f64,
    t: f64,
) -> Result<f64, SolverError> {
    if computed.len() != mesh.n_cells() {
        return Err(SolverError::FieldSize {
            expected: mesh.n_cells(),
            got: computed.len(),
        });
    }
    let (mut num, mut den) = (0.0, 0.0);
    for (w, c) in computed.cells.iter().zip(&mesh.cells) {
        let h = exact(c.centroid, t);
        num += c.area * (w.h - h).abs();
        den += c.area * h.abs();
    }
    if den == 0.0 {
        return Err(SolverError::ZeroDenominator);
    }
    Ok(num / den)
}
