//! Benchmark cases: initial data and default meshes.

use std::fmt;
use std::str::FromStr;

use crate::error::{ConfigError, MeshError};
use crate::exact::DamBreakProblem;
use crate::geometry::Vec2;
use crate::mesh::{Mesh, SplitPattern};
use crate::swe::{ConservedField, ConservedState};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// Planar dam break on [0, 100]^2 compared against the exact solution.
    AccuracyDam,
    /// Elliptic hump on [-10, 10]^2 released under rotation.
    CircularDam,
    /// Asymmetric breach in a 10 m thick dam across a 200 m basin.
    PartialDam,
    /// User mesh with a planar dam-break initial state.
    FromFile,
}

impl Case {
    pub fn name(&self) -> &'static str {
        match self {
            Case::AccuracyDam => "accuracy_dam",
            Case::CircularDam => "circular_dam",
            Case::PartialDam => "partial_dam",
            Case::FromFile => "from_file",
        }
    }

    pub fn default_t_end(&self) -> f64 {
        match self {
            Case::AccuracyDam => 5.5,
            Case::CircularDam => 16.0,
            Case::PartialDam => 8.2,
            Case::FromFile => 1.0,
        }
    }
}

impl FromStr for Case {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "accuracy_dam" | "accuracy" => Ok(Case::AccuracyDam),
            "circular_dam" | "circular" => Ok(Case::CircularDam),
            "partial_dam" | "partial" => Ok(Case::PartialDam),
            "from_file" | "file" => Ok(Case::FromFile),
            o => Err(format!("unknown case `{o}`")),
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Planar dam along `x = x0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarDam {
    pub x0: f64,
    pub h_left: f64,
    pub h_right: f64,
}

impl Default for PlanarDam {
    fn default() -> Self {
        Self {
            x0: 50.0,
            h_left: 4.0,
            h_right: 2.0,
        }
    }
}

impl PlanarDam {
    pub fn problem(&self, g: f64) -> DamBreakProblem {
        DamBreakProblem::new(self.h_left, self.h_right, g, self.x0)
    }
}

/// `h = 1 + (1 - tanh((sqrt(a x^2 + b y^2) - 1) / c)) / 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularHump {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Default for CircularHump {
    fn default() -> Self {
        Self {
            a: 2.5,
            b: 0.4,
            c: 0.1,
        }
    }
}

impl CircularHump {
    pub fn depth(&self, p: Vec2) -> f64 {
        let r = (self.a * p.x * p.x + self.b * p.y * p.y).sqrt();
        1.0 + 0.25 * (1.0 - ((r - 1.0) / self.c).tanh())
    }
}

/// Basin with a dam across it and a breach in the dam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialDamGeometry {
    pub length: f64,
    pub width: f64,
    pub dam_x: (f64, f64),
    pub breach_y: (f64, f64),
    pub h_left: f64,
    pub h_right: f64,
}

impl Default for PartialDamGeometry {
    fn default() -> Self {
        Self {
            length: 200.0,
            width: 200.0,
            dam_x: (95.0, 105.0),
            breach_y: (95.0, 170.0),
            h_left: 4.0,
            h_right: 2.0,
        }
    }
}

impl PartialDamGeometry {
    /// Whether `p` lies inside the solid part of the dam.
    pub fn in_dam(&self, p: Vec2) -> bool {
        p.x > self.dam_x.0 && p.x < self.dam_x.1 && (p.y < self.breach_y.0 || p.y > self.breach_y.1)
    }

    pub fn mesh(&self, nx: usize, ny: usize, split: SplitPattern) -> Result<Mesh, MeshError> {
        Mesh::rectangle_with_holes((0.0, self.length), (0.0, self.width), nx, ny, split, |c| {
            self.in_dam(c)
        })
    }

    fn gate_x(&self) -> f64 {
        0.5 * (self.dam_x.0 + self.dam_x.1)
    }
}

/// Geometry parameters of all cases.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CaseGeometry {
    pub planar: PlanarDam,
    pub hump: CircularHump,
    pub partial: PartialDamGeometry,
}

impl Case {
    /// Default generated mesh for the case.
    pub fn default_mesh(
        &self,
        geom: &CaseGeometry,
        resolution: Option<(usize, usize)>,
        split: Option<SplitPattern>,
    ) -> Result<Mesh, MeshError> {
        match self {
            Case::AccuracyDam => {
                let (nx, ny) = resolution.unwrap_or((36, 36));
                Mesh::rectangle((0.0, 100.0), (0.0, 100.0), nx, ny, split.unwrap_or(SplitPattern::Fixed))
            }
            Case::CircularDam => {
                let (nx, ny) = resolution.unwrap_or((70, 70));
                Mesh::rectangle(
                    (-10.0, 10.0),
                    (-10.0, 10.0),
                    nx,
                    ny,
                    split.unwrap_or(SplitPattern::Alternating),
                )
            }
            Case::PartialDam => {
                // 2.5 m x 5/3 m quads put the dam faces and breach ends on grid lines
                let (nx, ny) = resolution.unwrap_or((80, 120));
                geom.partial.mesh(nx, ny, split.unwrap_or(SplitPattern::Alternating))
            }
            Case::FromFile => Err(MeshError::Parse {
                line: 0,
                msg: "case from_file requires a mesh file".into(),
            }),
        }
    }

    fn domain(&self, geom: &CaseGeometry) -> Option<(Vec2, Vec2)> {
        match self {
            Case::AccuracyDam => Some((Vec2::new(0.0, 0.0), Vec2::new(100.0, 100.0))),
            Case::CircularDam => Some((Vec2::new(-10.0, -10.0), Vec2::new(10.0, 10.0))),
            Case::PartialDam => Some((Vec2::ZERO, Vec2::new(geom.partial.length, geom.partial.width))),
            Case::FromFile => None,
        }
    }
}

/// Initial state of `case` evaluated at the cell centroids of `mesh`.
pub fn init_case(case: Case, mesh: &Mesh, geom: &CaseGeometry) -> Result<ConservedField, ConfigError> {
    if let Some((lo, hi)) = case.domain(geom) {
        let (mlo, mhi) = mesh.bounding_box();
        let tol = 1e-6 * (hi - lo).norm();
        if (mlo - lo).norm() > tol || (mhi - hi).norm() > tol {
            return Err(ConfigError::Invalid(format!(
                "mesh spans ({}, {})-({}, {}) but case {case} needs ({}, {})-({}, {})",
                mlo.x, mlo.y, mhi.x, mhi.y, lo.x, lo.y, hi.x, hi.y
            )));
        }
    }
    let depth = |p: Vec2| -> f64 {
        match case {
            Case::AccuracyDam | Case::FromFile => {
                let d = &geom.planar;
                if p.x < d.x0 {
                    d.h_left
                } else {
                    d.h_right
                }
            }
            Case::CircularDam => geom.hump.depth(p),
            Case::PartialDam => {
                let d = &geom.partial;
                if p.x < d.gate_x() {
                    d.h_left
                } else {
                    d.h_right
                }
            }
        }
    };
    let cells = mesh
        .cells
        .iter()
        .map(|c| ConservedState::new(depth(c.centroid), 0.0, 0.0))
        .collect();
    Ok(ConservedField::new(cells, 0.0))
}
