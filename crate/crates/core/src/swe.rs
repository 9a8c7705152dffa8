//! Shallow-water state algebra: conversions, physical flux, wave speeds,
//! frame rotations and the stable time step.

use crate::error::{Location, SolverError};
use crate::geometry::Vec2;
use crate::mesh::Mesh;

/// Depths at or below this are treated as dry, which is not supported.
pub const H_MIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams {
    /// Gravitational acceleration (m/s^2).
    pub g: f64,
    /// Coriolis parameter (1/s).
    pub f_c: f64,
}

impl Default for PhysParams {
    fn default() -> Self {
        Self { g: 9.81, f_c: 0.0 }
    }
}

/// Conserved variables `W = (h, hu, hv)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConservedState {
    pub h: f64,
    pub hu: f64,
    pub hv: f64,
}

/// Interface-local variables `(h, u_eta, u_tau)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProjectedState {
    pub h: f64,
    pub u_eta: f64,
    pub u_tau: f64,
}

impl ConservedState {
    pub const fn new(h: f64, hu: f64, hv: f64) -> Self {
        Self { h, hu, hv }
    }

    pub fn from_primitive(h: f64, u: f64, v: f64) -> Self {
        Self { h, hu: h * u, hv: h * v }
    }

    /// `(h, u, v)`.
    #[inline]
    pub fn primitive(&self) -> (f64, f64, f64) {
        (self.h, self.hu / self.h, self.hv / self.h)
    }

    #[inline]
    pub fn velocity(&self) -> Vec2 {
        Vec2::new(self.hu / self.h, self.hv / self.h)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.h, self.hu, self.hv]
    }

    pub fn is_finite(&self) -> bool {
        self.h.is_finite() && self.hu.is_finite() && self.hv.is_finite()
    }

    pub fn check_positive(&self, location: Location) -> Result<(), SolverError> {
        if self.h > H_MIN && self.is_finite() {
            Ok(())
        } else {
            Err(SolverError::Positivity { h: self.h, location })
        }
    }

    /// Rotates the velocity into the frame of the unit normal `n`.
    pub fn project(&self, n: Vec2) -> ProjectedState {
        let (h, u, v) = self.primitive();
        let (u_eta, u_tau) = rotate_to_normal(u, v, n);
        ProjectedState { h, u_eta, u_tau }
    }
}

impl ProjectedState {
    /// Back to conserved variables in the global frame.
    pub fn unproject(&self, n: Vec2) -> ConservedState {
        let (u, v) = rotate_from_normal(self.u_eta, self.u_tau, n);
        ConservedState::from_primitive(self.h, u, v)
    }

    /// Physical flux along the normal, in the rotated frame:
    /// `(h u_eta, h u_eta^2 + g h^2 / 2, h u_eta u_tau)`.
    #[inline]
    pub fn normal_flux(&self, g: f64) -> [f64; 3] {
        let q = self.h * self.u_eta;
        [q, q * self.u_eta + 0.5 * g * self.h * self.h, q * self.u_tau]
    }
}

/// `(u_eta, u_tau) = (u n_x + v n_y, v n_x - u n_y)`.
#[inline]
pub fn rotate_to_normal(u: f64, v: f64, n: Vec2) -> (f64, f64) {
    (u * n.x + v * n.y, v * n.x - u * n.y)
}

/// Inverse of [`rotate_to_normal`].
#[inline]
pub fn rotate_from_normal(u_eta: f64, u_tau: f64, n: Vec2) -> (f64, f64) {
    (u_eta * n.x - u_tau * n.y, u_tau * n.x + u_eta * n.y)
}

/// Rotates a flux computed in the `(eta, tau)` frame back to `(x, y)`.
#[inline]
pub fn flux_from_normal(f: [f64; 3], n: Vec2) -> [f64; 3] {
    let (fx, fy) = rotate_from_normal(f[1], f[2], n);
    [f[0], fx, fy]
}

/// `F(W) . n`.
pub fn physical_flux(w: &ConservedState, n: Vec2, g: f64) -> Result<[f64; 3], SolverError> {
    w.check_positive(Location::State)?;
    let u_n = (w.hu * n.x + w.hv * n.y) / w.h;
    let p = 0.5 * g * w.h * w.h;
    Ok([w.h * u_n, w.hu * u_n + p * n.x, w.hv * u_n + p * n.y])
}

/// `max(|u| + sqrt(g h), |v| + sqrt(g h))`.
pub fn max_wave_speed(w: &ConservedState, g: f64) -> Result<f64, SolverError> {
    w.check_positive(Location::State)?;
    let c = (g * w.h).sqrt();
    let (_, u, v) = w.primitive();
    Ok((u.abs() + c).max(v.abs() + c))
}

/// Per-cell conserved variables at one time level.
#[derive(Debug, Clone, PartialEq)]
pub struct ConservedField {
    pub cells: Vec<ConservedState>,
    pub time: f64,
}

impl ConservedField {
    pub fn new(cells: Vec<ConservedState>, time: f64) -> Self {
        Self { cells, time }
    }

    pub fn uniform(n: usize, w: ConservedState) -> Self {
        Self { cells: vec![w; n], time: 0.0 }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn check(&self, mesh: &Mesh) -> Result<(), SolverError> {
        if self.cells.len() != mesh.n_cells() {
            return Err(SolverError::FieldSize {
                expected: mesh.n_cells(),
                got: self.cells.len(),
            });
        }
        for (i, w) in self.cells.iter().enumerate() {
            w.check_positive(Location::Cell(i))?;
        }
        Ok(())
    }

    /// `sum |T_i| h_i`.
    pub fn total_mass(&self, mesh: &Mesh) -> f64 {
        self.cells.iter().zip(&mesh.cells).map(|(w, c)| c.area * w.h).sum()
    }

    pub fn total_momentum(&self, mesh: &Mesh) -> (f64, f64) {
        self.cells.iter().zip(&mesh.cells).fold((0.0, 0.0), |(x, y), (w, c)| {
            (x + c.area * w.hu, y + c.area * w.hv)
        })
    }

    /// Largest component-wise absolute difference.
    pub fn max_abs_diff(&self, other: &ConservedField) -> f64 {
        self.cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| {
                (a.h - b.h)
                    .abs()
                    .max((a.hu - b.hu).abs())
                    .max((a.hv - b.hv).abs())
            })
            .fold(0.0, f64::max)
    }
}

/// Stable step `cfl * min_e |gamma_e| / (sqrt(2 alpha) lambda_e)`, with
/// `lambda_e` the largest wave speed of the cells adjacent to edge `e`.
pub fn compute_time_step(
    mesh: &Mesh,
    field: &ConservedField,
    cfl: f64,
    alpha: f64,
    g: f64,
) -> Result<f64, SolverError> {
    let speeds = field
        .cells
        .iter()
        .enumerate()
        .map(|(i, w)| {
            w.check_positive(Location::Cell(i))?;
            max_wave_speed(w, g)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let scale = (2.0 * alpha).sqrt();
    let mut dt = f64::INFINITY;
    for (e, edge) in mesh.edges.iter().enumerate() {
        let mut lambda = speeds[edge.left];
        if let Some(r) = edge.right {
            lambda = lambda.max(speeds[r]);
        }
        if !lambda.is_finite() {
            return Err(SolverError::NonFiniteSpeed { edge: e, speed: lambda });
        }
        if lambda > 0.0 {
            dt = dt.min(edge.length / (scale * lambda));
        }
    }
    if !dt.is_finite() {
        return Err(SolverError::ZeroWaveSpeed);
    }
    Ok(cfl * dt)
}
