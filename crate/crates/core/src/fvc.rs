//! Finite volume-characteristics scheme.
//!
//! Predictor: for every interior edge the normal velocity at the midpoint is
//! traced back over `alpha * dt` to a departure point, the state is
//! interpolated there and advanced with the projected source terms of the
//! edge-normal transport system. Gradients at the interface come from the
//! diamond co-volume. Corrector: conservative update with the physical flux
//! of the predicted interface states (see [`crate::fv`]).
//!
//! No Riemann solver is involved.

use rayon::prelude::*;

use crate::bc::{boundary_flux, BoundaryScheme, BoundarySpec};
use crate::error::{Location, SolverError};
use crate::fv::corrector_update;
use crate::geometry::Vec2;
use crate::mesh::Mesh;
use crate::swe::{
    physical_flux, rotate_to_normal, ConservedField, ConservedState, PhysParams, ProjectedState, H_MIN,
};

/// How the state at a departure point is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Interpolation {
    /// Linear interpolation of inverse-distance vertex values.
    BarycentricVertex,
    /// Value of the containing cell.
    NearestCell,
    /// Linear interpolation of the two adjacent cell values along the
    /// segment joining their centroids, clamped at the centroids. This is the
    /// interface-local interpolation of the Cartesian form of the scheme and
    /// needs an edge, so [`Snapshot::interpolate`] treats it as
    /// `BarycentricVertex` for arbitrary points.
    #[default]
    CentroidSegment,
}

impl std::str::FromStr for Interpolation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().replace('_', "-").as_str() {
            "barycentric" | "barycentric-vertex" | "linear" => Ok(Self::BarycentricVertex),
            "nearest" | "nearest-cell" => Ok(Self::NearestCell),
            "centroid" | "centroid-segment" => Ok(Self::CentroidSegment),
            o => Err(format!("unknown interpolation `{o}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictorConfig {
    /// Length of the characteristic sub-step in units of `dt`.
    pub alpha: f64,
    pub interpolation: Interpolation,
}

impl Default for PredictorConfig {
    fn default() -> Self {
        Self {
            alpha: 1.2,
            interpolation: Interpolation::CentroidSegment,
        }
    }
}

/// Reconstructed interface state `W_ij`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceState {
    pub edge: usize,
    pub w: ConservedState,
}

/// Weighted mean written as `ref + sum w (x - ref) / sum w` so that uniform
/// data is reproduced bit for bit.
#[inline]
fn weighted_mean(values: impl Iterator<Item = (f64, f64)>, reference: f64) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for (w, x) in values {
        num += w * (x - reference);
        den += w;
    }
    reference + num / den
}

fn idw_weight(vertex: Vec2, centroid: Vec2) -> f64 {
    1.0 / vertex.distance(centroid).max(1e-12)
}

/// Inverse-distance weighted average of the cell values around each vertex.
pub fn vertex_values(mesh: &Mesh, cell_scalars: &[f64]) -> Vec<f64> {
    assert_eq!(cell_scalars.len(), mesh.n_cells(), "one value per cell expected");
    mesh.vertex_cells
        .iter()
        .enumerate()
        .map(|(v, cells)| {
            assert!(!cells.is_empty(), "vertex {v} has no adjacent cell");
            let p = mesh.vertices[v];
            let it = cells
                .iter()
                .map(|&c| (idw_weight(p, mesh.cells[c].centroid), cell_scalars[c]));
            weighted_mean(it, cell_scalars[cells[0]])
        })
        .collect()
}

/// Departure point `X* - alpha dt u_eta n` of the characteristic reaching
/// `x_star` after `alpha dt`.
#[inline]
pub fn backtrack_departure(x_star: Vec2, u_eta_face: f64, n: Vec2, alpha: f64, dt: f64) -> Vec2 {
    x_star - n * (alpha * dt * u_eta_face)
}

/// Projected-model update of the interpolated state `hat`:
///
/// ```text
/// h     = h^ - a dt h^ d(u_eta^)/d eta
/// u_eta = u_eta^ - a g dt d(h^)/d eta + a dt f_c u_tau^
/// u_tau = u_tau^ - a dt f_c u_eta^
/// ```
pub fn predict_projected(
    hat: ProjectedState,
    dh_deta: f64,
    du_eta_deta: f64,
    params: PhysParams,
    alpha: f64,
    dt: f64,
) -> ProjectedState {
    let adt = alpha * dt;
    let rot = adt * params.f_c;
    ProjectedState {
        h: hat.h - adt * hat.h * du_eta_deta,
        u_eta: hat.u_eta - alpha * params.g * dt * dh_deta + rot * hat.u_tau,
        u_tau: hat.u_tau - rot * hat.u_eta,
    }
}

/// Primitive variables per cell and per vertex at one time level.
pub struct Snapshot<'m> {
    mesh: &'m Mesh,
    cell: Vec<[f64; 3]>,
    vertex_h: Vec<f64>,
    vertex_u: Vec<f64>,
    vertex_v: Vec<f64>,
}

impl<'m> Snapshot<'m> {
    pub fn new(mesh: &'m Mesh, field: &ConservedField) -> Result<Self, SolverError> {
        field.check(mesh)?;
        let cell: Vec<[f64; 3]> = field
            .cells
            .iter()
            .map(|w| {
                let (h, u, v) = w.primitive();
                [h, u, v]
            })
            .collect();
        let column = |k: usize| cell.iter().map(|c| c[k]).collect::<Vec<_>>();
        let vertex_h = vertex_values(mesh, &column(0));
        let vertex_u = vertex_values(mesh, &column(1));
        let vertex_v = vertex_values(mesh, &column(2));
        Ok(Self {
            mesh,
            cell,
            vertex_h,
            vertex_u,
            vertex_v,
        })
    }

    fn vertex(&self, v: usize) -> [f64; 3] {
        [self.vertex_h[v], self.vertex_u[v], self.vertex_v[v]]
    }

    fn linear_in_cell(&self, cell: usize, p: Vec2) -> [f64; 3] {
        let l = self.mesh.barycentric(cell, p);
        let [a, b, c] = self.mesh.cells[cell].vertices.map(|v| self.vertex(v));
        [0, 1, 2].map(|k| a[k] + l[1] * (b[k] - a[k]) + l[2] * (c[k] - a[k]))
    }

    /// Primitive state `(h, u, v)` at `p`.
    pub fn interpolate(&self, p: Vec2, hint: usize, mode: Interpolation) -> [f64; 3] {
        let (cell, at) = match self.mesh.locate_point(p, Some(hint)) {
            Some(c) => (c, p),
            None => match self.mesh.nearest_boundary_point(p) {
                Some((e, q)) => (self.mesh.edges[e].left, q),
                None => (hint, p),
            },
        };
        match mode {
            Interpolation::NearestCell => self.cell[cell],
            Interpolation::BarycentricVertex | Interpolation::CentroidSegment => self.linear_in_cell(cell, at),
        }
    }

    /// Linear interpolation between the cells on either side of `edge`, at the
    /// projection of `p` onto the segment joining their centroids.
    pub fn along_centroids(&self, edge: usize, p: Vec2) -> [f64; 3] {
        let e = &self.mesh.edges[edge];
        let Some(right) = e.right else {
            return self.cell[e.left];
        };
        let l = self.mesh.cells[e.left].centroid;
        let d = self.mesh.cells[right].centroid - l;
        let s = ((p - l).dot(d) / d.dot(d)).clamp(0.0, 1.0);
        let (a, b) = (self.cell[e.left], self.cell[right]);
        [0, 1, 2].map(|k| a[k] + s * (b[k] - a[k]))
    }

    /// Full predictor on interior edge `edge`.
    pub fn predict(
        &self,
        edge: usize,
        params: PhysParams,
        cfg: PredictorConfig,
        dt: f64,
    ) -> Result<InterfaceState, SolverError> {
        let mesh = self.mesh;
        let e = &mesh.edges[edge];
        let diamond = mesh.diamonds[edge]
            .as_ref()
            .ok_or(crate::error::MeshError::BoundaryEdge(edge))?;
        let right = e.right.expect("interior edge");
        let n = e.normal;

        let [h_l, u_l, v_l] = self.cell[e.left];
        let [h_r, u_r, v_r] = self.cell[right];
        let eta_l = rotate_to_normal(u_l, v_l, n).0;
        let eta_r = rotate_to_normal(u_r, v_r, n).0;
        let face_eta = 0.5 * (eta_l + eta_r);

        let foot = backtrack_departure(e.midpoint, face_eta, n, cfg.alpha, dt);
        let [h_hat, u_hat, v_hat] = match cfg.interpolation {
            Interpolation::CentroidSegment => self.along_centroids(edge, foot),
            mode => self.interpolate(foot, e.left, mode),
        };
        let (eta_hat, tau_hat) = rotate_to_normal(u_hat, v_hat, n);

        let (s, nv) = (diamond.s_vertex, diamond.n_vertex);
        let grad_h = diamond.gradient(n, e.length, h_l, h_r, self.vertex_h[s], self.vertex_h[nv]);
        let eta_s = rotate_to_normal(self.vertex_u[s], self.vertex_v[s], n).0;
        let eta_n = rotate_to_normal(self.vertex_u[nv], self.vertex_v[nv], n).0;
        let grad_eta = diamond.gradient(n, e.length, eta_l, eta_r, eta_s, eta_n);

        let hat = ProjectedState {
            h: h_hat,
            u_eta: eta_hat,
            u_tau: tau_hat,
        };
        let pred = predict_projected(hat, grad_h.dot(n), grad_eta.dot(n), params, cfg.alpha, dt);
        if !(pred.h > H_MIN) || !pred.u_eta.is_finite() || !pred.u_tau.is_finite() {
            return Err(SolverError::Positivity {
                h: pred.h,
                location: Location::Edge(edge),
            });
        }
        Ok(InterfaceState {
            edge,
            w: pred.unproject(n),
        })
    }
}

/// Primitive `(h, u, v)` at `p`; see [`Snapshot::interpolate`].
pub fn interpolate_state(
    mesh: &Mesh,
    field: &ConservedField,
    p: Vec2,
    hint: usize,
    mode: Interpolation,
) -> Result<(f64, f64, f64), SolverError> {
    let [h, u, v] = Snapshot::new(mesh, field)?.interpolate(p, hint, mode);
    Ok((h, u, v))
}

/// Predicted interface state on one interior edge.
pub fn predict_interface(
    mesh: &Mesh,
    field: &ConservedField,
    params: PhysParams,
    cfg: PredictorConfig,
    edge: usize,
    dt: f64,
) -> Result<InterfaceState, SolverError> {
    Snapshot::new(mesh, field)?.predict(edge, params, cfg, dt)
}

/// Per-edge numerical fluxes of the scheme, oriented along each edge normal.
pub fn fvc_fluxes(
    mesh: &Mesh,
    field: &ConservedField,
    params: PhysParams,
    cfg: PredictorConfig,
    bc: &BoundarySpec,
    dt: f64,
) -> Result<Vec<[f64; 3]>, SolverError> {
    let snap = Snapshot::new(mesh, field)?;
    (0..mesh.n_edges())
        .into_par_iter()
        .map(|e| {
            let edge = &mesh.edges[e];
            if edge.is_boundary() {
                let kind = bc.kind(mesh, e);
                Ok(boundary_flux(
                    &field.cells[edge.left],
                    edge.normal,
                    kind,
                    params.g,
                    BoundaryScheme::Fvc,
                ))
            } else {
                let w = snap.predict(e, params, cfg, dt)?.w;
                physical_flux(&w, edge.normal, params.g).map_err(|_| SolverError::Positivity {
                    h: w.h,
                    location: Location::Edge(e),
                })
            }
        })
        .collect()
}

/// One explicit step of the scheme.
pub fn fvc_step(
    mesh: &Mesh,
    field: &ConservedField,
    params: PhysParams,
    cfg: PredictorConfig,
    bc: &BoundarySpec,
    dt: f64,
) -> Result<ConservedField, SolverError> {
    let fluxes = fvc_fluxes(mesh, field, params, cfg, bc, dt)?;
    corrector_update(mesh, field, &fluxes, params, dt)
}
