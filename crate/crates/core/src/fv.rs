//! Conservative finite volume corrector shared by both schemes.
//!
//! Fluxes are computed per edge into a buffer, then each cell sums its three
//! edges in a fixed order, so results do not depend on how the edge pass is
//! scheduled across threads.

use rayon::prelude::*;

use crate::bc::{boundary_flux, BoundaryScheme, BoundarySpec};
use crate::error::{Location, SolverError};
use crate::fvc::{fvc_fluxes, PredictorConfig};
use crate::mesh::Mesh;
use crate::roe::{roe_flux, RoeConfig};
use crate::swe::{ConservedField, ConservedState, PhysParams, H_MIN};

/// `W_i - dt / |T_i| sum_j |gamma_ij| Phi_ij + dt Q(W_i)` with the Coriolis
/// source `Q = (0, f_c hv, -f_c hu)` taken at the old time level.
pub fn corrector_update(
    mesh: &Mesh,
    field: &ConservedField,
    fluxes: &[[f64; 3]],
    params: PhysParams,
    dt: f64,
) -> Result<ConservedField, SolverError> {
    debug_assert_eq!(fluxes.len(), mesh.n_edges());
    let cells = (0..mesh.n_cells())
        .into_par_iter()
        .map(|i| {
            let mut acc = [0.0f64; 3];
            for &e in &mesh.cell_edges[i] {
                let edge = &mesh.edges[e];
                let s = if edge.left == i { edge.length } else { -edge.length };
                let f = &fluxes[e];
                acc[0] += s * f[0];
                acc[1] += s * f[1];
                acc[2] += s * f[2];
            }
            let w = &field.cells[i];
            let k = dt / mesh.cells[i].area;
            let next = ConservedState {
                h: w.h - k * acc[0],
                hu: w.hu - k * acc[1] + dt * params.f_c * w.hv,
                hv: w.hv - k * acc[2] - dt * params.f_c * w.hu,
            };
            if !next.is_finite() {
                return Err(SolverError::NotANumber {
                    cell: i,
                    time: field.time + dt,
                });
            }
            if !(next.h > H_MIN) {
                return Err(SolverError::Positivity {
                    h: next.h,
                    location: Location::CellAtTime {
                        cell: i,
                        time: field.time + dt,
                    },
                });
            }
            Ok(next)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ConservedField {
        cells,
        time: field.time + dt,
    })
}

pub fn roe_fluxes(
    mesh: &Mesh,
    field: &ConservedField,
    params: PhysParams,
    bc: &BoundarySpec,
    cfg: RoeConfig,
) -> Result<Vec<[f64; 3]>, SolverError> {
    field.check(mesh)?;
    (0..mesh.n_edges())
        .into_par_iter()
        .map(|e| {
            let edge = &mesh.edges[e];
            let w_l = &field.cells[edge.left];
            match edge.right {
                Some(r) => roe_flux(w_l, &field.cells[r], edge.normal, params.g, cfg),
                None => Ok(boundary_flux(
                    w_l,
                    edge.normal,
                    bc.kind(mesh, e),
                    params.g,
                    BoundaryScheme::Roe(cfg),
                )),
            }
        })
        .collect()
}

/// One explicit step with the Roe flux.
pub fn roe_step(
    mesh: &Mesh,
    field: &ConservedField,
    params: PhysParams,
    bc: &BoundarySpec,
    dt: f64,
    cfg: RoeConfig,
) -> Result<ConservedField, SolverError> {
    let fluxes = roe_fluxes(mesh, field, params, bc, cfg)?;
    corrector_update(mesh, field, &fluxes, params, dt)
}

/// Numerical scheme used for the interface fluxes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scheme {
    Fvc(PredictorConfig),
    Roe(RoeConfig),
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Fvc(_) => "fvc",
            Scheme::Roe(_) => "roe",
        }
    }

    pub fn step(
        &self,
        mesh: &Mesh,
        field: &ConservedField,
        params: PhysParams,
        bc: &BoundarySpec,
        dt: f64,
    ) -> Result<ConservedField, SolverError> {
        let fluxes = match *self {
            Scheme::Fvc(cfg) => fvc_fluxes(mesh, field, params, cfg, bc, dt)?,
            Scheme::Roe(cfg) => roe_fluxes(mesh, field, params, bc, cfg)?,
        };
        corrector_update(mesh, field, &fluxes, params, dt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bc::BoundaryKind;
    use crate::mesh::SplitPattern;

    fn schemes() -> [Scheme; 2] {
        [
            Scheme::Fvc(PredictorConfig::default()),
            Scheme::Roe(RoeConfig::for_scale(9.81, 4.0)),
        ]
    }

    #[test]
    fn uniform_flow_is_preserved_with_transmissive_bc() {
        let m = Mesh::rectangle((0.0, 10.0), (0.0, 5.0), 10, 5, SplitPattern::Alternating).unwrap();
        let f = ConservedField::uniform(m.n_cells(), ConservedState::from_primitive(1.2, 0.8, 0.3));
        let bc = BoundarySpec::uniform(BoundaryKind::Transmissive);
        let params = PhysParams { g: 9.81, f_c: 0.0 };
        for s in schemes() {
            let next = s.step(&m, &f, params, &bc, 0.05).unwrap();
            assert!(next.max_abs_diff(&f) < 1e-13, "{}: {}", s.name(), next.max_abs_diff(&f));
        }
    }

    #[test]
    fn dam_break_step_conserves_mass_with_walls() {
        let m = Mesh::rectangle((0.0, 100.0), (0.0, 100.0), 36, 36, SplitPattern::Fixed).unwrap();
        let f = ConservedField::new(
            m.cells
                .iter()
                .map(|c| ConservedState::new(if c.centroid.x < 50.0 { 4.0 } else { 2.0 }, 0.0, 0.0))
                .collect(),
            0.0,
        );
        let bc = BoundarySpec::uniform(BoundaryKind::Wall);
        let params = PhysParams { g: 9.81, f_c: 0.5 };
        let m0 = f.total_mass(&m);
        for s in schemes() {
            let next = s.step(&m, &f, params, &bc, 0.1).unwrap();
            assert!(((next.total_mass(&m) - m0) / m0).abs() < 1e-12);
        }
    }

    #[test]
    fn roe_lake_at_rest() {
        let m = Mesh::rectangle((0.0, 3.0), (0.0, 3.0), 5, 5, SplitPattern::Fixed).unwrap();
        let f = ConservedField::uniform(m.n_cells(), ConservedState::new(1.0, 0.0, 0.0));
        for kind in [BoundaryKind::Wall, BoundaryKind::Transmissive] {
            let next = roe_step(
                &m,
                &f,
                PhysParams { g: 9.81, f_c: 2.0 },
                &BoundarySpec::uniform(kind),
                0.05,
                RoeConfig::default(),
            )
            .unwrap();
            assert!(next.max_abs_diff(&f) < 1e-13);
        }
    }

    #[test]
    fn coriolis_source_rotates_uniform_momentum() {
        // with uniform flow every flux divergence vanishes and only the
        // explicit source acts
        let m = Mesh::rectangle((0.0, 2.0), (0.0, 2.0), 2, 2, SplitPattern::Fixed).unwrap();
        let fluxes = vec![[0.0; 3]; m.n_edges()];
        let f = ConservedField::uniform(m.n_cells(), ConservedState::new(1.0, 1.0, 0.0));
        let next = corrector_update(&m, &f, &fluxes, PhysParams { g: 1.0, f_c: 2.0 }, 0.1).unwrap();
        assert_eq!(next.cells[0], ConservedState::new(1.0, 1.0, -0.2));
    }

    #[test]
    fn positivity_failure_names_cell() {
        let m = Mesh::rectangle((0.0, 1.0), (0.0, 1.0), 1, 1, SplitPattern::Fixed).unwrap();
        let mut fluxes = vec![[0.0; 3]; m.n_edges()];
        let out = m.cell_edges[0][0];
        fluxes[out] = if m.edges[out].left == 0 { [100.0, 0.0, 0.0] } else { [-100.0, 0.0, 0.0] };
        let f = ConservedField::uniform(2, ConservedState::new(1.0, 0.0, 0.0));
        let err = corrector_update(&m, &f, &fluxes, PhysParams::default(), 1.0).unwrap_err();
        assert!(matches!(
            err,
            SolverError::Positivity { location: Location::CellAtTime { cell: 0, .. }, .. }
        ));
    }
}
