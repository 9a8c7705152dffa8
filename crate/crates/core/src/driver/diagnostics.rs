//! Per-step integral quantities.

use crate::mesh::Mesh;
use crate::swe::{ConservedField, PhysParams, H_MIN};

/// Local Froude number `|u| / sqrt(g h)` of every cell.
pub fn froude_field(field: &ConservedField, g: f64) -> Vec<f64> {
    field
        .cells
        .iter()
        .map(|w| {
            let h = w.h.max(H_MIN);
            w.velocity().norm() / (g * h).sqrt()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticRecord {
    pub step: usize,
    pub time: f64,
    pub dt: f64,
    pub mass: f64,
    pub momentum_x: f64,
    pub momentum_y: f64,
    pub max_froude: f64,
    pub min_h: f64,
    pub max_h: f64,
}

impl DiagnosticRecord {
    pub fn compute(step: usize, dt: f64, mesh: &Mesh, field: &ConservedField, params: PhysParams) -> Self {
        let (momentum_x, momentum_y) = field.total_momentum(mesh);
        let (min_h, max_h) = field
            .cells
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), w| (lo.min(w.h), hi.max(w.h)));
        Self {
            step,
            time: field.time,
            dt,
            mass: field.total_mass(mesh),
            momentum_x,
            momentum_y,
            max_froude: froude_field(field, params.g).into_iter().fold(0.0, f64::max),
            min_h,
            max_h,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    pub records: Vec<DiagnosticRecord>,
}

impl Diagnostics {
    pub fn record(&mut self, step: usize, dt: f64, mesh: &Mesh, field: &ConservedField, params: PhysParams) {
        self.records
            .push(DiagnosticRecord::compute(step, dt, mesh, field, params));
    }

    pub fn last(&self) -> Option<&DiagnosticRecord> {
        self.records.last()
    }

    /// Largest Froude number seen over the whole run.
    pub fn peak_froude(&self) -> f64 {
        self.records.iter().map(|r| r.max_froude).fold(0.0, f64::max)
    }

    /// Largest relative change of mass with respect to the first record.
    pub fn mass_drift(&self) -> f64 {
        let Some(first) = self.records.first() else {
            return 0.0;
        };
        self.records
            .iter()
            .map(|r| ((r.mass - first.mass) / first.mass).abs())
            .fold(0.0, f64::max)
    }
}
