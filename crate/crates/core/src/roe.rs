//! First-order Roe flux for the shallow water equations, used as the
//! baseline against the characteristics scheme.
//!
//! States are rotated into the edge frame, the 1D Roe flux is evaluated with
//! the tangential velocity as a passive scalar, and the result is rotated back.

use crate::error::{Location, SolverError};
use crate::geometry::Vec2;
use crate::swe::{flux_from_normal, ConservedState, ProjectedState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoeConfig {
    /// Harten entropy-fix threshold (m/s); 0 disables the fix.
    pub entropy_fix_delta: f64,
}

impl Default for RoeConfig {
    fn default() -> Self {
        Self {
            entropy_fix_delta: 0.0,
        }
    }
}

impl RoeConfig {
    /// `delta = 1e-6 sqrt(g h_ref)`.
    pub fn for_scale(g: f64, h_ref: f64) -> Self {
        Self {
            entropy_fix_delta: 1e-6 * (g * h_ref).sqrt(),
        }
    }
}

#[inline]
fn harten(lambda: f64, delta: f64) -> f64 {
    let a = lambda.abs();
    if a < delta {
        (lambda * lambda + delta * delta) / (2.0 * delta)
    } else {
        a
    }
}

/// Roe flux in the edge frame.
pub fn roe_normal_flux(l: &ProjectedState, r: &ProjectedState, g: f64, delta: f64) -> [f64; 3] {
    let fl = l.normal_flux(g);
    let fr = r.normal_flux(g);

    let (sl, sr) = (l.h.sqrt(), r.h.sqrt());
    let u = (sl * l.u_eta + sr * r.u_eta) / (sl + sr);
    let v = (sl * l.u_tau + sr * r.u_tau) / (sl + sr);
    let c = (0.5 * g * (l.h + r.h)).sqrt();

    let dh = r.h - l.h;
    let dq = r.h * r.u_eta - l.h * l.u_eta;
    let dp = r.h * r.u_tau - l.h * l.u_tau;

    let a1 = ((u + c) * dh - dq) / (2.0 * c);
    let a2 = dp - v * dh;
    let a3 = (dq - (u - c) * dh) / (2.0 * c);

    let k1 = harten(u - c, delta) * a1;
    let k2 = harten(u, delta) * a2;
    let k3 = harten(u + c, delta) * a3;

    [
        0.5 * (fl[0] + fr[0]) - 0.5 * (k1 + k3),
        0.5 * (fl[1] + fr[1]) - 0.5 * (k1 * (u - c) + k3 * (u + c)),
        0.5 * (fl[2] + fr[2]) - 0.5 * ((k1 + k3) * v + k2),
    ]
}

/// Roe numerical flux through an edge with unit normal `n` (pointing from
/// `w_l` to `w_r`).
pub fn roe_flux(
    w_l: &ConservedState,
    w_r: &ConservedState,
    n: Vec2,
    g: f64,
    cfg: RoeConfig,
) -> Result<[f64; 3], SolverError> {
    w_l.check_positive(Location::State)?;
    w_r.check_positive(Location::State)?;
    let f = roe_normal_flux(&w_l.project(n), &w_r.project(n), g, cfg.entropy_fix_delta);
    Ok(flux_from_normal(f, n))
}
