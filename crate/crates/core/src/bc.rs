//! Boundary fluxes through ghost states.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::geometry::Vec2;
use crate::mesh::Mesh;
use crate::roe::{roe_normal_flux, RoeConfig};
use crate::swe::{flux_from_normal, ConservedState, ProjectedState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryKind {
    /// Zero-gradient (Neumann) outflow.
    #[default]
    Transmissive,
    /// Impermeable wall: normal velocity reflected, tangential kept.
    Wall,
}

impl FromStr for BoundaryKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "transmissive" | "neumann" | "open" => Ok(Self::Transmissive),
            "wall" | "reflective" | "no-slip" | "noslip" => Ok(Self::Wall),
            other => Err(format!("unknown boundary kind `{other}`")),
        }
    }
}

impl fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Transmissive => "transmissive",
            Self::Wall => "wall",
        })
    }
}

/// Boundary kind of every boundary edge: explicit per-edge entries win over
/// per-tag entries, which win over the default.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoundarySpec {
    pub default: BoundaryKind,
    pub by_tag: BTreeMap<i32, BoundaryKind>,
    pub by_edge: BTreeMap<usize, BoundaryKind>,
}

impl BoundarySpec {
    pub fn uniform(kind: BoundaryKind) -> Self {
        Self {
            default: kind,
            ..Default::default()
        }
    }

    pub fn kind(&self, mesh: &Mesh, edge: usize) -> BoundaryKind {
        if let Some(&k) = self.by_edge.get(&edge) {
            return k;
        }
        mesh.edges[edge]
            .tag
            .and_then(|t| self.by_tag.get(&t).copied())
            .unwrap_or(self.default)
    }
}

/// How the boundary flux is evaluated; mirrors the interior scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryScheme {
    Fvc,
    Roe(RoeConfig),
}

fn ghost_projected(inner: ProjectedState, kind: BoundaryKind) -> ProjectedState {
    match kind {
        BoundaryKind::Transmissive => inner,
        BoundaryKind::Wall => ProjectedState {
            u_eta: -inner.u_eta,
            ..inner
        },
    }
}

/// Ghost state across a boundary edge with outward unit normal `n`.
pub fn ghost_state(w_in: &ConservedState, n: Vec2, kind: BoundaryKind) -> ConservedState {
    match kind {
        BoundaryKind::Transmissive => *w_in,
        BoundaryKind::Wall => ghost_projected(w_in.project(n), kind).unproject(n),
    }
}

/// Flux through a boundary edge. Computed in the edge frame so that the
/// wall mass flux is exactly zero.
pub fn boundary_flux(
    w_in: &ConservedState,
    n: Vec2,
    kind: BoundaryKind,
    g: f64,
    scheme: BoundaryScheme,
) -> [f64; 3] {
    let inner = w_in.project(n);
    let ghost = ghost_projected(inner, kind);
    let f = match scheme {
        BoundaryScheme::Fvc => ProjectedState {
            h: 0.5 * (inner.h + ghost.h),
            u_eta: 0.5 * (inner.u_eta + ghost.u_eta),
            u_tau: 0.5 * (inner.u_tau + ghost.u_tau),
        }
        .normal_flux(g),
        BoundaryScheme::Roe(cfg) => roe_normal_flux(&inner, &ghost, g, cfg.entropy_fix_delta),
    };
    flux_from_normal(f, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::swe::physical_flux;
    use proptest::prelude::*;

    #[test]
    fn transmissive_ghost_is_identity() {
        let w = ConservedState::new(1.3, 0.4, -2.0);
        assert_eq!(ghost_state(&w, Vec2::new(0.6, 0.8), BoundaryKind::Transmissive), w);
    }

    #[test]
    fn wall_reflects_normal_velocity() {
        let n = Vec2::new(1.0, 0.0);
        let g = ghost_state(&ConservedState::new(2.0, 2.0, 0.0), n, BoundaryKind::Wall);
        assert_eq!(g, ConservedState::new(2.0, -2.0, 0.0));
        let g = ghost_state(&ConservedState::new(2.0, 0.0, 6.0), n, BoundaryKind::Wall);
        assert_eq!(g, ConservedState::new(2.0, 0.0, 6.0));
    }

    #[test]
    fn wall_still_water_is_pure_pressure() {
        let n = Vec2::new(0.6, -0.8);
        let w = ConservedState::new(2.0, 0.0, 0.0);
        for scheme in [BoundaryScheme::Fvc, BoundaryScheme::Roe(RoeConfig::default())] {
            let f = boundary_flux(&w, n, BoundaryKind::Wall, 9.81, scheme);
            assert_eq!(f[0], 0.0);
            assert!((f[1] - 19.62 * n.x).abs() < 1e-13);
            assert!((f[2] - 19.62 * n.y).abs() < 1e-13);
        }
    }

    #[test]
    fn transmissive_uniform_flow_is_physical_flux() {
        let n = Vec2::new(0.6, 0.8);
        let w = ConservedState::from_primitive(1.5, 0.7, -0.3);
        let exact = physical_flux(&w, n, 9.81).unwrap();
        for scheme in [BoundaryScheme::Fvc, BoundaryScheme::Roe(RoeConfig::default())] {
            let f = boundary_flux(&w, n, BoundaryKind::Transmissive, 9.81, scheme);
            for k in 0..3 {
                assert!((f[k] - exact[k]).abs() < 1e-13, "{f:?} vs {exact:?}");
            }
        }
    }

    #[test]
    fn spec_priority() {
        let m = Mesh::rectangle((0.0, 1.0), (0.0, 1.0), 1, 1, Default::default()).unwrap();
        let mut spec = BoundarySpec::uniform(BoundaryKind::Wall);
        let b = m.boundary_edges[0];
        assert_eq!(spec.kind(&m, b), BoundaryKind::Wall);
        spec.by_edge.insert(b, BoundaryKind::Transmissive);
        assert_eq!(spec.kind(&m, b), BoundaryKind::Transmissive);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("Wall".parse::<BoundaryKind>().unwrap(), BoundaryKind::Wall);
        assert_eq!("neumann".parse::<BoundaryKind>().unwrap(), BoundaryKind::Transmissive);
        assert!("slip".parse::<BoundaryKind>().is_err());
    }

    proptest! {
        #[test]
        fn wall_mass_flux_is_zero(h in 0.01f64..10.0, u in -10.0f64..10.0, v in -10.0f64..10.0, th in 0.0f64..6.3) {
            let n = Vec2::new(th.cos(), th.sin());
            let w = ConservedState::from_primitive(h, u, v);
            for scheme in [BoundaryScheme::Fvc, BoundaryScheme::Roe(RoeConfig { entropy_fix_delta: 0.1 })] {
                let f = boundary_flux(&w, n, BoundaryKind::Wall, 9.81, scheme);
                prop_assert_eq!(f[0], 0.0);
            }
        }
    }
}
