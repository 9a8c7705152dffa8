//! Configuration files, mesh loading and output writers.

mod config;
mod table;
mod vtk;

use std::path::Path;

pub use config::{parse_config, parse_config_str, CONFIG_KEYS};
pub use table::{write_convergence_csv, DiagnosticsWriter};
pub use vtk::{write_vtk, write_vtk_to, OutputFrame};

use crate::error::MeshError;
use crate::mesh::Mesh;

/// Loads a Gmsh `.msh` file, or the plain-text format for any other extension.
pub fn load_mesh(path: &Path) -> Result<Mesh, MeshError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("msh") => Mesh::load_gmsh(path),
        _ => Mesh::load_raw(path),
    }
}
