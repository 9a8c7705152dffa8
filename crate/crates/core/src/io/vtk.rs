//! Legacy ASCII VTK writer for cell-centred fields.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::driver::froude_field;
use crate::error::OutputError;
use crate::mesh::Mesh;
use crate::swe::{ConservedField, PhysParams};

/// Primitive fields of one output instant.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputFrame {
    pub time: f64,
    pub h: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub froude: Vec<f64>,
}

impl OutputFrame {
    pub fn from_field(field: &ConservedField, params: PhysParams) -> Self {
        let n = field.len();
        let (mut h, mut u, mut v) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
        for w in &field.cells {
            let (hh, uu, vv) = w.primitive();
            h.push(hh);
            u.push(uu);
            v.push(vv);
        }
        Self {
            time: field.time,
            h,
            u,
            v,
            froude: froude_field(field, params.g),
        }
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }
}

pub fn write_vtk(mesh: &Mesh, frame: &OutputFrame, path: impl AsRef<Path>) -> Result<(), OutputError> {
    let path = path.as_ref();
    let io_err = |source| OutputError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    write_vtk_to(mesh, frame, &mut out).map_err(|e| match e {
        VtkError::Size(expected, got) => OutputError::FrameSize { expected, got },
        VtkError::Io(source) => io_err(source),
    })?;
    out.flush().map_err(io_err)
}

#[derive(Debug)]
pub enum VtkError {
    Size(usize, usize),
    Io(std::io::Error),
}

impl From<std::io::Error> for VtkError {
    fn from(e: std::io::Error) -> Self {
        VtkError::Io(e)
    }
}

/// Writes the frame to any sink; numbers carry 17 significant digits.
pub fn write_vtk_to(mesh: &Mesh, frame: &OutputFrame, out: &mut impl Write) -> Result<(), VtkError> {
    let n = mesh.n_cells();
    for len in [frame.h.len(), frame.u.len(), frame.v.len(), frame.froude.len()] {
        if len != n {
            return Err(VtkError::Size(n, len));
        }
    }
    writeln!(out, "# vtk DataFile Version 3.0")?;
    writeln!(out, "shallow water depth and velocity, t = {:.16e}", frame.time)?;
    writeln!(out, "ASCII")?;
    writeln!(out, "DATASET UNSTRUCTURED_GRID")?;
    writeln!(out, "POINTS {} double", mesh.n_vertices())?;
    for p in &mesh.vertices {
        writeln!(out, "{:.16e} {:.16e} 0", p.x, p.y)?;
    }
    writeln!(out, "CELLS {} {}", n, 4 * n)?;
    for c in &mesh.cells {
        let [a, b, d] = c.vertices;
        writeln!(out, "3 {a} {b} {d}")?;
    }
    writeln!(out, "CELL_TYPES {n}")?;
    for _ in 0..n {
        writeln!(out, "5")?;
    }
    writeln!(out, "CELL_DATA {n}")?;
    for (name, values) in [("h", &frame.h), ("froude", &frame.froude)] {
        writeln!(out, "SCALARS {name} double 1")?;
        writeln!(out, "LOOKUP_TABLE default")?;
        for x in values {
            writeln!(out, "{x:.16e}")?;
        }
    }
    writeln!(out, "VECTORS velocity double")?;
    for (u, v) in frame.u.iter().zip(&frame.v) {
        writeln!(out, "{u:.16e} {v:.16e} 0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::SplitPattern;
    use crate::swe::ConservedState;

    #[test]
    fn layout() {
        let m = Mesh::rectangle((0.0, 1.0), (0.0, 1.0), 1, 1, SplitPattern::Fixed).unwrap();
        let f = ConservedField::uniform(2, ConservedState::from_primitive(2.0, 0.5, 0.0));
        let mut buf = Vec::new();
        write_vtk_to(&m, &OutputFrame::from_field(&f, PhysParams::default()), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# vtk DataFile Version 3.0");
        assert_eq!(lines[3], "DATASET UNSTRUCTURED_GRID");
        assert_eq!(lines[4], "POINTS 4 double");
        assert_eq!(lines[9], "CELLS 2 8");
        assert!(text.contains("CELL_TYPES 2\n5\n5\n"));
        assert!(text.contains("SCALARS h double 1\nLOOKUP_TABLE default\n2.0000000000000000e0\n"));
        assert!(text.contains("VECTORS velocity double\n5.0000000000000000e-1 0.0000000000000000e0 0\n"));
    }

    #[test]
    fn size_mismatch() {
        let m = Mesh::rectangle((0.0, 1.0), (0.0, 1.0), 1, 1, SplitPattern::Fixed).unwrap();
        let f = ConservedField::uniform(3, ConservedState::new(1.0, 0.0, 0.0));
        let frame = OutputFrame::from_field(&f, PhysParams::default());
        assert!(matches!(write_vtk_to(&m, &frame, &mut Vec::new()), Err(VtkError::Size(2, 3))));
    }
}
