//! Plain-text mesh format used for fixtures:
//!
//! ```text
//! <n_vertices> <n_triangles>
//! x y            (n_vertices lines)
//! a b c          (n_triangles lines, 0-based)
//! ```
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::path::Path;

use super::Mesh;
use crate::error::MeshError;
use crate::geometry::Vec2;

pub fn parse_raw(text: &str) -> Result<Mesh, MeshError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines.next().ok_or(MeshError::Parse {
        line: 0,
        msg: "empty file".into(),
    })?;
    let counts = parse_fields::<usize>(header, line)?;
    let &[nv, nt] = counts.as_slice() else {
        return Err(MeshError::Parse {
            line,
            msg: "header must be `<n_vertices> <n_triangles>`".into(),
        });
    };
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (line, l) = lines.next().ok_or(MeshError::Parse {
            line,
            msg: "truncated vertex list".into(),
        })?;
        match parse_fields::<f64>(l, line)?.as_slice() {
            &[x, y] => vertices.push(Vec2::new(x, y)),
            _ => {
                return Err(MeshError::Parse {
                    line,
                    msg: "expected `x y`".into(),
                })
            }
        }
    }
    let mut triangles = Vec::with_capacity(nt);
    for _ in 0..nt {
        let (line, l) = lines.next().ok_or(MeshError::Parse {
            line,
            msg: "truncated triangle list".into(),
        })?;
        match parse_fields::<usize>(l, line)?.as_slice() {
            &[a, b, c] => triangles.push([a, b, c]),
            _ => {
                return Err(MeshError::Parse {
                    line,
                    msg: "expected `a b c`".into(),
                })
            }
        }
    }
    Mesh::from_triangles(vertices, triangles)
}

pub fn write_raw(mesh: &Mesh) -> String {
    let mut s = format!("{} {}\n", mesh.n_vertices(), mesh.n_cells());
    for v in &mesh.vertices {
        let _ = writeln!(s, "{:.17e} {:.17e}", v.x, v.y);
    }
    for c in &mesh.cells {
        let [a, b, d] = c.vertices;
        let _ = writeln!(s, "{a} {b} {d}");
    }
    s
}

fn parse_fields<T: std::str::FromStr>(l: &str, line: usize) -> Result<Vec<T>, MeshError>
where
    T::Err: std::fmt::Display,
{
    l.split_whitespace()
        .map(|t| {
            t.parse::<T>().map_err(|e| MeshError::Parse {
                line,
                msg: format!("`{t}`: {e}"),
            })
        })
        .collect()
}

impl Mesh {
    pub fn load_raw(path: impl AsRef<Path>) -> Result<Mesh, MeshError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| MeshError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        parse_raw(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::SplitPattern;

    #[test]
    fn round_trip() {
        let m = Mesh::rectangle((0.0, 1.0), (0.0, 2.0), 3, 2, SplitPattern::Alternating).unwrap();
        let back = parse_raw(&write_raw(&m)).unwrap();
        assert_eq!(back.vertices, m.vertices);
        assert_eq!(back.cells, m.cells);
    }

    #[test]
    fn truncated_file() {
        let err = parse_raw("3 1\n0 0\n1 0\n").unwrap_err();
        assert!(matches!(err, MeshError::Parse { .. }), "{err}");
    }
}
