//! Structured triangulations of rectangles.

use super::Mesh;
use crate::error::MeshError;
use crate::geometry::Vec2;

/// How each grid quad is cut into two triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitPattern {
    /// Every quad is cut along its lower-left to upper-right diagonal.
    #[default]
    Fixed,
    /// The diagonal direction alternates in a checkerboard, which makes the
    /// mesh mirror-symmetric about both centre lines when `nx`, `ny` are even.
    Alternating,
}

/// Vertices and triangles of an `nx` x `ny` structured triangulation.
pub fn rect_triangles(
    x_range: (f64, f64),
    y_range: (f64, f64),
    nx: usize,
    ny: usize,
    split: SplitPattern,
) -> Result<(Vec<Vec2>, Vec<[usize; 3]>), MeshError> {
    let (x0, x1) = x_range;
    let (y0, y1) = y_range;
    if nx == 0 || ny == 0 {
        return Err(MeshError::InvalidRectangle(format!("nx = {nx}, ny = {ny}")));
    }
    if !(x1 > x0) || !(y1 > y0) || !(x0.is_finite() && x1.is_finite() && y0.is_finite() && y1.is_finite())
    {
        return Err(MeshError::InvalidRectangle(format!(
            "[{x0}, {x1}] x [{y0}, {y1}]"
        )));
    }
    let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        // exact end points so that adjacent blocks line up
        let y = if j == ny { y1 } else { y0 + (y1 - y0) * j as f64 / ny as f64 };
        for i in 0..=nx {
            let x = if i == nx { x1 } else { x0 + (x1 - x0) * i as f64 / nx as f64 };
            vertices.push(Vec2::new(x, y));
        }
    }
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut triangles = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            let forward = match split {
                SplitPattern::Fixed => true,
                SplitPattern::Alternating => (i + j) % 2 == 0,
            };
            if forward {
                triangles.push([a, b, c]);
                triangles.push([a, c, d]);
            } else {
                triangles.push([a, b, d]);
                triangles.push([b, c, d]);
            }
        }
    }
    Ok((vertices, triangles))
}

/// Drops vertices no triangle references and renumbers the rest densely.
pub(crate) fn compact(vertices: &[Vec2], triangles: &mut [[usize; 3]]) -> Vec<Vec2> {
    let mut map = vec![usize::MAX; vertices.len()];
    let mut kept = Vec::new();
    for tri in triangles.iter_mut() {
        for v in tri.iter_mut() {
            if map[*v] == usize::MAX {
                map[*v] = kept.len();
                kept.push(vertices[*v]);
            }
            *v = map[*v];
        }
    }
    kept
}

impl Mesh {
    /// Structured triangulation of `x_range` x `y_range` with `2 nx ny` cells.
    pub fn rectangle(
        x_range: (f64, f64),
        y_range: (f64, f64),
        nx: usize,
        ny: usize,
        split: SplitPattern,
    ) -> Result<Mesh, MeshError> {
        let (v, t) = rect_triangles(x_range, y_range, nx, ny, split)?;
        Mesh::from_triangles(v, t)
    }

    /// Structured triangulation with every cell whose centroid satisfies
    /// `remove` taken out (used to carve obstacles such as a dam).
    pub fn rectangle_with_holes(
        x_range: (f64, f64),
        y_range: (f64, f64),
        nx: usize,
        ny: usize,
        split: SplitPattern,
        remove: impl Fn(Vec2) -> bool,
    ) -> Result<Mesh, MeshError> {
        let (v, t) = rect_triangles(x_range, y_range, nx, ny, split)?;
        let mut t: Vec<[usize; 3]> = t
            .into_iter()
            .filter(|tri| {
                let c = (v[tri[0]] + v[tri[1]] + v[tri[2]]) / 3.0;
                !remove(c)
            })
            .collect();
        let v = compact(&v, &mut t);
        Mesh::from_triangles(v, t)
    }
}
