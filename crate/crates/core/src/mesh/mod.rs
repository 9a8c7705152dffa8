//! Unstructured triangular mesh with edge-based connectivity.
//!
//! Conventions:
//! - cells are stored counter-clockwise; `cell_edges[c][k]` is the edge
//!   opposite local vertex `k`
//! - every edge stores `(s, n)` in the order its left cell traverses them,
//!   so the unit normal `(b - a)` rotated by -90 degrees points from the left
//!   cell towards the right cell (outwards on the boundary)
//! - a diamond is the quadrilateral `S -> R -> N -> L` around an interior
//!   edge, with `L`, `R` the centroids of the adjacent cells

mod generate;
mod gmsh;
mod locate;
mod raw;

use std::collections::HashMap;

pub use generate::{rect_triangles, SplitPattern};
pub use gmsh::parse_gmsh;
pub use raw::{parse_raw, write_raw};

use crate::error::MeshError;
use crate::geometry::{polygon_area, signed_area, Vec2};

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    /// Vertex indices, counter-clockwise.
    pub vertices: [usize; 3],
    pub centroid: Vec2,
    pub area: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    /// Endpoints `(S, N)`, ordered as the left cell traverses them.
    pub vertices: [usize; 2],
    pub left: usize,
    /// `None` on the boundary.
    pub right: Option<usize>,
    pub midpoint: Vec2,
    pub length: f64,
    /// Unit normal pointing from `left` to `right` (outward on the boundary).
    pub normal: Vec2,
    /// Physical group of the boundary segment, when the mesh file provides one.
    pub tag: Option<i32>,
}

impl Edge {
    #[inline]
    pub fn is_boundary(&self) -> bool {
        self.right.is_none()
    }
}

/// Co-volume `S -> R -> N -> L` around an interior edge.
#[derive(Debug, Clone, PartialEq)]
pub struct DiamondCell {
    pub edge: usize,
    pub s_vertex: usize,
    pub n_vertex: usize,
    pub l_center: Vec2,
    pub r_center: Vec2,
    /// Distance between the two centroids.
    pub lr_length: f64,
    /// `(R - L) / |R - L|` rotated by -90 degrees; `S` lies on its positive side.
    pub lr_normal: Vec2,
    pub area: f64,
}

impl DiamondCell {
    /// Interface gradient from the values at the four diamond corners.
    ///
    /// `edge_normal` and `edge_length` are those of the primal edge `S N`.
    #[inline]
    pub fn gradient(
        &self,
        edge_normal: Vec2,
        edge_length: f64,
        u_l: f64,
        u_r: f64,
        u_s: f64,
        u_n: f64,
    ) -> Vec2 {
        let along_lr = self.lr_normal * ((u_s - u_n) * self.lr_length);
        let across = edge_normal * ((u_r - u_l) * edge_length);
        (along_lr + across) / (2.0 * self.area)
    }
}

/// Immutable triangular mesh with precomputed geometry.
#[derive(Debug, Clone)]
pub struct Mesh {
    pub vertices: Vec<Vec2>,
    pub cells: Vec<Cell>,
    pub edges: Vec<Edge>,
    /// Indexed by edge id; `None` for boundary edges.
    pub diamonds: Vec<Option<DiamondCell>>,
    /// `cell_edges[c][k]` is the edge opposite local vertex `k` of cell `c`.
    pub cell_edges: Vec<[usize; 3]>,
    pub vertex_cells: Vec<Vec<usize>>,
    pub boundary_edges: Vec<usize>,
}

/// Summary statistics printed by `mesh-info`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshQuality {
    pub min_area: f64,
    pub max_area: f64,
    pub min_angle_deg: f64,
    pub min_edge_length: f64,
    pub max_edge_length: f64,
    pub min_diamond_area: f64,
    pub total_area: f64,
}

impl Mesh {
    /// Builds connectivity from raw vertices and triangles.
    pub fn from_triangles(vertices: Vec<Vec2>, triangles: Vec<[usize; 3]>) -> Result<Self, MeshError> {
        Self::from_tagged_triangles(vertices, triangles, &[])
    }

    /// As [`Mesh::from_triangles`], additionally tagging boundary edges whose
    /// endpoints match one of `boundary_segments`.
    pub fn from_tagged_triangles(
        vertices: Vec<Vec2>,
        mut triangles: Vec<[usize; 3]>,
        boundary_segments: &[([usize; 2], i32)],
    ) -> Result<Self, MeshError> {
        if triangles.is_empty() {
            return Err(MeshError::NoTriangles);
        }
        let nv = vertices.len();
        let mut cells = Vec::with_capacity(triangles.len());
        for (c, tri) in triangles.iter_mut().enumerate() {
            for &v in tri.iter() {
                if v >= nv {
                    return Err(MeshError::BadVertexIndex {
                        cell: c,
                        vertex: v,
                        n_vertices: nv,
                    });
                }
            }
            let [a, b, d] = tri.map(|v| vertices[v]);
            let mut area = signed_area(a, b, d);
            if area < 0.0 {
                tri.swap(1, 2);
                area = -area;
            }
            if !(area > 0.0) || tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(MeshError::DegenerateCell { cell: c });
            }
            let centroid = (a + b + d) / 3.0;
            cells.push(Cell {
                vertices: *tri,
                centroid,
                area,
            });
        }

        let mut edges: Vec<Edge> = Vec::with_capacity(3 * cells.len() / 2 + 3);
        let mut lookup: HashMap<(usize, usize), usize> = HashMap::with_capacity(3 * cells.len());
        let mut cell_edges = vec![[0usize; 3]; cells.len()];
        for (c, cell) in cells.iter().enumerate() {
            #[allow(clippy::needless_range_loop)] // k also names the opposite vertex
            for k in 0..3 {
                let a = cell.vertices[(k + 1) % 3];
                let b = cell.vertices[(k + 2) % 3];
                let key = (a.min(b), a.max(b));
                match lookup.get(&key) {
                    None => {
                        let (pa, pb) = (vertices[a], vertices[b]);
                        let d = pb - pa;
                        let length = d.norm();
                        lookup.insert(key, edges.len());
                        cell_edges[c][k] = edges.len();
                        edges.push(Edge {
                            vertices: [a, b],
                            left: c,
                            right: None,
                            midpoint: (pa + pb) * 0.5,
                            length,
                            normal: d.perp_cw() / length,
                            tag: None,
                        });
                    }
                    Some(&e) => {
                        let edge = &mut edges[e];
                        if edge.right.is_some() || edge.vertices != [b, a] {
                            return Err(MeshError::NonManifoldEdge { a: key.0, b: key.1 });
                        }
                        edge.right = Some(c);
                        cell_edges[c][k] = e;
                    }
                }
            }
        }

        for &(seg, tag) in boundary_segments {
            let key = (seg[0].min(seg[1]), seg[0].max(seg[1]));
            if let Some(&e) = lookup.get(&key) {
                if edges[e].is_boundary() {
                    edges[e].tag = Some(tag);
                }
            }
        }

        let mut diamonds = Vec::with_capacity(edges.len());
        for (e, edge) in edges.iter().enumerate() {
            diamonds.push(match edge.right {
                None => None,
                Some(r) => Some(build_diamond(e, edge, &vertices, &cells[edge.left], &cells[r])?),
            });
        }

        let mut vertex_cells = vec![Vec::new(); nv];
        for (c, cell) in cells.iter().enumerate() {
            for &v in &cell.vertices {
                vertex_cells[v].push(c);
            }
        }
        let boundary_edges = edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_boundary())
            .map(|(i, _)| i)
            .collect();

        Ok(Mesh {
            vertices,
            cells,
            edges,
            diamonds,
            cell_edges,
            vertex_cells,
            boundary_edges,
        })
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_interior_edges(&self) -> usize {
        self.edges.len() - self.boundary_edges.len()
    }

    pub fn total_area(&self) -> f64 {
        self.cells.iter().map(|c| c.area).sum()
    }

    /// Unit normal of edge `e` pointing out of `cell`.
    #[inline]
    pub fn outward_normal(&self, cell: usize, e: usize) -> Vec2 {
        let edge = &self.edges[e];
        if edge.left == cell {
            edge.normal
        } else {
            -edge.normal
        }
    }

    /// Cell on the other side of edge `e`, seen from `cell`.
    #[inline]
    pub fn neighbor(&self, cell: usize, e: usize) -> Option<usize> {
        let edge = &self.edges[e];
        if edge.left == cell {
            edge.right
        } else {
            Some(edge.left)
        }
    }

    /// Gradient at the midpoint of interior edge `edge` reconstructed on its
    /// diamond cell from the values at `L`, `R`, `S`, `N`.
    pub fn diamond_gradient(
        &self,
        edge: usize,
        u_l: f64,
        u_r: f64,
        u_s: f64,
        u_n: f64,
    ) -> Result<Vec2, MeshError> {
        let d = self.diamonds[edge]
            .as_ref()
            .ok_or(MeshError::BoundaryEdge(edge))?;
        let e = &self.edges[edge];
        Ok(d.gradient(e.normal, e.length, u_l, u_r, u_s, u_n))
    }

    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = Vec2::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Vec2::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (lo, hi)
    }

    pub fn quality(&self) -> MeshQuality {
        let mut q = MeshQuality {
            min_area: f64::INFINITY,
            max_area: 0.0,
            min_angle_deg: 180.0,
            min_edge_length: f64::INFINITY,
            max_edge_length: 0.0,
            min_diamond_area: f64::INFINITY,
            total_area: self.total_area(),
        };
        for cell in &self.cells {
            q.min_area = q.min_area.min(cell.area);
            q.max_area = q.max_area.max(cell.area);
            let p = cell.vertices.map(|v| self.vertices[v]);
            for k in 0..3 {
                let a = p[(k + 1) % 3] - p[k];
                let b = p[(k + 2) % 3] - p[k];
                let ang = a.cross(b).atan2(a.dot(b)).abs().to_degrees();
                q.min_angle_deg = q.min_angle_deg.min(ang);
            }
        }
        for e in &self.edges {
            q.min_edge_length = q.min_edge_length.min(e.length);
            q.max_edge_length = q.max_edge_length.max(e.length);
        }
        for d in self.diamonds.iter().flatten() {
            q.min_diamond_area = q.min_diamond_area.min(d.area);
        }
        q
    }

    /// Distinct boundary tags with their edge counts, sorted by tag.
    pub fn boundary_tag_counts(&self) -> Vec<(Option<i32>, usize)> {
        let mut counts: std::collections::BTreeMap<Option<i32>, usize> = Default::default();
        for &e in &self.boundary_edges {
            *counts.entry(self.edges[e].tag).or_default() += 1;
        }
        counts.into_iter().collect()
    }
}

fn build_diamond(
    e: usize,
    edge: &Edge,
    vertices: &[Vec2],
    left: &Cell,
    right: &Cell,
) -> Result<DiamondCell, MeshError> {
    let [s_vertex, n_vertex] = edge.vertices;
    let (l_center, r_center) = (left.centroid, right.centroid);
    let lr = r_center - l_center;
    let lr_length = lr.norm();
    let area = polygon_area(&[vertices[s_vertex], r_center, vertices[n_vertex], l_center]);
    if !(area > 1e-14 * edge.length * edge.length) || lr_length == 0.0 {
        return Err(MeshError::DegenerateDiamond { edge: e, area });
    }
    Ok(DiamondCell {
        edge: e,
        s_vertex,
        n_vertex,
        l_center,
        r_center,
        lr_length,
        lr_normal: lr.perp_cw() / lr_length,
        area,
    })
}
