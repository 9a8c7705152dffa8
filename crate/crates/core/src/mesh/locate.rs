//! Point location by straight walking through the triangulation.

use super::Mesh;
use crate::geometry::{barycentric, closest_on_segment, Vec2};

const BARY_TOL: f64 = 1e-12;

impl Mesh {
    #[inline]
    pub fn barycentric(&self, cell: usize, p: Vec2) -> [f64; 3] {
        let [a, b, c] = self.cells[cell].vertices.map(|v| self.vertices[v]);
        barycentric(p, a, b, c)
    }

    #[inline]
    pub fn contains(&self, cell: usize, p: Vec2) -> bool {
        self.barycentric(cell, p).iter().all(|&l| l >= -BARY_TOL)
    }

    /// Cell containing `p`, walking from `hint` (or cell 0).
    ///
    /// Points on a shared edge or vertex resolve to the lowest-index cell
    /// that contains them. Returns `None` outside the domain.
    pub fn locate_point(&self, p: Vec2, hint: Option<usize>) -> Option<usize> {
        if !p.is_finite() {
            return None;
        }
        let start = hint.filter(|&h| h < self.n_cells()).unwrap_or(0);
        let found = match self.walk(p, start) {
            Walk::Found(c) => Some(c),
            // the walk leaves through the boundary or loops: on non-convex
            // domains the point may still be inside
            Walk::Exited | Walk::Exhausted => self.scan(p),
        }?;
        Some(self.lowest_containing(found, p))
    }

    fn walk(&self, p: Vec2, start: usize) -> Walk {
        let mut cell = start;
        let mut prev = usize::MAX;
        for _ in 0..self.n_cells() {
            let l = self.barycentric(cell, p);
            if l.iter().all(|&x| x >= -BARY_TOL) {
                return Walk::Found(cell);
            }
            // cross the edge opposite the most negative coordinate, avoiding
            // an immediate bounce back to where we came from
            let mut order = [0usize, 1, 2];
            order.sort_by(|&a, &b| l[a].total_cmp(&l[b]));
            let mut next = None;
            let mut exited = false;
            for &k in &order {
                if l[k] >= -BARY_TOL {
                    break;
                }
                match self.neighbor(cell, self.cell_edges[cell][k]) {
                    Some(n) if n != prev => {
                        next = Some(n);
                        break;
                    }
                    Some(_) => {}
                    None => exited = true,
                }
            }
            match next {
                Some(n) => {
                    prev = cell;
                    cell = n;
                }
                None if exited => return Walk::Exited,
                None => return Walk::Exhausted,
            }
        }
        Walk::Exhausted
    }

    fn scan(&self, p: Vec2) -> Option<usize> {
        let (lo, hi) = self.bounding_box();
        let pad = 1e-12 * (hi - lo).norm();
        if p.x < lo.x - pad || p.x > hi.x + pad || p.y < lo.y - pad || p.y > hi.y + pad {
            return None;
        }
        (0..self.n_cells()).find(|&c| self.contains(c, p))
    }

    fn lowest_containing(&self, cell: usize, p: Vec2) -> usize {
        let l = self.barycentric(cell, p);
        if l.iter().all(|&x| x > BARY_TOL) {
            return cell;
        }
        let mut best = cell;
        for &v in &self.cells[cell].vertices {
            for &c in &self.vertex_cells[v] {
                if c < best && self.contains(c, p) {
                    best = c;
                }
            }
        }
        best
    }

    /// Nearest boundary edge to `p` and the closest point on it.
    pub fn nearest_boundary_point(&self, p: Vec2) -> Option<(usize, Vec2)> {
        let mut best: Option<(usize, Vec2, f64)> = None;
        for &e in &self.boundary_edges {
            let [a, b] = self.edges[e].vertices.map(|v| self.vertices[v]);
            let q = closest_on_segment(p, a, b);
            let d = q.distance(p);
            if best.is_none_or(|(_, _, bd)| d < bd) {
                best = Some((e, q, d));
            }
        }
        best.map(|(e, q, _)| (e, q))
    }
}

enum Walk {
    Found(usize),
    Exited,
    Exhausted,
}
