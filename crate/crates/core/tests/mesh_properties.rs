use fvc_swe::mesh::{Mesh, SplitPattern};
use fvc_swe::Vec2;
use proptest::prelude::*;

fn affine(a: f64, b: f64, c: f64) -> impl Fn(Vec2) -> f64 {
    move |p| a + b * p.x + c * p.y
}

fn check_affine_exact(m: &Mesh, a: f64, b: f64, c: f64) {
    let f = affine(a, b, c);
    let scale = 1.0 + b.abs() + c.abs();
    for (e, d) in m.diamonds.iter().enumerate() {
        let Some(d) = d else { continue };
        let g = m
            .diamond_gradient(
                e,
                f(d.l_center),
                f(d.r_center),
                f(m.vertices[d.s_vertex]),
                f(m.vertices[d.n_vertex]),
            )
            .unwrap();
        assert!(
            (g.x - b).abs() < 1e-9 * scale && (g.y - c).abs() < 1e-9 * scale,
            "edge {e}: {g:?} vs ({b}, {c})"
        );
    }
}

/// Mesh of a jittered grid, so that no two triangles are congruent.
fn jittered(nx: usize, ny: usize, seed: u64, split: SplitPattern) -> Mesh {
    let m = Mesh::rectangle((0.0, 1.0), (0.0, 1.0), nx, ny, split).unwrap();
    let hx = 1.0 / nx as f64;
    let hy = 1.0 / ny as f64;
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut rnd = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
    };
    let vertices: Vec<Vec2> = m
        .vertices
        .iter()
        .map(|p| {
            let on_x = p.x == 0.0 || (p.x - 1.0).abs() < 1e-12;
            let on_y = p.y == 0.0 || (p.y - 1.0).abs() < 1e-12;
            let dx = if on_x { 0.0 } else { 0.3 * hx * rnd() };
            let dy = if on_y { 0.0 } else { 0.3 * hy * rnd() };
            Vec2::new(p.x + dx, p.y + dy)
        })
        .collect();
    let tris = m.cells.iter().map(|c| c.vertices).collect();
    Mesh::from_triangles(vertices, tris).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diamond_gradient_is_exact_for_affine_fields(
        a in -10.0..10.0f64, b in -10.0..10.0f64, c in -10.0..10.0f64,
        nx in 1usize..8, ny in 1usize..8, seed in any::<u64>(), alt in any::<bool>(),
    ) {
        let split = if alt { SplitPattern::Alternating } else { SplitPattern::Fixed };
        check_affine_exact(&Mesh::rectangle((-2.0, 3.0), (0.0, 1.5), nx, ny, split).unwrap(), a, b, c);
        check_affine_exact(&jittered(nx + 1, ny + 1, seed, split), a, b, c);
    }

    #[test]
    fn cell_normals_close_the_polygon(nx in 1usize..8, ny in 1usize..8, seed in any::<u64>()) {
        let m = jittered(nx, ny, seed, SplitPattern::Alternating);
        for (c, edges) in m.cell_edges.iter().enumerate() {
            let s = edges
                .iter()
                .fold(Vec2::ZERO, |acc, &e| acc + m.outward_normal(c, e) * m.edges[e].length);
            prop_assert!(s.norm() < 1e-12, "cell {c}: {s:?}");
        }
    }

    #[test]
    fn edge_count_identity(nx in 1usize..12, ny in 1usize..12, alt in any::<bool>()) {
        let split = if alt { SplitPattern::Alternating } else { SplitPattern::Fixed };
        let m = Mesh::rectangle((0.0, 1.0), (0.0, 1.0), nx, ny, split).unwrap();
        prop_assert_eq!(2 * m.n_edges(), 3 * m.n_cells() + m.boundary_edges.len());
        prop_assert_eq!(m.n_interior_edges() + m.boundary_edges.len(), m.n_edges());
        prop_assert!((m.total_area() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn accuracy_mesh_gradients() {
    let m = Mesh::rectangle((0.0, 100.0), (0.0, 100.0), 36, 36, SplitPattern::Fixed).unwrap();
    check_affine_exact(&m, 3.0, -0.02, 0.0);
    check_affine_exact(&m, 0.0, 0.5, 1.5);
}
