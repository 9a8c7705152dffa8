use std::fmt::Write as _;
use std::path::Path;
use std::process::{Command, Output};

use fvc_swe::driver::{run, Case, RunConfig, SchemeKind};
use fvc_swe::io::{load_mesh, parse_config, write_vtk, OutputFrame};
use fvc_swe::mesh::{write_raw, Mesh, SplitPattern};
use fvc_swe::{ConservedField, ConservedState, PhysParams};

/// Minimal legacy-VTK reader covering exactly the layout the writer emits.
struct VtkData {
    title: String,
    points: Vec<[f64; 3]>,
    cells: Vec<Vec<usize>>,
    types: Vec<u8>,
    h: Vec<f64>,
    froude: Vec<f64>,
    velocity: Vec<[f64; 3]>,
}

fn read_vtk(text: &str) -> VtkData {
    let mut lines = text.lines();
    let mut next = || lines.next().expect("truncated file");
    assert_eq!(next(), "# vtk DataFile Version 3.0");
    let title = next().to_string();
    assert_eq!(next(), "ASCII");
    assert_eq!(next(), "DATASET UNSTRUCTURED_GRID");
    let header = |line: &str, key: &str| -> Vec<usize> {
        let mut parts = line.split_whitespace();
        assert_eq!(parts.next(), Some(key), "{line}");
        parts.filter_map(|p| p.parse().ok()).collect()
    };
    let floats = |line: &str| -> Vec<f64> { line.split_whitespace().map(|x| x.parse().unwrap()).collect() };
    let np = header(next(), "POINTS")[0];
    let points = (0..np)
        .map(|_| {
            let v = floats(next());
            [v[0], v[1], v[2]]
        })
        .collect();
    let ch = header(next(), "CELLS");
    let (nc, size) = (ch[0], ch[1]);
    let cells: Vec<Vec<usize>> = (0..nc)
        .map(|_| next().split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(cells.iter().map(Vec::len).sum::<usize>(), size);
    assert_eq!(header(next(), "CELL_TYPES")[0], nc);
    let types = (0..nc).map(|_| next().parse().unwrap()).collect();
    assert_eq!(header(next(), "CELL_DATA")[0], nc);
    let mut scalar = |name: &str| -> Vec<f64> {
        assert_eq!(next(), format!("SCALARS {name} double 1"));
        assert_eq!(next(), "LOOKUP_TABLE default");
        (0..nc).map(|_| next().parse().unwrap()).collect()
    };
    let h = scalar("h");
    let froude = scalar("froude");
    assert_eq!(next(), "VECTORS velocity double");
    let velocity = (0..nc)
        .map(|_| {
            let v = floats(next());
            [v[0], v[1], v[2]]
        })
        .collect();
    assert!(lines.next().is_none());
    VtkData {
        title,
        points,
        cells: cells.into_iter().map(|c| c[1..].to_vec()).collect(),
        types,
        h,
        froude,
        velocity,
    }
}

#[test]
fn vtk_round_trip_is_exact() {
    let mesh = Mesh::rectangle((0.0, 3.0), (-1.0, 1.0), 5, 4, SplitPattern::Alternating).unwrap();
    let cells = mesh
        .cells
        .iter()
        .map(|c| {
            let p = c.centroid;
            ConservedState::from_primitive(1.0 + 0.1 * p.x.sin(), p.y / 3.0, 1.0 / 7.0 + p.x)
        })
        .collect();
    let field = ConservedField::new(cells, 1.0 / 3.0);
    let frame = OutputFrame::from_field(&field, PhysParams::default());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.vtk");
    write_vtk(&mesh, &frame, &path).unwrap();
    let data = read_vtk(&std::fs::read_to_string(&path).unwrap());

    assert!(data.title.contains("3.3333333333333331e-1"), "{}", data.title);
    assert_eq!(data.points.len(), mesh.n_vertices());
    for (p, q) in data.points.iter().zip(&mesh.vertices) {
        assert_eq!([p[0], p[1], p[2]], [q.x, q.y, 0.0]);
    }
    assert_eq!(data.cells.len(), mesh.n_cells());
    for (c, m) in data.cells.iter().zip(&mesh.cells) {
        assert_eq!(c.as_slice(), m.vertices.as_slice());
    }
    assert!(data.types.iter().all(|&t| t == 5));
    assert_eq!(data.h, frame.h);
    assert_eq!(data.froude, frame.froude);
    for (i, v) in data.velocity.iter().enumerate() {
        assert_eq!(*v, [frame.u[i], frame.v[i], 0.0]);
    }
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    std::fs::write(
        &path,
        "# partial breach\ncase = partial_dam\nscheme = roe\ncfl = 0.4\nnx = 40\nny = 60\nt_end = 1.5\n",
    )
    .unwrap();
    let cfg = parse_config(Some(&path), &[("t_end".into(), "0.5".into())]).unwrap();
    assert_eq!(cfg.case, Case::PartialDam);
    assert_eq!(cfg.scheme, SchemeKind::Roe);
    assert_eq!(cfg.resolution, Some((40, 60)));
    assert_eq!(cfg.t_end(), 0.5);
    let (field, _) = run(&cfg).unwrap();
    assert_eq!(field.time, 0.5);

    assert!(parse_config(Some(&dir.path().join("missing.cfg")), &[]).is_err());
}

/// Gmsh 2.2 file of an `n` x `n` unit square split into right triangles;
/// the left side carries physical tag 1, the other sides tag 2.
fn square_msh(n: usize) -> String {
    let id = |i: usize, j: usize| j * (n + 1) + i + 1;
    let mut nodes = String::new();
    for j in 0..=n {
        for i in 0..=n {
            writeln!(nodes, "{} {} {} 0", id(i, j), i as f64 / n as f64, j as f64 / n as f64).unwrap();
        }
    }
    let mut elems = Vec::new();
    for k in 0..n {
        elems.push(format!("1 2 1 1 {} {}", id(0, k), id(0, k + 1)));
        elems.push(format!("1 2 2 2 {} {}", id(n, k), id(n, k + 1)));
        elems.push(format!("1 2 2 2 {} {}", id(k, 0), id(k + 1, 0)));
        elems.push(format!("1 2 2 2 {} {}", id(k, n), id(k + 1, n)));
    }
    for j in 0..n {
        for i in 0..n {
            elems.push(format!("2 2 0 1 {} {} {}", id(i, j), id(i + 1, j), id(i + 1, j + 1)));
            elems.push(format!("2 2 0 1 {} {} {}", id(i, j), id(i + 1, j + 1), id(i, j + 1)));
        }
    }
    let mut out = format!("$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n{}\n{nodes}$EndNodes\n", (n + 1) * (n + 1));
    write!(out, "$Elements\n{}\n", elems.len()).unwrap();
    for (k, e) in elems.iter().enumerate() {
        let (kind, rest) = e.split_once(' ').unwrap();
        writeln!(out, "{} {kind} {rest}", k + 1).unwrap();
    }
    out.push_str("$EndElements\n");
    out
}

#[test]
fn gmsh_and_raw_meshes_load() {
    let dir = tempfile::tempdir().unwrap();
    let msh = dir.path().join("square.msh");
    std::fs::write(&msh, square_msh(6)).unwrap();
    let m = load_mesh(&msh).unwrap();
    assert_eq!(m.n_cells(), 72);
    assert_eq!(m.boundary_tag_counts(), vec![(Some(1), 6), (Some(2), 18)]);

    let raw = dir.path().join("square.txt");
    std::fs::write(&raw, write_raw(&m)).unwrap();
    let back = load_mesh(&raw).unwrap();
    assert_eq!(back.n_cells(), m.n_cells());
    assert_eq!(back.vertices, m.vertices);
    assert!((back.total_area() - 1.0).abs() < 1e-14);
}

#[test]
fn from_file_case_with_tagged_boundaries() {
    let dir = tempfile::tempdir().unwrap();
    let msh = dir.path().join("square.msh");
    std::fs::write(&msh, square_msh(12)).unwrap();
    let mut cfg = RunConfig::new(Case::FromFile);
    cfg.mesh = Some(msh);
    cfg.cfl = 0.4;
    cfg.t_end = Some(0.05);
    cfg.geometry.planar.x0 = 0.5;
    cfg.boundary_tags.insert(1, fvc_swe::bc::BoundaryKind::Wall);
    cfg.boundary_tags.insert(2, fvc_swe::bc::BoundaryKind::Wall);
    let (field, diags) = run(&cfg).unwrap();
    assert_eq!(field.time, 0.05);
    assert!(diags.mass_drift() < 1e-12);
}

fn cli(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fvc-swe"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

#[test]
fn cli_without_arguments_fails() {
    let dir = tempfile::tempdir().unwrap();
    assert!(!cli(&[], dir.path()).status.success());
}

#[test]
fn cli_run_writes_frames_and_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(
        &[
            "run", "--case", "circular_dam", "--fc", "1", "--g", "1", "--tend", "16", "--cfl", "0.4", "--nx", "30",
            "--out", "d", "--output-interval", "4",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let d = dir.path().join("d");
    for k in 0..=4 {
        let frame = std::fs::read_to_string(d.join(format!("frame_{k:04}.vtk"))).unwrap();
        let data = read_vtk(&frame);
        assert_eq!(data.h.len(), 1800);
        assert!(data.title.contains(&format!("{:.16e}", 4.0 * k as f64)), "{}", data.title);
    }
    assert!(!d.join("frame_0005.vtk").exists());
    let csv = std::fs::read_to_string(d.join("diagnostics.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("step,time,dt,mass,momentum_x,momentum_y,max_froude,min_h,max_h"));
    let last = lines.last().unwrap();
    let t: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(t, 16.0);
}

#[test]
fn cli_convergence_prints_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(
        &[
            "convergence", "--case", "accuracy_dam", "--scheme", "fvc", "--scheme", "roe", "--resolutions", "8,12",
            "--cfl", "0.4",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "scheme,cells,l1_error,observed_order");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("fvc,128,") && lines[1].ends_with(','));
    assert!(lines[2].starts_with("fvc,288,"));
    assert!(lines[3].starts_with("roe,128,"));
    for row in &lines[1..] {
        let e: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
        assert!(e > 0.0 && e < 1.0);
    }
}

#[test]
fn cli_mesh_info_reports_tags() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("square.msh"), square_msh(4)).unwrap();
    let out = cli(&["mesh-info", "--mesh", "square.msh"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cells           32"), "{text}");
    assert!(text.contains("boundary tag 1    4 edges"), "{text}");
    assert!(text.contains("boundary tag 2    12 edges"), "{text}");
}

#[test]
fn cli_rejects_unknown_key() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["run", "--case", "accuracy_dam", "--set", "cflx=1"], dir.path());
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error:") && err.contains("cflx"), "{err}");
}
