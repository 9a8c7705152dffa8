use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fvc_swe::driver::{self, convergence_study, fitted_order, Case, RunConfig, SchemeKind};
use fvc_swe::io::{load_mesh, parse_config, write_convergence_csv};
use fvc_swe::mesh::Mesh;
use fvc_swe::RunError;

#[derive(Parser)]
#[command(name = "fvc-swe", version, about = "Rotating shallow water solver (FVC and Roe schemes)")]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single simulation.
    Run {
        #[command(flatten)]
        common: CommonArgs,
        /// Numerical scheme (fvc or roe).
        #[arg(long)]
        scheme: Option<String>,
        /// Output directory for VTK frames and diagnostics.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Time between VTK frames.
        #[arg(long)]
        output_interval: Option<f64>,
    },
    /// Grid refinement study of the accuracy dam break; prints a CSV table.
    Convergence {
        #[command(flatten)]
        common: CommonArgs,
        /// Scheme to include; repeat for several.
        #[arg(long = "scheme", default_values = ["fvc", "roe"])]
        schemes: Vec<String>,
        /// Quads per side of each mesh in the sequence.
        #[arg(long, value_delimiter = ',', default_value = "36,50,71,100")]
        resolutions: Vec<usize>,
        /// Write the table here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print counts, quality and boundary tags of a mesh.
    MeshInfo {
        /// Mesh file (.msh or plain text).
        #[arg(long)]
        mesh: Option<PathBuf>,
        /// Benchmark case whose generated mesh to describe.
        #[arg(long)]
        case: Option<String>,
        /// Quads along x of the generated mesh.
        #[arg(long)]
        nx: Option<usize>,
        /// Quads along y of the generated mesh.
        #[arg(long)]
        ny: Option<usize>,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Configuration file with `key = value` lines.
    #[arg(long, short)]
    config: Option<PathBuf>,
    /// accuracy_dam, circular_dam, partial_dam or from_file.
    #[arg(long)]
    case: Option<String>,
    /// Mesh file (.msh or plain text) replacing the generated one.
    #[arg(long)]
    mesh: Option<PathBuf>,
    /// Courant number of the time step.
    #[arg(long)]
    cfl: Option<f64>,
    /// Characteristics are traced back over alpha * dt.
    #[arg(long)]
    alpha: Option<f64>,
    /// Gravitational acceleration.
    #[arg(long)]
    g: Option<f64>,
    /// Coriolis parameter.
    #[arg(long)]
    fc: Option<f64>,
    /// End time.
    #[arg(long)]
    tend: Option<f64>,
    /// Quads along x of the generated mesh.
    #[arg(long)]
    nx: Option<usize>,
    /// Quads along y of the generated mesh.
    #[arg(long)]
    ny: Option<usize>,
    /// Any other configuration key, as `key=value`; may be repeated.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl CommonArgs {
    fn overrides(&self) -> Result<Vec<(String, String)>, String> {
        let mut o = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                o.push((k.to_string(), v));
            }
        };
        push("case", self.case.clone());
        push("mesh", self.mesh.as_ref().map(|p| p.display().to_string()));
        push("cfl", self.cfl.map(|x| x.to_string()));
        push("alpha", self.alpha.map(|x| x.to_string()));
        push("g", self.g.map(|x| x.to_string()));
        push("f_c", self.fc.map(|x| x.to_string()));
        push("t_end", self.tend.map(|x| x.to_string()));
        push("nx", self.nx.map(|x| x.to_string()));
        push("ny", self.ny.map(|x| x.to_string()));
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| format!("--set expects KEY=VALUE, got `{kv}`"))?;
            o.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(o)
    }

    fn config(&self, extra: Vec<(String, String)>) -> Result<RunConfig, String> {
        let mut overrides = self.overrides()?;
        overrides.extend(extra);
        parse_config(self.config.as_deref(), &overrides).map_err(|e| e.to_string())
    }
}

fn run(cmd: Command) -> Result<(), String> {
    match cmd {
        Command::Run {
            common,
            scheme,
            out,
            output_interval,
        } => {
            let mut extra = Vec::new();
            if let Some(s) = scheme {
                extra.push(("scheme".into(), s));
            }
            if let Some(dir) = out {
                extra.push(("output_dir".into(), dir.display().to_string()));
            }
            if let Some(dt) = output_interval {
                extra.push(("output_interval".into(), dt.to_string()));
            }
            let cfg = common.config(extra)?;
            let (field, diags) = driver::run(&cfg).map_err(|e| e.to_string())?;
            let last = diags.last().expect("at least the initial record");
            println!(
                "{} {} : t = {:.6}, steps = {}, mass = {:.12e}, h in [{:.6}, {:.6}], peak Froude = {:.4}",
                cfg.case,
                cfg.scheme,
                field.time,
                last.step,
                last.mass,
                last.min_h,
                last.max_h,
                diags.peak_froude()
            );
            Ok(())
        }
        Command::Convergence {
            common,
            schemes,
            resolutions,
            output,
        } => {
            let cfg = common.config(Vec::new())?;
            let schemes = schemes
                .iter()
                .map(|s| s.parse::<SchemeKind>())
                .collect::<Result<Vec<_>, _>>()?;
            if resolutions.len() < 2 {
                return Err("a convergence study needs at least two resolutions".into());
            }
            let rows = convergence_study(&cfg, &resolutions, &schemes).map_err(|e: RunError| e.to_string())?;
            match output {
                Some(path) => {
                    let file = std::fs::File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                    write_convergence_csv(&rows, file).map_err(|e| e.to_string())?;
                }
                None => write_convergence_csv(&rows, std::io::stdout().lock()).map_err(|e| e.to_string())?,
            }
            for s in &schemes {
                let pts: Vec<(usize, f64)> = rows
                    .iter()
                    .filter(|r| r.scheme == *s)
                    .map(|r| (r.cells, r.l1_error))
                    .collect();
                if let Some(p) = fitted_order(&pts) {
                    eprintln!("{s}: fitted order {p:.3}");
                }
            }
            Ok(())
        }
        Command::MeshInfo { mesh, case, nx, ny } => {
            let m = match (mesh, case) {
                (Some(path), _) => load_mesh(&path).map_err(|e| e.to_string())?,
                (None, Some(case)) => {
                    let case: Case = case.parse()?;
                    let mut cfg = RunConfig::new(case);
                    cfg.resolution = match (nx, ny) {
                        (None, None) => None,
                        (x, y) => Some((x.or(y).unwrap_or(1), y.or(x).unwrap_or(1))),
                    };
                    cfg.build_mesh().map_err(|e| e.to_string())?
                }
                (None, None) => return Err("mesh-info needs --mesh or --case".into()),
            };
            print_mesh_info(&m);
            Ok(())
        }
    }
}

fn print_mesh_info(m: &Mesh) {
    let q = m.quality();
    let (lo, hi) = m.bounding_box();
    println!("vertices        {}", m.n_vertices());
    println!("cells           {}", m.n_cells());
    println!("edges           {} ({} interior, {} boundary)", m.n_edges(), m.n_interior_edges(), m.boundary_edges.len());
    println!("bounding box    ({}, {}) - ({}, {})", lo.x, lo.y, hi.x, hi.y);
    println!("total area      {}", q.total_area);
    println!("cell area       [{:.6e}, {:.6e}]", q.min_area, q.max_area);
    println!("edge length     [{:.6e}, {:.6e}]", q.min_edge_length, q.max_edge_length);
    println!("min angle       {:.3} deg", q.min_angle_deg);
    println!("min diamond     {:.6e}", q.min_diamond_area);
    for (tag, count) in m.boundary_tag_counts() {
        match tag {
            Some(t) => println!("boundary tag {t:<4} {count} edges"),
            None => println!("untagged        {count} edges"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {}", msg.lines().next().unwrap_or("failed"));
            ExitCode::FAILURE
        }
    }
}
