use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use matgeom::axioms::{check_axioms, parse_axiom_set};
use matgeom::falsify::{falsify_theorem, DEFAULT_SEED};
use matgeom::graph::{build_index_with_cap, verify_distance_formula, DistanceIndex, DEFAULT_INDEX_CAP};
use matgeom::maps::{antipodal_swap, load_map, render_map, test_map, PointMap};
use matgeom::report::{axiom_report, distance_report, to_dot};
use matgeom::scenario::run_scenario;
use matgeom::space::{enumerate_space_with_cap, PointSet, SpaceDescriptor, DEFAULT_POINT_CAP};

#[derive(Parser)]
#[command(name = "matgeom", version, about = "Adjacency graphs of matrix geometries over finite fields")]
struct Cli {
    /// Maximum number of points to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_POINT_CAP)]
    cap: usize,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Point and edge counts, degrees, diameter and distance distribution.
    Space {
        #[arg(long)]
        space: String,
    },
    /// Compare BFS distances with the closed-form distance of the geometry.
    Formula {
        #[arg(long)]
        space: String,
    },
    /// Run the axiom checks; exits 1 if any checked axiom fails.
    Axioms {
        #[arg(long)]
        space: String,
        /// Subset such as "A1..A5", "A2-A4" or "A1,A3".
        #[arg(long, default_value = "A1..A5")]
        axioms: String,
    },
    /// Run a named reproduction: s2f3-a4, s2f2-a5, alt-shift:<n>, lemma21, herm-witness.
    Scenario {
        name: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Test a map file for diameter-pair preservation and isomorphism;
    /// exits 1 if the map is not an isomorphism.
    MapTest {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        space: String,
        /// Target space; defaults to the source space.
        #[arg(long)]
        target: Option<String>,
    },
    /// Write a map file: "identity", "antipodal-swap:<v>" or "transposition:<a>,<b>".
    MakeMap {
        #[arg(long)]
        space: String,
        #[arg(long)]
        kind: String,
    },
    /// Search seeded perturbations of group transforms for a map that
    /// preserves diameter pairs without being an isomorphism.
    Falsify {
        #[arg(long)]
        space: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Export the graph as DOT or the distance report as JSON.
    Export {
        #[arg(long)]
        space: String,
        #[arg(long = "as", value_enum, default_value_t = ExportFormat::Dot)]
        export_as: ExportFormat,
    },
}

/// Usage and input errors exit 2; failed checks exit 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

struct Outcome {
    text: String,
    ok: bool,
}

fn build(descriptor: &str, cap: usize) -> Result<(PointSet, DistanceIndex), Failure> {
    let d: SpaceDescriptor = descriptor.parse()?;
    let ps = enumerate_space_with_cap(&d, cap)?;
    let idx = build_index_with_cap(&ps, DEFAULT_INDEX_CAP)?;
    Ok((ps, idx))
}

fn json(v: &impl Serialize) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let table = cli.format == Format::Table;
    match &cli.command {
        Command::Space { space } => {
            let (ps, idx) = build(space, cli.cap)?;
            let r = distance_report(&ps, &idx);
            if !table {
                return Ok(Outcome { text: json(&r)?, ok: true });
            }
            let mut t = String::new();
            let _ = writeln!(t, "space      {}", r.space);
            let _ = writeln!(t, "points     {}", r.points);
            let _ = writeln!(t, "edges      {}", r.edges);
            let _ = writeln!(t, "degree     min {} max {} mean {:.2}", r.degree.min, r.degree.max, r.degree.mean);
            let _ = writeln!(t, "diameter   {}", r.diameter.map_or("infinite".into(), |d| d.to_string()));
            for (d, c) in &r.distribution {
                let _ = writeln!(t, "  d={d:<3} {c} ordered pairs");
            }
            Ok(Outcome { text: t, ok: true })
        }
        Command::Formula { space } => {
            let (ps, idx) = build(space, cli.cap)?;
            let r = verify_distance_formula(&ps, &idx);
            let text = if table {
                let mut t = format!(
                    "{}: {} pairs, mode {:?}, diameter {} (expected {}), {}\n",
                    r.space,
                    r.pairs_checked,
                    r.mode,
                    r.diameter,
                    r.expected_diameter.map_or("-".into(), |d| d.to_string()),
                    if r.pass { "PASS" } else { "FAIL" }
                );
                if let Some(v) = &r.first_violation {
                    let _ = writeln!(
                        t,
                        "first violation: {} vs {}: bfs {} formula {}",
                        ps.label(v.x),
                        ps.label(v.y),
                        v.bfs,
                        v.formula
                    );
                }
                t
            } else {
                json(&r)?
            };
            Ok(Outcome { text, ok: r.pass })
        }
        Command::Axioms { space, axioms } => {
            let set = parse_axiom_set(axioms)?;
            let (ps, idx) = build(space, cli.cap)?;
            let reports: Vec<_> = check_axioms(&idx, &set).iter().map(|r| axiom_report(&ps, r)).collect();
            let ok = reports.iter().all(|r| r.holds);
            let text = if table {
                let mut t = String::new();
                for r in &reports {
                    let _ = write!(t, "{} {} {:<6}", r.space, r.axiom, if r.holds { "holds" } else { "FAILS" });
                    for w in &r.witness {
                        let _ = write!(t, " {}={}", w.role, w.point);
                    }
                    let _ = writeln!(t, "  ({:.1} ms)", r.elapsed_ms);
                }
                t
            } else {
                json(&reports)?
            };
            Ok(Outcome { text, ok })
        }
        Command::Scenario { name, seed } => {
            let r = run_scenario(name, *seed)?;
            let text = if table {
                let mut t = format!("scenario {}: {}\n", r.name, if r.pass { "PASS" } else { "FAIL" });
                for s in &r.steps {
                    let mark = if s.pass { "ok  " } else { "FAIL" };
                    let _ = writeln!(t, "  {mark} {}: expected {} got {}", s.name, s.expected, s.actual);
                }
                t
            } else {
                json(&r)?
            };
            Ok(Outcome { text, ok: r.pass })
        }
        Command::MapTest { map, space, target } => {
            let (src_ps, src_idx) = build(space, cli.cap)?;
            let (tgt_ps, tgt_idx) = match target {
                Some(t) => build(t, cli.cap)?,
                None => build(space, cli.cap)?,
            };
            let m = load_map(map, &src_ps, &tgt_ps)?;
            let r = test_map(&map.display().to_string(), &m, &src_idx, &tgt_idx)?;
            let text = if table {
                let mut t = format!(
                    "map {}\n  injective {}\n  surjective {}\n  dm-treu {}\n  isomorphism {}\n",
                    r.map_source,
                    yes(r.injective),
                    yes(r.surjective),
                    yes(r.dm_treu),
                    yes(r.isomorphism)
                );
                if let Some(v) = &r.first_violation {
                    let _ = writeln!(
                        t,
                        "  first diameter violation: x={} y={} d_src={} d_tgt={}",
                        v.x, v.y, v.d_src, v.d_tgt
                    );
                }
                t
            } else {
                json(&r)?
            };
            Ok(Outcome { text, ok: r.isomorphism })
        }
        Command::MakeMap { space, kind } => {
            let (ps, idx) = build(space, cli.cap)?;
            let n = ps.len();
            let m = match kind.split_once(':') {
                None if kind == "identity" => PointMap::identity(n),
                Some(("antipodal-swap", v)) => antipodal_swap(&idx, parse_vertex(v, n)?)?,
                Some(("transposition", ab)) => {
                    let (a, b) = ab.split_once(',').ok_or_else(|| Failure(format!("expected a,b in {kind:?}")))?;
                    PointMap::transposition(n, parse_vertex(a, n)?, parse_vertex(b, n)?)
                }
                _ => return Err(Failure(format!("unknown map kind {kind:?}"))),
            };
            Ok(Outcome { text: render_map(&m, ps.descriptor(), ps.descriptor()), ok: true })
        }
        Command::Falsify { space, samples, seed } => {
            let (ps, idx) = build(space, cli.cap)?;
            let r = falsify_theorem(&ps, &idx, *samples, *seed)?;
            let text = if table {
                format!(
                    "{}: {} maps (seed {}), {} dm-treu, {} isomorphisms, {} group failures, {} violations: {}\n",
                    r.space,
                    r.maps_tested,
                    r.seed,
                    r.dm_treu_passed,
                    r.isomorphisms,
                    r.group_failures,
                    r.violations,
                    if r.pass() { "PASS" } else { "FAIL" }
                )
            } else {
                json(&r)?
            };
            Ok(Outcome { text, ok: r.pass() })
        }
        Command::Export { space, export_as } => {
            let (ps, idx) = build(space, cli.cap)?;
            let text = match export_as {
                ExportFormat::Dot => to_dot(&ps, &idx),
                ExportFormat::Json => json(&distance_report(&ps, &idx))?,
            };
            Ok(Outcome { text, ok: true })
        }
    }
}

fn parse_vertex(s: &str, n: usize) -> Result<usize, Failure> {
    match s.trim().parse::<usize>() {
        Ok(v) if v < n => Ok(v),
        _ => Err(Failure(format!("vertex {s:?} is not in 0..{n}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.text),
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
