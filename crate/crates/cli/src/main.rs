use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use plateau_cover::cover::{build_cover, link2, lift_path, path_monodromy, transport_labeling, BasePath, Weighting};
use plateau_cover::functional::{energy_q, jump_set};
use plateau_cover::grid::Element;
use plateau_cover::measure::{export_obj, report_json, wetting_report, Report};
use plateau_cover::permgroup::GroupSpec;
use plateau_cover::scene::{
    builtin_scene, parse_scene, rasterize, validate, Classification, RasterScene, SceneSpec, Status,
    BUILTIN_NAMES,
};
use plateau_cover::solve::{self, HeuristicParams, SolveResult, SolverKind};
use plateau_cover::Error;

#[derive(Parser)]
#[command(name = "plateau-cover", version, about = "Minimal films on covers of a gridded domain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in scenes.
    Scenes,
    /// Check the elementary monodromy of every codimension-2 element.
    Validate {
        #[command(flatten)]
        scene: SceneArgs,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Minimize the constrained energy and write the report and film.
    Solve {
        #[command(flatten)]
        scene: SceneArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Output directory for report.json and film.obj.
        #[arg(long, default_value = "plateau-cover-out")]
        out: PathBuf,
    },
    /// Solve a double cover under two cut systems and compare the minima.
    CompareCuts {
        #[command(flatten)]
        scene: SceneArgs,
        /// Built-in name of the second cut system.
        #[arg(long, conflicts_with = "variant_file")]
        variant: Option<String>,
        /// Scene file of the second cut system.
        #[arg(long)]
        variant_file: Option<PathBuf>,
        #[arg(long, default_value = "plain")]
        weighting: Weighting,
    },
    /// Relations, subgroup index and normality of a permutation representation.
    GroupCheck {
        #[command(flatten)]
        scene: SceneArgs,
    },
    /// Monodromy of a closed loop of cells, or of one element.
    Monodromy {
        #[command(flatten)]
        scene: SceneArgs,
        /// Loop corners as cell coordinates, e.g. "3,4 9,4 9,8 3,8"; consecutive
        /// corners are joined by straight runs along x, then y, then z.
        #[arg(long, conflicts_with = "element")]
        cells: Option<String>,
        /// Element as "axis:x,y,z".
        #[arg(long)]
        element: Option<String>,
    },
}

#[derive(Args)]
struct SceneArgs {
    /// Built-in scene name.
    #[arg(long, conflicts_with = "file")]
    scene: Option<String>,
    /// Scene document (or group document for group-check).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Cells along x.
    #[arg(long, value_parser = clap::value_parser!(u32).range(8..))]
    grid: Option<u32>,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value = "plain")]
    weighting: Weighting,
    #[arg(long, default_value = "auto")]
    solver: SolverKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    /// State cap for the exhaustive solver.
    #[arg(long, default_value_t = solve::DEFAULT_MAX_STATES)]
    max_states: u64,
}

/// Exit status: 1 for domain failures, 2 for usage and schema errors.
fn code(e: &Error) -> u8 {
    match e {
        Error::Schema(_)
        | Error::Permutation(_)
        | Error::DegreeMismatch(..)
        | Error::UnknownGenerator(_)
        | Error::UnknownScene(_)
        | Error::OutsideDomain(_)
        | Error::InvalidPath(_)
        | Error::Io { .. }
        | Error::Json(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("PLATEAU_COVER_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(cli.command) {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(code(&e))
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Scenes => scenes(),
        Command::Validate { scene, json } => cmd_validate(&scene, json),
        Command::Solve { scene, solver, out } => cmd_solve(&scene, &solver, &out),
        Command::CompareCuts {
            scene,
            variant,
            variant_file,
            weighting,
        } => cmd_compare(&scene, variant, variant_file, weighting),
        Command::GroupCheck { scene } => cmd_group_check(&scene),
        Command::Monodromy {
            scene,
            cells,
            element,
        } => cmd_monodromy(&scene, cells, element),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn load(args: &SceneArgs) -> Result<SceneSpec, Error> {
    let spec = match (&args.scene, &args.file) {
        (Some(name), None) => builtin_scene(name)?,
        (None, Some(path)) => parse_scene(&read(path)?)?,
        _ => return Err(Error::Schema("give exactly one of --scene or --file".into())),
    };
    match args.grid {
        Some(n) => spec.with_grid(n as usize),
        None => Ok(spec),
    }
}

fn scenes() -> Result<u8, Error> {
    println!("{:<22} {:>3} {:>6} {:>9} {:>7}", "name", "dim", "degree", "grid", "patches");
    for name in BUILTIN_NAMES {
        let s = builtin_scene(name)?;
        let g = s.grid()?;
        let dims = g.dims[..g.axes()].iter().map(|n| n.to_string()).collect::<Vec<_>>();
        println!(
            "{:<22} {:>3} {:>6} {:>9} {:>7}",
            name,
            s.dimension,
            s.degree,
            dims.join("x"),
            s.cut_patches.len()
        );
    }
    Ok(0)
}

fn cmd_validate(args: &SceneArgs, json: bool) -> Result<u8, Error> {
    let spec = load(args)?;
    let raster = rasterize(&spec)?;
    let report = validate(&raster);
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("scene {}: {:?}", report.scene, report.status);
        for class in [
            Classification::FrameWettingForced,
            Classification::FrameWettingOptional,
            Classification::Wire,
            Classification::Trivial,
            Classification::Inconsistent,
        ] {
            let n = report.count(class);
            if n > 0 {
                println!("  {:<24} {n}", serde_json::to_value(class)?.as_str().unwrap_or(""));
            }
        }
        for r in report.records.iter().filter(|r| r.warning).take(5) {
            println!("  warning: wire element {:?} moves the Dirichlet sheet ({})", r.element, r.monodromy);
        }
        for r in report.inconsistent().take(5) {
            println!("  inconsistent: element {:?} has monodromy {}", r.element, r.monodromy);
        }
    }
    Ok(if report.status == Status::Fail { 1 } else { 0 })
}

fn params(s: &SolverArgs) -> HeuristicParams {
    HeuristicParams {
        seed: s.seed,
        restarts: s.restarts,
        ..Default::default()
    }
}

fn run_solver(raster: &RasterScene, s: &SolverArgs) -> Result<(plateau_cover::cover::CoverGraph, SolveResult), Error> {
    let cover = build_cover(raster, s.weighting)?;
    let p = params(s);
    let result = match s.solver {
        SolverKind::Brute => solve::brute_force(&cover, s.max_states)?,
        kind => solve::solve(&cover, kind, &p)?,
    };
    Ok((cover, result))
}

fn cmd_solve(args: &SceneArgs, s: &SolverArgs, out: &Path) -> Result<u8, Error> {
    let spec = load(args)?;
    let raster = rasterize(&spec)?;
    let (cover, result) = run_solver(&raster, s)?;
    let jump = jump_set(&result.labeling, &cover)?;
    let wetting = wetting_report(&jump, &raster);
    let mut report = Report::new(&spec.name, &cover, &result, &jump, &wetting);
    let source = match (&args.scene, &args.file) {
        (Some(n), _) => n.clone(),
        (_, Some(p)) => p.display().to_string(),
        _ => String::new(),
    };
    for (k, v) in [
        ("source", source),
        ("grid", cover.grid.dims[0].to_string()),
        ("weighting", s.weighting.to_string()),
        ("solver", s.solver.to_string()),
        ("seed", s.seed.to_string()),
        ("restarts", s.restarts.to_string()),
    ] {
        report.config.insert(k.to_string(), v);
    }
    std::fs::create_dir_all(out).map_err(|e| Error::Io {
        path: out.to_path_buf(),
        source: e,
    })?;
    report_json(&report, &out.join("report.json"))?;
    export_obj(&jump, &cover.grid, &out.join("film.obj"))?;
    let wet = wetting.segments.iter().filter(|w| w.wetted).count();
    println!("scene        {}", spec.name);
    println!("solver       {} ({})", result.solver, result.certificate);
    println!("energy       {:.6}", result.energy);
    println!("tv           {:.6}", result.tv);
    println!("area         {:.6}", jump.area());
    println!("wetted       {wet}/{}", wetting.segments.len());
    println!("wallclock    {:.3}s", result.wallclock);
    println!("written      {}", out.display());
    Ok(0)
}

fn cmd_compare(
    args: &SceneArgs,
    variant: Option<String>,
    variant_file: Option<PathBuf>,
    weighting: Weighting,
) -> Result<u8, Error> {
    let a = load(args)?;
    let b = match (variant, variant_file) {
        (Some(name), None) => builtin_scene(&name)?,
        (None, Some(path)) => parse_scene(&read(&path)?)?,
        _ => return Err(Error::Schema("give exactly one of --variant or --variant-file".into())),
    };
    let b = match args.grid {
        Some(n) => b.with_grid(n as usize)?,
        None => b,
    };
    let ra = rasterize(&a)?;
    let rb = rasterize(&b)?;
    for r in [&ra, &rb] {
        if r.degree != 2 {
            return Err(Error::WrongDegree {
                expected: 2,
                found: r.degree,
            });
        }
    }
    if ra.grid != rb.grid {
        return Err(Error::Precondition("the two scenes use different grids".into()));
    }
    if ra.marks() != rb.marks() {
        return Err(Error::Precondition("the two scenes have different frames".into()));
    }
    let p = HeuristicParams::default();
    let ca = build_cover(&ra, weighting)?;
    let cb = build_cover(&rb, weighting)?;
    let sa = solve::mincut_degree2(&ca, &p)?;
    let sb = solve::mincut_degree2(&cb, &p)?;
    let moved = transport_labeling(&sa.labeling, &ra, &rb)?;
    let moved_q = energy_q(&moved, &cb)?;
    println!("{:<24} energy {:.6} ({})", a.name, sa.energy, sa.certificate);
    println!("{:<24} energy {:.6} ({})", b.name, sb.energy, sb.certificate);
    println!("{:<24} energy {:.6}", "transported", cb.to_measure(moved_q));
    let equal = sa.energy_q == sb.energy_q && moved_q == sa.energy_q;
    println!("{}", if equal { "equal" } else { "MISMATCH" });
    Ok(if equal { 0 } else { 1 })
}

fn group_of(args: &SceneArgs) -> Result<GroupSpec, Error> {
    if let (None, Some(path)) = (&args.scene, &args.file) {
        let text = read(path)?;
        if let Ok(g) = serde_json::from_str::<GroupSpec>(&text) {
            return Ok(g);
        }
    }
    let spec = load(args)?;
    spec.group
        .ok_or_else(|| Error::Schema(format!("scene `{}` has no group presentation", spec.name)))
}

fn cmd_group_check(args: &SceneArgs) -> Result<u8, Error> {
    let group = group_of(args)?;
    let check = group.check()?;
    println!("relations_ok {}", check.relations_ok);
    println!("index        {}", check.index);
    println!("normal       {}", check.normal);
    Ok(if check.relations_ok { 0 } else { 1 })
}

fn parse_coords(text: &str) -> Result<[usize; 3], Error> {
    let bad = || Error::Schema(format!("bad coordinates `{text}`"));
    let v: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        [x, y] => Ok([*x, *y, 0]),
        [x, y, z] => Ok([*x, *y, *z]),
        _ => Err(bad()),
    }
}

fn cmd_monodromy(args: &SceneArgs, cells: Option<String>, element: Option<String>) -> Result<u8, Error> {
    let spec = load(args)?;
    let raster = rasterize(&spec)?;
    let g = &raster.grid;
    if let Some(text) = element {
        let (axis, at) = text
            .split_once(':')
            .ok_or_else(|| Error::Schema(format!("element `{text}` is not axis:x,y,z")))?;
        let axis: u8 = axis
            .trim()
            .parse()
            .map_err(|_| Error::Schema(format!("bad axis `{axis}`")))?;
        let e = Element {
            axis,
            vertex: parse_coords(at)?,
        };
        let m = raster
            .element_monodromy(e)
            .ok_or_else(|| Error::InvalidPath(format!("element {text} has no ring of cells")))?;
        println!("monodromy {m}");
        return Ok(0);
    }
    let text = cells.ok_or_else(|| Error::Schema("give --cells or --element".into()))?;
    let mut corners = Vec::new();
    for token in text.split_whitespace() {
        let c = parse_coords(token)?;
        if g.cell_at(c.map(|x| x as isize)).is_none() {
            return Err(Error::InvalidPath(format!("cell {token} outside the grid")));
        }
        corners.push(c);
    }
    let Some(&first) = corners.first() else {
        return Err(Error::InvalidPath("empty loop".into()));
    };
    let mut cells = vec![g.index(first)];
    let mut at = first;
    for &next in corners.iter().skip(1).chain([&first]) {
        for axis in 0..3 {
            while at[axis] != next[axis] {
                if at[axis] < next[axis] {
                    at[axis] += 1;
                } else {
                    at[axis] -= 1;
                }
                cells.push(g.index(at));
            }
        }
    }
    let path = BasePath::closed(cells);
    let m = path_monodromy(&raster, &path)?;
    println!("monodromy {m}");
    for s in 1..=raster.degree {
        println!("  sheet {s} -> {}", lift_path(&raster, &path, s)?);
    }
    if raster.degree == 2 {
        println!("link2 {}", link2(&raster, &path, None)?);
    }
    Ok(0)
}
