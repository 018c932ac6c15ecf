//! The `tautforge` command line.
//!
//! Exit codes: 0 success, 1 invalid input, 2 property violation, 3
//! construction failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::carried::{enumerate_solutions, euler_char, pairing, reconstruct, switch_system};
use crate::discgeo::{
    arc_table, check_prop12_suite, enumerate_admissible_discs, g_dot, TruncatedModel,
};
use crate::layering::{build_mapping_torus, MonodromySpec};
use crate::surface::format::parse_surface;
use crate::surface::{flip_path_bfs, SurfaceIdealTri};
use crate::taut::{
    check_full_taut, check_prop9, check_tet_condition, cusp_angle_profile, edge_pi_counts,
    enumerate_taut, Coorientation,
};
use crate::tri::format::{parse_any, serialize, TriangulationFile};
use crate::tri::IdealTriangulation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_CONSTRUCTION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "tautforge",
    version,
    about = "Taut ideal triangulation toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a triangulation is an orientable manifold with torus cusps.
    Validate(FileArgs),
    /// Enumerate or check taut structures.
    #[command(subcommand)]
    Taut(TautCommand),
    /// Build a layered triangulation of a surface bundle.
    Layer(LayerArgs),
    /// List carried surfaces up to a total weight.
    Carried(CarriedArgs),
    /// Enumerate admissible discs in one tetrahedron and check the area bounds.
    Discs(DiscArgs),
    /// Shortest flip sequence between two surface triangulations.
    Flippath(FlipArgs),
}

#[derive(Args, Debug)]
struct FileArgs {
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum TautCommand {
    /// All taut structures, in canonical order.
    Enumerate(FileArgs),
    /// Check one coorientation: the file's `coor` block, or `--coor K`.
    Check {
        file: PathBuf,
        #[arg(long)]
        coor: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct LayerArgs {
    /// Base surface; only `ptorus` (once-punctured torus) is built in.
    #[arg(long, requires = "word", conflicts_with = "spec")]
    surface: Option<String>,
    /// Monodromy word in `R` and `L`.
    #[arg(long)]
    word: Option<String>,
    /// Monodromy JSON: base triangulation, flips and closing relabeling.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CarriedArgs {
    file: PathBuf,
    #[arg(long)]
    coor: Option<usize>,
    #[arg(long, default_value_t = 4)]
    max_total: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct DiscArgs {
    file: PathBuf,
    #[arg(long)]
    coor: Option<usize>,
    #[arg(long, default_value_t = 0)]
    tet: usize,
    #[arg(long, default_value_t = 3)]
    max_cusps: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct FlipArgs {
    from: PathBuf,
    to: PathBuf,
    #[arg(long, default_value_t = 6)]
    max_depth: usize,
    #[arg(long)]
    json: bool,
}

/// A failure with its exit code.
struct Failure(i32, String);

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(EXIT_INVALID, msg.into())
}

type Outcome = Result<i32, Failure>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Validate(a) => cmd_validate(&a, out),
        Command::Taut(TautCommand::Enumerate(a)) => cmd_taut_enumerate(&a, out),
        Command::Taut(TautCommand::Check { file, coor, json }) => {
            cmd_taut_check(&file, coor, json, out)
        }
        Command::Layer(a) => cmd_layer(&a, out),
        Command::Carried(a) => cmd_carried(&a, out),
        Command::Discs(a) => cmd_discs(&a, out),
        Command::Flippath(a) => cmd_flippath(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<TriangulationFile, Failure> {
    parse_any(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure(EXIT_INVALID, format!("write failed: {e}")))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    emit(
        out,
        &(serde_json::to_string_pretty(value).expect("serializable") + "\n"),
    )
}

fn signs(flags: &[bool; 4]) -> String {
    flags.iter().map(|&o| if o { '+' } else { '-' }).collect()
}

fn require_manifold(tri: &IdealTriangulation) -> Result<(), Failure> {
    crate::taut::require_torus_manifold(tri).map_err(|e| invalid(e.to_string()))
}

/// The coorientation named by `--coor K`, or the file's `coor` block.
fn pick_coor(
    file: &TriangulationFile,
    index: Option<usize>,
) -> Result<(Coorientation, Option<usize>), Failure> {
    match (index, &file.coor) {
        (Some(k), _) => {
            let all = enumerate_taut(&file.tri).map_err(|e| invalid(e.to_string()))?;
            let n = all.len();
            all.into_iter()
                .nth(k)
                .map(|c| (c, Some(k)))
                .ok_or_else(|| invalid(format!("--coor {k} out of range: {n} taut structures")))
        }
        (None, Some(flags)) => Coorientation::from_tet_flags(&file.tri, flags)
            .map(|c| (c, None))
            .map_err(|e| invalid(e.to_string())),
        (None, None) => Err(invalid("no coor block in the file; pass --coor K")),
    }
}

fn cmd_validate(a: &FileArgs, out: &mut dyn Write) -> Outcome {
    let file = load(&a.file)?;
    let report = file.tri.validate();
    if a.json {
        emit_json(out, &report)?;
    } else {
        let mut s = String::new();
        s += &format!("tetrahedra      {}\n", report.tet_count);
        s += &format!("orientable      {}\n", report.orientable);
        s += &format!("connected       {}\n", report.connected);
        s += &format!(
            "edge classes    {} (degrees {:?})\n",
            report.edge_class_count, report.edge_degrees
        );
        s += &format!("edges oriented  {}\n", report.edges_consistent);
        let chis: Vec<i64> = report
            .cusps
            .iter()
            .map(|c| c.euler_characteristic)
            .collect();
        s += &format!(
            "cusps           {} (euler characteristics {:?})\n",
            report.cusps.len(),
            chis
        );
        s += &format!("torus-cusped    {}\n", report.is_torus_cusped_manifold());
        emit(out, &s)?;
    }
    if report.is_torus_cusped_manifold() {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_INVALID)
    }
}

fn cmd_taut_enumerate(a: &FileArgs, out: &mut dyn Write) -> Outcome {
    let file = load(&a.file)?;
    let all = enumerate_taut(&file.tri).map_err(|e| invalid(e.to_string()))?;
    let rows: Vec<Vec<String>> = all
        .iter()
        .map(|c| c.tet_flags(&file.tri).iter().map(signs).collect())
        .collect();
    if a.json {
        let structures: Vec<_> = rows
            .iter()
            .enumerate()
            .map(|(k, r)| json!({"index": k, "coor": r}))
            .collect();
        emit_json(out, &json!({"count": all.len(), "structures": structures}))?;
    } else {
        let mut s = format!("{} taut structures\n", all.len());
        for (k, r) in rows.iter().enumerate() {
            s += &format!("{k:>4}  {}\n", r.join(" "));
        }
        emit(out, &s)?;
    }
    Ok(EXIT_OK)
}

fn cmd_taut_check(
    path: &Path,
    coor: Option<usize>,
    json_out: bool,
    out: &mut dyn Write,
) -> Outcome {
    let file = load(path)?;
    require_manifold(&file.tri)?;
    let (c, _) = pick_coor(&file, coor)?;
    let tri = &file.tri;
    let tet_ok = check_tet_condition(tri, &c);
    let full = check_full_taut(tri, &c);
    let edge_criterion = check_prop9(tri, &c).map_err(|e| invalid(e.to_string()))?;
    let pis = edge_pi_counts(tri, &c);
    let profile = cusp_angle_profile(tri, &c);
    if json_out {
        emit_json(
            out,
            &json!({
                "tet_condition": tet_ok,
                "taut": full,
                "edge_criterion": edge_criterion,
                "edge_pi_counts": pis,
                "cusp_angle_profile": profile,
            }),
        )?;
    } else {
        emit(
            out,
            &format!(
                "tet condition   {tet_ok}\ntaut            {full}\nedge criterion  {edge_criterion}\nedge pi counts  {pis:?}\n"
            ),
        )?;
    }
    Ok(if full { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_layer(a: &LayerArgs, out: &mut dyn Write) -> Outcome {
    let spec = match (&a.surface, &a.word, &a.spec) {
        (Some(surface), Some(word), None) => {
            if surface != "ptorus" {
                return Err(invalid(format!(
                    "unknown surface {surface:?}; expected ptorus"
                )));
            }
            MonodromySpec::from_ptorus_word(word).map_err(|e| invalid(e.to_string()))?
        }
        (None, None, Some(path)) => {
            MonodromySpec::from_json(&read(path)?).map_err(|e| invalid(e.to_string()))?
        }
        _ => {
            return Err(invalid(
                "pass either --surface ptorus --word W or --spec FILE",
            ))
        }
    };
    let layered =
        build_mapping_torus(&spec).map_err(|e| Failure(EXIT_CONSTRUCTION, e.to_string()))?;
    let flags = layered.coor.tet_flags(&layered.tri);
    std::fs::write(&a.out, serialize(&layered.tri, Some(&flags)))
        .map_err(|e| invalid(format!("{}: {e}", a.out.display())))?;
    let r = &layered.report;
    if a.json {
        emit_json(
            out,
            &json!({
                "tetrahedra": r.tet_count,
                "edge_classes": r.edge_class_count,
                "cusps": r.cusps.len(),
                "taut": true,
                "layers": layered.layer_count(),
                "fiber_weights": layered.fiber_weights(0).expect("layer 0 exists"),
            }),
        )?;
    } else {
        emit(
            out,
            &format!(
                "tetrahedra    {}\nedge classes  {}\ncusps         {}\ntaut          true\n",
                r.tet_count,
                r.edge_class_count,
                r.cusps.len()
            ),
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_carried(a: &CarriedArgs, out: &mut dyn Write) -> Outcome {
    let file = load(&a.file)?;
    require_manifold(&file.tri)?;
    let (coor, index) = pick_coor(&file, a.coor)?;
    let tri = &file.tri;
    let system = switch_system(tri, &coor).map_err(|e| invalid(e.to_string()))?;
    let g = crate::taut::dual_cycle(tri, &coor);
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for w in enumerate_solutions(&system, a.max_total) {
        let total: u64 = w.iter().sum();
        if total == 0 {
            continue;
        }
        let chi = euler_char(&w).map_err(|e| Failure(EXIT_VIOLATION, e.to_string()))?;
        let p = pairing(tri, &coor, &g, &w);
        let surf =
            reconstruct(tri, &coor, &w).map_err(|e| Failure(EXIT_VIOLATION, e.to_string()))?;
        if p.unsigned_abs() != total
            || -2 * chi != total as i64
            || surf.euler_characteristic() != chi
        {
            violations.push(w.clone());
        }
        rows.push(json!({
            "weights": w,
            "total": total,
            "euler_characteristic": chi,
            "pairing": p,
            "components": surf.components,
            "boundary_curves_per_cusp": surf.boundary_curves_per_cusp,
        }));
    }
    if a.json {
        emit_json(
            out,
            &json!({
                "coor_index": index,
                "max_total": a.max_total,
                "equations": system.equations,
                "solutions": rows,
            }),
        )?;
    } else {
        let mut s = format!(
            "{} switch equations, {} solutions with total <= {}\n",
            system.equations.len(),
            rows.len(),
            a.max_total
        );
        s += "weights                 total  chi  pairing  components\n";
        for r in &rows {
            s += &format!(
                "{:<24}{:>5}{:>5}{:>9}{:>12}\n",
                r["weights"].to_string(),
                r["total"].to_string(),
                r["euler_characteristic"].to_string(),
                r["pairing"].to_string(),
                r["components"].as_array().map_or(0, Vec::len)
            );
        }
        emit(out, &s)?;
    }
    if violations.is_empty() {
        Ok(EXIT_OK)
    } else {
        Err(Failure(
            EXIT_VIOLATION,
            format!("pairing identity fails for {violations:?}"),
        ))
    }
}

fn cmd_discs(a: &DiscArgs, out: &mut dyn Write) -> Outcome {
    let file = load(&a.file)?;
    require_manifold(&file.tri)?;
    let (coor, index) = pick_coor(&file, a.coor)?;
    let flags = coor.tet_flags(&file.tri);
    let tet_flags = *flags.get(a.tet).ok_or_else(|| {
        invalid(format!(
            "--tet {} out of range: {} tetrahedra",
            a.tet,
            flags.len()
        ))
    })?;
    let model = TruncatedModel::build(tet_flags).map_err(|e| invalid(e.to_string()))?;
    let report = check_prop12_suite(&model, a.max_cusps)
        .map_err(|v| Failure(EXIT_VIOLATION, v.to_string()))?;
    let patterns = enumerate_admissible_discs(&model, a.max_cusps);
    if a.json {
        let dump: Vec<_> = patterns
            .iter()
            .map(|p| {
                let arcs: Vec<_> = p
                    .arcs(&model)
                    .iter()
                    .map(|arc| model.arc_contribution(arc))
                    .collect();
                json!({
                    "crossings": p.crossings,
                    "cusps": p.cusp_count(&model),
                    "area": p.area(&model),
                    "g_dot_quarters": g_dot(&model, p),
                    "arcs": arcs,
                })
            })
            .collect();
        emit_json(
            out,
            &json!({
                "coor_index": index,
                "tet": a.tet,
                "flags": signs(&tet_flags),
                "pi_edges": model.pi_edges,
                "zero_edges": model.zero_edges,
                "report": report,
                "arc_table": arc_table(&model),
                "patterns": dump,
            }),
        )?;
    } else {
        let mut s = format!(
            "tet {} flags {}  pi edges {:?}\n{} admissible discs with at most {} cusps\n",
            a.tet,
            signs(&tet_flags),
            model.pi_edges,
            report.patterns,
            a.max_cusps
        );
        s += "cusps  discs\n";
        for (c, n) in report.by_cusps.iter().enumerate() {
            s += &format!("{c:>5}  {n}\n");
        }
        s += &format!(
            "max |G.D| = {}/4, equality cases {}\narea bounds hold\n",
            report.max_abs_g_dot_quarters, report.equality_cases
        );
        emit(out, &s)?;
    }
    Ok(EXIT_OK)
}

fn load_surface(path: &Path) -> Result<SurfaceIdealTri, Failure> {
    parse_surface(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn cmd_flippath(a: &FlipArgs, out: &mut dyn Write) -> Outcome {
    let from = load_surface(&a.from)?;
    let to = load_surface(&a.to)?;
    let seq = flip_path_bfs(&from, &to, a.max_depth).ok_or_else(|| {
        Failure(
            EXIT_CONSTRUCTION,
            format!("no flip path within {} flips", a.max_depth),
        )
    })?;
    if a.json {
        emit_json(
            out,
            &json!({"length": seq.flips.len(), "flips": seq.flips, "closing": seq.closing}),
        )?;
    } else {
        emit(
            out,
            &format!("length  {}\nflips   {:?}\n", seq.flips.len(), seq.flips),
        )?;
    }
    Ok(EXIT_OK)
}
