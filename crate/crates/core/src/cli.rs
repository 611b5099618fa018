//! The `pkarr` command line: argument parsing, file ingestion, report assembly and exit codes.
//!
//! Exit codes: 0 when every requested check passes, 1 for a verified violation,
//! 2 for input or usage errors, 3 when an internal invariant fails.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use crate::arrangement::{parse_arrangement, parse_weights, Arrangement, IncidenceLattice};
use crate::catalog::{catalog_build, catalog_list, quadrilateral_biased_weights, seven_lines_weights, validate_entry};
use crate::connection::{parse_connection_file, sample_connection, verify_connection_file};
use crate::error::{Error, Result};
use crate::exactfield::Rational;
use crate::relations::{parse_curve_file, search_branch_kinds, verify_relations, Classification};
use crate::report::{check_summary, lattice_summary, parabolic_summary, solve_summary, CheckOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pkarr", version, about = "Exact checks for weighted line arrangements on CP^2")]
pub struct Cli {
    /// Emit machine-readable JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    /// Weight file overriding the weights in the arrangement file.
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Intersection lattice, B-matrix, symmetric and Hirzebruch checks.
    Lattice { file: PathBuf },
    /// Relations, Bogomolov-Gieseker quantity, pencil criterion and limit cusps.
    Check {
        file: PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
        /// Also evaluate the quantity with double points treated as (1,1) points.
        #[arg(long)]
        doubles_as_singular: bool,
        /// Fail unless the classification is pk_candidate_equality.
        #[arg(long)]
        require_equality: bool,
        /// Fail when the weights are infeasible or only a limit with a cusp.
        #[arg(long)]
        require_feasible: bool,
    },
    /// Solve the linear weight system and decide the open region.
    Solve {
        file: PathBuf,
        /// Fail when the open region is empty.
        #[arg(long)]
        require_feasible: bool,
    },
    /// Named arrangements.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Relations for abstract curve data.
    Curves {
        file: PathBuf,
        /// Try every branch-kind labelling at non-(1,1) points and report those satisfying the per-curve relations.
        #[arg(long)]
        search_kinds: bool,
    },
    /// Parabolic Chern data and stability margins.
    Parabolic {
        file: PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
        /// Polarization N (default: the stability threshold).
        #[arg(long = "n")]
        n: Option<i64>,
        /// Evaluate even for inadmissible weights.
        #[arg(long)]
        diagnostic: bool,
    },
    /// Residue-matrix connections on a (1,1) cone.
    Connection {
        #[command(subcommand)]
        action: ConnectionAction,
    },
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum CatalogAction {
    List,
    Build {
        name: String,
        /// Integer parameter (n, m or k).
        #[arg(long = "param")]
        params: Vec<i64>,
        /// quadrilateral: biased weights (beta on x, y, z and 1 - beta on the rest).
        #[arg(long)]
        beta: Option<Rational>,
        /// seven_lines: weight of x.
        #[arg(long)]
        wx: Option<Rational>,
        /// seven_lines: weight of y.
        #[arg(long)]
        wy: Option<Rational>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConnectionAction {
    Verify {
        file: PathBuf,
    },
    Sample {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

/// What a command produced: exit code and the text for each stream.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_command<I, T>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CommandOutput { exit_code: code, stdout: text, stderr: String::new() }
            } else {
                CommandOutput { exit_code: code, stdout: String::new(), stderr: text }
            };
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> CommandOutput {
    let mut out = CommandOutput::default();
    match dispatch(cli, &mut out) {
        Ok(code) => out.exit_code = code,
        Err(e) => {
            out.exit_code = match e {
                Error::Internal(_) => EXIT_INTERNAL,
                _ => EXIT_INPUT,
            };
            let _ = writeln!(out.stderr, "error: {e}");
        }
    }
    out
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn source(path: &Path) -> String {
    path.display().to_string()
}

fn load_weighted(file: &Path, w: &WeightArgs) -> Result<(Arrangement, Vec<Rational>)> {
    let (arr, inline) = parse_arrangement(&read(file)?, &source(file))?;
    let weights = match &w.weights {
        Some(p) => arr.weights_from_map(&parse_weights(&read(p)?, &source(p))?)?,
        None => inline.ok_or_else(|| Error::WeightsMissing("no weights in file; pass --weights".into()))?,
    };
    Ok((arr, weights))
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn emit(cli: &Cli, out: &mut CommandOutput, report: &Value, table: impl FnOnce(&mut String)) {
    if cli.json {
        out.stdout = serde_json::to_string_pretty(report).expect("json value prints");
        out.stdout.push('\n');
    } else {
        table(&mut out.stdout);
    }
}

fn dispatch(cli: &Cli, out: &mut CommandOutput) -> Result<i32> {
    match &cli.command {
        Command::Lattice { file } => cmd_lattice(cli, out, file),
        Command::Check { file, weights, doubles_as_singular, require_equality, require_feasible } => {
            cmd_check(cli, out, file, weights, *doubles_as_singular, *require_equality, *require_feasible)
        }
        Command::Solve { file, require_feasible } => cmd_solve(cli, out, file, *require_feasible),
        Command::Catalog { action } => cmd_catalog(cli, out, action),
        Command::Curves { file, search_kinds } => cmd_curves(cli, out, file, *search_kinds),
        Command::Parabolic { file, weights, n, diagnostic } => cmd_parabolic(cli, out, file, weights, *n, *diagnostic),
        Command::Connection { action } => cmd_connection(cli, out, action),
    }
}

fn signature_string(lat: &IncidenceLattice) -> String {
    let parts: Vec<String> = lat.signature().iter().rev().map(|(m, c)| format!("{m}:{c}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn cmd_lattice(cli: &Cli, out: &mut CommandOutput, file: &Path) -> Result<i32> {
    let (arr, _) = parse_arrangement(&read(file)?, &source(file))?;
    let (lat, rep) = lattice_summary(&arr)?;
    let (b, sym, hir) = (&rep.b_matrix, &rep.symmetric, &rep.hirzebruch);
    emit(cli, out, &to_json(&rep), |s| {
        let _ = writeln!(s, "lines: {}", arr.n());
        let _ = writeln!(s, "points: {}  signature {}", lat.points.len(), signature_string(&lat));
        for r in &rep.points {
            let _ = writeln!(s, "  {:>3}  mult {}  {}  [{}]", r.index, r.multiplicity, r.point, r.lines.join(", "));
        }
        let _ = writeln!(s, "B-matrix:");
        for (name, row) in arr.names().iter().zip(b) {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
            let _ = writeln!(s, "  {name:>10}  {}", cells.join(" "));
        }
        let _ =
            writeln!(s, "symmetric: {}{}", sym.is_symmetric, sym.m.map(|m| format!(" (m = {m})")).unwrap_or_default());
        let _ = writeln!(
            s,
            "hirzebruch: sum mu = {}, bound = {}, applicable = {}, equality = {}, identity residual = {}",
            hir.sum_mu, hir.bound, hir.applicable, hir.equality, hir.identity_residual
        );
    });
    Ok(EXIT_OK)
}

fn cmd_check(
    cli: &Cli,
    out: &mut CommandOutput,
    file: &Path,
    w: &WeightArgs,
    doubles: bool,
    require_equality: bool,
    require_feasible: bool,
) -> Result<i32> {
    let (arr, weights) = load_weighted(file, w)?;
    let opts = CheckOptions { doubles_as_singular: doubles, require_equality, require_feasible };
    let (lat, rep) = check_summary(&arr, &weights, &opts)?;
    let code = if rep.passes() { EXIT_OK } else { EXIT_VIOLATION };
    let (check, bg, pencil, cusp, failures) = (&rep.check, &rep.bg, &rep.pencil, &rep.limit_cusp, &rep.failures);
    let class = check.classification;
    emit(cli, out, &to_json(&rep), |s| {
        let names = arr.names();
        let _ = writeln!(s, "classification: {}", class.as_str());
        let _ = writeln!(s, "bg: {}", bg.value);
        let _ = writeln!(s, "{:>10}  {:>8}  {:>10}  {:>10}", "line", "beta", "eq1", "gradient");
        for (j, name) in names.iter().enumerate() {
            let _ = writeln!(
                s,
                "{name:>10}  {:>8}  {:>10}  {:>10}",
                weights[j].to_string(),
                check.eq1_residuals[j].value.to_string(),
                bg.gradient[j].to_string()
            );
        }
        let opt = |r: &Option<Rational>| r.as_ref().map_or("n/a".to_string(), |x| x.to_string());
        let _ = writeln!(s, "eq2: {}  eq3: {}", opt(&check.eq2_residual), opt(&check.eq3_residual));
        for a in &check.alphas {
            let _ = writeln!(s, "alpha {}: {}", a.name, a.value);
        }
        let f = &check.constraint_flags;
        let _ = writeln!(
            s,
            "constraints strict: {} (weights open {}, point sums ok {})",
            f.all_strict, f.weights_open, f.point_sums_ok
        );
        if let Some(d) = &rep.doubles_as_singular {
            let _ = writeln!(s, "doubles as singular: {}  gap {}", d.value, d.gap);
        }
        let _ = writeln!(s, "pencil criterion: {}", if pencil.all_pass { "pass" } else { "fail" });
        for l in pencil.lines.iter().filter(|l| !l.passes) {
            if let Some(o) = &l.obstruction {
                let _ = writeln!(
                    s,
                    "  {}: partners [{}] not concurrent; {} misses point {}",
                    names[l.line],
                    l.partners.iter().map(|&k| names[k].as_str()).collect::<Vec<_>>().join(", "),
                    names[o.line],
                    lat.points[o.point].point
                );
            }
        }
        let _ = writeln!(
            s,
            "cusps: {}",
            cusp.cusps.iter().map(|&i| lat.points[i].point.to_string()).collect::<Vec<_>>().join(", ")
        );
        if !cusp.boundary_weights.is_empty() {
            let _ = writeln!(
                s,
                "boundary weights: {}",
                cusp.boundary_weights.iter().map(|&j| names[j].as_str()).collect::<Vec<_>>().join(", ")
            );
        }
        for fl in failures {
            let _ = writeln!(s, "FAIL: {fl}");
        }
    });
    Ok(code)
}

fn cmd_solve(cli: &Cli, out: &mut CommandOutput, file: &Path, require_feasible: bool) -> Result<i32> {
    let (arr, _) = parse_arrangement(&read(file)?, &source(file))?;
    let summary = solve_summary(&arr)?;
    let rep = &summary.solve;
    let code = if require_feasible && !rep.interior_feasible() { EXIT_VIOLATION } else { EXIT_OK };
    emit(cli, out, &to_json(&summary), |s| match rep.dimension {
        None => {
            let _ = writeln!(s, "linear system inconsistent");
        }
        Some(d) => {
            let join = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
            let _ = writeln!(s, "dimension: {d}");
            let _ = writeln!(s, "particular: [{}]", join(rep.particular.as_deref().unwrap_or(&[])));
            for (i, b) in rep.basis.iter().enumerate() {
                let _ = writeln!(s, "basis {i}: [{}]", join(b));
            }
            let _ =
                writeln!(s, "slack optimum: {}", rep.slack_optimum.as_ref().map_or("n/a".into(), |x| x.to_string()));
            match &rep.interior_point {
                Some(p) => {
                    let _ = writeln!(s, "interior point: [{}]", join(p));
                }
                None => {
                    let _ = writeln!(s, "interior point: none");
                }
            }
            if let Some(z) = &rep.bg_zero {
                let _ = writeln!(s, "bg on solution space: {}", serde_json::to_string(z).unwrap_or_default());
            }
        }
    });
    Ok(code)
}

fn cmd_catalog(cli: &Cli, out: &mut CommandOutput, action: &CatalogAction) -> Result<i32> {
    match action {
        CatalogAction::List => {
            let rows: Vec<Value> =
                catalog_list().iter().map(|(n, d)| serde_json::json!({"name": n, "description": d})).collect();
            emit(cli, out, &Value::Array(rows), |s| {
                for (n, d) in catalog_list() {
                    let _ = writeln!(s, "{n:<16} {d}");
                }
            });
            Ok(EXIT_OK)
        }
        CatalogAction::Build { name, params, beta, wx, wy, output } => {
            let entry = catalog_build(name, params)?;
            let mut weights = entry.default_weights.clone();
            match (name.as_str(), beta, wx, wy) {
                ("quadrilateral", Some(b), None, None) => weights = quadrilateral_biased_weights(b),
                ("seven_lines", None, x, y) if x.is_some() || y.is_some() => {
                    let d = Rational::new(2, 3);
                    weights = seven_lines_weights(x.as_ref().unwrap_or(&d), y.as_ref().unwrap_or(&d));
                }
                (_, None, None, None) => {}
                _ => {
                    return Err(Error::ParamOutOfRange("--beta is for quadrilateral, --wx/--wy for seven_lines".into()))
                }
            }
            if !validate_entry(&entry)? {
                return Err(Error::Internal(format!("{} does not reproduce its expected lattice", entry.name.label())));
            }
            for f in &entry.flags {
                let _ = writeln!(out.stderr, "note: {}: {f}", entry.name.label());
            }
            let file = entry.arrangement.to_file(Some(&weights));
            let text = serde_json::to_string_pretty(&file).expect("arrangement serializes") + "\n";
            match output {
                Some(p) => {
                    std::fs::write(p, &text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
                    if !cli.json {
                        let _ = writeln!(
                            out.stdout,
                            "wrote {} ({} lines) to {}",
                            entry.name.label(),
                            entry.arrangement.n(),
                            p.display()
                        );
                    }
                }
                None => out.stdout = text,
            }
            Ok(EXIT_OK)
        }
    }
}

fn cmd_curves(cli: &Cli, out: &mut CommandOutput, file: &Path, search: bool) -> Result<i32> {
    let data = parse_curve_file(&read(file)?, &source(file))?;
    let sys = data.to_system()?;
    let check = verify_relations(&sys)?;
    let kinds = if search { Some(search_branch_kinds(&data)?) } else { None };
    let code = if check.residuals_zero() && check.classification != Classification::Violation {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    let report = serde_json::json!({ "check": check, "b": sys.b, "kind_assignments": kinds });
    emit(cli, out, &report, |s| {
        let _ = writeln!(s, "classification: {}", check.classification.as_str());
        for r in &check.eq1_residuals {
            let _ = writeln!(s, "eq1 {}: {}", r.name, r.value);
        }
        let opt = |r: &Option<Rational>| r.as_ref().map_or("not checked".to_string(), |x| x.to_string());
        let _ = writeln!(s, "eq2: {}", opt(&check.eq2_residual));
        let _ = writeln!(s, "eq3: {}", opt(&check.eq3_residual));
        if let Some(g) = &check.gjgk_residuals {
            for r in g.iter().filter(|r| !r.value.is_zero()) {
                let _ = writeln!(s, "pairing {}.{}: {}", r.a, r.b, r.value);
            }
        }
        for a in &check.alphas {
            let _ = writeln!(s, "alpha {}: {}", a.name, a.value);
        }
        if let Some(k) = &kinds {
            let _ = writeln!(s, "branch-kind assignments satisfying the per-curve relations: {}", k.len());
        }
    });
    Ok(code)
}

fn cmd_parabolic(
    cli: &Cli,
    out: &mut CommandOutput,
    file: &Path,
    w: &WeightArgs,
    n: Option<i64>,
    diagnostic: bool,
) -> Result<i32> {
    let (arr, weights) = load_weighted(file, w)?;
    let summary = parabolic_summary(&arr, &weights, n, diagnostic)?;
    let (rep, bounds) = (&summary.parabolic, &summary.stability);
    if let Some(b) = bounds {
        if b.n < b.n_min {
            let _ = writeln!(out.stderr, "warning: N = {} is below the stability threshold {}", b.n, b.n_min);
        }
    }
    let code = if summary.passes() { EXIT_OK } else { EXIT_VIOLATION };
    emit(cli, out, &to_json(&summary), |s| {
        let e: Vec<String> = rep.par_ch1.e.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "par_ch1: h = {}, e = [{}]", rep.par_ch1.h, e.join(", "));
        let _ = writeln!(s, "pardeg (N = {}): {}", rep.polarization_n, rep.pardeg);
        let _ = writeln!(s, "par_ch2: {}", rep.par_ch2);
        let _ = writeln!(s, "nu_total: {}", rep.nu_total);
        if !rep.admissible {
            let _ = writeln!(s, "weights are not admissible (diagnostic evaluation)");
        }
        if let Some(b) = bounds {
            let t = &b.thresholds;
            let _ = writeln!(
                s,
                "thresholds: {}, {}, {} -> N_min = {}",
                t.from_alpha, t.from_pairs, t.from_max_beta, b.n_min
            );
            let worst = b.per_point_margin_d1.iter().map(|m| &m.margin).max();
            let _ = writeln!(s, "max d=1 margin: {}", worst.map_or("n/a".into(), |x| x.to_string()));
            let _ = writeln!(s, "d=0 margin: {}", b.margin_d0);
            let _ = writeln!(s, "all margins negative: {}  guard holds: {}", b.all_negative, b.guard_holds);
        }
    });
    Ok(code)
}

fn cmd_connection(cli: &Cli, out: &mut CommandOutput, action: &ConnectionAction) -> Result<i32> {
    match action {
        ConnectionAction::Verify { file } => {
            let data = parse_connection_file(&read(file)?, &source(file))?;
            let rep = verify_connection_file(&data)?;
            emit(cli, out, &to_json(&rep), |s| {
                let _ = writeln!(s, "solution dimension: {}", rep.dimension);
                for sys in &rep.systems {
                    let r = &sys.report;
                    let _ = writeln!(
                        s,
                        "{}: constraints {}  flat {}  torsion-free {}  blow-up residue {}",
                        sys.label, r.constraints_ok, r.flat, r.torsion_free, r.blowup_residue_ok
                    );
                }
            });
            Ok(if rep.all_ok { EXIT_OK } else { EXIT_VIOLATION })
        }
        ConnectionAction::Sample { file, seed, count } => {
            let data = parse_connection_file(&read(file)?, &source(file))?;
            let rep = sample_connection(&data, *seed, *count)?;
            emit(cli, out, &to_json(&rep), |s| {
                let _ = writeln!(s, "seed {}  dimension {}  samples {}", rep.seed, rep.dimension, rep.samples.len());
                for (i, smp) in rep.samples.iter().enumerate() {
                    let c: Vec<String> = smp.coefficients.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(
                        s,
                        "  {i:>3} [{}]  flat {}  torsion-free {}",
                        c.join(", "),
                        smp.report.flat,
                        smp.report.torsion_free
                    );
                }
                let _ = writeln!(s, "all ok: {}", rep.all_ok);
            });
            Ok(if rep.all_ok { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}
