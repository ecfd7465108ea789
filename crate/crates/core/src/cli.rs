//! Command-line front end.
//!
//! Exit codes: 0 overall pass, 1 some check failed, 2 a check was skipped
//! and `--fail-on-skip` is set, 3 the input could not be read, parsed or
//! validated.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog;
use crate::model::{validate_profile, CohomologyProfile};
use crate::polygon::{PointComparison, Polygon};
use crate::schema::{parse_profile, profile_to_json};
use crate::slope::{slope_number_polygon, slope_numbers};
use crate::svg::{self, Series, Stroke};
use crate::verify::{verify_main_theorem, CheckId, Verdict, VerificationReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_SKIP: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "hodgewitt", version, about = "Slope numbers, Hodge-Witt numbers and Hodge symmetry checks")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: OutputFormat,

    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Exit with status 2 when a required check is skipped.
    #[arg(long, global = true)]
    pub fail_on_skip: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full verification chain on a profile file.
    Check { file: PathBuf },
    /// Print Newton, slope-number and Hodge polygons and their comparison.
    Polygons {
        file: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        /// Overlay the polygons of one degree (default: the middle degree) as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Emit a catalog profile, or `list` the standard ids.
    Catalog { id: String },
    /// Check every `*.json` profile in a directory.
    Batch { dir: PathBuf },
}

/// Outcome of a command: main output plus diagnostics and exit status.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn error(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        Outcome { stdout: String::new(), stderr, code: EXIT_ERROR }
    }
}

pub fn load_profile(path: &Path) -> Result<CohomologyProfile, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_profile(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn exit_code(report: &VerificationReport, fail_on_skip: bool) -> i32 {
    if report.verdict(CheckId::Validate) == Some(Verdict::Fail) {
        return EXIT_ERROR;
    }
    match report.overall {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Skipped if fail_on_skip => EXIT_SKIP,
        Verdict::Skipped => EXIT_PASS,
    }
}

/// Orders exit codes by how bad they are: pass < skip < fail < error.
fn severity(code: i32) -> u8 {
    match code {
        EXIT_PASS => 0,
        EXIT_SKIP => 1,
        EXIT_FAIL => 2,
        _ => 3,
    }
}

pub fn cmd_check(path: &Path, format: OutputFormat, fail_on_skip: bool) -> Outcome {
    let profile = match load_profile(path) {
        Ok(p) => p,
        Err(e) => return Outcome::error(e),
    };
    let report = verify_main_theorem(&profile);
    let code = exit_code(&report, fail_on_skip);
    let stdout = match format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Json => report.to_json() + "\n",
    };
    let stderr = if code == EXIT_ERROR {
        format!("{}: profile failed validation\n", path.display())
    } else {
        String::new()
    };
    Outcome { stdout, stderr, code }
}

#[derive(Debug, Serialize)]
struct Comparison {
    upper: &'static str,
    lower: &'static str,
    holds: bool,
    points: Vec<PointComparison>,
}

#[derive(Debug, Serialize)]
struct DegreePolygons {
    degree: usize,
    newton: Polygon,
    slope_number: Polygon,
    #[serde(skip_serializing_if = "Option::is_none")]
    hodge: Option<Polygon>,
    comparisons: Vec<Comparison>,
    notes: Vec<String>,
}

#[derive(Debug, Serialize)]
struct PolygonsDocument {
    profile: String,
    degrees: Vec<DegreePolygons>,
}

fn polygons_for(p: &CohomologyProfile, n: usize) -> Result<DegreePolygons, String> {
    let newton = p.newton_polygon(n).map_err(|e| e.to_string())?;
    let slope_number =
        slope_number_polygon(&slope_numbers(&p.slopes_in(n), n)).map_err(|e| e.to_string())?;
    let hodge = p.hodge.as_ref().map(|h| h.polygon(n));
    let mut notes = Vec::new();
    let mut comparisons = Vec::new();

    let mut compare = |upper: &'static str, a: &Polygon, lower: &'static str, b: &Polygon, notes: &mut Vec<String>| {
        match a.compare(b) {
            Ok(points) => comparisons.push(Comparison {
                upper,
                lower,
                holds: points.iter().all(PointComparison::holds),
                points,
            }),
            Err(e) => notes.push(format!("{upper} vs {lower} not compared: {e}")),
        }
    };
    compare("newton", &newton, "slope-number", &slope_number, &mut notes);
    match &hodge {
        Some(h) => compare("slope-number", &slope_number, "hodge", h, &mut notes),
        None => notes.push("no Hodge table; Hodge polygon omitted".to_string()),
    }
    Ok(DegreePolygons { degree: n, newton, slope_number, hodge, comparisons, notes })
}

fn points_text(p: &Polygon) -> String {
    p.points()
        .iter()
        .map(|q| format!("({},{})", q.x, q.y))
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_polygons_text(doc: &PolygonsDocument) -> String {
    let mut out = format!("profile: {}\n", doc.profile);
    for d in &doc.degrees {
        out.push_str(&format!("degree {}\n", d.degree));
        out.push_str(&format!("  newton        {}\n", points_text(&d.newton)));
        out.push_str(&format!("  slope-number  {}\n", points_text(&d.slope_number)));
        if let Some(h) = &d.hodge {
            out.push_str(&format!("  hodge         {}\n", points_text(h)));
        }
        for c in &d.comparisons {
            out.push_str(&format!(
                "  {} on or above {}: {}\n",
                c.upper,
                c.lower,
                if c.holds { "yes" } else { "NO" }
            ));
            for pt in &c.points {
                let rel = match pt.upper.cmp(&pt.lower) {
                    std::cmp::Ordering::Greater => ">",
                    std::cmp::Ordering::Equal => "=",
                    std::cmp::Ordering::Less => "<",
                };
                out.push_str(&format!("    x={}: {} {} {}\n", pt.x, pt.upper, rel, pt.lower));
            }
        }
        for note in &d.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
    }
    out
}

pub fn cmd_polygons(path: &Path, degree: Option<usize>, svg_path: Option<&Path>, format: OutputFormat) -> Outcome {
    let profile = match load_profile(path) {
        Ok(p) => p,
        Err(e) => return Outcome::error(e),
    };
    let violations = validate_profile(&profile);
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| format!("  {v}")).collect();
        return Outcome::error(format!("{}: invalid profile\n{}", path.display(), lines.join("\n")));
    }
    let degrees: Vec<usize> = match degree {
        Some(n) if n > profile.max_degree() => {
            return Outcome::error(format!("degree {n} out of range 0..={}", profile.max_degree()))
        }
        Some(n) => vec![n],
        None => (0..=profile.max_degree()).collect(),
    };
    let mut doc = PolygonsDocument { profile: profile.name.clone(), degrees: Vec::new() };
    for n in degrees {
        match polygons_for(&profile, n) {
            Ok(d) => doc.degrees.push(d),
            Err(e) => return Outcome::error(format!("degree {n}: {e}")),
        }
    }

    let mut stderr = String::new();
    if let Some(svg_path) = svg_path {
        let n = degree.unwrap_or(profile.dim);
        let d = doc.degrees.iter().find(|d| d.degree == n).expect("degree computed");
        let mut series = vec![
            Series { label: "Newton", polygon: &d.newton, stroke: Stroke::Solid, color: "#1f4e9c" },
            Series { label: "slope-number", polygon: &d.slope_number, stroke: Stroke::Dashed, color: "#c0392b" },
        ];
        if let Some(h) = &d.hodge {
            series.push(Series { label: "Hodge", polygon: h, stroke: Stroke::Dotted, color: "#27803b" });
        }
        let title = format!("{} (degree {n})", profile.name);
        if let Err(e) = fs::write(svg_path, svg::render(&title, &series)) {
            return Outcome::error(format!("{}: {e}", svg_path.display()));
        }
        stderr.push_str(&format!("wrote {}\n", svg_path.display()));
    }

    let holds = doc.degrees.iter().all(|d| d.comparisons.iter().all(|c| c.holds));
    let stdout = match format {
        OutputFormat::Text => render_polygons_text(&doc),
        OutputFormat::Json => serde_json::to_string_pretty(&doc).expect("serializes") + "\n",
    };
    Outcome { stdout, stderr, code: if holds { EXIT_PASS } else { EXIT_FAIL } }
}

#[derive(Serialize)]
struct ListedEntry<'a> {
    id: &'a str,
    description: &'a str,
}

pub fn cmd_catalog(id: &str, format: OutputFormat) -> Outcome {
    if id == "list" {
        let entries = catalog::standard_entries();
        let stdout = match format {
            OutputFormat::Text => {
                let width = entries.iter().map(|e| e.id.len()).max().unwrap_or(0);
                entries
                    .iter()
                    .map(|e| format!("{:<width$}  {}\n", e.id, e.description))
                    .collect()
            }
            OutputFormat::Json => {
                let listed: Vec<ListedEntry> = entries
                    .iter()
                    .map(|e| ListedEntry { id: &e.id, description: &e.description })
                    .collect();
                serde_json::to_string_pretty(&listed).expect("serializes") + "\n"
            }
        };
        return Outcome { stdout, stderr: String::new(), code: EXIT_PASS };
    }
    match catalog::generate(id) {
        Ok(entry) => Outcome { stdout: profile_to_json(&entry.profile) + "\n", stderr: String::new(), code: EXIT_PASS },
        Err(e) => Outcome::error(e.to_string()),
    }
}

#[derive(Debug, Serialize)]
struct BatchRow {
    file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<Vec<(CheckId, Verdict)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    overall: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    exit: i32,
}

fn batch_row(path: &Path, fail_on_skip: bool) -> BatchRow {
    let file = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    match load_profile(path) {
        Err(e) => BatchRow { file, name: None, checks: None, overall: None, error: Some(e), exit: EXIT_ERROR },
        Ok(profile) => {
            let report = verify_main_theorem(&profile);
            BatchRow {
                file,
                name: Some(report.profile.clone()),
                checks: Some(report.checks.iter().map(|c| (c.id, c.verdict)).collect()),
                overall: Some(report.overall),
                error: None,
                exit: exit_code(&report, fail_on_skip),
            }
        }
    }
}

fn short(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "P",
        Verdict::Fail => "F",
        Verdict::Skipped => "S",
    }
}

pub fn cmd_batch(dir: &Path, format: OutputFormat, fail_on_skip: bool) -> Outcome {
    let listing = match fs::read_dir(dir) {
        Ok(l) => l,
        Err(e) => return Outcome::error(format!("{}: {e}", dir.display())),
    };
    let mut files: Vec<PathBuf> = listing
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));

    let rows: Vec<BatchRow> = files.par_iter().map(|p| batch_row(p, fail_on_skip)).collect();
    let code = rows
        .iter()
        .map(|r| r.exit)
        .max_by_key(|c| severity(*c))
        .unwrap_or(EXIT_PASS);

    let stdout = match format {
        OutputFormat::Json => serde_json::to_string_pretty(&rows).expect("serializes") + "\n",
        OutputFormat::Text => {
            let fw = rows.iter().map(|r| r.file.len()).max().unwrap_or(4).max(4);
            let nw = rows
                .iter()
                .filter_map(|r| r.name.as_ref().map(String::len))
                .max()
                .unwrap_or(4)
                .max(4);
            let mut out = format!("{:<fw$}  {:<nw$}", "file", "name");
            for id in CheckId::ALL {
                out.push_str(&format!("  {id}"));
            }
            out.push_str("  overall\n");
            for r in &rows {
                out.push_str(&format!("{:<fw$}  {:<nw$}", r.file, r.name.as_deref().unwrap_or("-")));
                match (&r.checks, &r.error) {
                    (Some(checks), _) => {
                        for (id, v) in checks {
                            out.push_str(&format!("  {:<w$}", short(*v), w = id.as_str().len()));
                        }
                        out.push_str(&format!("  {}\n", r.overall.expect("set with checks")));
                    }
                    (None, err) => {
                        out.push_str(&format!("  error: {}\n", err.as_deref().unwrap_or("unknown")));
                    }
                }
            }
            out
        }
    };
    Outcome { stdout, stderr: String::new(), code }
}

pub fn execute(config: &RunConfig) -> Outcome {
    match &config.command {
        Command::Check { file } => cmd_check(file, config.format, config.fail_on_skip),
        Command::Polygons { file, degree, svg } => cmd_polygons(file, *degree, svg.as_deref(), config.format),
        Command::Catalog { id } => cmd_catalog(id, config.format),
        Command::Batch { dir } => cmd_batch(dir, config.format, config.fail_on_skip),
    }
}

/// Runs a parsed configuration, writing output to `--output` or `stdout`.
pub fn run(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = execute(config);
    let _ = stderr.write_all(outcome.stderr.as_bytes());
    match &config.output {
        Some(path) if !outcome.stdout.is_empty() => {
            if let Err(e) = fs::write(path, &outcome.stdout) {
                let _ = writeln!(stderr, "{}: {e}", path.display());
                return EXIT_ERROR;
            }
        }
        _ => {
            let _ = stdout.write_all(outcome.stdout.as_bytes());
        }
    }
    outcome.code
}
