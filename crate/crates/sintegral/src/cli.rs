//! Batch front end: problem files in, verdicts and report files out.
//!
//! Exit codes: 0 success, 1 validation failure, 2 runtime/usage error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Error;
use crate::families::{
    classify_all, generate_orbit, pencil_points, stabilizer_map, sunit_catalog, ConicWithMarks,
    FamilyKind,
};
use crate::geometry::{self, DivisorConfig};
use crate::io::{self, rational_display, PolySchema, SolutionFile};
use crate::polysys::{
    bad_primes_div, bad_primes_forms, bad_primes_ngon, check_general_position_div,
    check_general_position_forms, ConditionVerdict,
};
use crate::search::{self, Point, Problem, SearchDomain, SearchMode};
use crate::sring::PrimeSet;
use crate::Result;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sintegral",
    version,
    about = "Exact search and verification for S-integer points on plane configurations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a problem file: general position, bad primes, S-sufficiency
    Check { problem: PathBuf },
    /// Exhaustive height-bounded search with witnessed output
    Search {
        problem: PathBuf,
        #[arg(long)]
        height: u64,
        #[arg(long, default_value_t = 1)]
        denom_bound: u64,
        /// exponent bound of the unit grid (parametric problems)
        #[arg(long, default_value_t = 6)]
        unit_exp: u32,
        #[arg(long)]
        out: PathBuf,
        /// run even if validation fails (recorded in the output)
        #[arg(long)]
        override_validation: bool,
    },
    /// Re-verify a solution file through the oracle-twin predicates
    Verify {
        problem: PathBuf,
        solutions: PathBuf,
    },
    /// Check the intersection-theoretic hypotheses of a preset configuration
    Geometry {
        #[command(flatten)]
        preset: GeometryArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit low-degree curves to a solution set
    Closure {
        #[arg(long)]
        solutions: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Family generators and classifiers
    #[command(subcommand)]
    Family(FamilyCommand),
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    /// one of: ngon, three-curves, symmetric-triple, delpezzo-conics,
    /// delpezzo2, hirzebruch
    #[arg(long)]
    pub preset: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub c: Option<u64>,
    #[arg(long)]
    pub h: Option<u64>,
    #[arg(long)]
    pub d1: Option<u64>,
    #[arg(long)]
    pub d2: Option<u64>,
    #[arg(long)]
    pub d3: Option<u64>,
    /// H_i.C values for delpezzo2, comma separated
    #[arg(long)]
    pub hc: Option<String>,
    /// C^2 for delpezzo2
    #[arg(long, default_value_t = 0)]
    pub c_self: i64,
    /// section product for hirzebruch
    #[arg(long)]
    pub d: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// Print the family catalog of a parametric unit problem
    Catalog {
        problem: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the solutions in a file against the catalog
    Classify {
        problem: PathBuf,
        solutions: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a Pell/torus orbit on a marked conic
    Orbit {
        /// JSON file: `{"form": ..., "ell": ["a","b","c"], "s_primes": [..],`
        /// `"seed": ["x","y","z"]}`
        conic: PathBuf,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the five-line conic-pencil generator
    Pencil {
        /// JSON file: `{"lines": [five polynomials], "s_primes": [..]}`
        lines: PathBuf,
        #[arg(long, default_value_t = 10)]
        members: usize,
        #[arg(long, default_value_t = 5)]
        points_per_member: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Check { problem } => cmd_check(&problem),
        Command::Search {
            problem,
            height,
            denom_bound,
            unit_exp,
            out,
            override_validation,
        } => cmd_search(
            &problem,
            height,
            denom_bound,
            unit_exp,
            &out,
            override_validation,
        ),
        Command::Verify { problem, solutions } => cmd_verify(&problem, &solutions),
        Command::Geometry { preset, out } => cmd_geometry(&preset, out.as_deref()),
        Command::Closure {
            solutions,
            max_degree,
            out,
        } => cmd_closure(&solutions, max_degree, out.as_deref()),
        Command::Family(f) => match f {
            FamilyCommand::Catalog { problem, out } => cmd_family_catalog(&problem, out.as_deref()),
            FamilyCommand::Classify {
                problem,
                solutions,
                out,
            } => cmd_family_classify(&problem, &solutions, out.as_deref()),
            FamilyCommand::Orbit { conic, count, out } => {
                cmd_family_orbit(&conic, count, out.as_deref())
            }
            FamilyCommand::Pencil {
                lines,
                members,
                points_per_member,
                out,
            } => cmd_family_pencil(&lines, members, points_per_member, out.as_deref()),
        },
    }
}

// ---------------------------------------------------------------------------
// check

fn print_conditions(conditions: &[(String, ConditionVerdict)]) -> bool {
    let mut ok = true;
    for (label, verdict) in conditions {
        let line = match verdict {
            ConditionVerdict::Verified => format!("  ok       {label}"),
            ConditionVerdict::Violated(w) => {
                ok = false;
                format!("  VIOLATED {label}: {w}")
            }
            ConditionVerdict::Inconclusive(w) => {
                ok = false;
                format!("  UNKNOWN  {label}: {w}")
            }
        };
        println!("{line}");
    }
    ok
}

/// Validation: general position over Q, the primes of bad reduction, and
/// (for the cyclic-forms predicate) whether S already contains them.
pub fn cmd_check(problem_path: &Path) -> Result<i32> {
    let problem = io::read_problem(problem_path)?;
    match &problem {
        Problem::Divisibility(p) => {
            let report = check_general_position_div(p);
            let ok = print_conditions(&report.conditions);
            for note in &report.notes {
                println!("  note: {note}");
            }
            if !ok {
                println!("general position: FAIL");
                return Ok(EXIT_VALIDATION);
            }
            let bad = bad_primes_div(p)?;
            println!("general position: PASS");
            println!("bad primes: {}", bad.primes);
            Ok(EXIT_OK)
        }
        Problem::Forms(p) => {
            let report = check_general_position_forms(p);
            let ok = print_conditions(&report.conditions);
            if !ok {
                println!("general position: FAIL");
                return Ok(EXIT_VALIDATION);
            }
            let bad = bad_primes_forms(p)?;
            println!("general position: PASS");
            println!("bad primes: {}", bad.primes);
            if p.r() < 5 {
                println!(
                    "note: the degeneracy criterion needs at least 5 forms (r = {})",
                    p.r()
                );
            }
            Ok(EXIT_OK)
        }
        Problem::NGon(p) => {
            let bad = bad_primes_ngon(p)?;
            println!("general position: PASS (all triple determinants nonzero)");
            println!("bad primes: {bad}");
            if bad.is_subset(&p.s) {
                println!("S-sufficiency: PASS (S = {})", p.s);
                Ok(EXIT_OK)
            } else {
                println!("S-sufficiency: FAIL — enlarge S to contain {bad}");
                Ok(EXIT_VALIDATION)
            }
        }
        Problem::ParametricUnit(p) => {
            println!("degrees equal and pairwise coprime: PASS");
            println!("S = {}", p.s);
            Ok(EXIT_OK)
        }
    }
}

// ---------------------------------------------------------------------------
// search / verify

pub fn cmd_search(
    problem_path: &Path,
    height: u64,
    denom_bound: u64,
    unit_exp: u32,
    out: &Path,
    override_validation: bool,
) -> Result<i32> {
    let problem = io::read_problem(problem_path)?;
    let mode = match &problem {
        Problem::Divisibility(_) => SearchMode::Affine2,
        Problem::Forms(_) | Problem::NGon(_) => SearchMode::Projective,
        Problem::ParametricUnit(_) => SearchMode::Affine3,
    };
    let domain = SearchDomain {
        height,
        denom_bound,
        mode,
        unit_exp_bound: unit_exp,
    };
    let solutions = search::run(&problem, &domain, override_validation)?;
    println!("solutions: {}", solutions.records.len());
    io::write_json(out, &SolutionFile::from_solution_set(&solutions))?;
    println!("written: {}", out.display());
    Ok(EXIT_OK)
}

pub fn cmd_verify(problem_path: &Path, solutions_path: &Path) -> Result<i32> {
    let problem = io::read_problem(problem_path)?;
    let solutions = io::read_solutions(solutions_path)?;
    let expected = io::problem_fingerprint(&problem);
    if solutions.problem_fingerprint != expected {
        println!("verification: FAIL (solution file belongs to a different problem)");
        return Ok(EXIT_VALIDATION);
    }
    if search::verify(&problem, &solutions) {
        println!("verification: PASS ({} records)", solutions.records.len());
        Ok(EXIT_OK)
    } else {
        println!("verification: FAIL");
        Ok(EXIT_VALIDATION)
    }
}

// ---------------------------------------------------------------------------
// geometry

#[derive(Debug, Serialize)]
struct QuadraticSchema {
    a: String,
    b: String,
    d: u64,
}

#[derive(Debug, Serialize)]
struct ComponentSchema {
    label: String,
    d_dot: String,
    xi: Option<QuadraticSchema>,
    inequality_holds: bool,
    note: Option<String>,
}

#[derive(Debug, Serialize)]
struct GeometryReportSchema {
    preset: String,
    d_squared: String,
    components: Vec<ComponentSchema>,
    overall: bool,
    notes: Vec<String>,
}

fn build_config(args: &GeometryArgs) -> Result<(String, DivisorConfig)> {
    let missing = |what: &str| Error::Validation(format!("preset {} needs --{what}", args.preset));
    match args.preset.as_str() {
        "ngon" => {
            let n = args.n.ok_or_else(|| missing("n"))?;
            Ok((format!("ngon n={n}"), geometry::preset_ngon(n)?))
        }
        "three-curves" => {
            let d1 = args.d1.ok_or_else(|| missing("d1"))?;
            let d2 = args.d2.ok_or_else(|| missing("d2"))?;
            let d3 = args.d3.ok_or_else(|| missing("d3"))?;
            Ok((
                format!("three-curves d1={d1} d2={d2} d3={d3}"),
                geometry::preset_three_curves(d1, d2, d3)?,
            ))
        }
        "symmetric-triple" => {
            let c = args.c.ok_or_else(|| missing("c"))?;
            let h = args.h.ok_or_else(|| missing("h"))?;
            Ok((
                format!("symmetric-triple c={c} h={h}"),
                geometry::preset_symmetric_triple(c, h)?,
            ))
        }
        "delpezzo-conics" => Ok(("delpezzo-conics".into(), geometry::preset_delpezzo_conics())),
        "delpezzo2" => {
            let hc = args.hc.as_ref().ok_or_else(|| missing("hc"))?;
            let parts: Vec<u64> = hc
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad --hc entry `{s}`")))
                })
                .collect::<Result<_>>()?;
            if parts.len() != 3 {
                return Err(Error::Parse(
                    "--hc needs three comma-separated integers".into(),
                ));
            }
            Ok((
                format!("delpezzo2 hc={hc} c_self={}", args.c_self),
                geometry::preset_delpezzo2([parts[0], parts[1], parts[2]], args.c_self)?,
            ))
        }
        "hirzebruch" => {
            let d = args.d.ok_or_else(|| missing("d"))?;
            Ok((format!("hirzebruch d={d}"), geometry::preset_hirzebruch(d)?))
        }
        other => Err(Error::Validation(format!("unknown preset `{other}`"))),
    }
}

pub fn cmd_geometry(args: &GeometryArgs, out: Option<&Path>) -> Result<i32> {
    let (name, config) = build_config(args)?;
    let report = geometry::check_all(&config);
    let schema = GeometryReportSchema {
        preset: name.clone(),
        d_squared: rational_display(&report.d_squared),
        components: report
            .components
            .iter()
            .map(|c| ComponentSchema {
                label: c.label.clone(),
                d_dot: rational_display(&c.d_dot),
                xi: c.xi.as_ref().map(|x| QuadraticSchema {
                    a: rational_display(&x.a),
                    b: rational_display(&x.b),
                    d: x.d,
                }),
                inequality_holds: c.inequality_holds,
                note: c.note.clone(),
            })
            .collect(),
        overall: report.overall,
        notes: report.notes.clone(),
    };
    println!("preset: {name}");
    println!("D^2 = {}", schema.d_squared);
    for c in &schema.components {
        let xi =
            c.xi.as_ref()
                .map(|x| {
                    if x.b == "0" {
                        format!("xi = {}", x.a)
                    } else if let Some(mag) = x.b.strip_prefix('-') {
                        format!("xi = {} - {}*sqrt({})", x.a, mag, x.d)
                    } else {
                        format!("xi = {} + {}*sqrt({})", x.a, x.b, x.d)
                    }
                })
                .unwrap_or_else(|| "xi undefined".into());
        println!(
            "  {}: D.D_i = {}, {}, inequality {}",
            c.label,
            c.d_dot,
            xi,
            if c.inequality_holds { "holds" } else { "FAILS" }
        );
    }
    if args.preset == "ngon" {
        let n = args.n.unwrap_or(0) as i64;
        println!(
            "threshold polynomial value at n = {n}: {}",
            geometry::ngon_threshold_value(n)
        );
    }
    for note in &schema.notes {
        println!("note: {note}");
    }
    println!("overall: {}", if report.overall { "PASS" } else { "FAIL" });
    if let Some(path) = out {
        io::write_json(path, &schema)?;
        println!("written: {}", path.display());
    }
    Ok(if report.overall {
        EXIT_OK
    } else {
        EXIT_VALIDATION
    })
}

// ---------------------------------------------------------------------------
// closure

#[derive(Debug, Serialize)]
struct ClosureComponentSchema {
    poly: PolySchema,
    degree: u32,
    support: Vec<usize>,
}

#[derive(Debug, Serialize)]
struct ClosureReportSchema {
    components: Vec<ClosureComponentSchema>,
    residual: Vec<usize>,
    covered: usize,
    total: usize,
    dmax: u32,
    min_support: usize,
    note: String,
}

pub fn cmd_closure(solutions_path: &Path, max_degree: u32, out: Option<&Path>) -> Result<i32> {
    let solutions = io::read_solutions(solutions_path)?;
    let mut points = Vec::new();
    for rec in &solutions.records {
        match &rec.point {
            Point::Affine2(x, y) => points.push((x.clone(), y.clone())),
            _ => {
                return Err(Error::Validation(
                    "closure reports need affine two-variable solutions".into(),
                ))
            }
        }
    }
    let report = crate::closure::degeneracy_report(&points, max_degree);
    let schema = ClosureReportSchema {
        components: report
            .components
            .iter()
            .map(|c| ClosureComponentSchema {
                poly: PolySchema::from_poly(&c.poly),
                degree: c.degree,
                support: c.support.clone(),
            })
            .collect(),
        residual: report.residual.clone(),
        covered: report.coverage.0,
        total: report.coverage.1,
        dmax: report.parameters.dmax,
        min_support: report.parameters.min_support,
        note: "component discovery is seed-based and not guaranteed complete".into(),
    };
    println!("points: {}", points.len());
    for c in &report.components {
        println!(
            "  degree {} component covering {} points: {}",
            c.degree,
            c.support.len(),
            c.poly
        );
    }
    println!("residual: {}", report.residual.len());
    println!("coverage: {}/{}", report.coverage.0, report.coverage.1);
    if let Some(path) = out {
        io::write_json(path, &schema)?;
        println!("written: {}", path.display());
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// families

#[derive(Debug, Serialize)]
struct FamilySchema {
    kind: String,
    t0: Option<String>,
    confined_coordinate: String,
    confined_value: String,
    description: String,
}

#[derive(Debug, Serialize)]
struct CatalogSchema {
    families: Vec<FamilySchema>,
}

fn catalog_schema(catalog: &crate::families::FamilyCatalog) -> CatalogSchema {
    CatalogSchema {
        families: catalog
            .families
            .iter()
            .map(|f| FamilySchema {
                kind: match f.kind {
                    FamilyKind::Fiber => "fiber",
                    FamilyKind::FixedU => "fixed-u",
                    FamilyKind::FixedV => "fixed-v",
                    FamilyKind::FixedRatio => "fixed-ratio",
                }
                .into(),
                t0: f.t0.as_ref().map(rational_display),
                confined_coordinate: f.confined.label().into(),
                confined_value: rational_display(f.confined.value()),
                description: f.description.clone(),
            })
            .collect(),
    }
}

fn parametric_problem(problem_path: &Path) -> Result<crate::polysys::ParametricUnitProblem> {
    match io::read_problem(problem_path)? {
        Problem::ParametricUnit(p) => Ok(p),
        _ => Err(Error::Validation(
            "expected a sunit-parametric problem file".into(),
        )),
    }
}

pub fn cmd_family_catalog(problem_path: &Path, out: Option<&Path>) -> Result<i32> {
    let p = parametric_problem(problem_path)?;
    let catalog = sunit_catalog(&p);
    let schema = catalog_schema(&catalog);
    for f in &schema.families {
        let t0 =
            f.t0.as_deref()
                .map(|t| format!(" at t = {t}"))
                .unwrap_or_default();
        println!(
            "  {}{}: {} = {}",
            f.kind, t0, f.confined_coordinate, f.confined_value
        );
    }
    if let Some(path) = out {
        io::write_json(path, &schema)?;
        println!("written: {}", path.display());
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct ClassifySchema {
    catalog: CatalogSchema,
    family_counts: Vec<usize>,
    observed_confined: Vec<(String, String)>,
    sporadic_count: usize,
    sporadics: Vec<[String; 3]>,
}

pub fn cmd_family_classify(
    problem_path: &Path,
    solutions_path: &Path,
    out: Option<&Path>,
) -> Result<i32> {
    let p = parametric_problem(problem_path)?;
    let solutions = io::read_solutions(solutions_path)?;
    let mut sols = Vec::new();
    for rec in &solutions.records {
        match &rec.point {
            Point::UnitSolution(u, v, t) => sols.push((u.clone(), v.clone(), t.clone())),
            _ => return Err(Error::Validation("expected unit-equation solutions".into())),
        }
    }
    let catalog = sunit_catalog(&p);
    let report = classify_all(&catalog, &p, &sols)?;
    let schema = ClassifySchema {
        catalog: catalog_schema(&catalog),
        family_counts: report.family_counts.clone(),
        observed_confined: report
            .observed_confined
            .iter()
            .map(|(l, v)| (l.clone(), rational_display(v)))
            .collect(),
        sporadic_count: report.sporadics.len(),
        sporadics: report
            .sporadics
            .iter()
            .map(|(u, v, t)| {
                [
                    rational_display(u),
                    rational_display(v),
                    rational_display(t),
                ]
            })
            .collect(),
    };
    println!("solutions: {}", sols.len());
    for (i, fam) in catalog.families.iter().enumerate() {
        println!(
            "  {} = {} ({}): {} solutions",
            fam.confined.label(),
            rational_display(fam.confined.value()),
            schema.catalog.families[i].kind,
            report.family_counts[i]
        );
    }
    println!("sporadic: {}", report.sporadics.len());
    println!(
        "observed confined values: {}",
        schema
            .observed_confined
            .iter()
            .map(|(l, v)| format!("{l}={v}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    if let Some(path) = out {
        io::write_json(path, &schema)?;
        println!("written: {}", path.display());
    }
    Ok(EXIT_OK)
}

#[derive(Debug, serde::Deserialize)]
struct ConicFileSchema {
    form: PolySchema,
    ell: [String; 3],
    #[serde(default)]
    s_primes: Vec<u64>,
    seed: [String; 3],
}

#[derive(Debug, Serialize)]
struct OrbitSchema {
    matrix: [[String; 3]; 3],
    conic_multiplier: String,
    line_multiplier: String,
    added_primes: Vec<String>,
    points: Vec<[String; 3]>,
}

pub fn cmd_family_orbit(conic_path: &Path, count: usize, out: Option<&Path>) -> Result<i32> {
    let text = std::fs::read_to_string(conic_path)?;
    let file: ConicFileSchema = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", conic_path.display())))?;
    let form = file.form.to_poly("form")?;
    let ell = [
        io::parse_bigint(&file.ell[0], "ell[0]")?,
        io::parse_bigint(&file.ell[1], "ell[1]")?,
        io::parse_bigint(&file.ell[2], "ell[2]")?,
    ];
    let seed = [
        io::parse_bigint(&file.seed[0], "seed[0]")?,
        io::parse_bigint(&file.seed[1], "seed[1]")?,
        io::parse_bigint(&file.seed[2], "seed[2]")?,
    ];
    let s = PrimeSet::new(file.s_primes.iter().copied())?;
    let conic = ConicWithMarks::new(form, ell)?;
    let generator = stabilizer_map(&conic, &s)?;
    let orbit = generate_orbit(&conic, &generator, &seed, count, &s)?;
    let fmt3 =
        |v: &[BigInt; 3]| -> [String; 3] { [v[0].to_string(), v[1].to_string(), v[2].to_string()] };
    let schema = OrbitSchema {
        matrix: [
            fmt3(&generator.matrix[0].clone()),
            fmt3(&generator.matrix[1].clone()),
            fmt3(&generator.matrix[2].clone()),
        ],
        conic_multiplier: rational_display(&generator.conic_multiplier),
        line_multiplier: rational_display(&generator.line_multiplier),
        added_primes: generator.bad_primes_added.iter().map(|p| p.to_string()).collect(),
        points: orbit.iter().map(fmt3).collect(),
    };
    println!("stabilizer eigen-scale: {}", schema.conic_multiplier);
    for p in &schema.points {
        println!("  ({} : {} : {})", p[0], p[1], p[2]);
    }
    if let Some(path) = out {
        io::write_json(path, &schema)?;
        println!("written: {}", path.display());
    }
    Ok(EXIT_OK)
}

#[derive(Debug, serde::Deserialize)]
struct LinesFileSchema {
    lines: Vec<PolySchema>,
    #[serde(default)]
    s_primes: Vec<u64>,
}

#[derive(Debug, Serialize)]
struct PencilMemberSchema {
    parameter: i64,
    conic: PolySchema,
    marks: [[String; 3]; 2],
    working_primes: Vec<String>,
    seed: [String; 3],
    points: Vec<[String; 3]>,
}

#[derive(Debug, Serialize)]
struct PencilSchema {
    members: Vec<PencilMemberSchema>,
    skipped: Vec<(i64, String)>,
    config_primes: Vec<String>,
    total_certified_points: usize,
}

pub fn cmd_family_pencil(
    lines_path: &Path,
    members: usize,
    points_per_member: usize,
    out: Option<&Path>,
) -> Result<i32> {
    let text = std::fs::read_to_string(lines_path)?;
    let file: LinesFileSchema = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", lines_path.display())))?;
    if file.lines.len() != 5 {
        return Err(Error::Validation(
            "the pencil generator needs exactly five lines".into(),
        ));
    }
    let lines: Vec<_> = file
        .lines
        .iter()
        .enumerate()
        .map(|(i, l)| l.to_poly(&format!("lines[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let lines: [crate::polysys::MultiPoly; 5] = lines.try_into().expect("length checked");
    let s = PrimeSet::new(file.s_primes.iter().copied())?;
    let report = pencil_points(&lines, &s, members, points_per_member)?;
    let fmt3 =
        |v: &[BigInt; 3]| -> [String; 3] { [v[0].to_string(), v[1].to_string(), v[2].to_string()] };
    let schema = PencilSchema {
        members: report
            .members
            .iter()
            .map(|m| PencilMemberSchema {
                parameter: m.parameter,
                conic: PolySchema::from_poly(&m.conic),
                marks: [fmt3(&m.marks.0), fmt3(&m.marks.1)],
                working_primes: m.working_primes.iter().map(|p| p.to_string()).collect(),
                seed: fmt3(&m.seed),
                points: m.points.iter().map(fmt3).collect(),
            })
            .collect(),
        skipped: report.skipped.clone(),
        config_primes: report.config_primes.iter().map(|p| p.to_string()).collect(),
        total_certified_points: report.total_points(),
    };
    println!("members: {}", report.members.len());
    println!("certified points: {}", report.total_points());
    for (t, reason) in &report.skipped {
        println!("  skipped t = {t}: {reason}");
    }
    if let Some(path) = out {
        io::write_json(path, &schema)?;
        println!("written: {}", path.display());
    }
    Ok(EXIT_OK)
}
