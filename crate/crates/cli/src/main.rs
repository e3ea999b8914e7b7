use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fibered_links::bounds::{bounds_report, parse_pants_arcs, write_pants_arcs, PantsArcs};
use fibered_links::geometry::SolverOptions;
use fibered_links::lift::with_extra_punctures;
use fibered_links::pipeline::{solve_triangulation, PipelineOptions};
use fibered_links::{
    build_drilled_complement, export_pants_arcs, filling_check, gen_twist_family,
    parse_base_diagram, parse_lift, parse_tri, run_pipeline, self_intersection, star_sum, validate,
    write_lift, write_tri, Error, FillingReport, RunReport,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "fibered-links",
    version,
    about = "Triangulate, solve and bound link complements in unit tangent bundles"
)]
struct Cli {
    /// Print JSON instead of a human summary.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Filling and tautness report for a curve or lift file.
    Check { file: PathBuf },
    /// Self-intersection number of a taut diagram.
    Intersect { file: PathBuf },
    /// Build the drilled-complement triangulation of a lift.
    Triangulate {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Solve the gluing equations of a triangulation file.
    Solve { file: PathBuf },
    /// Volume bounds for a lift.
    Bounds {
        file: PathBuf,
        /// Pants-decomposition arcs file.
        #[arg(long)]
        arcs: Option<PathBuf>,
        /// Genus of the surface, when the lift is a twist-family member or a
        /// star sum of members.
        #[arg(long)]
        family: Option<u32>,
    },
    /// Full run: checks, triangulation, shapes, volume and bounds.
    Pipeline {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        arcs: Option<PathBuf>,
        #[arg(long)]
        family: Option<u32>,
        /// Worker threads when several files are given.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Generators.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Subcommand)]
enum Gen {
    /// Member n of the Dehn-twist family on the once-punctured torus.
    Twist {
        n: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Star sum of two alternating lifts. The second gets an extra puncture
    /// when it has only one.
    Star {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Pants arcs of a twist-family member, for `bounds --arcs`.
    Arcs {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Validation(String),
    NotConverged(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) => e.exit_code() as u8,
            Failure::Io(..) => 3,
            Failure::Validation(_) => 1,
            Failure::NotConverged(_) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            1 => "validation",
            2 => "not-converged",
            _ => "format",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
            Failure::Validation(m) | Failure::NotConverged(m) => m.clone(),
        }
    }

    fn report(&self, file: Option<&Path>) {
        let mut v = json!({
            "error": if matches!(self, Failure::Io(..)) { "io" } else { self.kind() },
            "message": self.message(),
            "exit_code": self.exit_code(),
        });
        if let Some(f) = file {
            v["file"] = json!(f.display().to_string());
        }
        eprintln!("{v}");
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome<T = ()> = Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

/// Rounds every float to 15 significant digits.
fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap();
            let r: f64 = format!("{x:.14e}").parse().unwrap();
            *v = json!(r);
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn to_json<T: Serialize>(value: &T) -> Value {
    let mut v = serde_json::to_value(value).expect("serializable");
    round_floats(&mut v);
    v
}

fn num(x: f64) -> String {
    format!("{}", to_json(&x))
}

fn emit(json: bool, value: Value, human: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        print!("{human}");
    }
}

fn filling_summary(r: &FillingReport) -> String {
    let mut s = String::new();
    let yes = |b: bool| if b { "yes" } else { "no" };
    writeln!(s, "genus:          {}", r.genus).unwrap();
    writeln!(s, "faces:          {}", r.num_faces).unwrap();
    writeln!(s, "orbifold euler: {}", r.orbifold_euler).unwrap();
    writeln!(s, "filling:        {}", yes(r.is_filling)).unwrap();
    writeln!(s, "taut:           {}", yes(r.is_taut)).unwrap();
    for f in &r.offending_faces {
        writeln!(s, "  {} at face {}", f.reason, f.key).unwrap();
    }
    s
}

fn check_failure(r: &FillingReport) -> Option<Failure> {
    if let Some(f) = r.offending_faces.first() {
        return Some(Failure::Validation(format!("not taut: {} at face {}", f.reason, f.key)));
    }
    (!r.is_filling).then(|| {
        Failure::Validation(format!("not filling: orbifold Euler characteristic {}", r.orbifold_euler))
    })
}

fn check(json: bool, file: &Path) -> Outcome {
    let d = parse_base_diagram(&read(file)?)?;
    let r = filling_check(&d);
    emit(json, to_json(&r), filling_summary(&r));
    check_failure(&r).map_or(Ok(()), Err)
}

fn intersect(json: bool, file: &Path) -> Outcome {
    let d = parse_base_diagram(&read(file)?)?;
    let r = filling_check(&d);
    if let Some(f) = r.offending_faces.first() {
        return Err(Failure::Validation(format!("not taut: {} at face {}", f.reason, f.key)));
    }
    let i = self_intersection(&d)?;
    emit(json, json!({ "self_intersection": i }), format!("{i}\n"));
    Ok(())
}

fn triangulate(json: bool, file: &Path, output: &Path) -> Outcome {
    let l = parse_lift(&read(file)?)?;
    let t = build_drilled_complement(&l)?;
    write(output, &write_tri(&t))?;
    let cusps: Vec<String> = t.cusps.iter().map(|c| c.to_string()).collect();
    let mut human = format!("tetrahedra: {}\ncusps:      {}\n", t.num_tetrahedra(), cusps.len());
    for c in &cusps {
        writeln!(human, "  {c}").unwrap();
    }
    emit(
        json,
        json!({ "output": output.display().to_string(), "tetrahedra": t.num_tetrahedra(), "cusps": cusps }),
        human,
    );
    Ok(())
}

fn solve(json: bool, file: &Path) -> Outcome {
    let t = parse_tri(&read(file)?)?;
    let v = validate(&t);
    if !v.valid {
        return Err(Failure::Validation(format!("invalid triangulation: {}", v.failures.join("; "))));
    }
    let out = solve_triangulation(&t, &SolverOptions::from_env())?;
    let mut human = format!(
        "status:     {}\niterations: {}\nresidual:   {:.3e}\n",
        to_json(&out.status).as_str().unwrap_or("?"),
        out.iterations,
        out.residual
    );
    if let Some(v) = out.volume {
        writeln!(human, "volume:     {}", num(v)).unwrap();
    }
    emit(json, to_json(&out), human);
    if !out.converged {
        return Err(Failure::NotConverged(format!(
            "residual {:.3e} after {} iterations",
            out.residual, out.iterations
        )));
    }
    Ok(())
}

fn read_arcs(path: Option<&Path>) -> Outcome<Option<PantsArcs>> {
    path.map(|p| Ok(parse_pants_arcs(&read(p)?)?)).transpose()
}

fn bounds(json: bool, file: &Path, arcs: Option<&Path>, family: Option<u32>) -> Outcome {
    let l = parse_lift(&read(file)?)?;
    let c = self_intersection(l.base())?;
    let arcs = read_arcs(arcs)?;
    let r = bounds_report(c, family, arcs.as_ref())?;
    let mut human = format!("crossings:   {c}\nupper:       {}\n", num(r.upper));
    if let Some(f) = r.family_lower {
        writeln!(human, "family lower: {}", num(f)).unwrap();
    }
    if arcs.is_some() {
        writeln!(
            human,
            "pants lower: {} (clamped {}), counts {:?}",
            num(r.pants_lower),
            num(r.pants_lower_clamped),
            r.per_pants_counts
        )
        .unwrap();
    }
    emit(json, to_json(&r), human);
    Ok(())
}

fn report_summary(file: &Path, r: &RunReport) -> String {
    let mut s = format!("== {}\n", file.display());
    writeln!(s, "genus {}, i = {}, filling {}, taut {}", r.filling.genus, r.self_intersection, r.filling.is_filling, r.filling.is_taut).unwrap();
    writeln!(
        s,
        "tetrahedra {}, edges {}, cusps {}, valid {}",
        r.triangulation.tetrahedra,
        r.triangulation.edges,
        r.triangulation.cusps.len(),
        r.triangulation.valid
    )
    .unwrap();
    let status = to_json(&r.solver.status);
    match r.solver.volume {
        Some(v) => writeln!(s, "solver {}, volume {}", status.as_str().unwrap_or("?"), num(v)).unwrap(),
        None => writeln!(s, "solver {}", status.as_str().unwrap_or("?")).unwrap(),
    }
    let mut lower = format!("pants {}", num(r.bounds.pants_lower));
    if let Some(f) = r.bounds.family_lower {
        lower = format!("family {}, {lower}", num(f));
    }
    writeln!(s, "bounds: upper {}, lower {lower}", num(r.bounds.upper)).unwrap();
    writeln!(s, "sandwich {}", to_json(&r.sandwich).as_str().unwrap_or("?")).unwrap();
    s
}

fn run_one(file: &Path, opts: &PipelineOptions) -> Outcome<RunReport> {
    let r = run_pipeline(&read(file)?, opts)?;
    Ok(r)
}

fn pipeline(json: bool, files: &[PathBuf], arcs: Option<&Path>, family: Option<u32>, jobs: usize) -> Outcome {
    let opts = PipelineOptions {
        family_genus: family,
        arcs: read_arcs(arcs)?,
        solver: Some(SolverOptions::from_env()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<Outcome<RunReport>> = pool.install(|| files.par_iter().map(|f| run_one(f, &opts)).collect());

    let mut worst: Option<Failure> = None;
    let mut values = Vec::new();
    let mut human = String::new();
    for (file, res) in files.iter().zip(results) {
        match res {
            Ok(r) => {
                human.push_str(&report_summary(file, &r));
                values.push(to_json(&r));
                if !r.solver.converged {
                    let f = Failure::NotConverged(format!(
                        "residual {:.3e} after {} iterations",
                        r.solver.residual, r.solver.iterations
                    ));
                    f.report(Some(file));
                    worst = pick(worst, f);
                }
            }
            Err(f) => {
                f.report(Some(file));
                worst = pick(worst, f);
            }
        }
    }
    let value = if files.len() == 1 && values.len() == 1 {
        values.pop().unwrap()
    } else {
        Value::Array(values)
    };
    emit(json, value, human);
    match worst {
        None => Ok(()),
        // already reported per file
        Some(f) => Err(f),
    }
}

fn pick(a: Option<Failure>, b: Failure) -> Option<Failure> {
    match a {
        Some(a) if a.exit_code() >= b.exit_code() => Some(a),
        _ => Some(b),
    }
}

fn gen(json: bool, g: &Gen) -> Outcome {
    let (text, output, what) = match g {
        Gen::Twist { n, output } => (write_lift(&gen_twist_family(*n)?), output, format!("twist {n}")),
        Gen::Star { first, second, output } => {
            let l1 = parse_lift(&read(first)?)?;
            let mut l2 = parse_lift(&read(second)?)?;
            let punctures = l2.base().faces().iter().filter(|f| f.decoration == fibered_links::Decoration::Puncture).count();
            if punctures < 2 {
                l2 = with_extra_punctures(&l2, 2 - punctures)?;
            }
            (write_lift(&star_sum(&l1, &l2)?), output, "star sum".to_string())
        }
        Gen::Arcs { file, output } => {
            let l = parse_lift(&read(file)?)?;
            (write_pants_arcs(&export_pants_arcs(&l)?), output, "pants arcs".to_string())
        }
    };
    write(output, &text)?;
    emit(
        json,
        json!({ "output": output.display().to_string(), "generated": what }),
        format!("wrote {what} to {}\n", output.display()),
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let (res, reported) = match &cli.command {
        Command::Check { file } => (check(json, file), false),
        Command::Intersect { file } => (intersect(json, file), false),
        Command::Triangulate { file, output } => (triangulate(json, file, output), false),
        Command::Solve { file } => (solve(json, file), false),
        Command::Bounds { file, arcs, family } => (bounds(json, file, arcs.as_deref(), *family), false),
        Command::Pipeline { files, arcs, family, jobs } => {
            (pipeline(json, files, arcs.as_deref(), *family, *jobs), true)
        }
        Command::Gen(g) => (gen(json, g), false),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !reported {
                f.report(None);
            }
            ExitCode::from(f.exit_code())
        }
    }
}
