use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use prismatoid::delaunay::{
    delaunay_embedding, enumerate_lattice_in_ellipsoid, oracle, verify_certificate,
    DelaunayCertificate,
};
use prismatoid::generators::{
    hanner_polytope, kalai_check, make_crosspolytope, make_cube, make_simplex, HannerExpression,
};
use prismatoid::linalg::{QVector, Rational};
use prismatoid::normalize::normalizing_map;
use prismatoid::polytope::{central_symmetry_center, f_vector, v_to_h, VPolytope};
use prismatoid::two_level::{is_perfect_prismatoid, is_prismatoid};
use prismatoid::Error;

/// Perfect prismatoids, 0/1 normal forms and lattice Delaunay certificates.
#[derive(Parser)]
#[command(name = "prismatoid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated polytope as JSON.
    Gen {
        kind: Kind,
        /// Dimension, or a Hanner expression such as "(S I (P I I))".
        param: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Report symmetry, prismatoid and perfect-prismatoid status.
    Check {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Map a perfect prismatoid onto a 0/1-polytope.
    Normalize {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Where to write the affine map.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Build an empty-ellipsoid certificate.
    Embed {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Cross-check the enumeration with a box scan (dimension at most 4).
        #[arg(long)]
        oracle: bool,
    },
    /// Re-check a certificate.
    Verify {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the f-vector and face total.
    Fvector {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cube,
    Cross,
    Simplex,
    Hanner,
}

/// A message and the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotPerfectPrismatoid { .. } => 1,
            Error::NotFullDimensional { .. } => 3,
            Error::EmptinessViolation { .. }
            | Error::VerificationFailure(_)
            | Error::NotPositiveDefinite { .. }
            | Error::DegenerateNormals { .. } => 4,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Gen {
            kind,
            param,
            output,
        } => gen(kind, &param, output.as_deref()),
        Command::Check { input, output } => check(&input, output.as_deref()),
        Command::Normalize { input, output, map } => {
            normalize(&input, output.as_deref(), map.as_deref())
        }
        Command::Embed {
            input,
            output,
            oracle,
        } => embed(&input, output.as_deref(), oracle),
        Command::Verify { input, output } => verify(&input, output.as_deref()),
        Command::Fvector { input, output } => fvector(&input, output.as_deref()),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::new(2, format!("reading stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path)
            .map_err(|e| Failure::new(2, format!("reading {}: {e}", path.display())))?;
    }
    Ok(text)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::new(2, format!("writing {}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::new(2, format!("writing stdout: {e}"))),
    }
}

fn to_json(value: serde_json::Result<String>) -> String {
    let mut s = value.expect("in-memory serialization");
    s.push('\n');
    s
}

/// Status lines go to stdout unless stdout carries the JSON payload.
fn note(json_on_stdout: bool, line: &str) {
    if json_on_stdout {
        eprintln!("{line}");
    } else {
        println!("{line}");
    }
}

fn load_polytope(path: &Path) -> Result<VPolytope, Failure> {
    let text = read_input(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::new(2, format!("malformed polytope {}: {e}", path.display())))
}

fn load_full_dimensional(path: &Path) -> Result<VPolytope, Failure> {
    let p = load_polytope(path)?;
    p.require_full_dimensional()?;
    Ok(p)
}

fn show_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    parts.join(", ")
}

fn gen(kind: Kind, param: &str, output: Option<&Path>) -> Outcome {
    let polytope = match kind {
        Kind::Hanner => {
            let e: HannerExpression = param.parse().map_err(|e: Error| Failure::new(2, e.to_string()))?;
            hanner_polytope(&e)?
        }
        _ => {
            let d: usize = param
                .trim()
                .parse()
                .map_err(|_| Failure::new(2, format!("invalid dimension '{param}'")))?;
            match kind {
                Kind::Cube => make_cube(d)?,
                Kind::Cross => make_crosspolytope(d)?,
                _ => make_simplex(d)?,
            }
        }
    };
    write_output(output, &to_json(serde_json::to_string_pretty(&polytope)))?;
    Ok(0)
}

fn check(input: &Path, output: Option<&Path>) -> Outcome {
    let p = load_full_dimensional(input)?;
    let h = v_to_h(&p)?;
    let mut out = String::new();
    let _ = writeln!(out, "dimension: {}", p.dim());
    let _ = writeln!(out, "vertices: {}", p.num_vertices());
    let _ = writeln!(out, "facets: {}", h.num_facets());
    match central_symmetry_center(&p) {
        Some(c) => {
            let _ = writeln!(out, "centrally symmetric: yes (center {})", show_vec(&c));
        }
        None => {
            let _ = writeln!(out, "centrally symmetric: no");
        }
    }
    let split = is_prismatoid(&p)?;
    let _ = writeln!(out, "prismatoid: {}", if split.is_some() { "yes" } else { "no" });
    let report = is_perfect_prismatoid(&p)?;
    let _ = writeln!(out, "perfect prismatoid: {}", if report.perfect { "yes" } else { "no" });
    for (facet, values) in report.violations() {
        let f = &h.facets[facet];
        let normal: Vec<String> = f.normal.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(
            out,
            "violating facet {facet}: ({}) · x <= {} takes values {}",
            normal.join(", "),
            f.offset,
            show_vec(values)
        );
    }
    write_output(output, &out)?;
    Ok(if report.perfect { 0 } else { 1 })
}

fn normalize(input: &Path, output: Option<&Path>, map_path: Option<&Path>) -> Outcome {
    let p = load_full_dimensional(input)?;
    let n = normalizing_map(&p)?;
    if n.image.transform(&n.map.inverse()?)?.vertices() != p.vertices() {
        return Err(Failure::new(4, "inverse map does not reproduce the input"));
    }
    write_output(output, &to_json(serde_json::to_string_pretty(&n.image)))?;
    if let Some(path) = map_path {
        write_output(Some(path), &to_json(serde_json::to_string_pretty(&n.map)))?;
    }
    Ok(0)
}

fn embed(input: &Path, output: Option<&Path>, use_oracle: bool) -> Outcome {
    let p = load_full_dimensional(input)?;
    if use_oracle && p.dim() > oracle::MAX_ORACLE_DIM {
        return Err(Failure::new(
            2,
            format!("--oracle is limited to dimension {}", oracle::MAX_ORACLE_DIM),
        ));
    }
    let e = delaunay_embedding(&p)?;
    let json_on_stdout = output.is_none();
    if use_oracle {
        let fast = enumerate_lattice_in_ellipsoid(&e.lattice, &e.ellipsoid)?;
        let scan: Vec<QVector> = oracle::box_scan(&e.lattice, &e.ellipsoid, e.image.vertices())?;
        if fast != scan {
            return Err(Failure::new(
                4,
                format!(
                    "box scan found {} points, enumeration found {}",
                    scan.len(),
                    fast.len()
                ),
            ));
        }
        note(json_on_stdout, &format!("oracle: agrees ({} points)", scan.len()));
    }
    write_output(output, &to_json(serde_json::to_string_pretty(&e.certificate)))?;
    note(json_on_stdout, &format!("lattice index: {}", e.lattice.index()));
    note(
        json_on_stdout,
        &format!("sphere points: {}", e.certificate.vertices.len()),
    );
    Ok(0)
}

fn verify(input: &Path, output: Option<&Path>) -> Outcome {
    let text = read_input(input)?;
    let cert: DelaunayCertificate = serde_json::from_str(&text)
        .map_err(|e| Failure::new(2, format!("malformed certificate {}: {e}", input.display())))?;
    let report = verify_certificate(&cert)?;
    let mut out = String::new();
    if report.valid {
        let _ = writeln!(out, "valid: {} sphere points, no interior lattice point", cert.vertices.len());
    } else {
        let _ = writeln!(out, "invalid");
        for d in &report.discrepancies {
            let _ = writeln!(out, "  {d}");
        }
    }
    write_output(output, &out)?;
    Ok(if report.valid { 0 } else { 1 })
}

fn fvector(input: &Path, output: Option<&Path>) -> Outcome {
    let p = load_full_dimensional(input)?;
    let f = f_vector(&p)?;
    let counts: Vec<String> = f.counts.iter().map(|c| c.to_string()).collect();
    let mut line = format!("{} | total {}", counts.join(" "), f.total_with_self);
    match kalai_check(&p) {
        Ok(k) => {
            let verdict = if !k.satisfied {
                "violated"
            } else if k.bound == k.total.into() {
                "equality"
            } else {
                "satisfied"
            };
            let _ = write!(line, " | 3^{} = {} | {verdict}", p.dim(), k.bound);
        }
        Err(Error::NotCentrallySymmetric) => {}
        Err(e) => return Err(e.into()),
    }
    line.push('\n');
    write_output(output, &line)?;
    Ok(0)
}
