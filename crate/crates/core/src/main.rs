use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crossection::bounds::{self, BoundReport, Limits};
use crossection::groebner::buchberger;
use crossection::ideal::IdealFile;
use crossection::linalg::Matrix;
use crossection::membership::{
    bounded_membership, finite_slice_membership, finite_slice_radical_membership, ideal_membership,
    radical_membership, recover_generators_from_slices, BoundedVerdict, MembershipCertificate,
    MembershipVerdict, RadicalEngine, RadicalVerdict, SliceVerdict,
};
use crossection::random;
use crossection::reconstruct::{
    detect_drop_points, reconstruct_principal, recover_multidegree, verify_sharpness, SharpnessVariant,
    SectionalData,
};
use crossection::slicing::{build_dataset, slice_ideal, SliceDataset, SliceMode};
use crossection::{parse, Error, FieldElement, FieldSpec, Ideal};

const EXIT_IN: u8 = 0;
const EXIT_NOT_IN: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_MATH: u8 = 65;

/// Ideal membership through hyperplane cross sections.
#[derive(Parser)]
#[command(name = "crossection", version)]
struct Cli {
    /// Seed for randomly drawn sample points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for per-slice work.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print plain text instead of JSON where that makes sense.
    #[arg(long, global = true)]
    plain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Points {
    /// Comma-separated sample points.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    points: Vec<String>,
    /// Draw this many distinct random points instead (uses --seed).
    #[arg(long, conflicts_with = "points")]
    random_points: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Ideal membership by a degree-bounded linear system.
    Member {
        #[arg(long)]
        ideal: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Cofactor degree cap; default is the Hermann bound (a decision).
        #[arg(long)]
        degree: Option<u64>,
    },
    /// Radical membership (Rabinowitsch).
    RadicalMember {
        #[arg(long)]
        ideal: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, value_enum, default_value_t = Engine::Oracle)]
        engine: Engine,
    },
    /// Membership from slices at the given points.
    MemberSliced {
        #[arg(long)]
        ideal: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        points: Points,
    },
    /// Radical membership from slices; needs the degree of V(I).
    RadicalMemberSliced {
        #[arg(long)]
        ideal: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        deg_v: u64,
        #[command(flatten)]
        points: Points,
    },
    /// Generators of the slice at x1 = α (renumbered).
    Slice {
        #[arg(long)]
        ideal: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Slice dataset JSON.
    Dataset {
        #[arg(long)]
        ideal: String,
        #[arg(long, value_enum, default_value_t = Mode::Sectional)]
        mode: Mode,
        #[command(flatten)]
        points: Points,
    },
    /// Rebuild a principal ideal from a sectional dataset.
    Reconstruct {
        #[arg(long)]
        slices: String,
        #[arg(long)]
        degree: u32,
    },
    /// Basis of degree-capped polynomials consistent with all slices.
    RecoverGens {
        #[arg(long)]
        slices: String,
        #[arg(long)]
        degree: u32,
    },
    /// Evaluate a degree or sample-count bound.
    Bounds {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        delta: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        deg_v: Option<u64>,
        #[arg(long)]
        rows: Option<u64>,
        #[arg(long)]
        cols: Option<u64>,
    },
    /// Check the 2d-1 slice family.
    Sharpness {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        field: String,
        #[arg(long, value_enum, default_value_t = Variant::Corrected)]
        variant: Variant,
    },
    /// Reduced Gröbner basis (grlex).
    Groebner {
        #[arg(long)]
        ideal: String,
    },
    /// Apply an invertible linear change of variables x ↦ M x.
    Linchange {
        #[arg(long)]
        ideal: String,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Oracle,
    Bounded,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Full,
    Sectional,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Corrected,
    Printed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Hermann,
    Kollar,
    SliceGeometric,
    SliceAlgebraic,
    SimplifiedGenerator,
    AlgLinSamples,
}

enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

struct Output {
    json: String,
    plain: String,
    code: u8,
}

fn out(json: Value, plain: impl Into<String>, code: u8) -> Output {
    Output {
        json: json.to_string(),
        plain: plain.into(),
        code,
    }
}

/// Canonical file text, printed as is in both modes.
fn out_file(text: String) -> Output {
    Output {
        json: text.clone(),
        plain: text,
        code: EXIT_IN,
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
}

fn load_ideal(path: &str) -> Result<Ideal, Failure> {
    Ok(IdealFile::from_json(&read(path)?)?.to_ideal()?)
}

fn load_dataset(path: &str) -> Result<SliceDataset, Failure> {
    Ok(SliceDataset::from_json(&read(path)?)?)
}

fn points(field: FieldSpec, p: &Points, seed: u64) -> Result<Vec<FieldElement>, Failure> {
    match p.random_points {
        Some(k) => {
            if let FieldSpec::Prime(q) = field {
                if k as u128 > q as u128 {
                    return Err(Failure::Usage(format!("fp:{q} has fewer than {k} elements")));
                }
            }
            Ok(random::distinct_points(&mut random::rng(seed), field, k))
        }
        None if p.points.is_empty() => Err(Failure::Usage("give --points or --random-points".into())),
        None => Ok(p
            .points
            .iter()
            .map(|s| FieldElement::parse(field, s.trim()))
            .collect::<crossection::Result<Vec<_>>>()?),
    }
}

fn need(name: &str, v: Option<u64>) -> Result<u64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{name} is required for this bound")))
}

fn certificate_json(c: &MembershipCertificate) -> Value {
    json!({
        "cofactors": c.cofactors.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "degree_bound_used": c.degree_bound_used.to_string(),
    })
}

fn slice_verdict(v: SliceVerdict, yes: &str, no: &str) -> Output {
    match v {
        SliceVerdict::In => out(json!({ "verdict": yes }), yes, EXIT_IN),
        SliceVerdict::NotIn { alpha } => out(
            json!({ "verdict": no, "alpha": alpha.to_string() }),
            format!("{no} (fails at {alpha})"),
            EXIT_NOT_IN,
        ),
        SliceVerdict::SampleTooSmall { passes, required } => out(
            json!({
                "verdict": "sample-too-small",
                "passes": passes.to_string(),
                "required": required.to_string(),
            }),
            format!("sample-too-small ({passes} passes, {required} required)"),
            EXIT_INCONCLUSIVE,
        ),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let limits = Limits::default();
    Ok(match &cli.command {
        Command::Member { ideal, f, degree } => {
            let i = load_ideal(ideal)?;
            let f = parse(f, i.nvars(), i.field())?;
            match degree {
                Some(d) => match bounded_membership(&f, &i, *d, &limits)? {
                    BoundedVerdict::In(c) => out(
                        json!({ "verdict": "in", "certificate": certificate_json(&c) }),
                        "in",
                        EXIT_IN,
                    ),
                    BoundedVerdict::NotFoundWithinBound => out(
                        json!({ "verdict": "not-found-within-bound", "degree": d.to_string() }),
                        "not-found-within-bound",
                        EXIT_INCONCLUSIVE,
                    ),
                },
                None => match ideal_membership(&f, &i, &limits)? {
                    MembershipVerdict::In(c) => out(
                        json!({ "verdict": "in", "certificate": certificate_json(&c) }),
                        "in",
                        EXIT_IN,
                    ),
                    MembershipVerdict::NotIn => out(json!({ "verdict": "not-in" }), "not-in", EXIT_NOT_IN),
                },
            }
        }
        Command::RadicalMember { ideal, f, engine } => {
            let i = load_ideal(ideal)?;
            let f = parse(f, i.nvars(), i.field())?;
            let engine = match engine {
                Engine::Oracle => RadicalEngine::Oracle,
                Engine::Bounded => RadicalEngine::Bounded,
            };
            match radical_membership(&f, &i, engine, &limits)? {
                RadicalVerdict::InRadical => out(json!({ "verdict": "in-radical" }), "in-radical", EXIT_IN),
                RadicalVerdict::NotInRadical => {
                    out(json!({ "verdict": "not-in-radical" }), "not-in-radical", EXIT_NOT_IN)
                }
            }
        }
        Command::MemberSliced { ideal, f, points: p } => {
            let i = load_ideal(ideal)?;
            let f = parse(f, i.nvars(), i.field())?;
            let pts = points(i.field(), p, cli.seed)?;
            slice_verdict(finite_slice_membership(&f, &i, &pts, &limits)?, "in", "not-in")
        }
        Command::RadicalMemberSliced { ideal, f, deg_v, points: p } => {
            let i = load_ideal(ideal)?;
            let f = parse(f, i.nvars(), i.field())?;
            let pts = points(i.field(), p, cli.seed)?;
            slice_verdict(
                finite_slice_radical_membership(&f, &i, &pts, *deg_v, &limits)?,
                "in-radical",
                "not-in-radical",
            )
        }
        Command::Slice { ideal, at } => {
            let i = load_ideal(ideal)?;
            let alpha = FieldElement::parse(i.field(), at)?;
            let gens: Vec<String> = slice_ideal(&i, &alpha)?.gens.iter().map(ToString::to_string).collect();
            out(json!(gens), gens.join("\n"), EXIT_IN)
        }
        Command::Dataset { ideal, mode, points: p } => {
            let i = load_ideal(ideal)?;
            let pts = points(i.field(), p, cli.seed)?;
            let mode = match mode {
                Mode::Full => SliceMode::FullSlices,
                Mode::Sectional => SliceMode::SectionalGenerators,
            };
            out_file(build_dataset(&i, &pts, mode)?.to_json())
        }
        Command::Reconstruct { slices, degree } => {
            let data = SectionalData::from_dataset(&load_dataset(slices)?, *degree)?;
            let f = reconstruct_principal(&data)?;
            let e = recover_multidegree(&data)?;
            let (_, drop) = detect_drop_points(&data, &e)?;
            let drops: Vec<String> = drop.iter().map(|&k| data.points[k].0.to_string()).collect();
            out(
                json!({
                    "f": f.to_string(),
                    "multideg_y": e.exponents()[1..].iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "drop_points": drops,
                }),
                f.to_string(),
                EXIT_IN,
            )
        }
        Command::RecoverGens { slices, degree } => {
            let basis = recover_generators_from_slices(&load_dataset(slices)?, *degree, &limits)?;
            let basis: Vec<String> = basis.iter().map(ToString::to_string).collect();
            out(
                json!({ "dimension": basis.len().to_string(), "basis": basis }),
                basis.join("\n"),
                EXIT_IN,
            )
        }
        Command::Bounds {
            which,
            d,
            delta,
            r,
            n,
            deg_v,
            rows,
            cols,
        } => {
            let report: BoundReport = match which {
                Which::Hermann => bounds::hermann_bound(need("d", *d)?, need("delta", *delta)?, need("r", *r)?, need("n", *n)?)?,
                Which::Kollar => bounds::kollar_bound(need("delta", *delta)?, need("n", *n)?)?,
                Which::SliceGeometric => bounds::slice_count_geometric(need("d", *d)?, need("deg-v", *deg_v)?)?,
                Which::SliceAlgebraic => {
                    bounds::slice_count_algebraic(need("d", *d)?, need("delta", *delta)?, need("r", *r)?, need("n", *n)?)?
                }
                Which::SimplifiedGenerator => bounds::simplified_generator_bound(need("delta", *delta)?, need("n", *n)?)?,
                Which::AlgLinSamples => bounds::alg_lin_samples(need("d", *d)?, need("rows", *rows)?, need("cols", *cols)?)?,
            };
            out(report.to_json(), report.value.to_string(), EXIT_IN)
        }
        Command::Sharpness { degree, field, variant } => {
            let field: FieldSpec = field.parse()?;
            let variant = match variant {
                Variant::Corrected => SharpnessVariant::Corrected,
                Variant::Printed => SharpnessVariant::AsPrinted,
            };
            let report = verify_sharpness(*degree, field, variant)?;
            let plain = format!(
                "slices_equal_at_all_points={} ideals_distinct={}",
                report.slices_equal_at_all_points, report.ideals_distinct
            );
            out(report.to_json(), plain, EXIT_IN)
        }
        Command::Groebner { ideal } => {
            let gb = buchberger(&load_ideal(ideal)?)?;
            let basis: Vec<String> = gb.basis().iter().map(ToString::to_string).collect();
            out(json!({ "basis": basis }), basis.join("\n"), EXIT_IN)
        }
        Command::Linchange { ideal, matrix } => {
            let i = load_ideal(ideal)?;
            let rows = matrix
                .split(';')
                .map(|row| {
                    row.split(',')
                        .map(|s| FieldElement::parse(i.field(), s.trim()))
                        .collect::<crossection::Result<Vec<_>>>()
                })
                .collect::<crossection::Result<Vec<_>>>()?;
            let m = Matrix::from_rows(i.field(), &rows)?;
            let gens = i
                .gens()
                .iter()
                .map(|g| g.apply_linear_change(&m))
                .collect::<crossection::Result<Vec<_>>>()?;
            out_file(Ideal::new(gens)?.to_file().to_json())
        }
    })
}

fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("Error")
        .to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("--jobs must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(&cli) {
        Ok(o) => {
            if cli.plain {
                println!("{}", o.plain);
            } else {
                println!("{}", o.json);
            }
            ExitCode::from(o.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Math(e)) => {
            println!("{}", json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } }));
            ExitCode::from(EXIT_MATH)
        }
    }
}
