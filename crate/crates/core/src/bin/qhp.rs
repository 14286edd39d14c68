use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qhp::catalog::{render_text, run_table, TableReport};
use qhp::family::Family;
use qhp::io::{
    read_bundle, read_matrix, write_bundle, Bundle, Construction, MatrixFormat, Metadata,
};
use qhp::report::{compare, MeasuredParams, Prediction};
use qhp::{BitMatrix, Error, Gf2Poly, PeriodicityVectors, SearchConfig};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qhp",
    version,
    about = "Build and verify toric, checkerboard and hypergraph-product quantum codes"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Seed for the randomized distance search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for the distance search.
    #[arg(long, global = true, env = "QHP_WORKERS")]
    workers: Option<usize>,
    /// Exhaust every logical operator up to this weight.
    #[arg(long, global = true)]
    exact_max_weight: Option<usize>,
    /// Randomized information-set iterations per search.
    #[arg(long, global = true)]
    iterations: Option<usize>,
    /// Matrix file format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Alist)]
    format: FormatArg,
    /// Output location: bundle directory for `construct`, report file otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Alist,
    Txt01,
}

impl From<FormatArg> for MatrixFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Alist => MatrixFormat::Alist,
            FormatArg::Txt01 => MatrixFormat::Txt01,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Construct a code and write it as a bundle.
    Construct {
        #[command(subcommand)]
        family: FamilyArg,
        /// Also measure the distance and store it in the manifest.
        #[arg(long, global = true)]
        distance: bool,
    },
    /// Measure the parameters of a bundle and compare with its prediction.
    Params {
        /// Bundle directory or manifest file.
        bundle: PathBuf,
    },
    /// Reproduce a reference table.
    Table {
        #[arg(value_enum)]
        which: TableName,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Skip rows with more qubits than this.
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableName {
    PaperExamples,
}

fn parse_vector(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `a,b`, got {s:?}"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("bad integer {t:?}"))
    };
    Ok((num(a)?, num(b)?))
}

fn parse_poly(s: &str) -> Result<Gf2Poly, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args)]
struct Vectors {
    /// First periodicity vector `a,b`.
    #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
    l1: (i64, i64),
    /// Second periodicity vector `a,b`.
    #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
    l2: (i64, i64),
}

#[derive(Args)]
struct CyclicArgs {
    /// Block length.
    #[arg(long)]
    n: usize,
    /// Check polynomial as exponents, e.g. `0,1,3,5`.
    #[arg(long, value_parser = parse_poly)]
    h: Gf2Poly,
}

#[derive(Args)]
struct PairFiles {
    #[arg(long)]
    h1: PathBuf,
    #[arg(long)]
    h2: PathBuf,
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct PairOrCyclic {
    #[arg(long, requires = "h2", conflicts_with_all = ["n", "h"])]
    h1: Option<PathBuf>,
    #[arg(long, requires = "h1")]
    h2: Option<PathBuf>,
    /// Block length of a circulant used for both factors.
    #[arg(long, requires = "h")]
    n: Option<usize>,
    /// Check polynomial of that circulant.
    #[arg(long, requires = "n", value_parser = parse_poly)]
    h: Option<Gf2Poly>,
}

#[derive(Subcommand)]
enum FamilyArg {
    /// Canonical toric code on an lx × leta lattice.
    Toric {
        #[arg(long)]
        lx: usize,
        #[arg(long)]
        leta: usize,
    },
    /// Rotated checkerboard code; both vectors need even 1-norm.
    Rotated(Vectors),
    /// Non-bipartite ZXXZ code; some vector has odd 1-norm.
    Zxxz(Vectors),
    /// Hypergraph product of two check matrices.
    Hypergraph(PairFiles),
    /// Product of a full-rank check with its transpose.
    Original {
        #[arg(
            long,
            conflicts_with = "repetition",
            required_unless_present = "repetition"
        )]
        h1: Option<PathBuf>,
        /// Use the (d − 1) × d repetition check.
        #[arg(long)]
        repetition: Option<usize>,
    },
    /// Product of two square checks.
    Square(PairOrCyclic),
    /// Non-CSS product of two symmetric checks; `--h` must be palindromic.
    Symmetric(PairOrCyclic),
    /// Two-tile code from tiles a1, b1, a2, b2.
    TwoTile {
        #[arg(long)]
        a1: PathBuf,
        #[arg(long)]
        b1: PathBuf,
        #[arg(long)]
        a2: PathBuf,
        #[arg(long)]
        b2: PathBuf,
    },
    /// Two-tile code with both factors from an even-length circulant.
    TwoTileCyclic(CyclicArgs),
    /// Two-tile code with tiles `H + E`, `E` from square half-size checks.
    TwoTileSquare(PairFiles),
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::Json(_) | Error::Parse(_) => EXIT_IO,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_IO,
        message: e.to_string(),
    }
}

fn load(path: &Path, fallback: MatrixFormat) -> Result<BitMatrix, Failure> {
    let format = match path.extension().and_then(|e| e.to_str()) {
        Some("alist") => MatrixFormat::Alist,
        Some("txt") | Some("txt01") => MatrixFormat::Txt01,
        _ => fallback,
    };
    read_matrix(path, format).map_err(|e| io_failure(format!("{}: {e}", path.display())))
}

fn search_config(g: &GlobalArgs) -> SearchConfig {
    let mut cfg = SearchConfig {
        rng_seed: g.seed,
        exact_max_weight: g.exact_max_weight,
        ..SearchConfig::default()
    };
    if let Some(w) = g.workers.filter(|&w| w > 0) {
        cfg.worker_count = w;
    }
    if let Some(i) = g.iterations {
        cfg.random_iterations = i;
    }
    cfg
}

/// Input files by argument name, recorded in the manifest.
type InputFiles = Vec<(&'static str, PathBuf)>;

fn family_from_args(
    arg: &FamilyArg,
    format: MatrixFormat,
) -> Result<(Family, InputFiles), Failure> {
    let vectors = |v: &Vectors| PeriodicityVectors::new(v.l1, v.l2).map_err(Failure::from);
    let pair = |p: &PairOrCyclic,
                cyclic: fn(Gf2Poly, usize) -> Family,
                files: fn(BitMatrix, BitMatrix) -> Family| {
        match (&p.h1, &p.h2, &p.n, &p.h) {
            (Some(f1), Some(f2), None, None) => Ok((
                files(load(f1, format)?, load(f2, format)?),
                vec![("h1", f1.clone()), ("h2", f2.clone())],
            )),
            (None, None, Some(n), Some(h)) => Ok((cyclic(h.clone(), *n), vec![])),
            _ => Err(Failure {
                code: EXIT_USAGE,
                message: "give either --h1 and --h2, or --n and --h".into(),
            }),
        }
    };
    Ok(match arg {
        FamilyArg::Toric { lx, leta } => (
            Family::Toric {
                l_xi: *lx,
                l_eta: *leta,
            },
            vec![],
        ),
        FamilyArg::Rotated(v) => (Family::Checkerboard(vectors(v)?), vec![]),
        FamilyArg::Zxxz(v) => (Family::Zxxz(vectors(v)?), vec![]),
        FamilyArg::Hypergraph(p) => (
            Family::Hypergraph {
                h1: load(&p.h1, format)?,
                h2: load(&p.h2, format)?,
            },
            vec![("h1", p.h1.clone()), ("h2", p.h2.clone())],
        ),
        FamilyArg::Original { h1: Some(f), .. } => (
            Family::Original {
                h1: load(f, format)?,
            },
            vec![("h1", f.clone())],
        ),
        FamilyArg::Original { repetition, .. } => (
            Family::Repetition {
                d: repetition.expect("clap requires one of --h1, --repetition"),
            },
            vec![],
        ),
        FamilyArg::Square(p) => pair(
            p,
            |h, n| Family::CyclicSquare { h, n },
            |h1, h2| Family::Square { h1, h2 },
        )?,
        FamilyArg::Symmetric(p) => pair(
            p,
            |h, n| Family::PalindromicSymmetric { h, n },
            |h1, h2| Family::Symmetric { h1, h2 },
        )?,
        FamilyArg::TwoTile { a1, b1, a2, b2 } => (
            Family::TwoTile {
                a1: load(a1, format)?,
                b1: load(b1, format)?,
                a2: load(a2, format)?,
                b2: load(b2, format)?,
            },
            vec![
                ("a1", a1.clone()),
                ("b1", b1.clone()),
                ("a2", a2.clone()),
                ("b2", b2.clone()),
            ],
        ),
        FamilyArg::TwoTileCyclic(c) => (
            Family::TwoTileCyclic {
                h: c.h.clone(),
                n: c.n,
            },
            vec![],
        ),
        FamilyArg::TwoTileSquare(p) => (
            Family::TwoTileSquare {
                h1: load(&p.h1, format)?,
                h2: load(&p.h2, format)?,
            },
            vec![("h1", p.h1.clone()), ("h2", p.h2.clone())],
        ),
    })
}

#[derive(Serialize)]
struct ConstructSummary<'a> {
    bundle: String,
    family: &'a str,
    n: usize,
    k: usize,
    w: usize,
    predicted: &'a Prediction,
    #[serde(skip_serializing_if = "Option::is_none")]
    measured: Option<&'a MeasuredParams>,
    mismatches: Vec<String>,
}

fn print_json(value: &impl Serialize) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(io_failure)
}

fn construct(g: &GlobalArgs, family: &FamilyArg, distance: bool) -> Result<u8, Failure> {
    let format = MatrixFormat::from(g.format);
    let (family, inputs) = family_from_args(family, format)?;
    let built = family.build()?;
    let cfg = search_config(g);
    let measured = MeasuredParams::measure(&built.code, distance.then_some(&cfg));
    let mismatches = compare(&built.prediction, &measured);
    let mut args = built.construction.args.clone();
    if let Some(obj) = args.as_object_mut() {
        for (name, path) in &inputs {
            obj.insert(format!("{name}_file"), path.display().to_string().into());
        }
    }
    let out = g.out.clone().unwrap_or_else(|| PathBuf::from("bundle"));
    let bundle = Bundle::new(
        built.code.clone(),
        Construction {
            family: built.construction.family.clone(),
            args,
        },
        Some(built.prediction.clone()),
        Some(measured.clone()),
        format,
        Metadata::now(distance.then_some(g.seed)),
    );
    write_bundle(&out, &bundle)?;
    let summary = ConstructSummary {
        bundle: out.display().to_string(),
        family: &built.construction.family,
        n: measured.n,
        k: measured.k,
        w: measured.w,
        predicted: &built.prediction,
        measured: distance.then_some(&measured),
        mismatches,
    };
    print!("{}", print_json(&summary)?);
    Ok(if summary.mismatches.is_empty() {
        0
    } else {
        EXIT_FAIL
    })
}

#[derive(Serialize)]
struct ParamsReport<'a> {
    schema: &'static str,
    construction: &'a Construction,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted: Option<&'a Prediction>,
    measured: MeasuredParams,
    mismatches: Vec<String>,
    status: &'static str,
}

fn params(g: &GlobalArgs, path: &Path) -> Result<u8, Failure> {
    let bundle = read_bundle(path).map_err(|e| {
        let code = Failure::from(e);
        Failure {
            message: format!("{}: {}", path.display(), code.message),
            ..code
        }
    })?;
    let cfg = search_config(g);
    let measured = MeasuredParams::measure(&bundle.code, Some(&cfg));
    let predicted = bundle.manifest.predicted.as_ref();
    let mismatches = predicted.map(|p| compare(p, &measured)).unwrap_or_default();
    let report = ParamsReport {
        schema: "qhp-report/1",
        construction: &bundle.manifest.construction,
        predicted,
        status: if mismatches.is_empty() {
            "PASS"
        } else {
            "FAIL"
        },
        measured,
        mismatches,
    };
    let json = print_json(&report)?;
    if let Some(out) = &g.out {
        std::fs::write(out, &json).map_err(io_failure)?;
    }
    print!("{json}");
    Ok(if report.mismatches.is_empty() {
        0
    } else {
        EXIT_FAIL
    })
}

fn table(g: &GlobalArgs, json: bool, max_n: Option<usize>) -> Result<u8, Failure> {
    let cfg = search_config(g);
    let report: TableReport = run_table(&cfg, max_n)?;
    let as_json = print_json(&report)?;
    if let Some(out) = &g.out {
        std::fs::write(out, &as_json).map_err(io_failure)?;
    }
    if json {
        print!("{as_json}");
    } else {
        print!("{}", render_text(&report));
    }
    Ok(if report.all_passed() { 0 } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct { family, distance } => construct(&cli.global, family, *distance),
        Command::Params { bundle } => params(&cli.global, bundle),
        Command::Table { json, max_n, .. } => table(&cli.global, *json, *max_n),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("qhp: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
