use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use quandlekit::classify::{
    classify_4p, classify_extraspecial2_principal, classify_pq, classify_special_p, pairwise_non_isomorphic, search_8p,
    ClassificationResult, ClassifyError, MAX_8P_PRIME,
};
use quandlekit::io::{format_quandle, parse_quandle, ParseError};
use quandlekit::quandle::{find_isomorphism, separating_invariants, FiniteQuandle, QuandleReport};
use quandlekit::recipe::{build_recipe, RECIPE_VERSION};
use quandlekit::verify::{run_suite, Suite, VerifyOptions};

const SCHEMA_VERSION: u32 = 1;
const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Largest 8p prime run without `--slow`.
const FAST_8P_PRIME: u64 = 7;

mod exit {
    pub const VERIFY: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const AXIOM: u8 = 3;
    pub const THEOREM: u8 = 4;
    pub const USAGE: u8 = 5;
}

#[derive(Parser)]
#[command(name = "quandlekit", version, about = "Finite quandle analysis, construction and classification")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report for a quandle file.
    Analyze { path: PathBuf },
    /// Print the table of a recipe in quandle-file format.
    Construct {
        recipe: String,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a classification driver.
    Classify {
        #[arg(value_enum)]
        kind: Kind,
        params: Vec<u64>,
        /// Write catalog entries under this directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Extra brute-force isomorphism and reproducibility checks.
        #[arg(long)]
        verify: bool,
        /// Allow the long 8p searches.
        #[arg(long)]
        slow: bool,
    },
    /// Decide isomorphism of two quandle files.
    Iso { first: PathBuf, second: PathBuf },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        slow: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Pq,
    #[value(name = "4p")]
    FourP,
    #[value(name = "8p")]
    EightP,
    Extraspecial2,
    Specialp,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_workers() {
        eprintln!("error: {e}");
        return ExitCode::from(exit::USAGE);
    }
    let result = match cli.command {
        Command::Analyze { path } => analyze(&path, cli.format),
        Command::Construct { recipe, out } => construct(&recipe, out.as_deref()),
        Command::Classify { kind, params, out, verify, slow } => {
            classify(kind, &params, out.as_deref(), verify, slow, cli.format)
        }
        Command::Iso { first, second } => iso(&first, &second, cli.format),
        Command::Verify { suite, slow } => verify(&suite, slow, cli.format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn configure_workers() -> Result<(), String> {
    let Ok(v) = std::env::var("QUANDLEKIT_WORKERS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("QUANDLEKIT_WORKERS must be a positive integer, got '{v}'"))?;
    if n == 0 {
        return Err("QUANDLEKIT_WORKERS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn emit<T: Serialize>(value: &T, format: Format, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Text => print!("{}", text()),
    }
}

fn load(path: &Path) -> Result<FiniteQuandle, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(exit::USAGE, format!("{}: {e}", path.display())))?;
    parse_quandle(&text).map_err(|e| match e {
        ParseError::Syntax { .. } => Failure::new(exit::PARSE, format!("{}: {e}", path.display())),
        ParseError::Axiom(_) => Failure::new(exit::AXIOM, format!("{}: {e}", path.display())),
    })
}

fn analyze(path: &Path, format: Format) -> CmdResult {
    let q = load(path)?;
    let r = QuandleReport::new(&q);
    emit(&r, format, || {
        let mut s =
            format!("size: {}\nconnected: {}\nlatin: {}\nfaithful: {}\n", r.size, r.connected, r.latin, r.faithful);
        s += &format!("|LMlt|: {}\n|Dis|: {}\n", r.lmlt_order, r.dis_order);
        if let Some(shape) = &r.lattice_shape {
            s += &format!("lattice: {shape} ({} congruences)\n", r.congruence_count.unwrap_or(0));
        }
        if let Some(simple) = r.simple {
            s += &format!("simple: {simple}\n");
        }
        if let Some(l) = &r.lss_label {
            s += &format!("label: {l}\n");
        }
        s
    });
    Ok(0)
}

fn construct(recipe: &str, out: Option<&Path>) -> CmdResult {
    let q = build_recipe(recipe).map_err(|e| Failure::new(exit::PARSE, e.to_string()))?;
    let text = format_quandle(&q);
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::new(exit::USAGE, format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn classify_error(e: ClassifyError) -> Failure {
    match e {
        ClassifyError::Assertion(_) | ClassifyError::NotClosed => Failure::new(exit::THEOREM, e.to_string()),
        _ => Failure::new(exit::USAGE, e.to_string()),
    }
}

fn params<const N: usize>(kind: &str, ps: &[u64]) -> Result<[u64; N], Failure> {
    ps.try_into().map_err(|_| Failure::new(exit::USAGE, format!("{kind} takes {N} parameter(s), got {}", ps.len())))
}

#[derive(Serialize)]
struct CatalogEntry {
    id: String,
    recipe: String,
    quandle_file: String,
    report_file: String,
    toolkit_version: String,
    recipe_version: u32,
    parameters: Vec<u64>,
}

#[derive(Serialize)]
struct Catalog {
    schema_version: u32,
    kind: String,
    entries: Vec<CatalogEntry>,
}

fn file_stem(id: &str) -> String {
    id.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect()
}

fn write_catalog(dir: &Path, r: &ClassificationResult) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::new(exit::USAGE, format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let mut entries = Vec::new();
    for c in r.all_quandles() {
        let stem = file_stem(&c.id);
        let (qf, rf) = (format!("{stem}.quandle"), format!("{stem}.json"));
        fs::write(dir.join(&qf), format_quandle(&c.quandle)).map_err(io)?;
        fs::write(dir.join(&rf), serde_json::to_string_pretty(&c.report).expect("serializable")).map_err(io)?;
        entries.push(CatalogEntry {
            id: c.id.clone(),
            recipe: c.recipe.clone(),
            quandle_file: qf,
            report_file: rf,
            toolkit_version: TOOLKIT_VERSION.into(),
            recipe_version: RECIPE_VERSION,
            parameters: r.parameters.clone(),
        });
    }
    let catalog = Catalog { schema_version: SCHEMA_VERSION, kind: r.kind.clone(), entries };
    fs::write(dir.join("catalog.json"), serde_json::to_string_pretty(&catalog).expect("serializable")).map_err(io)
}

/// Pairwise non-isomorphism by full search and recipe reproducibility.
fn cross_check(r: &ClassificationResult) -> Vec<String> {
    let mut bad = Vec::new();
    for group in [&r.reducible, &r.subdirectly_irreducible] {
        let qs: Vec<&FiniteQuandle> = group.iter().map(|c| &c.quandle).collect();
        if !pairwise_non_isomorphic(&qs) {
            bad.push("isomorphic duplicates in output".to_string());
        }
    }
    for c in r.all_quandles() {
        match build_recipe(&c.recipe) {
            Ok(q) if q == c.quandle => {}
            Ok(_) => bad.push(format!("{}: recipe gives a different table", c.id)),
            Err(e) => bad.push(format!("{}: {e}", c.id)),
        }
    }
    bad
}

fn classify(kind: Kind, ps: &[u64], out: Option<&Path>, verify: bool, slow: bool, format: Format) -> CmdResult {
    let r = match kind {
        Kind::Pq => {
            let [p, q] = params::<2>("pq", ps)?;
            classify_pq(p, q)
        }
        Kind::FourP => {
            let [p] = params::<1>("4p", ps)?;
            classify_4p(p)
        }
        Kind::EightP => {
            let [p] = params::<1>("8p", ps)?;
            if p > FAST_8P_PRIME && p <= MAX_8P_PRIME && !slow {
                return Err(Failure::new(exit::USAGE, format!("8p search at p = {p} is long; pass --slow")));
            }
            let rep = search_8p(p).map_err(classify_error)?;
            emit(&rep, format, || format!("p = {}: {} cases, found {}\n", rep.p, rep.cases.len(), rep.found));
            return Ok(if rep.found == 0 { 0 } else { exit::THEOREM });
        }
        Kind::Extraspecial2 => {
            let [order] = params::<1>("extraspecial2", ps)?;
            classify_extraspecial2_principal(order as usize)
        }
        Kind::Specialp => {
            let [p] = params::<1>("specialp", ps)?;
            classify_special_p(p)
        }
    }
    .map_err(classify_error)?;
    if let Some(dir) = out {
        write_catalog(dir, &r)?;
    }
    let mut failures: Vec<String> = r.cross_checks.iter().filter(|(_, &ok)| !ok).map(|(k, _)| k.clone()).collect();
    if r.orbit_counts.iter().any(|o| !o.identity_holds()) {
        failures.push("orbit-counting identity".into());
    }
    if verify {
        failures.extend(cross_check(&r));
    }
    emit(&r, format, || {
        let mut s = format!("{} {:?}\n", r.kind, r.parameters);
        for (k, v) in &r.counts {
            s += &format!("{k}: {v}\n");
        }
        for c in r.all_quandles() {
            s += &format!("  {}  {}\n", c.id, c.recipe);
        }
        s
    });
    if failures.is_empty() {
        Ok(0)
    } else {
        Err(Failure::new(exit::THEOREM, format!("consistency checks failed: {}", failures.join(", "))))
    }
}

#[derive(Serialize)]
struct IsoVerdict {
    schema_version: u32,
    isomorphic: bool,
    bijection: Option<Vec<usize>>,
    separating_invariant: Option<String>,
    /// All differing invariants, cheapest first.
    separating_invariants: Vec<String>,
    certificate: Option<String>,
}

fn iso(a: &Path, b: &Path, format: Format) -> CmdResult {
    let (q1, q2) = (load(a)?, load(b)?);
    if q1.size() != q2.size() {
        let v = IsoVerdict {
            schema_version: SCHEMA_VERSION,
            isomorphic: false,
            bijection: None,
            separating_invariant: Some("size".into()),
            separating_invariants: vec!["size".into()],
            certificate: None,
        };
        emit(&v, format, || format!("non-isomorphic: sizes {} and {}\n", q1.size(), q2.size()));
        return Ok(exit::USAGE);
    }
    let bijection = find_isomorphism(&q1, &q2);
    let invariants = if bijection.is_none() { separating_invariants(&q1, &q2) } else { Vec::new() };
    let certificate =
        (bijection.is_none() && invariants.is_empty()).then(|| "exhaustive search found no isomorphism".to_string());
    let v = IsoVerdict {
        schema_version: SCHEMA_VERSION,
        isomorphic: bijection.is_some(),
        bijection,
        separating_invariant: invariants.first().cloned(),
        separating_invariants: invariants,
        certificate,
    };
    emit(&v, format, || match &v.bijection {
        Some(m) => format!("isomorphic: {m:?}\n"),
        None => format!(
            "non-isomorphic: {}\n",
            if v.separating_invariants.is_empty() {
                v.certificate.clone().unwrap_or_default()
            } else {
                v.separating_invariants.join(", ")
            }
        ),
    });
    Ok(0)
}

fn verify(suite: &str, slow: bool, format: Format) -> CmdResult {
    let suite: Suite =
        suite.parse().map_err(|e: quandlekit::verify::UnknownSuite| Failure::new(exit::USAGE, e.to_string()))?;
    let r = run_suite(suite, VerifyOptions { slow });
    emit(&r, format, || {
        let mut s = String::new();
        for x in &r.suites {
            s += &format!("criterion {} [{}]: {}\n", x.criterion, x.suite, if x.passed { "pass" } else { "FAIL" });
            for c in x.failures() {
                s += &format!("    {}: {}\n", c.name, c.detail);
            }
        }
        s
    });
    Ok(if r.passed { 0 } else { exit::VERIFY })
}
