use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use orthoscalar::chain::zero_start_length_bound;
use orthoscalar::io::{self, ChainReport, DeltaSetDoc, FamilyDoc, PosetDoc};
use orthoscalar::oracle::{cross_validate, search_irreducible, SearchConfig};
use orthoscalar::solve::{solve, SolveOptions};
use orthoscalar::{
    check_all, delta_of, dimension_bound, enumerate_irreducibles, essential_catalog_match, lambda_zero_case,
    CatalogName, ChainContext, Character, Error, Poset, Split,
};

#[derive(Parser)]
#[command(name = "orthoscalar", version, about = "Orthoscalar representations of two-part posets")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct PosetArgs {
    /// Poset JSON file, or a catalog name such as a4 or "(1,1,1,1)".
    #[arg(long)]
    poset: String,
}

#[derive(clap::Args)]
struct ProblemArgs {
    #[command(flatten)]
    poset: PosetArgs,
    /// Character JSON file, or inline `g1=0.6,g2=0.6,...`.
    #[arg(long)]
    character: String,
    /// Elements of the first part, comma separated; defaults to the catalog split.
    #[arg(long)]
    split: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Width, tame type, chain decomposition and catalog match.
    Classify {
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Spectral sets of both parts and the eigenvalue chains.
    Spectrum {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Builds and verifies every irreducible family.
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Offset from half the first sum, for the zero-cap series.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<f64>,
        /// Phase of the continuous series as `RE,IM`.
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        /// Write the families to this JSON file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Numerical search for irreducibles, compared with the chain construction when a split is known.
    Oracle {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Dimension range `A..B` (inclusive) or a single dimension.
        #[arg(long, default_value = "1..4")]
        dims: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write the found families to this JSON file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Checks a family file against its poset and character.
    Verify {
        /// Family JSON file as written by `solve --out`.
        #[arg(long)]
        family: PathBuf,
        /// Overrides the poset embedded in the family file.
        #[arg(long)]
        poset: Option<String>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Invalid(Error),
    NoRep(String),
    Unverified(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoRepresentation(_) => Failure::NoRep(e.to_string()),
            other => Failure::Invalid(other),
        }
    }
}

fn load_poset(arg: &str) -> Result<(Poset, Option<CatalogName>), Error> {
    if let Ok(name) = arg.parse::<CatalogName>() {
        if !Path::new(arg).exists() {
            return Ok((name.poset(), Some(name)));
        }
    }
    let p = io::read_poset(Path::new(arg))?;
    let cat = orthoscalar::catalog::ALL.iter().copied().find(|c| c.poset() == p);
    Ok((p, cat))
}

fn load_character(arg: &str) -> Result<Character, Error> {
    if Path::new(arg).exists() {
        return io::read_character(Path::new(arg));
    }
    let mut pairs = Vec::new();
    for item in arg.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected name=value, got `{item}`")))?;
        let v: f64 = v.trim().parse().map_err(|_| Error::Parse(format!("bad weight `{v}`")))?;
        pairs.push((k.trim().to_string(), v));
    }
    Character::new(pairs)
}

fn load_problem(a: &ProblemArgs) -> Result<(Poset, Character, Option<Split>), Error> {
    let (p, cat) = load_poset(&a.poset.poset)?;
    let chi = load_character(&a.character)?;
    chi.aligned(&p)?;
    let split = match (&a.split, cat) {
        (Some(s), _) => Some(Split::parse(&p, s)?),
        (None, Some(c)) => Some(Split::lenient(&p, c.first_part())?),
        (None, None) => None,
    };
    Ok((p, chi, split))
}

fn need_split(split: Option<Split>) -> Result<Split, Error> {
    split.ok_or_else(|| Error::BadSplit("no --split given and the poset is not in the catalog".into()))
}

fn parse_gamma(s: &str) -> Result<Complex64, Error> {
    let bad = || Error::Parse(format!("gamma must be RE,IM, got `{s}`"));
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    Ok(Complex64::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?))
}

fn parse_dims(s: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::Parse(format!("dims must look like 1..6, got `{s}`"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if a == 0 || b < a {
        return Err(bad());
    }
    Ok((a, b))
}

fn fmt_list(v: &[f64]) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", items.join(", "))
}

fn classify(arg: &PosetArgs, format: Format) -> Result<(), Failure> {
    let (p, _) = load_poset(&arg.poset)?;
    let class = p.classify();
    let blocks = p.decompose().ok().map(|d| {
        d.blocks.iter().map(|b| b.members().join("|")).collect::<Vec<_>>()
    });
    let cat = essential_catalog_match(&p);
    match format {
        Format::Json => println!(
            "{}",
            io::to_json(&json!({
                "poset": PosetDoc::from_poset(&p),
                "width": p.width(),
                "contains_one_two": p.contains_one_two(),
                "class": format!("{class:?}"),
                "blocks": blocks,
                "catalog": cat.map(|c| c.as_str()),
            }))
        ),
        Format::Text => {
            println!("elements: {}", p.elements().join(", "));
            println!("width: {}", p.width());
            println!("contains (1,2): {}", p.contains_one_two());
            println!("class: {class:?}");
            if let Some(b) = blocks {
                println!("chain blocks (bottom to top): {}", b.join(" < "));
            }
            println!("catalog match: {}", cat.map_or("none", |c| c.as_str()));
        }
    }
    Ok(())
}

fn spectrum(a: &ProblemArgs, tol: f64, format: Format) -> Result<(), Failure> {
    let (_, chi, split) = load_problem(a)?;
    let split = need_split(split)?;
    let c1 = chi.restrict(split.first_names())?;
    let c2 = chi.restrict(split.second_names())?;
    let d1 = delta_of(&split.first, &c1)?;
    let d2 = delta_of(&split.second, &c2)?;
    let ctx = ChainContext::new(&split, &chi)?.with_tol(tol);
    let zero = ctx.is_zero_cap() && d1.has_continuum() && d2.has_continuum();
    let (chains, zc) = if zero {
        let z = lambda_zero_case(&ctx)?;
        (z.chains.clone(), Some(z))
    } else {
        (enumerate_irreducibles(&ctx)?, None)
    };
    let reports: Vec<ChainReport> = chains.iter().map(ChainReport::from_chain).collect();
    match format {
        Format::Json => println!(
            "{}",
            io::to_json(&json!({
                "delta1": DeltaSetDoc::from_delta(&d1),
                "delta2": DeltaSetDoc::from_delta(&d2),
                "lambda_cap": ctx.lambda_cap,
                "dimension_bound": dimension_bound(&ctx),
                "zero_start_length_bound": zero_start_length_bound(&ctx),
                "chains": reports,
                "zero_cap_continuous": zc.as_ref().map(|z| z.continuous.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>()),
                "c_range": zc.as_ref().and_then(|z| z.c_range).map(|(x, y)| [x, y]),
            }))
        ),
        Format::Text => {
            for (name, d) in [("first", &d1), ("second", &d2)] {
                let iv: Vec<String> = d.continuous.iter().map(|(x, y)| format!("({x:.6}, {y:.6})")).collect();
                println!("{name} part: discrete {} intervals [{}] sigma {:.6}", fmt_list(&d.discrete), iv.join(", "), d.sigma);
            }
            println!("cap: {:.6}", ctx.lambda_cap);
            if let Some(b) = dimension_bound(&ctx) {
                println!("dimension bound: {b}");
            }
            if let Some(z) = &zc {
                let iv: Vec<String> = z.continuous.iter().map(|(x, y)| format!("({x:.6}, {y:.6})")).collect();
                println!("two-dimensional series for first eigenvalue in {}", iv.join(", "));
                if let Some((lo, hi)) = z.c_range {
                    println!("c range: ({lo:.6}, {hi:.6})");
                }
            }
            for (i, r) in reports.iter().enumerate() {
                println!(
                    "chain {i}: dim {} start {:?} {:?}{} lambdas {} mus {}",
                    r.dimension,
                    r.start_side,
                    r.termination,
                    if r.boundary_ambiguous { " (ambiguous)" } else { "" },
                    fmt_list(&r.lambdas),
                    fmt_list(&r.mus)
                );
            }
        }
    }
    Ok(())
}

fn write_families(path: &Path, docs: &[FamilyDoc]) -> Result<(), Failure> {
    std::fs::write(path, io::to_json(&docs))
        .map_err(|e| Failure::Invalid(Error::Parse(format!("{}: {e}", path.display()))))
}

fn solve_cmd(
    a: &ProblemArgs,
    tol: f64,
    c: Option<f64>,
    gamma: Option<&str>,
    out: Option<&Path>,
    format: Format,
) -> Result<(), Failure> {
    let (_, chi, split) = load_problem(a)?;
    let split = need_split(split)?;
    let gamma = gamma.map(parse_gamma).transpose()?.unwrap_or(Complex64::new(1.0, 0.0));
    let sol = solve(&split, &chi, &SolveOptions { tol, c, gamma })?;
    let r = &sol.report;
    if let Some(path) = out {
        let docs: Vec<FamilyDoc> = r.representations.iter().map(|x| x.family.clone()).collect();
        write_families(path, &docs)?;
    }
    match format {
        Format::Json => println!("{}", io::to_json(r)),
        Format::Text => {
            if let (Some(s1), Some(s2), Some(cap)) = (r.sigma1, r.sigma2, r.lambda_cap) {
                println!("sigma1 {s1:.6}  sigma2 {s2:.6}  cap {cap:.6}");
            }
            for (e, f) in &r.forced {
                println!("forced {e}: {f:?}");
            }
            for (i, rep) in r.representations.iter().enumerate() {
                println!(
                    "rep {i}: {} dim {} residual {:.2e} {} commutant {}{}",
                    rep.source,
                    rep.report.dimension,
                    rep.report.worst_residual(),
                    if rep.report.passed { "ok" } else { "FAILED" },
                    rep.report.commutant_dim,
                    if rep.report.essential { " essential" } else { "" }
                );
            }
        }
    }
    if r.representations.is_empty() {
        return Err(Failure::NoRep("no irreducible representation found".into()));
    }
    if !r.all_verified() {
        return Err(Failure::Unverified("some families failed verification".into()));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn oracle_cmd(
    a: &ProblemArgs,
    dims: &str,
    seed: u64,
    restarts: usize,
    tol: f64,
    out: Option<&Path>,
    format: Format,
) -> Result<(), Failure> {
    let (p, chi, split) = load_problem(a)?;
    let (lo, hi) = parse_dims(dims)?;
    let cfg = SearchConfig { tol, ..SearchConfig::new(lo).with_seed(seed).with_restarts(restarts) };
    let mut finds = Vec::new();
    match split {
        Some(split) => {
            let table = cross_validate(&split, &chi, lo..=hi, &cfg)?;
            match format {
                Format::Json => println!("{}", io::to_json(&table)),
                Format::Text => print!("{}", table.to_text()),
            }
            if out.is_some() {
                for d in lo..=hi {
                    if let Some(f) = search_irreducible(&p, &chi, &SearchConfig { dimension: d, ..cfg.clone() })? {
                        finds.push(FamilyDoc::from_family(&f.family));
                    }
                }
            }
        }
        None => {
            let mut rows = Vec::new();
            for d in lo..=hi {
                let f = search_irreducible(&p, &chi, &SearchConfig { dimension: d, ..cfg.clone() })?;
                rows.push(json!({"dimension": d, "found": f.is_some(), "profile": f.as_ref().map(|f| f.profile.clone())}));
                if format == Format::Text {
                    println!("dim {d}: {}", if f.is_some() { "found" } else { "none" });
                }
                if let Some(f) = f {
                    finds.push(FamilyDoc::from_family(&f.family));
                }
            }
            if format == Format::Json {
                println!("{}", io::to_json(&json!({"config": cfg, "rows": rows})));
            }
        }
    }
    if let Some(path) = out {
        write_families(path, &finds)?;
    }
    Ok(())
}

fn verify_cmd(family: &Path, poset: Option<&str>, tol: f64, format: Format) -> Result<(), Failure> {
    let text = std::fs::read_to_string(family)
        .map_err(|e| Failure::Invalid(Error::Parse(format!("{}: {e}", family.display()))))?;
    // a single family or the list written by `solve --out`
    let docs: Vec<FamilyDoc> = match io::parse::<Vec<FamilyDoc>>(&text) {
        Ok(v) => v,
        Err(_) => vec![io::parse::<FamilyDoc>(&text)?],
    };
    let poset = poset.map(load_poset).transpose()?.map(|(p, _)| p);
    let mut ok = true;
    let mut reports = Vec::new();
    for doc in &docs {
        let fam = doc.to_family(poset.as_ref())?;
        let r = check_all(&fam, tol)?;
        ok &= r.passed;
        reports.push(r);
    }
    match format {
        Format::Json => println!("{}", io::to_json(&reports)),
        Format::Text => {
            for (i, r) in reports.iter().enumerate() {
                println!(
                    "family {i}: dim {} {} worst residual {:.2e} commutant {}",
                    r.dimension,
                    if r.passed { "ok" } else { "FAILED" },
                    r.worst_residual(),
                    r.commutant_dim
                );
                if !r.passed {
                    for (k, v) in r.residuals.iter().filter(|(_, v)| **v > tol) {
                        println!("  {k}: {v:.2e}");
                    }
                }
            }
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Unverified("verification failed".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Classify { poset, format } => classify(poset, *format),
        Cmd::Spectrum { problem, tol, format } => spectrum(problem, *tol, *format),
        Cmd::Solve { problem, tol, c, gamma, out, format } => {
            solve_cmd(problem, *tol, *c, gamma.as_deref(), out.as_deref(), *format)
        }
        Cmd::Oracle { problem, dims, seed, restarts, tol, out, format } => {
            oracle_cmd(problem, dims, *seed, *restarts, *tol, out.as_deref(), *format)
        }
        Cmd::Verify { family, poset, tol, format } => verify_cmd(family, poset.as_deref(), *tol, *format),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::NoRep(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Unverified(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(4)
        }
    }
}
