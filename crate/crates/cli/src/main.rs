use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mlat::axioms::{render_report, validate};
use mlat::constructions::{localize, localize_at_prime, product, quotient};
use mlat::elements::{lattice_profile, render_lattice_profile};
use mlat::family::{default_corpus, generate, parse_manifest, FamilySpec};
use mlat::format;
use mlat::hollow::render_hollow_report;
use mlat::search::mine::render_mine_result;
use mlat::search::{canonical_form, enumerate_lattices, mine, mult_lattices, Query};
use mlat::verify::{self, relabel_stress, Allowlist, SuiteOptions};
use mlat::{ElementId, MultLattice};

/// Finite multiplicative lattices from the command line.
///
/// Lattice arguments are core-format files; anything that is not an
/// existing path is read as a family spec such as `zmod(m=12)`.
#[derive(Parser)]
#[command(name = "mlat", version)]
struct Cli {
    /// Seed for relabeling stress runs. Never changes any other output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the lattice here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a lattice from a family spec, e.g. `gen zmod m=12 -o z12.lat`.
    Gen {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Print the lattice profile.
    Classify { lattice: String },
    /// Print hollowness data and minimal representations.
    Hollow { lattice: String },
    /// Print the residual (a:b).
    Residual { lattice: String, a: String, b: String },
    /// Emit the quotient on [i, 1].
    Quotient {
        lattice: String,
        i: String,
        #[command(flatten)]
        out: Output,
    },
    /// Emit a localization, at a prime or at an explicit set.
    Localize {
        lattice: String,
        /// Localize at the complement of this prime.
        #[arg(long, conflicts_with = "set", required_unless_present = "set")]
        prime: Option<String>,
        /// Comma-separated multiplicatively closed set containing top.
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<String>>,
        #[command(flatten)]
        out: Output,
    },
    /// Emit the direct product of two or more lattices.
    Product {
        #[arg(required = true, num_args = 2..)]
        lattices: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Run the theorem suite.
    Verify(VerifyArgs),
    /// Enumerate lattices up to isomorphism and export them.
    Search {
        #[arg(long)]
        max_n: usize,
        /// Enumerate bare lattices instead of multiplicative structures.
        #[arg(long)]
        order_only: bool,
        /// Directory receiving one file per canonical form.
        #[arg(short, long)]
        out_dir: Option<PathBuf>,
    },
    /// Search enumerated lattices for a counterexample to a query.
    Mine {
        #[arg(long)]
        query: String,
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Manifest of family specs; the shipped corpus by default.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Comma-separated check or direction ids, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    checks: Vec<String>,
    /// Expected-discrepancy file; the shipped list by default.
    #[arg(long, conflicts_with = "no_allow")]
    allow: Option<PathBuf>,
    /// Use an empty allowlist.
    #[arg(long)]
    no_allow: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    /// Worker threads; overrides the environment variable.
    #[arg(long)]
    workers: Option<usize>,
    /// Random relabelings per lattice, checked for unchanged statuses.
    #[arg(long, default_value_t = 0)]
    stress: usize,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ReportFormat {
    Text,
    Tsv,
}

/// Usage and load failures; everything here exits with 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

/// Writes data to stdout. A closed pipe is not an error worth reporting.
fn say(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

/// Loads a file or generates a family spec, rejecting tables that are not
/// a multiplicative lattice.
fn load(arg: &str) -> Result<MultLattice, Failure> {
    let path = Path::new(arg);
    let l = if path.exists() {
        format::load(path)?
    } else {
        let spec = FamilySpec::parse(arg)
            .map_err(|e| Failure(format!("`{arg}` is neither a file nor a family spec: {e}")))?;
        generate(&spec)?
    };
    let report = validate(&l);
    if !report.valid {
        return Err(Failure(render_report(&l, &report).trim_end().to_string()));
    }
    Ok(l)
}

fn element(l: &MultLattice, token: &str) -> Result<ElementId, Failure> {
    Ok(l.resolve(token)?)
}

fn emit(l: &MultLattice, out: &Output) -> Outcome {
    match &out.output {
        Some(p) => {
            format::save(l, p)?;
            eprintln!("wrote {} ({} elements) to {}", l.name(), l.len(), p.display());
        }
        None => say(&format::write(l)),
    }
    Ok(0)
}

fn verify_cmd(v: &VerifyArgs, seed: u64) -> Outcome {
    let (description, corpus) = match &v.corpus {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure(format!("{}: {e}", p.display())))?;
            (p.display().to_string(), parse_manifest(&text)?)
        }
        None => ("default".to_string(), default_corpus()),
    };
    let allow = if v.no_allow {
        Allowlist::default()
    } else if let Some(p) = &v.allow {
        let text = fs::read_to_string(p).map_err(|e| Failure(format!("{}: {e}", p.display())))?;
        Allowlist::parse(&text)?
    } else {
        Allowlist::shipped()
    };
    let opts = SuiteOptions {
        workers: v.workers,
        allow,
    };
    let report = verify::run_suite(&description, &corpus, &v.checks, &opts)?;
    match v.format {
        ReportFormat::Text => say(&report.render_text(false)),
        ReportFormat::Tsv => say(&report.render_tsv()),
    }
    eprintln!("wall-clock: {:.3}s", report.elapsed.as_secs_f64());
    let mut code = report.exit_code() as u8;
    if v.stress > 0 {
        let lattices = corpus.iter().map(generate).collect::<Result<Vec<_>, _>>()?;
        let failures = relabel_stress(&lattices, v.stress, seed, &v.checks)?;
        for f in &failures {
            eprintln!("stress: {} round {} changed {}", f.lattice, f.round, f.what);
        }
        eprintln!(
            "stress: {} relabelings per lattice, seed {seed}, {} failures",
            v.stress,
            failures.len()
        );
        if !failures.is_empty() {
            code = 1;
        }
    }
    Ok(code)
}

fn search_cmd(max_n: usize, order_only: bool, out_dir: Option<&Path>) -> Outcome {
    if let Some(d) = out_dir {
        fs::create_dir_all(d).map_err(|e| Failure(format!("{}: {e}", d.display())))?;
    }
    let kind = if order_only { "lattices" } else { "multiplicative lattices" };
    for n in 1..=max_n {
        let found = if order_only {
            enumerate_lattices(n)?
        } else {
            mult_lattices(n)?
        };
        say(&format!("n={n} {kind}={}\n", found.len()));
        if let Some(d) = out_dir {
            for l in &found {
                let path = d.join(format!("n{n}-{}.lat", canonical_form(l).key()));
                format::save(l, &path)?;
                say(&format!("{}\n", path.display()));
            }
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen { spec, out } => {
            let spec = FamilySpec::parse(&spec.join(" "))?;
            emit(&generate(&spec)?, &out)
        }
        Command::Classify { lattice } => {
            let l = load(&lattice)?;
            say(&render_lattice_profile(&l, &lattice_profile(&l)));
            Ok(0)
        }
        Command::Hollow { lattice } => {
            say(&render_hollow_report(&load(&lattice)?));
            Ok(0)
        }
        Command::Residual { lattice, a, b } => {
            let l = load(&lattice)?;
            let (a, b) = (element(&l, &a)?, element(&l, &b)?);
            let r = l.residual(a, b);
            say(&format!("{} {}\n", r, l.element_name(r)));
            Ok(0)
        }
        Command::Quotient { lattice, i, out } => {
            let l = load(&lattice)?;
            let i = element(&l, &i)?;
            emit(&quotient(&l, i)?.lattice, &out)
        }
        Command::Localize {
            lattice,
            prime,
            set,
            out,
        } => {
            let l = load(&lattice)?;
            let d = match (prime, set) {
                (Some(p), _) => localize_at_prime(&l, element(&l, &p)?)?,
                (None, Some(s)) => {
                    let s = s
                        .iter()
                        .map(|t| element(&l, t.trim()))
                        .collect::<Result<Vec<_>, _>>()?;
                    localize(&l, &s)?
                }
                (None, None) => return Err(Failure("give --prime or --set".into())),
            };
            emit(&d.lattice, &out)
        }
        Command::Product { lattices, out } => {
            let ls = lattices.iter().map(|a| load(a)).collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&MultLattice> = ls.iter().collect();
            emit(&product(&refs)?, &out)
        }
        Command::Verify(v) => verify_cmd(&v, cli.seed),
        Command::Search {
            max_n,
            order_only,
            out_dir,
        } => search_cmd(max_n, order_only, out_dir.as_deref()),
        Command::Mine { query, max_n, out } => {
            let q = Query::parse(&query)?;
            let r = mine(&q, max_n)?;
            match &r {
                mlat::search::MineResult::Holds { .. } => {
                    say(&render_mine_result(&q, &r));
                    Ok(0)
                }
                mlat::search::MineResult::Counterexample { lattice, .. } => {
                    if out.output.is_some() {
                        say(&render_mine_result(&q, &r));
                        emit(lattice, &out)?;
                    } else {
                        say(&format!("{}{}", render_mine_result(&q, &r), format::write(lattice)));
                    }
                    Ok(1)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match run(cli) {
        Ok(c) => c,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
