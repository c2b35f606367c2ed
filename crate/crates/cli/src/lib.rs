//! Command-line surface for `projohnson-core`: contexts from flags or file
//! headers, the file formats in [`formats`], and deterministic renderings
//! in [`render`].
//!
//! [`dispatch`] runs one command and returns its exit status and the text
//! for standard output and standard error, so the binary is a thin shell.

pub mod formats;
pub mod render;

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use projohnson_core::autom::{aj_depth, johnson_map};
use projohnson_core::iwasawa::{monodromy_sequences, p_period, LambdaModuleDesc, DEFAULT_D_MAX};
use projohnson_core::magnus::{magnus_coefficient, magnus_embed, zassenhaus_degree};
use projohnson_core::massey::{build_relators, johnson_massey_grid, massey_eval};
use projohnson_core::words::{parse_word, parse_word_with_max};
use projohnson_core::{AutDepth, FiltrationDepth, GroupContext, GroupEndo, Iterate, Monomial};

use formats::{AutomorphismSpec, DefiningSystemSpec, DegreeSpec, Header};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USER: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

const DEFAULT_P: u32 = 3;
const DEFAULT_R: usize = 2;
const DEFAULT_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    User(String),
    Resource(String),
}

impl CliError {
    pub fn user(msg: impl Into<String>) -> Self {
        CliError::User(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::User(_) => EXIT_USER,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (CliError::User(m) | CliError::Resource(m)) = self;
        // diagnostics stay on one line
        f.write_str(&m.replace('\n', "; "))
    }
}

impl From<projohnson_core::Error> for CliError {
    fn from(e: projohnson_core::Error) -> Self {
        if e.is_resource() {
            CliError::Resource(e.to_string())
        } else {
            CliError::User(e.to_string())
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "projohnson", version, about = "p-Johnson maps, Magnus expansions and Massey products for free pro-p groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Global {
    /// Prime (default 3)
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Number of generators (default 2)
    #[arg(long, global = true)]
    r: Option<usize>,
    /// Truncation degree of the Magnus algebra (default 6)
    #[arg(long = "N", global = true)]
    n: Option<usize>,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Debug)]
struct AutoArgs {
    /// Automorphism spec file
    #[arg(long, conflicts_with = "inner")]
    phi: Option<PathBuf>,
    /// Use the inner automorphism g -> w g w^-1
    #[arg(long)]
    inner: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Magnus expansion theta(w) through degree N
    Expand { word: String },
    /// Magnus coefficient eps(mono; w)
    Eps { mono: String, word: String },
    /// Zassenhaus degree of a word
    Degree { word: String },
    /// Andreadakis-Johnson depth of an automorphism
    Depth {
        #[command(flatten)]
        auto: AutoArgs,
    },
    /// p-Johnson homomorphism tau_m of phi^(p^d)
    Johnson {
        #[command(flatten)]
        auto: AutoArgs,
        /// Level (default: the depth of the iterate)
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        d: u32,
    },
    /// p-Johnson map tau^theta_m
    Jmap {
        #[command(flatten)]
        auto: AutoArgs,
        #[arg(long)]
        m: usize,
    },
    /// Massey product value on a relator
    Massey {
        /// Defining-system file
        #[arg(long)]
        ds: PathBuf,
        relator: String,
    },
    /// Relators R_j and reduced relators R'_j of phi^(p^d)
    Relators {
        #[command(flatten)]
        auto: AutoArgs,
        #[arg(long, default_value_t = 0)]
        d: u32,
    },
    /// Compare Johnson coefficients with Massey values, one JSON line per cell
    #[command(name = "check522")]
    Check522 {
        #[command(flatten)]
        auto: AutoArgs,
        /// Single exponent (default: every d with m(d) + 1 <= N)
        #[arg(long)]
        d: Option<u32>,
    },
    /// p-period of a module given by its degrees
    Period {
        /// Comma-separated degrees, or a degree file
        #[arg(long)]
        degrees: String,
    },
    /// Monodromy sequences d(m) and m(d)
    Sequences {
        #[command(flatten)]
        auto: AutoArgs,
        /// Largest m (default N-1)
        #[arg(long)]
        m: Option<usize>,
        /// Largest d (default 4)
        #[arg(long)]
        d: Option<u32>,
    },
}

/// Exit status and captured output of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn dispatch<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_USER } else { EXIT_OK };
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match run(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::user(format!("cannot read {}: {e}", path.display())))
}

fn pick<T: PartialEq + fmt::Display + Copy>(name: &str, flag: Option<T>, file: Option<T>, default: T) -> Result<T, CliError> {
    match (flag, file) {
        (Some(a), Some(b)) if a != b => Err(CliError::user(format!("{name} given as {a} on the command line but {b} in the file"))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Ok(default),
    }
}

fn context(g: &Global, file: Header) -> Result<GroupContext, CliError> {
    let p = pick("p", g.p, file.p, DEFAULT_P)?;
    let r = pick("r", g.r, file.r, DEFAULT_R)?;
    let n = pick("N", g.n, file.n, DEFAULT_N)?;
    Ok(GroupContext::new(p, r, n)?)
}

fn automorphism(g: &Global, a: &AutoArgs) -> Result<GroupEndo, CliError> {
    match (&a.phi, &a.inner) {
        (Some(path), None) => {
            let spec = AutomorphismSpec::parse(&read(path)?)?;
            let ctx = context(g, spec.header)?;
            spec.build(ctx)
        }
        (None, Some(word)) => {
            let ctx = context(g, Header::default())?;
            Ok(GroupEndo::inner(&parse_word(word, &ctx)?, ctx)?)
        }
        _ => Err(CliError::user("give an automorphism with --phi <file> or --inner <word>")),
    }
}

fn run(cli: &Cli) -> Result<(i32, String), CliError> {
    let g = &cli.global;
    let json = g.json;
    let out = match &cli.verb {
        Verb::Expand { word } => {
            let ctx = context(g, Header::default())?;
            let s = magnus_embed(&parse_word(word, &ctx)?, &ctx)?;
            if json {
                render::series_json(&s).to_string() + "\n"
            } else {
                format!("{s}\n")
            }
        }
        Verb::Eps { mono, word } => {
            let ctx = context(g, Header::default())?;
            let m: Monomial = mono.parse()?;
            let w = parse_word(word, &ctx)?;
            let v = magnus_coefficient(&m, &w, &ctx)?;
            if json {
                serde_json::json!({ "mono": m.to_string(), "word": w.to_string(), "eps": v }).to_string() + "\n"
            } else {
                format!("{v}\n")
            }
        }
        Verb::Degree { word } => {
            let ctx = context(g, Header::default())?;
            let d = zassenhaus_degree(&parse_word(word, &ctx)?, &ctx)?;
            if json {
                let (degree, kind) = match d {
                    FiltrationDepth::Identity => (None, "identity"),
                    FiltrationDepth::Degree(n) => (Some(n), "degree"),
                    FiltrationDepth::BeyondHorizon => (None, "beyond"),
                };
                serde_json::json!({ "N": ctx.trunc(), "degree": degree, "kind": kind }).to_string() + "\n"
            } else {
                format!("{d}\n")
            }
        }
        Verb::Depth { auto } => {
            let phi = automorphism(g, auto)?;
            let d = aj_depth(&phi)?;
            if json {
                serde_json::json!({ "N": phi.ctx().trunc(), "depth": d.level() }).to_string() + "\n"
            } else {
                format!("{d}\n")
            }
        }
        Verb::Johnson { auto, m, d } => {
            let phi = automorphism(g, auto)?;
            let iterate = Iterate::p_power(&phi, *d)?;
            let m = match m {
                Some(m) => *m,
                None => match iterate.aj_depth()? {
                    AutDepth::Level(0) => {
                        return Err(CliError::user("phi^(p^d) is not IA: the induced map on H = F/F_2 is not the identity"))
                    }
                    AutDepth::Level(m) => m,
                    AutDepth::BeyondHorizon => {
                        return Err(CliError::user(format!(
                            "phi^(p^d) acts trivially modulo F_{}: every tau_m with m < N vanishes",
                            phi.ctx().trunc()
                        )))
                    }
                },
            };
            let t = iterate.johnson_hom(m)?;
            if json {
                render::table_json(&t)
            } else {
                render::format_table(&t)
            }
        }
        Verb::Jmap { auto, m } => {
            let phi = automorphism(g, auto)?;
            let t = johnson_map(&phi, *m)?;
            if json {
                render::table_json(&t)
            } else {
                render::format_table(&t)
            }
        }
        Verb::Massey { ds, relator } => {
            let spec = DefiningSystemSpec::parse(&read(ds)?)?;
            let p = pick("p", g.p, spec.header.p, DEFAULT_P)?;
            let gens = g.r.unwrap_or(DEFAULT_R).max(spec.max_generator());
            let rel = parse_word_with_max(relator, gens)?;
            let ds = spec.build(p, gens.max(rel.max_generator()))?;
            let v = massey_eval(&ds, &rel)?;
            if json {
                serde_json::json!({ "m": ds.m(), "relator": rel.to_string(), "value": v }).to_string() + "\n"
            } else {
                format!("{v}\n")
            }
        }
        Verb::Relators { auto, d } => {
            let phi = automorphism(g, auto)?;
            let rs = build_relators(&phi, *d)?;
            if json {
                let rows: Vec<_> = (0..rs.relators.len())
                    .map(|k| {
                        serde_json::json!({
                            "j": k + 1,
                            "relator": rs.relators[k].to_string(),
                            "reduced": rs.reduced[k].to_string(),
                        })
                    })
                    .collect();
                serde_json::json!({ "d": rs.d, "relators": rows }).to_string() + "\n"
            } else {
                let mut s = format!("{} d={}\n", render::context_header(phi.ctx()), rs.d);
                for (k, (r, rr)) in rs.relators.iter().zip(&rs.reduced).enumerate() {
                    s.push_str(&format!("R{}\t{r}\nR'{}\t{rr}\n", k + 1, k + 1));
                }
                s
            }
        }
        Verb::Check522 { auto, d } => {
            let phi = automorphism(g, auto)?;
            let mut s = String::new();
            let mut all_equal = true;
            let exponents: Box<dyn Iterator<Item = u32>> = match d {
                Some(d) => Box::new(std::iter::once(*d)),
                None => Box::new(0..),
            };
            let mut any = false;
            for d in exponents {
                let Some(grid) = johnson_massey_grid(&phi, d)? else { break };
                any = true;
                for c in &grid {
                    all_equal &= c.equal;
                    s.push_str(&render::check_line(c));
                }
            }
            if !any {
                return Err(CliError::user(format!(
                    "m(d) + 1 exceeds N = {}: the iterate acts trivially modulo F_N",
                    phi.ctx().trunc()
                )));
            }
            return Ok((if all_equal { EXIT_OK } else { EXIT_CHECK_FAILED }, s));
        }
        Verb::Period { degrees } => {
            let spec = match DegreeSpec::parse_inline(degrees) {
                Some(s) => s,
                None => DegreeSpec::parse_file(&read(Path::new(degrees))?)?,
            };
            let p = pick("p", g.p, spec.p, DEFAULT_P)?;
            let desc = LambdaModuleDesc::new(p, spec.degrees)?;
            let d = p_period(&desc);
            if json {
                serde_json::json!({ "p": p, "degrees": desc.degrees(), "lambda": desc.lambda(), "period": d }).to_string()
                    + "\n"
            } else {
                format!("{d}\n")
            }
        }
        Verb::Sequences { auto, m, d } => {
            let phi = automorphism(g, auto)?;
            let ctx = *phi.ctx();
            let s = monodromy_sequences(&phi, m.unwrap_or(ctx.trunc() - 1), d.unwrap_or(DEFAULT_D_MAX))?;
            if json {
                render::sequences_json(&ctx, &s)
            } else {
                render::format_sequences(&ctx, &s)
            }
        }
    };
    Ok((EXIT_OK, out))
}
