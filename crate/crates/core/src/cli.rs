//! Command-line front end. `run` parses arguments, validates everything before
//! computing, and writes a single document; the exit code is 0 on success, 1 on
//! a verification mismatch and 2 on invalid input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::doc;
use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, Ambient, StableGraph};
use crate::latex;
use crate::oracle;
use crate::strata::StrataElement;
use crate::target::{CurveClass, Target};

#[derive(Parser, Debug)]
#[command(name = "tautring", version, about = "Exact strata algebra of stable maps")]
pub struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Latex,
}

#[derive(Args, Debug, Clone)]
pub struct AmbientArgs {
    #[arg(long)]
    pub g: u32,
    #[arg(long)]
    pub n: usize,
    /// Curve class, comma-separated coordinates
    #[arg(long, value_delimiter = ',', required = true)]
    pub beta: Vec<u32>,
    /// `point`, `P1:s`, `P2:s`, ... or a target document path
    #[arg(long)]
    pub target: String,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate stable graphs up to isomorphism
    Graphs {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long)]
        max_edges: usize,
        /// Forget curve classes and stability
        #[arg(long)]
        shapes_only: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Multiply two element documents
    Multiply {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Twisted double-ramification relation of degree d
    Dr {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        k: i64,
        /// Ramification data, comma-separated
        #[arg(long = "A", value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "symbolic")]
        a: Option<Vec<i64>>,
        /// Keep a_1..a_{n-1} as symbols and eliminate a_n
        #[arg(long, required_unless_present = "a")]
        symbolic: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Pullback along the stabilization morphism
    Pullback {
        #[command(flatten)]
        ambient: AmbientArgs,
        #[arg(long, group = "class")]
        psi: Option<usize>,
        #[arg(long, group = "class")]
        kappa1: bool,
        /// Curve graph document (a single graph in the graph JSON layout)
        #[arg(long, group = "class")]
        boundary: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Pushforward forgetting the last marking
    Pushforward {
        element: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the engine with the printed relations
    VerifyPaper {
        /// `2.7`, `4.2`, `4.3`, `4.4`, `4.5` or `all`
        example: String,
        /// Defaults to `P1:1`, the setting of the printed examples
        #[arg(long)]
        target: Option<String>,
        /// Curve degrees to test, comma-separated
        #[arg(long, value_delimiter = ',')]
        beta: Option<Vec<u32>>,
        /// Fixture catalog document to validate before running
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Layout of a fixture catalog document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDoc {
    pub format: String,
    pub fixtures: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub id: String,
    pub genus: u32,
    pub markings: usize,
    pub anchor: String,
    pub scale: i64,
}

pub const CATALOG_FORMAT: &str = "tautring-fixtures/1";

pub fn catalog_doc() -> CatalogDoc {
    CatalogDoc {
        format: CATALOG_FORMAT.into(),
        fixtures: oracle::CATALOG
            .iter()
            .map(|f| CatalogEntry {
                id: f.id.into(),
                genus: f.genus,
                markings: f.markings,
                anchor: f.anchor.into(),
                scale: f.scale,
            })
            .collect(),
    }
}

fn check_catalog(path: &Path) -> Result<()> {
    let doc: CatalogDoc = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    if doc != catalog_doc() {
        return Err(Error::Parse(format!("fixture catalog {} does not match the built-in fixtures", path.display())));
    }
    Ok(())
}

fn ambient(args: &AmbientArgs) -> Result<Ambient> {
    let target = Target::from_selector(&args.target)?;
    let beta = CurveClass(args.beta.clone());
    if !target.admits(&beta) {
        return Err(Error::Parse(format!("curve class {beta} is not admissible on {}", target.name())));
    }
    Ok(Ambient::new(args.g, args.n, beta, Arc::new(target)))
}

fn read_element(path: &Path) -> Result<StrataElement> {
    doc::element_from_json(&std::fs::read_to_string(path)?)
}

fn render_element(e: &StrataElement, provenance: Option<serde_json::Value>, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => doc::element_to_json(e, provenance)?,
        Format::Latex => latex::element_latex(e),
    })
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n"))?,
        None => writeln!(stdout, "{text}")?,
    }
    Ok(())
}

/// Result of one command: the text to emit and whether a verification failed.
struct Outcome {
    text: String,
    out: Option<PathBuf>,
    mismatch: bool,
}

fn execute(cmd: &Command) -> Result<Outcome> {
    let done = |text: String, out: &Option<PathBuf>| Outcome { text, out: out.clone(), mismatch: false };
    match cmd {
        Command::Graphs { ambient: a, max_edges, shapes_only, output } => {
            let amb = ambient(a)?;
            let graphs = enumerate_graphs(&amb, *max_edges, *shapes_only);
            let text = match output.format {
                Format::Json => serde_json::to_string_pretty(&doc::graphs_doc(&amb, *max_edges, *shapes_only, &graphs))?,
                Format::Latex => graphs.iter().map(latex::graph_latex).collect::<Vec<_>>().join("\n"),
            };
            Ok(done(text, &output.out))
        }
        Command::Multiply { a, b, output } => {
            let x = read_element(a)?;
            let y = read_element(b)?;
            let p = crate::product::multiply(&x, &y)?;
            Ok(done(render_element(&p, None, output.format)?, &output.out))
        }
        Command::Dr { ambient: a, d, k, a: avec, symbolic, output } => {
            let amb = ambient(a)?;
            let (el, prov) = match (avec, symbolic) {
                (Some(v), false) => {
                    let (el, prov) = crate::dr::interpolate_in_r(&amb, *k, *d, v)?;
                    (el, json!({ "mode": "numeric", "A": v, "k": k, "d": d, "r": prov }))
                }
                (None, true) => {
                    let (el, prov) = crate::dr::compute_p_d_symbolic(&amb, *k, *d)?;
                    (el, json!({ "mode": "symbolic", "k": k, "d": d, "interpolation": prov }))
                }
                _ => return Err(Error::Parse("give exactly one of --A and --symbolic".into())),
            };
            Ok(done(render_element(&el, Some(prov), output.format)?, &output.out))
        }
        Command::Pullback { ambient: a, psi, kappa1, boundary, output } => {
            let amb = ambient(a)?;
            let el = match (psi, kappa1, boundary) {
                (Some(i), false, None) => crate::stabilization::pullback_psi(*i, &amb)?,
                (None, true, None) => crate::stabilization::pullback_kappa1(&amb)?,
                (None, false, Some(p)) => {
                    let g: StableGraph = serde_json::from_str(&std::fs::read_to_string(p)?)?;
                    crate::stabilization::pullback_boundary(&g, &amb)?
                }
                _ => return Err(Error::Parse("give exactly one of --psi, --kappa1, --boundary".into())),
            };
            Ok(done(render_element(&el, None, output.format)?, &output.out))
        }
        Command::Pushforward { element, output } => {
            let el = crate::stabilization::forgetful_pushforward(&read_element(element)?)?;
            Ok(done(render_element(&el, None, output.format)?, &output.out))
        }
        Command::VerifyPaper { example, target, beta, catalog, out } => {
            if let Some(c) = catalog {
                check_catalog(c)?;
            }
            let target = Arc::new(Target::from_selector(target.as_deref().unwrap_or("P1:1"))?);
            let betas = match beta {
                Some(b) => b.clone(),
                None if example == "4.2" => vec![1, 2, 3],
                None => vec![1, 2],
            };
            if betas.is_empty() || betas.contains(&0) {
                return Err(Error::Parse("curve degrees must be positive".into()));
            }
            let checks = oracle::verify_example(example, &target, &betas)?;
            let lines: Vec<String> = checks
                .iter()
                .map(|c| {
                    let mut l = format!("{} {} {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.ambient);
                    if !c.passed {
                        l.push_str(&format!("\n    {}", c.detail));
                    }
                    l
                })
                .collect();
            let failed = checks.iter().filter(|c| !c.passed).count();
            let degrees: Vec<String> = betas.iter().map(u32::to_string).collect();
            let text = format!(
                "verify-paper {example} on {} with beta in {{{}}}\n{}\n{} checks, {} failed",
                target.name(),
                degrees.join(", "),
                lines.join("\n"),
                checks.len(),
                failed
            );
            Ok(Outcome { text, out: out.clone(), mismatch: failed > 0 })
        }
    }
}

fn finish(result: Result<Outcome>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = result.and_then(|o| {
        emit(&o.text, o.out.as_deref(), stdout)?;
        Ok(o.mismatch)
    });
    match result {
        Ok(false) => 0,
        Ok(true) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.threads {
        match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => return finish(pool.install(|| execute(&cli.command)), stdout, stderr),
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
        }
    }
    finish(execute(&cli.command), stdout, stderr)
}
