//! The `semican` command line.
//!
//! Exit codes: 0 success, 1 verification failure or invalid module, 2 input error,
//! 3 interpolation or overflow failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::ffmod::PPModule;
use crate::flagcount::{
    counting_polynomial, lambda_counting_polynomial, serre_polynomial, CountOptions,
};
use crate::quiver::Quiver;
use crate::semican::{ComponentSpec, Engine};
use crate::shuffle::{parse_product, vertices_in_expr};
use crate::verify;

#[derive(Debug, Parser)]
#[command(
    name = "semican",
    version,
    about = "Exact induction values, Serre polynomials and dual semicanonical vectors"
)]
pub struct Cli {
    /// Smallest prime used for point counting.
    #[arg(long, global = true, default_value_t = 2)]
    pub primes_floor: u64,
    /// Interpolation degree bound; the default depends on the command.
    #[arg(long, global = true)]
    pub degree_bound: Option<u32>,
    /// Most matrix tuples enumerated per prime by dim-lambda.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_enum: u64,
    /// Run on quivers with several edges between two vertices.
    #[arg(long, global = true)]
    pub allow_multi_edge: bool,
    /// One `key = value` result per line.
    #[arg(long, global = true)]
    pub machine: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the preprojective relation and nilpotency of a module file.
    CheckModule { module: PathBuf },
    /// Serre polynomial of the stable-flag variety of a word on a module.
    SerrePoly { module: PathBuf, word: String },
    /// Dimension of the incidence variety of a word, by exhaustive counting.
    DimLambda {
        /// Builtin quiver name or quiver file.
        quiver: String,
        word: String,
    },
    /// q^{-d} times the Serre polynomial for a word on a module.
    InductionValue {
        module: PathBuf,
        word: String,
        /// Use this d instead of computing it.
        #[arg(long)]
        d: Option<u32>,
    },
    /// Dual semicanonical vector of a component file.
    Delta { component: PathBuf },
    /// Expand a product of words such as "[1] o [2]".
    Shuffle {
        expr: String,
        /// Builtin quiver name or quiver file; defaults to the mentioned vertices with no arrows.
        #[arg(long)]
        quiver: Option<String>,
    },
    /// Run a bundled verification suite.
    Verify {
        #[arg(value_parser = verify::SUITES)]
        suite: String,
    },
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Interpolation(_) | Error::Overflow(_) => 3,
        _ => 2,
    }
}

struct Printer<'a> {
    out: &'a mut dyn Write,
    machine: bool,
}

impl Printer<'_> {
    /// Machine mode prints `key = value`; human mode prints `label: value`, or the bare
    /// value when the label is empty.
    fn field(&mut self, key: &str, label: &str, value: impl std::fmt::Display) -> Result<()> {
        if self.machine {
            writeln!(self.out, "{key} = {value}")?;
        } else if label.is_empty() {
            writeln!(self.out, "{value}")?;
        } else {
            writeln!(self.out, "{label}: {value}")?;
        }
        Ok(())
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn options(cli: &Cli) -> Result<CountOptions> {
    if cli.primes_floor < 2 {
        return Err(Error::Hypothesis(
            "--primes-floor must be at least 2".into(),
        ));
    }
    if cli.max_enum == 0 {
        return Err(Error::Hypothesis("--max-enum must be positive".into()));
    }
    Ok(CountOptions {
        primes_floor: cli.primes_floor,
        degree_bound: cli.degree_bound,
        max_enum: cli.max_enum,
        ..CountOptions::default()
    })
}

fn load_module(path: &std::path::Path, allow_multi_edge: bool) -> Result<PPModule> {
    let z = PPModule::from_file(path)?;
    z.quiver().ensure_simply_laced(allow_multi_edge)?;
    Ok(z)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let opts = options(cli)?;
    let engine = Engine::new(opts.clone()).allow_multi_edge(cli.allow_multi_edge);
    let mut p = Printer {
        out,
        machine: cli.machine,
    };
    match &cli.command {
        Command::CheckModule { module } => {
            let z = PPModule::from_file(module)?;
            let report = z.validate();
            if p.machine {
                let failing: Vec<&str> = report
                    .relation_failures
                    .iter()
                    .map(|&v| z.quiver().vertex_name(v))
                    .collect();
                p.field("relation_failures", "", join(failing))?;
                p.field(
                    "loewy_length",
                    "",
                    report.loewy_length.map_or("none".into(), |n| n.to_string()),
                )?;
                p.field("valid", "", report.is_valid())?;
            } else {
                write!(p.out, "{}", report.render(z.quiver()))?;
                writeln!(
                    p.out,
                    "{}",
                    if report.is_valid() { "OK" } else { "INVALID" }
                )?;
            }
            Ok(if report.is_valid() { 0 } else { 1 })
        }
        Command::SerrePoly { module, word } => {
            let z = load_module(module, cli.allow_multi_edge)?;
            let w = z.quiver().parse_word(word)?;
            let c = counting_polynomial(&z, &w, &opts)?;
            p.field("serre_polynomial", "", serre_polynomial(&c))?;
            p.field("counting_polynomial", "counting polynomial", &c)?;
            p.field(
                "sample_primes",
                "sample primes",
                join(c.samples().iter().map(|s| s.0)),
            )?;
            p.field(
                "sample_counts",
                "sample counts",
                join(c.samples().iter().map(|s| s.1)),
            )?;
            p.field(
                "held_out",
                "held-out prime",
                format!("{} (count {})", c.held_out().0, c.held_out().1),
            )?;
            Ok(0)
        }
        Command::DimLambda { quiver, word } => {
            let q = Quiver::resolve(quiver, None)?;
            q.ensure_simply_laced(cli.allow_multi_edge)?;
            let w = q.parse_word(word)?;
            let c = lambda_counting_polynomial(&q, &w, &opts)?;
            let d = c
                .degree()
                .ok_or_else(|| Error::Interpolation("incidence variety has no points".into()))?;
            p.field("d", &format!("d{}", q.render_word(&w)), d)?;
            p.field("point_count", "point count", &c)?;
            p.field(
                "sample_primes",
                "sample primes",
                join(c.samples().iter().map(|s| s.0)),
            )?;
            p.field(
                "held_out",
                "held-out prime",
                format!("{} (count {})", c.held_out().0, c.held_out().1),
            )?;
            Ok(0)
        }
        Command::InductionValue { module, word, d } => {
            let z = load_module(module, cli.allow_multi_edge)?;
            let w = z.quiver().parse_word(word)?;
            let value = engine.induction_value(&w, &z, *d)?;
            p.field("induction_value", "", value)?;
            Ok(0)
        }
        Command::Delta { component } => {
            let c = ComponentSpec::from_file(component)?;
            let bad = engine.check_cached_dimensions(&c)?;
            if let Some((w, cached, fresh)) = bad.first() {
                return Err(Error::Hypothesis(format!(
                    "cached d{} = {cached} but recomputation gives {fresh}",
                    c.quiver().render_word(w)
                )));
            }
            for (w, &d) in c.cached_dimensions() {
                engine.seed_dimension(c.quiver(), w, d);
            }
            let delta = engine.delta_vector(&c)?;
            p.field("delta", "", &delta)?;
            Ok(0)
        }
        Command::Shuffle { expr, quiver } => {
            let q = match quiver {
                Some(spec) => Quiver::resolve(spec, None)?,
                None => Quiver::new(
                    vertices_in_expr(expr),
                    Vec::<(String, String, String)>::new(),
                )?,
            };
            let product = parse_product(&Arc::new(q), expr)?;
            p.field("product", "", &product)?;
            Ok(0)
        }
        Command::Verify { suite } => {
            let checks = verify::run_suite(suite, &engine)?;
            let failed = checks.iter().filter(|c| !c.pass).count();
            for c in &checks {
                if p.machine {
                    writeln!(
                        p.out,
                        "{} = {}",
                        c.name,
                        if c.pass { "pass" } else { "fail" }
                    )?;
                } else {
                    writeln!(p.out, "{c}")?;
                }
            }
            p.field(
                "summary",
                "summary",
                format!("{} passed, {failed} failed", checks.len() - failed),
            )?;
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("semican").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn shuffle_command() {
        assert_eq!(
            run_str(&["shuffle", "[1] o [2]", "--quiver", "A2"]),
            (0, "q*[1 2] + [2 1]\n".into(), String::new())
        );
        assert_eq!(run_str(&["shuffle", "[i] o [i]"]).1, "(q^-2 + 1)*[i i]\n");
        assert_eq!(run_str(&["shuffle", "[] o [1]"]).1, "[1]\n");
        assert_eq!(
            run_str(&["--machine", "shuffle", "[] o [1]"]).1,
            "product = [1]\n"
        );
        assert_eq!(run_str(&["shuffle", "[1] o"]).0, 2);
    }

    #[test]
    fn option_validation() {
        assert_eq!(run_str(&["--primes-floor", "1", "shuffle", "[1]"]).0, 2);
        assert_eq!(run_str(&["verify", "bogus"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }
}
