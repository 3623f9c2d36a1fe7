//! Command-line front end: `invariants`, `family`, `newton` and `section`
//! subcommands over the singlab library. JSON reports go to stdout,
//! diagnostics to stderr. Exit codes: 0 ok, 1 usage or parse error,
//! 2 non-isolated singularity, 3 non-convenient support without
//! `--stabilize`.

// error values carry exact big integers; the fallible paths are cold
#![allow(clippy::result_large_err)]

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use singlab::family::{analyze_family, DeformationFamily, FamilyOptions};
use singlab::invariants::{analyze, section_milnor, section_milnor_random, AnalyzeOptions};
use singlab::newton::{gamma_minus_volumes, newton_complex, newton_number_stabilized};
use singlab::{parse_poly, Error, HyperplaneSpec, Polynomial};
use singlab_cli::report;
use singlab_cli::report::{
    InputEcho, InvariantsDoc, NewtonDoc, RandomSectionDoc, ReportDocument, SectionDoc,
};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "singlab",
    version,
    about = "Exact singularity invariants: Newton polyhedra, Milnor numbers, deformation verdicts"
)]
struct Cli {
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
    /// Fuller per-germ report: mu, nu, multiplicity, non-degeneracy.
    Invariants {
        /// Polynomial text, e.g. "x^5 + y^6 + z^5 + y^3*z^2"
        #[arg(long)]
        poly: String,
        /// Comma-separated variable names in order, e.g. x,y,z
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Run both Milnor routes and cross-check them
        #[arg(long)]
        verify: bool,
        /// Cap for the Macaulay truncation degree
        #[arg(long)]
        nmax: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// One-parameter deformation analysis with the triviality verdict.
    Family {
        #[arg(long)]
        poly: String,
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Name of the deformation parameter
        #[arg(long)]
        param: String,
        /// Number of nonzero parameter samples
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        nmax: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Newton polyhedron summary: vertices, faces, volumes, Newton number.
    Newton {
        #[arg(long)]
        poly: String,
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Allow non-convenient supports by axis stabilization
        #[arg(long)]
        stabilize: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Milnor number of a hyperplane section, e.g. --hyperplane "z=0".
    Section {
        #[arg(long)]
        poly: String,
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// "z=0" or "z=a*x+b*y" with rational coefficients
        #[arg(long)]
        hyperplane: String,
        /// Also minimize over this many seeded random hyperplanes
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        nmax: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not errors
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotIsolated { .. } | Error::StabilizationFailed { .. } => 2,
        Error::NotConvenient => 3,
        _ => 1,
    }
}

fn run(command: Command) -> Result<(), Error> {
    let start = Instant::now();
    let (mut doc, format) = match command {
        Command::Invariants {
            poly,
            vars,
            verify,
            nmax,
            format,
        } => {
            let f = parse_poly(&poly, &vars, None)?;
            let report = analyze(
                &f,
                &AnalyzeOptions {
                    verify,
                    oracle_cap: nmax,
                },
            )?;
            let mut doc = ReportDocument::new(
                "invariants",
                InputEcho {
                    poly,
                    vars,
                    param: None,
                },
            );
            doc.invariants = Some(InvariantsDoc::from(&report));
            (doc, format)
        }
        Command::Family {
            poly,
            vars,
            param,
            samples,
            seed,
            verify,
            nmax,
            format,
        } => {
            let f = parse_poly(&poly, &vars, Some(&param))?;
            let fam = DeformationFamily::new(f)?;
            let report = analyze_family(
                &fam,
                &FamilyOptions {
                    samples,
                    seed,
                    verify,
                    oracle_cap: nmax,
                },
            )?;
            let mut doc = ReportDocument::new(
                "family",
                InputEcho {
                    poly,
                    vars,
                    param: Some(param),
                },
            );
            doc.family = Some((&report).into());
            (doc, format)
        }
        Command::Newton {
            poly,
            vars,
            stabilize,
            format,
        } => {
            let f = parse_poly(&poly, &vars, None)?;
            let support = f.support();
            let complex = newton_complex(&support)?;
            if !complex.convenient && !stabilize {
                return Err(Error::NotConvenient);
            }
            let stab = newton_number_stabilized(&support)?;
            let volumes = if complex.convenient {
                Some(gamma_minus_volumes(&support)?)
            } else {
                None
            };
            let mut doc = ReportDocument::new(
                "newton",
                InputEcho {
                    poly,
                    vars,
                    param: None,
                },
            );
            doc.newton = Some(NewtonDoc::build(&complex, volumes.as_ref(), &stab));
            (doc, format)
        }
        Command::Section {
            poly,
            vars,
            hyperplane,
            random,
            seed,
            nmax,
            format,
        } => {
            let f = parse_poly(&poly, &vars, None)?;
            let spec = parse_hyperplane(&hyperplane, &vars)?;
            let mu = section_milnor(&f, &spec, nmax)?;
            let random_doc = match random {
                Some(k) if k > 0 => {
                    let r = section_milnor_random(&f, spec.var, k, seed, nmax)?;
                    Some(RandomSectionDoc::build(&r, seed))
                }
                _ => None,
            };
            let mut doc = ReportDocument::new(
                "section",
                InputEcho {
                    poly,
                    vars,
                    param: None,
                },
            );
            doc.section = Some(SectionDoc {
                hyperplane,
                mu,
                random: random_doc,
                note: "explicit-hyperplane section; generic-section invariants are \
                       approximated by the --random minimum"
                    .to_string(),
            });
            (doc, format)
        }
    };
    doc.timing_ms = start.elapsed().as_millis() as u64;

    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("report serializes")
        ),
        Format::Text => print!("{}", report::render_text(&doc)),
    }
    Ok(())
}

/// Parse `"z=0"` or `"z = 2*x - 1/3*y"` against the declared variables.
/// The right-hand side is parsed as a polynomial and must be linear in the
/// surviving variables.
fn parse_hyperplane(text: &str, vars: &[String]) -> Result<HyperplaneSpec, Error> {
    let Some((lhs, rhs)) = text.split_once('=') else {
        return Err(Error::Syntax {
            pos: 0,
            message: "hyperplane must have the form `var = linear form`".into(),
        });
    };
    let name = lhs.trim();
    let Some(var) = vars.iter().position(|v| v == name) else {
        return Err(Error::UnknownIdentifier {
            pos: 0,
            name: name.to_string(),
        });
    };
    let rhs_poly: Polynomial = parse_poly(rhs.trim(), vars, None)?;
    let mut coeffs = vec![BigRational::zero(); vars.len()];
    for (ev, c) in rhs_poly.terms() {
        if ev.total_degree() != 1 {
            return Err(Error::Syntax {
                pos: 0,
                message: "hyperplane right-hand side must be linear with no constant term".into(),
            });
        }
        let j = ev.entries().iter().position(|&e| e == 1).unwrap();
        if j == var {
            return Err(Error::Syntax {
                pos: 0,
                message: format!("hyperplane for `{name}` cannot use `{name}` on the right"),
            });
        }
        coeffs[j] = c.as_scalar().expect("no parameter was declared");
    }
    HyperplaneSpec::new(var, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn hyperplane_parsing() {
        let v = vars(&["x", "y", "z"]);
        let h = parse_hyperplane("z=0", &v).unwrap();
        assert_eq!(h.var, 2);
        assert!(h.coeffs.iter().all(|c| c.is_zero()));

        let h = parse_hyperplane("z = 2*x - 1/3*y", &v).unwrap();
        assert_eq!(h.var, 2);
        assert_eq!(h.coeffs[0], BigRational::from_integer(2.into()));
        assert_eq!(h.coeffs[1], BigRational::new((-1).into(), 3.into()));

        assert!(parse_hyperplane("w=0", &v).is_err());
        assert!(parse_hyperplane("z=x^2", &v).is_err());
        assert!(parse_hyperplane("z=z", &v).is_err());
        assert!(parse_hyperplane("z", &v).is_err());
    }
}
