//! `rotalg`: command-line front end for the rotation-algebra engine.
//!
//! Exit codes: 0 on success, 1 when a verification run finds a failing
//! check (the witness is printed), 2 on usage errors (bad flags, malformed
//! elements or specs, a matrix that is not unimodular).

use clap::{Args, Parser, Subcommand};

use rotalg::prlab::PrProjection;
use rotalg::trace::{modular_trace_table, rep_matrix, s3_representative, S3Word};
use rotalg::verify::Suite;
use rotalg::{chern_character, parse_element, parse_spec, ModularMatrix, NcElement};

#[derive(Parser)]
#[command(
    name = "rotalg",
    version,
    about = "Exact computations in the rotation algebra and its flip orbifold"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct MatrixArgs {
    /// Matrix entry a (the matrix acts by columns: first column a, b)
    #[arg(short = 'a', allow_negative_numbers = true)]
    a: i64,
    /// Matrix entry b
    #[arg(short = 'b', allow_negative_numbers = true)]
    b: i64,
    /// Matrix entry c (second column: c, d)
    #[arg(short = 'c', allow_negative_numbers = true)]
    c: i64,
    /// Matrix entry d
    #[arg(short = 'd', allow_negative_numbers = true)]
    d: i64,
}

impl MatrixArgs {
    fn build(&self) -> Result<ModularMatrix, CliError> {
        ModularMatrix::new(self.a, self.b, self.c, self.d).map_err(|_| {
            let det = self.a * self.d - self.b * self.c;
            CliError::usage(format!("determinant must be 1, got {det}"))
        })
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"a": self.a, "b": self.b, "c": self.c, "d": self.d})
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Trace-functional pullback table of a unimodular matrix action
    Table {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Which of the six words a matrix action acts like on the functionals
    S3 {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        json: bool,
    },
    /// Matrix of an automorphism acting on the trace functionals
    Repmat {
        /// Automorphism spec, e.g. "sigma.kappa" or "mod(0,-1,1,0)"
        #[arg(long)]
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Apply an automorphism to an element
    Apply {
        #[arg(long)]
        spec: String,
        /// Element expression, e.g. "U V + t^2 U^-1 V^-1"
        #[arg(long)]
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// Images of an element under all six words
    Orbit {
        #[arg(long)]
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// Chern character (tau and the four parity functionals) of an element
    Chern {
        #[arg(long)]
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// Build a candidate flip-invariant projection and report on it
    Pr {
        /// Rotation parameter in (0, 1)
        #[arg(long)]
        theta: f64,
        /// Trace target in (0, 1/2); must be frac(n*theta) for small n
        #[arg(long)]
        theta_prime: f64,
        /// Sampling grid size (a power of two)
        #[arg(long, default_value_t = 1 << 14)]
        grid: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite
    Verify {
        /// One of: ring, auto, traces, lemma21, oracle, pr, all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
    },
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError { code: 2, message: message.into() }
    }

    fn failed(message: impl Into<String>) -> CliError {
        CliError { code: 1, message: message.into() }
    }
}

impl From<rotalg::ParseError> for CliError {
    fn from(e: rotalg::ParseError) -> CliError {
        CliError::usage(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

fn element_json(x: &NcElement) -> serde_json::Value {
    serde_json::json!({"display": x.to_string(), "terms": x.to_json()})
}

fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Table { matrix, json } => {
            let mat = matrix.build()?;
            let table = modular_trace_table(&mat);
            if json {
                println!(
                    "{}",
                    serde_json::json!({"matrix": matrix.to_json(), "table": table.to_json()})
                );
            } else {
                println!("matrix {mat}");
                print!("{table}");
            }
            Ok(())
        }
        Cmd::S3 { matrix, json } => {
            let mat = matrix.build()?;
            let word = s3_representative(&mat);
            let table = modular_trace_table(&mat);
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "matrix": matrix.to_json(),
                        "s3": word.label(),
                        "permutation": table.permutation_string(),
                    })
                );
            } else {
                match table.permutation_string() {
                    Some(p) => println!("{} ({p})", word.label()),
                    None => println!("{}", word.label()),
                }
            }
            Ok(())
        }
        Cmd::Repmat { spec, json } => {
            let parsed = parse_spec(&spec)?;
            let rep = rep_matrix(&parsed).map_err(|e| CliError::usage(e.to_string()))?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({"spec": spec, "matrix": rep.to_json()})
                );
            } else {
                println!("action of {parsed} on (phi01, phi10, phi11):");
                for row in rep.three() {
                    println!("  [{}]", join_rationals(row));
                }
                println!("det = {}", rep.det_three());
                println!("extended to (phi00, phi01, phi10, phi11):");
                for row in rep.extended() {
                    println!("  [{}]", join_rationals(row));
                }
                println!("det = {}", rep.det_extended());
            }
            Ok(())
        }
        Cmd::Apply { spec, element, json } => {
            let parsed_spec = parse_spec(&spec)?;
            let x = parse_element(&element)?;
            let image = parsed_spec
                .apply(&x)
                .map_err(|e| CliError::usage(e.to_string()))?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "spec": spec,
                        "element": x.to_string(),
                        "image": element_json(&image),
                    })
                );
            } else {
                println!("{image}");
            }
            Ok(())
        }
        Cmd::Orbit { element, json } => {
            let x = parse_element(&element)?;
            let mut rows = Vec::new();
            for word in S3Word::ALL {
                let image = word
                    .spec()
                    .apply(&x)
                    .map_err(|e| CliError::usage(e.to_string()))?;
                rows.push((word.label(), image));
            }
            if json {
                let items: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(label, image)| {
                        serde_json::json!({"word": label, "image": element_json(image)})
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({"element": x.to_string(), "orbit": items})
                );
            } else {
                for (label, image) in rows {
                    println!("{label}: {image}");
                }
            }
            Ok(())
        }
        Cmd::Chern { element, json } => {
            let x = parse_element(&element)?;
            let character = chern_character(&x).map_err(|e| CliError::usage(e.to_string()))?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "element": x.to_string(),
                        "character": character.to_json(),
                    })
                );
            } else {
                println!("{character}");
            }
            Ok(())
        }
        Cmd::Pr { theta, theta_prime, grid, json } => {
            let projection = PrProjection::build(theta, theta_prime, grid)
                .map_err(|e| CliError::usage(e.to_string()))?;
            let report = projection
                .report_json()
                .map_err(|e| CliError::failed(e.to_string()))?;
            if json {
                println!("{report}");
            } else {
                let res = projection.identities();
                println!(
                    "band power {} (effective rotation {:.12})",
                    projection.v_power(),
                    projection.theta_eff()
                );
                println!("identity residuals:");
                println!("  orthogonal bands    {:.3e}", res.orthogonal_bands);
                println!("  partition of unity  {:.3e}", res.partition_of_unity);
                println!("  diagonal balance    {:.3e}", res.diagonal_balance);
                println!("  flip symmetry       {:.3e}", res.flip_symmetry);
                println!("  adjoint symmetry    {:.3e}", res.adjoint_symmetry);
                let ch = projection
                    .character()
                    .map_err(|e| CliError::failed(e.to_string()))?;
                println!("{ch}");
            }
            Ok(())
        }
        Cmd::Verify { suite, json } => {
            let suites = Suite::parse(&suite)
                .ok_or_else(|| CliError::usage(format!("unknown suite '{suite}'")))?;
            let reports: Vec<_> = suites.iter().map(|s| s.run()).collect();
            let all_ok = reports.iter().all(|r| r.ok());
            if json {
                let items: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
                println!("{}", serde_json::json!({"ok": all_ok, "suites": items}));
            } else {
                for r in &reports {
                    print!("{r}");
                }
            }
            if all_ok {
                Ok(())
            } else {
                Err(CliError::failed("verification failed; see check output above"))
            }
        }
    }
}

fn join_rationals<T: ToString>(row: &[T]) -> String {
    row.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
