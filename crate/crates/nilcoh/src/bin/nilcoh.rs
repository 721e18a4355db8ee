//! Command-line front end.
//!
//! INPUT arguments take either a path to an algebra JSON file or
//! `catalog:NAME` for a built-in. Exit codes: 0 success, 1 usage or
//! parse problems (bad flags, unreadable files, malformed JSON or
//! expressions, unknown catalog names), 2 structurally invalid
//! algebras (Jacobi violations), 3 requests the tool refuses on
//! mathematical grounds (odd-dimensional symplectic questions,
//! oversized oracle searches).

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;

use nilcoh::bounds;
use nilcoh::catalog;
use nilcoh::ce_complex::CEComplex;
use nilcoh::cohomology::CohomologyRing;
use nilcoh::error::{Error, Result};
use nilcoh::invariants;
use nilcoh::io;
use nilcoh::lie::LieAlgebra;

#[derive(Parser)]
#[command(
    name = "nilcoh",
    version,
    about = "Exact cohomology of rational Lie algebras, cup-lengths, and \
             closed-orbit bounds for symplectic nilmanifolds"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate an algebra and classify it
    Check {
        /// Path to an algebra JSON file, or catalog:NAME
        input: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Betti numbers, Euler characteristic, and representatives
    Cohomology {
        input: String,
        /// Highest degree to report (defaults to the top dimension)
        #[arg(long)]
        max_degree: Option<usize>,
        /// Include representative cocycles per degree
        #[arg(long)]
        reps: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Cup-length of the cohomology ring, with a witness product
    CupLength {
        input: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Cohomological symplecticness (even dimensions only)
    Symplectic {
        input: String,
        /// Show the witness class and its top power
        #[arg(long)]
        witness: bool,
        /// Verify a specific degree-2 expression, e.g. "e1^e4 + e2^e3"
        #[arg(long, value_name = "EXPR")]
        verify: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Closed-orbit lower bounds with a checkable derivation chain
    Bounds {
        input: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Built-in algebras
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List available names
    List,
    /// Print an entry as algebra JSON
    Show { name: String },
    /// Write an entry to a file as algebra JSON
    Export { name: String, file: PathBuf },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        let code = match err {
            Error::Jacobi { .. } => 2,
            Error::Unsupported(_) => 3,
            _ => 1,
        };
        std::process::exit(code);
    }
}

fn load_algebra(input: &str) -> Result<LieAlgebra> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return catalog::lookup(name);
    }
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::Input(format!("cannot read {input}: {e}")))?;
    io::algebra_from_json(&text)
}

fn ring_for(algebra: &LieAlgebra) -> Result<CohomologyRing> {
    algebra.validate()?;
    CohomologyRing::new(CEComplex::build(algebra.clone())?)
}

fn display_name(algebra: &LieAlgebra) -> &str {
    let name = algebra.name();
    if name.is_empty() {
        "(unnamed)"
    } else {
        name
    }
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Check { input, format } => cmd_check(&input, format),
        Cmd::Cohomology {
            input,
            max_degree,
            reps,
            format,
        } => cmd_cohomology(&input, max_degree, reps, format),
        Cmd::CupLength { input, format } => cmd_cup_length(&input, format),
        Cmd::Symplectic {
            input,
            witness,
            verify,
            format,
        } => cmd_symplectic(&input, witness, verify.as_deref(), format),
        Cmd::Bounds { input, format } => cmd_bounds(&input, format),
        Cmd::Catalog { action } => cmd_catalog(action),
    }
}

fn cmd_check(input: &str, format: Format) -> Result<()> {
    let algebra = load_algebra(input)?;
    let report = algebra.classify()?;
    match format {
        Format::Json => {
            let doc = json!({
                "name": algebra.name(),
                "dim": algebra.dim(),
                "valid": true,
                "classification": serde_json::to_value(&report)
                    .map_err(|e| Error::Internal(e.to_string()))?,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Text => {
            println!("name: {}", display_name(&algebra));
            println!("dim: {}", algebra.dim());
            println!("valid: yes (jacobi identity holds)");
            println!("abelian: {}", yesno(report.is_abelian));
            println!(
                "nilpotent: {} (lower central series {})",
                yesno(report.is_nilpotent),
                dims(&report.lower_central_series)
            );
            println!(
                "solvable: {} (derived series {})",
                yesno(report.is_solvable),
                dims(&report.derived_series)
            );
            println!(
                "real spectrum on basis: {}",
                yesno(report.real_spectrum_on_basis)
            );
            println!(
                "completely solvable flag: {}",
                if report.completely_solvable.is_some() {
                    "found"
                } else {
                    "not found"
                }
            );
        }
    }
    Ok(())
}

fn dims(series: &[usize]) -> String {
    series
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_cohomology(
    input: &str,
    max_degree: Option<usize>,
    reps: bool,
    format: Format,
) -> Result<()> {
    let algebra = load_algebra(input)?;
    let ring = ring_for(&algebra)?;
    let n = ring.dim();
    let top = max_degree.unwrap_or(n).min(n);
    let betti: Vec<usize> = (0..=top).map(|k| ring.betti(k)).collect();
    let rep_strings: Vec<Vec<String>> = (0..=top)
        .map(|k| {
            ring.representatives(k)
                .iter()
                .map(|e| e.to_string())
                .collect()
        })
        .collect();
    match format {
        Format::Json => {
            let mut doc = json!({
                "name": algebra.name(),
                "dim": n,
                "max_degree": top,
                "betti": betti,
                "euler_characteristic": ring.euler_characteristic(),
                "poincare_duality": ring.poincare_duality_holds(),
            });
            if reps {
                doc["representatives"] = json!(rep_strings);
            }
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Text => {
            println!("name: {}", display_name(&algebra));
            println!("dim: {n}");
            println!("betti: {}", dims(&betti));
            println!("euler characteristic: {}", ring.euler_characteristic());
            println!(
                "poincare duality: {}",
                yesno(ring.poincare_duality_holds())
            );
            if reps {
                for (k, degree_reps) in rep_strings.iter().enumerate() {
                    println!("H^{k}: {}", degree_reps.join(", "));
                }
            }
        }
    }
    Ok(())
}

fn cmd_cup_length(input: &str, format: Format) -> Result<()> {
    let algebra = load_algebra(input)?;
    let ring = ring_for(&algebra)?;
    let result = invariants::cup_length(&ring)?;
    let witness: Vec<String> = result
        .witness
        .iter()
        .map(|c| ring.class_to_string(c))
        .collect();
    match format {
        Format::Json => {
            let doc = json!({
                "name": algebra.name(),
                "dim": ring.dim(),
                "cup_length": result.cup_length,
                "witness": witness,
                "witness_product": ring.class_to_string(&result.witness_product),
                "spans_by_stage": result.spans_by_stage,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Text => {
            println!("name: {}", display_name(&algebra));
            println!("cup-length: {}", result.cup_length);
            println!("witness: {}", witness.join(" * "));
            println!(
                "witness product: {}",
                ring.class_to_string(&result.witness_product)
            );
            println!("spans by stage: {}", dims(&result.spans_by_stage));
        }
    }
    Ok(())
}

fn cmd_symplectic(
    input: &str,
    witness: bool,
    verify: Option<&str>,
    format: Format,
) -> Result<()> {
    let algebra = load_algebra(input)?;
    let ring = ring_for(&algebra)?;
    let result = invariants::is_cohomologically_symplectic(&ring)?;
    let verdict = match verify {
        None => None,
        Some(expr) => {
            let elem = io::parse_class_expression(ring.dim(), expr)?;
            Some((expr.to_string(), invariants::verify_class(&ring, &elem)?))
        }
    };
    match format {
        Format::Json => {
            let mut doc = json!({
                "name": algebra.name(),
                "dim": ring.dim(),
                "m": ring.dim() / 2,
                "is_cohomologically_symplectic": result.is_cohomologically_symplectic,
                "witness": result.witness.as_ref().map(|c| ring.class_to_string(c)),
                "top_power": result.top_power.as_ref().map(|c| ring.class_to_string(c)),
            });
            if let Some((expr, v)) = &verdict {
                doc["verified"] = json!({
                    "expression": expr,
                    "closed": v.closed,
                    "exact": v.exact,
                    "symplectic": v.symplectic,
                    "top_power": v.top_power.as_ref().map(|c| ring.class_to_string(c)),
                    "differential": v.differential,
                });
            }
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        Format::Text => {
            println!("name: {}", display_name(&algebra));
            println!("dim: {} (m = {})", ring.dim(), ring.dim() / 2);
            println!(
                "cohomologically symplectic: {}",
                yesno(result.is_cohomologically_symplectic)
            );
            if witness {
                match (&result.witness, &result.top_power) {
                    (Some(w), Some(t)) => {
                        println!("witness: {}", ring.class_to_string(w));
                        println!("top power: {}", ring.class_to_string(t));
                    }
                    _ => println!("witness: none"),
                }
            }
            if let Some((expr, v)) = &verdict {
                println!("verify {expr}:");
                println!("  closed: {}", yesno(v.closed));
                if v.closed {
                    println!("  exact: {}", yesno(v.exact));
                    println!("  symplectic: {}", yesno(v.symplectic));
                    if let Some(t) = &v.top_power {
                        println!("  top power: {}", ring.class_to_string(t));
                    }
                } else if let Some(d) = &v.differential {
                    println!("  d = {d}");
                }
            }
        }
    }
    Ok(())
}

fn cmd_bounds(input: &str, format: Format) -> Result<()> {
    let algebra = load_algebra(input)?;
    let report = bounds::full_report(&algebra)?;
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report)
                    .map_err(|e| Error::Internal(e.to_string()))?
            );
        }
        Format::Text => {
            println!("name: {}", report.name);
            println!("manifold dim: {}", report.manifold_dim);
            println!("betti: {}", dims(&report.betti));
            println!("nilpotent: {}", yesno(report.nilpotent));
            println!(
                "completely solvable certified: {}",
                yesno(report.completely_solvable_certified)
            );
            println!("cup-length: {}", report.cup_length);
            println!(
                "cup-length witness: {}",
                report.cup_length_witness.join(" * ")
            );
            match report.cat_manifold {
                Some(c) => println!("cat(manifold): {c}"),
                None => println!("cat(manifold): not certified"),
            }
            println!(
                "cohomologically symplectic: {}",
                yesno(report.cohomologically_symplectic)
            );
            if let Some(w) = &report.symplectic_witness {
                println!("symplectic witness: {w}");
            }
            if let Some(t) = &report.symplectic_top_power {
                println!("symplectic top power: {t}");
            }
            println!(
                "symplectically aspherical: {}",
                match report.aspherical {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "undecided",
                }
            );
            if let Some(s) = report.swgt_omega {
                println!("swgt(omega) >= {s}");
            }
            if let Some(c) = report.cat_total_space_bound {
                println!("cat-type bound for the level: {c}");
            }
            match report.orbit_bound_kerman {
                Some(k) => println!("orbit bound (cup-length route): {k}"),
                None => println!("orbit bounds: not applicable"),
            }
            if let Some(a) = report.orbit_bound_aspherical {
                println!("orbit bound (aspherical route): {a}");
            }
            if let Some(s) = report.stronger_bound {
                println!(
                    "stronger bound: {}",
                    match s {
                        bounds::StrongerBound::Kerman => "cup-length route",
                        bounds::StrongerBound::Aspherical => "aspherical route",
                        bounds::StrongerBound::Equal => "equal",
                    }
                );
            }
            if !report.steps.is_empty() {
                println!("derivation:");
                for (i, s) in report.steps.iter().enumerate() {
                    let bound = s
                        .bound
                        .map(|b| format!(" [>= {b}]"))
                        .unwrap_or_default();
                    println!("  {i}. ({}) {}{bound}", s.citation, s.statement);
                }
            }
            println!("convention: {}", report.cat_convention);
        }
    }
    Ok(())
}

fn cmd_catalog(action: CatalogCmd) -> Result<()> {
    match action {
        CatalogCmd::List => {
            for (name, description) in catalog::descriptions() {
                println!("{name:20} {description}");
            }
            Ok(())
        }
        CatalogCmd::Show { name } => {
            let algebra = catalog::lookup(&name)?;
            print!("{}", io::algebra_to_json(&algebra));
            Ok(())
        }
        CatalogCmd::Export { name, file } => {
            let algebra = catalog::lookup(&name)?;
            std::fs::write(&file, io::algebra_to_json(&algebra))
                .map_err(|e| Error::Input(format!("cannot write {}: {e}", file.display())))?;
            println!("wrote {}", file.display());
            Ok(())
        }
    }
}
