mod examples;
mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use danielewski::cylinder::{
    build_theorem_phi, certify_theorem_map, embedding_equations, CylinderMap, IsoCertificate,
};
use danielewski::io::Document;
use danielewski::syntax::parse_constant;
use danielewski::verify::verify_inverse_pair;
use danielewski::{Error, GaussianRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Parser)]
#[command(
    name = "danielewski",
    version,
    about = "Exact cylinder isomorphisms between special Danielewski surfaces"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the map from S x A^1 onto {xy = P(z)} x A^1.
    Build {
        /// Surface document (JSON).
        #[arg(long)]
        spec: PathBuf,
        /// Roots of P, comma separated (default: the line labels of S).
        #[arg(long)]
        target_roots: Option<String>,
    },
    /// Re-check every claim about a stored map.
    Verify {
        #[arg(long)]
        map: PathBuf,
    },
    /// Reproduce a worked example and compare it with the known formulas.
    Examples {
        #[arg(value_enum)]
        name: examples::Example,
    },
    /// Equations of S x A^1 as a complete intersection in A^4.
    Embed {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        target_roots: Option<String>,
        /// Degree bound for the globalization search.
        #[arg(long)]
        bound: Option<u32>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. }
        | Error::Input(_)
        | Error::PreconditionViolated(_)
        | Error::NotSimpleRoot { .. }
        | Error::NotSquarefree
        | Error::DuplicateRoots
        | Error::CannotSeparate(..) => 2,
        Error::CapExceeded { .. } | Error::GlobalizationFailed(_) | Error::NotTriangular(_) => 3,
        _ => 1,
    }
}

fn certificate_code(cert: &IsoCertificate) -> u8 {
    if !cert.passed() {
        1
    } else if !cert.inconclusive.is_empty() {
        3
    } else {
        0
    }
}

fn read(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn parse_roots(list: &str) -> Result<Vec<GaussianRational>, Error> {
    list.split(',').map(|s| parse_constant(s.trim())).collect()
}

fn build(format: Format, spec: &PathBuf, target_roots: Option<&str>) -> Result<u8, Error> {
    let s = Document::from_json(&read(spec)?)?.surface()?;
    let roots = match target_roots {
        Some(r) => parse_roots(r)?,
        None => s.spec.roots.clone(),
    };
    let (map, cert) = build_theorem_phi(&s, &roots)?;
    match format {
        Format::Text => {
            print!("{}", render::theorem_text(&map));
            println!("{}", render::summary_line(&cert));
        }
        Format::Latex => print!("{}", render::theorem_latex(&map)),
        Format::Json => {
            let mut doc = Document::with_map(&CylinderMap::Theorem(map));
            doc.report = Some((&cert).into());
            print!("{}", doc.to_json());
        }
    }
    Ok(certificate_code(&cert))
}

fn verify(format: Format, path: &PathBuf) -> Result<u8, Error> {
    let doc = Document::from_json(&read(path)?)?;
    let cert = match doc.cylinder_map()? {
        CylinderMap::Theorem(t) => certify_theorem_map(&t),
        CylinderMap::AmbientPair { phi, psi, .. } => IsoCertificate {
            checks: verify_inverse_pair(&phi, &psi),
            inconclusive: Vec::new(),
        },
    };
    match format {
        Format::Text => print!("{}", render::report_text(&cert)),
        Format::Latex => print!("{}", render::report_latex(&cert)),
        Format::Json => {
            let out = Document {
                report: Some((&cert).into()),
                ..Document::new()
            };
            print!("{}", out.to_json());
        }
    }
    Ok(certificate_code(&cert))
}

fn embed(
    format: Format,
    spec: &PathBuf,
    lambda: &str,
    target_roots: Option<&str>,
    bound: Option<u32>,
) -> Result<u8, Error> {
    let s = Document::from_json(&read(spec)?)?.surface()?;
    let roots = match target_roots {
        Some(r) => parse_roots(r)?,
        None => s.spec.roots.clone(),
    };
    let lambda = parse_constant(lambda)?;
    let e = embedding_equations(&s, &roots, &lambda, bound)?;
    match format {
        Format::Text => print!("{}", render::embedding_text(&e)),
        Format::Latex => print!("{}", render::embedding_latex(&e)),
        Format::Json => {
            let doc = Document::with_surface(&s);
            let mut value = serde_json::to_value(&doc).expect("document serializes");
            value["map"] = serde_json::json!({
                "kind": "embedding",
                "lambda": e.lambda.to_string(),
                "bound": e.bound,
                "equations": e.equations.iter().map(|p| {
                    serde_json::to_value(danielewski::io::PolyJson::from(p)).expect("serializes")
                }).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("serializes"));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build { spec, target_roots } => build(cli.format, spec, target_roots.as_deref()),
        Command::Verify { map } => verify(cli.format, map),
        Command::Examples { name } => examples::run(cli.format, *name),
        Command::Embed {
            spec,
            lambda,
            target_roots,
            bound,
        } => embed(cli.format, spec, lambda, target_roots.as_deref(), *bound),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
