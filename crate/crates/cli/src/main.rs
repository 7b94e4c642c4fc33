use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;
use skewloop::synthesis::raw_helix_spec;
use skewloop::{
    compute_arc_tantrix, compute_tantrix, cone_membership, find_lattice_class, helix_arc,
    helix_loop_for_class, is_skew, is_skew_arc, realize_skew_loop, CurveFile, Error, LatticeFile,
    Tantrix, Tolerances, Unrealizable, Vector,
};

/// Skew loops in flat tori: generate, verify, realize.
#[derive(Parser)]
#[command(name = "skewloop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a helical skew loop in the class of g.
    GenHelix {
        /// Lattice element, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        /// Tube radius.
        #[arg(long)]
        r: f64,
        #[arg(long)]
        samples: usize,
        /// Use axis g itself (displacement 2πg) instead of g/2π.
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the skewness verdict of a curve; exit 0 iff skew.
    VerifySkew {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        tol_emb: Option<f64>,
    },
    /// Write the tantrix of a curve.
    Tantrix {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the cone certificate of g against a tantrix; exit 0 iff interior.
    ConeTest {
        #[arg(long)]
        tantrix: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Build a g-homotopic skew loop with the given tantrix.
    Realize {
        #[arg(long)]
        tantrix: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the classes within a coefficient radius that the tantrix realizes.
    FindClass {
        #[arg(long)]
        tantrix: PathBuf,
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        radius: usize,
    },
    /// Write `t,x1,...,xn` rows of a curve.
    PlotData {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Mathematical answer of a command that ran to completion.
enum Answer {
    Yes,
    No,
}

fn parse_vector(text: &str) -> anyhow::Result<Vector> {
    let coords = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .with_context(|| format!("bad coordinate `{s}`"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Vector::new(coords)?)
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn read_curve(path: &Path) -> anyhow::Result<CurveFile> {
    CurveFile::parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_tantrix(path: &Path) -> anyhow::Result<Tantrix> {
    Ok(read_curve(path)?.to_tantrix()?)
}

fn print_line(text: &str) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{text}")?;
    out.flush()?;
    Ok(())
}

fn print_json<S: Serialize>(value: &S) -> anyhow::Result<()> {
    print_line(&serde_json::to_string_pretty(value)?)
}

fn answer(yes: bool) -> Answer {
    if yes {
        Answer::Yes
    } else {
        Answer::No
    }
}

#[derive(Serialize)]
struct Realized<'a> {
    class: &'a skewloop::HomotopyClass,
    displacement: Vector,
    verdict: &'a skewloop::Verdict,
    certificate: &'a skewloop::Certificate,
}

fn run(cli: Cli) -> anyhow::Result<Answer> {
    let tol = Tolerances::default();
    match cli.command {
        Command::GenHelix {
            g,
            r,
            samples,
            raw,
            out,
        } => {
            let g = parse_vector(&g)?;
            let arc = if raw {
                helix_arc(&raw_helix_spec(&g, r, samples)?, &tol)?
            } else {
                helix_loop_for_class(&g, r, samples, &tol)?
            };
            write(&out, &CurveFile::from_arc(&arc).to_json())?;
            Ok(Answer::Yes)
        }
        Command::VerifySkew { curve, tol_emb } => {
            let mut tol = tol;
            if let Some(eps) = tol_emb {
                tol = tol.with_eps_emb(eps);
                tol.validate()?;
            }
            let file = read_curve(&curve)?;
            let verdict = if file.closed {
                is_skew(&file.to_loop(&tol)?, &tol)?
            } else {
                is_skew_arc(&file.to_arc(&tol)?, &tol)?
            };
            print_json(&verdict)?;
            Ok(answer(verdict.is_skew))
        }
        Command::Tantrix { curve, out } => {
            let file = read_curve(&curve)?;
            let tx = if file.closed {
                compute_tantrix(&file.to_loop(&tol)?, &tol)?
            } else {
                compute_arc_tantrix(&file.to_arc(&tol)?, &tol)?
            };
            write(&out, &CurveFile::from_tantrix(&tx).to_json())?;
            Ok(Answer::Yes)
        }
        Command::ConeTest { tantrix, g } => {
            let tx = read_tantrix(&tantrix)?;
            let cert = cone_membership(&parse_vector(&g)?, tx.dirs(), &tol)?;
            print_json(&cert)?;
            Ok(answer(cert.is_interior()))
        }
        Command::Realize {
            tantrix,
            g,
            lattice,
            out,
        } => {
            let tx = read_tantrix(&tantrix)?;
            let lattice = LatticeFile::parse(&read(&lattice)?)?.to_lattice(&tol)?;
            match realize_skew_loop(&tx, &parse_vector(&g)?, &lattice, &tol) {
                Ok(done) => {
                    write(&out, &CurveFile::from_arc(&done.arc).to_json())?;
                    print_json(&Realized {
                        class: &done.class,
                        displacement: done.arc.displacement(),
                        verdict: &done.verdict,
                        certificate: &done.certificate,
                    })?;
                    Ok(Answer::Yes)
                }
                Err(Error::NotRealizable(reason)) => {
                    print_json::<Unrealizable<f64>>(&reason)?;
                    eprintln!("not realizable: {reason}");
                    Ok(Answer::No)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::FindClass {
            tantrix,
            lattice,
            radius,
        } => {
            let tx = read_tantrix(&tantrix)?;
            let lattice = LatticeFile::parse(&read(&lattice)?)?.to_lattice(&tol)?;
            match find_lattice_class(&tx, &lattice, radius, &tol) {
                Ok(classes) => {
                    let lines: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
                    print_line(&lines.join("\n"))?;
                    Ok(Answer::Yes)
                }
                Err(e @ Error::ClassNotFound { .. }) => {
                    eprintln!("{e}");
                    Ok(Answer::No)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::PlotData { curve, out } => {
            let file = read_curve(&curve)?;
            if file.params.len() != file.samples.len() {
                bail!("params and samples differ in length");
            }
            let mut csv = String::from("t");
            for k in 1..=file.dimension {
                write!(csv, ",x{k}")?;
            }
            csv.push('\n');
            for (t, x) in file.params.iter().zip(&file.samples) {
                write!(csv, "{t:.16e}")?;
                for c in x {
                    write!(csv, ",{c:.16e}")?;
                }
                csv.push('\n');
            }
            write(&out, &csv)?;
            Ok(Answer::Yes)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Answer::Yes) => ExitCode::SUCCESS,
        Ok(Answer::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
