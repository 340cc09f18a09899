//! Command-line front end: parses a manifest, runs one command against the
//! engine, and prints a report (text or JSON twin).
//!
//! Exit codes: 0 success, 1 parse error, 2 validation error, 3 computation
//! precondition failure (for example a homotopy limit over a category with
//! loops), 4 property-verification failure.

use std::io::Read;

use clap::{Parser, Subcommand};

use hocolim_cli::dsl::{self, Command, Manifest, ParseError};
use hocolim_cli::report::{self, Extra, Report};
use hocolim_cli::verify;
use hocolim::{
    bar_simplicial, hocolim, holim, linearize, realization, smith_normal_form, ChainComplex,
    DegreeWindow, Error as EngineError, Matrix, Ring,
};

#[derive(Parser)]
#[command(
    name = "hocolim",
    version,
    about = "Exact homotopy colimits and limits of chain complexes"
)]
struct Cli {
    /// Print the structured JSON twin of the report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

const FILE_HELP: &str = "Manifest file with the definitions ('-' reads standard input)";

#[derive(Subcommand)]
enum Cmd {
    /// Execute the `cmd` directive embedded in a manifest.
    Run {
        /// Manifest file ('-' reads standard input).
        file: String,
    },
    /// Homology of a named complex on a degree window.
    Homology {
        complex: String,
        lo: i64,
        hi: i64,
        #[arg(short, long, default_value = "-", help = FILE_HELP)]
        file: String,
    },
    /// Homotopy colimit of a named diagram on a degree window.
    Hocolim {
        diagram: String,
        lo: i64,
        hi: i64,
        #[arg(short, long, default_value = "-", help = FILE_HELP)]
        file: String,
    },
    /// Homotopy limit of a named diagram on a degree window (loop-free
    /// index categories only).
    Holim {
        diagram: String,
        lo: i64,
        hi: i64,
        #[arg(short, long, default_value = "-", help = FILE_HELP)]
        file: String,
    },
    /// Realization of a linearized simplicial set on a degree window.
    Realize {
        sset: String,
        complex: String,
        lo: i64,
        hi: i64,
        #[arg(short, long, default_value = "-", help = FILE_HELP)]
        file: String,
    },
    /// Level ranks of the bar construction of a named diagram.
    Bar {
        diagram: String,
        level: usize,
        #[arg(short, long, default_value = "-", help = FILE_HELP)]
        file: String,
    },
    /// Smith normal form of an integer matrix literal, e.g. '[[2,4],[6,8]]'.
    Snf { matrix: String },
    /// Run the seeded property-verification suite.
    VerifyProps {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        trials: usize,
    },
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("{}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure { code: e.exit_code(), message: e.to_string() }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        let code = if e.is_precondition_failure() { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

fn validation(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn dispatch(cli: Cli) -> Result<i32, Failure> {
    let report = match cli.command {
        Cmd::Run { file } => {
            let manifest = load_manifest(&file)?;
            let command = manifest
                .command
                .clone()
                .ok_or_else(|| validation("manifest has no cmd directive"))?;
            execute(&manifest, &command)?
        }
        Cmd::Homology { complex, lo, hi, file } => {
            let manifest = load_manifest(&file)?;
            execute(&manifest, &Command::Homology { complex, lo, hi })?
        }
        Cmd::Hocolim { diagram, lo, hi, file } => {
            let manifest = load_manifest(&file)?;
            execute(&manifest, &Command::Hocolim { diagram, lo, hi })?
        }
        Cmd::Holim { diagram, lo, hi, file } => {
            let manifest = load_manifest(&file)?;
            execute(&manifest, &Command::Holim { diagram, lo, hi })?
        }
        Cmd::Realize { sset, complex, lo, hi, file } => {
            let manifest = load_manifest(&file)?;
            execute(&manifest, &Command::Realize { sset, complex, lo, hi })?
        }
        Cmd::Bar { diagram, level, file } => {
            let manifest = load_manifest(&file)?;
            execute(&manifest, &Command::Bar { diagram, level })?
        }
        Cmd::Snf { matrix } => {
            let rows = parse_matrix_argument(&matrix)?;
            execute(&Manifest::empty(), &Command::Snf { matrix: rows })?
        }
        Cmd::VerifyProps { seed, trials } => {
            let outcome = verify::verify_props(seed, trials);
            print!("{}", outcome.text);
            return Ok(if outcome.all_passed { 0 } else { 4 });
        }
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report.render_json()).expect("valid json"));
    } else {
        print!("{}", report.render_text());
    }
    Ok(0)
}

fn load_manifest(file: &str) -> Result<Manifest, Failure> {
    let text = if file == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| validation(format!("cannot read standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(file)
            .map_err(|e| validation(format!("cannot read {file}: {e}")))?
    };
    Ok(dsl::parse(&text)?)
}

fn parse_matrix_argument(text: &str) -> Result<Vec<Vec<num_rational::BigRational>>, Failure> {
    let manifest = dsl::parse(&format!("cmd snf {text}"))?;
    match manifest.command {
        Some(Command::Snf { matrix }) => Ok(matrix),
        _ => Err(validation("expected a matrix literal")),
    }
}

fn window(lo: i64, hi: i64) -> Result<DegreeWindow, Failure> {
    DegreeWindow::new(lo, hi).map_err(Failure::from)
}

fn execute(manifest: &Manifest, command: &Command) -> Result<Report, Failure> {
    let echo = command.to_string();
    match command {
        Command::Homology { complex, lo, hi } => {
            let c = lookup_complex(manifest, complex)?;
            let w = window(*lo, *hi)?;
            Ok(homology_report(echo, (*lo, *hi), c.homology_range(w.lo, w.hi)))
        }
        Command::Hocolim { diagram, lo, hi } => {
            let f = lookup_diagram(manifest, diagram)?;
            let w = window(*lo, *hi)?;
            let result = hocolim(f.index(), f, w)?;
            Ok(homology_report(echo, (*lo, *hi), result.homology))
        }
        Command::Holim { diagram, lo, hi } => {
            let f = lookup_diagram(manifest, diagram)?;
            let w = window(*lo, *hi)?;
            let result = holim(f.index(), f, w)?;
            Ok(homology_report(echo, (*lo, *hi), result.homology))
        }
        Command::Realize { sset, complex, lo, hi } => {
            let (_, k) = manifest
                .ssets
                .get(sset)
                .ok_or_else(|| validation(format!("undefined simplicial set {sset}")))?;
            let c = lookup_complex(manifest, complex)?;
            let w = window(*lo, *hi)?;
            let levels = match c.min_degree() {
                Some(min) => (w.hi + 1 - min).max(0) as usize,
                None => 0,
            };
            let x = linearize(k, c, levels);
            let r = realization(&x, w)?;
            Ok(homology_report(echo, (*lo, *hi), r.homology_range(w.lo, w.hi)))
        }
        Command::Bar { diagram, level } => {
            let f = lookup_diagram(manifest, diagram)?;
            let bar = bar_simplicial(f.index(), f, *level)?;
            let levels = (0..=*level)
                .map(|n| {
                    let ranks: Vec<(i64, usize)> = bar
                        .level(n)
                        .ranks()
                        .iter()
                        .map(|(&deg, &rank)| (deg, rank))
                        .collect();
                    (n, ranks)
                })
                .collect();
            Ok(Report {
                command: echo,
                window: None,
                homology: vec![],
                extra: Extra::Bar { levels },
            })
        }
        Command::Snf { matrix } => {
            let m = Matrix::from_rows(Ring::Integers, matrix.clone())
                .map_err(|e| validation(format!("matrix is not an integer matrix: {e}")))?;
            let snf = smith_normal_form(&m);
            let diagonal: Vec<String> = (0..m.rows().min(m.cols()))
                .map(|i| snf.d.entry(i, i).to_string())
                .collect();
            Ok(Report {
                command: echo,
                window: None,
                homology: vec![],
                extra: Extra::Snf { diagonal, u: snf.u, v: snf.v },
            })
        }
    }
}

fn homology_report(
    command: String,
    window: (i64, i64),
    homology: std::collections::BTreeMap<i64, hocolim::HomologyGroup>,
) -> Report {
    Report {
        command,
        window: Some(window),
        homology: homology.into_iter().collect(),
        extra: Extra::None,
    }
}

fn lookup_complex<'m>(manifest: &'m Manifest, name: &str) -> Result<&'m ChainComplex, Failure> {
    manifest
        .complexes
        .get(name)
        .ok_or_else(|| validation(format!("undefined complex {name}")))
}

fn lookup_diagram<'m>(
    manifest: &'m Manifest,
    name: &str,
) -> Result<&'m hocolim::Diagram, Failure> {
    manifest
        .diagrams
        .get(name)
        .ok_or_else(|| validation(format!("undefined diagram {name}")))
}
