use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use aftlab::harness::render::{eval_json, eval_text, parse_pair, semantics_json, semantics_text};
use aftlab::harness::{
    check_suite, format_reports, generate_program, suite_programs, GeneratorConfig, Law,
    StandardOperators,
};
use aftlab::lattice::DEFAULT_MAX_ATOMS;
use aftlab::{parse, run_semantics, Error, OperatorKind, Program, SemanticsKind};

const EXIT_USAGE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_LAW: u8 = 3;

#[derive(Parser)]
#[command(
    name = "aftlab",
    version,
    about = "Operators and fixpoint semantics of disjunctive programs with aggregates"
)]
struct Cli {
    /// Largest universe the enumerating solvers accept.
    #[arg(long, global = true, env = "AFTLAB_MAX_ATOMS", default_value_t = DEFAULT_MAX_ATOMS)]
    max_atoms: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator to one pair.
    Eval {
        /// Program file, or `-` for stdin.
        #[arg(long)]
        program: String,
        #[arg(long, value_parser = parse_operator)]
        operator: OperatorKind,
        /// `x;y` with comma-separated atoms on each side, e.g. `;p,q`.
        #[arg(long, allow_hyphen_values = true)]
        pair: String,
    },
    /// Compute the models of a semantics.
    Semantics {
        #[arg(long)]
        program: String,
        #[arg(long, value_parser = parse_semantics)]
        semantics: SemanticsKind,
        /// Required by the operator-based semantics.
        #[arg(long, value_parser = parse_operator)]
        operator: Option<OperatorKind>,
    },
    /// Check laws over the bundled corpus and random programs.
    Check {
        /// Comma-separated law names.
        #[arg(long, value_delimiter = ',', value_parser = parse_law, conflicts_with = "all")]
        laws: Vec<Law>,
        /// Check every law; the default when `--laws` is absent.
        #[arg(long)]
        all: bool,
        /// Number of random programs.
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Skip the bundled corpus.
        #[arg(long)]
        no_corpus: bool,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Print a random program.
    Generate {
        #[command(flatten)]
        gen: GenArgs,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 3)]
    atoms: usize,
    #[arg(long, default_value_t = 4)]
    rules: usize,
    #[arg(long, default_value_t = 0.3)]
    neg_prob: f64,
    #[arg(long, default_value_t = 0.2)]
    agg_prob: f64,
    #[arg(long, default_value_t = 2)]
    disj_width: usize,
    #[arg(long, default_value_t = 2)]
    max_body: usize,
    #[arg(long)]
    negated_aggregates: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GenArgs {
    fn config(&self) -> GeneratorConfig {
        GeneratorConfig {
            atoms: self.atoms,
            rules: self.rules,
            neg_prob: self.neg_prob,
            agg_prob: self.agg_prob,
            disj_width: self.disj_width,
            max_body: self.max_body,
            negated_aggregates: self.negated_aggregates,
            seed: self.seed,
        }
    }
}

fn parse_operator(s: &str) -> Result<OperatorKind, String> {
    s.parse()
}

fn parse_semantics(s: &str) -> Result<SemanticsKind, String> {
    s.parse()
}

fn parse_law(s: &str) -> Result<Law, String> {
    s.parse()
}

enum Failure {
    Usage(String),
    Lib(Error),
    Laws(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn load(path: &str) -> Result<Program, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?
    };
    parse(&text).map_err(|e| match e {
        Error::Parse(pe) => Failure::Lib(Error::Parse(pe)),
        other => Failure::Lib(other),
    })
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Eval {
            program,
            operator,
            pair,
        } => {
            let p = load(&program)?;
            p.universe().check_cap(cli.max_atoms)?;
            let i = parse_pair(p.universe(), &pair).map_err(|e| match e {
                Error::InvalidConfig(m) => Failure::Usage(m),
                other => Failure::Lib(other),
            })?;
            let r = operator.apply(&p, i)?;
            Ok(match cli.format {
                Format::Text => eval_text(p.universe(), &r),
                Format::Json => eval_json(p.universe(), operator, i, &r) + "\n",
            })
        }
        Command::Semantics {
            program,
            semantics,
            operator,
        } => {
            if semantics.uses_operator() && operator.is_none() {
                return Err(Failure::Usage(format!(
                    "semantics `{semantics}` needs --operator"
                )));
            }
            let p = load(&program)?;
            let r = run_semantics(semantics, operator, &p, cli.max_atoms)?;
            Ok(match cli.format {
                Format::Text => semantics_text(&r)?,
                Format::Json => semantics_json(&r)? + "\n",
            })
        }
        Command::Check {
            laws,
            all,
            count,
            no_corpus,
            gen,
        } => {
            let laws: Vec<Law> = if all || laws.is_empty() {
                Law::ALL.to_vec()
            } else {
                laws
            };
            let cfg = gen.config();
            cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let mut programs = suite_programs(&cfg, count)?;
            if no_corpus {
                programs.retain(|(origin, _)| !origin.starts_with("corpus "));
            }
            let reports = check_suite(&laws, &programs, &StandardOperators);
            let text = format_reports(&reports);
            if reports.iter().all(|r| r.passed()) {
                Ok(text)
            } else {
                Err(Failure::Laws(text))
            }
        }
        Command::Generate { gen } => {
            let cfg = gen.config();
            let p = generate_program(&cfg).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(match cli.format {
                Format::Text => p.to_string(),
                Format::Json => p.to_json() + "\n",
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_PRECONDITION)
        }
        Err(Failure::Laws(report)) => {
            print!("{report}");
            ExitCode::from(EXIT_LAW)
        }
    }
}
