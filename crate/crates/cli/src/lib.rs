pub mod commands;
pub mod context;
pub mod expr;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;

use commands::{Bounds, Command};
use report::{EXIT_INPUT, EXIT_OK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "npa", version, about = "Exact adjoint-action analysis in Weyl algebras and polynomial Poisson algebras")]
pub struct Cli {
    /// weyl:n, sympoly:n, tensor(a,b), or sympoly:n@loc=g.
    #[arg(long, global = true, default_value = "weyl:1")]
    pub algebra: String,
    /// Degree bound N of the filtration slice.
    #[arg(long = "deg", short = 'N', global = true, env = "NPA_DEFAULT_DEG", default_value_t = 6)]
    pub deg: u32,
    /// Cap M on the powers of ad_z.
    #[arg(long = "cap", short = 'M', global = true, default_value_t = 8)]
    pub cap: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Run one command per line of FILE concurrently; reports keep the file order.
    #[arg(long, value_name = "FILE")]
    pub batch: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

/// Rendered output and exit code of one command.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn input_error(msg: String) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: EXIT_INPUT,
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    if let Some(path) = &cli.batch {
        if cli.command.is_some() {
            return Outcome::input_error("--batch cannot be combined with a command".into());
        }
        return match std::fs::read_to_string(path) {
            Ok(src) => run_batch(&src, cli.format),
            Err(e) => Outcome::input_error(format!("cannot read {}: {e}", path.display())),
        };
    }
    let Some(cmd) = &cli.command else {
        return Outcome::input_error("no command given (see --help)".into());
    };
    let bounds = Bounds { n: cli.deg, m: cli.cap };
    match commands::run(cmd, &cli.algebra, &bounds) {
        Ok(report) => Outcome {
            stdout: match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            },
            stderr: String::new(),
            code: report.exit_code(),
        },
        Err(msg) => Outcome::input_error(msg),
    }
}

/// One command per nonblank line; `#` starts a comment line.
pub fn run_batch(src: &str, format: Format) -> Outcome {
    let lines: Vec<(usize, &str)> = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let outcomes: Vec<Outcome> = lines
        .par_iter()
        .map(|&(no, line)| {
            let Some(mut args) = shlex::split(line) else {
                return Outcome::input_error(format!("batch line {no}: unbalanced quotes"));
            };
            if !args.iter().any(|a| a == "--format" || a.starts_with("--format=")) {
                let f = format.to_possible_value().expect("no skipped variants");
                args.extend(["--format".to_string(), f.get_name().to_string()]);
            }
            args.insert(0, "npa".into());
            match Cli::try_parse_from(&args) {
                Ok(cli) if cli.batch.is_some() => Outcome::input_error(format!("batch line {no}: nested --batch")),
                Ok(cli) => execute(&cli),
                Err(e) => Outcome::input_error(format!("batch line {no}: {}", e.render().to_string().trim_end())),
            }
        })
        .collect();
    let code = outcomes.iter().map(|o| o.code).max().unwrap_or(EXIT_OK);
    Outcome {
        stdout: outcomes.iter().map(|o| o.stdout.as_str()).collect(),
        stderr: outcomes.iter().map(|o| o.stderr.as_str()).collect(),
        code,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn batch_keeps_order_and_worst_exit_code() {
        let src = "# comment\nclassify --expr p\n\nclassify --expr banana\ngr-check --deg 2\n";
        let out = run_batch(src, Format::Text);
        assert_eq!(out.code, EXIT_INPUT);
        let a = out.stdout.find("classify").unwrap();
        let b = out.stdout.find("gr-check").unwrap();
        assert!(a < b);
        assert!(out.stderr.contains("batch line") || out.stderr.contains("banana"));
    }

    #[test]
    fn global_flags_go_on_either_side() {
        for args in [
            &["npa", "--algebra", "sympoly:1", "--deg", "3", "gr-check"][..],
            &["npa", "gr-check", "--algebra", "sympoly:1", "--deg", "3"],
        ] {
            let cli = Cli::try_parse_from(args).unwrap();
            assert_eq!((cli.algebra.as_str(), cli.deg), ("sympoly:1", 3));
            assert_eq!(execute(&cli).code, EXIT_OK);
        }
        let cli = Cli::try_parse_from(["npa", "--batch", "x.txt", "gr-check"]).unwrap();
        assert_eq!(execute(&cli).code, EXIT_INPUT);
    }
}
