//! Command-line front end for the script language.
//!
//! Usage:
//!   ramify eval <file> [--json]     run a script
//!   ramify expr -e "<expr>" [--json]  evaluate one expression
//!   ramify --seed-docs [dir]        write the built-in example scripts
//!
//! Exit codes: 0 ok, 1 runtime error, 2 parse or script error,
//! 3 failed assertion.

use std::path::Path;
use std::process::ExitCode;

use ramify::script::{evaluate_with, parse, EvalError, RenderFormat};

const DEMO_SCRIPT: &str = include_str!("../scripts/demo.rmf");
const BOGOMOLOV_SCRIPT: &str = include_str!("../scripts/bogomolov.rmf");
const PUSHFORWARD_SCRIPT: &str = include_str!("../scripts/pushforward.rmf");

const USAGE: &str = "usage: ramify eval <file> [--json]
       ramify expr -e \"<expr>\" [--json]
       ramify --seed-docs [dir]";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}

fn run(args: &[String]) -> Result<(), ExitCode> {
    let mut json = false;
    let mut positional = Vec::new();
    let mut expr_source: Option<String> = None;
    let mut seed_docs = false;
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        match arg.as_str() {
            "--json" => json = true,
            "--seed-docs" => seed_docs = true,
            "-e" => match iter.next() {
                Some(source) => expr_source = Some(source.clone()),
                None => return usage_error("missing expression after -e"),
            },
            "--help" | "-h" => {
                println!("{USAGE}");
                return Ok(());
            }
            other => positional.push(other.to_string()),
        }
    }
    let format = if json {
        RenderFormat::Json
    } else {
        RenderFormat::Text
    };

    if seed_docs {
        let dir = positional.first().map(|s| &s[..]).unwrap_or(".");
        return seed(dir);
    }

    match positional.first().map(|s| &s[..]) {
        Some("eval") => {
            let Some(path) = positional.get(1) else {
                return usage_error("eval needs a script file");
            };
            let source = match std::fs::read_to_string(path) {
                Ok(source) => source,
                Err(err) => {
                    eprintln!("error: cannot read {path}: {err}");
                    return Err(ExitCode::from(1));
                }
            };
            run_source(&source, format)
        }
        Some("expr") => {
            let Some(source) = expr_source else {
                return usage_error("expr needs -e \"<expression>\"");
            };
            run_source(&format!("print {source};"), format)
        }
        Some(other) => usage_error(&format!("unknown subcommand `{other}`")),
        None => usage_error("missing subcommand"),
    }
}

fn usage_error(message: &str) -> Result<(), ExitCode> {
    eprintln!("error: {message}");
    eprintln!("{USAGE}");
    Err(ExitCode::from(2))
}

/// println that exits quietly when the consumer closes the pipe.
fn emit(line: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(err) = writeln!(stdout, "{line}") {
        if err.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {err}");
        std::process::exit(1);
    }
}

fn run_source(source: &str, format: RenderFormat) -> Result<(), ExitCode> {
    let script = match parse(source) {
        Ok(script) => script,
        Err(err) => {
            eprintln!("{err}");
            return Err(ExitCode::from(2));
        }
    };
    let result = evaluate_with(&script, |value| emit(&value.render(format)));
    match result {
        Ok(()) => Ok(()),
        Err(err @ EvalError::Static { .. }) => {
            eprintln!("{err}");
            Err(ExitCode::from(2))
        }
        Err(err @ EvalError::Runtime { .. }) => {
            eprintln!("{err}");
            Err(ExitCode::from(1))
        }
        Err(err @ EvalError::Assertion { .. }) => {
            eprintln!("{err}");
            Err(ExitCode::from(3))
        }
    }
}

fn seed(dir: &str) -> Result<(), ExitCode> {
    let scripts = [
        ("demo.rmf", DEMO_SCRIPT),
        ("bogomolov.rmf", BOGOMOLOV_SCRIPT),
        ("pushforward.rmf", PUSHFORWARD_SCRIPT),
    ];
    if let Err(err) = std::fs::create_dir_all(dir) {
        eprintln!("error: cannot create {dir}: {err}");
        return Err(ExitCode::from(1));
    }
    for (name, contents) in scripts {
        let path = Path::new(dir).join(name);
        if let Err(err) = std::fs::write(&path, contents) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return Err(ExitCode::from(1));
        }
        emit(&path.display().to_string());
    }
    Ok(())
}
