use std::panic;
use std::process::ExitCode;

use tallini::error::Error;
use tallini::report::{parse_spec, run_report};

const USAGE: &str = "usage: tallini <command> [--q N] [--a N --b N --c N] [--p N] [--i N]
               [--trials N] [--budget MS] [--spec FILE] [--output FILE] [--timing]
commands: verify-tallini equivalence semigroup divisors automorphisms quotient hasse-witt all";

fn run(argv: &[String]) -> Result<u8, String> {
    let job = parse_spec(argv).map_err(|e| match e {
        Error::Usage(m) => format!("{m}\n{USAGE}"),
        e => e.to_string(),
    })?;
    let report = run_report(&job).map_err(|e| e.to_string())?;
    let text = report.render(job.timing);
    match &job.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    if argv.iter().any(|a| a == "--help" || a == "-h") {
        println!("{USAGE}");
        return ExitCode::SUCCESS;
    }
    panic::set_hook(Box::new(|_| {}));
    match panic::catch_unwind(|| run(&argv)) {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
