//! One line per acceptance criterion. Exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::Duration;

use novikov::catalog::builtin;
use novikov::degeneration::{default_schedule, NumericOptions, RunOptions};
use novikov::suite::{self, SuiteOptions};

const SEED: u64 = 0;
const DIGITS: u32 = 120;
/// Final residual bound, `10^(-TOLERANCE_EXP)`, at `t = 10^(-30)`.
const TOLERANCE_EXP: u32 = 8;
const SAMPLES: usize = 3;

fn budget(n: u8) -> Option<Duration> {
    match n {
        1 => Some(Duration::from_secs(10)),
        6 => Some(Duration::from_secs(120)),
        _ => None,
    }
}

fn main() -> ExitCode {
    let opts = SuiteOptions {
        seed: SEED,
        run: RunOptions {
            numeric: NumericOptions {
                schedule: default_schedule(),
                digits: DIGITS,
                samples: SAMPLES,
                seed: SEED,
                tolerance_exp: TOLERANCE_EXP,
            },
            cross_validate: true,
        },
    };
    let criteria = match suite::run_all(builtin(), &opts) {
        Ok(c) => c,
        Err(e) => {
            println!("acceptance: error {e}");
            return ExitCode::FAILURE;
        }
    };
    let verbose = std::env::var_os("ACCEPTANCE_VERBOSE").is_some();
    let mut all = true;
    for c in &criteria {
        let mut pass = c.pass;
        let mut time = format!("{:.2}s", c.elapsed.as_secs_f64());
        if let Some(b) = budget(c.number) {
            pass &= c.elapsed <= b;
            time.push_str(&format!(" of {}s", b.as_secs()));
        }
        all &= pass;
        println!(
            "criterion {} {}: {}: {} [{time}]",
            c.number,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            c.summary
        );
        if verbose || !c.pass {
            for d in &c.details {
                println!("    {d}");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
