//! Runs every acceptance check and prints one PASS/FAIL line per check.
//!
//! Exits nonzero if any check fails for a reason other than the odd-cycle
//! claim below, which exhaustive search refutes.

use std::process::ExitCode;

use parcol::bounds::ceil_lg;
use parcol::experiment::{run, IDS};
use parcol::graph::{generate, Family};
use parcol::oracle::min_colors_exhaustive;

/// The expected p(C_n) = ⌈lg n⌉ for odd n is false: exhaustive search gives
/// ⌈lg n⌉ + 1. A failure is explained when it names an odd cycle and the
/// computed value is the exhaustive one.
fn refuted_odd_cycle_claim(failure: &str) -> bool {
    let Some(rest) = failure.strip_prefix("C_") else { return false };
    let Some((n, rest)) = rest.split_once(": p = ") else { return false };
    let Some((got, _)) = rest.split_once(',') else { return false };
    let (Ok(n), Ok(got)) = (n.parse::<usize>(), got.parse::<usize>()) else { return false };
    if n % 2 == 0 {
        return false;
    }
    let (p, _) = min_colors_exhaustive(&generate(Family::Cycle(n)).expect("cycle"));
    p == got && p == ceil_lg(n as u64) as usize + 1
}

fn main() -> ExitCode {
    let mut unexplained = 0;
    for id in IDS {
        let report = run(id, 0).expect("known experiment");
        println!("{}", report.line());
        for f in &report.failures {
            let known = refuted_odd_cycle_claim(f);
            println!("    {f}{}", if known { " (refuted by exhaustive search)" } else { "" });
            if !known {
                unexplained += 1;
            }
        }
    }
    if unexplained == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexplained} unexplained failures");
        ExitCode::FAILURE
    }
}
