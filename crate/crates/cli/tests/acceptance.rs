//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines show up in plain `cargo test` output.

use std::process::ExitCode;

use logterm_cli::selftest::{run_criterion, SelftestOptions, CRITERIA};

/// Fixed seed and Monte Carlo budget for criterion 6.
const SEED: u64 = 0x5EED;
const MC_SAMPLES: u64 = 10_000_000;

fn main() -> ExitCode {
    let opts = SelftestOptions {
        seed: SEED,
        mc_samples: MC_SAMPLES,
        only: Vec::new(),
    };
    let mut failed = 0;
    for (id, _) in CRITERIA {
        let report = run_criterion(id, &opts);
        println!(
            "{} criterion {} [{}] {:.1}s: {}",
            if report.passed { "PASS" } else { "FAIL" },
            report.id,
            report.name,
            report.elapsed.as_secs_f64(),
            report.detail
        );
        if !report.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
