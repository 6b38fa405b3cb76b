//! One line per acceptance criterion.

use std::time::Instant;

use mvgrass::check::{run, CRITERIA};

const SEED: u64 = 20240917;

fn main() {
    let mut failed = Vec::new();
    for id in CRITERIA {
        let start = Instant::now();
        let line = match run(id, SEED) {
            Ok(r) => {
                let status = if r.passed { "PASS" } else { "FAIL" };
                if !r.passed {
                    failed.push(id);
                }
                let witness = r
                    .witness
                    .map(|w| format!(" witness: {w}"))
                    .unwrap_or_default();
                format!(
                    "{status} criterion {id:>2} [{}] cases={} {}{witness}",
                    r.name, r.cases, r.detail
                )
            }
            Err(e) => {
                failed.push(id);
                format!("FAIL criterion {id:>2} error: {e}")
            }
        };
        println!("{line} ({:.1}s)", start.elapsed().as_secs_f64());
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
