//! Runs every acceptance criterion on the shipped corpus over the rationals.

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use osalg_core::field::Rationals;
use osalg_core::io::load_corpus;
use osalg_core::verify::{run_criterion, Corpus, DEFAULT_SEED};

fn main() -> ExitCode {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let files = load_corpus(&dir).expect("corpus loads");
    let corpus = Corpus::new(&Rationals, &files, DEFAULT_SEED).expect("corpus instantiates");
    let mut failed = 0;
    for id in 1..=12 {
        let start = Instant::now();
        let r = run_criterion(&corpus, id);
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        let detail = if r.detail.is_empty() { String::new() } else { format!(" ({})", r.detail) };
        println!("criterion {:2} {verdict}: {} [{:.1}s]{detail}", r.id, r.name, start.elapsed().as_secs_f64());
        if !r.passed {
            failed += 1;
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
