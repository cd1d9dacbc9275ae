//! The twelve acceptance criteria at the counts the spec fixes. Runs as a
//! plain binary (`harness = false`) so each criterion reports its own line.

use cubecx::verify::{self, rng, Outcome};
use std::time::Instant;

const SEED: u64 = 20240611;

fn main() {
    let start = Instant::now();
    let mut results: Vec<(u32, Outcome, f64)> = Vec::new();
    // `ids` names the criterion behind each returned outcome
    let mut run = |ids: &[u32], f: &mut dyn FnMut() -> Vec<Outcome>| {
        let t = Instant::now();
        let outs = f();
        let secs = t.elapsed().as_secs_f64() / outs.len() as f64;
        results.extend(ids.iter().zip(outs).map(|(&id, o)| (id, o, secs)));
    };

    // 1–3 share one corpus of 200 complexes; the shared seed reproduces it.
    run(&[1], &mut || vec![verify::check_cocycle_identity(&mut rng(SEED), 200, 500, 8)]);
    run(&[2, 3], &mut || {
        let (bound, six) = verify::check_support(&mut rng(SEED), 200, 500, 8);
        vec![bound, six]
    });
    run(&[4], &mut || vec![verify::check_interval_length(&mut rng(SEED + 4), 50, 6)]);
    run(&[5], &mut || vec![verify::check_product_split(&mut rng(SEED + 5), 50, 200)]);
    run(&[6], &mut || vec![verify::check_restriction(&mut rng(SEED + 6), 50, 200, 8)]);
    run(&[7], &mut || vec![verify::check_nonvanishing(&mut rng(SEED + 7), 20, 8)]);
    run(&[8], &mut || vec![verify::check_median_metric(&mut rng(SEED + 8), 100)]);
    run(&[9], &mut || vec![verify::check_balanced(&mut rng(SEED + 9), 500, 6, 48)]);
    run(&[10], &mut || vec![verify::check_tournaments(&mut rng(SEED + 10), 100)]);
    run(&[11], &mut || vec![verify::check_transfer(&mut rng(SEED + 11), 200)]);
    run(&[12], &mut || vec![verify::check_round_trip(&mut rng(SEED + 12), 100, 8)]);

    let mut failed = 0;
    for (id, o, secs) in &results {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        println!("{status} criterion {id:>2}: {} ({} cases, {secs:.2}s)", o.name, o.cases);
        if let Some(w) = &o.failure {
            failed += 1;
            println!("  {}\n{}", w.description, w.document);
        }
        if o.cases == 0 {
            failed += 1;
            println!("  no cases ran");
        }
    }
    println!("acceptance: {} checks, {failed} failed, {:.1}s", results.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
