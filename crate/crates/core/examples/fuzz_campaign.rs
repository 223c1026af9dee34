//! A seeded random campaign. Pass a seed and a count to vary it:
//! `cargo run --example fuzz_campaign -- 7 300`.

use chainspec::fuzz::{fuzz, FuzzConfig};

fn main() -> chainspec::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);

    let report = fuzz(&FuzzConfig::new(count, 10, seed))?;
    println!("seed {seed}: {} models", report.models);
    for (theorem, tally) in &report.tallies {
        println!(
            "  {:<20} {:>4} pass {:>4} fail {:>4} n/a",
            theorem.to_string(),
            tally.pass,
            tally.fail,
            tally.not_applicable
        );
    }
    if let Some(example) = &report.both_strict_example {
        println!("both bounds strict, e.g. {example}");
    }
    for (theorem, failure) in &report.failures {
        println!("{theorem} fails on {}", failure.model);
    }
    Ok(())
}
