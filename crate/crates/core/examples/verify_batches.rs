//! Randomized cross-checks of the two equivalences on generated machines.
//!
//!     cargo run --release --example verify_batches -- 5000 7

use goodreg::verify::{
    lemma1_batch, lemma1_exhaustive, theorem1_batch, BatchConfig, InstanceSpec, LemmaReport, Sizes,
};

fn main() -> goodreg::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|a| a.parse().ok()).unwrap_or(1000);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(0);
    let config = BatchConfig {
        trials,
        seed,
        max_sizes: Sizes::new(4, 4, 3, 3),
    };

    let lemma = lemma1_batch(&config)?;
    println!("closed vs consistent: {:?}", lemma.tally);

    let theorem = theorem1_batch(&config)?;
    println!("regulator vs subjective regulator: {:?}", theorem.tally);
    println!("  forward-closed component: {:?}", theorem.forward_closed);
    println!("  non-empty component:      {:?}", theorem.non_empty);
    println!("  containment component:    {:?}", theorem.contained);

    // Every subset of a 3x3 instance.
    let mut all = LemmaReport::default();
    lemma1_exhaustive(InstanceSpec::new(Sizes::new(3, 3, 2, 2), seed), &mut all)?;
    println!("exhaustive 3x3: {:?}", all.tally);

    if let Some(c) = lemma.counterexample.or(theorem.counterexample) {
        println!("counterexample: {}", serde_json::to_string(&c).unwrap());
        std::process::exit(1);
    }
    Ok(())
}
