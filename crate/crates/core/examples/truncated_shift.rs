//! The truncated shift on three basis vectors, end to end: induced system,
//! Δ ladder, predicted chains, brute-force atoms and the equality check.

use chainspec::oracle::character_sequences;
use chainspec::verify::verify_equality;
use chainspec::{delta_ladder, induced_system, predicted_spectrum, samples};

fn main() -> chainspec::Result<()> {
    let model = samples::truncated_shift();
    let pds = induced_system(&model)?;
    let ladder = delta_ladder(&pds);

    for n in 0..=ladder.stab_forward() {
        println!("Δ_{n}  = {}", pds.format_set(ladder.delta(n)));
    }
    for n in 1..=ladder.stab_backward() {
        println!("Δ_-{n} = {}", pds.format_set(ladder.delta_neg(n)));
    }

    let spectrum = predicted_spectrum(&pds, &ladder);
    for (n, family) in &spectrum.hat {
        for chain in family {
            println!("M̂_{n} ∋ {}", chain.format(&pds));
        }
    }

    let oracle = character_sequences(&model)?;
    for (atom, seq) in oracle.iter() {
        println!("atom {atom:?} ↦ {}", seq.format(&pds));
    }

    println!("{}", verify_equality(&model)?);
    Ok(())
}
