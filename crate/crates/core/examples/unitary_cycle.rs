//! A unitary 2-cycle: no finite chains survive and the spectrum is the set
//! of two periodic orbits.

use chainspec::model::classify_operator;
use chainspec::verify::{verify_equality, verify_isometry_corollary};
use chainspec::{delta_ladder, induced_system, predicted_spectrum, samples};

fn main() -> chainspec::Result<()> {
    let model = samples::two_cycle();
    println!("U is {}", classify_operator(&model));

    let pds = induced_system(&model)?;
    let spectrum = predicted_spectrum(&pds, &delta_ladder(&pds));
    for seq in &spectrum.m_infinity {
        println!("M_∞ ∋ {}", seq.format(&pds));
    }

    println!("{}", verify_equality(&model)?);
    println!("{}", verify_isometry_corollary(&model)?);
    Ok(())
}
