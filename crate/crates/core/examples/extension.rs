//! When `U*U` is not in `A` the chain description only bounds the spectrum
//! from below. Refining `A` by `dom σ` restores equality without changing
//! `E_*(A)`.

use chainspec::model::extend_to_a1;
use chainspec::oracle::coefficient_atoms;
use chainspec::verify::{verify_lower_bound, verify_via_extension};
use chainspec::{format, samples};

fn main() -> chainspec::Result<()> {
    let model = samples::merged_source();
    let extended = extend_to_a1(&model)?;
    println!("A  : {}", format::model_to_json(&model));
    println!("A₁ : {}", format::model_to_json(&extended));

    println!("{}", verify_lower_bound(&model)?);
    println!("{}", verify_via_extension(&model)?);

    let before = coefficient_atoms(&model)?;
    let after = coefficient_atoms(&extended)?;
    println!(
        "atoms over A {:?}, over A₁ {:?}",
        before.atoms.blocks(),
        after.atoms.blocks()
    );
    Ok(())
}
