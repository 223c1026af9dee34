//! An abstract system with no finite matrix model: infinitely many finite
//! chains, described by a tail, converging to the single periodic point.

use chainspec::spectrum::{
    chain_from_root, neighborhood_contains, point_function, NeighborhoodSpec,
};
use chainspec::{delta_ladder, predicted_spectrum, samples};
use num_rational::BigRational;

fn main() -> chainspec::Result<()> {
    let pds = samples::collapsing_pair();
    let spectrum = predicted_spectrum(&pds, &delta_ladder(&pds));
    println!(
        "finite chains of every length N ≥ {} end at {}",
        spectrum.hat_tail.from,
        pds.format_set(&spectrum.hat_tail.roots)
    );

    let center = spectrum
        .m_infinity
        .first()
        .expect("one periodic point")
        .clone();
    println!("limit point {}", center.format(&pds));

    let b = pds.point_by_label("b").expect("b");
    let indicator_a = point_function([1, 0]);
    let epsilon = BigRational::new(1.into(), 2.into());
    for level in [0, 3, 6] {
        let spec = NeighborhoodSpec::new(
            &pds,
            vec![indicator_a.clone()],
            level,
            epsilon.clone(),
            center.clone(),
        )?;
        let inside: Vec<usize> = (0..10)
            .filter(|&n| {
                neighborhood_contains(&spec, &chain_from_root(&pds, b, n).expect("b ∈ Δ_n"))
            })
            .collect();
        println!("level {level}: chains of length {inside:?} lie in the neighborhood");
    }
    Ok(())
}
