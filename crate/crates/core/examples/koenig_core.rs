//! Infinite backward chains live in the core `⋂ αⁿ(Δ_n)`, where `α` is a
//! bijection. Compares the core against counting backward paths by hand.

use chainspec::delta_ladder;
use chainspec::dynamics::AbstractPds;
use chainspec::spectrum::full_spectrum;

fn longest_backward_path(pds: &AbstractPds, x: usize, cap: usize) -> usize {
    if cap == 0 {
        return 0;
    }
    pds.preimages(x)
        .into_iter()
        .map(|y| 1 + longest_backward_path(pds, y, cap - 1))
        .max()
        .unwrap_or(0)
}

fn main() -> chainspec::Result<()> {
    // A 3-cycle c0 → c1 → c2 → c0 with a dangling branch t1 → t0 → c1.
    let pds = AbstractPds::from_labels(
        &["c0", "c1", "c2", "t0", "t1"],
        &["c0", "c1", "c2", "t0", "t1"],
        &[
            ("c0", "c1"),
            ("c1", "c2"),
            ("c2", "c0"),
            ("t0", "c1"),
            ("t1", "t0"),
        ],
    )?;
    let ladder = delta_ladder(&pds);
    println!("core = {}", pds.format_set(ladder.core()));

    let cap = 2 * pds.len();
    for x in pds.points() {
        let depth = longest_backward_path(&pds, x, cap);
        println!(
            "{}: backward depth {}",
            pds.label(x),
            if depth == cap {
                "∞".into()
            } else {
                depth.to_string()
            }
        );
    }

    for seq in &full_spectrum(&pds, &ladder).m_infinity {
        println!("M_∞ ∋ {}", seq.format(&pds));
    }
    Ok(())
}
