//! Writes Graphviz for the dynamics and the chain forest of a small model.
//! Pipe into `dot -Tsvg` to render.

use chainspec::format::to_dot;
use chainspec::spectrum::full_spectrum;
use chainspec::{delta_ladder, induced_system, ConcreteModel};

fn main() -> chainspec::Result<()> {
    // A 2-cycle fed by a two-step tail.
    let model =
        ConcreteModel::from_parts(5, [(0, 1), (1, 0), (2, 3), (3, 4)], (0..5).map(|j| vec![j]))?;
    let pds = induced_system(&model)?;
    let ladder = delta_ladder(&pds);
    print!("{}", to_dot(&pds, &ladder, &full_spectrum(&pds, &ladder)));
    Ok(())
}
