//! Small reference models used throughout the tests and examples.

use crate::dynamics::AbstractPds;
use crate::model::ConcreteModel;

/// Size 3, `σ = {0→1, 1→2}`, singleton blocks: the truncated shift.
pub fn truncated_shift() -> ConcreteModel {
    ConcreteModel::from_parts(3, [(0, 1), (1, 2)], (0..3).map(|j| vec![j])).expect("well-formed")
}

/// Size 2, `σ = {0→1, 1→0}`, singleton blocks: a unitary 2-cycle.
pub fn two_cycle() -> ConcreteModel {
    ConcreteModel::from_parts(2, [(0, 1), (1, 0)], (0..2).map(|j| vec![j])).expect("well-formed")
}

/// Size 3, `σ = {0→2}`, blocks `{0,1}, {2}`: `U*U` is not in `A`.
pub fn merged_source() -> ConcreteModel {
    ConcreteModel::from_parts(3, [(0, 2)], [vec![0, 1], vec![2]]).expect("well-formed")
}

/// Size `n`, `σ = id`, singleton blocks.
pub fn identity(n: usize) -> ConcreteModel {
    ConcreteModel::from_parts(n, (0..n).map(|j| (j, j)), (0..n).map(|j| vec![j]))
        .expect("well-formed")
}

/// Size `n`, `σ` empty, singleton blocks.
pub fn zero(n: usize) -> ConcreteModel {
    ConcreteModel::from_parts(n, [], (0..n).map(|j| vec![j])).expect("well-formed")
}

/// Points `{a, b}`, `Δ = {a, b}`, `α(a) = α(b) = a`. Not realizable by a
/// finite matrix model: its spectrum has a nonempty chain family at every
/// length.
pub fn collapsing_pair() -> AbstractPds {
    AbstractPds::from_labels(&["a", "b"], &["a", "b"], &[("a", "a"), ("b", "a")])
        .expect("well-formed")
}
