//! Brute-force spectrum of the coefficient algebra `E_*(A)` inside the
//! matrix model.
//!
//! Everything here is computed from `σ` and the partition of `A` alone. Nothing
//! in this module consults the induced partial dynamical system, so its output
//! is an independent ground truth for the chain construction in
//! [`crate::spectrum`].

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Check, ConcreteModel, DiagonalElement, Partition};
use crate::operator::Monomial;
use crate::spectrum::CharacterSeq;

/// `δ(a) = UaU*`: `δ(a)(j) = a(σ⁻¹(j))` on `range σ`, zero elsewhere.
pub fn delta_apply(model: &ConcreteModel, a: &DiagonalElement) -> DiagonalElement {
    let sigma = model.sigma();
    DiagonalElement::new(
        (0..model.size())
            .map(|j| {
                sigma
                    .preimage(j)
                    .map_or_else(BigRational::zero, |i| a.get(i).clone())
            })
            .collect(),
    )
}

/// `δ_*ⁿ(a) = U*ⁿaUⁿ`: `a(σⁿ(j))` on `dom σⁿ`, zero elsewhere.
pub fn delta_star_apply(model: &ConcreteModel, a: &DiagonalElement, n: usize) -> DiagonalElement {
    let sigma = model.sigma();
    DiagonalElement::new(
        (0..model.size())
            .map(|j| {
                sigma
                    .apply_pow(j, n)
                    .map_or_else(BigRational::zero, |k| a.get(k).clone())
            })
            .collect(),
    )
}

/// The minimal projections of `E_*(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomPartition {
    pub atoms: Partition,
    /// Refinement rounds run, including the final round that changed nothing.
    pub generation_depth: usize,
}

impl AtomPartition {
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// Signature of `j` under `δ_*ⁿ(A)`: zero off `dom σⁿ`, otherwise the block of
/// `σⁿ(j)`.
fn pullback_key(model: &ConcreteModel, n: usize) -> impl Fn(usize) -> Option<usize> + '_ {
    move |j| {
        model
            .sigma()
            .apply_pow(j, n)
            .map(|k| model.partition().block_of(k))
    }
}

/// Atoms of the algebra generated by `δ_*ⁿ(A)`, `n ≥ 0`.
///
/// Round `n` intersects the current atoms with the level sets of `δ_*ⁿ(A)`:
/// the indicator of `dom σⁿ` and the pullback of the blocks along `σⁿ`. When a
/// round changes nothing the generated algebra is closed under `δ_*`, so every
/// later power adds nothing either.
pub fn coefficient_atoms(model: &ConcreteModel) -> Result<AtomPartition> {
    model.require_valid()?;
    let mut atoms = model.partition().clone();
    let mut depth = 0;
    loop {
        depth += 1;
        let refined = atoms.refine_by(pullback_key(model, depth));
        if refined == atoms {
            break;
        }
        atoms = refined;
        if depth > model.size() {
            return Err(Error::Internal(format!(
                "refinement did not stabilize after {depth} rounds"
            )));
        }
    }
    Ok(AtomPartition {
        atoms,
        generation_depth: depth,
    })
}

/// Sequence `(ξ⁰, ξ¹, …)` of the character at basis index `j`: `ξⁿ` is the
/// block of `σⁿ(j)` while `j ∈ dom σⁿ`, then zero forever. A `σ`-orbit that
/// never leaves the domain is eventually periodic and becomes a lasso.
fn sequence_at(model: &ConcreteModel, j: usize) -> CharacterSeq {
    let sigma = model.sigma();
    let partition = model.partition();
    let mut position = BTreeMap::new();
    let mut blocks = Vec::new();
    let mut x = j;
    loop {
        position.insert(x, blocks.len());
        blocks.push(partition.block_of(x));
        match sigma.apply(x) {
            None => return CharacterSeq::finite(blocks),
            Some(next) => {
                if let Some(&p) = position.get(&next) {
                    let period = blocks.split_off(p);
                    return CharacterSeq::lasso(blocks, period);
                }
                x = next;
            }
        }
    }
}

/// The oracle spectrum: one sequence per atom, aligned with `atoms.atoms`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSpectrum {
    pub atoms: AtomPartition,
    pub sequences: Vec<CharacterSeq>,
}

impl OracleSpectrum {
    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], &CharacterSeq)> {
        self.atoms
            .atoms
            .blocks()
            .iter()
            .map(Vec::as_slice)
            .zip(&self.sequences)
    }
}

/// Evaluates every character of `E_*(A)` along `δ_*ⁿ` and checks that all
/// basis indices of an atom induce the same sequence.
pub fn character_sequences(model: &ConcreteModel) -> Result<OracleSpectrum> {
    let atoms = coefficient_atoms(model)?;
    let mut sequences = Vec::with_capacity(atoms.len());
    for block in atoms.atoms.blocks() {
        let seq = sequence_at(model, block[0]);
        if let Some(&k) = block[1..].iter().find(|&&k| sequence_at(model, k) != seq) {
            return Err(Error::Internal(format!(
                "atom {block:?} is not a character: indices {} and {k} induce different sequences",
                block[0]
            )));
        }
        sequences.push(seq);
    }
    Ok(OracleSpectrum { atoms, sequences })
}

/// Evaluates `b = Σ δ_*ⁱ(a_i)` at the atom with index `atom`, and checks the
/// value against `Σ a_i(x_i)` over the defined coordinates of its sequence.
pub fn evaluate_sum(
    model: &ConcreteModel,
    oracle: &OracleSpectrum,
    coeffs: &[DiagonalElement],
    atom: usize,
) -> Result<BigRational> {
    let partition = model.partition();
    for (i, a) in coeffs.iter().enumerate() {
        if a.size() != model.size() {
            return Err(Error::NotInAlgebra(format!(
                "coefficient {i} has {} entries for a ground set of size {}",
                a.size(),
                model.size()
            )));
        }
        if let Err(b) = a.check_in_algebra(partition) {
            return Err(Error::NotInAlgebra(format!(
                "coefficient {i} is not constant on block {}",
                partition.label(b)
            )));
        }
    }
    let block = oracle
        .atoms
        .atoms
        .blocks()
        .get(atom)
        .ok_or_else(|| Error::Precondition(format!("no atom with index {atom}")))?;

    let b = coeffs
        .iter()
        .enumerate()
        .fold(DiagonalElement::zero(model.size()), |acc, (i, a)| {
            acc.add(&delta_star_apply(model, a, i))
        });
    let value = b.get(block[0]).clone();
    if block.iter().any(|&j| b.get(j) != &value) {
        return Err(Error::Internal(format!(
            "Σ δ_*ⁱ(a_i) is not constant on atom {block:?}"
        )));
    }

    let seq = &oracle.sequences[atom];
    let by_coordinates = coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, a)| seq.coordinate(i).map(|x| a.value_on_block(partition, x)))
        .fold(BigRational::zero(), |acc, v| acc + v);
    if by_coordinates != value {
        return Err(Error::Internal(format!(
            "Σ δ_*ⁱ(a_i) = {value} at atom {block:?} but Σ a_i(x_i) = {by_coordinates}"
        )));
    }
    Ok(value)
}

/// Coefficient-algebra axioms checked on atom indicators of `E_*(A)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AxiomReport {
    /// `A ⊆ E_*(A)`: atoms refine the blocks of `A`.
    pub contains_a: Check,
    pub delta_invariant: Check,
    pub delta_star_invariant: Check,
    /// `Ub = δ(b)U`.
    pub intertwining: Check,
    pub delta_multiplicative: Check,
    pub delta_star_multiplicative: Check,
}

impl AxiomReport {
    pub fn checks(&self) -> [(&'static str, &Check); 6] {
        [
            ("contains_a", &self.contains_a),
            ("delta_invariant", &self.delta_invariant),
            ("delta_star_invariant", &self.delta_star_invariant),
            ("intertwining", &self.intertwining),
            ("delta_multiplicative", &self.delta_multiplicative),
            ("delta_star_multiplicative", &self.delta_star_multiplicative),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.passed)
    }
}

fn check(witnesses: impl IntoIterator<Item = usize>) -> Check {
    let witnesses: Vec<usize> = witnesses.into_iter().collect();
    Check {
        passed: witnesses.is_empty(),
        witnesses,
    }
}

fn as_projection(a: &DiagonalElement) -> Monomial {
    Monomial::projection(a.size(), (0..a.size()).filter(|&j| !a.get(j).is_zero()))
}

pub fn check_coefficient_axioms(model: &ConcreteModel, atoms: &AtomPartition) -> AxiomReport {
    let p = &atoms.atoms;
    let size = model.size();
    let indicators: Vec<DiagonalElement> = (0..p.len()).map(|b| p.indicator(b)).collect();
    let u = model.operator();
    let one_step = |a: &DiagonalElement| delta_star_apply(model, a, 1);

    let contains_a = check(if p.refines(model.partition()) {
        vec![]
    } else {
        (0..p.len())
            .filter(|&b| {
                let block = p.block(b);
                block
                    .iter()
                    .any(|&j| model.partition().block_of(j) != model.partition().block_of(block[0]))
            })
            .collect()
    });

    let delta_invariant =
        check((0..p.len()).filter(|&b| !delta_apply(model, &indicators[b]).in_algebra(p)));
    let delta_star_invariant =
        check((0..p.len()).filter(|&b| !one_step(&indicators[b]).in_algebra(p)));

    let intertwining = check((0..p.len()).filter(|&b| {
        let lhs = u.mul(&as_projection(&indicators[b]));
        let rhs = as_projection(&delta_apply(model, &indicators[b])).mul(&u);
        lhs != rhs
    }));

    let pairs = || (0..p.len()).flat_map(|b| (0..p.len()).map(move |c| (b, c)));
    let delta_multiplicative = check(
        pairs()
            .filter(|&(b, c)| {
                let prod = indicators[b].mul(&indicators[c]);
                delta_apply(model, &prod)
                    != delta_apply(model, &indicators[b]).mul(&delta_apply(model, &indicators[c]))
            })
            .map(|(b, _)| b),
    );
    let delta_star_multiplicative = check(
        pairs()
            .filter(|&(b, c)| {
                let prod = indicators[b].mul(&indicators[c]);
                one_step(&prod) != one_step(&indicators[b]).mul(&one_step(&indicators[c]))
            })
            .map(|(b, _)| b),
    );
    debug_assert_eq!(size, p.size());

    AxiomReport {
        contains_a,
        delta_invariant,
        delta_star_invariant,
        intertwining,
        delta_multiplicative,
        delta_star_multiplicative,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::extend_to_a1;
    use crate::samples;

    fn fin(xs: &[usize]) -> CharacterSeq {
        CharacterSeq::finite(xs.to_vec())
    }

    #[test]
    fn delta_shifts_values_forward() {
        let e1 = samples::truncated_shift();
        let a = DiagonalElement::from_integers([5, 7, 9]);
        assert_eq!(
            delta_apply(&e1, &a),
            DiagonalElement::from_integers([0, 5, 7])
        );
        assert!(delta_apply(&e1, &DiagonalElement::zero(3)).is_zero());
        let e2 = samples::two_cycle();
        assert_eq!(
            delta_apply(&e2, &DiagonalElement::from_integers([1, 2])),
            DiagonalElement::from_integers([2, 1])
        );
    }

    #[test]
    fn delta_star_pulls_values_back() {
        let e1 = samples::truncated_shift();
        let a = DiagonalElement::from_integers([5, 7, 9]);
        assert_eq!(
            delta_star_apply(&e1, &a, 1),
            DiagonalElement::from_integers([7, 9, 0])
        );
        assert!(delta_star_apply(&e1, &a, 3).is_zero());
        assert_eq!(delta_star_apply(&e1, &a, 0), a);
    }

    #[test]
    fn atoms_of_reference_models() {
        let atoms = coefficient_atoms(&samples::truncated_shift()).unwrap();
        assert_eq!(atoms.atoms.blocks(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(atoms.generation_depth, 1);

        let atoms = coefficient_atoms(&samples::merged_source()).unwrap();
        assert_eq!(atoms.atoms.blocks(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(atoms.generation_depth, 2);

        let atoms = coefficient_atoms(&samples::two_cycle()).unwrap();
        assert_eq!(atoms.atoms.blocks(), &[vec![0], vec![1]]);
    }

    #[test]
    fn atoms_stable_under_extension() {
        let m = samples::merged_source();
        assert_eq!(
            coefficient_atoms(&extend_to_a1(&m).unwrap()).unwrap().atoms,
            coefficient_atoms(&m).unwrap().atoms
        );
    }

    #[test]
    fn sequences_of_reference_models() {
        let oracle = character_sequences(&samples::truncated_shift()).unwrap();
        assert_eq!(
            oracle.sequences,
            vec![fin(&[0, 1, 2]), fin(&[1, 2]), fin(&[2])]
        );

        // blocks of E3 are B0_1 = 0 and B2 = 1
        let oracle = character_sequences(&samples::merged_source()).unwrap();
        assert_eq!(oracle.sequences, vec![fin(&[0, 1]), fin(&[0]), fin(&[1])]);

        let oracle = character_sequences(&samples::two_cycle()).unwrap();
        assert_eq!(
            oracle.sequences,
            vec![
                CharacterSeq::lasso(vec![], vec![0, 1]),
                CharacterSeq::lasso(vec![], vec![1, 0])
            ]
        );
    }

    #[test]
    fn index_period_collapses_in_block_space() {
        // The orbit 2 → 3 → 2 has period 2 on indices but period 1 on blocks.
        let m =
            ConcreteModel::from_parts(4, [(0, 1), (2, 3), (3, 2)], [vec![0], vec![1], vec![2, 3]])
                .unwrap();
        let oracle = character_sequences(&m).unwrap();
        let cycle = oracle
            .iter()
            .find(|(atom, _)| atom.contains(&2))
            .map(|(_, s)| s.clone())
            .unwrap();
        assert_eq!(cycle, CharacterSeq::lasso(vec![], vec![2]));
    }

    #[test]
    fn evaluate_sum_examples() {
        let e1 = samples::truncated_shift();
        let oracle = character_sequences(&e1).unwrap();
        let ones = vec![DiagonalElement::one(3); 3];
        assert_eq!(
            evaluate_sum(&e1, &oracle, &ones, 2).unwrap(),
            BigRational::from_integer(1.into())
        );
        assert_eq!(
            evaluate_sum(&e1, &oracle, &ones, 0).unwrap(),
            BigRational::from_integer(3.into())
        );
        let zeros = vec![DiagonalElement::zero(3); 4];
        assert!(evaluate_sum(&e1, &oracle, &zeros, 1).unwrap().is_zero());
    }

    #[test]
    fn evaluate_sum_rejects_elements_outside_a() {
        let e3 = samples::merged_source();
        let oracle = character_sequences(&e3).unwrap();
        let bad = vec![DiagonalElement::from_integers([1, 2, 3])];
        assert!(matches!(
            evaluate_sum(&e3, &oracle, &bad, 0),
            Err(Error::NotInAlgebra(_))
        ));
        let good = vec![
            DiagonalElement::from_integers([1, 1, 5]),
            DiagonalElement::from_integers([2, 2, 3]),
        ];
        // atom {0}: sequence (B0_1, B2) gives 1 + 3
        assert_eq!(
            evaluate_sum(&e3, &oracle, &good, 0).unwrap(),
            BigRational::from_integer(4.into())
        );
        // atom {1}: sequence (B0_1) gives 1
        assert_eq!(
            evaluate_sum(&e3, &oracle, &good, 1).unwrap(),
            BigRational::from_integer(1.into())
        );
    }

    #[test]
    fn axioms_hold_on_reference_models() {
        for m in [
            samples::truncated_shift(),
            samples::merged_source(),
            samples::two_cycle(),
        ] {
            let atoms = coefficient_atoms(&m).unwrap();
            let report = check_coefficient_axioms(&m, &atoms);
            assert!(report.passed(), "{m:?}: {report:?}");
        }
    }

    #[test]
    fn axioms_fail_on_a_non_invariant_algebra() {
        // The partition of A itself is not δ_*-invariant for E3.
        let m = samples::merged_source();
        let fake = AtomPartition {
            atoms: m.partition().clone(),
            generation_depth: 0,
        };
        let report = check_coefficient_axioms(&m, &fake);
        assert!(!report.delta_star_invariant.passed);
        assert!(report.delta_invariant.passed);
    }
}
