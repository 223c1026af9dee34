//! Finite concrete models `(A, U)`.
//!
//! The Hilbert space is spanned by the basis vectors `e_0, …, e_{size-1}`. The
//! partial isometry `U` is a partial permutation of the basis given by a
//! [`PartialInjection`] `σ`, and the commutative algebra `A` is the algebra of
//! diagonal operators that are constant on the blocks of a [`Partition`]. Each
//! block is one character of `A`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::operator::Monomial;

/// Partial injection `σ` on `0..size`, the combinatorial form of `U`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialInjection {
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
}

impl PartialInjection {
    pub fn new(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let mut forward = vec![None; size];
        let mut backward = vec![None; size];
        for (src, dst) in pairs {
            for index in [src, dst] {
                if index >= size {
                    return Err(Error::IndexOutOfRange { index, size });
                }
            }
            if forward[src].is_some() {
                return Err(Error::DuplicateSource(src));
            }
            if backward[dst].is_some() {
                return Err(Error::DuplicateTarget(dst));
            }
            forward[src] = Some(dst);
            backward[dst] = Some(src);
        }
        Ok(Self { forward, backward })
    }

    /// The empty injection (`U = 0`).
    pub fn empty(size: usize) -> Result<Self> {
        Self::new(size, [])
    }

    /// The identity injection (`U = 1`).
    pub fn identity(size: usize) -> Result<Self> {
        Self::new(size, (0..size).map(|j| (j, j)))
    }

    pub fn size(&self) -> usize {
        self.forward.len()
    }

    pub fn apply(&self, j: usize) -> Option<usize> {
        self.forward[j]
    }

    pub fn preimage(&self, k: usize) -> Option<usize> {
        self.backward[k]
    }

    /// `σⁿ(j)`, or `None` when `j ∉ dom σⁿ`.
    pub fn apply_pow(&self, j: usize, n: usize) -> Option<usize> {
        (0..n).try_fold(j, |x, _| self.apply(x))
    }

    /// `σ⁻ⁿ(k)`, or `None` when `k ∉ range σⁿ`.
    pub fn preimage_pow(&self, k: usize, n: usize) -> Option<usize> {
        (0..n).try_fold(k, |x, _| self.preimage(x))
    }

    /// Pairs `(source, target)` sorted by source.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.forward
            .iter()
            .enumerate()
            .filter_map(|(j, t)| t.map(|k| (j, k)))
            .collect()
    }

    pub fn domain(&self) -> BTreeSet<usize> {
        (0..self.size())
            .filter(|&j| self.forward[j].is_some())
            .collect()
    }

    pub fn range(&self) -> BTreeSet<usize> {
        (0..self.size())
            .filter(|&k| self.backward[k].is_some())
            .collect()
    }

    pub fn in_domain(&self, j: usize) -> bool {
        self.forward[j].is_some()
    }

    pub fn in_range(&self, k: usize) -> bool {
        self.backward[k].is_some()
    }

    /// The injection restricted to the given subset of its pairs.
    pub fn restrict(&self, keep: impl Fn(usize, usize) -> bool) -> Self {
        let pairs = self.pairs().into_iter().filter(|&(j, k)| keep(j, k));
        Self::new(self.size(), pairs).expect("restriction of an injection is an injection")
    }
}

impl fmt::Debug for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

/// A partition of `0..size` into nonempty blocks, kept in canonical form:
/// each block sorted ascending, blocks ordered by least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Builds a partition from blocks in any order, canonicalizing them.
    pub fn new(size: usize, blocks: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        Self::from_canonical(size, blocks)
    }

    /// Builds a partition from blocks that must already be in canonical order.
    pub fn from_canonical(size: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let mut block_of = vec![usize::MAX; size];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::BadPartition(format!("block {b} is empty")));
            }
            if block.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::NonCanonical(format!(
                    "block {b} is not strictly ascending: {block:?}"
                )));
            }
            for &j in block {
                if j >= size {
                    return Err(Error::IndexOutOfRange { index: j, size });
                }
                if block_of[j] != usize::MAX {
                    return Err(Error::BadPartition(format!(
                        "index {j} appears in blocks {} and {b}",
                        block_of[j]
                    )));
                }
                block_of[j] = b;
            }
        }
        if let Some(j) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::BadPartition(format!("index {j} is not covered")));
        }
        if blocks.windows(2).any(|w| w[0][0] >= w[1][0]) {
            return Err(Error::NonCanonical(
                "blocks are not ordered by least element".into(),
            ));
        }
        Ok(Self { blocks, block_of })
    }

    pub fn singletons(size: usize) -> Result<Self> {
        Self::from_canonical(size, (0..size).map(|j| vec![j]).collect())
    }

    pub fn trivial(size: usize) -> Result<Self> {
        Self::from_canonical(size, vec![(0..size).collect()])
    }

    /// Partition into classes of equal key; always canonical.
    pub fn from_keys<K: Ord>(size: usize, key: impl Fn(usize) -> K) -> Self {
        let mut classes: std::collections::BTreeMap<K, Vec<usize>> = Default::default();
        for j in 0..size {
            classes.entry(key(j)).or_default().push(j);
        }
        Self::new(size, classes.into_values()).expect("key classes form a partition")
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn block_of(&self, j: usize) -> usize {
        self.block_of[j]
    }

    /// Common refinement with the level sets of `key`.
    pub fn refine_by<K: Ord>(&self, key: impl Fn(usize) -> K) -> Partition {
        Partition::from_keys(self.size(), |j| (self.block_of(j), key(j)))
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks.iter().all(|b| {
            b.iter()
                .all(|&j| coarser.block_of(j) == coarser.block_of(b[0]))
        })
    }

    /// Whether `set` is a union of blocks.
    pub fn is_union_of_blocks(&self, set: &BTreeSet<usize>) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|j| set.contains(j)) || b.iter().all(|j| !set.contains(j)))
    }

    /// Display label of block `b`: `B` followed by its indices joined by `_`.
    pub fn label(&self, b: usize) -> String {
        let idx: Vec<String> = self.blocks[b].iter().map(usize::to_string).collect();
        format!("B{}", idx.join("_"))
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|b| self.label(b)).collect()
    }

    pub fn indicator(&self, b: usize) -> DiagonalElement {
        DiagonalElement::indicator(self.size(), self.blocks[b].iter().copied())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.blocks).finish()
    }
}

/// A diagonal operator with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalElement {
    values: Vec<BigRational>,
}

impl DiagonalElement {
    pub fn new(values: Vec<BigRational>) -> Self {
        Self { values }
    }

    pub fn from_integers(values: impl IntoIterator<Item = i64>) -> Self {
        Self::new(
            values
                .into_iter()
                .map(|v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    pub fn zero(size: usize) -> Self {
        Self::new(vec![BigRational::zero(); size])
    }

    pub fn one(size: usize) -> Self {
        Self::from_integers(std::iter::repeat_n(1, size))
    }

    pub fn indicator(size: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut values = vec![BigRational::zero(); size];
        for j in support {
            values[j] = BigRational::from_integer(1.into());
        }
        Self { values }
    }

    /// The element of `A` taking `values[b]` on block `b`.
    pub fn from_block_values(partition: &Partition, values: &[BigRational]) -> Self {
        Self::new(
            (0..partition.size())
                .map(|j| values[partition.block_of(j)].clone())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, j: usize) -> &BigRational {
        &self.values[j]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Whether the element is constant on every block, i.e. lies in the
    /// algebra of the partition. Returns the first offending block otherwise.
    pub fn check_in_algebra(&self, partition: &Partition) -> std::result::Result<(), usize> {
        for (b, block) in partition.blocks().iter().enumerate() {
            let first = &self.values[block[0]];
            if block.iter().any(|&j| &self.values[j] != first) {
                return Err(b);
            }
        }
        Ok(())
    }

    pub fn in_algebra(&self, partition: &Partition) -> bool {
        self.check_in_algebra(partition).is_ok()
    }

    /// Gelfand transform: the value on block `b`, assuming membership in `A`.
    pub fn value_on_block(&self, partition: &Partition, b: usize) -> &BigRational {
        &self.values[partition.block(b)[0]]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(
            self.values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(
            self.values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

/// The standing pair `(A, U)` in partial-permutation form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConcreteModel {
    sigma: PartialInjection,
    partition: Partition,
}

impl ConcreteModel {
    pub fn new(sigma: PartialInjection, partition: Partition) -> Result<Self> {
        if sigma.size() != partition.size() {
            return Err(Error::BadPartition(format!(
                "partition covers {} indices but the ground set has {}",
                partition.size(),
                sigma.size()
            )));
        }
        Ok(Self { sigma, partition })
    }

    /// Convenience constructor from raw pairs and blocks in any order.
    pub fn from_parts(
        size: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
        blocks: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        Self::new(
            PartialInjection::new(size, pairs)?,
            Partition::new(size, blocks)?,
        )
    }

    pub fn size(&self) -> usize {
        self.sigma.size()
    }

    pub fn sigma(&self) -> &PartialInjection {
        &self.sigma
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn with_partition(&self, partition: Partition) -> Result<Self> {
        Self::new(self.sigma.clone(), partition)
    }

    pub fn operator(&self) -> Monomial {
        Monomial::from_injection(&self.sigma)
    }

    /// Checks the standing hypotheses and fails with a summary if any is violated.
    pub fn require_valid(&self) -> Result<ValidationReport> {
        let report = validate_concrete(self);
        if report.is_valid() {
            Ok(report)
        } else {
            Err(Error::InvalidModel(report.failure_summary()))
        }
    }

    /// Whether `U*U ∈ A`, i.e. `dom σ` is a union of blocks.
    pub fn domain_in_algebra(&self) -> bool {
        self.partition.is_union_of_blocks(&self.sigma.domain())
    }
}

impl fmt::Debug for ConcreteModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConcreteModel")
            .field("size", &self.size())
            .field("sigma", &self.sigma)
            .field("partition", &self.partition)
            .finish()
    }
}

/// Outcome of one check, with witnesses (basis or block indices) on failure.
#[derive(Clone, Debug, PartialEq, Eq, Default, serde::Serialize)]
pub struct Check {
    pub passed: bool,
    pub witnesses: Vec<usize>,
}

impl Check {
    fn from_witnesses(witnesses: Vec<usize>) -> Self {
        Self {
            passed: witnesses.is_empty(),
            witnesses,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    /// `(UU*)² = UU*`; witnesses are basis indices.
    pub partial_isometry: Check,
    /// Every `Uⁿ`, `n ≤ size`, is a partial isometry; witnesses are exponents.
    pub power_partial_isometry: Check,
    /// `δ(A) ⊆ A`; witnesses are block indices.
    pub delta_compatible: Check,
    /// `U*U` commutes with every block indicator; witnesses are block indices.
    pub commutes_with_algebra: Check,
    /// `U*U ∈ A`; witnesses are blocks split by `dom σ`.
    pub domain_in_algebra: Check,
    /// `Ua = δ(a)U` for every block indicator `a`; witnesses are block indices.
    pub intertwining: Check,
}

impl ValidationReport {
    /// All standing hypotheses hold. `U*U ∈ A` is informational and not required.
    pub fn is_valid(&self) -> bool {
        self.partial_isometry.passed
            && self.power_partial_isometry.passed
            && self.delta_compatible.passed
            && self.commutes_with_algebra.passed
            && self.intertwining.passed
    }

    pub fn checks(&self) -> [(&'static str, &Check); 6] {
        [
            ("partial_isometry", &self.partial_isometry),
            ("power_partial_isometry", &self.power_partial_isometry),
            ("delta_compatible", &self.delta_compatible),
            ("commutes_with_algebra", &self.commutes_with_algebra),
            ("domain_in_algebra", &self.domain_in_algebra),
            ("intertwining", &self.intertwining),
        ]
    }

    pub fn failure_summary(&self) -> String {
        let failed: Vec<String> = self
            .checks()
            .iter()
            .filter(|(name, c)| !c.passed && *name != "domain_in_algebra")
            .map(|(name, c)| format!("{name} (witnesses {:?})", c.witnesses))
            .collect();
        failed.join(", ")
    }
}

fn is_partial_isometry(u: &Monomial) -> bool {
    let p = u.mul(&u.adjoint());
    p.mul(&p) == p && p.mul(u) == *u
}

/// `δ(a) = UaU*` as a monomial matrix.
fn conjugate(u: &Monomial, a: &Monomial) -> Monomial {
    u.mul(a).mul(&u.adjoint())
}

/// Blocks violating `δ(A) ⊆ A`: blocks straddling `range σ`, and blocks inside
/// `range σ` whose preimage meets more than one block.
fn delta_incompatible_blocks(sigma: &PartialInjection, partition: &Partition) -> Vec<usize> {
    let mut bad = Vec::new();
    for (b, block) in partition.blocks().iter().enumerate() {
        let inside = block.iter().filter(|&&k| sigma.in_range(k)).count();
        if inside == 0 {
            continue;
        }
        if inside < block.len() {
            bad.push(b);
            continue;
        }
        let mut sources = block
            .iter()
            .map(|&k| partition.block_of(sigma.preimage(k).expect("block inside range")));
        let first = sources.next().expect("blocks are nonempty");
        if sources.any(|s| s != first) {
            bad.push(b);
        }
    }
    bad
}

/// Checks every standing hypothesis of the pair `(A, U)`, reporting all
/// failures rather than stopping at the first.
pub fn validate_concrete(model: &ConcreteModel) -> ValidationReport {
    let size = model.size();
    let partition = model.partition();
    let u = model.operator();
    let ustar = u.adjoint();

    let range_proj = u.mul(&ustar);
    let partial_isometry = Check::from_witnesses(
        range_proj
            .mul(&range_proj)
            .differing_columns(&range_proj)
            .into_iter()
            .chain(range_proj.mul(&u).differing_columns(&u))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    );

    let power_partial_isometry = Check::from_witnesses(
        (1..=size)
            .filter(|&n| !is_partial_isometry(&u.pow(n)))
            .collect(),
    );

    let delta_compatible =
        Check::from_witnesses(delta_incompatible_blocks(model.sigma(), partition));

    let source_proj = ustar.mul(&u);
    let indicators: Vec<Monomial> = partition
        .blocks()
        .iter()
        .map(|b| Monomial::projection(size, b.iter().copied()))
        .collect();

    let commutes_with_algebra = Check::from_witnesses(
        indicators
            .iter()
            .enumerate()
            .filter(|(_, p)| source_proj.mul(p) != p.mul(&source_proj))
            .map(|(b, _)| b)
            .collect(),
    );

    let dom = model.sigma().domain();
    let domain_in_algebra = Check::from_witnesses(
        partition
            .blocks()
            .iter()
            .enumerate()
            .filter(|(_, block)| {
                let inside = block.iter().filter(|j| dom.contains(j)).count();
                inside != 0 && inside != block.len()
            })
            .map(|(b, _)| b)
            .collect(),
    );

    let intertwining = Check::from_witnesses(
        indicators
            .iter()
            .enumerate()
            .filter(|(_, a)| u.mul(a) != conjugate(&u, a).mul(&u))
            .map(|(b, _)| b)
            .collect(),
    );

    ValidationReport {
        partial_isometry,
        power_partial_isometry,
        delta_compatible,
        commutes_with_algebra,
        domain_in_algebra,
        intertwining,
    }
}

/// Refines `A` to `A₁ = ⟨A, U*U⟩` by splitting every block along `dom σ`.
/// Returns the model unchanged when `U*U ∈ A` already.
pub fn extend_to_a1(model: &ConcreteModel) -> Result<ConcreteModel> {
    model.require_valid()?;
    if model.domain_in_algebra() {
        return Ok(model.clone());
    }
    let sigma = model.sigma();
    let refined = model.partition().refine_by(|j| sigma.in_domain(j));
    model.with_partition(refined)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    Zero,
    Isometry,
    Coisometry,
    Unitary,
    ProperPartial,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorKind::Zero => "zero",
            OperatorKind::Isometry => "isometry",
            OperatorKind::Coisometry => "coisometry",
            OperatorKind::Unitary => "unitary",
            OperatorKind::ProperPartial => "proper-partial",
        })
    }
}

pub fn classify_operator(model: &ConcreteModel) -> OperatorKind {
    let sigma = model.sigma();
    let n = model.size();
    let dom = sigma.domain().len();
    let range = sigma.range().len();
    match (dom == n, range == n) {
        _ if dom == 0 => OperatorKind::Zero,
        (true, true) => OperatorKind::Unitary,
        (true, false) => OperatorKind::Isometry,
        (false, true) => OperatorKind::Coisometry,
        (false, false) => OperatorKind::ProperPartial,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn unitary_swap_passes_everything() {
        let report = validate_concrete(&samples::two_cycle());
        for (name, check) in report.checks() {
            assert!(check.passed, "{name} failed");
        }
        assert!(report.is_valid());
    }

    #[test]
    fn merged_source_is_compatible_but_domain_splits_a_block() {
        let m = samples::merged_source();
        let report = validate_concrete(&m);
        assert!(report.is_valid());
        assert!(report.delta_compatible.passed);
        assert!(!report.domain_in_algebra.passed);
        assert_eq!(report.domain_in_algebra.witnesses, vec![0]);
        assert!(!m.domain_in_algebra());
    }

    #[test]
    fn duplicate_target_is_structural() {
        let err = ConcreteModel::from_parts(3, [(0, 2), (1, 2)], (0..3).map(|j| vec![j]));
        assert!(matches!(err, Err(Error::DuplicateTarget(2))));
        let err = PartialInjection::new(2, [(0, 1), (0, 0)]);
        assert!(matches!(err, Err(Error::DuplicateSource(0))));
        let err = PartialInjection::new(2, [(0, 2)]);
        assert!(matches!(
            err,
            Err(Error::IndexOutOfRange { index: 2, size: 2 })
        ));
    }

    #[test]
    fn incompatible_partition_reports_all_failures() {
        // range {1} splits block {0,1}; the second block {2} is fine.
        let m = ConcreteModel::from_parts(3, [(2, 1)], [vec![0, 1], vec![2]]).unwrap();
        let report = validate_concrete(&m);
        assert!(!report.delta_compatible.passed);
        assert_eq!(report.delta_compatible.witnesses, vec![0]);
        // Ua = δ(a)U needs only U*U ∈ A′, which partial permutations always satisfy.
        assert!(report.intertwining.passed);
        assert!(!report.is_valid());
        assert!(matches!(m.require_valid(), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn preimage_straddling_blocks_is_incompatible() {
        // block {1,2} is inside the range but pulls back to {0} and {3}.
        let m =
            ConcreteModel::from_parts(4, [(0, 1), (3, 2)], [vec![0], vec![1, 2], vec![3]]).unwrap();
        let report = validate_concrete(&m);
        assert_eq!(report.delta_compatible.witnesses, vec![1]);
    }

    #[test]
    fn extension_splits_along_domain() {
        let e3 = extend_to_a1(&samples::merged_source()).unwrap();
        assert_eq!(e3.partition().blocks(), &[vec![0], vec![1], vec![2]]);
        assert!(e3.domain_in_algebra());
        assert!(validate_concrete(&e3).is_valid());

        for m in [samples::two_cycle(), samples::truncated_shift()] {
            assert_eq!(extend_to_a1(&m).unwrap(), m);
        }
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify_operator(&samples::two_cycle()),
            OperatorKind::Unitary
        );
        assert_eq!(
            classify_operator(&samples::truncated_shift()),
            OperatorKind::ProperPartial
        );
        let zero = ConcreteModel::from_parts(2, [], [vec![0], vec![1]]).unwrap();
        assert_eq!(classify_operator(&zero), OperatorKind::Zero);
        let iso = ConcreteModel::from_parts(2, [(0, 1), (1, 0)], [vec![0, 1]]).unwrap();
        assert_eq!(classify_operator(&iso), OperatorKind::Unitary);
        let size1 = ConcreteModel::from_parts(1, [(0, 0)], [vec![0]]).unwrap();
        assert_eq!(classify_operator(&size1), OperatorKind::Unitary);
    }

    #[test]
    fn partition_canonical_form_is_enforced_on_strict_parse() {
        assert!(matches!(
            Partition::from_canonical(3, vec![vec![2], vec![0, 1]]),
            Err(Error::NonCanonical(_))
        ));
        assert!(matches!(
            Partition::from_canonical(3, vec![vec![1, 0], vec![2]]),
            Err(Error::NonCanonical(_))
        ));
        assert!(matches!(
            Partition::from_canonical(3, vec![vec![0, 1]]),
            Err(Error::BadPartition(_))
        ));
        let p = Partition::new(3, [vec![2], vec![1, 0]]).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1], vec![2]]);
        assert_eq!(p.label(0), "B0_1");
    }

    #[test]
    fn algebra_membership() {
        let p = Partition::new(3, [vec![0, 1], vec![2]]).unwrap();
        assert!(DiagonalElement::from_integers([4, 4, 1]).in_algebra(&p));
        assert_eq!(
            DiagonalElement::from_integers([4, 5, 1]).check_in_algebra(&p),
            Err(0)
        );
    }
}
