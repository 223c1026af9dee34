//! The Gelfand-dual partial dynamical system `(M, Δ, α)` and its ladder of
//! domains `Δ_n`, images `Δ_{-n}` and recurrent core `Δ_{-∞}`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::ConcreteModel;

/// Point indices into an [`AbstractPds`].
pub type Point = usize;
pub type PointSet = BTreeSet<Point>;

/// A finite partial dynamical system: points `M`, domain `Δ ⊆ M` and a map
/// `α: Δ → M`. On a finite discrete space every subset is clopen and every map
/// is continuous, so no topology is stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbstractPds {
    labels: Vec<String>,
    alpha: Vec<Option<Point>>,
}

impl AbstractPds {
    /// `alpha[p]` is `α(p)` for `p ∈ Δ` and `None` off the domain.
    pub fn new(labels: Vec<String>, alpha: Vec<Option<Point>>) -> Result<Self> {
        if labels.len() != alpha.len() {
            return Err(Error::BadSystem(format!(
                "{} labels for {} points",
                labels.len(),
                alpha.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::BadSystem(format!("duplicate point {l:?}")));
            }
        }
        if let Some(q) = alpha.iter().flatten().find(|&&q| q >= labels.len()) {
            return Err(Error::BadSystem(format!("alpha value {q} is not a point")));
        }
        Ok(Self { labels, alpha })
    }

    /// Builds a system from labelled points, a labelled domain and labelled
    /// `α` pairs. The pairs must define `α` exactly on the domain.
    pub fn from_labels<S: AsRef<str>>(
        points: &[S],
        domain: &[S],
        alpha: &[(S, S)],
    ) -> Result<Self> {
        let labels: Vec<String> = points.iter().map(|p| p.as_ref().to_owned()).collect();
        let index: BTreeMap<&str, Point> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != labels.len() {
            return Err(Error::BadSystem("duplicate point labels".into()));
        }
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::BadSystem(format!("unknown point {l:?}")))
        };
        let mut in_domain = vec![false; labels.len()];
        for d in domain {
            let p = lookup(d.as_ref())?;
            if std::mem::replace(&mut in_domain[p], true) {
                return Err(Error::BadSystem(format!(
                    "domain lists {:?} twice",
                    d.as_ref()
                )));
            }
        }
        let mut map = vec![None; labels.len()];
        for (p, q) in alpha {
            let (p, q) = (lookup(p.as_ref())?, lookup(q.as_ref())?);
            if !in_domain[p] {
                return Err(Error::BadSystem(format!(
                    "alpha is defined at {:?} which is outside the domain",
                    labels[p]
                )));
            }
            if map[p].replace(q).is_some() {
                return Err(Error::BadSystem(format!(
                    "alpha has two values at {:?}",
                    labels[p]
                )));
            }
        }
        if let Some(p) = (0..labels.len()).find(|&p| in_domain[p] && map[p].is_none()) {
            return Err(Error::BadSystem(format!(
                "alpha is undefined at domain point {:?}",
                labels[p]
            )));
        }
        Self::new(labels, map)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> {
        0..self.len()
    }

    pub fn all_points(&self) -> PointSet {
        self.points().collect()
    }

    pub fn label(&self, p: Point) -> &str {
        &self.labels[p]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn point_by_label(&self, label: &str) -> Option<Point> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn alpha(&self, p: Point) -> Option<Point> {
        self.alpha[p]
    }

    /// `αⁿ(p)`, or `None` when `p ∉ Δ_n`.
    pub fn alpha_pow(&self, p: Point, n: usize) -> Option<Point> {
        (0..n).try_fold(p, |x, _| self.alpha(x))
    }

    pub fn domain(&self) -> PointSet {
        self.points().filter(|&p| self.alpha[p].is_some()).collect()
    }

    pub fn in_domain(&self, p: Point) -> bool {
        self.alpha[p].is_some()
    }

    /// `α⁻¹(q)`, in ascending order.
    pub fn preimages(&self, q: Point) -> Vec<Point> {
        self.points()
            .filter(|&p| self.alpha[p] == Some(q))
            .collect()
    }

    pub fn image(&self, set: &PointSet) -> PointSet {
        set.iter().filter_map(|&p| self.alpha(p)).collect()
    }

    pub fn preimage(&self, set: &PointSet) -> PointSet {
        self.points()
            .filter(|&p| self.alpha(p).is_some_and(|q| set.contains(&q)))
            .collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.image(&self.domain()).len() == self.len()
    }

    pub fn format_set(&self, set: &PointSet) -> String {
        let items: Vec<&str> = set.iter().map(|&p| self.label(p)).collect();
        format!("{{{}}}", items.join(", "))
    }
}

/// The Gelfand-dual system of a concrete model: one point per block, `Δ` the
/// blocks inside `range σ` (where the character is 1 on `UU*`), and `α(B)` the
/// block containing `σ⁻¹(B)`.
pub fn induced_system(model: &ConcreteModel) -> Result<AbstractPds> {
    model.require_valid()?;
    let partition = model.partition();
    let sigma = model.sigma();
    let alpha = partition
        .blocks()
        .iter()
        .map(|block| sigma.preimage(block[0]).map(|src| partition.block_of(src)))
        .collect();
    AbstractPds::new(partition.labels(), alpha)
}

/// The families `Δ_n = α⁻ⁿ(M)` and `Δ_{-n} = αⁿ(Δ_n)`, stored up to the
/// index at which each chain becomes constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaLadder {
    forward: Vec<PointSet>,
    backward: Vec<PointSet>,
    core: PointSet,
    stab_forward: usize,
    stab_backward: usize,
}

impl DeltaLadder {
    /// `Δ_n` for any `n ≥ 0`.
    pub fn delta(&self, n: usize) -> &PointSet {
        &self.forward[n.min(self.stab_forward)]
    }

    /// `Δ_{-n}` for any `n ≥ 0` (`Δ_{-0} = M`).
    pub fn delta_neg(&self, n: usize) -> &PointSet {
        if n == 0 {
            &self.forward[0]
        } else {
            &self.backward[n.min(self.stab_backward) - 1]
        }
    }

    /// `Δ_{-∞} = ⋂_{n≥1} Δ_{-n}`.
    pub fn core(&self) -> &PointSet {
        &self.core
    }

    /// `Δ_0, …, Δ_{stab_forward}`.
    pub fn forward(&self) -> &[PointSet] {
        &self.forward
    }

    /// `Δ_{-1}, …, Δ_{-stab_backward}`.
    pub fn backward(&self) -> &[PointSet] {
        &self.backward
    }

    /// Least `n` with `Δ_n = Δ_{n+1}`.
    pub fn stab_forward(&self) -> usize {
        self.stab_forward
    }

    /// Least `n ≥ 1` with `Δ_{-n} = Δ_{-(n+1)}`.
    pub fn stab_backward(&self) -> usize {
        self.stab_backward
    }
}

/// Iterates `Δ_{n+1} = Δ_1 ∩ α⁻¹(Δ_n)` and `Δ_{-n} = αⁿ(Δ_n)` until each
/// chain repeats. Both chains are determined by their previous term, so the
/// first repeat is permanent, and strict decrease bounds the iteration by
/// `|M|` steps.
pub fn delta_ladder(pds: &AbstractPds) -> DeltaLadder {
    let domain = pds.domain();
    let mut forward = vec![pds.all_points()];
    loop {
        let last = forward.last().expect("nonempty");
        let next: PointSet = pds.preimage(last).intersection(&domain).copied().collect();
        if &next == last {
            break;
        }
        forward.push(next);
    }
    let stab_forward = forward.len() - 1;
    let delta = |n: usize| &forward[n.min(stab_forward)];

    let image_of = |n: usize| -> PointSet {
        delta(n)
            .iter()
            .map(|&p| pds.alpha_pow(p, n).expect("p ∈ Δ_n"))
            .collect()
    };
    let mut backward = vec![image_of(1)];
    loop {
        let n = backward.len() + 1;
        let next = image_of(n);
        if &next == backward.last().expect("nonempty") {
            break;
        }
        backward.push(next);
    }
    let stab_backward = backward.len();
    let core = backward.last().expect("nonempty").clone();

    DeltaLadder {
        forward,
        backward,
        core,
        stab_forward,
        stab_backward,
    }
}

/// Mutually inverse maps `α: Δ_1 → Δ_{-1}` and `α′: Δ_{-1} → Δ_1`, present when
/// both `δ` and `δ_*` are endomorphisms of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomeomorphismWitness {
    pub forward: BTreeMap<Point, Point>,
    pub inverse: BTreeMap<Point, Point>,
}

/// Returns the homeomorphism `Δ_1 → Δ_{-1}` when `δ_*(A) ⊆ A`, i.e. when
/// `dom σ` is a union of blocks and `σ` sends each such block into one block.
pub fn dual_endomorphism_case(model: &ConcreteModel) -> Result<Option<HomeomorphismWitness>> {
    let pds = induced_system(model)?;
    let partition = model.partition();
    let sigma = model.sigma();
    if !model.domain_in_algebra() {
        return Ok(None);
    }
    let mut inverse = BTreeMap::new();
    for (b, block) in partition.blocks().iter().enumerate() {
        let targets: BTreeSet<usize> = block
            .iter()
            .filter_map(|&j| sigma.apply(j))
            .map(|k| partition.block_of(k))
            .collect();
        match targets.len() {
            0 => {}
            1 => {
                inverse.insert(b, *targets.first().expect("one element"));
            }
            _ => return Ok(None),
        }
    }
    let forward: BTreeMap<Point, Point> = pds
        .domain()
        .into_iter()
        .map(|p| (p, pds.alpha(p).expect("in domain")))
        .collect();

    let image: PointSet = forward.values().copied().collect();
    let inverse_domain: PointSet = inverse.keys().copied().collect();
    if image != inverse_domain {
        return Err(Error::Internal(format!(
            "δ_* dual map is defined on {} but α(Δ_1) = {}",
            pds.format_set(&inverse_domain),
            pds.format_set(&image)
        )));
    }
    for (&p, &q) in &forward {
        if inverse.get(&q) != Some(&p) {
            return Err(Error::Internal(format!(
                "α′(α({})) ≠ {}",
                pds.label(p),
                pds.label(p)
            )));
        }
    }
    for (&q, &p) in &inverse {
        if forward.get(&p) != Some(&q) {
            return Err(Error::Internal(format!(
                "α(α′({})) ≠ {}",
                pds.label(q),
                pds.label(q)
            )));
        }
    }
    Ok(Some(HomeomorphismWitness { forward, inverse }))
}
