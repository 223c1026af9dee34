//! Seeded random models and the aggregate verification campaign.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::model_to_json;
use crate::model::{validate_concrete, ConcreteModel, PartialInjection, Partition};
use crate::verify::{verify_everything, Analysis, TheoremId, TheoremReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionStrategy {
    Singletons,
    RandomCompatible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Granularity {
    Summary,
    PerModel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub count: usize,
    pub max_size: usize,
    pub seed: u64,
    pub partition: PartitionStrategy,
    pub granularity: Granularity,
}

impl FuzzConfig {
    pub fn new(count: usize, max_size: usize, seed: u64) -> Self {
        Self {
            count,
            max_size,
            seed,
            partition: PartitionStrategy::RandomCompatible,
            granularity: Granularity::Summary,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::Config("model count must be at least 1".into()));
        }
        if self.max_size == 0 {
            return Err(Error::Config(
                "maximum ground-set size must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Keeps each index in the domain with probability 1/2, then sends the kept
/// indices to a uniformly random injection.
pub fn random_partial_injection(rng: &mut impl Rng, size: usize) -> PartialInjection {
    let sources: Vec<usize> = (0..size).filter(|_| rng.gen_bool(0.5)).collect();
    let mut targets: Vec<usize> = (0..size).collect();
    targets.shuffle(rng);
    PartialInjection::new(size, sources.into_iter().zip(targets))
        .expect("distinct sources and targets")
}

const MERGE_ATTEMPTS_PER_INDEX: usize = 2;

/// A random δ-compatible coarsening of the singleton partition. Random pairs of
/// blocks are merged and each merge is kept only if the result is still
/// δ-compatible. Returns `None` when every attempt was rejected.
pub fn random_compatible_partition(
    rng: &mut impl Rng,
    sigma: &PartialInjection,
) -> Option<Partition> {
    let size = sigma.size();
    let mut blocks: Vec<Vec<usize>> = (0..size).map(|j| vec![j]).collect();
    let attempts = rng.gen_range(1..=MERGE_ATTEMPTS_PER_INDEX * size);
    let mut accepted = 0;
    for _ in 0..attempts {
        if blocks.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..blocks.len());
        let mut k = rng.gen_range(0..blocks.len() - 1);
        if k >= i {
            k += 1;
        }
        let mut candidate = blocks.clone();
        let (lo, hi) = (i.min(k), i.max(k));
        let moved = candidate.remove(hi);
        candidate[lo].extend(moved);
        let partition = Partition::new(size, candidate.clone()).expect("merged blocks partition");
        let model = ConcreteModel::new(sigma.clone(), partition).expect("sizes agree");
        if validate_concrete(&model).is_valid() {
            blocks = candidate;
            accepted += 1;
        }
    }
    (accepted > 0).then(|| Partition::new(size, blocks).expect("partition"))
}

/// One seeded model. The flag is set when the partition strategy fell back to
/// singletons.
pub fn generate_model(
    rng: &mut impl Rng,
    max_size: usize,
    strategy: PartitionStrategy,
) -> (ConcreteModel, bool) {
    let size = rng.gen_range(1..=max_size);
    let sigma = random_partial_injection(rng, size);
    let (partition, fallback) = match strategy {
        PartitionStrategy::Singletons => (Partition::singletons(size).expect("size ≥ 1"), false),
        PartitionStrategy::RandomCompatible => match random_compatible_partition(rng, &sigma) {
            Some(p) => (p, false),
            None => (Partition::singletons(size).expect("size ≥ 1"), size > 1),
        },
    };
    (
        ConcreteModel::new(sigma, partition).expect("sizes agree"),
        fallback,
    )
}

/// All partial injections of `0..size` paired with every δ-compatible
/// partition, in a deterministic order.
pub fn enumerate_models(size: usize) -> Vec<ConcreteModel> {
    let partitions = all_partitions(size);
    let mut models = Vec::new();
    for sigma in all_partial_injections(size) {
        for p in &partitions {
            let m = ConcreteModel::new(sigma.clone(), p.clone()).expect("sizes agree");
            if validate_concrete(&m).is_valid() {
                models.push(m);
            }
        }
    }
    models
}

fn all_partial_injections(size: usize) -> Vec<PartialInjection> {
    fn extend(
        j: usize,
        size: usize,
        used: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        out: &mut Vec<PartialInjection>,
    ) {
        if j == size {
            out.push(PartialInjection::new(size, pairs.iter().copied()).expect("injective"));
            return;
        }
        extend(j + 1, size, used, pairs, out);
        for k in 0..size {
            if !used[k] {
                used[k] = true;
                pairs.push((j, k));
                extend(j + 1, size, used, pairs, out);
                pairs.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(0, size, &mut vec![false; size], &mut Vec::new(), &mut out);
    out
}

fn all_partitions(size: usize) -> Vec<Partition> {
    // restricted growth strings
    fn extend(j: usize, size: usize, labels: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if j == size {
            out.push(Partition::from_keys(size, |i| labels[i]));
            return;
        }
        let next = labels.iter().max().map_or(0, |m| m + 1);
        for l in 0..=next {
            labels.push(l);
            extend(j + 1, size, labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    extend(0, size, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailingModel {
    pub model: String,
    pub report: TheoremReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelLine {
    pub index: usize,
    pub model: String,
    pub verdicts: BTreeMap<TheoremId, Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub models: usize,
    pub singleton_fallbacks: usize,
    /// Models with `U*U ∉ A`, checked through the extension.
    pub extension_models: usize,
    pub tallies: BTreeMap<TheoremId, Tally>,
    /// Shrunk failing model per theorem, least by (size, encoding).
    pub failures: BTreeMap<TheoremId, FailingModel>,
    /// Models where the lower inclusion is strict and the upper families are
    /// strictly larger than the actual spectrum.
    pub both_inclusions_strict: usize,
    pub both_strict_example: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_model: Option<Vec<ModelLine>>,
}

impl FuzzReport {
    pub fn all_passed(&self) -> bool {
        self.tallies.values().all(|t| t.fail == 0)
    }
}

fn encoding(model: &ConcreteModel) -> String {
    model_to_json(model)
}

fn least(a: Option<String>, b: String) -> String {
    match a {
        Some(a) if (a.len(), &a) <= (b.len(), &b) => a,
        _ => b,
    }
}

/// Drops pairs of `σ` one at a time while the model stays valid and the
/// theorem keeps failing.
pub fn shrink(model: &ConcreteModel, theorem: TheoremId) -> ConcreteModel {
    let still_fails = |m: &ConcreteModel| {
        verify_everything(m)
            .map(|rs| rs.iter().any(|r| r.theorem == theorem && r.failed()))
            .unwrap_or(false)
    };
    let mut current = model.clone();
    'outer: loop {
        for (j, k) in current.sigma().pairs() {
            let sigma = current.sigma().restrict(|a, b| (a, b) != (j, k));
            let Ok(candidate) = ConcreteModel::new(sigma, current.partition().clone()) else {
                continue;
            };
            if validate_concrete(&candidate).is_valid() && still_fails(&candidate) {
                current = candidate;
                continue 'outer;
            }
        }
        return current;
    }
}

fn both_strict(model: &ConcreteModel) -> Result<bool> {
    let an = Analysis::new(model)?;
    let actual = an.oracle_set();
    let lower_strict =
        an.predicted.hat_tail.roots.is_empty() && an.predicted_set().len() < actual.len();
    let upper_strict =
        !an.upper.hat_tail.roots.is_empty() || an.upper.materialized().any(|s| !actual.contains(s));
    Ok(lower_strict && upper_strict)
}

/// Runs every check on `config.count` seeded models. Identical configs give
/// identical reports.
pub fn fuzz(config: &FuzzConfig) -> Result<FuzzReport> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = FuzzReport {
        config: config.clone(),
        models: 0,
        singleton_fallbacks: 0,
        extension_models: 0,
        tallies: BTreeMap::new(),
        failures: BTreeMap::new(),
        both_inclusions_strict: 0,
        both_strict_example: None,
        per_model: (config.granularity == Granularity::PerModel).then(Vec::new),
    };
    let mut failing: BTreeMap<TheoremId, BTreeSet<(usize, String)>> = BTreeMap::new();

    for index in 0..config.count {
        let (model, fallback) = generate_model(&mut rng, config.max_size, config.partition);
        report.models += 1;
        report.singleton_fallbacks += usize::from(fallback);
        report.extension_models += usize::from(!model.domain_in_algebra());

        let reports = verify_everything(&model)?;
        for r in &reports {
            let tally = report.tallies.entry(r.theorem).or_default();
            match r.verdict {
                Verdict::Pass => tally.pass += 1,
                Verdict::Fail => {
                    tally.fail += 1;
                    let small = shrink(&model, r.theorem);
                    failing
                        .entry(r.theorem)
                        .or_default()
                        .insert((small.size(), encoding(&small)));
                }
                Verdict::NotApplicable => tally.not_applicable += 1,
            }
        }
        if both_strict(&model)? {
            report.both_inclusions_strict += 1;
            report.both_strict_example =
                Some(least(report.both_strict_example.take(), encoding(&model)));
        }
        if let Some(lines) = report.per_model.as_mut() {
            lines.push(ModelLine {
                index,
                model: encoding(&model),
                verdicts: reports.iter().map(|r| (r.theorem, r.verdict)).collect(),
            });
        }
    }

    for (theorem, models) in failing {
        let (_, text) = models.into_iter().next().expect("nonempty");
        let model = crate::format::parse_model(&text)?;
        let r = verify_everything(&model)?
            .into_iter()
            .find(|r| r.theorem == theorem)
            .expect("theorem is always reported");
        report.failures.insert(
            theorem,
            FailingModel {
                model: text,
                report: r,
            },
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_count_is_a_config_error() {
        let err = fuzz(&FuzzConfig::new(0, 5, 1));
        assert!(matches!(err, Err(Error::Config(_))));
        let err = fuzz(&FuzzConfig::new(3, 0, 1));
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn generated_models_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let (m, _) = generate_model(&mut rng, 9, PartitionStrategy::RandomCompatible);
            assert!(validate_concrete(&m).is_valid(), "{m:?}");
            assert!(m.size() >= 1 && m.size() <= 9);
        }
    }

    #[test]
    fn coarsening_produces_non_block_domains() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let hits = (0..200)
            .filter(|_| {
                let (m, _) = generate_model(&mut rng, 8, PartitionStrategy::RandomCompatible);
                !m.domain_in_algebra()
            })
            .count();
        assert!(hits > 20, "only {hits} models with U*U ∉ A");
    }

    #[test]
    fn enumeration_counts() {
        // partial injections of an n-set: Σ_k C(n,k)² k!
        assert_eq!(all_partial_injections(1).len(), 2);
        assert_eq!(all_partial_injections(2).len(), 7);
        assert_eq!(all_partial_injections(3).len(), 34);
        // Bell numbers
        assert_eq!(all_partitions(3).len(), 5);
        assert_eq!(all_partitions(4).len(), 15);
        assert_eq!(enumerate_models(1).len(), 2);
    }

    #[test]
    fn same_seed_same_report() {
        let cfg = FuzzConfig {
            granularity: Granularity::PerModel,
            ..FuzzConfig::new(40, 6, 99)
        };
        let a = serde_json::to_string(&fuzz(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&fuzz(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn shrinking_keeps_a_valid_model() {
        // Nothing fails, so shrinking has nothing to remove.
        let m = crate::samples::truncated_shift();
        assert_eq!(shrink(&m, TheoremId::Equality), m);
    }
}
