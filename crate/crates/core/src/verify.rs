//! Cross-checks between the predicted chain spectrum and the matrix oracle.
//!
//! Each check returns a [`TheoremReport`]. The two sides are computed along
//! independent routes: [`crate::spectrum`] works on the induced partial
//! dynamical system, [`crate::oracle`] works on `σ` and the atoms of `E_*(A)`.
//! A failing verdict therefore points at a bug in one of them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::dynamics::{delta_ladder, induced_system, AbstractPds, DeltaLadder, PointSet};
use crate::error::{Error, Result};
use crate::model::{extend_to_a1, ConcreteModel};
use crate::operator::Monomial;
use crate::oracle::{
    character_sequences, check_coefficient_axioms, coefficient_atoms, OracleSpectrum,
};
use crate::spectrum::{predicted_spectrum, upper_spectrum, CharacterSeq, SpectrumDescription};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    Embedding,
    LowerBound,
    Equality,
    ViaExtension,
    IsometryCorollary,
    OperatorIdentities,
    CoefficientAxioms,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremId::Embedding => "embedding",
            TheoremId::LowerBound => "lower_bound",
            TheoremId::Equality => "equality",
            TheoremId::ViaExtension => "via_extension",
            TheoremId::IsometryCorollary => "isometry_corollary",
            TheoremId::OperatorIdentities => "operator_identities",
            TheoremId::CoefficientAxioms => "coefficient_axioms",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "n/a",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub clause: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    /// `|M̂_N|` for the materialized families.
    pub hat_sizes: BTreeMap<usize, usize>,
    /// Number of roots in the tail description (nonzero means infinitely
    /// many finite chains).
    pub hat_tail_roots: usize,
    pub m_infinity: usize,
    pub atoms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub stats: Stats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    fn not_applicable(theorem: TheoremId, note: impl Into<String>) -> Self {
        Self {
            theorem,
            verdict: Verdict::NotApplicable,
            witness: None,
            stats: Stats::default(),
            note: Some(note.into()),
        }
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<20} {}", self.theorem.to_string(), self.verdict)?;
        if self.verdict != Verdict::NotApplicable {
            let hats: Vec<String> = self
                .stats
                .hat_sizes
                .iter()
                .map(|(n, s)| format!("{n}:{s}"))
                .collect();
            write!(
                f,
                "  [atoms {}, |M̂_N| {{{}}}, tail roots {}, |M_∞| {}]",
                self.stats.atoms,
                hats.join(" "),
                self.stats.hat_tail_roots,
                self.stats.m_infinity
            )?;
        }
        if let Some(note) = &self.note {
            write!(f, "  ({note})")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n    violated: {}: {}", w.clause, w.detail)?;
        }
        Ok(())
    }
}

/// Everything both sides compute for one model.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub model: ConcreteModel,
    pub pds: AbstractPds,
    pub ladder: DeltaLadder,
    pub predicted: SpectrumDescription,
    pub upper: SpectrumDescription,
    pub oracle: OracleSpectrum,
}

impl Analysis {
    pub fn new(model: &ConcreteModel) -> Result<Self> {
        let pds = induced_system(model)?;
        let ladder = delta_ladder(&pds);
        let predicted = predicted_spectrum(&pds, &ladder);
        let upper = upper_spectrum(&pds, &ladder);
        let oracle = character_sequences(model)?;
        Ok(Self {
            model: model.clone(),
            pds,
            ladder,
            predicted,
            upper,
            oracle,
        })
    }

    pub fn oracle_set(&self) -> BTreeSet<CharacterSeq> {
        self.oracle.sequences.iter().cloned().collect()
    }

    /// Materialized predicted chains. Callers check `hat_tail` separately.
    pub fn predicted_set(&self) -> BTreeSet<CharacterSeq> {
        self.predicted.materialized().cloned().collect()
    }

    pub fn stats(&self) -> Stats {
        Stats {
            hat_sizes: self.predicted.hat_sizes(),
            hat_tail_roots: self.predicted.hat_tail.roots.len(),
            m_infinity: self.predicted.m_infinity.len(),
            atoms: self.oracle.len(),
        }
    }

    fn show(&self, seq: &CharacterSeq) -> String {
        seq.format(&self.pds)
    }

    fn show_atom(&self, atom: &[usize]) -> String {
        format!("{atom:?}")
    }
}

/// Collects clause results; the first violation becomes the witness.
struct Clauses {
    witness: Option<Witness>,
}

impl Clauses {
    fn new() -> Self {
        Self { witness: None }
    }

    fn require(&mut self, ok: bool, clause: &str, detail: impl FnOnce() -> String) {
        if !ok && self.witness.is_none() {
            self.witness = Some(Witness {
                clause: clause.to_owned(),
                detail: detail(),
            });
        }
    }

    fn finish(self, theorem: TheoremId, stats: Stats, note: Option<String>) -> TheoremReport {
        TheoremReport {
            theorem,
            verdict: if self.witness.is_none() {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            witness: self.witness,
            stats,
            note,
        }
    }
}

/// The sequence map of the oracle is injective and lands in the upper-bound
/// families `⋃ M_N ∪ M_∞`, with zero tails that never revive.
pub fn verify_embedding(model: &ConcreteModel) -> Result<TheoremReport> {
    let an = Analysis::new(model)?;
    Ok(embedding_report(&an))
}

fn embedding_report(an: &Analysis) -> TheoremReport {
    let mut c = Clauses::new();

    let mut seen: BTreeMap<&CharacterSeq, &[usize]> = BTreeMap::new();
    for (atom, seq) in an.oracle.iter() {
        if let Some(prev) = seen.insert(seq, atom) {
            c.require(false, "injectivity", || {
                format!(
                    "atoms {} and {} share the sequence {}",
                    an.show_atom(prev),
                    an.show_atom(atom),
                    an.show(seq)
                )
            });
        }
    }

    for (atom, seq) in an.oracle.iter() {
        c.require(seq.is_chain(&an.pds), "chain property", || {
            format!("atom {} has sequence {}", an.show_atom(atom), an.show(seq))
        });
        let prefix = seq.witness_prefix();
        let bad = prefix
            .iter()
            .enumerate()
            .find(|(n, x)| !an.ladder.delta(*n).contains(x));
        c.require(bad.is_none(), "x_n ∈ Δ_n", || {
            let (n, x) = bad.expect("checked");
            format!(
                "atom {}: coordinate {n} is {} which is outside Δ_{n}",
                an.show_atom(atom),
                an.pds.label(*x)
            )
        });
        match seq {
            CharacterSeq::Finite { chain } => {
                let n = chain.len() - 1;
                c.require(
                    an.upper.family(&an.pds, n).contains(seq),
                    "membership in M_N",
                    || format!("{} is not in M_{n}", an.show(seq)),
                );
            }
            CharacterSeq::Infinite { .. } => {
                c.require(
                    an.upper.m_infinity.contains(seq),
                    "membership in M_∞",
                    || format!("{} is not an infinite chain of the core", an.show(seq)),
                );
            }
        }
    }

    // Zero-tail permanence, read off σ directly for every basis index.
    let sigma = an.model.sigma();
    let horizon = an.model.size() + 1;
    for (atom, _) in an.oracle.iter() {
        for &j in atom {
            let first_zero = (0..=horizon).find(|&n| sigma.apply_pow(j, n).is_none());
            if let Some(n0) = first_zero {
                let revived = (n0..=horizon).find(|&m| sigma.apply_pow(j, m).is_some());
                c.require(revived.is_none(), "zero-tail permanence", || {
                    format!(
                        "index {j} of atom {}: ξ^{n0} = 0 but ξ^{} ≠ 0",
                        an.show_atom(atom),
                        revived.expect("checked")
                    )
                });
            }
        }
    }

    c.finish(TheoremId::Embedding, an.stats(), None)
}

/// Every chain of `⋃ M̂_N ∪ M_∞` is the sequence of some atom.
pub fn verify_lower_bound(model: &ConcreteModel) -> Result<TheoremReport> {
    let an = Analysis::new(model)?;
    Ok(lower_bound_report(&an))
}

fn lower_bound_report(an: &Analysis) -> TheoremReport {
    let mut c = Clauses::new();
    let oracle = an.oracle_set();
    let tail = &an.predicted.hat_tail;
    c.require(
        tail.roots.is_empty(),
        "finitely many predicted chains",
        || {
            format!(
                "M̂_N is nonempty for every N ≥ {} (roots {}) but the model has {} atoms",
                tail.from,
                an.pds.format_set(&tail.roots),
                oracle.len()
            )
        },
    );
    let predicted = an.predicted_set();
    let missing = predicted.iter().find(|s| !oracle.contains(s));
    c.require(missing.is_none(), "predicted chain is a character", || {
        format!(
            "{} is predicted but no atom induces it",
            an.show(missing.expect("checked"))
        )
    });
    let note = format!(
        "{} predicted of {} actual{}",
        predicted.len(),
        oracle.len(),
        if predicted.len() < oracle.len() {
            ", strict inclusion"
        } else {
            ""
        }
    );
    c.finish(TheoremId::LowerBound, an.stats(), Some(note))
}

/// With `U*U ∈ A` the predicted chains are exactly the oracle sequences.
pub fn verify_equality(model: &ConcreteModel) -> Result<TheoremReport> {
    if !model.domain_in_algebra() {
        return Err(Error::Precondition(
            "U*U is not in A; use verify_via_extension".into(),
        ));
    }
    let an = Analysis::new(model)?;
    Ok(equality_report(&an))
}

fn equality_report(an: &Analysis) -> TheoremReport {
    let mut c = Clauses::new();
    let oracle = an.oracle_set();
    let tail = &an.predicted.hat_tail;
    c.require(
        tail.roots.is_empty(),
        "finitely many predicted chains",
        || {
            format!(
                "M̂_N is nonempty for every N ≥ {} but the model is finite",
                tail.from
            )
        },
    );

    let families: Vec<&BTreeSet<CharacterSeq>> = an
        .predicted
        .hat
        .values()
        .chain(std::iter::once(&an.predicted.m_infinity))
        .collect();
    let total: usize = families.iter().map(|f| f.len()).sum();
    let predicted = an.predicted_set();
    c.require(
        total == predicted.len(),
        "families pairwise disjoint",
        || {
            format!(
                "{total} chains across families but only {} distinct",
                predicted.len()
            )
        },
    );
    for (n, family) in &an.predicted.hat {
        let off = family.iter().find(|s| s.length_index() != Some(*n));
        c.require(off.is_none(), "M̂_N holds chains of length N", || {
            format!("{} listed in M̂_{n}", an.show(off.expect("checked")))
        });
    }

    let missing = predicted.iter().find(|s| !oracle.contains(s));
    c.require(missing.is_none(), "predicted ⊆ actual", || {
        format!(
            "{} is predicted but no atom induces it",
            an.show(missing.expect("checked"))
        )
    });
    let extra = oracle.iter().find(|s| !predicted.contains(s));
    c.require(extra.is_none(), "actual ⊆ predicted", || {
        format!(
            "atom sequence {} is not among the predicted chains",
            an.show(extra.expect("checked"))
        )
    });
    c.require(an.oracle.len() == total, "size accounting", || {
        format!("{} atoms but {total} predicted chains", an.oracle.len())
    });
    c.finish(TheoremId::Equality, an.stats(), None)
}

/// For `U*U ∉ A`: equality over `A₁ = ⟨A, U*U⟩`, with `E_*(A₁) = E_*(A)`.
pub fn verify_via_extension(model: &ConcreteModel) -> Result<TheoremReport> {
    model.require_valid()?;
    if model.domain_in_algebra() {
        return Ok(TheoremReport::not_applicable(
            TheoremId::ViaExtension,
            "U*U already lies in A",
        ));
    }
    let extended = extend_to_a1(model)?;
    let an1 = Analysis::new(&extended)?;
    let inner = equality_report(&an1);
    let mut c = Clauses::new();
    c.witness = inner.witness.map(|w| Witness {
        clause: format!("over A₁: {}", w.clause),
        detail: w.detail,
    });

    let atoms = coefficient_atoms(model)?;
    let atoms1 = coefficient_atoms(&extended)?;
    c.require(atoms.atoms == atoms1.atoms, "E_*(A₁) = E_*(A)", || {
        format!(
            "atoms {:?} over A but {:?} over A₁",
            atoms.atoms, atoms1.atoms
        )
    });

    // Presentation check: projecting A₁-chains to blocks of A recovers the
    // oracle sequences of the original model.
    let oracle = character_sequences(model)?;
    let project = |p: usize| model.partition().block_of(extended.partition().block(p)[0]);
    let projected: BTreeSet<CharacterSeq> = an1
        .predicted_set()
        .iter()
        .map(|seq| match seq {
            CharacterSeq::Finite { chain } => {
                CharacterSeq::finite(chain.iter().map(|&p| project(p)).collect())
            }
            CharacterSeq::Infinite { preperiod, period } => CharacterSeq::lasso(
                preperiod.iter().map(|&p| project(p)).collect(),
                period.iter().map(|&p| project(p)).collect(),
            ),
        })
        .collect();
    let original: BTreeSet<CharacterSeq> = oracle.sequences.iter().cloned().collect();
    c.require(projected == original, "projection to M(A)", || {
        format!(
            "{} projected chains vs {} atom sequences over A",
            projected.len(),
            original.len()
        )
    });

    let note = format!(
        "A₁ has {} blocks, A has {}",
        extended.partition().len(),
        model.partition().len()
    );
    Ok(c.finish(TheoremId::ViaExtension, an1.stats(), Some(note)))
}

/// For an isometry: `α` is onto, no finite chains, and the spectrum is `M_∞`.
pub fn verify_isometry_corollary(model: &ConcreteModel) -> Result<TheoremReport> {
    model.require_valid()?;
    if model.sigma().domain().len() != model.size() {
        return Ok(TheoremReport::not_applicable(
            TheoremId::IsometryCorollary,
            "U is not an isometry",
        ));
    }
    let an = Analysis::new(model)?;
    let mut c = Clauses::new();
    c.require(an.pds.is_surjective(), "α surjective", || {
        let image = an.pds.image(&an.pds.domain());
        let missed: PointSet = an.pds.all_points().difference(&image).copied().collect();
        format!("points {} are not in α(Δ)", an.pds.format_set(&missed))
    });
    let nonempty = an.predicted.hat.iter().find(|(_, f)| !f.is_empty());
    c.require(nonempty.is_none(), "all M̂_N empty", || {
        let (n, f) = nonempty.expect("checked");
        format!("M̂_{n} has {} chains", f.len())
    });
    c.require(
        an.predicted.hat_tail.roots.is_empty(),
        "all M̂_N empty",
        || {
            format!(
                "tail roots {}",
                an.pds.format_set(&an.predicted.hat_tail.roots)
            )
        },
    );
    c.require(
        an.oracle_set() == an.predicted.m_infinity,
        "spectrum = M_∞",
        || {
            format!(
                "{} atoms vs {} infinite chains",
                an.oracle.len(),
                an.predicted.m_infinity.len()
            )
        },
    );
    Ok(c.finish(TheoremId::IsometryCorollary, an.stats(), None))
}

/// `Ua = δ(a)U`, monotonicity of `U*ⁿUⁿ` and `UⁿU*ⁿ`, and `B ∈ Δ_n` iff
/// `B ⊆ range σⁿ`.
pub fn verify_operator_identities(model: &ConcreteModel) -> Result<TheoremReport> {
    let an = Analysis::new(model)?;
    Ok(operator_report(&an))
}

fn operator_report(an: &Analysis) -> TheoremReport {
    let model = &an.model;
    let size = model.size();
    let partition = model.partition();
    let u = model.operator();
    let ustar = u.adjoint();
    let mut c = Clauses::new();

    for (b, block) in partition.blocks().iter().enumerate() {
        let a = Monomial::projection(size, block.iter().copied());
        let delta_a = u.mul(&a).mul(&ustar);
        c.require(u.mul(&a) == delta_a.mul(&u), "Ua = δ(a)U", || {
            format!("block {}", partition.label(b))
        });
    }

    let horizon = size + 1;
    let source: Vec<Monomial> = (0..=horizon + 1)
        .map(|n| ustar.pow(n).mul(&u.pow(n)))
        .collect();
    let target: Vec<Monomial> = (0..=horizon + 1)
        .map(|n| u.pow(n).mul(&ustar.pow(n)))
        .collect();
    for n in 0..=horizon {
        for (name, family) in [("U*ⁿUⁿ", &source), ("UⁿU*ⁿ", &target)] {
            let (p, q) = (&family[n], &family[n + 1]);
            c.require(p.is_diagonal() && p.mul(p) == *p, "projection", || {
                format!("{name} at n = {n} is not a diagonal projection")
            });
            c.require(
                q.mul(p) == *q && p.mul(q) == *q,
                "commuting decreasing family",
                || format!("{name} fails P_{}·P_{n} = P_{} ", n + 1, n + 1),
            );
        }
    }

    for (n, range_projection) in target.iter().enumerate().take(horizon + 1) {
        let range_n = range_projection.diagonal_entries();
        for (b, block) in partition.blocks().iter().enumerate() {
            let inside = block.iter().all(|&j| range_n[j] == 1);
            let in_ladder = an.ladder.delta(n).contains(&b);
            c.require(
                inside == in_ladder,
                "B ∈ Δ_n ⇔ B ⊆ range σⁿ",
                || {
                    format!(
                        "block {} at n = {n}: ladder says {in_ladder}, UⁿU*ⁿ says {inside}",
                        partition.label(b)
                    )
                },
            );
        }
    }

    c.finish(TheoremId::OperatorIdentities, an.stats(), None)
}

/// `E_*(A)` is a coefficient algebra: invariant under `δ` and `δ_*`, with
/// `Ub = δ(b)U` and both maps multiplicative.
pub fn verify_coefficient_axioms(model: &ConcreteModel) -> Result<TheoremReport> {
    let an = Analysis::new(model)?;
    let report = check_coefficient_axioms(model, &an.oracle.atoms);
    let mut c = Clauses::new();
    for (name, check) in report.checks() {
        c.require(check.passed, name, || {
            format!("atoms {:?}", check.witnesses)
        });
    }
    let note = format!("generation depth {}", an.oracle.atoms.generation_depth);
    Ok(c.finish(TheoremId::CoefficientAxioms, an.stats(), Some(note)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Embed,
    Lower,
    Equal,
    All,
}

/// Equality when `U*U ∈ A`, otherwise equality over the extension.
pub fn verify_equality_or_extension(model: &ConcreteModel) -> Result<TheoremReport> {
    if model.domain_in_algebra() {
        verify_equality(model)
    } else {
        verify_via_extension(model)
    }
}

/// Reports for the requested level. `All` runs embedding, lower bound,
/// equality (direct or via extension), operator identities, and the isometry
/// corollary when `U` is an isometry.
pub fn verify_level(model: &ConcreteModel, level: Level) -> Result<Vec<TheoremReport>> {
    Ok(match level {
        Level::Embed => vec![verify_embedding(model)?],
        Level::Lower => vec![verify_lower_bound(model)?],
        Level::Equal => vec![verify_equality_or_extension(model)?],
        Level::All => {
            let mut reports = vec![
                verify_embedding(model)?,
                verify_lower_bound(model)?,
                verify_equality_or_extension(model)?,
                verify_operator_identities(model)?,
            ];
            if model.sigma().domain().len() == model.size() {
                reports.push(verify_isometry_corollary(model)?);
            }
            reports
        }
    })
}

/// Every check, in a fixed order. Not-applicable reports are included.
pub fn verify_everything(model: &ConcreteModel) -> Result<Vec<TheoremReport>> {
    let an = Analysis::new(model)?;
    let equality = if model.domain_in_algebra() {
        equality_report(&an)
    } else {
        verify_via_extension(model)?
    };
    Ok(vec![
        embedding_report(&an),
        lower_bound_report(&an),
        equality,
        verify_isometry_corollary(model)?,
        operator_report(&an),
        verify_coefficient_axioms(model)?,
    ])
}
