//! Backward-orbit chains and the predicted maximal ideal space.
//!
//! A character of the coefficient algebra is encoded by the sequence of
//! characters of `A` it induces along `δ_*ⁿ`: either a finite chain
//! `(x_0, …, x_N)` followed by zeros, or an infinite chain `(x_0, x_1, …)`.
//! Consecutive coordinates satisfy `α(x_n) = x_{n-1}`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::dynamics::{AbstractPds, DeltaLadder, Point, PointSet};
use crate::error::{Error, Result};

/// The sequence form of a character.
///
/// Infinite chains are stored as a lasso `preperiod · period^ω` in canonical
/// form (minimal period, then minimal preperiod), so structural equality is
/// equality of the underlying sequences.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CharacterSeq {
    /// `(x_0, …, x_N, 0, 0, …)`; never empty.
    Finite { chain: Vec<Point> },
    /// `preperiod` followed by `period` repeated forever; `period` nonempty.
    Infinite {
        preperiod: Vec<Point>,
        period: Vec<Point>,
    },
}

impl CharacterSeq {
    pub fn finite(chain: Vec<Point>) -> Self {
        assert!(!chain.is_empty(), "a finite chain has at least x_0");
        CharacterSeq::Finite { chain }
    }

    /// Builds an infinite chain, reducing the lasso to canonical form.
    pub fn lasso(mut preperiod: Vec<Point>, mut period: Vec<Point>) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        let len = period.len();
        if let Some(d) = (1..=len).find(|&d| {
            len.is_multiple_of(d) && (0..len).all(|i| period[i] == period[(i + d) % len])
        }) {
            period.truncate(d);
        }
        while preperiod.last().is_some() && preperiod.last() == period.last() {
            preperiod.pop();
            period.rotate_right(1);
        }
        CharacterSeq::Infinite { preperiod, period }
    }

    /// `N` for a finite chain `(x_0, …, x_N)`.
    pub fn length_index(&self) -> Option<usize> {
        match self {
            CharacterSeq::Finite { chain } => Some(chain.len() - 1),
            CharacterSeq::Infinite { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, CharacterSeq::Finite { .. })
    }

    /// `x_n`, or `None` where the sequence is zero.
    pub fn coordinate(&self, n: usize) -> Option<Point> {
        match self {
            CharacterSeq::Finite { chain } => chain.get(n).copied(),
            CharacterSeq::Infinite { preperiod, period } => Some(if n < preperiod.len() {
                preperiod[n]
            } else {
                period[(n - preperiod.len()) % period.len()]
            }),
        }
    }

    /// The defined coordinates of a finite chain, or the first
    /// `preperiod + 2·period` coordinates of an infinite one.
    pub fn witness_prefix(&self) -> Vec<Point> {
        match self {
            CharacterSeq::Finite { chain } => chain.clone(),
            CharacterSeq::Infinite { preperiod, period } => (0..preperiod.len() + 2 * period.len())
                .map(|n| self.coordinate(n).expect("infinite"))
                .collect(),
        }
    }

    /// Whether `α(x_n) = x_{n-1}` along [`witness_prefix`](Self::witness_prefix).
    /// For an infinite lasso this covers one full wrap of the period.
    pub fn is_chain(&self, pds: &AbstractPds) -> bool {
        self.witness_prefix()
            .windows(2)
            .all(|w| pds.alpha(w[1]) == Some(w[0]))
    }

    pub fn format(&self, pds: &AbstractPds) -> String {
        let fmt = |xs: &[Point]| -> Vec<&str> { xs.iter().map(|&p| pds.label(p)).collect() };
        match self {
            CharacterSeq::Finite { chain } => format!("({}, 0, …)", fmt(chain).join(", ")),
            CharacterSeq::Infinite { preperiod, period } => {
                let pre = fmt(preperiod);
                let per = fmt(period).join(", ");
                if pre.is_empty() {
                    format!("({per})^ω")
                } else {
                    format!("{}, ({per})^ω", pre.join(", "))
                }
            }
        }
    }
}

/// `M̂_N` (or `M_N`) for every `N ≥ from` is the set of chains ending at one
/// of `roots`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatTail {
    pub from: usize,
    pub roots: PointSet,
}

/// A finite description of `⋃ M̂_N ∪ M_∞`, or of the upper families
/// `⋃ M_N ∪ M_∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumDescription {
    /// Materialized families for `N < hat_tail.from`.
    pub hat: BTreeMap<usize, BTreeSet<CharacterSeq>>,
    pub hat_tail: HatTail,
    pub m_infinity: BTreeSet<CharacterSeq>,
    pub upper: Option<Box<SpectrumDescription>>,
}

impl SpectrumDescription {
    /// The family of length-index `n`, materializing the tail if needed.
    pub fn family(&self, pds: &AbstractPds, n: usize) -> BTreeSet<CharacterSeq> {
        if n < self.hat_tail.from {
            self.hat.get(&n).cloned().unwrap_or_default()
        } else {
            self.hat_tail
                .roots
                .iter()
                .map(|&x| chain_from_root(pds, x, n).expect("tail roots lie in Δ_N"))
                .collect()
        }
    }

    /// Whether only finitely many finite chains are described.
    pub fn is_finite(&self) -> bool {
        self.hat_tail.roots.is_empty()
    }

    /// All materialized finite chains followed by the infinite ones.
    pub fn materialized(&self) -> impl Iterator<Item = &CharacterSeq> {
        self.hat.values().flatten().chain(&self.m_infinity)
    }

    pub fn hat_sizes(&self) -> BTreeMap<usize, usize> {
        self.hat.iter().map(|(&n, s)| (n, s.len())).collect()
    }
}

/// `(αᴺ(x), …, α(x), x)`.
pub fn chain_from_root(pds: &AbstractPds, x: Point, n: usize) -> Result<CharacterSeq> {
    let mut chain = Vec::with_capacity(n + 1);
    chain.push(x);
    let mut cur = x;
    for depth in 1..=n {
        cur = pds.alpha(cur).ok_or_else(|| Error::OutsideDomain {
            point: pds.label(x).to_owned(),
            requested: n,
            depth,
        })?;
        chain.push(cur);
    }
    chain.reverse();
    Ok(CharacterSeq::finite(chain))
}

/// First index from which the finite families are given by a tail description.
/// `Δ_N` is constant from `stab_forward` on, and `Δ_{-1}` is fixed, so both
/// root sets are eventually constant. `N = 0` is always materialized.
fn tail_start(ladder: &DeltaLadder) -> usize {
    ladder.stab_forward().max(1)
}

fn finite_families(
    pds: &AbstractPds,
    ladder: &DeltaLadder,
    roots: impl Fn(usize) -> PointSet,
) -> (BTreeMap<usize, BTreeSet<CharacterSeq>>, HatTail) {
    let from = tail_start(ladder);
    let hat = (0..from)
        .map(|n| {
            let chains = roots(n)
                .into_iter()
                .map(|x| chain_from_root(pds, x, n).expect("roots lie in Δ_N"))
                .collect();
            (n, chains)
        })
        .collect();
    (
        hat,
        HatTail {
            from,
            roots: roots(from),
        },
    )
}

/// Infinite backward chains, one per point of the core. On a finite space `α`
/// restricted to `Δ_{-∞} ∩ Δ_1` is a bijection onto `Δ_{-∞}`, and every
/// infinite backward chain stays inside `Δ_{-∞}`, so each chain is the orbit of
/// its base point under the inverse bijection.
fn infinite_chains(pds: &AbstractPds, ladder: &DeltaLadder) -> BTreeSet<CharacterSeq> {
    let core = ladder.core();
    let back = |x: Point| -> Point {
        let pre: Vec<Point> = pds
            .preimages(x)
            .into_iter()
            .filter(|p| core.contains(p))
            .collect();
        assert_eq!(
            pre.len(),
            1,
            "α is not a bijection on the core at {}",
            pds.label(x)
        );
        pre[0]
    };
    core.iter()
        .map(|&x0| {
            let mut period = vec![x0];
            let mut x = back(x0);
            while x != x0 {
                period.push(x);
                x = back(x);
            }
            CharacterSeq::lasso(Vec::new(), period)
        })
        .collect()
}

/// `⋃ M̂_N ∪ M_∞` with `M̂_N` the chains whose top `x_N ∈ Δ_N` is not in
/// `Δ_{-1}`.
pub fn predicted_spectrum(pds: &AbstractPds, ladder: &DeltaLadder) -> SpectrumDescription {
    let excluded = ladder.delta_neg(1);
    let (hat, hat_tail) = finite_families(pds, ladder, |n| {
        ladder.delta(n).difference(excluded).copied().collect()
    });
    SpectrumDescription {
        hat,
        hat_tail,
        m_infinity: infinite_chains(pds, ladder),
        upper: None,
    }
}

/// The upper-bound families `M_N`, whose chains only need `x_N ∈ Δ_N`.
pub fn upper_spectrum(pds: &AbstractPds, ladder: &DeltaLadder) -> SpectrumDescription {
    let (hat, hat_tail) = finite_families(pds, ladder, |n| ladder.delta(n).clone());
    SpectrumDescription {
        hat,
        hat_tail,
        m_infinity: infinite_chains(pds, ladder),
        upper: None,
    }
}

/// The predicted spectrum with the upper-bound families attached.
pub fn full_spectrum(pds: &AbstractPds, ladder: &DeltaLadder) -> SpectrumDescription {
    SpectrumDescription {
        upper: Some(Box::new(upper_spectrum(pds, ladder))),
        ..predicted_spectrum(pds, ladder)
    }
}

/// A basic neighborhood `O(a_1, …, a_k, n, ε)` of `center`. Each coefficient
/// is an element of `A` in Gelfand form: one value per point of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodSpec {
    coeffs: Vec<Vec<BigRational>>,
    level: usize,
    epsilon: BigRational,
    center: CharacterSeq,
}

impl NeighborhoodSpec {
    pub fn new(
        pds: &AbstractPds,
        coeffs: Vec<Vec<BigRational>>,
        level: usize,
        epsilon: BigRational,
        center: CharacterSeq,
    ) -> Result<Self> {
        if !epsilon.is_positive() {
            return Err(Error::Precondition(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        if let Some(i) = coeffs.iter().position(|a| a.len() != pds.len()) {
            return Err(Error::Precondition(format!(
                "coefficient {i} has {} values for {} points",
                coeffs[i].len(),
                pds.len()
            )));
        }
        Ok(Self {
            coeffs,
            level,
            epsilon,
            center,
        })
    }

    pub fn center(&self) -> &CharacterSeq {
        &self.center
    }

    pub fn level(&self) -> usize {
        self.level
    }

    fn close(&self, x: Point, y: Point) -> bool {
        self.coeffs
            .iter()
            .all(|a| (&a[x] - &a[y]).abs() < self.epsilon)
    }
}

/// Membership in a basic neighborhood, compared exactly with a strict `<`.
///
/// Around a finite chain of length-index `N` the neighborhood holds chains of
/// the same length whose tops are `ε`-close on every coefficient; the level is
/// not used. Around an infinite chain it holds every chain with a defined
/// `n`-th coordinate that is `ε`-close to the center's `n`-th coordinate.
pub fn neighborhood_contains(spec: &NeighborhoodSpec, y: &CharacterSeq) -> bool {
    match &spec.center {
        CharacterSeq::Finite { chain } => match y {
            CharacterSeq::Finite { chain: other } if other.len() == chain.len() => spec.close(
                *chain.last().expect("nonempty"),
                *other.last().expect("nonempty"),
            ),
            _ => false,
        },
        center @ CharacterSeq::Infinite { .. } => {
            let x_n = center.coordinate(spec.level).expect("infinite");
            y.coordinate(spec.level)
                .is_some_and(|y_n| spec.close(x_n, y_n))
        }
    }
}

/// Convenience: an element of `A` as a function on points, from integers.
pub fn point_function(values: impl IntoIterator<Item = i64>) -> Vec<BigRational> {
    values
        .into_iter()
        .map(|v| BigRational::from_integer(v.into()))
        .collect()
}

/// The zero function on `M`.
pub fn zero_function(pds: &AbstractPds) -> Vec<BigRational> {
    vec![BigRational::zero(); pds.len()]
}
