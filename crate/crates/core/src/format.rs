//! File formats: model and system inputs, spectrum and oracle reports, DOT.
//!
//! Model files are canonical: `σ` pairs sorted by source and partition blocks
//! in canonical order. Anything else is rejected instead of being normalized,
//! so that one model has exactly one encoding.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dynamics::{AbstractPds, DeltaLadder, Point};
use crate::error::{Error, Result};
use crate::model::{ConcreteModel, PartialInjection, Partition};
use crate::oracle::OracleSpectrum;
use crate::spectrum::{CharacterSeq, HatTail, SpectrumDescription};

fn parse_error(what: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!("{what}: {e}"))
}

#[derive(Deserialize)]
struct KindProbe {
    kind: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    kind: String,
    size: usize,
    sigma: Vec<[usize; 2]>,
    partition: Vec<Vec<usize>>,
}

/// A point label in a system file; integers are accepted and kept as text.
#[derive(Serialize, Deserialize, Clone)]
#[serde(untagged)]
enum Label {
    Text(String),
    Number(i64),
}

impl Label {
    fn into_string(self) -> String {
        match self {
            Label::Text(s) => s,
            Label::Number(n) => n.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PdsFile {
    kind: String,
    points: Vec<Label>,
    domain: Vec<Label>,
    alpha: Vec<[Label; 2]>,
}

/// Either kind of input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Concrete(ConcreteModel),
    Pds(AbstractPds),
}

pub fn parse_input(text: &str) -> Result<Input> {
    let probe: KindProbe = serde_json::from_str(text).map_err(|e| parse_error("input", e))?;
    match probe.kind.as_deref() {
        Some("concrete") => parse_model(text).map(Input::Concrete),
        Some("pds") => parse_pds(text).map(Input::Pds),
        Some(other) => Err(Error::Parse(format!(
            "field `kind`: expected \"concrete\" or \"pds\", found {other:?}"
        ))),
        None => Err(Error::Parse("missing field `kind`".into())),
    }
}

/// Parses a canonical model file.
pub fn parse_model(text: &str) -> Result<ConcreteModel> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| parse_error("model", e))?;
    if file.kind != "concrete" {
        return Err(Error::Parse(format!(
            "field `kind`: expected \"concrete\", found {:?}",
            file.kind
        )));
    }
    for w in file.sigma.windows(2) {
        if w[0][0] == w[1][0] {
            return Err(Error::DuplicateSource(w[0][0]));
        }
        if w[0][0] > w[1][0] {
            return Err(Error::NonCanonical(format!(
                "field `sigma`: pairs must be sorted by source, found {} before {}",
                w[0][0], w[1][0]
            )));
        }
    }
    let sigma = PartialInjection::new(file.size, file.sigma.iter().map(|p| (p[0], p[1])))?;
    let partition = Partition::from_canonical(file.size, file.partition)?;
    ConcreteModel::new(sigma, partition)
}

pub fn parse_pds(text: &str) -> Result<AbstractPds> {
    let file: PdsFile = serde_json::from_str(text).map_err(|e| parse_error("system", e))?;
    if file.kind != "pds" {
        return Err(Error::Parse(format!(
            "field `kind`: expected \"pds\", found {:?}",
            file.kind
        )));
    }
    let points: Vec<String> = file.points.into_iter().map(Label::into_string).collect();
    let domain: Vec<String> = file.domain.into_iter().map(Label::into_string).collect();
    let alpha: Vec<(String, String)> = file
        .alpha
        .into_iter()
        .map(|[p, q]| (p.into_string(), q.into_string()))
        .collect();
    AbstractPds::from_labels(&points, &domain, &alpha)
}

/// Canonical single-line encoding of a model.
pub fn model_to_json(model: &ConcreteModel) -> String {
    let file = ModelFile {
        kind: "concrete".into(),
        size: model.size(),
        sigma: model
            .sigma()
            .pairs()
            .into_iter()
            .map(|(j, k)| [j, k])
            .collect(),
        partition: model.partition().blocks().to_vec(),
    };
    serde_json::to_string(&file).expect("serializable")
}

pub fn pds_to_json(pds: &AbstractPds) -> String {
    let domain = pds.domain();
    let file = PdsFile {
        kind: "pds".into(),
        points: pds.labels().iter().cloned().map(Label::Text).collect(),
        domain: domain
            .iter()
            .map(|&p| Label::Text(pds.label(p).to_owned()))
            .collect(),
        alpha: domain
            .iter()
            .map(|&p| {
                [
                    Label::Text(pds.label(p).to_owned()),
                    Label::Text(pds.label(pds.alpha(p).expect("in domain")).to_owned()),
                ]
            })
            .collect(),
    };
    serde_json::to_string(&file).expect("serializable")
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct HatJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub chains: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TailJson {
    pub from: usize,
    pub roots: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LassoJson {
    pub preperiod: Vec<String>,
    pub period: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SpectrumJson {
    pub hat: Vec<HatJson>,
    pub hat_tail: TailJson,
    pub m_infinity: Vec<LassoJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<Box<SpectrumJson>>,
}

fn labels_of(pds: &AbstractPds, xs: &[Point]) -> Vec<String> {
    xs.iter().map(|&p| pds.label(p).to_owned()).collect()
}

fn points_of(pds: &AbstractPds, labels: &[String]) -> Result<Vec<Point>> {
    labels
        .iter()
        .map(|l| {
            pds.point_by_label(l)
                .ok_or_else(|| Error::Parse(format!("unknown point {l:?}")))
        })
        .collect()
}

pub fn spectrum_to_json(desc: &SpectrumDescription, pds: &AbstractPds) -> SpectrumJson {
    SpectrumJson {
        hat: desc
            .hat
            .iter()
            .map(|(&n, chains)| HatJson {
                n,
                chains: chains
                    .iter()
                    .map(|c| match c {
                        CharacterSeq::Finite { chain } => labels_of(pds, chain),
                        CharacterSeq::Infinite { .. } => unreachable!("hat families are finite"),
                    })
                    .collect(),
            })
            .collect(),
        hat_tail: TailJson {
            from: desc.hat_tail.from,
            roots: desc
                .hat_tail
                .roots
                .iter()
                .map(|&p| pds.label(p).to_owned())
                .collect(),
        },
        m_infinity: desc.m_infinity.iter().map(|s| lasso_json(pds, s)).collect(),
        upper: desc
            .upper
            .as_ref()
            .map(|u| Box::new(spectrum_to_json(u, pds))),
    }
}

fn lasso_json(pds: &AbstractPds, seq: &CharacterSeq) -> LassoJson {
    match seq {
        CharacterSeq::Infinite { preperiod, period } => LassoJson {
            preperiod: labels_of(pds, preperiod),
            period: labels_of(pds, period),
        },
        CharacterSeq::Finite { .. } => unreachable!("M_∞ holds infinite chains"),
    }
}

pub fn spectrum_from_json(json: &SpectrumJson, pds: &AbstractPds) -> Result<SpectrumDescription> {
    let mut hat = BTreeMap::new();
    for entry in &json.hat {
        let mut chains = BTreeSet::new();
        for chain in &entry.chains {
            if chain.len() != entry.n + 1 {
                return Err(Error::Parse(format!(
                    "chain of {} points listed under N = {}",
                    chain.len(),
                    entry.n
                )));
            }
            chains.insert(CharacterSeq::finite(points_of(pds, chain)?));
        }
        hat.insert(entry.n, chains);
    }
    let m_infinity = json
        .m_infinity
        .iter()
        .map(|l| {
            if l.period.is_empty() {
                return Err(Error::Parse("empty period in m_infinity".into()));
            }
            Ok(CharacterSeq::lasso(
                points_of(pds, &l.preperiod)?,
                points_of(pds, &l.period)?,
            ))
        })
        .collect::<Result<_>>()?;
    Ok(SpectrumDescription {
        hat,
        hat_tail: HatTail {
            from: json.hat_tail.from,
            roots: points_of(pds, &json.hat_tail.roots)?.into_iter().collect(),
        },
        m_infinity,
        upper: json
            .upper
            .as_ref()
            .map(|u| spectrum_from_json(u, pds).map(Box::new))
            .transpose()?,
    })
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(untagged)]
pub enum SequenceJson {
    Finite(Vec<String>),
    Infinite(LassoJson),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct AtomJson {
    pub indices: Vec<usize>,
    pub sequence: SequenceJson,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct OracleJson {
    pub generation_depth: usize,
    pub atoms: Vec<AtomJson>,
}

/// Oracle report; sequences use the block labels of the model's partition.
pub fn oracle_to_json(oracle: &OracleSpectrum, model: &ConcreteModel) -> OracleJson {
    let partition = model.partition();
    let labels = |xs: &[Point]| xs.iter().map(|&b| partition.label(b)).collect::<Vec<_>>();
    OracleJson {
        generation_depth: oracle.atoms.generation_depth,
        atoms: oracle
            .iter()
            .map(|(atom, seq)| AtomJson {
                indices: atom.to_vec(),
                sequence: match seq {
                    CharacterSeq::Finite { chain } => SequenceJson::Finite(labels(chain)),
                    CharacterSeq::Infinite { preperiod, period } => {
                        SequenceJson::Infinite(LassoJson {
                            preperiod: labels(preperiod),
                            period: labels(period),
                        })
                    }
                },
            })
            .collect(),
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Two digraphs: `α` on `M` with `Δ` drawn as boxes, `Δ_{-1}` filled and the
/// core double-bordered; and the forest of materialized chains, each chain a
/// path from `x_0` to its top, infinite chains closing their period with a
/// dashed back edge.
pub fn to_dot(pds: &AbstractPds, ladder: &DeltaLadder, spectrum: &SpectrumDescription) -> String {
    let mut out = String::new();
    let image = ladder.delta_neg(1);
    let core = ladder.core();
    out.push_str("digraph alpha {\n  rankdir=LR;\n");
    for p in pds.points() {
        let mut attrs = vec![format!("label={}", dot_id(pds.label(p)))];
        attrs.push(
            if pds.in_domain(p) {
                "shape=box"
            } else {
                "shape=ellipse"
            }
            .into(),
        );
        if image.contains(&p) {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=lightgray".into());
        }
        if core.contains(&p) {
            attrs.push("peripheries=2".into());
        }
        let _ = writeln!(out, "  p{p} [{}];", attrs.join(", "));
    }
    for p in pds.points() {
        if let Some(q) = pds.alpha(p) {
            let _ = writeln!(out, "  p{p} -> p{q} [label=\"α\"];");
        }
    }
    out.push_str("}\n");

    out.push_str("digraph chains {\n  rankdir=LR;\n  node [shape=ellipse];\n");
    let mut nodes: BTreeMap<Vec<Point>, usize> = BTreeMap::new();
    let mut tops: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut edges = BTreeSet::new();
    for (&n, chains) in &spectrum.hat {
        for chain in chains {
            let CharacterSeq::Finite { chain } = chain else {
                continue;
            };
            let mut parent: Option<usize> = None;
            for len in 1..=chain.len() {
                let prefix = chain[..len].to_vec();
                let next_id = nodes.len();
                let id = *nodes.entry(prefix).or_insert(next_id);
                if let Some(par) = parent {
                    edges.insert((par, id));
                }
                parent = Some(id);
            }
            tops.entry(parent.expect("nonempty chain"))
                .or_default()
                .push(n);
        }
    }
    for (prefix, id) in &nodes {
        let last = *prefix.last().expect("nonempty");
        match tops.get(id) {
            Some(ns) => {
                let ns: Vec<String> = ns.iter().map(|n| format!("M̂_{n}")).collect();
                let _ = writeln!(
                    out,
                    "  c{id} [label={}, shape=box, xlabel={}];",
                    dot_id(pds.label(last)),
                    dot_id(&ns.join(" "))
                );
            }
            None => {
                let _ = writeln!(out, "  c{id} [label={}];", dot_id(pds.label(last)));
            }
        }
    }
    for (a, b) in &edges {
        let _ = writeln!(out, "  c{a} -> c{b};");
    }
    for (k, seq) in spectrum.m_infinity.iter().enumerate() {
        let CharacterSeq::Infinite { preperiod, period } = seq else {
            continue;
        };
        let all: Vec<Point> = preperiod.iter().chain(period).copied().collect();
        for (i, &p) in all.iter().enumerate() {
            let _ = writeln!(
                out,
                "  i{k}_{i} [label={}, peripheries=2];",
                dot_id(pds.label(p))
            );
            if i > 0 {
                let _ = writeln!(out, "  i{k}_{} -> i{k}_{i};", i - 1);
            }
        }
        let _ = writeln!(
            out,
            "  i{k}_{} -> i{k}_{} [style=dashed];",
            all.len() - 1,
            preperiod.len()
        );
    }
    if spectrum.hat_tail.roots.is_empty() {
        let _ = writeln!(out, "  // M̂_N empty for N ≥ {}", spectrum.hat_tail.from);
    } else {
        let _ = writeln!(
            out,
            "  tail [shape=note, label={}];",
            dot_id(&format!(
                "M̂_N for N ≥ {}: roots {}",
                spectrum.hat_tail.from,
                pds.format_set(&spectrum.hat_tail.roots)
            ))
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{delta_ladder, induced_system};
    use crate::samples;
    use crate::spectrum::full_spectrum;

    #[test]
    fn model_encoding_is_canonical() {
        let text = model_to_json(&samples::merged_source());
        assert_eq!(
            text,
            r#"{"kind":"concrete","size":3,"sigma":[[0,2]],"partition":[[0,1],[2]]}"#
        );
        assert_eq!(parse_model(&text).unwrap(), samples::merged_source());
    }

    #[test]
    fn model_parse_errors() {
        let dup = r#"{"kind":"concrete","size":3,"sigma":[[0,2],[1,2]],"partition":[[0],[1],[2]]}"#;
        assert!(matches!(parse_model(dup), Err(Error::DuplicateTarget(2))));
        let dup = r#"{"kind":"concrete","size":3,"sigma":[[0,2],[0,1]],"partition":[[0],[1],[2]]}"#;
        assert!(matches!(parse_model(dup), Err(Error::DuplicateSource(0))));
        let unsorted =
            r#"{"kind":"concrete","size":3,"sigma":[[1,2],[0,1]],"partition":[[0],[1],[2]]}"#;
        assert!(matches!(parse_model(unsorted), Err(Error::NonCanonical(_))));
        let blocks = r#"{"kind":"concrete","size":3,"sigma":[],"partition":[[2],[0,1]]}"#;
        assert!(matches!(parse_model(blocks), Err(Error::NonCanonical(_))));
        let range = r#"{"kind":"concrete","size":2,"sigma":[[0,5]],"partition":[[0],[1]]}"#;
        assert!(matches!(
            parse_model(range),
            Err(Error::IndexOutOfRange { .. })
        ));
        let extra = r#"{"kind":"concrete","size":1,"sigma":[],"partition":[[0]],"x":1}"#;
        assert!(matches!(parse_model(extra), Err(Error::Parse(_))));
        let broken = "{\"kind\":\"concrete\",\n\"size\":\"three\"}";
        match parse_model(broken) {
            Err(Error::Parse(msg)) => assert!(msg.contains("line 2"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pds_round_trip_and_kinds() {
        let pds = samples::collapsing_pair();
        let text = pds_to_json(&pds);
        assert_eq!(
            text,
            r#"{"kind":"pds","points":["a","b"],"domain":["a","b"],"alpha":[["a","a"],["b","a"]]}"#
        );
        assert_eq!(parse_input(&text).unwrap(), Input::Pds(pds));
        let numeric = r#"{"kind":"pds","points":[0,1],"domain":[1],"alpha":[[1,0]]}"#;
        let pds = parse_pds(numeric).unwrap();
        assert_eq!(pds.labels(), &["0", "1"]);
        assert!(matches!(
            parse_input(r#"{"kind":"graph"}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(parse_input(r#"{"size":1}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn spectrum_json_shape_for_collapsing_pair() {
        let pds = samples::collapsing_pair();
        let desc = full_spectrum(&pds, &delta_ladder(&pds));
        let json = serde_json::to_value(spectrum_to_json(&desc, &pds)).unwrap();
        assert_eq!(json["hat_tail"]["from"], 1);
        assert_eq!(json["hat_tail"]["roots"], serde_json::json!(["b"]));
        assert_eq!(
            json["m_infinity"],
            serde_json::json!([{"preperiod": [], "period": ["a"]}])
        );
        assert_eq!(
            json["hat"],
            serde_json::json!([{"N": 0, "chains": [["b"]]}])
        );
        assert!(json["upper"].is_object());
    }

    #[test]
    fn spectrum_json_rejects_mislabelled_chains() {
        let pds = samples::collapsing_pair();
        let mut json = spectrum_to_json(&full_spectrum(&pds, &delta_ladder(&pds)), &pds);
        json.hat[0].chains.push(vec!["a".into(), "b".into()]);
        assert!(spectrum_from_json(&json, &pds).is_err());
    }

    #[test]
    fn oracle_json_uses_block_labels() {
        let m = samples::merged_source();
        let oracle = crate::oracle::character_sequences(&m).unwrap();
        let json = serde_json::to_value(oracle_to_json(&oracle, &m)).unwrap();
        assert_eq!(json["atoms"][0]["indices"], serde_json::json!([0]));
        assert_eq!(
            json["atoms"][0]["sequence"],
            serde_json::json!(["B0_1", "B2"])
        );
        let e2 = samples::two_cycle();
        let oracle = crate::oracle::character_sequences(&e2).unwrap();
        let json = serde_json::to_value(oracle_to_json(&oracle, &e2)).unwrap();
        assert_eq!(
            json["atoms"][1]["sequence"],
            serde_json::json!({"preperiod": [], "period": ["B1", "B0"]})
        );
    }

    #[test]
    fn dot_marks_sets() {
        let pds = induced_system(&samples::truncated_shift()).unwrap();
        let ladder = delta_ladder(&pds);
        let dot = to_dot(&pds, &ladder, &full_spectrum(&pds, &ladder));
        assert!(dot.contains("p2 -> p1 [label=\"α\"]"));
        assert!(dot.contains("p0 [label=\"B0\", shape=ellipse, style=filled"));
        assert!(dot.contains("xlabel=\"M̂_2\""));
        assert_eq!(dot.matches("digraph").count(), 2);
    }
}
