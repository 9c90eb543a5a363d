//! JSON wire formats for every document the tooling reads or writes: rings,
//! edge vectors, links, linking matrices, wall scenarios and traces.
//!
//! All numeric content rides in strings (ring elements in their canonical
//! text form, rationals as `p/q`) so exactness survives serialization.
//! Writers emit canonical documents with sorted object keys; readers accept
//! any field order and re-validate every invariant on ingestion.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{CompleteGraph, Edge, EdgeVector};
use crate::link::{LinkingMatrix, Point3, Polyline, PolylineLink, Rat};
use crate::ring::{Ring, RingElement};
use crate::wall::{ClassLabel, Configuration, Sign, WallEvent, WallScenario};

/// An integer or its decimal-string spelling; used where values may exceed
/// what a JSON number can carry exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntOrString {
    Int(i64),
    Str(String),
}

impl IntOrString {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntOrString::Int(v) => Ok(BigInt::from(*v)),
            IntOrString::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        }
    }
}

fn rational_from_doc(doc: &IntOrString) -> Result<Rat> {
    match doc {
        IntOrString::Int(v) => Ok(Rat::from_integer(BigInt::from(*v))),
        IntOrString::Str(s) => {
            let s = s.trim();
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (s, "1"),
            };
            let num: BigInt = num
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            let den: BigInt = den
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            if den == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(num, den))
        }
    }
}

fn rational_to_doc(r: &Rat) -> IntOrString {
    if r.denom().is_one() {
        if let Ok(v) = i64::try_from(r.numer().clone()) {
            return IntOrString::Int(v);
        }
    }
    IntOrString::Str(r.to_string())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<IntOrString>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
}

pub fn ring_to_doc(ring: &Ring) -> RingDoc {
    if let Some(q) = ring.modulus() {
        RingDoc {
            kind: "modular".into(),
            q: Some(IntOrString::Str(q.to_string())),
            variables: None,
        }
    } else if let Some(vars) = ring.variables() {
        RingDoc {
            kind: "polynomials".into(),
            q: None,
            variables: Some(vars.to_vec()),
        }
    } else {
        RingDoc { kind: "integers".into(), q: None, variables: None }
    }
}

pub fn ring_from_doc(doc: &RingDoc) -> Result<Ring> {
    match doc.kind.as_str() {
        "integers" => Ok(Ring::integers()),
        "modular" => {
            let q = doc
                .q
                .as_ref()
                .ok_or_else(|| Error::InvalidInput("modular ring needs q".into()))?
                .to_bigint()?;
            let q: BigUint = q
                .try_into()
                .map_err(|_| Error::InvalidRing("modulus must be nonnegative".into()))?;
            Ring::modular(q)
        }
        "polynomials" => {
            let vars = doc.variables.clone().unwrap_or_default();
            Ring::polynomials(vars)
        }
        other => Err(Error::InvalidInput(format!("unknown ring kind {other:?}"))),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientDoc {
    pub edge: [usize; 2],
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeVectorDoc {
    pub n: usize,
    pub ring: RingDoc,
    pub coefficients: Vec<CoefficientDoc>,
}

pub fn edge_vector_to_doc(a: &EdgeVector) -> Result<EdgeVectorDoc> {
    let ring = a.ring();
    let mut coefficients = Vec::new();
    for e in a.graph().edges() {
        let value = a.coeff(e)?;
        if !ring.is_zero(value) {
            coefficients.push(CoefficientDoc {
                edge: [e.lo(), e.hi()],
                value: ring.format_element(value),
            });
        }
    }
    Ok(EdgeVectorDoc {
        n: a.graph().vertex_count(),
        ring: ring_to_doc(ring),
        coefficients,
    })
}

pub fn edge_vector_from_doc(doc: &EdgeVectorDoc) -> Result<EdgeVector> {
    let ring = ring_from_doc(&doc.ring)?;
    let graph = CompleteGraph::new(doc.n)?;
    let entries = doc
        .coefficients
        .iter()
        .map(|c| {
            let edge = Edge::new(c.edge[0], c.edge[1])?;
            let value = ring.parse_element(&c.value)?;
            Ok((edge, value))
        })
        .collect::<Result<Vec<_>>>()?;
    EdgeVector::from_entries(graph, ring, &entries)
}

pub fn read_edge_vector(text: &str) -> Result<EdgeVector> {
    let doc: EdgeVectorDoc = from_json(text)?;
    edge_vector_from_doc(&doc)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDoc {
    pub components: Vec<Vec<[IntOrString; 3]>>,
}

pub fn link_from_doc(doc: &LinkDoc) -> Result<PolylineLink> {
    let components = doc
        .components
        .iter()
        .map(|pts| {
            let points = pts
                .iter()
                .map(|[x, y, z]| {
                    Ok(Point3::new(
                        rational_from_doc(x)?,
                        rational_from_doc(y)?,
                        rational_from_doc(z)?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Polyline::new(points)
        })
        .collect::<Result<Vec<_>>>()?;
    PolylineLink::new(components)
}

pub fn link_to_doc(link: &PolylineLink) -> LinkDoc {
    LinkDoc {
        components: link
            .components()
            .iter()
            .map(|c| {
                c.points()
                    .iter()
                    .map(|p| {
                        [
                            rational_to_doc(&p.x),
                            rational_to_doc(&p.y),
                            rational_to_doc(&p.z),
                        ]
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn read_link(text: &str) -> Result<PolylineLink> {
    let doc: LinkDoc = from_json(text)?;
    link_from_doc(&doc)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub n: usize,
    pub ring: RingDoc,
    pub entries: Vec<Vec<String>>,
}

pub fn matrix_to_doc(m: &LinkingMatrix) -> MatrixDoc {
    let ring = m.ring();
    MatrixDoc {
        n: m.n(),
        ring: ring_to_doc(ring),
        entries: m
            .rows()
            .iter()
            .map(|row| row.iter().map(|v| ring.format_element(v)).collect())
            .collect(),
    }
}

pub fn matrix_from_doc(doc: &MatrixDoc) -> Result<LinkingMatrix> {
    let ring = ring_from_doc(&doc.ring)?;
    if doc.entries.len() != doc.n {
        return Err(Error::InvalidInput(format!(
            "matrix declared size {} but has {} rows",
            doc.n,
            doc.entries.len()
        )));
    }
    let entries = doc
        .entries
        .iter()
        .map(|row| row.iter().map(|s| ring.parse_element(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    LinkingMatrix::new(ring, entries)
}

pub fn read_matrix(text: &str) -> Result<LinkingMatrix> {
    let doc: MatrixDoc = from_json(text)?;
    matrix_from_doc(&doc)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationDoc {
    pub id: String,
    pub classes: Vec<String>,
    pub sign: i8,
    pub matrix: Vec<Vec<String>>,
}

fn configuration_to_doc(ring: &Ring, c: &Configuration) -> ConfigurationDoc {
    ConfigurationDoc {
        id: c.id.clone(),
        classes: c.classes.iter().map(|l| l.to_string()).collect(),
        sign: c.sign.as_int() as i8,
        matrix: c
            .matrix
            .rows()
            .iter()
            .map(|row| row.iter().map(|v| ring.format_element(v)).collect())
            .collect(),
    }
}

fn configuration_from_doc(ring: &Ring, doc: &ConfigurationDoc) -> Result<Configuration> {
    let entries = doc
        .matrix
        .iter()
        .map(|row| row.iter().map(|s| ring.parse_element(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let matrix = LinkingMatrix::new(ring.clone(), entries)?;
    let classes = doc
        .classes
        .iter()
        .map(|s| ClassLabel::parse(s))
        .collect::<Result<Vec<_>>>()?;
    let sign = Sign::from_int(doc.sign as i64)?;
    Configuration::new(doc.id.clone(), classes, matrix, sign)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventDoc {
    pub time: IntOrString,
    pub target: String,
    pub pair: [usize; 2],
    pub delta: i8,
    pub fused: ConfigurationDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    pub ring: RingDoc,
    pub initial: Vec<ConfigurationDoc>,
    pub events: Vec<EventDoc>,
}

pub fn scenario_to_doc(s: &WallScenario) -> ScenarioDoc {
    ScenarioDoc {
        ring: ring_to_doc(&s.ring),
        initial: s
            .initial
            .iter()
            .map(|c| configuration_to_doc(&s.ring, c))
            .collect(),
        events: s
            .events
            .iter()
            .map(|e| EventDoc {
                time: rational_to_doc(&e.time),
                target: e.target.clone(),
                pair: [e.pair.0, e.pair.1],
                delta: e.delta.as_int() as i8,
                fused: configuration_to_doc(&s.ring, &e.fused),
            })
            .collect(),
    }
}

pub fn scenario_from_doc(doc: &ScenarioDoc) -> Result<WallScenario> {
    let ring = ring_from_doc(&doc.ring)?;
    let initial = doc
        .initial
        .iter()
        .map(|c| configuration_from_doc(&ring, c))
        .collect::<Result<Vec<_>>>()?;
    let events = doc
        .events
        .iter()
        .map(|e| {
            Ok(WallEvent {
                time: rational_from_doc(&e.time)?,
                target: e.target.clone(),
                pair: (e.pair[0], e.pair[1]),
                delta: Sign::from_int(e.delta as i64)?,
                fused: configuration_from_doc(&ring, &e.fused)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WallScenario { ring, initial, events })
}

pub fn read_scenario(text: &str) -> Result<WallScenario> {
    let doc: ScenarioDoc = from_json(text)?;
    scenario_from_doc(&doc)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TracePointDoc {
    pub time: IntOrString,
    pub weight: String,
}

pub fn trace_to_docs(ring: &Ring, trace: &[(BigRational, RingElement)]) -> Vec<TracePointDoc> {
    trace
        .iter()
        .map(|(t, w)| TracePointDoc {
            time: rational_to_doc(t),
            weight: ring.format_element(w),
        })
        .collect()
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))
}

/// Canonical rendering used for every emitted document: compact JSON with
/// object keys sorted, so identical content means identical bytes.
pub fn to_canonical_string<T: Serialize>(doc: &T) -> Result<String> {
    let value = serde_json::to_value(doc)
        .map_err(|e| Error::InvalidInput(format!("serialization failed: {e}")))?;
    serde_json::to_string(&value)
        .map_err(|e| Error::InvalidInput(format!("serialization failed: {e}")))
}

/// Canonical `serde_json::Value` form of a document, for embedding in
/// larger payloads.
pub fn to_value<T: Serialize>(doc: &T) -> Result<Value> {
    serde_json::to_value(doc).map_err(|e| Error::InvalidInput(format!("serialization failed: {e}")))
}
