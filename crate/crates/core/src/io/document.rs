//! Versioned JSON envelope for certificates, reports and witnesses.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classify::ClassificationReport;
use crate::error::{Error, Result};
use crate::graph::SimplicialGraph;
use crate::pattern::PatternId;
use crate::reduction::{ReductionCertificate, Verification};
use crate::witness::{verify_witness, BoundaryWitness};

pub const SCHEMA_VERSION: &str = "1";

/// A witness together with the pattern it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub pattern: PatternId,
    pub embedding: crate::embedding::SubdivisionEmbedding,
    pub witness: BoundaryWitness,
}

impl WitnessRecord {
    /// Checks the embedding and the witness against `g`. The join marker is
    /// only accepted for an unsubdivided K33.
    pub fn verify(&self, g: &SimplicialGraph) -> Verification {
        let fail = |msg: String| Verification { valid: false, diagnostic: Some(msg) };
        if self.embedding.pattern != self.pattern {
            return fail("embedding pattern differs from the record".into());
        }
        if let Err(e) = self.embedding.validate(g) {
            return fail(format!("embedding: {e}"));
        }
        match &self.witness {
            BoundaryWitness::Symbolic(w) => verify_witness(w, g),
            BoundaryWitness::JoinOfCantorSets if self.pattern == PatternId::K33 && self.embedding.branches.iter().all(|b| b.len() == 2) => {
                Verification { valid: true, diagnostic: None }
            }
            BoundaryWitness::JoinOfCantorSets => fail("join marker on a subdivided embedding".into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Reduction(ReductionCertificate),
    Classification(Box<ClassificationReport>),
    Witness(WitnessRecord),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Reduction(_) => "reduction",
            Payload::Classification(_) => "classification",
            Payload::Witness(_) => "witness",
        }
    }

    fn to_value(&self) -> Result<Value> {
        let v = match self {
            Payload::Reduction(c) => serde_json::to_value(c),
            Payload::Classification(r) => serde_json::to_value(r),
            Payload::Witness(w) => serde_json::to_value(w),
        };
        v.map_err(|e| Error::Validation(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateDocument {
    pub input_graph: SimplicialGraph,
    pub payload: Payload,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    schema_version: String,
    kind: String,
    input_graph: SimplicialGraph,
    payload: Value,
}

fn invalid(msg: impl std::fmt::Display) -> Error {
    Error::Validation(msg.to_string())
}

impl CertificateDocument {
    pub fn new(input_graph: SimplicialGraph, payload: Payload) -> Self {
        CertificateDocument { input_graph, payload }
    }

    /// Pretty JSON with a fixed field order, ending in a newline.
    pub fn emit(&self) -> Result<String> {
        let wire = Wire {
            schema_version: SCHEMA_VERSION.into(),
            kind: self.payload.kind().into(),
            input_graph: self.input_graph.clone(),
            payload: self.payload.to_value()?,
        };
        let mut out = serde_json::to_string_pretty(&wire).map_err(invalid)?;
        out.push('\n');
        Ok(out)
    }

    /// Parses and validates a document: known schema version and kind, a
    /// payload of that kind, and a payload graph equal to the embedded input.
    pub fn parse(text: &str) -> Result<Self> {
        let raw: Value = serde_json::from_str(text).map_err(invalid)?;
        let found = raw.get("schema_version").and_then(Value::as_str).ok_or_else(|| invalid("missing schema_version"))?;
        if found != SCHEMA_VERSION {
            return Err(Error::SchemaVersionMismatch { expected: SCHEMA_VERSION.into(), found: found.into() });
        }
        let wire: Wire = serde_json::from_value(raw).map_err(invalid)?;
        let payload = match wire.kind.as_str() {
            "reduction" => {
                let c: ReductionCertificate = serde_json::from_value(wire.payload).map_err(invalid)?;
                if c.initial_graph != wire.input_graph {
                    return Err(invalid("certificate graph differs from the input graph"));
                }
                Payload::Reduction(c)
            }
            "classification" => {
                let r: ClassificationReport = serde_json::from_value(wire.payload).map_err(invalid)?;
                if r.input_graph != wire.input_graph {
                    return Err(invalid("report graph differs from the input graph"));
                }
                Payload::Classification(Box::new(r))
            }
            "witness" => Payload::Witness(serde_json::from_value(wire.payload).map_err(invalid)?),
            other => return Err(invalid(format!("unknown document kind `{other}`"))),
        };
        Ok(CertificateDocument { input_graph: wire.input_graph, payload })
    }
}
