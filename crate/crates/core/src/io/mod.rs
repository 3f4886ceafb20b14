//! Reading, generating and serialising graphs and certificates.

pub mod document;
pub mod generate;
pub mod parse;

pub use generate::{fixtures, generate, Family};
pub use parse::{parse_graph, to_edgelist, GraphFormat};
pub use document::{CertificateDocument, Payload, WitnessRecord, SCHEMA_VERSION};
