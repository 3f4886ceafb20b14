//! Combinatorial tools for right-angled Coxeter groups defined by finite
//! triangle-free graphs: doubling, Kuratowski subdivision search, the doubling
//! reduction with verifiable certificates, structure predicates, boundary
//! classification and symbolic boundary witnesses.

pub mod classify;
pub mod embedding;
pub mod error;
pub mod graph;
pub mod io;
pub mod pattern;
pub mod planarity;
pub mod predicates;
pub mod reduction;
pub mod search;
pub mod witness;

pub use error::{Error, Result};
pub use embedding::{BadEdge, BadEdgeClass, BadEdgeReport, SubdivisionEmbedding};
pub use graph::{DoublingResult, Label, SimplicialGraph};
pub use pattern::PatternId;
pub use planarity::{is_planar, PlanarityResult};
pub use reduction::{reduce, reduce_step, verify_certificate, k5_to_k33, ReductionCertificate, ReductionStep, StepAction, TerminalPattern};
pub use search::{find_subdivision, select_canonical_k33, SearchOptions};
pub use witness::{build_witness, fig5right_witness, k33_boundary_witness, obstruction_check, pi_witness, theta_witness, verify_witness, BoundaryWitness, SymbolicWitness, WitnessType};
pub use classify::{classify, verify_report, ClassificationReport, ClassifyOptions, Verdict, VerdictKind};
