//! Steiner distance parameters of trees: exact Steiner k-diameter and
//! (k,k')-radius computation, closed forms for standard families, an exact
//! general-graph oracle, free-tree corpora, and corpus-wide bound checking.

pub mod closed_forms;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod params;
pub mod rational;
pub mod tree;
pub mod verify;

pub use closed_forms::{bound_value, sd_k_formula, sr_kk_formula, BoundName, FamilySpec, Generated};
pub use corpus::{canonical_code, enumerate_trees, graph6_decode, graph6_encode, CanonicalCode};
pub use error::{Error, Result};
pub use graph::{dw_steiner, Graph};
pub use params::{param_record, sd_k, sr_k, sr_k2_fast, sr_k3_fast, sr_kk_brute, ParamRecord};
pub use rational::Rational;
pub use tree::{Tree, VertexSet};
pub use verify::{emit_report, hunt_conjecture, run_suite, Corpus, KRange, Report, Suite, Verdict};
