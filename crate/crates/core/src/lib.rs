//! Kochen-Specker set search on MMP hypergraphs.

pub mod canon;
pub mod catalog;
pub mod contains;
pub mod diagram;
pub mod generator;
pub mod girth;
pub mod pipeline;
pub mod solver;
pub mod states01;
pub mod stats;
pub mod text;

#[cfg(test)]
mod properties;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use contains::{contains_subdiagram, find_embedding};
pub use diagram::{Diagram, DiagramError, Validation};
pub use girth::girth;
pub use stats::{stats, DiagramStats};
pub use text::{parse_mmp, parse_mmp_with, serialize, ParseError};
pub use states01::{enumerate_01_states, has_01_state, Assignment01};
pub use generator::{generate, generate_all, generate_fold, generate_par, ExtensionSite, Filter, FilterVerdict, GenError, GenSpec, GenStats};
