//! Graph products of monoids: normal forms, the word problem, principal left
//! ideals, and constructive checks of finitary conditions.
//!
//! A graph product is given by a [`model::GpContext`]: a simple graph with a vertex
//! monoid at each vertex. Elements are words of letters `(vertex, element)`;
//! [`normal_form::canonical`] maps a word to the unique left Foata form of its
//! element.

pub mod annihilator;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod howson;
pub mod ideals;
pub mod model;
pub mod normal_form;
pub mod oracle;
pub mod product_reduction;
pub mod structure;

pub use error::{Error, Result};
pub use model::{build_context, Element, GpContext, Graph, Letter, VertexMonoid, Word};
pub use normal_form::{canonical, equal, multiply, CanonicalForm};
