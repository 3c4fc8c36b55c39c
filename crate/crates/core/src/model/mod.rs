//! Graphs, vertex monoids, letters and words: the ambient data of a graph product.

mod graph;
mod monoid;
mod word;

pub use graph::Graph;
pub use monoid::{Element, FiniteMonoid, FreeMonoid, VertexMonoid};
pub use word::{Letter, Word};

pub(crate) use monoid::is_identifier;

use crate::error::{Error, Result};

/// A graph together with one vertex monoid per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GpContext {
    graph: Graph,
    monoids: Vec<VertexMonoid>,
    names: Vec<String>,
}

fn default_name(i: usize, n: usize) -> String {
    if n <= 26 {
        ((b'A' + i as u8) as char).to_string()
    } else {
        format!("v{i}")
    }
}

/// Validates arity and returns a context with default vertex names `A`, `B`, ...
pub fn build_context(graph: Graph, monoids: Vec<VertexMonoid>) -> Result<GpContext> {
    let n = graph.vertex_count();
    let names = (0..n).map(|i| default_name(i, n)).collect();
    GpContext::with_names(graph, monoids, names)
}

impl GpContext {
    pub fn with_names(graph: Graph, monoids: Vec<VertexMonoid>, names: Vec<String>) -> Result<Self> {
        let n = graph.vertex_count();
        if monoids.len() != n || names.len() != n {
            return Err(Error::ArityMismatch {
                vertices: n,
                monoids: monoids.len(),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) || name == "e" {
                return Err(Error::InvalidSymbol(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        for m in &monoids {
            // constructors already reject trivial monoids; re-check for hand-built values
            if m.size().is_some_and(|s| s < 2) {
                return Err(Error::TrivialMonoid(m.name().to_string()));
            }
        }
        Ok(GpContext { graph, monoids, names })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn monoids(&self) -> &[VertexMonoid] {
        &self.monoids
    }

    pub fn monoid(&self, v: usize) -> &VertexMonoid {
        &self.monoids[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.graph.adjacent(u, v)
    }

    /// Letters at distinct adjacent vertices commute.
    #[inline]
    pub fn commute(&self, x: &Letter, y: &Letter) -> bool {
        self.graph.adjacent(x.vertex, y.vertex)
    }

    pub fn is_identity_letter(&self, l: &Letter) -> bool {
        self.monoids[l.vertex].is_identity(&l.element)
    }

    pub fn is_valid_letter(&self, l: &Letter) -> bool {
        l.vertex < self.vertex_count() && self.monoids[l.vertex].contains(&l.element)
    }

    pub fn is_left_invertible(&self, l: &Letter) -> bool {
        self.monoids[l.vertex].is_left_invertible(&l.element)
    }

    /// Product of two letters at the same vertex.
    pub fn mul_letters(&self, x: &Letter, y: &Letter) -> Letter {
        debug_assert_eq!(x.vertex, y.vertex);
        Letter::new(x.vertex, self.monoids[x.vertex].mul(&x.element, &y.element))
    }

    /// The word with identity letters removed.
    pub fn strip_identities(&self, w: &Word) -> Word {
        w.iter().filter(|l| !self.is_identity_letter(l)).cloned().collect()
    }

    pub fn format_letter(&self, l: &Letter) -> String {
        format!(
            "{}.{}",
            self.names[l.vertex],
            self.monoids[l.vertex].format_element(&l.element)
        )
    }

    /// Space-separated letters; the empty word prints as `e`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "e".to_string();
        }
        w.iter().map(|l| self.format_letter(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_letter(&self, token: &str) -> Result<Letter> {
        let (v, e) = token
            .split_once('.')
            .ok_or_else(|| Error::InvalidLetter(format!("{token:?} is not of the form vertex.element")))?;
        let vertex = self
            .vertex_index(v)
            .ok_or_else(|| Error::InvalidLetter(format!("unknown vertex {v:?} in {token:?}")))?;
        let element = self.monoids[vertex]
            .parse_element(e)
            .ok_or_else(|| Error::InvalidLetter(format!("unknown element {e:?} in {token:?}")))?;
        Ok(Letter::new(vertex, element))
    }

    /// Parses whitespace-separated letters; `e` alone is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() || tokens == ["e"] {
            return Ok(Word::empty());
        }
        tokens.iter().map(|t| self.parse_letter(t)).collect()
    }

    /// Parses a word, panicking on error. Intended for fixtures and tests.
    pub fn w(&self, text: &str) -> Word {
        self.parse_word(text)
            .unwrap_or_else(|e| panic!("bad word {text:?}: {e}"))
    }
}
