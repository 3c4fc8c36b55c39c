use std::fmt;

use super::monoid::Element;

/// A generator of the presentation: an element of one vertex monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub vertex: usize,
    pub element: Element,
}

impl Letter {
    pub fn new(vertex: usize, element: Element) -> Self {
        Letter { vertex, element }
    }
}

/// A finite sequence of letters. Identity letters are allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    /// `self ∘ other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The letters at `positions`, in the given order.
    pub fn select(&self, positions: &[usize]) -> Word {
        Word(positions.iter().map(|&i| self.0[i].clone()).collect())
    }

    /// Vertices occurring in the word, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.0.iter().map(|l| l.vertex).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:?}", self.vertex, self.element)
    }
}
