use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// An element of a vertex monoid: a table index for finite monoids, a string of
/// alphabet indices for free monoids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Finite(usize),
    Free(Vec<u8>),
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Finite(a), Element::Finite(b)) => a.cmp(b),
            (Element::Free(a), Element::Free(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (Element::Finite(_), Element::Free(_)) => Ordering::Less,
            (Element::Free(_), Element::Finite(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A finite monoid given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    name: String,
    elements: Vec<String>,
    identity: usize,
    table: Vec<usize>,
}

impl FiniteMonoid {
    /// Validates the table eagerly: shape, identity row and column, associativity,
    /// non-triviality and distinct identifier names.
    pub fn new(name: &str, elements: Vec<String>, identity: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        let malformed = |detail: String| Error::MalformedTable {
            monoid: name.to_string(),
            detail,
        };
        for e in &elements {
            if !is_identifier(e) {
                return Err(Error::InvalidSymbol(e.clone()));
            }
        }
        let distinct: BTreeSet<&String> = elements.iter().collect();
        if distinct.len() != n {
            return Err(Error::DuplicateName(format!("element in monoid {name}")));
        }
        if n < 2 {
            return Err(Error::TrivialMonoid(name.to_string()));
        }
        if identity >= n {
            return Err(malformed(format!("identity index {identity} out of range")));
        }
        if table.len() != n {
            return Err(malformed(format!("expected {n} rows, found {}", table.len())));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(malformed(format!(
                    "row {} has {} entries, expected {n}",
                    elements[i],
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(malformed(format!("entry {x} out of range")));
                }
                flat.push(x);
            }
        }
        let m = FiniteMonoid {
            name: name.to_string(),
            elements,
            identity,
            table: flat,
        };
        for x in 0..n {
            if m.mul(identity, x) != x || m.mul(x, identity) != x {
                return Err(Error::IdentityViolation {
                    monoid: name.to_string(),
                    detail: format!(
                        "{} is not a two-sided identity at {}",
                        m.elements[identity], m.elements[x]
                    ),
                });
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = m.mul(x, y);
                for z in 0..n {
                    if m.mul(xy, z) != m.mul(x, m.mul(y, z)) {
                        return Err(Error::NotAssociative {
                            monoid: name.to_string(),
                            x: m.elements[x].clone(),
                            y: m.elements[y].clone(),
                            z: m.elements[z].clone(),
                        });
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.elements.len() + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        let n = self.elements.len();
        &self.table[x * n..(x + 1) * n]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// The principal left ideal `M x` as a sorted index list.
    pub fn left_ideal(&self, x: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = (0..self.size()).map(|p| self.mul(p, x)).collect();
        set.into_iter().collect()
    }
}

/// A free monoid over single-letter ASCII symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeMonoid {
    name: String,
    alphabet: Vec<char>,
}

impl FreeMonoid {
    pub fn new(name: &str, alphabet: Vec<char>) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::TrivialMonoid(name.to_string()));
        }
        if alphabet.len() > u8::MAX as usize {
            return Err(Error::InvalidSymbol(format!("alphabet of {name} too large")));
        }
        for &c in &alphabet {
            if !c.is_ascii_alphabetic() {
                return Err(Error::InvalidSymbol(c.to_string()));
            }
        }
        let distinct: BTreeSet<char> = alphabet.iter().copied().collect();
        if distinct.len() != alphabet.len() {
            return Err(Error::DuplicateName(format!("symbol in monoid {name}")));
        }
        Ok(FreeMonoid {
            name: name.to_string(),
            alphabet,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }
}

/// A vertex monoid of the graph product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexMonoid {
    Finite(FiniteMonoid),
    Free(FreeMonoid),
}

impl VertexMonoid {
    pub fn name(&self) -> &str {
        match self {
            VertexMonoid::Finite(m) => m.name(),
            VertexMonoid::Free(m) => m.name(),
        }
    }

    /// Number of elements, `None` for free monoids.
    pub fn size(&self) -> Option<usize> {
        match self {
            VertexMonoid::Finite(m) => Some(m.size()),
            VertexMonoid::Free(_) => None,
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            VertexMonoid::Finite(m) => Element::Finite(m.identity()),
            VertexMonoid::Free(_) => Element::Free(Vec::new()),
        }
    }

    pub fn is_identity(&self, x: &Element) -> bool {
        match (self, x) {
            (VertexMonoid::Finite(m), Element::Finite(i)) => *i == m.identity(),
            (VertexMonoid::Free(_), Element::Free(s)) => s.is_empty(),
            _ => false,
        }
    }

    /// Whether `x` is a valid element reference for this monoid.
    pub fn contains(&self, x: &Element) -> bool {
        match (self, x) {
            (VertexMonoid::Finite(m), Element::Finite(i)) => *i < m.size(),
            (VertexMonoid::Free(m), Element::Free(s)) => s.iter().all(|&c| (c as usize) < m.alphabet.len()),
            _ => false,
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        match (self, x, y) {
            (VertexMonoid::Finite(m), Element::Finite(a), Element::Finite(b)) => Element::Finite(m.mul(*a, *b)),
            (VertexMonoid::Free(_), Element::Free(a), Element::Free(b)) => {
                let mut s = a.clone();
                s.extend_from_slice(b);
                Element::Free(s)
            }
            _ => panic!("element kind does not match vertex monoid {}", self.name()),
        }
    }

    /// All elements of a finite monoid in index order, `None` for free monoids.
    pub fn elements(&self) -> Option<Vec<Element>> {
        match self {
            VertexMonoid::Finite(m) => Some((0..m.size()).map(Element::Finite).collect()),
            VertexMonoid::Free(_) => None,
        }
    }

    /// True iff every element has a two-sided inverse.
    pub fn is_group(&self) -> bool {
        match self {
            VertexMonoid::Finite(m) => {
                (0..m.size()).all(|x| (0..m.size()).any(|y| m.mul(x, y) == m.identity() && m.mul(y, x) == m.identity()))
            }
            VertexMonoid::Free(m) => m.alphabet.is_empty(),
        }
    }

    /// The least-index `p` with `p x = 1`.
    pub fn left_inverse_of(&self, x: &Element) -> Option<Element> {
        match (self, x) {
            (VertexMonoid::Finite(m), Element::Finite(i)) => (0..m.size())
                .find(|&p| m.mul(p, *i) == m.identity())
                .map(Element::Finite),
            (VertexMonoid::Free(_), Element::Free(s)) => s.is_empty().then(|| Element::Free(Vec::new())),
            _ => None,
        }
    }

    pub fn is_left_invertible(&self, x: &Element) -> bool {
        self.left_inverse_of(x).is_some()
    }

    /// Some `p` with `a = p b`: least index for finite monoids, the prefix for free ones.
    pub fn vertex_divides(&self, a: &Element, b: &Element) -> Option<Element> {
        match (self, a, b) {
            (VertexMonoid::Finite(m), Element::Finite(a), Element::Finite(b)) => {
                (0..m.size()).find(|&p| m.mul(p, *b) == *a).map(Element::Finite)
            }
            (VertexMonoid::Free(_), Element::Free(a), Element::Free(b)) => {
                a.ends_with(b).then(|| Element::Free(a[..a.len() - b.len()].to_vec()))
            }
            _ => None,
        }
    }

    /// A generating set of `M a ∩ M b`. For finite monoids, one least-index
    /// representative of each minimal class under left divisibility.
    pub fn vertex_ideal_intersection(&self, a: &Element, b: &Element) -> Vec<Element> {
        match (self, a, b) {
            (VertexMonoid::Finite(m), Element::Finite(a), Element::Finite(b)) => {
                let ia: BTreeSet<usize> = m.left_ideal(*a).into_iter().collect();
                let common: Vec<usize> = m.left_ideal(*b).into_iter().filter(|x| ia.contains(x)).collect();
                let ideals: Vec<BTreeSet<usize>> =
                    common.iter().map(|&y| m.left_ideal(y).into_iter().collect()).collect();
                let mut out = Vec::new();
                for (i, &y) in common.iter().enumerate() {
                    // y is minimal if every divisor z of y inside the intersection
                    // generates the same ideal as y.
                    let minimal = common
                        .iter()
                        .enumerate()
                        .all(|(j, &z)| !ideals[j].contains(&y) || ideals[i].contains(&z));
                    // keep the least index of its class
                    let least = common
                        .iter()
                        .enumerate()
                        .all(|(j, &z)| z >= y || ideals[j] != ideals[i]);
                    if minimal && least {
                        out.push(Element::Finite(y));
                    }
                }
                out
            }
            (VertexMonoid::Free(_), Element::Free(x), Element::Free(y)) => {
                if x.ends_with(y) {
                    vec![Element::Free(x.clone())]
                } else if y.ends_with(x) {
                    vec![Element::Free(y.clone())]
                } else {
                    Vec::new()
                }
            }
            _ => Vec::new(),
        }
    }

    /// All non-diagonal pairs `(s, t)` with `s a = t a`; empty for free monoids.
    pub fn vertex_annihilator(&self, a: &Element) -> Vec<(Element, Element)> {
        match (self, a) {
            (VertexMonoid::Finite(m), Element::Finite(a)) => {
                let mut out = Vec::new();
                for s in 0..m.size() {
                    for t in 0..m.size() {
                        if s != t && m.mul(s, *a) == m.mul(t, *a) {
                            out.push((Element::Finite(s), Element::Finite(t)));
                        }
                    }
                }
                out
            }
            _ => Vec::new(),
        }
    }

    /// Whether some non-identity `p` gives a non-identity product `p x`.
    pub fn glue_realizable(&self, x: &Element) -> bool {
        match (self, x) {
            (VertexMonoid::Finite(m), Element::Finite(x)) => {
                (0..m.size()).any(|p| p != m.identity() && m.mul(p, *x) != m.identity())
            }
            (VertexMonoid::Free(_), _) => true,
            _ => false,
        }
    }

    pub fn format_element(&self, x: &Element) -> String {
        match (self, x) {
            (VertexMonoid::Finite(m), Element::Finite(i)) => m.elements[*i].clone(),
            (VertexMonoid::Free(_), Element::Free(s)) if s.is_empty() => "1".to_string(),
            (VertexMonoid::Free(m), Element::Free(s)) => s.iter().map(|&c| m.alphabet[c as usize]).collect(),
            _ => "?".to_string(),
        }
    }

    /// Parses an element name; free-monoid elements are symbol strings, `1` the identity.
    pub fn parse_element(&self, s: &str) -> Option<Element> {
        match self {
            VertexMonoid::Finite(m) => m.index_of(s).map(Element::Finite),
            VertexMonoid::Free(m) => {
                if s == "1" {
                    return Some(Element::Free(Vec::new()));
                }
                if s.is_empty() {
                    return None;
                }
                s.chars()
                    .map(|c| m.alphabet.iter().position(|&a| a == c).map(|i| i as u8))
                    .collect::<Option<Vec<u8>>>()
                    .map(Element::Free)
            }
        }
    }

    /// Non-empty factors (contiguous substrings) of a free-monoid element; the
    /// element itself for finite monoids.
    pub fn factors(&self, x: &Element) -> Vec<Element> {
        match x {
            Element::Free(s) => {
                let mut set = BTreeSet::new();
                for i in 0..s.len() {
                    for j in (i + 1)..=s.len() {
                        set.insert(Element::Free(s[i..j].to_vec()));
                    }
                }
                set.into_iter().collect()
            }
            Element::Finite(_) => vec![x.clone()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn u() -> VertexMonoid {
        VertexMonoid::Finite(FiniteMonoid::new("U", names(&["1", "a"]), 0, vec![vec![0, 1], vec![1, 1]]).unwrap())
    }

    fn z2() -> VertexMonoid {
        VertexMonoid::Finite(FiniteMonoid::new("Z2", names(&["1", "g"]), 0, vec![vec![0, 1], vec![1, 0]]).unwrap())
    }

    fn free(alpha: &str) -> VertexMonoid {
        VertexMonoid::Free(FreeMonoid::new("F", alpha.chars().collect()).unwrap())
    }

    fn fe(m: &VertexMonoid, s: &str) -> Element {
        m.parse_element(s).unwrap()
    }

    #[test]
    fn construction_errors() {
        // a(ab) = a*b = b but (aa)b = 1*b... contrived non-associative table on {1,a,b}
        let bad = FiniteMonoid::new(
            "Bad",
            names(&["1", "a", "b"]),
            0,
            vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 1, 0]],
        );
        assert!(matches!(bad, Err(Error::NotAssociative { .. })));
        assert!(bad.unwrap_err().to_string().contains("not associative"));
        let trivial = FiniteMonoid::new("T", names(&["1"]), 0, vec![vec![0]]);
        assert_eq!(trivial.unwrap_err().to_string(), "trivial vertex monoid T");
        let noid = FiniteMonoid::new("N", names(&["1", "a"]), 0, vec![vec![1, 1], vec![1, 1]]);
        assert!(matches!(noid, Err(Error::IdentityViolation { .. })));
        let short = FiniteMonoid::new("S", names(&["1", "a"]), 0, vec![vec![0, 1], vec![1]]);
        assert!(matches!(short, Err(Error::MalformedTable { .. })));
        assert!(FreeMonoid::new("E", vec![]).is_err());
        assert!(FreeMonoid::new("D", vec!['x', 'x']).is_err());
    }

    #[test]
    fn groups() {
        assert!(z2().is_group());
        assert!(!u().is_group());
        assert!(!free("x").is_group());
    }

    #[test]
    fn left_inverses() {
        let z = z2();
        assert_eq!(z.left_inverse_of(&fe(&z, "g")), Some(fe(&z, "g")));
        let m = u();
        assert_eq!(m.left_inverse_of(&fe(&m, "a")), None);
        assert_eq!(m.left_inverse_of(&fe(&m, "1")), Some(fe(&m, "1")));
        let f = free("xy");
        assert_eq!(f.left_inverse_of(&fe(&f, "1")), Some(fe(&f, "1")));
        assert_eq!(f.left_inverse_of(&fe(&f, "x")), None);
    }

    #[test]
    fn divides() {
        let m = u();
        assert_eq!(m.vertex_divides(&fe(&m, "a"), &fe(&m, "a")), Some(fe(&m, "1")));
        assert_eq!(m.vertex_divides(&fe(&m, "1"), &fe(&m, "a")), None);
        let f = free("x");
        assert_eq!(f.vertex_divides(&fe(&f, "xxx"), &fe(&f, "xx")), Some(fe(&f, "x")));
    }

    #[test]
    fn ideal_intersections() {
        let m = u();
        assert_eq!(
            m.vertex_ideal_intersection(&fe(&m, "a"), &fe(&m, "a")),
            vec![fe(&m, "a")]
        );
        let z = z2();
        assert_eq!(
            z.vertex_ideal_intersection(&fe(&z, "g"), &fe(&z, "1")),
            vec![fe(&z, "1")]
        );
        let f = free("xy");
        assert!(f.vertex_ideal_intersection(&fe(&f, "xy"), &fe(&f, "yy")).is_empty());
        assert_eq!(
            f.vertex_ideal_intersection(&fe(&f, "y"), &fe(&f, "xy")),
            vec![fe(&f, "xy")]
        );
    }

    #[test]
    fn annihilators() {
        let m = u();
        assert_eq!(
            m.vertex_annihilator(&fe(&m, "a")),
            vec![(fe(&m, "1"), fe(&m, "a")), (fe(&m, "a"), fe(&m, "1"))]
        );
        let z = z2();
        assert!(z.vertex_annihilator(&fe(&z, "g")).is_empty());
        let f = free("x");
        assert!(f.vertex_annihilator(&fe(&f, "x")).is_empty());
    }

    #[test]
    fn glue_realizability() {
        let z = z2();
        assert!(!z.glue_realizable(&fe(&z, "g")));
        let m = u();
        assert!(m.glue_realizable(&fe(&m, "a")));
    }

    #[test]
    fn free_element_order_is_shortlex() {
        let f = free("xy");
        assert!(fe(&f, "y") < fe(&f, "xx"));
        assert!(fe(&f, "xy") < fe(&f, "yx"));
        assert_eq!(f.format_element(&fe(&f, "1")), "1");
        assert_eq!(f.factors(&fe(&f, "xy")).len(), 3);
    }
}
