//! Small named contexts used by the test suites, the examples in the docs and the CLI.
//!
//! Vertices are named `A`, `B`, `C` in index order.

use crate::model::{build_context, FiniteMonoid, FreeMonoid, GpContext, Graph, VertexMonoid};

fn finite(name: &str, elements: &[&str], table: Vec<Vec<usize>>) -> VertexMonoid {
    let elements = elements.iter().map(|s| s.to_string()).collect();
    VertexMonoid::Finite(FiniteMonoid::new(name, elements, 0, table).expect("fixture monoid"))
}

/// `{1, a}` with `a a = a`.
pub fn u_monoid() -> VertexMonoid {
    finite("U", &["1", "a"], vec![vec![0, 1], vec![1, 1]])
}

/// The cyclic group of order two, `{1, g}`.
pub fn z2_monoid() -> VertexMonoid {
    finite("Z2", &["1", "g"], vec![vec![0, 1], vec![1, 0]])
}

/// The three-element chain semilattice `{1, a, b}` with `a b = b a = b`.
pub fn band3_monoid() -> VertexMonoid {
    finite(
        "Band3",
        &["1", "a", "b"],
        vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]],
    )
}

pub fn free_monoid(name: &str, alphabet: &str) -> VertexMonoid {
    VertexMonoid::Free(FreeMonoid::new(name, alphabet.chars().collect()).expect("fixture monoid"))
}

fn ctx(n: usize, edges: &[(usize, usize)], monoids: Vec<VertexMonoid>) -> GpContext {
    build_context(Graph::new(n, edges).expect("fixture graph"), monoids).expect("fixture context")
}

/// Two copies of `U`, no edge.
pub fn p2free() -> GpContext {
    ctx(2, &[], vec![u_monoid(), u_monoid()])
}

/// Two copies of `U` joined by an edge.
pub fn p2dir() -> GpContext {
    ctx(2, &[(0, 1)], vec![u_monoid(), u_monoid()])
}

/// Three copies of `U`, single edge `A-B`.
pub fn l3() -> GpContext {
    ctx(3, &[(0, 1)], vec![u_monoid(), u_monoid(), u_monoid()])
}

/// Path `A-B-C` with `A = Z2` and `B = C = U`.
pub fn mixed3() -> GpContext {
    ctx(3, &[(0, 1), (1, 2)], vec![z2_monoid(), u_monoid(), u_monoid()])
}

/// A single `Z2` vertex.
pub fn z2() -> GpContext {
    ctx(1, &[], vec![z2_monoid()])
}

/// `Z2` and `U`, no edge.
pub fn zu() -> GpContext {
    ctx(2, &[], vec![z2_monoid(), u_monoid()])
}

/// Three copies of `U`, no edges.
pub fn t3free() -> GpContext {
    ctx(3, &[], vec![u_monoid(), u_monoid(), u_monoid()])
}

/// `Band3` and `U`, no edge.
pub fn band3() -> GpContext {
    ctx(2, &[], vec![band3_monoid(), u_monoid()])
}

/// Free monoids on `x` and on `y` joined by an edge: the trace monoid of two
/// commuting generators.
pub fn trace2() -> GpContext {
    ctx(2, &[(0, 1)], vec![free_monoid("Fx", "x"), free_monoid("Fy", "y")])
}

/// Path `A-B-C` of free monoids on `x`, `y`, `z`.
pub fn trace3() -> GpContext {
    ctx(
        3,
        &[(0, 1), (1, 2)],
        vec![free_monoid("Fx", "x"), free_monoid("Fy", "y"), free_monoid("Fz", "z")],
    )
}

/// `A`, `B` copies of `U` and `C = Z2`, edges `A-C` and `B-C`.
pub fn star_special() -> GpContext {
    ctx(3, &[(0, 2), (1, 2)], vec![u_monoid(), u_monoid(), z2_monoid()])
}

/// Three `Z2` vertices with a single edge `A-B`.
pub fn groups3() -> GpContext {
    ctx(3, &[(0, 1)], vec![z2_monoid(), z2_monoid(), z2_monoid()])
}

/// The fixtures of the word-problem suite.
pub fn word_problem_suite() -> Vec<(&'static str, GpContext)> {
    vec![
        ("P2free", p2free()),
        ("P2dir", p2dir()),
        ("L3", l3()),
        ("Mixed3", mixed3()),
        ("trace2", trace2()),
    ]
}

/// Every named fixture.
pub fn all() -> Vec<(&'static str, GpContext)> {
    vec![
        ("P2free", p2free()),
        ("P2dir", p2dir()),
        ("L3", l3()),
        ("Mixed3", mixed3()),
        ("trace2", trace2()),
        ("Z2", z2()),
        ("ZU", zu()),
        ("T3free", t3free()),
        ("Band3", band3()),
        ("trace3", trace3()),
        ("StarSpecial", star_special()),
        ("Groups3", groups3()),
    ]
}

pub fn by_name(name: &str) -> Option<GpContext> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, c)| c)
}
