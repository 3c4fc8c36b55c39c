//! Graph-level decisions: relative completeness, weak left noetherianity, direct
//! product decompositions and the coherency verdict.

use crate::annihilator::{annihilator_generators, PairSet};
use crate::error::{Error, Result};
use crate::howson::{intersect_principal, GeneratorSet};
use crate::model::{GpContext, Letter, VertexMonoid, Word};
use crate::normal_form::{canonical, CanonicalForm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub pair: (usize, usize),
    pub reason: String,
}

/// The outcome of the relative completeness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeCompleteness {
    pub holds: bool,
    pub special_pair: Option<(usize, usize)>,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WlnReport {
    pub overall: bool,
    pub relatively_complete: bool,
    pub special_pair: Option<(usize, usize)>,
    pub violations: Vec<Violation>,
    pub non_group_vertices: Vec<usize>,
    pub vertex_wln: Vec<bool>,
}

/// Every non-edge joins two groups, except at most one pair of two-element
/// monoids adjacent to every other vertex.
pub fn is_relatively_complete(ctx: &GpContext) -> RelativeCompleteness {
    let n = ctx.vertex_count();
    let name = |v: usize| ctx.vertex_name(v);
    let mut special = None;
    let mut violations = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if ctx.adjacent(x, y) {
                continue;
            }
            let (mx, my) = (ctx.monoid(x), ctx.monoid(y));
            if mx.is_group() && my.is_group() {
                continue;
            }
            let prefix = format!("pair ({},{}) violates Def (i)", name(x), name(y));
            let small = [(x, mx), (y, my)].into_iter().find(|(_, m)| m.size() != Some(2));
            if let Some((v, m)) = small {
                let size = m.size().map_or("infinitely many".to_string(), |s| s.to_string());
                violations.push(Violation {
                    pair: (x, y),
                    reason: format!("{prefix}: M_{} has {size} elements", name(v)),
                });
                continue;
            }
            let missing = (0..n)
                .filter(|&g| g != x && g != y)
                .flat_map(|g| [(x, g), (y, g)])
                .find(|&(p, g)| !ctx.adjacent(p, g));
            if let Some((p, g)) = missing {
                violations.push(Violation {
                    pair: (x, y),
                    reason: format!("{prefix}: ({},{}) not an edge", name(p), name(g)),
                });
                continue;
            }
            match special {
                None => special = Some((x, y)),
                Some((p, q)) => violations.push(Violation {
                    pair: (x, y),
                    reason: format!("{prefix}: second special pair besides ({},{})", name(p), name(q)),
                }),
            }
        }
    }
    RelativeCompleteness {
        holds: violations.is_empty(),
        special_pair: special,
        violations,
    }
}

/// Weak left noetherianity of a single vertex monoid. Free monoids of rank two or
/// more fail: `{x yⁿ x}` is an infinite antichain under suffix division.
pub fn vertex_wln(m: &VertexMonoid) -> bool {
    match m {
        VertexMonoid::Finite(_) => true,
        VertexMonoid::Free(f) => f.alphabet().len() <= 1,
    }
}

pub fn decide_wln(ctx: &GpContext) -> WlnReport {
    let rc = is_relatively_complete(ctx);
    let vertex: Vec<bool> = ctx.monoids().iter().map(vertex_wln).collect();
    WlnReport {
        overall: rc.holds && vertex.iter().all(|&b| b),
        relatively_complete: rc.holds,
        special_pair: rc.special_pair,
        violations: rc.violations,
        non_group_vertices: (0..ctx.vertex_count()).filter(|&v| !ctx.monoid(v).is_group()).collect(),
        vertex_wln: vertex,
    }
}

/// The induced sub-context on `vertices` (kept in the given order).
pub fn induced_context(ctx: &GpContext, vertices: &[usize]) -> Result<GpContext> {
    GpContext::with_names(
        ctx.graph().induced(vertices),
        vertices.iter().map(|&v| ctx.monoid(v).clone()).collect(),
        vertices.iter().map(|&v| ctx.vertex_name(v).to_string()).collect(),
    )
}

/// A splitting `GP ≅ GP_1 × GP_2` along a vertex partition with all cross pairs edges.
#[derive(Debug, Clone)]
pub struct Bipartite {
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub left: GpContext,
    pub right: GpContext,
}

impl Bipartite {
    fn project(w: &Word, part: &[usize]) -> Word {
        w.iter()
            .filter_map(|l| {
                part.iter()
                    .position(|&v| v == l.vertex)
                    .map(|i| Letter::new(i, l.element.clone()))
            })
            .collect()
    }

    /// `ψ`: the element as a pair of components.
    pub fn psi(&self, w: &Word) -> (CanonicalForm, CanonicalForm) {
        (
            canonical(&self.left, &Self::project(w, &self.v1)),
            canonical(&self.right, &Self::project(w, &self.v2)),
        )
    }

    /// `ψ⁻¹`: the product of the two components, as a word of the full context.
    pub fn psi_inverse(&self, x: &Word, y: &Word) -> Word {
        let lift = |w: &Word, part: &[usize]| -> Vec<Letter> {
            w.iter()
                .map(|l| Letter::new(part[l.vertex], l.element.clone()))
                .collect()
        };
        let mut out = lift(x, &self.v1);
        out.extend(lift(y, &self.v2));
        Word(out)
    }
}

pub fn split_bipartite(ctx: &GpContext, v1: &[usize]) -> Result<Bipartite> {
    let mut v1: Vec<usize> = v1.to_vec();
    v1.sort_unstable();
    v1.dedup();
    if let Some(&v) = v1.iter().find(|&&v| v >= ctx.vertex_count()) {
        return Err(Error::Precondition(format!("vertex {v} out of range")));
    }
    let v2: Vec<usize> = (0..ctx.vertex_count()).filter(|v| !v1.contains(v)).collect();
    for &x in &v1 {
        for &y in &v2 {
            if !ctx.adjacent(x, y) {
                return Err(Error::MissingCrossEdge(
                    ctx.vertex_name(x).to_string(),
                    ctx.vertex_name(y).to_string(),
                ));
            }
        }
    }
    Ok(Bipartite {
        left: induced_context(ctx, &v1)?,
        right: induced_context(ctx, &v2)?,
        v1,
        v2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartKind {
    FreePair,
    RestrictedDirect,
    GroupProduct,
}

impl PartKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PartKind::FreePair => "free-pair",
            PartKind::RestrictedDirect => "restricted-direct",
            PartKind::GroupProduct => "group-product",
        }
    }
}

/// `V1` (the special pair, when present), `V2` (other non-groups) and `V3` (groups).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub parts: Vec<Vec<usize>>,
    pub kinds: Vec<PartKind>,
}

impl DecompositionReport {
    pub fn part(&self, kind: PartKind) -> Option<&[usize]> {
        self.kinds
            .iter()
            .position(|&k| k == kind)
            .map(|i| self.parts[i].as_slice())
    }
}

pub fn direct4_partition(ctx: &GpContext) -> Result<DecompositionReport> {
    let rc = is_relatively_complete(ctx);
    if !rc.holds {
        return Err(Error::NotRelativelyComplete(rc.violations[0].reason.clone()));
    }
    let special: Vec<usize> = rc.special_pair.map(|(x, y)| vec![x, y]).unwrap_or_default();
    let (mut v2, mut v3) = (Vec::new(), Vec::new());
    for v in (0..ctx.vertex_count()).filter(|v| !special.contains(v)) {
        if ctx.monoid(v).is_group() {
            v3.push(v);
        } else {
            v2.push(v);
        }
    }
    let mut parts = Vec::new();
    let mut kinds = Vec::new();
    if !special.is_empty() {
        parts.push(special);
        kinds.push(PartKind::FreePair);
    }
    parts.push(v2);
    kinds.push(PartKind::RestrictedDirect);
    parts.push(v3);
    kinds.push(PartKind::GroupProduct);

    let r = DecompositionReport { parts, kinds };
    for (i, p) in r.parts.iter().enumerate() {
        for q in &r.parts[i + 1..] {
            if p.iter().any(|&x| q.iter().any(|&y| !ctx.adjacent(x, y))) {
                return Err(Error::Invariant("cross-part pair is not an edge".into()));
            }
        }
    }
    let v2 = r.part(PartKind::RestrictedDirect).unwrap_or(&[]);
    if v2.iter().any(|&x| v2.iter().any(|&y| x != y && !ctx.adjacent(x, y))) {
        return Err(Error::Invariant("non-group part is not complete".into()));
    }
    Ok(r)
}

/// Whether every pair of principal left ideals of a finite vertex monoid meets in a
/// finitely generated ideal, checked against the computed vertex-level generators.
fn vertex_howson(m: &VertexMonoid) -> bool {
    let VertexMonoid::Finite(f) = m else {
        return true;
    };
    let elems = m.elements().unwrap_or_default();
    let ideal = |x: usize| f.left_ideal(x);
    elems.iter().all(|a| {
        elems.iter().all(|b| {
            let (crate::model::Element::Finite(ia), crate::model::Element::Finite(ib)) = (a, b) else {
                return false;
            };
            let (la, lb) = (ideal(*ia), ideal(*ib));
            let mut common: Vec<usize> = la.iter().copied().filter(|x| lb.contains(x)).collect();
            common.sort_unstable();
            let mut generated: Vec<usize> = m
                .vertex_ideal_intersection(a, b)
                .iter()
                .flat_map(|g| match g {
                    crate::model::Element::Finite(g) => ideal(*g),
                    _ => Vec::new(),
                })
                .collect();
            generated.sort_unstable();
            generated.dedup();
            generated == common
        })
    })
}

/// Finite monoids: every annihilator is a finite set of pairs. Free monoids are cancellative.
fn vertex_fle(m: &VertexMonoid) -> bool {
    match m {
        VertexMonoid::Finite(_) => m
            .elements()
            .unwrap_or_default()
            .iter()
            .all(|a| m.vertex_annihilator(a).iter().all(|(s, t)| m.mul(s, a) == m.mul(t, a))),
        VertexMonoid::Free(_) => true,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherencyEvidence {
    pub a: Word,
    pub b: Word,
    pub intersection: GeneratorSet,
    pub annihilator: PairSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherencyReport {
    pub overall: bool,
    pub vertex_howson: Vec<bool>,
    pub vertex_fle: Vec<bool>,
    pub evidence: Vec<CoherencyEvidence>,
}

/// Weak left coherence: the conjunction of the per-vertex Howson and FLE verdicts,
/// with intersection generators and annihilator bases for each sample pair.
pub fn coherency_report(ctx: &GpContext, samples: &[(Word, Word)]) -> Result<CoherencyReport> {
    let vertex_howson: Vec<bool> = ctx.monoids().iter().map(vertex_howson).collect();
    let vertex_fle: Vec<bool> = ctx.monoids().iter().map(vertex_fle).collect();
    let evidence = samples
        .iter()
        .map(|(a, b)| {
            Ok(CoherencyEvidence {
                a: a.clone(),
                b: b.clone(),
                intersection: intersect_principal(ctx, a, b)?,
                annihilator: annihilator_generators(ctx, a)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoherencyReport {
        overall: vertex_howson.iter().chain(&vertex_fle).all(|&b| b),
        vertex_howson,
        vertex_fle,
        evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{build_context, Graph};

    #[test]
    fn relative_completeness_examples() {
        let r = is_relatively_complete(&fixtures::p2free());
        assert!(r.holds);
        assert_eq!(r.special_pair, Some((0, 1)));
        let r = is_relatively_complete(&fixtures::t3free());
        assert!(!r.holds);
        assert_eq!(r.violations[0].reason, "pair (A,B) violates Def (i): (A,C) not an edge");
        assert!(is_relatively_complete(&fixtures::groups3()).holds);
    }

    #[test]
    fn wln_examples() {
        assert!(decide_wln(&fixtures::p2free()).overall);
        assert!(!decide_wln(&fixtures::t3free()).overall);
        assert!(!decide_wln(&fixtures::band3()).overall);
        assert!(decide_wln(&fixtures::p2dir()).overall);
        assert!(decide_wln(&fixtures::groups3()).overall);
        let t = decide_wln(&fixtures::trace2());
        assert!(t.relatively_complete && t.overall);
        let free2 = build_context(Graph::discrete(1), vec![fixtures::free_monoid("F", "xy")]).unwrap();
        assert!(!decide_wln(&free2).overall);
    }

    #[test]
    fn two_special_pairs_fail() {
        let u = fixtures::u_monoid;
        let g = Graph::new(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let ctx = build_context(g, vec![u(), u(), u(), u()]).unwrap();
        let r = is_relatively_complete(&ctx);
        assert!(!r.holds);
        assert_eq!(r.special_pair, Some((0, 1)));
        assert_eq!(r.violations.len(), 1);
    }

    #[test]
    fn split_examples() {
        let d = fixtures::p2dir();
        let s = split_bipartite(&d, &[0]).unwrap();
        let (x, y) = s.psi(&d.w("A.a B.a"));
        assert_eq!(x.render(&s.left), "[A.a]");
        assert_eq!(y.render(&s.right), "[B.a]");
        let s = split_bipartite(&d, &[]).unwrap();
        assert_eq!(s.left.vertex_count(), 0);
        assert!(s.psi(&d.w("A.a")).0.is_empty());
        let f = fixtures::p2free();
        let e = split_bipartite(&f, &[0]).unwrap_err();
        assert_eq!(e.to_string(), "(A,B) is not an edge");
    }

    #[test]
    fn partition_examples() {
        let r = direct4_partition(&fixtures::star_special()).unwrap();
        assert_eq!(r.part(PartKind::FreePair), Some(&[0, 1][..]));
        assert_eq!(r.part(PartKind::RestrictedDirect), Some(&[][..]));
        assert_eq!(r.part(PartKind::GroupProduct), Some(&[2][..]));
        let r = direct4_partition(&fixtures::p2dir()).unwrap();
        assert_eq!(r.part(PartKind::FreePair), None);
        assert_eq!(r.part(PartKind::RestrictedDirect), Some(&[0, 1][..]));
        let z = fixtures::z2_monoid;
        let all = build_context(Graph::complete(3), vec![z(), z(), z()]).unwrap();
        let r = direct4_partition(&all).unwrap();
        assert_eq!(r.part(PartKind::GroupProduct), Some(&[0, 1, 2][..]));
        assert!(direct4_partition(&fixtures::t3free()).is_err());
    }

    #[test]
    fn coherency_examples() {
        for ctx in [fixtures::p2free(), fixtures::trace2(), fixtures::p2dir()] {
            let a = Word::empty();
            let r = coherency_report(&ctx, &[(a.clone(), a)]).unwrap();
            assert!(r.overall);
        }
    }
}
