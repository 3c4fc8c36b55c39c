//! Principal left ideals: standard forms, divisibility with witnesses, and the
//! ascending chain condition on principal left ideals.

use std::collections::BTreeSet;

use crate::model::{GpContext, Letter, VertexMonoid, Word};
use crate::normal_form::{equal, foata_left, front_positions, is_complete_block, reduce};

/// A reduced word split as `[prefix][standard]` where `prefix` consists of
/// left-invertible letters and the first block of `standard` has none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    pub prefix: Word,
    pub standard: Word,
}

impl StandardForm {
    /// A left inverse of the prefix: the left inverses of its letters in reverse order.
    pub fn prefix_inverse(&self, ctx: &GpContext) -> Word {
        self.prefix
            .iter()
            .rev()
            .map(|l| {
                let inv = ctx
                    .monoid(l.vertex)
                    .left_inverse_of(&l.element)
                    .expect("prefix letters are left invertible");
                Letter::new(l.vertex, inv)
            })
            .filter(|l| !ctx.is_identity_letter(l))
            .collect()
    }
}

/// Moves left-invertible letters off the front until none remain in the first block.
pub fn strip_left_invertible(ctx: &GpContext, w: &Word) -> StandardForm {
    let mut prefix = Vec::new();
    let mut rest = reduce(ctx, w);
    loop {
        let mut front: Vec<usize> = front_positions(ctx, rest.letters())
            .into_iter()
            .filter(|&i| ctx.is_left_invertible(&rest.letters()[i]))
            .collect();
        if front.is_empty() {
            break;
        }
        front.sort_by_key(|&i| rest.letters()[i].vertex);
        prefix.extend(front.iter().map(|&i| rest.letters()[i].clone()));
        let keep: Vec<usize> = (0..rest.len()).filter(|i| !front.contains(i)).collect();
        rest = reduce(ctx, &rest.select(&keep));
    }
    StandardForm {
        prefix: Word(prefix),
        standard: foata_left(ctx, &rest).word(),
    }
}

/// Index of the last letter of `z` at `vertex` if every later letter commutes with it.
fn last_at_back(ctx: &GpContext, z: &[Letter], vertex: usize) -> Option<usize> {
    let i = z.iter().rposition(|l| l.vertex == vertex)?;
    z[i + 1..].iter().all(|l| ctx.adjacent(l.vertex, vertex)).then_some(i)
}

/// Decides `[u] ∈ GP[v]`, returning a reduced `c` with `[c v] = [u]`.
pub fn leq_principal(ctx: &GpContext, u: &Word, v: &Word) -> Option<Word> {
    let sf = strip_left_invertible(ctx, v);
    let blocks = foata_left(ctx, &sf.standard);
    let mut z: Vec<Letter> = foata_left(ctx, u).word().0;

    // peel v_2 ∘ … ∘ v_n off the right of u
    let suffix: Vec<Letter> = blocks.blocks().iter().skip(1).flatten().cloned().collect();
    for l in suffix.iter().rev() {
        let i = last_at_back(ctx, &z, l.vertex)?;
        if z[i] != *l {
            return None;
        }
        z.remove(i);
    }

    // the residue must lie in GP[x] for every letter x of the first block
    let mut divided = Vec::new();
    let mut consumed = Vec::new();
    if let Some(first) = blocks.blocks().first() {
        for x in first {
            let i = last_at_back(ctx, &z, x.vertex)?;
            let p = ctx.monoid(x.vertex).vertex_divides(&z[i].element, &x.element)?;
            consumed.push(i);
            let p = Letter::new(x.vertex, p);
            if !ctx.is_identity_letter(&p) {
                divided.push(p);
            }
        }
    }
    let mut c: Vec<Letter> = z
        .iter()
        .enumerate()
        .filter(|(i, _)| !consumed.contains(i))
        .map(|(_, l)| l.clone())
        .collect();
    c.extend(divided);
    c.extend(sf.prefix_inverse(ctx).0);
    let c = reduce(ctx, &Word(c));
    debug_assert!(equal(ctx, &c.concat(v), u));
    Some(c)
}

/// `GP[u] = GP[v]`.
pub fn eq_principal(ctx: &GpContext, u: &Word, v: &Word) -> bool {
    leq_principal(ctx, u, v).is_some() && leq_principal(ctx, v, u).is_some()
}

/// Inclusion `GP[a] ⊆ GP[b]` for complete blocks without left-invertible letters,
/// decided letter by letter: `s(b) ⊆ s(a)` and each `a_α ∈ M_α b_α`.
pub fn block_leq(ctx: &GpContext, a: &Word, b: &Word) -> Option<bool> {
    if !is_complete_block(ctx, a.letters()) || !is_complete_block(ctx, b.letters()) {
        return None;
    }
    Some(b.iter().all(|y| {
        a.iter()
            .find(|x| x.vertex == y.vertex)
            .is_some_and(|x| ctx.monoid(y.vertex).vertex_divides(&x.element, &y.element).is_some())
    }))
}

/// Per-vertex evidence for the ascending chain condition on principal left ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AccplEvidence {
    /// A finite monoid with this many distinct principal left ideals.
    FinitelyManyIdeals(usize),
    /// A free monoid: proper divisibility strictly shortens the divisor.
    LengthDecreases,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccplReport {
    pub overall: bool,
    pub per_vertex: Vec<bool>,
    pub evidence: Vec<AccplEvidence>,
}

pub fn accpl_report(ctx: &GpContext) -> AccplReport {
    let evidence: Vec<AccplEvidence> = ctx
        .monoids()
        .iter()
        .map(|m| match m {
            VertexMonoid::Finite(f) => {
                let ideals: BTreeSet<Vec<usize>> = (0..f.size()).map(|x| f.left_ideal(x)).collect();
                AccplEvidence::FinitelyManyIdeals(ideals.len())
            }
            VertexMonoid::Free(_) => AccplEvidence::LengthDecreases,
        })
        .collect();
    let per_vertex = vec![true; evidence.len()];
    AccplReport {
        overall: per_vertex.iter().all(|&b| b),
        per_vertex,
        evidence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn standard_form_examples() {
        let zu = fixtures::zu();
        let sf = strip_left_invertible(&zu, &zu.w("A.g B.a"));
        assert_eq!(sf.prefix, zu.w("A.g"));
        assert_eq!(sf.standard, zu.w("B.a"));

        let f = fixtures::p2free();
        let sf = strip_left_invertible(&f, &f.w("A.a B.a"));
        assert!(sf.prefix.is_empty());
        assert_eq!(sf.standard, f.w("A.a B.a"));

        let z = fixtures::z2();
        let sf = strip_left_invertible(&z, &z.w("A.g"));
        assert_eq!(sf.prefix, z.w("A.g"));
        assert!(sf.standard.is_empty());
    }

    #[test]
    fn repeated_stripping() {
        let g = fixtures::groups3();
        let sf = strip_left_invertible(&g, &g.w("A.g C.g A.g"));
        assert_eq!(sf.prefix, g.w("A.g C.g A.g"));
        assert!(sf.standard.is_empty());
    }

    #[test]
    fn leq_examples() {
        let f = fixtures::p2free();
        assert_eq!(leq_principal(&f, &f.w("A.a B.a"), &f.w("B.a")), Some(f.w("A.a")));
        assert_eq!(leq_principal(&f, &f.w("B.a"), &f.w("A.a")), None);
        let d = fixtures::p2dir();
        assert_eq!(leq_principal(&d, &d.w("A.a B.a"), &d.w("A.a")), Some(d.w("B.a")));
        let z = fixtures::z2();
        assert_eq!(leq_principal(&z, &Word::empty(), &z.w("A.g")), Some(z.w("A.g")));
    }

    #[test]
    fn eq_examples() {
        let f = fixtures::p2free();
        assert!(eq_principal(&f, &f.w("A.a"), &f.w("A.a")));
        assert!(!eq_principal(&f, &f.w("A.a"), &f.w("B.a")));
        let z = fixtures::z2();
        assert!(eq_principal(&z, &z.w("A.g"), &Word::empty()));
    }

    #[test]
    fn free_vertex_uses_suffixes() {
        let t = fixtures::trace2();
        assert_eq!(leq_principal(&t, &t.w("A.xxx"), &t.w("A.x")), Some(t.w("A.xx")));
        assert_eq!(leq_principal(&t, &t.w("A.x B.y"), &t.w("A.x")), Some(t.w("B.y")));
        assert_eq!(leq_principal(&t, &t.w("A.x"), &t.w("A.xx")), None);
    }

    #[test]
    fn block_comparison() {
        let d = fixtures::p2dir();
        assert_eq!(block_leq(&d, &d.w("A.a B.a"), &d.w("A.a")), Some(true));
        assert_eq!(block_leq(&d, &d.w("A.a"), &d.w("A.a B.a")), Some(false));
        let f = fixtures::p2free();
        assert_eq!(block_leq(&f, &f.w("A.a B.a"), &f.w("A.a")), None);
    }

    #[test]
    fn accpl_examples() {
        let r = accpl_report(&fixtures::p2free());
        assert!(r.overall);
        assert_eq!(r.per_vertex, vec![true, true]);
        assert_eq!(r.evidence[0], AccplEvidence::FinitelyManyIdeals(2));
        assert!(accpl_report(&fixtures::trace2()).overall);
        assert!(accpl_report(&fixtures::p2dir()).overall);
    }
}
