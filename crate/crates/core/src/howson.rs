//! Intersections of principal left ideals `GP[a] ∩ GP[b]`: a witness search, and a
//! finite generating set built from one witness.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::ideals::{leq_principal, strip_left_invertible};
use crate::model::{Element, GpContext, Letter, VertexMonoid, Word};
use crate::normal_form::{canonical, foata_left, CanonicalForm};
use crate::product_reduction::{double_shuffle_decompose, factor_common_multiple, reduce_product_traced};

/// Where a generator came from: the vertex-level intersection letters placed on
/// the matched first-block positions, and the word `w'` that follows them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub vertex_letters: Word,
    pub tail: Word,
}

/// Generators of `GP[a] ∩ GP[b]` in canonical order, each with its provenance.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeneratorSet {
    pub generators: Vec<CanonicalForm>,
    pub provenance: Vec<Provenance>,
}

impl GeneratorSet {
    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    /// Whether `[w]` lies in the left ideal generated by the set.
    pub fn generates(&self, ctx: &GpContext, w: &Word) -> bool {
        self.generators
            .iter()
            .any(|g| leq_principal(ctx, w, &g.word()).is_some())
    }
}

/// Non-identity letters at `vertices`: all elements of finite monoids, factors of
/// the letters of `words` for free ones.
fn candidate_letters(ctx: &GpContext, vertices: &[usize], words: &[&Word]) -> Vec<Letter> {
    let mut out = BTreeSet::new();
    for &v in vertices {
        match ctx.monoid(v) {
            VertexMonoid::Finite(m) => {
                out.extend(
                    (0..m.size())
                        .filter(|&i| i != m.identity())
                        .map(|i| Letter::new(v, Element::Finite(i))),
                );
            }
            free @ VertexMonoid::Free(_) => {
                for w in words {
                    for l in w.iter().filter(|l| l.vertex == v) {
                        out.extend(free.factors(&l.element).into_iter().map(|e| Letter::new(v, e)));
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Canonical forms of all elements of length at most `bound` over `letters`, sorted.
fn elements_up_to(ctx: &GpContext, letters: &[Letter], bound: usize) -> Vec<CanonicalForm> {
    let mut seen: HashSet<Word> = HashSet::new();
    seen.insert(Word::empty());
    let mut frontier = vec![Word::empty()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &frontier {
            for l in letters {
                let mut x = vec![l.clone()];
                x.extend_from_slice(w.letters());
                let c = canonical(ctx, &Word(x)).word();
                if c.len() <= bound && seen.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<CanonicalForm> = seen.iter().map(|w| foata_left(ctx, w)).collect();
    out.sort();
    out
}

/// The default witness bound `|std(a)| + |std(b)|`.
pub fn default_witness_bound(ctx: &GpContext, a: &Word, b: &Word) -> usize {
    strip_left_invertible(ctx, a).standard.len() + strip_left_invertible(ctx, b).standard.len()
}

/// The least element of length at most `bound` lying in both `GP[a]` and `GP[b]`.
pub fn find_intersection_witness(ctx: &GpContext, a: &Word, b: &Word, bound: usize) -> Option<CanonicalForm> {
    let mut support = a.support();
    support.extend(b.support());
    support.sort_unstable();
    support.dedup();
    let letters = candidate_letters(ctx, &support, &[a, b]);
    elements_up_to(ctx, &letters, bound).into_iter().find(|z| {
        let w = z.word();
        leq_principal(ctx, &w, a).is_some() && leq_principal(ctx, &w, b).is_some()
    })
}

/// Generators of `GP[a] ∩ GP[b]`, empty when no witness exists within the default bound.
pub fn intersect_principal(ctx: &GpContext, a: &Word, b: &Word) -> Result<GeneratorSet> {
    let bound = default_witness_bound(ctx, a, b);
    match find_intersection_witness(ctx, a, b, bound) {
        None => Ok(GeneratorSet::default()),
        Some(z) => intersect_from_witness(ctx, a, b, &z.word()),
    }
}

/// Runs the generator construction from a given element `z` of the intersection.
pub fn intersect_from_witness(ctx: &GpContext, a: &Word, b: &Word, z: &Word) -> Result<GeneratorSet> {
    let sa = strip_left_invertible(ctx, a).standard;
    let sb = strip_left_invertible(ctx, b).standard;
    let s = leq_principal(ctx, z, &sa).ok_or_else(|| Error::Precondition("witness not in GP[a]".into()))?;
    let t = leq_principal(ctx, z, &sb).ok_or_else(|| Error::Precondition("witness not in GP[b]".into()))?;
    let ta = reduce_product_traced(ctx, &s, &sa)?;
    let tb = reduce_product_traced(ctx, &t, &sb)?;
    if !ta.function.deletion_indices().is_empty() || !tb.function.deletion_indices().is_empty() {
        return Err(Error::Invariant("deletion against a standard word".into()));
    }
    let c = ta.glued_target(&sa);
    let d = tb.glued_target(&sb);
    let f = factor_common_multiple(ctx, &ta.s_residual, &c, &tb.s_residual, &d)?;
    let ds = double_shuffle_decompose(ctx, &c, &d, &f.a_prime, &f.b_prime)?;

    let tail = sa.select(&ds.j_a).concat(&sb.select(&ds.j_b)).concat(&ds.tail);
    let choices: Vec<Vec<Letter>> = ds
        .sigma
        .iter()
        .map(|&(o, p)| {
            let (x, y) = (&sa.letters()[o], &sb.letters()[p]);
            ctx.monoid(x.vertex)
                .vertex_ideal_intersection(&x.element, &y.element)
                .into_iter()
                .map(|e| Letter::new(x.vertex, e))
                .collect()
        })
        .collect();

    let mut found: Vec<(CanonicalForm, Provenance)> = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    if choices.iter().all(|c| !c.is_empty()) {
        loop {
            let vertex_letters: Word = pick.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
            let g = canonical(ctx, &vertex_letters.concat(&tail));
            let gw = g.word();
            if leq_principal(ctx, &gw, a).is_none() || leq_principal(ctx, &gw, b).is_none() {
                return Err(Error::Invariant(format!(
                    "generator {} is not in both ideals",
                    g.render(ctx)
                )));
            }
            if !found.iter().any(|(h, _)| *h == g) {
                found.push((
                    g,
                    Provenance {
                        vertex_letters,
                        tail: tail.clone(),
                    },
                ));
            }
            // odometer over the vertex-level choices
            let mut k = 0;
            while k < pick.len() {
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
            if k == pick.len() {
                break;
            }
        }
    }
    found.sort_by(|x, y| x.0.cmp(&y.0));
    let (generators, provenance) = found.into_iter().unzip();
    Ok(GeneratorSet { generators, provenance })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LcmVerdict {
    Empty,
    Principal(CanonicalForm),
    /// Two generators neither of which divides the other.
    NotPrincipal(CanonicalForm, CanonicalForm),
}

/// Whether `GP[a] ∩ GP[b]` is empty, principal or neither.
pub fn lcm_check(ctx: &GpContext, a: &Word, b: &Word) -> Result<LcmVerdict> {
    let set = intersect_principal(ctx, a, b)?;
    Ok(classify(ctx, &set.generators))
}

fn classify(ctx: &GpContext, gens: &[CanonicalForm]) -> LcmVerdict {
    let words: Vec<Word> = gens.iter().map(|g| g.word()).collect();
    let divides = |x: usize, y: usize| leq_principal(ctx, &words[x], &words[y]).is_some();
    if gens.is_empty() {
        return LcmVerdict::Empty;
    }
    if let Some(top) = (0..gens.len()).find(|&i| (0..gens.len()).all(|j| divides(j, i))) {
        return LcmVerdict::Principal(gens[top].clone());
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !divides(i, j) && !divides(j, i) {
                return LcmVerdict::NotPrincipal(gens[i].clone(), gens[j].clone());
            }
        }
    }
    // a finite preorder in which all pairs compare has a greatest element
    unreachable!("comparable generators without a maximum")
}
