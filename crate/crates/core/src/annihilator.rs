//! Left annihilator congruences `l([a]) = {(s, t) : [s a] = [t a]}`: a finite
//! generating set built from reduction functions, and a bounded membership search
//! for the left congruence it generates.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::model::{Element, GpContext, Letter, VertexMonoid, Word};
use crate::normal_form::{canonical, equal, is_reduced, CanonicalForm};
use crate::oracle::oracle_annihilator_pairs;
use crate::product_reduction::{enumerate_reduction_functions, MoveKind, ReductionFunction};

/// Which part of the construction produced a pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairSource {
    /// A vertex annihilator pair at the `step`-th deletion (1-based) of `function`.
    Deletion { function: ReductionFunction, step: usize },
    /// A vertex annihilator pair at a glued position of `function`.
    Glue {
        function: ReductionFunction,
        position: usize,
    },
    /// Two reduction functions and the selected subwords `A'` and `B'`.
    Parallel {
        theta: ReductionFunction,
        psi: ReductionFunction,
        a_sel: Vec<usize>,
        b_sel: Vec<usize>,
    },
}

/// Pairs `(s, t)` with `s < t`, each verified to satisfy `[s a] = [t a]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairSet {
    pub pairs: Vec<(CanonicalForm, CanonicalForm)>,
    pub provenance: Vec<PairSource>,
}

impl PairSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Re-checks every pair against `a`.
    pub fn verify(&self, ctx: &GpContext, a: &Word) -> bool {
        self.pairs
            .iter()
            .all(|(s, t)| equal(ctx, &s.word().concat(a), &t.word().concat(a)))
    }

    fn push(&mut self, ctx: &GpContext, a: &Word, s: Word, t: Word, src: PairSource) -> Result<bool> {
        let (s, t) = (canonical(ctx, &s), canonical(ctx, &t));
        if s == t {
            return Ok(false);
        }
        if !equal(ctx, &s.word().concat(a), &t.word().concat(a)) {
            return Ok(false);
        }
        let pair = if s < t { (s, t) } else { (t, s) };
        if self.pairs.contains(&pair) {
            return Ok(false);
        }
        self.pairs.push(pair);
        self.provenance.push(src);
        Ok(true)
    }

    fn sort(&mut self) {
        let mut both: Vec<_> = self.pairs.drain(..).zip(self.provenance.drain(..)).collect();
        both.sort_by(|x, y| x.0.cmp(&y.0));
        (self.pairs, self.provenance) = both.into_iter().unzip();
    }
}

/// The chosen left inverse of a left-invertible letter (least index for finite monoids).
fn left_inverse(ctx: &GpContext, l: &Letter) -> Letter {
    let e = ctx
        .monoid(l.vertex)
        .left_inverse_of(&l.element)
        .expect("deleted letters are left invertible");
    Letter::new(l.vertex, e)
}

/// `a'_{j_m} ∘ … ∘ a'_{j_1}` for the first `m` deletions of `theta`.
fn inverse_prefix(ctx: &GpContext, a: &Word, theta: &ReductionFunction, m: usize) -> Word {
    let dels = theta.deletion_sequence();
    dels[..m]
        .iter()
        .rev()
        .map(|&j| left_inverse(ctx, &a.letters()[j]))
        .collect()
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// A generating set for `l([a])` as a left congruence. Every pair is verified by
/// multiplication before it is kept.
pub fn annihilator_generators(ctx: &GpContext, a: &Word) -> Result<PairSet> {
    if !is_reduced(ctx, a) {
        return Err(Error::Precondition("target word must be reduced".into()));
    }
    let thetas = enumerate_reduction_functions(ctx, a)?;
    let vertex_pairs: Vec<Vec<(Letter, Letter)>> = a
        .iter()
        .map(|l| {
            ctx.monoid(l.vertex)
                .vertex_annihilator(&l.element)
                .into_iter()
                .map(|(p, q)| (Letter::new(l.vertex, p), Letter::new(l.vertex, q)))
                .collect()
        })
        .collect();
    let with = |x: &Letter, w: &Word| {
        let mut v = vec![x.clone()];
        v.extend_from_slice(w.letters());
        ctx.strip_identities(&Word(v))
    };

    let mut k = PairSet::default();
    for theta in &thetas {
        let dels = theta.deletion_sequence();
        for (l, &j) in dels.iter().enumerate() {
            let inv = inverse_prefix(ctx, a, theta, l);
            for (p, q) in &vertex_pairs[j] {
                let src = PairSource::Deletion {
                    function: theta.clone(),
                    step: l + 1,
                };
                k.push(ctx, a, with(p, &inv), with(q, &inv), src)?;
            }
        }
        let mut deleted_before = 0;
        for m in theta.moves() {
            match m.kind {
                MoveKind::Delete => deleted_before += 1,
                MoveKind::Glue => {
                    for inv in [
                        inverse_prefix(ctx, a, theta, deleted_before),
                        inverse_prefix(ctx, a, theta, dels.len()),
                    ] {
                        for (p, q) in &vertex_pairs[m.position] {
                            let src = PairSource::Glue {
                                function: theta.clone(),
                                position: m.position,
                            };
                            k.push(ctx, a, with(p, &inv), with(q, &inv), src)?;
                        }
                    }
                }
            }
        }
    }

    for theta in &thetas {
        let inv_t = inverse_prefix(ctx, a, theta, theta.deletion_sequence().len());
        let kept_t: Vec<usize> = (0..a.len())
            .filter(|i| !theta.deletion_sequence().contains(i))
            .collect();
        for psi in &thetas {
            let inv_p = inverse_prefix(ctx, a, psi, psi.deletion_sequence().len());
            let kept_p: Vec<usize> = (0..a.len()).filter(|i| !psi.deletion_sequence().contains(i)).collect();
            for a_sel in subsets(&kept_t) {
                for b_sel in subsets(&kept_p) {
                    if b_sel.len() + kept_t.len() != a_sel.len() + kept_p.len() {
                        continue;
                    }
                    let z_t = a.select(&b_sel).concat(&inv_t);
                    let z_p = a.select(&a_sel).concat(&inv_p);
                    let src = PairSource::Parallel {
                        theta: theta.clone(),
                        psi: psi.clone(),
                        a_sel: a_sel.clone(),
                        b_sel,
                    };
                    k.push(ctx, a, z_t, z_p, src)?;
                }
            }
        }
    }
    k.sort();
    if !k.verify(ctx, a) {
        return Err(Error::Invariant("annihilator pair failed verification".into()));
    }
    Ok(k)
}

/// Result of a bounded congruence search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    /// Connected by this many single rewrites.
    Yes(usize),
    Unknown,
}

/// The rewrite graph `[c p] ↔ [c q]` for `(p, q)` in a pair set, over elements of
/// length at most `length_bound`.
pub struct CongruenceSearch {
    ids: HashMap<CanonicalForm, usize>,
    edges: Vec<Vec<usize>>,
    length_bound: usize,
}

impl CongruenceSearch {
    pub fn new(ctx: &GpContext, k: &PairSet, length_bound: usize, extra: &[&Word]) -> Self {
        let longest = k.pairs.iter().map(|(p, q)| p.len().max(q.len())).max().unwrap_or(0);
        let mut words: Vec<Word> = k.pairs.iter().flat_map(|(p, q)| [p.word(), q.word()]).collect();
        words.extend(extra.iter().map(|w| (*w).clone()));
        let letters = universe_letters(ctx, &words);
        let universe = elements_by_products(ctx, &letters, length_bound + longest);
        let mut s = CongruenceSearch {
            ids: HashMap::new(),
            edges: Vec::new(),
            length_bound,
        };
        for c in &universe {
            for (p, q) in &k.pairs {
                let x = canonical(ctx, &c.concat(&p.word()));
                let y = canonical(ctx, &c.concat(&q.word()));
                if x.len() <= length_bound && y.len() <= length_bound && x != y {
                    let (i, j) = (s.id(x), s.id(y));
                    s.edges[i].push(j);
                    s.edges[j].push(i);
                }
            }
        }
        s
    }

    fn id(&mut self, x: CanonicalForm) -> usize {
        let n = self.ids.len();
        *self.ids.entry(x).or_insert_with(|| {
            self.edges.push(Vec::new());
            n
        })
    }

    pub fn length_bound(&self) -> usize {
        self.length_bound
    }

    /// Breadth-first search from `[s]` visiting at most `state_bound` elements.
    pub fn connect(&self, ctx: &GpContext, s: &Word, t: &Word, state_bound: usize) -> Membership {
        let (s, t) = (canonical(ctx, s), canonical(ctx, t));
        if s == t {
            return Membership::Yes(0);
        }
        let (Some(&from), Some(&to)) = (self.ids.get(&s), self.ids.get(&t)) else {
            return Membership::Unknown;
        };
        let mut dist = vec![usize::MAX; self.edges.len()];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        let mut visited = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &self.edges[x] {
                if dist[y] != usize::MAX {
                    continue;
                }
                dist[y] = dist[x] + 1;
                if y == to {
                    return Membership::Yes(dist[y]);
                }
                visited += 1;
                if visited > state_bound {
                    return Membership::Unknown;
                }
                queue.push_back(y);
            }
        }
        Membership::Unknown
    }
}

/// All non-identity letters of finite vertices; single symbols and the factors of
/// letters of `words` at free vertices.
fn universe_letters(ctx: &GpContext, words: &[Word]) -> Vec<Letter> {
    let mut out = BTreeSet::new();
    for v in 0..ctx.vertex_count() {
        match ctx.monoid(v) {
            VertexMonoid::Finite(m) => {
                out.extend(
                    (0..m.size())
                        .filter(|&i| i != m.identity())
                        .map(|i| Letter::new(v, Element::Finite(i))),
                );
            }
            free @ VertexMonoid::Free(f) => {
                out.extend((0..f.alphabet().len()).map(|i| Letter::new(v, Element::Free(vec![i as u8]))));
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

/// Canonical words of the elements that are products of at most `bound` letters
/// and have length at most `bound`.
fn elements_by_products(ctx: &GpContext, letters: &[Letter], bound: usize) -> Vec<Word> {
    let mut seen: BTreeSet<Word> = BTreeSet::new();
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
    seen.into_iter().collect()
}

/// Bounded membership of `(s, t)` in the left congruence generated by `k`.
pub fn in_left_congruence(
    ctx: &GpContext,
    s: &Word,
    t: &Word,
    k: &PairSet,
    length_bound: usize,
    state_bound: usize,
) -> Membership {
    CongruenceSearch::new(ctx, k, length_bound, &[s, t]).connect(ctx, s, t, state_bound)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FleSample {
    pub target: Word,
    pub generators: PairSet,
    pub verified: bool,
    /// Oracle pairs reached by the congruence search, out of all oracle pairs.
    pub reached: usize,
    pub total: usize,
}

impl FleSample {
    pub fn completeness(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.reached as f64 / self.total as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FleReport {
    pub overall: bool,
    pub per_vertex: Vec<bool>,
    pub samples: Vec<FleSample>,
}

/// Bounds for [`fle_report`]: oracle pair length, congruence length and state bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FleBounds {
    pub oracle_length: usize,
    pub length: usize,
    pub states: usize,
}

impl Default for FleBounds {
    fn default() -> Self {
        FleBounds {
            oracle_length: 3,
            length: 6,
            states: 10_000,
        }
    }
}

pub fn fle_report(ctx: &GpContext, targets: &[Word], bounds: FleBounds) -> Result<FleReport> {
    // finite monoids have finite annihilators; free monoids are cancellative
    let per_vertex = vec![true; ctx.vertex_count()];
    let mut samples = Vec::new();
    for a in targets {
        let a = canonical(ctx, a).word();
        let generators = annihilator_generators(ctx, &a)?;
        let verified = generators.verify(ctx, &a);
        let oracle = oracle_annihilator_pairs(ctx, &a, bounds.oracle_length);
        let extra: Vec<&Word> = oracle.iter().flat_map(|(s, t)| [s, t]).collect();
        let search = CongruenceSearch::new(ctx, &generators, bounds.length, &extra);
        let reached = oracle
            .iter()
            .filter(|(s, t)| matches!(search.connect(ctx, s, t, bounds.states), Membership::Yes(_)))
            .count();
        samples.push(FleSample {
            target: a,
            generators,
            verified,
            reached,
            total: oracle.len(),
        });
    }
    Ok(FleReport {
        overall: per_vertex.iter().all(|&b| b),
        per_vertex,
        samples,
    })
}
