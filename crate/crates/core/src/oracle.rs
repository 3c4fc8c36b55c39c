//! Brute-force reference implementations. Nothing here uses normal forms; only the
//! defining relations of the presentation and the vertex tables.
//!
//! Two engines are provided. [`oracle_equal`] and [`EquivalenceOracle`] explore the
//! relations in both directions under a length bound. [`DescentOracle`] explores only
//! the length-non-increasing direction (identity deletion, vertex products, swaps of
//! commuting letters) and keys an element by the least shortest word it reaches;
//! the bounded ideal and annihilator searches are built on it.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::model::{Element, GpContext, Letter, VertexMonoid, Word};

/// Extra length allowed for intermediate words beyond the longer input.
pub const DEFAULT_SLACK: usize = 2;

/// Interns letters so words can be stored as short id strings.
struct Interner {
    letters: Vec<Letter>,
    ids: HashMap<Letter, u16>,
}

impl Interner {
    fn new() -> Self {
        Interner {
            letters: Vec::new(),
            ids: HashMap::new(),
        }
    }

    fn id(&mut self, l: &Letter) -> u16 {
        if let Some(&i) = self.ids.get(l) {
            return i;
        }
        let i = u16::try_from(self.letters.len()).expect("too many distinct letters");
        self.letters.push(l.clone());
        self.ids.insert(l.clone(), i);
        i
    }

    fn encode(&mut self, w: &Word) -> Vec<u16> {
        w.iter().map(|l| self.id(l)).collect()
    }
}

/// All ways to write `z` as a product `x y` inside its vertex monoid.
fn splits(m: &VertexMonoid, z: &Element) -> Vec<(Element, Element)> {
    match (m, z) {
        (VertexMonoid::Finite(f), Element::Finite(z)) => {
            let mut out = Vec::new();
            for x in 0..f.size() {
                for (y, &p) in f.row(x).iter().enumerate() {
                    if p == *z {
                        out.push((Element::Finite(x), Element::Finite(y)));
                    }
                }
            }
            out
        }
        (VertexMonoid::Free(_), Element::Free(s)) => (0..=s.len())
            .map(|i| (Element::Free(s[..i].to_vec()), Element::Free(s[i..].to_vec())))
            .collect(),
        _ => Vec::new(),
    }
}

/// Connected components of the graph on words of length at most `bound` whose edges
/// are single applications of the defining relations, in either direction.
/// Components are discovered lazily and cached.
pub struct EquivalenceOracle<'a> {
    ctx: &'a GpContext,
    bound: usize,
    interner: Interner,
    identities: Vec<u16>,
    class: HashMap<Vec<u16>, u32>,
    classes: u32,
}

impl<'a> EquivalenceOracle<'a> {
    pub fn new(ctx: &'a GpContext, bound: usize) -> Self {
        let mut interner = Interner::new();
        let identities = (0..ctx.vertex_count())
            .map(|v| interner.id(&Letter::new(v, ctx.monoid(v).identity())))
            .collect();
        EquivalenceOracle {
            ctx,
            bound,
            interner,
            identities,
            class: HashMap::new(),
            classes: 0,
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Number of words visited so far.
    pub fn visited(&self) -> usize {
        self.class.len()
    }

    fn neighbours(&mut self, w: &[u16], out: &mut Vec<Vec<u16>>) {
        out.clear();
        let n = w.len();
        let ctx = self.ctx;
        for i in 0..n {
            let x = self.interner.letters[w[i] as usize].clone();
            let m = ctx.monoid(x.vertex);
            // R_id forwards
            if m.is_identity(&x.element) {
                let mut v = w.to_vec();
                v.remove(i);
                out.push(v);
            }
            // R_v backwards: split a letter into two
            if n < self.bound {
                for (p, q) in splits(m, &x.element) {
                    let pi = self.interner.id(&Letter::new(x.vertex, p));
                    let qi = self.interner.id(&Letter::new(x.vertex, q));
                    let mut v = Vec::with_capacity(n + 1);
                    v.extend_from_slice(&w[..i]);
                    v.push(pi);
                    v.push(qi);
                    v.extend_from_slice(&w[i + 1..]);
                    out.push(v);
                }
            }
            if i + 1 < n {
                let y = self.interner.letters[w[i + 1] as usize].clone();
                if x.vertex == y.vertex {
                    // R_v forwards
                    let p = self.interner.id(&ctx.mul_letters(&x, &y));
                    let mut v = Vec::with_capacity(n - 1);
                    v.extend_from_slice(&w[..i]);
                    v.push(p);
                    v.extend_from_slice(&w[i + 2..]);
                    out.push(v);
                } else if ctx.adjacent(x.vertex, y.vertex) {
                    // R_e
                    let mut v = w.to_vec();
                    v.swap(i, i + 1);
                    out.push(v);
                }
            }
        }
        // R_id backwards
        if n < self.bound {
            for i in 0..=n {
                for &e in &self.identities {
                    let mut v = Vec::with_capacity(n + 1);
                    v.extend_from_slice(&w[..i]);
                    v.push(e);
                    v.extend_from_slice(&w[i..]);
                    out.push(v);
                }
            }
        }
    }

    fn explore(&mut self, start: Vec<u16>) -> u32 {
        let id = self.classes;
        self.classes += 1;
        let mut queue = VecDeque::new();
        self.class.insert(start.clone(), id);
        queue.push_back(start);
        let mut buf = Vec::new();
        while let Some(w) = queue.pop_front() {
            self.neighbours(&w, &mut buf);
            for v in buf.drain(..) {
                if !self.class.contains_key(&v) {
                    self.class.insert(v.clone(), id);
                    queue.push_back(v);
                }
            }
        }
        id
    }

    /// The component of `w`, or `None` when `w` is longer than the bound.
    pub fn class_of(&mut self, w: &Word) -> Option<u32> {
        if w.len() > self.bound {
            return None;
        }
        let code = self.interner.encode(w);
        if let Some(&c) = self.class.get(&code) {
            return Some(c);
        }
        Some(self.explore(code))
    }

    pub fn equivalent(&mut self, u: &Word, v: &Word) -> bool {
        match (self.class_of(u), self.class_of(v)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

/// Breadth-first closure of `u` under the defining relations in both directions,
/// discarding words longer than `length_bound`; true iff `v` is reached.
pub fn oracle_equal(ctx: &GpContext, u: &Word, v: &Word, length_bound: usize) -> bool {
    if u.len() > length_bound || v.len() > length_bound {
        return false;
    }
    let mut o = EquivalenceOracle::new(ctx, length_bound);
    let target = o.interner.encode(v);
    let start = o.interner.encode(u);
    if start == target {
        return true;
    }
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut buf = Vec::new();
    while let Some(w) = queue.pop_front() {
        o.neighbours(&w, &mut buf);
        for x in buf.drain(..) {
            if x == target {
                return true;
            }
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    false
}

fn shortlex(a: &[Letter], b: &[Letter]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Least shortest word reachable from `w` by deleting identity letters, multiplying
/// adjacent letters of one vertex and swapping adjacent commuting letters.
pub fn descent_key(ctx: &GpContext, w: &Word) -> Word {
    let start = w.0.clone();
    let mut best = start.clone();
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        if shortlex(&x, &best).is_lt() {
            best = x.clone();
        }
        let n = x.len();
        let mut push = |v: Vec<Letter>, seen: &mut HashSet<Vec<Letter>>| {
            if !seen.contains(&v) {
                seen.insert(v.clone());
                queue.push_back(v);
            }
        };
        for i in 0..n {
            if ctx.is_identity_letter(&x[i]) {
                let mut v = x.clone();
                v.remove(i);
                push(v, &mut seen);
            }
            if i + 1 < n {
                if x[i].vertex == x[i + 1].vertex {
                    let mut v = Vec::with_capacity(n - 1);
                    v.extend_from_slice(&x[..i]);
                    v.push(ctx.mul_letters(&x[i], &x[i + 1]));
                    v.extend_from_slice(&x[i + 2..]);
                    push(v, &mut seen);
                } else if ctx.adjacent(x[i].vertex, x[i + 1].vertex) {
                    let mut v = x.clone();
                    v.swap(i, i + 1);
                    push(v, &mut seen);
                }
            }
        }
    }
    Word(best)
}

/// [`descent_key`] with a cache, plus bounded searches over elements.
pub struct DescentOracle<'a> {
    ctx: &'a GpContext,
    cache: HashMap<Word, Word>,
}

impl<'a> DescentOracle<'a> {
    pub fn new(ctx: &'a GpContext) -> Self {
        DescentOracle {
            ctx,
            cache: HashMap::new(),
        }
    }

    pub fn ctx(&self) -> &'a GpContext {
        self.ctx
    }

    pub fn key(&mut self, w: &Word) -> Word {
        if let Some(k) = self.cache.get(w) {
            return k.clone();
        }
        let k = descent_key(self.ctx, w);
        self.cache.insert(w.clone(), k.clone());
        k
    }

    /// Keys of all elements with a word of length at most `bound` over `letters`,
    /// sorted shortlex.
    pub fn elements_up_to(&mut self, letters: &[Letter], bound: usize) -> Vec<Word> {
        let mut seen: HashSet<Word> = HashSet::new();
        let mut frontier = vec![Word::empty()];
        seen.insert(Word::empty());
        for _ in 0..bound {
            let mut next = Vec::new();
            for c in &frontier {
                for x in letters {
                    let mut v = Vec::with_capacity(c.len() + 1);
                    v.push(x.clone());
                    v.extend_from_slice(c.letters());
                    let k = self.key(&Word(v));
                    if k.len() <= bound && seen.insert(k.clone()) {
                        next.push(k);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Word> = seen.into_iter().collect();
        out.sort_by(|a, b| shortlex(a.letters(), b.letters()));
        out
    }

    /// Map from the key of `[c][v]` to the shortlex-least `c` among the given elements.
    pub fn ideal_ball(&mut self, elements: &[Word], v: &Word) -> HashMap<Word, Word> {
        let mut ball: HashMap<Word, Word> = HashMap::new();
        for c in elements {
            let k = self.key(&c.concat(v));
            match ball.get(&k) {
                Some(prev) if shortlex(prev.letters(), c.letters()).is_le() => {}
                _ => {
                    ball.insert(k, c.clone());
                }
            }
        }
        ball
    }
}

/// Non-identity letters for a bounded enumeration. Finite vertices contribute every
/// non-identity element; free vertices contribute the non-empty factors of the
/// letters of `words`, plus each single symbol when `symbols` is set.
pub fn letter_pool(ctx: &GpContext, vertices: &[usize], words: &[&Word], symbols: bool) -> Vec<Letter> {
    let mut pool = BTreeSet::new();
    for &v in vertices {
        let m = ctx.monoid(v);
        match m {
            VertexMonoid::Finite(f) => {
                for i in 0..f.size() {
                    if i != f.identity() {
                        pool.insert(Letter::new(v, Element::Finite(i)));
                    }
                }
            }
            VertexMonoid::Free(fm) => {
                for w in words {
                    for l in w.iter().filter(|l| l.vertex == v) {
                        for f in m.factors(&l.element) {
                            pool.insert(Letter::new(v, f));
                        }
                    }
                }
                if symbols {
                    for i in 0..fm.alphabet().len() {
                        pool.insert(Letter::new(v, Element::Free(vec![i as u8])));
                    }
                }
            }
        }
    }
    pool.into_iter().collect()
}

fn union_support(words: &[&Word]) -> Vec<usize> {
    let mut s: Vec<usize> = words.iter().flat_map(|w| w.support()).collect();
    s.sort_unstable();
    s.dedup();
    s
}

/// The shortlex-least word `c` of length at most `witness_length_bound` with
/// `[c v] = [u]`; letters range over `s(u) ∪ s(v)`, free letters over factors of
/// the letters of `u` and `v`.
pub fn oracle_leq_principal(ctx: &GpContext, u: &Word, v: &Word, witness_length_bound: usize) -> Option<Word> {
    let mut o = DescentOracle::new(ctx);
    let verts = union_support(&[u, v]);
    let letters = letter_pool(ctx, &verts, &[u, v], false);
    let elements = o.elements_up_to(&letters, witness_length_bound);
    let target = o.key(u);
    let ball = o.ideal_ball(&elements, v);
    ball.get(&target).cloned()
}

/// Keys of all elements of length at most `length_bound` lying in both `GP[a]` and
/// `GP[b]`, sorted shortlex.
pub fn oracle_intersection_elements(ctx: &GpContext, a: &Word, b: &Word, length_bound: usize) -> Vec<Word> {
    let mut o = DescentOracle::new(ctx);
    let all: Vec<usize> = (0..ctx.vertex_count()).collect();
    let letters = letter_pool(ctx, &all, &[a, b], true);
    let reach = length_bound + a.len().max(b.len());
    let elements = o.elements_up_to(&letters, reach);
    let ka: HashSet<Word> = o
        .ideal_ball(&elements, a)
        .into_keys()
        .filter(|k| k.len() <= length_bound)
        .collect();
    let mut out: Vec<Word> = o
        .ideal_ball(&elements, b)
        .into_keys()
        .filter(|k| k.len() <= length_bound && ka.contains(k))
        .collect();
    out.sort_by(|x, y| shortlex(x.letters(), y.letters()));
    out
}

/// All pairs `(s, t)` of element keys of length at most `length_bound` with `s < t`
/// shortlex and `[s a] = [t a]`.
pub fn oracle_annihilator_pairs(ctx: &GpContext, a: &Word, length_bound: usize) -> Vec<(Word, Word)> {
    let mut o = DescentOracle::new(ctx);
    let all: Vec<usize> = (0..ctx.vertex_count()).collect();
    let letters = letter_pool(ctx, &all, &[a], true);
    let elements = o.elements_up_to(&letters, length_bound);
    let mut groups: HashMap<Word, Vec<Word>> = HashMap::new();
    for s in &elements {
        let k = o.key(&s.concat(a));
        groups.entry(k).or_default().push(s.clone());
    }
    let mut out = Vec::new();
    for g in groups.values() {
        for (i, s) in g.iter().enumerate() {
            for t in &g[i + 1..] {
                if shortlex(s.letters(), t.letters()).is_lt() {
                    out.push((s.clone(), t.clone()));
                } else {
                    out.push((t.clone(), s.clone()));
                }
            }
        }
    }
    out.sort_by(|x, y| shortlex(x.0.letters(), y.0.letters()).then_with(|| shortlex(x.1.letters(), y.1.letters())));
    out
}
