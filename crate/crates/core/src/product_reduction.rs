//! Bookkeeping for the reduction of a product `s ∘ a` of reduced words: which
//! letters of `a` are glued to or deleted by letters of `s`, and in which order.
//! Also the factorization of a common left multiple and the double shuffle that
//! splits the first blocks of the two factors.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{GpContext, Letter, Word};
use crate::normal_form::{equal, front_positions, is_complete_block, is_reduced, reduce};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Glue,
    Delete,
}

/// One reduction move: the letter of `a` at `position` is glued or deleted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub position: usize,
    pub kind: MoveKind,
}

impl Move {
    pub fn glue(position: usize) -> Self {
        Move {
            position,
            kind: MoveKind::Glue,
        }
    }

    pub fn delete(position: usize) -> Self {
        Move {
            position,
            kind: MoveKind::Delete,
        }
    }
}

/// A reduction function θ for a reduced word `a`: the sequence of moves, with
/// move `p` (1-based) acting on position `θ(p)` of `a` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReductionFunction {
    moves: Vec<Move>,
}

impl ReductionFunction {
    pub fn new(moves: Vec<Move>) -> Self {
        ReductionFunction { moves }
    }

    pub fn identity() -> Self {
        ReductionFunction { moves: Vec::new() }
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// The number of moves `M`.
    pub fn move_count(&self) -> usize {
        self.moves.len()
    }

    fn indices(&self, kind: MoveKind) -> Vec<usize> {
        (1..=self.moves.len())
            .filter(|&p| self.moves[p - 1].kind == kind)
            .collect()
    }

    /// `I`: 1-based indices of the glueing moves.
    pub fn glue_indices(&self) -> Vec<usize> {
        self.indices(MoveKind::Glue)
    }

    /// `J`: 1-based indices of the deletion moves.
    pub fn deletion_indices(&self) -> Vec<usize> {
        self.indices(MoveKind::Delete)
    }

    /// `θ(p)` for a 1-based move index.
    pub fn theta(&self, p: usize) -> usize {
        self.moves[p - 1].position
    }

    /// Glued positions of `a`, sorted.
    pub fn glue_positions(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .moves
            .iter()
            .filter(|m| m.kind == MoveKind::Glue)
            .map(|m| m.position)
            .collect();
        v.sort_unstable();
        v
    }

    /// Deleted positions of `a` in deletion order `jθ_1, …, jθ_k`.
    pub fn deletion_sequence(&self) -> Vec<usize> {
        self.moves
            .iter()
            .filter(|m| m.kind == MoveKind::Delete)
            .map(|m| m.position)
            .collect()
    }

    /// The data the annihilator construction depends on.
    pub fn key(&self) -> (Vec<usize>, Vec<usize>) {
        (self.deletion_sequence(), self.glue_positions())
    }

    /// Checks the combinatorial invariants against `a`.
    pub fn is_valid_for(&self, ctx: &GpContext, a: &Word) -> bool {
        let l = a.letters();
        let mut removed = vec![false; l.len()];
        let mut glued: Vec<usize> = Vec::new();
        for m in &self.moves {
            let p = m.position;
            if p >= l.len() || removed[p] {
                return false;
            }
            let at_front = (0..p).all(|i| removed[i] || ctx.adjacent(l[i].vertex, l[p].vertex));
            let past_glued = glued.iter().all(|&g| ctx.adjacent(g, l[p].vertex));
            if !at_front || !past_glued {
                return false;
            }
            match m.kind {
                MoveKind::Delete => {
                    if !ctx.is_left_invertible(&l[p]) {
                        return false;
                    }
                }
                MoveKind::Glue => {
                    if !ctx.monoid(l[p].vertex).glue_realizable(&l[p].element) {
                        return false;
                    }
                    glued.push(l[p].vertex);
                }
            }
            removed[p] = true;
        }
        true
    }
}

/// The outcome of reducing `s ∘ a` while recording the moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracedReduction {
    /// `reduce(s ∘ a)`, a shuffle of `s^M ∘ (glued block) ∘ a^M`.
    pub result: Word,
    pub function: ReductionFunction,
    /// For each move, the index in `s` of the consumed letter and the letter.
    pub consumed: Vec<(usize, Letter)>,
    /// `s^M`: `s` without the consumed letters.
    pub s_residual: Word,
    /// Glued positions of `a` with their products, in glue order.
    pub glued: Vec<(usize, Letter)>,
    /// Positions of `a` left untouched (`a^M`).
    pub a_residual: Vec<usize>,
}

impl TracedReduction {
    /// `a` with each glued letter replaced by its product and deleted letters dropped.
    pub fn glued_target(&self, a: &Word) -> Word {
        let deleted: Vec<usize> = self.function.deletion_sequence();
        a.iter()
            .enumerate()
            .filter(|(i, _)| !deleted.contains(i))
            .map(|(i, l)| {
                self.glued
                    .iter()
                    .find(|(p, _)| *p == i)
                    .map(|(_, g)| g.clone())
                    .unwrap_or_else(|| l.clone())
            })
            .collect()
    }
}

/// Reduces `s ∘ a` move by move. At each step the move acting on the least
/// available position of `a` is taken.
pub fn reduce_product_traced(ctx: &GpContext, s: &Word, a: &Word) -> Result<TracedReduction> {
    if !is_reduced(ctx, s) || !is_reduced(ctx, a) {
        return Err(Error::Precondition("both factors must be reduced".into()));
    }
    let mut s_res: Vec<(usize, Letter)> = s.iter().cloned().enumerate().collect();
    let mut a_res: Vec<(usize, Letter)> = a.iter().cloned().enumerate().collect();
    let mut glued: Vec<(usize, Letter)> = Vec::new();
    let mut moves = Vec::new();
    let mut consumed = Vec::new();
    loop {
        let mut chosen = None;
        for (oi, (_, ao)) in a_res.iter().enumerate() {
            let front = a_res[..oi].iter().all(|(_, x)| ctx.commute(x, ao));
            let past_glued = glued.iter().all(|(_, g)| ctx.commute(g, ao));
            if !front || !past_glued {
                continue;
            }
            let Some(yi) = s_res.iter().rposition(|(_, y)| y.vertex == ao.vertex) else {
                continue;
            };
            if s_res[yi + 1..].iter().all(|(_, x)| ctx.commute(x, ao)) {
                chosen = Some((oi, yi));
                break;
            }
        }
        let Some((oi, yi)) = chosen else { break };
        let (pos, ao) = a_res.remove(oi);
        let (si, y) = s_res.remove(yi);
        let prod = ctx.mul_letters(&y, &ao);
        if ctx.is_identity_letter(&prod) {
            moves.push(Move::delete(pos));
        } else {
            moves.push(Move::glue(pos));
            glued.push((pos, prod));
        }
        consumed.push((si, y));
    }
    let s_residual: Word = s_res.iter().map(|(_, l)| l.clone()).collect();
    let mut result = s_residual.0.clone();
    result.extend(glued.iter().map(|(_, g)| g.clone()));
    result.extend(a_res.iter().map(|(_, l)| l.clone()));
    let traced = Word(result);
    let result = reduce(ctx, &s.concat(a));
    if !is_reduced(ctx, &traced) || !equal(ctx, &traced, &result) {
        return Err(Error::Invariant("traced reduction did not reach a reduced form".into()));
    }
    Ok(TracedReduction {
        result,
        function: ReductionFunction::new(moves),
        consumed,
        s_residual,
        glued,
        a_residual: a_res.iter().map(|(p, _)| *p).collect(),
    })
}

/// Every move sequence passing the combinatorial filters, one representative (the
/// lexicographically least sequence) per deletion order and glue set.
pub fn enumerate_reduction_functions(ctx: &GpContext, a: &Word) -> Result<Vec<ReductionFunction>> {
    if !is_reduced(ctx, a) {
        return Err(Error::Precondition("target word must be reduced".into()));
    }
    let l = a.letters();
    let deletable: Vec<bool> = l.iter().map(|x| ctx.is_left_invertible(x)).collect();
    let gluable: Vec<bool> = l
        .iter()
        .map(|x| ctx.monoid(x.vertex).glue_realizable(&x.element))
        .collect();
    let mut found: BTreeMap<(Vec<usize>, Vec<usize>), Vec<Move>> = BTreeMap::new();

    struct Search<'s> {
        ctx: &'s GpContext,
        l: &'s [Letter],
        deletable: &'s [bool],
        gluable: &'s [bool],
        removed: Vec<bool>,
        glued: Vec<usize>,
        moves: Vec<Move>,
    }

    fn dfs(st: &mut Search<'_>, found: &mut BTreeMap<(Vec<usize>, Vec<usize>), Vec<Move>>) {
        let f = ReductionFunction::new(st.moves.clone());
        found.entry(f.key()).or_insert_with(|| st.moves.clone());
        for p in 0..st.l.len() {
            if st.removed[p] {
                continue;
            }
            let v = st.l[p].vertex;
            let at_front = (0..p).all(|i| st.removed[i] || st.ctx.adjacent(st.l[i].vertex, v));
            let past_glued = st.glued.iter().all(|&g| st.ctx.adjacent(g, v));
            if !at_front || !past_glued {
                continue;
            }
            st.removed[p] = true;
            if st.gluable[p] {
                st.glued.push(v);
                st.moves.push(Move::glue(p));
                dfs(st, found);
                st.moves.pop();
                st.glued.pop();
            }
            if st.deletable[p] {
                st.moves.push(Move::delete(p));
                dfs(st, found);
                st.moves.pop();
            }
            st.removed[p] = false;
        }
    }

    let mut st = Search {
        ctx,
        l,
        deletable: &deletable,
        gluable: &gluable,
        removed: vec![false; l.len()],
        glued: Vec::new(),
        moves: Vec::new(),
    };
    dfs(&mut st, &mut found);
    let mut out: Vec<ReductionFunction> = found.into_values().map(ReductionFunction::new).collect();
    out.sort_by(|x, y| x.move_count().cmp(&y.move_count()).then_with(|| x.cmp(y)));
    Ok(out)
}

/// For shuffle-equivalent reduced words, the index in `y` of each letter of `x`:
/// the k-th letter at a vertex goes to the k-th letter at that vertex.
pub fn occurrence_matching(x: &[Letter], y: &[Letter]) -> Option<Vec<usize>> {
    if x.len() != y.len() {
        return None;
    }
    let mut per_vertex: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (j, l) in y.iter().enumerate() {
        per_vertex.entry(l.vertex).or_default().push(j);
    }
    let mut next: BTreeMap<usize, usize> = BTreeMap::new();
    let mut out = Vec::with_capacity(x.len());
    for l in x {
        let k = next.entry(l.vertex).or_insert(0);
        let j = *per_vertex.get(&l.vertex)?.get(*k)?;
        if y[j] != *l {
            return None;
        }
        *k += 1;
        out.push(j);
    }
    Some(out)
}

/// Subwords `a'` of `a` and `b'` of `b` (as sorted position lists) and a word `w`
/// with `[u] = [w b']`, `[v] = [w a']` and `[a' b] = [b' a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub w: Word,
    pub a_prime: Vec<usize>,
    pub b_prime: Vec<usize>,
}

/// Factors the common left multiple `[u a] = [v b]` by following the shuffle
/// between the two reduced words.
pub fn factor_common_multiple(ctx: &GpContext, u: &Word, a: &Word, v: &Word, b: &Word) -> Result<Factorization> {
    let y = u.concat(a);
    let x = v.concat(b);
    if !is_reduced(ctx, &y) || !is_reduced(ctx, &x) {
        return Err(Error::Precondition("u∘a and v∘b must be reduced".into()));
    }
    if !equal(ctx, &x, &y) {
        return Err(Error::Precondition("u∘a and v∘b must be equal".into()));
    }
    let sigma = occurrence_matching(x.letters(), y.letters())
        .ok_or_else(|| Error::Invariant("equal reduced words are not shuffle equivalent".into()))?;
    let (nu, nv) = (u.len(), v.len());
    let b_prime: Vec<usize> = (0..b.len()).filter(|&j| sigma[nv + j] < nu).collect();
    let from_v: Vec<bool> = {
        let mut f = vec![false; y.len()];
        for i in 0..nv {
            f[sigma[i]] = true;
        }
        f
    };
    let a_prime: Vec<usize> = (0..a.len()).filter(|&i| from_v[nu + i]).collect();
    let images_of_b: Vec<usize> = b_prime.iter().map(|&j| sigma[nv + j]).collect();
    let w: Word = (0..nu)
        .filter(|i| !images_of_b.contains(i))
        .map(|i| u.letters()[i].clone())
        .collect();
    let f = Factorization { w, a_prime, b_prime };
    let ap = a.select(&f.a_prime);
    let bp = b.select(&f.b_prime);
    let ok = equal(ctx, u, &f.w.concat(&bp))
        && equal(ctx, v, &f.w.concat(&ap))
        && equal(ctx, &ap.concat(b), &bp.concat(a))
        && is_reduced(ctx, &f.w.concat(&ap).concat(b))
        && is_reduced(ctx, &f.w.concat(&bp).concat(a));
    if !ok {
        return Err(Error::Invariant("factorization identities failed".into()));
    }
    Ok(f)
}

/// The partition of the first blocks of `a` and `b` induced by the shuffle
/// `b' ∘ a ≡ a' ∘ b`. Position sets are sorted; `sigma` pairs `I_a` with `I_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleShuffleData {
    pub i_a: Vec<usize>,
    pub j_a: Vec<usize>,
    pub k_a: Vec<usize>,
    pub i_b: Vec<usize>,
    pub j_b: Vec<usize>,
    pub k_b: Vec<usize>,
    pub sigma: Vec<(usize, usize)>,
    /// Letters of `a` at `J_a`.
    pub a_left: Word,
    /// Letters of `b` at `J_b`.
    pub b_left: Word,
    /// Letters of `a` at `I_a` (equal to their partners in `b`).
    pub w_ab: Word,
    /// The remaining letters of `a' ∘ b`, in order.
    pub tail: Word,
}

impl DoubleShuffleData {
    /// `a^(ℓ) ∘ b^(ℓ) ∘ w_ab ∘ tail`.
    pub fn recombined(&self) -> Word {
        self.a_left.concat(&self.b_left).concat(&self.w_ab).concat(&self.tail)
    }
}

/// Splits the first blocks of `a` and `b` according to where their letters travel
/// in the shuffle from `b' ∘ a` to `a' ∘ b`.
pub fn double_shuffle_decompose(
    ctx: &GpContext,
    a: &Word,
    b: &Word,
    a_prime: &[usize],
    b_prime: &[usize],
) -> Result<DoubleShuffleData> {
    let ap = a.select(a_prime);
    let bp = b.select(b_prime);
    let x = bp.concat(a);
    let y = ap.concat(b);
    if !is_reduced(ctx, &x) || !is_reduced(ctx, &y) || !equal(ctx, &x, &y) {
        return Err(Error::Precondition("b'∘a and a'∘b must be reduced and equal".into()));
    }
    let fwd = occurrence_matching(x.letters(), y.letters())
        .ok_or_else(|| Error::Invariant("equal reduced words are not shuffle equivalent".into()))?;
    let mut back = vec![0; fwd.len()];
    for (i, &j) in fwd.iter().enumerate() {
        back[j] = i;
    }
    let fa = front_positions(ctx, a.letters());
    let fb = front_positions(ctx, b.letters());
    let (nap, nbp) = (ap.len(), bp.len());

    let j_a: Vec<usize> = fa.iter().copied().filter(|i| a_prime.contains(i)).collect();
    let j_b: Vec<usize> = fb.iter().copied().filter(|j| b_prime.contains(j)).collect();
    let mut i_a = Vec::new();
    let mut k_a = Vec::new();
    let mut sigma = Vec::new();
    for &i in fa.iter().filter(|i| !j_a.contains(i)) {
        let t = fwd[nbp + i];
        if t >= nap && fb.contains(&(t - nap)) && !j_b.contains(&(t - nap)) {
            i_a.push(i);
            sigma.push((i, t - nap));
        } else {
            k_a.push(i);
        }
    }
    let mut i_b = Vec::new();
    let mut k_b = Vec::new();
    for &j in fb.iter().filter(|j| !j_b.contains(j)) {
        let t = back[nap + j];
        if t >= nbp && i_a.contains(&(t - nbp)) {
            i_b.push(j);
        } else {
            k_b.push(j);
        }
    }
    let mut sigma_image: Vec<usize> = sigma.iter().map(|&(_, j)| j).collect();
    sigma_image.sort_unstable();
    if sigma_image != i_b {
        return Err(Error::Invariant("matched first-block letters are not paired".into()));
    }
    let mut skip = vec![false; y.len()];
    for &i in &j_a {
        let k = a_prime.iter().position(|&p| p == i).expect("J_a ⊆ a'");
        skip[k] = true;
    }
    for &j in j_b.iter().chain(i_b.iter()) {
        skip[nap + j] = true;
    }
    let tail: Word = y
        .iter()
        .enumerate()
        .filter(|(k, _)| !skip[*k])
        .map(|(_, l)| l.clone())
        .collect();
    let d = DoubleShuffleData {
        a_left: a.select(&j_a),
        b_left: b.select(&j_b),
        w_ab: a.select(&i_a),
        tail,
        i_a,
        j_a,
        k_a,
        i_b,
        j_b,
        k_b,
        sigma,
    };
    let block = d.a_left.concat(&d.b_left).concat(&d.w_ab);
    if !is_complete_block(ctx, block.letters()) || !equal(ctx, &d.recombined(), &y) {
        return Err(Error::Invariant("double shuffle decomposition failed".into()));
    }
    Ok(d)
}
