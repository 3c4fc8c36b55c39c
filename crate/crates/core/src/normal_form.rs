//! Reduced words, shuffles, the single-letter reduction kernel and Foata normal forms.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{GpContext, Letter, Word};

/// Left Foata normal form with vertex-sorted blocks; the unique representative of
/// an element of the graph product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CanonicalForm {
    blocks: Vec<Vec<Letter>>,
}

impl CanonicalForm {
    pub fn empty() -> Self {
        CanonicalForm::default()
    }

    pub fn blocks(&self) -> &[Vec<Letter>] {
        &self.blocks
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Concatenation of the blocks; a reduced word for the element.
    pub fn word(&self) -> Word {
        self.blocks.iter().flatten().cloned().collect()
    }

    /// Blocks in brackets, `[A.a B.a][C.a]`; the identity renders as `e`.
    pub fn render(&self, ctx: &GpContext) -> String {
        if self.blocks.is_empty() {
            return "e".to_string();
        }
        self.blocks
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|l| ctx.format_letter(l)).collect();
                format!("[{}]", inner.join(" "))
            })
            .collect()
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.blocks.iter().flatten().cmp(other.blocks.iter().flatten()))
            .then_with(|| self.blocks.len().cmp(&other.blocks.len()))
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// No identity letters, and any two letters at one vertex are separated by a
/// letter that does not commute with them.
pub fn is_reduced(ctx: &GpContext, w: &Word) -> bool {
    let l = w.letters();
    for (i, x) in l.iter().enumerate() {
        if ctx.is_identity_letter(x) {
            return false;
        }
        for y in &l[i + 1..] {
            if y.vertex == x.vertex {
                return false;
            }
            if !ctx.adjacent(x.vertex, y.vertex) {
                break;
            }
        }
    }
    true
}

/// Prepends one letter to a reduced word kept in reverse order (`rev[last]` is the
/// first letter), keeping it reduced.
fn prepend(ctx: &GpContext, rev: &mut Vec<Letter>, p: Letter) {
    if ctx.is_identity_letter(&p) {
        return;
    }
    for k in (0..rev.len()).rev() {
        if rev[k].vertex == p.vertex {
            // a_k shuffles to the front, so the product takes the first position
            let prod = ctx.mul_letters(&p, &rev.remove(k));
            if !ctx.is_identity_letter(&prod) {
                rev.push(prod);
            }
            return;
        }
        if !ctx.adjacent(rev[k].vertex, p.vertex) {
            break;
        }
    }
    rev.push(p);
}

/// A reduced word equal to `w`, built by prepending letters right to left.
pub fn reduce(ctx: &GpContext, w: &Word) -> Word {
    let mut rev: Vec<Letter> = Vec::with_capacity(w.len());
    for p in w.letters().iter().rev() {
        prepend(ctx, &mut rev, p.clone());
    }
    rev.reverse();
    Word(rev)
}

/// Whether moving the letter at position `m` to position `sigma[m]` is a valid
/// shuffle of `x`: every inverted pair must have adjacent supports.
pub fn shuffle_valid(ctx: &GpContext, x: &Word, sigma: &[usize]) -> Result<bool> {
    let n = x.len();
    if sigma.len() != n {
        return Err(Error::LengthMismatch {
            word: n,
            perm: sigma.len(),
        });
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::NotPermutation(n));
        }
        seen[s] = true;
    }
    let l = x.letters();
    for m in 0..n {
        for k in (m + 1)..n {
            if sigma[k] < sigma[m] && !ctx.adjacent(l[m].vertex, l[k].vertex) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The word with the letter at `m` moved to position `sigma[m]`.
pub fn apply_permutation(x: &Word, sigma: &[usize]) -> Word {
    let mut out: Vec<Option<Letter>> = vec![None; x.len()];
    for (m, l) in x.iter().enumerate() {
        out[sigma[m]] = Some(l.clone());
    }
    out.into_iter().map(|l| l.expect("permutation")).collect()
}

/// Positions of a reduced word whose letters shuffle to the front.
pub fn front_positions(ctx: &GpContext, letters: &[Letter]) -> Vec<usize> {
    (0..letters.len())
        .filter(|&i| letters[..i].iter().all(|y| ctx.adjacent(y.vertex, letters[i].vertex)))
        .collect()
}

/// Positions of a reduced word whose letters shuffle to the end.
pub fn back_positions(ctx: &GpContext, letters: &[Letter]) -> Vec<usize> {
    (0..letters.len())
        .filter(|&i| {
            letters[i + 1..]
                .iter()
                .all(|y| ctx.adjacent(y.vertex, letters[i].vertex))
        })
        .collect()
}

fn sorted_block(mut b: Vec<Letter>) -> Vec<Letter> {
    b.sort_by_key(|l| l.vertex);
    b
}

/// Left Foata normal form: repeatedly extract the letters that shuffle to the front.
pub fn foata_left(ctx: &GpContext, w: &Word) -> CanonicalForm {
    let mut rest = reduce(ctx, w).0;
    let mut blocks = Vec::new();
    while !rest.is_empty() {
        let front = front_positions(ctx, &rest);
        let mut block = Vec::with_capacity(front.len());
        let mut keep = Vec::with_capacity(rest.len() - front.len());
        let mut fi = front.iter().peekable();
        for (i, l) in rest.into_iter().enumerate() {
            if fi.peek() == Some(&&i) {
                fi.next();
                block.push(l);
            } else {
                keep.push(l);
            }
        }
        blocks.push(sorted_block(block));
        rest = keep;
    }
    CanonicalForm { blocks }
}

/// Right Foata normal form: repeatedly extract the letters that shuffle to the end.
/// Blocks are listed left to right.
pub fn foata_right(ctx: &GpContext, w: &Word) -> CanonicalForm {
    let mut rest = reduce(ctx, w).0;
    let mut blocks = Vec::new();
    while !rest.is_empty() {
        let back = back_positions(ctx, &rest);
        let mut block = Vec::new();
        let mut keep = Vec::new();
        for (i, l) in rest.into_iter().enumerate() {
            if back.binary_search(&i).is_ok() {
                block.push(l);
            } else {
                keep.push(l);
            }
        }
        blocks.push(sorted_block(block));
        rest = keep;
    }
    blocks.reverse();
    CanonicalForm { blocks }
}

/// The unique representative of the element of `w`.
pub fn canonical(ctx: &GpContext, w: &Word) -> CanonicalForm {
    foata_left(ctx, w)
}

pub fn equal(ctx: &GpContext, u: &Word, v: &Word) -> bool {
    canonical(ctx, u) == canonical(ctx, v)
}

pub fn multiply(ctx: &GpContext, u: &Word, v: &Word) -> CanonicalForm {
    canonical(ctx, &u.concat(v))
}

/// Whether the letters of `b` form a complete block: no identities, distinct
/// and pairwise adjacent vertices.
pub fn is_complete_block(ctx: &GpContext, b: &[Letter]) -> bool {
    b.iter()
        .enumerate()
        .all(|(i, x)| !ctx.is_identity_letter(x) && b[..i].iter().all(|y| ctx.adjacent(x.vertex, y.vertex)))
}

/// Checks the structural invariants of a canonical form.
pub fn check_canonical(ctx: &GpContext, cf: &CanonicalForm) -> bool {
    let blocks = cf.blocks();
    let sorted = blocks
        .iter()
        .all(|b| !b.is_empty() && b.windows(2).all(|p| p[0].vertex < p[1].vertex));
    let complete = blocks.iter().all(|b| is_complete_block(ctx, b));
    let tight = blocks.windows(2).all(|p| {
        p[1].iter()
            .all(|x| p[0].iter().any(|y| !ctx.adjacent(x.vertex, y.vertex)))
    });
    sorted && complete && tight && is_reduced(ctx, &cf.word())
}
