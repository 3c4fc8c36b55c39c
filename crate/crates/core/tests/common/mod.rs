#![allow(dead_code)]

use graphprod::fixtures;
use graphprod::model::Element;
use graphprod::normal_form::reduce;
use graphprod::oracle::{letter_pool, DescentOracle};
use graphprod::{GpContext, Letter, VertexMonoid, Word};
use rand::Rng;

/// Element keys of length at most `bound`, free vertices restricted to single symbols.
pub fn universe(ctx: &GpContext, bound: usize) -> Vec<Word> {
    let all: Vec<usize> = (0..ctx.vertex_count()).collect();
    let letters = letter_pool(ctx, &all, &[], true);
    DescentOracle::new(ctx).elements_up_to(&letters, bound)
}

/// Every fixture with the elements of length at most `bound`.
pub fn fixture_universes(bound: usize) -> Vec<(&'static str, GpContext, Vec<Word>)> {
    fixtures::all()
        .into_iter()
        .map(|(n, c)| {
            let u = universe(&c, bound);
            (n, c, u)
        })
        .collect()
}

/// Letters for exhaustive word enumeration, identities included. Free vertices
/// contribute words of length at most two over their alphabet.
pub fn word_letters(ctx: &GpContext) -> Vec<Letter> {
    let mut out = Vec::new();
    for v in 0..ctx.vertex_count() {
        match ctx.monoid(v) {
            VertexMonoid::Finite(f) => out.extend((0..f.size()).map(|i| Letter::new(v, Element::Finite(i)))),
            VertexMonoid::Free(f) => {
                let k = f.alphabet().len() as u8;
                out.push(Letter::new(v, Element::Free(vec![])));
                for a in 0..k {
                    out.push(Letter::new(v, Element::Free(vec![a])));
                    for b in 0..k {
                        out.push(Letter::new(v, Element::Free(vec![a, b])));
                    }
                }
            }
        }
    }
    out
}

/// All words of length at most `max_len` over `letters`.
pub fn all_words(letters: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for l in letters {
                let mut v = w.0.clone();
                v.push(l.clone());
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn random_letter<R: Rng>(ctx: &GpContext, rng: &mut R) -> Letter {
    let v = rng.gen_range(0..ctx.vertex_count());
    let e = match ctx.monoid(v) {
        VertexMonoid::Finite(f) => {
            let mut i = rng.gen_range(0..f.size() - 1);
            if i >= f.identity() {
                i += 1;
            }
            Element::Finite(i)
        }
        VertexMonoid::Free(f) => {
            let len = rng.gen_range(1..=2);
            Element::Free((0..len).map(|_| rng.gen_range(0..f.alphabet().len()) as u8).collect())
        }
    };
    Letter::new(v, e)
}

pub fn random_word<R: Rng>(ctx: &GpContext, rng: &mut R, max_len: usize) -> Word {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| random_letter(ctx, rng)).collect()
}

/// A reduced word obtained by reducing a random word of length at most `max_len`.
pub fn random_reduced<R: Rng>(ctx: &GpContext, rng: &mut R, max_len: usize) -> Word {
    reduce(ctx, &random_word(ctx, rng, max_len))
}

/// A random shuffle of `w`: a sequence of swaps of adjacent commuting letters.
pub fn random_shuffle<R: Rng>(ctx: &GpContext, w: &Word, rng: &mut R) -> Word {
    let mut v = w.0.clone();
    if v.len() < 2 {
        return Word(v);
    }
    for _ in 0..4 * v.len() {
        let i = rng.gen_range(0..v.len() - 1);
        if ctx.commute(&v[i], &v[i + 1]) {
            v.swap(i, i + 1);
        }
    }
    Word(v)
}
