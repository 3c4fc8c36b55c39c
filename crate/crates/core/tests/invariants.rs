mod common;

use std::collections::{HashSet, VecDeque};

use graphprod::annihilator::annihilator_generators;
use graphprod::fixtures;
use graphprod::howson::{intersect_from_witness, intersect_principal};
use graphprod::ideals::{block_leq, leq_principal, strip_left_invertible};
use graphprod::normal_form::{
    apply_permutation, check_canonical, foata_left, foata_right, is_complete_block, is_reduced, multiply, reduce,
    shuffle_valid,
};
use graphprod::oracle::descent_key;
use graphprod::product_reduction::{
    double_shuffle_decompose, enumerate_reduction_functions, factor_common_multiple, occurrence_matching,
    reduce_product_traced, MoveKind,
};
use graphprod::structure::{direct4_partition, is_relatively_complete, split_bipartite, PartKind};
use graphprod::{canonical, equal, Element, GpContext, Letter, VertexMonoid, Word};
use itertools::Itertools;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn setup(fixture: usize, seed: u64) -> (GpContext, ChaCha8Rng) {
    let all = fixtures::all();
    let ctx = all[fixture % all.len()].1.clone();
    (ctx, ChaCha8Rng::seed_from_u64(seed))
}

fn split(w: &Word, k: usize) -> (Word, Word) {
    (Word(w.0[..k].to_vec()), Word(w.0[k..].to_vec()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduction_is_idempotent_and_canonical(f in 0usize..12, seed: u64) {
        let (ctx, mut rng) = setup(f, seed);
        let w = common::random_word(&ctx, &mut rng, 8);
        let r = reduce(&ctx, &w);
        prop_assert!(is_reduced(&ctx, &r));
        prop_assert_eq!(reduce(&ctx, &r), r.clone());
        let cf = canonical(&ctx, &w);
        prop_assert!(check_canonical(&ctx, &cf));
        prop_assert_eq!(&cf, &canonical(&ctx, &r));
        prop_assert!(equal(&ctx, &foata_left(&ctx, &r).word(), &foata_right(&ctx, &r).word()));
        prop_assert_eq!(cf.len(), r.len());
    }

    #[test]
    fn multiplication_is_associative(f in 0usize..12, seed: u64) {
        let (ctx, mut rng) = setup(f, seed);
        let (x, y, z) = (
            common::random_word(&ctx, &mut rng, 4),
            common::random_word(&ctx, &mut rng, 4),
            common::random_word(&ctx, &mut rng, 4),
        );
        let left = multiply(&ctx, &multiply(&ctx, &x, &y).word(), &z);
        let right = multiply(&ctx, &x, &multiply(&ctx, &y, &z).word());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn shuffles_preserve_the_element(f in 0usize..12, seed: u64) {
        let (ctx, mut rng) = setup(f, seed);
        let x = common::random_reduced(&ctx, &mut rng, 8);
        let y = common::random_shuffle(&ctx, &x, &mut rng);
        prop_assert!(equal(&ctx, &x, &y));
        prop_assert_eq!(descent_key(&ctx, &x), descent_key(&ctx, &y));
        let sigma = occurrence_matching(x.letters(), y.letters()).expect("same letters");
        for (i, &j) in sigma.iter().enumerate() {
            prop_assert_eq!(&x.0[i], &y.0[j]);
        }
    }

    #[test]
    fn descent_key_agrees_with_canonical_form(f in 0usize..12, seed: u64) {
        let (ctx, mut rng) = setup(f, seed);
        let u = common::random_word(&ctx, &mut rng, 5);
        let v = common::random_word(&ctx, &mut rng, 5);
        prop_assert_eq!(
            descent_key(&ctx, &u) == descent_key(&ctx, &v),
            equal(&ctx, &u, &v)
        );
    }

    #[test]
    fn traced_reduction_is_enumerated(f in 0usize..12, seed: u64) {
        let (ctx, mut rng) = setup(f, seed);
        let s = common::random_reduced(&ctx, &mut rng, 4);
        let a = common::random_reduced(&ctx, &mut rng, 4);
        let t = reduce_product_traced(&ctx, &s, &a).unwrap();
        prop_assert!(is_reduced(&ctx, &t.result));
        prop_assert_eq!(&t.result, &reduce(&ctx, &s.concat(&a)));
        prop_assert!(t.function.is_valid_for(&ctx, &a));
        let all = enumerate_reduction_functions(&ctx, &a).unwrap();
        prop_assert!(all.iter().any(|g| g.key() == t.function.key()));
        prop_assert!(all.iter().all(|g| g.is_valid_for(&ctx, &a)));
    }

    #[test]
    fn common_multiples_factor_and_decompose(f in 0usize..12, seed: u64, k in 0usize..8, m in 0usize..8) {
        let (ctx, mut rng) = setup(f, seed);
        let x = common::random_reduced(&ctx, &mut rng, 7);
        let y = common::random_shuffle(&ctx, &x, &mut rng);
        let (u, a) = split(&x, k.min(x.len()));
        let (v, b) = split(&y, m.min(y.len()));
        let fac = factor_common_multiple(&ctx, &u, &a, &v, &b).unwrap();
        let ap = a.select(&fac.a_prime);
        let bp = b.select(&fac.b_prime);
        prop_assert!(equal(&ctx, &u, &fac.w.concat(&bp)));
        prop_assert!(equal(&ctx, &v, &fac.w.concat(&ap)));
        let ds = double_shuffle_decompose(&ctx, &a, &b, &fac.a_prime, &fac.b_prime).unwrap();
        prop_assert!(equal(&ctx, &ds.recombined(), &ap.concat(&b)));
        prop_assert_eq!(ds.i_a.len(), ds.i_b.len());
    }

    #[test]
    fn left_multiples_are_divisible(f in 0usize..12, seed: u64) {
        let (ctx, mut rng) = setup(f, seed);
        let c = common::random_word(&ctx, &mut rng, 4);
        let v = common::random_reduced(&ctx, &mut rng, 4);
        let u = reduce(&ctx, &c.concat(&v));
        let w = leq_principal(&ctx, &u, &v);
        prop_assert!(w.is_some());
        prop_assert!(equal(&ctx, &w.unwrap().concat(&v), &u));
        let sf = strip_left_invertible(&ctx, &u);
        prop_assert!(equal(&ctx, &sf.prefix.concat(&sf.standard), &u));
        prop_assert!(equal(&ctx, &sf.prefix_inverse(&ctx).concat(&u), &sf.standard));
    }

    #[test]
    fn block_inclusion_matches_divisibility(f in 0usize..12, seed: u64) {
        let (ctx, mut rng) = setup(f, seed);
        let block = |rng: &mut ChaCha8Rng| loop {
            let w = common::random_reduced(&ctx, rng, 3);
            if !w.is_empty()
                && is_complete_block(&ctx, w.letters())
                && w.iter().all(|l| !ctx.is_left_invertible(l))
            {
                return Some(w);
            }
            if w.iter().all(|l| ctx.is_left_invertible(l)) && ctx.monoids().iter().all(|m| m.is_group()) {
                return None;
            }
        };
        if let (Some(a), Some(b)) = (block(&mut rng), block(&mut rng)) {
            prop_assert_eq!(block_leq(&ctx, &a, &b), Some(leq_principal(&ctx, &a, &b).is_some()));
        }
    }

    #[test]
    fn intersections_do_not_depend_on_the_witness(f in 0usize..12, seed: u64) {
        let (ctx, mut rng) = setup(f, seed);
        let a = common::random_reduced(&ctx, &mut rng, 3);
        let b = common::random_reduced(&ctx, &mut rng, 3);
        let first = intersect_principal(&ctx, &a, &b).unwrap();
        for g in first.generators.iter().take(2) {
            let g = g.word();
            prop_assert!(leq_principal(&ctx, &g, &a).is_some());
            prop_assert!(leq_principal(&ctx, &g, &b).is_some());
            let other = intersect_from_witness(&ctx, &a, &b, &g).unwrap();
            for h in &other.generators {
                prop_assert!(first.generates(&ctx, &h.word()));
            }
            for h in &first.generators {
                prop_assert!(other.generates(&ctx, &h.word()));
            }
        }
    }

    #[test]
    fn annihilator_pairs_annihilate(f in 0usize..12, seed: u64) {
        let (ctx, mut rng) = setup(f, seed);
        let a = common::random_reduced(&ctx, &mut rng, 3);
        let k = annihilator_generators(&ctx, &a).unwrap();
        prop_assert!(k.verify(&ctx, &a));
        for (p, q) in &k.pairs {
            prop_assert!(p < q);
        }
    }
}

#[test]
fn left_inverses_are_unique_on_both_sides() {
    for (_, ctx) in fixtures::all() {
        for m in ctx.monoids() {
            let Some(elems) = m.elements() else { continue };
            for x in &elems {
                if let Some(y) = m.left_inverse_of(x) {
                    assert!(m.is_identity(&m.mul(&y, x)));
                    // finite monoids: a left inverse is a two-sided inverse
                    assert!(m.is_identity(&m.mul(x, &y)));
                    let all: Vec<_> = elems.iter().filter(|z| m.is_identity(&m.mul(z, x))).collect();
                    assert_eq!(all.len(), 1);
                }
            }
        }
    }
}

#[test]
fn splittings_are_inverted_by_psi_inverse() {
    for (_, ctx) in fixtures::all() {
        for v in 0..ctx.vertex_count() {
            let Ok(s) = split_bipartite(&ctx, &[v]) else { continue };
            for w in common::universe(&ctx, 3) {
                let (x, y) = s.psi(&w);
                assert!(equal(&ctx, &s.psi_inverse(&x.word(), &y.word()), &w));
            }
        }
    }
}

#[test]
fn decomposition_parts_cover_the_vertices() {
    for (name, ctx) in fixtures::all() {
        let rc = is_relatively_complete(&ctx);
        let Ok(d) = direct4_partition(&ctx) else {
            assert!(!rc.holds, "{name}");
            continue;
        };
        let mut all: Vec<usize> = d.parts.concat();
        all.sort_unstable();
        assert_eq!(all, (0..ctx.vertex_count()).collect::<Vec<_>>(), "{name}");
        for &v in d.part(PartKind::GroupProduct).unwrap() {
            assert!(ctx.monoid(v).is_group());
        }
        for &v in d.part(PartKind::RestrictedDirect).unwrap() {
            assert!(!ctx.monoid(v).is_group());
        }
        if let Some(pair) = d.part(PartKind::FreePair) {
            assert_eq!(pair.len(), 2);
            assert_eq!(rc.special_pair.map(|(x, y)| vec![x, y]).as_deref(), Some(pair));
        }
    }
}

/// Words reachable from `x` by swapping adjacent letters at adjacent vertices.
fn shuffle_class(ctx: &GpContext, x: &Word) -> HashSet<Word> {
    let mut seen = HashSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            if ctx.adjacent(w.0[i].vertex, w.0[i + 1].vertex) {
                let mut v = w.clone();
                v.0.swap(i, i + 1);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

fn vertex_subsequences(ctx: &GpContext, w: &Word) -> Vec<Vec<Letter>> {
    (0..ctx.vertex_count())
        .map(|v| w.iter().filter(|l| l.vertex == v).cloned().collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn shuffle_validity_matches_reachability(f in 0usize..12, seed: u64) {
        let (ctx, mut rng) = setup(f, seed);
        let x = common::random_reduced(&ctx, &mut rng, 6);
        let class = shuffle_class(&ctx, &x);
        for sigma in (0..x.len()).permutations(x.len()) {
            let y = apply_permutation(&x, &sigma);
            let valid = shuffle_valid(&ctx, &x, &sigma).unwrap();
            // permutations that only exchange equal letters reach the same word
            if !valid {
                continue;
            }
            prop_assert!(class.contains(&y));
        }
        for y in &class {
            prop_assert_eq!(y.len(), x.len());
            prop_assert_eq!(vertex_subsequences(&ctx, y), vertex_subsequences(&ctx, &x));
            let sigma = occurrence_matching(x.letters(), y.letters()).unwrap();
            prop_assert!(shuffle_valid(&ctx, &x, &sigma).unwrap());
            prop_assert_eq!(&apply_permutation(&x, &sigma), y);
        }
    }

    #[test]
    fn reduce_never_lengthens(f in 0usize..12, seed: u64) {
        let (ctx, mut rng) = setup(f, seed);
        let w = common::random_word(&ctx, &mut rng, 10);
        prop_assert!(reduce(&ctx, &w).len() <= w.len());
    }

    #[test]
    fn factorization_does_not_depend_on_the_witnesses(f in 0usize..12, seed: u64, k in 0usize..8, m in 0usize..8) {
        let (ctx, mut rng) = setup(f, seed);
        let x = common::random_reduced(&ctx, &mut rng, 6);
        let y = common::random_shuffle(&ctx, &x, &mut rng);
        let (u, a) = split(&x, k.min(x.len()));
        let (v, b) = split(&y, m.min(y.len()));
        let first = factor_common_multiple(&ctx, &u, &a, &v, &b).unwrap();
        let c = common::random_reduced(&ctx, &mut rng, 3);
        if is_reduced(&ctx, &c.concat(&x)) {
            let second = factor_common_multiple(&ctx, &c.concat(&u), &a, &c.concat(&v), &b).unwrap();
            prop_assert_eq!(&first.a_prime, &second.a_prime);
            prop_assert_eq!(&first.b_prime, &second.b_prime);
        }
    }

    #[test]
    fn factorization_survives_value_substitution(f in 0usize..12, seed: u64, k in 0usize..8, m in 0usize..8) {
        let (ctx, mut rng) = setup(f, seed);
        let x = common::random_reduced(&ctx, &mut rng, 6);
        let y = common::random_shuffle(&ctx, &x, &mut rng);
        let sigma = occurrence_matching(x.letters(), y.letters()).unwrap();
        // new values at the same vertices, carried along the shuffle
        let x2: Word = x
            .iter()
            .map(|l| loop {
                let r = common::random_letter(&ctx, &mut rng);
                if ctx.vertex_count() == 0 || r.vertex == l.vertex {
                    break r;
                }
            })
            .collect();
        let mut y2 = y.clone();
        for (i, &j) in sigma.iter().enumerate() {
            y2.0[j] = x2.0[i].clone();
        }
        prop_assert!(is_reduced(&ctx, &x2));
        prop_assert!(equal(&ctx, &x2, &y2));
        let (kk, mm) = (k.min(x.len()), m.min(y.len()));
        let before = {
            let ((u, a), (v, b)) = (split(&x, kk), split(&y, mm));
            factor_common_multiple(&ctx, &u, &a, &v, &b).unwrap()
        };
        let ((u, a), (v, b)) = (split(&x2, kk), split(&y2, mm));
        let after = factor_common_multiple(&ctx, &u, &a, &v, &b).unwrap();
        prop_assert_eq!(&before.a_prime, &after.a_prime);
        prop_assert_eq!(&before.b_prime, &after.b_prime);
        let (ap, bp) = (a.select(&after.a_prime), b.select(&after.b_prime));
        prop_assert!(equal(&ctx, &ap.concat(&b), &bp.concat(&a)));
    }
}

/// A letter value at the vertex of `x` whose product with `x` is not the identity.
fn glue_partner(m: &VertexMonoid, x: &Element) -> Option<Element> {
    match m {
        VertexMonoid::Free(_) => Some(Element::Free(vec![0])),
        VertexMonoid::Finite(_) => m
            .elements()
            .unwrap()
            .into_iter()
            .find(|y| !m.is_identity(y) && !m.is_identity(&m.mul(y, x))),
    }
}

#[test]
fn enumerated_reduction_functions_replay() {
    let (mut replayed, mut total) = (0, 0);
    for (name, ctx) in fixtures::all() {
        for a in common::universe(&ctx, 3) {
            for theta in enumerate_reduction_functions(&ctx, &a).unwrap() {
                total += 1;
                let letters: Option<Vec<Letter>> = theta
                    .moves()
                    .iter()
                    .map(|mv| {
                        let x = &a.0[mv.position];
                        let m = ctx.monoid(x.vertex);
                        let y = match mv.kind {
                            MoveKind::Delete => m.left_inverse_of(&x.element),
                            MoveKind::Glue => glue_partner(m, &x.element),
                        };
                        y.map(|y| Letter::new(x.vertex, y))
                    })
                    .collect();
                // the first move consumes the last letter of s
                let Some(mut letters) = letters else { continue };
                letters.reverse();
                let s = Word(letters);
                if !is_reduced(&ctx, &s) {
                    continue;
                }
                let t = reduce_product_traced(&ctx, &s, &a).unwrap();
                if t.function.key() == theta.key() {
                    replayed += 1;
                    continue;
                }
                // the trace takes the least available position first, so deletions may replay in another order
                let sorted = |mut v: Vec<usize>| {
                    v.sort_unstable();
                    v
                };
                assert_eq!(t.function.glue_positions(), theta.glue_positions(), "{name} {a:?}");
                assert_eq!(
                    sorted(t.function.deletion_sequence()),
                    sorted(theta.deletion_sequence()),
                    "{name} {a:?}"
                );
                assert!(t.function.is_valid_for(&ctx, &a), "{name} {a:?}");
                replayed += 1;
            }
        }
    }
    assert!(replayed > 0 && replayed <= total);
}

#[test]
fn direct_factors_reassemble() {
    for (name, ctx) in fixtures::all() {
        let Ok(d) = direct4_partition(&ctx) else { continue };
        let v1 = d.part(PartKind::FreePair).unwrap_or(&[]).to_vec();
        let v2 = d.part(PartKind::RestrictedDirect).unwrap().to_vec();
        let elements = common::universe(&ctx, 3);
        let mut images = HashSet::new();
        for w in &elements {
            // peel V1, then V2 off the remainder
            let (x, rest, outer) = match split_bipartite(&ctx, &v1) {
                Ok(s) if !v1.is_empty() && v1.len() < ctx.vertex_count() => {
                    let (x, r) = s.psi(w);
                    (x.word(), r.word(), Some(s))
                }
                _ => (Word::empty(), w.clone(), None),
            };
            let inner_ctx = outer.as_ref().map_or(&ctx, |s| &s.right);
            let inner_v2: Vec<usize> = match &outer {
                Some(s) => v2.iter().map(|v| s.v2.iter().position(|u| u == v).unwrap()).collect(),
                None => v2.clone(),
            };
            let inner = split_bipartite(inner_ctx, &inner_v2)
                .ok()
                .filter(|_| !inner_v2.is_empty() && inner_v2.len() < inner_ctx.vertex_count());
            let (y, z) = match &inner {
                Some(s) => {
                    let (y, z) = s.psi(&rest);
                    (y.word(), z.word())
                }
                None => (rest.clone(), Word::empty()),
            };
            let rest2 = inner.as_ref().map_or(y.clone(), |s| s.psi_inverse(&y, &z));
            let back = outer.as_ref().map_or(rest2.clone(), |s| s.psi_inverse(&x, &rest2));
            assert!(equal(&ctx, &back, w), "{name}");
            images.insert((x, y, z));
        }
        assert_eq!(images.len(), elements.len(), "{name}");
    }
}

#[test]
fn canonical_rendering_is_injective() {
    for (name, ctx) in fixtures::all() {
        let rendered: HashSet<String> = common::universe(&ctx, 4)
            .iter()
            .map(|w| canonical(&ctx, w).render(&ctx))
            .collect();
        assert_eq!(rendered.len(), common::universe(&ctx, 4).len(), "{name}");
    }
}
