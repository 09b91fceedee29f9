use std::collections::BTreeMap;

use boolinv::cuntz::*;
use boolinv::lang::{words_up_to, DefiniteLang, Word};
use proptest::prelude::*;
use rand::Rng;

const DEPTH: usize = 6;

fn maps(count: usize) -> impl Strategy<Value = (usize, Vec<PermMap>)> {
    (2usize..=3, any::<u64>()).prop_map(move |(n, seed)| {
        let mut rng = seeded_rng(seed);
        (n, (0..count).map(|_| random_perm_map(&mut rng, n, 3)).collect())
    })
}

fn binary_maps(count: usize) -> impl Strategy<Value = Vec<PermMap>> {
    any::<u64>().prop_map(move |seed| random_perm_maps(seed, 2, 3, count))
}

fn words(n: usize) -> Vec<Word> {
    let depth = if n == 2 { DEPTH } else { 4 };
    words_up_to(n, depth)
}

fn graph(m: &PermMap) -> BTreeMap<Word, Word> {
    words(m.alphabet())
        .into_iter()
        .filter_map(|w| pm_apply(m, &w).map(|v| (w, v)))
        .collect()
}

/// A random definite sublanguage of the domain.
fn sublanguage(m: &PermMap, seed: u64) -> DefiniteLang {
    let mut rng = seeded_rng(seed);
    let n = m.alphabet();
    let xs: Vec<Word> = (0..3).map(|_| random_word(&mut rng, n, 3)).collect();
    let ys: Vec<Word> = (0..rng.gen_range(0..3)).map(|_| random_word(&mut rng, n, 3)).collect();
    DefiniteLang::normalize(n, &xs, &ys)
        .unwrap()
        .intersect(&m.domain())
        .unwrap()
}

type Pairs = Vec<(Word, Word)>;

fn raw(m: &PermMap) -> (Pairs, Pairs) {
    let pairs = |g: &BTreeMap<Word, Word>| g.iter().map(|(x, v)| (x.clone(), v.clone())).collect();
    (pairs(m.finite()), pairs(m.table()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_is_stable((n, ms) in maps(1), split in any::<u64>()) {
        let m = &ms[0];
        let (finite, table) = raw(m);
        prop_assert_eq!(&pm_canonicalize(n, &finite, &table).unwrap(), m);
        // refine one table entry into its children plus a finite point
        let mut rng = seeded_rng(split);
        if !table.is_empty() {
            let i = rng.gen_range(0..table.len());
            let (y, z) = table[i].clone();
            let mut t2 = table.clone();
            t2.remove(i);
            t2.extend((0..n as u32).map(|a| (y.child(a), z.child(a))));
            let mut f2 = finite.clone();
            f2.push((y, z));
            prop_assert_eq!(&pm_canonicalize(n, &f2, &t2).unwrap(), m);
        }
        prop_assert_eq!(pm_inverse(m), pm_canonicalize(n, &raw(&pm_inverse(m)).0, &raw(&pm_inverse(m)).1).unwrap());
        let json = serde_json::to_string(m).unwrap();
        prop_assert_eq!(&serde_json::from_str::<PermMap>(&json).unwrap(), m);
    }

    #[test]
    fn composition_matches_oracle((_, ms) in maps(3)) {
        let (a, b, c) = (&ms[0], &ms[1], &ms[2]);
        let ab = pm_compose(a, b).unwrap();
        for w in words(a.alphabet()) {
            let expected = pm_apply(b, &w).and_then(|v| pm_apply(a, &v));
            prop_assert_eq!(pm_apply(&ab, &w), expected, "{}", w);
        }
        prop_assert_eq!(
            pm_compose(&ab, c).unwrap(),
            pm_compose(a, &pm_compose(b, c).unwrap()).unwrap()
        );
    }

    #[test]
    fn inverse_semigroup_laws((_, ms) in maps(2)) {
        let (a, b) = (&ms[0], &ms[1]);
        let ai = pm_inverse(a);
        prop_assert_eq!(&pm_inverse(&ai), a);
        prop_assert_eq!(&pm_compose(&pm_compose(a, &ai).unwrap(), a).unwrap(), a);
        prop_assert_eq!(pm_compose(&pm_compose(&ai, a).unwrap(), &ai).unwrap(), ai.clone());
        let e = pm_compose(&ai, a).unwrap();
        let f = pm_compose(b, &pm_inverse(b)).unwrap();
        prop_assert!(e.is_idempotent() && f.is_idempotent());
        prop_assert_eq!(pm_compose(&e, &f).unwrap(), pm_compose(&f, &e).unwrap());
        prop_assert_eq!(e, PermMap::identity_on(&a.domain()));
        for (w, v) in graph(a) {
            prop_assert_eq!(pm_apply(&ai, &v), Some(w));
        }
    }

    #[test]
    fn order_is_graph_inclusion((_, ms) in maps(2), seed in any::<u64>()) {
        let (a, b) = (&ms[0], &ms[1]);
        let sub = restrict(a, &sublanguage(a, seed)).unwrap();
        for (x, y) in [(&sub, a), (a, b), (b, a), (a, &sub)] {
            let gx = graph(x);
            let gy = graph(y);
            let oracle = gx.iter().all(|(w, v)| gy.get(w) == Some(v));
            prop_assert_eq!(pm_leq(x, y), oracle);
            let dx = pm_compose(&pm_inverse(x), x).unwrap();
            prop_assert_eq!(pm_leq(x, y), &pm_compose(y, &dx).unwrap() == x);
        }
    }

    #[test]
    fn join_matches_oracle((_, ms) in maps(2), s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (&ms[0], &ms[1]);
        // restrictions of one map are always compatible
        let x = restrict(a, &sublanguage(a, s1)).unwrap();
        let y = restrict(a, &sublanguage(a, s2)).unwrap();
        for (p, q) in [(&x, &y), (a, b), (&x, b)] {
            let rel = pm_relate(p, q).unwrap();
            match pm_join(p, q) {
                Ok(j) => {
                    prop_assert!(rel.compatible);
                    for w in words(p.alphabet()) {
                        let expected = pm_apply(p, &w).or_else(|| pm_apply(q, &w));
                        prop_assert_eq!(pm_apply(&j, &w), expected);
                    }
                    prop_assert!(pm_leq(p, &j) && pm_leq(q, &j));
                }
                Err(e) => {
                    prop_assert_eq!(e, CuntzError::NotCompatible);
                    prop_assert!(!rel.compatible);
                }
            }
            let disjoint = |l: DefiniteLang, m: DefiniteLang| l.intersect(&m).unwrap().is_empty();
            prop_assert_eq!(
                rel.orthogonal,
                disjoint(p.domain(), q.domain()) && disjoint(p.codomain(), q.codomain())
            );
        }
    }

    #[test]
    fn meet_is_greatest_lower_bound((_, ms) in maps(2), s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (&ms[0], &ms[1]);
        // give the pair some overlap
        let c = pm_join(&restrict(a, &sublanguage(a, s1)).unwrap(), &restrict(b, &sublanguage(b, s2)).unwrap())
            .unwrap_or_else(|_| b.clone());
        for (p, q) in [(a, b), (a, &c), (&c, b)] {
            let m = pm_meet(p, q).unwrap();
            prop_assert_eq!(&m, &pm_meet(q, p).unwrap());
            for w in words(p.alphabet()) {
                let (u, v) = (pm_apply(p, &w), pm_apply(q, &w));
                let expected = if u == v { u } else { None };
                prop_assert_eq!(pm_apply(&m, &w), expected);
            }
            prop_assert!(pm_leq(&m, p) && pm_leq(&m, q));
            let lower = restrict(p, &sublanguage(p, s1 ^ s2)).unwrap();
            if pm_leq(&lower, q) {
                prop_assert!(pm_leq(&lower, &m));
            }
        }
    }

    #[test]
    fn subtraction_and_fix_match_oracle((_, ms) in maps(1), seed in any::<u64>()) {
        let a = &ms[0];
        let b = restrict(a, &sublanguage(a, seed)).unwrap();
        let d = pm_subtract(a, &b).unwrap();
        for w in words(a.alphabet()) {
            let expected = if pm_apply(&b, &w).is_some() { None } else { pm_apply(a, &w) };
            prop_assert_eq!(pm_apply(&d, &w), expected);
        }
        prop_assert!(pm_relate(&d, &b).unwrap().orthogonal);
        prop_assert_eq!(&pm_join(&d, &b).unwrap(), a);
        let fix = pm_fix(a);
        for w in words(a.alphabet()) {
            prop_assert_eq!(fix.member(&w), pm_apply(a, &w) == Some(w.clone()));
        }
    }

    #[test]
    fn finite_maps_form_an_additive_ideal((_, ms) in maps(3)) {
        let f = ms[0].finite_only();
        let (a, b) = (&ms[1], &ms[2]);
        prop_assert!(pm_compose(&f, a).unwrap().table().is_empty());
        prop_assert!(pm_compose(a, &f).unwrap().table().is_empty());
        let g = b.finite_only();
        if let Ok(j) = pm_join(&f, &g) {
            prop_assert!(j.table().is_empty());
        }
    }

    #[test]
    fn every_map_splits_into_finite_and_table_parts((_, ms) in maps(1)) {
        let m = &ms[0];
        let (f, t) = (m.finite_only(), m.table_only());
        prop_assert!(pm_relate(&f, &t).unwrap().orthogonal);
        prop_assert_eq!(&pm_join(&f, &t).unwrap(), m);
    }

    #[test]
    fn quotient_is_multiplicative_and_preserves_meets(ms in binary_maps(2)) {
        let (a, b) = (&ms[0], &ms[1]);
        let ab = pm_compose(a, b).unwrap();
        prop_assert_eq!(quotient_theta(&ab), cuntz_product(&quotient_theta(a), &quotient_theta(b)).unwrap());
        let m = pm_meet(a, b).unwrap();
        prop_assert_eq!(quotient_theta(&m), cuntz_meet(&quotient_theta(a), &quotient_theta(b)).unwrap());
        prop_assert_eq!(quotient_theta(&pm_inverse(a)), quotient_theta(a).inverse());
        prop_assert_eq!(quotient_theta(a).is_zero(), a.table().is_empty());
    }

    #[test]
    fn quotient_onto_reduced_tables(ms in binary_maps(1)) {
        let c = quotient_theta(&ms[0]);
        prop_assert_eq!(quotient_theta(&c.lift().unwrap()), c);
    }

    #[test]
    fn reduction_is_confluent(ms in binary_maps(1), seed in any::<u64>()) {
        let m = &ms[0];
        // explode every entry one level so there is something to collapse
        let mut exploded = BTreeMap::new();
        for (y, z) in m.table() {
            for a in 0..2u32 {
                for b in 0..2u32 {
                    exploded.insert(y.child(a).child(b), z.child(a).child(b));
                }
            }
        }
        let mut rng = seeded_rng(seed);
        let first = reduce_table_with(2, exploded.clone(), |_| 0);
        let random = reduce_table_with(2, exploded, |k| rng.gen_range(0..k));
        prop_assert_eq!(&first, &random);
        let theta = quotient_theta(m);
        prop_assert_eq!(&first, theta.table());
    }

    #[test]
    fn congruence_definitions_agree(ms in binary_maps(2), seed in any::<u64>()) {
        let (a, b) = (&ms[0], &ms[1]);
        // congruent companions: drop finitely many points, or add some
        let points: Vec<Word> = a.finite().keys().cloned().collect();
        let rest = a.domain().difference(&DefiniteLang::finite(2, &points).unwrap()).unwrap();
        let dropped = restrict(a, &rest).unwrap();
        let small = restrict(a, &sublanguage(a, seed)).unwrap();
        for (p, q) in [(a, b), (a, &dropped), (a, &small), (b, b)] {
            let by_theta = quotient_theta(p) == quotient_theta(q);
            prop_assert_eq!(congruent(p, q).unwrap(), by_theta);
        }
        prop_assert!(congruent(a, &dropped).unwrap());
    }
}

fn all_poly(n: usize, max_len: usize) -> Vec<PolyElement> {
    let ws = words_up_to(n, max_len);
    let mut out = vec![PolyElement::Zero];
    for y in &ws {
        for x in &ws {
            out.push(PolyElement::pair(y.clone(), x.clone()));
        }
    }
    out
}

#[test]
fn polycyclic_monoid_is_ramified() {
    let elems = all_poly(2, 2);
    for r in elems.iter().filter(|r| !r.is_zero()) {
        let above: Vec<&PolyElement> = elems.iter().filter(|p| poly_leq(r, p)).collect();
        for p in &above {
            for q in &above {
                assert!(poly_leq(p, q) || poly_leq(q, p), "{r} below {p} and {q}");
            }
        }
    }
}

#[test]
fn embedding_is_a_homomorphism_preserving_relations() {
    let elems = all_poly(2, 2);
    for p in &elems {
        let ep = embed_poly(2, p).unwrap();
        assert_eq!(pm_inverse(&ep), embed_poly(2, &p.inverse()).unwrap());
        for q in &elems {
            let eq = embed_poly(2, q).unwrap();
            assert_eq!(pm_compose(&ep, &eq).unwrap(), embed_poly(2, &poly_product(p, q)).unwrap());
            assert_eq!(pm_relate(&ep, &eq).unwrap(), poly_relate(p, q));
            assert_eq!(pm_meet(&ep, &eq).unwrap(), embed_poly(2, &poly_meet(p, q)).unwrap());
        }
    }
}

#[test]
fn compatible_ideals_have_orthogonal_generators() {
    let elems = all_poly(2, 2);
    let mut checked = 0;
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate().skip(i) {
            for c in elems.iter().skip(j) {
                let gens = [a.clone(), b.clone(), c.clone()];
                let Ok(orth) = orthogonal_generators(&gens) else {
                    continue;
                };
                checked += 1;
                for (k, x) in orth.iter().enumerate() {
                    assert!(gens.contains(x));
                    for y in &orth[k + 1..] {
                        assert!(poly_relate(x, y).orthogonal);
                    }
                }
                for g in &gens {
                    assert!(g.is_zero() || orth.iter().any(|x| poly_leq(g, x)));
                }
                let join = |set: &[PolyElement]| {
                    set.iter().fold(PermMap::zero(2), |acc, p| {
                        pm_join(&acc, &embed_poly(2, p).unwrap()).unwrap()
                    })
                };
                assert_eq!(join(&orth), join(&gens));
            }
        }
    }
    assert!(checked > 1000, "{checked}");
}

#[test]
fn singleton_is_a_relative_complement() {
    let mut rng = seeded_rng(11);
    for _ in 0..50 {
        let u = random_word(&mut rng, 2, 4);
        let v = random_word(&mut rng, 2, 4);
        let f = embed_poly(2, &PolyElement::pair(v.clone(), u.clone())).unwrap();
        let g_pairs: Vec<(Word, Word)> = (0..2u32).map(|a| (u.child(a), v.child(a))).collect();
        let g = pm_canonicalize(2, &[], &g_pairs).unwrap();
        assert!(pm_leq(&g, &f));
        let d = pm_subtract(&f, &g).unwrap();
        assert!(d.table().is_empty());
        assert_eq!(d.finite().iter().collect::<Vec<_>>(), vec![(&u, &v)]);
    }
}
