use std::collections::BTreeSet;
use std::sync::OnceLock;

use pentagon_core::*;
use proptest::prelude::*;
use proptest::sample::select;

/// Known solutions of several families, all on at most 16 points.
fn panel() -> &'static [SolutionTable] {
    static PANEL: OnceLock<Vec<SolutionTable>> = OnceLock::new();
    PANEL.get_or_init(|| {
        let mut out = Vec::new();
        for n in 1..=4 {
            out.push(SolutionTable::identity(n).unwrap());
        }
        for (x, a, g) in [(1, 1, 0), (1, 0, 1), (2, 1, 0), (1, 2, 0), (1, 1, 1), (1, 0, 2), (3, 1, 0), (2, 1, 1), (1, 2, 1)] {
            out.push(canonical_solution(x, a, g).unwrap());
        }
        for g in [GroupTable::cyclic(3).unwrap(), GroupTable::cyclic(4).unwrap(), GroupTable::symmetric(3).unwrap()] {
            out.push(group_solution(&g));
        }
        for n in 2..=4 {
            for sigma in sigma_search(n) {
                out.push(cycle_solution(&sigma, &GroupTable::trivial()).unwrap());
                out.push(cycle_solution(&sigma, &GroupTable::cyclic(2).unwrap()).unwrap());
            }
        }
        let c2 = MultTable::from_fn(2, |x, y| x ^ y).unwrap();
        out.push(endo_solution(&c2, &[0, 0]).unwrap());
        out.push(idempotent_pair_solution(3, &[0, 0, 2], &[0, 1, 0]).unwrap());
        out
    })
}

fn catalog(n: usize) -> Vec<SolutionTable> {
    enumerate_pruned(n, &EnumerationOptions::default()).unwrap().tables
}

fn random_table(max: usize) -> impl Strategy<Value = SolutionTable> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), n * n).prop_map(move |e| SolutionTable::new(n, e).unwrap())
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Bijection> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Bijection::new(v).unwrap())
}

/// A panel member with one cell possibly overwritten.
fn perturbed() -> impl Strategy<Value = SolutionTable> {
    select(panel().to_vec()).prop_flat_map(|s| {
        let n = s.size();
        (Just(s), 0..n * n, 0..n, 0..n, any::<bool>()).prop_map(move |(s, cell, k, l, keep)| {
            if keep {
                return s;
            }
            let mut e = s.entries().to_vec();
            e[cell] = (k, l);
            SolutionTable::new(n, e).unwrap()
        })
    })
}

fn candidates() -> impl Strategy<Value = SolutionTable> {
    prop_oneof![random_table(4), perturbed()]
}

fn involutive_solutions() -> Vec<SolutionTable> {
    let mut out: Vec<SolutionTable> = panel().iter().filter(|s| s.check_involutive() && s.check_pentagon()).cloned().collect();
    for n in 1..=4 {
        out.extend(catalog(n));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn direct_check_agrees_with_identities(s in candidates()) {
        prop_assert_eq!(s.check_pentagon(), s.satisfies_pentagon_identities());
        prop_assert_eq!(s.check_reversed_pentagon(), s.satisfies_reversed_pentagon_identities());
    }

    #[test]
    fn flip_conjugation_exchanges_equations(s in candidates()) {
        let t = s.flip_conjugate();
        prop_assert_eq!(s.check_pentagon(), t.check_reversed_pentagon());
        prop_assert_eq!(s.check_reversed_pentagon(), t.check_pentagon());
        prop_assert_eq!(t.flip_conjugate(), s);
    }

    #[test]
    fn involutive_implies_bijective(s in candidates()) {
        if s.check_involutive() {
            prop_assert!(s.check_bijective());
            prop_assert!(matches!(s.order_of(2), Some(1 | 2)));
        }
    }

    #[test]
    fn relabeling_preserves_axioms(s in select(panel().to_vec()), seed in any::<u64>()) {
        let n = s.size();
        let f = {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            Bijection::new(v).unwrap()
        };
        let t = s.relabel(&f).unwrap();
        prop_assert!(is_morphism(f.images(), &s, &t));
        prop_assert_eq!(s.check_pentagon(), t.check_pentagon());
        prop_assert_eq!(s.check_involutive(), t.check_involutive());
        prop_assert_eq!(s.order_of(64), t.order_of(64));
        prop_assert_eq!(t.relabel(&f.inverse()).unwrap(), s);
    }

    #[test]
    fn products_preserve_solutions(a in select(panel().to_vec()), b in select(panel().to_vec())) {
        prop_assume!(a.size() * b.size() <= 64);
        let p = product_solution(&a, &b);
        prop_assert_eq!(p.size(), a.size() * b.size());
        if a.check_pentagon() && b.check_pentagon() {
            prop_assert!(p.check_pentagon());
        }
        if a.check_involutive() && b.check_involutive() {
            prop_assert!(p.check_involutive());
        }
    }

    #[test]
    fn enumeration_is_closed_under_relabeling((n, f) in (2usize..=4).prop_flat_map(|n| (Just(n), permutation(n)))) {
        let tables = catalog(n);
        let set: BTreeSet<_> = tables.iter().cloned().collect();
        for s in &tables {
            prop_assert!(set.contains(&s.relabel(&f).unwrap()));
        }
    }

    #[test]
    fn no_nontrivial_relation_iff_words_unchanged(s in random_table(3)) {
        let n = s.size();
        let syntactic = (0..n).all(|x| (0..n).all(|y| s.theta(x, y) == x && s.mul(x, y) == y));
        let p = presentation_of(&s);
        prop_assert_eq!(p.nontrivial().count() == 0, syntactic);
        if syntactic {
            let g = growth_series(&s, 4).unwrap();
            prop_assert_eq!(g.counts, (0..=4u32).map(|l| (n as u64).pow(l)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn stratified_growth_matches_exhaustive(s in prop_oneof![random_table(3), select(panel().to_vec())]) {
        let p = presentation_of(&s);
        let len = match s.size() { 1..=2 => 10, 3 => 7, 4 => 6, 5..=6 => 5, 7..=8 => 4, _ => 3 };
        prop_assert_eq!(
            monoid::growth_series_of(&p, len, monoid::DEFAULT_MAX_WORDS).unwrap(),
            growth_series_exhaustive(&p, len, monoid::DEFAULT_MAX_WORDS).unwrap()
        );
    }

    #[test]
    fn dropping_relations_never_merges(s in random_table(3), mask in any::<u64>()) {
        let full = presentation_of(&s);
        let kept: Vec<_> = full.relations().iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, r)| *r).collect();
        let sub = MonoidPresentation::new(full.generators(), kept).unwrap();
        let a = monoid::growth_series_of(&full, 5, monoid::DEFAULT_MAX_WORDS).unwrap();
        let b = monoid::growth_series_of(&sub, 5, monoid::DEFAULT_MAX_WORDS).unwrap();
        for (x, y) in a.counts.iter().zip(&b.counts) {
            prop_assert!(y >= x);
        }
    }

    #[test]
    fn implied_relations_change_nothing(s in random_table(3), pick in any::<(usize, usize)>()) {
        // add a relation between two length-2 words already in the same class
        let full = presentation_of(&s);
        let n = full.generators();
        let closure = WordClosure::compute(&full, 2, 1 << 20).unwrap();
        let w = pick.0 % (n * n);
        let same: Vec<usize> = (0..n * n).filter(|&v| closure.class_of[v] == closure.class_of[w]).collect();
        let v = same[pick.1 % same.len()];
        let mut rels = full.relations().to_vec();
        rels.push(([w / n, w % n], [v / n, v % n]));
        let extended = MonoidPresentation::new(n, rels).unwrap();
        prop_assert_eq!(
            monoid::growth_series_of(&full, 5, 1 << 20).unwrap(),
            monoid::growth_series_of(&extended, 5, 1 << 20).unwrap()
        );
    }

    #[test]
    fn concatenation_respects_classes(s in random_table(3), len in 1usize..=5) {
        let p = presentation_of(&s);
        let n = p.generators();
        let short = WordClosure::compute(&p, len - 1, 1 << 20).unwrap();
        let long = WordClosure::compute(&p, len, 1 << 20).unwrap();
        let words = short.class_of.len();
        let mut first = vec![usize::MAX; short.count];
        for u in 0..words {
            let c = short.class_of[u] as usize;
            if first[c] == usize::MAX {
                first[c] = u;
                continue;
            }
            let v = first[c];
            for a in 0..n {
                // append and prepend a letter
                prop_assert_eq!(long.class_of[u * n + a], long.class_of[v * n + a]);
                prop_assert_eq!(long.class_of[a * words + u], long.class_of[a * words + v]);
            }
        }
    }
}

#[test]
fn involutive_solutions_have_the_expected_theta_structure() {
    for s in involutive_solutions() {
        let n = s.size();
        assert!(s.check_commutative() && s.check_cocommutative());
        let (m, theta) = s.derive_tables();
        for x in 0..n {
            let tx = Bijection::new(theta.map(x).to_vec()).expect("θ_x is a permutation");
            assert!(tx.pow(2).is_identity());
            for y in 0..n {
                assert_eq!(theta.map(m.get(x, y)), theta.map(x));
                let ty = Bijection::new(theta.map(y).to_vec()).unwrap();
                assert_eq!(theta.map(theta.get(x, y)), tx.compose(&ty).images());
                assert_eq!(tx.compose(&ty), ty.compose(&tx));
                // θ_x is a semigroup automorphism
                for z in 0..n {
                    assert_eq!(tx.apply(m.get(y, z)), m.get(tx.apply(y), tx.apply(z)));
                }
            }
        }
    }
}

#[test]
fn enumeration_does_not_depend_on_worker_count() {
    for n in [4, 5] {
        let runs: Vec<_> = [1, 2, 8]
            .into_iter()
            .map(|w| enumerate_pruned(n, &EnumerationOptions { workers: Some(w), budget: None }).unwrap())
            .collect();
        assert!(runs.iter().all(|r| r.complete && r.tables == runs[0].tables));
    }
}

#[test]
fn large_canonical_growth_matches_exhaustive() {
    let p = presentation_of(&canonical_solution(3, 1, 1).unwrap());
    assert_eq!(
        monoid::growth_series_of(&p, 6, monoid::DEFAULT_MAX_WORDS).unwrap(),
        growth_series_exhaustive(&p, 6, monoid::DEFAULT_MAX_WORDS).unwrap()
    );
}
