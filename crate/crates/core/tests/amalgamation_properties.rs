use std::collections::{BTreeMap, BTreeSet};

use listsym::amalgamation::{
    amal, decompose_pi, delta_step, extrapolate_fe, extrapolate_fe_traced,
    extrapolate_nfe_from_doubleton, pi_over, square_multiplicity, Collection, CollectionKey,
    Method, SublistTable,
};
use listsym::equivariance::check_filter_equivariant;
use listsym::function::foldr_fe;
use listsym::nfe::terms_up_to_weight;
use listsym::{list, AlphaStep, Builtin, Elem, ListFunction, Scope};
use proptest::prelude::*;

fn distinct(xs: &[u32]) -> usize {
    xs.iter().collect::<BTreeSet<_>>().len()
}

fn lists_over(alphabet: u32, max_len: usize) -> Vec<Vec<u32>> {
    Scope::new(alphabet as usize, max_len)
        .unwrap()
        .lists()
        .into_iter()
        .map(|xs| xs.into_iter().map(|e| e.0).collect())
        .collect()
}

fn fe_corpus() -> Vec<ListFunction> {
    let mut corpus: Vec<ListFunction> = terms_up_to_weight(2)
        .into_iter()
        .map(ListFunction::Nfe)
        .collect();
    corpus.push(ListFunction::sort());
    corpus.push(ListFunction::builtin(Builtin::UniqueValues));
    corpus.push(ListFunction::builtin(Builtin::SquareMultiplicity));
    corpus.push(ListFunction::filter([Elem(0), Elem(2)]));
    corpus.push(foldr_fe(AlphaStep::Insert));
    corpus
}

#[test]
fn interchange_of_tail_and_delta() {
    for xs in lists_over(4, 6).iter().filter(|xs| distinct(xs) >= 3) {
        let universe: BTreeSet<u32> = xs.iter().copied().collect();
        let stepped = delta_step(&decompose_pi(xs), &xs[0]);
        assert_eq!(pi_over(&universe, &xs[1..]).unwrap(), stepped, "{xs:?}");
    }
}

#[test]
fn filtered_outputs_assemble_to_the_output() {
    let scope = Scope::new(4, 5).unwrap();
    for f in fe_corpus() {
        assert!(check_filter_equivariant(&f, Scope::new(3, 4).unwrap())
            .unwrap()
            .passed());
        for xs in scope.lists() {
            let universe: BTreeSet<Elem> = xs.iter().copied().collect();
            if universe.len() < 3 {
                continue;
            }
            let out = f.apply(&xs).unwrap();
            let pieces: BTreeMap<Elem, Vec<Elem>> = universe
                .iter()
                .map(|x| {
                    (
                        *x,
                        f.apply(
                            &ListFunction::filter(universe.iter().copied().filter(|y| y != x))
                                .apply(&xs)
                                .unwrap(),
                        )
                        .unwrap(),
                    )
                })
                .collect();
            let chi = Collection::single(universe, pieces).unwrap();
            assert_eq!(amal(&chi).unwrap(), out, "{f} on {xs:?}");
        }
    }
}

#[test]
fn winning_head_is_a_strict_majority() {
    let scope = Scope::new(5, 6).unwrap();
    for f in fe_corpus() {
        for xs in scope.lists() {
            if xs.iter().collect::<BTreeSet<_>>().len() < 4 {
                continue;
            }
            let table = SublistTable::try_from_fn(&xs, |ys| f.apply(ys)).unwrap();
            let trace = extrapolate_fe_traced(&table, &xs).unwrap();
            assert_eq!(trace.method, Method::OneShot);
            for round in &trace.rounds {
                let score = |x: &Elem| {
                    round
                        .scores
                        .iter()
                        .find(|(y, _)| y == x)
                        .map_or(0, |(_, s)| *s)
                };
                let won = score(&round.winner);
                assert!(won >= round.winner_lists, "{f} on {xs:?}: {round:?}");
                assert!(
                    round
                        .scores
                        .iter()
                        .all(|(x, s)| *x == round.winner || *s < won),
                    "{f} on {xs:?}: {round:?}"
                );
            }
        }
    }
}

#[test]
fn three_values_use_the_nested_path() {
    let xs = list(&[2, 0, 1, 0]);
    let table = SublistTable::from_fn(&xs, |ys| ys.iter().rev().copied().collect());
    let trace = extrapolate_fe_traced(&table, &xs).unwrap();
    assert_eq!(trace.method, Method::Nested);
    assert_eq!(trace.output, list(&[0, 1, 0, 2]));
}

#[test]
fn missing_pairs_are_not_read_as_empty() {
    let xs = list(&[0, 1, 2, 3]);
    let full = SublistTable::from_fn(&xs, |ys| ys.to_vec());
    let mut partial = SublistTable::new();
    for ((a, b), out) in full.iter().skip(1) {
        partial.insert(*a, *b, out.clone()).unwrap();
    }
    assert!(matches!(
        extrapolate_fe(&partial, &xs),
        Err(listsym::Error::MissingSublist(_))
    ));
}

#[test]
fn square_multiplicity_is_identity_on_repetition_free_lists() {
    for xs in lists_over(4, 4) {
        if distinct(&xs) == xs.len() {
            assert_eq!(square_multiplicity(&xs), xs);
        }
    }
}

#[test]
fn doubleton_extrapolation_cannot_recover_square_multiplicity() {
    let example_in = list(&[1, 2]);
    let example_out = square_multiplicity(&example_in);
    assert_eq!(example_out, example_in);
    let xs = list(&[4, 7, 4, 7, 8]);
    let guess = extrapolate_nfe_from_doubleton(&example_in, &example_out, &xs).unwrap();
    assert_eq!(guess, xs);
    assert_ne!(guess, square_multiplicity(&xs));
}

#[test]
fn pair_collections_reject_foreign_values() {
    let universe: BTreeSet<u32> = [0, 1, 2].into();
    let lists: BTreeMap<(u32, u32), Vec<u32>> =
        [((0, 1), vec![0, 2]), ((0, 2), vec![]), ((1, 2), vec![])].into();
    assert!(Collection::pairs(universe, lists).is_err());
    assert_eq!(CollectionKey::pair(3, 1), CollectionKey::Pair(1, 3));
}

proptest! {
    #[test]
    fn amal_inverts_decompose(xs in prop::collection::vec(0u32..6, 0..12)) {
        prop_assume!(distinct(&xs) >= 3);
        prop_assert_eq!(amal(&decompose_pi(&xs)).unwrap(), xs);
    }

    #[test]
    fn reverse_is_recovered_from_pairs(xs in prop::collection::vec(0u32..8, 0..12)) {
        prop_assume!(distinct(&xs) >= 3);
        let table = SublistTable::from_fn(&xs, |ys| ys.iter().rev().copied().collect());
        let want: Vec<u32> = xs.iter().rev().copied().collect();
        prop_assert_eq!(extrapolate_fe(&table, &xs).unwrap(), want);
    }

    #[test]
    fn sublist_table_json_round_trips(xs in prop::collection::vec(0u32..5, 0..9)) {
        let xs: Vec<Elem> = xs.into_iter().map(Elem).collect();
        let table = SublistTable::from_fn(&xs, |ys| ys.to_vec());
        let json = serde_json::to_string(&table).unwrap();
        let back: SublistTable<Elem> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, table);
    }
}
