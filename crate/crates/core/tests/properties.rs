use flatrank::field::FieldDescriptor;
use flatrank::formats::{
    parse_badbox, parse_configuration, parse_hypergraph, parse_set_family, parse_tensor, parse_tensor_document,
    parse_tuple_family, to_json, BadboxDocument, ConfigurationDocument, HypergraphDocument, SetFamilyDocument,
    TensorDocument, TupleFamilyDocument,
};
use flatrank::fw::{sample_badbox_family, Configuration};
use flatrank::rng::Rng;
use flatrank::search::{
    exhaustive_min_mfrank, random_configuration, random_cross_oddtown_search, random_hypergraph,
    random_satisfying_family, random_semidiagonal, random_semidiagonal_sweep,
};
use flatrank::setfam::TupleFamily;
use flatrank::tensor::Tensor;
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = FieldDescriptor> {
    prop_oneof![
        Just(FieldDescriptor::gf2()),
        Just(FieldDescriptor::prime(3).unwrap()),
        Just(FieldDescriptor::prime(7).unwrap()),
        Just(FieldDescriptor::binary(4).unwrap()),
    ]
}

fn tensor_strategy() -> impl Strategy<Value = Tensor> {
    (field_strategy(), prop::collection::vec(1usize..4, 2..5), any::<u64>()).prop_map(|(field, dims, seed)| {
        let mut rng = Rng::new(seed);
        Tensor::from_fn(dims, field, |_| if rng.coin() { 0 } else { rng.below(field.order()) }).unwrap()
    })
}

proptest! {
    #[test]
    fn tensor_documents_round_trip(t in tensor_strategy()) {
        for doc in [TensorDocument::dense(&t, None), TensorDocument::sparse(&t, None)] {
            let text = to_json(&doc);
            let parsed = parse_tensor_document(&text).unwrap();
            prop_assert_eq!(&to_json(&parsed), &text);
            prop_assert_eq!(&parse_tensor(&text).unwrap(), &t);
        }
    }

    #[test]
    fn flattening_ranks_fit_their_matrices(t in tensor_strategy()) {
        let volume: usize = t.dims().iter().product();
        for (axis, &r) in t.flattening_ranks().iter().enumerate() {
            prop_assert!(r <= t.dims()[axis].min(volume / t.dims()[axis]));
            prop_assert_eq!(t.flatten(axis).unwrap().fold(), t.clone());
        }
        prop_assert_eq!(t.is_zero(), t.max_flattening_rank() == 0);
    }

    #[test]
    fn random_semidiagonal_meets_the_lower_bound(a in 1usize..5, d in 2usize..4, seed in any::<u64>()) {
        let t = random_semidiagonal(a, d, FieldDescriptor::prime(3).unwrap(), &mut Rng::new(seed)).unwrap();
        prop_assert!(t.is_semi_diagonal().unwrap());
        prop_assert!(t.max_flattening_rank() >= a.div_ceil(d - 1));
    }
}

#[test]
fn witnesses_reproduce_their_ranks() {
    let reports = [
        exhaustive_min_mfrank(3, 3).unwrap(),
        random_semidiagonal_sweep(4, 3, FieldDescriptor::gf2(), 500, 11).unwrap(),
        random_semidiagonal_sweep(3, 4, FieldDescriptor::prime(3).unwrap(), 200, 12).unwrap(),
    ];
    for report in reports {
        assert!(!report.witnesses.is_empty());
        let reloaded: flatrank::search::SearchReport = serde_json::from_str(&to_json(&report)).unwrap();
        assert_eq!(reloaded, report);
        for w in &report.witnesses {
            let t = w.tensor.to_tensor().unwrap();
            assert_eq!(t.flattening_ranks(), w.flattening_ranks);
        }
    }
}

#[test]
fn sweeps_are_byte_identical_under_a_seed() {
    let first = to_json(&random_semidiagonal_sweep(4, 3, FieldDescriptor::gf2(), 2000, 99).unwrap());
    let second = to_json(&random_semidiagonal_sweep(4, 3, FieldDescriptor::gf2(), 2000, 99).unwrap());
    assert_eq!(first, second);
    let other = to_json(&random_semidiagonal_sweep(4, 3, FieldDescriptor::gf2(), 2000, 100).unwrap());
    assert_ne!(first, other);
}

#[test]
fn oddtown_search_examples() {
    let report = random_cross_oddtown_search(3, 2, 50, &mut Rng::new(1)).unwrap();
    assert!(report.largest <= 3 && !report.exceeded);
    let report = random_cross_oddtown_search(3, 3, 50, &mut Rng::new(2)).unwrap();
    assert!(report.largest <= 6 && !report.exceeded);
    let singletons = TupleFamily::repeated_singletons(3, 3, 2).unwrap();
    assert_eq!(singletons.len(), 6);
    assert!(singletons.is_cross_oddtown());
    let empty = random_cross_oddtown_search(3, 3, 0, &mut Rng::new(3)).unwrap();
    assert_eq!(empty.largest, 0);
    assert!(empty.witness.members.is_empty());
}

#[test]
fn documents_round_trip_through_their_parsers() {
    let mut rng = Rng::new(5);
    for _ in 0..50 {
        let h = random_hypergraph(9, 2, 3, 1 + rng.below_usize(6), &mut rng).unwrap();
        let text = to_json(&HypergraphDocument::from_hypergraph(&h));
        assert_eq!(parse_hypergraph(&text).unwrap(), h);

        let cfg = random_configuration(3, 3, 2, &mut rng).unwrap();
        let text = to_json(&ConfigurationDocument::from_configuration(&cfg));
        assert_eq!(parse_configuration(&text).unwrap(), cfg);

        let family = random_satisfying_family(4, &cfg, &mut rng).unwrap();
        let text = to_json(&SetFamilyDocument::from_family(&family));
        assert_eq!(parse_set_family(&text).unwrap(), family);

        let report = random_cross_oddtown_search(3, 2, 2, &mut rng).unwrap();
        let text = to_json(&report.witness);
        if !report.witness.members.is_empty() {
            let family = parse_tuple_family(&text).unwrap();
            assert_eq!(to_json(&TupleFamilyDocument::from_family(&family)), text);
        }
    }
    let sample = sample_badbox_family(3, 2, 7).unwrap();
    let text = to_json(&BadboxDocument::from_sample(&sample));
    let (family, k) = parse_badbox(&text).unwrap();
    assert_eq!(family, sample.family);
    assert_eq!(k, Some(sample.k));
    assert_eq!(Configuration::complete_graph(3, 2, vec![0]).unwrap().k(), 3);
}
