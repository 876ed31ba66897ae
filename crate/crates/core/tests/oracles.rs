mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::Rng;

use common::{oracle_demazure, oracle_facets, LengthTable};
use subword_complex::coxeter::{CoxeterSystem, Word};
use subword_complex::sampling::{random_instance, rng};
use subword_complex::simplicial::VertexLabel;
use subword_complex::subword::SubwordDescriptor;

fn positions(face: &[VertexLabel]) -> Vec<usize> {
    face.iter()
        .map(|v| match v {
            VertexLabel::QPos(p) => *p,
            other => panic!("unexpected label {other}"),
        })
        .collect()
}

#[test]
fn bfs_lengths_match_group_orders() {
    for (name, order, longest) in [("A3", 24, 6), ("B3", 48, 9), ("H3", 120, 15), ("I2:7", 14, 7)] {
        let sys = CoxeterSystem::named(name).unwrap();
        let table = LengthTable::new(&sys);
        assert_eq!(table.order(), order, "{name}");
        assert_eq!(table.length(&sys.longest_element()), longest, "{name}");
        assert_eq!(sys.length(&sys.longest_element()), longest, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn word_text_and_json_round_trip(letters in prop::collection::vec(0usize..8, 0..12)) {
        let w = Word::new(letters);
        prop_assert_eq!(Word::parse(&w.to_string()).unwrap(), w.clone());
        let json = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<Word>(&json).unwrap(), w.clone());
        prop_assert_eq!(w.reversed().reversed(), w.clone());
        prop_assert_eq!(w.one_based().iter().map(|x| x - 1).collect::<Vec<_>>(), w.letters().to_vec());
    }

    #[test]
    fn facets_match_exhaustive_subwords(seed in any::<u64>(), group in prop::sample::select(vec!["A3", "B3", "H3", "I2:5"])) {
        let sys = CoxeterSystem::named(group).unwrap();
        let table = LengthTable::new(&sys);
        let mut r = rng(seed);
        let (q, pi) = random_instance(&mut r, &sys, 10).unwrap();
        let expected = oracle_facets(&sys, &table, q.letters(), &pi);
        prop_assert_eq!(sys.contains_reduced(&q, &pi).unwrap(), !expected.is_empty());
        let x = SubwordDescriptor::new(&sys, &q, pi.clone()).unwrap().build().unwrap();
        let got: BTreeSet<Vec<usize>> = x.facets().iter().map(|f| positions(f)).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn demazure_product_matches_length_fold(seed in any::<u64>()) {
        let sys = CoxeterSystem::named("B3").unwrap();
        let table = LengthTable::new(&sys);
        let mut r = rng(seed);
        let len = r.gen_range(0..12);
        let q = subword_complex::sampling::random_word(&mut r, 3, len);
        prop_assert_eq!(sys.demazure_product(&q).unwrap(), oracle_demazure(&sys, &table, q.letters()));
    }

    #[test]
    fn link_of_a_face_is_the_shortened_complex(seed in any::<u64>(), group in prop::sample::select(vec!["A3", "B3", "H3"])) {
        let sys = CoxeterSystem::named(group).unwrap();
        let mut r = rng(seed);
        let (q, pi) = random_instance(&mut r, &sys, 9).unwrap();
        let d = SubwordDescriptor::new(&sys, &q, pi).unwrap();
        let x = d.build().unwrap();
        prop_assume!(!x.is_void());
        let facets = x.facets();
        let facet = positions(&facets[r.gen_range(0..facets.len())]);
        let face: Vec<usize> = facet.iter().filter(|_| r.gen_bool(0.5)).map(|p| p - 1).collect();
        prop_assert!(d.link_oracle_check(&face).unwrap());
    }

    #[test]
    fn spherical_complexes_satisfy_dehn_sommerville(seed in any::<u64>(), group in prop::sample::select(vec!["A3", "B3", "H3", "A4"])) {
        let sys = CoxeterSystem::named(group).unwrap();
        let mut r = rng(seed);
        let (q, pi) = random_instance(&mut r, &sys, 10).unwrap();
        let d = SubwordDescriptor::new(&sys, &q, pi).unwrap();
        let spherical = d.is_spherical().unwrap();
        let summary = d.build().unwrap().summary(spherical);
        if spherical {
            let h = summary.h.clone().unwrap();
            prop_assert!(h.iter().eq(h.iter().rev()), "h = {:?}", h);
            prop_assert!(summary.gamma.is_some());
        } else {
            prop_assert!(summary.gamma.is_none());
        }
    }
}
