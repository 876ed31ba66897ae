use proptest::prelude::*;
use rand::Rng;

use subword_complex::coxeter::CoxeterSystem;
use subword_complex::sampling::{random_instance, rng};
use subword_complex::simplicial::{LabeledComplex, VertexLabel};
use subword_complex::subword::SubwordDescriptor;

fn random_flag_complex(seed: u64, group: &str) -> Option<(LabeledComplex, bool)> {
    let sys = CoxeterSystem::named(group).unwrap();
    let mut r = rng(seed);
    let (q, pi) = random_instance(&mut r, &sys, 9).unwrap();
    let d = SubwordDescriptor::new(&sys, &q, pi).unwrap();
    let x = d.build().unwrap();
    (x.is_flag() && !x.edges().is_empty()).then(|| (x, d.is_spherical().unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_subdivision_h_identity_and_flagness(seed in any::<u64>(), group in prop::sample::select(vec!["A3", "B3", "H3"])) {
        let found = random_flag_complex(seed, group);
        prop_assume!(found.is_some());
        let (x, spherical) = found.unwrap();
        let edges = x.edges();
        let (s, t) = edges[rng(seed ^ 0x5eed).gen_range(0..edges.len())].clone();
        let sub = x.edge_subdivide(&s, &t, VertexLabel::fresh("r")).unwrap();
        let link = x.link(&[s.clone(), t.clone()]).unwrap();

        prop_assert_eq!(sub.h_poly(), &x.h_poly() + &link.h_poly().times_alpha_t());
        prop_assert!(sub.is_flag());
        prop_assert_eq!(sub.f_vector()[0], x.f_vector()[0] + 1);
        prop_assert!(!sub.contains_face(&[s.clone(), t.clone()]));
        if spherical {
            let expected = &x.gamma().unwrap() - &link.gamma().unwrap().times_tau().scale(-1);
            prop_assert_eq!(sub.gamma().unwrap(), expected);
        }
    }
}

#[test]
fn k_subdivision_is_repeated_edge_subdivision() {
    let sys = CoxeterSystem::named("A2").unwrap();
    let q = subword_complex::coxeter::Word::parse("11221").unwrap();
    let x = SubwordDescriptor::new(&sys, &q, sys.longest_element()).unwrap().build().unwrap();
    let (s, t) = (VertexLabel::QPos(1), VertexLabel::QPos(3));
    let fresh = [VertexLabel::fresh("a"), VertexLabel::fresh("b")];
    let twice = x.k_subdivide(&s, &t, &fresh).unwrap();
    assert_eq!(twice.f_vector(), vec![6, 6]);
    let by_hand = x
        .edge_subdivide(&s, &t, fresh[0].clone())
        .unwrap()
        .edge_subdivide(&fresh[0], &t, fresh[1].clone())
        .unwrap();
    assert_eq!(twice, by_hand);
    assert!(twice.is_flag());
}
