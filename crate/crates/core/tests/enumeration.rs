mod common;

use std::sync::Arc;

use proptest::prelude::*;

use pqclass::enumerate::{
    all_spherical_systems, check_sings, hurwitz_move, inverse_hurwitz_move, list_of_types, max_part, node_target,
    SphericalSystem,
};
use pqclass::geometry::alpha;
use pqclass::perm::automorphisms;
use pqclass::{PermGroup, Permutation, Rational};

fn group(degree: usize, gens: &[&str]) -> Arc<PermGroup> {
    let gens = gens.iter().map(|c| Permutation::parse_cycles(c, degree).unwrap()).collect();
    Arc::new(PermGroup::from_generators(degree, gens).unwrap())
}

fn psl27() -> Arc<PermGroup> {
    group(7, &["(3,4)(5,6)", "(1,2,3)(4,5,7)"])
}

fn sorted_orders(s: &SphericalSystem) -> Vec<u32> {
    let mut o = s.orders();
    o.sort();
    o
}

#[test]
fn admissible_signatures_have_at_most_five_parts() {
    for k2 in [2, 4, 6] {
        for sig in list_of_types(k2) {
            let parts = sig.parts();
            assert!(parts.len() <= 5, "{sig}");
            let a: Rational = alpha::<i64>(&sig, k2).unwrap();
            assert!(a.is_integer() && *a.numer() >= 1);
            let a = *a.numer() as u32;
            assert!(parts.iter().all(|&m| (2 * a) % m == 0 && m <= max_part(k2)));
            let odd = parts.iter().filter(|&&m| a % m != 0).count();
            assert!(odd as u32 <= node_target(k2) / 2, "{sig}");
        }
    }
}

#[test]
fn library_systems_match_brute_force() {
    let d4 = group(4, &["(1,2,3,4)", "(1,3)"]);
    for sig in ["2,2,2,2", "2,2,4,4", "2,4,4"] {
        let sig = sig.parse().unwrap();
        let mut ours: Vec<Vec<usize>> = all_spherical_systems(&d4, &sig).iter().map(|s| s.elements().to_vec()).collect();
        ours.sort();
        assert_eq!(ours, common::spherical_tuples(&d4, sig.parts()));
    }
}

#[test]
fn node_counts_match_fixed_points_on_z4_squared() {
    let g = group(8, &["(1,2,3,4)", "(5,6,7,8)"]);
    let systems = all_spherical_systems(&g, &"4,4,4".parse().unwrap());
    for s1 in systems.iter().step_by(7) {
        for s2 in systems.iter().step_by(5) {
            let r = check_sings(&g, s1.elements(), s2.elements(), 2);
            let (worse, nodes) = common::fixed_point_nodes(&g, s1.elements(), s2.elements());
            if worse {
                assert!(!r.accepted);
            } else if nodes <= 6 {
                assert_eq!(r.node_count, Rational::from_integer(nodes as i64));
            }
        }
    }
}

#[test]
fn brute_force_automorphism_counts() {
    assert_eq!(common::automorphisms(&group(4, &["(1,2,3,4)", "(1,3)"])).len(), 8);
    assert_eq!(common::automorphisms(&group(3, &["(1,2,3)", "(1,2)"])).len(), 6);
    assert_eq!(automorphisms(&psl27()).unwrap().len(), 336);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn moves_preserve_systems(pick in 0usize..10_000, moves in proptest::collection::vec((any::<bool>(), 0usize..2), 1..12)) {
        let g = psl27();
        let systems = all_spherical_systems(&g, &"4,4,4".parse().unwrap());
        let start = &systems[pick % systems.len()];
        let mut s = start.clone();
        for &(forward, idx) in &moves {
            let t = if forward { hurwitz_move(&s, idx) } else { inverse_hurwitz_move(&s, idx) };
            let back = if forward { inverse_hurwitz_move(&t, idx) } else { hurwitz_move(&t, idx) };
            prop_assert_eq!(back.elements(), s.elements());
            s = t;
        }
        prop_assert_eq!(g.product(s.elements().iter().copied()), PermGroup::IDENTITY);
        prop_assert_eq!(sorted_orders(&s), sorted_orders(start));
        prop_assert!(g.generates(s.elements()));
    }

    #[test]
    fn nodes_invariant_under_conjugation(a in 0usize..10_000, b in 0usize..10_000, c in 0usize..168) {
        let g = psl27();
        let first = all_spherical_systems(&g, &"2,3,7".parse().unwrap());
        let second = all_spherical_systems(&g, &"4,4,4".parse().unwrap());
        let (s1, s2) = (&first[a % first.len()], &second[b % second.len()]);
        let r = check_sings(&g, s1.elements(), s2.elements(), 2);
        let conj = check_sings(&g, s1.conjugate_by(c).elements(), s2.elements(), 2);
        prop_assert_eq!(r.accepted, conj.accepted);
        if r.accepted {
            prop_assert_eq!(r.node_count, conj.node_count);
        }
    }
}
