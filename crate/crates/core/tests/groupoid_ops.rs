//! Groupoid layer: axiom validation, Haar invariance, derived groupoids,
//! stabilizers, freeness, transitivity, and the multiplication map.

use std::collections::{BTreeMap, BTreeSet};

use gcorr_core::action::constant_map;
use gcorr_core::fixtures;
use gcorr_core::groupoid::{
    pair_id, relation_groupoid, restrict, transformation_groupoid, validate_groupoid,
    validate_haar, GroupoidError, HaarSystem,
};
use gcorr_core::measure::MeasureFamily;
use gcorr_core::rat::{rat_int, rat_one, rat_zero};
use gcorr_core::{Action, FiniteGroupoid, Side};

fn rebuild_with_inv(
    g: &FiniteGroupoid,
    tweak: impl Fn(&str) -> String,
) -> FiniteGroupoid {
    let inv = g
        .arrows()
        .iter()
        .map(|a| (a.clone(), tweak(a)))
        .collect::<BTreeMap<_, _>>();
    FiniteGroupoid::new(
        g.units().to_vec(),
        g.arrows().to_vec(),
        g.arrows().iter().map(|a| (a.clone(), g.src(a).to_string())).collect(),
        g.arrows().iter().map(|a| (a.clone(), g.rng(a).to_string())).collect(),
        inv,
        g.compose_table()
            .map(|(a, b, c)| ((a.to_string(), b.to_string()), c.to_string()))
            .collect(),
        g.units()
            .iter()
            .map(|u| (u.clone(), g.unit_arrow(u).to_string()))
            .collect(),
    )
    .unwrap()
}

#[test]
fn z2_and_pair2_are_valid() {
    let (z2, _) = fixtures::z2();
    assert!(validate_groupoid(&z2).is_valid());
    let (pair2, _) = fixtures::pair2();
    assert!(validate_groupoid(&pair2).is_valid());
    let (pt, _) = fixtures::pt();
    assert!(validate_groupoid(&pt).is_valid());
    let (gbund, _) = fixtures::gbund(3);
    assert!(validate_groupoid(&gbund).is_valid());
}

#[test]
fn pair2_with_broken_inv_reports_swap_violation() {
    let (pair2, _) = fixtures::pair2();
    let broken = rebuild_with_inv(&pair2, |a| {
        if a == pair_id("1", "2") {
            pair_id("1", "2")
        } else {
            pair2.inv(a).to_string()
        }
    });
    let report = validate_groupoid(&broken);
    assert!(!report.is_valid());
    assert!(report.has("inv-src-rng-swap"));
    assert!(report
        .violations
        .iter()
        .any(|v| v.axiom == "inv-src-rng-swap" && v.witness.contains("(1|2)")));
}

#[test]
fn haar_validation_on_z2() {
    let (z2, uniform) = fixtures::z2();
    assert!(validate_haar(&z2, &uniform).is_valid());

    let skew = HaarSystem::new(
        &z2,
        [("e".to_string(), rat_one()), ("s".to_string(), rat_int(2))].into(),
    )
    .unwrap();
    let report = validate_haar(&z2, &skew);
    assert!(!report.is_valid());
    // Translation by s maps weight 1 onto weight 2.
    assert!(report
        .violations
        .iter()
        .any(|v| v.axiom == "left-invariance" && v.witness.starts_with("gamma s")));
}

#[test]
fn haar_validation_on_pair2() {
    let (pair2, uniform) = fixtures::pair2();
    assert!(validate_haar(&pair2, &uniform).is_valid());
    // Source-dependent weights are the invariant ones on a pair groupoid.
    let weights: BTreeMap<String, _> = pair2
        .arrows()
        .iter()
        .map(|a| {
            let w = if pair2.src(a) == "1" { rat_one() } else { rat_int(3) };
            (a.clone(), w)
        })
        .collect();
    let by_src = HaarSystem::new(&pair2, weights).unwrap();
    assert!(validate_haar(&pair2, &by_src).is_valid());
    // Range-dependent weights are not.
    let weights: BTreeMap<String, _> = pair2
        .arrows()
        .iter()
        .map(|a| {
            let w = if pair2.rng(a) == "1" { rat_one() } else { rat_int(3) };
            (a.clone(), w)
        })
        .collect();
    let by_rng = HaarSystem::new(&pair2, weights).unwrap();
    assert!(!validate_haar(&pair2, &by_rng).is_valid());
}

fn z2_translation_action() -> (Action, HaarSystem) {
    let (z2, haar) = fixtures::z2();
    let carrier = vec!["e".to_string(), "s".to_string()];
    let momentum: BTreeMap<String, String> =
        carrier.iter().map(|x| (x.clone(), "u".to_string())).collect();
    let mult = |a: &str, b: &str| if a == b { "e" } else { "s" };
    let mut act = BTreeMap::new();
    for a in ["e", "s"] {
        for x in ["e", "s"] {
            act.insert((a.to_string(), x.to_string()), mult(a, x).to_string());
        }
    }
    (
        Action::new(Side::Left, z2, carrier, momentum, act).unwrap(),
        haar,
    )
}

#[test]
fn transformation_groupoid_of_z2_on_itself() {
    let (action, haar) = z2_translation_action();
    assert!(action.validate().is_valid());
    let (t, t_haar) = transformation_groupoid(&haar, &action).unwrap();
    assert_eq!(t.arrows().len(), 4);
    assert!(validate_groupoid(&t).is_valid());
    assert!(validate_haar(&t, &t_haar).is_valid());
    for a in t.arrows() {
        assert_eq!(t_haar.weight(a), &rat_one());
    }
}

#[test]
fn transformation_groupoid_of_pt_is_pt() {
    let (pt, haar) = fixtures::pt();
    let carrier = vec!["p".to_string()];
    let action = Action::new(
        Side::Left,
        pt,
        carrier.clone(),
        [("p".to_string(), "u".to_string())].into(),
        [(("e".to_string(), "p".to_string()), "p".to_string())].into(),
    )
    .unwrap();
    let (t, _) = transformation_groupoid(&haar, &action).unwrap();
    assert_eq!(t.units().len(), 1);
    assert_eq!(t.arrows().len(), 1);
    assert!(validate_groupoid(&t).is_valid());
}

#[test]
fn transformation_groupoid_of_swap() {
    let swap = fixtures::swap();
    let left = swap.bispace.left();
    let (t, t_haar) = transformation_groupoid(&swap.left_haar, left).unwrap();
    assert_eq!(t.arrows().len(), 4);
    assert_eq!(t.rng(&pair_id("s", "x0")), "x1");
    assert!(validate_groupoid(&t).is_valid());
    assert!(validate_haar(&t, &t_haar).is_valid());
}

#[test]
fn transformation_groupoid_rejects_invalid_action() {
    let (z2, haar) = fixtures::z2();
    // Missing table entries: domain-exactness fails.
    let action = Action::new(
        Side::Left,
        z2,
        vec!["p".to_string()],
        [("p".to_string(), "u".to_string())].into(),
        [(("e".to_string(), "p".to_string()), "p".to_string())].into(),
    )
    .unwrap();
    assert!(matches!(
        transformation_groupoid(&haar, &action),
        Err(GroupoidError::InvalidAction(_))
    ));
}

#[test]
fn relation_groupoid_of_constant_map_is_pair_groupoid() {
    let carrier = vec!["a".to_string(), "b".to_string()];
    let phi: BTreeMap<String, String> =
        carrier.iter().map(|x| (x.clone(), "y".to_string())).collect();
    let lambda = MeasureFamily::counting(carrier.clone(), vec!["y".into()], phi.clone()).unwrap();
    let result = relation_groupoid(&carrier, &phi, &lambda).unwrap();
    assert_eq!(result.groupoid.arrows().len(), 4);
    assert!(validate_groupoid(&result.groupoid).is_valid());
    assert!(result.is_haar_system);
    assert!(result.invariance.is_valid());
    for (_, w) in result.family.weights() {
        assert_eq!(w, &rat_one());
    }
}

#[test]
fn relation_groupoid_of_singleton_is_pt() {
    let carrier = vec!["a".to_string()];
    let phi: BTreeMap<String, String> = [("a".to_string(), "y".to_string())].into();
    let lambda = MeasureFamily::counting(carrier.clone(), vec!["y".into()], phi.clone()).unwrap();
    let result = relation_groupoid(&carrier, &phi, &lambda).unwrap();
    assert_eq!(result.groupoid.units().len(), 1);
    assert_eq!(result.groupoid.arrows().len(), 1);
}

#[test]
fn relation_groupoid_demotes_zero_atom_family() {
    let carrier = vec!["a".to_string(), "b".to_string()];
    let phi: BTreeMap<String, String> =
        carrier.iter().map(|x| (x.clone(), "y".to_string())).collect();
    let lambda = MeasureFamily::new(
        carrier.clone(),
        vec!["y".into()],
        phi.clone(),
        [("a".to_string(), rat_one()), ("b".to_string(), rat_zero())].into(),
    )
    .unwrap();
    let result = relation_groupoid(&carrier, &phi, &lambda).unwrap();
    // Still an invariant family, but not a Haar system.
    assert!(!result.is_haar_system);
    assert!(result.invariance.is_valid());
}

#[test]
fn restrict_pair2() {
    let (pair2, _) = fixtures::pair2();
    let single: BTreeSet<String> = ["1".to_string()].into();
    let restricted = restrict(&pair2, &single).unwrap();
    assert_eq!(restricted.units().len(), 1);
    assert_eq!(restricted.arrows().len(), 1);
    assert!(validate_groupoid(&restricted).is_valid());

    let all: BTreeSet<String> = pair2.units().iter().cloned().collect();
    assert_eq!(restrict(&pair2, &all).unwrap(), pair2);

    let empty = BTreeSet::new();
    assert!(matches!(
        restrict(&pair2, &empty),
        Err(GroupoidError::EmptyRestriction)
    ));
}

#[test]
fn restrict_gbund_to_third_unit_is_cyclic_of_order_three() {
    let (g, haar) = fixtures::gbund(3);
    let v: BTreeSet<String> = ["n2".to_string()].into();
    let restricted = restrict(&g, &v).unwrap();
    assert_eq!(restricted.units().len(), 1);
    assert_eq!(restricted.arrows().len(), 3);
    assert!(validate_groupoid(&restricted).is_valid());
    assert_eq!(restricted.compose("n2:1", "n2:1"), Some("n2:2"));
    assert_eq!(restricted.compose("n2:1", "n2:2"), Some("n2:0"));
    // The ambient Haar system restricts to a Haar system.
    let restricted_haar = gcorr_core::groupoid::restrict_haar(&haar, &restricted);
    assert!(validate_haar(&restricted, &restricted_haar).is_valid());
}

#[test]
fn z2_translation_is_free_and_transitive() {
    let (action, _) = z2_translation_action();
    assert!(action.is_free());
    let f = constant_map(action.carrier());
    assert!(action.is_transitive_over(&f).unwrap());
}

#[test]
fn zcirc4_stabilizer_and_transitivity() {
    let zcirc = fixtures::zcirc(4);
    let left = zcirc.bispace.left();
    assert_eq!(left.stabilizer("x0"), vec!["e".to_string(), "s".to_string()]);
    assert_eq!(left.stabilizer("x2"), vec!["e".to_string(), "s".to_string()]);
    assert_eq!(left.stabilizer("x1"), vec!["e".to_string()]);
    assert!(!left.is_free());
    // Transitive over the orbit projection.
    let orbit = left.orbit_map();
    assert!(left.is_transitive_over(&orbit).unwrap());
    // Not transitive over the constant map (several orbits).
    let f = constant_map(left.carrier());
    assert!(!left.is_transitive_over(&f).unwrap());
}

#[test]
fn swap_is_free_and_transitive_over_constant() {
    let swap = fixtures::swap();
    let left = swap.bispace.left();
    assert!(left.is_free());
    let f = constant_map(left.carrier());
    assert!(left.is_transitive_over(&f).unwrap());
}

#[test]
fn m_map_on_swap_is_a_bijection_onto_all_pairs() {
    let swap = fixtures::swap();
    let left = swap.bispace.left();
    let m = left.m_map(&constant_map(left.carrier())).unwrap();
    assert_eq!(m.graph.len(), 4);
    assert_eq!(m.image.len(), 4);
    assert_eq!(m.codomain.len(), 4);
    assert!(m.is_injective());
    assert!(m.non_singleton_fibers().is_empty());
}

#[test]
fn m_map_on_zcirc4_has_the_stabilizer_fiber() {
    let zcirc = fixtures::zcirc(4);
    let left = zcirc.bispace.left();
    let s_x: BTreeMap<String, String> = left
        .carrier()
        .iter()
        .map(|x| (x.clone(), zcirc.bispace.s_x(x).to_string()))
        .collect();
    let m = left.m_map(&s_x).unwrap();
    let fiber = &m.fibers[&("x0".to_string(), "x0".to_string())];
    let mut fiber: Vec<String> = fiber.iter().map(|(g, x)| format!("({g},{x})")).collect();
    fiber.sort();
    assert_eq!(fiber, vec!["(e,x0)".to_string(), "(s,x0)".to_string()]);
    assert!(!m.non_singleton_fibers().is_empty());
}

#[test]
fn m_map_on_pt_is_a_single_pair() {
    let (pt, _) = fixtures::pt();
    let action = Action::new(
        Side::Left,
        pt,
        vec!["p".to_string()],
        [("p".to_string(), "u".to_string())].into(),
        [(("e".to_string(), "p".to_string()), "p".to_string())].into(),
    )
    .unwrap();
    let m = action.m_map(&constant_map(action.carrier())).unwrap();
    assert_eq!(m.graph.len(), 1);
    assert_eq!(m.image.len(), 1);
}

#[test]
fn m_map_rejects_non_invariant_map() {
    let swap = fixtures::swap();
    let left = swap.bispace.left();
    let f: BTreeMap<String, String> = [
        ("x0".to_string(), "a".to_string()),
        ("x1".to_string(), "b".to_string()),
    ]
    .into();
    assert!(left.m_map(&f).is_err());
    assert!(left.is_transitive_over(&f).is_err());
}

#[test]
fn bispace_validation_catches_the_literal_circle_transcription() {
    use gcorr_core::correspondence::{validate_bispace, Bispace};
    // Z2 negating Z/4Z with s_X the identity: s_X is not G-invariant.
    let zcirc = fixtures::zcirc(4);
    let left = zcirc.bispace.left().clone();
    let carrier = left.carrier().to_vec();
    let (space, _) = fixtures::space_groupoid(&carrier);
    let s_map: BTreeMap<String, String> =
        carrier.iter().map(|x| (x.clone(), x.clone())).collect();
    let mut act = BTreeMap::new();
    for x in &carrier {
        act.insert((x.clone(), x.clone()), x.clone());
    }
    let right = Action::new(Side::Right, space, carrier, s_map, act).unwrap();
    let bispace = Bispace::new(left, right).unwrap();
    let report = validate_bispace(&bispace);
    assert!(!report.is_valid());
    assert!(report.has("s_X not G-invariant"));
}

#[test]
fn freeness_agrees_with_m_map_injectivity_on_fixtures() {
    for (_, corr) in fixtures::proper_fixtures() {
        let left = corr.bispace.left();
        let m = left.m_map(&constant_map(left.carrier())).unwrap();
        assert_eq!(left.is_free(), m.is_injective());
    }
}

#[test]
fn random_actions_cross_checks_agree() {
    use gcorr_core::sampling;
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    for _ in 0..100 {
        let (g, haar) = sampling::random_groupoid(&mut rng, 12);
        assert!(validate_groupoid(&g).is_valid());
        assert!(validate_haar(&g, &haar).is_valid());
        let action = sampling::random_left_gset(&mut rng, &g, 6);
        assert!(action.validate().is_valid());
        // is_free cross-checks stabilizers against m_0 injectivity inside,
        // and agrees with the m_map graph.
        let m = action.m_map(&constant_map(action.carrier())).unwrap();
        assert_eq!(action.is_free(), m.is_injective());
        // is_transitive_over runs both computations and asserts they agree.
        let f = sampling::random_invariant_map(&mut rng, &action);
        let _ = action.is_transitive_over(&f).unwrap();
        // Every generated transformation groupoid validates.
        let (t, t_haar) = transformation_groupoid(&haar, &action).unwrap();
        assert!(validate_groupoid(&t).is_valid());
        assert!(validate_haar(&t, &t_haar).is_valid());
    }
}
