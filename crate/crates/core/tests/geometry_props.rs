use proptest::prelude::*;
use pseudonull::diffalg::{commutator, Generator};
use pseudonull::geometry::{
    curvature_identity_check, frame_torsion_variation, lie_bracket, torsion_variation,
    variation_coefficients, FrenetField,
};
use pseudonull::hierarchy::recursion_flow;
use pseudonull::sample::{random_evolution_field, random_p0, PolyShape};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields(seed: u64, count: usize) -> Vec<FrenetField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = PolyShape::new(2, 2, 3).with_constant().with_g();
    (0..count).map(|_| random_evolution_field(&mut rng, &shape)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bracket_maps_to_commutator(seed in any::<u64>()) {
        let v = fields(seed, 2);
        let bracket = lie_bracket(&v[0], &v[1]).unwrap();
        let flows = (torsion_variation(&v[0]).unwrap(), torsion_variation(&v[1]).unwrap());
        prop_assert_eq!(
            torsion_variation(&bracket).unwrap(),
            commutator(&flows.0, &flows.1).unwrap()
        );
    }

    #[test]
    fn bracket_is_closed_and_antisymmetric(seed in any::<u64>()) {
        let v = fields(seed, 2);
        let b = lie_bracket(&v[0], &v[1]).unwrap();
        prop_assert!(b.h().is_zero());
        prop_assert!(b.f().is_zero());
        prop_assert_eq!(lie_bracket(&v[1], &v[0]).unwrap(), -&b);
    }

    #[test]
    fn curvature_identity_on_frame_vectors(seed in any::<u64>()) {
        let v = fields(seed, 2);
        for u in [FrenetField::tangent(), FrenetField::normal(), FrenetField::binormal()] {
            let r = curvature_identity_check(&v[0], &v[1], &u).unwrap();
            prop_assert!(r.is_zero(), "U = {}: residual {}", u, r);
        }
    }

    #[test]
    fn torsion_variation_forms_agree(seed in any::<u64>()) {
        let v = fields(seed, 1).pop().unwrap();
        prop_assert_eq!(torsion_variation(&v).unwrap(), frame_torsion_variation(&v));
        let data = variation_coefficients(&v);
        prop_assert!(data.rho.is_zero());
        let tau = pseudonull::diffalg::DiffPoly::var(Generator::Tau, 0);
        let g = pseudonull::diffalg::DiffPoly::g(Generator::Tau);
        let expected = &(&pseudonull::diffalg::total_derivative(&data.phi) + &(&tau * &data.phi)) + &(&g * v.g());
        prop_assert_eq!(data.alpha, expected);
    }

    #[test]
    fn normal_flows_match_operator_chain(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_p0(&mut rng, Generator::Tau, &PolyShape::new(3, 3, 4).with_g());
        prop_assert_eq!(
            torsion_variation(&FrenetField::normal_multiple(g.clone())).unwrap(),
            recursion_flow(&g).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn bracket_satisfies_jacobi(seed in any::<u64>()) {
        let v = fields(seed, 3);
        let br = |a: &FrenetField, b: &FrenetField| lie_bracket(a, b).unwrap();
        let sum = &(&br(&br(&v[0], &v[1]), &v[2]) + &br(&br(&v[1], &v[2]), &v[0])) + &br(&br(&v[2], &v[0]), &v[1]);
        prop_assert!(sum.is_zero());
    }
}
