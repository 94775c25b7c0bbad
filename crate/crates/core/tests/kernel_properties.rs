use hecke_core::glhecke::{apply_scalar_shift, omega_t, DeltaTuple, OmegaTable};
use hecke_core::inversion::{enumerate_monomials, GenMonomial, HeckePoly, ImageTable};
use hecke_core::kernel::{
    sym_expand, sym_from_multi, sym_mul, sym_reflect, LaurentP, Partition, RatFnP, SymPoly,
};
use hecke_core::spseries::generator_images;
use num_bigint::BigInt;
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = LaurentP> {
    (-4i32..4, prop::collection::vec(-9i64..10, 0..5))
        .prop_map(|(min, cs)| LaurentP::from_i64s(min, &cs))
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentP> {
    laurent().prop_filter("nonzero", |l| !l.is_zero())
}

const N: usize = 3;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u16..4, N).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(&v).unwrap()
    })
}

fn sympoly() -> impl Strategy<Value = SymPoly> {
    prop::collection::vec((partition(), laurent()), 0..4).prop_map(|terms| {
        let mut s = SymPoly::zero(N);
        for (l, c) in terms {
            s.add_term(l, &c);
        }
        s
    })
}

fn heckepoly() -> impl Strategy<Value = HeckePoly> {
    // genus 2: exponents of T, T1, [p]
    prop::collection::vec((prop::collection::vec(0u32..3, 3), laurent()), 0..3).prop_map(|ts| {
        let mut h = HeckePoly::zero(2);
        for (e, c) in ts {
            h.add_term(GenMonomial::new(&e).unwrap(), &c);
        }
        h
    })
}

/// Homogeneous in the `x_0`-degree, which images require.
fn homogeneous_heckepoly() -> impl Strategy<Value = HeckePoly> {
    (0u32..4).prop_flat_map(|k| {
        let monos = enumerate_monomials(2, k);
        prop::collection::vec(laurent(), monos.len()).prop_map(move |cs| {
            let mut h = HeckePoly::zero(2);
            for (m, c) in monos.iter().zip(cs) {
                h.add_term(m.clone(), &c);
            }
            h
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentP::one(), a.clone());
    }

    #[test]
    fn laurent_evaluation_is_a_homomorphism(a in laurent(), b in laurent(), x in 2i64..7) {
        let x = BigInt::from(x);
        // evaluation is only integral when no negative powers remain
        let shift = 8;
        let (sa, sb) = (a.shift(shift), b.shift(shift));
        let prod = (&sa * &sb).eval_int(&x).unwrap();
        prop_assert_eq!(prod, sa.eval_int(&x).unwrap() * sb.eval_int(&x).unwrap());
    }

    #[test]
    fn laurent_exact_division_undoes_multiplication(a in laurent(), b in nonzero_laurent()) {
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn laurent_inverting_p_is_an_involution(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.invert_p().invert_p(), a.clone());
        prop_assert_eq!((&a * &b).invert_p(), &a.invert_p() * &b.invert_p());
    }

    #[test]
    fn laurent_canonical_round_trip(a in laurent()) {
        prop_assert_eq!(LaurentP::parse_canonical(&a.to_canonical()).unwrap(), a);
    }

    #[test]
    fn ratfn_agrees_with_laurent(a in laurent(), b in laurent(), d in nonzero_laurent()) {
        let (ra, rb) = (RatFnP::from_laurent(&a), RatFnP::from_laurent(&b));
        prop_assert_eq!((&ra * &rb).to_laurent(), Some(&a * &b));
        prop_assert_eq!((&ra + &rb).to_laurent(), Some(&a + &b));
        let rd = RatFnP::from_laurent(&d);
        prop_assert_eq!((&(&ra * &rd) / &rd).to_laurent(), Some(a));
    }

    #[test]
    fn sym_product_matches_expanded_product(a in sympoly(), b in sympoly()) {
        let direct = sym_mul(&a, &b).unwrap();
        prop_assert_eq!(sym_expand(&direct), &sym_expand(&a) * &sym_expand(&b));
    }

    #[test]
    fn sym_expansion_round_trip(a in sympoly()) {
        prop_assert_eq!(sym_from_multi(&sym_expand(&a)).unwrap(), a.clone());
        prop_assert_eq!(SymPoly::parse_canonical(N, &a.to_canonical()).unwrap(), a);
    }

    #[test]
    fn sym_ring_axioms(a in sympoly(), b in sympoly(), c in sympoly()) {
        let ab = sym_mul(&a, &b).unwrap();
        prop_assert_eq!(&ab, &sym_mul(&b, &a).unwrap());
        prop_assert_eq!(
            sym_mul(&ab, &c).unwrap(),
            sym_mul(&a, &sym_mul(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            sym_mul(&a, &(&b + &c)).unwrap(),
            &ab + &sym_mul(&a, &c).unwrap()
        );
    }

    #[test]
    fn sym_reflection_is_an_involution(a in sympoly()) {
        prop_assert_eq!(sym_reflect(&sym_reflect(&a, 3).unwrap(), 3).unwrap(), a);
    }

    #[test]
    fn hecke_canonical_round_trip(h in heckepoly()) {
        prop_assert_eq!(HeckePoly::parse_canonical(2, &h.to_canonical()).unwrap(), h);
    }

    #[test]
    fn hecke_image_is_multiplicative(a in homogeneous_heckepoly(), b in homogeneous_heckepoly()) {
        let omegas = OmegaTable::new();
        let table = ImageTable::new(2, generator_images(2, &omegas).unwrap()).unwrap();
        let ia = a.image(&table).unwrap();
        let ib = b.image(&table).unwrap();
        prop_assert_eq!((&a * &b).image(&table).unwrap(), sym_mul(&ia, &ib).unwrap());
    }

    #[test]
    fn omega_scalar_shift(tail in prop::collection::vec(0u16..3, 2), c in 0u16..3) {
        let mut d = vec![0];
        d.extend(tail);
        d.sort_unstable();
        let d = DeltaTuple::new(&d).unwrap();
        prop_assert_eq!(
            omega_t(&d.shifted(c)).unwrap(),
            apply_scalar_shift(&omega_t(&d).unwrap(), c)
        );
    }
}
