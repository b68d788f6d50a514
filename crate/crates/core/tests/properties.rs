use proptest::prelude::*;

use gerbe_core::crossed::InstanceKind;
use gerbe_core::format::{
    parse_dataset, parse_form, parse_group, parse_matrix, parse_poly, print_dataset, print_group, Dataset, RingSpec,
};
use gerbe_core::forms::{bracket, exterior_d, LieForm, Side};
use gerbe_core::matrix::PolyMatrix;
use gerbe_core::poly::{default_vars, Monomial, Poly};
use gerbe_core::random::{random_form, random_group, random_matrix, sample_rng};
use gerbe_core::ring::{rat, Rat};
use gerbe_core::simplicial::{extract, lift};

const DIM: usize = 3;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::array::uniform3(0u16..4), -40i64..40, 1i64..12), 0..7).prop_map(|terms| {
        Poly::from_terms(DIM, terms.into_iter().map(|(e, p, q)| (Monomial::from_exponents(&e), rat(p, q))))
    })
}

/// Term-by-term product with a normalizing rational add at every step.
fn naive_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::zero(DIM);
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let e: Vec<u16> = ma.exponents().iter().zip(mb.exponents()).map(|(x, y)| x + y).collect();
            let c: Rat = ca * cb;
            out = &out + &Poly::term(DIM, Monomial::from_exponents(&e), c);
        }
    }
    out
}

fn form(seed: u64, degree: usize) -> LieForm {
    random_form(&mut sample_rng(seed, 0), degree, DIM, 2, Side::H, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_naive(a in poly(), b in poly()) {
        prop_assert_eq!(&a * &b, naive_mul(&a, &b));
    }

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn poly_text_round_trip(a in poly()) {
        let vars = default_vars(DIM);
        prop_assert_eq!(parse_poly(&a.to_string_with(&vars), &vars).unwrap(), a);
    }

    #[test]
    fn commutator_matches_two_products(seed in any::<u64>()) {
        let mut rng = sample_rng(seed, 0);
        let a = random_matrix(&mut rng, 3, DIM, 2);
        let b = random_matrix(&mut rng, 3, DIM, 2);
        prop_assert_eq!(a.commutator(&b), a.mul(&b).sub(&b.mul(&a)));
    }

    #[test]
    fn matrix_and_group_text_round_trip(seed in any::<u64>()) {
        let vars = default_vars(DIM);
        let mut rng = sample_rng(seed, 0);
        let m: PolyMatrix = random_matrix(&mut rng, 2, DIM, 2);
        prop_assert_eq!(parse_matrix(&m.to_string_with(&vars), &vars).unwrap(), m);
        let g = random_group(&mut rng, 3, DIM, 2);
        prop_assert!(g.mat().mul(g.inv_mat()).is_identity());
        prop_assert_eq!(parse_group(&print_group(&g, &vars), &vars).unwrap(), g);
    }

    #[test]
    fn form_text_round_trip(seed in any::<u64>(), degree in 1usize..=3) {
        let vars = default_vars(DIM);
        let w = form(seed, degree);
        let back = parse_form(&w.to_string_with(&vars), &vars).unwrap();
        // An empty form carries no size after parsing.
        if w.is_zero() {
            prop_assert!(back.is_zero());
        } else {
            prop_assert_eq!(back, w);
        }
    }

    #[test]
    fn extract_inverts_lift(seed in any::<u64>()) {
        let w = form(seed, 1);
        prop_assert_eq!(extract(&lift(&w), Side::H).unwrap(), w);
    }

    #[test]
    fn exterior_d_squares_to_zero(seed in any::<u64>(), degree in 1usize..=2) {
        prop_assert!(exterior_d(&exterior_d(&form(seed, degree))).is_zero());
    }

    #[test]
    fn bracket_graded_antisymmetric(seed in any::<u64>(), p in 1usize..=2, q in 1usize..=2) {
        let a = form(seed, p);
        let b = form(seed ^ 0x9e37_79b9, q);
        let ab = bracket(&a, &b).unwrap();
        let ba = bracket(&b, &a).unwrap();
        // [a,b] = (-1)^{pq+1}[b,a]
        if (p * q) % 2 == 0 {
            prop_assert!(ab.add(&ba).is_zero());
        } else {
            prop_assert_eq!(ab, ba);
        }
    }
}

#[test]
fn empty_dataset_round_trips() {
    let ring = RingSpec { dim: 2, vars: default_vars(2) };
    let ds = Dataset::new(ring, InstanceKind::Abelian, 2, 3);
    let text = print_dataset(&ds);
    assert_eq!(parse_dataset(&text).unwrap(), ds);
}
