mod common;

use common::{nonzero_scalar, scalar};
use num_traits::{One, Zero};
use proptest::prelude::*;
use qfischer::Scalar;

proptest! {
    #[test]
    fn addition_is_an_abelian_group(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x + &Scalar::zero(), x.clone());
        prop_assert!((&x + &-&x).is_zero());
    }

    #[test]
    fn multiplication_is_commutative_associative_distributive(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &Scalar::one(), x.clone());
    }

    #[test]
    fn nonzero_elements_invert(x in nonzero_scalar()) {
        prop_assert!((&x * &x.inv().unwrap()).is_one());
        prop_assert_eq!(x.checked_div(&x).unwrap(), Scalar::one());
    }

    #[test]
    fn conjugation_is_a_field_automorphism(x in scalar(), y in scalar()) {
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(Scalar::real(x.norm_sqr()), &x * &x.conj());
    }

    #[test]
    fn display_round_trips_through_the_parser(x in scalar()) {
        prop_assert_eq!(qfischer::parse::parse_scalar(&x.to_string()).unwrap(), x);
    }
}

#[test]
fn i_squared_is_minus_one() {
    assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
}

#[test]
fn zero_has_no_inverse() {
    assert!(Scalar::zero().inv().is_err());
}
