mod common;

use common::{ctx, homogeneous, poly, scalar};
use proptest::prelude::*;
use qfischer::ops::{commutator, named, op_matrix, Generator};
use qfischer::{Bidegree, OpExpr, Poly};

fn every_generator(p: usize) -> Vec<OpExpr> {
    let mut ops: Vec<OpExpr> = ["E", "Edag", "Laplace", "R2", "EulerZ", "EulerZb", "T", "K", "I"]
        .iter()
        .map(|n| OpExpr::parse(n).unwrap())
        .collect();
    for j in 1..=2 * p {
        ops.extend([Generator::Dz(j), Generator::Dzb(j), Generator::MulZ(j), Generator::MulZb(j)].map(OpExpr::from));
    }
    ops
}

proptest! {
    #[test]
    fn operators_are_linear(f in poly(ctx(2), 3, 6), g in poly(ctx(2), 3, 6), c in scalar()) {
        for op in every_generator(2) {
            let lhs = op.apply(&(&f.scale(&c) + &g)).unwrap();
            let rhs = &op.apply(&f).unwrap().scale(&c) + &op.apply(&g).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", op);
        }
    }

    // Applied directly to polynomials, without going through matrices.
    #[test]
    fn sl2_and_so4_relations_on_random_polynomials(f in homogeneous(ctx(2), Bidegree::new(2, 2), 6)) {
        let c = ctx(2);
        let (x, y, h) = (named::sl2_x(), named::sl2_y(), named::sl2_h(c));
        let (e, ed, d) = (named::e(), named::edag(), named::euler_diff());
        let ap = |op: &OpExpr| op.apply(&f).unwrap();
        prop_assert_eq!(ap(&commutator(&x, &y)), ap(&h));
        prop_assert_eq!(ap(&commutator(&h, &x)), ap(&x).scale(&2.into()));
        prop_assert_eq!(ap(&commutator(&ed, &e)), ap(&d));
        prop_assert_eq!(ap(&commutator(&d, &ed)), ap(&ed).scale(&2.into()));
        prop_assert!(ap(&commutator(&e, &named::laplace())).is_zero());
        prop_assert!(ap(&commutator(&ed, &named::r2())).is_zero());
    }

    #[test]
    fn euler_operators_measure_bidegree(bd in common::bidegree(4), seed in any::<u64>()) {
        let c = ctx(2);
        let mut rng = qfischer::sample::rng(seed);
        let f = qfischer::sample::homogeneous_poly(&mut rng, c, bd, 5);
        prop_assert_eq!(named::euler_z().apply(&f).unwrap(), f.scale(&i64::from(bd.a).into()));
        prop_assert_eq!(named::euler_zb().apply(&f).unwrap(), f.scale(&i64::from(bd.b).into()));
    }

    #[test]
    fn operator_matrix_agrees_with_application(f in homogeneous(ctx(1), Bidegree::new(2, 1), 5)) {
        let c = ctx(1);
        for op in every_generator(1) {
            let m = op_matrix(&op, c, Bidegree::new(2, 1)).unwrap();
            let coords = qfischer::harmonic::coordinate_matrix(&c, Bidegree::new(2, 1), std::slice::from_ref(&f)).unwrap();
            let image = m.matrix.mul(&coords);
            let expected = Poly::from_coordinates(c, &m.row_basis, image.col(0));
            prop_assert_eq!(op.apply(&f).unwrap(), expected, "{}", op);
        }
    }
}

#[test]
fn e_and_edag_on_coordinates() {
    // E = z1 Dzb2 - z2 Dzb1 + ..., Edag = zb2 Dz1 - zb1 Dz2 + ...
    let c = ctx(1);
    let p = |s: &str| Poly::parse(s, c).unwrap();
    assert_eq!(named::e().apply(&p("zb2")).unwrap(), p("z1"));
    assert_eq!(named::e().apply(&p("zb1")).unwrap(), p("-z2"));
    assert_eq!(named::edag().apply(&p("z1")).unwrap(), p("zb2"));
    assert_eq!(named::edag().apply(&p("z2")).unwrap(), p("-zb1"));
    assert!(named::e().apply(&p("z1*z2")).unwrap().is_zero());
}

#[test]
fn twists_on_coordinates() {
    let c = ctx(1);
    let p = |s: &str| Poly::parse(s, c).unwrap();
    let t = named::twist_t();
    assert_eq!(t.apply(&p("z1")).unwrap(), p("-zb2"));
    assert_eq!(t.apply(&p("z2")).unwrap(), p("zb1"));
    assert_eq!(t.clone().pow(2).apply(&p("z1")).unwrap(), p("-z1"));
    assert_eq!(t.pow(2).apply(&p("z1*zb1")).unwrap(), p("z1*zb1"));
}

#[test]
fn laplacian_of_r2_power() {
    // Laplace |z|^2 = 4 * 2p on C^{2p}.
    let c = ctx(2);
    let r2 = Poly::r2(c);
    assert_eq!(named::laplace().apply(&r2).unwrap(), Poly::constant(c, 16.into()));
}

#[test]
fn operator_parser_and_display_agree() {
    for text in ["E", "Edag^2.E", "Dz1.Dzb3", "Laplace.R2", "T^3", "K.I"] {
        let op = OpExpr::parse(text).unwrap();
        assert_eq!(OpExpr::parse(&op.to_string()).unwrap(), op, "{text}");
    }
    assert!(OpExpr::parse("Foo").is_err());
}

#[test]
fn mixed_sums_have_no_matrix() {
    let op = named::e() + named::edag();
    assert!(matches!(op_matrix(&op, ctx(1), Bidegree::new(1, 1)), Err(qfischer::Error::NoBidegreeShift)));
}
