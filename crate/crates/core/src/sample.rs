//! Seeded pseudo-random inputs for property checks.

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::harmonic::{harmonic_basis, GradedBasis};
use crate::poly::{Bidegree, Context, Monomial, Poly};
use crate::scalar::Scalar;
use crate::structures::{ComplexMatrix, Matrix, Quaternion, QuaternionMatrix};

pub const DEFAULT_SEED: u64 = 0x5eed_f15c;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational: numerator in `-5..=5`, denominator in `1..=4`.
pub fn rational(rng: &mut impl Rng) -> BigRational {
    BigRational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into())
}

/// Nonzero Gaussian rational, real half of the time.
pub fn scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let re = rational(rng);
        let im = if rng.gen_bool(0.5) { rational(rng) } else { BigRational::from_integer(0.into()) };
        let s = Scalar::new(re, im);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Monomial of the given bidegree with exponents spread uniformly at random.
pub fn monomial(rng: &mut impl Rng, ctx: &Context, bd: Bidegree) -> Monomial {
    let n = ctx.nvars();
    let mut alpha = vec![0u32; n];
    let mut beta = vec![0u32; n];
    for _ in 0..bd.a {
        alpha[rng.gen_range(0..n)] += 1;
    }
    for _ in 0..bd.b {
        beta[rng.gen_range(0..n)] += 1;
    }
    Monomial::from_exponents(alpha, beta)
}

/// Up to `max_terms` random terms of total degree at most `max_degree`.
pub fn poly(rng: &mut impl Rng, ctx: Context, max_degree: u32, max_terms: usize) -> Poly {
    let count = rng.gen_range(1..=max_terms);
    let terms = (0..count).map(|_| {
        let total = rng.gen_range(0..=max_degree);
        let a = rng.gen_range(0..=total);
        (monomial(rng, &ctx, Bidegree::new(a, total - a)), scalar(rng))
    });
    Poly::from_terms(ctx, terms.collect::<Vec<_>>())
}

/// Up to `max_terms` random terms, all of bidegree `bd`.
pub fn homogeneous_poly(rng: &mut impl Rng, ctx: Context, bd: Bidegree, max_terms: usize) -> Poly {
    let count = rng.gen_range(1..=max_terms);
    let terms: Vec<_> = (0..count).map(|_| (monomial(rng, &ctx, bd), scalar(rng))).collect();
    Poly::from_terms(ctx, terms)
}

/// Random combination of at most `max_terms` elements of a basis.
pub fn combination(rng: &mut impl Rng, basis: &GradedBasis, max_terms: usize) -> Poly {
    let mut f = Poly::zero(basis.ctx);
    if basis.is_empty() {
        return f;
    }
    for _ in 0..rng.gen_range(1..=max_terms) {
        let e = &basis.elements[rng.gen_range(0..basis.len())];
        f = &f + &e.scale(&scalar(rng));
    }
    f
}

pub fn harmonic(rng: &mut impl Rng, ctx: Context, bd: Bidegree, max_terms: usize) -> Poly {
    combination(rng, &harmonic_basis(ctx, bd), max_terms)
}

/// The fixed input family for round-trip checks: `count` polynomials with
/// `p = 2`, total degree at most 5, at most 10 terms.
pub fn round_trip_inputs(seed: u64, count: usize) -> Vec<Poly> {
    let ctx = Context::new(2).expect("p = 2");
    let mut r = rng(seed);
    (0..count).map(|_| poly(&mut r, ctx, 5, 10)).collect()
}

pub fn quaternion(rng: &mut impl Rng) -> Quaternion {
    Quaternion::new(rational(rng), rational(rng), rational(rng), rational(rng))
}

pub fn quaternion_matrix(rng: &mut impl Rng, n: usize) -> QuaternionMatrix {
    Matrix::from_fn_mut(n, n, || quaternion(rng))
}

pub fn complex_matrix(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    Matrix::from_fn_mut(n, n, || Scalar::new(rational(rng), rational(rng)))
}

/// `A - A*` for a random `A`: skew-symplectic by construction.
pub fn skew_symplectic(rng: &mut impl Rng, n: usize) -> QuaternionMatrix {
    let a = quaternion_matrix(rng, n);
    a.try_add(&-&a.adjoint()).expect("square")
}
