//! Symplectic harmonics and the refinement of `H_{a,b}` into `Edag^t H^S`
//! (or `E^t H^S†`) summands.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::harmonic::{
    cached, dim_h, harmonic_basis, harmonic_decompose, is_harmonic, nullspace_basis, to_u64, GradedBasis, SpaceTag,
};
use crate::linalg::{self, SparseMatrix};
use crate::ops::{named, op_matrix, OpExpr};
use crate::poly::{fischer_inner, Bidegree, Context, Poly};
use crate::scalar::{factorial, Scalar};

/// Which twisted operator rebuilds `H_{a,b}` from its kernel parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// `a >= b`: parts in `H^S = Ker E`, reassembled with powers of `Edag`.
    Edag,
    /// `a <= b`: parts in `H^S† = Ker Edag`, reassembled with powers of `E`.
    E,
}

impl Orientation {
    pub fn default_for(bd: Bidegree) -> Orientation {
        if bd.a >= bd.b {
            Orientation::Edag
        } else {
            Orientation::E
        }
    }

    pub fn valid_for(&self, bd: Bidegree) -> bool {
        match self {
            Orientation::Edag => bd.a >= bd.b,
            Orientation::E => bd.a <= bd.b,
        }
    }

    /// Operator used to rebuild the input.
    pub fn raising(&self) -> OpExpr {
        match self {
            Orientation::Edag => named::edag(),
            Orientation::E => named::e(),
        }
    }

    /// Its Fischer adjoint, which annihilates the kernel parts.
    pub fn lowering(&self) -> OpExpr {
        match self {
            Orientation::Edag => named::e(),
            Orientation::E => named::edag(),
        }
    }

    /// Bidegree of the `t`-th kernel part for input bidegree `bd`.
    pub fn part_bidegree(&self, bd: Bidegree, t: u32) -> Option<Bidegree> {
        let t = i64::from(t);
        match self {
            Orientation::Edag => bd.shifted(t, -t),
            Orientation::E => bd.shifted(-t, t),
        }
    }

    /// `(a-b)` read in the direction of this orientation.
    fn excess(&self, bd: Bidegree) -> u64 {
        match self {
            Orientation::Edag => u64::from(bd.a - bd.b),
            Orientation::E => u64::from(bd.b - bd.a),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Orientation::Edag => "Edag",
            Orientation::E => "E",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Basis of `H^S_{a,b} = Ker(Laplace, E)`, or of `H^S†_{a,b} = Ker(Laplace, Edag)`
/// when `adjoint` is set.
pub fn symplectic_harmonic_basis(ctx: Context, bd: Bidegree, adjoint: bool) -> Arc<GradedBasis> {
    let tag = if adjoint { SpaceTag::HSdag } else { SpaceTag::HS };
    cached(&ctx, bd, tag.clone(), || {
        let twist = if adjoint { named::edag() } else { named::e() };
        let lap = op_matrix(&named::laplace(), ctx, bd)?;
        let tw = op_matrix(&twist, ctx, bd)?;
        Ok(nullspace_basis(ctx, bd, tag, &lap.matrix.stack(&tw.matrix)))
    })
    .expect("Laplace, E and Edag have fixed bidegree shifts")
}

/// Kernel space holding the parts of the given orientation.
pub fn kernel_basis(ctx: Context, bd: Bidegree, orientation: Orientation) -> Arc<GradedBasis> {
    symplectic_harmonic_basis(ctx, bd, orientation == Orientation::E)
}

/// `lowering^t raising^t` on the `t`-th kernel part of an input of bidegree `bd`:
/// `t! (e+2t)! / (e+t)!` with `e` the excess of `bd`.
pub fn peel_constant(orientation: Orientation, bd: Bidegree, t: u32) -> BigUint {
    let e = orientation.excess(bd);
    let t = u64::from(t);
    factorial(t) * factorial(e + 2 * t) / factorial(e + t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticPart {
    pub t: u32,
    pub h: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticDecomp {
    pub input: Poly,
    pub bidegree: Option<Bidegree>,
    pub orientation: Orientation,
    /// Nonzero parts in increasing `t`.
    pub parts: Vec<SymplecticPart>,
}

impl SymplecticDecomp {
    pub fn image(&self, part: &SymplecticPart) -> Result<Poly> {
        self.orientation.raising().pow(part.t).apply(&part.h)
    }

    pub fn reassemble(&self) -> Result<Poly> {
        let mut out = Poly::zero(self.input.ctx());
        for part in &self.parts {
            out = &out + &self.image(part)?;
        }
        Ok(out)
    }
}

fn harmonic_input(h: &Poly) -> Result<Option<Bidegree>> {
    if h.is_zero() {
        return Ok(None);
    }
    let bd = h.homogeneous_bidegree().ok_or(Error::NotHomogeneous)?;
    if !is_harmonic(h)? {
        return Err(Error::NotHarmonic);
    }
    Ok(Some(bd))
}

fn check_orientation(orientation: Orientation, bd: Option<Bidegree>) -> Result<()> {
    match bd {
        Some(bd) if !orientation.valid_for(bd) => {
            Err(Error::InvalidOrientation { orientation: orientation.name().into(), a: bd.a, b: bd.b })
        }
        _ => Ok(()),
    }
}

/// Decomposition of a harmonic `h` in the default orientation for its bidegree.
pub fn symplectic_decompose(h: &Poly) -> Result<SymplecticDecomp> {
    let bd = harmonic_input(h)?;
    let orientation = bd.map(Orientation::default_for).unwrap_or(Orientation::Edag);
    peel(h, bd, orientation)
}

pub fn symplectic_decompose_oriented(h: &Poly, orientation: Orientation) -> Result<SymplecticDecomp> {
    let bd = harmonic_input(h)?;
    check_orientation(orientation, bd)?;
    peel(h, bd, orientation)
}

/// Top-down peel: `lowering^t` kills every part below `t` and scales the
/// `t`-th one by [`peel_constant`].
fn peel(h: &Poly, bd: Option<Bidegree>, orientation: Orientation) -> Result<SymplecticDecomp> {
    let mut parts = Vec::new();
    if let Some(bd) = bd {
        let (raise, lower) = (orientation.raising(), orientation.lowering());
        let mut rest = h.clone();
        for t in (0..=bd.a.min(bd.b)).rev() {
            let c = Scalar::from_bigint(peel_constant(orientation, bd, t).into());
            let ht = lower.clone().pow(t).apply(&rest)?.scale(&c.inv()?);
            if !ht.is_zero() {
                rest = &rest - &raise.clone().pow(t).apply(&ht)?;
                parts.push(SymplecticPart { t, h: ht });
            }
        }
        if !rest.is_zero() {
            return Err(Error::Internal(format!("symplectic peel of {h} left remainder {rest}")));
        }
        parts.reverse();
    }
    Ok(SymplecticDecomp { input: h.clone(), bidegree: bd, orientation, parts })
}

/// Independent oracle: orthogonal projection of `h` onto each summand
/// `raising^t (kernel part space)` through the Fischer Gram matrix.
pub fn projection_decompose(h: &Poly, orientation: Orientation) -> Result<SymplecticDecomp> {
    let bd = harmonic_input(h)?;
    check_orientation(orientation, bd)?;
    let mut parts = Vec::new();
    if let Some(bd) = bd {
        let ctx = h.ctx();
        let raise = orientation.raising();
        for t in 0..=bd.a.min(bd.b) {
            let part_bd = orientation.part_bidegree(bd, t).expect("t bounded by min(a,b)");
            let kernel = kernel_basis(ctx, part_bd, orientation);
            if kernel.is_empty() {
                continue;
            }
            let op = raise.clone().pow(t);
            let images = kernel.elements.iter().map(|s| op.apply(s)).collect::<Result<Vec<_>>>()?;
            let x = gram_solve(&images, h)?;
            let mut ht = Poly::zero(ctx);
            for (s, c) in kernel.elements.iter().zip(&x) {
                if !c.is_zero() {
                    ht = &ht + &s.scale(c);
                }
            }
            if !ht.is_zero() {
                parts.push(SymplecticPart { t, h: ht });
            }
        }
    }
    Ok(SymplecticDecomp { input: h.clone(), bidegree: bd, orientation, parts })
}

/// Coefficients `x` of the Fischer projection of `f` onto `span(basis)`:
/// `sum_k <b_k, b_i> x_k = <f, b_i>`.
fn gram_solve(basis: &[Poly], f: &Poly) -> Result<Vec<Scalar>> {
    let n = basis.len();
    let mut cols = Vec::with_capacity(n);
    for bk in basis {
        let mut col = Vec::new();
        for (i, bi) in basis.iter().enumerate() {
            let g = fischer_inner(bk, bi)?;
            if !g.is_zero() {
                col.push((i, g));
            }
        }
        cols.push(col);
    }
    let gram = SparseMatrix::from_columns(n, cols);
    let mut rhs = Vec::new();
    for (i, bi) in basis.iter().enumerate() {
        let g = fischer_inner(f, bi)?;
        if !g.is_zero() {
            rhs.push((i, g));
        }
    }
    linalg::solve(&gram, &rhs).ok_or_else(|| Error::Internal("singular Fischer Gram matrix".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullPart {
    /// Bidegree of the input component this part belongs to.
    pub bidegree: Bidegree,
    /// Power of `|z|^2`.
    pub j: u32,
    /// Power of the raising operator.
    pub t: u32,
    pub orientation: Orientation,
    /// Kernel part: harmonic and annihilated by the lowering operator.
    pub h: Poly,
}

impl FullPart {
    /// `"none"` when no raising operator is applied.
    pub fn op_name(&self) -> &'static str {
        if self.t == 0 {
            "none"
        } else {
            self.orientation.name()
        }
    }

    /// `|z|^{2j} raising^t h`.
    pub fn image(&self) -> Result<Poly> {
        let g = self.orientation.raising().pow(self.t).apply(&self.h)?;
        Ok(&Poly::r2(self.h.ctx()).pow(self.j) * &g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullDecomp {
    pub input: Poly,
    /// Sorted by `(bidegree, j, t)`.
    pub parts: Vec<FullPart>,
}

impl FullDecomp {
    pub fn reassemble(&self) -> Result<Poly> {
        let mut out = Poly::zero(self.input.ctx());
        for part in &self.parts {
            out = &out + &part.image()?;
        }
        Ok(out)
    }
}

/// Bidegree split, then the harmonic decomposition of each component, then
/// the symplectic decomposition of each harmonic part.
pub fn full_decompose(f: &Poly) -> Result<FullDecomp> {
    let mut parts = Vec::new();
    for (bd, component) in f.bidegree_split() {
        for hp in harmonic_decompose(&component)?.parts {
            let sd = symplectic_decompose(&hp.h)?;
            for sp in sd.parts {
                parts.push(FullPart { bidegree: bd, j: hp.j, t: sp.t, orientation: sd.orientation, h: sp.h });
            }
        }
    }
    parts.sort_by_key(|p| (p.bidegree, p.j, p.t));
    Ok(FullDecomp { input: f.clone(), parts })
}

/// Conjugation intertwines the two orientations: `conj ∘ E = -Edag ∘ conj`,
/// so the parts of `conj(h)` are `(-1)^t conj(h_t)`.
pub fn conjugate_decomp(d: &SymplecticDecomp) -> SymplecticDecomp {
    let orientation = match d.orientation {
        Orientation::Edag => Orientation::E,
        Orientation::E => Orientation::Edag,
    };
    let parts = d
        .parts
        .iter()
        .map(|p| {
            let h = p.h.conj();
            SymplecticPart { t: p.t, h: if p.t % 2 == 1 { -&h } else { h } }
        })
        .collect();
    SymplecticDecomp { input: d.input.conj(), bidegree: d.bidegree.map(|bd| bd.swapped()), orientation, parts }
}

/// `prod_{i=0}^{n-1} (x + i)`.
fn rising(x: u64, n: u64) -> BigUint {
    (0..n).fold(BigUint::one(), |acc, i| acc * BigUint::from(x + i))
}

/// `dim H^S_{a,b}` for `a >= b` in closed form. The factor
/// `(b+2p-3)!/(2p-3)!` is taken as a rising product so that `p = 1` works.
pub fn dim_hs_closed_form(ctx: &Context, a: u32, b: u32) -> BigUint {
    assert!(a >= b, "closed form is stated for a >= b");
    let p = ctx.p() as u64;
    let (a, b) = (u64::from(a), u64::from(b));
    let num =
        BigUint::from(a - b + 1) * BigUint::from(a + b + 2 * p - 1) * factorial(a + 2 * p - 2) * rising(2 * p - 2, b);
    num / (factorial(2 * p - 1) * factorial(a + 1) * factorial(b))
}

/// `dim H^S_{a,b} = dim P_{a,b} - dim P_{a-1,b-1} - dim P_{a+1,b-1} + dim P_{a,b-2}` for `a >= b`.
pub fn dim_hs_difference(ctx: &Context, a: u32, b: u32) -> BigUint {
    let (a, b) = (i64::from(a), i64::from(b));
    dim_h(ctx, a, b) - dim_h(ctx, a + 1, b - 1)
}

/// The closed form as printed alongside the Weyl product; it carries an
/// extra factor `(2p-1)!` relative to [`dim_hs_closed_form`].
pub fn dim_hs_printed_form(ctx: &Context, a: u32, b: u32) -> BigUint {
    dim_hs_closed_form(ctx, a, b) * factorial(2 * ctx.p() as u64 - 1)
}

/// Weyl dimension of the irreducible `sp(2p)` module with highest weight
/// `(a, b, 0, ..., 0)`; zero when the weight is longer than the rank.
pub fn weyl_dimension(ctx: &Context, a: u32, b: u32) -> BigUint {
    let p = ctx.p();
    let mut lambda = vec![0u64; p.max(2)];
    lambda[0] = u64::from(a);
    lambda[1] = u64::from(b);
    if lambda[p..].iter().any(|&x| x != 0) {
        return BigUint::zero();
    }
    lambda.truncate(p);
    let m: Vec<i64> = (1..=p).map(|i| (p - i + 1) as i64).collect();
    let l: Vec<i64> = lambda.iter().zip(&m).map(|(&x, &mi)| x as i64 + mi).collect();
    let mut d = BigRational::one();
    for i in 0..p {
        for j in i + 1..p {
            d *= BigRational::new((l[i] * l[i] - l[j] * l[j]).into(), (m[i] * m[i] - m[j] * m[j]).into());
        }
        d *= BigRational::new(l[i].into(), m[i].into());
    }
    assert!(d.is_integer(), "Weyl product is not an integer");
    d.to_integer().to_biguint().expect("Weyl product is nonnegative")
}

/// `sum_{j=0}^{min} weyl(hi + j, lo - j)` with `hi, lo` the larger and smaller entry.
pub fn branching_sum(ctx: &Context, a: u32, b: u32) -> BigUint {
    let (hi, lo) = (a.max(b), a.min(b));
    (0..=lo).map(|j| weyl_dimension(ctx, hi + j, lo - j)).sum()
}

/// Dimension data for one bidegree. For `a < b` the symplectic entries refer
/// to `H^S†_{a,b}`, whose highest weight is `(b, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimReport {
    pub p: usize,
    pub a: u32,
    pub b: u32,
    pub dim_h: u64,
    pub dim_hs_formula: u64,
    pub dim_hs_rank: u64,
    pub dim_weyl: u64,
    pub branching_sum: u64,
    pub dim_h_rank: u64,
    pub dim_hs_difference: u64,
    pub printed_closed_form: u64,
}

impl DimReport {
    /// Closed form, kernel rank and Weyl product agree, the branching sum
    /// equals `dim H`, and the harmonic formula matches its rank.
    pub fn consistent(&self) -> bool {
        self.dim_hs_formula == self.dim_hs_rank
            && self.dim_hs_rank == self.dim_weyl
            && self.dim_hs_difference == self.dim_hs_rank
            && self.branching_sum == self.dim_h
            && self.dim_h == self.dim_h_rank
    }

    /// The printed closed form differs from the closed form.
    pub fn printed_form_differs(&self) -> bool {
        self.printed_closed_form != self.dim_hs_formula
    }

    pub const HEADER: [&'static str; 11] = [
        "p",
        "a",
        "b",
        "dim_H",
        "HS_formula",
        "HS_rank",
        "weyl",
        "branching",
        "H_rank",
        "HS_difference",
        "printed_form",
    ];

    pub fn row(&self) -> [u64; 11] {
        [
            self.p as u64,
            u64::from(self.a),
            u64::from(self.b),
            self.dim_h,
            self.dim_hs_formula,
            self.dim_hs_rank,
            self.dim_weyl,
            self.branching_sum,
            self.dim_h_rank,
            self.dim_hs_difference,
            self.printed_closed_form,
        ]
    }
}

pub fn dims(ctx: Context, bd: Bidegree) -> Result<DimReport> {
    let (hi, lo) = (bd.a.max(bd.b), bd.a.min(bd.b));
    let adjoint = bd.a < bd.b;
    Ok(DimReport {
        p: ctx.p(),
        a: bd.a,
        b: bd.b,
        dim_h: to_u64(&dim_h(&ctx, bd.a.into(), bd.b.into()))?,
        dim_hs_formula: to_u64(&dim_hs_closed_form(&ctx, hi, lo))?,
        dim_hs_rank: symplectic_harmonic_basis(ctx, bd, adjoint).len() as u64,
        dim_weyl: to_u64(&weyl_dimension(&ctx, hi, lo))?,
        branching_sum: to_u64(&branching_sum(&ctx, bd.a, bd.b))?,
        dim_h_rank: harmonic_basis(ctx, bd).len() as u64,
        dim_hs_difference: to_u64(&dim_hs_difference(&ctx, hi, lo))?,
        printed_closed_form: to_u64(&dim_hs_printed_form(&ctx, hi, lo))?,
    })
}

/// One subspace comparison in an [`IsoReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCheck {
    pub name: String,
    pub ok: bool,
    pub left_rank: usize,
    pub right_rank: usize,
    /// A vector of one side outside the span of the other, when `ok` is false.
    pub witness: Option<Poly>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsoReport {
    pub checks: Vec<IsoCheck>,
}

impl IsoReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Compare two spans inside the same `P_{a,b}` by mutual membership.
pub fn compare_spans(name: impl Into<String>, left: &GradedBasis, right: &GradedBasis) -> IsoCheck {
    assert_eq!(left.bidegree, right.bidegree, "spans live in different bidegrees");
    let witness = linalg::first_outside(&left.coords, &right.coords)
        .map(|k| right.elements[k].clone())
        .or_else(|| linalg::first_outside(&right.coords, &left.coords).map(|k| left.elements[k].clone()));
    IsoCheck { name: name.into(), ok: witness.is_none(), left_rank: left.rank(), right_rank: right.rank(), witness }
}

fn image_of(basis: &GradedBasis, op: &OpExpr, label: String) -> Result<GradedBasis> {
    basis.map(op, SpaceTag::Image(label))
}

/// The isomorphisms between symplectic kernel spaces:
/// `T[H^S_{a,b}] = H^S†_{b,a}`; for `a > b`, `E^{a-b}[H^S†_{b,a}] = H^S_{a,b}`
/// and `Edag^{a-b}[H^S_{a,b}] = H^S†_{b,a}`; and, with `k = a`, the equalities
/// `Edag^j H^S_{k+j,k-j} = E^j H^S†_{k-j,k+j}` in `P_{k,k}` when `a = b`, and
/// `Edag^{j+1} H^S_{k+1+j,k-j} = E^j H^S†_{k-j,k+1+j}` in `P_{k,k+1}` when `b = a + 1`,
/// for `j <= min(max_j, k)`.
pub fn isomorphism_checks(ctx: Context, bd: Bidegree, max_j: u32) -> Result<IsoReport> {
    let (a, b) = (bd.a, bd.b);
    let mut checks = Vec::new();

    let hs = symplectic_harmonic_basis(ctx, bd, false);
    let hsdag_swapped = symplectic_harmonic_basis(ctx, bd.swapped(), true);
    let t_image = image_of(&hs, &named::twist_t(), format!("T[HS{bd}]"))?;
    checks.push(compare_spans(format!("T[HS{bd}] = HSdag{}", bd.swapped()), &t_image, &hsdag_swapped));

    if a > b {
        let e = named::e().pow(a - b);
        let img = image_of(&hsdag_swapped, &e, format!("E^{}[HSdag{}]", a - b, bd.swapped()))?;
        checks.push(compare_spans(format!("E^{}[HSdag{}] = HS{bd}", a - b, bd.swapped()), &img, &hs));
        let ed = named::edag().pow(a - b);
        let img = image_of(&hs, &ed, format!("Edag^{}[HS{bd}]", a - b))?;
        checks.push(compare_spans(format!("Edag^{}[HS{bd}] = HSdag{}", a - b, bd.swapped()), &img, &hsdag_swapped));
    }

    if a == b {
        let k = a;
        for j in 0..=max_j.min(k) {
            let left_src = symplectic_harmonic_basis(ctx, Bidegree::new(k + j, k - j), false);
            let right_src = symplectic_harmonic_basis(ctx, Bidegree::new(k - j, k + j), true);
            let left = image_of(&left_src, &named::edag().pow(j), format!("Edag^{j}[HS({},{})]", k + j, k - j))?;
            let right = image_of(&right_src, &named::e().pow(j), format!("E^{j}[HSdag({},{})]", k - j, k + j))?;
            checks.push(compare_spans(
                format!("Edag^{j}[HS({},{})] = E^{j}[HSdag({},{})]", k + j, k - j, k - j, k + j),
                &left,
                &right,
            ));
        }
    }

    if b == a + 1 {
        let k = a;
        for j in 0..=max_j.min(k) {
            let left_src = symplectic_harmonic_basis(ctx, Bidegree::new(k + 1 + j, k - j), false);
            let right_src = symplectic_harmonic_basis(ctx, Bidegree::new(k - j, k + 1 + j), true);
            let left =
                image_of(&left_src, &named::edag().pow(j + 1), format!("Edag^{}[HS({},{})]", j + 1, k + 1 + j, k - j))?;
            let right = image_of(&right_src, &named::e().pow(j), format!("E^{j}[HSdag({},{})]", k - j, k + 1 + j))?;
            checks.push(compare_spans(
                format!("Edag^{}[HS({},{})] = E^{j}[HSdag({},{})]", j + 1, k + 1 + j, k - j, k - j, k + 1 + j),
                &left,
                &right,
            ));
        }
    }

    Ok(IsoReport { checks })
}

/// Coordinates of `raising^t (kernel part space)` inside `P_bd`, one summand per `t`.
pub fn summand_bases(ctx: Context, bd: Bidegree, orientation: Orientation) -> Result<Vec<(u32, GradedBasis)>> {
    let mut out = Vec::new();
    for t in 0..=bd.a.min(bd.b) {
        let part_bd = orientation.part_bidegree(bd, t).expect("t bounded by min(a,b)");
        let kernel = kernel_basis(ctx, part_bd, orientation);
        let op = orientation.raising().pow(t);
        let images = kernel.elements.iter().map(|s| op.apply(s)).collect::<Result<Vec<_>>>()?;
        let label = format!("{}^{t}[{}{part_bd}]", orientation.name(), kernel.space);
        out.push((t, GradedBasis::from_polys(ctx, bd, SpaceTag::Image(label), images)?));
    }
    Ok(out)
}

/// `H_{a,b} ∩ Ker(op)` has dimension zero.
pub fn kernel_is_trivial(ctx: Context, bd: Bidegree, op: &OpExpr) -> Result<bool> {
    let h = harmonic_basis(ctx, bd);
    if h.is_empty() {
        return Ok(true);
    }
    let m = op_matrix(op, ctx, bd)?;
    let restricted = m.matrix.mul(&h.coords);
    Ok(restricted.rank() == h.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: usize) -> Context {
        Context::new(p).unwrap()
    }

    fn poly(s: &str, p: usize) -> Poly {
        Poly::parse(s, ctx(p)).unwrap()
    }

    fn part(t: u32, s: &str) -> SymplecticPart {
        SymplecticPart { t, h: poly(s, 2) }
    }

    #[test]
    fn worked_example() {
        let d = symplectic_decompose(&poly("z3^2*zb1^2", 2)).unwrap();
        assert_eq!(d.orientation, Orientation::Edag);
        assert_eq!(
            d.parts,
            vec![
                part(0, "1/3*z3^2*zb1^2 + 1/3*z2^2*zb4^2 + 2/3*z2*z3*zb1*zb4"),
                part(1, "-1/2*z2*z3^2*zb1 - 1/2*z2^2*z3*zb4"),
                part(2, "1/12*z2^2*z3^2"),
            ]
        );
        assert_eq!(d.reassemble().unwrap(), d.input);
    }

    #[test]
    fn conjugated_example_uses_e_orientation() {
        let h = poly("z3^2*zb1^2", 2);
        let d = symplectic_decompose(&h).unwrap();
        let dc = symplectic_decompose_oriented(&h.conj(), Orientation::E).unwrap();
        assert_eq!(dc, conjugate_decomp(&d));
    }

    #[test]
    fn kernel_input_is_single_part() {
        let p1 = poly("1/3*z3^2*zb1^2 + 1/3*z2^2*zb4^2 + 2/3*z2*z3*zb1*zb4", 2);
        let d = symplectic_decompose(&p1).unwrap();
        assert_eq!(d.parts, vec![SymplecticPart { t: 0, h: p1 }]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(symplectic_decompose(&poly("z1*zb1", 1)), Err(Error::NotHarmonic));
        assert_eq!(symplectic_decompose(&poly("z1 + zb2", 1)), Err(Error::NotHomogeneous));
        let err = symplectic_decompose_oriented(&poly("z1^2*zb2", 1), Orientation::E).unwrap_err();
        assert!(matches!(err, Error::InvalidOrientation { a: 2, b: 1, .. }));
    }

    #[test]
    fn oracle_matches_worked_example() {
        let h = poly("z3^2*zb1^2", 2);
        assert_eq!(projection_decompose(&h, Orientation::Edag).unwrap(), symplectic_decompose(&h).unwrap());
    }

    #[test]
    fn kernel_dimensions() {
        assert_eq!(symplectic_harmonic_basis(ctx(2), Bidegree::new(2, 2), false).len(), 14);
        for k in 0..5 {
            assert_eq!(symplectic_harmonic_basis(ctx(1), Bidegree::new(k, 0), false).len(), k as usize + 1);
        }
        assert!(symplectic_harmonic_basis(ctx(2), Bidegree::new(2, 1), true).is_empty());
    }

    #[test]
    fn weyl_values() {
        let c = ctx(2);
        assert_eq!(weyl_dimension(&c, 2, 2), BigUint::from(14u32));
        assert_eq!(weyl_dimension(&c, 3, 1), BigUint::from(35u32));
        assert_eq!(weyl_dimension(&c, 4, 0), BigUint::from(35u32));
        assert_eq!(branching_sum(&c, 2, 2), BigUint::from(84u32));
        assert_eq!(weyl_dimension(&ctx(1), 3, 0), BigUint::from(4u32));
        assert_eq!(weyl_dimension(&ctx(1), 3, 1), BigUint::zero());
        // sp(6) fundamental and adjoint
        assert_eq!(weyl_dimension(&ctx(3), 1, 0), BigUint::from(6u32));
        assert_eq!(weyl_dimension(&ctx(3), 2, 0), BigUint::from(21u32));
        assert_eq!(weyl_dimension(&ctx(3), 1, 1), BigUint::from(14u32));
    }

    #[test]
    fn dim_report_p2_22() {
        let r = dims(ctx(2), Bidegree::new(2, 2)).unwrap();
        assert_eq!((r.dim_h, r.dim_hs_formula, r.dim_hs_rank, r.dim_weyl, r.branching_sum), (84, 14, 14, 14, 84));
        assert_eq!(r.printed_closed_form, 84);
        assert!(r.consistent());
        assert!(r.printed_form_differs());
    }

    #[test]
    fn peel_constants() {
        let bd = Bidegree::new(2, 2);
        let got: Vec<u32> = (0..3).map(|t| peel_constant(Orientation::Edag, bd, t).try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 2, 24]);
        // lowering^t raising^t on the kernel part space is multiplication by the constant
        for (o, bd) in [(Orientation::E, Bidegree::new(1, 3)), (Orientation::Edag, Bidegree::new(3, 2))] {
            for t in 0..=bd.a.min(bd.b) {
                let c = Scalar::from_bigint(peel_constant(o, bd, t).into());
                let part_bd = o.part_bidegree(bd, t).unwrap();
                for s in &kernel_basis(ctx(2), part_bd, o).elements {
                    let back = o.lowering().pow(t).apply(&o.raising().pow(t).apply(s).unwrap()).unwrap();
                    assert_eq!(back, s.scale(&c));
                }
            }
        }
    }

    #[test]
    fn full_decompose_examples() {
        let d = full_decompose(&Poly::r2(ctx(1))).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!((d.parts[0].j, d.parts[0].t), (1, 0));
        assert_eq!(d.parts[0].h, poly("1", 1));

        let f = poly("z1 + z1*zb1", 1);
        let d = full_decompose(&f).unwrap();
        assert_eq!(d.reassemble().unwrap(), f);
        let summary: Vec<_> = d.parts.iter().map(|p| (p.bidegree, p.j, p.t, p.h.to_string())).collect();
        assert_eq!(
            summary,
            vec![
                (Bidegree::new(1, 0), 0, 0, "z1".to_string()),
                (Bidegree::new(1, 1), 0, 1, "-1/2*z1*z2".to_string()),
                (Bidegree::new(1, 1), 1, 0, "1/2".to_string()),
            ]
        );
    }

    #[test]
    fn isomorphisms_at_22_and_21() {
        let r = isomorphism_checks(ctx(2), Bidegree::new(2, 2), 2).unwrap();
        assert!(r.all_ok(), "{r:?}");
        let r = isomorphism_checks(ctx(2), Bidegree::new(2, 1), 0).unwrap();
        assert!(r.all_ok(), "{r:?}");
        assert!(r.checks.iter().any(|c| c.name.starts_with("E^1")));
    }

    #[test]
    fn span_mismatch_reports_witness() {
        let c = ctx(1);
        let bd = Bidegree::new(1, 0);
        let x = GradedBasis::from_polys(c, bd, SpaceTag::Image("x".into()), vec![poly("z1", 1)]).unwrap();
        let y = GradedBasis::from_polys(c, bd, SpaceTag::Image("y".into()), vec![poly("z2", 1)]).unwrap();
        let check = compare_spans("x = y", &x, &y);
        assert!(!check.ok);
        assert_eq!(check.witness, Some(poly("z2", 1)));
    }
}
