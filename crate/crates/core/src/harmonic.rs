//! Bases of bidegree pieces and the classical `|z|^2` Fischer decomposition.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, SparseMatrix};
use crate::ops::{monomial_index, named, op_matrix};
use crate::poly::{dim_p, monomials, Bidegree, Context, Poly};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceTag {
    /// All of `P_{a,b}`.
    P,
    /// `Ker Laplace`.
    H,
    /// `Ker Laplace ∩ Ker E`.
    HS,
    /// `Ker Laplace ∩ Ker Edag`.
    HSdag,
    /// Image of some other basis, described by the string.
    Image(String),
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceTag::P => f.write_str("P"),
            SpaceTag::H => f.write_str("H"),
            SpaceTag::HS => f.write_str("HS"),
            SpaceTag::HSdag => f.write_str("HSdag"),
            SpaceTag::Image(s) => f.write_str(s),
        }
    }
}

/// An ordered basis of a subspace of `P_{a,b}`. Column `k` of `coords` holds
/// the coordinates of `elements[k]` in the canonical monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub ctx: Context,
    pub bidegree: Bidegree,
    pub space: SpaceTag,
    pub elements: Vec<Poly>,
    pub coords: SparseMatrix,
}

impl GradedBasis {
    pub fn from_coords(ctx: Context, bidegree: Bidegree, space: SpaceTag, coords: SparseMatrix) -> Self {
        let basis = monomials(&ctx, bidegree);
        debug_assert_eq!(coords.nrows(), basis.len());
        let elements = coords.columns().iter().map(|c| Poly::from_coordinates(ctx, &basis, c)).collect();
        GradedBasis { ctx, bidegree, space, elements, coords }
    }

    /// Coordinates of the given polynomials; each must lie in `P_bidegree`.
    pub fn from_polys(ctx: Context, bidegree: Bidegree, space: SpaceTag, polys: Vec<Poly>) -> Result<Self> {
        let coords = coordinate_matrix(&ctx, bidegree, &polys)?;
        Ok(GradedBasis { ctx, bidegree, space, elements: polys, coords })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.coords.rank()
    }

    /// Basis of the image under `op`, expressed in the target bidegree.
    pub fn map(&self, op: &crate::ops::OpExpr, space: SpaceTag) -> Result<GradedBasis> {
        let target = op
            .bidegree_map()
            .ok_or(Error::NoBidegreeShift)?
            .apply(self.bidegree)
            .ok_or_else(|| Error::Dimension(format!("{op} sends {} below degree zero", self.bidegree)))?;
        let images = self.elements.iter().map(|e| op.apply(e)).collect::<Result<Vec<_>>>()?;
        GradedBasis::from_polys(self.ctx, target, space, images)
    }

    /// The span contains `f` (assumed to have this basis' bidegree or be zero).
    pub fn contains(&self, f: &Poly) -> Result<bool> {
        let coords = coordinate_matrix(&self.ctx, self.bidegree, std::slice::from_ref(f))?;
        Ok(linalg::in_column_space(&self.coords, coords.col(0)))
    }
}

pub fn coordinate_matrix(ctx: &Context, bd: Bidegree, polys: &[Poly]) -> Result<SparseMatrix> {
    let basis = monomials(ctx, bd);
    let index = monomial_index(&basis);
    let cols = polys
        .iter()
        .map(|f| f.coordinates(&index).ok_or_else(|| Error::Internal(format!("{f} does not lie in P{bd}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_columns(basis.len(), cols))
}

type MemoKey = (usize, Bidegree, SpaceTag);

fn memo() -> &'static Mutex<HashMap<MemoKey, Arc<GradedBasis>>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, Arc<GradedBasis>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Look up a basis, building it outside the lock on a miss. Concurrent
/// builders produce identical values and the first insert wins.
pub(crate) fn cached(
    ctx: &Context,
    bd: Bidegree,
    space: SpaceTag,
    build: impl FnOnce() -> Result<GradedBasis>,
) -> Result<Arc<GradedBasis>> {
    let key = (ctx.p(), bd, space);
    if let Some(b) = memo().lock().expect("basis memo poisoned").get(&key) {
        return Ok(Arc::clone(b));
    }
    let built = Arc::new(build()?);
    let mut guard = memo().lock().expect("basis memo poisoned");
    Ok(Arc::clone(guard.entry(key).or_insert(built)))
}

/// Kernel of an operator matrix as a basis of the source piece.
pub fn nullspace_basis(ctx: Context, src: Bidegree, space: SpaceTag, m: &SparseMatrix) -> GradedBasis {
    let kernel = linalg::nullspace(m);
    GradedBasis::from_coords(ctx, src, space, SparseMatrix::from_columns(m.ncols(), kernel))
}

pub fn monomial_basis(ctx: Context, bd: Bidegree) -> Arc<GradedBasis> {
    cached(&ctx, bd, SpaceTag::P, || {
        let n = monomials(&ctx, bd).len();
        Ok(GradedBasis::from_coords(ctx, bd, SpaceTag::P, SparseMatrix::identity(n)))
    })
    .expect("monomial basis cannot fail")
}

/// Basis of `H_{a,b} = Ker Laplace ∩ P_{a,b}`.
pub fn harmonic_basis(ctx: Context, bd: Bidegree) -> Arc<GradedBasis> {
    cached(&ctx, bd, SpaceTag::H, || {
        let m = op_matrix(&named::laplace(), ctx, bd)?;
        Ok(nullspace_basis(ctx, bd, SpaceTag::H, &m.matrix))
    })
    .expect("Laplace has a fixed bidegree shift")
}

/// `dim H_{a,b} = dim P_{a,b} - dim P_{a-1,b-1}`.
pub fn dim_h(ctx: &Context, a: i64, b: i64) -> BigUint {
    if a < 0 || b < 0 {
        return BigUint::zero();
    }
    dim_p(ctx, a, b) - dim_p(ctx, a - 1, b - 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicPart {
    /// Power of `|z|^2`.
    pub j: u32,
    /// Harmonic of bidegree `(a-j, b-j)`.
    pub h: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicDecomp {
    pub input: Poly,
    /// `None` for the zero polynomial.
    pub bidegree: Option<Bidegree>,
    /// Nonzero parts in increasing `j`.
    pub parts: Vec<HarmonicPart>,
}

impl HarmonicDecomp {
    pub fn reassemble(&self) -> Poly {
        let ctx = self.input.ctx();
        let r2 = Poly::r2(ctx);
        self.parts.iter().fold(Poly::zero(ctx), |acc, part| &acc + &(&r2.pow(part.j) * &part.h))
    }
}

fn homogeneous_input(f: &Poly) -> Result<Option<Bidegree>> {
    if f.is_zero() {
        return Ok(None);
    }
    f.homogeneous_bidegree().map(Some).ok_or(Error::NotHomogeneous)
}

/// Columns `|z|^{2j} H_{a-j,b-j}` for `j = 0..=min(a,b)`, concatenated in that order.
fn fischer_frame(ctx: Context, bd: Bidegree) -> Result<Arc<GradedBasis>> {
    cached(&ctx, bd, SpaceTag::Image("fischer-frame".into()), || {
        let r2 = Poly::r2(ctx);
        let mut polys = Vec::new();
        for j in 0..=bd.a.min(bd.b) {
            let lower = harmonic_basis(ctx, Bidegree::new(bd.a - j, bd.b - j));
            let rj = r2.pow(j);
            polys.extend(lower.elements.iter().map(|h| &rj * h));
        }
        GradedBasis::from_polys(ctx, bd, SpaceTag::Image("fischer-frame".into()), polys)
    })
}

/// `f = sum_j |z|^{2j} h_j` with `h_j` harmonic, by one exact solve against
/// the concatenated bases.
pub fn harmonic_decompose(f: &Poly) -> Result<HarmonicDecomp> {
    let ctx = f.ctx();
    let Some(bd) = homogeneous_input(f)? else {
        return Ok(HarmonicDecomp { input: f.clone(), bidegree: None, parts: Vec::new() });
    };
    let frame = fischer_frame(ctx, bd)?;
    let rhs = coordinate_matrix(&ctx, bd, std::slice::from_ref(f))?;
    let x = linalg::solve(&frame.coords, rhs.col(0))
        .ok_or_else(|| Error::Internal(format!("harmonic decomposition of {f} is inconsistent")))?;

    let mut parts = Vec::new();
    let mut offset = 0;
    for j in 0..=bd.a.min(bd.b) {
        let lower = harmonic_basis(ctx, Bidegree::new(bd.a - j, bd.b - j));
        let mut h = Poly::zero(ctx);
        for (k, e) in lower.elements.iter().enumerate() {
            let c = &x[offset + k];
            if !c.is_zero() {
                h = &h + &e.scale(c);
            }
        }
        offset += lower.len();
        if !h.is_zero() {
            parts.push(HarmonicPart { j, h });
        }
    }
    Ok(HarmonicDecomp { input: f.clone(), bidegree: Some(bd), parts })
}

/// `Laplace^k (|z|^{2j} h) = c |z|^{2(j-k)} h` for `h` harmonic of total degree `n`
/// in real dimension `m`; returns `c`.
pub fn laplace_power_constant(j: u32, k: u32, n: u32, m: u32) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| {
        let s = u64::from(j - i);
        acc * BigUint::from(2 * s * (2 * u64::from(n) + u64::from(m) + 2 * s - 2))
    })
}

/// Same decomposition as [`harmonic_decompose`], computed top-down with
/// powers of the Laplacian instead of a linear solve.
pub fn harmonic_decompose_iterated(f: &Poly) -> Result<HarmonicDecomp> {
    let ctx = f.ctx();
    let Some(bd) = homogeneous_input(f)? else {
        return Ok(HarmonicDecomp { input: f.clone(), bidegree: None, parts: Vec::new() });
    };
    let m = ctx.real_dim() as u32;
    let lap = named::laplace();
    let r2 = Poly::r2(ctx);
    let mut rest = f.clone();
    let mut parts = Vec::new();
    for j in (0..=bd.a.min(bd.b)).rev() {
        let n = bd.total() - 2 * j;
        let c = laplace_power_constant(j, j, n, m);
        let c = Scalar::from_bigint(c.into());
        let h = lap.clone().pow(j).apply(&rest)?.scale(&c.inv()?);
        if !h.is_zero() {
            rest = &rest - &(&r2.pow(j) * &h);
            parts.push(HarmonicPart { j, h });
        }
    }
    if !rest.is_zero() {
        return Err(Error::Internal(format!("iterated harmonic decomposition left {rest}")));
    }
    parts.reverse();
    Ok(HarmonicDecomp { input: f.clone(), bidegree: Some(bd), parts })
}

pub fn is_harmonic(f: &Poly) -> Result<bool> {
    Ok(named::laplace().apply(f)?.is_zero())
}

pub(crate) fn to_u64(n: &BigUint) -> Result<u64> {
    n.to_u64().ok_or_else(|| Error::Internal(format!("dimension {n} exceeds u64")))
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

    #[test]
    fn laplace_kernel_on_p11() {
        let b = harmonic_basis(ctx(1), Bidegree::new(1, 1));
        assert_eq!(b.len(), 3);
        for s in ["z1*zb2", "z2*zb1", "z1*zb1 - z2*zb2"] {
            assert!(b.contains(&poly(s, 1)).unwrap(), "{s}");
        }
        assert!(!b.contains(&poly("z1*zb1", 1)).unwrap());
    }

    #[test]
    fn harmonic_dimensions() {
        assert_eq!(harmonic_basis(ctx(2), Bidegree::new(2, 2)).len(), 84);
        for k in 0..5 {
            assert_eq!(harmonic_basis(ctx(1), Bidegree::new(k, 0)).len(), k as usize + 1);
        }
        assert_eq!(dim_h(&ctx(2), 2, 2), BigUint::from(84u32));
    }

    #[test]
    fn decompose_z1_zb1() {
        let d = harmonic_decompose(&poly("z1*zb1", 1)).unwrap();
        assert_eq!(d.parts.len(), 2);
        assert_eq!(d.parts[0], HarmonicPart { j: 0, h: poly("1/2*z1*zb1 - 1/2*z2*zb2", 1) });
        assert_eq!(d.parts[1], HarmonicPart { j: 1, h: poly("1/2", 1) });
        assert_eq!(d.reassemble(), d.input);
    }

    #[test]
    fn harmonic_input_is_its_own_part() {
        let h = poly("z3^2*zb1^2", 2);
        let d = harmonic_decompose(&h).unwrap();
        assert_eq!(d.parts, vec![HarmonicPart { j: 0, h }]);
    }

    #[test]
    fn zero_and_inhomogeneous_inputs() {
        let d = harmonic_decompose(&Poly::zero(ctx(1))).unwrap();
        assert!(d.parts.is_empty());
        assert_eq!(harmonic_decompose(&poly("z1 + zb1", 1)), Err(Error::NotHomogeneous));
    }

    #[test]
    fn iterated_agrees_on_small_cases() {
        for s in ["z1*zb1", "z1^2*zb1*zb2 + 3*z2*z1*zb2^2", "(1+2*i)*z1*z2*zb1*zb2"] {
            let f = poly(s, 1);
            assert_eq!(harmonic_decompose(&f).unwrap(), harmonic_decompose_iterated(&f).unwrap());
        }
    }

    #[test]
    fn laplace_power_constant_matches_direct_application() {
        let c = ctx(1);
        let h = poly("z1*zb2", 1);
        let f = &Poly::r2(c).pow(2) * &h;
        let lap2 = named::laplace().pow(2).apply(&f).unwrap();
        let k = laplace_power_constant(2, 2, 2, 4);
        assert_eq!(lap2, h.scale(&Scalar::from_bigint(k.into())));
    }
}
