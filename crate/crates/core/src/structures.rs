//! Complex and quaternionic structures as exact matrices: the embeddings
//! `phi: M_n(C) -> M_2n(R)` and `psi: M_p(H) -> M_2p(C)`, the structures
//! `I`, `J`, `K = IJ` on `R^{4p}`, and the Lie algebra membership predicates.
//!
//! Real coordinates are interleaved, `X = (x_1, y_1, x_2, y_2, ...)` with
//! `z_j = x_j + i y_j`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Context, Poly};
use crate::scalar::Scalar;

/// Dense matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RealMatrix = Matrix<BigRational>;
pub type ComplexMatrix = Matrix<Scalar>;
pub type QuaternionMatrix = Matrix<Quaternion>;

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { rows, cols, data }
    }

    /// Entries drawn from `f` in row-major order.
    pub fn from_fn_mut(rows: usize, cols: usize, mut f: impl FnMut() -> T) -> Self {
        let data = (0..rows * cols).map(|_| f()).collect();
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let nrows = rows.len();
        Ok(Matrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    pub fn try_mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc + self.get(i, k).clone() * other.get(k, j).clone())
        }))
    }
}

impl<T> Matrix<T>
where
    T: Clone + Add<Output = T>,
{
    pub fn try_add(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("shape mismatch in addition".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }
}

impl<T: Clone + Neg<Output = T>> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: Zero + PartialEq> Matrix<T> {
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }
}

impl QuaternionMatrix {
    /// Quaternionic conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }
}

/// `q = x + y i + u j + v k = z + w j` with `z = x + y i`, `w = u + v i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quaternion {
    pub x: BigRational,
    pub y: BigRational,
    pub u: BigRational,
    pub v: BigRational,
}

impl Quaternion {
    pub fn new(x: BigRational, y: BigRational, u: BigRational, v: BigRational) -> Self {
        Quaternion { x, y, u, v }
    }

    pub fn from_ints(x: i64, y: i64, u: i64, v: i64) -> Self {
        let r = |n: i64| BigRational::from_integer(n.into());
        Quaternion::new(r(x), r(y), r(u), r(v))
    }

    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.x.clone(), -&self.y, -&self.u, -&self.v)
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.x * &self.x + &self.y * &self.y + &self.u * &self.u + &self.v * &self.v
    }

    /// The pair `(z, w)` with `q = z + w j`.
    pub fn complex_pair(&self) -> (Scalar, Scalar) {
        (Scalar::new(self.x.clone(), self.y.clone()), Scalar::new(self.u.clone(), self.v.clone()))
    }
}

impl Zero for Quaternion {
    fn zero() -> Self {
        Quaternion::from_ints(0, 0, 0, 0)
    }
    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.u.is_zero() && self.v.is_zero()
    }
}

impl One for Quaternion {
    fn one() -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.x + o.x, self.y + o.y, self.u + o.u, self.v + o.v)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.x - o.x, self.y - o.y, self.u - o.u, self.v - o.v)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.x, -self.y, -self.u, -self.v)
    }
}

/// Hamilton product, `i^2 = j^2 = k^2 = ijk = -1`.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&self.x, &self.y, &self.u, &self.v);
        let (a2, b2, c2, d2) = (&o.x, &o.y, &o.u, &o.v);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.x, self.y, self.u, self.v)
    }
}

fn require_square<T: Clone>(m: &Matrix<T>, what: &str) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::Dimension(format!("{what} needs a square matrix, got {}x{}", m.rows, m.cols)))
    }
}

/// `phi`: each entry `a + b i` becomes the block `[[a, b], [-b, a]]`.
pub fn embed_complex(a: &ComplexMatrix) -> Result<RealMatrix> {
    require_square(a, "embed_complex")?;
    let n = a.rows;
    Ok(Matrix::from_fn(2 * n, 2 * n, |i, j| {
        let x = a.get(i / 2, j / 2);
        match (i % 2, j % 2) {
            (0, 0) | (1, 1) => x.re().clone(),
            (0, 1) => x.im().clone(),
            _ => -x.im().clone(),
        }
    }))
}

/// `psi`: each entry `z + w j` becomes the block `[[z, w], [-conj(w), conj(z)]]`.
pub fn embed_quaternion(a: &QuaternionMatrix) -> Result<ComplexMatrix> {
    require_square(a, "embed_quaternion")?;
    let n = a.rows;
    Ok(Matrix::from_fn(2 * n, 2 * n, |i, j| {
        let (z, w) = a.get(i / 2, j / 2).complex_pair();
        match (i % 2, j % 2) {
            (0, 0) => z,
            (0, 1) => w,
            (1, 0) => -w.conj(),
            _ => z.conj(),
        }
    }))
}

/// `diag([[0, 1], [-1, 0]])` of size `2n`, i.e. `phi(i E_n)`.
pub fn complex_structure(n: usize) -> RealMatrix {
    let r = |k: i64| BigRational::from_integer(k.into());
    Matrix::from_fn(2 * n, 2 * n, |i, j| {
        if i / 2 != j / 2 {
            r(0)
        } else {
            match (i % 2, j % 2) {
                (0, 1) => r(1),
                (1, 0) => r(-1),
                _ => r(0),
            }
        }
    })
}

/// The second complex structure on `R^{4p}`, block diagonal in 4x4 blocks.
pub fn quaternionic_structure(p: usize) -> RealMatrix {
    const BLOCK: [[i64; 4]; 4] = [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]];
    Matrix::from_fn(4 * p, 4 * p, |i, j| {
        let x = if i / 4 == j / 4 { BLOCK[i % 4][j % 4] } else { 0 };
        BigRational::from_integer(x.into())
    })
}

/// `(I, J, K)` on `R^{4p}` with `K = I J`.
pub fn structure_matrices(ctx: &Context) -> (RealMatrix, RealMatrix, RealMatrix) {
    let i = complex_structure(2 * ctx.p());
    let j = quaternionic_structure(ctx.p());
    let k = i.try_mul(&j).expect("square matrices of equal size");
    (i, j, k)
}

/// `A + A* = 0` for a quaternionic matrix.
pub fn is_skew_symplectic(a: &QuaternionMatrix) -> bool {
    a.is_square() && a.try_add(&a.adjoint()).is_ok_and(|s| s.is_zero())
}

/// `M + M^H = 0` for a complex matrix.
pub fn is_skew_hermitian(m: &ComplexMatrix) -> bool {
    m.is_square() && m.try_add(&m.adjoint()).is_ok_and(|s| s.is_zero())
}

/// `M^T I + I M = 0` with `I` the standard complex structure of matching size.
pub fn satisfies_symplectic_relation(m: &ComplexMatrix) -> bool {
    if !m.is_square() || !m.rows.is_multiple_of(2) {
        return false;
    }
    let i = complex_structure(m.rows / 2).map(|x| Scalar::real(x.clone()));
    let lhs = m.transpose().try_mul(&i).expect("square");
    let rhs = i.try_mul(m).expect("square");
    lhs.try_add(&rhs).is_ok_and(|s| s.is_zero())
}

/// The real matrix commutes with the standard complex structure.
pub fn is_complex_linear(b: &RealMatrix) -> bool {
    if !b.is_square() || !b.rows.is_multiple_of(2) {
        return false;
    }
    let i = complex_structure(b.rows / 2);
    let bi = b.try_mul(&i).expect("square");
    let ib = i.try_mul(b).expect("square");
    bi == ib
}

/// Images of `(z_1..z_{2p})` and `(zb_1..zb_{2p})` under `F -> F ∘ M^{-1}` for an
/// orthogonal `M` on `R^{4p}`; feed them to [`Poly::substitute`].
pub fn induced_substitution(ctx: Context, m: &RealMatrix) -> Result<(Vec<Poly>, Vec<Poly>)> {
    let n = ctx.real_dim();
    if (m.rows, m.cols) != (n, n) {
        return Err(Error::Dimension(format!("expected {n}x{n}, got {}x{}", m.rows, m.cols)));
    }
    let mt = m.transpose();
    if mt.try_mul(m)? != Matrix::identity(n) {
        return Err(Error::Dimension("matrix is not orthogonal".into()));
    }
    let half = Scalar::ratio(1, 2);
    // X_{2j-1} = (z_j + zb_j)/2, X_{2j} = -i (z_j - zb_j)/2
    let real_coord = |s: usize| -> Poly {
        let j = s / 2 + 1;
        let (z, zb) = (Poly::z(ctx, j), Poly::zb(ctx, j));
        if s.is_multiple_of(2) {
            (&z + &zb).scale(&half)
        } else {
            (&z - &zb).scale(&(-Scalar::i() * half.clone()))
        }
    };
    let coords: Vec<Poly> = (0..n).map(real_coord).collect();
    // (M^{-1} X)_r = sum_s M^T[r][s] X_s
    let pulled = |r: usize| -> Poly {
        (0..n).fold(Poly::zero(ctx), |acc, s| {
            let c = mt.get(r, s);
            if c.is_zero() {
                acc
            } else {
                &acc + &coords[s].scale(&Scalar::real(c.clone()))
            }
        })
    };
    let mut zs = Vec::with_capacity(2 * ctx.p());
    for j in 0..ctx.nvars() {
        let x = pulled(2 * j);
        let y = pulled(2 * j + 1);
        zs.push(&x + &y.scale(&Scalar::i()));
    }
    let zbs = zs.iter().map(Poly::conj).collect();
    Ok((zs, zbs))
}
