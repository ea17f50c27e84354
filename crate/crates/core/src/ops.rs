//! Linear operators on polynomials as lazy expression trees.
//!
//! The generators are the coordinate derivatives and multiplications, the
//! Laplacian `4 sum_j d_zj d_zbj`, `|z|^2`, the two complex Euler operators,
//! the twisted pair
//!
//! ```text
//! E    = sum_k  z_{2k-1} d/dzb_{2k} - z_{2k} d/dzb_{2k-1}
//! Edag = sum_k zb_{2k}   d/dz_{2k-1} - zb_{2k-1} d/dz_{2k}
//! ```
//!
//! and the substitutions `T`, `K`, `I` induced by the three complex
//! structures.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use crate::error::{Error, ParseError, Result};
use crate::linalg::SparseMatrix;
use crate::poly::{monomials, Bidegree, Context, Monomial, Poly, Var};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Dz(usize),
    Dzb(usize),
    MulZ(usize),
    MulZb(usize),
    Laplace,
    R2,
    EulerZ,
    EulerZb,
    E,
    Edag,
    TwistT,
    TwistK,
    TwistI,
    Identity,
}

impl Generator {
    pub fn bidegree_map(&self) -> BidegreeMap {
        use Generator::*;
        match self {
            Dz(_) => BidegreeMap::shift(-1, 0),
            Dzb(_) => BidegreeMap::shift(0, -1),
            MulZ(_) => BidegreeMap::shift(1, 0),
            MulZb(_) => BidegreeMap::shift(0, 1),
            Laplace => BidegreeMap::shift(-1, -1),
            R2 => BidegreeMap::shift(1, 1),
            E => BidegreeMap::shift(1, -1),
            Edag => BidegreeMap::shift(-1, 1),
            TwistT | TwistK => BidegreeMap::SWAP,
            EulerZ | EulerZb | TwistI | Identity => BidegreeMap::IDENTITY,
        }
    }

    fn name(&self) -> String {
        use Generator::*;
        match self {
            Dz(j) => format!("Dz{j}"),
            Dzb(j) => format!("Dzb{j}"),
            MulZ(j) => format!("Z{j}"),
            MulZb(j) => format!("Zb{j}"),
            Laplace => "Laplace".into(),
            R2 => "R2".into(),
            EulerZ => "EulerZ".into(),
            EulerZb => "EulerZb".into(),
            E => "E".into(),
            Edag => "Edag".into(),
            TwistT => "T".into(),
            TwistK => "K".into(),
            TwistI => "I".into(),
            Identity => "Id".into(),
        }
    }

    fn from_name(name: &str) -> Option<Generator> {
        use Generator::*;
        let indexed = |prefix: &str| -> Option<usize> {
            let rest = name.strip_prefix(prefix)?;
            (!rest.is_empty() && rest.bytes().all(|c| c.is_ascii_digit())).then(|| rest.parse().ok()).flatten()
        };
        Some(match name {
            "Laplace" => Laplace,
            "R2" => R2,
            "EulerZ" => EulerZ,
            "EulerZb" => EulerZb,
            "E" => E,
            "Edag" => Edag,
            "T" => TwistT,
            "K" => TwistK,
            "I" => TwistI,
            "Id" => Identity,
            _ => {
                if let Some(j) = indexed("Dzb") {
                    Dzb(j)
                } else if let Some(j) = indexed("Dz") {
                    Dz(j)
                } else if let Some(j) = indexed("Zb") {
                    MulZb(j)
                } else {
                    let j = indexed("Z")?;
                    MulZ(j)
                }
            }
        })
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        use Generator::*;
        let ctx = f.ctx();
        let p = ctx.p();
        match *self {
            Dz(j) => f.derivative(Var::Z(j)),
            Dzb(j) => f.derivative(Var::Zb(j)),
            MulZ(j) => f.times_var(Var::Z(j)),
            MulZb(j) => f.times_var(Var::Zb(j)),
            Laplace => {
                let mut out = Poly::zero(ctx);
                for j in 1..=ctx.nvars() {
                    out = &out + &f.derivative(Var::Zb(j))?.derivative(Var::Z(j))?;
                }
                Ok(out.scale(&Scalar::from_int(4)))
            }
            R2 => Ok(f * &Poly::r2(ctx)),
            EulerZ => {
                let fields: Vec<_> = (1..=ctx.nvars()).map(|j| (1, Var::Z(j), Var::Z(j))).collect();
                Ok(f.vector_field(&fields))
            }
            EulerZb => {
                let fields: Vec<_> = (1..=ctx.nvars()).map(|j| (1, Var::Zb(j), Var::Zb(j))).collect();
                Ok(f.vector_field(&fields))
            }
            E => {
                let fields: Vec<_> = (1..=p)
                    .flat_map(|k| [(1, Var::Z(2 * k - 1), Var::Zb(2 * k)), (-1, Var::Z(2 * k), Var::Zb(2 * k - 1))])
                    .collect();
                Ok(f.vector_field(&fields))
            }
            Edag => {
                let fields: Vec<_> = (1..=p)
                    .flat_map(|k| [(1, Var::Zb(2 * k), Var::Z(2 * k - 1)), (-1, Var::Zb(2 * k - 1), Var::Z(2 * k))])
                    .collect();
                Ok(f.vector_field(&fields))
            }
            TwistT => Ok(f.permute_vars(subst_t)),
            TwistK => Ok(f.permute_vars(subst_k)),
            TwistI => Ok(f.permute_vars(subst_i)),
            Identity => Ok(f.clone()),
        }
    }
}

/// `(z_{2k-1}, z_{2k}, zb_{2k-1}, zb_{2k}) -> (-zb_{2k}, zb_{2k-1}, -z_{2k}, z_{2k-1})`.
fn subst_t(v: Var) -> (Scalar, Var) {
    let one = Scalar::one();
    match v {
        Var::Z(j) if j % 2 == 1 => (-one, Var::Zb(j + 1)),
        Var::Z(j) => (one, Var::Zb(j - 1)),
        Var::Zb(j) if j % 2 == 1 => (-one, Var::Z(j + 1)),
        Var::Zb(j) => (one, Var::Z(j - 1)),
    }
}

/// `(z_{2k-1}, z_{2k}, zb_{2k-1}, zb_{2k}) -> (i zb_{2k}, -i zb_{2k-1}, -i z_{2k}, i z_{2k-1})`.
fn subst_k(v: Var) -> (Scalar, Var) {
    let i = Scalar::i();
    match v {
        Var::Z(j) if j % 2 == 1 => (i, Var::Zb(j + 1)),
        Var::Z(j) => (-i, Var::Zb(j - 1)),
        Var::Zb(j) if j % 2 == 1 => (-i, Var::Z(j + 1)),
        Var::Zb(j) => (i, Var::Z(j - 1)),
    }
}

/// `z_j -> i z_j`, `zb_j -> -i zb_j`.
fn subst_i(v: Var) -> (Scalar, Var) {
    match v {
        Var::Z(_) => (Scalar::i(), v),
        Var::Zb(_) => (-Scalar::i(), v),
    }
}

/// Affine action of an operator on bidegrees: optional swap, then a shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BidegreeMap {
    pub swap: bool,
    pub da: i64,
    pub db: i64,
}

impl BidegreeMap {
    pub const IDENTITY: BidegreeMap = BidegreeMap { swap: false, da: 0, db: 0 };
    pub const SWAP: BidegreeMap = BidegreeMap { swap: true, da: 0, db: 0 };

    pub const fn shift(da: i64, db: i64) -> Self {
        BidegreeMap { swap: false, da, db }
    }

    /// `None` when the image would have a negative entry (the target space is zero).
    pub fn apply(&self, bd: Bidegree) -> Option<Bidegree> {
        let src = if self.swap { bd.swapped() } else { bd };
        src.shifted(self.da, self.db)
    }

    /// `self` after `inner`.
    pub fn after(&self, inner: &BidegreeMap) -> BidegreeMap {
        let (ia, ib) = if self.swap { (inner.db, inner.da) } else { (inner.da, inner.db) };
        BidegreeMap { swap: self.swap ^ inner.swap, da: ia + self.da, db: ib + self.db }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpExpr {
    Gen(Generator),
    Scaled(Scalar, Box<OpExpr>),
    Sum(Vec<OpExpr>),
    /// `outer ∘ inner`: `inner` is applied first.
    Compose(Box<OpExpr>, Box<OpExpr>),
    Power(Box<OpExpr>, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComposeKind {
    Compose,
    Sum,
    Commutator,
    Anticommutator,
    Power(u32),
}

impl From<Generator> for OpExpr {
    fn from(g: Generator) -> Self {
        OpExpr::Gen(g)
    }
}

impl OpExpr {
    pub fn identity() -> Self {
        OpExpr::Gen(Generator::Identity)
    }

    /// Multiplication by a constant.
    pub fn constant(c: Scalar) -> Self {
        OpExpr::Scaled(c, Box::new(OpExpr::identity()))
    }

    pub fn scale(self, c: Scalar) -> Self {
        OpExpr::Scaled(c, Box::new(self))
    }

    pub fn pow(self, n: u32) -> Self {
        OpExpr::Power(Box::new(self), n)
    }

    pub fn combine(a: OpExpr, b: OpExpr, kind: ComposeKind) -> OpExpr {
        match kind {
            ComposeKind::Compose => a * b,
            ComposeKind::Sum => a + b,
            ComposeKind::Commutator => commutator(&a, &b),
            ComposeKind::Anticommutator => anticommutator(&a, &b),
            ComposeKind::Power(n) => a.pow(n),
        }
    }

    /// The bidegree action, if every branch of the tree agrees on one.
    pub fn bidegree_map(&self) -> Option<BidegreeMap> {
        match self {
            OpExpr::Gen(g) => Some(g.bidegree_map()),
            OpExpr::Scaled(_, op) => op.bidegree_map(),
            OpExpr::Sum(ops) => {
                let mut maps = ops.iter().map(OpExpr::bidegree_map);
                let first = maps.next()??;
                maps.all(|m| m == Some(first)).then_some(first)
            }
            OpExpr::Compose(outer, inner) => Some(outer.bidegree_map()?.after(&inner.bidegree_map()?)),
            OpExpr::Power(op, n) => {
                let m = op.bidegree_map()?;
                Some((0..*n).fold(BidegreeMap::IDENTITY, |acc, _| m.after(&acc)))
            }
        }
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        match self {
            OpExpr::Gen(g) => g.apply(f),
            OpExpr::Scaled(c, op) => Ok(op.apply(f)?.scale(c)),
            OpExpr::Sum(ops) => {
                let mut out = Poly::zero(f.ctx());
                for op in ops {
                    out = &out + &op.apply(f)?;
                }
                Ok(out)
            }
            OpExpr::Compose(outer, inner) => outer.apply(&inner.apply(f)?),
            OpExpr::Power(op, n) => {
                let mut g = f.clone();
                for _ in 0..*n {
                    g = op.apply(&g)?;
                }
                Ok(g)
            }
        }
    }

    pub fn parse(text: &str) -> Result<OpExpr> {
        let mut p = OpParser { src: text.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(ParseError::new(p.pos, "unexpected input in operator").into());
        }
        Ok(e)
    }
}

pub fn commutator(a: &OpExpr, b: &OpExpr) -> OpExpr {
    a.clone() * b.clone() - b.clone() * a.clone()
}

pub fn anticommutator(a: &OpExpr, b: &OpExpr) -> OpExpr {
    a.clone() * b.clone() + b.clone() * a.clone()
}

impl Add for OpExpr {
    type Output = OpExpr;
    fn add(self, rhs: OpExpr) -> OpExpr {
        match self {
            OpExpr::Sum(mut terms) => {
                terms.push(rhs);
                OpExpr::Sum(terms)
            }
            lhs => OpExpr::Sum(vec![lhs, rhs]),
        }
    }
}

impl Neg for OpExpr {
    type Output = OpExpr;
    fn neg(self) -> OpExpr {
        self.scale(-Scalar::one())
    }
}

impl Sub for OpExpr {
    type Output = OpExpr;
    fn sub(self, rhs: OpExpr) -> OpExpr {
        self + (-rhs)
    }
}

/// Composition: `(a * b)(f) = a(b(f))`.
impl Mul for OpExpr {
    type Output = OpExpr;
    fn mul(self, rhs: OpExpr) -> OpExpr {
        OpExpr::Compose(Box::new(self), Box::new(rhs))
    }
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpExpr::Gen(g) => f.write_str(&g.name()),
            OpExpr::Scaled(c, op) => write!(f, "({c})*({op})"),
            OpExpr::Sum(ops) => {
                write!(f, "(")?;
                for (k, op) in ops.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{op}")?;
                }
                write!(f, ")")
            }
            OpExpr::Compose(a, b) => write!(f, "{a}.{b}"),
            OpExpr::Power(op, n) => write!(f, "({op})^{n}"),
        }
    }
}

/// Operator text:
///
/// ```text
/// expr  := '-'? term (('+'|'-') term)*
/// term  := (rational '*')? chain
/// chain := power ('.' power)*
/// power := atom ('^' natural)?
/// atom  := name | '(' expr ')'
/// ```
struct OpParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl OpParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| ParseError::new(start, "expected a number").into())
    }

    fn expr(&mut self) -> Result<OpExpr> {
        let mut negate = self.eat(b'-');
        let mut terms = Vec::new();
        loop {
            let t = self.term()?;
            terms.push(if negate { -t } else { t });
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { OpExpr::Sum(terms) })
    }

    fn term(&mut self) -> Result<OpExpr> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.number()?;
            let den = if self.eat(b'/') { self.number()? } else { 1 };
            if den == 0 {
                return Err(ParseError::new(self.pos, "zero denominator").into());
            }
            if !self.eat(b'*') {
                return Err(ParseError::new(self.pos, "expected '*' after coefficient").into());
            }
            let c = Scalar::ratio(num as i64, den as i64);
            return Ok(self.chain()?.scale(c));
        }
        self.chain()
    }

    fn chain(&mut self) -> Result<OpExpr> {
        let mut op = self.power()?;
        while self.eat(b'.') {
            op = op * self.power()?;
        }
        Ok(op)
    }

    fn power(&mut self) -> Result<OpExpr> {
        let atom = self.atom()?;
        if self.eat(b'^') {
            let n = self.number()?;
            let n = u32::try_from(n).map_err(|_| ParseError::new(self.pos, "power too large"))?;
            return Ok(atom.pow(n));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<OpExpr> {
        if self.eat(b'(') {
            let e = self.expr()?;
            if !self.eat(b')') {
                return Err(ParseError::new(self.pos, "expected ')'").into());
            }
            return Ok(e);
        }
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Generator::from_name(name)
            .map(OpExpr::Gen)
            .ok_or_else(|| ParseError::new(start, format!("unknown operator '{name}'")).into())
    }
}

/// Matrix of an operator between canonical monomial bases of two bidegree pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpMatrix {
    pub src: Bidegree,
    /// `None` when the target bidegree has a negative entry; the matrix then has no rows.
    pub target: Option<Bidegree>,
    pub row_basis: Vec<Monomial>,
    pub col_basis: Vec<Monomial>,
    pub matrix: SparseMatrix,
}

pub(crate) fn monomial_index(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

pub fn op_matrix(op: &OpExpr, ctx: Context, src: Bidegree) -> Result<OpMatrix> {
    let map = op.bidegree_map().ok_or(Error::NoBidegreeShift)?;
    let target = map.apply(src);
    let col_basis = monomials(&ctx, src);
    let row_basis = target.map(|t| monomials(&ctx, t)).unwrap_or_default();
    let index = monomial_index(&row_basis);
    let mut cols = Vec::with_capacity(col_basis.len());
    for m in &col_basis {
        let image = op.apply(&Poly::monomial(ctx, m.clone(), Scalar::one()))?;
        let coords = image
            .coordinates(&index)
            .ok_or_else(|| Error::Internal(format!("image of {m} under {op} leaves the target bidegree")))?;
        cols.push(coords);
    }
    Ok(OpMatrix { src, target, matrix: SparseMatrix::from_columns(row_basis.len(), cols), row_basis, col_basis })
}

/// The operator is zero on `P_src`.
pub fn vanishes_on(op: &OpExpr, ctx: Context, src: Bidegree) -> Result<bool> {
    Ok(op_matrix(op, ctx, src)?.matrix.is_zero())
}

/// Named operators used throughout.
pub mod named {
    use super::*;

    pub fn e() -> OpExpr {
        Generator::E.into()
    }
    pub fn edag() -> OpExpr {
        Generator::Edag.into()
    }
    pub fn laplace() -> OpExpr {
        Generator::Laplace.into()
    }
    pub fn r2() -> OpExpr {
        Generator::R2.into()
    }
    pub fn euler_z() -> OpExpr {
        Generator::EulerZ.into()
    }
    pub fn euler_zb() -> OpExpr {
        Generator::EulerZb.into()
    }
    pub fn twist_t() -> OpExpr {
        Generator::TwistT.into()
    }
    pub fn twist_k() -> OpExpr {
        Generator::TwistK.into()
    }
    pub fn twist_i() -> OpExpr {
        Generator::TwistI.into()
    }
    pub fn identity() -> OpExpr {
        OpExpr::identity()
    }

    /// `X = |z|^2 / 2`.
    pub fn sl2_x() -> OpExpr {
        r2().scale(Scalar::ratio(1, 2))
    }

    /// `Y = -Laplace / 2`.
    pub fn sl2_y() -> OpExpr {
        laplace().scale(Scalar::ratio(-1, 2))
    }

    /// `H = EulerZ + EulerZb + 2p`.
    pub fn sl2_h(ctx: Context) -> OpExpr {
        euler_z() + euler_zb() + OpExpr::constant(Scalar::from_int(2 * ctx.p() as i64))
    }

    /// `EulerZb - EulerZ`, the Cartan element of the twisted sl(2).
    pub fn euler_diff() -> OpExpr {
        euler_zb() - euler_z()
    }
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::named::*;
    use super::*;

    fn ctx(p: usize) -> Context {
        Context::new(p).unwrap()
    }

    fn poly(s: &str, p: usize) -> Poly {
        Poly::parse(s, ctx(p)).unwrap()
    }

    #[test]
    fn edag_of_q2_is_p2() {
        let q2 = poly("-1/2*z2*z3^2*zb1 - 1/2*z2^2*z3*zb4", 2);
        let p2 = poly("1/2*z3^2*zb1^2 - 1/2*z2^2*zb4^2", 2);
        assert_eq!(edag().apply(&q2).unwrap(), p2);
    }

    #[test]
    fn e_kills_p1() {
        let p1 = poly("1/3*z3^2*zb1^2 + 1/3*z2^2*zb4^2 + 2/3*z2*z3*zb1*zb4", 2);
        assert!(e().apply(&p1).unwrap().is_zero());
    }

    #[test]
    fn single_derivative_examples() {
        assert_eq!(e().apply(&poly("zb1", 1)).unwrap(), poly("-z2", 1));
        assert_eq!(laplace().apply(&Poly::r2(ctx(1))).unwrap(), poly("8", 1));
        assert_eq!(twist_t().apply(&poly("z1", 1)).unwrap(), poly("-zb2", 1));
    }

    #[test]
    fn twisted_commutator_on_examples() {
        let c = commutator(&edag(), &e());
        assert!(c.apply(&poly("z1*zb1", 1)).unwrap().is_zero());
        // (EulerZb - EulerZ) on bidegree (2,0) is multiplication by -2.
        assert_eq!(c.apply(&poly("z1^2", 1)).unwrap(), poly("-2*z1^2", 1));
    }

    #[test]
    fn edag_squared_of_q3_is_p3() {
        let q3 = poly("1/12*z2^2*z3^2", 2);
        let p3 = poly("1/6*z3^2*zb1^2 + 1/6*z2^2*zb4^2 - 2/3*z2*z3*zb1*zb4", 2);
        assert_eq!(edag().pow(2).apply(&q3).unwrap(), p3);
    }

    #[test]
    fn laplace_matrix_on_p11() {
        let m = op_matrix(&laplace(), ctx(1), Bidegree::new(1, 1)).unwrap();
        assert_eq!(m.target, Some(Bidegree::new(0, 0)));
        let row: Vec<Scalar> = m.matrix.to_dense().remove(0);
        let four = Scalar::from_int(4);
        assert_eq!(row, vec![four.clone(), Scalar::zero(), Scalar::zero(), four]);
    }

    #[test]
    fn identity_and_e_matrices() {
        let id = op_matrix(&identity(), ctx(1), Bidegree::new(1, 0)).unwrap();
        assert_eq!(id.matrix, SparseMatrix::identity(2));
        let m = op_matrix(&e(), ctx(1), Bidegree::new(0, 1)).unwrap();
        // columns zb1, zb2; rows z1, z2
        assert_eq!(m.matrix.get(1, 0), -Scalar::one());
        assert_eq!(m.matrix.get(0, 1), Scalar::one());
        assert_eq!(m.matrix.get(0, 0), Scalar::zero());
        assert_eq!(m.matrix.get(1, 1), Scalar::zero());
    }

    #[test]
    fn zero_dimensional_target() {
        let m = op_matrix(&laplace(), ctx(1), Bidegree::new(1, 0)).unwrap();
        assert_eq!(m.target, None);
        assert_eq!(m.matrix.nrows(), 0);
        assert_eq!(m.matrix.ncols(), 2);
    }

    #[test]
    fn mixed_shift_sum_is_rejected() {
        let op = e() + edag();
        assert_eq!(op_matrix(&op, ctx(1), Bidegree::new(1, 1)), Err(Error::NoBidegreeShift));
        // but it still applies symbolically
        assert!(op.apply(&poly("z1*zb1", 1)).is_ok());
    }

    #[test]
    fn bidegree_maps_compose() {
        let op = e() * twist_t();
        assert_eq!(op.bidegree_map().unwrap().apply(Bidegree::new(2, 1)), Some(Bidegree::new(2, 1)));
        let op = twist_t() * e();
        assert_eq!(op.bidegree_map().unwrap().apply(Bidegree::new(2, 1)), Some(Bidegree::new(0, 3)));
        assert_eq!(edag().pow(3).bidegree_map().unwrap(), BidegreeMap::shift(-3, 3));
    }

    #[test]
    fn out_of_range_generator() {
        let err = Generator::Dz(3).apply(&poly("z1", 1)).unwrap_err();
        assert!(matches!(err, Error::VariableOutOfRange { index: 3, .. }));
    }

    #[test]
    fn parse_operator_text() {
        let op = OpExpr::parse("Edag^2").unwrap();
        assert_eq!(op, edag().pow(2));
        let op = OpExpr::parse("E.Edag - Edag.E").unwrap();
        let f = poly("z1^2", 1);
        assert_eq!(op.apply(&f).unwrap(), commutator(&e(), &edag()).apply(&f).unwrap());
        let op = OpExpr::parse("1/2*R2 + Dzb1.Dz2").unwrap();
        assert_eq!(op.apply(&poly("z2*zb1", 1)).unwrap(), poly("1/2*z1*z2*zb1^2 + 1/2*z2^2*zb1*zb2 + 1", 1));
        assert!(OpExpr::parse("Foo").is_err());
        assert!(OpExpr::parse("(E").is_err());
        assert_eq!(OpExpr::parse("Dz12").unwrap(), OpExpr::Gen(Generator::Dz(12)));
    }

    #[test]
    fn i_transform_on_variables() {
        assert_eq!(twist_i().apply(&poly("z1", 1)).unwrap(), poly("1*i*z1", 1));
        assert_eq!(twist_i().apply(&poly("zb2", 1)).unwrap(), poly("-1*i*zb2", 1));
        assert_eq!(twist_k().apply(&poly("z1", 1)).unwrap(), poly("1*i*zb2", 1));
    }
}
