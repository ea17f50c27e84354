//! Sparse polynomials in `z_1..z_{2p}, zb_1..zb_{2p}` over Q(i).
//!
//! Variable indices in the public API are 1-based, matching the textual
//! form `z3`, `zb1`. Terms are kept in canonical monomial order: exponent
//! vectors `(alpha, beta)` compared lexicographically, larger exponents of
//! earlier variables first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{binomial_signed, factorial, Scalar};

/// Quaternionic dimension `p`; the ambient space is R^{4p} = C^{2p}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    p: usize,
}

impl Context {
    pub fn new(p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidContext);
        }
        Ok(Context { p })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of complex variables, `2p`.
    pub fn nvars(&self) -> usize {
        2 * self.p
    }

    /// Real dimension `m = 4p`.
    pub fn real_dim(&self) -> usize {
        4 * self.p
    }

    pub fn check_same(&self, other: &Context) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ContextMismatch { left: self.p, right: other.p })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    pub a: u32,
    pub b: u32,
}

impl Bidegree {
    pub const fn new(a: u32, b: u32) -> Self {
        Bidegree { a, b }
    }

    pub fn total(&self) -> u32 {
        self.a + self.b
    }

    /// `(a + da, b + db)`, or `None` if either entry would be negative.
    pub fn shifted(&self, da: i64, db: i64) -> Option<Bidegree> {
        let a = i64::from(self.a) + da;
        let b = i64::from(self.b) + db;
        (a >= 0 && b >= 0).then(|| Bidegree::new(a as u32, b as u32))
    }

    pub fn swapped(&self) -> Bidegree {
        Bidegree::new(self.b, self.a)
    }

    /// All bidegrees with `a + b <= cap`, ordered by total degree then `a` descending.
    pub fn up_to(cap: u32) -> Vec<Bidegree> {
        (0..=cap).flat_map(|k| (0..=k).rev().map(move |a| Bidegree::new(a, k - a))).collect()
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// One of the complex coordinates, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Z(usize),
    Zb(usize),
}

impl Var {
    pub fn index(&self) -> usize {
        match *self {
            Var::Z(j) | Var::Zb(j) => j,
        }
    }

    pub fn conj(&self) -> Var {
        match *self {
            Var::Z(j) => Var::Zb(j),
            Var::Zb(j) => Var::Z(j),
        }
    }

    pub fn check(&self, ctx: &Context) -> Result<()> {
        let j = self.index();
        if j == 0 || j > ctx.nvars() {
            Err(Error::VariableOutOfRange { name: self.to_string(), index: j, max: ctx.nvars() })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z(j) => write!(f, "z{j}"),
            Var::Zb(j) => write!(f, "zb{j}"),
        }
    }
}

/// `z^alpha zb^beta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    alpha: Vec<u32>,
    beta: Vec<u32>,
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.alpha.cmp(&self.alpha).then_with(|| other.beta.cmp(&self.beta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one(ctx: &Context) -> Self {
        Monomial { alpha: vec![0; ctx.nvars()], beta: vec![0; ctx.nvars()] }
    }

    pub fn from_exponents(alpha: Vec<u32>, beta: Vec<u32>) -> Self {
        assert_eq!(alpha.len(), beta.len(), "exponent vectors must have equal length");
        Monomial { alpha, beta }
    }

    pub fn var(ctx: &Context, v: Var) -> Self {
        let mut m = Monomial::one(ctx);
        *m.exponent_mut(v) += 1;
        m
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn beta(&self) -> &[u32] {
        &self.beta
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match v {
            Var::Z(j) => self.alpha[j - 1],
            Var::Zb(j) => self.beta[j - 1],
        }
    }

    fn exponent_mut(&mut self, v: Var) -> &mut u32 {
        match v {
            Var::Z(j) => &mut self.alpha[j - 1],
            Var::Zb(j) => &mut self.beta[j - 1],
        }
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(self.alpha.iter().sum(), self.beta.iter().sum())
    }

    pub fn is_one(&self) -> bool {
        self.alpha.iter().chain(&self.beta).all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            alpha: self.alpha.iter().zip(&other.alpha).map(|(x, y)| x + y).collect(),
            beta: self.beta.iter().zip(&other.beta).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn conj(&self) -> Monomial {
        Monomial { alpha: self.beta.clone(), beta: self.alpha.clone() }
    }

    /// Multi-index factorial `alpha! * beta!`, the Fischer norm of the monomial.
    pub fn factorial_weight(&self) -> BigUint {
        self.alpha.iter().chain(&self.beta).fold(BigUint::one(), |acc, &e| acc * factorial(u64::from(e)))
    }

    /// `d/dv` of the monomial as `(exponent, quotient)`, or `None` if it vanishes.
    pub fn derivative(&self, v: Var) -> Option<(u32, Monomial)> {
        let e = self.exponent(v);
        if e == 0 {
            return None;
        }
        let mut m = self.clone();
        *m.exponent_mut(v) -= 1;
        Some((e, m))
    }

    pub fn times_var(&self, v: Var) -> Monomial {
        let mut m = self.clone();
        *m.exponent_mut(v) += 1;
        m
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        let z = self.alpha.iter().enumerate().map(|(j, &e)| (Var::Z(j + 1), e));
        let zb = self.beta.iter().enumerate().map(|(j, &e)| (Var::Zb(j + 1), e));
        z.chain(zb).filter(|&(_, e)| e > 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exponent vectors of length `n` summing to `d`, in descending lexicographic order.
fn compositions(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Monomial basis of `P_{a,b}` in canonical order.
pub fn monomials(ctx: &Context, bd: Bidegree) -> Vec<Monomial> {
    let alphas = compositions(ctx.nvars(), bd.a);
    let betas = compositions(ctx.nvars(), bd.b);
    let mut out = Vec::with_capacity(alphas.len() * betas.len());
    for alpha in &alphas {
        for beta in &betas {
            out.push(Monomial { alpha: alpha.clone(), beta: beta.clone() });
        }
    }
    out
}

/// `dim P_{a,b}` for possibly negative bidegrees (zero there).
pub fn dim_p(ctx: &Context, a: i64, b: i64) -> BigUint {
    let n = ctx.nvars() as i64;
    binomial_signed(n + a - 1, a) * binomial_signed(n + b - 1, b)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: Context,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(ctx: Context) -> Self {
        Poly { ctx, terms: BTreeMap::new() }
    }

    pub fn constant(ctx: Context, c: Scalar) -> Self {
        Poly::monomial(ctx, Monomial::one(&ctx), c)
    }

    pub fn one(ctx: Context) -> Self {
        Poly::constant(ctx, Scalar::one())
    }

    pub fn monomial(ctx: Context, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ctx, terms }
    }

    pub fn var(ctx: Context, v: Var) -> Result<Self> {
        v.check(&ctx)?;
        Ok(Poly::monomial(ctx, Monomial::var(&ctx, v), Scalar::one()))
    }

    /// `z_j`; panics if `j` is outside `1..=2p`.
    pub fn z(ctx: Context, j: usize) -> Self {
        Poly::var(ctx, Var::Z(j)).expect("variable index in range")
    }

    /// `zb_j`; panics if `j` is outside `1..=2p`.
    pub fn zb(ctx: Context, j: usize) -> Self {
        Poly::var(ctx, Var::Zb(j)).expect("variable index in range")
    }

    /// `|z|^2 = sum_j z_j zb_j`.
    pub fn r2(ctx: Context) -> Self {
        let mut f = Poly::zero(ctx);
        for j in 1..=ctx.nvars() {
            let m = Monomial::var(&ctx, Var::Z(j)).times_var(Var::Zb(j));
            f.add_term(m, &Scalar::one());
        }
        f
    }

    pub fn from_terms(ctx: Context, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut f = Poly::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.alpha.len(), ctx.nvars(), "monomial arity does not match context");
            f.add_term(m, &c);
        }
        f
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(&self.ctx))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = Poly::zero(self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ctx);
        }
        Poly { ctx: self.ctx, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Complex conjugation: swaps `z` and `zb` exponents and conjugates coefficients.
    pub fn conj(&self) -> Poly {
        Poly { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect() }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.ctx);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The bidegree if the polynomial is nonzero and bihomogeneous.
    pub fn homogeneous_bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys().map(Monomial::bidegree);
        let first = it.next()?;
        it.all(|bd| bd == first).then_some(first)
    }

    pub fn bidegree_split(&self) -> BTreeMap<Bidegree, Poly> {
        let mut out: BTreeMap<Bidegree, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree()).or_insert_with(|| Poly::zero(self.ctx)).terms.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn derivative(&self, v: Var) -> Result<Poly> {
        v.check(&self.ctx)?;
        let mut out = Poly::zero(self.ctx);
        for (m, c) in &self.terms {
            if let Some((e, q)) = m.derivative(v) {
                out.add_term(q, &(c * &Scalar::from_int(i64::from(e))));
            }
        }
        Ok(out)
    }

    pub fn times_var(&self, v: Var) -> Result<Poly> {
        v.check(&self.ctx)?;
        Ok(Poly { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (m.times_var(v), c.clone())).collect() })
    }

    /// Sum of first-order terms `coef * mul * d/d(diff)`, applied in one pass.
    pub(crate) fn vector_field(&self, fields: &[(i64, Var, Var)]) -> Poly {
        let mut out = Poly::zero(self.ctx);
        for (m, c) in &self.terms {
            for &(k, mul, diff) in fields {
                if let Some((e, q)) = m.derivative(diff) {
                    let coef = c * &Scalar::from_int(k * i64::from(e));
                    out.add_term(q.times_var(mul), &coef);
                }
            }
        }
        out
    }

    /// Substitution of each variable by a unit multiple of another variable.
    pub(crate) fn permute_vars(&self, map: impl Fn(Var) -> (Scalar, Var)) -> Poly {
        let mut out = Poly::zero(self.ctx);
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut image = Monomial::one(&self.ctx);
            for (v, e) in m.vars() {
                let (unit, w) = map(v);
                coef = &coef * &unit.pow(e);
                *image.exponent_mut(w) += e;
            }
            out.add_term(image, &coef);
        }
        out
    }

    /// General substitution `z_j -> zs[j-1]`, `zb_j -> zbs[j-1]`.
    pub fn substitute(&self, zs: &[Poly], zbs: &[Poly]) -> Result<Poly> {
        let n = self.ctx.nvars();
        if zs.len() != n || zbs.len() != n {
            return Err(Error::Dimension(format!("substitution needs {n} images per family")));
        }
        for g in zs.iter().chain(zbs) {
            self.ctx.check_same(&g.ctx)?;
        }
        let mut out = Poly::zero(self.ctx);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(self.ctx, c.clone());
            for (v, e) in m.vars() {
                let g = match v {
                    Var::Z(j) => &zs[j - 1],
                    Var::Zb(j) => &zbs[j - 1],
                };
                t = &t * &g.pow(e);
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Coordinates relative to an indexed monomial list; `None` if a term falls outside it.
    pub fn coordinates(&self, index: &std::collections::HashMap<Monomial, usize>) -> Option<Vec<(usize, Scalar)>> {
        let mut out: Vec<(usize, Scalar)> =
            self.terms.iter().map(|(m, c)| index.get(m).map(|&i| (i, c.clone()))).collect::<Option<_>>()?;
        out.sort_by_key(|(i, _)| *i);
        Some(out)
    }

    pub fn from_coordinates(ctx: Context, basis: &[Monomial], coords: &[(usize, Scalar)]) -> Poly {
        Poly::from_terms(ctx, coords.iter().map(|(i, c)| (basis[*i].clone(), c.clone())))
    }

    pub fn parse(text: &str, ctx: Context) -> Result<Poly> {
        crate::parse::parse_poly(text, ctx)
    }
}

/// Fischer inner product `<f, g> = f(d/dzb, d/dz) conj(g) |_{z=0}`.
///
/// On monomials it reduces to `<z^a zb^b, z^c zb^d> = [a=c][b=d] a! b!`, so the
/// sum runs over common monomials only.
pub fn fischer_inner(f: &Poly, g: &Poly) -> Result<Scalar> {
    f.ctx.check_same(&g.ctx)?;
    let (small, large, swap) = if f.len() <= g.len() { (f, g, false) } else { (g, f, true) };
    let mut acc = Scalar::zero();
    for (m, c) in &small.terms {
        if let Some(d) = large.terms.get(m) {
            let w = Scalar::from_bigint(m.factorial_weight().into());
            let (x, y) = if swap { (d, c) } else { (c, d) };
            acc += &(&(x * &y.conj()) * &w);
        }
    }
    Ok(acc)
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    /// Panics on a context mismatch; use [`Poly::try_add`] to get an error instead.
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomials share a context")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomials share a context")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomials share a context")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, m: &Monomial, c: &Scalar) -> fmt::Result {
    let re = c.re();
    let im = c.im();
    // Real and pure imaginary coefficients carry their sign outside.
    let negative = (im.is_zero() && re.is_negative()) || (re.is_zero() && im.is_negative());
    let sep = match (first, negative) {
        (true, false) => "",
        (true, true) => "-",
        (false, false) => " + ",
        (false, true) => " - ",
    };
    f.write_str(sep)?;
    let magnitude = if negative { -c } else { c.clone() };
    let coef = if !re.is_zero() && !im.is_zero() { format!("({magnitude})") } else { magnitude.to_string() };
    if m.is_one() {
        f.write_str(&coef)
    } else if magnitude.is_one() {
        write!(f, "{m}")
    } else {
        write!(f, "{coef}*{m}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            write_term(f, k == 0, m, c)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: usize) -> Context {
        Context::new(p).unwrap()
    }

    #[test]
    fn conjugation_of_a_variable() {
        let c = ctx(1);
        assert_eq!(Poly::z(c, 1).conj(), Poly::zb(c, 1));
        let f = Poly::parse("z3^2*zb1^2", ctx(2)).unwrap();
        assert_eq!(f.conj().conj(), f);
    }

    #[test]
    fn monomial_product() {
        let c = ctx(2);
        let f = &Poly::z(c, 1) * &Poly::zb(c, 1);
        let g = &Poly::z(c, 2) * &Poly::zb(c, 2);
        assert_eq!((&f * &g).to_string(), "z1*z2*zb1*zb2");
    }

    #[test]
    fn context_mismatch() {
        let err = Poly::z(ctx(1), 1).try_add(&Poly::z(ctx(2), 1)).unwrap_err();
        assert_eq!(err, Error::ContextMismatch { left: 1, right: 2 });
        assert!(fischer_inner(&Poly::z(ctx(1), 1), &Poly::z(ctx(2), 1)).is_err());
    }

    #[test]
    fn split_by_bidegree() {
        let c = ctx(1);
        let f = &Poly::z(c, 1) + &Poly::zb(c, 1);
        let parts = f.bidegree_split();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&Bidegree::new(1, 0)], Poly::z(c, 1));
        assert_eq!(parts[&Bidegree::new(0, 1)], Poly::zb(c, 1));
        assert!(Poly::zero(c).bidegree_split().is_empty());
        let g = Poly::parse("z3^2*zb1^2", ctx(2)).unwrap();
        let parts = g.bidegree_split();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![Bidegree::new(2, 2)]);
    }

    #[test]
    fn canonical_monomial_order() {
        let c = ctx(1);
        let names: Vec<String> = monomials(&c, Bidegree::new(1, 1)).iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["z1*zb1", "z1*zb2", "z2*zb1", "z2*zb2"]);
        let c2 = ctx(2);
        for bd in Bidegree::up_to(4) {
            let ms = monomials(&c2, bd);
            assert_eq!(BigUint::from(ms.len()), dim_p(&c2, bd.a.into(), bd.b.into()));
            assert!(ms.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn fischer_examples() {
        let c = ctx(1);
        let z1 = Poly::z(c, 1);
        let zb1 = Poly::zb(c, 1);
        assert!(fischer_inner(&z1, &zb1).unwrap().is_zero());
        assert_eq!(fischer_inner(&z1.pow(2), &z1.pow(2)).unwrap(), Scalar::from_int(2));
        let m = &z1 * &Poly::zb(c, 2);
        assert_eq!(fischer_inner(&m, &m).unwrap(), Scalar::one());
    }

    #[test]
    fn fischer_is_conjugate_linear_in_second_slot() {
        let c = ctx(1);
        let f = Poly::z(c, 1);
        let g = f.scale(&Scalar::i());
        assert_eq!(fischer_inner(&f, &g).unwrap(), -Scalar::i());
        assert_eq!(fischer_inner(&g, &f).unwrap(), Scalar::i());
    }

    #[test]
    fn substitution_matches_permutation() {
        let c = ctx(1);
        let f = Poly::parse("2*z1^2*zb2 - 1/3*z2", c).unwrap();
        let zs = [Poly::zb(c, 2).scale(&-Scalar::one()), Poly::zb(c, 1)];
        let zbs = [Poly::z(c, 2).scale(&-Scalar::one()), Poly::z(c, 1)];
        let by_subst = f.substitute(&zs, &zbs).unwrap();
        let by_perm = f.permute_vars(|v| match v {
            Var::Z(1) => (-Scalar::one(), Var::Zb(2)),
            Var::Z(_) => (Scalar::one(), Var::Zb(1)),
            Var::Zb(1) => (-Scalar::one(), Var::Z(2)),
            Var::Zb(_) => (Scalar::one(), Var::Z(1)),
        });
        assert_eq!(by_subst, by_perm);
    }
}
