//! Verification suites: every operator identity, dimension formula, branching
//! rule and decomposition property, checked exactly over a range of bidegrees.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::Rng;

use crate::linalg::SparseMatrix;

use crate::error::{Error, Result};
use crate::harmonic::{dim_h, harmonic_basis, harmonic_decompose, harmonic_decompose_iterated, SpaceTag};
use crate::ops::{commutator, named, op_matrix, OpExpr};
use crate::poly::{dim_p, fischer_inner, monomials, Bidegree, Context, Poly};
use crate::sample;
use crate::scalar::Scalar;
use crate::structures::{
    complex_structure, embed_complex, embed_quaternion, induced_substitution, is_complex_linear, is_skew_hermitian,
    is_skew_symplectic, satisfies_symplectic_relation, structure_matrices, Matrix, RealMatrix,
};
use crate::symplectic::{
    compare_spans, dims, full_decompose, isomorphism_checks, kernel_basis, kernel_is_trivial, projection_decompose,
    summand_bases, symplectic_decompose, symplectic_harmonic_basis, Orientation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Commutators,
    Adjoint,
    Transforms,
    Harmonic,
    Dims,
    Branching,
    Symplectic,
    Isomorphisms,
    Example,
    Structures,
    All,
}

impl Suite {
    pub const EACH: [Suite; 10] = [
        Suite::Commutators,
        Suite::Adjoint,
        Suite::Transforms,
        Suite::Harmonic,
        Suite::Dims,
        Suite::Branching,
        Suite::Symplectic,
        Suite::Isomorphisms,
        Suite::Example,
        Suite::Structures,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Commutators => "commutators",
            Suite::Adjoint => "adjoint",
            Suite::Transforms => "transforms",
            Suite::Harmonic => "harmonic",
            Suite::Dims => "dims",
            Suite::Branching => "branching",
            Suite::Symplectic => "symplectic",
            Suite::Isomorphisms => "isomorphisms",
            Suite::Example => "example",
            Suite::Structures => "structures",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::EACH
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub p: usize,
    /// Bound on `a + b` for every enumeration.
    pub degree_cap: u32,
    pub seed: u64,
    /// Number of random inputs for the sampled properties.
    pub samples: usize,
}

impl VerifyConfig {
    pub fn new(p: usize, degree_cap: u32) -> Self {
        VerifyConfig { p, degree_cap, seed: sample::DEFAULT_SEED, samples: 20 }
    }

    fn ctx(&self) -> Result<Context> {
        Context::new(self.p)
    }
}

/// One named property with the list of places it failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub failures: Vec<String>,
    /// Number of instances checked.
    pub cases: usize,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub p: usize,
    pub degree_cap: u32,
    pub checks: Vec<Check>,
    /// Informational findings that do not affect the outcome.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok())
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "suite {} (p={}, degree cap {}): {status}", self.suite, self.p, self.degree_cap)?;
        for c in &self.checks {
            let mark = if c.ok() { "ok  " } else { "FAIL" };
            writeln!(f, "  [{mark}] {} ({} cases)", c.name, c.cases)?;
            for failure in &c.failures {
                writeln!(f, "         {failure}")?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// Accumulates one [`Check`].
struct Tally {
    name: String,
    failures: Vec<String>,
    cases: usize,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally { name: name.into(), failures: Vec::new(), cases: 0 }
    }

    fn record(&mut self, ok: bool, place: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(place());
        }
    }

    fn done(self) -> Check {
        Check { name: self.name, failures: self.failures, cases: self.cases }
    }
}

fn random_bidegree(r: &mut impl Rng, cap: u32) -> Bidegree {
    let total = r.gen_range(0..=cap);
    let a = r.gen_range(0..=total);
    Bidegree::new(a, total - a)
}

fn bidegrees(cap: u32) -> Vec<Bidegree> {
    Bidegree::up_to(cap)
}

/// `lhs = rhs` as matrices on `P_bd`.
pub fn same_matrix(ctx: Context, bd: Bidegree, lhs: &OpExpr, rhs: &OpExpr) -> Result<bool> {
    let l = op_matrix(lhs, ctx, bd)?;
    let r = op_matrix(rhs, ctx, bd)?;
    if l.target != r.target {
        return Err(Error::Dimension(format!("{lhs} and {rhs} land in different bidegrees")));
    }
    Ok(l.matrix == r.matrix)
}

fn zero_matrix(ctx: Context, bd: Bidegree, op: &OpExpr) -> Result<bool> {
    Ok(op_matrix(op, ctx, bd)?.matrix.is_zero())
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// Identities `lhs = rhs` of the two sl(2) triples; `rhs = None` means `lhs = 0`.
pub fn commutator_identities(ctx: Context) -> Vec<(&'static str, OpExpr, Option<OpExpr>)> {
    use named::*;
    let (x, y, h) = (sl2_x(), sl2_y(), sl2_h(ctx));
    let d = euler_diff();
    let (e, ed) = (e(), edag());
    let m = 2 * ctx.real_dim() as i64;
    vec![
        ("[X,Y] = H", commutator(&x, &y), Some(h.clone())),
        ("[H,X] = 2X", commutator(&h, &x), Some(x.clone().scale(int(2)))),
        ("[H,Y] = -2Y", commutator(&h, &y), Some(y.clone().scale(int(-2)))),
        (
            "[Laplace,R2] = 4(EulerZ+EulerZb) + 2m",
            commutator(&laplace(), &r2()),
            Some((euler_z() + euler_zb()).scale(int(4)) + OpExpr::constant(int(m))),
        ),
        ("[Laplace,EulerZ] = Laplace", commutator(&laplace(), &euler_z()), Some(laplace())),
        ("[R2,EulerZ] = -R2", commutator(&r2(), &euler_z()), Some(-r2())),
        ("[EulerZb-EulerZ,Edag] = 2Edag", commutator(&d, &ed), Some(ed.clone().scale(int(2)))),
        ("[EulerZb-EulerZ,E] = -2E", commutator(&d, &e), Some(e.clone().scale(int(-2)))),
        ("[Edag,E] = EulerZb-EulerZ", commutator(&ed, &e), Some(d.clone())),
        ("[Edag,X] = 0", commutator(&ed, &x), None),
        ("[E,X] = 0", commutator(&e, &x), None),
        ("[Edag,Y] = 0", commutator(&ed, &y), None),
        ("[E,Y] = 0", commutator(&e, &y), None),
        ("[E,R2] = 0", commutator(&e, &r2()), None),
        ("[Edag,R2] = 0", commutator(&ed, &r2()), None),
        ("[E,Laplace] = 0", commutator(&e, &laplace()), None),
        ("[Edag,Laplace] = 0", commutator(&ed, &laplace()), None),
        ("[E,H] = 0", commutator(&e, &h), None),
        ("[Edag,H] = 0", commutator(&ed, &h), None),
        ("[EulerZb-EulerZ,X] = 0", commutator(&d, &x), None),
        ("[EulerZb-EulerZ,Y] = 0", commutator(&d, &y), None),
        ("[EulerZb-EulerZ,H] = 0", commutator(&d, &h), None),
    ]
}

pub fn commutators(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ctx = cfg.ctx()?;
    let mut checks = Vec::new();
    for (name, lhs, rhs) in commutator_identities(ctx) {
        let mut t = Tally::new(name);
        for bd in bidegrees(cfg.degree_cap) {
            let ok = match &rhs {
                Some(r) => same_matrix(ctx, bd, &lhs, r)?,
                None => zero_matrix(ctx, bd, &lhs)?,
            };
            t.record(ok, || format!("fails on P{bd}"));
        }
        checks.push(t.done());
    }
    Ok(report(Suite::Commutators, cfg, checks, Vec::new()))
}

fn report(suite: Suite, cfg: &VerifyConfig, checks: Vec<Check>, notes: Vec<String>) -> SuiteReport {
    SuiteReport { suite, p: cfg.p, degree_cap: cfg.degree_cap, checks, notes }
}

fn monomial_polys(ctx: Context, bd: Bidegree) -> Vec<Poly> {
    monomials(&ctx, bd).into_iter().map(|m| Poly::monomial(ctx, m, Scalar::one())).collect()
}

/// `<A f, g> = <f, B g>` for all monomials `f` of `P_bd` and `g` of the
/// target of `A`, one Fischer product at a time.
fn adjoint_pairwise(ctx: Context, bd: Bidegree, a: &OpExpr, b: &OpExpr, t: &mut Tally) -> Result<()> {
    let Some(target) = a.bidegree_map().and_then(|m| m.apply(bd)) else {
        return Ok(());
    };
    let gs = monomial_polys(ctx, target);
    for f in monomial_polys(ctx, bd) {
        let af = a.apply(&f)?;
        for g in &gs {
            let ok = fischer_inner(&af, g)? == fischer_inner(&f, &b.apply(g)?)?;
            t.record(ok, || format!("f = {f}, g = {g}"));
        }
    }
    Ok(())
}

/// The same statement as a matrix identity `W_t A = B^* W_s`, with `W` the
/// diagonal Gram matrices `<m, m>` of the monomial bases.
fn adjoint_matrix(ctx: Context, bd: Bidegree, a: &OpExpr, b: &OpExpr) -> Result<bool> {
    let ma = op_matrix(a, ctx, bd)?;
    let Some(target) = ma.target else {
        return Ok(true);
    };
    let mb = op_matrix(b, ctx, target)?;
    if mb.target != Some(bd) {
        return Err(Error::Dimension(format!("{b} does not map P{target} back to P{bd}")));
    }
    let gram = |basis: &[crate::poly::Monomial]| -> Result<SparseMatrix> {
        let cols = basis
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let p = Poly::monomial(ctx, m.clone(), Scalar::one());
                Ok(vec![(i, fischer_inner(&p, &p)?)])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_columns(basis.len(), cols))
    };
    let (ws, wt) = (gram(&ma.col_basis)?, gram(&ma.row_basis)?);
    Ok(wt.mul(&ma.matrix) == mb.matrix.adjoint().mul(&ws))
}

/// Bound on `a + b` for the pairwise form, which is quadratic in `dim P`.
pub const PAIRWISE_ADJOINT_CAP: u32 = 3;

pub fn adjoint(cfg: &VerifyConfig) -> Result<SuiteReport> {
    use named::*;
    let ctx = cfg.ctx()?;
    let quarter = Scalar::ratio(1, 4);
    let mut pairs: Vec<(String, OpExpr, OpExpr)> = vec![
        ("<E f, g> = <f, Edag g>".into(), e(), edag()),
        ("<Edag f, g> = <f, E g>".into(), edag(), e()),
        ("<R2 f, g> = <f, Laplace g / 4>".into(), r2(), laplace().scale(quarter)),
    ];
    for j in 1..=ctx.nvars() {
        use crate::ops::Generator::*;
        pairs.push((format!("<z{j} f, g> = <f, Dz{j} g>"), MulZ(j).into(), Dz(j).into()));
        pairs.push((format!("<zb{j} f, g> = <f, Dzb{j} g>"), MulZb(j).into(), Dzb(j).into()));
    }
    let mut checks = Vec::new();
    for (name, a, b) in &pairs {
        let mut t = Tally::new(format!("{name} as W A = B* W"));
        for bd in bidegrees(cfg.degree_cap) {
            t.record(adjoint_matrix(ctx, bd, a, b)?, || format!("P{bd}"));
        }
        checks.push(t.done());
    }
    for (name, a, b) in &pairs {
        let mut t =
            Tally::new(format!("{name} on monomial pairs, a+b <= {}", cfg.degree_cap.min(PAIRWISE_ADJOINT_CAP)));
        for bd in bidegrees(cfg.degree_cap.min(PAIRWISE_ADJOINT_CAP)) {
            adjoint_pairwise(ctx, bd, a, b, &mut t)?;
        }
        checks.push(t.done());
    }
    // Fischer product sanity on random inputs.
    let mut r = sample::rng(cfg.seed);
    let mut pos = Tally::new("<f,f> > 0");
    let mut herm = Tally::new("<f,g> = conj <g,f>");
    for _ in 0..cfg.samples {
        let f = sample::poly(&mut r, ctx, cfg.degree_cap.min(4), 8);
        let g = sample::poly(&mut r, ctx, cfg.degree_cap.min(4), 8);
        let ff = fischer_inner(&f, &f)?;
        pos.record(f.is_zero() || (ff.is_real() && ff.re() > &num_rational::BigRational::zero()), || {
            format!("f = {f}")
        });
        herm.record(fischer_inner(&f, &g)? == fischer_inner(&g, &f)?.conj(), || format!("f = {f}, g = {g}"));
    }
    checks.push(pos.done());
    checks.push(herm.done());
    Ok(report(Suite::Adjoint, cfg, checks, Vec::new()))
}

fn sign_identity(ctx: Context, bd: Bidegree, lhs: &OpExpr, sign: i64) -> Result<bool> {
    same_matrix(ctx, bd, lhs, &OpExpr::constant(int(sign)))
}

/// `T^2 = -1` on `P_bd`, read literally.
pub fn t_squared_is_minus_one(ctx: Context, bd: Bidegree) -> Result<bool> {
    sign_identity(ctx, bd, &named::twist_t().pow(2), -1)
}

/// `T` maps `H^S_bd` into `Ker Edag`, injectively.
pub fn t_maps_kernel(ctx: Context, bd: Bidegree, twist: &OpExpr) -> Result<bool> {
    let hs = symplectic_harmonic_basis(ctx, bd, false);
    let img = hs.map(twist, SpaceTag::Image(format!("{twist}[HS{bd}]")))?;
    let ed = op_matrix(&named::edag(), ctx, img.bidegree)?;
    let killed = ed.matrix.mul(&img.coords).is_zero();
    Ok(killed && img.rank() == hs.len())
}

pub fn transforms(cfg: &VerifyConfig) -> Result<SuiteReport> {
    use named::*;
    let ctx = cfg.ctx()?;
    let (t, k, i) = (twist_t(), twist_k(), twist_i());
    let mut sq = Tally::new("T^2 = (-1)^(a+b)");
    let mut ksq = Tally::new("K^2 = (-1)^(a+b)");
    let mut l1 = Tally::new("Edag T = -T E");
    let mut l2 = Tally::new("E T = -T Edag");
    let mut lap = Tally::new("T Laplace = Laplace T");
    let mut tk = Tally::new("T maps HS(a,b) into Ker Edag with equal rank");
    let mut kk = Tally::new("K maps HS(a,b) into Ker Edag with equal rank");
    let mut iauto = Tally::new("I preserves Ker E and Ker Edag on P(a,b)");
    let mut literal = Vec::new();
    for bd in bidegrees(cfg.degree_cap) {
        let sign = if bd.total() % 2 == 0 { 1 } else { -1 };
        sq.record(sign_identity(ctx, bd, &t.clone().pow(2), sign)?, || format!("P{bd}"));
        ksq.record(sign_identity(ctx, bd, &k.clone().pow(2), sign)?, || format!("P{bd}"));
        l1.record(same_matrix(ctx, bd, &(edag() * t.clone()), &-(t.clone() * e()))?, || format!("P{bd}"));
        l2.record(same_matrix(ctx, bd, &(e() * t.clone()), &-(t.clone() * edag()))?, || format!("P{bd}"));
        lap.record(same_matrix(ctx, bd, &(t.clone() * laplace()), &(laplace() * t.clone()))?, || format!("P{bd}"));
        tk.record(t_maps_kernel(ctx, bd, &t)?, || format!("HS{bd}"));
        kk.record(t_maps_kernel(ctx, bd, &k)?, || format!("HS{bd}"));
        for twist in [e(), edag()] {
            let ker = crate::harmonic::nullspace_basis(
                ctx,
                bd,
                SpaceTag::Image(format!("Ker {twist}")),
                &op_matrix(&twist, ctx, bd)?.matrix,
            );
            let img = ker.map(&i, SpaceTag::Image(format!("I[Ker {twist}]")))?;
            iauto.record(compare_spans("I", &img, &ker).ok, || format!("Ker {twist} on P{bd}"));
        }
        if !t_squared_is_minus_one(ctx, bd)? {
            literal.push(bd.to_string());
        }
    }
    let mut notes = Vec::new();
    if !literal.is_empty() {
        notes.push(format!(
            "T^2 = -1 read literally fails on {}: T is a substitution, so T^2 is (-1)^(a+b) on P(a,b)",
            literal.join(" ")
        ));
    }
    let checks = vec![sq.done(), ksq.done(), l1.done(), l2.done(), lap.done(), tk.done(), kk.done(), iauto.done()];
    Ok(report(Suite::Transforms, cfg, checks, notes))
}

pub fn harmonic(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ctx = cfg.ctx()?;
    let mut dim = Tally::new("|basis H(a,b)| = dim P(a,b) - dim P(a-1,b-1)");
    let mut indep = Tally::new("basis H(a,b) has full column rank");
    let mut complete = Tally::new("sum_j dim H(a-j,b-j) = dim P(a,b)");
    let mut orth = Tally::new("|z|^2j H(a-j,b-j) are pairwise Fischer-orthogonal");
    for bd in bidegrees(cfg.degree_cap) {
        let h = harmonic_basis(ctx, bd);
        let (a, b) = (i64::from(bd.a), i64::from(bd.b));
        dim.record(dim_h(&ctx, a, b) == h.len().into(), || format!("H{bd}: {}", h.len()));
        indep.record(h.rank() == h.len(), || format!("H{bd}"));
        let total: num_bigint::BigUint = (0..=bd.a.min(bd.b)).map(|j| dim_h(&ctx, a - j as i64, b - j as i64)).sum();
        complete.record(total == dim_p(&ctx, a, b), || format!("P{bd}"));
        orth.record(fischer_orthogonal_frame(ctx, bd)?, || format!("P{bd}"));
    }

    let mut round = Tally::new("sum_j |z|^2j h_j = f and Laplace h_j = 0 on random f");
    let mut iter = Tally::new("iterated Laplacian peel agrees with the linear solve");
    let mut r = sample::rng(cfg.seed);
    let cap = cfg.degree_cap.min(5);
    for _ in 0..cfg.samples {
        let bd = random_bidegree(&mut r, cap);
        let f = sample::homogeneous_poly(&mut r, ctx, bd, 10);
        let d = harmonic_decompose(&f)?;
        let ok = d.reassemble() == f && d.parts.iter().all(|p| crate::harmonic::is_harmonic(&p.h).unwrap_or(false));
        round.record(ok, || format!("f = {f}"));
        iter.record(harmonic_decompose_iterated(&f)? == d, || format!("f = {f}"));
    }
    let checks = vec![dim.done(), indep.done(), complete.done(), orth.done(), round.done(), iter.done()];
    Ok(report(Suite::Harmonic, cfg, checks, Vec::new()))
}

fn fischer_orthogonal_frame(ctx: Context, bd: Bidegree) -> Result<bool> {
    let r2 = Poly::r2(ctx);
    let pieces: Vec<Vec<Poly>> = (0..=bd.a.min(bd.b))
        .map(|j| {
            let rj = r2.pow(j);
            harmonic_basis(ctx, Bidegree::new(bd.a - j, bd.b - j)).elements.iter().map(|h| &rj * h).collect()
        })
        .collect();
    pairwise_orthogonal(&pieces)
}

fn pairwise_orthogonal(pieces: &[Vec<Poly>]) -> Result<bool> {
    for (i, x) in pieces.iter().enumerate() {
        for y in &pieces[i + 1..] {
            for f in x {
                for g in y {
                    if !fischer_inner(f, g)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

pub fn dims_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ctx = cfg.ctx()?;
    let mut formula = Tally::new("closed form = kernel rank = Weyl product = H - H(shifted)");
    let mut hdim = Tally::new("dim H formula = rank of Ker Laplace");
    let mut printed = Vec::new();
    for bd in bidegrees(cfg.degree_cap) {
        let r = dims(ctx, bd)?;
        let ok =
            r.dim_hs_formula == r.dim_hs_rank && r.dim_hs_rank == r.dim_weyl && r.dim_hs_difference == r.dim_hs_rank;
        formula.record(ok, || {
            format!(
                "{bd}: closed form {}, rank {}, weyl {}, difference {}",
                r.dim_hs_formula, r.dim_hs_rank, r.dim_weyl, r.dim_hs_difference
            )
        });
        hdim.record(r.dim_h == r.dim_h_rank, || format!("{bd}: {} vs {}", r.dim_h, r.dim_h_rank));
        if r.printed_form_differs() {
            printed.push(format!("{bd}: {} vs {}", r.dim_hs_formula, r.printed_closed_form));
        }
    }
    let mut notes = Vec::new();
    if !printed.is_empty() {
        notes.push(format!(
            "dimension closed form vs printed closed form (factor (2p-1)! = {}): {}",
            crate::scalar::factorial(2 * ctx.p() as u64 - 1),
            printed.join("; ")
        ));
    }
    Ok(report(Suite::Dims, cfg, vec![formula.done(), hdim.done()], notes))
}

pub fn branching(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ctx = cfg.ctx()?;
    let mut t = Tally::new("sum_j weyl(a+j, b-j) = dim H(a,b)");
    let mut nb = Tally::new("no branching when a*b = 0: dim HS = dim H");
    for bd in bidegrees(cfg.degree_cap) {
        let r = dims(ctx, bd)?;
        t.record(r.branching_sum == r.dim_h, || format!("{bd}: {} vs {}", r.branching_sum, r.dim_h));
        if bd.a == 0 || bd.b == 0 {
            nb.record(r.dim_hs_rank == r.dim_h, || format!("{bd}"));
        }
    }
    Ok(report(Suite::Branching, cfg, vec![t.done(), nb.done()], Vec::new()))
}

/// `E Edag^k H = k(alpha-beta-k+1) Edag^{k-1} H + Edag^k E H` for `H` in `H_(alpha,beta)`.
pub fn raising_commutation_holds(h: &Poly, bd: Bidegree, k: u32) -> Result<bool> {
    use named::*;
    let lhs = (e() * edag().pow(k)).apply(h)?;
    let c = i64::from(k) * (i64::from(bd.a) - i64::from(bd.b) - i64::from(k) + 1);
    let first = if k == 0 { Poly::zero(h.ctx()) } else { edag().pow(k - 1).apply(h)?.scale(&int(c)) };
    let rhs = &first + &(edag().pow(k) * e()).apply(h)?;
    Ok(lhs == rhs)
}

pub fn symplectic(cfg: &VerifyConfig) -> Result<SuiteReport> {
    use named::*;
    let ctx = cfg.ctx()?;
    let mut triv = Tally::new("H(a,b) ∩ Ker Edag = 0 for a > b, H(a,b) ∩ Ker E = 0 for a < b");
    let mut sums = Tally::new("summands of H(a,b) are Fischer-orthogonal with dimensions summing to dim H");
    let mut indep = Tally::new("kernel bases have full column rank");
    for bd in bidegrees(cfg.degree_cap) {
        if bd.a > bd.b {
            triv.record(kernel_is_trivial(ctx, bd, &edag())?, || format!("{bd}"));
        } else if bd.a < bd.b {
            triv.record(kernel_is_trivial(ctx, bd, &e())?, || format!("{bd}"));
        }
        let o = Orientation::default_for(bd);
        let parts = summand_bases(ctx, bd, o)?;
        let total: usize = parts.iter().map(|(_, b)| b.rank()).sum();
        let pieces: Vec<Vec<Poly>> = parts.into_iter().map(|(_, b)| b.elements).collect();
        let ok = pairwise_orthogonal(&pieces)? && total == harmonic_basis(ctx, bd).len();
        sums.record(ok, || format!("{bd}"));
        for adjoint in [false, true] {
            let b = symplectic_harmonic_basis(ctx, bd, adjoint);
            indep.record(b.rank() == b.len(), || format!("{bd} adjoint={adjoint}"));
        }
    }

    let mut r = sample::rng(cfg.seed);
    let mut rule = Tally::new("E Edag^k h = k(a-b-k+1) Edag^(k-1) h + Edag^k E h on random harmonics, k <= 3");
    let mut peel = Tally::new("peel parts are harmonic, in the right kernel, and reassemble");
    let mut oracle = Tally::new("peel equals Fischer projection oracle");
    let mut conj = Tally::new("conj of the decomposition decomposes conj(h)");
    let cap = cfg.degree_cap.min(5);
    for _ in 0..cfg.samples {
        let bd = random_bidegree(&mut r, cap);
        let h = sample::harmonic(&mut r, ctx, bd, 6);
        for k in 0..=3 {
            rule.record(raising_commutation_holds(&h, bd, k)?, || format!("k = {k}, h = {h}"));
        }
        let d = symplectic_decompose(&h)?;
        peel.record(peel_sound(&d)?, || format!("h = {h}"));
        oracle.record(projection_decompose(&h, d.orientation)? == d, || format!("h = {h}"));
        let dc = crate::symplectic::symplectic_decompose_oriented(
            &h.conj(),
            match d.orientation {
                Orientation::Edag => Orientation::E,
                Orientation::E => Orientation::Edag,
            },
        )?;
        conj.record(dc == crate::symplectic::conjugate_decomp(&d), || format!("h = {h}"));
    }
    let checks = vec![triv.done(), sums.done(), indep.done(), rule.done(), peel.done(), oracle.done(), conj.done()];
    Ok(report(Suite::Symplectic, cfg, checks, Vec::new()))
}

/// Every part is harmonic and killed by the lowering operator, and the parts reassemble.
pub fn peel_sound(d: &crate::symplectic::SymplecticDecomp) -> Result<bool> {
    let lower = d.orientation.lowering();
    for p in &d.parts {
        if !crate::harmonic::is_harmonic(&p.h)? || !lower.apply(&p.h)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(d.reassemble()? == d.input)
}

pub fn isomorphisms(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let ctx = cfg.ctx()?;
    let mut checks = Vec::new();
    let mut t = Tally::new("T, E^(a-b), Edag^(a-b) and the (k,k), (k,k+1) subspace equalities");
    for bd in bidegrees(cfg.degree_cap) {
        let rep = isomorphism_checks(ctx, bd, bd.a.max(bd.b))?;
        for c in &rep.checks {
            t.record(c.ok, || {
                let w = c.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
                format!("{}: ranks {} / {}, witness {w}", c.name, c.left_rank, c.right_rank)
            });
        }
    }
    checks.push(t.done());
    Ok(report(Suite::Isomorphisms, cfg, checks, Vec::new()))
}

/// The worked decomposition of `z3^2 zb1^2` for `p = 2`.
pub fn worked_example() -> Result<Vec<(String, bool)>> {
    let ctx = Context::new(2)?;
    let poly = |s: &str| Poly::parse(s, ctx);
    let h = poly("z3^2*zb1^2")?;
    let p1 = poly("1/3*z3^2*zb1^2 + 1/3*z2^2*zb4^2 + 2/3*z2*z3*zb1*zb4")?;
    let q2 = poly("-1/2*z2*z3^2*zb1 - 1/2*z2^2*z3*zb4")?;
    let p2 = poly("1/2*z3^2*zb1^2 - 1/2*z2^2*zb4^2")?;
    let q3 = poly("1/12*z2^2*z3^2")?;
    let p3 = poly("1/6*z3^2*zb1^2 + 1/6*z2^2*zb4^2 - 2/3*z2*z3*zb1*zb4")?;
    let d = symplectic_decompose(&h)?;
    let part = |t: u32| d.parts.iter().find(|p| p.t == t).map(|p| p.h.clone());
    let (ed, e) = (named::edag(), named::e());
    Ok(vec![
        ("h is harmonic".into(), crate::harmonic::is_harmonic(&h)?),
        ("t=0 part is P1".into(), part(0).as_ref() == Some(&p1)),
        ("t=1 part is Q2".into(), part(1).as_ref() == Some(&q2)),
        ("t=2 part is Q3".into(), part(2).as_ref() == Some(&q3)),
        ("exactly three parts".into(), d.parts.len() == 3),
        ("E P1 = 0".into(), e.apply(&p1)?.is_zero()),
        ("Edag Q2 = P2".into(), ed.apply(&q2)? == p2),
        ("Edag^2 Q3 = P3".into(), ed.clone().pow(2).apply(&q3)? == p3),
        ("P1 + P2 + P3 = h".into(), &(&p1 + &p2) + &p3 == h),
        ("Laplace Q2 = E Q2 = 0".into(), named::laplace().apply(&q2)?.is_zero() && e.apply(&q2)?.is_zero()),
        ("Laplace Q3 = E Q3 = 0".into(), named::laplace().apply(&q3)?.is_zero() && e.apply(&q3)?.is_zero()),
    ])
}

pub fn example(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let checks = worked_example()?
        .into_iter()
        .map(|(name, ok)| Check { name, failures: if ok { vec![] } else { vec!["mismatch".into()] }, cases: 1 })
        .collect();
    let cfg = VerifyConfig { p: 2, ..cfg.clone() };
    Ok(report(Suite::Example, &cfg, checks, Vec::new()))
}

pub fn structures(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut r = sample::rng(cfg.seed);
    let mut phi_i = Tally::new("phi(i E_n) = I_2n, n <= 4");
    for n in 1..=4 {
        let ie = Matrix::from_fn(n, n, |i, j| if i == j { Scalar::i() } else { Scalar::zero() });
        phi_i.record(embed_complex(&ie)? == complex_structure(n), || format!("n = {n}"));
    }
    let mut phi_hom = Tally::new("phi(AB) = phi(A) phi(B) and phi(A) commutes with I");
    let mut psi_hom = Tally::new("psi(AB) = psi(A) psi(B)");
    for n in 1..=3 {
        for _ in 0..5 {
            let a = sample::complex_matrix(&mut r, n);
            let b = sample::complex_matrix(&mut r, n);
            let lhs = embed_complex(&a.try_mul(&b)?)?;
            let ok = lhs == embed_complex(&a)?.try_mul(&embed_complex(&b)?)? && is_complex_linear(&lhs);
            phi_hom.record(ok, || format!("n = {n}"));
            let qa = sample::quaternion_matrix(&mut r, n);
            let qb = sample::quaternion_matrix(&mut r, n);
            let lhs = embed_quaternion(&qa.try_mul(&qb)?)?;
            psi_hom.record(lhs == embed_quaternion(&qa)?.try_mul(&embed_quaternion(&qb)?)?, || format!("n = {n}"));
        }
    }
    let mut sp = Tally::new("psi(sp(p)) is skew-hermitian and satisfies psi(A)^T I + I psi(A) = 0, p <= 3");
    for k in 0..50 {
        let p = k % 3 + 1;
        let a = sample::skew_symplectic(&mut r, p);
        let m = embed_quaternion(&a)?;
        let ok = is_skew_symplectic(&a) && is_skew_hermitian(&m) && satisfies_symplectic_relation(&m);
        sp.record(ok, || format!("A = {a}"));
    }
    let mut ijk = Tally::new("I^2 = J^2 = K^2 = -E, IJ = -JI, K = IJ");
    let mut induced = Tally::new("T, K, I are the substitutions induced by J, K, I");
    for p in 1..=cfg.p.max(2) {
        let ctx = Context::new(p)?;
        let (i, j, k) = structure_matrices(&ctx);
        let minus: RealMatrix = -&RealMatrix::identity(4 * p);
        let ok = [&i, &j, &k].iter().all(|m| m.try_mul(m).is_ok_and(|m2| m2 == minus))
            && i.try_mul(&j)?.try_add(&j.try_mul(&i)?)?.is_zero()
            && k == i.try_mul(&j)?;
        ijk.record(ok, || format!("p = {p}"));
        for (m, op) in [(j, named::twist_t()), (k, named::twist_k()), (i, named::twist_i())] {
            let (zs, zbs) = induced_substitution(ctx, &m)?;
            let mut inputs: Vec<Poly> = (1..=ctx.nvars()).flat_map(|v| [Poly::z(ctx, v), Poly::zb(ctx, v)]).collect();
            inputs.push(sample::poly(&mut r, ctx, 3, 6));
            for f in inputs {
                induced.record(f.substitute(&zs, &zbs)? == op.apply(&f)?, || format!("p = {p}, {op} on {f}"));
            }
        }
    }
    let checks = vec![phi_i.done(), phi_hom.done(), psi_hom.done(), sp.done(), ijk.done(), induced.done()];
    Ok(report(Suite::Structures, cfg, checks, Vec::new()))
}

/// Random full decompositions: exact reassembly, kernel membership of every
/// part, and pairwise Fischer orthogonality of the images.
pub fn full_round_trip(f: &Poly) -> Result<Vec<String>> {
    let d = full_decompose(f)?;
    let mut problems = Vec::new();
    if d.reassemble()? != *f {
        problems.push("reassembly differs".into());
    }
    let mut images = Vec::with_capacity(d.parts.len());
    for p in &d.parts {
        let lower = p.orientation.lowering();
        if !crate::harmonic::is_harmonic(&p.h)? || !lower.apply(&p.h)?.is_zero() {
            problems.push(format!("part (bd {}, j {}, t {}) leaves its kernel", p.bidegree, p.j, p.t));
        }
        let part_bd = p.orientation.part_bidegree(Bidegree::new(p.bidegree.a - p.j, p.bidegree.b - p.j), p.t);
        if p.h.homogeneous_bidegree() != part_bd {
            problems.push(format!("part (bd {}, j {}, t {}) has the wrong bidegree", p.bidegree, p.j, p.t));
        }
        if !kernel_basis(p.h.ctx(), part_bd.expect("valid"), p.orientation).contains(&p.h)? {
            problems.push(format!("part (bd {}, j {}, t {}) not in the computed kernel span", p.bidegree, p.j, p.t));
        }
        images.push(p.image()?);
    }
    for i in 0..images.len() {
        for k in i + 1..images.len() {
            if !fischer_inner(&images[i], &images[k])?.is_zero() {
                problems.push(format!("parts {i} and {k} are not Fischer-orthogonal"));
            }
        }
    }
    Ok(problems)
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    let one = |s: Suite| -> Result<SuiteReport> {
        match s {
            Suite::Commutators => commutators(cfg),
            Suite::Adjoint => adjoint(cfg),
            Suite::Transforms => transforms(cfg),
            Suite::Harmonic => harmonic(cfg),
            Suite::Dims => dims_suite(cfg),
            Suite::Branching => branching(cfg),
            Suite::Symplectic => symplectic(cfg),
            Suite::Isomorphisms => isomorphisms(cfg),
            Suite::Example => example(cfg),
            Suite::Structures => structures(cfg),
            Suite::All => unreachable!(),
        }
    };
    match suite {
        Suite::All => Suite::EACH.iter().map(|&s| one(s)).collect(),
        s => Ok(vec![one(s)?]),
    }
}
