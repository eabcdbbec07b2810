//! Pointwise Chevalley–Eilenberg cochains on derivation Lie algebras.
//!
//! A cochain is a black-box evaluator on tuples of derivations together with
//! the module its values live in. The differential is evaluated on a single
//! tuple at a time.

use crate::algebra::{trace_lift, trace_project, AlgebraKind, CyclicWord, Trace, Trace2};
use crate::calculus::Derivation;
use crate::connection::{
    c_matrix, env_end_action, trace_endo, DefaultConnection, EnvMatrix, FreeConnection, PolyMatrix,
};
use crate::error::{Error, Result};
use crate::forms::contract;
use crate::io::ConnectionSpec;
use crate::matrix::{Entry, Matrix};
use crate::rational::Q;

/// A module over the derivation Lie algebra.
pub trait CeModule {
    type Value: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::Value;
    fn add_signed(&self, acc: &mut Self::Value, v: &Self::Value, negate: bool);
    fn act(&self, f: &Derivation, v: &Self::Value) -> Self::Value;
}

/// `|A|` with `f·|x| = |f(x)|`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TraceModule;

impl CeModule for TraceModule {
    type Value = Trace;
    fn zero(&self) -> Trace {
        Trace::zero()
    }
    fn add_signed(&self, acc: &mut Trace, v: &Trace, negate: bool) {
        if negate {
            acc.sub_assign(v)
        } else {
            acc.add_assign(v)
        }
    }
    fn act(&self, f: &Derivation, v: &Trace) -> Trace {
        trace_project(&f.apply(&trace_lift(v)))
    }
}

/// `|A| ⊗ |A|` with `f·(|x|⊗|y|) = |f(x)|⊗|y| + |x|⊗|f(y)|`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Trace2Module;

impl CeModule for Trace2Module {
    type Value = Trace2;
    fn zero(&self) -> Trace2 {
        Trace2::zero()
    }
    fn add_signed(&self, acc: &mut Trace2, v: &Trace2, negate: bool) {
        if negate {
            acc.sub_assign(v)
        } else {
            acc.add_assign(v)
        }
    }
    fn act(&self, f: &Derivation, v: &Trace2) -> Trace2 {
        let mut out = Trace2::zero();
        for ((x, y), c) in v {
            for (fx, k) in &f.apply_word(x.word()) {
                out.add_term((CyclicWord::new(fx), y.clone()), c * k);
            }
            for (fy, k) in &f.apply_word(y.word()) {
                out.add_term((x.clone(), CyclicWord::new(fy)), c * k);
            }
        }
        out
    }
}

/// `End_{A^e}(Ω¹A)` for the default action, `f·μ = [L_f, μ]`.
#[derive(Clone, Copy, Debug)]
pub struct EnvEndModule {
    pub kind: AlgebraKind,
    pub dim: usize,
}

impl CeModule for EnvEndModule {
    type Value = EnvMatrix;
    fn zero(&self) -> EnvMatrix {
        Matrix::zero(self.dim)
    }
    fn add_signed(&self, acc: &mut EnvMatrix, v: &EnvMatrix, negate: bool) {
        *acc = if negate { acc.sub(v) } else { acc.add(v) };
    }
    fn act(&self, f: &Derivation, v: &EnvMatrix) -> EnvMatrix {
        env_end_action(self.kind, f, v)
    }
}

/// `End_B(B^n)` for a free connection, `f·μ = [ρ(f), μ]`.
#[derive(Clone, Copy, Debug)]
pub struct FreeEndModule<'a> {
    pub conn: &'a FreeConnection,
}

impl CeModule for FreeEndModule<'_> {
    type Value = PolyMatrix;
    fn zero(&self) -> PolyMatrix {
        Matrix::zero(self.conn.rank())
    }
    fn add_signed(&self, acc: &mut PolyMatrix, v: &PolyMatrix, negate: bool) {
        *acc = if negate { acc.sub(v) } else { acc.add(v) };
    }
    fn act(&self, f: &Derivation, v: &PolyMatrix) -> PolyMatrix {
        self.conn.end_action(f, v)
    }
}

/// An alternating `arity`-cochain with values in `module`.
pub struct CeCochain<'a, M: CeModule> {
    pub arity: usize,
    pub module: M,
    eval: Box<dyn Fn(&[Derivation]) -> M::Value + 'a>,
}

impl<'a, M: CeModule> CeCochain<'a, M> {
    pub fn new(arity: usize, module: M, eval: impl Fn(&[Derivation]) -> M::Value + 'a) -> Self {
        CeCochain { arity, module, eval: Box::new(eval) }
    }

    pub fn eval(&self, fs: &[Derivation]) -> Result<M::Value> {
        if fs.len() != self.arity {
            return Err(Error::Usage(format!("cochain of arity {} given {} arguments", self.arity, fs.len())));
        }
        Ok((self.eval)(fs))
    }
}

fn without(fs: &[Derivation], skip: &[usize]) -> Vec<Derivation> {
    fs.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, f)| f.clone()).collect()
}

/// `(d_CE ψ)(x₀,…,x_n)`.
pub fn ce_d_eval<M: CeModule>(psi: &CeCochain<M>, fs: &[Derivation]) -> Result<M::Value> {
    if fs.len() != psi.arity + 1 {
        return Err(Error::Usage(format!(
            "d_CE of an arity-{} cochain needs {} arguments, got {}",
            psi.arity,
            psi.arity + 1,
            fs.len()
        )));
    }
    let m = &psi.module;
    let mut out = m.zero();
    for i in 0..fs.len() {
        let v = m.act(&fs[i], &psi.eval(&without(fs, &[i]))?);
        m.add_signed(&mut out, &v, i % 2 == 1);
    }
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            let mut args = vec![fs[i].bracket(&fs[j])];
            args.extend(without(fs, &[i, j]));
            m.add_signed(&mut out, &psi.eval(&args)?, (i + j) % 2 == 1);
        }
    }
    Ok(out)
}

/// All permutations of `0..k` with their signs, in lexicographic order.
pub fn signed_permutations(k: usize) -> Vec<(i8, Vec<usize>)> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, sign: i8, out: &mut Vec<(i8, Vec<usize>)>) {
        if rest.is_empty() {
            out.push((sign, cur.clone()));
            return;
        }
        for pos in 0..rest.len() {
            let x = rest.remove(pos);
            cur.push(x);
            // picking the element at `pos` passes over `pos` smaller ones
            go(rest, cur, if pos % 2 == 0 { sign } else { -sign }, out);
            cur.pop();
            rest.insert(pos, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..k).collect(), &mut Vec::new(), 1, &mut out);
    out
}

/// `alt(f₁∧⋯∧f_k) = Σ_s sgn(s) f_{s(1)}⊗⋯⊗f_{s(k)}`.
pub fn alt_apply<T: Clone>(fs: &[T]) -> Vec<(i8, Vec<T>)> {
    signed_permutations(fs.len())
        .into_iter()
        .map(|(s, p)| (s, p.iter().map(|&i| fs[i].clone()).collect()))
        .collect()
}

/// `Div_k ∘ alt` evaluated on one tuple.
pub fn div_alt(kind: AlgebraKind, conn: &DefaultConnection, fs: &[Derivation]) -> Result<Trace2> {
    if fs.is_empty() {
        return Err(Error::Usage("div_k needs k ≥ 1 derivations".into()));
    }
    let ms: Vec<EnvMatrix> = fs.iter().map(|f| c_matrix(kind, conn, f)).collect();
    let mut out = Trace2::zero();
    for (s, perm) in alt_apply(&ms) {
        let t = trace_endo(&Matrix::reversed_product(&perm));
        if s > 0 {
            out.add_assign(&t)
        } else {
            out.sub_assign(&t)
        }
    }
    Ok(out)
}

/// `Div_k ∘ alt` as a cochain with values in `|A| ⊗ |A|`.
pub fn div_alt_cochain(kind: AlgebraKind, conn: &DefaultConnection, k: usize) -> CeCochain<'_, Trace2Module> {
    CeCochain::new(k, Trace2Module, move |fs| div_alt(kind, conn, fs).expect("arity checked"))
}

/// `c_∇` as an `End`-valued 1-cochain for the default action.
pub fn c_cochain(kind: AlgebraKind, conn: &DefaultConnection, rank: usize) -> CeCochain<'_, EnvEndModule> {
    CeCochain::new(1, EnvEndModule { kind, dim: rank }, move |fs| c_matrix(kind, conn, &fs[0]))
}

/// `c_∇` as an `End`-valued 1-cochain for a free connection.
pub fn free_c_cochain(conn: &FreeConnection) -> CeCochain<'_, FreeEndModule<'_>> {
    CeCochain::new(1, FreeEndModule { conn }, move |fs| conn.c_matrix(&fs[0]))
}

/// Shuffle product of a 1-cochain with a `k`-cochain, both given by their
/// matrices: `(c·ψ)(f₀,…,f_k) = Σ_j (−1)^j c(f_j) ∘ ψ(…f̌_j…)`.
fn shuffle_power_from<T: Entry>(cs: &[Matrix<T>]) -> Matrix<T> {
    if cs.len() == 1 {
        return cs[0].clone();
    }
    let mut out = Matrix::zero(cs[0].dim());
    for j in 0..cs.len() {
        let rest: Vec<Matrix<T>> = cs.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, m)| m.clone()).collect();
        // mat(c(f_j) ∘ X) = mat(X)·mat(c(f_j))
        let term = shuffle_power_from(&rest).mul(&cs[j]);
        out = if j % 2 == 0 { out.add(&term) } else { out.sub(&term) };
    }
    out
}

/// Matrix of `c_∇^k(f₁,…,f_k)`, the `k`-fold shuffle power.
pub fn shuffle_power(kind: AlgebraKind, conn: &DefaultConnection, fs: &[Derivation]) -> Result<EnvMatrix> {
    if fs.is_empty() {
        return Err(Error::Usage("shuffle power needs k ≥ 1 derivations".into()));
    }
    let cs: Vec<EnvMatrix> = fs.iter().map(|f| c_matrix(kind, conn, f)).collect();
    Ok(shuffle_power_from(&cs))
}

/// `Tr(c_∇^k)(f₁,…,f_k)`.
pub fn shuffle_power_trace(kind: AlgebraKind, conn: &DefaultConnection, fs: &[Derivation]) -> Result<Trace2> {
    Ok(trace_endo(&shuffle_power(kind, conn, fs)?))
}

/// `(d_CE c)(f,g) + [c(f), c(g)] − ι(R)(f∧g)`.
#[derive(Clone, Debug, PartialEq)]
pub enum McDefect {
    Env(EnvMatrix),
    Poly(PolyMatrix),
}

impl McDefect {
    pub fn is_zero(&self) -> bool {
        match self {
            McDefect::Env(m) => m.is_zero(),
            McDefect::Poly(m) => m.is_zero(),
        }
    }
}

/// Maurer–Cartan defect for a flat default connection.
pub fn mc_defect_default(
    kind: AlgebraKind,
    conn: &DefaultConnection,
    f: &Derivation,
    g: &Derivation,
) -> Result<EnvMatrix> {
    let c = c_cochain(kind, conn, f.rank());
    let d = ce_d_eval(&c, &[f.clone(), g.clone()])?;
    let (cf, cg) = (c.eval(std::slice::from_ref(f))?, c.eval(std::slice::from_ref(g))?);
    Ok(d.add(&cg.mul(&cf)).sub(&cf.mul(&cg)))
}

/// `ι(R)(f∧g) = i_g i_f R` as a matrix over `B`.
pub fn iota_curvature(conn: &FreeConnection, f: &Derivation, g: &Derivation) -> PolyMatrix {
    conn.curvature().map(|e| crate::connection::form0_to_poly(&contract(g, &contract(f, e))))
}

/// Maurer–Cartan defect for a connection on a free module.
pub fn mc_defect_free(conn: &FreeConnection, f: &Derivation, g: &Derivation) -> Result<PolyMatrix> {
    let c = free_c_cochain(conn);
    let d = ce_d_eval(&c, &[f.clone(), g.clone()])?;
    let (cf, cg) = (conn.c_matrix(f), conn.c_matrix(g));
    Ok(d.add(&cg.mul(&cf)).sub(&cf.mul(&cg)).sub(&iota_curvature(conn, f, g)))
}

pub fn mc_defect(kind: AlgebraKind, conn: &ConnectionSpec, f: &Derivation, g: &Derivation) -> Result<McDefect> {
    match conn {
        ConnectionSpec::Default(c) => Ok(McDefect::Env(mc_defect_default(kind, c, f, g)?)),
        ConnectionSpec::Free(c) => Ok(McDefect::Poly(mc_defect_free(c, f, g)?)),
    }
}

/// The graded commutator `[c, ψ](f,g)` of two End-valued 1-cochains given by
/// their matrices.
fn commutator_11<T: Entry>(cf: &Matrix<T>, cg: &Matrix<T>, pf: &Matrix<T>, pg: &Matrix<T>) -> Matrix<T> {
    // c(f)ψ(g) − c(g)ψ(f) + ψ(f)c(g) − ψ(g)c(f), composition order reversed
    pg.mul(cf).sub(&pf.mul(cg)).add(&cg.mul(pf)).sub(&cf.mul(pg))
}

/// Both sides of `Tr((d_CE + [c_∇,·])ψ) = d_CE(Tr ψ)` for an End-valued
/// 1-cochain `ψ` of the default action, evaluated on `(f, g)`.
pub fn trace_compat_default(
    kind: AlgebraKind,
    conn: &DefaultConnection,
    psi: &CeCochain<EnvEndModule>,
    f: &Derivation,
    g: &Derivation,
) -> Result<(Trace2, Trace2)> {
    if psi.arity != 1 {
        return Err(Error::Usage("trace compatibility is evaluated on 1-cochains".into()));
    }
    let fg = [f.clone(), g.clone()];
    let (cf, cg) = (c_matrix(kind, conn, f), c_matrix(kind, conn, g));
    let (pf, pg) = (psi.eval(&fg[..1])?, psi.eval(&fg[1..])?);
    let lhs = trace_endo(&ce_d_eval(psi, &fg)?.add(&commutator_11(&cf, &cg, &pf, &pg)));
    let tr = CeCochain::new(1, Trace2Module, |fs: &[Derivation]| trace_endo(&psi.eval(fs).expect("arity checked")));
    Ok((lhs, ce_d_eval(&tr, &fg)?))
}

/// The same comparison for a connection on a free module, with values in `|B|`.
pub fn trace_compat_free(
    conn: &FreeConnection,
    psi: &CeCochain<FreeEndModule>,
    f: &Derivation,
    g: &Derivation,
) -> Result<(Trace, Trace)> {
    if psi.arity != 1 {
        return Err(Error::Usage("trace compatibility is evaluated on 1-cochains".into()));
    }
    let fg = [f.clone(), g.clone()];
    let (cf, cg) = (conn.c_matrix(f), conn.c_matrix(g));
    let (pf, pg) = (psi.eval(&fg[..1])?, psi.eval(&fg[1..])?);
    let lhs = trace_project(&ce_d_eval(psi, &fg)?.add(&commutator_11(&cf, &cg, &pf, &pg)).diagonal_sum());
    let tr = CeCochain::new(1, TraceModule, |fs: &[Derivation]| {
        trace_project(&psi.eval(fs).expect("arity checked").diagonal_sum())
    });
    Ok((lhs, ce_d_eval(&tr, &fg)?))
}

/// An element of `gl(W)`, identified with the degree-0 derivation
/// `w_j ↦ Σ_i A_ij w_i`.
pub type GlElement = Matrix<Q>;

pub fn gl_derivation(a: &GlElement) -> Derivation {
    let n = a.dim();
    Derivation::new(
        (0..n)
            .map(|j| (0..n).map(|i| (crate::algebra::Word::gen(i), a.rows[i][j].clone())).collect())
            .collect(),
    )
}

fn check_gl(als: &[GlElement]) -> Result<usize> {
    let n = als.first().map(|a| a.dim()).ok_or_else(|| Error::Usage("need k ≥ 1 matrices".into()))?;
    if als.iter().any(|a| a.dim() != n || a.rows.iter().any(|r| r.len() != n)) {
        return Err(Error::Usage("matrices must be square of one size".into()));
    }
    Ok(n)
}

/// Fuks generator `φ_k(A₁,…,A_k) = Σ_s sgn(s) Tr(A_{s(1)}⋯A_{s(k)})`.
pub fn phi_k_eval(als: &[GlElement]) -> Result<Q> {
    check_gl(als)?;
    let mut out = Q::zero();
    for (s, perm) in alt_apply(als) {
        let prod = perm[1..].iter().fold(perm[0].clone(), |acc, m| acc.mul(m));
        let t = prod.diagonal_sum();
        if s > 0 {
            out += &t
        } else {
            out -= &t
        }
    }
    Ok(out)
}

/// Both sides of `j*(Tr c_{∇W}^k) = (−1)^k φ_k` on one tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct GlRestriction {
    /// Coefficient of `|1|⊗|1|` in `Div_k∘alt` of the degree-0 derivations.
    pub lhs: Q,
    /// `(−1)^k φ_k`.
    pub rhs: Q,
    /// Whether `Div_k∘alt` had no other terms.
    pub scalar_only: bool,
}

impl GlRestriction {
    pub fn pass(&self) -> bool {
        self.scalar_only && self.lhs == self.rhs
    }
}

pub fn gl_restrict(als: &[GlElement]) -> Result<GlRestriction> {
    check_gl(als)?;
    let fs: Vec<Derivation> = als.iter().map(gl_derivation).collect();
    let t = div_alt(AlgebraKind::Tensor, &DefaultConnection::Standard, &fs)?;
    let one = (CyclicWord::one(), CyclicWord::one());
    let lhs = t.coeff(&one);
    let scalar_only = t.keys().all(|k| *k == one);
    let phi = phi_k_eval(als)?;
    let rhs = if als.len().is_multiple_of(2) { phi } else { -phi };
    Ok(GlRestriction { lhs, rhs, scalar_only })
}

pub fn gl_restrict_check(als: &[GlElement]) -> Result<bool> {
    Ok(gl_restrict(als)?.pass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::env_from;
    use crate::forms::form_du;
    use crate::sample::Sampler;
    use crate::testutil::p;

    const KINDS: [AlgebraKind; 2] = [AlgebraKind::Tensor, AlgebraKind::Group];

    fn derivs(s: &mut Sampler, kind: AlgebraKind, n: usize, rank: usize) -> Vec<Derivation> {
        (0..n).map(|_| s.derivation(kind, rank, 3)).collect()
    }

    fn gl(rows: &[&[i64]]) -> GlElement {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect())
    }

    #[test]
    fn alt_small_cases() {
        assert_eq!(alt_apply(&['f']), vec![(1, vec!['f'])]);
        assert_eq!(alt_apply(&['f', 'g']), vec![(1, vec!['f', 'g']), (-1, vec!['g', 'f'])]);
        let a = alt_apply(&[0, 1, 2, 3]);
        assert_eq!(a.len(), 24);
        assert_eq!(a.iter().map(|(s, _)| *s as i32).sum::<i32>(), 0);
        // sign agrees with the inversion count
        for (s, perm) in a {
            let inv = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
            assert_eq!(s, if inv % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn zero_cochain_differential_is_the_action() {
        let mut s = Sampler::new(1);
        let v = s.trace(AlgebraKind::Group, 2, 3, 3);
        let f = s.derivation(AlgebraKind::Group, 2, 2);
        let v2 = v.clone();
        let c = CeCochain::new(0, TraceModule, move |_| v2.clone());
        assert_eq!(ce_d_eval(&c, std::slice::from_ref(&f)).unwrap(), TraceModule.act(&f, &v));
        assert!(ce_d_eval(&c, &[]).is_err());
        assert!(c.eval(std::slice::from_ref(&f)).is_err());
    }

    #[test]
    fn div1_is_a_cocycle() {
        for kind in KINDS {
            let mut s = Sampler::new(2);
            let psi = div_alt_cochain(kind, &DefaultConnection::Standard, 1);
            for _ in 0..5 {
                let fs = derivs(&mut s, kind, 2, 2);
                assert!(ce_d_eval(&psi, &fs).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn div3_alt_is_a_cocycle() {
        for kind in KINDS {
            let mut s = Sampler::new(3);
            let psi = div_alt_cochain(kind, &DefaultConnection::Standard, 3);
            let fs: Vec<Derivation> = (0..4).map(|_| s.derivation(kind, 2, 2)).collect();
            assert!(ce_d_eval(&psi, &fs).unwrap().is_zero());
        }
    }

    #[test]
    fn non_cocycle_is_detected() {
        // Div₂ without alternation is not a cocycle in general
        let kind = AlgebraKind::Tensor;
        let conn = DefaultConnection::Standard;
        let psi = CeCochain::new(2, Trace2Module, |fs: &[Derivation]| {
            crate::connection::div_k(kind, &conn, fs).unwrap()
        });
        let mut s = Sampler::new(4);
        let hit = (0..10).any(|_| !ce_d_eval(&psi, &derivs(&mut s, kind, 3, 2)).unwrap().is_zero());
        assert!(hit);
    }

    #[test]
    fn even_alternation_vanishes_and_odd_is_alternating() {
        for kind in KINDS {
            let mut s = Sampler::new(5);
            let fs = derivs(&mut s, kind, 2, 2);
            assert!(div_alt(kind, &DefaultConnection::Standard, &fs).unwrap().is_zero());
            let fs = derivs(&mut s, kind, 3, 2);
            let a = div_alt(kind, &DefaultConnection::Standard, &fs).unwrap();
            let b = div_alt(kind, &DefaultConnection::Standard, &[fs[1].clone(), fs[0].clone(), fs[2].clone()]).unwrap();
            assert_eq!(a, -&b);
        }
    }

    #[test]
    fn shuffle_power_trace_is_div_alt() {
        for kind in KINDS {
            let mut s = Sampler::new(6);
            for k in 1..=3 {
                let fs = derivs(&mut s, kind, k, 2);
                assert_eq!(
                    shuffle_power_trace(kind, &DefaultConnection::Standard, &fs).unwrap(),
                    div_alt(kind, &DefaultConnection::Standard, &fs).unwrap()
                );
            }
        }
    }

    #[test]
    fn flat_default_connections_are_maurer_cartan() {
        for kind in KINDS {
            let mut s = Sampler::new(7);
            for _ in 0..4 {
                let fs = derivs(&mut s, kind, 2, 2);
                assert!(mc_defect_default(kind, &DefaultConnection::Standard, &fs[0], &fs[1]).unwrap().is_zero());
            }
        }
        // a frame connection is flat too
        let e = env_from(&p("1 ab"), &p("1 b"));
        let fr = crate::connection::Frame::elementary(2, &[(1, 0, e)]).unwrap();
        let conn = DefaultConnection::Frame(fr);
        let mut s = Sampler::new(8);
        let fs = derivs(&mut s, AlgebraKind::Tensor, 2, 2);
        assert!(mc_defect_default(AlgebraKind::Tensor, &conn, &fs[0], &fs[1]).unwrap().is_zero());
    }

    #[test]
    fn non_flat_free_connection_defect_vanishes() {
        // ω = u dv: R ≠ 0 but the defect including ι(R) is zero
        let om = Matrix::from_rows(vec![vec![form_du(crate::algebra::Word::gen(0), 1, crate::algebra::Word::empty())]]);
        let conn = FreeConnection::new(om).unwrap();
        assert!(!conn.curvature().is_zero());
        let mut s = Sampler::new(9);
        let mut saw_curvature = false;
        for _ in 0..6 {
            let fs = derivs(&mut s, AlgebraKind::Tensor, 2, 2);
            assert!(mc_defect_free(&conn, &fs[0], &fs[1]).unwrap().is_zero());
            saw_curvature |= !iota_curvature(&conn, &fs[0], &fs[1]).is_zero();
        }
        assert!(saw_curvature);
    }

    #[test]
    fn trace_compatibility() {
        let mut s = Sampler::new(10);
        for kind in KINDS {
            let rnd = |s: &mut Sampler| -> EnvMatrix {
                Matrix::from_rows(
                    (0..2)
                        .map(|_| (0..2).map(|_| env_from(&s.poly(kind, 2, 2, 2), &s.poly(kind, 2, 1, 1))).collect())
                        .collect(),
                )
            };
            let (x, y) = (rnd(&mut s), rnd(&mut s));
            let psi = CeCochain::new(1, EnvEndModule { kind, dim: 2 }, move |fs: &[Derivation]| {
                x.mul(&crate::connection::env_matrix_apply(&fs[0], &y))
            });
            let fs = derivs(&mut s, kind, 2, 2);
            let (l, r) = trace_compat_default(kind, &DefaultConnection::Standard, &psi, &fs[0], &fs[1]).unwrap();
            assert_eq!(l, r);
            assert!(!r.is_zero() || l.is_zero());
        }
    }

    #[test]
    fn fuks_small_values() {
        let a = gl(&[&[1, 2], &[3, 4]]);
        let b = gl(&[&[0, 1], &[-1, 2]]);
        assert_eq!(phi_k_eval(std::slice::from_ref(&a)).unwrap(), Q::from_int(5));
        assert!(phi_k_eval(&[a.clone(), b.clone()]).unwrap().is_zero());
        assert!(phi_k_eval(&[]).is_err());
        assert!(phi_k_eval(&[a.clone(), gl(&[&[1]])]).is_err());
    }

    #[test]
    fn phi3_matches_six_terms() {
        let mut s = Sampler::new(11);
        for _ in 0..10 {
            let m: Vec<GlElement> = (0..3).map(|_| Matrix::from_rows(s.gl_matrix(2))).collect();
            let tr = |x: &GlElement, y: &GlElement, z: &GlElement| x.mul(y).mul(z).diagonal_sum();
            let (a, b, c) = (&m[0], &m[1], &m[2]);
            let mut want = Q::zero();
            for t in [tr(a, b, c), tr(b, c, a), tr(c, a, b)] {
                want += &t;
            }
            for t in [tr(a, c, b), tr(b, a, c), tr(c, b, a)] {
                want -= &t;
            }
            assert_eq!(phi_k_eval(&m).unwrap(), want);
        }
    }

    #[test]
    fn gl_restriction() {
        let traceless = gl(&[&[1, 5], &[2, -1]]);
        let r = gl_restrict(&[traceless]).unwrap();
        assert!(r.pass() && r.lhs.is_zero());
        let a = gl(&[&[1, 2], &[3, 4]]);
        let r = gl_restrict(std::slice::from_ref(&a)).unwrap();
        assert!(r.pass());
        assert_eq!(r.lhs, Q::from_int(-5));
        let mut s = Sampler::new(12);
        let mut nonzero = false;
        for n in [2, 3] {
            for _ in 0..3 {
                let m: Vec<GlElement> = (0..3).map(|_| Matrix::from_rows(s.gl_matrix(n))).collect();
                let r = gl_restrict(&m).unwrap();
                assert!(r.pass(), "{r:?}");
                nonzero |= !r.rhs.is_zero();
            }
        }
        assert!(nonzero);
        let d = gl_derivation(&a);
        assert_eq!(d.values[0], p("1 a 3 b"));
    }
}
