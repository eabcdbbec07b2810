//! The adjoint action `ad_f∇` of a derivation on a connection over a free
//! module, for the identity resolution `P₀ = M`.
//!
//! With `∇e_i = Σ ω_ij ⊗ e_j` and `λ[f](e_i) = Σ Λ_ij e_j`,
//! `ad_f∇ = (L_f ⊗ id + id ⊗ λ[f])∘∇ − ∇∘λ[f]` has matrix
//! `L_f ω + ωΛ − dΛ − Λω`.

use crate::algebra::{poly_mul, trace_project, Poly};
use crate::calculus::Derivation;
use crate::connection::{form0_to_poly, poly_to_form_matrix, FormMatrix, FreeConnection, PolyMatrix};
use crate::error::{Error, Result};
use crate::forms::{contract, de_rham_d, dr1_normalize, dr2_normalize, form_exact, Dr1};

/// A derivation together with its action `λ[f]` on the basis of `B^n`.
#[derive(Clone, Debug)]
pub struct LiftedAction {
    pub f: Derivation,
    pub lambda: PolyMatrix,
}

impl LiftedAction {
    /// The action `ρ(f)` fixed by the connection's lift.
    pub fn from_connection(conn: &FreeConnection, f: &Derivation) -> Self {
        LiftedAction { f: f.clone(), lambda: conn.lambda(f) }
    }

    /// `λ[f] + μ` for a `B`-linear `μ`.
    pub fn perturbed(&self, mu: &PolyMatrix) -> Self {
        LiftedAction { f: self.f.clone(), lambda: self.lambda.add(mu) }
    }

    /// `λ[f](Σ b_i e_i)` in coordinates.
    pub fn apply(&self, m: &[Poly]) -> Vec<Poly> {
        let n = self.lambda.dim();
        let mut out: Vec<Poly> = m.iter().map(|b| self.f.apply(b)).collect();
        for i in 0..n {
            for j in 0..n {
                out[j].add_assign(&poly_mul(&m[i], &self.lambda.rows[i][j]));
            }
        }
        out
    }
}

/// `ad_f∇` as a matrix of one-forms.
pub fn adjoint_eval(conn: &FreeConnection, act: &LiftedAction) -> Result<FormMatrix> {
    if act.lambda.dim() != conn.rank() {
        return Err(Error::Usage("lift and connection have different ranks".into()));
    }
    let lam = poly_to_form_matrix(&act.lambda);
    let dlam = act.lambda.map(form_exact);
    Ok(conn.lie_omega(&act.f).add(&conn.omega.mul(&lam)).sub(&dlam).sub(&lam.mul(&conn.omega)))
}

/// `Tr(ad_f∇)` in `DR¹B`.
pub fn adjoint_trace(v: &FormMatrix) -> Result<Dr1> {
    dr1_normalize(&v.diagonal_sum())
}

/// `D_∇ M = dM + Mω − ωM` for an endomorphism `M` of degree 0.
pub fn covariant_d0(conn: &FreeConnection, m: &PolyMatrix) -> FormMatrix {
    let mf = poly_to_form_matrix(m);
    m.map(form_exact).add(&mf.mul(&conn.omega)).sub(&conn.omega.mul(&mf))
}

/// `i_f` applied entrywise to a matrix of one-forms.
pub fn contract_matrix(f: &Derivation, m: &FormMatrix) -> PolyMatrix {
    m.map(|e| form0_to_poly(&contract(f, e)))
}

/// `ad_f∇ − (D_∇(c_∇(f)) + i_f R)`.
pub fn adjoint_identity_defect(conn: &FreeConnection, f: &Derivation) -> Result<FormMatrix> {
    let ad = adjoint_eval(conn, &LiftedAction::from_connection(conn, f))?;
    let ifr = conn.curvature().map(|e| contract(f, e));
    Ok(ad.sub(&covariant_d0(conn, &conn.c_matrix(f))).sub(&ifr))
}

/// Whether `Tr R = 0` in `DR²B`.
pub fn is_trace_flat(conn: &FreeConnection) -> Result<bool> {
    Ok(dr2_normalize(&conn.curvature().diagonal_sum())?.is_zero())
}

/// `(Tr ad_f∇, d Div₁(f))` in `DR¹B`. The two agree when `∇` is trace-flat.
pub fn adjoint_trace_vs_divergence(conn: &FreeConnection, f: &Derivation) -> Result<(Dr1, Dr1)> {
    let ad = adjoint_eval(conn, &LiftedAction::from_connection(conn, f))?;
    Ok((adjoint_trace(&ad)?, de_rham_d(&conn.div1(f))))
}

/// `i_g(ad_f∇) − (f·c_∇(g) − c_∇([f,g]))`; the homotopy term vanishes at
/// length zero.
pub fn adjoint_contraction_defect(conn: &FreeConnection, f: &Derivation, g: &Derivation) -> Result<PolyMatrix> {
    let ad = adjoint_eval(conn, &LiftedAction::from_connection(conn, f))?;
    let lhs = contract_matrix(g, &ad);
    let rhs = conn.end_action(f, &conn.c_matrix(g)).sub(&conn.c_matrix(&f.bracket(g)));
    Ok(lhs.sub(&rhs))
}

/// Outcome of perturbing the lift by a `B`-linear `μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftCheck {
    pub unchanged: bool,
    /// `Tr ad` after minus before.
    pub difference: Dr1,
    /// `−d|Tr μ|`, the change forced by the formula for `ad_f∇`.
    pub predicted: Dr1,
}

/// Compares `Tr(ad_f∇)` for `λ[f]` and `λ[f] + μ`. At length zero the lift
/// of `ρ(f)` is `ρ(f)` itself, so only `μ = 0` is an admissible change; for
/// other `μ` the difference is reported next to its predicted value.
pub fn lift_independence_check(conn: &FreeConnection, f: &Derivation, mu: &PolyMatrix) -> Result<LiftCheck> {
    let act = LiftedAction::from_connection(conn, f);
    let before = adjoint_trace(&adjoint_eval(conn, &act)?)?;
    let after = adjoint_trace(&adjoint_eval(conn, &act.perturbed(mu))?)?;
    let difference = &after - &before;
    let predicted = -&de_rham_d(&trace_project(&mu.diagonal_sum()));
    Ok(LiftCheck { unchanged: difference.is_zero(), difference, predicted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraKind, Word};
    use crate::connection::Lift;
    use crate::forms::{form_du, form_lie, Form};
    use crate::matrix::Matrix;
    use crate::sample::Sampler;

    fn du(u: usize) -> Form {
        form_du(Word::empty(), u, Word::empty())
    }

    #[test]
    fn zero_connection_zero_action() {
        let conn = FreeConnection::new(Matrix::zero(2)).unwrap();
        let f = Sampler::new(1).derivation(AlgebraKind::Tensor, 2, 3);
        let ad = adjoint_eval(&conn, &LiftedAction::from_connection(&conn, &f)).unwrap();
        assert!(ad.is_zero());
        assert!(adjoint_trace(&ad).unwrap().is_zero());
    }

    #[test]
    fn rank_one_exact_form() {
        let conn = FreeConnection::new(Matrix::from_rows(vec![vec![du(0)]])).unwrap();
        let f = Sampler::new(2).derivation(AlgebraKind::Tensor, 2, 3);
        let ad = adjoint_eval(&conn, &LiftedAction::from_connection(&conn, &f)).unwrap();
        assert_eq!(ad.rows[0][0], form_exact(&f.values[0]));
        assert_eq!(ad.rows[0][0], form_lie(&f, &du(0)));
    }

    #[test]
    fn lift_is_a_derivation_rule() {
        let mut s = Sampler::new(3);
        let (g, g_inv) = s.elementary_gauge(2, 2, 1);
        let conn = FreeConnection::new(s.form_matrix(2, 2, 1)).unwrap().with_lift(Lift::Gauge { g, g_inv }).unwrap();
        let f = s.derivation(AlgebraKind::Tensor, 2, 2);
        let act = LiftedAction::from_connection(&conn, &f);
        let b = s.poly(AlgebraKind::Tensor, 2, 2, 2);
        let m = vec![s.poly(AlgebraKind::Tensor, 2, 2, 2), s.poly(AlgebraKind::Tensor, 2, 2, 2)];
        let bm: Vec<Poly> = m.iter().map(|x| poly_mul(&b, x)).collect();
        let lm = act.apply(&m);
        let want: Vec<Poly> = m.iter().zip(&lm).map(|(x, l)| &poly_mul(&f.apply(&b), x) + &poly_mul(&b, l)).collect();
        assert_eq!(act.apply(&bm), want);
    }

    #[test]
    fn covariant_derivative_of_c_plus_contracted_curvature() {
        let mut s = Sampler::new(4);
        for n in 1..=3 {
            let lift = s.lift(n, 2);
            let conn = FreeConnection::new(s.form_matrix(n, 2, 2)).unwrap().with_lift(lift).unwrap();
            let f = s.derivation(AlgebraKind::Tensor, 2, 2);
            assert!(adjoint_identity_defect(&conn, &f).unwrap().is_zero());
        }
    }

    #[test]
    fn trace_flat_samples() {
        // diag(du, 0)
        let mut om = Matrix::zero(2);
        om.rows[0][0] = du(0);
        let conn = FreeConnection::new(om).unwrap();
        assert!(is_trace_flat(&conn).unwrap());
        let f = Sampler::new(5).derivation(AlgebraKind::Tensor, 2, 3);
        let (l, r) = adjoint_trace_vs_divergence(&conn, &f).unwrap();
        assert_eq!(l, r);
        assert_eq!(r, de_rham_d(&trace_project(&f.values[0])));
        // strictly upper triangular
        let mut om = Matrix::zero(2);
        om.rows[0][1] = form_du(Word::gen(1), 0, Word::empty());
        let conn = FreeConnection::new(om).unwrap();
        let (l, r) = adjoint_trace_vs_divergence(&conn, &f).unwrap();
        assert!(l.is_zero() && r.is_zero());
        // random trace-flat connections with gauge lifts
        let mut s = Sampler::new(6);
        for _ in 0..4 {
            let lift = s.lift(3, 2);
            let conn = FreeConnection::new(s.trace_flat_form_matrix(3, 2, 2)).unwrap().with_lift(lift).unwrap();
            assert!(is_trace_flat(&conn).unwrap());
            let f = s.derivation(AlgebraKind::Tensor, 2, 2);
            let (l, r) = adjoint_trace_vs_divergence(&conn, &f).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn trace_identity_fails_without_trace_flatness() {
        // ω = u dv: Tr R = |du dv| ≠ 0
        let conn = FreeConnection::new(Matrix::from_rows(vec![vec![form_du(Word::gen(0), 1, Word::empty())]])).unwrap();
        assert!(!is_trace_flat(&conn).unwrap());
        let f = Derivation::new(vec![Poly::zero(), crate::algebra::poly_gen(1)]);
        let (l, r) = adjoint_trace_vs_divergence(&conn, &f).unwrap();
        assert_ne!(l, r);
    }

    #[test]
    fn contraction_identity() {
        let mut s = Sampler::new(7);
        for n in 1..=3 {
            let lift = s.lift(n, 2);
            let conn = FreeConnection::new(s.form_matrix(n, 2, 2)).unwrap().with_lift(lift).unwrap();
            let f = s.derivation(AlgebraKind::Tensor, 2, 2);
            let g = s.derivation(AlgebraKind::Tensor, 2, 2);
            assert!(adjoint_contraction_defect(&conn, &f, &g).unwrap().is_zero());
        }
    }

    #[test]
    fn flat_samples_are_flat() {
        let mut s = Sampler::new(8);
        for n in 1..=3 {
            let conn = FreeConnection::new(s.flat_form_matrix(n, 2, 1)).unwrap();
            assert!(conn.curvature().is_zero());
        }
    }

    #[test]
    fn lift_perturbation() {
        let mut s = Sampler::new(9);
        let conn = FreeConnection::new(s.form_matrix(2, 2, 2)).unwrap();
        let f = s.derivation(AlgebraKind::Tensor, 2, 2);
        let c = lift_independence_check(&conn, &f, &Matrix::zero(2)).unwrap();
        assert!(c.unchanged && c.predicted.is_zero());
        let mu = Matrix::from_rows(vec![
            vec![s.poly(AlgebraKind::Tensor, 2, 2, 2), s.poly(AlgebraKind::Tensor, 2, 2, 2)],
            vec![s.poly(AlgebraKind::Tensor, 2, 2, 2), s.poly(AlgebraKind::Tensor, 2, 2, 2)],
        ]);
        let c = lift_independence_check(&conn, &f, &mu).unwrap();
        assert_eq!(c.difference, c.predicted);
    }
}
