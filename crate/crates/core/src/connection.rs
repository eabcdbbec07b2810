//! Connections, the endomorphisms `c_∇(f)` as coordinate matrices, and the
//! divergence maps `Div_k` and `δ_k`.
//!
//! Matrix convention: an endomorphism `μ` of a free left module with basis
//! `β_i` is stored as `M` with `μ(β_i) = Σ_j M_ij β_j`. Composition then
//! reverses order, `mat(μ∘ν) = mat(ν)·mat(μ)`, so
//! `Div_k(f₁,…,f_k) = Tr(M_k ⋯ M_1)` with `M_i = mat c_∇(f_i)`.

use crate::algebra::{env_trace_split, AlgebraKind, Env, Poly, Trace, Trace2};
use crate::calculus::{basis_lie, Derivation};
use crate::error::{Error, Result};
use crate::forms::{contract, form_d, form_from_poly, form_lie, Form};
use crate::matrix::Matrix;
use crate::rational::Q;

pub type EnvMatrix = Matrix<Env>;
pub type PolyMatrix = Matrix<Poly>;
pub type FormMatrix = Matrix<Form>;

/// A connection on `Ω¹A` for the default derivation action.
#[derive(Clone, Debug)]
pub enum DefaultConnection {
    /// `∇_W` (tensor algebra) or `∇_𝒞` (group algebra): kills the
    /// standard basis `dw` resp. `(dc)c⁻¹`.
    Standard,
    /// The flat connection killing the basis `β'_i = Σ_j G_ij β_j`.
    Frame(Frame),
}

/// An invertible change of basis over `A^e` together with its inverse.
#[derive(Clone, Debug)]
pub struct Frame {
    pub g: EnvMatrix,
    pub g_inv: EnvMatrix,
}

impl Frame {
    pub fn new(g: EnvMatrix, g_inv: EnvMatrix) -> Result<Self> {
        let n = g.dim();
        if g_inv.dim() != n || g.mul(&g_inv) != Matrix::identity(n) || g_inv.mul(&g) != Matrix::identity(n) {
            return Err(Error::Usage("frame matrix and its inverse do not match".into()));
        }
        Ok(Frame { g, g_inv })
    }

    /// Product of elementary matrices `I + e·E_ij` (`i ≠ j`).
    pub fn elementary(n: usize, ops: &[(usize, usize, Env)]) -> Result<Self> {
        let mut g = Matrix::identity(n);
        let mut g_inv = Matrix::identity(n);
        for (i, j, e) in ops {
            if i == j || *i >= n || *j >= n {
                return Err(Error::Usage("elementary operation needs distinct indices in range".into()));
            }
            let mut m = Matrix::identity(n);
            m.rows[*i][*j] = e.clone();
            let mut mi = Matrix::identity(n);
            mi.rows[*i][*j] = -e;
            g = g.mul(&m);
            g_inv = mi.mul(&g_inv);
        }
        Ok(Frame { g, g_inv })
    }
}

/// `φ(f)` applied entrywise.
pub fn env_matrix_apply(f: &Derivation, m: &EnvMatrix) -> EnvMatrix {
    m.map(|e| f.apply_env(e))
}

/// Matrix of `ρ(f) = L_f` on the standard basis (not `A^e`-linear; rows
/// are the coordinates of `L_f(β_i)`).
pub fn lie_matrix(kind: AlgebraKind, f: &Derivation) -> EnvMatrix {
    Matrix::from_rows((0..f.rank()).map(|c| basis_lie(kind, f, c)).collect())
}

/// `mat c_∇(f)` in the standard basis.
pub fn c_matrix(kind: AlgebraKind, conn: &DefaultConnection, f: &Derivation) -> EnvMatrix {
    let std = lie_matrix(kind, f).scale(&Q::from_int(-1));
    match conn {
        DefaultConnection::Standard => std,
        DefaultConnection::Frame(fr) => std.sub(&fr.g_inv.mul(&env_matrix_apply(f, &fr.g))),
    }
}

/// `Tr: End_{A^e}(Ω¹A) → |A^e| ≅ |A| ⊗ |A|`.
pub fn trace_endo(m: &EnvMatrix) -> Trace2 {
    env_trace_split(&m.diagonal_sum())
}

/// `Tr(M_k ⋯ M_1)` for precomputed matrices `[M_1, …, M_k]`.
pub fn div_from_matrices(ms: &[EnvMatrix]) -> Trace2 {
    trace_endo(&Matrix::reversed_product(ms))
}

/// `Div_k(f₁,…,f_k) = Tr(c(f₁)∘⋯∘c(f_k))`.
pub fn div_k(kind: AlgebraKind, conn: &DefaultConnection, fs: &[Derivation]) -> Result<Trace2> {
    if fs.is_empty() {
        return Err(Error::Usage("div_k needs k ≥ 1 derivations".into()));
    }
    let ms: Vec<EnvMatrix> = fs.iter().map(|f| c_matrix(kind, conn, f)).collect();
    Ok(div_from_matrices(&ms))
}

/// `δ_k = Div_k ∘ ψ^{⊗k}`.
pub fn delta_k(
    kind: AlgebraKind,
    conn: &DefaultConnection,
    psi: impl Fn(&Trace) -> Derivation,
    xs: &[Trace],
) -> Result<Trace2> {
    let fs: Vec<Derivation> = xs.iter().map(psi).collect();
    div_k(kind, conn, &fs)
}

/// The `End`-module action `f·M = φ(f)(M) + M·L − L·M` with `L = mat L_f`.
pub fn env_end_action(kind: AlgebraKind, f: &Derivation, m: &EnvMatrix) -> EnvMatrix {
    let l = lie_matrix(kind, f);
    env_matrix_apply(f, m).add(&m.mul(&l)).sub(&l.mul(m))
}

/// How derivations act on the basis of a free `B`-module: `ρ(f)(e_i) = Σ Λ(f)_ij e_j`.
#[derive(Clone, Debug)]
pub enum Lift {
    /// `Λ(f) = 0`.
    Trivial,
    /// `ρ(f)` kills the frame `e'_i = Σ_j G_ij e_j`, so `Λ(f) = −G⁻¹ f(G)`.
    Gauge { g: PolyMatrix, g_inv: PolyMatrix },
}

/// A connection `∇e_i = Σ_j ω_ij ⊗ e_j` on the free module `B^n`, `B = T(W)`.
#[derive(Clone, Debug)]
pub struct FreeConnection {
    pub omega: FormMatrix,
    pub lift: Lift,
}

impl FreeConnection {
    pub fn new(omega: FormMatrix) -> Result<Self> {
        for e in omega.rows.iter().flatten() {
            if e.keys().any(|m| m.degree() != 1) {
                return Err(Error::Usage("connection form entries must be one-forms".into()));
            }
        }
        Ok(FreeConnection { omega, lift: Lift::Trivial })
    }

    pub fn with_lift(mut self, lift: Lift) -> Result<Self> {
        if let Lift::Gauge { g, g_inv } = &lift {
            let n = self.rank();
            if g.dim() != n || g.mul(g_inv) != Matrix::identity(n) {
                return Err(Error::Usage("gauge matrix and inverse do not match".into()));
            }
        }
        self.lift = lift;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.omega.dim()
    }

    pub fn lambda(&self, f: &Derivation) -> PolyMatrix {
        match &self.lift {
            Lift::Trivial => Matrix::zero(self.rank()),
            Lift::Gauge { g, g_inv } => g_inv.mul(&g.map(|e| f.apply(e))).scale(&Q::from_int(-1)),
        }
    }

    /// `R = dω − ω·ω`.
    pub fn curvature(&self) -> FormMatrix {
        self.omega.map(form_d).sub(&self.omega.mul(&self.omega))
    }

    /// `mat c_∇(f) = i_f ω − Λ(f)`.
    pub fn c_matrix(&self, f: &Derivation) -> PolyMatrix {
        let iw = self.omega.map(|e| form0_to_poly(&contract(f, e)));
        iw.sub(&self.lambda(f))
    }

    /// `f·M = f(M) + M·Λ(f) − Λ(f)·M`.
    pub fn end_action(&self, f: &Derivation, m: &PolyMatrix) -> PolyMatrix {
        let lam = self.lambda(f);
        m.map(|e| f.apply(e)).add(&m.mul(&lam)).sub(&lam.mul(m))
    }

    /// `Div₁(f) = Tr c_∇(f) ∈ |B|`.
    pub fn div1(&self, f: &Derivation) -> Trace {
        crate::algebra::trace_project(&self.c_matrix(f).diagonal_sum())
    }

    /// `Div_k(f₁,…,f_k) = Tr(c(f₁)∘⋯∘c(f_k)) ∈ |B|`.
    pub fn div_k(&self, fs: &[Derivation]) -> Result<Trace> {
        if fs.is_empty() {
            return Err(Error::Usage("div_k needs k ≥ 1 derivations".into()));
        }
        let ms: Vec<PolyMatrix> = fs.iter().map(|f| self.c_matrix(f)).collect();
        Ok(crate::algebra::trace_project(&Matrix::reversed_product(&ms).diagonal_sum()))
    }

    /// `L_f` applied to the connection form entrywise.
    pub fn lie_omega(&self, f: &Derivation) -> FormMatrix {
        self.omega.map(|e| form_lie(f, e))
    }
}

pub(crate) fn form0_to_poly(a: &Form) -> Poly {
    a.map_basis(|m| m.words[0].clone())
}

pub fn poly_to_form_matrix(m: &PolyMatrix) -> FormMatrix {
    m.map(form_from_poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{env_from, poly_one, CyclicWord, Word};
    use crate::calculus::{fox_expand_rank, lie_derivative, oneform_act};
    use crate::forms::{dr2_normalize, form_du, form_mul};
    use crate::sample::Sampler;

    fn scalar_trace2(t: &Trace2) -> Q {
        t.coeff(&(CyclicWord::one(), CyclicWord::one()))
    }

    #[test]
    fn zero_derivation_gives_zero() {
        let f = Derivation::zero(3);
        assert!(c_matrix(AlgebraKind::Tensor, &DefaultConnection::Standard, &f).is_zero());
        let d = div_k(AlgebraKind::Group, &DefaultConnection::Standard, &[f.clone(), f]).unwrap();
        assert!(d.is_zero());
        assert!(div_k(AlgebraKind::Group, &DefaultConnection::Standard, &[]).is_err());
    }

    #[test]
    fn degree_zero_matrix_is_minus_transpose() {
        // f(w_j) = Σ_i A_ij w_i, so c(f)(dw_j) = −Σ_i A_ij dw_i
        let a = [[1, 2], [3, 4]];
        let f = Derivation::new(
            (0..2)
                .map(|j| (0..2).map(|i| (Word::gen(i), Q::from_int(a[i][j]))).collect())
                .collect(),
        );
        let m = c_matrix(AlgebraKind::Tensor, &DefaultConnection::Standard, &f);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(m.rows[j][i], Env::term((Word::empty(), Word::empty()), Q::from_int(-a[i][j])));
            }
        }
        let t = trace_endo(&m);
        assert_eq!(scalar_trace2(&t), Q::from_int(-5));
    }

    #[test]
    fn nabla_w_column_is_minus_d_f() {
        let mut s = Sampler::new(3);
        let f = s.derivation(AlgebraKind::Tensor, 3, 3);
        let m = c_matrix(AlgebraKind::Tensor, &DefaultConnection::Standard, &f);
        for c in 0..3 {
            let d = fox_expand_rank(AlgebraKind::Tensor, &f.values[c], 3);
            let neg: Vec<Env> = d.iter().map(|e| -e).collect();
            assert_eq!(m.rows[c], neg);
        }
    }

    #[test]
    fn c_matrix_is_env_linear() {
        // c(f)(e·β_i) computed from the definition equals e·(row i)
        for kind in [AlgebraKind::Tensor, AlgebraKind::Group] {
            let mut s = Sampler::new(11);
            let f = s.derivation(kind, 2, 2);
            let m = c_matrix(kind, &DefaultConnection::Standard, &f);
            let e = env_from(&s.poly(kind, 2, 2, 2), &s.poly(kind, 2, 2, 2));
            for i in 0..2 {
                let mut beta = vec![Env::zero(); 2];
                beta[i] = e.clone();
                // (i_{φ(f)} ⊗ id)∇(eβ_i) = φ(f)(e)β_i for a basis-killing ∇
                let mut direct = vec![Env::zero(); 2];
                direct[i] = f.apply_env(&e);
                let l = lie_derivative(kind, &f, &beta);
                let direct: Vec<Env> = direct.iter().zip(&l).map(|(a, b)| a - b).collect();
                assert_eq!(direct, oneform_act(&e, &m.rows[i]));
            }
        }
    }

    #[test]
    fn cyclic_symmetry_small() {
        let mut s = Sampler::new(5);
        for kind in [AlgebraKind::Tensor, AlgebraKind::Group] {
            let fs: Vec<Derivation> = (0..3).map(|_| s.derivation(kind, 2, 2)).collect();
            let a = div_k(kind, &DefaultConnection::Standard, &fs).unwrap();
            let b = div_k(kind, &DefaultConnection::Standard, &[fs[1].clone(), fs[2].clone(), fs[0].clone()]).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn frame_connection_matches_standard_when_trivial() {
        let fr = Frame::elementary(2, &[]).unwrap();
        let mut s = Sampler::new(9);
        let f = s.derivation(AlgebraKind::Group, 2, 2);
        assert_eq!(
            c_matrix(AlgebraKind::Group, &DefaultConnection::Frame(fr), &f),
            c_matrix(AlgebraKind::Group, &DefaultConnection::Standard, &f)
        );
        let e = env_from(&s.poly(AlgebraKind::Group, 2, 2, 1), &poly_one());
        let fr = Frame::elementary(2, &[(0, 1, e)]).unwrap();
        assert!(Frame::new(fr.g.clone(), fr.g_inv.clone()).is_ok());
    }

    #[test]
    fn curvature_examples() {
        // ω = 0 → R = 0
        let z = FreeConnection::new(Matrix::zero(2)).unwrap();
        assert!(z.curvature().is_zero());
        // strictly upper-triangular [[0, du], [0, 0]] is flat
        let mut om = Matrix::zero(2);
        om.rows[0][1] = form_du(Word::empty(), 0, Word::empty());
        assert!(FreeConnection::new(om).unwrap().curvature().is_zero());
        // ω = u dv: R = du dv − u dv u dv, and Tr R = |du dv| in DR²
        let om = Matrix::from_rows(vec![vec![form_du(Word::gen(0), 1, Word::empty())]]);
        let r = FreeConnection::new(om.clone()).unwrap().curvature();
        let du = form_du(Word::empty(), 0, Word::empty());
        let dv = form_du(Word::empty(), 1, Word::empty());
        let expected = &form_mul(&du, &dv) - &form_mul(&om.rows[0][0], &om.rows[0][0]);
        assert_eq!(r.rows[0][0], expected);
        assert_eq!(dr2_normalize(&r.rows[0][0]).unwrap(), dr2_normalize(&form_mul(&du, &dv)).unwrap());
    }
}
