//! Seeded random samplers for the randomized identity checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{letter, AlgebraKind, CyclicWord, Letter, Poly, Trace, Word};
use crate::calculus::Derivation;
use crate::connection::{FormMatrix, Lift, PolyMatrix};
use crate::forms::{form_du, form_exact, Form};
use crate::matrix::Matrix;
use crate::rational::Q;

/// Coefficients are drawn from this fixed set.
const COEFFS: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-3, 2)];

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent sub-sampler for trial `i`.
    pub fn fork(seed: u64, i: u64) -> Self {
        Self::new(seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn range(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.rng.gen_range(lo..=hi_inclusive)
    }

    pub fn coeff(&mut self) -> Q {
        let (n, d) = *COEFFS.choose(&mut self.rng).unwrap();
        Q::new(n, d)
    }

    pub fn small_int(&mut self, lo: i64, hi: i64) -> Q {
        Q::from_int(self.rng.gen_range(lo..=hi))
    }

    pub fn letter(&mut self, kind: AlgebraKind, rank: usize) -> Letter {
        let g = self.rng.gen_range(0..rank);
        let inv = kind == AlgebraKind::Group && self.rng.gen_bool(0.35);
        letter(g, inv)
    }

    /// A reduced word of length at most `max_len` (reduction may shorten it).
    pub fn word(&mut self, kind: AlgebraKind, rank: usize, max_len: usize) -> Word {
        let len = self.rng.gen_range(0..=max_len);
        self.word_exact(kind, rank, len)
    }

    /// A reduced word with exactly `len` letters.
    pub fn word_exact(&mut self, kind: AlgebraKind, rank: usize, len: usize) -> Word {
        let mut ls: Vec<Letter> = Vec::with_capacity(len);
        while ls.len() < len {
            let l = self.letter(kind, rank);
            if ls.last() == Some(&(l ^ 1)) {
                continue;
            }
            ls.push(l);
        }
        Word::from_letters(&ls)
    }

    pub fn poly(&mut self, kind: AlgebraKind, rank: usize, max_len: usize, max_terms: usize) -> Poly {
        let n = self.rng.gen_range(1..=max_terms.max(1));
        (0..n).map(|_| (self.word(kind, rank, max_len), self.coeff())).collect()
    }

    /// A derivation whose generator values use words of length ≤ `max_len`.
    pub fn derivation(&mut self, kind: AlgebraKind, rank: usize, max_len: usize) -> Derivation {
        Derivation::new((0..rank).map(|_| self.poly(kind, rank, max_len, 2)).collect())
    }

    /// Degree-0 derivation `w_j ↦ Σ_i A_ij w_i` of a random integer matrix.
    pub fn gl_matrix(&mut self, n: usize) -> Vec<Vec<Q>> {
        (0..n).map(|_| (0..n).map(|_| self.small_int(-3, 3)).collect()).collect()
    }

    /// A random skew-symmetric rational matrix.
    pub fn skew_matrix(&mut self, n: usize) -> Vec<Vec<Q>> {
        let mut m = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let c = if self.rng.gen_bool(0.2) { Q::zero() } else { self.coeff() };
                m[j][i] = -&c;
                m[i][j] = c;
            }
        }
        m
    }

    pub fn cyclic_word(&mut self, kind: AlgebraKind, rank: usize, min_len: usize, max_len: usize) -> CyclicWord {
        let len = self.rng.gen_range(min_len..=max_len);
        CyclicWord::new(&self.word_exact(kind, rank, len))
    }

    /// A trace element with up to `max_terms` cyclic words.
    pub fn trace(&mut self, kind: AlgebraKind, rank: usize, max_len: usize, max_terms: usize) -> Trace {
        let n = self.rng.gen_range(1..=max_terms.max(1));
        (0..n).map(|_| (self.cyclic_word(kind, rank, 0, max_len), self.coeff())).collect()
    }

    pub fn bool(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// A one-form `Σ c·a du b` over `T(W)` with `|a| + |b| ≤ max_len`.
    pub fn one_form(&mut self, rank: usize, max_len: usize, max_terms: usize) -> Form {
        let n = self.rng.gen_range(1..=max_terms.max(1));
        let mut out = Form::zero();
        for _ in 0..n {
            let total = self.rng.gen_range(0..=max_len);
            let left = self.rng.gen_range(0..=total);
            let a = self.word_exact(AlgebraKind::Tensor, rank, left);
            let b = self.word_exact(AlgebraKind::Tensor, rank, total - left);
            let u = self.rng.gen_range(0..rank);
            out.add_scaled(&form_du(a, u, b), &self.coeff());
        }
        out
    }

    /// An `n × n` connection form with independent random entries, zero with
    /// probability `1/3` each.
    pub fn form_matrix(&mut self, n: usize, rank: usize, max_len: usize) -> FormMatrix {
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| if self.rng.gen_bool(1.0 / 3.0) { Form::zero() } else { self.one_form(rank, max_len, 2) })
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows)
    }

    /// `ω = diag(d x_i) + strictly upper-triangular`, whose curvature has
    /// zero trace in `DR²`.
    pub fn trace_flat_form_matrix(&mut self, n: usize, rank: usize, max_len: usize) -> FormMatrix {
        let mut m = self.form_matrix(n, rank, max_len);
        for i in 0..n {
            m.rows[i][i] = form_exact(&self.poly(AlgebraKind::Tensor, rank, max_len, 2));
            for j in 0..i {
                m.rows[i][j] = Form::zero();
            }
        }
        m
    }

    /// A random product of elementary matrices over `T(W)` and its inverse.
    pub fn elementary_gauge(&mut self, n: usize, rank: usize, max_len: usize) -> (PolyMatrix, PolyMatrix) {
        let mut g: PolyMatrix = Matrix::identity(n);
        let mut gi: PolyMatrix = Matrix::identity(n);
        if n < 2 {
            return (g, gi);
        }
        for _ in 0..self.rng.gen_range(1..=n) {
            let i = self.rng.gen_range(0..n);
            let j = (i + self.rng.gen_range(1..n)) % n;
            let e = self.poly(AlgebraKind::Tensor, rank, max_len, 2);
            let mut m: PolyMatrix = Matrix::identity(n);
            m.rows[i][j] = e.clone();
            let mut mi: PolyMatrix = Matrix::identity(n);
            mi.rows[i][j] = -&e;
            g = g.mul(&m);
            gi = mi.mul(&gi);
        }
        (g, gi)
    }

    /// The flat form `ω = −G⁻¹ dG` of a random elementary gauge.
    pub fn flat_form_matrix(&mut self, n: usize, rank: usize, max_len: usize) -> FormMatrix {
        let (g, gi) = self.elementary_gauge(n, rank, max_len);
        let dg = g.map(form_exact);
        gi.map(crate::forms::form_from_poly).mul(&dg).scale(&Q::from_int(-1))
    }

    /// Either the trivial lift or a random gauge lift.
    pub fn lift(&mut self, n: usize, rank: usize) -> Lift {
        if self.rng.gen_bool(0.5) {
            Lift::Trivial
        } else {
            let (g, g_inv) = self.elementary_gauge(n, rank, 1);
            Lift::Gauge { g, g_inv }
        }
    }
}
