//! Square matrices over the non-commutative rings used for coordinates.

use crate::algebra::{env_mul, env_one, poly_mul, poly_one, Env, Poly};
use crate::forms::{form_from_poly, form_mul, Form};
use crate::rational::Q;

pub trait Entry: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn mul(a: &Self, b: &Self) -> Self;
    fn add_assign(&mut self, b: &Self);
    fn scale(&self, c: &Q) -> Self;
    fn is_zero(&self) -> bool;
}

impl Entry for Env {
    fn zero() -> Self {
        Env::default()
    }
    fn one() -> Self {
        env_one()
    }
    fn mul(a: &Self, b: &Self) -> Self {
        env_mul(a, b)
    }
    fn add_assign(&mut self, b: &Self) {
        crate::lincomb::LinComb::add_assign(self, b)
    }
    fn scale(&self, c: &Q) -> Self {
        crate::lincomb::LinComb::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        crate::lincomb::LinComb::is_zero(self)
    }
}

impl Entry for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn one() -> Self {
        poly_one()
    }
    fn mul(a: &Self, b: &Self) -> Self {
        poly_mul(a, b)
    }
    fn add_assign(&mut self, b: &Self) {
        crate::lincomb::LinComb::add_assign(self, b)
    }
    fn scale(&self, c: &Q) -> Self {
        crate::lincomb::LinComb::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        crate::lincomb::LinComb::is_zero(self)
    }
}

impl Entry for Form {
    fn zero() -> Self {
        Form::default()
    }
    fn one() -> Self {
        form_from_poly(&poly_one())
    }
    fn mul(a: &Self, b: &Self) -> Self {
        form_mul(a, b)
    }
    fn add_assign(&mut self, b: &Self) {
        crate::lincomb::LinComb::add_assign(self, b)
    }
    fn scale(&self, c: &Q) -> Self {
        crate::lincomb::LinComb::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        crate::lincomb::LinComb::is_zero(self)
    }
}

impl Entry for Q {
    fn zero() -> Self {
        Q::zero()
    }
    fn one() -> Self {
        Q::one()
    }
    fn mul(a: &Self, b: &Self) -> Self {
        a * b
    }
    fn add_assign(&mut self, b: &Self) {
        *self += b;
    }
    fn scale(&self, c: &Q) -> Self {
        self * c
    }
    fn is_zero(&self) -> bool {
        Q::is_zero(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    pub rows: Vec<Vec<T>>,
}

impl<T: Entry> Matrix<T> {
    pub fn zero(n: usize) -> Self {
        Matrix { rows: vec![vec![T::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i][i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        Matrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|e| e.is_zero())
    }

    pub fn mul(&self, b: &Self) -> Self {
        let n = self.dim();
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let a = &self.rows[i][j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let bjk = &b.rows[j][k];
                    if !bjk.is_zero() {
                        out.rows[i][k].add_assign(&T::mul(a, bjk));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, b: &Self) -> Self {
        self.zip(b, |x, y| {
            let mut z = x.clone();
            z.add_assign(y);
            z
        })
    }

    pub fn sub(&self, b: &Self) -> Self {
        self.add(&b.scale(&Q::from_int(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    fn zip(&self, b: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Matrix {
            rows: self.rows.iter().zip(&b.rows).map(|(r, s)| r.iter().zip(s).map(|(x, y)| f(x, y)).collect()).collect(),
        }
    }

    /// Sum of the diagonal entries.
    pub fn diagonal_sum(&self) -> T {
        let mut s = T::zero();
        for i in 0..self.dim() {
            s.add_assign(&self.rows[i][i]);
        }
        s
    }

    /// `M_k ⋯ M_1` for the list `[M_1, …, M_k]`.
    pub fn reversed_product(ms: &[Self]) -> Self {
        let mut it = ms.iter().rev();
        let first = it.next().expect("non-empty product").clone();
        it.fold(first, |acc, m| acc.mul(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{env_trace_split, AlgebraKind};
    use crate::sample::Sampler;

    #[test]
    fn trace_of_products_is_cyclic() {
        for seed in 0..20 {
            let mut s = Sampler::new(seed);
            let rnd = |s: &mut Sampler| {
                Matrix::from_rows(
                    (0..2)
                        .map(|_| {
                            (0..2)
                                .map(|_| {
                                    let a = s.poly(AlgebraKind::Group, 2, 2, 2);
                                    let b = s.poly(AlgebraKind::Group, 2, 2, 1);
                                    crate::algebra::env_from(&a, &b)
                                })
                                .collect()
                        })
                        .collect(),
                )
            };
            let (m, n) = (rnd(&mut s), rnd(&mut s));
            assert_eq!(env_trace_split(&m.mul(&n).diagonal_sum()), env_trace_split(&n.mul(&m).diagonal_sum()));
        }
    }

    #[test]
    fn identity_trace() {
        let i: Matrix<Env> = Matrix::identity(3);
        let t = env_trace_split(&i.diagonal_sum());
        assert_eq!(t.len(), 1);
        assert_eq!(t.iter().next().unwrap().1, &Q::from_int(3));
    }
}
