//! Derivations of free algebras and one-forms `Ω¹A` in a free `A^e`-basis.
//!
//! The basis of `Ω¹A` is `{dw}` for a tensor algebra and `{η_c = (dc)c⁻¹}`
//! for a group algebra. A one-form is stored as its coordinate vector: entry
//! `c` is the `A^e`-coefficient `e` of `e·β_c`, where `(x ⊗ y)·β = xβy`.

use crate::algebra::{
    env_from, env_mul, gen_of, is_inverse, AlgebraKind, Env, Letter, Poly, Word,
};
use crate::error::{Error, Result};
use crate::rational::Q;

/// A derivation given by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub values: Vec<Poly>,
}

impl Derivation {
    pub fn zero(rank: usize) -> Self {
        Derivation { values: vec![Poly::zero(); rank] }
    }

    pub fn new(values: Vec<Poly>) -> Self {
        Derivation { values }
    }

    /// The Euler operator `w ↦ w` on generators.
    pub fn euler(rank: usize) -> Self {
        Derivation { values: (0..rank).map(|g| Poly::basis(Word::gen(g))).collect() }
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// The common value of `len(w) - 1` over all terms of all generator
    /// values, if there is one.
    pub fn degree(&self) -> Option<i64> {
        let mut deg = None;
        for v in &self.values {
            for (w, _) in v {
                let d = w.len() as i64 - 1;
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    /// Value on a single letter; `f(c⁻¹) = -c⁻¹ f(c) c⁻¹`.
    pub fn on_letter(&self, l: Letter) -> Poly {
        let v = &self.values[gen_of(l)];
        if !is_inverse(l) {
            return v.clone();
        }
        let ci = Word::from_letters(&[l]);
        let mut out = Poly::zero();
        for (w, c) in v {
            out.add_term(Word::concat3(&ci, w, &ci), -c);
        }
        out
    }

    pub fn apply_word(&self, w: &Word) -> Poly {
        let ls = w.letters();
        let mut out = Poly::zero();
        for p in 0..ls.len() {
            let val = self.on_letter(ls[p]);
            if val.is_zero() {
                continue;
            }
            let pre = w.slice(0, p);
            let suf = w.slice(p + 1, ls.len());
            for (m, c) in &val {
                out.add_term(Word::concat3(&pre, m, &suf), c.clone());
            }
        }
        out
    }

    pub fn apply(&self, x: &Poly) -> Poly {
        x.flat_map(|w| self.apply_word(w))
    }

    /// `φ(f) = f ⊗ id + id ⊗ f` on `A^e`.
    pub fn apply_env(&self, e: &Env) -> Env {
        let mut out = Env::zero();
        for ((a, b), c) in e {
            for (fa, ca) in &self.apply_word(a) {
                out.add_term((fa.clone(), b.clone()), c * ca);
            }
            for (fb, cb) in &self.apply_word(b) {
                out.add_term((a.clone(), fb.clone()), c * cb);
            }
        }
        out
    }

    /// `[f, g](c) = f(g(c)) - g(f(c))`.
    pub fn bracket(&self, g: &Derivation) -> Derivation {
        Derivation {
            values: self
                .values
                .iter()
                .zip(&g.values)
                .map(|(fc, gc)| &self.apply(gc) - &g.apply(fc))
                .collect(),
        }
    }

    pub fn add(&self, g: &Derivation) -> Derivation {
        Derivation { values: self.values.iter().zip(&g.values).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Q) -> Derivation {
        Derivation { values: self.values.iter().map(|v| v.scale(c)).collect() }
    }
}

/// Checked bracket for derivations of the same rank.
pub fn derivation_bracket(f: &Derivation, g: &Derivation) -> Result<Derivation> {
    if f.rank() != g.rank() {
        return Err(Error::Usage("derivations over different generator sets".into()));
    }
    Ok(f.bracket(g))
}

/// Coordinates of a one-form in the free basis.
pub type OneForm = Vec<Env>;

pub fn oneform_zero(rank: usize) -> OneForm {
    vec![Env::zero(); rank]
}

pub fn oneform_add(a: &OneForm, b: &OneForm) -> OneForm {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn oneform_sub(a: &OneForm, b: &OneForm) -> OneForm {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `e · ω` for a scalar `e ∈ A^e`.
pub fn oneform_act(e: &Env, w: &OneForm) -> OneForm {
    w.iter().map(|x| env_mul(e, x)).collect()
}

/// `a · ω · b`.
pub fn oneform_bimul(a: &Poly, w: &OneForm, b: &Poly) -> OneForm {
    oneform_act(&env_from(a, b), w)
}

/// `dx` in the free basis of `Ω¹A`.
pub fn fox_expand(kind: AlgebraKind, x: &Poly) -> OneForm {
    let rank = x
        .keys()
        .flat_map(|w| w.letters().iter().map(|&l| gen_of(l) + 1))
        .max()
        .unwrap_or(0);
    fox_expand_rank(kind, x, rank)
}

/// `dx` with an explicit coordinate count.
pub fn fox_expand_rank(kind: AlgebraKind, x: &Poly, rank: usize) -> OneForm {
    let mut out = oneform_zero(rank);
    for (w, c) in x {
        let ls = w.letters();
        for p in 0..ls.len() {
            let l = ls[p];
            let g = gen_of(l);
            let pre = w.slice(0, p);
            if is_inverse(l) {
                // pre · (-c⁻¹ η_c) · suf
                let pre_ci = w.slice(0, p + 1);
                out[g].add_term((pre_ci, w.slice(p + 1, ls.len())), -c);
            } else {
                let suf = match kind {
                    AlgebraKind::Tensor => w.slice(p + 1, ls.len()),
                    AlgebraKind::Group => w.slice(p, ls.len()),
                };
                out[g].add_term((pre, suf), c.clone());
            }
        }
    }
    out
}

/// `L_f(β_c)` for the basis element attached to generator `c`.
pub fn basis_lie(kind: AlgebraKind, f: &Derivation, c: usize) -> OneForm {
    let fc = &f.values[c];
    let dfc = fox_expand_rank(kind, fc, f.rank());
    match kind {
        AlgebraKind::Tensor => dfc,
        AlgebraKind::Group => {
            // L_f(η_c) = d(f(c)) c⁻¹ − η_c f(c) c⁻¹
            let ci = Word::gen_inv(c);
            let mut out: OneForm = dfc
                .iter()
                .map(|e| e.map_basis(|(a, b)| (a.clone(), b.concat(&ci))))
                .collect();
            for (w, k) in fc {
                out[c].add_term((Word::empty(), w.concat(&ci)), -k);
            }
            out
        }
    }
}

/// `L_f(ω)` via `L_f(e·β) = φ(f)(e)·β + e·L_f(β)`.
pub fn lie_derivative(kind: AlgebraKind, f: &Derivation, w: &OneForm) -> OneForm {
    let n = f.rank();
    let mut out = oneform_zero(n);
    for (c, e) in w.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        out[c].add_assign(&f.apply_env(e));
        let lb = basis_lie(kind, f, c);
        for (j, x) in lb.iter().enumerate() {
            out[j].add_assign(&env_mul(e, x));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{letter, poly_gen, poly_mul, poly_one};
    use crate::sample::Sampler;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        let ls: Vec<Letter> = s
            .chars()
            .map(|c| letter((c.to_ascii_lowercase() as u8 - b'a') as usize, c.is_ascii_uppercase()))
            .collect();
        Word::from_letters(&ls)
    }

    fn p(s: &str) -> Poly {
        Poly::basis(w(s))
    }

    #[test]
    fn derivation_examples() {
        // f(a) = b, f(b) = 0 on ab gives bb
        let f = Derivation::new(vec![p("b"), Poly::zero()]);
        assert_eq!(f.apply(&p("ab")), p("bb"));
        assert!(f.apply(&poly_one()).is_zero());
        // f(c⁻¹) = -c⁻¹ f(c) c⁻¹
        let g = Derivation::new(vec![p("b"), Poly::zero()]);
        assert_eq!(g.apply(&p("A")), -&p("AbA"));
        // f(a) = b, g(b) = a: [f, g](a) = -a
        let g2 = Derivation::new(vec![Poly::zero(), p("a")]);
        assert_eq!(f.bracket(&g2).values[0], -&p("a"));
        assert!(f.bracket(&f).is_zero());
    }

    #[test]
    fn euler_bracket_is_degree() {
        let f = Derivation::new(vec![p("ab"), &p("bb") - &p("ba")]);
        assert_eq!(f.degree(), Some(1));
        let e = Derivation::euler(2);
        assert_eq!(e.bracket(&f), f.scale(&Q::from_int(1)));
        let h = Derivation::new(vec![p("abb"), p("aaa")]);
        assert_eq!(e.bracket(&h), h.scale(&Q::from_int(2)));
    }

    #[test]
    fn fox_examples() {
        // d(uv) = (1⊗v)du + (u⊗1)dv
        let d = fox_expand(AlgebraKind::Tensor, &p("ab"));
        assert_eq!(d[0], Env::basis((Word::empty(), w("b"))));
        assert_eq!(d[1], Env::basis((w("a"), Word::empty())));
        // d(ab)·(b⁻¹a⁻¹) = η_a + (a ⊗ a⁻¹)η_b
        let d = fox_expand(AlgebraKind::Group, &p("ab"));
        let d: OneForm = d.iter().map(|e| e.map_basis(|(x, y)| (x.clone(), y.concat(&w("BA"))))).collect();
        assert_eq!(d[0], Env::basis((Word::empty(), Word::empty())));
        assert_eq!(d[1], Env::basis((w("a"), w("A"))));
        // d(c⁻¹) = -(c⁻¹⊗c⁻¹)dc, and dc = η_c·c
        let d = fox_expand(AlgebraKind::Group, &p("A"));
        assert_eq!(d[0], -&Env::basis((w("A"), Word::empty())));
        assert!(fox_expand(AlgebraKind::Group, &poly_one()).is_empty());
    }

    #[test]
    fn lie_derivative_on_eta_golden() {
        // f(a) = a², f(b) = 0 on the rank-2 free group:
        // L_f(η_a) = d(aa)a⁻¹ − η_a·aa·a⁻¹ = (η_a a + aη_a a)a⁻¹ − η_a a = aη_a
        let f = Derivation::new(vec![p("aa"), Poly::zero()]);
        let l = basis_lie(AlgebraKind::Group, &f, 0);
        let expected = Env::basis((w("a"), Word::empty()));
        assert_eq!(l[0], expected);
        assert!(l[1].is_zero());
        assert!(basis_lie(AlgebraKind::Group, &f, 1).iter().all(|e| e.is_zero()));
        let z = Derivation::zero(2);
        assert!(lie_derivative(AlgebraKind::Group, &z, &l).iter().all(|e| e.is_zero()));
    }

    fn check_leibniz(kind: AlgebraKind, seed: u64) {
        let mut s = Sampler::new(seed);
        let n = 3;
        let x = s.poly(kind, n, 3, 3);
        let y = s.poly(kind, n, 3, 3);
        let lhs = fox_expand_rank(kind, &poly_mul(&x, &y), n);
        let rhs = oneform_add(
            &oneform_bimul(&poly_one(), &fox_expand_rank(kind, &x, n), &y),
            &oneform_bimul(&x, &fox_expand_rank(kind, &y, n), &poly_one()),
        );
        assert_eq!(lhs, rhs);
    }

    fn check_lie_rep(kind: AlgebraKind, seed: u64) {
        let mut s = Sampler::new(seed);
        let n = 2;
        let f = s.derivation(kind, n, 2);
        let g = s.derivation(kind, n, 2);
        let x = s.poly(kind, n, 3, 2);
        let om = oneform_bimul(&s.poly(kind, n, 2, 2), &fox_expand_rank(kind, &x, n), &s.poly(kind, n, 2, 2));
        let lhs = lie_derivative(kind, &f.bracket(&g), &om);
        let rhs = oneform_sub(
            &lie_derivative(kind, &f, &lie_derivative(kind, &g, &om)),
            &lie_derivative(kind, &g, &lie_derivative(kind, &f, &om)),
        );
        assert_eq!(lhs, rhs);
        // L_f commutes with d
        assert_eq!(lie_derivative(kind, &f, &fox_expand_rank(kind, &x, n)), fox_expand_rank(kind, &f.apply(&x), n));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn fox_is_a_derivation(seed in any::<u64>()) {
            check_leibniz(AlgebraKind::Tensor, seed);
            check_leibniz(AlgebraKind::Group, seed);
        }

        #[test]
        fn lie_derivative_is_a_representation(seed in any::<u64>()) {
            check_lie_rep(AlgebraKind::Tensor, seed);
            check_lie_rep(AlgebraKind::Group, seed);
        }

        #[test]
        fn bracket_jacobi(seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let (f, g, h) = (s.derivation(AlgebraKind::Group, 2, 2), s.derivation(AlgebraKind::Group, 2, 2), s.derivation(AlgebraKind::Group, 2, 2));
            let j = f.bracket(&g.bracket(&h)).add(&g.bracket(&h.bracket(&f))).add(&h.bracket(&f.bracket(&g)));
            prop_assert!(j.is_zero());
        }

        #[test]
        fn derivation_property(seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let f = s.derivation(AlgebraKind::Group, 2, 3);
            let x = s.poly(AlgebraKind::Group, 2, 3, 2);
            let y = s.poly(AlgebraKind::Group, 2, 3, 2);
            let lhs = f.apply(&poly_mul(&x, &y));
            let rhs = &poly_mul(&f.apply(&x), &y) + &poly_mul(&x, &f.apply(&y));
            prop_assert_eq!(lhs, rhs);
            prop_assert!(f.apply(&poly_gen(0)) == f.values[0]);
        }
    }
}
