//! Differential forms `Ω•B` over a free associative algebra `B = T(W)`, and
//! normal forms in the de Rham spaces `DR⁰B = |B|`, `DR¹B`, `DR²B`.
//!
//! Every form is a combination of monomials `w₀ du₁ w₁ du₂ ⋯ du_p w_p` with
//! words `w_i` and generators `u_j`.

use smallvec::SmallVec;

use crate::algebra::{gen_of, is_inverse, CyclicWord, Poly, Trace, Word};
use crate::calculus::Derivation;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational::Q;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FormMono {
    /// `p + 1` words.
    pub words: SmallVec<[Word; 3]>,
    /// `p` generator indices.
    pub diffs: SmallVec<[u16; 2]>,
}

impl FormMono {
    pub fn degree(&self) -> usize {
        self.diffs.len()
    }

    pub fn scalar(w: Word) -> Self {
        FormMono { words: SmallVec::from_elem(w, 1), diffs: SmallVec::new() }
    }
}

pub type Form = LinComb<FormMono>;

pub fn form_from_poly(x: &Poly) -> Form {
    x.map_basis(|w| FormMono::scalar(w.clone()))
}

/// `a du b` as a monomial.
pub fn form_du(a: Word, u: usize, b: Word) -> Form {
    Form::basis(FormMono { words: SmallVec::from_vec(vec![a, b]), diffs: SmallVec::from_elem(u as u16, 1) })
}

/// Rejects words containing inverse letters.
pub fn check_free(x: &Poly) -> Result<()> {
    if x.keys().any(|w| w.letters().iter().any(|&l| is_inverse(l))) {
        return Err(Error::Unsupported("differential forms are only available over tensor algebras".into()));
    }
    Ok(())
}

pub fn form_mul(a: &Form, b: &Form) -> Form {
    let mut out = Form::zero();
    for (m, c1) in a {
        for (n, c2) in b {
            out.add_term(mono_mul(m, n), c1 * c2);
        }
    }
    out
}

fn mono_mul(m: &FormMono, n: &FormMono) -> FormMono {
    let mut words: SmallVec<[Word; 3]> = SmallVec::with_capacity(m.words.len() + n.words.len() - 1);
    words.extend(m.words[..m.words.len() - 1].iter().cloned());
    words.push(m.words[m.words.len() - 1].concat(&n.words[0]));
    words.extend(n.words[1..].iter().cloned());
    let mut diffs = m.diffs.clone();
    diffs.extend_from_slice(&n.diffs);
    FormMono { words, diffs }
}

/// Splits word `j` of `m` at every letter, inserting that letter's
/// differential: the terms of `w₀ ⋯ d(w_j) ⋯ w_p`.
fn d_at(m: &FormMono, j: usize, c: &Q, out: &mut Form) {
    let w = &m.words[j];
    let ls = w.letters();
    for p in 0..ls.len() {
        let mut words: SmallVec<[Word; 3]> = SmallVec::with_capacity(m.words.len() + 1);
        words.extend(m.words[..j].iter().cloned());
        words.push(w.slice(0, p));
        words.push(w.slice(p + 1, ls.len()));
        words.extend(m.words[j + 1..].iter().cloned());
        let mut diffs: SmallVec<[u16; 2]> = SmallVec::with_capacity(m.diffs.len() + 1);
        diffs.extend_from_slice(&m.diffs[..j]);
        diffs.push(gen_of(ls[p]) as u16);
        diffs.extend_from_slice(&m.diffs[j..]);
        out.add_term(FormMono { words, diffs }, c.clone());
    }
}

/// Exterior derivative, a graded derivation with `d(du) = 0`.
pub fn form_d(a: &Form) -> Form {
    let mut out = Form::zero();
    for (m, c) in a {
        for j in 0..m.words.len() {
            let s = if j % 2 == 0 { c.clone() } else { -c };
            d_at(m, j, &s, &mut out);
        }
    }
    out
}

/// `dx` for `x ∈ B`.
pub fn form_exact(x: &Poly) -> Form {
    form_d(&form_from_poly(x))
}

/// Replaces word `j` of `m` by each term of `val`.
fn substitute_word(m: &FormMono, j: usize, val: &Poly, c: &Q, out: &mut Form) {
    for (w, k) in val {
        let mut words = m.words.clone();
        words[j] = w.clone();
        out.add_term(FormMono { words, diffs: m.diffs.clone() }, c * k);
    }
}

/// Contraction `i_f`, the degree `-1` graded derivation with `i_f(du) = f(u)`.
pub fn contract(f: &Derivation, a: &Form) -> Form {
    let mut out = Form::zero();
    for (m, c) in a {
        for j in 0..m.diffs.len() {
            let val = &f.values[m.diffs[j] as usize];
            let s = if j % 2 == 0 { c.clone() } else { -c };
            for (w, k) in val {
                let mut words: SmallVec<[Word; 3]> = SmallVec::with_capacity(m.words.len() - 1);
                words.extend(m.words[..j].iter().cloned());
                words.push(Word::concat3(&m.words[j], w, &m.words[j + 1]));
                words.extend(m.words[j + 2..].iter().cloned());
                let mut diffs = m.diffs.clone();
                diffs.remove(j);
                out.add_term(FormMono { words, diffs }, &s * k);
            }
        }
    }
    out
}

/// Lie derivative `L_f`, the degree-0 derivation commuting with `d`.
pub fn form_lie(f: &Derivation, a: &Form) -> Form {
    let mut out = Form::zero();
    for (m, c) in a {
        for j in 0..m.words.len() {
            substitute_word(m, j, &f.apply_word(&m.words[j]), c, &mut out);
        }
        for j in 0..m.diffs.len() {
            // replace du_j by d(f(u_j))
            let fu = &f.values[m.diffs[j] as usize];
            let dfu = form_exact(fu);
            let left = FormMono { words: m.words[..=j].iter().cloned().collect(), diffs: m.diffs[..j].iter().cloned().collect() };
            let right = FormMono { words: m.words[j + 1..].iter().cloned().collect(), diffs: m.diffs[j + 1..].iter().cloned().collect() };
            for (dm, k) in &dfu {
                out.add_term(mono_mul(&mono_mul(&left, dm), &right), c * k);
            }
        }
    }
    out
}

/// `|a du|` in normal form, stored as `(a, u)`.
pub type Dr1 = LinComb<(Word, u16)>;

/// `|a du b dv|` in normal form, stored as `(a, u, b, v)` with
/// `(a, u) < (b, v)`; graded cyclicity gives `(a,u,b,v) ≡ −(b,v,a,u)`.
pub type Dr2 = LinComb<(Word, u16, Word, u16)>;

/// `w₀ du w₁ ↦ (w₁w₀) du`.
pub fn dr1_normalize(a: &Form) -> Result<Dr1> {
    let mut out = Dr1::zero();
    for (m, c) in a {
        if m.degree() != 1 {
            return Err(Error::Usage("dr1_normalize expects a one-form".into()));
        }
        out.add_term((m.words[1].concat(&m.words[0]), m.diffs[0]), c.clone());
    }
    Ok(out)
}

fn dr2_key(a: Word, u: u16, b: Word, v: u16) -> Option<((Word, u16, Word, u16), bool)> {
    match (&a, u).cmp(&(&b, v)) {
        std::cmp::Ordering::Less => Some(((a, u, b, v), false)),
        std::cmp::Ordering::Greater => Some(((b, v, a, u), true)),
        std::cmp::Ordering::Equal => None,
    }
}

/// `w₀ du w₁ dv w₂ ↦ (w₂w₀) du w₁ dv` followed by the graded-cyclic
/// canonical choice.
pub fn dr2_normalize(a: &Form) -> Result<Dr2> {
    let mut out = Dr2::zero();
    for (m, c) in a {
        if m.degree() != 2 {
            return Err(Error::Usage("dr2_normalize expects a two-form".into()));
        }
        let front = m.words[2].concat(&m.words[0]);
        if let Some((k, flip)) = dr2_key(front, m.diffs[0], m.words[1].clone(), m.diffs[1]) {
            out.add_term(k, if flip { -c } else { c.clone() });
        }
    }
    Ok(out)
}

/// `d: |B| → DR¹B`.
pub fn de_rham_d(x: &Trace) -> Dr1 {
    let mut out = Dr1::zero();
    for (cw, c) in x {
        let w = cw.word();
        let ls = w.letters();
        for p in 0..ls.len() {
            out.add_term((w.slice(p + 1, ls.len()).concat(&w.slice(0, p)), gen_of(ls[p]) as u16), c.clone());
        }
    }
    out
}

/// `d: DR¹B → DR²B`, `|a du| ↦ |da du|`.
pub fn dr1_d(x: &Dr1) -> Dr2 {
    let mut out = Dr2::zero();
    for ((a, u), c) in x {
        let ls = a.letters();
        for p in 0..ls.len() {
            let front = a.slice(0, p);
            let mid = a.slice(p + 1, ls.len());
            if let Some((k, flip)) = dr2_key(front, gen_of(ls[p]) as u16, mid, *u) {
                out.add_term(k, if flip { -c } else { c.clone() });
            }
        }
    }
    out
}

/// Trace projection of a zero-form.
pub fn form0_trace(a: &Form) -> Result<Trace> {
    let mut out = Trace::zero();
    for (m, c) in a {
        if m.degree() != 0 {
            return Err(Error::Usage("expected a zero-form".into()));
        }
        out.add_term(CyclicWord::new(&m.words[0]), c.clone());
    }
    Ok(out)
}

/// Scalar part of a zero-form as an element of `B`.
pub fn form0_poly(a: &Form) -> Result<Poly> {
    let mut out = Poly::zero();
    for (m, c) in a {
        if m.degree() != 0 {
            return Err(Error::Usage("expected a zero-form".into()));
        }
        out.add_term(m.words[0].clone(), c.clone());
    }
    Ok(out)
}
