//! Words in free monoids and free groups, the algebras they span, the
//! enveloping algebra `A ⊗ A^op`, and canonical forms in trace spaces.
//!
//! A letter is a `u16` encoding `2 * generator + inverse_bit`, so the natural
//! integer order is declaration order with `c < c⁻¹`. Words are always kept
//! freely reduced; for tensor algebras no inverse letters ever occur and the
//! reduction is a no-op.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational::Q;

pub type Letter = u16;

pub fn letter(gen: usize, inverse: bool) -> Letter {
    (gen as u16) * 2 + inverse as u16
}

pub fn gen_of(l: Letter) -> usize {
    (l / 2) as usize
}

pub fn is_inverse(l: Letter) -> bool {
    l & 1 == 1
}

pub fn inverse_letter(l: Letter) -> Letter {
    l ^ 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    /// Free associative algebra `T(W)`.
    Tensor,
    /// Group algebra of a free group.
    Group,
}

/// An ordered, named system of free generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSet {
    pub kind: AlgebraKind,
    #[serde(rename = "generators")]
    pub names: Vec<String>,
}

impl GeneratorSet {
    pub fn new(kind: AlgebraKind, names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Usage("generator set must be non-empty".into()));
        }
        if names.len() > (u16::MAX / 2) as usize {
            return Err(Error::Usage("too many generators".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n == "1" || n.chars().any(|c| !c.is_alphanumeric() && c != '_') {
                return Err(Error::Usage(format!("invalid generator name `{n}`")));
            }
            if n.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(Error::Usage(format!("generator name `{n}` starts with a digit")));
            }
            if names[..i].contains(n) {
                return Err(Error::Usage(format!("duplicate generator `{n}`")));
            }
        }
        Ok(GeneratorSet { kind, names })
    }

    /// Convenience constructor from single-character names, e.g. `"uvw"`.
    pub fn from_chars(kind: AlgebraKind, chars: &str) -> Result<Self> {
        Self::new(kind, chars.chars().map(String::from).collect())
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_group(&self) -> bool {
        self.kind == AlgebraKind::Group
    }

    /// All names are one character long, so words print without separators.
    pub fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let base = &self.names[gen_of(l)];
        if is_inverse(l) {
            format!("{base}^-1")
        } else {
            base.clone()
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let sep = if self.single_char() { "" } else { " " };
        w.letters().iter().map(|&l| self.letter_name(l)).collect::<Vec<_>>().join(sep)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        for &l in w.letters() {
            if gen_of(l) >= self.rank() {
                return Err(Error::Usage("letter outside generator set".into()));
            }
            if is_inverse(l) && !self.is_group() {
                return Err(Error::Usage("inverse letter in a tensor algebra".into()));
            }
        }
        Ok(())
    }
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(SmallVec<[Letter; 12]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn gen(g: usize) -> Self {
        Word(SmallVec::from_slice(&[letter(g, false)]))
    }

    pub fn gen_inv(g: usize) -> Self {
        Word(SmallVec::from_slice(&[letter(g, true)]))
    }

    /// Builds a word from arbitrary letters, freely reducing.
    pub fn from_letters(ls: &[Letter]) -> Self {
        let mut out: SmallVec<[Letter; 12]> = SmallVec::with_capacity(ls.len());
        for &l in ls {
            if out.last() == Some(&inverse_letter(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Word of uninverted generators, e.g. `Word::gens(&[0, 1])` is `uv`.
    pub fn gens(gs: &[usize]) -> Self {
        Word(gs.iter().map(|&g| letter(g, false)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        let mut k = 0;
        while k < other.0.len() && out.last() == Some(&inverse_letter(other.0[k])) {
            out.pop();
            k += 1;
        }
        out.extend_from_slice(&other.0[k..]);
        Word(out)
    }

    pub fn concat3(a: &Word, b: &Word, c: &Word) -> Word {
        a.concat(b).concat(c)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| inverse_letter(l)).collect())
    }

    /// Subword of letters `[i, j)`; the result is still reduced.
    pub fn slice(&self, i: usize, j: usize) -> Word {
        Word(SmallVec::from_slice(&self.0[i..j]))
    }

    /// Rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v: SmallVec<[Letter; 12]> = SmallVec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word::from_letters(&v)
    }

    /// The letters read cyclically from position `start`, `count` letters.
    pub fn cyclic_segment(&self, start: usize, count: usize) -> SmallVec<[Letter; 12]> {
        let r = self.0.len();
        (0..count).map(|i| self.0[(start + i) % r]).collect()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.0 {
            let g = gen_of(l);
            let c = if g < 26 { (b'a' + g as u8) as char } else { '?' };
            if is_inverse(l) {
                write!(f, "{}", c.to_ascii_uppercase())?;
            } else {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

/// Elements of `A`.
pub type Poly = LinComb<Word>;
/// Elements of `A^e = A ⊗ A^op`, stored as `(first, second)` pairs.
pub type Env = LinComb<(Word, Word)>;

pub fn poly_one() -> Poly {
    Poly::basis(Word::empty())
}

pub fn poly_word(w: Word) -> Poly {
    Poly::basis(w)
}

pub fn poly_gen(g: usize) -> Poly {
    Poly::basis(Word::gen(g))
}

pub fn poly_mul(x: &Poly, y: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            out.add_term(a.concat(b), ca * cb);
        }
    }
    out
}

/// `x · w` for a single word.
pub fn poly_mul_word_right(x: &Poly, w: &Word) -> Poly {
    x.map_basis(|a| a.concat(w))
}

pub fn poly_mul_word_left(w: &Word, x: &Poly) -> Poly {
    x.map_basis(|a| w.concat(a))
}

pub fn commutator(x: &Poly, y: &Poly) -> Poly {
    &poly_mul(x, y) - &poly_mul(y, x)
}

pub fn env_one() -> Env {
    Env::basis((Word::empty(), Word::empty()))
}

/// `(a ⊗ b)(c ⊗ d) = ac ⊗ db`.
pub fn env_mul(x: &Env, y: &Env) -> Env {
    let mut out = Env::zero();
    for ((a, b), c1) in x {
        for ((c, d), c2) in y {
            out.add_term((a.concat(c), d.concat(b)), c1 * c2);
        }
    }
    out
}

/// `x ⊗ y` as an element of `A^e`.
pub fn env_from(x: &Poly, y: &Poly) -> Env {
    let mut out = Env::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            out.add_term((a.clone(), b.clone()), ca * cb);
        }
    }
    out
}

/// Multiplication map `A^e → A`, `a ⊗ b ↦ ab`.
pub fn env_mu(x: &Env) -> Poly {
    x.map_basis(|(a, b)| a.concat(b))
}

/// `a ⊗ b ↦ b ⊗ a`.
pub fn env_swap(x: &Env) -> Env {
    x.map_basis(|(a, b)| (b.clone(), a.clone()))
}

/// A word in canonical cyclic form: cyclically reduced and least among
/// its rotations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn new(w: &Word) -> Self {
        let ls = w.letters();
        let (mut i, mut j) = (0usize, ls.len());
        while j >= i + 2 && ls[j - 1] == inverse_letter(ls[i]) {
            i += 1;
            j -= 1;
        }
        let core = &ls[i..j];
        CyclicWord(Word(least_rotation(core)))
    }

    pub fn one() -> Self {
        CyclicWord(Word::empty())
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{:?}|", self.0)
    }
}

fn least_rotation(s: &[Letter]) -> SmallVec<[Letter; 12]> {
    let n = s.len();
    if n == 0 {
        return SmallVec::new();
    }
    // Booth-style two-pointer minimum rotation.
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    let start = i.min(j);
    let mut out = SmallVec::with_capacity(n);
    out.extend_from_slice(&s[start..]);
    out.extend_from_slice(&s[..start]);
    out
}

/// Elements of `|A|`.
pub type Trace = LinComb<CyclicWord>;
/// Elements of `|A| ⊗ |A|`.
pub type Trace2 = LinComb<(CyclicWord, CyclicWord)>;

pub fn trace_project(x: &Poly) -> Trace {
    x.map_basis(CyclicWord::new)
}

/// `|a ⊗ b| ↦ |a| ⊗ |b|`.
pub fn env_trace_split(x: &Env) -> Trace2 {
    x.map_basis(|(a, b)| (CyclicWord::new(a), CyclicWord::new(b)))
}

/// Flip of the two tensor factors.
pub fn trace2_flip(x: &Trace2) -> Trace2 {
    x.map_basis(|(a, b)| (b.clone(), a.clone()))
}

/// Representatives of a trace element as a polynomial.
pub fn trace_lift(x: &Trace) -> Poly {
    x.map_basis(|c| c.word().clone())
}

pub fn tensor2_equal(x: &Trace2, y: &Trace2) -> bool {
    x == y
}

/// A checked element of a specific algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub gens: Arc<GeneratorSet>,
    pub value: Poly,
}

/// A checked element of the enveloping algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvElement {
    pub gens: Arc<GeneratorSet>,
    pub value: Env,
}

fn same(a: &GeneratorSet, b: &GeneratorSet) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Usage("operands belong to different generator sets".into()))
    }
}

pub fn algebra_multiply(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    same(&x.gens, &y.gens)?;
    Ok(AlgebraElement { gens: x.gens.clone(), value: poly_mul(&x.value, &y.value) })
}

pub fn env_multiply(x: &EnvElement, y: &EnvElement) -> Result<EnvElement> {
    same(&x.gens, &y.gens)?;
    Ok(EnvElement { gens: x.gens.clone(), value: env_mul(&x.value, &y.value) })
}

/// `Σ coeff · word` with integer coefficients, for tests and fixtures.
pub fn poly_from(terms: &[(i64, Word)]) -> Poly {
    terms.iter().map(|(c, w)| (w.clone(), Q::from_int(*c))).collect()
}
