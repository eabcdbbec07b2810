//! Pairings, double brackets given by generator tables, Hamiltonian flows
//! and the induced bracket on `|A|`.
//!
//! Elements of `A ⊗ A` reuse the [`Env`] representation as plain pairs
//! `(first, second)`; only the A^e product treats the second slot as
//! opposite.

use std::collections::BTreeMap;

use crate::algebra::{
    env_mu, env_swap, gen_of, is_inverse, trace_lift, trace_project, AlgebraKind, CyclicWord, Env,
    GeneratorSet, Letter, Poly, Trace, Word,
};
use crate::calculus::Derivation;
use crate::error::{Error, Result};
use crate::rational::Q;

/// A bilinear map `A ⊗ A → A ⊗ A` determined by its values on generators.
pub trait DoubleBracket {
    fn rank(&self) -> usize;
    /// `Π(c_i, c_j)`.
    fn on_generators(&self, i: usize, j: usize) -> Env;
}

/// A scalar pairing `⟨w_i, w_j⟩` on `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingTable {
    values: Vec<Vec<Q>>,
}

impl PairingTable {
    pub fn new(values: Vec<Vec<Q>>) -> Result<Self> {
        let n = values.len();
        if n == 0 || values.iter().any(|r| r.len() != n) {
            return Err(Error::Usage("pairing table must be a non-empty square matrix".into()));
        }
        Ok(PairingTable { values })
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.values[i][j]
    }

    pub fn is_skew(&self) -> bool {
        let n = self.values.len();
        (0..n).all(|i| (0..n).all(|j| self.values[i][j] == -&self.values[j][i]))
    }

    pub fn matrix(&self) -> &[Vec<Q>] {
        &self.values
    }
}

impl DoubleBracket for PairingTable {
    fn rank(&self) -> usize {
        self.values.len()
    }

    fn on_generators(&self, i: usize, j: usize) -> Env {
        Env::term((Word::empty(), Word::empty()), self.values[i][j].clone())
    }
}

/// Generator-pair values of a double bracket. Missing pairs `(j, i)` are
/// filled in by cyclic antisymmetry `Π(c_j, c_i) = −Π(c_i, c_j)°`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleBracketTable {
    rank: usize,
    values: BTreeMap<(usize, usize), Env>,
}

impl DoubleBracketTable {
    pub fn new(rank: usize, values: BTreeMap<(usize, usize), Env>) -> Result<Self> {
        if values.keys().any(|&(i, j)| i >= rank || j >= rank) {
            return Err(Error::Usage("double bracket entry refers to an unknown generator".into()));
        }
        let t = DoubleBracketTable { rank, values };
        t.check_antisymmetry()?;
        Ok(t)
    }

    pub fn values(&self) -> &BTreeMap<(usize, usize), Env> {
        &self.values
    }

    fn check_antisymmetry(&self) -> Result<()> {
        for (&(i, j), v) in &self.values {
            let expected = -&env_swap(v);
            let other = if i == j { Some(v) } else { self.values.get(&(j, i)) };
            if let Some(o) = other {
                if *o != expected {
                    return Err(Error::Usage(format!(
                        "double bracket entries ({i},{j}) and ({j},{i}) violate cyclic antisymmetry"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl DoubleBracket for DoubleBracketTable {
    fn rank(&self) -> usize {
        self.rank
    }

    fn on_generators(&self, i: usize, j: usize) -> Env {
        if let Some(v) = self.values.get(&(i, j)) {
            v.clone()
        } else if let Some(v) = self.values.get(&(j, i)) {
            -&env_swap(v)
        } else {
            Env::zero()
        }
    }
}

/// `Π` on a pair of letters. Inverse letters follow from
/// `Π(x, c c⁻¹) = 0` in the second slot and `Π(c c⁻¹, y) = 0` in the first.
pub fn letter_pair(pi: &impl DoubleBracket, l1: Letter, l2: Letter) -> Env {
    let mut t = pi.on_generators(gen_of(l1), gen_of(l2));
    if is_inverse(l2) {
        let ci = Word::gen_inv(gen_of(l2));
        t = t.map_basis(|(a, b)| (ci.concat(a), b.concat(&ci))).scale(&Q::from_int(-1));
    }
    if is_inverse(l1) {
        let ci = Word::gen_inv(gen_of(l1));
        t = t.map_basis(|(a, b)| (a.concat(&ci), ci.concat(b))).scale(&Q::from_int(-1));
    }
    t
}

/// `Π(x, y)` on words: a derivation in `y` for the outer bimodule structure
/// and in `x` for the inner one.
pub fn bracket_words(pi: &impl DoubleBracket, x: &Word, y: &Word) -> Env {
    let mut out = Env::zero();
    for p in 0..x.len() {
        let (xpre, xsuf) = (x.slice(0, p), x.slice(p + 1, x.len()));
        for q in 0..y.len() {
            let (ypre, ysuf) = (y.slice(0, q), y.slice(q + 1, y.len()));
            for ((a, b), c) in &letter_pair(pi, x.letters()[p], y.letters()[q]) {
                out.add_term((Word::concat3(&ypre, a, &xsuf), Word::concat3(&xpre, b, &ysuf)), c.clone());
            }
        }
    }
    out
}

pub fn bracket_eval(pi: &impl DoubleBracket, x: &Poly, y: &Poly) -> Env {
    let mut out = Env::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            out.add_scaled(&bracket_words(pi, a, b), &(ca * cb));
        }
    }
    out
}

/// The extended pairing on `T(W)`:
/// `⟨u₁⋯u_r, w₁⋯w_s⟩ = Σ ⟨u_i, w_j⟩ w₁⋯w_{j−1}u_{i+1}⋯u_r ⊗ u₁⋯u_{i−1}w_{j+1}⋯w_s`.
pub fn pairing_extend(p: &PairingTable, x: &Poly, y: &Poly) -> Result<Env> {
    let n = p.rank();
    for w in x.keys().chain(y.keys()) {
        if w.letters().iter().any(|&l| is_inverse(l) || gen_of(l) >= n) {
            return Err(Error::Usage("pairing_extend is defined on tensor algebra words only".into()));
        }
    }
    let mut out = Env::zero();
    for (u, cu) in x {
        for (w, cw) in y {
            let c = cu * cw;
            for i in 0..u.len() {
                for j in 0..w.len() {
                    let pv = p.get(gen_of(u.letters()[i]), gen_of(w.letters()[j]));
                    if pv.is_zero() {
                        continue;
                    }
                    let left = w.slice(0, j).concat(&u.slice(i + 1, u.len()));
                    let right = u.slice(0, i).concat(&w.slice(j + 1, w.len()));
                    out.add_term((left, right), &c * pv);
                }
            }
        }
    }
    Ok(out)
}

/// `Ham(|x|)(b) = μ(Π(x, b))`, evaluated on the canonical representative of each cyclic word.
pub fn ham_apply(pi: &impl DoubleBracket, x: &Trace, b: &Poly) -> Poly {
    env_mu(&bracket_eval(pi, &trace_lift(x), b))
}

/// `Ham(x)(b)` computed from the word `x` itself rather than its canonical
/// cyclic representative.
pub fn ham_apply_word(pi: &impl DoubleBracket, x: &Word, b: &Poly) -> Poly {
    env_mu(&bracket_eval(pi, &Poly::basis(x.clone()), b))
}

/// `Ham(|x|)` as a derivation table.
pub fn derivation_from_ham(pi: &impl DoubleBracket, x: &Trace) -> Derivation {
    let lifted = trace_lift(x);
    Derivation::new(
        (0..pi.rank())
            .map(|c| env_mu(&bracket_eval(pi, &lifted, &Poly::basis(Word::gen(c)))))
            .collect(),
    )
}

/// `{x, y} = |Ham(x)(y)|`.
pub fn induced_bracket(pi: &impl DoubleBracket, x: &Trace, y: &Trace) -> Trace {
    trace_project(&ham_apply(pi, x, &trace_lift(y)))
}

pub const GENUS_LETTERS: &str = "abcdefgh";
pub const BOUNDARY_LETTERS: &str = "stuvwxyz";

/// The double bracket for the free generating system `(α_i, β_i, γ_j)` of
/// the fundamental group of a genus-`g` surface with `n + 1` boundary
/// components, named `a b c d …` (genus pairs) then `s t u …`.
pub fn surface_bracket(g: usize, n: usize) -> Result<(GeneratorSet, DoubleBracketTable)> {
    if g > GENUS_LETTERS.len() / 2 || n > BOUNDARY_LETTERS.len() || g + n == 0 {
        return Err(Error::Usage(format!("surface type (g={g}, n={n}) is outside 0 ≤ g ≤ 4, 0 ≤ n ≤ 8, g + n ≥ 1")));
    }
    let names: Vec<String> = GENUS_LETTERS[..2 * g]
        .chars()
        .chain(BOUNDARY_LETTERS[..n].chars())
        .map(|c| c.to_string())
        .collect();
    let gens = GeneratorSet::new(AlgebraKind::Group, names)?;
    let rank = 2 * g + n;
    let h = Q::new(1, 2);
    let mh = Q::new(-1, 2);
    let one = Word::empty;
    let is_beta = |i: usize| i < 2 * g && i % 2 == 1;
    let mut values = BTreeMap::new();
    for i in 0..rank {
        let x = Word::gen(i);
        let xx = x.concat(&x);
        let s = if is_beta(i) { mh.clone() } else { h.clone() };
        let mut v = Env::zero();
        v.add_term((xx.clone(), one()), s.clone());
        v.add_term((one(), xx), -&s);
        values.insert((i, i), v);
        for j in i + 1..rank {
            let y = Word::gen(j);
            let genus_pair = i < 2 * g && i % 2 == 0 && j == i + 1;
            let mut v = Env::zero();
            v.add_term((y.concat(&x), one()), h.clone());
            v.add_term((one(), x.concat(&y)), h.clone());
            v.add_term((x.clone(), y.clone()), mh.clone());
            v.add_term((y.clone(), x.clone()), if genus_pair { h.clone() } else { mh.clone() });
            values.insert((i, j), v);
        }
    }
    Ok((gens, DoubleBracketTable::new(rank, values)?))
}

/// `|Ham(x)(y)|` for single cyclic words, for reporting.
pub fn bracket_of_words(pi: &impl DoubleBracket, x: &CyclicWord, y: &CyclicWord) -> Trace {
    induced_bracket(pi, &Trace::basis(x.clone()), &Trace::basis(y.clone()))
}
