//! Shorthand for fixtures: lowercase letters are generators `a = 0, b = 1, …`,
//! uppercase letters their inverses.

use crate::algebra::{letter, Letter, Poly, Word};
use crate::rational::Q;

pub fn w(s: &str) -> Word {
    let ls: Vec<Letter> = s
        .chars()
        .filter(|c| *c != '1')
        .map(|c| letter((c.to_ascii_lowercase() as u8 - b'a') as usize, c.is_ascii_uppercase()))
        .collect();
    Word::from_letters(&ls)
}

/// `"2 ab - 1 ba"`-style integer combinations.
pub fn p(s: &str) -> Poly {
    let toks: Vec<&str> = s.split_whitespace().collect();
    let mut out = Poly::zero();
    for pair in toks.chunks(2) {
        out.add_term(w(pair[1]), pair[0].parse::<Q>().unwrap());
    }
    out
}
