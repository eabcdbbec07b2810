//! Text syntax for algebra elements, trace elements, tensors and forms.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := product                     (algebra, trace, form)
//!          | product SEP product         (tensors; SEP is "(x)" or "⊗")
//! product := factor ('*'? factor)*
//! factor  := atom ['^' ['-'] int]
//! atom    := int ['/' int] | generator | '(' expr ')' | '[' expr ',' expr ']'
//!          | '|' expr '|' | 'd(' expr ')'          (the last in form mode only)
//! ```
//!
//! Generator names are matched longest first. In tensor mode the token
//! `(x)` is always the separator, and in form mode `d(` is always the
//! differential.

use crate::algebra::{
    poly_mul, trace_project, CyclicWord, Env, GeneratorSet, Poly, Trace, Trace2, Word,
};
use crate::calculus::Derivation;
use crate::error::{Error, Result};
use crate::forms::{form_d, form_from_poly, form_mul, Form, FormMono};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Gen(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Bar,
    Sep,
    D,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn lex(src: &str, gens: &GeneratorSet, tensor: bool, forms: bool) -> Result<Lexer> {
    let mut toks = Vec::new();
    let mut i = 0;
    while i < src.len() {
        let rest = &src[i..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if tensor && rest.starts_with("(x)") {
            toks.push((Tok::Sep, i));
            i += 3;
            continue;
        }
        if tensor && c == '⊗' {
            toks.push((Tok::Sep, i));
            i += c.len_utf8();
            continue;
        }
        if forms && rest.starts_with("d(") {
            toks.push((Tok::D, i));
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            ',' => Some(Tok::Comma),
            '|' => Some(Tok::Bar),
            _ => None,
        };
        if let Some(t) = simple {
            toks.push((t, i));
            i += c.len_utf8();
            continue;
        }
        if c.is_ascii_digit() {
            let n = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            toks.push((Tok::Num(rest[..n].to_string()), i));
            i += n;
            continue;
        }
        let best = gens
            .names
            .iter()
            .enumerate()
            .filter(|(_, n)| rest.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len());
        match best {
            Some((g, n)) => {
                toks.push((Tok::Gen(g), i));
                i += n.len();
            }
            None if c.is_alphanumeric() || c == '_' => {
                let n = rest.find(|ch: char| !(ch.is_alphanumeric() || ch == '_')).unwrap_or(rest.len());
                return Err(Error::UnknownGenerator(rest[..n].to_string()));
            }
            None => return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") }),
        }
    }
    Ok(Lexer { toks, end: src.len() })
}

/// Ring operations the parser needs.
trait Elem: Clone {
    fn scalar(q: Q) -> Self;
    fn word(w: Word) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn scale(&self, q: &Q) -> Self;
    fn differential(&self, pos: usize) -> Result<Self>;
}

impl Elem for Poly {
    fn scalar(q: Q) -> Self {
        Poly::term(Word::empty(), q)
    }
    fn word(w: Word) -> Self {
        Poly::basis(w)
    }
    fn mul(&self, o: &Self) -> Self {
        poly_mul(self, o)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn scale(&self, q: &Q) -> Self {
        crate::lincomb::LinComb::scale(self, q)
    }
    fn differential(&self, pos: usize) -> Result<Self> {
        Err(Error::Parse { pos, msg: "d(...) is only allowed in forms".into() })
    }
}

impl Elem for Form {
    fn scalar(q: Q) -> Self {
        form_from_poly(&Poly::term(Word::empty(), q))
    }
    fn word(w: Word) -> Self {
        Form::basis(FormMono::scalar(w))
    }
    fn mul(&self, o: &Self) -> Self {
        form_mul(self, o)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn scale(&self, q: &Q) -> Self {
        crate::lincomb::LinComb::scale(self, q)
    }
    fn differential(&self, _pos: usize) -> Result<Self> {
        Ok(form_d(self))
    }
}

struct Parser<'a> {
    lx: Lexer,
    at: usize,
    gens: &'a GeneratorSet,
    in_bar: bool,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.lx.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.lx.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at < self.lx.toks.len() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }

    fn sign(&mut self) -> Option<Q> {
        match self.peek() {
            Some(Tok::Plus) => {
                self.at += 1;
                Some(Q::one())
            }
            Some(Tok::Minus) => {
                self.at += 1;
                Some(Q::from_int(-1))
            }
            _ => None,
        }
    }

    fn expr<E: Elem>(&mut self) -> Result<E> {
        let mut s = self.sign().unwrap_or_else(Q::one);
        let mut acc = self.product::<E>()?.scale(&s);
        loop {
            match self.sign() {
                Some(q) => s = q,
                None => return Ok(acc),
            }
            acc = acc.add(&self.product::<E>()?.scale(&s));
        }
    }

    fn at_product_end(&self) -> bool {
        match self.peek() {
            None => true,
            Some(Tok::Plus | Tok::Minus | Tok::RParen | Tok::RBrack | Tok::Comma | Tok::Sep) => true,
            Some(Tok::Bar) => self.in_bar,
            _ => false,
        }
    }

    fn product<E: Elem>(&mut self) -> Result<E> {
        if self.at_product_end() {
            return self.err("expected a term");
        }
        let mut acc = self.factor::<E>()?;
        while !self.at_product_end() {
            if self.peek() == Some(&Tok::Star) {
                self.at += 1;
            }
            acc = acc.mul(&self.factor::<E>()?);
        }
        Ok(acc)
    }

    fn int(&mut self) -> Result<u32> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                n.parse().or_else(|_| self.err("exponent too large"))
            }
            _ => self.err("expected an integer"),
        }
    }

    fn factor<E: Elem>(&mut self) -> Result<E> {
        let start = self.pos();
        let (atom, gen) = self.atom::<E>()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(atom);
        }
        self.at += 1;
        let negative = self.sign().map(|q| q.is_negative()).unwrap_or(false);
        let n = self.int()?;
        if negative {
            let Some(g) = gen else {
                return Err(Error::Parse { pos: start, msg: "negative powers apply to generators only".into() });
            };
            if !self.gens.is_group() {
                return Err(Error::Parse { pos: start, msg: "inverses exist only in group algebras".into() });
            }
            let w = Word::from_letters(&vec![crate::algebra::letter(g, true); n as usize]);
            return Ok(E::word(w));
        }
        let mut acc = E::scalar(Q::one());
        for _ in 0..n {
            acc = acc.mul(&atom);
        }
        Ok(acc)
    }

    fn atom<E: Elem>(&mut self) -> Result<(E, Option<usize>)> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                let mut q: Q = n.parse().map_err(|_| Error::Parse { pos, msg: "bad number".into() })?;
                if self.peek() == Some(&Tok::Slash) {
                    self.at += 1;
                    let dpos = self.pos();
                    let d = match self.peek().cloned() {
                        Some(Tok::Num(d)) => {
                            self.at += 1;
                            d.parse::<Q>().map_err(|_| Error::Parse { pos: dpos, msg: "bad number".into() })?
                        }
                        _ => return self.err("expected a denominator"),
                    };
                    q = match d.recip() {
                        Some(r) => &q * &r,
                        None => return Err(Error::Parse { pos: dpos, msg: "division by zero".into() }),
                    };
                }
                Ok((E::scalar(q), None))
            }
            Some(Tok::Gen(g)) => {
                self.at += 1;
                Ok((E::word(Word::gen(g)), Some(g)))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let saved = std::mem::replace(&mut self.in_bar, false);
                let e = self.expr::<E>()?;
                self.in_bar = saved;
                self.expect(Tok::RParen, "`)`")?;
                Ok((e, None))
            }
            Some(Tok::LBrack) => {
                self.at += 1;
                let saved = std::mem::replace(&mut self.in_bar, false);
                let x = self.expr::<E>()?;
                self.expect(Tok::Comma, "`,`")?;
                let y = self.expr::<E>()?;
                self.in_bar = saved;
                self.expect(Tok::RBrack, "`]`")?;
                Ok((x.mul(&y).add(&y.mul(&x).scale(&Q::from_int(-1))), None))
            }
            Some(Tok::Bar) if !self.in_bar => {
                self.at += 1;
                self.in_bar = true;
                let e = self.expr::<E>()?;
                self.in_bar = false;
                self.expect(Tok::Bar, "closing `|`")?;
                Ok((e, None))
            }
            Some(Tok::D) => {
                self.at += 1;
                self.expect(Tok::LParen, "`(`")?;
                let saved = std::mem::replace(&mut self.in_bar, false);
                let e = self.expr::<E>()?;
                self.in_bar = saved;
                self.expect(Tok::RParen, "`)`")?;
                Ok((e.differential(pos)?, None))
            }
            Some(Tok::Sep) => self.err("tensor separator in a single-factor expression"),
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }

    fn tensor(&mut self) -> Result<Env> {
        let mut acc = Env::zero();
        let mut s = self.sign().unwrap_or_else(Q::one);
        loop {
            let left = self.product::<Poly>()?;
            self.expect(Tok::Sep, "tensor separator `(x)`")?;
            let right = self.product::<Poly>()?;
            for (a, ca) in &left {
                for (b, cb) in &right {
                    acc.add_term((a.clone(), b.clone()), &(&s * ca) * cb);
                }
            }
            match self.sign() {
                Some(q) => s = q,
                None => return Ok(acc),
            }
        }
    }
}

fn parser<'a>(src: &'a str, gens: &'a GeneratorSet, tensor: bool, forms: bool) -> Result<Parser<'a>> {
    let lx = lex(src, gens, tensor, forms)?;
    Ok(Parser { lx, at: 0, gens, in_bar: false })
}

/// Parses an element of the algebra. A lone `0` is the zero element.
pub fn parse_poly(src: &str, gens: &GeneratorSet) -> Result<Poly> {
    let mut p = parser(src, gens, false, false)?;
    let v = p.expr::<Poly>()?;
    p.finish()?;
    Ok(v)
}

/// Parses an element of `|A|`; vertical bars are optional.
pub fn parse_trace(src: &str, gens: &GeneratorSet) -> Result<Trace> {
    Ok(trace_project(&parse_poly(src, gens)?))
}

/// Parses an element of `A ⊗ A`, e.g. `1/2 aa (x) 1 - 1/2 1 (x) aa`.
pub fn parse_tensor(src: &str, gens: &GeneratorSet) -> Result<Env> {
    let mut p = parser(src, gens, true, false)?;
    if p.peek() == Some(&Tok::Num("0".into())) && p.lx.toks.len() == 1 {
        return Ok(Env::zero());
    }
    let v = p.tensor()?;
    p.finish()?;
    Ok(v)
}

/// Parses an element of `|A| ⊗ |A|`.
pub fn parse_trace2(src: &str, gens: &GeneratorSet) -> Result<Trace2> {
    Ok(parse_tensor(src, gens)?.map_basis(|(a, b)| (CyclicWord::new(a), CyclicWord::new(b))))
}

/// Parses a differential form over a tensor algebra, e.g. `u d(v) - d(u) v`.
pub fn parse_form(src: &str, gens: &GeneratorSet) -> Result<Form> {
    if gens.is_group() {
        return Err(Error::Unsupported("differential forms are only available over tensor algebras".into()));
    }
    let mut p = parser(src, gens, false, true)?;
    let v = p.expr::<Form>()?;
    p.finish()?;
    Ok(v)
}

fn join_terms(terms: impl Iterator<Item = (String, Q)>) -> String {
    let mut out = String::new();
    for (body, c) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        let t = if body == "1" {
            a.to_string()
        } else if a.is_one() {
            body
        } else {
            format!("{a} {body}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&t);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn format_poly(gens: &GeneratorSet, x: &Poly) -> String {
    join_terms(x.iter().map(|(w, c)| (gens.format_word(w), c.clone())))
}

pub fn format_trace(gens: &GeneratorSet, x: &Trace) -> String {
    join_terms(x.iter().map(|(w, c)| (gens.format_word(w.word()), c.clone())))
}

fn pair_body(gens: &GeneratorSet, a: &Word, b: &Word) -> String {
    format!("{} (x) {}", gens.format_word(a), gens.format_word(b))
}

pub fn format_tensor(gens: &GeneratorSet, x: &Env) -> String {
    join_terms(x.iter().map(|((a, b), c)| (pair_body(gens, a, b), c.clone())))
}

pub fn format_trace2(gens: &GeneratorSet, x: &Trace2) -> String {
    join_terms(x.iter().map(|((a, b), c)| (pair_body(gens, a.word(), b.word()), c.clone())))
}

/// One `coeff first (x) second` line per term, in canonical order.
pub fn trace2_lines(gens: &GeneratorSet, x: &Trace2) -> Vec<String> {
    x.iter()
        .map(|((a, b), c)| format!("{c} {}", pair_body(gens, a.word(), b.word())))
        .collect()
}

pub fn format_form(gens: &GeneratorSet, x: &Form) -> String {
    join_terms(x.iter().map(|(m, c)| {
        let mut parts = Vec::new();
        for (i, w) in m.words.iter().enumerate() {
            if !w.is_empty() {
                parts.push(gens.format_word(w));
            }
            if let Some(&u) = m.diffs.get(i) {
                parts.push(format!("d({})", gens.names[u as usize]));
            }
        }
        let body = if parts.is_empty() { "1".to_string() } else { parts.join(" ") };
        (body, c.clone())
    }))
}

/// Generator table of a derivation, one `name -> value` entry per generator.
pub fn format_derivation(gens: &GeneratorSet, f: &Derivation) -> Vec<(String, String)> {
    gens.names.iter().zip(&f.values).map(|(n, v)| (n.clone(), format_poly(gens, v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraKind;
    use crate::sample::Sampler;
    use crate::testutil::{p, w};
    use proptest::prelude::*;

    fn group(s: &str) -> GeneratorSet {
        GeneratorSet::from_chars(AlgebraKind::Group, s).unwrap()
    }

    #[test]
    fn basic_examples() {
        let g = group("abcdstuv");
        assert_eq!(parse_poly("st", &g).unwrap(), Poly::basis(Word::concat3(&Word::gen(4), &Word::gen(5), &Word::empty())));
        assert_eq!(parse_poly("a b a^-1 b^-1", &g).unwrap(), p("1 abAB"));
        let x = parse_poly("3stst - 2tsst", &g).unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(parse_poly("[a,b]", &g).unwrap(), p("1 ab -1 ba"));
        assert_eq!(parse_poly("1/2 a - (a + b)^2", &g).unwrap(), p("1/2 a -1 aa -1 ab -1 ba -1 bb"));
        assert_eq!(parse_poly("c c^-1", &g).unwrap(), p("1 1"));
        assert_eq!(parse_poly("a^-2", &g).unwrap(), p("1 AA"));
        assert_eq!(parse_poly("0", &g).unwrap(), Poly::zero());
        assert_eq!(parse_trace("|ab| - |ba|", &g).unwrap(), Trace::zero());
    }

    #[test]
    fn tensor_examples() {
        let g = group("abcdstuv");
        let t = parse_trace2("t[u,s] (x) v", &g).unwrap();
        let expected = parse_trace2("tus (x) v - tsu (x) v", &g).unwrap();
        assert_eq!(t, expected);
        let t = parse_tensor("-2ba ⊗ b^-1", &g).unwrap();
        assert_eq!(t, Env::term((w("ba"), w("B")), Q::from_int(-2)));
        assert_eq!(parse_tensor("0", &g).unwrap(), Env::zero());
    }

    #[test]
    fn errors_carry_positions() {
        let g = group("ab");
        match parse_poly("a + ) b", &g) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("a + q", &g), Err(Error::UnknownGenerator(n)) if n == "q"));
        assert!(matches!(parse_poly("(a", &g), Err(Error::Parse { pos: 2, .. })));
        let t = GeneratorSet::from_chars(AlgebraKind::Tensor, "ab").unwrap();
        assert!(parse_poly("a^-1", &t).is_err());
        assert!(parse_poly("1/0", &g).is_err());
        assert!(parse_poly("a (x) b", &g).is_err());
        assert!(parse_tensor("a b", &g).is_err());
    }

    #[test]
    fn longest_match_names() {
        let g = GeneratorSet::new(AlgebraKind::Tensor, vec!["x".into(), "x1".into(), "y".into()]).unwrap();
        let v = parse_poly("x1 x y", &g).unwrap();
        assert_eq!(v, Poly::basis(Word::gens(&[1, 0, 2])));
        assert_eq!(format_poly(&g, &v), "x1 x y");
    }

    #[test]
    fn forms() {
        let g = GeneratorSet::from_chars(AlgebraKind::Tensor, "uv").unwrap();
        let f = parse_form("u d(v) u", &g).unwrap();
        assert_eq!(format_form(&g, &f), "u d(v) u");
        let e = parse_form("d(u v)", &g).unwrap();
        assert_eq!(e, parse_form("d(u) v + u d(v)", &g).unwrap());
        assert!(parse_form("d(u)", &group("uv")).is_err());
    }

    #[test]
    fn printing() {
        let g = group("ab");
        assert_eq!(format_poly(&g, &p("1/2 1 -1 aB 3 b")), "1/2 - ab^-1 + 3 b");
        assert_eq!(format_poly(&g, &Poly::zero()), "0");
        assert_eq!(format_poly(&g, &p("-1 a")), "-a");
    }

    proptest! {
        #[test]
        fn round_trip(seed in 0u64..5000) {
            let mut s = Sampler::new(seed);
            let g = group("abst");
            let x = s.poly(AlgebraKind::Group, 4, 5, 4);
            prop_assert_eq!(parse_poly(&format_poly(&g, &x), &g).unwrap(), x.clone());
            let t = s.trace(AlgebraKind::Group, 4, 4, 3);
            prop_assert_eq!(parse_trace(&format_trace(&g, &t), &g).unwrap(), t);
            let e = crate::algebra::env_from(&s.poly(AlgebraKind::Group, 4, 3, 2), &s.poly(AlgebraKind::Group, 4, 3, 2));
            prop_assert_eq!(parse_tensor(&format_tensor(&g, &e), &g).unwrap(), e);
            let long = GeneratorSet::new(AlgebraKind::Group, vec!["x1".into(), "x2".into(), "y".into(), "yy".into()]).unwrap();
            prop_assert_eq!(parse_poly(&format_poly(&long, &x), &long).unwrap(), x);
        }
    }
}
