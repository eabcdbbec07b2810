//! Values of `δ₂` for the surface double bracket and `∇_𝒞`, checked
//! against the bundled golden table.

use crate::algebra::{AlgebraKind, GeneratorSet, Trace, Trace2};
use crate::bracket::{derivation_from_ham, DoubleBracket};
use crate::connection::{delta_k, DefaultConnection};
use crate::error::Result;
use crate::io::{load_surface, load_table1, Table1Row};
use crate::syntax::{parse_trace, parse_trace2};

/// `δ_k(x₁, …, x_k)` with `ψ = Ham` of a group-algebra double bracket and `∇_𝒞`.
pub fn surface_delta(pi: &impl DoubleBracket, xs: &[Trace]) -> Result<Trace2> {
    delta_k(AlgebraKind::Group, &DefaultConnection::Standard, |x| derivation_from_ham(pi, x), xs)
}

#[derive(Clone, Debug)]
pub struct Table1Case {
    pub x: String,
    pub y: String,
    pub expected: Trace2,
    pub got: Trace2,
}

impl Table1Case {
    pub fn pass(&self) -> bool {
        self.expected == self.got
    }
}

#[derive(Clone, Debug)]
pub struct Table1Result {
    pub row: Table1Row,
    /// One case for an explicit row, several for a sampled universal row.
    pub cases: Vec<Table1Case>,
}

impl Table1Result {
    pub fn pass(&self) -> bool {
        self.cases.iter().all(Table1Case::pass)
    }

    pub fn sampled(&self) -> bool {
        self.row.x_samples.is_some() || self.row.y_samples.is_some()
    }
}

pub fn run_table1() -> Result<(GeneratorSet, Vec<Table1Result>)> {
    let (gens, table) = load_surface()?;
    let file = load_table1()?;
    let mut out = Vec::new();
    for row in file.rows {
        let xs = row.x_samples.clone().unwrap_or_else(|| vec![row.x.clone()]);
        let ys = row.y_samples.clone().unwrap_or_else(|| vec![row.y.clone()]);
        let expected = parse_trace2(&row.expected, &gens)?;
        let mut cases = Vec::new();
        for x in &xs {
            for y in &ys {
                let got = surface_delta(&table, &[parse_trace(x, &gens)?, parse_trace(y, &gens)?])?;
                cases.push(Table1Case { x: x.clone(), y: y.clone(), expected: expected.clone(), got });
            }
        }
        out.push(Table1Result { row, cases });
    }
    Ok((gens, out))
}
