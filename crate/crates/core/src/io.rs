//! JSON input files and the bundled data directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraKind, GeneratorSet, Poly};
use crate::bracket::{DoubleBracketTable, PairingTable};
use crate::calculus::Derivation;
use crate::connection::{DefaultConnection, Frame, FreeConnection, Lift};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Q;
use crate::syntax::{parse_form, parse_poly, parse_tensor};

pub const SURFACE_FILE: &str = "surface_g2_n4.json";
pub const TABLE1_FILE: &str = "table1.json";

const BUNDLED_SURFACE: &str = include_str!("../data/surface_g2_n4.json");
const BUNDLED_TABLE1: &str = include_str!("../data/table1.json");

/// Reads a data file from `$NCDIV_DATA` when set, else the bundled copy.
pub fn data_file(name: &str) -> Result<String> {
    if let Some(dir) = std::env::var_os("NCDIV_DATA") {
        let path = PathBuf::from(dir).join(name);
        return std::fs::read_to_string(&path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())));
    }
    match name {
        SURFACE_FILE => Ok(BUNDLED_SURFACE.to_string()),
        TABLE1_FILE => Ok(BUNDLED_TABLE1.to_string()),
        _ => Err(Error::Config(format!("no bundled data file `{name}`"))),
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn gen_index(gens: &GeneratorSet, name: &str) -> Result<usize> {
    gens.index_of(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
}

fn pair_key(gens: &GeneratorSet, key: &str) -> Result<(usize, usize)> {
    let (a, b) = key
        .split_once(',')
        .ok_or_else(|| Error::Config(format!("table key `{key}` must have the form `x,y`")))?;
    Ok((gen_index(gens, a.trim())?, gen_index(gens, b.trim())?))
}

/// `{ "name": ..., "values": { "u": "<expr>", ... } }`; missing generators map to 0.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerivationFile {
    #[serde(default)]
    pub name: Option<String>,
    pub values: BTreeMap<String, String>,
}

impl DerivationFile {
    pub fn build(&self, gens: &GeneratorSet) -> Result<Derivation> {
        let mut values = vec![Poly::zero(); gens.rank()];
        for (k, v) in &self.values {
            values[gen_index(gens, k)?] = parse_poly(v, gens)?;
        }
        Ok(Derivation::new(values))
    }
}

/// `{ "skew": true, "values": { "u,v": "1", ... } }`. With `skew`, each
/// entry also sets its mirror to the negative value.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairingFile {
    #[serde(default)]
    pub skew: bool,
    pub values: BTreeMap<String, Q>,
}

impl PairingFile {
    pub fn build(&self, gens: &GeneratorSet) -> Result<PairingTable> {
        if gens.is_group() {
            return Err(Error::Usage("scalar pairings are defined on tensor algebras".into()));
        }
        let n = gens.rank();
        let mut m: Vec<Vec<Option<Q>>> = vec![vec![None; n]; n];
        let mut set = |i: usize, j: usize, v: Q| -> Result<()> {
            match &m[i][j] {
                Some(old) if *old != v => Err(Error::Config(format!(
                    "pairing entry ({},{}) is given inconsistent values",
                    gens.names[i], gens.names[j]
                ))),
                _ => {
                    m[i][j] = Some(v);
                    Ok(())
                }
            }
        };
        for (k, v) in &self.values {
            let (i, j) = pair_key(gens, k)?;
            set(i, j, v.clone())?;
            if self.skew {
                set(j, i, -v)?;
            }
        }
        PairingTable::new(m.into_iter().map(|r| r.into_iter().map(Option::unwrap_or_default).collect()).collect())
    }
}

/// `{ "values": { "a,b": "<tensor expr>", ... } }`, optionally with the algebra inline.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoubleBracketFile {
    #[serde(default)]
    pub kind: Option<AlgebraKind>,
    #[serde(default)]
    pub generators: Option<Vec<String>>,
    pub values: BTreeMap<String, String>,
}

impl DoubleBracketFile {
    pub fn generator_set(&self) -> Result<Option<GeneratorSet>> {
        match (&self.kind, &self.generators) {
            (Some(k), Some(g)) => Ok(Some(GeneratorSet::new(*k, g.clone())?)),
            (None, None) => Ok(None),
            _ => Err(Error::Config("double bracket file needs both `kind` and `generators`, or neither".into())),
        }
    }

    pub fn build(&self, gens: &GeneratorSet) -> Result<DoubleBracketTable> {
        let mut values = BTreeMap::new();
        for (k, v) in &self.values {
            values.insert(pair_key(gens, k)?, parse_tensor(v, gens)?);
        }
        DoubleBracketTable::new(gens.rank(), values)
    }
}

/// The bundled (or `$NCDIV_DATA`) surface double bracket.
pub fn load_surface() -> Result<(GeneratorSet, DoubleBracketTable)> {
    let file: DoubleBracketFile = serde_json::from_str(&data_file(SURFACE_FILE)?)?;
    let gens = file
        .generator_set()?
        .ok_or_else(|| Error::Config("surface data must declare its generators".into()))?;
    let table = file.build(&gens)?;
    Ok((gens, table))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectionKind {
    #[serde(rename = "nabla_W")]
    NablaW,
    #[serde(rename = "nabla_C")]
    NablaC,
    FreeModule,
}

/// Connection file:
/// `{ "kind": "nabla_W" | "nabla_C" | "free_module", "rank": n, "omega": [[...]] }`.
///
/// Default-action connections may carry a `frame` with its `frame_inverse`
/// (matrices of tensor expressions over `A^e`); the connection then kills
/// that frame. Free-module connections may carry a `gauge` and
/// `gauge_inverse` (matrices over `B`) defining the derivation action.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConnectionFile {
    pub kind: ConnectionKind,
    #[serde(default)]
    pub rank: Option<usize>,
    #[serde(default)]
    pub omega: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub frame: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub frame_inverse: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub gauge: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub gauge_inverse: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug)]
pub enum ConnectionSpec {
    Default(DefaultConnection),
    Free(FreeConnection),
}

fn square<T>(rows: &[Vec<String>], n: Option<usize>, f: impl Fn(&str) -> Result<T>) -> Result<Vec<Vec<T>>> {
    let dim = rows.len();
    if rows.iter().any(|r| r.len() != dim) || n.is_some_and(|n| n != dim) {
        return Err(Error::Config("connection matrices must be square of the declared rank".into()));
    }
    rows.iter().map(|r| r.iter().map(|s| f(s)).collect()).collect()
}

impl ConnectionFile {
    pub fn build(&self, gens: &GeneratorSet) -> Result<ConnectionSpec> {
        match self.kind {
            ConnectionKind::NablaW | ConnectionKind::NablaC => {
                let conn = if self.kind == ConnectionKind::NablaW { make_nabla_w(gens)? } else { make_nabla_c(gens)? };
                if let Some(n) = self.rank {
                    if n != gens.rank() {
                        return Err(Error::Config("default-action connection rank must equal the generator count".into()));
                    }
                }
                match (&self.frame, &self.frame_inverse) {
                    (None, None) => Ok(ConnectionSpec::Default(conn)),
                    (Some(g), Some(gi)) => {
                        let g = Matrix::from_rows(square(g, Some(gens.rank()), |s| parse_tensor(s, gens))?);
                        let gi = Matrix::from_rows(square(gi, Some(gens.rank()), |s| parse_tensor(s, gens))?);
                        Ok(ConnectionSpec::Default(DefaultConnection::Frame(Frame::new(g, gi)?)))
                    }
                    _ => Err(Error::Config("`frame` and `frame_inverse` must be given together".into())),
                }
            }
            ConnectionKind::FreeModule => {
                let omega = self
                    .omega
                    .as_ref()
                    .ok_or_else(|| Error::Config("free_module connection needs `omega`".into()))?;
                let om = Matrix::from_rows(square(omega, self.rank, |s| parse_form(s, gens))?);
                let n = om.dim();
                let conn = FreeConnection::new(om)?;
                let conn = match (&self.gauge, &self.gauge_inverse) {
                    (None, None) => conn,
                    (Some(g), Some(gi)) => {
                        let g = Matrix::from_rows(square(g, Some(n), |s| parse_poly(s, gens))?);
                        let gi = Matrix::from_rows(square(gi, Some(n), |s| parse_poly(s, gens))?);
                        conn.with_lift(Lift::Gauge { g, g_inv: gi })?
                    }
                    _ => return Err(Error::Config("`gauge` and `gauge_inverse` must be given together".into())),
                };
                Ok(ConnectionSpec::Free(conn))
            }
        }
    }
}

/// `∇_W`, killing `dw` for every generator of a tensor algebra.
pub fn make_nabla_w(gens: &GeneratorSet) -> Result<DefaultConnection> {
    if gens.is_group() {
        return Err(Error::Usage("nabla_W needs a tensor algebra".into()));
    }
    Ok(DefaultConnection::Standard)
}

/// `∇_𝒞`, killing `(dc)c⁻¹` for every generator of a free group.
pub fn make_nabla_c(gens: &GeneratorSet) -> Result<DefaultConnection> {
    if !gens.is_group() {
        return Err(Error::Usage("nabla_C needs a group algebra".into()));
    }
    Ok(DefaultConnection::Standard)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table1Row {
    pub x: String,
    pub y: String,
    pub expected: String,
    pub disjoint: bool,
    /// For the universally quantified row, the finite sample it is checked on.
    #[serde(default)]
    pub x_samples: Option<Vec<String>>,
    #[serde(default)]
    pub y_samples: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table1File {
    pub surface: String,
    pub rows: Vec<Table1Row>,
}

pub fn load_table1() -> Result<Table1File> {
    Ok(serde_json::from_str(&data_file(TABLE1_FILE)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::surface_bracket;

    #[test]
    fn bundled_surface_matches_builder() {
        let (gens, table) = load_surface().unwrap();
        let (g2, t2) = surface_bracket(2, 4).unwrap();
        assert_eq!(gens, g2);
        assert_eq!(table, t2);
    }

    #[test]
    fn pairing_file() {
        let gens = GeneratorSet::from_chars(AlgebraKind::Tensor, "uvw").unwrap();
        let f: PairingFile = serde_json::from_str(r#"{"skew": true, "values": {"u,v": "1", "v,w": "-1/2"}}"#).unwrap();
        let p = f.build(&gens).unwrap();
        assert!(p.is_skew());
        assert_eq!(p.get(2, 1), &Q::new(1, 2));
        let bad: PairingFile = serde_json::from_str(r#"{"skew": true, "values": {"u,v": 1, "v,u": 1}}"#).unwrap();
        assert!(bad.build(&gens).is_err());
    }

    #[test]
    fn connection_files() {
        let t = GeneratorSet::from_chars(AlgebraKind::Tensor, "uv").unwrap();
        let g = GeneratorSet::from_chars(AlgebraKind::Group, "ab").unwrap();
        let w: ConnectionFile = serde_json::from_str(r#"{"kind": "nabla_W"}"#).unwrap();
        assert!(w.build(&t).is_ok());
        assert!(w.build(&g).is_err());
        let c: ConnectionFile = serde_json::from_str(r#"{"kind": "nabla_C", "rank": 2}"#).unwrap();
        assert!(c.build(&g).is_ok());
        assert!(c.build(&t).is_err());
        let f: ConnectionFile =
            serde_json::from_str(r#"{"kind": "free_module", "rank": 1, "omega": [["u d(v)"]]}"#).unwrap();
        match f.build(&t).unwrap() {
            ConnectionSpec::Free(c) => assert!(!c.curvature().is_zero()),
            _ => panic!(),
        }
        let bad: ConnectionFile =
            serde_json::from_str(r#"{"kind": "free_module", "rank": 1, "omega": [["u"]]}"#).unwrap();
        assert!(bad.build(&t).is_err());
    }

    #[test]
    fn derivation_file() {
        let t = GeneratorSet::from_chars(AlgebraKind::Tensor, "uv").unwrap();
        let f: DerivationFile = serde_json::from_str(r#"{"name": "f", "values": {"u": "v"}}"#).unwrap();
        let d = f.build(&t).unwrap();
        assert_eq!(d.apply(&parse_poly("uv", &t).unwrap()), parse_poly("vv", &t).unwrap());
        let bad: DerivationFile = serde_json::from_str(r#"{"values": {"z": "v"}}"#).unwrap();
        assert!(bad.build(&t).is_err());
    }
}
