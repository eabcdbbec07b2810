//! Directed labelled ribbon graphs and their operations on cyclic words
//! over a vector space with a pairing.
//!
//! Half-edges are `0..H`. A vertex is a cycle of `τ₀` (its cyclic order)
//! or an isolated vertex; boundaries are the orbits of `h ↦ τ₁(τ₀(h))`
//! plus one boundary per isolated vertex. Reading a boundary orbit
//! `h, τ₁τ₀h, …` collects, for each `h`, the letters strictly between the
//! positions of `h` and `τ₀h` at its vertex.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{CyclicWord, Trace, Trace2, Word};
use crate::bracket::{DoubleBracket, PairingTable};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational::Q;

/// Elements of `|T(W)|^{⊗m}`.
pub type GraphResult = LinComb<Vec<CyclicWord>>;

/// Graph file contents. Half-edge and isolated-vertex ids are arbitrary
/// integers; `tau1` pairs are directed as written unless `directions`
/// overrides them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub half_edges: Vec<u32>,
    pub tau1: Vec<[u32; 2]>,
    pub tau0: Vec<Vec<u32>>,
    #[serde(default)]
    pub isolated: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directions: Option<Vec<[u32; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<GraphLabels>,
}

/// 1-based labels. `vertices` lists the label of each `tau0` cycle then of
/// each isolated vertex; `edges` the label of each `tau1` pair.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphLabels {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundaries: Option<Vec<BoundaryLabel>>,
}

/// Names a boundary by one of its half-edges or by an isolated vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryLabel {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_edge: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isolated: Option<u32>,
    pub label: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphDiagnostics {
    pub valid: bool,
    pub problems: Vec<String>,
    pub vertices: usize,
    pub edges: usize,
    pub boundaries: usize,
    /// Valency of each vertex in label order.
    pub valencies: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Vertex {
    Cycle(Vec<usize>),
    Isolated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Boundary {
    Orbit(Vec<usize>),
    /// The boundary of the isolated vertex with this label index.
    Isolated(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    tau0: Vec<usize>,
    tau1: Vec<usize>,
    /// Directed edges `(from, to)` in label order.
    edges: Vec<(usize, usize)>,
    /// Vertices in label order.
    vertices: Vec<Vertex>,
    /// Boundaries in label order.
    boundaries: Vec<Boundary>,
    /// Vertex label index of each half-edge.
    vertex_of: Vec<usize>,
}

fn is_permutation(labels: &[usize], n: usize) -> bool {
    let set: BTreeSet<usize> = labels.iter().copied().collect();
    labels.len() == n && set.len() == n && set.iter().all(|&l| (1..=n).contains(&l))
}

fn build(spec: &GraphSpec) -> (Vec<String>, Option<RibbonGraph>, (usize, usize, usize, Vec<usize>)) {
    let mut problems = Vec::new();
    let index: BTreeMap<u32, usize> = spec.half_edges.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let h = spec.half_edges.len();
    if index.len() != h {
        problems.push("half-edge ids are not distinct".to_string());
    }
    let idx = |x: u32, problems: &mut Vec<String>| -> Option<usize> {
        let r = index.get(&x).copied();
        if r.is_none() {
            problems.push(format!("unknown half-edge {x}"));
        }
        r
    };

    let mut tau1 = vec![usize::MAX; h];
    let mut edges = Vec::new();
    for &[a, b] in &spec.tau1 {
        let (Some(i), Some(j)) = (idx(a, &mut problems), idx(b, &mut problems)) else { continue };
        if i == j {
            problems.push(format!("tau1 has a fixed point at half-edge {a}"));
            continue;
        }
        if tau1[i] != usize::MAX || tau1[j] != usize::MAX {
            problems.push(format!("half-edge {a} or {b} appears in more than one tau1 pair"));
            continue;
        }
        tau1[i] = j;
        tau1[j] = i;
        edges.push((i, j));
    }
    for (i, t) in tau1.iter().enumerate() {
        if *t == usize::MAX {
            problems.push(format!("tau1 is not defined on half-edge {}", spec.half_edges[i]));
        }
    }

    let mut tau0 = vec![usize::MAX; h];
    let mut cycles = Vec::new();
    for cyc in &spec.tau0 {
        let ids: Vec<usize> = cyc.iter().filter_map(|&x| idx(x, &mut problems)).collect();
        if ids.is_empty() {
            problems.push("empty tau0 cycle".to_string());
            continue;
        }
        for (k, &i) in ids.iter().enumerate() {
            if tau0[i] != usize::MAX {
                problems.push(format!("half-edge {} appears in more than one tau0 cycle", spec.half_edges[i]));
            }
            tau0[i] = ids[(k + 1) % ids.len()];
        }
        cycles.push(ids);
    }
    for (i, t) in tau0.iter().enumerate() {
        if *t == usize::MAX {
            problems.push(format!("tau0 is not defined on half-edge {}", spec.half_edges[i]));
        }
    }
    let iso: BTreeSet<u32> = spec.isolated.iter().copied().collect();
    if iso.len() != spec.isolated.len() {
        problems.push("isolated vertex ids are not distinct".to_string());
    }

    let nv = cycles.len() + spec.isolated.len();
    let ne = edges.len();
    if !problems.is_empty() {
        let val = cycles.iter().map(Vec::len).chain(spec.isolated.iter().map(|_| 0)).collect();
        return (problems, None, (nv, ne, 0, val));
    }

    if let Some(dirs) = &spec.directions {
        if dirs.len() != ne {
            problems.push("directions must list one ordered pair per edge".to_string());
        }
        for (e, &[a, b]) in edges.iter_mut().zip(dirs) {
            match (index.get(&a), index.get(&b)) {
                (Some(&i), Some(&j)) if (i, j) == *e || (j, i) == *e => *e = (i, j),
                _ => problems.push(format!("direction [{a}, {b}] does not match tau1 pair")),
            }
        }
    }

    // boundaries in default order: by least half-edge, then isolated vertices
    let mut seen = vec![false; h];
    let mut orbits = Vec::new();
    for start in 0..h {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            orbit.push(x);
            x = tau1[tau0[x]];
        }
        orbits.push(orbit);
    }
    let nb = orbits.len() + spec.isolated.len();
    let mut default_bounds: Vec<Boundary> = orbits.into_iter().map(Boundary::Orbit).collect();
    default_bounds.extend((0..spec.isolated.len()).map(|k| Boundary::Isolated(cycles.len() + k)));

    let labels = spec.labels.clone().unwrap_or_default();
    let vlabels = labels.vertices.unwrap_or_else(|| (1..=nv).collect());
    if !is_permutation(&vlabels, nv) {
        problems.push(format!("vertex labels must be a bijection onto 1..{nv}"));
    }
    let elabels = labels.edges.unwrap_or_else(|| (1..=ne).collect());
    if !is_permutation(&elabels, ne) {
        problems.push(format!("edge labels must be a bijection onto 1..{ne}"));
    }
    let blabels: Vec<usize> = match &labels.boundaries {
        None => (1..=nb).collect(),
        Some(bl) => {
            let mut out = vec![0; nb];
            for b in bl {
                let pos = match (b.half_edge, b.isolated) {
                    (Some(x), None) => index.get(&x).and_then(|&i| {
                        default_bounds.iter().position(|d| matches!(d, Boundary::Orbit(o) if o.contains(&i)))
                    }),
                    (None, Some(v)) => spec
                        .isolated
                        .iter()
                        .position(|&y| y == v)
                        .map(|k| orbits_len(&default_bounds) + k),
                    _ => None,
                };
                match pos {
                    Some(p) if out[p] == 0 => out[p] = b.label,
                    _ => problems.push("boundary label entry does not name a unique boundary".to_string()),
                }
            }
            out
        }
    };
    if !is_permutation(&blabels, nb) {
        problems.push(format!("boundary labels must be a bijection onto 1..{nb}"));
    }
    let valencies_unlabelled: Vec<usize> = cycles.iter().map(Vec::len).chain(spec.isolated.iter().map(|_| 0)).collect();
    if !problems.is_empty() {
        return (problems, None, (nv, ne, nb, valencies_unlabelled));
    }

    let mut vertices = vec![Vertex::Isolated; nv];
    let mut vertex_of = vec![0; h];
    let mut valencies = vec![0; nv];
    for (k, lab) in vlabels.iter().enumerate() {
        if k < cycles.len() {
            for &x in &cycles[k] {
                vertex_of[x] = lab - 1;
            }
            valencies[lab - 1] = cycles[k].len();
            vertices[lab - 1] = Vertex::Cycle(cycles[k].clone());
        }
    }
    let mut ordered_edges = vec![(0, 0); ne];
    for (e, lab) in edges.iter().zip(&elabels) {
        ordered_edges[lab - 1] = *e;
    }
    let mut boundaries = vec![Boundary::Isolated(0); nb];
    for (b, lab) in default_bounds.into_iter().zip(&blabels) {
        boundaries[lab - 1] = match b {
            Boundary::Isolated(k) => Boundary::Isolated(vlabels[k] - 1),
            o => o,
        };
    }
    let g = RibbonGraph { tau0, tau1, edges: ordered_edges, vertices, boundaries, vertex_of };
    (problems, Some(g), (nv, ne, nb, valencies))
}

fn orbits_len(b: &[Boundary]) -> usize {
    b.iter().filter(|x| matches!(x, Boundary::Orbit(_))).count()
}

/// Checks every structural constraint and reports counts; never fails.
pub fn graph_validate(spec: &GraphSpec) -> GraphDiagnostics {
    let (problems, _, (vertices, edges, boundaries, valencies)) = build(spec);
    GraphDiagnostics { valid: problems.is_empty(), problems, vertices, edges, boundaries, valencies }
}

impl RibbonGraph {
    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        let (problems, g, _) = build(spec);
        g.ok_or_else(|| Error::Usage(format!("invalid ribbon graph: {}", problems.join("; "))))
    }

    /// A spec with half-edge ids `0..H` reproducing this graph exactly.
    pub fn to_spec(&self) -> GraphSpec {
        let cycles: Vec<(usize, &Vec<usize>)> = self
            .vertices
            .iter()
            .enumerate()
            .filter_map(|(i, v)| match v {
                Vertex::Cycle(c) => Some((i, c)),
                Vertex::Isolated => None,
            })
            .collect();
        let isolated: Vec<usize> =
            (0..self.vertices.len()).filter(|&i| self.vertices[i] == Vertex::Isolated).collect();
        let h = self.tau0.len() as u32;
        let mut vlabels: Vec<usize> = cycles.iter().map(|(i, _)| i + 1).collect();
        vlabels.extend(isolated.iter().map(|i| i + 1));
        let boundaries = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(k, b)| match b {
                Boundary::Orbit(o) => BoundaryLabel { half_edge: Some(o[0] as u32), isolated: None, label: k + 1 },
                Boundary::Isolated(v) => BoundaryLabel { half_edge: None, isolated: Some(h + *v as u32), label: k + 1 },
            })
            .collect();
        GraphSpec {
            half_edges: (0..h).collect(),
            tau1: self.edges.iter().map(|&(a, b)| [a as u32, b as u32]).collect(),
            tau0: cycles.iter().map(|(_, c)| c.iter().map(|&x| x as u32).collect()).collect(),
            isolated: isolated.iter().map(|&v| h + v as u32).collect(),
            directions: None,
            labels: Some(GraphLabels {
                vertices: Some(vlabels),
                edges: Some((1..=self.edges.len()).collect()),
                boundaries: Some(boundaries),
            }),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn boundary_count(&self) -> usize {
        self.boundaries.len()
    }

    pub fn valencies(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .map(|v| match v {
                Vertex::Cycle(c) => c.len(),
                Vertex::Isolated => 0,
            })
            .collect()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Reverses the direction of edge `e` (0-based label order).
    pub fn flip_edge(&self, e: usize) -> RibbonGraph {
        let mut g = self.clone();
        let (a, b) = g.edges[e];
        g.edges[e] = (b, a);
        g
    }

    /// Renumbers edges: new label `i` carries old edge `perm[i]`.
    pub fn relabel_edges(&self, perm: &[usize]) -> RibbonGraph {
        let mut g = self.clone();
        g.edges = perm.iter().map(|&i| self.edges[i]).collect();
        g
    }

    /// Renumbers half-edges by `sigma` (old → new), keeping every label.
    pub fn relabel_half_edges(&self, sigma: &[usize]) -> RibbonGraph {
        let h = self.tau0.len();
        let mut tau0 = vec![0; h];
        let mut tau1 = vec![0; h];
        let mut vertex_of = vec![0; h];
        for x in 0..h {
            tau0[sigma[x]] = sigma[self.tau0[x]];
            tau1[sigma[x]] = sigma[self.tau1[x]];
            vertex_of[sigma[x]] = self.vertex_of[x];
        }
        RibbonGraph {
            tau0,
            tau1,
            edges: self.edges.iter().map(|&(a, b)| (sigma[a], sigma[b])).collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| match v {
                    Vertex::Cycle(c) => Vertex::Cycle(c.iter().map(|&x| sigma[x]).collect()),
                    Vertex::Isolated => Vertex::Isolated,
                })
                .collect(),
            boundaries: self
                .boundaries
                .iter()
                .map(|b| match b {
                    Boundary::Orbit(o) => Boundary::Orbit(o.iter().map(|&x| sigma[x]).collect()),
                    Boundary::Isolated(v) => Boundary::Isolated(*v),
                })
                .collect(),
            vertex_of,
        }
    }
}

/// `L_k`: vertex `i` carries half-edges `o_i = 2i`, `n_i = 2i+1` in that
/// cyclic order, and edge `i` runs from `o_i` to `n_{i+1 mod k}`. Boundary
/// 1 passes through the `o_i`, boundary 2 through the `n_i`.
pub fn make_lk(k: usize) -> Result<RibbonGraph> {
    if k == 0 {
        return Err(Error::Usage("L_k needs k ≥ 1".into()));
    }
    let k32 = k as u32;
    let spec = GraphSpec {
        half_edges: (0..2 * k32).collect(),
        tau1: (0..k32).map(|i| [2 * i, 2 * ((i + 1) % k32) + 1]).collect(),
        tau0: (0..k32).map(|i| vec![2 * i, 2 * i + 1]).collect(),
        isolated: vec![],
        directions: None,
        labels: Some(GraphLabels {
            vertices: None,
            edges: None,
            boundaries: Some(vec![
                BoundaryLabel { half_edge: Some(0), isolated: None, label: 1 },
                BoundaryLabel { half_edge: Some(1), isolated: None, label: 2 },
            ]),
        }),
    };
    RibbonGraph::from_spec(&spec)
}

/// Two univalent vertices joined by one edge from vertex 1 to vertex 2.
pub fn make_bar() -> RibbonGraph {
    let spec = GraphSpec {
        half_edges: vec![0, 1],
        tau1: vec![[0, 1]],
        tau0: vec![vec![0], vec![1]],
        isolated: vec![],
        directions: None,
        labels: None,
    };
    RibbonGraph::from_spec(&spec).expect("bar graph is valid")
}

/// Cyclic-order preserving maps from an `m`-cycle into `0..r`: an
/// `m`-subset of positions and a rotation offset.
fn injections(m: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m > r {
        return out;
    }
    let mut subset: Vec<usize> = (0..m).collect();
    loop {
        for off in 0..m {
            out.push((0..m).map(|j| subset[(j + off) % m]).collect());
        }
        // next m-subset of 0..r in lexicographic order
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if subset[i] < r - m + i {
                subset[i] += 1;
                for j in i + 1..m {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Operation on one tuple of words (cyclic representatives).
pub fn operate_words(g: &RibbonGraph, p: &PairingTable, words: &[Word]) -> Result<GraphResult> {
    if words.len() != g.vertices.len() {
        return Err(Error::Usage(format!(
            "graph has {} vertices but {} operands were given",
            g.vertices.len(),
            words.len()
        )));
    }
    if words.iter().any(|w| w.letters().iter().any(|&l| l & 1 == 1 || (l >> 1) as usize >= p.rank())) {
        return Err(Error::Usage("ribbon graph operands must be tensor algebra words over the pairing's space".into()));
    }
    let mut out = GraphResult::zero();
    // per-vertex candidate position lists, in the vertex's cycle order
    let mut choices: Vec<Vec<Vec<usize>>> = Vec::new();
    for (v, vert) in g.vertices.iter().enumerate() {
        match vert {
            Vertex::Cycle(c) => {
                let inj = injections(c.len(), words[v].len());
                if inj.is_empty() {
                    return Ok(out);
                }
                choices.push(inj);
            }
            Vertex::Isolated => choices.push(vec![vec![]]),
        }
    }
    let h = g.tau0.len();
    let mut q = vec![0usize; h];
    let mut odo = vec![0usize; choices.len()];
    loop {
        for (v, vert) in g.vertices.iter().enumerate() {
            if let Vertex::Cycle(c) = vert {
                for (x, &pos) in c.iter().zip(&choices[v][odo[v]]) {
                    q[*x] = pos;
                }
            }
        }
        let letter = |x: usize| words[g.vertex_of[x]].letters()[q[x]];
        let mut lambda = Q::one();
        for &(a, b) in &g.edges {
            lambda = &lambda * p.get((letter(a) >> 1) as usize, (letter(b) >> 1) as usize);
            if lambda.is_zero() {
                break;
            }
        }
        if !lambda.is_zero() {
            let key: Vec<CyclicWord> = g
                .boundaries
                .iter()
                .map(|b| match b {
                    Boundary::Isolated(v) => CyclicWord::new(&words[*v]),
                    Boundary::Orbit(o) => {
                        let mut ls = Vec::new();
                        for &x in o {
                            let w = &words[g.vertex_of[x]];
                            let r = w.len();
                            let len = (q[g.tau0[x]] + r - q[x] - 1) % r;
                            ls.extend(w.cyclic_segment(q[x] + 1, len));
                        }
                        CyclicWord::new(&Word::from_letters(&ls))
                    }
                })
                .collect();
            out.add_term(key, lambda);
        }
        // advance the odometer
        let mut i = 0;
        loop {
            if i == odo.len() {
                return Ok(out);
            }
            odo[i] += 1;
            if odo[i] < choices[i].len() {
                break;
            }
            odo[i] = 0;
            i += 1;
        }
    }
}

/// `Γ(w₁, …, w_n)`, multilinear in the operands.
pub fn graph_operate(g: &RibbonGraph, p: &PairingTable, ws: &[Trace]) -> Result<GraphResult> {
    if ws.len() != g.vertices.len() {
        return Err(Error::Usage(format!(
            "graph has {} vertices but {} operands were given",
            g.vertices.len(),
            ws.len()
        )));
    }
    let mut out = GraphResult::zero();
    let mut acc: Vec<(Vec<Word>, Q)> = vec![(Vec::new(), Q::one())];
    for w in ws {
        let mut next = Vec::new();
        for (prefix, c) in &acc {
            for (cw, cc) in w {
                let mut v = prefix.clone();
                v.push(cw.word().clone());
                next.push((v, c * cc));
            }
        }
        acc = next;
    }
    for (words, c) in acc {
        out.add_scaled(&operate_words(g, p, &words)?, &c);
    }
    Ok(out)
}

/// Canonical representative: every edge directed from its smaller
/// half-edge, edges labelled by their first half-edge. Returns the sign
/// `(−1)^{#flips}`.
pub fn graph_normalize(g: &RibbonGraph) -> (RibbonGraph, Q) {
    let mut n = g.clone();
    let mut sign = Q::one();
    for e in n.edges.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
            sign = -sign;
        }
    }
    n.edges.sort();
    (n, sign)
}

/// Reads a two-boundary result as an element of `|T(W)| ⊗ |T(W)|`.
pub fn result_to_trace2(r: &GraphResult) -> Result<Trace2> {
    let mut out = Trace2::zero();
    for (k, c) in r {
        if k.len() != 2 {
            return Err(Error::Usage("result does not have exactly two boundary factors".into()));
        }
        out.add_term((k[0].clone(), k[1].clone()), c.clone());
    }
    Ok(out)
}

pub fn result_to_trace(r: &GraphResult) -> Result<Trace> {
    let mut out = Trace::zero();
    for (k, c) in r {
        if k.len() != 1 {
            return Err(Error::Usage("result does not have exactly one boundary factor".into()));
        }
        out.add_term(k[0].clone(), c.clone());
    }
    Ok(out)
}

/// The closed double sum for `L_k(w₁, …, w_k)`:
/// `Σ_{s_i ≠ t_i} ⟨w¹_{s₁}, w²_{t₂}⟩⋯⟨wᵏ_{s_k}, w¹_{t₁}⟩
///   |wᵏ(s_k+1..t_k−1)⋯w¹(s₁+1..t₁−1)| ⊗ |w¹(t₁+1..s₁−1)⋯wᵏ(t_k+1..s_k−1)|`.
pub fn lk_closed_form(p: &PairingTable, ws: &[Word]) -> Trace2 {
    let k = ws.len();
    let mut out = Trace2::zero();
    if k == 0 || ws.iter().any(|w| w.len() < 2) {
        return out;
    }
    let pairs: Vec<Vec<(usize, usize)>> = ws
        .iter()
        .map(|w| {
            let r = w.len();
            (0..r).flat_map(|s| (0..r).filter(move |&t| t != s).map(move |t| (s, t))).collect()
        })
        .collect();
    let mut odo = vec![0usize; k];
    let g = |l: u16| (l >> 1) as usize;
    loop {
        let st: Vec<(usize, usize)> = (0..k).map(|i| pairs[i][odo[i]]).collect();
        let mut lambda = Q::one();
        for i in 0..k {
            let j = (i + 1) % k;
            lambda = &lambda * p.get(g(ws[i].letters()[st[i].0]), g(ws[j].letters()[st[j].1]));
        }
        if !lambda.is_zero() {
            let seg = |w: &Word, from: usize, to: usize| {
                let r = w.len();
                w.cyclic_segment(from + 1, (to + r - from - 1) % r)
            };
            let mut first = Vec::new();
            for i in (0..k).rev() {
                first.extend(seg(&ws[i], st[i].0, st[i].1));
            }
            let mut second = Vec::new();
            for i in 0..k {
                second.extend(seg(&ws[i], st[i].1, st[i].0));
            }
            out.add_term(
                (CyclicWord::new(&Word::from_letters(&first)), CyclicWord::new(&Word::from_letters(&second))),
                lambda,
            );
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            odo[i] += 1;
            if odo[i] < pairs[i].len() {
                break;
            }
            odo[i] = 0;
            i += 1;
        }
    }
}
