//! Seeded randomized verification suites. Every trial draws from its own
//! forked sampler, so a report depends only on the options.

use rand::seq::SliceRandom;

use crate::adjoint::{
    adjoint_contraction_defect, adjoint_identity_defect, adjoint_trace_vs_divergence, is_trace_flat,
    lift_independence_check,
};
use crate::algebra::{env_from, AlgebraKind, CyclicWord, GeneratorSet, Trace, Trace2, Word};
use crate::bracket::{derivation_from_ham, ham_apply_word, surface_bracket, PairingTable};
use crate::calculus::Derivation;
use crate::ce::{
    ce_d_eval, div_alt, div_alt_cochain, gl_restrict, iota_curvature, mc_defect_default,
    mc_defect_free, trace_compat_default, CeCochain, EnvEndModule, GlElement,
};
use crate::connection::{
    delta_k, div_k, env_matrix_apply, DefaultConnection, EnvMatrix, Frame, FreeConnection,
};
use crate::error::{Error, Result};
use crate::io::ConnectionKind;
use crate::lincomb::LinComb;
use crate::matrix::Matrix;
use crate::rational::Q;
use crate::report::{Check, Report};
use crate::ribbon::{graph_operate, lk_closed_form, make_bar, make_lk, result_to_trace, result_to_trace2, GraphSpec, RibbonGraph};
use crate::sample::Sampler;
use crate::syntax::{format_derivation, format_trace, format_trace2};

pub const SUITES: [&str; 7] =
    ["ribbon-equivalence", "cocycle", "mc", "fuks", "appendix", "bialgebra", "well-definedness"];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub k: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Module rank for `appendix`.
    pub rank: Option<usize>,
    /// Restricts `cocycle` to one of the two standard connections.
    pub connection: Option<ConnectionKind>,
}

impl SuiteOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        SuiteOptions { k: None, trials, seed, rank: None, connection: None }
    }

    fn echo(&self, suite: &str) -> String {
        let mut s = format!("verify {suite}");
        if let Some(k) = self.k {
            s.push_str(&format!(" --k {k}"));
        }
        if let Some(c) = self.connection {
            s.push_str(&format!(" --connection {}", connection_name(c)));
        }
        if let Some(r) = self.rank {
            s.push_str(&format!(" --rank {r}"));
        }
        s.push_str(&format!(" --trials {} --seed {}", self.trials, self.seed));
        s
    }

    fn fork(&self, salt: u64, i: usize) -> Sampler {
        Sampler::fork(self.seed.wrapping_add(salt.wrapping_mul(0x1000_0000_01B3)), i as u64)
    }
}

pub fn connection_name(c: ConnectionKind) -> &'static str {
    match c {
        ConnectionKind::NablaW => "nabla_W",
        ConnectionKind::NablaC => "nabla_C",
        ConnectionKind::FreeModule => "free_module",
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Report> {
    if opts.trials == 0 {
        return Err(Error::Usage("--trials must be at least 1".into()));
    }
    match name {
        "ribbon-equivalence" => ribbon_equivalence(opts),
        "cocycle" => cocycle(opts),
        "mc" => maurer_cartan(opts),
        "fuks" => fuks(opts),
        "appendix" => appendix(opts),
        "bialgebra" => bialgebra(opts),
        "well-definedness" => well_definedness(opts),
        _ => Err(Error::Usage(format!("unknown suite `{name}`; expected one of {}", SUITES.join(", ")))),
    }
}

fn tensor_gens(rank: usize) -> GeneratorSet {
    GeneratorSet::from_chars(AlgebraKind::Tensor, &"uvwxyz"[..rank]).expect("valid names")
}

fn group_gens(rank: usize) -> GeneratorSet {
    GeneratorSet::from_chars(AlgebraKind::Group, &"abcdef"[..rank]).expect("valid names")
}

fn gens_for(kind: AlgebraKind, rank: usize) -> GeneratorSet {
    match kind {
        AlgebraKind::Tensor => tensor_gens(rank),
        AlgebraKind::Group => group_gens(rank),
    }
}

fn show_derivations(gens: &GeneratorSet, fs: &[Derivation]) -> String {
    fs.iter()
        .enumerate()
        .map(|(i, f)| {
            let body: Vec<String> = format_derivation(gens, f).into_iter().map(|(n, v)| format!("{n} -> {v}")).collect();
            format!("f{} = {{{}}}", i + 1, body.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn show_traces(gens: &GeneratorSet, ws: &[Trace]) -> String {
    ws.iter().map(|w| format!("|{}|", format_trace(gens, w))).collect::<Vec<_>>().join(", ")
}

fn single(w: &Word) -> Trace {
    Trace::basis(CyclicWord::new(w))
}

fn sign_k(k: usize) -> Q {
    if k.is_multiple_of(2) {
        Q::one()
    } else {
        Q::from_int(-1)
    }
}

fn k_values(opts: &SuiteOptions, default: &[usize]) -> Result<Vec<usize>> {
    match opts.k {
        Some(0) => Err(Error::Usage("--k must be at least 1".into())),
        Some(k) => Ok(vec![k]),
        None => Ok(default.to_vec()),
    }
}

/// `(−1)^k δ_k^{Ham,∇_W} = L_k`, with the closed double sum as a third value.
fn ribbon_equivalence(opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new(opts.echo("ribbon-equivalence"), Some(opts.seed));
    for k in k_values(opts, &[1, 2, 3])? {
        if k > 4 {
            return Err(Error::Usage("ribbon-equivalence supports k ≤ 4".into()));
        }
        let mut delta_vs_graph = Check::new(format!("k={k} (-1)^k delta_k = L_k"));
        let mut graph_vs_closed = Check::new(format!("k={k} L_k = closed double sum"));
        let mut nonzero = 0;
        let lk = make_lk(k)?;
        for t in 0..opts.trials {
            let mut s = opts.fork(1 + k as u64, t);
            let rank = s.range(2, 4);
            let gens = tensor_gens(rank);
            let pt = PairingTable::new(s.skew_matrix(rank))?;
            let words: Vec<Word> = (0..k)
                .map(|_| {
                    let len = s.range(1, 5);
                    s.word_exact(AlgebraKind::Tensor, rank, len)
                })
                .collect();
            let ws: Vec<Trace> = words.iter().map(single).collect();
            let delta = delta_k(AlgebraKind::Tensor, &DefaultConnection::Standard, |x| derivation_from_ham(&pt, x), &ws)?
                .scale(&sign_k(k));
            let graph = result_to_trace2(&graph_operate(&lk, &pt, &ws)?)?;
            let closed = lk_closed_form(&pt, &words);
            if !graph.is_zero() {
                nonzero += 1;
            }
            let detail = |a: &Trace2, b: &Trace2| {
                format!(
                    "pairing {:?}\nwords {}\nleft  {}\nright {}",
                    pt.matrix(),
                    show_traces(&gens, &ws),
                    format_trace2(&gens, a),
                    format_trace2(&gens, b)
                )
            };
            delta_vs_graph.record(delta == graph, || detail(&delta, &graph));
            graph_vs_closed.record(graph == closed, || detail(&graph, &closed));
        }
        report.push(delta_vs_graph.with_note(format!("{nonzero} nonzero values")));
        report.push(graph_vs_closed);
    }
    Ok(report)
}

fn cocycle_connections(opts: &SuiteOptions) -> Result<Vec<(ConnectionKind, AlgebraKind)>> {
    match opts.connection {
        None => Ok(vec![(ConnectionKind::NablaW, AlgebraKind::Tensor), (ConnectionKind::NablaC, AlgebraKind::Group)]),
        Some(ConnectionKind::NablaW) => Ok(vec![(ConnectionKind::NablaW, AlgebraKind::Tensor)]),
        Some(ConnectionKind::NablaC) => Ok(vec![(ConnectionKind::NablaC, AlgebraKind::Group)]),
        Some(ConnectionKind::FreeModule) => {
            Err(Error::Usage("the cocycle suite runs on nabla_W or nabla_C".into()))
        }
    }
}

/// `d_CE(Div_k∘alt) = 0` for odd `k`; `Div_k∘alt = 0` for even `k`.
fn cocycle(opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new(opts.echo("cocycle"), Some(opts.seed));
    let conn = DefaultConnection::Standard;
    for k in k_values(opts, &[1, 2, 3, 4])? {
        for (ck, kind) in cocycle_connections(opts)? {
            let name = connection_name(ck);
            let psi = div_alt_cochain(kind, &conn, k);
            let mut check = if k % 2 == 0 {
                Check::new(format!("k={k} {name} Div_k o alt = 0")).with_note("identically zero")
            } else {
                Check::new(format!("k={k} {name} d_CE(Div_k o alt) = 0"))
            };
            for t in 0..opts.trials {
                let mut s = opts.fork(10 + k as u64 * 2 + (kind == AlgebraKind::Group) as u64, t);
                let rank = s.range(2, 3);
                let n = if k % 2 == 0 { k } else { k + 1 };
                let fs: Vec<Derivation> = (0..n).map(|_| s.derivation(kind, rank, 3)).collect();
                let v = if k % 2 == 0 { div_alt(kind, &conn, &fs)? } else { ce_d_eval(&psi, &fs)? };
                check.record(v.is_zero(), || {
                    let g = gens_for(kind, rank);
                    format!("{}\nvalue {}", show_derivations(&g, &fs), format_trace2(&g, &v))
                });
            }
            report.push(check);
        }
    }
    Ok(report)
}

fn random_free_connection(s: &mut Sampler, n: usize, rank: usize, flat: bool) -> Result<FreeConnection> {
    let omega = if flat { s.flat_form_matrix(n, rank, 1) } else { s.form_matrix(n, rank, 2) };
    let lift = s.lift(n, rank);
    FreeConnection::new(omega)?.with_lift(lift)
}

fn random_env_matrix(s: &mut Sampler, kind: AlgebraKind, n: usize) -> EnvMatrix {
    Matrix::from_rows(
        (0..n)
            .map(|_| (0..n).map(|_| env_from(&s.poly(kind, n, 2, 2), &s.poly(kind, n, 1, 1))).collect())
            .collect(),
    )
}

/// Maurer–Cartan identity for flat default connections and for flat and
/// non-flat connections on free modules; trace compatibility of the
/// twisted differential.
fn maurer_cartan(opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new(opts.echo("mc"), Some(opts.seed));
    let std = DefaultConnection::Standard;
    for (name, kind, salt) in [("nabla_W", AlgebraKind::Tensor, 20), ("nabla_C", AlgebraKind::Group, 21)] {
        let mut check = Check::new(format!("{name} d_CE c + c o c = 0"));
        for t in 0..opts.trials {
            let mut s = opts.fork(salt, t);
            let rank = s.range(2, 3);
            let (f, g) = (s.derivation(kind, rank, 3), s.derivation(kind, rank, 3));
            let d = mc_defect_default(kind, &std, &f, &g)?;
            check.record(d.is_zero(), || show_derivations(&gens_for(kind, rank), &[f.clone(), g.clone()]));
        }
        report.push(check);
    }
    let mut frame = Check::new("frame connection d_CE c + c o c = 0");
    for t in 0..opts.trials {
        let mut s = opts.fork(22, t);
        let kind = if s.bool(0.5) { AlgebraKind::Tensor } else { AlgebraKind::Group };
        let e = env_from(&s.poly(kind, 2, 2, 2), &s.poly(kind, 2, 1, 1));
        let i = s.range(0, 1);
        let conn = DefaultConnection::Frame(Frame::elementary(2, &[(i, 1 - i, e)])?);
        let (f, g) = (s.derivation(kind, 2, 2), s.derivation(kind, 2, 2));
        let d = mc_defect_default(kind, &conn, &f, &g)?;
        frame.record(d.is_zero(), || show_derivations(&gens_for(kind, 2), &[f.clone(), g.clone()]));
    }
    report.push(frame);
    for (flat, salt) in [(true, 23), (false, 24)] {
        let label = if flat { "flat" } else { "non-flat" };
        let mut check = Check::new(format!("free module {label} d_CE c + c o c = iota(R)"));
        let mut curved = 0;
        for t in 0..opts.trials {
            let mut s = opts.fork(salt, t);
            let (n, rank) = (s.range(1, 3), 2);
            let mut conn = random_free_connection(&mut s, n, rank, flat)?;
            while !flat && conn.curvature().is_zero() {
                conn = random_free_connection(&mut s, n, rank, flat)?;
            }
            let (f, g) = (s.derivation(AlgebraKind::Tensor, rank, 2), s.derivation(AlgebraKind::Tensor, rank, 2));
            let ok = mc_defect_free(&conn, &f, &g)?.is_zero() && (!flat || conn.curvature().is_zero());
            if !iota_curvature(&conn, &f, &g).is_zero() {
                curved += 1;
            }
            check.record(ok, || format!("rank {n}\n{}", show_derivations(&tensor_gens(rank), &[f.clone(), g.clone()])));
        }
        if !flat {
            check = check.with_note(format!("iota(R)(f,g) nonzero in {curved} cases"));
        }
        report.push(check);
    }
    let mut compat = Check::new("Tr((d_CE + [c,.])psi) = d_CE Tr psi");
    for t in 0..opts.trials {
        let mut s = opts.fork(25, t);
        let kind = if s.bool(0.5) { AlgebraKind::Tensor } else { AlgebraKind::Group };
        let (x, y) = (random_env_matrix(&mut s, kind, 2), random_env_matrix(&mut s, kind, 2));
        let psi = CeCochain::new(1, EnvEndModule { kind, dim: 2 }, move |fs: &[Derivation]| {
            x.mul(&env_matrix_apply(&fs[0], &y))
        });
        let (f, g) = (s.derivation(kind, 2, 2), s.derivation(kind, 2, 2));
        let (l, r) = trace_compat_default(kind, &std, &psi, &f, &g)?;
        compat.record(l == r, || {
            let gg = gens_for(kind, 2);
            format!("left {}\nright {}", format_trace2(&gg, &l), format_trace2(&gg, &r))
        });
    }
    report.push(compat);
    Ok(report)
}

/// `j*(Tr c_{∇W}^k) = (−1)^k φ_k` on `gl(W)`, with a nonzero witness.
fn fuks(opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new(opts.echo("fuks"), Some(opts.seed));
    for k in k_values(opts, &[1, 3])? {
        if k > 5 {
            return Err(Error::Usage("fuks supports k ≤ 5".into()));
        }
        let mut check = Check::new(format!("k={k} Tr(c^k) on gl(W) = (-1)^k phi_k"));
        let mut witness: Option<String> = None;
        for t in 0..opts.trials {
            let mut s = opts.fork(30 + k as u64, t);
            let n = 2 + t % 2;
            let als: Vec<GlElement> = (0..k).map(|_| Matrix::from_rows(s.gl_matrix(n))).collect();
            let r = gl_restrict(&als)?;
            if witness.is_none() && !r.rhs.is_zero() && r.pass() {
                witness = Some(format!("{} (dim {n}, trial {t})", r.lhs));
            }
            check.record(r.pass(), || format!("matrices {:?}\nleft {}\nright {}", als.iter().map(|a| &a.rows).collect::<Vec<_>>(), r.lhs, r.rhs));
        }
        report.push(check);
        if k % 2 == 1 {
            let mut w = Check::new(format!("k={k} nonzero witness"));
            w.record(witness.is_some(), || "all sampled values were zero".into());
            if let Some(v) = witness {
                w = w.with_note(v);
            }
            report.push(w);
        } else {
            report.checks.last_mut().expect("just pushed").note = Some("identically zero".into());
        }
    }
    Ok(report)
}

/// Appendix identities at resolution length zero.
fn appendix(opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new(opts.echo("appendix"), Some(opts.seed));
    if opts.rank == Some(0) {
        return Err(Error::Usage("--rank must be at least 1".into()));
    }
    let pick_rank = |s: &mut Sampler| opts.rank.unwrap_or_else(|| s.range(1, 3));
    let mut a3 = Check::new("ad_f nabla = D(c(f)) + i_f R");
    let mut flat_count = 0;
    for t in 0..opts.trials {
        let mut s = opts.fork(40, t);
        let n = pick_rank(&mut s);
        let flat = t % 2 == 0;
        flat_count += flat as usize;
        let conn = random_free_connection(&mut s, n, 2, flat)?;
        let f = s.derivation(AlgebraKind::Tensor, 2, 2);
        let d = adjoint_identity_defect(&conn, &f)?;
        a3.record(d.is_zero(), || format!("rank {n}\n{}", show_derivations(&tensor_gens(2), std::slice::from_ref(&f))));
    }
    report.push(a3.with_note(format!("{flat_count} flat, {} non-flat", opts.trials - flat_count)));
    let mut tf = Check::new("sampled connections are trace-flat in DR^2");
    let mut a4 = Check::new("Tr(ad_f nabla) = d Div_1(f) in DR^1");
    for t in 0..opts.trials {
        let mut s = opts.fork(41, t);
        let n = pick_rank(&mut s);
        let lift = s.lift(n, 2);
        let conn = FreeConnection::new(s.trace_flat_form_matrix(n, 2, 2))?.with_lift(lift)?;
        let flat = is_trace_flat(&conn)?;
        tf.record(flat, || format!("rank {n}"));
        if flat {
            let f = s.derivation(AlgebraKind::Tensor, 2, 2);
            let (l, r) = adjoint_trace_vs_divergence(&conn, &f)?;
            a4.record(l == r, || format!("rank {n}\n{}", show_derivations(&tensor_gens(2), std::slice::from_ref(&f))));
        }
    }
    report.push(tf);
    report.push(a4);
    let mut a5 = Check::new("i_g(ad_f nabla) = f.c(g) - c([f,g])").with_note("homotopy term zero at length zero");
    let mut lift = Check::new("Tr(ad_f nabla) unchanged for mu = 0");
    for t in 0..opts.trials {
        let mut s = opts.fork(42, t);
        let n = pick_rank(&mut s);
        let conn = random_free_connection(&mut s, n, 2, t % 2 == 0)?;
        let (f, g) = (s.derivation(AlgebraKind::Tensor, 2, 2), s.derivation(AlgebraKind::Tensor, 2, 2));
        let d = adjoint_contraction_defect(&conn, &f, &g)?;
        a5.record(d.is_zero(), || format!("rank {n}\n{}", show_derivations(&tensor_gens(2), &[f.clone(), g.clone()])));
        let c = lift_independence_check(&conn, &f, &Matrix::zero(n))?;
        lift.record(c.unchanged, || format!("rank {n}"));
    }
    report.push(a5);
    report.push(lift);
    Ok(report)
}

type Tensor3 = LinComb<Vec<CyclicWord>>;

fn cobracket(pt: &PairingTable, x: &Trace) -> Result<Trace2> {
    result_to_trace2(&graph_operate(&make_lk(1)?, pt, std::slice::from_ref(x))?)
}

fn bracket(pt: &PairingTable, x: &Trace, y: &Trace) -> Result<Trace> {
    result_to_trace(&graph_operate(&make_bar(), pt, &[x.clone(), y.clone()])?)
}

/// Jacobi, co-Jacobi and involutivity for the bar-graph bracket and the
/// `L₁` cobracket on `|T(W)|`.
fn bialgebra(opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new(opts.echo("bialgebra"), Some(opts.seed));
    let mut jacobi = Check::new("Jacobi for the bar-graph bracket");
    let mut cojacobi = Check::new("co-Jacobi for the L_1 cobracket");
    let mut invol = Check::new("bracket o cobracket = 0");
    let mut nonzero = [0usize; 3];
    for t in 0..opts.trials {
        let mut s = opts.fork(50, t);
        let rank = s.range(2, 3);
        let gens = tensor_gens(rank);
        let pt = PairingTable::new(s.skew_matrix(rank))?;
        let xs: Vec<Trace> = (0..3).map(|_| s.trace(AlgebraKind::Tensor, rank, 4, 2)).collect();
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        let mut j = bracket(&pt, x, &bracket(&pt, y, z)?)?;
        j.add_assign(&bracket(&pt, y, &bracket(&pt, z, x)?)?);
        j.add_assign(&bracket(&pt, z, &bracket(&pt, x, y)?)?);
        nonzero[0] += !bracket(&pt, y, z)?.is_zero() as usize;
        jacobi.record(j.is_zero(), || format!("{}\nvalue {}", show_traces(&gens, &xs), format_trace(&gens, &j)));

        let w = s.trace(AlgebraKind::Tensor, rank, 6, 2);
        let d = cobracket(&pt, &w)?;
        nonzero[1] += !d.is_zero() as usize;
        let mut dd = Tensor3::zero();
        for ((a, b), c) in &d {
            for ((a1, a2), c2) in &cobracket(&pt, &Trace::basis(a.clone()))? {
                dd.add_term(vec![a1.clone(), a2.clone(), b.clone()], c * c2);
            }
        }
        let mut cj = Tensor3::zero();
        for r in 0..3 {
            for (v, c) in &dd {
                cj.add_term((0..3).map(|i| v[(i + r) % 3].clone()).collect(), c.clone());
            }
        }
        cojacobi.record(cj.is_zero(), || show_traces(&gens, std::slice::from_ref(&w)).to_string());

        let mut inv = Trace::zero();
        for ((a, b), c) in &d {
            inv.add_scaled(&bracket(&pt, &Trace::basis(a.clone()), &Trace::basis(b.clone()))?, c);
        }
        nonzero[2] += (!d.is_zero()) as usize;
        invol.record(inv.is_zero(), || format!("{}\nvalue {}", show_traces(&gens, std::slice::from_ref(&w)), format_trace(&gens, &inv)));
    }
    report.push(jacobi.with_note(format!("{} nonzero inner brackets", nonzero[0])));
    report.push(cojacobi.with_note(format!("{} nonzero cobrackets", nonzero[1])));
    report.push(invol);
    Ok(report)
}

/// A random ribbon graph with up to three edges and three vertices; vertices
/// that receive no half-edge are isolated.
pub fn random_graph(s: &mut Sampler) -> Result<RibbonGraph> {
    let e = s.range(1, 3) as u32;
    let nv = s.range(1, 3);
    let mut hs: Vec<u32> = (0..2 * e).collect();
    hs.shuffle(s.rng());
    let tau1: Vec<[u32; 2]> = hs.chunks(2).map(|p| [p[0], p[1]]).collect();
    hs.shuffle(s.rng());
    let mut cycles = vec![Vec::new(); nv];
    for h in hs {
        let v = s.range(0, nv - 1);
        cycles[v].push(h);
    }
    let isolated: Vec<u32> = (0..cycles.iter().filter(|c| c.is_empty()).count() as u32).map(|i| 2 * e + i).collect();
    let spec = GraphSpec {
        half_edges: (0..2 * e).collect(),
        tau1,
        tau0: cycles.into_iter().filter(|c| !c.is_empty()).collect(),
        isolated,
        directions: None,
        labels: None,
    };
    RibbonGraph::from_spec(&spec)
}

/// Operands long enough for every vertex.
fn graph_operands(s: &mut Sampler, g: &RibbonGraph, rank: usize) -> Vec<Trace> {
    g.valencies()
        .iter()
        .map(|&v| {
            let len = v + s.range(0, 2);
            let mut t = single(&s.word_exact(AlgebraKind::Tensor, rank, len));
            if s.bool(0.3) {
                let len2 = v + s.range(0, 2);
                t.add_term(CyclicWord::new(&s.word_exact(AlgebraKind::Tensor, rank, len2)), s.coeff());
            }
            t
        })
        .collect()
}

/// Edge-flip sign, edge relabelling, rotation invariance of `Ham`, cyclic
/// symmetry of `Div_k`.
fn well_definedness(opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new(opts.echo("well-definedness"), Some(opts.seed));
    let mut flip = Check::new("edge flip negates the graph operation");
    let mut relabel = Check::new("edge relabelling leaves the graph operation unchanged");
    let mut nonzero = 0;
    for t in 0..opts.trials {
        let mut s = opts.fork(60, t);
        let g = random_graph(&mut s)?;
        let rank = s.range(2, 3);
        let pt = PairingTable::new(s.skew_matrix(rank))?;
        let ws = graph_operands(&mut s, &g, rank);
        let base = graph_operate(&g, &pt, &ws)?;
        nonzero += !base.is_zero() as usize;
        let e = s.range(0, g.edge_count() - 1);
        let flipped = graph_operate(&g.flip_edge(e), &pt, &ws)?;
        flip.record(flipped == -&base, || format!("graph {:?}\nedge {e}", g.to_spec()));
        let mut perm: Vec<usize> = (0..g.edge_count()).collect();
        perm.shuffle(s.rng());
        let re = graph_operate(&g.relabel_edges(&perm), &pt, &ws)?;
        relabel.record(re == base, || format!("graph {:?}\npermutation {perm:?}", g.to_spec()));
    }
    report.push(flip.with_note(format!("{nonzero} nonzero values")));
    report.push(relabel);

    let (_, surface) = surface_bracket(1, 2)?;
    let mut rot = Check::new("Ham(x) independent of the rotation of x");
    for t in 0..opts.trials {
        let mut s = opts.fork(61, t);
        let (ok, x, k) = if t % 2 == 0 {
            let rank = s.range(2, 4);
            let pt = PairingTable::new(s.skew_matrix(rank))?;
            let x = s.word(AlgebraKind::Tensor, rank, 5);
            let k = s.range(0, x.len());
            let b = s.poly(AlgebraKind::Tensor, rank, 3, 2);
            (ham_apply_word(&pt, &x, &b) == ham_apply_word(&pt, &x.rotate(k), &b), x, k)
        } else {
            let x = s.word(AlgebraKind::Group, 4, 5);
            let k = s.range(0, x.len());
            let b = s.poly(AlgebraKind::Group, 4, 3, 2);
            (ham_apply_word(&surface, &x, &b) == ham_apply_word(&surface, &x.rotate(k), &b), x, k)
        };
        rot.record(ok, || format!("word {x:?} rotated by {k}"));
    }
    report.push(rot.with_note("tensor pairings and the surface double bracket"));

    let mut cyc = Check::new("Div_k cyclically symmetric");
    for t in 0..opts.trials {
        let mut s = opts.fork(62, t);
        let kind = if t % 2 == 0 { AlgebraKind::Tensor } else { AlgebraKind::Group };
        let k = s.range(1, 4);
        let rank = s.range(2, 3);
        let conn = if s.bool(0.5) {
            DefaultConnection::Standard
        } else {
            let e = env_from(&s.poly(kind, rank, 2, 2), &s.poly(kind, rank, 1, 1));
            DefaultConnection::Frame(Frame::elementary(rank, &[(0, 1, e)])?)
        };
        let fs: Vec<Derivation> = (0..k).map(|_| s.derivation(kind, rank, 2)).collect();
        let mut rotated = fs.clone();
        rotated.rotate_left(1);
        let (a, b) = (div_k(kind, &conn, &fs)?, div_k(kind, &conn, &rotated)?);
        cyc.record(a == b, || show_derivations(&gens_for(kind, rank), &fs));
    }
    report.push(cyc.with_note("standard and frame connections"));
    Ok(report)
}
