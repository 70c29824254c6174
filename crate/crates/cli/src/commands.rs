//! Subcommand implementations. Each returns the report text and whether the
//! verdict it encodes was positive.

use std::fmt::Write as _;
use std::sync::Arc;

use qchroma::algebra::{AlgebraContext, AlgebraSpec};
use qchroma::classical::ClassicalGraph;
use qchroma::coloring::{check_pinching, check_twirling, classical_chromatic, verify_certificate_with_tolerance, ColoringCertificate};
use qchroma::qgraph::{QuantumGraph, AXIOM_NAMES};
use qchroma::spectra::{all_bounds_with_tolerance, eig_hermitian, laplacians};
use qchroma::translate::{
    adjacency_from_projection_with_tolerance, projection_from_adjacency, projection_onto, range_of_with_tolerance, Loops,
    OperatorSubspace,
};
use qchroma::linalg::op_norm;
use qchroma::{AxiomReport64, Complex, OperatorSubspace64, QuantumGraph64};
use serde_json::json;

use crate::format::{classical_file, fmt_num, CertFile, GraphData, QGraphFile};
use crate::CliError;

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            seed: 0,
        }
    }
}

/// Report text and verdict; the binary exits 0 iff `ok`.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn pass(text: String) -> Self {
        Self { text, ok: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Text,
    Kv,
    JsonLines,
}

/// A graph loaded from a file, with `S` when the file supplied one.
pub struct Loaded {
    pub file: QGraphFile,
    pub graph: QuantumGraph64,
    pub subspace: Option<OperatorSubspace64>,
}

pub fn load(text: &str, opts: Options) -> Result<Loaded, CliError> {
    let file = QGraphFile::parse(text)?;
    let ctx = Arc::new(AlgebraContext::new(AlgebraSpec::new(file.blocks.clone())?));
    let (adjacency, subspace) = match &file.data {
        GraphData::Adjacency(a) => (a.clone(), None),
        GraphData::SBasis(ms) => {
            let s = OperatorSubspace::from_spanning_with_tolerance(ctx.clone(), ms, Loops::Allowed, opts.tolerance)?;
            let a = adjacency_from_projection_with_tolerance(&projection_onto(&s), opts.tolerance)?;
            (a, Some(s))
        }
    };
    let graph = QuantumGraph::with_tolerance(ctx, adjacency, opts.tolerance)?;
    Ok(Loaded { file, graph, subspace })
}

fn subspace_of(loaded: &Loaded, opts: Options) -> Result<OperatorSubspace64, CliError> {
    if let Some(s) = &loaded.subspace {
        return Ok(s.clone());
    }
    let p = projection_from_adjacency(loaded.graph.shared_ctx(), loaded.graph.adjacency())?;
    Ok(range_of_with_tolerance(&p, opts.tolerance))
}

fn blocks_str(blocks: &[usize]) -> String {
    blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ")
}

fn header(out: &mut String, loaded: &Loaded, opts: Options) {
    if let Some(name) = &loaded.file.name {
        writeln!(out, "graph: {name}").unwrap();
    }
    writeln!(out, "blocks: {}", blocks_str(&loaded.file.blocks)).unwrap();
    writeln!(out, "tolerance: {}", fmt_num(opts.tolerance)).unwrap();
}

fn loops_label(ax: &AxiomReport64) -> &'static str {
    match (ax.is_reflexive(), ax.is_irreflexive()) {
        (true, _) => "reflexive",
        (false, true) => "irreflexive",
        (false, false) => "mixed",
    }
}

fn rounded(x: f64) -> serde_json::Value {
    json!(fmt_num(x).parse::<f64>().unwrap_or(x))
}

pub fn validate(text: &str, format: ReportFormat, opts: Options) -> Result<Output, CliError> {
    let loaded = load(text, opts)?;
    let ax = loaded.graph.axioms();
    let ok = ax.is_quantum_adjacency();
    let mut out = String::new();
    match format {
        ReportFormat::Text => {
            header(&mut out, &loaded, opts);
            writeln!(out, "{:<20} {:<20} status", "axiom", "residual").unwrap();
            for (name, residual, pass) in ax.entries() {
                let status = if pass { "pass" } else { "fail" };
                writeln!(out, "{name:<20} {:<20} {status}", fmt_num(residual)).unwrap();
            }
            writeln!(out, "loops: {}", loops_label(ax)).unwrap();
            writeln!(out, "quantum_adjacency: {}", if ok { "yes" } else { "no" }).unwrap();
        }
        ReportFormat::Kv => {
            writeln!(out, "blocks={}", blocks_str(&loaded.file.blocks).replace(' ', ",")).unwrap();
            writeln!(out, "tolerance={}", fmt_num(opts.tolerance)).unwrap();
            for (name, residual, pass) in ax.entries() {
                writeln!(out, "{name}.residual={}", fmt_num(residual)).unwrap();
                writeln!(out, "{name}.pass={pass}").unwrap();
            }
            writeln!(out, "loops={}", loops_label(ax)).unwrap();
            writeln!(out, "quantum_adjacency={ok}").unwrap();
        }
        ReportFormat::JsonLines => {
            for (name, residual, pass) in ax.entries() {
                let line = json!({"axiom": name, "residual": rounded(residual), "pass": pass});
                writeln!(out, "{line}").unwrap();
            }
            let summary = json!({
                "blocks": loaded.file.blocks,
                "tolerance": rounded(opts.tolerance),
                "loops": loops_label(ax),
                "quantum_adjacency": ok,
            });
            writeln!(out, "{summary}").unwrap();
        }
    }
    debug_assert_eq!(AXIOM_NAMES.len(), ax.entries().len());
    Ok(Output { text: out, ok })
}

fn join_nums(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join(" ")
}

pub fn spectrum(text: &str, opts: Options) -> Result<Output, CliError> {
    let loaded = load(text, opts)?;
    let g = &loaded.graph;
    let a = eig_hermitian(g.adjacency(), opts.tolerance)?;
    let (l, q) = laplacians(g);
    let l = eig_hermitian(&l, opts.tolerance)?;
    let q = eig_hermitian(&q, opts.tolerance)?;
    let inertia = a.inertia(opts.tolerance);
    let mut out = String::new();
    header(&mut out, &loaded, opts);
    writeln!(out, "A: {}", join_nums(a.eigenvalues())).unwrap();
    writeln!(out, "L: {}", join_nums(l.eigenvalues())).unwrap();
    writeln!(out, "Q: {}", join_nums(q.eigenvalues())).unwrap();
    writeln!(out, "inertia: {} {} {}", inertia.n_plus, inertia.n_zero, inertia.n_minus).unwrap();
    Ok(Output::pass(out))
}

pub fn bounds(text: &str, opts: Options) -> Result<Output, CliError> {
    let loaded = load(text, opts)?;
    let r = all_bounds_with_tolerance(&loaded.graph, opts.tolerance)?;
    let mut out = String::new();
    header(&mut out, &loaded, opts);
    writeln!(out, "{:<12} {:<20} applicable", "bound", "value").unwrap();
    for (name, b) in r.bounds() {
        let flag = if b.applicable { "yes" } else { "no" };
        writeln!(out, "{name:<12} {:<20} {flag}", fmt_num(b.value)).unwrap();
    }
    writeln!(out, "best: {}", fmt_num(r.best)).unwrap();
    let inputs = [
        ("lambda_max", r.lambda_max),
        ("lambda_min", r.lambda_min),
        ("s_plus", r.s_plus),
        ("s_minus", r.s_minus),
        ("gamma_max", r.gamma_max),
        ("gamma_min", r.gamma_min),
        ("theta_max", r.theta_max),
        ("dim_S", r.edge_number_2m),
        ("dim_M", r.dim_m),
    ];
    for (name, v) in inputs {
        writeln!(out, "{name}: {}", fmt_num(v)).unwrap();
    }
    let i = r.inertia;
    writeln!(out, "n_plus: {}\nn_zero: {}\nn_minus: {}", i.n_plus, i.n_zero, i.n_minus).unwrap();
    Ok(Output::pass(out))
}

pub fn translate(text: &str, opts: Options) -> Result<Output, CliError> {
    let loaded = load(text, opts)?;
    let g = &loaded.graph;
    let mut out = String::new();
    match &loaded.subspace {
        Some(s) => {
            let p = projection_from_adjacency(g.shared_ctx(), g.adjacency())?;
            let residual = p.distance(&projection_onto(s));
            writeln!(out, "# dim_S: {}", s.dim()).unwrap();
            writeln!(out, "# round_trip_residual: {}", fmt_num(residual)).unwrap();
            let file = QGraphFile {
                name: loaded.file.name.clone(),
                blocks: loaded.file.blocks.clone(),
                data: GraphData::Adjacency(g.adjacency().clone()),
            };
            out.push_str(&file.emit());
        }
        None => {
            let s = subspace_of(&loaded, opts)?;
            let back = adjacency_from_projection_with_tolerance(&projection_onto(&s), opts.tolerance)?;
            let residual = op_norm(&(back - g.adjacency()));
            writeln!(out, "# dim_S: {}", s.dim()).unwrap();
            writeln!(out, "# round_trip_residual: {}", fmt_num(residual)).unwrap();
            let file = QGraphFile {
                name: loaded.file.name.clone(),
                blocks: loaded.file.blocks.clone(),
                data: GraphData::SBasis(s.basis().to_vec()),
            };
            out.push_str(&file.emit());
        }
    }
    Ok(Output::pass(out))
}

pub fn import_dimacs(text: &str, name: Option<String>) -> Result<Output, CliError> {
    let g = crate::format::parse_dimacs(text)?;
    if g.order() == 0 {
        return Err(qchroma::Error::EmptyBlocks.into());
    }
    Ok(Output::pass(classical_file(&g, name).emit()))
}

pub fn complete(blocks: &[usize], reflexive: bool) -> Result<Output, CliError> {
    let spec = AlgebraSpec::new(blocks.to_vec())?;
    let name = format!("complete {}{spec}", if reflexive { "reflexive " } else { "" });
    let g = QuantumGraph::complete(Arc::new(AlgebraContext::<f64>::new(spec)), reflexive);
    // The construction is exact up to roundoff; print its zeros as zeros.
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    let a = g.adjacency().map(|z| Complex::new(clean(z.re), clean(z.im)));
    let file = QGraphFile {
        name: Some(name),
        blocks: blocks.to_vec(),
        data: GraphData::Adjacency(a),
    };
    Ok(Output::pass(file.emit()))
}

pub fn check_coloring(graph_text: &str, cert_text: &str, lemmas: bool, opts: Options) -> Result<Output, CliError> {
    let loaded = load(graph_text, opts)?;
    let g = &loaded.graph;
    let cert_file = CertFile::parse(cert_text, g.dim())?;
    let cert = ColoringCertificate::new(cert_file.aux, cert_file.projections)?;
    let s = subspace_of(&loaded, opts)?;
    let mut report = verify_certificate_with_tolerance(g, &s, &cert, opts.tolerance)?;
    if lemmas {
        report.pinching = Some(check_pinching(g, &cert)?);
        report.twirling = Some(check_twirling(g, &cert, opts.seed)?);
    }

    let max = |xs: &[f64]| xs.iter().copied().fold(0.0, f64::max);
    let mut out = String::new();
    header(&mut out, &loaded, opts);
    writeln!(out, "colors: {}\naux: {}\ndim_S: {}", cert.colors(), cert.aux_dim(), s.dim()).unwrap();
    writeln!(out, "{:<8} {:<20} {:<20} {:<20} annihilation", "color", "idempotent", "self_adjoint", "membership").unwrap();
    for a in 0..cert.colors() {
        writeln!(
            out,
            "{a:<8} {:<20} {:<20} {:<20} {}",
            fmt_num(report.idempotent[a]),
            fmt_num(report.self_adjoint[a]),
            fmt_num(report.membership[a]),
            fmt_num(report.annihilation_max(a)),
        )
        .unwrap();
    }
    writeln!(out, "sum_to_identity: {}", fmt_num(report.sum_to_identity)).unwrap();
    writeln!(out, "max_idempotent: {}", fmt_num(max(&report.idempotent))).unwrap();
    writeln!(out, "max_membership: {}", fmt_num(max(&report.membership))).unwrap();
    if let Some(p) = &report.pinching {
        writeln!(out, "pinching_adjacency: {}", fmt_num(p.adjacency)).unwrap();
        writeln!(out, "pinching_commutant: {}", fmt_num(p.commutant)).unwrap();
        writeln!(out, "diagonal_blocks: {}", fmt_num(p.diagonal_blocks)).unwrap();
    }
    if let Some(t) = &report.twirling {
        writeln!(out, "twirl_unitary: {}", fmt_num(t.unitary)).unwrap();
        writeln!(out, "twirl_order: {}", fmt_num(t.order)).unwrap();
        writeln!(out, "twirl_adjacency: {}", fmt_num(t.adjacency)).unwrap();
        writeln!(out, "twirl_commutant: {}", fmt_num(t.commutant)).unwrap();
        writeln!(out, "twirl_probes: {}", fmt_num(t.probes)).unwrap();
    }
    let ok = report.verdict();
    writeln!(out, "worst_residual: {}", fmt_num(report.worst())).unwrap();
    writeln!(out, "verdict: {}", if ok { "valid" } else { "invalid" }).unwrap();
    Ok(Output { text: out, ok })
}

/// The classical graph behind a file whose blocks are all 1 and whose
/// adjacency is a 0/1 matrix.
pub fn classical_graph(loaded: &Loaded, opts: Options) -> Result<ClassicalGraph, CliError> {
    if !loaded.graph.ctx().spec().is_classical() {
        return Err(qchroma::Error::NotClassical.into());
    }
    let a = loaded.graph.adjacency();
    let n = a.nrows();
    let mut rows = vec![vec![0u8; n]; n];
    for (r, row) in rows.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            let z = a[(r, c)];
            *entry = if (z - qchroma::Complex::new(1.0, 0.0)).norm() <= opts.tolerance {
                1
            } else if z.norm() <= opts.tolerance {
                0
            } else {
                return Err(CliError::NotZeroOne { row: r, col: c });
            };
        }
    }
    Ok(ClassicalGraph::from_matrix(&rows)?)
}

pub fn chromatic(text: &str, opts: Options) -> Result<Output, CliError> {
    let loaded = load(text, opts)?;
    let g = classical_graph(&loaded, opts)?;
    Ok(Output::pass(format!("{}\n", classical_chromatic(&g)?)))
}
