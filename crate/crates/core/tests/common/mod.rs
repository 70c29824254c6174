//! Shared corpus and reference computations for the integration tests.

#![allow(dead_code)]

use std::sync::Arc;

use qchroma::algebra::AlgebraContext;
use qchroma::classical::ClassicalGraph;
use qchroma::qgraph::QuantumGraph;
use qchroma::translate::{adjacency_from_projection, projection_onto, Loops, OperatorSubspace};
use qchroma::{CMatrix, Complex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn ctx(blocks: &[usize]) -> Arc<AlgebraContext<f64>> {
    Arc::new(AlgebraContext::from_blocks(blocks).expect("valid blocks"))
}

/// Grötzsch graph: triangle-free, 11 vertices, χ = 4.
pub fn grotzsch() -> ClassicalGraph {
    let mut g = ClassicalGraph::empty(11);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, (i + 1) % 5);
        g.add_edge(5 + i, (i + 4) % 5);
        g.add_edge(10, 5 + i);
    }
    g
}

/// 3-cube graph.
pub fn cube() -> ClassicalGraph {
    let mut g = ClassicalGraph::empty(8);
    for v in 0..8usize {
        for bit in 0..3 {
            let u = v ^ (1 << bit);
            if u > v {
                g.add_edge(v, u);
            }
        }
    }
    g
}

pub fn named_graphs() -> Vec<(String, ClassicalGraph)> {
    let mut out = vec![("petersen".to_string(), ClassicalGraph::petersen())];
    for n in 5..=9 {
        out.push((format!("C{n}"), ClassicalGraph::cycle(n)));
    }
    for n in 3..=6 {
        out.push((format!("K{n}"), ClassicalGraph::complete(n)));
    }
    out.push(("grotzsch".to_string(), grotzsch()));
    out.push(("cube".to_string(), cube()));
    out.push(("K3,4".to_string(), ClassicalGraph::complete_bipartite(3, 4)));
    out
}

/// Every isomorphism class on 1 to `max_n` vertices, then the named graphs.
pub fn classical_corpus(max_n: usize) -> Vec<(String, ClassicalGraph)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for (i, g) in ClassicalGraph::all_nonisomorphic(n).into_iter().enumerate() {
            out.push((format!("n{n}#{i}"), g));
        }
    }
    out.extend(named_graphs());
    out
}

/// `S_G = span{e_uv : u ~ v}` built straight from the edge list.
pub fn classical_subspace(g: &ClassicalGraph) -> OperatorSubspace<f64> {
    let n = g.order();
    let cx = ctx(&vec![1; n]);
    let mut units = Vec::new();
    for (u, v) in g.edges() {
        for (r, c) in [(u, v), (v, u)] {
            let mut e = CMatrix::<f64>::zeros(n, n);
            e[(r, c)] = Complex::new(1.0, 0.0);
            units.push(e);
        }
    }
    OperatorSubspace::from_spanning(cx, &units, Loops::Forbidden).expect("edge space is a quantum graph")
}

/// An irreflexive quantum graph generated by `gens` random rank-one operators.
pub fn random_quantum_graph(blocks: &[usize], gens: usize, seed: u64) -> (QuantumGraph<f64>, OperatorSubspace<f64>) {
    let cx = ctx(blocks);
    let d = cx.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vec = || {
        CMatrix::<f64>::from_fn(d, 1, |_, _| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    };
    let generators: Vec<CMatrix<f64>> = (0..gens).map(|_| vec() * vec().adjoint()).collect();
    let s = OperatorSubspace::generated_by(cx.clone(), &generators, Loops::Forbidden).expect("generated subspace");
    let a = adjacency_from_projection(&projection_onto(&s)).expect("bimodule projection");
    (QuantumGraph::new(cx, a).expect("shape"), s)
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// descending. Independent of the library's eigensolver.
#[allow(clippy::needless_range_loop)]
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
    ev
}

pub fn classical_matrix(g: &ClassicalGraph) -> Vec<Vec<f64>> {
    let n = g.order();
    (0..n).map(|i| (0..n).map(|j| if g.has_edge(i, j) { 1.0 } else { 0.0 }).collect()).collect()
}
