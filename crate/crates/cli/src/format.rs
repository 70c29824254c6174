//! Text formats: quantum-graph files, certificate files and DIMACS edge lists.
//!
//! Quantum-graph file:
//!
//! ```text
//! # comment
//! name: optional free text
//! blocks: 1 2
//! adjacency:
//! re im re im ...        one row of dim complex entries per line
//! ```
//!
//! or `sbasis: k` followed by `k` matrices of `dim²` complex entries each.
//! Certificate file: `colors: c`, `aux: h`, then `c` matrices of
//! `(dim·h)²` complex entries, with `L²(M)` as the outer tensor factor.
//! Entries are whitespace separated, so line breaks are cosmetic.

use qchroma::algebra::AlgebraSpec;
use qchroma::classical::ClassicalGraph;
use qchroma::{CMatrix64, Complex};

use crate::CliError;

/// `%.12g`-style formatting with `-0` printed as `0`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    let fixed = trim_zeros(&format!("{x:.decimals$}"));
    if fixed == "-0" {
        "0".to_string()
    } else {
        fixed
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Operator content of a quantum-graph file.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphData {
    Adjacency(CMatrix64),
    SBasis(Vec<CMatrix64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct QGraphFile {
    pub name: Option<String>,
    pub blocks: Vec<usize>,
    pub data: GraphData,
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head).trim()
}

fn parse_f64(tok: &str, line: usize) -> Result<f64, CliError> {
    tok.parse().map_err(|_| CliError::Parse {
        line,
        message: format!("expected a number, found `{tok}`"),
    })
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, CliError> {
    tok.parse().map_err(|_| CliError::Parse {
        line,
        message: format!("expected {what}, found `{tok}`"),
    })
}

fn matrices_from(values: &[f64], n: usize, count: usize) -> Vec<CMatrix64> {
    (0..count)
        .map(|m| {
            let base = m * n * n * 2;
            CMatrix64::from_fn(n, n, |r, c| {
                let i = base + 2 * (r * n + c);
                Complex::new(values[i], values[i + 1])
            })
        })
        .collect()
}

fn check_count(found: usize, expected: usize, what: &str) -> Result<(), CliError> {
    if found != expected {
        return Err(CliError::EntryCount {
            section: what.to_string(),
            expected,
            found,
        });
    }
    Ok(())
}

#[derive(PartialEq)]
enum Section {
    None,
    Adjacency,
    SBasis(usize),
}

impl QGraphFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut name = None;
        let mut blocks: Option<Vec<usize>> = None;
        let mut section = Section::None;
        let mut values = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let (head, rest) = match line.split_once(':') {
                Some((key, rest)) if key.chars().all(|c| c.is_ascii_alphabetic()) => (Some(key), rest.trim()),
                _ => (None, line),
            };
            match head {
                Some("name") => {
                    if name.replace(rest.to_string()).is_some() {
                        return Err(CliError::duplicate("name", line_no));
                    }
                }
                Some("blocks") => {
                    if section != Section::None || blocks.is_some() {
                        return Err(CliError::duplicate("blocks", line_no));
                    }
                    let bs = rest
                        .split_whitespace()
                        .map(|t| parse_usize(t, line_no, "a block size"))
                        .collect::<Result<Vec<_>, _>>()?;
                    blocks = Some(bs);
                }
                Some("adjacency") | Some("sbasis") => {
                    if section != Section::None {
                        return Err(CliError::Parse {
                            line: line_no,
                            message: "only one of `adjacency:` and `sbasis:` may appear".into(),
                        });
                    }
                    if blocks.is_none() {
                        return Err(CliError::Parse {
                            line: line_no,
                            message: "`blocks:` must precede the operator data".into(),
                        });
                    }
                    if head == Some("adjacency") {
                        section = Section::Adjacency;
                        for t in rest.split_whitespace() {
                            values.push(parse_f64(t, line_no)?);
                        }
                    } else {
                        section = Section::SBasis(parse_usize(rest, line_no, "the number of basis operators")?);
                    }
                }
                Some(other) => {
                    return Err(CliError::Parse {
                        line: line_no,
                        message: format!("unknown section `{other}:`"),
                    })
                }
                None => {
                    if section == Section::None {
                        return Err(CliError::Parse {
                            line: line_no,
                            message: "numeric data outside `adjacency:` or `sbasis:`".into(),
                        });
                    }
                    for t in rest.split_whitespace() {
                        values.push(parse_f64(t, line_no)?);
                    }
                }
            }
        }
        let blocks = blocks.ok_or_else(|| CliError::Parse {
            line: 0,
            message: "missing `blocks:`".into(),
        })?;
        let spec = AlgebraSpec::new(blocks.clone())?;
        let d = spec.dim();
        let data = match section {
            Section::None => {
                return Err(CliError::Parse {
                    line: 0,
                    message: "missing `adjacency:` or `sbasis:`".into(),
                })
            }
            Section::Adjacency => {
                check_count(values.len(), 2 * d * d, "adjacency")?;
                GraphData::Adjacency(matrices_from(&values, d, 1).remove(0))
            }
            Section::SBasis(k) => {
                check_count(values.len(), 2 * d * d * k, "sbasis")?;
                GraphData::SBasis(matrices_from(&values, d, k))
            }
        };
        Ok(Self { name, blocks, data })
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("name: {name}\n"));
        }
        let blocks: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        out.push_str(&format!("blocks: {}\n", blocks.join(" ")));
        match &self.data {
            GraphData::Adjacency(a) => {
                out.push_str("adjacency:\n");
                push_matrix(&mut out, a);
            }
            GraphData::SBasis(ms) => {
                out.push_str(&format!("sbasis: {}\n", ms.len()));
                for (i, m) in ms.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    push_matrix(&mut out, m);
                }
            }
        }
        out
    }
}

fn push_matrix(out: &mut String, m: &CMatrix64) {
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|c| format!("{} {}", fmt_num(m[(r, c)].re), fmt_num(m[(r, c)].im)))
            .collect();
        out.push_str(&row.join("  "));
        out.push('\n');
    }
}

/// A coloring certificate as read from disk.
#[derive(Clone, Debug, PartialEq)]
pub struct CertFile {
    pub aux: usize,
    pub projections: Vec<CMatrix64>,
}

impl CertFile {
    /// Parses a certificate whose matrices act on `L²(M) ⊗ ℂ^h` with
    /// `dim M = dim`.
    pub fn parse(text: &str, dim: usize) -> Result<Self, CliError> {
        let mut colors = None;
        let mut aux = None;
        let mut values = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            match line.split_once(':') {
                Some(("colors", rest)) => colors = Some(parse_usize(rest.trim(), line_no, "a color count")?),
                Some(("aux", rest)) => aux = Some(parse_usize(rest.trim(), line_no, "an auxiliary dimension")?),
                Some((key, _)) => {
                    return Err(CliError::Parse {
                        line: line_no,
                        message: format!("unknown section `{key}:`"),
                    })
                }
                None => {
                    if colors.is_none() || aux.is_none() {
                        return Err(CliError::Parse {
                            line: line_no,
                            message: "`colors:` and `aux:` must precede the matrices".into(),
                        });
                    }
                    for t in line.split_whitespace() {
                        values.push(parse_f64(t, line_no)?);
                    }
                }
            }
        }
        let (Some(c), Some(h)) = (colors, aux) else {
            return Err(CliError::Parse {
                line: 0,
                message: "missing `colors:` or `aux:`".into(),
            });
        };
        if c == 0 || h == 0 {
            return Err(CliError::Parse {
                line: 0,
                message: "`colors:` and `aux:` must be positive".into(),
            });
        }
        let n = dim * h;
        check_count(values.len(), 2 * c * n * n, "certificate")?;
        Ok(Self {
            aux: h,
            projections: matrices_from(&values, n, c),
        })
    }

    pub fn emit(&self) -> String {
        let mut out = format!("colors: {}\naux: {}\n", self.projections.len(), self.aux);
        for (i, p) in self.projections.iter().enumerate() {
            out.push_str(&format!("# color {i}\n"));
            push_matrix(&mut out, p);
        }
        out
    }
}

/// Parses a DIMACS `p edge` file. Duplicate edges collapse; loops are rejected.
pub fn parse_dimacs(text: &str) -> Result<ClassicalGraph, CliError> {
    let mut graph: Option<ClassicalGraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                if graph.is_some() {
                    return Err(CliError::MalformedHeader { line: line_no });
                }
                let fields: Vec<&str> = toks.collect();
                let n = match fields.as_slice() {
                    [kind, n, m] if matches!(*kind, "edge" | "col") && m.parse::<usize>().is_ok() => n.parse().ok(),
                    _ => None,
                };
                let n = n.ok_or(CliError::MalformedHeader { line: line_no })?;
                graph = Some(ClassicalGraph::empty(n));
            }
            Some("e") => {
                let g = graph.as_mut().ok_or(CliError::MalformedHeader { line: line_no })?;
                let ends: Vec<&str> = toks.collect();
                let [u, v] = ends.as_slice() else {
                    return Err(CliError::Parse {
                        line: line_no,
                        message: "edge lines have the form `e u v`".into(),
                    });
                };
                let n = g.order();
                let vertex = |t: &str| -> Result<usize, CliError> {
                    let x: usize = parse_usize(t, line_no, "a vertex")?;
                    if x == 0 || x > n {
                        return Err(CliError::VertexOutOfRange {
                            line: line_no,
                            vertex: x,
                            n,
                        });
                    }
                    Ok(x - 1)
                };
                let (u, v) = (vertex(u)?, vertex(v)?);
                if u == v {
                    return Err(CliError::SelfLoop {
                        line: line_no,
                        vertex: u + 1,
                    });
                }
                g.add_edge(u, v);
            }
            Some(other) => {
                return Err(CliError::Parse {
                    line: line_no,
                    message: format!("unknown DIMACS line type `{other}`"),
                })
            }
        }
    }
    graph.ok_or(CliError::MalformedHeader { line: 0 })
}

/// The quantum-graph file of a classical graph: all blocks 1, 0/1 adjacency.
pub fn classical_file(g: &ClassicalGraph, name: Option<String>) -> QGraphFile {
    QGraphFile {
        name,
        blocks: vec![1; g.order()],
        data: GraphData::Adjacency(g.adjacency()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(-3.5), "-3.5");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(2.0f64.sqrt()), "1.41421356237");
        assert_eq!(fmt_num(1e-5), "1e-05");
        assert_eq!(fmt_num(1.25e-12), "1.25e-12");
        assert_eq!(fmt_num(123456789012.0), "123456789012");
        assert_eq!(fmt_num(1234567890123.0), "1.23456789012e+12");
        assert_eq!(fmt_num(0.0001), "0.0001");
        assert_eq!(fmt_num(4.0 - 1e-15), "4");
    }

    #[test]
    fn qgraph_round_trip() {
        let text = "# K2\nname: edge\nblocks: 1 1\nadjacency:\n0 0  1 0\n1 0  0 0\n";
        let f = QGraphFile::parse(text).unwrap();
        assert_eq!(f.name.as_deref(), Some("edge"));
        assert_eq!(f.emit(), "name: edge\nblocks: 1 1\nadjacency:\n0 0  1 0\n1 0  0 0\n");
        assert_eq!(QGraphFile::parse(&f.emit()).unwrap().emit(), f.emit());
    }

    #[test]
    fn qgraph_errors() {
        assert!(matches!(
            QGraphFile::parse("blocks: 2\nadjacency:\n1 0\n"),
            Err(CliError::EntryCount { .. })
        ));
        assert!(matches!(QGraphFile::parse("blocks: 1\n"), Err(CliError::Parse { .. })));
        assert!(matches!(
            QGraphFile::parse("blocks: 1\nadjacency:\n0 0\nsbasis: 1\n0 0\n"),
            Err(CliError::Parse { .. })
        ));
        assert!(matches!(QGraphFile::parse("blocks: 0\nadjacency:\n"), Err(CliError::Core(_))));
        assert!(matches!(QGraphFile::parse("blocks: 1\nadjacency:\nx 0\n"), Err(CliError::Parse { line: 3, .. })));
    }

    #[test]
    fn dimacs() {
        let k3 = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(k3, ClassicalGraph::complete(3));
        let dup = parse_dimacs("p edge 2 2\ne 1 2\ne 1 2\n").unwrap();
        assert_eq!(dup, ClassicalGraph::complete(2));
        assert!(matches!(parse_dimacs("p edge 2 1\ne 1 1\n"), Err(CliError::SelfLoop { line: 2, vertex: 1 })));
        assert!(matches!(
            parse_dimacs("p edge 2 1\ne 1 3\n"),
            Err(CliError::VertexOutOfRange { vertex: 3, .. })
        ));
        assert!(matches!(parse_dimacs("p graph 2\n"), Err(CliError::MalformedHeader { line: 1 })));
        assert!(matches!(parse_dimacs("e 1 2\n"), Err(CliError::MalformedHeader { .. })));
        assert!(matches!(parse_dimacs("c nothing\n"), Err(CliError::MalformedHeader { line: 0 })));
    }

    #[test]
    fn cert_round_trip() {
        let p0 = CMatrix64::from_fn(2, 2, |r, c| Complex::new(if r == 0 && c == 0 { 1.0 } else { 0.0 }, 0.0));
        let p1 = CMatrix64::identity(2, 2) - &p0;
        let f = CertFile {
            aux: 1,
            projections: vec![p0, p1],
        };
        let back = CertFile::parse(&f.emit(), 2).unwrap();
        assert_eq!(back, f);
        assert!(matches!(CertFile::parse(&f.emit(), 3), Err(CliError::EntryCount { .. })));
    }
}
