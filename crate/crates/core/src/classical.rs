//! Simple undirected classical graphs and the graph families used as a
//! test corpus (named graphs and all isomorphism classes on few vertices).

use std::collections::HashSet;

use nalgebra::Complex;

use crate::{CMatrix, Error, Real, Result};

/// Loop-free undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalGraph {
    n: usize,
    adj: Vec<bool>,
}

impl ClassicalGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![false; n * n],
        }
    }

    /// Builds a graph from a 0/1 matrix, which must be symmetric and hollow.
    pub fn from_matrix(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut g = Self::empty(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::shape(format!("row of length {n}"), row.len()));
            }
            for (j, &v) in row.iter().enumerate() {
                if v > 1 {
                    return Err(Error::NotBinary { row: i, col: j });
                }
                if rows[j][i] != v {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
                if i == j && v == 1 {
                    return Err(Error::NotHollow { vertex: i });
                }
                g.adj[i * n + j] = v == 1;
            }
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::shape(format!("vertex < {n}"), u.max(v)));
            }
            if u == v {
                return Err(Error::NotHollow { vertex: u });
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loops are not allowed");
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_edge(v, u)).count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    /// Edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn adjacency<T: Real>(&self) -> CMatrix<T> {
        CMatrix::from_fn(self.n, self.n, |i, j| {
            if self.has_edge(i, j) {
                Complex::new(T::one(), T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let s = side[v].unwrap();
                for u in self.neighbors(v) {
                    match side[u] {
                        None => {
                            side[u] = Some(!s);
                            stack.push(u);
                        }
                        Some(t) if t == s => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut g = Self::empty(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
    pub fn petersen() -> Self {
        let mut g = Self::empty(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
            g.add_edge(i, 5 + i);
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut g = Self::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Isomorphism-invariant code: the largest upper-triangle bit string over
    /// all vertex orders compatible with a degree refinement.
    pub fn canonical_code(&self) -> u128 {
        let n = self.n;
        assert!(n * n.saturating_sub(1) / 2 <= 128, "canonical code supports at most 16 vertices");
        let degrees: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let invariant: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nd: Vec<usize> = self.neighbors(v).map(|u| degrees[u]).collect();
                nd.sort_unstable();
                (degrees[v], nd)
            })
            .collect();
        let mut verts: Vec<usize> = (0..n).collect();
        verts.sort_by(|&a, &b| invariant[b].cmp(&invariant[a]));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &v in &verts {
            match groups.last_mut() {
                Some(g) if invariant[g[0]] == invariant[v] => g.push(v),
                _ => groups.push(vec![v]),
            }
        }
        let mut best = 0u128;
        let mut order = Vec::with_capacity(n);
        self.search_orders(&groups, 0, &mut order, &mut best);
        best
    }

    fn search_orders(
        &self,
        groups: &[Vec<usize>],
        gi: usize,
        order: &mut Vec<usize>,
        best: &mut u128,
    ) {
        if gi == groups.len() {
            let code = self.code_for(order);
            if code > *best {
                *best = code;
            }
            return;
        }
        let mut items = groups[gi].clone();
        permute_all(&mut items, 0, &mut |perm| {
            let base = order.len();
            order.extend_from_slice(perm);
            self.search_orders(groups, gi + 1, order, best);
            order.truncate(base);
        });
    }

    fn code_for(&self, order: &[usize]) -> u128 {
        let mut code = 0u128;
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                code <<= 1;
                if self.has_edge(order[i], order[j]) {
                    code |= 1;
                }
            }
        }
        code
    }

    /// One representative of every isomorphism class on exactly `n` vertices.
    pub fn all_nonisomorphic(n: usize) -> Vec<Self> {
        if n == 0 {
            return vec![Self::empty(0)];
        }
        let smaller = Self::all_nonisomorphic(n - 1);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in &smaller {
            for mask in 0u32..(1u32 << (n - 1)) {
                let mut h = Self::empty(n);
                for (u, v) in g.edges() {
                    h.add_edge(u, v);
                }
                for u in 0..n - 1 {
                    if mask & (1 << u) != 0 {
                        h.add_edge(u, n - 1);
                    }
                }
                if seen.insert(h.canonical_code()) {
                    out.push(h);
                }
            }
        }
        out
    }
}

fn permute_all(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_all(items, k + 1, f);
        items.swap(k, i);
    }
}
