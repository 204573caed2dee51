//! Sparse undirected graphs, the generators used throughout the crate, and
//! breadth-first distance machinery.
//!
//! Hamming words are encoded base `q` with coordinate 0 most significant.
//! A product vertex `(u', u'')` is stored at `u' * |V''| + u''`, which is the
//! row pairing used by [`RatMatrix::tensor`](crate::ratmat::RatMatrix::tensor).

use std::collections::{HashMap, VecDeque};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratmat::{RatMatrix, Rational};

pub const DEFAULT_VERTEX_BUDGET: usize = 1 << 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

/// Decoded vertex label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexWord {
    /// Word over `{0, .., q-1}`.
    Hamming(Vec<usize>),
    /// Sorted support of a constant-weight binary word.
    Subset(Vec<usize>),
    Pair(Box<VertexWord>, Box<VertexWord>),
    Index(usize),
}

#[derive(Clone, Debug)]
enum Labels {
    Plain,
    Hamming { n: usize, q: usize },
    Subsets(Vec<Vec<usize>>),
    Halved { n: usize, parity: Parity },
    Product { left: Box<Labels>, right: Box<Labels>, right_n: usize },
}

impl Labels {
    fn decode(&self, v: usize) -> VertexWord {
        match self {
            Labels::Plain => VertexWord::Index(v),
            Labels::Hamming { n, q } => VertexWord::Hamming(hamming_word(v, *n, *q)),
            Labels::Subsets(subsets) => VertexWord::Subset(subsets[v].clone()),
            Labels::Halved { n, parity } => {
                VertexWord::Hamming(hamming_word(halved_word(v, *parity), *n, 2))
            }
            Labels::Product {
                left,
                right,
                right_n,
            } => VertexWord::Pair(
                Box::new(left.decode(v / right_n)),
                Box::new(right.decode(v % right_n)),
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Labels,
}

/// Anything that assigns a row vector of rationals to every vertex.
pub trait VertexFunction {
    fn n_vertices(&self) -> usize;
    fn width(&self) -> usize;
    /// Adds the value at `v` into `acc` (of length `width()`).
    fn add_value(&self, v: usize, acc: &mut [Rational]);
}

impl VertexFunction for RatMatrix {
    fn n_vertices(&self) -> usize {
        self.rows()
    }

    fn width(&self) -> usize {
        self.cols()
    }

    fn add_value(&self, v: usize, acc: &mut [Rational]) {
        for (a, x) in acc.iter_mut().zip(self.row(v)) {
            if !x.is_zero() {
                *a += x;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    pub distances: Vec<usize>,
    pub covering_radius: usize,
}

impl DistanceProfile {
    /// Number of vertices at each distance `0..=covering_radius`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.covering_radius + 1];
        for &d in &self.distances {
            sizes[d] += 1;
        }
        sizes
    }
}

impl Graph {
    /// Graph from an explicit edge list. Self-loops, duplicate edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n_vertices: usize, edges: &[[usize; 2]]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n_vertices];
        for &[u, v] in edges {
            for x in [u, v] {
                if x >= n_vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        n_vertices,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate edge at vertex {v}"
                )));
            }
        }
        Ok(Graph {
            adj,
            labels: Labels::Plain,
        })
    }

    fn from_sorted_adjacency(mut adj: Vec<Vec<usize>>, labels: Labels) -> Graph {
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj, labels }
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<[usize; 2]> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| [u, v]));
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn word(&self, v: usize) -> VertexWord {
        self.labels.decode(v)
    }

    /// Common degree, or the first vertex breaking regularity.
    pub fn regular_degree(&self) -> Result<usize> {
        let expected = self.adj.first().map_or(0, Vec::len);
        match self.adj.iter().position(|l| l.len() != expected) {
            None => Ok(expected),
            Some(vertex) => Err(Error::NotRegular {
                vertex,
                degree: self.adj[vertex].len(),
                expected,
            }),
        }
    }

    /// Dense 0/1 adjacency matrix. Only meant for small graphs.
    pub fn adjacency_matrix(&self) -> RatMatrix {
        let n = self.n_vertices();
        let mut a = RatMatrix::zeros(n, n);
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                a.set(u, v, Rational::one());
            }
        }
        a
    }

    /// Dense distance-`w` matrix. Only meant for small graphs.
    pub fn distance_matrix(&self, w: usize) -> RatMatrix {
        let n = self.n_vertices();
        let mut a = RatMatrix::zeros(n, n);
        for u in 0..n {
            for (v, d) in self.bfs(&[u]).into_iter().enumerate() {
                if d == Some(w) {
                    a.set(u, v, Rational::one());
                }
            }
        }
        a
    }

    /// Multi-source BFS; `None` marks unreachable vertices.
    pub fn bfs(&self, sources: &[usize]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n_vertices()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let next = dist[u].map(|d| d + 1);
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distances_from_set(&self, code: &[usize]) -> Result<DistanceProfile> {
        if code.is_empty() {
            return Err(Error::EmptyCode);
        }
        let n_vertices = self.n_vertices();
        if let Some(&vertex) = code.iter().find(|&&v| v >= n_vertices) {
            return Err(Error::VertexOutOfRange { vertex, n_vertices });
        }
        let distances = self
            .bfs(code)
            .into_iter()
            .enumerate()
            .map(|(vertex, d)| d.ok_or(Error::Unreachable { vertex }))
            .collect::<Result<Vec<_>>>()?;
        let covering_radius = distances.iter().copied().max().unwrap_or(0);
        Ok(DistanceProfile {
            distances,
            covering_radius,
        })
    }

    pub fn eccentricity(&self, v: usize) -> Result<usize> {
        Ok(self.distances_from_set(&[v])?.covering_radius)
    }

    pub fn diameter(&self) -> Result<usize> {
        let mut diameter = 0;
        for v in 0..self.n_vertices() {
            diameter = diameter.max(self.eccentricity(v).map_err(|_| Error::Disconnected)?);
        }
        Ok(diameter)
    }

    /// Sum of `f` over the vertices at distance exactly `w` from `v`.
    pub fn distance_w_sum(
        &self,
        v: usize,
        w: usize,
        f: &dyn VertexFunction,
    ) -> Result<Vec<Rational>> {
        if f.n_vertices() != self.n_vertices() {
            return Err(Error::ShapeMismatch(format!(
                "function has {} rows, graph has {} vertices",
                f.n_vertices(),
                self.n_vertices()
            )));
        }
        if v >= self.n_vertices() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n_vertices: self.n_vertices(),
            });
        }
        let dist = self.bfs(&[v]);
        let eccentricity = dist.iter().flatten().copied().max().unwrap_or(0);
        if w > eccentricity {
            return Err(Error::DistanceOutOfRange {
                vertex: v,
                w,
                eccentricity,
            });
        }
        let mut acc = vec![Rational::zero(); f.width()];
        for (u, d) in dist.iter().enumerate() {
            if *d == Some(w) {
                f.add_value(u, &mut acc);
            }
        }
        Ok(acc)
    }
}

pub fn hamming_word(mut index: usize, n: usize, q: usize) -> Vec<usize> {
    let mut word = vec![0; n];
    for slot in word.iter_mut().rev() {
        *slot = index % q;
        index /= q;
    }
    word
}

pub fn hamming_index(word: &[usize], q: usize) -> usize {
    word.iter().fold(0, |acc, &x| acc * q + x)
}

fn halved_word(index: usize, parity: Parity) -> usize {
    // the last coordinate is fixed by the parity of the others
    let head = index << 1;
    let head_odd = head.count_ones() % 2 == 1;
    head | usize::from(head_odd != (parity == Parity::Odd))
}

fn checked_pow(base: usize, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

fn binomial_count(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn check_budget(requested: Option<u128>, budget: usize) -> Result<usize> {
    match requested {
        Some(r) if r <= budget as u128 => Ok(r as usize),
        Some(r) => Err(Error::VertexBudget {
            requested: r,
            budget,
        }),
        None => Err(Error::VertexBudget {
            requested: u128::MAX,
            budget,
        }),
    }
}

/// Declarative graph description; this is also the JSON graph file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSpec {
    Generated(Generator),
    Explicit {
        n_vertices: usize,
        edges: Vec<[usize; 2]>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "gen", rename_all = "lowercase")]
pub enum Generator {
    Hamming {
        n: usize,
        q: usize,
    },
    Johnson {
        n: usize,
        k: usize,
    },
    Halved {
        n: usize,
        #[serde(default)]
        parity: Parity,
    },
    Product {
        left: Box<GraphSpec>,
        right: Box<GraphSpec>,
    },
}

impl GraphSpec {
    pub fn hamming(n: usize, q: usize) -> Self {
        GraphSpec::Generated(Generator::Hamming { n, q })
    }

    pub fn johnson(n: usize, k: usize) -> Self {
        GraphSpec::Generated(Generator::Johnson { n, k })
    }

    pub fn halved(n: usize, parity: Parity) -> Self {
        GraphSpec::Generated(Generator::Halved { n, parity })
    }

    pub fn product(left: GraphSpec, right: GraphSpec) -> Self {
        GraphSpec::Generated(Generator::Product {
            left: Box::new(left),
            right: Box::new(right),
        })
    }

    /// Vertex count, `None` on overflow.
    pub fn vertex_count(&self) -> Option<u128> {
        match self {
            GraphSpec::Explicit { n_vertices, .. } => Some(*n_vertices as u128),
            GraphSpec::Generated(g) => match g {
                Generator::Hamming { n, q } => checked_pow(*q, *n),
                Generator::Johnson { n, k } => Some(binomial_count(*n, *k)),
                Generator::Halved { n, .. } => checked_pow(2, n.saturating_sub(1)),
                Generator::Product { left, right } => {
                    left.vertex_count()?.checked_mul(right.vertex_count()?)
                }
            },
        }
    }

    pub fn build(&self, budget: usize) -> Result<Graph> {
        match self {
            GraphSpec::Explicit { n_vertices, edges } => {
                check_budget(Some(*n_vertices as u128), budget)?;
                Graph::from_edges(*n_vertices, edges)
            }
            GraphSpec::Generated(g) => match g {
                Generator::Hamming { n, q } => {
                    if *q < 2 {
                        return Err(Error::InvalidParameter(format!("alphabet size {q} < 2")));
                    }
                    if *n < 1 {
                        return Err(Error::InvalidParameter("hamming graph needs n >= 1".into()));
                    }
                    check_budget(self.vertex_count(), budget)?;
                    Ok(build_hamming(*n, *q))
                }
                Generator::Johnson { n, k } => {
                    if k > n {
                        return Err(Error::InvalidParameter(format!("johnson graph k={k} > n={n}")));
                    }
                    if *n > 64 {
                        return Err(Error::InvalidParameter("johnson graph needs n <= 64".into()));
                    }
                    check_budget(self.vertex_count(), budget)?;
                    Ok(build_johnson(*n, *k))
                }
                Generator::Halved { n, parity } => {
                    if *n < 2 {
                        return Err(Error::InvalidParameter("halved cube needs n >= 2".into()));
                    }
                    check_budget(self.vertex_count(), budget)?;
                    Ok(build_halved(*n, *parity))
                }
                Generator::Product { left, right } => {
                    check_budget(self.vertex_count(), budget)?;
                    let l = left.build(budget)?;
                    let r = right.build(budget)?;
                    Ok(direct_product_unchecked(&l, &r))
                }
            },
        }
    }
}

fn build_hamming(n: usize, q: usize) -> Graph {
    let size = q.pow(n as u32);
    let adj = (0..size)
        .map(|v| {
            let word = hamming_word(v, n, q);
            let mut list = Vec::with_capacity(n * (q - 1));
            for (i, &x) in word.iter().enumerate() {
                let place = q.pow((n - 1 - i) as u32);
                let base = v - x * place;
                list.extend((0..q).filter(|&s| s != x).map(|s| base + s * place));
            }
            list
        })
        .collect();
    Graph::from_sorted_adjacency(adj, Labels::Hamming { n, q })
}

fn build_johnson(n: usize, k: usize) -> Graph {
    // supports in lexicographic order
    let mut subsets = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        subsets.push(current.clone());
        let Some(i) = (0..k).rev().find(|&i| current[i] < n - k + i) else {
            break;
        };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
    let mask = |s: &[usize]| s.iter().fold(0u64, |m, &i| m | (1u64 << i));
    let index: HashMap<u64, usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (mask(s), i))
        .collect();
    let adj = subsets
        .iter()
        .map(|s| {
            let m = mask(s);
            let mut list = Vec::with_capacity(k * (n - k));
            for &out in s {
                for inn in (0..n).filter(|&i| m & (1 << i) == 0) {
                    list.push(index[&(m & !(1 << out) | (1 << inn))]);
                }
            }
            list
        })
        .collect();
    Graph::from_sorted_adjacency(adj, Labels::Subsets(subsets))
}

fn build_halved(n: usize, parity: Parity) -> Graph {
    let size = 1usize << (n - 1);
    let adj = (0..size)
        .map(|v| {
            let word = halved_word(v, parity);
            let mut list = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    list.push((word ^ (1 << i) ^ (1 << j)) >> 1);
                }
            }
            list
        })
        .collect();
    Graph::from_sorted_adjacency(adj, Labels::Halved { n, parity })
}

fn direct_product_unchecked(g1: &Graph, g2: &Graph) -> Graph {
    let n2 = g2.n_vertices();
    let mut adj = Vec::with_capacity(g1.n_vertices() * n2);
    for a in 0..g1.n_vertices() {
        for b in 0..n2 {
            let mut list: Vec<usize> = g1.adj[a].iter().map(|&a2| a2 * n2 + b).collect();
            list.extend(g2.adj[b].iter().map(|&b2| a * n2 + b2));
            adj.push(list);
        }
    }
    Graph::from_sorted_adjacency(
        adj,
        Labels::Product {
            left: Box::new(g1.labels.clone()),
            right: Box::new(g2.labels.clone()),
            right_n: n2,
        },
    )
}

/// Words of length `n` over `{0, .., q-1}`, adjacent when they differ in
/// exactly one coordinate.
pub fn hamming_graph(n: usize, q: usize) -> Result<Graph> {
    GraphSpec::hamming(n, q).build(DEFAULT_VERTEX_BUDGET)
}

/// `k`-subsets of an `n`-set, adjacent when the symmetric difference has
/// size two.
pub fn johnson_graph(n: usize, k: usize) -> Result<Graph> {
    GraphSpec::johnson(n, k).build(DEFAULT_VERTEX_BUDGET)
}

/// Binary words of length `n` with the given weight parity, adjacent at
/// Hamming distance two.
pub fn halved_cube(n: usize, parity: Parity) -> Result<Graph> {
    GraphSpec::halved(n, parity).build(DEFAULT_VERTEX_BUDGET)
}

pub fn direct_product(g1: &Graph, g2: &Graph) -> Result<Graph> {
    direct_product_with_budget(g1, g2, DEFAULT_VERTEX_BUDGET)
}

pub fn direct_product_with_budget(g1: &Graph, g2: &Graph, budget: usize) -> Result<Graph> {
    let count = (g1.n_vertices() as u128).checked_mul(g2.n_vertices() as u128);
    check_budget(count, budget)?;
    Ok(direct_product_unchecked(g1, g2))
}

/// Codewords of the binary Hamming code of length `2^r - 1`, as vertex
/// indices of `hamming_graph(2^r - 1, 2)`. Position `i` carries the
/// syndrome column `i + 1`.
pub fn binary_hamming_code(r: usize) -> Vec<usize> {
    let n = (1usize << r) - 1;
    (0..1usize << n)
        .filter(|&v| {
            let word = hamming_word(v, n, 2);
            word.iter()
                .enumerate()
                .filter(|(_, &x)| x == 1)
                .fold(0, |s, (i, _)| s ^ (i + 1))
                == 0
        })
        .collect()
}

/// The Hamming code of length `2^r - 1` with an overall parity bit appended.
pub fn extended_binary_hamming_code(r: usize) -> Vec<usize> {
    let n = (1usize << r) - 1;
    binary_hamming_code(r)
        .into_iter()
        .map(|v| (v << 1) | (v.count_ones() as usize % 2))
        .inspect(|&w| debug_assert!(w < 1 << (n + 1)))
        .collect()
}

/// Vertices of `H(m + k, q)` whose last `k` coordinates are zero: the fiber
/// `H(m, q) x {0}` of `H(m, q) x H(k, q)`.
pub fn subcube_code(m: usize, k: usize, q: usize) -> Vec<usize> {
    let stride = q.pow(k as u32);
    (0..q.pow(m as u32)).map(|a| a * stride).collect()
}

/// Vertices of `H(n, q)` whose coordinates all lie below `p`: the copy of
/// `H(n, p)` inside `H(n, q)`.
pub fn restricted_alphabet_code(n: usize, p: usize, q: usize) -> Vec<usize> {
    (0..p.pow(n as u32))
        .map(|v| hamming_index(&hamming_word(v, n, p), q))
        .collect()
}
