//! Perfect colorings (equitable partitions) and perfect structures.
//!
//! A coloring stores one color index per vertex; indicator rows `e_i` are
//! only materialised when a dense `N x k` matrix is needed. A perfect
//! structure is any pair `(f, S)` with `A f = f S` over a graph or an
//! explicit square matrix.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graphs::{hamming_index, hamming_word, Graph, VertexFunction, DEFAULT_VERTEX_BUDGET};
use crate::ratmat::{int, RatMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
    n_colors: usize,
}

impl Coloring {
    /// Colors must be exactly `0..k` for some `k`; every class nonempty.
    pub fn new(colors: Vec<usize>) -> Result<Coloring> {
        let n_colors = colors.iter().max().map_or(0, |m| m + 1);
        Self::with_colors(colors, n_colors)
    }

    pub fn with_colors(colors: Vec<usize>, n_colors: usize) -> Result<Coloring> {
        let mut used = vec![false; n_colors];
        for &c in &colors {
            if c >= n_colors {
                return Err(Error::InvalidParameter(format!(
                    "color {c} out of range 0..{n_colors}"
                )));
            }
            used[c] = true;
        }
        if let Some(color) = used.iter().position(|u| !u) {
            return Err(Error::EmptyColorClass { color });
        }
        Ok(Coloring { colors, n_colors })
    }

    /// Every vertex gets color 0.
    pub fn single(n_vertices: usize) -> Coloring {
        Coloring {
            colors: vec![0; n_vertices],
            n_colors: usize::from(n_vertices > 0),
        }
    }

    /// Every vertex gets its own color.
    pub fn discrete(n_vertices: usize) -> Coloring {
        Coloring {
            colors: (0..n_vertices).collect(),
            n_colors: n_vertices,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.colors.len()
    }

    pub fn n_colors(&self) -> usize {
        self.n_colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.n_colors];
        for &c in &self.colors {
            sizes[c] += 1;
        }
        sizes
    }

    pub fn class(&self, color: usize) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&v| self.colors[v] == color)
            .collect()
    }

    /// The `N x k` matrix whose row `v` is `e_{color(v)}`.
    pub fn indicator(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.colors.len(), self.n_colors);
        for (v, &c) in self.colors.iter().enumerate() {
            m.set(v, c, Rational::one());
        }
        m
    }
}

impl VertexFunction for Coloring {
    fn n_vertices(&self) -> usize {
        self.colors.len()
    }

    fn width(&self) -> usize {
        self.n_colors
    }

    fn add_value(&self, v: usize, acc: &mut [Rational]) {
        acc[self.colors[v]] += Rational::one();
    }
}

/// The square matrix a structure lives over.
#[derive(Clone, Copy, Debug)]
pub enum Operator<'a> {
    Graph(&'a Graph),
    Matrix(&'a RatMatrix),
}

impl<'a> From<&'a Graph> for Operator<'a> {
    fn from(g: &'a Graph) -> Self {
        Operator::Graph(g)
    }
}

impl<'a> From<&'a RatMatrix> for Operator<'a> {
    fn from(m: &'a RatMatrix) -> Self {
        Operator::Matrix(m)
    }
}

impl Operator<'_> {
    pub fn size(&self) -> usize {
        match self {
            Operator::Graph(g) => g.n_vertices(),
            Operator::Matrix(m) => m.rows(),
        }
    }

    /// `A f`
    pub fn apply(&self, f: &RatMatrix) -> Result<RatMatrix> {
        match self {
            Operator::Matrix(m) => {
                if !m.is_square() {
                    return Err(Error::NotSquare {
                        rows: m.rows(),
                        cols: m.cols(),
                    });
                }
                m.try_mul(f)
            }
            Operator::Graph(g) => {
                if f.rows() != g.n_vertices() {
                    return Err(Error::ShapeMismatch(format!(
                        "structure has {} rows, graph has {} vertices",
                        f.rows(),
                        g.n_vertices()
                    )));
                }
                let mut out = RatMatrix::zeros(f.rows(), f.cols());
                for v in 0..g.n_vertices() {
                    let row = out.row_mut(v);
                    for &u in g.neighbors(v) {
                        f.add_value(u, row);
                    }
                }
                Ok(out)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub holds: bool,
    /// `A f - f S`
    pub residual: RatMatrix,
}

/// Checks `A f = f S` exactly.
pub fn verify_structure<'a>(
    a: impl Into<Operator<'a>>,
    f: &RatMatrix,
    s: &RatMatrix,
) -> Result<Verification> {
    let a = a.into();
    if f.rows() != a.size() || s.rows() != f.cols() || !s.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "operator {n}x{n}, f {}x{}, S {}x{}",
            f.rows(),
            f.cols(),
            s.rows(),
            s.cols(),
            n = a.size()
        )));
    }
    let residual = a.apply(f)?.try_sub(&f.try_mul(s)?)?;
    Ok(Verification {
        holds: residual.is_zero(),
        residual,
    })
}

/// A matrix `f` together with parameters `S` such that `A f = f S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectStructure {
    f: RatMatrix,
    s: RatMatrix,
}

impl PerfectStructure {
    pub fn new<'a>(a: impl Into<Operator<'a>>, f: RatMatrix, s: RatMatrix) -> Result<Self> {
        let check = verify_structure(a, &f, &s)?;
        if !check.holds {
            let row = check.residual.first_nonzero_row().unwrap_or(0);
            return Err(Error::NotPerfect {
                row,
                residual: check.residual,
            });
        }
        Ok(PerfectStructure { f, s })
    }

    /// Indicator matrix of a perfect coloring with its quotient matrix.
    pub fn from_coloring(g: &Graph, c: &Coloring) -> Result<Self> {
        let s = quotient_matrix(g, c)?;
        Ok(PerfectStructure {
            f: c.indicator(),
            s,
        })
    }

    /// Skips verification. Callers must already know `A f = f S`.
    pub(crate) fn trusted(f: RatMatrix, s: RatMatrix) -> Self {
        PerfectStructure { f, s }
    }

    pub fn values(&self) -> &RatMatrix {
        &self.f
    }

    pub fn params(&self) -> &RatMatrix {
        &self.s
    }

    pub fn width(&self) -> usize {
        self.f.cols()
    }
}

impl VertexFunction for PerfectStructure {
    fn n_vertices(&self) -> usize {
        self.f.rows()
    }

    fn width(&self) -> usize {
        self.f.cols()
    }

    fn add_value(&self, v: usize, acc: &mut [Rational]) {
        self.f.add_value(v, acc)
    }
}

/// Quotient matrix `S` of a perfect coloring: `S_ij` is the number of
/// color-`j` neighbors of any color-`i` vertex. The witness of a failure is
/// the first vertex (in index order) whose neighbor profile differs from
/// the first vertex of its class.
pub fn quotient_matrix(g: &Graph, c: &Coloring) -> Result<RatMatrix> {
    if c.n_vertices() != g.n_vertices() {
        return Err(Error::ShapeMismatch(format!(
            "coloring has {} vertices, graph has {}",
            c.n_vertices(),
            g.n_vertices()
        )));
    }
    let k = c.n_colors();
    let mut profiles: Vec<Option<(usize, Vec<usize>)>> = vec![None; k];
    let mut profile = vec![0usize; k];
    for v in 0..g.n_vertices() {
        profile.iter_mut().for_each(|x| *x = 0);
        for &u in g.neighbors(v) {
            profile[c.color(u)] += 1;
        }
        let color = c.color(v);
        match &profiles[color] {
            None => profiles[color] = Some((v, profile.clone())),
            Some((first, expected)) => {
                if let Some(color_seen) = (0..k).find(|&j| expected[j] != profile[j]) {
                    return Err(Error::NotEquitable {
                        first: *first,
                        second: v,
                        color,
                        color_seen,
                    });
                }
            }
        }
    }
    let rows = profiles
        .into_iter()
        .map(|p| {
            p.expect("color classes are nonempty")
                .1
                .into_iter()
                .map(|x| int(x as i64))
                .collect()
        })
        .collect();
    RatMatrix::from_rows(rows)
}

/// Colors each vertex by its distance to `code`.
pub fn distance_coloring(g: &Graph, code: &[usize]) -> Result<Coloring> {
    let profile = g.distances_from_set(code)?;
    Ok(Coloring {
        colors: profile.distances,
        n_colors: profile.covering_radius + 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletelyRegularCode {
    pub code: Vec<usize>,
    pub covering_radius: usize,
    /// Tridiagonal `(ρ+1) x (ρ+1)` quotient matrix of the distance coloring.
    pub params: RatMatrix,
    pub coloring: Coloring,
}

impl CompletelyRegularCode {
    pub fn structure(&self) -> PerfectStructure {
        PerfectStructure::trusted(self.coloring.indicator(), self.params.clone())
    }
}

/// Succeeds iff the distance coloring of `code` is perfect.
pub fn check_completely_regular(g: &Graph, code: &[usize]) -> Result<CompletelyRegularCode> {
    let coloring = distance_coloring(g, code)?;
    let params = quotient_matrix(g, &coloring)?;
    let k = params.rows();
    for i in 0..k {
        for j in 0..k {
            if i.abs_diff(j) > 1 && !params.get(i, j).is_zero() {
                return Err(Error::NotTridiagonal { row: i, col: j });
            }
        }
        if i + 1 < k && params.get(i, i + 1).is_zero() {
            return Err(Error::Assertion(format!(
                "distance class {} has no neighbors in class {}",
                i,
                i + 1
            )));
        }
    }
    let mut code = code.to_vec();
    code.sort_unstable();
    code.dedup();
    Ok(CompletelyRegularCode {
        code,
        covering_radius: k - 1,
        params,
        coloring,
    })
}

/// `g̃(x_1, .., x_m) = x_1 + .. + x_m mod q` for a vertex of `H(mk, q)`,
/// returned as a vertex index of `H(k, q)`.
pub fn lattice_map(vertex: usize, m: usize, k: usize, q: usize) -> usize {
    let word = hamming_word(vertex, m * k, q);
    let mut sum = vec![0usize; k];
    for block in word.chunks(k) {
        for (s, x) in sum.iter_mut().zip(block) {
            *s = (*s + x) % q;
        }
    }
    hamming_index(&sum, q)
}

/// The coloring `x ↦ g̃(x)` of `H(mk, q)` with `q^k` colors. Its quotient
/// matrix is `m` times the adjacency matrix of `H(k, q)`.
pub fn lattice_coloring(m: usize, k: usize, q: usize) -> Result<Coloring> {
    if m == 0 || k == 0 || q < 2 {
        return Err(Error::InvalidParameter(format!(
            "lattice coloring needs m, k >= 1 and q >= 2 (got m={m}, k={k}, q={q})"
        )));
    }
    let size = (q as u128).checked_pow((m * k) as u32);
    match size {
        Some(s) if s <= DEFAULT_VERTEX_BUDGET as u128 => {}
        _ => {
            return Err(Error::VertexBudget {
                requested: size.unwrap_or(u128::MAX),
                budget: DEFAULT_VERTEX_BUDGET,
            })
        }
    }
    let colors = (0..size.unwrap() as usize)
        .map(|v| lattice_map(v, m, k, q))
        .collect();
    Coloring::with_colors(colors, q.pow(k as u32))
}

/// Colors `(x', x'')` of `g1 × g2` by `x''`. For `g1` regular of degree
/// `d` the quotient matrix is `A'' + d I`.
pub fn fiber_coloring(g1: &Graph, g2: &Graph) -> Result<Coloring> {
    g1.regular_degree()?;
    let n2 = g2.n_vertices();
    let colors = (0..g1.n_vertices() * n2).map(|v| v % n2).collect();
    Coloring::with_colors(colors, n2)
}

/// Colors `(x', x'')` of `g1 × g2` by `x'`; the mirror of [`fiber_coloring`].
pub fn base_coloring(g1: &Graph, g2: &Graph) -> Result<Coloring> {
    g2.regular_degree()?;
    let n2 = g2.n_vertices();
    let colors = (0..g1.n_vertices() * n2).map(|v| v / n2).collect();
    Coloring::with_colors(colors, g1.n_vertices())
}
