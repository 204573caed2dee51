//! Python bindings. Rationals cross the boundary as `fractions.Fraction`;
//! any input whose `str()` is `"p"` or `"p/q"` is accepted.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use eqpart::distributions::{self, Distribution};
use eqpart::drg;
use eqpart::equitable::{self, Coloring, PerfectStructure};
use eqpart::graphs::{self, Graph, GraphSpec, Parity};
use eqpart::localdist;
use eqpart::oracle;
use eqpart::ratmat::{format_rational, parse_rational, RatMatrix, Rational};

fn err(e: eqpart::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_parity(text: &str) -> eqpart::Result<Parity> {
    match text {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        other => Err(eqpart::Error::InvalidParameter(format!(
            "parity must be \"even\" or \"odd\", got {other:?}"
        ))),
    }
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text: String = obj.str()?.extract()?;
    parse_rational(&text).map_err(err)
}

fn row(objs: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<Rational>> {
    objs.iter().map(rational).collect()
}

fn matrix(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<RatMatrix> {
    let rows = rows.into_iter().map(row).collect::<PyResult<Vec<_>>>()?;
    RatMatrix::from_rows(rows).map_err(err)
}

fn fraction<'py>(py: Python<'py>, value: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((format_rational(value),))
}

fn fractions<'py>(py: Python<'py>, values: &[Rational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    values.iter().map(|v| fraction(py, v)).collect()
}

fn to_py<'py>(py: Python<'py>, m: &RatMatrix) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    (0..m.rows()).map(|i| fractions(py, m.row(i))).collect()
}

fn dist<'py>(py: Python<'py>, d: eqpart::Result<Distribution>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    to_py(py, d.map_err(err)?.matrix())
}

#[pyclass(name = "Graph", module = "pyeqpart", frozen)]
pub struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[staticmethod]
    fn hamming(n: usize, q: usize) -> PyResult<Self> {
        Ok(PyGraph {
            inner: graphs::hamming_graph(n, q).map_err(err)?,
        })
    }

    #[staticmethod]
    fn johnson(n: usize, k: usize) -> PyResult<Self> {
        Ok(PyGraph {
            inner: graphs::johnson_graph(n, k).map_err(err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (n, parity = "even"))]
    fn halved(n: usize, parity: &str) -> PyResult<Self> {
        let parity = parse_parity(parity).map_err(err)?;
        Ok(PyGraph {
            inner: graphs::halved_cube(n, parity).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_edges(n_vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let edges: Vec<[usize; 2]> = edges.into_iter().map(|(u, v)| [u, v]).collect();
        Ok(PyGraph {
            inner: Graph::from_edges(n_vertices, &edges).map_err(err)?,
        })
    }

    /// Builds a graph from the JSON graph-file format.
    #[staticmethod]
    #[pyo3(signature = (text, vertex_budget = graphs::DEFAULT_VERTEX_BUDGET))]
    fn from_json(text: &str, vertex_budget: usize) -> PyResult<Self> {
        let spec: GraphSpec =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyGraph {
            inner: spec.build(vertex_budget).map_err(err)?,
        })
    }

    /// Direct product `left x right`; vertex `(a, b)` is `a * right.n_vertices + b`.
    #[staticmethod]
    fn product(left: &PyGraph, right: &PyGraph) -> PyResult<Self> {
        Ok(PyGraph {
            inner: graphs::direct_product(&left.inner, &right.inner).map_err(err)?,
        })
    }

    #[getter]
    fn n_vertices(&self) -> usize {
        self.inner.n_vertices()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().into_iter().map(|[u, v]| (u, v)).collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n_vertices() {
            return Err(err(eqpart::Error::VertexOutOfRange {
                vertex: v,
                n_vertices: self.inner.n_vertices(),
            }));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn distances(&self, code: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self.inner.distances_from_set(&code).map_err(err)?.distances)
    }

    fn diameter(&self) -> PyResult<usize> {
        self.inner.diameter().map_err(err)
    }

    /// `(b, a, c)` of a distance-regular graph.
    fn intersection_array(&self) -> PyResult<(Vec<usize>, Vec<usize>, Vec<usize>)> {
        let ia = drg::intersection_array(&self.inner).map_err(err)?;
        Ok((ia.b, ia.a, ia.c))
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n_vertices={}, edges={})",
            self.inner.n_vertices(),
            self.inner.edge_count()
        )
    }
}

fn coloring(g: &Graph, colors: Vec<usize>) -> PyResult<Coloring> {
    let c = Coloring::new(colors).map_err(err)?;
    if c.n_vertices() != g.n_vertices() {
        return Err(err(eqpart::Error::ShapeMismatch(format!(
            "coloring has {} entries, graph has {} vertices",
            c.n_vertices(),
            g.n_vertices()
        ))));
    }
    Ok(c)
}

#[pyfunction]
fn quotient_matrix<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    colors: Vec<usize>,
) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    let c = coloring(&graph.inner, colors)?;
    to_py(py, &equitable::quotient_matrix(&graph.inner, &c).map_err(err)?)
}

#[pyfunction]
fn distance_coloring(graph: &PyGraph, code: Vec<usize>) -> PyResult<Vec<usize>> {
    Ok(equitable::distance_coloring(&graph.inner, &code)
        .map_err(err)?
        .colors()
        .to_vec())
}

/// `{"rho": covering radius, "R": quotient matrix, "colors": distance coloring}`.
#[pyfunction]
fn check_completely_regular<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    code: Vec<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let crc = equitable::check_completely_regular(&graph.inner, &code).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("rho", crc.covering_radius)?;
    out.set_item("R", to_py(py, &crc.params)?)?;
    out.set_item("colors", crc.coloring.colors().to_vec())?;
    Ok(out)
}

/// `(holds, residual)` for `A f = f S`.
#[pyfunction]
fn verify_structure<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    f: Vec<Vec<Bound<'py, PyAny>>>,
    s: Vec<Vec<Bound<'py, PyAny>>>,
) -> PyResult<(bool, Vec<Vec<Bound<'py, PyAny>>>)> {
    let check = equitable::verify_structure(&graph.inner, &matrix(f)?, &matrix(s)?).map_err(err)?;
    Ok((check.holds, to_py(py, &check.residual)?))
}

#[pyfunction]
fn vertex_distribution<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    s: Vec<Vec<Bound<'py, PyAny>>>,
    color: usize,
) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    dist(py, distributions::vertex_distribution(&graph.inner, &matrix(s)?, color))
}

#[pyfunction]
fn code_distribution<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    code: Vec<usize>,
    s: Vec<Vec<Bound<'py, PyAny>>>,
    f0: Vec<Bound<'py, PyAny>>,
) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    let crc = equitable::check_completely_regular(&graph.inner, &code).map_err(err)?;
    dist(py, distributions::code_distribution(&crc, &matrix(s)?, &row(f0)?))
}

#[pyfunction]
fn lattice_distribution<'py>(
    py: Python<'py>,
    m: usize,
    k: usize,
    q: usize,
    s: Vec<Vec<Bound<'py, PyAny>>>,
    f0: Vec<Bound<'py, PyAny>>,
) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    dist(py, distributions::lattice_distribution(m, k, q, &matrix(s)?, &row(f0)?))
}

/// Fiber `V' x {o}` of `G' x G''` for a `degree`-regular `G'`.
#[pyfunction]
fn fiber_distribution<'py>(
    py: Python<'py>,
    right: &PyGraph,
    degree: usize,
    s: Vec<Vec<Bound<'py, PyAny>>>,
    f0: Vec<Bound<'py, PyAny>>,
) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    dist(py, distributions::fiber_distribution(&right.inner, degree, &matrix(s)?, &row(f0)?))
}

#[pyfunction]
fn subcube_distribution<'py>(
    py: Python<'py>,
    m: usize,
    k: usize,
    q: usize,
    s: Vec<Vec<Bound<'py, PyAny>>>,
    f0: Vec<Bound<'py, PyAny>>,
) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    dist(py, distributions::subcube_distribution(m, k, q, &matrix(s)?, &row(f0)?))
}

#[pyfunction]
fn pcube_distribution<'py>(
    py: Python<'py>,
    n: usize,
    p: usize,
    q: usize,
    s: Vec<Vec<Bound<'py, PyAny>>>,
    f0: Vec<Bound<'py, PyAny>>,
) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    dist(py, distributions::pcube_distribution(n, p, q, &matrix(s)?, &row(f0)?))
}

/// Brute force: row `w` sums the rows of `f` at distance `w` from `code`.
#[pyfunction]
fn brute_distribution<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    code: Vec<usize>,
    f: Vec<Vec<Bound<'py, PyAny>>>,
) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    dist(py, oracle::brute_distribution(&graph.inner, &code, &matrix(f)?))
}

/// Coefficients of the Krawtchouk polynomial, constant term first.
#[pyfunction]
fn krawtchouk<'py>(
    py: Python<'py>,
    w: usize,
    n: usize,
    q: Bound<'py, PyAny>,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let p = drg::krawtchouk(w, n, &rational(&q)?).map_err(err)?;
    fractions(py, p.coeffs())
}

#[pyfunction]
fn tensor<'py>(
    py: Python<'py>,
    a: Vec<Vec<Bound<'py, PyAny>>>,
    b: Vec<Vec<Bound<'py, PyAny>>>,
) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    to_py(py, &matrix(a)?.tensor(&matrix(b)?))
}

/// `R' x I + I x R''`.
#[pyfunction]
fn tensor_params<'py>(
    py: Python<'py>,
    r1: Vec<Vec<Bound<'py, PyAny>>>,
    r2: Vec<Vec<Bound<'py, PyAny>>>,
) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    to_py(py, &localdist::tensor_params(&matrix(r1)?, &matrix(r2)?).map_err(err)?)
}

fn factor_structures(
    left: &PyGraph,
    left_code: &[usize],
    right: &PyGraph,
    right_code: &[usize],
) -> PyResult<(equitable::CompletelyRegularCode, equitable::CompletelyRegularCode)> {
    Ok((
        equitable::check_completely_regular(&left.inner, left_code).map_err(err)?,
        equitable::check_completely_regular(&right.inner, right_code).map_err(err)?,
    ))
}

/// `{"h": .., "h_star": ..}` for a perfect coloring of `left x right`.
#[pyfunction]
fn local_distribution<'py>(
    py: Python<'py>,
    left: &PyGraph,
    left_code: Vec<usize>,
    right: &PyGraph,
    right_code: Vec<usize>,
    colors: Vec<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let (lc, rc) = factor_structures(left, &left_code, right, &right_code)?;
    let product = graphs::direct_product(&left.inner, &right.inner).map_err(err)?;
    let f = PerfectStructure::from_coloring(&product, &coloring(&product, colors)?).map_err(err)?;
    let ts = localdist::tensor_structure_over(&product, &lc.structure(), &rc.structure())
        .map_err(err)?;
    let r = localdist::tensor_distribution(&ts, &f).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("h", to_py(py, &r.h)?)?;
    out.set_item("h_star", to_py(py, &r.h_star)?)?;
    Ok(out)
}

/// All rows of `h*` from its first row.
#[pyfunction]
fn reconstruct_local<'py>(
    py: Python<'py>,
    left: &PyGraph,
    left_code: Vec<usize>,
    right: &PyGraph,
    right_code: Vec<usize>,
    s: Vec<Vec<Bound<'py, PyAny>>>,
    h0: Vec<Bound<'py, PyAny>>,
) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    let (lc, rc) = factor_structures(left, &left_code, right, &right_code)?;
    let h_star =
        localdist::reconstruct_local_from_code(&lc.params, &rc.params, &matrix(s)?, &row(h0)?)
            .map_err(err)?;
    to_py(py, &h_star)
}

#[pyfunction]
fn binary_hamming_code(r: usize) -> Vec<usize> {
    graphs::binary_hamming_code(r)
}

#[pymodule]
fn pyeqpart(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(quotient_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(distance_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(check_completely_regular, m)?)?;
    m.add_function(wrap_pyfunction!(verify_structure, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(code_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(fiber_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(subcube_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(pcube_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(brute_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(krawtchouk, m)?)?;
    m.add_function(wrap_pyfunction!(tensor, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_params, m)?)?;
    m.add_function(wrap_pyfunction!(local_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct_local, m)?)?;
    m.add_function(wrap_pyfunction!(binary_hamming_code, m)?)?;
    Ok(())
}
