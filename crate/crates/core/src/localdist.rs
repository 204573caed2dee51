//! Distributions over tensor products of perfect structures.
//!
//! For an `R'`-perfect `g'` on `G'` and an `R''`-perfect `g''` on `G''`,
//! `g' ⊗ g''` is `(R' ⊗ I + I ⊗ R'')`-perfect on `G' × G''`. The
//! distribution `h = (g' ⊗ g'')ᵀ f` of an `S`-perfect `f` has rows indexed
//! by pairs `(i', i'')`, flattened as `i' * n'' + i''`. Its rearrangement
//! `h*` has one row per `i'` and columns `(i'', j)` flattened as
//! `i'' * k + j`; it is an `(I ⊗ S - R'' ⊗ I)`-perfect structure over
//! `R'ᵀ`, so when `g'` is a vertex distance coloring of a distance-regular
//! `G'` every row follows from the first.

use serde_json::{json, Value};

use crate::distributions::{reconstruct_from_first_row, rows_from_polynomials};
use crate::drg::{intersection_array, p_polynomials, PPolynomials};
use crate::equitable::{verify_structure, Coloring, PerfectStructure};
use crate::error::{Error, Result};
use crate::graphs::{direct_product, Graph};
use crate::ratmat::{RatMatrix, Rational};

/// `R' ⊗ I + I ⊗ R''`
pub fn tensor_params(r1: &RatMatrix, r2: &RatMatrix) -> Result<RatMatrix> {
    for r in [r1, r2] {
        if !r.is_square() {
            return Err(Error::NotSquare {
                rows: r.rows(),
                cols: r.cols(),
            });
        }
    }
    let left = r1.tensor(&RatMatrix::identity(r2.rows()));
    let right = RatMatrix::identity(r1.rows()).tensor(r2);
    left.try_add(&right)
}

/// Product coloring: `(x', x'')` gets color `c1(x') * k'' + c2(x'')`.
pub fn tensor_coloring(c1: &Coloring, c2: &Coloring) -> Coloring {
    let k2 = c2.n_colors();
    let n2 = c2.n_vertices();
    let colors = (0..c1.n_vertices() * n2)
        .map(|v| c1.color(v / n2) * k2 + c2.color(v % n2))
        .collect();
    Coloring::with_colors(colors, c1.n_colors() * k2).expect("product of surjective colorings")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorStructure {
    pub left: PerfectStructure,
    pub right: PerfectStructure,
    pub product: PerfectStructure,
}

/// Builds `g' ⊗ g''` and verifies it over `G' × G''`.
pub fn tensor_structure(
    g1: &Graph,
    left: &PerfectStructure,
    g2: &Graph,
    right: &PerfectStructure,
) -> Result<TensorStructure> {
    let product_graph = direct_product(g1, g2)?;
    tensor_structure_over(&product_graph, left, right)
}

/// As [`tensor_structure`], with the product graph already built.
pub fn tensor_structure_over(
    product_graph: &Graph,
    left: &PerfectStructure,
    right: &PerfectStructure,
) -> Result<TensorStructure> {
    let values = left.values().tensor(right.values());
    let params = tensor_params(left.params(), right.params())?;
    let product = PerfectStructure::new(product_graph, values, params)?;
    Ok(TensorStructure {
        left: left.clone(),
        right: right.clone(),
        product,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RearrangedDistribution {
    pub n_left: usize,
    pub n_right: usize,
    pub k: usize,
    /// `(n_left * n_right) x k`
    pub h: RatMatrix,
    /// `n_left x (n_right * k)`
    pub h_star: RatMatrix,
}

impl RearrangedDistribution {
    pub fn from_h(h: RatMatrix, n_left: usize, n_right: usize) -> Result<Self> {
        if h.rows() != n_left * n_right {
            return Err(Error::ShapeMismatch(format!(
                "h has {} rows, expected {n_left} * {n_right}",
                h.rows()
            )));
        }
        let k = h.cols();
        let h_star = RatMatrix::from_entries(n_left, n_right * k, h.entries().to_vec())?;
        Ok(RearrangedDistribution {
            n_left,
            n_right,
            k,
            h,
            h_star,
        })
    }

    pub fn from_h_star(h_star: RatMatrix, n_right: usize, k: usize) -> Result<Self> {
        if h_star.cols() != n_right * k {
            return Err(Error::ShapeMismatch(format!(
                "h* has {} columns, expected {n_right} * {k}",
                h_star.cols()
            )));
        }
        let n_left = h_star.rows();
        let h = RatMatrix::from_entries(n_left * n_right, k, h_star.entries().to_vec())?;
        Ok(RearrangedDistribution {
            n_left,
            n_right,
            k,
            h,
            h_star,
        })
    }

    /// `h[(i', i''), j]`
    pub fn entry(&self, i_left: usize, i_right: usize, j: usize) -> &Rational {
        self.h.get(i_left * self.n_right + i_right, j)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n_left": self.n_left,
            "n_right": self.n_right,
            "k": self.k,
            "h": self.h.to_string_rows(),
            "h_star": self.h_star.to_string_rows(),
        })
    }
}

/// `I ⊗ S - R'' ⊗ I`, the parameters of `h*` over `R'ᵀ`.
pub fn h_star_params(r2: &RatMatrix, s: &RatMatrix) -> Result<RatMatrix> {
    for m in [r2, s] {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
    }
    let a = RatMatrix::identity(r2.rows()).tensor(s);
    let b = r2.tensor(&RatMatrix::identity(s.rows()));
    a.try_sub(&b)
}

/// `h = (g' ⊗ g'')ᵀ f`, with both the product-structure equation
/// `(R'ᵀ ⊗ I + I ⊗ R''ᵀ) h = h S` and the rearranged equation
/// `R'ᵀ h* = h* (I ⊗ S - R'' ⊗ I)` checked.
pub fn tensor_distribution(
    ts: &TensorStructure,
    f: &PerfectStructure,
) -> Result<RearrangedDistribution> {
    let h = ts.product.values().transpose_mul(f.values())?;
    let lhs = ts.product.params().transpose().try_mul(&h)?;
    if lhs != h.try_mul(f.params())? {
        return Err(Error::Assertion(
            "(R'^T x I + I x R''^T) h != h S".into(),
        ));
    }
    let out = RearrangedDistribution::from_h(h, ts.left.width(), ts.right.width())?;
    let r1t = ts.left.params().transpose();
    let t = h_star_params(ts.right.params(), f.params())?;
    if !verify_structure(&r1t, &out.h_star, &t)?.holds {
        return Err(Error::Assertion("R'^T h* != h* (I x S - R'' x I)".into()));
    }
    Ok(out)
}

/// All rows of `h*` from `h*_0` when `g'` is the distance coloring of a
/// vertex in the distance-regular `g1`: `h*_i = h*_0 Π_i(I ⊗ S - R'' ⊗ I)`.
pub fn reconstruct_local(
    g1: &Graph,
    r2: &RatMatrix,
    s: &RatMatrix,
    h_star_0: &[Rational],
) -> Result<RatMatrix> {
    let polys = p_polynomials(&intersection_array(g1)?);
    reconstruct_local_with(&polys, r2, s, h_star_0)
}

pub fn reconstruct_local_with(
    polys: &PPolynomials,
    r2: &RatMatrix,
    s: &RatMatrix,
    h_star_0: &[Rational],
) -> Result<RatMatrix> {
    let t = h_star_params(r2, s)?;
    Ok(rows_from_polynomials(polys.polys(), &t, h_star_0)?.into_matrix())
}

/// Same reconstruction for any completely regular `g'` with tridiagonal
/// parameters `r1`, through the general first-row recursion over `R'ᵀ`.
pub fn reconstruct_local_from_code(
    r1: &RatMatrix,
    r2: &RatMatrix,
    s: &RatMatrix,
    h_star_0: &[Rational],
) -> Result<RatMatrix> {
    let t = h_star_params(r2, s)?;
    Ok(reconstruct_from_first_row(&r1.transpose(), &t, h_star_0, r1.rows())?.into_matrix())
}

/// The two local distributions `(h_{0,i'',j})` and `(h_{i',0,j})`.
/// Meaningful when both factor colorings are distance colorings.
pub fn extract_local(h: &RearrangedDistribution) -> (RatMatrix, RatMatrix) {
    let along_right = h.h.row_block(0, h.n_right);
    let mut along_left = RatMatrix::zeros(h.n_left, h.k);
    for i in 0..h.n_left {
        along_left
            .row_mut(i)
            .clone_from_slice(h.h.row(i * h.n_right));
    }
    (along_right, along_left)
}
