//! Distributions of perfect structures and their reconstruction from a
//! single row.
//!
//! For a completely regular code `C` with tridiagonal parameters `R` and an
//! `S`-perfect structure `f`, the weight distribution `h = gᵀ f` satisfies
//! `Rᵀ h = h S`. Because `Rᵀ` is lower Hessenberg with a nonvanishing
//! superdiagonal, `h` is fixed by its first row `f_0`, the sum of `f` over
//! `C`. The closed-form families below all reduce to this with a known
//! polynomial sequence `Π_w` and a shifted or scaled `S`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::drg::{intersection_array, krawtchouk_p_polynomials, p_polynomials, PPolynomials};
use crate::equitable::{CompletelyRegularCode, PerfectStructure};
use crate::error::{Error, Result};
use crate::graphs::{Graph, VertexFunction};
use crate::ratmat::{int, RatMatrix, Rational, Poly};

/// A matrix of rows indexed by distance (or by the colors of `g`) and
/// columns indexed by the colors of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution(RatMatrix);

impl Distribution {
    pub fn new(rows: RatMatrix) -> Self {
        Distribution(rows)
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> RatMatrix {
        self.0
    }

    pub fn n_rows(&self) -> usize {
        self.0.rows()
    }

    pub fn row(&self, w: usize) -> &[Rational] {
        self.0.row(w)
    }

    pub fn column_sums(&self) -> Vec<Rational> {
        (0..self.0.cols())
            .map(|j| (0..self.0.rows()).map(|i| self.0.get(i, j)).sum())
            .collect()
    }

    pub fn total(&self) -> Rational {
        self.0.entries().iter().sum()
    }

    /// `{"rows": [["p/q", ..], ..]}`
    pub fn to_json(&self) -> Value {
        json!({ "rows": self.0.to_string_rows() })
    }
}

/// Sum of `f` over a vertex set; this is the `f_0` every reconstruction
/// starts from.
pub fn sum_over_set(f: &dyn VertexFunction, set: &[usize]) -> Result<Vec<Rational>> {
    let mut acc = vec![Rational::zero(); f.width()];
    for &v in set {
        if v >= f.n_vertices() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n_vertices: f.n_vertices(),
            });
        }
        f.add_value(v, &mut acc);
    }
    Ok(acc)
}

/// `gᵀ f` for an `R`-perfect `g` and an `S`-perfect `f` over the same
/// symmetric operator. Fails if `Rᵀ (gᵀ f) = (gᵀ f) S` does not hold, which
/// can only happen for inconsistent inputs.
pub fn distribution(g: &PerfectStructure, f: &PerfectStructure) -> Result<Distribution> {
    let h = g.values().transpose_mul(f.values())?;
    let lhs = g.params().transpose().try_mul(&h)?;
    let rhs = h.try_mul(f.params())?;
    if lhs != rhs {
        return Err(Error::Assertion(
            "R^T (g^T f) != (g^T f) S; inputs are not perfect over a common symmetric matrix"
                .into(),
        ));
    }
    Ok(Distribution(h))
}

fn check_hessenberg(b: &RatMatrix, n_rows: usize) -> Result<()> {
    if !b.is_square() {
        return Err(Error::NotSquare {
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    if n_rows == 0 || n_rows > b.rows() {
        return Err(Error::InvalidParameter(format!(
            "cannot reconstruct {n_rows} rows from a {}x{} matrix",
            b.rows(),
            b.cols()
        )));
    }
    for i in 0..n_rows.saturating_sub(1) {
        if b.get(i, i + 1).is_zero() {
            return Err(Error::PatternViolation {
                row: i,
                col: i + 1,
                expected: "nonzero",
            });
        }
        for j in i + 2..b.cols() {
            if !b.get(i, j).is_zero() {
                return Err(Error::PatternViolation {
                    row: i,
                    col: j,
                    expected: "zero",
                });
            }
        }
    }
    Ok(())
}

fn check_row(s: &RatMatrix, h0: &[Rational]) -> Result<()> {
    if !s.is_square() {
        return Err(Error::NotSquare {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    if h0.len() != s.rows() {
        return Err(Error::ShapeMismatch(format!(
            "first row has length {}, S is {}x{}",
            h0.len(),
            s.rows(),
            s.cols()
        )));
    }
    Ok(())
}

/// `Π_0 = 1`, `Π_i = (x Π_{i-1} - Σ_{j<i} B_{i-1,j} Π_j) / B_{i-1,i}`.
pub fn hessenberg_polynomials(b: &RatMatrix, n_rows: usize) -> Result<Vec<Poly>> {
    check_hessenberg(b, n_rows)?;
    let mut polys = vec![Poly::one()];
    for i in 1..n_rows {
        let mut next = &Poly::x() * &polys[i - 1];
        for (j, p) in polys.iter().enumerate() {
            let coef = b.get(i - 1, j);
            if !coef.is_zero() {
                next = &next - &p.scale(coef);
            }
        }
        polys.push(next.scale(&b.get(i - 1, i).recip()));
    }
    Ok(polys)
}

/// Row by row: `h_i = (h_{i-1} S - Σ_{j<i} B_{i-1,j} h_j) / B_{i-1,i}`.
pub fn reconstruct_by_recursion(
    b: &RatMatrix,
    s: &RatMatrix,
    h0: &[Rational],
    n_rows: usize,
) -> Result<Distribution> {
    check_hessenberg(b, n_rows)?;
    check_row(s, h0)?;
    let mut h = RatMatrix::zeros(n_rows, s.cols());
    h.row_mut(0).clone_from_slice(h0);
    for i in 1..n_rows {
        let mut next = RatMatrix::row_vector(h.row(i - 1).to_vec()).try_mul(s)?;
        for j in 0..i {
            let coef = b.get(i - 1, j);
            if coef.is_zero() {
                continue;
            }
            for (x, y) in next.row_mut(0).iter_mut().zip(h.row(j)) {
                *x -= coef * y;
            }
        }
        let pivot = b.get(i - 1, i).recip();
        for (x, y) in h.row_mut(i).iter_mut().zip(next.row(0)) {
            *x = y * &pivot;
        }
    }
    Ok(Distribution(h))
}

/// `h_i = h_0 Π_i(S)` with the polynomials of [`hessenberg_polynomials`].
pub fn reconstruct_by_polynomials(
    b: &RatMatrix,
    s: &RatMatrix,
    h0: &[Rational],
    n_rows: usize,
) -> Result<Distribution> {
    check_row(s, h0)?;
    let polys = hessenberg_polynomials(b, n_rows)?;
    rows_from_polynomials(&polys, s, h0)
}

/// Rebuilds an `S`-perfect structure over `B` from its first row. Both the
/// row recursion and the polynomial form are evaluated and must agree.
pub fn reconstruct_from_first_row(
    b: &RatMatrix,
    s: &RatMatrix,
    h0: &[Rational],
    n_rows: usize,
) -> Result<Distribution> {
    let by_rows = reconstruct_by_recursion(b, s, h0, n_rows)?;
    let by_polys = reconstruct_by_polynomials(b, s, h0, n_rows)?;
    if by_rows != by_polys {
        return Err(Error::Assertion(
            "row recursion and polynomial form disagree".into(),
        ));
    }
    Ok(by_rows)
}

/// Row `w` is `h0 · Π_w(m)`.
pub fn rows_from_polynomials(polys: &[Poly], m: &RatMatrix, h0: &[Rational]) -> Result<Distribution> {
    check_row(m, h0)?;
    let start = RatMatrix::row_vector(h0.to_vec());
    let mut out = RatMatrix::zeros(polys.len(), m.cols());
    for (w, p) in polys.iter().enumerate() {
        let row = start.try_mul(&p.eval_matrix(m)?)?;
        out.row_mut(w).clone_from_slice(row.row(0));
    }
    Ok(Distribution(out))
}

/// Weight distribution with respect to a completely regular code, from the
/// sum `f0` of `f` over the code.
pub fn code_distribution(
    code: &CompletelyRegularCode,
    s: &RatMatrix,
    f0: &[Rational],
) -> Result<Distribution> {
    reconstruct_from_first_row(
        &code.params.transpose(),
        s,
        f0,
        code.covering_radius + 1,
    )
}

/// Distribution of an `S`-perfect coloring around any vertex of color `j`
/// in a distance-regular graph: row `w` is `e_j Π_w(S)`.
pub fn vertex_distribution(g: &Graph, s: &RatMatrix, j: usize) -> Result<Distribution> {
    let polys = p_polynomials(&intersection_array(g)?);
    vertex_distribution_with(&polys, s, j)
}

pub fn vertex_distribution_with(polys: &PPolynomials, s: &RatMatrix, j: usize) -> Result<Distribution> {
    if j >= s.rows() {
        return Err(Error::InvalidParameter(format!(
            "color {j} out of range for a {}x{} quotient matrix",
            s.rows(),
            s.cols()
        )));
    }
    let mut e = vec![Rational::zero(); s.rows()];
    e[j] = Rational::one();
    rows_from_polynomials(polys.polys(), s, &e)
}

fn shifted(s: &RatMatrix, shift: &Rational) -> Result<RatMatrix> {
    if !s.is_square() {
        return Err(Error::NotSquare {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    s.try_sub(&RatMatrix::identity(s.rows()).scale(shift))
}

/// Distribution of an `S`-perfect structure on `H(mk, q)` with respect to
/// the zero set of `x ↦ x_1 + .. + x_m mod q`: row `w` is
/// `f0 · Π_w(S / m)` with the P-polynomials of `H(k, q)`, `w = 0..=k`.
pub fn lattice_distribution(
    m: usize,
    k: usize,
    q: usize,
    s: &RatMatrix,
    f0: &[Rational],
) -> Result<Distribution> {
    if m == 0 || k == 0 || q < 2 {
        return Err(Error::InvalidParameter(format!(
            "lattice distribution needs m, k >= 1 and q >= 2 (got m={m}, k={k}, q={q})"
        )));
    }
    let polys = krawtchouk_p_polynomials(k, &int(q as i64))?;
    let arg = s.scale(&Rational::new(BigInt::one(), BigInt::from(m)));
    rows_from_polynomials(polys.polys(), &arg, f0)
}

/// Distribution of an `S`-perfect structure on `G' × G''` with respect to a
/// fiber `V' × {o}`, where `G'` is `d`-regular and `G''` distance-regular:
/// row `w` is `f0 · Π_w(S - dI)` with the P-polynomials of `G''`.
pub fn fiber_distribution(
    g2: &Graph,
    d: usize,
    s: &RatMatrix,
    f0: &[Rational],
) -> Result<Distribution> {
    let polys = p_polynomials(&intersection_array(g2)?);
    fiber_distribution_with(&polys, d, s, f0)
}

pub fn fiber_distribution_with(
    polys: &PPolynomials,
    d: usize,
    s: &RatMatrix,
    f0: &[Rational],
) -> Result<Distribution> {
    let arg = shifted(s, &int(d as i64))?;
    rows_from_polynomials(polys.polys(), &arg, f0)
}

/// Subcube specialisation of [`fiber_distribution`]: an `m`-dimensional
/// subcube of `H(m + k, q)`. Row `w` is `f0 · Π_w(S - (q-1) m I)` with the
/// Krawtchouk P-polynomials of `H(k, q)`, `w = 0..=k`.
pub fn subcube_distribution(
    m: usize,
    k: usize,
    q: usize,
    s: &RatMatrix,
    f0: &[Rational],
) -> Result<Distribution> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("alphabet size {q} < 2")));
    }
    let polys = krawtchouk_p_polynomials(k, &int(q as i64))?;
    fiber_distribution_with(&polys, (q - 1) * m, s, f0)
}

/// Distribution of an `S`-perfect structure on `H(n, q)` with respect to
/// the copy of `H(n, p)` on the alphabet `{0, .., p-1}`:
/// row `w` is `f0 · Π_w((S - (p-1) n I) / p)`, `w = 0..=n`, with
/// Krawtchouk polynomials at the rational alphabet size `q / p`.
pub fn pcube_distribution(
    n: usize,
    p: usize,
    q: usize,
    s: &RatMatrix,
    f0: &[Rational],
) -> Result<Distribution> {
    if p == 0 || p >= q {
        return Err(Error::InvalidParameter(format!(
            "subcube order must satisfy 1 <= p < q (got p={p}, q={q})"
        )));
    }
    let ratio = Rational::new(BigInt::from(q), BigInt::from(p));
    let polys = krawtchouk_p_polynomials(n, &ratio)?;
    let arg = shifted(s, &int(((p - 1) * n) as i64))?
        .scale(&Rational::new(BigInt::one(), BigInt::from(p)));
    rows_from_polynomials(polys.polys(), &arg, f0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equitable::{
        check_completely_regular, distance_coloring, lattice_coloring, quotient_matrix, Coloring,
    };
    use crate::graphs::{
        binary_hamming_code, direct_product, hamming_graph, restricted_alphabet_code,
        subcube_code,
    };
    use crate::oracle::brute_distribution;

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn self_distributions() {
        let k2 = hamming_graph(1, 2).unwrap();
        let one = PerfectStructure::from_coloring(&k2, &Coloring::single(2)).unwrap();
        assert_eq!(
            distribution(&one, &one).unwrap().matrix(),
            &RatMatrix::from_ints(&[[2]])
        );

        let h = hamming_graph(2, 3).unwrap();
        let c = distance_coloring(&h, &[0]).unwrap();
        let g = PerfectStructure::from_coloring(&h, &c).unwrap();
        assert_eq!(
            distribution(&g, &g).unwrap().matrix(),
            &RatMatrix::from_ints(&[[1, 0, 0], [0, 4, 0], [0, 0, 4]])
        );

        let h7 = hamming_graph(7, 2).unwrap();
        let crc = check_completely_regular(&h7, &binary_hamming_code(3)).unwrap();
        let g = crc.structure();
        assert_eq!(
            distribution(&g, &g).unwrap().matrix(),
            &RatMatrix::from_ints(&[[16, 0], [0, 112]])
        );
    }

    #[test]
    fn distribution_rejects_inconsistent_params() {
        let h = hamming_graph(2, 2).unwrap();
        let c = Coloring::single(4);
        let good = PerfectStructure::from_coloring(&h, &c).unwrap();
        let bad = PerfectStructure::trusted(c.indicator(), RatMatrix::from_ints(&[[3]]));
        assert!(matches!(distribution(&good, &bad), Err(Error::Assertion(_))));
    }

    #[test]
    fn reconstruction_examples() {
        let d = reconstruct_from_first_row(
            &RatMatrix::from_ints(&[[0, 1], [1, 0]]),
            &RatMatrix::from_ints(&[[1]]),
            &ints(&[1]),
            2,
        )
        .unwrap();
        assert_eq!(d.matrix(), &RatMatrix::from_ints(&[[1], [1]]));

        let r = RatMatrix::from_ints(&[[0, 4, 0], [1, 1, 2], [0, 2, 2]]);
        let d = reconstruct_from_first_row(&r.transpose(), &r, &ints(&[1, 0, 0]), 3).unwrap();
        assert_eq!(
            d.matrix(),
            &RatMatrix::from_ints(&[[1, 0, 0], [0, 4, 0], [0, 0, 4]])
        );

        let r = RatMatrix::from_ints(&[[0, 7], [1, 6]]);
        let d = reconstruct_from_first_row(
            &r.transpose(),
            &RatMatrix::from_ints(&[[-1]]),
            &ints(&[112]),
            2,
        )
        .unwrap();
        assert_eq!(d.matrix(), &RatMatrix::from_ints(&[[112], [-112]]));
    }

    #[test]
    fn reconstruction_pattern_errors() {
        let s = RatMatrix::from_ints(&[[1]]);
        let zero_super = RatMatrix::from_ints(&[[1, 0], [1, 0]]);
        assert!(matches!(
            reconstruct_from_first_row(&zero_super, &s, &ints(&[1]), 2),
            Err(Error::PatternViolation { expected: "nonzero", .. })
        ));
        let full = RatMatrix::from_ints(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]]);
        assert!(matches!(
            reconstruct_from_first_row(&full, &s, &ints(&[1]), 3),
            Err(Error::PatternViolation { expected: "zero", .. })
        ));
        assert!(reconstruct_from_first_row(&zero_super, &s, &ints(&[1, 2]), 1).is_err());
        assert!(reconstruct_from_first_row(&zero_super, &s, &ints(&[1]), 3).is_err());
    }

    #[test]
    fn hessenberg_polynomials_of_drg_are_p_polynomials() {
        let g = hamming_graph(4, 3).unwrap();
        let ia = intersection_array(&g).unwrap();
        let polys = hessenberg_polynomials(&ia.quotient_matrix().transpose(), ia.diameter + 1)
            .unwrap();
        assert_eq!(polys, p_polynomials(&ia).polys());
    }

    #[test]
    fn vertex_distributions() {
        let h = hamming_graph(2, 3).unwrap();
        let s = RatMatrix::from_ints(&[[0, 4, 0], [1, 1, 2], [0, 2, 2]]);
        let d = vertex_distribution(&h, &s, 0).unwrap();
        assert_eq!(
            d.matrix(),
            &RatMatrix::from_ints(&[[1, 0, 0], [0, 4, 0], [0, 0, 4]])
        );
        assert!(vertex_distribution(&h, &s, 3).is_err());

        let h7 = hamming_graph(7, 2).unwrap();
        let s = RatMatrix::from_ints(&[[0, 7], [1, 6]]);
        let d = vertex_distribution(&h7, &s, 0).unwrap();
        let codewords: Vec<Rational> = (0..8).map(|w| d.row(w)[0].clone()).collect();
        assert_eq!(codewords, ints(&[1, 0, 0, 7, 7, 0, 0, 1]));
        let others: Vec<Rational> = (0..8).map(|w| d.row(w)[1].clone()).collect();
        assert_eq!(others, ints(&[0, 7, 21, 28, 28, 21, 7, 0]));

        let code = binary_hamming_code(3);
        let f = check_completely_regular(&h7, &code).unwrap().coloring;
        for j in 0..2 {
            let v = f.class(j)[0];
            assert_eq!(
                vertex_distribution(&h7, &s, j).unwrap(),
                brute_distribution(&h7, &[v], &f).unwrap()
            );
        }
    }

    #[test]
    fn code_distribution_matches_oracle() {
        let h7 = hamming_graph(7, 2).unwrap();
        let code = binary_hamming_code(3);
        let crc = check_completely_regular(&h7, &code).unwrap();
        let f = distance_coloring(&h7, &[0b1100000]).unwrap();
        let s = quotient_matrix(&h7, &f).unwrap();
        let f0 = sum_over_set(&f, &crc.code).unwrap();
        assert_eq!(
            code_distribution(&crc, &s, &f0).unwrap(),
            brute_distribution(&h7, &code, &f).unwrap()
        );
    }

    #[test]
    fn lattice_examples() {
        let d = lattice_distribution(2, 1, 2, &RatMatrix::from_ints(&[[2]]), &ints(&[2])).unwrap();
        assert_eq!(d.matrix(), &RatMatrix::from_ints(&[[2], [2]]));
        let d = lattice_distribution(2, 2, 2, &RatMatrix::from_ints(&[[4]]), &ints(&[4])).unwrap();
        assert_eq!(d.matrix(), &RatMatrix::from_ints(&[[4], [8], [4]]));
        assert_eq!(d.row(0), &ints(&[4])[..]);
        assert!(lattice_distribution(0, 2, 2, &RatMatrix::from_ints(&[[4]]), &ints(&[4])).is_err());

        let g = hamming_graph(4, 2).unwrap();
        let zero_class = lattice_coloring(2, 2, 2).unwrap().class(0);
        assert_eq!(
            brute_distribution(&g, &zero_class, &Coloring::single(16)).unwrap(),
            d
        );
    }

    #[test]
    fn fiber_examples() {
        let k2 = hamming_graph(1, 2).unwrap();
        let d = fiber_distribution(&k2, 1, &RatMatrix::from_ints(&[[2]]), &ints(&[2])).unwrap();
        assert_eq!(d.matrix(), &RatMatrix::from_ints(&[[2], [2]]));
        let c4 = direct_product(&k2, &k2).unwrap();
        assert_eq!(
            brute_distribution(&c4, &[0, 2], &Coloring::single(4)).unwrap(),
            d
        );

        let d = subcube_distribution(1, 1, 2, &RatMatrix::from_ints(&[[2]]), &ints(&[2])).unwrap();
        assert_eq!(d.matrix(), &RatMatrix::from_ints(&[[2], [2]]));
        assert_eq!(
            brute_distribution(&c4, &subcube_code(1, 1, 2), &Coloring::single(4)).unwrap(),
            d
        );
    }

    #[test]
    fn pcube_examples() {
        let d = pcube_distribution(1, 2, 3, &RatMatrix::from_ints(&[[2]]), &ints(&[2])).unwrap();
        assert_eq!(d.matrix(), &RatMatrix::from_ints(&[[2], [1]]));
        let d = pcube_distribution(2, 2, 3, &RatMatrix::from_ints(&[[4]]), &ints(&[4])).unwrap();
        assert_eq!(d.matrix(), &RatMatrix::from_ints(&[[4], [4], [1]]));
        assert!(pcube_distribution(2, 3, 3, &RatMatrix::from_ints(&[[4]]), &ints(&[4])).is_err());

        let g = hamming_graph(2, 3).unwrap();
        assert_eq!(
            brute_distribution(&g, &restricted_alphabet_code(2, 2, 3), &Coloring::single(9))
                .unwrap(),
            d
        );
    }

    #[test]
    fn pcube_with_vertex_coloring_matches_oracle() {
        let (n, p, q) = (3, 2, 4);
        let g = hamming_graph(n, q).unwrap();
        let f = distance_coloring(&g, &[5]).unwrap();
        let s = quotient_matrix(&g, &f).unwrap();
        let code = restricted_alphabet_code(n, p, q);
        let f0 = sum_over_set(&f, &code).unwrap();
        assert_eq!(
            pcube_distribution(n, p, q, &s, &f0).unwrap(),
            brute_distribution(&g, &code, &f).unwrap()
        );
    }

    #[test]
    fn distribution_json() {
        let d = Distribution::new(RatMatrix::from_rows(vec![vec![crate::ratmat::frac(1, 2)]]).unwrap());
        assert_eq!(d.to_json().to_string(), r#"{"rows":[["1/2"]]}"#);
    }
}
