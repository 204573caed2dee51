//! Distance-regular graphs: intersection arrays, P-polynomials and the
//! classical Krawtchouk and Eberlein families.
//!
//! `Π_w` is always produced from the intersection array when a graph is at
//! hand. The closed forms are used to cross-check that path and to supply
//! `Π_w` for parameters that have no graph (a non-integer alphabet size).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::ratmat::{int, RatMatrix, Rational, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionArray {
    pub diameter: usize,
    /// `b_0 .. b_{D-1}`
    pub b: Vec<usize>,
    /// `a_0 .. a_D`
    pub a: Vec<usize>,
    /// `c_1 .. c_D`
    pub c: Vec<usize>,
}

impl IntersectionArray {
    pub fn new(b: Vec<usize>, a: Vec<usize>, c: Vec<usize>) -> Result<Self> {
        let diameter = c.len();
        if b.len() != diameter || a.len() != diameter + 1 {
            return Err(Error::InvalidParameter(format!(
                "array lengths b={}, a={}, c={} are inconsistent",
                b.len(),
                a.len(),
                c.len()
            )));
        }
        let ia = IntersectionArray { diameter, b, a, c };
        let k = ia.degree();
        for w in 0..=diameter {
            if ia.b_at(w) + ia.a[w] + ia.c_at(w) != k {
                return Err(Error::InvalidParameter(format!(
                    "b_{w} + a_{w} + c_{w} != {k}"
                )));
            }
            if w >= 1 && ia.c_at(w) == 0 {
                return Err(Error::InvalidParameter(format!("c_{w} must be positive")));
            }
        }
        Ok(ia)
    }

    pub fn degree(&self) -> usize {
        self.b.first().copied().unwrap_or(0)
    }

    /// `b_w`, zero at `w = D`.
    pub fn b_at(&self, w: usize) -> usize {
        self.b.get(w).copied().unwrap_or(0)
    }

    /// `c_w`, zero at `w = 0`.
    pub fn c_at(&self, w: usize) -> usize {
        if w == 0 {
            0
        } else {
            self.c[w - 1]
        }
    }

    /// Number of vertices at each distance from any fixed vertex.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![1usize];
        for w in 0..self.diameter {
            let next = sizes[w] * self.b[w] / self.c[w];
            sizes.push(next);
        }
        sizes
    }

    /// Tridiagonal quotient matrix of the distance coloring of a vertex:
    /// row `w` holds `c_w, a_w, b_w` around the diagonal.
    pub fn quotient_matrix(&self) -> RatMatrix {
        let d = self.diameter;
        let mut r = RatMatrix::zeros(d + 1, d + 1);
        for w in 0..=d {
            if w > 0 {
                r.set(w, w - 1, int(self.c_at(w) as i64));
            }
            r.set(w, w, int(self.a[w] as i64));
            if w < d {
                r.set(w, w + 1, int(self.b[w] as i64));
            }
        }
        r
    }
}

/// The P-polynomials `Π_0 .. Π_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPolynomials(Vec<Poly>);

impl PPolynomials {
    pub fn new(polys: Vec<Poly>) -> Self {
        PPolynomials(polys)
    }

    pub fn polys(&self) -> &[Poly] {
        &self.0
    }

    pub fn get(&self, w: usize) -> &Poly {
        &self.0[w]
    }

    pub fn diameter(&self) -> usize {
        self.0.len() - 1
    }

    /// `Π_w(m)` for every `w`.
    pub fn eval_matrix_all(&self, m: &RatMatrix) -> Result<Vec<RatMatrix>> {
        self.0.iter().map(|p| p.eval_matrix(m)).collect()
    }
}

type Counts = (usize, usize, usize);

/// Checks distance-regularity by BFS from every vertex and returns the
/// intersection array. The witness in the error names two vertex pairs at
/// the same distance with different neighbor counts.
pub fn intersection_array(g: &Graph) -> Result<IntersectionArray> {
    g.regular_degree()?;
    let n = g.n_vertices();
    // per distance: (b, a, c) and the pair that fixed them
    let mut seen: Vec<Option<(Counts, (usize, usize))>> = Vec::new();
    for v in 0..n {
        let dist: Vec<usize> = g
            .bfs(&[v])
            .into_iter()
            .map(|d| d.ok_or(Error::Disconnected))
            .collect::<Result<_>>()?;
        for u in 0..n {
            let w = dist[u];
            let mut counts = (0, 0, 0);
            for &x in g.neighbors(u) {
                match dist[x] as isize - w as isize {
                    1 => counts.0 += 1,
                    0 => counts.1 += 1,
                    _ => counts.2 += 1,
                }
            }
            if seen.len() <= w {
                seen.resize(w + 1, None);
            }
            match seen[w] {
                None => seen[w] = Some((counts, (v, u))),
                Some((expected, first)) if expected != counts => {
                    return Err(Error::NotDistanceRegular {
                        distance: w,
                        first,
                        second: (v, u),
                    });
                }
                Some(_) => {}
            }
        }
    }
    let rows: Vec<(usize, usize, usize)> = seen
        .into_iter()
        .map(|s| s.expect("every distance up to the diameter occurs").0)
        .collect();
    let diameter = rows.len() - 1;
    IntersectionArray::new(
        rows[..diameter].iter().map(|r| r.0).collect(),
        rows.iter().map(|r| r.1).collect(),
        rows[1..].iter().map(|r| r.2).collect(),
    )
}

/// `Π_{w+1} = ((x - a_w) Π_w - b_{w-1} Π_{w-1}) / c_{w+1}`, which is
/// `A A_w = b_{w-1} A_{w-1} + a_w A_w + c_{w+1} A_{w+1}` read as polynomials.
pub fn p_polynomials(ia: &IntersectionArray) -> PPolynomials {
    let mut polys = vec![Poly::one()];
    for w in 0..ia.diameter {
        let shifted = &Poly::affine(-int(ia.a[w] as i64), Rational::one()) * &polys[w];
        let back = if w == 0 {
            Poly::zero()
        } else {
            polys[w - 1].scale(&int(ia.b[w - 1] as i64))
        };
        let c = ia.c[w];
        assert!(c > 0, "c_{} vanishes in a validated array", w + 1);
        polys.push((&shifted - &back).scale(&Rational::new(BigInt::one(), BigInt::from(c))));
    }
    PPolynomials(polys)
}

/// Krawtchouk polynomial
/// `P_w(x; n, q) = Σ_j (-1)^j (q-1)^(w-j) (x choose j) (n-x choose w-j)`.
/// `q` may be any rational.
pub fn krawtchouk(w: usize, n: usize, q: &Rational) -> Result<Poly> {
    if w > n {
        return Err(Error::InvalidParameter(format!(
            "krawtchouk degree {w} exceeds length {n}"
        )));
    }
    Ok(krawtchouk_unchecked(w, n, q))
}

fn krawtchouk_unchecked(w: usize, n: usize, q: &Rational) -> Poly {
    let q1 = q - Rational::one();
    let complement = Poly::affine(int(n as i64), -Rational::one());
    let mut total = Poly::zero();
    for j in 0..=w {
        let mut coef = num_traits::pow(q1.clone(), w - j);
        if j % 2 == 1 {
            coef = -coef;
        }
        let term = &Poly::binomial(&Poly::x(), j) * &Poly::binomial(&complement, w - j);
        total = &total + &term.scale(&coef);
    }
    total
}

/// `Π_w = P_w(P_1^{-1}(·))` for `w = 0..=n`, where `P_1(x) = (q-1)n - qx`.
/// For integer `q` these are the P-polynomials of the Hamming graph.
pub fn krawtchouk_p_polynomials(n: usize, q: &Rational) -> Result<PPolynomials> {
    if q.is_zero() {
        return Err(Error::InvalidParameter("alphabet parameter must be nonzero".into()));
    }
    let q1 = q - Rational::one();
    // P_1^{-1}(y) = ((q-1)n - y) / q
    let inverse = Poly::affine(&q1 * int(n as i64) / q, -q.recip());
    let polys = (0..=n)
        .map(|w| krawtchouk_unchecked(w, n, q).compose(&inverse))
        .collect();
    Ok(PPolynomials(polys))
}

/// `(w+1) P_{w+1} = ((n-w)(q-1) + w - q x) P_w - (q-1)(n-w+1) P_{w-1}`
/// checked coefficient by coefficient.
pub fn recurrence_identity(
    prev: &Poly,
    cur: &Poly,
    next: &Poly,
    w: usize,
    n: usize,
    q: &Rational,
) -> bool {
    let q1 = q - Rational::one();
    let lhs = next.scale(&int(w as i64 + 1));
    let factor = Poly::affine(
        int(n as i64 - w as i64) * &q1 + int(w as i64),
        -q.clone(),
    );
    let rhs = &(&factor * cur) - &prev.scale(&(&q1 * int(n as i64 - w as i64 + 1)));
    lhs == rhs
}

/// Whether the three-term Krawtchouk recurrence holds at step `w`.
/// Returns `false` outside `1 <= w < n`.
pub fn krawtchouk_recurrence_check(w: usize, n: usize, q: &Rational) -> bool {
    if w < 1 || w >= n {
        return false;
    }
    recurrence_identity(
        &krawtchouk_unchecked(w - 1, n, q),
        &krawtchouk_unchecked(w, n, q),
        &krawtchouk_unchecked(w + 1, n, q),
        w,
        n,
        q,
    )
}

/// Eberlein polynomial
/// `E_w(x; n, k) = Σ_j (-1)^j (x choose j) (k-x choose w-j) (n-k-x choose w-j)`.
pub fn eberlein(w: usize, n: usize, k: usize) -> Result<Poly> {
    if k > n || w > k.min(n - k) {
        return Err(Error::InvalidParameter(format!(
            "eberlein E_{w}(x; {n}, {k}) needs w <= min(k, n-k)"
        )));
    }
    let rest = Poly::affine(int(k as i64), -Rational::one());
    let outside = Poly::affine(int((n - k) as i64), -Rational::one());
    let mut total = Poly::zero();
    for j in 0..=w {
        let term = &(&Poly::binomial(&Poly::x(), j) * &Poly::binomial(&rest, w - j))
            * &Poly::binomial(&outside, w - j);
        total = if j % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    Ok(total)
}

/// Johnson graph P-polynomials realised as `E_w(E_1^{-1}(·))` on the
/// spectrum: the unique polynomial of degree at most `D` taking the value
/// `E_w(x)` at `E_1(x)` for `x = 0..=D`.
pub fn eberlein_p_polynomials(n: usize, k: usize) -> Result<PPolynomials> {
    if k > n {
        return Err(Error::InvalidParameter(format!("k={k} > n={n}")));
    }
    let d = k.min(n - k);
    let e1 = eberlein(1.min(d), n, k)?;
    spectral_composition(d, &e1, |w| eberlein(w, n, k))
}

/// Halved `n`-cube P-polynomials realised as `P_{2w}(P_2^{-1}(·))` on the
/// spectrum, with binary Krawtchouk polynomials of length `n`.
pub fn halved_cube_p_polynomials(n: usize) -> Result<PPolynomials> {
    if n < 2 {
        return Err(Error::InvalidParameter("halved cube needs n >= 2".into()));
    }
    let two = int(2);
    let p2 = krawtchouk(2, n, &two)?;
    spectral_composition(n / 2, &p2, |w| krawtchouk(2 * w, n, &two))
}

fn spectral_composition(
    diameter: usize,
    inner: &Poly,
    outer: impl Fn(usize) -> Result<Poly>,
) -> Result<PPolynomials> {
    let nodes: Vec<Rational> = (0..=diameter).map(|x| inner.eval(&int(x as i64))).collect();
    let polys = (0..=diameter)
        .map(|w| {
            let outer = outer(w)?;
            let points: Vec<_> = nodes
                .iter()
                .enumerate()
                .map(|(x, theta)| (theta.clone(), outer.eval(&int(x as i64))))
                .collect();
            Poly::interpolate(&points)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PPolynomials(polys))
}

/// Verifies `Π_w(A) = A_w` entrywise for every `w` without forming dense
/// matrices: walk counts `A^i e_v` are integers, and each `Π_w` is scaled by
/// the lcm of its denominators.
pub fn verify_p_polynomials(g: &Graph, polys: &PPolynomials) -> Result<()> {
    let n = g.n_vertices();
    let overflow = || Error::Overflow("walk counts exceed i128".into());
    let scaled: Vec<(Vec<i128>, i128)> = polys
        .polys()
        .iter()
        .map(|p| {
            let lcm = p
                .coeffs()
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let coeffs = p
                .coeffs()
                .iter()
                .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer().to_i128())
                .collect::<Option<Vec<_>>>()
                .ok_or_else(overflow)?;
            Ok((coeffs, lcm.to_i128().ok_or_else(overflow)?))
        })
        .collect::<Result<_>>()?;
    let max_degree = scaled.iter().map(|(c, _)| c.len()).max().unwrap_or(0);

    for v in 0..n {
        let dist = g.bfs(&[v]);
        let eccentricity = dist
            .iter()
            .map(|d| d.ok_or(Error::Disconnected))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(0);
        if eccentricity != polys.diameter() {
            return Err(Error::Assertion(format!(
                "vertex {v} has eccentricity {eccentricity}, expected {}",
                polys.diameter()
            )));
        }
        let mut walks: Vec<Vec<i128>> = vec![vec![0; n]];
        walks[0][v] = 1;
        for i in 1..max_degree {
            let prev = &walks[i - 1];
            let mut next = vec![0i128; n];
            for (u, slot) in next.iter_mut().enumerate() {
                let mut s: i128 = 0;
                for &x in g.neighbors(u) {
                    s = s.checked_add(prev[x]).ok_or_else(overflow)?;
                }
                *slot = s;
            }
            walks.push(next);
        }
        for (w, (coeffs, lcm)) in scaled.iter().enumerate() {
            for u in 0..n {
                let mut s: i128 = 0;
                for (c, walk) in coeffs.iter().zip(&walks) {
                    let t = c.checked_mul(walk[u]).ok_or_else(overflow)?;
                    s = s.checked_add(t).ok_or_else(overflow)?;
                }
                let expected = if dist[u] == Some(w) { *lcm } else { 0 };
                if s != expected {
                    return Err(Error::Assertion(format!(
                        "Π_{w}(A)[{v}][{u}] = {}/{lcm}, expected {}",
                        s,
                        expected / lcm
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{halved_cube, hamming_graph, johnson_graph, Parity};
    use crate::ratmat::{frac, mat_poly_eval};

    fn binom(n: i64, k: i64) -> i64 {
        if k < 0 || k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_arrays() {
        let k2 = intersection_array(&hamming_graph(1, 2).unwrap()).unwrap();
        assert_eq!(k2, IntersectionArray::new(vec![1], vec![0, 0], vec![1]).unwrap());

        let cube = intersection_array(&hamming_graph(3, 2).unwrap()).unwrap();
        assert_eq!(cube.b, vec![3, 2, 1]);
        assert_eq!(cube.c, vec![1, 2, 3]);
        assert_eq!(cube.a, vec![0, 0, 0, 0]);
        assert_eq!(cube.sphere_sizes(), vec![1, 3, 3, 1]);

        let oct = intersection_array(&johnson_graph(4, 2).unwrap()).unwrap();
        assert_eq!(oct.b, vec![4, 1]);
        assert_eq!(oct.c, vec![1, 4]);
        assert_eq!(oct.a, vec![0, 2, 0]);
    }

    #[test]
    fn non_distance_regular_inputs() {
        // path on 4 vertices is not regular
        let path = Graph::from_edges(4, &[[0, 1], [1, 2], [2, 3]]).unwrap();
        assert!(matches!(intersection_array(&path), Err(Error::NotRegular { .. })));
        // triangular prism: regular of degree 3, not distance-regular
        let prism = Graph::from_edges(
            6,
            &[[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5], [0, 3], [1, 4], [2, 5]],
        )
        .unwrap();
        assert!(matches!(
            intersection_array(&prism),
            Err(Error::NotDistanceRegular { .. })
        ));
        let two_edges = Graph::from_edges(4, &[[0, 1], [2, 3]]).unwrap();
        assert!(matches!(intersection_array(&two_edges), Err(Error::Disconnected)));
        assert!(IntersectionArray::new(vec![3], vec![0, 1], vec![1]).is_err());
    }

    #[test]
    fn p_polynomials_start_with_one_and_x() {
        let ia = intersection_array(&hamming_graph(3, 3).unwrap()).unwrap();
        let p = p_polynomials(&ia);
        assert_eq!(p.get(0), &Poly::one());
        assert_eq!(p.get(1), &Poly::x());
        for w in 0..=ia.diameter {
            assert_eq!(p.get(w).degree(), Some(w));
        }
    }

    #[test]
    fn pi_two_gives_distance_two_matrix() {
        let g = hamming_graph(2, 3).unwrap();
        let p = p_polynomials(&intersection_array(&g).unwrap());
        let a2 = mat_poly_eval(p.get(2).coeffs(), &g.adjacency_matrix()).unwrap();
        assert_eq!(a2, g.distance_matrix(2));
    }

    #[test]
    fn dense_evaluation_matches_distance_matrices() {
        for g in [
            johnson_graph(5, 2).unwrap(),
            halved_cube(5, Parity::Even).unwrap(),
            hamming_graph(3, 2).unwrap(),
        ] {
            let p = p_polynomials(&intersection_array(&g).unwrap());
            let a = g.adjacency_matrix();
            for w in 0..=p.diameter() {
                assert_eq!(p.get(w).eval_matrix(&a).unwrap(), g.distance_matrix(w));
            }
            verify_p_polynomials(&g, &p).unwrap();
        }
    }

    #[test]
    fn verification_rejects_wrong_polynomials() {
        let g = hamming_graph(3, 2).unwrap();
        let mut polys = p_polynomials(&intersection_array(&g).unwrap()).polys().to_vec();
        polys[2] = &polys[2] + &Poly::one();
        assert!(verify_p_polynomials(&g, &PPolynomials::new(polys)).is_err());
    }

    #[test]
    fn krawtchouk_small_values() {
        let two = int(2);
        assert_eq!(krawtchouk(0, 5, &two).unwrap(), Poly::one());
        for (n, q) in [(4, 2), (5, 3), (3, 7)] {
            let q = int(q);
            let expected = Poly::affine((&q - Rational::one()) * int(n), -q.clone());
            assert_eq!(krawtchouk(1, n as usize, &q).unwrap(), expected);
        }
        assert_eq!(krawtchouk(2, 4, &two).unwrap().eval(&int(1)), int(0));
        assert!(krawtchouk(5, 4, &two).is_err());
    }

    #[test]
    fn krawtchouk_orthogonality() {
        for n in 1..=6usize {
            for q in [2i64, 3, 4] {
                let qr = int(q);
                let polys: Vec<Poly> = (0..=n).map(|w| krawtchouk(w, n, &qr).unwrap()).collect();
                for w in 0..=n {
                    for w2 in 0..=n {
                        let s: Rational = (0..=n as i64)
                            .map(|x| {
                                int((q - 1).pow(x as u32) * binom(n as i64, x))
                                    * polys[w].eval(&int(x))
                                    * polys[w2].eval(&int(x))
                            })
                            .sum();
                        if w != w2 {
                            assert_eq!(s, int(0), "n={n} q={q} w={w} w'={w2}");
                        } else {
                            let norm = int(q.pow(n as u32) * (q - 1).pow(w as u32) * binom(n as i64, w as i64));
                            assert_eq!(s, norm);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hamming_closed_form_matches_array() {
        for n in 1..=5 {
            for q in 2..=4 {
                let g = hamming_graph(n, q).unwrap();
                let from_array = p_polynomials(&intersection_array(&g).unwrap());
                let closed = krawtchouk_p_polynomials(n, &int(q as i64)).unwrap();
                assert_eq!(from_array, closed, "H({n},{q})");
            }
        }
    }

    #[test]
    fn recurrence_examples() {
        assert!(krawtchouk_recurrence_check(1, 3, &int(2)));
        assert!(krawtchouk_recurrence_check(2, 5, &frac(3, 2)));
        assert!(!krawtchouk_recurrence_check(0, 3, &int(2)));
        assert!(!krawtchouk_recurrence_check(3, 3, &int(2)));
        let q = int(2);
        let broken = Poly::constant(int(2));
        assert!(!recurrence_identity(
            &broken,
            &krawtchouk(1, 3, &q).unwrap(),
            &krawtchouk(2, 3, &q).unwrap(),
            1,
            3,
            &q
        ));
    }

    #[test]
    fn eberlein_values() {
        assert_eq!(eberlein(0, 6, 3).unwrap(), Poly::one());
        assert_eq!(eberlein(1, 4, 2).unwrap().eval(&int(0)), int(4));
        assert!(eberlein(3, 5, 2).is_err());
        assert!(eberlein(1, 2, 3).is_err());
    }

    #[test]
    fn johnson_spectral_composition_matches_array() {
        for n in 2..=8 {
            for k in 1..n {
                let g = johnson_graph(n, k).unwrap();
                let from_array = p_polynomials(&intersection_array(&g).unwrap());
                assert_eq!(from_array, eberlein_p_polynomials(n, k).unwrap(), "J({n},{k})");
            }
        }
    }

    #[test]
    fn halved_spectral_composition_matches_array() {
        for n in 2..=9 {
            let g = halved_cube(n, Parity::Even).unwrap();
            let from_array = p_polynomials(&intersection_array(&g).unwrap());
            assert_eq!(from_array, halved_cube_p_polynomials(n).unwrap(), "halved {n}");
        }
    }
}
