//! Exact rational scalars, dense rational matrices and polynomials.
//!
//! Every value is kept in lowest terms, so `==` is mathematical equality.

mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use poly::{mat_poly_eval, Poly};

/// Arbitrary precision fraction, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics on a zero denominator.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"`, surrounding whitespace allowed.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let parsed = match trimmed.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| Error::ParseRational(text.into()))?;
            let den: BigInt = den.trim().parse().map_err(|_| Error::ParseRational(text.into()))?;
            if den.is_zero() {
                return Err(Error::ParseRational(text.into()));
            }
            Rational::new(num, den)
        }
        None => Rational::from_integer(
            trimmed
                .parse()
                .map_err(|_| Error::ParseRational(text.into()))?,
        ),
    };
    Ok(parsed)
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from nested rows. All rows must share a length; an
    /// empty outer list yields the 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "row {bad} has length {}, expected {cols}",
                rows[bad].len()
            )));
        }
        let n_rows = rows.len();
        Ok(RatMatrix {
            rows: n_rows,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer literal convenience; panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(rows).expect("ragged integer matrix")
    }

    pub fn row_vector(values: Vec<Rational>) -> Self {
        RatMatrix {
            rows: 1,
            cols: values.len(),
            entries: values,
        }
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Rational] {
        &mut self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Copy of rows `start..end`.
    pub fn row_block(&self, start: usize, end: usize) -> RatMatrix {
        assert!(start <= end && end <= self.rows);
        RatMatrix {
            rows: end - start,
            cols: self.cols,
            entries: self.entries[start * self.cols..end * self.cols].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.entries[i * self.cols + j].clone();
            }
        }
        t
    }

    pub fn scale(&self, factor: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn try_add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(other, "subtract", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &RatMatrix,
        what: &str,
        op: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<RatMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (l, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.row(l).iter().enumerate() {
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ · other` without materialising the transpose. Both operands
    /// are typically tall indicator-like matrices, so zeros are skipped.
    pub fn transpose_mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot form transpose product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.cols, other.cols);
        for v in 0..self.rows {
            for (i, a) in self.row(v).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.row(v).iter().enumerate() {
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product. Row `(i', i'')` lands at `i' * b.rows + i''`,
    /// column `(j', j'')` at `j' * b.cols + j''`.
    pub fn tensor(&self, b: &RatMatrix) -> RatMatrix {
        let rows = self.rows * b.rows;
        let cols = self.cols * b.cols;
        let mut out = Self::zeros(rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..b.rows {
                    for j2 in 0..b.cols {
                        let v = b.get(i2, j2);
                        if !v.is_zero() {
                            out.entries[(i1 * b.rows + i2) * cols + j1 * b.cols + j2] = a * v;
                        }
                    }
                }
            }
        }
        out
    }

    /// Nonnegative integer power by repeated squaring.
    pub fn pow(&self, mut exp: u32) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Index of the first row that is not all zero.
    pub fn first_nonzero_row(&self) -> Option<usize> {
        (0..self.rows).find(|&i| self.row(i).iter().any(|x| !x.is_zero()))
    }

    /// Rows rendered as `"p/q"` strings.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect()
    }

    pub fn from_string_rows<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<RatMatrix> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s.as_ref())).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::from_rows(parsed)
    }
}

/// Entrywise Kronecker product, see [`RatMatrix::tensor`].
pub fn tensor(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    a.tensor(b)
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} {:?}", self.rows, self.cols, self.to_string_rows())
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_add(rhs).unwrap()
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_sub(rhs).unwrap()
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).unwrap()
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=9).prop_map(|(n, d)| frac(n, d))
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
        proptest::collection::vec(small_rational(), rows * cols)
            .prop_map(move |e| RatMatrix::from_entries(rows, cols, e).unwrap())
    }

    #[test]
    fn rationals_are_reduced() {
        let x = frac(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(frac(0, 7), int(0));
        assert_eq!(format_rational(&frac(0, 7)), "0");
        assert_eq!(format_rational(&frac(4, 2)), "2");
        assert_eq!(format_rational(&frac(-1, 3)), "-1/3");
    }

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational(" -10/4 ").unwrap(), frac(-5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn tensor_with_identity_is_block_diagonal() {
        let m = RatMatrix::from_ints(&[[1, 2], [3, 4]]);
        let t = tensor(&RatMatrix::identity(2), &m);
        let expected = RatMatrix::from_ints(&[
            [1, 2, 0, 0],
            [3, 4, 0, 0],
            [0, 0, 1, 2],
            [0, 0, 3, 4],
        ]);
        assert_eq!(t, expected);
    }

    #[test]
    fn tensor_index_pairing() {
        let a = RatMatrix::from_ints(&[[1, 2, 3]]);
        let b = RatMatrix::from_ints(&[[1], [10]]);
        let t = a.tensor(&b);
        assert_eq!(t.shape(), (2, 3));
        assert_eq!(t, RatMatrix::from_ints(&[[1, 2, 3], [10, 20, 30]]));
    }

    #[test]
    fn shape_errors() {
        let a = RatMatrix::zeros(2, 3);
        assert!(a.try_mul(&a).is_err());
        assert!(a.try_add(&RatMatrix::zeros(3, 2)).is_err());
        assert!(RatMatrix::from_rows(vec![vec![int(1)], vec![]]).is_err());
        assert!(a.pow(2).is_err());
    }

    #[test]
    fn display_renders_rows() {
        let m = RatMatrix::from_rows(vec![vec![frac(1, 2), int(3)], vec![int(0), frac(-7, 3)]])
            .unwrap();
        assert_eq!(m.to_string(), "1/2 3\n0 -7/3\n");
    }

    #[test]
    fn transpose_mul_matches_explicit_transpose() {
        let g = RatMatrix::from_ints(&[[1, 0], [0, 1], [1, 0]]);
        let f = RatMatrix::from_ints(&[[2, 1, 0], [0, 0, 5], [1, 1, 1]]);
        assert_eq!(g.transpose_mul(&f).unwrap(), &g.transpose() * &f);
    }

    proptest! {
        #[test]
        fn field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn parse_format_round_trip(a in small_rational()) {
            prop_assert_eq!(parse_rational(&format_rational(&a)).unwrap(), a);
        }

        #[test]
        fn mixed_product(
            a in matrix(2, 2), b in matrix(2, 2), c in matrix(2, 2), d in matrix(2, 2)
        ) {
            let lhs = &a.tensor(&b) * &c.tensor(&d);
            let rhs = (&a * &c).tensor(&(&b * &d));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn tensor_is_associative(a in matrix(2, 1), b in matrix(1, 2), c in matrix(2, 2)) {
            prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
        }
    }
}
