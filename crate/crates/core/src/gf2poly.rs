//! Polynomials and polynomial matrices over GF(2)[D].
//!
//! A [`Poly`] stores its coefficients in a single `u64`, bit `i` holding the
//! coefficient of `D^i`. Degrees in this domain stay far below 64, so addition
//! is one XOR and shifting by a power of `D` is one shift.
//!
//! Text form (used by every file format in the crate):
//!
//! ```text
//! term   := "0" | "1" | "D" | "D^" nat
//! poly   := term ("+" term)*
//! matrix := poly ("," poly)* (";" poly ("," poly)*)*
//! ```
//!
//! so `"D^2,D^2,1;1,1+D+D^2,0"` is a 2x3 matrix.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest representable exponent.
pub const MAX_DEGREE: u32 = 63;

/// A polynomial in `D` with GF(2) coefficients.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly(u64);

impl Poly {
    pub const ZERO: Poly = Poly(0);
    pub const ONE: Poly = Poly(1);

    pub const fn from_bits(bits: u64) -> Self {
        Poly(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `D^exp`.
    pub fn monomial(exp: u32) -> Self {
        assert!(exp <= MAX_DEGREE, "exponent {exp} exceeds {MAX_DEGREE}");
        Poly(1 << exp)
    }

    /// Builds a polynomial from a coefficient list, lowest power first.
    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        assert!(coeffs.len() <= 64, "too many coefficients");
        Poly(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c & 1 == 1)
                .fold(0, |acc, (i, _)| acc | (1 << i)),
        )
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn coeff(self, i: u32) -> bool {
        i <= MAX_DEGREE && (self.0 >> i) & 1 == 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(self) -> Option<u32> {
        (self.0 != 0).then(|| MAX_DEGREE - self.0.leading_zeros())
    }

    /// Largest `l` such that `D^l` divides `self`.
    pub fn delay(self) -> Result<u32> {
        if self.0 == 0 {
            Err(Error::DelayOfZero)
        } else {
            Ok(self.0.trailing_zeros())
        }
    }

    /// Removes the factor `D^l`. Zero is divisible by anything.
    pub fn divide_by_power(self, l: u32) -> Result<Poly> {
        if self.0 == 0 {
            return Ok(self);
        }
        let available = self.0.trailing_zeros();
        if l > available {
            return Err(Error::NotDivisible {
                required: l,
                available,
            });
        }
        Ok(Poly(self.0 >> l))
    }

    pub fn multiply_by_power(self, l: u32) -> Poly {
        if self.0 == 0 || l == 0 {
            return self;
        }
        let deg = self.degree().unwrap_or(0);
        assert!(
            deg + l <= MAX_DEGREE,
            "degree overflow: D^{l} * poly of degree {deg}"
        );
        Poly(self.0 << l)
    }

    /// `D^degree * p(1/D)`; reverses the coefficients in `0..=degree`.
    ///
    /// `degree` must be at least the degree of `self`.
    pub fn reverse_within(self, degree: u32) -> Poly {
        debug_assert!(self.degree().is_none_or(|d| d <= degree));
        let rev = self.0.reverse_bits();
        Poly(rev >> (MAX_DEGREE - degree))
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(self, divisor: Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut quot = 0u64;
        let mut rem = self.0;
        while let Some(rd) = Poly(rem).degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            quot |= 1 << shift;
            rem ^= divisor.0 << shift;
        }
        (Poly(quot), Poly(rem))
    }

    pub fn gcd(self, other: Poly) -> Poly {
        let (mut a, mut b) = (self, other);
        while !b.is_zero() {
            let (_, r) = a.div_rem(b);
            a = b;
            b = r;
        }
        a
    }

    /// Number of nonzero coefficients.
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }
}

impl Add for Poly {
    type Output = Poly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Poly) -> Poly {
        Poly(self.0 ^ rhs.0)
    }
}

impl AddAssign for Poly {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Poly) {
        self.0 ^= rhs.0;
    }
}

impl Mul for Poly {
    type Output = Poly;
    /// Carry-less product. Panics if the result would exceed degree 63.
    fn mul(self, rhs: Poly) -> Poly {
        match (self.degree(), rhs.degree()) {
            (Some(da), Some(db)) => {
                assert!(
                    da + db <= MAX_DEGREE,
                    "degree overflow in product: {da} + {db}"
                );
                let mut acc = 0u64;
                let mut b = rhs.0;
                let mut shift = 0;
                while b != 0 {
                    if b & 1 == 1 {
                        acc ^= self.0 << shift;
                    }
                    b >>= 1;
                    shift += 1;
                }
                Poly(acc)
            }
            _ => Poly::ZERO,
        }
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::ZERO, Add::add)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("0");
        }
        let mut first = true;
        for i in 0..=MAX_DEGREE {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("D")?,
                _ => write!(f, "D^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly> {
        let mut cur = Cursor::new(s);
        let p = cur.poly()?;
        cur.expect_end()?;
        Ok(p)
    }
}

/// A row-major matrix of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix must be non-empty, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
            return Err(Error::Dimension(format!(
                "row {} has {} entries, expected {ncols}",
                i + 1,
                r.len()
            )));
        }
        PolyMatrix::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly::ZERO; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Poly {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = Poly> + '_ {
        (0..self.rows).map(move |i| self.get(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Largest common power of `D` dividing the nonzero entries of column `j`.
    pub fn column_delay(&self, j: usize) -> Result<u32> {
        self.column(j)
            .filter_map(|p| p.delay().ok())
            .min()
            .ok_or(Error::ZeroColumn(j + 1))
    }

    pub fn row_delay(&self, i: usize) -> Result<u32> {
        self.row(i)
            .iter()
            .filter_map(|p| p.delay().ok())
            .min()
            .ok_or(Error::ZeroRow(i + 1))
    }

    /// Maximum entry degree in row `i`, `None` for a zero row.
    pub fn row_degree(&self, i: usize) -> Option<u32> {
        self.row(i).iter().filter_map(|p| p.degree()).max()
    }

    pub fn column_degree(&self, j: usize) -> Option<u32> {
        self.column(j).filter_map(|p| p.degree()).max()
    }

    /// Sum of row degrees (nu); zero rows contribute nothing.
    pub fn overall_constraint_length(&self) -> usize {
        (0..self.rows)
            .map(|i| self.row_degree(i).unwrap_or(0) as usize)
            .sum()
    }

    /// Maximum row degree.
    pub fn memory(&self) -> usize {
        (0..self.rows)
            .filter_map(|i| self.row_degree(i))
            .max()
            .unwrap_or(0) as usize
    }

    /// `self * other^T`.
    pub fn mul_transpose(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "column counts differ: {} vs {}",
                self.cols, other.cols
            )));
        }
        let mut out = PolyMatrix::zero(self.rows, other.rows);
        for p in 0..self.rows {
            for q in 0..other.rows {
                let s = self
                    .row(p)
                    .iter()
                    .zip(other.row(q))
                    .map(|(&a, &b)| a * b)
                    .sum();
                out.set(p, q, s);
            }
        }
        Ok(out)
    }

    /// Rank over the field of rational functions in `D`.
    ///
    /// Fraction-free elimination; each updated row is divided by the gcd of
    /// its entries to keep degrees small.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Poly>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            let pv = pivot_row[col];
            for row in rows.iter_mut().skip(rank + 1) {
                let rv = row[col];
                if rv.is_zero() {
                    continue;
                }
                for (x, &pr) in row.iter_mut().zip(&pivot_row) {
                    *x = pv * *x + rv * pr;
                }
                let g = row.iter().fold(Poly::ZERO, |g, &x| g.gcd(x));
                if !g.is_zero() && g != Poly::ONE {
                    for x in row.iter_mut() {
                        *x = x.div_rem(g).0;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// The reciprocal dual: row `i` with row degree `nu_i` becomes
    /// `D^nu_i * h_ij(1/D)` entrywise.
    pub fn reciprocal_dual(&self) -> Result<PolyMatrix> {
        let mut out = self.clone();
        for i in 0..self.rows {
            let deg = self.row_degree(i).ok_or(Error::ZeroRow(i + 1))?;
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).reverse_within(deg));
            }
        }
        Ok(out)
    }

    /// Multiplies column `j` by `D^mul` and then divides it by `D^div`.
    pub(crate) fn rescale_column(&self, j: usize, mul: u32, div: u32) -> std::result::Result<PolyMatrix, (u32, u32)> {
        let mut out = self.clone();
        for i in 0..self.rows {
            let scaled = self.get(i, j).multiply_by_power(mul);
            match scaled.divide_by_power(div) {
                Ok(p) => out.set(i, j, p),
                Err(Error::NotDivisible { required, available }) => return Err((required, available)),
                Err(_) => unreachable!(),
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// One string per row, entries joined by `,`.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.row_strings().join(";"))
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix({self})")
    }
}

impl FromStr for PolyMatrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<PolyMatrix> {
        let mut cur = Cursor::new(s);
        let m = cur.matrix()?;
        cur.expect_end()?;
        Ok(m)
    }
}

/// Checks `G * H^T = 0` and that both matrices have full row rank.
pub fn check_gh_relation(g: &PolyMatrix, h: &PolyMatrix) -> Result<bool> {
    let product = g.mul_transpose(h)?;
    Ok(product.is_zero() && g.rank() == g.rows() && h.rank() == h.rows())
}

/// A generator matrix and parity-check matrix of the same code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhPair {
    g: PolyMatrix,
    h: PolyMatrix,
}

impl GhPair {
    pub fn new(g: PolyMatrix, h: PolyMatrix) -> Result<Self> {
        if g.cols() != h.cols() {
            return Err(Error::Dimension(format!(
                "G has {} columns, H has {}",
                g.cols(),
                h.cols()
            )));
        }
        if g.rows() + h.rows() != g.cols() {
            return Err(Error::Dimension(format!(
                "G is {}x{} and H is {}x{}; expected (n-m)xn and mxn",
                g.rows(),
                g.cols(),
                h.rows(),
                h.cols()
            )));
        }
        if !check_gh_relation(&g, &h)? {
            let product = g.mul_transpose(&h)?;
            return Err(Error::NotGhPair(if product.is_zero() {
                "rank deficient".into()
            } else {
                format!("G*H^T = {product}")
            }));
        }
        Ok(GhPair { g, h })
    }

    pub fn g(&self) -> &PolyMatrix {
        &self.g
    }

    pub fn h(&self) -> &PolyMatrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.g.cols()
    }

    pub fn into_parts(self) -> (PolyMatrix, PolyMatrix) {
        (self.g, self.h)
    }
}

/// Position-tracking parser shared by the text grammars.
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    pub(crate) fn expect_end(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }

    fn nat(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected exponent"));
        }
        let digits = &self.src[start..self.pos];
        match digits.parse::<u32>() {
            Ok(e) if e <= MAX_DEGREE => Ok(e),
            _ => {
                self.pos = start;
                Err(self.error(format!("exponent {digits} exceeds {MAX_DEGREE}")))
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('0') => {
                self.bump();
                Ok(Poly::ZERO)
            }
            Some('1') => {
                self.bump();
                Ok(Poly::ONE)
            }
            Some('D') => {
                self.bump();
                if self.peek() == Some('^') {
                    self.bump();
                    Ok(Poly::monomial(self.nat()?))
                } else {
                    Ok(Poly::monomial(1))
                }
            }
            Some(c) => Err(self.error(format!("expected term, found '{c}'"))),
            None => Err(self.error("expected term, found end of input")),
        }
    }

    pub(crate) fn poly(&mut self) -> Result<Poly> {
        let mut p = self.term()?;
        while self.peek() == Some('+') {
            self.bump();
            p += self.term()?;
        }
        Ok(p)
    }

    pub(crate) fn matrix(&mut self) -> Result<PolyMatrix> {
        self.skip_ws();
        let mut rows: Vec<Vec<Poly>> = vec![vec![]];
        loop {
            let p = self.poly()?;
            rows.last_mut().unwrap().push(p);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.bump(),
                Some(';') => {
                    self.bump();
                    let width = rows[0].len();
                    let last = rows.last().unwrap().len();
                    if last != width {
                        return Err(self.error(format!(
                            "row {} has {last} entries, expected {width}",
                            rows.len()
                        )));
                    }
                    rows.push(vec![]);
                }
                _ => break,
            }
            self.skip_ws();
        }
        let width = rows[0].len();
        let last = rows.last().unwrap().len();
        if last != width {
            return Err(self.error(format!(
                "row {} has {last} entries, expected {width}",
                rows.len()
            )));
        }
        PolyMatrix::from_rows(rows)
    }
}
