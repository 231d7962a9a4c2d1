//! Dense matrices of Gaussian rationals.
//!
//! Matrices are immutable after construction; every operation returns a fresh
//! value. The JSON wire format is
//! `{"rows": r, "cols": c, "data": [[entry, ...], ...]}` where an entry is
//! either a string `"p/q"` (real, `/q` optional) or a two-element array
//! `["p/q", "r/s"]` giving real and imaginary parts.

use std::fmt;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, GaussianRational};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>, // row-major, rows*cols entries
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("rows and cols must be >= 1".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![GaussianRational::zero(); rows * cols]).unwrap()
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = GaussianRational::one();
        }
        m
    }

    pub fn diag(entries: &[GaussianRational]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n, n);
        for (i, e) in entries.iter().enumerate() {
            *m.at_mut(i, i) = e.clone();
        }
        m
    }

    /// Integer test fixture: one slice per row.
    pub fn ints(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let data = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged rows");
                row.iter().map(|&v| GaussianRational::from_int(v))
            })
            .collect();
        Self::new(r, c, data).unwrap()
    }

    /// Complex integer test fixture: entries as `(re, im)` pairs.
    pub fn gauss(rows: &[&[(i64, i64)]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let data = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged rows");
                row.iter().map(|&(re, im)| GaussianRational::gauss(re, im))
            })
            .collect();
        Self::new(r, c, data).unwrap()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }

    pub(crate) fn at_mut(&mut self, i: usize, j: usize) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(self.rows, self.cols, data)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lhs = self.at(i, k);
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let rhs = other.at(k, j);
                    if rhs.is_zero() {
                        continue;
                    }
                    let acc = out.at(i, j) + &(lhs * rhs);
                    *out.at_mut(i, j) = acc;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let data = self.data.iter().map(|e| e * c).collect();
        Self::new(self.rows, self.cols, data).unwrap()
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussianRational::from_int(-1))
    }

    /// Conjugate transpose `A*`.
    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).conj();
            }
        }
        out
    }

    /// `A^p` for square `A`, `p >= 1`.
    pub fn pow(&self, p: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("pow requires a square matrix".into()));
        }
        let mut out = self.clone();
        for _ in 1..p {
            out = out.mul(self)?;
        }
        Ok(out)
    }
}

/// Concatenate a grid of blocks. Row heights and column widths must be
/// consistent across the grid.
pub fn block_assemble(grid: &[Vec<Matrix>]) -> Result<Matrix> {
    if grid.is_empty() || grid.iter().any(|r| r.is_empty()) {
        return Err(Error::Dimension("empty block grid".into()));
    }
    let ncols = grid[0].len();
    if grid.iter().any(|r| r.len() != ncols) {
        return Err(Error::Dimension("ragged block grid".into()));
    }
    let heights: Vec<usize> = grid.iter().map(|r| r[0].rows()).collect();
    let widths: Vec<usize> = grid[0].iter().map(|b| b.cols()).collect();
    for (bi, row) in grid.iter().enumerate() {
        for (bj, blk) in row.iter().enumerate() {
            if blk.rows() != heights[bi] || blk.cols() != widths[bj] {
                return Err(Error::Dimension(format!(
                    "block ({bi},{bj}) is {}x{}, expected {}x{}",
                    blk.rows(),
                    blk.cols(),
                    heights[bi],
                    widths[bj]
                )));
            }
        }
    }
    let total_r: usize = heights.iter().sum();
    let total_c: usize = widths.iter().sum();
    let mut out = Matrix::zero(total_r, total_c);
    let mut roff = 0;
    for (bi, row) in grid.iter().enumerate() {
        let mut coff = 0;
        for blk in row {
            for i in 0..blk.rows() {
                for j in 0..blk.cols() {
                    *out.at_mut(roff + i, coff + j) = blk.at(i, j).clone();
                }
            }
            coff += blk.cols();
        }
        roff += heights[bi];
    }
    Ok(out)
}

pub fn hstack(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    block_assemble(&[vec![a.clone(), b.clone()]])
}

pub fn vstack(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    block_assemble(&[vec![a.clone()], vec![b.clone()]])
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

// --- JSON wire format ---

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryRepr {
    Real(String),
    Complex([String; 2]),
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<Vec<EntryRepr>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let data = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let e = self.at(i, j);
                        if e.im().is_zero() {
                            EntryRepr::Real(format_rational(e.re()))
                        } else {
                            EntryRepr::Complex([format_rational(e.re()), format_rational(e.im())])
                        }
                    })
                    .collect()
            })
            .collect();
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            data,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.data.len() != repr.rows {
            return Err(D::Error::custom(format!(
                "field 'data': expected {} rows, got {}",
                repr.rows,
                repr.data.len()
            )));
        }
        let mut data = Vec::with_capacity(repr.rows * repr.cols);
        for (i, row) in repr.data.iter().enumerate() {
            if row.len() != repr.cols {
                return Err(D::Error::custom(format!(
                    "field 'data' row {i}: expected {} entries, got {}",
                    repr.cols,
                    row.len()
                )));
            }
            for entry in row {
                let g = match entry {
                    EntryRepr::Real(s) => {
                        let re = parse_rational(s).map_err(D::Error::custom)?;
                        GaussianRational::new(re, num_traits::Zero::zero())
                    }
                    EntryRepr::Complex([rs, is]) => {
                        let re = parse_rational(rs).map_err(D::Error::custom)?;
                        let im = parse_rational(is).map_err(D::Error::custom)?;
                        GaussianRational::new(re, im)
                    }
                };
                data.push(g);
            }
        }
        Matrix::new(repr.rows, repr.cols, data).map_err(D::Error::custom)
    }
}
