//! Dense matrices over the fields in [`crate::ff`].
//!
//! A [`Mat`] is a row-major grid of element encodings tied to a concrete
//! field handle. All binary operations check that the two operands live over
//! the same field and have compatible shapes, and return structured errors
//! instead of panicking.
//!
//! Rank, kernel and inverse go through one canonical reduced-row-echelon
//! routine, so kernel bases are unique and reproducible: the basis vector
//! for each free column carries a 1 there and the negated echelon entries in
//! the pivot coordinates. Over GF(2) the same operations are dispatched to
//! the bit-packed engine in [`packed`], which produces bit-identical
//! results.
//!
//! [`enumerate::enumerate_affine`] walks every F_q-linear combination of a
//! basis of matrices under an explicit visit budget; it is the workhorse
//! behind all exhaustive counts in the higher layers.

pub mod enumerate;
pub mod packed;

pub use enumerate::{combination_count, enumerate_affine, EnumOpts, DEFAULT_BUDGET};

use std::fmt;

use thiserror::Error;

use crate::ff::{Elem, Field, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error("matrix dimensions must be at least 1x1")]
    EmptyDims,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch in {op}: {lhs:?} vs {rhs:?}")]
    DimMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    #[error("operation requires a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("coefficient matrix does not have full column rank")]
    RankDeficient,
    #[error("entry {value} at ({row}, {col}) is not an element of a field of order {q}")]
    BadEntry {
        row: usize,
        col: usize,
        value: u32,
        q: u32,
    },
    #[error("wrong entry count: {rows}x{cols} needs {expected}, got {got}")]
    BadEntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("enumeration basis is empty")]
    EmptyBasis,
    #[error("enumeration of {required} points exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("block sizes do not sum to the matrix dimensions")]
    BlockMismatch,
    #[error("block ({0}, {1}) has a zero dimension")]
    EmptyBlock(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Dense matrix over a fixed finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Result<Mat, MatError> {
        if rows == 0 || cols == 0 {
            return Err(MatError::EmptyDims);
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(field: &Field, n: usize) -> Result<Mat, MatError> {
        let mut m = Mat::zeros(field, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// Matrix unit with a single 1 at (row, col), 0-indexed.
    pub fn unit(field: &Field, rows: usize, cols: usize, row: usize, col: usize) -> Result<Mat, MatError> {
        let mut m = Mat::zeros(field, rows, cols)?;
        m.set(row, col, 1);
        Ok(m)
    }

    pub fn from_entries(
        field: &Field,
        rows: usize,
        cols: usize,
        entries: Vec<Elem>,
    ) -> Result<Mat, MatError> {
        if rows == 0 || cols == 0 {
            return Err(MatError::EmptyDims);
        }
        if entries.len() != rows * cols {
            return Err(MatError::BadEntryCount {
                rows,
                cols,
                expected: rows * cols,
                got: entries.len(),
            });
        }
        for (i, &v) in entries.iter().enumerate() {
            if !field.contains(v) {
                return Err(MatError::BadEntry {
                    row: i / cols,
                    col: i % cols,
                    value: v as u32,
                    q: field.q(),
                });
            }
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data: entries,
        })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Mat, MatError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(MatError::EmptyDims);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatError::BadEntryCount {
                rows: rows.len(),
                cols,
                expected: cols,
                got: rows.iter().map(Vec::len).find(|&l| l != cols).unwrap_or(0),
            });
        }
        let flat: Vec<Elem> = rows.into_iter().flatten().collect();
        let n = flat.len() / cols;
        Mat::from_entries(field, n, cols, flat)
    }

    /// Column vector from coordinates.
    pub fn col_vector(field: &Field, coords: &[Elem]) -> Result<Mat, MatError> {
        Mat::from_entries(field, coords.len(), 1, coords.to_vec())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Elem {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        debug_assert!(r < self.rows && c < self.cols);
        debug_assert!(self.field.contains(v));
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn check_same_shape(&self, other: &Mat, op: &'static str) -> Result<(), MatError> {
        if self.field != other.field {
            return Err(MatError::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatError::DimMismatch {
                op,
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, MatError> {
        self.check_same_shape(other, "add")?;
        let mut out = self.clone();
        for (o, &v) in out.data.iter_mut().zip(other.data.iter()) {
            *o = self.field.add(*o, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, MatError> {
        self.check_same_shape(other, "sub")?;
        let mut out = self.clone();
        for (o, &v) in out.data.iter_mut().zip(other.data.iter()) {
            *o = self.field.sub(*o, v);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Mat {
        let mut out = self.clone();
        for o in out.data.iter_mut() {
            *o = self.field.neg(*o);
        }
        out
    }

    pub fn scale(&self, c: Elem) -> Mat {
        let mut out = self.clone();
        for o in out.data.iter_mut() {
            *o = self.field.mul(*o, c);
        }
        out
    }

    /// `self += c * other`, shapes already validated by the caller.
    #[inline]
    pub(crate) fn add_scaled_in_place(&mut self, other: &Mat, c: Elem) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c == 0 {
            return;
        }
        if self.field.has_char_2() {
            if c == 1 {
                for (o, &v) in self.data.iter_mut().zip(other.data.iter()) {
                    *o ^= v;
                }
            } else {
                for (o, &v) in self.data.iter_mut().zip(other.data.iter()) {
                    *o ^= self.field.mul(c, v);
                }
            }
        } else {
            for (o, &v) in self.data.iter_mut().zip(other.data.iter()) {
                *o = self.field.add(*o, self.field.mul(c, v));
            }
        }
    }

    pub(crate) fn copy_from(&mut self, other: &Mat) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.copy_from_slice(&other.data);
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, MatError> {
        if self.field != other.field {
            return Err(MatError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(MatError::DimMismatch {
                op: "mul",
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        if self.field.q() == 2 {
            let a = packed::PackedMat::from_mat(self);
            let b = packed::PackedMat::from_mat(other);
            return Ok(a.mul(&b).to_mat(&self.field));
        }
        Ok(self.mul_generic(other))
    }

    /// Schoolbook product; the reference path for any field, and the one the
    /// packed GF(2) engine is checked against.
    pub fn mul_generic(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let mut out = Mat {
            field: f.clone(),
            rows: self.rows,
            cols: other.cols,
            data: vec![0; self.rows * other.cols],
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if aik == 0 {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * out.cols..(i + 1) * out.cols];
                for (o, &b) in orow.iter_mut().zip(brow.iter()) {
                    if b != 0 {
                        *o = f.add(*o, f.mul(aik, b));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data: vec![0; self.data.len()],
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.at(r, c);
            }
        }
        out
    }

    /// Matrix power by repeated squaring; `pow(0)` is the identity.
    pub fn pow(&self, e: u32) -> Result<Mat, MatError> {
        if !self.is_square() {
            return Err(MatError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut result = Mat::identity(&self.field, self.rows)?;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// `self^p` where p is the field characteristic.
    pub fn pth_power(&self) -> Result<Mat, MatError> {
        self.pow(self.field.p())
    }

    /// Whether the p-th matrix power vanishes. In characteristic 2 this is
    /// an entry-by-entry check of the square with early exit, which is what
    /// the exhaustive counts spend most of their time in.
    pub fn is_pth_power_zero(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let f = &self.field;
        if f.p() == 2 {
            for i in 0..n {
                let arow = self.row(i);
                for j in 0..n {
                    let mut acc: Elem = 0;
                    for (k, &aik) in arow.iter().enumerate() {
                        if aik != 0 {
                            let b = self.at(k, j);
                            if b != 0 {
                                acc ^= f.mul(aik, b);
                            }
                        }
                    }
                    if acc != 0 {
                        return false;
                    }
                }
            }
            return true;
        }
        self.pth_power().map(|m| m.is_zero()).unwrap_or(false)
    }

    /// `a*b - b*a`.
    pub fn commutator(&self, other: &Mat) -> Result<Mat, MatError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn commutes_with(&self, other: &Mat) -> Result<bool, MatError> {
        Ok(self.commutator(other)?.is_zero())
    }

    /// Row-major concatenation `[self | other]`.
    pub fn hcat(&self, other: &Mat) -> Result<Mat, MatError> {
        if self.field != other.field {
            return Err(MatError::FieldMismatch);
        }
        if self.rows != other.rows {
            return Err(MatError::DimMismatch {
                op: "hcat",
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Vertical concatenation, `self` on top.
    pub fn vcat(&self, other: &Mat) -> Result<Mat, MatError> {
        if self.field != other.field {
            return Err(MatError::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(MatError::DimMismatch {
                op: "vcat",
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Result<Mat, MatError> {
        if r0 >= r1 || c0 >= c1 || r1 > self.rows || c1 > self.cols {
            return Err(MatError::EmptyDims);
        }
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for r in r0..r1 {
            data.extend_from_slice(&self.row(r)[c0..c1]);
        }
        Ok(Mat {
            field: self.field.clone(),
            rows: r1 - r0,
            cols: c1 - c0,
            data,
        })
    }

    /// Block-diagonal sum, `self` in the top-left corner.
    pub fn direct_sum(&self, other: &Mat) -> Result<Mat, MatError> {
        if self.field != other.field {
            return Err(MatError::FieldMismatch);
        }
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut out = Mat::zeros(&self.field, rows, cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.at(r, c));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form together with the pivot column list.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        if self.field.q() == 2 {
            let p = packed::PackedMat::from_mat(self);
            let (r, pivots) = p.rref();
            return (r.to_mat(&self.field), pivots);
        }
        self.rref_generic()
    }

    pub(crate) fn rref_generic(&self) -> (Mat, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for pc in 0..m.cols {
            let mut pivot = None;
            for r in pr..m.rows {
                if m.at(r, pc) != 0 {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(pivot) = pivot else { continue };
            if pivot != pr {
                for c in 0..m.cols {
                    let a = m.at(pr, c);
                    let b = m.at(pivot, c);
                    m.set(pr, c, b);
                    m.set(pivot, c, a);
                }
            }
            let inv = f.inv(m.at(pr, pc)).expect("pivot is nonzero");
            if inv != 1 {
                for c in pc..m.cols {
                    let v = m.at(pr, c);
                    m.set(pr, c, f.mul(v, inv));
                }
            }
            for r in 0..m.rows {
                if r == pr {
                    continue;
                }
                let factor = m.at(r, pc);
                if factor == 0 {
                    continue;
                }
                for c in pc..m.cols {
                    let v = f.sub(m.at(r, c), f.mul(factor, m.at(pr, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(pc);
            pr += 1;
            if pr == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.field.q() == 2 {
            return packed::PackedMat::from_mat(self).rank();
        }
        self.rref_generic().1.len()
    }

    /// Rank together with the canonical kernel basis: one vector per free
    /// column in ascending order, with 1 in the free coordinate and the
    /// negated echelon entries in the pivot coordinates.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Elem>>) {
        let (r, pivots) = self.rref();
        (pivots.len(), kernel_from_rref(&r, &pivots))
    }

    /// Same contract as [`Mat::rank_kernel`] on the schoolbook elimination
    /// path, bypassing the packed GF(2) engine; kept public so differential
    /// tests can compare the two routes.
    pub fn rank_kernel_generic(&self) -> (usize, Vec<Vec<Elem>>) {
        let (r, pivots) = self.rref_generic();
        (pivots.len(), kernel_from_rref(&r, &pivots))
    }

    pub fn inverse(&self) -> Result<Mat, MatError> {
        if !self.is_square() {
            return Err(MatError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = self.hcat(&Mat::identity(&self.field, n)?)?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(MatError::Singular);
        }
        r.submatrix(0, n, n, 2 * n)
    }

    /// `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &Mat) -> Result<Mat, MatError> {
        let gi = g.inverse()?;
        g.mul(self)?.mul(&gi)
    }

    /// The involution x -> -J x^T J^-1 with J the antidiagonal identity;
    /// entry (i, j) of the output is -x(n-1-j, n-1-i).
    pub fn theta_dual(&self) -> Result<Mat, MatError> {
        if !self.is_square() {
            return Err(MatError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut out = Mat::zeros(&self.field, n, n)?;
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.field.neg(self.at(n - 1 - j, n - 1 - i)));
            }
        }
        Ok(out)
    }

    /// Solves `self * x = rhs` where `self` has full column rank; the
    /// unique solution exists iff every rhs column lies in the column space.
    pub fn solve_exact(&self, rhs: &Mat) -> Result<Mat, MatError> {
        if self.field != rhs.field {
            return Err(MatError::FieldMismatch);
        }
        if self.rows != rhs.rows {
            return Err(MatError::DimMismatch {
                op: "solve",
                lhs: (self.rows, self.cols),
                rhs: (rhs.rows, rhs.cols),
            });
        }
        let aug = self.hcat(rhs)?;
        let (r, pivots) = aug.rref();
        let rank_lhs = pivots.iter().filter(|&&c| c < self.cols).count();
        if rank_lhs < self.cols {
            return Err(MatError::RankDeficient);
        }
        if pivots.len() > rank_lhs {
            return Err(MatError::Inconsistent);
        }
        r.submatrix(0, self.cols, self.cols, self.cols + rhs.cols)
    }

    /// Canonical basis of the column space, as column vectors.
    pub fn column_space_basis(&self) -> Vec<Vec<Elem>> {
        let (r, pivots) = self.transpose().rref();
        pivots
            .iter()
            .enumerate()
            .map(|(i, _)| r.row(i).to_vec())
            .collect()
    }
}

fn kernel_from_rref(r: &Mat, pivots: &[usize]) -> Vec<Vec<Elem>> {
    let f = r.field();
    let cols = r.cols();
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::with_capacity(cols - pivots.len());
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![0 as Elem; cols];
        v[free] = 1;
        for (prow, &pcol) in pivots.iter().enumerate() {
            if pcol < free {
                v[pcol] = f.neg(r.at(prow, free));
            }
        }
        basis.push(v);
    }
    basis
}

/// Partition of the row and column index ranges into consecutive blocks.
/// Zero-size parts are allowed so degenerate middle blocks can be described
/// uniformly; extracting such a block is an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpec {
    row_parts: Vec<usize>,
    col_parts: Vec<usize>,
    row_offsets: Vec<usize>,
    col_offsets: Vec<usize>,
}

fn offsets(parts: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(parts.len() + 1);
    let mut acc = 0;
    out.push(0);
    for &p in parts {
        acc += p;
        out.push(acc);
    }
    out
}

impl BlockSpec {
    pub fn new(row_parts: Vec<usize>, col_parts: Vec<usize>) -> BlockSpec {
        let row_offsets = offsets(&row_parts);
        let col_offsets = offsets(&col_parts);
        BlockSpec {
            row_parts,
            col_parts,
            row_offsets,
            col_offsets,
        }
    }

    pub fn square(parts: &[usize]) -> BlockSpec {
        BlockSpec::new(parts.to_vec(), parts.to_vec())
    }

    pub fn total_rows(&self) -> usize {
        *self.row_offsets.last().unwrap()
    }

    pub fn total_cols(&self) -> usize {
        *self.col_offsets.last().unwrap()
    }

    pub fn row_part(&self, i: usize) -> usize {
        self.row_parts[i]
    }

    pub fn col_part(&self, j: usize) -> usize {
        self.col_parts[j]
    }

    pub fn matches(&self, m: &Mat) -> bool {
        m.rows() == self.total_rows() && m.cols() == self.total_cols()
    }

    pub fn extract(&self, m: &Mat, bi: usize, bj: usize) -> Result<Mat, MatError> {
        if !self.matches(m) {
            return Err(MatError::BlockMismatch);
        }
        if self.row_parts[bi] == 0 || self.col_parts[bj] == 0 {
            return Err(MatError::EmptyBlock(bi, bj));
        }
        m.submatrix(
            self.row_offsets[bi],
            self.row_offsets[bi + 1],
            self.col_offsets[bj],
            self.col_offsets[bj + 1],
        )
    }

    pub fn insert(&self, m: &mut Mat, bi: usize, bj: usize, block: &Mat) -> Result<(), MatError> {
        if !self.matches(m) {
            return Err(MatError::BlockMismatch);
        }
        if block.rows() != self.row_parts[bi] || block.cols() != self.col_parts[bj] {
            return Err(MatError::BlockMismatch);
        }
        let r0 = self.row_offsets[bi];
        let c0 = self.col_offsets[bj];
        for r in 0..block.rows() {
            for c in 0..block.cols() {
                m.set(r0 + r, c0 + c, block.at(r, c));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::from_order(q).unwrap()
    }

    #[test]
    fn constructors_validate() {
        let f = gf(4);
        assert!(matches!(Mat::zeros(&f, 0, 3), Err(MatError::EmptyDims)));
        assert!(matches!(
            Mat::from_entries(&f, 2, 2, vec![0, 1, 2]),
            Err(MatError::BadEntryCount { .. })
        ));
        let err = Mat::from_entries(&f, 2, 2, vec![0, 1, 2, 4]).unwrap_err();
        assert_eq!(
            err,
            MatError::BadEntry {
                row: 1,
                col: 1,
                value: 4,
                q: 4
            }
        );
    }

    #[test]
    fn mul_matches_hand_example() {
        let f = gf(3);
        let a = Mat::from_rows(&f, vec![vec![1, 2], vec![0, 1]]).unwrap();
        let b = Mat::from_rows(&f, vec![vec![2, 1], vec![1, 1]]).unwrap();
        // [[1,2],[0,1]] * [[2,1],[1,1]] = [[4,3],[1,1]] = [[1,0],[1,1]] mod 3
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, Mat::from_rows(&f, vec![vec![1, 0], vec![1, 1]]).unwrap());
    }

    #[test]
    fn field_and_shape_mismatches_are_rejected() {
        let f2 = gf(2);
        let f4 = gf(4);
        let a = Mat::identity(&f2, 2).unwrap();
        let b = Mat::identity(&f4, 2).unwrap();
        assert!(matches!(a.add(&b), Err(MatError::FieldMismatch)));
        let c = Mat::zeros(&f2, 2, 3).unwrap();
        assert!(matches!(a.add(&c), Err(MatError::DimMismatch { .. })));
        assert!(matches!(c.mul(&c), Err(MatError::DimMismatch { .. })));
        assert!(matches!(c.pow(2), Err(MatError::NonSquare { .. })));
    }

    #[test]
    fn rank_kernel_hand_example() {
        // x = e12 + e34 over GF(2): rank 2, kernel spanned by coordinates
        // 0 and 2 (0-indexed).
        let f = gf(2);
        let mut x = Mat::zeros(&f, 4, 4).unwrap();
        x.set(0, 1, 1);
        x.set(2, 3, 1);
        let (rank, kernel) = x.rank_kernel();
        assert_eq!(rank, 2);
        assert_eq!(kernel, vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0]]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = gf(9);
        let m = Mat::from_rows(
            &f,
            vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 0, 5]],
        )
        .unwrap();
        let (rank, kernel) = m.rank_kernel();
        assert_eq!(rank + kernel.len(), 4);
        for v in &kernel {
            let col = Mat::col_vector(&f, v).unwrap();
            assert!(m.mul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn inverse_round_trips() {
        let f = gf(7);
        let m = Mat::from_rows(&f, vec![vec![1, 2, 0], vec![0, 1, 5], vec![3, 0, 1]]).unwrap();
        let mi = m.inverse().unwrap();
        assert_eq!(m.mul(&mi).unwrap(), Mat::identity(&f, 3).unwrap());
        let singular = Mat::from_rows(&f, vec![vec![1, 2], vec![2, 4]]).unwrap();
        assert!(matches!(singular.inverse(), Err(MatError::Singular)));
    }

    #[test]
    fn conjugation_preserves_rank_and_nilpotency() {
        let f = gf(2);
        let mut x = Mat::zeros(&f, 3, 3).unwrap();
        x.set(0, 2, 1);
        let g = Mat::from_rows(&f, vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]).unwrap();
        let y = x.conjugate_by(&g).unwrap();
        assert_eq!(y.rank(), x.rank());
        assert!(y.is_pth_power_zero());
    }

    #[test]
    fn theta_dual_fixes_e12_in_char_2() {
        let f = gf(2);
        let mut x = Mat::zeros(&f, 2, 2).unwrap();
        x.set(0, 1, 1);
        assert_eq!(x.theta_dual().unwrap(), x);
    }

    #[test]
    fn theta_dual_is_an_involution() {
        let f = gf(5);
        let m = Mat::from_rows(&f, vec![vec![1, 2, 3], vec![4, 0, 1], vec![2, 2, 0]]).unwrap();
        assert_eq!(m.theta_dual().unwrap().theta_dual().unwrap(), m);
    }

    #[test]
    fn pth_power_zero_matches_slow_path() {
        let f = gf(3);
        let mut x = Mat::zeros(&f, 3, 3).unwrap();
        x.set(0, 1, 1);
        x.set(1, 2, 1);
        // Jordan block of size 3: x^2 != 0 but x^3 = 0.
        assert!(!x.mul(&x).unwrap().is_zero());
        assert!(x.is_pth_power_zero());
        assert!(x.pth_power().unwrap().is_zero());
    }

    #[test]
    fn solve_exact_recovers_restriction() {
        let f = gf(2);
        let p = Mat::from_rows(&f, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let rhs = Mat::from_rows(&f, vec![vec![1], vec![0], vec![1]]).unwrap();
        let x = p.solve_exact(&rhs).unwrap();
        assert_eq!(p.mul(&x).unwrap(), rhs);
        let bad = Mat::from_rows(&f, vec![vec![1], vec![0], vec![0]]).unwrap();
        assert!(matches!(p.solve_exact(&bad), Err(MatError::Inconsistent)));
    }

    #[test]
    fn block_spec_round_trips() {
        let f = gf(2);
        let spec = BlockSpec::new(vec![1, 2, 1], vec![1, 2, 1]);
        let mut m = Mat::zeros(&f, 4, 4).unwrap();
        let block = Mat::from_rows(&f, vec![vec![1, 0], vec![1, 1]]).unwrap();
        spec.insert(&mut m, 1, 1, &block).unwrap();
        assert_eq!(spec.extract(&m, 1, 1).unwrap(), block);
        assert_eq!(m.at(1, 1), 1);
        let degenerate = BlockSpec::new(vec![2, 0, 2], vec![2, 0, 2]);
        let m4 = Mat::zeros(&f, 4, 4).unwrap();
        assert!(matches!(
            degenerate.extract(&m4, 1, 1),
            Err(MatError::EmptyBlock(1, 1))
        ));
        assert!(degenerate.matches(&m4));
    }

    #[test]
    fn column_space_basis_spans_image() {
        let f = gf(2);
        let m = Mat::from_rows(&f, vec![vec![1, 1, 0], vec![0, 0, 0], vec![1, 1, 0]]).unwrap();
        let basis = m.column_space_basis();
        assert_eq!(basis.len(), m.rank());
        assert_eq!(basis, vec![vec![1, 0, 1]]);
    }
}
