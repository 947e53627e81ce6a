//! Bit-packed GF(2) matrices: one bit per entry, rows padded to 64-bit
//! words. Addition is XOR, multiplication XORs whole rows, and echelon
//! reduction eliminates with one XOR per row. Since reduced row echelon
//! form is unique, rank, kernel and products computed here coincide exactly
//! with the generic path; `Mat` dispatches to this engine whenever the
//! field is GF(2).

use crate::ff::{Elem, Field};
use super::Mat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedMat {
    rows: usize,
    cols: usize,
    /// Words per row.
    wpr: usize,
    words: Vec<u64>,
}

impl PackedMat {
    pub fn zeros(rows: usize, cols: usize) -> PackedMat {
        let wpr = cols.div_ceil(64);
        PackedMat {
            rows,
            cols,
            wpr,
            words: vec![0; rows * wpr],
        }
    }

    /// Packs a GF(2) matrix. Panics if the field is not GF(2); the caller
    /// dispatches on the field order.
    pub fn from_mat(m: &Mat) -> PackedMat {
        assert_eq!(m.field().q(), 2, "packed representation is GF(2) only");
        let mut out = PackedMat::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for (c, &v) in m.row(r).iter().enumerate() {
                if v != 0 {
                    out.set(r, c, true);
                }
            }
        }
        out
    }

    pub fn to_mat(&self, field: &Field) -> Mat {
        assert_eq!(field.q(), 2);
        let mut entries = vec![0 as Elem; self.rows * self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    entries[r * self.cols + c] = 1;
                }
            }
        }
        Mat::from_entries(field, self.rows, self.cols, entries).expect("dims are nonzero")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.words[r * self.wpr + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.words[r * self.wpr + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.wpr..(r + 1) * self.wpr]
    }

    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.wpr, dst * self.wpr);
        for i in 0..self.wpr {
            self.words[d + i] ^= self.words[s + i];
        }
    }

    pub fn add(&self, other: &PackedMat) -> PackedMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (o, &w) in out.words.iter_mut().zip(other.words.iter()) {
            *o ^= w;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn mul(&self, other: &PackedMat) -> PackedMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = PackedMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let arow = self.row_words(i);
            for (wi, &word) in arow.iter().enumerate() {
                let mut w = word;
                while w != 0 {
                    let k = wi * 64 + w.trailing_zeros() as usize;
                    w &= w - 1;
                    let brow = other.row_words(k);
                    let orow = &mut out.words[i * out.wpr..(i + 1) * out.wpr];
                    for (o, &b) in orow.iter_mut().zip(brow.iter()) {
                        *o ^= b;
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns; same elimination order as
    /// the generic path, and the result is the unique RREF either way.
    pub fn rref(&self) -> (PackedMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for pc in 0..m.cols {
            let mut pivot = None;
            for r in pr..m.rows {
                if m.get(r, pc) {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(pivot) = pivot else { continue };
            if pivot != pr {
                for i in 0..m.wpr {
                    m.words.swap(pr * m.wpr + i, pivot * m.wpr + i);
                }
            }
            for r in 0..m.rows {
                if r != pr && m.get(r, pc) {
                    m.xor_row_into(pr, r);
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
        self.rref().1.len()
    }

    /// Canonical kernel basis in the same format as the generic path.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Elem>>) {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0 as Elem; self.cols];
            v[free] = 1;
            for (prow, &pcol) in pivots.iter().enumerate() {
                if pcol < free && r.get(prow, free) {
                    v[pcol] = 1;
                }
            }
            basis.push(v);
        }
        (pivots.len(), basis)
    }
}
