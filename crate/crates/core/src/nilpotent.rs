//! Nilpotent matrices up to conjugacy: Jordan types, canonical square-zero
//! representatives, centralizer bases, and exact conjugacy-class sizes over
//! GF(q).
//!
//! Jordan types are computed from the rank sequence r_k = rank(x^k): the
//! number of Jordan blocks of size s is r_{s-1} - 2 r_s + r_{s+1}. The
//! canonical square-zero element of rank i in gl(n) is written in a 3x3
//! block shape with an i x i identity in the top-right corner, so its
//! centralizer consists of block upper-triangular matrices with equal
//! corner blocks.
//!
//! Group orders are exact big integers: |GL(n, q)| via the standard product
//! formula, centralizer orders of the canonical elements via the unipotent
//! radical times a GL(n-2i) x GL(i) Levi factor, and orbit sizes as the
//! quotient, asserting exact divisibility.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ff::Field;
use crate::matff::{Mat, MatError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilpotentError {
    #[error("partition parts must be positive and non-increasing")]
    BadPartition,
    #[error("partition of {sum} does not fit dimension {n}")]
    PartitionSizeMismatch { sum: u64, n: usize },
    #[error("rank {i} is out of range for square-zero matrices in gl({n})")]
    RankOutOfRange { n: usize, i: usize },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// Non-increasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition, NilpotentError> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(NilpotentError::BadPartition);
        }
        Ok(Partition(parts))
    }

    /// The partition 2^i 1^(n-2i).
    pub fn two_one(n: usize, i: usize) -> Result<Partition, NilpotentError> {
        if 2 * i > n {
            return Err(NilpotentError::RankOutOfRange { n, i });
        }
        let mut parts = vec![2u32; i];
        parts.extend(std::iter::repeat(1).take(n - 2 * i));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// Conjugate partition: part j counts the parts of self that are > j.
    pub fn conjugate(&self) -> Partition {
        if self.0.is_empty() {
            return Partition(Vec::new());
        }
        let max = self.0[0] as usize;
        let mut parts = Vec::with_capacity(max);
        for j in 0..max {
            parts.push(self.0.iter().filter(|&&p| p as usize > j).count() as u32);
        }
        Partition(parts)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "]")
    }
}

/// Jordan type of a nilpotent matrix from its rank sequence.
pub fn jordan_type(x: &Mat) -> Result<Partition, NilpotentError> {
    if !x.is_square() {
        return Err(NilpotentError::Mat(MatError::NonSquare {
            rows: x.rows(),
            cols: x.cols(),
        }));
    }
    let n = x.rows();
    // ranks[k] = rank(x^k); stop once the power vanishes.
    let mut ranks = vec![n];
    let mut power = x.clone();
    loop {
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
        if ranks.len() > n + 1 {
            return Err(NilpotentError::NotNilpotent);
        }
        power = power.mul(x)?;
    }
    ranks.push(0);
    let mut parts = Vec::new();
    for s in (1..ranks.len() - 1).rev() {
        let mult = ranks[s - 1] + ranks[s + 1] - 2 * ranks[s];
        parts.extend(std::iter::repeat(s as u32).take(mult));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Partition(parts))
}

/// Canonical square-zero element of rank i in gl(n): in the block shape
/// (i, n-2i, i) it has an identity in the top-right corner and zeros
/// elsewhere, i.e. e_{1, n-i+1} + ... + e_{i, n}.
pub fn canonical_e(field: &Field, n: usize, i: usize) -> Result<Mat, NilpotentError> {
    if n == 0 || 2 * i > n {
        return Err(NilpotentError::RankOutOfRange { n, i });
    }
    let mut e = Mat::zeros(field, n, n)?;
    for r in 0..i {
        e.set(r, n - i + r, 1);
    }
    Ok(e)
}

/// Nilpotent Jordan matrix with the given block sizes, largest first.
pub fn jordan_matrix(field: &Field, lambda: &Partition) -> Result<Mat, NilpotentError> {
    let n = lambda.sum() as usize;
    if n == 0 {
        return Err(NilpotentError::BadPartition);
    }
    let mut m = Mat::zeros(field, n, n)?;
    let mut offset = 0usize;
    for &part in lambda.parts() {
        for r in 0..part as usize - 1 {
            m.set(offset + r, offset + r + 1, 1);
        }
        offset += part as usize;
    }
    Ok(m)
}

/// Basis of the centralizer of x in gl(n): the kernel of z -> xz - zx,
/// reshaped to matrices. Deterministic because the kernel basis of the
/// reduced echelon form is canonical.
pub fn centralizer_basis(x: &Mat) -> Result<Vec<Mat>, NilpotentError> {
    if !x.is_square() {
        return Err(NilpotentError::Mat(MatError::NonSquare {
            rows: x.rows(),
            cols: x.cols(),
        }));
    }
    let n = x.rows();
    let f = x.field();
    let mut op = Mat::zeros(f, n * n, n * n)?;
    // Row (r, c) of the operator holds the coefficients of (xz - zx)_{rc}
    // as a linear form in the entries z_{ab}.
    for r in 0..n {
        for c in 0..n {
            let row = r * n + c;
            for a in 0..n {
                // z_{ac} appears in (xz)_{rc} with coefficient x_{ra}.
                let coeff = x.at(r, a);
                if coeff != 0 {
                    let col = a * n + c;
                    op.set(row, col, f.add(op.at(row, col), coeff));
                }
                // z_{ra} appears in (zx)_{rc} with coefficient x_{ac}.
                let coeff = x.at(a, c);
                if coeff != 0 {
                    let col = r * n + a;
                    op.set(row, col, f.sub(op.at(row, col), coeff));
                }
            }
        }
    }
    let (_, kernel) = op.rank_kernel();
    kernel
        .into_iter()
        .map(|v| Mat::from_entries(f, n, n, v).map_err(NilpotentError::from))
        .collect()
}

/// dim of the centralizer of a nilpotent of the given Jordan type:
/// the sum of squares of the conjugate partition.
pub fn dim_centralizer(lambda: &Partition) -> u64 {
    lambda
        .conjugate()
        .parts()
        .iter()
        .map(|&p| (p as u64) * (p as u64))
        .sum()
}

/// |GL(n, q)| = q^(n(n-1)/2) * prod_{i=1..n} (q^i - 1), exactly.
/// |GL(0, q)| = 1 by the empty product.
pub fn gl_order(n: usize, q: u64) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let q = BigUint::from(q);
    let mut order = q.pow((n * (n - 1) / 2) as u32);
    for i in 1..=n {
        order *= q.pow(i as u32) - BigUint::one();
    }
    order
}

/// Order of the GL(n, q)-centralizer of the canonical rank-i square-zero
/// element: q^(d - (n-2i)^2 - i^2) * |GL(n-2i, q)| * |GL(i, q)| where d is
/// the Lie-algebra centralizer dimension (n-i)^2 + i^2.
pub fn centralizer_group_order(n: usize, i: usize, q: u64) -> Result<BigUint, NilpotentError> {
    if 2 * i > n {
        return Err(NilpotentError::RankOutOfRange { n, i });
    }
    let m1 = n - 2 * i;
    let m2 = i;
    let d = (n - i) * (n - i) + i * i;
    let unipotent = BigUint::from(q).pow((d - m1 * m1 - m2 * m2) as u32);
    Ok(unipotent * gl_order(m1, q) * gl_order(m2, q))
}

/// Number of square-zero matrices of rank i in gl(n, F_q): the orbit size
/// |GL(n, q)| / |centralizer|. The division is exact; a remainder would be
/// an internal error.
pub fn orbit_size(n: usize, i: usize, q: u64) -> Result<BigUint, NilpotentError> {
    let g = gl_order(n, q);
    let c = centralizer_group_order(n, i, q)?;
    let rem = &g % &c;
    assert!(rem.is_zero(), "centralizer order must divide group order");
    Ok(g / c)
}

/// Number of square-zero matrices in gl(n, F_q), summed over all ranks.
pub fn square_zero_count(n: usize, q: u64) -> BigUint {
    let mut total = BigUint::zero();
    for i in 0..=n / 2 {
        total += orbit_size(n, i, q).expect("rank range is valid");
    }
    total
}

/// Torus weights attached to a Jordan type: each block of size s
/// contributes s-1, s-3, ..., 1-s, blocks in partition order. Conjugation
/// by the corresponding one-parameter subgroup scales e_{ab} by
/// t^(w_a - w_b), and the Jordan matrix of the partition is homogeneous of
/// degree 2.
pub fn cocharacter_weights(lambda: &Partition) -> Vec<i64> {
    let mut weights = Vec::with_capacity(lambda.sum() as usize);
    for &part in lambda.parts() {
        let s = part as i64;
        for j in 0..s {
            weights.push(s - 1 - 2 * j);
        }
    }
    weights
}
