//! Exact point counts over GF(q) and dimension estimates from counts at
//! several field sizes.
//!
//! The full count stratifies by the conjugacy class of the first
//! coordinate: summing, over the canonical square-zero classes, the orbit
//! size times the number of vanishing-p-th-power elements in the
//! centralizer of the class representative. The centralizer counts come
//! from exhaustive enumeration of the centralizer's linear span, except for
//! the rank-0 class, whose centralizer is all of gl(n): there the count is
//! the closed-form class-size sum, which enumeration confirms at small
//! sizes but which stays exact where enumeration would be astronomically
//! large.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::ff::Field;
use crate::matff::{enumerate_affine, EnumOpts, Mat};
use crate::nilpotent::{canonical_e, centralizer_basis, orbit_size, square_zero_count};

use super::VarietyError;

/// Counts the vanishing-p-th-power elements in the linear span of `basis`.
pub fn count_nullcone_in_span(basis: &[Mat], opts: &EnumOpts) -> Result<u64, VarietyError> {
    let count = enumerate_affine(
        basis,
        opts,
        || 0u64,
        |acc, _, m| {
            if m.is_pth_power_zero() {
                *acc += 1;
            }
        },
        |a, b| a + b,
    )?;
    Ok(count)
}

/// Number of basis elements of gl(n): the unit matrices in row-major order.
pub(crate) fn gl_basis(field: &Field, n: usize) -> Result<Vec<Mat>, VarietyError> {
    let mut basis = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            basis.push(Mat::unit(field, n, n, r, c)?);
        }
    }
    Ok(basis)
}

/// Counts elements with vanishing p-th power in the centralizer of the
/// canonical rank-i square-zero element of gl(n) over GF(q).
///
/// For i = 0 over characteristic 2 (or n <= 2 in any characteristic, where
/// every such element is square-zero) the centralizer is all of gl(n) and
/// the count equals the closed-form conjugacy-class sum; enumeration over
/// q^(n^2) points would be needed otherwise and is subject to the budget.
pub fn count_cent_nil(
    n: usize,
    i: usize,
    q: u64,
    opts: &EnumOpts,
) -> Result<BigUint, VarietyError> {
    let field = Field::from_order(q)?;
    if i == 0 {
        if field.has_char_2() || n <= 2 {
            return Ok(square_zero_count(n, q));
        }
        let basis = gl_basis(&field, n)?;
        return Ok(BigUint::from(count_nullcone_in_span(&basis, opts)?));
    }
    let e = canonical_e(&field, n, i)?;
    let basis = centralizer_basis(&e)?;
    Ok(BigUint::from(count_nullcone_in_span(&basis, opts)?))
}

/// Exact number of pairs (A, B) in gl(n, F_q)^2 with vanishing p-th powers
/// and [A, B] = 0, via the class stratification of the first coordinate.
/// Valid when every vanishing-p-th-power matrix is square-zero, i.e. in
/// characteristic 2 or for n <= 2.
pub fn count_pairs(n: usize, q: u64, opts: &EnumOpts) -> Result<BigUint, VarietyError> {
    let field = Field::from_order(q)?;
    if !field.has_char_2() && n > 2 {
        return Err(VarietyError::StratificationUnavailable { n, p: field.p() });
    }
    let mut total = BigUint::zero();
    for i in 0..=n / 2 {
        let orbit = orbit_size(n, i, q)?;
        let cent = count_cent_nil(n, i, q, opts)?;
        total += orbit * cent;
    }
    Ok(total)
}

/// Largest rank of the second coordinate over all pairs whose first
/// coordinate is the canonical rank-i element; found by enumerating the
/// centralizer span (all of gl(n) when i = 0).
pub fn max_second_rank(
    n: usize,
    i: usize,
    q: u64,
    opts: &EnumOpts,
) -> Result<usize, VarietyError> {
    let field = Field::from_order(q)?;
    let basis = if i == 0 {
        gl_basis(&field, n)?
    } else {
        let e = canonical_e(&field, n, i)?;
        centralizer_basis(&e)?
    };
    let best = enumerate_affine(
        &basis,
        opts,
        || 0usize,
        |acc, _, m| {
            if m.is_pth_power_zero() {
                let r = m.rank();
                if r > *acc {
                    *acc = r;
                }
            }
        },
        |a, b| a.max(b),
    )?;
    Ok(best)
}

/// Log-log slope and leading coefficient fitted to exact counts at two or
/// more field sizes: the slope uses the two largest sizes, and the leading
/// coefficient divides the largest count by q^(rounded slope).
#[derive(Debug, Clone, PartialEq)]
pub struct DimEstimate {
    pub dim: f64,
    pub dim_rounded: i64,
    pub leading: f64,
    pub leading_rounded: i64,
}

/// Natural log of a positive big integer, via the top bits.
fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53 bits fit");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Fits dimension and leading coefficient to (q, count) samples. Requires
/// at least two distinct sizes with nonzero counts.
pub fn estimate_dim(samples: &[(u64, BigUint)]) -> Result<DimEstimate, VarietyError> {
    let mut rows: Vec<&(u64, BigUint)> = samples.iter().filter(|(_, c)| !c.is_zero()).collect();
    rows.sort_by_key(|(q, _)| *q);
    rows.dedup_by_key(|r| r.0);
    if rows.len() < 2 {
        return Err(VarietyError::NotEnoughSamples);
    }
    let (q1, n1) = rows[rows.len() - 2];
    let (q2, n2) = rows[rows.len() - 1];
    let dim = (ln_big(n2) - ln_big(n1)) / ((*q2 as f64).ln() - (*q1 as f64).ln());
    let dim_rounded = dim.round() as i64;
    let leading = (ln_big(n2) - dim_rounded as f64 * (*q2 as f64).ln()).exp();
    Ok(DimEstimate {
        dim,
        dim_rounded,
        leading,
        leading_rounded: leading.round() as i64,
    })
}

/// One counted size in a census.
#[derive(Debug, Clone)]
pub struct CensusRow {
    pub n: usize,
    /// Rank of the canonical first coordinate, or None for the full count.
    pub i: Option<usize>,
    pub q: u64,
    pub count: BigUint,
    /// Enumeration work performed, in visited points (0 when closed forms
    /// cover everything).
    pub visits: u128,
    /// Wall-clock seconds, recorded only on request so that reports are
    /// byte-identical across runs and worker counts.
    pub elapsed: Option<f64>,
}

/// Census over several field sizes with fitted estimates attached when at
/// least two sizes are present.
#[derive(Debug, Clone)]
pub struct CensusReport {
    pub rows: Vec<CensusRow>,
    pub estimate: Option<DimEstimate>,
}

/// Enumeration visits needed for one (n, i, q) count, 0 where a closed form
/// answers.
fn visit_cost(n: usize, i: usize, q: u64) -> u128 {
    if i == 0 {
        let field = Field::from_order(q);
        if field.map(|f| f.has_char_2()).unwrap_or(false) || n <= 2 {
            return 0;
        }
        return (q as u128).saturating_pow((n * n) as u32);
    }
    let dim = (n - i) * (n - i) + i * i;
    (q as u128).saturating_pow(dim as u32)
}

/// Runs the count for each size in `qs` (full count when `i` is None) and
/// fits estimates. Timings are recorded only when `timings` is set.
pub fn census(
    n: usize,
    i: Option<usize>,
    qs: &[u64],
    opts: &EnumOpts,
    timings: bool,
) -> Result<CensusReport, VarietyError> {
    let mut rows = Vec::with_capacity(qs.len());
    for &q in qs {
        let start = Instant::now();
        let count = match i {
            Some(i) => count_cent_nil(n, i, q, opts)?,
            None => count_pairs(n, q, opts)?,
        };
        let elapsed = timings.then(|| start.elapsed().as_secs_f64());
        let visits = match i {
            Some(i) => visit_cost(n, i, q),
            None => (1..=n / 2).map(|i| visit_cost(n, i, q)).sum(),
        };
        rows.push(CensusRow {
            n,
            i,
            q,
            count,
            visits,
            elapsed,
        });
    }
    let samples: Vec<(u64, BigUint)> = rows.iter().map(|r| (r.q, r.count.clone())).collect();
    let estimate = estimate_dim(&samples).ok();
    Ok(CensusReport { rows, estimate })
}
