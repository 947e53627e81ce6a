//! Exhaustive enumeration of all F_q-linear combinations of a fixed list of
//! matrices.
//!
//! Combinations are visited in a defined order: the coefficient vector runs
//! lexicographically with the coefficient of basis element 0 varying
//! fastest, and the visit index is exactly the mixed-radix value of the
//! encoding vector. That makes the index range splittable: workers process
//! disjoint consecutive ranges and their partial aggregates are merged in
//! range order, so any commutative-associative aggregation is independent
//! of the worker count.
//!
//! Each worker keeps one partial sum per basis level and updates only the
//! levels below the highest coefficient that changed, which costs an
//! amortized constant number of scaled row additions per visit. The visit
//! budget is checked before anything runs; exceeding it is an error, never
//! a silent truncation.

use std::num::NonZeroUsize;

use crate::ff::Elem;
use super::{Mat, MatError};

/// Default visit budget, 2^34.
pub const DEFAULT_BUDGET: u64 = 1 << 34;

/// Budget and parallelism knobs for [`enumerate_affine`].
#[derive(Debug, Clone)]
pub struct EnumOpts {
    /// Maximum number of combinations that may be visited.
    pub budget: u64,
    /// Number of worker threads; the aggregate does not depend on it.
    pub workers: usize,
}

impl Default for EnumOpts {
    fn default() -> EnumOpts {
        EnumOpts {
            budget: DEFAULT_BUDGET,
            workers: std::thread::available_parallelism()
                .map(NonZeroUsize::get)
                .unwrap_or(1),
        }
    }
}

impl EnumOpts {
    pub fn with_budget(budget: u64) -> EnumOpts {
        EnumOpts {
            budget,
            ..EnumOpts::default()
        }
    }

    pub fn serial() -> EnumOpts {
        EnumOpts {
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

/// Number of combinations of `dim` coefficients over a field of order `q`,
/// saturating at `u128::MAX`.
pub fn combination_count(q: u32, dim: usize) -> u128 {
    let mut total: u128 = 1;
    for _ in 0..dim {
        total = total.saturating_mul(q as u128);
    }
    total
}

/// Visits every F_q-linear combination of `basis` exactly once.
///
/// `init` builds a per-worker accumulator, `visit` folds one combination
/// into it (the matrix reference is a scratch buffer owned by the worker and
/// only valid during the call), and `merge` combines accumulators; it must
/// be commutative and associative for the result to be independent of the
/// worker count. The visit index is the mixed-radix encoding of the
/// coefficient vector.
pub fn enumerate_affine<A, I, V, M>(
    basis: &[Mat],
    opts: &EnumOpts,
    init: I,
    visit: V,
    merge: M,
) -> Result<A, MatError>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, u64, &Mat) + Sync,
    M: Fn(A, A) -> A,
{
    let Some(first) = basis.first() else {
        return Err(MatError::EmptyBasis);
    };
    for m in &basis[1..] {
        first.check_same_shape(m, "enumerate_affine")?;
    }
    let q = first.field().q();
    let total = combination_count(q, basis.len());
    if total > opts.budget as u128 {
        return Err(MatError::BudgetExceeded {
            required: total,
            budget: opts.budget,
        });
    }
    let total = total as u64;
    let workers = opts.workers.max(1).min(64);
    // Splitting tiny ranges buys nothing.
    let workers = if total < 4096 { 1 } else { workers as u64 };
    if workers == 1 {
        let mut acc = init();
        walk_range(basis, q, 0, total, &mut |a, i, m| visit(a, i, m), &mut acc);
        return Ok(acc);
    }
    let bounds: Vec<(u64, u64)> = (0..workers)
        .map(|w| {
            (
                (total as u128 * w as u128 / workers as u128) as u64,
                (total as u128 * (w + 1) as u128 / workers as u128) as u64,
            )
        })
        .collect();
    let parts = std::thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(lo, hi)| {
                let visit = &visit;
                let init = &init;
                scope.spawn(move || {
                    let mut acc = init();
                    walk_range(basis, q, lo, hi, &mut |a, i, m| visit(a, i, m), &mut acc);
                    acc
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect::<Vec<A>>()
    });
    let mut iter = parts.into_iter();
    let head = iter.next().expect("at least one worker");
    Ok(iter.fold(head, merge))
}

/// Walks visit indices `lo..hi` in order, maintaining partial sums
/// `partial[j] = sum over i >= j of coeff_i * basis_i` so that a change of
/// the coefficient at level j only recomputes levels j..0.
fn walk_range<A>(
    basis: &[Mat],
    q: u32,
    lo: u64,
    hi: u64,
    visit: &mut dyn FnMut(&mut A, u64, &Mat),
    acc: &mut A,
) {
    if lo >= hi {
        return;
    }
    let d = basis.len();
    let mut digits = vec![0u32; d];
    let mut rem = lo;
    for digit in digits.iter_mut() {
        *digit = (rem % q as u64) as u32;
        rem /= q as u64;
    }
    let field = basis[0].field().clone();
    let zero = Mat::zeros(&field, basis[0].rows(), basis[0].cols()).expect("nonzero dims");
    // partial[d] stays the zero matrix; partial[j] includes levels j..d-1.
    let mut partial: Vec<Mat> = vec![zero; d + 1];
    for j in (0..d).rev() {
        let upper = partial[j + 1].clone();
        partial[j].copy_from(&upper);
        partial[j].add_scaled_in_place(&basis[j], digits[j] as Elem);
    }
    let mut idx = lo;
    loop {
        visit(acc, idx, &partial[0]);
        idx += 1;
        if idx == hi {
            return;
        }
        // Mixed-radix increment: find the lowest level that does not wrap.
        let mut level = 0usize;
        while digits[level] as u64 == q as u64 - 1 {
            digits[level] = 0;
            level += 1;
        }
        digits[level] += 1;
        for j in (0..=level).rev() {
            let (lower, upper) = partial.split_at_mut(j + 1);
            lower[j].copy_from(&upper[0]);
            lower[j].add_scaled_in_place(&basis[j], digits[j] as Elem);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Field;

    fn unit(f: &Field, n: usize, r: usize, c: usize) -> Mat {
        Mat::unit(f, n, n, r, c).unwrap()
    }

    #[test]
    fn visit_order_is_low_index_fastest() {
        let f = Field::new(3, 1).unwrap();
        let basis = vec![unit(&f, 2, 0, 0), unit(&f, 2, 0, 1)];
        let log = enumerate_affine(
            &basis,
            &EnumOpts::serial(),
            Vec::new,
            |acc: &mut Vec<(u64, Elem, Elem)>, idx, m| acc.push((idx, m.at(0, 0), m.at(0, 1))),
            |mut a, b| {
                a.extend(b);
                a
            },
        )
        .unwrap();
        let expected: Vec<(u64, Elem, Elem)> = vec![
            (0, 0, 0),
            (1, 1, 0),
            (2, 2, 0),
            (3, 0, 1),
            (4, 1, 1),
            (5, 2, 1),
            (6, 0, 2),
            (7, 1, 2),
            (8, 2, 2),
        ];
        assert_eq!(log, expected);
    }

    #[test]
    fn budget_is_checked_up_front() {
        let f = Field::new(2, 1).unwrap();
        let basis: Vec<Mat> = (0..11)
            .map(|i| unit(&f, 4, i / 4, i % 4))
            .collect();
        let err = enumerate_affine(
            &basis,
            &EnumOpts {
                budget: 1 << 10,
                workers: 1,
            },
            || 0u64,
            |acc, _, _| *acc += 1,
            |a, b| a + b,
        )
        .unwrap_err();
        assert_eq!(
            err,
            MatError::BudgetExceeded {
                required: 1 << 11,
                budget: 1 << 10
            }
        );
    }

    #[test]
    fn counts_invertible_2x2_over_gf2() {
        let f = Field::new(2, 1).unwrap();
        let basis = vec![
            unit(&f, 2, 0, 0),
            unit(&f, 2, 0, 1),
            unit(&f, 2, 1, 0),
            unit(&f, 2, 1, 1),
        ];
        let count = enumerate_affine(
            &basis,
            &EnumOpts::serial(),
            || 0u64,
            |acc, _, m| {
                if m.rank() == 2 {
                    *acc += 1;
                }
            },
            |a, b| a + b,
        )
        .unwrap();
        assert_eq!(count, 6); // |GL(2, 2)|
    }

    #[test]
    fn aggregate_is_worker_count_independent() {
        let f = Field::new(2, 2).unwrap();
        let basis: Vec<Mat> = (0..7).map(|i| unit(&f, 3, i / 3, i % 3)).collect();
        let count_with = |workers: usize| {
            enumerate_affine(
                &basis,
                &EnumOpts {
                    budget: DEFAULT_BUDGET,
                    workers,
                },
                || 0u64,
                |acc, _, m| {
                    if m.is_pth_power_zero() {
                        *acc += 1;
                    }
                },
                |a, b| a + b,
            )
            .unwrap()
        };
        let serial = count_with(1);
        assert_eq!(serial, count_with(3));
        assert_eq!(serial, count_with(8));
    }

    #[test]
    fn every_combination_is_visited_once() {
        let f = Field::new(2, 1).unwrap();
        let basis = vec![unit(&f, 2, 0, 0), unit(&f, 2, 1, 1), unit(&f, 2, 0, 1)];
        let mut seen = enumerate_affine(
            &basis,
            &EnumOpts::serial(),
            Vec::new,
            |acc: &mut Vec<Vec<Elem>>, _, m| acc.push(m.entries().to_vec()),
            |mut a, b| {
                a.extend(b);
                a
            },
        )
        .unwrap();
        seen.sort();
        let before = seen.len();
        seen.dedup();
        assert_eq!(before, 8);
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn empty_basis_is_an_error() {
        let err = enumerate_affine(
            &[],
            &EnumOpts::serial(),
            || 0u64,
            |_, _, _| {},
            |a, _| a,
        )
        .unwrap_err();
        assert_eq!(err, MatError::EmptyBasis);
    }
}
