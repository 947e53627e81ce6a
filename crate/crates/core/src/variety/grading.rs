//! Weight grading of the centralizer of a nilpotent Jordan matrix.
//!
//! The diagonal cocharacter attached to a partition (weights s-1, s-3, ...,
//! 1-s down each block of size s) grades gl(n) by deg(e_rc) = w_r - w_c,
//! and the centralizer of the Jordan matrix decomposes into graded pieces.
//! The report records the dimension of every piece, whether the degree-0
//! piece is a commutative algebra all of whose elements satisfy h^p = h
//! (so that it is spanned by p-fixed elements), and a randomized check
//! that elements of the strictly positive part have vanishing p-th power.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::ff::{Elem, Field};
use crate::matff::Mat;
use crate::nilpotent::{cocharacter_weights, dim_centralizer, jordan_matrix, Partition};

use super::VarietyError;

#[derive(Debug, Clone, PartialEq)]
pub struct GradingReport {
    /// (degree, dimension) for every degree with a nonzero piece, ascending.
    pub piece_dims: Vec<(i64, usize)>,
    pub centralizer_dim: usize,
    pub deg0_dim: usize,
    pub deg0_commutative: bool,
    /// Whether every degree-0 basis element h satisfies h^p = h; together
    /// with commutativity over a prime field this makes the piece a torus.
    pub deg0_toral: bool,
    pub deg1_dim: usize,
    pub positive_dim: usize,
    pub positive_samples: usize,
    /// Sampled positive-part elements whose p-th power failed to vanish.
    pub positive_violations: usize,
}

/// Basis of the degree-d piece of the centralizer: kernel of x -> [e, x]
/// restricted to the span of the unit matrices of degree d.
fn graded_piece(e: &Mat, weights: &[i64], d: i64) -> Result<Vec<Mat>, VarietyError> {
    let n = e.rows();
    let field = e.field();
    let coords: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| weights[r] - weights[c] == d)
        .collect();
    if coords.is_empty() {
        return Ok(Vec::new());
    }
    // Columns: vectorized commutators of the coordinate units.
    let mut op = Mat::zeros(field, n * n, coords.len())?;
    for (col, &(r, c)) in coords.iter().enumerate() {
        let unit = Mat::unit(field, n, n, r, c)?;
        let comm = e.commutator(&unit)?;
        for rr in 0..n {
            for cc in 0..n {
                op.set(rr * n + cc, col, comm.at(rr, cc));
            }
        }
    }
    let (_, kernel) = op.rank_kernel();
    let mut basis = Vec::with_capacity(kernel.len());
    for vec in kernel {
        let mut m = Mat::zeros(field, n, n)?;
        for (t, &(r, c)) in coords.iter().enumerate() {
            if vec[t] != 0 {
                m.set(r, c, field.add(m.at(r, c), vec[t]));
            }
        }
        basis.push(m);
    }
    Ok(basis)
}

/// Grades the centralizer of the Jordan matrix of `lambda` over the prime
/// field F_p and checks the degree-0 and positive parts. Positive-part
/// sampling is deterministic in `seed`.
pub fn grading_report(
    lambda: &Partition,
    p: u32,
    samples: usize,
    seed: u64,
) -> Result<GradingReport, VarietyError> {
    let field = Field::new(p, 1)?;
    let e = jordan_matrix(&field, lambda)?;
    let weights = cocharacter_weights(lambda);
    let max_w = weights.iter().copied().max().unwrap_or(0);
    let min_w = weights.iter().copied().min().unwrap_or(0);

    let mut piece_dims = Vec::new();
    let mut deg0 = Vec::new();
    let mut deg1_dim = 0usize;
    let mut positive = Vec::new();
    let mut total = 0usize;
    for d in (min_w - max_w)..=(max_w - min_w) {
        let basis = graded_piece(&e, &weights, d)?;
        if basis.is_empty() {
            continue;
        }
        total += basis.len();
        piece_dims.push((d, basis.len()));
        if d == 0 {
            deg0 = basis;
        } else if d > 0 {
            if d == 1 {
                deg1_dim = basis.len();
            }
            positive.extend(basis);
        }
    }
    // The graded pieces must exhaust the centralizer.
    debug_assert_eq!(total as u64, dim_centralizer(lambda));

    let mut deg0_commutative = true;
    'outer: for x in &deg0 {
        for y in &deg0 {
            if !x.commutes_with(y)? {
                deg0_commutative = false;
                break 'outer;
            }
        }
    }
    // Over F_p the p-th power map is additive on a commutative piece, so
    // checking h^p = h on a basis decides whether p-fixed elements span.
    let mut deg0_toral = deg0_commutative;
    if deg0_toral {
        for h in &deg0 {
            if &h.pth_power()? != h {
                deg0_toral = false;
                break;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positive_violations = 0usize;
    let positive_samples = if positive.is_empty() { 0 } else { samples };
    for _ in 0..positive_samples {
        let mut x = Mat::zeros(&field, e.rows(), e.cols())?;
        for b in &positive {
            let c = rng.gen_range(0..p) as Elem;
            if c != 0 {
                x.add_scaled_in_place(b, c);
            }
        }
        if !x.is_pth_power_zero() {
            positive_violations += 1;
        }
    }

    Ok(GradingReport {
        piece_dims,
        centralizer_dim: total,
        deg0_dim: deg0.len(),
        deg0_commutative,
        deg0_toral,
        deg1_dim,
        positive_dim: positive.len(),
        positive_samples,
        positive_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_centralizer_is_all_of_gl2_in_degree_zero() {
        let lambda = Partition::new(vec![1, 1]).unwrap();
        for p in [2u32, 3, 5, 7] {
            let r = grading_report(&lambda, p, 10, 1).unwrap();
            assert_eq!(r.deg0_dim, 4, "p={}", p);
            assert_eq!(r.centralizer_dim, 4);
            assert!(!r.deg0_commutative);
            assert!(!r.deg0_toral);
            assert_eq!(r.positive_dim, 0);
            assert_eq!(r.positive_samples, 0);
        }
    }

    #[test]
    fn regular_block_of_size_2_has_scalar_degree_zero_part() {
        let lambda = Partition::new(vec![2]).unwrap();
        let r = grading_report(&lambda, 2, 10, 1).unwrap();
        assert_eq!(r.deg0_dim, 1);
        assert!(r.deg0_commutative);
        assert!(r.deg0_toral);
        assert_eq!(r.centralizer_dim, 2);
        assert_eq!(r.piece_dims, vec![(0, 1), (2, 1)]);
        assert_eq!(r.positive_violations, 0);
    }

    #[test]
    fn seven_five_two_at_p7_has_toral_rank_3_and_no_degree_1() {
        let lambda = Partition::new(vec![7, 5, 2]).unwrap();
        let r = grading_report(&lambda, 7, 25, 99).unwrap();
        assert_eq!(r.centralizer_dim, 32);
        assert_eq!(r.deg0_dim, 3);
        assert!(r.deg0_commutative);
        assert!(r.deg0_toral);
        assert_eq!(r.deg1_dim, 0);
        assert_eq!(r.positive_dim, 29);
        assert_eq!(r.positive_samples, 25);
        assert_eq!(r.positive_violations, 0);
        // No negative degrees occur: maps between blocks only lower weights.
        assert!(r.piece_dims.iter().all(|&(d, _)| d >= 0));
    }

    #[test]
    fn graded_pieces_sum_to_the_centralizer_dimension() {
        for (parts, p) in [(vec![3, 1], 2u32), (vec![2, 2], 3), (vec![4, 2, 1], 5)] {
            let lambda = Partition::new(parts).unwrap();
            let r = grading_report(&lambda, p, 5, 7).unwrap();
            let sum: usize = r.piece_dims.iter().map(|&(_, d)| d).sum();
            assert_eq!(sum, r.centralizer_dim);
            assert_eq!(
                r.centralizer_dim as u64,
                crate::nilpotent::dim_centralizer(&lambda)
            );
        }
    }
}
