//! 2x2 matrices over a truncated polynomial ring F_p[t]/(t^m), and the
//! closed-form criterion for the 7th power of such a matrix to vanish in
//! characteristic 7.
//!
//! With constant term zero the 7th power vanishes for degree reasons. With
//! constant term e12 the criterion depends only on the degree-1 and
//! degree-2 coefficients: writing [[a, b], [c, d]] for the degree-1
//! coefficient and s for the lower-left entry of the degree-2 coefficient,
//! the 7th power vanishes exactly when c = 0 and s + 2(a - d)^2 = 0. In
//! particular the t^3 coefficient of the 7th power is c^3 e12, so square
//! matrices of this shape need not have vanishing 7th power, unlike the
//! 2x2 case over a field.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::ff::{Elem, Field};
use crate::matff::Mat;

use super::VarietyError;

/// A 2x2 matrix with entries in F_q[t]/(t^m), stored as m coefficient
/// matrices, degree 0 first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncMat {
    coeffs: Vec<Mat>,
}

impl TruncMat {
    pub fn new(coeffs: Vec<Mat>) -> Result<TruncMat, VarietyError> {
        if coeffs.is_empty() {
            return Err(VarietyError::BadStratumParams("need at least one coefficient"));
        }
        let field = coeffs[0].field().clone();
        for c in &coeffs {
            if c.rows() != 2 || c.cols() != 2 {
                return Err(VarietyError::ShapeMismatch);
            }
            if c.field() != &field {
                return Err(VarietyError::Mat(crate::matff::MatError::FieldMismatch));
            }
        }
        Ok(TruncMat { coeffs })
    }

    pub fn zero(field: &Field, order: usize) -> Result<TruncMat, VarietyError> {
        let z = Mat::zeros(field, 2, 2)?;
        TruncMat::new(vec![z; order])
    }

    /// Truncation order m: coefficients of t^0 through t^(m-1).
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn field(&self) -> &Field {
        self.coeffs[0].field()
    }

    pub fn coeff(&self, i: usize) -> &Mat {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Mat::is_zero)
    }

    pub fn add(&self, other: &TruncMat) -> Result<TruncMat, VarietyError> {
        if self.order() != other.order() {
            return Err(VarietyError::ShapeMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>, _>>()?;
        TruncMat::new(coeffs)
    }

    /// Product truncated at t^m.
    pub fn mul(&self, other: &TruncMat) -> Result<TruncMat, VarietyError> {
        if self.order() != other.order() {
            return Err(VarietyError::ShapeMismatch);
        }
        let m = self.order();
        let field = self.field();
        let mut coeffs = Vec::with_capacity(m);
        for k in 0..m {
            let mut acc = Mat::zeros(field, 2, 2)?;
            for i in 0..=k {
                let term = self.coeffs[i].mul(&other.coeffs[k - i])?;
                acc = acc.add(&term)?;
            }
            coeffs.push(acc);
        }
        TruncMat::new(coeffs)
    }

    pub fn pow(&self, e: u32) -> Result<TruncMat, VarietyError> {
        let mut acc: Option<TruncMat> = None;
        for _ in 0..e {
            acc = Some(match acc {
                Some(prev) => prev.mul(self)?,
                None => self.clone(),
            });
        }
        match acc {
            Some(r) => Ok(r),
            None => {
                // Empty product: the identity.
                let mut coeffs = vec![Mat::identity(self.field(), 2)?];
                coeffs.extend(std::iter::repeat(Mat::zeros(self.field(), 2, 2)?).take(self.order() - 1));
                TruncMat::new(coeffs)
            }
        }
    }
}

/// The 7th power in F_7[t]/(t^7); the setting of the vanishing criterion.
pub fn seventh_power(a: &TruncMat) -> Result<TruncMat, VarietyError> {
    if a.field().p() != 7 || a.field().k() != 1 || a.order() != 7 {
        return Err(VarietyError::BadStratumParams(
            "the seventh-power criterion lives over F_7 with truncation order 7",
        ));
    }
    a.pow(7)
}

/// Whether the closed form predicts a vanishing 7th power for a matrix
/// with constant coefficient e12: c = 0 and s + 2(a - d)^2 = 0, where
/// [[a, _], [c, d]] is the degree-1 coefficient and s the lower-left entry
/// of the degree-2 coefficient.
pub fn e12_head_vanishing_criterion(a1: &Mat, a2: &Mat) -> bool {
    let f = a1.field();
    let a = a1.at(0, 0);
    let c = a1.at(1, 0);
    let d = a1.at(1, 1);
    let s = a2.at(1, 0);
    let diff = f.sub(a, d);
    c == 0 && f.add(s, f.mul(2, f.mul(diff, diff))) == 0
}

/// Outcome of randomized agreement checks between the direct 7th power and
/// the closed-form criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeventhPowerReport {
    pub zero_head_trials: usize,
    pub e12_head_trials: usize,
    /// Trials where the direct power and the prediction disagreed.
    pub mismatches: usize,
}

fn random_coeff<R: Rng>(field: &Field, rng: &mut R) -> Mat {
    let q = field.q();
    let entries: Vec<Elem> = (0..4).map(|_| rng.gen_range(0..q) as Elem).collect();
    Mat::from_entries(field, 2, 2, entries).expect("entries in range")
}

/// Randomized check of both branches over F_7, truncation order 7: with
/// zero constant coefficient the 7th power must vanish outright; with
/// constant coefficient e12 it must vanish exactly when the closed form
/// says so. Deterministic in `seed`.
pub fn seventh_power_check(trials: usize, seed: u64) -> Result<SeventhPowerReport, VarietyError> {
    let field = Field::new(7, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = Mat::zeros(&field, 2, 2)?;
    let e12 = Mat::unit(&field, 2, 2, 0, 1)?;
    let mut mismatches = 0usize;
    for _ in 0..trials {
        let mut coeffs = vec![zero.clone()];
        for _ in 1..7 {
            coeffs.push(random_coeff(&field, &mut rng));
        }
        if !seventh_power(&TruncMat::new(coeffs)?)?.is_zero() {
            mismatches += 1;
        }
    }
    for _ in 0..trials {
        let mut coeffs = vec![e12.clone()];
        for _ in 1..7 {
            coeffs.push(random_coeff(&field, &mut rng));
        }
        let a = TruncMat::new(coeffs)?;
        let predicted = e12_head_vanishing_criterion(a.coeff(1), a.coeff(2));
        let actual = seventh_power(&a)?.is_zero();
        if predicted != actual {
            mismatches += 1;
        }
    }
    Ok(SeventhPowerReport {
        zero_head_trials: trials,
        e12_head_trials: trials,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Field {
        Field::new(7, 1).unwrap()
    }

    fn e12(f: &Field) -> Mat {
        Mat::unit(f, 2, 2, 0, 1).unwrap()
    }

    #[test]
    fn truncated_multiplication_drops_high_terms() {
        let f = f7();
        // (e12 + I t)^2 = e12^2 + 2 e12 t + I t^2 = 2 e12 t + I t^2.
        let i2 = Mat::identity(&f, 2).unwrap();
        let a = TruncMat::new(vec![e12(&f), i2.clone(), Mat::zeros(&f, 2, 2).unwrap()]).unwrap();
        let sq = a.mul(&a).unwrap();
        assert!(sq.coeff(0).is_zero());
        assert_eq!(sq.coeff(1), &e12(&f).scale(2));
        assert_eq!(sq.coeff(2), &i2);
        // Order 1 truncates everything past the constant term.
        let b = TruncMat::new(vec![e12(&f)]).unwrap();
        assert!(b.mul(&b).unwrap().is_zero());
    }

    #[test]
    fn pow_zero_is_the_identity() {
        let f = f7();
        let a = TruncMat::new(vec![e12(&f), Mat::identity(&f, 2).unwrap()]).unwrap();
        let one = a.pow(0).unwrap();
        assert_eq!(one.coeff(0), &Mat::identity(&f, 2).unwrap());
        assert!(one.coeff(1).is_zero());
    }

    #[test]
    fn t3_coefficient_of_the_seventh_power_is_c_cubed_e12() {
        let f = f7();
        // A = e12 + A1 t with A1 = [[1, 2], [3, 4]]: c = 3, c^3 = 27 = 6.
        let a1 = Mat::from_rows(&f, vec![vec![1, 2], vec![3, 4]]).unwrap();
        let mut coeffs = vec![e12(&f), a1];
        coeffs.extend(std::iter::repeat(Mat::zeros(&f, 2, 2).unwrap()).take(5));
        let p = seventh_power(&TruncMat::new(coeffs).unwrap()).unwrap();
        assert_eq!(p.coeff(3), &e12(&f).scale(6));
    }

    #[test]
    fn worked_example_with_s_equal_5_vanishes() {
        // A = e12 + diag(1, 0) t + A2 t^2 with lower-left entry 5 of A2:
        // the criterion reads 5 + 2(1 - 0)^2 = 7 = 0, so A^7 = 0.
        let f = f7();
        let a1 = Mat::from_rows(&f, vec![vec![1, 0], vec![0, 0]]).unwrap();
        let a2 = Mat::from_rows(&f, vec![vec![0, 0], vec![5, 0]]).unwrap();
        let mut coeffs = vec![e12(&f), a1.clone(), a2.clone()];
        coeffs.extend(std::iter::repeat(Mat::zeros(&f, 2, 2).unwrap()).take(4));
        let a = TruncMat::new(coeffs).unwrap();
        assert!(e12_head_vanishing_criterion(&a1, &a2));
        assert!(seventh_power(&a).unwrap().is_zero());
        // Perturbing s breaks it.
        let a2_bad = Mat::from_rows(&f, vec![vec![0, 0], vec![4, 0]]).unwrap();
        let mut coeffs = vec![e12(&f), a1.clone(), a2_bad.clone()];
        coeffs.extend(std::iter::repeat(Mat::zeros(&f, 2, 2).unwrap()).take(4));
        let bad = TruncMat::new(coeffs).unwrap();
        assert!(!e12_head_vanishing_criterion(&a1, &a2_bad));
        assert!(!seventh_power(&bad).unwrap().is_zero());
    }

    #[test]
    fn lower_left_degree_one_entry_obstructs_vanishing() {
        let f = f7();
        let a1 = Mat::from_rows(&f, vec![vec![0, 0], vec![1, 0]]).unwrap();
        let mut coeffs = vec![e12(&f), a1];
        coeffs.extend(std::iter::repeat(Mat::zeros(&f, 2, 2).unwrap()).take(5));
        let p = seventh_power(&TruncMat::new(coeffs).unwrap()).unwrap();
        assert!(!p.is_zero());
        assert_eq!(p.coeff(3), &e12(&f));
    }

    #[test]
    fn randomized_branch_check_finds_no_mismatch() {
        let report = seventh_power_check(300, 20260819).unwrap();
        assert_eq!(report.mismatches, 0);
        assert_eq!(report.zero_head_trials, 300);
    }

    #[test]
    fn seventh_power_rejects_wrong_setting() {
        let f2 = Field::new(2, 1).unwrap();
        let a = TruncMat::zero(&f2, 7).unwrap();
        assert!(seventh_power(&a).is_err());
        let short = TruncMat::zero(&f7(), 3).unwrap();
        assert!(seventh_power(&short).is_err());
    }
}
