//! Pairs of commuting matrices with vanishing p-th power, as points of an
//! affine variety over GF(q).
//!
//! A [`CommPair`] is validated on construction: both coordinates must be
//! square over the same field, both p-th powers must vanish, and the two
//! matrices must commute; the error names the failing condition. In
//! characteristic 2 the group GL(2, F_q) acts by taking (A, B) to
//! (aA + bB, cA + dB), and [`gl2_act`] checks that this lands back in the
//! variety.
//!
//! The variety is stratified by the conjugacy class of the first
//! coordinate. Inside the centralizer of the canonical rank-i square-zero
//! element, [`stratum_element`] assembles the block shape
//! `[[A_j, B, C], [0, E_l, F], [0, 0, A_j]]` from caller-supplied free
//! blocks and verifies the defining equations. [`component_rep`] produces
//! one explicit pair per irreducible component: block sums of the 4x4 pair
//! W = (e12 + e34, e13 + e24), an even-size generic piece with pairwise
//! distinct diagonal parameters, odd-size asymmetric pieces and their
//! transposes, and the one-point piece.
//!
//! Submodules: [`count`] for exact point counts and dimension estimates,
//! [`char7`] for the truncated-series computation in characteristic 7,
//! [`grading`] for weighted decompositions of centralizers.

pub mod char7;
pub mod count;
pub mod grading;

use rand::Rng;
use thiserror::Error;

use crate::ff::{Elem, Field, FieldError};
use crate::matff::{BlockSpec, Mat, MatError};
use crate::nilpotent::{canonical_e, NilpotentError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("first coordinate has nonzero p-th power")]
    FirstNotRestricted,
    #[error("second coordinate has nonzero p-th power")]
    SecondNotRestricted,
    #[error("coordinates do not commute")]
    NotCommuting,
    #[error("coordinates must be square matrices of equal size")]
    ShapeMismatch,
    #[error("group action requires characteristic 2")]
    CharNot2,
    #[error("action coefficients form a singular matrix")]
    SingularAction,
    #[error("stratum block equation violated: {0}")]
    StratumViolation(&'static str),
    #[error("stratum parameters invalid: {0}")]
    BadStratumParams(&'static str),
    #[error("component {label} does not exist for n = {n}")]
    BadComponent { label: String, n: usize },
    #[error("need {needed} pairwise distinct field values, field has only {q}")]
    NotEnoughElements { needed: usize, q: u32 },
    #[error("stratified count needs characteristic 2 or n <= 2, got n = {n} over characteristic {p}")]
    StratificationUnavailable { n: usize, p: u32 },
    #[error("need at least two distinct sizes with nonzero counts")]
    NotEnoughSamples,
    #[error(transparent)]
    Nilpotent(#[from] NilpotentError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A pair (A, B) of commuting square matrices with A^p = B^p = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommPair {
    a: Mat,
    b: Mat,
}

impl CommPair {
    pub fn new(a: Mat, b: Mat) -> Result<CommPair, VarietyError> {
        if a.field() != b.field() {
            return Err(VarietyError::Mat(MatError::FieldMismatch));
        }
        if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(VarietyError::ShapeMismatch);
        }
        if !a.is_pth_power_zero() {
            return Err(VarietyError::FirstNotRestricted);
        }
        if !b.is_pth_power_zero() {
            return Err(VarietyError::SecondNotRestricted);
        }
        if !a.commutes_with(&b)? {
            return Err(VarietyError::NotCommuting);
        }
        Ok(CommPair { a, b })
    }

    pub fn first(&self) -> &Mat {
        &self.a
    }

    pub fn second(&self) -> &Mat {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn into_parts(self) -> (Mat, Mat) {
        (self.a, self.b)
    }

    /// Block-diagonal sum of two pairs.
    pub fn direct_sum(&self, other: &CommPair) -> Result<CommPair, VarietyError> {
        CommPair::new(
            self.a.direct_sum(&other.a)?,
            self.b.direct_sum(&other.b)?,
        )
    }

    /// Simultaneous conjugation (g A g^-1, g B g^-1).
    pub fn conjugate_by(&self, g: &Mat) -> Result<CommPair, VarietyError> {
        Ok(CommPair {
            a: self.a.conjugate_by(g)?,
            b: self.b.conjugate_by(g)?,
        })
    }

    /// Transposes both coordinates.
    pub fn transpose(&self) -> CommPair {
        CommPair {
            a: self.a.transpose(),
            b: self.b.transpose(),
        }
    }
}

/// Whether (a, b) satisfies all pair conditions.
pub fn is_comm_pair(a: &Mat, b: &Mat) -> bool {
    CommPair::new(a.clone(), b.clone()).is_ok()
}

/// The GL(2)-action (A, B) -> (aA + bB, cA + dB) for coefficient matrix
/// [[a, b], [c, d]]; characteristic 2 only, and the coefficients must be
/// invertible.
pub fn gl2_act(coeffs: [[Elem; 2]; 2], pair: &CommPair) -> Result<CommPair, VarietyError> {
    let f = pair.field().clone();
    if !f.has_char_2() {
        return Err(VarietyError::CharNot2);
    }
    let [[a, b], [c, d]] = coeffs;
    for v in [a, b, c, d] {
        f.check(v)?;
    }
    let det = f.sub(f.mul(a, d), f.mul(b, c));
    if det == 0 {
        return Err(VarietyError::SingularAction);
    }
    let mut first = pair.a.scale(a);
    first.add_scaled_in_place(&pair.b, b);
    let mut second = pair.a.scale(c);
    second.add_scaled_in_place(&pair.b, d);
    CommPair::new(first, second)
}

/// Free blocks of a stratum element inside the centralizer of the canonical
/// rank-i square-zero element of gl(n). The corner blocks are the canonical
/// rank-j element of gl(i), the middle block is the canonical rank-l element
/// of gl(n - 2i); `b` (i x (n-2i)), `f` ((n-2i) x i) and `c` (i x i) are the
/// free entries, `None` whenever the block has a zero dimension.
#[derive(Debug, Clone)]
pub struct StratumParams {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub l: usize,
    pub b: Option<Mat>,
    pub f: Option<Mat>,
    pub c: Option<Mat>,
}

/// Assembles the block matrix `[[A_j, B, C], [0, E_l, F], [0, 0, A_j]]` and
/// verifies it squares to zero and commutes with the canonical rank-i
/// element; the error names the first violated block equation.
pub fn stratum_element(params: &StratumParams, field: &Field) -> Result<Mat, VarietyError> {
    let StratumParams { n, i, j, l, .. } = *params;
    if 2 * i > n {
        return Err(VarietyError::BadStratumParams("need 2i <= n"));
    }
    if 2 * j > i {
        return Err(VarietyError::BadStratumParams("need 2j <= i"));
    }
    let mid = n - 2 * i;
    if 2 * l > mid {
        return Err(VarietyError::BadStratumParams("need 2l <= n - 2i"));
    }
    let spec = BlockSpec::square(&[i, mid, i]);
    let mut x = Mat::zeros(field, n, n)?;
    if i > 0 {
        let a = canonical_e(field, i, j)?;
        spec.insert(&mut x, 0, 0, &a)?;
        spec.insert(&mut x, 2, 2, &a)?;
        let c = params
            .c
            .as_ref()
            .ok_or(VarietyError::BadStratumParams("block C is required when i > 0"))?;
        if c.rows() != i || c.cols() != i || c.field() != field {
            return Err(VarietyError::BadStratumParams("block C has the wrong shape"));
        }
        spec.insert(&mut x, 0, 2, c)?;
    } else if params.c.is_some() {
        return Err(VarietyError::BadStratumParams("block C must be absent when i = 0"));
    }
    if mid > 0 {
        let e = canonical_e(field, mid, l)?;
        spec.insert(&mut x, 1, 1, &e)?;
    }
    if i > 0 && mid > 0 {
        let b = params
            .b
            .as_ref()
            .ok_or(VarietyError::BadStratumParams("block B is required"))?;
        let f = params
            .f
            .as_ref()
            .ok_or(VarietyError::BadStratumParams("block F is required"))?;
        if b.rows() != i || b.cols() != mid || b.field() != field {
            return Err(VarietyError::BadStratumParams("block B has the wrong shape"));
        }
        if f.rows() != mid || f.cols() != i || f.field() != field {
            return Err(VarietyError::BadStratumParams("block F has the wrong shape"));
        }
        spec.insert(&mut x, 0, 1, b)?;
        spec.insert(&mut x, 1, 2, f)?;
    } else if params.b.is_some() || params.f.is_some() {
        return Err(VarietyError::BadStratumParams(
            "blocks B and F must be absent when the corner or middle is empty",
        ));
    }
    // The square decomposes blockwise; name the first failing equation.
    let sq = x.mul(&x)?;
    if !sq.is_zero() {
        let checks: [(usize, usize, &'static str); 3] = [
            (0, 1, "A*B + B*E = 0"),
            (1, 2, "E*F + F*A = 0"),
            (0, 2, "A*C + C*A + B*F = 0"),
        ];
        for (bi, bj, label) in checks {
            if spec.row_part(bi) == 0 || spec.col_part(bj) == 0 {
                continue;
            }
            if !spec.extract(&sq, bi, bj)?.is_zero() {
                return Err(VarietyError::StratumViolation(label));
            }
        }
        return Err(VarietyError::StratumViolation("x^2 = 0"));
    }
    let e_i = canonical_e(field, n, i)?;
    if !x.commutes_with(&e_i)? {
        return Err(VarietyError::StratumViolation("[x, e_i] = 0"));
    }
    Ok(x)
}

/// The stratum element paired with the canonical rank-i first coordinate.
pub fn stratum_pair(params: &StratumParams, field: &Field) -> Result<CommPair, VarietyError> {
    let x = stratum_element(params, field)?;
    let e = canonical_e(field, params.n, params.i)?;
    CommPair::new(e, x)
}

/// Irreducible component labels. For even n = 2m the components are X(j)
/// for 0 <= 4j <= n; for odd n = 2m+1 they are the pairs XPlus(j)/XMinus(j)
/// for 4j <= n - 3, plus XHalf when m is even.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ComponentId {
    X(usize),
    XPlus(usize),
    XMinus(usize),
    XHalf,
}

impl ComponentId {
    pub fn label(&self) -> String {
        match self {
            ComponentId::X(j) => format!("X_{}", j),
            ComponentId::XPlus(j) => format!("X_{}^+", j),
            ComponentId::XMinus(j) => format!("X_{}^-", j),
            ComponentId::XHalf => "X_half".to_string(),
        }
    }

    /// All component ids for pairs of size n, in a fixed order.
    pub fn all_for(n: usize) -> Vec<ComponentId> {
        let m = n / 2;
        let mut out = Vec::new();
        if n % 2 == 0 {
            for j in 0..=m / 2 {
                out.push(ComponentId::X(j));
            }
        } else {
            let mut j = 0;
            while 4 * j + 3 <= n {
                out.push(ComponentId::XPlus(j));
                out.push(ComponentId::XMinus(j));
                j += 1;
            }
            if m % 2 == 0 {
                out.push(ComponentId::XHalf);
            }
        }
        out
    }
}

/// The 4x4 pair W = (e12 + e34, e13 + e24).
pub fn w_pair(field: &Field) -> Result<CommPair, VarietyError> {
    let mut a = Mat::zeros(field, 4, 4)?;
    a.set(0, 1, 1);
    a.set(2, 3, 1);
    let mut b = Mat::zeros(field, 4, 4)?;
    b.set(0, 2, 1);
    b.set(1, 3, 1);
    CommPair::new(a, b)
}

/// The one-dimensional zero pair.
pub fn trivial_pair(field: &Field) -> Result<CommPair, VarietyError> {
    let z = Mat::zeros(field, 1, 1)?;
    CommPair::new(z.clone(), z)
}

/// Generic even-size piece of size 2m: the canonical rank-m element paired
/// with `[[0, diag(b_1..b_m)], [0, 0]]` where the diagonal values are the
/// first m element encodings, pairwise distinct. Errors when the field has
/// fewer than m elements.
fn x0_even(field: &Field, m: usize) -> Result<CommPair, VarietyError> {
    if m as u32 > field.q() {
        return Err(VarietyError::NotEnoughElements {
            needed: m,
            q: field.q(),
        });
    }
    let n = 2 * m;
    let e = canonical_e(field, n, m)?;
    let mut b = Mat::zeros(field, n, n)?;
    for r in 0..m {
        b.set(r, m + r, r as Elem);
    }
    CommPair::new(e, b)
}

/// Generic odd-size piece of size 2m+1: the canonical rank-m element e
/// paired with x = e_{1,m+1} + ... + e_{m,2m} (1-indexed).
fn x0_plus(field: &Field, m: usize) -> Result<CommPair, VarietyError> {
    let n = 2 * m + 1;
    let e = canonical_e(field, n, m)?;
    let mut x = Mat::zeros(field, n, n)?;
    for r in 0..m {
        x.set(r, m + r, 1);
    }
    CommPair::new(e, x)
}

/// One explicit pair per irreducible component: X(j) is j copies of W plus
/// an even generic piece; XPlus(j) is j copies of W plus an odd piece;
/// XMinus(j) is the transpose of XPlus(j); XHalf is m/2 copies of W plus
/// the one-point piece.
pub fn component_rep(field: &Field, n: usize, id: &ComponentId) -> Result<CommPair, VarietyError> {
    let invalid = || VarietyError::BadComponent {
        label: id.label(),
        n,
    };
    if n == 0 {
        return Err(invalid());
    }
    let m = n / 2;
    let pair = match id {
        ComponentId::X(j) => {
            if n % 2 != 0 || 4 * j > n {
                return Err(invalid());
            }
            let rest = n - 4 * j;
            let mut acc: Option<CommPair> = None;
            for _ in 0..*j {
                let w = w_pair(field)?;
                acc = Some(match acc {
                    Some(p) => p.direct_sum(&w)?,
                    None => w,
                });
            }
            if rest > 0 {
                let tail = x0_even(field, rest / 2)?;
                acc = Some(match acc {
                    Some(p) => p.direct_sum(&tail)?,
                    None => tail,
                });
            }
            acc.expect("n >= 2 yields at least one summand")
        }
        ComponentId::XPlus(j) | ComponentId::XMinus(j) => {
            if n % 2 == 0 || 4 * j + 3 > n {
                return Err(invalid());
            }
            let rest = n - 4 * j;
            let mut acc: Option<CommPair> = None;
            for _ in 0..*j {
                let w = w_pair(field)?;
                acc = Some(match acc {
                    Some(p) => p.direct_sum(&w)?,
                    None => w,
                });
            }
            let tail = x0_plus(field, (rest - 1) / 2)?;
            let pair = match acc {
                Some(p) => p.direct_sum(&tail)?,
                None => tail,
            };
            if matches!(id, ComponentId::XMinus(_)) {
                pair.transpose()
            } else {
                pair
            }
        }
        ComponentId::XHalf => {
            if n % 2 == 0 || m % 2 != 0 {
                return Err(invalid());
            }
            let mut acc: Option<CommPair> = None;
            for _ in 0..m / 2 {
                let w = w_pair(field)?;
                acc = Some(match acc {
                    Some(p) => p.direct_sum(&w)?,
                    None => w,
                });
            }
            let tail = trivial_pair(field)?;
            match acc {
                Some(p) => p.direct_sum(&tail)?,
                None => tail,
            }
        }
    };
    Ok(pair)
}

/// A random valid pair: a block sum of small building blocks (zero blocks,
/// proportional rank-one pairs, odd pieces of size 3 or 5 and their
/// transposes, W) filling dimension n, conjugated by a random invertible
/// matrix. The distribution has no particular meaning; it is a fuzzing aid.
pub fn random_pair<R: Rng>(field: &Field, n: usize, rng: &mut R) -> Result<CommPair, VarietyError> {
    assert!(n >= 1);
    let mut acc: Option<CommPair> = None;
    let mut left = n;
    while left > 0 {
        let choice = rng.gen_range(0..5u32);
        let block = match choice {
            0 => trivial_pair(field)?,
            1 if left >= 2 => {
                // Proportional pair (a e, b e) on a rank-one square-zero e.
                let q = field.q();
                let (a, b) = loop {
                    let a = rng.gen_range(0..q) as Elem;
                    let b = rng.gen_range(0..q) as Elem;
                    if a != 0 || b != 0 {
                        break (a, b);
                    }
                };
                let mut x = Mat::zeros(field, 2, 2)?;
                x.set(0, 1, a);
                let mut y = Mat::zeros(field, 2, 2)?;
                y.set(0, 1, b);
                CommPair::new(x, y)?
            }
            2 if left >= 3 => {
                let p = x0_plus(field, 1)?;
                if rng.gen_bool(0.5) {
                    p.transpose()
                } else {
                    p
                }
            }
            3 if left >= 4 => w_pair(field)?,
            4 if left >= 5 => {
                let p = x0_plus(field, 2)?;
                if rng.gen_bool(0.5) {
                    p.transpose()
                } else {
                    p
                }
            }
            _ => continue,
        };
        left -= block.n();
        acc = Some(match acc {
            Some(prev) => prev.direct_sum(&block)?,
            None => block,
        });
    }
    let pair = acc.expect("n >= 1");
    let g = random_invertible(field, n, rng)?;
    pair.conjugate_by(&g)
}

/// Rejection-samples an invertible n x n matrix.
pub fn random_invertible<R: Rng>(field: &Field, n: usize, rng: &mut R) -> Result<Mat, VarietyError> {
    let q = field.q();
    loop {
        let entries: Vec<Elem> = (0..n * n).map(|_| rng.gen_range(0..q) as Elem).collect();
        let m = Mat::from_entries(field, n, n, entries)?;
        if m.rank() == n {
            return Ok(m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::{jordan_type, Partition};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> Field {
        Field::from_order(q).unwrap()
    }

    #[test]
    fn pair_validation_names_the_failing_condition() {
        let f = gf(2);
        let e12 = Mat::unit(&f, 2, 2, 0, 1).unwrap();
        let e21 = Mat::unit(&f, 2, 2, 1, 0).unwrap();
        let id = Mat::identity(&f, 2).unwrap();
        assert!(CommPair::new(e12.clone(), e12.clone()).is_ok());
        assert_eq!(
            CommPair::new(id.clone(), e12.clone()).unwrap_err(),
            VarietyError::FirstNotRestricted
        );
        assert_eq!(
            CommPair::new(e12.clone(), id).unwrap_err(),
            VarietyError::SecondNotRestricted
        );
        assert_eq!(
            CommPair::new(e12.clone(), e21).unwrap_err(),
            VarietyError::NotCommuting
        );
        let e3 = Mat::zeros(&f, 3, 3).unwrap();
        assert_eq!(
            CommPair::new(e12, e3).unwrap_err(),
            VarietyError::ShapeMismatch
        );
    }

    #[test]
    fn gl2_act_preserves_the_variety() {
        let f = gf(4);
        let pair = w_pair(&f).unwrap();
        let acted = gl2_act([[1, 2], [0, 1]], &pair).unwrap();
        assert_eq!(acted.first(), &pair.first().add(&pair.second().scale(2)).unwrap());
        // Identity coefficients act trivially.
        let same = gl2_act([[1, 0], [0, 1]], &pair).unwrap();
        assert_eq!(&same, &pair);
    }

    #[test]
    fn gl2_act_rejects_bad_input() {
        let f = gf(2);
        let pair = w_pair(&f).unwrap();
        assert_eq!(
            gl2_act([[1, 1], [1, 1]], &pair).unwrap_err(),
            VarietyError::SingularAction
        );
        let f3 = gf(3);
        let pair3 = trivial_pair(&f3).unwrap();
        assert_eq!(
            gl2_act([[1, 0], [0, 1]], &pair3).unwrap_err(),
            VarietyError::CharNot2
        );
    }

    #[test]
    fn gl2_act_composes() {
        let f = gf(2);
        let pair = component_rep(&f, 5, &ComponentId::XPlus(0)).unwrap();
        let g1 = [[1, 1], [0, 1]];
        let g2 = [[0, 1], [1, 0]];
        let lhs = gl2_act(g2, &gl2_act(g1, &pair).unwrap()).unwrap();
        // (g2 g1) over GF(2): [[0,1],[1,1]].
        let rhs = gl2_act([[0, 1], [1, 1]], &pair).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn stratum_element_accepts_the_block_diagonal_example() {
        // n=4, i=2, j=1, l=0 with C = 0: diag-block(A_1, A_1).
        let f = gf(2);
        let params = StratumParams {
            n: 4,
            i: 2,
            j: 1,
            l: 0,
            b: None,
            f: None,
            c: Some(Mat::zeros(&f, 2, 2).unwrap()),
        };
        let x = stratum_element(&params, &f).unwrap();
        let mut expected = Mat::zeros(&f, 4, 4).unwrap();
        expected.set(0, 1, 1);
        expected.set(2, 3, 1);
        assert_eq!(x, expected);
        assert!(stratum_pair(&params, &f).is_ok());
    }

    #[test]
    fn stratum_element_rejects_violated_equations() {
        // n=4, i=1, mid=2: B is 1x2, F is 2x1, C is 1x1, A_0 = 0, E_1 = e12.
        // With E nonzero, A*B + B*E = B*E forces the first column of B... the
        // precise requirement is B*E_1 = 0, so B = (1, 0) violates it.
        let f = gf(2);
        let params = StratumParams {
            n: 4,
            i: 1,
            j: 0,
            l: 1,
            b: Some(Mat::from_rows(&f, vec![vec![1, 0]]).unwrap()),
            f: Some(Mat::zeros(&f, 2, 1).unwrap()),
            c: Some(Mat::zeros(&f, 1, 1).unwrap()),
        };
        let err = stratum_element(&params, &f).unwrap_err();
        assert_eq!(err, VarietyError::StratumViolation("A*B + B*E = 0"));
        // Zeroing B fixes it.
        let params = StratumParams {
            b: Some(Mat::zeros(&f, 1, 2).unwrap()),
            ..params
        };
        let x = stratum_element(&params, &f).unwrap();
        assert!(x.is_pth_power_zero());
    }

    #[test]
    fn stratum_element_checks_parameter_shapes() {
        let f = gf(2);
        let params = StratumParams {
            n: 4,
            i: 2,
            j: 2,
            l: 0,
            b: None,
            f: None,
            c: Some(Mat::zeros(&f, 2, 2).unwrap()),
        };
        assert!(matches!(
            stratum_element(&params, &f),
            Err(VarietyError::BadStratumParams(_))
        ));
    }

    #[test]
    fn component_lists_have_the_expected_length() {
        // Even n = 2m: floor(m/2) + 1 components; odd n = 2m+1: m + 1.
        for n in 1..=12usize {
            let ids = ComponentId::all_for(n);
            let m = n / 2;
            let expected = if n % 2 == 0 { m / 2 + 1 } else { m + 1 };
            assert_eq!(ids.len(), expected, "n={}", n);
        }
    }

    #[test]
    fn component_reps_are_valid_with_square_zero_type_first_coordinate() {
        let f = gf(4);
        for n in 1..=8usize {
            for id in ComponentId::all_for(n) {
                let pair = component_rep(&f, n, &id).unwrap();
                assert_eq!(pair.n(), n, "{} n={}", id.label(), n);
                let jt = jordan_type(pair.first()).unwrap();
                assert_eq!(
                    jt,
                    Partition::two_one(n, n / 2).unwrap(),
                    "{} n={}",
                    id.label(),
                    n
                );
            }
        }
    }

    #[test]
    fn x1_at_n4_is_the_w_pair() {
        let f = gf(2);
        let rep = component_rep(&f, 4, &ComponentId::X(1)).unwrap();
        assert_eq!(rep, w_pair(&f).unwrap());
    }

    #[test]
    fn x0_plus_at_n5_matches_the_explicit_matrices() {
        let f = gf(2);
        let rep = component_rep(&f, 5, &ComponentId::XPlus(0)).unwrap();
        let mut e = Mat::zeros(&f, 5, 5).unwrap();
        e.set(0, 3, 1);
        e.set(1, 4, 1);
        let mut x = Mat::zeros(&f, 5, 5).unwrap();
        x.set(0, 2, 1);
        x.set(1, 3, 1);
        assert_eq!(rep.first(), &e);
        assert_eq!(rep.second(), &x);
        let minus = component_rep(&f, 5, &ComponentId::XMinus(0)).unwrap();
        assert_eq!(minus.first(), &e.transpose());
        assert_eq!(minus.second(), &x.transpose());
    }

    #[test]
    fn x0_even_at_n4_matches_the_diagonal_example() {
        let f = gf(2);
        let rep = component_rep(&f, 4, &ComponentId::X(0)).unwrap();
        let mut e = Mat::zeros(&f, 4, 4).unwrap();
        e.set(0, 2, 1);
        e.set(1, 3, 1);
        let mut b = Mat::zeros(&f, 4, 4).unwrap();
        b.set(1, 3, 1); // diag(0, 1) in the top-right block
        assert_eq!(rep.first(), &e);
        assert_eq!(rep.second(), &b);
    }

    #[test]
    fn component_rep_errors_are_structured() {
        let f = gf(2);
        assert!(matches!(
            component_rep(&f, 4, &ComponentId::XPlus(0)),
            Err(VarietyError::BadComponent { .. })
        ));
        // XHalf needs n/2 even: n = 7 has m = 3.
        assert!(matches!(
            component_rep(&f, 7, &ComponentId::XHalf),
            Err(VarietyError::BadComponent { .. })
        ));
        assert!(matches!(
            component_rep(&f, 4, &ComponentId::X(2)),
            Err(VarietyError::BadComponent { .. })
        ));
        // X(0) at n=6 needs 3 distinct diagonal values; GF(2) has only 2.
        assert_eq!(
            component_rep(&f, 6, &ComponentId::X(0)).unwrap_err(),
            VarietyError::NotEnoughElements { needed: 3, q: 2 }
        );
        assert!(component_rep(&gf(4), 6, &ComponentId::X(0)).is_ok());
    }

    #[test]
    fn xhalf_handles_n1_and_n5() {
        let f = gf(2);
        let p1 = component_rep(&f, 1, &ComponentId::XHalf).unwrap();
        assert_eq!(p1.n(), 1);
        assert!(p1.first().is_zero() && p1.second().is_zero());
        let p5 = component_rep(&f, 5, &ComponentId::XHalf).unwrap();
        assert_eq!(p5.n(), 5);
        assert_eq!(p5.first().rank(), 2);
    }

    #[test]
    fn random_pairs_are_valid_and_seeded() {
        let f = gf(4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6usize {
            let p = random_pair(&f, n, &mut rng).unwrap();
            assert_eq!(p.n(), n);
        }
        let a = random_pair(&f, 5, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        let b = random_pair(&f, 5, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        assert_eq!(a, b);
    }
}
