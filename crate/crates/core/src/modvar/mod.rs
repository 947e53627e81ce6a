//! Finite-dimensional modules attached to commuting square-zero pairs, and
//! their isomorphism invariants.
//!
//! A pair (X, Y) makes F_q^n a module over k[x, y]/(x^2, y^2) with x and y
//! acting by the two matrices. [`Fingerprint`] collects conjugation
//! invariants: dimension, ranks of X, Y, XY and X + Y, the dimensions of
//! the radical XM + YM and the socle ker X intersect ker Y, the radical
//! (Loewy) length, and the endomorphism algebra dimension. The submodule
//! [`decompose`] splits a module into indecomposable summands, [`classify`]
//! names the recurring small indecomposables, and [`is_isomorphic`] decides
//! isomorphism by searching the homomorphism space for an invertible
//! element, exhaustively when the space is small and by seeded sampling
//! (with the one-sided uncertainty that entails) when it is not.

pub mod decompose;

use thiserror::Error;

use crate::ff::{Elem, Field};
use crate::matff::{Mat, MatError};
use crate::variety::{CommPair, VarietyError};

pub use decompose::{decompose, DecomposeOpts, Decomposition, Summand};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModvarError {
    #[error("duality by transposition requires characteristic 2")]
    CharNot2,
    #[error("modules live over different fields")]
    FieldMismatch,
    #[error("restriction columns do not span a submodule")]
    NotASubmodule,
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
}

/// Conjugation invariants of a module; equal fingerprints are necessary
/// (not sufficient) for isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub dim: usize,
    pub rk_x: usize,
    pub rk_y: usize,
    pub rk_xy: usize,
    pub rk_x_plus_y: usize,
    pub dim_rad: usize,
    pub dim_soc: usize,
    pub loewy: usize,
    pub end_dim: usize,
}

/// F_q^n as a module over k[x, y]/(x^2, y^2), with the generators acting by
/// the two coordinates of a commuting square-zero pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairModule {
    pair: CommPair,
}

impl PairModule {
    pub fn new(pair: CommPair) -> PairModule {
        PairModule { pair }
    }

    pub fn dim(&self) -> usize {
        self.pair.n()
    }

    pub fn field(&self) -> &Field {
        self.pair.field()
    }

    /// Action of the first generator.
    pub fn x(&self) -> &Mat {
        self.pair.first()
    }

    /// Action of the second generator.
    pub fn y(&self) -> &Mat {
        self.pair.second()
    }

    pub fn pair(&self) -> &CommPair {
        &self.pair
    }

    pub fn direct_sum(&self, other: &PairModule) -> Result<PairModule, ModvarError> {
        Ok(PairModule::new(self.pair.direct_sum(&other.pair)?))
    }

    pub fn conjugate_by(&self, g: &Mat) -> Result<PairModule, ModvarError> {
        Ok(PairModule::new(self.pair.conjugate_by(g)?))
    }

    /// The dual module. In characteristic 2 transposing both actions
    /// realizes it on the same underlying space.
    pub fn dualize(&self) -> Result<PairModule, ModvarError> {
        if !self.field().has_char_2() {
            return Err(ModvarError::CharNot2);
        }
        Ok(PairModule::new(self.pair.transpose()))
    }

    /// Basis of Hom(self, other): matrices g with g X = X' g and
    /// g Y = Y' g, where primes act on `other`.
    pub fn hom_basis(&self, other: &PairModule) -> Result<Vec<Mat>, ModvarError> {
        if self.field() != other.field() {
            return Err(ModvarError::FieldMismatch);
        }
        let f = self.field();
        let (m, n) = (self.dim(), other.dim());
        // Unknown g is n x m; stack the linear conditions from both
        // generators: rows indexed by (generator, r, c), columns by g(k, l).
        let mut op = Mat::zeros(f, 2 * n * m, n * m)?;
        for (block, (act_src, act_dst)) in
            [(self.x(), other.x()), (self.y(), other.y())].iter().enumerate()
        {
            for r in 0..n {
                for c in 0..m {
                    let row = block * n * m + r * m + c;
                    // (A' g)(r, c) = sum_k A'(r, k) g(k, c)
                    for k in 0..n {
                        let coeff = act_dst.at(r, k);
                        if coeff != 0 {
                            let col = k * m + c;
                            op.set(row, col, f.add(op.at(row, col), coeff));
                        }
                    }
                    // -(g A)(r, c) = -sum_l g(r, l) A(l, c)
                    for l in 0..m {
                        let coeff = act_src.at(l, c);
                        if coeff != 0 {
                            let col = r * m + l;
                            op.set(row, col, f.sub(op.at(row, col), coeff));
                        }
                    }
                }
            }
        }
        let (_, kernel) = op.rank_kernel();
        let mut basis = Vec::with_capacity(kernel.len());
        for v in kernel {
            let g = Mat::from_entries(f, n, m, v)?;
            basis.push(g);
        }
        Ok(basis)
    }

    /// Basis of the endomorphism algebra.
    pub fn end_basis(&self) -> Result<Vec<Mat>, ModvarError> {
        self.hom_basis(self)
    }

    /// Restricts the actions to the span of the given linearly independent
    /// columns, which must be closed under both actions.
    pub fn restrict(&self, columns: &[Vec<Elem>]) -> Result<PairModule, ModvarError> {
        let f = self.field();
        let n = self.dim();
        let k = columns.len();
        if k == 0 || k > n {
            return Err(ModvarError::NotASubmodule);
        }
        let mut p = Mat::zeros(f, n, k)?;
        for (c, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(ModvarError::NotASubmodule);
            }
            for r in 0..n {
                p.set(r, c, col[r]);
            }
        }
        let solve_action = |a: &Mat| -> Result<Mat, ModvarError> {
            let image = a.mul(&p)?;
            p.solve_exact(&image).map_err(|e| match e {
                MatError::Inconsistent => ModvarError::NotASubmodule,
                other => ModvarError::Mat(other),
            })
        };
        let x = solve_action(self.x())?;
        let y = solve_action(self.y())?;
        Ok(PairModule::new(CommPair::new(x, y)?))
    }

    /// Radical length: the least l with (x, y)^l M = 0; 1 for semisimple
    /// modules.
    fn loewy_length(&self) -> Result<usize, ModvarError> {
        let mut layer = Mat::identity(self.field(), self.dim())?;
        for l in 1..=self.dim() + 1 {
            let spanned = self.x().mul(&layer)?.hcat(&self.y().mul(&layer)?)?;
            let basis = spanned.column_space_basis();
            if basis.is_empty() {
                return Ok(l);
            }
            let mut next = Mat::zeros(self.field(), self.dim(), basis.len())?;
            for (c, col) in basis.iter().enumerate() {
                for r in 0..self.dim() {
                    next.set(r, c, col[r]);
                }
            }
            layer = next;
        }
        unreachable!("the radical chain strictly descends");
    }

    pub fn fingerprint(&self) -> Result<Fingerprint, ModvarError> {
        let x = self.x();
        let y = self.y();
        let n = self.dim();
        let rk_x = x.rank();
        let rk_y = y.rank();
        let rk_xy = x.mul(y)?.rank();
        let rk_x_plus_y = x.add(y)?.rank();
        let dim_rad = x.hcat(y)?.rank();
        let dim_soc = n - x.vcat(y)?.rank();
        let loewy = self.loewy_length()?;
        let end_dim = self.end_basis()?.len();
        Ok(Fingerprint {
            dim: n,
            rk_x,
            rk_y,
            rk_xy,
            rk_x_plus_y,
            dim_rad,
            dim_soc,
            loewy,
            end_dim,
        })
    }
}

/// The recurring small indecomposables: the one-dimensional module, the
/// two-dimensional modules U(a : b) where both generators act through a
/// common rank-one square-zero matrix with coefficient ratio (a : b), the
/// four-dimensional module W, and the odd-dimensional pairs ZPlus/ZMinus
/// distinguished by radical and socle dimensions. The ratio in U is
/// normalized so its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IndecClass {
    Triv,
    U { a: Elem, b: Elem },
    W,
    ZPlus { n: usize },
    ZMinus { n: usize },
    Other,
}

impl IndecClass {
    pub fn label(&self) -> String {
        match self {
            IndecClass::Triv => "TRIV".to_string(),
            IndecClass::U { a, b } => format!("U({}:{})", a, b),
            IndecClass::W => "W".to_string(),
            IndecClass::ZPlus { n } => format!("ZPLUS({})", n),
            IndecClass::ZMinus { n } => format!("ZMINUS({})", n),
            IndecClass::Other => "OTHER".to_string(),
        }
    }
}

/// Fingerprint of W, frozen from a hand computation.
pub const W_FINGERPRINT: Fingerprint = Fingerprint {
    dim: 4,
    rk_x: 2,
    rk_y: 2,
    rk_xy: 1,
    rk_x_plus_y: 2,
    dim_rad: 3,
    dim_soc: 1,
    loewy: 3,
    end_dim: 4,
};

/// Names the isomorphism class of an indecomposable module; `Other` for
/// anything unrecognized. Meaningful only for indecomposable input.
pub fn classify(module: &PairModule) -> Result<IndecClass, ModvarError> {
    let n = module.dim();
    if n == 1 {
        return Ok(IndecClass::Triv);
    }
    if n == 2 {
        return Ok(classify_dim2(module));
    }
    let fp = module.fingerprint()?;
    if n == 4 && fp == W_FINGERPRINT {
        return Ok(IndecClass::W);
    }
    if n % 2 == 1 {
        let m = n / 2;
        if fp.rk_x == m && fp.rk_y == m && fp.rk_xy == 0 {
            if fp.dim_rad == m && fp.dim_soc == m {
                return Ok(IndecClass::ZPlus { n });
            }
            if fp.dim_rad == m + 1 && fp.dim_soc == m + 1 {
                return Ok(IndecClass::ZMinus { n });
            }
        }
    }
    Ok(IndecClass::Other)
}

fn classify_dim2(module: &PairModule) -> IndecClass {
    let f = module.field();
    let x = module.x();
    let y = module.y();
    if x.is_zero() && y.is_zero() {
        // Decomposable (two trivial summands); not a named class.
        return IndecClass::Other;
    }
    // The nonzero one of X, Y is a rank-one square-zero e, and the other
    // must be proportional to it since they commute.
    let (e, flipped) = if !x.is_zero() { (x, false) } else { (y, true) };
    let (r0, c0) = (0..2)
        .flat_map(|r| (0..2).map(move |c| (r, c)))
        .find(|&(r, c)| e.at(r, c) != 0)
        .expect("e is nonzero");
    let other = if flipped { x } else { y };
    let ratio = f
        .div(other.at(r0, c0), e.at(r0, c0))
        .expect("pivot is nonzero");
    // Verify proportionality; bail out to Other on the (impossible for
    // valid pairs) failure rather than panicking.
    let mut proportional = true;
    for r in 0..2 {
        for c in 0..2 {
            if other.at(r, c) != f.mul(ratio, e.at(r, c)) {
                proportional = false;
            }
        }
    }
    if !proportional {
        return IndecClass::Other;
    }
    let (a, b) = if flipped { (ratio, 1) } else { (1, ratio) };
    // Normalize the first nonzero coordinate to 1.
    if a == 0 {
        IndecClass::U { a: 0, b: 1 }
    } else {
        let binv = f.div(b, a).expect("a is nonzero");
        IndecClass::U { a: 1, b: binv }
    }
}

/// Isomorphism verdict; `certified` is false only when a sampled search
/// found no invertible homomorphism, which leaves a one-sided doubt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoOutcome {
    pub isomorphic: bool,
    pub certified: bool,
}

#[derive(Debug, Clone)]
pub struct IsoOpts {
    /// Exhaustive search limit on the size of the hom space.
    pub budget: u64,
    /// Random combinations to try past the budget.
    pub samples: usize,
    pub seed: u64,
}

impl Default for IsoOpts {
    fn default() -> Self {
        IsoOpts {
            budget: 1 << 20,
            samples: 512,
            seed: 0,
        }
    }
}

/// Decides isomorphism by looking for an invertible element of
/// Hom(a, b): exhaustively over the hom space when q^dim fits the budget,
/// otherwise by seeded random sampling, whose failure to find one is
/// reported uncertified.
pub fn is_isomorphic(
    a: &PairModule,
    b: &PairModule,
    opts: &IsoOpts,
) -> Result<IsoOutcome, ModvarError> {
    use crate::matff::{combination_count, enumerate_affine, EnumOpts};
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;

    let certain_no = IsoOutcome {
        isomorphic: false,
        certified: true,
    };
    if a.field() != b.field() {
        return Err(ModvarError::FieldMismatch);
    }
    if a.dim() != b.dim() {
        return Ok(certain_no);
    }
    if a.fingerprint()? != b.fingerprint()? {
        return Ok(certain_no);
    }
    let n = a.dim();
    let homs = a.hom_basis(b)?;
    if homs.is_empty() {
        return Ok(certain_no);
    }
    let q = a.field().q();
    if combination_count(q, homs.len()) <= opts.budget as u128 {
        let enum_opts = EnumOpts {
            budget: opts.budget,
            workers: 1,
        };
        let found = enumerate_affine(
            &homs,
            &enum_opts,
            || false,
            |acc, _, g| {
                if !*acc && g.rank() == n {
                    *acc = true;
                }
            },
            |x, y| x || y,
        )?;
        return Ok(IsoOutcome {
            isomorphic: found,
            certified: true,
        });
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let mut g = Mat::zeros(a.field(), n, n)?;
        for h in &homs {
            let c = rng.gen_range(0..q) as Elem;
            if c != 0 {
                g.add_scaled_in_place(h, c);
            }
        }
        if g.rank() == n {
            return Ok(IsoOutcome {
                isomorphic: true,
                certified: true,
            });
        }
    }
    Ok(IsoOutcome {
        isomorphic: false,
        certified: false,
    })
}
