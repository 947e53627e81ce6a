//! Splitting a module into indecomposable summands.
//!
//! The primary route enumerates the endomorphism algebra exhaustively
//! looking for a nontrivial idempotent; finding none certifies the module
//! indecomposable, and finding one splits the module along its image and
//! complement. When the endomorphism algebra is too large to enumerate
//! within the budget, a Fitting-style fallback powers candidate
//! endomorphisms up to stability and splits along kernel and image; a
//! module this route fails to split is reported as a leaf without
//! certification.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ff::Elem;
use crate::matff::{combination_count, enumerate_affine, EnumOpts, Mat};

use super::{classify, Fingerprint, IndecClass, ModvarError, PairModule};

#[derive(Debug, Clone)]
pub struct DecomposeOpts {
    /// Exhaustive idempotent search limit on the endomorphism algebra size.
    pub idempotent_budget: u64,
    /// Candidate endomorphisms to try in the Fitting fallback.
    pub fitting_trials: usize,
    pub seed: u64,
}

impl Default for DecomposeOpts {
    fn default() -> Self {
        DecomposeOpts {
            idempotent_budget: 1 << 20,
            fitting_trials: 200,
            seed: 0,
        }
    }
}

/// One indecomposable (or unsplit) summand.
#[derive(Debug, Clone)]
pub struct Summand {
    pub module: PairModule,
    pub class: IndecClass,
    pub fingerprint: Fingerprint,
    /// True when indecomposability was certified by exhausting the
    /// endomorphism algebra (or the dimension is 1).
    pub certified: bool,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.module.dim()).collect()
    }

    pub fn all_certified(&self) -> bool {
        self.summands.iter().all(|s| s.certified)
    }

    /// Sorted class labels, e.g. for comparing decompositions.
    pub fn labels(&self) -> Vec<String> {
        let mut v: Vec<String> = self.summands.iter().map(|s| s.class.label()).collect();
        v.sort();
        v
    }

    /// Sorted fingerprints of the summands; two decompositions of
    /// isomorphic modules must agree here.
    pub fn fingerprints(&self) -> Vec<Fingerprint> {
        let mut v: Vec<Fingerprint> = self.summands.iter().map(|s| s.fingerprint).collect();
        v.sort();
        v
    }
}

/// Splits into indecomposables and classifies each summand. Deterministic
/// for fixed options, including across worker configurations.
pub fn decompose(module: &PairModule, opts: &DecomposeOpts) -> Result<Decomposition, ModvarError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut leaves = Vec::new();
    split(module, opts, &mut rng, &mut leaves)?;
    let mut summands = Vec::with_capacity(leaves.len());
    for (module, certified) in leaves {
        let class = if certified {
            classify(&module)?
        } else {
            IndecClass::Other
        };
        let fingerprint = module.fingerprint()?;
        summands.push(Summand {
            module,
            class,
            fingerprint,
            certified,
        });
    }
    Ok(Decomposition { summands })
}

fn split(
    module: &PairModule,
    opts: &DecomposeOpts,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<(PairModule, bool)>,
) -> Result<(), ModvarError> {
    let n = module.dim();
    if n == 1 {
        out.push((module.clone(), true));
        return Ok(());
    }
    let ends = module.end_basis()?;
    let q = module.field().q();
    if combination_count(q, ends.len()) <= opts.idempotent_budget as u128 {
        match minimal_idempotent(module, &ends, opts.idempotent_budget)? {
            None => {
                out.push((module.clone(), true));
                Ok(())
            }
            Some(eps) => {
                let (first, second) = split_by_idempotent(module, &eps)?;
                split(&first, opts, rng, out)?;
                split(&second, opts, rng, out)
            }
        }
    } else {
        // Fitting fallback: basis elements first, then seeded random
        // combinations; power to stability and split along kernel/image.
        let mut tried = 0usize;
        let mut candidate = |rng: &mut ChaCha8Rng| -> Option<Mat> {
            if tried < ends.len() {
                let c = ends[tried].clone();
                tried += 1;
                return Some(c);
            }
            if tried < ends.len() + opts.fitting_trials {
                tried += 1;
                let mut g = Mat::zeros(module.field(), n, n).ok()?;
                for h in &ends {
                    let c = rng.gen_range(0..q) as Elem;
                    if c != 0 {
                        g.add_scaled_in_place(h, c);
                    }
                }
                return Some(g);
            }
            None
        };
        while let Some(phi) = candidate(rng) {
            let stable = stable_power(&phi)?;
            let (rank, kernel) = stable.rank_kernel();
            if rank == 0 || rank == n {
                continue;
            }
            let image = stable.column_space_basis();
            let first = module.restrict(&image)?;
            let second = module.restrict(&kernel)?;
            split(&first, opts, rng, out)?;
            return split(&second, opts, rng, out);
        }
        out.push((module.clone(), false));
        Ok(())
    }
}

/// The nontrivial idempotent with the smallest enumeration index, if any.
fn minimal_idempotent(
    module: &PairModule,
    ends: &[Mat],
    budget: u64,
) -> Result<Option<Mat>, ModvarError> {
    let identity = Mat::identity(module.field(), module.dim())?;
    let enum_opts = EnumOpts::with_budget(budget);
    let best = enumerate_affine(
        ends,
        &enum_opts,
        || None::<(u64, Mat)>,
        |acc, idx, g| {
            if acc.is_some() {
                return;
            }
            if g.is_zero() || g == &identity {
                return;
            }
            if let Ok(sq) = g.mul(g) {
                if &sq == g {
                    *acc = Some((idx, g.clone()));
                }
            }
        },
        |a, b| match (a, b) {
            (None, x) => x,
            (x, None) => x,
            (Some(x), Some(y)) => {
                if x.0 <= y.0 {
                    Some(x)
                } else {
                    Some(y)
                }
            }
        },
    )?;
    Ok(best.map(|(_, eps)| eps))
}

/// M = im(eps) + im(1 - eps) as module summands.
fn split_by_idempotent(
    module: &PairModule,
    eps: &Mat,
) -> Result<(PairModule, PairModule), ModvarError> {
    let identity = Mat::identity(module.field(), module.dim())?;
    let complement = identity.sub(eps)?;
    let first = module.restrict(&eps.column_space_basis())?;
    let second = module.restrict(&complement.column_space_basis())?;
    debug_assert_eq!(first.dim() + second.dim(), module.dim());
    Ok((first, second))
}

/// phi^(2^ceil(log2 n)): high enough that kernel and image stabilize.
fn stable_power(phi: &Mat) -> Result<Mat, ModvarError> {
    let n = phi.rows();
    let mut p = phi.clone();
    let mut covered = 1usize;
    while covered < n {
        p = p.mul(&p)?;
        covered *= 2;
    }
    Ok(p)
}
