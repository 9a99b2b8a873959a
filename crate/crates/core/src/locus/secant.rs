use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rank_checked;
use crate::rng::{random_point, trial_rng, DEFAULT_BOX};
use crate::schemes::ZeroDimScheme;
use crate::segre::{conditions_matrix, DEFAULT_PRIMES};
use crate::space::{Multidegree, MultiprojectiveSpace, PointConfiguration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SecantEstimate {
    pub expected_dim: usize,
    pub estimated_dim: usize,
    pub defect: usize,
    pub trials: usize,
    pub seed: u64,
}

/// `min(r(n+1), prod(n_i+1)) - 1`.
pub fn expected_secant_dim(space: &MultiprojectiveSpace, r: usize) -> usize {
    (r * (space.dim() + 1)).min(space.ambient_sections()) - 1
}

/// Lower bound for `dim sigma_r(nu(Y))` from the span of the tangent
/// spaces at `r` random points, maximized over trials.
pub fn secant_dim_estimate(
    space: &MultiprojectiveSpace,
    r: usize,
    trials: usize,
    seed: u64,
) -> Result<SecantEstimate> {
    secant_dim_estimate_with_box(space, r, trials, seed, DEFAULT_BOX, &DEFAULT_PRIMES)
}

pub fn secant_dim_estimate_with_box(
    space: &MultiprojectiveSpace,
    r: usize,
    trials: usize,
    seed: u64,
    b: i64,
    primes: &[u64],
) -> Result<SecantEstimate> {
    if trials == 0 || r == 0 || b < 1 {
        return Err(Error::BadParams("secant estimate needs trials, r and box >= 1".into()));
    }
    let expected_dim = expected_secant_dim(space, r);
    let d = Multidegree::all_ones(space.k());
    let mut best = 0;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let points = loop {
            let pts: Vec<_> = (0..r).map(|_| random_point(&mut rng, space, b)).collect();
            if let Ok(c) = PointConfiguration::new(space.clone(), pts) {
                break c;
            }
        };
        let m = conditions_matrix(&ZeroDimScheme::double(&points), &d)?;
        best = best.max(rank_checked(&m, primes)?);
        if best == expected_dim + 1 {
            break;
        }
    }
    let estimated_dim = best - 1;
    Ok(SecantEstimate {
        expected_dim,
        estimated_dim,
        defect: expected_dim - estimated_dim,
        trials,
        seed,
    })
}
