//! Seeded randomness. Every trial draws from its own stream, derived from
//! the root seed and the trial index, so results do not depend on the
//! order in which trials run.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{rank_fraction_free, IntMatrix};
use crate::space::{MppPoint, MultiprojectiveSpace};

/// Default half-width of the coordinate box.
pub const DEFAULT_BOX: i64 = 100;

/// splitmix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream seed for trial `trial` under root seed `seed`.
pub fn mix(seed: u64, trial: u64) -> u64 {
    splitmix64(seed ^ splitmix64(trial))
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed, trial))
}

/// A nonzero integer vector with entries in `[-b, b]`.
pub fn random_vector<R: Rng>(rng: &mut R, len: usize, b: i64) -> Vec<BigInt> {
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-b..=b)).collect();
        if v.iter().any(|&x| x != 0) {
            return v.into_iter().map(BigInt::from).collect();
        }
    }
}

pub fn random_point<R: Rng>(rng: &mut R, space: &MultiprojectiveSpace, b: i64) -> MppPoint {
    let coords = space.dims().iter().map(|&n| random_vector(rng, n + 1, b)).collect();
    MppPoint::new(coords).expect("nonzero coordinates")
}

/// An invertible integer matrix with entries in `[-b, b]`, as rationals.
pub fn random_invertible<R: Rng>(rng: &mut R, size: usize, b: i64) -> Vec<Vec<BigRational>> {
    loop {
        let rows: Vec<Vec<BigInt>> = (0..size)
            .map(|_| (0..size).map(|_| BigInt::from(rng.gen_range(-b..=b))).collect())
            .collect();
        let m = IntMatrix::from_rows(size, rows.clone()).expect("square");
        if rank_fraction_free(&m) == size {
            return rows
                .into_iter()
                .map(|r| r.into_iter().map(BigRational::from_integer).collect())
                .collect();
        }
    }
}

/// One random invertible map per factor.
pub fn random_transform<R: Rng>(
    rng: &mut R,
    space: &MultiprojectiveSpace,
    b: i64,
) -> Vec<Vec<Vec<BigRational>>> {
    space.dims().iter().map(|&n| random_invertible(rng, n + 1, b)).collect()
}
