//! Concrete point sets realizing the exceptional families and the
//! extremal-defect constructions.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{random_transform, trial_rng};
use crate::segre::apply_transform;
use crate::space::{MppPoint, MultiprojectiveSpace, PointConfiguration};

fn e(len: usize, j: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    v[j] = BigInt::one();
    v
}

fn ones(len: usize) -> Vec<BigInt> {
    vec![BigInt::one(); len]
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn finish(
    space: MultiprojectiveSpace,
    points: Vec<Vec<Vec<BigInt>>>,
    variant: u64,
) -> Result<(MultiprojectiveSpace, PointConfiguration)> {
    let points = points.into_iter().map(MppPoint::new).collect::<Result<Vec<_>>>()?;
    let mut config = PointConfiguration::new(space.clone(), points)?;
    if variant > 0 {
        let mut rng = trial_rng(variant, 0);
        let maps = random_transform(&mut rng, &space, 3);
        config = apply_transform(&config, &maps)?;
    }
    Ok((space, config))
}

/// `a = (a_1, u_2, ..., u_k)`, `b = (b_1, u_2, ..., u_k)`,
/// `c = (c_1, ..., c_k)` on `P^m x (P^1)^{k-1}` with `u_i != c_i`.
///
/// For `m = 1` the value `c_1` cycles through `a_1`, `b_1` and a third
/// point with `variant % 3`. A nonzero `variant` also moves the set by a
/// random automorphism seeded by it.
pub fn build_ex1(m: usize, k: usize, variant: u64) -> Result<(MultiprojectiveSpace, PointConfiguration)> {
    if !matches!(m, 1 | 2) || k < 3 {
        return Err(Error::BadParams(format!("build_ex1 needs m in {{1,2}} and k >= 3, got m={m}, k={k}")));
    }
    let mut dims = vec![1; k];
    dims[0] = m;
    let space = MultiprojectiveSpace::new(dims)?;
    let u = e(2, 0);
    let c = e(2, 1);
    let (a1, b1, c1) = if m == 2 {
        (e(3, 0), e(3, 1), e(3, 2))
    } else {
        let c1 = match variant % 3 {
            0 => ones(2),
            1 => e(2, 0),
            _ => e(2, 1),
        };
        (e(2, 0), e(2, 1), c1)
    };
    let mut a = vec![a1];
    let mut b = vec![b1];
    let mut cc = vec![c1];
    for _ in 1..k {
        a.push(u.clone());
        b.push(u.clone());
        cc.push(c.clone());
    }
    finish(space, vec![a, b, cc], variant)
}

/// Which of `u`, `v` the third point meets on a distinguished `P^1`
/// factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coincide {
    #[default]
    None,
    WithU,
    WithV,
}

/// `u, v` agree on every factor past the first two and span a line in each
/// of the first two; `o` differs from them on every later factor and lies
/// off the line on a `P^2` factor. On a `P^1` factor among the first two,
/// `coincide` chooses whether `o` shares its coordinate with `u`, `v` or
/// neither.
pub fn build_a40(
    n1: usize,
    n2: usize,
    k: usize,
    coincide: [Coincide; 2],
) -> Result<(MultiprojectiveSpace, PointConfiguration)> {
    build_a40_variant(n1, n2, k, coincide, 0)
}

pub fn build_a40_variant(
    n1: usize,
    n2: usize,
    k: usize,
    coincide: [Coincide; 2],
    variant: u64,
) -> Result<(MultiprojectiveSpace, PointConfiguration)> {
    if !matches!(n1, 1 | 2) || !matches!(n2, 1 | 2) || k < 3 {
        return Err(Error::BadParams(format!(
            "build_a40 needs n1, n2 in {{1,2}} and k >= 3, got ({n1}, {n2}, {k})"
        )));
    }
    let mut dims = vec![1; k];
    dims[0] = n1;
    dims[1] = n2;
    let space = MultiprojectiveSpace::new(dims)?;
    let mut u = Vec::with_capacity(k);
    let mut v = Vec::with_capacity(k);
    let mut o = Vec::with_capacity(k);
    for (j, &n) in [n1, n2].iter().enumerate() {
        u.push(e(n + 1, 0));
        v.push(e(n + 1, 1));
        if n == 2 {
            if coincide[j] != Coincide::None {
                return Err(Error::BadParams(format!(
                    "coincidence requested on factor {j}, which is a plane"
                )));
            }
            o.push(e(3, 2));
        } else {
            o.push(match coincide[j] {
                Coincide::None => ones(2),
                Coincide::WithU => e(2, 0),
                Coincide::WithV => e(2, 1),
            });
        }
    }
    for _ in 2..k {
        u.push(e(2, 0));
        v.push(e(2, 0));
        o.push(e(2, 1));
    }
    finish(space, vec![u, v, o], variant)
}

/// `r` points of `P^{n-1} x P^1` on the moment curve of a `mu`-dimensional
/// coordinate subspace of the first factor, all with second coordinate
/// `[1:0]`.
pub fn build_g0(n: usize, mu: usize, r: usize) -> Result<(MultiprojectiveSpace, PointConfiguration)> {
    if n < 3 || mu < 1 || mu > n - 1 || r < mu + 1 {
        return Err(Error::BadParams(format!(
            "build_g0 needs n >= 3, 1 <= mu <= n-1, r >= mu+1, got ({n}, {mu}, {r})"
        )));
    }
    let space = MultiprojectiveSpace::new(vec![n - 1, 1])?;
    let points = (0..r)
        .map(|t| {
            let mut x = vec![BigInt::zero(); n];
            let mut pow = BigInt::one();
            for xj in x.iter_mut().take(mu + 1) {
                *xj = pow.clone();
                pow *= BigInt::from(t);
            }
            vec![x, e(2, 0)]
        })
        .collect();
    finish(space, points, 0)
}

/// On `(P^1)^n`: `p_i = ([1:i], [1:0], ..., [1:0])` for `i < r` and
/// `o = ([1:r], [0:1], ..., [0:1])`.
pub fn build_kk1(n: usize, r: usize) -> Result<(MultiprojectiveSpace, PointConfiguration)> {
    if n < 3 || r < 3 {
        return Err(Error::BadParams(format!("build_kk1 needs n >= 3 and r >= 3, got ({n}, {r})")));
    }
    let space = MultiprojectiveSpace::p1_power(n)?;
    let mut points: Vec<Vec<Vec<BigInt>>> = (1..r)
        .map(|i| {
            let mut p = vec![ints(&[1, i as i64])];
            p.extend((1..n).map(|_| e(2, 0)));
            p
        })
        .collect();
    let mut o = vec![ints(&[1, r as i64])];
    o.extend((1..n).map(|_| e(2, 1)));
    points.push(o);
    finish(space, points, 0)
}
