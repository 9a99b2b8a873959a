//! Helpers shared by the integration tests, including an independent
//! conditions-matrix construction used as an oracle.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use terracini_core::linalg::{independent_subset, rank_fraction_free, IntMatrix};
use terracini_core::rng::{random_point, random_transform, random_vector};
use terracini_core::schemes::check_residual_inequalities;
use terracini_core::segre::{apply_transform, conditions_matrix, double_report, is_minimal, permute_factors};
use terracini_core::{
    cohomology, delta, CoordinateDivisor, MppPoint, Multidegree, Multiplicity, MultiprojectiveSpace,
    PointConfiguration, SchemeTerm, ZeroDimScheme,
};

/// Conditions imposed by `z` on multilinear forms in the factors selected
/// by `flags`, built by evaluating monomials and their first partial
/// derivatives at each point. Monomials are enumerated with the first
/// factor's index varying fastest, unlike the Kronecker layout.
pub fn jet_conditions(z: &ZeroDimScheme, flags: &[bool]) -> IntMatrix {
    let sel: Vec<usize> = (0..z.space().k()).filter(|&i| flags[i]).collect();
    let sizes: Vec<usize> = sel.iter().map(|&i| z.space().factor_dim(i) + 1).collect();
    let total: usize = sizes.iter().product();
    let monomials = odometer(&sizes);
    assert_eq!(monomials.len(), total);

    let mut rows = Vec::new();
    for t in z.terms() {
        let v: Vec<&[BigInt]> = sel.iter().map(|&i| t.point.factor(i)).collect();
        // Value of every monomial at the point.
        let eval: Vec<BigInt> = monomials
            .iter()
            .map(|m| m.iter().zip(&v).map(|(&j, vi)| vi[j].clone()).product())
            .collect();
        rows.push(eval);
        if t.multiplicity == Multiplicity::Double {
            for (slot, vi) in v.iter().enumerate() {
                for dir in 0..vi.len() {
                    // d/dx^{(slot)}_{dir} of prod_l x^{(l)}_{m_l}.
                    let row = monomials
                        .iter()
                        .map(|m| {
                            if m[slot] != dir {
                                return BigInt::zero();
                            }
                            m.iter()
                                .zip(&v)
                                .enumerate()
                                .filter(|(l, _)| *l != slot)
                                .map(|(_, (&j, vl))| vl[j].clone())
                                .product()
                        })
                        .collect();
                    rows.push(row);
                }
            }
        }
    }
    IntMatrix::from_rows(total, rows).unwrap()
}

/// All multi-indices below `sizes`, first coordinate fastest.
fn odometer(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; sizes.len()];
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            if i == sizes.len() {
                return out;
            }
            cur[i] += 1;
            if cur[i] < sizes[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn point(coords: &[&[i64]]) -> MppPoint {
    MppPoint::from_i64(coords).unwrap()
}

pub fn space(dims: &[usize]) -> MultiprojectiveSpace {
    MultiprojectiveSpace::new(dims.to_vec()).unwrap()
}

pub fn config(dims: &[usize], pts: &[Vec<Vec<i64>>]) -> PointConfiguration {
    let points = pts
        .iter()
        .map(|p| MppPoint::new(p.iter().map(|v| ints(v)).collect()).unwrap())
        .collect();
    PointConfiguration::new(space(dims), points).unwrap()
}

/// Truncates every factor of every point to its first `keep[i] + 1`
/// coordinates, dropping factors with `keep[i] = 0`.
pub fn restrict(config: &PointConfiguration, keep: &[usize]) -> PointConfiguration {
    let dims: Vec<usize> = keep.iter().copied().filter(|&m| m > 0).collect();
    let points = config
        .points()
        .iter()
        .map(|p| {
            MppPoint::new(
                keep.iter()
                    .enumerate()
                    .filter(|(_, &m)| m > 0)
                    .map(|(i, &m)| p.factor(i)[..=m].to_vec())
                    .collect(),
            )
            .unwrap()
        })
        .collect();
    if dims.is_empty() {
        return PointConfiguration::new(MultiprojectiveSpace::point(), points).unwrap();
    }
    PointConfiguration::new(space(&dims), points).unwrap()
}

/// Drops factor `i` from every point.
pub fn drop_factor(config: &PointConfiguration, i: usize) -> Option<PointConfiguration> {
    let mut dims = config.space().dims().to_vec();
    dims.remove(i);
    let points = config
        .points()
        .iter()
        .map(|p| {
            let mut c = p.coords().to_vec();
            c.remove(i);
            MppPoint::new(c).unwrap()
        })
        .collect();
    PointConfiguration::new(MultiprojectiveSpace::new(dims).ok()?, points).ok()
}

pub fn unit(len: usize, j: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    v[j] = BigInt::one();
    v
}

/// `r` distinct points with coordinates in `[-b, b]`.
pub fn random_config<R: Rng>(rng: &mut R, space: &MultiprojectiveSpace, r: usize, b: i64) -> PointConfiguration {
    loop {
        let pts = (0..r).map(|_| random_point(rng, space, b)).collect();
        if let Ok(c) = PointConfiguration::new(space.clone(), pts) {
            return c;
        }
    }
}

/// `r` distinct points whose factors are drawn from small per-factor pools,
/// so that coordinates repeat and projections collapse often.
pub fn pooled_config<R: Rng>(rng: &mut R, space: &MultiprojectiveSpace, r: usize) -> PointConfiguration {
    loop {
        let pools: Vec<Vec<Vec<BigInt>>> = space
            .dims()
            .iter()
            .map(|&n| {
                let size = rng.gen_range(1..=r.max(1));
                (0..size).map(|_| random_vector(rng, n + 1, 2)).collect()
            })
            .collect();
        let pts = (0..r)
            .map(|_| {
                let coords = pools.iter().map(|p| p[rng.gen_range(0..p.len())].clone()).collect();
                MppPoint::new(coords).unwrap()
            })
            .collect();
        if let Ok(c) = PointConfiguration::new(space.clone(), pts) {
            return c;
        }
    }
}

/// A random scheme of `r` points with random multiplicities.
pub fn random_scheme<R: Rng>(rng: &mut R, space: &MultiprojectiveSpace, r: usize) -> ZeroDimScheme {
    let config = if rng.gen_bool(0.5) {
        random_config(rng, space, r, 3)
    } else {
        pooled_config(rng, space, r)
    };
    let terms = config
        .points()
        .iter()
        .map(|p| SchemeTerm {
            point: p.clone(),
            multiplicity: if rng.gen_bool(0.6) {
                Multiplicity::Double
            } else {
                Multiplicity::Simple
            },
        })
        .collect();
    ZeroDimScheme::new(space.clone(), terms).unwrap()
}

/// A random shape with `k` factors in `1..=max_k` of dimension at most
/// `max_n` each and total dimension at most `max_dim`.
pub fn random_space<R: Rng>(rng: &mut R, max_k: usize, max_n: usize, max_dim: usize) -> MultiprojectiveSpace {
    loop {
        let k = rng.gen_range(1..=max_k);
        let dims: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=max_n)).collect();
        if dims.iter().sum::<usize>() <= max_dim {
            return space(&dims);
        }
    }
}

pub fn random_flags<R: Rng>(rng: &mut R, k: usize) -> Vec<bool> {
    loop {
        let f: Vec<bool> = (0..k).map(|_| rng.gen_bool(0.7)).collect();
        if f.iter().any(|&x| x) {
            return f;
        }
    }
}

fn report(config: &PointConfiguration) -> (usize, usize, bool) {
    let (h0, delta) = double_report(config).unwrap();
    (h0, delta, is_minimal(config))
}

/// `h^0`, `delta` and minimality are unchanged by a random automorphism
/// followed by a random reordering of the factors.
pub fn check_invariance<R: Rng>(rng: &mut R, config: &PointConfiguration) -> Result<(), String> {
    let before = report(config);
    let moved = apply_transform(config, &random_transform(rng, config.space(), 3)).unwrap();
    let mut perm: Vec<usize> = (0..config.space().k()).collect();
    perm.shuffle(rng);
    let moved = permute_factors(&moved, &perm).unwrap();
    let after = report(&moved);
    if before != after {
        return Err(format!("{before:?} became {after:?} under perm {perm:?}"));
    }
    Ok(())
}

/// `delta(S') <= delta(S) <= delta(S') + (#S - #S')(n + 1)` for `S'` a
/// nonempty subset of `S`.
pub fn check_nested<R: Rng>(rng: &mut R, config: &PointConfiguration) -> Result<(), String> {
    let r = config.len();
    let mut idx: Vec<usize> = (0..r).collect();
    idx.shuffle(rng);
    idx.truncate(rng.gen_range(1..=r));
    let sub = config.subset(&idx);
    let d = delta(config).unwrap();
    let ds = delta(&sub).unwrap();
    let slack = (r - idx.len()) * (config.space().dim() + 1);
    if ds <= d && d <= ds + slack {
        Ok(())
    } else {
        Err(format!("delta(S')={ds}, delta(S)={d}, slack {slack}"))
    }
}

/// Points in a slice `{x} x P^{n_i} x {y}` whose images in `P^{n_i}` are
/// independent have the same defect in the slice and in the whole space.
pub fn check_concision<R: Rng>(rng: &mut R, space: &MultiprojectiveSpace) -> Result<(), String> {
    let k = space.k();
    let i = rng.gen_range(0..k);
    let n = space.factor_dim(i);
    let r = rng.gen_range(1..=n + 1);
    let line = MultiprojectiveSpace::new(vec![n]).unwrap();
    let w = loop {
        let c = random_config(rng, &line, r, 3);
        let vs: Vec<Vec<BigInt>> = c.points().iter().map(|p| p.factor(0).to_vec()).collect();
        if independent_subset(&vs).len() == r {
            break c;
        }
    };
    let fixed: Vec<Vec<BigInt>> = space.dims().iter().map(|&m| random_vector(rng, m + 1, 3)).collect();
    let pts = w
        .points()
        .iter()
        .map(|p| {
            let mut c = fixed.clone();
            c[i] = p.factor(0).to_vec();
            MppPoint::new(c).unwrap()
        })
        .collect();
    let y = PointConfiguration::new(space.clone(), pts).unwrap();
    let (dw, dy) = (delta(&w).unwrap(), delta(&y).unwrap());
    if dw == dy {
        Ok(())
    } else {
        Err(format!("slice factor {i}: delta_W={dw}, delta_Y={dy}"))
    }
}

/// For `W` a product of coordinate subspaces containing `S`,
/// `delta(2S, W) <= delta(2S, Y) <= delta(2S, W) + (#S - 1)(dim Y - dim W)`.
pub fn check_subspace<R: Rng>(rng: &mut R, space: &MultiprojectiveSpace, r: usize) -> Result<(), String> {
    let keep: Vec<usize> = space.dims().iter().map(|&n| rng.gen_range(1..=n)).collect();
    let w_space = MultiprojectiveSpace::new(keep.clone()).unwrap();
    let w = if rng.gen_bool(0.5) {
        random_config(rng, &w_space, r, 3)
    } else {
        pooled_config(rng, &w_space, r)
    };
    let pts = w
        .points()
        .iter()
        .map(|p| {
            let coords = p
                .coords()
                .iter()
                .zip(space.dims())
                .map(|(v, &n)| {
                    let mut x = v.clone();
                    x.resize(n + 1, BigInt::zero());
                    x
                })
                .collect();
            MppPoint::new(coords).unwrap()
        })
        .collect();
    let y = PointConfiguration::new(space.clone(), pts).unwrap();
    if restrict(&y, &keep) != w {
        return Err("padding does not invert truncation".into());
    }
    let (dw, dy) = (delta(&w).unwrap(), delta(&y).unwrap());
    let slack = (r - 1) * (space.dim() - w_space.dim());
    if dw <= dy && dy <= dw + slack {
        Ok(())
    } else {
        Err(format!("delta_W={dw}, delta_Y={dy}, slack {slack}"))
    }
}

/// If dropping some factor is injective on `S` and leaves a set with no
/// defect, `S` has no defect. Returns whether the hypothesis was met for
/// at least one factor.
pub fn check_projection(config: &PointConfiguration) -> Result<bool, String> {
    let mut hit = false;
    for i in 0..config.space().k() {
        let Some(image) = drop_factor(config, i) else { continue };
        if delta(&image).unwrap() == 0 {
            hit = true;
            let d = delta(config).unwrap();
            if d != 0 {
                return Err(format!("dropping factor {i} gives delta 0 but delta(S)={d}"));
            }
        }
    }
    Ok(hit)
}

/// Rank of the Kronecker conditions matrix equals the rank of the
/// evaluation-and-derivative matrix.
pub fn check_jet(z: &ZeroDimScheme, flags: &[bool]) -> Result<(), String> {
    let d = Multidegree::new(flags.to_vec()).unwrap();
    let kron_m = conditions_matrix(z, &d).unwrap();
    let jet_m = jet_conditions(z, flags);
    if kron_m.cols() != jet_m.cols() {
        return Err(format!("{} columns vs {}", kron_m.cols(), jet_m.cols()));
    }
    let (a, b) = (rank_fraction_free(&kron_m), rank_fraction_free(&jet_m));
    if a != b {
        return Err(format!("kron rank {a}, jet rank {b}"));
    }
    let rep = cohomology(z, &d).unwrap();
    if rep.rank != a || rep.h0 != rep.sections - a {
        return Err(format!("report {rep:?} vs rank {a}"));
    }
    Ok(())
}

/// A random divisor on a random factor, through a point of `z` half the
/// time.
pub fn random_divisor<R: Rng>(rng: &mut R, z: &ZeroDimScheme) -> CoordinateDivisor {
    let i = rng.gen_range(0..z.space().k());
    if rng.gen_bool(0.5) {
        let t = &z.terms()[rng.gen_range(0..z.terms().len())];
        CoordinateDivisor::through(&t.point, i).unwrap()
    } else {
        CoordinateDivisor::new(i, random_vector(rng, z.space().factor_dim(i) + 1, 2)).unwrap()
    }
}

pub fn check_residual<R: Rng>(rng: &mut R, z: &ZeroDimScheme) -> Result<(), String> {
    let h = random_divisor(rng, z);
    let mut flags = random_flags(rng, z.space().k());
    flags[h.factor()] = true;
    let d = Multidegree::new(flags).unwrap();
    let rep = check_residual_inequalities(z, &h, &d).unwrap();
    if rep.b <= rep.a && rep.a <= rep.b + rep.c && rep.holds {
        Ok(())
    } else {
        Err(format!("{rep:?} for {h:?}"))
    }
}

/// `delta(2S, Y) <= (r - 1)(n + 1)`, with equality exactly when `Y` has a
/// single factor.
pub fn check_defect_bound(config: &PointConfiguration) -> Result<(), String> {
    let r = config.len();
    let bound = (r - 1) * (config.space().dim() + 1);
    let d = delta(config).unwrap();
    let single = config.space().k() == 1;
    if d > bound || (r >= 2 && (d == bound) != single) {
        return Err(format!("delta {d}, bound {bound}, k={}", config.space().k()));
    }
    Ok(())
}
