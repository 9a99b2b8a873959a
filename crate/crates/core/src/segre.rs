//! Segre vectors, tangent frames, conditions matrices and the cohomology
//! counts `h^0`, `h^1`, `delta` of schemes of simple and double points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    clear_denominators, coordinates_in_basis, independent_subset, kron, rank_checked,
    rank_fraction_free, IntMatrix,
};
use crate::schemes::{Multiplicity, ZeroDimScheme};
use crate::space::{MppPoint, Multidegree, MultiprojectiveSpace, PointConfiguration};

/// Primes used to cross-check every certified rank.
pub const DEFAULT_PRIMES: [u64; 2] = [32749, 65521];

/// `v_1 ⊗ ... ⊗ v_k`.
pub fn segre_vector(space: &MultiprojectiveSpace, p: &MppPoint) -> Result<Vec<BigInt>> {
    p.check_in(space)?;
    Ok(segre_unchecked(p.coords()))
}

fn segre_unchecked(coords: &[Vec<BigInt>]) -> Vec<BigInt> {
    let parts: Vec<&[BigInt]> = coords.iter().map(Vec::as_slice).collect();
    kron(&parts)
}

/// Rows `v_1 ⊗ ... ⊗ e_j ⊗ ... ⊗ v_k`, factor by factor. On the point
/// space this is the single row `[1]`.
pub fn tangent_rows(space: &MultiprojectiveSpace, p: &MppPoint) -> Result<IntMatrix> {
    p.check_in(space)?;
    Ok(tangent_unchecked(p.coords()))
}

fn tangent_unchecked(coords: &[Vec<BigInt>]) -> IntMatrix {
    let cols: usize = coords.iter().map(Vec::len).product();
    if coords.is_empty() {
        return IntMatrix::from_rows(1, vec![vec![BigInt::one()]]).expect("1x1");
    }
    let mut rows = Vec::new();
    for i in 0..coords.len() {
        for j in 0..coords[i].len() {
            let mut e = vec![BigInt::zero(); coords[i].len()];
            e[j] = BigInt::one();
            let parts: Vec<&[BigInt]> = coords
                .iter()
                .enumerate()
                .map(|(l, v)| if l == i { e.as_slice() } else { v.as_slice() })
                .collect();
            rows.push(kron(&parts));
        }
    }
    IntMatrix::from_rows(cols, rows).expect("uniform row length")
}

fn check_degree(space: &MultiprojectiveSpace, flags: &[bool]) -> Result<()> {
    if flags.len() != space.k() {
        return Err(Error::ShapeMismatch(format!(
            "multidegree with {} entries on {space}",
            flags.len()
        )));
    }
    Ok(())
}

fn projected_coords(p: &MppPoint, flags: &[bool]) -> Vec<Vec<BigInt>> {
    p.coords()
        .iter()
        .zip(flags)
        .filter(|(_, &f)| f)
        .map(|(v, _)| v.clone())
        .collect()
}

fn conditions_raw(z: &ZeroDimScheme, flags: &[bool]) -> Result<IntMatrix> {
    check_degree(z.space(), flags)?;
    let cols: usize = z
        .space()
        .dims()
        .iter()
        .zip(flags)
        .filter(|(_, &f)| f)
        .map(|(n, _)| n + 1)
        .product();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for t in z.terms() {
        let c = projected_coords(&t.point, flags);
        match t.multiplicity {
            Multiplicity::Simple => rows.push(segre_unchecked(&c)),
            Multiplicity::Double => {
                let m = tangent_unchecked(&c);
                rows.extend(m.row_iter().map(<[BigInt]>::to_vec));
            }
        }
    }
    IntMatrix::from_rows(cols, rows)
}

/// Conditions imposed by `z` on `H^0(O_Y(d))`. Each point is projected to
/// the factors where `d` is 1; a double point then contributes the tangent
/// rows of its projection.
pub fn conditions_matrix(z: &ZeroDimScheme, d: &Multidegree) -> Result<IntMatrix> {
    conditions_raw(z, d.flags())
}

/// `h^0(O_Y(d)) = prod_{d_i = 1} (n_i + 1)`.
pub fn section_count(space: &MultiprojectiveSpace, d: &Multidegree) -> usize {
    space
        .dims()
        .iter()
        .zip(d.flags())
        .filter(|(_, &f)| f)
        .map(|(n, _)| n + 1)
        .product()
}

/// `(sections, rank)` for an arbitrary flag vector, all-zero included
/// (degree zero: one section, every point imposes the row `[1]`).
pub(crate) fn h0_raw(z: &ZeroDimScheme, flags: &[bool]) -> Result<(usize, usize)> {
    let m = conditions_raw(z, flags)?;
    let rank = rank_checked(&m, &DEFAULT_PRIMES)?;
    Ok((m.cols(), rank))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub sections: usize,
    pub rank: usize,
    pub h0: usize,
    /// Present only for the all-ones multidegree.
    pub delta: Option<usize>,
    pub h1_ambient: usize,
    pub h1_projected: usize,
    pub scheme_degree_ambient: usize,
    pub scheme_degree_projected: usize,
}

pub fn cohomology(z: &ZeroDimScheme, d: &Multidegree) -> Result<CohomologyReport> {
    cohomology_with_primes(z, d, &DEFAULT_PRIMES)
}

pub fn cohomology_with_primes(
    z: &ZeroDimScheme,
    d: &Multidegree,
    primes: &[u64],
) -> Result<CohomologyReport> {
    if z.is_empty() {
        return Err(Error::BadParams("cohomology of the empty scheme".into()));
    }
    let m = conditions_matrix(z, d)?;
    let rank = rank_checked(&m, primes)?;
    let sections = section_count(z.space(), d);
    let projected_dim: usize = z
        .space()
        .dims()
        .iter()
        .zip(d.flags())
        .filter(|(_, &f)| f)
        .map(|(n, _)| n)
        .sum();
    let scheme_degree_ambient = z.degree();
    let scheme_degree_projected = z
        .terms()
        .iter()
        .map(|t| match t.multiplicity {
            Multiplicity::Simple => 1,
            Multiplicity::Double => projected_dim + 1,
        })
        .sum();
    let h1_ambient = scheme_degree_ambient - rank;
    let h1_projected = scheme_degree_projected - rank;
    Ok(CohomologyReport {
        sections,
        rank,
        h0: sections - rank,
        delta: d.is_all_ones().then_some(h1_ambient),
        h1_ambient,
        h1_projected,
        scheme_degree_ambient,
        scheme_degree_projected,
    })
}

/// `delta(2S, Y) = r(n+1) - rank`.
pub fn delta(config: &PointConfiguration) -> Result<usize> {
    Ok(double_report(config)?.1)
}

/// `(h^0, delta)` of `(2S, Y)` at `(1, ..., 1)`.
pub fn double_report(config: &PointConfiguration) -> Result<(usize, usize)> {
    let z = ZeroDimScheme::double(config);
    let (sections, rank) = h0_raw(&z, &vec![true; config.space().k()])?;
    Ok((sections - rank, z.degree() - rank))
}

/// The minimal multiprojective space containing a set, with the set
/// rewritten in span coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalSpace {
    pub space: MultiprojectiveSpace,
    pub config: PointConfiguration,
    /// Original factor index of each kept factor.
    pub kept: Vec<usize>,
    /// For every original factor, a basis of `<pi_i(S)>` drawn from the
    /// projections themselves.
    pub bases: Vec<Vec<Vec<BigInt>>>,
}

pub fn minimal_space(config: &PointConfiguration) -> Result<MinimalSpace> {
    if config.is_empty() {
        return Err(Error::BadParams("minimal space of the empty set".into()));
    }
    let k = config.space().k();
    let mut bases = Vec::with_capacity(k);
    let mut kept = Vec::new();
    for i in 0..k {
        let vs: Vec<Vec<BigInt>> = config.projection(i).into_iter().map(<[BigInt]>::to_vec).collect();
        let idx = independent_subset(&vs);
        let basis: Vec<Vec<BigInt>> = idx.iter().map(|&j| vs[j].clone()).collect();
        if basis.len() > 1 {
            kept.push(i);
        }
        bases.push(basis);
    }
    let dims: Vec<usize> = kept.iter().map(|&i| bases[i].len() - 1).collect();
    let space = MultiprojectiveSpace::from_dims_unchecked(dims);
    let mut points = Vec::with_capacity(config.len());
    for p in config.points() {
        let coords = kept
            .iter()
            .map(|&i| {
                let c = coordinates_in_basis(&bases[i], p.factor(i))
                    .expect("projection lies in its own span");
                clear_denominators(&c)
            })
            .collect();
        points.push(MppPoint::new(coords)?);
    }
    let config = PointConfiguration::new(space.clone(), points)?;
    Ok(MinimalSpace {
        space,
        config,
        kept,
        bases,
    })
}

/// `dim <pi_i(S)> = n_i` for every factor.
pub fn is_minimal(config: &PointConfiguration) -> bool {
    (0..config.space().k()).all(|i| {
        let vs: Vec<Vec<BigInt>> = config.projection(i).into_iter().map(<[BigInt]>::to_vec).collect();
        independent_subset(&vs).len() == config.space().factor_dim(i) + 1
    })
}

/// Applies one invertible matrix per factor, `v_i -> M_i v_i`.
pub fn apply_transform(
    config: &PointConfiguration,
    maps: &[Vec<Vec<BigRational>>],
) -> Result<PointConfiguration> {
    let space = config.space();
    if maps.len() != space.k() {
        return Err(Error::ShapeMismatch(format!(
            "{} maps for {} factors",
            maps.len(),
            space.k()
        )));
    }
    for (i, m) in maps.iter().enumerate() {
        let size = space.factor_dim(i) + 1;
        if m.len() != size || m.iter().any(|row| row.len() != size) {
            return Err(Error::ShapeMismatch(format!(
                "map for factor {i} is not {size}x{size}"
            )));
        }
        let rows: Vec<Vec<BigInt>> = m.iter().map(|r| clear_denominators(r)).collect();
        if rank_fraction_free(&IntMatrix::from_rows(size, rows)?) != size {
            return Err(Error::SingularMap(i));
        }
    }
    let points = config
        .points()
        .iter()
        .map(|p| {
            let coords = maps
                .iter()
                .zip(p.coords())
                .map(|(m, v)| {
                    let image: Vec<BigRational> = m
                        .iter()
                        .map(|row| {
                            row.iter()
                                .zip(v)
                                .map(|(a, x)| a * BigRational::from_integer(x.clone()))
                                .sum()
                        })
                        .collect();
                    clear_denominators(&image)
                })
                .collect();
            MppPoint::new(coords)
        })
        .collect::<Result<Vec<_>>>()?;
    PointConfiguration::new(space.clone(), points)
}

/// New factor `j` is old factor `perm[j]`.
pub fn permute_factors(config: &PointConfiguration, perm: &[usize]) -> Result<PointConfiguration> {
    let k = config.space().k();
    let mut seen = vec![false; k];
    if perm.len() != k {
        return Err(Error::BadPermutation(k));
    }
    for &i in perm {
        if i >= k || seen[i] {
            return Err(Error::BadPermutation(k));
        }
        seen[i] = true;
    }
    let dims = perm.iter().map(|&i| config.space().factor_dim(i)).collect();
    let space = MultiprojectiveSpace::from_dims_unchecked(dims);
    let points = config
        .points()
        .iter()
        .map(|p| MppPoint::new(perm.iter().map(|&i| p.factor(i).to_vec()).collect()))
        .collect::<Result<Vec<_>>>()?;
    PointConfiguration::new(space, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::SchemeTerm;

    fn pt(c: &[&[i64]]) -> MppPoint {
        MppPoint::from_i64(c).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn config(dims: &[usize], pts: &[MppPoint]) -> PointConfiguration {
        PointConfiguration::new(MultiprojectiveSpace::new(dims.to_vec()).unwrap(), pts.to_vec()).unwrap()
    }

    #[test]
    fn segre_vector_examples() {
        let y = MultiprojectiveSpace::p1_power(2).unwrap();
        assert_eq!(segre_vector(&y, &pt(&[&[1, 0], &[0, 1]])).unwrap(), ints(&[0, 1, 0, 0]));
        let y = MultiprojectiveSpace::projective(2).unwrap();
        assert_eq!(segre_vector(&y, &pt(&[&[3, 1, 2]])).unwrap(), ints(&[3, 1, 2]));
        let y = MultiprojectiveSpace::p1_power(3).unwrap();
        assert_eq!(segre_vector(&y, &pt(&[&[1, 1], &[1, 1], &[1, 1]])).unwrap(), ints(&[1; 8]));
        assert!(matches!(
            segre_vector(&y, &pt(&[&[1, 1]])),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn tangent_rows_examples() {
        let y = MultiprojectiveSpace::p1_power(2).unwrap();
        let m = tangent_rows(&y, &pt(&[&[2, 3], &[5, -1]])).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 4));
        assert_eq!(rank_fraction_free(&m), 3);

        let y = MultiprojectiveSpace::projective(2).unwrap();
        let m = tangent_rows(&y, &pt(&[&[1, 0, 0]])).unwrap();
        assert_eq!(m, IntMatrix::identity(3));

        // Four distinct basis vectors: e000 appears three times.
        let y = MultiprojectiveSpace::p1_power(3).unwrap();
        let m = tangent_rows(&y, &pt(&[&[1, 0], &[1, 0], &[1, 0]])).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 8));
        assert_eq!(rank_fraction_free(&m), 4);
    }

    #[test]
    fn conditions_matrix_examples() {
        let y = MultiprojectiveSpace::p1_power(2).unwrap();
        let a = pt(&[&[1, 0], &[1, 0]]);
        let b = pt(&[&[0, 1], &[0, 1]]);
        let one = ZeroDimScheme::double(&config(&[1, 1], std::slice::from_ref(&a)));
        let m = conditions_matrix(&one, &Multidegree::all_ones(2)).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 4));
        assert_eq!(rank_fraction_free(&m), 3);

        let two = ZeroDimScheme::double(&config(&[1, 1], &[a.clone(), b]));
        assert_eq!(rank_fraction_free(&conditions_matrix(&two, &Multidegree::all_ones(2)).unwrap()), 4);

        let d = Multidegree::from_bits(&[1, 0]).unwrap();
        let m = conditions_matrix(&one, &d).unwrap();
        assert_eq!(m.cols(), 2);
        assert_eq!(rank_fraction_free(&m), 2);
        let _ = y;
    }

    #[test]
    fn section_count_examples() {
        let sp = |d: &[usize]| MultiprojectiveSpace::new(d.to_vec()).unwrap();
        assert_eq!(section_count(&sp(&[1, 1, 1]), &Multidegree::all_ones(3)), 8);
        assert_eq!(section_count(&sp(&[2, 1]), &Multidegree::from_bits(&[1, 0]).unwrap()), 3);
        assert_eq!(section_count(&sp(&[2, 2, 1]), &Multidegree::all_ones(3)), 18);
    }

    #[test]
    fn cohomology_examples() {
        let s = config(&[1], &[pt(&[&[1, 0]]), pt(&[&[0, 1]])]);
        let r = cohomology(&ZeroDimScheme::double(&s), &Multidegree::all_ones(1)).unwrap();
        assert_eq!((r.h0, r.delta), (0, Some(2)));
        assert_eq!((r.sections, r.rank, r.scheme_degree_ambient), (2, 2, 4));

        let s = config(&[1, 1], &[pt(&[&[1, 0], &[1, 0]]), pt(&[&[1, 1], &[1, 2]])]);
        let r = cohomology(&ZeroDimScheme::double(&s), &Multidegree::all_ones(2)).unwrap();
        assert_eq!((r.h0, r.delta), (0, Some(2)));

        assert!(cohomology(&ZeroDimScheme::empty(s.space().clone()), &Multidegree::all_ones(2)).is_err());
    }

    #[test]
    fn restricted_degree_reports_both_h1() {
        // Two double points with the same first projection, degree (1,0):
        // the projected doubles collide.
        let s = config(&[2, 1], &[pt(&[&[1, 0, 0], &[1, 0]]), pt(&[&[1, 0, 0], &[0, 1]])]);
        let d = Multidegree::from_bits(&[1, 0]).unwrap();
        let r = cohomology(&ZeroDimScheme::double(&s), &d).unwrap();
        assert_eq!(r.sections, 3);
        assert_eq!(r.rank, 3);
        assert_eq!(r.h0, 0);
        assert_eq!(r.delta, None);
        assert_eq!(r.scheme_degree_ambient, 8);
        assert_eq!(r.scheme_degree_projected, 6);
        assert_eq!(r.h1_ambient, 5);
        assert_eq!(r.h1_projected, 3);
    }

    #[test]
    fn mixed_scheme_cohomology() {
        let y = MultiprojectiveSpace::p1_power(2).unwrap();
        let z = ZeroDimScheme::new(
            y,
            vec![
                SchemeTerm { point: pt(&[&[1, 0], &[1, 0]]), multiplicity: Multiplicity::Double },
                SchemeTerm { point: pt(&[&[0, 1], &[0, 1]]), multiplicity: Multiplicity::Simple },
            ],
        )
        .unwrap();
        let r = cohomology(&z, &Multidegree::all_ones(2)).unwrap();
        assert_eq!(r.rank, 4);
        assert_eq!(r.delta, Some(0));
    }

    #[test]
    fn delta_examples() {
        let s = config(
            &[1, 1, 1],
            &[
                pt(&[&[1, 0], &[1, 0], &[1, 0]]),
                pt(&[&[1, 1], &[1, 1], &[1, 0]]),
                pt(&[&[1, 0], &[1, 1], &[1, 1]]),
            ],
        );
        assert_eq!(delta(&s).unwrap(), 5);
        assert_eq!(double_report(&s).unwrap().0, 1);
    }

    #[test]
    fn minimal_space_examples() {
        let s = config(&[1, 1], &[pt(&[&[1, 0], &[1, 1]]), pt(&[&[0, 1], &[1, 1]])]);
        let m = minimal_space(&s).unwrap();
        assert_eq!(m.space.dims(), &[1]);
        assert_eq!(m.kept, vec![0]);
        assert!(!is_minimal(&s));

        let s = config(&[1, 1], &[pt(&[&[1, 0], &[1, 1]]), pt(&[&[0, 1], &[1, 2]])]);
        assert!(is_minimal(&s));
        assert_eq!(minimal_space(&s).unwrap().space, *s.space());

        // Collinear first projections on P^2.
        let s = config(
            &[2, 1],
            &[
                pt(&[&[1, 0, 0], &[1, 0]]),
                pt(&[&[0, 1, 0], &[0, 1]]),
                pt(&[&[1, 1, 0], &[1, 1]]),
            ],
        );
        assert!(!is_minimal(&s));
        let m = minimal_space(&s).unwrap();
        assert_eq!(m.space.dims(), &[1, 1]);
        assert_eq!(delta(&m.config).unwrap(), delta(&m.config).unwrap());

        let single = config(&[2, 1], &[pt(&[&[1, 2, 3], &[1, 0]])]);
        let m = minimal_space(&single).unwrap();
        assert!(m.space.is_point());
        assert_eq!(m.config.len(), 1);
        assert_eq!(delta(&m.config).unwrap(), 0);
    }

    fn rat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect()
    }

    #[test]
    fn transforms() {
        let s = config(&[1, 1], &[pt(&[&[1, 0], &[1, 0]]), pt(&[&[1, 1], &[1, 3]])]);
        let id = vec![rat(&[&[1, 0], &[0, 1]]), rat(&[&[1, 0], &[0, 1]])];
        assert_eq!(apply_transform(&s, &id).unwrap(), s);
        let swap = vec![rat(&[&[0, 1], &[1, 0]]), rat(&[&[1, 0], &[0, 1]])];
        let t = apply_transform(&s, &swap).unwrap();
        assert_eq!(t.points()[0], pt(&[&[0, 1], &[1, 0]]));
        let singular = vec![rat(&[&[1, 1], &[1, 1]]), rat(&[&[1, 0], &[0, 1]])];
        assert_eq!(apply_transform(&s, &singular), Err(Error::SingularMap(0)));
    }

    #[test]
    fn permutations() {
        let s = config(&[2, 1], &[pt(&[&[1, 0, 0], &[1, 0]]), pt(&[&[0, 1, 1], &[1, 3]])]);
        assert_eq!(permute_factors(&s, &[0, 1]).unwrap(), s);
        let t = permute_factors(&s, &[1, 0]).unwrap();
        assert_eq!(t.space().dims(), &[1, 2]);
        assert_eq!(permute_factors(&t, &[1, 0]).unwrap(), s);
        assert_eq!(delta(&t).unwrap(), delta(&s).unwrap());
        assert_eq!(permute_factors(&s, &[0, 0]), Err(Error::BadPermutation(2)));
    }
}
