//! Searches over configurations: extremal defects and the three-point
//! classification sweep.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::locus::builders::{build_a40_variant, build_ex1, Coincide};
use crate::locus::classify::{classify3, predicted_in_t3};
use crate::locus::membership;
use crate::rng::{random_point, random_transform, random_vector, trial_rng};
use crate::segre::{apply_transform, double_report, is_minimal, permute_factors};
use crate::space::{MppPoint, MultiprojectiveSpace, PointConfiguration};

/// All multiprojective spaces of dimension `n` up to isomorphism, i.e. the
/// partitions of `n`, each sorted descending. Listed in reverse
/// lexicographic order, starting with `P^n`.
pub fn enumerate_spaces(n: usize) -> Vec<MultiprojectiveSpace> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out.into_iter()
        .map(|d| MultiprojectiveSpace::new(d).expect("positive parts"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectRecord {
    pub space: MultiprojectiveSpace,
    pub points: Vec<MppPoint>,
    pub h0: usize,
    pub delta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub r: usize,
    pub samples: usize,
    /// Largest defect seen with `h^0 > 0`.
    pub max_with_sections: Option<DefectRecord>,
    /// `(r-1)(n+1) - 1`.
    pub theoretical_max: usize,
    /// Largest defect seen overall.
    pub max_unrestricted: Option<DefectRecord>,
    /// `(r-1)(n+1)`.
    pub unrestricted_bound: usize,
    /// Samples with `h^0 > 0` and `delta > 0`.
    pub in_t1_found: usize,
    /// Of those, samples whose space is minimal for them.
    pub in_t_found: usize,
    /// Samples whose defect exceeded `unrestricted_bound`, or reached it
    /// on a space with more than one factor.
    pub bound_violations: usize,
}

fn combo<R: Rng>(rng: &mut R, anchors: &[Vec<BigInt>]) -> Vec<BigInt> {
    loop {
        let mut x = vec![BigInt::zero(); anchors[0].len()];
        for a in anchors {
            let c = BigInt::from(rng.gen_range(-2i64..=2));
            for (xi, ai) in x.iter_mut().zip(a) {
                *xi += &c * ai;
            }
        }
        if !x.iter().all(Zero::is_zero) {
            return x;
        }
    }
}

/// `r` points whose `i`-th projections lie in a random subspace of
/// dimension `spans[i]` (the first `spans[i] + 1` points span it when the
/// anchors are independent).
fn structured_sample<R: Rng>(
    rng: &mut R,
    space: &MultiprojectiveSpace,
    r: usize,
    spans: &[usize],
) -> Option<PointConfiguration> {
    let mut coords: Vec<Vec<Vec<BigInt>>> = vec![Vec::with_capacity(space.k()); r];
    for (i, &n) in space.dims().iter().enumerate() {
        let anchors: Vec<Vec<BigInt>> = (0..=spans[i]).map(|_| random_vector(rng, n + 1, 3)).collect();
        for (j, c) in coords.iter_mut().enumerate() {
            let v = if j < anchors.len() {
                anchors[j].clone()
            } else {
                combo(rng, &anchors)
            };
            c.push(v);
        }
    }
    let points = coords.into_iter().map(MppPoint::new).collect::<Result<Vec<_>>>().ok()?;
    PointConfiguration::new(space.clone(), points).ok()
}

fn span_vectors(space: &MultiprojectiveSpace, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in space.dims() {
        let top = n.min(r - 1);
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=top).map(move |s| {
                    let mut w = v.clone();
                    w.push(s);
                    w
                })
            })
            .collect();
    }
    out
}

/// Searches every space of dimension `n` for large defects of `r` double
/// points. Per space it draws `trials` random sets, and `trials` sets for
/// every choice of per-factor span dimensions.
pub fn max_defect_search(n: usize, r: usize, trials: usize, seed: u64) -> Result<SearchReport> {
    if n < 1 || r < 2 || trials < 1 {
        return Err(Error::BadParams(format!(
            "max_defect_search needs n >= 1, r >= 2, trials >= 1, got ({n}, {r}, {trials})"
        )));
    }
    let bound = (r - 1) * (n + 1);
    let mut report = SearchReport {
        n,
        r,
        samples: 0,
        max_with_sections: None,
        theoretical_max: bound - 1,
        max_unrestricted: None,
        unrestricted_bound: bound,
        in_t1_found: 0,
        in_t_found: 0,
        bound_violations: 0,
    };
    let mut stream = 0u64;
    for space in enumerate_spaces(n) {
        let mut candidates = Vec::new();
        for _ in 0..trials {
            let mut rng = trial_rng(seed, stream);
            stream += 1;
            let pts = (0..r).map(|_| random_point(&mut rng, &space, 10)).collect();
            if let Ok(c) = PointConfiguration::new(space.clone(), pts) {
                candidates.push(c);
            }
        }
        for spans in span_vectors(&space, r) {
            for _ in 0..trials {
                let mut rng = trial_rng(seed, stream);
                stream += 1;
                if let Some(c) = structured_sample(&mut rng, &space, r, &spans) {
                    candidates.push(c);
                }
            }
        }
        for c in candidates {
            let (h0, delta) = double_report(&c)?;
            report.samples += 1;
            if delta > bound || (delta == bound && space.k() > 1) {
                report.bound_violations += 1;
            }
            if h0 > 0 && delta > 0 {
                report.in_t1_found += 1;
                if is_minimal(&c) {
                    report.in_t_found += 1;
                }
            }
            let record = || DefectRecord {
                space: space.clone(),
                points: c.points().to_vec(),
                h0,
                delta,
            };
            if report.max_unrestricted.as_ref().map_or(true, |m| delta > m.delta) {
                report.max_unrestricted = Some(record());
            }
            if h0 > 0 && report.max_with_sections.as_ref().map_or(true, |m| delta > m.delta) {
                report.max_with_sections = Some(record());
            }
        }
    }
    Ok(report)
}

fn coords(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// One representative of every orbit of minimal three-point sets under
/// the automorphisms of `Y` that fix each factor, for `Y` with all
/// `n_i` in `{1, 2}`.
///
/// On a `P^1` factor the projection pattern is one of: all distinct
/// (`[1:0], [0:1], [1:1]`, by 3-transitivity) or a pair equal with the
/// third different. On a `P^2` factor minimality forces three independent
/// points, which can be taken as the coordinate points.
pub fn minimal_three_point_orbits(space: &MultiprojectiveSpace) -> Result<Vec<PointConfiguration>> {
    let (al, be, ga) = (coords(&[1, 0]), coords(&[0, 1]), coords(&[1, 1]));
    let line_patterns = [
        [al.clone(), be.clone(), ga.clone()],
        [al.clone(), al.clone(), be.clone()],
        [al.clone(), be.clone(), al.clone()],
        [be.clone(), al.clone(), al.clone()],
    ];
    let plane_pattern = [coords(&[1, 0, 0]), coords(&[0, 1, 0]), coords(&[0, 0, 1])];
    let mut partial: Vec<[Vec<Vec<BigInt>>; 3]> = vec![[Vec::new(), Vec::new(), Vec::new()]];
    for &n in space.dims() {
        let options: Vec<&[Vec<BigInt>; 3]> = match n {
            1 => line_patterns.iter().collect(),
            2 => vec![&plane_pattern],
            _ => {
                return Err(Error::BadParams(format!(
                    "orbit enumeration needs factors of dimension 1 or 2, got {space}"
                )))
            }
        };
        let mut next = Vec::with_capacity(partial.len() * options.len());
        for p in &partial {
            for o in &options {
                let mut q = p.clone();
                for j in 0..3 {
                    q[j].push(o[j].clone());
                }
                next.push(q);
            }
        }
        partial = next;
    }
    let mut out = Vec::new();
    for p in partial {
        let points = p.into_iter().map(MppPoint::new).collect::<Result<Vec<_>>>()?;
        if let Ok(c) = PointConfiguration::new(space.clone(), points) {
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    pub space: MultiprojectiveSpace,
    pub tag: String,
    pub samples: usize,
    pub in_t: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub space: MultiprojectiveSpace,
    pub points: Vec<MppPoint>,
    pub tag: String,
    pub computed: bool,
    pub predicted: bool,
    pub h0: usize,
    pub delta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub samples: usize,
    pub classes: Vec<ClassCount>,
    pub disagreements: Vec<Disagreement>,
}

/// Reorders the factors of `config` so that its space becomes `target`,
/// when the dimensions agree up to order.
fn align(config: &PointConfiguration, target: &MultiprojectiveSpace) -> Option<PointConfiguration> {
    let dims = config.space().dims();
    let mut perm: Vec<usize> = (0..dims.len()).collect();
    perm.sort_by(|&a, &b| dims[b].cmp(&dims[a]));
    let sorted: Vec<usize> = perm.iter().map(|&i| dims[i]).collect();
    if sorted != target.dims() {
        return None;
    }
    let mut target_perm = vec![0; dims.len()];
    let mut order: Vec<usize> = (0..dims.len()).collect();
    order.sort_by(|&a, &b| target.dims()[b].cmp(&target.dims()[a]));
    for (slot, &t) in order.iter().enumerate() {
        target_perm[t] = perm[slot];
    }
    permute_factors(config, &target_perm).ok()
}

fn builder_samples(space: &MultiprojectiveSpace, trials: usize) -> Vec<PointConfiguration> {
    let k = space.k();
    let mut out = Vec::new();
    if k < 3 {
        return out;
    }
    for m in 1..=2 {
        for variant in 0..trials as u64 {
            if let Ok((_, c)) = build_ex1(m, k, variant) {
                out.extend(align(&c, space));
            }
        }
    }
    let choices = [Coincide::None, Coincide::WithU, Coincide::WithV];
    for n1 in 1..=2 {
        for n2 in 1..=2 {
            for c1 in choices {
                for c2 in choices {
                    for variant in 0..trials as u64 {
                        if let Ok((_, c)) = build_a40_variant(n1, n2, k, [c1, c2], variant) {
                            out.extend(align(&c, space));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Compares computed membership in `T(Y, 3)` with the classification's
/// prediction on every orbit of minimal three-point sets, on builder
/// outputs, on random sets, and on random automorphic images topping every
/// pattern class up to `trials` samples.
pub fn verify_classification(
    shapes: &[MultiprojectiveSpace],
    trials: usize,
    seed: u64,
) -> Result<ClassificationReport> {
    let mut classes: BTreeMap<(MultiprojectiveSpace, String), ClassCount> = BTreeMap::new();
    let mut disagreements = Vec::new();
    let mut samples = 0;
    let mut stream = 0u64;
    for space in shapes {
        if space.dims().iter().any(|&n| !matches!(n, 1 | 2)) {
            return Err(Error::BadParams(format!(
                "classification sweep needs factors of dimension 1 or 2, got {space}"
            )));
        }
        let mut pool = minimal_three_point_orbits(space)?;
        pool.extend(builder_samples(space, trials));
        for _ in 0..trials {
            let mut rng = trial_rng(seed, stream);
            stream += 1;
            let pts = (0..3).map(|_| random_point(&mut rng, space, 10)).collect();
            if let Ok(c) = PointConfiguration::new(space.clone(), pts) {
                if is_minimal(&c) {
                    pool.push(c);
                }
            }
        }

        let mut by_tag: BTreeMap<String, Vec<PointConfiguration>> = BTreeMap::new();
        for c in pool {
            by_tag.entry(classify3(&c)?.to_string()).or_default().push(c);
        }
        for members in by_tag.values_mut() {
            let base = members.len();
            let mut i = 0;
            while members.len() < trials {
                let mut rng = trial_rng(seed, stream);
                stream += 1;
                let maps = random_transform(&mut rng, space, 3);
                members.push(apply_transform(&members[i % base], &maps)?);
                i += 1;
            }
        }

        for (tag, members) in by_tag {
            for c in members {
                let found = classify3(&c)?.to_string();
                if found != tag {
                    return Err(Error::InvariantViolation(format!(
                        "pattern {tag} became {found} under an automorphism"
                    )));
                }
                let m = membership(&c)?;
                let predicted = predicted_in_t3(&c)?;
                samples += 1;
                let entry = classes
                    .entry((space.clone(), tag.clone()))
                    .or_insert_with(|| ClassCount {
                        space: space.clone(),
                        tag: tag.clone(),
                        samples: 0,
                        in_t: 0,
                    });
                entry.samples += 1;
                entry.in_t += usize::from(m.in_t);
                if m.in_t != predicted {
                    disagreements.push(Disagreement {
                        space: space.clone(),
                        points: c.points().to_vec(),
                        tag: tag.clone(),
                        computed: m.in_t,
                        predicted,
                        h0: m.h0,
                        delta: m.delta,
                    });
                }
            }
        }
    }
    Ok(ClassificationReport {
        samples,
        classes: classes.into_values().collect(),
        disagreements,
    })
}
