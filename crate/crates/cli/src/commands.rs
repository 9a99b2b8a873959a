use serde::Serialize;
use serde_json::{json, Value};
use terracini_core::locus::{
    classify3, max_defect_search, predicted_in_t3, secant_dim_estimate_with_box, verify_classification,
};
use terracini_core::rng::DEFAULT_BOX;
use terracini_core::segre::{cohomology_with_primes, minimal_space};
use terracini_core::{membership, Multiplicity, MultiprojectiveSpace};

use crate::checklist;
use crate::input::Job;
use crate::{CliError, Options, Outcome};

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn missing(what: &str, cmd: &str) -> CliError {
    CliError::Invalid(format!("`{cmd}` needs {what}"))
}

#[derive(Serialize)]
struct DefectReport {
    factors: Vec<usize>,
    multidegree: Vec<u8>,
    points: usize,
    sections: usize,
    rank: usize,
    h0: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<usize>,
    h1_ambient: usize,
    h1_projected: usize,
    scheme_degree_ambient: usize,
    scheme_degree_projected: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    minimal: Option<bool>,
    #[serde(rename = "in_T1", skip_serializing_if = "Option::is_none")]
    in_t1: Option<bool>,
    #[serde(rename = "in_T", skip_serializing_if = "Option::is_none")]
    in_t: Option<bool>,
    minimal_space: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pattern: Option<String>,
    #[serde(rename = "predicted_in_T", skip_serializing_if = "Option::is_none")]
    predicted_in_t: Option<bool>,
}

pub fn defect(job: &Job, opts: &Options) -> Result<Outcome, CliError> {
    let (Some(scheme), Some(config), Some(d)) = (&job.scheme, &job.config, &job.multidegree) else {
        return Err(missing("factors and points", "defect"));
    };
    let coh = cohomology_with_primes(scheme, d, &opts.primes)?;
    // Membership is a statement about double points at (1, ..., 1).
    let all_double = scheme.terms().iter().all(|t| t.multiplicity == Multiplicity::Double);
    let member = if all_double && d.is_all_ones() {
        Some(membership(config)?)
    } else {
        None
    };
    let three = config.len() == 3;
    let report = DefectReport {
        factors: config.space().dims().to_vec(),
        multidegree: d.flags().iter().map(|&f| f as u8).collect(),
        points: config.len(),
        sections: coh.sections,
        rank: coh.rank,
        h0: coh.h0,
        delta: coh.delta,
        h1_ambient: coh.h1_ambient,
        h1_projected: coh.h1_projected,
        scheme_degree_ambient: coh.scheme_degree_ambient,
        scheme_degree_projected: coh.scheme_degree_projected,
        minimal: member.map(|m| m.minimal),
        in_t1: member.map(|m| m.in_t1),
        in_t: member.map(|m| m.in_t),
        minimal_space: minimal_space(config)?.space.dims().to_vec(),
        pattern: three.then(|| classify3(config).map(|t| t.to_string())).transpose()?,
        predicted_in_t: three.then(|| predicted_in_t3(config)).transpose()?,
    };
    Ok(Outcome {
        report: to_value(&report),
        code: 0,
    })
}

pub fn classify(job: &Job, _opts: &Options) -> Result<Outcome, CliError> {
    let Some(config) = &job.config else {
        return Err(missing("factors and three points", "classify"));
    };
    if config.len() != 3 {
        return Err(CliError::Invalid(format!("`classify` needs 3 points, got {}", config.len())));
    }
    let tag = classify3(config)?;
    let predicted = predicted_in_t3(config)?;
    let computed = membership(config)?;
    let agrees = predicted == computed.in_t;
    Ok(Outcome {
        report: json!({
            "factors": config.space().dims(),
            "pattern": tag.to_string(),
            "tag": tag,
            "predicted_in_T": predicted,
            "computed": computed,
            "agrees": agrees,
        }),
        code: if agrees { 0 } else { 1 },
    })
}

pub fn secant(job: &Job, opts: &Options) -> Result<Outcome, CliError> {
    let Some(space) = &job.space else {
        return Err(missing("factors", "secant"));
    };
    let Some(r) = job.r else {
        return Err(missing("r", "secant"));
    };
    let trials = job.trials.unwrap_or(opts.trials);
    let est = secant_dim_estimate_with_box(space, r, trials, opts.seed, DEFAULT_BOX, &opts.primes)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let mut report = to_value(&est);
    report["factors"] = json!(space.dims());
    report["r"] = json!(r);
    Ok(Outcome { report, code: 0 })
}

/// Every shape with factors of dimension 1 or 2 and total dimension at
/// most `n`, dimensions descending.
pub fn small_shapes(n: usize) -> Vec<MultiprojectiveSpace> {
    let mut out = Vec::new();
    for k in 1..=n {
        for twos in 0..=k {
            let dims: Vec<usize> = (0..k).map(|i| if i < twos { 2 } else { 1 }).collect();
            if dims.iter().sum::<usize>() <= n {
                out.push(MultiprojectiveSpace::new(dims).expect("positive dimensions"));
            }
        }
    }
    out
}

/// With `shapes`, or with `n` and no `r`, sweeps the three-point
/// classification; with `n` and `r`, searches for the largest defect.
pub fn search(job: &Job, opts: &Options) -> Result<Outcome, CliError> {
    let trials = job.trials.unwrap_or(opts.trials);
    let shapes = match (&job.shapes, job.n, job.r) {
        (Some(s), _, _) => Some(s.clone()),
        (None, Some(n), None) => Some(small_shapes(n)),
        _ => None,
    };
    if let Some(shapes) = shapes {
        let rep = verify_classification(&shapes, trials, opts.seed).map_err(|e| CliError::Invalid(e.to_string()))?;
        let code = if rep.disagreements.is_empty() { 0 } else { 1 };
        let mut report = to_value(&rep);
        report["disagreement_count"] = json!(rep.disagreements.len());
        return Ok(Outcome { report, code });
    }
    let (Some(n), Some(r)) = (job.n, job.r) else {
        return Err(missing("`n` and `r`, or `shapes`", "search"));
    };
    let rep = max_defect_search(n, r, trials, opts.seed).map_err(|e| CliError::Invalid(e.to_string()))?;
    let best = rep.max_with_sections.as_ref().map_or(0, |m| m.delta);
    let counterexample = rep.bound_violations > 0
        || best > rep.theoretical_max
        || (n <= 2 && rep.in_t1_found > 0)
        || (r == 2 && rep.in_t_found > 0);
    Ok(Outcome {
        report: to_value(&rep),
        code: if counterexample { 1 } else { 0 },
    })
}

pub fn verify_paper(opts: &Options) -> Result<Outcome, CliError> {
    let checks = checklist::run(opts.seed)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    Ok(Outcome {
        report: json!({
            "seed": opts.seed,
            "passed": checks.len() - failed,
            "failed": failed,
            "checks": checks,
        }),
        code: if failed == 0 { 0 } else { 1 },
    })
}
