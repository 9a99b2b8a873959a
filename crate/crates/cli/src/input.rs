//! Job payloads: JSON with exact coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use terracini_core::linalg::clear_denominators;
use terracini_core::{
    MppPoint, Multidegree, Multiplicity, MultiprojectiveSpace, PointConfiguration, SchemeTerm, ZeroDimScheme,
};

use crate::CliError;

/// A coordinate given as a decimal integer string, a `"p/q"` string or a
/// JSON integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coord(pub BigRational);

impl std::str::FromStr for Coord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| format!("`{s}` is not an integer or p/q"));
        match s.split_once('/') {
            None => Ok(Coord(BigRational::from_integer(int(s)?))),
            Some((p, q)) => {
                let q = int(q)?;
                if q.is_zero() {
                    return Err(format!("`{s}` has a zero denominator"));
                }
                Ok(Coord(BigRational::new(int(p)?, q)))
            }
        }
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Coord;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer, or a string holding an integer or p/q")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Coord, E> {
                s.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, x: i64) -> Result<Coord, E> {
                Ok(Coord(BigRational::from_integer(x.into())))
            }

            fn visit_u64<E: de::Error>(self, x: u64) -> Result<Coord, E> {
                Ok(Coord(BigRational::from_integer(x.into())))
            }
        }
        d.deserialize_any(V)
    }
}

fn double() -> u8 {
    2
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPoint {
    pub coords: Vec<Vec<Coord>>,
    #[serde(default = "double")]
    pub multiplicity: u8,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInput {
    pub factors: Option<Vec<usize>>,
    #[serde(default)]
    pub points: Vec<RawPoint>,
    pub multidegree: Option<Vec<u8>>,
    pub r: Option<usize>,
    pub n: Option<usize>,
    pub trials: Option<usize>,
    pub shapes: Option<Vec<Vec<usize>>>,
}

/// A validated payload.
#[derive(Debug, Clone)]
pub struct Job {
    pub space: Option<MultiprojectiveSpace>,
    /// The scheme with the multiplicities as given.
    pub scheme: Option<ZeroDimScheme>,
    /// Its support.
    pub config: Option<PointConfiguration>,
    pub multidegree: Option<Multidegree>,
    pub r: Option<usize>,
    pub n: Option<usize>,
    pub trials: Option<usize>,
    pub shapes: Option<Vec<MultiprojectiveSpace>>,
}

fn invalid(e: impl ToString) -> CliError {
    CliError::Invalid(e.to_string())
}

/// Parses and validates a JSON payload.
pub fn parse_config(bytes: &[u8]) -> Result<Job, CliError> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    let raw: RawInput = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Parse(format!(
            "line {} column {} at `{path}`: {inner}",
            inner.line(),
            inner.column()
        ))
    })?;
    validate(raw)
}

pub fn validate(raw: RawInput) -> Result<Job, CliError> {
    let space = raw
        .factors
        .map(|f| MultiprojectiveSpace::new(f).map_err(invalid))
        .transpose()?;
    if raw.trials == Some(0) {
        return Err(invalid("trials must be at least 1"));
    }
    let shapes = raw
        .shapes
        .map(|s| {
            s.into_iter()
                .map(|d| MultiprojectiveSpace::new(d).map_err(invalid))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;

    let multidegree = match (&space, raw.multidegree) {
        (_, None) => space.as_ref().map(|y| Multidegree::all_ones(y.k())),
        (None, Some(_)) => return Err(invalid("multidegree given without factors")),
        (Some(y), Some(bits)) => {
            if bits.len() != y.k() {
                return Err(invalid(format!("multidegree has {} entries for {} factors", bits.len(), y.k())));
            }
            Some(Multidegree::from_bits(&bits).map_err(invalid)?)
        }
    };

    let (scheme, config) = if raw.points.is_empty() {
        (None, None)
    } else {
        let Some(y) = &space else {
            return Err(invalid("points given without factors"));
        };
        let mut terms = Vec::with_capacity(raw.points.len());
        for (j, p) in raw.points.into_iter().enumerate() {
            let coords: Vec<Vec<BigInt>> = p
                .coords
                .iter()
                .map(|v| clear_denominators(&v.iter().map(|c| c.0.clone()).collect::<Vec<_>>()))
                .collect();
            let point = MppPoint::new(coords).map_err(|e| invalid(format!("point {j}: {e}")))?;
            point.check_in(y).map_err(|e| invalid(format!("point {j}: {e}")))?;
            let multiplicity = Multiplicity::from_u8(p.multiplicity).map_err(|e| invalid(format!("point {j}: {e}")))?;
            terms.push(SchemeTerm { point, multiplicity });
        }
        let points = terms.iter().map(|t| t.point.clone()).collect();
        let config = PointConfiguration::new(y.clone(), points).map_err(invalid)?;
        let scheme = ZeroDimScheme::new(y.clone(), terms).map_err(invalid)?;
        (Some(scheme), Some(config))
    };

    Ok(Job {
        space,
        scheme,
        config,
        multidegree,
        r: raw.r,
        n: raw.n,
        trials: raw.trials,
        shapes,
    })
}
