use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::segre::is_minimal;
use crate::space::PointConfiguration;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Ex40Subcase {
    /// `k >= 4`.
    #[serde(rename = "ii")]
    II,
    /// `k = 3`, `n_1 = n_2 = 2`.
    #[serde(rename = "iii")]
    III,
    /// `k = 3`, `n_1 = n_2 = 1`.
    #[serde(rename = "iv")]
    IV,
    /// `k = 3`, `{n_1, n_2} = {1, 2}`.
    #[serde(rename = "v")]
    V,
}

impl fmt::Display for Ex40Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Ex40Subcase::II => "ii",
            Ex40Subcase::III => "iii",
            Ex40Subcase::IV => "iv",
            Ex40Subcase::V => "v",
        };
        f.write_str(s)
    }
}

/// Structural type of a three-point set.
///
/// `Ex1`: two points `a, b` differ only on one factor of dimension `m`,
/// and the third point differs from their shared value on every other
/// factor.
///
/// `Ex40`: two points `u, v` differ exactly on two factors and the third
/// point `o` differs from their shared value on every other factor.
/// `o_meets_u` (`o_meets_v`) records whether `o` shares a coordinate with
/// `u` (`v`) on one of the two distinguished `P^1` factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "pattern")]
pub enum PatternTag {
    #[serde(rename = "EX1")]
    Ex1 { m: usize, k: usize },
    #[serde(rename = "EX40")]
    Ex40 {
        subcase: Ex40Subcase,
        o_meets_u: bool,
        o_meets_v: bool,
    },
    #[serde(rename = "P14_MINIMAL")]
    P14Minimal,
    #[serde(rename = "GENERIC_ORBIT")]
    GenericOrbit,
    #[serde(rename = "OTHER")]
    Other,
}

impl PatternTag {
    /// Membership in `T(Y, 3)` as predicted by the classification.
    pub fn predicts_membership(&self) -> bool {
        match *self {
            PatternTag::Ex1 { k, .. } => k >= 4,
            PatternTag::Ex40 {
                subcase,
                o_meets_u,
                o_meets_v,
            } => match subcase {
                Ex40Subcase::II | Ex40Subcase::III => true,
                Ex40Subcase::IV => o_meets_u && o_meets_v,
                Ex40Subcase::V => o_meets_u || o_meets_v,
            },
            PatternTag::P14Minimal => true,
            PatternTag::GenericOrbit | PatternTag::Other => false,
        }
    }
}

impl fmt::Display for PatternTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTag::Ex1 { m, k } => write!(f, "EX1{{m={m},k={k}}}"),
            PatternTag::Ex40 {
                subcase,
                o_meets_u,
                o_meets_v,
            } => write!(f, "EX40{{{subcase},u={o_meets_u},v={o_meets_v}}}"),
            PatternTag::P14Minimal => f.write_str("P14_MINIMAL"),
            PatternTag::GenericOrbit => f.write_str("GENERIC_ORBIT"),
            PatternTag::Other => f.write_str("OTHER"),
        }
    }
}

fn check_three(config: &PointConfiguration) -> Result<()> {
    if config.len() != 3 {
        return Err(Error::WrongCardinality {
            expected: 3,
            got: config.len(),
        });
    }
    Ok(())
}

const PAIRS: [(usize, usize, usize); 3] = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];

pub fn classify3(config: &PointConfiguration) -> Result<PatternTag> {
    check_three(config)?;
    if !is_minimal(config) {
        return Ok(PatternTag::Other);
    }
    let space = config.space();
    let k = space.k();
    let pts = config.points();
    let same = |i: usize, p: usize, q: usize| pts[p].factor(i) == pts[q].factor(i);
    let small = |i: usize| matches!(space.factor_dim(i), 1 | 2);

    if k >= 3 {
        for &(p, q, o) in &PAIRS {
            let diff: Vec<usize> = (0..k).filter(|&i| !same(i, p, q)).collect();
            if diff.len() == 1
                && small(diff[0])
                && (0..k).filter(|&i| i != diff[0]).all(|i| !same(i, o, p))
            {
                return Ok(PatternTag::Ex1 {
                    m: space.factor_dim(diff[0]),
                    k,
                });
            }
        }

        let mut best: Option<PatternTag> = None;
        for &(p, q, o) in &PAIRS {
            let diff: Vec<usize> = (0..k).filter(|&i| !same(i, p, q)).collect();
            if diff.len() != 2
                || !diff.iter().all(|&i| small(i))
                || !(0..k).filter(|i| !diff.contains(i)).all(|i| !same(i, o, p))
            {
                continue;
            }
            let (n1, n2) = (space.factor_dim(diff[0]), space.factor_dim(diff[1]));
            let subcase = match (k, n1, n2) {
                (k, _, _) if k >= 4 => Ex40Subcase::II,
                (_, 2, 2) => Ex40Subcase::III,
                (_, 1, 1) => Ex40Subcase::IV,
                _ => Ex40Subcase::V,
            };
            let lines: Vec<usize> = diff.iter().copied().filter(|&i| space.factor_dim(i) == 1).collect();
            let tag = PatternTag::Ex40 {
                subcase,
                o_meets_u: lines.iter().any(|&i| same(i, o, p)),
                o_meets_v: lines.iter().any(|&i| same(i, o, q)),
            };
            // A set can be read in this shape from several pairs; keep a
            // reading that places it in the locus whenever one exists.
            match best {
                Some(b) if b.predicts_membership() || !tag.predicts_membership() => {}
                _ => best = Some(tag),
            }
        }
        if let Some(tag) = best {
            return Ok(tag);
        }
    }

    if space.dims() == [1, 1, 1, 1] {
        return Ok(PatternTag::P14Minimal);
    }
    if (0..k).all(|i| config.projection(i).len() == 3) {
        return Ok(PatternTag::GenericOrbit);
    }
    Ok(PatternTag::Other)
}

/// The classification of three-point Terracini loci as a decision
/// procedure.
pub fn predicted_in_t3(config: &PointConfiguration) -> Result<bool> {
    check_three(config)?;
    let dims = config.space().dims();
    if dims.len() <= 2 || dims == [2, 2, 2] {
        return Ok(false);
    }
    Ok(classify3(config)?.predicts_membership())
}
