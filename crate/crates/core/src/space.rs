//! Multiprojective spaces, their points, point sets and multidegrees.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::primitive;

/// A product `P^{n_1} x ... x P^{n_k}`, stored as its factor dimensions.
///
/// The zero-factor product (a single point) only arises from minimality
/// reduction of a one-point set and from traces on a `P^1` factor; use
/// [`MultiprojectiveSpace::point`] for it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiprojectiveSpace {
    dims: Vec<usize>,
}

impl MultiprojectiveSpace {
    /// Requires at least one factor and every factor of positive dimension.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvariantViolation("a space needs at least one factor".into()));
        }
        if dims.contains(&0) {
            return Err(Error::InvariantViolation(format!(
                "factor dimensions must be positive, got {dims:?}"
            )));
        }
        Ok(MultiprojectiveSpace { dims })
    }

    /// Drops zero-dimensional factors before validating.
    pub fn normalized(dims: &[usize]) -> Result<Self> {
        Self::new(dims.iter().copied().filter(|&n| n > 0).collect())
    }

    pub fn point() -> Self {
        MultiprojectiveSpace { dims: Vec::new() }
    }

    pub fn projective(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `(P^1)^k`.
    pub fn p1_power(k: usize) -> Result<Self> {
        Self::new(vec![1; k])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of factors.
    pub fn k(&self) -> usize {
        self.dims.len()
    }

    pub fn factor_dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    /// Total dimension `n_1 + ... + n_k`.
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_point(&self) -> bool {
        self.dims.is_empty()
    }

    /// `h^0(O(1,...,1)) = prod (n_i + 1)`.
    pub fn ambient_sections(&self) -> usize {
        self.dims.iter().map(|n| n + 1).product()
    }

    /// Factor dimensions sorted in descending order, the canonical
    /// representative of the isomorphism class.
    pub fn canonical(&self) -> MultiprojectiveSpace {
        let mut dims = self.dims.clone();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        MultiprojectiveSpace { dims }
    }

    pub(crate) fn from_dims_unchecked(dims: Vec<usize>) -> Self {
        MultiprojectiveSpace { dims }
    }
}

impl fmt::Display for MultiprojectiveSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "P^0");
        }
        let parts: Vec<String> = self.dims.iter().map(|n| format!("P^{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A point of a multiprojective space: one homogeneous coordinate vector
/// per factor, stored primitive with positive leading entry so that equal
/// projective points compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MppPoint {
    coords: Vec<Vec<BigInt>>,
}

impl MppPoint {
    pub fn new(coords: Vec<Vec<BigInt>>) -> Result<Self> {
        for (i, v) in coords.iter().enumerate() {
            if v.is_empty() || v.iter().all(Zero::is_zero) {
                return Err(Error::InvariantViolation(format!(
                    "coordinate vector of factor {i} is zero"
                )));
            }
        }
        Ok(MppPoint {
            coords: coords.iter().map(|v| primitive(v)).collect(),
        })
    }

    pub fn from_i64(coords: &[&[i64]]) -> Result<Self> {
        Self::new(
            coords
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn coords(&self) -> &[Vec<BigInt>] {
        &self.coords
    }

    /// `pi_i(p)`.
    pub fn factor(&self, i: usize) -> &[BigInt] {
        &self.coords[i]
    }

    pub fn k(&self) -> usize {
        self.coords.len()
    }

    pub fn check_in(&self, space: &MultiprojectiveSpace) -> Result<()> {
        let shape_ok = self.coords.len() == space.k()
            && self
                .coords
                .iter()
                .zip(space.dims())
                .all(|(v, &n)| v.len() == n + 1);
        if shape_ok {
            Ok(())
        } else {
            let lens: Vec<usize> = self.coords.iter().map(Vec::len).collect();
            Err(Error::ShapeMismatch(format!(
                "point with coordinate lengths {lens:?} is not in {space}"
            )))
        }
    }
}

/// Serialized as one array of decimal strings per factor.
impl Serialize for MppPoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coords: Vec<Vec<String>> = self
            .coords
            .iter()
            .map(|v| v.iter().map(ToString::to_string).collect())
            .collect();
        coords.serialize(serializer)
    }
}

impl fmt::Display for MppPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|v| {
                let xs: Vec<String> = v.iter().map(ToString::to_string).collect();
                format!("[{}]", xs.join(":"))
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A finite set of pairwise distinct points of a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    space: MultiprojectiveSpace,
    points: Vec<MppPoint>,
}

impl PointConfiguration {
    pub fn new(space: MultiprojectiveSpace, points: Vec<MppPoint>) -> Result<Self> {
        for p in &points {
            p.check_in(&space)?;
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::InvariantViolation(format!(
                        "points {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(PointConfiguration { space, points })
    }

    pub fn space(&self) -> &MultiprojectiveSpace {
        &self.space
    }

    pub fn points(&self) -> &[MppPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The sub-configuration on the given point indices.
    pub fn subset(&self, indices: &[usize]) -> PointConfiguration {
        PointConfiguration {
            space: self.space.clone(),
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    /// Distinct values of `pi_i` on the set, in first-seen order.
    pub fn projection(&self, i: usize) -> Vec<&[BigInt]> {
        let mut seen: Vec<&[BigInt]> = Vec::new();
        for p in &self.points {
            if !seen.contains(&p.factor(i)) {
                seen.push(p.factor(i));
            }
        }
        seen
    }
}

/// A 0/1 multidegree selecting the line bundle `O(eps_I)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree {
    flags: Vec<bool>,
}

impl Multidegree {
    pub fn new(flags: Vec<bool>) -> Result<Self> {
        if !flags.iter().any(|&f| f) {
            return Err(Error::EmptyProjection);
        }
        Ok(Multidegree { flags })
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvariantViolation(format!(
                "multidegree entries must be 0 or 1, got {b}"
            )));
        }
        Self::new(bits.iter().map(|&b| b == 1).collect())
    }

    /// `(1, ..., 1)`.
    pub fn all_ones(k: usize) -> Self {
        Multidegree {
            flags: vec![true; k],
        }
    }

    /// `eps_I`: ones exactly on `indices`.
    pub fn eps(k: usize, indices: &[usize]) -> Result<Self> {
        let mut flags = vec![false; k];
        for &i in indices {
            if i >= k {
                return Err(Error::ShapeMismatch(format!("factor {i} out of range for k={k}")));
            }
            flags[i] = true;
        }
        Self::new(flags)
    }

    /// `hat(eps)_I`: zeros exactly on `indices`.
    pub fn eps_hat(k: usize, indices: &[usize]) -> Result<Self> {
        let mut flags = vec![true; k];
        for &i in indices {
            if i >= k {
                return Err(Error::ShapeMismatch(format!("factor {i} out of range for k={k}")));
            }
            flags[i] = false;
        }
        Self::new(flags)
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn k(&self) -> usize {
        self.flags.len()
    }

    pub fn is_all_ones(&self) -> bool {
        self.flags.iter().all(|&f| f)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.flags.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "({})", parts.join(","))
    }
}
