//! Zero-dimensional schemes made of simple and double points, and their
//! residue and trace with respect to a divisor `H` in `|O(eps_i)|`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::segre::h0_raw;
use crate::space::{MppPoint, Multidegree, MultiprojectiveSpace, PointConfiguration};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Simple,
    Double,
}

impl Multiplicity {
    pub fn as_u8(self) -> u8 {
        match self {
            Multiplicity::Simple => 1,
            Multiplicity::Double => 2,
        }
    }

    pub fn from_u8(m: u8) -> Result<Self> {
        match m {
            1 => Ok(Multiplicity::Simple),
            2 => Ok(Multiplicity::Double),
            _ => Err(Error::InvariantViolation(format!(
                "multiplicity must be 1 or 2, got {m}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeTerm {
    pub point: MppPoint,
    pub multiplicity: Multiplicity,
}

/// A union of simple points and double points `(2p, Y)` with distinct
/// supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroDimScheme {
    space: MultiprojectiveSpace,
    terms: Vec<SchemeTerm>,
}

impl ZeroDimScheme {
    pub fn new(space: MultiprojectiveSpace, terms: Vec<SchemeTerm>) -> Result<Self> {
        for t in &terms {
            t.point.check_in(&space)?;
        }
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                if terms[i].point == terms[j].point {
                    return Err(Error::InvariantViolation(format!(
                        "scheme terms {i} and {j} share a support point"
                    )));
                }
            }
        }
        Ok(ZeroDimScheme { space, terms })
    }

    pub fn empty(space: MultiprojectiveSpace) -> Self {
        ZeroDimScheme {
            space,
            terms: Vec::new(),
        }
    }

    /// `(2S, Y)`.
    pub fn double(config: &PointConfiguration) -> Self {
        Self::uniform(config, Multiplicity::Double)
    }

    /// The reduced scheme `(S, Y)`.
    pub fn simple(config: &PointConfiguration) -> Self {
        Self::uniform(config, Multiplicity::Simple)
    }

    fn uniform(config: &PointConfiguration, multiplicity: Multiplicity) -> Self {
        ZeroDimScheme {
            space: config.space().clone(),
            terms: config
                .points()
                .iter()
                .map(|p| SchemeTerm {
                    point: p.clone(),
                    multiplicity,
                })
                .collect(),
        }
    }

    pub fn space(&self) -> &MultiprojectiveSpace {
        &self.space
    }

    pub fn terms(&self) -> &[SchemeTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Length of the scheme in `Y`: 1 per simple point, `dim Y + 1` per
    /// double point.
    pub fn degree(&self) -> usize {
        self.terms
            .iter()
            .map(|t| match t.multiplicity {
                Multiplicity::Simple => 1,
                Multiplicity::Double => self.space.dim() + 1,
            })
            .sum()
    }

    /// Union with another scheme on the same space. Shared supports keep
    /// the larger multiplicity.
    pub fn union(&self, other: &ZeroDimScheme) -> Result<ZeroDimScheme> {
        if self.space != other.space {
            return Err(Error::ShapeMismatch(format!(
                "union of schemes on {} and {}",
                self.space, other.space
            )));
        }
        let mut terms = self.terms.clone();
        for t in &other.terms {
            match terms.iter_mut().find(|s| s.point == t.point) {
                Some(s) if t.multiplicity == Multiplicity::Double => {
                    s.multiplicity = Multiplicity::Double
                }
                Some(_) => {}
                None => terms.push(t.clone()),
            }
        }
        Ok(ZeroDimScheme {
            space: self.space.clone(),
            terms,
        })
    }
}

/// A divisor `H = {form . x_i = 0}` in `|O(eps_i)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateDivisor {
    factor: usize,
    form: Vec<BigInt>,
}

impl CoordinateDivisor {
    pub fn new(factor: usize, form: Vec<BigInt>) -> Result<Self> {
        if form.iter().all(Zero::is_zero) {
            return Err(Error::InvariantViolation("divisor form is zero".into()));
        }
        Ok(CoordinateDivisor { factor, form })
    }

    /// A divisor in `|O(eps_i)|` through `p`.
    pub fn through(p: &MppPoint, factor: usize) -> Result<Self> {
        let v = p.factor(factor);
        let j = v.iter().position(|x| !x.is_zero()).expect("nonzero coordinates");
        let l = if j == 0 { 1 } else { 0 };
        if v.len() < 2 {
            return Err(Error::ShapeMismatch("factor of dimension 0".into()));
        }
        let mut form = vec![BigInt::zero(); v.len()];
        form[l] = v[j].clone();
        form[j] = -v[l].clone();
        Self::new(factor, form)
    }

    pub fn factor(&self) -> usize {
        self.factor
    }

    pub fn form(&self) -> &[BigInt] {
        &self.form
    }

    fn check_in(&self, space: &MultiprojectiveSpace) -> Result<()> {
        if self.factor >= space.k() || self.form.len() != space.factor_dim(self.factor) + 1 {
            return Err(Error::ShapeMismatch(format!(
                "divisor on factor {} with form of length {} does not live on {space}",
                self.factor,
                self.form.len()
            )));
        }
        Ok(())
    }

    pub fn contains(&self, p: &MppPoint) -> bool {
        let v = p.factor(self.factor);
        let s: BigInt = self.form.iter().zip(v).map(|(a, b)| a * b).sum();
        s.is_zero()
    }

    fn pivot(&self) -> usize {
        self.form.iter().position(|x| !x.is_zero()).expect("nonzero form")
    }

    /// Integer basis of the kernel of the form, spanning the hyperplane of
    /// `P^{n_i}` cut by `H`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let p = self.pivot();
        (0..self.form.len())
            .filter(|&j| j != p)
            .map(|j| {
                let mut x = vec![BigInt::zero(); self.form.len()];
                x[j] = self.form[p].clone();
                x[p] = -self.form[j].clone();
                x
            })
            .collect()
    }
}

/// `Res_H(Z)`: double points on `H` become simple, simple points on `H`
/// disappear.
pub fn residue(z: &ZeroDimScheme, h: &CoordinateDivisor) -> Result<ZeroDimScheme> {
    h.check_in(z.space())?;
    let terms = z
        .terms()
        .iter()
        .filter_map(|t| {
            if !h.contains(&t.point) {
                return Some(t.clone());
            }
            match t.multiplicity {
                Multiplicity::Double => Some(SchemeTerm {
                    point: t.point.clone(),
                    multiplicity: Multiplicity::Simple,
                }),
                Multiplicity::Simple => None,
            }
        })
        .collect();
    Ok(ZeroDimScheme {
        space: z.space().clone(),
        terms,
    })
}

/// `Z ∩ H` as a scheme on `H`.
///
/// Factor `i` of `H` is the hyperplane of `P^{n_i}` cut by the form, with
/// coordinates taken in [`CoordinateDivisor::kernel_basis`]; it is dropped
/// when `n_i = 1`. Multiplicities are preserved since `H` is smooth.
pub fn trace(z: &ZeroDimScheme, h: &CoordinateDivisor) -> Result<(MultiprojectiveSpace, ZeroDimScheme)> {
    h.check_in(z.space())?;
    let i = h.factor();
    let keep = z.space().factor_dim(i) > 1;
    let mut dims = z.space().dims().to_vec();
    if keep {
        dims[i] -= 1;
    } else {
        dims.remove(i);
    }
    let space = MultiprojectiveSpace::from_dims_unchecked(dims);
    let p = h.pivot();
    let mut terms = Vec::new();
    for t in z.terms().iter().filter(|t| h.contains(&t.point)) {
        let mut coords = t.point.coords().to_vec();
        if keep {
            coords[i].remove(p);
        } else {
            coords.remove(i);
        }
        terms.push(SchemeTerm {
            point: MppPoint::new(coords)?,
            multiplicity: t.multiplicity,
        });
    }
    let scheme = ZeroDimScheme::new(space.clone(), terms)?;
    Ok((space, scheme))
}

/// The three `h^0` values tied by the residual exact sequence
/// `0 -> I_Res(d - eps_i) -> I_Z(d) -> I_{Z∩H, H}(d) -> 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    /// `h^0(I_Z(d))`.
    pub a: usize,
    /// `h^0(I_{Res_H Z}(d - eps_i))`.
    pub b: usize,
    /// `h^0(H, I_{Z∩H}(d|_H))`.
    pub c: usize,
    /// `b <= a <= b + c`.
    pub holds: bool,
}

pub fn check_residual_inequalities(
    z: &ZeroDimScheme,
    h: &CoordinateDivisor,
    d: &Multidegree,
) -> Result<ResidualReport> {
    h.check_in(z.space())?;
    if d.k() != z.space().k() {
        return Err(Error::ShapeMismatch(format!(
            "multidegree {d} on {}",
            z.space()
        )));
    }
    let i = h.factor();
    if !d.flags()[i] {
        return Err(Error::BadParams(format!(
            "multidegree {d} has no 1 at the divisor's factor {i}"
        )));
    }
    let (a_sections, a_rank) = h0_raw(z, d.flags())?;
    let a = a_sections - a_rank;

    let res = residue(z, h)?;
    let mut res_flags = d.flags().to_vec();
    res_flags[i] = false;
    let (s, r) = h0_raw(&res, &res_flags)?;
    let b = s - r;

    let (_, tr) = trace(z, h)?;
    let mut tr_flags = d.flags().to_vec();
    if z.space().factor_dim(i) == 1 {
        tr_flags.remove(i);
    }
    let (s, r) = h0_raw(&tr, &tr_flags)?;
    let c = s - r;

    Ok(ResidualReport {
        a,
        b,
        c,
        holds: b <= a && a <= b + c,
    })
}
