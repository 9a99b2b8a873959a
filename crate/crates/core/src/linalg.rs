//! Exact integer linear algebra: fraction-free rank, modular rank
//! cross-checks and Kronecker products.
//!
//! Every certified rank in this crate comes from [`rank_fraction_free`].
//! Modular ranks are only used to cross-check it.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows that must all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(IntMatrix {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged i64 rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[BigInt]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    /// Stacks `other` below `self`. Column counts must agree.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows > 0 && other.rows > 0 && self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols,
            entries,
        })
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
///
/// Tries a checked `i128` pass first and restarts with big integers on
/// overflow; both paths perform the same elimination.
pub fn rank_fraction_free(m: &IntMatrix) -> usize {
    if let Some(r) = bareiss_rank_small(m) {
        return r;
    }
    bareiss_rank_big(m)
}

fn bareiss_rank_small(m: &IntMatrix) -> Option<usize> {
    let cols = m.cols;
    let mut a: Vec<Vec<i128>> = Vec::with_capacity(m.rows);
    for row in m.row_iter() {
        let r: Option<Vec<i128>> = row.iter().map(|x| x.to_i128()).collect();
        let r = r?;
        if r.iter().any(|x| *x != 0) {
            a.push(r);
        }
    }
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..cols {
        if rank == a.len() {
            break;
        }
        let Some(pivot) = (rank..a.len())
            .filter(|&i| a[i][col] != 0)
            .min_by_key(|&i| a[i][col].unsigned_abs())
        else {
            continue;
        };
        a.swap(rank, pivot);
        let p = a[rank][col];
        for i in rank + 1..a.len() {
            let f = a[i][col];
            for j in col + 1..cols {
                let num = a[i][j]
                    .checked_mul(p)?
                    .checked_sub(f.checked_mul(a[rank][j])?)?;
                debug_assert_eq!(num % prev, 0, "Bareiss divisibility failed");
                a[i][j] = num / prev;
            }
            a[i][col] = 0;
        }
        prev = p;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_rank_big(m: &IntMatrix) -> usize {
    let cols = m.cols;
    let mut a: Vec<Vec<BigInt>> = m
        .row_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| r.to_vec())
        .collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == a.len() {
            break;
        }
        let Some(pivot) = (rank..a.len())
            .filter(|&i| !a[i][col].is_zero())
            .min_by_key(|&i| a[i][col].bits())
        else {
            continue;
        };
        a.swap(rank, pivot);
        let (head, tail) = a.split_at_mut(rank + 1);
        let prow = &head[rank];
        let p = &prow[col];
        for row in tail.iter_mut() {
            let f = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let num = &row[j] * p - &f * &prow[j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss divisibility failed");
                row[j] = q;
            }
        }
        prev = p.clone();
        rank += 1;
    }
    rank
}

/// Rank of `m` reduced modulo the prime `p`.
pub fn rank_modular(m: &IntMatrix, p: u64) -> Result<usize> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .row_iter()
        .map(|row| {
            row.iter()
                .map(|x| x.mod_floor(&pb).to_u64().expect("residue fits u64"))
                .collect()
        })
        .collect();
    Ok(rank_mod_u64(&mut a, m.cols, p))
}

fn rank_mod_u64(a: &mut [Vec<u64>], cols: usize, p: u64) -> usize {
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut rank = 0;
    for col in 0..cols {
        if rank == a.len() {
            break;
        }
        let Some(pivot) = (rank..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for j in col..cols {
            a[rank][j] = mulmod(a[rank][j], inv);
        }
        for i in rank + 1..a.len() {
            let f = a[i][col];
            if f == 0 {
                continue;
            }
            for j in col..cols {
                let sub = mulmod(f, a[rank][j]);
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn rank_mod_big(m: &IntMatrix, p: &BigUint) -> usize {
    let pi = BigInt::from_biguint(Sign::Plus, p.clone());
    let mut a: Vec<Vec<BigInt>> = m
        .row_iter()
        .map(|row| row.iter().map(|x| x.mod_floor(&pi)).collect())
        .collect();
    let exp = &pi - BigInt::from(2);
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == a.len() {
            break;
        }
        let Some(pivot) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = a[rank][col].modpow(&exp, &pi);
        for j in col..m.cols {
            a[rank][j] = (&a[rank][j] * &inv).mod_floor(&pi);
        }
        for i in rank + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in col..m.cols {
                let v = (&a[i][j] - &f * &a[rank][j]).mod_floor(&pi);
                a[i][j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free rank, cross-checked against modular ranks.
///
/// Every modular rank must be at most the exact rank, and at least one
/// prime must reproduce it. When all supplied primes are unlucky the
/// check escalates to a prime above the Hadamard bound of the matrix,
/// for which the modular rank is guaranteed to agree.
pub fn rank_checked(m: &IntMatrix, primes: &[u64]) -> Result<usize> {
    if primes.is_empty() {
        return Err(Error::BadParams("rank_checked needs at least one prime".into()));
    }
    let exact = rank_fraction_free(m);
    let mut best = 0;
    for &p in primes {
        let r = rank_modular(m, p)?;
        if r > exact {
            return Err(Error::InconsistentRank {
                exact,
                modular: r,
                prime: p.to_string(),
            });
        }
        best = best.max(r);
    }
    if best == exact {
        return Ok(exact);
    }
    let big = next_prime_above(&hadamard_bound(m));
    let r = rank_mod_big(m, &big);
    if r != exact {
        return Err(Error::InconsistentRank {
            exact,
            modular: r,
            prime: big.to_string(),
        });
    }
    Ok(exact)
}

/// Upper bound on the absolute value of every minor: the product of the
/// (rounded up) Euclidean norms of the nonzero rows.
pub fn hadamard_bound(m: &IntMatrix) -> BigUint {
    let mut bound = BigUint::one();
    for row in m.row_iter() {
        let sq: BigUint = row.iter().map(|x| x.magnitude() * x.magnitude()).sum();
        if sq.is_zero() {
            continue;
        }
        bound *= sq.sqrt() + BigUint::one();
    }
    bound
}

/// Kronecker product of the vectors, last index varying fastest.
pub fn kron(vs: &[&[BigInt]]) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for v in vs {
        let mut next = Vec::with_capacity(out.len() * v.len());
        for a in &out {
            for b in v.iter() {
                next.push(a * b);
            }
        }
        out = next;
    }
    out
}

/// Multiplies a rational row by the lcm of its denominators.
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Divides out the content and makes the leading nonzero entry positive.
/// The zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let lead_neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if lead_neg { -g } else { g };
    v.iter().map(|x| x / &g).collect()
}

/// True when the two vectors define the same projective point
/// (all 2x2 minors vanish). Zero vectors are never proportional.
pub fn proportional(a: &[BigInt], b: &[BigInt]) -> bool {
    if a.len() != b.len() || a.iter().all(Zero::is_zero) || b.iter().all(Zero::is_zero) {
        return false;
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

/// Indices of a maximal linearly independent subfamily, chosen greedily
/// in order.
pub fn independent_subset(vs: &[Vec<BigInt>]) -> Vec<usize> {
    let Some(len) = vs.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        rows.push(v.clone());
        let m = IntMatrix::from_rows(len, rows.clone()).expect("uniform lengths");
        if rank_fraction_free(&m) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

/// Solves `sum_j c_j * basis[j] = v` over the rationals. Returns `None`
/// when `v` is not in the span. The basis must be linearly independent.
pub fn coordinates_in_basis(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = basis.len();
    let m = v.len();
    // Augmented system: m equations, n unknowns.
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| BigRational::from_integer(b[i].clone()))
                .collect();
            row.push(BigRational::from_integer(v[i].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(n);
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..=n {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut c = vec![BigRational::zero(); n];
    for (row, &col) in pivots.iter().enumerate() {
        c[col] = a[row][n].clone();
    }
    Some(c)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    const BASES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    for &p in &BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for &a in &BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest (probable) prime strictly greater than `n`.
pub fn next_prime_above(n: &BigUint) -> BigUint {
    let mut c = n + BigUint::one();
    if c.is_even() && c > BigUint::from(2u32) {
        c += BigUint::one();
    }
    while !is_probable_prime_big(&c) {
        c += BigUint::from(if c == BigUint::from(2u32) { 1u32 } else { 2u32 });
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn identity_and_zero_ranks() {
        assert_eq!(rank_fraction_free(&IntMatrix::identity(3)), 3);
        assert_eq!(rank_fraction_free(&IntMatrix::zeros(4, 6)), 0);
        assert_eq!(rank_fraction_free(&IntMatrix::zeros(0, 0)), 0);
    }

    #[test]
    fn tangent_rows_of_one_point_on_p1xp1() {
        // v1 = [1,2], v2 = [3,5]: rows e_j (x) v2 and v1 (x) e_j.
        let m = IntMatrix::from_i64_rows(&[
            &[3, 5, 0, 0],
            &[0, 0, 3, 5],
            &[1, 0, 2, 0],
            &[0, 1, 0, 2],
        ]);
        assert_eq!(rank_fraction_free(&m), 3);
    }

    #[test]
    fn modular_examples() {
        assert_eq!(rank_modular(&IntMatrix::identity(3), 7).unwrap(), 3);
        let m = IntMatrix::from_i64_rows(&[&[2], &[4]]);
        assert_eq!(rank_modular(&m, 2).unwrap(), 0);
        assert_eq!(rank_modular(&m, 7).unwrap(), 1);
        assert!(matches!(rank_modular(&m, 9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn checked_examples() {
        assert_eq!(rank_checked(&IntMatrix::identity(4), &[7, 11]).unwrap(), 4);
        assert_eq!(rank_checked(&IntMatrix::zeros(3, 3), &[7]).unwrap(), 0);
    }

    #[test]
    fn checked_escalates_past_unlucky_prime() {
        let m = IntMatrix::from_i64_rows(&[&[7, 14], &[21, 7]]);
        assert_eq!(rank_modular(&m, 7).unwrap(), 0);
        assert_eq!(rank_checked(&m, &[7]).unwrap(), 2);
    }

    #[test]
    fn big_path_matches_small_path() {
        let big = BigInt::from(10).pow(30);
        let m = IntMatrix::from_rows(
            3,
            vec![
                vec![big.clone(), BigInt::from(1), BigInt::from(2)],
                vec![&big * 2, BigInt::from(2), BigInt::from(4)],
                vec![BigInt::from(3), &big + 1, BigInt::from(0)],
            ],
        )
        .unwrap();
        assert_eq!(bareiss_rank_small(&m), None);
        assert_eq!(rank_fraction_free(&m), 2);
        let small = IntMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(bareiss_rank_small(&small), Some(2));
        assert_eq!(bareiss_rank_big(&small), 2);
    }

    #[test]
    fn kron_examples() {
        let e0 = ints(&[1, 0]);
        let e1 = ints(&[0, 1]);
        assert_eq!(kron(&[&e0, &e0]), ints(&[1, 0, 0, 0]));
        assert_eq!(kron(&[&ints(&[1, 1]), &ints(&[1, 2])]), ints(&[1, 2, 1, 2]));
        assert_eq!(kron(&[&e1, &e0, &e0]), ints(&[0, 0, 0, 0, 1, 0, 0, 0]));
    }

    #[test]
    fn clear_denominator_examples() {
        assert_eq!(clear_denominators(&[rat(1, 2), rat(1, 3)]), ints(&[3, 2]));
        assert_eq!(clear_denominators(&[rat(0, 1), rat(0, 1)]), ints(&[0, 0]));
        assert_eq!(clear_denominators(&[rat(2, 1), rat(4, 1)]), ints(&[2, 4]));
    }

    #[test]
    fn primitive_and_proportional() {
        assert_eq!(primitive(&ints(&[-4, 6, 0])), ints(&[2, -3, 0]));
        assert_eq!(primitive(&ints(&[0, 0])), ints(&[0, 0]));
        assert!(proportional(&ints(&[1, 2]), &ints(&[-3, -6])));
        assert!(!proportional(&ints(&[1, 2]), &ints(&[2, 1])));
        assert!(!proportional(&ints(&[0, 0]), &ints(&[0, 0])));
    }

    #[test]
    fn basis_coordinates() {
        let basis = vec![ints(&[1, 0, 1]), ints(&[0, 1, 1])];
        let c = coordinates_in_basis(&basis, &ints(&[2, 3, 5])).unwrap();
        assert_eq!(c, vec![rat(2, 1), rat(3, 1)]);
        assert!(coordinates_in_basis(&basis, &ints(&[0, 0, 1])).is_none());
        let vs = vec![ints(&[1, 1]), ints(&[2, 2]), ints(&[0, 1])];
        assert_eq!(independent_subset(&vs), vec![0, 2]);
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(32749));
        assert!(is_prime_u64(65521));
        assert!(!is_prime_u64(65535));
        assert!(!is_prime_u64(1));
        assert!(is_prime_u64(18446744073709551557));
        assert_eq!(next_prime_above(&BigUint::from(100u32)), BigUint::from(101u32));
        assert_eq!(next_prime_above(&BigUint::from(1u32)), BigUint::from(2u32));
        assert_eq!(next_prime_above(&BigUint::from(2u32)), BigUint::from(3u32));
        let p = next_prime_above(&BigUint::from(u64::MAX));
        assert_eq!(p, BigUint::from(u64::MAX) + BigUint::from(14u32));
    }
}
