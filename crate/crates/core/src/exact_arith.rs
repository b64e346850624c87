//! Exact rationals and the cyclotomic field Q(zeta_p).
//!
//! Elements of Q(zeta_p) are stored in the basis `{zeta^1, ..., zeta^(p-1)}`.
//! This is a genuine Q-basis: the only linear relation among the `p` powers
//! of `zeta` is `1 + zeta + ... + zeta^(p-1) = 0`, so any constant term is
//! folded into the other coordinates via `1 = -(zeta + ... + zeta^(p-1))`.
//! Complex conjugation `zeta -> zeta^-1` is then the index permutation
//! `v -> p - v`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `"num/den"`, denominator included even when it is 1.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

pub fn is_odd_prime(n: i64) -> bool {
    if n < 3 || n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_odd_prime(p: i64) -> Result<u32> {
    if is_odd_prime(p) && p <= u32::MAX as i64 {
        Ok(p as u32)
    } else {
        Err(Error::InvalidPrime(p))
    }
}

/// An element of Q(zeta_p) in canonical coordinates: `coords[v - 1]` is the
/// coefficient of `zeta^v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    p: u32,
    coords: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(p: u32) -> Result<Self> {
        check_odd_prime(p as i64)?;
        Ok(Self::zero_unchecked(p))
    }

    fn zero_unchecked(p: u32) -> Self {
        Self {
            p,
            coords: vec![Rational::zero(); p as usize - 1],
        }
    }

    pub fn one(p: u32) -> Result<Self> {
        Self::from_rational(p, &Rational::one())
    }

    /// The rational `r` embedded in Q(zeta_p); every coordinate equals `-r`.
    pub fn from_rational(p: u32, r: &Rational) -> Result<Self> {
        check_odd_prime(p as i64)?;
        Ok(Self {
            p,
            coords: vec![-r.clone(); p as usize - 1],
        })
    }

    /// Builds an element from canonical coordinates (index 0 is `zeta^1`).
    pub fn from_coords(p: u32, coords: Vec<Rational>) -> Result<Self> {
        check_odd_prime(p as i64)?;
        if coords.len() != p as usize - 1 {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates for p = {p}, got {}",
                p - 1,
                coords.len()
            )));
        }
        Ok(Self { p, coords })
    }

    /// Builds an element from coefficients on `zeta^0, ..., zeta^(p-1)` and
    /// reduces the constant term away.
    pub fn from_power_coeffs(p: u32, mut coeffs: Vec<Rational>) -> Result<Self> {
        check_odd_prime(p as i64)?;
        if coeffs.len() != p as usize {
            return Err(Error::InvalidInput(format!(
                "expected {p} power coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self::reduce(p, &mut coeffs))
    }

    fn reduce(p: u32, coeffs: &mut [Rational]) -> Self {
        let c0 = std::mem::take(&mut coeffs[0]);
        let coords = coeffs[1..]
            .iter_mut()
            .map(|c| {
                let mut c = std::mem::take(c);
                if !c0.is_zero() {
                    c -= &c0;
                }
                c
            })
            .collect();
        Self { p, coords }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Coefficient of `zeta^v` for `v` in `1..p`.
    pub fn coord(&self, v: u32) -> &Rational {
        &self.coords[v as usize - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        let first = &self.coords[0];
        self.coords
            .iter()
            .all(|c| c == first)
            .then(|| -first.clone())
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.p, other.p))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(x, y)| x + y)
            .collect();
        Ok(Self { p: self.p, coords })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(x, y)| x - y)
            .collect();
        Ok(Self { p: self.p, coords })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let p = self.p as usize;
        let mut acc = vec![Rational::zero(); p];
        for (i, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                acc[(i + j + 2) % p] += x * y;
            }
        }
        Ok(Self::reduce(self.p, &mut acc))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            p: self.p,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            p: self.p,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Image under `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let mut coords = self.coords.clone();
        coords.reverse();
        Self { p: self.p, coords }
    }
}

/// `zeta_p^k`; for `k = 0 mod p` this is the reduced form of 1.
pub fn zeta_pow(p: i64, k: i64) -> Result<CyclotomicNumber> {
    let p = check_odd_prime(p)?;
    let e = k.rem_euclid(p as i64) as usize;
    let mut coeffs = vec![Rational::zero(); p as usize];
    coeffs[e] = Rational::one();
    Ok(CyclotomicNumber::reduce(p, &mut coeffs))
}

/// `1 / (1 - zeta^u) = -(sum_{j=1}^{p-1} j zeta^(u j)) / p`.
pub fn inv_one_minus_zeta(p: i64, u: i64) -> Result<CyclotomicNumber> {
    let pu = check_odd_prime(p)?;
    let u = u.rem_euclid(p);
    if u == 0 {
        return Err(Error::InvalidInput(
            "1 - zeta^0 = 0 has no inverse".to_string(),
        ));
    }
    let mut x = CyclotomicNumber::zero_unchecked(pu);
    for j in 1..p {
        let e = (u * j) % p;
        x.coords[e as usize - 1] = rat(-j, p);
    }
    Ok(x)
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "z^{}", i + 1)?;
        }
        Ok(())
    }
}

pub(crate) fn rational_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CyclotomicNumber", 2)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("coords", &rational_strings(&self.coords))?;
        s.end()
    }
}
