//! Functions on the unit group `G = (Z/pZ)^*`.
//!
//! A [`GFun`] is a dense vector of exact rationals indexed by residue
//! `1..p`. The distinguished functions are `j(h) = h` (the residue read as an
//! integer) and `j0 = j - p/2`. Convolution is normalized by `1/(p-1)`:
//!
//! ```text
//! (f1 * f2)(h) = 1/(p-1) * sum_{u in G} f1(u) f2(u^-1 h)
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_arith::{check_odd_prime, int, rat, rational_strings, Rational};
use crate::linalg::{bareiss, clear_denominators, Matrix};

/// An element of `(Z/pZ)^*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitModP {
    p: u32,
    residue: u32,
}

impl UnitModP {
    pub fn new(p: u32, residue: i64) -> Result<Self> {
        check_odd_prime(p as i64)?;
        let r = residue.rem_euclid(p as i64) as u32;
        if r == 0 {
            return Err(Error::InvalidInput(format!(
                "{residue} is not a unit mod {p}"
            )));
        }
        Ok(Self { p, residue: r })
    }

    pub(crate) fn new_unchecked(p: u32, residue: u32) -> Self {
        debug_assert!(residue >= 1 && residue < p);
        Self { p, residue }
    }

    /// All units in ascending residue order.
    pub fn all(p: u32) -> impl Iterator<Item = UnitModP> {
        (1..p).map(move |r| Self::new_unchecked(p, r))
    }

    pub fn prime(self) -> u32 {
        self.p
    }

    pub fn residue(self) -> u32 {
        self.residue
    }

    /// Position of this unit in a dense [`GFun`] value vector.
    pub fn index(self) -> usize {
        self.residue as usize - 1
    }

    pub fn inv(self) -> Self {
        // Fermat: h^(p-2)
        let p = self.p as u64;
        let mut base = self.residue as u64;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Self::new_unchecked(self.p, acc as u32)
    }

    /// The integer `j(h)` in `1..p`.
    pub fn j(self) -> u32 {
        self.residue
    }
}

impl std::ops::Mul for UnitModP {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let r = (self.residue as u64 * other.residue as u64) % self.p as u64;
        Self::new_unchecked(self.p, r as u32)
    }
}

/// `-h`, i.e. residue `p - h`.
impl std::ops::Neg for UnitModP {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new_unchecked(self.p, self.p - self.residue)
    }
}

impl fmt::Display for UnitModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.p)
    }
}

/// A rational-valued function on `(Z/pZ)^*`; `values[v - 1] = f(v mod p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GFun {
    p: u32,
    values: Vec<Rational>,
}

impl GFun {
    pub fn new(p: u32, values: Vec<Rational>) -> Result<Self> {
        check_odd_prime(p as i64)?;
        if values.len() != p as usize - 1 {
            return Err(Error::InvalidInput(format!(
                "a function on (Z/{p}Z)^* needs {} values, got {}",
                p - 1,
                values.len()
            )));
        }
        Ok(Self { p, values })
    }

    pub fn from_ints<T: Copy + Into<i64>>(p: u32, values: &[T]) -> Result<Self> {
        Self::new(p, values.iter().map(|&x| int(x.into())).collect())
    }

    pub fn zero(p: u32) -> Result<Self> {
        Self::new(p, vec![Rational::zero(); p as usize - 1])
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn at(&self, h: UnitModP) -> &Rational {
        &self.values[h.index()]
    }

    /// Value at residue `v` in `1..p`.
    pub fn at_residue(&self, v: u32) -> &Rational {
        &self.values[v as usize - 1]
    }

    /// Integer values, if every value is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.values
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    pub fn sum(&self) -> Rational {
        self.values.iter().sum()
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
        Ok(self.zip_with(other, |x, y| x + y))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(self.zip_with(other, |x, y| x - y))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        Self {
            p: self.p,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| f(x, y))
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|x| x * r)
    }

    /// Adds the constant `c` to every value.
    pub fn shift(&self, c: &Rational) -> Self {
        self.map(|x| x + c)
    }

    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        Self {
            p: self.p,
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl Serialize for GFun {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("GFun", 2)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("values", &rational_strings(&self.values))?;
        s.end()
    }
}

pub fn j_fun(p: u32) -> Result<GFun> {
    GFun::new(p, (1..p as i64).map(int).collect())
}

/// `j0(v) = v - p/2`, an odd function on `G`.
pub fn j0_fun(p: u32) -> Result<GFun> {
    let half = rat(p as i64, 2);
    Ok(j_fun(p)?.map(|x| x - &half))
}

pub fn convolve(f1: &GFun, f2: &GFun) -> Result<GFun> {
    f1.same_prime(f2)?;
    let p = f1.p;
    let norm = rat(1, p as i64 - 1);
    let values = UnitModP::all(p)
        .map(|h| {
            let s: Rational = UnitModP::all(p)
                .map(|u| f1.at(u) * f2.at(u.inv() * h))
                .sum();
            s * &norm
        })
        .collect();
    Ok(GFun { p, values })
}

/// `v -> f(-v)`.
pub fn negate_arg(f: &GFun) -> GFun {
    let mut values = f.values.clone();
    values.reverse();
    GFun { p: f.p, values }
}

pub fn odd_part(f: &GFun) -> GFun {
    let half = rat(1, 2);
    f.zip_with(&negate_arg(f), |x, y| (x - y) * &half)
}

pub fn even_part(f: &GFun) -> GFun {
    let half = rat(1, 2);
    f.zip_with(&negate_arg(f), |x, y| (x + y) * &half)
}

/// `M[v][u] = j(u^-1 v)`, so that `(p-1) (b * j)(v) = sum_u M[v][u] b(u)`.
pub fn conv_by_j_matrix(p: u32) -> Result<Matrix> {
    check_odd_prime(p as i64)?;
    Ok(UnitModP::all(p)
        .map(|v| {
            UnitModP::all(p)
                .map(|u| int((u.inv() * v).j() as i64))
                .collect()
        })
        .collect())
}

/// Basis of the right null space of `m`, by fraction-free elimination.
///
/// One vector per free column, in ascending column order; each vector has a
/// 1 at its own free column and 0 at the other free columns.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let ncols = m.first().map_or(0, Vec::len);
    let ech = bareiss(clear_denominators(m), ncols);
    ech.free_columns(ncols)
        .into_iter()
        .map(|f| {
            let mut free = vec![Rational::zero(); ncols];
            free[f] = Rational::one();
            ech.back_substitute(ncols, &free, None)
        })
        .collect()
}

/// Dense matrix-vector product.
pub fn mat_vec(m: &Matrix, x: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}
