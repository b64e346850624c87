//! Problem instances `(p, g)` and admissible multiplicity profiles.

use std::fmt;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::{check_odd_prime, int};
use crate::group_fun::GFun;

/// A prime `p` and dimension `g` with `(p - 1) | 2g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProblemInstance {
    p: u32,
    g: u64,
}

impl ProblemInstance {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    /// `2g / (p - 1)`, the common value of `a(h) + a(-h)`.
    pub fn half_sum(&self) -> u64 {
        2 * self.g / (self.p as u64 - 1)
    }

    /// `2g / (p - 1) + 2`, the number of fixed points of a realizing curve
    /// automorphism.
    pub fn fixed_point_count(&self) -> u64 {
        self.half_sum() + 2
    }

    /// The instance whose fixed-point count is `s` (requires `s >= 3`).
    pub fn from_fixed_point_count(p: u32, s: u64) -> Result<Self> {
        if s < 3 {
            return Err(Error::InvalidInput(format!(
                "a branch profile needs at least 3 points, got {s}"
            )));
        }
        let g = (s - 2) * (p as u64 - 1) / 2;
        validate_instance(p as i64, g as i64)
    }
}

impl fmt::Display for ProblemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, g={})", self.p, self.g)
    }
}

pub fn validate_instance(p: i64, g: i64) -> Result<ProblemInstance> {
    let p = check_odd_prime(p)?;
    if g < 1 {
        return Err(Error::InvalidInput(format!("g must be positive, got {g}")));
    }
    if (2 * g) % (p as i64 - 1) != 0 {
        return Err(Error::NotApplicable {
            p_minus_one: p as i64 - 1,
            two_g: 2 * g,
        });
    }
    Ok(ProblemInstance { p, g: g as u64 })
}

/// An admissible profile `a`; `a[v - 1]` is the multiplicity of the character
/// `zeta -> zeta^v` on holomorphic differentials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplicityProfile {
    instance: ProblemInstance,
    a: Vec<u64>,
}

impl MultiplicityProfile {
    pub fn new(instance: ProblemInstance, a: Vec<u64>) -> Result<Self> {
        let f = GFun::from_ints(instance.p, &a.iter().map(|&x| x as i64).collect::<Vec<_>>())?;
        if !is_admissible(&f, &instance) {
            return Err(Error::InvalidInput(format!(
                "{a:?} is not admissible for {instance}: need a(h) + a(-h) = {}",
                instance.half_sum()
            )));
        }
        let profile = Self { instance, a };
        if profile.a.iter().sum::<u64>() != instance.g {
            return Err(Error::Internal(format!(
                "admissible profile {:?} does not sum to g = {}",
                profile.a, instance.g
            )));
        }
        Ok(profile)
    }

    pub(crate) fn new_unchecked(instance: ProblemInstance, a: Vec<u64>) -> Self {
        Self { instance, a }
    }

    pub fn instance(&self) -> &ProblemInstance {
        &self.instance
    }

    pub fn values(&self) -> &[u64] {
        &self.a
    }

    pub fn at_residue(&self, v: u32) -> u64 {
        self.a[v as usize - 1]
    }

    pub fn to_gfun(&self) -> GFun {
        GFun::new(
            self.instance.p,
            self.a.iter().map(|&x| int(x as i64)).collect(),
        )
        .expect("profile length matches its prime")
    }
}

#[derive(Serialize)]
struct ProfileWire<'a> {
    p: u32,
    g: u64,
    a: &'a [u64],
}

impl Serialize for MultiplicityProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileWire {
            p: self.instance.p,
            g: self.instance.g,
            a: &self.a,
        }
        .serialize(s)
    }
}

pub fn is_admissible(a: &GFun, instance: &ProblemInstance) -> bool {
    if a.prime() != instance.p {
        return false;
    }
    let target = int(instance.half_sum() as i64);
    let values = a.values();
    values.iter().all(|x| x.is_integer() && !x.is_negative())
        && values
            .iter()
            .zip(values.iter().rev())
            .all(|(x, y)| x + y == target)
}

/// Number of admissible profiles, `(2g/(p-1) + 1)^((p-1)/2)`.
pub fn admissible_count(instance: &ProblemInstance) -> u128 {
    (instance.half_sum() as u128 + 1).pow((instance.p - 1) / 2)
}

/// All admissible profiles, in lexicographic order of `(a(1), ..., a((p-1)/2))`.
pub fn enumerate_admissible(instance: &ProblemInstance) -> Vec<MultiplicityProfile> {
    let half = (instance.p as usize - 1) / 2;
    let top = instance.half_sum();
    let mut out = Vec::new();
    let mut prefix = vec![0u64; half];
    loop {
        let mut a = prefix.clone();
        a.extend(prefix.iter().rev().map(|x| top - x));
        out.push(MultiplicityProfile::new_unchecked(*instance, a));

        // Odometer step, last position fastest.
        let mut i = half;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if prefix[i] < top {
                prefix[i] += 1;
                prefix[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
    }
}
