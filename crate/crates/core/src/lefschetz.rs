//! Exact checks of the holomorphic Lefschetz fixed-point identity
//!
//! ```text
//! 1 - conj(tau) = sum_{P fixed} 1 / (1 - eps_P)
//! ```
//!
//! in Q(zeta_p), where `tau = sum_h a(h) zeta^h` is the trace of the
//! automorphism on holomorphic differentials.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::admissible::MultiplicityProfile;
use crate::curve::{differential_multiplicities, fixed_points, CurveModel};
use crate::error::{Error, Result};
use crate::exact_arith::{
    int, inv_one_minus_zeta, rat, rational_strings, zeta_pow, CyclotomicNumber,
};
use crate::group_fun::{convolve, j0_fun, j_fun, negate_arg};
use crate::realizability::{a_from_b, BranchProfile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzReport {
    pub tau: CyclotomicNumber,
    pub lhs: CyclotomicNumber,
    pub rhs: CyclotomicNumber,
    pub holds: bool,
}

impl Serialize for LefschetzReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LefschetzReport", 4)?;
        s.serialize_field("tau", &rational_strings(self.tau.coords()))?;
        s.serialize_field("lhs", &rational_strings(self.lhs.coords()))?;
        s.serialize_field("rhs", &rational_strings(self.rhs.coords()))?;
        s.serialize_field("holds", &self.holds)?;
        s.end()
    }
}

/// Where the differential multiplicities for `tau` come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TauSource {
    /// Count from branch data; independent of the convolution formula.
    #[default]
    Differentials,
    /// Use `a_from_b` on the curve's class sizes.
    Convolution,
}

pub fn trace_tau(a: &MultiplicityProfile) -> CyclotomicNumber {
    let p = a.instance().p();
    let coords = a.values().iter().map(|&x| int(x as i64)).collect();
    CyclotomicNumber::from_coords(p, coords).expect("profile length matches its prime")
}

pub fn lefschetz_check(c: &CurveModel) -> Result<LefschetzReport> {
    lefschetz_check_with(c, TauSource::Differentials)
}

pub fn lefschetz_check_with(c: &CurveModel, source: TauSource) -> Result<LefschetzReport> {
    let p = c.prime();
    let a = match source {
        TauSource::Differentials => differential_multiplicities(c)?,
        TauSource::Convolution => a_from_b(&BranchProfile::new(*c.instance(), c.class_sizes())?)?,
    };
    let tau = trace_tau(&a);
    let lhs = CyclotomicNumber::one(p)?.try_sub(&tau.conj())?;

    let mut rhs = CyclotomicNumber::zero(p)?;
    let mut counts = vec![0i64; p as usize];
    for fp in fixed_points(c) {
        counts[fp.epsilon_exponent as usize] += 1;
    }
    for (u, &n) in counts.iter().enumerate().skip(1) {
        if n > 0 {
            let term = inv_one_minus_zeta(p as i64, u as i64)?.scale(&int(n));
            rhs = rhs.try_add(&term)?;
        }
    }
    let holds = lhs == rhs;
    Ok(LefschetzReport {
        tau,
        lhs,
        rhs,
        holds,
    })
}

/// The same identity with denominators cleared:
/// `(1 - conj(tau)) prod_P (1 - eps_P) = sum_P prod_{Q != P} (1 - eps_Q)`.
///
/// Uses only ring operations, so it does not depend on the closed form for
/// `1 / (1 - zeta^u)`.
pub fn lefschetz_check_cleared(c: &CurveModel) -> Result<bool> {
    let p = c.prime();
    let one = CyclotomicNumber::one(p)?;
    let tau = trace_tau(&differential_multiplicities(c)?);
    let lhs0 = one.try_sub(&tau.conj())?;

    let factors: Vec<CyclotomicNumber> = fixed_points(c)
        .iter()
        .map(|fp| one.try_sub(&zeta_pow(p as i64, fp.epsilon_exponent as i64)?))
        .collect::<Result<_>>()?;

    let mut all = one.clone();
    for f in &factors {
        all = all.try_mul(f)?;
    }
    let lhs = lhs0.try_mul(&all)?;

    let mut rhs = CyclotomicNumber::zero(p)?;
    for skip in 0..factors.len() {
        let mut prod = one.clone();
        for (i, f) in factors.iter().enumerate() {
            if i != skip {
                prod = prod.try_mul(f)?;
            }
        }
        rhs = rhs.try_add(&prod)?;
    }
    Ok(lhs == rhs)
}

/// Checks that three closed forms for `a` agree with [`a_from_b`]:
///
/// * `(p-1)/p (b * j)(-v) - 1`
/// * `(p-1)/p (b * j0)(-v) + g/(p-1)`
/// * `2g/(p-1) - (p-1)/p (b * j)(v) + 1`
pub fn identity_suite(b: &BranchProfile) -> Result<bool> {
    let inst = b.instance();
    let p = inst.p();
    let pi = p as i64;
    let g = inst.g() as i64;
    let factor = rat(pi - 1, pi);
    let bf = b.to_gfun();

    let bj = convolve(&bf, &j_fun(p)?)?;
    let bj0 = convolve(&bf, &j0_fun(p)?)?;

    let via_j = negate_arg(&bj).map(|x| x * &factor - int(1));
    let via_j0 = negate_arg(&bj0).map(|x| x * &factor + rat(g, pi - 1));
    let via_odd = bj.map(|x| rat(2 * g, pi - 1) - x * &factor + int(1));

    let reference = a_from_b(b)?.to_gfun();
    if reference.prime() != p {
        return Err(Error::Internal("prime mismatch in identity suite".into()));
    }
    Ok(via_j == reference && via_j0 == reference && via_odd == reference)
}
