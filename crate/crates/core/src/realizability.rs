//! Which admissible profiles can come from a curve automorphism.
//!
//! A curve automorphism of order `p` with `b(h)` fixed points of tangent
//! eigenvalue `zeta^h` acts on holomorphic differentials with multiplicities
//!
//! ```text
//! a(v) = (p-1)/p * (b * j)(-v) - 1 = (1/p) sum_u b(u) j(u^-1 (-v)) - 1.
//! ```
//!
//! Inverting this for nonnegative integer `b` decides whether `a` is
//! compatible with a Jacobian. An empty witness list certifies that no
//! Jacobian carries an automorphism with profile `a`.
//!
//! [`solve_b`] solves the linear system exactly and enumerates lattice points
//! of the solution set; [`brute_force_b`] scans every composition of the
//! fixed-point count and is kept as an independent oracle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::admissible::{enumerate_admissible, MultiplicityProfile, ProblemInstance};
use crate::error::{Error, Result};
use crate::exact_arith::{int, Rational};
use crate::group_fun::{kernel_basis, odd_part, GFun, UnitModP};
use crate::linalg::{bareiss, clear_denominators, Matrix};

/// Fixed-point counts per tangent class: `b[h - 1]` points have eigenvalue
/// `zeta^h`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchProfile {
    instance: ProblemInstance,
    b: Vec<u64>,
}

/// `sum_h c(h) j(h^-1)`, the degree of `prod_h f_h^{j(h^-1)}`.
pub fn weighted_degree(p: u32, counts: &[u64]) -> u64 {
    UnitModP::all(p)
        .map(|h| counts[h.index()] * h.inv().j() as u64)
        .sum()
}

impl BranchProfile {
    pub fn new(instance: ProblemInstance, b: Vec<u64>) -> Result<Self> {
        let p = instance.p();
        if b.len() != p as usize - 1 {
            return Err(Error::InvalidInput(format!(
                "branch profile for p = {p} needs {} entries, got {}",
                p - 1,
                b.len()
            )));
        }
        let total: u64 = b.iter().sum();
        if total != instance.fixed_point_count() {
            return Err(Error::InvalidInput(format!(
                "branch profile {b:?} has {total} points; {instance} needs 2g/(p-1) + 2 = {}",
                instance.fixed_point_count()
            )));
        }
        let deg = weighted_degree(p, &b);
        if !deg.is_multiple_of(p as u64) {
            return Err(Error::InvalidInput(format!(
                "branch profile {b:?}: sum b(h) j(h^-1) = {deg} is not divisible by {p}"
            )));
        }
        Ok(Self { instance, b })
    }

    /// Infers `g` from the number of points.
    pub fn from_counts(p: u32, b: Vec<u64>) -> Result<Self> {
        let s = b.iter().sum();
        Self::new(ProblemInstance::from_fixed_point_count(p, s)?, b)
    }

    pub fn instance(&self) -> &ProblemInstance {
        &self.instance
    }

    pub fn values(&self) -> &[u64] {
        &self.b
    }

    pub fn at(&self, h: UnitModP) -> u64 {
        self.b[h.index()]
    }

    pub fn to_gfun(&self) -> GFun {
        GFun::new(
            self.instance.p(),
            self.b.iter().map(|&x| int(x as i64)).collect(),
        )
        .expect("profile length matches its prime")
    }
}

impl Serialize for BranchProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.b.serialize(s)
    }
}

/// `table[v-1][u-1] = j(u^-1 (-v))`: the integer system behind `a_from_b`.
fn a_system(p: u32) -> Vec<Vec<u64>> {
    UnitModP::all(p)
        .map(|v| {
            UnitModP::all(p)
                .map(|u| (u.inv() * -v).j() as u64)
                .collect()
        })
        .collect()
}

/// Evaluates `a(v) = (1/p) sum_u b(u) j(u^-1 (-v)) - 1` on raw counts.
///
/// Errors when some inner sum is not divisible by `p`.
pub fn a_from_counts(p: u32, counts: &[u64]) -> Result<Vec<i64>> {
    a_from_counts_with(&a_system(p), p, counts)
}

fn a_from_counts_with(table: &[Vec<u64>], p: u32, counts: &[u64]) -> Result<Vec<i64>> {
    table
        .iter()
        .enumerate()
        .map(|(v, row)| {
            let s: u64 = row.iter().zip(counts).map(|(m, b)| m * b).sum();
            if !s.is_multiple_of(p as u64) {
                return Err(Error::NonIntegral(format!(
                    "sum_u b(u) j(u^-1 (-{})) = {s} is not divisible by {p}; \
                     sum b(h) j(h^-1) must be divisible by p",
                    v + 1
                )));
            }
            Ok((s / p as u64) as i64 - 1)
        })
        .collect()
}

/// The multiplicity profile forced by a branch profile.
pub fn a_from_b(b: &BranchProfile) -> Result<MultiplicityProfile> {
    let a = a_from_counts(b.instance.p(), &b.b)?;
    if let Some(x) = a.iter().find(|&&x| x < 0) {
        return Err(Error::Internal(format!(
            "branch profile {:?} produced negative multiplicity {x}",
            b.b
        )));
    }
    MultiplicityProfile::new(b.instance, a.into_iter().map(|x| x as u64).collect())
        .map_err(|e| Error::Internal(format!("a_from_b output not admissible: {e}")))
}

/// Calls `f` on every composition of `total` into `parts` nonnegative parts,
/// in lexicographic order.
pub(crate) fn for_each_composition(parts: usize, total: u64, mut f: impl FnMut(&[u64])) {
    fn rec(buf: &mut Vec<u64>, parts: usize, left: u64, f: &mut impl FnMut(&[u64])) {
        if buf.len() + 1 == parts {
            buf.push(left);
            f(buf);
            buf.pop();
            return;
        }
        for x in 0..=left {
            buf.push(x);
            rec(buf, parts, left - x, f);
            buf.pop();
        }
    }
    if parts == 0 {
        return;
    }
    rec(&mut Vec::with_capacity(parts), parts, total, &mut f);
}

/// Every branch profile with `a_from_b(b) = a`, found by scanning all
/// compositions of the fixed-point count. Lexicographic order.
pub fn brute_force_b(a: &MultiplicityProfile) -> Vec<BranchProfile> {
    let inst = *a.instance();
    let p = inst.p();
    let table = a_system(p);
    let target: Vec<i64> = a.values().iter().map(|&x| x as i64).collect();
    let mut out = Vec::new();
    for_each_composition(p as usize - 1, inst.fixed_point_count(), |b| {
        if !weighted_degree(p, b).is_multiple_of(p as u64) {
            return;
        }
        if let Ok(got) = a_from_counts_with(&table, p, b) {
            if got == target {
                out.push(BranchProfile {
                    instance: inst,
                    b: b.to_vec(),
                });
            }
        }
    });
    out
}

/// Every branch profile with `a_from_b(b) = a`, by exact linear algebra.
///
/// The system `sum_u j(u^-1 (-v)) b(u) = p (a(v) + 1)` is solved for a
/// particular rational solution; integer solutions are then the particular
/// solution plus kernel combinations whose coefficients are the values of
/// `b` at the free columns. Those are scanned over `[0, S]`. The kernel is
/// even and mean-zero, of dimension `(p-3)/2`.
pub fn solve_b(a: &MultiplicityProfile) -> Result<Vec<BranchProfile>> {
    let inst = *a.instance();
    let p = inst.p();
    let n = p as usize - 1;
    let s = inst.fixed_point_count();

    let table = a_system(p);
    let system: Matrix = table
        .iter()
        .map(|row| row.iter().map(|&x| int(x as i64)).collect())
        .collect();
    let augmented: Vec<Vec<BigInt>> = clear_denominators(&system)
        .into_iter()
        .zip(a.values())
        .map(|(mut row, &av)| {
            row.push(BigInt::from(p as u64 * (av + 1)));
            row
        })
        .collect();

    let ech = bareiss(augmented, n);
    let rank = ech.pivots.len();
    if ech.rows[rank..].iter().any(|row| !row[n].is_zero()) {
        return Ok(Vec::new());
    }
    let zeros = vec![Rational::zero(); n];
    let particular = ech.back_substitute(n, &zeros, Some(n));

    let kernel = kernel_basis(&system);
    let free = ech.free_columns(n);
    if free.len() != kernel.len() {
        return Err(Error::Internal(format!(
            "kernel dimension {} disagrees with {} free columns",
            kernel.len(),
            free.len()
        )));
    }

    let mut out = Vec::new();
    let mut coeffs = vec![0u64; kernel.len()];
    loop {
        // Free coordinates are entries of b, so their total cannot exceed S.
        if coeffs.iter().sum::<u64>() <= s {
            let mut b = particular.clone();
            for (t, k) in coeffs.iter().zip(&kernel) {
                if *t != 0 {
                    let t = int(*t as i64);
                    for (x, kx) in b.iter_mut().zip(k) {
                        *x += &t * kx;
                    }
                }
            }
            if let Some(counts) = lattice_point_in_box(&b, s) {
                let bp = BranchProfile::new(inst, counts).map_err(|e| {
                    Error::Internal(format!("solver produced invalid profile: {e}"))
                })?;
                out.push(bp);
            }
        }

        let mut i = coeffs.len();
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            if coeffs[i] < s {
                coeffs[i] += 1;
                coeffs[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
    }
}

fn lattice_point_in_box(x: &[Rational], s: u64) -> Option<Vec<u64>> {
    x.iter()
        .map(|v| {
            if !v.is_integer() {
                return None;
            }
            v.to_integer().to_u64().filter(|&c| c <= s)
        })
        .collect()
}

/// Classification of one admissible profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizabilityVerdict {
    profile: MultiplicityProfile,
    witnesses: Vec<BranchProfile>,
    jacobian_compatible: bool,
}

impl RealizabilityVerdict {
    pub fn new(profile: MultiplicityProfile, witnesses: Vec<BranchProfile>) -> Result<Self> {
        for w in &witnesses {
            if a_from_b(w)? != profile {
                return Err(Error::Internal(format!(
                    "witness {:?} does not reproduce {:?}",
                    w.values(),
                    profile.values()
                )));
            }
        }
        let jacobian_compatible = !witnesses.is_empty();
        Ok(Self {
            profile,
            witnesses,
            jacobian_compatible,
        })
    }

    pub fn profile(&self) -> &MultiplicityProfile {
        &self.profile
    }

    pub fn witnesses(&self) -> &[BranchProfile] {
        &self.witnesses
    }

    pub fn is_jacobian_compatible(&self) -> bool {
        self.jacobian_compatible
    }
}

#[derive(Serialize)]
struct VerdictWire<'a> {
    a: &'a [u64],
    jacobian_compatible: bool,
    witnesses: &'a [BranchProfile],
}

impl Serialize for RealizabilityVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VerdictWire {
            a: self.profile.values(),
            jacobian_compatible: self.jacobian_compatible,
            witnesses: &self.witnesses,
        }
        .serialize(s)
    }
}

pub fn classify(instance: &ProblemInstance) -> Result<Vec<RealizabilityVerdict>> {
    enumerate_admissible(instance)
        .into_iter()
        .map(|a| {
            let w = solve_b(&a)?;
            RealizabilityVerdict::new(a, w)
        })
        .collect()
}

/// True iff every solution of `a_from_b(b) = a` has the same odd part.
pub fn odd_uniqueness_check(a: &MultiplicityProfile) -> Result<bool> {
    let sols = solve_b(a)?;
    let mut parts = sols.iter().map(|b| odd_part(&b.to_gfun()));
    let Some(first) = parts.next() else {
        return Ok(true);
    };
    Ok(parts.all(|x| x == first))
}

/// Whether `sum_h c(h) j(h^-1)` is divisible by `p`.
///
/// Also checks that this single condition agrees with divisibility of
/// `sum_h c(h) j(v h^-1)` at every `v`, and reports an internal error if it
/// ever does not.
pub fn divisibility_propagates(c: &GFun) -> Result<bool> {
    let p = c.prime();
    let vals = c
        .to_integers()
        .ok_or_else(|| Error::InvalidInput("divisibility check needs integer values".into()))?;
    let pb = BigInt::from(p);
    let divisible_at = |v: UnitModP| -> bool {
        let s: BigInt = UnitModP::all(p)
            .map(|h| &vals[h.index()] * BigInt::from((v * h.inv()).j()))
            .sum();
        s.is_multiple_of(&pb)
    };
    let at_one = divisible_at(UnitModP::new_unchecked(p, 1));
    let everywhere = UnitModP::all(p).all(divisible_at);
    if at_one != everywhere {
        return Err(Error::Internal(format!(
            "divisibility at v = 1 ({at_one}) differs from divisibility at all v ({everywhere}) for {:?}",
            vals
        )));
    }
    Ok(at_one)
}
