//! Exhaustive checks over all branch profiles and admissible profiles of an
//! instance.

use num_traits::Zero;
use serde::Serialize;

use crate::admissible::{admissible_count, enumerate_admissible, ProblemInstance};
use crate::curve::{build_curve, differential_multiplicities, fixed_points};
use crate::error::Result;
use crate::exact_arith::{int, Rational};
use crate::group_fun::{conv_by_j_matrix, kernel_basis, negate_arg};
use crate::lefschetz::{identity_suite, lefschetz_check, lefschetz_check_cleared};
use crate::realizability::{
    a_from_b, brute_force_b, divisibility_propagates, for_each_composition, odd_uniqueness_check,
    solve_b, BranchProfile,
};

/// Every valid branch profile of `instance`, in lexicographic order.
pub fn branch_profiles(instance: &ProblemInstance) -> Vec<BranchProfile> {
    let mut out = Vec::new();
    for_each_composition(
        instance.p() as usize - 1,
        instance.fixed_point_count(),
        |b| {
            if let Ok(bp) = BranchProfile::new(*instance, b.to_vec()) {
                out.push(bp);
            }
        },
    );
    out
}

/// Dimension and shape of the kernel of convolution by `j`: returns the
/// dimension if every basis vector is even and mean-zero.
pub fn kernel_structure(p: u32) -> Result<Option<usize>> {
    let basis = kernel_basis(&conv_by_j_matrix(p)?);
    let ok = basis.iter().all(|k| {
        let mut rev = k.clone();
        rev.reverse();
        rev == *k && k.iter().sum::<Rational>().is_zero()
    });
    Ok(ok.then_some(basis.len()))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationSummary {
    pub p: u32,
    pub g: u64,
    pub admissible_profiles: usize,
    pub compatible_profiles: usize,
    pub branch_profiles: usize,
    pub kernel_dimension: Option<usize>,
    pub failures: Vec<String>,
}

impl VerificationSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every check available for one instance and collects failures.
pub fn verify_instance(instance: &ProblemInstance) -> Result<VerificationSummary> {
    let p = instance.p();
    let mut s = VerificationSummary {
        p,
        g: instance.g(),
        ..Default::default()
    };

    s.kernel_dimension = kernel_structure(p)?;
    if s.kernel_dimension != Some((p as usize - 3) / 2) {
        s.failures.push(format!(
            "kernel of convolution by j: expected even mean-zero basis of size {}, got {:?}",
            (p - 3) / 2,
            s.kernel_dimension
        ));
    }

    let profiles = enumerate_admissible(instance);
    s.admissible_profiles = profiles.len();
    if profiles.len() as u128 != admissible_count(instance) {
        s.failures.push(format!(
            "enumerated {} admissible profiles, expected {}",
            profiles.len(),
            admissible_count(instance)
        ));
    }
    for a in &profiles {
        let solved = solve_b(a)?;
        if !solved.is_empty() {
            s.compatible_profiles += 1;
        }
        if solved != brute_force_b(a) {
            s.failures.push(format!(
                "a = {:?}: solver and brute force disagree",
                a.values()
            ));
        }
        if !odd_uniqueness_check(a)? {
            s.failures.push(format!(
                "a = {:?}: witnesses differ in odd part",
                a.values()
            ));
        }
    }

    let branches = branch_profiles(instance);
    s.branch_profiles = branches.len();
    for b in &branches {
        let tag = format!("b = {:?}", b.values());
        let a = a_from_b(b)?;
        if !solve_b(&a)?.contains(b) {
            s.failures
                .push(format!("{tag}: missing from solve_b(a_from_b(b))"));
        }
        let target = int(instance.half_sum() as i64);
        let af = a.to_gfun();
        let mirrored = negate_arg(&af);
        if af
            .values()
            .iter()
            .zip(mirrored.values())
            .any(|(x, y)| x + y != target)
        {
            s.failures.push(format!("{tag}: a(v) + a(-v) != 2g/(p-1)"));
        }
        if !identity_suite(b)? {
            s.failures
                .push(format!("{tag}: closed forms for a disagree"));
        }
        divisibility_propagates(&b.to_gfun())?;

        let c = build_curve(b, None)?;
        if c.genus() != instance.g()
            || c.f_degree() % p as u64 != 0
            || c.fixed_point_count() != instance.fixed_point_count()
            || c.class_sizes() != b.values()
            || fixed_points(&c).len() as u64 != c.fixed_point_count()
        {
            s.failures.push(format!("{tag}: curve geometry mismatch"));
        }
        if differential_multiplicities(&c)? != a {
            s.failures
                .push(format!("{tag}: differential count differs from a_from_b"));
        }
        if !lefschetz_check(&c)?.holds {
            s.failures.push(format!("{tag}: Lefschetz identity fails"));
        }
        if !lefschetz_check_cleared(&c)? {
            s.failures
                .push(format!("{tag}: cleared Lefschetz identity fails"));
        }
    }
    Ok(s)
}
