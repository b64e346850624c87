//! Exact classification of the eigenvalue-multiplicity profiles of an
//! order-`p` automorphism on a principally polarized abelian variety that
//! are compatible with the variety being a Jacobian.
//!
//! * [`admissible`]: instances `(p, g)` and admissible profiles `a`.
//! * [`realizability`]: solving `a = (p-1)/p (b * j)(-v) - 1` for branch
//!   profiles `b`, with a brute-force oracle.
//! * [`curve`]: superelliptic models `y^p = f_b(x)` realizing a `b`.
//! * [`lefschetz`]: exact holomorphic Lefschetz checks in Q(zeta_p).
//! * [`catalog`]: reports and the closed-form `p = 3` catalog.
//! * [`sweep`]: the full invariant suite for one instance.

pub mod admissible;
pub mod catalog;
pub mod curve;
pub mod error;
pub mod exact_arith;
pub mod group_fun;
pub mod lefschetz;
pub mod linalg;
pub mod realizability;
pub mod sweep;

pub use admissible::{
    enumerate_admissible, is_admissible, validate_instance, MultiplicityProfile, ProblemInstance,
};
pub use catalog::{cross_check_p3, full_report, p3_catalog, ClassificationReport, P3CatalogRow};
pub use curve::{build_curve, differential_multiplicities, fixed_points, CurveModel};
pub use error::{Error, Result};
pub use exact_arith::{inv_one_minus_zeta, zeta_pow, CyclotomicNumber, Rational};
pub use group_fun::{
    conv_by_j_matrix, convolve, even_part, j0_fun, j_fun, kernel_basis, negate_arg, odd_part, GFun,
    UnitModP,
};
pub use lefschetz::{identity_suite, lefschetz_check, trace_tau, LefschetzReport};
pub use realizability::{
    a_from_b, brute_force_b, classify, divisibility_propagates, odd_uniqueness_check, solve_b,
    BranchProfile, RealizabilityVerdict,
};
