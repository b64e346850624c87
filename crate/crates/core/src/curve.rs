//! Superelliptic models `y^p = prod_h f_h(x)^{j(h^-1)}` realizing a branch
//! profile.
//!
//! The model is symbolic: it records each root `alpha` of `f_b`, the class
//! `h` whose factor `f_h` it belongs to, and its exponent `j(h^-1)`. Every
//! root is a branch point of `x: C -> P^1` and lies under exactly one fixed
//! point of `(x, y) -> (x, zeta y)`. Since the total degree is divisible by
//! `p`, infinity is not a branch point.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::admissible::{MultiplicityProfile, ProblemInstance};
use crate::error::{Error, Result};
use crate::exact_arith::{format_rational, int, Rational};
use crate::group_fun::UnitModP;
use crate::realizability::BranchProfile;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchPoint {
    pub alpha: Rational,
    pub class: UnitModP,
    /// Multiplicity of `alpha` as a root of `f_b`, equal to `j(class^-1)`.
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveModel {
    instance: ProblemInstance,
    branch_points: Vec<BranchPoint>,
    f_degree: u64,
    genus: u64,
    fixed_point_count: u64,
}

/// Local data at a fixed point `P` over a branch point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedPointRecord {
    /// Index into [`CurveModel::branch_points`].
    pub point: usize,
    /// The automorphism acts on `T_P C` by `zeta^epsilon_exponent`.
    pub epsilon_exponent: u32,
    /// `ord_P(y)`.
    pub ord_y: u32,
}

pub fn build_curve(b: &BranchProfile, alphas: Option<&[Rational]>) -> Result<CurveModel> {
    let inst = *b.instance();
    let p = inst.p();
    let s = inst.fixed_point_count();
    // Re-validate; the profile may have been built for a different instance.
    let b = BranchProfile::new(inst, b.values().to_vec())?;

    let alphas: Vec<Rational> = match alphas {
        Some(xs) => {
            if xs.len() as u64 != s {
                return Err(Error::InvalidInput(format!(
                    "expected {s} branch points, got {}",
                    xs.len()
                )));
            }
            let mut seen = HashSet::new();
            if let Some(dup) = xs.iter().find(|x| !seen.insert(*x)) {
                return Err(Error::InvalidInput(format!(
                    "branch point {dup} is repeated"
                )));
            }
            xs.to_vec()
        }
        None => (1..=s as i64).map(int).collect(),
    };

    let mut alpha_iter = alphas.into_iter();
    let mut branch_points = Vec::with_capacity(s as usize);
    for h in UnitModP::all(p) {
        let exponent = h.inv().j();
        for _ in 0..b.at(h) {
            let alpha = alpha_iter.next().expect("alpha count checked above");
            branch_points.push(BranchPoint {
                alpha,
                class: h,
                exponent,
            });
        }
    }

    let f_degree: u64 = branch_points.iter().map(|x| x.exponent as u64).sum();
    let genus = (s - 2) * (p as u64 - 1) / 2;
    let curve = CurveModel {
        instance: inst,
        branch_points,
        f_degree,
        genus,
        fixed_point_count: s,
    };
    curve.check_invariants()?;
    Ok(curve)
}

impl CurveModel {
    pub fn instance(&self) -> &ProblemInstance {
        &self.instance
    }

    pub fn prime(&self) -> u32 {
        self.instance.p()
    }

    pub fn branch_points(&self) -> &[BranchPoint] {
        &self.branch_points
    }

    pub fn f_degree(&self) -> u64 {
        self.f_degree
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn fixed_point_count(&self) -> u64 {
        self.fixed_point_count
    }

    /// Number of branch points in each class, which reproduces `b`.
    pub fn class_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.prime() as usize - 1];
        for bp in &self.branch_points {
            sizes[bp.class.index()] += 1;
        }
        sizes
    }

    fn check_invariants(&self) -> Result<()> {
        let p = self.prime() as u64;
        let fail = |msg: String| Err(Error::Internal(msg));
        if !self.f_degree.is_multiple_of(p) {
            return fail(format!("deg f = {} is not divisible by {p}", self.f_degree));
        }
        if self.genus != self.instance.g() {
            return fail(format!(
                "genus {} differs from g = {}",
                self.genus,
                self.instance.g()
            ));
        }
        // Riemann-Hurwitz for a degree-p cover of P^1 with F total ramification points.
        let lhs = 2 * self.genus as i64 - 2;
        let rhs = -2 * p as i64 + (p as i64 - 1) * self.fixed_point_count as i64;
        if lhs != rhs {
            return fail(format!("Riemann-Hurwitz fails: {lhs} != {rhs}"));
        }
        if self.branch_points.len() as u64 != self.fixed_point_count {
            return fail("branch point count differs from fixed point count".into());
        }
        for bp in &self.branch_points {
            if (bp.exponent as u64).is_multiple_of(p) || bp.exponent != bp.class.inv().j() {
                return fail(format!(
                    "bad exponent {} for class {}",
                    bp.exponent, bp.class
                ));
            }
        }
        Ok(())
    }

    /// The defining equation, e.g. `y^3 = (x - 1)(x - 2)(x - 3)^2(x - 4)^2`.
    pub fn equation(&self) -> String {
        let mut out = format!("y^{} =", self.prime());
        for bp in &self.branch_points {
            let a = &bp.alpha;
            let factor = if a.is_zero() {
                "x".to_string()
            } else if a.is_negative() {
                format!("(x + {})", -a)
            } else {
                format!("(x - {a})")
            };
            out.push(' ');
            out.push_str(&factor);
            if bp.exponent > 1 {
                let _ = write!(out, "^{}", bp.exponent);
            }
        }
        out
    }
}

pub fn fixed_points(c: &CurveModel) -> Vec<FixedPointRecord> {
    c.branch_points
        .iter()
        .enumerate()
        .map(|(i, bp)| FixedPointRecord {
            point: i,
            epsilon_exponent: bp.class.j(),
            ord_y: bp.class.inv().j(),
        })
        .collect()
}

/// Eigenspace dimensions on holomorphic differentials, counted straight from
/// the branch data:
///
/// ```text
/// a(k) = -1 + sum_P frac(-k e_P / p)
/// ```
///
/// where `e_P` is the root multiplicity at `P`. This does not go through the
/// convolution formula and serves as an independent check of it.
pub fn differential_multiplicities(c: &CurveModel) -> Result<MultiplicityProfile> {
    let p = c.prime() as i64;
    let a = (1..p)
        .map(|k| {
            let numer: i64 = c
                .branch_points
                .iter()
                .map(|bp| (-k * bp.exponent as i64).rem_euclid(p))
                .sum();
            if numer % p != 0 {
                return Err(Error::Internal(format!(
                    "eigenspace count for k = {k} is not an integer: {numer}/{p} - 1"
                )));
            }
            let value = numer / p - 1;
            u64::try_from(value).map_err(|_| {
                Error::Internal(format!("negative eigenspace count {value} for k = {k}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    MultiplicityProfile::new(c.instance, a)
        .map_err(|e| Error::Internal(format!("differential count not admissible: {e}")))
}

#[derive(Serialize)]
struct BranchWire {
    alpha: String,
    h: u32,
    e: u32,
}

#[derive(Serialize)]
struct CurveWire {
    p: u32,
    g: u64,
    branch: Vec<BranchWire>,
    f_degree: u64,
    genus: u64,
    fixed_points: u64,
}

impl Serialize for CurveModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveWire {
            p: self.prime(),
            g: self.instance.g(),
            branch: self
                .branch_points
                .iter()
                .map(|bp| BranchWire {
                    alpha: format_rational(&bp.alpha),
                    h: bp.class.residue(),
                    e: bp.exponent,
                })
                .collect(),
            f_degree: self.f_degree,
            genus: self.genus,
            fixed_points: self.fixed_point_count,
        }
        .serialize(s)
    }
}
