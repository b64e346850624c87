//! Exit criteria. Every check is exact; runtime budgets are asserted too.
//!
//! Run with `cargo test -p jacobian-profiles --test acceptance`.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use jacobian_profiles::admissible::admissible_count;
use jacobian_profiles::catalog::{cross_check_p3, full_report, p3_realizable_count};
use jacobian_profiles::lefschetz::lefschetz_check_cleared;
use jacobian_profiles::sweep::branch_profiles;
use jacobian_profiles::{
    a_from_b, brute_force_b, build_curve, classify, conv_by_j_matrix, differential_multiplicities,
    divisibility_propagates, enumerate_admissible, fixed_points, identity_suite, kernel_basis,
    lefschetz_check, odd_part, solve_b, validate_instance, BranchProfile, ProblemInstance,
    Rational,
};
use num_traits::Zero;

const SMALL_PRIMES: [u32; 3] = [3, 5, 7];
const CURVE_PRIMES: [u32; 5] = [3, 5, 7, 11, 13];
const MAX_POINTS: u64 = 10;

type Outcome = Result<String, String>;

/// Instances with fixed-point count `S = 2g/(p-1) + 2` in `3..=MAX_POINTS`.
fn sweep_instances(primes: &[u32]) -> Vec<ProblemInstance> {
    primes
        .iter()
        .flat_map(|&p| {
            (3..=MAX_POINTS)
                .map(move |s| ProblemInstance::from_fixed_point_count(p, s).expect("valid"))
        })
        .collect()
}

fn sweep_branches(primes: &[u32]) -> Vec<BranchProfile> {
    sweep_instances(primes)
        .iter()
        .flat_map(branch_profiles)
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_admissible_counts() -> Outcome {
    let mut n = 0;
    for &p in &CURVE_PRIMES {
        for g in 1..=30i64 {
            let Ok(inst) = validate_instance(p as i64, g) else {
                continue;
            };
            let expected = (inst.half_sum() as u128 + 1).pow((p - 1) / 2);
            let got = enumerate_admissible(&inst).len() as u128;
            ensure(
                got == expected && admissible_count(&inst) == expected,
                || format!("p={p} g={g}: enumerated {got}, formula {expected}"),
            )?;
            n += 1;
        }
    }
    Ok(format!("{n} instances"))
}

fn c2_p3_catalog() -> Outcome {
    ensure(cross_check_p3(50).map_err(|e| e.to_string())?, || {
        "closed-form catalog disagrees with solver".into()
    })?;
    for g in 1..=50u64 {
        let r = full_report(&validate_instance(3, g as i64).unwrap(), false)
            .map_err(|e| e.to_string())?;
        let closed = match g % 3 {
            1 => (g + 5) / 3,
            2 => (g + 1) / 3,
            _ => (g + 3) / 3,
        };
        ensure(
            r.realizable_count as u64 == closed && p3_realizable_count(g) == closed,
            || {
                format!(
                    "g={g}: {} realizable, closed form {closed}",
                    r.realizable_count
                )
            },
        )?;
    }
    Ok("g = 1..=50".into())
}

fn c3_non_jacobian_certificates() -> Outcome {
    let verdicts = classify(&validate_instance(3, 2).unwrap()).map_err(|e| e.to_string())?;
    let table: BTreeMap<Vec<u64>, Vec<Vec<u64>>> = verdicts
        .iter()
        .map(|v| {
            (
                v.profile().values().to_vec(),
                v.witnesses().iter().map(|w| w.values().to_vec()).collect(),
            )
        })
        .collect();
    let expected: BTreeMap<Vec<u64>, Vec<Vec<u64>>> = [
        (vec![0, 2], vec![]),
        (vec![1, 1], vec![vec![2, 2]]),
        (vec![2, 0], vec![]),
    ]
    .into_iter()
    .collect();
    ensure(table == expected, || format!("got {table:?}"))?;
    ensure(
        verdicts
            .iter()
            .filter(|v| !v.is_jacobian_compatible())
            .count()
            == 2,
        || "expected two certificates".into(),
    )?;
    Ok("(2,0) and (0,2) have no witness; (1,1) <- (2,2)".into())
}

fn c4_oracle_equivalence() -> Outcome {
    let mut n = 0;
    for inst in sweep_instances(&SMALL_PRIMES) {
        for a in enumerate_admissible(&inst) {
            let solved = solve_b(&a).map_err(|e| e.to_string())?;
            let brute = brute_force_b(&a);
            ensure(solved == brute, || {
                format!(
                    "{inst} a={:?}: solver {solved:?} vs brute {brute:?}",
                    a.values()
                )
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} profiles"))
}

fn c5_round_trip() -> Outcome {
    let branches = sweep_branches(&SMALL_PRIMES);
    for b in &branches {
        let a = a_from_b(b).map_err(|e| e.to_string())?;
        let sols = solve_b(&a).map_err(|e| e.to_string())?;
        ensure(sols.contains(b), || format!("b={:?} lost", b.values()))?;
    }
    Ok(format!("{} branch profiles", branches.len()))
}

fn c6_lefschetz(branches: &[BranchProfile]) -> Outcome {
    for b in branches {
        let c = build_curve(b, None).map_err(|e| e.to_string())?;
        let r = lefschetz_check(&c).map_err(|e| e.to_string())?;
        ensure(r.holds, || {
            format!(
                "p={} b={:?}: {} != {}",
                b.instance().p(),
                b.values(),
                r.lhs,
                r.rhs
            )
        })?;
    }
    // Denominator-free form on the small primes, guarding the closed-form inverse.
    for b in branches.iter().filter(|b| b.instance().p() <= 7) {
        let c = build_curve(b, None).map_err(|e| e.to_string())?;
        ensure(
            lefschetz_check_cleared(&c).map_err(|e| e.to_string())?,
            || format!("cleared identity fails for b={:?}", b.values()),
        )?;
    }
    Ok(format!("{} curves", branches.len()))
}

fn c7_differential_oracle(branches: &[BranchProfile]) -> Outcome {
    for b in branches {
        let c = build_curve(b, None).map_err(|e| e.to_string())?;
        let oracle = differential_multiplicities(&c).map_err(|e| e.to_string())?;
        let conv = a_from_b(b).map_err(|e| e.to_string())?;
        ensure(oracle == conv, || {
            format!(
                "b={:?}: {:?} vs {:?}",
                b.values(),
                oracle.values(),
                conv.values()
            )
        })?;
    }
    Ok(format!("{} curves", branches.len()))
}

fn c8_geometry(branches: &[BranchProfile]) -> Outcome {
    for b in branches {
        let inst = b.instance();
        let p = inst.p() as i64;
        let c = build_curve(b, None).map_err(|e| e.to_string())?;
        let f = c.fixed_point_count() as i64;
        let g = c.genus() as i64;
        ensure(
            c.genus() == inst.g()
                && c.f_degree() % inst.p() as u64 == 0
                && c.fixed_point_count() == inst.half_sum() + 2
                && fixed_points(&c).len() as i64 == f
                && c.class_sizes() == b.values()
                && 2 * g - 2 == -2 * p + (p - 1) * f,
            || format!("p={p} b={:?}: geometry mismatch", b.values()),
        )?;
    }
    Ok(format!("{} curves", branches.len()))
}

/// Rank by plain rational Gauss-Jordan, independent of the library's
/// fraction-free elimination.
fn oracle_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let pv = m[r][c].clone();
        let prow: Vec<Rational> = m[r].iter().map(|x| x / &pv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        m[r] = prow;
        r += 1;
    }
    r
}

fn c9_kernel_structure() -> Outcome {
    let primes = [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31];
    for &p in &primes {
        let m = conv_by_j_matrix(p).map_err(|e| e.to_string())?;
        let basis = kernel_basis(&m);
        let expected = (p as usize - 3) / 2;
        ensure(basis.len() == expected, || {
            format!("p={p}: kernel dim {} != {expected}", basis.len())
        })?;
        ensure(p as usize - 1 - oracle_rank(m.clone()) == expected, || {
            format!("p={p}: independent rank disagrees")
        })?;
        for k in &basis {
            let n = k.len();
            ensure((0..n).all(|i| k[i] == k[n - 1 - i]), || {
                format!("p={p}: odd kernel vector")
            })?;
            ensure(k.iter().sum::<Rational>().is_zero(), || {
                format!("p={p}: kernel vector with nonzero mean")
            })?;
            let image: Vec<Rational> = m
                .iter()
                .map(|row| row.iter().zip(k).map(|(a, b)| a * b).sum())
                .collect();
            ensure(image.iter().all(Zero::is_zero), || {
                format!("p={p}: not in kernel")
            })?;
        }
    }
    ensure(
        kernel_basis(&conv_by_j_matrix(3).unwrap()).is_empty(),
        || "p=3 kernel not trivial".into(),
    )?;
    Ok("odd primes 3..=31".into())
}

fn c10_odd_part_uniqueness() -> Outcome {
    let mut multi = BTreeMap::new();
    for inst in sweep_instances(&SMALL_PRIMES) {
        for a in enumerate_admissible(&inst) {
            let sols = solve_b(&a).map_err(|e| e.to_string())?;
            if sols.len() < 2 {
                continue;
            }
            *multi.entry(inst.p()).or_insert(0usize) += 1;
            let first = odd_part(&sols[0].to_gfun());
            ensure(sols.iter().all(|b| odd_part(&b.to_gfun()) == first), || {
                format!("{inst} a={:?}: witnesses differ in odd part", a.values())
            })?;
        }
    }
    ensure(multi.contains_key(&5) && multi.contains_key(&7), || {
        format!("expected multi-witness profiles at p=5 and p=7, saw {multi:?}")
    })?;
    ensure(!multi.contains_key(&3), || {
        "p=3 must have unique witnesses".into()
    })?;
    Ok(format!("multi-witness profiles per prime: {multi:?}"))
}

fn c11_identity_routes(branches: &[BranchProfile]) -> Outcome {
    for b in branches {
        ensure(identity_suite(b).map_err(|e| e.to_string())?, || {
            format!(
                "p={} b={:?}: closed forms disagree",
                b.instance().p(),
                b.values()
            )
        })?;
        ensure(
            divisibility_propagates(&b.to_gfun()).map_err(|e| e.to_string())?,
            || format!("b={:?}: valid profile reported non-divisible", b.values()),
        )?;
    }
    // Also arbitrary integer functions, most of which are not divisible.
    let mut checked = 0;
    for &p in &SMALL_PRIMES {
        for b in branch_profiles(&ProblemInstance::from_fixed_point_count(p, 5).unwrap()) {
            let mut c: Vec<i64> = b.values().iter().map(|&x| x as i64).collect();
            c[0] += 1;
            let f = jacobian_profiles::GFun::from_ints(p, &c).unwrap();
            divisibility_propagates(&f).map_err(|e| e.to_string())?;
            checked += 1;
        }
    }
    Ok(format!(
        "{} branch profiles, {checked} perturbed functions",
        branches.len()
    ))
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    budget: Option<Duration>,
}

fn main() -> ExitCode {
    let total = Instant::now();
    let curve_sweep = sweep_branches(&CURVE_PRIMES);

    let mut failures = 0;
    let mut run = |c: Criterion, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let outcome = f();
        let dt = t.elapsed();
        let over = c.budget.is_some_and(|b| dt > b);
        let (tag, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over budget {:?}", c.budget.unwrap())),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failures += 1;
        }
        println!("[{tag}] {} {} ({:.2?}): {detail}", c.id, c.name, dt);
    };

    let secs = |s| Some(Duration::from_secs(s));
    run(
        Criterion {
            id: "C1",
            name: "admissible counts",
            budget: secs(1),
        },
        &c1_admissible_counts,
    );
    run(
        Criterion {
            id: "C2",
            name: "p=3 catalog cross-check",
            budget: secs(5),
        },
        &c2_p3_catalog,
    );
    run(
        Criterion {
            id: "C3",
            name: "non-Jacobian certificates",
            budget: None,
        },
        &c3_non_jacobian_certificates,
    );
    run(
        Criterion {
            id: "C4",
            name: "solver = brute-force oracle",
            budget: secs(20),
        },
        &c4_oracle_equivalence,
    );
    run(
        Criterion {
            id: "C5",
            name: "round trip",
            budget: None,
        },
        &c5_round_trip,
    );
    run(
        Criterion {
            id: "C6",
            name: "Lefschetz identity",
            budget: secs(20),
        },
        &|| c6_lefschetz(&curve_sweep),
    );
    run(
        Criterion {
            id: "C7",
            name: "differential oracle",
            budget: None,
        },
        &|| c7_differential_oracle(&curve_sweep),
    );
    run(
        Criterion {
            id: "C8",
            name: "geometry counts",
            budget: None,
        },
        &|| c8_geometry(&curve_sweep),
    );
    run(
        Criterion {
            id: "C9",
            name: "kernel structure",
            budget: None,
        },
        &c9_kernel_structure,
    );
    run(
        Criterion {
            id: "C10",
            name: "odd-part uniqueness",
            budget: None,
        },
        &c10_odd_part_uniqueness,
    );
    run(
        Criterion {
            id: "C11",
            name: "identity routes",
            budget: None,
        },
        &|| c11_identity_routes(&curve_sweep),
    );

    let elapsed = total.elapsed();
    let over = elapsed > Duration::from_secs(60);
    println!(
        "acceptance: {} failed, total {:.2?}{}",
        failures,
        elapsed,
        if over { " (over 60 s target)" } else { "" }
    );
    if failures == 0 && !over {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
