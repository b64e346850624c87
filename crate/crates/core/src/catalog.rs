//! Classification reports and the closed-form `p = 3` catalog.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::admissible::{admissible_count, validate_instance, ProblemInstance};
use crate::curve::{build_curve, CurveModel};
use crate::error::{Error, Result};
use crate::lefschetz::lefschetz_check;
use crate::realizability::{classify, RealizabilityVerdict};

/// Attached to `p = 3` reports.
pub const P3_CM_NOTE: &str = "For p = 3 every admissible profile is realized by some principally \
polarized abelian variety: a product of copies of the CM elliptic curve y^2 = x^3 - 1, with \
zeta_3 acting as (x, y) -> (x, zeta_3 y) on some factors and by its inverse on the rest. \
Profiles marked incompatible are therefore realized, but never by a Jacobian.";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub verdict: RealizabilityVerdict,
    /// Superelliptic model for the first witness, when verification ran.
    pub curve: Option<CurveModel>,
    pub lefschetz_holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub instance: ProblemInstance,
    pub rows: Vec<ReportRow>,
    pub admissible_count: u128,
    pub realizable_count: usize,
}

impl ClassificationReport {
    pub fn note(&self) -> Option<&'static str> {
        (self.instance.p() == 3).then_some(P3_CM_NOTE)
    }

    /// True unless a verified row failed the Lefschetz check.
    pub fn all_verified_hold(&self) -> bool {
        self.rows.iter().all(|r| r.lefschetz_holds != Some(false))
    }

    pub fn realizable_profiles(&self) -> impl Iterator<Item = &RealizabilityVerdict> {
        self.rows
            .iter()
            .map(|r| &r.verdict)
            .filter(|v| v.is_jacobian_compatible())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&ReportWire::from(self))
            .expect("report serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let n = self.instance.p() as usize - 1;
        let mut header: Vec<String> = (1..=n).map(|i| format!("a_{i}")).collect();
        header.push("compatible".into());
        header.push("n_witnesses".into());
        header.extend((1..=n).map(|i| format!("b_{i}")));
        let mut out = header.join(",");
        out.push('\n');
        for row in &self.rows {
            let v = &row.verdict;
            let mut cells: Vec<String> = v.profile().values().iter().map(u64::to_string).collect();
            cells.push(v.is_jacobian_compatible().to_string());
            cells.push(v.witnesses().len().to_string());
            match v.witnesses().first() {
                Some(w) => cells.extend(w.values().iter().map(u64::to_string)),
                None => cells.extend(std::iter::repeat_n(String::new(), n)),
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "p = {}, g = {}: {} admissible, {} Jacobian-compatible",
            self.instance.p(),
            self.instance.g(),
            self.admissible_count,
            self.realizable_count
        );
        let fmt = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let width = self
            .rows
            .iter()
            .map(|r| fmt(r.verdict.profile().values()).len())
            .max()
            .unwrap_or(1)
            .max(1);
        for row in &self.rows {
            let v = &row.verdict;
            let a = fmt(v.profile().values());
            let verdict = if v.is_jacobian_compatible() {
                "yes"
            } else {
                "no "
            };
            let witnesses = v
                .witnesses()
                .iter()
                .map(|w| format!("({})", fmt(w.values())))
                .collect::<Vec<_>>()
                .join(" ");
            let lef = match row.lefschetz_holds {
                Some(true) => "  [lefschetz ok]",
                Some(false) => "  [LEFSCHETZ FAILED]",
                None => "",
            };
            let _ = writeln!(out, "  a = ({a:<width$})  {verdict}  {witnesses}{lef}");
            if let Some(c) = &row.curve {
                let _ = writeln!(out, "      {}", c.equation());
            }
        }
        if let Some(note) = self.note() {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}

#[derive(Serialize)]
struct RowWire<'a> {
    a: &'a [u64],
    compatible: bool,
    witnesses: Vec<&'a [u64]>,
    curve: Option<&'a CurveModel>,
    lefschetz_holds: Option<bool>,
}

#[derive(Serialize)]
struct ReportWire<'a> {
    p: u32,
    g: u64,
    admissible_count: u128,
    realizable_count: usize,
    rows: Vec<RowWire<'a>>,
}

impl<'a> From<&'a ClassificationReport> for ReportWire<'a> {
    fn from(r: &'a ClassificationReport) -> Self {
        ReportWire {
            p: r.instance.p(),
            g: r.instance.g(),
            admissible_count: r.admissible_count,
            realizable_count: r.realizable_count,
            rows: r
                .rows
                .iter()
                .map(|row| RowWire {
                    a: row.verdict.profile().values(),
                    compatible: row.verdict.is_jacobian_compatible(),
                    witnesses: row.verdict.witnesses().iter().map(|w| w.values()).collect(),
                    curve: row.curve.as_ref(),
                    lefschetz_holds: row.lefschetz_holds,
                })
                .collect(),
        }
    }
}

/// Classifies every admissible profile of `instance`; with `verify`, builds a
/// curve for the first witness of each compatible profile and checks the
/// Lefschetz identity on it.
pub fn full_report(instance: &ProblemInstance, verify: bool) -> Result<ClassificationReport> {
    let verdicts = classify(instance)?;
    let mut rows = Vec::with_capacity(verdicts.len());
    for verdict in verdicts {
        let (curve, lefschetz_holds) = match (verify, verdict.witnesses().first()) {
            (true, Some(w)) => {
                let c = build_curve(w, None)?;
                let holds = lefschetz_check(&c)?.holds;
                (Some(c), Some(holds))
            }
            _ => (None, None),
        };
        rows.push(ReportRow {
            verdict,
            curve,
            lefschetz_holds,
        });
    }
    let admissible_count = admissible_count(instance);
    if rows.len() as u128 != admissible_count {
        return Err(Error::Internal(format!(
            "enumerated {} profiles, expected {admissible_count}",
            rows.len()
        )));
    }
    let realizable_count = rows
        .iter()
        .filter(|r| r.verdict.is_jacobian_compatible())
        .count();
    if instance.p() == 3 && realizable_count as u64 != p3_realizable_count(instance.g()) {
        return Err(Error::Internal(format!(
            "p = 3, g = {}: {realizable_count} compatible profiles, closed form gives {}",
            instance.g(),
            p3_realizable_count(instance.g())
        )));
    }
    Ok(ClassificationReport {
        instance: *instance,
        rows,
        admissible_count,
        realizable_count,
    })
}

/// One closed-form entry for `p = 3`: `b = (b(1), b(2))`, `a = (a(1), a(2))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct P3CatalogRow {
    pub g: u64,
    pub k: u64,
    pub d: u64,
    pub b: (u64, u64),
    pub a: (u64, u64),
}

/// `(g + 5)/3`, `(g + 1)/3` or `(g + 3)/3` for `g = 1, 2, 0 mod 3`.
pub fn p3_realizable_count(g: u64) -> u64 {
    match g % 3 {
        1 => (g + 5) / 3,
        2 => (g + 1) / 3,
        _ => (g + 3) / 3,
    }
}

/// Closed-form list of Jacobian-compatible profiles for `p = 3`.
pub fn p3_catalog(g: u64) -> Vec<P3CatalogRow> {
    match g % 3 {
        1 => {
            let k = (g - 1) / 3;
            (0..=k + 1)
                .map(|d| P3CatalogRow {
                    g,
                    k,
                    d,
                    b: (3 * d, 3 * (k + 1 - d)),
                    a: (k + d, 2 * k + 1 - d),
                })
                .collect()
        }
        2 => {
            let k = (g - 2) / 3;
            (0..=k)
                .map(|d| P3CatalogRow {
                    g,
                    k,
                    d,
                    b: (3 * d + 2, 3 * (k - d) + 2),
                    a: (k + 1 + d, 2 * k + 1 - d),
                })
                .collect()
        }
        _ => {
            let k = g / 3;
            (0..=k)
                .map(|d| P3CatalogRow {
                    g,
                    k,
                    d,
                    b: (3 * d + 1, 3 * (k - d) + 1),
                    a: (k + d, 2 * k - d),
                })
                .collect()
        }
    }
}

/// Compares the closed-form catalog with solver-driven classification for
/// every `g` in `1..=g_max`: same compatible profiles, and each profile's
/// witness list is exactly the catalog's `b`.
pub fn cross_check_p3(g_max: u64) -> Result<bool> {
    for g in 1..=g_max {
        let report = full_report(&validate_instance(3, g as i64)?, false)?;
        let solver: BTreeMap<(u64, u64), Vec<Vec<u64>>> = report
            .realizable_profiles()
            .map(|v| {
                let a = v.profile().values();
                (
                    (a[0], a[1]),
                    v.witnesses().iter().map(|w| w.values().to_vec()).collect(),
                )
            })
            .collect();
        let catalog: BTreeMap<(u64, u64), Vec<Vec<u64>>> = p3_catalog(g)
            .into_iter()
            .map(|r| (r.a, vec![vec![r.b.0, r.b.1]]))
            .collect();
        if solver != catalog || catalog.len() as u64 != p3_realizable_count(g) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizability::{a_from_b, BranchProfile};

    #[test]
    fn catalog_examples() {
        let rows = p3_catalog(7);
        let a: Vec<_> = rows.iter().map(|r| r.a).collect();
        let b: Vec<_> = rows.iter().map(|r| r.b).collect();
        assert_eq!(a, vec![(2, 5), (3, 4), (4, 3), (5, 2)]);
        assert_eq!(b, vec![(0, 9), (3, 6), (6, 3), (9, 0)]);

        let rows = p3_catalog(2);
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].a, rows[0].b), ((1, 1), (2, 2)));

        let rows = p3_catalog(3);
        let a: Vec<_> = rows.iter().map(|r| r.a).collect();
        let b: Vec<_> = rows.iter().map(|r| r.b).collect();
        assert_eq!(a, vec![(1, 2), (2, 1)]);
        assert_eq!(b, vec![(1, 4), (4, 1)]);
    }

    #[test]
    fn catalog_rows_are_consistent() {
        for g in 1..=40 {
            let rows = p3_catalog(g);
            assert_eq!(rows.len() as u64, p3_realizable_count(g));
            for r in rows {
                assert_eq!(r.b.0 + r.b.1, g + 2);
                assert_eq!(r.b.0 % 3, r.b.1 % 3);
                assert_eq!(r.a.0 + r.a.1, g);
                let bp =
                    BranchProfile::new(validate_instance(3, g as i64).unwrap(), vec![r.b.0, r.b.1])
                        .unwrap();
                assert_eq!(a_from_b(&bp).unwrap().values(), &[r.a.0, r.a.1]);
            }
        }
    }

    #[test]
    fn report_examples() {
        let r = full_report(&validate_instance(3, 2).unwrap(), true).unwrap();
        assert_eq!((r.admissible_count, r.realizable_count), (3, 1));
        assert!(r.all_verified_hold());
        assert!(r.note().is_some());

        let r = full_report(&validate_instance(3, 4).unwrap(), false).unwrap();
        assert_eq!((r.admissible_count, r.realizable_count), (5, 3));

        let r = full_report(&validate_instance(5, 2).unwrap(), true).unwrap();
        let row = r
            .rows
            .iter()
            .find(|x| x.verdict.profile().values() == [1, 1, 0, 0])
            .unwrap();
        assert!(row.verdict.is_jacobian_compatible());
        assert!(row
            .verdict
            .witnesses()
            .iter()
            .any(|w| w.values() == [2, 1, 0, 0]));
        assert!(r.note().is_none());
    }

    #[test]
    fn cross_check_small() {
        assert!(cross_check_p3(1).unwrap());
        assert!(cross_check_p3(12).unwrap());
    }

    #[test]
    fn csv_layout() {
        let r = full_report(&validate_instance(3, 2).unwrap(), false).unwrap();
        assert_eq!(
            r.to_csv(),
            "a_1,a_2,compatible,n_witnesses,b_1,b_2\n\
             0,2,false,0,,\n\
             1,1,true,1,2,2\n\
             2,0,false,0,,\n"
        );
    }

    #[test]
    fn json_layout() {
        let r = full_report(&validate_instance(3, 2).unwrap(), false).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys.len(), 5);
        assert_eq!(v["admissible_count"], 3);
        assert_eq!(v["rows"][1]["witnesses"], serde_json::json!([[2, 2]]));
        assert!(v["rows"][1]["curve"].is_null());
        let text = r.to_json();
        let order = [
            "\"p\"",
            "\"g\"",
            "\"admissible_count\"",
            "\"realizable_count\"",
            "\"rows\"",
        ];
        let pos: Vec<_> = order.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        let row_order = [
            "\"a\"",
            "\"compatible\"",
            "\"witnesses\"",
            "\"curve\"",
            "\"lefschetz_holds\"",
        ];
        let pos: Vec<_> = row_order.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }
}
