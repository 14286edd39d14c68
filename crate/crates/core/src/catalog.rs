//! The reference table of published example codes: each row is constructed,
//! measured, and compared with its expected parameters.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::distance::{Certainty, Distance, SearchConfig};
use crate::error::Result;
use crate::family::Family;
use crate::lattice::PeriodicityVectors;
use crate::poly::Gf2Poly;
use crate::report::{compare, MeasuredParams};

pub const TABLE_SCHEMA: &str = "qhp-table/1";

/// Parameters a row must reproduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
    /// Whether a witnessed upper bound equal to `d` is enough.
    pub upper_bound_ok: bool,
}

#[derive(Clone, Debug)]
pub struct ExampleRow {
    pub family: Family,
    pub expected: Expected,
    /// Weight through which the search must exhaust, when the default
    /// budget is not enough for an exact answer.
    pub exact_max_weight: Option<usize>,
}

impl ExampleRow {
    pub fn label(&self) -> String {
        let e = &self.expected;
        match e.w {
            Some(w) => format!("[[{},{},{},w={w}]]", e.n, e.k, e.d),
            None => format!("[[{},{},{}]]", e.n, e.k, e.d),
        }
    }
}

fn vectors(l1: (i64, i64), l2: (i64, i64)) -> PeriodicityVectors {
    PeriodicityVectors::new(l1, l2).expect("table vectors are independent")
}

fn row(family: Family, n: usize, k: usize, d: usize) -> ExampleRow {
    ExampleRow {
        family,
        expected: Expected {
            n,
            k,
            d,
            w: None,
            upper_bound_ok: false,
        },
        exact_max_weight: None,
    }
}

/// All reference rows in table order.
pub fn reference_examples() -> Vec<ExampleRow> {
    let poly = |e: &[usize]| Gf2Poly::from_exponents(e.iter().copied());
    let mut rows = vec![
        row(Family::Toric { l_xi: 5, l_eta: 5 }, 50, 2, 5),
        row(Family::Toric { l_xi: 3, l_eta: 3 }, 18, 2, 3),
        row(Family::Checkerboard(vectors((4, 0), (0, 4))), 16, 2, 4),
        row(Family::Checkerboard(vectors((3, 1), (-1, 3))), 10, 2, 3),
        row(Family::Checkerboard(vectors((5, 1), (-1, 5))), 26, 2, 5),
        row(Family::Checkerboard(vectors((7, 1), (-1, 7))), 50, 2, 7),
        row(Family::Zxxz(vectors((3, 0), (0, 3))), 9, 1, 3),
        row(Family::Zxxz(vectors((5, 0), (0, 5))), 25, 1, 5),
        row(Family::Zxxz(vectors((2, 1), (-1, 2))), 5, 1, 3),
        row(Family::Zxxz(vectors((3, 2), (-2, 3))), 13, 1, 5),
        row(Family::Zxxz(vectors((4, 3), (-3, 4))), 25, 1, 7),
        row(Family::Zxxz(vectors((5, 4), (-4, 5))), 41, 1, 9),
        row(Family::Repetition { d: 3 }, 13, 1, 3),
        row(Family::Repetition { d: 4 }, 25, 1, 4),
        row(Family::Repetition { d: 5 }, 41, 1, 5),
    ];
    for d in 3..=5 {
        rows.push(row(
            Family::CyclicSquare {
                h: poly(&[0, 1]),
                n: d,
            },
            2 * d * d,
            2,
            d,
        ));
    }
    rows.push(row(
        Family::PalindromicSymmetric {
            h: poly(&[0, 1]),
            n: 3,
        },
        9,
        1,
        3,
    ));
    rows.push(row(
        Family::TwoTileCyclic {
            h: poly(&[0, 1]),
            n: 4,
        },
        16,
        2,
        4,
    ));
    rows.push(row(
        Family::TwoTileCyclic {
            h: poly(&[0, 1]),
            n: 6,
        },
        36,
        2,
        6,
    ));
    rows.push(ExampleRow {
        family: Family::PalindromicSymmetric {
            h: poly(&[0, 3, 4, 5, 6, 9]),
            n: 17,
        },
        expected: Expected {
            n: 289,
            k: 81,
            d: 5,
            w: Some(12),
            upper_bound_ok: false,
        },
        exact_max_weight: Some(4),
    });
    rows.push(ExampleRow {
        family: Family::TwoTileCyclic {
            h: poly(&[0, 1, 3, 5]),
            n: 30,
        },
        expected: Expected {
            n: 900,
            k: 50,
            d: 14,
            w: Some(8),
            upper_bound_ok: true,
        },
        exact_max_weight: None,
    });
    rows
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowReport {
    pub label: String,
    pub family: String,
    pub args: Value,
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured: Option<MeasuredParams>,
    pub problems: Vec<String>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub schema: String,
    pub seed: u64,
    pub rows: Vec<RowReport>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl TableReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Builds and measures one row. Problems list every way it falls short.
pub fn run_row(example: &ExampleRow, cfg: &SearchConfig) -> Result<RowReport> {
    let built = example.family.build()?;
    let mut cfg = cfg.clone();
    if cfg.exact_max_weight.is_none() {
        cfg.exact_max_weight = example.exact_max_weight;
    }
    let measured = MeasuredParams::measure(&built.code, Some(&cfg));
    let e = &example.expected;
    let mut problems = compare(&built.prediction, &measured);
    if (measured.n, measured.k) != (e.n, e.k) {
        problems.push(format!(
            "expected n = {}, k = {}; measured {}, {}",
            e.n, e.k, measured.n, measured.k
        ));
    }
    if let Some(w) = e.w.filter(|&w| w != measured.w) {
        problems.push(format!("expected w = {w}, measured {}", measured.w));
    }
    let d = measured.d.as_ref().expect("distance was requested");
    if d.value != Distance::Finite(e.d) {
        problems.push(format!("expected d = {}, measured {}", e.d, d.value));
    } else if d.certainty != Certainty::Exact && !e.upper_bound_ok {
        problems.push(format!("d = {} was not certified exact", d.value));
    }
    Ok(RowReport {
        label: example.label(),
        family: built.construction.family,
        args: built.construction.args,
        expected: *e,
        status: if problems.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        measured: Some(measured),
        problems,
    })
}

/// Runs every row with `n ≤ max_n`; larger rows are reported as skipped.
pub fn run_table(cfg: &SearchConfig, max_n: Option<usize>) -> Result<TableReport> {
    let mut rows = Vec::new();
    for example in reference_examples() {
        if max_n.is_some_and(|m| example.expected.n > m) {
            let built_args = example.family.build()?.construction;
            rows.push(RowReport {
                label: example.label(),
                family: built_args.family,
                args: built_args.args,
                expected: example.expected,
                measured: None,
                problems: Vec::new(),
                status: Status::Skip,
            });
            continue;
        }
        rows.push(run_row(&example, cfg)?);
    }
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    Ok(TableReport {
        schema: TABLE_SCHEMA.to_string(),
        seed: cfg.rng_seed,
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skip),
        rows,
    })
}

/// Plain-text rendering, one line per row.
pub fn render_text(report: &TableReport) -> String {
    let mut out = String::new();
    for r in &report.rows {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        let measured = r.measured.as_ref().map_or_else(
            || "-".to_string(),
            |m| {
                let d =
                    m.d.as_ref()
                        .map_or("?".to_string(), |d| format!("{} {}", d.value, d.certainty));
                format!("[[{},{},{}]] w={}", m.n, m.k, d, m.w)
            },
        );
        writeln!(
            out,
            "{status}  {:<22} {:<16} measured {measured}",
            r.label, r.family
        )
        .unwrap();
        for p in &r.problems {
            writeln!(out, "      {p}").unwrap();
        }
    }
    writeln!(
        out,
        "{} passed, {} failed, {} skipped",
        report.passed, report.failed, report.skipped
    )
    .unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows_pass() {
        let report = run_table(&SearchConfig::default(), Some(30)).unwrap();
        assert!(report.all_passed(), "{}", render_text(&report));
        assert!(report.passed >= 10);
        assert!(report.skipped >= 2);
    }

    #[test]
    fn labels() {
        let rows = reference_examples();
        assert!(rows.iter().any(|r| r.label() == "[[289,81,5,w=12]]"));
        assert!(rows.iter().any(|r| r.label() == "[[41,1,9]]"));
    }
}
