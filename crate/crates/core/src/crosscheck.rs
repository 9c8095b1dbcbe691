//! Cross-validation suites pitting independent implementations against each
//! other: closed-form catalog values vs. explicit constructions, the
//! exhaustive oracle vs. both, and aggregate results from the randomized
//! trial harnesses.
//!
//! Every comparison lands in a [`CrosscheckRow`] tagged either
//! [`RowClass::MustMatch`] (a mismatch fails the suite) or
//! [`RowClass::Informational`] (recorded but tolerated — used for the one
//! known boundary case where two sources legitimately disagree).

use serde::Serialize;

use crate::catalog::{self, FormulaFamily};
use crate::constructions;
use crate::error::{Error, Result};
use crate::exec::Parallelism;
use crate::model::ForestShape;
use crate::oracle::{compute_ar, compute_ar_triangle, ARStatus, OracleConfig};
use crate::trials::{run_equivalence, run_extraction, EquivalenceConfig, ExtractionConfig};

/// How a row's verdict affects the suite outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowClass {
    /// A mismatch on this row makes the whole suite fail.
    MustMatch,
    /// Recorded for the report but never fails the suite.
    Informational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Match,
    Mismatch,
    /// The comparison could not be carried out (e.g. out-of-domain input).
    Skipped,
}

/// A single two-sided comparison.
#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckRow {
    pub id: String,
    /// Short description of where the left value comes from.
    pub left: String,
    /// Short description of where the right value comes from.
    pub right: String,
    pub left_value: Option<u64>,
    pub right_value: Option<u64>,
    pub verdict: Verdict,
    pub class: RowClass,
    /// Free-form context (branch taken, node counts, etc.).
    pub note: String,
}

impl CrosscheckRow {
    fn compare(
        id: impl Into<String>,
        left: impl Into<String>,
        right: impl Into<String>,
        left_value: Option<u64>,
        right_value: Option<u64>,
        class: RowClass,
        note: impl Into<String>,
    ) -> Self {
        let verdict = match (left_value, right_value) {
            (Some(a), Some(b)) if a == b => Verdict::Match,
            (Some(_), Some(_)) => Verdict::Mismatch,
            _ => Verdict::Skipped,
        };
        CrosscheckRow {
            id: id.into(),
            left: left.into(),
            right: right.into(),
            left_value,
            right_value,
            verdict,
            class,
            note: note.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub suite: String,
    pub rows: Vec<CrosscheckRow>,
}

impl CrosscheckReport {
    /// True when no must-match row reports a mismatch (skips also fail:
    /// a comparison the suite promised to run must actually run).
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.class == RowClass::MustMatch)
            .all(|r| r.verdict == Verdict::Match)
    }

    pub fn mismatches(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.verdict == Verdict::Mismatch)
            .count()
    }

    pub fn informational_mismatches(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.class == RowClass::Informational && r.verdict == Verdict::Mismatch)
            .count()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("crosscheck suite: {}\n", self.suite));
        let id_width = self
            .rows
            .iter()
            .map(|r| r.id.len())
            .max()
            .unwrap_or(2)
            .max(2);
        for row in &self.rows {
            let fmt = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
            let marker = match (row.verdict, row.class) {
                (Verdict::Match, _) => "ok",
                (Verdict::Mismatch, RowClass::Informational) => "MISMATCH (informational)",
                (Verdict::Mismatch, RowClass::MustMatch) => "MISMATCH",
                (Verdict::Skipped, _) => "skipped",
            };
            out.push_str(&format!(
                "{:<id_width$}  {:>12} vs {:<12}  {}",
                row.id,
                fmt(row.left_value),
                fmt(row.right_value),
                marker,
            ));
            if !row.note.is_empty() {
                out.push_str(&format!("  [{}]", row.note));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} rows, {} mismatches ({} informational), suite {}\n",
            self.rows.len(),
            self.mismatches(),
            self.informational_mismatches(),
            if self.passed() { "PASSED" } else { "FAILED" }
        ));
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::from("id,left,right,left_value,right_value,verdict,class,note\n");
        for row in &self.rows {
            let fmt = |v: Option<u64>| v.map_or_else(String::new, |x| x.to_string());
            out.push_str(&format!(
                "{},{},{},{},{},{:?},{:?},{}\n",
                csv_field(&row.id),
                csv_field(&row.left),
                csv_field(&row.right),
                fmt(row.left_value),
                fmt(row.right_value),
                row.verdict,
                row.class,
                csv_field(&row.note),
            ));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Runs a suite by name. `base` is deterministic and finishes in seconds;
/// `extended` adds randomized trial aggregates and a slow exhaustive row.
pub fn run_suite(name: &str, master_seed: u64, parallelism: Parallelism) -> Result<CrosscheckReport> {
    match name {
        "base" => run_base(parallelism),
        "extended" => run_extended(master_seed, parallelism),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

/// The deterministic suite: internal formula identities, the explicit
/// construction against the closed form, the exhaustive oracle against both,
/// and one known boundary case that is recorded as informational.
pub fn run_base(parallelism: Parallelism) -> Result<CrosscheckReport> {
    let mut rows = Vec::new();

    // Cross-family identities evaluated through independent formula paths.
    for identity in catalog::consistency_report(50) {
        rows.push(CrosscheckRow::compare(
            identity.id,
            "formula (spanning family)",
            "formula (general-n family)",
            Some(identity.lhs),
            Some(identity.rhs),
            RowClass::MustMatch,
            "",
        ));
    }

    // The explicit edge-coloring must realize exactly the closed-form count.
    for k in 1..=4usize {
        for t in 2..=5usize {
            let coloring = constructions::build_lower_bound(k, t)?;
            let formula = catalog::spanning_value(k as u64, t as u64);
            rows.push(CrosscheckRow::compare(
                format!("construction({k},{t}) classes == formula"),
                "constructed coloring class count",
                "closed form",
                Some(coloring.class_count() as u64),
                formula,
                RowClass::MustMatch,
                format!("n = {}", coloring.n()),
            ));
        }
    }

    // Exhaustive oracle vs. the published counts on fully tractable hosts.
    let oracle_rows: [(&str, usize, (usize, usize), FormulaFamily); 3] = [
        (
            "oracle AR(5, P3+P2)",
            5,
            (1, 1),
            FormulaFamily::P3P2Small { n: 5, t: 1 },
        ),
        (
            "oracle AR(5, 2P2)",
            5,
            (0, 2),
            FormulaFamily::Matching { n: 5, t: 2 },
        ),
        (
            "oracle AR(6, 3P2)",
            6,
            (0, 3),
            FormulaFamily::Matching { n: 6, t: 3 },
        ),
    ];
    for (id, n, (k, t), family) in oracle_rows {
        let shape = ForestShape::new(k, t)?;
        let result = compute_ar(n, shape, &OracleConfig::default())?;
        let note = format!("status {:?}, {} nodes", result.status, result.nodes);
        rows.push(CrosscheckRow::compare(
            id,
            "exhaustive search",
            "closed form",
            result.value.map(|v| v as u64),
            family.evaluate().value(),
            RowClass::MustMatch,
            note,
        ));
    }

    // Budgeted oracle run on n = 7 seeded with the construction: the best
    // coloring found so far must never exceed the theorem value, and with the
    // construction as a starting point it must already sit exactly on it.
    {
        let seed = constructions::build_lower_bound(1, 2)?;
        let config = OracleConfig {
            budget: Some(50_000),
            seed: Some(seed),
            ..OracleConfig::default()
        };
        let result = compute_ar(7, ForestShape::new(1, 2)?, &config)?;
        let note = format!(
            "status {:?} (budgeted lower bound), {} nodes",
            result.status, result.nodes
        );
        rows.push(CrosscheckRow::compare(
            "oracle AR(7, P3+2P2) >= construction",
            "budgeted search incumbent",
            "closed form",
            result.value.map(|v| v as u64),
            catalog::spanning_value(1, 2),
            RowClass::MustMatch,
            note,
        ));
    }

    // Known boundary case: the small-cycle branch of the cycle formula at
    // t = 3 disagrees with the exhaustive triangle count by one. Kept as a
    // deliberate informational row so the discrepancy stays visible; the
    // triangle search itself is verified elsewhere (and below at n = 5 the
    // search side is a full proof, so the formula side is the odd one out).
    {
        let formula = FormulaFamily::Cycle { n: 5, t: 3 }.evaluate().value();
        let oracle = compute_ar_triangle(5, &OracleConfig::default())?;
        assert_eq!(oracle.status, ARStatus::Proven);
        rows.push(CrosscheckRow::compare(
            "cycle formula (5,3) vs exhaustive triangle count",
            "closed form",
            "exhaustive search",
            formula,
            oracle.value.map(|v| v as u64),
            RowClass::Informational,
            "known off-by-one in the small-cycle branch at t = 3",
        ));
    }

    let _ = parallelism;
    Ok(CrosscheckReport {
        suite: "base".into(),
        rows,
    })
}

/// Everything in `base`, plus aggregate rows from reduced randomized trial
/// runs and one exhaustive run on the largest fully searchable host.
pub fn run_extended(master_seed: u64, parallelism: Parallelism) -> Result<CrosscheckReport> {
    let mut report = run_base(parallelism)?;
    report.suite = "extended".into();

    // Detector vs. brute-force enumeration on random colorings.
    let eq_config = EquivalenceConfig {
        master_seed,
        rounds: 60,
        parallelism,
        ..EquivalenceConfig::default()
    };
    let eq = run_equivalence(&eq_config)?;
    report.rows.push(CrosscheckRow::compare(
        format!("equivalence trials ({} rounds/combo)", eq_config.rounds),
        "disagreement count",
        "expected zero",
        Some(eq.disagreements as u64),
        Some(0),
        RowClass::MustMatch,
        format!("{} trials", eq.total_trials),
    ));

    // Threshold extraction trials: every witness valid, no fallbacks.
    let ex_config = ExtractionConfig {
        master_seed: master_seed.rotate_left(17),
        rounds: 40,
        parallelism,
        ..ExtractionConfig::default()
    };
    let ex = run_extraction(&ex_config)?;
    report.rows.push(CrosscheckRow::compare(
        format!("extraction trials ({} rounds/shape)", ex_config.rounds),
        "invalid + fallback count",
        "expected zero",
        Some((ex.invalid + ex.fallbacks) as u64),
        Some(0),
        RowClass::MustMatch,
        format!("{} trials", ex.total_trials),
    ));

    // Aggregate identity: the general linear-forest formula collapses onto
    // the specialized families on their shared domains.
    {
        let mut mismatch = 0u64;
        let mut checked = 0u64;
        for k in 0..=6u64 {
            for t in 0..=6u64 {
                if k + t < 2 {
                    continue;
                }
                let n = 3 * (3 * k + 2 * t) + 1;
                let mut paths = vec![3u64; k as usize];
                paths.extend(std::iter::repeat_n(2u64, t as usize));
                let general = FormulaFamily::XieLinearForest { n, paths, n_min: None }
                    .evaluate()
                    .value();
                let special = if k == 0 {
                    FormulaFamily::Matching { n, t }.evaluate().value()
                } else {
                    FormulaFamily::GrKp3Tp2 { n, k, t, n_min: None }
                        .evaluate()
                        .value()
                };
                if let (Some(a), Some(b)) = (general, special) {
                    checked += 1;
                    if a != b {
                        mismatch += 1;
                    }
                }
            }
        }
        report.rows.push(CrosscheckRow::compare(
            "linear-forest formula vs specialized families (k,t <= 6)",
            "mismatching grid points",
            "expected zero",
            Some(mismatch),
            Some(0),
            RowClass::MustMatch,
            format!("{checked} grid points compared"),
        ));
    }

    // Exhaustive run on the largest host the unbudgeted oracle accepts,
    // seeded with the construction so success certifies the exact value.
    {
        let seed = constructions::build_lower_bound(1, 2)?;
        let config = OracleConfig {
            budget: Some(200_000_000),
            seed: Some(seed),
            ..OracleConfig::default()
        };
        let result = compute_ar(7, ForestShape::new(1, 2)?, &config)?;
        let class = if result.status == ARStatus::Proven {
            RowClass::MustMatch
        } else {
            RowClass::Informational
        };
        report.rows.push(CrosscheckRow::compare(
            "oracle AR(7, P3+2P2) exhaustive",
            "exhaustive search",
            "closed form",
            result.value.map(|v| v as u64),
            catalog::spanning_value(1, 2),
            class,
            format!("status {:?}, {} nodes", result.status, result.nodes),
        ));
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_suite_passes_with_one_informational_mismatch() {
        let report = run_base(Parallelism::default()).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        assert_eq!(report.mismatches(), 1);
        assert_eq!(report.informational_mismatches(), 1);
        let odd = report
            .rows
            .iter()
            .find(|r| r.verdict == Verdict::Mismatch)
            .unwrap();
        assert_eq!(odd.class, RowClass::Informational);
        assert_eq!((odd.left_value, odd.right_value), (Some(5), Some(4)));
    }

    #[test]
    fn base_suite_has_no_skipped_rows() {
        let report = run_base(Parallelism::default()).unwrap();
        assert!(report.rows.iter().all(|r| r.verdict != Verdict::Skipped));
        assert!(report.rows.len() > 60, "identities + grid should dominate");
    }

    #[test]
    fn renderings_mention_every_row() {
        let report = run_base(Parallelism::default()).unwrap();
        let text = report.render_text();
        let csv = report.render_csv();
        assert!(text.contains("suite PASSED"));
        assert!(text.contains("MISMATCH (informational)"));
        assert_eq!(csv.lines().count(), report.rows.len() + 1);
        assert!(csv.starts_with("id,left,right,"));
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let err = run_suite("nightly", 1, Parallelism::default()).unwrap_err();
        assert!(matches!(err, Error::UnknownSuite(ref s) if s == "nightly"));
    }

    #[test]
    fn verdict_logic_covers_skips() {
        let row = CrosscheckRow::compare("x", "l", "r", None, Some(3), RowClass::MustMatch, "");
        assert_eq!(row.verdict, Verdict::Skipped);
        let report = CrosscheckReport {
            suite: "probe".into(),
            rows: vec![row],
        };
        assert!(!report.passed(), "a skipped must-match row must fail");
    }

    #[test]
    fn extended_suite_small_seed_passes() {
        let report = run_extended(0x5eed, Parallelism::default()).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        // base rows plus the four extended rows
        let base_len = run_base(Parallelism::default()).unwrap().rows.len();
        assert_eq!(report.rows.len(), base_len + 4);
    }
}
