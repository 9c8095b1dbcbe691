//! Catalog of published closed-form anti-Ramsey values for paths, cycles,
//! matchings, and small linear forests.
//!
//! Each family evaluates the literature formula exactly as printed, in exact
//! integer arithmetic (halves and rational branch boundaries are handled with
//! explicit floor/ceiling over integers, never floats). Out-of-domain inputs
//! return a reason instead of a number, and piecewise families report which
//! branch produced the value. Families stated only "for sufficiently large n"
//! take an optional cutoff `n_min`, defaulting to three times the vertex count
//! of the pattern; callers who know a sharper threshold can pass their own.
//!
//! One deliberate quirk: the cycle family reproduces its source verbatim, and
//! that printed expression disagrees with exhaustive search at `(n, t) =
//! (5, 3)` (formula 5, true value 4). The crosscheck suite reports exactly
//! this divergence as informational; see `crosscheck`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest accepted parameter. Keeps every intermediate product far inside
/// `i128` so evaluation is exact for any accepted input.
const PARAM_LIMIT: u64 = 1_000_000_000_000;

/// A formula family together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormulaFamily {
    /// Simonovits–Sós: paths `P_t`, large `n`.
    Path { n: u64, t: u64, n_min: Option<u64> },
    /// Montellano-Ballesteros–Neumann-Lara: cycles `C_t`, `n >= t >= 3`.
    Cycle { n: u64, t: u64 },
    /// Matchings `tP2`: Chen/Fujita for `n >= 2t+1`, Haas–Young for `n = 2t`
    /// (Schiermeyer's `n >= 3t+3` range coincides with the linear branch).
    Matching { n: u64, t: u64 },
    /// Bialostocki small forests: `P3 ∪ P2` (t=1) and `P3 ∪ 2P2` (t=2).
    P3P2Small { n: u64, t: u64 },
    /// He–Jin: `P3 ∪ tP2`, `t >= 2`, `n >= 2t+3`.
    P3Tp2 { n: u64, t: u64 },
    /// He–Jin: `2P3 ∪ tP2`, `t >= 2`, `n >= 2t+7`.
    TwoP3Tp2 { n: u64, t: u64 },
    /// Gilboa–Roditty: `P_{k+1} ∪ tP3`, `k >= 3`, large `n`.
    GrPk1Tp3 { n: u64, k: u64, t: u64, n_min: Option<u64> },
    /// Gilboa–Roditty: `kP3 ∪ tP2`, `k, t >= 2`, large `n`.
    GrKp3Tp2 { n: u64, k: u64, t: u64, n_min: Option<u64> },
    /// Gilboa–Roditty: `P2 ∪ tP3`, `t >= 1`, large `n`.
    GrP2Tp3 { n: u64, t: u64, n_min: Option<u64> },
    /// Gilboa–Roditty: `P3 ∪ tP2`, `t >= 2`, large `n`.
    GrP3Tp2 { n: u64, t: u64, n_min: Option<u64> },
    /// Gilboa–Roditty: `P4 ∪ tP2`, `t >= 1`, large `n`.
    GrP4Tp2 { n: u64, t: u64, n_min: Option<u64> },
    /// Gilboa–Roditty: `C3 ∪ tP2`, `t >= 1`, large `n`.
    GrC3Tp2 { n: u64, t: u64, n_min: Option<u64> },
    /// Gilboa–Roditty: `tP3`, `t >= 1`, large `n`.
    GrTp3 { n: u64, t: u64, n_min: Option<u64> },
    /// Xie et al.: general linear forests with an even component, large `n`
    /// (explicitly excludes the spanning point `n = Σ p_i`).
    XieLinearForest {
        n: u64,
        paths: Vec<u64>,
        n_min: Option<u64>,
    },
    /// Jie et al.: `kP3 ∪ tP2` with `k >= 2`, `t >= (k²-k+4)/2`, `n >= 3k+2t+1`.
    JieKp3Tp2 { n: u64, k: u64, t: u64 },
    /// Spanning case `n = 3k + 2t`, `k >= 1`, `t >= 2` (n is implied).
    SpanningKp3Tp2 { k: u64, t: u64 },
}

/// Outcome of evaluating a family: exactly one of `value` / `out_of_domain`
/// is set; `branch` names the piece of a piecewise formula that fired.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaResult {
    pub family: &'static str,
    pub value: Option<u64>,
    pub out_of_domain: Option<String>,
    pub branch: Option<&'static str>,
}

impl FormulaResult {
    fn ok(family: &'static str, value: i128, branch: Option<&'static str>) -> Self {
        assert!(value >= 0, "catalog produced a negative count for {family}");
        FormulaResult {
            family,
            value: Some(u64::try_from(value).expect("value fits u64 under PARAM_LIMIT")),
            out_of_domain: None,
            branch,
        }
    }

    fn out(family: &'static str, reason: impl Into<String>) -> Self {
        FormulaResult {
            family,
            value: None,
            out_of_domain: Some(reason.into()),
            branch: None,
        }
    }

    /// The value, if in domain.
    pub fn value(&self) -> Option<u64> {
        self.value
    }
}

const TAGS: &[&str] = &[
    "PATH",
    "CYCLE",
    "MATCHING",
    "P3_P2_SMALL",
    "P3_TP2",
    "TWO_P3_TP2",
    "GR_PK1_TP3",
    "GR_KP3_TP2",
    "GR_P2_TP3",
    "GR_P3_TP2",
    "GR_P4_TP2",
    "GR_C3_TP2",
    "GR_TP3",
    "XIE_LINEAR_FOREST",
    "JIE_KP3_TP2",
    "SPANNING_KP3_TP2",
];

impl FormulaFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            FormulaFamily::Path { .. } => "PATH",
            FormulaFamily::Cycle { .. } => "CYCLE",
            FormulaFamily::Matching { .. } => "MATCHING",
            FormulaFamily::P3P2Small { .. } => "P3_P2_SMALL",
            FormulaFamily::P3Tp2 { .. } => "P3_TP2",
            FormulaFamily::TwoP3Tp2 { .. } => "TWO_P3_TP2",
            FormulaFamily::GrPk1Tp3 { .. } => "GR_PK1_TP3",
            FormulaFamily::GrKp3Tp2 { .. } => "GR_KP3_TP2",
            FormulaFamily::GrP2Tp3 { .. } => "GR_P2_TP3",
            FormulaFamily::GrP3Tp2 { .. } => "GR_P3_TP2",
            FormulaFamily::GrP4Tp2 { .. } => "GR_P4_TP2",
            FormulaFamily::GrC3Tp2 { .. } => "GR_C3_TP2",
            FormulaFamily::GrTp3 { .. } => "GR_TP3",
            FormulaFamily::XieLinearForest { .. } => "XIE_LINEAR_FOREST",
            FormulaFamily::JieKp3Tp2 { .. } => "JIE_KP3_TP2",
            FormulaFamily::SpanningKp3Tp2 { .. } => "SPANNING_KP3_TP2",
        }
    }

    /// Known family tags, for help output.
    pub fn known_tags() -> &'static [&'static str] {
        TAGS
    }

    /// Vertices of one copy of the pattern (used for default `n_min`).
    pub fn pattern_vertices(&self) -> u64 {
        match *self {
            FormulaFamily::Path { t, .. } => t,
            FormulaFamily::Cycle { t, .. } => t,
            FormulaFamily::Matching { t, .. } => 2 * t,
            FormulaFamily::P3P2Small { t, .. } => 3 + 2 * t,
            FormulaFamily::P3Tp2 { t, .. } => 3 + 2 * t,
            FormulaFamily::TwoP3Tp2 { t, .. } => 6 + 2 * t,
            FormulaFamily::GrPk1Tp3 { k, t, .. } => (k + 1) + 3 * t,
            FormulaFamily::GrKp3Tp2 { k, t, .. } => 3 * k + 2 * t,
            FormulaFamily::GrP2Tp3 { t, .. } => 2 + 3 * t,
            FormulaFamily::GrP3Tp2 { t, .. } => 3 + 2 * t,
            FormulaFamily::GrP4Tp2 { t, .. } => 4 + 2 * t,
            FormulaFamily::GrC3Tp2 { t, .. } => 3 + 2 * t,
            FormulaFamily::GrTp3 { t, .. } => 3 * t,
            FormulaFamily::XieLinearForest { ref paths, .. } => paths.iter().sum(),
            FormulaFamily::JieKp3Tp2 { k, t, .. } => 3 * k + 2 * t,
            FormulaFamily::SpanningKp3Tp2 { k, t } => 3 * k + 2 * t,
        }
    }

    pub fn evaluate(&self) -> FormulaResult {
        let tag = self.tag();
        if let Some(bad) = self.oversized_param() {
            return FormulaResult::out(tag, format!("parameter {bad} exceeds supported range"));
        }
        match *self {
            FormulaFamily::Path { n, t, n_min } => eval_path(n, t, n_min),
            FormulaFamily::Cycle { n, t } => eval_cycle(n, t),
            FormulaFamily::Matching { n, t } => eval_matching(n, t),
            FormulaFamily::P3P2Small { n, t } => eval_p3p2_small(n, t),
            FormulaFamily::P3Tp2 { n, t } => eval_p3_tp2(n, t),
            FormulaFamily::TwoP3Tp2 { n, t } => eval_two_p3_tp2(n, t),
            FormulaFamily::GrPk1Tp3 { n, k, t, n_min } => {
                if k < 3 {
                    return FormulaResult::out(tag, "requires k >= 3");
                }
                if t < 1 {
                    return FormulaResult::out(tag, "requires t >= 1");
                }
                self.gr_value(n, n_min, |n| {
                    let m = i128::from(t) + i128::from(k) / 2;
                    let v = exact_half((m - 1) * (2 * n - m)) + 1 + i128::from(k % 2);
                    (v, None)
                })
            }
            FormulaFamily::GrKp3Tp2 { n, k, t, n_min } => {
                if k < 2 || t < 2 {
                    return FormulaResult::out(tag, "requires k >= 2 and t >= 2");
                }
                self.gr_value(n, n_min, |n| {
                    let s = i128::from(k + t);
                    (exact_half((s - 2) * (2 * n - s + 1)) + 1, None)
                })
            }
            FormulaFamily::GrP2Tp3 { n, t, n_min } | FormulaFamily::GrTp3 { n, t, n_min } => {
                if t < 1 {
                    return FormulaResult::out(tag, "requires t >= 1");
                }
                self.gr_value(n, n_min, |n| {
                    let t = i128::from(t);
                    (exact_half((t - 1) * (2 * n - t)) + 1, None)
                })
            }
            FormulaFamily::GrP3Tp2 { n, t, n_min } => {
                if t < 2 {
                    return FormulaResult::out(tag, "requires t >= 2");
                }
                self.gr_value(n, n_min, |n| {
                    let t = i128::from(t);
                    (exact_half((t - 1) * (2 * n - t)) + 1, None)
                })
            }
            FormulaFamily::GrP4Tp2 { n, t, n_min } | FormulaFamily::GrC3Tp2 { n, t, n_min } => {
                if t < 1 {
                    return FormulaResult::out(tag, "requires t >= 1");
                }
                self.gr_value(n, n_min, |n| {
                    let t = i128::from(t);
                    (exact_half(t * (2 * n - t - 1)) + 1, None)
                })
            }
            FormulaFamily::XieLinearForest {
                n,
                ref paths,
                n_min,
            } => eval_xie(n, paths, n_min),
            FormulaFamily::JieKp3Tp2 { n, k, t } => eval_jie(n, k, t),
            FormulaFamily::SpanningKp3Tp2 { k, t } => eval_spanning(k, t),
        }
    }

    fn oversized_param(&self) -> Option<u64> {
        let mut params: Vec<u64> = Vec::new();
        match *self {
            FormulaFamily::Path { n, t, n_min }
            | FormulaFamily::GrP2Tp3 { n, t, n_min }
            | FormulaFamily::GrP3Tp2 { n, t, n_min }
            | FormulaFamily::GrP4Tp2 { n, t, n_min }
            | FormulaFamily::GrC3Tp2 { n, t, n_min }
            | FormulaFamily::GrTp3 { n, t, n_min } => {
                params.extend([n, t]);
                params.extend(n_min);
            }
            FormulaFamily::Cycle { n, t }
            | FormulaFamily::Matching { n, t }
            | FormulaFamily::P3P2Small { n, t }
            | FormulaFamily::P3Tp2 { n, t }
            | FormulaFamily::TwoP3Tp2 { n, t } => params.extend([n, t]),
            FormulaFamily::GrPk1Tp3 { n, k, t, n_min } | FormulaFamily::GrKp3Tp2 { n, k, t, n_min } => {
                params.extend([n, k, t]);
                params.extend(n_min);
            }
            FormulaFamily::XieLinearForest {
                n,
                ref paths,
                n_min,
            } => {
                params.push(n);
                params.extend(paths.iter().copied());
                params.extend(n_min);
            }
            FormulaFamily::JieKp3Tp2 { n, k, t } => params.extend([n, k, t]),
            FormulaFamily::SpanningKp3Tp2 { k, t } => params.extend([k, t]),
        }
        params.into_iter().find(|&p| p > PARAM_LIMIT)
    }

    /// Shared skeleton for the "sufficiently large n" families.
    fn gr_value(
        &self,
        n: u64,
        n_min: Option<u64>,
        f: impl Fn(i128) -> (i128, Option<&'static str>),
    ) -> FormulaResult {
        let cutoff = n_min.unwrap_or(3 * self.pattern_vertices());
        if n < cutoff {
            return FormulaResult::out(
                self.tag(),
                format!("n = {n} below the sufficiently-large cutoff {cutoff} (pass n_min to override)"),
            );
        }
        let (v, branch) = f(i128::from(n));
        FormulaResult::ok(self.tag(), v, branch)
    }
}

fn eval_path(n: u64, t: u64, n_min: Option<u64>) -> FormulaResult {
    const TAG: &str = "PATH";
    if t < 3 {
        return FormulaResult::out(
            TAG,
            "requires t >= 3 (the printed expression goes negative at t = 2)",
        );
    }
    let cutoff = n_min.unwrap_or(3 * t);
    if n < cutoff {
        return FormulaResult::out(
            TAG,
            format!("n = {n} below the sufficiently-large cutoff {cutoff} (pass n_min to override)"),
        );
    }
    let n = i128::from(n);
    let m = (i128::from(t) - 1) / 2;
    let even = t.is_multiple_of(2);
    let v = binom2(m) + (m - 1) * (n - m + 1) + 1 + i128::from(even);
    FormulaResult::ok(TAG, v, Some(if even { "even_t" } else { "odd_t" }))
}

fn eval_cycle(n: u64, t: u64) -> FormulaResult {
    const TAG: &str = "CYCLE";
    if t < 3 {
        return FormulaResult::out(TAG, "requires t >= 3");
    }
    if n < t {
        return FormulaResult::out(TAG, "requires n >= t");
    }
    let (n, t) = (i128::from(n), i128::from(t));
    let q = n.div_euclid(t - 1);
    let r = n.rem_euclid(t - 1);
    let ceil = q + i128::from(r > 0);
    FormulaResult::ok(TAG, binom2(t - 1) * q + ceil + binom2(r), None)
}

fn eval_matching(n: u64, t: u64) -> FormulaResult {
    const TAG: &str = "MATCHING";
    if t < 2 {
        return FormulaResult::out(TAG, "requires t >= 2");
    }
    if n < 2 * t {
        return FormulaResult::out(TAG, "a t-matching needs n >= 2t");
    }
    let (ni, ti) = (i128::from(n), i128::from(t));
    if n == 2 * t {
        return if t >= 7 {
            FormulaResult::ok(TAG, (ti - 2) * (2 * ti - 3) + 2, Some("equal_n_large_t"))
        } else if t >= 3 {
            FormulaResult::ok(
                TAG,
                exact_half((ti - 2) * (3 * ti + 1)) + 1,
                Some("equal_n_small_t"),
            )
        } else {
            FormulaResult::out(TAG, "n = 2t is covered only for t >= 3")
        };
    }
    // n >= 2t + 1: two branches meeting at 2n = 5t - 7 (equal values there).
    if 2 * ni <= 5 * ti - 7 {
        FormulaResult::ok(TAG, (ti - 2) * (2 * ti - 3) + 1, Some("general_flat"))
    } else {
        FormulaResult::ok(
            TAG,
            exact_half((ti - 2) * (2 * ni - ti + 1)) + 1,
            Some("general_linear"),
        )
    }
}

fn eval_p3p2_small(n: u64, t: u64) -> FormulaResult {
    const TAG: &str = "P3_P2_SMALL";
    match t {
        1 if n >= 5 => FormulaResult::ok(TAG, 2, Some("single_p2")),
        1 => FormulaResult::out(TAG, "t = 1 requires n >= 5"),
        2 if n >= 7 => FormulaResult::ok(TAG, i128::from(n), Some("double_p2")),
        2 => FormulaResult::out(TAG, "t = 2 requires n >= 7"),
        _ => FormulaResult::out(TAG, "covers t = 1 and t = 2 only"),
    }
}

fn eval_p3_tp2(n: u64, t: u64) -> FormulaResult {
    const TAG: &str = "P3_TP2";
    if t < 2 {
        return FormulaResult::out(TAG, "requires t >= 2");
    }
    if n < 2 * t + 3 {
        return FormulaResult::out(TAG, "requires n >= 2t + 3");
    }
    let (ni, ti) = (i128::from(n), i128::from(t));
    // mu = (5t+2)/2 + 1/(t-1), handled as the exact fraction over 2(t-1).
    let num = (5 * ti + 2) * (ti - 1) + 2;
    let den = 2 * (ti - 1);
    if ni <= num.div_euclid(den) {
        FormulaResult::ok(TAG, ti * (2 * ti - 1) + 1, Some("flat"))
    } else {
        FormulaResult::ok(TAG, exact_half((ti - 1) * (2 * ni - ti)) + 1, Some("linear"))
    }
}

fn eval_two_p3_tp2(n: u64, t: u64) -> FormulaResult {
    const TAG: &str = "TWO_P3_TP2";
    if t < 2 {
        return FormulaResult::out(TAG, "requires t >= 2");
    }
    if n < 2 * t + 7 {
        return FormulaResult::out(TAG, "requires n >= 2t + 7");
    }
    let (ni, ti) = (i128::from(n), i128::from(t));
    // nu = (5t+11)/2 + 3/t over the common denominator 2t.
    let num = (5 * ti + 11) * ti + 6;
    let den = 2 * ti;
    if ni <= num.div_euclid(den) {
        FormulaResult::ok(TAG, (ti + 1) * (2 * ti + 3) + 1, Some("flat"))
    } else {
        FormulaResult::ok(TAG, exact_half(ti * (2 * ni - ti - 1)) + 1, Some("linear"))
    }
}

fn eval_xie(n: u64, paths: &[u64], n_min: Option<u64>) -> FormulaResult {
    const TAG: &str = "XIE_LINEAR_FOREST";
    if paths.len() < 2 {
        return FormulaResult::out(TAG, "requires at least two path components");
    }
    if paths.iter().any(|&p| p < 2) {
        return FormulaResult::out(TAG, "every component needs at least 2 vertices");
    }
    let evens = paths.iter().filter(|&&p| p % 2 == 0).count();
    if evens == 0 {
        return FormulaResult::out(TAG, "requires at least one even component");
    }
    let total: u64 = paths.iter().sum();
    if n == total {
        return FormulaResult::out(TAG, "the spanning point n = sum(p_i) is excluded");
    }
    let cutoff = n_min.unwrap_or(3 * total);
    if n < cutoff {
        return FormulaResult::out(
            TAG,
            format!("n = {n} below the sufficiently-large cutoff {cutoff} (pass n_min to override)"),
        );
    }
    let l: i128 = paths.iter().map(|&p| i128::from(p) / 2).sum();
    let eps = i128::from(evens == 1);
    let v = binom2(l - 2) + (l - 2) * (i128::from(n) - l + 2) + 1 + eps;
    FormulaResult::ok(TAG, v, Some(if evens == 1 { "single_even" } else { "multi_even" }))
}

fn eval_jie(n: u64, k: u64, t: u64) -> FormulaResult {
    const TAG: &str = "JIE_KP3_TP2";
    if k < 2 {
        return FormulaResult::out(TAG, "requires k >= 2");
    }
    let (ni, ki, ti) = (i128::from(n), i128::from(k), i128::from(t));
    // t >= (k^2 - k + 4)/2, compared exactly.
    if 2 * ti < ki * ki - ki + 4 {
        return FormulaResult::out(TAG, "requires t >= (k^2 - k + 4)/2");
    }
    if ni < 3 * ki + 2 * ti + 1 {
        return FormulaResult::out(TAG, "requires n >= 3k + 2t + 1");
    }
    // lambda = (9k+5t-7)/2 + k(k+1)/(2(k+t-2)) over 2(k+t-2).
    let den = 2 * (ki + ti - 2);
    let num = (9 * ki + 5 * ti - 7) * (ki + ti - 2) + ki * (ki + 1);
    if ni <= num.div_euclid(den) {
        FormulaResult::ok(
            TAG,
            exact_half((3 * ki + 2 * ti - 3) * (3 * ki + 2 * ti - 4)) + 1,
            Some("flat"),
        )
    } else {
        FormulaResult::ok(
            TAG,
            exact_half((ki + ti - 2) * (2 * ni - ki - ti + 1)) + 1,
            Some("linear"),
        )
    }
}

fn eval_spanning(k: u64, t: u64) -> FormulaResult {
    const TAG: &str = "SPANNING_KP3_TP2";
    if k < 1 {
        return FormulaResult::out(TAG, "requires k >= 1");
    }
    if t < 2 {
        return FormulaResult::out(TAG, "requires t >= 2");
    }
    let m = 3 * i128::from(k) + 2 * i128::from(t);
    FormulaResult::ok(TAG, exact_half((m - 3) * (m - 4)) + 1, None)
}

/// Thin wrapper for the most-used value: the spanning formula at `n = 3k+2t`.
pub fn spanning_value(k: u64, t: u64) -> Option<u64> {
    FormulaFamily::SpanningKp3Tp2 { k, t }.evaluate().value()
}

// ---------------------------------------------------------------------------
// Parameter-string parsing (shared by the CLI and the crosscheck suite)
// ---------------------------------------------------------------------------

impl FormulaFamily {
    /// Builds a family from a tag plus `key=value` pairs, e.g.
    /// `("P3_TP2", "n=9,t=3")` or `("XIE_LINEAR_FOREST", "n=30,paths=4+2")`.
    pub fn parse(tag: &str, params: &str) -> Result<Self> {
        let mut n: Option<u64> = None;
        let mut k: Option<u64> = None;
        let mut t: Option<u64> = None;
        let mut n_min: Option<u64> = None;
        let mut paths: Option<Vec<u64>> = None;
        for piece in params.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = piece
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{piece}`")))?;
            let key = key.trim();
            let value = value.trim();
            let parse_u64 = |v: &str| {
                v.parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad value for `{key}`: {e}")))
            };
            match key {
                "n" => n = Some(parse_u64(value)?),
                "k" => k = Some(parse_u64(value)?),
                "t" => t = Some(parse_u64(value)?),
                "n_min" => n_min = Some(parse_u64(value)?),
                "paths" => {
                    paths = Some(
                        value
                            .split('+')
                            .map(|p| {
                                p.trim().parse::<u64>().map_err(|e| {
                                    Error::Parse(format!("bad path length `{p}`: {e}"))
                                })
                            })
                            .collect::<Result<Vec<u64>>>()?,
                    )
                }
                other => return Err(Error::Parse(format!("unknown parameter `{other}`"))),
            }
        }
        let need = |x: Option<u64>, name: &str| {
            x.ok_or_else(|| Error::Parse(format!("family {tag} needs parameter `{name}`")))
        };
        let fam = match tag {
            "PATH" => FormulaFamily::Path { n: need(n, "n")?, t: need(t, "t")?, n_min },
            "CYCLE" => FormulaFamily::Cycle { n: need(n, "n")?, t: need(t, "t")? },
            "MATCHING" => FormulaFamily::Matching { n: need(n, "n")?, t: need(t, "t")? },
            "P3_P2_SMALL" => FormulaFamily::P3P2Small { n: need(n, "n")?, t: need(t, "t")? },
            "P3_TP2" => FormulaFamily::P3Tp2 { n: need(n, "n")?, t: need(t, "t")? },
            "TWO_P3_TP2" => FormulaFamily::TwoP3Tp2 { n: need(n, "n")?, t: need(t, "t")? },
            "GR_PK1_TP3" => FormulaFamily::GrPk1Tp3 {
                n: need(n, "n")?,
                k: need(k, "k")?,
                t: need(t, "t")?,
                n_min,
            },
            "GR_KP3_TP2" => FormulaFamily::GrKp3Tp2 {
                n: need(n, "n")?,
                k: need(k, "k")?,
                t: need(t, "t")?,
                n_min,
            },
            "GR_P2_TP3" => FormulaFamily::GrP2Tp3 { n: need(n, "n")?, t: need(t, "t")?, n_min },
            "GR_P3_TP2" => FormulaFamily::GrP3Tp2 { n: need(n, "n")?, t: need(t, "t")?, n_min },
            "GR_P4_TP2" => FormulaFamily::GrP4Tp2 { n: need(n, "n")?, t: need(t, "t")?, n_min },
            "GR_C3_TP2" => FormulaFamily::GrC3Tp2 { n: need(n, "n")?, t: need(t, "t")?, n_min },
            "GR_TP3" => FormulaFamily::GrTp3 { n: need(n, "n")?, t: need(t, "t")?, n_min },
            "XIE_LINEAR_FOREST" => FormulaFamily::XieLinearForest {
                n: need(n, "n")?,
                paths: paths.ok_or_else(|| {
                    Error::Parse("family XIE_LINEAR_FOREST needs `paths` (e.g. paths=4+2)".into())
                })?,
                n_min,
            },
            "JIE_KP3_TP2" => FormulaFamily::JieKp3Tp2 {
                n: need(n, "n")?,
                k: need(k, "k")?,
                t: need(t, "t")?,
            },
            "SPANNING_KP3_TP2" => {
                FormulaFamily::SpanningKp3Tp2 { k: need(k, "k")?, t: need(t, "t")? }
            }
            other => {
                return Err(Error::Parse(format!(
                    "unknown family `{other}` (expected one of {})",
                    TAGS.join(", ")
                )))
            }
        };
        Ok(fam)
    }
}

// ---------------------------------------------------------------------------
// Internal cross-family identities
// ---------------------------------------------------------------------------

/// One identity comparison between two independently evaluated formulas.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityRow {
    pub id: String,
    pub lhs: u64,
    pub rhs: u64,
    pub pass: bool,
}

/// Checks that the spanning formula at `k = 1` agrees with the `P3 ∪ tP2`
/// family evaluated at its own spanning point `n = 2t + 3`, for every
/// `t in 2..=t_max`, plus the `t = 2` corner against the small-forest value.
pub fn consistency_report(t_max: u64) -> Vec<IdentityRow> {
    let mut rows = Vec::new();
    for t in 2..=t_max {
        let lhs = spanning_value(1, t).expect("in domain");
        let rhs = FormulaFamily::P3Tp2 { n: 2 * t + 3, t }
            .evaluate()
            .value()
            .expect("n = 2t+3 is in domain");
        rows.push(IdentityRow {
            id: format!("spanning(1,{t}) == p3_tp2({},{t})", 2 * t + 3),
            lhs,
            rhs,
            pass: lhs == rhs,
        });
    }
    if t_max >= 2 {
        let lhs = spanning_value(1, 2).expect("in domain");
        let rhs = FormulaFamily::P3P2Small { n: 7, t: 2 }
            .evaluate()
            .value()
            .expect("n = 7 is in domain");
        rows.push(IdentityRow {
            id: "spanning(1,2) == p3_p2_small(7)".into(),
            lhs,
            rhs,
            pass: lhs == rhs,
        });
    }
    rows
}

fn binom2(x: i128) -> i128 {
    if x < 2 {
        0
    } else {
        x * (x - 1) / 2
    }
}

/// Exact halving; the in-domain products here are provably even, so a
/// remainder means a bug, not an input problem.
fn exact_half(x: i128) -> i128 {
    assert!(x % 2 == 0, "half of odd quantity {x} requested");
    x / 2
}
