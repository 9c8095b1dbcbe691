//! Seeded randomized campaigns: detector-vs-enumeration equivalence and
//! threshold extraction trials.
//!
//! Every trial derives its own RNG seed by hashing (master seed, host size,
//! shape, round), so any single trial can be replayed in isolation and the
//! campaign is independent of iteration order, thread pools, or prior
//! trials. Reports capture witnesses via a running digest and render to a
//! canonical string, so two runs can be compared byte-for-byte — that is how
//! thread-count independence is asserted.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::detector::{detect_by_enumeration, find_rainbow_forest, DetectorOptions};
use crate::error::Result;
use crate::exec::Parallelism;
use crate::finder::{class_threshold, find_constructive, FinderOptions, LevelReport};
use crate::model::{edge_count, random_surjective, ForestShape};

/// FNV-1a over the trial coordinates; stable across platforms and releases.
pub fn trial_seed(master: u64, n: usize, k: usize, t: usize, round: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for word in [master, n as u64, k as u64, t as u64, round as u64] {
        for byte in word.to_le_bytes() {
            h ^= u64::from(byte);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

fn digest_str(digest: &mut u64, s: &str) {
    for byte in s.as_bytes() {
        *digest ^= u64::from(*byte);
        *digest = digest.wrapping_mul(0x0000_0100_0000_01b3);
    }
}

// ---------------------------------------------------------------------------
// Detector vs. exhaustive enumeration
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct EquivalenceConfig {
    pub master_seed: u64,
    /// Trials per (host size, shape) combination.
    pub rounds: usize,
    pub sizes: Vec<usize>,
    pub shapes: Vec<(usize, usize)>,
    pub parallelism: Parallelism,
}

impl Default for EquivalenceConfig {
    fn default() -> Self {
        EquivalenceConfig {
            master_seed: 0xa5c3_9d01,
            rounds: 500,
            sizes: vec![5, 6, 7, 8],
            shapes: vec![(1, 1), (1, 2), (0, 3), (2, 1)],
            parallelism: Parallelism::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceCombo {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub trials: usize,
    pub found: usize,
    pub absent: usize,
    /// Trials where the shape does not fit the host and both sides refused.
    pub infeasible: usize,
    pub disagreements: usize,
    /// Running hash of every witness (and every absence) in trial order.
    pub witness_digest: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub combos: Vec<EquivalenceCombo>,
    pub total_trials: usize,
    pub disagreements: usize,
}

impl EquivalenceReport {
    /// Canonical rendering; byte equality of two reports is the equivalence
    /// criterion across thread counts.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "detector-vs-enumeration equivalence").unwrap();
        writeln!(
            out,
            "{:>3} {:>7} {:>7} {:>6} {:>7} {:>10} {:>9} {:>16}",
            "n", "shape", "trials", "found", "absent", "infeasible", "disagree", "digest"
        )
        .unwrap();
        for c in &self.combos {
            writeln!(
                out,
                "{:>3} {:>7} {:>7} {:>6} {:>7} {:>10} {:>9} {:>16x}",
                c.n,
                format!("{}P3+{}P2", c.k, c.t),
                c.trials,
                c.found,
                c.absent,
                c.infeasible,
                c.disagreements,
                c.witness_digest
            )
            .unwrap();
        }
        writeln!(
            out,
            "total {} trials, {} disagreements",
            self.total_trials, self.disagreements
        )
        .unwrap();
        out
    }
}

/// Runs the full grid; never panics on disagreement — counts it, so the
/// caller can assert on (and report) the totals.
pub fn run_equivalence(config: &EquivalenceConfig) -> Result<EquivalenceReport> {
    let mut combos = Vec::new();
    for &n in &config.sizes {
        for &(k, t) in &config.shapes {
            let shape = ForestShape::new(k, t)?;
            let mut combo = EquivalenceCombo {
                n,
                k,
                t,
                trials: config.rounds,
                found: 0,
                absent: 0,
                infeasible: 0,
                disagreements: 0,
                witness_digest: 0xcbf2_9ce4_8422_2325,
            };
            for round in 0..config.rounds {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(trial_seed(config.master_seed, n, k, t, round));
                let classes = rng.gen_range(1..=edge_count(n));
                let coloring = random_surjective(n, classes, &mut rng)?;
                if shape.vertex_demand() > n {
                    // Both sides must refuse oversized shapes.
                    let naive_err = detect_by_enumeration(&coloring, shape).is_err();
                    let fast_err = find_rainbow_forest(
                        &coloring,
                        shape,
                        &DetectorOptions {
                            parallelism: config.parallelism,
                            ..DetectorOptions::default()
                        },
                    )
                    .is_err();
                    if naive_err && fast_err {
                        combo.infeasible += 1;
                        digest_str(&mut combo.witness_digest, "infeasible");
                    } else {
                        combo.disagreements += 1;
                    }
                    continue;
                }
                let naive = detect_by_enumeration(&coloring, shape)?;
                let fast = find_rainbow_forest(
                    &coloring,
                    shape,
                    &DetectorOptions {
                        parallelism: config.parallelism,
                        ..DetectorOptions::default()
                    },
                )?;
                if !fast.complete || naive != fast.witness {
                    combo.disagreements += 1;
                    continue;
                }
                match &fast.witness {
                    Some(w) => {
                        combo.found += 1;
                        digest_str(
                            &mut combo.witness_digest,
                            &serde_json::to_string(w).expect("witnesses serialize"),
                        );
                    }
                    None => {
                        combo.absent += 1;
                        digest_str(&mut combo.witness_digest, "absent");
                    }
                }
            }
            combos.push(combo);
        }
    }
    let total_trials = combos.iter().map(|c| c.trials).sum();
    let disagreements = combos.iter().map(|c| c.disagreements).sum();
    Ok(EquivalenceReport {
        combos,
        total_trials,
        disagreements,
    })
}

// ---------------------------------------------------------------------------
// Threshold extraction trials
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ExtractionConfig {
    pub master_seed: u64,
    pub rounds: usize,
    pub shapes: Vec<(usize, usize)>,
    pub parallelism: Parallelism,
}

impl Default for ExtractionConfig {
    fn default() -> Self {
        ExtractionConfig {
            master_seed: 0xbead_cafe,
            rounds: 200,
            shapes: vec![(1, 2), (1, 3), (2, 2), (2, 3)],
            parallelism: Parallelism::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtractionCombo {
    pub k: usize,
    pub t: usize,
    pub n: usize,
    pub classes: usize,
    pub trials: usize,
    pub valid_witnesses: usize,
    pub fallbacks: usize,
    /// radius -> number of repair levels completed at that radius.
    pub radius_histogram: BTreeMap<usize, usize>,
    pub witness_digest: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtractionReport {
    pub combos: Vec<ExtractionCombo>,
    pub total_trials: usize,
    pub invalid: usize,
    pub fallbacks: usize,
}

impl ExtractionReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "threshold extraction trials").unwrap();
        writeln!(
            out,
            "{:>7} {:>3} {:>8} {:>7} {:>6} {:>9} {:>24} {:>16}",
            "shape", "n", "classes", "trials", "valid", "fallbacks", "radius histogram", "digest"
        )
        .unwrap();
        for c in &self.combos {
            let hist = c
                .radius_histogram
                .iter()
                .map(|(r, count)| format!("{r}:{count}"))
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(
                out,
                "{:>7} {:>3} {:>8} {:>7} {:>6} {:>9} {:>24} {:>16x}",
                format!("{}P3+{}P2", c.k, c.t),
                c.n,
                c.classes,
                c.trials,
                c.valid_witnesses,
                c.fallbacks,
                hist,
                c.witness_digest
            )
            .unwrap();
        }
        writeln!(
            out,
            "total {} trials, {} invalid, {} fallbacks",
            self.total_trials, self.invalid, self.fallbacks
        )
        .unwrap();
        out
    }
}

/// Random colorings with exactly the guaranteed class count — the hardest
/// admissible inputs — must all yield a valid spanning witness.
pub fn run_extraction(config: &ExtractionConfig) -> Result<ExtractionReport> {
    let mut combos = Vec::new();
    for &(k, t) in &config.shapes {
        let shape = ForestShape::new(k, t)?;
        let n = shape.vertex_demand();
        let classes = class_threshold(n);
        let mut combo = ExtractionCombo {
            k,
            t,
            n,
            classes,
            trials: config.rounds,
            valid_witnesses: 0,
            fallbacks: 0,
            radius_histogram: BTreeMap::new(),
            witness_digest: 0xcbf2_9ce4_8422_2325,
        };
        for round in 0..config.rounds {
            let mut rng =
                ChaCha8Rng::seed_from_u64(trial_seed(config.master_seed, n, k, t, round));
            let coloring = random_surjective(n, classes, &mut rng)?;
            let out = find_constructive(
                &coloring,
                k,
                t,
                &FinderOptions {
                    parallelism: config.parallelism,
                },
            )?;
            if out.witness.validate(&coloring, shape).is_ok() {
                combo.valid_witnesses += 1;
            }
            combo.fallbacks += out.fallback_count();
            for level in &out.levels {
                if let LevelReport::Repair { radius, .. } = level {
                    *combo.radius_histogram.entry(*radius).or_insert(0) += 1;
                }
            }
            digest_str(
                &mut combo.witness_digest,
                &serde_json::to_string(&out.witness).expect("witnesses serialize"),
            );
        }
        combos.push(combo);
    }
    let total_trials = combos.iter().map(|c| c.trials).sum();
    let invalid = combos
        .iter()
        .map(|c| c.trials - c.valid_witnesses)
        .sum();
    let fallbacks = combos.iter().map(|c| c.fallbacks).sum();
    Ok(ExtractionReport {
        combos,
        total_trials,
        invalid,
        fallbacks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec;

    fn small_equivalence() -> EquivalenceConfig {
        EquivalenceConfig {
            rounds: 30,
            ..EquivalenceConfig::default()
        }
    }

    fn small_extraction() -> ExtractionConfig {
        ExtractionConfig {
            rounds: 15,
            ..ExtractionConfig::default()
        }
    }

    #[test]
    fn trial_seeds_are_stable_and_distinct() {
        assert_eq!(trial_seed(1, 2, 3, 4, 5), trial_seed(1, 2, 3, 4, 5));
        let mut seeds: Vec<u64> = (0..100).map(|r| trial_seed(9, 7, 1, 2, r)).collect();
        seeds.sort_unstable();
        seeds.dedup();
        assert_eq!(seeds.len(), 100);
        // Frozen so the replay coordinates in reports stay meaningful.
        assert_eq!(trial_seed(0, 0, 0, 0, 0), 0x40d6_9e0c_f0f6_5c45);
    }

    #[test]
    fn equivalence_campaign_agrees_everywhere() {
        let report = run_equivalence(&small_equivalence()).unwrap();
        assert_eq!(report.disagreements, 0);
        assert_eq!(report.total_trials, 16 * 30);
        // The grid must exercise all three outcomes somewhere.
        assert!(report.combos.iter().any(|c| c.found > 0));
        assert!(report.combos.iter().any(|c| c.absent > 0));
        assert!(report.combos.iter().any(|c| c.infeasible == c.trials));
    }

    #[test]
    fn extraction_campaign_never_falls_back() {
        let report = run_extraction(&small_extraction()).unwrap();
        assert_eq!(report.invalid, 0);
        assert_eq!(report.fallbacks, 0);
        assert_eq!(report.total_trials, 4 * 15);
    }

    #[test]
    fn reports_are_thread_count_independent() {
        let eq_cfg = EquivalenceConfig {
            rounds: 10,
            parallelism: Parallelism::Rayon,
            ..EquivalenceConfig::default()
        };
        let ex_cfg = ExtractionConfig {
            rounds: 5,
            parallelism: Parallelism::Rayon,
            ..ExtractionConfig::default()
        };
        let one = exec::with_thread_count(1, || {
            (
                run_equivalence(&eq_cfg).unwrap().render_text(),
                run_extraction(&ex_cfg).unwrap().render_text(),
            )
        });
        let eight = exec::with_thread_count(8, || {
            (
                run_equivalence(&eq_cfg).unwrap().render_text(),
                run_extraction(&ex_cfg).unwrap().render_text(),
            )
        });
        assert_eq!(one, eight);
    }
}
