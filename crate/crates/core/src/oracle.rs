//! Exhaustive maximization of the number of color classes an edge coloring
//! of `K_n` can have while containing no rainbow copy of a target pattern.
//!
//! The search enumerates colorings as restricted-growth vectors over the
//! global edge order (first edge gets color 0; each later edge may reuse any
//! earlier color or open exactly one new class), so every set partition of
//! the edges is visited once with no relabeled duplicates. Copies of the
//! pattern are precomputed and bucketed by their largest edge index, so each
//! assignment is checked only against copies it completes — an `O(copies at
//! this edge)` incremental rainbow test.
//!
//! Determinism: the search is sequential by design, and an improvement is
//! recorded only when strictly better than the incumbent, so the reported
//! extremal coloring is the lexicographically least optimal vector (or the
//! caller's seed, verbatim, if nothing beats it).
//!
//! Two prunes, both optional so they can be audited against the plain walk:
//!
//! * incumbent bound: a prefix with `classes + edges_left <= best` cannot
//!   improve;
//! * triangle symmetry break: when the first two edges `(0,1)` and `(0,2)`
//!   differ in color, the edge `(1,2)` may not repeat either one. Any
//!   coloring whose triangle `{0,1,2}` has exactly two equal edge colors can
//!   be relabeled, permuting only `{0,1,2}` (a `K_n` automorphism, so class
//!   counts and rainbow-freeness survive), so that the equal pair sits on
//!   `(0,1)`/`(0,2)`; colorings with that triangle all-equal or all-distinct
//!   pass untouched. The optimal value is therefore preserved, though the
//!   reported extremal vector may differ from the unrestricted one.

use serde::Serialize;

use crate::detector::all_copies;
use crate::error::{Error, Result};
use crate::model::{edge_count, edge_index, Color, EdgeColoring, ForestShape};

/// Largest `n` the oracle will attempt without an explicit node budget.
pub const UNBUDGETED_N_CAP: usize = 7;

#[derive(Clone, Debug, Default)]
pub struct OracleConfig {
    /// Maximum number of color assignments to try before giving up with
    /// [`ARStatus::LowerBoundOnly`].
    pub budget: Option<u64>,
    /// Known-good rainbow-free coloring: becomes the starting incumbent and
    /// is returned unchanged if the search finds nothing strictly better.
    pub seed: Option<EdgeColoring>,
    /// Disable the triangle symmetry break (on by default).
    pub no_symmetry_break: bool,
    /// Disable incumbent pruning (on by default); with both prunes off and
    /// nothing forbidden, the walk visits every set partition of the edges.
    pub no_incumbent_pruning: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ARStatus {
    /// The whole space was exhausted: `value` is the exact maximum (or there
    /// is provably no rainbow-free coloring at all, when `value` is absent).
    Proven,
    /// The budget ran out: `value` is only a lower bound.
    LowerBoundOnly,
}

#[derive(Clone, Debug)]
pub struct ARResult {
    /// Best class count found; `None` when no rainbow-free coloring was
    /// reached (definitively none exist if `status` is `Proven`).
    pub value: Option<usize>,
    /// A coloring attaining `value`.
    pub extremal: Option<EdgeColoring>,
    pub status: ARStatus,
    /// Color assignments tried.
    pub nodes: u64,
    /// Complete colorings visited.
    pub leaves: u64,
}

/// Maximum class count over colorings of `K_n` with no rainbow `shape`.
pub fn compute_ar(n: usize, shape: ForestShape, config: &OracleConfig) -> Result<ARResult> {
    let copies = if shape.vertex_demand() <= n {
        all_copies(n, shape)?
    } else {
        Vec::new()
    };
    if let Some(seed) = &config.seed {
        use crate::detector::detect_by_enumeration;
        if let Some(w) = detect_by_enumeration(seed, shape)? {
            return Err(Error::InvalidSubset {
                reason: format!(
                    "seed coloring already contains a rainbow copy on {:?}",
                    w.edges()
                ),
            });
        }
    }
    run(n, copies, config)
}

/// Maximum class count over colorings of `K_n` with no rainbow triangle.
pub fn compute_ar_triangle(n: usize, config: &OracleConfig) -> Result<ARResult> {
    let mut copies = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                copies.push(vec![
                    edge_index(a, b, n),
                    edge_index(a, c, n),
                    edge_index(b, c, n),
                ]);
            }
        }
    }
    if let Some(seed) = &config.seed {
        for tri in &copies {
            let cols = [seed.color_at(tri[0]), seed.color_at(tri[1]), seed.color_at(tri[2])];
            if cols[0] != cols[1] && cols[0] != cols[2] && cols[1] != cols[2] {
                return Err(Error::InvalidSubset {
                    reason: "seed coloring already contains a rainbow triangle".into(),
                });
            }
        }
    }
    run(n, copies, config)
}

fn run(n: usize, copies: Vec<Vec<usize>>, config: &OracleConfig) -> Result<ARResult> {
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    if n > UNBUDGETED_N_CAP && config.budget.is_none() {
        return Err(Error::BudgetRequired { max: UNBUDGETED_N_CAP });
    }
    let m = edge_count(n);
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (ci, edges) in copies.iter().enumerate() {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        by_last[*edges.last().expect("copies have edges")].push(ci);
    }
    let mut best_classes: Option<usize> = None;
    let mut best: Option<Vec<Color>> = None;
    if let Some(seed) = &config.seed {
        if seed.n() != n {
            return Err(Error::HostMismatch {
                left: seed.n(),
                right: n,
            });
        }
        best_classes = Some(seed.class_count());
        best = Some(seed.colors().to_vec());
    }
    let mut search = Opt {
        m,
        colors: vec![0; m],
        copies,
        by_last,
        best_classes,
        best,
        nodes: 0,
        leaves: 0,
        budget: config.budget,
        budget_hit: false,
        break_edge: if n >= 3 && !config.no_symmetry_break {
            Some(edge_index(1, 2, n))
        } else {
            None
        },
        incumbent_pruning: !config.no_incumbent_pruning,
    };
    search.rec(0, 0);
    let extremal = match search.best {
        Some(vec) => Some(EdgeColoring::from_colors(n, vec)?),
        None => None,
    };
    debug_assert_eq!(
        search.best_classes,
        extremal.as_ref().map(|c| c.class_count()),
        "restricted-growth vectors are already normalized"
    );
    Ok(ARResult {
        value: search.best_classes,
        extremal,
        status: if search.budget_hit {
            ARStatus::LowerBoundOnly
        } else {
            ARStatus::Proven
        },
        nodes: search.nodes,
        leaves: search.leaves,
    })
}

struct Opt {
    m: usize,
    colors: Vec<Color>,
    copies: Vec<Vec<usize>>,
    by_last: Vec<Vec<usize>>,
    best_classes: Option<usize>,
    best: Option<Vec<Color>>,
    nodes: u64,
    leaves: u64,
    budget: Option<u64>,
    budget_hit: bool,
    break_edge: Option<usize>,
    incumbent_pruning: bool,
}

impl Opt {
    /// Extends the prefix `colors[..i]`, which uses colors `0..classes`.
    fn rec(&mut self, i: usize, classes: usize) {
        if self.budget_hit {
            return;
        }
        if i == self.m {
            self.leaves += 1;
            if self.best_classes.is_none_or(|b| classes > b) {
                self.best_classes = Some(classes);
                self.best = Some(self.colors.clone());
            }
            return;
        }
        if self.incumbent_pruning {
            if let Some(b) = self.best_classes {
                if classes + (self.m - i) <= b {
                    return;
                }
            }
        }
        for c in 0..=classes.min(i) {
            self.nodes += 1;
            if let Some(b) = self.budget {
                if self.nodes > b {
                    self.budget_hit = true;
                    return;
                }
            }
            if self.break_edge == Some(i)
                && self.colors[0] != self.colors[1]
                && (c == self.colors[0] || c == self.colors[1])
            {
                continue;
            }
            self.colors[i] = c;
            if !self.completes_rainbow(i) {
                self.rec(i + 1, classes + usize::from(c == classes));
            }
        }
    }

    /// Does assigning `colors[i]` finish a rainbow copy? Only copies whose
    /// largest edge is `i` can change state here.
    fn completes_rainbow(&self, i: usize) -> bool {
        'copies: for &ci in &self.by_last[i] {
            let edges = &self.copies[ci];
            for a in 0..edges.len() {
                for b in (a + 1)..edges.len() {
                    if self.colors[edges[a]] == self.colors[edges[b]] {
                        continue 'copies;
                    }
                }
            }
            return true;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_lower_bound;
    use crate::detector::detect_by_enumeration;

    fn plain() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn unforbidden_walk_visits_every_partition() {
        // No copy of 2P3 + 2P2 fits in K4, so nothing is ever rejected; with
        // both prunes off the leaf count is the Bell number B(6) = 203 and
        // the best coloring is fully rainbow.
        let shape = ForestShape::new(2, 2).unwrap();
        let config = OracleConfig {
            no_symmetry_break: true,
            no_incumbent_pruning: true,
            ..plain()
        };
        let out = compute_ar(4, shape, &config).unwrap();
        assert_eq!(out.leaves, 203);
        assert_eq!(out.value, Some(6));
        assert_eq!(out.status, ARStatus::Proven);
        assert_eq!(out.extremal.unwrap(), EdgeColoring::rainbow(4).unwrap());
    }

    #[test]
    fn single_edge_pattern_admits_no_coloring() {
        // Every edge is by itself a rainbow P2, so no coloring qualifies.
        let out = compute_ar(3, ForestShape::new(0, 1).unwrap(), &plain()).unwrap();
        assert_eq!(out.value, None);
        assert_eq!(out.status, ARStatus::Proven);
        assert!(out.extremal.is_none());
    }

    #[test]
    fn small_forest_values_match_published_numbers() {
        let out = compute_ar(5, ForestShape::new(1, 1).unwrap(), &plain()).unwrap();
        assert_eq!(out.value, Some(2));
        assert_eq!(out.status, ARStatus::Proven);
        let c = out.extremal.unwrap();
        assert_eq!(c.class_count(), 2);
        assert!(detect_by_enumeration(&c, ForestShape::new(1, 1).unwrap())
            .unwrap()
            .is_none());

        let out = compute_ar(5, ForestShape::new(0, 2).unwrap(), &plain()).unwrap();
        assert_eq!(out.value, Some(1));
    }

    #[test]
    fn triangle_values_are_n_minus_one() {
        for n in 3..=5 {
            let out = compute_ar_triangle(n, &plain()).unwrap();
            assert_eq!(out.value, Some(n - 1), "n = {n}");
            assert_eq!(out.status, ARStatus::Proven);
        }
    }

    #[test]
    fn symmetry_break_preserves_the_value() {
        let no_break = OracleConfig {
            no_symmetry_break: true,
            ..plain()
        };
        for n in 4..=5 {
            let a = compute_ar_triangle(n, &plain()).unwrap();
            let b = compute_ar_triangle(n, &no_break).unwrap();
            assert_eq!(a.value, b.value, "triangle n = {n}");
            assert!(a.nodes < b.nodes, "the break should shrink the tree");
        }
        let shape = ForestShape::new(0, 2).unwrap();
        for n in 4..=5 {
            let a = compute_ar(n, shape, &plain()).unwrap();
            let b = compute_ar(n, shape, &no_break).unwrap();
            assert_eq!(a.value, b.value, "matching n = {n}");
        }
    }

    #[test]
    fn extremal_output_is_certified_rainbow_free() {
        let shape = ForestShape::new(1, 1).unwrap();
        for n in 5..=6 {
            let out = compute_ar(n, shape, &plain()).unwrap();
            let c = out.extremal.unwrap();
            assert_eq!(Some(c.class_count()), out.value);
            assert!(detect_by_enumeration(&c, shape).unwrap().is_none(), "n = {n}");
        }
    }

    #[test]
    fn budget_degrades_to_a_lower_bound() {
        let shape = ForestShape::new(0, 2).unwrap();
        let config = OracleConfig {
            budget: Some(3),
            ..plain()
        };
        let out = compute_ar(5, shape, &config).unwrap();
        assert_eq!(out.status, ARStatus::LowerBoundOnly);
        // A seed survives as the answer when the budget is too small to
        // beat it.
        let seed = build_lower_bound(1, 2).unwrap();
        let config = OracleConfig {
            budget: Some(10),
            seed: Some(seed.clone()),
            ..plain()
        };
        let out = compute_ar(7, ForestShape::new(1, 2).unwrap(), &config).unwrap();
        assert_eq!(out.status, ARStatus::LowerBoundOnly);
        assert_eq!(out.value, Some(7));
        assert_eq!(out.extremal.unwrap(), seed);
    }

    #[test]
    fn guard_rails() {
        assert!(matches!(
            compute_ar(8, ForestShape::new(1, 1).unwrap(), &plain()),
            Err(Error::BudgetRequired { .. })
        ));
        let mismatched = OracleConfig {
            seed: Some(EdgeColoring::monochromatic(6).unwrap()),
            ..plain()
        };
        assert!(compute_ar(5, ForestShape::new(1, 1).unwrap(), &mismatched).is_err());
        let rainbow_seed = OracleConfig {
            seed: Some(EdgeColoring::rainbow(5).unwrap()),
            ..plain()
        };
        assert!(compute_ar(5, ForestShape::new(1, 1).unwrap(), &rainbow_seed).is_err());
    }
}
