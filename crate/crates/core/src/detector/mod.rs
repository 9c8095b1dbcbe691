//! Backtracking search for a rainbow copy of `kP3 ∪ tP2` in an edge-colored
//! complete graph (optionally restricted to a vertex region and an edge mask).
//!
//! # Placement order (the canonical witness)
//!
//! The search processes vertices in increasing order. At every node it takes
//! the least vertex `v` not yet covered or discarded and tries, in this exact
//! order:
//!
//! 1. a three-vertex path with `v` as an endpoint: `v—p—q` for `p`, then `q`,
//!    each ascending over the remaining vertices;
//! 2. a three-vertex path with `v` in the middle: `p—v—q` for `p < q`,
//!    ascending;
//! 3. a single edge `v—u` for `u` ascending;
//! 4. discarding `v` (only while more vertices remain than the forest needs).
//!
//! Every copy of the forest arises from exactly one such placement sequence,
//! so the order above totally orders all copies and the first success is a
//! canonical representative. The exhaustive generator in [`enumeration`]
//! walks the identical tree with no pruning at all; both are required to
//! return the same witness, which is asserted wholesale by the trials suite.
//!
//! # Pruning
//!
//! Before branching, each remaining vertex is classified by the set of colors
//! still available on its usable edges (early-exiting at two distinct
//! colors). A vertex with no available color can never be covered. If every
//! available edge at a vertex carries one fixed color `c`, any copy covering
//! that vertex spends its single allowed `c`-edge there; one edge covers at
//! most two such vertices — and covering two at once is only possible when
//! the edge itself is a whole `P2` component, since as part of a `P3` the
//! adjacent second edge would repeat `c`. Summing the forced discards and
//! comparing against the discard budget prunes the node soundly. On the
//! extremal clique-plus-one colorings this rule fires at the root, turning
//! the absence proof into a constant-time check.
//!
//! # Determinism and budgets
//!
//! With [`Parallelism::Rayon`] only the root branches are distributed;
//! `find_map_first` keeps the leftmost success, so the witness is identical
//! to the sequential one regardless of thread count. `nodes_explored` is the
//! winning branch's count (plus the root) on success and the whole tree on
//! exhaustion, both thread-count-independent; sequential runs additionally
//! count the failed prefix, so the two modes report different (each
//! deterministic) numbers. A node budget forces the sequential path so that
//! "ran out of budget" is a reproducible statement.

mod enumeration;

pub use enumeration::{all_copies, count_copies, detect_by_enumeration};

use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::exec::{self, Parallelism};
use crate::model::{edge_count, edge_index, Color, EdgeColoring, ForestShape, RainbowWitness, Vertex};

/// Knobs for [`find_rainbow_forest`]. `Default` searches the whole graph,
/// unbounded, with the crate-default parallelism.
#[derive(Clone, Debug, Default)]
pub struct DetectorOptions {
    /// Maximum number of search-tree nodes; exceeding it aborts the search
    /// (`complete = false`). Implies sequential execution.
    pub budget: Option<u64>,
    pub parallelism: Parallelism,
    /// Vertices the copy may touch; `None` means all of them.
    pub region: Option<Vec<Vertex>>,
    /// Edges (by index) the copy may use; `None` means all of them.
    pub edge_mask: Option<BitSet>,
    /// Color classes the copy must avoid entirely.
    pub excluded_colors: Option<BitSet>,
}

/// What a search run established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetectionOutcome {
    /// The canonically-first rainbow copy, if one exists (and was reached
    /// within budget).
    pub witness: Option<RainbowWitness>,
    /// `true` means the answer is definitive: either a witness was found or
    /// the whole tree was exhausted. `false` only ever means "budget hit".
    pub complete: bool,
    pub nodes_explored: u64,
}

impl DetectionOutcome {
    /// Definitive "no rainbow copy exists" under the given restrictions.
    pub fn proves_absence(&self) -> bool {
        self.complete && self.witness.is_none()
    }
}

/// Searches `coloring` for a rainbow copy of `shape`, honoring `options`.
pub fn find_rainbow_forest(
    coloring: &EdgeColoring,
    shape: ForestShape,
    options: &DetectorOptions,
) -> Result<DetectionOutcome> {
    let n = coloring.n();
    let mut active = match &options.region {
        None => vec![true; n],
        Some(region) => {
            let mut active = vec![false; n];
            for &v in region {
                if v >= n {
                    return Err(Error::VertexOutOfRange { v, n });
                }
                active[v] = true;
            }
            active
        }
    };
    if let Some(mask) = &options.edge_mask {
        if mask.capacity() != edge_count(n) {
            return Err(Error::InvalidSubset {
                reason: format!(
                    "edge mask sized for {} edges but the graph has {}",
                    mask.capacity(),
                    edge_count(n)
                ),
            });
        }
    }
    if let Some(ex) = &options.excluded_colors {
        if ex.capacity() < coloring.class_count() {
            return Err(Error::InvalidSubset {
                reason: format!(
                    "excluded-color set covers {} classes but the coloring has {}",
                    ex.capacity(),
                    coloring.class_count()
                ),
            });
        }
    }
    let active_count = active.iter().filter(|&&a| a).count();
    let demand = shape.vertex_demand();
    if active_count < demand {
        return Err(Error::ShapeTooLarge {
            k: shape.k,
            t: shape.t,
            demand,
            n: active_count,
        });
    }

    let mut search = Search {
        n,
        colors: coloring.colors(),
        mask: options.edge_mask.as_ref(),
        excluded: options.excluded_colors.as_ref(),
        active: std::mem::take(&mut active),
        used_colors: vec![false; coloring.class_count()],
        p3_left: shape.k,
        p2_left: shape.t,
        skips_left: active_count - demand,
        p3s: Vec::with_capacity(shape.k),
        p2s: Vec::with_capacity(shape.t),
        nodes: 0,
        budget: options.budget,
        budget_hit: false,
    };

    let parallel_root = options.budget.is_none() && options.parallelism == Parallelism::Rayon;
    if !parallel_root {
        let found = search.dfs();
        return Ok(DetectionOutcome {
            witness: found.then(|| RainbowWitness::assemble(search.p3s, search.p2s, coloring)),
            complete: !search.budget_hit,
            nodes_explored: search.nodes,
        });
    }

    // Parallel mode: expand the root by hand, then race the root branches in
    // index order. The leftmost success wins, matching the sequential result.
    // Branches count their own subtrees; the root contributes the `1 +`.
    let moves = search.root_moves();
    let explored = AtomicU64::new(0);
    let hit = exec::find_map_first(Parallelism::Rayon, moves, |mv| {
        let mut branch = search.clone();
        let found = branch.run_move(mv);
        explored.fetch_add(branch.nodes, Ordering::Relaxed);
        found.then_some((branch.p3s, branch.p2s, branch.nodes))
    });
    Ok(match hit {
        Some((p3s, p2s, nodes)) => DetectionOutcome {
            witness: Some(RainbowWitness::assemble(p3s, p2s, coloring)),
            complete: true,
            nodes_explored: 1 + nodes,
        },
        None => DetectionOutcome {
            witness: None,
            complete: true,
            nodes_explored: 1 + explored.load(Ordering::Relaxed),
        },
    })
}

/// One branch out of the root node, in canonical order.
#[derive(Clone, Copy, Debug)]
enum Move {
    /// Path `a—b—c` with precomputed edge colors.
    P3(Vertex, Vertex, Vertex, Color, Color),
    P2(Vertex, Vertex, Color),
    Skip(Vertex),
}

#[derive(Clone)]
struct Search<'a> {
    n: usize,
    colors: &'a [Color],
    mask: Option<&'a BitSet>,
    excluded: Option<&'a BitSet>,
    active: Vec<bool>,
    used_colors: Vec<bool>,
    p3_left: usize,
    p2_left: usize,
    skips_left: usize,
    p3s: Vec<[Vertex; 3]>,
    p2s: Vec<[Vertex; 2]>,
    nodes: u64,
    budget: Option<u64>,
    budget_hit: bool,
}

impl Search<'_> {
    #[inline]
    fn usable_color(&self, x: Vertex, y: Vertex) -> Option<Color> {
        let ei = if x < y {
            edge_index(x, y, self.n)
        } else {
            edge_index(y, x, self.n)
        };
        if let Some(mask) = self.mask {
            if !mask.contains(ei) {
                return None;
            }
        }
        let c = self.colors[ei];
        if self.used_colors[c] {
            return None;
        }
        if let Some(ex) = self.excluded {
            if ex.contains(c) {
                return None;
            }
        }
        Some(c)
    }

    /// Lower-bounds the discards this partial state still forces; prunes
    /// when that exceeds the remaining discard budget. See the module doc
    /// for the argument.
    fn feasible(&self) -> bool {
        let mut dead = 0usize;
        let mut singleton_of: Vec<(Color, usize)> = Vec::new();
        for x in 0..self.n {
            if !self.active[x] {
                continue;
            }
            let mut first: Option<Color> = None;
            let mut multi = false;
            for y in 0..self.n {
                if y == x || !self.active[y] {
                    continue;
                }
                if let Some(c) = self.usable_color(x, y) {
                    match first {
                        None => first = Some(c),
                        Some(c0) if c0 != c => {
                            multi = true;
                            break;
                        }
                        _ => {}
                    }
                }
            }
            if multi {
                continue;
            }
            match first {
                None => dead += 1,
                Some(c) => match singleton_of.iter_mut().find(|(sc, _)| *sc == c) {
                    Some((_, count)) => *count += 1,
                    None => singleton_of.push((c, 1)),
                },
            }
        }
        let coverable_per_color = if self.p2_left > 0 { 2 } else { 1 };
        let required = dead
            + singleton_of
                .iter()
                .map(|&(_, g)| g.saturating_sub(coverable_per_color))
                .sum::<usize>();
        required <= self.skips_left
    }

    fn dfs(&mut self) -> bool {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                self.budget_hit = true;
                return false;
            }
        }
        if self.p3_left == 0 && self.p2_left == 0 {
            // Vertex counting guarantees the leftover vertices fit exactly
            // in the discard budget, so this is a completed copy.
            return true;
        }
        if !self.feasible() {
            return false;
        }
        let v = self.anchor();
        let cands = self.candidates(v);
        if self.p3_left > 0 {
            for &p in &cands {
                let Some(c1) = self.usable_color(v, p) else { continue };
                for &q in &cands {
                    if q == p {
                        continue;
                    }
                    let Some(c2) = self.usable_color(p, q) else { continue };
                    if c1 == c2 {
                        continue;
                    }
                    if self.place_p3(v, p, q, c1, c2) {
                        return true;
                    }
                    if self.budget_hit {
                        return false;
                    }
                }
            }
            for (i, &p) in cands.iter().enumerate() {
                let Some(c1) = self.usable_color(p, v) else { continue };
                for &q in &cands[i + 1..] {
                    let Some(c2) = self.usable_color(v, q) else { continue };
                    if c1 == c2 {
                        continue;
                    }
                    if self.place_p3(p, v, q, c1, c2) {
                        return true;
                    }
                    if self.budget_hit {
                        return false;
                    }
                }
            }
        }
        if self.p2_left > 0 {
            for &u in &cands {
                let Some(c) = self.usable_color(v, u) else { continue };
                if self.place_p2(v, u, c) {
                    return true;
                }
                if self.budget_hit {
                    return false;
                }
            }
        }
        if self.skips_left > 0 {
            self.skips_left -= 1;
            self.active[v] = false;
            if self.dfs() {
                return true;
            }
            self.active[v] = true;
            self.skips_left += 1;
        }
        false
    }

    fn anchor(&self) -> Vertex {
        (0..self.n)
            .find(|&x| self.active[x])
            .expect("open components imply uncovered vertices")
    }

    fn candidates(&self, v: Vertex) -> Vec<Vertex> {
        (0..self.n).filter(|&x| self.active[x] && x != v).collect()
    }

    /// Root-branch list in exactly the order `dfs` would try them. Empty if
    /// the root already prunes.
    fn root_moves(&self) -> Vec<Move> {
        let mut moves = Vec::new();
        if self.p3_left == 0 && self.p2_left == 0 {
            unreachable!("shapes have at least one component");
        }
        if !self.feasible() {
            return moves;
        }
        let v = self.anchor();
        let cands = self.candidates(v);
        if self.p3_left > 0 {
            for &p in &cands {
                let Some(c1) = self.usable_color(v, p) else { continue };
                for &q in &cands {
                    if q == p {
                        continue;
                    }
                    let Some(c2) = self.usable_color(p, q) else { continue };
                    if c1 != c2 {
                        moves.push(Move::P3(v, p, q, c1, c2));
                    }
                }
            }
            for (i, &p) in cands.iter().enumerate() {
                let Some(c1) = self.usable_color(p, v) else { continue };
                for &q in &cands[i + 1..] {
                    let Some(c2) = self.usable_color(v, q) else { continue };
                    if c1 != c2 {
                        moves.push(Move::P3(p, v, q, c1, c2));
                    }
                }
            }
        }
        if self.p2_left > 0 {
            for &u in &cands {
                if let Some(c) = self.usable_color(v, u) {
                    moves.push(Move::P2(v, u, c));
                }
            }
        }
        if self.skips_left > 0 {
            moves.push(Move::Skip(v));
        }
        moves
    }

    /// Applies a root move and searches the subtree below it.
    fn run_move(&mut self, mv: Move) -> bool {
        match mv {
            Move::P3(a, b, c, c1, c2) => self.place_p3(a, b, c, c1, c2),
            Move::P2(u, v, c) => self.place_p2(u, v, c),
            Move::Skip(v) => {
                self.skips_left -= 1;
                self.active[v] = false;
                self.dfs()
            }
        }
    }

    /// Path `a—b—c`; on success the placement is left in place so the caller
    /// can assemble the witness.
    fn place_p3(&mut self, a: Vertex, b: Vertex, c: Vertex, c1: Color, c2: Color) -> bool {
        self.active[a] = false;
        self.active[b] = false;
        self.active[c] = false;
        self.used_colors[c1] = true;
        self.used_colors[c2] = true;
        self.p3_left -= 1;
        self.p3s.push([a, b, c]);
        if self.dfs() {
            return true;
        }
        self.p3s.pop();
        self.p3_left += 1;
        self.used_colors[c1] = false;
        self.used_colors[c2] = false;
        self.active[a] = true;
        self.active[b] = true;
        self.active[c] = true;
        false
    }

    fn place_p2(&mut self, u: Vertex, v: Vertex, c: Color) -> bool {
        self.active[u] = false;
        self.active[v] = false;
        self.used_colors[c] = true;
        self.p2_left -= 1;
        self.p2s.push([u, v]);
        if self.dfs() {
            return true;
        }
        self.p2s.pop();
        self.p2_left += 1;
        self.used_colors[c] = false;
        self.active[u] = true;
        self.active[v] = true;
        false
    }
}
