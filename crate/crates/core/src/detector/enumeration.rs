//! Exhaustive reference implementations, deliberately free of pruning.
//!
//! These walk the same placement tree as the backtracking detector — least
//! uncovered vertex first; endpoint paths, middle paths, single edges, then
//! a discard — but do no legality checking on the way down: every placement
//! is generated and a candidate copy is validated only once it is complete.
//! Agreement between the two (asserted en masse by the trials suite) is what
//! certifies the detector's pruning. Everything here is capped at ten
//! vertices, where the full tree is still cheap.

use crate::error::{Error, Result};
use crate::model::{edge_index, EdgeColoring, ForestShape, RainbowWitness, Vertex};

const MAX_N: usize = 10;

fn ensure_scale(what: &'static str, n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::ScaleLimit {
            what,
            n,
            max: MAX_N,
        });
    }
    Ok(())
}

/// Walks every placement of `kP3 ∪ tP2` on `0..n` in canonical order,
/// calling `visit` once per completed copy; a `true` return stops the walk.
fn walk_placements(
    n: usize,
    shape: ForestShape,
    visit: &mut impl FnMut(&[[Vertex; 3]], &[[Vertex; 2]]) -> bool,
) -> bool {
    let mut state = Walk {
        n,
        covered: vec![false; n],
        p3_left: shape.k,
        p2_left: shape.t,
        skips_left: n - shape.vertex_demand(),
        p3s: Vec::with_capacity(shape.k),
        p2s: Vec::with_capacity(shape.t),
    };
    state.rec(visit)
}

struct Walk {
    n: usize,
    covered: Vec<bool>,
    p3_left: usize,
    p2_left: usize,
    skips_left: usize,
    p3s: Vec<[Vertex; 3]>,
    p2s: Vec<[Vertex; 2]>,
}

impl Walk {
    fn rec(&mut self, visit: &mut impl FnMut(&[[Vertex; 3]], &[[Vertex; 2]]) -> bool) -> bool {
        if self.p3_left == 0 && self.p2_left == 0 {
            return visit(&self.p3s, &self.p2s);
        }
        let v = (0..self.n).find(|&x| !self.covered[x]).expect("vertices remain");
        let free: Vec<Vertex> = (0..self.n).filter(|&x| !self.covered[x] && x != v).collect();
        if self.p3_left > 0 {
            self.p3_left -= 1;
            for &p in &free {
                for &q in &free {
                    if q == p {
                        continue;
                    }
                    self.p3s.push([v, p, q]);
                    self.covered[v] = true;
                    self.covered[p] = true;
                    self.covered[q] = true;
                    let stop = self.rec(visit);
                    self.covered[v] = false;
                    self.covered[p] = false;
                    self.covered[q] = false;
                    self.p3s.pop();
                    if stop {
                        self.p3_left += 1;
                        return true;
                    }
                }
            }
            for (i, &p) in free.iter().enumerate() {
                for &q in &free[i + 1..] {
                    self.p3s.push([p, v, q]);
                    self.covered[v] = true;
                    self.covered[p] = true;
                    self.covered[q] = true;
                    let stop = self.rec(visit);
                    self.covered[v] = false;
                    self.covered[p] = false;
                    self.covered[q] = false;
                    self.p3s.pop();
                    if stop {
                        self.p3_left += 1;
                        return true;
                    }
                }
            }
            self.p3_left += 1;
        }
        if self.p2_left > 0 {
            self.p2_left -= 1;
            for &u in &free {
                self.p2s.push([v, u]);
                self.covered[v] = true;
                self.covered[u] = true;
                let stop = self.rec(visit);
                self.covered[v] = false;
                self.covered[u] = false;
                self.p2s.pop();
                if stop {
                    self.p2_left += 1;
                    return true;
                }
            }
            self.p2_left += 1;
        }
        if self.skips_left > 0 {
            self.skips_left -= 1;
            self.covered[v] = true;
            let stop = self.rec(visit);
            self.covered[v] = false;
            self.skips_left += 1;
            if stop {
                return true;
            }
        }
        false
    }
}

/// First rainbow copy in canonical order, by checking every copy outright.
pub fn detect_by_enumeration(
    coloring: &EdgeColoring,
    shape: ForestShape,
) -> Result<Option<RainbowWitness>> {
    let n = coloring.n();
    ensure_scale("exhaustive placement enumeration", n)?;
    shape.ensure_fits(n)?;
    let mut hit: Option<RainbowWitness> = None;
    walk_placements(n, shape, &mut |p3s, p2s| {
        let mut colors: Vec<usize> = p3s
            .iter()
            .flat_map(|&[a, b, c]| [coloring.color(a, b), coloring.color(b, c)])
            .chain(p2s.iter().map(|&[u, v]| coloring.color(u, v)))
            .collect();
        colors.sort_unstable();
        colors.dedup();
        if colors.len() == shape.edge_demand() {
            hit = Some(RainbowWitness::assemble(p3s.to_vec(), p2s.to_vec(), coloring));
            return true;
        }
        false
    });
    Ok(hit)
}

/// Number of labeled copies of the forest in the complete graph `K_n`.
pub fn count_copies(n: usize, shape: ForestShape) -> Result<u64> {
    ensure_scale("copy counting", n)?;
    shape.ensure_fits(n)?;
    let mut count = 0u64;
    walk_placements(n, shape, &mut |_, _| {
        count += 1;
        false
    });
    Ok(count)
}

/// Every copy as its sorted list of edge indices, in canonical order.
pub fn all_copies(n: usize, shape: ForestShape) -> Result<Vec<Vec<usize>>> {
    ensure_scale("copy listing", n)?;
    shape.ensure_fits(n)?;
    let mut copies = Vec::new();
    walk_placements(n, shape, &mut |p3s, p2s| {
        let mut edges: Vec<usize> = p3s
            .iter()
            .flat_map(|&[a, b, c]| {
                let e1 = if a < b { (a, b) } else { (b, a) };
                let e2 = if b < c { (b, c) } else { (c, b) };
                [edge_index(e1.0, e1.1, n), edge_index(e2.0, e2.1, n)]
            })
            .chain(p2s.iter().map(|&[u, v]| {
                let e = if u < v { (u, v) } else { (v, u) };
                edge_index(e.0, e.1, n)
            }))
            .collect();
        edges.sort_unstable();
        copies.push(edges);
        false
    });
    Ok(copies)
}
