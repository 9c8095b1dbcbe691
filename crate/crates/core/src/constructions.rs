//! Extremal colorings: a rainbow clique on all but `s` vertices, with every
//! edge touching the last `s` vertices merged into one shared class.
//!
//! With `s = 3` this is the coloring that pins the lower bound for spanning
//! `kP3 ∪ tP2` forests: a spanning forest must cover each of the three
//! special vertices, no single edge covers more than two of them, so at
//! least two forest edges land in the shared class and the copy cannot be
//! rainbow. The class count is `C(n-s, 2) + 1`, matching the closed form
//! `C(n-3, 2) + 1` exactly when `s = 3` and `n = 3k + 2t`.

use crate::error::{Error, Result};
use crate::model::{edge_count, edge_index, EdgeColoring};

/// Rainbow `K_{n-s}` on vertices `0..n-s`, one shared color on everything
/// incident to `n-s..n`. Class count is `C(n-s, 2) + 1`.
pub fn build_clique_plus_one(n: usize, s: usize) -> Result<EdgeColoring> {
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    if s < 1 || s > n {
        return Err(Error::InvalidSubset {
            reason: format!("special set size {s} must be within 1..={n}"),
        });
    }
    let inner = n - s;
    let shared = edge_count(inner);
    let mut colors = vec![shared; edge_count(n)];
    for u in 0..inner {
        for v in (u + 1)..inner {
            colors[edge_index(u, v, n)] = edge_index(u, v, inner);
        }
    }
    let coloring = EdgeColoring::from_colors(n, colors)?;
    debug_assert_eq!(coloring.class_count(), shared + 1);
    Ok(coloring)
}

/// The extremal coloring for the spanning forest `kP3 ∪ tP2` on
/// `n = 3k + 2t` vertices (`k >= 1`, `t >= 2`).
pub fn build_lower_bound(k: usize, t: usize) -> Result<EdgeColoring> {
    if k < 1 || t < 2 {
        return Err(Error::InvalidShape {
            k,
            t,
            reason: "the spanning bound needs k >= 1 and t >= 2".into(),
        });
    }
    build_clique_plus_one(3 * k + 2 * t, 3)
}

/// Class count the construction is guaranteed to achieve: `C(n-s, 2) + 1`.
pub fn expected_class_count(n: usize, s: usize) -> usize {
    edge_count(n.saturating_sub(s)) + 1
}
