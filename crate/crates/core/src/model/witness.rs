use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Color, EdgeColoring, ForestShape, Vertex};

/// A concrete rainbow copy of `kP3 ∪ tP2` inside a colored `K_n`.
///
/// Each `[a, b, c]` is the path `a–b–c` (edges `ab` and `bc`); each `[u, v]`
/// is a single edge. Stored in canonical presentation: path endpoints sorted
/// (`a < c`), pair endpoints sorted, component lists sorted, and `colors_used`
/// ascending. Searches produce this form directly, so equal witnesses compare
/// equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowWitness {
    pub p3s: Vec<[Vertex; 3]>,
    pub p2s: Vec<[Vertex; 2]>,
    pub colors_used: Vec<Color>,
}

impl RainbowWitness {
    /// Canonicalizes raw component lists and records the colors they use.
    pub fn assemble(
        p3s: Vec<[Vertex; 3]>,
        p2s: Vec<[Vertex; 2]>,
        coloring: &EdgeColoring,
    ) -> Self {
        let mut p3s: Vec<[Vertex; 3]> = p3s
            .into_iter()
            .map(|[a, b, c]| if a <= c { [a, b, c] } else { [c, b, a] })
            .collect();
        p3s.sort_unstable();
        let mut p2s: Vec<[Vertex; 2]> = p2s
            .into_iter()
            .map(|[u, v]| if u <= v { [u, v] } else { [v, u] })
            .collect();
        p2s.sort_unstable();
        let mut colors_used: Vec<Color> = p3s
            .iter()
            .flat_map(|&[a, b, c]| [coloring.color(a, b), coloring.color(b, c)])
            .chain(p2s.iter().map(|&[u, v]| coloring.color(u, v)))
            .collect();
        colors_used.sort_unstable();
        colors_used.dedup();
        RainbowWitness {
            p3s,
            p2s,
            colors_used,
        }
    }

    /// Edges of the witness as sorted pairs, in component order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(2 * self.p3s.len() + self.p2s.len());
        for &[a, b, c] in &self.p3s {
            out.push(sorted(a, b));
            out.push(sorted(b, c));
        }
        for &[u, v] in &self.p2s {
            out.push(sorted(u, v));
        }
        out
    }

    /// All vertices touched, in component order (not deduplicated).
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(3 * self.p3s.len() + 2 * self.p2s.len());
        for &[a, b, c] in &self.p3s {
            out.extend([a, b, c]);
        }
        for &[u, v] in &self.p2s {
            out.extend([u, v]);
        }
        out
    }

    /// Full validity check against a coloring and an expected shape.
    pub fn validate(
        &self,
        coloring: &EdgeColoring,
        shape: ForestShape,
    ) -> std::result::Result<(), WitnessViolation> {
        if self.p3s.len() != shape.k || self.p2s.len() != shape.t {
            return Err(WitnessViolation::ShapeMismatch {
                expected: shape,
                got_p3: self.p3s.len(),
                got_p2: self.p2s.len(),
            });
        }
        let n = coloring.n();
        let mut seen = vec![false; n];
        for v in self.vertices() {
            if v >= n {
                return Err(WitnessViolation::VertexOutOfRange { v, n });
            }
            if seen[v] {
                return Err(WitnessViolation::VertexReused { v });
            }
            seen[v] = true;
        }
        // Vertex distinctness above already rules out degenerate components
        // (a path or edge repeating one of its own vertices).
        let mut used = vec![false; coloring.class_count()];
        for (u, v) in self.edges() {
            let c = coloring.color(u, v);
            if used[c] {
                return Err(WitnessViolation::ColorRepeated { color: c });
            }
            used[c] = true;
        }
        let mut actual: Vec<Color> = self.edges().iter().map(|&(u, v)| coloring.color(u, v)).collect();
        actual.sort_unstable();
        if actual != self.colors_used {
            return Err(WitnessViolation::ColorSetMismatch);
        }
        Ok(())
    }
}

/// Reason codes for witness rejection.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum WitnessViolation {
    #[error("expected shape {expected}, witness has {got_p3} paths and {got_p2} edges")]
    ShapeMismatch {
        expected: ForestShape,
        got_p3: usize,
        got_p2: usize,
    },
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: Vertex, n: usize },
    #[error("vertex {v} used by more than one component position")]
    VertexReused { v: Vertex },
    #[error("color {color} appears on two witness edges")]
    ColorRepeated { color: Color },
    #[error("recorded colors_used does not match the edge colors")]
    ColorSetMismatch,
}

fn sorted(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}
