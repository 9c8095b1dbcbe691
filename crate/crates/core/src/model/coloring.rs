use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{edge_count, edge_index, Color, Vertex};

/// An edge coloring of the complete graph `K_n`, stored as one color per edge
/// in lexicographic edge order.
///
/// Colorings are immutable and always held in restricted-growth normal form:
/// color ids are renumbered so that each class is named by the rank of its
/// first edge (`colors[0] == 0` and every entry is at most `1 + max` of the
/// prefix). Two colorings induce the same partition of the edge set if and
/// only if their normalized vectors are equal, so color-permutation symmetry
/// never leaks into comparisons, file outputs, or witness sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    n: usize,
    colors: Vec<Color>,
    class_count: usize,
}

impl EdgeColoring {
    /// Builds a coloring from raw per-edge labels (any `usize` values) and
    /// normalizes them to restricted-growth form.
    pub fn from_colors(n: usize, mut raw: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices { n, min: 2 });
        }
        let expected = edge_count(n);
        if raw.len() != expected {
            return Err(Error::ColorVectorLength {
                n,
                expected,
                got: raw.len(),
            });
        }
        let class_count = normalize(&mut raw);
        Ok(EdgeColoring {
            n,
            colors: raw,
            class_count,
        })
    }

    /// All edges distinctly colored.
    pub fn rainbow(n: usize) -> Result<Self> {
        Self::from_colors(n, (0..edge_count(n)).collect())
    }

    /// All edges the same color.
    pub fn monochromatic(n: usize) -> Result<Self> {
        Self::from_colors(n, vec![0; edge_count(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.colors.len()
    }

    /// Number of color classes (all classes are nonempty by normalization).
    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// Color of the edge `(u, v)`; endpoints may come in either order.
    #[inline]
    pub fn color(&self, u: Vertex, v: Vertex) -> Color {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.colors[edge_index(a, b, self.n)]
    }

    #[inline]
    pub fn color_at(&self, edge: usize) -> Color {
        self.colors[edge]
    }

    /// The normalized color vector in lexicographic edge order.
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Edges of each class, indexed by color id; edges in lexicographic order.
    pub fn classes(&self) -> Vec<Vec<(Vertex, Vertex)>> {
        let mut classes = vec![Vec::new(); self.class_count];
        for (idx, &c) in self.colors.iter().enumerate() {
            classes[c].push(crate::model::edge_at(idx, self.n));
        }
        classes
    }

    /// Coloring induced on the complete graph over `keep`, with vertices
    /// relabeled `0..keep.len()` in increasing order of original label.
    ///
    /// `keep` must be strictly increasing with at least two members. The
    /// result is renormalized, so its class ids are again dense.
    pub fn restrict(&self, keep: &[Vertex]) -> Result<EdgeColoring> {
        if keep.len() < 2 {
            return Err(Error::InvalidSubset {
                reason: format!("need at least 2 vertices, got {}", keep.len()),
            });
        }
        if !keep.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidSubset {
                reason: "vertex list must be strictly increasing".into(),
            });
        }
        if *keep.last().unwrap() >= self.n {
            return Err(Error::VertexOutOfRange {
                v: *keep.last().unwrap(),
                n: self.n,
            });
        }
        let m = keep.len();
        let mut raw = Vec::with_capacity(edge_count(m));
        for i in 0..m {
            for j in i + 1..m {
                raw.push(self.color(keep[i], keep[j]));
            }
        }
        EdgeColoring::from_colors(m, raw)
    }

    /// True when every color class of `self` is contained in a class of
    /// `coarser`: `self` distinguishes at least as much as `coarser` does.
    pub fn is_refinement_of(&self, coarser: &EdgeColoring) -> Result<bool> {
        if self.n != coarser.n {
            return Err(Error::HostMismatch {
                left: self.n,
                right: coarser.n,
            });
        }
        let mut image: Vec<Option<Color>> = vec![None; self.class_count];
        for (idx, &fine) in self.colors.iter().enumerate() {
            let coarse = coarser.colors[idx];
            match image[fine] {
                None => image[fine] = Some(coarse),
                Some(seen) if seen != coarse => return Ok(false),
                _ => {}
            }
        }
        Ok(true)
    }
}

/// In-place restricted-growth renumbering; returns the class count.
fn normalize(colors: &mut [usize]) -> usize {
    let mut rename: HashMap<usize, usize> = HashMap::new();
    for c in colors.iter_mut() {
        let next = rename.len();
        *c = *rename.entry(*c).or_insert(next);
    }
    rename.len()
}

/// Seeded random coloring of `K_n` with exactly `classes` color classes.
///
/// One random edge is reserved for each class (guaranteeing surjectivity) and
/// every other edge draws its class uniformly; the result is normalized as
/// usual. Fully determined by the RNG state, so trial batches are replayable.
pub fn random_surjective<R: Rng>(n: usize, classes: usize, rng: &mut R) -> Result<EdgeColoring> {
    let edges = edge_count(n);
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    if classes == 0 || classes > edges {
        return Err(Error::InvalidSubset {
            reason: format!("class count {classes} not in 1..={edges} for K_{n}"),
        });
    }
    let mut order: Vec<usize> = (0..edges).collect();
    order.shuffle(rng);
    let mut raw = vec![0usize; edges];
    for (c, &e) in order.iter().take(classes).enumerate() {
        raw[e] = c;
    }
    for &e in order.iter().skip(classes) {
        raw[e] = rng.gen_range(0..classes);
    }
    EdgeColoring::from_colors(n, raw)
}
