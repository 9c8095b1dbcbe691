use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A linear forest made of `k` paths on three vertices and `t` single edges,
/// written `kP3 ∪ tP2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForestShape {
    pub k: usize,
    pub t: usize,
}

impl ForestShape {
    pub fn new(k: usize, t: usize) -> Result<Self> {
        if k + t == 0 {
            return Err(Error::InvalidShape {
                k,
                t,
                reason: "at least one component required".into(),
            });
        }
        Ok(ForestShape { k, t })
    }

    /// Vertices used by a copy: `3k + 2t`.
    pub fn vertex_demand(&self) -> usize {
        3 * self.k + 2 * self.t
    }

    /// Edges used by a copy: `2k + t`.
    pub fn edge_demand(&self) -> usize {
        2 * self.k + self.t
    }

    pub fn component_count(&self) -> usize {
        self.k + self.t
    }

    /// A copy covers every vertex of `K_n` exactly when `n == 3k + 2t`.
    pub fn is_spanning_in(&self, n: usize) -> bool {
        self.vertex_demand() == n
    }

    /// Fails unless a copy fits inside `K_n`.
    pub fn ensure_fits(&self, n: usize) -> Result<()> {
        if self.vertex_demand() > n {
            return Err(Error::ShapeTooLarge {
                k: self.k,
                t: self.t,
                demand: self.vertex_demand(),
                n,
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for ForestShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}P3+{}P2", self.k, self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demands() {
        let s = ForestShape::new(2, 3).unwrap();
        assert_eq!(s.vertex_demand(), 12);
        assert_eq!(s.edge_demand(), 7);
        assert!(s.is_spanning_in(12));
        assert!(!s.is_spanning_in(13));
        assert!(s.ensure_fits(12).is_ok());
        assert!(s.ensure_fits(11).is_err());
        assert!(ForestShape::new(0, 0).is_err());
        assert!(ForestShape::new(0, 1).is_ok());
    }
}
