use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// A traversal order: visit the crossing-bearing components in the given
/// order, starting each at the given offset into its stored arc cycle and
/// following its orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraversalOrder {
    pub components: Vec<usize>,
    pub starts: Vec<usize>,
}

impl TraversalOrder {
    /// Components in stored order, each from its first arc.
    pub fn default_for(d: &Diagram) -> Self {
        let n = d.components().len();
        TraversalOrder {
            components: (0..n).collect(),
            starts: vec![0; n],
        }
    }

    /// An alternative deterministic order: components reversed, starts shifted.
    pub fn alternate_for(d: &Diagram, shift: usize) -> Self {
        let n = d.components().len();
        TraversalOrder {
            components: (0..n).rev().collect(),
            starts: (0..n)
                .rev()
                .map(|i| {
                    let len = d.components()[i].len();
                    if len == 0 {
                        0
                    } else {
                        shift % len
                    }
                })
                .collect(),
        }
    }

    fn validate(&self, d: &Diagram) -> Result<()> {
        let n = d.components().len();
        let mut seen = vec![false; n];
        if self.components.len() != n || self.starts.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "order covers {} components, diagram has {}",
                self.components.len(),
                n
            )));
        }
        for &c in &self.components {
            if c >= n || seen[c] {
                return Err(Error::UnknownComponent(c));
            }
            seen[c] = true;
        }
        Ok(())
    }
}

impl Diagram {
    /// Crossings indices in the order first reached by the traversal, each
    /// tagged with whether the first visit entered on the under-strand
    /// ("bad" for a descending diagram).
    pub fn crossing_visit_order(&self, order: &TraversalOrder) -> Result<Vec<(usize, bool)>> {
        order.validate(self)?;
        let mut visited = vec![false; self.num_crossings()];
        let mut out = Vec::with_capacity(self.num_crossings());
        for (k, &comp) in order.components.iter().enumerate() {
            let cycle = &self.components()[comp];
            let len = cycle.len();
            for i in 0..len {
                let arc = cycle[(order.starts[k] + i) % len];
                let (ci, s_in) = self.head_of(arc);
                if !visited[ci] {
                    visited[ci] = true;
                    out.push((ci, s_in == 0));
                }
            }
        }
        Ok(out)
    }

    /// First crossing met under-strand-first, if any.
    pub fn first_bad_crossing(&self, order: &TraversalOrder) -> Result<Option<usize>> {
        Ok(self
            .crossing_visit_order(order)?
            .into_iter()
            .find(|&(_, bad)| bad)
            .map(|(ci, _)| ci))
    }

    /// True iff the traversal meets every crossing over-strand first; such a
    /// diagram is an unlink of `num_components()` components.
    pub fn is_descending_unlink(&self, order: &TraversalOrder) -> bool {
        matches!(self.first_bad_crossing(order), Ok(None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn zero_crossing_diagrams_descend() {
        let d = Diagram::unlink(3);
        assert!(d.is_descending_unlink(&TraversalOrder::default_for(&d)));
    }

    #[test]
    fn trefoil_never_descends() {
        let t = pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
        for s in 0..6 {
            let order = TraversalOrder {
                components: vec![0],
                starts: vec![s],
            };
            assert!(!t.is_descending_unlink(&order));
        }
    }

    #[test]
    fn descending_kink_unknot() {
        // positive kink: first met on the over strand from some start
        let k = pd("X(1,1,2,2)");
        let descends = (0..2).any(|s| {
            k.is_descending_unlink(&TraversalOrder {
                components: vec![0],
                starts: vec![s],
            })
        });
        assert!(descends);
    }

    #[test]
    fn bad_crossing_reported() {
        let t = pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
        let order = TraversalOrder::default_for(&t);
        assert!(t.first_bad_crossing(&order).unwrap().is_some());
    }
}
