//! Oriented link diagrams as PD codes: parsing, components, linking numbers,
//! crossing surgery (switch/resolve), Reidemeister simplification, twist-region
//! insertion, and canonical encoding for memoization.

mod build;
mod canonical;
mod descend;
mod edit;
mod parse;
mod twist;

pub use build::{braid_closure, prime_knot_corpus, random_diagram, two_bridge_knot, BraidGen};
pub use descend::TraversalOrder;
pub use twist::{make_braid_crossing, TwistRegion};

use crate::error::{Error, Result};

pub type ArcId = u32;

/// One crossing of a PD code. `arcs` lists the four incident arcs
/// counterclockwise starting from the incoming under-arc (slot 0); the
/// under-strand exits at slot 2. `over_in` is the slot (1 or 3) at which the
/// over-strand enters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [ArcId; 4],
    pub over_in: u8,
}

impl Crossing {
    pub fn new(arcs: [ArcId; 4], over_in: u8) -> Self {
        debug_assert!(over_in == 1 || over_in == 3);
        Self { arcs, over_in }
    }

    /// Crossing sign: +1 when the over-strand enters at slot 3.
    pub fn sign(&self) -> i64 {
        if self.over_in == 3 {
            1
        } else {
            -1
        }
    }

    pub fn over_out(&self) -> u8 {
        self.over_in ^ 2
    }

    /// The slot at which the strand entering at `slot_in` exits.
    pub fn pass_through(slot_in: u8) -> u8 {
        (slot_in + 2) % 4
    }

    /// True if the given slot lies on the under-strand.
    pub fn is_under_slot(slot: u8) -> bool {
        slot % 2 == 0
    }

    /// Incoming slots are 0 (under) and `over_in`.
    pub fn is_incoming(&self, slot: u8) -> bool {
        slot == 0 || slot == self.over_in
    }
}

/// An oriented link diagram. Zero-crossing split circles are tracked by count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    circles: u32,
    twist: Option<TwistRegion>,
    /// Oriented arc cycles, one per crossing-bearing component, sorted by
    /// minimal arc id; computed at construction.
    components: Vec<Vec<ArcId>>,
    /// arc -> (crossing, slot) of its head (incoming) occurrence.
    heads: std::collections::HashMap<ArcId, (usize, u8)>,
}

impl Diagram {
    /// Build and validate a diagram from fully-oriented crossing data.
    pub fn new(crossings: Vec<Crossing>, circles: u32) -> Result<Self> {
        let mut d = Diagram {
            crossings,
            circles,
            twist: None,
            components: Vec::new(),
            heads: std::collections::HashMap::new(),
        };
        d.validate_arcs()?;
        d.heads = d.compute_heads()?;
        d.components = d.trace_components()?;
        Ok(d)
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn unlink(k: u32) -> Self {
        Diagram {
            crossings: Vec::new(),
            circles: k,
            twist: None,
            components: Vec::new(),
            heads: std::collections::HashMap::new(),
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn circles(&self) -> u32 {
        self.circles
    }

    pub fn twist_region(&self) -> Option<&TwistRegion> {
        self.twist.as_ref()
    }

    pub fn set_twist_region(&mut self, region: TwistRegion) {
        self.twist = Some(region);
    }

    pub fn clear_twist_region(&mut self) {
        self.twist = None;
    }

    /// Crossing-bearing components as oriented arc cycles (no circles).
    pub fn components(&self) -> &[Vec<ArcId>] {
        &self.components
    }

    /// Total component count including zero-crossing circles.
    pub fn num_components(&self) -> usize {
        self.components.len() + self.circles as usize
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign()).sum()
    }

    /// Index into `components()` of the component containing `arc`.
    pub fn component_of(&self, arc: ArcId) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&arc))
    }

    /// Half the signed count of crossings between components `i` and `j`.
    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64> {
        let n = self.num_components();
        if i >= n || j >= n {
            return Err(Error::UnknownComponent(i.max(j)));
        }
        if i == j {
            return Err(Error::OutOfRange(
                "linking number needs two distinct components".into(),
            ));
        }
        // circles never cross anything
        if i >= self.components.len() || j >= self.components.len() {
            return Ok(0);
        }
        let mut total = 0i64;
        for c in &self.crossings {
            let under = self.component_of(c.arcs[0]).unwrap();
            let over = self.component_of(c.arcs[1]).unwrap();
            if (under, over) == (i, j) || (under, over) == (j, i) {
                total += c.sign();
            }
        }
        debug_assert!(total % 2 == 0);
        Ok(total / 2)
    }

    fn validate_arcs(&self) -> Result<()> {
        if self.crossings.is_empty() && self.circles == 0 {
            return Err(Error::InvalidDiagram("empty diagram".into()));
        }
        let mut counts = std::collections::HashMap::<ArcId, u32>::new();
        for c in &self.crossings {
            if c.over_in != 1 && c.over_in != 3 {
                return Err(Error::InvalidDiagram(format!(
                    "over_in must be 1 or 3, got {}",
                    c.over_in
                )));
            }
            for &a in &c.arcs {
                *counts.entry(a).or_insert(0) += 1;
            }
        }
        for (a, n) in counts {
            if n != 2 {
                return Err(Error::InvalidDiagram(format!(
                    "arc {} appears {} times (expected 2)",
                    a, n
                )));
            }
        }
        Ok(())
    }

    /// Map arc -> [(crossing, slot); 2] over all occurrences.
    pub(crate) fn arc_occurrences(&self) -> std::collections::HashMap<ArcId, Vec<(usize, u8)>> {
        let mut occ: std::collections::HashMap<ArcId, Vec<(usize, u8)>> =
            std::collections::HashMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for (s, &a) in c.arcs.iter().enumerate() {
                occ.entry(a).or_default().push((ci, s as u8));
            }
        }
        occ
    }

    /// The occurrence at which `arc` enters a crossing (its head).
    pub(crate) fn head_of(&self, arc: ArcId) -> (usize, u8) {
        self.heads[&arc]
    }

    /// True if along every component the crossings alternate over/under
    /// (including the wrap-around from the last pass back to the first).
    pub fn is_alternating(&self) -> bool {
        for comp in self.components() {
            let passes: Vec<bool> = comp
                .iter()
                .map(|&a| {
                    let (ci, s_in) = self.head_of(a);
                    self.crossings[ci].over_in == s_in
                })
                .collect();
            for i in 0..passes.len() {
                if passes.len() > 1 && passes[i] == passes[(i + 1) % passes.len()] {
                    return false;
                }
            }
        }
        true
    }

    fn compute_heads(&self) -> Result<std::collections::HashMap<ArcId, (usize, u8)>> {
        let mut heads = std::collections::HashMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for (s, &a) in c.arcs.iter().enumerate() {
                if c.is_incoming(s as u8) && heads.insert(a, (ci, s as u8)).is_some() {
                    return Err(Error::InvalidDiagram(format!(
                        "arc {} has two incoming endpoints (unorientable data)",
                        a
                    )));
                }
            }
        }
        Ok(heads)
    }

    /// The arc following `arc` along its component's orientation.
    pub fn next_arc(&self, arc: ArcId) -> ArcId {
        let (ci, s) = self.head_of(arc);
        self.crossings[ci].arcs[Crossing::pass_through(s) as usize]
    }

    /// Trace oriented components; errors if the crossing data is inconsistent.
    fn trace_components(&self) -> Result<Vec<Vec<ArcId>>> {
        // check each arc has exactly one head and one tail
        let occ = self.arc_occurrences();
        for (a, slots) in &occ {
            let heads = slots
                .iter()
                .filter(|(ci, s)| self.crossings[*ci].is_incoming(*s))
                .count();
            if heads != 1 {
                return Err(Error::InvalidDiagram(format!(
                    "arc {} has {} incoming endpoints (unorientable data)",
                    a, heads
                )));
            }
        }
        let mut seen = std::collections::HashSet::<ArcId>::new();
        let mut comps: Vec<Vec<ArcId>> = Vec::new();
        let mut all_arcs: Vec<ArcId> = occ.keys().copied().collect();
        all_arcs.sort_unstable();
        for &start in &all_arcs {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut a = start;
            loop {
                cycle.push(a);
                seen.insert(a);
                a = self.next_arc(a);
                if a == start {
                    break;
                }
                if cycle.len() > 2 * self.crossings.len() + 1 {
                    return Err(Error::InvalidDiagram(
                        "component trace does not close".into(),
                    ));
                }
            }
            comps.push(cycle);
        }
        comps.sort_by_key(|c| c.iter().min().copied());
        Ok(comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn pd(text: &str) -> Diagram {
        text.parse().unwrap()
    }

    #[test]
    fn unknot_basics() {
        let u = Diagram::unknot();
        assert_eq!(u.num_components(), 1);
        assert_eq!(u.writhe(), 0);
    }

    #[test]
    fn left_trefoil_structure() {
        let t = pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
        assert_eq!(t.num_crossings(), 3);
        assert_eq!(t.num_components(), 1);
        assert_eq!(t.writhe(), -3);
    }

    #[test]
    fn hopf_link_structure() {
        let h = pd("X(1,3,2,4) X(3,1,4,2)");
        assert_eq!(h.num_components(), 2);
        let lk = h.linking_number(0, 1).unwrap();
        assert_eq!(lk.abs(), 1);
    }

    #[test]
    fn bad_arc_multiplicity_rejected() {
        assert!("X(1,1,1,2)".parse::<Diagram>().is_err());
    }
}
