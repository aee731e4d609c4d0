use crate::diagram::{ArcId, Crossing, Diagram};
use crate::error::{Error, Result};

/// Union-find over arc ids, used when sewing arcs together.
struct ArcUnion {
    parent: std::collections::HashMap<ArcId, ArcId>,
}

impl ArcUnion {
    fn new() -> Self {
        Self {
            parent: std::collections::HashMap::new(),
        }
    }

    fn find(&mut self, a: ArcId) -> ArcId {
        let p = *self.parent.get(&a).unwrap_or(&a);
        if p == a {
            return a;
        }
        let root = self.find(p);
        self.parent.insert(a, root);
        root
    }

    fn union(&mut self, a: ArcId, b: ArcId) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller id as representative
            let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(drop, keep);
        }
    }
}

impl Diagram {
    /// Exchange the over- and under-strands at crossing `c`.
    pub fn switch_crossing(&self, c: usize) -> Result<Diagram> {
        let old = *self.crossings().get(c).ok_or(Error::InvalidCrossing(c))?;
        let mut crossings = self.crossings().to_vec();
        crossings[c] = switched(&old);
        let mut d = Diagram::new(crossings, self.circles())?;
        if let Some(r) = self.twist_region() {
            d.set_twist_region(r.clone());
        }
        Ok(d)
    }

    /// Apply the oriented smoothing at crossing `c`. Returns the smoothed
    /// diagram and delta: 0 if the two strands at `c` belonged to the same
    /// component (count goes up by one), 1 otherwise (count goes down).
    pub fn resolve_crossing(&self, c: usize) -> Result<(Diagram, u8)> {
        let cr = *self.crossings().get(c).ok_or(Error::InvalidCrossing(c))?;
        let under_comp = self.component_of(cr.arcs[0]).unwrap();
        let over_comp = self.component_of(cr.arcs[1]).unwrap();
        let delta = if under_comp == over_comp { 0 } else { 1 };
        // oriented smoothing: join under-in to over-out and over-in to under-out
        let sew = [(0u8, cr.over_out()), (cr.over_in, 2u8)];
        let d = self.remove_crossings(&[(c, sew)])?;
        Ok((d, delta))
    }

    /// All crossings switched: the mirror diagram.
    pub fn mirror_diagram(&self) -> Diagram {
        let crossings = self.crossings().iter().map(switched).collect();
        let mut d = Diagram::new(crossings, self.circles()).expect("mirror preserves validity");
        if let Some(r) = self.twist_region() {
            d.set_twist_region(r.clone());
        }
        d
    }

    /// Delete the given crossings, sewing the listed slot pairs of each
    /// deleted crossing together. Arc classes left with no endpoint at a
    /// surviving crossing become zero-crossing circles.
    pub(crate) fn remove_crossings(&self, removals: &[(usize, [(u8, u8); 2])]) -> Result<Diagram> {
        let dead: std::collections::HashSet<usize> = removals.iter().map(|r| r.0).collect();
        let mut uf = ArcUnion::new();
        for (ci, sews) in removals {
            let cr = &self.crossings()[*ci];
            for (s1, s2) in sews {
                uf.union(cr.arcs[*s1 as usize], cr.arcs[*s2 as usize]);
            }
        }
        let mut kept: Vec<Crossing> = Vec::new();
        let mut live_classes = std::collections::HashSet::<ArcId>::new();
        for (ci, cr) in self.crossings().iter().enumerate() {
            if dead.contains(&ci) {
                continue;
            }
            let arcs = [
                uf.find(cr.arcs[0]),
                uf.find(cr.arcs[1]),
                uf.find(cr.arcs[2]),
                uf.find(cr.arcs[3]),
            ];
            for a in arcs {
                live_classes.insert(a);
            }
            kept.push(Crossing::new(arcs, cr.over_in));
        }
        // classes touched by the removal that no longer meet any crossing
        let mut dead_classes = std::collections::HashSet::<ArcId>::new();
        for (ci, _) in removals {
            for &a in &self.crossings()[*ci].arcs {
                let root = uf.find(a);
                if !live_classes.contains(&root) {
                    dead_classes.insert(root);
                }
            }
        }
        let circles = self.circles() + dead_classes.len() as u32;
        Diagram::new(kept, circles)
    }

    /// Repeatedly remove Reidemeister-1 kinks and Reidemeister-2 bigons until
    /// neither applies. Any marked twist region is dropped (its crossing
    /// bookkeeping would not survive).
    pub fn simplify(&self) -> Diagram {
        let mut d = self.clone();
        d.clear_twist_region();
        loop {
            if let Some(c) = find_r1(&d) {
                // delete the crossing, sewing both strands straight through
                d = d
                    .remove_crossings(&[(c, [(0, 2), (1, 3)])])
                    .expect("R1 removal preserves validity");
                continue;
            }
            if let Some((c1, c2)) = find_r2(&d) {
                d = d
                    .remove_crossings(&[(c1, [(0, 2), (1, 3)]), (c2, [(0, 2), (1, 3)])])
                    .expect("R2 removal preserves validity");
                continue;
            }
            return d;
        }
    }
}

fn switched(c: &Crossing) -> Crossing {
    // rotate so the old over-strand's incoming arc lands in slot 0
    let r = c.over_in as usize;
    let arcs = [
        c.arcs[r],
        c.arcs[(r + 1) % 4],
        c.arcs[(r + 2) % 4],
        c.arcs[(r + 3) % 4],
    ];
    // the old under-in (slot 0) moves to slot 4 - r; it is the new over-in
    let over_in = (4 - r) as u8;
    Crossing::new(arcs, over_in)
}

/// A crossing with two cyclically adjacent slots carrying the same arc.
fn find_r1(d: &Diagram) -> Option<usize> {
    d.crossings()
        .iter()
        .position(|c| (0..4).any(|i| c.arcs[i] == c.arcs[(i + 1) % 4]))
}

/// Two crossings joined by a bigon whose over-strand is the same strand at
/// both ends: the poke move removes both.
fn find_r2(d: &Diagram) -> Option<(usize, usize)> {
    let occ = d.arc_occurrences();
    let n = d.num_crossings();
    for c1 in 0..n {
        for c2 in c1 + 1..n {
            let shared: Vec<ArcId> = d.crossings()[c1]
                .arcs
                .iter()
                .filter(|a| d.crossings()[c2].arcs.contains(a))
                .copied()
                .collect();
            for i in 0..shared.len() {
                for j in 0..shared.len() {
                    if i == j {
                        continue;
                    }
                    let (a, b) = (shared[i], shared[j]);
                    if a == b {
                        continue;
                    }
                    // a must ride the over-strand at both crossings, b the under
                    let on = |arc: ArcId, ci: usize, want_over: bool| {
                        occ[&arc]
                            .iter()
                            .any(|&(oc, s)| oc == ci && Crossing::is_under_slot(s) != want_over)
                    };
                    if on(a, c1, true) && on(a, c2, true) && on(b, c1, false) && on(b, c2, false) {
                        return Some((c1, c2));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn switch_is_involution() {
        let t = pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
        let s = t.switch_crossing(1).unwrap();
        assert_ne!(s, t);
        assert_eq!(s.switch_crossing(1).unwrap(), t);
        assert_eq!(s.writhe(), t.writhe() + 2);
    }

    #[test]
    fn switch_hopf_negates_linking() {
        let h = pd("X(1,3,2,4) X(3,1,4,2)");
        let lk = h.linking_number(0, 1).unwrap();
        let s = h.switch_crossing(0).unwrap().switch_crossing(1).unwrap();
        assert_eq!(s.linking_number(0, 1).unwrap(), -lk);
    }

    #[test]
    fn resolve_hopf_gives_unknot() {
        let h = pd("X(1,3,2,4) X(3,1,4,2)");
        let (r, delta) = h.resolve_crossing(0).unwrap();
        assert_eq!(delta, 1);
        assert_eq!(r.num_components(), 1);
        let r = r.simplify();
        assert_eq!(r.num_crossings(), 0);
        assert_eq!(r.num_components(), 1);
    }

    #[test]
    fn resolve_kink_gives_unlink() {
        // one-crossing unknot diagram (R1 kink): X(1,2,2,3)? use a valid kink:
        let k = pd("X(1,1,2,2)");
        assert_eq!(k.num_components(), 1);
        let (r, delta) = k.resolve_crossing(0).unwrap();
        assert_eq!(delta, 0);
        assert_eq!(r.num_components(), 2);
        assert_eq!(r.num_crossings(), 0);
    }

    #[test]
    fn simplify_kink() {
        let k = pd("X(1,1,2,2)");
        let s = k.simplify();
        assert_eq!(s.num_crossings(), 0);
        assert_eq!(s.num_components(), 1);
    }

    #[test]
    fn simplify_leaves_trefoil() {
        let t = pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
        let s = t.simplify();
        assert_eq!(s.num_crossings(), 3);
    }

    #[test]
    fn mirror_negates_writhe() {
        let t = pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
        assert_eq!(t.mirror_diagram().writhe(), 3);
        assert_eq!(t.mirror_diagram().mirror_diagram(), t);
    }
}
