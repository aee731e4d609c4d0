use crate::diagram::{ArcId, Diagram};

impl Diagram {
    /// An opaque canonical encoding: two diagrams related by arc/crossing
    /// relabeling produce the same key; structurally distinct PD codes
    /// produce distinct keys. Used as the memoization key by the skein
    /// engine.
    ///
    /// Connected pieces (components linked through shared crossings) are
    /// encoded independently via a minimum-over-basepoints traversal
    /// relabeling, then sorted; the zero-crossing circle count is appended.
    pub fn canonical_key(&self) -> String {
        let mut piece_keys: Vec<String> = self
            .connected_pieces()
            .iter()
            .map(|piece| self.piece_key(piece))
            .collect();
        piece_keys.sort();
        format!("{}|O{}", piece_keys.join("|"), self.circles())
    }

    /// Groups of component indices linked through shared crossings.
    fn connected_pieces(&self) -> Vec<Vec<usize>> {
        let n = self.components().len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let r = find(parent, parent[i]);
                parent[i] = r;
            }
            parent[i]
        }
        for c in self.crossings() {
            let a = self.component_of(c.arcs[0]).unwrap();
            let b = self.component_of(c.arcs[1]).unwrap();
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> =
            std::collections::BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    fn piece_key(&self, piece: &[usize]) -> String {
        let mut best: Option<Vec<[u32; 5]>> = None;
        for &comp in piece {
            for start_idx in 0..self.components()[comp].len() {
                let start = self.components()[comp][start_idx];
                let enc = self.encode_from(start, piece);
                if best.as_ref().is_none_or(|b| enc < *b) {
                    best = Some(enc);
                }
            }
        }
        let enc = best.unwrap_or_default();
        let mut s = String::new();
        for t in enc {
            s.push_str(&format!("{},{},{},{},{};", t[0], t[1], t[2], t[3], t[4]));
        }
        s
    }

    /// Relabel arcs by first-visit order of a deterministic traversal
    /// starting at `start`, then return the sorted crossing tuples.
    fn encode_from(&self, start: ArcId, piece: &[usize]) -> Vec<[u32; 5]> {
        let mut label: std::collections::HashMap<ArcId, u32> = std::collections::HashMap::new();
        let mut next_label = 1u32;
        let mut traversed: std::collections::HashSet<usize> = std::collections::HashSet::new();
        let mut pending: Vec<ArcId> = Vec::new();
        let mut crossing_set: std::collections::HashSet<usize> = std::collections::HashSet::new();

        let mut current = Some(start);
        while let Some(s) = current {
            let comp = self.component_of(s).unwrap();
            traversed.insert(comp);
            let mut a = s;
            loop {
                label.entry(a).or_insert_with(|| {
                    let l = next_label;
                    next_label += 1;
                    l
                });
                let (ci, s_in) = self.head_of(a);
                crossing_set.insert(ci);
                for k in 1..4u8 {
                    pending.push(self.crossings()[ci].arcs[((s_in + k) % 4) as usize]);
                }
                a = self.crossings()[ci].arcs[((s_in + 2) % 4) as usize];
                if a == s {
                    break;
                }
            }
            // next component: first pending arc in an untraversed component
            current = pending
                .iter()
                .find(|&&p| !traversed.contains(&self.component_of(p).unwrap()))
                .copied();
        }
        debug_assert_eq!(traversed.len(), piece.len());
        let mut out: Vec<[u32; 5]> = crossing_set
            .into_iter()
            .map(|ci| {
                let c = &self.crossings()[ci];
                [
                    label[&c.arcs[0]],
                    label[&c.arcs[1]],
                    label[&c.arcs[2]],
                    label[&c.arcs[3]],
                    c.over_in as u32,
                ]
            })
            .collect();
        out.sort_unstable();
        out
    }
}
