use crate::diagram::{ArcId, Crossing, Diagram};
use crate::error::{Error, Result};

/// A marked disk through which `k` parallel strands pass. In a template the
/// region is untwisted (`twist_count == 0`) and `arcs` lists, left to right,
/// the arcs cut by the disk; `pattern[i]` is true when the strand at position
/// `i` is oriented upward (into the region from below).
///
/// After `insert_full_twists`, `twist_count` records the inserted twists and
/// `schedule` holds the crossing indices of the innermost half twist in label
/// order c_1..c_{k(k-1)/2}; switching exactly those crossings yields the
/// (n-1)-twist diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistRegion {
    arcs: Vec<ArcId>,
    pattern: Vec<bool>,
    twist_count: i64,
    schedule: Vec<usize>,
}

impl TwistRegion {
    pub fn template(k: usize, arcs: Vec<ArcId>, pattern: Vec<bool>) -> Result<Self> {
        if !(2..=5).contains(&k) {
            return Err(Error::UnsupportedStrandCount(k));
        }
        if arcs.len() != k || pattern.len() != k {
            return Err(Error::TwistRegionMismatch(format!(
                "expected {} arcs and pattern entries, got {} and {}",
                k,
                arcs.len(),
                pattern.len()
            )));
        }
        let mut distinct = arcs.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != k {
            return Err(Error::TwistRegionMismatch(
                "region arcs must be distinct".into(),
            ));
        }
        Ok(TwistRegion {
            arcs,
            pattern,
            twist_count: 0,
            schedule: Vec::new(),
        })
    }

    pub fn strand_count(&self) -> usize {
        self.pattern.len()
    }

    pub fn arcs(&self) -> &[ArcId] {
        &self.arcs
    }

    pub fn pattern(&self) -> &[bool] {
        &self.pattern
    }

    pub fn twist_count(&self) -> i64 {
        self.twist_count
    }

    /// Crossing indices of the marked half twist, in label order.
    pub fn schedule(&self) -> &[usize] {
        &self.schedule
    }
}

/// Build one braid crossing. The left strand runs SW -> NE (entering as `a`,
/// leaving as `na`), the right strand SE -> NW (entering as `b`, leaving as
/// `nb`); `over_left` says which strand is on top, and the `up_*` flags give
/// each strand's orientation (true = flowing upward with the braid).
///
/// Slots are assigned counterclockwise from the incoming under-arc, with the
/// counterclockwise order of compass ends being SE, NE, NW, SW.
pub fn make_braid_crossing(
    a: ArcId,
    b: ArcId,
    nb: ArcId,
    na: ArcId,
    over_left: bool,
    up_left: bool,
    up_right: bool,
) -> Crossing {
    #[derive(Clone, Copy, PartialEq)]
    enum Compass {
        Se,
        Ne,
        Nw,
        Sw,
    }
    use Compass::*;
    let ccw = |c: Compass| match c {
        Se => Ne,
        Ne => Nw,
        Nw => Sw,
        Sw => Se,
    };
    let arc_at = |c: Compass| match c {
        Sw => a,
        Se => b,
        Nw => nb,
        Ne => na,
    };
    let under_in = if over_left {
        // right strand is under
        if up_right {
            Se
        } else {
            Nw
        }
    } else if up_left {
        Sw
    } else {
        Ne
    };
    let over_in = if over_left {
        if up_left {
            Sw
        } else {
            Ne
        }
    } else if up_right {
        Se
    } else {
        Nw
    };
    let mut slots = [under_in; 4];
    for i in 1..4 {
        slots[i] = ccw(slots[i - 1]);
    }
    let over_slot = slots.iter().position(|&c| c == over_in).unwrap() as u8;
    debug_assert!(over_slot == 1 || over_slot == 3);
    Crossing::new(
        [
            arc_at(slots[0]),
            arc_at(slots[1]),
            arc_at(slots[2]),
            arc_at(slots[3]),
        ],
        over_slot,
    )
}

/// The standard half-twist braid word on `k` strands:
/// (s1)(s2 s1)(s3 s2 s1)...(s_{k-1}...s1), as 1-based generator indices.
pub(crate) fn half_twist_word(k: usize) -> Vec<usize> {
    let mut w = Vec::with_capacity(k * (k - 1) / 2);
    for j in 1..k {
        for i in (1..=j).rev() {
            w.push(i);
        }
    }
    w
}

impl Diagram {
    /// Replace this template's marked region by `n` full twists. For `n >= 1`
    /// the crossings of the innermost (first) half twist are recorded as the
    /// region's marked schedule.
    pub fn insert_full_twists(&self, n: i64) -> Result<Diagram> {
        let region = self.twist_region().ok_or(Error::NoTwistRegion)?;
        if region.twist_count != 0 {
            return Err(Error::TwistRegionMismatch(
                "twists already inserted in this region".into(),
            ));
        }
        let k = region.strand_count();
        let occ = self.arc_occurrences();
        for &a in &region.arcs {
            if !occ.contains_key(&a) {
                return Err(Error::TwistRegionMismatch(format!(
                    "region arc {} not present in diagram",
                    a
                )));
            }
        }
        let mut next_arc: ArcId = occ.keys().max().copied().unwrap_or(0) + 1;
        let mut fresh = || {
            let a = next_arc;
            next_arc += 1;
            a
        };

        let mut crossings = self.crossings().to_vec();
        let base = crossings.len();
        let mut cur: Vec<ArcId> = region.arcs.clone();
        let mut strand: Vec<usize> = (0..k).collect();
        let word = half_twist_word(k);
        let halves = 2 * n.unsigned_abs() as usize;
        for _ in 0..halves {
            for &g in &word {
                let (p, q) = (g - 1, g);
                let (a, b) = (cur[p], cur[q]);
                let (na, nb) = (fresh(), fresh());
                crossings.push(make_braid_crossing(
                    a,
                    b,
                    nb,
                    na,
                    n > 0,
                    region.pattern[strand[p]],
                    region.pattern[strand[q]],
                ));
                cur[p] = nb;
                cur[q] = na;
                strand.swap(p, q);
            }
        }
        debug_assert_eq!(strand, (0..k).collect::<Vec<_>>());

        // rewire the template occurrence above the region of each cut arc to
        // the braid's top arc: the head occurrence for an upward strand, the
        // tail occurrence for a downward one
        for (i, &orig) in region.arcs.iter().enumerate() {
            let top = cur[i];
            if top == orig {
                continue; // n == 0: nothing was cut
            }
            let up = region.pattern[i];
            let (ci, s) = occ[&orig]
                .iter()
                .copied()
                .find(|&(ci, s)| ci < base && (self.crossings()[ci].is_incoming(s) == up))
                .ok_or_else(|| {
                    Error::TwistRegionMismatch(format!(
                        "region arc {} has no endpoint above the region",
                        orig
                    ))
                })?;
            crossings[ci].arcs[s as usize] = top;
        }

        let schedule: Vec<usize> = if n >= 1 {
            (base..base + k * (k - 1) / 2).collect()
        } else {
            Vec::new()
        };
        let mut d = Diagram::new(crossings, self.circles())?;
        d.set_twist_region(TwistRegion {
            arcs: region.arcs.clone(),
            pattern: region.pattern.clone(),
            twist_count: n,
            schedule,
        });
        Ok(d)
    }
}
