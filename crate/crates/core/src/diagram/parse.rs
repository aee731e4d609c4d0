use std::fmt;
use std::str::FromStr;

use crate::diagram::{ArcId, Crossing, Diagram, TwistRegion};
use crate::error::{Error, Result};

/// Raw crossing as written: `X(a,b,c,d)` with `a` the incoming under-arc and
/// arcs listed counterclockwise. The over-strand direction is inferred.
struct RawCrossing {
    arcs: [ArcId; 4],
}

struct RawDiagram {
    crossings: Vec<RawCrossing>,
    circles: u32,
    twist_header: Option<(usize, Vec<ArcId>, Vec<bool>)>,
}

fn tokenize(text: &str) -> Result<RawDiagram> {
    let mut crossings = Vec::new();
    let mut circles = 0u32;
    let mut twist_header = None;
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        let mut rest = line.trim();
        while !rest.is_empty() {
            let (head, tail) = match rest.find(')') {
                Some(i) => (&rest[..=i], rest[i + 1..].trim_start()),
                None => return Err(Error::Parse(format!("unterminated token near '{rest}'"))),
            };
            rest = tail;
            let head = head.trim();
            if let Some(args) = head.strip_prefix("X(") {
                let args = args.strip_suffix(')').unwrap();
                let nums: Vec<ArcId> = args
                    .split(',')
                    .map(|t| t.trim().parse::<ArcId>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse(format!("bad X token '{head}'")))?;
                if nums.len() != 4 {
                    return Err(Error::Parse(format!("X token needs 4 arcs: '{head}'")));
                }
                crossings.push(RawCrossing {
                    arcs: [nums[0], nums[1], nums[2], nums[3]],
                });
            } else if let Some(args) = head.strip_prefix("O(") {
                let args = args.strip_suffix(')').unwrap();
                args.trim()
                    .parse::<ArcId>()
                    .map_err(|_| Error::Parse(format!("bad O token '{head}'")))?;
                circles += 1;
            } else if let Some(args) = head.strip_prefix("TWIST(") {
                let args = args.strip_suffix(')').unwrap();
                let parts: Vec<&str> = args.split(';').collect();
                if parts.len() != 3 {
                    return Err(Error::Parse(
                        "TWIST needs 3 ';'-separated fields: k; arcs; pattern".into(),
                    ));
                }
                let k: usize = parts[0]
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse("bad TWIST strand count".into()))?;
                let arcs: Vec<ArcId> = parts[1]
                    .split(|ch: char| ch == ',' || ch.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<ArcId>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse("bad TWIST arc list".into()))?;
                let pattern: Vec<bool> = parts[2]
                    .trim()
                    .chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        'u' | 'U' => Ok(true),
                        'd' | 'D' => Ok(false),
                        _ => Err(Error::Parse(format!("bad pattern char '{c}'"))),
                    })
                    .collect::<Result<_>>()?;
                if arcs.len() != k || pattern.len() != k {
                    return Err(Error::Parse(
                        "TWIST arc list and pattern must have k entries".into(),
                    ));
                }
                twist_header = Some((k, arcs, pattern));
            } else {
                return Err(Error::Parse(format!("unknown token '{head}'")));
            }
        }
    }
    Ok(RawDiagram {
        crossings,
        circles,
        twist_header,
    })
}

/// Infer strand orientations and over-strand directions from raw PD data.
///
/// In strict mode (text input) the under-strand at each crossing flows
/// slot 0 -> slot 2 by convention, which pins the orientation of every
/// component with at least one under-pass. In lenient mode (programmatic
/// builders) the under-strand may flow 2 -> 0 instead; such crossings are
/// rotated into convention. Components that are over-strands everywhere are
/// oriented along increasing arc numbering.
pub(crate) fn orient_raw(raw_arcs: &[[ArcId; 4]], strict: bool) -> Result<Vec<Crossing>> {
    let raw: Vec<RawCrossing> = raw_arcs.iter().map(|&arcs| RawCrossing { arcs }).collect();
    orient_impl(&raw, strict)
}

fn orient(raw: &RawDiagram) -> Result<Vec<Crossing>> {
    orient_impl(&raw.crossings, true)
}

fn orient_impl(raw: &[RawCrossing], strict: bool) -> Result<Vec<Crossing>> {
    let n = raw.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    // arc occurrences
    let mut occ: std::collections::HashMap<ArcId, Vec<(usize, u8)>> =
        std::collections::HashMap::new();
    for (ci, c) in raw.iter().enumerate() {
        for (s, &a) in c.arcs.iter().enumerate() {
            occ.entry(a).or_default().push((ci, s as u8));
        }
    }
    for (a, slots) in &occ {
        if slots.len() != 2 {
            return Err(Error::InvalidDiagram(format!(
                "arc {} appears {} times (expected 2)",
                a,
                slots.len()
            )));
        }
    }

    // trace unoriented components; record passages (crossing, entry slot)
    let mut over_in = vec![0u8; n]; // 0 = undetermined
    let mut rot = vec![4u8; n]; // under-in slot before rotation; 4 = unseen
    let mut arc_seen = std::collections::HashSet::<ArcId>::new();
    let mut arc_order: Vec<ArcId> = occ.keys().copied().collect();
    arc_order.sort_unstable();

    for &start in &arc_order {
        if arc_seen.contains(&start) {
            continue;
        }
        // walk: from an arc occurrence, pass through the crossing, continue
        let mut passages: Vec<(usize, u8)> = Vec::new();
        let mut cycle_arcs: Vec<ArcId> = Vec::new();
        let (mut ci, mut s_in) = occ[&start][0];
        let mut arc = start;
        loop {
            cycle_arcs.push(arc);
            arc_seen.insert(arc);
            passages.push((ci, s_in));
            let s_out = Crossing::pass_through(s_in);
            let next = raw[ci].arcs[s_out as usize];
            // the next entry occurrence is the OTHER occurrence of `next`
            let pair = &occ[&next];
            let (nci, ns) = if pair[0] == (ci, s_out) {
                pair[1]
            } else {
                pair[0]
            };
            arc = next;
            ci = nci;
            s_in = ns;
            if arc == start && (ci, s_in) == occ[&start][0] {
                break;
            }
            if cycle_arcs.len() > 2 * n + 1 {
                return Err(Error::InvalidDiagram("strand trace does not close".into()));
            }
        }
        // orientation votes from under-passes (strict mode only)
        let mut agree = 0usize;
        let mut disagree = 0usize;
        for &(_, s) in &passages {
            match s {
                0 => agree += 1,
                2 => disagree += 1,
                _ => {}
            }
        }
        let flip = if strict && agree > 0 && disagree > 0 {
            return Err(Error::InvalidDiagram(
                "inconsistent under-strand orientations".into(),
            ));
        } else if strict && disagree > 0 {
            true
        } else if strict && agree > 0 {
            false
        } else if !strict && agree + disagree > 0 {
            // lenient: any direction is representable; keep traversal direction
            false
        } else {
            // all-over component: orient along increasing arc numbering
            let fwd = numbering_score(&cycle_arcs);
            let mut rev = cycle_arcs.clone();
            rev.reverse();
            numbering_score(&rev) > fwd
        };
        for &(pci, ps) in &passages {
            let s_in = if flip { Crossing::pass_through(ps) } else { ps };
            if s_in % 2 == 1 {
                if over_in[pci] != 0 {
                    return Err(Error::InvalidDiagram(format!(
                        "crossing {} has two over-strand entries",
                        pci
                    )));
                }
                over_in[pci] = s_in;
            } else {
                if rot[pci] != 4 {
                    return Err(Error::InvalidDiagram(format!(
                        "crossing {} has two under-strand entries",
                        pci
                    )));
                }
                rot[pci] = s_in;
            }
        }
    }
    let crossings = raw
        .iter()
        .zip(over_in.iter().zip(&rot))
        .map(|(rc, (&oi, &r))| {
            if (oi != 1 && oi != 3) || (r != 0 && r != 2) {
                return Err(Error::InvalidDiagram(
                    "could not infer strand directions".into(),
                ));
            }
            // rotate so the incoming under-arc sits in slot 0
            let arcs = [
                rc.arcs[r as usize],
                rc.arcs[((r + 1) % 4) as usize],
                rc.arcs[((r + 2) % 4) as usize],
                rc.arcs[((r + 3) % 4) as usize],
            ];
            Ok(Crossing::new(arcs, (oi + 4 - r) % 4))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(crossings)
}

fn numbering_score(cycle: &[ArcId]) -> usize {
    cycle
        .iter()
        .zip(cycle.iter().cycle().skip(1))
        .filter(|(a, b)| **b == **a + 1)
        .count()
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let raw = tokenize(text)?;
        let crossings = orient(&raw)?;
        let mut d = Diagram::new(crossings, raw.circles)?;
        if let Some((k, arcs, pattern)) = raw.twist_header {
            d.set_twist_region(TwistRegion::template(k, arcs, pattern)?);
        }
        Ok(d)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in self.crossings() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(
                f,
                "X({},{},{},{})",
                c.arcs[0], c.arcs[1], c.arcs[2], c.arcs[3]
            )?;
        }
        let max_arc = self
            .crossings()
            .iter()
            .flat_map(|c| c.arcs.iter())
            .max()
            .copied()
            .unwrap_or(0);
        for i in 0..self.circles() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "O({})", max_arc + 1 + i)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_trefoil_orientation() {
        // standard left-handed trefoil PD: every crossing negative
        let t: Diagram = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".parse().unwrap();
        for c in t.crossings() {
            assert_eq!(c.over_in, 1);
            assert_eq!(c.sign(), -1);
        }
        assert_eq!(t.writhe(), -3);
    }

    #[test]
    fn right_trefoil_orientation() {
        let t: Diagram = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)".parse().unwrap();
        assert_eq!(t.writhe(), 3);
        assert_eq!(t.num_components(), 1);
    }

    #[test]
    fn circles_and_comments() {
        let d: Diagram = "# a two-component unlink\nO(1) O(2)".parse().unwrap();
        assert_eq!(d.num_components(), 2);
        assert_eq!(d.num_crossings(), 0);
    }

    #[test]
    fn empty_input_rejected() {
        assert!("".parse::<Diagram>().is_err());
        assert!("# only a comment".parse::<Diagram>().is_err());
    }

    #[test]
    fn twist_header_parsed() {
        let d: Diagram = "TWIST(2; 1 3; ud) X(1,3,2,4) X(3,1,4,2)".parse().unwrap();
        let r = d.twist_region().unwrap();
        assert_eq!(r.strand_count(), 2);
        assert_eq!(r.pattern(), &[true, false]);
    }

    #[test]
    fn display_reparses() {
        for s in ["X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)", "X(1,3,2,4) X(3,1,4,2)"] {
            let d: Diagram = s.parse().unwrap();
            let d2: Diagram = d.to_string().parse().unwrap();
            assert_eq!(d, d2);
        }
    }
}
