use rand::Rng;

use crate::diagram::parse::orient_raw;
use crate::diagram::{make_braid_crossing, ArcId, Diagram};
use crate::error::{Error, Result};

/// One letter of a braid word: generator index (1-based) with handedness.
pub type BraidGen = i32;

/// Closure of a braid word on `strands` strands, all strands oriented upward.
/// Letter `g > 0` crosses positions g, g+1 with the left strand over;
/// `g < 0` is the inverse crossing.
pub fn braid_closure(strands: usize, word: &[BraidGen]) -> Result<Diagram> {
    if strands < 1 {
        return Err(Error::OutOfRange("braid needs at least one strand".into()));
    }
    for &g in word {
        if g == 0 || g.unsigned_abs() as usize >= strands {
            return Err(Error::OutOfRange(format!(
                "generator {} out of range for {} strands",
                g, strands
            )));
        }
    }
    let init: Vec<ArcId> = (1..=strands as ArcId).collect();
    let mut cur = init.clone();
    let mut next_arc = strands as ArcId + 1;
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let p = g.unsigned_abs() as usize - 1;
        let (a, b) = (cur[p], cur[p + 1]);
        let (na, nb) = (next_arc, next_arc + 1);
        next_arc += 2;
        crossings.push(make_braid_crossing(a, b, nb, na, g > 0, true, true));
        cur[p] = nb;
        cur[p + 1] = na;
    }
    // close up: the top of position i joins the bottom of position i
    let mut circles = 0u32;
    for i in 0..strands {
        let (top, bottom) = (cur[i], init[i]);
        if top == bottom {
            // this strand met no crossing: a free circle
            circles += 1;
            continue;
        }
        for c in crossings.iter_mut() {
            for s in 0..4 {
                if c.arcs[s] == top {
                    c.arcs[s] = bottom;
                }
            }
        }
    }
    Diagram::new(crossings, circles)
}

/// The continued fraction [a1, a2, ...] of p/q with all terms positive:
/// p/q = a1 + 1/(a2 + 1/(...)).
fn continued_fraction(mut p: u64, mut q: u64) -> Vec<u64> {
    let mut cf = Vec::new();
    while q != 0 {
        cf.push(p / q);
        let r = p % q;
        p = q;
        q = r;
    }
    // the twist construction consumes terms innermost-first, alternating
    // horizontal and vertical batches starting and ending horizontal, so the
    // expansion must have odd length: [..., a] = [..., a-1, 1]
    if cf.len() % 2 == 0 {
        let last = cf.pop().unwrap();
        if last > 1 {
            cf.push(last - 1);
            cf.push(1);
        } else {
            // [..., b, 1] = [..., b+1]
            let prev = cf.pop().unwrap();
            cf.push(prev + 1);
        }
    }
    cf
}

/// The standard alternating diagram of the 2-bridge knot C(p/q): the
/// numerator closure of the rational tangle with continued fraction p/q.
/// Requires p odd (even p gives a 2-component link), p > q >= 1, gcd = 1.
pub fn two_bridge_knot(p: u64, q: u64) -> Result<Diagram> {
    if p % 2 == 0 || q == 0 || q >= p || gcd(p, q) != 1 {
        return Err(Error::OutOfRange(format!(
            "C({}/{}) is not a 2-bridge knot form",
            p, q
        )));
    }
    let cf = continued_fraction(p, q);
    // build the rational tangle: alternate horizontal (east) and vertical
    // (south) twist batches, starting with east, consuming cf from the last
    // term backward so the closure realizes p/q
    let mut raw: Vec<[ArcId; 4]> = Vec::new();
    let mut next_arc: ArcId = 1;
    let mut fresh = || {
        let a = next_arc;
        next_arc += 1;
        a
    };
    // 0-tangle: one strand joins NW-NE, the other SW-SE
    let top = fresh();
    let bot = fresh();
    let (nw, mut ne, mut sw, mut se) = (top, top, bot, bot);
    let mut horizontal = true;
    for &a in cf.iter().rev() {
        for _ in 0..a {
            if horizontal {
                // crossing to the east of the tangle, on strands ne/se;
                // under pair (ne, new_se) — using the matching handedness in
                // both directions keeps the final diagram alternating
                let (new_ne, new_se) = (fresh(), fresh());
                raw.push([ne, se, new_se, new_ne]);
                ne = new_ne;
                se = new_se;
            } else {
                // crossing to the south, on strands sw/se;
                // under pair (sw, new_se)
                let (new_sw, new_se) = (fresh(), fresh());
                raw.push([sw, new_sw, new_se, se]);
                sw = new_sw;
                se = new_se;
            }
        }
        horizontal = !horizontal;
    }
    if raw.is_empty() {
        return Err(Error::OutOfRange("trivial tangle".into()));
    }
    // numerator closure: join NW-NE and SW-SE
    let subs: Vec<(ArcId, ArcId)> = vec![(ne.max(nw), ne.min(nw)), (se.max(sw), se.min(sw))];
    for c in raw.iter_mut() {
        for s in 0..4 {
            for &(from, to) in &subs {
                if c[s] == from {
                    c[s] = to;
                }
            }
        }
    }
    let crossings = orient_raw(&raw, false)?;
    Diagram::new(crossings, 0)
}

/// Alternating diagrams of every prime knot with at most 7 crossings (all of
/// which are 2-bridge), labeled by their standard table names.
pub fn prime_knot_corpus() -> Vec<(&'static str, Diagram)> {
    // (name, p, q) with C(p/q) the knot's 2-bridge fraction
    let table: [(&'static str, u64, u64); 14] = [
        ("3_1", 3, 1),
        ("4_1", 5, 2),
        ("5_1", 5, 1),
        ("5_2", 7, 2),
        ("6_1", 9, 2),
        ("6_2", 11, 3),
        ("6_3", 13, 5),
        ("7_1", 7, 1),
        ("7_2", 11, 2),
        ("7_3", 13, 4),
        ("7_4", 15, 4),
        ("7_5", 17, 7),
        ("7_6", 19, 7),
        ("7_7", 21, 8),
    ];
    table
        .iter()
        .map(|&(name, p, q)| {
            (
                name,
                two_bridge_knot(p, q).expect("table fractions are valid"),
            )
        })
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A random braid-closure diagram with at most `max_crossings` crossings.
pub fn random_diagram<R: Rng>(rng: &mut R, strands: usize, crossings: usize) -> Diagram {
    loop {
        let word: Vec<BraidGen> = (0..crossings)
            .map(|_| {
                let g = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        if let Ok(d) = braid_closure(strands, &word) {
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_closure_trefoil() {
        let t = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(t.num_crossings(), 3);
        assert_eq!(t.num_components(), 1);
        assert_eq!(t.writhe(), 3);
    }

    #[test]
    fn braid_closure_components_follow_permutation() {
        // identity braid word on 3 strands: 3 circles
        let d = braid_closure(3, &[]).unwrap();
        assert_eq!(d.num_components(), 3);
        // sigma_1 alone on 2 strands: unknot with a kink
        let d = braid_closure(2, &[1]).unwrap();
        assert_eq!(d.num_components(), 1);
        assert_eq!(d.writhe(), 1);
        // hopf link
        let d = braid_closure(2, &[1, 1]).unwrap();
        assert_eq!(d.num_components(), 2);
        assert_eq!(d.linking_number(0, 1).unwrap(), 1);
    }

    #[test]
    fn two_bridge_structure() {
        let t = two_bridge_knot(3, 1).unwrap();
        assert_eq!(t.num_crossings(), 3);
        assert_eq!(t.num_components(), 1);
        assert_eq!(t.writhe().abs(), 3);
        let f8 = two_bridge_knot(5, 2).unwrap();
        assert_eq!(f8.num_crossings(), 4);
        assert_eq!(f8.num_components(), 1);
        assert_eq!(f8.writhe(), 0);
        // every positive-fraction diagram is alternating and a knot
        for &(p, q) in &[(7u64, 3u64), (7, 2), (9, 2), (11, 4), (13, 5)] {
            let d = two_bridge_knot(p, q).unwrap();
            assert_eq!(d.num_components(), 1, "C({}/{})", p, q);
            assert!(d.is_alternating(), "C({}/{})", p, q);
        }
    }

    #[test]
    fn two_bridge_rejects_links_and_bad_fractions() {
        assert!(two_bridge_knot(4, 1).is_err());
        assert!(two_bridge_knot(9, 3).is_err());
        assert!(two_bridge_knot(5, 5).is_err());
    }

    #[test]
    fn random_diagram_is_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let d = random_diagram(&mut rng, 4, 8);
            assert!(d.num_crossings() <= 8);
        }
    }
}
