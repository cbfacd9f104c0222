//! Canonical exact configurations shipped with the toolkit: the extremal
//! 6-point 3-coloring, the five triangle-blocking instances, the convex- and
//! concave-quadrilateral blockings, the 12-point 4-colored set, and the two
//! hexagon surrogates used by the counting bound.
//!
//! Printed coordinates of the source figures are schematic decimals; the
//! realizations here are exact rationals chosen so that every incidence the
//! configuration relies on holds under exact arithmetic. Every entry's
//! expected properties re-verify on demand.

use crate::blocking::{
    hexagon_blocker_lower_bound, is_k_color_blocked, min_diagonal_blockers, BlockTarget,
};
use crate::coloring::{chromatic_number, is_properly_colored};
use crate::equivalence::are_equivalent;
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::visibility::{max_collinear, visibility_graph, ColoredPointSet};
use serde::Serialize;

fn p(x: i64, y: i64) -> Point {
    Point::ints(x, y)
}

fn pf(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
    Point::fracs(xn, xd, yn, yd)
}

/// Expected blocking structure of an entry: the first `target_len` points
/// form the unicolored target, the rest are the blockers.
#[derive(Debug, Clone, Serialize)]
pub struct BlockExpectation {
    pub target_len: usize,
    pub concave: bool,
    pub k: usize,
    /// Which of the five triangle instances this blocking realizes.
    pub instance: Option<u8>,
}

/// Re-verifiable expectations stored with each corpus entry.
#[derive(Debug, Clone, Serialize)]
pub struct Expected {
    pub proper: bool,
    pub max_collinear: usize,
    pub chi: Option<usize>,
    pub blocking: Option<BlockExpectation>,
    /// (edge+diagonal lower bound, exact minimum diagonal blockers).
    pub hexagon: Option<(u32, usize)>,
    /// Id of another entry this one must be equivalent to.
    pub equivalent_to: Option<&'static str>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub note: &'static str,
    pub set: ColoredPointSet,
    pub expected: Expected,
}

/// The extremal properly 3-colored 6-point set: each color class is a pair
/// blocked by a point of the next class.
pub fn mc33_canonical() -> ColoredPointSet {
    ColoredPointSet::new(
        vec![p(0, 0), p(2, 0), p(1, 0), p(-3, 2), p(-1, 1), p(1, -1)],
        vec![0, 0, 1, 1, 2, 2],
        3,
    )
    .unwrap()
}

/// The reference triangle used by the blocking instances.
fn triangle() -> Vec<Point> {
    vec![p(0, 0), p(3, 0), p(1, 2)]
}

/// Blocker side points shared by several instances: one per triangle side.
fn side_right() -> Point {
    pf(19, 10, 11, 10)
}
fn side_bottom() -> Point {
    pf(67, 50, 0, 1)
}
fn side_left() -> Point {
    pf(29, 50, 29, 25)
}

/// The five canonical triangle blockings, as full colored sets (triangle
/// first, color 0).
pub fn triangle_instances() -> Vec<(u8, ColoredPointSet)> {
    let t = triangle();
    let mut out = Vec::new();
    // Instance 1: one blocker per side, three distinct colors.
    out.push((
        1,
        ColoredPointSet::new(
            vec![
                t[0].clone(),
                t[1].clone(),
                t[2].clone(),
                side_right(),
                side_bottom(),
                side_left(),
            ],
            vec![0, 0, 0, 1, 2, 3],
            4,
        )
        .unwrap(),
    ));
    // Instance 2: two same-colored side blockers separated by an interior
    // point of a unique color.
    out.push((
        2,
        ColoredPointSet::new(
            vec![
                t[0].clone(),
                t[1].clone(),
                t[2].clone(),
                side_right(),
                side_left(),
                side_bottom(),
                pf(31, 25, 113, 100),
            ],
            vec![0, 0, 0, 1, 1, 2, 3],
            4,
        )
        .unwrap(),
    ));
    // Instance 3: two interior points; the blue interior point separates the
    // red side pair, the green interior point separates the blue pair.
    out.push((
        3,
        ColoredPointSet::new(
            vec![
                t[0].clone(),
                t[1].clone(),
                t[2].clone(),
                side_right(),
                side_left(),
                side_bottom(),
                pf(11, 10, 25, 22),
                pf(61, 50, 25, 44),
            ],
            vec![0, 0, 0, 1, 1, 2, 2, 3],
            4,
        )
        .unwrap(),
    ));
    // Instance 4: the green interior point separates both the red side pair
    // and the blue pair (two blocked segments concurrent at one point).
    out.push((
        4,
        ColoredPointSet::new(
            vec![
                t[0].clone(),
                t[1].clone(),
                t[2].clone(),
                pf(13, 50, 13, 25),
                pf(12, 5, 3, 5),
                side_bottom(),
                pf(33, 25, 28, 25),
                pf(133, 100, 14, 25),
            ],
            vec![0, 0, 0, 1, 1, 2, 2, 3],
            4,
        )
        .unwrap(),
    ));
    // Instance 5: the blockers form the extremal 6-point 3-colored set with
    // one point of each class on each triangle side.
    out.push((
        5,
        ColoredPointSet::new(
            vec![
                t[0].clone(),
                t[1].clone(),
                t[2].clone(),
                pf(9, 10, 41, 50),
                side_right(),
                Point::new(
                    crate::geom::ratio(7441, 5615),
                    crate::geom::ratio(26364, 28075),
                ),
                pf(111, 100, 0, 1),
                pf(61, 50, 12, 25),
                side_left(),
            ],
            vec![0, 0, 0, 1, 1, 2, 2, 3, 3],
            4,
        )
        .unwrap(),
    ));
    out
}

/// Axis-aligned square realization of the convex-quadrilateral blocking:
/// side midpoints in two alternating colors plus the center.
pub fn square9() -> ColoredPointSet {
    ColoredPointSet::new(
        vec![
            p(0, 0),
            p(4, 0),
            p(4, 4),
            p(0, 4),
            p(2, 0),
            p(4, 2),
            p(2, 4),
            p(0, 2),
            p(2, 2),
        ],
        vec![0, 0, 0, 0, 1, 2, 1, 2, 3],
        4,
    )
    .unwrap()
}

/// General-quadrilateral realization of the same blocking: the interior
/// point sits at the exact diagonal intersection and both same-colored side
/// pairs are collinear through it.
pub fn quad9() -> ColoredPointSet {
    ColoredPointSet::new(
        vec![
            p(0, 0),
            p(4, -1),
            p(5, 2),
            p(1, 2),
            pf(24, 13, -6, 13),
            Point::new(crate::geom::ratio(9499, 2079), crate::geom::ratio(70, 99)),
            pf(12, 5, 2, 1),
            pf(12, 25, 24, 25),
            pf(15, 7, 6, 7),
        ],
        vec![0, 0, 0, 0, 1, 2, 1, 2, 3],
        4,
    )
    .unwrap()
}

/// The 10-point concave-quadruple blocking with all six pair blockers.
pub fn concave10() -> ColoredPointSet {
    ColoredPointSet::new(
        vec![
            p(2, -1),
            p(0, 2),
            p(-2, -1),
            p(0, 0),
            pf(5, 3, -1, 2),
            pf(-1, 3, 3, 2),
            pf(-4, 3, -1, 1),
            pf(1, 1, -1, 2),
            p(0, 1),
            pf(-1, 1, -1, 2),
        ],
        vec![0, 0, 0, 0, 3, 2, 1, 2, 1, 3],
        4,
    )
    .unwrap()
}

/// The integer-coordinate properly 4-colored 12-point set.
pub fn twelve_integer() -> ColoredPointSet {
    ColoredPointSet::new(
        vec![
            p(0, 0),
            p(2, 0),
            p(-2, 2),
            p(1, 0),
            p(1, 2),
            p(-1, -2),
            p(1, 1),
            p(-1, 1),
            p(3, -1),
            p(0, 1),
            p(0, -1),
            p(2, 3),
        ],
        vec![0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3],
        4,
    )
    .unwrap()
}

/// Rational regular-hexagon surrogate whose three main diagonals meet at
/// the origin.
pub fn hexagon_concurrent() -> Vec<Point> {
    vec![p(2, 0), p(1, 2), p(-1, 2), p(-2, 0), p(-1, -2), p(1, -2)]
}

/// The same hexagon with the first vertex lifted off the x-axis, which
/// breaks the concurrency of the main diagonals.
pub fn hexagon_perturbed() -> Vec<Point> {
    vec![p(2, 1), p(1, 2), p(-1, 2), p(-2, 0), p(-1, -2), p(1, -2)]
}

fn hexagon_entry(id: &'static str, note: &'static str, pts: Vec<Point>, expect: (u32, usize)) -> CorpusEntry {
    let set = ColoredPointSet::unicolored(pts, 0, 1).unwrap();
    CorpusEntry {
        id,
        note,
        set,
        expected: Expected {
            proper: false,
            max_collinear: 2,
            chi: Some(6),
            blocking: None,
            hexagon: Some(expect),
            equivalent_to: None,
        },
    }
}

/// All shipped configurations with their expected properties.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut entries = Vec::new();

    entries.push(CorpusEntry {
        id: "mc33-6",
        note: "extremal properly 3-colored 6-point set",
        set: mc33_canonical(),
        expected: Expected {
            proper: true,
            max_collinear: 3,
            chi: Some(3),
            blocking: None,
            hexagon: None,
            equivalent_to: None,
        },
    });

    for (i, set) in triangle_instances() {
        let note = match i {
            1 => "triangle blocking, instance 1 of 5: side blockers only",
            2 => "triangle blocking, instance 2 of 5: one interior blocker",
            3 => "triangle blocking, instance 3 of 5: two interior blockers, split pairs",
            4 => "triangle blocking, instance 4 of 5: two interior blockers, concurrent pairs",
            _ => "triangle blocking, instance 5 of 5: three interior blockers",
        };
        let id: &'static str = match i {
            1 => "instance-1",
            2 => "instance-2",
            3 => "instance-3",
            4 => "instance-4",
            _ => "instance-5",
        };
        entries.push(CorpusEntry {
            id,
            note,
            set,
            expected: Expected {
                proper: true,
                max_collinear: 3,
                chi: None,
                blocking: Some(BlockExpectation {
                    target_len: 3,
                    concave: false,
                    k: 3,
                    instance: Some(i),
                }),
                hexagon: None,
                equivalent_to: None,
            },
        });
    }

    entries.push(CorpusEntry {
        id: "convex4-square",
        note: "convex quadrilateral 3-color blocking, square realization",
        set: square9(),
        expected: Expected {
            proper: true,
            max_collinear: 3,
            chi: Some(4),
            blocking: Some(BlockExpectation {
                target_len: 4,
                concave: false,
                k: 3,
                instance: None,
            }),
            hexagon: None,
            equivalent_to: None,
        },
    });

    entries.push(CorpusEntry {
        id: "convex4-general",
        note: "convex quadrilateral 3-color blocking, general realization",
        set: quad9(),
        expected: Expected {
            proper: true,
            max_collinear: 3,
            chi: Some(4),
            blocking: Some(BlockExpectation {
                target_len: 4,
                concave: false,
                k: 3,
                instance: None,
            }),
            hexagon: None,
            equivalent_to: Some("convex4-square"),
        },
    });

    entries.push(CorpusEntry {
        id: "concave4-10pt",
        note: "concave quadruple 3-color blocking, all six pair blockers",
        set: concave10(),
        expected: Expected {
            proper: true,
            max_collinear: 3,
            chi: Some(4),
            blocking: Some(BlockExpectation {
                target_len: 4,
                concave: true,
                k: 3,
                instance: None,
            }),
            hexagon: None,
            equivalent_to: None,
        },
    });

    entries.push(CorpusEntry {
        id: "twelve-integer",
        note: "properly 4-colored 12-point set with at most 3 collinear",
        set: twelve_integer(),
        expected: Expected {
            proper: true,
            max_collinear: 3,
            chi: Some(4),
            blocking: None,
            hexagon: None,
            equivalent_to: None,
        },
    });

    entries.push(hexagon_entry(
        "hexagon-concurrent",
        "convex hexagon with concurrent main diagonals",
        hexagon_concurrent(),
        (10, 4),
    ));
    entries.push(hexagon_entry(
        "hexagon-perturbed",
        "convex hexagon without concurrent main diagonals",
        hexagon_perturbed(),
        (11, 5),
    ));

    entries
}

/// Look up a corpus entry by id.
pub fn entry(id: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.id == id)
}

/// Split a corpus entry with a blocking expectation into target and blockers.
pub fn blocking_parts(e: &CorpusEntry) -> Result<(BlockTarget, ColoredPointSet)> {
    let be = e
        .expected
        .blocking
        .as_ref()
        .ok_or_else(|| Error::invalid(format!("{} has no blocking expectation", e.id)))?;
    let t = be.target_len;
    let vertices: Vec<Point> = e.set.points()[..t].to_vec();
    let color = e.set.color(0);
    let target = if be.concave {
        BlockTarget::concave4(vertices, color)?
    } else {
        BlockTarget::convex(vertices, color)?
    };
    let blockers = ColoredPointSet::new(
        e.set.points()[t..].to_vec(),
        e.set.colors()[t..].to_vec(),
        e.set.k(),
    )?;
    Ok((target, blockers))
}

/// Re-verify every expected property of an entry. Returns a named failure
/// otherwise.
pub fn verify_entry(e: &CorpusEntry) -> Result<()> {
    let fail = |what: &str| {
        Err(Error::VerificationFailed(format!("{}: {}", e.id, what)))
    };
    let proper = is_properly_colored(&e.set).proper;
    if proper != e.expected.proper {
        return fail(&format!("proper={} expected {}", proper, e.expected.proper));
    }
    let mc = max_collinear(e.set.points());
    if mc != e.expected.max_collinear {
        return fail(&format!(
            "max_collinear={} expected {}",
            mc, e.expected.max_collinear
        ));
    }
    if let Some(chi) = e.expected.chi {
        let got = chromatic_number(&visibility_graph(e.set.points())).chi;
        if got != chi {
            return fail(&format!("chi={} expected {}", got, chi));
        }
    }
    if let Some(be) = &e.expected.blocking {
        let (target, blockers) = blocking_parts(e)?;
        let report = is_k_color_blocked(&target, &blockers, be.k)?;
        if !report.valid {
            return fail(&format!("blocking invalid: {:?}", report.reason));
        }
        if let Some(instance) = be.instance {
            let got = crate::blocking::classify_triangle_blocking(&target, &blockers)?;
            if got != Some(instance) {
                return fail(&format!(
                    "classified as {:?}, expected instance {}",
                    got, instance
                ));
            }
        }
    }
    if let Some((bound, diag)) = e.expected.hexagon {
        let got = hexagon_blocker_lower_bound(e.set.points())?;
        if got != bound {
            return fail(&format!("hexagon bound {} expected {}", got, bound));
        }
        let (got_diag, _) = min_diagonal_blockers(e.set.points())?;
        if got_diag != diag {
            return fail(&format!(
                "min diagonal blockers {} expected {}",
                got_diag, diag
            ));
        }
        if got as usize != 6 + got_diag {
            return fail("bound is not 6 + min diagonal blockers");
        }
    }
    if let Some(other_id) = e.expected.equivalent_to {
        let other = entry(other_id)
            .ok_or_else(|| Error::invalid(format!("unknown corpus id {other_id}")))?;
        if are_equivalent(&e.set, &other.set).is_none() {
            return fail(&format!("not equivalent to {}", other_id));
        }
    }
    Ok(())
}

/// Verify the whole corpus; the id of the first failing entry is part of
/// the error.
pub fn verify_all() -> Result<()> {
    for e in corpus() {
        verify_entry(&e)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocking::classify_triangle_blocking;
    use crate::equivalence::signature;
    use crate::visibility::blockers;

    #[test]
    fn whole_corpus_verifies() {
        for e in corpus() {
            verify_entry(&e).unwrap();
        }
    }

    #[test]
    fn twelve_point_hull_and_blockers() {
        let set = twelve_integer();
        let hull = crate::geom::convex_hull(set.points()).unwrap();
        let hull_points: Vec<Point> = hull.iter().map(|&i| set.point(i).clone()).collect();
        assert_eq!(
            hull_points,
            vec![p(-2, 2), p(-1, -2), p(3, -1), p(2, 3)]
        );
        // (0,0)-(2,0) is blocked by (1,0).
        let g = visibility_graph(set.points());
        assert!(!g.edge(0, 1));
        assert_eq!(blockers(set.points(), 0, 1).unwrap(), vec![3]);
        // (1,2)-(-1,-2) is blocked by the origin.
        assert_eq!(blockers(set.points(), 4, 5).unwrap(), vec![0]);
    }

    #[test]
    fn twelve_point_recolored_is_improper() {
        let set = twelve_integer().recolored(3, 0).unwrap();
        let r = is_properly_colored(&set);
        assert!(!r.proper);
        let (u, v) = r.violation.unwrap();
        assert!(u == 3 || v == 3, "violation should involve the recolored point");
    }

    #[test]
    fn mc33_has_exactly_three_betweenness_triples() {
        let sig = signature(&mc33_canonical());
        assert_eq!(sig.betweenness.len(), 3);
    }

    #[test]
    fn instances_are_pairwise_inequivalent() {
        let inst = triangle_instances();
        for i in 0..inst.len() {
            for j in (i + 1)..inst.len() {
                assert!(
                    are_equivalent(&inst[i].1, &inst[j].1).is_none(),
                    "instances {} and {} must differ",
                    inst[i].0,
                    inst[j].0
                );
            }
        }
    }

    #[test]
    fn instance_five_blockers_match_the_canonical_six_point_set() {
        let e = entry("instance-5").unwrap();
        let blockers = ColoredPointSet::new(
            e.set.points()[3..].to_vec(),
            e.set.colors()[3..].to_vec(),
            e.set.k(),
        )
        .unwrap();
        assert!(are_equivalent(&blockers, &mc33_canonical()).is_some());
    }

    #[test]
    fn classification_hits_each_instance() {
        for (i, _) in triangle_instances() {
            let e = entry(match i {
                1 => "instance-1",
                2 => "instance-2",
                3 => "instance-3",
                4 => "instance-4",
                _ => "instance-5",
            })
            .unwrap();
            let (target, b) = blocking_parts(&e).unwrap();
            assert_eq!(classify_triangle_blocking(&target, &b).unwrap(), Some(i));
        }
    }

    #[test]
    fn concave_target_shape_is_validated() {
        let e = entry("concave4-10pt").unwrap();
        let (target, b) = blocking_parts(&e).unwrap();
        assert_eq!(target.len(), 4);
        let report = is_k_color_blocked(&target, &b, 3).unwrap();
        assert!(report.valid);
        // Exactly three blocker colors.
        assert_eq!(report.colors_used_in_b, 3);
    }

    #[test]
    fn corpus_ids_are_unique() {
        let mut ids: Vec<&str> = corpus().iter().map(|e| e.id).collect();
        ids.sort_unstable();
        let before = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), before);
    }
}
