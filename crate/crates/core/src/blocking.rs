//! Verification of c-empty sets and k-color-blockings, classification of
//! triangle blockings, and the convex-hexagon blocker counting bound.

use crate::error::{Error, Result};
use crate::geom::{
    between_unchecked, open_segments_crossing, orient, point_in_convex_hull, segment_param,
    Orientation, Point, Rat,
};
use crate::visibility::ColoredPointSet;
use serde::Serialize;

/// A unicolored set of vertices to be blocked, e.g. a triangle,
/// quadrilateral or hexagon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTarget {
    vertices: Vec<Point>,
    color: usize,
}

impl BlockTarget {
    /// A strictly convex target given in counterclockwise order.
    pub fn convex(vertices: Vec<Point>, color: usize) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::invalid("convex target needs at least 3 vertices"));
        }
        let n = vertices.len();
        for i in 0..n {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            let c = &vertices[(i + 2) % n];
            if orient(a, b, c) != Orientation::CounterClockwise {
                return Err(Error::invalid(
                    "vertices must be strictly convex in counterclockwise order",
                ));
            }
        }
        Ok(BlockTarget { vertices, color })
    }

    /// A concave 4-point target: one vertex strictly inside the triangle of
    /// the other three.
    pub fn concave4(vertices: Vec<Point>, color: usize) -> Result<Self> {
        if vertices.len() != 4 {
            return Err(Error::invalid("concave target needs exactly 4 vertices"));
        }
        let inside = (0..4).any(|i| {
            let others: Vec<Point> = (0..4)
                .filter(|&j| j != i)
                .map(|j| vertices[j].clone())
                .collect();
            point_in_convex_hull(&vertices[i], &others, true)
        });
        if !inside {
            return Err(Error::invalid(
                "no vertex lies strictly inside the triangle of the others",
            ));
        }
        Ok(BlockTarget { vertices, color })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn color(&self) -> usize {
        self.color
    }

    /// The target as a unicolored point set over a color space of size `k`.
    pub fn as_point_set(&self, k: usize) -> Result<ColoredPointSet> {
        ColoredPointSet::unicolored(self.vertices.clone(), self.color, k.max(self.color + 1))
    }
}

/// Why a blocking verification failed, or `Ok`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlockReason {
    BOutsideHull,
    BMeetsU,
    NotProper,
    TooManyColors,
    Ok,
}

/// Result of verifying a claimed k-color-blocking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockingReport {
    pub valid: bool,
    pub reason: BlockReason,
    pub colors_used_in_b: usize,
    /// Pairs of target vertex indices that can still see each other.
    pub unblocked_pairs: Vec<(usize, usize)>,
}

/// Whether blockers must lie inside the target's closed hull (the
/// definition) or may also sit outside (the setting of the appendix-style
/// maximality arguments).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockingMode {
    Strict,
    Relaxed,
}

/// True iff no point of `set` with the shared color of `members` lies in
/// their closed convex hull besides the members themselves.
pub fn is_color_empty(members: &[usize], set: &ColoredPointSet) -> Result<bool> {
    if members.is_empty() {
        return Err(Error::invalid("empty member list"));
    }
    let color = set.color(members[0]);
    if members.iter().any(|&i| set.color(i) != color) {
        return Err(Error::invalid("members are not unicolored"));
    }
    let hull_points: Vec<Point> = members.iter().map(|&i| set.point(i).clone()).collect();
    for i in 0..set.len() {
        if members.contains(&i) || set.color(i) != color {
            continue;
        }
        if point_in_convex_hull(set.point(i), &hull_points, false) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn distinct_colors(set: &ColoredPointSet) -> usize {
    let mut cs: Vec<usize> = set.colors().to_vec();
    cs.sort_unstable();
    cs.dedup();
    cs.len()
}

/// Verify that `blockers` k-color-blocks `target`: blockers live in
/// conv(U) \ U (strict mode), the union is properly colored, and at most
/// `k` distinct colors appear among the blockers. Blocker colors share the
/// target's color space and must avoid the target's color.
pub fn is_k_color_blocked(
    target: &BlockTarget,
    blockers: &ColoredPointSet,
    k: usize,
) -> Result<BlockingReport> {
    is_k_color_blocked_with(target, blockers, k, BlockingMode::Strict)
}

pub fn is_k_color_blocked_with(
    target: &BlockTarget,
    blockers: &ColoredPointSet,
    k: usize,
    mode: BlockingMode,
) -> Result<BlockingReport> {
    if blockers.colors().iter().any(|&c| c == target.color()) {
        return Err(Error::invalid(
            "blocker colors must be disjoint from the target color",
        ));
    }
    let meets_target = blockers
        .points()
        .iter()
        .any(|b| target.vertices().contains(b));

    // Visibility analysis runs on the union with coinciding blockers
    // dropped, so the unblocked target pairs are reported even when the
    // blocking is rejected for meeting the target.
    let space = blockers.k().max(target.color() + 1);
    let mut points: Vec<Point> = target.vertices().to_vec();
    let mut colors: Vec<usize> = vec![target.color(); target.len()];
    for (b, &c) in blockers.points().iter().zip(blockers.colors()) {
        if !points.contains(b) {
            points.push(b.clone());
            colors.push(c);
        }
    }
    let union = ColoredPointSet::new(points, colors, space)?;
    let graph = crate::visibility::visibility_graph(union.points());

    let m = target.len();
    let mut unblocked_pairs = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if graph.edge(i, j) {
                unblocked_pairs.push((i, j));
            }
        }
    }
    let colors_used_in_b = distinct_colors(blockers);

    let mut reason = BlockReason::Ok;
    if mode == BlockingMode::Strict
        && blockers
            .points()
            .iter()
            .any(|b| !point_in_convex_hull(b, target.vertices(), false))
    {
        reason = BlockReason::BOutsideHull;
    } else if meets_target {
        reason = BlockReason::BMeetsU;
    } else if !crate::coloring::is_properly_colored_on(&union, &graph).proper {
        reason = BlockReason::NotProper;
    } else if colors_used_in_b > k {
        reason = BlockReason::TooManyColors;
    }

    Ok(BlockingReport {
        valid: reason == BlockReason::Ok,
        reason,
        colors_used_in_b,
        unblocked_pairs,
    })
}

/// Short-circuit validity check used by randomized searches. Equivalent to
/// `is_k_color_blocked(..).valid` but exits on the first failure.
pub(crate) fn blocking_valid_fast(
    target: &BlockTarget,
    points: &[Point],
    colors: &[usize],
    k: usize,
) -> bool {
    let mut seen: Vec<usize> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() > k || seen.contains(&target.color()) {
        return false;
    }
    for b in points {
        if target.vertices().contains(b) || !point_in_convex_hull(b, target.vertices(), false) {
            return false;
        }
    }
    // All points with colors; target vertices first.
    let m = target.len();
    let all: Vec<&Point> = target.vertices().iter().chain(points.iter()).collect();
    let col = |i: usize| {
        if i < m {
            target.color()
        } else {
            colors[i - m]
        }
    };
    let n = all.len();
    for u in 0..n {
        for v in (u + 1)..n {
            if col(u) != col(v) {
                continue;
            }
            let blocked = (0..n)
                .any(|w| w != u && w != v && between_unchecked(all[u], all[v], all[w]));
            if !blocked {
                return false;
            }
        }
    }
    true
}

/// Which of the five canonical triangle-blocking configurations the valid
/// blocking `target + blockers` is equivalent to. `None` means no instance
/// matches, which callers should surface loudly.
pub fn classify_triangle_blocking(
    target: &BlockTarget,
    blockers: &ColoredPointSet,
) -> Result<Option<u8>> {
    if target.len() != 3 {
        return Err(Error::invalid("classification applies to triangles"));
    }
    let report = is_k_color_blocked(target, blockers, 3)?;
    if !report.valid {
        return Err(Error::invalid(format!(
            "not a valid 3-color blocking: {:?}",
            report.reason
        )));
    }
    let space = blockers.k().max(target.color() + 1);
    let union = target.as_point_set(space)?.union(blockers)?;
    for (id, instance) in crate::corpus::triangle_instances() {
        if crate::equivalence::are_equivalent(&union, &instance).is_some() {
            return Ok(Some(id));
        }
    }
    Ok(None)
}

fn validate_convex_polygon(h: &[Point], sides: usize) -> Result<()> {
    if h.len() != sides {
        return Err(Error::invalid(format!("expected {sides} vertices")));
    }
    for i in 0..sides {
        let a = &h[i];
        let b = &h[(i + 1) % sides];
        let c = &h[(i + 2) % sides];
        if orient(a, b, c) != Orientation::CounterClockwise {
            return Err(Error::invalid(
                "vertices must be strictly convex in counterclockwise order",
            ));
        }
    }
    Ok(())
}

/// Main-diagonal concurrency of a convex hexagon, decided exactly.
pub fn main_diagonals_concurrent(h: &[Point]) -> Result<bool> {
    validate_convex_polygon(h, 6)?;
    let x = crate::geom::line_intersection(&h[0], &h[3], &h[1], &h[4])
        .ok_or_else(|| Error::invalid("degenerate main diagonals"))?;
    Ok(orient(&h[2], &h[5], &x) == Orientation::Collinear)
}

/// Lower bound on the number of blocking points a unicolored convex hexagon
/// needs: 6 dedicated edge blockers plus 4 diagonal blockers when the three
/// main diagonals are concurrent, 5 otherwise.
pub fn hexagon_blocker_lower_bound(h: &[Point]) -> Result<u32> {
    Ok(if main_diagonals_concurrent(h)? { 10 } else { 11 })
}

/// The 9 open diagonals of a hexagon, as index pairs.
fn hexagon_diagonals() -> Vec<(usize, usize)> {
    let mut d = Vec::new();
    for i in 0..6usize {
        for j in (i + 1)..6 {
            if (j - i) != 1 && !(i == 0 && j == 5) {
                d.push((i, j));
            }
        }
    }
    d
}

/// Exact minimum number of points hitting every open segment of `segments`,
/// with a witness. Candidates are the pairwise crossings of the open
/// segments plus one per-segment point chosen off all other segments.
pub fn min_segment_blockers(segments: &[(Point, Point)]) -> (usize, Vec<Point>) {
    let mut candidates: Vec<Point> = Vec::new();
    for i in 0..segments.len() {
        for j in (i + 1)..segments.len() {
            if let Some(x) = open_segments_crossing(
                &segments[i].0,
                &segments[i].1,
                &segments[j].0,
                &segments[j].1,
            ) {
                if !candidates.contains(&x) {
                    candidates.push(x);
                }
            }
        }
    }
    for (i, (a, b)) in segments.iter().enumerate() {
        let mut params: Vec<Rat> = Vec::new();
        for (j, (c, d)) in segments.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some(x) = open_segments_crossing(a, b, c, d) {
                params.push(segment_param(a, b, &x));
            }
        }
        params.sort();
        params.dedup();
        // Midpoint of the first crossing-free interval of (0, 1).
        let hi = params
            .first()
            .cloned()
            .unwrap_or_else(|| Rat::from_integer(1.into()));
        let t = hi / Rat::from_integer(2.into());
        let free = Point::new(&a.x + (&b.x - &a.x) * &t, &a.y + (&b.y - &a.y) * &t);
        if !candidates.contains(&free) {
            candidates.push(free);
        }
    }
    candidates.sort();

    let covers: Vec<Vec<usize>> = candidates
        .iter()
        .map(|c| {
            segments
                .iter()
                .enumerate()
                .filter(|(_, (a, b))| between_unchecked(a, b, c))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();

    fn dfs(
        limit: usize,
        chosen: &mut Vec<usize>,
        covered: &mut Vec<usize>,
        segments_len: usize,
        covers: &[Vec<usize>],
    ) -> bool {
        let first_uncovered = (0..segments_len).find(|&s| covered[s] == 0);
        let s = match first_uncovered {
            None => return true,
            Some(s) => s,
        };
        if chosen.len() == limit {
            return false;
        }
        for (ci, cov) in covers.iter().enumerate() {
            if !cov.contains(&s) {
                continue;
            }
            chosen.push(ci);
            for &t in cov {
                covered[t] += 1;
            }
            if dfs(limit, chosen, covered, segments_len, covers) {
                return true;
            }
            for &t in cov {
                covered[t] -= 1;
            }
            chosen.pop();
        }
        false
    }

    for limit in 0..=segments.len() {
        let mut chosen = Vec::new();
        let mut covered = vec![0usize; segments.len()];
        if dfs(limit, &mut chosen, &mut covered, segments.len(), &covers) {
            let witness = chosen.iter().map(|&c| candidates[c].clone()).collect();
            return (limit, witness);
        }
    }
    unreachable!("per-segment free candidates always hit everything")
}

/// Exact minimum number of points blocking all 9 diagonals of a convex
/// hexagon, with a witness point set.
pub fn min_diagonal_blockers(h: &[Point]) -> Result<(usize, Vec<Point>)> {
    validate_convex_polygon(h, 6)?;
    let segments: Vec<(Point, Point)> = hexagon_diagonals()
        .into_iter()
        .map(|(i, j)| (h[i].clone(), h[j].clone()))
        .collect();
    Ok(min_segment_blockers(&segments))
}
