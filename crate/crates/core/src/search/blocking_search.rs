//! Blocking-set search: repeatedly repair the first same-colored visible
//! pair by branching over blocker positions on its open segment.
//!
//! Candidate positions are the crossings of the segment with every line
//! through two current points, plus the segment midpoint as the generic
//! representative. Distinct positions within one crossing-free cell give
//! the same betweenness relations against the current configuration, so
//! this discretization covers the order-type-distinct placements relative
//! to the current state. Exhaustion claims refer to exactly this space.

use super::{SearchConfig, SearchMode, SearchReport};
use crate::blocking::{is_k_color_blocked, BlockTarget};
use crate::error::{Error, Result};
use crate::geom::{
    between_unchecked, line_intersection, orient, segment_param, Orientation, Point,
};
use crate::visibility::ColoredPointSet;
use num::bigint::BigInt;
use num::Integer;
use std::collections::HashMap;

struct BState {
    pts: Vec<Point>,
    colors: Vec<usize>,
    target_len: usize,
    blocked: Vec<Vec<u32>>,
    collinear_stack: Vec<usize>,
}

impl BState {
    fn new(target: &BlockTarget) -> Self {
        let pts: Vec<Point> = target.vertices().to_vec();
        let n = pts.len();
        let mut blocked = vec![vec![0u32; n]; n];
        for u in 0..n {
            for v in (u + 1)..n {
                let count = (0..n)
                    .filter(|&w| w != u && w != v && between_unchecked(&pts[u], &pts[v], &pts[w]))
                    .count() as u32;
                blocked[u][v] = count;
                blocked[v][u] = count;
            }
        }
        let mc = crate::visibility::max_collinear(&pts);
        BState {
            pts,
            colors: vec![target.color(); n],
            target_len: n,
            blocked,
            collinear_stack: vec![mc],
        }
    }

    fn len(&self) -> usize {
        self.pts.len()
    }

    fn blockers_placed(&self) -> usize {
        self.len() - self.target_len
    }

    fn max_collinear(&self) -> usize {
        *self.collinear_stack.last().unwrap()
    }

    fn push(&mut self, p: Point, color: usize) {
        let m = self.pts.len();
        // Only lines through p change their incidence counts.
        let mut best_line = if m >= 1 { 2 } else { 1 };
        let mut dirs: HashMap<(BigInt, BigInt), usize> = HashMap::new();
        for q in &self.pts {
            let dx = &q.x - &p.x;
            let dy = &q.y - &p.y;
            let mut nx = dx.numer() * dy.denom();
            let mut ny = dy.numer() * dx.denom();
            let g = nx.gcd(&ny);
            if !num::traits::Zero::is_zero(&g) {
                nx /= &g;
                ny /= &g;
            }
            let neg = match nx.sign() {
                num::bigint::Sign::Minus => true,
                num::bigint::Sign::NoSign => ny.sign() == num::bigint::Sign::Minus,
                num::bigint::Sign::Plus => false,
            };
            if neg {
                nx = -nx;
                ny = -ny;
            }
            let c = dirs.entry((nx, ny)).or_insert(0);
            *c += 1;
            best_line = best_line.max(*c + 1);
        }
        self.collinear_stack
            .push(self.max_collinear().max(best_line));

        for row in self.blocked.iter_mut() {
            row.push(0);
        }
        self.blocked.push(vec![0; m + 1]);
        for u in 0..m {
            for v in (u + 1)..m {
                if between_unchecked(&self.pts[u], &self.pts[v], &p) {
                    self.blocked[u][v] += 1;
                    self.blocked[v][u] += 1;
                }
            }
            let count = (0..m)
                .filter(|&w| w != u && between_unchecked(&self.pts[u], &p, &self.pts[w]))
                .count() as u32;
            self.blocked[u][m] = count;
            self.blocked[m][u] = count;
        }
        self.pts.push(p);
        self.colors.push(color);
    }

    fn pop(&mut self) {
        let p = self.pts.pop().unwrap();
        self.colors.pop();
        self.collinear_stack.pop();
        let m = self.pts.len();
        self.blocked.pop();
        for row in self.blocked.iter_mut() {
            row.pop();
        }
        for u in 0..m {
            for v in (u + 1)..m {
                if between_unchecked(&self.pts[u], &self.pts[v], &p) {
                    self.blocked[u][v] -= 1;
                    self.blocked[v][u] -= 1;
                }
            }
        }
    }

    /// Same-colored visible pairs, canonical order.
    fn mono_unblocked(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for v in (u + 1)..self.len() {
                if self.colors[u] == self.colors[v] && self.blocked[u][v] == 0 {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn used_blocker_colors(&self) -> Vec<usize> {
        let mut used: Vec<usize> = self.colors[self.target_len..].to_vec();
        used.sort_unstable();
        used.dedup();
        used
    }
}

/// Do two open segments share an interior point (a single blocker could
/// serve both)?
fn segments_share_interior(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1 == Orientation::Collinear && o2 == Orientation::Collinear {
        // Same line: open parameter intervals must overlap.
        let tc = segment_param(a, b, c);
        let td = segment_param(a, b, d);
        let (lo, hi) = if tc <= td { (tc, td) } else { (td, tc) };
        let zero = crate::geom::rat(0);
        let one = crate::geom::rat(1);
        return lo < one && hi > zero && {
            // Nonempty open overlap of (0,1) and (lo, hi).
            let left = if lo > zero { lo } else { zero };
            let right = if hi < one { hi } else { one };
            left < right
        };
    }
    crate::geom::open_segments_crossing(a, b, c, d).is_some()
}

/// Greedy pairwise-disjoint subset of the unblocked segments: each chosen
/// segment needs its own dedicated blocker, giving a lower bound.
fn disjoint_lower_bound(state: &BState, unblocked: &[(usize, usize)]) -> usize {
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    'next: for &(x, y) in unblocked {
        for &(a, b) in &chosen {
            if segments_share_interior(&state.pts[x], &state.pts[y], &state.pts[a], &state.pts[b])
            {
                continue 'next;
            }
        }
        chosen.push((x, y));
    }
    chosen.len()
}

/// Candidate blocker positions on the open segment (x, y): crossings with
/// every line through two current points, plus the midpoint, ordered by
/// position along the segment.
fn candidate_positions(state: &BState, x: usize, y: usize) -> Vec<Point> {
    let a = &state.pts[x];
    let b = &state.pts[y];
    let m = state.len();
    let mut found: Vec<Point> = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if (i, j) == (x, y) || (i, j) == (y, x) {
                continue;
            }
            let (c, d) = (&state.pts[i], &state.pts[j]);
            let oa = orient(c, d, a);
            let ob = orient(c, d, b);
            let crosses = matches!(
                (oa, ob),
                (Orientation::CounterClockwise, Orientation::Clockwise)
                    | (Orientation::Clockwise, Orientation::CounterClockwise)
            );
            if !crosses {
                continue;
            }
            if let Some(p) = line_intersection(c, d, a, b) {
                if !found.contains(&p) {
                    found.push(p);
                }
            }
        }
    }
    let mid = Point::midpoint(a, b);
    if !found.contains(&mid) {
        found.push(mid);
    }
    found.sort_by(|p, q| segment_param(a, b, p).cmp(&segment_param(a, b, q)));
    found
}

struct BDriver {
    k: usize,
    ell: Option<usize>,
    budget: u64,
    max_blockers: usize,
    palette: Vec<usize>,
    nodes: u64,
    budget_hit: bool,
    found: Option<(Vec<Point>, Vec<usize>, u64)>,
}

impl BDriver {
    fn dfs(&mut self, state: &mut BState) {
        self.nodes += 1;
        if self.nodes >= self.budget {
            self.budget_hit = true;
        }
        let unblocked = state.mono_unblocked();
        if unblocked.is_empty() {
            if self.found.is_none() {
                self.found = Some((
                    state.pts[state.target_len..].to_vec(),
                    state.colors[state.target_len..].to_vec(),
                    self.nodes,
                ));
            }
            return;
        }
        if self.budget_hit || self.found.is_some() {
            return;
        }
        let remaining = self.max_blockers - state.blockers_placed();
        if remaining == 0 {
            return;
        }
        if disjoint_lower_bound(state, &unblocked) > remaining {
            return;
        }
        let (x, y) = unblocked[0];
        let positions = candidate_positions(state, x, y);
        let used = state.used_blocker_colors();
        for pos in positions {
            // A fresh color is interchangeable with any other fresh color,
            // so only the first unused palette entry is tried.
            let mut color_choices: Vec<usize> = used.clone();
            if used.len() < self.k {
                color_choices.push(self.palette[used.len()]);
            }
            for color in color_choices {
                state.push(pos.clone(), color);
                let ok = match self.ell {
                    Some(l) => state.max_collinear() <= l,
                    None => true,
                };
                if ok {
                    self.dfs(state);
                }
                state.pop();
                if self.budget_hit || self.found.is_some() {
                    return;
                }
            }
        }
    }
}

/// Search for a k-color blocking of `target`. The first valid blocking in
/// canonical order is re-verified and reported; otherwise the report
/// records how much of the discretized space was explored.
pub fn search_blocking(
    target: &BlockTarget,
    k: usize,
    cfg: &SearchConfig,
) -> Result<SearchReport> {
    cfg.validate()?;
    if cfg.mode != SearchMode::Blocking {
        return Err(Error::invalid("config mode must be blocking"));
    }
    if k != cfg.k {
        return Err(Error::invalid("k must match the config"));
    }
    // Blocker colors: the k smallest indices distinct from the target's.
    let palette: Vec<usize> = (0..)
        .filter(|c| *c != target.color())
        .take(k)
        .collect();
    let space = palette.iter().max().unwrap() + 1;
    let mut state = BState::new(target);
    if let Some(l) = cfg.max_collinear {
        if state.max_collinear() > l {
            return Err(Error::invalid(
                "target itself violates the collinearity bound",
            ));
        }
    }
    let mut driver = BDriver {
        k,
        ell: cfg.max_collinear,
        budget: cfg.budget,
        max_blockers: cfg.max_points,
        palette,
        nodes: 0,
        budget_hit: false,
        found: None,
    };
    driver.dfs(&mut state);

    let target_set = target.as_point_set(space.max(target.color() + 1))?;
    let found = driver.found.take();
    let (best, best_size, best_node) = match found {
        Some((pts, colors, node)) => {
            let b = ColoredPointSet::new(pts, colors, space)?;
            let check = is_k_color_blocked(target, &b, k)?;
            if !check.valid {
                return Err(Error::VerificationFailed(format!(
                    "search produced an invalid blocking: {:?}",
                    check.reason
                )));
            }
            let size = b.len();
            (Some(b), size, Some(node))
        }
        None => (None, 0, None),
    };
    Ok(SearchReport {
        mode: SearchMode::Blocking,
        k,
        max_collinear: cfg.max_collinear,
        grid: cfg.grid,
        budget: cfg.budget,
        seed: cfg.seed,
        target: Some(target_set),
        best,
        best_size,
        best_found_at_node: best_node,
        nodes_expanded: driver.nodes,
        exhausted: !driver.budget_hit && driver.found.is_none(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{replay, GridSpec};

    fn p(x: i64, y: i64) -> Point {
        Point::ints(x, y)
    }

    fn cfg(k: usize, budget: u64, max_points: usize, ell: Option<usize>) -> SearchConfig {
        SearchConfig {
            mode: SearchMode::Blocking,
            k,
            max_collinear: ell,
            grid: GridSpec { extent: 4, denom: 2 },
            budget,
            seed: 3,
            max_points,
            stop_at_size: None,
            seed_points: None,
        }
    }

    #[test]
    fn triangle_three_colors_finds_valid_blocking() {
        let target = BlockTarget::convex(vec![p(0, 0), p(6, 0), p(2, 4)], 0).unwrap();
        let report = search_blocking(&target, 3, &cfg(3, 100_000, 8, None)).unwrap();
        assert!(report.best.is_some(), "{report:?}");
        assert!(replay(&report).unwrap());
        // Minimal repair order yields one blocker per side.
        assert_eq!(report.best_size, 3);
    }

    #[test]
    fn quadrilateral_three_colors_recovers_the_five_point_interior() {
        let target =
            BlockTarget::convex(vec![p(0, 0), p(4, 0), p(4, 4), p(0, 4)], 0).unwrap();
        let report = search_blocking(&target, 3, &cfg(3, 2_000_000, 8, Some(3))).unwrap();
        assert!(report.best.is_some(), "{report:?}");
        assert_eq!(report.best_size, 5, "{report:?}");
        assert!(replay(&report).unwrap());
        // The union is equivalent to the canonical 9-point realization.
        let union = report
            .target
            .as_ref()
            .unwrap()
            .union(report.best.as_ref().unwrap())
            .unwrap();
        assert!(crate::equivalence::are_equivalent(&union, &crate::corpus::square9()).is_some());
    }

    #[test]
    fn triangle_two_colors_exhausts_with_no_witness() {
        let target = BlockTarget::convex(vec![p(0, 0), p(6, 0), p(2, 4)], 0).unwrap();
        let report = search_blocking(&target, 2, &cfg(2, 10_000_000, 8, None)).unwrap();
        assert!(report.best.is_none());
        assert!(report.exhausted, "nodes={}", report.nodes_expanded);
    }

    #[test]
    fn determinism() {
        let target = BlockTarget::convex(vec![p(0, 0), p(6, 0), p(2, 4)], 0).unwrap();
        let a = search_blocking(&target, 3, &cfg(3, 50_000, 6, None)).unwrap();
        let b = search_blocking(&target, 3, &cfg(3, 50_000, 6, None)).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn mode_and_color_space_validation() {
        let target = BlockTarget::convex(vec![p(0, 0), p(6, 0), p(2, 4)], 0).unwrap();
        let mut c = cfg(3, 1000, 6, None);
        c.mode = SearchMode::Extremal;
        assert!(search_blocking(&target, 3, &c).is_err());
        let c = cfg(3, 1000, 6, None);
        assert!(search_blocking(&target, 2, &c).is_err());
    }
}
