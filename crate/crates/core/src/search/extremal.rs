//! Incremental point-insertion search for large properly colorable sets on
//! a rational lattice.
//!
//! States are point sets listed in increasing candidate order, so every set
//! is visited at most once. Children are explored blocking-richness first:
//! candidates that destroy visibilities of the current set tend to lead to
//! colorable configurations. Pruning rejects collinearity violations and
//! configurations whose visibility graph is not k-colorable (adding points
//! only removes edges, so an uncolorable state never recovers).

use super::{SearchConfig, SearchMode, SearchReport};
use crate::coloring::k_colorable;
use crate::error::{Error, Result};
use crate::geom::{Point, Rat};
use crate::visibility::VisibilityGraph;
use num::bigint::BigInt;
use num::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

type Lat = (i64, i64);

fn cross(a: Lat, b: Lat, c: Lat) -> i128 {
    let abx = (b.0 - a.0) as i128;
    let aby = (b.1 - a.1) as i128;
    let acx = (c.0 - a.0) as i128;
    let acy = (c.1 - a.1) as i128;
    abx * acy - aby * acx
}

fn between(a: Lat, b: Lat, p: Lat) -> bool {
    if cross(a, b, p) != 0 {
        return false;
    }
    if a.0 != b.0 {
        (a.0.min(b.0) < p.0) && (p.0 < a.0.max(b.0))
    } else {
        (a.1.min(b.1) < p.1) && (p.1 < a.1.max(b.1))
    }
}

fn to_rational_point(p: Lat, denom: i64) -> Point {
    Point::new(
        Rat::new(BigInt::from(p.0), BigInt::from(denom)),
        Rat::new(BigInt::from(p.1), BigInt::from(denom)),
    )
}

struct State {
    points: Vec<Lat>,
    /// blocked[u][v]: how many chosen points lie strictly between u and v.
    blocked: Vec<Vec<u32>>,
    /// Largest collinear count seen so far, as a stack to undo pushes.
    collinear_stack: Vec<usize>,
}

impl State {
    fn new() -> Self {
        State { points: Vec::new(), blocked: Vec::new(), collinear_stack: vec![1] }
    }

    fn len(&self) -> usize {
        self.points.len()
    }

    fn max_collinear(&self) -> usize {
        *self.collinear_stack.last().unwrap()
    }

    fn push(&mut self, p: Lat) {
        let m = self.points.len();
        // Lines through p: the only lines whose counts change.
        let mut best_line = if m >= 1 { 2 } else { 1 };
        let mut dirs: HashMap<(i64, i64), usize> = HashMap::new();
        for &q in &self.points {
            let mut dx = q.0 - p.0;
            let mut dy = q.1 - p.1;
            let g = gcd(dx.abs(), dy.abs()).max(1);
            dx /= g;
            dy /= g;
            if dx < 0 || (dx == 0 && dy < 0) {
                dx = -dx;
                dy = -dy;
            }
            let c = dirs.entry((dx, dy)).or_insert(0);
            *c += 1;
            best_line = best_line.max(*c + 1);
        }
        let new_max = self.max_collinear().max(best_line);
        self.collinear_stack.push(new_max);

        for row in self.blocked.iter_mut() {
            row.push(0);
        }
        self.blocked.push(vec![0; m + 1]);
        for u in 0..m {
            for v in (u + 1)..m {
                if between(self.points[u], self.points[v], p) {
                    self.blocked[u][v] += 1;
                    self.blocked[v][u] += 1;
                }
            }
            let mut count = 0u32;
            for (w, &r) in self.points.iter().enumerate() {
                if w != u && between(self.points[u], p, r) {
                    count += 1;
                }
            }
            self.blocked[u][m] = count;
            self.blocked[m][u] = count;
        }
        self.points.push(p);
    }

    fn pop(&mut self) {
        let p = self.points.pop().unwrap();
        self.collinear_stack.pop();
        let m = self.points.len();
        self.blocked.pop();
        for row in self.blocked.iter_mut() {
            row.pop();
        }
        for u in 0..m {
            for v in (u + 1)..m {
                if between(self.points[u], self.points[v], p) {
                    self.blocked[u][v] -= 1;
                    self.blocked[v][u] -= 1;
                }
            }
        }
    }

    fn graph(&self) -> VisibilityGraph {
        let m = self.points.len();
        let mut g = VisibilityGraph::empty(m);
        for u in 0..m {
            for v in (u + 1)..m {
                g.set_edge(u, v, self.blocked[u][v] == 0);
            }
        }
        g
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

struct Driver {
    candidates: Vec<Lat>,
    rank: Vec<usize>,
    k: usize,
    ell: Option<usize>,
    budget: u64,
    max_points: usize,
    stop_at: Option<usize>,
    nodes: u64,
    budget_hit: bool,
    stop_hit: bool,
    best_points: Vec<Lat>,
    best_colors: Vec<usize>,
    best_node: Option<u64>,
}

impl Driver {
    fn record_if_best(&mut self, state: &State, colors: &[usize]) {
        if state.len() > self.best_points.len() {
            self.best_points = state.points.clone();
            self.best_colors = colors.to_vec();
            self.best_node = Some(self.nodes);
            if let Some(target) = self.stop_at {
                if state.len() >= target {
                    self.stop_hit = true;
                }
            }
        }
    }

    fn dfs(&mut self, state: &mut State, colors: &[usize], next_min: usize) {
        self.nodes += 1;
        if self.nodes >= self.budget {
            self.budget_hit = true;
        }
        self.record_if_best(state, colors);
        if self.budget_hit || self.stop_hit || state.len() >= self.max_points {
            return;
        }
        // Score candidates by how many current visibilities they destroy.
        let mut children: Vec<(usize, usize)> = Vec::new();
        'cand: for ci in next_min..self.candidates.len() {
            let p = self.candidates[ci];
            for &q in &state.points {
                if q == p {
                    continue 'cand;
                }
            }
            let mut score = 0usize;
            for u in 0..state.len() {
                for v in (u + 1)..state.len() {
                    if state.blocked[u][v] == 0 && between(state.points[u], state.points[v], p)
                    {
                        score += 1;
                    }
                }
            }
            children.push((ci, score));
        }
        children.sort_by_key(|&(ci, score)| (usize::MAX - score, self.rank[ci]));
        for (ci, _) in children {
            if self.budget_hit || self.stop_hit {
                return;
            }
            let p = self.candidates[ci];
            state.push(p);
            let ok_collinear = match self.ell {
                Some(l) => state.max_collinear() <= l,
                None => true,
            };
            if ok_collinear {
                if let Some(witness) = k_colorable(&state.graph(), self.k) {
                    self.dfs(state, &witness, ci + 1);
                }
            }
            state.pop();
        }
    }
}

/// Largest properly k-colorable configuration on the grid, within budget.
/// With `seed_points` the search starts from that configuration and tries
/// grid extensions of it instead of building from scratch.
pub fn search_extremal(cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    if cfg.mode != SearchMode::Extremal {
        return Err(Error::invalid("config mode must be extremal"));
    }
    let denom = cfg.grid.denom;
    let mut candidates: Vec<Lat> = Vec::new();
    for x in -cfg.grid.extent..=cfg.grid.extent {
        for y in -cfg.grid.extent..=cfg.grid.extent {
            candidates.push((x, y));
        }
    }
    candidates.sort_unstable();
    let mut rank: Vec<usize> = (0..candidates.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rank.shuffle(&mut rng);

    let mut state = State::new();
    let mut initial_colors: Vec<usize> = Vec::new();
    if let Some(seed_set) = &cfg.seed_points {
        for p in seed_set.points() {
            let sx = (&p.x * Rat::from_integer(BigInt::from(denom)))
                .to_integer()
                .to_i64();
            let sy = (&p.y * Rat::from_integer(BigInt::from(denom)))
                .to_integer()
                .to_i64();
            let exact_x =
                &p.x * Rat::from_integer(BigInt::from(denom)) == Rat::from_integer(BigInt::from(sx.unwrap_or(i64::MAX)));
            let exact_y =
                &p.y * Rat::from_integer(BigInt::from(denom)) == Rat::from_integer(BigInt::from(sy.unwrap_or(i64::MAX)));
            let (sx, sy) = match (sx, sy, exact_x, exact_y) {
                (Some(a), Some(b), true, true) => (a, b),
                _ => {
                    return Err(Error::invalid(format!(
                        "seed point {} is not on the 1/{} lattice",
                        p, denom
                    )))
                }
            };
            state.push((sx, sy));
        }
        if let Some(l) = cfg.max_collinear {
            if state.max_collinear() > l {
                return Err(Error::invalid("seed configuration violates the collinearity bound"));
            }
        }
        match k_colorable(&state.graph(), cfg.k) {
            Some(w) => initial_colors = w,
            None => {
                return Err(Error::invalid("seed configuration is not k-colorable"));
            }
        }
    }

    let mut driver = Driver {
        candidates,
        rank,
        k: cfg.k,
        ell: cfg.max_collinear,
        budget: cfg.budget,
        max_points: cfg.max_points,
        stop_at: cfg.stop_at_size,
        nodes: 0,
        budget_hit: false,
        stop_hit: false,
        best_points: Vec::new(),
        best_colors: Vec::new(),
        best_node: None,
    };
    driver.dfs(&mut state, &initial_colors.clone(), 0);

    let best = if driver.best_points.is_empty() {
        None
    } else {
        let points: Vec<Point> = driver
            .best_points
            .iter()
            .map(|&p| to_rational_point(p, denom))
            .collect();
        let used = driver.best_colors.iter().copied().max().unwrap_or(0) + 1;
        Some(crate::visibility::ColoredPointSet::new(
            points,
            driver.best_colors.clone(),
            used.max(cfg.k),
        )?)
    };
    Ok(SearchReport {
        mode: SearchMode::Extremal,
        k: cfg.k,
        max_collinear: cfg.max_collinear,
        grid: cfg.grid,
        budget: cfg.budget,
        seed: cfg.seed,
        target: None,
        best_size: driver.best_points.len(),
        best,
        best_found_at_node: driver.best_node,
        nodes_expanded: driver.nodes,
        exhausted: !driver.budget_hit && !driver.stop_hit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{replay, GridSpec};

    fn cfg(k: usize, extent: i64, budget: u64, seed: u64) -> SearchConfig {
        SearchConfig {
            mode: SearchMode::Extremal,
            k,
            max_collinear: Some(3),
            grid: GridSpec { extent, denom: 1 },
            budget,
            seed,
            max_points: 16,
            stop_at_size: None,
            seed_points: None,
        }
    }

    #[test]
    fn two_colors_three_collinear_points() {
        let mut c = cfg(2, 1, 200_000, 7);
        c.max_points = 5;
        let report = search_extremal(&c).unwrap();
        assert_eq!(report.best_size, 3, "{report:?}");
        assert!(report.exhausted);
        assert!(replay(&report).unwrap());
    }

    #[test]
    fn three_colors_reach_six() {
        let mut c = cfg(3, 2, 1_000_000, 11);
        c.stop_at_size = Some(6);
        c.max_points = 6;
        let report = search_extremal(&c).unwrap();
        assert_eq!(report.best_size, 6, "nodes={}", report.nodes_expanded);
        assert!(replay(&report).unwrap());
        // Any 6-point witness matches the canonical configuration.
        let witness = report.best.unwrap();
        assert!(crate::equivalence::are_equivalent(
            &witness,
            &crate::corpus::mc33_canonical()
        )
        .is_some());
    }

    #[test]
    fn seeded_with_corpus_reaches_twelve() {
        let mut c = cfg(4, 3, 50_000, 13);
        c.seed_points = Some(crate::corpus::twelve_integer());
        c.max_points = 13;
        let report = search_extremal(&c).unwrap();
        assert!(report.best_size >= 12);
        assert!(replay(&report).unwrap());
    }

    #[test]
    fn determinism_same_seed_same_report() {
        let c = cfg(3, 2, 30_000, 17);
        let a = search_extremal(&c).unwrap();
        let b = search_extremal(&c).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn budget_monotonicity_same_seed() {
        let mut best_sizes = Vec::new();
        for budget in [100u64, 1_000, 10_000] {
            let c = cfg(3, 2, budget, 19);
            best_sizes.push(search_extremal(&c).unwrap().best_size);
        }
        assert!(best_sizes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn grid_monotonicity_under_exhaustion() {
        // With exhausting budgets, a larger grid never shrinks the optimum.
        let mut small = cfg(2, 1, 5_000_000, 23);
        small.max_points = 4;
        let mut large = cfg(2, 2, 5_000_000, 23);
        large.max_points = 4;
        let a = search_extremal(&small).unwrap();
        let b = search_extremal(&large).unwrap();
        assert!(a.exhausted && b.exhausted);
        assert!(b.best_size >= a.best_size);
    }

    #[test]
    fn pruned_matches_unpruned_exhaustive_on_tiny_grid() {
        // The collinearity/colorability prunes only remove states that can
        // never extend to valid ones; on an exhaustible grid the reported
        // optimum equals the true optimum computed by plain enumeration.
        let mut c = cfg(2, 1, 10_000_000, 29);
        c.max_points = 6;
        let report = search_extremal(&c).unwrap();
        assert!(report.exhausted);

        // Plain enumeration oracle over all subsets of the 3x3 lattice.
        let cells: Vec<Lat> = (-1..=1)
            .flat_map(|x| (-1..=1).map(move |y| (x, y)))
            .collect();
        let mut best = 0usize;
        for mask in 0u32..(1 << 9) {
            let subset: Vec<Lat> = (0..9)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| cells[i])
                .collect();
            if subset.len() <= best {
                continue;
            }
            let pts: Vec<Point> = subset.iter().map(|&p| to_rational_point(p, 1)).collect();
            if crate::visibility::max_collinear(&pts) > 3 {
                continue;
            }
            let g = crate::visibility::visibility_graph(&pts);
            if k_colorable(&g, 2).is_some() {
                best = subset.len();
            }
        }
        assert_eq!(report.best_size, best);
    }
}
