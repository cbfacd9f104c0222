//! Proper-coloring verification and exact chromatic numbers of visibility
//! graphs.

use crate::visibility::{visibility_graph, ColoredPointSet, VisibilityGraph};
use serde::Serialize;

/// Outcome of checking that same-colored points are pairwise non-visible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProperColoringReport {
    pub proper: bool,
    /// First (lexicographic) same-colored pair that can see each other.
    pub violation: Option<(usize, usize)>,
}

/// Exact chromatic number with a proper coloring witness and a clique
/// certifying the lower bound (clique size <= chi always holds).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChromaticResult {
    pub chi: usize,
    pub witness_coloring: Vec<usize>,
    pub lower_bound_certificate: Vec<usize>,
}

/// True iff every same-colored pair of the set is a non-edge of its
/// visibility graph; reports the first violating pair otherwise.
pub fn is_properly_colored(set: &ColoredPointSet) -> ProperColoringReport {
    let g = visibility_graph(set.points());
    is_properly_colored_on(set, &g)
}

/// Same check against a precomputed visibility graph of the set's points.
pub fn is_properly_colored_on(set: &ColoredPointSet, g: &VisibilityGraph) -> ProperColoringReport {
    for u in 0..set.len() {
        for v in (u + 1)..set.len() {
            if set.color(u) == set.color(v) && g.edge(u, v) {
                return ProperColoringReport {
                    proper: false,
                    violation: Some((u, v)),
                };
            }
        }
    }
    ProperColoringReport { proper: true, violation: None }
}

/// Greedy maximal clique, deterministic: vertices scanned by descending
/// degree with index tie-break.
fn greedy_clique(g: &VisibilityGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (usize::MAX - g.degree(v), v));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| g.edge(u, v)) {
            clique.push(v);
        }
    }
    clique.sort_unstable();
    clique
}

struct ColorSearch<'a> {
    g: &'a VisibilityGraph,
    k: usize,
    colors: Vec<Option<usize>>,
}

impl ColorSearch<'_> {
    fn saturation(&self, v: usize) -> usize {
        let mut seen = vec![false; self.k];
        let mut count = 0;
        for u in self.g.neighbors(v) {
            if let Some(c) = self.colors[u] {
                if !seen[c] {
                    seen[c] = true;
                    count += 1;
                }
            }
        }
        count
    }

    /// Next vertex in DSATUR order: max saturation, then max degree, then
    /// lowest index.
    fn pick(&self) -> Option<usize> {
        (0..self.g.n())
            .filter(|&v| self.colors[v].is_none())
            .max_by(|&a, &b| {
                self.saturation(a)
                    .cmp(&self.saturation(b))
                    .then(self.g.degree(a).cmp(&self.g.degree(b)))
                    .then(b.cmp(&a))
            })
    }

    fn solve(&mut self, used: usize) -> bool {
        let v = match self.pick() {
            Some(v) => v,
            None => return true,
        };
        let mut forbidden = vec![false; self.k];
        for u in self.g.neighbors(v) {
            if let Some(c) = self.colors[u] {
                forbidden[c] = true;
            }
        }
        // At most one fresh color is tried: color classes are interchangeable.
        let limit = self.k.min(used + 1);
        for c in 0..limit {
            if forbidden[c] {
                continue;
            }
            self.colors[v] = Some(c);
            if self.solve(used.max(c + 1)) {
                return true;
            }
            self.colors[v] = None;
        }
        false
    }
}

/// A proper coloring of `g` with at most `k` colors, if one exists. Exact
/// and deterministic: the clique found by [`greedy_clique`] is pre-colored
/// to break symmetry, then DSATUR-ordered branch and bound.
pub fn k_colorable(g: &VisibilityGraph, k: usize) -> Option<Vec<usize>> {
    assert!(k >= 1, "k_colorable requires k >= 1");
    if g.n() == 0 {
        return Some(vec![]);
    }
    let clique = greedy_clique(g);
    if clique.len() > k {
        return None;
    }
    let mut search = ColorSearch { g, k, colors: vec![None; g.n()] };
    for (c, &v) in clique.iter().enumerate() {
        search.colors[v] = Some(c);
    }
    if search.solve(clique.len()) {
        Some(search.colors.into_iter().map(|c| c.unwrap()).collect())
    } else {
        None
    }
}

/// Exact chromatic number of `g` with witness and clique certificate.
pub fn chromatic_number(g: &VisibilityGraph) -> ChromaticResult {
    assert!(g.n() >= 1, "chromatic_number requires a nonempty graph");
    let clique = greedy_clique(g);
    for k in clique.len()..=g.n() {
        if let Some(witness) = k_colorable(g, k) {
            return ChromaticResult {
                chi: k,
                witness_coloring: witness,
                lower_bound_certificate: clique,
            };
        }
    }
    unreachable!("every graph is n-colorable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: i64, y: i64) -> Point {
        Point::ints(x, y)
    }

    fn complete(n: usize) -> VisibilityGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        VisibilityGraph::from_edges(n, &edges)
    }

    #[test]
    fn k4_needs_four_colors() {
        let g = complete(4);
        assert!(k_colorable(&g, 3).is_none());
        assert!(k_colorable(&g, 4).is_some());
        let r = chromatic_number(&g);
        assert_eq!(r.chi, 4);
        assert_eq!(r.lower_bound_certificate.len(), 4);
    }

    #[test]
    fn collinear_path_is_bipartite() {
        let g = crate::visibility::visibility_graph(&[p(0, 0), p(1, 0), p(2, 0)]);
        assert_eq!(chromatic_number(&g).chi, 2);
    }

    #[test]
    fn single_point_proper() {
        let s = ColoredPointSet::new(vec![p(0, 0)], vec![0], 1).unwrap();
        assert!(is_properly_colored(&s).proper);
    }

    #[test]
    fn violation_is_first_lexicographic() {
        // Three mutually visible points, two sharing a color.
        let s = ColoredPointSet::new(vec![p(0, 0), p(1, 0), p(0, 1)], vec![0, 1, 0], 2).unwrap();
        let r = is_properly_colored(&s);
        assert!(!r.proper);
        assert_eq!(r.violation, Some((0, 2)));
    }

    // Independent oracle: plain enumeration of all colorings with at most k
    // colors, no ordering heuristics or pruning beyond feasibility.
    fn brute_chi(g: &VisibilityGraph) -> usize {
        fn colorable(g: &VisibilityGraph, k: usize, assign: &mut Vec<usize>, v: usize) -> bool {
            if v == g.n() {
                return true;
            }
            for c in 0..k {
                if (0..v).all(|u| !(g.edge(u, v) && assign[u] == c)) {
                    assign.push(c);
                    if colorable(g, k, assign, v + 1) {
                        return true;
                    }
                    assign.pop();
                }
            }
            false
        }
        for k in 1..=g.n() {
            if colorable(g, k, &mut Vec::new(), 0) {
                return k;
            }
        }
        g.n().max(1)
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> VisibilityGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(density) {
                    edges.push((u, v));
                }
            }
        }
        VisibilityGraph::from_edges(n, &edges)
    }

    #[test]
    fn chi_matches_brute_force_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..300 {
            let n = rng.gen_range(1..=8);
            let density = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, density);
            let r = chromatic_number(&g);
            assert_eq!(r.chi, brute_chi(&g), "graph with {} vertices", n);
            // Witness is proper and uses exactly chi colors.
            for u in 0..n {
                for v in (u + 1)..n {
                    if g.edge(u, v) {
                        assert_ne!(r.witness_coloring[u], r.witness_coloring[v]);
                    }
                }
            }
            let mut used: Vec<usize> = r.witness_coloring.clone();
            used.sort_unstable();
            used.dedup();
            assert_eq!(used.len(), r.chi);
            // Certificate is a clique no larger than chi.
            let c = &r.lower_bound_certificate;
            assert!(c.len() <= r.chi);
            for i in 0..c.len() {
                for j in (i + 1)..c.len() {
                    assert!(g.edge(c[i], c[j]));
                }
            }
        }
    }

    #[test]
    fn k_colorable_iff_k_at_least_chi() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..100 {
            let n = rng.gen_range(1..=7);
            let g = random_graph(&mut rng, n, 0.5);
            let chi = chromatic_number(&g).chi;
            for k in 1..=n {
                assert_eq!(k_colorable(&g, k).is_some(), k >= chi);
            }
        }
    }

    #[test]
    fn chi_monotone_under_edge_addition() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..100 {
            let n = rng.gen_range(2..=7);
            let g = random_graph(&mut rng, n, 0.4);
            let chi = chromatic_number(&g).chi;
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v || g.edge(u, v) {
                continue;
            }
            let mut g2 = g.clone();
            g2.set_edge(u, v, true);
            assert!(chromatic_number(&g2).chi >= chi);
        }
    }

    #[test]
    fn returned_colorings_verify_on_point_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..60 {
            let n = rng.gen_range(1..=8);
            let mut pts: Vec<Point> = Vec::new();
            while pts.len() < n {
                let q = p(rng.gen_range(-5..5), rng.gen_range(-5..5));
                if !pts.contains(&q) {
                    pts.push(q);
                }
            }
            let g = crate::visibility::visibility_graph(&pts);
            let r = chromatic_number(&g);
            let set = ColoredPointSet::new(pts, r.witness_coloring.clone(), r.chi).unwrap();
            assert!(is_properly_colored(&set).proper);
        }
    }
}
