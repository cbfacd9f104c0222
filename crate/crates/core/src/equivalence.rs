//! Equivalence of colored point sets: bijections preserving every convex
//! hull membership relation and the same-color relation.
//!
//! By Caratheodory's theorem in the plane, membership of a point in the
//! convex hull of any finite subset is determined by memberships in subsets
//! of size at most 3, so the decision works over two relations: strict
//! betweenness (point on an open segment) and closed-triangle containment.

use crate::geom::{between_unchecked, in_closed_triangle};
use crate::visibility::ColoredPointSet;
use std::collections::HashSet;

/// Per-point isomorphism invariants used for pruning and for the canonical
/// signature: how often the point appears in each role of each relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointProfile {
    pub class_size: usize,
    /// Times the point is strictly between a pair.
    pub mid: usize,
    /// Times the point is an endpoint of a betweenness triple.
    pub end: usize,
    /// Times the point lies in the closed triangle of three others.
    pub inside: usize,
    /// Times the point is a vertex of a containing triangle.
    pub vertex: usize,
}

/// Relational data of a colored point set. Equality compares only the
/// relabeling-invariant canonical part, so equivalent sets always compare
/// equal and sets comparing unequal are never equivalent.
#[derive(Debug, Clone, Eq)]
pub struct CombinatorialSignature {
    pub n: usize,
    /// Triples (mid, a, b) with a < b: point `mid` on the open segment (a, b).
    pub betweenness: Vec<(usize, usize, usize)>,
    /// Quadruples (p, [a, b, c]): p in the closed triangle abc, p not a vertex.
    pub in_triangle: Vec<(usize, [usize; 3])>,
    /// Color class sizes, sorted descending.
    pub class_sizes: Vec<usize>,
    /// Sorted multiset of per-point profiles.
    pub profiles: Vec<PointProfile>,
}

impl PartialEq for CombinatorialSignature {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.class_sizes == other.class_sizes
            && self.betweenness.len() == other.betweenness.len()
            && self.in_triangle.len() == other.in_triangle.len()
            && self.profiles == other.profiles
    }
}

/// Compute the signature of a set.
pub fn signature(set: &ColoredPointSet) -> CombinatorialSignature {
    let pts = set.points();
    let n = pts.len();
    let mut betweenness = Vec::new();
    for m in 0..n {
        for a in 0..n {
            if a == m {
                continue;
            }
            for b in (a + 1)..n {
                if b == m {
                    continue;
                }
                if between_unchecked(&pts[a], &pts[b], &pts[m]) {
                    betweenness.push((m, a, b));
                }
            }
        }
    }
    betweenness.sort_unstable();
    let mut in_triangle = Vec::new();
    for p in 0..n {
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    if p == a || p == b || p == c {
                        continue;
                    }
                    if in_closed_triangle(&pts[p], &pts[a], &pts[b], &pts[c]) {
                        in_triangle.push((p, [a, b, c]));
                    }
                }
            }
        }
    }
    in_triangle.sort_unstable();

    let sizes_by_color = set.class_sizes();
    let mut class_sizes: Vec<usize> = sizes_by_color.iter().copied().filter(|&s| s > 0).collect();
    class_sizes.sort_unstable_by(|a, b| b.cmp(a));

    let mut profiles: Vec<PointProfile> = (0..n)
        .map(|i| PointProfile {
            class_size: sizes_by_color[set.color(i)],
            mid: 0,
            end: 0,
            inside: 0,
            vertex: 0,
        })
        .collect();
    for &(m, a, b) in &betweenness {
        profiles[m].mid += 1;
        profiles[a].end += 1;
        profiles[b].end += 1;
    }
    for &(p, t) in &in_triangle {
        profiles[p].inside += 1;
        for v in t {
            profiles[v].vertex += 1;
        }
    }
    let mut sorted = profiles;
    sorted.sort_unstable();
    CombinatorialSignature { n, betweenness, in_triangle, class_sizes, profiles: sorted }
}

struct Relations {
    bet: HashSet<(usize, usize, usize)>,
    tri: HashSet<(usize, [usize; 3])>,
    profiles: Vec<PointProfile>,
    colors: Vec<usize>,
}

fn relations(set: &ColoredPointSet) -> Relations {
    let sig = signature(set);
    let pts = set.points();
    let sizes = set.class_sizes();
    // Per-point profiles in index order (the signature sorts them away).
    let mut profiles: Vec<PointProfile> = (0..set.len())
        .map(|i| PointProfile {
            class_size: sizes[set.color(i)],
            mid: 0,
            end: 0,
            inside: 0,
            vertex: 0,
        })
        .collect();
    for &(m, a, b) in &sig.betweenness {
        profiles[m].mid += 1;
        profiles[a].end += 1;
        profiles[b].end += 1;
    }
    for &(p, t) in &sig.in_triangle {
        profiles[p].inside += 1;
        for v in t {
            profiles[v].vertex += 1;
        }
    }
    let _ = pts;
    Relations {
        bet: sig.betweenness.iter().copied().collect(),
        tri: sig.in_triangle.iter().copied().collect(),
        profiles,
        colors: set.colors().to_vec(),
    }
}

struct Matcher<'a> {
    x: &'a Relations,
    y: &'a Relations,
    n: usize,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    color_map: Vec<Option<usize>>,
    color_used: Vec<bool>,
}

impl Matcher<'_> {
    fn bet_key(m: usize, a: usize, b: usize) -> (usize, usize, usize) {
        if a < b {
            (m, a, b)
        } else {
            (m, b, a)
        }
    }

    /// Check every relation tuple whose support became fully mapped when
    /// `v` was assigned. Truth values must match in both structures.
    fn consistent(&self, v: usize) -> bool {
        let assigned: Vec<usize> = (0..self.n).filter(|&i| self.map[i].is_some()).collect();
        let mv = self.map[v].unwrap();
        // Betweenness triples containing v.
        for (ai, &a) in assigned.iter().enumerate() {
            for &b in assigned.iter().skip(ai + 1) {
                for (m, p, q) in [(v, a, b), (a, v, b), (b, a, v)] {
                    if m == p || m == q || p == q {
                        continue;
                    }
                    let in_x = self.x.bet.contains(&Self::bet_key(m, p, q));
                    let (mm, pp, qq) = (
                        self.map[m].unwrap(),
                        self.map[p].unwrap(),
                        self.map[q].unwrap(),
                    );
                    let in_y = self.y.bet.contains(&Self::bet_key(mm, pp, qq));
                    if in_x != in_y {
                        return false;
                    }
                }
            }
        }
        let _ = mv;
        // Triangle quadruples containing v.
        for (ai, &a) in assigned.iter().enumerate() {
            for (bi, &b) in assigned.iter().enumerate().skip(ai + 1) {
                for &c in assigned.iter().skip(bi + 1) {
                    let quad = [a, b, c];
                    let mut items: Vec<(usize, [usize; 3])> = Vec::new();
                    // One of the four points is the contained one.
                    for (p, rest) in [
                        (a, [b, c, v]),
                        (b, [a, c, v]),
                        (c, [a, b, v]),
                        (v, quad),
                    ] {
                        let mut t = rest;
                        t.sort_unstable();
                        items.push((p, t));
                    }
                    for (p, t) in items {
                        if t.contains(&p) {
                            continue;
                        }
                        let in_x = self.x.tri.contains(&(p, t));
                        let mut ty = [
                            self.map[t[0]].unwrap(),
                            self.map[t[1]].unwrap(),
                            self.map[t[2]].unwrap(),
                        ];
                        ty.sort_unstable();
                        let in_y = self.y.tri.contains(&(self.map[p].unwrap(), ty));
                        if in_x != in_y {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn assign(&mut self, v: usize) -> bool {
        if v == self.n {
            return true;
        }
        for w in 0..self.n {
            if self.used[w] || self.x.profiles[v] != self.y.profiles[w] {
                continue;
            }
            let cx = self.x.colors[v];
            let cy = self.y.colors[w];
            let prior = self.color_map[cx];
            match prior {
                Some(mapped) if mapped != cy => continue,
                None if self.color_used[cy] => continue,
                _ => {}
            }
            self.map[v] = Some(w);
            self.used[w] = true;
            if prior.is_none() {
                self.color_map[cx] = Some(cy);
                self.color_used[cy] = true;
            }
            if self.consistent(v) && self.assign(v + 1) {
                return true;
            }
            self.map[v] = None;
            self.used[w] = false;
            if prior.is_none() {
                self.color_map[cx] = None;
                self.color_used[cy] = false;
            }
        }
        false
    }
}

/// A bijection witnessing equivalence of `x` and `y` (index in `x` to index
/// in `y`), or `None` when no hull-membership- and color-preserving
/// bijection exists. Color classes may be renamed. Exhaustive backtracking
/// with signature pruning; first bijection in canonical order.
pub fn are_equivalent(x: &ColoredPointSet, y: &ColoredPointSet) -> Option<Vec<usize>> {
    if x.len() != y.len() {
        return None;
    }
    if signature(x) != signature(y) {
        return None;
    }
    let rx = relations(x);
    let ry = relations(y);
    let n = x.len();
    let kx = x.k().max(y.k());
    let mut m = Matcher {
        x: &rx,
        y: &ry,
        n,
        map: vec![None; n],
        used: vec![false; n],
        color_map: vec![None; kx],
        color_used: vec![false; kx],
    };
    if m.assign(0) {
        Some(m.map.into_iter().map(|w| w.unwrap()).collect())
    } else {
        None
    }
}
