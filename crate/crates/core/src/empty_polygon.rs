//! Empty convex k-gon detection, Horton sets as negative controls, and the
//! pigeonhole bound 5*h6 - 5.

use crate::coloring::is_properly_colored;
use crate::error::{Error, Result};
use crate::geom::{convex_hull, in_closed_triangle, orient, point_in_convex_hull, Orientation, Point};
use crate::visibility::{max_collinear, ColoredPointSet};
use num::bigint::BigInt;
use rand::Rng;
use serde::Serialize;

/// Indices (into the host set) of an empty convex k-gon: the points are in
/// convex position and no other host point lies in their closed hull.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmptyKgonWitness {
    pub indices: Vec<usize>,
}

/// Independent verification of a witness against its host set.
pub fn verify_empty_kgon(points: &[Point], witness: &EmptyKgonWitness) -> bool {
    let k = witness.indices.len();
    if k < 3 {
        return false;
    }
    let subset: Vec<Point> = witness.indices.iter().map(|&i| points[i].clone()).collect();
    let hull = match convex_hull(&subset) {
        Ok(h) => h,
        Err(_) => return false,
    };
    if hull.len() != k {
        return false;
    }
    for i in 0..hull.len() {
        let a = &subset[hull[i]];
        let b = &subset[hull[(i + 1) % k]];
        let c = &subset[hull[(i + 2) % k]];
        if orient(a, b, c) != Orientation::CounterClockwise {
            return false;
        }
    }
    for (i, q) in points.iter().enumerate() {
        if witness.indices.contains(&i) {
            continue;
        }
        if point_in_convex_hull(q, &subset, false) {
            return false;
        }
    }
    true
}

// Fast route used by the subset scans: convex position via the hull size,
// emptiness via half-plane tests against the hull edges. The public
// verifier above stays on the Caratheodory membership path so witnesses are
// always checked by an independent route.
fn subset_is_empty_kgon(points: &[Point], subset: &[usize]) -> bool {
    let k = subset.len();
    let pts: Vec<Point> = subset.iter().map(|&i| points[i].clone()).collect();
    let hull = match convex_hull(&pts) {
        Ok(h) => h,
        Err(_) => return false,
    };
    if hull.len() != k {
        return false;
    }
    let hull_pts: Vec<&Point> = hull.iter().map(|&i| &pts[i]).collect();
    'outer: for (i, q) in points.iter().enumerate() {
        if subset.contains(&i) {
            continue;
        }
        for e in 0..k {
            if orient(hull_pts[e], hull_pts[(e + 1) % k], q) == Orientation::Clockwise {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Exhaustive route: first empty convex k-gon in lexicographic subset order.
pub fn find_empty_kgon_exhaustive(points: &[Point], k: usize) -> Option<EmptyKgonWitness> {
    let n = points.len();
    if k > n {
        return None;
    }
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        if subset_is_empty_kgon(points, &subset) {
            return Some(EmptyKgonWitness { indices: subset });
        }
        // Next lexicographic k-subset of 0..n.
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if subset[i] != i + n - k {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        subset[i] += 1;
        for j in (i + 1)..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Enumerate every empty convex k-gon, lexicographically. Oracle mode for
/// small hosts.
pub fn enumerate_empty_kgons(points: &[Point], k: usize) -> Vec<EmptyKgonWitness> {
    let n = points.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    fn rec(points: &[Point], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<EmptyKgonWitness>) {
        if cur.len() == k {
            if subset_is_empty_kgon(points, cur) {
                out.push(EmptyKgonWitness { indices: cur.clone() });
            }
            return;
        }
        for i in start..points.len() {
            cur.push(i);
            rec(points, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(points, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Chain-extension route for larger hosts: for every bottom anchor, grow
/// convex chains over the points above it in angular order, requiring each
/// fan triangle to be empty. Assumes general position.
pub fn find_empty_kgon_chain(points: &[Point], k: usize) -> Option<EmptyKgonWitness> {
    let n = points.len();
    if k > n {
        return None;
    }
    // Anchors scanned in (y, x) order so the reported witness is owned by
    // its lowest vertex.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        (points[a].y.clone(), points[a].x.clone()).cmp(&(points[b].y.clone(), points[b].x.clone()))
    });
    for &p_idx in &order {
        let p = &points[p_idx];
        let mut above: Vec<usize> = (0..n)
            .filter(|&q| {
                q != p_idx
                    && (points[q].y.clone(), points[q].x.clone())
                        > (p.y.clone(), p.x.clone())
            })
            .collect();
        if above.len() + 1 < k {
            continue;
        }
        // Strict angular order around p (no ties in general position).
        above.sort_by(|&a, &b| match orient(p, &points[a], &points[b]) {
            Orientation::Clockwise => std::cmp::Ordering::Greater,
            Orientation::CounterClockwise => std::cmp::Ordering::Less,
            Orientation::Collinear => std::cmp::Ordering::Equal,
        });
        let m = above.len();
        // empty_tri[i][j]: no host point strictly inside triangle (p, a_i, a_j).
        let mut empty_tri = vec![vec![false; m]; m];
        for i in 0..m {
            for j in (i + 1)..m {
                let (a, b) = (&points[above[i]], &points[above[j]]);
                let ok = (0..n).all(|w| {
                    w == p_idx
                        || w == above[i]
                        || w == above[j]
                        || !in_closed_triangle(&points[w], p, a, b)
                });
                empty_tri[i][j] = ok;
            }
        }
        if k == 3 {
            for i in 0..m {
                for j in (i + 1)..m {
                    if empty_tri[i][j] {
                        let mut indices = vec![p_idx, above[i], above[j]];
                        indices.sort_unstable();
                        return Some(EmptyKgonWitness { indices });
                    }
                }
            }
            continue;
        }
        // chain[i][j]: longest empty convex chain ending with edge i -> j,
        // capped at k - 1; pred for witness reconstruction.
        let mut chain = vec![vec![0usize; m]; m];
        let mut pred = vec![vec![usize::MAX; m]; m];
        for j in 0..m {
            for i in 0..j {
                if !empty_tri[i][j] {
                    continue;
                }
                chain[i][j] = 2;
                for h in 0..i {
                    if chain[h][i] >= 2
                        && chain[h][i] < k - 1
                        && orient(&points[above[h]], &points[above[i]], &points[above[j]])
                            == Orientation::CounterClockwise
                        && chain[h][i] + 1 > chain[i][j]
                    {
                        chain[i][j] = chain[h][i] + 1;
                        pred[i][j] = h;
                    }
                }
                if chain[i][j] == k - 1
                    && orient(&points[above[i]], &points[above[j]], p)
                        == Orientation::CounterClockwise
                {
                    let mut rev = vec![above[j], above[i]];
                    let (mut ci, mut cj) = (i, j);
                    while pred[ci][cj] != usize::MAX {
                        let h = pred[ci][cj];
                        rev.push(above[h]);
                        cj = ci;
                        ci = h;
                    }
                    rev.push(p_idx);
                    rev.reverse();
                    rev.sort_unstable();
                    return Some(EmptyKgonWitness { indices: rev });
                }
            }
        }
    }
    None
}

/// An empty convex k-gon of the host set, if any. Exact; exhaustive subset
/// order up to 20 points, chain extension beyond. General position is
/// required for k >= 4.
pub fn find_empty_convex_kgon(points: &[Point], k: usize) -> Result<Option<EmptyKgonWitness>> {
    if k < 3 {
        return Err(Error::invalid("k must be at least 3"));
    }
    if k >= 4 && max_collinear(points) > 2 {
        return Err(Error::invalid(
            "host set must be in general position for k >= 4",
        ));
    }
    if points.len() <= 20 {
        Ok(find_empty_kgon_exhaustive(points, k))
    } else {
        Ok(find_empty_kgon_chain(points, k))
    }
}

/// Search each color class of a properly colored set (with at most 3
/// collinear points overall) for a class-empty convex hexagon. Returns the
/// first hit in color order, with indices into the full set.
pub fn mono_empty_hexagon(set: &ColoredPointSet) -> Result<Option<(usize, EmptyKgonWitness)>> {
    if !is_properly_colored(set).proper {
        return Err(Error::invalid("set is not properly colored"));
    }
    if max_collinear(set.points()) > 3 {
        return Err(Error::invalid("set has more than 3 collinear points"));
    }
    for c in 0..set.k() {
        let class = set.class(c);
        if class.len() < 6 {
            continue;
        }
        let class_points: Vec<Point> = class.iter().map(|&i| set.point(i).clone()).collect();
        if let Some(w) = find_empty_convex_kgon(&class_points, 6)? {
            let indices = w.indices.iter().map(|&i| class[i]).collect();
            return Ok(Some((c, EmptyKgonWitness { indices })));
        }
    }
    Ok(None)
}

/// The classical recursive Horton construction with integer coordinates:
/// even-rank points low, odd-rank points lifted far enough that every line
/// through two points of one layer separates it from the other.
pub fn horton_set(n: usize) -> Result<Vec<Point>> {
    if !matches!(n, 2 | 4 | 8 | 16 | 32 | 64) {
        return Err(Error::invalid("supported sizes: 2, 4, 8, 16, 32, 64"));
    }
    fn rec(n: usize) -> Vec<BigInt> {
        if n == 1 {
            return vec![BigInt::from(0)];
        }
        let inner = rec(n / 2);
        let ymax = inner.iter().max().cloned().unwrap();
        // Lift factor: above any line through two low points and below any
        // line through two high points, over the whole x-range.
        let lift = (ymax.clone() + 1) * BigInt::from(n as i64 + 1) * 2;
        let mut ys = Vec::with_capacity(n);
        for i in 0..n {
            let base = inner[i / 2].clone();
            if i % 2 == 0 {
                ys.push(base);
            } else {
                ys.push(base + &lift);
            }
        }
        ys
    }
    let ys = rec(n);
    Ok(ys
        .into_iter()
        .enumerate()
        .map(|(i, y)| {
            Point::new(
                crate::geom::rat(i as i64),
                num::rational::BigRational::from_integer(y),
            )
        })
        .collect())
}

/// The bound 5*h6 - 5 on the size of a properly 5-colorable set with at
/// most 3 collinear points, given a bound h6 on the empty-hexagon number.
pub fn mc35_upper_bound(h6: u64) -> u64 {
    5 * h6 - 5
}

/// Pigeonhole: the largest of `classes` classes over `total` items has at
/// least this many members.
pub fn min_largest_class(total: u64, classes: u64) -> u64 {
    total.div_ceil(classes)
}

/// Seeded random integer point set in general position (no 3 collinear),
/// via rejection sampling over [-range, range]^2.
pub fn random_general_position(rng: &mut impl Rng, n: usize, range: i64) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let q = Point::ints(rng.gen_range(-range..=range), rng.gen_range(-range..=range));
        if pts.contains(&q) {
            continue;
        }
        let collinear = pts.iter().enumerate().any(|(i, a)| {
            pts.iter()
                .skip(i + 1)
                .any(|b| orient(a, b, &q) == Orientation::Collinear)
        });
        if !collinear {
            pts.push(q);
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(x: i64, y: i64) -> Point {
        Point::ints(x, y)
    }

    #[test]
    fn triangle_always_present_in_general_position() {
        let pts = vec![p(0, 0), p(3, 1), p(1, 4)];
        let w = find_empty_convex_kgon(&pts, 3).unwrap().unwrap();
        assert!(verify_empty_kgon(&pts, &w));
    }

    #[test]
    fn no_convex_quad_when_one_point_is_inside() {
        let pts = vec![p(0, 0), p(6, 0), p(3, 5), p(3, 2)];
        assert!(find_empty_convex_kgon(&pts, 4).unwrap().is_none());
    }

    #[test]
    fn collinear_host_rejected_for_k4() {
        let pts = vec![p(0, 0), p(1, 0), p(2, 0), p(0, 1)];
        assert!(find_empty_convex_kgon(&pts, 4).is_err());
        // k = 3 tolerates collinearity; the degenerate triple is skipped.
        assert!(find_empty_convex_kgon(&pts, 3).unwrap().is_some());
    }

    #[test]
    fn five_points_contain_empty_quad() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..300 {
            let pts = random_general_position(&mut rng, 5, 40);
            let w = find_empty_convex_kgon(&pts, 4).unwrap();
            let w = w.expect("every 5-point general-position set has an empty convex 4-gon");
            assert!(verify_empty_kgon(&pts, &w));
        }
    }

    #[test]
    fn ten_points_contain_empty_pentagon() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..30 {
            let pts = random_general_position(&mut rng, 10, 60);
            let w = find_empty_convex_kgon(&pts, 5).unwrap();
            let w = w.expect("every 10-point general-position set has an empty convex pentagon");
            assert!(verify_empty_kgon(&pts, &w));
        }
    }

    #[test]
    fn exhaustive_and_chain_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..60 {
            let n = rng.gen_range(6..=14);
            let pts = random_general_position(&mut rng, n, 30);
            for k in 4..=7 {
                let a = find_empty_kgon_exhaustive(&pts, k);
                let b = find_empty_kgon_chain(&pts, k);
                assert_eq!(a.is_some(), b.is_some(), "n={n} k={k} pts={pts:?}");
                if let Some(w) = a {
                    assert!(verify_empty_kgon(&pts, &w));
                }
                if let Some(w) = b {
                    assert!(verify_empty_kgon(&pts, &w));
                }
            }
        }
    }

    #[test]
    fn enumeration_contains_the_first_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        let pts = random_general_position(&mut rng, 9, 25);
        let all = enumerate_empty_kgons(&pts, 4);
        match find_empty_kgon_exhaustive(&pts, 4) {
            Some(w) => assert_eq!(all.first(), Some(&w)),
            None => assert!(all.is_empty()),
        }
    }

    #[test]
    fn horton_sets_are_general_position() {
        for n in [2usize, 4, 8, 16] {
            let h = horton_set(n).unwrap();
            assert_eq!(h.len(), n);
            assert!(max_collinear(&h) <= 2);
        }
        assert!(horton_set(10).is_err());
        assert!(horton_set(0).is_err());
    }

    #[test]
    fn horton_16_has_no_empty_heptagon() {
        let h = horton_set(16).unwrap();
        assert!(find_empty_kgon_exhaustive(&h, 7).is_none());
        assert!(find_empty_kgon_chain(&h, 7).is_none());
    }

    #[test]
    fn horton_layers_dominate() {
        // Every line through two even-rank points passes below every
        // odd-rank point, and vice versa.
        let h = horton_set(32).unwrap();
        let evens: Vec<&Point> = h.iter().step_by(2).collect();
        let odds: Vec<&Point> = h.iter().skip(1).step_by(2).collect();
        for i in 0..evens.len() {
            for j in (i + 1)..evens.len() {
                for o in &odds {
                    assert_eq!(orient(evens[i], evens[j], o), Orientation::CounterClockwise);
                }
            }
        }
        for i in 0..odds.len() {
            for j in (i + 1)..odds.len() {
                for e in &evens {
                    assert_eq!(orient(odds[i], odds[j], e), Orientation::Clockwise);
                }
            }
        }
    }

    #[test]
    fn mono_hexagon_on_corpus_twelve_is_absent() {
        let set = crate::corpus::twelve_integer();
        assert!(mono_empty_hexagon(&set).unwrap().is_none());
    }

    #[test]
    fn mono_hexagon_found_in_large_class() {
        // Seven red points on a convex arc; every red pair gets a blocker of
        // its own fresh color, with positions sampled so that no four points
        // of the full set are collinear.
        let reds: Vec<Point> = (0..7i64).map(|i| p(i, i * i)).collect();
        let mut pts = reds.clone();
        let mut colors = vec![0usize; 7];
        let mut next_color = 1;
        let mut rng = ChaCha8Rng::seed_from_u64(89);
        for i in 0..7 {
            for j in (i + 1)..7 {
                let mut attempts = 0;
                loop {
                    attempts += 1;
                    assert!(attempts < 500, "could not place blocker for pair ({i},{j})");
                    // Large prime denominator keeps the candidates off the
                    // rational crossings generated by earlier points.
                    let t = crate::geom::ratio(rng.gen_range(1..257i64), 257);
                    let b = Point::new(
                        &reds[i].x + (&reds[j].x - &reds[i].x) * &t,
                        &reds[i].y + (&reds[j].y - &reds[i].y) * &t,
                    );
                    if pts.contains(&b) {
                        continue;
                    }
                    let mut trial = pts.clone();
                    trial.push(b.clone());
                    if max_collinear(&trial) <= 3 {
                        pts.push(b);
                        colors.push(next_color);
                        next_color += 1;
                        break;
                    }
                }
            }
        }
        let set = ColoredPointSet::new(pts, colors, next_color).unwrap();
        assert!(is_properly_colored(&set).proper);
        let (c, w) = mono_empty_hexagon(&set).unwrap().unwrap();
        assert_eq!(c, 0);
        // The witness is an empty hexagon of the red class.
        assert_eq!(w.indices.len(), 6);
        let class_points: Vec<Point> = set.class(0).iter().map(|&i| set.point(i).clone()).collect();
        let within: Vec<usize> = w.indices.iter().map(|&i| set.class(0).iter().position(|&g| g == i).unwrap()).collect();
        assert!(verify_empty_kgon(&class_points, &EmptyKgonWitness { indices: within }));
    }

    #[test]
    fn mono_hexagon_preconditions() {
        let improper = ColoredPointSet::new(vec![p(0, 0), p(1, 0)], vec![0, 0], 1).unwrap();
        assert!(mono_empty_hexagon(&improper).is_err());
    }

    #[test]
    fn bound_formula() {
        assert_eq!(mc35_upper_bound(463), 2310);
        assert_eq!(mc35_upper_bound(1), 0);
        assert_eq!(mc35_upper_bound(10), 45);
    }

    #[test]
    fn pigeonhole_on_random_colorings() {
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        for _ in 0..200 {
            let mut sizes = [0u64; 5];
            for _ in 0..2311 {
                sizes[rng.gen_range(0..5)] += 1;
            }
            let largest = *sizes.iter().max().unwrap();
            assert!(largest >= min_largest_class(2311, 5));
            assert_eq!(min_largest_class(2311, 5), 463);
        }
    }
}
