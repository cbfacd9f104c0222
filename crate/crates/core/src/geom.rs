//! Exact planar predicates and constructions over arbitrary-precision
//! rationals. No floating point in any decision path.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};

/// Exact rational scalar. Always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Build a rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Build a rational from numerator and denominator.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Render a rational as `n` or `n/d`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse a rational literal: an integer, a fraction `p/q`, or a decimal
/// such as `1.7` (read exactly as 17/10).
pub fn parse_rat(s: &str) -> std::result::Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal literal {s:?}"));
        }
        let negative = int.trim_start().starts_with('-');
        let int_part: BigInt = if int == "-" || int.is_empty() {
            BigInt::from(0)
        } else {
            int.parse().map_err(|_| format!("bad decimal literal {s:?}"))?
        };
        let frac_num: BigInt = frac.parse().map_err(|_| format!("bad decimal literal {s:?}"))?;
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let mut numer = int_part * &scale;
        if negative {
            numer -= &frac_num;
        } else {
            numer += &frac_num;
        }
        return Ok(Rat::new(numer, scale));
    }
    let n: BigInt = s.parse().map_err(|_| format!("bad rational literal {s:?}"))?;
    Ok(Rat::from_integer(n))
}

/// A point of the plane with exact rational coordinates. Points order
/// lexicographically by (x, y).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point::new(rat(x), rat(y))
    }

    pub fn fracs(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point::new(ratio(xn, xd), ratio(yn, yd))
    }

    /// Coordinate midpoint of two points.
    pub fn midpoint(a: &Point, b: &Point) -> Point {
        let two = rat(2);
        Point::new((&a.x + &b.x) / &two, (&a.y + &b.y) / &two)
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", format_rat(&self.x), format_rat(&self.y))
    }
}

/// Three-way orientation of an ordered point triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

// Fast path: the orientation sign only needs integer cross products. When
// every coordinate has i64 numerator and denominator the whole computation
// fits in checked i128 arithmetic; otherwise fall back to BigInt.
fn small(r: &Rat) -> Option<(i128, i128)> {
    Some((r.numer().to_i64()? as i128, r.denom().to_i64()? as i128))
}

fn orient_small(p: &Point, q: &Point, r: &Point) -> Option<i8> {
    let (pxn, pxd) = small(&p.x)?;
    let (pyn, pyd) = small(&p.y)?;
    let (qxn, qxd) = small(&q.x)?;
    let (qyn, qyd) = small(&q.y)?;
    let (rxn, rxd) = small(&r.x)?;
    let (ryn, ryd) = small(&r.y)?;
    // Differences as unreduced fractions with positive denominators.
    let ax_n = qxn.checked_mul(pxd)?.checked_sub(pxn.checked_mul(qxd)?)?;
    let ax_d = qxd.checked_mul(pxd)?;
    let ay_n = qyn.checked_mul(pyd)?.checked_sub(pyn.checked_mul(qyd)?)?;
    let ay_d = qyd.checked_mul(pyd)?;
    let bx_n = rxn.checked_mul(pxd)?.checked_sub(pxn.checked_mul(rxd)?)?;
    let bx_d = rxd.checked_mul(pxd)?;
    let by_n = ryn.checked_mul(pyd)?.checked_sub(pyn.checked_mul(ryd)?)?;
    let by_d = ryd.checked_mul(pyd)?;
    // sign(ax*by - ay*bx) with all denominators positive.
    let lhs = ax_n.checked_mul(by_n)?.checked_mul(ay_d.checked_mul(bx_d)?)?;
    let rhs = ay_n.checked_mul(bx_n)?.checked_mul(ax_d.checked_mul(by_d)?)?;
    Some((lhs - rhs).signum() as i8)
}

fn orient_big(p: &Point, q: &Point, r: &Point) -> i8 {
    let ax = &q.x - &p.x;
    let ay = &q.y - &p.y;
    let bx = &r.x - &p.x;
    let by = &r.y - &p.y;
    let cross = &ax * &by - &ay * &bx;
    if cross.is_zero() {
        0
    } else if cross.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of the exact cross product (q-p) x (r-p).
pub fn orient(p: &Point, q: &Point, r: &Point) -> Orientation {
    let sign = orient_small(p, q, r).unwrap_or_else(|| orient_big(p, q, r));
    match sign {
        1 => Orientation::CounterClockwise,
        -1 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    }
}

fn rat_between(lo: &Rat, hi: &Rat, v: &Rat) -> bool {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    lo < v && v < hi
}

/// True iff `p` lies on the open segment (a, b). The endpoints themselves
/// do not count. Callers must pass distinct endpoints.
pub fn strictly_between(a: &Point, b: &Point, p: &Point) -> Result<bool> {
    if a == b {
        return Err(Error::invalid("strictly_between requires distinct endpoints"));
    }
    Ok(between_unchecked(a, b, p))
}

pub(crate) fn between_unchecked(a: &Point, b: &Point, p: &Point) -> bool {
    if orient(a, b, p) != Orientation::Collinear {
        return false;
    }
    if a.x != b.x {
        rat_between(&a.x, &b.x, &p.x)
    } else {
        rat_between(&a.y, &b.y, &p.y)
    }
}

/// Indices of the convex hull vertices of `points`, counterclockwise,
/// starting from the lexicographically smallest point. Collinear boundary
/// points are excluded. Duplicate input points are rejected.
pub fn convex_hull(points: &[Point]) -> Result<Vec<usize>> {
    if points.is_empty() {
        return Err(Error::invalid("convex_hull requires at least one point"));
    }
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a].cmp(&points[b]));
    for w in idx.windows(2) {
        if points[w[0]] == points[w[1]] {
            return Err(Error::invalid(format!(
                "duplicate point {}",
                points[w[0]]
            )));
        }
    }
    if idx.len() == 1 {
        return Ok(idx);
    }
    if idx.len() == 2 {
        return Ok(idx);
    }
    // Monotone chain; strict turns only, so collinear boundary points drop out.
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && orient(
                &points[lower[lower.len() - 2]],
                &points[lower[lower.len() - 1]],
                &points[i],
            ) != Orientation::CounterClockwise
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && orient(
                &points[upper[upper.len() - 2]],
                &points[upper[upper.len() - 1]],
                &points[i],
            ) != Orientation::CounterClockwise
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 2 {
        // All points collinear: hull degenerates to the two extremes.
        return Ok(vec![idx[0], idx[idx.len() - 1]]);
    }
    Ok(lower)
}

/// True iff `p` lies in the closed triangle spanned by `a`, `b`, `c`.
/// Degenerate (collinear) triples reduce to closed segment membership.
pub fn in_closed_triangle(p: &Point, a: &Point, b: &Point, c: &Point) -> bool {
    let o1 = orient(a, b, p);
    let o2 = orient(b, c, p);
    let o3 = orient(c, a, p);
    if o1 == Orientation::Collinear
        && o2 == Orientation::Collinear
        && o3 == Orientation::Collinear
    {
        // Degenerate triangle: membership in one of the closed segments.
        return p == a
            || p == b
            || p == c
            || (a != b && between_unchecked(a, b, p))
            || (b != c && between_unchecked(b, c, p))
            || (a != c && between_unchecked(a, c, p));
    }
    let has_ccw = [o1, o2, o3].contains(&Orientation::CounterClockwise);
    let has_cw = [o1, o2, o3].contains(&Orientation::Clockwise);
    !(has_ccw && has_cw)
}

/// Membership of `p` in conv(S), decided exactly.
///
/// Closed membership (`strict = false`) uses the Caratheodory reduction:
/// `p` equals a point of S, lies on a closed segment of a pair, or lies in
/// the closed triangle of a triple. Interior membership (`strict = true`)
/// additionally excludes the hull boundary.
pub fn point_in_convex_hull(p: &Point, set: &[Point], strict: bool) -> bool {
    if set.is_empty() {
        return false;
    }
    if strict {
        return point_in_hull_interior(p, set);
    }
    if set.iter().any(|s| s == p) {
        return true;
    }
    for i in 0..set.len() {
        for j in (i + 1)..set.len() {
            if set[i] != set[j] && between_unchecked(&set[i], &set[j], p) {
                return true;
            }
        }
    }
    for i in 0..set.len() {
        for j in (i + 1)..set.len() {
            for k in (j + 1)..set.len() {
                if in_closed_triangle(p, &set[i], &set[j], &set[k]) {
                    return true;
                }
            }
        }
    }
    false
}

fn point_in_hull_interior(p: &Point, set: &[Point]) -> bool {
    let mut unique: Vec<Point> = Vec::new();
    for s in set {
        if !unique.contains(s) {
            unique.push(s.clone());
        }
    }
    let hull = match convex_hull(&unique) {
        Ok(h) => h,
        Err(_) => return false,
    };
    if hull.len() < 3 {
        // A point or segment has empty interior in the plane.
        return false;
    }
    (0..hull.len()).all(|i| {
        let a = &unique[hull[i]];
        let b = &unique[hull[(i + 1) % hull.len()]];
        orient(a, b, p) == Orientation::CounterClockwise
    })
}

/// Intersection point of the two lines spanned by (p1, p2) and (q1, q2).
/// `None` when the lines are parallel or coincident.
pub fn line_intersection(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> Option<Point> {
    let dx1 = &p2.x - &p1.x;
    let dy1 = &p2.y - &p1.y;
    let dx2 = &q2.x - &q1.x;
    let dy2 = &q2.y - &q1.y;
    let denom = &dx1 * &dy2 - &dy1 * &dx2;
    if denom.is_zero() {
        return None;
    }
    let ex = &q1.x - &p1.x;
    let ey = &q1.y - &p1.y;
    let t = (&ex * &dy2 - &ey * &dx2) / &denom;
    Some(Point::new(&p1.x + &dx1 * &t, &p1.y + &dy1 * &t))
}

/// Parameter of `p` along the segment a->b (0 at `a`, 1 at `b`), assuming
/// `p` is collinear with the distinct endpoints.
pub(crate) fn segment_param(a: &Point, b: &Point, p: &Point) -> Rat {
    if a.x != b.x {
        (&p.x - &a.x) / (&b.x - &a.x)
    } else {
        (&p.y - &a.y) / (&b.y - &a.y)
    }
}

/// Intersection of the open segments (a, b) and (c, d), when it is a single
/// point strictly inside both.
pub fn open_segments_crossing(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Point> {
    let p = line_intersection(a, b, c, d)?;
    if between_unchecked(a, b, &p) && between_unchecked(c, d, &p) {
        Some(p)
    } else {
        None
    }
}
