//! Exact planar predicates and the generated code of a realization.

use std::collections::BTreeSet;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::code::{Codeword, NeuralCode, NeuronId};

pub type Q = Ratio<i128>;

pub fn q(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn int(x: i128, y: i128) -> Self {
        Point { x: q(x), y: q(y) }
    }
}

/// Twice the signed area of triangle `abc`; positive for a left turn.
pub fn cross(a: Point, b: Point, c: Point) -> Q {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Convex hull in counterclockwise order without collinear vertices.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= Q::zero() {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= Q::zero() {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Checks that the vertices form a strictly convex counterclockwise polygon.
pub fn check_convex_polygon(poly: &[Point]) -> Result<(), String> {
    let k = poly.len();
    if k < 3 {
        return Err(format!("polygon has {k} vertices; at least 3 are required"));
    }
    for i in 0..k {
        let a = poly[i];
        let b = poly[(i + 1) % k];
        if a == b {
            return Err("polygon repeats a vertex".to_string());
        }
        for (j, &p) in poly.iter().enumerate() {
            if j == i || j == (i + 1) % k {
                continue;
            }
            let c = cross(a, b, p);
            if c.is_zero() {
                return Err("polygon has collinear vertices".to_string());
            }
            if c.is_negative() {
                return Err("polygon is not convex and counterclockwise (orientation)".to_string());
            }
        }
    }
    Ok(())
}

/// Open interval of `y` values inside a convex polygon on the vertical line
/// at `x`, or `None` if that line misses the interior.
fn vertical_slice(poly: &[Point], x: Q) -> Option<(Q, Q)> {
    let (mut xmin, mut xmax) = (poly[0].x, poly[0].x);
    for p in poly {
        xmin = xmin.min(p.x);
        xmax = xmax.max(p.x);
    }
    if x <= xmin || x >= xmax {
        return None;
    }
    let mut lo: Option<Q> = None;
    let mut hi: Option<Q> = None;
    let k = poly.len();
    for i in 0..k {
        let a = poly[i];
        let b = poly[(i + 1) % k];
        if a.x == b.x {
            continue;
        }
        let (l, r) = if a.x < b.x { (a, b) } else { (b, a) };
        if x < l.x || x > r.x {
            continue;
        }
        let y = l.y + (r.y - l.y) * (x - l.x) / (r.x - l.x);
        lo = Some(lo.map_or(y, |v: Q| v.min(y)));
        hi = Some(hi.map_or(y, |v: Q| v.max(y)));
    }
    Some((lo?, hi?))
}

/// Line `a x + b y = c`, normalized so the first nonzero of `(a, b)` is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Line {
    a: Q,
    b: Q,
    c: Q,
}

impl Line {
    fn through(p: Point, r: Point) -> Line {
        let a = r.y - p.y;
        let b = p.x - r.x;
        let c = a * p.x + b * p.y;
        let s = if !a.is_zero() { a } else { b };
        Line { a: a / s, b: b / s, c: c / s }
    }

    fn is_vertical(&self) -> bool {
        self.b.is_zero()
    }

    fn y_at(&self, x: Q) -> Q {
        (self.c - self.a * x) / self.b
    }

    fn meet_x(&self, o: &Line) -> Option<Q> {
        let det = self.a * o.b - o.a * self.b;
        if det.is_zero() {
            None
        } else {
            Some((self.c * o.b - o.c * self.b) / det)
        }
    }
}

/// Sample values hitting every point and open gap of a sorted list, plus
/// one value beyond each end.
fn refine(sorted: &[Q]) -> Vec<Q> {
    if sorted.is_empty() {
        return vec![Q::zero()];
    }
    let mut out = Vec::with_capacity(2 * sorted.len() + 1);
    out.push(sorted[0] - Q::one());
    for (i, &v) in sorted.iter().enumerate() {
        out.push(v);
        if let Some(&w) = sorted.get(i + 1) {
            out.push((v + w) / q(2));
        }
    }
    out.push(sorted[sorted.len() - 1] + Q::one());
    out
}

/// Code generated by open intervals.
pub fn code_of_intervals(regions: &[(NeuronId, Q, Q)]) -> NeuralCode {
    let mut ends: Vec<Q> = regions.iter().flat_map(|&(_, p, r)| [p, r]).collect();
    ends.sort();
    ends.dedup();
    let mut words = BTreeSet::new();
    for x in refine(&ends) {
        let mut w = Codeword::EMPTY;
        for &(i, p, r) in regions {
            if p < x && x < r {
                w.insert(i);
            }
        }
        words.insert(w);
    }
    NeuralCode::new(words)
}

/// Code generated by open convex polygons.
///
/// Every face of the arrangement of edge-supporting lines lies entirely
/// inside or outside each polygon, so one point per face suffices. Points are
/// taken on a vertical sweep: at every critical `x` and in every open slab
/// between them, at every line crossing and in every gap between crossings.
pub fn code_of_polygons(regions: &[(NeuronId, Vec<Point>)]) -> NeuralCode {
    let mut lines: Vec<Line> = Vec::new();
    for (_, poly) in regions {
        for i in 0..poly.len() {
            lines.push(Line::through(poly[i], poly[(i + 1) % poly.len()]));
        }
    }
    lines.sort();
    lines.dedup();
    let mut xs: Vec<Q> = regions.iter().flat_map(|(_, p)| p.iter().map(|v| v.x)).collect();
    for (i, l) in lines.iter().enumerate() {
        if l.is_vertical() {
            xs.push(l.c);
        }
        for o in &lines[i + 1..] {
            if let Some(x) = l.meet_x(o) {
                xs.push(x);
            }
        }
    }
    xs.sort();
    xs.dedup();
    let sloped: Vec<&Line> = lines.iter().filter(|l| !l.is_vertical()).collect();
    let mut words = BTreeSet::new();
    for x in refine(&xs) {
        let slices: Vec<(NeuronId, Option<(Q, Q)>)> =
            regions.iter().map(|(i, p)| (*i, vertical_slice(p, x))).collect();
        let mut ys: Vec<Q> = sloped.iter().map(|l| l.y_at(x)).collect();
        ys.sort();
        ys.dedup();
        for y in refine(&ys) {
            let mut w = Codeword::EMPTY;
            for &(i, s) in &slices {
                if let Some((lo, hi)) = s {
                    if lo < y && y < hi {
                        w.insert(i);
                    }
                }
            }
            words.insert(w);
        }
    }
    NeuralCode::new(words)
}
