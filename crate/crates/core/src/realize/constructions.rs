//! Cell layouts for the covered families.
//!
//! A layout is a list of cells, each labeled by the codeword it should carry.
//! The region of a neuron is the convex hull of the cells whose label
//! contains it; the layouts are arranged so that hull equals the union.

use crate::code::Codeword;
use crate::topology::path_of_facets;

use super::geometry::{qf, Point, Q};
use super::ConstructionTag;

#[derive(Clone, Debug)]
pub(crate) enum Cell {
    Interval(Q, Q),
    Polygon(Vec<Point>),
}

#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub dimension: u8,
    pub cells: Vec<(Codeword, Cell)>,
}

impl Layout {
    /// Unit intervals laid end to end.
    pub fn chain(labels: &[Codeword]) -> Layout {
        let cells = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, Cell::Interval(Q::from_integer(i as i128), Q::from_integer(i as i128 + 1))))
            .collect();
        Layout { dimension: 1, cells }
    }

    fn planar(cells: Vec<(Codeword, Vec<Point>)>) -> Layout {
        Layout { dimension: 2, cells: cells.into_iter().map(|(l, p)| (l, Cell::Polygon(p))).collect() }
    }

    /// Horizontal extent of the layout.
    pub fn x_range(&self) -> (Q, Q) {
        let xs: Vec<Q> = self
            .cells
            .iter()
            .flat_map(|(_, c)| match c {
                Cell::Interval(p, r) => vec![*p, *r],
                Cell::Polygon(ps) => ps.iter().map(|p| p.x).collect(),
            })
            .collect();
        let lo = xs.iter().copied().min().unwrap_or_default();
        let hi = xs.iter().copied().max().unwrap_or_default();
        (lo, hi)
    }

    /// Turns intervals into unit-height rectangles.
    pub fn lifted(&self) -> Layout {
        let cells = self
            .cells
            .iter()
            .map(|(l, c)| {
                let c = match c {
                    Cell::Interval(p, r) => Cell::Polygon(rect(*p, Q::from_integer(0), *r, Q::from_integer(1))),
                    other => other.clone(),
                };
                (*l, c)
            })
            .collect();
        Layout { dimension: 2, cells }
    }

    pub fn shifted(&self, dx: Q) -> Layout {
        let cells = self
            .cells
            .iter()
            .map(|(l, c)| {
                let c = match c {
                    Cell::Interval(p, r) => Cell::Interval(p + dx, r + dx),
                    Cell::Polygon(ps) => Cell::Polygon(ps.iter().map(|p| Point::new(p.x + dx, p.y)).collect()),
                };
                (*l, c)
            })
            .collect();
        Layout { dimension: self.dimension, cells }
    }
}

fn pt(x: i128, y: i128) -> Point {
    Point::int(x, y)
}

fn rect(x0: Q, y0: Q, x1: Q, y1: Q) -> Vec<Point> {
    vec![Point::new(x0, y0), Point::new(x1, y0), Point::new(x1, y1), Point::new(x0, y1)]
}

fn irect(x0: i128, y0: i128, x1: i128, y1: i128) -> Vec<Point> {
    vec![pt(x0, y0), pt(x1, y0), pt(x1, y1), pt(x0, y1)]
}

/// Facets in path order `(F_a, F_b, F_c)`, if the three satisfy the
/// Path-of-Facets condition.
fn path_order(f: [Codeword; 3]) -> Option<(usize, usize, usize)> {
    let w = path_of_facets(f[0], f[1], f[2]).ok()??;
    Some((w.a - 1, w.b - 1, w.c - 1))
}

/// Five-interval chain for three facets with a path.
pub(crate) fn pof_chain(f: [Codeword; 3]) -> Option<Layout> {
    let (a, b, c) = path_order(f)?;
    let (fa, fb, fc) = (f[a], f[b], f[c]);
    Some(Layout::chain(&[fa, fa.intersection(fb), fb, fb.intersection(fc), fc]))
}

/// `f` is indexed by reference label minus one; the nerve is
/// `{1,2,3}` plus the edge `{2,4}`.
pub(crate) fn l18(f: [Codeword; 4]) -> Option<(Layout, ConstructionTag)> {
    let (a, b, c) = path_order([f[0], f[1], f[2]])?;
    let (fa, fb, fc, f2, f4) = (f[a], f[b], f[c], f[1], f[3]);
    let ab = fa.intersection(fb);
    let bc = fb.intersection(fc);
    let f24 = f2.intersection(f4);
    if b == 1 {
        // the pendant hangs below the middle cell
        let cells = vec![
            (fa, irect(0, 0, 1, 1)),
            (ab, irect(1, 0, 3, 1)),
            (fb, irect(3, 0, 4, 1)),
            (bc, irect(4, 0, 6, 1)),
            (fc, irect(6, 0, 7, 1)),
            (f24, irect(3, -1, 4, 0)),
            (f4, irect(3, -2, 4, -1)),
        ];
        Some((Layout::planar(cells), ConstructionTag::L18Case2))
    } else if a == 1 {
        Some((Layout::chain(&[f4, f24, fa, ab, fb, bc, fc]), ConstructionTag::L18Case1))
    } else {
        Some((Layout::chain(&[fa, ab, fb, bc, fc, f24, f4]), ConstructionTag::L18Case3))
    }
}

/// `f` is indexed by reference label minus one; the nerve is
/// `{1,2,3}` plus the edges `{2,4}` and `{3,4}`.
pub(crate) fn l21(f: [Codeword; 4]) -> Option<(Layout, ConstructionTag)> {
    let (_, b, _) = path_order([f[0], f[1], f[2]])?;
    match b {
        0 => Some((l21_middle_one(f), ConstructionTag::L21CaseB1)),
        1 => Some((l21_middle_two(f), ConstructionTag::L21CaseB2)),
        _ => Some((l21_middle_two([f[0], f[2], f[1], f[3]]), ConstructionTag::L21CaseB3)),
    }
}

/// Path F1 - F2 - F3 with F4 touching F2 and F3: the chain wraps around a
/// point where F4 sits on top.
fn l21_middle_two(f: [Codeword; 4]) -> Layout {
    let [f1, f2, f3, f4] = f;
    Layout::planar(vec![
        (f1, vec![pt(-2, 0), pt(0, 1), pt(-2, 1)]),
        (f1.intersection(f2), vec![pt(-2, 0), pt(0, 0), pt(0, 1)]),
        (f2, vec![pt(0, 0), pt(2, 1), pt(0, 1)]),
        (f2.intersection(f3), vec![pt(0, 0), pt(4, 0), pt(2, 1)]),
        (f3, vec![pt(4, 0), pt(4, 1), pt(2, 1)]),
        (f3.intersection(f4), vec![pt(4, 1), pt(4, 2), pt(2, 1)]),
        (f4, vec![pt(0, 2), pt(2, 1), pt(4, 2)]),
        (f2.intersection(f4), vec![pt(0, 1), pt(2, 1), pt(0, 2)]),
    ])
}

/// Path F2 - F1 - F3 with F4 bridging the two ends above the chain.
fn l21_middle_one(f: [Codeword; 4]) -> Layout {
    let [f1, f2, f3, f4] = f;
    Layout::planar(vec![
        (f2, vec![pt(0, 0), pt(4, 0), pt(12, 4), pt(4, 4)]),
        (f1.intersection(f2), vec![pt(4, 0), pt(12, 0), pt(12, 4)]),
        (f1, irect(12, 0, 16, 4)),
        (f1.intersection(f3), vec![pt(16, 0), pt(24, 0), pt(16, 4)]),
        (f3, vec![pt(24, 0), pt(28, 0), pt(24, 4), pt(16, 4)]),
        (f2.intersection(f4), vec![pt(4, 4), pt(12, 4), pt(14, 5), pt(8, 8)]),
        (f4, vec![pt(8, 8), pt(14, 5), pt(20, 8)]),
        (f3.intersection(f4), vec![pt(16, 4), pt(24, 4), pt(20, 8), pt(14, 5)]),
    ])
}

/// `f` is indexed by reference label minus one; the nerve is the two
/// triangles `{1,2,3}` and `{2,3,4}`.
pub(crate) fn l22(f: [Codeword; 4]) -> Option<(Layout, ConstructionTag)> {
    let path1 = path_order([f[0], f[1], f[2]]).is_some();
    let path4 = path_order([f[1], f[2], f[3]]).is_some();
    match (path1, path4) {
        (true, true) => Some(l22_case2(f)),
        (false, true) => l22_case3(f),
        (true, false) => {
            let (layout, tag) = l22_case3([f[3], f[1], f[2], f[0]])?;
            let _ = tag;
            Some((layout, ConstructionTag::L22Case4))
        }
        (false, false) => None,
    }
}

fn l22_case2(f: [Codeword; 4]) -> (Layout, ConstructionTag) {
    // make F3 the middle of the first path
    let f = match path_order([f[0], f[1], f[2]]) {
        Some((_, 1, _)) => [f[0], f[2], f[1], f[3]],
        _ => f,
    };
    let [f1, f2, f3, f4] = f;
    let (_, b4, _) = path_order([f2, f3, f4]).expect("checked by caller");
    if b4 == 0 {
        let labels = [f1, f1.intersection(f3), f3, f2.intersection(f3), f2, f2.intersection(f4), f4];
        return (Layout::chain(&labels), ConstructionTag::L22Case2a);
    }
    let h = |n| qf(n, 2);
    let cells = vec![
        (f1, irect(0, 0, 1, 1)),
        (f1.intersection(f3), irect(1, 0, 3, 1)),
        (f3, irect(3, 0, 4, 1)),
        (f2.intersection(f3), vec![pt(4, 0), Point::new(h(9), h(1)), Point::new(h(9), h(2)), pt(4, 1)]),
        (f2, vec![Point::new(h(9), h(1)), pt(5, 1), Point::new(h(9), h(2))]),
        (f3.intersection(f4), vec![Point::new(h(6), h(-1)), Point::new(h(7), h(-1)), pt(4, 0), pt(3, 0)]),
        (f4, vec![pt(3, -1), Point::new(h(7), h(-1)), Point::new(h(6), h(-1))]),
    ];
    (Layout::planar(cells), ConstructionTag::L22Case2b)
}

/// First triangle without a path, second with one.
fn l22_case3(f: [Codeword; 4]) -> Option<(Layout, ConstructionTag)> {
    // make F2 the middle of the second path
    let f = match path_order([f[1], f[2], f[3]])? {
        (_, 1, _) => [f[0], f[2], f[1], f[3]],
        _ => f,
    };
    let [f1, f2, f3, f4] = f;
    let t1 = f1.intersection(f2).intersection(f3);
    let only12 = !f1.intersection(f2).difference(f3).is_empty();
    let only13 = !f1.intersection(f3).difference(f2).is_empty();
    let f23 = f2.intersection(f3);
    let f24 = f2.intersection(f4);
    if only12 && only13 {
        let s = |n| qf(n, 7);
        let cells = vec![
            (f3, vec![pt(0, 0), pt(2, 0), pt(3, 2), pt(0, 2)]),
            (f23, vec![pt(2, 0), pt(6, 0), pt(5, 2), pt(3, 2)]),
            (f2, vec![pt(6, 0), pt(8, 0), pt(8, 2), pt(5, 2)]),
            (f24, irect(8, 0, 10, 2)),
            (f4, irect(10, 0, 12, 2)),
            (t1, vec![pt(3, 2), pt(5, 2), pt(4, 4)]),
            (f1.intersection(f3), vec![pt(0, 2), pt(3, 2), pt(4, 4), Point::new(s(20), s(44))]),
            (f1.intersection(f2), vec![pt(5, 2), pt(8, 2), Point::new(s(36), s(44)), pt(4, 4)]),
            (f1, vec![pt(4, 4), Point::new(s(36), s(44)), pt(4, 8), Point::new(s(20), s(44))]),
        ];
        Some((Layout::planar(cells), ConstructionTag::L22Case3a))
    } else if !only12 && !only13 {
        let h = |n| qf(n, 2);
        let row = |x0: i128, x1: i128| rect(Q::from_integer(x0), h(-3), Q::from_integer(x1), h(-1));
        let cells = vec![
            (f3, row(3, 4)),
            (f23, row(4, 6)),
            (f2, row(6, 7)),
            (f24, row(7, 9)),
            (f4, row(9, 10)),
            (t1, rect(Q::from_integer(3), h(-5), Q::from_integer(7), h(-3))),
            (f1, rect(Q::from_integer(3), h(-7), Q::from_integer(7), h(-5))),
        ];
        Some((Layout::planar(cells), ConstructionTag::L22Case3b))
    } else {
        None
    }
}
