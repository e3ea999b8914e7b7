//! Diagrams of closed polygonal curves in the plane.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::curve::{Component, CrossingId, Passage, Ribbon, Sign, Slot};
use crate::error::{Error, Result};

type Pt = (i64, i64);

fn cross(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

/// Exact fraction with positive denominator.
#[derive(Clone, Copy, Debug)]
struct Frac(i128, i128);

impl Frac {
    fn new(n: i128, d: i128) -> Frac {
        if d < 0 {
            Frac(-n, -d)
        } else {
            Frac(n, d)
        }
    }
}

impl PartialEq for Frac {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Frac {}

impl PartialOrd for Frac {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Frac {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.0 * o.1).cmp(&(o.0 * self.1))
    }
}

struct Seg {
    comp: usize,
    index: usize,
    p: (i128, i128),
    r: (i128, i128),
}

/// Ribbon structure of closed polygons in the plane, components named `c0`,
/// `c1`, ... Crossings are numbered in order of first visit, the first visit
/// using slot `a`. Polygons must be in general position: no shared vertices,
/// no vertex on another edge, no overlapping edges, no triple points.
pub fn planar_diagram(polygons: &[Vec<Pt>]) -> Result<Ribbon> {
    let degenerate = |what: &str| Error::Precondition(format!("polygons not in general position: {what}"));
    let mut segs = Vec::new();
    for (ci, poly) in polygons.iter().enumerate() {
        if poly.len() < 2 {
            return Err(Error::Precondition(format!("polygon {ci} has fewer than 2 vertices")));
        }
        for k in 0..poly.len() {
            let a = poly[k];
            let b = poly[(k + 1) % poly.len()];
            let r = ((b.0 - a.0) as i128, (b.1 - a.1) as i128);
            if r == (0, 0) {
                return Err(degenerate("repeated vertex"));
            }
            segs.push(Seg {
                comp: ci,
                index: k,
                p: (a.0 as i128, a.1 as i128),
                r,
            });
        }
    }

    // (segment, parameter, crossing)
    let mut visits: Vec<(usize, Frac, usize)> = Vec::new();
    let mut points: Vec<(Frac, Frac)> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (s, t) = (&segs[i], &segs[j]);
            let n = polygons[s.comp].len();
            let adjacent = s.comp == t.comp && ((s.index + 1) % n == t.index || (t.index + 1) % n == s.index);
            let denom = cross(s.r, t.r);
            let qp = (t.p.0 - s.p.0, t.p.1 - s.p.1);
            if denom == 0 {
                // parallel: collinear overlap is degenerate
                if cross(qp, s.r) == 0 {
                    let len = s.r.0 * s.r.0 + s.r.1 * s.r.1;
                    let dot = |v: (i128, i128)| v.0 * s.r.0 + v.1 * s.r.1;
                    let (a, b) = (dot(qp), dot((qp.0 + t.r.0, qp.1 + t.r.1)));
                    let (lo, hi) = (a.min(b), a.max(b));
                    if hi > 0 && lo < len && !(adjacent && (lo == len || hi == 0)) {
                        return Err(degenerate("overlapping edges"));
                    }
                    if !adjacent && (hi == 0 || lo == len) {
                        return Err(degenerate("touching edges"));
                    }
                }
                continue;
            }
            if adjacent && n > 2 {
                continue;
            }
            let tn = cross(qp, t.r);
            let un = cross(qp, s.r);
            let (tf, uf) = (Frac::new(tn, denom), Frac::new(un, denom));
            let zero = Frac(0, 1);
            let one = Frac(1, 1);
            if tf < zero || tf > one || uf < zero || uf > one {
                continue;
            }
            if tf == zero || tf == one || uf == zero || uf == one {
                if adjacent {
                    continue;
                }
                return Err(degenerate("vertex on an edge"));
            }
            let x = Frac::new(s.p.0 * tf.1 + s.r.0 * tf.0, tf.1);
            let y = Frac::new(s.p.1 * tf.1 + s.r.1 * tf.0, tf.1);
            if points.iter().any(|&(px, py)| px == x && py == y) {
                return Err(degenerate("triple point"));
            }
            points.push((x, y));
            let c = pairs.len();
            pairs.push((i, j));
            visits.push((i, tf, c));
            visits.push((j, uf, c));
        }
    }
    visits.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut label: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut words: Vec<Vec<Passage>> = vec![Vec::new(); polygons.len()];
    let mut signs = Vec::new();
    for &(seg, _, c) in &visits {
        let comp = segs[seg].comp;
        match label.get(&c) {
            None => {
                let id = label.len() + 1;
                label.insert(c, (id, seg));
                words[comp].push(Passage::new(id, Slot::A));
            }
            Some(&(id, first)) => {
                let sign = if cross(segs[first].r, segs[seg].r) > 0 {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                signs.push((CrossingId::from(id), sign));
                words[comp].push(Passage::new(id, Slot::B));
            }
        }
    }
    let components = words
        .into_iter()
        .enumerate()
        .map(|(i, passages)| Component {
            name: format!("c{i}"),
            passages,
        })
        .collect();
    Ribbon::new(signs, components)
}
