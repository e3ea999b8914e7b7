//! The Dehn-twist family on the once-punctured torus.
//!
//! The torus is the unit square with opposite sides identified; `s` is the
//! horizontal circle `y = 0`. A curve transverse to `s` is a cyclic list of
//! straight segments, segment `k` running from `(x_k, 0)` to
//! `(x_k + d_k, 1)`. Twisting along `s` adds 1 to a displacement `d_k`.
//! Member `n` of the family has displacements `-1/2` and `1/2 + 2n`: the
//! second arc is twisted `2n` times.

use std::collections::{BTreeMap, HashMap};

use num_rational::Rational64;

use super::{attach_lift, make_alternating, LiftDiagram};
use crate::bounds::{Arc, Pants, PantsArcs, Word};
use crate::curve::{Component, CrossingId, CurveDiagram, Decoration, Passage, Ribbon, Sign, Slot};
use crate::error::{Error, Result};

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

/// Single-component diagram `g` of the straight-segment curve starting at
/// `(start, 0)` with the given displacements. Crossings are numbered in order
/// of first visit; the first visit uses slot `a`.
pub fn torus_strip_curve(start: Rational64, displacements: &[Rational64]) -> Result<Ribbon> {
    if displacements.is_empty() {
        return Err(Error::Precondition("no segments".into()));
    }
    let mut xs = vec![frac(start)];
    for d in &displacements[..displacements.len() - 1] {
        xs.push(frac(*xs.last().unwrap() + d));
    }
    let end = *xs.last().unwrap() + *displacements.last().unwrap();
    if !(end - xs[0]).is_integer() {
        return Err(Error::Precondition("segments do not close up".into()));
    }
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] == xs[j] {
                return Err(Error::Precondition("segments share an endpoint on s".into()));
            }
        }
    }

    // crossings (height t, segment i, segment j)
    let mut crossings: Vec<(Rational64, usize, usize)> = Vec::new();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let (xi, di, xj, dj) = (xs[i], displacements[i], xs[j], displacements[j]);
            if di == dj {
                continue;
            }
            // x_i + d_i t = x_j + d_j t + m for integer m, 0 < t < 1
            let (a, b) = (xi - xj, xi - xj + di - dj);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            for m in lo.floor().to_integer()..=hi.ceil().to_integer() {
                let t = (Rational64::from_integer(m) - xi + xj) / (di - dj);
                if t > r(0, 1) && t < r(1, 1) {
                    crossings.push((t, i, j));
                }
            }
        }
    }
    let mut points: HashMap<(Rational64, Rational64), usize> = HashMap::new();
    for &(t, i, _) in &crossings {
        let x = frac(xs[i] + displacements[i] * t);
        *points.entry((t, x)).or_default() += 1;
    }
    if points.values().any(|&k| k > 1) {
        return Err(Error::Precondition("three segments meet in a point".into()));
    }

    let mut visits: Vec<(usize, Rational64, usize)> = Vec::new();
    for (c, &(t, i, j)) in crossings.iter().enumerate() {
        visits.push((i, t, c));
        visits.push((j, t, c));
    }
    visits.sort();
    let mut label: HashMap<usize, usize> = HashMap::new();
    let mut first_segment: HashMap<usize, usize> = HashMap::new();
    let mut signs = Vec::new();
    let mut passages = Vec::new();
    for &(seg, _, c) in &visits {
        match label.get(&c) {
            None => {
                let id = label.len() + 1;
                label.insert(c, id);
                first_segment.insert(c, seg);
                passages.push(Passage::new(id, Slot::A));
            }
            Some(&id) => {
                // direction (d, 1); sign of cross(dir_a, dir_b) = d_a - d_b
                let da = displacements[first_segment[&c]];
                let sign = if da > displacements[seg] { Sign::Positive } else { Sign::Negative };
                signs.push((CrossingId::from(id), sign));
                passages.push(Passage::new(id, Slot::B));
            }
        }
    }
    Ribbon::new(
        signs,
        vec![Component {
            name: "g".into(),
            passages,
        }],
    )
}

fn family_displacements(n: u32) -> [Rational64; 2] {
    [r(-1, 2), r(1, 2) + Rational64::from_integer(2 * n as i64)]
}

/// Member `n >= 1` of the twist family as an alternating lift with zero
/// winding. The single bigon carries the puncture.
pub fn gen_twist_family(n: u32) -> Result<LiftDiagram> {
    if n < 1 {
        return Err(Error::Precondition("twist family starts at n = 1".into()));
    }
    let ribbon = torus_strip_curve(r(1, 4), &family_displacements(n))?;
    let d = CurveDiagram::decorate(ribbon, |_, corners| {
        if corners.len() == 2 {
            Decoration::Puncture
        } else {
            Decoration::Disk
        }
    })?;
    let over: BTreeMap<CrossingId, Slot> = d.crossings().iter().map(|(id, _)| (id.clone(), Slot::A)).collect();
    let l = attach_lift(d, over, BTreeMap::new())?;
    make_alternating(&l).ok_or_else(|| Error::Precondition("twist family member is not alternating".into()))
}

/// Arcs of a family member in the pants obtained by cutting along `s`:
/// boundary 1 is the lower copy of `s`, 2 the upper copy, 3 the puncture.
/// A segment with displacement `d` slides `floor(d)` times around
/// boundary 1.
pub fn export_pants_arcs(member: &LiftDiagram) -> Result<PantsArcs> {
    let c = member.base().num_crossings();
    let not_member = || Error::Precondition("lift is not a twist family member".into());
    if c < 3 || c.is_multiple_of(2) {
        return Err(not_member());
    }
    let n = ((c - 1) / 2) as u32;
    if gen_twist_family(n)? != *member {
        return Err(not_member());
    }
    let arcs = family_displacements(n)
        .iter()
        .map(|d| Arc {
            i: 1,
            j: 2,
            word: Word::parse("A").expect("letter").pow(d.floor().to_integer()),
        })
        .collect();
    Ok(PantsArcs {
        pants: vec![Pants {
            name: "s".into(),
            arcs,
        }],
    })
}
