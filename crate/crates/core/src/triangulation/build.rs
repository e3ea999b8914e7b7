//! Ideal triangulation of the complement of a lift with its face fibers
//! drilled.
//!
//! Every edge of the 4-valent diagram graph carries a vertical annulus, the
//! part of the torus over that edge. After collapsing the arc of the link in
//! the annulus, each annulus is two ideal triangles; each of the two sides of
//! the annulus thickens them into prisms whose top and bottom are collapsed
//! to the cusp of the adjacent face, giving four tetrahedra per annulus.
//!
//! Tetrahedron `4a + 2s + h` sits over annulus `a`, side `s` (0 left, 1 right
//! of the edge) and half `h` (0 lower, 1 upper). Vertex roles: 0 is the face
//! cusp, 1 the collapsed link arc, 2 and 3 the fiber vertices at the tail and
//! head crossings.

use std::collections::HashMap;

use super::{require_valid, CuspLabel, Gluing, IdealTriangulation, Perm};
use crate::curve::{filling_check, Decoration, EndRef, FaceKey};
use crate::error::{Error, Result};
use crate::lift::LiftDiagram;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum End {
    Tail,
    Head,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum FiberEdge {
    Low,
    High,
}

struct Builder<'a> {
    lift: &'a LiftDiagram,
    end_of: HashMap<EndRef, (usize, End)>,
}

impl Builder<'_> {
    fn edge(&self, a: usize) -> &crate::curve::Edge {
        &self.lift.base().ribbon().edges()[a]
    }

    fn end_ref(&self, a: usize, end: End) -> EndRef {
        match end {
            End::Tail => self.edge(a).tail,
            End::Head => self.edge(a).head,
        }
    }

    /// Quadrant on `side` of annulus `a` at `end`.
    fn side_quadrant(&self, a: usize, end: End, side: usize) -> (usize, u8) {
        let r = self.end_ref(a, end);
        let q = match (end, side) {
            (End::Tail, 0) | (End::Head, 1) => r.end,
            _ => (r.end + 3) % 4,
        };
        (r.crossing, q)
    }

    /// Whether the strand of annulus `a` at `end` is the lower one.
    fn is_under(&self, a: usize, end: End) -> bool {
        let e = self.edge(a);
        let (x, slot) = match end {
            End::Tail => (e.tail.crossing, e.tail_slot),
            End::Head => (e.head.crossing, e.head_slot),
        };
        let id = &self.lift.base().crossings()[x].0;
        !self.lift.is_over(id, slot)
    }

    /// Half of annulus `a` containing fiber edge `fe` at `end`.
    fn half_of(&self, a: usize, end: End, fe: FiberEdge) -> usize {
        usize::from((fe == FiberEdge::Low) != self.is_under(a, end))
    }
}

fn tet(a: usize, side: usize, half: usize) -> usize {
    4 * a + 2 * side + half
}

/// Builds the `8c`-tetrahedron triangulation of the drilled complement.
pub fn build_drilled_complement(l: &LiftDiagram) -> Result<IdealTriangulation> {
    let d = l.base();
    if d.num_crossings() == 0 {
        return Err(Error::Precondition("diagram has no crossings".into()));
    }
    if let Some((name, _)) = l.winding().iter().find(|(_, &w)| w != 0) {
        return Err(Error::UnsupportedWinding(name.clone()));
    }
    let report = filling_check(d);
    if !report.is_filling || !report.is_taut {
        return Err(Error::Precondition("diagram must be filling and taut".into()));
    }

    let ribbon = d.ribbon();
    let edges = ribbon.edges();
    let mut end_of = HashMap::new();
    for (a, e) in edges.iter().enumerate() {
        end_of.insert(e.tail, (a, End::Tail));
        end_of.insert(e.head, (a, End::Head));
    }
    let b = Builder { lift: l, end_of };

    let n = 4 * edges.len();
    let mut gl: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; n];
    for a in 0..edges.len() {
        for side in 0..2 {
            for half in 0..2 {
                let t = tet(a, side, half);
                gl[t][0] = Some(Gluing { tet: tet(a, 1 - side, half), perm: Perm::IDENTITY });
                gl[t][1] = Some(Gluing { tet: tet(a, side, 1 - half), perm: Perm::IDENTITY });
                for (end, face) in [(End::Tail, 3u8), (End::Head, 2u8)] {
                    let (x, q) = b.side_quadrant(a, end, side);
                    let fe = if b.half_of(a, end, FiberEdge::Low) == half {
                        FiberEdge::Low
                    } else {
                        FiberEdge::High
                    };
                    // the other strand end bounding quadrant q
                    let mine = b.end_ref(a, end).end;
                    let other = if mine == q { (q + 1) % 4 } else { q };
                    let (a2, end2) = b.end_of[&EndRef { crossing: x, end: other }];
                    let side2 = (0..2)
                        .find(|&s| b.side_quadrant(a2, end2, s) == (x, q))
                        .expect("adjacent annulus faces the quadrant");
                    let face2 = if end2 == End::Tail { 3 } else { 2 };
                    let fiber = 5 - face; // tail: 2, head: 3
                    let fiber2 = 5 - face2;
                    let mut p = [0u8; 4];
                    p[0] = 0;
                    p[1] = fiber2;
                    p[fiber as usize] = 1;
                    p[face as usize] = face2;
                    gl[t][face as usize] = Some(Gluing {
                        tet: tet(a2, side2, b.half_of(a2, end2, fe)),
                        perm: Perm(p),
                    });
                }
            }
        }
    }

    let gl = orient(gl)?;

    let faces = ribbon.face_corners();
    let decorations = d.decorations();
    let mut face_of: HashMap<(usize, u8), usize> = HashMap::new();
    for (fi, f) in ribbon.raw_faces().iter().enumerate() {
        for &c in f {
            face_of.insert(c, fi);
        }
    }
    let face_label = |fi: usize| -> CuspLabel {
        let key: FaceKey = faces[fi].0.clone();
        match decorations[&key] {
            Decoration::Disk => CuspLabel::Disk(key),
            Decoration::Puncture => CuspLabel::Puncture(key),
            Decoration::Cone(p) => CuspLabel::Cone(p, key),
        }
    };

    let mut tri = IdealTriangulation { gluings: gl, cusps: Vec::new() };
    let (class, count) = tri.vertex_classes();
    let mut labels: Vec<Option<CuspLabel>> = vec![None; count];
    for a in 0..edges.len() {
        let comp = &d.components()[edges[a].component].name;
        for side in 0..2 {
            let apex = face_label(face_of[&b.side_quadrant(a, End::Tail, side)]);
            let arc = CuspLabel::Component(comp.clone());
            for half in 0..2 {
                let t = tet(a, side, half);
                for (v, label) in [(0, &apex), (1, &arc)] {
                    let slot = &mut labels[class[4 * t + v]];
                    match slot {
                        None => *slot = Some(label.clone()),
                        Some(old) if old != label => {
                            return Err(Error::InvalidTriangulation(format!(
                                "cusps {old} and {label} were identified"
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    tri.cusps = labels
        .into_iter()
        .map(|l| l.ok_or_else(|| Error::InvalidTriangulation("unlabelled cusp".into())))
        .collect::<Result<_>>()?;
    require_valid(&tri)?;
    Ok(tri)
}

/// Relabels tetrahedra (swapping vertices 2 and 3 where needed) so that every
/// gluing reverses orientation.
fn orient(gl: Vec<[Option<Gluing>; 4]>) -> Result<Vec<[Option<Gluing>; 4]>> {
    let n = gl.len();
    let mut flip: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if flip[root].is_some() {
            continue;
        }
        flip[root] = Some(false);
        let mut stack = vec![root];
        while let Some(t) = stack.pop() {
            for g in gl[t].iter().flatten() {
                let want = flip[t].unwrap() ^ !g.perm.is_odd();
                match flip[g.tet] {
                    None => {
                        flip[g.tet] = Some(want);
                        stack.push(g.tet);
                    }
                    Some(f) if f != want => {
                        return Err(Error::InvalidTriangulation("glued complex is not orientable".into()))
                    }
                    Some(_) => {}
                }
            }
        }
    }
    const SWAP: Perm = Perm([0, 1, 3, 2]);
    let r = |t: usize| if flip[t] == Some(true) { SWAP } else { Perm::IDENTITY };
    let mut out = vec![[None; 4]; n];
    for t in 0..n {
        for f in 0..4 {
            let old_face = r(t).apply(f);
            if let Some(g) = gl[t][old_face] {
                out[t][f] = Some(Gluing {
                    tet: g.tet,
                    perm: r(g.tet).compose(&g.perm).compose(&r(t)),
                });
            }
        }
    }
    Ok(out)
}
