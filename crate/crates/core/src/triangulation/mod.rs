//! Oriented ideal triangulations: data model, validation, text format and
//! the builder for drilled link complements.

use std::fmt;

use serde::Serialize;

use crate::curve::FaceKey;
use crate::error::{Error, Result};

mod build;
pub mod fixtures;
mod format;

pub use build::build_drilled_complement;
pub use format::{parse_tri, write_tri};

/// Vertex bijection of a face gluing; `perm[v]` is the image of vertex `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Perm(pub [u8; 4]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3]);

    pub fn is_bijection(&self) -> bool {
        let mut seen = [false; 4];
        for &v in &self.0 {
            if v > 3 || seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        true
    }

    pub fn is_odd(&self) -> bool {
        let p = &self.0;
        let inversions = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        inversions % 2 == 1
    }

    pub fn inverse(&self) -> Perm {
        let mut q = [0u8; 4];
        for (i, &v) in self.0.iter().enumerate() {
            q[v as usize] = i as u8;
        }
        Perm(q)
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm([0, 1, 2, 3].map(|v| self.0[other.0[v] as usize]))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Face `f` of a tetrahedron is glued to face `perm[f]` of `tet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "String")]
pub enum CuspLabel {
    Component(String),
    Disk(FaceKey),
    Cone(u32, FaceKey),
    Puncture(FaceKey),
}

impl fmt::Display for CuspLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CuspLabel::Component(n) => write!(f, "component:{n}"),
            CuspLabel::Disk(k) => write!(f, "disk:{k}"),
            CuspLabel::Cone(p, k) => write!(f, "cone:{p}:{k}"),
            CuspLabel::Puncture(k) => write!(f, "puncture:{k}"),
        }
    }
}

impl From<CuspLabel> for String {
    fn from(l: CuspLabel) -> String {
        l.to_string()
    }
}

impl CuspLabel {
    pub fn parse(s: &str) -> Option<CuspLabel> {
        let (kind, rest) = s.split_once(':')?;
        if rest.is_empty() {
            return None;
        }
        match kind {
            "component" => Some(CuspLabel::Component(rest.into())),
            "disk" => Some(CuspLabel::Disk(FaceKey(rest.into()))),
            "puncture" => Some(CuspLabel::Puncture(FaceKey(rest.into()))),
            "cone" => {
                let (p, key) = rest.split_once(':')?;
                let p = p.parse().ok().filter(|&p| p >= 2)?;
                (!key.is_empty()).then(|| CuspLabel::Cone(p, FaceKey(key.into())))
            }
            _ => None,
        }
    }
}

/// Tetrahedra with face gluings and labelled cusps. Gluings may be missing
/// while a triangulation is being assembled or after a truncated read;
/// [`validate`] reports them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealTriangulation {
    pub gluings: Vec<[Option<Gluing>; 4]>,
    pub cusps: Vec<CuspLabel>,
}

/// The 6 edges of a tetrahedron as vertex pairs.
pub const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub(crate) fn edge_index(u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    EDGES.iter().position(|&e| e == (u, v)).unwrap()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }

    /// Class index of every element, classes numbered by first appearance.
    fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.0.len();
        let mut id = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            out[x] = id[r];
        }
        (out, next)
    }
}

impl IdealTriangulation {
    pub fn num_tetrahedra(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.gluings[tet][face]
    }

    fn glued(&self) -> impl Iterator<Item = (usize, usize, Gluing)> + '_ {
        self.gluings
            .iter()
            .enumerate()
            .flat_map(|(t, g)| (0..4).filter_map(move |f| g[f].map(|g| (t, f, g))))
    }

    /// Cusp index of every tetrahedron vertex (`tet * 4 + v`), cusps numbered
    /// by first appearance.
    pub fn vertex_classes(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(4 * self.num_tetrahedra());
        for (t, f, g) in self.glued() {
            for v in (0..4).filter(|&v| v != f) {
                uf.union(4 * t + v, 4 * g.tet + g.perm.apply(v));
            }
        }
        uf.classes()
    }

    /// Edge class of every tetrahedron edge (`tet * 6 + e`, `e` indexing
    /// [`EDGES`]), plus whether some edge is identified with itself reversed.
    pub fn edge_classes(&self) -> (Vec<usize>, usize, bool) {
        let n = self.num_tetrahedra();
        // oriented edges: (t, e, dir)
        let mut uf = UnionFind::new(12 * n);
        let id = |t: usize, u: usize, v: usize| 12 * t + 2 * edge_index(u, v) + usize::from(u > v);
        for (t, f, g) in self.glued() {
            for &(u, v) in EDGES.iter().filter(|&&(u, v)| u != f && v != f) {
                let (pu, pv) = (g.perm.apply(u), g.perm.apply(v));
                uf.union(id(t, u, v), id(g.tet, pu, pv));
                uf.union(id(t, v, u), id(g.tet, pv, pu));
            }
        }
        let reversed = (0..6 * n).any(|k| uf.find(2 * k) == uf.find(2 * k + 1));
        let (oriented, _) = uf.classes();
        let mut uf2 = UnionFind::new(6 * n);
        let mut first = vec![usize::MAX; 12 * n];
        for k in 0..6 * n {
            for d in 0..2 {
                let c = oriented[2 * k + d];
                if first[c] == usize::MAX {
                    first[c] = k;
                } else {
                    uf2.union(first[c], k);
                }
            }
        }
        let (classes, count) = uf2.classes();
        (classes, count, reversed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub num_tetrahedra: usize,
    pub num_edges: usize,
    pub num_cusps: usize,
    pub cusp_link_genus: Vec<u32>,
    pub failures: Vec<String>,
}

/// Checks gluing structure, orientation, edge count, vertex links and edge
/// valences.
pub fn validate(t: &IdealTriangulation) -> ValidationReport {
    let n = t.num_tetrahedra();
    let mut failures = Vec::new();
    if n == 0 {
        failures.push("no tetrahedra".to_string());
    }
    for tet in 0..n {
        for f in 0..4 {
            let Some(g) = t.gluings[tet][f] else {
                failures.push(format!("unglued face {f} of tetrahedron {tet}"));
                continue;
            };
            if g.tet >= n || !g.perm.is_bijection() {
                failures.push(format!("bad gluing at tetrahedron {tet} face {f}"));
                continue;
            }
            let f2 = g.perm.apply(f);
            if g.tet == tet && f2 == f {
                failures.push(format!("face {f} of tetrahedron {tet} glued to itself"));
            }
            if !g.perm.is_odd() {
                failures.push(format!("orientation-preserving gluing at tetrahedron {tet} face {f}"));
            }
            let back = t.gluings[g.tet][f2];
            if back != Some(Gluing { tet, perm: g.perm.inverse() }) {
                failures.push(format!("gluing at tetrahedron {tet} face {f} is not involutive"));
            }
        }
    }
    if !failures.is_empty() {
        return ValidationReport {
            valid: false,
            num_tetrahedra: n,
            num_edges: 0,
            num_cusps: 0,
            cusp_link_genus: Vec::new(),
            failures,
        };
    }

    let (edge_class, num_edges, reversed) = t.edge_classes();
    if reversed {
        failures.push("an edge is identified with itself reversed".to_string());
    }
    if num_edges != n {
        failures.push(format!("edge count {num_edges} differs from tetrahedron count {n}"));
    }
    let mut valence = vec![0usize; num_edges];
    for &c in &edge_class {
        valence[c] += 1;
    }
    for (e, &v) in valence.iter().enumerate() {
        if v < 3 {
            failures.push(format!("edge class {e} has valence {v}"));
        }
    }

    // vertex links: corner triangles F, sides E = 3F/2, vertices = ends of
    // edge classes at the cusp
    let (vertex_class, num_cusps) = t.vertex_classes();
    let mut faces = vec![0i64; num_cusps];
    for &c in &vertex_class {
        faces[c] += 1;
    }
    let mut verts = vec![0i64; num_cusps];
    let mut seen = std::collections::HashSet::new();
    for tet in 0..n {
        for (e, &(u, v)) in EDGES.iter().enumerate() {
            let c = edge_class[6 * tet + e];
            if seen.insert(c) {
                verts[vertex_class[4 * tet + u]] += 1;
                verts[vertex_class[4 * tet + v]] += 1;
            }
        }
    }
    let mut genus = Vec::new();
    for c in 0..num_cusps {
        let chi = verts[c] - 3 * faces[c] / 2 + faces[c];
        if chi != 0 {
            failures.push(format!("vertex link of cusp {c} has Euler characteristic {chi}"));
        }
        genus.push(((2 - chi) / 2).max(0) as u32);
    }
    if t.cusps.len() != num_cusps {
        failures.push(format!(
            "{} cusp labels for {num_cusps} vertex classes",
            t.cusps.len()
        ));
    }

    ValidationReport {
        valid: failures.is_empty(),
        num_tetrahedra: n,
        num_edges,
        num_cusps,
        cusp_link_genus: genus,
        failures,
    }
}

pub(crate) fn require_valid(t: &IdealTriangulation) -> Result<()> {
    let r = validate(t);
    if r.valid {
        Ok(())
    } else {
        Err(Error::InvalidTriangulation(r.failures.join("; ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::{gen_twist_family, parse_lift};

    #[test]
    fn perm_parity_and_inverse() {
        assert!(Perm([0, 1, 3, 2]).is_odd());
        assert!(!Perm([1, 2, 0, 3]).is_odd());
        let p = Perm([2, 0, 3, 1]);
        assert_eq!(p.compose(&p.inverse()), Perm::IDENTITY);
        assert!(!Perm([0, 0, 1, 2]).is_bijection());
    }

    #[test]
    fn cusp_labels_round_trip() {
        for s in ["component:g", "disk:1.0-2.3", "cone:3:1.1", "puncture:1.3-3.1"] {
            assert_eq!(CuspLabel::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(CuspLabel::parse("cone:1:1.1"), None);
        assert_eq!(CuspLabel::parse("tube:x"), None);
        assert_eq!(CuspLabel::parse("disk:"), None);
    }

    #[test]
    fn fixtures_validate() {
        let r = validate(&fixtures::figure_eight());
        assert!(r.valid, "{:?}", r.failures);
        assert_eq!((r.num_tetrahedra, r.num_edges, r.num_cusps), (2, 2, 1));
        assert_eq!(r.cusp_link_genus, vec![1]);
        let r = validate(&fixtures::whitehead());
        assert!(r.valid, "{:?}", r.failures);
        assert_eq!((r.num_tetrahedra, r.num_edges, r.num_cusps), (4, 4, 2));
    }

    #[test]
    fn removed_gluing_is_reported() {
        let mut t = fixtures::figure_eight();
        t.gluings[0][2] = None;
        let r = validate(&t);
        assert!(!r.valid);
        assert!(r.failures.iter().any(|f| f.contains("unglued face")));
    }

    #[test]
    fn orientation_preserving_gluing_is_reported() {
        let mut t = fixtures::figure_eight();
        // swap two gluings so they stay involutive but become even
        t.gluings[0][0] = Some(Gluing { tet: 0, perm: Perm([1, 0, 2, 3]) });
        t.gluings[0][1] = Some(Gluing { tet: 0, perm: Perm([1, 0, 2, 3]) });
        let r = validate(&t);
        assert!(!r.valid);
    }

    #[test]
    fn twist_build_counts() {
        for n in 1..=3 {
            let l = gen_twist_family(n).unwrap();
            let t = build_drilled_complement(&l).unwrap();
            let c = l.base().num_crossings();
            assert_eq!(t.num_tetrahedra(), 8 * c);
            let r = validate(&t);
            assert!(r.valid, "{:?}", r.failures);
            assert_eq!(r.num_edges, 8 * c);
            // one component plus one cusp per face
            assert_eq!(r.num_cusps, 1 + c);
            assert!(r.cusp_link_genus.iter().all(|&g| g == 1));
            let mut expected: Vec<String> = vec!["component:g".into()];
            for f in l.base().faces() {
                expected.push(match f.decoration {
                    crate::curve::Decoration::Puncture => format!("puncture:{}", f.key),
                    _ => format!("disk:{}", f.key),
                });
            }
            let mut got: Vec<String> = t.cusps.iter().map(|c| c.to_string()).collect();
            expected.sort();
            got.sort();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn one_crossing_builds() {
        let text = "crossing 1 +\ncomponent A: 1a 1b\nface 1.0-1.2 puncture\nface 1.1 puncture\nface 1.3 puncture\nover 1 a\n";
        let t = build_drilled_complement(&parse_lift(text).unwrap()).unwrap();
        assert_eq!(t.num_tetrahedra(), 8);
        assert_eq!(t.cusps.len(), 4);
        let text = "crossing 1 +\ncomponent A: 1a\ncomponent B: 1b\nface 1.0-1.3-1.2-1.1 puncture\nover 1 a\n";
        let t = build_drilled_complement(&parse_lift(text).unwrap()).unwrap();
        assert_eq!(t.num_tetrahedra(), 8);
        assert_eq!(t.cusps.len(), 3);
        assert!(validate(&t).valid);
    }

    #[test]
    fn build_preconditions() {
        let text = "crossing 1 +\ncomponent A: 1a 1b\nface 1.0-1.2 puncture\nface 1.1 puncture\nface 1.3 puncture\nover 1 a\nwinding A 2\n";
        let err = build_drilled_complement(&parse_lift(text).unwrap()).unwrap_err();
        assert!(err.to_string().contains("unsupported winding (v1)"));
        let text = "crossing 1 +\ncomponent A: 1a 1b\nface 1.0-1.2 disk\nface 1.1 puncture\nface 1.3 puncture\nover 1 a\n";
        let err = build_drilled_complement(&parse_lift(text).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn tri_round_trip_and_errors() {
        let t = build_drilled_complement(&gen_twist_family(1).unwrap()).unwrap();
        let text = write_tri(&t);
        assert_eq!(parse_tri(&text).unwrap(), t);
        assert_eq!(write_tri(&parse_tri(&text).unwrap()), text);

        let truncated: String = fixtures::FIGURE_EIGHT_TRI.lines().take(6).map(|l| format!("{l}\n")).collect();
        let err = parse_tri(&truncated).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 7, .. }), "{err}");
        assert!(err.to_string().contains("unglued"));

        let bad = fixtures::FIGURE_EIGHT_TRI.replace("glue 1 0 0 0132", "glue 1 0 0 0123");
        assert!(matches!(parse_tri(&bad), Err(Error::Parse { .. })));
        assert!(matches!(parse_tri("tri v2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_tri("tri v1\nntet 1\nglue 0 0 0 0x23\n"), Err(Error::Parse { line: 3, .. })));
    }
}
