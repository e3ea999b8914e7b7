//! Edge and cusp equations of an ideal triangulation.

use std::collections::{HashMap, VecDeque};

use crate::error::Result;
use crate::triangulation::{require_valid, IdealTriangulation, EDGES};

/// Which shape parameter sits on an edge: `z` on 01/23, `1/(1-z)` on 02/13,
/// `(z-1)/z` on 03/12.
pub fn edge_shape_kind(u: usize, v: usize) -> usize {
    match (u.min(v), u.max(v)) {
        (0, 1) | (2, 3) => 0,
        (0, 2) | (1, 3) => 1,
        _ => 2,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Copy)]
pub enum EquationKind {
    Edge,
    Cusp,
}

/// `Σ_j a_j log z_j + b_j log(1/(1-z_j)) + c_j log((z_j-1)/z_j) = i·target`.
#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    pub kind: EquationKind,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    pub target: f64,
}

impl Equation {
    fn zero(kind: EquationKind, n: usize, target: f64) -> Self {
        Equation {
            kind,
            a: vec![0; n],
            b: vec![0; n],
            c: vec![0; n],
            target,
        }
    }

    fn add(&mut self, tet: usize, kind: usize, k: i64) {
        match kind {
            0 => self.a[tet] += k,
            1 => self.b[tet] += k,
            _ => self.c[tet] += k,
        }
    }

    fn axpy(&mut self, k: i64, other: &Equation) {
        for j in 0..self.a.len() {
            self.a[j] += k * other.a[j];
            self.b[j] += k * other.b[j];
            self.c[j] += k * other.c[j];
        }
    }

    fn is_zero(&self) -> bool {
        self.a.iter().chain(&self.b).chain(&self.c).all(|&x| x == 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GluingSystem {
    pub num_tetrahedra: usize,
    pub equations: Vec<Equation>,
}

impl GluingSystem {
    pub fn edge_equations(&self) -> impl Iterator<Item = &Equation> {
        self.equations.iter().filter(|e| e.kind == EquationKind::Edge)
    }

    pub fn cusp_equations(&self) -> impl Iterator<Item = &Equation> {
        self.equations.iter().filter(|e| e.kind == EquationKind::Cusp)
    }
}

/// Edge equations from edge classes, two cusp equations per cusp from a
/// homology basis of its vertex link.
pub fn build_gluing_system(t: &IdealTriangulation) -> Result<GluingSystem> {
    require_valid(t)?;
    let n = t.num_tetrahedra();
    let (edge_class, num_edges, _) = t.edge_classes();
    let mut equations: Vec<Equation> = (0..num_edges)
        .map(|_| Equation::zero(EquationKind::Edge, n, 2.0 * std::f64::consts::PI))
        .collect();
    for tet in 0..n {
        for (e, &(u, v)) in EDGES.iter().enumerate() {
            equations[edge_class[6 * tet + e]].add(tet, edge_shape_kind(u, v), 1);
        }
    }
    let (vertex_class, num_cusps) = t.vertex_classes();
    for cusp in 0..num_cusps {
        let link = CuspLink::new(t, &vertex_class, cusp);
        equations.extend(link.peripheral_equations(n));
    }
    Ok(GluingSystem {
        num_tetrahedra: n,
        equations,
    })
}

/// Counterclockwise order of the link triangle at vertex `v`: the `(a, b, c)`
/// with `(v, a, b, c)` an even permutation.
fn ccw(v: usize) -> [usize; 3] {
    match v {
        0 => [1, 2, 3],
        1 => [0, 3, 2],
        2 => [0, 1, 3],
        _ => [0, 2, 1],
    }
}

fn is_ccw(v: usize, x: usize, y: usize, z: usize) -> bool {
    let o = ccw(v);
    (0..3).any(|r| [o[r], o[(r + 1) % 3], o[(r + 2) % 3]] == [x, y, z])
}

/// A side of a link triangle: triangle `4t + v`, side opposite link vertex `f`.
type Side = (usize, usize);

/// Triangulated vertex link of one cusp.
struct CuspLink<'a> {
    t: &'a IdealTriangulation,
    triangles: Vec<usize>,
}

impl<'a> CuspLink<'a> {
    fn new(t: &'a IdealTriangulation, vertex_class: &[usize], cusp: usize) -> Self {
        let triangles = (0..vertex_class.len()).filter(|&i| vertex_class[i] == cusp).collect();
        CuspLink { t, triangles }
    }

    /// The side glued to `s`.
    fn mate(&self, (tri, f): Side) -> Side {
        let (tet, v) = (tri / 4, tri % 4);
        let g = self.t.gluing(tet, f).expect("validated");
        (4 * g.tet + g.perm.apply(v), g.perm.apply(f))
    }

    fn sides(tri: usize) -> impl Iterator<Item = Side> {
        (0..4).filter(move |&f| f != tri % 4).map(move |f| (tri, f))
    }

    /// Fundamental cycles of the dual graph as sequences of exited sides,
    /// with backtracking removed. Each is an embedded closed curve.
    fn dual_cycles(&self) -> Vec<Vec<Side>> {
        let root = self.triangles[0];
        let mut parent: HashMap<usize, Option<Side>> = HashMap::from([(root, None)]);
        let mut queue = VecDeque::from([root]);
        let mut tree_sides = std::collections::HashSet::new();
        while let Some(tri) = queue.pop_front() {
            for s in Self::sides(tri) {
                let m = self.mate(s);
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(m.0) {
                    e.insert(Some(s));
                    tree_sides.insert(s);
                    tree_sides.insert(m);
                    queue.push_back(m.0);
                }
            }
        }
        // sides exited walking from the root down to `tri`
        let path_from_root = |mut tri: usize| -> Vec<Side> {
            let mut out = Vec::new();
            while let Some(Some(s)) = parent.get(&tri) {
                out.push(*s);
                tri = s.0;
            }
            out.reverse();
            out
        };
        let mut cycles = Vec::new();
        let mut done = std::collections::HashSet::new();
        for &tri in &self.triangles {
            for s in Self::sides(tri) {
                let m = self.mate(s);
                if tree_sides.contains(&s) || done.contains(&m) {
                    continue;
                }
                done.insert(s);
                let mut walk = path_from_root(s.0);
                walk.push(s);
                let back: Vec<Side> = path_from_root(m.0).into_iter().rev().map(|x| self.mate(x)).collect();
                walk.extend(back);
                cycles.push(self.reduce(walk));
            }
        }
        cycles
    }

    /// Removes steps that immediately cross back through the same side,
    /// including across the wrap-around.
    fn reduce(&self, walk: Vec<Side>) -> Vec<Side> {
        let mut out: Vec<Side> = Vec::new();
        for s in walk {
            if out.last().is_some_and(|&l| self.mate(l) == s) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        while out.len() >= 2 && self.mate(*out.last().unwrap()) == out[0] {
            out.pop();
            out.remove(0);
        }
        out
    }

    /// Log-holonomy exponents of a closed dual curve: corners cut off on its
    /// left count +1, on its right -1.
    fn holonomy(&self, walk: &[Side], n: usize) -> Equation {
        let mut eq = Equation::zero(EquationKind::Cusp, n, 0.0);
        let m = walk.len();
        for i in 0..m {
            let (tri, f_in) = self.mate(walk[i]);
            let (tri_out, f_out) = walk[(i + 1) % m];
            debug_assert_eq!(tri, tri_out);
            let v = tri % 4;
            let w = (0..4).find(|&w| w != v && w != f_in && w != f_out).unwrap();
            let sign = if is_ccw(v, w, f_in, f_out) { -1 } else { 1 };
            eq.add(tri / 4, edge_shape_kind(v, w), sign);
        }
        eq
    }

    /// Fundamental cycles of the link's 1-skeleton, each as a list of
    /// (side, from-corner, to-corner) with sides in canonical form.
    fn primal_cycles(&self) -> Vec<Vec<(Side, usize, usize)>> {
        // link vertices: corners (tri, w) up to gluing
        let mut id: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next = 0;
        for &tri in &self.triangles {
            for w in (0..4).filter(|&w| w != tri % 4) {
                if id.contains_key(&(tri, w)) {
                    continue;
                }
                // flood the corner class around its edge
                let mut stack = vec![(tri, w)];
                id.insert((tri, w), next);
                while let Some((tr, x)) = stack.pop() {
                    for f in (0..4).filter(|&f| f != tr % 4 && f != x) {
                        let g = self.t.gluing(tr / 4, f).unwrap();
                        let c = (4 * g.tet + g.perm.apply(tr % 4), g.perm.apply(x));
                        if let std::collections::hash_map::Entry::Vacant(e) = id.entry(c) {
                            e.insert(next);
                            stack.push(c);
                        }
                    }
                }
                next += 1;
            }
        }
        // canonical sides and their endpoints
        let mut edges: Vec<(Side, usize, usize)> = Vec::new();
        for &tri in &self.triangles {
            for s in Self::sides(tri) {
                if s <= self.mate(s) {
                    let v = tri % 4;
                    let mut ends = (0..4).filter(|&x| x != v && x != s.1);
                    let (x, y) = (ends.next().unwrap(), ends.next().unwrap());
                    edges.push((s, x, y));
                }
            }
        }
        let node = |tri: usize, x: usize| id[&(tri, x)];
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); next];
        for (k, &((tri, _), x, y)) in edges.iter().enumerate() {
            adj[node(tri, x)].push((k, true));
            adj[node(tri, y)].push((k, false));
        }
        // BFS tree; parent edge stored as (edge, traversed forward x -> y)
        let mut parent: Vec<Option<Option<(usize, bool)>>> = vec![None; next];
        parent[0] = Some(None);
        let mut queue = VecDeque::from([0]);
        let mut in_tree = vec![false; edges.len()];
        while let Some(u) = queue.pop_front() {
            for &(k, forward) in &adj[u] {
                let ((tri, _), x, y) = edges[k];
                let other = if forward { node(tri, y) } else { node(tri, x) };
                if parent[other].is_none() {
                    parent[other] = Some(Some((k, forward)));
                    in_tree[k] = true;
                    queue.push_back(other);
                }
            }
        }
        let to_root = |mut u: usize| -> Vec<(usize, bool)> {
            // steps from u up to the root
            let mut out = Vec::new();
            while let Some(Some((k, forward))) = parent[u] {
                out.push((k, !forward));
                let ((tri, _), x, y) = edges[k];
                u = if forward { node(tri, x) } else { node(tri, y) };
            }
            out
        };
        let mut cycles = Vec::new();
        for k in 0..edges.len() {
            if in_tree[k] {
                continue;
            }
            let ((tri, _), x, y) = edges[k];
            // root -> x, edge x -> y, y -> root
            let mut steps: Vec<(usize, bool)> =
                to_root(node(tri, x)).into_iter().rev().map(|(e, f)| (e, !f)).collect();
            steps.push((k, true));
            steps.extend(to_root(node(tri, y)));
            cycles.push(
                steps
                    .into_iter()
                    .map(|(e, forward)| {
                        let (s, x, y) = edges[e];
                        if forward {
                            (s, x, y)
                        } else {
                            (s, y, x)
                        }
                    })
                    .collect(),
            );
        }
        cycles
    }

    /// Algebraic intersection of a dual cycle with a primal cycle.
    fn intersection(&self, dual: &[Side], primal: &[(Side, usize, usize)]) -> i64 {
        let mut total = 0;
        for &s in dual {
            let m = self.mate(s);
            let canonical = s.min(m);
            for &(ps, x, y) in primal {
                if ps != canonical {
                    continue;
                }
                let (tri, f) = ps;
                let o = ccw(tri % 4);
                let i = o.iter().position(|&a| a == f).unwrap();
                let along = (o[(i + 1) % 3], o[(i + 2) % 3]) == (x, y);
                let sign = if along { 1 } else { -1 };
                total += if s == canonical { sign } else { -sign };
            }
        }
        total
    }

    /// Two holonomy equations spanning the peripheral homology.
    fn peripheral_equations(&self, n: usize) -> Vec<Equation> {
        let duals = self.dual_cycles();
        let primals = self.primal_cycles();
        let mut rows: Vec<(Vec<i64>, Equation)> = duals
            .iter()
            .map(|d| {
                let pairing: Vec<i64> = primals.iter().map(|p| self.intersection(d, p)).collect();
                (pairing, self.holonomy(d, n))
            })
            .filter(|(p, _)| p.iter().any(|&x| x != 0))
            .collect();

        // integer row reduction on the pairing columns
        let cols = primals.len();
        let mut rank = 0;
        for col in 0..cols {
            loop {
                let pivot = (rank..rows.len())
                    .filter(|&r| rows[r].0[col] != 0)
                    .min_by_key(|&r| rows[r].0[col].abs());
                let Some(p) = pivot else { break };
                rows.swap(rank, p);
                let mut clean = true;
                for r in rank + 1..rows.len() {
                    let q = rows[r].0[col] / rows[rank].0[col];
                    if q != 0 {
                        let (head, tail) = rows.split_at_mut(r);
                        let (pr, ph) = (&head[rank].0, &head[rank].1);
                        for (a, b) in tail[0].0.iter_mut().zip(pr) {
                            *a -= q * b;
                        }
                        tail[0].1.axpy(-q, ph);
                    }
                    if rows[r].0[col] != 0 {
                        clean = false;
                    }
                }
                if clean {
                    rank += 1;
                    break;
                }
            }
        }
        assert_eq!(rank, 2, "vertex link is not a torus");
        rows.truncate(2);
        rows.into_iter()
            .map(|(_, e)| e)
            .inspect(|e| debug_assert!(!e.is_zero()))
            .collect()
    }
}
