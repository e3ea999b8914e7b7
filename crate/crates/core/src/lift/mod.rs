//! Lifts of a curve diagram into the circle bundle: which strand is higher in
//! the fiber at each crossing, and how many times each component winds.

use std::collections::{BTreeMap, HashMap};

use crate::curve::{self, CrossingId, CurveDiagram, Slot};
use crate::error::{Error, Result};

mod planar;
mod star;
mod twist;

pub use planar::planar_diagram;
pub use star::{star_sum, with_extra_punctures};
pub use twist::{export_pants_arcs, gen_twist_family, torus_strip_curve};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftDiagram {
    base: CurveDiagram,
    over: BTreeMap<CrossingId, Slot>,
    winding: BTreeMap<String, i64>,
}

/// Pairs a diagram with fiber data. Components missing from `winding` get 0.
pub fn attach_lift(
    d: CurveDiagram,
    over: BTreeMap<CrossingId, Slot>,
    winding: BTreeMap<String, i64>,
) -> Result<LiftDiagram> {
    for id in over.keys() {
        if d.ribbon().sign(id).is_none() {
            return Err(Error::UnknownCrossing(id.to_string()));
        }
    }
    for (id, _) in d.crossings() {
        if !over.contains_key(id) {
            return Err(Error::MissingOver(id.to_string()));
        }
    }
    let mut full = BTreeMap::new();
    for c in d.components() {
        full.insert(c.name.clone(), 0);
    }
    for (name, w) in winding {
        match full.get_mut(&name) {
            Some(slot) => *slot = w,
            None => return Err(Error::UnknownComponent(name)),
        }
    }
    Ok(LiftDiagram {
        base: d,
        over,
        winding: full,
    })
}

impl LiftDiagram {
    pub fn base(&self) -> &CurveDiagram {
        &self.base
    }

    pub fn over(&self) -> &BTreeMap<CrossingId, Slot> {
        &self.over
    }

    pub fn winding(&self) -> &BTreeMap<String, i64> {
        &self.winding
    }

    /// Whether passage `slot` through `id` is the upper strand.
    pub fn is_over(&self, id: &CrossingId, slot: Slot) -> bool {
        self.over[id] == slot
    }

    /// The same lift with the listed crossings switched.
    pub fn flipped<'a>(&self, ids: impl IntoIterator<Item = &'a CrossingId>) -> LiftDiagram {
        let mut out = self.clone();
        for id in ids {
            if let Some(s) = out.over.get_mut(id) {
                *s = s.other();
            }
        }
        out
    }

    pub fn flipped_all(&self) -> LiftDiagram {
        let ids: Vec<CrossingId> = self.over.keys().cloned().collect();
        self.flipped(&ids)
    }
}

/// True when every component alternates over, under, over, ... cyclically.
pub fn is_alternating(l: &LiftDiagram) -> bool {
    l.base.components().iter().all(|c| {
        let n = c.passages.len();
        (0..n).all(|k| {
            let p = &c.passages[k];
            let q = &c.passages[(k + 1) % n];
            l.is_over(&p.crossing, p.slot) != l.is_over(&q.crossing, q.slot)
        })
    })
}

/// Finds an alternating choice of crossings, or `None` if there is none.
///
/// Passage `k` of component `C` is over iff `k + p_C` is even. A crossing
/// joining passages `(C, k)` and `(D, m)` forces `p_C xor p_D = k + m + 1 mod 2`.
/// Each connected group of components keeps the current status of its first
/// component's first passage. A component of odd length never alternates.
pub fn make_alternating(l: &LiftDiagram) -> Option<LiftDiagram> {
    let comps = l.base.components();
    if comps.iter().any(|c| c.passages.len() % 2 == 1) {
        return None;
    }
    let mut occ: HashMap<&CrossingId, Vec<(usize, usize)>> = HashMap::new();
    for (ci, c) in comps.iter().enumerate() {
        for (k, p) in c.passages.iter().enumerate() {
            occ.entry(&p.crossing).or_default().push((ci, k));
        }
    }
    let mut adj: Vec<Vec<(usize, u8)>> = vec![Vec::new(); comps.len()];
    for v in occ.values() {
        let [(c1, k1), (c2, k2)] = v[..] else { unreachable!() };
        let r = ((k1 + k2 + 1) % 2) as u8;
        adj[c1].push((c2, r));
        adj[c2].push((c1, r));
    }

    let mut parity: Vec<Option<u8>> = vec![None; comps.len()];
    for root in 0..comps.len() {
        if parity[root].is_some() {
            continue;
        }
        let first = &comps[root].passages[0];
        parity[root] = Some(if l.is_over(&first.crossing, first.slot) { 0 } else { 1 });
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let pu = parity[u].unwrap();
            for &(v, r) in &adj[u] {
                let want = pu ^ r;
                match parity[v] {
                    Some(pv) if pv != want => return None,
                    Some(_) => {}
                    None => {
                        parity[v] = Some(want);
                        stack.push(v);
                    }
                }
            }
        }
    }

    let mut over = BTreeMap::new();
    for (ci, c) in comps.iter().enumerate() {
        let p = parity[ci].unwrap() as usize;
        for (k, pass) in c.passages.iter().enumerate() {
            if (k + p).is_multiple_of(2) {
                over.insert(pass.crossing.clone(), pass.slot);
            }
        }
    }
    let out = LiftDiagram {
        base: l.base.clone(),
        over,
        winding: l.winding.clone(),
    };
    debug_assert!(out.over.len() == l.over.len() && is_alternating(&out));
    Some(out)
}

pub fn parse_lift(text: &str) -> Result<LiftDiagram> {
    let doc = curve::parse_document(text, &["over", "winding"])?;
    let mut over = BTreeMap::new();
    let mut winding = BTreeMap::new();
    for line in doc.extra {
        let toks: Vec<&str> = line.rest.split_whitespace().collect();
        match (line.keyword, &toks[..]) {
            ("over", [id, slot]) => {
                let id = CrossingId::new(*id).map_err(|e| Error::parse(line.no, e.to_string()))?;
                let slot = match *slot {
                    "a" => Slot::A,
                    "b" => Slot::B,
                    s => return Err(Error::parse(line.no, format!("bad slot {s:?}"))),
                };
                if over.insert(id.clone(), slot).is_some() {
                    return Err(Error::parse(line.no, format!("over {id} given twice")));
                }
            }
            ("winding", [name, w]) => {
                let w: i64 = w
                    .parse()
                    .map_err(|_| Error::parse(line.no, format!("bad winding {w:?}")))?;
                if winding.insert(name.to_string(), w).is_some() {
                    return Err(Error::parse(line.no, format!("winding {name} given twice")));
                }
            }
            (kw, _) => return Err(Error::parse(line.no, format!("malformed `{kw}` line"))),
        }
    }
    attach_lift(doc.diagram, over, winding)
}

pub fn write_lift(l: &LiftDiagram) -> String {
    let mut out = curve::write_diagram(&l.base);
    for (id, slot) in &l.over {
        out.push_str(&format!("over {id} {}\n", slot.as_char()));
    }
    for c in l.base.components() {
        out.push_str(&format!("winding {} {}\n", c.name, l.winding[&c.name]));
    }
    out
}
