//! Star sum: joining two lifts through a band between punctured faces.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::{attach_lift, is_alternating, make_alternating, LiftDiagram};
use crate::curve::{
    filling_check, Component, CrossingId, CurveDiagram, Decoration, FaceKey, Passage, Ribbon,
};
use crate::error::{Error, Result};

/// Marks the `k` plain faces with fewest corners (ties in face order) as
/// punctured.
pub fn with_extra_punctures(l: &LiftDiagram, k: usize) -> Result<LiftDiagram> {
    let mut plain: Vec<(usize, usize, FaceKey)> = l
        .base()
        .faces()
        .into_iter()
        .enumerate()
        .filter(|(_, f)| f.decoration == Decoration::Disk)
        .map(|(i, f)| (f.len(), i, f.key))
        .collect();
    if plain.len() < k {
        return Err(Error::Precondition(format!("fewer than {k} plain faces")));
    }
    plain.sort();
    let mut decorations = l.base().decorations().clone();
    for (_, _, key) in plain.into_iter().take(k) {
        decorations.insert(key, Decoration::Puncture);
    }
    let d = CurveDiagram::new(l.base().ribbon().clone(), decorations)?;
    attach_lift(d, l.over().clone(), l.winding().clone())
}

fn check_input(l: &LiftDiagram, min_punctures: usize, which: &str) -> Result<()> {
    let r = filling_check(l.base());
    if !r.is_filling || !r.is_taut || !is_alternating(l) {
        return Err(Error::Precondition(format!(
            "{which} summand must be filling, taut and alternating"
        )));
    }
    let p = l
        .base()
        .decorations()
        .values()
        .filter(|d| **d == Decoration::Puncture)
        .count();
    if p < min_punctures {
        return Err(Error::Precondition(format!(
            "{which} summand needs at least {min_punctures} punctured faces"
        )));
    }
    Ok(())
}

/// An edge of `l` with face `target` on its right, preferring one whose left
/// face is a different, plain face. Returns `(component, passage index)` of
/// the edge's tail.
fn band_edge(l: &LiftDiagram, target: usize) -> Result<(usize, usize)> {
    let ribbon = l.base().ribbon();
    let faces = ribbon.raw_faces();
    let mut face_of = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for &c in f {
            face_of.insert(c, fi);
        }
    }
    let keys = ribbon.face_corners();
    let decorations = l.base().decorations();
    let mut best: Option<((bool, bool), (usize, usize))> = None;
    for e in ribbon.edges() {
        let right = face_of[&(e.tail.crossing, (e.tail.end + 3) % 4)];
        let left = face_of[&(e.tail.crossing, e.tail.end)];
        if right != target {
            continue;
        }
        let rank = (left == right, decorations[&keys[left].0] != Decoration::Disk);
        if best.is_none_or(|(r, _)| rank < r) {
            best = Some((rank, (e.component, e.index)));
        }
    }
    best.map(|(_, e)| e)
        .ok_or_else(|| Error::Precondition("punctured face has no bounding edge".into()))
}

fn first_punctured(l: &LiftDiagram) -> usize {
    l.base()
        .faces()
        .iter()
        .position(|f| f.decoration == Decoration::Puncture)
        .expect("checked")
}

/// Star sum of `l1` (a lift on a surface with at least one puncture) and `l2`
/// (a lift on a surface with at least two punctures).
///
/// The band runs from the first punctured face of `l1` to the first
/// punctured face of `l2`, both in canonical face order. The component of
/// `l1` along the chosen edge absorbs the component of `l2` along the other,
/// and the two punctured faces merge into one plain face. If the two new
/// junctions break alternation, every crossing of `l2` is switched.
pub fn star_sum(l1: &LiftDiagram, l2: &LiftDiagram) -> Result<LiftDiagram> {
    check_input(l1, 1, "first")?;
    check_input(l2, 2, "second")?;
    let g1 = l1.base().ribbon().genus()?;
    let g2 = l2.base().ribbon().genus()?;

    // renumber the crossings of l2
    let ids1: Vec<&CrossingId> = l1.base().crossings().iter().map(|(id, _)| id).collect();
    let ids2: Vec<&CrossingId> = l2.base().crossings().iter().map(|(id, _)| id).collect();
    let numeric = |ids: &[&CrossingId]| ids.iter().all(|id| id.as_str().parse::<u64>().is_ok());
    let rename: HashMap<CrossingId, CrossingId> = if numeric(&ids1) && numeric(&ids2) {
        let offset = ids1.iter().map(|id| id.as_str().parse::<u64>().unwrap()).max().unwrap_or(0);
        ids2.iter()
            .map(|id| {
                let n: u64 = id.as_str().parse().unwrap();
                ((*id).clone(), CrossingId::new((n + offset).to_string()).unwrap())
            })
            .collect()
    } else {
        let taken: HashSet<&str> = ids1.iter().map(|id| id.as_str()).collect();
        let mut prefix = String::from("r");
        while ids2.iter().any(|id| taken.contains(format!("{prefix}{id}").as_str())) {
            prefix.push('r');
        }
        ids2.iter()
            .map(|id| ((*id).clone(), CrossingId::new(format!("{prefix}{id}")).unwrap()))
            .collect()
    };
    let names1: HashSet<&str> = l1.base().components().iter().map(|c| c.name.as_str()).collect();
    let rename_comp = |name: &str| -> String {
        let mut n = name.to_string();
        while names1.contains(n.as_str()) {
            n = format!("r{n}");
        }
        n
    };
    let comps2: Vec<Component> = l2
        .base()
        .components()
        .iter()
        .map(|c| Component {
            name: rename_comp(&c.name),
            passages: c
                .passages
                .iter()
                .map(|p| Passage {
                    crossing: rename[&p.crossing].clone(),
                    slot: p.slot,
                })
                .collect(),
        })
        .collect();

    let f1 = first_punctured(l1);
    let f2 = first_punctured(l2);
    let (c1, k1) = band_edge(l1, f1)?;
    let (c2, k2) = band_edge(l2, f2)?;

    // splice: alpha1 from the head of its band edge round to the tail, then
    // alpha2 likewise
    let rotate = |ps: &[Passage], k: usize| -> Vec<Passage> {
        let n = ps.len();
        (1..=n).map(|i| ps[(k + i) % n].clone()).collect()
    };
    let comps1 = l1.base().components();
    let mut merged = rotate(&comps1[c1].passages, k1);
    merged.extend(rotate(&comps2[c2].passages, k2));
    let mut components = Vec::new();
    for (i, c) in comps1.iter().enumerate() {
        if i == c1 {
            components.push(Component {
                name: c.name.clone(),
                passages: merged.clone(),
            });
        } else {
            components.push(c.clone());
        }
    }
    for (i, c) in comps2.iter().enumerate() {
        if i != c2 {
            components.push(c.clone());
        }
    }

    let mut crossings = l1.base().crossings().to_vec();
    crossings.extend(
        l2.base()
            .crossings()
            .iter()
            .map(|(id, s)| (rename[id].clone(), *s)),
    );
    let ribbon = Ribbon::new(crossings, components)?;

    // old face of every corner, with its decoration
    let mut old: HashMap<(CrossingId, u8), (usize, Decoration)> = HashMap::new();
    for (side, l) in [(0usize, l1), (1, l2)] {
        for (fi, f) in l.base().faces().into_iter().enumerate() {
            for c in f.corners {
                let id = if side == 0 { c.crossing } else { rename[&c.crossing].clone() };
                old.insert((id, c.quadrant), (2 * fi + side, f.decoration));
            }
        }
    }
    let banded = [2 * f1, 2 * f2 + 1];
    let mut decorations = BTreeMap::new();
    for (key, corners) in ribbon.face_corners() {
        let mut sources: Vec<(usize, Decoration)> = corners
            .iter()
            .map(|c| old[&(c.crossing.clone(), c.quadrant)])
            .filter(|(f, d)| !banded.contains(f) && *d != Decoration::Disk)
            .collect();
        sources.sort_by_key(|s| s.0);
        sources.dedup_by_key(|s| s.0);
        let dec = match sources[..] {
            [] => Decoration::Disk,
            [(_, d)] => d,
            _ => {
                return Err(Error::Precondition(
                    "band would merge two decorated faces".into(),
                ))
            }
        };
        decorations.insert(key, dec);
    }
    let d = CurveDiagram::new(ribbon, decorations)?;
    if d.ribbon().genus()? != g1 + g2 {
        return Err(Error::Precondition("band does not join the surfaces".into()));
    }

    let mut over = l1.over().clone();
    for (id, s) in l2.over() {
        over.insert(rename[id].clone(), *s);
    }
    let mut winding: BTreeMap<String, i64> = l1.winding().clone();
    let merged_name = &comps1[c1].name;
    let alpha2_name = &l2.base().components()[c2].name;
    *winding.get_mut(merged_name).unwrap() += l2.winding()[alpha2_name];
    for c in l2.base().components() {
        if c.name != *alpha2_name {
            winding.insert(rename_comp(&c.name), l2.winding()[&c.name]);
        }
    }
    let out = attach_lift(d, over, winding)?;
    if is_alternating(&out) {
        return Ok(out);
    }
    let renamed: Vec<CrossingId> = rename.values().cloned().collect();
    let flipped = out.flipped(&renamed);
    if is_alternating(&flipped) {
        return Ok(flipped);
    }
    make_alternating(&out).ok_or_else(|| Error::Precondition("star sum admits no alternating lift".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::gen_twist_family;

    fn punctures(l: &LiftDiagram) -> usize {
        l.base().decorations().values().filter(|d| **d == Decoration::Puncture).count()
    }

    #[test]
    fn extra_puncture_goes_to_smallest_plain_face() {
        let l = gen_twist_family(1).unwrap();
        let p = with_extra_punctures(&l, 1).unwrap();
        assert_eq!(punctures(&p), 2);
        let four = p.base().faces().into_iter().find(|f| f.len() == 4).unwrap();
        assert_eq!(four.decoration, Decoration::Puncture);
        assert!(with_extra_punctures(&l, 3).is_err());
    }

    #[test]
    fn genus_two_sum() {
        let a = gen_twist_family(1).unwrap();
        let b = with_extra_punctures(&a, 1).unwrap();
        let s = star_sum(&a, &b).unwrap();
        let r = filling_check(s.base());
        assert!(r.is_filling && r.is_taut && is_alternating(&s));
        assert_eq!(r.genus, 2);
        assert_eq!(punctures(&s), 1);
        assert_eq!(s.base().num_crossings(), 6);
        assert_eq!(s.base().components().len(), 1);
    }

    #[test]
    fn iterated_sum_adds_genus() {
        let mut acc = gen_twist_family(1).unwrap();
        for n in 1..=3 {
            let b = with_extra_punctures(&gen_twist_family(n).unwrap(), 1).unwrap();
            let g = acc.base().ribbon().genus().unwrap();
            acc = star_sum(&acc, &b).unwrap();
            assert_eq!(acc.base().ribbon().genus().unwrap(), g + 1);
            assert!(is_alternating(&acc));
            assert_eq!(punctures(&acc), 1);
        }
    }

    #[test]
    fn preconditions() {
        let a = gen_twist_family(1).unwrap();
        // second summand needs two punctures
        assert!(matches!(star_sum(&a, &a), Err(Error::Precondition(_))));
        let b = with_extra_punctures(&a, 1).unwrap();
        let broken = a.flipped(&[CrossingId::from(1)]);
        assert!(matches!(star_sum(&broken, &b), Err(Error::Precondition(_))));
    }

    #[test]
    fn non_numeric_ids_get_prefixed() {
        let a = gen_twist_family(1).unwrap();
        let x = |id: &CrossingId| {
            if id.as_str() == "1" {
                CrossingId::new("x").unwrap()
            } else {
                id.clone()
            }
        };
        let crossings = a.base().crossings().iter().map(|(id, s)| (x(id), *s)).collect();
        let components = a
            .base()
            .components()
            .iter()
            .map(|c| Component {
                name: c.name.clone(),
                passages: c.passages.iter().map(|p| Passage { crossing: x(&p.crossing), slot: p.slot }).collect(),
            })
            .collect();
        let ribbon = Ribbon::new(crossings, components).unwrap();
        let d = CurveDiagram::decorate(ribbon, |_, c| if c.len() == 2 { Decoration::Puncture } else { Decoration::Disk }).unwrap();
        let over = a.over().iter().map(|(id, s)| (x(id), *s)).collect();
        let a = attach_lift(d, over, BTreeMap::new()).unwrap();
        let b = with_extra_punctures(&a, 1).unwrap();
        let s = star_sum(&a, &b).unwrap();
        assert!(s.base().crossings().iter().any(|(id, _)| id.as_str() == "rx"));
        assert!(s.base().crossings().iter().any(|(id, _)| id.as_str() == "r2"));
        assert!(is_alternating(&s));
    }
}
