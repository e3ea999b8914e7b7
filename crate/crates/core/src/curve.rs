//! Multi-curves on surfaces and orbifolds, described by a signed Gauss code.
//!
//! A diagram is a set of signed crossings and a list of components, each a
//! cyclic word of passages through crossings. The sign of a crossing fixes the
//! counterclockwise order of the four strand ends around it, which is all the
//! ribbon structure needed to recover the underlying closed surface by face
//! tracing. Complementary faces carry a decoration (plain disk, punctured disk
//! or cone disk) that turns the closed surface into the orbifold the curve
//! lives on.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Crossing label. Ordered numerically when both labels are integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossingId(String);

impl CrossingId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() || !id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::Precondition(format!("invalid crossing id {id:?}")));
        }
        Ok(CrossingId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<usize> for CrossingId {
    fn from(n: usize) -> Self {
        CrossingId(n.to_string())
    }
}

impl Ord for CrossingId {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.0.parse::<u64>(), other.0.parse::<u64>()) {
            (Ok(a), Ok(b)) => a.cmp(&b).then_with(|| self.0.cmp(&other.0)),
            (Ok(_), Err(_)) => Ordering::Less,
            (Err(_), Ok(_)) => Ordering::Greater,
            (Err(_), Err(_)) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for CrossingId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Which of the two strands through a crossing a passage uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    A,
    B,
}

impl Slot {
    pub fn other(self) -> Slot {
        match self {
            Slot::A => Slot::B,
            Slot::B => Slot::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Slot::A => 'a',
            Slot::B => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Slot> {
        match c {
            'a' => Some(Slot::A),
            'b' => Some(Slot::B),
            _ => None,
        }
    }
}

/// Local handedness of a crossing: `Positive` when strand b crosses strand a
/// from right to left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Dir {
    In,
    Out,
}

/// Position (0..4, counterclockwise) of a strand end around a crossing.
pub(crate) fn end_index(sign: Sign, slot: Slot, dir: Dir) -> u8 {
    use Dir::*;
    use Slot::*;
    let order: [(Slot, Dir); 4] = match sign {
        Sign::Positive => [(A, In), (B, In), (A, Out), (B, Out)],
        Sign::Negative => [(A, In), (B, Out), (A, Out), (B, In)],
    };
    order.iter().position(|&e| e == (slot, dir)).unwrap() as u8
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Passage {
    pub crossing: CrossingId,
    pub slot: Slot,
}

impl Passage {
    pub fn new(crossing: impl Into<CrossingId>, slot: Slot) -> Self {
        Passage {
            crossing: crossing.into(),
            slot,
        }
    }
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.crossing, self.slot.as_char())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub passages: Vec<Passage>,
}

/// What sits inside a complementary face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "order")]
pub enum Decoration {
    Disk,
    Puncture,
    Cone(u32),
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decoration::Disk => f.write_str("disk"),
            Decoration::Puncture => f.write_str("puncture"),
            Decoration::Cone(p) => write!(f, "cone {p}"),
        }
    }
}

/// A corner of a face: one of the four quadrants at a crossing. Quadrant `q`
/// lies between strand ends `q` and `q + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub crossing: CrossingId,
    pub quadrant: u8,
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.crossing, self.quadrant)
    }
}

/// Canonical face identifier, e.g. `1.0-2.3-1.2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FaceKey(pub String);

impl fmt::Display for FaceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub corners: Vec<Corner>,
    pub decoration: Decoration,
    pub key: FaceKey,
}

impl Face {
    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }
}

/// A strand end at a crossing, by crossing index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct EndRef {
    pub crossing: usize,
    pub end: u8,
}

/// Segment of a component between two consecutive passages: an edge of the
/// 4-valent graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Edge {
    pub component: usize,
    /// Passage index where the edge starts (leaves its crossing).
    pub index: usize,
    pub tail: EndRef,
    pub head: EndRef,
    pub tail_slot: Slot,
    pub head_slot: Slot,
}

/// Face as a cyclic list of `(crossing index, quadrant)` corners in canonical
/// rotation.
pub(crate) type RawFace = Vec<(usize, u8)>;

/// Crossings and components with the derived ribbon data, before faces are
/// decorated.
#[derive(Clone, Debug)]
pub struct Ribbon {
    crossings: Vec<(CrossingId, Sign)>,
    components: Vec<Component>,
    index: HashMap<CrossingId, usize>,
    edges: Vec<Edge>,
    /// `mate[x][e]`: the opposite end of the edge attached at end `e` of `x`.
    mate: Vec<[EndRef; 4]>,
    faces: Vec<RawFace>,
}

impl PartialEq for Ribbon {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.components == other.components
    }
}

impl Eq for Ribbon {}

impl Ribbon {
    pub fn new(crossings: Vec<(CrossingId, Sign)>, components: Vec<Component>) -> Result<Self> {
        let mut crossings = crossings;
        crossings.sort_by(|a, b| a.0.cmp(&b.0));
        let mut index = HashMap::new();
        for (i, (id, _)) in crossings.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::Precondition(format!("crossing {id} declared twice")));
            }
        }

        let mut names = HashSet::new();
        let mut seen: HashSet<(usize, Slot)> = HashSet::new();
        let mut count = vec![0usize; crossings.len()];
        for comp in &components {
            if !names.insert(comp.name.as_str()) {
                return Err(Error::DuplicateComponent(comp.name.clone()));
            }
            if comp.passages.is_empty() {
                return Err(Error::EmptyComponent(comp.name.clone()));
            }
            for p in &comp.passages {
                let &x = index
                    .get(&p.crossing)
                    .ok_or_else(|| Error::UnknownCrossing(p.crossing.to_string()))?;
                if !seen.insert((x, p.slot)) {
                    return Err(Error::DuplicatePassage(p.to_string()));
                }
                count[x] += 1;
            }
        }
        for (x, &n) in count.iter().enumerate() {
            if n != 2 {
                return Err(Error::CrossingMultiplicity {
                    id: crossings[x].0.to_string(),
                    count: n,
                });
            }
        }

        let placeholder = EndRef { crossing: 0, end: 0 };
        let mut mate = vec![[placeholder; 4]; crossings.len()];
        let mut edges = Vec::new();
        for (ci, comp) in components.iter().enumerate() {
            let n = comp.passages.len();
            for k in 0..n {
                let p = &comp.passages[k];
                let q = &comp.passages[(k + 1) % n];
                let (x, y) = (index[&p.crossing], index[&q.crossing]);
                let tail = EndRef {
                    crossing: x,
                    end: end_index(crossings[x].1, p.slot, Dir::Out),
                };
                let head = EndRef {
                    crossing: y,
                    end: end_index(crossings[y].1, q.slot, Dir::In),
                };
                mate[x][tail.end as usize] = head;
                mate[y][head.end as usize] = tail;
                edges.push(Edge {
                    component: ci,
                    index: k,
                    tail,
                    head,
                    tail_slot: p.slot,
                    head_slot: q.slot,
                });
            }
        }

        let mut ribbon = Ribbon {
            crossings,
            components,
            index,
            edges,
            mate,
            faces: Vec::new(),
        };
        if !ribbon.is_connected() {
            return Err(Error::Disconnected);
        }
        ribbon.faces = ribbon.trace();
        Ok(ribbon)
    }

    fn is_connected(&self) -> bool {
        let n = self.crossings.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for e in &self.mate[x] {
                if !seen[e.crossing] {
                    seen[e.crossing] = true;
                    stack.push(e.crossing);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Orbits of the corner successor `(x, q) -> mate(x, q + 1)`, each rotated
    /// to its minimal form, sorted.
    fn trace(&self) -> Vec<RawFace> {
        let n = self.crossings.len();
        let mut seen = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for x in 0..n {
            for q in 0..4u8 {
                if seen[x][q as usize] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut cx, mut cq) = (x, q);
                while !seen[cx][cq as usize] {
                    seen[cx][cq as usize] = true;
                    face.push((cx, cq));
                    let next = self.mate[cx][((cq + 1) % 4) as usize];
                    cx = next.crossing;
                    cq = next.end;
                }
                faces.push(min_rotation(face));
            }
        }
        faces.sort();
        faces
    }

    pub fn crossings(&self) -> &[(CrossingId, Sign)] {
        &self.crossings
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn sign(&self, id: &CrossingId) -> Option<Sign> {
        self.index.get(id).map(|&x| self.crossings[x].1)
    }

    pub(crate) fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub(crate) fn raw_faces(&self) -> &[RawFace] {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Faces as corner lists with canonical keys, in canonical order.
    pub fn face_corners(&self) -> Vec<(FaceKey, Vec<Corner>)> {
        self.faces
            .iter()
            .map(|f| {
                let corners: Vec<Corner> = f
                    .iter()
                    .map(|&(x, q)| Corner {
                        crossing: self.crossings[x].0.clone(),
                        quadrant: q,
                    })
                    .collect();
                (face_key(&corners), corners)
            })
            .collect()
    }

    /// `g` with `2 - 2g = F - c`.
    pub fn genus(&self) -> Result<u32> {
        let chi = self.faces.len() as i64 - self.crossings.len() as i64;
        if chi.rem_euclid(2) != 0 || chi > 2 {
            return Err(Error::NonIntegralGenus);
        }
        Ok(((2 - chi) / 2) as u32)
    }
}

fn min_rotation(face: Vec<(usize, u8)>) -> Vec<(usize, u8)> {
    (0..face.len())
        .map(|i| {
            let mut r = face[i..].to_vec();
            r.extend_from_slice(&face[..i]);
            r
        })
        .min()
        .unwrap_or_default()
}

pub fn face_key(corners: &[Corner]) -> FaceKey {
    FaceKey(
        corners
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join("-"),
    )
}

/// A decorated multi-curve diagram: the combinatorial data of `γ` on `𝒪`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveDiagram {
    ribbon: Ribbon,
    decorations: BTreeMap<FaceKey, Decoration>,
}

impl CurveDiagram {
    pub fn new(ribbon: Ribbon, decorations: BTreeMap<FaceKey, Decoration>) -> Result<Self> {
        let keys: Vec<FaceKey> = ribbon.face_corners().into_iter().map(|(k, _)| k).collect();
        let known: HashSet<&FaceKey> = keys.iter().collect();
        for (key, dec) in &decorations {
            if !known.contains(key) {
                return Err(Error::UnknownFace(key.0.clone()));
            }
            if let Decoration::Cone(p) = dec {
                if *p < 2 {
                    return Err(Error::ConeOrder(*p));
                }
            }
        }
        for key in &keys {
            if !decorations.contains_key(key) {
                return Err(Error::UndecoratedFace(key.0.clone()));
            }
        }
        Ok(CurveDiagram {
            ribbon,
            decorations,
        })
    }

    /// Decorates every traced face with `f(key, corners)`.
    pub fn decorate(
        ribbon: Ribbon,
        mut f: impl FnMut(&FaceKey, &[Corner]) -> Decoration,
    ) -> Result<Self> {
        let decorations = ribbon
            .face_corners()
            .into_iter()
            .map(|(k, c)| {
                let d = f(&k, &c);
                (k, d)
            })
            .collect();
        CurveDiagram::new(ribbon, decorations)
    }

    pub fn ribbon(&self) -> &Ribbon {
        &self.ribbon
    }

    pub fn crossings(&self) -> &[(CrossingId, Sign)] {
        self.ribbon.crossings()
    }

    pub fn components(&self) -> &[Component] {
        self.ribbon.components()
    }

    pub fn num_crossings(&self) -> usize {
        self.ribbon.num_crossings()
    }

    pub fn decorations(&self) -> &BTreeMap<FaceKey, Decoration> {
        &self.decorations
    }

    pub fn faces(&self) -> Vec<Face> {
        trace_faces(self)
    }
}

/// Complementary faces of the diagram, in canonical order.
pub fn trace_faces(d: &CurveDiagram) -> Vec<Face> {
    d.ribbon
        .face_corners()
        .into_iter()
        .map(|(key, corners)| Face {
            decoration: d.decorations[&key],
            corners,
            key,
        })
        .collect()
}

pub fn genus(d: &CurveDiagram) -> Result<u32> {
    d.ribbon.genus()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OffendingFace {
    pub key: FaceKey,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FillingReport {
    pub is_filling: bool,
    pub is_taut: bool,
    pub genus: u32,
    pub num_faces: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub orbifold_euler: Rational64,
    pub offending_faces: Vec<OffendingFace>,
}

fn serialize_ratio<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Orbifold Euler characteristic of the closed surface of genus `g` with the
/// face decorations: punctures count 1, cone points of order p count 1 - 1/p.
pub fn orbifold_euler(genus: u32, decorations: impl IntoIterator<Item = Decoration>) -> Rational64 {
    let mut chi = Rational64::from_integer(2 - 2 * genus as i64);
    for d in decorations {
        match d {
            Decoration::Disk => {}
            Decoration::Puncture => chi -= 1,
            Decoration::Cone(p) => chi -= Rational64::new(p as i64 - 1, p as i64),
        }
    }
    chi
}

/// Filling and tautness of the diagram on its orbifold.
///
/// Every face is a disk by construction of the ribbon surface, so filling
/// reduces to the orbifold being hyperbolic. Taut means no undecorated
/// monogon or bigon.
pub fn filling_check(d: &CurveDiagram) -> FillingReport {
    let faces = trace_faces(d);
    let mut offending = Vec::new();
    for f in &faces {
        if f.decoration == Decoration::Disk && f.len() <= 2 {
            offending.push(OffendingFace {
                key: f.key.clone(),
                reason: if f.len() == 1 { "monogon" } else { "bigon" }.to_string(),
            });
        }
    }
    let is_taut = offending.is_empty();
    match d.ribbon.genus() {
        Ok(g) => {
            let chi = orbifold_euler(g, faces.iter().map(|f| f.decoration));
            FillingReport {
                is_filling: chi < Rational64::from_integer(0),
                is_taut,
                genus: g,
                num_faces: faces.len(),
                orbifold_euler: chi,
                offending_faces: offending,
            }
        }
        Err(_) => FillingReport {
            is_filling: false,
            is_taut,
            genus: 0,
            num_faces: faces.len(),
            orbifold_euler: Rational64::from_integer(0),
            offending_faces: offending,
        },
    }
}

/// `i(γ, γ)`: the crossing count of a taut diagram.
pub fn self_intersection(d: &CurveDiagram) -> Result<usize> {
    if !filling_check(d).is_taut {
        return Err(Error::NotTaut);
    }
    Ok(d.num_crossings())
}

/// True when the cyclic word is `u^k` for some shorter `u`.
pub fn is_proper_power<T: PartialEq>(word: &[T]) -> bool {
    let n = word.len();
    (1..n)
        .filter(|d| n.is_multiple_of(*d))
        .any(|d| (0..n).all(|i| word[i] == word[(i + d) % n]))
}

fn rotation_equal<T: PartialEq>(u: &[T], v: &[T]) -> bool {
    u.len() == v.len()
        && (u.is_empty() || (0..u.len()).any(|s| (0..u.len()).all(|i| u[(i + s) % u.len()] == v[i])))
}

/// Heuristic warnings about non-primitive or non-distinct components. These
/// flag, they do not certify.
pub fn validate_components(d: &CurveDiagram) -> Vec<String> {
    let mut warnings = Vec::new();
    let comps = d.components();
    for c in comps {
        if is_proper_power(&c.passages) {
            warnings.push(format!("component {} is a proper power", c.name));
        }
    }
    let words: Vec<Vec<&CrossingId>> = comps
        .iter()
        .map(|c| c.passages.iter().map(|p| &p.crossing).collect())
        .collect();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            if rotation_equal(&words[i], &words[j]) {
                warnings.push(format!(
                    "components {} and {} project to the same cyclic crossing sequence",
                    comps[i].name, comps[j].name
                ));
            }
        }
    }
    warnings
}

// ---------------------------------------------------------------------------
// Text format

/// One non-empty line of a diagram file, comments stripped.
pub(crate) struct Line<'a> {
    pub no: usize,
    pub keyword: &'a str,
    pub rest: &'a str,
}

pub(crate) fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            return None;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        Some(Line {
            no: i + 1,
            keyword,
            rest: rest.trim(),
        })
    })
}

pub(crate) fn parse_passage(tok: &str, line: usize) -> Result<Passage> {
    let slot = tok
        .chars()
        .last()
        .and_then(Slot::from_char)
        .ok_or_else(|| Error::parse(line, format!("bad passage {tok:?}")))?;
    let id = &tok[..tok.len() - 1];
    let id = CrossingId::new(id).map_err(|_| Error::parse(line, format!("bad passage {tok:?}")))?;
    Ok(Passage { crossing: id, slot })
}

/// Parsed curve lines plus any lines the caller wants to handle itself.
pub(crate) struct CurveDocument<'a> {
    pub diagram: CurveDiagram,
    pub extra: Vec<Line<'a>>,
}

pub(crate) fn parse_document<'a>(text: &'a str, extra_keywords: &[&str]) -> Result<CurveDocument<'a>> {
    let mut crossings = Vec::new();
    let mut components = Vec::new();
    let mut faces: Vec<(usize, FaceKey, Decoration)> = Vec::new();
    let mut extra = Vec::new();

    for line in lines(text) {
        let toks: Vec<&str> = line.rest.split_whitespace().collect();
        match line.keyword {
            "crossing" => {
                let [id, sign] = toks[..] else {
                    return Err(Error::parse(line.no, "expected `crossing <id> <+|->`"));
                };
                let id = CrossingId::new(id).map_err(|e| Error::parse(line.no, e.to_string()))?;
                let sign = match sign {
                    "+" => Sign::Positive,
                    "-" => Sign::Negative,
                    s => return Err(Error::parse(line.no, format!("bad sign {s:?}"))),
                };
                if crossings.iter().any(|(c, _)| c == &id) {
                    return Err(Error::parse(line.no, format!("crossing {id} declared twice")));
                }
                crossings.push((id, sign));
            }
            "component" => {
                let (name, word) = line
                    .rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line.no, "expected `component <name>: <word>`"))?;
                let name = name.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(Error::parse(line.no, "bad component name"));
                }
                let passages = word
                    .split_whitespace()
                    .map(|t| parse_passage(t, line.no))
                    .collect::<Result<Vec<_>>>()?;
                components.push(Component {
                    name: name.to_string(),
                    passages,
                });
            }
            "face" => {
                let dec = match toks.get(1..) {
                    Some(["disk"]) => Decoration::Disk,
                    Some(["puncture"]) => Decoration::Puncture,
                    Some(["cone", p]) => Decoration::Cone(
                        p.parse()
                            .map_err(|_| Error::parse(line.no, format!("bad cone order {p:?}")))?,
                    ),
                    _ => {
                        return Err(Error::parse(
                            line.no,
                            "expected `face <key> <disk|puncture|cone <p>>`",
                        ))
                    }
                };
                faces.push((line.no, FaceKey(toks[0].to_string()), dec));
            }
            kw if extra_keywords.contains(&kw) => extra.push(line),
            kw => return Err(Error::parse(line.no, format!("unknown keyword {kw:?}"))),
        }
    }

    let ribbon = Ribbon::new(crossings, components)?;
    let mut decorations = BTreeMap::new();
    for (no, key, dec) in faces {
        if decorations.insert(key.clone(), dec).is_some() {
            return Err(Error::parse(no, format!("face {key} decorated twice")));
        }
    }
    Ok(CurveDocument {
        diagram: CurveDiagram::new(ribbon, decorations)?,
        extra,
    })
}

pub fn parse_diagram(text: &str) -> Result<CurveDiagram> {
    Ok(parse_document(text, &[])?.diagram)
}

/// Reads the curve part of either a curve file or a lift file.
pub fn parse_base_diagram(text: &str) -> Result<CurveDiagram> {
    Ok(parse_document(text, &["over", "winding"])?.diagram)
}

pub fn write_diagram(d: &CurveDiagram) -> String {
    let mut out = String::new();
    for (id, sign) in d.crossings() {
        out.push_str(&format!("crossing {id} {}\n", sign.as_char()));
    }
    for c in d.components() {
        let word: Vec<String> = c.passages.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!("component {}: {}\n", c.name, word.join(" ")));
    }
    for f in trace_faces(d) {
        out.push_str(&format!("face {} {}\n", f.key, f.decoration));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const FIGURE_EIGHT: &str = "\
# figure-eight curve: one crossing, one component
crossing 1 +
component A: 1a 1b
face 1.0-1.2 puncture
face 1.1 puncture
face 1.3 puncture
";

    const TORUS_PAIR: &str = "\
crossing 1 +
component A: 1a
component B: 1b
face 1.0-1.3-1.2-1.1 puncture
";

    fn ribbon(text_crossings: &[(&str, Sign)], comps: &[(&str, &str)]) -> Result<Ribbon> {
        let crossings = text_crossings
            .iter()
            .map(|(id, s)| (CrossingId::new(*id).unwrap(), *s))
            .collect();
        let components = comps
            .iter()
            .map(|(name, word)| Component {
                name: name.to_string(),
                passages: word.split_whitespace().map(|t| parse_passage(t, 0).unwrap()).collect(),
            })
            .collect();
        Ribbon::new(crossings, components)
    }

    #[test]
    fn one_crossing_file_parses() {
        let d = parse_diagram(FIGURE_EIGHT).unwrap();
        assert_eq!(d.num_crossings(), 1);
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.components()[0].passages.len(), 2);
    }

    #[test]
    fn duplicate_passage_is_rejected() {
        let text = FIGURE_EIGHT.replace("1a 1b", "1a 1a");
        let err = parse_diagram(&text).unwrap_err();
        assert_eq!(err, Error::DuplicatePassage("1a".into()));
        assert!(err.to_string().contains("duplicate passage"));
    }

    #[test]
    fn crossing_multiplicity_is_checked() {
        let err = ribbon(&[("1", Sign::Positive), ("2", Sign::Positive)], &[("A", "1a 1b")]).unwrap_err();
        assert!(matches!(err, Error::CrossingMultiplicity { count: 0, .. }));
        let err = ribbon(&[("1", Sign::Positive)], &[("A", "1a")]).unwrap_err();
        assert!(matches!(err, Error::CrossingMultiplicity { count: 1, .. }));
    }

    #[test]
    fn decoration_errors() {
        let unknown = FIGURE_EIGHT.replace("face 1.1 puncture", "face 1.1 puncture\nface 9.9 disk");
        assert!(matches!(parse_diagram(&unknown), Err(Error::UnknownFace(_))));
        let missing = FIGURE_EIGHT.replace("face 1.3 puncture\n", "");
        assert_eq!(parse_diagram(&missing), Err(Error::UndecoratedFace("1.3".into())));
        let cone = FIGURE_EIGHT.replace("face 1.3 puncture", "face 1.3 cone 1");
        assert_eq!(parse_diagram(&cone), Err(Error::ConeOrder(1)));
        let cone = FIGURE_EIGHT.replace("face 1.3 puncture", "face 1.3 cone 3");
        assert!(parse_diagram(&cone).is_ok());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "crossing 1 +\ncomponent A 1a 1b\n";
        assert_eq!(parse_diagram(bad).unwrap_err().to_string().split(':').next(), Some("line 2"));
        let bad = "crossing 1 *\n";
        assert!(matches!(parse_diagram(bad), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn zero_crossing_components_are_rejected() {
        let err = ribbon(&[], &[("A", "")]).unwrap_err();
        assert_eq!(err, Error::EmptyComponent("A".into()));
    }

    #[test]
    fn figure_eight_traces_three_faces_on_the_sphere() {
        let d = parse_diagram(FIGURE_EIGHT).unwrap();
        let faces = trace_faces(&d);
        let sizes: Vec<usize> = faces.iter().map(|f| f.len()).collect();
        assert_eq!(sizes, vec![2, 1, 1]);
        assert_eq!(faces[0].key.0, "1.0-1.2");
        assert_eq!(genus(&d).unwrap(), 0);
        let r = filling_check(&d);
        assert!(r.is_filling && r.is_taut);
        assert_eq!(r.orbifold_euler, Rational64::from_integer(-1));
    }

    #[test]
    fn torus_pair_traces_a_single_square() {
        let d = parse_diagram(TORUS_PAIR).unwrap();
        let faces = trace_faces(&d);
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 4);
        assert_eq!(genus(&d).unwrap(), 1);
        let r = filling_check(&d);
        assert!(r.is_filling && r.is_taut);
        assert_eq!(r.orbifold_euler, Rational64::from_integer(-1));

        let plain = parse_diagram(&TORUS_PAIR.replace("puncture", "disk")).unwrap();
        let r = filling_check(&plain);
        assert!(!r.is_filling);
        assert_eq!(r.orbifold_euler, Rational64::from_integer(0));
        assert!(r.is_taut);
    }

    #[test]
    fn plain_bigon_is_not_taut() {
        let d = parse_diagram(&FIGURE_EIGHT.replace("face 1.0-1.2 puncture", "face 1.0-1.2 disk")).unwrap();
        let r = filling_check(&d);
        assert!(!r.is_taut);
        assert_eq!(r.offending_faces[0].reason, "bigon");
        assert_eq!(self_intersection(&d), Err(Error::NotTaut));
        assert_eq!(self_intersection(&parse_diagram(FIGURE_EIGHT).unwrap()), Ok(1));
    }

    #[test]
    fn cone_points_enter_the_euler_characteristic() {
        let chi = orbifold_euler(0, [Decoration::Cone(2), Decoration::Cone(3), Decoration::Cone(7)]);
        assert_eq!(chi, Rational64::new(-1, 42));
        let chi = orbifold_euler(0, [Decoration::Cone(2), Decoration::Cone(3), Decoration::Cone(6)]);
        assert_eq!(chi, Rational64::from_integer(0));
    }

    #[test]
    fn sphere_case_has_genus_zero() {
        // two circles on the sphere meeting twice: F - c = 4 - 2 = 2
        let r = ribbon(&[("1", Sign::Positive), ("2", Sign::Negative)], &[("A", "1a 2a"), ("B", "1b 2b")]).unwrap();
        assert_eq!(r.num_faces() as i64 - r.num_crossings() as i64, 2);
        assert_eq!(r.genus().unwrap(), 0);
    }

    #[test]
    fn component_warnings() {
        let words = ["1a", "2a", "1b", "2b"];
        assert!(!is_proper_power(&words));
        assert!(is_proper_power(&["1a", "2a", "1a", "2a"]));
        let r = ribbon(&[("1", Sign::Positive), ("2", Sign::Negative)], &[("A", "1a 2a"), ("B", "2b 1b")]).unwrap();
        let d = CurveDiagram::decorate(r, |_, _| Decoration::Puncture).unwrap();
        let w = validate_components(&d);
        assert_eq!(w.len(), 1);
        assert!(w[0].contains("same cyclic crossing sequence"));
    }

    #[test]
    fn disconnected_diagrams_are_rejected() {
        let r = ribbon(&[("1", Sign::Positive), ("2", Sign::Positive)], &[("A", "1a 1b"), ("B", "2a 2b")]);
        assert_eq!(r.unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn numeric_ids_sort_numerically() {
        let mut ids: Vec<CrossingId> = ["10", "2", "x", "1"].iter().map(|s| CrossingId::new(*s).unwrap()).collect();
        ids.sort();
        let s: Vec<&str> = ids.iter().map(|i| i.as_str()).collect();
        assert_eq!(s, ["1", "2", "10", "x"]);
    }

    #[test]
    fn write_then_parse_is_identity() {
        for text in [FIGURE_EIGHT, TORUS_PAIR] {
            let d = parse_diagram(text).unwrap();
            let again = parse_diagram(&write_diagram(&d)).unwrap();
            assert_eq!(d, again);
        }
    }
}
