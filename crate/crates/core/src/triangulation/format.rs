use super::{CuspLabel, Gluing, IdealTriangulation, Perm};
use crate::curve::lines;
use crate::error::{Error, Result};

pub fn write_tri(t: &IdealTriangulation) -> String {
    let mut out = format!("tri v1\nntet {}\n", t.num_tetrahedra());
    for (tet, faces) in t.gluings.iter().enumerate() {
        for (f, g) in faces.iter().enumerate() {
            if let Some(g) = g {
                out.push_str(&format!("glue {tet} {f} {} {}\n", g.tet, g.perm));
            }
        }
    }
    for (i, c) in t.cusps.iter().enumerate() {
        out.push_str(&format!("cusp {i} {c}\n"));
    }
    out
}

fn parse_perm(s: &str, line: usize) -> Result<Perm> {
    let digits: Vec<u8> = s.bytes().map(|b| b.wrapping_sub(b'0')).collect();
    let perm = match digits[..] {
        [a, b, c, d] => Perm([a, b, c, d]),
        _ => return Err(Error::parse(line, format!("bad permutation {s:?}"))),
    };
    if !perm.is_bijection() {
        return Err(Error::parse(line, format!("bad permutation {s:?}")));
    }
    Ok(perm)
}

fn parse_num(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::parse(line, format!("bad number {s:?}")))
}

/// Reads a triangulation. Every face must be glued, and gluings must be
/// mutually inverse.
pub fn parse_tri(text: &str) -> Result<IdealTriangulation> {
    let mut it = lines(text);
    let mut last_line;
    match it.next() {
        Some(l) if l.keyword == "tri" && l.rest == "v1" => last_line = l.no,
        Some(l) => return Err(Error::parse(l.no, "expected header `tri v1`")),
        None => return Err(Error::parse(1, "empty triangulation file")),
    }
    let n = match it.next() {
        Some(l) if l.keyword == "ntet" => {
            last_line = l.no;
            parse_num(l.rest, l.no)?
        }
        Some(l) => return Err(Error::parse(l.no, "expected `ntet <T>`")),
        None => return Err(Error::parse(last_line + 1, "missing `ntet` line")),
    };
    let mut t = IdealTriangulation {
        gluings: vec![[None; 4]; n],
        cusps: Vec::new(),
    };
    let mut glue_line = vec![[0usize; 4]; n];
    for l in it {
        last_line = l.no;
        let toks: Vec<&str> = l.rest.split_whitespace().collect();
        match (l.keyword, &toks[..]) {
            ("glue", [a, f, b, p]) => {
                let (a, f, b) = (parse_num(a, l.no)?, parse_num(f, l.no)?, parse_num(b, l.no)?);
                if a >= n || b >= n || f > 3 {
                    return Err(Error::parse(l.no, "tetrahedron or face index out of range"));
                }
                if t.gluings[a][f].is_some() {
                    return Err(Error::parse(l.no, format!("face {f} of tetrahedron {a} glued twice")));
                }
                t.gluings[a][f] = Some(Gluing {
                    tet: b,
                    perm: parse_perm(p, l.no)?,
                });
                glue_line[a][f] = l.no;
            }
            ("cusp", [i, label]) => {
                if parse_num(i, l.no)? != t.cusps.len() {
                    return Err(Error::parse(l.no, "cusp indices must be consecutive from 0"));
                }
                let label = CuspLabel::parse(label)
                    .ok_or_else(|| Error::parse(l.no, format!("bad cusp label {label:?}")))?;
                t.cusps.push(label);
            }
            (kw, _) => return Err(Error::parse(l.no, format!("malformed `{kw}` line"))),
        }
    }
    for a in 0..n {
        for f in 0..4 {
            if t.gluings[a][f].is_none() {
                return Err(Error::parse(
                    last_line + 1,
                    format!("unexpected end of input: face {f} of tetrahedron {a} is unglued"),
                ));
            }
        }
    }
    for a in 0..n {
        for f in 0..4 {
            let g = t.gluings[a][f].unwrap();
            let f2 = g.perm.apply(f);
            if t.gluings[g.tet][f2] != Some(Gluing { tet: a, perm: g.perm.inverse() }) {
                return Err(Error::parse(glue_line[a][f], "gluing is not involutive"));
            }
        }
    }
    Ok(t)
}
