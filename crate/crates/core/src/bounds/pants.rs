//! Arcs of a multi-curve cut along a pants decomposition.

use std::collections::HashSet;

use super::words::{canonical_arc_class, ArcClass, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub i: u8,
    pub j: u8,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pants {
    pub name: String,
    pub arcs: Vec<Arc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PantsArcs {
    pub pants: Vec<Pants>,
}

fn boundary_index(tok: &str, line: usize) -> Result<u8> {
    match tok {
        "1" => Ok(1),
        "2" => Ok(2),
        "3" => Ok(3),
        _ => Err(Error::parse(line, format!("boundary index {tok:?} not in 1..3"))),
    }
}

pub fn parse_pants_arcs(text: &str) -> Result<PantsArcs> {
    let mut out = PantsArcs::default();
    for line in crate::curve::lines(text) {
        let toks: Vec<&str> = line.rest.split_whitespace().collect();
        match (line.keyword, &toks[..]) {
            ("pants", [name]) => out.pants.push(Pants {
                name: name.to_string(),
                arcs: Vec::new(),
            }),
            ("arc", [i, j, word]) => {
                let arc = Arc {
                    i: boundary_index(i, line.no)?,
                    j: boundary_index(j, line.no)?,
                    word: Word::parse(word)?,
                };
                out.pants
                    .last_mut()
                    .ok_or_else(|| Error::parse(line.no, "arc before any pants line"))?
                    .arcs
                    .push(arc);
            }
            (kw, _) => return Err(Error::parse(line.no, format!("malformed `{kw}` line"))),
        }
    }
    Ok(out)
}

pub fn write_pants_arcs(p: &PantsArcs) -> String {
    let mut out = String::new();
    for pants in &p.pants {
        out.push_str(&format!("pants {}\n", pants.name));
        for a in &pants.arcs {
            out.push_str(&format!("arc {} {} {}\n", a.i, a.j, a.word.to_token()));
        }
    }
    out
}

/// Number of distinct arc classes in each pants.
pub fn count_classes(p: &PantsArcs) -> Vec<usize> {
    p.pants
        .iter()
        .map(|pants| {
            pants
                .arcs
                .iter()
                .map(|a| canonical_arc_class(&a.word, a.i, a.j).expect("validated arc"))
                .collect::<HashSet<ArcClass>>()
                .len()
        })
        .collect()
}

/// The six classes of simple essential arcs in a pair of pants.
pub fn six_simple_classes() -> Vec<ArcClass> {
    let raw = [(1, 2, ""), (1, 3, ""), (2, 3, ""), (1, 1, "B"), (2, 2, "A"), (3, 3, "A")];
    raw.iter()
        .map(|&(i, j, w)| canonical_arc_class(&Word::parse(w).unwrap(), i, j).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_collapse() {
        let p = parse_pants_arcs("pants P\narc 1 2 -\narc 1 2 -\n").unwrap();
        assert_eq!(count_classes(&p), vec![1]);
    }

    #[test]
    fn six_classes_are_distinct_single_letters() {
        let six = six_simple_classes();
        assert_eq!(six.len(), 6);
        assert_eq!(six.iter().collect::<HashSet<_>>().len(), 6);
        for c in &six {
            assert!(c.word.len() <= 1);
            if c.i == c.j {
                assert_eq!(c.word.len(), 1);
            }
        }
        let mut file = String::from("pants P\n");
        for c in &six {
            file.push_str(&format!("arc {} {} {}\n", c.i, c.j, c.word.to_token()));
        }
        assert_eq!(count_classes(&parse_pants_arcs(&file).unwrap()), vec![6]);
    }

    #[test]
    fn round_trip_and_errors() {
        let text = "pants P\narc 1 1 B\narc 2 3 -\npants Q\narc 3 3 ABa\n";
        let p = parse_pants_arcs(text).unwrap();
        assert_eq!(write_pants_arcs(&p), text);
        assert!(matches!(parse_pants_arcs("arc 1 2 -\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_pants_arcs("pants P\narc 1 4 -\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_pants_arcs("pants P\narc 1 2 Aa\n"), Err(Error::MalformedWord(_))));
    }
}
