//! Text formats for ribbon graphs (`.rg`) and arrow presentations (`.ap`).
//!
//! ```text
//! rg 1
//! # annulus
//! v 0 : 1 2
//! e 0 : 1 2 + 0
//! ```
//!
//! ```text
//! ap 1
//! cycle : 1+ 1+
//! sign 1 +
//! ```
//!
//! `#` starts a comment. Tokens are whitespace separated; `:` may touch its
//! neighbours.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::arrow::{Arrow, ArrowPresentation, Direction};
use crate::error::{Error, Result};
use crate::ribbon::{Edge, RibbonGraph, Sign, Vertex};

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Syntax { line, message: message.into() })
}

/// Significant lines as `(1-based line number, tokens)`.
fn lines(text: &str, first_line: usize) -> Vec<(usize, Vec<String>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let tokens: Vec<String> = body.replace(':', " : ").split_whitespace().map(str::to_owned).collect();
            (!tokens.is_empty()).then_some((first_line + i, tokens))
        })
        .collect()
}

fn number(line: usize, tok: &str, what: &str) -> Result<u32> {
    tok.parse::<u32>().or_else(|_| syntax(line, format!("bad {what} '{tok}'")))
}

fn sign(line: usize, tok: &str) -> Result<Sign> {
    match tok {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        _ => syntax(line, format!("bad sign '{tok}'")),
    }
}

fn header(lines: &[(usize, Vec<String>)], magic: &str) -> Result<()> {
    match lines.first() {
        Some((_, t)) if t.len() == 2 && t[0] == magic && t[1] == "1" => Ok(()),
        Some((l, _)) => syntax(*l, format!("expected header '{magic} 1'")),
        None => syntax(1, format!("empty input, expected header '{magic} 1'")),
    }
}

fn expect_colon(line: usize, tokens: &[String]) -> Result<()> {
    if tokens.get(2).map(String::as_str) != Some(":") {
        return syntax(line, "expected ':' after the id");
    }
    Ok(())
}

pub fn parse_rg(text: &str) -> Result<RibbonGraph> {
    parse_rg_at(text, 1)
}

fn parse_rg_at(text: &str, first_line: usize) -> Result<RibbonGraph> {
    let lines = lines(text, first_line);
    header(&lines, "rg")?;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut dart_vertex_line: HashMap<u32, usize> = HashMap::new();
    let mut dart_edge_line: HashMap<u32, usize> = HashMap::new();
    let mut vertex_ids: HashMap<u32, usize> = HashMap::new();
    let mut edge_ids: HashMap<u32, usize> = HashMap::new();
    for (line, t) in &lines[1..] {
        let line = *line;
        match t[0].as_str() {
            "v" => {
                if t.len() < 3 {
                    return syntax(line, "vertex line needs 'v <id> :'");
                }
                let id = number(line, &t[1], "vertex id")?;
                expect_colon(line, t)?;
                if let Some(prev) = vertex_ids.insert(id, line) {
                    return syntax(line, format!("vertex {id} already defined on line {prev}"));
                }
                let mut rotation = Vec::with_capacity(t.len() - 3);
                for tok in &t[3..] {
                    let d = number(line, tok, "dart")?;
                    if d == 0 {
                        return syntax(line, "dart ids are positive");
                    }
                    if let Some(prev) = dart_vertex_line.insert(d, line) {
                        return syntax(line, format!("dart {d} already placed at a vertex on line {prev}"));
                    }
                    rotation.push(d);
                }
                vertices.push(Vertex { id, rotation });
            }
            "e" => {
                if t.len() != 7 {
                    return syntax(line, "edge line needs 'e <id> : <dart> <dart> <sign> <twist>'");
                }
                let id = number(line, &t[1], "edge id")?;
                expect_colon(line, t)?;
                if let Some(prev) = edge_ids.insert(id, line) {
                    return syntax(line, format!("edge {id} already defined on line {prev}"));
                }
                let a = number(line, &t[3], "dart")?;
                let b = number(line, &t[4], "dart")?;
                if a == 0 || b == 0 {
                    return syntax(line, "dart ids are positive");
                }
                if a == b {
                    return syntax(line, format!("edge {id} uses dart {a} twice"));
                }
                for d in [a, b] {
                    if let Some(prev) = dart_edge_line.insert(d, line) {
                        return syntax(line, format!("dart {d} already on an edge on line {prev}"));
                    }
                }
                let sign = sign(line, &t[5])?;
                let twist = match t[6].as_str() {
                    "0" => false,
                    "1" => true,
                    other => return syntax(line, format!("bad twist '{other}'")),
                };
                edges.push(Edge { id, darts: [a, b], sign, twist });
            }
            other => return syntax(line, format!("unknown record '{other}'")),
        }
    }
    for (d, line) in &dart_vertex_line {
        if !dart_edge_line.contains_key(d) {
            return syntax(*line, format!("dart {d} is not on any edge"));
        }
    }
    for (d, line) in &dart_edge_line {
        if !dart_vertex_line.contains_key(d) {
            return syntax(*line, format!("dart {d} is not at any vertex"));
        }
    }
    RibbonGraph::new(vertices, edges)
}

/// Parse a stream of `.rg` documents, each starting with its header line.
pub fn parse_rg_many(text: &str) -> Result<Vec<RibbonGraph>> {
    let mut docs: Vec<(usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if body.split_whitespace().next() == Some("rg") || docs.is_empty() {
            docs.push((i + 1, String::new()));
        }
        let doc = &mut docs.last_mut().unwrap().1;
        doc.push_str(raw);
        doc.push('\n');
    }
    docs.iter().filter(|(_, d)| !lines(d, 1).is_empty()).map(|(first, d)| parse_rg_at(d, *first)).collect()
}

/// Canonical text of `graph` (see [`RibbonGraph::canonical`]).
pub fn serialize_rg(graph: &RibbonGraph) -> String {
    let g = graph.canonical();
    let mut out = String::from("rg 1\n");
    for v in g.vertices() {
        let _ = write!(out, "v {} :", v.id);
        for d in &v.rotation {
            let _ = write!(out, " {d}");
        }
        out.push('\n');
    }
    for e in g.edges() {
        let _ = writeln!(out, "e {} : {} {} {} {}", e.id, e.darts[0], e.darts[1], e.sign, e.twist as u8);
    }
    out
}

pub fn parse_ap(text: &str) -> Result<ArrowPresentation> {
    let lines = lines(text, 1);
    header(&lines, "ap")?;
    let mut cycles = Vec::new();
    let mut signs = BTreeMap::new();
    let mut count: HashMap<u32, (usize, usize)> = HashMap::new();
    for (line, t) in &lines[1..] {
        let line = *line;
        match t[0].as_str() {
            "cycle" => {
                if t.get(1).map(String::as_str) != Some(":") {
                    return syntax(line, "expected 'cycle :'");
                }
                let mut cycle = Vec::with_capacity(t.len() - 2);
                for tok in &t[2..] {
                    let (label, dir) = tok.split_at(tok.len().saturating_sub(1));
                    let direction = match dir {
                        "+" => Direction::Forward,
                        "-" => Direction::Backward,
                        _ => return syntax(line, format!("arrow '{tok}' needs a direction suffix + or -")),
                    };
                    let label = number(line, label, "label")?;
                    let c = count.entry(label).or_insert((0, line));
                    c.0 += 1;
                    if c.0 > 2 {
                        return syntax(line, format!("label {label} occurs more than twice"));
                    }
                    cycle.push(Arrow { label, direction });
                }
                cycles.push(cycle);
            }
            "sign" => {
                if t.len() != 3 {
                    return syntax(line, "sign line needs 'sign <label> <+|->'");
                }
                let label = number(line, &t[1], "label")?;
                if signs.insert(label, sign(line, &t[2])?).is_some() {
                    return syntax(line, format!("label {label} signed twice"));
                }
            }
            other => return syntax(line, format!("unknown record '{other}'")),
        }
    }
    let mut pending: Vec<_> = count.iter().filter(|(_, (n, _))| *n != 2).collect();
    pending.sort();
    if let Some((label, (_, line))) = pending.first() {
        return syntax(*line, format!("label {label} occurs once"));
    }
    ArrowPresentation::new(cycles, signs)
}

pub fn serialize_ap(ap: &ArrowPresentation) -> String {
    let mut out = String::from("ap 1\n");
    for cycle in &ap.cycles {
        out.push_str("cycle :");
        for a in cycle {
            let _ = write!(out, " {}{}", a.label, a.direction.symbol());
        }
        out.push('\n');
    }
    for (label, sign) in &ap.signs {
        let _ = writeln!(out, "sign {label} {sign}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow::from_arrow_presentation;

    const ANNULUS: &str = "rg 1\n# annulus\nv 0 : 1 2\n\ne 0 : 1 2 + 0\n";

    #[test]
    fn annulus() {
        let g = parse_rg(ANNULUS).unwrap();
        assert_eq!(g.boundary_count(), 2);
        assert_eq!(serialize_rg(&g), "rg 1\nv 0 : 1 2\ne 0 : 1 2 + 0\n");
    }

    #[test]
    fn tight_colons() {
        let g = parse_rg("rg 1\nv 0: 1 2\ne 0 :1 2 - 1").unwrap();
        assert!(g.edges()[0].twist);
        assert_eq!(g.edges()[0].sign, Sign::Minus);
    }

    #[test]
    fn semantic_errors_carry_lines() {
        let cases = [
            ("rg 1\nv 0 : 3 1\nv 1 : 3 2\ne 0 : 1 2 + 0", 3),
            ("rg 1\nv 0 : 1 2 3\ne 0 : 1 2 + 0", 2),
            ("rg 1\nv 0 : 1 2\ne 0 : 1 2 * 0", 3),
            ("rg 1\nv 0 : 1 2\ne 0 : 1 2 + 2", 3),
            ("rg 2\nv 0 :", 1),
            ("rg 1\nx 0 :", 2),
            ("rg 1\nv 0 : 1 2\ne 0 : 1 2 +", 3),
            ("rg 1\nv 0 : 1\ne 0 : 1 2 + 0", 3),
        ];
        for (text, want) in cases {
            match parse_rg(text) {
                Err(Error::Syntax { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn many_documents() {
        let text = format!("{ANNULUS}\nrg 1\nv 3 :\n");
        let gs = parse_rg_many(&text).unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[1].num_vertices(), 1);
        match parse_rg_many("rg 1\nv 0 :\nrg 1\nv 0 : 9\n") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn arrow_presentations() {
        let ap = parse_ap("ap 1\ncycle : 1+ 1+\nsign 1 +\n").unwrap();
        let g = from_arrow_presentation(&ap).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 1));
        assert_eq!(serialize_ap(&ap), "ap 1\ncycle : 1+ 1+\nsign 1 +\n");
        assert_eq!(parse_ap(&serialize_ap(&ap)).unwrap(), ap);
        assert!(matches!(parse_ap("ap 1\ncycle : 1+\nsign 1 +"), Err(Error::Syntax { line: 2, .. })));
        assert!(parse_ap("ap 1\ncycle : 1+ 1+").is_err());
        assert!(parse_ap("ap 1\ncycle : 1 1+\nsign 1 +").is_err());
        assert!(parse_ap("ap 1\ncycle :\n").unwrap().cycles[0].is_empty());
    }
}
