//! Text formats: graphs, colouring certificates, monotone CNF, gadget maps and
//! vertex labels. Every id in a file is 1-based.

use std::fmt::Write as _;

use rolecol_core::sat::{CnfFormula, GadgetMap, MapEntry};
use rolecol_core::{Graph, RoleColouring, RoleGraph};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header `{0}`")]
    MissingHeader(&'static str),
    #[error("header announces {expected} {what}, found {found}")]
    Count { what: &'static str, expected: usize, found: usize },
    #[error("line {line}: literal {literal} is negative; formulas must be monotone")]
    NegativeLiteral { line: usize, literal: i64 },
    #[error(transparent)]
    Graph(#[from] rolecol_core::GraphError),
    #[error(transparent)]
    Reduction(#[from] rolecol_core::ReductionError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn is_comment(line: &str) -> bool {
    line == "c" || line.starts_with("c ") || line.starts_with("c\t")
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, FormatError> {
    tok.and_then(|t| t.parse().ok()).ok_or_else(|| syntax(line, format!("expected {what}")))
}

/// 1-based id to 0-based, checked against `n`.
fn vertex(tok: Option<&str>, line: usize, n: usize) -> Result<usize, FormatError> {
    let v: usize = number(tok, line, "a vertex id")?;
    if v == 0 || v > n {
        return Err(syntax(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Reads `p graph <n> <m>` followed by `e <u> <v>` lines.
pub fn read_graph(text: &str) -> Result<Graph, FormatError> {
    read_graph_lines(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
}

fn read_graph_lines<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Graph, FormatError> {
    let mut header = None;
    let mut edges = Vec::new();
    for (no, raw) in lines {
        let line = raw.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("p") if header.is_none() => {
                if tok.next() != Some("graph") {
                    return Err(syntax(no, "expected `p graph <n> <m>`"));
                }
                let n: usize = number(tok.next(), no, "a vertex count")?;
                let m: usize = number(tok.next(), no, "an edge count")?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or(FormatError::MissingHeader("p graph"))?;
                edges.push((vertex(tok.next(), no, n)?, vertex(tok.next(), no, n)?));
            }
            _ => return Err(syntax(no, format!("unexpected `{line}`"))),
        }
        if tok.next().is_some() {
            return Err(syntax(no, "trailing tokens"));
        }
    }
    let (n, m) = header.ok_or(FormatError::MissingHeader("p graph"))?;
    let g = Graph::from_edges(n, edges)?;
    if g.size() != m {
        return Err(FormatError::Count { what: "edges", expected: m, found: g.size() });
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p graph {} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

const ROLE_MARKER: &str = "c role";

/// `v <vertex> <colour>` lines, then optionally `c role` and the role graph.
pub fn write_colouring(r: &RoleColouring, role: Option<&RoleGraph>) -> String {
    let mut out = String::new();
    for (v, &c) in r.as_slice().iter().enumerate() {
        writeln!(out, "v {} {}", v + 1, c + 1).unwrap();
    }
    if let Some(role) = role {
        out.push_str(ROLE_MARKER);
        out.push('\n');
        out.push_str(&write_graph(role.graph()));
    }
    out
}

pub fn read_colouring(text: &str) -> Result<(RoleColouring, Option<RoleGraph>), FormatError> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut role = None;
    while let Some((no, raw)) = lines.next() {
        let line = raw.trim();
        if line == ROLE_MARKER {
            role = Some(RoleGraph::new(read_graph_lines(&mut lines)?));
            break;
        }
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let mut tok = line.split_whitespace();
        if tok.next() != Some("v") {
            return Err(syntax(no, format!("unexpected `{line}`")));
        }
        let v: usize = number(tok.next(), no, "a vertex id")?;
        let c: usize = number(tok.next(), no, "a colour")?;
        if v == 0 || c == 0 {
            return Err(syntax(no, "ids are 1-based"));
        }
        if tok.next().is_some() {
            return Err(syntax(no, "trailing tokens"));
        }
        pairs.push((v - 1, c - 1));
    }
    pairs.sort_unstable();
    for (i, &(v, _)) in pairs.iter().enumerate() {
        if v != i {
            return Err(syntax(0, format!("vertex {} missing or repeated", i + 1)));
        }
    }
    Ok((RoleColouring::new(pairs.into_iter().map(|(_, c)| c).collect()), role))
}

/// Reads DIMACS CNF with positive literals only. Widths outside 2..=3 are
/// rejected unless `any_width` is set.
pub fn parse_cnf(text: &str, any_width: bool) -> Result<CnfFormula, FormatError> {
    let mut header = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let line = raw.trim();
        if line.is_empty() || is_comment(line) || line == "%" {
            continue;
        }
        if line.starts_with('p') {
            let mut tok = line.split_whitespace().skip(1);
            if header.is_some() || tok.next() != Some("cnf") {
                return Err(syntax(no, "expected a single `p cnf <n> <m>`"));
            }
            let n: usize = number(tok.next(), no, "a variable count")?;
            let m: usize = number(tok.next(), no, "a clause count")?;
            if tok.next().is_some() {
                return Err(syntax(no, "trailing tokens"));
            }
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or(FormatError::MissingHeader("p cnf"))?;
        for t in line.split_whitespace() {
            let lit: i64 = t.parse().map_err(|_| syntax(no, format!("bad literal `{t}`")))?;
            if lit < 0 {
                return Err(FormatError::NegativeLiteral { line: no, literal: lit });
            }
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit as usize > n {
                return Err(syntax(no, format!("variable {lit} outside 1..={n}")));
            } else {
                current.push(lit as usize - 1);
            }
        }
    }
    let (n, m) = header.ok_or(FormatError::MissingHeader("p cnf"))?;
    if !current.is_empty() {
        return Err(syntax(0, "last clause is not terminated by 0"));
    }
    if clauses.len() != m {
        return Err(FormatError::Count { what: "clauses", expected: m, found: clauses.len() });
    }
    Ok(if any_width { CnfFormula::any_width(n, clauses)? } else { CnfFormula::new(n, clauses)? })
}

const TABLES: [&str; 8] =
    ["variable_cycle", "base_cycle", "w_path", "clause", "cycle_c", "cycle_c1", "cycle_c2", "subdivision"];

/// One `<table> <indices...> <vertex>` line per entry, vertex ids 1-based.
pub fn write_map(map: &GadgetMap) -> String {
    let mut out = String::new();
    for (table, indices, id) in map.entries() {
        out.push_str(table);
        for i in indices {
            write!(out, " {i}").unwrap();
        }
        writeln!(out, " {}", id + 1).unwrap();
    }
    out
}

pub fn read_map(k: usize, text: &str) -> Result<GadgetMap, FormatError> {
    let mut entries: Vec<MapEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let line = raw.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let mut tok = line.split_whitespace();
        let name = tok.next().unwrap_or_default();
        let table = TABLES.iter().find(|&&t| t == name).ok_or_else(|| syntax(no, format!("unknown table `{name}`")))?;
        let nums: Vec<usize> = tok
            .map(|t| t.parse().map_err(|_| syntax(no, format!("bad number `{t}`"))))
            .collect::<Result<_, _>>()?;
        let (&id, indices) = nums.split_last().ok_or_else(|| syntax(no, "missing vertex id"))?;
        if id == 0 {
            return Err(syntax(no, "ids are 1-based"));
        }
        entries.push((table, indices.to_vec(), id - 1));
    }
    Ok(GadgetMap::from_entries(k, &entries)?)
}

/// `l <id> <label>` lines.
pub fn write_labels(labels: &[(usize, String)]) -> String {
    let mut sorted: Vec<&(usize, String)> = labels.iter().collect();
    sorted.sort();
    let mut out = String::new();
    for (id, label) in sorted {
        writeln!(out, "l {} {label}", id + 1).unwrap();
    }
    out
}

pub fn read_labels(text: &str) -> Result<Vec<(usize, String)>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let line = raw.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let mut tok = line.split_whitespace();
        if tok.next() != Some("l") {
            return Err(syntax(no, format!("unexpected `{line}`")));
        }
        let id: usize = number(tok.next(), no, "a vertex id")?;
        let label = tok.next().ok_or_else(|| syntax(no, "missing label"))?;
        if id == 0 {
            return Err(syntax(no, "ids are 1-based"));
        }
        out.push((id - 1, label.to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rolecol_core::sat::build_g_phi;
    use rolecol_core::GraphFamily;

    #[test]
    fn graph_round_trip() {
        let g = GraphFamily::PathStarStar(4).build().unwrap();
        let text = write_graph(&g);
        assert_eq!(text, "p graph 4 5\ne 1 1\ne 1 2\ne 2 3\ne 3 4\ne 4 4\n");
        assert_eq!(read_graph(&text).unwrap(), g);
    }

    #[test]
    fn graph_errors() {
        assert_eq!(read_graph("e 1 2\n"), Err(FormatError::MissingHeader("p graph")));
        assert!(matches!(read_graph("p graph 2 1\ne 1 3\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(read_graph("p graph 2 2\ne 1 2\n"), Err(FormatError::Count { .. })));
        assert!(read_graph("c hello\np graph 2 1\n\ne 2 1\n").is_ok());
    }

    #[test]
    fn colouring_round_trip() {
        let r = RoleColouring::new(vec![0, 0, 1, 2, 2, 1]);
        let role = RoleGraph::new(GraphFamily::PathStarStar(3).build().unwrap());
        let text = write_colouring(&r, Some(&role));
        assert!(text.starts_with("v 1 1\nv 2 1\nv 3 2\n"));
        let (back, back_role) = read_colouring(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back_role.unwrap(), role);
        assert!(read_colouring("v 1 1\nv 3 1\n").is_err());
    }

    #[test]
    fn cnf_examples() {
        let f = parse_cnf("p cnf 3 2\n1 2 0\n2 3 0\n", false).unwrap();
        assert_eq!(f.clauses(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(f.occurrences(), vec![1, 2, 1]);
        assert_eq!(parse_cnf("p cnf 1 1\n-1 0\n", false), Err(FormatError::NegativeLiteral { line: 2, literal: -1 }));
        assert_eq!(parse_cnf("p cnf 2 1\n1 2 0\n", false).unwrap().clauses(), &[vec![0, 1]]);
        assert!(parse_cnf("p cnf 4 1\n1 2 3 4 0\n", false).is_err());
        assert!(parse_cnf("p cnf 4 1\n1 2 3 4 0\n", true).is_ok());
        assert!(parse_cnf("p cnf 2 1\n1 2\n", false).is_err());
        assert!(parse_cnf("1 2 0\n", false).is_err());
    }

    #[test]
    fn map_round_trip() {
        let f = parse_cnf("p cnf 3 2\n1 2 0\n2 3 0\n", false).unwrap();
        let (g, map) = build_g_phi(&f, 3).unwrap();
        let text = write_map(&map);
        assert_eq!(text.lines().count(), g.order());
        assert!(text.starts_with("variable_cycle 1 1 "));
        assert_eq!(read_map(3, &text).unwrap(), map);
    }

    #[test]
    fn labels_round_trip() {
        let labels = vec![(3, "1010".to_string()), (0, "0000".to_string())];
        let text = write_labels(&labels);
        assert_eq!(text, "l 1 0000\nl 4 1010\n");
        let mut back = read_labels(&text).unwrap();
        back.sort();
        assert_eq!(back, vec![(0, "0000".to_string()), (3, "1010".to_string())]);
    }
}
