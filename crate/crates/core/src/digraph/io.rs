//! Plain-text tree and colouring files.
//!
//! ```text
//! t <order> [root]          c <order> <k> <T|D|G>
//! <tail> <head>             <tail> <head> <colour>
//! ...                       ...
//! ```
//!
//! Blank lines are ignored. Every rejection carries the 1-based line number.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{ColouredDigraph, Colour, HostKind, OrientedTree, TreeError, Vertex, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, f)| !f.is_empty())
}

fn number(line: usize, field: &str, what: &str) -> Result<usize, ParseError> {
    field.parse().map_err(|_| err(line, format!("{what} `{field}` is not a non-negative integer")))
}

pub fn parse_tree(text: &str) -> Result<OrientedTree, ParseError> {
    let mut it = lines(text);
    let (hline, header) = it.next().ok_or_else(|| err(1, "empty tree file"))?;
    if header[0] != "t" || !(2..=3).contains(&header.len()) {
        return Err(err(hline, "expected header `t <order> [root]`"));
    }
    let order = number(hline, header[1], "order")?;
    if order == 0 {
        return Err(err(hline, "order must be positive"));
    }
    let root = header.get(2).map(|r| number(hline, r, "root")).transpose()?;
    if let Some(r) = root {
        if r >= order {
            return Err(err(hline, format!("root {r} is not a vertex")));
        }
    }
    let mut edges = Vec::new();
    let mut line_of: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    let mut last_line = hline;
    for (line, fields) in it {
        last_line = line;
        if fields.len() != 2 {
            return Err(err(line, "expected `<tail> <head>`"));
        }
        let u = number(line, fields[0], "tail")?;
        let v = number(line, fields[1], "head")?;
        for w in [u, v] {
            if w >= order {
                return Err(err(line, format!("vertex {w} out of range for order {order}")));
            }
        }
        if u == v {
            return Err(err(line, format!("loop at {u}")));
        }
        if line_of.insert((u.min(v), u.max(v)), line).is_some() {
            return Err(err(line, format!("pair {u}-{v} repeated (bidirected or duplicate)")));
        }
        edges.push((u, v));
    }
    OrientedTree::new(order, edges, root).map_err(|e| match e {
        TreeError::EdgeCount { .. } => err(last_line, e.to_string()),
        other => err(hline, other.to_string()),
    })
}

pub fn write_tree(tree: &OrientedTree) -> String {
    let mut s = match tree.root() {
        Some(r) => format!("t {} {}\n", tree.order(), r),
        None => format!("t {}\n", tree.order()),
    };
    for &(u, v) in tree.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn parse_colouring(text: &str) -> Result<ColouredDigraph, ParseError> {
    let mut it = lines(text);
    let (hline, header) = it.next().ok_or_else(|| err(1, "empty colouring file"))?;
    if header[0] != "c" || header.len() != 4 {
        return Err(err(hline, "expected header `c <order> <k> <T|D|G>`"));
    }
    let order = number(hline, header[1], "order")?;
    if order == 0 {
        return Err(err(hline, "order must be positive"));
    }
    let k = number(hline, header[2], "colour count")?;
    if k == 0 || k > Colour::MAX as usize {
        return Err(err(hline, format!("colour count {k} outside 1..=255")));
    }
    let kind = HostKind::from_code(header[3])
        .ok_or_else(|| err(hline, format!("kind `{}` is not one of T, D, G", header[3])))?;

    let mut edges = Vec::new();
    let mut line_of: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    for (line, fields) in it {
        if fields.len() != 3 {
            return Err(err(line, "expected `<tail> <head> <colour>`"));
        }
        let u = number(line, fields[0], "tail")?;
        let v = number(line, fields[1], "head")?;
        let c = number(line, fields[2], "colour")?;
        for w in [u, v] {
            if w >= order {
                return Err(err(line, format!("vertex {w} out of range for order {order}")));
            }
        }
        if c == 0 || c > k {
            return Err(err(line, format!("colour {c} outside 1..={k}")));
        }
        if line_of.insert((u, v), line).is_some() {
            return Err(err(line, format!("edge ({u},{v}) coloured twice")));
        }
        edges.push((u, v, c as Colour));
    }
    let host = ColouredDigraph::from_edges(order, k, kind, edges)
        .map_err(|e| err(hline, e.to_string()))?;
    host.validate().map_err(|v| {
        let line = match v {
            Violation::Loop(u) => line_of[&(u, u)],
            Violation::BidirectedInTournament(u, w) => line_of[&(u, w)].max(line_of[&(w, u)]),
            Violation::MissingPair(..) | Violation::MissingReverseEdge(..) => hline,
        };
        err(line, v.to_string())
    })?;
    Ok(host)
}

pub fn write_colouring(host: &ColouredDigraph) -> String {
    let mut s = format!("c {} {} {}\n", host.order(), host.colours(), host.kind().code());
    for (u, v, c) in host.edges() {
        let _ = writeln!(s, "{u} {v} {c}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_roundtrip() {
        let t = OrientedTree::path_from_blocks(&[3, 2], true);
        assert_eq!(parse_tree(&write_tree(&t)).unwrap(), t);
    }

    #[test]
    fn tree_errors_carry_lines() {
        assert_eq!(parse_tree("").unwrap_err().line, 1);
        assert_eq!(parse_tree("t 3\n0 1\n\n1 7\n").unwrap_err().line, 4);
        assert_eq!(parse_tree("t 3\n0 1\n1 0\n").unwrap_err().line, 3);
        assert_eq!(parse_tree("t 3\n0 1\n").unwrap_err().line, 2);
        assert_eq!(parse_tree("x 3\n").unwrap_err().line, 1);
    }

    #[test]
    fn colouring_roundtrip() {
        let h = ColouredDigraph::tournament_from_fn(4, 2, |u, v| (u + v) % 2 == 0, |u, _| (u % 2 + 1) as u8)
            .unwrap();
        assert_eq!(parse_colouring(&write_colouring(&h)).unwrap(), h);
    }

    #[test]
    fn colouring_errors_carry_lines() {
        let e = parse_colouring("c 2 1 T\n0 1 1\n1 0 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("bidirected"));
        let e = parse_colouring("c 2 1 T\n0 1 2\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_colouring("c 3 1 D\n0 1 1\n1 0 1\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert_eq!(parse_colouring("\n\n").unwrap_err().line, 1);
        assert_eq!(parse_colouring("c 2 1 Q\n").unwrap_err().line, 1);
    }
}
