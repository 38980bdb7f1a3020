//! Tree file parsing: the line-oriented edge-list format and Newick with
//! branch lengths.
//!
//! ```text
//! # Y-tree
//! vertex r root
//! edge r v 1
//! edge v a 1
//! edge v b 2
//! ```
//!
//! The same tree in Newick is `((a:1,b:2)v:1)r;`.

use std::collections::HashSet;

use thiserror::Error;

use super::skeleton::{TreeError, TreeSkeleton};
use crate::rational::{parse_rational, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("newick: {0}")]
    Newick(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Parses either format; Newick is recognized by a leading `(` or a
/// trailing `;`.
pub fn parse_tree(text: &str) -> Result<TreeSkeleton, ParseError> {
    let trimmed = strip_comments(text);
    let trimmed = trimmed.trim();
    if trimmed.starts_with('(') || trimmed.ends_with(';') {
        parse_newick(trimmed)
    } else {
        parse_edge_list(text)
    }
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn parse_edge_list(text: &str) -> Result<TreeSkeleton, ParseError> {
    let mut root: Option<String> = None;
    let mut declared = HashSet::new();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let syntax = |message: &str| ParseError::Syntax {
            line,
            message: message.to_string(),
        };
        match tokens.as_slice() {
            [] => {}
            ["vertex", name, rest @ ..] => {
                if !declared.insert(name.to_string()) {
                    return Err(TreeError::DuplicateVertex(name.to_string()).into());
                }
                match rest {
                    [] => {}
                    ["root"] => {
                        if let Some(prev) = &root {
                            return Err(
                                TreeError::MultipleRoots(prev.clone(), name.to_string()).into()
                            );
                        }
                        root = Some(name.to_string());
                    }
                    _ => return Err(syntax("expected `vertex <name> [root]`")),
                }
                vertices.push(name.to_string());
            }
            ["edge", a, b, length] => {
                let length = parse_rational(length).map_err(|e| syntax(&e.to_string()))?;
                edges.push((a.to_string(), b.to_string(), length));
            }
            ["edge", ..] => return Err(syntax("expected `edge <name1> <name2> <length>`")),
            [other, ..] => return Err(syntax(&format!("unknown directive `{other}`"))),
        }
    }
    let root = root.ok_or(TreeError::MissingRoot)?;
    Ok(TreeSkeleton::new(&root, vertices, edges)?)
}

struct NewickParser {
    chars: Vec<char>,
    pos: usize,
    edges: Vec<(String, String, Q)>,
    names: Vec<String>,
    // every token in the input; auto-generated names avoid these
    reserved: HashSet<String>,
    seen: HashSet<String>,
    auto: usize,
}

impl NewickParser {
    fn peek(&mut self) -> Option<char> {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn err(&self, message: &str) -> ParseError {
        ParseError::Newick(format!("{message} at offset {}", self.pos))
    }

    fn token(&mut self) -> String {
        self.peek();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|&c| !"(),:;".contains(c) && !c.is_whitespace())
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn fresh_name(&mut self) -> String {
        loop {
            self.auto += 1;
            let name = format!("_{}", self.auto);
            if !self.reserved.contains(&name) {
                return name;
            }
        }
    }

    /// Parses one subtree; returns its name and optional branch length.
    fn subtree(&mut self) -> Result<(String, Option<Q>), ParseError> {
        let mut kids = Vec::new();
        if self.peek() == Some('(') {
            self.pos += 1;
            loop {
                kids.push(self.subtree()?);
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected `,` or `)`")),
                }
            }
        }
        let label = self.token();
        let name = if label.is_empty() {
            if kids.is_empty() {
                return Err(self.err("unlabelled leaf"));
            }
            self.fresh_name()
        } else {
            if !self.seen.insert(label.clone()) {
                return Err(TreeError::DuplicateVertex(label).into());
            }
            label
        };
        let length = if self.peek() == Some(':') {
            self.pos += 1;
            let lit = self.token();
            Some(parse_rational(&lit).map_err(|e| ParseError::Newick(e.to_string()))?)
        } else {
            None
        };
        for (kid, len) in kids {
            let len = len
                .ok_or_else(|| ParseError::Newick(format!("missing branch length for `{kid}`")))?;
            self.edges.push((name.clone(), kid, len));
        }
        self.names.push(name.clone());
        Ok((name, length))
    }
}

pub fn parse_newick(text: &str) -> Result<TreeSkeleton, ParseError> {
    let mut p = NewickParser {
        chars: text.chars().collect(),
        pos: 0,
        edges: Vec::new(),
        names: Vec::new(),
        reserved: text
            .split(|c: char| "(),:;".contains(c) || c.is_whitespace())
            .map(str::to_string)
            .collect(),
        seen: HashSet::new(),
        auto: 0,
    };
    let (root, _) = p.subtree()?;
    if p.peek() != Some(';') {
        return Err(p.err("expected `;`"));
    }
    p.pos += 1;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(TreeSkeleton::new(&root, p.names, p.edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Y: &str = "# Y-tree\nvertex r root\nedge r v 1\nedge v a 1\nedge v b 2\n";

    #[test]
    fn parses_y_tree() {
        let t = parse_tree(Y).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (4, 3));
        assert_eq!(t.name(t.root()), "r");
    }

    #[test]
    fn single_vertex() {
        let t = parse_tree("vertex r root").unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (1, 0));
    }

    #[test]
    fn newick_matches_edge_list() {
        assert_eq!(
            parse_tree("((a:1,b:2)v:1)r;").unwrap(),
            parse_tree(Y).unwrap()
        );
        assert_eq!(
            parse_tree(" ( (a:1 , b:2/1) v:1 ) r ; ").unwrap(),
            parse_tree(Y).unwrap()
        );
        assert_eq!(parse_tree("r;").unwrap().vertex_count(), 1);
    }

    #[test]
    fn newick_names_unlabelled_internal_nodes() {
        let t = parse_tree("((a:1,b:1):1,c:2)r;").unwrap();
        assert_eq!(t.vertex_count(), 5);
        assert!(t.vertex("_1").is_some());
    }

    #[test]
    fn rejections() {
        let dup = "vertex r root\nedge r v 1\nedge v r 2\n";
        assert!(matches!(
            parse_tree(dup),
            Err(ParseError::Tree(TreeError::DuplicateEdge(..)))
        ));
        assert!(matches!(
            parse_tree("vertex r\nedge r v 1\n"),
            Err(ParseError::Tree(TreeError::MissingRoot))
        ));
        assert!(matches!(
            parse_tree("vertex r root\nedge r v -1\n"),
            Err(ParseError::Tree(TreeError::NonPositiveLength(..)))
        ));
        assert!(matches!(
            parse_tree("vertex r root\nvertex x\nedge r v 1\n"),
            Err(ParseError::Tree(TreeError::Disconnected(_)))
        ));
        assert!(matches!(
            parse_tree("vertex r root\nedge r a 1\nedge a b 1\nedge b r 1\n"),
            Err(ParseError::Tree(TreeError::Cycle(..)))
        ));
        assert!(matches!(
            parse_tree("vertex r root\nvertex s root\n"),
            Err(ParseError::Tree(TreeError::MultipleRoots(..)))
        ));
        assert!(matches!(
            parse_tree("vertex r root\nedge r v\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_tree("((a,b:1)v:1)r;"),
            Err(ParseError::Newick(_))
        ));
        assert!(matches!(
            parse_tree("(a:1,a:2)r;"),
            Err(ParseError::Tree(_))
        ));
        assert!(matches!(
            parse_tree("(a:1,b:0)r;"),
            Err(ParseError::Tree(_))
        ));
    }

    #[test]
    fn serialization_round_trips() {
        let t = parse_tree("((a:1/2,b:2)v:3/4,c:5)r;").unwrap();
        assert_eq!(parse_tree(&t.to_string()).unwrap(), t);
    }
}
