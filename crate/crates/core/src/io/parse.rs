//! Graph ingestion: edge lists, a strict DOT subset, and JSON.

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::{Label, SimplicialGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Edgelist,
    Dot,
    Json,
}

impl GraphFormat {
    /// Guesses the format from a file name; anything unrecognised is an edge list.
    pub fn from_path(path: &str) -> GraphFormat {
        let lower = path.to_ascii_lowercase();
        if lower.ends_with(".json") {
            GraphFormat::Json
        } else if lower.ends_with(".dot") || lower.ends_with(".gv") {
            GraphFormat::Dot
        } else {
            GraphFormat::Edgelist
        }
    }
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" => Ok(GraphFormat::Edgelist),
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            _ => Err(Error::BadParams(format!("unknown graph format `{s}`"))),
        }
    }
}

impl fmt::Display for GraphFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphFormat::Edgelist => "edgelist",
            GraphFormat::Dot => "dot",
            GraphFormat::Json => "json",
        })
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<SimplicialGraph> {
    match format {
        GraphFormat::Edgelist => parse_edgelist(text),
        GraphFormat::Dot => parse_dot(text),
        GraphFormat::Json => parse_json(text),
    }
}

fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '#' | '\'')
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// One `u w` pair (or a lone vertex) per line. `#` starts a comment when it
/// begins a token, so labels such as `s#2` stay intact.
fn parse_edgelist(text: &str) -> Result<SimplicialGraph> {
    let mut g = SimplicialGraph::new();
    for (ln, line) in text.lines().enumerate() {
        let mut tokens: Vec<(usize, &str)> = Vec::new();
        let mut start = None;
        for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            if c.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s, &line[s..i]));
                }
            } else if start.is_none() {
                if c == '#' {
                    break;
                }
                start = Some(i);
            }
        }
        if let Some(s) = start {
            tokens.push((s, &line[s..]));
        }
        for &(col, tok) in &tokens {
            if let Some(off) = tok.find(|c| !is_label_char(c)) {
                return Err(parse_err(ln + 1, col + off + 1, format!("invalid character in label `{tok}`")));
            }
        }
        match tokens.as_slice() {
            [] => {}
            [(_, v)] => g.insert_vertex(v.to_string()),
            [(_, u), (_, w)] => {
                g.insert_vertex(u.to_string());
                g.insert_vertex(w.to_string());
                g.insert_edge(u.to_string(), w.to_string())?;
            }
            [_, _, (col, _), ..] => return Err(parse_err(ln + 1, col + 1, "expected at most two labels per line")),
        }
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Id(String),
    Sym(char),
    EdgeOp,
    DirectedOp,
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { chars: src.chars().collect(), pos: 0, line: 1, col: 1, _src: src }
    }

    fn bump(&mut self) -> Option<char> {
        let c = *self.chars.get(self.pos)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn tokens(mut self) -> Result<Vec<(usize, usize, Tok)>> {
        let mut out = Vec::new();
        while let Some(c) = self.peek(0) {
            let (line, col) = (self.line, self.col);
            if c.is_whitespace() {
                self.bump();
            } else if c == '/' && self.peek(1) == Some('/') {
                while self.peek(0).is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c == '/' && self.peek(1) == Some('*') {
                self.bump();
                self.bump();
                loop {
                    match self.peek(0) {
                        None => return Err(parse_err(line, col, "unterminated comment")),
                        Some('*') if self.peek(1) == Some('/') => {
                            self.bump();
                            self.bump();
                            break;
                        }
                        _ => {
                            self.bump();
                        }
                    }
                }
            } else if c == '-' && self.peek(1) == Some('-') {
                self.bump();
                self.bump();
                out.push((line, col, Tok::EdgeOp));
            } else if c == '-' && self.peek(1) == Some('>') {
                self.bump();
                self.bump();
                out.push((line, col, Tok::DirectedOp));
            } else if c == '"' {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(parse_err(line, col, "unterminated string")),
                        Some('"') => break,
                        Some(ch) => s.push(ch),
                    }
                }
                out.push((line, col, Tok::Id(s)));
            } else if is_label_char(c) || c == '.' || c == '-' {
                let mut s = String::new();
                while let Some(ch) = self.peek(0) {
                    if is_label_char(ch) || ch == '.' || (ch == '-' && s.is_empty()) {
                        s.push(ch);
                        self.bump();
                    } else {
                        break;
                    }
                }
                out.push((line, col, Tok::Id(s)));
            } else if matches!(c, '{' | '}' | '[' | ']' | ';' | ',' | '=') {
                self.bump();
                out.push((line, col, Tok::Sym(c)));
            } else {
                return Err(parse_err(line, col, format!("unexpected character `{c}`")));
            }
        }
        Ok(out)
    }
}

/// Undirected `graph { ... }` with edge chains, node statements and ignored
/// attributes. Directed graphs and subgraphs are rejected.
fn parse_dot(text: &str) -> Result<SimplicialGraph> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = DotParser { toks, i: 0, end: end_of(text) };
    p.graph()
}

fn end_of(text: &str) -> (usize, usize) {
    let line = text.lines().count().max(1);
    let col = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

struct DotParser {
    toks: Vec<(usize, usize, Tok)>,
    i: usize,
    end: (usize, usize),
}

impl DotParser {
    fn here(&self) -> (usize, usize) {
        self.toks.get(self.i).map_or(self.end, |t| (t.0, t.1))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (l, c) = self.here();
        parse_err(l, c, msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.2)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.i).map(|t| t.2.clone());
        self.i += 1;
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.i += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected `{c}`"))),
        }
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Id(s)) if s.eq_ignore_ascii_case(kw))
    }

    fn graph(&mut self) -> Result<SimplicialGraph> {
        if self.keyword("strict") {
            self.i += 1;
        }
        if self.keyword("digraph") {
            return Err(self.err("directed graphs are not supported"));
        }
        if !self.keyword("graph") {
            return Err(self.err("expected `graph`"));
        }
        self.i += 1;
        if let Some(Tok::Id(_)) = self.peek() {
            self.i += 1;
        }
        self.expect_sym('{')?;
        let mut g = SimplicialGraph::new();
        loop {
            match self.peek() {
                None => return Err(self.err("expected `}`")),
                Some(Tok::Sym('}')) => {
                    self.i += 1;
                    break;
                }
                Some(Tok::Sym(';')) => self.i += 1,
                _ => self.statement(&mut g)?,
            }
        }
        if self.peek().is_some() {
            return Err(self.err("unexpected content after graph body"));
        }
        Ok(g)
    }

    fn statement(&mut self, g: &mut SimplicialGraph) -> Result<()> {
        if self.keyword("subgraph") || matches!(self.peek(), Some(Tok::Sym('{'))) {
            return Err(self.err("subgraphs are not supported"));
        }
        if self.keyword("graph") || self.keyword("node") || self.keyword("edge") {
            self.i += 1;
            return self.attributes();
        }
        let first = self.id()?;
        if let Some(Tok::Sym('=')) = self.peek() {
            self.i += 1;
            self.id()?;
            return Ok(());
        }
        let mut chain = vec![first];
        loop {
            match self.peek() {
                Some(Tok::EdgeOp) => {
                    self.i += 1;
                    chain.push(self.id()?);
                }
                Some(Tok::DirectedOp) => return Err(self.err("directed edge in undirected graph")),
                _ => break,
            }
        }
        self.attributes()?;
        for (_, _, v) in &chain {
            g.insert_vertex(v.clone());
        }
        for w in chain.windows(2) {
            let ((l, c, u), (_, _, v)) = (&w[0], &w[1]);
            g.insert_edge(u.clone(), v.clone()).map_err(|e| match e {
                Error::SelfLoop(_) | Error::DuplicateEdge(..) => e,
                other => parse_err(*l, *c, other.to_string()),
            })?;
        }
        Ok(())
    }

    fn id(&mut self) -> Result<(usize, usize, Label)> {
        let (l, c) = self.here();
        match self.next() {
            Some(Tok::Id(s)) => {
                if s.is_empty() || !s.chars().all(is_label_char) {
                    return Err(parse_err(l, c, format!("invalid label `{s}`")));
                }
                Ok((l, c, s))
            }
            _ => {
                self.i -= 1;
                Err(self.err("expected a vertex label"))
            }
        }
    }

    fn attributes(&mut self) -> Result<()> {
        while let Some(Tok::Sym('[')) = self.peek() {
            self.i += 1;
            loop {
                match self.next() {
                    Some(Tok::Sym(']')) => break,
                    Some(Tok::Id(_)) | Some(Tok::Sym('=')) | Some(Tok::Sym(',')) | Some(Tok::Sym(';')) => {}
                    _ => {
                        self.i -= 1;
                        return Err(self.err("malformed attribute list"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    vertices: Vec<Label>,
    edges: Vec<[Label; 2]>,
}

fn parse_json(text: &str) -> Result<SimplicialGraph> {
    let raw: RawGraph = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
    let mut g = SimplicialGraph::new();
    for v in &raw.vertices {
        if v.is_empty() || !v.chars().all(is_label_char) {
            let (l, c) = locate(text, v, 0);
            return Err(parse_err(l, c, format!("invalid label `{v}`")));
        }
        g.insert_vertex(v.clone());
    }
    let edges_at = text.find("\"edges\"").unwrap_or(0);
    for [u, w] in raw.edges {
        for x in [&u, &w] {
            if !g.contains(x) {
                let (l, c) = locate(text, x, edges_at);
                return Err(parse_err(l, c, format!("edge endpoint `{x}` is not a listed vertex")));
            }
        }
        g.insert_edge(u, w)?;
    }
    Ok(g)
}

/// Line and column of the first quoted occurrence of `label` at or after `from`.
fn locate(text: &str, label: &str, from: usize) -> (usize, usize) {
    let needle = format!("\"{label}\"");
    let at = text[from..].find(&needle).map_or(from, |i| i + from);
    let before = &text[..at];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Edge-list text for `g`: isolated vertices on their own line, then edges.
pub fn to_edgelist(g: &SimplicialGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        if g.degree(v).unwrap_or(0) == 0 {
            out.push_str(v);
            out.push('\n');
        }
    }
    for (u, w) in g.edges() {
        out.push_str(&format!("{u} {w}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgelist_basics() {
        let g = parse_graph("a b\nb c", GraphFormat::Edgelist).unwrap();
        assert_eq!(g, SimplicialGraph::from_edges([("a", "b"), ("b", "c")]).unwrap());
        let g = parse_graph("# header\ns#1 t' # trailing\n\nlonely\n", GraphFormat::Edgelist).unwrap();
        assert!(g.has_edge("s#1", "t'") && g.contains("lonely"));
        assert_eq!(parse_graph("a a", GraphFormat::Edgelist), Err(Error::SelfLoop("a".into())));
        assert!(matches!(parse_graph("a b\nb a", GraphFormat::Edgelist), Err(Error::DuplicateEdge(..))));
        assert!(matches!(
            parse_graph("a b\nc d e", GraphFormat::Edgelist),
            Err(Error::Parse { line: 2, column: 5, .. })
        ));
        assert!(matches!(parse_graph("a b-c", GraphFormat::Edgelist), Err(Error::Parse { line: 1, column: 4, .. })));
    }

    #[test]
    fn dot_subset() {
        let g = parse_graph("graph G { a -- b -- c [color=red]; d; node [shape=box]; }", GraphFormat::Dot).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.contains("d"));
        assert!(matches!(parse_graph("graph { a -- b; b -- a; }", GraphFormat::Dot), Err(Error::DuplicateEdge(..))));
        assert!(matches!(parse_graph("digraph { a -> b }", GraphFormat::Dot), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("graph { subgraph s { a } }", GraphFormat::Dot), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("graph { a -- b", GraphFormat::Dot), Err(Error::Parse { .. })));
    }

    #[test]
    fn json_graphs() {
        let g = parse_graph(r#"{"vertices":["a","b","c"],"edges":[["a","b"]]}"#, GraphFormat::Json).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 1));
        let err = parse_graph("{\"vertices\":[\"a\"],\n\"edges\":[[\"a\",\"q\"]]}", GraphFormat::Json);
        assert!(matches!(err, Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("{\"vertices\":[", GraphFormat::Json), Err(Error::Parse { .. })));
    }

    #[test]
    fn edgelist_round_trip() {
        let g = parse_graph("a b\nb c\nz\n", GraphFormat::Edgelist).unwrap();
        assert_eq!(parse_graph(&to_edgelist(&g), GraphFormat::Edgelist).unwrap(), g);
    }
}
