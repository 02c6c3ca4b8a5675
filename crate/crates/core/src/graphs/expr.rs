//! Graph expressions such as `lex(C(3),pow(C(6),2))` and the edge-list file
//! format read by `file(path)`.

use super::{Graph, GraphError};
use crate::products;

/// Parses and builds a graph expression.
///
/// Atoms: `K(n)`, `C(n)`, `P(n)`, `Kb(m,n)`, `Km(m1,...,mt)`, `S(n)`,
/// `KmM(n)`. Combinators: `join(g,h)`, `pow(g,k)`, `lex(g,h)`, `dir(g,h)`,
/// `cart(g,h)`, `file(path)`.
pub fn construct_graph(expr: &str) -> Result<Graph, GraphError> {
    let mut parser = Parser { src: expr, pos: 0 };
    let graph = parser.graph()?;
    parser.skip_ws();
    if parser.pos != expr.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(graph)
}

/// Reads the edge-list format: first line `n m`, then `m` lines `u v`
/// (0-based, no duplicate edges).
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let bad = |msg: String| GraphError::EdgeList(msg);
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| bad("empty input".into()))?;
    let nums = parse_pair(header).ok_or_else(|| bad(format!("bad header `{header}`")))?;
    let (n, m) = nums;
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    for line in lines.by_ref().take(m) {
        let (u, v) = parse_pair(line).ok_or_else(|| bad(format!("bad edge line `{line}`")))?;
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(bad(format!("expected {m} edges, found {}", edges.len())));
    }
    if let Some(extra) = lines.next() {
        return Err(bad(format!("unexpected line `{extra}`")));
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Some((a, b)),
        _ => None,
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> GraphError {
        GraphError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), GraphError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<&str, GraphError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_alphabetic).count();
        if len == 0 {
            return Err(self.error("expected a graph name"));
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    fn number(&mut self) -> Result<usize, GraphError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        self.pos += len;
        self.src[start..start + len].parse().map_err(|_| self.error("number too large"))
    }

    fn numbers(&mut self) -> Result<Vec<usize>, GraphError> {
        let mut out = vec![self.number()?];
        loop {
            self.skip_ws();
            if self.src[self.pos..].starts_with(',') {
                self.pos += 1;
                out.push(self.number()?);
            } else {
                return Ok(out);
            }
        }
    }

    fn positive(&self, name: &str, n: usize) -> Result<usize, GraphError> {
        if n == 0 {
            Err(GraphError::InvalidParameter(format!("{name}(0) has no vertices")))
        } else {
            Ok(n)
        }
    }

    fn graph(&mut self) -> Result<Graph, GraphError> {
        let start = self.pos;
        let name = self.ident()?.to_string();
        self.expect('(')?;
        let graph = match name.as_str() {
            "K" | "C" | "P" | "S" | "KmM" | "Kb" | "Km" => {
                let args = self.numbers()?;
                let arity_ok = match name.as_str() {
                    "Kb" => args.len() == 2,
                    "Km" => true,
                    _ => args.len() == 1,
                };
                if !arity_ok {
                    return Err(GraphError::Parse { pos: start, msg: format!("wrong number of arguments to {name}") });
                }
                match name.as_str() {
                    "K" => Graph::complete(self.positive("K", args[0])?),
                    "C" => Graph::cycle(args[0])?,
                    "P" => Graph::path(self.positive("P", args[0])?),
                    "S" => Graph::star(args[0]),
                    "KmM" => Graph::complete_minus_matching(self.positive("KmM", args[0])?)?,
                    _ => {
                        if args.contains(&0) {
                            return Err(GraphError::InvalidParameter(format!("{name} parts must be non-empty")));
                        }
                        Graph::complete_multipartite(&args)
                    }
                }
            }
            "pow" => {
                let g = self.graph()?;
                self.expect(',')?;
                let k = self.number()?;
                g.power(k)?
            }
            "join" | "lex" | "dir" | "cart" => {
                let g = self.graph()?;
                self.expect(',')?;
                let h = self.graph()?;
                match name.as_str() {
                    "join" => g.join(&h),
                    "lex" => products::lex_product(&g, &h),
                    "dir" => products::direct_product(&g, &h),
                    _ => products::cartesian_product(&g, &h),
                }
            }
            "file" => {
                let rest = &self.src[self.pos..];
                let close = rest.find(')').ok_or_else(|| self.error("unterminated file(...)"))?;
                let path = rest[..close].trim().to_string();
                self.pos += close;
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| GraphError::Io { path: path.clone(), msg: e.to_string() })?;
                parse_edge_list(&text)?
            }
            other => return Err(GraphError::Parse { pos: start, msg: format!("unknown graph `{other}`") }),
        };
        self.expect(')')?;
        Ok(graph)
    }
}
