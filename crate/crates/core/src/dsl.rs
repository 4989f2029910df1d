//! Text format for presentations.
//!
//! ```text
//! # Gersten's group
//! group gersten {
//!   vertex V;
//!   edge b : V(0,1) -> V(1,1);
//!   edge c : V(0,1) -> V(2,1);
//! }
//!
//! gpq p=[0,0] q=[1,2]
//! ```
//!
//! Names are identifiers (`[A-Za-z_][A-Za-z0-9_.-]*`, a `-` only when not
//! starting `->`) or double-quoted strings. Semicolons are optional.

use std::fmt;

use num_bigint::BigInt;

use crate::linalg::IntVec2;
use crate::presentation::{GpqParams, TubularPresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// A parsed input: an explicit presentation or `G({p_i, q_i})` parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Tubular(TubularPresentation),
    Gpq(GpqParams),
}

impl Input {
    pub fn name(&self) -> String {
        match self {
            Input::Tubular(g) => g.name.clone(),
            Input::Gpq(p) => p.display_name(),
        }
    }

    pub fn to_tubular(&self) -> TubularPresentation {
        match self {
            Input::Tubular(g) => g.clone(),
            Input::Gpq(p) => crate::special::gpq_to_tubular(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Str(String),
    Int(BigInt),
    Punct(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Punct(p) => write!(f, "`{p}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError { diagnostics: vec![Diagnostic { line, col, message: message.into() }] }
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
        if chars[*i] == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
        *i += 1;
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col);
            }
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            advance(&mut i, &mut line, &mut col);
            advance(&mut i, &mut line, &mut col);
            out.push(Spanned { tok: Tok::Punct("->"), line: l0, col: c0 });
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            advance(&mut i, &mut line, &mut col);
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col);
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Spanned { tok: Tok::Int(s.parse().expect("digits")), line: l0, col: c0 });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() {
                let d = chars[i];
                let ok = d.is_alphanumeric()
                    || d == '_'
                    || d == '.'
                    || (d == '-' && chars.get(i + 1) != Some(&'>'));
                if !ok {
                    break;
                }
                advance(&mut i, &mut line, &mut col);
            }
            out.push(Spanned { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, col: c0 });
        } else if c == '"' {
            advance(&mut i, &mut line, &mut col);
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(err(l0, c0, "unterminated string")),
                    Some('"') => {
                        advance(&mut i, &mut line, &mut col);
                        break;
                    }
                    Some('\\') if i + 1 < chars.len() => {
                        advance(&mut i, &mut line, &mut col);
                        s.push(chars[i]);
                        advance(&mut i, &mut line, &mut col);
                    }
                    Some(&ch) => {
                        s.push(ch);
                        advance(&mut i, &mut line, &mut col);
                    }
                }
            }
            out.push(Spanned { tok: Tok::Str(s), line: l0, col: c0 });
        } else {
            let p = match c {
                '{' => "{",
                '}' => "}",
                '(' => "(",
                ')' => ")",
                '[' => "[",
                ']' => "]",
                ',' => ",",
                ';' => ";",
                ':' => ":",
                '=' => "=",
                _ => return Err(err(l0, c0, format!("unexpected character `{c}`"))),
            };
            advance(&mut i, &mut line, &mut col);
            out.push(Spanned { tok: Tok::Punct(p), line: l0, col: c0 });
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    diagnostics: Vec<Diagnostic>,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, what: &str) -> ParseError {
        let t = self.peek();
        err(t.line, t.col, format!("expected {what}, found {}", t.tok))
    }

    fn punct(&mut self, p: &str) -> Result<(), ParseError> {
        if self.peek().tok == Tok::Punct(match_punct(p)) {
            self.next();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{p}`")))
        }
    }

    fn eat(&mut self, p: &str) -> bool {
        if self.peek().tok == Tok::Punct(match_punct(p)) {
            self.next();
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn name(&mut self, what: &str) -> Result<Spanned, ParseError> {
        match &self.peek().tok {
            Tok::Ident(_) | Tok::Str(_) => Ok(self.next()),
            _ => Err(self.unexpected(what)),
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match &self.peek().tok {
            Tok::Int(n) => {
                let n = n.clone();
                self.next();
                Ok(n)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn small_int(&mut self) -> Result<i64, ParseError> {
        let t = self.peek().clone();
        let n = self.int()?;
        i64::try_from(&n).map_err(|_| err(t.line, t.col, format!("integer {n} out of range")))
    }

    fn diag(&mut self, t: &Spanned, message: String) {
        self.diagnostics.push(Diagnostic { line: t.line, col: t.col, message });
    }
}

fn match_punct(p: &str) -> &'static str {
    ["{", "}", "(", ")", "[", "]", ",", ";", ":", "=", "->"].into_iter().find(|q| *q == p).expect("known punctuation")
}

fn name_of(t: &Spanned) -> String {
    match &t.tok {
        Tok::Ident(s) | Tok::Str(s) => s.clone(),
        _ => unreachable!(),
    }
}

fn parse_group(ps: &mut Parser) -> Result<TubularPresentation, ParseError> {
    ps.keyword("group")?;
    let name = name_of(&ps.name("a group name")?);
    ps.punct("{")?;
    let mut g = TubularPresentation::new(name);
    loop {
        let t = ps.peek().clone();
        match &t.tok {
            Tok::Punct("}") => {
                ps.next();
                break;
            }
            Tok::Punct(";") => {
                ps.next();
            }
            Tok::Ident(kw) if kw == "vertex" => {
                ps.next();
                loop {
                    let v = ps.name("a vertex name")?;
                    if g.add_vertex(name_of(&v)).is_err() {
                        ps.diag(&v, format!("duplicate vertex `{}`", name_of(&v)));
                    }
                    if !ps.eat(",") {
                        break;
                    }
                }
            }
            Tok::Ident(kw) if kw == "edge" => {
                ps.next();
                parse_edge(ps, &mut g)?;
            }
            _ => return Err(ps.unexpected("`vertex`, `edge` or `}`")),
        }
    }
    Ok(g)
}

fn parse_end(ps: &mut Parser) -> Result<(Spanned, Spanned, IntVec2), ParseError> {
    let v = ps.name("a vertex name")?;
    let open = ps.peek().clone();
    ps.punct("(")?;
    let x = ps.int()?;
    ps.punct(",")?;
    let y = ps.int()?;
    ps.punct(")")?;
    Ok((v, open, IntVec2 { x, y }))
}

fn parse_edge(ps: &mut Parser, g: &mut TubularPresentation) -> Result<(), ParseError> {
    let label = ps.name("an edge label")?;
    ps.punct(":")?;
    let (from, from_vec_at, v) = parse_end(ps)?;
    ps.punct("->")?;
    let (to, to_vec_at, w) = parse_end(ps)?;

    let mut ok = true;
    let mut ids = Vec::new();
    for t in [&from, &to] {
        match g.vertex_by_name(&name_of(t)) {
            Some(id) => ids.push(id),
            None => {
                ps.diag(t, format!("unknown vertex `{}`", name_of(t)));
                ok = false;
            }
        }
    }
    for (at, vec) in [(&from_vec_at, &v), (&to_vec_at, &w)] {
        if vec.is_zero() {
            ps.diag(at, "zero attaching vector".into());
            ok = false;
        }
    }
    let lbl = name_of(&label);
    if g.edges.iter().any(|e| e.label == lbl) {
        ps.diag(&label, format!("duplicate edge label `{lbl}`"));
        ok = false;
    }
    if ok {
        g.add_edge(lbl, ids[0], v, ids[1], w).expect("checked above");
    }
    Ok(())
}

fn parse_int_list(ps: &mut Parser, key: &str) -> Result<Vec<i64>, ParseError> {
    ps.keyword(key)?;
    ps.punct("=")?;
    ps.punct("[")?;
    let mut out = Vec::new();
    if ps.eat("]") {
        return Ok(out);
    }
    loop {
        out.push(ps.small_int()?);
        if ps.eat("]") {
            return Ok(out);
        }
        ps.punct(",")?;
    }
}

fn parse_gpq(ps: &mut Parser) -> Result<GpqParams, ParseError> {
    let start = ps.peek().clone();
    ps.keyword("gpq")?;
    let p = parse_int_list(ps, "p")?;
    let q = parse_int_list(ps, "q")?;
    GpqParams::new(p, q).map_err(|e| err(start.line, start.col, e.to_string()))
}

pub fn parse(text: &str) -> Result<Input, ParseError> {
    let mut ps = Parser { toks: lex(text)?, pos: 0, diagnostics: Vec::new() };
    let input = match &ps.peek().tok {
        Tok::Ident(kw) if kw == "group" => Input::Tubular(parse_group(&mut ps)?),
        Tok::Ident(kw) if kw == "gpq" => Input::Gpq(parse_gpq(&mut ps)?),
        _ => return Err(ps.unexpected("`group` or `gpq`")),
    };
    ps.eat(";");
    if ps.peek().tok != Tok::Eof {
        return Err(ps.unexpected("end of input"));
    }
    if !ps.diagnostics.is_empty() {
        return Err(ParseError { diagnostics: ps.diagnostics });
    }
    Ok(input)
}

pub fn parse_tubular(text: &str) -> Result<TubularPresentation, ParseError> {
    parse(text).map(|i| i.to_tubular())
}

fn is_plain_ident(s: &str) -> bool {
    let mut chars = s.chars().peekable();
    let Some(first) = chars.next() else { return false };
    if !(first.is_alphabetic() || first == '_') {
        return false;
    }
    let rest: Vec<char> = chars.collect();
    rest.iter().enumerate().all(|(i, &c)| {
        c.is_alphanumeric() || c == '_' || c == '.' || (c == '-' && rest.get(i + 1) != Some(&'>'))
    })
}

fn quote(s: &str) -> String {
    if is_plain_ident(s) {
        return s.to_string();
    }
    let mut out = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn print_tubular(g: &TubularPresentation) -> String {
    let mut out = format!("group {} {{\n", quote(&g.name));
    if !g.vertices.is_empty() {
        let names: Vec<String> = g.vertices.iter().map(|v| quote(v)).collect();
        out.push_str(&format!("  vertex {};\n", names.join(", ")));
    }
    for e in &g.edges {
        out.push_str(&format!(
            "  edge {} : {}({},{}) -> {}({},{});\n",
            quote(&e.label),
            quote(g.vertex_name(e.from)),
            e.v.x,
            e.v.y,
            quote(g.vertex_name(e.to)),
            e.w.x,
            e.w.y
        ));
    }
    out.push_str("}\n");
    out
}

pub fn print_gpq(p: &GpqParams) -> String {
    let list = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    format!("gpq p=[{}] q=[{}]\n", list(&p.p), list(&p.q))
}

pub fn print(input: &Input) -> String {
    match input {
        Input::Tubular(g) => print_tubular(g),
        Input::Gpq(p) => print_gpq(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::VertexId;

    #[test]
    fn parses_gersten() {
        let g = parse_tubular("group gersten { vertex V; edge b : V(0,1) -> V(1,1); edge c : V(0,1) -> V(2,1) }")
            .unwrap();
        assert_eq!(g.name, "gersten");
        assert_eq!(g.vertices, vec!["V".to_string()]);
        assert_eq!(g.edges.len(), 2);
        assert_eq!(g.edges[1].w, IntVec2::new(2, 1));
        assert_eq!(g.edges[1].label, "c");
    }

    #[test]
    fn parses_gpq() {
        assert_eq!(parse("gpq p=[0,0] q=[1,2]").unwrap(), Input::Gpq(GpqParams::new(vec![0, 0], vec![1, 2]).unwrap()));
        assert!(parse("gpq p=[0] q=[1,2]").is_err());
    }

    #[test]
    fn reports_all_semantic_errors() {
        let e = parse("group bad { edge e : V(0,0) -> V(1,0) }").unwrap_err();
        let msgs: Vec<&str> = e.diagnostics.iter().map(|d| d.message.as_str()).collect();
        assert!(msgs.contains(&"zero attaching vector"));
        assert!(msgs.iter().any(|m| m.starts_with("unknown vertex")));
        assert_eq!((e.diagnostics[0].line, e.diagnostics[0].col), (1, 22));
    }

    #[test]
    fn syntax_error_position() {
        let e = parse("group g {\n  vertex V;\n  edge e V(1,0) -> V(0,1)\n}").unwrap_err();
        assert_eq!(e.diagnostics.len(), 1);
        assert_eq!((e.diagnostics[0].line, e.diagnostics[0].col), (3, 10));
    }

    #[test]
    fn duplicates_rejected() {
        assert!(parse("group g { vertex V, V }").is_err());
        assert!(parse("group g { vertex V; edge e : V(1,0) -> V(0,1); edge e : V(1,0) -> V(0,1) }").is_err());
    }

    #[test]
    fn comments_and_names() {
        let text = "# comment\ngroup \"lyman-psi(1,2)\" { # c\n vertex a-b, x.y\n edge s1 : a-b(1,1)->x.y(-1,1) }";
        let g = parse_tubular(text).unwrap();
        assert_eq!(g.name, "lyman-psi(1,2)");
        assert_eq!(g.edges[0].from, VertexId(0));
        assert_eq!(g.edges[0].to, VertexId(1));
        assert_eq!(g.edges[0].w, IntVec2::new(-1, 1));
    }

    #[test]
    fn print_round_trip() {
        let text = "group \"we\\\"ird\" { vertex V, \"W 2\"; edge b : V(0,1) -> \"W 2\"(1,1); }";
        let g = parse(text).unwrap();
        assert_eq!(parse(&print(&g)).unwrap(), g);
        let p = parse("gpq p=[-1,2] q=[3,-4]").unwrap();
        assert_eq!(parse(&print(&p)).unwrap(), p);
    }
}
