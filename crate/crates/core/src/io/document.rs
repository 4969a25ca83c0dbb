//! The line-oriented topoframe document format.
//!
//! ```text
//! # comment
//! space powerset N            | poset K      | lattice K
//!                             | cover i j    | le i j       (1-based)
//! tau ELEMENT ...
//! fn NAME = VALUE@ELEMENT ; VALUE@ELEMENT ...
//! ```
//!
//! Powerset and poset elements are written as sets, `{}` or `{1,3}`. A
//! `lattice K` declaration names its elements `e1 … eK` and takes the order
//! from the `le` pairs, closed reflexively and transitively.

use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{Element, Lattice, Origin, Poset};
use crate::realfun::{parse_rational, Rational, StepFunction};
use crate::topoframe::{validate_topoframe, Topoframe};

/// Largest accepted `space powerset N`.
pub const MAX_POWERSET_POINTS: usize = 10;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("validation error at line {line}, column {column}: {message}")]
    Validation { line: usize, column: usize, message: String },
}

impl DocumentError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            DocumentError::Syntax { line, column, .. } | DocumentError::Validation { line, column, .. } => {
                (*line, *column)
            }
        }
    }

    pub fn message(&self) -> &str {
        match self {
            DocumentError::Syntax { message, .. } | DocumentError::Validation { message, .. } => message,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Document {
    pub topoframe: Arc<Topoframe>,
    pub functions: Vec<(String, StepFunction)>,
}

impl Document {
    pub fn function(&self, name: &str) -> Option<&StepFunction> {
        self.functions.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> DocumentError {
    DocumentError::Syntax { line, column, message: message.into() }
}

fn validation(line: usize, column: usize, message: impl ToString) -> DocumentError {
    DocumentError::Validation { line, column, message: message.to_string() }
}

/// Splits on whitespace, keeping `{…}` groups whole. Columns are 1-based
/// character positions.
fn tokenize(line_no: usize, line: &str) -> Result<Vec<Token<'_>>, DocumentError> {
    let mut tokens = Vec::new();
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (start, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let mut j = i;
        let mut depth = 0usize;
        while j < chars.len() {
            let c = chars[j].1;
            if c == '{' {
                depth += 1;
            } else if c == '}' {
                if depth == 0 {
                    return Err(syntax(line_no, j + 1, "unmatched `}`"));
                }
                depth -= 1;
            } else if c.is_whitespace() && depth == 0 {
                break;
            }
            j += 1;
        }
        if depth > 0 {
            return Err(syntax(line_no, i + 1, "unterminated `{`"));
        }
        let end = chars.get(j).map_or(line.len(), |&(b, _)| b);
        tokens.push(Token { text: &line[start..end], column: i + 1 });
        i = j;
    }
    Ok(tokens)
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(before, _)| before)
}

fn number(line: usize, tok: Token<'_>, what: &str) -> Result<usize, DocumentError> {
    tok.text
        .parse::<usize>()
        .map_err(|_| syntax(line, tok.column, format!("expected {what}, found `{}`", tok.text)))
}

enum Declaration {
    Powerset { points: usize },
    Poset { size: usize, covers: Vec<(usize, usize)> },
    Lattice { size: usize, pairs: Vec<(usize, usize)> },
}

fn build_lattice(decl: &Declaration, line: usize) -> Result<Lattice, DocumentError> {
    let at = |e| validation(line, 1, e);
    match decl {
        Declaration::Powerset { points } => Lattice::powerset(*points).map_err(at),
        Declaration::Poset { size, covers } => {
            let poset = Poset::new(*size, covers).map_err(at)?;
            Lattice::birkhoff(&poset).map_err(at)
        }
        Declaration::Lattice { size, pairs } => {
            // `Poset` computes the reflexive-transitive closure and rejects cycles.
            let order = Poset::new(*size, pairs).map_err(at)?;
            let labels: Vec<String> = (1..=*size).map(|i| format!("e{i}")).collect();
            let mut leq = Vec::new();
            for a in 0..*size {
                for b in 0..*size {
                    if order.leq(a, b) {
                        leq.push((a, b));
                    }
                }
            }
            Lattice::build_from_order(&labels, &leq).map_err(at)
        }
    }
}

/// Pieces of a function literal with the column each starts at.
fn literal_pieces(text: &str, base_column: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(';') {
        let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
        out.push((piece.trim(), base_column + text[..offset].chars().count() + lead));
        offset += piece.len() + 1;
    }
    out
}

fn parse_function(
    tf: &Arc<Topoframe>,
    line: usize,
    text: &str,
    column: usize,
) -> Result<StepFunction, DocumentError> {
    let l = tf.lattice();
    let mut pieces: Vec<(Rational, Element)> = Vec::new();
    for (piece, col) in literal_pieces(text, column) {
        let (value, set) = piece
            .split_once('@')
            .ok_or_else(|| syntax(line, col, format!("expected `VALUE@ELEMENT`, found `{piece}`")))?;
        let value = parse_rational(value).ok_or_else(|| syntax(line, col, format!("`{}` is not a rational", value.trim())))?;
        let set_col = col + piece.find('@').map_or(0, |i| piece[..i].chars().count() + 1);
        let e = l
            .parse_element(set)
            .ok_or_else(|| syntax(line, set_col, format!("`{}` is not an element of the lattice", set.trim())))?;
        if !tf.is_open(e) {
            return Err(validation(line, set_col, format!("carrier {} is not open", l.label(e))));
        }
        pieces.push((value, e));
    }
    StepFunction::new(tf, pieces).map_err(|e| validation(line, column, e))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse(text: &str) -> Result<Document, DocumentError> {
    let mut decl: Option<(Declaration, usize)> = None;
    let mut topoframe: Option<Arc<Topoframe>> = None;
    let mut functions: Vec<(String, StepFunction)> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = strip_comment(raw);
        let tokens = tokenize(line, content)?;
        let Some(&head) = tokens.first() else { continue };
        match head.text {
            "space" | "poset" | "lattice" => {
                if decl.is_some() {
                    return Err(syntax(line, head.column, "lattice declared twice"));
                }
                let d = match head.text {
                    "space" => {
                        let kind = tokens.get(1).ok_or_else(|| syntax(line, content.len() + 1, "expected `powerset`"))?;
                        if kind.text != "powerset" {
                            return Err(syntax(line, kind.column, format!("expected `powerset`, found `{}`", kind.text)));
                        }
                        let n = tokens.get(2).ok_or_else(|| syntax(line, content.len() + 1, "expected a point count"))?;
                        let points = number(line, *n, "a point count")?;
                        if points > MAX_POWERSET_POINTS {
                            return Err(validation(
                                line,
                                n.column,
                                format!("powersets above {MAX_POWERSET_POINTS} points are not supported"),
                            ));
                        }
                        if let Some(extra) = tokens.get(3) {
                            return Err(syntax(line, extra.column, "unexpected token"));
                        }
                        Declaration::Powerset { points }
                    }
                    kw => {
                        let n = tokens.get(1).ok_or_else(|| syntax(line, content.len() + 1, "expected a size"))?;
                        let size = number(line, *n, "a size")?;
                        if let Some(extra) = tokens.get(2) {
                            return Err(syntax(line, extra.column, "unexpected token"));
                        }
                        if kw == "poset" {
                            Declaration::Poset { size, covers: Vec::new() }
                        } else {
                            Declaration::Lattice { size, pairs: Vec::new() }
                        }
                    }
                };
                decl = Some((d, line));
            }
            "cover" | "le" => {
                let expected = if head.text == "cover" { "poset" } else { "lattice" };
                let list = match (&mut decl, topoframe.is_some()) {
                    (_, true) => return Err(syntax(line, head.column, format!("`{}` after `tau`", head.text))),
                    (Some((Declaration::Poset { size, covers }, _)), _) if expected == "poset" => (size, covers),
                    (Some((Declaration::Lattice { size, pairs }, _)), _) if expected == "lattice" => (size, pairs),
                    _ => {
                        return Err(syntax(
                            line,
                            head.column,
                            format!("`{}` needs a preceding `{expected}` declaration", head.text),
                        ))
                    }
                };
                if tokens.len() != 3 {
                    return Err(syntax(line, head.column, format!("expected `{} i j`", head.text)));
                }
                let mut ends = [0usize; 2];
                for (k, tok) in tokens[1..].iter().enumerate() {
                    let v = number(line, *tok, "a 1-based index")?;
                    if v == 0 || v > *list.0 {
                        return Err(validation(line, tok.column, format!("index {v} is outside 1..={}", list.0)));
                    }
                    ends[k] = v - 1;
                }
                list.1.push((ends[0], ends[1]));
            }
            "tau" => {
                if topoframe.is_some() {
                    return Err(syntax(line, head.column, "`tau` given twice"));
                }
                let (d, decl_line) = decl
                    .as_ref()
                    .ok_or_else(|| syntax(line, head.column, "`tau` before a lattice declaration"))?;
                let lattice = Arc::new(build_lattice(d, *decl_line)?);
                let mut opens = Vec::new();
                for tok in &tokens[1..] {
                    let e = lattice.parse_element(tok.text).ok_or_else(|| {
                        syntax(line, tok.column, format!("`{}` is not an element of the lattice", tok.text))
                    })?;
                    opens.push(e);
                }
                topoframe = Some(validate_topoframe(lattice, &opens).map_err(|e| validation(line, head.column, e))?);
            }
            "fn" => {
                let tf = topoframe
                    .as_ref()
                    .ok_or_else(|| syntax(line, head.column, "`fn` before `tau`"))?;
                let name = tokens.get(1).ok_or_else(|| syntax(line, content.len() + 1, "expected a name"))?;
                if !is_identifier(name.text) {
                    return Err(syntax(line, name.column, format!("`{}` is not a valid name", name.text)));
                }
                let after = tokens.get(2).map_or(content.len() + 1, |t| t.column);
                let eq_byte = content.find('=').ok_or_else(|| syntax(line, after, "expected `=`"))?;
                let eq_col = content[..eq_byte].chars().count() + 1;
                if tokens.get(2).map(|t| t.column) != Some(eq_col) {
                    return Err(syntax(line, tokens.get(2).map_or(eq_col, |t| t.column), "expected `=` after the name"));
                }
                let body = &content[eq_byte + 1..];
                if body.trim().is_empty() {
                    return Err(syntax(line, eq_col + 1, "empty function literal"));
                }
                if functions.iter().any(|(n, _)| n == name.text) {
                    return Err(validation(line, name.column, format!("function `{}` defined twice", name.text)));
                }
                let f = parse_function(tf, line, body, eq_col + 1)?;
                functions.push((name.text.to_string(), f));
            }
            other => return Err(syntax(line, head.column, format!("unknown directive `{other}`"))),
        }
    }
    let topoframe = topoframe.ok_or_else(|| {
        if decl.is_none() {
            syntax(last_line.max(1), 1, "missing lattice declaration")
        } else {
            syntax(last_line.max(1), 1, "missing `tau` line")
        }
    })?;
    Ok(Document { topoframe, functions })
}

/// Element names as a document spells them.
fn element_name(l: &Lattice, e: Element) -> String {
    match l.origin() {
        Origin::Explicit { .. } => format!("e{}", e.index() + 1),
        _ => l.label(e).to_string(),
    }
}

pub fn function_literal(f: &StepFunction) -> String {
    let l = f.space().lattice();
    f.pieces()
        .iter()
        .map(|p| format!("{}@{}", p.value, element_name(l, p.carrier)))
        .collect::<Vec<_>>()
        .join(" ; ")
}

pub fn print_topoframe(tf: &Topoframe, functions: &[(String, StepFunction)]) -> String {
    let l = tf.lattice();
    let mut out = String::new();
    match l.origin() {
        Origin::Powerset { points } => out.push_str(&format!("space powerset {points}\n")),
        Origin::Downsets(poset) => {
            out.push_str(&format!("poset {}\n", poset.size()));
            for &(a, b) in poset.covers() {
                out.push_str(&format!("cover {} {}\n", a + 1, b + 1));
            }
        }
        Origin::Explicit { covers } => {
            out.push_str(&format!("lattice {}\n", l.size()));
            for &(a, b) in covers {
                out.push_str(&format!("le {} {}\n", a + 1, b + 1));
            }
        }
    }
    let opens: Vec<String> = tf.opens().iter().map(|&e| element_name(l, e)).collect();
    out.push_str("tau");
    for o in opens {
        out.push(' ');
        out.push_str(&o);
    }
    out.push('\n');
    for (name, f) in functions {
        out.push_str(&format!("fn {name} = {}\n", function_literal(f)));
    }
    out
}

pub fn print(doc: &Document) -> String {
    print_topoframe(&doc.topoframe, &doc.functions)
}

/// The two documents describe the same topoframe and functions.
pub fn same_document(a: &Document, b: &Document) -> bool {
    let (la, lb) = (a.topoframe.lattice(), b.topoframe.lattice());
    la.same_structure(lb)
        && la.origin() == lb.origin()
        && a.topoframe.opens().iter().map(|e| e.index()).eq(b.topoframe.opens().iter().map(|e| e.index()))
        && a.functions.len() == b.functions.len()
        && a.functions.iter().zip(&b.functions).all(|((n, f), (m, g))| {
            n == m && f.pieces().len() == g.pieces().len()
                && f.pieces().iter().zip(g.pieces()).all(|(p, q)| p.value == q.value && p.carrier.index() == q.carrier.index())
        })
}
