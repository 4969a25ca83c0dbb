//! Subsets of the reals built from rational intervals and finite point sets.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    Unbounded,
    Open(Rational),
    Closed(Rational),
}

/// A set of reals with decidable rational membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetDescriptor {
    Empty,
    Reals,
    Interval { lower: Endpoint, upper: Endpoint },
    Points(Vec<Rational>),
    Union(Vec<SetDescriptor>),
    Intersection(Vec<SetDescriptor>),
    Complement(Box<SetDescriptor>),
}

impl SetDescriptor {
    /// `]p, q[`
    pub fn open_interval(p: Rational, q: Rational) -> Self {
        SetDescriptor::Interval {
            lower: Endpoint::Open(p),
            upper: Endpoint::Open(q),
        }
    }

    pub fn point(r: Rational) -> Self {
        SetDescriptor::Points(vec![r])
    }

    /// `ℝ ∖ {0}`
    pub fn nonzero() -> Self {
        SetDescriptor::point(Rational::from_integer(0.into())).complement()
    }

    pub fn union(self, other: SetDescriptor) -> Self {
        SetDescriptor::Union(vec![self, other])
    }

    pub fn intersect(self, other: SetDescriptor) -> Self {
        SetDescriptor::Intersection(vec![self, other])
    }

    pub fn complement(self) -> Self {
        SetDescriptor::Complement(Box::new(self))
    }

    pub fn contains(&self, r: &Rational) -> bool {
        match self {
            SetDescriptor::Empty => false,
            SetDescriptor::Reals => true,
            SetDescriptor::Interval { lower, upper } => {
                let above = match lower {
                    Endpoint::Unbounded => true,
                    Endpoint::Open(p) => r > p,
                    Endpoint::Closed(p) => r >= p,
                };
                let below = match upper {
                    Endpoint::Unbounded => true,
                    Endpoint::Open(q) => r < q,
                    Endpoint::Closed(q) => r <= q,
                };
                above && below
            }
            SetDescriptor::Points(ps) => ps.contains(r),
            SetDescriptor::Union(parts) => parts.iter().any(|p| p.contains(r)),
            SetDescriptor::Intersection(parts) => parts.iter().all(|p| p.contains(r)),
            SetDescriptor::Complement(inner) => !inner.contains(r),
        }
    }
}

impl fmt::Display for SetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetDescriptor::Empty => f.write_str("empty"),
            SetDescriptor::Reals => f.write_str("R"),
            SetDescriptor::Interval { lower, upper } => {
                match lower {
                    Endpoint::Unbounded => f.write_str("(-inf")?,
                    Endpoint::Open(p) => write!(f, "({p}")?,
                    Endpoint::Closed(p) => write!(f, "[{p}")?,
                }
                match upper {
                    Endpoint::Unbounded => f.write_str(",inf)"),
                    Endpoint::Open(q) => write!(f, ",{q})"),
                    Endpoint::Closed(q) => write!(f, ",{q}]"),
                }
            }
            SetDescriptor::Points(ps) => {
                let items: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            SetDescriptor::Union(parts) => join_parts(f, parts, " | "),
            SetDescriptor::Intersection(parts) => join_parts(f, parts, " & "),
            SetDescriptor::Complement(inner) => write!(f, "~{inner}"),
        }
    }
}

fn join_parts(f: &mut fmt::Formatter<'_>, parts: &[SetDescriptor], sep: &str) -> fmt::Result {
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("bad set descriptor at column {column}: {message}")]
pub struct DescriptorError {
    pub column: usize,
    pub message: String,
}

/// Parses an exact rational: an integer or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let valid = !s.is_empty()
        && s.split('/').count() <= 2
        && s.split('/').all(|part| {
            let digits = part.strip_prefix('-').unwrap_or(part);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        });
    if !valid {
        return None;
    }
    let r: Rational = s.parse().ok()?;
    Some(r)
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, DescriptorError> {
        Err(DescriptorError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| c.is_whitespace() || matches!(c, ',' | ')' | ']' | '}' | '|' | '&'))
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn rational(&mut self) -> Result<Rational, DescriptorError> {
        let start = self.pos;
        let w = self.word();
        match parse_rational(w) {
            Some(r) => Ok(r),
            None => {
                self.pos = start;
                self.err(format!("expected a rational, found `{w}`"))
            }
        }
    }

    fn union(&mut self) -> Result<SetDescriptor, DescriptorError> {
        let mut parts = vec![self.intersection()?];
        while self.eat('|') {
            parts.push(self.intersection()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { SetDescriptor::Union(parts) })
    }

    fn intersection(&mut self) -> Result<SetDescriptor, DescriptorError> {
        let mut parts = vec![self.factor()?];
        while self.eat('&') {
            parts.push(self.factor()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { SetDescriptor::Intersection(parts) })
    }

    fn factor(&mut self) -> Result<SetDescriptor, DescriptorError> {
        if self.eat('~') {
            return Ok(self.factor()?.complement());
        }
        match self.peek() {
            Some('{') => {
                self.pos += 1;
                let mut points = Vec::new();
                if !self.eat('}') {
                    loop {
                        points.push(self.rational()?);
                        if self.eat('}') {
                            break;
                        }
                        if !self.eat(',') {
                            return self.err("expected `,` or `}`");
                        }
                    }
                }
                Ok(SetDescriptor::Points(points))
            }
            Some(open @ ('(' | '[')) => {
                self.pos += 1;
                let lower = self.endpoint(open == '(', true)?;
                if !self.eat(',') {
                    return self.err("expected `,` in interval");
                }
                let upper_value = self.endpoint_value(false)?;
                let upper = match self.peek() {
                    Some(')') => {
                        self.pos += 1;
                        upper_value.map_or(Endpoint::Unbounded, Endpoint::Open)
                    }
                    Some(']') => {
                        self.pos += 1;
                        match upper_value {
                            Some(q) => Endpoint::Closed(q),
                            None => return self.err("`inf]` is not allowed"),
                        }
                    }
                    _ => return self.err("expected `)` or `]`"),
                };
                Ok(SetDescriptor::Interval { lower, upper })
            }
            Some(_) => {
                let start = self.pos;
                match self.word() {
                    "R" => Ok(SetDescriptor::Reals),
                    "empty" => Ok(SetDescriptor::Empty),
                    w => {
                        self.pos = start;
                        self.err(format!("unexpected `{w}`"))
                    }
                }
            }
            None => self.err("unexpected end of input"),
        }
    }

    fn endpoint(&mut self, open: bool, lower: bool) -> Result<Endpoint, DescriptorError> {
        let v = self.endpoint_value(lower)?;
        match (v, open) {
            (None, true) => Ok(Endpoint::Unbounded),
            (None, false) => self.err("`[-inf` is not allowed"),
            (Some(p), true) => Ok(Endpoint::Open(p)),
            (Some(p), false) => Ok(Endpoint::Closed(p)),
        }
    }

    /// `None` for an infinite endpoint.
    fn endpoint_value(&mut self, lower: bool) -> Result<Option<Rational>, DescriptorError> {
        let start = self.pos;
        let w = self.word();
        let inf = if lower { w == "-inf" } else { w == "inf" || w == "+inf" };
        if inf {
            return Ok(None);
        }
        self.pos = start;
        self.rational().map(Some)
    }
}

impl FromStr for SetDescriptor {
    type Err = DescriptorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor { src: s, pos: 0 };
        let d = c.union()?;
        if c.peek().is_some() {
            return c.err("trailing input");
        }
        Ok(d)
    }
}
