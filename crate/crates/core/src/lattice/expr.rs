//! Proposition expressions: `|` (union), `&` (intersection), `!` (complement).
//!
//! ```text
//! expr   := term ('|' term)*
//! term   := factor ('&' factor)*
//! factor := '!' factor | '(' expr ')' | atom
//! ```

use std::fmt;

use super::Frame;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Atom { index: usize, offset: usize },
    Union(Box<Node>, Box<Node>),
    Intersection(Box<Node>, Box<Node>),
    Complement { inner: Box<Node>, offset: usize },
}

impl Node {
    fn atoms(&self, mask: &mut u32) {
        match self {
            Node::Atom { index, .. } => *mask |= 1 << index,
            Node::Union(a, b) | Node::Intersection(a, b) => {
                a.atoms(mask);
                b.atoms(mask);
            }
            Node::Complement { inner, .. } => inner.atoms(mask),
        }
    }

    /// Offset of the first complement node, if any.
    pub fn first_complement(&self) -> Option<usize> {
        match self {
            Node::Atom { .. } => None,
            Node::Union(a, b) | Node::Intersection(a, b) => {
                a.first_complement().or_else(|| b.first_complement())
            }
            Node::Complement { offset, .. } => Some(*offset),
        }
    }
}

/// A parsed expression together with its source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expression {
    pub root: Node,
    pub source: String,
}

impl Expression {
    /// Atoms occurring syntactically in the expression, as a frame bitmask.
    pub fn atom_mask(&self) -> u32 {
        let mut mask = 0;
        self.root.atoms(&mut mask);
        mask
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Or,
    And,
    Not,
    Open,
    Close,
    End,
}

impl fmt::Display for Tok<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Or => f.write_str("`|`"),
            Tok::And => f.write_str("`&`"),
            Tok::Not => f.write_str("`!`"),
            Tok::Open => f.write_str("`(`"),
            Tok::Close => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok<'_>, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'|' => Tok::Or,
            b'&' => Tok::And,
            b'!' => Tok::Not,
            b'(' => Tok::Open,
            b')' => Tok::Close,
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(&text[start..i]), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    offset: i,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, i));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a, 'f> {
    tokens: Vec<(Tok<'a>, usize)>,
    pos: usize,
    frame: &'f Frame,
}

impl<'a> Parser<'a, '_> {
    fn peek(&self) -> (Tok<'a>, usize) {
        self.tokens[self.pos]
    }

    fn bump(&mut self) -> (Tok<'a>, usize) {
        let t = self.tokens[self.pos];
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Node> {
        let mut node = self.term()?;
        while self.peek().0 == Tok::Or {
            self.bump();
            node = Node::Union(Box::new(node), Box::new(self.term()?));
        }
        Ok(node)
    }

    fn term(&mut self) -> Result<Node> {
        let mut node = self.factor()?;
        while self.peek().0 == Tok::And {
            self.bump();
            node = Node::Intersection(Box::new(node), Box::new(self.factor()?));
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<Node> {
        match self.bump() {
            (Tok::Not, offset) => Ok(Node::Complement { inner: Box::new(self.factor()?), offset }),
            (Tok::Open, _) => {
                let inner = self.expr()?;
                match self.bump() {
                    (Tok::Close, _) => Ok(inner),
                    (tok, offset) => Err(Error::Syntax {
                        offset,
                        message: format!("expected `)`, found {tok}"),
                    }),
                }
            }
            (Tok::Ident(name), offset) => match self.frame.index_of(name) {
                Some(index) => Ok(Node::Atom { index, offset }),
                None => Err(Error::UnknownAtom { name: name.to_string(), offset }),
            },
            (tok, offset) => Err(Error::Syntax {
                offset,
                message: format!("expected an atom, `!` or `(`, found {tok}"),
            }),
        }
    }
}

/// Parses `text` over the atoms of `frame`.
pub fn parse_expression(text: &str, frame: &Frame) -> Result<Expression> {
    if text.trim().is_empty() {
        return Err(Error::Syntax { offset: 0, message: "empty expression".into() });
    }
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, frame };
    let root = parser.expr()?;
    match parser.peek() {
        (Tok::End, _) => Ok(Expression { root, source: text.trim().to_string() }),
        (tok, offset) => Err(Error::Syntax { offset, message: format!("unexpected {tok}") }),
    }
}
