//! Text form of diagrams: a header `A<n>:` or `D<m>:` followed by tokens
//! `c<i>-<j>` (cup), `m<i>-<j>` (marked cup), `r<i>` (ray), `x<i>` (marked ray).
//!
//! ```
//! use springer_cup::diagram::{format_diagram, parse_diagram};
//! let d = parse_diagram("D4: r4 c2-3  r1").unwrap();
//! assert_eq!(format_diagram(&d), "D4: r1 c2-3 r4");
//! ```

use super::{Cup, CupDiagram, DiagramError, Kind, Ray};

struct Lexer {
    chars: Vec<char>,
    pos: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        Lexer { chars: src.chars().collect(), pos: 0 }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, DiagramError> {
        Err(DiagramError::Parse { column: self.column(), message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<(), DiagramError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {c:?}"))
        }
    }

    fn number(&mut self) -> Result<usize, DiagramError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        match s.parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("number too large")
            }
        }
    }
}

/// Parses and validates a diagram.
pub fn parse_diagram(text: &str) -> Result<CupDiagram, DiagramError> {
    let mut lx = Lexer::new(text);
    lx.skip_ws();
    let kind = match lx.peek() {
        Some('A') => Kind::A,
        Some('D') => Kind::D,
        _ => return lx.err("expected header 'A<n>:' or 'D<m>:'"),
    };
    lx.pos += 1;
    let n = lx.number()?;
    lx.expect(':')?;
    let mut cups = Vec::new();
    let mut rays = Vec::new();
    loop {
        lx.skip_ws();
        let Some(c) = lx.peek() else { break };
        lx.pos += 1;
        match c {
            'c' | 'm' => {
                let l = lx.number()?;
                lx.expect('-')?;
                let r = lx.number()?;
                cups.push(Cup::new(l, r, c == 'm'));
            }
            'r' | 'x' => rays.push(Ray::new(lx.number()?, c == 'x')),
            _ => {
                lx.pos -= 1;
                return lx.err(format!("unexpected character {c:?}"));
            }
        }
        if lx.peek().is_some_and(|c| !c.is_whitespace()) {
            return lx.err("expected whitespace between tokens");
        }
    }
    CupDiagram::try_new(kind, n, cups, rays)
}

/// Canonical text: features ordered by their leftmost vertex.
pub fn format_diagram(d: &CupDiagram) -> String {
    let mut tokens: Vec<(usize, String)> = d
        .cups
        .iter()
        .map(|c| (c.left, format!("{}{}-{}", if c.marked { 'm' } else { 'c' }, c.left, c.right)))
        .chain(d.rays.iter().map(|r| (r.vertex, format!("{}{}", if r.marked { 'x' } else { 'r' }, r.vertex))))
        .collect();
    tokens.sort();
    let kind = match d.kind {
        Kind::A => 'A',
        Kind::D => 'D',
    };
    let mut s = format!("{kind}{}:", d.n_vertices);
    for (_, t) in tokens {
        s.push(' ');
        s.push_str(&t);
    }
    s
}
