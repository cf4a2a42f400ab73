use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// The ground set colorings live on: `[n] = {1..n}` or `Z_m = {0..m-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "size", rename_all = "lowercase")]
pub enum Domain {
    Interval(usize),
    Cyclic(usize),
}

impl Domain {
    pub fn size(&self) -> usize {
        match *self {
            Domain::Interval(n) | Domain::Cyclic(n) => n,
        }
    }

    /// Smallest element: 1 for intervals, 0 for residues.
    pub fn first(&self) -> i64 {
        match self {
            Domain::Interval(_) => 1,
            Domain::Cyclic(_) => 0,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = i64> + Clone {
        let first = self.first();
        first..first + self.size() as i64
    }

    /// Position of `x` in the values array.
    #[inline]
    pub fn index(&self, x: i64) -> usize {
        (x - self.first()) as usize
    }

    pub fn modulus(&self) -> Option<usize> {
        match *self {
            Domain::Cyclic(m) => Some(m),
            Domain::Interval(_) => None,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Interval(n) => write!(f, "[{n}]"),
            Domain::Cyclic(m) => write!(f, "Z_{m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    /// -1
    Blue,
    /// +1
    Red,
}

impl Color {
    pub fn sign(self) -> i64 {
        match self {
            Color::Blue => -1,
            Color::Red => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::Blue => 'B',
            Color::Red => 'R',
        }
    }
}

/// A two-coloring of a [`Domain`]. Values are stored in element order, so
/// `values[0]` is the color of 1 on an interval and of 0 on a cyclic group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    domain: Domain,
    values: Vec<Color>,
}

impl Coloring {
    pub fn new(domain: Domain, values: Vec<Color>) -> Result<Self, crate::Error> {
        if values.len() != domain.size() {
            return Err(crate::Error::Invalid(format!(
                "coloring has {} values but {domain} has {} elements",
                values.len(),
                domain.size()
            )));
        }
        Ok(Self { domain, values })
    }

    pub fn constant(domain: Domain, color: Color) -> Self {
        Self {
            domain,
            values: vec![color; domain.size()],
        }
    }

    pub fn from_fn(domain: Domain, mut color_of: impl FnMut(i64) -> Color) -> Self {
        Self {
            domain,
            values: domain.elements().map(&mut color_of).collect(),
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &[Color] {
        &self.values
    }

    /// Color of element `x`.
    #[inline]
    pub fn get(&self, x: i64) -> Color {
        self.values[self.domain.index(x)]
    }

    pub fn sign(&self, x: i64) -> i64 {
        self.get(x).sign()
    }

    pub fn set(&mut self, x: i64, color: Color) {
        let i = self.domain.index(x);
        self.values[i] = color;
    }

    pub fn complement(&self) -> Self {
        Self {
            domain: self.domain,
            values: self.values.iter().map(|c| c.flipped()).collect(),
        }
    }

    pub fn count(&self, color: Color) -> usize {
        self.values.iter().filter(|&&c| c == color).count()
    }

    /// Elements carrying `color`, ascending.
    pub fn class(&self, color: Color) -> Vec<i64> {
        self.domain
            .elements()
            .zip(&self.values)
            .filter(|(_, &c)| c == color)
            .map(|(x, _)| x)
            .collect()
    }

    /// One line of `R`/`B` characters in element order.
    pub fn to_text(&self) -> String {
        self.values.iter().map(|c| c.as_char()).collect()
    }

    /// Reads the `R`/`B` line format. Whitespace is ignored; anything else is
    /// reported with its line and column.
    pub fn parse_text(text: &str, kind: DomainKind) -> Result<Self, ParseError> {
        let mut values = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    'R' | 'r' => values.push(Color::Red),
                    'B' | 'b' => values.push(Color::Blue),
                    c if c.is_whitespace() => {}
                    other => {
                        return Err(ParseError::Syntax {
                            line: line_no + 1,
                            column: col + 1,
                            message: format!("expected 'R' or 'B', found '{other}'"),
                        })
                    }
                }
            }
        }
        if values.is_empty() {
            return Err(ParseError::Syntax {
                line: 1,
                column: 1,
                message: "empty coloring".into(),
            });
        }
        let domain = match kind {
            DomainKind::Interval => Domain::Interval(values.len()),
            DomainKind::Cyclic => Domain::Cyclic(values.len()),
        };
        Ok(Self { domain, values })
    }

    /// Bit `i` set when element `first + i` is red.
    #[cfg(test)]
    pub(crate) fn red_mask(&self) -> u64 {
        debug_assert!(self.values.len() <= 64);
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == Color::Red)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    pub(crate) fn from_red_mask(domain: Domain, mask: u64) -> Self {
        Self::from_fn(domain, |x| {
            if mask >> domain.index(x) & 1 == 1 {
                Color::Red
            } else {
                Color::Blue
            }
        })
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    Interval,
    Cyclic,
}
