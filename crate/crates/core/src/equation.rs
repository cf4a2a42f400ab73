//! Linear equations `a_1 x_1 + ... + a_k x_k = 0` with nonzero integer
//! coefficients, and the text formats they are read from.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct LinearEquation {
    coefficients: Vec<i64>,
}

impl LinearEquation {
    pub fn new(coefficients: Vec<i64>) -> Result<Self, ParseError> {
        if coefficients.len() < 2 {
            return Err(ParseError::TooFewTerms {
                found: coefficients.len(),
            });
        }
        if let Some(index) = coefficients.iter().position(|&a| a == 0) {
            return Err(ParseError::ZeroCoefficient { index });
        }
        Ok(Self { coefficients })
    }

    /// The additive tuple `x_1 + ... + x_{k/2} = x_{k/2+1} + ... + x_k`.
    pub fn additive_tuple(k: usize) -> Result<Self, ParseError> {
        let half = k / 2;
        Self::new(
            std::iter::repeat_n(1, half)
                .chain(std::iter::repeat_n(-1, k - half))
                .collect(),
        )
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn arity(&self) -> usize {
        self.coefficients.len()
    }

    pub fn gcd(&self) -> i64 {
        self.coefficients.iter().fold(0i64, |g, &a| g.gcd(&a))
    }

    pub fn is_reduced(&self) -> bool {
        self.gcd() == 1
    }

    /// Divides out the common factor of the coefficients.
    pub fn reduced(&self) -> Self {
        let g = self.gcd();
        Self {
            coefficients: self.coefficients.iter().map(|a| a / g).collect(),
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|a| -a).collect(),
        }
    }

    /// True when some nonempty subset of the coefficients sums to zero.
    ///
    /// Uses a subset-sum scan over reachable sums, so it is exact for any `k`.
    pub fn zero_sum_subset_exists(&self) -> bool {
        let mut reachable = std::collections::HashSet::new();
        for &a in &self.coefficients {
            let mut next: Vec<i64> = reachable.iter().map(|s| s + a).collect();
            next.push(a);
            if next.contains(&0) {
                return true;
            }
            reachable.extend(next);
        }
        false
    }

    /// True when the coefficients split into pairs `{a, -a}`.
    pub fn has_canceling_partition(&self) -> bool {
        if !self.arity().is_multiple_of(2) {
            return false;
        }
        let mut balance: HashMap<i64, i64> = HashMap::new();
        for &a in &self.coefficients {
            *balance.entry(a.abs()).or_default() += a.signum();
        }
        balance.values().all(|&v| v == 0)
    }

    /// All coefficients are `+-1` with as many `+1` as `-1`, up to sign.
    pub fn is_additive_tuple(&self) -> bool {
        self.coefficients.iter().all(|a| a.abs() == 1) && self.coefficients.iter().sum::<i64>() == 0
    }

    /// Every coefficient has the same sign, so there are no solutions in
    /// positive integers.
    pub fn is_single_signed(&self) -> bool {
        let first = self.coefficients[0].signum();
        self.coefficients.iter().all(|a| a.signum() == first)
    }
}

impl TryFrom<Vec<i64>> for LinearEquation {
    type Error = ParseError;

    fn try_from(value: Vec<i64>) -> Result<Self, Self::Error> {
        Self::new(value)
    }
}

impl From<LinearEquation> for Vec<i64> {
    fn from(value: LinearEquation) -> Self {
        value.coefficients
    }
}

impl fmt::Display for LinearEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.coefficients.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for LinearEquation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_equation(s)
    }
}

/// Parses either the list form `[a1,a2,...,ak]` or a symbolic form such as
/// `2x - 2y + 3z = 0`.
///
/// In the symbolic form each variable is a single letter and may appear once;
/// terms on the right-hand side are moved to the left with their sign flipped.
/// Coefficients come back in left-to-right order of first appearance.
pub fn parse_equation(text: &str) -> Result<LinearEquation, ParseError> {
    let trimmed = text.trim_start();
    let offset = text.len() - trimmed.len();
    if trimmed.starts_with('[') {
        parse_list(trimmed, offset)
    } else {
        parse_symbolic(text)
    }
}

fn parse_list(text: &str, offset: usize) -> Result<LinearEquation, ParseError> {
    let body = text.trim_end();
    let Some(inner) = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')) else {
        return Err(ParseError::at(offset + body.len() + 1, "expected closing ']'"));
    };
    let mut coefficients = Vec::new();
    let mut column = offset + 2;
    for piece in inner.split(',') {
        let token = piece.trim();
        if token.is_empty() {
            return Err(ParseError::at(column, "empty list entry"));
        }
        let value: i64 = token.parse().map_err(|_| {
            ParseError::at(
                column + piece.find(token).unwrap_or(0),
                format!("invalid integer '{token}'"),
            )
        })?;
        coefficients.push(value);
        column += piece.len() + 1;
    }
    LinearEquation::new(coefficients)
}

#[derive(Debug)]
enum Token {
    Sign(i64),
    Number(i64),
    Var(char),
    Equals,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        match c {
            ' ' | '\t' => {}
            '+' => tokens.push((column, Token::Sign(1))),
            '-' => tokens.push((column, Token::Sign(-1))),
            '=' => tokens.push((column, Token::Equals)),
            '*' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                let value = digits
                    .parse()
                    .map_err(|_| ParseError::at(column, format!("integer '{digits}' out of range")))?;
                tokens.push((column, Token::Number(value)));
            }
            c if c.is_ascii_alphabetic() => {
                if i + 1 < chars.len() && chars[i + 1].is_ascii_alphanumeric() {
                    return Err(ParseError::at(column, "variables are single letters"));
                }
                tokens.push((column, Token::Var(c)));
            }
            other => return Err(ParseError::at(column, format!("unexpected character '{other}'"))),
        }
        i += 1;
    }
    Ok(tokens)
}

fn parse_symbolic(text: &str) -> Result<LinearEquation, ParseError> {
    let tokens = tokenize(text)?;
    let mut vars: Vec<(char, i64)> = Vec::new();
    let mut side = 1i64;
    let mut seen_equals = false;
    let mut sign = 1i64;
    let mut pending_sign = false;
    let mut number: Option<(usize, i64)> = None;
    let mut expect_term = true;

    let flush_constant = |number: &mut Option<(usize, i64)>| -> Result<(), ParseError> {
        match number.take() {
            Some((column, value)) if value != 0 => Err(ParseError::at(column, "constant terms are not supported")),
            _ => Ok(()),
        }
    };

    for (column, token) in tokens {
        match token {
            Token::Sign(s) => {
                flush_constant(&mut number)?;
                if pending_sign {
                    return Err(ParseError::at(column, "repeated sign"));
                }
                sign = s;
                pending_sign = true;
                expect_term = true;
            }
            Token::Number(value) => {
                if !expect_term || number.is_some() {
                    return Err(ParseError::at(column, "expected '+', '-' or '='"));
                }
                number = Some((column, value));
            }
            Token::Var(c) => {
                if !expect_term {
                    return Err(ParseError::at(column, "expected '+', '-' or '='"));
                }
                if vars.iter().any(|(v, _)| *v == c) {
                    return Err(ParseError::at(column, format!("variable '{c}' appears twice")));
                }
                let magnitude = number.take().map_or(1, |(_, v)| v);
                if magnitude == 0 {
                    return Err(ParseError::ZeroCoefficient { index: vars.len() });
                }
                vars.push((c, side * sign * magnitude));
                sign = 1;
                pending_sign = false;
                expect_term = false;
            }
            Token::Equals => {
                flush_constant(&mut number)?;
                if seen_equals {
                    return Err(ParseError::at(column, "more than one '='"));
                }
                if pending_sign {
                    return Err(ParseError::at(column, "dangling sign before '='"));
                }
                seen_equals = true;
                side = -1;
                sign = 1;
                expect_term = true;
            }
        }
    }
    flush_constant(&mut number)?;
    if pending_sign {
        return Err(ParseError::at(text.len(), "dangling sign at end of input"));
    }
    if !seen_equals {
        return Err(ParseError::at(text.len() + 1, "missing '='"));
    }
    LinearEquation::new(vars.into_iter().map(|(_, a)| a).collect())
}
