//! Named colorings: block patterns, the alternating prefix, the residue-0
//! point coloring, lifts of cyclic colorings, and seeded random colorings.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{Color, Coloring, Domain};
use crate::error::{Error, ParseError, Result};

/// Consecutive blocks of `[n]`, block `j` covering
/// `(floor(b_{j-1} n), floor(b_j n)]` with `b_0 = 0` and a final breakpoint
/// of 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpec {
    breakpoints: Vec<Ratio<u64>>,
    colors: Vec<Color>,
}

impl BlockSpec {
    pub fn new(breakpoints: Vec<Ratio<u64>>, colors: Vec<Color>) -> Result<Self> {
        if colors.len() != breakpoints.len() + 1 {
            return Err(Error::Invalid(format!(
                "{} breakpoints need {} colors, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                colors.len()
            )));
        }
        let mut prev = Ratio::from_integer(0);
        for &b in &breakpoints {
            if b <= prev || b > Ratio::from_integer(1) {
                return Err(Error::Invalid(format!(
                    "breakpoints must increase strictly within (0, 1], got {b} after {prev}"
                )));
            }
            prev = b;
        }
        Ok(Self { breakpoints, colors })
    }

    /// Blue on `[1, 4n/11]`, red up to `10n/11`, blue after.
    pub fn schur() -> Self {
        Self::new(
            vec![Ratio::new(4, 11), Ratio::new(10, 11)],
            vec![Color::Blue, Color::Red, Color::Blue],
        )
        .unwrap()
    }

    /// Blue on `[1, n/8]`, red up to `n/2`, blue after.
    pub fn three_block_221() -> Self {
        Self::new(
            vec![Ratio::new(1, 8), Ratio::new(1, 2)],
            vec![Color::Blue, Color::Red, Color::Blue],
        )
        .unwrap()
    }

    pub fn breakpoints(&self) -> &[Ratio<u64>] {
        &self.breakpoints
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }
}

fn color_word(word: &str) -> Option<Color> {
    match word.trim().to_ascii_lowercase().as_str() {
        "blue" | "b" => Some(Color::Blue),
        "red" | "r" => Some(Color::Red),
        _ => None,
    }
}

impl FromStr for BlockSpec {
    type Err = ParseError;

    /// `blue:4/11,red:10/11,blue`: each block but the last names its right
    /// endpoint.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut breakpoints = Vec::new();
        let mut colors = Vec::new();
        let mut column = 1;
        let pieces: Vec<&str> = s.split(',').collect();
        for (i, piece) in pieces.iter().enumerate() {
            let is_last = i + 1 == pieces.len();
            let (color, bound) = match piece.split_once(':') {
                Some((c, b)) => (c, Some(b)),
                None => (*piece, None),
            };
            let color =
                color_word(color).ok_or_else(|| ParseError::at(column, format!("unknown color '{}'", color.trim())))?;
            colors.push(color);
            match (bound, is_last) {
                (Some(b), false) => {
                    let b = b.trim();
                    let ratio = Ratio::<u64>::from_str(b)
                        .map_err(|_| ParseError::at(column, format!("invalid fraction '{b}'")))?;
                    breakpoints.push(ratio);
                }
                (None, true) => {}
                (Some(_), true) => {
                    return Err(ParseError::at(column, "last block must not name an endpoint"));
                }
                (None, false) => return Err(ParseError::at(column, "block is missing ':<fraction>'")),
            }
            column += piece.len() + 1;
        }
        BlockSpec::new(breakpoints, colors).map_err(|e| ParseError::at(1, e.to_string()))
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |c: Color| match c {
            Color::Blue => "blue",
            Color::Red => "red",
        };
        for (c, b) in self.colors.iter().zip(&self.breakpoints) {
            write!(f, "{}:{b},", word(*c))?;
        }
        write!(f, "{}", word(*self.colors.last().unwrap()))
    }
}

/// `floor(r * n)` without overflow for moderate `n`.
fn floor_times(r: Ratio<u64>, n: usize) -> u64 {
    (*r.numer() as u128 * n as u128 / *r.denom() as u128) as u64
}

/// Colors `[n]` block by block; boundaries are floored, so a boundary element
/// belongs to the earlier block. Blocks that round to nothing are skipped.
pub fn block_coloring(n: usize, spec: &BlockSpec) -> Coloring {
    let ends: Vec<u64> = spec.breakpoints.iter().map(|&b| floor_times(b, n)).collect();
    Coloring::from_fn(Domain::Interval(n), |t| {
        let block = ends.iter().take_while(|&&e| (t as u64) > e).count();
        spec.colors[block]
    })
}

/// Boundary fraction used by [`alternating_prefix_coloring`].
pub fn alternating_prefix_alpha(c: u64) -> Ratio<u64> {
    if c == 1 {
        Ratio::new(3, 4)
    } else {
        Ratio::new(2, c)
    }
}

/// Blue exactly on the even `t <= floor(alpha n)`, where `alpha = 3/4` for
/// `c = 1` and `2/c` otherwise. Used for `2x - 2y + cz = 0`, so `c` must be
/// odd.
pub fn alternating_prefix_coloring(n: usize, c: u64) -> Result<Coloring> {
    if c.is_multiple_of(2) {
        return Err(Error::Invalid(format!(
            "c = {c} is even; 2x - 2y + cz = 0 is only reduced for odd c"
        )));
    }
    let bound = floor_times(alternating_prefix_alpha(c), n) as i64;
    Ok(Coloring::from_fn(Domain::Interval(n), |t| {
        if t % 2 == 0 && t <= bound {
            Color::Blue
        } else {
            Color::Red
        }
    }))
}

/// Blue at residue 0, red elsewhere.
pub fn point_coloring_cyclic(m: usize) -> Coloring {
    Coloring::from_fn(Domain::Cyclic(m), |t| if t == 0 { Color::Blue } else { Color::Red })
}

/// Pulls a coloring of `Z_m` back to `[n]` along `t -> t mod m`.
pub fn lift_from_cyclic(f: &Coloring, n: usize) -> Result<Coloring> {
    let Domain::Cyclic(m) = f.domain() else {
        return Err(Error::Invalid(format!(
            "lift needs a coloring of Z_m, got {}",
            f.domain()
        )));
    };
    Ok(Coloring::from_fn(Domain::Interval(n), |t| {
        f.get(t.rem_euclid(m as i64))
    }))
}

/// Independent fair coin per element.
///
/// The generator is ChaCha8 seeded with `seed_from_u64(seed)`; element `i`
/// (in domain order) is red iff the top bit of the `i`-th `next_u64()` output
/// is set. The stream is fixed by the ChaCha specification, so colorings are
/// identical on every platform.
pub fn random_coloring(domain: Domain, seed: u64) -> Coloring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Coloring::from_fn(domain, |_| {
        if rng.next_u64() >> 63 == 1 {
            Color::Red
        } else {
            Color::Blue
        }
    })
}
