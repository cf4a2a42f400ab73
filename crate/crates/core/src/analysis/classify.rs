//! Assigns every reduced 3-term equation to the argument that shows it is
//! uncommon over `[n]`, and predicts commonness for longer equations.

use num_integer::Integer;
use serde::Serialize;

use crate::colorings::{alternating_prefix_coloring, block_coloring, point_coloring_cyclic, BlockSpec};
use crate::domain::Coloring;
use crate::equation::LinearEquation;
use crate::error::{Assumption, Error, Result};
use crate::fourier::{construct_uncommon_spectrum, failed_assumption, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    /// `m = |c|` is the unique maximum, one of `a, b` is a unit mod `m`, and
    /// `a + b != 0 mod m`: a spectrum with negative deviation exists.
    FourierCase,
    /// Two coefficients share a factor `g >= 3`; the residue-0 coloring of
    /// `Z_g` leaves only `(0, 0, 0)` monochromatic.
    HighGcd,
    /// `x - y + cz = 0` with `|c| >= 2`.
    SchurFamily,
    /// `ax + by = (a + b) z`.
    AdditiveTranslate,
    /// `2x - 2y + cz = 0`, `c` odd.
    Residual2x2ycz,
    /// `2x - y + 2z = 0`.
    Residual2xy2z,
    /// `x + y - z = 0`.
    Schur,
    /// All coefficients share a sign; there are no solutions in `[n]`.
    NoPositiveSolutions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Prediction {
    UncommonProved,
    UncommonConjectured,
    CommonConjectured,
    CommonProved,
}

/// A coloring recipe (or spectrum) witnessing uncommonness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Certificate {
    Spectrum(Spectrum),
    /// Blue at residue 0 of `Z_m`.
    Point {
        m: usize,
    },
    AlternatingPrefix {
        c: u64,
    },
    Blocks(BlockSpec),
}

impl Certificate {
    /// Concrete coloring of `[n]`, or of `Z_m` for the point coloring.
    /// Spectra describe probabilistic colorings and yield `None`.
    pub fn coloring(&self, n: usize) -> Option<Coloring> {
        match self {
            Certificate::Spectrum(_) => None,
            Certificate::Point { m } => Some(point_coloring_cyclic(*m)),
            Certificate::AlternatingPrefix { c } => alternating_prefix_coloring(n, *c).ok(),
            Certificate::Blocks(spec) => Some(block_coloring(n, spec)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub equation: LinearEquation,
    /// Canonical form used for the case split (3-term equations only).
    pub normalized: Option<LinearEquation>,
    pub branch: Option<Branch>,
    pub prediction: Prediction,
    pub certificate: Option<Certificate>,
}

/// Canonical `(a, b, c)`: `c` has the largest absolute value and is negative,
/// `|a| <= |b|`, and among ties positive `a`, then positive `b`, come first.
/// The sign flip and the permutation leave the solution counts unchanged.
pub fn normalize_three_term(eq: &LinearEquation) -> Result<[i64; 3]> {
    if eq.arity() != 3 {
        return Err(Error::Arity {
            expected: 3,
            found: eq.arity(),
        });
    }
    let v: [i64; 3] = eq.coefficients().try_into().expect("3 terms");
    let top = v.iter().map(|a| a.abs()).max().unwrap();
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let best = [1i64, -1]
        .iter()
        .flat_map(|&sign| PERMS.iter().map(move |p| [v[p[0]], v[p[1]], v[p[2]]].map(|a| sign * a)))
        .filter(|w| w[2] == -top && w[0].abs() <= w[1].abs())
        .min_by_key(|w| (w[0].abs(), w[1].abs(), w[0] < 0, w[1] < 0))
        .expect("some arrangement puts the largest magnitude last with a minus sign");
    Ok(best)
}

fn largest_pair_gcd(v: &[i64; 3]) -> i64 {
    let pairs = [(0, 1), (0, 2), (1, 2)];
    pairs.iter().map(|&(i, j)| v[i].gcd(&v[j])).max().unwrap()
}

/// Picks the branch of the 3-term case analysis that applies to `eq`.
pub fn classify_three_term(eq: &LinearEquation) -> Result<Verdict> {
    let g = eq.gcd();
    if g != 1 {
        return Err(Error::Unreduced(g));
    }
    let [a, b, c] = normalize_three_term(eq)?;
    let normalized = LinearEquation::new(vec![a, b, c]).expect("nonzero");
    let verdict = |branch, certificate| {
        Ok(Verdict {
            equation: eq.clone(),
            normalized: Some(normalized.clone()),
            branch: Some(branch),
            prediction: Prediction::UncommonProved,
            certificate,
        })
    };

    let failure = failed_assumption(a, b, c);
    let Some(failure) = failure else {
        let spectrum = construct_uncommon_spectrum(a, b, c)?;
        return verdict(Branch::FourierCase, Some(Certificate::Spectrum(spectrum)));
    };
    let pair_gcd = largest_pair_gcd(&[a, b, c]);
    if pair_gcd >= 3 {
        return verdict(Branch::HighGcd, Some(Certificate::Point { m: pair_gcd as usize }));
    }
    if eq.is_single_signed() {
        return verdict(Branch::NoPositiveSolutions, None);
    }
    let m = c.abs();
    match failure {
        Assumption::UniqueMax => {
            // |b| = |c| = M; M >= 3 would share a factor >= 3.
            match m {
                1 => verdict(Branch::Schur, Some(Certificate::Blocks(BlockSpec::schur()))),
                2 if b.signum() == c.signum() => verdict(
                    Branch::Residual2xy2z,
                    Some(Certificate::Blocks(BlockSpec::three_block_221())),
                ),
                2 => verdict(
                    Branch::Residual2x2ycz,
                    Some(Certificate::AlternatingPrefix { c: a.unsigned_abs() }),
                ),
                _ => unreachable!("tied maximum {m} >= 3 shares a factor"),
            }
        }
        Assumption::LowGcd => unreachable!("gcd(a, m), gcd(b, m) >= 2 needs a factor >= 3 or an unreduced equation"),
        Assumption::ZeroSum => {
            if a + b == 0 {
                // |a| >= 3 was HighGcd
                match a.abs() {
                    1 => verdict(Branch::SchurFamily, None),
                    2 => verdict(
                        Branch::Residual2x2ycz,
                        Some(Certificate::AlternatingPrefix { c: m as u64 }),
                    ),
                    _ => unreachable!(),
                }
            } else {
                // a + b = -c, since a + b = c would make all signs equal
                verdict(Branch::AdditiveTranslate, None)
            }
        }
    }
}

/// Commonness over `[n]` for any number of terms.
///
/// Even `k` with a canceling partition is common (proved for additive tuples,
/// conjectured otherwise); even `k` without one is uncommon; 3-term equations
/// are uncommon; other odd lengths are conjectured uncommon.
pub fn predict_commonness(eq: &LinearEquation) -> Result<Verdict> {
    let k = eq.arity();
    if k == 3 {
        return classify_three_term(&eq.reduced());
    }
    let prediction = if k.is_multiple_of(2) {
        if eq.has_canceling_partition() {
            if eq.reduced().is_additive_tuple() {
                Prediction::CommonProved
            } else {
                Prediction::CommonConjectured
            }
        } else {
            Prediction::UncommonProved
        }
    } else {
        Prediction::UncommonConjectured
    };
    Ok(Verdict {
        equation: eq.clone(),
        normalized: None,
        branch: None,
        prediction,
        certificate: None,
    })
}
