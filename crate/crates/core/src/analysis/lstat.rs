use num_rational::Ratio;
use serde::Serialize;

use crate::domain::{Coloring, Domain};
use crate::equation::LinearEquation;
use crate::error::{Error, Result};
use crate::solutions::for_each_solution;

/// `L = sum over solutions of f(x)f(y) + f(x)f(z) + f(y)f(z)`.
///
/// Each summand is 3 on a monochromatic solution and -1 otherwise, so
/// `4 * monochromatic = total + L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LReport {
    pub l: i64,
    pub total: u64,
    pub monochromatic: u64,
    /// `L / n^2`.
    pub normalized: Ratio<i64>,
}

impl LReport {
    pub fn normalized_f64(&self) -> f64 {
        *self.normalized.numer() as f64 / *self.normalized.denom() as f64
    }
}

pub fn l_statistic(eq: &LinearEquation, f: &Coloring) -> Result<LReport> {
    if eq.arity() != 3 {
        return Err(Error::Arity {
            expected: 3,
            found: eq.arity(),
        });
    }
    let (mut l, mut total, mut mono) = (0i64, 0u64, 0u64);
    for_each_solution(eq, f.domain(), |x| {
        let (a, b, c) = (f.sign(x[0]), f.sign(x[1]), f.sign(x[2]));
        l += a * b + a * c + b * c;
        total += 1;
        if a == b && b == c {
            mono += 1;
        }
    });
    assert_eq!(4 * mono as i64, total as i64 + l, "L identity must hold exactly");
    let n = f.domain().size() as i64;
    Ok(LReport {
        l,
        total,
        monochromatic: mono,
        normalized: Ratio::new(l, (n * n).max(1)),
    })
}

/// Pair-by-pair decomposition of `L` for `2x - y + 2z = 0`.
///
/// For `i < j`, case `r` adds `f(i) f(j)` when `(i, j)` can fill a given
/// ordered pair of roles:
///
/// | case | roles    | restriction          |
/// |------|----------|----------------------|
/// | 1    | (x, z)   | `1 <= 2i + 2j <= n`  |
/// | 2    | (z, x)   | `1 <= 2j + 2i <= n`  |
/// | 3    | (x, y)   | `2 <= j - 2i <= 2n`  |
/// | 4    | (y, x)   | `2 <= i - 2j <= 2n`  |
/// | 5    | (y, z)   | `2 <= i - 2j <= 2n`  |
/// | 6    | (z, y)   | `2 <= j - 2i <= 2n`  |
///
/// Cases 3 and 6 ignore the parity of `j`, so each really contributes half of
/// its sum. Cases 4 and 5 need `i > j` and vanish; case 6 equals case 3.
/// Hence `L = L1 + L2 + (L3 + L6)/2 + O(n) = 2 L1 + L3 + O(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LDecomposition {
    pub report: LReport,
    /// `L_1 .. L_6`.
    pub cases: [i64; 6],
    /// `2 L_1 + L_3`.
    pub combined: i64,
    /// `|L - (2 L_1 + L_3)|`.
    pub gap: u64,
}

impl LDecomposition {
    /// The symmetric cases agree and the empty ones vanish.
    pub fn structure_holds(&self) -> bool {
        let c = self.cases;
        c[0] == c[1] && c[2] == c[5] && c[3] == 0 && c[4] == 0
    }

    /// `gap / n`, the constant in the `O(n)` term.
    pub fn gap_per_n(&self, n: usize) -> f64 {
        self.gap as f64 / n as f64
    }
}

pub fn l_decomposition_221(n: usize, f: &Coloring) -> Result<LDecomposition> {
    if f.domain() != Domain::Interval(n) {
        return Err(Error::DomainMismatch {
            expected: Domain::Interval(n),
            found: f.domain(),
        });
    }
    let eq = LinearEquation::new(vec![2, -1, 2]).expect("valid");
    let report = l_statistic(&eq, f)?;
    let n = n as i64;
    let mut cases = [0i64; 6];
    for i in 1..=n {
        let fi = f.sign(i);
        for j in i + 1..=n {
            let p = fi * f.sign(j);
            let hits = [
                (1..=n).contains(&(2 * i + 2 * j)),
                (1..=n).contains(&(2 * j + 2 * i)),
                (2..=2 * n).contains(&(j - 2 * i)),
                (2..=2 * n).contains(&(i - 2 * j)),
                (2..=2 * n).contains(&(i - 2 * j)),
                (2..=2 * n).contains(&(j - 2 * i)),
            ];
            for (case, hit) in cases.iter_mut().zip(hits) {
                if hit {
                    *case += p;
                }
            }
        }
    }
    let combined = 2 * cases[0] + cases[2];
    Ok(LDecomposition {
        gap: report.l.abs_diff(combined),
        report,
        cases,
        combined,
    })
}
