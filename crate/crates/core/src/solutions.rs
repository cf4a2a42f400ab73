//! Enumerating and counting solutions of a linear equation over a domain.
//!
//! Two independent routes are provided. [`Solutions`] walks every ordered
//! tuple in lexicographic order; [`count_in_set`] counts tuples with all
//! entries in a given set by convolving partial-sum histograms, which is
//! `O(k * range * |set|)` instead of `O(n^(k-1))`. The two are cross-checked
//! in tests.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::domain::{Color, Coloring, Domain};
use crate::equation::LinearEquation;
use crate::error::{Error, Result};

/// Lending cursor over the solutions of `eq` in `domain`.
///
/// The first `k - 1` variables run through an odometer; the last one is
/// solved for, so tuples appear in lexicographic order.
pub struct SolutionCursor<'a> {
    coeffs: &'a [i64],
    domain: Domain,
    x: Vec<i64>,
    prefix_sum: i64,
    started: bool,
    candidates: Vec<i64>,
    cand_pos: usize,
    /// For `Z_m`: residues `x` with `a_k x = r`, indexed by `r`.
    inverse_table: Option<Vec<Vec<i64>>>,
}

impl<'a> SolutionCursor<'a> {
    pub fn new(eq: &'a LinearEquation, domain: Domain) -> Self {
        let coeffs = eq.coefficients();
        let k = coeffs.len();
        let inverse_table = domain.modulus().map(|m| {
            let last = coeffs[k - 1];
            let mut table = vec![Vec::new(); m];
            for x in 0..m as i64 {
                table[(last * x).rem_euclid(m as i64) as usize].push(x);
            }
            table
        });
        Self {
            coeffs,
            domain,
            x: vec![domain.first(); k],
            prefix_sum: 0,
            started: false,
            candidates: Vec::new(),
            cand_pos: 0,
            inverse_table,
        }
    }

    fn step_prefix(&mut self) -> bool {
        let first = self.domain.first();
        let last = first + self.domain.size() as i64 - 1;
        for i in (0..self.coeffs.len() - 1).rev() {
            if self.x[i] < last {
                self.x[i] += 1;
                self.prefix_sum += self.coeffs[i];
                return true;
            }
            self.prefix_sum -= self.coeffs[i] * (self.x[i] - first);
            self.x[i] = first;
        }
        false
    }

    fn fill_candidates(&mut self) {
        self.candidates.clear();
        self.cand_pos = 0;
        let a = *self.coeffs.last().unwrap();
        let target = -self.prefix_sum;
        match (&self.inverse_table, self.domain) {
            (Some(table), Domain::Cyclic(m)) => {
                let r = target.rem_euclid(m as i64) as usize;
                self.candidates.extend_from_slice(&table[r]);
            }
            (_, Domain::Interval(n)) => {
                if target % a == 0 {
                    let v = target / a;
                    if (1..=n as i64).contains(&v) {
                        self.candidates.push(v);
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    /// Advances to the next solution and borrows it.
    pub fn advance(&mut self) -> Option<&[i64]> {
        if self.domain.size() == 0 {
            return None;
        }
        loop {
            if self.cand_pos < self.candidates.len() {
                let k = self.x.len();
                self.x[k - 1] = self.candidates[self.cand_pos];
                self.cand_pos += 1;
                return Some(&self.x);
            }
            if !self.started {
                self.started = true;
                let first = self.domain.first();
                self.prefix_sum = self.coeffs[..self.coeffs.len() - 1].iter().map(|a| a * first).sum();
            } else if !self.step_prefix() {
                return None;
            }
            self.fill_candidates();
        }
    }
}

/// Owning iterator over all ordered solutions, in lexicographic order.
pub struct Solutions<'a> {
    cursor: SolutionCursor<'a>,
}

impl Iterator for Solutions<'_> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Self::Item> {
        self.cursor.advance().map(<[i64]>::to_vec)
    }
}

/// Every `(x_1, ..., x_k)` in `domain^k` with `sum a_i x_i = 0` (over the
/// integers for intervals, modulo `m` for cyclic groups).
pub fn enumerate_solutions(eq: &LinearEquation, domain: Domain) -> Solutions<'_> {
    Solutions {
        cursor: SolutionCursor::new(eq, domain),
    }
}

/// Calls `visit` on each solution without allocating per tuple.
pub fn for_each_solution(eq: &LinearEquation, domain: Domain, mut visit: impl FnMut(&[i64])) {
    let mut cursor = SolutionCursor::new(eq, domain);
    while let Some(x) = cursor.advance() {
        visit(x);
    }
}

/// Number of solutions with every entry drawn from `set`, a subset of
/// `domain` given in any order.
pub fn count_in_set(eq: &LinearEquation, domain: Domain, set: &[i64]) -> u64 {
    if set.is_empty() {
        return 0;
    }
    let coeffs = eq.coefficients();
    match domain {
        Domain::Cyclic(m) => {
            let (head, last) = coeffs.split_at(coeffs.len() - 1);
            let last = last[0];
            let m = m as i64;
            let mut hist = vec![0u64; m as usize];
            hist[0] = 1;
            for &a in head {
                let mut next = vec![0u64; m as usize];
                for (r, &count) in hist.iter().enumerate() {
                    if count == 0 {
                        continue;
                    }
                    for &x in set {
                        next[(r as i64 + a * x).rem_euclid(m) as usize] += count;
                    }
                }
                hist = next;
            }
            set.iter().map(|&x| hist[(-last * x).rem_euclid(m) as usize]).sum()
        }
        Domain::Interval(_) => {
            // split the variables and match the two partial sums
            let (left, right) = coeffs.split_at(coeffs.len() / 2);
            let (lo_l, h_l) = weighted_sums(left, set);
            let (lo_r, h_r) = weighted_sums(right, set);
            h_l.iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| {
                    let idx = -(lo_l + i as i64) - lo_r;
                    if idx >= 0 && (idx as usize) < h_r.len() {
                        c * h_r[idx as usize]
                    } else {
                        0
                    }
                })
                .sum()
        }
    }
}

/// Histogram of `a_1 x_1 + ... + a_j x_j` over `x_i` in `set`, as the lowest
/// value and counts from there.
fn weighted_sums(coeffs: &[i64], set: &[i64]) -> (i64, Vec<u64>) {
    let lo_x = *set.iter().min().unwrap();
    let hi_x = *set.iter().max().unwrap();
    let contiguous = (hi_x - lo_x + 1) as usize == set.len();
    let mut lo = 0i64;
    let mut hist = vec![1u64];
    for &a in coeffs {
        let (step_lo, step_hi) = if a > 0 {
            (a * lo_x, a * hi_x)
        } else {
            (a * hi_x, a * lo_x)
        };
        let next_lo = lo + step_lo;
        let mut next = vec![0u64; hist.len() + (step_hi - step_lo) as usize];
        if contiguous {
            // next[w] sums hist over an arithmetic window of stride |a|
            let d = a.unsigned_abs() as usize;
            let mut prefix = hist.clone();
            for i in d..prefix.len() {
                prefix[i] += prefix[i - d];
            }
            let at = |i: i64| -> u64 {
                if i < 0 {
                    return 0;
                }
                let top = prefix.len() as i64 - 1;
                let i = if i > top {
                    i - (i - top + d as i64 - 1) / d as i64 * d as i64
                } else {
                    i
                };
                if i < 0 {
                    0
                } else {
                    prefix[i as usize]
                }
            };
            for (j, slot) in next.iter_mut().enumerate() {
                // hist index of w - a x, w = next_lo + j
                let w = next_lo + j as i64 - lo;
                let (u, v) = (w - a * lo_x, w - a * hi_x);
                let (u_lo, u_hi) = (u.min(v), u.max(v));
                *slot = at(u_hi) - at(u_lo - d as i64);
            }
        } else {
            for (i, &count) in hist.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let base = lo + i as i64 - next_lo;
                for &x in set {
                    next[(base + a * x) as usize] += count;
                }
            }
        }
        lo = next_lo;
        hist = next;
    }
    (lo, hist)
}

/// `|T_E(D)|`.
pub fn count_total(eq: &LinearEquation, domain: Domain) -> u64 {
    let all: Vec<i64> = domain.elements().collect();
    count_in_set(eq, domain, &all)
}

/// Counts of all and of monochromatic solutions under one coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionStats {
    pub total: u64,
    pub monochromatic: u64,
    pub red: u64,
    pub blue: u64,
    /// `monochromatic / total`, reduced.
    pub proportion: Ratio<u64>,
}

impl SolutionStats {
    fn from_counts(domain: Domain, total: u64, red: u64, blue: u64) -> Result<Self> {
        if total == 0 {
            return Err(Error::NoSolutions(domain));
        }
        Ok(Self {
            total,
            monochromatic: red + blue,
            red,
            blue,
            proportion: Ratio::new(red + blue, total),
        })
    }

    pub fn proportion_f64(&self) -> f64 {
        *self.proportion.numer() as f64 / *self.proportion.denom() as f64
    }
}

/// Exact solution statistics of `eq` under `coloring`, over the coloring's
/// own domain.
pub fn count_stats(eq: &LinearEquation, coloring: &Coloring) -> Result<SolutionStats> {
    let domain = coloring.domain();
    let total = count_total(eq, domain);
    let red = count_in_set(eq, domain, &coloring.class(Color::Red));
    let blue = count_in_set(eq, domain, &coloring.class(Color::Blue));
    SolutionStats::from_counts(domain, total, red, blue)
}

/// [`count_stats`] with an explicit domain that the coloring must match.
pub fn count_stats_in(eq: &LinearEquation, domain: Domain, coloring: &Coloring) -> Result<SolutionStats> {
    if coloring.domain() != domain {
        return Err(Error::DomainMismatch {
            expected: domain,
            found: coloring.domain(),
        });
    }
    count_stats(eq, coloring)
}

/// The same statistics obtained by walking every solution.
pub fn count_stats_by_enumeration(eq: &LinearEquation, coloring: &Coloring) -> Result<SolutionStats> {
    let (mut total, mut red, mut blue) = (0u64, 0u64, 0u64);
    for_each_solution(eq, coloring.domain(), |x| {
        total += 1;
        let c = coloring.get(x[0]);
        if x[1..].iter().all(|&v| coloring.get(v) == c) {
            match c {
                Color::Red => red += 1,
                Color::Blue => blue += 1,
            }
        }
    });
    SolutionStats::from_counts(coloring.domain(), total, red, blue)
}
