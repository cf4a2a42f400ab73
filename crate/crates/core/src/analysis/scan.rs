use num_rational::Ratio;
use serde::Serialize;

use crate::domain::{Coloring, Domain};
use crate::equation::LinearEquation;
use crate::error::{Error, Result};
use crate::exhaustive::exact_min_mu;
use crate::search::{local_search, SearchConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditiveCheck {
    pub k: usize,
    pub n: usize,
    pub min_mu: Ratio<u64>,
    pub witness: Coloring,
    /// `2^(1-k)`.
    pub bound: Ratio<u64>,
    pub bound_holds: bool,
    pub exhaustive: bool,
}

/// Exhaustive minimum for `x_1 + ... + x_{k/2} = x_{k/2+1} + ... + x_k` over
/// `[n]`, compared with the random-coloring value `2^(1-k)`.
pub fn additive_tuple_check(k: usize, n: usize, budget: u64) -> Result<AdditiveCheck> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::Invalid(format!("k = {k} must be even and at least 2")));
    }
    let eq = LinearEquation::additive_tuple(k)?;
    let r = exact_min_mu(&eq, Domain::Interval(n), budget)?;
    let bound = Ratio::new(1, 1u64 << (k - 1));
    Ok(AdditiveCheck {
        k,
        n,
        bound_holds: r.proportion >= bound,
        min_mu: r.proportion,
        witness: r.witness,
        bound,
        exhaustive: r.exhaustive,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub total: u64,
    pub min_mono: u64,
    pub min_mu: Ratio<u64>,
    /// False when the budget stopped the exhaustive scan; `min_mono` is then
    /// the best of the partial scan and a local search.
    pub exact: bool,
}

impl ScanRow {
    pub fn per_n_squared(&self) -> f64 {
        self.min_mono as f64 / (self.n * self.n) as f64
    }
}

/// Minimum monochromatic count for each `n`.
pub fn lower_bound_scan(eq: &LinearEquation, ns: &[usize], budget: u64) -> Result<Vec<ScanRow>> {
    ns.iter()
        .map(|&n| {
            let r = exact_min_mu(eq, Domain::Interval(n), budget)?;
            let mut row = ScanRow {
                n,
                total: r.total,
                min_mono: r.monochromatic,
                min_mu: r.proportion,
                exact: r.exhaustive,
            };
            if !r.exhaustive {
                let found = local_search(eq, &SearchConfig::new(n, 0))?;
                if found.monochromatic < row.min_mono {
                    row.min_mono = found.monochromatic;
                    row.min_mu = found.proportion;
                }
            }
            Ok(row)
        })
        .collect()
}

/// First row whose minimum proportion exceeds the previous row's.
pub fn first_increase(rows: &[ScanRow]) -> Option<usize> {
    rows.windows(2).find(|w| w[1].min_mu > w[0].min_mu).map(|w| w[1].n)
}

/// CSV with header `n,total,min_mono,min_mu_num,min_mu_den,exact_flag`.
pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("n,total,min_mono,min_mu_num,min_mu_den,exact_flag\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n,
            r.total,
            r.min_mono,
            r.min_mu.numer(),
            r.min_mu.denom(),
            r.exact as u8
        ));
    }
    out
}
