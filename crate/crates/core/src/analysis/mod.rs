//! L-statistics, the 3-term classifier, robust sumsets and exhaustive scans.

mod classify;
mod lstat;
mod scan;
mod sumset;

pub use classify::{
    classify_three_term, normalize_three_term, predict_commonness, Branch, Certificate, Prediction, Verdict,
};
pub use lstat::{l_decomposition_221, l_statistic, LDecomposition, LReport};
pub use scan::{additive_tuple_check, first_increase, lower_bound_scan, scan_csv, AdditiveCheck, ScanRow};
pub use sumset::{representation_counts, robust_sum_set, sumset};
