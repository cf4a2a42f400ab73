//! Fourier analysis on `Z_m` for probabilistic colorings.
//!
//! Normalization: the forward transform carries the `1/m`,
//!
//! ```text
//! f^(xi) = (1/m) sum_t f(t) e^{-2 pi i xi t / m},    f(v) = sum_t f^(t) e^{2 pi i t v / m}.
//! ```
//!
//! With this convention `f^(0)` is the mean of `f`, i.e. the probability that
//! a uniformly chosen residue is red. A negative [`deviation`] together with
//! `f^(0) = 1/2` certifies that `ax + by + cz = 0` (with `m = |c|`) has fewer
//! than a quarter of its solutions monochromatic in expectation.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{Color, Coloring, Domain};
use crate::equation::LinearEquation;
use crate::error::{Assumption, Error, Result};
use crate::solutions::for_each_solution;

/// Tolerance for the Hermitian symmetry check.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Largest imaginary part accepted as "real".
pub const REAL_TOL: f64 = 1e-10;
/// Slack allowed outside `[0, 1]`.
pub const RANGE_TOL: f64 = 1e-12;

/// `f(t) = P[t is red]` on `Z_m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbColoring {
    values: Vec<f64>,
}

impl ProbColoring {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("a probabilistic coloring needs m >= 1".into()));
        }
        for (index, &value) in values.iter().enumerate() {
            if !(-RANGE_TOL..=1.0 + RANGE_TOL).contains(&value) || value.is_nan() {
                return Err(Error::OutOfRange { index, value });
            }
        }
        Ok(Self {
            values: values.into_iter().map(|v| v.clamp(0.0, 1.0)).collect(),
        })
    }

    pub fn constant(m: usize, p: f64) -> Result<Self> {
        Self::new(vec![p; m])
    }

    pub fn from_coloring(f: &Coloring) -> Result<Self> {
        match f.domain() {
            Domain::Cyclic(_) => Ok(Self {
                values: f
                    .values()
                    .iter()
                    .map(|&c| if c == Color::Red { 1.0 } else { 0.0 })
                    .collect(),
            }),
            other => Err(Error::Invalid(format!("expected a coloring of Z_m, got {other}"))),
        }
    }

    pub fn modulus(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Draws a concrete coloring, each residue red independently with
    /// probability `f(t)`. Uses the same ChaCha8 stream as
    /// [`crate::colorings::random_coloring`], comparing the top 53 bits of
    /// each draw against `f(t)`.
    pub fn sample(&self, seed: u64) -> Coloring {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = self.values.clone();
        Coloring::from_fn(Domain::Cyclic(self.modulus()), |t| {
            let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
            if u < values[t as usize] {
                Color::Red
            } else {
                Color::Blue
            }
        })
    }
}

/// Fourier coefficients `f^(xi)` for `xi` in `Z_m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "SpectrumJson", try_from = "SpectrumJson")]
pub struct Spectrum {
    coefficients: Vec<Complex64>,
}

/// Wire form: `{"m": 5, "coefficients": [[xi, re, im], ...]}`. Missing
/// frequencies are zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub m: usize,
    pub coefficients: Vec<(usize, f64, f64)>,
}

impl From<Spectrum> for SpectrumJson {
    fn from(s: Spectrum) -> Self {
        SpectrumJson {
            m: s.modulus(),
            coefficients: s
                .coefficients
                .iter()
                .enumerate()
                .map(|(xi, c)| (xi, c.re, c.im))
                .collect(),
        }
    }
}

impl TryFrom<SpectrumJson> for Spectrum {
    type Error = Error;

    fn try_from(json: SpectrumJson) -> Result<Self> {
        if json.m == 0 {
            return Err(Error::Invalid("spectrum modulus must be positive".into()));
        }
        let mut coefficients = vec![Complex64::new(0.0, 0.0); json.m];
        for (xi, re, im) in json.coefficients {
            if xi >= json.m {
                return Err(Error::Invalid(format!(
                    "frequency {xi} out of range for m = {}",
                    json.m
                )));
            }
            coefficients[xi] = Complex64::new(re, im);
        }
        Ok(Spectrum { coefficients })
    }
}

impl Spectrum {
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Invalid("spectrum modulus must be positive".into()));
        }
        Ok(Self { coefficients })
    }

    pub fn zeros(m: usize) -> Self {
        Self {
            coefficients: vec![Complex64::new(0.0, 0.0); m.max(1)],
        }
    }

    pub fn modulus(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// `f^(s)` with `s` read modulo `m`.
    #[inline]
    pub fn at(&self, s: i64) -> Complex64 {
        self.coefficients[s.rem_euclid(self.modulus() as i64) as usize]
    }

    pub fn set(&mut self, s: i64, value: Complex64) {
        let m = self.modulus() as i64;
        self.coefficients[s.rem_euclid(m) as usize] = value;
    }

    /// First frequency violating `conj(f^(s)) = f^(-s)`, if any.
    pub fn hermitian_violation(&self) -> Option<usize> {
        (0..self.modulus()).find(|&s| (self.at(s as i64).conj() - self.at(-(s as i64))).norm() > HERMITIAN_TOL)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_violation().is_none()
    }

    /// `sum_{t != 0} |f^(t)|`, which bounds `|f(v) - f^(0)|`.
    pub fn off_zero_l1(&self) -> f64 {
        self.coefficients[1..].iter().map(|c| c.norm()).sum()
    }

    fn check_hermitian(&self) -> Result<()> {
        match self.hermitian_violation() {
            Some(s) => Err(Error::NotHermitian(s)),
            None => Ok(()),
        }
    }
}

fn twiddle(m: usize, k: i64) -> Complex64 {
    // reduce first so the angle stays small for large products
    let k = k.rem_euclid(m as i64) as f64;
    Complex64::from_polar(1.0, 2.0 * PI * k / m as f64)
}

/// Forward transform of real values on `Z_m`, normalized by `1/m`.
pub fn dft_values(values: &[f64]) -> Spectrum {
    let m = values.len();
    let coefficients = (0..m as i64)
        .map(|xi| {
            values
                .iter()
                .enumerate()
                .map(|(t, &v)| twiddle(m, -xi * t as i64) * v)
                .sum::<Complex64>()
                / m as f64
        })
        .collect();
    Spectrum { coefficients }
}

pub fn dft(f: &ProbColoring) -> Spectrum {
    dft_values(f.values())
}

/// Fourier inversion, returning the complex values.
pub fn idft_complex(spectrum: &Spectrum) -> Vec<Complex64> {
    let m = spectrum.modulus();
    (0..m as i64)
        .map(|v| {
            spectrum
                .coefficients
                .iter()
                .enumerate()
                .map(|(t, &c)| c * twiddle(m, t as i64 * v))
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    /// Return real parts as they are.
    Lenient,
    /// Reject non-real output or values outside `[0, 1]`.
    Strict,
}

/// Fourier inversion to a real map. In strict mode the result must be real to
/// [`REAL_TOL`] and lie in `[0, 1]` up to [`RANGE_TOL`].
pub fn idft(spectrum: &Spectrum, mode: Strictness) -> Result<Vec<f64>> {
    let values = idft_complex(spectrum);
    if mode == Strictness::Strict {
        for (index, v) in values.iter().enumerate() {
            if v.im.abs() > REAL_TOL {
                return Err(Error::NotReal { index, imag: v.im });
            }
            if !(-RANGE_TOL..=1.0 + RANGE_TOL).contains(&v.re) {
                return Err(Error::OutOfRange { index, value: v.re });
            }
        }
    }
    Ok(values.into_iter().map(|v| v.re).collect())
}

/// Strict inversion straight to a probabilistic coloring.
pub fn prob_coloring_from_spectrum(spectrum: &Spectrum) -> Result<ProbColoring> {
    ProbColoring::new(idft(spectrum, Strictness::Strict)?)
}

fn real_part(z: Complex64) -> Result<f64> {
    if z.im.abs() > REAL_TOL {
        return Err(Error::NotReal { index: 0, imag: z.im });
    }
    Ok(z.re)
}

/// `sum f^(at) f^(bt)` over `t` in `Z_m` with `at != 0` and `bt != 0`.
pub fn deviation(a: i64, b: i64, spectrum: &Spectrum) -> Result<f64> {
    spectrum.check_hermitian()?;
    let m = spectrum.modulus() as i64;
    let sum: Complex64 = (0..m)
        .filter(|t| (a * t).rem_euclid(m) != 0 && (b * t).rem_euclid(m) != 0)
        .map(|t| spectrum.at(a * t) * spectrum.at(b * t))
        .sum();
    real_part(sum)
}

/// Expected monochromatic proportion of `ax + by + cz = 0` over `Z_m`,
/// `m = |c|`, for the probabilistic coloring with spectrum `f^`:
///
/// `f^(0) sum_t f^(at) f^(bt) + g^(0) sum_t g^(at) g^(bt)` with `g = 1 - f`.
pub fn mu_expected_fourier(a: i64, b: i64, spectrum: &Spectrum) -> Result<f64> {
    let m = spectrum.modulus() as i64;
    if a.abs() >= m || b.abs() >= m {
        return Err(Error::AssumptionFailed(Assumption::UniqueMax));
    }
    spectrum.check_hermitian()?;
    let f = |s: i64| spectrum.at(s);
    let g = |s: i64| {
        let delta = if s.rem_euclid(m) == 0 { 1.0 } else { 0.0 };
        Complex64::new(delta, 0.0) - spectrum.at(s)
    };
    let red: Complex64 = f(0) * (0..m).map(|t| f(a * t) * f(b * t)).sum::<Complex64>();
    let blue: Complex64 = g(0) * (0..m).map(|t| g(a * t) * g(b * t)).sum::<Complex64>();
    real_part(red + blue)
}

/// Expected monochromatic proportion by summing over every solution of a
/// 3-term equation modulo `m`.
pub fn expected_mu_direct(eq: &LinearEquation, f: &ProbColoring) -> Result<f64> {
    if eq.arity() != 3 {
        return Err(Error::Arity {
            expected: 3,
            found: eq.arity(),
        });
    }
    let domain = Domain::Cyclic(f.modulus());
    let p = f.values();
    let mut total = 0u64;
    let mut sum = 0.0;
    for_each_solution(eq, domain, |x| {
        total += 1;
        let (u, v, w) = (p[x[0] as usize], p[x[1] as usize], p[x[2] as usize]);
        sum += u * v * w + (1.0 - u) * (1.0 - v) * (1.0 - w);
    });
    if total == 0 {
        return Err(Error::NoSolutions(domain));
    }
    Ok(sum / total as f64)
}

/// Which of the Fourier assumptions fail for `(a, b, c)` with `m = |c|`.
pub fn failed_assumption(a: i64, b: i64, c: i64) -> Option<Assumption> {
    let m = c.abs();
    if m <= a.abs() || m <= b.abs() {
        return Some(Assumption::UniqueMax);
    }
    if a.gcd(&m) != 1 && b.gcd(&m) != 1 {
        return Some(Assumption::LowGcd);
    }
    if (a + b).rem_euclid(m) == 0 {
        return Some(Assumption::ZeroSum);
    }
    None
}

/// Spectrum with `f^(0) = 1/2` whose deviation for `ax + by + cz = 0` is
/// negative.
///
/// When `a != b (mod m)` the nonzero coefficients are `f^(+-a) = -1/8` and
/// `f^(+-b) = 1/9`; when `a = b` they are `f^(a) = i/4`, `f^(-a) = -i/4`.
/// `a` and `b` are swapped first if `gcd(a, m) != 1`.
pub fn construct_uncommon_spectrum(a: i64, b: i64, c: i64) -> Result<Spectrum> {
    let g = a.gcd(&b).gcd(&c);
    if g != 1 {
        return Err(Error::Unreduced(g));
    }
    if let Some(assumption) = failed_assumption(a, b, c) {
        return Err(Error::AssumptionFailed(assumption));
    }
    let m = c.abs();
    let (a, b) = if a.gcd(&m) == 1 { (a, b) } else { (b, a) };
    let mut spectrum = Spectrum::zeros(m as usize);
    spectrum.set(0, Complex64::new(0.5, 0.0));
    if (a - b).rem_euclid(m) == 0 {
        spectrum.set(a, Complex64::new(0.0, 0.25));
        spectrum.set(-a, Complex64::new(0.0, -0.25));
    } else {
        spectrum.set(b, Complex64::new(1.0 / 9.0, 0.0));
        spectrum.set(-b, Complex64::new(1.0 / 9.0, 0.0));
        spectrum.set(a, Complex64::new(-1.0 / 8.0, 0.0));
        spectrum.set(-a, Complex64::new(-1.0 / 8.0, 0.0));
    }
    Ok(spectrum)
}

/// Upper bound on the deviation in the `a != +-b` case: two guaranteed
/// `-1/72` terms and at most two `1/81` terms.
pub const DEVIATION_BOUND: f64 = -2.0 * (1.0 / 8.0) * (1.0 / 9.0) + 2.0 / 81.0;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equation::parse_equation;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn constant_half() {
        let s = dft(&ProbColoring::constant(6, 0.5).unwrap());
        assert!(close(s.at(0).re, 0.5, 1e-15));
        assert!(s.coefficients()[1..].iter().all(|c| c.norm() < 1e-15));
    }

    #[test]
    fn delta_function() {
        let s = dft(&ProbColoring::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap());
        for c in s.coefficients() {
            assert!((c - Complex64::new(0.25, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn inverse_of_constant_spectrum() {
        let mut s = Spectrum::zeros(7);
        s.set(0, Complex64::new(0.5, 0.0));
        let v = idft(&s, Strictness::Strict).unwrap();
        assert!(v.iter().all(|&x| close(x, 0.5, 1e-15)));
    }

    #[test]
    fn strict_inverse_rejects_bad_spectra() {
        let mut s = Spectrum::zeros(5);
        s.set(0, Complex64::new(0.5, 0.0));
        s.set(1, Complex64::new(0.1, 0.0));
        assert!(matches!(idft(&s, Strictness::Strict), Err(Error::NotReal { .. })));
        assert!(idft(&s, Strictness::Lenient).is_ok());

        let mut s = Spectrum::zeros(5);
        s.set(0, Complex64::new(0.9, 0.0));
        s.set(1, Complex64::new(0.2, 0.0));
        s.set(-1, Complex64::new(0.2, 0.0));
        assert!(matches!(idft(&s, Strictness::Strict), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn deviation_examples() {
        let s = construct_uncommon_spectrum(1, 1, -3).unwrap();
        assert!(close(deviation(1, 1, &s).unwrap(), -0.125, 1e-15));

        let s = construct_uncommon_spectrum(1, 2, -5).unwrap();
        assert!(close(deviation(1, 2, &s).unwrap(), -1.0 / 18.0, 1e-15));
        assert!(deviation(1, 2, &s).unwrap() <= DEVIATION_BOUND);

        let mut z = Spectrum::zeros(9);
        z.set(0, Complex64::new(0.5, 0.0));
        assert_eq!(deviation(2, 3, &z).unwrap(), 0.0);
    }

    #[test]
    fn deviation_rejects_non_hermitian() {
        let mut s = Spectrum::zeros(5);
        s.set(1, Complex64::new(0.1, 0.0));
        assert_eq!(deviation(1, 2, &s), Err(Error::NotHermitian(1)));
    }

    #[test]
    fn fourier_formula_examples() {
        let mut half = Spectrum::zeros(3);
        half.set(0, Complex64::new(0.5, 0.0));
        assert!(close(mu_expected_fourier(1, 1, &half).unwrap(), 0.25, 1e-15));

        let s = construct_uncommon_spectrum(1, 1, -3).unwrap();
        assert!(close(mu_expected_fourier(1, 1, &s).unwrap(), 0.125, 1e-12));

        assert_eq!(
            mu_expected_fourier(3, 1, &s),
            Err(Error::AssumptionFailed(Assumption::UniqueMax))
        );
    }

    #[test]
    fn direct_expectation_baselines() {
        let e = parse_equation("[1,2,-5]").unwrap();
        assert!(close(
            expected_mu_direct(&e, &ProbColoring::constant(5, 1.0).unwrap()).unwrap(),
            1.0,
            1e-15
        ));
        assert!(close(
            expected_mu_direct(&e, &ProbColoring::constant(5, 0.5).unwrap()).unwrap(),
            0.25,
            1e-15
        ));
    }

    #[test]
    fn construction_errors_name_the_assumption() {
        assert_eq!(
            construct_uncommon_spectrum(1, -1, 3),
            Err(Error::AssumptionFailed(Assumption::ZeroSum))
        );
        assert_eq!(
            construct_uncommon_spectrum(3, 1, -3),
            Err(Error::AssumptionFailed(Assumption::UniqueMax))
        );
        assert_eq!(construct_uncommon_spectrum(2, 4, -6), Err(Error::Unreduced(2)));
        assert_eq!(
            construct_uncommon_spectrum(2, 3, -6),
            Err(Error::AssumptionFailed(Assumption::LowGcd))
        );
    }

    #[test]
    fn swaps_when_a_shares_a_factor_with_m() {
        // gcd(3, 9) = 3, so b = 2 takes the -1/8 role
        let s = construct_uncommon_spectrum(3, 2, -9).unwrap();
        assert!(close(s.at(2).re, -0.125, 1e-15));
        assert!(close(s.at(3).re, 1.0 / 9.0, 1e-15));
        assert!(deviation(3, 2, &s).unwrap() < 0.0);
    }

    #[test]
    fn spectrum_json() {
        let s = construct_uncommon_spectrum(1, 1, -3).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"m":3,"coefficients":[[0,0.5,0.0],[1,0.0,0.25],[2,0.0,-0.25]]}"#
        );
        let back: Spectrum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let sparse: Spectrum = serde_json::from_str(r#"{"m":4,"coefficients":[[0,0.5,0]]}"#).unwrap();
        assert_eq!(sparse.at(3), Complex64::new(0.0, 0.0));
        assert!(serde_json::from_str::<Spectrum>(r#"{"m":4,"coefficients":[[4,0.5,0]]}"#).is_err());
    }

    #[test]
    fn sampling_follows_probabilities() {
        let f = ProbColoring::new(vec![0.0, 1.0, 0.5]).unwrap();
        let c = f.sample(3);
        assert_eq!(c.get(0), Color::Blue);
        assert_eq!(c.get(1), Color::Red);
        assert_eq!(f.sample(3), c);
    }
}
