//! Steepest-descent single-flip local search for colorings with few
//! monochromatic solutions.
//!
//! Solutions are stored once per distinct element set with a multiplicity,
//! and every element keeps the change in monochromatic count its flip would
//! cause. A flip then costs `O(k^2)` per solution through the flipped element.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::Ratio;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{Color, Coloring, Domain};
use crate::equation::LinearEquation;
use crate::error::{Error, Result};
use crate::solutions::for_each_solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub restarts: usize,
    /// Maximum accepted flips per descent.
    pub max_passes: usize,
    pub n: usize,
}

impl SearchConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        Self {
            seed,
            restarts: 20,
            max_passes: usize::MAX,
            n,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_passes == 0 || self.n == 0 {
            return Err(Error::Invalid("restarts, max_passes and n must be positive".into()));
        }
        Ok(())
    }
}

/// Solutions of one equation, grouped by distinct element set.
#[derive(Debug)]
pub struct SolutionIndex {
    domain: Domain,
    total: u64,
    /// Element indices of solution `s` are `members[offsets[s]..offsets[s + 1]]`.
    members: Vec<u32>,
    offsets: Vec<usize>,
    weights: Vec<u64>,
    /// Solutions through each element.
    incidence: Vec<Vec<u32>>,
}

impl SolutionIndex {
    pub fn build(eq: &LinearEquation, domain: Domain) -> Result<Self> {
        let mut groups: HashMap<Vec<u32>, u64> = HashMap::new();
        let mut total = 0u64;
        for_each_solution(eq, domain, |x| {
            let mut set: Vec<u32> = x.iter().map(|&v| domain.index(v) as u32).collect();
            set.sort_unstable();
            set.dedup();
            *groups.entry(set).or_default() += 1;
            total += 1;
        });
        if total == 0 {
            return Err(Error::NoSolutions(domain));
        }
        let mut groups: Vec<_> = groups.into_iter().collect();
        groups.sort_unstable();
        let mut members = Vec::new();
        let mut offsets = vec![0];
        let mut weights = Vec::with_capacity(groups.len());
        let mut incidence = vec![Vec::new(); domain.size()];
        for (s, (set, weight)) in groups.into_iter().enumerate() {
            for &u in &set {
                incidence[u as usize].push(s as u32);
            }
            members.extend(set);
            offsets.push(members.len());
            weights.push(weight);
        }
        Ok(Self {
            domain,
            total,
            members,
            offsets,
            weights,
            incidence,
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    #[inline]
    fn solution(&self, s: usize) -> &[u32] {
        &self.members[self.offsets[s]..self.offsets[s + 1]]
    }
}

/// A coloring together with incrementally maintained counters.
#[derive(Debug, Clone)]
pub struct FlipState {
    index: Arc<SolutionIndex>,
    red: Vec<bool>,
    reds_in: Vec<u8>,
    gains: Vec<i64>,
    monochromatic: u64,
}

impl FlipState {
    pub fn new(index: Arc<SolutionIndex>, coloring: &Coloring) -> Result<Self> {
        if coloring.domain() != index.domain {
            return Err(Error::DomainMismatch {
                expected: index.domain,
                found: coloring.domain(),
            });
        }
        let red: Vec<bool> = coloring.values().iter().map(|&c| c == Color::Red).collect();
        let count = index.weights.len();
        let mut state = Self {
            reds_in: vec![0; count],
            gains: vec![0; red.len()],
            monochromatic: 0,
            red,
            index,
        };
        for s in 0..count {
            let members = state.index.solution(s);
            state.reds_in[s] = members.iter().filter(|&&u| state.red[u as usize]).count() as u8;
            if state.is_mono(s) {
                state.monochromatic += state.index.weights[s];
            }
        }
        for s in 0..count {
            for i in state.index.offsets[s]..state.index.offsets[s + 1] {
                let u = state.index.members[i] as usize;
                state.gains[u] += state.contribution(s, u);
            }
        }
        Ok(state)
    }

    #[inline]
    fn is_mono_with(&self, s: usize, reds: u8) -> bool {
        let len = self.index.offsets[s + 1] - self.index.offsets[s];
        reds == 0 || reds as usize == len
    }

    #[inline]
    fn is_mono(&self, s: usize) -> bool {
        self.is_mono_with(s, self.reds_in[s])
    }

    /// Change in the monochromatic count of solution `s` if `u` flipped.
    #[inline]
    fn contribution(&self, s: usize, u: usize) -> i64 {
        let reds = self.reds_in[s];
        let after = if self.red[u] { reds - 1 } else { reds + 1 };
        let w = self.index.weights[s] as i64;
        (self.is_mono_with(s, after) as i64 - self.is_mono_with(s, reds) as i64) * w
    }

    fn adjust_gains(&mut self, u: usize, sign: i64) {
        let index = Arc::clone(&self.index);
        for &s in &index.incidence[u] {
            let s = s as usize;
            for &v in index.solution(s) {
                let c = self.contribution(s, v as usize);
                self.gains[v as usize] += sign * c;
            }
        }
    }

    /// Flips the element at position `u`.
    pub fn flip(&mut self, u: usize) {
        let delta = self.gains[u];
        self.adjust_gains(u, -1);
        let was_red = self.red[u];
        self.red[u] = !was_red;
        for &s in &self.index.incidence[u] {
            let s = s as usize;
            if was_red {
                self.reds_in[s] -= 1;
            } else {
                self.reds_in[s] += 1;
            }
        }
        self.adjust_gains(u, 1);
        self.monochromatic = (self.monochromatic as i64 + delta) as u64;
    }

    pub fn monochromatic(&self) -> u64 {
        self.monochromatic
    }

    /// Change in the monochromatic count if position `u` flipped.
    pub fn gain(&self, u: usize) -> i64 {
        self.gains[u]
    }

    pub fn coloring(&self) -> Coloring {
        let domain = self.index.domain;
        Coloring::from_fn(domain, |x| {
            if self.red[domain.index(x)] {
                Color::Red
            } else {
                Color::Blue
            }
        })
    }

    /// Position with the most negative gain, smallest index on ties.
    fn best_move(&self) -> Option<(usize, i64)> {
        let (u, &g) = self.gains.iter().enumerate().min_by_key(|&(i, &g)| (g, i))?;
        (g < 0).then_some((u, g))
    }

    /// Steepest descent until no flip strictly helps or `max_passes` flips
    /// have been made. Returns the number of flips.
    pub fn descend(&mut self, max_passes: usize) -> usize {
        let mut passes = 0;
        while passes < max_passes {
            let Some((u, _)) = self.best_move() else { break };
            self.flip(u);
            passes += 1;
        }
        passes
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestartTrace {
    pub restart: usize,
    pub initial_monochromatic: u64,
    pub final_monochromatic: u64,
    pub passes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub proportion: Ratio<u64>,
    pub monochromatic: u64,
    pub total: u64,
    pub witness: Coloring,
    pub best_restart: usize,
    pub trace: Vec<RestartTrace>,
}

impl SearchResult {
    pub fn proportion_f64(&self) -> f64 {
        self.monochromatic as f64 / self.total as f64
    }
}

/// Starting coloring for restart `r`: ChaCha8 seeded with `seed`, stream `r`,
/// one `next_u64()` per element, red iff the top bit is set.
pub fn restart_coloring(domain: Domain, seed: u64, restart: usize) -> Coloring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    Coloring::from_fn(domain, |_| {
        if rng.next_u64() >> 63 == 1 {
            Color::Red
        } else {
            Color::Blue
        }
    })
}

/// Best local minimum over `cfg.restarts` seeded random starts on `[cfg.n]`.
pub fn local_search(eq: &LinearEquation, cfg: &SearchConfig) -> Result<SearchResult> {
    local_search_in(eq, Domain::Interval(cfg.n), cfg)
}

/// [`local_search`] over an arbitrary domain; `cfg.n` is ignored.
pub fn local_search_in(eq: &LinearEquation, domain: Domain, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let index = Arc::new(SolutionIndex::build(eq, domain)?);
    let runs: Vec<(RestartTrace, Coloring)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|restart| {
            let start = restart_coloring(domain, cfg.seed, restart);
            let mut state = FlipState::new(Arc::clone(&index), &start).expect("domain checked");
            let initial = state.monochromatic();
            let passes = state.descend(cfg.max_passes);
            (
                RestartTrace {
                    restart,
                    initial_monochromatic: initial,
                    final_monochromatic: state.monochromatic(),
                    passes,
                },
                state.coloring(),
            )
        })
        .collect();
    let best = runs
        .iter()
        .min_by_key(|(t, _)| (t.final_monochromatic, t.restart))
        .expect("at least one restart");
    let (best_trace, witness) = best.clone();
    let total = index.total();
    Ok(SearchResult {
        proportion: Ratio::new(best_trace.final_monochromatic, total),
        monochromatic: best_trace.final_monochromatic,
        total,
        witness,
        best_restart: best_trace.restart,
        trace: runs.into_iter().map(|(t, _)| t).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Improvement {
    pub coloring: Coloring,
    pub before: u64,
    pub after: u64,
    pub total: u64,
    pub passes: usize,
    pub improved: bool,
}

/// Runs the same descent from a given coloring.
pub fn improve_coloring(eq: &LinearEquation, start: &Coloring, cfg: &SearchConfig) -> Result<Improvement> {
    if cfg.max_passes == 0 {
        return Err(Error::Invalid("max_passes must be positive".into()));
    }
    let index = Arc::new(SolutionIndex::build(eq, start.domain())?);
    let mut state = FlipState::new(Arc::clone(&index), start)?;
    let before = state.monochromatic();
    let passes = state.descend(cfg.max_passes);
    Ok(Improvement {
        coloring: state.coloring(),
        before,
        after: state.monochromatic(),
        total: index.total(),
        passes,
        improved: passes > 0,
    })
}
