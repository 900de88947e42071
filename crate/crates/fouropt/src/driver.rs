//! Best-improvement local search driven by any of the move engines.

use std::fmt;
use std::time::{Duration, Instant};

use crate::deberg::best_move_deberg;
use crate::glover::{best_move_glover, bridge_schemes, BRIDGE_SCHEME_IDS};
use crate::model::{tour_length, CostMatrix, Costs, ModelError, Tour};
use crate::oracle::{best_move_brute, Move, SearchResult};
use crate::schemes::{apply_move, Scheme};

/// Which search engine picks the move at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineChoice {
    /// Exhaustive Θ(n⁴) scan of all 25 schemes.
    Brute,
    /// Θ(n³) dynamic program over all 25 schemes.
    DeBerg,
    /// Θ(n²) dynamic program over the three bridge schemes r10, r16, r25.
    Glover,
    /// Θ(n²) engine for the bridge schemes merged with the Θ(n³) engine for
    /// the remaining 22.
    Hybrid,
}

impl EngineChoice {
    pub const ALL: [EngineChoice; 4] = [
        EngineChoice::Brute,
        EngineChoice::DeBerg,
        EngineChoice::Glover,
        EngineChoice::Hybrid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EngineChoice::Brute => "brute",
            EngineChoice::DeBerg => "deberg",
            EngineChoice::Glover => "glover",
            EngineChoice::Hybrid => "hybrid",
        }
    }

    pub fn parse(s: &str) -> Option<EngineChoice> {
        EngineChoice::ALL.into_iter().find(|e| e.name() == s)
    }

    /// Schemes this engine searches.
    pub fn schemes(self) -> Vec<Scheme> {
        match self {
            EngineChoice::Glover => bridge_schemes().to_vec(),
            _ => Scheme::all().collect(),
        }
    }
}

impl fmt::Display for EngineChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Best move under the given engine. All engines agree exactly on the scheme
/// set they share; `Glover` only searches r10, r16, r25.
pub fn best_move(costs: &impl Costs, engine: EngineChoice, improving_only: bool) -> SearchResult {
    match engine {
        EngineChoice::Brute => {
            let schemes: Vec<Scheme> = Scheme::all().collect();
            best_move_brute(costs, &schemes, improving_only)
        }
        EngineChoice::DeBerg => {
            let schemes: Vec<Scheme> = Scheme::all().collect();
            best_move_deberg(costs, &schemes, improving_only)
        }
        EngineChoice::Glover => best_move_glover(costs, improving_only),
        EngineChoice::Hybrid => {
            let rest: Vec<Scheme> = Scheme::all()
                .filter(|s| !BRIDGE_SCHEME_IDS.contains(&s.id()))
                .collect();
            let result =
                best_move_glover(costs, false).merge(best_move_deberg(costs, &rest, false));
            if improving_only {
                result.improving()
            } else {
                result
            }
        }
    }
}

/// Cost view of an instance through a tour: position `p` maps to node
/// `tour[p]`, so position space always carries the canonical tour
/// `0, 1, …, n-1`.
pub struct TourCosts<'a> {
    tour: &'a Tour,
    base: &'a CostMatrix,
}

impl<'a> TourCosts<'a> {
    pub fn new(tour: &'a Tour, base: &'a CostMatrix) -> Result<Self, ModelError> {
        if tour.len() != base.n() {
            return Err(ModelError::DimensionMismatch {
                tour: tour.len(),
                instance: base.n(),
            });
        }
        Ok(TourCosts { tour, base })
    }
}

impl Costs for TourCosts<'_> {
    fn n(&self) -> usize {
        self.base.n()
    }

    fn cost(&self, u: usize, v: usize) -> f64 {
        self.base.cost(self.tour.node_at(u), self.tour.node_at(v))
    }
}

/// One applied step of the local search.
#[derive(Debug, Clone)]
pub struct AppliedMove {
    /// The move, in *position* space of the tour it was applied to.
    pub mv: Move,
    /// Time spent finding it.
    pub search_time: Duration,
}

/// Summary of one local-search run.
#[derive(Debug, Clone)]
pub struct RunStats {
    pub engine: EngineChoice,
    pub initial_length: f64,
    pub final_length: f64,
    pub iterations: usize,
    pub applied: Vec<AppliedMove>,
    pub total_time: Duration,
}

/// Run best-improvement local search from `start` until no improving move
/// remains (or `max_iters` steps were applied).
///
/// Each iteration searches the current tour through a [`TourCosts`] view, so
/// engines always see the canonical tour; an accepted move is then applied in
/// position space. Instances with exact integer costs accept any strictly
/// positive gain; floating instances require a gain above a small relative
/// threshold to guarantee termination.
pub fn local_search(
    costs: &CostMatrix,
    start: &Tour,
    engine: EngineChoice,
    max_iters: Option<usize>,
) -> Result<(Tour, RunStats), ModelError> {
    let initial_length = tour_length(start, costs)?;
    let eps = match costs.kind() {
        crate::model::ValueKind::ExactInteger => 0.0,
        crate::model::ValueKind::Floating => 1e-9 * initial_length.max(1.0),
    };
    let started = Instant::now();
    let mut tour = start.clone();
    let mut length = initial_length;
    let mut applied = Vec::new();
    while max_iters.is_none_or(|cap| applied.len() < cap) {
        let view = TourCosts::new(&tour, costs)?;
        let search_started = Instant::now();
        let result = best_move(&view, engine, true);
        let search_time = search_started.elapsed();
        let Some(mv) = result.best else { break };
        if mv.gain <= eps {
            break;
        }
        tour = apply_move(&tour, mv.scheme, mv.selection).expect("engine returns complete moves");
        length -= mv.gain;
        applied.push(AppliedMove { mv, search_time });
    }
    let final_length = tour_length(&tour, costs)?;
    let stats = RunStats {
        engine,
        initial_length,
        final_length,
        iterations: applied.len(),
        applied,
        total_time: started.elapsed(),
    };
    debug_assert!(
        (stats.final_length - length).abs() <= 1e-6 * (1.0 + length.abs()),
        "bookkeeping drifted: recomputed {} vs tracked {length}",
        stats.final_length,
    );
    Ok((tour, stats))
}

/// Least-squares slope of `log(y)` against `log(x)`; used to estimate the
/// empirical runtime exponent from (size, seconds) samples.
pub fn fit_loglog_slope(samples: &[(f64, f64)]) -> f64 {
    assert!(samples.len() >= 2, "need at least two samples");
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (k * sxy - sx * sy) / (k * sxx - sx * sx)
}
