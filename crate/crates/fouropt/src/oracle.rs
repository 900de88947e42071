//! Exhaustive best-move search over every (scheme, selection) pair.
//!
//! `Θ(n⁴)` per scheme, so only practical for small instances — but it is the
//! ground truth every faster engine is tested against. When an engine and the
//! oracle disagree, the oracle is right.

use crate::model::Costs;
use crate::schemes::{gain, Scheme, Selection};

/// A concrete move: a scheme applied at a selection, with its exact gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Move {
    pub scheme: Scheme,
    pub selection: Selection,
    pub gain: f64,
}

impl Move {
    /// Deterministic tie order shared by all engines: larger gain first, then
    /// smaller scheme id, then lexicographically smaller selection.
    pub fn beats(&self, other: &Move) -> bool {
        if self.gain != other.gain {
            return self.gain > other.gain;
        }
        (self.scheme.id(), self.selection.positions())
            < (other.scheme.id(), other.selection.positions())
    }
}

/// Outcome of a best-move search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    /// Best move found, or `None` when nothing qualified (no complete
    /// selection exists, no scheme was requested, or — with `improving_only`
    /// — no move has positive gain).
    pub best: Option<Move>,
    /// Number of candidate evaluations performed; the unit is engine-specific
    /// (the oracle counts (scheme, selection) pairs).
    pub evaluated: u64,
}

impl SearchResult {
    pub fn none() -> SearchResult {
        SearchResult {
            best: None,
            evaluated: 0,
        }
    }

    /// Keep only improving moves.
    pub fn improving(mut self) -> SearchResult {
        self.best = self.best.filter(|m| m.gain > 0.0);
        self
    }

    /// Merge another search's outcome into this one under the tie order.
    pub fn merge(mut self, other: SearchResult) -> SearchResult {
        self.evaluated += other.evaluated;
        self.best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(if b.beats(&a) { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// All complete selections for `n` nodes in lexicographic order.
///
/// Empty for `n < 8`: four pairwise non-adjacent edges need at least eight
/// nodes.
pub fn enumerate_complete_selections(n: usize) -> impl Iterator<Item = Selection> {
    (0..n).flat_map(move |i1| {
        (i1 + 2..n).flat_map(move |i2| {
            (i2 + 2..n).flat_map(move |i3| {
                (i3 + 2..n).filter_map(move |i4| {
                    let sel = Selection::new([i1, i2, i3, i4]).expect("strictly increasing");
                    sel.is_complete(n).then_some(sel)
                })
            })
        })
    })
}

/// Best move over the given schemes by exhaustive enumeration.
pub fn best_move_brute(
    costs: &impl Costs,
    schemes: &[Scheme],
    improving_only: bool,
) -> SearchResult {
    let n = costs.n();
    let mut best: Option<Move> = None;
    let mut evaluated = 0u64;
    for &scheme in schemes {
        for selection in enumerate_complete_selections(n) {
            let cand = Move {
                scheme,
                selection,
                gain: gain(costs, scheme, selection),
            };
            evaluated += 1;
            if best.as_ref().is_none_or(|b| cand.beats(b)) {
                best = Some(cand);
            }
        }
    }
    let result = SearchResult { best, evaluated };
    if improving_only {
        result.improving()
    } else {
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CostMatrix;

    fn all_schemes() -> Vec<Scheme> {
        Scheme::all().collect()
    }

    /// Independent count: n/4 · C(n-5, 3) circular selections of four
    /// pairwise non-adjacent edges.
    fn closed_form(n: u64) -> u64 {
        if n < 8 {
            return 0;
        }
        let k = n - 5;
        n * (k * (k - 1) * (k - 2) / 6) / 4
    }

    #[test]
    fn selections_for_n8() {
        let got: Vec<[usize; 4]> = enumerate_complete_selections(8)
            .map(|s| s.positions())
            .collect();
        assert_eq!(got, vec![[0, 2, 4, 6], [1, 3, 5, 7]]);
    }

    #[test]
    fn selection_counts_match_closed_form() {
        assert_eq!(enumerate_complete_selections(7).count(), 0);
        assert_eq!(enumerate_complete_selections(9).count(), 9);
        assert_eq!(enumerate_complete_selections(12).count(), 105);
        for n in 3..=30usize {
            assert_eq!(
                enumerate_complete_selections(n).count() as u64,
                closed_form(n as u64),
                "count mismatch at n={n}"
            );
        }
    }

    #[test]
    fn selections_are_lexicographic_and_complete() {
        for n in [8usize, 11, 14] {
            let sels: Vec<Selection> = enumerate_complete_selections(n).collect();
            for w in sels.windows(2) {
                assert!(w[0] < w[1]);
            }
            assert!(sels.iter().all(|s| s.is_complete(n)));
        }
    }

    #[test]
    fn uniform_instance_has_no_improving_move() {
        let costs = CostMatrix::uniform(10, 3.0).unwrap();
        let res = best_move_brute(&costs, &all_schemes(), true);
        assert_eq!(res.best, None);
        assert_eq!(res.evaluated, 25 * 25); // |selections(10)| = 10·C(5,3)/4 = 25

        let res = best_move_brute(&costs, &all_schemes(), false);
        let best = res.best.unwrap();
        assert_eq!(best.gain, 0.0);
        // Tie order: scheme r1 at the lexicographically first selection.
        assert_eq!(best.scheme.id(), 1);
        assert_eq!(best.selection.positions(), [0, 2, 4, 6]);
    }

    #[test]
    fn n8_examines_fifty_pairs() {
        let costs = CostMatrix::uniform(8, 1.0).unwrap();
        let res = best_move_brute(&costs, &all_schemes(), false);
        assert_eq!(res.evaluated, 50);
    }

    #[test]
    fn small_n_yields_empty_result() {
        let costs = CostMatrix::uniform(6, 1.0).unwrap();
        let res = best_move_brute(&costs, &all_schemes(), false);
        assert_eq!(
            res,
            SearchResult {
                best: None,
                evaluated: 0
            }
        );
    }

    #[test]
    fn beats_orders_by_gain_then_scheme_then_selection() {
        let m = |id: u8, sel: [usize; 4], gain: f64| Move {
            scheme: Scheme::from_id(id).unwrap(),
            selection: Selection::new(sel).unwrap(),
            gain,
        };
        let a = m(5, [0, 2, 4, 6], 10.0);
        let b = m(1, [1, 3, 5, 7], 9.0);
        assert!(a.beats(&b) && !b.beats(&a));
        let c = m(1, [1, 3, 5, 7], 10.0);
        assert!(c.beats(&a) && !a.beats(&c));
        let d = m(1, [0, 3, 5, 7], 10.0);
        assert!(d.beats(&c) && !c.beats(&d));
        assert!(!d.beats(&d));
    }
}
