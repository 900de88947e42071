//! Θ(n²) best-move engine for the three *bridge* schemes r10, r16, r25.
//!
//! Each of these schemes reconnects the tour with two independent 2-bridges:
//! one between cut slots (1,3) and one between slots (2,4), each bridge
//! either *parallel* (inserting `{a,b+1},{a+1,b}`) or *crossed* (inserting
//! `{a,b},{a+1,b+1}`). The gain is the sum of the two bridge gains, so the
//! best move is found by dynamic programming: for every outer pair `(i2,i4)`,
//! the best inner bridge `(i1,i3)` nested strictly inside it is maintained
//! with two chained prefix maxima — a rolling array `A[j] = max_{a ≤ i2-2}
//! gain(a,j)` and a per-row running maximum over `j ≤ i4-2` — giving `Θ(n²)`
//! time and `Θ(n)` extra space.
//!
//! All arithmetic uses plain successors (`x+1`, never wrapping), which misses
//! selections whose last cut sits at position `n-1`. A second run on a
//! rotated labelling, with the inner bridge pinned at the new position 0,
//! covers exactly those; because rotating the labels also rotates the slot
//! roles, the second run searches the scheme's image under the octic rotation
//! (r10 ↔ r16, r25 fixed) and maps the winner back.

use crate::fault::Fault;
use crate::model::{mod_sub, Costs};
use crate::oracle::{Move, SearchResult};
use crate::schemes::{Scheme, Selection};
use crate::symmetry::{act_on_scheme, GroupElement};

/// Catalog ids of the schemes this engine covers.
pub const BRIDGE_SCHEME_IDS: [u8; 3] = [10, 16, 25];

/// The three bridge schemes r10, r16, r25.
pub fn bridge_schemes() -> [Scheme; 3] {
    BRIDGE_SCHEME_IDS.map(|id| Scheme::from_id(id).expect("catalog ids"))
}

/// Orientation of the pair of edges replacing tour edges `(a,a+1)` and
/// `(b,b+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BridgeKind {
    /// Insert `{a, b+1}` and `{a+1, b}`.
    Parallel,
    /// Insert `{a, b}` and `{a+1, b+1}`.
    Crossed,
}

/// Gain of one 2-bridge: removed tour edges minus inserted pair.
/// Plain successor arithmetic; requires `a + 2 <= b <= n - 2`.
pub fn bridge_gain(costs: &impl Costs, kind: BridgeKind, a: usize, b: usize) -> f64 {
    debug_assert!(a + 2 <= b && b + 1 < costs.n());
    let removed = costs.cost(a, a + 1) + costs.cost(b, b + 1);
    match kind {
        BridgeKind::Parallel => removed - costs.cost(a, b + 1) - costs.cost(a + 1, b),
        BridgeKind::Crossed => removed - costs.cost(a, b) - costs.cost(a + 1, b + 1),
    }
}

/// Bridge kinds of a scheme: `(inner, outer)` for the (1,3) and (2,4) slot
/// pairs respectively.
fn kinds_of(id: u8) -> (BridgeKind, BridgeKind) {
    match id {
        25 => (BridgeKind::Parallel, BridgeKind::Parallel),
        16 => (BridgeKind::Parallel, BridgeKind::Crossed),
        10 => (BridgeKind::Crossed, BridgeKind::Parallel),
        other => panic!("r{other} is not a bridge scheme"),
    }
}

/// View of a cost structure with every label shifted up by one:
/// `cost'(x, y) = cost(x-1, y-1)` modulo `n`.
struct Rotated<'a, C: Costs> {
    base: &'a C,
}

impl<C: Costs> Costs for Rotated<'_, C> {
    fn n(&self) -> usize {
        self.base.n()
    }

    fn cost(&self, u: usize, v: usize) -> f64 {
        let n = self.base.n();
        self.base.cost(mod_sub(u, 1, n), mod_sub(v, 1, n))
    }
}

/// One full dynamic-programming sweep in the current labelling: the best
/// `inner + outer` bridge sum over all selections `i1 < i2 < i3 < i4` with
/// pairwise gaps ≥ 2 and `i4 ≤ n-2`, returned as `(value, selection)`.
///
/// When `pinned`, the inner bridge is anchored at `i1 = 0` (the wrap run).
/// Ties are broken champion-first in scan order `(i2, i4)` ascending, with
/// the inner argmax preferring the smallest `i1`, then the smallest `i3`.
fn scan_labelling(
    costs: &impl Costs,
    inner: BridgeKind,
    outer: BridgeKind,
    pinned: bool,
    fault: Option<Fault>,
    evaluated: &mut u64,
) -> Option<(f64, [usize; 4])> {
    let n = costs.n();
    if n < 8 {
        return None;
    }
    // Rolling prefix maxima: a_val[j] = best inner bridge (a, j) over every a
    // admitted so far (all a ≤ i2-2 once row i2 is processed); a_arg is its
    // argmax. Pinned runs admit a = 0 only.
    let mut a_val = vec![f64::NEG_INFINITY; n - 1];
    let mut a_arg = vec![usize::MAX; n - 1];
    let mut best: Option<(f64, [usize; 4])> = None;
    for i2 in 2..=n - 6 {
        let a = i2 - 2;
        if !pinned || a == 0 {
            for (j, slot) in a_val.iter_mut().enumerate().skip(a + 2) {
                let cand = bridge_gain(costs, inner, a, j);
                if cand > *slot {
                    *slot = cand;
                    a_arg[j] = a;
                }
            }
        }
        // Row i2: roll the best nested inner bridge while i4 grows, pairing
        // it with the outer bridge (i2, i4).
        let mut b_run = f64::NEG_INFINITY;
        let mut b_arg = (usize::MAX, usize::MAX);
        for i4 in i2 + 4..=n - 2 {
            let m = i4 - 2; // newly admissible inner right end
                            // Injected defect: never admit the newly exposed inner bridge.
            let keep_champion =
                i4 > i2 + 4 && (fault == Some(Fault::GloverBranch) || b_run >= a_val[m]);
            if !keep_champion {
                b_run = a_val[m];
                b_arg = (a_arg[m], m);
            }
            let val = bridge_gain(costs, outer, i2, i4) + b_run;
            *evaluated += 1;
            if best.is_none_or(|(b, _)| val > b) {
                best = Some((val, [b_arg.0, i2, b_arg.1, i4]));
            }
        }
    }
    best
}

pub(crate) fn best_move_single(
    costs: &impl Costs,
    scheme: Scheme,
    fault: Option<Fault>,
) -> SearchResult {
    let n = costs.n();
    let mut evaluated = 0u64;
    let mut best: Option<Move> = None;
    if n >= 8 {
        // Main run: covers every complete selection with i4 <= n - 2.
        let (inner, outer) = kinds_of(scheme.id());
        if let Some((gain, pos)) = scan_labelling(costs, inner, outer, false, fault, &mut evaluated)
        {
            let selection = Selection::new(pos).expect("scan emits ordered selections");
            debug_assert!(selection.is_complete(n));
            best = Some(Move {
                scheme,
                selection,
                gain,
            });
        }
        // Wrap run: selections with i4 = n - 1 appear, after rotating all
        // labels up by one, as selections starting at 0 — for the scheme's
        // image under the octic rotation. Pin the inner bridge at 0 and map
        // the winner back down.
        let rotated = Rotated { base: costs };
        let partner = act_on_scheme(GroupElement::RHO, scheme);
        let (p_inner, p_outer) = kinds_of(partner.id());
        if let Some((gain, [i1, j2, j3, j4])) =
            scan_labelling(&rotated, p_inner, p_outer, true, fault, &mut evaluated)
        {
            debug_assert_eq!(i1, 0, "pinned runs anchor the inner bridge at 0");
            let selection =
                Selection::new([j2 - 1, j3 - 1, j4 - 1, n - 1]).expect("j2 >= 2 in the wrap run");
            debug_assert!(selection.is_complete(n));
            let cand = Move {
                scheme,
                selection,
                gain,
            };
            if best.as_ref().is_none_or(|b| cand.beats(b)) {
                best = Some(cand);
            }
        }
    }
    SearchResult { best, evaluated }
}

/// Best r25 move over all complete selections (including wrapping ones).
pub fn best_move_r25(costs: &impl Costs) -> SearchResult {
    best_move_single(costs, Scheme::from_id(25).unwrap(), None)
}

/// Best r16 move over all complete selections (including wrapping ones).
pub fn best_move_r16(costs: &impl Costs) -> SearchResult {
    best_move_single(costs, Scheme::from_id(16).unwrap(), None)
}

/// Best r10 move over all complete selections (including wrapping ones).
pub fn best_move_r10(costs: &impl Costs) -> SearchResult {
    best_move_single(costs, Scheme::from_id(10).unwrap(), None)
}

/// Best move over the three bridge schemes in `Θ(n²)`.
pub fn best_move_glover(costs: &impl Costs, improving_only: bool) -> SearchResult {
    best_move_glover_with_fault(costs, improving_only, None)
}

/// Engine entry point with an optional injected fault (verification hook).
pub fn best_move_glover_with_fault(
    costs: &impl Costs,
    improving_only: bool,
    fault: Option<Fault>,
) -> SearchResult {
    let mut result = SearchResult::none();
    for scheme in bridge_schemes() {
        result = result.merge(best_move_single(costs, scheme, fault));
    }
    if improving_only {
        result.improving()
    } else {
        result
    }
}
