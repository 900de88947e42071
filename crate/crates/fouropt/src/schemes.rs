//! The 25 pure reassembly schemes and the moves they induce.
//!
//! Removing four pairwise non-adjacent edges at cut positions
//! `i1 < i2 < i3 < i4` splits the canonical tour into four segments; segment
//! `s` runs from position `i(s-1)⊕1` to `i(s)` (segment 1 wraps from `i4⊕1`
//! around to `i1`). A *scheme* is a signed permutation of `{2,3,4}`: after
//! traversing segment 1 forward, visit the remaining segments in the given
//! order, each forward (`+`) or reversed (`-`). A scheme is *pure* when none
//! of the four reconnecting edges coincides with a removed edge; exactly 25
//! of the 48 signed permutations are pure, and they are catalogued here as
//! `r1..r25`.

use crate::model::{mod_add, Costs, Tour};
use std::fmt;
use thiserror::Error;

/// Number of pure schemes.
pub const SCHEME_COUNT: usize = 25;

/// The catalog of pure schemes, `CATALOG[k]` being `r(k+1)`.
const CATALOG: [[i8; 3]; SCHEME_COUNT] = [
    [-2, -3, -4], // r1
    [-2, 3, -4],  // r2
    [-2, -4, 3],  // r3
    [-2, 4, -3],  // r4
    [-2, 4, 3],   // r5
    [-3, 2, -4],  // r6
    [3, -2, -4],  // r7
    [3, 2, -4],   // r8
    [-3, -4, -2], // r9
    [-3, -4, 2],  // r10
    [-3, 4, -2],  // r11
    [-3, 4, 2],   // r12
    [3, -4, -2],  // r13
    [3, -4, 2],   // r14
    [-4, -2, -3], // r15
    [4, -2, -3],  // r16
    [-4, -2, 3],  // r17
    [4, -2, 3],   // r18
    [-4, 2, -3],  // r19
    [4, 2, -3],   // r20
    [-4, 3, -2],  // r21
    [-4, 3, 2],   // r22
    [4, -3, 2],   // r23
    [4, 3, -2],   // r24
    [4, 3, 2],    // r25
];

/// Errors raised by scheme and selection operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemeError {
    #[error("signed permutation {0:?} is not a permutation of {{2,3,4}} with signs")]
    NotASignedPermutation([i8; 3]),
    #[error("scheme is impure: reassembly would re-insert a removed tour edge in slot {slot}")]
    Impure { slot: u8 },
    #[error("selection positions must be strictly increasing")]
    NotIncreasing,
    #[error("selection {0:?} is not complete for n = {1}")]
    NotComplete([usize; 4], usize),
}

/// A symbolic endpoint of a reconnecting edge: the cut position in slot
/// `slot` (1..=4), or its tour successor when `primed`.
///
/// Instantiated on a selection `(i1,i2,i3,i4)`, the label `(s, false)` means
/// position `i(s)` and `(s, true)` means `i(s)⊕1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub slot: u8,
    pub primed: bool,
}

impl Label {
    pub fn new(slot: u8, primed: bool) -> Label {
        debug_assert!((1..=4).contains(&slot));
        Label { slot, primed }
    }

    /// Concrete tour position for this label under a selection.
    pub fn instantiate(&self, sel: Selection, n: usize) -> usize {
        let p = sel.position(self.slot);
        if self.primed {
            mod_add(p, 1, n)
        } else {
            p
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.slot, if self.primed { "'" } else { "" })
    }
}

/// An unordered pair of labels describing one reconnecting edge.
///
/// The two endpoints always reference distinct slots (an equal-slot pair
/// would be a removed tour edge, which pure schemes never re-insert).
/// Endpoints are stored sorted so template sets compare structurally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeTemplate {
    lo: Label,
    hi: Label,
}

impl EdgeTemplate {
    pub fn new(a: Label, b: Label) -> Result<EdgeTemplate, SchemeError> {
        if a.slot == b.slot {
            return Err(SchemeError::Impure { slot: a.slot });
        }
        if a <= b {
            Ok(EdgeTemplate { lo: a, hi: b })
        } else {
            Ok(EdgeTemplate { lo: b, hi: a })
        }
    }

    pub fn endpoints(&self) -> (Label, Label) {
        (self.lo, self.hi)
    }

    /// The endpoint lying in the given slot, if any.
    pub fn endpoint_in_slot(&self, slot: u8) -> Option<Label> {
        [self.lo, self.hi].into_iter().find(|l| l.slot == slot)
    }

    /// Concrete node pair for this edge under a selection.
    pub fn instantiate(&self, sel: Selection, n: usize) -> (usize, usize) {
        (self.lo.instantiate(sel, n), self.hi.instantiate(sel, n))
    }
}

impl fmt::Display for EdgeTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

/// First label of segment `s`, i.e. the successor of the preceding cut.
fn seg_first(s: u8) -> Label {
    Label::new(if s == 1 { 4 } else { s - 1 }, true)
}

/// Last label of segment `s`, i.e. the cut position itself.
fn seg_last(s: u8) -> Label {
    Label::new(s, false)
}

/// Walk the reassembly order and emit the four reconnecting edges.
///
/// Fails with [`SchemeError::Impure`] when a transition would re-create a
/// removed tour edge, so `reassembly_edges(p).is_ok()` is the purity test.
pub fn reassembly_edges(perm: [i8; 3]) -> Result<[EdgeTemplate; 4], SchemeError> {
    let mut seen = [false; 3];
    for e in perm {
        let s = e.unsigned_abs();
        if !(2..=4).contains(&s) || seen[s as usize - 2] {
            return Err(SchemeError::NotASignedPermutation(perm));
        }
        seen[s as usize - 2] = true;
    }
    let mut edges = Vec::with_capacity(4);
    let mut exit = seg_last(1); // segment 1 is always traversed forward
    for e in perm {
        let s = e.unsigned_abs();
        let (entry, next_exit) = if e > 0 {
            (seg_first(s), seg_last(s))
        } else {
            (seg_last(s), seg_first(s))
        };
        edges.push(EdgeTemplate::new(exit, entry)?);
        exit = next_exit;
    }
    edges.push(EdgeTemplate::new(exit, seg_first(1))?);
    Ok([edges[0], edges[1], edges[2], edges[3]])
}

/// Whether a signed permutation of `{2,3,4}` describes a pure scheme.
pub fn is_pure(perm: [i8; 3]) -> bool {
    reassembly_edges(perm).is_ok()
}

/// All 48 signed permutations of `{2,3,4}`.
pub fn all_signed_perms() -> Vec<[i8; 3]> {
    let perms = [
        [2, 3, 4],
        [2, 4, 3],
        [3, 2, 4],
        [3, 4, 2],
        [4, 2, 3],
        [4, 3, 2],
    ];
    let mut out = Vec::with_capacity(48);
    for p in perms {
        for signs in 0..8u8 {
            let mut sp = [0i8; 3];
            for k in 0..3 {
                let sign = if signs >> k & 1 == 1 { 1 } else { -1 };
                sp[k] = sign * p[k] as i8;
            }
            out.push(sp);
        }
    }
    out
}

/// One of the 25 pure reassembly schemes, identified as `r1..r25`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scheme {
    id: u8,
}

impl Scheme {
    /// Scheme by catalog id, `1..=25`.
    pub fn from_id(id: u8) -> Option<Scheme> {
        (1..=SCHEME_COUNT as u8)
            .contains(&id)
            .then_some(Scheme { id })
    }

    /// Scheme whose signed permutation equals `perm`, if pure.
    pub fn from_signed_perm(perm: [i8; 3]) -> Option<Scheme> {
        CATALOG
            .iter()
            .position(|c| *c == perm)
            .map(|k| Scheme { id: k as u8 + 1 })
    }

    /// All 25 schemes in catalog order.
    pub fn all() -> impl Iterator<Item = Scheme> {
        (1..=SCHEME_COUNT as u8).map(|id| Scheme { id })
    }

    pub fn id(&self) -> u8 {
        self.id
    }

    pub fn signed_perm(&self) -> [i8; 3] {
        CATALOG[self.id as usize - 1]
    }

    /// The four reconnecting edges this scheme inserts.
    pub fn inserted_edge_templates(&self) -> [EdgeTemplate; 4] {
        reassembly_edges(self.signed_perm()).expect("catalog schemes are pure")
    }

    /// Signed permutation rendered as e.g. `(+4,-2,-3)`.
    pub fn perm_string(&self) -> String {
        let p = self.signed_perm();
        format!("({:+},{:+},{:+})", p[0], p[1], p[2])
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.id)
    }
}

/// Four cut positions `i1 < i2 < i3 < i4` in canonical position space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Selection([usize; 4]);

impl Selection {
    pub fn new(positions: [usize; 4]) -> Result<Selection, SchemeError> {
        if positions.windows(2).all(|w| w[0] < w[1]) {
            Ok(Selection(positions))
        } else {
            Err(SchemeError::NotIncreasing)
        }
    }

    pub fn positions(&self) -> [usize; 4] {
        self.0
    }

    /// Position in slot `1..=4`.
    pub fn position(&self, slot: u8) -> usize {
        self.0[slot as usize - 1]
    }

    /// Complete means: all four cyclic gaps between consecutive cut positions
    /// are at least 2, so the four removed edges are pairwise non-adjacent.
    pub fn is_complete(&self, n: usize) -> bool {
        let [i1, i2, i3, i4] = self.0;
        i4 < n && i2 - i1 >= 2 && i3 - i2 >= 2 && i4 - i3 >= 2 && i1 + n - i4 >= 2
    }

    /// The four removed tour edges `(ik, ik⊕1)`.
    pub fn removed_edges(&self, n: usize) -> [(usize, usize); 4] {
        self.0.map(|i| (i, mod_add(i, 1, n)))
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i1, i2, i3, i4] = self.0;
        write!(f, "({},{},{},{})", i1, i2, i3, i4)
    }
}

/// Gain of applying `scheme` at `sel`: removed cost minus inserted cost.
/// Positive gain means the move shortens the tour by exactly that amount.
pub fn gain(costs: &impl Costs, scheme: Scheme, sel: Selection) -> f64 {
    let n = costs.n();
    debug_assert!(sel.is_complete(n));
    let removed: f64 = sel
        .removed_edges(n)
        .iter()
        .map(|&(u, v)| costs.cost(u, v))
        .sum();
    let inserted: f64 = scheme
        .inserted_edge_templates()
        .iter()
        .map(|t| {
            let (u, v) = t.instantiate(sel, n);
            costs.cost(u, v)
        })
        .sum();
    removed - inserted
}

/// Apply the move, producing the reassembled tour.
///
/// Cut positions index into `tour`'s visiting order, so the move operates in
/// position space regardless of which nodes sit where.
pub fn apply_move(tour: &Tour, scheme: Scheme, sel: Selection) -> Result<Tour, SchemeError> {
    let n = tour.len();
    if !sel.is_complete(n) {
        return Err(SchemeError::NotComplete(sel.positions(), n));
    }
    let [i1, i2, i3, i4] = sel.positions();
    let mut order = Vec::with_capacity(n);
    // Segment 1 wraps: i4⊕1 .. n-1, then 0 ..= i1, always forward.
    for p in (i4 + 1..n).chain(0..=i1) {
        order.push(tour.node_at(p));
    }
    for e in scheme.signed_perm() {
        let range = match e.unsigned_abs() {
            2 => i1 + 1..=i2,
            3 => i2 + 1..=i3,
            _ => i3 + 1..=i4,
        };
        if e > 0 {
            for p in range {
                order.push(tour.node_at(p));
            }
        } else {
            for p in range.rev() {
                order.push(tour.node_at(p));
            }
        }
    }
    Ok(Tour::new(order).expect("reassembly visits every node exactly once"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{tour_length, CostMatrix};
    use std::collections::BTreeSet;

    fn tpl(s1: u8, p1: bool, s2: u8, p2: bool) -> EdgeTemplate {
        EdgeTemplate::new(Label::new(s1, p1), Label::new(s2, p2)).unwrap()
    }

    fn template_set(scheme: Scheme) -> BTreeSet<EdgeTemplate> {
        scheme.inserted_edge_templates().into_iter().collect()
    }

    #[test]
    fn catalog_has_25_schemes_in_order() {
        let all: Vec<Scheme> = Scheme::all().collect();
        assert_eq!(all.len(), 25);
        assert_eq!(all[0].signed_perm(), [-2, -3, -4]);
        assert_eq!(all[9].signed_perm(), [-3, -4, 2]); // r10
        assert_eq!(all[15].signed_perm(), [4, -2, -3]); // r16
        assert_eq!(all[24].signed_perm(), [4, 3, 2]); // r25
        assert_eq!(all[24].to_string(), "r25");
        assert_eq!(all[15].perm_string(), "(+4,-2,-3)");
    }

    #[test]
    fn purity_filter_rederives_the_catalog() {
        // Independent derivation: filter all 48 signed permutations.
        let derived: BTreeSet<[i8; 3]> = all_signed_perms()
            .into_iter()
            .filter(|&p| is_pure(p))
            .collect();
        let catalog: BTreeSet<[i8; 3]> = Scheme::all().map(|r| r.signed_perm()).collect();
        assert_eq!(all_signed_perms().len(), 48);
        assert_eq!(derived.len(), 25);
        assert_eq!(derived, catalog);
    }

    #[test]
    fn impure_examples_are_rejected() {
        // Starts with +2: first reconnecting edge would be {1,1'}.
        assert!(!is_pure([2, 3, 4]));
        assert!(!is_pure([2, -4, -3]));
        // Ends with +4: closing edge would be {4,4'}.
        assert!(!is_pure([-2, 3, 4]));
        // Adjacent +2,+3 re-creates the removed edge in slot 2.
        assert!(!is_pure([-4, 2, 3]));
        // Adjacent -4,-3 re-creates the removed edge in slot 3.
        assert!(!is_pure([-4, -3, -2]));
        assert!(matches!(
            reassembly_edges([2, 3, 4]),
            Err(SchemeError::Impure { slot: 1 })
        ));
        assert!(matches!(
            reassembly_edges([2, 2, 4]),
            Err(SchemeError::NotASignedPermutation(_))
        ));
    }

    #[test]
    fn templates_for_r16_match_hand_derivation() {
        let r16 = Scheme::from_signed_perm([4, -2, -3]).unwrap();
        let expect: BTreeSet<EdgeTemplate> = [
            tpl(1, false, 3, true),
            tpl(1, true, 3, false),
            tpl(2, false, 4, false),
            tpl(2, true, 4, true),
        ]
        .into_iter()
        .collect();
        assert_eq!(template_set(r16), expect);
    }

    #[test]
    fn templates_for_r25_match_hand_derivation() {
        let r25 = Scheme::from_signed_perm([4, 3, 2]).unwrap();
        let expect: BTreeSet<EdgeTemplate> = [
            tpl(1, false, 3, true),
            tpl(4, false, 2, true),
            tpl(3, false, 1, true),
            tpl(2, false, 4, true),
        ]
        .into_iter()
        .collect();
        assert_eq!(template_set(r25), expect);
    }

    #[test]
    fn templates_use_each_label_exactly_once() {
        for scheme in Scheme::all() {
            let mut labels = Vec::new();
            for t in scheme.inserted_edge_templates() {
                let (a, b) = t.endpoints();
                labels.push(a);
                labels.push(b);
            }
            labels.sort();
            labels.dedup();
            assert_eq!(labels.len(), 8, "{scheme} repeats a label");
        }
    }

    #[test]
    fn templates_never_emit_removed_edges() {
        for scheme in Scheme::all() {
            for t in scheme.inserted_edge_templates() {
                let (a, b) = t.endpoints();
                assert_ne!(a.slot, b.slot);
            }
        }
    }

    #[test]
    fn completeness_examples() {
        let n = 8;
        assert!(Selection::new([0, 2, 4, 6]).unwrap().is_complete(n));
        assert!(Selection::new([1, 3, 5, 7]).unwrap().is_complete(n));
        // 7⊕1 = 0 is adjacent to the cut at 0.
        assert!(!Selection::new([0, 2, 4, 7]).unwrap().is_complete(n));
        assert!(!Selection::new([0, 2, 3, 6]).unwrap().is_complete(n));
        assert!(!Selection::new([0, 2, 4, 9]).unwrap().is_complete(n));
        assert_eq!(
            Selection::new([3, 2, 4, 6]),
            Err(SchemeError::NotIncreasing)
        );
    }

    #[test]
    fn removed_edges_examples() {
        let s = Selection::new([0, 2, 4, 6]).unwrap();
        assert_eq!(s.removed_edges(8), [(0, 1), (2, 3), (4, 5), (6, 7)]);
        let s = Selection::new([1, 3, 5, 7]).unwrap();
        assert_eq!(s.removed_edges(8), [(1, 2), (3, 4), (5, 6), (7, 0)]);
        let s = Selection::new([0, 3, 6, 9]).unwrap();
        assert_eq!(s.removed_edges(12), [(0, 1), (3, 4), (6, 7), (9, 10)]);
    }

    #[test]
    fn gain_is_zero_on_uniform_costs() {
        let costs = CostMatrix::uniform(12, 5.0).unwrap();
        let sel = Selection::new([0, 3, 6, 9]).unwrap();
        for scheme in Scheme::all() {
            assert_eq!(gain(&costs, scheme, sel), 0.0);
        }
    }

    #[test]
    fn apply_r25_on_n8_matches_hand_worked_tour() {
        let tour = Tour::canonical(8);
        let r25 = Scheme::from_id(25).unwrap();
        let sel = Selection::new([0, 2, 4, 6]).unwrap();
        let moved = apply_move(&tour, r25, sel).unwrap();
        // Segment 1 = (7,0); +4 → (5,6); +3 → (3,4); +2 → (1,2).
        assert_eq!(moved.order(), &[7, 0, 5, 6, 3, 4, 1, 2]);
    }

    #[test]
    fn apply_rejects_incomplete_selection() {
        let tour = Tour::canonical(8);
        let r1 = Scheme::from_id(1).unwrap();
        let sel = Selection::new([0, 2, 4, 7]).unwrap();
        assert!(matches!(
            apply_move(&tour, r1, sel),
            Err(SchemeError::NotComplete(..))
        ));
    }

    #[test]
    fn every_scheme_yields_a_distinct_hamiltonian_tour() {
        let tour = Tour::canonical(12);
        let sel = Selection::new([0, 3, 6, 9]).unwrap();
        let mut seen = BTreeSet::new();
        for scheme in Scheme::all() {
            let moved = apply_move(&tour, scheme, sel).unwrap();
            assert_eq!(moved.len(), 12);
            assert!(
                seen.insert(moved.order().to_vec()),
                "{scheme} duplicates a tour"
            );
        }
        assert_eq!(seen.len(), 25);
    }

    #[test]
    fn gain_equals_length_difference_exactly() {
        // Deterministic pseudo-random integer matrices; exact f64 arithmetic.
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for n in [8usize, 9, 10, 12, 15] {
            let costs = CostMatrix::from_fn(n, |_, _| (next() % 1000 + 1) as f64).unwrap();
            let tour = Tour::canonical(n);
            let before = tour_length(&tour, &costs).unwrap();
            for i1 in 0..n {
                for i2 in i1 + 2..n {
                    for i3 in i2 + 2..n {
                        for i4 in i3 + 2..n {
                            let sel = Selection::new([i1, i2, i3, i4]).unwrap();
                            if !sel.is_complete(n) {
                                continue;
                            }
                            for scheme in Scheme::all() {
                                let g = gain(&costs, scheme, sel);
                                let after =
                                    tour_length(&apply_move(&tour, scheme, sel).unwrap(), &costs)
                                        .unwrap();
                                assert_eq!(before - after, g, "{scheme} at {sel}, n={n}");
                            }
                        }
                    }
                }
            }
        }
    }
}
