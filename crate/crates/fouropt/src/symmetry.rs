//! The octic symmetry group of the cut diagram and its action on schemes.
//!
//! Drawing the four cut positions on a circle, the dihedral group of the
//! square acts on reassembly schemes: the rotation `ρ` shifts every slot by
//! one (`1→2→3→4→1`, primes preserved), and the reflection `ψ` swaps slots
//! `1↔3`, fixes `2` and `4`, and toggles primes (successors become
//! predecessors). Two schemes in the same orbit describe moves of identical
//! cost structure, so a search engine only needs one representative per
//! orbit; there are 7 orbits.

use crate::fault::Fault;
use crate::schemes::{EdgeTemplate, Label, Scheme};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("mapped edge set of {scheme} under {element} is not a pure scheme")]
    NotAScheme {
        element: GroupElement,
        scheme: Scheme,
    },
}

/// An element `ψ^a ∘ ρ^k` of the octic group (rotation applied first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    reflect: bool,
    rot: u8,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        reflect: false,
        rot: 0,
    };
    pub const RHO: GroupElement = GroupElement {
        reflect: false,
        rot: 1,
    };
    pub const PSI: GroupElement = GroupElement {
        reflect: true,
        rot: 0,
    };

    /// `ρ^k`.
    pub fn rotation(k: u8) -> GroupElement {
        GroupElement {
            reflect: false,
            rot: k % 4,
        }
    }

    /// `ψ ∘ ρ^k`.
    pub fn reflection(k: u8) -> GroupElement {
        GroupElement {
            reflect: true,
            rot: k % 4,
        }
    }

    /// All 8 elements: `ι, ρ, ρ², ρ³, ψ, ψρ, ψρ², ψρ³`.
    pub fn all() -> [GroupElement; 8] {
        [
            Self::rotation(0),
            Self::rotation(1),
            Self::rotation(2),
            Self::rotation(3),
            Self::reflection(0),
            Self::reflection(1),
            Self::reflection(2),
            Self::reflection(3),
        ]
    }

    pub fn is_reflection(&self) -> bool {
        self.reflect
    }

    /// Group composition `self ∘ other` (apply `other` first).
    ///
    /// Uses the dihedral relation `ρ ψ = ψ ρ⁻¹` to renormalise into the
    /// `ψ^a ρ^k` form.
    pub fn compose(self, other: GroupElement) -> GroupElement {
        if other.reflect {
            GroupElement {
                reflect: !self.reflect,
                rot: (other.rot + 4 - self.rot) % 4,
            }
        } else {
            GroupElement {
                reflect: self.reflect,
                rot: (self.rot + other.rot) % 4,
            }
        }
    }

    pub fn inverse(self) -> GroupElement {
        if self.reflect {
            self // every reflection is an involution
        } else {
            GroupElement {
                reflect: false,
                rot: (4 - self.rot) % 4,
            }
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.reflect, self.rot) {
            (false, 0) => write!(f, "id"),
            (false, k) => write!(f, "rho^{k}"),
            (true, 0) => write!(f, "psi"),
            (true, k) => write!(f, "psi.rho^{k}"),
        }
    }
}

fn rot_slot(s: u8) -> u8 {
    if s == 4 {
        1
    } else {
        s + 1
    }
}

fn psi_slot(s: u8, fault: Option<Fault>) -> u8 {
    match s {
        1 => 3,
        3 => 1,
        2 if fault == Some(Fault::LabelMap) => 4,
        other => other,
    }
}

fn label_image(g: GroupElement, l: Label, fault: Option<Fault>) -> Label {
    let mut slot = l.slot;
    for _ in 0..g.rot {
        slot = rot_slot(slot);
    }
    let mut primed = l.primed;
    if g.reflect {
        slot = psi_slot(slot, fault);
        primed = !primed;
    }
    Label::new(slot, primed)
}

/// Image of a label under the group element: rotations shift slots and keep
/// primes; reflections also toggle primes (tour successors become
/// predecessors when the diagram flips).
pub fn apply_label_map(g: GroupElement, l: Label) -> Label {
    label_image(g, l, None)
}

fn templates_to_scheme() -> &'static BTreeMap<[EdgeTemplate; 4], Scheme> {
    static MAP: OnceLock<BTreeMap<[EdgeTemplate; 4], Scheme>> = OnceLock::new();
    MAP.get_or_init(|| {
        Scheme::all()
            .map(|r| {
                let mut t = r.inserted_edge_templates();
                t.sort();
                (t, r)
            })
            .collect()
    })
}

/// Action of the group on schemes, with an optional injected fault in the
/// reflection's slot map. Used by the verification suite; prefer
/// [`act_on_scheme`] elsewhere.
pub fn act_on_scheme_with_fault(
    g: GroupElement,
    r: Scheme,
    fault: Option<Fault>,
) -> Result<Scheme, SymmetryError> {
    let err = SymmetryError::NotAScheme {
        element: g,
        scheme: r,
    };
    let mut mapped = [None; 4];
    for (k, t) in r.inserted_edge_templates().into_iter().enumerate() {
        let (a, b) = t.endpoints();
        match EdgeTemplate::new(label_image(g, a, fault), label_image(g, b, fault)) {
            Ok(edge) => mapped[k] = Some(edge),
            Err(_) => return Err(err),
        }
    }
    let mut set = mapped.map(|e| e.expect("filled above"));
    set.sort();
    templates_to_scheme().get(&set).copied().ok_or(err)
}

/// Action of the group on schemes: map every inserted edge's labels and look
/// up the scheme owning the resulting edge set. Total on pure schemes.
pub fn act_on_scheme(g: GroupElement, r: Scheme) -> Scheme {
    act_on_scheme_with_fault(g, r, None).expect("octic action preserves purity")
}

/// An orbit of the group action: members sorted by id, the representative
/// being the smallest-id (equivalently, first-catalogued) member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: Scheme,
    pub members: Vec<Scheme>,
}

/// Orbit of a single scheme under all 8 group elements.
pub fn orbit_of(r: Scheme) -> Orbit {
    let members: BTreeSet<Scheme> = GroupElement::all()
        .into_iter()
        .map(|g| act_on_scheme(g, r))
        .collect();
    let members: Vec<Scheme> = members.into_iter().collect();
    Orbit {
        representative: members[0],
        members,
    }
}

fn compute_partition(fault: Option<Fault>) -> Result<Vec<Orbit>, SymmetryError> {
    let mut seen = [false; 26];
    let mut orbits = Vec::new();
    for r in Scheme::all() {
        if seen[r.id() as usize] {
            continue;
        }
        let mut members = BTreeSet::new();
        for g in GroupElement::all() {
            members.insert(act_on_scheme_with_fault(g, r, fault)?);
        }
        for m in &members {
            seen[m.id() as usize] = true;
        }
        let members: Vec<Scheme> = members.into_iter().collect();
        orbits.push(Orbit {
            representative: members[0],
            members,
        });
    }
    Ok(orbits)
}

/// The orbit partition of all 25 schemes, computed once by closure under the
/// 8 group elements. Orbits are ordered by representative id.
pub fn orbit_partition() -> &'static [Orbit] {
    static PARTITION: OnceLock<Vec<Orbit>> = OnceLock::new();
    PARTITION.get_or_init(|| compute_partition(None).expect("octic action preserves purity"))
}

/// Partition recomputed with an injected fault; used by the verify suite.
pub fn orbit_partition_with_fault(fault: Option<Fault>) -> Result<Vec<Orbit>, SymmetryError> {
    compute_partition(fault)
}

/// 1-based orbit number of a scheme (orbits ordered by representative id).
pub fn orbit_id_of(r: Scheme) -> u8 {
    orbit_partition()
        .iter()
        .position(|o| o.members.contains(&r))
        .map(|k| k as u8 + 1)
        .expect("every scheme lies in an orbit")
}
