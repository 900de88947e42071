//! Deliberate single-site corruptions used to prove the verification suite
//! has teeth: with any one of these injected, [`crate::verify`] must report a
//! failure.

use std::fmt;

/// A single seeded defect in one engine or in the symmetry machinery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Flip the sign of one edge term inside the Θ(n³) engine's partial-gain
    /// (`c̃`) evaluation.
    CTildeSign,
    /// Drop one branch of the Θ(n²) engine's B-table recurrence, so the table
    /// stops considering new inner bridges as the right index grows.
    GloverBranch,
    /// Corrupt one entry of the reflection's slot map (2 ↦ 4 instead of
    /// 2 ↦ 2), making it non-injective.
    LabelMap,
}

impl Fault {
    pub const ALL: [Fault; 3] = [Fault::CTildeSign, Fault::GloverBranch, Fault::LabelMap];

    pub fn name(&self) -> &'static str {
        match self {
            Fault::CTildeSign => "c-tilde-sign",
            Fault::GloverBranch => "glover-branch",
            Fault::LabelMap => "label-map",
        }
    }

    pub fn parse(s: &str) -> Option<Fault> {
        Fault::ALL.into_iter().find(|f| f.name() == s)
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for fault in Fault::ALL {
            assert_eq!(Fault::parse(fault.name()), Some(fault));
        }
        assert_eq!(Fault::parse("no-such-fault"), None);
    }
}
