//! Self-verification suite: re-derives the scheme catalog, the orbit
//! partition and the engines' exactness claims on seeded instances, and
//! reports one pass/fail line per property.
//!
//! Every check can be run with an injected [`Fault`] that corrupts one
//! specific implementation site; a healthy suite must then fail, which
//! demonstrates the checks have teeth. The oracle side of every comparison
//! is never faulted.

use crate::deberg::{best_move_deberg_with_fault, decomposed_gain_with_fault, pairing_plan};
use crate::fault::Fault;
use crate::glover::{best_move_glover_with_fault, bridge_schemes};
use crate::io::random::random_matrix;
use crate::model::CostMatrix;
use crate::oracle::{best_move_brute, enumerate_complete_selections};
use crate::schemes::{all_signed_perms, gain, is_pure, Scheme};
use crate::symmetry::{act_on_scheme_with_fault, orbit_partition_with_fault, GroupElement};

/// Options for one verification run.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Instance size for the numeric checks.
    pub n: usize,
    /// Number of seeded instances per numeric check (seeds `0..seeds`).
    pub seeds: u64,
    /// Fault to inject, if any.
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n: 12,
            seeds: 5,
            fault: None,
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: &'static str, detail: impl Into<String>) -> Check {
        Check {
            name,
            pass: true,
            detail: detail.into(),
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Check {
        Check {
            name,
            pass: false,
            detail: detail.into(),
        }
    }
}

/// Results of a verification run.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// The 7 orbits of the octic symmetry: (representative, sorted members).
const GOLDEN_ORBITS: [(u8, &[u8]); 7] = [
    (1, &[1, 22, 23, 24]),
    (2, &[2, 21]),
    (3, &[3, 7, 13, 17]),
    (4, &[4, 6, 11, 19]),
    (5, &[5, 8, 9, 12, 14, 15, 18, 20]),
    (10, &[10, 16]),
    (25, &[25]),
];

fn instances(opts: &VerifyOptions) -> Vec<CostMatrix> {
    (0..opts.seeds)
        .map(|seed| random_matrix(opts.n, 1000, seed))
        .collect()
}

fn check_catalog_purity() -> Check {
    const NAME: &str = "catalog-purity";
    for r in Scheme::all() {
        if !is_pure(r.signed_perm()) {
            return Check::fail(NAME, format!("catalogued {r} is not pure"));
        }
    }
    let mut derived: Vec<[i8; 3]> = all_signed_perms()
        .into_iter()
        .filter(|&p| is_pure(p))
        .collect();
    derived.sort();
    let mut catalog: Vec<[i8; 3]> = Scheme::all().map(|r| r.signed_perm()).collect();
    catalog.sort();
    if derived != catalog {
        return Check::fail(
            NAME,
            format!(
                "purity filter yields {} schemes, catalog has 25",
                derived.len()
            ),
        );
    }
    Check::pass(
        NAME,
        "purity filter over all 48 signed permutations re-derives the 25 schemes",
    )
}

fn check_orbit_partition(fault: Option<Fault>) -> Check {
    const NAME: &str = "orbit-partition";
    let orbits = match orbit_partition_with_fault(fault) {
        Ok(orbits) => orbits,
        Err(e) => return Check::fail(NAME, format!("action is not closed: {e}")),
    };
    if orbits.len() != GOLDEN_ORBITS.len() {
        return Check::fail(NAME, format!("found {} orbits, expected 7", orbits.len()));
    }
    for (orbit, (rep, members)) in orbits.iter().zip(GOLDEN_ORBITS) {
        let got: Vec<u8> = orbit.members.iter().map(|r| r.id()).collect();
        if orbit.representative.id() != rep || got != members {
            return Check::fail(
                NAME,
                format!("orbit of r{rep} came out as {got:?}, expected {members:?}"),
            );
        }
    }
    Check::pass(
        NAME,
        "7 orbits of sizes 4+2+4+4+8+2+1 with smallest-id representatives",
    )
}

fn check_group_action(fault: Option<Fault>) -> Check {
    const NAME: &str = "group-action";
    let rho = GroupElement::RHO;
    let psi = GroupElement::PSI;
    let psi_rho = psi.compose(rho); // apply rho first, then psi
    let rho2 = rho.compose(rho);
    // Hand-checked single actions.
    let chains: [(GroupElement, u8, u8); 6] = [
        (rho, 1, 24),
        (psi, 4, 11),
        (psi_rho, 4, 6),
        (rho, 10, 16),
        (rho2, 16, 16),
        (psi, 16, 16),
    ];
    for (g, from, to) in chains {
        let from = Scheme::from_id(from).unwrap();
        match act_on_scheme_with_fault(g, from, fault) {
            Ok(image) if image.id() == to => {}
            Ok(image) => {
                return Check::fail(NAME, format!("{g} maps {from} to {image}, expected r{to}"))
            }
            Err(e) => return Check::fail(NAME, format!("{g} on {from}: {e}")),
        }
    }
    // Generator words that spell out three whole orbits.
    let words: [(u8, &[(GroupElement, u8)]); 3] = [
        (1, &[(rho, 24), (rho2, 23), (rho.inverse(), 22)]),
        (4, &[(rho, 19), (psi, 11), (psi_rho, 6)]),
        (
            5,
            &[
                (rho, 20),
                (rho2, 14),
                (rho.inverse(), 15),
                (psi, 12),
                (psi.compose(rho), 18),
                (psi.compose(rho2), 9),
                (psi.compose(rho.inverse()), 8),
            ],
        ),
    ];
    for (base, images) in words {
        let base = Scheme::from_id(base).unwrap();
        for &(g, expect) in images {
            match act_on_scheme_with_fault(g, base, fault) {
                Ok(image) if image.id() == expect => {}
                Ok(image) => {
                    return Check::fail(
                        NAME,
                        format!("{g} maps {base} to {image}, expected r{expect}"),
                    )
                }
                Err(e) => return Check::fail(NAME, format!("{g} on {base}: {e}")),
            }
        }
    }
    Check::pass(
        NAME,
        "hand-checked actions and three full orbit generator words hold",
    )
}

fn check_gain_decomposition(opts: &VerifyOptions) -> Check {
    const NAME: &str = "gain-decomposition";
    if opts.n < 8 {
        return Check::fail(
            NAME,
            format!("instance size {} has no moves (need n ≥ 8)", opts.n),
        );
    }
    let selections: Vec<_> = enumerate_complete_selections(opts.n).collect();
    let mut compared = 0u64;
    for (seed, costs) in instances(opts).iter().enumerate() {
        for r in Scheme::all() {
            let plan = pairing_plan(r);
            for &sel in &selections {
                let direct = gain(costs, r, sel);
                let split = decomposed_gain_with_fault(costs, &plan, sel, opts.fault);
                if direct != split {
                    return Check::fail(
                        NAME,
                        format!(
                            "seed {seed}, {r} at {sel}: decomposed gain {split} != direct {direct}"
                        ),
                    );
                }
                compared += 1;
            }
        }
    }
    Check::pass(
        NAME,
        format!("partial-gain decomposition matches the direct gain on {compared} moves"),
    )
}

fn check_cubic_engine(opts: &VerifyOptions) -> Check {
    const NAME: &str = "cubic-engine-exactness";
    let schemes: Vec<Scheme> = Scheme::all().collect();
    for (seed, costs) in instances(opts).iter().enumerate() {
        for &r in &schemes {
            let fast = best_move_deberg_with_fault(costs, &[r], false, opts.fault);
            let slow = best_move_brute(costs, &[r], false);
            if fast.best.map(|m| m.gain) != slow.best.map(|m| m.gain) {
                return Check::fail(
                    NAME,
                    format!(
                        "seed {seed}, {r}: engine best {:?} != oracle best {:?}",
                        fast.best.map(|m| m.gain),
                        slow.best.map(|m| m.gain)
                    ),
                );
            }
        }
        let fast = best_move_deberg_with_fault(costs, &schemes, false, opts.fault);
        let slow = best_move_brute(costs, &schemes, false);
        if fast.best.map(|m| m.gain) != slow.best.map(|m| m.gain) {
            return Check::fail(
                NAME,
                format!("seed {seed}: joint best gain differs from oracle"),
            );
        }
    }
    Check::pass(
        NAME,
        format!(
            "matches the exhaustive oracle per scheme and jointly on {} instances",
            opts.seeds
        ),
    )
}

fn check_quadratic_engine(opts: &VerifyOptions) -> Check {
    const NAME: &str = "quadratic-engine-exactness";
    let trio = bridge_schemes();
    for (seed, costs) in instances(opts).iter().enumerate() {
        let fast = best_move_glover_with_fault(costs, false, opts.fault);
        let slow = best_move_brute(costs, &trio, false);
        if fast.best.map(|m| m.gain) != slow.best.map(|m| m.gain) {
            return Check::fail(
                NAME,
                format!(
                    "seed {seed}: engine best {:?} != oracle best {:?} over r10/r16/r25",
                    fast.best.map(|m| m.gain),
                    slow.best.map(|m| m.gain)
                ),
            );
        }
        for r in trio {
            let fast = crate::glover::best_move_single(costs, r, opts.fault);
            let slow = best_move_brute(costs, &[r], false);
            if fast.best.map(|m| m.gain) != slow.best.map(|m| m.gain) {
                return Check::fail(
                    NAME,
                    format!(
                        "seed {seed}, {r}: engine best {:?} != oracle best {:?}",
                        fast.best.map(|m| m.gain),
                        slow.best.map(|m| m.gain)
                    ),
                );
            }
        }
    }
    Check::pass(
        NAME,
        format!(
            "matches the exhaustive oracle over r10/r16/r25 on {} instances",
            opts.seeds
        ),
    )
}

/// Run the whole suite.
pub fn run(opts: &VerifyOptions) -> VerifyReport {
    let checks = vec![
        check_catalog_purity(),
        check_orbit_partition(opts.fault),
        check_group_action(opts.fault),
        check_gain_decomposition(opts),
        check_cubic_engine(opts),
        check_quadratic_engine(opts),
    ];
    VerifyReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_run_passes_every_check() {
        let report = run(&VerifyOptions::default());
        for check in &report.checks {
            assert!(check.pass, "{}: {}", check.name, check.detail);
        }
        assert!(report.ok());
        assert_eq!(report.checks.len(), 6);
    }

    #[test]
    fn every_fault_is_caught() {
        for fault in Fault::ALL {
            let opts = VerifyOptions {
                fault: Some(fault),
                ..VerifyOptions::default()
            };
            let report = run(&opts);
            assert!(!report.ok(), "{fault} slipped through");
            let failed: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| c.name)
                .collect();
            let expected: &[&str] = match fault {
                Fault::CTildeSign => &["gain-decomposition", "cubic-engine-exactness"],
                Fault::GloverBranch => &["quadratic-engine-exactness"],
                Fault::LabelMap => &["orbit-partition", "group-action"],
            };
            assert_eq!(failed, expected, "{fault}");
        }
    }

    #[test]
    fn small_sizes_are_rejected_gracefully() {
        let opts = VerifyOptions {
            n: 7,
            seeds: 1,
            fault: None,
        };
        let report = run(&opts);
        assert!(!report.ok());
        assert!(report
            .checks
            .iter()
            .any(|c| !c.pass && c.name == "gain-decomposition"));
    }
}
