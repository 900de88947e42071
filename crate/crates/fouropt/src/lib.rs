//! A library for *pure reinsertion* 4-opt moves on the symmetric travelling
//! salesman problem.
//!
//! A pure reinsertion 4-opt move removes four pairwise non-adjacent edges from
//! a tour and reconnects the four remaining segments with four new edges, none
//! of which coincides with a removed edge. There are exactly 25 ways to do the
//! reconnection (the *reassembly schemes* `r1..r25`), which fall into 7 orbits
//! under the octic symmetry group of the cut-point diagram.
//!
//! The crate provides:
//!
//! * [`model`] — cost matrices, tours, modular index arithmetic;
//! * [`schemes`] — the scheme catalog, edge templates, gains, move application;
//! * [`symmetry`] — the octic group action on schemes and the orbit partition;
//! * [`oracle`] — an exhaustive `Θ(n⁴)` best-move search used as ground truth;
//! * [`deberg`] — a `Θ(n³)` dynamic program covering all 25 schemes;
//! * [`glover`] — a `Θ(n²)` dynamic program for the three bridge schemes
//!   `r10`, `r16`, `r25`;
//! * [`driver`] — a best-improvement local search loop over any engine;
//! * [`io`] — instance ingestion (TSPLIB subset, seeded generators) and run
//!   reports;
//! * [`verify`] — a self-check suite comparing the engines against the oracle,
//!   with optional fault injection to prove the checks have teeth.

pub mod deberg;
pub mod driver;
pub mod fault;
pub mod glover;
pub mod io;
pub mod model;
pub mod oracle;
pub mod schemes;
pub mod symmetry;
pub mod verify;

pub use fault::Fault;
pub use model::{CostMatrix, Costs, Tour, ValueKind};
pub use oracle::{Move, SearchResult};
pub use schemes::{Scheme, Selection};
