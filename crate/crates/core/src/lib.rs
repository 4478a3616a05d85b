//! Solver toolkit for the communication satellite / ground station
//! link-construction scheduling problem.
//!
//! A scenario consists of satellites (two antennas each), ground station
//! antennas, visibility windows between antenna pairs, and link-construction
//! tasks bound to windows. The goal is to select and time tasks so the total
//! link profit is maximized, honoring antenna exclusivity, setup and
//! switching gaps, and the feed-switch handover rules.
//!
//! The crate is organized around that pipeline:
//!
//! * [`model`] — domain entities, the profit objective, and an independent
//!   constraint validator.
//! * [`instgen`] — seeded random instance generation and the on-disk format.
//! * [`decode`] — permutation chromosomes and the greedy maximum-allocation
//!   decoder.
//! * [`ffem`] — fuzzy fitness evaluation: Gaussian similarity to a baseline
//!   individual routes offspring to cheap fuzzy estimates or real decodes.
//! * [`evolve`] — crossover operators, mutation, and the adaptive operator
//!   portfolio.
//! * [`solver`] — the evolutionary main loop with elite retention and
//!   ablation variants.
//! * [`oracle`] — exhaustive ground truth for desk-scale verification.

pub mod decode;
pub mod evolve;
pub mod ffem;
pub mod instgen;
pub mod model;
pub mod oracle;
pub mod solver;

pub use decode::{decode, random_chromosome, Chromosome, DecodeOptions};
pub use ffem::{Baseline, EvalMethod, EvalRecord, FfemConfig};
pub use instgen::GenParams;
pub use model::{
    profit_of, profit_upper_bound, validate, Assignment, AssignmentMode, Constraint,
    GroundAntenna, GroundAntennaId, Instance, ModelError, Satellite, SatelliteAntenna,
    SatAntennaId, SatelliteId, Schedule, Seconds, StationId, Task, TaskId, TimeWindow, Violation,
    WindowId,
};
pub use solver::{solve, SolveResult, SolverConfig, Variant};
