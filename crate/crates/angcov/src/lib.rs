//! Sensor placement with angular coverage guarantees.
//!
//! A target `t` is alpha-covered by a pair of sensors `(s, s')` when the angle
//! `∠(s t s')` lies in `[alpha, pi - alpha]`. This crate computes small sensor
//! sets that guarantee such coverage for every target, in three regimes:
//!
//! * [`coverage::Variant::Ang`] — angular constraints only,
//! * [`coverage::Variant::AngDist`] — both witnesses within a sensing radius `R`,
//! * [`coverage::Variant::ArtAng`] — both witnesses see the target inside a polygon.
//!
//! The solver iteratively refines the coverage level through double-wedge
//! range spaces and epsilon-net-driven hitting sets ([`coverage::iterate`]),
//! with a relaxed-distance pipeline ([`relax3r`]) and an exact fault-tolerant
//! suppliers solver ([`suppliers`]) for the zero-angle case. Every guarantee
//! can be re-checked against the brute-force verifiers shipped alongside.

pub mod coverage;
pub mod dudc;
pub mod geom;
pub mod hitting;
pub mod netlib;
pub mod relax3r;
pub mod suppliers;

use std::fmt;

/// Tolerance for closed-interval comparisons in angle space (radians) and in
/// cosine space. Boundary configurations count as covered.
pub const ANGLE_EPS: f64 = 1e-9;

/// Tolerance for closed-interval comparisons on lengths.
pub const LEN_EPS: f64 = 1e-9;

/// Index of a sensor within an instance's sensor list.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SensorId(pub usize);

/// Index of a target within an instance's target list.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TargetId(pub usize);

impl fmt::Display for SensorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

impl fmt::Display for TargetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("coincident points: {0}")]
    CoincidentPoints(&'static str),
    #[error("alpha = 0: the covered region is the plane minus the line through the pair")]
    ZeroAngle,
    #[error("double wedges do not overlap (axis gap {gap:.9} > combined half-widths {width:.9})")]
    DisjointWedges { gap: f64, width: f64 },
    #[error("point outside the polygon environment")]
    OutsidePolygon,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("range for target {0} is empty; no hitting set exists")]
    NoHittingSet(TargetId),
    #[error("ground set of size {size} exceeds exact-solver limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("infeasible at radius {radius}: client {client} has fewer than {delta} suppliers in range")]
    InfeasibleAtRadius {
        radius: f64,
        client: usize,
        delta: usize,
    },
    #[error("no candidate radius admits a solution within budget k = {0}")]
    InfeasibleBudget(usize),
    #[error("supplier {0} covers three separated clients; separation invariant broken")]
    ThreeClientViolation(usize),
    #[error("3R extension of target {0}'s range contains no sensors")]
    InfeasibleExtension(TargetId),
}

pub type Result<T> = std::result::Result<T, Error>;
