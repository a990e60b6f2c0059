//! Matrix-level oracle over `F_q((t))` truncated at `t^N`.
//!
//! The closed-form geometry (fixed regions, closures, radii) is recomputed
//! here from matrices: a point `z` is fixed by `g ∈ Sp_{2n}` iff `g` meets
//! the valuation pattern of the parahoric `G_z`. Negative claims come with
//! explicit witnesses; positive claims are sampling evidence.

mod checks;
mod matrix;
mod sampling;
mod series;

pub use checks::{
    lemma_stabilizer_check, oracle_fixed_region, remark_orbit_check, EntryViolation, FixedRegionOutcome,
    OracleParams, OracleReport, OrbitWitness, RemarkOutcome, StabilizerFailure, StabilizerOutcome, MIN_SAMPLES,
    ROUTE_LOWER, ROUTE_PRINTED,
};
pub use matrix::{entry_root, in_parahoric, parahoric_pattern, root_positions, weight, LaurentMatrix, ValuationPattern};
pub use sampling::{diagonal_element, hensel_torus_element, random_series, root_group_element, root_vector, TorusSampler};
pub use series::{check_field, is_prime, least_non_residue, TruncSeries};

/// Claims are made modulo `t^(N - SLACK)`.
pub const SLACK: i32 = 2;
