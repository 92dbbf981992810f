//! Symmetric-group characters and the multiplicities built from them.

mod character;
mod kostka;
mod kronecker;
mod obstruction;
mod partition;
mod plethysm;

pub use character::{character, character_value, ClassFunction};
pub use kostka::{invert_weight_multiplicities, kostka};
pub use kronecker::{kronecker, littlewood_richardson, symmetric_kronecker};
pub use obstruction::{gct_useful_filter, occurrence_obstruction_test, ObstructionVerdict};
pub use partition::Partition;
pub use plethysm::{
    plethysm_character, plethysm_mult, plethysm_mult_by_cycle_index, plethysm_mult_by_weights,
    plethysm_power_sums, weight_multiset_count, WEIGHT_ROUTE_MAX_SIZE,
};
