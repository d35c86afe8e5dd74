//! Distributions of partial augmentations and the HeLP conditions on them.
//!
//! A candidate distribution `(ε_d)_{d|n}` must satisfy
//!
//! * V1: `Σ_x ε_d(x) = 1` for every `d | n`;
//! * V2: `ε_d(1) = 0` for `d ≠ n`;
//! * V3: `ε_d(x) = 0` unless `|x|` divides `n/d`;
//! * V4: `μ(ζ_n^l, ε, χ)` is a non-negative integer for every character `χ`
//!   in play and every `l`.
//!
//! V1–V3 are linear and are either checked directly or baked into the
//! [`VariableLayout`]; V4 becomes one [`ConstraintRow`] per `(χ, l)`.

mod constraints;
mod distribution;
mod json;

pub use constraints::{
    build_constraints, char_at_distribution, is_nonneg_integer, mu1_accumulated_form,
    mu1_upper_bound, mu_minus, multiplicity, tabulate, total_multiplicity, verify_v4,
    ConstraintRow, ConstraintSystem, SolutionSet, Tabulated, V4Entry, V4Report, VariableLayout,
};
pub use distribution::{
    check_wagner, exceptional, exceptional_set, tpa, tpa_set, PADistribution, Violation,
};
pub use json::{DistributionJson, EntryJson};
