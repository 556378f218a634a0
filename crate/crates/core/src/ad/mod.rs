//! Structure of `ad_z`: centralizers, nilpotent and eigen-parts, and the
//! classification of elements into the eight types.

mod classify;
mod composite;
mod report;
mod slice;
mod spectrum;
mod theorems;

pub use classify::{
    apply_poly, classify, classify_with, is_central, EvStatus, Grade, Label, RelationKind, RelationStatus,
    TypeVerdict, Witness,
};
pub use composite::{classify_composite, CompositeHypotheses, CompositeKind};
pub use report::{shifted_power, subspace_bases, subspace_bases_with, AdQuery, AdReport, EigenBlock};
pub use slice::{
    ad_matrix, ad_matrix_with, ad_operator, invariant_slice, invariant_slice_with, orbit_profile, partner_probe,
    target_bound, AdOperator, InvariantSlice,
};
pub use spectrum::{ev_discover, is_power_of_x, is_squarefree, local_min_poly, Eigenvalue, LocalMinPoly, Spectrum};
pub use theorems::{tensor_theorem_check, tensor_theorem_check_with, TheoremCheck, TheoremKind};
