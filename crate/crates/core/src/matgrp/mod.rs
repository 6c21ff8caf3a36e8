//! Matrix models of the classical groups: forms, generators, orders, enumeration, sampling, witnesses.

pub mod enumerate;
pub mod forms;
pub mod gens;
pub mod invariant;
pub mod mat;
pub mod order;
pub mod roots;
pub mod sample;
pub mod witness;

pub use enumerate::{derived_subgroup, element_orders, enumerate_group, projective_canonical, Enumerated};
pub use forms::{preserves_form, FormData, FormKind};
pub use gens::{regular_unipotent, standard_generators, Realization};
pub use invariant::{membership_invariant, Invariant};
pub use mat::Mat;
pub use order::{element_order, exponent_bound, is_projective, projective_order};
pub use sample::{sample_orders, SampleOptions, SampleResult};
pub use witness::{construct_witness, witness_for_order, Witness};
