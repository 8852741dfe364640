//! Builders for every named series in the catalog and the registry of
//! verifiable Hecke-Rogers identities.

mod builders;
mod double_sum;
mod registry;

pub use builders::{
    euler, euler_q2, family_lhs, prefactor, prefactor_q2, series_g2_cleared, series_g3_cleared,
    series_h, series_k, series_r,
};
pub use double_sum::{
    n_max_h8_type, n_max_h_type, n_max_k_type, n_max_r_type, theta_correction_sums, theta_minus,
    theta_plus, DoubleSumSpec,
};
pub use registry::{
    spec_compact_first, spec_compact_second, spec_doubled_first, spec_doubled_second,
    spec_eq110_z1, spec_eq12_z1, spec_eq15, spec_eq16, spec_eq17_z1, spec_eq18_z1,
    spec_expanded_first, spec_expanded_second, spec_h_first, spec_h_second, spec_k_first,
    spec_k_second, spec_rearr214_lhs, spec_rearr214_rhs, spec_rearr215_lhs, spec_rearr215_rhs,
    IdentityCase, IdentityCatalog,
};
