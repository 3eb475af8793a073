//! Exact presentations of equivariant quantum cohomology of maximal
//! isotropic Grassmannians, Pfaffian Schubert classes and their structure
//! constants.

pub mod chevalley;
pub mod exactalg;
pub mod factorial_basis;
pub mod partitions;
pub mod pfaffian;
pub mod qh_ring;
pub mod schur_oracle;
