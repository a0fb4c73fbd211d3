//! Stepanov's method made explicit: derivative recursions on the curve,
//! the operators `D_k`, the linear system for the auxiliary polynomial and
//! certificates bounding the number of coset points.

mod certificate;
mod dense;
mod derivs;
mod family;
mod linform;
mod oracle;
mod params;
mod system;

pub use derivs::{derivative_pair, derivative_pairs, operator_factor, operator_factors, DerivPair};
pub use linform::{LinForm, LinFormPoly};
pub use params::{choose_params, StepanovParams};
pub use system::{
    assemble_rk, block_shape, build_system, build_system_multi, build_system_symbolic, column_order, system_rows,
    BlockShape,
};
pub use certificate::{
    certify, certify_family, construct_certificate, construct_family_certificate, family_pairs, verify_certificate,
    verify_certificate_multi, CertificateChecks, Corrections, StepanovCertificate,
};
