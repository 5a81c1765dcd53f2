//! Identifiable functions: the field generated by the IO coefficients,
//! Wronskian certificates, polynomial first integrals and the model
//! extended by a function to be tested.

mod field;
mod integrals;
mod wronskian;

pub use field::{canonical_coefficient, field_membership, field_of_presentation, io_identifiable_field, FieldDescription};
pub use integrals::{
    equality_certificate, extend_model_for_function, nullspace, polynomial_first_integrals, EqualityStatus,
    FirstIntegralBasis,
};
pub use wronskian::{
    colex_subsets, wronskian_certificates, wronskian_certificates_seeded, Certificate, CertificateStatus,
    WronskianWitness,
};
