//! Binary quadratic forms, ideals of `Z[sqrt(D)]` for `D < 0`, class numbers
//! and the map to the class group of the maximal order.

pub mod classgroup;
pub mod conductor;
pub mod form;
pub mod ideal;

pub use classgroup::{class_number, class_number_of_discriminant, closure_count, reduced_forms};
pub use conductor::{conductor_data, push_to_maximal, ConductorData};
pub use form::{IdealClass, IntBinaryForm};
pub use ideal::{extend_ideal, ideal_mul, ideal_norm, ideal_to_class, wood_ideal, QuadIdeal};
