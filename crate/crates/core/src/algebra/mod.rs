//! Exact arithmetic: modular integers, finite fields, integer polynomials,
//! characteristic polynomials, real roots and number fields.

pub mod charpoly;
pub mod finite_field;
pub mod linalg;
pub mod modular;
pub mod number_field;
pub mod poly;
pub mod polymod;
pub mod real_roots;

pub use charpoly::{int_matrix, integer_charpoly, IntMatrix};
pub use finite_field::{make_finite_field, FieldDescriptor, FieldElement};
pub use number_field::{make_number_field, sign_at_embedding, NumberField, NumberFieldElement, RealEmbedding};
pub use poly::{poly_radical, IntegerPolynomial};
pub use real_roots::{isolate_real_roots, RootInterval};
