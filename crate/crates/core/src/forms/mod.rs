//! Arithmetic forms: model forms over totally real fields, CM fields and
//! quaternion algebras, cocompactness rules, and the projective model of
//! hyperbolic space over R, C and H.

pub mod cm;
pub mod cocompact;
pub mod metric;
pub mod model;

use serde::{Deserialize, Serialize};

pub use cm::{
    cm_minpoly, make_cm_extension, quaternion_totally_definite, CmField, DefinitenessReport,
    QuaternionAlgebraDescriptor,
};
pub use cocompact::{
    classify_cocompactness, classify_with_height, residue_obstruction, strip_square_factors, witness_value, Cocompactness,
    CocompactnessVerdict, Obstruction,
};
pub use metric::{
    distance_quotient, hyperbolic_distance, preserves_form, preserves_form_field, preserves_form_float,
    standard_form, standard_matrix, to_quat_matrix, ProjectivePoint, Quat,
};
pub use model::{
    diagonalize_symmetric, elements_of_height, is_admissible, search_admissible_diagonal, signature_at_embedding,
    AdmissibilityReport, FormJson, ModelForm,
};

/// The division algebra X ∈ {R, C, H} of the hyperbolic space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Geometry {
    R,
    C,
    H,
}

impl Geometry {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "R" => Some(Geometry::R),
            "C" => Some(Geometry::C),
            "H" => Some(Geometry::H),
            _ => None,
        }
    }
}
