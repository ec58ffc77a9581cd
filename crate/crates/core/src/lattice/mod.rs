//! Integral symmetric bilinear forms.
//!
//! Definite forms use the negative-definite convention. Dual vectors are
//! stored in dual-basis integer coordinates, so characteristic covectors are
//! the integer vectors congruent to the Gram diagonal mod 2.

mod enumerate;
mod form;
mod glue;
mod isometry;
mod minimal;
mod quotient;
pub(crate) mod reduce;
mod roots;
mod shadow;
pub mod standard;

pub(crate) use enumerate::Enumerator;
pub use form::{CharCovector, Definiteness, Form, FormInvariants, Parity};
pub use glue::{overlattice_glue, GlueReport, OverlatticeClass};
pub use isometry::is_isometric;
pub(crate) use isometry::IsometryTarget;
pub use minimal::minimal_part;
pub use quotient::{adjunction_genus, complement_quotient, genus_class, Complement};
pub use roots::{root_system, short_vectors, NormShell, RootComponent, RootFamily, RootSystemId};
pub use shadow::{shadow, ShadowStats};
pub use standard::{standard_form, Family, StandardName};

/// `invariants(f)` as a free function.
pub fn invariants(f: &Form) -> FormInvariants {
    f.invariants()
}

pub fn nondegenerate_part(f: &Form) -> Form {
    f.nondegenerate_part()
}

pub fn char_base(f: &Form) -> CharCovector {
    f.char_base()
}

pub fn dual_pairing(
    f: &Form,
    a: &[num_bigint::BigInt],
    b: &[num_bigint::BigInt],
) -> crate::Result<crate::linalg::Rational> {
    f.dual_pairing(a, b)
}
