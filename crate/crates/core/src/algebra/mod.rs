//! The algebra kernel: exact scalars, polynomials, rings, Gröbner bases and
//! the membership questions every higher module reduces to.

pub mod grading;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod ops;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod semigroup;

pub use monomial::{Monomial, MonomialOrder};
pub use ops::{
    colon_ideal, groebner_basis, ideal_colon, ideal_member, intersect_ideals, intersect_modules,
    minimal_primes_monomial, module_colon_ideal, module_colon_vector, module_member, module_subset,
    radical_member, syzygies, Ideal,
};
pub use poly::{FreeVec, Polynomial};
pub use ring::RingDescriptor;
pub use scalar::{Field, Scalar};
pub use semigroup::{ExponentSet, NumericalSemigroup};
