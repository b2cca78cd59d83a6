//! Exact-arithmetic construction and mechanical verification of the
//! binomial-Eulerian polynomial families: permutation-statistic enumeration,
//! quadratic recursions, q-binomial transforms, and continued-fraction
//! (J-fraction) moments, each serving as an independent computation route, and
//! a registry of identity checks that cross-compares them.

pub mod cfrac;
pub mod families;
pub mod perm;
pub mod poly;
pub mod verify;

pub use cfrac::{jacobi_rogers, jr_terms, moments, JSpec};
pub use families::{FamilyId, Route};
pub use verify::{IdentityId, Report};
pub use perm::{Permutation, StatBundle};
pub use poly::{binomial, pq_integer, q_binomial, q_factorial, Coeff, Monomial, MultiPoly, Var};
