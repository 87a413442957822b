//! Exact-arithmetic root systems and Weyl groups, and the construction of
//! the system of roots of the nilradical of a very special sandwich algebra
//! of class 𝒞.
//!
//! Everything here is computed over arbitrary-precision rationals; there is
//! no floating point and no tolerance anywhere. Equality of vectors,
//! matrices, and group elements always means exact equality.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: vectors, matrices, functionals over any exact scalar.
//! * [`roots`]: the classical irreducible root systems in standard
//!   coordinates, plus membership and closure checks.
//! * [`chain`]: extremal root chains, the chain integers (q, p), and the
//!   pairing ⟨β, α⟩ = q − p they define.
//! * [`reflect`]: reflections built from the chain pairing, and the
//!   reflection laws they satisfy.
//! * [`group`]: deterministic finite matrix-group closure and multiplication
//!   tables.
//! * [`sandwich`]: alignment data, the nilradical centre gate, the projected
//!   (hat) system, and its Weyl group.
//! * [`symplectic`]: the sign-change model of the hat Weyl group on a
//!   symplectic phase space, and the isomorphism onto it.
//! * [`semidirect`]: the action of the base Weyl group on the hat system,
//!   the twisted product, and the split exact sequence exhibiting the full
//!   group as a semidirect product.

pub mod chain;
pub mod error;
pub mod group;
pub mod linalg;
pub mod reflect;
pub mod roots;
pub mod sandwich;
pub mod scalar;
pub mod semidirect;
pub mod symplectic;

pub use error::{Error, Result};

/// The scalar used by every concrete construction: arbitrary-precision
/// rationals, so all arithmetic is exact.
pub type Rat = num_rational::BigRational;

/// Column vector over [`Rat`].
pub type RatVec = linalg::Vector<Rat>;

/// Dense matrix over [`Rat`].
pub type RatMat = linalg::Matrix<Rat>;

/// Linear functional over [`Rat`].
pub type RatFunc = linalg::LinFunc<Rat>;

/// Convenience constructor: the rational n/1.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Convenience constructor: the rational n/d (d must be nonzero).
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Convenience constructor: a rational vector from integer entries.
pub fn ratvec(entries: &[i64]) -> RatVec {
    RatVec::new(entries.iter().map(|&n| rat(n)).collect())
}
