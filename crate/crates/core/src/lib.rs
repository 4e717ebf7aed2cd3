//! Exact symbolic checks for the density argument on the surfaces `V_n`,
//! presented as quotients of the threefold `a1*a4 - a2^b*a3 = 1`
//! (with `b = n - 1`) by a one-dimensional torus.
//!
//! Every identity is checked over exact rationals. The modules build on each
//! other: [`polyring`] (polynomials and the quotient normal form),
//! [`derivation`] (vector fields), [`torus`] and [`genring`] (invariant
//! generators and their relations), and [`lie_engine`] (completeness
//! certificates, membership scripts and the end-to-end pipeline).

pub mod derivation;
pub mod error;
pub mod genring;
pub mod lie_engine;
pub mod polyring;
pub mod torus;

pub use derivation::{exp_lnd, pushforward, Derivation, RingAutomorphism};
pub use error::{Error, Result};
pub use genring::{GenPolynomial, GeneratorWord, XNormalForm};
pub use polyring::{ExponentVector, Polynomial, QuotientPolynomial, Rational, SurfaceParameters};
pub use torus::Generator;
