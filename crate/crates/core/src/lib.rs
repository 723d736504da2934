//! Exact-arithmetic censuses of degree-`d` branched covers of an elliptic
//! curve by genus-2 curves, and the divisor-class identities behind the
//! slope value `5 + 6/d`.
//!
//! Everything here is exact: integer counts are [`num_bigint::BigInt`],
//! ratios are [`num_rational::BigRational`], and the divisor-class layer
//! works with rational functions of the degree variable. There is no
//! floating point anywhere.
//!
//! The crate is organized around three independent computation routes that
//! are cross-checked against each other:
//!
//! * [`arith`] — multiplicative arithmetic functions, Dirichlet convolution,
//!   and the sieve tables the sweeps run on;
//! * [`lattice`] — enumeration of finite-index sublattices of Z² in Hermite
//!   form, cyclic-quotient detection, and the marked census;
//! * [`census`] — the nodal-cover counts `A_d`, the two-component counts
//!   `B_d` (closed form, recursion, and a brute-force pair oracle), the
//!   boundary degrees, and the slope;
//! * [`picard`] — symbolic divisor-class algebra over the basis
//!   (ε₁,₁, ε₂, φ₂) verifying the slope relation as a polynomial identity.

pub mod arith;
pub mod census;
pub mod lattice;
pub mod picard;
pub mod report;
