//! Specialisation of degree-zero divisor classes on odd-degree hyperelliptic
//! curves `y^2 = f(x)` into ideal class groups of the imaginary quadratic
//! orders `Z[sqrt(f(n))]` and of their maximal orders.
//!
//! The pipeline for a class `Q` and an integer `n` below the negativity bound
//! of `f` is:
//!
//! 1. Mumford representative `(a, b)` of `Q` ([`jacobian`]),
//! 2. integral form `[A/e, 2B/e, C/e]` with `content(A) = 1` ([`integral_forms`]),
//! 3. evaluation at `x = n`, shift to `gcd(A'(n), e) = 1` and extension of
//!    `(A(n), e*sqrt(f(n)) - B(n))` to `Z[sqrt(f(n))]` ([`specialize`]),
//! 4. reduction and push-forward to the maximal order ([`quadring`]).

pub mod curve;
pub mod error;
pub mod integral_forms;
pub mod jacobian;
pub mod polyarith;
pub mod quadring;
pub mod specialize;

pub use curve::OddHyperellipticCurve;
pub use error::{Error, Result};
pub use integral_forms::{AltMumfordForm, CongruenceData};
pub use jacobian::MumfordDivisor;
pub use polyarith::{Degree, IntPoly, RatPoly};
pub use quadring::{ConductorData, IdealClass, IntBinaryForm, QuadIdeal};
pub use specialize::{SpecializationRow, ValueForm};
